//! Exact threshold searches: minimal ramification orders for plane curves at
//! jet order 2, degree thresholds for arrangements of doubled components at
//! jet order 1, and the trivial-canonical coefficient scan.
//!
//! Every search starts from the real root of the governing quadratic and
//! then settles the answer with exact predicate evaluations.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::orbifold::{canonical_k, chi_k, OrbifoldPair, Positivity};
use crate::rational::{int, to_f64, ExtMultiplicity, Order, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdRecord {
    pub parameter: u64,
    pub minimal_value: u64,
    pub chi_at_min: Rational,
    /// `χ` one step below the minimum, when that value is still admissible.
    pub chi_below_min: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdOutcome {
    Found(ThresholdRecord),
    /// No admissible value satisfies the predicate; `witness` is `χ` at the
    /// first admissible value.
    NoSolution {
        parameter: u64,
        witness: Option<Rational>,
    },
}

impl ThresholdOutcome {
    pub fn record(&self) -> Option<&ThresholdRecord> {
        match self {
            ThresholdOutcome::Found(r) => Some(r),
            ThresholdOutcome::NoSolution { .. } => None,
        }
    }
}

/// One line of the ramification table: degrees `d_start..=d_end`
/// (`None` = unbounded) share the minimal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub d_start: u64,
    pub d_end: Option<u64>,
    pub record: ThresholdRecord,
}

/// Degrees up to which the ramification table is verified one by one.
pub const TABLE1_SCAN_LIMIT: u64 = 300;

/// Runs `f` over `params` on `workers` threads (sequentially for `None` or
/// 1), keeping the input order.
pub fn par_map<T, F>(params: &[u64], workers: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match workers {
        Some(w) if w > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(|| params.par_iter().map(|p| f(*p)).collect()),
        _ => params.iter().map(|p| f(*p)).collect(),
    }
}

fn larger_root(a2: f64, a1: f64, a0: f64) -> Option<f64> {
    if a2 <= 0.0 {
        return None;
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return None;
    }
    Some((-a1 + disc.sqrt()) / (2.0 * a2))
}

/// Smallest `x ≥ lo` with `pred(x)`, assuming the predicate holds exactly
/// past the larger root of an upward parabola whenever it fails at `lo`.
fn search_above_root(lo: u64, root: Option<f64>, pred: impl Fn(u64) -> bool) -> u64 {
    if pred(lo) {
        return lo;
    }
    let guess = root
        .filter(|r| r.is_finite() && *r > lo as f64)
        .map(|r| r.floor() as u64)
        .unwrap_or(lo)
        .max(lo + 1);
    let mut x = guess;
    while x - 1 > lo && pred(x - 1) {
        x -= 1;
    }
    while !pred(x) {
        x += 1;
    }
    x
}

/// `(ℙ², (1 − 1/a) C_d)`
pub fn plane_curve_pair(d: u64, a: u64) -> OrbifoldPair {
    OrbifoldPair::projective(
        2,
        &[(d as i64, ExtMultiplicity::integer(a).expect("a ≥ 1"))],
    )
    .expect("valid plane pair")
}

/// `(ℙ², Σ (1 − 1/2) Cᵢ)` with `c` components of degree `d`.
pub fn doubled_arrangement(c: u64, d: u64) -> OrbifoldPair {
    let m = ExtMultiplicity::integer(2).expect("2 ≥ 1");
    OrbifoldPair::projective(2, &vec![(d as i64, m); c as usize]).expect("valid plane pair")
}

/// `4a² χ₂(ℙ², (1 − 1/a) C_d) = (48 − 27d + 2d²)a² − 12d(d − 3)a + 12d²`.
pub fn chi2_numerator(d: &Rational, a: &Rational) -> Rational {
    (int(48) - int(27) * d + int(2) * d * d) * a * a - int(12) * d * (d - int(3)) * a
        + int(12) * d * d
}

fn jet2_predicate(d: u64, a: u64) -> (bool, Rational) {
    let pair = plane_curve_pair(d, a);
    let chi = chi_k(&pair, 2).expect("k = 2");
    let ok =
        canonical_k(&pair, Order::Finite(2)).positive == Positivity::Positive && chi.is_positive();
    (ok, chi)
}

/// First integer `a` with `(1 − 2/a) d > 3`.
fn first_admissible_order(d: u64) -> u64 {
    2 * d / (d - 3) + 1
}

/// Smallest ramification order `a` along a smooth plane curve of degree `d`
/// for which `K + Δ^(2)` is ample and `χ₂ > 0`.
pub fn min_multiplicity_for_degree(d: u64) -> Result<ThresholdOutcome> {
    if d < 4 {
        return Err(Error::domain(format!(
            "degree {d} < 4 leaves K + Δ^(2) negative for all a"
        )));
    }
    let lo = first_admissible_order(d);
    let df = d as f64;
    let lead = 2.0 * df * df - 27.0 * df + 48.0;
    if lead <= 0.0 {
        // Concave in a with positive value at 0: failing at the first
        // admissible order means failing for all larger ones.
        let (ok, chi) = jet2_predicate(d, lo);
        if !ok {
            return Ok(ThresholdOutcome::NoSolution {
                parameter: d,
                witness: Some(chi),
            });
        }
    }
    let root = larger_root(lead, -12.0 * df * (df - 3.0), 12.0 * df * df);
    let a = search_above_root(lo, root, |a| jet2_predicate(d, a).0);
    Ok(ThresholdOutcome::Found(ThresholdRecord {
        parameter: d,
        minimal_value: a,
        chi_at_min: jet2_predicate(d, a).1,
        chi_below_min: (a > lo).then(|| jet2_predicate(d, a - 1).1),
    }))
}

/// Re-checks a record by evaluating the predicate at every admissible order
/// below the claimed minimum.
pub fn verify_min_multiplicity(record: &ThresholdRecord) -> bool {
    let d = record.parameter;
    (2..record.minimal_value).all(|a| !jet2_predicate(d, a).0)
        && jet2_predicate(d, record.minimal_value).0
}

/// Proves that order `a` is minimal for every degree `d ≥ from`, using the
/// exact quadratic `P_a(d) = 4a²χ₂` for each candidate order.
pub fn certify_tail(a: u64, from: u64) -> Result<()> {
    let fail = |msg: String| Err(Error::domain(format!("tail certificate failed: {msg}")));
    let start = Rational::from_integer(BigInt::from(from));
    let coefficients = |a: u64| {
        let a = Rational::from_integer(BigInt::from(a));
        let at = |d: i64| chi2_numerator(&int(d), &a);
        // P(d) = c2 d² + c1 d + c0 recovered from three samples
        let (p0, p1, p2) = (at(0), at(1), at(2));
        let c2 = (&p2 - int(2) * &p1 + &p0) / int(2);
        let c1 = &p1 - &p0 - &c2;
        (c2, c1, p0)
    };
    let eval = |c: &(Rational, Rational, Rational), d: &Rational| &c.0 * d * d + &c.1 * d + &c.2;

    // K + Δ^(2) is ample at d = from for order a, hence for all larger d.
    let two = int(2);
    let canonical = (Rational::one() - &two / int(a as i64)) * &start - int(3);
    if !canonical.is_positive() {
        return fail(format!("K + Δ^(2) not ample at d = {from}, a = {a}"));
    }
    let c = coefficients(a);
    let vertex_ok = |c: &(Rational, Rational, Rational)| {
        // −c1 / (2 c2) ≤ start
        -&c.1 <= int(2) * &c.0 * &start
    };
    if !(c.0.is_positive() && eval(&c, &start).is_positive() && vertex_ok(&c)) {
        return fail(format!("χ₂ not eventually positive for a = {a}"));
    }
    for b in 3..a {
        let c = coefficients(b);
        let value = eval(&c, &start);
        let decreasing = if c.0.is_zero() {
            !c.1.is_positive()
        } else {
            // concave: decreasing once past the vertex −c1/(2c2)
            c.0.is_negative() && -&c.1 / (int(2) * &c.0) <= start
        };
        if value.is_positive() || !decreasing {
            return fail(format!("order {b} not excluded beyond d = {from}"));
        }
    }
    Ok(())
}

/// The ramification table at jet order 2: exhaustive verification for
/// `12 ≤ d ≤ TABLE1_SCAN_LIMIT`, then a certificate for the open last range.
pub fn table1(workers: Option<usize>) -> Result<Vec<Table1Row>> {
    let degrees: Vec<u64> = (12..=TABLE1_SCAN_LIMIT).collect();
    let records = par_map(&degrees, workers, |d| -> Result<ThresholdRecord> {
        let record = min_multiplicity_for_degree(d)?
            .record()
            .cloned()
            .ok_or_else(|| Error::domain(format!("no admissible order for d = {d}")))?;
        if !verify_min_multiplicity(&record) {
            return Err(Error::domain(format!(
                "exhaustive check failed for d = {d}"
            )));
        }
        Ok(record)
    });

    let mut rows: Vec<Table1Row> = Vec::new();
    for record in records {
        let record = record?;
        match rows.last_mut() {
            Some(row) if row.record.minimal_value == record.minimal_value => {
                row.d_end = Some(record.parameter);
            }
            _ => rows.push(Table1Row {
                d_start: record.parameter,
                d_end: Some(record.parameter),
                record,
            }),
        }
    }
    if let Some(last) = rows.last_mut() {
        certify_tail(last.record.minimal_value, last.d_start)?;
        last.d_end = None;
    }
    Ok(rows)
}

fn jet1_predicate(c: u64, d: u64) -> (bool, Rational) {
    let pair = doubled_arrangement(c, d);
    let chi = chi_k(&pair, 1).expect("k = 1");
    let ok =
        canonical_k(&pair, Order::Finite(1)).positive == Positivity::Positive && chi.is_positive();
    (ok, chi)
}

/// Smallest common degree `d` such that `c` doubled plane curves of degree
/// `d` give a pair of general type with `χ₁ > 0`.
pub fn line_arrangement_threshold(c: u64) -> ThresholdOutcome {
    if c <= 3 {
        // χ₁ has leading coefficient c(c − 3)/8 ≤ 0 in d
        return ThresholdOutcome::NoSolution {
            parameter: c,
            witness: None,
        };
    }
    let lo = 6 / c + 1;
    let cf = c as f64;
    let root = larger_root(cf * (cf - 3.0) / 8.0, -1.5 * cf, 6.0);
    let d = search_above_root(lo, root, |d| jet1_predicate(c, d).0);
    ThresholdOutcome::Found(ThresholdRecord {
        parameter: c,
        minimal_value: d,
        chi_at_min: jet1_predicate(c, d).1,
        chi_below_min: (d > lo).then(|| jet1_predicate(c, d - 1).1),
    })
}

/// `c_m = Σ_{2≤j₁<j₂≤m} 1/(j₁j₂) − (m − 1)/(2m)`: the coefficient of `D²` in
/// `χ_k` for one component of multiplicity `m` on a surface with trivial
/// canonical class.
pub fn k3_coefficient(m: u64) -> Result<Rational> {
    if m < 2 {
        return Err(Error::domain("multiplicity must be at least 2"));
    }
    let mut e1 = Rational::zero();
    let mut p2 = Rational::zero();
    for j in 2..=m {
        let r = Rational::new(BigInt::one(), BigInt::from(j));
        p2 += &r * &r;
        e1 += r;
    }
    let pairs = (&e1 * &e1 - p2) / int(2);
    Ok(pairs - Rational::new(BigInt::from(m - 1), BigInt::from(2 * m)))
}

/// `π² / (6 c_m)`.
pub fn k3_ratio_bound(m: u64) -> Result<f64> {
    let c = k3_coefficient(m)?;
    if !c.is_positive() {
        return Err(Error::domain(format!("c_{m} ≤ 0")));
    }
    Ok(PI * PI / (6.0 * to_f64(&c)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct K3Row {
    pub m: u64,
    pub coefficient: Rational,
    pub ratio_bound: Option<f64>,
}

pub fn k3_scan(m_max: u64, workers: Option<usize>) -> Vec<K3Row> {
    let ms: Vec<u64> = (2..=m_max).collect();
    par_map(&ms, workers, |m| K3Row {
        m,
        coefficient: k3_coefficient(m).expect("m ≥ 2"),
        ratio_bound: k3_ratio_bound(m).ok(),
    })
}

/// For components all of multiplicity 2 on a surface with trivial canonical
/// class: `∫D² − 3 Σ ∫Dᵢ² ≥ (4π²/3) c₂` with `D = Σ Dᵢ`, where `pairing` is
/// the symmetric matrix of `∫Dᵢ·Dⱼ`.
pub fn two_component_m2_predicate(pairing: &[Vec<Rational>], c2: &Rational) -> bool {
    let total: Rational = pairing
        .iter()
        .flatten()
        .fold(Rational::zero(), |acc, x| acc + x);
    let squares: Rational = pairing
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, row)| acc + &row[i]);
    let lhs = to_f64(&(total - int(3) * squares));
    let rhs = 4.0 * PI * PI / 3.0 * to_f64(c2);
    let tol = 1e-9 * lhs.abs().max(rhs.abs()).max(1.0);
    lhs >= rhs - tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn min_multiplicity_examples() {
        let cases = [(12, 107), (13, 44), (16, 19), (20, 12), (61, 6), (246, 5)];
        for (d, a) in cases {
            let rec = min_multiplicity_for_degree(d).unwrap();
            assert_eq!(rec.record().unwrap().minimal_value, a, "d = {d}");
        }
        let rec = min_multiplicity_for_degree(12).unwrap();
        let rec = rec.record().unwrap();
        assert_eq!(rec.chi_at_min, ratio(111, 11449));
        assert_eq!(rec.chi_below_min, Some(ratio(-204, 11236)));
    }

    #[test]
    fn low_degrees() {
        assert!(min_multiplicity_for_degree(3).is_err());
        for d in 4..12 {
            assert!(matches!(
                min_multiplicity_for_degree(d).unwrap(),
                ThresholdOutcome::NoSolution { .. }
            ));
        }
        // brute force: no order up to 2000 works below degree 12
        for d in 4..12 {
            assert!((2..2000).all(|a| !jet2_predicate(d, a).0));
        }
    }

    #[test]
    fn tail_certificate() {
        assert!(certify_tail(5, 246).is_ok());
        assert!(certify_tail(5, 245).is_err());
        assert!(certify_tail(6, 246).is_err());
    }

    #[test]
    fn arrangement_examples() {
        for (c, d) in [(4, 11), (5, 6), (6, 4), (7, 3), (8, 2), (11, 1)] {
            assert_eq!(
                line_arrangement_threshold(c)
                    .record()
                    .unwrap()
                    .minimal_value,
                d
            );
        }
        assert!(line_arrangement_threshold(3).record().is_none());
    }

    #[test]
    fn k3_coefficients() {
        assert_eq!(k3_coefficient(2).unwrap(), ratio(-1, 4));
        assert_eq!(k3_coefficient(4).unwrap(), int(0));
        assert_eq!(k3_coefficient(5).unwrap(), ratio(23, 120));
        // pair enumeration
        for m in 2..12u64 {
            let mut pairs = Rational::zero();
            for j1 in 2..=m {
                for j2 in (j1 + 1)..=m {
                    pairs += Rational::new(BigInt::one(), BigInt::from(j1 * j2));
                }
            }
            let expected = pairs - Rational::new(BigInt::from(m - 1), BigInt::from(2 * m));
            assert_eq!(k3_coefficient(m).unwrap(), expected);
        }
    }

    #[test]
    fn k3_ratios() {
        let r5 = k3_ratio_bound(5).unwrap();
        assert!((r5 - PI * PI * 20.0 / 23.0).abs() < 1e-12);
        assert!(r5 > 8.58 && r5 < 8.59);
        assert!(k3_ratio_bound(6).unwrap() < r5);
        assert!(k3_ratio_bound(4).is_err());
    }

    #[test]
    fn m2_predicate() {
        let m = |a: i64, b: i64, c: i64| vec![vec![int(a), int(b)], vec![int(b), int(c)]];
        assert!(two_component_m2_predicate(&m(1, 2, 1), &int(0)));
        assert!(!two_component_m2_predicate(&m(1, 1, 1), &int(0)));
        assert!(!two_component_m2_predicate(&m(10, 10, 10), &int(24)));
        // one component: ∫D² − 3∫D² < 0 always
        assert!(!two_component_m2_predicate(&[vec![int(5)]], &int(0)));
    }

    #[test]
    fn parallel_scans_are_ordered() {
        let seq = k3_scan(40, None);
        let par = k3_scan(40, Some(4));
        assert_eq!(seq, par);
    }
}
