//! The Green–Griffiths coefficient `χ_k` and its companions.
//!
//! `χ_k = (−1)ⁿ ∫ Σ_{|q|=n} ∏ⱼ s_{qⱼ}(Ω_{Δ^(j)}) / j^{qⱼ}` is the top-degree part
//! of `∏ⱼ σ_{1/j}(s(Ω_{Δ^(j)}))`, where `σ_t` rescales degree `q` by `tᵠ`. Past
//! the largest finite multiplicity the Segre class no longer depends on `j`,
//! so that tail collapses to `exp(Σ_q p_q · (log s)_q)` with power sums
//! `p_q = Σⱼ j^{−q}`. Only the power sums depend on `k`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, from_f64, to_f64, ExtMultiplicity, Order, Rational};
use crate::ring::{GeometryKind, GradedClass};

use super::classes::{cotangent_segre, stable_segre};
use super::{canonical_k, OrbifoldPair, Positivity};

/// Largest jet order evaluated exactly by default; beyond it callers should
/// switch to [`ChiMode::Float`].
pub const EXACT_K_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiMode {
    /// Exact rational arithmetic throughout.
    Exact,
    /// Power sums `Σ j^{−q}` in binary64; everything else exact.
    Float,
}

/// Smallest `j ≥ 1` from which every finite component has dropped out.
fn stable_order(pair: &OrbifoldPair) -> u64 {
    match pair.max_finite_multiplicity() {
        Some(m) => m.ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(1),
        None => 1,
    }
}

/// `Σ_{j=a}^{b} j^{−q}` by binary splitting.
fn power_sum(a: u64, b: u64, q: u32) -> Rational {
    fn split(a: u64, b: u64, q: u32) -> (BigInt, BigInt) {
        if a == b {
            return (BigInt::one(), num_traits::pow(BigInt::from(a), q as usize));
        }
        let mid = a + (b - a) / 2;
        let (n1, d1) = split(a, mid, q);
        let (n2, d2) = split(mid + 1, b, q);
        (n1 * &d2 + n2 * &d1, d1 * d2)
    }
    if a > b {
        return Rational::zero();
    }
    let (n, d) = split(a, b, q);
    Rational::new(n, d)
}

fn power_sum_f64(a: u64, b: u64, q: u32) -> f64 {
    (a..=b).rev().map(|j| (j as f64).powi(-(q as i32))).sum()
}

fn check_order(k: u64) -> Result<()> {
    if k == 0 {
        Err(Error::domain("jet order k must be at least 1"))
    } else {
        Ok(())
    }
}

/// `χ_k` evaluated in the requested mode (normalized to covering degree 1).
pub fn chi_k_with(pair: &OrbifoldPair, k: u64, mode: ChiMode) -> Result<Rational> {
    check_order(k)?;
    let n = pair.dim();
    let geometry = pair.geometry();
    let stable = stable_order(pair);

    let mut product = GradedClass::one(geometry);
    for j in 1..=k.min(stable - 1) {
        let weight = Rational::new(BigInt::one(), BigInt::from(j));
        product = product.mul(&cotangent_segre(pair, j).degree_scaled(&weight))?;
    }
    if k >= stable {
        let log = stable_segre(pair).log()?;
        let mut exponent = GradedClass::zero(geometry);
        for q in 1..=n {
            let part = log.component(q);
            if part.is_zero() {
                continue;
            }
            let p = match mode {
                ChiMode::Exact => power_sum(stable, k, q),
                ChiMode::Float => from_f64(power_sum_f64(stable, k, q)),
            };
            exponent = exponent.add(&part.scale(&p))?;
        }
        product = product.mul(&exponent.exp()?)?;
    }
    let value = product.integrate();
    Ok(if n.is_multiple_of(2) { value } else { -value })
}

/// Exact `χ_k`.
pub fn chi_k(pair: &OrbifoldPair, k: u64) -> Result<Rational> {
    chi_k_with(pair, k, ChiMode::Exact)
}

/// `χ_k` in binary64, usable far beyond [`EXACT_K_LIMIT`].
pub fn chi_k_f64(pair: &OrbifoldPair, k: u64) -> Result<f64> {
    chi_k_with(pair, k, ChiMode::Float).map(|v| to_f64(&v))
}

/// `1 / ((k!)ⁿ ((k+1)n − 1)!)`
pub fn leading_scale(n: u32, k: u64) -> Rational {
    let den = num_traits::pow(factorial(k), n as usize) * factorial((k + 1) * n as u64 - 1);
    Rational::new(BigInt::one(), den)
}

/// Leading asymptotic coefficient of `χ(E_{k,N})` in `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub k: u64,
    pub chi_k: Rational,
    pub leading_scale: Rational,
    pub canonical_k_positive: Positivity,
}

pub fn chi_leading_term(pair: &OrbifoldPair, k: u64, mode: ChiMode) -> Result<ChiReport> {
    Ok(ChiReport {
        k,
        chi_k: chi_k_with(pair, k, mode)?,
        leading_scale: leading_scale(pair.dim(), k),
        canonical_k_positive: canonical_k(pair, Order::Finite(k)).positive,
    })
}

/// `(K_X + Δ^(∞))ⁿ / n!`, the coefficient of `(log k)ⁿ` in `χ_k`.
pub fn log_asymptotic_coefficient(pair: &OrbifoldPair) -> Rational {
    let n = pair.dim();
    let class = canonical_k(pair, Order::Infinite).class;
    class.pow(n).integrate() / Rational::from_integer(factorial(n as u64))
}

/// Closed form of `χ_k` on a surface with numerically trivial canonical
/// class, valid once `k` reaches every finite multiplicity.
pub fn chi_trivial_canonical_closed_form(pair: &OrbifoldPair, k: u64) -> Result<Rational> {
    check_order(k)?;
    let geometry = pair.geometry();
    if geometry.kind() != GeometryKind::Surface {
        return Err(Error::domain("closed form needs a surface preset"));
    }
    if geometry.integrals().any(|(m, v)| m[0] > 0 && !v.is_zero()) {
        return Err(Error::domain(
            "closed form needs K to pair trivially with every class",
        ));
    }

    let mut cross = Vec::with_capacity(pair.components().len());
    let mut diagonal = Vec::with_capacity(pair.components().len());
    for comp in pair.components() {
        let (t, s) = match comp.multiplicity() {
            ExtMultiplicity::Infinite => {
                let t = power_sum(1, k, 1);
                let s = (&t * &t - power_sum(1, k, 2)) / Rational::from_integer(2.into());
                (t, s)
            }
            finite => {
                let m = finite.as_integer().ok_or_else(|| {
                    Error::domain(format!(
                        "closed form needs integer multiplicities, got {finite}"
                    ))
                })?;
                if m > k {
                    return Err(Error::domain(format!(
                        "closed form needs k ≥ every multiplicity (k = {k}, m = {m})"
                    )));
                }
                let t = power_sum(2, m, 1);
                let pairs = (&t * &t - power_sum(2, m, 2)) / Rational::from_integer(2.into());
                let s = pairs - Rational::new((m - 1).into(), (2 * m).into());
                (t, s)
            }
        };
        cross.push(t);
        diagonal.push(s);
    }

    let e = GradedClass::generator(geometry, crate::ring::SECOND_CHERN)?;
    let mut value = -power_sum(1, k, 2) * e.integrate();
    let comps = pair.components();
    for i in 0..comps.len() {
        let di = comps[i].class();
        value += &diagonal[i] * di.mul(di)?.integrate();
        for j in (i + 1)..comps.len() {
            value += &cross[i] * &cross[j] * di.mul(comps[j].class())?.integrate();
        }
    }
    Ok(value)
}
