//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion; exits non-zero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use orbijet_core::gysin::{gysin_coefficient, jump_data};
use orbijet_core::orbifold::{
    canonical_k, chi_k, chi_k_with, chi_trivial_canonical_closed_form, ChiMode, OrbifoldComponent,
    Positivity,
};
use orbijet_core::rational::{int, ratio};
use orbijet_core::schur::{decompose_sym_tensor, schur_dimension, weighted_vectors};
use orbijet_core::threshold::{
    chi2_numerator, doubled_arrangement, k3_coefficient, k3_ratio_bound,
    line_arrangement_threshold, plane_curve_pair, table1,
};
use orbijet_core::{
    ExtMultiplicity, Geometry, GradedClass, OrbifoldPair, Order, Partition, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)*));
        }
    };
}

const TABLE1: [(u64, Option<u64>, u64); 16] = [
    (12, Some(12), 107),
    (13, Some(13), 44),
    (14, Some(14), 29),
    (15, Some(15), 22),
    (16, Some(16), 19),
    (17, Some(17), 16),
    (18, Some(18), 15),
    (19, Some(19), 13),
    (20, Some(21), 12),
    (22, Some(23), 11),
    (24, Some(25), 10),
    (26, Some(30), 9),
    (31, Some(38), 8),
    (39, Some(60), 7),
    (61, Some(245), 6),
    (246, None, 5),
];

fn ac1_table1() -> Check {
    let start = Instant::now();
    let rows = table1(None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let got: Vec<(u64, Option<u64>, u64)> = rows
        .iter()
        .map(|r| (r.d_start, r.d_end, r.record.minimal_value))
        .collect();
    ensure!(got == TABLE1, "rows differ: {got:?}");
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("16 rows match, {:.2}s", elapsed.as_secs_f64()))
}

fn ac2_chi2_closed_form() -> Check {
    let mut checked = 0;
    for d in 4..=120u64 {
        for a in (2 * d / (d - 3) + 1)..=150 {
            let chi = chi_k(&plane_curve_pair(d, a), 2).map_err(|e| e.to_string())?;
            let expected = chi2_numerator(&int(d as i64), &int(a as i64)) / int(4 * (a * a) as i64);
            ensure!(chi == expected, "d={d} a={a}: {chi} ≠ {expected}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (d, a) pairs equal"))
}

fn ac3_line_formula() -> Check {
    for c in 1..=30i64 {
        for d in 1..=30i64 {
            let chi =
                chi_k(&doubled_arrangement(c as u64, d as u64), 1).map_err(|e| e.to_string())?;
            let expected = int(6) - ratio(3 * c * d, 2) + ratio(c * (c - 3) * d * d, 8);
            ensure!(chi == expected, "c={c} d={d}: {chi} ≠ {expected}");
        }
    }
    let positive = |c: u64| {
        let pair = doubled_arrangement(c, 1);
        canonical_k(&pair, Order::Finite(1)).positive == Positivity::Positive
            && chi_k(&pair, 1).unwrap().is_positive()
    };
    let first = (1..=30).find(|&c| positive(c));
    ensure!(first == Some(11), "first positive c at d=1 is {first:?}");
    let (at11, at10) = (
        chi_k(&doubled_arrangement(11, 1), 1).unwrap(),
        chi_k(&doubled_arrangement(10, 1), 1).unwrap(),
    );
    ensure!(
        at11 == ratio(1, 2) && at10 == ratio(-1, 4),
        "χ(11)={at11}, χ(10)={at10}"
    );
    Ok("900 cells equal; threshold c=11 (χ=1/2), χ(10)=-1/4".into())
}

fn ac4_arrangement_thresholds() -> Check {
    let expected = [(4u64, 11u64), (5, 6), (6, 4), (7, 3), (8, 2), (11, 1)];
    for (c, d) in expected {
        let got = line_arrangement_threshold(c)
            .record()
            .map(|r| r.minimal_value);
        ensure!(got == Some(d), "c={c}: got {got:?}, want {d}");
    }
    Ok(format!("{expected:?}"))
}

fn ac5_k3() -> Check {
    let c = |m| k3_coefficient(m).map_err(|e| e.to_string());
    ensure!(c(4)?.is_zero(), "c_4 = {}", c(4)?);
    let first = (2..=200).find(|&m| c(m).map(|v| v.is_positive()).unwrap_or(false));
    ensure!(first == Some(5), "first positive m = {first:?}");
    ensure!(c(5)? == ratio(23, 120), "c_5 = {}", c(5)?);
    for m in 5..=200 {
        let bound = k3_ratio_bound(m).map_err(|e| e.to_string())?;
        ensure!(bound <= 10.0, "m={m}: bound {bound}");
    }
    let b5 = k3_ratio_bound(5).map_err(|e| e.to_string())?;
    ensure!(b5 > 8.5 && b5 < 8.7, "m=5 bound {b5}");
    Ok(format!("c_4=0, c_5=23/120, m=5 bound {b5:.5}"))
}

fn random_trivial_canonical_pair(rng: &mut ChaCha8Rng) -> (OrbifoldPair, u64) {
    let r = rng.gen_range(1..=3usize);
    let names: Vec<String> = (1..=r).map(|i| format!("D{i}")).collect();
    let mut inter = Vec::new();
    for i in 0..r {
        for j in i..r {
            let key = if i == j {
                format!("{}^2", names[i])
            } else {
                format!("{}*{}", names[i], names[j])
            };
            inter.push((key, int(rng.gen_range(-4..=10))));
        }
    }
    let inter: Vec<(&str, Rational)> = inter.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let c2 = [0, 12, 24][rng.gen_range(0..3)];
    let surface = Geometry::surface(&refs, &inter, int(c2)).expect("valid surface");
    let mults: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=7)).collect();
    let comps = refs
        .iter()
        .zip(&mults)
        .map(|(name, m)| {
            let class = GradedClass::generator(&surface, name).unwrap();
            OrbifoldComponent::new(class, ExtMultiplicity::integer(*m).unwrap()).unwrap()
        })
        .collect();
    let top = *mults.iter().max().unwrap();
    let k = rng.gen_range(top..=top + 3);
    (OrbifoldPair::new(surface, comps).unwrap(), k)
}

fn ac6_closed_form() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a65_7473);
    for trial in 0..50 {
        let (pair, k) = random_trivial_canonical_pair(&mut rng);
        let closed = chi_trivial_canonical_closed_form(&pair, k).map_err(|e| e.to_string())?;
        let generic = chi_k(&pair, k).map_err(|e| e.to_string())?;
        ensure!(
            closed == generic,
            "trial {trial} (k={k}): {closed} ≠ {generic}"
        );
    }
    Ok("50 random pairs equal".into())
}

fn partitions_bounded(n: usize, max_part: u32) -> Vec<Partition> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let cap = p.last().copied().unwrap_or(max_part);
                (0..=cap).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
}

fn ac7_gysin() -> Check {
    let mut vanishing = 0;
    for n in 2..=4 {
        for lambda in partitions_bounded(n, 4) {
            let defect = jump_data(n, &lambda).map_err(|e| e.to_string())?.defect;
            if defect > 0 {
                let kappa = gysin_coefficient(n, &lambda).map_err(|e| e.to_string())?;
                ensure!(kappa.is_zero(), "n={n} λ={lambda}: κ = {kappa}");
                vanishing += 1;
            }
        }
    }
    for n in 2..=4usize {
        let one = gysin_coefficient(n, &Partition::new(vec![1; n]).unwrap())
            .map_err(|e| e.to_string())?;
        ensure!(one.abs() == Rational::one(), "n={n}: κ(1..1) = {one}");
        for c in 1..=5u32 {
            let kc = gysin_coefficient(n, &Partition::new(vec![c; n]).unwrap())
                .map_err(|e| e.to_string())?;
            let expected = &one * int(c.pow(n as u32) as i64);
            ensure!(kc == expected, "n={n} c={c}: {kc} ≠ {expected}");
        }
    }
    Ok(format!(
        "{vanishing} positive-defect λ vanish; homogeneity and |κ(1..1)| = 1 hold"
    ))
}

fn sym_dim(m: u32, r: usize) -> BigUint {
    (0..m as u64).fold(BigUint::one(), |v, i| v * (r as u64 + i) / (i + 1))
}

fn ac8_pieri() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7069_6572);
    for trial in 0..100 {
        let p = rng.gen_range(1..=4usize);
        let degrees: Vec<u32> = (0..p).map(|_| rng.gen_range(0..=5)).collect();
        let r = rng.gen_range(1..=5usize);
        let e = decompose_sym_tensor(&degrees);
        let lhs = degrees
            .iter()
            .fold(BigUint::one(), |acc, m| acc * sym_dim(*m, r));
        let rhs: BigUint = e.terms().map(|(l, c)| schur_dimension(l, r) * c).sum();
        ensure!(lhs == rhs, "trial {trial} {degrees:?} r={r}: {lhs} ≠ {rhs}");
        ensure!(
            e.max_parts() <= p,
            "trial {trial}: {} parts > {p}",
            e.max_parts()
        );
    }
    for k in 1..=10usize {
        let mut coeff = vec![0u64; 61];
        coeff[0] = 1;
        for j in 1..=k {
            for n in j..=60 {
                coeff[n] += coeff[n - j];
            }
        }
        for (n, want) in coeff.iter().enumerate() {
            let got = weighted_vectors(k, n as u64).len() as u64;
            ensure!(got == *want, "k={k} N={n}: {got} ≠ {want}");
        }
    }
    Ok("100 random dimension identities; counts match for N ≤ 60, k ≤ 10".into())
}

fn ac9_log_asymptotics() -> Check {
    let pair = OrbifoldPair::projective(2, &[(5, ExtMultiplicity::Infinite)]).unwrap();
    let mut ratios = Vec::new();
    for k in [100u64, 10_000, 1_000_000] {
        let chi = chi_k_with(&pair, k, ChiMode::Float).map_err(|e| e.to_string())?;
        let ln = (k as f64).ln();
        ratios.push(orbijet_core::rational::to_f64(&chi) / (4.0 * ln * ln / 2.0));
    }
    ensure!(
        ratios.windows(2).all(|w| w[0] < w[1]),
        "not increasing: {ratios:?}"
    );
    ensure!(
        (ratios[2] - 1.0).abs() <= 0.2,
        "ratio at 10⁶ is {}",
        ratios[2]
    );
    Ok(format!(
        "ratios {:.4} < {:.4} < {:.4}",
        ratios[0], ratios[1], ratios[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 table1 reproduction", ac1_table1),
        ("AC2 chi_2 closed form", ac2_chi2_closed_form),
        ("AC3 chi_1 line formula and threshold", ac3_line_formula),
        ("AC4 arrangement thresholds", ac4_arrangement_thresholds),
        ("AC5 trivial-canonical coefficients", ac5_k3),
        ("AC6 closed form vs generic chi_k", ac6_closed_form),
        ("AC7 Gysin vanishing", ac7_gysin),
        ("AC8 Pieri suite", ac8_pieri),
        ("AC9 log-asymptotics", ac9_log_asymptotics),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
