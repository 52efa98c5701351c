//! The Segre number of the flag-bundle line bundle attached to a Schur power
//! of `Ω_A(log D)` on an abelian variety, reduced to a coefficient extraction
//! `κ(λ) = [t₁ⁿ t₂ⁿ⁻¹ ⋯ tₙ] (Σ λᵢtᵢ)ⁿ · ∏_p (t_{j_p+1}⋯t_{j_{p+1}})^{−j_p} · ∏_{i<j}(tᵢ − tⱼ)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use crate::schur::Partition;

/// Largest dimension accepted by [`gysin_coefficient`].
pub const MAX_GYSIN_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpData {
    /// `λ` padded with zeros to `n` entries.
    pub padded: Vec<u32>,
    /// Indices `i ≤ n` with `λᵢ > λᵢ₊₁` (1-based, `λₙ₊₁ = 0`).
    pub jumps: Vec<usize>,
    /// `Σ_p (j_{p+1} − j_p) j_p` with `j_{m+1} = n`.
    pub defect: u64,
}

impl JumpData {
    /// Exponent added to each `tᵢ` by the inverse monomial factor.
    pub fn shift(&self) -> Vec<u32> {
        let n = self.padded.len();
        let mut shift = vec![0u32; n];
        let mut bounds = self.jumps.clone();
        bounds.push(n);
        for w in bounds.windows(2) {
            // t_{j_p + 1} … t_{j_{p+1}}
            for s in &mut shift[w[0]..w[1]] {
                *s += w[0] as u32;
            }
        }
        shift
    }

    /// `n(n+1)/2 + defect`: total degree of the monomial being extracted.
    pub fn target_degree(&self) -> u64 {
        let n = self.padded.len() as u64;
        n * (n + 1) / 2 + self.defect
    }
}

pub fn jump_data(n: usize, lambda: &Partition) -> Result<JumpData> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if lambda.len() > n {
        return Err(Error::domain(format!("{lambda} has more than {n} parts")));
    }
    let padded: Vec<u32> = (0..n).map(|i| lambda.part(i)).collect();
    let jumps: Vec<usize> = (1..=n)
        .filter(|&i| padded[i - 1] > padded.get(i).copied().unwrap_or(0))
        .collect();
    let mut bounds = jumps.clone();
    bounds.push(n);
    let defect = (0..jumps.len())
        .map(|p| ((bounds[p + 1] - bounds[p]) * bounds[p]) as u64)
        .sum();
    Ok(JumpData {
        padded,
        jumps,
        defect,
    })
}

/// Coefficient of `t^e` in `(Σ λᵢtᵢ)ⁿ`.
fn multinomial_coefficient(lambda: &[u32], e: &[i64]) -> BigInt {
    let n = lambda.len() as i64;
    if e.iter().any(|&x| x < 0) || e.iter().sum::<i64>() != n {
        return BigInt::zero();
    }
    let mut c = factorial(n as u64);
    for (&l, &x) in lambda.iter().zip(e) {
        c /= factorial(x as u64);
        c *= num_traits::pow(BigInt::from(l), x as usize);
    }
    c
}

/// Visits every permutation with its sign (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i32)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    f(&perm, sign);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `κ(λ)` with `s_n(𝓛) = κ(λ) c₁(D)ⁿ`, the raw extracted coefficient.
pub fn gysin_coefficient(n: usize, lambda: &Partition) -> Result<Rational> {
    if n > MAX_GYSIN_DIM {
        return Err(Error::Resource(format!(
            "Gysin coefficients are limited to n ≤ {MAX_GYSIN_DIM}"
        )));
    }
    let data = jump_data(n, lambda)?;
    let shift = data.shift();
    let target: Vec<i64> = (0..n).map(|i| (n - i) as i64 + shift[i] as i64).collect();

    // ∏_{i<j}(tᵢ − tⱼ) = Σ_σ sgn(σ) ∏ᵢ t_{σ(i)}^{n−1−i}
    let mut total = BigInt::zero();
    for_each_permutation(n, |perm, sign| {
        let mut e = target.clone();
        for (i, &s) in perm.iter().enumerate() {
            e[s] -= (n - 1 - i) as i64;
        }
        let c = multinomial_coefficient(&data.padded, &e);
        if sign > 0 {
            total += c;
        } else {
            total -= c;
        }
    });
    Ok(Rational::from_integer(total))
}
