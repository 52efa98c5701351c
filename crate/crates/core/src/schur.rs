//! Partitions, Pieri-rule decompositions of tensor products of symmetric
//! powers, and the weighted vectors indexing the graded pieces of the
//! jet-differential filtration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orbifold::{delta_k, DeltaTerm, OrbifoldPair};
use crate::rational::{fmt_rational, Order};

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Rejects sequences that increase; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `λᵢ` with `λᵢ = 0` past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse("lambda", format!("`{p}` is not a part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Formal sum of Schur functors with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, u64>,
}

impl SchurExpansion {
    /// The trivial expansion `s_∅`.
    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), 1);
        SchurExpansion { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, u64)>) -> Self {
        let mut e = SchurExpansion::default();
        for (p, m) in terms {
            e.add(p, m);
        }
        e
    }

    fn add(&mut self, p: Partition, m: u64) {
        if m > 0 {
            *self.terms.entry(p).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, p: &Partition) -> u64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest partition appearing.
    pub fn max_parts(&self) -> usize {
        self.terms.keys().map(Partition::len).max().unwrap_or(0)
    }
}

impl fmt::Display for SchurExpansion {
    /// `1·(3) + 1·(2,1)`, largest partitions first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, m)| format!("{m}·{p}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// All `μ ⊇ λ` with `μ/λ` a horizontal strip of `m` boxes.
fn horizontal_strips(lambda: &Partition, m: u32) -> Vec<Partition> {
    let base = lambda.parts();
    let rows = base.len() + 1;
    let mut out = Vec::new();
    let mut current = vec![0u32; rows];

    fn fill(row: usize, left: u32, base: &[u32], current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let rows = current.len();
        if row == rows {
            if left == 0 {
                out.push(Partition::new(current.clone()).expect("strip keeps shape"));
            }
            return;
        }
        let own = base.get(row).copied().unwrap_or(0);
        // at most one box per column: μ_row ≤ λ_{row−1}
        let cap = if row == 0 {
            left
        } else {
            (base[row - 1] - own).min(left)
        };
        for add in (0..=cap).rev() {
            current[row] = own + add;
            fill(row + 1, left - add, base, current, out);
        }
    }

    fill(0, m, base, &mut current, &mut out);
    out
}

/// Pieri rule: `e · h_m`.
pub fn pieri_multiply(e: &SchurExpansion, m: u32) -> SchurExpansion {
    let mut out = SchurExpansion::default();
    for (lambda, mult) in e.terms() {
        for mu in horizontal_strips(lambda, m) {
            out.add(mu, mult);
        }
    }
    out
}

/// Schur decomposition of `S^{a₁} ⊗ ⋯ ⊗ S^{a_p}`.
pub fn decompose_sym_tensor(degrees: &[u32]) -> SchurExpansion {
    degrees
        .iter()
        .fold(SchurExpansion::unit(), |acc, &a| pieri_multiply(&acc, a))
}

/// `dim S^λ(ℂ^r) = ∏_{i<j≤r} (λᵢ − λⱼ + j − i) / (j − i)`.
pub fn schur_dimension(lambda: &Partition, r: usize) -> BigUint {
    if lambda.len() > r {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        for j in (i + 1)..r {
            let li = lambda.part(i) as u64;
            let lj = lambda.part(j) as u64;
            num *= BigUint::from(li - lj + (j - i) as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    num / den
}

/// `ℓ ∈ ℕ^k` with weight `Σ j ℓⱼ = N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedVector(Vec<u64>);

impl WeightedVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, l)| (j as u64 + 1) * l)
            .sum()
    }
}

impl fmt::Display for WeightedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All weighted vectors of length `k` and weight `n`, lexicographically
/// decreasing.
pub fn weighted_vectors(k: usize, n: u64) -> Vec<WeightedVector> {
    fn go(j: usize, left: u64, current: &mut Vec<u64>, out: &mut Vec<WeightedVector>) {
        let k = current.len();
        let weight = (j + 1) as u64;
        if j + 1 == k {
            if left.is_multiple_of(weight) {
                current[j] = left / weight;
                out.push(WeightedVector(current.clone()));
            }
            return;
        }
        for l in (0..=left / weight).rev() {
            current[j] = l;
            go(j + 1, left - l * weight, current, out);
        }
        current[j] = 0;
    }
    if k == 0 {
        return if n == 0 {
            vec![WeightedVector(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    go(0, n, &mut vec![0; k], &mut out);
    out
}

/// `S^{ℓⱼ} Ω_{Δ^(j)}` inside a graded piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandFactor {
    pub order: u64,
    pub power: u64,
    pub boundary: Vec<DeltaTerm>,
}

impl fmt::Display for SummandFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self
            .boundary
            .iter()
            .map(|t| fmt_rational(&t.coefficient))
            .collect();
        write!(
            f,
            "S^{} Ω[Δ^({}) = ({})]",
            self.power,
            self.order,
            coeffs.join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSummand {
    pub weights: WeightedVector,
    pub factors: Vec<SummandFactor>,
}

impl fmt::Display for GradedSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("O");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// Graded pieces `⊗ⱼ S^{ℓⱼ} Ω_{Δ^(j)}` of the order-`k`, weight-`n`
/// jet-differential bundle, with the boundary coefficients of each factor.
pub fn graded_summands(pair: &OrbifoldPair, k: usize, n: u64) -> Vec<GradedSummand> {
    let profiles: Vec<Vec<DeltaTerm>> = (1..=k as u64)
        .map(|j| delta_k(pair, Order::Finite(j)))
        .collect();
    weighted_vectors(k, n)
        .into_iter()
        .map(|weights| {
            let factors = weights
                .counts()
                .iter()
                .enumerate()
                .filter(|(_, l)| **l > 0)
                .map(|(j, l)| SummandFactor {
                    order: j as u64 + 1,
                    power: *l,
                    boundary: profiles[j].clone(),
                })
                .collect();
            GradedSummand { weights, factors }
        })
        .collect()
}
