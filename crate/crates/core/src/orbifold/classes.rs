use num_traits::One;

use crate::rational::Rational;
use crate::ring::GradedClass;

use super::OrbifoldPair;

fn one_minus(class: &GradedClass, t: &Rational) -> GradedClass {
    GradedClass::one(class.geometry())
        .sub(&class.scale(t))
        .expect("same geometry")
}

/// Total Chern class of the order-`k` orbifold cotangent bundle,
/// `c(Ω_X) · ∏_{mᵢ > k} (1 − (k/mᵢ)Δᵢ) / (1 − Δᵢ)`.
pub fn cotangent_chern(pair: &OrbifoldPair, k: u64) -> GradedClass {
    let mut c = pair.geometry().tangent_chern().dual();
    for comp in pair.components() {
        if !comp.multiplicity().exceeds(k) {
            continue;
        }
        let ratio = comp.multiplicity().divide(k);
        let residue = one_minus(comp.class(), &Rational::one())
            .invert_unit()
            .expect("unit");
        c = c
            .mul(&one_minus(comp.class(), &ratio))
            .and_then(|c| c.mul(&residue))
            .expect("same geometry");
    }
    c
}

/// Total Segre class of the order-`k` orbifold cotangent bundle,
/// `s(Ω_X) · ∏_{mᵢ > k} (1 − Δᵢ) / (1 − (k/mᵢ)Δᵢ)`.
pub fn cotangent_segre(pair: &OrbifoldPair, k: u64) -> GradedClass {
    let mut s = pair
        .geometry()
        .tangent_chern()
        .dual()
        .invert_unit()
        .expect("Chern classes are units");
    for comp in pair.components() {
        if !comp.multiplicity().exceeds(k) {
            continue;
        }
        let ratio = comp.multiplicity().divide(k);
        s = s
            .mul(&one_minus(comp.class(), &Rational::one()))
            .and_then(|s| s.mul(&one_minus(comp.class(), &ratio).invert_unit()?))
            .expect("same geometry");
    }
    s
}

/// Segre class of the logarithmic part alone: the value of
/// [`cotangent_segre`] for every `k` at or beyond the largest finite
/// multiplicity.
pub fn stable_segre(pair: &OrbifoldPair) -> GradedClass {
    let mut s = pair
        .geometry()
        .tangent_chern()
        .dual()
        .invert_unit()
        .expect("Chern classes are units");
    for comp in pair
        .components()
        .iter()
        .filter(|c| c.multiplicity().is_infinite())
    {
        s = s
            .mul(&one_minus(comp.class(), &Rational::one()))
            .expect("same geometry");
    }
    s
}
