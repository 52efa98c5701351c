//! Orbifold pairs `(X, Δ)`, the order-`k` boundary divisors `Δ^(k)` and the
//! classes built from them.

mod chi;
mod classes;

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ExtMultiplicity, Order, Rational};
use crate::ring::{Geometry, GeometryKind, GradedClass};

pub use chi::{
    chi_k, chi_k_f64, chi_k_with, chi_leading_term, chi_trivial_canonical_closed_form,
    leading_scale, log_asymptotic_coefficient, ChiMode, ChiReport, EXACT_K_LIMIT,
};
pub use classes::{cotangent_chern, cotangent_segre, stable_segre};

/// One boundary component `(1 − 1/m) Δᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldComponent {
    class: GradedClass,
    multiplicity: ExtMultiplicity,
}

impl OrbifoldComponent {
    pub fn new(class: GradedClass, multiplicity: ExtMultiplicity) -> Result<Self> {
        if class.is_zero() || !class.is_homogeneous(1) {
            return Err(Error::domain(format!(
                "boundary class `{class}` is not a non-zero degree-1 class"
            )));
        }
        if let ExtMultiplicity::Finite(m) = &multiplicity {
            if *m < Rational::one() {
                return Err(Error::domain("multiplicity below 1"));
            }
        }
        Ok(OrbifoldComponent {
            class,
            multiplicity,
        })
    }

    pub fn class(&self) -> &GradedClass {
        &self.class
    }

    pub fn multiplicity(&self) -> &ExtMultiplicity {
        &self.multiplicity
    }

    /// `(1 − k/m)⁺`, with `k/∞ = 0`; at `k = ∞` only logarithmic components
    /// survive, with coefficient 1.
    pub fn order_coefficient(&self, k: Order) -> Rational {
        match k {
            Order::Finite(k) => {
                let c = Rational::one() - self.multiplicity.divide(k);
                if c.is_positive() {
                    c
                } else {
                    Rational::zero()
                }
            }
            Order::Infinite => {
                if self.multiplicity.is_infinite() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldPair {
    geometry: Arc<Geometry>,
    components: Vec<OrbifoldComponent>,
}

impl OrbifoldPair {
    pub fn new(geometry: Arc<Geometry>, components: Vec<OrbifoldComponent>) -> Result<Self> {
        if components
            .iter()
            .any(|c| !c.class.geometry().same_as(&geometry))
        {
            return Err(Error::GeometryMismatch);
        }
        Ok(OrbifoldPair {
            geometry,
            components,
        })
    }

    /// `ℙⁿ` with components given by `(degree, multiplicity)`.
    pub fn projective(n: u32, components: &[(i64, ExtMultiplicity)]) -> Result<Self> {
        let geometry = Geometry::projective(n)?;
        let h = GradedClass::generator(&geometry, "h")?;
        let components = components
            .iter()
            .map(|(d, m)| {
                OrbifoldComponent::new(h.scale(&Rational::from_integer((*d).into())), m.clone())
            })
            .collect::<Result<_>>()?;
        Self::new(geometry, components)
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn dim(&self) -> u32 {
        self.geometry.dim()
    }

    pub fn components(&self) -> &[OrbifoldComponent] {
        &self.components
    }

    pub fn with_component(&self, component: OrbifoldComponent) -> Result<Self> {
        let mut components = self.components.clone();
        components.push(component);
        Self::new(self.geometry.clone(), components)
    }

    /// Largest finite multiplicity, if any.
    pub fn max_finite_multiplicity(&self) -> Option<&Rational> {
        self.components
            .iter()
            .filter_map(|c| c.multiplicity.as_finite())
            .max()
    }
}

/// One entry of `Δ^(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTerm {
    pub class: GradedClass,
    pub coefficient: Rational,
    pub surviving: bool,
}

/// `Δ^(k) = Σ (1 − k/mᵢ)⁺ Δᵢ`, one entry per component.
pub fn delta_k(pair: &OrbifoldPair, k: Order) -> Vec<DeltaTerm> {
    pair.components
        .iter()
        .map(|c| {
            let coefficient = c.order_coefficient(k);
            DeltaTerm {
                class: c.class.clone(),
                surviving: coefficient.is_positive(),
                coefficient,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Positivity {
    Positive,
    NotPositive,
    Undecidable,
}

impl Positivity {
    pub fn as_str(self) -> &'static str {
        match self {
            Positivity::Positive => "true",
            Positivity::NotPositive => "false",
            Positivity::Undecidable => "undecidable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClass {
    pub class: GradedClass,
    pub positive: Positivity,
}

/// `K_X + Δ^(k)` and whether it is ample, as far as the preset can tell.
pub fn canonical_k(pair: &OrbifoldPair, k: Order) -> CanonicalClass {
    let mut class = pair.geometry.canonical_class();
    let terms = delta_k(pair, k);
    for t in &terms {
        class = class
            .add(&t.class.scale(&t.coefficient))
            .expect("components share the pair geometry");
    }
    let positive = match pair.geometry.kind() {
        GeometryKind::ProjectiveSpace => {
            if class.coefficient(&[1]).is_positive() {
                Positivity::Positive
            } else {
                Positivity::NotPositive
            }
        }
        GeometryKind::Abelian => {
            // Generators are taken to be ample; only effective combinations
            // of them are decided.
            let effective = terms
                .iter()
                .all(|t| t.class.terms().all(|(_, c)| !c.is_negative()));
            if !effective {
                Positivity::Undecidable
            } else if terms.iter().any(|t| t.surviving) {
                Positivity::Positive
            } else {
                Positivity::NotPositive
            }
        }
        GeometryKind::Surface => Positivity::Undecidable,
    };
    CanonicalClass { class, positive }
}
