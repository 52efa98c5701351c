use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::GradedClass;

/// Exponent vector over the generators of a [`Geometry`].
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    /// `ℙⁿ` with hyperplane class `h`.
    ProjectiveSpace,
    /// Abelian variety: trivial tangent bundle, divisor generators only.
    Abelian,
    /// Surface given by its numerical invariants: canonical class `K`,
    /// divisor generators and an opaque degree-2 class `e = c₂(X)`.
    Surface,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ambient data: dimension, ring generators, integration table and the total
/// Chern class of the tangent bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    kind: GeometryKind,
    dim: u32,
    generators: Vec<Generator>,
    integrals: BTreeMap<Monomial, Rational>,
    tangent: BTreeMap<Monomial, Rational>,
}

pub const CANONICAL: &str = "K";
pub const SECOND_CHERN: &str = "e";

impl Geometry {
    /// `ℙⁿ`, with `∫hⁿ = 1` and `c(T) = (1+h)^{n+1}`.
    pub fn projective(n: u32) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::domain("projective space needs dimension ≥ 1"));
        }
        let mut integrals = BTreeMap::new();
        integrals.insert(vec![n], Rational::one());
        let mut tangent = BTreeMap::new();
        let mut binom = BigInt::one();
        for q in 0..=n {
            tangent.insert(vec![q], Rational::from_integer(binom.clone()));
            binom = binom * BigInt::from(n + 1 - q) / BigInt::from(q + 1);
        }
        Ok(Arc::new(Geometry {
            kind: GeometryKind::ProjectiveSpace,
            dim: n,
            generators: vec![Generator {
                name: "h".into(),
                degree: 1,
            }],
            integrals,
            tangent,
        }))
    }

    /// Abelian `n`-fold with divisor generators `names` and intersection
    /// numbers of degree-`n` monomials (missing entries are zero).
    pub fn abelian(
        n: u32,
        names: &[&str],
        intersections: &[(&str, Rational)],
    ) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::domain("abelian variety needs dimension ≥ 1"));
        }
        check_names(names)?;
        let generators = names
            .iter()
            .map(|s| Generator {
                name: s.to_string(),
                degree: 1,
            })
            .collect();
        let mut geometry = Geometry {
            kind: GeometryKind::Abelian,
            dim: n,
            generators,
            integrals: BTreeMap::new(),
            tangent: BTreeMap::new(),
        };
        geometry
            .tangent
            .insert(vec![0; names.len()], Rational::one());
        geometry.set_integrals(intersections)?;
        Ok(Arc::new(geometry))
    }

    /// Abelian `n`-fold polarized by a single class `D` with `∫Dⁿ = selfint`.
    pub fn abelian_polarized(n: u32, selfint: Rational) -> Result<Arc<Self>> {
        let key = format!("D^{n}");
        Self::abelian(n, &["D"], &[(key.as_str(), selfint)])
    }

    /// Surface with canonical class `K`, extra divisor generators, a table of
    /// degree-2 intersection numbers among `K` and the divisors, and `∫c₂`.
    pub fn surface(
        divisors: &[&str],
        intersections: &[(&str, Rational)],
        c2: Rational,
    ) -> Result<Arc<Self>> {
        let mut names = vec![CANONICAL];
        names.extend_from_slice(divisors);
        names.push(SECOND_CHERN);
        check_names(&names)?;
        let r = names.len();
        let generators = names
            .iter()
            .enumerate()
            .map(|(i, s)| Generator {
                name: s.to_string(),
                degree: if i + 1 == r { 2 } else { 1 },
            })
            .collect();
        let mut geometry = Geometry {
            kind: GeometryKind::Surface,
            dim: 2,
            generators,
            integrals: BTreeMap::new(),
            tangent: BTreeMap::new(),
        };
        for (key, _) in intersections {
            let m = geometry.parse_monomial(key)?;
            if m[r - 1] != 0 {
                return Err(Error::parse(
                    *key,
                    "c₂ is set through its own field, not the intersection table",
                ));
            }
        }
        geometry.set_integrals(intersections)?;
        let mut e = vec![0; r];
        e[r - 1] = 1;
        if !c2.is_zero() {
            geometry.integrals.insert(e.clone(), c2);
        }
        // c(T) = 1 − K + e
        let mut k = vec![0; r];
        k[0] = 1;
        geometry.tangent.insert(vec![0; r], Rational::one());
        geometry.tangent.insert(k, -Rational::one());
        geometry.tangent.insert(e, Rational::one());
        Ok(Arc::new(geometry))
    }

    fn set_integrals(&mut self, entries: &[(&str, Rational)]) -> Result<()> {
        for (key, value) in entries {
            let m = self.parse_monomial(key)?;
            if self.degree_of(&m) != self.dim {
                return Err(Error::parse(
                    *key,
                    format!("intersection monomial must have degree {}", self.dim),
                ));
            }
            if self.integrals.contains_key(&m) {
                return Err(Error::parse(*key, "duplicate intersection entry"));
            }
            if !value.is_zero() {
                self.integrals.insert(m, value.clone());
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree_of(&self, m: &[u32]) -> u32 {
        m.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Integration table entry of a top-degree monomial.
    pub fn integral_of(&self, m: &[u32]) -> Option<&Rational> {
        self.integrals.get(m)
    }

    /// Non-zero entries of the integration table.
    pub fn integrals(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.integrals.iter()
    }

    /// Divisor generators that may carry boundary components (everything of
    /// degree 1 except the canonical class of a surface preset).
    pub fn divisor_generators(&self) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == 1)
            .filter(|(_, g)| !(self.kind == GeometryKind::Surface && g.name == CANONICAL))
            .map(|(i, _)| i)
            .collect()
    }

    /// Parses `"D1*D2^2"`-style monomials; `"1"` is the unit.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let mut m = vec![0; self.generators.len()];
        let text = text.trim();
        if text == "1" {
            return Ok(m);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => (
                    name.trim(),
                    exp.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::parse(text, format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let idx = self
                .generator_index(name)
                .ok_or_else(|| Error::parse(text, format!("unknown generator `{name}`")))?;
            m[idx] += exp;
        }
        Ok(m)
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Total Chern class of the tangent bundle.
    pub fn tangent_chern(self: &Arc<Self>) -> GradedClass {
        GradedClass::from_terms(self, self.tangent.clone()).expect("preset tangent class is valid")
    }

    /// `c₁(K_X) = −c₁(T_X)`.
    pub fn canonical_class(self: &Arc<Self>) -> GradedClass {
        -&self.tangent_chern().component(1)
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

fn check_names(names: &[&str]) -> Result<()> {
    for (i, name) in names.iter().enumerate() {
        let valid = !name.is_empty()
            && name.chars().all(|c| c.is_alphanumeric() || c == '_')
            && name.chars().next().is_some_and(|c| !c.is_ascii_digit());
        if !valid {
            return Err(Error::parse(
                "generators",
                format!("invalid generator name `{name}`"),
            ));
        }
        if names[..i].contains(name) {
            return Err(Error::parse(
                "generators",
                format!("duplicate generator `{name}`"),
            ));
        }
    }
    Ok(())
}
