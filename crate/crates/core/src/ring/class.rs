use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

use super::{Geometry, Monomial};

/// Element of the graded ring of a [`Geometry`], truncated above the
/// dimension. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct GradedClass {
    geometry: Arc<Geometry>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        self.geometry.same_as(&other.geometry) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

impl GradedClass {
    pub fn zero(geometry: &Arc<Geometry>) -> Self {
        GradedClass {
            geometry: geometry.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(geometry: &Arc<Geometry>, value: Rational) -> Self {
        let mut class = Self::zero(geometry);
        class.insert(vec![0; geometry.generators().len()], value);
        class
    }

    pub fn one(geometry: &Arc<Geometry>) -> Self {
        Self::constant(geometry, Rational::one())
    }

    /// `value · m` for a single monomial.
    pub fn monomial(geometry: &Arc<Geometry>, m: Monomial, value: Rational) -> Result<Self> {
        let mut terms = BTreeMap::new();
        terms.insert(m, value);
        Self::from_terms(geometry, terms)
    }

    /// The generator called `name`.
    pub fn generator(geometry: &Arc<Geometry>, name: &str) -> Result<Self> {
        let idx = geometry
            .generator_index(name)
            .ok_or_else(|| Error::parse(name, "unknown generator"))?;
        let mut m = vec![0; geometry.generators().len()];
        m[idx] = 1;
        Self::monomial(geometry, m, Rational::one())
    }

    /// Builds a class from explicit terms; terms above the dimension are
    /// dropped and monomials of the wrong arity rejected.
    pub fn from_terms(
        geometry: &Arc<Geometry>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let arity = geometry.generators().len();
        let mut class = Self::zero(geometry);
        for (m, c) in terms {
            if m.len() != arity {
                return Err(Error::domain(format!(
                    "monomial has {} exponents, geometry has {} generators",
                    m.len(),
                    arity
                )));
            }
            class.accumulate(m, c);
        }
        Ok(class)
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if !c.is_zero() && self.geometry.degree_of(&m) <= self.geometry.dim() {
            self.terms.insert(m, c);
        }
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || self.geometry.degree_of(&m) > self.geometry.dim() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.geometry.generators().len()])
    }

    /// Largest weighted degree of a stored monomial (0 for the zero class).
    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| self.geometry.degree_of(m))
            .max()
            .unwrap_or(0)
    }

    /// True if every stored monomial has weighted degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.geometry.degree_of(m) == d)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.geometry.same_as(&other.geometry) {
            Ok(())
        } else {
            Err(Error::GeometryMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&-other)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.geometry);
        }
        GradedClass {
            geometry: self.geometry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.geometry.dim();
        let mut out = Self::zero(&self.geometry);
        for (ma, ca) in &self.terms {
            let da = self.geometry.degree_of(ma);
            for (mb, cb) in &other.terms {
                if da + self.geometry.degree_of(mb) > n {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.accumulate(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.geometry);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same geometry");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same geometry");
            }
        }
        acc
    }

    /// Multiplicative inverse of a class with non-zero constant term, via the
    /// geometric series in `1 − a/a₀`.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let one = Self::one(&self.geometry);
        let x = one.sub(&self.scale(&inv0))?;
        let mut sum = one.clone();
        let mut power = one;
        loop {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(sum.scale(&inv0))
    }

    /// Degree-`n` evaluation against the integration table.
    pub fn integrate(&self) -> Rational {
        let n = self.geometry.dim();
        self.terms
            .iter()
            .filter(|(m, _)| self.geometry.degree_of(m) == n)
            .filter_map(|(m, c)| self.geometry.integral_of(m).map(|v| c * v))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Homogeneous part of degree `q` (zero when `q` exceeds the dimension).
    pub fn component(&self, q: u32) -> Self {
        GradedClass {
            geometry: self.geometry.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.geometry.degree_of(m) == q)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies the degree-`q` part by `tᵠ`; a ring endomorphism.
    pub fn degree_scaled(&self, t: &Rational) -> Self {
        let n = self.geometry.dim() as usize;
        let mut powers = Vec::with_capacity(n + 1);
        let mut p = Rational::one();
        for _ in 0..=n {
            powers.push(p.clone());
            p *= t;
        }
        let mut out = Self::zero(&self.geometry);
        for (m, c) in &self.terms {
            let q = self.geometry.degree_of(m) as usize;
            out.accumulate(m.clone(), c * &powers[q]);
        }
        out
    }

    /// Degree-`q` part multiplied by `(−1)ᵠ`: the total Chern class of the
    /// dual bundle when applied to a total Chern class.
    pub fn dual(&self) -> Self {
        self.degree_scaled(&-Rational::one())
    }

    /// `log` of a class with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::domain("log needs constant term 1"));
        }
        let y = self.sub(&Self::one(&self.geometry))?;
        let mut sum = Self::zero(&self.geometry);
        let mut power = Self::one(&self.geometry);
        let mut i: i64 = 1;
        loop {
            power = power.mul(&y)?;
            if power.is_zero() {
                break;
            }
            let sign = if i % 2 == 1 { 1 } else { -1 };
            sum = sum.add(&power.scale(&Rational::new(BigInt::from(sign), BigInt::from(i))))?;
            i += 1;
        }
        Ok(sum)
    }

    /// `exp` of a class with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("exp needs zero constant term"));
        }
        let mut sum = Self::one(&self.geometry);
        let mut term = Self::one(&self.geometry);
        let mut i: i64 = 1;
        loop {
            term = term
                .mul(self)?
                .scale(&Rational::new(BigInt::one(), BigInt::from(i)));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
            i += 1;
        }
        Ok(sum)
    }

    /// Terms in canonical order: ascending degree, then descending exponent
    /// vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.geometry
                .degree_of(a)
                .cmp(&self.geometry.degree_of(b))
                .then_with(|| b.cmp(a))
        });
        terms
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;

    fn neg(self) -> GradedClass {
        GradedClass {
            geometry: self.geometry.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;

    fn neg(self) -> GradedClass {
        -&self
    }
}

impl fmt::Display for GradedClass {
    /// `1 + 3 h + 6 h^2`, `1/2 D`, `-K*D1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_constant = m.iter().all(|e| *e == 0);
            if is_constant {
                f.write_str(&fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{} ", fmt_rational(&abs))?;
                }
                f.write_str(&self.geometry.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(n: u32) -> Arc<Geometry> {
        Geometry::projective(n).unwrap()
    }

    fn poly(g: &Arc<Geometry>, coeffs: &[i64]) -> GradedClass {
        GradedClass::from_terms(
            g,
            coeffs
                .iter()
                .enumerate()
                .map(|(q, c)| (vec![q as u32], int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let g = p(2);
        let prod = poly(&g, &[1, 1]).mul(&poly(&g, &[1, -1])).unwrap();
        assert_eq!(prod, poly(&g, &[1, 0, -1]));
    }

    #[test]
    fn truncation_drops_cube() {
        let g = p(2);
        let prod = poly(&g, &[1, -1]).mul(&poly(&g, &[1, 1, 1])).unwrap();
        assert_eq!(prod, GradedClass::one(&g));
        assert_eq!(poly(&g, &[1, 2, 3, 4]).max_degree(), 2);
    }

    #[test]
    fn surface_pairing_lookup() {
        let s = Geometry::surface(&["d"], &[("K*d", int(0)), ("d^2", int(6))], int(0)).unwrap();
        let k = GradedClass::generator(&s, "K").unwrap();
        let d = GradedClass::generator(&s, "d").unwrap();
        let prod = k.add(&d).unwrap().mul(&d).unwrap();
        assert_eq!(prod.integrate(), int(6));
        assert_eq!(prod.to_string(), "K*d + d^2");
    }

    #[test]
    fn inverses() {
        let g3 = p(3);
        assert_eq!(
            poly(&g3, &[1, -1]).invert_unit().unwrap(),
            poly(&g3, &[1, 1, 1, 1])
        );
        let g2 = p(2);
        let a = poly(&g2, &[1, -3, 3]);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv, poly(&g2, &[1, 3, 6]));
        assert_eq!(a.mul(&inv).unwrap(), GradedClass::one(&g2));
        assert_eq!(
            GradedClass::one(&g2).invert_unit().unwrap(),
            GradedClass::one(&g2)
        );
        let scaled = poly(&g2, &[2, 1]).invert_unit().unwrap();
        assert_eq!(scaled.coefficient(&[0]), ratio(1, 2));
        assert_eq!(scaled.coefficient(&[2]), ratio(1, 8));
        assert_eq!(poly(&g2, &[0, 1]).invert_unit(), Err(Error::NonUnit));
    }

    #[test]
    fn integration() {
        let g = p(2);
        assert_eq!(poly(&g, &[0, 0, 6]).integrate(), int(6));
        assert_eq!(poly(&g, &[0, 5]).integrate(), int(0));
        let s = Geometry::surface(&[], &[("K^2", int(0))], int(24)).unwrap();
        let k = GradedClass::generator(&s, "K").unwrap();
        let e = GradedClass::generator(&s, "e").unwrap();
        let class = k.mul(&k).unwrap().add(&e.scale(&int(2))).unwrap();
        assert_eq!(class.integrate(), int(48));
    }

    #[test]
    fn components() {
        let g = p(2);
        let a = poly(&g, &[1, 3, 6]);
        assert_eq!(a.component(1), poly(&g, &[0, 3]));
        assert_eq!(a.component(0), GradedClass::one(&g));
        assert!(a.component(3).is_zero());
        let ab = Geometry::abelian_polarized(2, int(6)).unwrap();
        let d = GradedClass::generator(&ab, "D").unwrap();
        assert!(GradedClass::one(&ab)
            .sub(&d)
            .unwrap()
            .component(2)
            .is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = GradedClass::one(&p(2));
        let b = GradedClass::one(&p(3));
        assert_eq!(a.mul(&b), Err(Error::GeometryMismatch));
        // structurally equal geometries are interchangeable
        assert!(a.mul(&GradedClass::one(&p(2))).is_ok());
    }

    #[test]
    fn log_exp_roundtrip() {
        let g = p(3);
        let a = poly(&g, &[1, 2, -1, 5]);
        let back = a.log().unwrap().exp().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn canonical_text() {
        let g = p(2);
        assert_eq!(poly(&g, &[1, 3, 6]).to_string(), "1 + 3 h + 6 h^2");
        assert_eq!(poly(&g, &[1, -3, 3]).to_string(), "1 - 3 h + 3 h^2");
        assert_eq!(GradedClass::zero(&g).to_string(), "0");
        let half = GradedClass::monomial(&g, vec![1], ratio(-1, 2)).unwrap();
        assert_eq!(half.to_string(), "-1/2 h");
    }
}
