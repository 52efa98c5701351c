//! Exact rationals, extended multiplicities and their text forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a signed integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::parse(text, "expected an integer or a fraction p/q");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n.trim()).map_err(|_| bad())?,
            BigInt::from_str(d.trim()).map_err(|_| bad())?,
        ),
        None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::parse(text, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerators and denominators: shift both into range first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb - db).clamp(-1000, 1000);
    let scaled = if shift >= 0 {
        r / Rational::from_integer(BigInt::one() << (shift as usize))
    } else {
        r * Rational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    let approx = (scaled.numer() << 64usize) / scaled.denom();
    approx.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32 - 64)
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Decimal rendering with `digits` significant digits, ties rounded to even.
pub fn fmt_decimal(r: &Rational, digits: u32) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= abs < 10^(e+1)
    let mut exp = (abs.numer().to_string().len() as i64) - (abs.denom().to_string().len() as i64);
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while abs < pow10(exp) {
        exp -= 1;
    }
    while abs >= pow10(exp + 1) {
        exp += 1;
    }

    let scale = digits as i64 - 1 - exp;
    let scaled = &abs * pow10(scale);
    let (q, rem): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * BigInt::from(2);
    let mut mantissa = match twice.cmp(scaled.denom()) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    let mut scale = scale;
    if mantissa.to_string().len() > digits as usize {
        mantissa /= &ten;
        scale -= 1;
    }

    let mut s = mantissa.to_string();
    if scale > 0 {
        let scale = scale as usize;
        if s.len() <= scale {
            s = format!("{}{}", "0".repeat(scale - s.len() + 1), s);
        }
        let point = s.len() - scale;
        s.insert(point, '.');
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        s = trimmed.to_string();
    } else {
        s.push_str(&"0".repeat((-scale) as usize));
    }
    if negative {
        s.insert(0, '-');
    }
    s
}

/// Orbifold multiplicity `m ∈ ℚ≥1 ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtMultiplicity {
    Finite(Rational),
    Infinite,
}

impl ExtMultiplicity {
    pub fn finite(m: Rational) -> Result<Self> {
        if m < Rational::one() {
            return Err(Error::parse(
                "mult",
                format!("multiplicity {} is below 1", fmt_rational(&m)),
            ));
        }
        Ok(ExtMultiplicity::Finite(m))
    }

    pub fn integer(m: u64) -> Result<Self> {
        Self::finite(Rational::from_integer(BigInt::from(m)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtMultiplicity::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtMultiplicity::Finite(m) => Some(m),
            ExtMultiplicity::Infinite => None,
        }
    }

    /// `k / m`, with `k / ∞ = 0`.
    pub fn divide(&self, k: u64) -> Rational {
        match self {
            ExtMultiplicity::Finite(m) => Rational::from_integer(BigInt::from(k)) / m,
            ExtMultiplicity::Infinite => Rational::zero(),
        }
    }

    /// Whether `m > k`.
    pub fn exceeds(&self, k: u64) -> bool {
        match self {
            ExtMultiplicity::Finite(m) => *m > Rational::from_integer(BigInt::from(k)),
            ExtMultiplicity::Infinite => true,
        }
    }

    pub fn as_integer(&self) -> Option<u64> {
        match self {
            ExtMultiplicity::Finite(m) if m.is_integer() => m.to_integer().to_u64(),
            _ => None,
        }
    }
}

impl FromStr for ExtMultiplicity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ExtMultiplicity::Infinite),
            other => {
                let m = parse_rational(other).map_err(|_| {
                    Error::parse("mult", format!("`{other}` is not a multiplicity"))
                })?;
                ExtMultiplicity::finite(m)
            }
        }
    }
}

impl fmt::Display for ExtMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtMultiplicity::Finite(m) => f.write_str(&fmt_rational(m)),
            ExtMultiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// Jet order `k ∈ ℕ≥1 ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Order::Infinite),
            other => match other.parse::<u64>() {
                Ok(k) if k >= 1 => Ok(Order::Finite(k)),
                _ => Err(Error::parse(
                    "k",
                    format!("`{other}` is not a positive order"),
                )),
            },
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-5").unwrap(), int(-5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&ratio(-204, 11236)), "-51/2809");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn multiplicities() {
        assert_eq!(
            "inf".parse::<ExtMultiplicity>().unwrap(),
            ExtMultiplicity::Infinite
        );
        assert_eq!(
            "5/2".parse::<ExtMultiplicity>().unwrap(),
            ExtMultiplicity::Finite(ratio(5, 2))
        );
        assert!("1/2".parse::<ExtMultiplicity>().is_err());
        assert_eq!(ExtMultiplicity::Infinite.divide(7), int(0));
        assert_eq!(ExtMultiplicity::integer(5).unwrap().divide(2), ratio(2, 5));
        assert!(!ExtMultiplicity::integer(2).unwrap().exceeds(2));
        assert!(ExtMultiplicity::Infinite.exceeds(1_000_000));
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(fmt_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(fmt_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(fmt_decimal(&int(-30), 12), "-30");
        assert_eq!(fmt_decimal(&ratio(111, 11449), 12), "0.00969516988383");
        // ties go to the even neighbour
        assert_eq!(fmt_decimal(&ratio(125, 100), 2), "1.2");
        assert_eq!(fmt_decimal(&ratio(135, 100), 2), "1.4");
        assert_eq!(fmt_decimal(&int(995), 2), "1000");
        assert_eq!(fmt_decimal(&int(123456), 3), "123000");
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = Rational::new(
            num_traits::pow(BigInt::from(10), 400) + 1,
            num_traits::pow(BigInt::from(10), 399) * 3,
        );
        assert!((to_f64(&big) - 10.0 / 3.0).abs() < 1e-12);
        assert_eq!(from_f64(0.5), ratio(1, 2));
    }
}
