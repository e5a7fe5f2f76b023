use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The price paid when a formula is violated: an exact, strictly positive
/// rational, or infinite for inviolable formulas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Penalty {
    Finite(BigRational),
    Infinite,
}

impl Penalty {
    /// Wraps an exact magnitude; zero and negative values are rejected.
    pub fn finite(value: BigRational) -> Result<Penalty> {
        if value.is_positive() {
            Ok(Penalty::Finite(value))
        } else {
            Err(Error::NonPositivePenalty(format_rational(&value)))
        }
    }

    pub fn from_integer(value: u64) -> Result<Penalty> {
        Penalty::finite(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Penalty::Infinite)
    }

    /// Parses `inf`, a decimal literal (`10`, `2.5`), or a ratio (`5/2`).
    pub fn parse(text: &str) -> Result<Penalty> {
        if text == "inf" {
            return Ok(Penalty::Infinite);
        }
        Penalty::finite(parse_rational(text)?)
    }

    pub fn cost(&self) -> ExtendedCost {
        match self {
            Penalty::Finite(v) => ExtendedCost::Finite(v.clone()),
            Penalty::Infinite => ExtendedCost::Infinite,
        }
    }

    pub(crate) fn merged_with(&self, other: &Penalty) -> Penalty {
        match (self, other) {
            (Penalty::Finite(a), Penalty::Finite(b)) => Penalty::Finite(a + b),
            _ => Penalty::Infinite,
        }
    }
}

impl fmt::Display for Penalty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Penalty::Finite(v) => f.write_str(&format_rational(v)),
            Penalty::Infinite => f.write_str("inf"),
        }
    }
}

/// A cost total: an exact nonnegative rational (zero allowed) or infinity.
/// Addition is componentwise and absorbing at infinity; the empty sum is
/// zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedCost {
    Finite(BigRational),
    Infinite,
}

impl ExtendedCost {
    pub fn zero() -> ExtendedCost {
        ExtendedCost::Finite(BigRational::zero())
    }

    pub fn from_integer(value: u64) -> ExtendedCost {
        ExtendedCost::Finite(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedCost::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedCost::Finite(v) if v.is_zero())
    }

    /// Numeric value as a float; infinity maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedCost::Finite(v) => rational_to_f64(v),
            ExtendedCost::Infinite => f64::INFINITY,
        }
    }

    /// Parses `inf`, a decimal literal, or a ratio; zero is allowed.
    pub fn parse(text: &str) -> Result<ExtendedCost> {
        if text == "inf" {
            return Ok(ExtendedCost::Infinite);
        }
        let value = parse_rational(text)?;
        if value.is_negative() {
            return Err(Error::InvalidNumber(text.to_string()));
        }
        Ok(ExtendedCost::Finite(value))
    }
}

impl Add for ExtendedCost {
    type Output = ExtendedCost;

    fn add(self, rhs: ExtendedCost) -> ExtendedCost {
        match (self, rhs) {
            (ExtendedCost::Finite(a), ExtendedCost::Finite(b)) => ExtendedCost::Finite(a + b),
            _ => ExtendedCost::Infinite,
        }
    }
}

impl AddAssign for ExtendedCost {
    fn add_assign(&mut self, rhs: ExtendedCost) {
        let lhs = std::mem::replace(self, ExtendedCost::Infinite);
        *self = lhs + rhs;
    }
}

impl Sum for ExtendedCost {
    fn sum<I: Iterator<Item = ExtendedCost>>(iter: I) -> ExtendedCost {
        iter.fold(ExtendedCost::zero(), |acc, c| acc + c)
    }
}

impl From<&Penalty> for ExtendedCost {
    fn from(p: &Penalty) -> ExtendedCost {
        p.cost()
    }
}

impl fmt::Display for ExtendedCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCost::Finite(v) => f.write_str(&format_rational(v)),
            ExtendedCost::Infinite => f.write_str("inf"),
        }
    }
}

/// Prints `p/q`, or just `p` for integers.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) fn rational_to_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parses a nonnegative decimal literal (`10`, `2.5`) or ratio (`5/2`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidNumber(text.to_string());
    let digits_only = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some((numer, denom)) = text.split_once('/') {
        if !digits_only(numer) || !digits_only(denom) {
            return Err(bad());
        }
        let n: BigInt = numer.parse().map_err(|_| bad())?;
        let d: BigInt = denom.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut numer: BigInt = int_part.parse().map_err(|_| bad())?;
    let mut denom = BigInt::one();
    for digit in frac_part.bytes() {
        numer = numer * 10 + (digit - b'0');
        denom *= 10;
    }
    Ok(BigRational::new(numer, denom))
}
