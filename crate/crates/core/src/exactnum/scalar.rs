use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{is_squarefree, NumError};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p/q"` and similar exact rational literals.
pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let s = s.trim();
    let bad = || NumError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(NumError::ZeroDenominator);
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coefficient domain: either the rationals or a single quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    Rational,
    Quad(i64),
}

impl Base {
    pub fn quad(d: i64) -> Result<Base, NumError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(NumError::BadRadicand(d));
        }
        Ok(Base::Quad(d))
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Rational => write!(f, "Q"),
            Base::Quad(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// An element `re + sq·√d` of ℚ or ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    base: Base,
    re: Rat,
    sq: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Inv,
    Conj,
}

impl FieldScalar {
    pub fn rational(q: Rat) -> Self {
        FieldScalar { base: Base::Rational, re: q, sq: Rat::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn new(base: Base, re: Rat, sq: Rat) -> Result<Self, NumError> {
        if let Base::Quad(d) = base {
            Base::quad(d)?;
        } else if !sq.is_zero() {
            return Err(NumError::IrrationalPart);
        }
        Ok(FieldScalar { base, re, sq })
    }

    /// `re` viewed inside `base`.
    pub fn embed(base: Base, re: Rat) -> Self {
        FieldScalar { base, re, sq: Rat::zero() }
    }

    pub fn zero_in(base: Base) -> Self {
        Self::embed(base, Rat::zero())
    }

    pub fn one_in(base: Base) -> Self {
        Self::embed(base, Rat::one())
    }

    /// `√d` itself, for `base = Quad(d)`.
    pub fn sqrt_d(base: Base) -> Result<Self, NumError> {
        match base {
            Base::Quad(_) => Ok(FieldScalar { base, re: Rat::zero(), sq: Rat::one() }),
            Base::Rational => Err(NumError::IrrationalPart),
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn sq(&self) -> &Rat {
        &self.sq
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.sq.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.sq.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sq.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.re)
    }

    /// Moves a rational-valued scalar into another base.
    pub fn lift(&self, base: Base) -> Result<Self, NumError> {
        if self.base == base {
            return Ok(self.clone());
        }
        if !self.is_rational() {
            return Err(NumError::BaseMismatch(self.base, base));
        }
        Ok(Self::embed(base, self.re.clone()))
    }

    fn radicand(&self) -> Rat {
        match self.base {
            Base::Rational => Rat::zero(),
            Base::Quad(d) => rat(d),
        }
    }

    fn check(&self, other: &Self) -> Result<(), NumError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(NumError::BaseMismatch(self.base, other.base))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        if self.base == Base::Rational {
            return Ok(FieldScalar { base: self.base, re: &self.re + &other.re, sq: Rat::zero() });
        }
        Ok(FieldScalar { base: self.base, re: &self.re + &other.re, sq: &self.sq + &other.sq })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        if self.base == Base::Rational {
            return Ok(FieldScalar { base: self.base, re: &self.re - &other.re, sq: Rat::zero() });
        }
        Ok(FieldScalar { base: self.base, re: &self.re - &other.re, sq: &self.sq - &other.sq })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        if self.base == Base::Rational {
            return Ok(FieldScalar { base: self.base, re: &self.re * &other.re, sq: Rat::zero() });
        }
        let re = &self.re * &other.re + &self.sq * &other.sq * self.radicand();
        let sq = &self.re * &other.sq + &self.sq * &other.re;
        Ok(FieldScalar { base: self.base, re, sq })
    }

    pub fn conj(&self) -> Self {
        FieldScalar { base: self.base, re: self.re.clone(), sq: -&self.sq }
    }

    /// Field norm `x·conj(x)`, always rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re - &self.sq * &self.sq * self.radicand()
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldScalar { base: self.base, re: &self.re / &n, sq: -&self.sq / &n })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rat) -> Self {
        FieldScalar { base: self.base, re: &self.re * q, sq: &self.sq * q }
    }
}

/// Dispatches one field operation; `y` is required for the binary ones.
pub fn scalar_arith(op: ScalarOp, x: &FieldScalar, y: Option<&FieldScalar>) -> Result<FieldScalar, NumError> {
    let rhs = || y.ok_or(NumError::MissingOperand);
    match op {
        ScalarOp::Add => x.checked_add(rhs()?),
        ScalarOp::Mul => x.checked_mul(rhs()?),
        ScalarOp::Inv => x.inv(),
        ScalarOp::Conj => Ok(x.conj()),
    }
}

// Operator impls panic on a base mismatch; callers that cannot rule one out
// use the `checked_*` methods.
impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_add(rhs).expect("scalar base mismatch")
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_sub(rhs).expect("scalar base mismatch")
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_mul(rhs).expect("scalar base mismatch")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar { base: self.base, re: -&self.re, sq: -&self.sq }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Quad(d) if !self.sq.is_zero() => {
                if self.re.is_zero() {
                    write!(f, "{}*sqrt({d})", format_rat(&self.sq))
                } else {
                    let sign = if self.sq.is_negative() { "-" } else { "+" };
                    write!(f, "{}{sign}{}*sqrt({d})", format_rat(&self.re), format_rat(&self.sq.abs()))
                }
            }
            _ => write!(f, "{}", format_rat(&self.re)),
        }
    }
}
