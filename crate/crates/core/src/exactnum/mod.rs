//! Exact scalars (ℚ and ℚ(√d)), ideals of ℤ, square classes, and canonical
//! ℤ-lattices. Everything downstream is built on these types.

mod lattice;
pub mod linalg;
mod scalar;
pub mod shortvec;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use lattice::{integer_kernel, ZLattice};
pub use scalar::{format_rat, parse_rat, rat, ratio, scalar_arith, Base, FieldScalar, Rat, ScalarOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot combine scalars over {0} and {1}")]
    BaseMismatch(Base, Base),
    #[error("{0} is not a valid quadratic radicand")]
    BadRadicand(i64),
    #[error("nonzero sqrt part for a rational scalar")]
    IrrationalPart,
    #[error("binary operation is missing its second operand")]
    MissingOperand,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("expected vectors of length {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("square class of zero is undefined")]
    ZeroSquareClass,
}

/// An ideal of ℤ, stored by its nonnegative generator (0 is the zero ideal).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatIdeal(BigUint);

impl NatIdeal {
    pub fn new(gen: impl Into<BigUint>) -> Self {
        NatIdeal(gen.into())
    }

    /// The ideal generated by `n` (sign is irrelevant).
    pub fn from_int(n: &BigInt) -> Self {
        NatIdeal(n.magnitude().clone())
    }

    /// The ideal generated by a finite set of integers.
    pub fn generated_by<'a>(gens: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let g = gens.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        NatIdeal::from_int(&g)
    }

    pub fn gen(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// (m) ∩ (n) = (lcm(m, n)).
    pub fn intersect(&self, other: &NatIdeal) -> NatIdeal {
        if self.0.is_zero() || other.0.is_zero() {
            return NatIdeal(BigUint::zero());
        }
        NatIdeal(self.0.lcm(&other.0))
    }

    /// (m) + (n) = (gcd(m, n)).
    pub fn sum(&self, other: &NatIdeal) -> NatIdeal {
        NatIdeal(self.0.gcd(&other.0))
    }

    pub fn product(&self, other: &NatIdeal) -> NatIdeal {
        NatIdeal(&self.0 * &other.0)
    }
}

impl From<u64> for NatIdeal {
    fn from(n: u64) -> Self {
        NatIdeal(BigUint::from(n))
    }
}

impl fmt::Display for NatIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// A class of ℚ^×/(ℚ^×)², represented by its squarefree integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    rep: i64,
}

impl SquareClass {
    pub fn rep(&self) -> i64 {
        self.rep
    }

    /// The squarefree ideal attached to the class: `(|rep|)`.
    pub fn to_ideal(&self) -> NatIdeal {
        NatIdeal::from(self.rep.unsigned_abs())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(Q^x)^2", self.rep)
    }
}

pub fn square_class(q: &Rat) -> Result<SquareClass, NumError> {
    if q.is_zero() {
        return Err(NumError::ZeroSquareClass);
    }
    // p/q and p·q differ by the square q².
    let n = q.numer() * q.denom();
    let mut rep = BigInt::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            rep *= BigInt::from(p);
        }
    }
    if n.is_negative() {
        rep = -rep;
    }
    let rep = rep.to_i64().expect("squarefree part fits in i64");
    Ok(SquareClass { rep })
}

/// Prime factorisation by trial division; fine for the sizes used here.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factor(n.magnitude()).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    factor(&BigUint::from(d.unsigned_abs())).iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&rat(-6)).unwrap().rep(), -6);
        assert_eq!(square_class(&rat(12)).unwrap().rep(), 3);
        assert_eq!(square_class(&ratio(-49, 4)).unwrap().rep(), -1);
        assert_eq!(square_class(&ratio(1, 2)).unwrap().rep(), 2);
        assert_eq!(square_class(&rat(0)), Err(NumError::ZeroSquareClass));
    }

    #[test]
    fn ideals() {
        let a = NatIdeal::from(3);
        let b = NatIdeal::from(6);
        assert_eq!(a.intersect(&b), NatIdeal::from(6));
        assert_eq!(a.sum(&b), NatIdeal::from(3));
        assert_eq!(NatIdeal::from(0).intersect(&a), NatIdeal::from(0));
        let gens = [BigInt::from(4), BigInt::from(-6)];
        assert_eq!(NatIdeal::generated_by(&gens), NatIdeal::from(2));
        assert_eq!(NatIdeal::generated_by(&[]), NatIdeal::from(0));
        assert_eq!(a.to_string(), "(3)");
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_divisors(&BigInt::from(-60)), vec![2u32.into(), 3u32.into(), 5u32.into()]);
        assert!(is_prime(23));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(is_squarefree(-30));
        assert!(!is_squarefree(18));
    }

    proptest! {
        #[test]
        fn square_class_ignores_squares(n in -500i64..500, d in 1i64..50, r in 1i64..30, s in 1i64..30) {
            prop_assume!(n != 0);
            let q = ratio(n, d);
            let r2 = ratio(r * r, s * s);
            prop_assert_eq!(square_class(&(&q * &r2)).unwrap(), square_class(&q).unwrap());
        }
    }
}
