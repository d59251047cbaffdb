use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QuatAlgebra, QuatError};
use crate::exactnum::{is_prime, prime_divisors, NatIdeal, Rat};

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `(a, b)_v ∈ {+1, −1}`; −1 exactly when `(a, b / ℚ_v)` is a division
/// algebra.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i8, QuatError> {
    if a.is_zero() || b.is_zero() {
        return Err(QuatError::ZeroParameter);
    }
    // n/d and n·d share a square class
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    match place {
        Place::Infinite => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if !is_prime(p) => Err(QuatError::BadPlace(p)),
        Place::Prime(2) => Ok(hilbert_two(&a, &b)),
        Place::Prime(p) => Ok(hilbert_odd(&a, &b, p)),
    }
}

fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn hilbert_odd(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let (alpha, u) = split_valuation(a, &pb);
    let (beta, v) = split_valuation(b, &pb);
    let mut s: i8 = 1;
    if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre(&u, &pb);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, &pb);
    }
    s
}

fn hilbert_two(a: &BigInt, b: &BigInt) -> i8 {
    let two = BigInt::from(2);
    let (alpha, u) = split_valuation(a, &two);
    let (beta, v) = split_valuation(b, &two);
    let u8_ = u.mod_floor(&BigInt::from(8)).to_u32().expect("residue mod 8");
    let v8 = v.mod_floor(&BigInt::from(8)).to_u32().expect("residue mod 8");
    let eps = |x: u32| ((x - 1) / 2) % 2;
    let omega = |x: u32| ((x * x - 1) / 8) % 2;
    let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
    if e % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The ramification data of a rational quaternion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDisc {
    pub disc: NatIdeal,
    pub ramified_primes: Vec<u64>,
    pub ramified_inf: bool,
}

/// Product of the finite ramified primes, plus whether the real place
/// ramifies. Only primes dividing `2·a·b` (numerators and denominators)
/// can ramify.
pub fn algebra_discriminant(h: &QuatAlgebra) -> Result<AlgebraDisc, QuatError> {
    let (a, b) = h
        .rational_params()
        .filter(|_| h.is_rational())
        .ok_or(QuatError::Unsupported("algebra discriminant over a quadratic field"))?;
    let n = BigInt::from(2) * a.numer() * a.denom() * b.numer() * b.denom();
    let mut ramified_primes = Vec::new();
    for p in prime_divisors(&n) {
        let p = p.to_u64().ok_or(QuatError::Unsupported("prime above 2^64"))?;
        if hilbert_symbol(a, b, Place::Prime(p))? == -1 {
            ramified_primes.push(p);
        }
    }
    let ramified_inf = hilbert_symbol(a, b, Place::Infinite)? == -1;
    if !(ramified_primes.len() + ramified_inf as usize).is_multiple_of(2) {
        return Err(QuatError::Internal("odd number of ramified places"));
    }
    let disc = ramified_primes.iter().fold(NatIdeal::from(1), |acc, &p| acc.product(&NatIdeal::from(p)));
    Ok(AlgebraDisc { disc, ramified_primes, ramified_inf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hs(a: i64, b: i64, v: Place) -> i8 {
        hilbert_symbol(&rat(a), &rat(b), v).unwrap()
    }

    #[test]
    fn known_symbols() {
        assert_eq!(hs(-1, -1, Place::Infinite), -1);
        assert_eq!(hs(-1, -1, Place::Prime(2)), -1);
        assert_eq!(hs(-1, -23, Place::Prime(23)), -1);
        assert_eq!(hs(-1, -5, Place::Prime(5)), 1);
        assert_eq!(hs(-1, -5, Place::Prime(2)), -1);
        assert_eq!(hs(2, 3, Place::Prime(3)), -1);
        assert_eq!(hs(5, 5, Place::Prime(5)), 1);
    }

    #[test]
    fn rejects_non_primes() {
        assert_eq!(hilbert_symbol(&rat(1), &rat(1), Place::Prime(9)), Err(QuatError::BadPlace(9)));
        assert_eq!(hilbert_symbol(&rat(1), &rat(1), Place::Prime(1)), Err(QuatError::BadPlace(1)));
        assert_eq!(hilbert_symbol(&rat(0), &rat(1), Place::Infinite), Err(QuatError::ZeroParameter));
    }

    fn disc(a: Rat, b: Rat) -> (u64, bool) {
        let h = QuatAlgebra::rational(a, b).unwrap();
        let d = algebra_discriminant(&h).unwrap();
        (d.disc.to_u64().unwrap(), d.ramified_inf)
    }

    #[test]
    fn discriminants() {
        assert_eq!(disc(rat(-1), rat(-23)), (23, true));
        assert_eq!(disc(rat(-1), rat(-3)), (3, true));
        assert_eq!(disc(rat(-1), rat(-5)), (2, true));
        assert_eq!(disc(rat(-1), rat(-6)), (3, true));
        assert_eq!(disc(rat(-1), rat(-7)), (7, true));
        assert_eq!(disc(rat(-1), rat(-10)), (2, true));
        assert_eq!(disc(rat(-1), rat(-1)), (2, true));
        assert_eq!(disc(rat(1), rat(-7)), (1, false));
        assert_eq!(disc(ratio(-1, 4), ratio(-23, 9)), (23, true));
    }

    #[test]
    fn quadratic_base_is_unsupported() {
        let h = QuatAlgebra::rational(rat(-1), rat(-23)).unwrap();
        let e = h.extend(crate::exactnum::Base::Quad(3)).unwrap();
        assert!(matches!(algebra_discriminant(&e), Err(QuatError::Unsupported(_))));
    }

    /// Product formula over ∞ and every prime up to |2ab|.
    #[test]
    fn product_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut draw = || loop {
                let x: i64 = rng.gen_range(-60..=60);
                if x != 0 {
                    break x;
                }
            };
            let (a, b) = (draw(), draw());
            let bound = (2 * a * b).unsigned_abs();
            let mut minus = (hs(a, b, Place::Infinite) == -1) as u32;
            let mut prod = hs(a, b, Place::Infinite);
            for p in (2..=bound).filter(|&p| is_prime(p)) {
                let s = hs(a, b, Place::Prime(p));
                prod *= s;
                minus += (s == -1) as u32;
            }
            assert_eq!(prod, 1, "({a},{b})");
            assert_eq!(minus % 2, 0);
        }
    }

    #[test]
    fn symmetric_and_bimultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let mut draw = || loop {
                let x: i64 = rng.gen_range(-40..=40);
                if x != 0 {
                    break x;
                }
            };
            let (a, a2, b) = (draw(), draw(), draw());
            for v in [Place::Infinite, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)] {
                assert_eq!(hs(a, b, v), hs(b, a, v));
                assert_eq!(hs(a * a2, b, v), hs(a, b, v) * hs(a2, b, v));
            }
        }
    }
}
