use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use super::QuatError;
use crate::exactnum::{Base, FieldScalar, Rat};

/// The quaternion algebra `(a, b / F)`: basis `1, i, j, ij` with
/// `i² = a`, `j² = b`, `ij = −ji`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatAlgebra {
    a: FieldScalar,
    b: FieldScalar,
}

pub type Alg = Arc<QuatAlgebra>;

impl QuatAlgebra {
    pub fn new(a: FieldScalar, b: FieldScalar) -> Result<Alg, QuatError> {
        if a.base() != b.base() {
            return Err(QuatError::Num(crate::exactnum::NumError::BaseMismatch(a.base(), b.base())));
        }
        if a.is_zero() || b.is_zero() {
            return Err(QuatError::ZeroParameter);
        }
        Ok(Arc::new(QuatAlgebra { a, b }))
    }

    pub fn rational(a: Rat, b: Rat) -> Result<Alg, QuatError> {
        Self::new(FieldScalar::rational(a), FieldScalar::rational(b))
    }

    pub fn base(&self) -> Base {
        self.a.base()
    }

    pub fn a(&self) -> &FieldScalar {
        &self.a
    }

    pub fn b(&self) -> &FieldScalar {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.base() == Base::Rational
    }

    /// `(a, b)` as rationals, when the parameters are rational.
    pub fn rational_params(&self) -> Option<(&Rat, &Rat)> {
        Some((self.a.to_rational()?, self.b.to_rational()?))
    }

    /// Ramified at the real place, i.e. `a < 0` and `b < 0`. Only defined
    /// over ℚ.
    pub fn is_definite(&self) -> Result<bool, QuatError> {
        if !self.is_rational() {
            return Err(QuatError::Unsupported("definiteness over a quadratic field"));
        }
        let (a, b) = self.rational_params().expect("rational algebra");
        Ok(a.is_negative() && b.is_negative())
    }

    /// `H ⊗ F'` for the quadratic field `F'`; the parameters must be
    /// rational.
    pub fn extend(&self, base: Base) -> Result<Alg, QuatError> {
        Self::new(self.a.lift(base)?, self.b.lift(base)?)
    }

    /// Parameters over the rationals, if they are rational.
    pub fn restrict(&self) -> Result<Alg, QuatError> {
        let (a, b) = self.rational_params().ok_or(QuatError::Unsupported("irrational algebra parameters"))?;
        Self::rational(a.clone(), b.clone())
    }
}

impl fmt::Display for QuatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / {})", self.a, self.b, self.base())
    }
}

/// `x + y·i + z·j + t·ij` in a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    alg: Alg,
    c: [FieldScalar; 4],
}

pub trait AlgExt {
    fn elem(&self, c: [FieldScalar; 4]) -> Result<Quaternion, QuatError>;
    fn rat_elem(&self, c: [Rat; 4]) -> Quaternion;
    fn scalar(&self, x: FieldScalar) -> Result<Quaternion, QuatError>;
    fn zero(&self) -> Quaternion;
    fn one(&self) -> Quaternion;
    fn basis_elem(&self, k: usize) -> Quaternion;
    fn std_basis(&self) -> [Quaternion; 4];
    fn same(&self, other: &Alg) -> bool;
}

impl AlgExt for Alg {
    fn elem(&self, c: [FieldScalar; 4]) -> Result<Quaternion, QuatError> {
        let base = self.base();
        let c = [c[0].lift(base)?, c[1].lift(base)?, c[2].lift(base)?, c[3].lift(base)?];
        Ok(Quaternion { alg: self.clone(), c })
    }

    fn rat_elem(&self, c: [Rat; 4]) -> Quaternion {
        let base = self.base();
        Quaternion { alg: self.clone(), c: c.map(|q| FieldScalar::embed(base, q)) }
    }

    fn scalar(&self, x: FieldScalar) -> Result<Quaternion, QuatError> {
        let z = FieldScalar::zero_in(self.base());
        self.elem([x, z.clone(), z.clone(), z])
    }

    fn zero(&self) -> Quaternion {
        let z = FieldScalar::zero_in(self.base());
        Quaternion { alg: self.clone(), c: [z.clone(), z.clone(), z.clone(), z] }
    }

    fn one(&self) -> Quaternion {
        self.basis_elem(0)
    }

    fn basis_elem(&self, k: usize) -> Quaternion {
        let mut q = self.zero();
        q.c[k] = FieldScalar::one_in(self.base());
        q
    }

    fn std_basis(&self) -> [Quaternion; 4] {
        [0, 1, 2, 3].map(|k| self.basis_elem(k))
    }

    fn same(&self, other: &Alg) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl Quaternion {
    pub fn alg(&self) -> &Alg {
        &self.alg
    }

    pub fn coords(&self) -> &[FieldScalar; 4] {
        &self.c
    }

    pub fn rational_coords(&self) -> Option<[Rat; 4]> {
        let r: Vec<Rat> = self.c.iter().map(|x| x.to_rational().cloned()).collect::<Option<_>>()?;
        r.try_into().ok()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(FieldScalar::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(FieldScalar::is_zero)
    }

    pub fn is_pure(&self) -> bool {
        self.c[0].is_zero()
    }

    fn check(&self, other: &Quaternion) -> Result<(), QuatError> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(QuatError::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    fn zip(&self, other: &Quaternion, f: impl Fn(&FieldScalar, &FieldScalar) -> FieldScalar) -> Quaternion {
        let c = [0, 1, 2, 3].map(|k| f(&self.c[k], &other.c[k]));
        Quaternion { alg: self.alg.clone(), c }
    }

    pub fn try_mul(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        let (a, b) = (&self.alg.a, &self.alg.b);
        let ab = a * b;
        let [x1, y1, z1, t1] = &self.c;
        let [x2, y2, z2, t2] = &other.c;
        let x = &(&(x1 * x2) + &(a * &(y1 * y2))) + &(&(b * &(z1 * z2)) - &(&ab * &(t1 * t2)));
        let y = &(&(x1 * y2) + &(y1 * x2)) + &(b * &(&(t1 * z2) - &(z1 * t2)));
        let z = &(&(x1 * z2) + &(z1 * x2)) + &(a * &(&(y1 * t2) - &(t1 * y2)));
        let t = &(&(x1 * t2) + &(t1 * x2)) + &(&(y1 * z2) - &(z1 * y2));
        Ok(Quaternion { alg: self.alg.clone(), c: [x, y, z, t] })
    }

    /// Standard involution: negates the `i`, `j`, `ij` coordinates.
    pub fn conj(&self) -> Quaternion {
        let [x, y, z, t] = &self.c;
        Quaternion { alg: self.alg.clone(), c: [x.clone(), -y, -z, -t] }
    }

    /// Reduced trace `q + q̄ = 2x`.
    pub fn tr(&self) -> FieldScalar {
        &self.c[0] + &self.c[0]
    }

    /// Reduced norm `q·q̄ = x² − a·y² − b·z² + ab·t²`.
    pub fn nrm(&self) -> FieldScalar {
        let (a, b) = (&self.alg.a, &self.alg.b);
        let [x, y, z, t] = &self.c;
        let ab = a * b;
        &(&(x * x) - &(a * &(y * y))) + &(&(&ab * &(t * t)) - &(b * &(z * z)))
    }

    pub fn scale(&self, s: &FieldScalar) -> Quaternion {
        Quaternion { alg: self.alg.clone(), c: self.c.clone().map(|x| &x * s) }
    }

    pub fn scale_rat(&self, s: &Rat) -> Quaternion {
        Quaternion { alg: self.alg.clone(), c: self.c.clone().map(|x| x.scale(s)) }
    }

    pub fn inverse(&self) -> Result<Quaternion, QuatError> {
        let n = self.nrm();
        if n.is_zero() {
            return Err(QuatError::NotInvertible);
        }
        Ok(self.conj().scale(&n.inv()?))
    }

    /// The same coordinates inside `target`, which must have the same
    /// parameters over a (possibly larger) base.
    pub fn lift(&self, target: &Alg) -> Result<Quaternion, QuatError> {
        if !target.a.is_rational() || !self.alg.a.is_rational() {
            // only rational-parameter algebras are related by extension
            if !self.alg.same(target) {
                return Err(QuatError::AlgebraMismatch);
            }
        }
        if self.alg.a.re() != target.a.re() || self.alg.b.re() != target.b.re() {
            return Err(QuatError::AlgebraMismatch);
        }
        target.elem(self.c.clone())
    }

    /// Drops to the rational algebra with the same parameters; fails if any
    /// coordinate has a nonzero `√d` part.
    pub fn restrict(&self, target: &Alg) -> Result<Quaternion, QuatError> {
        let c = self.rational_coords().ok_or(QuatError::NotRational)?;
        if self.alg.a.re() != target.a.re() || self.alg.b.re() != target.b.re() || !target.is_rational() {
            return Err(QuatError::AlgebraMismatch);
        }
        Ok(target.rat_elem(c))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        self.try_add(rhs).expect("quaternions from different algebras")
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        self.try_sub(rhs).expect("quaternions from different algebras")
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        self.try_mul(rhs).expect("quaternions from different algebras")
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion { alg: self.alg.clone(), c: self.c.clone().map(|x| -x) }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "ij"];
        let mut first = true;
        for (x, n) in self.c.iter().zip(names) {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if n.is_empty() {
                write!(f, "{x}")?;
            } else if x.is_one() {
                write!(f, "{n}")?;
            } else {
                write!(f, "({x}){n}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn alg(a: i64, b: i64) -> Alg {
        QuatAlgebra::rational(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn relations() {
        let h = alg(-1, -7);
        let [one, i, j, ij] = h.std_basis();
        assert_eq!(&i * &j, ij);
        assert_eq!(&j * &i, -&ij);
        assert_eq!(&i * &i, one.scale_rat(&rat(-1)));
        assert_eq!(&j * &j, one.scale_rat(&rat(-7)));
        assert_eq!(&ij * &ij, one.scale_rat(&rat(-7)));
        let p = &one + &i;
        let q = &one - &i;
        assert_eq!(&p * &q, one.scale_rat(&rat(2)));
    }

    #[test]
    fn conj_trace_norm() {
        let h = alg(-1, -7);
        let one = h.one();
        assert_eq!((one.conj(), one.tr(), one.nrm()), (one.clone(), FieldScalar::int(2), FieldScalar::int(1)));
        let ij = h.basis_elem(3);
        assert_eq!(ij.conj(), -&ij);
        assert_eq!(ij.tr(), FieldScalar::int(0));
        assert_eq!(ij.nrm(), FieldScalar::int(7));
        assert_eq!((&ij * &ij.conj()), one.scale(&ij.nrm()));

        let h = alg(-1, -23);
        let q = h.rat_elem([ratio(1, 2), rat(0), ratio(1, 2), rat(0)]);
        assert_eq!(q.tr(), FieldScalar::int(1));
        assert_eq!(q.nrm(), FieldScalar::int(6));
    }

    #[test]
    fn mismatch_and_inverse() {
        let p = alg(-1, -7).basis_elem(1);
        let q = alg(-1, -23).basis_elem(1);
        assert_eq!(p.try_mul(&q), Err(QuatError::AlgebraMismatch));
        let inv = p.inverse().unwrap();
        assert_eq!(&p * &inv, p.alg().one());
        // (1 + i) in (1, b) has norm 0
        let split = alg(1, -7);
        let z = &split.one() + &split.basis_elem(1);
        assert_eq!(z.inverse(), Err(QuatError::NotInvertible));
    }

    #[test]
    fn extension_round_trip() {
        let h = alg(-1, -23);
        let e = h.extend(Base::Quad(3)).unwrap();
        let q = h.rat_elem([rat(1), rat(2), rat(3), rat(4)]);
        let lifted = q.lift(&e).unwrap();
        assert_eq!(lifted.restrict(&h).unwrap(), q);
        let r3 = e.scalar(FieldScalar::sqrt_d(Base::Quad(3)).unwrap()).unwrap();
        assert_eq!((&r3 * &r3).restrict(&h).unwrap(), h.one().scale_rat(&rat(3)));
        assert_eq!(r3.restrict(&h), Err(QuatError::NotRational));
    }
}
