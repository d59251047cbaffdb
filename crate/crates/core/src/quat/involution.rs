use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Alg, AlgExt, QuatError, Quaternion};
use crate::exactnum::{linalg, square_class, Base, FieldScalar, Rat, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    Symplectic,
    Orthogonal,
}

impl InvolutionType {
    pub fn as_str(&self) -> &'static str {
        match self {
            InvolutionType::Symplectic => "SYMPLECTIC",
            InvolutionType::Orthogonal => "ORTHOGONAL_TYPE",
        }
    }
}

/// An involution of the first kind on a quaternion algebra.
///
/// `Orthogonal(u)` is `q ↦ u·q̄·u⁻¹` for a pure invertible `u`. The stored
/// `u` is normalised (primitive integral with positive leading coordinate
/// over ℚ, leading coordinate 1 otherwise), so involutions differing only
/// by a scaling of `u` compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum Involution {
    Standard,
    Orthogonal(Quaternion),
}

impl Involution {
    pub fn orthogonal(u: Quaternion) -> Result<Self, QuatError> {
        if !u.is_pure() {
            return Err(QuatError::NotPure);
        }
        if u.nrm().is_zero() {
            return Err(QuatError::NotInvertible);
        }
        Ok(Involution::Orthogonal(normalize(&u)))
    }

    /// The defining pure quaternion, for orthogonal involutions.
    pub fn generator(&self) -> Option<&Quaternion> {
        match self {
            Involution::Standard => None,
            Involution::Orthogonal(u) => Some(u),
        }
    }

    pub fn try_apply(&self, q: &Quaternion) -> Result<Quaternion, QuatError> {
        match self {
            Involution::Standard => Ok(q.conj()),
            Involution::Orthogonal(u) => {
                // u⁻¹ = ū / nrm(u) = −u / nrm(u) for pure u
                let n = u.nrm();
                let inv = u.scale(&(-&n).inv()?);
                u.try_mul(&q.conj())?.try_mul(&inv)
            }
        }
    }

    /// Panics if `q` lives in a different algebra than the generator.
    pub fn apply(&self, q: &Quaternion) -> Quaternion {
        self.try_apply(q).expect("involution applied in a foreign algebra")
    }

    pub fn kind(&self) -> InvolutionType {
        match self {
            Involution::Standard => InvolutionType::Symplectic,
            Involution::Orthogonal(_) => InvolutionType::Orthogonal,
        }
    }

    /// Square class of `u²` for `u` spanning the −1 eigenspace.
    pub fn disc(&self) -> Result<SquareClass, QuatError> {
        let u = self.generator().ok_or(QuatError::Domain("discriminant of the standard involution"))?;
        let sq = (u * u).coords()[0].clone();
        let q = sq.to_rational().ok_or(QuatError::Unsupported("involution discriminant over a quadratic field"))?;
        if !u.alg().is_rational() {
            return Err(QuatError::Unsupported("involution discriminant over a quadratic field"));
        }
        Ok(square_class(q)?)
    }

    /// Bases of `H⁺` (three elements) and `H⁻` (one element) for an
    /// orthogonal involution, in reduced echelon form.
    pub fn plus_minus_spaces(&self, alg: &Alg) -> Result<(Vec<Quaternion>, Quaternion), QuatError> {
        if matches!(self, Involution::Standard) {
            return Err(QuatError::Domain("eigenspaces of the standard involution are not 3 + 1"));
        }
        let plus = self.eigenspace(alg, 1)?;
        let minus = self.eigenspace(alg, -1)?;
        let [minus]: [Quaternion; 1] = minus.try_into().map_err(|_| QuatError::Internal("dim H^- != 1"))?;
        if plus.len() != 3 {
            return Err(QuatError::Internal("dim H^+ != 3"));
        }
        Ok((plus, minus))
    }

    /// Basis of `{x : σ(x) = sign·x}`.
    pub fn eigenspace(&self, alg: &Alg, sign: i64) -> Result<Vec<Quaternion>, QuatError> {
        let base = alg.base();
        let s = FieldScalar::embed(base, Rat::from_integer(BigInt::from(sign)));
        let images: Vec<Quaternion> = alg
            .std_basis()
            .iter()
            .map(|e| self.try_apply(e)?.try_sub(&e.scale(&s)))
            .collect::<Result<_, QuatError>>()?;
        // column k of the system is the image of e_k
        let a: linalg::Matrix = (0..4).map(|j| images.iter().map(|q| q.coords()[j].clone()).collect()).collect();
        linalg::kernel(&a, 4, base)
            .into_iter()
            .map(|v| alg.elem([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]))
            .collect()
    }

    /// The same involution on `H ⊗ F'`.
    pub fn lift(&self, target: &Alg) -> Result<Involution, QuatError> {
        match self {
            Involution::Standard => Ok(Involution::Standard),
            Involution::Orthogonal(u) => Involution::orthogonal(u.lift(target)?),
        }
    }
}

fn normalize(u: &Quaternion) -> Quaternion {
    let alg = u.alg();
    if alg.base() == Base::Rational {
        let c = u.rational_coords().expect("rational algebra");
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = c.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if lead_neg { -g } else { g };
        let c = [0, 1, 2, 3].map(|k| Rat::from_integer(&ints[k] / &g));
        alg.rat_elem(c)
    } else {
        let lead = u.coords().iter().find(|x| !x.is_zero()).expect("nonzero generator");
        u.scale(&lead.inv().expect("nonzero"))
    }
}
