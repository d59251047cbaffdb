//! 2×2 matrices over a quaternion algebra, the involution σ̂, the twisted
//! group SL^σ(2, ·), its Lie algebra and ℤ-algebra closures.

use std::fmt;

use thiserror::Error;

use crate::exactnum::{linalg, FieldScalar, NumError, Rat, ZLattice};
use crate::orders::{Order, OrderError};
use crate::quat::{Alg, AlgExt, Involution, QuatError, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("matrix is not in SL^sigma(2)")]
    NotMember,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("conjugate has a nonzero irrational part")]
    NotRational,
    #[error("no generators given")]
    Empty,
    #[error("closure did not stabilise within {rounds} rounds")]
    Unconverged { rounds: usize, last: Box<Lattice16> },
}

impl From<NumError> for MatError {
    fn from(e: NumError) -> Self {
        MatError::Quat(QuatError::Num(e))
    }
}

/// `(a b; c d)` with entries in one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl Mat2 {
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Result<Mat2, MatError> {
        let alg = a.alg();
        if [&b, &c, &d].iter().any(|x| !alg.same(x.alg())) {
            return Err(QuatError::AlgebraMismatch.into());
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn identity(alg: &Alg) -> Mat2 {
        Mat2 { a: alg.one(), b: alg.zero(), c: alg.zero(), d: alg.one() }
    }

    pub fn zero(alg: &Alg) -> Mat2 {
        Mat2 { a: alg.zero(), b: alg.zero(), c: alg.zero(), d: alg.zero() }
    }

    /// `(0 1; −1 0)`.
    pub fn antidiagonal(alg: &Alg) -> Mat2 {
        Mat2 { a: alg.zero(), b: alg.one(), c: -&alg.one(), d: alg.zero() }
    }

    pub fn upper(z: &Quaternion) -> Mat2 {
        let alg = z.alg();
        Mat2 { a: alg.one(), b: z.clone(), c: alg.zero(), d: alg.one() }
    }

    pub fn lower(z: &Quaternion) -> Mat2 {
        let alg = z.alg();
        Mat2 { a: alg.one(), b: alg.zero(), c: z.clone(), d: alg.one() }
    }

    /// The matrix with `q` in position `pos` (0..4, row-major) and zeros elsewhere.
    pub fn unit(q: &Quaternion, pos: usize) -> Mat2 {
        let mut m = Mat2::zero(q.alg());
        *m.entry_mut(pos) = q.clone();
        m
    }

    pub fn alg(&self) -> &Alg {
        self.a.alg()
    }

    pub fn entries(&self) -> [&Quaternion; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    fn entry_mut(&mut self, pos: usize) -> &mut Quaternion {
        match pos {
            0 => &mut self.a,
            1 => &mut self.b,
            2 => &mut self.c,
            _ => &mut self.d,
        }
    }

    /// Coordinates of `a, b, c, d` in turn.
    pub fn coords16(&self) -> Vec<FieldScalar> {
        self.entries().iter().flat_map(|q| q.coords().iter().cloned()).collect()
    }

    pub fn rational_coords16(&self) -> Option<Vec<Rat>> {
        self.coords16().iter().map(|x| x.to_rational().cloned()).collect()
    }

    pub fn from_coords16(alg: &Alg, v: &[FieldScalar]) -> Result<Mat2, MatError> {
        let q = |k: usize| alg.elem([v[4 * k].clone(), v[4 * k + 1].clone(), v[4 * k + 2].clone(), v[4 * k + 3].clone()]);
        Ok(Mat2 { a: q(0)?, b: q(1)?, c: q(2)?, d: q(3)? })
    }

    pub fn from_rational16(alg: &Alg, v: &[Rat]) -> Mat2 {
        let q = |k: usize| alg.rat_elem([v[4 * k].clone(), v[4 * k + 1].clone(), v[4 * k + 2].clone(), v[4 * k + 3].clone()]);
        Mat2 { a: q(0), b: q(1), c: q(2), d: q(3) }
    }

    pub fn try_mul(&self, o: &Mat2) -> Result<Mat2, MatError> {
        let ab = |x: &Quaternion, y: &Quaternion, z: &Quaternion, w: &Quaternion| -> Result<Quaternion, QuatError> {
            x.try_mul(y)?.try_add(&z.try_mul(w)?)
        };
        Ok(Mat2 {
            a: ab(&self.a, &o.a, &self.b, &o.c)?,
            b: ab(&self.a, &o.b, &self.b, &o.d)?,
            c: ab(&self.c, &o.a, &self.d, &o.c)?,
            d: ab(&self.c, &o.b, &self.d, &o.d)?,
        })
    }

    pub fn try_add(&self, o: &Mat2) -> Result<Mat2, MatError> {
        Ok(Mat2 { a: self.a.try_add(&o.a)?, b: self.b.try_add(&o.b)?, c: self.c.try_add(&o.c)?, d: self.d.try_add(&o.d)? })
    }

    pub fn try_sub(&self, o: &Mat2) -> Result<Mat2, MatError> {
        Ok(Mat2 { a: self.a.try_sub(&o.a)?, b: self.b.try_sub(&o.b)?, c: self.c.try_sub(&o.c)?, d: self.d.try_sub(&o.d)? })
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn scale(&self, s: &FieldScalar) -> Mat2 {
        Mat2 { a: self.a.scale(s), b: self.b.scale(s), c: self.c.scale(s), d: self.d.scale(s) }
    }

    pub fn lift(&self, target: &Alg) -> Result<Mat2, MatError> {
        Ok(Mat2 { a: self.a.lift(target)?, b: self.b.lift(target)?, c: self.c.lift(target)?, d: self.d.lift(target)? })
    }

    /// Back to the rational algebra; `NotRational` if any √d part survives.
    pub fn restrict(&self, target: &Alg) -> Result<Mat2, MatError> {
        let r = |q: &Quaternion| q.restrict(target).map_err(|e| if e == QuatError::NotRational { MatError::NotRational } else { e.into() });
        Ok(Mat2 { a: r(&self.a)?, b: r(&self.b)?, c: r(&self.c)?, d: r(&self.d)? })
    }

    /// The inverse in Mat(2, H), by solving `M·X = I`.
    pub fn inverse(&self) -> Result<Mat2, MatError> {
        let alg = self.alg().clone();
        let base = alg.base();
        let rows: linalg::Matrix = (0..16)
            .map(|k| {
                let mut v = vec![FieldScalar::zero_in(base); 16];
                v[k] = FieldScalar::one_in(base);
                Ok(self.try_mul(&Mat2::from_coords16(&alg, &v)?)?.coords16())
            })
            .collect::<Result<_, MatError>>()?;
        let x = linalg::solve_in_span(&rows, &Mat2::identity(&alg).coords16()).ok_or(MatError::NotInvertible)?;
        Mat2::from_coords16(&alg, &x)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.alg())
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// `σ̂(a b; c d) = (σ(d) −σ(b); −σ(c) σ(a))`.
pub fn hat_sigma(sigma: &Involution, m: &Mat2) -> Result<Mat2, MatError> {
    Ok(Mat2 {
        a: sigma.try_apply(&m.d)?,
        b: -&sigma.try_apply(&m.b)?,
        c: -&sigma.try_apply(&m.c)?,
        d: sigma.try_apply(&m.a)?,
    })
}

/// `M·σ̂(M) = I`.
pub fn twisted_sl_membership(sigma: &Involution, m: &Mat2) -> Result<bool, MatError> {
    Ok(m.try_mul(&hat_sigma(sigma, m)?)?.is_identity())
}

/// The entrywise description: `a·σ(b), c·σ(d) ∈ H⁺` and `a·σ(d) − b·σ(c) = 1`.
pub fn entry_conditions(sigma: &Involution, m: &Mat2) -> Result<bool, MatError> {
    let fixed = |x: &Quaternion| -> Result<bool, MatError> { Ok(&sigma.try_apply(x)? == x) };
    let ab = m.a.try_mul(&sigma.try_apply(&m.b)?)?;
    let cd = m.c.try_mul(&sigma.try_apply(&m.d)?)?;
    let det = m.a.try_mul(&sigma.try_apply(&m.d)?)?.try_sub(&m.b.try_mul(&sigma.try_apply(&m.c)?)?)?;
    Ok(fixed(&ab)? && fixed(&cd)? && det == m.alg().one())
}

pub fn sl_inverse(sigma: &Involution, m: &Mat2) -> Result<Mat2, MatError> {
    if !twisted_sl_membership(sigma, m)? {
        return Err(MatError::NotMember);
    }
    hat_sigma(sigma, m)
}

pub fn bracket(x: &Mat2, y: &Mat2) -> Result<Mat2, MatError> {
    x.try_mul(y)?.try_sub(&y.try_mul(x)?)
}

/// Basis of `{X : σ̂(X) = −X}`.
pub fn lie_basis(sigma: &Involution, alg: &Alg) -> Result<Vec<Mat2>, MatError> {
    let base = alg.base();
    let images: Vec<Vec<FieldScalar>> = (0..16)
        .map(|k| {
            let mut v = vec![FieldScalar::zero_in(base); 16];
            v[k] = FieldScalar::one_in(base);
            let e = Mat2::from_coords16(alg, &v)?;
            Ok(hat_sigma(sigma, &e)?.try_add(&e)?.coords16())
        })
        .collect::<Result<_, MatError>>()?;
    let a: linalg::Matrix = (0..16).map(|j| images.iter().map(|v| v[j].clone()).collect()).collect();
    linalg::kernel(&a, 16, base).iter().map(|v| Mat2::from_coords16(alg, v)).collect()
}

/// A ℤ-lattice in Mat(2, H) ≅ ℚ¹⁶.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice16 {
    pub alg: Alg,
    pub lattice: ZLattice,
    pub ring: bool,
    pub unital: bool,
}

impl Lattice16 {
    pub fn from_matrices(alg: &Alg, ms: &[Mat2]) -> Result<Lattice16, MatError> {
        let rows: Vec<Vec<Rat>> = ms.iter().map(|m| m.rational_coords16().ok_or(MatError::NotRational)).collect::<Result<_, _>>()?;
        Ok(Lattice16 { alg: alg.clone(), lattice: ZLattice::from_rows(&rows, 16)?, ring: false, unital: false })
    }

    pub fn basis(&self) -> Vec<Mat2> {
        self.lattice.basis().iter().map(|v| Mat2::from_rational16(&self.alg, v)).collect()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        m.rational_coords16().is_some_and(|v| self.lattice.contains(&v).unwrap_or(false))
    }

    /// Same underlying lattice, flags ignored.
    pub fn same_lattice(&self, other: &Lattice16) -> bool {
        self.lattice == other.lattice
    }
}

/// `Mat(2, O)`.
pub fn mat2_order(o: &Order) -> Lattice16 {
    let ms: Vec<Mat2> = (0..4).flat_map(|pos| o.basis().into_iter().map(move |e| Mat2::unit(&e, pos))).collect();
    let mut l = Lattice16::from_matrices(o.alg(), &ms).expect("rational order");
    l.ring = true;
    l.unital = true;
    l
}

/// Unipotents `(1 e; 0 1)`, `(1 0; e 1)` over a ℤ-basis of `O ∩ H⁺`, and
/// `(0 1; −1 0)`.
pub fn elementary_generators(o: &Order, sigma: &Involution) -> Result<Vec<Mat2>, MatError> {
    let plus = o.eigen_sublattice(sigma, 1)?;
    let mut gens: Vec<Mat2> = plus.iter().map(Mat2::upper).collect();
    gens.extend(plus.iter().map(Mat2::lower));
    gens.push(Mat2::antidiagonal(o.alg()));
    Ok(gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub lattice: Lattice16,
    /// The round in which no new products appeared.
    pub converged_round: usize,
}

pub const DEFAULT_MAX_ROUNDS: usize = 8;

/// The unital ℤ-algebra generated by `gens`: start from `ℤI + Σ ℤG` and
/// add all pairwise products of the current basis until stable.
pub fn algebra_closure(alg: &Alg, gens: &[Mat2], max_rounds: usize) -> Result<Closure, MatError> {
    if gens.is_empty() {
        return Err(MatError::Empty);
    }
    let mut start = vec![Mat2::identity(alg)];
    start.extend(gens.iter().cloned());
    let mut current = Lattice16::from_matrices(alg, &start)?;
    for round in 1..=max_rounds {
        let basis = current.basis();
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                products.push(x.try_mul(y)?.rational_coords16().ok_or(MatError::NotRational)?);
            }
        }
        let next = current.lattice.extend(&products)?;
        if next == current.lattice {
            current.ring = true;
            current.unital = true;
            return Ok(Closure { lattice: current, converged_round: round });
        }
        current.lattice = next;
    }
    Err(MatError::Unconverged { rounds: max_rounds, last: Box::new(current) })
}

/// `γ⁻¹`, as `σ̂(γ)` when `γ ∈ SL^σ`, otherwise by a general solve.
pub fn twisted_inverse(sigma: &Involution, gamma: &Mat2) -> Result<Mat2, MatError> {
    let sigma = sigma.lift(gamma.alg())?;
    if twisted_sl_membership(&sigma, gamma)? {
        hat_sigma(&sigma, gamma)
    } else {
        gamma.inverse()
    }
}

/// Whether `γ·G·γ⁻¹ ∈ target` for every source generator. `γ` may live over
/// a quadratic extension; each conjugate must be rational.
pub fn conjugation_check(gamma: &Mat2, source: &[Mat2], target: &Lattice16, sigma: &Involution) -> Result<bool, MatError> {
    let inv = twisted_inverse(sigma, gamma)?;
    let ext = gamma.alg();
    for g in source {
        let c = gamma.try_mul(&g.lift(ext)?)?.try_mul(&inv)?.restrict(&target.alg)?;
        if !target.contains(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ·L·γ⁻¹` for a lattice `L` of rational matrices; every conjugate must
/// be rational.
pub fn conjugate_lattice(gamma: &Mat2, source: &Lattice16, sigma: &Involution) -> Result<Lattice16, MatError> {
    let inv = twisted_inverse(sigma, gamma)?;
    let ext = gamma.alg();
    let images = source
        .basis()
        .iter()
        .map(|g| gamma.try_mul(&g.lift(ext)?)?.try_mul(&inv)?.restrict(&source.alg))
        .collect::<Result<Vec<_>, _>>()?;
    Lattice16::from_matrices(&source.alg, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio, Base};
    use crate::quat::QuatAlgebra;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alg(a: i64, b: i64) -> Alg {
        QuatAlgebra::rational(rat(a), rat(b)).unwrap()
    }

    fn q(h: &Alg, c: [i64; 4], d: i64) -> Quaternion {
        h.rat_elem(c.map(|x| ratio(x, d)))
    }

    fn m(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    fn orth(h: &Alg, k: usize) -> Involution {
        Involution::orthogonal(h.basis_elem(k)).unwrap()
    }

    fn order(h: &Alg, basis: &[([i64; 4], i64)]) -> Order {
        let b: Vec<Quaternion> = basis.iter().map(|&(c, d)| q(h, c, d)).collect();
        Order::build(h, &b).unwrap()
    }

    fn o1_23(h: &Alg) -> Order {
        order(h, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)])
    }

    fn o2_23(h: &Alg) -> Order {
        order(h, &[([1, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([1, 0, 1, 0], 2), ([0, 11, 0, 1], 6)])
    }

    fn o1_7(h: &Alg) -> Order {
        order(h, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)])
    }

    fn o2_7(h: &Alg) -> Order {
        order(h, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([0, 1, 1, 0], 2), ([1, 0, 0, 1], 2)])
    }

    #[test]
    fn hat_sigma_examples() {
        let h = alg(-1, -7);
        let s = orth(&h, 3);
        let id = Mat2::identity(&h);
        assert_eq!(hat_sigma(&s, &id).unwrap(), id);
        // σ̂(J) = J⁻¹ = −J, which is what makes J a member
        let j = Mat2::antidiagonal(&h);
        assert_eq!(hat_sigma(&Involution::Standard, &j).unwrap(), j.neg());
        assert_eq!(hat_sigma(&s, &j).unwrap(), j.neg());
        let d = m(h.basis_elem(1), h.zero(), h.zero(), h.basis_elem(2));
        assert_eq!(hat_sigma(&s, &d).unwrap(), m(h.basis_elem(2), h.zero(), h.zero(), h.basis_elem(1)));
    }

    #[test]
    fn membership_examples() {
        let h = alg(-1, -7);
        let s = orth(&h, 3);
        for z in [h.basis_elem(1), h.basis_elem(2), q(&h, [3, -1, 2, 0], 2)] {
            let u = Mat2::upper(&z);
            assert!(twisted_sl_membership(&s, &u).unwrap());
            assert_eq!(sl_inverse(&s, &u).unwrap(), Mat2::upper(&-&z));
        }
        let j = Mat2::antidiagonal(&h);
        assert!(twisted_sl_membership(&s, &j).unwrap());
        assert_eq!(sl_inverse(&s, &j).unwrap(), j.neg());
        assert!(!twisted_sl_membership(&s, &Mat2::upper(&h.basis_elem(3))).unwrap());
        assert_eq!(sl_inverse(&s, &Mat2::upper(&h.basis_elem(3))), Err(MatError::NotMember));
        assert_eq!(sl_inverse(&s, &Mat2::identity(&h)).unwrap(), Mat2::identity(&h));
    }

    fn random_mat(rng: &mut ChaCha8Rng, h: &Alg, r: i64) -> Mat2 {
        let mut e = || h.rat_elem([0; 4].map(|_| rat(rng.gen_range(-r..=r))));
        m(e(), e(), e(), e())
    }

    fn sigmas(h: &Alg) -> Vec<Involution> {
        vec![Involution::Standard, orth(h, 1), orth(h, 2), orth(h, 3), Involution::orthogonal(q(h, [0, 1, 1, 1], 1)).unwrap()]
    }

    #[test]
    fn hat_sigma_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for h in [alg(-1, -7), alg(1, -7), alg(-2, 5)] {
            for s in sigmas(&h) {
                for _ in 0..20 {
                    let x = random_mat(&mut rng, &h, 4);
                    let y = random_mat(&mut rng, &h, 4);
                    assert_eq!(hat_sigma(&s, &hat_sigma(&s, &x).unwrap()).unwrap(), x);
                    let xy = x.try_mul(&y).unwrap();
                    let rhs = hat_sigma(&s, &y).unwrap().try_mul(&hat_sigma(&s, &x).unwrap()).unwrap();
                    assert_eq!(hat_sigma(&s, &xy).unwrap(), rhs);
                    let sum = x.try_add(&y).unwrap();
                    assert_eq!(hat_sigma(&s, &sum).unwrap(), hat_sigma(&s, &x).unwrap().try_add(&hat_sigma(&s, &y).unwrap()).unwrap());
                }
            }
        }
    }

    /// Random products of unipotents over `H⁺` and `J` are members.
    fn random_member(rng: &mut ChaCha8Rng, h: &Alg, s: &Involution) -> Mat2 {
        let plus = s.eigenspace(h, 1).unwrap();
        let mut g = Mat2::identity(h);
        for _ in 0..rng.gen_range(1..=4) {
            let z = plus.iter().fold(h.zero(), |acc, p| &acc + &p.scale_rat(&rat(rng.gen_range(-2..=2))));
            let step = match rng.gen_range(0..3) {
                0 => Mat2::upper(&z),
                1 => Mat2::lower(&z),
                _ => Mat2::antidiagonal(h),
            };
            g = g.try_mul(&step).unwrap();
        }
        g
    }

    #[test]
    fn group_closure_and_entry_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for h in [alg(-1, -7), alg(1, -7), alg(-1, -23)] {
            for s in sigmas(&h) {
                for _ in 0..10 {
                    let x = random_member(&mut rng, &h, &s);
                    let y = random_member(&mut rng, &h, &s);
                    assert!(twisted_sl_membership(&s, &x).unwrap());
                    assert!(entry_conditions(&s, &x).unwrap());
                    assert!(twisted_sl_membership(&s, &x.try_mul(&y).unwrap()).unwrap());
                    let inv = sl_inverse(&s, &x).unwrap();
                    assert!(twisted_sl_membership(&s, &inv).unwrap());
                    assert!(x.try_mul(&inv).unwrap().is_identity());
                    assert!(inv.try_mul(&x).unwrap().is_identity());
                    let junk = random_mat(&mut rng, &h, 2);
                    assert_eq!(twisted_sl_membership(&s, &junk).unwrap(), entry_conditions(&s, &junk).unwrap());
                    // a member perturbed in one entry
                    let mut near = x.clone();
                    near.b = &near.b + &h.basis_elem(rng.gen_range(0..4));
                    assert_eq!(twisted_sl_membership(&s, &near).unwrap(), entry_conditions(&s, &near).unwrap());
                }
            }
        }
    }

    #[test]
    fn lie_algebra() {
        let h = alg(-1, -7);
        for (s, dim) in [(orth(&h, 3), 10), (Involution::Standard, 6)] {
            let basis = lie_basis(&s, &h).unwrap();
            assert_eq!(basis.len(), dim);
            let plus = |x: &Quaternion| &s.apply(x) == x;
            for x in &basis {
                assert_eq!(x.d, -&s.apply(&x.a));
                assert!(plus(&x.b) && plus(&x.c));
            }
            let rows: linalg::Matrix = basis.iter().map(Mat2::coords16).collect();
            for x in &basis {
                for y in &basis {
                    let br = bracket(x, y).unwrap();
                    assert_eq!(hat_sigma(&s, &br).unwrap(), br.neg());
                    assert!(linalg::solve_in_span(&rows, &br.coords16()).is_some());
                }
            }
        }
    }

    #[test]
    fn general_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let h = alg(-1, -7);
        for _ in 0..10 {
            let x = random_mat(&mut rng, &h, 3);
            if let Ok(inv) = x.inverse() {
                assert!(x.try_mul(&inv).unwrap().is_identity());
                assert!(inv.try_mul(&x).unwrap().is_identity());
            }
        }
        assert_eq!(Mat2::zero(&h).inverse(), Err(MatError::NotInvertible));
    }

    #[test]
    fn closure_examples() {
        let h = alg(-1, -23);
        let c = algebra_closure(&h, &[Mat2::identity(&h)], DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(c.lattice.rank(), 1);
        let o1 = o1_23(&h);
        let five: Vec<Mat2> = [q(&h, [1, 0, 0, 0], 1), h.basis_elem(1), q(&h, [1, 0, 1, 0], 2), q(&h, [0, 1, 0, 1], 2)]
            .iter()
            .map(|z| Mat2::unit(z, 1))
            .chain([Mat2::unit(&h.one(), 2)])
            .collect();
        let c = algebra_closure(&h, &five, DEFAULT_MAX_ROUNDS).unwrap();
        assert!(c.lattice.same_lattice(&mat2_order(&o1)));
        let gens = elementary_generators(&o1, &orth(&h, 2)).unwrap();
        assert_eq!(gens.len(), 7);
        let c = algebra_closure(&h, &gens, DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(c.lattice.rank(), 16);
        assert!(c.lattice.same_lattice(&mat2_order(&o1)));
        assert!(c.lattice.ring && c.lattice.unital);
        // idempotent
        let again = algebra_closure(&h, &c.lattice.basis(), DEFAULT_MAX_ROUNDS).unwrap();
        assert!(again.lattice.same_lattice(&c.lattice));
        assert_eq!(again.converged_round, 1);
    }

    #[test]
    fn closure_diverges_on_non_integral_input() {
        let h = alg(-1, -7);
        let half = Mat2::unit(&q(&h, [1, 0, 0, 0], 2), 0);
        assert!(matches!(algebra_closure(&h, &[half], 3), Err(MatError::Unconverged { rounds: 3, .. })));
        assert_eq!(algebra_closure(&h, &[], 3), Err(MatError::Empty));
    }

    #[test]
    fn closure_is_monotone() {
        let h = alg(-1, -7);
        let o = o1_7(&h);
        let gens = elementary_generators(&o, &orth(&h, 3)).unwrap();
        let small = algebra_closure(&h, &gens[..2], DEFAULT_MAX_ROUNDS).unwrap();
        let big = algebra_closure(&h, &gens, DEFAULT_MAX_ROUNDS).unwrap();
        assert!(big.lattice.lattice.contains_lattice(&small.lattice.lattice).unwrap());
        assert!(big.lattice.same_lattice(&mat2_order(&o)));
    }

    fn sqrt_d(d: i64) -> FieldScalar {
        FieldScalar::sqrt_d(Base::quad(d).unwrap()).unwrap()
    }

    /// The conjugator over `(−1,−23) ⊗ ℚ(√3)`.
    fn gamma_23(h: &Alg) -> Mat2 {
        let e = h.extend(Base::quad(3).unwrap()).unwrap();
        let r3 = sqrt_d(3);
        let inv = (&r3 + &r3).inv().unwrap();
        let l = |c: [i64; 4]| q(h, c, 1).lift(&e).unwrap();
        m(l([1, -6, 1, 0]).scale(&inv), l([1, 0, 1, 0]).scale(&inv), l([1, 6, 1, 0]).scale(&inv), l([0, 1, 0, 0]).scale(&r3))
    }

    fn five(h: &Alg) -> Vec<Mat2> {
        [h.one(), h.basis_elem(1), q(h, [1, 0, 1, 0], 2), q(h, [0, 1, 0, 1], 2)]
            .iter()
            .map(|z| Mat2::unit(z, 1))
            .chain([Mat2::unit(&h.one(), 2)])
            .collect()
    }

    #[test]
    fn conjugation_over_sqrt3() {
        let h = alg(-1, -23);
        let s = orth(&h, 2);
        let g = gamma_23(&h);
        assert!(twisted_sl_membership(&s.lift(g.alg()).unwrap(), &g).unwrap());
        let target = mat2_order(&o2_23(&h));
        assert!(conjugation_check(&g, &five(&h), &target, &s).unwrap());
        let id = Mat2::identity(&h);
        assert!(conjugation_check(&id, &five(&h), &mat2_order(&o1_23(&h)), &s).unwrap());
        // the five generators are not all in Mat(2, O₂) unconjugated
        assert!(!conjugation_check(&id, &five(&h), &target, &s).unwrap());
        assert!(conjugate_lattice(&g, &mat2_order(&o1_23(&h)), &s).unwrap().same_lattice(&target));
        assert!(!conjugate_lattice(&id, &mat2_order(&o1_23(&h)), &s).unwrap().same_lattice(&target));
    }

    #[test]
    fn conjugation_respects_hat_sigma() {
        let h = alg(-1, -23);
        let s = orth(&h, 2);
        let g = gamma_23(&h);
        let se = s.lift(g.alg()).unwrap();
        let inv = hat_sigma(&se, &g).unwrap();
        for x in five(&h) {
            let x = x.lift(g.alg()).unwrap();
            let lhs = hat_sigma(&se, &g.try_mul(&x).unwrap().try_mul(&inv).unwrap()).unwrap();
            let rhs = g.try_mul(&hat_sigma(&se, &x).unwrap()).unwrap().try_mul(&inv).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn conjugation_over_sqrt2() {
        let h = alg(-1, -7);
        let s = orth(&h, 3);
        let e = h.extend(Base::quad(2).unwrap()).unwrap();
        let r = sqrt_d(2).inv().unwrap();
        let g = m(q(&h, [1, 1, 0, 0], 1).lift(&e).unwrap().scale(&r), e.zero(), e.zero(), q(&h, [-1, 1, 0, 0], 1).lift(&e).unwrap().scale(&r));
        // a similitude: γ·σ̂(γ) = −I
        let se = s.lift(&e).unwrap();
        assert_eq!(g.try_mul(&hat_sigma(&se, &g).unwrap()).unwrap(), Mat2::identity(&e).neg());
        let source = mat2_order(&o1_7(&h)).basis();
        assert!(conjugation_check(&g, &source, &mat2_order(&o2_7(&h)), &s).unwrap());
        let image = conjugate_lattice(&g, &mat2_order(&o1_7(&h)), &s).unwrap();
        assert!(image.same_lattice(&mat2_order(&o2_7(&h))));
    }

    #[test]
    fn irrational_conjugates_are_reported() {
        let h = alg(-1, -7);
        let s = orth(&h, 3);
        let e = h.extend(Base::quad(2).unwrap()).unwrap();
        let r = sqrt_d(2);
        let g = m(e.one().scale(&r), e.zero(), e.zero(), e.one());
        let source = [Mat2::unit(&h.one(), 1)];
        assert_eq!(conjugation_check(&g, &source, &mat2_order(&o1_7(&h)), &s), Err(MatError::NotRational));
    }
}
