//! The quinary form `q_H(s, t, z) = st − nrm(z)` on `F² ⊕ H⁺`, the
//! representation ρ of SL^σ(2, H) on it, integral trace forms of σ-orders,
//! and a representation-count comparison of integral forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{integer_kernel, linalg, shortvec, FieldScalar, NumError, Rat};
use crate::mat2grp::{hat_sigma, mat2_order, twisted_sl_membership, MatError, Mat2};
use crate::orders::{Order, OrderError};
use crate::quat::{Alg, AlgExt, Involution, QuatError, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("undefined: {0}")]
    Domain(&'static str),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<NumError> for FormError {
    fn from(e: NumError) -> Self {
        FormError::Quat(QuatError::Num(e))
    }
}

/// `q(v) = vᵀ·G·v` for a symmetric rational `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    gram: Vec<Vec<Rat>>,
}

impl QuadForm {
    pub fn new(gram: Vec<Vec<Rat>>) -> Result<QuadForm, FormError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(FormError::Input("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(FormError::Input("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadForm { gram })
    }

    /// From the coefficients of `Σ_{i≤j} c_ij x_i x_j`, upper triangle row-major.
    pub fn from_polynomial(n: usize, coeffs: &BTreeMap<(usize, usize), Rat>) -> Result<QuadForm, FormError> {
        let mut g = vec![vec![Rat::zero(); n]; n];
        for (&(i, j), c) in coeffs {
            if i >= n || j >= n {
                return Err(FormError::Input(format!("monomial index ({i},{j}) out of range")));
            }
            if i == j {
                g[i][i] += c;
            } else {
                let half = c / Rat::from_integer(BigInt::from(2));
                g[i][j] += &half;
                g[j][i] += &half;
            }
        }
        Ok(QuadForm { gram: g })
    }

    /// From the integer matrix `2G`.
    pub fn from_gram2(gram2: &[Vec<BigInt>]) -> Result<QuadForm, FormError> {
        let two = Rat::from_integer(BigInt::from(2));
        QuadForm::new(gram2.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone()) / &two).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        let n = self.dim();
        let mut s = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                s += &self.gram[i][j] * &v[i] * &v[j];
            }
        }
        s
    }

    pub fn det(&self) -> Rat {
        linalg::det(&linalg::from_rational(&self.gram)).to_rational().expect("rational form").clone()
    }

    /// `2G` when it is an integer matrix.
    pub fn gram2(&self) -> Option<Vec<Vec<BigInt>>> {
        self.gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = x * Rat::from_integer(BigInt::from(2));
                        y.is_integer().then(|| y.to_integer())
                    })
                    .collect()
            })
            .collect()
    }

    /// Integer-valued: `2G` integral with even diagonal.
    pub fn is_integral(&self) -> bool {
        self.gram2().is_some() && self.gram.iter().enumerate().all(|(i, r)| r[i].is_integer())
    }

    /// `(positive, negative, zero)` counts of a diagonalization by congruence.
    pub fn signature(&self) -> (usize, usize, usize) {
        let mut a = self.gram.clone();
        let n = a.len();
        let (mut p, mut m, mut z) = (0, 0, 0);
        for i in 0..n {
            if a[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                    // e_i += e_j makes the diagonal 2·a_ij
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..n {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                }
            }
            let d = a[i][i].clone();
            if d.is_zero() {
                z += 1;
                continue;
            }
            if d.is_positive() {
                p += 1;
            } else {
                m += 1;
            }
            for j in i + 1..n {
                let f = &a[j][i] / &d;
                for k in i..n {
                    let v = &f * &a[i][k];
                    a[j][k] -= v;
                }
            }
            for j in i + 1..n {
                a[i][j] = Rat::zero();
            }
        }
        (p, m, z)
    }

    /// `Uᵀ·G·U`.
    pub fn transform(&self, u: &[Vec<Rat>]) -> QuadForm {
        let g = linalg::from_rational(&self.gram);
        let um = linalg::from_rational(u);
        let r = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&um), &g), &um);
        QuadForm { gram: linalg::to_rational(&r).expect("rational form") }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { self.gram[i][i].clone() } else { &self.gram[i][j] * Rat::from_integer(BigInt::from(2)) };
                if !c.is_zero() {
                    terms.push(if i == j { format!("{c}*x{i}^2") } else { format!("{c}*x{i}*x{j}") });
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The plus space basis used for `F² ⊕ H⁺` coordinates.
fn plus_basis(alg: &Alg, sigma: &Involution) -> Result<Vec<Quaternion>, FormError> {
    if matches!(sigma, Involution::Standard) {
        return Err(FormError::Domain("q_H needs an orthogonal involution"));
    }
    if !alg.is_rational() {
        return Err(QuatError::Unsupported("q_H over a quadratic field").into());
    }
    Ok(sigma.plus_minus_spaces(alg)?.0)
}

/// Gram matrix of `st − nrm(z)` in the basis `{s, t, H⁺ basis}` and its
/// signature `(p, n)`.
pub fn qh_form(alg: &Alg, sigma: &Involution) -> Result<(QuadForm, (usize, usize)), FormError> {
    let plus = plus_basis(alg, sigma)?;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut g = vec![vec![Rat::zero(); 5]; 5];
    g[0][1] = half.clone();
    g[1][0] = half.clone();
    for (k, x) in plus.iter().enumerate() {
        for (l, y) in plus.iter().enumerate() {
            let b = (x * &y.conj()).tr().to_rational().expect("rational algebra").clone();
            g[k + 2][l + 2] = -(b * &half);
        }
    }
    let q = QuadForm { gram: g };
    let (p, n, _) = q.signature();
    Ok((q, (p, n)))
}

/// A point `(s, t, z)` of `F² ⊕ H⁺`, viewed as the matrix `(s z; z̄ t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MHPoint {
    pub s: FieldScalar,
    pub t: FieldScalar,
    pub z: Quaternion,
}

impl MHPoint {
    pub fn new(s: FieldScalar, t: FieldScalar, z: Quaternion, sigma: &Involution) -> Result<MHPoint, FormError> {
        if sigma.try_apply(&z)? != z {
            return Err(FormError::Input("z is not fixed by the involution".into()));
        }
        Ok(MHPoint { s, t, z })
    }

    pub fn to_matrix(&self) -> Result<Mat2, FormError> {
        let alg = self.z.alg();
        Ok(Mat2::new(alg.scalar(self.s.clone())?, self.z.clone(), self.z.conj(), alg.scalar(self.t.clone())?)?)
    }

    /// Inverse of [`MHPoint::to_matrix`]; rejects matrices outside the model.
    pub fn from_matrix(m: &Mat2, sigma: &Involution) -> Result<MHPoint, FormError> {
        if !m.a.is_scalar() || !m.d.is_scalar() || m.c != m.b.conj() {
            return Err(FormError::Input("matrix is not of the form (s z; conj(z) t)".into()));
        }
        MHPoint::new(m.a.coords()[0].clone(), m.d.coords()[0].clone(), m.b.clone(), sigma)
    }

    /// The quasi-determinant `st − nrm(z)`.
    pub fn quasi_det(&self) -> FieldScalar {
        &(&self.s * &self.t) - &self.z.nrm()
    }
}

/// `(ā c̄; b̄ d̄)`.
fn conj_transpose(g: &Mat2) -> Mat2 {
    Mat2 { a: g.a.conj(), b: g.c.conj(), c: g.b.conj(), d: g.d.conj() }
}

/// A 5×5 rational matrix acting on coordinates `(s, t, z₀, z₁, z₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep5 {
    pub matrix: Vec<Vec<Rat>>,
}

impl Rep5 {
    pub fn identity() -> Rep5 {
        Rep5 { matrix: (0..5).map(|i| (0..5).map(|j| Rat::from_integer(BigInt::from((i == j) as i32))).collect()).collect() }
    }

    pub fn mul(&self, o: &Rep5) -> Rep5 {
        let m = linalg::mat_mul(&linalg::from_rational(&self.matrix), &linalg::from_rational(&o.matrix));
        Rep5 { matrix: linalg::to_rational(&m).expect("rational") }
    }

    pub fn det(&self) -> Rat {
        linalg::det(&linalg::from_rational(&self.matrix)).to_rational().expect("rational").clone()
    }

    pub fn is_identity(&self) -> bool {
        *self == Rep5::identity()
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `ρᵀ·G·ρ = G`.
    pub fn preserves(&self, q: &QuadForm) -> bool {
        q.transform(&self.matrix) == *q
    }
}

/// The matrix of `M ↦ γ·M·γ̄ᵀ` on `F² ⊕ H⁺`; columns are images of the
/// basis `e_s, e_t, z_k`.
pub fn rho(gamma: &Mat2, sigma: &Involution) -> Result<Rep5, FormError> {
    let alg = gamma.alg();
    let plus = plus_basis(alg, sigma)?;
    if !twisted_sl_membership(sigma, gamma)? {
        return Err(FormError::Mat(MatError::NotMember));
    }
    let ct = conj_transpose(gamma);
    let plus_rows: linalg::Matrix = plus.iter().map(|p| p.coords().to_vec()).collect();
    let zero = alg.zero();
    let one = alg.one();
    let mut inputs = vec![
        Mat2 { a: one.clone(), b: zero.clone(), c: zero.clone(), d: zero.clone() },
        Mat2 { a: zero.clone(), b: zero.clone(), c: zero.clone(), d: one.clone() },
    ];
    inputs.extend(plus.iter().map(|p| Mat2 { a: zero.clone(), b: p.clone(), c: p.conj(), d: zero.clone() }));
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(5);
    for m in &inputs {
        let img = gamma.try_mul(m)?.try_mul(&ct)?;
        let pt = MHPoint::from_matrix(&img, sigma).map_err(|e| FormError::Internal(format!("image left the model: {e}")))?;
        let zc = linalg::solve_in_span(&plus_rows, pt.z.coords()).ok_or_else(|| FormError::Internal("image z outside H^+".into()))?;
        let mut col = vec![pt.s.to_rational().expect("rational").clone(), pt.t.to_rational().expect("rational").clone()];
        col.extend(zc.iter().map(|x| x.to_rational().expect("rational").clone()));
        cols.push(col);
    }
    Ok(Rep5 { matrix: (0..5).map(|i| (0..5).map(|j| cols[j][i].clone()).collect()).collect() })
}

/// `ρ(γ) = 1`, checked on the model basis without solving for coordinates.
fn acts_trivially(gamma: &Mat2, sigma: &Involution) -> Result<bool, FormError> {
    let alg = gamma.alg();
    if !twisted_sl_membership(sigma, gamma)? {
        return Err(FormError::Mat(MatError::NotMember));
    }
    let ct = conj_transpose(gamma);
    let (zero, one) = (alg.zero(), alg.one());
    let mut inputs = vec![
        Mat2 { a: one.clone(), b: zero.clone(), c: zero.clone(), d: zero.clone() },
        Mat2 { a: zero.clone(), b: zero.clone(), c: zero.clone(), d: one },
    ];
    inputs.extend(plus_basis(alg, sigma)?.iter().map(|p| Mat2 { a: zero.clone(), b: p.clone(), c: p.conj(), d: zero.clone() }));
    for m in &inputs {
        if &gamma.try_mul(m)?.try_mul(&ct)? != m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kernel elements of ρ among products of at most `max_len` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub words: usize,
    pub distinct: usize,
    /// Elements other than `±I` with `ρ = 1`.
    pub violations: Vec<Mat2>,
}

pub fn kernel_search(gens: &[Mat2], sigma: &Involution, max_len: usize) -> Result<KernelReport, FormError> {
    let alg = gens.first().ok_or_else(|| FormError::Input("no generators".into()))?.alg().clone();
    let id = Mat2::identity(&alg);
    let minus = id.neg();
    let mut seen = std::collections::HashSet::new();
    let mut layer = vec![id.clone()];
    let mut words = 1;
    seen.insert(id);
    let mut violations = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in gens {
                next.push(w.try_mul(g)?);
            }
        }
        words += next.len();
        for m in &next {
            if seen.insert(m.clone()) && m != &minus && acts_trivially(m, sigma)? {
                violations.push(m.clone());
            }
        }
        layer = next;
    }
    Ok(KernelReport { words, distinct: seen.len(), violations })
}

/// `tr` of a 2×2 quaternion matrix: sum of reduced traces of the diagonal.
fn mat_trace(m: &Mat2) -> Rat {
    (&m.a.tr() + &m.d.tr()).to_rational().expect("rational").clone()
}

/// The lattice `{M ∈ Mat(2, O) : σ̂(M) = M, tr(M) = 0}` as matrices.
pub fn trace_zero_fixed_lattice(o: &Order, sigma: &Involution) -> Result<Vec<Mat2>, FormError> {
    let basis = mat2_order(o).basis();
    // rows: (σ̂(B) − B coordinates, tr(B)), cleared to integers
    let rows: Vec<Vec<Rat>> = basis
        .iter()
        .map(|b| {
            let mut r = hat_sigma(sigma, b)?.try_sub(b)?.rational_coords16().expect("rational");
            r.push(mat_trace(b));
            Ok(r)
        })
        .collect::<Result<_, FormError>>()?;
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect()).collect();
    integer_kernel(&ints, 17)
        .into_iter()
        .map(|c| {
            let mut m = Mat2::zero(o.alg());
            for (k, b) in c.iter().zip(&basis) {
                if !k.is_zero() {
                    m = m.try_add(&b.scale(&FieldScalar::rational(Rat::from_integer(k.clone()))))?;
                }
            }
            Ok(m)
        })
        .collect()
}

/// `M ↦ tr(M²)/4` on the rank-5 lattice of σ̂-fixed trace-zero matrices
/// over `O`, in its kernel (Hermite) basis.
pub fn order_trace_form(o: &Order, sigma: &Involution) -> Result<QuadForm, FormError> {
    if matches!(sigma, Involution::Standard) {
        return Err(FormError::Domain("trace form needs an orthogonal involution"));
    }
    let ms = trace_zero_fixed_lattice(o, sigma)?;
    if ms.len() != 5 {
        return Err(FormError::Internal(format!("fixed trace-zero lattice has rank {}", ms.len())));
    }
    let four = Rat::from_integer(BigInt::from(4));
    let gram = ms
        .iter()
        .map(|x| ms.iter().map(|y| Ok(mat_trace(&x.try_mul(y)?) / &four)).collect::<Result<Vec<_>, FormError>>())
        .collect::<Result<_, _>>()?;
    QuadForm::new(gram)
}

/// The outcome of comparing representation counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Distinguished {
        value: i64,
        counts: (u64, u64),
        /// True only when both boxes provably hold every representation.
        certified: bool,
    },
    Indistinguishable,
}

/// Representation counts `r(n)`, `|n| ≤ value_bound`, over the box
/// `|vᵢ| ≤ box_bound`.
pub fn rep_counts(q: &QuadForm, value_bound: i64, box_bound: i64) -> Result<BTreeMap<i64, u64>, FormError> {
    let g2 = q.gram2().filter(|_| q.is_integral()).ok_or_else(|| FormError::Input("form is not integral".into()))?;
    let g: Vec<Vec<i64>> = g2
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| FormError::Input("coefficient too large".into()))).collect())
        .collect::<Result<_, _>>()?;
    let n = g.len();
    let mut counts: BTreeMap<i64, u64> = (-value_bound..=value_bound).map(|v| (v, 0)).collect();
    let mut v = vec![-box_bound; n];
    if n == 0 {
        counts.insert(0, 1);
        return Ok(counts);
    }
    loop {
        // 2q(v) = vᵀ(2G)v
        let mut twice: i64 = 0;
        for i in 0..n {
            let mut row = 0i64;
            for j in 0..n {
                row += g[i][j] * v[j];
            }
            twice += v[i] * row;
        }
        let val = twice / 2;
        if val.abs() <= value_bound {
            *counts.get_mut(&val).expect("in range") += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(counts);
            }
            if v[k] < box_bound {
                v[k] += 1;
                break;
            }
            v[k] = -box_bound;
            k += 1;
        }
    }
}

/// Whether `|vᵢ| ≤ box_bound` holds for every `v` with `|q(v)| ≤ value_bound`:
/// true for definite forms when the exact short-vector search stays in the box.
fn box_is_complete(q: &QuadForm, value_bound: i64, box_bound: i64) -> bool {
    let (p, m, z) = q.signature();
    let n = q.dim();
    let form = if p == n {
        q.clone()
    } else if m == n {
        QuadForm { gram: q.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    } else {
        return false;
    };
    if z > 0 {
        return false;
    }
    let Some(vs) = shortvec::short_vectors(&form.gram, &Rat::from_integer(BigInt::from(value_bound))) else {
        return false;
    };
    let b = BigInt::from(box_bound);
    vs.iter().all(|(x, _)| x.iter().all(|c| c.abs() <= b))
}

/// Compares `r(n)` of two integral forms for `n = 0, ±1, …, ±value_bound`
/// and reports the first difference.
pub fn rep_count_compare(q1: &QuadForm, q2: &QuadForm, value_bound: i64, box_bound: i64) -> Result<Comparison, FormError> {
    if q1.dim() != q2.dim() {
        return Err(FormError::Input("forms have different dimensions".into()));
    }
    let c1 = rep_counts(q1, value_bound, box_bound)?;
    let c2 = rep_counts(q2, value_bound, box_bound)?;
    let mut order: Vec<i64> = vec![0];
    for k in 1..=value_bound {
        order.push(k);
        order.push(-k);
    }
    for n in order {
        let (a, b) = (c1[&n], c2[&n]);
        if a != b {
            let certified = box_is_complete(q1, n.abs(), box_bound) && box_is_complete(q2, n.abs(), box_bound);
            return Ok(Comparison::Distinguished { value: n, counts: (a, b), certified });
        }
    }
    Ok(Comparison::Indistinguishable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use crate::mat2grp::elementary_generators;
    use crate::quat::QuatAlgebra;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alg(a: i64, b: i64) -> Alg {
        QuatAlgebra::rational(rat(a), rat(b)).unwrap()
    }

    fn q(h: &Alg, c: [i64; 4], d: i64) -> Quaternion {
        h.rat_elem(c.map(|x| ratio(x, d)))
    }

    fn orth(h: &Alg, k: usize) -> Involution {
        Involution::orthogonal(h.basis_elem(k)).unwrap()
    }

    fn order(h: &Alg, basis: &[([i64; 4], i64)]) -> Order {
        let b: Vec<Quaternion> = basis.iter().map(|&(c, d)| q(h, c, d)).collect();
        Order::build(h, &b).unwrap()
    }

    /// `Σ c·xᵢxⱼ` from `(i, j, c)` triples.
    fn poly(n: usize, terms: &[(usize, usize, i64)]) -> QuadForm {
        let m: BTreeMap<(usize, usize), Rat> = terms.iter().map(|&(i, j, c)| ((i, j), rat(c))).collect();
        QuadForm::from_polynomial(n, &m).unwrap()
    }

    /// `5st − x² − 5y² − xz − 5yz − 3z²` in variables `(s, t, x, y, z)`.
    fn printed_q1() -> QuadForm {
        poly(5, &[(0, 1, 5), (2, 2, -1), (3, 3, -5), (2, 4, -1), (3, 4, -5), (4, 4, -3)])
    }

    /// `10st − x² − xy − 3y² − xz − yz − 3z²`.
    fn printed_q2() -> QuadForm {
        poly(5, &[(0, 1, 10), (2, 2, -1), (2, 3, -1), (3, 3, -3), (2, 4, -1), (3, 4, -1), (4, 4, -3)])
    }

    #[test]
    fn signatures() {
        assert_eq!(poly(2, &[(0, 1, 1)]).signature(), (1, 1, 0));
        assert_eq!(poly(3, &[(0, 0, 1), (1, 1, -2), (2, 2, 3)]).signature(), (2, 1, 0));
        assert_eq!(poly(3, &[(0, 1, 1), (2, 2, 0)]).signature(), (1, 1, 1));
        assert_eq!(printed_q1().signature(), (1, 4, 0));
        assert_eq!(printed_q2().signature(), (1, 4, 0));
    }

    #[test]
    fn signature_is_congruence_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..50 {
            let n = 4;
            let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let base = poly(n, &(0..n).map(|i| (i, i, d[i])).collect::<Vec<_>>());
            let expect = (d.iter().filter(|&&x| x > 0).count(), d.iter().filter(|&&x| x < 0).count(), d.iter().filter(|&&x| x == 0).count());
            let u: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
            if linalg::det(&linalg::from_rational(&u)).is_zero() {
                continue;
            }
            assert_eq!(base.transform(&u).signature(), expect);
        }
    }

    #[test]
    fn qh_examples() {
        let h = alg(-1, -7);
        let (g, sig) = qh_form(&h, &orth(&h, 3)).unwrap();
        assert_eq!(sig, (1, 4));
        assert_eq!(g.eval(&[rat(1), rat(1), rat(0), rat(0), rat(0)]), rat(1));
        // st − (x² + y² + 7z²) on (s, t, 1, i, j)
        assert_eq!(g.eval(&[rat(2), rat(3), rat(1), rat(1), rat(1)]), rat(6 - 9));
        let split = alg(1, -7);
        let (_, sig) = qh_form(&split, &orth(&split, 3)).unwrap();
        assert_eq!(sig, (2, 3));
        assert_eq!(qh_form(&h, &Involution::Standard), Err(FormError::Domain("q_H needs an orthogonal involution")));
    }

    fn random_member(rng: &mut ChaCha8Rng, gens: &[Mat2], len: usize) -> Mat2 {
        let mut g = Mat2::identity(gens[0].alg());
        for _ in 0..len {
            g = g.try_mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
        }
        g
    }

    /// Generators and their inverses for the (−1,−23) σ-order and σ = ORTHOGONAL(j).
    fn setup() -> (Alg, Involution, Vec<Mat2>) {
        let h = alg(-1, -23);
        let s = orth(&h, 2);
        let o = order(&h, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)]);
        let mut gens = elementary_generators(&o, &s).unwrap();
        let inv: Vec<Mat2> = gens.iter().map(|g| crate::mat2grp::sl_inverse(&s, g).unwrap()).collect();
        gens.extend(inv);
        (h, s, gens)
    }

    #[test]
    fn rho_examples() {
        let (h, s, _) = setup();
        assert!(rho(&Mat2::identity(&h), &s).unwrap().is_identity());
        assert!(rho(&Mat2::identity(&h).neg(), &s).unwrap().is_identity());
        let r = rho(&Mat2::antidiagonal(&h), &s).unwrap();
        // plus basis is {1, i, ij}; −z̄ negates 1 and fixes i, ij
        let v = [rat(2), rat(3), rat(5), rat(7), rat(11)];
        assert_eq!(r.apply(&v), vec![rat(3), rat(2), rat(-5), rat(7), rat(11)]);
        assert!(matches!(rho(&Mat2::upper(&h.basis_elem(2)), &s), Err(FormError::Mat(MatError::NotMember))));
    }

    #[test]
    fn rho_is_an_orthogonal_homomorphism() {
        let (h, s, gens) = setup();
        let (g, _) = qh_form(&h, &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..50 {
            let x = random_member(&mut rng, &gens, 3);
            let y = random_member(&mut rng, &gens, 3);
            let (rx, ry) = (rho(&x, &s).unwrap(), rho(&y, &s).unwrap());
            assert_eq!(rho(&x.try_mul(&y).unwrap(), &s).unwrap(), rx.mul(&ry));
            assert!(rx.preserves(&g));
            assert_eq!(rx.det(), rat(1));
            assert_eq!(acts_trivially(&x, &s).unwrap(), rx.is_identity());
            let v: Vec<Rat> = (0..5).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect();
            assert_eq!(g.eval(&rx.apply(&v)), g.eval(&v));
        }
    }

    #[test]
    fn kernel_is_plus_minus_one() {
        let (_, s, gens) = setup();
        let h = gens[0].alg().clone();
        assert!(acts_trivially(&Mat2::identity(&h).neg(), &s).unwrap());
        assert!(!acts_trivially(&Mat2::antidiagonal(&h), &s).unwrap());
        let r = kernel_search(&gens[..7], &s, 3).unwrap();
        assert_eq!(r.words, 1 + 7 + 49 + 343);
        assert!(r.violations.is_empty());
        assert!(r.distinct < r.words);
    }

    #[test]
    fn mh_points_round_trip() {
        let (h, s, _) = setup();
        let p = MHPoint::new(FieldScalar::rational(rat(2)), FieldScalar::rational(rat(5)), q(&h, [1, 2, 0, 1], 1), &s).unwrap();
        let m = p.to_matrix().unwrap();
        assert_eq!(MHPoint::from_matrix(&m, &s).unwrap(), p);
        // st − nrm(1 + 2i + ij) = 10 − (1 + 4 + 23)
        assert_eq!(p.quasi_det(), FieldScalar::rational(rat(-18)));
        assert!(MHPoint::new(FieldScalar::rational(rat(0)), FieldScalar::rational(rat(0)), h.basis_elem(2), &s).is_err());
    }

    #[test]
    fn trace_forms() {
        let h5 = alg(-1, -5);
        let o1 = order(&h5, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([0, 0, 1, 0], 1), ([1, 1, 1, 1], 2)]);
        let f1 = order_trace_form(&o1, &orth(&h5, 3)).unwrap();
        assert!(f1.is_integral());
        assert_eq!(f1.signature(), (1, 4, 0));
        let h10 = alg(-1, -10);
        let o2 = order(&h10, &[([1, 0, 0, 0], 1), ([0, 1, 0, 0], 1), ([1, 1, 1, 0], 2), ([1, 1, 0, 1], 2)]);
        let f2 = order_trace_form(&o2, &orth(&h10, 3)).unwrap();
        assert!(f2.is_integral());
        assert_eq!(f2.signature(), (1, 4, 0));
        // on the stated lattices the ternary part is the norm form of the trace-zero part
        assert_eq!(f1.det(), ratio(625, 4));
        assert_eq!(f2.det(), rat(625));
        assert_eq!(printed_q1().det(), ratio(375, 8));
        assert_eq!(printed_q2().det(), ratio(375, 2));
    }

    #[test]
    fn rep_counts_agree_with_brute_force() {
        let f = poly(3, &[(0, 0, 1), (0, 1, 1), (1, 1, 2), (2, 2, -1)]);
        let c = rep_counts(&f, 4, 3).unwrap();
        let mut brute: BTreeMap<i64, u64> = (-4..=4).map(|v| (v, 0)).collect();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for d in -3i64..=3 {
                    let v = a * a + a * b + 2 * b * b - d * d;
                    if v.abs() <= 4 {
                        *brute.get_mut(&v).unwrap() += 1;
                    }
                }
            }
        }
        assert_eq!(c, brute);
    }

    #[test]
    fn comparisons() {
        let q1 = printed_q1();
        assert_eq!(rep_count_compare(&q1, &q1, 6, 4).unwrap(), Comparison::Indistinguishable);
        let bad = poly(2, &[(0, 0, 1)]).transform(&[vec![ratio(1, 2), rat(0)], vec![rat(0), rat(1)]]);
        assert!(matches!(rep_count_compare(&bad, &bad, 3, 2), Err(FormError::Input(_))));
        match rep_count_compare(&q1, &printed_q2(), 20, 6).unwrap() {
            Comparison::Distinguished { certified, .. } => assert!(!certified),
            Comparison::Indistinguishable => panic!("printed forms should differ"),
        }
        // definite forms get a certificate
        let a = poly(2, &[(0, 0, 1), (1, 1, 1)]);
        let b = poly(2, &[(0, 0, 1), (1, 1, 2)]);
        assert_eq!(
            rep_count_compare(&a, &b, 5, 3).unwrap(),
            Comparison::Distinguished { value: 1, counts: (4, 2), certified: true }
        );
    }

    /// A unimodular change of basis keeps the counts inside a box large
    /// enough that `U` maps the small box into it.
    #[test]
    fn counts_are_equivalence_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let f = poly(3, &[(0, 0, 1), (1, 1, 2), (2, 2, 3), (0, 1, 1)]);
        for _ in 0..5 {
            let mut u: Vec<Vec<Rat>> = (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64)).collect()).collect();
            // elementary moves keep det = ±1
            for _ in 0..3 {
                let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
                if i != j {
                    let c = rat(rng.gen_range(-1..=1));
                    for row in u.iter_mut() {
                        let add = &row[j] * &c;
                        row[i] += add;
                    }
                }
            }
            let g = f.transform(&u);
            // definite: the exact search shows both boxes are complete for values ≤ 6
            assert!(box_is_complete(&f, 6, 8) && box_is_complete(&g, 6, 8));
            assert_eq!(rep_count_compare(&f, &g, 6, 8).unwrap(), Comparison::Indistinguishable);
        }
    }
}
