use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{NumError, Rat};

/// A ℤ-lattice in ℚ^n stored as `(1/denom)·H` with `H` an integer matrix in
/// row Hermite normal form and `denom` minimal.
///
/// Rows are ordered by pivot column, pivots are positive and every entry
/// above a pivot lies in `[0, pivot)`. Together with the minimal
/// denominator this makes the representation unique, so `==` is lattice
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLattice {
    dim: usize,
    denom: BigInt,
    rows: Vec<Vec<BigInt>>,
}

impl ZLattice {
    pub fn zero(dim: usize) -> Self {
        ZLattice { dim, denom: BigInt::one(), rows: Vec::new() }
    }

    /// The standard lattice ℤ^n.
    pub fn standard(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        ZLattice { dim, denom: BigInt::one(), rows }
    }

    /// Canonical basis of the ℤ-span of `vectors`.
    pub fn from_rows(vectors: &[Vec<Rat>], dim: usize) -> Result<Self, NumError> {
        check_dims(vectors.iter().map(Vec::len), dim)?;
        let denom = vectors
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let rows = vectors
            .iter()
            .map(|v| v.iter().map(|q| q.numer() * (&denom / q.denom())).collect())
            .collect();
        Ok(Self::from_scaled(rows, denom, dim))
    }

    /// Canonical basis of the span of `(1/denom)·rows`.
    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>, denom: BigInt, dim: usize) -> Result<Self, NumError> {
        check_dims(rows.iter().map(Vec::len), dim)?;
        if denom.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        let (rows, denom) = if denom.is_negative() {
            (rows.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(), -denom)
        } else {
            (rows, denom)
        };
        Ok(Self::from_scaled(rows, denom, dim))
    }

    fn from_scaled(rows: Vec<Vec<BigInt>>, denom: BigInt, dim: usize) -> Self {
        let mut rows = hnf(rows, dim);
        let g = rows.iter().flatten().fold(denom.clone(), |acc, x| acc.gcd(x));
        let denom = if g.is_one() {
            denom
        } else {
            for x in rows.iter_mut().flatten() {
                *x /= &g;
            }
            denom / g
        };
        ZLattice { dim, denom, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn hnf_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Rat::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }

    fn scale_in(&self, v: &[Rat]) -> Result<Option<Vec<BigInt>>, NumError> {
        check_dims(std::iter::once(v.len()), self.dim)?;
        let mut out = Vec::with_capacity(v.len());
        for q in v {
            let s = q * Rat::from_integer(self.denom.clone());
            if !s.is_integer() {
                return Ok(None);
            }
            out.push(s.to_integer());
        }
        Ok(Some(out))
    }

    /// Integer coordinates of `v` with respect to the canonical basis, if
    /// `v` is a member.
    pub fn coordinates(&self, v: &[Rat]) -> Result<Option<Vec<BigInt>>, NumError> {
        let Some(mut w) = self.scale_in(v)? else {
            return Ok(None);
        };
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let p = pivot(row).expect("hnf rows are nonzero");
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
            coords.push(q);
        }
        Ok(w.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool, NumError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &ZLattice) -> Result<bool, NumError> {
        for v in other.basis() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lattice spanned by `self` together with extra vectors.
    pub fn extend(&self, extra: &[Vec<Rat>]) -> Result<ZLattice, NumError> {
        let mut all = self.basis();
        all.extend(extra.iter().cloned());
        ZLattice::from_rows(&all, self.dim)
    }

    pub fn sum(&self, other: &ZLattice) -> Result<ZLattice, NumError> {
        self.extend(&other.basis())
    }

    pub fn intersection(&self, other: &ZLattice) -> Result<ZLattice, NumError> {
        check_dims(std::iter::once(other.dim), self.dim)?;
        let denom = self.denom.lcm(&other.denom);
        let s1 = &denom / &self.denom;
        let s2 = &denom / &other.denom;
        let mut stacked: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.iter().map(|x| x * &s1).collect()).collect();
        stacked.extend(other.rows.iter().map(|r| r.iter().map(|x| -(x * &s2)).collect()));
        let k1 = self.rows.len();
        let common: Vec<Vec<BigInt>> = integer_kernel(&stacked, self.dim)
            .into_iter()
            .map(|c| {
                let mut v = vec![BigInt::zero(); self.dim];
                for (ci, row) in c[..k1].iter().zip(&self.rows) {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += ci * y;
                    }
                }
                v
            })
            .collect();
        ZLattice::from_integer_rows(common, self.denom.clone(), self.dim)
    }

    /// `[other : self]` for a full-rank sublattice `self ⊆ other`, as the
    /// ratio of covolumes.
    pub fn index_in(&self, other: &ZLattice) -> Option<BigInt> {
        if self.rank() != self.dim || other.rank() != self.dim {
            return None;
        }
        let covol = |l: &ZLattice| -> Rat {
            let diag: BigInt = l.rows.iter().enumerate().map(|(i, r)| r[i].clone()).product();
            Rat::new(diag, num_traits::pow(l.denom.clone(), l.dim))
        };
        let idx = covol(self) / covol(other);
        idx.is_integer().then(|| idx.to_integer())
    }
}

impl fmt::Display for ZLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{})[", self.denom)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

fn check_dims(lens: impl Iterator<Item = usize>, dim: usize) -> Result<(), NumError> {
    for found in lens {
        if found != dim {
            return Err(NumError::Dimension { expected: dim, found });
        }
    }
    Ok(())
}

fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Row Hermite normal form of the ℤ-span of `rows`, zero rows dropped.
fn hnf(rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut by_pivot: Vec<Option<Vec<BigInt>>> = vec![None; dim];
    for mut v in rows {
        let mut c = 0;
        loop {
            while c < dim && v[c].is_zero() {
                c += 1;
            }
            if c == dim {
                break;
            }
            match &mut by_pivot[c] {
                slot @ None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    *slot = Some(v);
                    break;
                }
                Some(r) => {
                    let e = r[c].extended_gcd(&v[c]);
                    let (g, x, y) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
                    let rc = &r[c] / &g;
                    let vc = &v[c] / &g;
                    // [[x, y], [-vc, rc]] has determinant 1
                    let new_r: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &x * a + &y * b).collect();
                    let new_v: Vec<BigInt> = r.iter().zip(&v).map(|(a, b)| &rc * b - &vc * a).collect();
                    *r = new_r;
                    v = new_v;
                }
            }
        }
        reduce_above(&mut by_pivot);
    }
    by_pivot.into_iter().flatten().collect()
}

fn reduce_above(by_pivot: &mut [Option<Vec<BigInt>>]) {
    let dim = by_pivot.len();
    for c in 0..dim {
        let Some(pr) = by_pivot[c].clone() else { continue };
        let p = &pr[c];
        for slot in by_pivot[..c].iter_mut().flatten() {
            let q = slot[c].div_floor(p);
            if !q.is_zero() {
                for (x, y) in slot.iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
    }
}

/// A ℤ-basis of `{c ∈ ℤ^k : Σ cᵢ·rowsᵢ = 0}` for `k = rows.len()`.
pub fn integer_kernel(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let k = rows.len();
    let augmented: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| BigInt::from((i == j) as i32)));
            v
        })
        .collect();
    hnf(augmented, dim + k)
        .into_iter()
        .filter(|r| r[..dim].iter().all(Zero::is_zero))
        .map(|r| r[dim..].to_vec())
        .collect()
}
