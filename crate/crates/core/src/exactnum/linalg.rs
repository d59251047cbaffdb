//! Dense exact linear algebra over a single [`Base`].

use super::{Base, FieldScalar, Rat};

pub type Matrix = Vec<Vec<FieldScalar>>;

pub fn from_rational(m: &[Vec<Rat>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|q| FieldScalar::rational(q.clone())).collect()).collect()
}

pub fn to_rational(m: &Matrix) -> Option<Vec<Vec<Rat>>> {
    m.iter().map(|r| r.iter().map(|x| x.to_rational().cloned()).collect()).collect()
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : A·x = 0}` with `A` given by rows of length `cols`, in
/// reduced form: each vector has a 1 at its free column and 0 at the others.
pub fn kernel(a: &Matrix, cols: usize, base: Base) -> Matrix {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldScalar::zero_in(base); cols];
            v[f] = FieldScalar::one_in(base);
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `Σ cᵢ·rowsᵢ = v`, if `v` lies in the row span.
pub fn solve_in_span(rows: &Matrix, v: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let n = rows.len();
    let dim = v.len();
    let base = v.first()?.base();
    // Columns of the system are the given rows; solve A·c = v with A = rowsᵀ.
    let system: Matrix = (0..dim)
        .map(|j| {
            let mut row: Vec<FieldScalar> = rows.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&system);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut c = vec![FieldScalar::zero_in(base); n];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[n].clone();
    }
    Some(c)
}

pub fn det(m: &Matrix) -> FieldScalar {
    let n = m.len();
    let base = m.first().and_then(|r| r.first()).map_or(Base::Rational, FieldScalar::base);
    let mut m = m.clone();
    let mut d = FieldScalar::one_in(base);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldScalar::zero_in(base);
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                let pr = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    d
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = &row[0] * &b[0][j];
                    for k in 1..inner {
                        acc = &acc + &(&row[k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity(n: usize, base: Base) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { FieldScalar::one_in(base) } else { FieldScalar::zero_in(base) })
                .collect()
        })
        .collect()
}
