//! Exact enumeration of lattice vectors of bounded norm under a positive
//! definite rational Gram matrix.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Rat;

/// `q(x) = Σᵢ dᵢ·(xᵢ + Σ_{j>i} μᵢⱼ·xⱼ)²`, the completed-square form of a
/// Gram matrix.
struct SquareCompletion {
    d: Vec<Rat>,
    mu: Vec<Vec<Rat>>,
}

fn complete_squares(gram: &[Vec<Rat>]) -> Option<SquareCompletion> {
    let n = gram.len();
    let mut q: Vec<Vec<Rat>> = gram.to_vec();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let di = q[i][i].clone();
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            mu[i][j] = &q[i][j] / &di;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let delta = &q[i][j] * &q[i][k] / &di;
                q[j][k] -= delta;
            }
        }
        d.push(di);
    }
    Some(SquareCompletion { d, mu })
}

/// Largest integer `s` with `s ≤ √t`, for `t ≥ 0`.
fn floor_sqrt(t: &Rat) -> BigInt {
    t.floor().to_integer().sqrt()
}

/// Every integer vector `x` with `xᵀ·G·x ≤ bound`, paired with its value.
/// Returns `None` when `G` is not positive definite. The search is complete:
/// each coordinate range is a superset of the exact real interval, and every
/// candidate is checked exactly.
pub fn short_vectors(gram: &[Vec<Rat>], bound: &Rat) -> Option<Vec<(Vec<BigInt>, Rat)>> {
    let sc = complete_squares(gram)?;
    let n = gram.len();
    let mut out = Vec::new();
    if bound.is_negative() {
        return Some(out);
    }
    let mut x = vec![BigInt::zero(); n];
    descend(&sc, n, bound.clone(), &mut x, bound, &mut out);
    Some(out)
}

fn descend(sc: &SquareCompletion, level: usize, remaining: Rat, x: &mut Vec<BigInt>, bound: &Rat, out: &mut Vec<(Vec<BigInt>, Rat)>) {
    if level == 0 {
        out.push((x.clone(), bound - &remaining));
        return;
    }
    let i = level - 1;
    let n = x.len();
    let center: Rat = (i + 1..n).map(|j| &sc.mu[i][j] * Rat::from_integer(x[j].clone())).sum();
    let t = &remaining / &sc.d[i];
    let s = Rat::from_integer(floor_sqrt(&t) + 1);
    let lo = (-&center - &s).ceil().to_integer();
    let hi = (-&center + &s).floor().to_integer();
    let mut xi = lo;
    while xi <= hi {
        let shifted = Rat::from_integer(xi.clone()) + &center;
        let used = &sc.d[i] * &shifted * &shifted;
        if used <= remaining {
            x[i] = xi.clone();
            descend(sc, i, &remaining - &used, x, bound, out);
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    #[test]
    fn sum_of_four_squares() {
        let g: Vec<Vec<Rat>> = (0..4).map(|i| (0..4).map(|j| rat((i == j) as i64)).collect()).collect();
        let v = short_vectors(&g, &rat(1)).unwrap();
        assert_eq!(v.iter().filter(|(_, q)| *q == rat(1)).count(), 8);
        assert_eq!(v.len(), 9);
        // r_4(2) = 24
        let v = short_vectors(&g, &rat(2)).unwrap();
        assert_eq!(v.iter().filter(|(_, q)| *q == rat(2)).count(), 24);
    }

    #[test]
    fn brute_force_agreement() {
        // x² + xy + 3y² + z² − yz, positive definite
        let g = vec![
            vec![rat(1), ratio(1, 2), rat(0)],
            vec![ratio(1, 2), rat(3), ratio(-1, 2)],
            vec![rat(0), ratio(-1, 2), rat(1)],
        ];
        let bound = rat(7);
        let mut found: Vec<Vec<i64>> = short_vectors(&g, &bound)
            .unwrap()
            .into_iter()
            .map(|(x, _)| x.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        found.sort();
        let mut brute = Vec::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                for c in -10i64..=10 {
                    let q = ratio(2 * a * a + 2 * a * b + 6 * b * b + 2 * c * c - 2 * b * c, 2);
                    if q <= bound {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(found, brute);
    }

    #[test]
    fn indefinite_rejected() {
        let g = vec![vec![rat(0), ratio(1, 2)], vec![ratio(1, 2), rat(0)]];
        assert!(short_vectors(&g, &rat(1)).is_none());
    }
}
