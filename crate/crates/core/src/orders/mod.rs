//! ℤ-orders in rational quaternion algebras.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactnum::{integer_kernel, linalg, shortvec, NatIdeal, NumError, Rat, ZLattice};
use crate::quat::{algebra_discriminant, Alg, AlgExt, Involution, QuatError, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("not an order: {0}")]
    NotAnOrder(Box<NotAnOrder>),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error("undefined: {0}")]
    Domain(&'static str),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<NumError> for OrderError {
    fn from(e: NumError) -> Self {
        OrderError::Quat(QuatError::Num(e))
    }
}

/// Why a lattice fails to be an order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum NotAnOrder {
    NotRational,
    WrongAlgebra,
    Rank(usize),
    MissingOne,
    NotClosed { left: Quaternion, right: Quaternion, product: Quaternion },
}

impl fmt::Display for NotAnOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAnOrder::NotRational => write!(f, "orders are only supported over Q"),
            NotAnOrder::WrongAlgebra => write!(f, "basis element outside the algebra"),
            NotAnOrder::Rank(r) => write!(f, "lattice has rank {r}, expected 4"),
            NotAnOrder::MissingOne => write!(f, "1 is not in the lattice"),
            NotAnOrder::NotClosed { left, right, product } => {
                write!(f, "({left})*({right}) = {product} is not in the lattice")
            }
        }
    }
}

fn not_an_order(r: NotAnOrder) -> OrderError {
    OrderError::NotAnOrder(Box::new(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    alg: Alg,
    lattice: ZLattice,
}

fn coords(q: &Quaternion) -> Vec<Rat> {
    q.rational_coords().expect("rational algebra").to_vec()
}

fn elem(alg: &Alg, v: &[Rat]) -> Quaternion {
    alg.rat_elem([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

impl Order {
    /// Checks rank, unit and closure of all pairwise products of `basis`.
    pub fn build(alg: &Alg, basis: &[Quaternion]) -> Result<Order, OrderError> {
        if !alg.is_rational() {
            return Err(not_an_order(NotAnOrder::NotRational));
        }
        if basis.iter().any(|e| !alg.same(e.alg())) {
            return Err(not_an_order(NotAnOrder::WrongAlgebra));
        }
        let rows: Vec<Vec<Rat>> = basis.iter().map(coords).collect();
        let lattice = ZLattice::from_rows(&rows, 4)?;
        if lattice.rank() != 4 {
            return Err(not_an_order(NotAnOrder::Rank(lattice.rank())));
        }
        if !lattice.contains(&coords(&alg.one()))? {
            return Err(not_an_order(NotAnOrder::MissingOne));
        }
        for x in basis {
            for y in basis {
                let p = x * y;
                if !lattice.contains(&coords(&p))? {
                    return Err(not_an_order(NotAnOrder::NotClosed { left: x.clone(), right: y.clone(), product: p }));
                }
            }
        }
        Ok(Order { alg: alg.clone(), lattice })
    }

    pub fn from_lattice(alg: &Alg, lattice: &ZLattice) -> Result<Order, OrderError> {
        let basis: Vec<Quaternion> = lattice.basis().iter().map(|v| elem(alg, v)).collect();
        Order::build(alg, &basis)
    }

    pub fn alg(&self) -> &Alg {
        &self.alg
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lattice
    }

    /// The canonical (Hermite normal form) basis.
    pub fn basis(&self) -> Vec<Quaternion> {
        self.lattice.basis().iter().map(|v| elem(&self.alg, v)).collect()
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        self.alg.same(q.alg())
            && q.rational_coords().is_some_and(|c| self.lattice.contains(&c).unwrap_or(false))
    }

    pub fn is_sigma_order(&self, sigma: &Involution) -> Result<bool, OrderError> {
        for e in self.basis() {
            if !self.contains(&sigma.try_apply(&e)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `σ(O)`, again an order since σ is an anti-automorphism.
    pub fn apply_involution(&self, sigma: &Involution) -> Result<Order, OrderError> {
        let image: Vec<Quaternion> = self.basis().iter().map(|e| sigma.try_apply(e)).collect::<Result<_, _>>()?;
        Order::build(&self.alg, &image)
    }

    pub fn intersect(&self, other: &Order) -> Result<Order, OrderError> {
        if !self.alg.same(&other.alg) {
            return Err(QuatError::AlgebraMismatch.into());
        }
        Order::from_lattice(&self.alg, &self.lattice.intersection(&other.lattice)?)
    }

    /// `tr(eᵢ·ēⱼ)` for the canonical basis.
    pub fn trace_gram(&self) -> Vec<Vec<Rat>> {
        let b = self.basis();
        b.iter()
            .map(|x| b.iter().map(|y| (x * &y.conj()).tr().to_rational().expect("rational algebra").clone()).collect())
            .collect()
    }

    /// The reduced discriminant: `√|det(tr(eᵢ·ēⱼ))|`.
    pub fn discriminant(&self) -> Result<NatIdeal, OrderError> {
        let g = linalg::from_rational(&self.trace_gram());
        let d = linalg::det(&g).to_rational().expect("rational algebra").clone().abs();
        if !d.is_integer() {
            return Err(OrderError::Internal(format!("trace determinant {d} is not integral")));
        }
        let n = d.to_integer();
        let r = n.sqrt();
        if &r * &r != n {
            return Err(OrderError::Internal(format!("trace determinant {n} is not a square")));
        }
        Ok(NatIdeal::from_int(&r))
    }

    /// σ-stable with discriminant `disc(H) ∩ ι(disc σ)`, `ι` taking the
    /// absolute value of the squarefree representative.
    pub fn is_maximal_sigma_order(&self, sigma: &Involution) -> Result<bool, OrderError> {
        if matches!(sigma, Involution::Standard) {
            return Err(OrderError::Domain("maximality test needs an orthogonal involution"));
        }
        if !self.is_sigma_order(sigma)? {
            return Ok(false);
        }
        let target = algebra_discriminant(&self.alg)?.disc.intersect(&sigma.disc()?.to_ideal());
        Ok(self.discriminant()? == target)
    }

    /// Every element of norm 1. Finite exactly when the algebra is definite.
    pub fn unit_group(&self) -> Result<UnitSet, OrderError> {
        if !self.alg.is_definite()? {
            return Err(OrderError::Domain("infinite unit group"));
        }
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let gram: Vec<Vec<Rat>> = self.trace_gram().into_iter().map(|r| r.into_iter().map(|x| x * &half).collect()).collect();
        let basis = self.basis();
        let vectors = shortvec::short_vectors(&gram, &Rat::one())
            .ok_or_else(|| OrderError::Internal("norm form of a definite algebra is not positive definite".into()))?;
        let mut elements: Vec<Quaternion> = vectors
            .into_iter()
            .filter(|(_, v)| v.is_one())
            .map(|(x, _)| {
                let mut q = self.alg.zero();
                for (c, e) in x.iter().zip(&basis) {
                    q = &q + &e.scale_rat(&Rat::from_integer(c.clone()));
                }
                q
            })
            .collect();
        elements.sort_by_key(|q| q.rational_coords().expect("rational algebra"));
        Ok(UnitSet { elements })
    }

    /// `v·O·v⁻¹`.
    pub fn conjugate(&self, v: &Quaternion) -> Result<Order, OrderError> {
        let inv = v.inverse().map_err(|_| OrderError::Domain("conjugating element is not invertible"))?;
        let image: Vec<Quaternion> = self
            .basis()
            .iter()
            .map(|e| v.try_mul(e)?.try_mul(&inv))
            .collect::<Result<_, QuatError>>()?;
        Order::build(&self.alg, &image)
    }

    /// `O ∩ H^{±}` for `sign = ±1`, as quaternions.
    pub fn eigen_sublattice(&self, sigma: &Involution, sign: i64) -> Result<Vec<Quaternion>, OrderError> {
        let basis = self.basis();
        let s = Rat::from_integer(BigInt::from(sign));
        let images: Vec<Vec<Rat>> = basis
            .iter()
            .map(|e| Ok(coords(&sigma.try_apply(e)?.try_sub(&e.scale_rat(&s))?)))
            .collect::<Result<_, QuatError>>()?;
        let den = images.iter().flatten().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let ints: Vec<Vec<BigInt>> = images
            .iter()
            .map(|r| r.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        Ok(integer_kernel(&ints, 4)
            .into_iter()
            .map(|c| {
                c.iter()
                    .zip(&basis)
                    .fold(self.alg.zero(), |acc, (k, e)| &acc + &e.scale_rat(&Rat::from_integer(k.clone())))
            })
            .collect())
    }

    /// The ideal generated by traces of `O ∩ H⁺`.
    pub fn plus_trace_ideal(&self, sigma: &Involution) -> Result<NatIdeal, OrderError> {
        let traces: Vec<BigInt> = self
            .eigen_sublattice(sigma, 1)?
            .iter()
            .map(|q| {
                let t = q.tr().to_rational().expect("rational algebra").clone();
                if t.is_integer() {
                    Ok(t.to_integer())
                } else {
                    Err(OrderError::Internal(format!("non-integral trace {t} in an order")))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(NatIdeal::generated_by(&traces))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis().iter().map(|q| q.to_string()).collect();
        write!(f, "<{}> in {}", b.join(", "), self.alg)
    }
}

pub fn build_order(alg: &Alg, basis: &[Quaternion]) -> Result<Order, OrderError> {
    Order::build(alg, basis)
}

/// A finite unit group, sorted by coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSet {
    pub elements: Vec<Quaternion>,
}

impl UnitSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        self.elements.contains(q)
    }

    /// Closure under products and inverses, and `±1` present.
    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        let one = first.alg().one();
        if !self.contains(&one) || !self.contains(&-&one) {
            return false;
        }
        self.elements.iter().all(|x| {
            x.inverse().is_ok_and(|i| self.contains(&i)) && self.elements.iter().all(|y| self.contains(&(x * y)))
        })
    }
}
