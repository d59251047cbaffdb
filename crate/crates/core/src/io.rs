//! JSON formats for scalars, algebras, quaternions, involutions, orders,
//! matrices and quadratic forms.
//!
//! Rationals are strings `"p"` or `"p/q"` (bare JSON integers are accepted
//! on input). Elements of ℚ(√d) are `{"re": "...", "sq": "..."}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::{format_rat, parse_rat, Base, FieldScalar, Rat, ZLattice};
use crate::mat2grp::{Lattice16, Mat2};
use crate::orders::Order;
use crate::qform::QuadForm;
use crate::quat::{Alg, AlgExt, Involution, QuatAlgebra, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct FormatError(pub String);

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Str(String),
    Quad { re: String, sq: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Name(String),
    Sqrt { sqrt: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub a: ScalarJson,
    pub b: ScalarJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
}

pub type QuaternionJson = [ScalarJson; 4];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvolutionJson {
    Name(String),
    Orthogonal { orthogonal: QuaternionJson },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderJson {
    pub algebra: AlgebraJson,
    pub basis: Vec<QuaternionJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Mat2Json {
    pub a: QuaternionJson,
    pub b: QuaternionJson,
    pub c: QuaternionJson,
    pub d: QuaternionJson,
}

pub fn rat_from(s: &ScalarJson) -> Result<Rat, FormatError> {
    match s {
        ScalarJson::Int(n) => Ok(Rat::from_integer(BigInt::from(*n))),
        ScalarJson::Str(t) => parse_rat(t).map_err(|e| bad(format!("bad rational {t:?}: {e}"))),
        ScalarJson::Quad { .. } => Err(bad("expected a rational, found a quadratic-field element")),
    }
}

pub fn scalar_from(s: &ScalarJson, base: Base) -> Result<FieldScalar, FormatError> {
    match s {
        ScalarJson::Quad { re, sq } => {
            let Base::Quad(_) = base else {
                return Err(bad("quadratic-field element in a rational context"));
            };
            let re = parse_rat(re).map_err(|e| bad(format!("bad rational {re:?}: {e}")))?;
            let sq = parse_rat(sq).map_err(|e| bad(format!("bad rational {sq:?}: {e}")))?;
            Ok(FieldScalar::new(base, re, sq).map_err(|e| bad(e.to_string()))?)
        }
        other => Ok(FieldScalar::embed(base, rat_from(other)?)),
    }
}

pub fn scalar_to(x: &FieldScalar) -> ScalarJson {
    match x.base() {
        Base::Rational => ScalarJson::Str(format_rat(x.re())),
        Base::Quad(_) => ScalarJson::Quad { re: format_rat(x.re()), sq: format_rat(x.sq()) },
    }
}

pub fn base_from(f: Option<&FieldJson>) -> Result<Base, FormatError> {
    match f {
        None => Ok(Base::Rational),
        Some(FieldJson::Name(n)) if n == "Q" => Ok(Base::Rational),
        Some(FieldJson::Name(n)) => Err(bad(format!("unknown field {n:?}, expected \"Q\" or {{\"sqrt\": d}}"))),
        Some(FieldJson::Sqrt { sqrt }) => Base::quad(*sqrt).map_err(|e| bad(e.to_string())),
    }
}

pub fn algebra_from(j: &AlgebraJson) -> Result<Alg, FormatError> {
    let base = base_from(j.field.as_ref())?;
    let a = scalar_from(&j.a, base)?;
    let b = scalar_from(&j.b, base)?;
    QuatAlgebra::new(a, b).map_err(|e| bad(e.to_string()))
}

pub fn algebra_to(h: &QuatAlgebra) -> AlgebraJson {
    let field = match h.base() {
        Base::Rational => None,
        Base::Quad(d) => Some(FieldJson::Sqrt { sqrt: d }),
    };
    AlgebraJson { a: scalar_to(h.a()), b: scalar_to(h.b()), field }
}

pub fn quaternion_from(alg: &Alg, j: &QuaternionJson) -> Result<Quaternion, FormatError> {
    let base = alg.base();
    let c = [scalar_from(&j[0], base)?, scalar_from(&j[1], base)?, scalar_from(&j[2], base)?, scalar_from(&j[3], base)?];
    alg.elem(c).map_err(|e| bad(e.to_string()))
}

pub fn quaternion_to(q: &Quaternion) -> QuaternionJson {
    let c = q.coords();
    [scalar_to(&c[0]), scalar_to(&c[1]), scalar_to(&c[2]), scalar_to(&c[3])]
}

pub fn involution_from(alg: &Alg, j: &InvolutionJson) -> Result<Involution, FormatError> {
    match j {
        InvolutionJson::Name(n) if n == "standard" => Ok(Involution::Standard),
        InvolutionJson::Name(n) => Err(bad(format!("unknown involution {n:?}, expected \"standard\" or {{\"orthogonal\": [...]}}"))),
        InvolutionJson::Orthogonal { orthogonal } => {
            Involution::orthogonal(quaternion_from(alg, orthogonal)?).map_err(|e| bad(e.to_string()))
        }
    }
}

pub fn involution_to(s: &Involution) -> InvolutionJson {
    match s {
        Involution::Standard => InvolutionJson::Name("standard".into()),
        Involution::Orthogonal(u) => InvolutionJson::Orthogonal { orthogonal: quaternion_to(u) },
    }
}

/// The algebra and basis quaternions of an order file, unvalidated.
pub fn order_parts(j: &OrderJson) -> Result<(Alg, Vec<Quaternion>), FormatError> {
    let alg = algebra_from(&j.algebra)?;
    let basis = j.basis.iter().map(|q| quaternion_from(&alg, q)).collect::<Result<_, _>>()?;
    Ok((alg, basis))
}

pub fn order_to(o: &Order) -> OrderJson {
    OrderJson { algebra: algebra_to(o.alg()), basis: o.basis().iter().map(quaternion_to).collect() }
}

pub fn mat2_from(alg: &Alg, j: &Mat2Json) -> Result<Mat2, FormatError> {
    Mat2::new(quaternion_from(alg, &j.a)?, quaternion_from(alg, &j.b)?, quaternion_from(alg, &j.c)?, quaternion_from(alg, &j.d)?)
        .map_err(|e| bad(e.to_string()))
}

pub fn mat2_to(m: &Mat2) -> Mat2Json {
    Mat2Json { a: quaternion_to(&m.a), b: quaternion_to(&m.b), c: quaternion_to(&m.c), d: quaternion_to(&m.d) }
}

pub fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `{rank, denominator, hnf_rows}` for a lattice.
pub fn lattice_report(l: &ZLattice) -> Value {
    json!({
        "rank": l.rank(),
        "denominator": l.denom().to_string(),
        "hnf_rows": l.hnf_rows().iter().map(|r| int_strings(r)).collect::<Vec<_>>(),
    })
}

pub fn closure_report(l: &Lattice16, converged_round: Option<usize>) -> Value {
    let mut v = lattice_report(&l.lattice);
    v["converged_round"] = json!(converged_round);
    v
}

/// `{"gram2", "det", "signature"}`; `gram2` entries are integers when
/// `2G` is integral and rational strings otherwise.
pub fn qform_report(q: &QuadForm) -> Value {
    let (p, n, _) = q.signature();
    let gram2 = match q.gram2() {
        Some(g) => json!(g.iter().map(|r| r.iter().map(int_value).collect::<Vec<_>>()).collect::<Vec<_>>()),
        None => {
            let two = Rat::from_integer(BigInt::from(2));
            json!(q.gram().iter().map(|r| r.iter().map(|x| format_rat(&(x * &two))).collect::<Vec<_>>()).collect::<Vec<_>>())
        }
    };
    json!({ "gram2": gram2, "det": format_rat(&q.det()), "signature": [p, n] })
}

/// JSON number when it fits in an `i64`, string otherwise.
pub fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json!(x.to_string()),
    }
}

/// A quadratic form given as `{"gram2": [[...]]}` or as a polynomial
/// `{"dim": n, "terms": [[i, j, c], ...]}` meaning `Σ c·xᵢxⱼ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormJson {
    Gram2 { gram2: Vec<Vec<ScalarJson>> },
    Poly { dim: usize, terms: Vec<(usize, usize, ScalarJson)> },
}

pub fn form_from(j: &FormJson) -> Result<QuadForm, FormatError> {
    match j {
        FormJson::Gram2 { gram2 } => {
            let two = Rat::from_integer(BigInt::from(2));
            let g = gram2.iter().map(|r| r.iter().map(|x| Ok(rat_from(x)? / &two)).collect()).collect::<Result<_, FormatError>>()?;
            QuadForm::new(g).map_err(|e| bad(e.to_string()))
        }
        FormJson::Poly { dim, terms } => {
            let mut m = std::collections::BTreeMap::new();
            for (i, j, c) in terms {
                let key = if i <= j { (*i, *j) } else { (*j, *i) };
                *m.entry(key).or_insert_with(|| Rat::from_integer(BigInt::from(0))) += rat_from(c)?;
            }
            QuadForm::from_polynomial(*dim, &m).map_err(|e| bad(e.to_string()))
        }
    }
}
