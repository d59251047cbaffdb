//! The worked-example registry: each example reads a versioned fixture,
//! runs its checks exactly, and reports a record.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactnum::{format_rat, Base, NatIdeal};
use crate::io::{
    algebra_from, base_from, form_from, involution_from, mat2_from, quaternion_from, qform_report, quaternion_to, AlgebraJson,
    FieldJson, FormJson, InvolutionJson, Mat2Json, QuaternionJson,
};
use crate::mat2grp::{
    algebra_closure, bracket, conjugate_lattice, conjugation_check, elementary_generators, hat_sigma, lie_basis, mat2_order,
    sl_inverse, twisted_sl_membership, Mat2, DEFAULT_MAX_ROUNDS,
};
use crate::orders::Order;
use crate::qform::{kernel_search, order_trace_form, qh_form, rep_count_compare, rho, Comparison};
use crate::quat::{algebra_discriminant, Alg, Involution, Quaternion};

pub const FIXTURE_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("invalid filter {pattern:?}: {reason}")]
    Filter { pattern: String, reason: String },
    #[error("cannot read fixtures from {path}: {reason}")]
    Fixtures { path: String, reason: String },
}

type Runner = fn(&str) -> Result<Check, String>;

struct Example {
    id: &'static str,
    description: &'static str,
    file: &'static str,
    run: Runner,
}

const EXAMPLES: [Example; 8] = [
    Example { id: "E1", description: "discriminants and unit groups of the (-1,-23) order pair", file: "e1_units.json", run: e1 },
    Example { id: "E2", description: "trace ideals of the (-1,-3) order pair", file: "e2_trace_ideals.json", run: e2 },
    Example { id: "E3", description: "sigma-maximality of the (-1,-6) order", file: "e3_sigma_maximal.json", run: e3 },
    Example { id: "E4", description: "conjugation witnesses in (-1,-7)", file: "e4_conjugate_orders.json", run: e4 },
    Example { id: "E5", description: "the sqrt(3) conjugation of the (-1,-23) pair", file: "e5_sqrt3_conjugation.json", run: e5 },
    Example { id: "E6", description: "trace-form inequivalence for (-1,-5)/(-1,-10)", file: "e6_trace_forms.json", run: e6 },
    Example { id: "E7", description: "Lie algebra dimensions 10 and 6", file: "e7_lie_dimensions.json", run: e7 },
    Example { id: "E8", description: "rho homomorphism, Gram preservation and kernel", file: "e8_rho.json", run: e8 },
];

/// Fixture texts by file name.
#[derive(Clone, Debug, Default)]
pub struct Fixtures {
    files: BTreeMap<String, String>,
}

impl Fixtures {
    /// The fixtures compiled into the library.
    pub fn embedded() -> Fixtures {
        let files = [
            ("e1_units.json", include_str!("../fixtures/e1_units.json")),
            ("e2_trace_ideals.json", include_str!("../fixtures/e2_trace_ideals.json")),
            ("e3_sigma_maximal.json", include_str!("../fixtures/e3_sigma_maximal.json")),
            ("e4_conjugate_orders.json", include_str!("../fixtures/e4_conjugate_orders.json")),
            ("e5_sqrt3_conjugation.json", include_str!("../fixtures/e5_sqrt3_conjugation.json")),
            ("e6_trace_forms.json", include_str!("../fixtures/e6_trace_forms.json")),
            ("e7_lie_dimensions.json", include_str!("../fixtures/e7_lie_dimensions.json")),
            ("e8_rho.json", include_str!("../fixtures/e8_rho.json")),
        ];
        Fixtures { files: files.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect() }
    }

    /// Fixtures read from a directory. Files the registry does not know are
    /// ignored; missing ones make their example fail.
    pub fn from_dir(dir: &Path) -> Result<Fixtures, RegistryError> {
        let err = |reason: String| RegistryError::Fixtures { path: dir.display().to_string(), reason };
        if !dir.is_dir() {
            return Err(err("not a directory".into()));
        }
        let mut files = BTreeMap::new();
        for ex in &EXAMPLES {
            let p = dir.join(ex.file);
            if p.exists() {
                files.insert(ex.file.to_string(), std::fs::read_to_string(&p).map_err(|e| err(e.to_string()))?);
            }
        }
        Ok(Fixtures { files })
    }

    pub fn get(&self, file: &str) -> Option<&str> {
        self.files.get(file).map(String::as_str)
    }
}

/// The registered example ids, in order.
pub fn example_ids() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.id).collect()
}

/// Runs every example whose id matches `filter` (a regular expression
/// anchored at both ends). Examples run concurrently; records come back in
/// registry order, and a failing or panicking example never stops the rest.
pub fn run_examples(filter: Option<&str>, fixtures: &Fixtures) -> Result<Vec<ExampleRecord>, RegistryError> {
    let re = match filter {
        Some(p) => Some(
            Regex::new(&format!("^(?:{p})$")).map_err(|e| RegistryError::Filter { pattern: p.to_string(), reason: e.to_string() })?,
        ),
        None => None,
    };
    let selected: Vec<&Example> = EXAMPLES.iter().filter(|e| re.as_ref().is_none_or(|r| r.is_match(e.id))).collect();
    let records = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|ex| scope.spawn(move || run_one(ex, fixtures.get(ex.file)))).collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, ex)| {
                h.join().unwrap_or_else(|p| {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "unknown panic".into());
                    record(ex, Status::Fail, json!({ "panic": msg }))
                })
            })
            .collect()
    });
    Ok(records)
}

fn record(ex: &Example, status: Status, details: Value) -> ExampleRecord {
    ExampleRecord { id: ex.id.to_string(), description: ex.description.to_string(), status, details }
}

fn run_one(ex: &Example, text: Option<&str>) -> ExampleRecord {
    let Some(text) = text else {
        return record(ex, Status::Fail, json!({ "error": format!("missing fixture {}", ex.file) }));
    };
    match check_version(text).and_then(|_| (ex.run)(text)) {
        Ok(c) => c.finish(ex),
        Err(e) => record(ex, Status::Fail, json!({ "error": e })),
    }
}

fn check_version(text: &str) -> Result<(), String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("bad fixture: {e}"))?;
    match v.get("version").and_then(Value::as_u64) {
        Some(FIXTURE_VERSION) => Ok(()),
        other => Err(format!("unsupported fixture version {other:?}, expected {FIXTURE_VERSION}")),
    }
}

/// Collected summary values and failed assertions.
#[derive(Default)]
struct Check {
    summary: Map<String, Value>,
    failures: Vec<Value>,
}

impl Check {
    fn eq<T: Serialize + PartialEq>(&mut self, name: &str, expected: T, actual: T) {
        if expected != actual {
            self.failures.push(json!({ "check": name, "expected": expected, "actual": actual }));
        }
    }

    fn ok(&mut self, name: &str, cond: bool) {
        self.eq(name, true, cond);
    }

    fn note(&mut self, key: &str, v: impl Serialize) {
        self.summary.insert(key.to_string(), json!(v));
    }

    fn finish(self, ex: &Example) -> ExampleRecord {
        let mut details = Value::Object(self.summary);
        if self.failures.is_empty() {
            record(ex, Status::Pass, details)
        } else {
            details["failures"] = Value::Array(self.failures);
            record(ex, Status::Fail, details)
        }
    }
}

trait Ctx<T> {
    fn s(self) -> Result<T, String>;
}

impl<T, E: Display> Ctx<T> for Result<T, E> {
    fn s(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("bad fixture: {e}"))
}

fn ideal_u64(i: &NatIdeal) -> Result<u64, String> {
    i.to_u64().ok_or_else(|| format!("ideal {i} out of range"))
}

fn order_from(h: &Alg, basis: &[QuaternionJson]) -> Result<Order, String> {
    let b = basis.iter().map(|q| quaternion_from(h, q)).collect::<Result<Vec<_>, _>>().s()?;
    Order::build(h, &b).s()
}

fn algebra_disc(h: &Alg) -> Result<u64, String> {
    ideal_u64(&algebra_discriminant(h).s()?.disc)
}

/// `h ⊗ ℚ(√d)` and `γ` over it.
fn gamma_from(h: &Alg, field: &FieldJson, m: &Mat2Json) -> Result<Mat2, String> {
    let base = base_from(Some(field)).s()?;
    if base == Base::Rational {
        return Err("gamma_field must be a quadratic field".into());
    }
    mat2_from(&h.extend(base).s()?, m).s()
}

#[derive(Deserialize)]
struct PairFixture<E> {
    algebra: AlgebraJson,
    involution: InvolutionJson,
    orders: BTreeMap<String, Vec<QuaternionJson>>,
    expect: E,
}

impl<E> PairFixture<E> {
    fn setup(&self) -> Result<(Alg, Involution), String> {
        let h = algebra_from(&self.algebra).s()?;
        let s = involution_from(&h, &self.involution).s()?;
        Ok((h, s))
    }

    fn order(&self, h: &Alg, name: &str) -> Result<Order, String> {
        order_from(h, self.orders.get(name).ok_or_else(|| format!("fixture has no order {name}"))?)
    }
}

#[derive(Deserialize)]
struct E1Expect {
    disc: u64,
    units: BTreeMap<String, Vec<QuaternionJson>>,
}

fn e1(text: &str) -> Result<Check, String> {
    let f: PairFixture<E1Expect> = parse(text)?;
    let (h, s) = f.setup()?;
    let mut c = Check::default();
    c.note("disc", algebra_disc(&h)?);
    c.eq("algebra disc", f.expect.disc, algebra_disc(&h)?);
    for name in ["O1", "O2"] {
        let o = f.order(&h, name)?;
        c.eq(&format!("disc {name}"), f.expect.disc, ideal_u64(&o.discriminant().s()?)?);
        c.ok(&format!("{name} sigma-maximal"), o.is_maximal_sigma_order(&s).s()?);
        let units = o.unit_group().s()?;
        c.note(&format!("units_{name}"), units.len());
        let expected = f.expect.units.get(name).ok_or_else(|| format!("fixture has no units for {name}"))?;
        let expected: Vec<Quaternion> = expected.iter().map(|q| quaternion_from(&h, q)).collect::<Result<_, _>>().s()?;
        c.eq(&format!("|{name}^x|"), expected.len(), units.len());
        for u in &expected {
            if !units.contains(u) {
                c.failures.push(json!({ "check": format!("unit of {name}"), "missing": quaternion_to(u) }));
            }
        }
        c.ok(&format!("{name}^x is a group"), units.is_group());
    }
    Ok(c)
}

#[derive(Deserialize)]
struct E2Expect {
    disc: u64,
    trace_ideal: BTreeMap<String, u64>,
}

fn e2(text: &str) -> Result<Check, String> {
    let f: PairFixture<E2Expect> = parse(text)?;
    let (h, s) = f.setup()?;
    let mut c = Check::default();
    c.note("disc", algebra_disc(&h)?);
    c.eq("algebra disc", f.expect.disc, algebra_disc(&h)?);
    for (name, want) in &f.expect.trace_ideal {
        let o = f.order(&h, name)?;
        c.ok(&format!("{name} is a sigma-order"), o.is_sigma_order(&s).s()?);
        let t = ideal_u64(&o.plus_trace_ideal(&s).s()?)?;
        c.note(&format!("trace_ideal_{name}"), t);
        c.eq(&format!("tr({name}+)"), *want, t);
    }
    Ok(c)
}

#[derive(Deserialize)]
struct E3Expect {
    algebra_disc: u64,
    involution_disc: i64,
    order_disc: u64,
    maximal_order: bool,
    sigma_maximal: bool,
}

fn e3(text: &str) -> Result<Check, String> {
    let f: PairFixture<E3Expect> = parse(text)?;
    let (h, s) = f.setup()?;
    let o = f.order(&h, "O")?;
    let e = &f.expect;
    let mut c = Check::default();
    let hd = algebra_disc(&h)?;
    let sd = s.disc().s()?.rep();
    let od = ideal_u64(&o.discriminant().s()?)?;
    let sm = o.is_maximal_sigma_order(&s).s()?;
    c.note("algebra_disc", hd);
    c.note("involution_disc", sd);
    c.note("order_disc", od);
    c.note("sigma_maximal", sm);
    c.eq("algebra disc", e.algebra_disc, hd);
    c.eq("involution disc", e.involution_disc, sd);
    c.eq("order disc", e.order_disc, od);
    c.eq("maximal as an order", e.maximal_order, od == hd);
    c.eq("sigma-maximal", e.sigma_maximal, sm);
    Ok(c)
}

#[derive(Deserialize)]
struct E4Fixture {
    #[serde(flatten)]
    pair: PairFixture<E4Expect>,
    conjugator: QuaternionJson,
    gamma_field: FieldJson,
    gamma: Mat2Json,
}

#[derive(Deserialize)]
struct E4Expect {
    disc: u64,
    trace_ideal: BTreeMap<String, u64>,
    sigma_maximal: bool,
}

fn e4(text: &str) -> Result<Check, String> {
    let f: E4Fixture = parse(text)?;
    let (h, s) = f.pair.setup()?;
    let (o1, o2) = (f.pair.order(&h, "O1")?, f.pair.order(&h, "O2")?);
    let mut c = Check::default();
    c.note("disc", algebra_disc(&h)?);
    c.eq("algebra disc", f.pair.expect.disc, algebra_disc(&h)?);
    for (name, o) in [("O1", &o1), ("O2", &o2)] {
        c.eq(&format!("{name} sigma-maximal"), f.pair.expect.sigma_maximal, o.is_maximal_sigma_order(&s).s()?);
        let want = f.pair.expect.trace_ideal.get(name).ok_or_else(|| format!("fixture has no trace ideal for {name}"))?;
        c.eq(&format!("tr({name}+)"), *want, ideal_u64(&o.plus_trace_ideal(&s).s()?)?);
    }
    let v = quaternion_from(&h, &f.conjugator).s()?;
    c.ok("v O1 v^-1 = O2", o1.conjugate(&v).s()? == o2);
    let g = gamma_from(&h, &f.gamma_field, &f.gamma)?;
    let se = s.lift(g.alg()).s()?;
    let twist = g.try_mul(&hat_sigma(&se, &g).s()?).s()?;
    let similitude = if twist.is_identity() {
        "member"
    } else if twist == Mat2::identity(g.alg()).neg() {
        "minus identity"
    } else {
        "other"
    };
    c.note("gamma_twist", similitude);
    c.ok("gamma sigma-hat(gamma) = +-I", similitude != "other");
    let (m1, m2) = (mat2_order(&o1), mat2_order(&o2));
    c.ok("gamma Mat(2,O1) gamma^-1 in Mat(2,O2)", conjugation_check(&g, &m1.basis(), &m2, &s).s()?);
    let image = conjugate_lattice(&g, &m1, &s).s()?;
    c.ok("gamma Mat(2,O1) gamma^-1 = Mat(2,O2)", image.same_lattice(&m2));
    Ok(c)
}

#[derive(Deserialize)]
struct E5Fixture {
    #[serde(flatten)]
    pair: PairFixture<E5Expect>,
    gamma_field: FieldJson,
    gamma: Mat2Json,
    generators: Vec<Mat2Json>,
}

#[derive(Deserialize)]
struct E5Expect {
    closure_rank: usize,
}

fn e5(text: &str) -> Result<Check, String> {
    let f: E5Fixture = parse(text)?;
    let (h, s) = f.pair.setup()?;
    let (o1, o2) = (f.pair.order(&h, "O1")?, f.pair.order(&h, "O2")?);
    let (m1, m2) = (mat2_order(&o1), mat2_order(&o2));
    let g = gamma_from(&h, &f.gamma_field, &f.gamma)?;
    let gens: Vec<Mat2> = f.generators.iter().map(|m| mat2_from(&h, m)).collect::<Result<_, _>>().s()?;
    let mut c = Check::default();
    c.ok("gamma in SL^sigma", twisted_sl_membership(&s.lift(g.alg()).s()?, &g).s()?);
    let closure = algebra_closure(&h, &gens, DEFAULT_MAX_ROUNDS).s()?;
    c.note("closure_rank", closure.lattice.rank());
    c.note("converged_round", closure.converged_round);
    c.eq("closure rank", f.pair.expect.closure_rank, closure.lattice.rank());
    c.ok("closure = Mat(2,O1)", closure.lattice.same_lattice(&m1));
    c.ok("generators conjugate into Mat(2,O2)", conjugation_check(&g, &gens, &m2, &s).s()?);
    c.ok("gamma Mat(2,O1) gamma^-1 = Mat(2,O2)", conjugate_lattice(&g, &m1, &s).s()?.same_lattice(&m2));
    Ok(c)
}

#[derive(Deserialize)]
struct E6Case {
    algebra: AlgebraJson,
    basis: Vec<QuaternionJson>,
}

#[derive(Deserialize)]
struct E6Fixture {
    cases: Vec<E6Case>,
    involution: InvolutionJson,
    printed: Vec<FormJson>,
    value_bound: i64,
    box_bound: i64,
    expect: E6Expect,
}

#[derive(Deserialize)]
struct E6Expect {
    algebra_disc: u64,
    order_disc: u64,
    signature: (usize, usize),
}

fn comparison_json(cmp: &Comparison) -> Value {
    match cmp {
        Comparison::Distinguished { value, counts, certified } => {
            json!({ "distinguished": true, "value": value, "counts": [counts.0, counts.1], "certified": certified })
        }
        Comparison::Indistinguishable => json!({ "distinguished": false }),
    }
}

fn e6(text: &str) -> Result<Check, String> {
    let f: E6Fixture = parse(text)?;
    if f.cases.len() != 2 || f.printed.len() != 2 {
        return Err("expected two cases and two printed forms".into());
    }
    let mut c = Check::default();
    let mut computed = Vec::new();
    for (k, case) in f.cases.iter().enumerate() {
        let h = algebra_from(&case.algebra).s()?;
        let s = involution_from(&h, &f.involution).s()?;
        let o = order_from(&h, &case.basis)?;
        c.eq(&format!("algebra disc {k}"), f.expect.algebra_disc, algebra_disc(&h)?);
        c.eq(&format!("order disc {k}"), f.expect.order_disc, ideal_u64(&o.discriminant().s()?)?);
        let q = order_trace_form(&o, &s).s()?;
        let (p, n, _) = q.signature();
        c.eq(&format!("signature {k}"), f.expect.signature, (p, n));
        c.ok(&format!("integral {k}"), q.is_integral());
        computed.push(q);
    }
    let printed = f.printed.iter().map(form_from).collect::<Result<Vec<_>, _>>().s()?;
    c.note("computed", computed.iter().map(qform_report).collect::<Vec<_>>());
    c.note("printed_det", printed.iter().map(|q| format_rat(&q.det())).collect::<Vec<_>>());
    for k in 0..2 {
        c.eq(&format!("det of trace form {k} = det of printed form {k}"), format_rat(&printed[k].det()), format_rat(&computed[k].det()));
    }
    // distinct determinants certify inequivalence
    c.ok("computed forms have distinct determinants", computed[0].det() != computed[1].det());
    c.ok("printed forms have distinct determinants", printed[0].det() != printed[1].det());
    let printed_cmp = rep_count_compare(&printed[0], &printed[1], f.value_bound, f.box_bound).s()?;
    let computed_cmp = rep_count_compare(&computed[0], &computed[1], f.value_bound, f.box_bound).s()?;
    c.note("printed_counts", comparison_json(&printed_cmp));
    c.note("computed_counts", comparison_json(&computed_cmp));
    c.ok("printed forms distinguished by counts", printed_cmp != Comparison::Indistinguishable);
    c.ok("computed forms distinguished by counts", computed_cmp != Comparison::Indistinguishable);
    Ok(c)
}

#[derive(Deserialize)]
struct E7Fixture {
    algebras: Vec<AlgebraJson>,
    involutions: Vec<InvolutionJson>,
    expect: E7Expect,
}

#[derive(Deserialize)]
struct E7Expect {
    orthogonal: usize,
    standard: usize,
}

fn e7(text: &str) -> Result<Check, String> {
    let f: E7Fixture = parse(text)?;
    let mut c = Check::default();
    let mut cases = 0;
    for aj in &f.algebras {
        let h = algebra_from(aj).s()?;
        for ij in &f.involutions {
            let s = involution_from(&h, ij).s()?;
            cases += 1;
            let tag = format!("{}/{}", h, s.kind().as_str());
            let basis = lie_basis(&s, &h).s()?;
            let want = match s {
                Involution::Standard => f.expect.standard,
                Involution::Orthogonal(_) => f.expect.orthogonal,
            };
            c.eq(&format!("dim {tag}"), want, basis.len());
            for x in &basis {
                let shape = x.d == -&s.try_apply(&x.a).s()? && s.try_apply(&x.b).s()? == x.b && s.try_apply(&x.c).s()? == x.c;
                c.ok(&format!("shape {tag}"), shape);
                for y in &basis {
                    let z = bracket(x, y).s()?;
                    c.ok(&format!("bracket closure {tag}"), hat_sigma(&s, &z).s()? == z.neg());
                }
            }
        }
    }
    c.failures.dedup();
    c.note("cases", cases);
    c.note("orthogonal", f.expect.orthogonal);
    c.note("standard", f.expect.standard);
    c.ok("some cases ran", cases > 0);
    Ok(c)
}

#[derive(Deserialize)]
struct E8Fixture {
    algebra: AlgebraJson,
    involution: InvolutionJson,
    order: Vec<QuaternionJson>,
    seed: u64,
    pairs: usize,
    word_length: usize,
}

fn e8(text: &str) -> Result<Check, String> {
    let f: E8Fixture = parse(text)?;
    let h = algebra_from(&f.algebra).s()?;
    let s = involution_from(&h, &f.involution).s()?;
    let o = order_from(&h, &f.order)?;
    let base = elementary_generators(&o, &s).s()?;
    let mut gens = base.clone();
    for g in &base {
        gens.push(sl_inverse(&s, g).s()?);
    }
    let (q, _) = qh_form(&h, &s).s()?;
    let mut c = Check::default();
    let id = Mat2::identity(&h);
    c.ok("rho(I) = 1", rho(&id, &s).s()?.is_identity());
    c.ok("rho(-I) = 1", rho(&id.neg(), &s).s()?.is_identity());
    let mut rng = ChaCha8Rng::seed_from_u64(f.seed);
    let word = |rng: &mut ChaCha8Rng| -> Result<Mat2, String> {
        let mut m = id.clone();
        for _ in 0..rng.gen_range(1..=4) {
            m = m.try_mul(&gens[rng.gen_range(0..gens.len())]).s()?;
        }
        Ok(m)
    };
    let (mut hom, mut gram, mut det) = (0, 0, 0);
    for _ in 0..f.pairs {
        let (x, y) = (word(&mut rng)?, word(&mut rng)?);
        let (rx, ry) = (rho(&x, &s).s()?, rho(&y, &s).s()?);
        hom += (rho(&x.try_mul(&y).s()?, &s).s()? == rx.mul(&ry)) as usize;
        gram += rx.preserves(&q) as usize;
        det += (rx.det() == crate::exactnum::rat(1)) as usize;
    }
    c.eq("homomorphism", f.pairs, hom);
    c.eq("gram preserved", f.pairs, gram);
    c.eq("det rho = 1", f.pairs, det);
    let k = kernel_search(&base, &s, f.word_length).s()?;
    c.note("pairs", f.pairs);
    c.note("words", k.words);
    c.note("distinct", k.distinct);
    c.note("violations", k.violations.len());
    c.eq("kernel beyond +-I", 0, k.violations.len());
    Ok(c)
}
