use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use num_bigint::BigInt;
use quatsl::exactnum::{format_rat, NatIdeal};
use quatsl::io::{
    algebra_from, form_from, int_value, involution_from, lattice_report, mat2_from, order_parts, qform_report, quaternion_from, quaternion_to, AlgebraJson,
    FormJson, InvolutionJson, Mat2Json, OrderJson, QuaternionJson,
};
use quatsl::mat2grp::{algebra_closure, MatError, DEFAULT_MAX_ROUNDS};
use quatsl::orders::{Order, OrderError};
use quatsl::qform::{order_trace_form, qh_form, rep_count_compare, rho, Comparison};
use quatsl::quat::{algebra_discriminant, Involution};
use quatsl::registry::{run_examples, Fixtures, Status};

#[derive(Parser)]
#[command(name = "quatsl", version, about = "Exact checks for quaternion orders and twisted SL(2) groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered worked examples.
    Run {
        /// Regular expression matched against whole example ids.
        #[arg(long)]
        filter: Option<String>,
        /// Print records as JSON instead of one line per example.
        #[arg(long)]
        json: bool,
        /// Read fixtures from this directory instead of the built-in copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Discriminant and definiteness of a rational quaternion algebra.
    DiscAlgebra { input: PathBuf },
    /// Reduced discriminant of an order.
    DiscOrder { input: PathBuf },
    /// Type of an involution.
    Classify { input: PathBuf },
    /// Whether an order is a maximal sigma-order.
    MaxSigmaOrder { input: PathBuf },
    /// Unit group of an order in a definite algebra.
    Units { input: PathBuf },
    /// Trace ideal of the sigma-fixed part of an order.
    TraceIdeal { input: PathBuf },
    /// Unital Z-algebra generated by 2x2 matrices.
    Closure { input: PathBuf },
    /// The 5x5 matrix of rho(gamma).
    Rho { input: PathBuf },
    /// The form q_H, or the trace form of an order when a basis is given.
    Qform { input: PathBuf },
    /// Compare two integral quadratic forms.
    CompareForms { input: PathBuf },
}

fn ideal_json(i: &NatIdeal) -> Value {
    int_value(&BigInt::from(i.gen().clone()))
}

/// Exit code and JSON body.
struct Outcome(u8, Value);

fn input_error(msg: impl std::fmt::Display) -> Outcome {
    Outcome(2, json!({ "error": msg.to_string() }))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Outcome> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_error)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| {
        Outcome(2, json!({ "error": format!("malformed input: {e}"), "line": e.line(), "column": e.column() }))
    })
}

#[derive(Deserialize)]
struct InvolutionInput {
    algebra: AlgebraJson,
    involution: InvolutionJson,
}

#[derive(Deserialize)]
struct OrderInput {
    #[serde(flatten)]
    order: OrderJson,
    involution: Option<InvolutionJson>,
}

impl OrderInput {
    fn build(&self) -> Result<Order, Outcome> {
        let (h, basis) = order_parts(&self.order).map_err(input_error)?;
        Order::build(&h, &basis).map_err(input_error)
    }

    fn involution(&self, o: &Order) -> Result<Involution, Outcome> {
        let j = self.involution.as_ref().ok_or_else(|| input_error("missing field `involution`"))?;
        involution_from(o.alg(), j).map_err(input_error)
    }
}

#[derive(Deserialize)]
struct ClosureInput {
    algebra: AlgebraJson,
    generators: Vec<Mat2Json>,
    max_rounds: Option<usize>,
}

#[derive(Deserialize)]
struct RhoInput {
    algebra: AlgebraJson,
    involution: InvolutionJson,
    matrix: Mat2Json,
}

#[derive(Deserialize)]
struct QformInput {
    algebra: AlgebraJson,
    involution: InvolutionJson,
    basis: Option<Vec<QuaternionJson>>,
}

#[derive(Deserialize)]
struct CompareInput {
    forms: [FormJson; 2],
    value_bound: i64,
    box_bound: i64,
}

fn run(cmd: Command) -> Result<Outcome, Outcome> {
    match cmd {
        Command::Run { filter, json, fixtures } => {
            let fx = match fixtures {
                Some(dir) => Fixtures::from_dir(&dir).map_err(input_error)?,
                None => Fixtures::embedded(),
            };
            let records = run_examples(filter.as_deref(), &fx).map_err(input_error)?;
            let code = if records.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 };
            if json {
                return Ok(Outcome(code, serde_json::to_value(&records).map_err(input_error)?));
            }
            for r in &records {
                println!("{} {} {}", r.id, r.status, r.description);
                if r.status != Status::Pass {
                    println!("  {}", r.details);
                }
            }
            Ok(Outcome(code, Value::Null))
        }
        Command::DiscAlgebra { input } => {
            let h = algebra_from(&read_json(&input)?).map_err(input_error)?;
            let d = algebra_discriminant(&h).map_err(input_error)?;
            Ok(Outcome(
                0,
                json!({
                    "disc": ideal_json(&d.disc),
                    "definite": d.ramified_inf,
                    "ramified_primes": d.ramified_primes,
                }),
            ))
        }
        Command::DiscOrder { input } => {
            let o = read_json::<OrderInput>(&input)?.build()?;
            let d = o.discriminant().map_err(input_error)?;
            Ok(Outcome(0, json!({ "disc": ideal_json(&d) })))
        }
        Command::Classify { input } => {
            let j: InvolutionInput = read_json(&input)?;
            let h = algebra_from(&j.algebra).map_err(input_error)?;
            let s = involution_from(&h, &j.involution).map_err(input_error)?;
            let mut out = json!({ "type": s.kind().as_str() });
            if let Ok(d) = s.disc() {
                out["disc"] = json!(d.rep());
            }
            Ok(Outcome(0, out))
        }
        Command::MaxSigmaOrder { input } => {
            let j: OrderInput = read_json(&input)?;
            let o = j.build()?;
            let s = j.involution(&o)?;
            let sigma_order = o.is_sigma_order(&s).map_err(input_error)?;
            let maximal = o.is_maximal_sigma_order(&s).map_err(input_error)?;
            let disc = o.discriminant().map_err(input_error)?;
            Ok(Outcome(
                0,
                json!({
                    "sigma_order": sigma_order,
                    "maximal": maximal,
                    "disc": ideal_json(&disc),
                }),
            ))
        }
        Command::Units { input } => {
            let o = read_json::<OrderInput>(&input)?.build()?;
            match o.unit_group() {
                Ok(u) => Ok(Outcome(0, json!({ "count": u.len(), "units": u.elements.iter().map(quaternion_to).collect::<Vec<_>>() }))),
                Err(OrderError::Domain(msg)) => Err(input_error(msg)),
                Err(e) => Err(input_error(e)),
            }
        }
        Command::TraceIdeal { input } => {
            let j: OrderInput = read_json(&input)?;
            let o = j.build()?;
            let s = j.involution(&o)?;
            let t = o.plus_trace_ideal(&s).map_err(input_error)?;
            Ok(Outcome(0, json!({ "trace_ideal": ideal_json(&t) })))
        }
        Command::Closure { input } => {
            let j: ClosureInput = read_json(&input)?;
            let h = algebra_from(&j.algebra).map_err(input_error)?;
            let gens = j.generators.iter().map(|m| mat2_from(&h, m)).collect::<Result<Vec<_>, _>>().map_err(input_error)?;
            match algebra_closure(&h, &gens, j.max_rounds.unwrap_or(DEFAULT_MAX_ROUNDS)) {
                Ok(c) => {
                    let mut r = lattice_report(&c.lattice.lattice);
                    r["converged"] = json!(true);
                    r["converged_round"] = json!(c.converged_round);
                    Ok(Outcome(0, r))
                }
                Err(MatError::Unconverged { rounds, last }) => {
                    let mut r = lattice_report(&last.lattice);
                    r["converged"] = json!(false);
                    r["rounds"] = json!(rounds);
                    Ok(Outcome(1, r))
                }
                Err(e) => Err(input_error(e)),
            }
        }
        Command::Rho { input } => {
            let j: RhoInput = read_json(&input)?;
            let h = algebra_from(&j.algebra).map_err(input_error)?;
            let s = involution_from(&h, &j.involution).map_err(input_error)?;
            let m = mat2_from(&h, &j.matrix).map_err(input_error)?;
            let r = rho(&m, &s).map_err(input_error)?;
            let rows: Vec<Vec<String>> = r.matrix.iter().map(|row| row.iter().map(format_rat).collect()).collect();
            Ok(Outcome(0, json!({ "matrix": rows, "det": format_rat(&r.det()), "identity": r.is_identity() })))
        }
        Command::Qform { input } => {
            let j: QformInput = read_json(&input)?;
            let h = algebra_from(&j.algebra).map_err(input_error)?;
            let s = involution_from(&h, &j.involution).map_err(input_error)?;
            let q = match &j.basis {
                None => qh_form(&h, &s).map_err(input_error)?.0,
                Some(b) => {
                    let basis = b.iter().map(|q| quaternion_from(&h, q)).collect::<Result<Vec<_>, _>>().map_err(input_error)?;
                    let o = Order::build(&h, &basis).map_err(input_error)?;
                    order_trace_form(&o, &s).map_err(input_error)?
                }
            };
            Ok(Outcome(0, qform_report(&q)))
        }
        Command::CompareForms { input } => {
            let j: CompareInput = read_json(&input)?;
            let q1 = form_from(&j.forms[0]).map_err(input_error)?;
            let q2 = form_from(&j.forms[1]).map_err(input_error)?;
            let cmp = rep_count_compare(&q1, &q2, j.value_bound, j.box_bound).map_err(input_error)?;
            let dets = [format_rat(&q1.det()), format_rat(&q2.det())];
            let mut out = match cmp {
                Comparison::Distinguished { value, counts, certified } => json!({
                    "distinguished": true,
                    "value": value,
                    "counts": [counts.0, counts.1],
                    "certified": certified,
                }),
                Comparison::Indistinguishable => json!({ "distinguished": false }),
            };
            out["det"] = json!(dets);
            out["det_differs"] = json!(q1.det() != q2.det());
            Ok(Outcome(0, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Outcome(code, body) = run(cli.command).unwrap_or_else(|e| e);
    if !body.is_null() {
        println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    }
    ExitCode::from(code)
}
