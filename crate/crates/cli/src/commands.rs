use clap::{ArgGroup, Args, Subcommand};
use nschur::grassmannian::{exchange_relations, k_subsets, minors, PluckerVector};
use nschur::kp::example::ExampleTau;
use nschur::kp::numeric;
use nschur::kp::{hirota_residual, kp_residual, u_from_tau};
use nschur::psido::{lax_residual, nth_root, LAX_SIGN};
use nschur::sequences::{enumerate_by_weight, enumerate_skn, subset_label};
use nschur::verify::{self, RunConfig, Suite};
use nschur::{nschur as eval_nschur, parse_polynomial, parse_rational_function, schur_polynomial, Partition};
use serde_json::{json, Value};

use crate::{input, CliError, Outcome, RunArgs, SCHEMA_VERSION};

fn outcome(kind: &str, mut json: Value, text: String, passed: bool) -> Outcome {
    if let Value::Object(m) = &mut json {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(kind));
    }
    Outcome { json, text, passed }
}

#[derive(Args, Debug)]
pub struct NschurArgs {
    #[arg(long)]
    n: u32,
    /// Comma-separated nontrivial prefix, e.g. "-2,1"; empty for the vacuum.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    sequence: String,
    /// `formal`, `exponential`, `exponential-minus`, or an HModel JSON file.
    #[arg(long, default_value = "formal")]
    model: String,
    /// Block count m used for the finite determinant.
    #[arg(long)]
    m_override: Option<usize>,
}

pub fn nschur(a: &NschurArgs, _run: &RunArgs) -> Result<Outcome, CliError> {
    if a.n == 0 {
        return Err(CliError::Config("--n must be positive".into()));
    }
    let s = input::sequence(&a.sequence)?;
    let model = input::model(&a.model, a.n, s.weight().max(0) as u32)?;
    let f = eval_nschur(&s, &model, a.m_override)?;
    let json = json!({
        "N": a.n,
        "sequence": s.prefix(),
        "weight": s.weight(),
        "model": a.model,
        "value": f.to_json(),
        "string": f.to_string(),
    });
    Ok(outcome("nschur", json, f.to_string(), true))
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct EnumerateArgs {
    /// S_{k,n}: sequences whose subset label is a k-subset of 1..n.
    #[arg(long, num_args = 2, value_names = ["K", "N"], allow_hyphen_values = true)]
    grassmann: Option<Vec<i64>>,
    /// All sequences of weight at most W.
    #[arg(long, value_name = "W")]
    weight_max: Option<u32>,
}

pub fn enumerate(a: &EnumerateArgs) -> Result<Outcome, CliError> {
    let (seqs, kn) = match (&a.grassmann, a.weight_max) {
        (Some(v), _) => (enumerate_skn(v[0], v[1])?, Some((v[0], v[1]))),
        (None, Some(w)) => (enumerate_by_weight(w), None),
        (None, None) => return Err(CliError::Config("give --grassmann K N or --weight-max W".into())),
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for s in &seqs {
        let mut e = json!({ "sequence": s.prefix(), "weight": s.weight(), "partition": s.to_partition().parts() });
        let mut line = format!("[{}] weight {}", s.literal(), s.weight());
        if let Some((k, n)) = kn {
            let label = subset_label(s, k, n)?;
            line.push_str(&format!(" subset {label:?}"));
            e["subset"] = json!(label);
        }
        entries.push(e);
        text.push_str(&line);
        text.push('\n');
    }
    let json = json!({ "count": entries.len(), "entries": entries });
    Ok(outcome("enumerate", json, text, true))
}

#[derive(Subcommand, Debug)]
pub enum PlueckerCommand {
    /// The quadratic exchange relations of Gr(k,n).
    Relations {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Check a point against the exchange relations.
    Check {
        /// A k x n matrix, rows separated by ';'; its maximal minors are checked.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "coords")]
        matrix: Option<String>,
        /// Coordinates in lexicographic k-subset order.
        #[arg(long, allow_hyphen_values = true, requires_all = ["k", "n"])]
        coords: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn valid_kn(k: usize, n: usize) -> Result<(), CliError> {
    if k == 0 || k >= n {
        return Err(nschur::Error::InvalidRange { k: k as i64, n: n as i64 }.into());
    }
    Ok(())
}

pub fn pluecker(c: &PlueckerCommand) -> Result<Outcome, CliError> {
    match c {
        PlueckerCommand::Relations { k, n } => {
            valid_kn(*k, *n)?;
            let rels: Vec<String> = exchange_relations(*k, *n)?.iter().map(|r| r.to_string()).collect();
            let text = rels.join("\n");
            Ok(outcome("pluecker-relations", json!({ "k": k, "n": n, "count": rels.len(), "relations": rels }), text, true))
        }
        PlueckerCommand::Check { matrix, coords, k, n } => {
            let v: PluckerVector<nschur::Rational> = match (matrix, coords) {
                (Some(m), _) => minors(&input::matrix(m)?)?,
                (None, Some(c)) => {
                    let (k, n) = (k.unwrap_or(0), n.unwrap_or(0));
                    valid_kn(k, n)?;
                    PluckerVector::new(k, n, input::rationals(c)?)?
                }
                (None, None) => return Err(CliError::Config("give --matrix or --coords with --k and --n".into())),
            };
            let mut violated = Vec::new();
            let rels = exchange_relations(v.k(), v.n())?;
            for r in &rels {
                let value = r.eval(&v);
                if value != num_zero() {
                    violated.push(json!({ "relation": r.to_string(), "value": value.to_string() }));
                }
            }
            let coords: Vec<Value> = k_subsets(v.n(), v.k())
                .iter()
                .map(|s| json!({ "subset": s, "value": v.get(s).to_string() }))
                .collect();
            let ok = violated.is_empty();
            let text = if ok {
                format!("on Gr({},{}): all {} relations vanish", v.k(), v.n(), rels.len())
            } else {
                format!("not on Gr({},{}): {} of {} relations fail", v.k(), v.n(), violated.len(), rels.len())
            };
            let json = json!({ "k": v.k(), "n": v.n(), "coords": coords, "satisfied": ok, "violated": violated });
            Ok(outcome("pluecker-check", json, text, ok))
        }
    }
}

fn num_zero() -> nschur::Rational {
    nschur::Rational::from_integer(0.into())
}

#[derive(Subcommand, Debug)]
pub enum PdoCommand {
    /// Product A B.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Monic first-order root of a monic operator.
    Root {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Residual dL/dt_i - sign [L, (L^{i/N})_+].
    Lax {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long)]
        flow: u32,
        #[arg(long, allow_hyphen_values = true, default_value_t = LAX_SIGN)]
        sign: i64,
    },
}

pub fn pdo(c: &PdoCommand, run: &RunArgs) -> Result<Outcome, CliError> {
    let d = run.depth;
    let (kind, result, passed) = match c {
        PdoCommand::Compose { a, b } => ("pdo-compose", input::operator(a, d)?.compose(&input::operator(b, d)?), true),
        PdoCommand::Root { op } => ("pdo-root", nth_root(&input::operator(op, d)?, d)?, true),
        PdoCommand::Lax { op, flow, sign } => {
            if sign.abs() != 1 {
                return Err(CliError::Config("--sign must be 1 or -1".into()));
            }
            let r = lax_residual(&input::operator(op, d)?, *flow, *sign)?;
            let zero = r.is_zero();
            ("pdo-lax", r, zero)
        }
    };
    let json = json!({ "depth": d, "result": result.to_json(), "string": result.to_string(), "zero": result.is_zero() });
    Ok(outcome(kind, json, result.to_string(), passed))
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct HirotaArgs {
    /// Polynomial in x, y, t.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Use the Schur polynomial of this partition, e.g. "2,1".
    #[arg(long)]
    partition: Option<String>,
}

fn tau_arg(tau: &Option<String>, partition: &Option<String>) -> Result<nschur::Polynomial, CliError> {
    match (tau, partition) {
        (Some(t), _) => Ok(parse_polynomial(t)?),
        (None, Some(p)) => Ok(schur_polynomial(&Partition::new(input::integers(p)?)?)),
        (None, None) => Err(CliError::Config("give --tau or --partition".into())),
    }
}

pub fn hirota(a: &HirotaArgs) -> Result<Outcome, CliError> {
    let tau = tau_arg(&a.tau, &a.partition)?;
    let r = hirota_residual(&tau);
    let json = json!({ "tau": tau.to_string(), "residual": r.to_json(), "string": r.to_string(), "vanishes": r.is_zero() });
    Ok(outcome("hirota", json, r.to_string(), true))
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("field").required(true).args(["u", "tau", "example"])))]
pub struct KpArgs {
    /// Exact residual of a rational function u(x, y, t).
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Exact residual of u = 2 (log tau)_xx.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Sampled residual of u_i from the Airy example.
    #[arg(long, value_name = "I")]
    example: Option<usize>,
    /// Sample point x,y,t for --example.
    #[arg(long, allow_hyphen_values = true, default_value = "-0.8,-0.6,0.2")]
    point: String,
}

pub fn kp(a: &KpArgs, run: &RunArgs) -> Result<Outcome, CliError> {
    if let Some(i) = a.example {
        if !(1..=6).contains(&i) {
            return Err(CliError::Config("--example takes 1..6".into()));
        }
        let p = input::point(&a.point)?;
        let mut pi = [0.0; 6];
        pi[i - 1] = 1.0;
        let e = numeric::example_kp_residual(&ExampleTau::default(), pi, p, numeric::DEFAULT_STEP, numeric::DEFAULT_FLOOR)?;
        let tol = run.tolerance.unwrap_or(1e-4);
        let ok = e.value.abs() <= tol;
        let json = json!({
            "example": i, "point": p, "residual": e.value, "stability": e.stability,
            "step": numeric::DEFAULT_STEP, "tolerance": tol, "pass": ok,
        });
        let text = format!("u{i} at {p:?}: residual {:e} (stability {:e})", e.value, e.stability);
        return Ok(outcome("kp", json, text, ok));
    }
    let u = match (&a.u, &a.tau) {
        (Some(u), _) => parse_rational_function(u)?,
        (None, Some(t)) => u_from_tau(&parse_polynomial(t)?)?,
        _ => return Err(CliError::Config("give --u, --tau or --example".into())),
    };
    let r = kp_residual(&u);
    let json = json!({ "u": u.to_string(), "residual": r.to_json(), "string": r.to_string(), "vanishes": r.is_zero() });
    Ok(outcome("kp", json, r.to_string(), true))
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// schur, theorem1, quadric, lax, airy-example, pipeline or properties.
    #[arg(long)]
    suite: String,
}

pub fn verify(a: &VerifyArgs, run: &RunArgs) -> Result<Outcome, CliError> {
    let suite: Suite = a.suite.parse().map_err(|e: nschur::Error| CliError::Config(e.to_string()))?;
    let cfg = RunConfig { seed: run.seed, tolerance: run.tolerance, count: run.count, depth: run.depth, k: run.k };
    let rep = verify::run(suite, &cfg)?;
    Ok(Outcome { json: rep.to_json(), text: rep.to_text(), passed: rep.passed() })
}
