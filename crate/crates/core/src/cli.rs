//! Command-line front end: model files in, JSON or text reports out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::chow::presentation;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, IntMatrix};
use crate::inertia::{InertiaComponent, TorsionElement};
use crate::model::{Character, StackModel, WeightMatrix};
use crate::orbifold::{
    orbifold_table, verify_obstruction_pullback, verify_orbifold_iso, OrbifoldTable, VerificationReport,
};
use crate::verifiers::{hypertoric_normal_models, sre_condition_iii, verify_charts, LocalModelSRE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// GIT data: σ-sets, minimal unstable sets, tangent class.
    Analyze,
    /// Inertia components with fixed columns and ages.
    Inertia,
    /// Integral Chow presentation and graded groups up to D.
    Chowring,
    /// Generator products of the orbifold Chow ring.
    OrbifoldTable,
    /// Obstruction pullback and orbifold Chow isomorphism for (A, θ).
    Verify,
    /// Exact roundtrips through every local chart.
    ChartCheck,
    /// Condition (iii) on the local normal models.
    SreCheck,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypertoric",
    version,
    about = "Orbifold Chow rings of Lawrence toric and hypertoric stacks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Model (or local-model) JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Truncation degree D (defaults to twice the number of coordinates).
    #[arg(long = "degree", short = 'D', global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub truncation: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
}

impl TryFrom<Cli> for RunConfig {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self> {
        Ok(Self {
            command: cli.command,
            input: cli
                .input
                .ok_or_else(|| Error::InvalidInput("--input is required".into()))?,
            truncation: cli.degree.map(|d| d as usize),
            seed: cli.seed,
            samples: cli.samples as usize,
            format: cli.format,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn parse_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{s:?} is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn parse_rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        other => parse_integer(other).map(BigRational::from_integer),
    }
}

fn parse_integer_list(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be a list")))?
        .iter()
        .map(parse_integer)
        .collect()
}

fn parse_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("\"A\" must be a list of rows".into()))?
        .iter()
        .map(|r| parse_integer_list(r, "each row of \"A\""))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::InvalidInput("\"A\" has no rows".into()));
    }
    IntMatrix::from_rows(&rows)
}

fn one_based_sets(v: &Value, n: usize) -> Result<Vec<Vec<usize>>> {
    let sets = v
        .as_array()
        .ok_or_else(|| Error::Parse("\"unstable\" must be a list of coordinate lists".into()))?;
    sets.iter()
        .map(|s| {
            parse_integer_list(s, "each unstable set")?
                .iter()
                .map(|i| match i.to_usize() {
                    Some(k) if (1..=n).contains(&k) => Ok(k - 1),
                    _ => Err(Error::InvalidInput(format!(
                        "unstable coordinate {i} is not in 1..={n}"
                    ))),
                })
                .collect()
        })
        .collect()
}

fn read_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

/// Parses and validates a model file:
/// `{"A": [[…]], "theta": […], "kind": "lawrence"|"hypertoric"|"direct", "unstable": [[…]]}`.
/// `kind` defaults to `hypertoric`; `unstable` is one-based and used only by
/// direct models.
pub fn parse_model(text: &str) -> Result<StackModel> {
    model_from_value(&read_json(text)?)
}

pub fn model_from_value(v: &Value) -> Result<StackModel> {
    let a = WeightMatrix::new(parse_matrix(
        v.get("A").ok_or_else(|| Error::Parse("missing \"A\"".into()))?,
    )?)?;
    let kind = match v.get("kind") {
        None => "hypertoric",
        Some(Value::String(s)) => s.as_str(),
        Some(other) => return Err(Error::Parse(format!("\"kind\" must be a string, found {other}"))),
    };
    let theta = || -> Result<Character> {
        let t = v
            .get("theta")
            .ok_or_else(|| Error::InvalidInput(format!("{kind} models need \"theta\"")))?;
        Ok(Character(parse_integer_list(t, "\"theta\"")?))
    };
    match kind {
        "lawrence" => StackModel::lawrence(a, theta()?),
        "hypertoric" => StackModel::hypertoric(a, theta()?),
        "direct" => {
            let n = a.n();
            let unstable = v
                .get("unstable")
                .ok_or_else(|| Error::InvalidInput("direct models need \"unstable\"".into()))?;
            StackModel::direct(a, one_based_sets(unstable, n)?)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown kind {other:?} (expected lawrence, hypertoric or direct)"
        ))),
    }
}

/// `{"generators": [["1/2"], …], "normal_weights": [[-1], …]}` or, for a
/// cyclic group, `{"order": r, "normal_weights": …}`.
pub fn parse_local_model(v: &Value) -> Result<LocalModelSRE> {
    let weights = v
        .get("normal_weights")
        .ok_or_else(|| Error::Parse("missing \"normal_weights\"".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("\"normal_weights\" must be a list".into()))?
        .iter()
        .map(|w| parse_integer_list(w, "each normal weight"))
        .collect::<Result<Vec<_>>>()?;
    let generators = if let Some(gens) = v.get("generators") {
        gens.as_array()
            .ok_or_else(|| Error::Parse("\"generators\" must be a list".into()))?
            .iter()
            .map(|g| {
                let entries = g
                    .as_array()
                    .ok_or_else(|| Error::Parse("each generator must be a list".into()))?
                    .iter()
                    .map(parse_rational_value)
                    .collect::<Result<Vec<_>>>()?;
                Ok(TorsionElement::from_rationals(entries))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let r = parse_integer(
            v.get("order")
                .ok_or_else(|| Error::Parse("missing \"generators\" or \"order\"".into()))?,
        )?;
        if r < BigInt::from(1) {
            return Err(Error::InvalidInput(format!("group order {r} must be positive")));
        }
        vec![TorsionElement::from_rationals(vec![BigRational::new(1.into(), r)])]
    };
    if let Some(g) = generators.iter().find(|g| weights.iter().any(|w| w.len() != g.d())) {
        return Err(Error::DimensionMismatch(format!(
            "generator {g} and normal weights differ in rank"
        )));
    }
    Ok(LocalModelSRE {
        generators,
        normal_weights: weights,
    })
}

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn rational_json(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

fn element_json(g: &TorsionElement) -> Value {
    json!(g.v().to_strings())
}

fn one_based(cols: &[usize]) -> Value {
    json!(cols.iter().map(|c| c + 1).collect::<Vec<_>>())
}

fn component_json(c: &InertiaComponent) -> Value {
    json!({
        "v": element_json(&c.g),
        "order": int_json(c.g.order()),
        "fixed": one_based(&c.fixed_columns),
        "age": rational_json(&c.age),
    })
}

fn coordinate_set(model: &StackModel, set: &[usize]) -> String {
    let labels: Vec<&str> = set.iter().map(|&i| model.coords()[i].label.as_str()).collect();
    format!("{{{}}}", labels.join(","))
}

/// `{"relations": [...], "graded": {"0": "Z", ...}}` up to degree `truncation`.
pub fn chowring_value(model: &StackModel, truncation: usize) -> Result<Value> {
    let pres = presentation(model, truncation)?;
    let mut graded = Map::new();
    for (k, g) in pres.graded_groups()?.iter().enumerate() {
        graded.insert(k.to_string(), Value::String(g.to_string()));
    }
    let relations: Vec<String> = pres.relations().iter().map(ToString::to_string).collect();
    Ok(json!({ "relations": relations, "graded": graded }))
}

pub fn inertia_value(components: &[InertiaComponent]) -> Value {
    Value::Array(components.iter().map(component_json).collect())
}

pub fn table_value(table: &OrbifoldTable) -> Value {
    let label = |i: usize| element_json(&table.components[i].g);
    let comps: Vec<Value> = table
        .components
        .iter()
        .zip(&table.relations)
        .map(|(c, rels)| {
            let mut v = component_json(c);
            v["relations"] = json!(rels.iter().map(ToString::to_string).collect::<Vec<_>>());
            v
        })
        .collect();
    let products: Vec<Value> = table
        .products
        .iter()
        .map(|p| {
            json!({
                "g1": label(p.g1),
                "g2": label(p.g2),
                "target": label(p.target),
                "poly": p.canonical.to_string(),
                "raw": p.raw.to_string(),
                "degree": p.degree,
                "obstruction": p.obstruction.to_string(),
                "euler": p.obstruction_euler.to_string(),
                "normal_euler": p.normal_euler.to_string(),
            })
        })
        .collect();
    json!({ "components": comps, "products": products })
}

fn resolve_truncation(config: &RunConfig, model: &StackModel) -> usize {
    config.truncation.unwrap_or_else(|| model.default_truncation())
}

fn git_data(model: &StackModel) -> Result<(WeightMatrix, Character)> {
    match &model.theta {
        Some(t) => Ok((model.base.clone(), t.clone())),
        None => Err(Error::InvalidInput(
            "this check needs a Lawrence or hypertoric model with θ".into(),
        )),
    }
}

pub fn analysis_value(model: &StackModel) -> Value {
    json!({
        "kind": model.kind.to_string(),
        "d": model.d(),
        "n": model.n(),
        "coordinates": model.coords().iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
        "theta": model.theta.as_ref().map(|t| t.0.iter().map(int_json).collect::<Vec<_>>()),
        "sigma_sets": model.arrangement.sigma_sets.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "unstable": model.unstable_sets().iter().map(|s| coordinate_set(model, s)).collect::<Vec<_>>(),
        "tangent_class": model.tangent_class.to_string(),
        "moment_rank": model.moment_rank,
        "default_truncation": model.default_truncation(),
    })
}

pub fn report_value(r: &VerificationReport) -> Value {
    json!({
        "pass": r.passed(),
        "components": r.components,
        "checks": r.checks,
        "skipped": r.skipped,
        "failures": r.failures,
    })
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn render(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize"),
        Format::Text => text,
    }
}

fn text_lines(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {}", compact(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        other => compact(other),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs one subcommand on a configuration. Input problems are returned as
/// `Err`; failed verifications come back with exit code 1.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let text = fs::read_to_string(&config.input)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", config.input.display())))?;
    let raw = read_json(&text)?;

    if config.command == Command::SreCheck && raw.get("normal_weights").is_some() {
        let local = parse_local_model(&raw)?;
        let ok = sre_condition_iii(&local);
        let value = json!({ "pass": ok, "models": 1 });
        return Ok(Outcome {
            code: if ok { EXIT_OK } else { EXIT_FAILED },
            stdout: render(config.format, &value, format!("sre-condition-iii: {}", pass_word(ok))) + "\n",
        });
    }

    let model = model_from_value(&raw)?;
    let (code, value, summary) = match config.command {
        Command::Analyze => {
            let v = analysis_value(&model);
            let t = text_lines(&v);
            (EXIT_OK, v, t)
        }
        Command::Inertia => {
            let comps = crate::inertia::inertia_components(&model)?;
            let v = inertia_value(&comps);
            let t = comps
                .iter()
                .map(|c| {
                    format!(
                        "g = {}  order {}  fixed {}  age {}",
                        c.g,
                        c.g.order(),
                        one_based(&c.fixed_columns),
                        format_rational(&c.age)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            (EXIT_OK, v, t)
        }
        Command::Chowring => {
            let v = chowring_value(&model, resolve_truncation(config, &model))?;
            let rels: Vec<String> = v["relations"].as_array().into_iter().flatten().map(compact).collect();
            let mut t = format!("relations: {}", rels.join(", "));
            for (k, g) in v["graded"].as_object().into_iter().flatten() {
                t.push_str(&format!("\nCH^{k} = {}", compact(g)));
            }
            (EXIT_OK, v, t)
        }
        Command::OrbifoldTable => {
            let table = orbifold_table(&model, resolve_truncation(config, &model))?;
            let t = table
                .products
                .iter()
                .map(|p| {
                    format!(
                        "l_{} * l_{} = ({}) l_{}",
                        table.components[p.g1].g, table.components[p.g2].g, p.canonical, table.components[p.target].g
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            (EXIT_OK, table_value(&table), t)
        }
        Command::Verify => {
            let (a, theta) = git_data(&model)?;
            let d = resolve_truncation(config, &model);
            let pull = verify_obstruction_pullback(&a, &theta)?;
            let iso = verify_orbifold_iso(&a, &theta, d)?;
            let ok = pull.passed() && iso.passed();
            let summary = format!(
                "obstruction-pullback: {}; orbifold-iso: {}",
                pass_word(pull.passed()),
                pass_word(iso.passed())
            );
            let v = json!({
                "pass": ok,
                "summary": summary,
                "obstruction_pullback": report_value(&pull),
                "orbifold_iso": report_value(&iso),
            });
            let mut t = summary.clone();
            for f in pull.failures.iter().chain(&iso.failures) {
                t.push_str(&format!("\n  {f}"));
            }
            (if ok { EXIT_OK } else { EXIT_FAILED }, v, t)
        }
        Command::ChartCheck => {
            let (a, theta) = git_data(&model)?;
            let r = verify_charts(&a, &theta, config.samples, config.seed)?;
            let charts: Vec<Value> = r
                .charts
                .iter()
                .map(|c| {
                    json!({
                        "sigma": c.sigma.to_string(),
                        "pivot_order": one_based(&c.pivot_order),
                        "pivots": c.pivots.iter().map(int_json).collect::<Vec<_>>(),
                        "base_point_dim": c.base_point_dim,
                        "fiber_dim": c.fiber_dim,
                    })
                })
                .collect();
            let v = json!({
                "pass": r.passed(),
                "seed": config.seed,
                "samples": config.samples,
                "charts": charts,
                "roundtrips": r.roundtrips,
                "rejected_samples": r.rejected_samples,
                "failures": r.failures,
            });
            let t = format!(
                "charts: {}; roundtrips: {}; {}",
                r.charts.len(),
                r.roundtrips,
                pass_word(r.passed())
            );
            (if r.passed() { EXIT_OK } else { EXIT_FAILED }, v, t)
        }
        Command::SreCheck => {
            if model.moment_rank == 0 {
                return Err(Error::InvalidInput(
                    "sre-check needs a hypertoric model or a local model with \"normal_weights\"".into(),
                ));
            }
            let locals = hypertoric_normal_models(&model)?;
            let failing: Vec<String> = locals
                .iter()
                .filter(|m| !sre_condition_iii(m))
                .map(|m| {
                    m.generators
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let ok = failing.is_empty();
            let v = json!({ "pass": ok, "models": locals.len(), "failures": failing });
            (
                if ok { EXIT_OK } else { EXIT_FAILED },
                v,
                format!("sre-condition-iii: {}", pass_word(ok)),
            )
        }
    };
    let mut stdout = render(config.format, &value, summary);
    stdout.push('\n');
    Ok(Outcome { code, stdout })
}

/// Full entry point: parse arguments, run, map errors to exit code 2.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, String::new(), e.render().to_string());
        }
    };
    match RunConfig::try_from(cli).and_then(|c| run(&c)) {
        Ok(o) => (o.code, o.stdout, String::new()),
        Err(e) => (EXIT_INPUT, String::new(), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_model_examples() {
        let m = parse_model(r#"{"A": [[1,2]], "theta": [1], "kind": "hypertoric"}"#).unwrap();
        assert_eq!(m.moment_rank, 1);
        let err = parse_model(r#"{"A": [[1,0,1],[0,1,1]], "theta": [1,0]}"#).unwrap_err();
        assert_eq!(err.to_string(), "non-generic: basis {1,3}, λ₃ = 0");
        let err = parse_model(r#"{"A": [[0,0]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("rank deficient"), "{err}");
        assert!(matches!(parse_model("{"), Err(Error::Parse(_))));
        let m = parse_model(r#"{"A": [[0,1,2,3]], "kind": "direct", "unstable": [[4]]}"#).unwrap();
        assert_eq!(m.unstable_sets(), &[vec![3]]);
        let m = parse_model(r#"{"A": [["1","2"]], "theta": ["1"], "kind": "lawrence"}"#).unwrap();
        assert_eq!(m.num_coords(), 4);
    }

    #[test]
    fn local_model_parsing() {
        let v = read_json(r#"{"order": 2, "normal_weights": [[-1],[-1]]}"#).unwrap();
        assert!(!sre_condition_iii(&parse_local_model(&v).unwrap()));
        let v = read_json(r#"{"generators": [["1/2"]], "normal_weights": [[2]]}"#).unwrap();
        assert!(sre_condition_iii(&parse_local_model(&v).unwrap()));
    }
}
