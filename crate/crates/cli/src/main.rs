//! `multiflag`: command-line front end.
//!
//! Output goes to standard output (JSON by default), diagnostics to standard
//! error. Exit status is 0 on success, 2 when the request is refused for a
//! mathematical or resource reason (infinite type, census budget), and 1 for
//! malformed input or any other error.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multiflag::exactlin::{Field, FieldSpec, PrimeField, Rationals};
use multiflag::homcalc::HomPath;
use multiflag::oracle::{self, DEFAULT_BUDGET};
use multiflag::{
    classify_triple, classify_tuple, hom_dim_formula, hom_dim_linalg, lookup, pi_catalog, pi_catalog_up_to,
    AnyFlagObject, DimVector, Error, FlagObject, MultiplicityFamily, OrbitSpace, PiEntry,
};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "multiflag", version, about = "Finite-type triple flag varieties: classification, orbits, Hom and degenerations")]
struct Cli {
    /// Output format; `dot` is only available for `hasse`.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide finite type and list the matching classes.
    Classify {
        /// Dimension vector as JSON (e.g. '[[3,1],[1,1,1,1],[1,1,1,1]]'), a file path, or '-' for stdin.
        target: String,
    },
    /// List the indecomposable dimension vectors below a bound.
    Pi {
        bound: String,
        /// Only entries of at most this weight.
        #[arg(long)]
        max_weight: Option<u64>,
    },
    /// Enumerate orbits as multiplicity families with their codimensions.
    Orbits { target: String },
    /// Realize an orbit representative as an explicit flag object.
    Rep {
        target: String,
        #[command(flatten)]
        which: FamilyChoice,
        /// `Q` or a prime up to 251.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Codimension of an orbit.
    Codim {
        target: String,
        #[command(flatten)]
        which: FamilyChoice,
    },
    /// dim Hom between two objects, each a catalog key (JSON array) or a serialized object (JSON object).
    Hom {
        source: String,
        target: String,
        /// Field used to realize catalog keys when no serialized object fixes it.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Hasse diagram of the hom-rank order on the orbits.
    Hasse { target: String },
    /// Brute-force orbit census over F_q.
    Oracle {
        target: String,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Bound on (number of flag tuples) x n^2.
        #[arg(long, env = oracle::BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Also match every enumerated family to a census orbit.
        #[arg(long = "match")]
        match_families: bool,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct FamilyChoice {
    /// Position in the `orbits` listing.
    #[arg(long)]
    index: Option<usize>,
    /// Family as JSON: '[{"dim": [[...],[...],[...]], "mult": k}, ...]'.
    #[arg(long)]
    family: Option<String>,
}

enum Failure {
    /// Malformed input or an unsupported combination of options.
    Usage(String),
    /// A library error; refusals exit with 2.
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_input(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn parse_dim(arg: &str) -> CliResult<DimVector> {
    DimVector::parse_json(&read_input(arg)?).map_err(|e| Failure::Usage(format!("bad dimension vector: {e}")))
}

fn parse_field(s: &str) -> CliResult<FieldSpec> {
    FieldSpec::parse(s.trim_start_matches("F_")).map_err(|e| Failure::Usage(e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermInput {
    dim: DimVector,
    mult: u64,
}

fn choose_family(space: &OrbitSpace, which: &FamilyChoice) -> CliResult<usize> {
    if let Some(i) = which.index {
        if i >= space.len() {
            return Err(Failure::Usage(format!("index {i} out of range: {} orbits", space.len())));
        }
        return Ok(i);
    }
    let raw = read_input(which.family.as_deref().unwrap_or_default())?;
    let terms: Vec<TermInput> =
        serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("bad family: {e}")))?;
    let fam = MultiplicityFamily::new(terms.into_iter().map(|t| (t.dim, t.mult)).collect());
    space
        .index_of(&fam)
        .ok_or_else(|| Failure::Usage(format!("not a family for {}", space.target)))
}

fn family_record(space: &OrbitSpace, i: usize) -> CliResult<Value> {
    Ok(json!({ "id": i, "family": space.family(i).to_json(), "codim": space.codim(i)? }))
}

fn classify(target: &str) -> CliResult<(Value, bool)> {
    let d = parse_dim(target)?;
    let (finite, labels, witness) = if d.k() == 3 {
        let c = classify_triple(&d)?;
        (c.finite, c.labels, c.witness)
    } else {
        let c = classify_tuple(&d)?;
        (c.result.finite, c.result.labels, c.result.witness)
    };
    let mut out = json!({ "finite": finite, "labels": labels });
    if let Some(w) = witness {
        out["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    Ok((out, finite))
}

fn pi_entry_json(e: &PiEntry) -> Value {
    json!({ "dim": e.dim, "family": e.family(), "row": e.instance.row + 1, "roles": e.roles })
}

/// A Hom argument: either a catalog key or an explicit object.
enum HomArg {
    Key(PiEntry),
    Object(AnyFlagObject),
}

fn parse_hom_arg(arg: &str) -> CliResult<HomArg> {
    let v: Value = serde_json::from_str(&read_input(arg)?).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
    match v {
        Value::Array(_) => {
            let d: DimVector =
                serde_json::from_value(v).map_err(|e| Failure::Usage(format!("bad dimension vector: {e}")))?;
            let entry = lookup(&d)?.ok_or_else(|| Failure::Usage(format!("{d} is not an indecomposable dimension vector")))?;
            Ok(HomArg::Key(entry))
        }
        Value::Object(_) => Ok(HomArg::Object(AnyFlagObject::from_json(&v).map_err(|e| Failure::Usage(e.to_string()))?)),
        _ => Err(Failure::Usage("expected a JSON array or object".into())),
    }
}

fn hom_over<F: Field>(
    field: F,
    source: &HomArg,
    target: &HomArg,
    obj: impl Fn(&AnyFlagObject) -> Option<FlagObject<F>>,
) -> CliResult<(usize, Vec<HomPath>)> {
    let realize = |a: &HomArg| -> CliResult<FlagObject<F>> {
        match a {
            HomArg::Key(e) => Ok(e.realize(field)?),
            HomArg::Object(o) => obj(o).ok_or(Failure::Lib(Error::FieldMismatch)),
        }
    };
    let (x, y) = (realize(source)?, realize(target)?);
    let lin = hom_dim_linalg(&x, &y)?;
    let mut paths = vec![HomPath::Linalg];
    if let HomArg::Key(e) = source {
        let formula = hom_dim_formula(&e.standard_form()?, e.roles, &y)?;
        if formula != lin {
            return Err(Failure::Lib(Error::Invariant(format!("formula gives {formula}, linear algebra {lin}"))));
        }
        paths.insert(0, HomPath::Formula);
    }
    Ok((lin, paths))
}

fn hom(source: &str, target: &str, field: &str) -> CliResult<Value> {
    let (s, t) = (parse_hom_arg(source)?, parse_hom_arg(target)?);
    let fixed = [&s, &t].into_iter().find_map(|a| match a {
        HomArg::Object(o) => Some(o.field_spec()),
        HomArg::Key(_) => None,
    });
    let spec = match fixed {
        Some(f) => f,
        None => parse_field(field)?,
    };
    let (k, paths) = match spec {
        FieldSpec::Rationals => hom_over(Rationals, &s, &t, |o| match o {
            AnyFlagObject::Rational(x) => Some(x.clone()),
            AnyFlagObject::Prime(_) => None,
        })?,
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            hom_over(f, &s, &t, |o| match o {
                AnyFlagObject::Prime(x) if x.field() == f => Some(x.clone()),
                _ => None,
            })?
        }
    };
    Ok(json!({ "hom": k, "paths": paths.iter().map(HomPath::name).collect::<Vec<_>>() }))
}

fn rep(target: &str, which: &FamilyChoice, field: &str) -> CliResult<Value> {
    let space = OrbitSpace::new(&parse_dim(target)?)?;
    let i = choose_family(&space, which)?;
    Ok(match parse_field(field)? {
        FieldSpec::Rationals => space.representative(i, Rationals)?.to_json(),
        FieldSpec::Prime(p) => space.representative(i, PrimeField::new(p)?)?.to_json(),
    })
}

fn text(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(text).collect::<Vec<_>>().join("\n\n"),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_out(s: &str) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Text => write_out(&format!("{}\n", text(v))),
        _ => write_out(&format!("{}\n", serde_json::to_string(v).expect("values serialize"))),
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Hasse { .. }) {
        return Err(Failure::Usage("--format dot is only available for hasse".into()));
    }
    let out = match &cli.command {
        Command::Classify { target } => {
            let (v, finite) = classify(target)?;
            emit(cli.format, &v);
            return Ok(if finite { ExitCode::SUCCESS } else { ExitCode::from(2) });
        }
        Command::Pi { bound, max_weight } => {
            let b = parse_dim(bound)?;
            let entries = match max_weight {
                Some(w) => pi_catalog_up_to(&b, *w)?,
                None => pi_catalog(&b)?,
            };
            Value::Array(entries.iter().map(pi_entry_json).collect())
        }
        Command::Orbits { target } => {
            let space = OrbitSpace::new(&parse_dim(target)?)?;
            Value::Array((0..space.len()).map(|i| family_record(&space, i)).collect::<CliResult<_>>()?)
        }
        Command::Rep { target, which, field } => rep(target, which, field)?,
        Command::Codim { target, which } => {
            let space = OrbitSpace::new(&parse_dim(target)?)?;
            let i = choose_family(&space, which)?;
            family_record(&space, i)?
        }
        Command::Hom { source, target, field } => hom(source, target, field)?,
        Command::Hasse { target } => {
            let h = OrbitSpace::new(&parse_dim(target)?)?.hasse()?;
            if cli.format == Format::Dot {
                write_out(&h.to_dot());
                return Ok(ExitCode::SUCCESS);
            }
            h.to_json()
        }
        Command::Oracle { target, q, budget, match_families } => {
            let d = parse_dim(target)?;
            if *match_families {
                serde_json::to_value(oracle::match_orbits(&d, *q, *budget)?).expect("report serializes")
            } else {
                serde_json::to_value(oracle::census(&d, *q, *budget)?).expect("report serializes")
            }
        }
    };
    emit(cli.format, &out);
    Ok(ExitCode::SUCCESS)
}

fn refusal_json(e: &Error) -> Value {
    let mut v = json!({ "refused": true, "reason": e.kind(), "message": e.to_string() });
    match e {
        Error::InfiniteType(w) => v["witness"] = serde_json::to_value(w).expect("witness serializes"),
        Error::BudgetExceeded { estimated, budget } => {
            v["estimated"] = json!(estimated);
            v["budget"] = json!(budget);
        }
        Error::CapExceeded { weight, cap } => {
            v["weight"] = json!(weight);
            v["cap"] = json!(cap);
        }
        _ => {}
    }
    v
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) if e.is_refusal() => {
            write_out(&format!("{}\n", serde_json::to_string(&refusal_json(&e)).expect("values serialize")));
            eprintln!("refused: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
