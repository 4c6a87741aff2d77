//! Command dispatch for the `sullivan` binary.
//!
//! Exit codes: 0 success, 1 mathematical negative result or unmet
//! hypothesis, 2 input or usage error (including exceeded caps), 3 internal
//! verification failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sullivan_core::extension::SearchTrial;
use sullivan_core::{
    cohomology_dims, exhaustive_homogeneous_search, f0_extend_with, is_elliptic, parse_model, render_model,
    tc_upper_bound, tc_upper_bound_nonpure, BoundReport, Certificate, Error, PureIdeal, SearchConfig,
    SullivanModel,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sullivan", version, about = "Pure elliptic Sullivan models: ellipticity, F0 extensions, TC bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a key-sorted JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Order of the coefficient search in `extend`; 0 is the natural order.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Highest degree the cohomology oracle may visit.
    #[arg(long, global = true, default_value_t = 64)]
    max_degree: u32,
    /// Largest number of candidates a search may examine.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_search: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a model file.
    Validate { model: PathBuf },
    /// Validation plus ellipticity, nilpotency exponents and certificates.
    Analyze { model: PathBuf },
    /// Construct and verify an F₀-basis extension.
    Extend { model: PathBuf },
    /// Exhaustive search for a homogeneous F₀-basis extension.
    Search { model: PathBuf },
    /// Category and topological-complexity upper bounds.
    Bound {
        model: PathBuf,
        /// Generators of a pure sub-model with the same even part.
        #[arg(long, value_delimiter = ',')]
        pure_sub: Option<Vec<String>>,
    },
    /// Dimensions of H^k for k up to the given degree.
    Cohomology {
        model: PathBuf,
        #[arg(long)]
        up_to: u32,
    },
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_internal() => EXIT_INTERNAL,
            Failure::Core(e) if e.is_hypothesis_failure() => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        }
    }

    fn id(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Input(_) => "input",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input(m) => m.clone(),
        }
    }
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

fn load(path: &Path) -> Result<SullivanModel, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_model(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(m)
}

fn certificate_json(c: &Certificate) -> Value {
    json!({ "generator": c.generator, "exponent": c.exponent, "witness": c.witness.to_string() })
}

fn validate(m: &SullivanModel) -> Result<Report, Failure> {
    let report = m.validate()?;
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["name"] = json!(m.name());
    let text = format!(
        "model {}\n  pure: {}\n  minimal: {}\n  differential: {}\n  chi_pi: {}\n",
        m.name(),
        report.pure,
        report.minimal,
        report.length,
        report.chi_pi
    );
    Ok(Report {
        json: value,
        text,
        code: EXIT_OK,
    })
}

fn analyze(m: &SullivanModel) -> Result<Report, Failure> {
    let mut report = m.validate()?;
    let elliptic = is_elliptic(m)?;
    report.elliptic = Some(elliptic);
    if elliptic {
        report.formal_dimension = Some(m.formal_dimension()?);
    }
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["name"] = json!(m.name());
    let mut text = String::new();
    writeln!(text, "model {}", m.name()).unwrap();
    writeln!(text, "  pure: {}", report.pure).unwrap();
    writeln!(text, "  minimal: {}", report.minimal).unwrap();
    writeln!(text, "  differential: {}", report.length).unwrap();
    writeln!(text, "  elliptic: {elliptic}").unwrap();
    writeln!(text, "  chi_pi: {}", report.chi_pi).unwrap();
    if let Some(f) = report.formal_dimension {
        writeln!(text, "  formal dimension: {f}").unwrap();
    }
    if report.pure && elliptic {
        let ideal = PureIdeal::new(m)?;
        let mut exponents = BTreeMap::new();
        let mut certificates = Vec::new();
        for x in m.space().evens() {
            let n = ideal.nilpotency_exponent(x.name())?;
            let cert = ideal.certificate(x.name(), n)?;
            writeln!(text, "  {}^{n} = d({})", x.name(), cert.witness).unwrap();
            exponents.insert(x.name().to_string(), n);
            certificates.push(certificate_json(&cert));
        }
        value["exponents"] = json!(exponents);
        value["certificates"] = Value::Array(certificates);
    }
    Ok(Report {
        json: value,
        text,
        code: EXIT_OK,
    })
}

fn extend(m: &SullivanModel, config: &SearchConfig) -> Result<Report, Failure> {
    let res = f0_extend_with(m, config)?;
    let z: Vec<Value> = res
        .z_odd
        .iter()
        .zip(&res.degrees)
        .map(|(u, d)| json!({ "element": u.to_string(), "degree": d }))
        .collect();
    let mut value = json!({
        "name": m.name(),
        "z_odd": z,
        "certificates": res.certificates.iter().map(certificate_json).collect::<Vec<_>>(),
        "trace": serde_json::to_value(&res.trace).expect("serializable"),
        "sub_model": render_model(&res.sub_model),
    });
    if config.seed != 0 {
        value["seed"] = json!(config.seed);
    }
    let mut text = String::new();
    writeln!(text, "F₀-basis extension of {}", m.name()).unwrap();
    for (u, d) in res.z_odd.iter().zip(&res.degrees) {
        writeln!(text, "  {u}  (degree {d})").unwrap();
    }
    for level in &res.trace {
        let chosen: Vec<String> = level.chosen.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "  level {}: X1 = {{{}}}, chosen {{{}}}, quotient {}",
            level.level,
            level.x1.join(", "),
            chosen.join(", "),
            level.quotient
        )
        .unwrap();
    }
    for c in &res.certificates {
        writeln!(text, "  {}^{} = d({})", c.generator, c.exponent, c.witness).unwrap();
    }
    Ok(Report {
        json: value,
        text,
        code: EXIT_OK,
    })
}

fn trial_json(t: &SearchTrial) -> Value {
    json!({
        "members": t.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "passed": t.passed,
        "first_failure": t.first_failure.map(|c| c.to_string()),
        "failing_index": t.failing_index,
        "witness": t.witness,
    })
}

fn describe_trial(t: &SearchTrial) -> String {
    let members: Vec<String> = t.members.iter().map(ToString::to_string).collect();
    let verdict = match (&t.first_failure, t.failing_index, &t.witness) {
        (None, _, _) => "passes".to_string(),
        (Some(_), Some(i), Some(w)) => format!("fails at position {i}, witness {w}"),
        (Some(c), _, _) => format!("fails {c}"),
    };
    format!("  {{{}}}: {verdict}", members.join(", "))
}

fn search(m: &SullivanModel, cap: usize) -> Result<Report, Failure> {
    let out = exhaustive_homogeneous_search(m, cap)?;
    let found = out
        .found
        .as_ref()
        .map(|z| z.iter().map(ToString::to_string).collect::<Vec<_>>());
    let value = json!({
        "name": m.name(),
        "found": found,
        "exhaustive": out.exhaustive,
        "combinations_examined": out.combinations_examined,
        "subsets": out.subsets.iter().map(trial_json).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    match &found {
        Some(z) => writeln!(text, "homogeneous F₀-basis extension: {{{}}}", z.join(", ")).unwrap(),
        None => writeln!(text, "no homogeneous F₀-basis extension").unwrap(),
    }
    for t in &out.subsets {
        writeln!(text, "{}", describe_trial(t)).unwrap();
    }
    if out.found.is_none() {
        let scope = if out.exhaustive {
            "every graded subspace was examined"
        } else {
            "subset search is complete; coefficient grid search is partial"
        };
        writeln!(text, "  ({scope})").unwrap();
    }
    Ok(Report {
        json: value,
        text,
        code: if out.found.is_some() { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn bound_text(m: &SullivanModel, r: &BoundReport) -> String {
    let mut text = String::new();
    writeln!(text, "bounds for {}", m.name()).unwrap();
    writeln!(text, "  chi_pi: {}", r.chi_pi).unwrap();
    if let (Some(cat), Some(p)) = (r.cat, r.cat_provenance) {
        writeln!(text, "  cat <= {cat}  [{}]", p.tag()).unwrap();
    }
    if let (Some(tc), Some(p)) = (r.tc_upper, r.provenance) {
        writeln!(text, "  TC <= {tc}  [{}]", p.tag()).unwrap();
    }
    for note in &r.applicability_notes {
        writeln!(text, "  note: {note}").unwrap();
    }
    text
}

fn bound(m: &SullivanModel, pure_sub: Option<&[String]>) -> Result<Report, Failure> {
    let report = match pure_sub {
        Some(names) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            tc_upper_bound_nonpure(m, &names)?
        }
        None => tc_upper_bound(m)?,
    };
    Ok(Report {
        json: serde_json::to_value(&report).expect("serializable"),
        text: bound_text(m, &report),
        code: EXIT_OK,
    })
}

fn cohomology(m: &SullivanModel, up_to: u32, max_degree: u32) -> Result<Report, Failure> {
    if up_to > max_degree {
        return Err(Failure::Input(format!(
            "--up-to {up_to} exceeds --max-degree {max_degree}"
        )));
    }
    let dims = cohomology_dims(m, up_to);
    let mut text = format!("H^k of {}\n", m.name());
    for (k, d) in dims.iter().enumerate() {
        writeln!(text, "  {k:>4}  {d}").unwrap();
    }
    Ok(Report {
        json: json!({ "name": m.name(), "up_to": up_to, "dims": dims }),
        text,
        code: EXIT_OK,
    })
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let config = SearchConfig {
        seed: cli.seed,
        max_candidates: cli.max_search,
        ..SearchConfig::default()
    };
    match &cli.command {
        Command::Validate { model } => validate(&load(model)?),
        Command::Analyze { model } => analyze(&load(model)?),
        Command::Extend { model } => extend(&load(model)?, &config),
        Command::Search { model } => search(&load(model)?, cli.max_search),
        Command::Bound { model, pure_sub } => bound(&load(model)?, pure_sub.as_deref()),
        Command::Cohomology { model, up_to } => cohomology(&load(model)?, *up_to, cli.max_degree),
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Output { stdout, stderr, code };
        }
    };
    match dispatch(&cli) {
        Ok(report) if cli.json => Output {
            stdout: render_json(&report.json),
            stderr: String::new(),
            code: report.code,
        },
        Ok(report) => Output {
            stdout: report.text,
            stderr: String::new(),
            code: report.code,
        },
        Err(f) if cli.json => Output {
            stdout: render_json(&json!({ "error": { "code": f.id(), "message": f.message() } })),
            stderr: String::new(),
            code: f.code(),
        },
        Err(f) => Output {
            stdout: String::new(),
            stderr: format!("error [{}]: {}\n", f.id(), f.message()),
            code: f.code(),
        },
    }
}

