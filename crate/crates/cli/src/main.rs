use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use circle_actions::catalog;
use circle_actions::document::{
    bigint_to_value, monodromy_to_value, parse_params, presentation_from_value, symbolic_to_value,
    DocumentError, PresentationDocument,
};
use circle_actions::exactalg::SymbolicReal;
use circle_actions::monodromy::{complete_invariant, induced_h1, Verdict};
use circle_actions::orbits::{fibration_orbit_canonical, FibrationCanonical, SearchBudget};
use circle_actions::seifert::euler_number;
use circle_actions::spaces::{compare, digest, model_witness, validate, PresentationViolation, SpacePresentation};
use circle_actions::torusbundle::quotient_cohomology;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const EXIT_OK: u8 = 0;
const EXIT_DISTINCT: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_UNDECIDED: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "circact", version, about = "Invariants of circle-valued Hamiltonian S^1-spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Bound on orbit searches: R/L letters and integer shifts.
    #[arg(long, value_name = "B", global = true)]
    search_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation document. Exit 0 if valid, 2 on violations, 3 on parse errors.
    Validate { file: String },
    /// Print the invariants and derived data of a presentation.
    Invariants { file: String },
    /// Compare two presentations. Exit 0 equivalent, 1 distinct, 4 undecided.
    Compare { first: String, second: String },
    /// Build the model space from a JSON object of invariants (inline, a path, or - for stdin).
    Model { args: String },
    /// Print a catalog entry as a document, e.g. `catalog t2xs2 k=5 l=2`.
    Catalog {
        name: String,
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<(u8, String), Failure>;

fn read_source(source: &str) -> Result<String, Failure> {
    if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(source).map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {source}: {e}")))
}

fn parse_failure(source: &str, e: DocumentError) -> Failure {
    Failure::new(EXIT_PARSE, format!("{source}: {e}"))
}

fn load(source: &str) -> Result<SpacePresentation, Failure> {
    let text = read_source(source)?;
    PresentationDocument::parse(&text)
        .map(|d| d.presentation)
        .map_err(|e| parse_failure(source, e))
}

fn violations_value(vs: &[PresentationViolation]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| json!({"code": v.code(), "message": v.to_string()}))
            .collect(),
    )
}

fn violations_text(source: &str, vs: &[PresentationViolation]) -> String {
    let mut out = format!("{source}: {} violation(s)\n", vs.len());
    for v in vs {
        out.push_str(&format!("  {v}\n"));
    }
    out
}

fn load_valid(source: &str, format: Format) -> Result<SpacePresentation, Failure> {
    let p = load(source)?;
    match validate(&p) {
        Ok(()) => Ok(p),
        Err(vs) => Err(Failure::new(
            EXIT_INVALID,
            match format {
                Format::Text => violations_text(source, &vs),
                Format::Json => render_json(&json!({"file": source, "ok": false, "violations": violations_value(&vs)})),
            },
        )),
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_validate(file: &str, format: Format) -> Outcome {
    let p = load(file)?;
    let result = validate(&p);
    let code = if result.is_ok() { EXIT_OK } else { EXIT_INVALID };
    let vs = result.err().unwrap_or_default();
    let text = match format {
        Format::Text if vs.is_empty() => "ok\n".to_string(),
        Format::Text => violations_text(file, &vs),
        Format::Json => render_json(&json!({"file": file, "ok": vs.is_empty(), "violations": violations_value(&vs)})),
    };
    Ok((code, text))
}

fn cmd_invariants(file: &str, format: Format) -> Outcome {
    let p = load_valid(file, format)?;
    let surface = p.surface();
    let d = digest(&p).expect("validated");
    let f1 = induced_h1(&p.monodromy, &surface);
    let coh = quotient_cohomology(&f1).expect("validated");
    let canonical = complete_invariant(&p.monodromy, &surface).expect("validated");
    let fib = fibration_orbit_canonical(&p.fibration, &p.orbit_context()).expect("validated");
    let witness = model_witness(&p);
    let euler = euler_number(&witness.level_set);
    let fib_canonical = match &fib {
        FibrationCanonical::Canonical(c) => Some(c),
        FibrationCanonical::Undecided(_) => None,
    };
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("tau: {}\n", p.tau));
            out.push_str(&format!("c_dh: {}\n", p.c_dh));
            out.push_str(&format!("genus: {}\n", p.genus));
            out.push_str(&format!("isotropy: {}\n", p.isotropy));
            out.push_str(&format!("monodromy: {}\n", p.monodromy));
            match &canonical {
                Some(c) => out.push_str(&format!("monodromy canonical form: {c}\n")),
                None => out.push_str("monodromy canonical form: none (outside the decidable fragment)\n"),
            }
            out.push_str(&format!("fibration: {}\n", p.fibration));
            match fib_canonical {
                Some(c) => out.push_str(&format!("fibration canonical: {c}\n")),
                None => out.push_str("fibration canonical: undecided\n"),
            }
            out.push_str(&format!("derham: {}\n", p.derham));
            out.push_str(&format!("digest fibration: {}\n", d.fibration));
            out.push_str(&format!("digest derham: {}\n", d.derham));
            out.push_str(&format!("quotient cohomology: {coh}\n"));
            out.push_str(&format!("b1={}, b2={}\n", coh.b1, coh.b2));
            out.push_str(&format!("level set: {} (euler number {euler})\n", witness.level_set));
            out
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("tau".into(), symbolic_to_value(&p.tau));
            m.insert("c_dh".into(), symbolic_to_value(&p.c_dh));
            m.insert("genus".into(), json!(p.genus));
            m.insert(
                "isotropy".into(),
                json!(p.isotropy.classes().iter().map(|c| [c.n, c.a]).collect::<Vec<_>>()),
            );
            m.insert("monodromy".into(), monodromy_to_value(&p.monodromy));
            m.insert(
                "monodromy_canonical".into(),
                canonical.map_or(Value::Null, |c| json!(c.to_string())),
            );
            m.insert("fibration".into(), json!(p.fibration.coords.iter().map(bigint_to_value).collect::<Vec<_>>()));
            m.insert(
                "fibration_canonical".into(),
                fib_canonical.map_or(Value::Null, |c| json!(c.coords.iter().map(bigint_to_value).collect::<Vec<_>>())),
            );
            m.insert(
                "derham".into(),
                json!(p.derham.coords.iter().map(symbolic_to_value).collect::<Vec<_>>()),
            );
            m.insert("h1".into(), json!(coh.h1.to_string()));
            m.insert("h2".into(), json!(coh.h2.to_string()));
            m.insert("b1".into(), json!(coh.b1));
            m.insert("b2".into(), json!(coh.b2));
            m.insert("level_set".into(), json!(witness.level_set.to_string()));
            m.insert("euler_number".into(), json!(euler.to_string()));
            render_json(&Value::Object(m))
        }
    };
    Ok((EXIT_OK, text))
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Equivalent => EXIT_OK,
        Verdict::Distinct(_) => EXIT_DISTINCT,
        Verdict::Undecided(_) => EXIT_UNDECIDED,
    }
}

fn cmd_compare(first: &str, second: &str, format: Format, budget: &SearchBudget) -> Outcome {
    let p = load_valid(first, format)?;
    let q = load_valid(second, format)?;
    let c = compare(&p, &q, budget).expect("validated");
    let reason = match &c.verdict {
        Verdict::Equivalent => None,
        Verdict::Distinct(r) | Verdict::Undecided(r) => Some(r.clone()),
    };
    let text = match format {
        Format::Text => format!("{}\n", c.verdict),
        Format::Json => {
            let witness = c.derham_witness.as_ref().map_or(Value::Null, |w| {
                json!({
                    "g": [[bigint_to_value(&w.g.a), bigint_to_value(&w.g.b)], [bigint_to_value(&w.g.c), bigint_to_value(&w.g.d)]],
                    "e": bigint_to_value(&w.e),
                    "f": bigint_to_value(&w.f),
                    "y": bigint_to_value(&w.y),
                    "z": bigint_to_value(&w.z),
                })
            });
            render_json(&json!({
                "verdict": c.verdict.kind(),
                "invariant": c.invariant.map(|i| i.name()),
                "reason": reason,
                "derham_witness": witness,
            }))
        }
    };
    Ok((verdict_code(&c.verdict), text))
}

fn cmd_model(args: &str, format: Format) -> Outcome {
    let trimmed = args.trim_start();
    let text = if trimmed.starts_with('{') {
        args.to_string()
    } else {
        read_source(args)?
    };
    let mut value: Value = serde_json::from_str(&text).map_err(|e| {
        Failure::new(
            EXIT_PARSE,
            format!("model arguments: malformed JSON at line {}, column {}: {e}", e.line(), e.column()),
        )
    })?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Failure::new(EXIT_PARSE, "model arguments: expected a JSON object"))?;
    // Missing orbit classes default to zero of the right length, filled in below.
    let missing_fibration = !obj.contains_key("fibration");
    let missing_derham = !obj.contains_key("derham");
    obj.entry("fibration").or_insert(json!([]));
    obj.entry("derham").or_insert(json!([]));
    let mut p = presentation_from_value(&value).map_err(|e| parse_failure("model arguments", e))?;
    if missing_fibration || missing_derham {
        let zero = SpacePresentation::with_zero_classes(
            SymbolicReal::one(),
            SymbolicReal::one(),
            p.genus,
            p.isotropy.clone(),
            p.monodromy.clone(),
        );
        if missing_fibration {
            p.fibration = zero.fibration;
        }
        if missing_derham {
            p.derham = zero.derham;
        }
    }
    let model = circle_actions::spaces::model_space(
        p.tau, p.c_dh, p.genus, p.isotropy, p.monodromy, p.fibration, p.derham,
    );
    match model {
        Ok(m) => {
            let doc = PresentationDocument {
                presentation: m.presentation,
                witness: Some(m.witness),
            };
            Ok((EXIT_OK, doc.to_json()))
        }
        Err(circle_actions::spaces::SpacesError::InvalidPresentation(vs)) => Err(Failure::new(
            EXIT_INVALID,
            match format {
                Format::Text => violations_text("model arguments", &vs),
                Format::Json => render_json(&json!({"ok": false, "violations": violations_value(&vs)})),
            },
        )),
    }
}

fn cmd_catalog(name: &str, params: &[String]) -> Outcome {
    let params = parse_params(params.iter().map(String::as_str)).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    match catalog::entry(name, &params) {
        Ok(p) => Ok((EXIT_OK, PresentationDocument::new(p).to_json())),
        Err(e @ (catalog::CatalogError::UnknownEntry(_) | catalog::CatalogError::BadParameter(_))) => {
            Err(Failure::new(EXIT_USAGE, e.to_string()))
        }
        Err(e) => Err(Failure::new(EXIT_INVALID, e.to_string())),
    }
}

fn run(cli: &Cli) -> Outcome {
    let budget = cli.search_budget.map_or_else(SearchBudget::default, SearchBudget::uniform);
    match &cli.command {
        Command::Validate { file } => cmd_validate(file, cli.format),
        Command::Invariants { file } => cmd_invariants(file, cli.format),
        Command::Compare { first, second } => cmd_compare(first, second, cli.format, &budget),
        Command::Model { args } => cmd_model(args, cli.format),
        Command::Catalog { name, params } => cmd_catalog(name, params),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((code, out)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(EXIT_PARSE);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprint!("{}", f.message);
            if !f.message.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(f.code)
        }
    }
}
