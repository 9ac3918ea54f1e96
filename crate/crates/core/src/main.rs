use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dualis::algebra::unitalize;
use dualis::coalgebra::{counitalize, dual_algebra};
use dualis::combinatorial::{Hand, PosetTemplate, QuiverTemplate};
use dualis::finite_dual::{bialgebra_dual, finite_dual_findim};
use dualis::linalg::FieldSpec;
use dualis::spec::{
    algebra_block, builtin_suite, coalgebra_block, run_document, CheckSpec, Object, Report, SpecDocument, SuiteKnobs,
    SuiteName,
};
use dualis::{Error, Result};

#[derive(Parser)]
#[command(name = "dualis", version, about = "Exact finite duals of non-unital algebras and non-counital coalgebras")]
struct Cli {
    /// Ground field: `q` or `fp:<p>`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Truncation radius for infinite templates.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Enumeration bound for semiperfectness certificates.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Print the machine report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check of a spec file.
    Run {
        spec: PathBuf,
        /// Also write the machine report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in suite: `paper-theorems` or `randomized`.
    Suite {
        name: String,
        /// Largest dimension of generated objects (randomized suite).
        #[arg(long, default_value_t = 4)]
        dims: usize,
        /// Instances per check (randomized suite).
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dual of an object as a spec block.
    Dualize { spec: PathBuf, object: String },
    /// Print the unitalization of an algebra.
    Unitalize { spec: PathBuf, object: String },
    /// Print the counitalization of a coalgebra.
    Counitalize { spec: PathBuf, object: String },
    /// Combinatorial semiperfectness of a quiver, poset or template.
    Semiperfect {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_side)]
        side: Option<Hand>,
    },
    /// Left coreflexivity through the rational dual.
    Coreflexive {
        #[command(flatten)]
        target: Target,
    },
}

/// Either an object of a spec file or a named template.
#[derive(clap::Args)]
struct Target {
    #[arg(required_unless_present = "template")]
    spec: Option<PathBuf>,
    #[arg(requires = "spec")]
    object: Option<String>,
    /// e.g. `integer-line`, `ray`, `star`, `star-4`, `single-loop`, `natural-chain`.
    #[arg(long, conflicts_with = "spec")]
    template: Option<String>,
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    FieldSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_side(s: &str) -> std::result::Result<Hand, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn with_article(kind: &str) -> String {
    let article = if kind.starts_with(['a', 'e', 'i', 'o', 'u']) { "an" } else { "a" };
    format!("{article} {kind}")
}

/// Failures of the input itself, as opposed to failing checks.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &Path, cli: &Cli) -> std::result::Result<SpecDocument, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    SpecDocument::parse(&text, cli.field, cli.seed).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit_report(report: &Report, cli: &Cli, out: Option<&Path>) -> std::result::Result<ExitCode, InputError> {
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(path) = out {
        fs::write(path, report.to_json()).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit_block(block: Value) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(&block).expect("blocks serialize"));
    ExitCode::SUCCESS
}

fn object<'a>(doc: &'a SpecDocument, id: &str) -> std::result::Result<&'a Object, InputError> {
    Ok(doc.object(id)?)
}

fn dualize(doc: &SpecDocument, id: &str) -> Result<Value> {
    Ok(match doc.object(id)? {
        Object::Algebra(a) => coalgebra_block(&finite_dual_findim(a)),
        Object::Coalgebra(c) => algebra_block(&dual_algebra(c)),
        // the finite dual of the path algebra is the path coalgebra
        Object::Quiver(q) => coalgebra_block(&q.path_coalgebra(doc.field, q.exact_max_len()?)),
        Object::Poset(p) => coalgebra_block(&p.incidence_coalgebra(doc.field)),
        Object::Bialgebra(h) => {
            let d = bialgebra_dual(h)?;
            json!({"algebra": algebra_block(&d.algebra), "coalgebra": coalgebra_block(&d.coalgebra)})
        }
        other => return Err(Error::Invalid(format!("cannot dualize objects of type {}", other.kind()))),
    })
}

/// A one-check document for the `semiperfect` and `coreflexive` verbs.
fn target_document(cli: &Cli, target: &Target, check: &str, params: serde_json::Map<String, Value>) -> std::result::Result<(SpecDocument, String), InputError> {
    let (mut doc, id, source) = match (&target.spec, &target.template) {
        (Some(path), _) => {
            let id = target.object.clone().ok_or_else(|| InputError("missing object id after the spec file".into()))?;
            (load(path, cli)?, id, path.display().to_string())
        }
        (None, Some(kind)) => {
            let radius = cli.radius.unwrap_or(4);
            let block = if QuiverTemplate::from_name(kind).is_ok() {
                json!({"type": "quiver-template", "kind": kind, "radius": radius})
            } else if PosetTemplate::from_name(kind).is_ok() {
                json!({"type": "poset-template", "kind": kind, "radius": radius})
            } else {
                return Err(InputError(format!("unknown template `{kind}`")));
            };
            let text = json!({"objects": {kind.as_str(): block}}).to_string();
            (SpecDocument::parse(&text, cli.field, cli.seed)?, kind.clone(), format!("template:{kind}"))
        }
        (None, None) => return Err(InputError("give a spec file and object, or --template".into())),
    };
    object(&doc, &id)?;
    doc.checks = vec![CheckSpec { check: check.into(), objects: vec![id], params }];
    Ok((doc, source))
}

fn execute(cli: &Cli) -> std::result::Result<ExitCode, InputError> {
    match &cli.command {
        Command::Run { spec, out } => {
            let doc = load(spec, cli)?;
            let report = run_document(&doc, &spec.display().to_string())?;
            emit_report(&report, cli, out.as_deref())
        }
        Command::Suite { name, dims, trials, out } => {
            let name: SuiteName = name.parse()?;
            let knobs = SuiteKnobs { seed: cli.seed.unwrap_or(0), dims: *dims, trials: *trials, field: cli.field };
            emit_report(&builtin_suite(name, knobs)?, cli, out.as_deref())
        }
        Command::Dualize { spec, object } => Ok(emit_block(dualize(&load(spec, cli)?, object)?)),
        Command::Unitalize { spec, object: id } => {
            let doc = load(spec, cli)?;
            match object(&doc, id)? {
                Object::Algebra(a) => Ok(emit_block(algebra_block(&unitalize(a).0))),
                other => Err(InputError(format!("`{id}` is not an algebra but {}", with_article(other.kind())))),
            }
        }
        Command::Counitalize { spec, object: id } => {
            let doc = load(spec, cli)?;
            match object(&doc, id)? {
                Object::Coalgebra(c) => Ok(emit_block(coalgebra_block(&counitalize(c).0))),
                other => Err(InputError(format!("`{id}` is not a coalgebra but {}", with_article(other.kind())))),
            }
        }
        Command::Semiperfect { target, side } => {
            let mut params = serde_json::Map::new();
            if let Some(b) = cli.bound {
                params.insert("bound".into(), json!(b));
            }
            if let Some(s) = side {
                params.insert("side".into(), json!(s.name()));
            }
            if let (Some(r), Some(_)) = (cli.radius, &target.spec) {
                params.insert("radius".into(), json!(r));
            }
            let (doc, source) = target_document(cli, target, "semiperfect", params)?;
            emit_report(&run_document(&doc, &source)?, cli, None)
        }
        Command::Coreflexive { target } => {
            let mut params = serde_json::Map::new();
            if let Some(b) = cli.bound {
                params.insert("bound".into(), json!(b));
            }
            if let (Some(r), Some(_)) = (cli.radius, &target.spec) {
                params.insert("radius".into(), json!(r));
            }
            let (doc, source) = target_document(cli, target, "left-coreflexive", params)?;
            emit_report(&run_document(&doc, &source)?, cli, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
