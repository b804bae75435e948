use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use planeaut::bounds::{arakawa, hurwitz, oikawa, BoundReport};
use planeaut::classify::{classify, verify_action, ClassificationReport};
use planeaut::curves::{family_form, make_family, Family};
use planeaut::formats::{emit_generators, emit_polynomial, parse_generators, parse_polynomial};
use planeaut::polyring::{is_smooth, SmoothnessVerdict, TernaryForm};
use planeaut::projgroup::{closure, fingerprint, GroupLabel, ProjTransform, DEFAULT_CAP};
use planeaut::suites::{run_suite, Suite, SuiteReport};
use planeaut::{parse_scalar, Error};

#[derive(Parser, Debug)]
#[command(name = "planeaut", version, about = "Automorphism groups of smooth plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group or element order explored before giving up.
    #[arg(long, env = "PLANEAUT_CAP", default_value_t = DEFAULT_CAP, global = true,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,
    /// Embed every input into Q(zeta_N) before computing.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    conductor: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the polynomial file of a named family.
    Curve {
        family: Family,
        #[arg(long = "d")]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Also write the standard generators to this file.
        #[arg(long)]
        gens_out: Option<PathBuf>,
        /// Skip the parameter and smoothness checks.
        #[arg(long)]
        no_check: bool,
    },
    /// Close a set of generators and report the group.
    Closure {
        #[arg(long)]
        gens: PathBuf,
    },
    /// Classify a group acting on a curve.
    Classify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Decide smoothness, with a singular point when there is one.
    Smooth {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Evaluate a group-order bound for a given genus.
    Bounds(BoundsArgs),
    /// Run a verification suite.
    Verify { suite: Suite },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct BoundsGroup {
    #[arg(long)]
    hurwitz: bool,
    #[arg(long, value_name = "K")]
    oikawa: Option<u64>,
    #[arg(long, num_args = 3, value_names = ["K1", "K2", "K3"])]
    arakawa: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    genus: u64,
    #[command(flatten)]
    which: BoundsGroup,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Core(e) | CliError::Input { source: e, .. } => e,
            CliError::Failed => return 1,
            CliError::Io { .. } | CliError::Usage(_) => return 2,
        };
        match core {
            Error::CapExceeded { .. } | Error::InfiniteOrder(_) => 3,
            Error::NotAutomorphism { .. } | Error::Unclassified(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Output {
    text: String,
    json: String,
    ok: bool,
}

impl Output {
    fn new(text: String, value: &impl Serialize) -> Self {
        Output {
            text,
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            ok: true,
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_curve(path: &Path, conductor: Option<u32>) -> CliResult<TernaryForm> {
    let with_path = |source| CliError::Input {
        path: path.to_owned(),
        source,
    };
    let f = parse_polynomial(&read(path)?).map_err(with_path)?;
    match conductor {
        Some(n) => f.embed_to(n).map_err(with_path),
        None => Ok(f),
    }
}

fn load_gens(path: &Path, conductor: Option<u32>) -> CliResult<Vec<ProjTransform>> {
    let with_path = |source| CliError::Input {
        path: path.to_owned(),
        source,
    };
    let gens = parse_generators(&read(path)?).map_err(with_path)?;
    match conductor {
        Some(n) => gens.iter().map(|g| g.embed_to(n)).collect::<Result<_, _>>().map_err(with_path),
        None => Ok(gens),
    }
}

#[derive(Serialize)]
struct CurveOutput {
    family: Family,
    degree: u32,
    polynomial: String,
    generators: Option<String>,
}

fn cmd_curve(
    family: Family,
    degree: u32,
    lambda: Option<&str>,
    gens_out: Option<&Path>,
    no_check: bool,
    conductor: Option<u32>,
) -> CliResult<Output> {
    let lambda = lambda
        .map(|s| parse_scalar(s, conductor.unwrap_or(1)))
        .transpose()
        .map_err(|msg| CliError::Usage(format!("--lambda: {msg}")))?;
    let (form, gens) = if no_check {
        (family_form(family, degree, lambda.as_ref())?, Vec::new())
    } else {
        let inst = make_family(family, degree, lambda)?;
        (inst.form, inst.generators)
    };
    let polynomial = emit_polynomial(&form);
    let generators = (!gens.is_empty()).then(|| emit_generators(&gens));
    if let Some(path) = gens_out {
        let text = generators
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("no generators are known for {family} here")))?;
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
    }
    let out = CurveOutput {
        family,
        degree,
        polynomial: polynomial.clone(),
        generators,
    };
    Ok(Output::new(polynomial, &out))
}

#[derive(Serialize)]
struct ClosureOutput {
    order: usize,
    element_orders: Vec<(usize, usize)>,
    label: GroupLabel,
}

fn cmd_closure(gens: &Path, cap: usize, conductor: Option<u32>) -> CliResult<Output> {
    let g = closure(&load_gens(gens, conductor)?, cap)?;
    let out = ClosureOutput {
        order: g.order(),
        element_orders: g.order_multiset(),
        label: fingerprint(&g),
    };
    let multiset: Vec<String> = out.element_orders.iter().map(|(k, c)| format!("{k}^{c}")).collect();
    let text = format!(
        "order {}\nelement orders {}\nstructure {}\n",
        out.order,
        multiset.join(" "),
        out.label
    );
    Ok(Output::new(text, &out))
}

fn classification_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let cases: Vec<String> = r.cases.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "degree {}\norder {}", r.degree, r.order);
    let _ = writeln!(s, "cases {}\nprimary {}", cases.join(" "), r.primary);
    if let Some(w) = &r.witnesses.on_curve {
        if let Some(p) = &w.point {
            let _ = writeln!(s, "fixed point on the curve {p}");
        }
    }
    if let Some(w) = r.witnesses.off_curve.iter().find(|w| w.claims.all()) {
        let _ = writeln!(s, "fixed point off the curve {}, invariant line {}", w.point, w.line);
    }
    if let Some(label) = &r.witnesses.primitive {
        let _ = writeln!(s, "primitive {label}");
    }
    for b in &r.bounds {
        let verdict = if b.passes { "ok" } else { "VIOLATED" };
        let _ = writeln!(s, "bound {} {} {verdict}", b.case, b.bound);
    }
    for flag in &r.flags {
        let _ = writeln!(s, "note {flag}");
    }
    let _ = writeln!(s, "consistent {}", r.consistent);
    s
}

fn cmd_classify(curve: &Path, gens: &Path, cap: usize, conductor: Option<u32>) -> CliResult<Output> {
    let f = load_curve(curve, conductor)?;
    let g = verify_action(&f, &load_gens(gens, conductor)?, cap)?.group;
    let r = classify(&f, &g, cap)?;
    let mut out = Output::new(classification_text(&r), &r);
    out.ok = r.consistent;
    Ok(out)
}

fn cmd_smooth(curve: &Path, conductor: Option<u32>) -> CliResult<Output> {
    let f = load_curve(curve, conductor)?;
    if f.degree() == 0 || f.is_zero() {
        return Err(CliError::Usage("the curve must be a nonzero form of positive degree".into()));
    }
    let v: SmoothnessVerdict = is_smooth(&f);
    let text = match (&v.smooth, &v.witness) {
        (true, _) => "smooth\n".to_string(),
        (false, Some(p)) => format!("singular at {p}\n"),
        (false, None) => "singular (no explicit singular point)\n".to_string(),
    };
    Ok(Output::new(text, &v))
}

fn cmd_bounds(args: &BoundsArgs) -> CliResult<Output> {
    let g = args.genus;
    let r: BoundReport = match (&args.which.oikawa, &args.which.arakawa) {
        (Some(k), _) => oikawa(g, *k)?,
        (_, Some(k)) => arakawa(g, [k[0], k[1], k[2]])?,
        _ => hurwitz(g)?,
    };
    Ok(Output::new(format!("{}\n", r.value), &r))
}

fn cmd_verify(suite: Suite, cap: usize) -> CliResult<Output> {
    let reports: Vec<SuiteReport> = run_suite(suite, cap)?;
    let mut text = String::new();
    for r in &reports {
        for c in &r.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "{verdict} {}: {} ({})", r.suite, c.name, c.detail);
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "some checks failed" });
    let mut out = Output::new(text, &reports);
    out.ok = ok;
    Ok(out)
}

fn run(cli: &Cli) -> CliResult<Output> {
    let conductor = cli.conductor;
    match &cli.command {
        Command::Curve {
            family,
            degree,
            lambda,
            gens_out,
            no_check,
        } => cmd_curve(*family, *degree, lambda.as_deref(), gens_out.as_deref(), *no_check, conductor),
        Command::Closure { gens } => cmd_closure(gens, cli.cap, conductor),
        Command::Classify { curve, gens } => cmd_classify(curve, gens, cli.cap, conductor),
        Command::Smooth { curve } => cmd_smooth(curve, conductor),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify { suite } => cmd_verify(*suite, cli.cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match cli.format {
            Format::Text => print!("{}", out.text),
            Format::Json => println!("{}", out.json),
        }
        if out.ok {
            Ok(())
        } else {
            Err(CliError::Failed)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
