use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bpw::cli::{
    classify_cmd, ope_cmd, orbit_cmd, parse_level, report_cmd, verify_cmd, ClassifyQuery, OrbitStart, Outcome,
    SuiteDescriptor, SuiteError, SuiteName,
};

#[derive(Parser)]
#[command(name = "bpw", version, about = "Exact checks for the Bershadsky-Polyakov algebra and its free-field realizations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RunOpts {
    /// Level k as an exact rational, e.g. 1 or -1/2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    level: String,
    /// Skip compared states above this conformal weight.
    #[arg(long)]
    max_weight: Option<i64>,
    /// Largest n in the special-orbit factorizations.
    #[arg(long, default_value_t = 20)]
    samples: u32,
    /// Largest |n| in orbit comparisons.
    #[arg(long, default_value_t = 50)]
    steps: u32,
    /// Decide identities in the rational-function field instead of at sample points.
    #[arg(long)]
    symbolic: bool,
    /// Randomized instances for engine-axioms.
    #[arg(long, default_value_t = 120)]
    instances: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Record elapsed milliseconds in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Same as `verify --suite singvec`.
    Singvec {
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Witnesses and top dimension of a weight, or sample points on a curve h_i = 0.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "curve")]
        point: Option<String>,
        #[arg(long)]
        curve: Option<u32>,
        #[arg(long, default_value_t = 5)]
        samples: u32,
    },
    /// Spectral-flow orbit table as CSV.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        /// vacuum, special:i or point:x,y
        #[arg(long, default_value = "vacuum", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value_t = 10)]
        steps: u32,
    },
    /// Evaluate a state expression in an algebra described by a spec file.
    Ope {
        spec: PathBuf,
        expr: PathBuf,
        /// Overrides the level of every factor that has one; may be symbolic, e.g. k'.
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
    },
    /// Summarize saved JSON reports.
    Report { paths: Vec<PathBuf> },
}

fn descriptor(name: SuiteName, o: &RunOpts) -> Result<SuiteDescriptor, SuiteError> {
    let mut d = SuiteDescriptor::new(name, parse_level(&o.level)?);
    d.max_weight = o.max_weight;
    d.samples = o.samples;
    d.steps = o.steps;
    d.symbolic = o.symbolic;
    d.instances = o.instances;
    d.seed = o.seed;
    Ok(d)
}

fn verify(name: Result<SuiteName, SuiteError>, o: &RunOpts) -> Outcome {
    match name.and_then(|n| descriptor(n, o)) {
        Ok(d) => verify_cmd(&d, o.report.as_deref(), o.timing),
        Err(e) => Outcome {
            stderr: format!("error: {e}\n"),
            code: 2,
            ..Default::default()
        },
    }
}

fn read(p: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(p).map_err(|e| Outcome {
        stderr: format!("error: {}: {e}\n", p.display()),
        code: 2,
        ..Default::default()
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Verify { suite, opts } => verify(suite.parse(), &opts),
        Cmd::Singvec { opts } => verify(Ok(SuiteName::Singvec), &opts),
        Cmd::Classify {
            level,
            point,
            curve,
            samples,
        } => {
            let q = match (point, curve) {
                (Some(p), _) => ClassifyQuery::Point(p),
                (None, Some(i)) => ClassifyQuery::Curve { i, samples },
                (None, None) => return err("classify needs --point x,y or --curve i"),
            };
            match parse_level(&level) {
                Ok(l) => classify_cmd(&l, &q),
                Err(e) => err(e),
            }
        }
        Cmd::Orbit { level, from, steps } => match (parse_level(&level), from.parse::<OrbitStart>()) {
            (Ok(l), Ok(f)) => orbit_cmd(&l, &f, steps),
            (Err(e), _) | (_, Err(e)) => err(e),
        },
        Cmd::Ope { spec, expr, level } => match (read(&spec), read(&expr)) {
            (Ok(s), Ok(e)) => ope_cmd(&s, &e, level.as_deref()),
            (Err(o), _) | (_, Err(o)) => o,
        },
        Cmd::Report { paths } => {
            let mut texts = Vec::new();
            for p in &paths {
                match read(p) {
                    Ok(t) => texts.push((p.display().to_string(), t)),
                    Err(o) => return o,
                }
            }
            report_cmd(&texts)
        }
    }
}

fn err(e: impl std::fmt::Display) -> Outcome {
    Outcome {
        stderr: format!("error: {e}\n"),
        code: 2,
        ..Default::default()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
