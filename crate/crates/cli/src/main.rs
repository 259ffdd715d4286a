use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use e6_core::cayley::{classify, dirac_solve, psquare_decompose};
use e6_core::generators::Group;
use e6_core::octonion::{multiplication_table, BASIS_LABELS};
use e6_core::transform::AnyNestedMap;
use e6_core::verify::{self, Check, FullReport, GroupReport, Report, Settings};
use e6_core::{Execution, Hermitian2, JordanMatrix, Octonion, Slot};

#[derive(Parser)]
#[command(name = "e6", version)]
#[command(about = "Numerical checks for octonionic Jordan matrices and the E6 generator roster")]
struct Cli {
    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Absolute tolerance for algebraic identities
    #[arg(long, global = true, default_value_t = e6_core::IDENTITY_TOL)]
    tol: f64,

    /// Relative singular value threshold for numerical rank
    #[arg(long, global = true, default_value_t = e6_core::generators::DEFAULT_RANK_TOL)]
    rank_tol: f64,

    /// Central difference step for Lie elements
    #[arg(long, global = true, default_value_t = e6_core::generators::DEFAULT_H_STEP)]
    h_step: f64,

    /// Random trials per sampled check
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Run on the calling thread only
    #[arg(long, global = true)]
    sequential: bool,

    /// Print wall time to stderr
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the signed octonion multiplication table
    Table,
    /// Check rank, admissibility and preservation laws for a group roster
    Verify {
        /// E6, F4, SO91, SO9, SO8, SO7 or G2
        group: Group,
        /// Slot used by single-slot groups
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..3))]
        slot: u8,
    },
    /// Spectral decomposition of a Jordan matrix read from JSON
    Decompose { file: PathBuf },
    /// Solve P = ±θθ† for a null 2×2 momentum read from JSON
    Dirac { file: PathBuf },
    /// SO(8) slot actions, the four-flip G2 curve and span identifications
    Triality,
    /// Every group, triality and the Cayley spinor suite
    ReportAll,
    /// Apply a nested map to a 2×2 or 3×3 Hermitian matrix
    Apply { map: PathBuf, matrix: PathBuf },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

impl From<e6_core::Error> for Failure {
    fn from(e: e6_core::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

struct Output {
    format: Format,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let settings = Settings {
        tol: cli.tol,
        rank_tol: cli.rank_tol,
        h_step: cli.h_step,
        seed: cli.seed,
        trials: cli.trials,
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let mut out = Output {
        format: cli.format,
        pass: true,
    };
    match &cli.command {
        Command::Table => table(&mut out),
        Command::Verify { group, slot } => {
            let slot = Slot::try_from(*slot as usize)?;
            let report = verify::verify_group(*group, slot, &settings, exec)?;
            out.pass = report.pass;
            emit_group_report(&out, &report)
        }
        Command::Decompose { file } => decompose(&mut out, file),
        Command::Dirac { file } => dirac(&mut out, file, &settings),
        Command::Triality => {
            let report = verify::triality_suite(&settings, exec)?;
            out.pass = report.pass;
            emit_report(&out, &report)
        }
        Command::ReportAll => {
            let report = verify::report_all(&settings, exec)?;
            out.pass = report.pass;
            emit_full_report(&out, &report)
        }
        Command::Apply { map, matrix } => apply(&mut out, map, matrix),
    }?;
    Ok(out.pass)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)
        .map_err(|e| Failure::Check(e.to_string()))?;
    writeln!(stdout).map_err(|e| Failure::Check(e.to_string()))
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<(), Failure> {
    let mut w = csv_writer();
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Check(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Check(e.to_string()))
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    name: &'a str,
    expected: &'a str,
    observed: f64,
    tolerance: f64,
    pass: bool,
}

fn check_rows<'a>(suite: &'a str, checks: &'a [Check]) -> impl Iterator<Item = CheckRow<'a>> {
    checks.iter().map(move |c| CheckRow {
        suite,
        name: &c.name,
        expected: &c.expected,
        observed: c.observed,
        tolerance: c.tolerance,
        pass: c.pass,
    })
}

fn emit_group_report(out: &Output, report: &GroupReport) -> Result<(), Failure> {
    match out.format {
        Format::Json => write_json(report),
        Format::Csv => write_csv(check_rows(&report.group, &report.checks)),
    }
}

fn emit_report(out: &Output, report: &Report) -> Result<(), Failure> {
    match out.format {
        Format::Json => write_json(report),
        Format::Csv => write_csv(check_rows(&report.suite, &report.checks)),
    }
}

fn emit_full_report(out: &Output, report: &FullReport) -> Result<(), Failure> {
    match out.format {
        Format::Json => write_json(report),
        Format::Csv => write_csv(
            report
                .groups
                .iter()
                .flat_map(|r| check_rows(&r.group, &r.checks))
                .chain(report.suites.iter().flat_map(|r| check_rows(&r.suite, &r.checks))),
        ),
    }
}

#[derive(Serialize)]
struct TableOutput {
    basis: [&'static str; 8],
    /// Entry `±(c + 1)` means `e_row · e_col = ±e_c`.
    table: [[i8; 8]; 8],
}

fn table(out: &mut Output) -> Result<(), Failure> {
    let table = multiplication_table();
    match out.format {
        Format::Json => write_json(&TableOutput {
            basis: BASIS_LABELS,
            table,
        }),
        Format::Csv => {
            let mut w = csv_writer();
            let err = |e: csv::Error| Failure::Check(e.to_string());
            let mut header = vec![""];
            header.extend(BASIS_LABELS);
            w.write_record(&header).map_err(err)?;
            for (label, row) in BASIS_LABELS.iter().zip(table) {
                let mut record = vec![label.to_string()];
                record.extend(row.iter().map(|&v| signed_label(v)));
                w.write_record(&record).map_err(err)?;
            }
            w.flush().map_err(|e| Failure::Check(e.to_string()))
        }
    }
}

fn signed_label(v: i8) -> String {
    let label = BASIS_LABELS[(v.unsigned_abs() - 1) as usize];
    if v < 0 {
        format!("-{label}")
    } else {
        label.to_string()
    }
}

#[derive(Serialize)]
struct DecomposeOutput {
    lambdas: Vec<f64>,
    multiplicities: Vec<usize>,
    projectors: Vec<JordanMatrix>,
    p: usize,
    class: usize,
    residuals: e6_core::cayley::DecompositionResiduals,
    pass: bool,
}

#[derive(Serialize)]
struct LambdaRow {
    lambda: f64,
    multiplicity: usize,
    p: usize,
    class: usize,
}

fn decompose(out: &mut Output, file: &Path) -> Result<(), Failure> {
    let a: JordanMatrix = read_json(file)?;
    let d = psquare_decompose(&a);
    let r = d.residuals(&a);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let bound = e6_core::cayley::DEGENERACY_TOL;
    let class = classify(&a);
    out.pass = r.reconstruction <= bound * scale
        && r.orthogonality <= bound
        && r.eigen <= bound * scale
        && r.idempotency <= bound
        && class == d.p;
    match out.format {
        Format::Json => write_json(&DecomposeOutput {
            lambdas: d.pieces.iter().map(|p| p.lambda).collect(),
            multiplicities: d.pieces.iter().map(|p| p.multiplicity).collect(),
            projectors: d.pieces.iter().map(|p| p.projector).collect(),
            p: d.p,
            class,
            residuals: r,
            pass: out.pass,
        }),
        Format::Csv => write_csv(d.pieces.iter().map(|piece| LambdaRow {
            lambda: piece.lambda,
            multiplicity: piece.multiplicity,
            p: d.p,
            class,
        })),
    }
}

/// Accepts either `{"P": {...}}` or a bare momentum.
#[derive(Deserialize)]
#[serde(untagged)]
enum DiracInput {
    Wrapped {
        #[serde(rename = "P")]
        p: Hermitian2,
    },
    Bare(Hermitian2),
}

#[derive(Serialize)]
struct DiracOutput {
    theta: [Octonion; 2],
    sign: f64,
    residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ThetaRow {
    component: usize,
    sign: f64,
    residual: f64,
    #[serde(flatten)]
    coeffs: Coeffs,
}

#[derive(Serialize)]
struct Coeffs {
    #[serde(rename = "1")]
    c0: f64,
    i: f64,
    j: f64,
    k: f64,
    kl: f64,
    jl: f64,
    il: f64,
    l: f64,
}

impl From<Octonion> for Coeffs {
    fn from(x: Octonion) -> Self {
        let [c0, i, j, k, kl, jl, il, l] = x.0;
        Coeffs { c0, i, j, k, kl, jl, il, l }
    }
}

fn dirac(out: &mut Output, file: &Path, s: &Settings) -> Result<(), Failure> {
    let p = match read_json::<DiracInput>(file)? {
        DiracInput::Wrapped { p } | DiracInput::Bare(p) => p,
    };
    let sol = dirac_solve(&p, s.tol)?;
    let residual = sol.residual(&p);
    out.pass = residual <= s.tol * p.norm().max(1.0);
    match out.format {
        Format::Json => write_json(&DiracOutput {
            theta: sol.theta,
            sign: sol.sign,
            residual,
            pass: out.pass,
        }),
        Format::Csv => write_csv(sol.theta.iter().enumerate().map(|(component, &t)| ThetaRow {
            component,
            sign: sol.sign,
            residual,
            coeffs: t.into(),
        })),
    }
}

fn apply(out: &mut Output, map: &Path, matrix: &Path) -> Result<(), Failure> {
    let nm: AnyNestedMap = read_json(map)?;
    let text = fs::read_to_string(matrix)
        .map_err(|e| Failure::Usage(format!("{}: {e}", matrix.display())))?;
    let parse_err = |e: serde_json::Error| Failure::Usage(format!("{}: {e}", matrix.display()));
    let dims = |e: e6_core::Error| Failure::Usage(format!("{}: {e}", matrix.display()));
    if out.format == Format::Csv {
        return Err(Failure::Usage("apply only supports JSON output".into()));
    }
    match nm.dim() {
        3 => {
            let x: JordanMatrix = serde_json::from_str(&text).map_err(parse_err)?;
            write_json(&nm.apply_jordan(&x).map_err(dims)?)
        }
        _ => {
            let x: Hermitian2 = serde_json::from_str(&text).map_err(parse_err)?;
            write_json(&nm.apply_hermitian2(&x).map_err(dims)?)
        }
    }
}
