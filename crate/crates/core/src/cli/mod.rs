//! The `qboson` command line.
//!
//! Exit statuses: 0 pass, 1 usage/IO/parse error, 2 infeasible spec,
//! 3 verification failure.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conditions::{ac_nogo_probe, check_matrix_conditions, verify_realization};
use crate::deformation::{
    energy, energy_recurrence_next, recurrence_rhs, three_term_next, StructureFunction,
};
use crate::error::Error;
use crate::quasiboson::PhiFamily;
use crate::report::{Check, VerificationReport, DEFAULT_TOLERANCE};
use crate::solver::{self, construct_family, rank_to_f, FamilySpec};

pub use format::{PhiFile, ReportFile, ReportMetadata};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qboson", version, about = "Composite quasi-bosons and deformed oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an admissible Φ family and write it as JSON.
    Construct(ConstructArgs),
    /// Check a Φ family against the matrix conditions and the oscillator realization.
    Verify(VerifyArgs),
    /// Tabulate a structure function, its energies and recurrence residuals.
    Table(TableArgs),
    /// Run the Arik–Coon no-go probe.
    Nogo(NogoArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub d_a: usize,
    pub d_b: usize,
    /// Number of quasi-boson modes.
    pub k: usize,
    /// Common rank of every Φ.
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("deformation").required(true).args(["m", "auto_f"]))]
pub struct VerifyArgs {
    pub phi_path: PathBuf,
    /// Rank m; the structure function uses f = 2/m.
    #[arg(long)]
    pub m: Option<usize>,
    /// Estimate f = 2 Tr((Φ†Φ)²) from the file and cross-check it across modes.
    #[arg(long)]
    pub auto_f: bool,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFamily {
    Quadratic,
    Ac,
    Undeformed,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub family: TableFamily,
    /// f for `quadratic`, q for `ac`; ignored for `undeformed`.
    #[arg(allow_negative_numbers = true)]
    pub parameter: f64,
    #[arg(conflicts_with = "n_max_flag")]
    pub n_max: Option<u32>,
    #[arg(long = "n-max", id = "n_max_flag")]
    pub n_max_flag: Option<u32>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["family", "random"]))]
pub struct NogoArgs {
    /// Φ family file to probe.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// COUNT D SEED: probe COUNT random normalized Φ on D×D.
    #[arg(long, num_args = 3, value_names = ["COUNT", "D", "SEED"])]
    pub random: Option<Vec<u64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible { .. } => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Outcome of a command that ran to completion.
pub struct Outcome {
    pub code: i32,
    /// Diagnostic lines for standard error.
    pub notes: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&a, stdout),
        Command::Verify(a) => cmd_verify(&a, stdout),
        Command::Table(a) => cmd_table(&a, stdout),
        Command::Nogo(a) => cmd_nogo(&a, stdout),
    };
    match result {
        Ok(outcome) => {
            for n in outcome.notes {
                let _ = writeln!(stderr, "{n}");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn read_family(path: &Path) -> Result<PhiFamily, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    PhiFile::parse(&text)
        .and_then(|f| f.to_family())
        .map_err(|e| CliError::usage(format!("failed to parse {}: {e}", path.display())))
}

fn finish_report(
    report: VerificationReport,
    seed: Option<u64>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    mut notes: Vec<String>,
) -> Result<Outcome, CliError> {
    let passed = report.overall_passed;
    for c in report.failures() {
        notes.push(format!(
            "FAILED {}: residual {:.3e} > {:.1e} ({})",
            c.name, c.max_residual, c.tolerance, c.context
        ));
    }
    emit(&ReportFile::new(report, ReportMetadata::now(seed)).to_json(), out, stdout)?;
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAILED },
        notes,
    })
}

pub fn cmd_construct(args: &ConstructArgs, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = FamilySpec::new(args.d_a, args.d_b, args.k, args.m, args.seed);
    let family = construct_family(&spec)?;
    emit(&PhiFile::from_family(&family).to_json(), args.out.as_deref(), stdout)?;
    Ok(Outcome {
        code: EXIT_OK,
        notes: Vec::new(),
    })
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let family = read_family(&args.phi_path)?;
    let tol = args.tolerance;
    let mut notes = Vec::new();
    let mut report = VerificationReport::new();
    let f = match args.m {
        Some(m) => rank_to_f(m)?,
        None => {
            let fs: Vec<f64> = family.members().iter().map(|p| p.implied_f()).collect();
            let spread = fs.iter().map(|x| (x - fs[0]).abs()).fold(0.0, f64::max);
            let check = Check::new(
                "f consistency across modes",
                spread,
                tol,
                format!("f_α = 2 Tr((Φ_α†Φ_α)²) = {fs:?}"),
            );
            if !check.passed {
                notes.push(format!("f mismatch across modes: {fs:?}"));
                report.push(Check {
                    context: format!("f mismatch across modes: {}", check.context),
                    ..check
                });
            } else {
                report.push(check);
            }
            fs[0]
        }
    };
    report.merge(check_matrix_conditions(&family, f, tol));
    report.merge(verify_realization(
        &family,
        &StructureFunction::quadratic(f),
        args.n_max,
        tol,
    )?);
    finish_report(report, None, args.out.as_deref(), stdout, notes)
}

fn fmt_residual(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"))
}

pub fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let n_max = args.n_max.or(args.n_max_flag).unwrap_or(4);
    let sf = match args.family {
        TableFamily::Quadratic => StructureFunction::quadratic(args.parameter),
        TableFamily::Ac => StructureFunction::arik_coon(args.parameter),
        TableFamily::Undeformed => StructureFunction::Undeformed,
    };
    let phis: Vec<f64> = (0..=n_max).map(|n| sf.eval(n)).collect();
    let energies: Vec<f64> = (0..=n_max).map(|n| energy(n, &sf)).collect();
    let mut text = format!(
        "{:>4} {:>22} {:>22} {:>14} {:>19} {:>19}\n",
        "n", "phi(n)", "E(n)", "eq16_residual", "three_term_residual", "energy_rec_residual"
    );
    for n in 0..=n_max as usize {
        let eq16 = (n >= 3).then(|| (phis[n] - recurrence_rhs(&phis[..n])).abs());
        let three = (n >= 3).then(|| {
            let pred = three_term_next(phis[n - 2], phis[n - 1], n as i64 - 1).expect("n-1 >= 2");
            (phis[n] - pred).abs()
        });
        let erec = (n >= 2).then(|| {
            let pred = energy_recurrence_next(energies[n - 2], energies[n - 1], n as i64 - 1)
                .expect("n-1 >= 1");
            (energies[n] - pred).abs()
        });
        text.push_str(&format!(
            "{:>4} {:>22.12} {:>22.12} {:>14} {:>19} {:>19}\n",
            n,
            phis[n],
            energies[n],
            fmt_residual(eq16),
            fmt_residual(three),
            fmt_residual(erec)
        ));
    }
    emit(&text, None, stdout)?;
    Ok(Outcome {
        code: EXIT_OK,
        notes: Vec::new(),
    })
}

pub fn cmd_nogo(args: &NogoArgs, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.q == 1.0 {
        return Err(CliError::usage("q=1 is not a deformation"));
    }
    let mut report = VerificationReport::new();
    let seed = match (&args.family, &args.random) {
        (Some(path), _) => {
            let family = read_family(path)?;
            report.merge(ac_nogo_probe(&family, args.q, args.tolerance)?);
            None
        }
        (None, Some(r)) => {
            let (count, d, seed) = (r[0] as usize, r[1] as usize, r[2]);
            for (i, phi) in solver::random_normalized_phis(d, count, seed)?.into_iter().enumerate() {
                let single = PhiFamily::new(vec![phi])?;
                for mut c in ac_nogo_probe(&single, args.q, args.tolerance)?.checks {
                    c.name = format!("ac no-go sample {i}");
                    report.push(c);
                }
            }
            Some(seed)
        }
        (None, None) => return Err(CliError::usage("one of --family or --random is required")),
    };
    let min_r2 = report.checks.iter().map(|c| c.max_residual).fold(f64::INFINITY, f64::min);
    let notes = vec![format!(
        "probed {} modes at q = {}; min r2 = {min_r2:.3e}",
        report.checks.len(),
        args.q
    )];
    finish_report(report, seed, args.out.as_deref(), stdout, notes)
}
