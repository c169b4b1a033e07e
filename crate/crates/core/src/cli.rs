//! Command-line front end. Every command writes CSV to standard output and
//! diagnostics to standard error.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::moldb::{self, MoleculeFile};
use crate::oracle::{verify_against, VerificationReport};
use crate::spectrum::{energy_closed_form_cm1, spectrum_table, Molecule, QuantumState};
use crate::units::{cm1_to_ev, CODATA_2018};
use crate::wavefunc::{normalize, GridSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// The (n, l) rows of the published energy table, in order.
pub const TABLE2_STATES: [(u32, u32); 17] = [
    (0, 0),
    (1, 0),
    (1, 1),
    (2, 0),
    (2, 1),
    (2, 2),
    (4, 0),
    (4, 1),
    (4, 2),
    (4, 3),
    (4, 4),
    (5, 0),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
    (5, 5),
];

#[derive(Debug, Parser)]
#[command(
    name = "pseudoharmonic",
    version,
    about = "Bound states of the pseudoharmonic potential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the physical constants in use.
    Constants,
    /// Closed-form energies for n ≤ n-max, l ≤ l-max.
    Spectrum(SpectrumArgs),
    /// Energies of the four builtin molecules at the tabulated states.
    Table2(FormatArgs),
    /// Sample a normalized radial function u(r).
    Wavefunction(WavefunctionArgs),
    /// Compare the closed form with the Numerov shooting solver.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct FormatArgs {
    /// Significant digits for floating-point cells.
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,
}

#[derive(Debug, Args)]
struct MoleculeArgs {
    /// Molecule name (builtin, or from --molecules).
    #[arg(long)]
    molecule: String,
    /// Molecule parameter file.
    #[arg(long)]
    molecules: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Units {
    Ev,
    Cm1,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: MoleculeArgs,
    #[arg(long)]
    n_max: u32,
    #[arg(long)]
    l_max: u32,
    #[arg(long, value_enum, default_value = "ev")]
    units: Units,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Debug, Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    source: MoleculeArgs,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    /// Defaults to the lower edge of the normalization window (Å).
    #[arg(long)]
    r_min: Option<f64>,
    /// Defaults to the upper edge of the normalization window (Å).
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: MoleculeArgs,
    #[arg(long)]
    n_max: u32,
    #[arg(long)]
    l_max: u32,
    #[arg(long, default_value_t = 1e-6)]
    tol_rel: f64,
    /// Scale D₀ by (1 + x) for the numerical side only.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_d0: Option<f64>,
    #[command(flatten)]
    format: FormatArgs,
}

/// A cell of an [`OutputTable`].
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// CSV table with a fixed header arity.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row arity must match header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self, digits: u32) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Float(v) => format_significant(*v, digits),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Fixed notation with `digits` significant digits for moderate magnitudes,
/// scientific otherwise. Independent of locale.
pub fn format_significant(value: f64, digits: u32) -> String {
    if value == 0.0 || !value.is_finite() {
        return value.to_string();
    }
    let digits = digits.max(1) as i32;
    let exponent = value.abs().log10().floor() as i32;
    if (-5..digits).contains(&exponent) {
        let decimals = (digits - 1 - exponent).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.*e}", (digits - 1) as usize)
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence(_) | Error::SearchFailure { .. } => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Constants => Ok((constants_table(), 17, EXIT_OK)),
        Command::Spectrum(a) => cmd_spectrum(&a).map(|t| (t, a.format.digits, EXIT_OK)),
        Command::Table2(a) => Ok((table2(), a.digits, EXIT_OK)),
        Command::Wavefunction(a) => cmd_wavefunction(&a).map(|t| (t, a.format.digits, EXIT_OK)),
        Command::Verify(a) => cmd_verify(&a).map(|(t, code)| (t, a.format.digits, code)),
    };
    match result {
        Ok((table, digits, code)) => {
            if let Err(e) = out.write_all(table.render(digits).as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_NUMERIC;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn constants_table() -> OutputTable {
    let mut table = OutputTable::new(["name", "value", "unit"]);
    for (name, value, unit) in CODATA_2018.entries() {
        table.push(vec![
            Cell::Text(name.into()),
            Cell::Text(format!("{value:e}")),
            Cell::Text(unit.into()),
        ]);
    }
    table
}

fn resolve_molecule(args: &MoleculeArgs) -> Result<Molecule, Failure> {
    match &args.molecules {
        None => moldb::lookup(&args.molecule).map_err(Failure::from),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let file = MoleculeFile::parse(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            file.find(&args.molecule).cloned().ok_or_else(|| {
                Failure::usage(format!(
                    "unknown molecule '{}' in {}",
                    args.molecule,
                    path.display()
                ))
            })
        }
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<OutputTable, Failure> {
    let mol = resolve_molecule(&args.source)?;
    let rows = spectrum_table(&mol, args.n_max, args.l_max)?;
    let column = match args.units {
        Units::Ev => "energy_ev",
        Units::Cm1 => "energy_cm1",
    };
    let mut table = OutputTable::new(["n", "l", column]);
    for row in rows {
        let energy = match args.units {
            Units::Ev => row.energy_ev,
            Units::Cm1 => energy_closed_form_cm1(&mol, row.state),
        };
        table.push(vec![
            Cell::Int(row.state.n.into()),
            Cell::Int(row.state.l.into()),
            Cell::Float(energy),
        ]);
    }
    Ok(table)
}

/// Rows `(n, l)`, columns N2, CO, NO, CH in eV.
pub fn table2() -> OutputTable {
    let molecules = moldb::builtin_table();
    let mut header = vec!["n".to_string(), "l".to_string()];
    header.extend(molecules.iter().map(|m| m.name().to_string()));
    let mut table = OutputTable::new(header);
    for (n, l) in TABLE2_STATES {
        let st = QuantumState::new(n, l);
        let mut row = vec![Cell::Int(n.into()), Cell::Int(l.into())];
        row.extend(
            molecules
                .iter()
                .map(|m| Cell::Float(cm1_to_ev(energy_closed_form_cm1(m, st)))),
        );
        table.push(row);
    }
    table
}

fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<OutputTable, Failure> {
    let mol = resolve_molecule(&args.source)?;
    let window = GridSpec::default_for(&mol);
    let rf = normalize(&mol, QuantumState::new(args.n, args.l), &window)?;
    let r_min = args.r_min.unwrap_or(window.r_min);
    let r_max = args.r_max.unwrap_or(window.r_max);
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Failure::usage(format!(
            "need 0 < r-min < r-max, got r-min={r_min}, r-max={r_max}"
        )));
    }
    if args.samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    let h = (r_max - r_min) / (args.samples - 1) as f64;
    let mut table = OutputTable::new(["r_angstrom", "u"]);
    for k in 0..args.samples {
        let r = if k + 1 == args.samples {
            r_max
        } else {
            r_min + k as f64 * h
        };
        table.push(vec![Cell::Float(r), Cell::Float(rf.evaluate(r)?)]);
    }
    Ok(table)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(OutputTable, i32), Failure> {
    if !(args.tol_rel > 0.0) {
        return Err(Failure::usage("--tol-rel must be positive"));
    }
    let reference = resolve_molecule(&args.source)?;
    let numeric = match args.perturb_d0 {
        Some(x) => reference.with_scaled_d0(1.0 + x)?,
        None => reference.clone(),
    };
    let states: Vec<QuantumState> = (0..=args.n_max)
        .flat_map(|n| (0..=args.l_max).map(move |l| QuantumState::new(n, l)))
        .collect();
    let reports: Vec<VerificationReport> = states
        .par_iter()
        .map(|&st| {
            verify_against(&reference, &numeric, st).map_err(|e| Failure {
                code: EXIT_NUMERIC,
                message: format!("verification of (n={}, l={}) failed: {e}", st.n, st.l),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut table = OutputTable::new(["n", "l", "e_closed_ev", "e_numeric_ev", "rel_err", "nodes"]);
    let mut ok = true;
    for r in &reports {
        ok &= r.rel_err <= args.tol_rel && r.node_count == r.state.n as usize;
        table.push(vec![
            Cell::Int(r.state.n.into()),
            Cell::Int(r.state.l.into()),
            Cell::Float(r.e_closed),
            Cell::Float(r.e_numeric),
            Cell::Float(r.rel_err),
            Cell::Int(r.node_count as i64),
        ]);
    }
    Ok((table, if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }))
}
