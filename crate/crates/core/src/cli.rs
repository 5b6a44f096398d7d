//! Command-line front end. [`run`] takes the argument list and output sinks
//! so it can be driven from tests; the binary is a thin wrapper around it.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{check_admissibility, v_minus, v_plus, Family, FamilySpec};
use crate::ladder_algebra::{commutator_eigenvalue, ladder_coefficient, Direction};
use crate::numerics::Grid;
use crate::verify::{
    fmt_g, verify_all, verify_isospectrality, verify_spec, SpectrumTable, VerificationReport,
    SPECTRUM_LEVELS, TOLERANCES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "susy-ces",
    version,
    about = "SUSY partners of the linear and radial oscillator: potentials, spectra and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate V₊ and V₋ on a uniform set of x values.
    Potential(PotentialArgs),
    /// Finite-difference spectrum of H₋ against the closed-form levels.
    Spectrum(SpectrumArgs),
    /// Run the verification suite on one spec or on the sample set.
    Verify(VerifyArgs),
    /// Admissibility verdicts over a set of ε values.
    Conditions(ConditionsArgs),
    /// Ladder coefficients and both sides of the commutator relation.
    Algebra(AlgebraArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
}

impl SpecArgs {
    fn spec(&self) -> Result<FamilySpec> {
        FamilySpec::new(self.family, self.epsilon, self.gamma, self.beta)
    }
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Args)]
struct PotentialArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Required unless --sweep is given.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// x interval as a:b; defaults to -5:5 (linear) or 0.05:5 (radial).
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    which: Which,
    /// Allow inadmissible parameters; V₋ is `nan` where u ≤ 0.
    #[arg(long)]
    force: bool,
    /// Long-format sweep, e.g. epsilon=0.5:3:0.5.
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Grid points (default 6001 linear, 6000 radial).
    #[arg(long)]
    grid_points: Option<usize>,
    /// Half-width (linear) or outer radius (radial) of the grid.
    #[arg(long, default_value_t = crate::families::DEFAULT_EXTENT)]
    extent: f64,
}

impl GridArgs {
    fn grid(&self, family: Family) -> Result<Grid> {
        if family.is_radial() {
            Grid::half_line(
                self.extent,
                self.grid_points
                    .unwrap_or(crate::families::DEFAULT_RADIAL_POINTS),
            )
        } else {
            Grid::full_line(
                self.extent,
                self.grid_points
                    .unwrap_or(crate::families::DEFAULT_LINEAR_POINTS),
            )
        }
    }
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Number of levels.
    #[arg(long, default_value_t = SPECTRUM_LEVELS)]
    n_max: usize,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Verify every spec of the built-in sample set.
    #[arg(long, conflicts_with_all = ["family", "epsilon"])]
    all: bool,
    #[arg(long, value_parser = parse_family, required_unless_present = "all")]
    family: Option<Family>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "all")]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Emit CSV instead of key=value lines.
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct ConditionsArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Comma-separated ε values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    epsilon: Vec<f64>,
    /// ε values a, a+step, … up to b, given as a:b:step.
    #[arg(long, allow_hyphen_values = true)]
    epsilon_range: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Rows n = 0..n_max-1.
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[command(flatten)]
    out: OutArgs,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("'{s}' is not a number")))
}

fn parse_interval(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("expected a:b, got '{s}'")))?;
    let (a, b) = (parse_number(a)?, parse_number(b)?);
    if !(b > a) {
        return Err(Error::InvalidParameter(format!("empty interval {a}:{b}")));
    }
    Ok((a, b))
}

/// a:b:step → a, a+step, … ≤ b.
fn parse_steps(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(Error::InvalidParameter(format!(
            "expected a:b:step, got '{s}'"
        )));
    };
    let (a, b, step) = (parse_number(a)?, parse_number(b)?, parse_number(step)?);
    if !(step > 0.0) || b < a {
        return Err(Error::InvalidParameter(format!("bad range {s}")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| a + k as f64 * step).collect())
}

fn linspace(a: f64, b: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i + 1 == points {
                        b
                    } else {
                        a + i as f64 * step
                    }
                })
                .collect()
        }
    }
}

/// Outcome of a subcommand: the text to emit and the exit code.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

fn require_admissible(spec: &FamilySpec) -> Result<()> {
    let adm = check_admissibility(spec);
    if adm.admissible {
        Ok(())
    } else {
        Err(Error::Inadmissible(adm.reasons))
    }
}

/// (V₋ cell, singular flag) with `nan` wherever V₋ cannot be evaluated.
fn minus_cell(spec: &FamilySpec, x: f64) -> (String, u8) {
    match v_minus(spec, x) {
        Ok(v) if v.is_finite() => (fmt_g(v), 0),
        _ => ("nan".into(), 1),
    }
}

fn cmd_potential(a: &PotentialArgs) -> Result<Output> {
    let (lo, hi) = match &a.range {
        Some(r) => parse_interval(r)?,
        None if a.family.is_radial() => (0.05, 5.0),
        None => (-5.0, 5.0),
    };
    if a.points == 0 {
        return Err(Error::InvalidParameter(
            "--points must be at least 1".into(),
        ));
    }
    if a.family.is_radial() && lo <= 0.0 {
        return Err(Error::Domain {
            x: lo,
            domain: "x > 0",
        });
    }
    let xs = linspace(lo, hi, a.points);
    let epsilons = match &a.sweep {
        Some(s) => {
            let (name, range) = s.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected epsilon=a:b:step, got '{s}'"))
            })?;
            if name != "epsilon" {
                return Err(Error::InvalidParameter(format!("cannot sweep '{name}'")));
            }
            parse_steps(range)?
        }
        None => vec![a.epsilon.ok_or_else(|| {
            Error::InvalidParameter("--epsilon is required without --sweep".into())
        })?],
    };
    let specs = epsilons
        .iter()
        .map(|&e| {
            let spec = FamilySpec::new(a.family, e, a.gamma, a.beta)?;
            if !a.force {
                require_admissible(&spec)?;
            }
            Ok(spec)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut text = String::new();
    if a.sweep.is_some() {
        text.push_str("epsilon,x,V_minus,singular\n");
        let blocks: Vec<String> = specs
            .par_iter()
            .map(|spec| {
                let mut block = String::new();
                for &x in &xs {
                    let (v, s) = minus_cell(spec, x);
                    let _ = writeln!(block, "{},{},{v},{s}", fmt_g(spec.epsilon), fmt_g(x));
                }
                block
            })
            .collect();
        blocks.iter().for_each(|b| text.push_str(b));
        return Ok(Output::ok(text));
    }
    let spec = &specs[0];
    text.push_str(match a.which {
        Which::Plus => "x,V_plus\n",
        Which::Minus => "x,V_minus,singular\n",
        Which::Both => "x,V_plus,V_minus,singular\n",
    });
    for &x in &xs {
        let plus = || v_plus(spec, x).map(fmt_g);
        match a.which {
            Which::Plus => {
                let _ = writeln!(text, "{},{}", fmt_g(x), plus()?);
            }
            Which::Minus => {
                let (v, s) = minus_cell(spec, x);
                let _ = writeln!(text, "{},{v},{s}", fmt_g(x));
            }
            Which::Both => {
                let (v, s) = minus_cell(spec, x);
                let _ = writeln!(text, "{},{},{v},{s}", fmt_g(x), plus()?);
            }
        }
    }
    Ok(Output::ok(text))
}

fn spectrum_csv(table: &SpectrumTable) -> String {
    let mut text = format!("{}\n", SpectrumTable::CSV_HEADER);
    for row in table.csv_rows() {
        text.push_str(&row);
        text.push('\n');
    }
    text
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Output> {
    let spec = a.spec.spec()?;
    let grid = a.grid.grid(spec.family)?;
    let table = verify_isospectrality(&spec, a.n_max, &grid)?;
    let code = if table.max_abs_error() <= TOLERANCES.eigenvalue {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Output {
        text: spectrum_csv(&table),
        code,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    let reports: Vec<VerificationReport> = if a.all {
        verify_all()?
    } else {
        let family = a.family.expect("required by clap");
        let epsilon = a.epsilon.expect("required by clap");
        let spec = FamilySpec::new(family, epsilon, a.gamma, a.beta)?;
        require_admissible(&spec)?;
        vec![verify_spec(&spec)?]
    };
    let mut text = String::new();
    if a.csv {
        text.push_str(VerificationReport::CSV_HEADER);
        text.push('\n');
        for r in &reports {
            for row in r.csv_rows() {
                text.push_str(&row);
                text.push('\n');
            }
        }
    } else {
        for r in &reports {
            text.push_str(&r.to_key_value());
        }
    }
    let passed = reports.iter().all(VerificationReport::overall);
    if !a.csv && a.all {
        let _ = writeln!(text, "summary specs={} passed={passed}", reports.len());
    }
    Ok(Output {
        text,
        code: if passed { EXIT_OK } else { EXIT_FAILED },
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_conditions(a: &ConditionsArgs) -> Result<Output> {
    let mut epsilons = a.epsilon.clone();
    if let Some(r) = &a.epsilon_range {
        epsilons.extend(parse_steps(r)?);
    }
    if epsilons.is_empty() {
        return Err(Error::InvalidParameter(
            "give --epsilon values or --epsilon-range".into(),
        ));
    }
    let mut text = String::from("epsilon,admissible,beta_bound,reasons\n");
    for e in epsilons {
        let spec = FamilySpec::new(a.family, e, a.gamma, a.beta)?;
        let adm = check_admissibility(&spec);
        let _ = writeln!(
            text,
            "{},{},{},{}",
            fmt_g(e),
            adm.admissible,
            fmt_g(adm.beta_bound),
            csv_field(&adm.reasons.join("; "))
        );
    }
    Ok(Output::ok(text))
}

fn cmd_algebra(a: &AlgebraArgs) -> Result<Output> {
    let spec = a.spec.spec()?;
    require_admissible(&spec)?;
    let mut text =
        String::from("n,E_minus,lower_coeff,raise_coeff,commutator_lhs,commutator_rhs\n");
    for n in 0..a.n_max {
        let lower = ladder_coefficient(&spec, n, Direction::Lower)?.value;
        let raise = ladder_coefficient(&spec, n, Direction::Raise)?.value;
        let (lhs, rhs) = commutator_eigenvalue(&spec, n)?;
        let _ = writeln!(
            text,
            "{n},{},{},{},{},{}",
            fmt_g(crate::families::e_minus(&spec, n)),
            fmt_g(lower),
            fmt_g(raise),
            fmt_g(lhs),
            fmt_g(rhs)
        );
    }
    Ok(Output::ok(text))
}

fn out_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Potential(a) => a.out.out.as_ref(),
        Command::Spectrum(a) => a.out.out.as_ref(),
        Command::Verify(a) => a.out.out.as_ref(),
        Command::Conditions(a) => a.out.out.as_ref(),
        Command::Algebra(a) => a.out.out.as_ref(),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code: 0 pass, 1 verification failure, 2 usage or
/// parameter error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Potential(a) => cmd_potential(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Conditions(a) => cmd_conditions(a),
        Command::Algebra(a) => cmd_algebra(a),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match out_path(&cli.command) {
        Some(path) => std::fs::write(path, &output.text),
        None => out.write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    output.code
}
