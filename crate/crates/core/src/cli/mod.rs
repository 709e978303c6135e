//! Command-line front end. Every command builds its whole output in memory
//! and writes it once, so a failing run leaves nothing behind.
//!
//! Exit codes: 0 success, 1 output could not be written, 2 bad arguments,
//! 3 numeric or domain failure.

mod output;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use output::{emit, to_json, Cell, Table};
pub use output::{Format, SCHEMA_VERSION};

use crate::fock::{
    displaced_tmsv_component, noon_fidelity, BeamSplitter, PairAmplitudeRatio, Regime, SourceParams,
};
use crate::interferometer::{
    coincidence_signal_sweep, fringe_harmonics, uniform_psi_grid, visibility, CoincidenceSignal,
    DetectionPattern, HarmonicSpectrum,
};
use crate::optimize::{
    fidelity_vs_theta, flux_report, optimize_gamma_theta, OptimizerConfig, SweepSpec,
};

/// Largest photon number accepted on the command line.
pub const MAX_PHOTONS: u64 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "noonflux",
    version,
    about = "NOON-state fidelity and fringe calculator for seeded down-conversion"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// NOON fidelity of one photon-number slice.
    Fidelity(FidelityArgs),
    /// Fidelity against the seed phase theta for one or more gamma values.
    Sweep(SweepArgs),
    /// Coincidence rate of one detection pattern against the interferometer phase.
    Signal(SignalArgs),
    /// Maximize the fidelity over gamma and theta.
    Optimize(OptimizeArgs),
    /// Pair and photon numbers of the source.
    Flux(FluxArgs),
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not finite"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} is negative"))
    }
}

fn photon_number(s: &str) -> Result<usize, String> {
    let v: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > MAX_PHOTONS {
        return Err(format!("at most {MAX_PHOTONS} photons are supported"));
    }
    Ok(v as usize)
}

fn pattern(s: &str) -> Result<DetectionPattern, String> {
    let (u, l) = s
        .split_once(['-', ','])
        .ok_or_else(|| format!("pattern {s:?} is not of the form UPPER-LOWER"))?;
    let upper: usize = u.trim().parse().map_err(|e| format!("{e}"))?;
    let lower: usize = l.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(DetectionPattern::new(upper, lower))
}

fn grid_size(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v == 0 {
        return Err("grid needs at least one point".into());
    }
    Ok(v)
}

/// Coherent seeds. Both seeds default to `|alpha| e^{i theta}`.
#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Pair amplitude ratio.
    #[arg(long, value_parser = non_negative, conflicts_with = "alpha_mag")]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Regime::Weak)]
    pub regime: Regime,
    /// Seed amplitude |alpha|, instead of --gamma.
    #[arg(long, value_parser = non_negative)]
    pub alpha_mag: Option<f64>,
    /// Seed phase in radians.
    #[arg(long, value_parser = finite, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Pump phase in radians.
    #[arg(long, value_parser = finite, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Lower-mode seed amplitude, when it differs from the upper one.
    #[arg(long, value_parser = non_negative)]
    pub beta_mag: Option<f64>,
    /// Lower-mode seed phase in radians.
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub beta_phase: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    #[arg(long, value_parser = photon_number)]
    pub n: usize,
    #[arg(long = "r", value_parser = non_negative)]
    pub r: f64,
    #[command(flatten)]
    pub seed: SeedArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = photon_number)]
    pub n: usize,
    #[arg(long = "r", value_parser = non_negative)]
    pub r: f64,
    #[arg(long, value_enum, default_value_t = Regime::Weak)]
    pub regime: Regime,
    /// Comma-separated gamma values.
    #[arg(long, value_parser = non_negative, value_delimiter = ',', num_args = 1.., conflicts_with = "alpha_mag")]
    pub gamma: Vec<f64>,
    /// Comma-separated seed amplitudes, instead of --gamma.
    #[arg(long, value_parser = non_negative, value_delimiter = ',', num_args = 1..)]
    pub alpha_mag: Vec<f64>,
    #[arg(long, value_parser = grid_size, default_value_t = 256)]
    pub theta_points: usize,
    #[arg(long, value_parser = finite, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SignalArgs {
    #[arg(long, value_parser = photon_number, required_unless_present = "selftest")]
    pub n: Option<usize>,
    #[arg(long = "r", value_parser = non_negative, required_unless_present = "selftest")]
    pub r: Option<f64>,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Detection pattern as UPPER-LOWER, e.g. 2-2.
    #[arg(long, value_parser = pattern, required_unless_present = "selftest")]
    pub pattern: Option<DetectionPattern>,
    #[arg(long, value_parser = grid_size, default_value_t = 256)]
    pub psi_points: usize,
    /// Analyse the built-in signal 1 + cos 4psi instead of a source.
    #[arg(long)]
    pub selftest: bool,
    /// In CSV mode, also write the JSON harmonic summary here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_parser = photon_number)]
    pub n: usize,
    #[arg(long = "r", value_parser = non_negative)]
    pub r: f64,
    #[arg(long, value_enum, default_value_t = Regime::Weak)]
    pub regime: Regime,
    #[arg(long, value_parser = non_negative, default_value_t = 0.1)]
    pub gamma_min: f64,
    #[arg(long, value_parser = non_negative, default_value_t = 10.0)]
    pub gamma_max: f64,
    #[arg(long, value_parser = grid_size, default_value_t = 64)]
    pub theta_points: usize,
    #[arg(long, value_parser = grid_size, default_value_t = 64)]
    pub gamma_points: usize,
    #[arg(long, default_value_t = 4)]
    pub refine_rounds: usize,
    #[arg(long, value_parser = non_negative, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FluxArgs {
    #[arg(long = "r", value_parser = non_negative)]
    pub r: f64,
    #[arg(long, value_parser = non_negative, conflicts_with = "alpha_mag")]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Regime::Strong)]
    pub regime: Regime,
    #[arg(long, value_parser = non_negative)]
    pub alpha_mag: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(crate::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Serialize)]
struct SourceRecord {
    n: usize,
    r: f64,
    phi: f64,
    regime: Regime,
    gamma: Option<f64>,
    alpha_mag: f64,
    theta: f64,
    beta_mag: f64,
    beta_phase: f64,
}

impl SourceRecord {
    const HEADER: [&'static str; 9] = [
        "n",
        "r",
        "phi",
        "regime",
        "gamma",
        "alpha_mag",
        "theta",
        "beta_mag",
        "beta_phase",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.r.into(),
            self.phi.into(),
            self.regime.to_string().into(),
            self.gamma.into(),
            self.alpha_mag.into(),
            self.theta.into(),
            self.beta_mag.into(),
            self.beta_phase.into(),
        ]
    }
}

/// Resolves `--gamma` / `--alpha-mag` to `(gamma if defined, |alpha|)`.
fn intensity(
    r: f64,
    regime: Regime,
    gamma: Option<f64>,
    alpha_mag: Option<f64>,
) -> CliResult<(Option<f64>, f64)> {
    match (gamma, alpha_mag) {
        (Some(g), None) => Ok((Some(g), PairAmplitudeRatio::new(g, regime)?.alpha_mag(r))),
        (None, Some(a)) => {
            let g = PairAmplitudeRatio::from_alpha_mag(a, r, regime)
                .ok()
                .map(|p| p.gamma);
            Ok((g, a))
        }
        (None, None) => Err(CliError::Usage(
            "one of --gamma or --alpha-mag is required".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--gamma and --alpha-mag are mutually exclusive".into(),
        )),
    }
}

fn build_source(n: usize, r: f64, seed: &SeedArgs) -> CliResult<(SourceParams, SourceRecord)> {
    let (gamma, alpha_mag) = intensity(r, seed.regime, seed.gamma, seed.alpha_mag)?;
    let beta_mag = seed.beta_mag.unwrap_or(alpha_mag);
    let beta_phase = seed.beta_phase.unwrap_or(seed.theta);
    let src = SourceParams::new(
        r,
        seed.phi,
        Complex64::from_polar(alpha_mag, seed.theta),
        Complex64::from_polar(beta_mag, beta_phase),
    )?;
    let record = SourceRecord {
        n,
        r,
        phi: seed.phi,
        regime: seed.regime,
        gamma,
        alpha_mag,
        theta: seed.theta,
        beta_mag,
        beta_phase,
    };
    Ok((src, record))
}

#[derive(Serialize)]
struct FidelityRecord {
    schema_version: u32,
    command: &'static str,
    params: SourceRecord,
    fidelity: f64,
    fixed_phase_fidelity: f64,
    noon_phase: f64,
    component_weight: f64,
}

fn cmd_fidelity(args: &FidelityArgs, format: Format) -> CliResult<Vec<u8>> {
    let (src, params) = build_source(args.n, args.r, &args.seed)?;
    let component = displaced_tmsv_component(&src, args.n)?;
    let result = noon_fidelity(&component, BeamSplitter::shared())?;
    let record = FidelityRecord {
        schema_version: SCHEMA_VERSION,
        command: "fidelity",
        params,
        fidelity: result.fidelity,
        fixed_phase_fidelity: result.fixed_phase_fidelity,
        noon_phase: result.noon_phase,
        component_weight: component.weight(),
    };
    Ok(match format {
        Format::Json => to_json(&record)?,
        Format::Csv => {
            let mut header = SourceRecord::HEADER.to_vec();
            header.extend([
                "fidelity",
                "fixed_phase_fidelity",
                "noon_phase",
                "component_weight",
            ]);
            let mut t = Table::new(header);
            let mut row = record.params.cells();
            row.extend([
                record.fidelity.into(),
                record.fixed_phase_fidelity.into(),
                record.noon_phase.into(),
                record.component_weight.into(),
            ]);
            t.push(row);
            t.to_csv()?
        }
    })
}

#[derive(Serialize)]
struct Curve {
    gamma: f64,
    alpha_mag: f64,
    max_fidelity: f64,
    theta_at_max: f64,
    theta: Vec<f64>,
    fidelity: Vec<f64>,
}

#[derive(Serialize)]
struct SweepRecord {
    schema_version: u32,
    command: &'static str,
    n: usize,
    r: f64,
    phi: f64,
    regime: Regime,
    theta_points: usize,
    curves: Vec<Curve>,
}

fn cmd_sweep(args: &SweepArgs, format: Format) -> CliResult<Vec<u8>> {
    let gammas: Vec<f64> = if !args.alpha_mag.is_empty() {
        args.alpha_mag
            .iter()
            .map(|&a| Ok(PairAmplitudeRatio::from_alpha_mag(a, args.r, args.regime)?.gamma))
            .collect::<CliResult<_>>()?
    } else if !args.gamma.is_empty() {
        args.gamma.clone()
    } else {
        return Err(CliError::Usage(
            "one of --gamma or --alpha-mag is required".into(),
        ));
    };
    let spec = SweepSpec {
        r: args.r,
        n_total: args.n,
        regime: args.regime,
        theta_points: args.theta_points,
        gamma_values: gammas.clone(),
        phi: args.phi,
    };
    let mut curves = Vec::with_capacity(gammas.len());
    for &gamma in &gammas {
        let points = fidelity_vs_theta(&spec, gamma)?;
        let mut best = 0;
        for (i, p) in points.iter().enumerate() {
            if p.1 > points[best].1 {
                best = i;
            }
        }
        curves.push(Curve {
            gamma,
            alpha_mag: PairAmplitudeRatio::new(gamma, args.regime)?.alpha_mag(args.r),
            max_fidelity: points[best].1,
            theta_at_max: points[best].0,
            theta: points.iter().map(|p| p.0).collect(),
            fidelity: points.iter().map(|p| p.1).collect(),
        });
    }
    let record = SweepRecord {
        schema_version: SCHEMA_VERSION,
        command: "sweep",
        n: args.n,
        r: args.r,
        phi: args.phi,
        regime: args.regime,
        theta_points: args.theta_points,
        curves,
    };
    Ok(match format {
        Format::Json => to_json(&record)?,
        Format::Csv => {
            let mut t = Table::new(vec!["gamma", "theta", "fidelity"]);
            for c in &record.curves {
                for (&theta, &f) in c.theta.iter().zip(&c.fidelity) {
                    t.push(vec![c.gamma.into(), theta.into(), f.into()]);
                }
            }
            t.to_csv()?
        }
    })
}

#[derive(Serialize)]
struct HarmonicRecord {
    k: usize,
    amplitude: f64,
    phase: f64,
}

#[derive(Serialize)]
struct PatternRecord {
    upper: usize,
    lower: usize,
}

#[derive(Serialize)]
struct SignalSummary {
    schema_version: u32,
    command: &'static str,
    selftest: bool,
    params: Option<SourceRecord>,
    pattern: PatternRecord,
    relative_units: bool,
    psi_points: usize,
    harmonics: Vec<HarmonicRecord>,
    dominant_ac: Option<usize>,
    /// Visibility of the dominant harmonic.
    visibility: Option<f64>,
    /// Visibility of the N-fold harmonic.
    visibility_n: Option<f64>,
}

#[derive(Serialize)]
struct SignalRecord {
    #[serde(flatten)]
    summary: SignalSummary,
    psi: Vec<f64>,
    probability: Vec<f64>,
}

fn summarize(
    signal: &CoincidenceSignal,
    spectrum: &HarmonicSpectrum,
    selftest: bool,
    params: Option<SourceRecord>,
) -> CliResult<SignalSummary> {
    let pattern = signal.pattern();
    let vis = |k: usize| -> CliResult<Option<f64>> {
        if k == 0 || k > spectrum.max_harmonic() {
            return Ok(None);
        }
        match visibility(signal, k) {
            Ok(v) => Ok(Some(v)),
            Err(crate::Error::Degenerate(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    Ok(SignalSummary {
        schema_version: SCHEMA_VERSION,
        command: "signal",
        selftest,
        params,
        pattern: PatternRecord {
            upper: pattern.upper,
            lower: pattern.lower,
        },
        relative_units: signal.relative_units(),
        psi_points: signal.len(),
        harmonics: spectrum
            .coefficients
            .iter()
            .map(|(&k, h)| HarmonicRecord {
                k,
                amplitude: h.amplitude,
                phase: h.phase,
            })
            .collect(),
        dominant_ac: spectrum.dominant_ac,
        visibility: spectrum.dominant_ac.map(vis).transpose()?.flatten(),
        visibility_n: vis(pattern.n_total())?,
    })
}

fn cmd_signal(args: &SignalArgs, format: Format) -> CliResult<Vec<u8>> {
    let grid = uniform_psi_grid(args.psi_points);
    let (signal, params) = if args.selftest {
        let values = grid.iter().map(|p| 1.0 + (4.0 * p).cos()).collect();
        let signal =
            CoincidenceSignal::from_samples(grid, values, DetectionPattern::new(2, 2), false)?;
        (signal, None)
    } else {
        let missing = |what: &str| CliError::Usage(format!("--{what} is required"));
        let n = args.n.ok_or_else(|| missing("n"))?;
        let r = args.r.ok_or_else(|| missing("r"))?;
        let pattern = args.pattern.ok_or_else(|| missing("pattern"))?;
        if pattern.n_total() != n {
            return Err(CliError::Usage(format!(
                "pattern {}-{} does not detect {n} photons",
                pattern.upper, pattern.lower
            )));
        }
        let (src, params) = build_source(n, r, &args.seed)?;
        (
            coincidence_signal_sweep(&src, n, pattern, &grid)?,
            Some(params),
        )
    };
    let spectrum = fringe_harmonics(&signal)?;
    let summary = summarize(&signal, &spectrum, args.selftest, params)?;
    match format {
        Format::Json => Ok(to_json(&SignalRecord {
            summary,
            psi: signal.psi_samples().to_vec(),
            probability: signal.probabilities().to_vec(),
        })?),
        Format::Csv => {
            if let Some(path) = &args.summary {
                emit(&to_json(&summary)?, Some(path))?;
            }
            let mut t = Table::new(vec!["psi", "probability"]);
            for (&psi, &p) in signal.psi_samples().iter().zip(signal.probabilities()) {
                t.push(vec![psi.into(), p.into()]);
            }
            Ok(t.to_csv()?)
        }
    }
}

#[derive(Serialize)]
struct OptimizeRecord {
    schema_version: u32,
    command: &'static str,
    n: usize,
    r: f64,
    regime: Regime,
    gamma_min: f64,
    gamma_max: f64,
    config: OptimizerConfig,
    gamma_star: f64,
    theta_star: f64,
    fidelity_star: f64,
    alpha_mag_star: f64,
    coarse_best: f64,
    curve_theta: Vec<f64>,
    curve_fidelity: Vec<f64>,
}

fn cmd_optimize(args: &OptimizeArgs, format: Format) -> CliResult<Vec<u8>> {
    if args.gamma_min > args.gamma_max {
        return Err(CliError::Usage(format!(
            "--gamma-min {} exceeds --gamma-max {}",
            args.gamma_min, args.gamma_max
        )));
    }
    let config = OptimizerConfig {
        theta_points: args.theta_points,
        gamma_points: args.gamma_points,
        refine_rounds: args.refine_rounds,
        tolerance: args.tolerance,
        ..OptimizerConfig::default()
    };
    let opt = optimize_gamma_theta(
        args.r,
        args.n,
        args.regime,
        (args.gamma_min, args.gamma_max),
        &config,
    )?;
    let record = OptimizeRecord {
        schema_version: SCHEMA_VERSION,
        command: "optimize",
        n: args.n,
        r: args.r,
        regime: args.regime,
        gamma_min: args.gamma_min,
        gamma_max: args.gamma_max,
        config,
        gamma_star: opt.gamma_star,
        theta_star: opt.theta_star,
        fidelity_star: opt.fidelity_star,
        alpha_mag_star: PairAmplitudeRatio::new(opt.gamma_star, args.regime)?.alpha_mag(args.r),
        coarse_best: opt.coarse_best,
        curve_theta: opt.curve.iter().map(|p| p.0).collect(),
        curve_fidelity: opt.curve.iter().map(|p| p.1).collect(),
    };
    Ok(match format {
        Format::Json => to_json(&record)?,
        Format::Csv => {
            let mut t = Table::new(vec![
                "n",
                "r",
                "regime",
                "gamma_min",
                "gamma_max",
                "gamma_star",
                "theta_star",
                "fidelity_star",
                "alpha_mag_star",
                "coarse_best",
            ]);
            t.push(vec![
                record.n.into(),
                record.r.into(),
                record.regime.to_string().into(),
                record.gamma_min.into(),
                record.gamma_max.into(),
                record.gamma_star.into(),
                record.theta_star.into(),
                record.fidelity_star.into(),
                record.alpha_mag_star.into(),
                record.coarse_best.into(),
            ]);
            t.to_csv()?
        }
    })
}

#[derive(Serialize)]
struct FluxRecord {
    schema_version: u32,
    command: &'static str,
    r: f64,
    #[serde(flatten)]
    report: crate::optimize::FluxReport,
}

fn cmd_flux(args: &FluxArgs, format: Format) -> CliResult<Vec<u8>> {
    let gamma = match intensity(args.r, args.regime, args.gamma, args.alpha_mag)? {
        (Some(g), _) => g,
        (None, _) => {
            return Err(CliError::Usage(format!(
                "gamma is undefined at r = {}; pass --gamma",
                args.r
            )))
        }
    };
    let record = FluxRecord {
        schema_version: SCHEMA_VERSION,
        command: "flux",
        r: args.r,
        report: flux_report(args.r, gamma, args.regime)?,
    };
    Ok(match format {
        Format::Json => to_json(&record)?,
        Format::Csv => {
            let f = &record.report;
            let mut t = Table::new(vec![
                "r",
                "gamma",
                "regime",
                "alpha_mag_sq",
                "mean_pdc_pairs",
                "mean_photons_per_mode",
                "coherent_pair_flux",
            ]);
            t.push(vec![
                record.r.into(),
                f.gamma.into(),
                f.regime.to_string().into(),
                f.alpha_mag_sq.into(),
                f.mean_pdc_pairs.into(),
                f.mean_photons_per_mode.into(),
                f.coherent_pair_flux.into(),
            ]);
            t.to_csv()?
        }
    })
}

/// Runs a parsed command and returns the bytes it would emit.
pub fn execute(cli: &Cli) -> CliResult<Vec<u8>> {
    match &cli.command {
        Command::Fidelity(a) => cmd_fidelity(a, cli.format),
        Command::Sweep(a) => cmd_sweep(a, cli.format),
        Command::Signal(a) => cmd_signal(a, cli.format),
        Command::Optimize(a) => cmd_optimize(a, cli.format),
        Command::Flux(a) => cmd_flux(a, cli.format),
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = execute(&cli).and_then(|bytes| Ok(emit(&bytes, cli.output.as_deref())?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn main() -> ExitCode {
    run(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("noonflux").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parsers() {
        assert!(photon_number("21").is_err());
        assert_eq!(photon_number("20").unwrap(), 20);
        assert!(finite("nan").is_err());
        assert!(non_negative("-0.1").is_err());
        assert_eq!(pattern("3-2").unwrap(), DetectionPattern::new(3, 2));
        assert!(pattern("3").is_err());
    }

    #[test]
    fn both_intensities_rejected() {
        let r = Cli::try_parse_from([
            "noonflux",
            "fidelity",
            "--n",
            "4",
            "--r",
            "0.1",
            "--gamma",
            "1",
            "--alpha-mag",
            "1",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn missing_intensity_is_usage_error() {
        let cli = parse(&["fidelity", "--n", "4", "--r", "0.1"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn alpha_mag_matches_gamma() {
        let a = execute(&parse(&[
            "fidelity", "--n", "4", "--r", "0.1", "--gamma", "2.26",
        ]))
        .unwrap();
        let alpha = (2.26f64 * 0.1).sqrt().to_string();
        let b = execute(&parse(&[
            "fidelity",
            "--n",
            "4",
            "--r",
            "0.1",
            "--alpha-mag",
            &alpha,
        ]))
        .unwrap();
        let col = |bytes: &[u8]| {
            String::from_utf8(bytes.to_vec())
                .unwrap()
                .lines()
                .nth(1)
                .unwrap()
                .split(',')
                .nth(9)
                .unwrap()
                .to_owned()
        };
        assert_eq!(col(&a), col(&b));
    }

    #[test]
    fn theta_grid_matches_tau() {
        let out = execute(&parse(&[
            "sweep",
            "--n",
            "4",
            "--r",
            "0.1",
            "--gamma",
            "0",
            "--theta-points",
            "4",
        ]))
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        let thetas: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(thetas, vec![0.0, TAU / 4.0, TAU / 2.0, 3.0 * TAU / 4.0]);
    }
}
