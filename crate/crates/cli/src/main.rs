//! `berryphase`: CLI for the acceleration-induced geometric-phase library.
//!
//! Subcommands: phase, sweep, search, converge, oracle, evolve, units.
//! Exit codes: 0 success, 1 I/O, 2 validation error, 3 numerical failure.

// NaN-rejecting validation guards, as in the library.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// clap subcommand structs are naturally uneven in size.
#![allow(clippy::large_enum_variant)]

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

use berryphase::explore::{
    convergence_study, min_acceleration_search, sweep, SearchBounds, SweepAxis, SweepSpec,
};
use berryphase::kernel::gamma_rates;
use berryphase::oracle::{fourier_term_check, FrequencySign, IntegralConfig};
use berryphase::phase::{coherence_amplitude, density_matrix, phase_difference, DetectorState};
use berryphase::units::{self, HYDROGEN_MASS};
use berryphase::Error as CoreError;

use config::{ConfigError, OutputFormat, ParamArgs};

#[derive(Parser)]
#[command(
    name = "berryphase",
    version,
    about = "Geometric phase of a uniformly accelerated two-level detector near plane mirrors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate phi_B, its inertial limit, and delta_phi at one point
    Phase(PhaseCmd),
    /// Evaluate delta_phi over a parameter grid (CSV/JSON table)
    Sweep(SweepCmd),
    /// Minimum-acceleration feasibility search against a phase floor
    Search(SearchCmd),
    /// delta_phi versus the truncation window max|n|
    Converge(ConvergeCmd),
    /// Numerical verification of the closed-form rate terms
    Oracle(OracleCmd),
    /// Density-matrix trajectory rho(tau)
    Evolve(EvolveCmd),
    /// SI-side calculators (Unruh temperature, thermal gradients, fringes)
    Units(UnitsCmd),
}

#[derive(Args)]
struct PhaseCmd {
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// Swept parameter: alpha | inv-alpha | zeta | lam
    #[arg(long, value_enum)]
    axis: AxisArg,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long, default_value_t = 128)]
    points: usize,
    /// Logarithmic grid spacing
    #[arg(long)]
    log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum AxisArg {
    Alpha,
    InvAlpha,
    Zeta,
    Lam,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> SweepAxis {
        match a {
            AxisArg::Alpha => SweepAxis::Alpha,
            AxisArg::InvAlpha => SweepAxis::InvAlpha,
            AxisArg::Zeta => SweepAxis::Zeta,
            AxisArg::Lam => SweepAxis::Lam,
        }
    }
}

#[derive(Args)]
struct SearchCmd {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    alpha_lo: f64,
    #[arg(long)]
    alpha_hi: f64,
    #[arg(long)]
    zeta_lo: f64,
    #[arg(long)]
    zeta_hi: f64,
    /// Search the mirror separation too (otherwise --lam stays fixed)
    #[arg(long)]
    lam_lo: Option<f64>,
    #[arg(long)]
    lam_hi: Option<f64>,
    /// Detectability floor in radians
    #[arg(long, default_value_t = 5.27e-6)]
    floor: f64,
}

#[derive(Args)]
struct ConvergeCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// Grid of max|n| values as lo:hi:step
    #[arg(long, default_value = "1e5:1e6:1e5")]
    max_n_grid: String,
    #[arg(long, default_value_t = 1e-3)]
    plateau_tol: f64,
}

#[derive(Args)]
struct OracleCmd {
    /// Comma-separated dimensionless accelerations
    #[arg(long, default_value = "0.5,1,2")]
    alphas: String,
    /// Comma-separated image offsets g
    #[arg(long, default_value = "0,0.5,1,5")]
    g_values: String,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
}

#[derive(Args)]
struct EvolveCmd {
    #[command(flatten)]
    params: ParamArgs,
    /// Final proper time in seconds (0 emits the single tau = 0 row)
    #[arg(long)]
    tau_max: f64,
    #[arg(long, default_value_t = 200)]
    tau_points: usize,
    /// Lamb shift omega_L in rad/s
    #[arg(long, default_value_t = 0.0)]
    lamb_shift: f64,
}

#[derive(Args)]
struct UnitsCmd {
    #[command(subcommand)]
    calc: UnitsCalc,
}

#[derive(Subcommand)]
enum UnitsCalc {
    /// Unruh temperature T = hbar a/(2 pi c kB)
    UnruhTemp {
        #[arg(long)]
        accel_si: f64,
        #[arg(long, value_enum)]
        constants: Option<config::ConstantsArg>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Thermal-gradient acceleration a = kB dT/(m dx)
    GradientAccel {
        #[arg(long)]
        delta_t_k: f64,
        #[arg(long)]
        delta_x_m: f64,
        /// Atom mass in kg (default: hydrogen)
        #[arg(long, default_value_t = HYDROGEN_MASS)]
        mass_kg: f64,
        #[arg(long, value_enum)]
        constants: Option<config::ConstantsArg>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Interference phase 2 pi dx / lambda_dB for a path difference
    FringePhase {
        #[arg(long)]
        path_diff_m: f64,
        #[arg(long)]
        speed_m_s: f64,
        #[arg(long, default_value_t = HYDROGEN_MASS)]
        mass_kg: f64,
        #[arg(long, value_enum)]
        constants: Option<config::ConstantsArg>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// SI -> dimensionless conversion of a full setup
    Reduce {
        #[command(flatten)]
        params: ParamArgs,
    },
}

struct CmdError {
    code: i32,
    msg: String,
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError { code: 2, msg: e.0 }
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::Geometry(_) | CoreError::Domain(_) => 2,
            _ => 3,
        };
        CmdError { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError { code: 1, msg: e.to_string() }
    }
}

impl From<serde_json::Error> for CmdError {
    fn from(e: serde_json::Error) -> Self {
        CmdError { code: 1, msg: e.to_string() }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.msg);
            std::process::exit(e.code);
        }
    }
}

fn run(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Phase(cmd) => run_phase(cmd),
        Command::Sweep(cmd) => run_sweep(cmd),
        Command::Search(cmd) => run_search(cmd),
        Command::Converge(cmd) => run_converge(cmd),
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Evolve(cmd) => run_evolve(cmd),
        Command::Units(cmd) => run_units(cmd),
    }
}

fn out_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CmdError> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run_phase(cmd: PhaseCmd) -> Result<(), CmdError> {
    let cfg = cmd.params.resolve(false)?;
    let result = phase_difference(&cfg.setup, &cfg.policy)?;
    let (gamma_plus, gamma_minus) = gamma_rates(&result.rates)?;
    let mut w = out_writer(&cfg.out)?;
    match cfg.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "inputs": { "setup": cfg.setup, "policy": cfg.policy, "lab": cfg.lab },
                "phi_accel": result.phi_accel,
                "phi_inertial": result.phi_inertial,
                "delta_phi": result.delta_phi,
                "delta_phi_abs": result.delta_phi.abs(),
                "A": result.rates.a,
                "B": result.rates.b,
                "A0": result.rates.a0,
                "B0": result.rates.b0,
                "gamma_plus": gamma_plus,
                "gamma_minus": gamma_minus,
                "diagnostics": result.rates.diagnostics,
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        _ => {
            writeln!(w, "scenario        {}", cfg.setup.scenario())?;
            writeln!(w, "alpha           {}", cfg.setup.alpha)?;
            if let Some(z) = cfg.setup.zeta() {
                writeln!(w, "zeta            {z}")?;
            }
            if let Some(l) = cfg.setup.lam() {
                writeln!(w, "lam             {l}")?;
            }
            writeln!(w, "theta           {}", cfg.setup.theta)?;
            writeln!(w, "kappa           {}", cfg.setup.kappa)?;
            writeln!(w, "A/(kappa w0)    {}", result.rates.a)?;
            writeln!(w, "B/(kappa w0)    {}", result.rates.b)?;
            writeln!(w, "A0 = B0         {}", result.rates.a0)?;
            writeln!(w, "gamma(+w0)      {gamma_plus}")?;
            writeln!(w, "gamma(-w0)      {gamma_minus}")?;
            writeln!(w, "phi_B           {}", result.phi_accel)?;
            writeln!(w, "phi_B inertial  {}", result.phi_inertial)?;
            writeln!(w, "delta_phi       {}", result.delta_phi)?;
            writeln!(w, "|delta_phi|     {}", result.delta_phi.abs())?;
            writeln!(
                w,
                "image sum       n_used {} tail ~{:.3e} converged {}",
                result.rates.diagnostics.n_used,
                result.rates.diagnostics.tail_estimate,
                result.rates.diagnostics.converged
            )?;
        }
    }
    Ok(())
}

fn run_sweep(cmd: SweepCmd) -> Result<(), CmdError> {
    let mut params = cmd.params.clone();
    let axis: SweepAxis = cmd.axis.into();
    // the swept axis does not need an explicit fixed value; seed the base
    // setup with a grid value so it validates
    let seed = 0.5 * (cmd.from + cmd.to);
    match axis {
        SweepAxis::Alpha if params.alpha.is_none() && params.inv_alpha.is_none() => {
            params.alpha = Some(seed)
        }
        SweepAxis::InvAlpha if params.alpha.is_none() && params.inv_alpha.is_none() => {
            params.inv_alpha = Some(seed)
        }
        SweepAxis::Zeta if params.zeta.is_none() => params.zeta = Some(seed),
        SweepAxis::Lam if params.lam.is_none() => params.lam = Some(cmd.from.max(cmd.to)),
        _ => {}
    }
    let cfg = params.resolve(false)?;
    let spec = if cmd.log {
        SweepSpec::logarithmic(axis, cmd.from, cmd.to, cmd.points, cfg.setup, cfg.policy)?
    } else {
        SweepSpec::linear(axis, cmd.from, cmd.to, cmd.points, cfg.setup, cfg.policy)?
    };
    let table = sweep(&spec)?;

    let failed = table.rows.iter().filter(|r| !r.converged).count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} rows failed to converge", table.rows.len());
    }
    if let Some(best) = table
        .rows
        .iter()
        .filter(|r| r.delta_phi_abs.is_finite())
        .max_by(|a, b| a.delta_phi_abs.total_cmp(&b.delta_phi_abs))
    {
        eprintln!("peak row: {} = {}, |delta_phi| = {:e}", table.axis, best.axis_value, best.delta_phi_abs);
    }

    let mut w = out_writer(&cfg.out)?;
    match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => writeln!(w, "{}", serde_json::to_string_pretty(&table)?)?,
        _ => output::write_sweep_csv(&mut w, &table)?,
    }
    Ok(())
}

fn run_search(cmd: SearchCmd) -> Result<(), CmdError> {
    let mut params = cmd.params.clone();
    if params.alpha.is_none() && params.inv_alpha.is_none() {
        params.alpha = Some(cmd.alpha_hi);
    }
    if params.zeta.is_none() {
        params.zeta = Some((cmd.zeta_lo * cmd.zeta_hi).sqrt());
    }
    if params.lam.is_none() {
        if let Some(hi) = cmd.lam_hi {
            params.lam = Some(hi);
        }
    }
    let cfg = params.resolve(false)?;
    let lam_bounds = match (cmd.lam_lo, cmd.lam_hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => {
            return Err(ConfigError("--lam-lo and --lam-hi must be given together".into()).into())
        }
    };
    let bounds = SearchBounds {
        alpha: (cmd.alpha_lo, cmd.alpha_hi),
        zeta: (cmd.zeta_lo, cmd.zeta_hi),
        lam: lam_bounds,
    };
    let result = min_acceleration_search(&cfg.setup, &bounds, cmd.floor, &cfg.policy)?;
    let mut w = out_writer(&cfg.out)?;
    match cfg.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Json => writeln!(w, "{}", serde_json::to_string_pretty(&result)?)?,
        _ => {
            writeln!(w, "feasible        {}", result.feasible)?;
            if let Some(a) = result.alpha_star {
                writeln!(w, "alpha_star      {a:e}")?;
            }
            if let Some(z) = result.best_zeta {
                writeln!(w, "best zeta       {z}")?;
            }
            if let Some(l) = result.best_lam {
                writeln!(w, "best lam        {l}")?;
            }
            writeln!(w, "achieved        {:e}", result.achieved)?;
            writeln!(w, "floor           {:e}", cmd.floor)?;
            writeln!(w, "evaluations     {}", result.evaluations)?;
        }
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<u64>, CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(ConfigError(format!("--max-n-grid wants lo:hi:step, got '{spec}'")).into());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| ConfigError(format!("bad grid number '{p}': {e}"))))
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(lo > 0.0 && hi >= lo && step > 0.0) {
        return Err(ConfigError(format!("degenerate --max-n-grid '{spec}'")).into());
    }
    let mut grid = Vec::new();
    let mut x = lo;
    while x <= hi * (1.0 + 1e-12) {
        grid.push(x.round() as u64);
        x += step;
    }
    Ok(grid)
}

fn run_converge(cmd: ConvergeCmd) -> Result<(), CmdError> {
    let cfg = cmd.params.resolve(false)?;
    let grid = parse_grid(&cmd.max_n_grid)?;
    let report = convergence_study(&cfg.setup, &grid, cmd.plateau_tol)?;
    match report.plateau_n {
        Some(n) => eprintln!("plateau: delta_phi settled beyond max|n| = {n}"),
        None => eprintln!("plateau: not reached on this grid"),
    }
    let mut w = out_writer(&cfg.out)?;
    match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?,
        _ => output::write_convergence_csv(&mut w, &report)?,
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<f64>, CmdError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| ConfigError(format!("bad list entry '{p}': {e}")).into())
        })
        .collect()
}

fn run_oracle(cmd: OracleCmd) -> Result<(), CmdError> {
    let alphas = parse_list(&cmd.alphas)?;
    let gs = parse_list(&cmd.g_values)?;
    let mut failures = 0usize;
    println!("{:>6} {:>6} {:>10} {:>14} {:>14} {:>10}  status", "g", "alpha", "side", "numeric", "closed", "rel_err");
    for &alpha in &alphas {
        let cfg = IntegralConfig::for_alpha(alpha);
        for &g in &gs {
            for (sign, label) in
                [(FrequencySign::Emission, "emission"), (FrequencySign::Absorption, "absorption")]
            {
                match fourier_term_check(g, alpha, &cfg, sign) {
                    Ok(c) => {
                        let ok = c.rel_error < cmd.tol;
                        if !ok {
                            failures += 1;
                        }
                        println!(
                            "{:>6} {:>6} {:>10} {:>14.6e} {:>14.6e} {:>10.2e}  {}",
                            g,
                            alpha,
                            label,
                            c.numeric,
                            c.closed_form,
                            c.rel_error,
                            if ok { "pass" } else { "FAIL" }
                        );
                    }
                    Err(e) => {
                        failures += 1;
                        println!("{g:>6} {alpha:>6} {label:>10}  ERROR: {e}");
                    }
                }
            }
        }
    }
    // sawtooth identity rows
    for x in [0.5, 1.0, 3.0, 6.0] {
        let numeric = berryphase::kernel::tail_averaged_sum(
            |n| (n as f64 * x).sin() / n as f64,
            100_000,
            10_000,
        );
        let analytic = (std::f64::consts::PI - x) / 2.0;
        let err = (numeric - analytic).abs();
        let ok = err < 1e-6;
        if !ok {
            failures += 1;
        }
        println!(
            "sawtooth x = {x}: numeric {numeric:.9} analytic {analytic:.9} abs_err {err:.2e}  {}",
            if ok { "pass" } else { "FAIL" }
        );
    }
    if failures > 0 {
        return Err(CmdError { code: 3, msg: format!("{failures} oracle checks failed") });
    }
    Ok(())
}

fn run_evolve(cmd: EvolveCmd) -> Result<(), CmdError> {
    if !(cmd.tau_max >= 0.0) {
        return Err(ConfigError(format!("--tau-max must be >= 0, got {}", cmd.tau_max)).into());
    }
    let cfg = cmd.params.resolve(true)?;
    let rates = berryphase::kernel::rate_coefficients(&cfg.setup, &cfg.policy)?;
    let state = DetectorState {
        theta: cfg.setup.theta,
        omega0: cfg.omega0,
        lamb_shift: cmd.lamb_shift,
    };
    let points = if cmd.tau_max == 0.0 { 1 } else { cmd.tau_points.max(2) };
    let mut rows = Vec::with_capacity(points);
    for k in 0..points {
        let tau = if points == 1 {
            0.0
        } else {
            cmd.tau_max * k as f64 / (points - 1) as f64
        };
        let snap = density_matrix(&state, &rates, cfg.setup.kappa, tau)?;
        let coh = coherence_amplitude(&state, &rates, cfg.setup.kappa, tau);
        rows.push((snap, coh));
    }
    let mut w = out_writer(&cfg.out)?;
    match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|(s, c)| {
                    serde_json::json!({
                        "tau": s.tau,
                        "rho11": s.rho[0][0].re,
                        "re_rho12": s.rho[0][1].re,
                        "im_rho12": s.rho[0][1].im,
                        "coherence": c,
                    })
                })
                .collect();
            writeln!(w, "{}", serde_json::to_string_pretty(&docs)?)?;
        }
        _ => output::write_evolve_csv(&mut w, &rows)?,
    }
    Ok(())
}

fn scalar_report(
    format: Option<OutputFormat>,
    name: &str,
    value: f64,
    unit: &str,
) -> Result<(), CmdError> {
    match format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Json => {
            println!("{}", serde_json::json!({ name: value, "unit": unit }))
        }
        _ => println!("{name}  {value:e} {unit}"),
    }
    Ok(())
}

fn run_units(cmd: UnitsCmd) -> Result<(), CmdError> {
    match cmd.calc {
        UnitsCalc::UnruhTemp { accel_si, constants, format } => {
            if !(accel_si >= 0.0) {
                return Err(ConfigError("acceleration must be >= 0".into()).into());
            }
            let profile: berryphase::ConstantsProfile =
                constants.map(Into::into).unwrap_or_default();
            let t = units::unruh_temperature(accel_si, profile.constants());
            scalar_report(format, "unruh_temperature", t, "K")
        }
        UnitsCalc::GradientAccel { delta_t_k, delta_x_m, mass_kg, constants, format } => {
            let profile: berryphase::ConstantsProfile =
                constants.map(Into::into).unwrap_or_default();
            let a = units::thermal_gradient_acceleration(
                delta_t_k,
                delta_x_m,
                mass_kg,
                profile.constants(),
            )?;
            scalar_report(format, "acceleration", a, "m/s^2")
        }
        UnitsCalc::FringePhase { path_diff_m, speed_m_s, mass_kg, constants, format } => {
            let profile: berryphase::ConstantsProfile =
                constants.map(Into::into).unwrap_or_default();
            let consts = profile.constants();
            let lambda = units::de_broglie_wavelength(mass_kg, speed_m_s, consts)?;
            let phi = units::fringe_phase_from_path(path_diff_m, mass_kg, speed_m_s, consts)?;
            match format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({ "de_broglie_wavelength_m": lambda, "fringe_phase_rad": phi })
                ),
                _ => {
                    println!("de Broglie wavelength  {lambda:e} m");
                    println!("fringe phase           {phi:e} rad");
                }
            }
            Ok(())
        }
        UnitsCalc::Reduce { params } => {
            let cfg = params.resolve(false)?;
            if cfg.lab.is_none() {
                return Err(ConfigError(
                    "units reduce expects the SI parameter set (--omega0-hz, --accel-si, ...)".into(),
                )
                .into());
            }
            match cfg.format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&cfg.setup).map_err(CmdError::from)?)
                }
                _ => {
                    println!("alpha  {}", cfg.setup.alpha);
                    if let Some(z) = cfg.setup.zeta() {
                        println!("zeta   {z}");
                    }
                    if let Some(l) = cfg.setup.lam() {
                        println!("lam    {l}");
                    }
                }
            }
            Ok(())
        }
    }
}
