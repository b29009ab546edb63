//! Physics parameter handling shared by every subcommand: CLI flags, the
//! flat JSON config file, and their merge (flag > config file > default).

use clap::Args;
use serde::Deserialize;
use std::f64::consts::PI;
use std::path::PathBuf;

use berryphase::kernel::{TruncationMode, TruncationPolicy};
use berryphase::units::{reduce, ConstantsProfile, LabGeometry, LabSetup, ReducedSetup, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScenarioArg {
    Free,
    Single,
    Double,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Scenario {
        match s {
            ScenarioArg::Free => Scenario::FreeSpace,
            ScenarioArg::Single => Scenario::SingleMirror,
            ScenarioArg::Double => Scenario::DoubleMirror,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Flags every physics subcommand accepts. All optional so that values can
/// fall back to the config file and then to defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Mirror scenario: free | single | double
    #[arg(long, value_enum)]
    pub scenario: Option<ScenarioArg>,

    /// Dimensionless acceleration a/(omega0 c)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// omega0 c / a; alternative to --alpha
    #[arg(long)]
    pub inv_alpha: Option<f64>,
    /// Dimensionless atom-mirror distance omega0 z0/c
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Dimensionless mirror separation omega0 L/c
    #[arg(long)]
    pub lam: Option<f64>,

    /// Initial superposition angle theta in radians (default pi/4)
    #[arg(long)]
    pub theta: Option<f64>,
    /// theta in degrees; convenience alternative to --theta
    #[arg(long)]
    pub theta_deg: Option<f64>,
    /// Dimensionless coupling kappa = lambda^2/(hbar c^3) (default 1)
    #[arg(long)]
    pub kappa: Option<f64>,

    /// Detector angular frequency omega0 in s^-1 (SI runs; also the clock
    /// for `evolve`). The conventional "1 GHz gap" is 1e9.
    #[arg(long)]
    pub omega0_hz: Option<f64>,
    /// Proper acceleration in m/s^2 (SI parameter set)
    #[arg(long)]
    pub accel_si: Option<f64>,
    /// Atom-mirror distance z0 in meters (SI parameter set)
    #[arg(long)]
    pub z0_m: Option<f64>,
    /// Mirror separation L in meters (SI parameter set)
    #[arg(long = "L-m")]
    pub l_m: Option<f64>,

    /// Fixed symmetric truncation window max|n| for the image sum
    #[arg(long)]
    pub max_n: Option<u64>,
    /// Adaptive truncation (default when --max-n is absent)
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub adaptive: Option<bool>,
    /// Relative tolerance for adaptive truncation (default 1e-3)
    #[arg(long)]
    pub rel_tol: Option<f64>,

    /// Constants profile: codata | paper
    #[arg(long, value_enum)]
    pub constants: Option<ConstantsArg>,

    /// Output format (text is only meaningful for scalar reports)
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write tabular output to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Flat JSON config file; keys are the long flag names with underscores
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsArg {
    Codata,
    Paper,
}

impl From<ConstantsArg> for ConstantsProfile {
    fn from(c: ConstantsArg) -> ConstantsProfile {
        match c {
            ConstantsArg::Codata => ConstantsProfile::Codata,
            ConstantsArg::Paper => ConstantsProfile::Paper,
        }
    }
}

/// The config file mirrors the flag set, flat JSON with underscore keys.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: Option<String>,
    pub alpha: Option<f64>,
    pub inv_alpha: Option<f64>,
    pub zeta: Option<f64>,
    pub lam: Option<f64>,
    pub theta: Option<f64>,
    pub theta_deg: Option<f64>,
    pub kappa: Option<f64>,
    pub omega0_hz: Option<f64>,
    pub accel_si: Option<f64>,
    pub z0_m: Option<f64>,
    #[serde(rename = "L_m")]
    pub l_m: Option<f64>,
    pub max_n: Option<u64>,
    pub adaptive: Option<bool>,
    pub rel_tol: Option<f64>,
    pub constants: Option<ConstantsArg>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// Everything a subcommand needs after merging flags, config, defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub setup: ReducedSetup,
    pub policy: TruncationPolicy,
    pub omega0: f64,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    /// The SI setup when the run was specified in SI form.
    pub lab: Option<LabSetup>,
}

pub const DEFAULT_OMEGA0: f64 = 1e9;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parse_scenario_key(s: &str) -> Result<ScenarioArg, ConfigError> {
    match s {
        "free" => Ok(ScenarioArg::Free),
        "single" => Ok(ScenarioArg::Single),
        "double" => Ok(ScenarioArg::Double),
        other => Err(ConfigError(format!("unknown scenario '{other}' in config file"))),
    }
}

impl ParamArgs {
    /// Merge flags over the config file (if any), keeping flag precedence.
    pub fn merged(&self) -> Result<ParamArgs, ConfigError> {
        let mut merged = self.clone();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
            let file: ConfigFile = serde_json::from_str(&text)
                .map_err(|e| ConfigError(format!("bad config {}: {e}", path.display())))?;
            let file_scenario = file.scenario.as_deref().map(parse_scenario_key).transpose()?;
            merged.scenario = merged.scenario.or(file_scenario);
            merged.alpha = merged.alpha.or(file.alpha);
            merged.inv_alpha = merged.inv_alpha.or(file.inv_alpha);
            merged.zeta = merged.zeta.or(file.zeta);
            merged.lam = merged.lam.or(file.lam);
            merged.theta = merged.theta.or(file.theta);
            merged.theta_deg = merged.theta_deg.or(file.theta_deg);
            merged.kappa = merged.kappa.or(file.kappa);
            merged.omega0_hz = merged.omega0_hz.or(file.omega0_hz);
            merged.accel_si = merged.accel_si.or(file.accel_si);
            merged.z0_m = merged.z0_m.or(file.z0_m);
            merged.l_m = merged.l_m.or(file.l_m);
            merged.max_n = merged.max_n.or(file.max_n);
            merged.adaptive = merged.adaptive.or(file.adaptive);
            merged.rel_tol = merged.rel_tol.or(file.rel_tol);
            merged.constants = merged.constants.or(file.constants);
            merged.format = merged.format.or(file.format);
            merged.out = merged.out.or(file.out);
        }
        Ok(merged)
    }

    /// Resolve into a full run configuration. `needs_clock` lets `evolve`
    /// accept --omega0-hz alongside dimensionless parameters.
    pub fn resolve(&self, needs_clock: bool) -> Result<RunConfig, ConfigError> {
        let p = self.merged()?;
        let scenario: Scenario = p
            .scenario
            .ok_or_else(|| ConfigError("--scenario is required (free|single|double)".into()))?
            .into();

        let theta = match (p.theta, p.theta_deg) {
            (Some(_), Some(_)) => {
                return Err(ConfigError("give either --theta or --theta-deg, not both".into()))
            }
            (Some(t), None) => t,
            (None, Some(d)) => d * PI / 180.0,
            (None, None) => PI / 4.0,
        };
        let kappa = p.kappa.unwrap_or(1.0);
        let profile: ConstantsProfile = p.constants.map(Into::into).unwrap_or_default();

        let si_given = p.accel_si.is_some() || p.z0_m.is_some() || p.l_m.is_some();
        let dimensionless_given =
            p.alpha.is_some() || p.inv_alpha.is_some() || p.zeta.is_some() || p.lam.is_some();
        if si_given && dimensionless_given {
            return Err(ConfigError(
                "SI (--accel-si/--z0-m/--L-m) and dimensionless (--alpha/--zeta/--lam) parameters cannot be mixed in one run".into(),
            ));
        }

        let (setup, omega0, lab) = if si_given {
            let omega0 = p.omega0_hz.ok_or_else(|| {
                ConfigError("SI runs need --omega0-hz alongside --accel-si".into())
            })?;
            let accel = p
                .accel_si
                .ok_or_else(|| ConfigError("SI runs need --accel-si".into()))?;
            let geometry = match scenario {
                Scenario::FreeSpace => LabGeometry::FreeSpace,
                Scenario::SingleMirror => LabGeometry::SingleMirror {
                    z0: p.z0_m.ok_or_else(|| ConfigError("single mirror needs --z0-m".into()))?,
                },
                Scenario::DoubleMirror => LabGeometry::DoubleMirror {
                    z0: p.z0_m.ok_or_else(|| ConfigError("double mirror needs --z0-m".into()))?,
                    gap: p.l_m.ok_or_else(|| ConfigError("double mirror needs --L-m".into()))?,
                },
            };
            let lab = LabSetup { omega0, accel, kappa, theta, geometry };
            let setup = reduce(&lab, profile.constants())
                .map_err(|e| ConfigError(format!("invalid SI setup: {e}")))?;
            (setup, omega0, Some(lab))
        } else {
            if p.omega0_hz.is_some() && !needs_clock {
                return Err(ConfigError(
                    "--omega0-hz belongs to the SI parameter set; a dimensionless run does not use it".into(),
                ));
            }
            let alpha = match (p.alpha, p.inv_alpha) {
                (Some(_), Some(_)) => {
                    return Err(ConfigError("give either --alpha or --inv-alpha, not both".into()))
                }
                (Some(a), None) => a,
                (None, Some(ia)) => {
                    if !(ia > 0.0) {
                        return Err(ConfigError(format!("--inv-alpha must be > 0, got {ia}")));
                    }
                    1.0 / ia
                }
                (None, None) => {
                    return Err(ConfigError("--alpha (or --inv-alpha) is required".into()))
                }
            };
            let setup = match scenario {
                Scenario::FreeSpace => ReducedSetup::free_space(alpha, kappa, theta),
                Scenario::SingleMirror => ReducedSetup::single_mirror(
                    alpha,
                    p.zeta.ok_or_else(|| ConfigError("single mirror needs --zeta".into()))?,
                    kappa,
                    theta,
                ),
                Scenario::DoubleMirror => ReducedSetup::double_mirror(
                    alpha,
                    p.zeta.ok_or_else(|| ConfigError("double mirror needs --zeta".into()))?,
                    p.lam.ok_or_else(|| ConfigError("double mirror needs --lam".into()))?,
                    kappa,
                    theta,
                ),
            };
            setup.validate().map_err(|e| ConfigError(format!("invalid setup: {e}")))?;
            (setup, p.omega0_hz.unwrap_or(DEFAULT_OMEGA0), None)
        };

        let policy = match (p.max_n, p.adaptive) {
            (Some(_), Some(true)) => {
                return Err(ConfigError("--max-n and --adaptive are mutually exclusive".into()))
            }
            (Some(n), _) => {
                if p.rel_tol.is_some() {
                    return Err(ConfigError("--rel-tol only applies to --adaptive runs".into()));
                }
                TruncationPolicy::fixed(n)
            }
            (None, Some(false)) => {
                return Err(ConfigError("disabling --adaptive requires --max-n".into()))
            }
            _ => TruncationPolicy {
                mode: TruncationMode::Adaptive {
                    rel_tol: p.rel_tol.unwrap_or(1e-3),
                    block_size: TruncationPolicy::DEFAULT_BLOCK_SIZE,
                },
                hard_cap: TruncationPolicy::DEFAULT_HARD_CAP,
            },
        };
        policy.validate().map_err(|e| ConfigError(format!("invalid truncation policy: {e}")))?;

        Ok(RunConfig { setup, policy, omega0, format: p.format, out: p.out, lab })
    }
}
