//! Physical constants, SI ↔ dimensionless conversion, and the arithmetic of
//! the proposed interferometric set-up (Unruh temperature, thermal-gradient
//! acceleration, de Broglie fringe phases).
//!
//! All quantities are SI; every angle is in radians; angular frequencies are
//! in rad/s. Nothing here infers units.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fundamental constants used throughout the crate.
///
/// Two compiled-in profiles exist: CODATA 2018 exact values, and a
/// "paper-rounded" profile with c = 3×10⁸ m/s that reproduces round
/// conversions such as a/ω₀c = 1 ⇔ a = 3×10¹⁷ m/s² at ω₀ = 10⁹ rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Speed of light in vacuum (m/s).
    pub c: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Planck constant (J·s).
    pub h: f64,
    /// Boltzmann constant (J/K).
    pub kb: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    c: 299_792_458.0,
    hbar: 1.054_571_817e-34,
    h: 6.626_070_15e-34,
    kb: 1.380_649e-23,
};

pub const PAPER_ROUNDED: PhysicalConstants = PhysicalConstants {
    c: 3.0e8,
    hbar: 1.054_571_817e-34,
    h: 6.626_070_15e-34,
    kb: 1.380_649e-23,
};

/// Typical hydrogen-atom mass (kg), the default test mass of the set-up.
pub const HYDROGEN_MASS: f64 = 1.6735e-27;

/// Selector between the two constant profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsProfile {
    #[default]
    Codata,
    Paper,
}

impl ConstantsProfile {
    pub fn constants(self) -> &'static PhysicalConstants {
        match self {
            ConstantsProfile::Codata => &CODATA,
            ConstantsProfile::Paper => &PAPER_ROUNDED,
        }
    }
}

/// Mirror configuration tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    FreeSpace,
    SingleMirror,
    DoubleMirror,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scenario::FreeSpace => write!(f, "free"),
            Scenario::SingleMirror => write!(f, "single"),
            Scenario::DoubleMirror => write!(f, "double"),
        }
    }
}

/// Mirror layout in SI lengths. The detector sits at distance z₀ from the
/// first mirror; a double-mirror system adds the second plane at z = L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum LabGeometry {
    FreeSpace,
    SingleMirror { z0: f64 },
    DoubleMirror { z0: f64, gap: f64 },
}

/// Full SI description of detector, motion, coupling, and mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabSetup {
    /// Detector angular gap ω₀ (rad/s).
    pub omega0: f64,
    /// Proper acceleration a (m/s²).
    pub accel: f64,
    /// Dimensionless coupling κ = λ²/ħc³.
    pub kappa: f64,
    /// Initial superposition angle θ (rad).
    pub theta: f64,
    pub geometry: LabGeometry,
}

impl LabSetup {
    pub fn scenario(&self) -> Scenario {
        match self.geometry {
            LabGeometry::FreeSpace => Scenario::FreeSpace,
            LabGeometry::SingleMirror { .. } => Scenario::SingleMirror,
            LabGeometry::DoubleMirror { .. } => Scenario::DoubleMirror,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) {
            return Err(Error::Domain(format!("omega0 must be > 0, got {}", self.omega0)));
        }
        if !(self.accel >= 0.0) {
            return Err(Error::Domain(format!("acceleration must be >= 0, got {}", self.accel)));
        }
        if !(self.kappa > 0.0) {
            return Err(Error::Domain(format!("kappa must be > 0, got {}", self.kappa)));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(Error::Domain(format!("theta must lie in [0, pi], got {}", self.theta)));
        }
        match self.geometry {
            LabGeometry::FreeSpace => Ok(()),
            LabGeometry::SingleMirror { z0 } => {
                if z0 > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Geometry(format!("z0 must be > 0, got {z0}")))
                }
            }
            LabGeometry::DoubleMirror { z0, gap } => {
                if z0 > 0.0 && z0 < gap {
                    Ok(())
                } else {
                    Err(Error::Geometry(format!(
                        "double mirror needs 0 < z0 < L, got z0 = {z0}, L = {gap}"
                    )))
                }
            }
        }
    }
}

/// Mirror layout in the dimensionless groups ζ = ω₀z₀/c, Λ = ω₀L/c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum ReducedGeometry {
    FreeSpace,
    SingleMirror { zeta: f64 },
    DoubleMirror { zeta: f64, lam: f64 },
}

/// Dimensionless description of a run: α = a/ω₀c plus geometry, coupling,
/// and initial angle. This is the native parameterization of every
/// numerical routine in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedSetup {
    /// Dimensionless acceleration α = a/(ω₀c).
    pub alpha: f64,
    /// Dimensionless coupling κ.
    pub kappa: f64,
    /// Initial superposition angle θ (rad).
    pub theta: f64,
    pub geometry: ReducedGeometry,
}

impl ReducedSetup {
    pub fn free_space(alpha: f64, kappa: f64, theta: f64) -> Self {
        ReducedSetup { alpha, kappa, theta, geometry: ReducedGeometry::FreeSpace }
    }

    pub fn single_mirror(alpha: f64, zeta: f64, kappa: f64, theta: f64) -> Self {
        ReducedSetup { alpha, kappa, theta, geometry: ReducedGeometry::SingleMirror { zeta } }
    }

    pub fn double_mirror(alpha: f64, zeta: f64, lam: f64, kappa: f64, theta: f64) -> Self {
        ReducedSetup { alpha, kappa, theta, geometry: ReducedGeometry::DoubleMirror { zeta, lam } }
    }

    pub fn scenario(&self) -> Scenario {
        match self.geometry {
            ReducedGeometry::FreeSpace => Scenario::FreeSpace,
            ReducedGeometry::SingleMirror { .. } => Scenario::SingleMirror,
            ReducedGeometry::DoubleMirror { .. } => Scenario::DoubleMirror,
        }
    }

    pub fn zeta(&self) -> Option<f64> {
        match self.geometry {
            ReducedGeometry::FreeSpace => None,
            ReducedGeometry::SingleMirror { zeta } | ReducedGeometry::DoubleMirror { zeta, .. } => {
                Some(zeta)
            }
        }
    }

    pub fn lam(&self) -> Option<f64> {
        match self.geometry {
            ReducedGeometry::DoubleMirror { lam, .. } => Some(lam),
            _ => None,
        }
    }

    /// Same setup with a different α.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Same setup with a different atom–mirror distance ζ.
    pub fn with_zeta(mut self, zeta: f64) -> Result<Self> {
        match &mut self.geometry {
            ReducedGeometry::FreeSpace => {
                Err(Error::Geometry("free space has no zeta to set".into()))
            }
            ReducedGeometry::SingleMirror { zeta: z } => {
                *z = zeta;
                Ok(self)
            }
            ReducedGeometry::DoubleMirror { zeta: z, .. } => {
                *z = zeta;
                Ok(self)
            }
        }
    }

    /// Same setup with a different mirror separation Λ.
    pub fn with_lam(mut self, lam: f64) -> Result<Self> {
        match &mut self.geometry {
            ReducedGeometry::DoubleMirror { lam: l, .. } => {
                *l = lam;
                Ok(self)
            }
            _ => Err(Error::Geometry("only a double-mirror setup has lam".into())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) {
            return Err(Error::Domain(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        if !(self.kappa > 0.0) {
            return Err(Error::Domain(format!("kappa must be > 0, got {}", self.kappa)));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(Error::Domain(format!("theta must lie in [0, pi], got {}", self.theta)));
        }
        match self.geometry {
            ReducedGeometry::FreeSpace => Ok(()),
            ReducedGeometry::SingleMirror { zeta } => {
                if zeta > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Geometry(format!("zeta must be > 0, got {zeta}")))
                }
            }
            ReducedGeometry::DoubleMirror { zeta, lam } => {
                if zeta > 0.0 && zeta < lam {
                    Ok(())
                } else {
                    Err(Error::Geometry(format!(
                        "double mirror needs 0 < zeta < lam, got zeta = {zeta}, lam = {lam}"
                    )))
                }
            }
        }
    }
}

/// Convert an SI setup to the dimensionless groups α = a/ω₀c, ζ = ω₀z₀/c,
/// Λ = ω₀L/c. κ, θ, and the scenario pass through.
pub fn reduce(setup: &LabSetup, constants: &PhysicalConstants) -> Result<ReducedSetup> {
    setup.validate()?;
    let scale = setup.omega0 / constants.c;
    let geometry = match setup.geometry {
        LabGeometry::FreeSpace => ReducedGeometry::FreeSpace,
        LabGeometry::SingleMirror { z0 } => ReducedGeometry::SingleMirror { zeta: scale * z0 },
        LabGeometry::DoubleMirror { z0, gap } => {
            ReducedGeometry::DoubleMirror { zeta: scale * z0, lam: scale * gap }
        }
    };
    let reduced = ReducedSetup {
        alpha: setup.accel / (setup.omega0 * constants.c),
        kappa: setup.kappa,
        theta: setup.theta,
        geometry,
    };
    reduced.validate()?;
    Ok(reduced)
}

/// Inverse of [`reduce`] at a given ω₀.
pub fn unreduce(
    setup: &ReducedSetup,
    omega0: f64,
    constants: &PhysicalConstants,
) -> Result<LabSetup> {
    setup.validate()?;
    if !(omega0 > 0.0) {
        return Err(Error::Domain(format!("omega0 must be > 0, got {omega0}")));
    }
    let scale = constants.c / omega0;
    let geometry = match setup.geometry {
        ReducedGeometry::FreeSpace => LabGeometry::FreeSpace,
        ReducedGeometry::SingleMirror { zeta } => LabGeometry::SingleMirror { z0: scale * zeta },
        ReducedGeometry::DoubleMirror { zeta, lam } => {
            LabGeometry::DoubleMirror { z0: scale * zeta, gap: scale * lam }
        }
    };
    let lab = LabSetup {
        omega0,
        accel: setup.alpha * omega0 * constants.c,
        kappa: setup.kappa,
        theta: setup.theta,
        geometry,
    };
    lab.validate()?;
    Ok(lab)
}

/// Unruh temperature T = ħa/(2πck_B) of a detector at proper acceleration a.
pub fn unruh_temperature(accel: f64, constants: &PhysicalConstants) -> f64 {
    constants.hbar * accel / (2.0 * std::f64::consts::PI * constants.c * constants.kb)
}

/// Acceleration a = k_B ΔT/(mΔx) reachable with the thermal-gradient
/// technique: temperature change ΔT across a slab of width Δx.
pub fn thermal_gradient_acceleration(
    delta_t: f64,
    delta_x: f64,
    mass: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(delta_x > 0.0) {
        return Err(Error::Domain(format!("delta_x must be > 0, got {delta_x}")));
    }
    if !(mass > 0.0) {
        return Err(Error::Domain(format!("mass must be > 0, got {mass}")));
    }
    if !(delta_t >= 0.0) {
        return Err(Error::Domain(format!("delta_t must be >= 0, got {delta_t}")));
    }
    Ok(constants.kb * delta_t / (mass * delta_x))
}

/// de Broglie wavelength λ = h/(mv) of an atom of the given mass and speed.
pub fn de_broglie_wavelength(mass: f64, speed: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::Domain(format!("mass must be > 0, got {mass}")));
    }
    if !(speed > 0.0) {
        return Err(Error::Domain(format!("speed must be > 0, got {speed}")));
    }
    Ok(constants.h / (mass * speed))
}

/// Interference phase 2πΔx̄/λ_dB associated with a path difference Δx̄ for
/// atoms of the given mass and speed at the slits.
pub fn fringe_phase_from_path(
    path_diff: f64,
    mass: f64,
    speed: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let lambda = de_broglie_wavelength(mass, speed, constants)?;
    Ok(2.0 * std::f64::consts::PI * path_diff / lambda)
}
