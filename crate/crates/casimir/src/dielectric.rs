//! Dielectric permittivity along the imaginary frequency axis for the four
//! material models: carriers neglected, Drude, plasma, and drift-diffusion.
//!
//! The oscillator (core-lattice) permittivity is shared by all four models.
//! Free carriers add Drude/plasma terms at nonzero Matsubara frequencies and
//! change the zero-frequency reflection coefficients (see [`crate::reflection`]).
//! The drift-diffusion model keeps the oscillator permittivity at every nonzero
//! frequency and enters only through Debye screening at zero frequency.

use crate::quantities::CODATA_2018;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DielectricError {
    #[error("oscillator permittivity requires eps_static >= eps_inf >= 1 and omega_0 > 0")]
    InvalidOscillator,
    #[error("carrier species requires density >= 0, mass_ratio > 0, gamma >= 0")]
    InvalidCarrier,
    #[error("l = 0 must go through the zero-frequency reflection coefficients, not eps_model")]
    ZeroFrequencyPath,
    #[error("Debye screening is undefined at T = 0")]
    ZeroTemperature,
}

/// Single-oscillator permittivity eps(i xi) = eps_inf + (eps_static - eps_inf) / (1 + xi^2/omega_0^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OscillatorParams", into = "OscillatorParams")]
pub struct OscillatorModel {
    eps_inf: f64,
    eps_static: f64,
    omega_0: f64,
}

/// Raw serde image of [`OscillatorModel`]; construction revalidates.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct OscillatorParams {
    eps_inf: f64,
    eps_static: f64,
    omega_0: f64,
}

impl From<OscillatorModel> for OscillatorParams {
    fn from(m: OscillatorModel) -> Self {
        Self { eps_inf: m.eps_inf, eps_static: m.eps_static, omega_0: m.omega_0 }
    }
}

impl TryFrom<OscillatorParams> for OscillatorModel {
    type Error = DielectricError;
    fn try_from(p: OscillatorParams) -> Result<Self, DielectricError> {
        OscillatorModel::new(p.eps_inf, p.eps_static, p.omega_0)
    }
}

impl OscillatorModel {
    pub fn new(eps_inf: f64, eps_static: f64, omega_0: f64) -> Result<Self, DielectricError> {
        let finite = eps_inf.is_finite() && eps_static.is_finite() && omega_0.is_finite();
        if !finite || !(eps_inf >= 1.0) || !(eps_static > eps_inf) || !(omega_0 > 0.0) {
            return Err(DielectricError::InvalidOscillator);
        }
        Ok(Self { eps_inf, eps_static, omega_0 })
    }

    /// Intrinsic germanium: eps_inf = 1.1, eps_static = 16.2, omega_0 = 5.0e15 rad/s.
    pub fn germanium() -> Self {
        Self { eps_inf: 1.1, eps_static: 16.2, omega_0: 5.0e15 }
    }

    /// The degenerate eps = 1 medium. Not constructible through `new` (which
    /// demands eps_static > eps_inf) but needed as a reflectionless reference.
    pub const fn vacuum() -> Self {
        Self { eps_inf: 1.0, eps_static: 1.0, omega_0: 1.0 }
    }

    pub fn eps_inf(&self) -> f64 {
        self.eps_inf
    }

    pub fn eps_static(&self) -> f64 {
        self.eps_static
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }
}

/// One free-carrier species. The plasma frequency is fixed at construction;
/// it depends only on density and effective mass, never on geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CarrierParams", into = "CarrierParams")]
pub struct CarrierSpecies {
    density_cm3: f64,
    mass_ratio: f64,
    gamma: f64,
    plasma_frequency: f64,
}

/// Raw serde image of [`CarrierSpecies`]; construction revalidates and
/// recomputes the cached plasma frequency.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct CarrierParams {
    /// Carrier density (cm^-3)
    density_cm3: f64,
    /// Effective mass over the electron mass
    mass_ratio: f64,
    /// Relaxation rate (s^-1)
    gamma: f64,
}

impl From<CarrierSpecies> for CarrierParams {
    fn from(s: CarrierSpecies) -> Self {
        Self { density_cm3: s.density_cm3, mass_ratio: s.mass_ratio, gamma: s.gamma }
    }
}

impl TryFrom<CarrierParams> for CarrierSpecies {
    type Error = DielectricError;
    fn try_from(p: CarrierParams) -> Result<Self, DielectricError> {
        CarrierSpecies::new(p.density_cm3, p.mass_ratio, p.gamma)
    }
}

impl CarrierSpecies {
    pub fn new(density_cm3: f64, mass_ratio: f64, gamma: f64) -> Result<Self, DielectricError> {
        let finite = density_cm3.is_finite() && mass_ratio.is_finite() && gamma.is_finite();
        if !finite || !(density_cm3 >= 0.0) || !(mass_ratio > 0.0) || !(gamma >= 0.0) {
            return Err(DielectricError::InvalidCarrier);
        }
        let k = CODATA_2018;
        // Gaussian units: statC^2 cm^-3 / g gives s^-2 directly.
        let plasma_frequency =
            (4.0 * std::f64::consts::PI * density_cm3 * k.e_gauss * k.e_gauss / (mass_ratio * k.m_electron)).sqrt();
        Ok(Self { density_cm3, mass_ratio, gamma, plasma_frequency })
    }

    /// Electrons in intrinsic Ge at 300 K: n = 2.3e13 cm^-3, m* = 0.12 m, gamma = 2.6e11 s^-1.
    pub fn germanium_electrons() -> Self {
        Self::new(2.3e13, 0.12, 2.6e11).expect("valid Ge electron parameters")
    }

    /// Holes in intrinsic Ge at 300 K: n = 2.3e13 cm^-3, m* = 0.21 m, gamma = 2.6e11 s^-1.
    pub fn germanium_holes() -> Self {
        Self::new(2.3e13, 0.21, 2.6e11).expect("valid Ge hole parameters")
    }

    pub fn density_cm3(&self) -> f64 {
        self.density_cm3
    }

    pub fn mass_ratio(&self) -> f64 {
        self.mass_ratio
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Plasma frequency omega_p = sqrt(4 pi n e^2 / m_eff) (rad/s).
pub fn plasma_frequency(species: &CarrierSpecies) -> f64 {
    species.plasma_frequency
}

/// The four canonical model identifiers, in the comparison-table column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Neglected,
    Drude,
    Plasma,
    Diffusion,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Neglected, ModelKind::Drude, ModelKind::Plasma, ModelKind::Diffusion];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Neglected => "neglected",
            ModelKind::Drude => "drude",
            ModelKind::Plasma => "plasma",
            ModelKind::Diffusion => "diffusion",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "neglected" => Ok(ModelKind::Neglected),
            "drude" => Ok(ModelKind::Drude),
            "plasma" => Ok(ModelKind::Plasma),
            "diffusion" => Ok(ModelKind::Diffusion),
            other => Err(format!(
                "unknown model '{other}' (expected neglected, drude, plasma, or diffusion)"
            )),
        }
    }
}

/// A dielectric-response model: the oscillator core plus the chosen treatment
/// of free carriers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MaterialModel {
    /// Free carriers ignored entirely.
    NeglectedCarriers { oscillator: OscillatorModel },
    /// Carriers with finite relaxation.
    Drude { oscillator: OscillatorModel, electrons: CarrierSpecies, holes: CarrierSpecies },
    /// Drude with both relaxation rates forced to zero at evaluation time.
    Plasma { oscillator: OscillatorModel, electrons: CarrierSpecies, holes: CarrierSpecies },
    /// Oscillator permittivity at all nonzero frequencies; carriers act only
    /// through Debye screening of the zero-frequency TM mode.
    DriftDiffusion { oscillator: OscillatorModel, electrons: CarrierSpecies, holes: CarrierSpecies },
}

impl MaterialModel {
    /// The named Ge preset for a model kind.
    pub fn germanium(kind: ModelKind) -> Self {
        let oscillator = OscillatorModel::germanium();
        let electrons = CarrierSpecies::germanium_electrons();
        let holes = CarrierSpecies::germanium_holes();
        match kind {
            ModelKind::Neglected => MaterialModel::NeglectedCarriers { oscillator },
            ModelKind::Drude => MaterialModel::Drude { oscillator, electrons, holes },
            ModelKind::Plasma => MaterialModel::Plasma { oscillator, electrons, holes },
            ModelKind::Diffusion => MaterialModel::DriftDiffusion { oscillator, electrons, holes },
        }
    }

    /// A carrier model built from explicit parts (Ge is just the default parts).
    pub fn from_parts(
        kind: ModelKind,
        oscillator: OscillatorModel,
        electrons: CarrierSpecies,
        holes: CarrierSpecies,
    ) -> Self {
        match kind {
            ModelKind::Neglected => MaterialModel::NeglectedCarriers { oscillator },
            ModelKind::Drude => MaterialModel::Drude { oscillator, electrons, holes },
            ModelKind::Plasma => MaterialModel::Plasma { oscillator, electrons, holes },
            ModelKind::Diffusion => MaterialModel::DriftDiffusion { oscillator, electrons, holes },
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            MaterialModel::NeglectedCarriers { .. } => ModelKind::Neglected,
            MaterialModel::Drude { .. } => ModelKind::Drude,
            MaterialModel::Plasma { .. } => ModelKind::Plasma,
            MaterialModel::DriftDiffusion { .. } => ModelKind::Diffusion,
        }
    }

    pub fn oscillator(&self) -> &OscillatorModel {
        match self {
            MaterialModel::NeglectedCarriers { oscillator }
            | MaterialModel::Drude { oscillator, .. }
            | MaterialModel::Plasma { oscillator, .. }
            | MaterialModel::DriftDiffusion { oscillator, .. } => oscillator,
        }
    }

    pub fn carriers(&self) -> Option<(&CarrierSpecies, &CarrierSpecies)> {
        match self {
            MaterialModel::NeglectedCarriers { .. } => None,
            MaterialModel::Drude { electrons, holes, .. }
            | MaterialModel::Plasma { electrons, holes, .. }
            | MaterialModel::DriftDiffusion { electrons, holes, .. } => Some((electrons, holes)),
        }
    }
}

/// Oscillator permittivity at the dimensionless frequency `zeta` (actual
/// frequency zeta * omega_c).
pub fn eps_oscillator(zeta: f64, omega_c: f64, osc: &OscillatorModel) -> f64 {
    let x = zeta * omega_c / osc.omega_0;
    osc.eps_inf + (osc.eps_static - osc.eps_inf) / (1.0 + x * x)
}

/// Permittivity of a material model at Matsubara index l >= 1.
///
/// The l = 0 limit is not a permittivity question: each model prescribes its
/// own zero-frequency reflection coefficients, so this rejects l = 0.
pub fn eps_model(l: u32, zeta: f64, omega_c: f64, model: &MaterialModel) -> Result<f64, DielectricError> {
    if l == 0 || zeta <= 0.0 {
        return Err(DielectricError::ZeroFrequencyPath);
    }
    let core = eps_oscillator(zeta, omega_c, model.oscillator());
    let eps = match model {
        MaterialModel::NeglectedCarriers { .. } | MaterialModel::DriftDiffusion { .. } => core,
        MaterialModel::Drude { electrons, holes, .. } => {
            core + carrier_term(electrons, zeta, omega_c, electrons.gamma())
                + carrier_term(holes, zeta, omega_c, holes.gamma())
        }
        MaterialModel::Plasma { electrons, holes, .. } => {
            core + carrier_term(electrons, zeta, omega_c, 0.0) + carrier_term(holes, zeta, omega_c, 0.0)
        }
    };
    Ok(eps)
}

fn carrier_term(species: &CarrierSpecies, zeta: f64, omega_c: f64, gamma: f64) -> f64 {
    let wp_reduced = plasma_frequency(species) / omega_c;
    let gamma_reduced = gamma / omega_c;
    wp_reduced * wp_reduced / (zeta * (zeta + gamma_reduced))
}

/// Debye screening wavenumber kappa = sqrt(4 pi e^2 (n_e + n_h) / (eps_static k_B T)) (m^-1).
///
/// Evaluated in Gaussian units (cm, g, s, statC) and converted; the static
/// permittivity sits in the denominator because the carriers screen inside
/// the dielectric background.
pub fn debye_kappa(
    electrons: &CarrierSpecies,
    holes: &CarrierSpecies,
    eps_static: f64,
    temperature: f64,
) -> Result<f64, DielectricError> {
    if temperature <= 0.0 {
        return Err(DielectricError::ZeroTemperature);
    }
    let k = CODATA_2018;
    let n_total = electrons.density_cm3() + holes.density_cm3();
    let kappa_sq_cm = 4.0 * std::f64::consts::PI * k.e_gauss * k.e_gauss * n_total
        / (eps_static * k.k_b_erg() * temperature);
    Ok(kappa_sq_cm.sqrt() * 100.0)
}
