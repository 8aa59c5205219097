//! Physical constants, geometry, and the dimensionless scalings used everywhere else.
//!
//! All lengths are SI metres and temperatures kelvin. The only Gaussian-unit
//! quantities in the crate live in [`crate::dielectric`] (plasma frequency and
//! Debye wavenumber), which is why the electron charge is carried here in statC
//! and the electron mass in grams.

use serde::Serialize;
use thiserror::Error;

/// CODATA-2018 constants, frozen so outputs are bit-reproducible.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J s)
    pub hbar: f64,
    /// Speed of light (m/s)
    pub c: f64,
    /// Boltzmann constant (J/K)
    pub k_b: f64,
    /// Elementary charge in Gaussian units (statC)
    pub e_gauss: f64,
    /// Electron mass in Gaussian units (g)
    pub m_electron: f64,
}

/// The single definition site for every constant the crate uses.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 2.997_924_58e8,
    k_b: 1.380_649e-23,
    e_gauss: 4.803_204_25e-10,
    m_electron: 9.109_383_701_5e-28,
};

impl PhysicalConstants {
    /// Boltzmann constant in erg/K, for the Gaussian-unit formulas.
    pub fn k_b_erg(&self) -> f64 {
        self.k_b * 1.0e7
    }
}

/// Sphere-plate configuration and temperature.
///
/// The proximity force approximation behind the whole computation assumes
/// `separation / sphere_radius` is small; [`Geometry::pfa_valid`] flags the
/// `<= 1e-3` regime the force formula is trusted in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geometry {
    /// Plate-sphere separation a (m)
    separation: f64,
    /// Sphere (lens) radius R (m)
    sphere_radius: f64,
    /// Temperature T (K)
    temperature: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("separation must be strictly positive, got {0} m")]
    InvalidSeparation(f64),
    #[error("sphere radius must be strictly positive, got {0} m")]
    InvalidRadius(f64),
    #[error("temperature must be non-negative and finite, got {0} K")]
    InvalidTemperature(f64),
}

impl Geometry {
    pub fn new(separation: f64, sphere_radius: f64, temperature: f64) -> Result<Self, GeometryError> {
        if !(separation > 0.0 && separation.is_finite()) {
            return Err(GeometryError::InvalidSeparation(separation));
        }
        if !(sphere_radius > 0.0 && sphere_radius.is_finite()) {
            return Err(GeometryError::InvalidRadius(sphere_radius));
        }
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(GeometryError::InvalidTemperature(temperature));
        }
        Ok(Self { separation, sphere_radius, temperature })
    }

    /// R = 15.10 cm, T = 300 K at the given separation: the configuration all
    /// reference values are quoted for.
    pub fn reference_sphere(separation: f64) -> Result<Self, GeometryError> {
        Self::new(separation, 0.1510, 300.0)
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn sphere_radius(&self) -> f64 {
        self.sphere_radius
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// True when a/R is small enough for the proximity force approximation.
    pub fn pfa_valid(&self) -> bool {
        self.separation / self.sphere_radius <= 1e-3
    }
}

/// One term of the Matsubara sum: index, dimensionless frequency, and the
/// summation weight (1/2 for l = 0, 1 otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatsubaraPoint {
    pub l: u32,
    pub zeta: f64,
    pub weight: f64,
}

/// Dimensionless Matsubara frequency zeta_l = 4 pi a k_B T l / (hbar c).
pub fn matsubara_zeta(l: u32, geom: &Geometry) -> f64 {
    matsubara_spacing(geom) * f64::from(l)
}

/// The constant gap zeta_{l+1} - zeta_l for the given geometry.
pub fn matsubara_spacing(geom: &Geometry) -> f64 {
    let k = CODATA_2018;
    4.0 * std::f64::consts::PI * geom.separation() * k.k_b * geom.temperature() / (k.hbar * k.c)
}

pub fn matsubara_point(l: u32, geom: &Geometry) -> MatsubaraPoint {
    MatsubaraPoint {
        l,
        zeta: matsubara_zeta(l, geom),
        weight: if l == 0 { 0.5 } else { 1.0 },
    }
}

/// Characteristic frequency omega_c = c / (2a) (rad/s).
pub fn characteristic_frequency(geom: &Geometry) -> f64 {
    CODATA_2018.c / (2.0 * geom.separation())
}

/// Scale an angular frequency (rad/s) by omega_c of the geometry.
pub fn reduce_frequency(omega: f64, geom: &Geometry) -> f64 {
    omega / characteristic_frequency(geom)
}
