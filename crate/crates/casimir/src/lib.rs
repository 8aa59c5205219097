//! Thermal Casimir force between a spherical lens and a plate in the
//! proximity force approximation, for intrinsic germanium described by four
//! dielectric-response models: carriers neglected, Drude, plasma, and
//! drift-diffusion.
//!
//! The force at separation `a`, sphere radius `R`, and temperature `T` is a
//! primed Matsubara sum of y-integrals over the squared TM/TE reflection
//! coefficients at imaginary frequency. [`engine::LifshitzEngine`] evaluates
//! it with adaptive Gauss-Kronrod quadrature, compensated summation, and an
//! analytic bound on the truncated tail; [`oracle`] holds series-summed
//! closed forms (zeta(3), the trilogarithm) that validate the engine through
//! an entirely independent code path.
//!
//! ```
//! use casimir::dielectric::{MaterialModel, ModelKind};
//! use casimir::engine::LifshitzEngine;
//! use casimir::quantities::Geometry;
//!
//! let geom = Geometry::reference_sphere(1.0e-6).unwrap(); // a = 1 um, R = 15.10 cm, T = 300 K
//! let model = MaterialModel::germanium(ModelKind::Drude);
//! let engine = LifshitzEngine::with_defaults();
//! let force = engine.casimir_force(&model, &geom).unwrap();
//! assert!((force.magnitude * 1e12 - 176.78).abs() < 0.01); // pN
//! ```

pub mod cli;
pub mod dielectric;
pub mod engine;
pub mod golden;
mod numerics;
pub mod oracle;
pub mod quantities;
pub mod reflection;

pub use dielectric::{CarrierSpecies, MaterialModel, ModelKind, OscillatorModel};
pub use engine::{EngineConfig, ForceResult, LifshitzEngine, TermBreakdown};
pub use quantities::Geometry;
pub use reflection::ReflectionPair;
