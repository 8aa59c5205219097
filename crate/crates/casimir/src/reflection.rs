//! TM/TE reflection coefficients at imaginary frequency for a homogeneous
//! half-space, and the model-specific zero-frequency limits.
//!
//! Conventions: `y >= zeta >= 0` is the dimensionless integration domain,
//! `eps >= 1` on the imaginary axis for passive media, and the TE coefficient
//! comes out `<= 0` (only its square ever enters the force).

use crate::dielectric::{debye_kappa, plasma_frequency, DielectricError, MaterialModel};
use crate::quantities::{reduce_frequency, Geometry};
use serde::Serialize;

/// Reflection coefficients for the two polarizations at one (zeta, y) point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionPair {
    pub tm: f64,
    pub te: f64,
}

impl ReflectionPair {
    pub const ZERO: ReflectionPair = ReflectionPair { tm: 0.0, te: 0.0 };
}

/// Fresnel coefficients at imaginary frequency:
/// r_TM = (eps y - s) / (eps y + s), r_TE = (y - s) / (y + s),
/// with s = sqrt(y^2 + (eps - 1) zeta^2).
///
/// Magnitudes are O(1)..O(10^2) across the usable domain, so the square root
/// is evaluated exactly as written.
pub fn fresnel(zeta: f64, y: f64, eps: f64) -> ReflectionPair {
    let s = (y * y + (eps - 1.0) * zeta * zeta).sqrt();
    ReflectionPair {
        tm: (eps * y - s) / (eps * y + s),
        te: (y - s) / (y + s),
    }
}

/// Zero-frequency (l = 0) reflection coefficients for a material model.
///
/// - neglected carriers: the static-dielectric Fresnel limit ((eps0-1)/(eps0+1), 0)
/// - Drude: (1, 0)
/// - plasma: (1, r_TE(y)) with the reduced plasma frequencies under the root
/// - drift-diffusion: Debye-screened TM coefficient, r_TE = 0
pub fn zero_frequency(y: f64, model: &MaterialModel, geom: &Geometry) -> Result<ReflectionPair, DielectricError> {
    let pair = match model {
        MaterialModel::NeglectedCarriers { oscillator } => {
            let eps0 = oscillator.eps_static();
            ReflectionPair { tm: (eps0 - 1.0) / (eps0 + 1.0), te: 0.0 }
        }
        MaterialModel::Drude { .. } => ReflectionPair { tm: 1.0, te: 0.0 },
        MaterialModel::Plasma { electrons, holes, .. } => {
            let wpe = reduce_frequency(plasma_frequency(electrons), geom);
            let wph = reduce_frequency(plasma_frequency(holes), geom);
            let s = (y * y + wpe * wpe + wph * wph).sqrt();
            ReflectionPair { tm: 1.0, te: (y - s) / (y + s) }
        }
        MaterialModel::DriftDiffusion { oscillator, electrons, holes } => {
            let eps0 = oscillator.eps_static();
            let kappa = debye_kappa(electrons, holes, eps0, geom.temperature())?;
            let kappa_reduced = 2.0 * geom.separation() * kappa;
            let s = (y * y + kappa_reduced * kappa_reduced).sqrt();
            ReflectionPair { tm: (eps0 * s - y) / (eps0 * s + y), te: 0.0 }
        }
    };
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dielectric::{CarrierSpecies, ModelKind, OscillatorModel};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ge(kind: ModelKind) -> MaterialModel {
        MaterialModel::germanium(kind)
    }

    fn geom(a: f64) -> Geometry {
        Geometry::reference_sphere(a).unwrap()
    }

    #[test]
    fn vacuum_is_reflectionless() {
        for (zeta, y) in [(0.0, 0.3), (1.0, 1.0), (2.5, 7.0)] {
            let r = fresnel(zeta, y, 1.0);
            assert_eq!(r.tm, 0.0);
            assert_eq!(r.te, 0.0);
        }
    }

    #[test]
    fn static_limit_is_y_independent() {
        let expected = 15.2 / 17.2;
        for y in [1e-3, 0.1, 1.0, 10.0, 55.0] {
            let r = fresnel(0.0, y, 16.2);
            assert_relative_eq!(r.tm, expected, max_relative = 1e-14);
            assert_eq!(r.te, 0.0);
        }
    }

    #[test]
    fn lower_integration_limit_closed_form() {
        // At y = zeta the root is y sqrt(eps), so both coefficients collapse
        // to (sqrt(eps) -+ 1) / (sqrt(eps) +- 1) shapes.
        let eps: f64 = 16.2;
        let zeta = 1.3;
        let r = fresnel(zeta, zeta, eps);
        assert_relative_eq!(r.tm, (eps - eps.sqrt()) / (eps + eps.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(r.te, (1.0 - eps.sqrt()) / (1.0 + eps.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(r.tm, 0.601_983_900_065_839_2, max_relative = 1e-14);
    }

    #[test]
    fn ideal_metal_limit() {
        let r = fresnel(2.0, 3.0, 1e8);
        assert!((r.tm - 1.0).abs() < 1e-3, "tm = {}", r.tm);
        assert!((r.te + 1.0).abs() < 1e-3, "te = {}", r.te);
    }

    #[test]
    fn drude_zero_frequency() {
        for y in [0.01, 1.0, 20.0] {
            let r = zero_frequency(y, &ge(ModelKind::Drude), &geom(1e-6)).unwrap();
            assert_eq!(r.tm, 1.0);
            assert_eq!(r.te, 0.0);
        }
    }

    #[test]
    fn neglected_zero_frequency() {
        let r = zero_frequency(0.7, &ge(ModelKind::Neglected), &geom(1e-6)).unwrap();
        assert_relative_eq!(r.tm, 15.2 / 17.2, max_relative = 1e-15);
        assert_eq!(r.te, 0.0);
    }

    #[test]
    fn plasma_zero_frequency_te() {
        // Reduced Ge plasma frequencies at a = 1 um give
        // wpe^2 + wph^2 = 4.2662e-5 and r_te(1) = -1.0665e-5.
        let r = zero_frequency(1.0, &ge(ModelKind::Plasma), &geom(1e-6)).unwrap();
        assert_eq!(r.tm, 1.0);
        assert_relative_eq!(r.te, -1.066_531_147_967_896_7e-5, max_relative = 1e-10);
    }

    #[test]
    fn drift_diffusion_without_screening_is_neglected() {
        let osc = OscillatorModel::germanium();
        let empty = CarrierSpecies::new(0.0, 0.12, 0.0).unwrap();
        let dd = MaterialModel::DriftDiffusion { oscillator: osc, electrons: empty, holes: empty };
        for y in [0.05, 0.8, 3.0] {
            let r = zero_frequency(y, &dd, &geom(1e-6)).unwrap();
            let r_ref = zero_frequency(y, &ge(ModelKind::Neglected), &geom(1e-6)).unwrap();
            assert_relative_eq!(r.tm, r_ref.tm, max_relative = 1e-14);
            assert_eq!(r.te, 0.0);
        }
    }

    #[test]
    fn drift_diffusion_strong_screening_is_ideal_tm() {
        // Pushing the density (hence kappa) up drives the TM coefficient to 1.
        let osc = OscillatorModel::germanium();
        let dense = CarrierSpecies::new(1e25, 0.12, 0.0).unwrap();
        let dd = MaterialModel::DriftDiffusion { oscillator: osc, electrons: dense, holes: dense };
        let r = zero_frequency(1.0, &dd, &geom(1e-6)).unwrap();
        assert!((r.tm - 1.0).abs() < 1e-4, "tm = {}", r.tm);
    }

    #[test]
    fn drift_diffusion_monotone_in_kappa() {
        let osc = OscillatorModel::germanium();
        let y = 0.9;
        let g = geom(1e-6);
        let mut last = zero_frequency(y, &ge(ModelKind::Neglected), &g).unwrap().tm;
        for scale in [1e-3, 1e-1, 1.0, 1e1, 1e3, 1e6] {
            let e = CarrierSpecies::new(2.3e13 * scale, 0.12, 0.0).unwrap();
            let h = CarrierSpecies::new(2.3e13 * scale, 0.21, 0.0).unwrap();
            let dd = MaterialModel::DriftDiffusion { oscillator: osc, electrons: e, holes: h };
            let tm = zero_frequency(y, &dd, &g).unwrap().tm;
            assert!(tm > last, "tm should grow with kappa: {tm} vs {last}");
            assert!(tm < 1.0);
            last = tm;
        }
    }

    #[test]
    fn zero_frequency_tm_ordering() {
        // The microscopic source of the model sandwich: at l = 0 and fixed y,
        // neglected < drift-diffusion(Ge) < Drude = plasma = 1.
        let g = geom(0.8e-6);
        for y in [0.1, 0.5, 1.0, 2.0, 8.0] {
            let neg = zero_frequency(y, &ge(ModelKind::Neglected), &g).unwrap().tm;
            let dd = zero_frequency(y, &ge(ModelKind::Diffusion), &g).unwrap().tm;
            let drude = zero_frequency(y, &ge(ModelKind::Drude), &g).unwrap().tm;
            let plasma = zero_frequency(y, &ge(ModelKind::Plasma), &g).unwrap().tm;
            assert!(neg < dd && dd < drude, "y={y}: {neg} < {dd} < {drude}");
            assert_eq!(drude, 1.0);
            assert_eq!(plasma, 1.0);
        }
    }

    #[test]
    fn drift_diffusion_requires_finite_temperature() {
        let g = Geometry::new(1e-6, 0.151, 0.0).unwrap();
        assert!(zero_frequency(1.0, &ge(ModelKind::Diffusion), &g).is_err());
    }

    proptest! {
        #[test]
        fn fresnel_bounds_and_signs(
            zeta in 0.0f64..30.0,
            dy in 0.0f64..60.0,
            eps in 1.0f64..1e6,
        ) {
            let y = zeta + dy;
            prop_assume!(y > 0.0);
            let r = fresnel(zeta, y, eps);
            prop_assert!(r.tm >= 0.0 && r.tm <= 1.0);
            prop_assert!(r.te <= 0.0 && r.te >= -1.0);
        }

        #[test]
        fn zero_frequency_bounds(y in 1e-6f64..60.0, a_um in 0.1f64..5.0) {
            let g = geom(a_um * 1e-6);
            for kind in ModelKind::ALL {
                let r = zero_frequency(y, &ge(kind), &g).unwrap();
                prop_assert!(r.tm >= 0.0 && r.tm <= 1.0);
                prop_assert!(r.te <= 0.0 && r.te >= -1.0);
            }
        }
    }
}
