//! Independent closed-form values used to validate the force engine: zeta(3),
//! the trilogarithm on [0, 1], the classical ideal-reflector term, and the
//! carrier-difference identity.
//!
//! Everything here is computed by series summation with a rigorous remainder
//! bound, never by quadrature, so agreement with the engine cross-checks two
//! genuinely independent code paths.

use crate::engine::{EngineError, ReflectionModel};
use crate::numerics::KahanSum;
use crate::quantities::{Geometry, CODATA_2018};
use crate::reflection::ReflectionPair;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("trilog is only defined on [0, 1], got {0}")]
    OutOfDomain(f64),
    #[error("eps_static must exceed 1, got {0}")]
    InvalidStaticPermittivity(f64),
}

/// A series-summed value with the number of terms taken and a rigorous bound
/// on what was left behind.
#[derive(Debug, Clone, Copy)]
pub struct OracleValue {
    pub value: f64,
    pub series_terms_used: usize,
    pub bound_on_remainder: f64,
}

// Stop once the remainder bound is this small relative to the partial sum.
const REMAINDER_TARGET: f64 = 1e-15;

/// Trilogarithm Li3(x) = sum_{n>=1} x^n / n^3 for x in [0, 1]; Li3(1) = zeta(3).
///
/// For x < 1 the tail is bounded geometrically by
/// `x^{N+1} / ((N+1)^3 (1-x))`. At x = 1 the tail lies strictly between the
/// integral bounds `1/(2(N+1)^2)` and `1/(2N^2)`; their midpoint is added to
/// the sum and the half-width (~`1/(2N^3)`) is the reported remainder bound.
pub fn trilog(x: f64) -> Result<OracleValue, OracleError> {
    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
        return Err(OracleError::OutOfDomain(x));
    }
    if x == 0.0 {
        return Ok(OracleValue { value: 0.0, series_terms_used: 0, bound_on_remainder: 0.0 });
    }

    let mut sum = KahanSum::new();
    let mut power = 1.0f64;
    let mut n = 0usize;
    loop {
        n += 1;
        power *= x;
        let nf = n as f64;
        sum.add(power / (nf * nf * nf));

        let next = nf + 1.0;
        if x < 1.0 {
            let bound = power * x / (next * next * next * (1.0 - x));
            if bound <= REMAINDER_TARGET * sum.value() {
                return Ok(OracleValue { value: sum.value(), series_terms_used: n, bound_on_remainder: bound });
            }
        } else if n >= 200_000 {
            let upper = 1.0 / (2.0 * nf * nf);
            let lower = 1.0 / (2.0 * next * next);
            sum.add(0.5 * (upper + lower));
            return Ok(OracleValue {
                value: sum.value(),
                series_terms_used: n,
                bound_on_remainder: 0.5 * (upper - lower),
            });
        }
    }
}

/// zeta(3) by series.
pub fn zeta3() -> OracleValue {
    trilog(1.0).expect("1.0 is in the trilog domain")
}

/// The classical (l = 0 only, both reflections pinned to 1) sphere-plate
/// force: `-k_B T R zeta(3) / (4 a^2)` (N).
pub fn classical_ideal_term(geom: &Geometry) -> f64 {
    let a = geom.separation();
    -CODATA_2018.k_b * geom.temperature() * geom.sphere_radius() * zeta3().value / (4.0 * a * a)
}

/// Closed form for |F_Drude| - |F_neglected|:
/// `(k_B T R / 8 a^2) (zeta(3) - Li3(r0^2))` with `r0 = (eps0-1)/(eps0+1)` (N).
///
/// The two models differ only in the l = 0 TM coefficient (1 versus r0), and
/// each l = 0 integral is a trilogarithm.
pub fn drude_minus_neglected(geom: &Geometry, eps_static: f64) -> Result<f64, OracleError> {
    if !(eps_static > 1.0) {
        return Err(OracleError::InvalidStaticPermittivity(eps_static));
    }
    let r0 = (eps_static - 1.0) / (eps_static + 1.0);
    let li3 = trilog(r0 * r0)?;
    let a = geom.separation();
    let prefactor = CODATA_2018.k_b * geom.temperature() * geom.sphere_radius() / (8.0 * a * a);
    Ok(prefactor * (zeta3().value - li3.value))
}

/// Synthetic reflection model for validating the engine against
/// [`classical_ideal_term`]: both coefficients pinned to magnitude 1 at l = 0
/// and zero everywhere else.
#[derive(Debug, Clone, Copy)]
pub struct IdealZeroFrequencyModel;

impl ReflectionModel for IdealZeroFrequencyModel {
    fn reflection(&self, l: u32, _zeta: f64, _y: f64, _geom: &Geometry) -> Result<ReflectionPair, EngineError> {
        if l == 0 {
            Ok(ReflectionPair { tm: 1.0, te: -1.0 })
        } else {
            Ok(ReflectionPair::ZERO)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trilog_domain() {
        assert_eq!(trilog(-0.1).unwrap_err(), OracleError::OutOfDomain(-0.1));
        assert_eq!(trilog(1.5).unwrap_err(), OracleError::OutOfDomain(1.5));
        assert_eq!(trilog(0.0).unwrap().value, 0.0);
    }

    #[test]
    fn trilog_reference_values() {
        // frozen from the series itself; cross-checked below by quadrature
        let z3 = zeta3();
        assert_relative_eq!(z3.value, 1.202_056_903_159_594_3, max_relative = 1e-13);
        assert!(z3.bound_on_remainder < 1e-14 * z3.value);

        let r0sq = (15.2f64 / 17.2) * (15.2 / 17.2);
        let li = trilog(r0sq).unwrap();
        assert_relative_eq!(li.value, 0.885_177_852_393_909_6, max_relative = 1e-13);
        assert!(li.bound_on_remainder < 1e-14 * li.value);

        assert_relative_eq!(trilog(0.1).unwrap().value, 0.101_288_684_479_223, max_relative = 1e-13);
        assert_relative_eq!(trilog(0.5).unwrap().value, 0.537_213_193_608_040_2, max_relative = 1e-13);
        assert_relative_eq!(trilog(0.78).unwrap().value, 0.883_899_738_653_146, max_relative = 1e-13);
        assert_relative_eq!(trilog(0.99).unwrap().value, 1.185_832_933_645_036_9, max_relative = 1e-13);
    }

    #[test]
    fn trilog_matches_integral_identity() {
        // int_0^inf y ln(1 - x e^{-y}) dy = -Li3(x), checked with a plain
        // Simpson grid that shares no code with either the series or the
        // engine quadrature.
        for x in [0.1, 0.5, 0.78, 0.99] {
            let n = 400_000usize; // even
            let width = 80.0;
            let h = width / n as f64;
            let f = |y: f64| y * (-x * (-y).exp()).ln_1p();
            let mut acc = f(0.0) + f(width);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * f(i as f64 * h);
            }
            let integral = acc * h / 3.0;
            assert_relative_eq!(-integral, trilog(x).unwrap().value, max_relative = 1e-10);
        }
    }

    #[test]
    fn classical_ideal_reference_point() {
        let g = Geometry::reference_sphere(1.0e-6).unwrap();
        assert_relative_eq!(classical_ideal_term(&g) * 1e12, -187.951_813_391_136_77, max_relative = 1e-12);
    }

    #[test]
    fn classical_ideal_scalings() {
        let g1 = Geometry::reference_sphere(1.0e-6).unwrap();
        let g2 = Geometry::reference_sphere(2.0e-6).unwrap();
        assert_relative_eq!(classical_ideal_term(&g2), classical_ideal_term(&g1) / 4.0, max_relative = 1e-14);
        let hot = Geometry::new(1.0e-6, 0.1510, 600.0).unwrap();
        assert_relative_eq!(classical_ideal_term(&hot), 2.0 * classical_ideal_term(&g1), max_relative = 1e-14);
    }

    #[test]
    fn drude_minus_neglected_reference_values() {
        // against the published table differences {68.81, 50.56, 38.71, 30.59, 24.78} pN
        let expected = [68.81, 50.56, 38.71, 30.59, 24.78];
        for (i, a_um) in [0.6, 0.7, 0.8, 0.9, 1.0].iter().enumerate() {
            let g = Geometry::reference_sphere(a_um * 1e-6).unwrap();
            let d = drude_minus_neglected(&g, 16.2).unwrap() * 1e12;
            assert!(
                (d - expected[i]).abs() / expected[i] < 1e-3,
                "a={a_um}: {d} vs {}",
                expected[i]
            );
        }
    }

    #[test]
    fn drude_minus_neglected_vanishes_for_ideal_dielectric() {
        // eps0 -> inf drives r0 -> 1, so both models become ideal at l = 0.
        let g = Geometry::reference_sphere(1.0e-6).unwrap();
        let d_small = drude_minus_neglected(&g, 1e6).unwrap();
        let d_ge = drude_minus_neglected(&g, 16.2).unwrap();
        assert!(d_small < 1e-3 * d_ge);
        assert!(drude_minus_neglected(&g, 1.0).is_err());
    }
}
