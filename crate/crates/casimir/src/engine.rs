//! The Matsubara sum of y-integrals behind the sphere-plate force, with
//! controlled quadrature error, an analytic truncation bound, and a per-term
//! breakdown.
//!
//! The force is
//! `F(a,T) = (k_B T R / 4 a^2) * [ term(0)/2 + sum_{l>=1} term(l) ]`
//! where each term integrates
//! `y * ( ln[1 - r_TM^2 e^{-y}] + ln[1 - r_TE^2 e^{-y}] )`
//! over `y` from `zeta_l` upward. Every term is negative, so the force comes
//! out negative (attractive) and the partial sums of its magnitude grow
//! monotonically to the limit.

use crate::dielectric::{eps_model, DielectricError, MaterialModel};
use crate::numerics::{integrate, KahanSum, QuadResult};
use crate::quantities::{
    characteristic_frequency, matsubara_spacing, matsubara_zeta, Geometry, CODATA_2018,
};
use crate::reflection::{fresnel, zero_frequency, ReflectionPair};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Dielectric(#[from] DielectricError),
    #[error("the Matsubara spacing vanishes at T = 0; the zero-temperature limit is out of scope")]
    ZeroTemperature,
    #[error("quadrature did not converge at l = {l}: achieved relative error {achieved:e} (target {target:e})")]
    QuadratureNonConvergence { l: u32, achieved: f64, target: f64 },
    #[error(
        "Matsubara sum not converged after l_max_hard = {l_max}: tail bound {tail_relative:e} of the partial sum"
    )]
    TruncationFailure { l_max: u32, tail_relative: f64 },
    #[error("internal consistency failure at l = {l}, y = {y}: r^2 e^-y >= 1")]
    InternalConsistency { l: u32, y: f64 },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
    #[error("model difference requires both models to share the same oscillator core")]
    MismatchedOscillators,
}

/// Identifier of the adaptive quadrature scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum QuadratureRule {
    /// Worst-first bisection with the 15-point Kronrod / 7-point Gauss pair.
    #[default]
    AdaptiveGaussKronrod15,
}

/// Accuracy and truncation knobs. The defaults resolve the reference tables
/// to well below their printed precision.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EngineConfig {
    /// Relative tolerance for each y-integral and for the sum truncation.
    pub rel_tol: f64,
    /// Integration window above zeta_l; the discarded tail is bounded
    /// analytically and folded into the error estimate.
    pub y_tail_cut: f64,
    /// Hard cap on the Matsubara index before giving up.
    pub l_max_hard: u32,
    /// Segment budget per adaptive integral.
    pub max_segments: usize,
    pub quadrature_rule: QuadratureRule,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            y_tail_cut: 60.0,
            l_max_hard: 2000,
            max_segments: 400,
            quadrature_rule: QuadratureRule::AdaptiveGaussKronrod15,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-4) {
            return Err(EngineError::InvalidConfig(format!(
                "rel_tol must lie in (0, 1e-4], got {:e}",
                self.rel_tol
            )));
        }
        if !(self.y_tail_cut >= 30.0) {
            return Err(EngineError::InvalidConfig(format!(
                "y_tail_cut must be >= 30, got {}",
                self.y_tail_cut
            )));
        }
        if self.l_max_hard < 1 {
            return Err(EngineError::InvalidConfig("l_max_hard must be >= 1".into()));
        }
        if self.max_segments < 16 {
            return Err(EngineError::InvalidConfig("max_segments must be >= 16".into()));
        }
        Ok(())
    }
}

/// Reflection coefficients as a function of Matsubara index and y.
///
/// [`MaterialModel`] is the physical implementation; synthetic models (pinned
/// coefficients) plug in through the same seam for validation.
pub trait ReflectionModel {
    fn reflection(&self, l: u32, zeta: f64, y: f64, geom: &Geometry) -> Result<ReflectionPair, EngineError>;
}

impl ReflectionModel for MaterialModel {
    fn reflection(&self, l: u32, zeta: f64, y: f64, geom: &Geometry) -> Result<ReflectionPair, EngineError> {
        if l == 0 {
            Ok(zero_frequency(y, self, geom)?)
        } else {
            let eps = eps_model(l, zeta, characteristic_frequency(geom), self)?;
            Ok(fresnel(zeta, y, eps))
        }
    }
}

/// One Matsubara term, already scaled by the force prefactor but not by the
/// summation weight.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TermBreakdown {
    pub l: u32,
    /// TM part of the term (N); always <= 0.
    pub tm_contribution: f64,
    /// TE part of the term (N); always <= 0.
    pub te_contribution: f64,
    /// Quadrature error estimate plus the analytic tail bound (N).
    pub quadrature_error_estimate: f64,
}

impl TermBreakdown {
    pub fn total(&self) -> f64 {
        self.tm_contribution + self.te_contribution
    }
}

/// Force value with its convergence evidence.
#[derive(Debug, Clone, Serialize)]
pub struct ForceResult {
    /// Signed force (N); negative = attractive.
    pub force: f64,
    /// |force| (N).
    pub magnitude: f64,
    /// Per-l breakdown in ascending l, unweighted (the l = 0 entry enters the
    /// sum with weight 1/2).
    pub terms: Vec<TermBreakdown>,
    /// Highest Matsubara index evaluated.
    pub l_used: u32,
    /// Analytic bound on the discarded l-tail (N).
    pub truncation_bound: f64,
    /// Always true on a successful return; failures surface as errors.
    pub converged: bool,
}

impl ForceResult {
    /// Total error estimate (N): weighted quadrature estimates plus the
    /// truncation bound.
    pub fn error_estimate(&self) -> f64 {
        let mut err = KahanSum::new();
        for t in &self.terms {
            let w = if t.l == 0 { 0.5 } else { 1.0 };
            err.add(w * t.quadrature_error_estimate);
        }
        err.value() + self.truncation_bound
    }

    /// error_estimate relative to the force magnitude.
    pub fn relative_error_estimate(&self) -> f64 {
        if self.magnitude == 0.0 {
            0.0
        } else {
            self.error_estimate() / self.magnitude
        }
    }
}

/// k_B T R / (4 a^2): the proximity-force prefactor (N).
pub fn force_prefactor(geom: &Geometry) -> f64 {
    let a = geom.separation();
    CODATA_2018.k_b * geom.temperature() * geom.sphere_radius() / (4.0 * a * a)
}

/// ln(1 - r^2 e^{-y}) evaluated through u = y - 2 ln|r|, so the cancellation
/// regimes (r^2 e^{-y} near 1 and near 0) are both handled by expm1/log1p.
fn log_reflection_term(r: f64, y: f64) -> Result<f64, ()> {
    if r == 0.0 {
        return Ok(0.0);
    }
    let u = y - 2.0 * r.abs().ln();
    if u <= 0.0 {
        // r^2 e^{-y} >= 1 is impossible for |r| <= 1 and y > 0.
        return Err(());
    }
    if u < std::f64::consts::LN_2 {
        Ok((-(-u).exp_m1()).ln())
    } else {
        Ok((-(-u).exp()).ln_1p())
    }
}

/// The summand of the force formula at one point:
/// `y (ln[1 - r_TM^2 e^{-y}] + ln[1 - r_TE^2 e^{-y}])`.
///
/// Dispatches to the zero-frequency coefficients at l = 0 and to the Fresnel
/// coefficients with the model permittivity at l >= 1. Never returns NaN: the
/// impossible `r^2 e^{-y} >= 1` regime is reported as an error instead.
pub fn integrand<M: ReflectionModel>(
    l: u32,
    zeta: f64,
    y: f64,
    model: &M,
    geom: &Geometry,
) -> Result<f64, EngineError> {
    if y == 0.0 {
        // limit value of y ln(1 - r^2 e^{-y}) as y -> 0 along l = 0
        return Ok(0.0);
    }
    let r = model.reflection(l, zeta, y, geom)?;
    let tm = log_reflection_term(r.tm, y).map_err(|_| EngineError::InternalConsistency { l, y })?;
    let te = log_reflection_term(r.te, y).map_err(|_| EngineError::InternalConsistency { l, y })?;
    Ok(y * (tm + te))
}

#[derive(Debug, Clone, Copy)]
enum Polarization {
    Tm,
    Te,
}

/// Bound on the discarded integral tail above y = cut, for any |r| <= 1:
/// `int_cut^inf y e^{-y} / (1 - e^{-cut}) dy = (1 + cut) e^{-cut} / (1 - e^{-cut})`.
fn integral_tail_bound(cut: f64) -> f64 {
    let e = (-cut).exp();
    (1.0 + cut) * e / (1.0 - e)
}

/// Immutable force evaluator; configuration is validated once at construction.
#[derive(Debug, Clone)]
pub struct LifshitzEngine {
    config: EngineConfig,
}

impl LifshitzEngine {
    pub fn new(config: EngineConfig) -> Result<Self, EngineError> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn with_defaults() -> Self {
        Self { config: EngineConfig::default() }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn integrate_polarization<M: ReflectionModel>(
        &self,
        l: u32,
        zeta: f64,
        model: &M,
        geom: &Geometry,
        pol: Polarization,
    ) -> Result<QuadResult, EngineError> {
        let mut failure: Option<EngineError> = None;
        // shifted variable t = y - zeta_l so every integral starts at 0
        let result = integrate(
            |t| {
                let y = zeta + t;
                if y == 0.0 {
                    return 0.0;
                }
                let point = model
                    .reflection(l, zeta, y, geom)
                    .and_then(|r| {
                        let r_pol = match pol {
                            Polarization::Tm => r.tm,
                            Polarization::Te => r.te,
                        };
                        log_reflection_term(r_pol, y)
                            .map_err(|_| EngineError::InternalConsistency { l, y })
                    });
                match point {
                    Ok(v) => y * v,
                    Err(e) => {
                        if failure.is_none() {
                            failure = Some(e);
                        }
                        0.0
                    }
                }
            },
            0.0,
            self.config.y_tail_cut,
            self.config.rel_tol,
            self.config.max_segments,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if !result.converged {
            return Err(EngineError::QuadratureNonConvergence {
                l,
                achieved: if result.value == 0.0 { result.error } else { result.error / result.value.abs() },
                target: self.config.rel_tol,
            });
        }
        Ok(result)
    }

    /// Dimensionless (tm, te, error) for one l; error includes the analytic
    /// tail bound for both polarizations.
    fn raw_term<M: ReflectionModel>(
        &self,
        l: u32,
        model: &M,
        geom: &Geometry,
    ) -> Result<(f64, f64, f64), EngineError> {
        let zeta = matsubara_zeta(l, geom);
        let tm = self.integrate_polarization(l, zeta, model, geom, Polarization::Tm)?;
        let te = self.integrate_polarization(l, zeta, model, geom, Polarization::Te)?;
        let tail = integral_tail_bound(zeta + self.config.y_tail_cut);
        Ok((tm.value, te.value, tm.error + te.error + 2.0 * tail))
    }

    /// One Matsubara term scaled by the force prefactor (weight not applied).
    pub fn matsubara_term<M: ReflectionModel>(
        &self,
        l: u32,
        model: &M,
        geom: &Geometry,
    ) -> Result<TermBreakdown, EngineError> {
        let prefactor = force_prefactor(geom);
        let (tm, te, err) = self.raw_term(l, model, geom)?;
        Ok(TermBreakdown {
            l,
            tm_contribution: prefactor * tm,
            te_contribution: prefactor * te,
            quadrature_error_estimate: prefactor * err,
        })
    }

    /// The full force: primed Matsubara sum with compensated summation in
    /// ascending l and an analytic geometric bound on the discarded tail.
    pub fn casimir_force<M: ReflectionModel>(
        &self,
        model: &M,
        geom: &Geometry,
    ) -> Result<ForceResult, EngineError> {
        if geom.temperature() == 0.0 {
            return Err(EngineError::ZeroTemperature);
        }
        let prefactor = force_prefactor(geom);
        let spacing = matsubara_spacing(geom);

        let mut weighted = KahanSum::new();
        let mut terms = Vec::new();

        let (tm0, te0, err0) = self.raw_term(0, model, geom)?;
        weighted.add(0.5 * (tm0 + te0));
        terms.push(TermBreakdown {
            l: 0,
            tm_contribution: prefactor * tm0,
            te_contribution: prefactor * te0,
            quadrature_error_estimate: prefactor * err0,
        });

        let mut l = 1u32;
        loop {
            let zeta = matsubara_zeta(l, geom);
            let (tm, te, err) = self.raw_term(l, model, geom)?;
            weighted.add(tm + te);
            terms.push(TermBreakdown {
                l,
                tm_contribution: prefactor * tm,
                te_contribution: prefactor * te,
                quadrature_error_estimate: prefactor * err,
            });

            let magnitude = (tm + te).abs();
            let partial = weighted.value().abs();
            // Successive terms shrink at least by q = e^{-spacing} times the
            // polynomial growth of the (1 + y) envelope, so the tail is
            // geometrically dominated; q < 1 always since 1 + x < e^x.
            let q = (-spacing).exp() * (1.0 + spacing / (1.0 + zeta));
            let tail = magnitude * q / (1.0 - q);
            if magnitude <= self.config.rel_tol * partial && tail <= self.config.rel_tol * partial {
                return Ok(ForceResult {
                    force: prefactor * weighted.value(),
                    magnitude: (prefactor * weighted.value()).abs(),
                    terms,
                    l_used: l,
                    truncation_bound: prefactor * tail,
                    converged: true,
                });
            }
            if l >= self.config.l_max_hard {
                return Err(EngineError::TruncationFailure {
                    l_max: self.config.l_max_hard,
                    tail_relative: if partial == 0.0 { f64::INFINITY } else { tail / partial },
                });
            }
            l += 1;
        }
    }

    /// |F_a| - |F_b| for two models sharing the same oscillator core.
    ///
    /// With a shared core the l >= 1 integrands cancel (free carriers act
    /// only through the zero-frequency term), so the difference reduces to
    /// the l = 0 integrand difference, integrated directly rather than
    /// recovered by subtracting two large force totals.
    pub fn model_difference(
        &self,
        model_a: &MaterialModel,
        model_b: &MaterialModel,
        geom: &Geometry,
    ) -> Result<f64, EngineError> {
        if model_a.oscillator() != model_b.oscillator() {
            return Err(EngineError::MismatchedOscillators);
        }
        if geom.temperature() == 0.0 {
            return Err(EngineError::ZeroTemperature);
        }
        let mut failure: Option<EngineError> = None;
        let result = integrate(
            |y| {
                if y == 0.0 {
                    return 0.0;
                }
                let diff = integrand(0, 0.0, y, model_a, geom)
                    .and_then(|ga| integrand(0, 0.0, y, model_b, geom).map(|gb| ga - gb));
                match diff {
                    Ok(v) => v,
                    Err(e) => {
                        if failure.is_none() {
                            failure = Some(e);
                        }
                        0.0
                    }
                }
            },
            0.0,
            self.config.y_tail_cut,
            self.config.rel_tol,
            self.config.max_segments,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if !result.converged {
            return Err(EngineError::QuadratureNonConvergence {
                l: 0,
                achieved: if result.value == 0.0 { result.error } else { result.error / result.value.abs() },
                target: self.config.rel_tol,
            });
        }
        // F = prefactor * (I0/2 + ...) with negative terms, so
        // |F_a| - |F_b| = prefactor * (I0_b - I0_a) / 2.
        Ok(-0.5 * force_prefactor(geom) * result.value)
    }
}
