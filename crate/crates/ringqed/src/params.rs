//! Physical parameters of the resonator–waveguide system.

use crate::{real, Real};
use num_complex::Complex;
use thiserror::Error;

/// All physical rates, couplings, and phases of the two-point-coupled
/// microring system. Rates and angular frequencies in rad·MHz, the delay
/// in µs, the phase dimensionless.
///
/// Invariants (enforced by [`RingParams::validate`]): `kappa_a > 0`;
/// `g1`, `g2`, `gt1`, `gt2`, `epsilon` all `>= 0`; `tau_d >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingParams<T: Real> {
    /// Resonance frequency of both ring modes.
    pub omega_a: T,
    /// Intrinsic amplitude loss rate of the ring.
    pub kappa_a: T,
    /// Coupling of the counter-clockwise mode to the waveguide at the first contact.
    pub g1: T,
    /// Coupling of the counter-clockwise mode at the second contact.
    pub g2: T,
    /// Coupling of the clockwise mode at the first contact.
    pub gt1: T,
    /// Coupling of the clockwise mode at the second contact.
    pub gt2: T,
    /// Kerr interaction strength.
    pub chi: T,
    /// Intermodal (clockwise ↔ counter-clockwise) coupling.
    pub zeta: Complex<T>,
    /// Classical resonant drive amplitude.
    pub epsilon: T,
    /// Propagation phase between the contacts at resonance.
    pub theta_a: T,
    /// Propagation delay between the contacts. Zero selects the narrowband
    /// mode in which the phase is frequency-independent.
    pub tau_d: T,
}

/// Violation of a parameter invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    /// Every closed form divides by `kappa_a + i*detuning`, which vanishes
    /// on resonance when `kappa_a = 0`.
    #[error("kappa_a must be > 0, got {value}")]
    NonPositiveKappa { value: f64 },
    #[error("{field} must be >= 0, got {value}")]
    NegativeRate { field: &'static str, value: f64 },
    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },
}

impl<T: Real> RingParams<T> {
    /// Minimal record: a lossy ring at `omega_a` with everything else off.
    pub fn new(omega_a: T, kappa_a: T) -> Self {
        Self {
            omega_a,
            kappa_a,
            g1: T::zero(),
            g2: T::zero(),
            gt1: T::zero(),
            gt2: T::zero(),
            chi: T::zero(),
            zeta: Complex::new(T::zero(), T::zero()),
            epsilon: T::zero(),
            theta_a: T::zero(),
            tau_d: T::zero(),
        }
    }

    pub fn with_couplings(mut self, g1: T, g2: T) -> Self {
        self.g1 = g1;
        self.g2 = g2;
        self
    }

    pub fn with_cross_couplings(mut self, gt1: T, gt2: T) -> Self {
        self.gt1 = gt1;
        self.gt2 = gt2;
        self
    }

    /// Sets all four waveguide couplings to the same value.
    pub fn with_uniform_coupling(self, g0: T) -> Self {
        self.with_couplings(g0, g0).with_cross_couplings(g0, g0)
    }

    pub fn with_kerr(mut self, chi: T) -> Self {
        self.chi = chi;
        self
    }

    pub fn with_intermodal(mut self, zeta: Complex<T>) -> Self {
        self.zeta = zeta;
        self
    }

    pub fn with_drive(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_phase(mut self, theta_a: T) -> Self {
        self.theta_a = theta_a;
        self
    }

    pub fn with_delay(mut self, tau_d: T) -> Self {
        self.tau_d = tau_d;
        self
    }

    /// Checks every invariant; call after construction and before handing
    /// the record to the physics routines, which assume validity.
    pub fn validate(&self) -> Result<(), ParamError> {
        let as_f64 = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let finite = |field, x: T| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(ParamError::NonFinite {
                    field,
                    value: as_f64(x),
                })
            }
        };
        finite("omega_a", self.omega_a)?;
        finite("kappa_a", self.kappa_a)?;
        finite("theta_a", self.theta_a)?;
        finite("zeta", self.zeta.re)?;
        finite("zeta", self.zeta.im)?;
        finite("chi", self.chi)?;
        if !(self.kappa_a > T::zero()) {
            return Err(ParamError::NonPositiveKappa {
                value: as_f64(self.kappa_a),
            });
        }
        for (field, value) in [
            ("g1", self.g1),
            ("g2", self.g2),
            ("gt1", self.gt1),
            ("gt2", self.gt2),
            ("epsilon", self.epsilon),
            ("tau_d", self.tau_d),
        ] {
            finite(field, value)?;
            if value < T::zero() {
                return Err(ParamError::NegativeRate {
                    field,
                    value: as_f64(value),
                });
            }
        }
        Ok(())
    }

    /// Validating constructor; consumes and returns the record.
    pub fn validated(self) -> Result<Self, ParamError> {
        self.validate()?;
        Ok(self)
    }
}

/// Decay-like (`g_minus`, `g_plus`) and dispersive (`gh_minus`, `gh_plus`)
/// effective rates of the delayed-phase approximation, evaluated at the
/// resonant phase. The minus set belongs to the counter-clockwise mode,
/// the plus set to the clockwise mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveRates<T: Real> {
    pub g_minus: T,
    pub g_plus: T,
    pub gh_minus: T,
    pub gh_plus: T,
}

impl<T: Real> EffectiveRates<T> {
    /// Largest modulus among the complex diagonal rates of the truncated
    /// amplitude system; bounds the stiffness seen by the integrator.
    pub fn max_diagonal_rate(&self, chi: T) -> T {
        let two = real::<T>(2.0);
        let half = real::<T>(0.5);
        let c = |re: T, im: T| Complex::new(re, im).norm();
        let d10 = c(self.g_minus * half, self.gh_minus);
        let d01 = c(self.g_plus * half, self.gh_plus);
        let d11 = c(
            (self.g_minus + self.g_plus) * half,
            self.gh_minus + self.gh_plus + two * chi,
        );
        let d02 = c(self.g_plus, two * (self.gh_plus + chi));
        let d20 = c(self.g_minus, two * (self.gh_minus + chi));
        d10.max(d01).max(d11).max(d02).max(d20)
    }
}
