//! Elementary complex spectral functions of the two-point-coupled ring.
//!
//! Everything downstream (scattering kernels, figure sweeps, the oracle
//! comparison) is assembled from the four functions defined here.

use crate::params::{EffectiveRates, RingParams};
use crate::{real, Real};
use num_complex::Complex;

impl<T: Real> RingParams<T> {
    /// Propagation phase between the two contacts at frequency `omega`:
    /// `theta_a + (omega - omega_a) * tau_d`. With `tau_d = 0` this is the
    /// constant `theta_a`, the quantity swept in the figure presets.
    pub fn phase(&self, omega: T) -> T {
        self.theta_a + (omega - self.omega_a) * self.tau_d
    }

    /// Denominator common to all response functions: `kappa_a + i(omega_a - omega)`.
    /// Nonzero for every real `omega` because `kappa_a > 0`.
    fn response_denominator(&self, omega: T) -> Complex<T> {
        Complex::new(self.kappa_a, self.omega_a - omega)
    }

    /// Coupling amplitude `gamma(omega) = (sqrt(g1) + sqrt(g2) e^{i theta(omega)})
    /// / (kappa_a + i(omega_a - omega))`.
    pub fn gamma(&self, omega: T) -> Complex<T> {
        let phase = Complex::new(T::zero(), self.phase(omega)).exp();
        let numerator = Complex::new(self.g1.sqrt(), T::zero()) + phase * self.g2.sqrt();
        numerator / self.response_denominator(omega)
    }

    /// Single-photon transmission amplitude
    /// `t(omega) = 1 - (g1 + g2 + 2 sqrt(g1 g2) cos theta(omega))
    /// / (kappa_a + i(omega_a - omega))`.
    ///
    /// The full single-photon scattering element is `t(omega)` times an
    /// implicit frequency-conserving delta.
    pub fn t_single(&self, omega: T) -> Complex<T> {
        let two = real::<T>(2.0);
        let numerator = self.g1 + self.g2 + two * (self.g1 * self.g2).sqrt() * self.phase(omega).cos();
        Complex::new(T::one(), T::zero()) - Complex::new(numerator, T::zero()) / self.response_denominator(omega)
    }

    /// Unimodular factor `eta(omega) = (kappa_a - i(omega_a - omega))
    /// / (kappa_a + i(omega_a - omega))`; `|eta| = 1` for all real `omega`.
    pub fn eta(&self, omega: T) -> Complex<T> {
        let d = self.response_denominator(omega);
        d.conj() / d
    }

    /// Effective decay and dispersive rates at the resonant phase `theta_a`:
    /// `g_minus = (g1+g2)/2 + sqrt(g1 g2) cos(theta_a) + 2 kappa_a`,
    /// `gh_minus = sqrt(g1 g2) sin(theta_a)`, and the tilde analogues for
    /// the clockwise mode. Both decay rates are nonnegative for valid
    /// parameters since `(g1+g2)/2 + sqrt(g1 g2) cos t >= (sqrt(g1)-sqrt(g2))^2 / 2`.
    pub fn effective_rates(&self) -> EffectiveRates<T> {
        let two = real::<T>(2.0);
        let half = real::<T>(0.5);
        let (sin, cos) = self.theta_a.sin_cos();
        let cross_ccw = (self.g1 * self.g2).sqrt();
        let cross_cw = (self.gt1 * self.gt2).sqrt();
        EffectiveRates {
            g_minus: (self.g1 + self.g2) * half + cross_ccw * cos + two * self.kappa_a,
            g_plus: (self.gt1 + self.gt2) * half + cross_cw * cos + two * self.kappa_a,
            gh_minus: cross_ccw * sin,
            gh_plus: cross_cw * sin,
        }
    }
}
