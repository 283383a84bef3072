//! Two-photon scattering observables of the output field.
//!
//! The Kerr interaction makes the two-photon scattering matrix
//! non-factorizable: on top of the product of single-photon amplitudes it
//! carries an energy-conserving bound-state kernel. Its equal-time line
//! integral yields the correction that interferes with the factorized part
//! and produces blockade (`g2 < 1`) or bunching (`g2 > 1`) in the output
//! correlations.

use crate::params::RingParams;
use crate::quad::{self, NonConvergence, QuadratureSpec};
use crate::{real, Real};
use num_complex::Complex;
use thiserror::Error;

/// Frequencies of the two incoming photons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonInput<T: Real> {
    pub omega1: T,
    pub omega2: T,
}

impl<T: Real> TwoPhotonInput<T> {
    pub fn new(omega1: T, omega2: T) -> Self {
        Self { omega1, omega2 }
    }

    /// Total energy `omega1 + omega2`, conserved by the kernel.
    pub fn total_energy(&self) -> T {
        self.omega1 + self.omega2
    }

    pub fn swapped(&self) -> Self {
        Self {
            omega1: self.omega2,
            omega2: self.omega1,
        }
    }
}

/// Choice of the pair-propagation denominator in the bound-state kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelMode {
    /// Denominator carries `g1 + g2`, the residue approximation that drops
    /// the oscillating coupling cross term.
    #[default]
    ResidueApprox,
    /// Denominator carries `g1 + g2 + 2 sqrt(g1 g2) cos(theta_a)`, keeping
    /// the cross term in the narrowband (`tau_d = 0`) regime.
    ExactNarrowband,
}

/// Errors of the two-photon observables.
#[derive(Debug, Clone, Error)]
pub enum ScatterError<T: Real> {
    #[error(transparent)]
    Quadrature(#[from] NonConvergence<T>),
    /// `g2` divides by `|t(omega_j)|^2`; below this magnitude the ratio is
    /// numerically meaningless and the closed form diverges.
    #[error("single-photon transmission magnitude {magnitude} below 1e-12; g2 undefined")]
    DegenerateTransmission { magnitude: T },
}

/// Energy-shell-free bound-state kernel `B(nu1, nu2; omega1, omega2)`: the
/// coefficient multiplying the total-energy delta in the two-photon
/// scattering matrix. Exchange-symmetric in `(nu1, nu2)` and in
/// `(omega1, omega2)`; identically zero without the Kerr interaction.
pub fn bound_kernel<T: Real>(
    nu1: T,
    nu2: T,
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
) -> Complex<T> {
    bound_kernel_with(KernelMode::ResidueApprox, nu1, nu2, input, p)
}

/// [`bound_kernel`] with an explicit denominator mode.
pub fn bound_kernel_with<T: Real>(
    mode: KernelMode,
    nu1: T,
    nu2: T,
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
) -> Complex<T> {
    if p.chi == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let four = real::<T>(4.0);
    let two = real::<T>(2.0);

    let exchange = p.t_single(nu1) * p.eta(nu2) + p.t_single(nu2) * p.eta(nu1);
    // 2 kappa + i (2 omega_a - nu1 - nu2), constant along the energy shell
    let pair_detuning = Complex::new(two * p.kappa_a, two * p.omega_a - nu1 - nu2);
    let amplitudes = p.gamma(nu1).conj() * p.gamma(nu2).conj() * p.gamma(input.omega1) * p.gamma(input.omega2);
    let denominator = pair_detuning * p.kappa_a + Complex::new(T::zero(), two * T::PI() * p.chi * coupling_sum(mode, p));

    Complex::new(T::zero(), four * p.chi * p.kappa_a) * exchange * pair_detuning * amplitudes / denominator
}

fn coupling_sum<T: Real>(mode: KernelMode, p: &RingParams<T>) -> T {
    match mode {
        KernelMode::ResidueApprox => p.g1 + p.g2,
        KernelMode::ExactNarrowband => {
            p.g1 + p.g2 + real::<T>(2.0) * (p.g1 * p.g2).sqrt() * p.theta_a.cos()
        }
    }
}

/// Equal-time correction produced by integrating the kernel over the
/// energy shell, with its quadrature error information.
#[derive(Debug, Clone, Copy)]
pub struct TCorrection<T: Real> {
    pub value: Complex<T>,
    /// Quadrature error plus the analytic tail bound of the window cutoff.
    pub abs_error: T,
    pub n_evals: usize,
}

/// Kerr-induced correction `T(omega1, omega2) = (1/2pi) ∫ B(nu, E - nu) dnu`
/// over the energy shell, integrated on the window
/// `[E/2 - W, E/2 + W]`, `W = window_over_kappa * kappa_a`.
///
/// Symmetric under input exchange and vanishing with the Kerr strength.
pub fn t_correction<T: Real>(
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
    spec: &QuadratureSpec<T>,
) -> Result<TCorrection<T>, ScatterError<T>> {
    t_correction_with(KernelMode::ResidueApprox, input, p, spec)
}

/// [`t_correction`] with an explicit kernel mode.
pub fn t_correction_with<T: Real>(
    mode: KernelMode,
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
    spec: &QuadratureSpec<T>,
) -> Result<TCorrection<T>, ScatterError<T>> {
    let energy = input.total_energy();
    let half_energy = energy * real::<T>(0.5);
    let window = spec.window_over_kappa * p.kappa_a;
    let (a, b) = (half_energy - window, half_energy + window);

    // resolve the e^{i nu tau_d} oscillation from the start
    let cycles = (b - a) * p.tau_d / (real::<T>(2.0) * T::PI());
    let n_seed = cycles
        .to_f64()
        .map(|c| (c.abs().ceil() as usize).clamp(1, 8192))
        .unwrap_or(1);

    let integrand = |nu: T| bound_kernel_with(mode, nu, energy - nu, input, p);
    let result = quad::integrate_seeded(integrand, a, b, n_seed, spec.rel_tol, spec.max_subdivisions)?;

    let two_pi = real::<T>(2.0) * T::PI();
    Ok(TCorrection {
        value: result.value / two_pi,
        abs_error: (result.abs_error + result.tail_bound) / two_pi,
        n_evals: result.n_evals,
    })
}

/// Two-photon output correlation at equal times, with every intermediate
/// amplitude exposed: `g2 = |t1 t2 + T|^2 / (|t1|^2 |t2|^2)`.
#[derive(Debug, Clone, Copy)]
pub struct G2Result<T: Real> {
    pub t1: Complex<T>,
    pub t2: Complex<T>,
    pub correction: Complex<T>,
    pub g2: T,
}

/// Equal-time second-order correlation of the transmitted field for two
/// input photons. Blockade (`g2 < 1`) occurs when the bound-state
/// correction cancels part of the factorized amplitude.
pub fn g2_scatter<T: Real>(
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
    spec: &QuadratureSpec<T>,
) -> Result<G2Result<T>, ScatterError<T>> {
    g2_scatter_with(KernelMode::ResidueApprox, input, p, spec)
}

/// [`g2_scatter`] with an explicit kernel mode.
pub fn g2_scatter_with<T: Real>(
    mode: KernelMode,
    input: &TwoPhotonInput<T>,
    p: &RingParams<T>,
    spec: &QuadratureSpec<T>,
) -> Result<G2Result<T>, ScatterError<T>> {
    let t1 = p.t_single(input.omega1);
    let t2 = p.t_single(input.omega2);
    let floor = real::<T>(1e-12);
    for t in [t1, t2] {
        if t.norm() < floor {
            return Err(ScatterError::DegenerateTransmission { magnitude: t.norm() });
        }
    }
    let correction = t_correction_with(mode, input, p, spec)?.value;
    let numerator = (t1 * t2 + correction).norm_sqr();
    let g2 = numerator / (t1.norm_sqr() * t2.norm_sqr());
    Ok(G2Result {
        t1,
        t2,
        correction,
        g2,
    })
}

/// Evaluation route for the pair-propagation line integral
/// `∫ |gamma(omega)|^2 / (kappa_a + i(omega_a - nu2 + omega)) domega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueMode {
    /// Closed form `pi (g1 + g2) / (kappa_a [2 kappa_a + i(2 omega_a - nu2)])`
    /// obtained by dropping the oscillating zero-mean coupling cross term.
    Approx,
    /// Windowed adaptive quadrature of the full integrand, including the
    /// cross term and its `tau_d` oscillation.
    Exact,
}

/// Pair-propagation integral in the chosen mode. `Approx` never fails;
/// `Exact` integrates over `[lo - W, hi + W]` where `lo`/`hi` bracket the
/// two resonances of the integrand and `W = window_over_kappa * kappa_a`.
pub fn residue_integral<T: Real>(
    nu2: T,
    p: &RingParams<T>,
    mode: ResidueMode,
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>, ScatterError<T>> {
    let two = real::<T>(2.0);
    match mode {
        ResidueMode::Approx => {
            let denominator = Complex::new(two * p.kappa_a, two * p.omega_a - nu2) * p.kappa_a;
            Ok(Complex::new(T::PI() * (p.g1 + p.g2), T::zero()) / denominator)
        }
        ResidueMode::Exact => {
            let window = spec.window_over_kappa * p.kappa_a;
            // resonances of |gamma|^2 and of the pair denominator
            let first = p.omega_a;
            let second = nu2 - p.omega_a;
            let (a, b) = (first.min(second) - window, first.max(second) + window);
            let cycles = (b - a) * p.tau_d / (two * T::PI());
            let n_seed = cycles
                .to_f64()
                .map(|c| (c.abs().ceil() as usize).clamp(1, 8192))
                .unwrap_or(1);
            let integrand = |omega: T| {
                let gamma = p.gamma(omega);
                Complex::new(gamma.norm_sqr(), T::zero())
                    / Complex::new(p.kappa_a, p.omega_a - nu2 + omega)
            };
            let result =
                quad::integrate_seeded(integrand, a, b, n_seed, spec.rel_tol, spec.max_subdivisions)?;
            Ok(result.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use approx::assert_relative_eq;
    use num_complex::Complex;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn resonant_kerr_params() -> RingParams<f64> {
        RingParams::new(0.0, 1.0)
            .with_couplings(1.0, 1.0)
            .with_kerr(0.1)
            .with_phase(FRAC_PI_2)
    }

    #[test]
    fn kernel_vanishes_without_kerr() {
        let p = RingParams::new(0.0, 1.0).with_couplings(1.0, 2.0).with_phase(0.3);
        let input = TwoPhotonInput::new(0.5, -0.2);
        assert_eq!(bound_kernel(0.1, 0.2, &input, &p), Complex::new(0.0, 0.0));
    }

    #[test]
    fn kernel_vanishes_with_zero_coupling_amplitude() {
        let p = RingParams::new(0.0, 1.0)
            .with_couplings(1.0, 1.0)
            .with_kerr(0.1)
            .with_phase(PI);
        let input = TwoPhotonInput::new(0.0, 0.0);
        assert!(bound_kernel(0.3, -0.3, &input, &p).norm() < 1e-30);
    }

    #[test]
    fn kernel_matches_extended_precision_reference() {
        // all-resonant evaluation; frozen from an independent 40-digit
        // computation of the same closed form, equal to -6.4i/(2 + 0.4i*pi)
        let p = resonant_kerr_params();
        let input = TwoPhotonInput::new(0.0, 0.0);
        let b = bound_kernel(0.0, 0.0, &input, &p);
        let reference = Complex::new(-1.4415271787788437, -2.2942617610396729);
        assert!((b - reference).norm() / reference.norm() < 1e-12);
    }

    #[test]
    fn kernel_independent_of_absolute_frequency() {
        let mut p = resonant_kerr_params();
        let b0 = bound_kernel(0.2, -0.2, &TwoPhotonInput::new(0.1, -0.1), &p);
        p.omega_a = 17.0;
        let b1 = bound_kernel(17.2, 16.8, &TwoPhotonInput::new(17.1, 16.9), &p);
        assert!((b0 - b1).norm() < 1e-12 * b0.norm().max(1.0));
    }

    #[test]
    fn exact_narrowband_mode_shifts_denominator() {
        let p = resonant_kerr_params(); // cos(pi/2) = 0: modes agree
        let input = TwoPhotonInput::new(0.0, 0.0);
        let approx = bound_kernel_with(KernelMode::ResidueApprox, 0.1, -0.1, &input, &p);
        let exact = bound_kernel_with(KernelMode::ExactNarrowband, 0.1, -0.1, &input, &p);
        assert!((approx - exact).norm() < 1e-15);

        let p0 = p.with_phase(0.0); // cos = 1: cross term doubles the sum
        let approx = bound_kernel_with(KernelMode::ResidueApprox, 0.1, -0.1, &input, &p0);
        let exact = bound_kernel_with(KernelMode::ExactNarrowband, 0.1, -0.1, &input, &p0);
        assert!((approx - exact).norm() > 1e-3);
    }

    #[test]
    fn t_correction_zero_without_kerr() {
        let p = RingParams::new(0.0, 1.0).with_couplings(1.0, 2.0).with_phase(0.3);
        let spec = QuadratureSpec::default();
        let t = t_correction(&TwoPhotonInput::new(0.5, -0.5), &p, &spec).unwrap();
        assert_eq!(t.value, Complex::new(0.0, 0.0));
    }

    #[test]
    fn t_correction_zero_for_balanced_pi_phase() {
        let p = RingParams::new(0.0, 1.0)
            .with_couplings(1.0, 1.0)
            .with_kerr(0.1)
            .with_phase(PI);
        let spec = QuadratureSpec::default();
        for (w1, w2) in [(0.0, 0.0), (1.5, -0.5), (-3.0, 3.0)] {
            let t = t_correction(&TwoPhotonInput::new(w1, w2), &p, &spec).unwrap();
            assert!(t.value.norm() < 1e-25);
        }
    }

    /// Independent oracle: fixed-grid trapezoidal integration of the same
    /// kernel over the window `[E/2 - 1000 kappa, E/2 + 1000 kappa]`.
    fn trapezoid_oracle(input: &TwoPhotonInput<f64>, p: &RingParams<f64>, n: usize) -> Complex<f64> {
        let half_e = input.total_energy() / 2.0;
        let (a, b) = (half_e - 1e3 * p.kappa_a, half_e + 1e3 * p.kappa_a);
        let h = (b - a) / n as f64;
        let mut acc = (bound_kernel(a, input.total_energy() - a, input, p)
            + bound_kernel(b, input.total_energy() - b, input, p))
            * 0.5;
        for k in 1..n {
            let nu = a + h * k as f64;
            acc += bound_kernel(nu, input.total_energy() - nu, input, p);
        }
        acc * h / (2.0 * PI)
    }

    #[test]
    fn t_correction_matches_trapezoid_oracle() {
        let p = resonant_kerr_params();
        let input = TwoPhotonInput::new(0.0, 0.0);
        let spec = QuadratureSpec::default();
        let adaptive = t_correction(&input, &p, &spec).unwrap().value;
        let oracle = trapezoid_oracle(&input, &p, 1_000_000);
        assert!(
            (adaptive - oracle).norm() / oracle.norm() < 1e-6,
            "adaptive {adaptive} vs oracle {oracle}"
        );
        // cross-check against an independent 40-digit evaluation
        let reference = Complex::new(-0.72030473719016462, -1.1464005945632327);
        assert!((adaptive - reference).norm() / reference.norm() < 1e-7);
    }

    #[test]
    fn g2_is_unity_without_kerr() {
        let p = RingParams::new(0.0, 1.0).with_couplings(0.7, 1.3).with_phase(1.1);
        let spec = QuadratureSpec::default();
        let r = g2_scatter(&TwoPhotonInput::new(0.4, -1.0), &p, &spec).unwrap();
        assert_eq!(r.g2, 1.0);
    }

    #[test]
    fn g2_is_unity_for_balanced_pi_phase() {
        let p = RingParams::new(0.0, 1.0)
            .with_couplings(1.0, 1.0)
            .with_kerr(0.1)
            .with_phase(PI);
        let spec = QuadratureSpec::default();
        let r = g2_scatter(&TwoPhotonInput::new(0.0, 0.0), &p, &spec).unwrap();
        assert!((r.g2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn g2_rejects_degenerate_transmission() {
        // g2 = 0, g1 = kappa puts t(omega_a) exactly at zero
        let p = RingParams::new(0.0, 1.0).with_couplings(1.0, 0.0).with_kerr(0.1);
        let spec = QuadratureSpec::default();
        let err = g2_scatter(&TwoPhotonInput::new(0.0, 0.0), &p, &spec).unwrap_err();
        assert!(matches!(err, ScatterError::DegenerateTransmission { .. }));
    }

    #[test]
    fn fig3d_coupling_asymmetry_produces_blockade_regions() {
        // unequal couplings, balanced-energy inputs: sub-unity g2 must
        // exist somewhere on the split axis and be exchange-symmetric
        let p = RingParams::new(0.0, 1.0)
            .with_couplings(2.0 / 3.0, 4.0 / 3.0)
            .with_kerr(0.1)
            .with_phase(PI);
        let spec = QuadratureSpec::default();
        let mut found_subunity = false;
        for s in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let input = TwoPhotonInput::new(s / 2.0, -s / 2.0);
            let fwd = g2_scatter(&input, &p, &spec).unwrap().g2;
            let rev = g2_scatter(&input.swapped(), &p, &spec).unwrap().g2;
            assert!((fwd - rev).abs() < 1e-12);
            if fwd < 1.0 {
                found_subunity = true;
            }
        }
        assert!(found_subunity);
    }

    #[test]
    fn residue_approx_reference_value() {
        // g1 = g2 = kappa = 1, nu2 = 2 omega_a: pi (2) / (1 * 2) = pi
        let p = RingParams::new(3.0, 1.0).with_couplings(1.0, 1.0).with_phase(0.7);
        let spec = QuadratureSpec::default();
        let v = residue_integral(6.0, &p, ResidueMode::Approx, &spec).unwrap();
        assert_relative_eq!(v.re, PI, max_relative = 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn residue_exact_matches_approx_single_point() {
        // no second coupling point, so no oscillating cross term at all
        let p = RingParams::new(0.0, 1.0).with_couplings(1.3, 0.0);
        let spec = QuadratureSpec::<f64>::default().with_window_over_kappa(2e4);
        for nu2 in [0.0, 1.0, -2.5] {
            let exact = residue_integral(nu2, &p, ResidueMode::Exact, &spec).unwrap();
            let approx = residue_integral(nu2, &p, ResidueMode::Approx, &spec).unwrap();
            assert!(
                (exact - approx).norm() / approx.norm() < 1e-5,
                "nu2={nu2}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn residue_cross_term_suppressed_with_growing_delay() {
        // at theta_a = 0 the coupling cross term is maximal in the static
        // limit, so the oscillatory suppression shows up monotonically;
        // at theta_a = pi/2 the cross term also vanishes for tau -> 0 and
        // the difference peaks at intermediate delay instead
        let spec = QuadratureSpec::default();
        let mut diffs = Vec::new();
        for tau in [0.1, 1.0, 10.0] {
            let p = RingParams::new(0.0, 1.0)
                .with_couplings(1.0, 1.0)
                .with_phase(0.0)
                .with_delay(tau);
            let exact = residue_integral(0.5, &p, ResidueMode::Exact, &spec).unwrap();
            let approx = residue_integral(0.5, &p, ResidueMode::Approx, &spec).unwrap();
            diffs.push((exact - approx).norm() / approx.norm());
        }
        assert!(
            diffs[0] > diffs[1] && diffs[1] > diffs[2],
            "relative differences must decrease with delay: {diffs:?}"
        );
        // the long-delay point must be deep in the suppressed regime
        assert!(diffs[2] < 1e-3, "diffs {diffs:?}");
    }

    fn arb_kerr_params() -> impl Strategy<Value = RingParams<f64>> {
        (
            0.2..3.0f64,
            0.0..3.0f64,
            0.0..3.0f64,
            0.0..7.0f64,
            0.01..0.5f64,
        )
            .prop_map(|(kappa, g1, g2, theta, chi)| {
                RingParams::new(0.0, kappa)
                    .with_couplings(g1, g2)
                    .with_phase(theta)
                    .with_kerr(chi)
            })
    }

    proptest! {
        #[test]
        fn kernel_exchange_symmetric(
            p in arb_kerr_params(),
            nu1 in -5.0..5.0f64,
            nu2 in -5.0..5.0f64,
            w1 in -5.0..5.0f64,
            w2 in -5.0..5.0f64,
        ) {
            let input = TwoPhotonInput::new(w1, w2);
            let direct = bound_kernel(nu1, nu2, &input, &p);
            let nu_swapped = bound_kernel(nu2, nu1, &input, &p);
            let w_swapped = bound_kernel(nu1, nu2, &input.swapped(), &p);
            let scale = direct.norm().max(1e-30);
            prop_assert!((direct - nu_swapped).norm() / scale < 1e-12);
            prop_assert!((direct - w_swapped).norm() / scale < 1e-12);
        }

        #[test]
        fn kernel_finite_everywhere(
            p in arb_kerr_params(),
            nu1 in -50.0..50.0f64,
            nu2 in -50.0..50.0f64,
        ) {
            // denominator real part is 2 kappa^2 > 0, so no singular draws
            let input = TwoPhotonInput::new(0.3, -0.3);
            let b = bound_kernel(nu1, nu2, &input, &p);
            prop_assert!(b.re.is_finite() && b.im.is_finite());
        }
    }
}
