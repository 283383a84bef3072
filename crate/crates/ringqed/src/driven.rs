//! Classically driven intracavity dynamics in the two-photon truncation.
//!
//! The state keeps the six amplitudes of the photon-number basis
//! `|m,n⟩` with `m + n <= 2` (`m` counter-clockwise, `n` clockwise). The
//! delayed-phase approximation turns the waveguide into complex frequency
//! shifts, so the amplitudes obey a small linear non-Hermitian system with
//! a resonant drive on the counter-clockwise mode.

use crate::integrate::Rk4;
use crate::linalg::solve_partial_pivot;
use crate::params::{EffectiveRates, RingParams};
use crate::{real, Real};
use num_complex::Complex;
use thiserror::Error;

/// Amplitudes `C_mn` of the basis states `|m,n⟩`, `m + n <= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeState<T: Real> {
    pub c00: Complex<T>,
    pub c10: Complex<T>,
    pub c01: Complex<T>,
    pub c11: Complex<T>,
    pub c02: Complex<T>,
    pub c20: Complex<T>,
}

impl<T: Real> AmplitudeState<T> {
    /// Empty resonator: all weight on `|0,0⟩`.
    pub fn vacuum() -> Self {
        Self::from_array([
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        ])
    }

    /// Order: `c00, c10, c01, c11, c02, c20`.
    pub fn from_array(a: [Complex<T>; 6]) -> Self {
        Self {
            c00: a[0],
            c10: a[1],
            c01: a[2],
            c11: a[3],
            c02: a[4],
            c20: a[5],
        }
    }

    pub fn to_array(self) -> [Complex<T>; 6] {
        [self.c00, self.c10, self.c01, self.c11, self.c02, self.c20]
    }

    /// Squared norm of the excited sector, `sum_{(m,n) != (0,0)} |C_mn|^2`.
    pub fn excited_norm_sqr(&self) -> T {
        self.c10.norm_sqr()
            + self.c01.norm_sqr()
            + self.c11.norm_sqr()
            + self.c02.norm_sqr()
            + self.c20.norm_sqr()
    }

    pub fn norm_sqr(&self) -> T {
        self.c00.norm_sqr() + self.excited_norm_sqr()
    }
}

/// Errors of the driven-regime routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DrivenError<T: Real> {
    #[error("step size must be positive, got {dt}")]
    NonPositiveStep { dt: T },
    /// Fixed-step integration requires `dt * max|diagonal rate| <= 0.1`.
    #[error("step size {dt} rejected: dt * max diagonal rate {max_rate} exceeds 0.1")]
    StepTooLarge { dt: T, max_rate: T },
    /// The steady-state solve detected rank deficiency, which signals a
    /// parameter degeneracy such as all losses and couplings zero.
    #[error("steady-state system is singular")]
    SingularSystem,
    /// Mean photon number below 1e-30 leaves `g2` undefined.
    #[error("counter-clockwise occupation {occupation} too small; g2 undefined")]
    ZeroOccupation { occupation: T },
}

/// Time derivative of the six amplitudes:
///
/// ```text
/// dC00 = -i e C10
/// dC10 = -i e C00 - i sqrt2 e C20 - i z C01          - (gm/2 + i ghm) C10
/// dC01 = -i e C11 - i z* C10                          - (gp/2 + i ghp) C01
/// dC11 = -i e C01 - i sqrt2 z C02 - i sqrt2 z* C20    - (gm/2 + gp/2 + i(ghm + ghp + 2 chi)) C11
/// dC02 = -i sqrt2 z* C11                              - (gp + i(2 ghp + 2 chi)) C02
/// dC20 = -i sqrt2 z C11 - i sqrt2 e C10               - (gm + i(2 ghm + 2 chi)) C20
/// ```
///
/// with `e` the drive, `z` the intermodal coupling, `gm/gp` the effective
/// decay and `ghm/ghp` the effective dispersive rates.
pub fn amplitude_rhs<T: Real>(
    state: &AmplitudeState<T>,
    rates: &EffectiveRates<T>,
    p: &RingParams<T>,
) -> AmplitudeState<T> {
    let half = real::<T>(0.5);
    let two = real::<T>(2.0);
    let sqrt2 = real::<T>(2.0).sqrt();
    let i = Complex::new(T::zero(), T::one());
    let e = Complex::new(p.epsilon, T::zero());
    let z = p.zeta;
    let zc = p.zeta.conj();

    let d10 = Complex::new(rates.g_minus * half, rates.gh_minus);
    let d01 = Complex::new(rates.g_plus * half, rates.gh_plus);
    let d11 = Complex::new(
        (rates.g_minus + rates.g_plus) * half,
        rates.gh_minus + rates.gh_plus + two * p.chi,
    );
    let d02 = Complex::new(rates.g_plus, two * (rates.gh_plus + p.chi));
    let d20 = Complex::new(rates.g_minus, two * (rates.gh_minus + p.chi));

    AmplitudeState {
        c00: -i * e * state.c10,
        c10: -i * e * state.c00 - i * e * state.c20 * sqrt2 - i * z * state.c01 - d10 * state.c10,
        c01: -i * e * state.c11 - i * zc * state.c10 - d01 * state.c01,
        c11: -i * e * state.c01 - i * z * state.c02 * sqrt2 - i * zc * state.c20 * sqrt2
            - d11 * state.c11,
        c02: -i * zc * state.c11 * sqrt2 - d02 * state.c02,
        c20: -i * z * state.c11 * sqrt2 - i * e * state.c10 * sqrt2 - d20 * state.c20,
    }
}

/// Sampled trajectory of the amplitude system.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub times: Vec<T>,
    pub states: Vec<AmplitudeState<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn final_state(&self) -> &AmplitudeState<T> {
        self.states.last().expect("trajectory holds at least the initial state")
    }
}

/// Fixed-step fourth-order evolution from `initial` to `t_end`.
///
/// The trajectory contains the initial state and the state after every
/// step; a short final step lands exactly on `t_end`. The stability guard
/// rejects `dt * max|diagonal rate| > 0.1`.
pub fn evolve<T: Real>(
    initial: &AmplitudeState<T>,
    p: &RingParams<T>,
    t_end: T,
    dt: T,
) -> Result<Trajectory<T>, DrivenError<T>> {
    if !(dt > T::zero()) {
        return Err(DrivenError::NonPositiveStep { dt });
    }
    let rates = p.effective_rates();
    let max_rate = rates.max_diagonal_rate(p.chi);
    if dt * max_rate > real(0.1) {
        return Err(DrivenError::StepTooLarge { dt, max_rate });
    }

    let mut rhs = |_t: T, y: &[Complex<T>], dy: &mut [Complex<T>]| {
        let state = AmplitudeState::from_array([y[0], y[1], y[2], y[3], y[4], y[5]]);
        let d = amplitude_rhs(&state, &rates, p).to_array();
        dy.copy_from_slice(&d);
    };

    let mut rk = Rk4::new(6);
    let mut y = initial.to_array();
    let mut t = T::zero();
    let mut times = vec![t];
    let mut states = vec![*initial];

    while t < t_end {
        let step = dt.min(t_end - t);
        if !(step > T::zero()) {
            break;
        }
        rk.step(&mut rhs, &mut y, t, step);
        t += step;
        times.push(t);
        states.push(AmplitudeState::from_array(y));
    }
    Ok(Trajectory { times, states })
}

/// Steady state under the weak-drive closure: `C00` is held at one and the
/// five excited amplitudes solve the stationarity conditions of their
/// equations by a dense partial-pivot solve. (The `C00` equation itself has
/// no stationary point with a nonzero drive; the downstream observable is
/// `C00`-independent.)
pub fn steady_state<T: Real>(p: &RingParams<T>) -> Result<AmplitudeState<T>, DrivenError<T>> {
    let rates = p.effective_rates();
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());

    // columns of the excited-sector generator, extracted through the rhs
    // so the solve can never drift from the evolution equations
    let mut matrix = vec![zero; 25];
    for (col, unit) in (0..5).map(|j| {
        let mut a = [zero; 6];
        a[j + 1] = one;
        (j, AmplitudeState::from_array(a))
    }) {
        let d = amplitude_rhs(&unit, &rates, p).to_array();
        for row in 0..5 {
            matrix[row * 5 + col] = d[row + 1];
        }
    }
    // constant forcing from C00 = 1, moved to the right-hand side
    let forcing = amplitude_rhs(&AmplitudeState::vacuum(), &rates, p).to_array();
    let mut rhs_vec: Vec<Complex<T>> = (0..5).map(|row| -forcing[row + 1]).collect();

    let x = solve_partial_pivot(&mut matrix, &mut rhs_vec, 5).ok_or(DrivenError::SingularSystem)?;
    Ok(AmplitudeState::from_array([one, x[0], x[1], x[2], x[3], x[4]]))
}

/// Populations and counter-clockwise photon statistics of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenObservables<T: Real> {
    /// `|C_mn|^2` in the order `c00, c10, c01, c11, c02, c20`.
    pub populations: [T; 6],
    /// Mean counter-clockwise photon number `|C10|^2 + |C11|^2 + 2 |C20|^2`.
    pub n_ccw: T,
    /// Pair expectation `<a†a†aa> = 2 |C20|^2`.
    pub pair_ccw: T,
    /// `2 |C20|^2 / (2 |C20|^2 + |C10|^2 + |C11|^2)^2`, independent of `C00`.
    pub g2: T,
}

/// Evaluates populations, the counter-clockwise moments, and the
/// intracavity-determined equal-time correlation.
pub fn observables<T: Real>(state: &AmplitudeState<T>) -> Result<DrivenObservables<T>, DrivenError<T>> {
    let a = state.to_array();
    let populations = [
        a[0].norm_sqr(),
        a[1].norm_sqr(),
        a[2].norm_sqr(),
        a[3].norm_sqr(),
        a[4].norm_sqr(),
        a[5].norm_sqr(),
    ];
    let pair_ccw = real::<T>(2.0) * populations[5];
    let n_ccw = populations[1] + populations[3] + pair_ccw;
    if n_ccw < real(1e-30) {
        return Err(DrivenError::ZeroOccupation { occupation: n_ccw });
    }
    Ok(DrivenObservables {
        populations,
        n_ccw,
        pair_ccw,
        g2: pair_ccw / (n_ccw * n_ccw),
    })
}
