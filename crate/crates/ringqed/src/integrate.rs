//! Fixed-step classical fourth-order integration of complex state vectors.
//!
//! Fixed steps keep trajectories bit-reproducible; the callers enforce
//! their own stability guards before stepping.

use crate::{real, Real};
use num_complex::Complex;

/// Scratch space reused across steps.
pub(crate) struct Rk4<T: Real> {
    k1: Vec<Complex<T>>,
    k2: Vec<Complex<T>>,
    k3: Vec<Complex<T>>,
    k4: Vec<Complex<T>>,
    stage: Vec<Complex<T>>,
}

impl<T: Real> Rk4<T> {
    pub fn new(dim: usize) -> Self {
        let zeros = vec![Complex::new(T::zero(), T::zero()); dim];
        Self {
            k1: zeros.clone(),
            k2: zeros.clone(),
            k3: zeros.clone(),
            k4: zeros.clone(),
            stage: zeros,
        }
    }

    /// One RK4 step of `y' = f(t, y)` from `t` with width `dt`, in place.
    pub fn step<F>(&mut self, f: &mut F, y: &mut [Complex<T>], t: T, dt: T)
    where
        F: FnMut(T, &[Complex<T>], &mut [Complex<T>]),
    {
        let half = real::<T>(0.5);
        let sixth = T::one() / real::<T>(6.0);
        let two = real::<T>(2.0);
        let n = y.len();

        f(t, y, &mut self.k1);
        for i in 0..n {
            self.stage[i] = y[i] + self.k1[i] * (dt * half);
        }
        f(t + dt * half, &self.stage, &mut self.k2);
        for i in 0..n {
            self.stage[i] = y[i] + self.k2[i] * (dt * half);
        }
        f(t + dt * half, &self.stage, &mut self.k3);
        for i in 0..n {
            self.stage[i] = y[i] + self.k3[i] * dt;
        }
        f(t + dt, &self.stage, &mut self.k4);
        for i in 0..n {
            y[i] += (self.k1[i] + (self.k2[i] + self.k3[i]) * two + self.k4[i]) * (dt * sixth);
        }
    }
}
