//! Photon transport and blockade observables for a microring resonator
//! coupled to a waveguide at two points.
//!
//! The two-point coupling geometry feeds the field emitted at one contact
//! back into the other after a propagation delay, so the resonator response
//! acquires a phase-tunable, non-Markovian character. This crate provides
//!
//! * the parameter model and the elementary complex spectral functions
//!   (single-photon transmission `t`, unimodular factor `eta`, coupling
//!   amplitude `gamma`) — [`RingParams`],
//! * one- and two-photon scattering observables of the output field,
//!   including the Kerr-induced bound-state kernel and the equal-time
//!   second-order correlation `g2` — [`scattering`],
//! * the classically driven two-photon-truncated amplitude system, its
//!   steady state, and intracavity `g2` — [`driven`],
//! * a brute-force oracle that discretizes the waveguide continuum and
//!   evolves a single-excitation wavepacket in the time domain — [`oracle`],
//! * a deterministic adaptive Gauss–Kronrod quadrature for the complex
//!   line integrals the two-photon observables require — [`quad`].
//!
//! All numerics are generic over the scalar type through the [`Real`]
//! trait; `f64` is the intended precision and the concrete aliases at the
//! crate root ([`RingParams64`], …) fix it.
//!
//! Units: rates and angular frequencies are carried in rad·MHz, times in µs.

pub mod driven;
pub mod oracle;
pub mod params;
pub mod quad;
pub mod scattering;
pub mod spectral;

mod integrate;
mod linalg;

pub use num_complex::Complex;

pub use params::{EffectiveRates, ParamError, RingParams};

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, RemAssign, SubAssign};

/// Floating-point scalar for all physics routines: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + RemAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
    + RemAssign
        + DivAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for an `f64` literal lifted into the generic scalar.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must be representable in the scalar type")
}

/// Parameter record at working precision.
pub type RingParams64 = RingParams<f64>;
/// Parameter record at single precision.
pub type RingParams32 = RingParams<f32>;
/// Effective-rate record at working precision.
pub type EffectiveRates64 = EffectiveRates<f64>;
/// Intracavity amplitude state at working precision.
pub type AmplitudeState64 = driven::AmplitudeState<f64>;
/// Quadrature configuration at working precision.
pub type QuadratureSpec64 = quad::QuadratureSpec<f64>;
