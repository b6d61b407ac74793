//! Nonclassical microwaves acting on mesoscopic interference devices and
//! SQUID rings.
//!
//! The crate computes Weyl characteristic functions of single-mode states,
//! the electron intensities and autocorrelations they induce in an
//! Aharonov-Bohm ring, two-device correlation ratios for two-mode fields,
//! and Josephson currents in SQUID rings. Every closed form has a matching
//! brute-force path in [`fockbench`], which works with explicit truncated
//! Fock-space matrices.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the type
//! aliases at the crate root fix the scalar to `f64`.

pub mod error;
pub mod fockbench;
pub mod harmonic;
pub mod interference;
pub mod qstates;
pub mod scalar;
pub mod specfun;
pub mod squid;
pub mod twomode;

pub use error::{Error, Result};
pub use harmonic::HarmonicSeries;
pub use qstates::{ChargeCoupling, ModeParams, PhotonState, StateFamily};
pub use scalar::Real;
pub use twomode::{TwoModeKind, TwoModePhotonState};

/// Crate version, echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Complex64 = num_complex::Complex<f64>;

pub type State = qstates::PhotonState<f64>;
pub type Mode = qstates::ModeParams<f64>;
pub type Coupling = qstates::ChargeCoupling<f64>;
pub type Series = harmonic::HarmonicSeries<f64>;
pub type Matrix = fockbench::FockMatrix<f64>;
pub type TwoModeState = twomode::TwoModePhotonState<f64>;
pub type Correlation = interference::CorrelationSeries<f64>;
pub type Spectrum = interference::SpectrumCoeffs<f64>;
pub type Drive = squid::SquidDrive<f64>;
