//! Deterministic baseband simulator and analysis toolkit for a monostatic
//! full-duplex integrated sensing and communication (FD-ISAC) link.
//!
//! The crate is organised along the signal path:
//!
//! * [`waveform`] builds fast-time codes, embedded PSK symbols, dedicated
//!   communication symbols and the chip-rate frame of one CPI.
//! * [`channel`] applies the monostatic echo, self-interference leakage and
//!   noise, and evaluates link budgets.
//! * [`receiver`] runs SIC, the matched-filter bank, slow-time Doppler DFT and
//!   the linear detector.
//! * [`analysis`] holds the closed-form SINR, detection probability, ACF and
//!   rate formulas together with the Marcum-Q implementation.
//! * [`comm`] covers the communication receiver.
//! * [`harness`] runs scenarios (analytic and Monte-Carlo) and writes CSV.

pub mod analysis;
pub mod channel;
pub mod comm;
pub mod error;
pub mod harness;
pub mod receiver;
pub mod rng;
pub mod waveform;

pub use num_complex::Complex64;

pub use analysis::{AcfCurve, SinrBreakdown};
pub use channel::{ChannelState, LinkBudget};
pub use comm::CommLink;
pub use error::{Error, Result};
pub use harness::{ResultRow, Scenario};
pub use receiver::{DetectionResult, RangeDopplerMap};
pub use waveform::{BasebandFrame, CodeKind, Constellation, FastTimeCode, WaveformConfig};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Converts a decibel value to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
