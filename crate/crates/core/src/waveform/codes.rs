use std::f64::consts::PI;

use num_complex::Complex64;

use super::CodeKind;
use crate::error::{Error, Result};

/// Lengths for which a biphase Barker sequence exists.
pub const BARKER_LENGTHS: [usize; 7] = [2, 3, 4, 5, 7, 11, 13];

/// Length-`N` fast-time code with `Σ|c[n]|² = N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FastTimeCode {
    chips: Vec<Complex64>,
    label: String,
    kind: CodeKind,
}

impl FastTimeCode {
    pub fn chips(&self) -> &[Complex64] {
        &self.chips
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn kind(&self) -> CodeKind {
        self.kind
    }
    pub fn len(&self) -> usize {
        self.chips.len()
    }
    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }
    pub fn norm_sqr(&self) -> f64 {
        self.chips.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Samples the underlying pulse at `oversampling` points per chip.
    ///
    /// LFM codes are the chip-rate samples of the chirp `exp(jπBt²/Tp)`, so
    /// the chirp itself is evaluated at `t = m·Tc/L`; every other code is
    /// held constant over its chip. With `oversampling = 1` this returns the
    /// chips unchanged.
    pub fn oversampled(&self, oversampling: usize) -> Vec<Complex64> {
        assert!(oversampling >= 1, "oversampling must be at least 1");
        if oversampling == 1 {
            return self.chips.clone();
        }
        let n = self.chips.len();
        match self.kind {
            CodeKind::Lfm => {
                let l = oversampling as f64;
                (0..n * oversampling)
                    .map(|m| {
                        let u = m as f64 / l;
                        Complex64::from_polar(1.0, PI * u * u / n as f64)
                    })
                    .collect()
            }
            _ => self.chips.iter().flat_map(|&c| std::iter::repeat_n(c, oversampling)).collect(),
        }
    }

    /// Aperiodic autocorrelation at integer lags `0..N`.
    pub fn aperiodic_acf(&self) -> Vec<Complex64> {
        let c = &self.chips;
        (0..c.len()).map(|m| (m..c.len()).map(|i| c[i] * c[i - m].conj()).sum()).collect()
    }
}

/// `c[n] = exp(jπn²/N)`, `n = 0..N-1`.
pub fn make_lfm_code(n: usize) -> FastTimeCode {
    assert!(n >= 1, "code length must be at least 1");
    let chips = (0..n)
        .map(|i| {
            // n² mod 2N keeps the phase argument small for long codes.
            let sq = ((i as u128 * i as u128) % (2 * n as u128)) as f64;
            Complex64::from_polar(1.0, PI * sq / n as f64)
        })
        .collect();
    FastTimeCode { chips, label: format!("lfm-{n}"), kind: CodeKind::Lfm }
}

/// Standard biphase Barker sequence. Barker-2 is `[+1, -1]`.
pub fn make_barker_code(length: usize) -> Result<FastTimeCode> {
    let signs: &[i8] = match length {
        2 => &[1, -1],
        3 => &[1, 1, -1],
        4 => &[1, 1, -1, 1],
        5 => &[1, 1, 1, -1, 1],
        7 => &[1, 1, 1, -1, -1, 1, -1],
        11 => &[1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1],
        13 => &[1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1],
        other => return Err(Error::UnsupportedLength(other)),
    };
    let chips = signs.iter().map(|&s| Complex64::new(s as f64, 0.0)).collect();
    Ok(FastTimeCode { chips, label: format!("barker-{length}"), kind: CodeKind::Barker })
}

/// Arbitrary code, rescaled so that `‖c‖² = N`.
pub fn make_custom_code(chips: &[Complex64], label: &str) -> Result<FastTimeCode> {
    if chips.is_empty() {
        return Err(Error::DimensionMismatch("custom code must have at least one chip".into()));
    }
    let energy: f64 = chips.iter().map(|c| c.norm_sqr()).sum();
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::DimensionMismatch("custom code has zero or non-finite energy".into()));
    }
    let scale = (chips.len() as f64 / energy).sqrt();
    Ok(FastTimeCode {
        chips: chips.iter().map(|&c| c * scale).collect(),
        label: label.to_string(),
        kind: CodeKind::Custom,
    })
}

/// Builds the code named by `kind` with `n` chips.
pub(crate) fn code_for(kind: CodeKind, n: usize) -> Result<FastTimeCode> {
    match kind {
        CodeKind::Lfm => Ok(make_lfm_code(n)),
        CodeKind::Barker => make_barker_code(n),
        CodeKind::Custom => Err(Error::config("custom codes must be supplied explicitly")),
    }
}
