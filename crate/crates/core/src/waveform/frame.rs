use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;

use super::codes::{code_for, FastTimeCode};
use super::symbols::{draw_comm_symbols_with, draw_embedded_symbols_with};
use super::WaveformConfig;
use crate::error::{Error, Result};
use crate::rng::substream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    Pulse,
    Comm,
}

/// Chip-rate transmit samples of one CPI.
///
/// Row `k` holds `x_k^d[l]`: `√(Pr·Tc)·ω_k·c[l]` for `l < N` and
/// `√(Pc·Tc)·s_k[l-N]` for `N ≤ l < N+J`. The frame also keeps the symbol row
/// sent in the PRI preceding the CPI, which the echo of PRI 0 overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct BasebandFrame {
    cfg: WaveformConfig,
    code: FastTimeCode,
    embedded: Vec<Complex64>,
    comm: Array2<Complex64>,
    warmup: Vec<Complex64>,
    samples: Array2<Complex64>,
    segments: Vec<Segment>,
}

/// Builds the frame from explicit symbols.
///
/// `comm` is either `K × J` (the PRI before the CPI is taken as silent) or
/// `(K+1) × J`, in which case row 0 is the symbol row sent just before the CPI.
pub fn assemble_frame(
    cfg: &WaveformConfig,
    code: &FastTimeCode,
    embedded: &[Complex64],
    comm: &Array2<Complex64>,
) -> Result<BasebandFrame> {
    let (n, j, k) = (cfg.n(), cfg.j(), cfg.k());
    if code.len() != n {
        return Err(Error::DimensionMismatch(format!("code has {} chips, config expects N = {n}", code.len())));
    }
    if embedded.len() != k {
        return Err(Error::DimensionMismatch(format!("{} embedded symbols for K = {k} PRIs", embedded.len())));
    }
    if comm.ncols() != j || (comm.nrows() != k && comm.nrows() != k + 1) {
        return Err(Error::DimensionMismatch(format!(
            "communication symbols are {}x{}, expected {k}x{j} or {}x{j}",
            comm.nrows(),
            comm.ncols(),
            k + 1
        )));
    }
    let (warmup, visible) = if comm.nrows() == k + 1 {
        (comm.row(0).to_vec(), comm.slice(ndarray::s![1.., ..]).to_owned())
    } else {
        (vec![Complex64::new(0.0, 0.0); j], comm.clone())
    };

    let a_r = (cfg.pr() * cfg.tc()).sqrt();
    let a_c = (cfg.pc() * cfg.tc()).sqrt();
    let chips = code.chips();
    let samples = Array2::from_shape_fn((k, n + j), |(row, l)| {
        if l < n {
            embedded[row] * chips[l] * a_r
        } else {
            visible[[row, l - n]] * a_c
        }
    });
    let segments = (0..n + j).map(|l| if l < n { Segment::Pulse } else { Segment::Comm }).collect();

    Ok(BasebandFrame {
        cfg: cfg.clone(),
        code: code.clone(),
        embedded: embedded.to_vec(),
        comm: visible,
        warmup,
        samples,
        segments,
    })
}

/// Draws all symbols from `seed` (including the pre-CPI row) and assembles
/// the frame with the config's own code.
pub fn generate_frame(cfg: &WaveformConfig, seed: u64) -> Result<BasebandFrame> {
    let code = code_for(cfg.code_kind(), cfg.n())?;
    generate_frame_with_code(cfg, &code, seed)
}

pub(crate) fn generate_frame_with_code(cfg: &WaveformConfig, code: &FastTimeCode, seed: u64) -> Result<BasebandFrame> {
    let mut sym_rng = substream(seed, 1);
    let mut comm_rng = substream(seed, 2);
    let omega = draw_embedded_symbols_with(&mut sym_rng, cfg.psk_order(), cfg.k());
    let s = draw_comm_symbols_with(&mut comm_rng, cfg.constellation(), cfg.psk_order(), cfg.k() + 1, cfg.j());
    assemble_frame(cfg, code, &omega, &s)
}

impl BasebandFrame {
    pub fn config(&self) -> &WaveformConfig {
        &self.cfg
    }
    pub fn code(&self) -> &FastTimeCode {
        &self.code
    }
    pub fn embedded_symbols(&self) -> &[Complex64] {
        &self.embedded
    }
    /// Visible `K × J` dedicated symbols.
    pub fn comm_symbols(&self) -> &Array2<Complex64> {
        &self.comm
    }
    pub fn warmup_symbols(&self) -> &[Complex64] {
        &self.warmup
    }
    /// `K × (N+J)` chip samples.
    pub fn samples(&self) -> &Array2<Complex64> {
        &self.samples
    }
    pub fn segment_map(&self) -> &[Segment] {
        &self.segments
    }

    /// `x_k^d`, the transmitted chips of PRI `k`.
    pub fn direct(&self, k: usize) -> ArrayView1<'_, Complex64> {
        self.samples.row(k)
    }

    /// Dedicated symbols `s_{k-1}` sent in the PRI before `k`.
    pub fn previous_comm(&self, k: usize) -> ArrayView1<'_, Complex64> {
        if k == 0 {
            ArrayView1::from(&self.warmup[..])
        } else {
            self.comm.row(k - 1)
        }
    }

    /// Transmitted chip stream of PRI `k - 1` followed by PRI `k`. The pulse
    /// part of the PRI preceding the CPI is zero.
    pub fn stream_pair(&self, k: usize) -> Vec<Complex64> {
        let (n, len) = (self.cfg.n(), self.cfg.chips_per_pri());
        let a_c = (self.cfg.pc() * self.cfg.tc()).sqrt();
        let mut out = Vec::with_capacity(2 * len);
        if k == 0 {
            out.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), n));
            out.extend(self.warmup.iter().map(|&s| s * a_c));
        } else {
            out.extend(self.samples.row(k - 1).iter().copied());
        }
        out.extend(self.samples.row(k).iter().copied());
        out
    }

    /// Projected echo `x^r_{k,n_τ}` for an integer delay of `n_τ` chips:
    /// the last `n_τ` symbols of `s_{k-1}`, the shifted pulse `ω_k c`, then
    /// the first `J - n_τ` symbols of `s_k`.
    pub fn echo(&self, k: usize, n_tau: usize) -> Result<Vec<Complex64>> {
        let (n, j) = (self.cfg.n(), self.cfg.j());
        if n_tau == 0 || n_tau > j {
            return Err(Error::DelayOutOfRange { n_tau, max: j });
        }
        let a_r = (self.cfg.pr() * self.cfg.tc()).sqrt();
        let a_c = (self.cfg.pc() * self.cfg.tc()).sqrt();
        let prev = self.previous_comm(k);
        let cur = self.comm.row(k);
        let w = self.embedded[k];
        let chips = self.code.chips();
        let mut out = Vec::with_capacity(n + j);
        for l in 0..n_tau {
            out.push(prev[j - n_tau + l] * a_c);
        }
        for l in n_tau..n + n_tau {
            out.push(w * chips[l - n_tau] * a_r);
        }
        for l in n + n_tau..n + j {
            out.push(cur[l - n - n_tau] * a_c);
        }
        Ok(out)
    }

    /// SI power profile `p^d = [Pr·1_N, Pc·1_J]`.
    pub fn direct_power_profile(&self) -> Vec<f64> {
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Pulse => self.cfg.pr(),
                Segment::Comm => self.cfg.pc(),
            })
            .collect()
    }

    /// Echo power profile `p^r_{n_τ} = [Pc·1_{n_τ}, Pr·1_N, Pc·1_{J-n_τ}]`.
    pub fn echo_power_profile(&self, n_tau: usize) -> Vec<f64> {
        let n = self.cfg.n();
        (0..self.cfg.chips_per_pri())
            .map(|l| if l >= n_tau && l < n + n_tau { self.cfg.pr() } else { self.cfg.pc() })
            .collect()
    }

    /// `Σ_l |x_k^d[l]|²`.
    pub fn pri_energy(&self, k: usize) -> f64 {
        self.samples.row(k).iter().map(|v| v.norm_sqr()).sum()
    }

    /// Oversampled transmit stream of PRIs `k-1, k` at `oversampling` points
    /// per chip, with the LFM pulse evaluated as the continuous chirp.
    pub(crate) fn oversampled_pair(&self, k: usize, oversampling: usize) -> Vec<Complex64> {
        let a_r = (self.cfg.pr() * self.cfg.tc()).sqrt();
        let a_c = (self.cfg.pc() * self.cfg.tc()).sqrt();
        let pulse = self.code.oversampled(oversampling);
        let per_pri = self.cfg.chips_per_pri() * oversampling;
        let mut out = Vec::with_capacity(2 * per_pri);
        let zero = Complex64::new(0.0, 0.0);
        let mut push_pri = |w: Complex64, comm: ArrayView1<'_, Complex64>| {
            out.extend(pulse.iter().map(|&p| p * w * a_r));
            for &s in comm.iter() {
                out.extend(std::iter::repeat_n(s * a_c, oversampling));
            }
        };
        if k == 0 {
            push_pri(zero, ArrayView1::from(&self.warmup[..]));
        } else {
            push_pri(self.embedded[k - 1], self.comm.row(k - 1));
        }
        push_pri(self.embedded[k], self.comm.row(k));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{draw_comm_symbols, draw_embedded_symbols, make_lfm_code, Constellation, WaveformParams};

    fn small_cfg(pr: f64, pc: f64) -> WaveformConfig {
        WaveformConfig::new(WaveformParams {
            bandwidth_hz: 1e6,
            pri_s: 40e-6,
            pulse_duration_s: 8e-6,
            pris_per_cpi: 6,
            radar_power_w: pr,
            comm_power_w: pc,
            psk_order: 4,
            code: crate::waveform::CodeKind::Lfm,
            comm_constellation: Constellation::Psk,
        })
        .unwrap()
    }

    #[test]
    fn pulsed_special_case() {
        let cfg = small_cfg(2.0, 0.0);
        let code = make_lfm_code(cfg.n());
        let omega = vec![Complex64::new(1.0, 0.0); cfg.k()];
        let s = draw_comm_symbols(Constellation::Psk, 4, cfg.k(), cfg.j(), 3);
        let f = assemble_frame(&cfg, &code, &omega, &s).unwrap();
        let a = (2.0 * cfg.tc()).sqrt();
        for k in 0..cfg.k() {
            let row = f.direct(k);
            for l in 0..cfg.n() {
                assert_eq!(row[l], code.chips()[l] * a);
            }
            assert!(row.iter().skip(cfg.n()).all(|v| *v == Complex64::new(0.0, 0.0)));
        }
    }

    #[test]
    fn radar_off_zeroes_pulse() {
        let cfg = small_cfg(0.0, 1.0);
        let f = generate_frame(&cfg, 1).unwrap();
        for k in 0..cfg.k() {
            assert!(f.direct(k).iter().take(cfg.n()).all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn table_one_energy_per_pri() {
        let cfg = WaveformConfig::table_one().with_constellation(Constellation::Psk);
        let f = generate_frame(&cfg, 5).unwrap();
        // direct summation oracle
        let oracle: f64 = f.samples().row(3).iter().map(|v| v.re * v.re + v.im * v.im).sum();
        let closed = cfg.tc() * (cfg.pr() * cfg.n() as f64 + cfg.pc() * cfg.j() as f64);
        assert!((oracle - closed).abs() < 1e-12 * closed);
        assert!((f.pri_energy(3) - closed).abs() < 1e-12 * closed);
    }

    #[test]
    fn dimension_checks() {
        let cfg = small_cfg(1.0, 1.0);
        let code = make_lfm_code(cfg.n());
        let omega = draw_embedded_symbols(4, cfg.k(), 1);
        let bad = draw_comm_symbols(Constellation::Psk, 4, cfg.k(), cfg.j() + 1, 1);
        assert!(matches!(assemble_frame(&cfg, &code, &omega, &bad), Err(Error::DimensionMismatch(_))));
        let s = draw_comm_symbols(Constellation::Psk, 4, cfg.k(), cfg.j(), 1);
        assert!(assemble_frame(&cfg, &make_lfm_code(3), &omega, &s).is_err());
        assert!(assemble_frame(&cfg, &code, &omega[1..], &s).is_err());
    }

    #[test]
    fn echo_segments_follow_closed_form() {
        let cfg = small_cfg(1.5, 0.5);
        let f = generate_frame(&cfg, 2).unwrap();
        let (n, j) = (cfg.n(), cfg.j());
        let a_c = (0.5 * cfg.tc()).sqrt();
        let e1 = f.echo(2, 1).unwrap();
        assert_eq!(e1[0], f.comm_symbols()[[1, j - 1]] * a_c);
        assert_eq!(&e1[1..n + 1], &f.direct(2).as_slice().unwrap()[..n]);
        // the echo is a sliding window over the previous and current PRI
        for n_tau in [1, n / 2, n, n + 1, j] {
            let e = f.echo(4, n_tau).unwrap();
            let pair = f.stream_pair(4);
            let start = n + j - n_tau;
            assert_eq!(&e[..], &pair[start..start + n + j], "n_tau {n_tau}");
        }
        // PRI 0 uses the pre-CPI symbol row
        let e0 = f.echo(0, j).unwrap();
        assert_eq!(e0[0], f.warmup_symbols()[0] * a_c);
        assert!(matches!(f.echo(0, 0), Err(Error::DelayOutOfRange { .. })));
        assert!(matches!(f.echo(0, j + 1), Err(Error::DelayOutOfRange { .. })));
    }

    #[test]
    fn frames_are_deterministic() {
        let cfg = small_cfg(1.0, 1.0).with_constellation(Constellation::Gaussian);
        assert_eq!(generate_frame(&cfg, 77).unwrap(), generate_frame(&cfg, 77).unwrap());
        assert_ne!(generate_frame(&cfg, 77).unwrap(), generate_frame(&cfg, 78).unwrap());
    }

    #[test]
    fn power_profiles() {
        let cfg = small_cfg(2.0, 0.5);
        let f = generate_frame(&cfg, 1).unwrap();
        let pd = f.direct_power_profile();
        assert_eq!(pd[0], 2.0);
        assert_eq!(pd[cfg.n()], 0.5);
        let pr = f.echo_power_profile(3);
        assert_eq!(&pr[..4], &[0.5, 0.5, 0.5, 2.0]);
        assert_eq!(pr[3 + cfg.n()], 0.5);
    }
}
