use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fdisac::analysis::{acf_curve, marcum_q1};
use fdisac::channel::apply_channel;
use fdisac::receiver::{cancel_si, doppler_dft, matched_filter_bank, matched_filter_bins};
use fdisac::waveform::{generate_frame, CodeKind, WaveformParams};
use fdisac::{ChannelState, Complex64, Constellation, WaveformConfig};

fn small_cfg() -> WaveformConfig {
    WaveformConfig::new(WaveformParams {
        bandwidth_hz: 10e6,
        pri_s: 20e-6,
        pulse_duration_s: 2e-6,
        pris_per_cpi: 32,
        radar_power_w: 0.91,
        comm_power_w: 0.01,
        psk_order: 16,
        code: CodeKind::Lfm,
        comm_constellation: Constellation::Psk,
    })
    .unwrap()
}

fn channel() -> ChannelState {
    ChannelState {
        alpha: Complex64::new(1e-3, 0.0),
        si_gain: Complex64::new(0.1, 0.0),
        sic_factor: 1e-6,
        noise_psd: 1e-12,
        ..ChannelState::ideal(40)
    }
}

fn receive_chain(c: &mut Criterion) {
    let cfg = small_cfg();
    let frame = generate_frame(&cfg, 1).unwrap();
    let ch = channel();
    let y = apply_channel(&frame, &ch, 2).unwrap();
    let yh = cancel_si(&y, &frame, ch.si_gain, ch.sic_factor, 3).unwrap();

    c.bench_function("frame_generation", |b| b.iter(|| generate_frame(black_box(&cfg), 1).unwrap()));
    c.bench_function("channel_and_sic", |b| {
        b.iter(|| {
            let y = apply_channel(black_box(&frame), &ch, 2).unwrap();
            cancel_si(&y, &frame, ch.si_gain, ch.sic_factor, 3).unwrap()
        })
    });
    c.bench_function("matched_filter_bank", |b| b.iter(|| matched_filter_bank(black_box(&yh), &frame).unwrap()));
    c.bench_function("matched_filter_single_bin", |b| {
        b.iter(|| matched_filter_bins(black_box(&yh), &frame, &[40]).unwrap())
    });
    let map = matched_filter_bank(&yh, &frame).unwrap();
    c.bench_function("doppler_dft", |b| {
        b.iter_batched(
            || map.clone(),
            |mut m| {
                doppler_dft(&mut m);
                m
            },
            criterion::BatchSize::LargeInput,
        )
    });
}

fn marcum(c: &mut Criterion) {
    let mut g = c.benchmark_group("marcum_q1");
    for (a, b) in [(1.0, 2.0), (10.0, 12.0), (60.0, 58.0)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{a}_{b}")), &(a, b), |bch, &(a, b)| {
            bch.iter(|| marcum_q1(black_box(a), black_box(b)))
        });
    }
    g.finish();
}

fn autocorrelation(c: &mut Criterion) {
    let cfg = small_cfg();
    let frame = generate_frame(&cfg, 1).unwrap();
    let l = 8;
    let lags: Vec<f64> = (0..=cfg.n() * l).map(|i| i as f64 * cfg.tc() / l as f64).collect();
    c.bench_function("acf_curve_pulse_lags", |b| b.iter(|| acf_curve(black_box(&frame), 0, &lags, l).unwrap()));
}

criterion_group!(benches, receive_chain, marcum, autocorrelation);
criterion_main!(benches);
