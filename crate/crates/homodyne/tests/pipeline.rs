//! End-to-end checks of the homodyne pipeline against the synthetic
//! generator, whose ground-truth state is known exactly.

use approx::assert_abs_diff_eq;
use coherence_core::DisplacedThermal64;
use homodyne::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn steady(state: DisplacedThermal64, n: usize, seed: u64) -> QuadratureStream {
    synth_homodyne_stream(&GeneratorConfig::steady(state, n, seed)).unwrap()
}

/// Direct Husimi samples of a state: `q, p ~ N(sqrt(2) alpha0, nbar + 1)`
/// per axis, with the phase averaged out when `spin_phase` is set.
fn husimi_points(
    state: &DisplacedThermal64,
    n: usize,
    spin_phase: bool,
    seed: u64,
) -> Vec<SelectedPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = (state.nbar + 1.0).sqrt();
    let r0 = std::f64::consts::SQRT_2 * state.alpha0.norm();
    (0..n)
        .map(|i| {
            let phi = if spin_phase { rng.gen::<f64>() * std::f64::consts::TAU } else { 0.0 };
            let gq: f64 = rng.sample(StandardNormal);
            let gp: f64 = rng.sample(StandardNormal);
            SelectedPoint {
                t: i as f64,
                q: r0 * phi.cos() + gq * sigma,
                p: r0 * phi.sin() + gp * sigma,
            }
        })
        .collect()
}

#[test]
fn generator_vacuum_channels_have_shot_noise_variance() {
    let state = DisplacedThermal64::from_magnitudes(0.0, 0.0).unwrap();
    let stream = steady(state, 200_000, 11);
    let (v1, v2) = stream.channel_variances();
    assert_abs_diff_eq!(v1, 0.5, epsilon = 0.01);
    assert_abs_diff_eq!(v2, 0.5, epsilon = 0.01);
}

#[test]
fn generator_coherent_means_track_the_amplitude() {
    let state = DisplacedThermal64::new(coherence_core::Complex64::new(3.0, 1.0), 0.0).unwrap();
    let cfg = GeneratorConfig {
        phase_coherence_time: 0.0, // frozen phase
        sweep_period: 0.0,         // channels pinned orthogonal
        ..GeneratorConfig::steady(state, 200_000, 7)
    };
    let stream = synth_homodyne_stream(&cfg).unwrap();
    let n = stream.len() as f64;
    let (m1, m2) = stream
        .records
        .iter()
        .fold((0.0, 0.0), |(a, b), r| (a + r.x1, b + r.x2));
    assert_abs_diff_eq!(m1 / n, 3.0, epsilon = 0.01);
    assert_abs_diff_eq!(m2 / n, 1.0, epsilon = 0.01);
    let (v1, v2) = stream.channel_variances();
    assert_abs_diff_eq!(v1, 0.5, epsilon = 0.01);
    assert_abs_diff_eq!(v2, 0.5, epsilon = 0.01);
}

#[test]
fn whitening_removes_ar1_correlation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = 0.5f64;
    let norm = (1.0 - c * c).sqrt();
    let (mut x1, mut x2) = (0.0f64, 0.0f64);
    let records: Vec<Record> = (0..50_000)
        .map(|i| {
            let g1: f64 = rng.sample(StandardNormal);
            let g2: f64 = rng.sample(StandardNormal);
            x1 = c * x1 + norm * g1 * 0.5f64.sqrt();
            x2 = c * x2 + norm * g2 * 0.5f64.sqrt();
            Record { t: i as f64, x1, x2 }
        })
        .collect();
    let stream = QuadratureStream::new(records, 1.0).unwrap();
    let clean = preprocess(&stream).unwrap();
    let w1: Vec<f64> = clean.records.iter().map(|r| r.x1).collect();
    let w2: Vec<f64> = clean.records.iter().map(|r| r.x2).collect();
    assert!(lag1_autocorrelation(&w1).abs() < 0.02);
    assert!(lag1_autocorrelation(&w2).abs() < 0.02);
    let (v1, v2) = clean.channel_variances();
    assert_abs_diff_eq!(v1, 0.5, epsilon = 0.02);
    assert_abs_diff_eq!(v2, 0.5, epsilon = 0.02);
}

#[test]
fn preprocess_applies_lo_scale() {
    let state = DisplacedThermal64::from_magnitudes(0.0, 0.0).unwrap();
    let mut stream = steady(state, 20_000, 5);
    // simulate a miscalibrated detector gain of 3x
    for r in &mut stream.records {
        r.x1 *= 3.0;
        r.x2 *= 3.0;
    }
    stream.lo_scale = 1.0 / 3.0;
    let clean = preprocess(&stream).unwrap();
    assert_eq!(clean.lo_scale, 1.0);
    let (v1, v2) = clean.channel_variances();
    assert_abs_diff_eq!(v1, 0.5, epsilon = 0.02);
    assert_abs_diff_eq!(v2, 0.5, epsilon = 0.02);
}

#[test]
fn preprocess_rejects_pathological_correlation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = 0.97f64;
    let norm = (1.0 - c * c).sqrt();
    let mut x = 0.0f64;
    let records: Vec<Record> = (0..20_000)
        .map(|i| {
            let g: f64 = rng.sample(StandardNormal);
            x = c * x + norm * g;
            Record { t: i as f64, x1: x, x2: g }
        })
        .collect();
    let stream = QuadratureStream::new(records, 1.0).unwrap();
    assert!(matches!(
        preprocess(&stream),
        Err(HomodyneError::PathologicalCorrelation(_))
    ));
}

#[test]
fn preprocess_rejects_short_streams() {
    let records = vec![Record { t: 0.0, x1: 0.0, x2: 0.0 }; 100];
    let stream = QuadratureStream::new(records, 1.0).unwrap();
    assert!(matches!(
        preprocess(&stream),
        Err(HomodyneError::TooFewRecords { needed: 1000, got: 100 })
    ));
}

#[test]
fn stream_rejects_nonmonotone_time() {
    let records = vec![
        Record { t: 0.0, x1: 0.0, x2: 0.0 },
        Record { t: 2.0, x1: 0.0, x2: 0.0 },
        Record { t: 1.0, x1: 0.0, x2: 0.0 },
    ];
    assert!(matches!(
        QuadratureStream::new(records, 1.0),
        Err(HomodyneError::NonMonotoneTime(2))
    ));
}

#[test]
fn postselection_keeps_orthogonal_records_and_rescales() {
    // Bright phase-locked carrier: the product series directly exposes the
    // relative channel phase, so the kept samples cluster at |cos delta| ~ 0.
    let state = DisplacedThermal64::from_magnitudes(50.0, 0.5).unwrap();
    let stream = steady(state, 400_000, 21);
    let sel = postselect_orthogonal(&stream, &PostselectOptions::default()).unwrap();
    assert!(sel.retention > 0.005 && sel.retention < 0.2, "retention {}", sel.retention);
    // kept pairs are Husimi samples: <u> = <n> + 1
    let (mean_n, _) = photon_moments(&sel.points);
    assert_abs_diff_eq!(mean_n, state.mean_n(), epsilon = 0.05 * state.mean_n());
}

#[test]
fn postselection_window_one_applies_per_record_rule() {
    let records = vec![
        Record { t: 0.0, x1: 1.0, x2: 0.0 },
        Record { t: 1.0, x1: 1.0, x2: 1.0 },
        Record { t: 2.0, x1: 0.0, x2: -1.0 },
        Record { t: 3.0, x1: 1.0, x2: -1.0 },
    ];
    let stream = QuadratureStream::new(records, 1.0).unwrap();
    let opts = PostselectOptions { margin: 0.1, window: 1, ..Default::default() };
    let sel = postselect_orthogonal(&stream, &opts).unwrap();
    // products are 0, 1, 0, -1; threshold = 0.1 * 2 keeps the zeros
    assert_eq!(sel.points.len(), 2);
    assert_eq!(sel.retention, 0.5);
    assert_abs_diff_eq!(sel.points[0].q, std::f64::consts::SQRT_2, epsilon = 1e-12);
    assert_abs_diff_eq!(sel.points[0].p, 0.0, epsilon = 1e-12);
}

#[test]
fn postselection_fails_when_nothing_is_orthogonal() {
    // strongly correlated channels: product never near zero relative to range
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let records: Vec<Record> = (0..10_000)
        .map(|i| {
            let g: f64 = rng.sample(StandardNormal);
            let x = 5.0 + 0.01 * g;
            Record { t: i as f64, x1: x, x2: x }
        })
        .collect();
    let stream = QuadratureStream::new(records, 1.0).unwrap();
    let opts = PostselectOptions { margin: 1e-6, window: 1, ..Default::default() };
    assert!(matches!(
        postselect_orthogonal(&stream, &opts),
        Err(HomodyneError::InsufficientPostselection { .. })
    ));
}

#[test]
fn histogram_matches_vacuum_husimi_density() {
    let state = DisplacedThermal64::from_magnitudes(0.0, 0.0).unwrap();
    let points = husimi_points(&state, 500_000, false, 31);
    let hist = build_husimi_histogram(&points, 0.2, Some(4.0)).unwrap();
    // Q(q, p) = exp(-(q^2 + p^2)/2) / (2 pi) in quadrature coordinates
    for ip in 0..hist.n_p() {
        for iq in 0..hist.n_q() {
            let (q, p) = hist.bin_center(iq, ip);
            let expect = (-(q * q + p * p) / 2.0).exp() / std::f64::consts::TAU;
            // Poisson error of the expected bin count, in density units
            let sigma = (expect / (hist.total as f64 * hist.bin_area())).sqrt();
            // floor of a few counts for near-empty bins
            let tol = 4.0 * sigma + 0.01 * expect + 3.0 / (hist.total as f64 * hist.bin_area());
            assert!(
                (hist.density(iq, ip) - expect).abs() < tol,
                "bin ({q:.2}, {p:.2}): got {} expected {expect}",
                hist.density(iq, ip)
            );
        }
    }
}

#[test]
fn histogram_probabilities_sum_to_one() {
    let state = DisplacedThermal64::from_magnitudes(10.0, 1.0).unwrap();
    let points = husimi_points(&state, 50_000, true, 13);
    let hist = build_husimi_histogram(&points, 0.5, None).unwrap();
    let total: f64 = (0..hist.n_p())
        .flat_map(|ip| (0..hist.n_q()).map(move |iq| (iq, ip)))
        .map(|(iq, ip)| hist.prob(iq, ip))
        .sum();
    assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    assert_eq!(hist.overflow, 0);
}

#[test]
fn histogram_identical_points_occupy_one_bin() {
    let points = vec![SelectedPoint { t: 0.0, q: 1.3, p: -0.7 }; 20_000];
    let hist = build_husimi_histogram(&points, 0.5, Some(3.0)).unwrap();
    assert_eq!(hist.occupied_bins(), 1);
    assert_eq!(hist.total, 20_000);
}

#[test]
fn histogram_rejects_excessive_overflow() {
    let state = DisplacedThermal64::from_magnitudes(50.0, 1.0).unwrap();
    let points = husimi_points(&state, 50_000, true, 17);
    assert!(matches!(
        build_husimi_histogram(&points, 0.5, Some(2.0)),
        Err(HomodyneError::ExcessiveOverflow { .. })
    ));
}

#[test]
fn ring_radius_recovered_through_the_full_pipeline() {
    // nbar = 1.7, |alpha0|^2 = 53: radial marginal of the phase-averaged
    // Husimi function peaks at r = 10.4
    let state = DisplacedThermal64::from_magnitudes(53.0, 1.7).unwrap();
    let stream = steady(state, 2_000_000, 42);
    let clean = preprocess(&stream).unwrap();
    let sel = postselect_orthogonal(&clean, &PostselectOptions::default()).unwrap();
    assert!(sel.points.len() > 20_000, "only {} points kept", sel.points.len());
    // the radius histogram is the radial marginal r * Q(r) up to a constant
    let bin = 0.2;
    let mut counts = vec![0u64; 100];
    for pt in &sel.points {
        let r = pt.q.hypot(pt.p);
        let i = (r / bin) as usize;
        if i < counts.len() {
            counts[i] += 1;
        }
    }
    // 3-bin smoothing plus a parabolic vertex tames the bin shot noise
    let smoothed: Vec<f64> = (0..counts.len())
        .map(|i| {
            let lo = i.saturating_sub(1);
            let hi = (i + 2).min(counts.len());
            counts[lo..hi].iter().sum::<u64>() as f64 / (hi - lo) as f64
        })
        .collect();
    let peak = smoothed
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    let (ym, y0, yp) = (smoothed[peak - 1], smoothed[peak], smoothed[peak + 1]);
    let vertex = 0.5 * (ym - yp) / (ym - 2.0 * y0 + yp);
    let r_peak = (peak as f64 + 0.5 + vertex) * bin;
    assert_abs_diff_eq!(r_peak, 10.4, epsilon = 0.3);
    // and the photon moments match the ground truth
    let (mean_n, _) = photon_moments(&sel.points);
    assert_abs_diff_eq!(mean_n, 54.7, epsilon = 2.0);
}

#[test]
fn photon_estimators_reach_thermal_statistics() {
    let state = DisplacedThermal64::from_magnitudes(0.0, 2.0).unwrap();
    let points = husimi_points(&state, 400_000, true, 23);
    let (mean_n, mean_n_sq) = photon_moments(&points);
    assert_abs_diff_eq!(mean_n, 2.0, epsilon = 0.05);
    let g2 = (mean_n_sq - mean_n) / (mean_n * mean_n);
    assert_abs_diff_eq!(g2, 2.0, epsilon = 0.1);
}

#[test]
fn photon_estimators_reach_poissonian_statistics() {
    let state = DisplacedThermal64::from_magnitudes(50.0, 0.0).unwrap();
    let points = husimi_points(&state, 400_000, true, 29);
    let (mean_n, mean_n_sq) = photon_moments(&points);
    assert_abs_diff_eq!(mean_n, 50.0, epsilon = 0.5);
    let g2 = (mean_n_sq - mean_n) / (mean_n * mean_n);
    assert_abs_diff_eq!(g2, 1.0, epsilon = 0.02);
}

#[test]
fn timeseries_requires_large_windows() {
    let points = vec![SelectedPoint { t: 0.0, q: 1.0, p: 0.0 }; 5000];
    assert!(matches!(
        photon_stats_timeseries(&points, 100),
        Err(HomodyneError::InsufficientData { .. })
    ));
    assert!(photon_stats_timeseries(&points, 5000).is_ok());
}

#[test]
fn segmentation_threshold_and_runs() {
    let mk = |t: f64, mean_n: f64| WindowStats { t, mean_n, g2: None };
    let series = vec![mk(0.0, 10.0), mk(1.0, 9.0), mk(2.0, 2.0), mk(3.0, 1.0), mk(4.0, 8.0)];
    let seg = segment_bistable(&series).unwrap();
    assert_eq!(seg.threshold_n, 5.5);
    assert_eq!(
        seg.labels,
        vec![Label::High, Label::High, Label::Low, Label::Low, Label::High]
    );
    assert_eq!(seg.runs, vec![(Label::High, 0, 2), (Label::Low, 2, 2), (Label::High, 4, 1)]);
}

#[test]
fn interior_windows_drop_run_boundaries() {
    let mk = |t: f64, mean_n: f64| WindowStats { t, mean_n, g2: None };
    let series: Vec<WindowStats> = [9.0, 8.0, 9.0, 1.0, 2.0, 1.0, 2.0, 8.0, 9.0, 8.0]
        .iter()
        .enumerate()
        .map(|(i, &n)| mk(i as f64, n))
        .collect();
    let seg = segment_bistable(&series).unwrap();
    // first window of the series and last window of the series are kept;
    // every window adjacent to a label flip is dropped
    assert_eq!(seg.interior_windows(Label::High), vec![0, 1, 8, 9]);
    assert_eq!(seg.interior_windows(Label::Low), vec![4, 5]);
}

#[test]
fn segmentation_ties_go_high_and_scale_equivariant() {
    let mk = |t: f64, mean_n: f64| WindowStats { t, mean_n, g2: None };
    let series = vec![mk(0.0, 1.0), mk(1.0, 3.0), mk(2.0, 2.0)];
    let seg = segment_bistable(&series).unwrap();
    assert_eq!(seg.labels[2], Label::High); // exactly at threshold
    let scaled: Vec<WindowStats> =
        series.iter().map(|w| mk(w.t, 7.0 * w.mean_n)).collect();
    assert_eq!(segment_bistable(&scaled).unwrap().labels, seg.labels);
}

#[test]
fn switching_source_segments_into_both_states() {
    let cfg = GeneratorConfig {
        low: Some(DisplacedThermal64::from_magnitudes(0.0, 3.0).unwrap()),
        switching_period: 250_000.0 * 1000.0,
        ..GeneratorConfig::steady(
            DisplacedThermal64::from_magnitudes(50.0, 1.0).unwrap(),
            2_000_000,
            77,
        )
    };
    let stream = synth_homodyne_stream(&cfg).unwrap();
    let sel = postselect_orthogonal(&stream, &PostselectOptions::default()).unwrap();
    let series = photon_stats_timeseries(&sel.points, 1000).unwrap();
    let seg = segment_bistable(&series).unwrap();
    assert!(seg.labels.contains(&Label::High) && seg.labels.contains(&Label::Low));
    assert!(seg.runs.len() >= 3, "expected alternation, got {:?}", seg.runs);
    assert!(seg.threshold_n > 5.0 && seg.threshold_n < 50.0, "threshold {}", seg.threshold_n);
    let highs: Vec<f64> = series
        .iter()
        .zip(&seg.labels)
        .filter(|(_, &l)| l == Label::High)
        .map(|(w, _)| w.mean_n)
        .collect();
    let high_mean = highs.iter().sum::<f64>() / highs.len() as f64;
    assert_abs_diff_eq!(high_mean, 51.0, epsilon = 6.0);
}

#[test]
fn csv_round_trip() {
    let state = DisplacedThermal64::from_magnitudes(4.0, 0.3).unwrap();
    let stream = steady(state, 2000, 1);
    let mut buf = Vec::new();
    write_stream_csv(&mut buf, &stream).unwrap();
    let back = read_stream_csv(&mut buf.as_slice(), stream.lo_scale).unwrap();
    assert_eq!(back.len(), stream.len());
    for (a, b) in stream.records.iter().zip(&back.records) {
        assert_abs_diff_eq!(a.t, b.t, epsilon = 0.0);
        assert_abs_diff_eq!(a.x1, b.x1, epsilon = 0.0);
        assert_abs_diff_eq!(a.x2, b.x2, epsilon = 0.0);
    }
}

#[test]
fn binary_round_trip_is_exact() {
    let state = DisplacedThermal64::from_magnitudes(4.0, 0.3).unwrap();
    let stream = steady(state, 2000, 2);
    let mut buf = Vec::new();
    write_stream_binary(&mut buf, &stream).unwrap();
    let back = read_stream_binary(&mut buf.as_slice()).unwrap();
    assert_eq!(back, stream);
}

#[test]
fn binary_reader_rejects_other_files() {
    let mut buf: &[u8] = b"t,x1,x2\n0,0,0\n";
    assert!(matches!(
        read_stream_binary(&mut buf),
        Err(HomodyneError::Format(_))
    ));
}

#[test]
fn histogram_csv_schema() {
    let points = husimi_points(
        &DisplacedThermal64::from_magnitudes(1.0, 0.5).unwrap(),
        20_000,
        true,
        3,
    );
    let hist = build_husimi_histogram(&points, 0.5, None).unwrap();
    let mut buf = Vec::new();
    write_histogram_csv(&mut buf, &hist).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,p,Q,sigma_Q");
    assert_eq!(lines.count(), hist.n_q() * hist.n_p());
}
