//! `husimi-fit`: quadrature stream -> preprocess -> postselect -> histogram
//! -> model fit with Monte Carlo errors; optionally segmented into bistable
//! high/low populations first.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use fitting::{fit_histograms_extrapolated, make_report, propagate_errors_mc, FitReport};
use homodyne::{
    build_husimi_histogram, photon_stats_timeseries, postselect_orthogonal, preprocess,
    read_stream_binary, read_stream_csv, segment_bistable, write_histogram_csv, Label,
    PostselectOptions, QuadratureStream, SelectedPoint,
};

use crate::error::{CliError, Result};
use crate::plot::{write_plot_sidecar, PlotDescription, PlotSeries};

pub struct HusimiFitOptions {
    pub lo_scale: f64,
    pub margin: f64,
    pub smoothing_window: usize,
    pub bin_width: f64,
    pub resamples: usize,
    pub seed: u64,
    pub bistable: bool,
    /// Postselected points per statistics window for segmentation.
    pub stats_window: usize,
}

impl Default for HusimiFitOptions {
    fn default() -> Self {
        Self {
            lo_scale: 1.0,
            margin: 0.025,
            smoothing_window: 1024,
            bin_width: 0.25,
            resamples: 200,
            seed: 1,
            bistable: false,
            stats_window: 1000,
        }
    }
}

/// Reads either the binary container (sniffed by magic) or `t,x1,x2` CSV.
fn ingest(path: &Path, lo_scale: f64) -> Result<QuadratureStream> {
    let mut file =
        BufReader::new(File::open(path).map_err(|e| CliError::stage("ingest", e))?);
    let mut magic = [0u8; 4];
    let is_binary = matches!(file.read_exact(&mut magic), Ok(())) && &magic == b"HQDS";
    file.seek(SeekFrom::Start(0)).map_err(|e| CliError::stage("ingest", e))?;
    if is_binary {
        read_stream_binary(&mut file).map_err(|e| CliError::stage("ingest", e))
    } else {
        read_stream_csv(&mut file, lo_scale).map_err(|e| CliError::stage("ingest", e))
    }
}

fn fit_population(
    label: &str,
    points: &[SelectedPoint],
    out: &Path,
    opts: &HusimiFitOptions,
) -> Result<FitReport> {
    let hist = build_husimi_histogram(points, opts.bin_width, None)
        .map_err(|e| CliError::stage("histogram", e))?;
    let coarse = build_husimi_histogram(points, 2.0 * opts.bin_width, None)
        .map_err(|e| CliError::stage("histogram", e))?;
    let path = out.join(format!("histogram_{label}.csv"));
    let mut w = BufWriter::new(File::create(&path).map_err(|e| CliError::stage("output", e))?);
    write_histogram_csv(&mut w, &hist).map_err(|e| CliError::stage("output", e))?;
    let ex = fit_histograms_extrapolated(&hist, &coarse)
        .map_err(|e| CliError::stage("fit", e))?;
    let errors = propagate_errors_mc(&ex.coarse_bins, &ex.coarse, opts.resamples, opts.seed)
        .map_err(|e| CliError::stage("errors", e))?;
    let report =
        make_report(ex.result, hist.total, errors).map_err(|e| CliError::stage("fit", e))?;
    println!(
        "{label}: nbar = {:.4} +- {:.4}, |alpha0|^2 = {:.4} +- {:.4}, g2 = {:.4} +- {:.4}, C = {:.4} +- {:.4}",
        report.fit.params.nbar,
        report.errors.nbar,
        report.fit.params.alpha0_sq,
        report.errors.alpha0_sq,
        report.g2,
        report.errors.g2,
        report.coherence,
        report.errors.coherence,
    );
    Ok(report)
}

pub fn cmd_husimi_fit(input: &Path, out: &Path, opts: &HusimiFitOptions) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| CliError::stage("output", e))?;
    let raw = ingest(input, opts.lo_scale)?;
    let clean = preprocess(&raw).map_err(|e| CliError::stage("preprocess", e))?;
    let sel = postselect_orthogonal(
        &clean,
        &PostselectOptions {
            margin: opts.margin,
            window: opts.smoothing_window,
            ..Default::default()
        },
    )
    .map_err(|e| CliError::stage("postselect", e))?;
    log::info!(
        "postselection kept {} of {} records ({:.2}%)",
        sel.points.len(),
        clean.len(),
        100.0 * sel.retention
    );

    let mut labeled: Vec<(String, FitReport)> = Vec::new();
    if opts.bistable {
        let series = photon_stats_timeseries(&sel.points, opts.stats_window)
            .map_err(|e| CliError::stage("segment", e))?;
        let seg = segment_bistable(&series).map_err(|e| CliError::stage("segment", e))?;
        let seg_path = out.join("segments.csv");
        let mut w =
            BufWriter::new(File::create(&seg_path).map_err(|e| CliError::stage("output", e))?);
        writeln!(w, "window,t,mean_n,g2,label").map_err(|e| CliError::stage("output", e))?;
        for (i, (win, label)) in series.iter().zip(&seg.labels).enumerate() {
            writeln!(
                w,
                "{i},{},{},{},{}",
                win.t,
                win.mean_n,
                win.g2.map_or(String::from("nan"), |g| g.to_string()),
                if *label == Label::High { "high" } else { "low" },
            )
            .map_err(|e| CliError::stage("output", e))?;
        }
        println!("bistable threshold: {} photons, {} runs", seg.threshold_n, seg.runs.len());
        for target in [Label::High, Label::Low] {
            // run-boundary windows straddle a switching event; drop them
            let chunks: Vec<&[SelectedPoint]> =
                sel.points.chunks_exact(opts.stats_window).collect();
            let points: Vec<SelectedPoint> = seg
                .interior_windows(target)
                .into_iter()
                .flat_map(|i| chunks[i].iter().copied())
                .collect();
            let label = if target == Label::High { "high" } else { "low" };
            labeled.push((label.into(), fit_population(label, &points, out, opts)?));
        }
    } else {
        labeled.push(("all".into(), fit_population("all", &sel.points, out, opts)?));
    }

    let path = out.join("fit_report.csv");
    let mut w = BufWriter::new(File::create(&path).map_err(|e| CliError::stage("output", e))?);
    writeln!(w, "label,{}", fitting::FIT_REPORT_HEADER)
        .map_err(|e| CliError::stage("output", e))?;
    for (label, r) in &labeled {
        let mut row = Vec::new();
        fitting::write_fit_report_csv(&mut row, std::slice::from_ref(r))
            .map_err(|e| CliError::stage("output", e))?;
        let row = String::from_utf8(row).expect("csv is utf-8");
        let data = row.lines().nth(1).expect("one report row");
        writeln!(w, "{label},{data}").map_err(|e| CliError::stage("output", e))?;
    }
    for (label, _) in &labeled {
        write_plot_sidecar(
            &out.join(format!("histogram_{label}.plot.json")),
            &PlotDescription {
                title: format!("Phase-averaged Husimi function ({label})"),
                x_label: "q".into(),
                y_label: "p".into(),
                series: vec![PlotSeries {
                    label: "Q (heatmap)".into(),
                    file: format!("histogram_{label}.csv"),
                    x_column: "q".into(),
                    y_column: "p".into(),
                    y_error_column: None,
                    filter: Some("color=Q".into()),
                }],
            },
        )?;
    }
    Ok(())
}
