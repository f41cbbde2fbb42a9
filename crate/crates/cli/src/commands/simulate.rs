//! `simulate` and `sweep`: ensemble runs per pump power with condensate
//! statistics, coherence reports, and (for sweep) spatial g1 curves.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use observables::{
    coherence_report, g1_spatial, write_g1_csv, write_report_csv, CoherenceReport, G1Point,
    KSpaceWindow,
};
use twa_engine::{run_ensemble, write_ensemble, TrajectoryEnsemble};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::plot::{write_plot_sidecar, PlotDescription, PlotSeries};

pub struct SimulateOptions {
    /// Pump ratios overriding the config list when nonempty.
    pub pumps: Vec<f64>,
    pub seed: Option<u64>,
    /// Keep the raw ensemble archives next to the reports.
    pub archives: bool,
    /// Also compute g1(distance) per pump.
    pub g1: bool,
}

fn ratio_tag(r: f64) -> String {
    format!("{r}").replace('.', "_")
}

fn run_pump(config: &RunConfig, ratio: f64, seed: Option<u64>) -> Result<TrajectoryEnsemble> {
    let grid = config.build_grid()?;
    let params = config.build_params()?;
    let pump = config.build_pump(ratio)?;
    let traj = config.build_trajectory(seed)?;
    run_ensemble(&traj, &params, &pump, &grid).map_err(|e| CliError::stage("engine", e))
}

fn summarize(r: &CoherenceReport) {
    println!(
        "pump {:.2} P_thr: <N> = {:.4} +- {:.4}, g2 = {:.4} +- {:.4}, C = {:.4} +- {:.4}{}",
        r.pump_ratio,
        r.mean_n_c,
        r.err_mean_n_c,
        r.g2,
        r.err_g2,
        r.coherence,
        r.err_coherence,
        if r.clamped { " (clamped)" } else { "" },
    );
}

/// Distances for the g1 curve: every other grid step out to a quarter box.
fn g1_distances(config: &RunConfig) -> Result<Vec<f64>> {
    let grid = config.build_grid()?;
    let dx = grid.dx();
    let n = (grid.length / 4.0 / dx) as usize;
    Ok((0..=n).map(|i| i as f64 * dx).collect())
}

pub fn cmd_simulate(config: &RunConfig, out: &Path, opts: &SimulateOptions) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| CliError::stage("output", e))?;
    let window = KSpaceWindow::new(config.window.side)
        .map_err(|e| CliError::stage("analysis", e))?;
    let ratios = if opts.pumps.is_empty() { config.pump.ratios.clone() } else { opts.pumps.clone() };
    let mut reports = Vec::new();
    let mut g1_curves: Vec<(f64, Vec<G1Point>)> = Vec::new();
    for &ratio in &ratios {
        let ens = run_pump(config, ratio, opts.seed)?;
        if !ens.failed.is_empty() {
            log::warn!("pump {ratio}: {} trajectories diverged", ens.failed.len());
        }
        if opts.archives {
            let path = out.join(format!("ensemble_p{}.twa", ratio_tag(ratio)));
            write_ensemble(&path, &ens).map_err(|e| CliError::stage("archive", e))?;
        }
        let report = coherence_report(&ens, &window, ratio)
            .map_err(|e| CliError::stage("analysis", e))?;
        summarize(&report);
        reports.push(report);
        if opts.g1 {
            let grid = &ens.grid;
            let center = (grid.n_side / 2, grid.n_side / 2);
            let curve = g1_spatial(&ens, center, &g1_distances(config)?)
                .map_err(|e| CliError::stage("analysis", e))?;
            g1_curves.push((ratio, curve));
        }
    }

    let report_path = out.join("report.csv");
    let mut w = BufWriter::new(File::create(&report_path).map_err(|e| CliError::stage("output", e))?);
    write_report_csv(&mut w, &reports).map_err(|e| CliError::stage("output", e))?;
    write_plot_sidecar(
        &out.join("report.plot.json"),
        &PlotDescription {
            title: "Condensate statistics vs pump power".into(),
            x_label: "pump power (P / P_thr)".into(),
            y_label: "g2(0); coherence C".into(),
            series: vec![
                PlotSeries {
                    label: "g2(0)".into(),
                    file: "report.csv".into(),
                    x_column: "pump_ratio".into(),
                    y_column: "g2".into(),
                    y_error_column: Some("err_g2".into()),
                    filter: None,
                },
                PlotSeries {
                    label: "C".into(),
                    file: "report.csv".into(),
                    x_column: "pump_ratio".into(),
                    y_column: "C".into(),
                    y_error_column: Some("err_C".into()),
                    filter: None,
                },
            ],
        },
    )?;

    if opts.g1 {
        let g1_path = out.join("g1.csv");
        let mut w = BufWriter::new(File::create(&g1_path).map_err(|e| CliError::stage("output", e))?);
        write_g1_csv(&mut w, &g1_curves).map_err(|e| CliError::stage("output", e))?;
        write_plot_sidecar(
            &out.join("g1.plot.json"),
            &PlotDescription {
                title: "Spatial first-order coherence".into(),
                x_label: "distance (um)".into(),
                y_label: "|g1|".into(),
                series: g1_curves
                    .iter()
                    .map(|(ratio, _)| PlotSeries {
                        label: format!("{ratio} P_thr"),
                        file: "g1.csv".into(),
                        x_column: "distance".into(),
                        y_column: "g1".into(),
                        y_error_column: Some("err".into()),
                        filter: Some(format!("pump_ratio={ratio}")),
                    })
                    .collect(),
            },
        )?;
    }
    Ok(())
}
