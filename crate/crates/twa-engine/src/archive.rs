//! Little-endian binary snapshot archive and CSV snapshot export.
//!
//! Layout: magic `TWAE`, format version (u32), grid (n_side u32, length f64),
//! params (8 f64), pump (2 f64), config (dt, total_time, burn_in f64;
//! stride, seed, realizations u64), failed-trajectory index list, then for
//! each stored trajectory each snapshot as: time f64, clipped u64,
//! interleaved (re, im) f64 pairs for psi, then n_res f64 per cell.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex;

use crate::ensemble::{TrajectoryConfig, TrajectoryEnsemble};
use crate::error::{EngineError, Result};
use crate::grid::SimulationGrid;
use crate::params::ModelParams;
use crate::pump::PumpProfile;
use crate::state::FieldState;

const MAGIC: &[u8; 4] = b"TWAE";
const VERSION: u32 = 1;

fn w_u32(w: &mut impl Write, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}
fn w_u64(w: &mut impl Write, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}
fn w_f64(w: &mut impl Write, v: f64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}
fn r_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}
fn r_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
fn r_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn write_ensemble(path: &Path, ens: &TrajectoryEnsemble) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w_u32(&mut w, VERSION)?;
    w_u32(&mut w, ens.grid.n_side as u32)?;
    w_f64(&mut w, ens.grid.length)?;
    let p = &ens.params;
    for v in [
        p.kinetic_coeff,
        p.gamma_c,
        p.gamma_r,
        p.condensation_rate,
        p.g_c,
        p.g_r,
        p.hbar,
        p.renorm_factor,
    ] {
        w_f64(&mut w, v)?;
    }
    w_f64(&mut w, ens.pump.p0)?;
    w_f64(&mut w, ens.pump.width)?;
    let c = &ens.config;
    w_f64(&mut w, c.dt)?;
    w_f64(&mut w, c.total_time)?;
    w_f64(&mut w, c.burn_in_fraction)?;
    w_u64(&mut w, c.snapshot_stride as u64)?;
    w_u64(&mut w, c.seed)?;
    w_u64(&mut w, c.realizations as u64)?;
    w_u64(&mut w, ens.failed.len() as u64)?;
    for &i in &ens.failed {
        w_u64(&mut w, i as u64)?;
    }
    w_u64(&mut w, ens.trajectories.len() as u64)?;
    let n_snaps = ens.trajectories.first().map_or(0, |t| t.len());
    w_u64(&mut w, n_snaps as u64)?;
    for traj in &ens.trajectories {
        if traj.len() != n_snaps {
            return Err(EngineError::Archive("ragged trajectory snapshot counts".into()));
        }
        for snap in traj {
            w_f64(&mut w, snap.time)?;
            w_u64(&mut w, snap.clipped)?;
            for z in &snap.psi {
                w_f64(&mut w, z.re)?;
                w_f64(&mut w, z.im)?;
            }
            for &n in &snap.n_res {
                w_f64(&mut w, n)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_ensemble(path: &Path) -> Result<TrajectoryEnsemble> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(EngineError::Archive("bad magic".into()));
    }
    let version = r_u32(&mut r)?;
    if version != VERSION {
        return Err(EngineError::Archive(format!("unsupported version {version}")));
    }
    let n_side = r_u32(&mut r)? as usize;
    let length = r_f64(&mut r)?;
    let grid = SimulationGrid::new(n_side, length)?;
    let params = ModelParams {
        kinetic_coeff: r_f64(&mut r)?,
        gamma_c: r_f64(&mut r)?,
        gamma_r: r_f64(&mut r)?,
        condensation_rate: r_f64(&mut r)?,
        g_c: r_f64(&mut r)?,
        g_r: r_f64(&mut r)?,
        hbar: r_f64(&mut r)?,
        renorm_factor: r_f64(&mut r)?,
    };
    let pump = PumpProfile::new(r_f64(&mut r)?, r_f64(&mut r)?)?;
    let config = TrajectoryConfig {
        dt: r_f64(&mut r)?,
        total_time: r_f64(&mut r)?,
        burn_in_fraction: r_f64(&mut r)?,
        snapshot_stride: r_u64(&mut r)? as usize,
        seed: r_u64(&mut r)?,
        realizations: r_u64(&mut r)? as usize,
    };
    let n_failed = r_u64(&mut r)? as usize;
    let mut failed = Vec::with_capacity(n_failed);
    for _ in 0..n_failed {
        failed.push(r_u64(&mut r)? as usize);
    }
    let n_traj = r_u64(&mut r)? as usize;
    let n_snaps = r_u64(&mut r)? as usize;
    let n_cells = grid.n_cells();
    let mut trajectories = Vec::with_capacity(n_traj);
    for _ in 0..n_traj {
        let mut traj = Vec::with_capacity(n_snaps);
        for _ in 0..n_snaps {
            let time = r_f64(&mut r)?;
            let clipped = r_u64(&mut r)?;
            let mut psi = Vec::with_capacity(n_cells);
            for _ in 0..n_cells {
                let re = r_f64(&mut r)?;
                let im = r_f64(&mut r)?;
                psi.push(Complex::new(re, im));
            }
            let mut n_res = Vec::with_capacity(n_cells);
            for _ in 0..n_cells {
                n_res.push(r_f64(&mut r)?);
            }
            traj.push(FieldState { psi, n_res, time, clipped });
        }
        trajectories.push(traj);
    }
    Ok(TrajectoryEnsemble { grid, params, pump, config, trajectories, failed })
}

/// Debug CSV for one snapshot: `x,y,re_psi,im_psi,n_res`.
pub fn export_snapshot_csv(w: &mut impl Write, snap: &FieldState, grid: &SimulationGrid) -> Result<()> {
    writeln!(w, "x,y,re_psi,im_psi,n_res")?;
    for i in 0..grid.n_cells() {
        let (x, y) = grid.coordinates(i);
        let z = snap.psi[i];
        writeln!(w, "{x},{y},{},{},{}", z.re, z.im, snap.n_res[i])?;
    }
    Ok(())
}
