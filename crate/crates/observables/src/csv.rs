use std::io::Write;

use crate::error::Result;
use crate::g1::G1Point;
use crate::report::CoherenceReport;

pub const REPORT_HEADER: &str = "pump_ratio,mean_n_c,err_mean_n_c,var_n_c,err_var_n_c,nbar,err_nbar,alpha0_sq,err_alpha0_sq,g2,err_g2,C,err_C,clamped";

pub fn write_report_csv(w: &mut impl Write, reports: &[CoherenceReport]) -> Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.pump_ratio,
            r.mean_n_c,
            r.err_mean_n_c,
            r.var_n_c,
            r.err_var_n_c,
            r.nbar,
            r.err_nbar,
            r.alpha0_sq,
            r.err_alpha0_sq,
            r.g2,
            r.err_g2,
            r.coherence,
            r.err_coherence,
            r.clamped
        )?;
    }
    Ok(())
}

pub const G1_HEADER: &str = "pump_ratio,distance,g1,err,n_pairs";

pub fn write_g1_csv(w: &mut impl Write, per_pump: &[(f64, Vec<G1Point>)]) -> Result<()> {
    writeln!(w, "{G1_HEADER}")?;
    for (pump_ratio, points) in per_pump {
        for p in points {
            writeln!(w, "{pump_ratio},{},{},{},{}", p.distance, p.g1, p.err, p.n_pairs)?;
        }
    }
    Ok(())
}
