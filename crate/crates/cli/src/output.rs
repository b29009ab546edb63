//! Table writers. Floats go through `{}` (shortest round-trip rendering),
//! so every emitted CSV re-parses to bit-identical values.

use std::io::Write;

use berryphase::explore::{ConvergenceReport, SweepTable};
use berryphase::phase::DensityMatrixSnapshot;

pub const SWEEP_HEADER: &str =
    "axis,axis_value,delta_phi,delta_phi_abs,A,B,A0,B0,n_used,tail_est,converged";

pub fn write_sweep_csv(w: &mut impl Write, table: &SweepTable) -> std::io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in &table.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            table.axis,
            r.axis_value,
            r.delta_phi,
            r.delta_phi_abs,
            r.a,
            r.b,
            r.a0,
            r.b0,
            r.n_used,
            r.tail_estimate,
            r.converged
        )?;
    }
    Ok(())
}

pub fn write_convergence_csv(w: &mut impl Write, report: &ConvergenceReport) -> std::io::Result<()> {
    writeln!(w, "max_n,delta_phi")?;
    for (n, v) in &report.rows {
        writeln!(w, "{n},{v}")?;
    }
    Ok(())
}

pub fn write_evolve_csv(
    w: &mut impl Write,
    rows: &[(DensityMatrixSnapshot, f64)],
) -> std::io::Result<()> {
    writeln!(w, "tau,rho11,re_rho12,im_rho12,coherence")?;
    for (snap, coherence) in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            snap.tau,
            snap.rho[0][0].re,
            snap.rho[0][1].re,
            snap.rho[0][1].im,
            coherence
        )?;
    }
    Ok(())
}
