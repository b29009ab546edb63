//! Parameter-space exploration: sweeps over α (or ω₀c/a), ζ, and Λ, peak
//! finding on the oscillatory |δφ_B| landscape, truncation convergence
//! studies, and the minimum-acceleration feasibility search against a
//! detectability floor.
//!
//! δφ_B oscillates on the scale of the fast phase 2ζ (period π) under a
//! slow envelope, so peak finding refines the coarse grid with a dense
//! subsample of the bracketing cells before golden-section polishing.

use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::kernel::TruncationPolicy;
use crate::oracle::brute_force_phase;
use crate::phase::{phase_difference, PhaseResult};
use crate::units::ReducedSetup;

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Alpha,
    /// ω₀c/a = 1/α, the abscissa used for acceleration sweeps.
    InvAlpha,
    Zeta,
    Lam,
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepAxis::Alpha => write!(f, "alpha"),
            SweepAxis::InvAlpha => write!(f, "inv_alpha"),
            SweepAxis::Zeta => write!(f, "zeta"),
            SweepAxis::Lam => write!(f, "lam"),
        }
    }
}

/// A sweep: axis, grid, and the fixed remaining parameters.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub base: ReducedSetup,
    pub policy: TruncationPolicy,
}

impl SweepSpec {
    pub fn linear(
        axis: SweepAxis,
        from: f64,
        to: f64,
        points: usize,
        base: ReducedSetup,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        if points < 1 {
            return Err(Error::Domain("sweep needs at least one grid point".into()));
        }
        let grid = if points == 1 {
            vec![from]
        } else {
            (0..points)
                .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
                .collect()
        };
        let spec = SweepSpec { axis, grid, base, policy };
        spec.validate()?;
        Ok(spec)
    }

    pub fn logarithmic(
        axis: SweepAxis,
        from: f64,
        to: f64,
        points: usize,
        base: ReducedSetup,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        if !(from > 0.0 && to > 0.0) {
            return Err(Error::Domain("log grid endpoints must be positive".into()));
        }
        if points < 1 {
            return Err(Error::Domain("sweep needs at least one grid point".into()));
        }
        let (lf, lt) = (from.ln(), to.ln());
        let grid = if points == 1 {
            vec![from]
        } else {
            (0..points)
                .map(|i| (lf + (lt - lf) * i as f64 / (points - 1) as f64).exp())
                .collect()
        };
        let spec = SweepSpec { axis, grid, base, policy };
        spec.validate()?;
        Ok(spec)
    }

    /// Setup at one grid value of the axis.
    pub fn setup_at(&self, value: f64) -> Result<ReducedSetup> {
        let setup = match self.axis {
            SweepAxis::Alpha => self.base.with_alpha(value),
            SweepAxis::InvAlpha => {
                if !(value > 0.0) {
                    return Err(Error::Domain(format!("inv_alpha must be > 0, got {value}")));
                }
                self.base.with_alpha(1.0 / value)
            }
            SweepAxis::Zeta => self.base.with_zeta(value)?,
            SweepAxis::Lam => self.base.with_lam(value)?,
        };
        setup.validate()?;
        if !(setup.alpha > 0.0) {
            return Err(Error::Domain("sweep points need alpha > 0".into()));
        }
        Ok(setup)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::Domain("sweep grid is empty".into()));
        }
        let increasing = self.grid.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.grid.windows(2).all(|w| w[0] > w[1]);
        if self.grid.len() > 1 && !increasing && !decreasing {
            return Err(Error::Domain("sweep grid must be strictly monotone".into()));
        }
        self.policy.validate()?;
        for &v in &self.grid {
            self.setup_at(v)?;
        }
        Ok(())
    }
}

/// One evaluated grid point. A failed point keeps its slot with
/// `converged = false` and NaN values rather than aborting the sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub delta_phi: f64,
    pub delta_phi_abs: f64,
    pub a: f64,
    pub b: f64,
    pub a0: f64,
    pub b0: f64,
    pub n_used: u64,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SweepRow {
    fn from_result(axis_value: f64, r: &PhaseResult) -> Self {
        SweepRow {
            axis_value,
            delta_phi: r.delta_phi,
            delta_phi_abs: r.delta_phi.abs(),
            a: r.rates.a,
            b: r.rates.b,
            a0: r.rates.a0,
            b0: r.rates.b0,
            n_used: r.rates.diagnostics.n_used,
            tail_estimate: r.rates.diagnostics.tail_estimate,
            converged: r.rates.diagnostics.converged,
        }
    }

    fn failed(axis_value: f64, err: &Error) -> Self {
        let (n_used, tail_estimate) = match err {
            Error::Convergence { n_used, tail_estimate, .. } => (*n_used, *tail_estimate),
            _ => (0, f64::NAN),
        };
        SweepRow {
            axis_value,
            delta_phi: f64::NAN,
            delta_phi_abs: f64::NAN,
            a: f64::NAN,
            b: f64::NAN,
            a0: f64::NAN,
            b0: f64::NAN,
            n_used,
            tail_estimate,
            converged: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

/// Evaluate the sweep. Grid points run concurrently; rows come back in grid
/// order, and each point is summed sequentially, so the table is bitwise
/// reproducible regardless of the worker count.
pub fn sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let rows: Vec<SweepRow> = spec
        .grid
        .par_iter()
        .map(|&v| match spec.setup_at(v).and_then(|s| phase_difference(&s, &spec.policy)) {
            Ok(r) => SweepRow::from_result(v, &r),
            Err(e) => SweepRow::failed(v, &e),
        })
        .collect();
    Ok(SweepTable { axis: spec.axis, rows })
}

/// Refined peak of |δφ_B|.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Peak {
    pub axis_value: f64,
    pub delta_phi_abs: f64,
}

// Dense subsample count across the bracketing grid cells before the golden
// section; |delta phi| oscillates with period ~pi in zeta, far below any
// sensible coarse grid spacing.
const REFINE_SAMPLES: usize = 192;
const GOLDEN_ITERS: usize = 60;

fn golden_section_max(
    f: &(impl Fn(f64) -> Option<f64> + ?Sized),
    mut lo: f64,
    mut hi: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let eval = |x: f64| f(x).unwrap_or(f64::NEG_INFINITY);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..GOLDEN_ITERS {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = eval(d);
        }
        if (hi - lo).abs() <= f64::EPSILON * (hi.abs() + lo.abs()) {
            break;
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid argmax of |δφ_B| followed by local refinement inside the
/// bracketing cells: a dense subsample, then a golden section around the
/// best subsample. Never returns less than the coarse grid maximum and
/// never leaves the bracket.
pub fn find_peak(spec: &SweepSpec, table: &SweepTable) -> Result<Peak> {
    let mut best: Option<(usize, f64)> = None;
    for (i, row) in table.rows.iter().enumerate() {
        if row.converged
            && row.delta_phi_abs.is_finite()
            && best.is_none_or(|(_, v)| row.delta_phi_abs > v)
        {
            best = Some((i, row.delta_phi_abs));
        }
    }
    let (i, coarse) =
        best.ok_or_else(|| Error::Search("every sweep row failed; no peak to refine".into()))?;
    let lo = table.rows[i.saturating_sub(1)].axis_value;
    let hi = table.rows[(i + 1).min(table.rows.len() - 1)].axis_value;
    let mut peak = Peak { axis_value: table.rows[i].axis_value, delta_phi_abs: coarse };
    if lo == hi {
        return Ok(peak);
    }
    let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };

    let f = |x: f64| -> Option<f64> {
        spec.setup_at(x)
            .and_then(|s| phase_difference(&s, &spec.policy))
            .ok()
            .map(|r| r.delta_phi.abs())
    };
    let mut sub_best = (peak.axis_value, peak.delta_phi_abs);
    let step = (hi - lo) / (REFINE_SAMPLES - 1) as f64;
    for k in 0..REFINE_SAMPLES {
        let x = lo + step * k as f64;
        if let Some(v) = f(x) {
            if v > sub_best.1 {
                sub_best = (x, v);
            }
        }
    }
    let (gx, gv) =
        golden_section_max(&f, (sub_best.0 - step).max(lo), (sub_best.0 + step).min(hi));
    if gv > sub_best.1 {
        sub_best = (gx, gv);
    }
    if sub_best.1 > peak.delta_phi_abs {
        peak = Peak { axis_value: sub_best.0, delta_phi_abs: sub_best.1 };
    }
    Ok(peak)
}

/// Bounds for the feasibility search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBounds {
    /// α bracket (low, high).
    pub alpha: (f64, f64),
    /// ζ range for the inner maximization.
    pub zeta: (f64, f64),
    /// Optional Λ range; when absent the base setup's Λ stays fixed.
    pub lam: Option<(f64, f64)>,
}

/// Outcome of [`min_acceleration_search`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchResult {
    pub feasible: bool,
    /// Smallest α proven feasible, within 0.1 decades.
    pub alpha_star: Option<f64>,
    pub best_zeta: Option<f64>,
    pub best_lam: Option<f64>,
    /// |δφ_B| attained at the reported point (at the α bracket top when
    /// infeasible, for diagnostics).
    pub achieved: f64,
    pub evaluations: u64,
}

const INNER_GRID: usize = 64;
const LAM_GRID: usize = 8;

fn inner_max(
    base: &ReducedSetup,
    alpha: f64,
    bounds: &SearchBounds,
    policy: &TruncationPolicy,
    evals: &AtomicU64,
) -> Result<(f64, f64, Option<f64>)> {
    let lam_candidates: Vec<Option<f64>> = match bounds.lam {
        None => vec![base.lam()],
        Some((lo, hi)) => {
            let (llo, lhi) = (lo.ln(), hi.ln());
            (0..LAM_GRID)
                .map(|i| Some((llo + (lhi - llo) * i as f64 / (LAM_GRID - 1) as f64).exp()))
                .collect()
        }
    };
    let mut best: Option<(f64, f64, Option<f64>)> = None;
    for lam in lam_candidates {
        let mut setup = base.with_alpha(alpha);
        if let Some(l) = lam {
            setup = setup.with_lam(l)?;
        }
        // keep zeta strictly inside the gap for double mirrors
        let (zlo, mut zhi) = bounds.zeta;
        if let Some(l) = setup.lam() {
            zhi = zhi.min(l * (1.0 - 1e-9));
        }
        if !(zlo > 0.0 && zlo < zhi) {
            return Err(Error::Search(format!("bad zeta bounds ({zlo}, {zhi})")));
        }
        let spec = SweepSpec::logarithmic(
            SweepAxis::Zeta,
            zlo,
            zhi,
            INNER_GRID,
            setup.with_zeta(0.5 * (zlo + zhi))?,
            *policy,
        )?;
        let table = sweep(&spec)?;
        evals.fetch_add(spec.grid.len() as u64, Ordering::Relaxed);
        let peak = find_peak(&spec, &table)?;
        evals.fetch_add((REFINE_SAMPLES + 2 * GOLDEN_ITERS) as u64, Ordering::Relaxed);
        if best.is_none_or(|(v, _, _)| peak.delta_phi_abs > v) {
            best = Some((peak.delta_phi_abs, peak.axis_value, setup.lam()));
        }
    }
    best.ok_or_else(|| Error::Search("inner maximization produced no value".into()))
}

/// Bisection on log α for the smallest acceleration whose best geometry
/// still reaches `floor`: at each candidate α the inner loop maximizes
/// |δφ_B| over ζ (and optionally Λ) with a coarse log grid plus refinement;
/// the bracket shrinks to 0.1 decades.
pub fn min_acceleration_search(
    base: &ReducedSetup,
    bounds: &SearchBounds,
    floor: f64,
    policy: &TruncationPolicy,
) -> Result<SearchResult> {
    if !(floor > 0.0) {
        return Err(Error::Domain(format!("floor must be > 0, got {floor}")));
    }
    let (alo, ahi) = bounds.alpha;
    if !(alo > 0.0 && alo <= ahi) {
        return Err(Error::Domain(format!("bad alpha bracket ({alo}, {ahi})")));
    }
    let evals = AtomicU64::new(0);

    let (top_val, top_zeta, top_lam) = inner_max(base, ahi, bounds, policy, &evals)?;
    if !(top_val >= floor) {
        return Ok(SearchResult {
            feasible: false,
            alpha_star: None,
            best_zeta: Some(top_zeta),
            best_lam: top_lam,
            achieved: top_val,
            evaluations: evals.load(Ordering::Relaxed),
        });
    }
    let mut feas = (ahi, top_val, top_zeta, top_lam);
    if alo < ahi {
        let (lo_val, lo_zeta, lo_lam) = inner_max(base, alo, bounds, policy, &evals)?;
        if lo_val >= floor {
            feas = (alo, lo_val, lo_zeta, lo_lam);
        } else {
            let mut llo = alo.log10();
            let mut lhi = ahi.log10();
            while lhi - llo > 0.1 {
                let mid = 10f64.powf(0.5 * (llo + lhi));
                let (v, z, l) = inner_max(base, mid, bounds, policy, &evals)?;
                if v >= floor {
                    lhi = mid.log10();
                    feas = (mid, v, z, l);
                } else {
                    llo = mid.log10();
                }
            }
        }
    }
    Ok(SearchResult {
        feasible: true,
        alpha_star: Some(feas.0),
        best_zeta: Some(feas.2),
        best_lam: feas.3,
        achieved: feas.1,
        evaluations: evals.load(Ordering::Relaxed),
    })
}

/// δφ_B versus the truncation window, and the detected plateau.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    /// (max|n|, δφ_B) in grid order.
    pub rows: Vec<(u64, f64)>,
    /// Smallest grid max|n| after which the sequence is settled: every
    /// relative change between later grid points stays below `plateau_tol`.
    /// None if the tail never settles (or the grid is too short to tell).
    pub plateau_n: Option<u64>,
    pub plateau_tol: f64,
}

/// Evaluate δφ_B with brute-force fixed-window truncation at each grid
/// point (both the accelerated and the inertial image sums truncated at the
/// same max|n|, as in a plain numerical scan).
pub fn convergence_study(
    setup: &ReducedSetup,
    max_n_grid: &[u64],
    plateau_tol: f64,
) -> Result<ConvergenceReport> {
    if max_n_grid.is_empty() {
        return Err(Error::Domain("convergence grid is empty".into()));
    }
    if !max_n_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain("convergence grid must be strictly increasing".into()));
    }
    if !(plateau_tol > 0.0) {
        return Err(Error::Domain(format!("plateau_tol must be > 0, got {plateau_tol}")));
    }
    let values: Vec<(u64, f64)> = max_n_grid
        .par_iter()
        .map(|&n| brute_force_phase(setup, n).map(|r| (n, r.delta_phi)))
        .collect::<Result<_>>()?;

    // settled at i: every change between grid points beyond i stays small
    let settled = |i: usize| {
        (i + 1..values.len() - 1).all(|j| {
            let (_, a) = values[j];
            let (_, b) = values[j + 1];
            (b - a).abs() < plateau_tol * b.abs()
        })
    };
    let plateau_n = if values.len() < 3 {
        None
    } else {
        (0..=values.len() - 3).find(|&i| settled(i)).map(|i| values[i].0)
    };
    Ok(ConvergenceReport { rows: values, plateau_n, plateau_tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TruncationPolicy;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn single_base(alpha: f64) -> ReducedSetup {
        ReducedSetup::single_mirror(alpha, 1.0, 1.0, PI / 4.0)
    }

    #[test]
    fn single_point_grid_equals_direct_evaluation() {
        let base = single_base(1e-3);
        let spec = SweepSpec {
            axis: SweepAxis::Zeta,
            grid: vec![123.0],
            base,
            policy: TruncationPolicy::default(),
        };
        let table = sweep(&spec).unwrap();
        assert_eq!(table.rows.len(), 1);
        let direct =
            phase_difference(&base.with_zeta(123.0).unwrap(), &TruncationPolicy::default())
                .unwrap();
        assert_eq!(table.rows[0].delta_phi, direct.delta_phi);
        assert_eq!(table.rows[0].a, direct.rates.a);
    }

    #[test]
    fn empty_grid_is_a_domain_error() {
        let spec = SweepSpec {
            axis: SweepAxis::Zeta,
            grid: vec![],
            base: single_base(1e-3),
            policy: TruncationPolicy::default(),
        };
        assert!(matches!(sweep(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn non_monotone_grid_rejected() {
        let spec = SweepSpec {
            axis: SweepAxis::Zeta,
            grid: vec![1.0, 3.0, 2.0],
            base: single_base(1e-3),
            policy: TruncationPolicy::default(),
        };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn sweeps_are_bitwise_deterministic() {
        let base = ReducedSetup::double_mirror(1e-4, 1.5, 10.0, 1.0, PI / 4.0);
        let spec = SweepSpec::logarithmic(
            SweepAxis::Zeta,
            0.2,
            9.8,
            24,
            base,
            TruncationPolicy::fixed(20_000),
        )
        .unwrap();
        let t1 = sweep(&spec).unwrap();
        let t2 = sweep(&spec).unwrap();
        for (a, b) in t1.rows.iter().zip(&t2.rows) {
            assert_eq!(a.delta_phi.to_bits(), b.delta_phi.to_bits());
            assert_eq!(a.a.to_bits(), b.a.to_bits());
        }
    }

    #[test]
    fn peak_of_supplemental_table_row_alpha_1e3() {
        // single mirror, alpha = 1e-3: peak near zeta = 200 with |dphi| = 5.0e-3
        let base = single_base(1e-3);
        let spec = SweepSpec::linear(
            SweepAxis::Zeta,
            50.0,
            400.0,
            1024,
            base,
            TruncationPolicy::default(),
        )
        .unwrap();
        let table = sweep(&spec).unwrap();
        let peak = find_peak(&spec, &table).unwrap();
        assert_relative_eq!(peak.axis_value, 200.0, max_relative = 0.1);
        assert_relative_eq!(peak.delta_phi_abs, 5.0e-3, max_relative = 0.1);
    }

    #[test]
    fn refined_peak_never_below_coarse_maximum() {
        let base = single_base(1e-5);
        let spec = SweepSpec::linear(
            SweepAxis::Zeta,
            1000.0,
            12_000.0,
            64,
            base,
            TruncationPolicy::default(),
        )
        .unwrap();
        let table = sweep(&spec).unwrap();
        let coarse = table
            .rows
            .iter()
            .map(|r| r.delta_phi_abs)
            .fold(f64::NEG_INFINITY, f64::max);
        let peak = find_peak(&spec, &table).unwrap();
        assert!(peak.delta_phi_abs >= coarse);
        assert!(peak.axis_value >= 1000.0 && peak.axis_value <= 12_000.0);
    }

    #[test]
    fn monotone_table_returns_clamped_endpoint() {
        // a strictly rising landscape: argmax is the last grid point and the
        // refinement stays inside the final cell
        let base = single_base(1e-2);
        let spec = SweepSpec::linear(
            SweepAxis::Zeta,
            1.0,
            20.0,
            8,
            base,
            TruncationPolicy::default(),
        )
        .unwrap();
        let table = sweep(&spec).unwrap();
        let idx = table
            .rows
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.delta_phi_abs.total_cmp(&b.1.delta_phi_abs))
            .unwrap()
            .0;
        let peak = find_peak(&spec, &table).unwrap();
        let lo = table.rows[idx.saturating_sub(1)].axis_value;
        let hi = table.rows[(idx + 1).min(table.rows.len() - 1)].axis_value;
        assert!(peak.axis_value >= lo && peak.axis_value <= hi);
    }

    #[test]
    fn peaks_move_out_as_acceleration_drops() {
        // soft regression: single-mirror argmax grows as alpha falls
        let mut last = 0.0;
        for (alpha, lo, hi) in [(1e-3, 50.0, 400.0), (1e-5, 1000.0, 12_000.0), (1e-7, 2e4, 2.5e5)]
        {
            let base = single_base(alpha);
            let points = ((hi - lo) / 0.45) as usize;
            let spec =
                SweepSpec::linear(SweepAxis::Zeta, lo, hi, points, base, TruncationPolicy::default())
                    .unwrap();
            let table = sweep(&spec).unwrap();
            let peak = find_peak(&spec, &table).unwrap();
            assert!(peak.axis_value > last, "argmax should increase, got {}", peak.axis_value);
            last = peak.axis_value;
        }
    }

    #[test]
    fn acceleration_scan_shows_mirror_enhancement() {
        // inv-alpha axis, the three scenarios at lam = 10, zeta = 1.5: free
        // space collapses past omega0 c/a = 1 while the mirrored setups
        // keep a detectable phase difference
        let policy = TruncationPolicy::fixed(50_000);
        let grid = vec![0.5, 2.0, 10.0];
        let free = sweep(&SweepSpec {
            axis: SweepAxis::InvAlpha,
            grid: grid.clone(),
            base: ReducedSetup::free_space(1.0, 1.0, PI / 4.0),
            policy,
        })
        .unwrap();
        let single = sweep(&SweepSpec {
            axis: SweepAxis::InvAlpha,
            grid: grid.clone(),
            base: ReducedSetup::single_mirror(1.0, 1.5, 1.0, PI / 4.0),
            policy,
        })
        .unwrap();
        let double = sweep(&SweepSpec {
            axis: SweepAxis::InvAlpha,
            grid,
            base: ReducedSetup::double_mirror(1.0, 1.5, 10.0, 1.0, PI / 4.0),
            policy,
        })
        .unwrap();
        assert!(free.rows[1].delta_phi_abs / free.rows[0].delta_phi_abs < 1e-3);
        assert!(free.rows[2].delta_phi_abs < 1e-15);
        assert!(single.rows[2].delta_phi_abs > 1e-4);
        assert!(double.rows[2].delta_phi_abs > 1e-4);
        for t in [&single, &double] {
            assert!(t.rows.iter().all(|r| r.converged && r.delta_phi.is_finite()));
        }
    }

    #[test]
    fn infinite_floor_is_infeasible() {
        let base = single_base(1e-3);
        let bounds = SearchBounds { alpha: (1e-4, 1e-2), zeta: (1.0, 500.0), lam: None };
        let r =
            min_acceleration_search(&base, &bounds, f64::INFINITY, &TruncationPolicy::default())
                .unwrap();
        assert!(!r.feasible);
        assert!(r.alpha_star.is_none());
        assert!(r.achieved.is_finite());
    }

    #[test]
    fn single_mirror_feasible_down_to_1e7() {
        let base = single_base(1e-5);
        let bounds = SearchBounds { alpha: (1e-8, 1e-6), zeta: (1.0, 1.5e5), lam: None };
        let r = min_acceleration_search(&base, &bounds, 5.27e-6, &TruncationPolicy::default())
            .unwrap();
        assert!(r.feasible);
        let star = r.alpha_star.unwrap();
        assert!(star <= 1e-7, "alpha_star = {star:.3e} should be <= 1e-7");
        assert!(r.achieved >= 5.27e-6);
    }

    #[test]
    fn search_result_monotone_in_bracket() {
        // both 3e-4 and 1e-3 are feasible for this floor, so the reported
        // alpha_star cannot exceed the smaller proven-feasible value
        let base = single_base(1e-3);
        let bounds = SearchBounds { alpha: (3e-4, 1e-3), zeta: (10.0, 2000.0), lam: None };
        let r = min_acceleration_search(&base, &bounds, 1e-4, &TruncationPolicy::default())
            .unwrap();
        assert!(r.feasible);
        assert!(r.alpha_star.unwrap() <= 3e-4 * 1.0000001);
    }

    #[test]
    fn convergence_study_free_space_is_flat() {
        let setup = ReducedSetup::free_space(0.5, 1.0, PI / 4.0);
        let report = convergence_study(&setup, &[1000, 2000, 3000], 1e-3).unwrap();
        assert_eq!(report.plateau_n, Some(1000));
        let v0 = report.rows[0].1;
        for &(_, v) in &report.rows {
            assert_eq!(v, v0);
        }
    }

    #[test]
    fn convergence_study_validates_grid() {
        let setup = ReducedSetup::free_space(0.5, 1.0, PI / 4.0);
        assert!(convergence_study(&setup, &[], 1e-3).is_err());
        assert!(convergence_study(&setup, &[5, 5], 1e-3).is_err());
        assert!(convergence_study(&setup, &[5, 10], 0.0).is_err());
    }
}
