//! Probability sweeps over a lattice and the percolation threshold estimate,
//! taken at the steepest forward rise of the second moment.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{CarpetSpec, Family, SiteLattice};
use crate::percolation::{label_clusters_scan, occupy, second_moment, Connectivity};

/// Evenly spaced occupation probabilities plus run count and master seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepGrid {
    pub p_min: f64,
    pub p_max: f64,
    pub dp: f64,
    pub runs: u32,
    pub master_seed: u64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            p_min: 0.30,
            p_max: 0.95,
            dp: 0.01,
            runs: 10,
            master_seed: 1,
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if !self.p_min.is_finite() || !self.p_max.is_finite() || !self.dp.is_finite() {
            return Err(Error::invalid("sweep grid bounds must be finite"));
        }
        if !(0.0..=1.0).contains(&self.p_min) || !(0.0..=1.0).contains(&self.p_max) {
            return Err(Error::invalid(format!(
                "sweep grid [{}, {}] must lie within [0, 1]",
                self.p_min, self.p_max
            )));
        }
        if self.p_min > self.p_max {
            return Err(Error::invalid(format!(
                "p_min = {} exceeds p_max = {}",
                self.p_min, self.p_max
            )));
        }
        if self.dp <= 0.0 {
            return Err(Error::invalid(format!("dp = {} must be positive", self.dp)));
        }
        if self.runs == 0 {
            return Err(Error::invalid("runs must be at least 1"));
        }
        Ok(())
    }

    /// The grid points `p_min + i * dp`, capped at 1.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.p_max - self.p_min) / self.dp + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| (self.p_min + i as f64 * self.dp).min(1.0))
            .collect()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-configuration seed: a position-dependent mix of the master seed, the
/// lattice parameters, the run index and the grid index. Fixed algorithm so
/// results reproduce across platforms and thread counts.
pub fn child_seed(master_seed: u64, spec: &CarpetSpec, run: u32, point: u32) -> u64 {
    let family_code = match spec.family {
        Family::Central => 0u64,
        Family::Scattered => 1u64,
    };
    let mut h = splitmix64(master_seed);
    for v in [
        spec.b as u64,
        spec.l as u64,
        family_code,
        spec.stages as u64,
        run as u64,
        point as u64,
    ] {
        h = splitmix64(h ^ v);
    }
    h
}

/// Second moments across a sweep. `None` marks grid points whose
/// configuration had no occupied site.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub spec: CarpetSpec,
    pub conn: Connectivity,
    pub grid: SweepGrid,
    pub p_grid: Vec<f64>,
    /// Indexed `[run][grid point]`.
    pub m_per_run: Vec<Vec<Option<f64>>>,
    pub m_mean: Vec<Option<f64>>,
    pub m_stderr: Vec<Option<f64>>,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Sweep the grid: one independent configuration per (run, grid point),
/// labeled under `conn`, its second moment recorded. Tasks run in parallel
/// into preassigned slots, so the result does not depend on thread count.
pub fn run_sweep(
    lattice: &SiteLattice,
    conn: Connectivity,
    grid: &SweepGrid,
) -> Result<SweepResult> {
    grid.validate()?;
    let p_grid = grid.points();
    let np = p_grid.len();
    let runs = grid.runs as usize;

    let mut flat: Vec<Option<f64>> = vec![None; runs * np];
    flat.par_iter_mut()
        .enumerate()
        .try_for_each(|(k, slot)| -> Result<()> {
            let (run, point) = (k / np, k % np);
            let seed = child_seed(grid.master_seed, lattice.spec(), run as u32, point as u32);
            let config = occupy(lattice, p_grid[point], seed)?;
            let labels = label_clusters_scan(&config, conn);
            if labels.cluster_count() > 0 {
                *slot = Some(second_moment(labels.sizes())?);
            }
            Ok(())
        })?;

    let m_per_run: Vec<Vec<Option<f64>>> = flat.chunks(np).map(|c| c.to_vec()).collect();
    let mut m_mean = vec![None; np];
    let mut m_stderr = vec![None; np];
    for i in 0..np {
        let vals: Vec<f64> = m_per_run.iter().filter_map(|run| run[i]).collect();
        if !vals.is_empty() {
            let (mean, stderr) = mean_and_stderr(&vals);
            m_mean[i] = Some(mean);
            m_stderr[i] = Some(stderr);
        }
    }

    Ok(SweepResult {
        spec: *lattice.spec(),
        conn,
        grid: *grid,
        p_grid,
        m_per_run,
        m_mean,
        m_stderr,
    })
}

/// Threshold from one sweep curve: the midpoint of the grid interval where
/// the forward difference of M is largest, earlier intervals winning ties.
/// Grid points without a value are skipped.
pub fn estimate_pc_single(p_grid: &[f64], m_values: &[Option<f64>]) -> Result<f64> {
    if p_grid.len() != m_values.len() {
        return Err(Error::invalid(format!(
            "grid has {} points but {} M values were given",
            p_grid.len(),
            m_values.len()
        )));
    }
    let mut best: Option<(f64, f64)> = None; // (slope, midpoint)
    for i in 0..p_grid.len().saturating_sub(1) {
        let (Some(a), Some(b)) = (m_values[i], m_values[i + 1]) else {
            continue;
        };
        let slope = (b - a) / (p_grid[i + 1] - p_grid[i]);
        if best.is_none_or(|(s, _)| slope > s) {
            best = Some((slope, (p_grid[i] + p_grid[i + 1]) / 2.0));
        }
    }
    best.map(|(_, mid)| mid).ok_or_else(|| {
        Error::InsufficientData("need at least two adjacent grid points with M values".into())
    })
}

/// Threshold estimate over all runs of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct PcEstimate {
    pub spec: CarpetSpec,
    pub conn: Connectivity,
    /// Mean of the per-run thresholds.
    pub pc_mean: f64,
    /// Standard error of that mean.
    pub pc_stderr: f64,
    pub per_run_pc: Vec<f64>,
    /// Variant extracted from the run-averaged M curve, kept for comparison.
    pub pc_from_averaged_m: Option<f64>,
    pub runs: u32,
    pub dp: f64,
}

/// Extract a threshold per run, then average: mean plus standard error.
pub fn estimate_pc(sweep: &SweepResult) -> Result<PcEstimate> {
    let per_run_pc: Vec<f64> = sweep
        .m_per_run
        .iter()
        .map(|run| estimate_pc_single(&sweep.p_grid, run))
        .collect::<Result<_>>()?;
    let (pc_mean, pc_stderr) = mean_and_stderr(&per_run_pc);
    let pc_from_averaged_m = estimate_pc_single(&sweep.p_grid, &sweep.m_mean).ok();
    Ok(PcEstimate {
        spec: sweep.spec,
        conn: sweep.conn,
        pc_mean,
        pc_stderr,
        per_run_pc,
        pc_from_averaged_m,
        runs: sweep.grid.runs,
        dp: sweep.grid.dp,
    })
}

/// Format with 6 significant digits, trailing zeros trimmed; the fixed
/// number format of all CSV output.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub const SWEEP_CSV_HEADER: &str = "b,l,family,N,conn,p,run,m";
pub const ESTIMATE_CSV_HEADER: &str = "b,l,family,N,conn,D,Q,pc_mean,pc_stderr,runs,dp";

/// Render a sweep as CSV (header included), one row per (run, grid point),
/// runs outermost. Missing M values become empty fields.
pub fn sweep_csv(sweep: &SweepResult) -> String {
    let spec = &sweep.spec;
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for (run, row) in sweep.m_per_run.iter().enumerate() {
        for (i, m) in row.iter().enumerate() {
            let m_field = m.map(sig6).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                spec.b,
                spec.l,
                spec.family,
                spec.stages,
                sweep.conn,
                sig6(sweep.p_grid[i]),
                run,
                m_field
            ));
        }
    }
    out
}

/// One estimate CSV row matching [`ESTIMATE_CSV_HEADER`].
pub fn estimate_csv_row(est: &PcEstimate) -> String {
    let spec = &est.spec;
    let d = crate::analysis::dimensionality(spec.b, spec.l).expect("spec was validated");
    let q = crate::analysis::connectivity(spec.b, spec.l).expect("spec was validated");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        spec.b,
        spec.l,
        spec.family,
        spec.stages,
        est.conn,
        sig6(d),
        sig6(q),
        sig6(est.pc_mean),
        sig6(est.pc_stderr),
        est.runs,
        sig6(est.dp)
    )
}
