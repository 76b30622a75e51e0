//! Geometric descriptors of a carpet and the empirical relations linking
//! them to the percolation threshold, with refitting and remainder errors.

use crate::error::{Error, Result};

/// Threshold of the plain square lattice under the eight-neighbor rule; the
/// d -> 2 / q -> 1 baseline of the power-law relation.
pub const PC_SQUARE_NNN8: f64 = 0.41;
/// Threshold of the plain square lattice under the four-neighbor rule.
pub const PC_SQUARE_NN4: f64 = 0.593;
/// Power-law exponent of the threshold-vs-dimensionality relation for the
/// eight-neighbor rule on central-family carpets.
pub const EXPONENT_NNN8: f64 = 1.60;
/// Counterpart exponent for the four-neighbor rule.
pub const EXPONENT_NN4: f64 = 2.35;
/// Quadratic threshold-vs-connectivity coefficients for the central family
/// (eight-neighbor rule), `[a, b, c]` in `a q^2 + b q + c`.
pub const QUAD_CENTRAL: [f64; 3] = [0.32, -0.92, 1.01];
/// Counterpart coefficients for the scattered family.
pub const QUAD_SCATTERED: [f64; 3] = [0.36, -0.88, 0.92];

fn check_descriptor_args(b: u32, l: u32) -> Result<()> {
    if b < 2 {
        return Err(Error::invalid(format!(
            "b = {b} but descriptors need b >= 2"
        )));
    }
    if l >= b {
        return Err(Error::invalid(format!(
            "descriptors need b > l, got b = {b}, l = {l}"
        )));
    }
    Ok(())
}

/// Fractal dimensionality `ln(b^2 - l^2) / ln b`; exactly 2 when l = 0.
pub fn dimensionality(b: u32, l: u32) -> Result<f64> {
    check_descriptor_args(b, l)?;
    if l == 0 {
        return Ok(2.0);
    }
    let cells = (b as f64) * (b as f64) - (l as f64) * (l as f64);
    Ok(cells.ln() / (b as f64).ln())
}

/// Connectivity `ln(b - l) / ln b`; exactly 1 when l = 0.
pub fn connectivity(b: u32, l: u32) -> Result<f64> {
    check_descriptor_args(b, l)?;
    if l == 0 {
        return Ok(1.0);
    }
    Ok(((b - l) as f64).ln() / (b as f64).ln())
}

/// Power-law threshold prediction `1 - (1 - pcs)(d - 1)^exponent`.
pub fn predict_pc_from_d(d: f64, pcs: f64, exponent: f64) -> Result<f64> {
    if d <= 1.0 || d.is_nan() {
        return Err(Error::invalid(format!("d = {d} must exceed 1")));
    }
    if !(0.0 < pcs && pcs < 1.0) {
        return Err(Error::invalid(format!("pcs = {pcs} must lie in (0, 1)")));
    }
    let factor = (d - 1.0).powf(exponent);
    if factor == 1.0 {
        // keep the d = 2 limit exact: 1 - (1 - pcs) loses the last bit
        return Ok(pcs);
    }
    Ok(1.0 - (1.0 - pcs) * factor)
}

/// Quadratic threshold prediction `a q^2 + b q + c`.
pub fn predict_pc_from_q(q: f64, coeffs: &[f64; 3]) -> f64 {
    coeffs[0] * q * q + coeffs[1] * q + coeffs[2]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    ExponentPowerLaw,
    Quadratic,
}

/// Outcome of a least-squares fit of one of the threshold relations.
#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub kind: FitKind,
    /// `[exponent]` for the power law, `[a, b, c]` for the quadratic.
    pub coefficients: Vec<f64>,
    /// Baseline threshold the power law is anchored to; `None` for quadratics.
    pub pcs_baseline: Option<f64>,
    /// Per-point deviations, predicted minus observed.
    pub residuals: Vec<f64>,
    /// `sqrt(sum(residual^2) / (k - 2))`; `None` when k < 3 leaves it undefined.
    pub remainder_error: Option<f64>,
    /// For the power law: the exponent minimizing squared error directly in
    /// threshold space, kept alongside the primary log-space fit.
    pub alt_exponent_pc_space: Option<f64>,
}

/// Deviation summary `sqrt(sum(residuals^2) / (k - 2))` for `k` data points.
pub fn remainder_error(residuals: &[f64], k: usize) -> Result<f64> {
    if residuals.len() != k {
        return Err(Error::invalid(format!(
            "k = {k} but {} residuals were given",
            residuals.len()
        )));
    }
    if k < 3 {
        return Err(Error::invalid(format!(
            "remainder error needs at least 3 points, got {k}"
        )));
    }
    let sum: f64 = residuals.iter().map(|r| r * r).sum();
    Ok((sum / (k as f64 - 2.0)).sqrt())
}

/// Exponent of the power law minimizing squared error in threshold space,
/// located by a coarse scan plus golden-section refinement.
fn exponent_min_pc_space(points: &[(f64, f64)], pcs: f64) -> f64 {
    let sse = |t: f64| -> f64 {
        points
            .iter()
            .map(|&(d, pc)| {
                let r = 1.0 - (1.0 - pcs) * (d - 1.0).powf(t) - pc;
                r * r
            })
            .sum()
    };
    let (lo, hi) = (0.01_f64, 10.0_f64);
    let mut best_t = lo;
    let mut best = f64::INFINITY;
    for i in 0..=800 {
        let t = lo + (hi - lo) * i as f64 / 800.0;
        let v = sse(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let step = (hi - lo) / 800.0;
    let (mut a, mut b) = ((best_t - step).max(lo), (best_t + step).min(hi));
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        let (x1, x2) = (b - phi * (b - a), a + phi * (b - a));
        if sse(x1) <= sse(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    (a + b) / 2.0
}

/// Fit the exponent of `(1 - pc)/(1 - pcs) = (d - 1)^t`: regression through
/// the origin of `ln((1 - pc)/(1 - pcs))` on `ln(d - 1)`. Residuals are
/// reported in threshold space.
pub fn fit_exponent(points: &[(f64, f64)], pcs: f64) -> Result<FitResult> {
    if !(0.0 < pcs && pcs < 1.0) {
        return Err(Error::invalid(format!("pcs = {pcs} must lie in (0, 1)")));
    }
    if points.len() < 2 {
        return Err(Error::InsufficientData(
            "exponent fit needs at least 2 points".into(),
        ));
    }
    for &(d, pc) in points {
        if d <= 1.0 || d.is_nan() {
            return Err(Error::invalid(format!("d = {d} must exceed 1")));
        }
        if !(0.0 < pc && pc < 1.0) {
            return Err(Error::invalid(format!("pc = {pc} must lie in (0, 1)")));
        }
    }
    let d_min = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let d_max = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if d_max - d_min < 1e-12 {
        return Err(Error::SingularFit(
            "all points share one dimensionality".into(),
        ));
    }

    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(d, pc) in points {
        let x = (d - 1.0).ln();
        let y = ((1.0 - pc) / (1.0 - pcs)).ln();
        sxy += x * y;
        sxx += x * x;
    }
    if sxx < 1e-300 {
        return Err(Error::SingularFit("zero variance in ln(d - 1)".into()));
    }
    let exponent = sxy / sxx;

    let residuals: Vec<f64> = points
        .iter()
        .map(|&(d, pc)| 1.0 - (1.0 - pcs) * (d - 1.0).powf(exponent) - pc)
        .collect();
    let remainder = remainder_error(&residuals, residuals.len()).ok();

    Ok(FitResult {
        kind: FitKind::ExponentPowerLaw,
        coefficients: vec![exponent],
        pcs_baseline: Some(pcs),
        residuals,
        remainder_error: remainder,
        alt_exponent_pc_space: Some(exponent_min_pc_space(points, pcs)),
    })
}

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 4]; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col].abs() < 1e-12 {
            return Err(Error::SingularFit("normal equations are singular".into()));
        }
        m.swap(col, pivot);
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (entry, p) in row.iter_mut().zip(pivot_row).skip(col) {
                *entry -= f * p;
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// Ordinary least-squares fit of `pc = a q^2 + b q + c`. The normal
/// equations are formed around the centered variable `q - mean(q)` for
/// numerical stability, then expanded back; the minimizer is unchanged.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<FitResult> {
    let mut qs: Vec<f64> = points.iter().map(|p| p.0).collect();
    qs.sort_by(f64::total_cmp);
    qs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if qs.len() < 3 {
        return Err(Error::SingularFit(
            "quadratic fit needs at least 3 distinct q values".into(),
        ));
    }

    let n = points.len() as f64;
    let q_mean = points.iter().map(|p| p.0).sum::<f64>() / n;
    let (mut s1, mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0, 0.0);
    let (mut t0, mut t1, mut t2) = (0.0, 0.0, 0.0);
    for &(q, pc) in points {
        let t = q - q_mean;
        let tt = t * t;
        s1 += t;
        s2 += tt;
        s3 += tt * t;
        s4 += tt * tt;
        t0 += pc;
        t1 += t * pc;
        t2 += tt * pc;
    }
    let [alpha, beta, gamma] = solve3([[s4, s3, s2, t2], [s3, s2, s1, t1], [s2, s1, n, t0]])?;

    // expand a (t = q - q_mean) polynomial back to plain q coefficients
    let a = alpha;
    let b = beta - 2.0 * alpha * q_mean;
    let c = gamma - beta * q_mean + alpha * q_mean * q_mean;

    let residuals: Vec<f64> = points
        .iter()
        .map(|&(q, pc)| predict_pc_from_q(q, &[a, b, c]) - pc)
        .collect();
    let remainder = remainder_error(&residuals, residuals.len()).ok();

    Ok(FitResult {
        kind: FitKind::Quadratic,
        coefficients: vec![a, b, c],
        pcs_baseline: None,
        residuals,
        remainder_error: remainder,
        alt_exponent_pc_space: None,
    })
}
