//! Published threshold measurements for both carpet families, bundled so
//! table reproductions and refits can compare against them. Values are kept
//! exactly as printed in the source tables, including two descriptor entries
//! and one deviation sign that disagree with recomputation; see the tests.

use crate::lattice::Family;

/// One published table row: lattice parameters, printed descriptors, the
/// measured threshold with its standard error, and the printed predictions
/// with their deviations (`pred - pc`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceRow {
    pub b: u32,
    pub l: u32,
    pub stages: u32,
    /// Printed fractal dimensionality.
    pub d: f64,
    /// Printed connectivity.
    pub q: f64,
    /// Measured threshold.
    pub pc: f64,
    /// Standard error of the threshold.
    pub sigma: f64,
    /// Power-law prediction (central family only).
    pub pred_d: Option<f64>,
    pub sigma_e_d: Option<f64>,
    /// Quadratic prediction.
    pub pred_q: f64,
    pub sigma_e_q: f64,
}

#[allow(clippy::too_many_arguments)]
const fn central(
    b: u32,
    l: u32,
    stages: u32,
    d: f64,
    q: f64,
    pc: f64,
    sigma: f64,
    pred_d: f64,
    sigma_e_d: f64,
    pred_q: f64,
    sigma_e_q: f64,
) -> ReferenceRow {
    ReferenceRow {
        b,
        l,
        stages,
        d,
        q,
        pc,
        sigma,
        pred_d: Some(pred_d),
        sigma_e_d: Some(sigma_e_d),
        pred_q,
        sigma_e_q,
    }
}

#[allow(clippy::too_many_arguments)]
const fn scattered(
    b: u32,
    l: u32,
    stages: u32,
    d: f64,
    q: f64,
    pc: f64,
    sigma: f64,
    pred_q: f64,
    sigma_e_q: f64,
) -> ReferenceRow {
    ReferenceRow {
        b,
        l,
        stages,
        d,
        q,
        pc,
        sigma,
        pred_d: None,
        sigma_e_d: None,
        pred_q,
        sigma_e_q,
    }
}

/// Central-family measurements, ascending in dimensionality.
pub const CENTRAL_ROWS: &[ReferenceRow] = &[
    central(
        13, 11, 2, 1.509, 0.270, 0.816, 0.005, 0.800, -0.016, 0.785, -0.031,
    ),
    central(
        11, 9, 2, 1.588, 0.289, 0.788, 0.007, 0.781, -0.007, 0.771, -0.017,
    ),
    central(
        9, 7, 2, 1.577, 0.316, 0.748, 0.003, 0.755, 0.007, 0.751, 0.003,
    ),
    central(
        7, 5, 2, 1.633, 0.356, 0.703, 0.006, 0.716, 0.013, 0.723, 0.020,
    ),
    central(
        5, 3, 3, 1.723, 0.431, 0.649, 0.005, 0.648, -0.001, 0.673, 0.024,
    ),
    central(
        13, 9, 2, 1.746, 0.541, 0.631, 0.004, 0.631, 0.000, 0.606, -0.025,
    ),
    central(
        11, 7, 2, 1.784, 0.578, 0.601, 0.004, 0.600, -0.001, 0.585, -0.016,
    ),
    central(
        9, 5, 2, 1.832, 0.631, 0.577, 0.004, 0.560, -0.017, 0.557, -0.020,
    ),
    central(
        15, 9, 2, 1.835, 0.662, 0.541, 0.005, 0.558, 0.017, 0.541, 0.000,
    ),
    central(
        13, 7, 2, 1.867, 0.699, 0.524, 0.003, 0.530, 0.006, 0.523, -0.001,
    ),
    central(
        7, 3, 2, 1.896, 0.712, 0.508, 0.008, 0.505, -0.003, 0.517, 0.009,
    ),
    central(
        11, 5, 2, 1.903, 0.747, 0.497, 0.003, 0.499, 0.002, 0.501, 0.004,
    ),
    central(
        15, 7, 2, 1.909, 0.768, 0.491, 0.003, 0.494, 0.003, 0.492, 0.001,
    ),
    central(
        13, 5, 2, 1.938, 0.811, 0.464, 0.004, 0.467, 0.003, 0.474, 0.010,
    ),
    central(
        9, 3, 2, 1.946, 0.816, 0.463, 0.004, 0.460, -0.003, 0.472, 0.009,
    ),
    central(
        15, 5, 2, 1.957, 0.850, 0.446, 0.002, 0.450, 0.004, 0.459, 0.013,
    ),
    central(
        11, 3, 2, 1.968, 0.867, 0.442, 0.003, 0.440, -0.002, 0.453, 0.011,
    ),
    central(
        5, 1, 3, 1.975, 0.861, 0.438, 0.003, 0.433, -0.005, 0.455, 0.017,
    ),
    central(
        13, 3, 2, 1.979, 0.898, 0.436, 0.003, 0.430, -0.006, 0.442, 0.006,
    ),
    central(
        7, 1, 2, 1.989, 0.921, 0.430, 0.005, 0.420, -0.010, 0.434, 0.004,
    ),
    central(
        9, 1, 2, 1.994, 0.946, 0.417, 0.003, 0.416, -0.001, 0.426, 0.009,
    ),
    central(
        13, 1, 2, 1.998, 0.969, 0.415, 0.003, 0.412, -0.003, 0.419, 0.004,
    ),
];

/// Scattered-family measurements, ascending in dimensionality.
pub const SCATTERED_ROWS: &[ReferenceRow] = &[
    scattered(5, 2, 3, 1.892, 0.683, 0.490, 0.002, 0.487, -0.003),
    scattered(7, 3, 2, 1.896, 0.712, 0.463, 0.003, 0.476, -0.013),
    scattered(9, 4, 2, 1.900, 0.734, 0.461, 0.002, 0.468, 0.007),
    scattered(11, 5, 2, 1.904, 0.747, 0.459, 0.003, 0.464, 0.005),
    scattered(13, 6, 2, 1.907, 0.759, 0.456, 0.003, 0.459, 0.003),
    scattered(15, 7, 2, 1.909, 0.768, 0.455, 0.002, 0.456, 0.001),
    scattered(17, 8, 2, 1.912, 0.776, 0.447, 0.002, 0.454, 0.007),
];

pub fn rows(family: Family) -> &'static [ReferenceRow] {
    match family {
        Family::Central => CENTRAL_ROWS,
        Family::Scattered => SCATTERED_ROWS,
    }
}

pub fn find_row(family: Family, b: u32, l: u32) -> Option<&'static ReferenceRow> {
    rows(family).iter().find(|r| r.b == b && r.l == l)
}
