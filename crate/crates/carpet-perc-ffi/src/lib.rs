//! C interface to the carpet-perc library: opaque lattice handles, plain
//! status codes, and the threshold estimator.
//!
//! Conventions: every fallible function returns [`CpStatus`]; results are
//! written through `out` pointers only on `CP_STATUS_OK`. Pointer arguments
//! are checked for null. The most recent error message for the calling
//! thread is available via [`cp_last_error_message`]. Handles from
//! [`cp_lattice_build`] must be released with [`cp_lattice_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};

use carpet_perc::analysis;
use carpet_perc::estimator::{estimate_pc, run_sweep, SweepGrid};
use carpet_perc::lattice::{build_carpet_tdm, write_mask, CarpetSpec, Family, SiteLattice};
use carpet_perc::percolation::Connectivity;
use carpet_perc::Error;

/// Opaque handle to a built site lattice.
pub struct CpLattice(SiteLattice);

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpStatus {
    /// Success; any `out` parameters are filled in.
    Ok = 0,
    /// A parameter violates a documented constraint.
    InvalidParameter = 1,
    /// The requested lattice would exceed the size limit.
    TooLarge = 2,
    /// A statistic is undefined for the given input.
    Undefined = 3,
    /// Not enough data for the requested estimate or fit.
    InsufficientData = 4,
    /// A fit's normal equations are singular.
    SingularFit = 5,
    /// A text input failed to parse.
    ParseError = 6,
    /// An operating-system I/O failure.
    IoError = 7,
    /// A required pointer argument was null.
    NullPointer = 8,
    /// A string argument was not valid UTF-8.
    InvalidString = 9,
    /// An internal invariant failed; the library state is unchanged.
    Internal = 10,
}

/// Generator family of a carpet.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpFamily {
    /// One centred block removed per generator cell.
    Central = 0,
    /// Removed cells spread evenly across the generator.
    Scattered = 1,
}

/// Neighborhood rule for cluster joining.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpConnectivity {
    /// Four axial neighbors.
    Nn4 = 0,
    /// Four axial plus four diagonal neighbors.
    Nnn8 = 1,
}

/// Occupation-probability sweep settings; get defaults from
/// `cp_sweep_grid_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CpSweepGrid {
    pub p_min: f64,
    pub p_max: f64,
    pub dp: f64,
    pub runs: u32,
    pub master_seed: u64,
}

/// Critical-threshold estimate.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CpEstimate {
    /// Mean of the per-run threshold estimates.
    pub pc_mean: f64,
    /// Standard error of that mean.
    pub pc_stderr: f64,
    /// Threshold of the run-averaged curve; NaN when undefined.
    pub pc_from_averaged_m: f64,
    pub runs: u32,
    pub dp: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).expect("NULs removed"));
}

fn fail(err: &Error) -> CpStatus {
    set_error(&err.to_string());
    match err {
        Error::InvalidParameter(_) => CpStatus::InvalidParameter,
        Error::TooLarge { .. } => CpStatus::TooLarge,
        Error::Undefined(_) => CpStatus::Undefined,
        Error::InsufficientData(_) => CpStatus::InsufficientData,
        Error::SingularFit(_) => CpStatus::SingularFit,
        Error::Parse { .. } => CpStatus::ParseError,
        Error::Io(_) => CpStatus::IoError,
    }
}

fn null_arg(name: &str) -> CpStatus {
    set_error(&format!("null pointer argument: {name}"));
    CpStatus::NullPointer
}

impl From<CpFamily> for Family {
    fn from(f: CpFamily) -> Self {
        match f {
            CpFamily::Central => Family::Central,
            CpFamily::Scattered => Family::Scattered,
        }
    }
}

impl From<CpConnectivity> for Connectivity {
    fn from(c: CpConnectivity) -> Self {
        match c {
            CpConnectivity::Nn4 => Connectivity::Nn4,
            CpConnectivity::Nnn8 => Connectivity::Nnn8,
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent error on the calling thread; empty when no
/// error has occurred. Valid until the thread's next failing call.
#[no_mangle]
pub extern "C" fn cp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build the site lattice of a carpet: subdivision factor `b`, removed
/// block side `l`, generator family, and number of construction stages.
/// On success writes a handle to `*out`; free it with `cp_lattice_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_build(
    b: u32,
    l: u32,
    family: CpFamily,
    stages: u32,
    out: *mut *mut CpLattice,
) -> CpStatus {
    let Some(out) = out.as_mut() else {
        return null_arg("out");
    };
    *out = std::ptr::null_mut();
    match CarpetSpec::new(b, l, family.into(), stages).and_then(|s| build_carpet_tdm(&s)) {
        Ok(lattice) => {
            *out = Box::into_raw(Box::new(CpLattice(lattice)));
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a lattice handle. A null handle is ignored.
///
/// # Safety
/// `lattice` must have come from `cp_lattice_build` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_free(lattice: *mut CpLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of sites along one edge; 0 for a null handle.
///
/// # Safety
/// `lattice` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_side(lattice: *const CpLattice) -> u64 {
    lattice.as_ref().map_or(0, |l| l.0.side() as u64)
}

/// Number of present (non-hole) sites; 0 for a null handle.
///
/// # Safety
/// `lattice` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_present_count(lattice: *const CpLattice) -> u64 {
    lattice.as_ref().map_or(0, |l| l.0.present_count() as u64)
}

/// Whether the site at (row, col) is part of the carpet. False for a null
/// handle or out-of-range coordinates.
///
/// # Safety
/// `lattice` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_is_present(
    lattice: *const CpLattice,
    row: u64,
    col: u64,
) -> bool {
    lattice.as_ref().is_some_and(|l| {
        let side = l.0.side() as u64;
        row < side && col < side && l.0.is_present(row as usize, col as usize)
    })
}

/// Write the lattice mask (text format) to `path`.
///
/// # Safety
/// `lattice` must be a valid handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cp_lattice_write_mask(
    lattice: *const CpLattice,
    path: *const c_char,
) -> CpStatus {
    let Some(lattice) = lattice.as_ref() else {
        return null_arg("lattice");
    };
    if path.is_null() {
        return null_arg("path");
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_error("path is not valid UTF-8");
        return CpStatus::InvalidString;
    };
    let write = || -> Result<(), Error> {
        let file = File::create(path)?;
        write_mask(BufWriter::new(file), &lattice.0)?;
        Ok(())
    };
    match write() {
        Ok(()) => CpStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// The default sweep settings: p in [0.30, 0.95] at spacing 0.01, 10 runs,
/// master seed 1.
#[no_mangle]
pub extern "C" fn cp_sweep_grid_default() -> CpSweepGrid {
    let g = SweepGrid::default();
    CpSweepGrid {
        p_min: g.p_min,
        p_max: g.p_max,
        dp: g.dp,
        runs: g.runs,
        master_seed: g.master_seed,
    }
}

/// Estimate the critical occupation probability of `lattice` under `conn`
/// by sweeping the grid and locating the steepest rise of the cluster
/// second moment. Deterministic for a fixed grid.
///
/// # Safety
/// `lattice`, `grid` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cp_estimate_pc(
    lattice: *const CpLattice,
    conn: CpConnectivity,
    grid: *const CpSweepGrid,
    out: *mut CpEstimate,
) -> CpStatus {
    let Some(lattice) = lattice.as_ref() else {
        return null_arg("lattice");
    };
    let Some(grid) = grid.as_ref() else {
        return null_arg("grid");
    };
    let Some(out) = out.as_mut() else {
        return null_arg("out");
    };
    let sweep_grid = SweepGrid {
        p_min: grid.p_min,
        p_max: grid.p_max,
        dp: grid.dp,
        runs: grid.runs,
        master_seed: grid.master_seed,
    };
    let result = catch_unwind(AssertUnwindSafe(|| {
        run_sweep(&lattice.0, conn.into(), &sweep_grid).and_then(|s| estimate_pc(&s))
    }));
    match result {
        Ok(Ok(est)) => {
            *out = CpEstimate {
                pc_mean: est.pc_mean,
                pc_stderr: est.pc_stderr,
                pc_from_averaged_m: est.pc_from_averaged_m.unwrap_or(f64::NAN),
                runs: est.runs,
                dp: est.dp,
            };
            CpStatus::Ok
        }
        Ok(Err(e)) => fail(&e),
        Err(_) => {
            set_error("internal panic during estimation");
            CpStatus::Internal
        }
    }
}

/// Fractal dimensionality of the carpet generated by (b, l).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_dimensionality(b: u32, l: u32, out: *mut f64) -> CpStatus {
    let Some(out) = out.as_mut() else {
        return null_arg("out");
    };
    match analysis::dimensionality(b, l) {
        Ok(d) => {
            *out = d;
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Connectivity index of the carpet generated by (b, l).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_connectivity(b: u32, l: u32, out: *mut f64) -> CpStatus {
    let Some(out) = out.as_mut() else {
        return null_arg("out");
    };
    match analysis::connectivity(b, l) {
        Ok(q) => {
            *out = q;
            CpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}
