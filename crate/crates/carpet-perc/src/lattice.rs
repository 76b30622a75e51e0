//! Fractal site lattices built from square generators with removed cells.
//!
//! A generator is a `b x b` block of cells with `l^2` cells removed, iterated
//! `stages` times by substitution: every occupied cell is replaced by a copy
//! of the generator, every removed cell by a hole. Sites live on the cell
//! corners; a site is present when at least one of its incident cells is
//! occupied, so only the strict interiors of holes lose sites.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard cap on cells per side (`b^stages`), keeping memory in check.
pub const MAX_SIDE_CELLS: u64 = 8192;

/// Placement rule for the removed cells of the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// One centred `l x l` block removed; requires `b > l` and `b - l` even.
    Central,
    /// `l^2` single cells removed at the even/even positions of the
    /// generator; requires `b = 2l + 1`.
    Scattered,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Central => "central",
            Family::Scattered => "scattered",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "central" => Ok(Family::Central),
            "scattered" => Ok(Family::Scattered),
            other => Err(Error::invalid(format!(
                "unknown family `{other}` (expected `central` or `scattered`)"
            ))),
        }
    }
}

fn validate_generator(b: u32, l: u32, family: Family) -> Result<()> {
    if b < 3 {
        return Err(Error::invalid(format!(
            "b = {b} but the generator needs b >= 3"
        )));
    }
    if l == 0 {
        // degenerate full square, accepted for either family
        return Ok(());
    }
    match family {
        Family::Central => {
            if l >= b {
                return Err(Error::invalid(format!(
                    "central family needs b > l, got b = {b}, l = {l}"
                )));
            }
            if !(b - l).is_multiple_of(2) {
                return Err(Error::invalid(format!(
                    "central family needs b - l even so the hole can be centred, got b = {b}, l = {l}"
                )));
            }
        }
        Family::Scattered => {
            if b != 2 * l + 1 {
                return Err(Error::invalid(format!(
                    "scattered family needs b = 2l + 1, got b = {b}, l = {l}"
                )));
            }
        }
    }
    Ok(())
}

/// Generator parameters plus the number of substitution stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CarpetSpec {
    pub b: u32,
    pub l: u32,
    pub family: Family,
    pub stages: u32,
}

impl CarpetSpec {
    pub fn new(b: u32, l: u32, family: Family, stages: u32) -> Result<Self> {
        let spec = CarpetSpec {
            b,
            l,
            family,
            stages,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Re-check all constraints; useful when the fields were set directly.
    pub fn validate(&self) -> Result<()> {
        validate_generator(self.b, self.l, self.family)?;
        if self.stages == 0 {
            return Err(Error::invalid("stages must be at least 1"));
        }
        self.side_cells()?; // reject sizes over the limit up front
        Ok(())
    }

    /// Cells per side, `b^stages`.
    pub fn side_cells(&self) -> Result<u64> {
        let side = (self.b as u64)
            .checked_pow(self.stages)
            .filter(|&s| s <= MAX_SIDE_CELLS)
            .ok_or(Error::TooLarge {
                side: (self.b as u64).checked_pow(self.stages).unwrap_or(u64::MAX),
                limit: MAX_SIDE_CELLS,
            })?;
        Ok(side)
    }

    /// Sites per side, `b^stages + 1`.
    pub fn side_sites(&self) -> Result<u64> {
        Ok(self.side_cells()? + 1)
    }

    /// Closed form for the number of occupied cells, `(b^2 - l^2)^stages`.
    pub fn expected_cell_count(&self) -> u64 {
        ((self.b as u64 * self.b as u64) - (self.l as u64 * self.l as u64)).pow(self.stages)
    }
}

impl fmt::Display for CarpetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={} l={} family={} stages={}",
            self.b, self.l, self.family, self.stages
        )
    }
}

/// Occupancy pattern of a single generator; rows and columns are 1-based.
#[derive(Clone, Debug)]
pub struct CellPattern {
    side: u32,
    removed: Vec<bool>,
}

impl CellPattern {
    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn is_removed(&self, row: u32, col: u32) -> bool {
        debug_assert!((1..=self.side).contains(&row) && (1..=self.side).contains(&col));
        self.removed[((row - 1) * self.side + (col - 1)) as usize]
    }

    /// The removed cells as sorted 1-based coordinates.
    pub fn removed_cells(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for row in 1..=self.side {
            for col in 1..=self.side {
                if self.is_removed(row, col) {
                    out.insert((row, col));
                }
            }
        }
        out
    }
}

/// Build the generator occupancy pattern for the given family.
pub fn base_pattern(b: u32, l: u32, family: Family) -> Result<CellPattern> {
    validate_generator(b, l, family)?;
    let mut removed = vec![false; (b * b) as usize];
    if l > 0 {
        match family {
            Family::Central => {
                let lo = (b - l) / 2 + 1;
                let hi = (b + l) / 2;
                for row in lo..=hi {
                    for col in lo..=hi {
                        removed[((row - 1) * b + (col - 1)) as usize] = true;
                    }
                }
            }
            Family::Scattered => {
                for row in (2..=b).step_by(2) {
                    for col in (2..=b).step_by(2) {
                        removed[((row - 1) * b + (col - 1)) as usize] = true;
                    }
                }
            }
        }
    }
    Ok(CellPattern { side: b, removed })
}

/// Cell occupancy of a fully iterated carpet, row-major and 0-based.
#[derive(Clone, Debug)]
pub struct CellGrid {
    side: usize,
    occupied: Vec<bool>,
}

impl CellGrid {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn is_occupied(&self, row: usize, col: usize) -> bool {
        self.occupied[row * self.side + col]
    }

    pub fn occupied_count(&self) -> u64 {
        self.occupied.iter().filter(|&&c| c).count() as u64
    }
}

/// Expand a spec to its full cell grid. A cell is occupied exactly when its
/// base-`b` digit pair avoids the removed pattern at every scale.
pub fn cell_grid(spec: &CarpetSpec) -> Result<CellGrid> {
    let pattern = base_pattern(spec.b, spec.l, spec.family)?;
    let side = spec.side_cells()? as usize;
    let b = spec.b as usize;
    let mut occupied = vec![true; side * side];
    for row in 0..side {
        for col in 0..side {
            let (mut r, mut c) = (row, col);
            for _ in 0..spec.stages {
                if pattern.is_removed((r % b) as u32 + 1, (c % b) as u32 + 1) {
                    occupied[row * side + col] = false;
                    break;
                }
                r /= b;
                c /= b;
            }
        }
    }
    Ok(CellGrid { side, occupied })
}

/// Site lattice of a carpet: `side_cells + 1` sites per side, a site being
/// present when it touches an occupied cell.
#[derive(Clone, Debug)]
pub struct SiteLattice {
    spec: CarpetSpec,
    side: usize,
    present: Vec<bool>,
}

impl SiteLattice {
    pub fn spec(&self) -> &CarpetSpec {
        &self.spec
    }

    /// Sites per side.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn is_present(&self, row: usize, col: usize) -> bool {
        self.present[row * self.side + col]
    }

    /// Row-major presence mask.
    pub fn mask(&self) -> &[bool] {
        &self.present
    }

    pub fn present_count(&self) -> usize {
        self.present.iter().filter(|&&s| s).count()
    }

    /// Number of occupied cells, recomputed from the carpet parameters.
    pub fn occupied_cell_count(&self) -> Result<u64> {
        Ok(cell_grid(&self.spec)?.occupied_count())
    }

    pub(crate) fn from_parts(spec: CarpetSpec, side: usize, present: Vec<bool>) -> Self {
        debug_assert_eq!(present.len(), side * side);
        SiteLattice {
            spec,
            side,
            present,
        }
    }
}

/// Build the site lattice by expanding the cell grid and marking every cell
/// corner. Straightforward but memory-heavier than the translation builder;
/// serves as its independent cross-check.
pub fn build_carpet_recursive(spec: &CarpetSpec) -> Result<SiteLattice> {
    spec.validate()?;
    let cells = cell_grid(spec)?;
    let n = cells.side();
    let side = n + 1;
    let mut present = vec![false; side * side];
    for row in 0..n {
        for col in 0..n {
            if cells.is_occupied(row, col) {
                present[row * side + col] = true;
                present[row * side + col + 1] = true;
                present[(row + 1) * side + col] = true;
                present[(row + 1) * side + col + 1] = true;
            }
        }
    }
    Ok(SiteLattice::from_parts(*spec, side, present))
}

/// Build the site lattice by translational dilation: start from a 2x2 seed
/// and per stage (a) tile the leftmost column strip downward, (b) extend
/// hole-free rows rightward by one-strip translation, (c) fill the rows that
/// cross holes downward, skipping the hole interiors. Only the strict hole
/// interiors are never written and stay absent.
pub fn build_carpet_tdm(spec: &CarpetSpec) -> Result<SiteLattice> {
    spec.validate()?;
    let side = spec.side_sites()? as usize;
    let b = spec.b as usize;
    let l = spec.l as usize;
    let mut m = vec![false; side * side];

    // index arithmetic below is 1-based to keep the block bookkeeping honest
    let at = move |i: usize, j: usize| -> usize { (i - 1) * side + (j - 1) };

    m[at(1, 1)] = true;
    m[at(1, 2)] = true;
    m[at(2, 1)] = true;
    m[at(2, 2)] = true;

    let mut w = 1usize; // strip width grown so far: b^(stage - 1)
    for _ in 0..spec.stages {
        let cur = b * w + 1; // sites per side once this stage completes

        // (a) the leftmost cell column is hole-free in both families, so the
        // column strip is a plain vertical tiling of the previous lattice
        for t in 1..b {
            for i in t * w + 2..=(t + 1) * w + 1 {
                for j in 1..=w + 1 {
                    m[at(i, j)] = m[at(i - w, j)];
                }
            }
        }

        if l == 0 {
            for i in 1..=cur {
                for j in w + 2..=cur {
                    m[at(i, j)] = m[at(i, j - w)];
                }
            }
        } else {
            match spec.family {
                Family::Central => {
                    // rows through hole-free cell rows are periodic with
                    // period w; rows crossing the hole band are filled
                    // downward left and right of the hole
                    let band_lo = (b - l) / 2 * w + 1;
                    let band_hi = (b + l) / 2 * w + 1;
                    for i in (1..=band_lo).chain(band_hi..=cur) {
                        for j in w + 2..=cur {
                            m[at(i, j)] = m[at(i, j - w)];
                        }
                    }
                    for i in band_lo + 1..band_hi {
                        for j in (w + 2..=band_lo).chain(band_hi..=cur) {
                            m[at(i, j)] = m[at(i - w, j)];
                        }
                    }
                }
                Family::Scattered => {
                    // odd cell rows are hole-free, even cell rows alternate
                    // hole / occupied starting with a hole at column 2
                    for t in (1..=b).step_by(2) {
                        for i in (t - 1) * w + 1..=t * w + 1 {
                            for j in w + 2..=cur {
                                m[at(i, j)] = m[at(i, j - w)];
                            }
                        }
                    }
                    for t in (2..b).step_by(2) {
                        for i in (t - 1) * w + 2..=t * w {
                            for u in (2..b).step_by(2) {
                                for j in u * w + 1..=(u + 1) * w + 1 {
                                    m[at(i, j)] = m[at(i - w, j)];
                                }
                            }
                        }
                    }
                }
            }
        }

        w *= b;
    }

    Ok(SiteLattice::from_parts(*spec, side, m))
}

/// Write a lattice mask as text: a `b l family stages` header line followed
/// by one `0`/`1` row per site row.
pub fn write_mask<W: Write>(mut w: W, lattice: &SiteLattice) -> std::io::Result<()> {
    let spec = lattice.spec();
    writeln!(w, "{} {} {} {}", spec.b, spec.l, spec.family, spec.stages)?;
    let mut row = String::with_capacity(lattice.side() + 1);
    for i in 0..lattice.side() {
        row.clear();
        for j in 0..lattice.side() {
            row.push(if lattice.is_present(i, j) { '1' } else { '0' });
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Read a mask written by [`write_mask`]. `path` is used in error messages.
pub fn read_mask<R: BufRead>(r: R, path: &str) -> Result<SiteLattice> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_string(),
        line,
        message,
    };
    let mut lines = r.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty mask file".into()))?;
    let header = header.map_err(Error::Io)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(parse_err(
            1,
            format!("expected header `b l family stages`, got `{header}`"),
        ));
    }
    let b: u32 = fields[0]
        .parse()
        .map_err(|_| parse_err(1, format!("bad b `{}`", fields[0])))?;
    let l: u32 = fields[1]
        .parse()
        .map_err(|_| parse_err(1, format!("bad l `{}`", fields[1])))?;
    let family: Family = fields[2].parse()?;
    let stages: u32 = fields[3]
        .parse()
        .map_err(|_| parse_err(1, format!("bad stages `{}`", fields[3])))?;
    let spec = CarpetSpec::new(b, l, family, stages)?;

    let side = spec.side_sites()? as usize;
    let mut present = Vec::with_capacity(side * side);
    let mut rows = 0usize;
    for (idx, line) in lines {
        let line = line.map_err(Error::Io)?;
        if line.is_empty() {
            continue;
        }
        if line.len() != side {
            return Err(parse_err(
                idx + 1,
                format!("expected {side} digits per row, got {}", line.len()),
            ));
        }
        for ch in line.chars() {
            match ch {
                '0' => present.push(false),
                '1' => present.push(true),
                other => {
                    return Err(parse_err(
                        idx + 1,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        }
        rows += 1;
    }
    if rows != side {
        return Err(parse_err(
            rows + 1,
            format!("expected {side} rows, got {rows}"),
        ));
    }
    Ok(SiteLattice::from_parts(spec, side, present))
}

/// Write the mask as a binary PGM image, present sites white on black.
pub fn write_pgm<W: Write>(mut w: W, lattice: &SiteLattice) -> std::io::Result<()> {
    let side = lattice.side();
    write!(w, "P5\n{side} {side}\n255\n")?;
    let bytes: Vec<u8> = lattice
        .mask()
        .iter()
        .map(|&s| if s { 255 } else { 0 })
        .collect();
    w.write_all(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(b: u32, l: u32, family: Family, stages: u32) -> CarpetSpec {
        CarpetSpec::new(b, l, family, stages).unwrap()
    }

    #[test]
    fn base_pattern_central_small() {
        let p = base_pattern(3, 1, Family::Central).unwrap();
        assert_eq!(p.removed_cells(), BTreeSet::from([(2, 2)]));
    }

    #[test]
    fn base_pattern_central_block() {
        let p = base_pattern(7, 3, Family::Central).unwrap();
        let expected: BTreeSet<(u32, u32)> =
            (3..=5).flat_map(|r| (3..=5).map(move |c| (r, c))).collect();
        assert_eq!(p.removed_cells(), expected);
    }

    #[test]
    fn base_pattern_scattered_five() {
        let p = base_pattern(5, 2, Family::Scattered).unwrap();
        assert_eq!(
            p.removed_cells(),
            BTreeSet::from([(2, 2), (2, 4), (4, 2), (4, 4)])
        );
    }

    #[test]
    fn base_pattern_degenerate_square_is_hole_free() {
        for family in [Family::Central, Family::Scattered] {
            let p = base_pattern(5, 0, family).unwrap();
            assert!(p.removed_cells().is_empty());
        }
    }

    #[test]
    fn generator_constraints_are_enforced() {
        assert!(CarpetSpec::new(6, 3, Family::Central, 1).is_err()); // b - l odd
        assert!(CarpetSpec::new(5, 5, Family::Central, 1).is_err()); // l not below b
        assert!(CarpetSpec::new(7, 2, Family::Scattered, 1).is_err()); // b != 2l + 1
        assert!(CarpetSpec::new(2, 0, Family::Central, 1).is_err()); // b too small
        assert!(CarpetSpec::new(5, 1, Family::Central, 0).is_err()); // no stages
        assert!(CarpetSpec::new(5, 0, Family::Scattered, 2).is_ok()); // degenerate square
    }

    #[test]
    fn side_limit_is_enforced() {
        assert!(CarpetSpec::new(3, 1, Family::Central, 8).is_ok()); // 3^8 = 6561
        match CarpetSpec::new(3, 1, Family::Central, 9) {
            Err(Error::TooLarge { side, limit }) => {
                assert_eq!(side, 19683);
                assert_eq!(limit, MAX_SIDE_CELLS);
            }
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }

    #[test]
    fn cell_counts_match_closed_form() {
        for s in [
            spec(3, 1, Family::Central, 1),
            spec(7, 3, Family::Central, 2),
            spec(5, 2, Family::Scattered, 3),
            spec(5, 0, Family::Central, 2),
            spec(9, 4, Family::Scattered, 2),
        ] {
            let grid = cell_grid(&s).unwrap();
            assert_eq!(grid.occupied_count(), s.expected_cell_count(), "{s}");
        }
        assert_eq!(spec(3, 1, Family::Central, 1).expected_cell_count(), 8);
        assert_eq!(spec(7, 3, Family::Central, 2).expected_cell_count(), 1600);
        assert_eq!(spec(5, 2, Family::Scattered, 3).expected_cell_count(), 9261);
    }

    #[test]
    fn present_counts_on_known_lattices() {
        // b=3, l=1, one stage: the hole has no interior site, all 16 remain
        let lat = build_carpet_recursive(&spec(3, 1, Family::Central, 1)).unwrap();
        assert_eq!(lat.side(), 4);
        assert_eq!(lat.present_count(), 16);

        // b=7, l=3, one stage: the 3x3 hole hides a 2x2 block of sites
        let lat = build_carpet_recursive(&spec(7, 3, Family::Central, 1)).unwrap();
        assert_eq!(lat.side(), 8);
        assert_eq!(lat.present_count(), 60);
        for (i, j) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
            assert!(!lat.is_present(i, j));
        }

        // degenerate square keeps every site
        let lat = build_carpet_recursive(&spec(5, 0, Family::Central, 2)).unwrap();
        assert_eq!(lat.present_count(), 26 * 26);

        // b=5, l=2 scattered, two stages: four top-scale holes of 4x4 sites
        let lat = build_carpet_recursive(&spec(5, 2, Family::Scattered, 2)).unwrap();
        assert_eq!(lat.present_count(), 676 - 4 * 16);
    }

    #[test]
    fn translation_builder_matches_recursive_builder() {
        let specs = [
            spec(3, 1, Family::Central, 1),
            spec(3, 1, Family::Central, 3),
            spec(5, 1, Family::Central, 2),
            spec(5, 3, Family::Central, 2),
            spec(7, 3, Family::Central, 2),
            spec(7, 5, Family::Central, 1),
            spec(9, 3, Family::Central, 2),
            spec(13, 1, Family::Central, 2),
            spec(13, 11, Family::Central, 2),
            spec(3, 1, Family::Scattered, 3),
            spec(5, 2, Family::Scattered, 2),
            spec(5, 2, Family::Scattered, 3),
            spec(7, 3, Family::Scattered, 2),
            spec(9, 4, Family::Scattered, 2),
            spec(17, 8, Family::Scattered, 1),
            spec(4, 0, Family::Central, 3),
            spec(6, 0, Family::Scattered, 2),
        ];
        for s in specs {
            let a = build_carpet_tdm(&s).unwrap();
            let b = build_carpet_recursive(&s).unwrap();
            assert_eq!(a.side(), b.side(), "{s}");
            assert_eq!(a.mask(), b.mask(), "{s}");
        }
    }

    #[test]
    fn central_masks_have_full_square_symmetry() {
        for s in [
            spec(7, 3, Family::Central, 2),
            spec(5, 1, Family::Central, 3),
            spec(9, 5, Family::Central, 2),
        ] {
            let lat = build_carpet_tdm(&s).unwrap();
            let n = lat.side();
            for i in 0..n {
                for j in 0..n {
                    let v = lat.is_present(i, j);
                    assert_eq!(v, lat.is_present(n - 1 - i, j), "{s} row mirror");
                    assert_eq!(v, lat.is_present(i, n - 1 - j), "{s} col mirror");
                    assert_eq!(v, lat.is_present(j, i), "{s} transpose");
                }
            }
        }
    }

    #[test]
    fn boundary_sites_are_always_present() {
        for s in [
            spec(7, 3, Family::Central, 2),
            spec(5, 2, Family::Scattered, 3),
            spec(13, 11, Family::Central, 1),
        ] {
            let lat = build_carpet_tdm(&s).unwrap();
            let n = lat.side();
            for k in 0..n {
                assert!(lat.is_present(0, k) && lat.is_present(n - 1, k), "{s}");
                assert!(lat.is_present(k, 0) && lat.is_present(k, n - 1), "{s}");
            }
        }
    }

    #[test]
    fn mask_roundtrip() {
        let lat = build_carpet_tdm(&spec(5, 2, Family::Scattered, 2)).unwrap();
        let mut buf = Vec::new();
        write_mask(&mut buf, &lat).unwrap();
        let back = read_mask(buf.as_slice(), "buffer").unwrap();
        assert_eq!(back.spec(), lat.spec());
        assert_eq!(back.mask(), lat.mask());
    }

    #[test]
    fn mask_parse_errors_name_the_line() {
        let text = "5 2 scattered 1\n111111\n11x111\n";
        match read_mask(text.as_bytes(), "bad.mask") {
            Err(Error::Parse { path, line, .. }) => {
                assert_eq!(path, "bad.mask");
                assert_eq!(line, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn pgm_header_and_size() {
        let lat = build_carpet_tdm(&spec(3, 1, Family::Central, 1)).unwrap();
        let mut buf = Vec::new();
        write_pgm(&mut buf, &lat).unwrap();
        assert!(buf.starts_with(b"P5\n4 4\n255\n"));
        assert_eq!(buf.len(), b"P5\n4 4\n255\n".len() + 16);
        assert!(buf[buf.len() - 16..].iter().all(|&px| px == 255));
    }

    fn arbitrary_spec() -> impl Strategy<Value = CarpetSpec> {
        prop_oneof![
            // central: b - l even and b > l, except the degenerate l = 0
            (0u32..=4, 1u32..=6).prop_map(|(l, half)| {
                let b = (l + 2 * half).max(3);
                CarpetSpec {
                    b,
                    l,
                    family: Family::Central,
                    stages: 1,
                }
            }),
            // scattered: b = 2l + 1, with b = 4 for the degenerate l = 0
            (0u32..=6).prop_map(|l| CarpetSpec {
                b: if l == 0 { 4 } else { 2 * l + 1 },
                l,
                family: Family::Scattered,
                stages: 1,
            }),
        ]
        .prop_flat_map(|s| {
            let max_stage = match s.b {
                3 => 4,
                4..=5 => 3,
                _ => 2,
            };
            (Just(s), 1u32..=max_stage)
        })
        .prop_map(|(s, stages)| CarpetSpec { stages, ..s })
        .prop_filter("within size limit", |s| s.side_cells().is_ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prop_builders_agree(s in arbitrary_spec()) {
            let a = build_carpet_tdm(&s).unwrap();
            let b = build_carpet_recursive(&s).unwrap();
            prop_assert_eq!(a.mask(), b.mask());
        }

        #[test]
        fn prop_cell_count_closed_form(s in arbitrary_spec()) {
            let grid = cell_grid(&s).unwrap();
            prop_assert_eq!(grid.occupied_count(), s.expected_cell_count());
        }
    }
}
