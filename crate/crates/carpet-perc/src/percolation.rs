//! Site percolation on a fractal lattice: random occupation, cluster
//! labeling under two connectivity rules, and the modified second moment of
//! the cluster size distribution.

use std::collections::VecDeque;
use std::io::Write;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::SiteLattice;

/// Neighborhood rule used when joining occupied sites into clusters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// Four nearest neighbors (up, down, left, right).
    Nn4,
    /// Nearest plus next-nearest: the full eight-site Moore neighborhood.
    Nnn8,
}

impl Connectivity {
    pub fn as_str(self) -> &'static str {
        match self {
            Connectivity::Nn4 => "nn4",
            Connectivity::Nnn8 => "nnn8",
        }
    }

    /// Offsets to neighbors already visited in a row-major scan.
    fn scan_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Connectivity::Nn4 => &[(0, -1), (-1, 0)],
            Connectivity::Nnn8 => &[(0, -1), (-1, -1), (-1, 0), (-1, 1)],
        }
    }

    /// All neighbor offsets.
    fn all_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Connectivity::Nn4 => &[(0, -1), (-1, 0), (0, 1), (1, 0)],
            Connectivity::Nnn8 => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Connectivity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nn4" => Ok(Connectivity::Nn4),
            "nnn8" => Ok(Connectivity::Nnn8),
            other => Err(Error::invalid(format!(
                "unknown connectivity `{other}` (expected `nn4` or `nnn8`)"
            ))),
        }
    }
}

/// One random occupation of a lattice at probability `p`.
pub struct Configuration<'a> {
    lattice: &'a SiteLattice,
    occupied: Vec<bool>,
    p: f64,
    seed: u64,
}

impl<'a> Configuration<'a> {
    pub fn lattice(&self) -> &'a SiteLattice {
        self.lattice
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_occupied(&self, row: usize, col: usize) -> bool {
        self.occupied[row * self.lattice.side() + col]
    }

    /// Row-major occupation mask (false on absent sites).
    pub fn mask(&self) -> &[bool] {
        &self.occupied
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.iter().filter(|&&s| s).count()
    }

    /// Wrap an explicit occupation mask, e.g. one read back from a dump.
    /// `p` and `seed` are carried as metadata only.
    pub fn from_mask(
        lattice: &'a SiteLattice,
        occupied: Vec<bool>,
        p: f64,
        seed: u64,
    ) -> Result<Self> {
        if occupied.len() != lattice.mask().len() {
            return Err(Error::invalid(format!(
                "occupation mask has {} entries, lattice has {} sites",
                occupied.len(),
                lattice.mask().len()
            )));
        }
        if occupied
            .iter()
            .zip(lattice.mask())
            .any(|(&occ, &present)| occ && !present)
        {
            return Err(Error::invalid(
                "occupation mask marks a site the lattice does not contain",
            ));
        }
        Ok(Configuration {
            lattice,
            occupied,
            p,
            seed,
        })
    }
}

/// Dump a configuration in the plain-text mask format, the occupation mask
/// standing in for the presence mask.
pub fn write_config<W: Write>(mut w: W, config: &Configuration<'_>) -> std::io::Result<()> {
    let spec = config.lattice().spec();
    let side = config.lattice().side();
    writeln!(w, "{} {} {} {}", spec.b, spec.l, spec.family, spec.stages)?;
    let mut row = String::with_capacity(side + 1);
    for i in 0..side {
        row.clear();
        for j in 0..side {
            row.push(if config.is_occupied(i, j) { '1' } else { '0' });
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Occupy each present site independently with probability `p`.
///
/// One variate from the open unit interval is drawn per present site in
/// row-major order, so a given `(lattice, seed)` pair yields reproducible
/// configurations and `p = 0` / `p = 1` are exact.
pub fn occupy<'a>(lattice: &'a SiteLattice, p: f64, seed: u64) -> Result<Configuration<'a>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = lattice.mask();
    let mut occupied = vec![false; mask.len()];
    for (slot, &present) in occupied.iter_mut().zip(mask) {
        if present {
            let y: f64 = rng.sample(Open01);
            *slot = y <= p;
        }
    }
    Ok(Configuration {
        lattice,
        occupied,
        p,
        seed,
    })
}

/// Cluster labeling of a configuration. Labels are canonical: clusters are
/// numbered `1..=count` in row-major order of first appearance; `0` marks
/// unoccupied or absent sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterLabels {
    side: usize,
    labels: Vec<u32>,
    sizes: Vec<u64>,
}

impl ClusterLabels {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn label(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.side + col]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Cluster sizes indexed by `label - 1`.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes.len()
    }
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u64>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind {
            parent: Vec::new(),
            size: Vec::new(),
        }
    }

    fn make_set(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Union by size; the merged component's size is the sum of both.
    fn union(&mut self, a: u32, b: u32) -> u32 {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        ra
    }
}

/// Label clusters with a single row-major scan and a union-find over
/// provisional labels, merging whenever a site touches two distinct ones.
pub fn label_clusters_scan(config: &Configuration<'_>, conn: Connectivity) -> ClusterLabels {
    let side = config.lattice().side();
    let n = side as i64;
    let mut provisional = vec![0u32; side * side]; // provisional label + 1
    let mut uf = UnionFind::new();

    for row in 0..side {
        for col in 0..side {
            if !config.is_occupied(row, col) {
                continue;
            }
            let mut current: Option<u32> = None;
            for &(dr, dc) in conn.scan_offsets() {
                let (r, c) = (row as i64 + dr, col as i64 + dc);
                if r < 0 || c < 0 || r >= n || c >= n {
                    continue;
                }
                let p = provisional[r as usize * side + c as usize];
                if p == 0 {
                    continue;
                }
                let root = uf.find(p - 1);
                current = Some(match current {
                    None => root,
                    Some(cur) => uf.union(cur, root),
                });
            }
            let label = match current {
                // the new site itself grows the cluster it joined by one
                Some(root) => {
                    uf.size[root as usize] += 1;
                    root
                }
                None => uf.make_set(),
            };
            provisional[row * side + col] = label + 1;
        }
    }

    // compact roots into canonical labels in row-major first-appearance order
    let mut canonical: Vec<u32> = vec![0; uf.parent.len()];
    let mut sizes = Vec::new();
    let mut labels = vec![0u32; side * side];
    for (idx, &p) in provisional.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let root = uf.find(p - 1);
        if canonical[root as usize] == 0 {
            sizes.push(uf.size[root as usize]);
            canonical[root as usize] = sizes.len() as u32;
        }
        labels[idx] = canonical[root as usize];
    }

    ClusterLabels {
        side,
        labels,
        sizes,
    }
}

/// Label clusters by breadth-first flood fill; the reference implementation
/// the scan labeling is checked against.
pub fn label_clusters_flood(config: &Configuration<'_>, conn: Connectivity) -> ClusterLabels {
    let side = config.lattice().side();
    let n = side as i64;
    let mut labels = vec![0u32; side * side];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..side * side {
        if labels[start] != 0 || !config.mask()[start] {
            continue;
        }
        let label = sizes.len() as u32 + 1;
        let mut size = 0u64;
        labels[start] = label;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let (row, col) = ((idx / side) as i64, (idx % side) as i64);
            for &(dr, dc) in conn.all_offsets() {
                let (r, c) = (row + dr, col + dc);
                if r < 0 || c < 0 || r >= n || c >= n {
                    continue;
                }
                let nidx = r as usize * side + c as usize;
                if labels[nidx] == 0 && config.mask()[nidx] {
                    labels[nidx] = label;
                    queue.push_back(nidx);
                }
            }
        }
        sizes.push(size);
    }

    ClusterLabels {
        side,
        labels,
        sizes,
    }
}

/// Modified second moment of the cluster size distribution:
/// `sum(s_i^2) / (sum(s_i))^2`. Lies in (0, 1] and equals 1 exactly when a
/// single cluster holds every occupied site.
pub fn second_moment(sizes: &[u64]) -> Result<f64> {
    if sizes.is_empty() {
        return Err(Error::Undefined(
            "second moment needs at least one cluster".into(),
        ));
    }
    let total: f64 = sizes.iter().map(|&s| s as f64).sum();
    let squares: f64 = sizes.iter().map(|&s| (s as f64) * (s as f64)).sum();
    Ok(squares / (total * total))
}

fn cluster_color(label: u32) -> [u8; 3] {
    // cheap integer hash, then keep each channel away from both extremes
    let mut x = label as u64;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^= x >> 31;
    let spread = |byte: u64| (40 + (byte % 196)) as u8;
    [spread(x), spread(x >> 8), spread(x >> 16)]
}

/// Render a labeled configuration as a binary PPM image: absent sites black,
/// present-but-unoccupied sites white, occupied sites colored per cluster.
pub fn write_cluster_ppm<W: Write>(
    mut w: W,
    config: &Configuration<'_>,
    labels: &ClusterLabels,
) -> std::io::Result<()> {
    let side = config.lattice().side();
    write!(w, "P6\n{side} {side}\n255\n")?;
    let mut pixels = Vec::with_capacity(side * side * 3);
    for row in 0..side {
        for col in 0..side {
            let rgb = match labels.label(row, col) {
                0 if config.lattice().is_present(row, col) => [255, 255, 255],
                0 => [0, 0, 0],
                label => cluster_color(label),
            };
            pixels.extend_from_slice(&rgb);
        }
    }
    w.write_all(&pixels)
}
