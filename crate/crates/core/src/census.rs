//! Exact enumeration over `E^{k+1}`: graph-distance sets and their fibers,
//! pinned distance sets, greedy rich pins and the distance energy.
//!
//! Every census keys on squared distances, through the dense ids of a
//! [`DistanceTable`]. Work is split by the first tuple index; each worker
//! fills its own multiplicity map and the maps are merged by addition, so
//! results do not depend on how many threads ran.

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, DistanceTable, Point, PointSet};
use crate::graph::{is_connected, spanning_tree, Graph};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    /// Worker cap; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Largest number of tuples a census may enumerate.
    pub budget: u64,
    /// Include tuples with repeated points (the literal `E^{k+1}`).
    pub include_degenerate: bool,
    /// Keep per-value multiplicities in the report.
    pub keep_fibers: bool,
    /// Congruence censuses only: admit tuples that become non-singular
    /// after reordering.
    pub any_order: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: None,
            budget: DEFAULT_BUDGET,
            include_degenerate: true,
            keep_fibers: false,
            any_order: false,
        }
    }
}

impl CensusOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn with_fibers(mut self) -> Self {
        self.keep_fibers = true;
        self
    }

    pub fn without_degenerate(mut self) -> Self {
        self.include_degenerate = false;
        self
    }

    /// Runs `f` on a pool capped at `threads` workers, if set.
    pub fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

pub(crate) fn check_budget(n: usize, len: usize, budget: u64) -> Result<u128> {
    let required = (0..len)
        .try_fold(1u128, |acc, _| acc.checked_mul(n as u128))
        .unwrap_or(u128::MAX);
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required)
}

pub(crate) type KeyCounts = HashMap<Box<[u32]>, u64>;

/// Enumerates index tuples of length `len` over `0..n`. `make_visitor`
/// builds one stateful visitor per leading index; a visitor writes the key
/// of a tuple into the buffer and returns whether the tuple counts.
pub(crate) fn count_keys<V, M>(n: usize, len: usize, make_visitor: M) -> KeyCounts
where
    M: Fn() -> V + Sync,
    V: FnMut(&[usize], &mut Vec<u32>) -> bool,
{
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut visit = make_visitor();
            let mut counts = KeyCounts::new();
            let mut idx = vec![0usize; len];
            idx[0] = first;
            let mut key = Vec::new();
            loop {
                key.clear();
                if visit(&idx, &mut key) {
                    match counts.get_mut(key.as_slice()) {
                        Some(c) => *c += 1,
                        None => {
                            counts.insert(key.clone().into_boxed_slice(), 1);
                        }
                    }
                }
                // Odometer over positions 1..len, last position fastest.
                let mut pos = len;
                loop {
                    pos -= 1;
                    if pos == 0 {
                        return counts;
                    }
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        })
        .reduce(KeyCounts::new, merge_counts)
}

fn merge_counts(mut a: KeyCounts, b: KeyCounts) -> KeyCounts {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

pub(crate) fn has_repeat(idx: &[usize]) -> bool {
    (1..idx.len()).any(|i| idx[..i].contains(&idx[i]))
}

/// A fiber: one squared-distance vector and the number of tuples realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    #[serde(serialize_with = "crate::geometry::serialize_rationals")]
    pub value: Vec<BigRational>,
    pub multiplicity: u64,
}

/// Result of a graph-distance census `Δ(G, E^{k+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// Number of distinct squared-distance vectors.
    pub count: usize,
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub include_degenerate: bool,
    pub connected: bool,
    /// Tuples enumerated, i.e. the sum of all fiber sizes.
    pub tuples: u64,
    /// Fibers in increasing key order when requested.
    pub fibers: Option<Vec<Fiber>>,
}

/// Distinct squared edge-length vectors over all tuples of `E^{k+1}`.
pub fn graph_distance_census(g: &Graph, set: &PointSet, opts: &CensusOptions) -> Result<CensusReport> {
    let table = DistanceTable::new(set);
    census_with_table(g, set, &table, opts)
}

pub(crate) fn census_with_table(
    g: &Graph,
    set: &PointSet,
    table: &DistanceTable,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let n = set.len();
    let len = g.num_vertices();
    if len < 1 {
        return Err(Error::precondition("graph has no vertices"));
    }
    check_budget(n, len, opts.budget)?;
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(i, j)| (i - 1, j - 1)).collect();
    let include = opts.include_degenerate;
    let counts = opts.run(|| {
        count_keys(n, len, || {
            |idx: &[usize], key: &mut Vec<u32>| {
                if !include && has_repeat(idx) {
                    return false;
                }
                key.extend(edges.iter().map(|&(i, j)| table.id(idx[i], idx[j])));
                true
            }
        })
    })?;
    let tuples = counts.values().sum();
    let fibers = opts.keep_fibers.then(|| {
        let sorted: BTreeMap<_, _> = counts.iter().collect();
        sorted
            .into_iter()
            .map(|(k, &m)| Fiber {
                value: k.iter().map(|&id| table.value(id).clone()).collect(),
                multiplicity: m,
            })
            .collect()
    });
    Ok(CensusReport {
        count: counts.len(),
        edges: g.edges().to_vec(),
        n,
        k: len - 1,
        d: set.dim(),
        include_degenerate: include,
        connected: is_connected(g),
        tuples,
        fibers,
    })
}

/// Distinct nonzero squared distances from `x` to the rest of `E`.
pub fn pinned_distance_set(set: &PointSet, x: &Point) -> Result<BTreeSet<BigRational>> {
    if !set.contains(x) {
        return Err(Error::precondition(format!("pin {x} is not a point of the set")));
    }
    let mut out = BTreeSet::new();
    for y in set.points() {
        let d = squared_distance(x, y)?;
        if !d.is_zero() {
            out.insert(d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pin {
    pub point: Point,
    /// Index of the pin in the input set.
    pub index: usize,
    /// `|Δ_x(E_current)|` at the moment of extraction.
    pub richness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinReport {
    pub n: usize,
    pub pins: Vec<Pin>,
}

impl PinReport {
    pub fn richness(&self) -> Vec<usize> {
        self.pins.iter().map(|p| p.richness).collect()
    }

    /// Richness value -> number of extracted pins with that richness.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in &self.pins {
            *h.entry(p.richness).or_insert(0) += 1;
        }
        h
    }
}

/// Repeatedly extracts a pin of maximal richness from the shrinking set;
/// ties go to the earliest point in input order.
pub fn rich_pins_greedy(set: &PointSet, count: usize) -> Result<PinReport> {
    let n = set.len();
    if count == 0 || count + 1 > n {
        return Err(Error::precondition(format!(
            "pin count must be in 1..={} for a set of {n} points",
            n.saturating_sub(1)
        )));
    }
    let table = DistanceTable::new(set);
    let mut alive = vec![true; n];
    let mut pins = Vec::with_capacity(count);
    let mut seen = vec![0usize; table.values().len()];
    let mut stamp = 0usize;
    for _ in 0..count {
        let mut best: Option<(usize, usize)> = None;
        for x in (0..n).filter(|&x| alive[x]) {
            stamp += 1;
            let mut richness = 0;
            for y in (0..n).filter(|&y| alive[y] && y != x) {
                let id = table.id(x, y) as usize;
                if seen[id] != stamp {
                    seen[id] = stamp;
                    richness += 1;
                }
            }
            if best.is_none_or(|(_, r)| richness > r) {
                best = Some((x, richness));
            }
        }
        let (x, richness) = best.expect("at least two points remain");
        alive[x] = false;
        pins.push(Pin {
            point: set.points()[x].clone(),
            index: set.source_index()[x],
            richness,
        });
    }
    Ok(PinReport { n, pins })
}

/// Distance energy of a point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Energy {
    pub n: usize,
    /// `#{(x, y, x', y') : |x - y| = |x' - y'| > 0}`.
    pub quadruples: u128,
    /// Ordered pairs of distinct points, `n^2 - n`.
    pub pair_count: u128,
    /// `|Δ°|`, distinct nonzero distances.
    pub distinct_nonzero: usize,
}

impl Energy {
    /// `(n^2 - n)^2 <= |Δ°| Q`, the Cauchy–Schwarz step.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        self.pair_count * self.pair_count <= self.distinct_nonzero as u128 * self.quadruples
    }

    /// `Q / (n^3 ln n)`.
    pub fn normalized(&self) -> f64 {
        let n = self.n as f64;
        self.quadruples as f64 / (n.powi(3) * n.ln())
    }
}

pub fn distance_energy(set: &PointSet) -> Result<Energy> {
    let n = set.len();
    if n < 2 {
        return Err(Error::precondition("distance energy needs at least 2 points"));
    }
    let table = DistanceTable::new(set);
    let mut mult = vec![0u128; table.values().len()];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mult[table.id(i, j) as usize] += 1;
            }
        }
    }
    let quadruples = mult.iter().map(|m| m * m).sum();
    Ok(Energy {
        n,
        quadruples,
        pair_count: (n * n - n) as u128,
        distinct_nonzero: table.distinct_nonzero(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeProjection {
    pub tree_edges: Vec<(usize, usize)>,
    pub tree_count: usize,
    pub full_count: usize,
}

/// Census of `G` and of its lexicographic spanning tree on the same set.
pub fn tree_projection_bound(g: &Graph, set: &PointSet, opts: &CensusOptions) -> Result<TreeProjection> {
    let tree = spanning_tree(g)?;
    let table = DistanceTable::new(set);
    let mut o = opts.clone();
    o.keep_fibers = false;
    let tree_count = census_with_table(&tree, set, &table, &o)?.count;
    let full_count = census_with_table(g, set, &table, &o)?.count;
    assert!(
        tree_count <= full_count,
        "tree census {tree_count} exceeds full census {full_count}"
    );
    Ok(TreeProjection {
        tree_edges: tree.edges().to_vec(),
        tree_count,
        full_count,
    })
}

/// Largest pinned richness over all points of `E`.
pub fn max_richness(set: &PointSet) -> usize {
    let table = DistanceTable::new(set);
    let n = set.len();
    (0..n)
        .map(|x| {
            let ids: BTreeSet<u32> = (0..n).filter(|&y| y != x).map(|y| table.id(x, y)).collect();
            ids.len()
        })
        .max()
        .unwrap_or(0)
}
