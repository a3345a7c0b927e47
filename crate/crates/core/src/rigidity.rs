//! Distance maps, the rigidity matrix and rank-based rigidity tests.
//!
//! The rigidity matrix is the Jacobian of the squared edge-length map
//! `x -> (|x^i - x^j|^2)_{ij in G}`; its kernel is the space of
//! infinitesimal motions. All ranks here are exact. Generic ranks are
//! certified by evaluating at random integer tuples: a nonzero minor of
//! degree `r` vanishes at a uniform point of `S^{d(k+1)}` with probability at
//! most `r / |S|`, and independent trials multiply those bounds.

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, ConfigTuple};
use crate::graph::{complete_graph, is_connected, Graph};
use crate::linalg::{IntMatrix, RationalMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// Random coordinates are drawn from `[-2^31, 2^31]`.
pub const SAMPLE_HALF_WIDTH: i64 = 1 << 31;
pub const DEFAULT_TRIALS: usize = 3;
/// Largest edge set for which the literal minor sum is evaluated.
pub const MAX_MINOR_SUM_EDGES: usize = 8;
/// Largest tuple for which genericity is checked over all bases.
pub const MAX_GENERICITY_CHECK_POINTS: usize = 6;

fn check_size(g: &Graph, t: &ConfigTuple) -> Result<()> {
    if g.num_vertices() != t.len() {
        return Err(Error::precondition(format!(
            "graph has {} vertices but tuple has {} points",
            g.num_vertices(),
            t.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "form", content = "values")]
pub enum DistanceValues {
    Squared(#[serde(serialize_with = "crate::geometry::serialize_rationals")] Vec<BigRational>),
    Unsquared(Vec<f64>),
}

/// Edge lengths of a framework, in the graph's edge order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceVector {
    pub edges: Vec<(usize, usize)>,
    pub values: DistanceValues,
}

impl DistanceVector {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn distance_map(g: &Graph, t: &ConfigTuple, squared: bool) -> Result<DistanceVector> {
    check_size(g, t)?;
    let sq: Vec<BigRational> = g
        .edges()
        .iter()
        .map(|&(i, j)| squared_distance(t.point(i - 1), t.point(j - 1)))
        .collect::<Result<_>>()?;
    let values = if squared {
        DistanceValues::Squared(sq)
    } else {
        DistanceValues::Unsquared(
            sq.iter()
                .map(|v| crate::geometry::rational_to_f64(v).sqrt())
                .collect(),
        )
    };
    Ok(DistanceVector {
        edges: g.edges().to_vec(),
        values,
    })
}

/// `DF_G(x)`: one row per edge, `d(k+1)` columns. The row of edge `(i, j)`
/// holds `2(x^i - x^j)` in block `i` and `2(x^j - x^i)` in block `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityMatrix {
    dim: usize,
    edges: Vec<(usize, usize)>,
    matrix: RationalMatrix,
}

impl RigidityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        exact_rank(&self.matrix)
    }
}

pub fn rigidity_matrix(g: &Graph, t: &ConfigTuple) -> Result<RigidityMatrix> {
    check_size(g, t)?;
    Ok(build_matrix(g.edges(), t))
}

fn build_matrix(edges: &[(usize, usize)], t: &ConfigTuple) -> RigidityMatrix {
    let d = t.dim();
    let two = BigRational::from_integer(2.into());
    let mut m = RationalMatrix::zeros(edges.len(), d * t.len());
    for (r, &(i, j)) in edges.iter().enumerate() {
        let diff = t.point(i - 1).sub(t.point(j - 1)).expect("uniform dimension");
        for (c, delta) in diff.into_iter().enumerate() {
            let v = &delta * &two;
            m.set(r, (j - 1) * d + c, -v.clone());
            m.set(r, (i - 1) * d + c, v);
        }
    }
    RigidityMatrix {
        dim: d,
        edges: edges.to_vec(),
        matrix: m,
    }
}

/// Exact rank over the rationals.
pub fn exact_rank(m: &RationalMatrix) -> usize {
    m.rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenericClass {
    MinimallyInfinitesimallyRigid,
    InfinitesimallyRigid,
    Flexible,
}

impl fmt::Display for GenericClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenericClass::MinimallyInfinitesimallyRigid => "minimally-infinitesimally-rigid",
            GenericClass::InfinitesimallyRigid => "infinitesimally-rigid",
            GenericClass::Flexible => "flexible",
        })
    }
}

/// Ranks and motion-space dimensions of a framework at one tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub rank: usize,
    /// `dim V(G, x) = d(k+1) - rank`.
    pub motion_dim: usize,
    /// `dim D(x)`, the motions of the complete graph at `x`.
    pub trivial_dim: usize,
    pub inf_rigid_at_x: bool,
    pub classification: Option<GenericClass>,
}

pub fn motion_dims(g: &Graph, t: &ConfigTuple) -> Result<RigidityReport> {
    check_size(g, t)?;
    let cols = t.dim() * t.len();
    let rank = rigidity_matrix(g, t)?.rank();
    let k = complete_graph(t.len())?;
    let trivial_rank = build_matrix(k.edges(), t).rank();
    let motion_dim = cols - rank;
    let trivial_dim = cols - trivial_rank;
    Ok(RigidityReport {
        rank,
        motion_dim,
        trivial_dim,
        inf_rigid_at_x: motion_dim == trivial_dim,
        classification: None,
    })
}

/// Generic rank of `K_v` in `R^d`: a simplex while `v <= d + 1`, otherwise
/// `d v - C(d+1, 2)`.
pub fn complete_generic_rank(v: usize, d: usize) -> usize {
    if v <= d + 1 {
        v * (v - 1) / 2
    } else {
        d * v - d * (d + 1) / 2
    }
}

/// Randomized generic rank with its failure bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    /// Trials actually evaluated; sampling stops early at a proven upper bound.
    pub trials: usize,
    /// Upper bound on the probability that `rank` is below the true generic
    /// rank; zero when `rank` meets a proven upper bound.
    pub failure_bound: f64,
}

fn sample_tuple(rng: &mut ChaCha8Rng, points: usize, d: usize) -> Vec<i64> {
    (0..points * d)
        .map(|_| rng.gen_range(-SAMPLE_HALF_WIDTH..=SAMPLE_HALF_WIDTH))
        .collect()
}

fn integer_rows(edges: &[(usize, usize)], coords: &[i64], d: usize, points: usize) -> IntMatrix {
    IntMatrix::from_fn(edges.len(), d * points, |r, c| {
        let (i, j) = edges[r];
        let (block, axis) = (c / d + 1, c % d);
        let delta = if block == i {
            coords[(i - 1) * d + axis] - coords[(j - 1) * d + axis]
        } else if block == j {
            coords[(j - 1) * d + axis] - coords[(i - 1) * d + axis]
        } else {
            0
        };
        BigInt::from(2 * delta)
    })
}

fn sampled_rank(
    edges: &[(usize, usize)],
    points: usize,
    d: usize,
    seed: u64,
    trials: usize,
) -> Result<GenericRank> {
    if trials == 0 {
        return Err(Error::precondition("generic rank needs at least one trial"));
    }
    if d == 0 {
        return Err(Error::precondition("dimension must be at least 1"));
    }
    let ceiling = edges.len().min(complete_generic_rank(points, d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    let mut run = 0;
    for _ in 0..trials {
        let coords = sample_tuple(&mut rng, points, d);
        run += 1;
        best = best.max(integer_rows(edges, &coords, d, points).rank());
        if best == ceiling {
            break;
        }
    }
    let failure_bound = if best == ceiling {
        0.0
    } else {
        let set_size = (2 * SAMPLE_HALF_WIDTH + 1) as f64;
        // The true rank is at least best + 1 if sampling failed.
        ((best + 1) as f64 / set_size).powi(run as i32)
    };
    Ok(GenericRank {
        rank: best,
        trials: run,
        failure_bound,
    })
}

/// Maximum exact rank of `DF_G` over `trials` seeded random integer tuples.
pub fn generic_rank(g: &Graph, d: usize, seed: u64, trials: usize) -> Result<GenericRank> {
    sampled_rank(g.edges(), g.num_vertices(), d, seed, trials)
}

/// Whether the rows of `DF_{K_{k+1}}` for the edge set `h` are generically
/// independent; the random tuples serve as witnesses.
pub fn is_edge_set_independent(g: &Graph, h: &[(usize, usize)], d: usize, seed: u64) -> Result<bool> {
    let v = g.num_vertices();
    let h = Graph::new(v, h.iter().copied())?;
    Ok(sampled_rank(h.edges(), v, d, seed, DEFAULT_TRIALS)?.rank == h.num_edges())
}

/// Generic classification together with the ranks that decided it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: GenericClass,
    pub generic_rank: usize,
    pub complete_rank: usize,
    pub num_edges: usize,
    pub failure_bound: f64,
}

fn check_classifiable(g: &Graph, d: usize) -> Result<()> {
    if g.num_vertices() <= d {
        return Err(Error::precondition(format!(
            "generic classification needs k+1 >= d+1 = {} vertices (graph has {}); use motion_dims at a tuple instead",
            d + 1,
            g.num_vertices()
        )));
    }
    if !is_connected(g) {
        return Err(Error::precondition("generic classification needs a connected graph"));
    }
    Ok(())
}

fn rigid_rank(v: usize, d: usize, seed: u64) -> Result<usize> {
    let k = complete_graph(v)?;
    let sampled = sampled_rank(k.edges(), v, d, seed, DEFAULT_TRIALS)?.rank;
    let expected = d * v - d * (d + 1) / 2;
    if sampled != expected {
        return Err(Error::GenericityFailure(format!(
            "sampled rank of K_{v} is {sampled}, expected {expected}"
        )));
    }
    Ok(expected)
}

/// Generic infinitesimal rigidity in `R^d`: rigid iff the generic rank of
/// `G` equals that of `K_{k+1}`, minimally so iff additionally every row is
/// independent (`rank = m`).
pub fn classify_generic(g: &Graph, d: usize, seed: u64) -> Result<Classification> {
    check_classifiable(g, d)?;
    let complete_rank = rigid_rank(g.num_vertices(), d, seed)?;
    let gr = generic_rank(g, d, seed, DEFAULT_TRIALS)?;
    let class = if gr.rank < complete_rank {
        GenericClass::Flexible
    } else if gr.rank == g.num_edges() {
        GenericClass::MinimallyInfinitesimallyRigid
    } else {
        GenericClass::InfinitesimallyRigid
    };
    Ok(Classification {
        class,
        generic_rank: gr.rank,
        complete_rank,
        num_edges: g.num_edges(),
        failure_bound: gr.failure_bound,
    })
}

/// Minimality by the definition: `G` is rigid and no single-edge removal
/// leaves a rigid graph.
pub fn is_minimal_by_edge_removal(g: &Graph, d: usize, seed: u64) -> Result<bool> {
    check_classifiable(g, d)?;
    let target = rigid_rank(g.num_vertices(), d, seed)?;
    if generic_rank(g, d, seed, DEFAULT_TRIALS)?.rank < target {
        return Ok(false);
    }
    for e in 0..g.num_edges() {
        if generic_rank(&g.without_edge(e), d, seed, DEFAULT_TRIALS)?.rank == target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `DF_G` attains its generic rank at `t`.
pub fn is_regular_tuple(g: &Graph, t: &ConfigTuple, seed: u64) -> Result<bool> {
    let at = rigidity_matrix(g, t)?.rank();
    Ok(at == generic_rank(g, t.dim(), seed, DEFAULT_TRIALS)?.rank)
}

/// Whether `t` witnesses every generically independent edge set of
/// `K_{k+1}` at once. Checked over all bases of the generic rigidity matroid,
/// so only for tuples of at most six points; `None` beyond that.
pub fn is_generic_tuple(t: &ConfigTuple, seed: u64) -> Result<Option<bool>> {
    let v = t.len();
    if v > MAX_GENERICITY_CHECK_POINTS {
        return Ok(None);
    }
    let d = t.dim();
    let k = complete_graph(v)?;
    let at = build_matrix(k.edges(), t);
    let r = complete_generic_rank(v, d);
    let m = k.num_edges();
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let rows: Vec<(usize, usize)> = subset.iter().map(|&i| k.edges()[i]).collect();
        if sampled_rank(&rows, v, d, seed, DEFAULT_TRIALS)?.rank == r
            && at.matrix.select_rows(&subset).rank() < r
        {
            return Ok(Some(false));
        }
        if !next_combination(&mut subset, m) {
            return Ok(Some(true));
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in (i + 1)..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The literal polynomial `P_H(x)`: sum of squared `|H| x |H|` minors of the
/// rows of `DF_{K_{k+1}}(x)` belonging to `h`. Only for `|H| <= 8`.
pub fn minor_square_sum(h: &[(usize, usize)], t: &ConfigTuple) -> Result<BigRational> {
    if h.is_empty() || h.len() > MAX_MINOR_SUM_EDGES {
        return Err(Error::precondition(format!(
            "minor sum evaluated only for 1..={MAX_MINOR_SUM_EDGES} edges"
        )));
    }
    let hg = Graph::new(t.len(), h.iter().copied())?;
    let rows = build_matrix(hg.edges(), t);
    let size = hg.num_edges();
    let cols = rows.matrix.cols();
    if size > cols {
        return Ok(BigRational::zero());
    }
    let mut pick: Vec<usize> = (0..size).collect();
    let mut total = BigRational::zero();
    loop {
        let sub = RationalMatrix::from_rows(
            (0..size)
                .map(|r| pick.iter().map(|&c| rows.matrix.get(r, c).clone()).collect())
                .collect(),
        );
        let det = crate::linalg::determinant(&sub);
        total += &det * &det;
        if !next_combination(&mut pick, cols) {
            return Ok(total);
        }
    }
}
