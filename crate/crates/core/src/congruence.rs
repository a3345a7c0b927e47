//! Congruence classes of labelled point tuples.
//!
//! A non-singular tuple `(v_0, ..., v_k)` is pinned at `v_0`, giving
//! `u_j = v_j - v_0`. The first `d` of these form the frame matrix `A`
//! (as columns) and every later `u_j` is rewritten in that frame as
//! `A c_j = u_j`. Orthogonal maps act on `A` alone, so splitting
//! `A = B C` with `B` orthogonal and `C` upper triangular with positive
//! diagonal leaves `(C, c_{d+1}, ..., c_k)` as the class representative.
//!
//! Counting uses the exact labelled key instead: the full vector of pairwise
//! squared distances, plus the sign of `det A` for rotation-only
//! congruence.

use crate::census::{check_budget, count_keys, CensusOptions};
use crate::error::{Error, Result};
use crate::geometry::{
    prefix_is_independent, rational_to_f64, squared_distance, ConfigTuple, DistanceTable, PointSet,
};
use crate::linalg::{determinant_sign, solve, RationalMatrix};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which isometries count as congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    /// Translations with all orthogonal maps, reflections included.
    O,
    /// Translations with rotations only.
    SO,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::O => "O",
            Group::SO => "SO",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" => Ok(Group::O),
            "SO" | "so" => Ok(Group::SO),
            _ => Err(Error::precondition(format!("unknown group `{s}`, expected O or SO"))),
        }
    }
}

/// `u_j = v_j - v_0` for `j = 1..=k`.
pub fn pin_to_origin(t: &ConfigTuple) -> Vec<Vec<BigRational>> {
    let origin = t.point(0);
    t.points()[1..]
        .iter()
        .map(|p| p.sub(origin).expect("uniform dimension"))
        .collect()
}

/// Frame matrix and frame coefficients of a non-singular tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingFrame {
    /// `d x d`, columns `u_1 .. u_d`.
    pub frame: RationalMatrix,
    /// `c_{d+1} .. c_k`, solving `A c_j = u_j`.
    pub coeffs: Vec<Vec<BigRational>>,
}

fn require_nonsingular(t: &ConfigTuple) -> Result<()> {
    let d = t.dim();
    if t.len() < d + 1 {
        return Err(Error::precondition(format!(
            "congruence needs k >= d: tuple has {} points in dimension {d}",
            t.len()
        )));
    }
    if !prefix_is_independent(&t.points()[..=d]) {
        return Err(Error::precondition("tuple is singular: its first d+1 points are affinely dependent"));
    }
    Ok(())
}

pub fn moving_frame_coords(t: &ConfigTuple) -> Result<MovingFrame> {
    require_nonsingular(t)?;
    let d = t.dim();
    let u = pin_to_origin(t);
    let frame = RationalMatrix::from_rows(
        (0..d).map(|r| (0..d).map(|c| u[c][r].clone()).collect()).collect(),
    );
    let coeffs = u[d..]
        .iter()
        .map(|uj| solve(&frame, uj).expect("frame is invertible"))
        .collect();
    Ok(MovingFrame { frame, coeffs })
}

/// Splits `a` (row-major, square) as `B C` with `B` orthogonal and `C`
/// upper triangular with positive diagonal, by Gram–Schmidt on the columns
/// with one re-orthogonalization pass. Returns `(B, C)` row-major.
pub fn gram_schmidt(a: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let d = a.len();
    let col = |j: usize| -> Vec<f64> { (0..d).map(|r| a[r][j]).collect() };
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut c = vec![vec![0.0; d]; d];
    for j in 0..d {
        let mut v = col(j);
        for _pass in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let r = dot(qi, &v);
                c[i][j] += r;
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= r * qk;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        c[j][j] = norm;
        q.push(v.into_iter().map(|x| x / norm).collect());
    }
    let b = (0..d).map(|r| (0..d).map(|j| q[j][r]).collect()).collect();
    (b, c)
}

/// Representative of a congruence class: `(C, c_{d+1}, ..., c_k)` plus the
/// orientation of the frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalForm {
    /// Upper triangular with strictly positive diagonal, row-major.
    pub c: Vec<Vec<f64>>,
    #[serde(serialize_with = "crate::geometry::serialize_rational_rows")]
    pub frame_coeffs: Vec<Vec<BigRational>>,
    /// Sign of `det A`; only distinguishes classes for [`Group::SO`].
    pub orientation: i8,
    pub group: Group,
}

impl CanonicalForm {
    /// Equality with `C` compared to relative tolerance `tol` and the frame
    /// coefficients compared exactly.
    pub fn approx_eq(&self, other: &CanonicalForm, tol: f64) -> bool {
        if self.group != other.group || self.frame_coeffs != other.frame_coeffs {
            return false;
        }
        if self.group == Group::SO && self.orientation != other.orientation {
            return false;
        }
        self.c.iter().flatten().zip(other.c.iter().flatten()).all(|(a, b)| {
            (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
        }) && self.c.len() == other.c.len()
    }

    pub fn frame_coeffs_f64(&self) -> Vec<Vec<f64>> {
        self.frame_coeffs
            .iter()
            .map(|c| c.iter().map(rational_to_f64).collect())
            .collect()
    }
}

pub fn canonical_form(t: &ConfigTuple, group: Group) -> Result<CanonicalForm> {
    let frame = moving_frame_coords(t)?;
    let d = t.dim();
    let a: Vec<Vec<f64>> = (0..d)
        .map(|r| (0..d).map(|c| rational_to_f64(frame.frame.get(r, c))).collect())
        .collect();
    let (_, c) = gram_schmidt(&a);
    Ok(CanonicalForm {
        c,
        frame_coeffs: frame.coeffs,
        orientation: determinant_sign(&frame.frame),
        group,
    })
}

/// Exact key of a labelled tuple: all `C(k+1, 2)` squared distances in
/// lexicographic pair order, with the frame orientation for [`Group::SO`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactCongruenceKey {
    pub squared: Vec<BigRational>,
    pub orientation: Option<i8>,
}

pub fn congruence_key(t: &ConfigTuple, group: Group) -> Result<ExactCongruenceKey> {
    require_nonsingular(t)?;
    let v = t.len();
    let mut squared = Vec::with_capacity(v * (v - 1) / 2);
    for i in 0..v {
        for j in (i + 1)..v {
            squared.push(squared_distance(t.point(i), t.point(j))?);
        }
    }
    let orientation = match group {
        Group::O => None,
        Group::SO => Some(determinant_sign(&moving_frame_coords(t)?.frame)),
    };
    Ok(ExactCongruenceKey {
        squared,
        orientation,
    })
}

pub fn congruent_exact(t1: &ConfigTuple, t2: &ConfigTuple, group: Group) -> Result<bool> {
    if t1.dim() != t2.dim() || t1.len() != t2.len() {
        return Err(Error::precondition("tuples differ in dimension or size"));
    }
    Ok(congruence_key(t1, group)? == congruence_key(t2, group)?)
}

/// Result of a congruence census `|M_d(k)(E)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub group: Group,
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub any_order: bool,
    pub nonsingular_count: u64,
    pub class_count: usize,
    /// Class size -> number of classes of that size.
    pub class_size_histogram: BTreeMap<u64, u64>,
    /// `N^2` for `N` counted tuples.
    #[serde(serialize_with = "as_string")]
    pub cs_inequality_lhs: u128,
    /// `|M| * Σ λ^2`.
    #[serde(serialize_with = "as_string")]
    pub cs_inequality_rhs: u128,
}

pub(crate) fn as_string<S: Serializer, T: ToString>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CongruenceReport {
    pub fn sum_of_squared_sizes(&self) -> u128 {
        self.class_size_histogram
            .iter()
            .map(|(&size, &classes)| u128::from(size) * u128::from(size) * u128::from(classes))
            .sum()
    }

    pub fn cauchy_schwarz_holds(&self) -> bool {
        self.cs_inequality_lhs <= self.cs_inequality_rhs
    }
}

/// Orientation of `d+1` points given by index; 0 when affinely dependent.
enum Orientation {
    /// Integer coordinates small enough for `i128` determinants in `d <= 3`.
    Small { d: usize, coords: Vec<i64> },
    Exact { set: PointSet },
}

impl Orientation {
    fn new(set: &PointSet) -> Self {
        let d = set.dim();
        match small_integer_coords(set) {
            Some(coords) if d <= 3 => Orientation::Small { d, coords },
            _ => Orientation::Exact { set: set.clone() },
        }
    }

    fn sign(&self, idx: &[usize]) -> i8 {
        match self {
            Orientation::Small { d, coords } => {
                let d = *d;
                let p = |i: usize, a: usize| i128::from(coords[idx[i] * d + a]);
                // Column j of the frame is point j minus point 0.
                let u = |j: usize, a: usize| p(j, a) - p(0, a);
                let det = match d {
                    1 => u(1, 0),
                    2 => u(1, 0) * u(2, 1) - u(2, 0) * u(1, 1),
                    _ => {
                        u(1, 0) * (u(2, 1) * u(3, 2) - u(3, 1) * u(2, 2))
                            - u(2, 0) * (u(1, 1) * u(3, 2) - u(3, 1) * u(1, 2))
                            + u(3, 0) * (u(1, 1) * u(2, 2) - u(2, 1) * u(1, 2))
                    }
                };
                det.signum() as i8
            }
            Orientation::Exact { set } => {
                let d = set.dim();
                let pts = set.points();
                let origin = &pts[idx[0]];
                let cols: Vec<Vec<BigRational>> =
                    (1..=d).map(|j| pts[idx[j]].sub(origin).expect("dimension")).collect();
                let m = RationalMatrix::from_rows(
                    (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect(),
                );
                determinant_sign(&m)
            }
        }
    }
}

fn small_integer_coords(set: &PointSet) -> Option<Vec<i64>> {
    let limit = 1i64 << 30;
    let mut coords = Vec::with_capacity(set.len() * set.dim());
    for c in set.points().iter().flat_map(|p| p.coords()) {
        if !c.denom().is_one() {
            return None;
        }
        let v = c.numer().to_i64().filter(|v| v.abs() < limit)?;
        coords.push(v);
    }
    Some(coords)
}

/// First reordering of `idx` whose leading `d+1` entries are affinely
/// independent: the lexicographically first independent `(d+1)`-subset of
/// positions, in order, followed by the remaining positions in order.
fn reorder_nonsingular(idx: &[usize], d: usize, orient: &Orientation) -> Option<Vec<usize>> {
    let len = idx.len();
    let mut pick: Vec<usize> = (0..=d).collect();
    loop {
        let prefix: Vec<usize> = pick.iter().map(|&p| idx[p]).collect();
        if orient.sign(&prefix) != 0 {
            let mut out = prefix;
            out.extend((0..len).filter(|p| !pick.contains(p)).map(|p| idx[p]));
            return Some(out);
        }
        // Next combination of d+1 positions out of len.
        let r = pick.len();
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if pick[i] < len - r + i {
                pick[i] += 1;
                for j in (i + 1)..r {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Counts congruence classes of non-singular `(k+1)`-tuples of `E`.
pub fn congruence_census(set: &PointSet, k: usize, group: Group, opts: &CensusOptions) -> Result<CongruenceReport> {
    let d = set.dim();
    let n = set.len();
    if k < d {
        return Err(Error::precondition(format!("congruence census needs k >= d (k = {k}, d = {d})")));
    }
    if n < d + 1 {
        return Err(Error::precondition(format!("congruence census needs at least d+1 = {} points", d + 1)));
    }
    let len = k + 1;
    check_budget(n, len, opts.budget)?;
    let table = &DistanceTable::new(set);
    let orient = &Orientation::new(set);
    let any_order = opts.any_order;
    let counts = opts.run(|| {
        count_keys(n, len, || {
            let mut last_prefix: Vec<usize> = Vec::new();
            let mut last_sign = 0i8;
            move |idx: &[usize], key: &mut Vec<u32>| {
                if idx[..=d] != last_prefix[..] {
                    last_prefix.clear();
                    last_prefix.extend_from_slice(&idx[..=d]);
                    last_sign = orient.sign(&last_prefix);
                }
                let reordered: Vec<usize>;
                let (tuple, sign) = if last_sign != 0 {
                    (idx, last_sign)
                } else if any_order {
                    match reorder_nonsingular(idx, d, orient) {
                        Some(r) => {
                            reordered = r;
                            let s = orient.sign(&reordered[..=d]);
                            (&reordered[..], s)
                        }
                        None => return false,
                    }
                } else {
                    return false;
                };
                for i in 0..len {
                    for j in (i + 1)..len {
                        key.push(table.id(tuple[i], tuple[j]));
                    }
                }
                if group == Group::SO {
                    key.push(u32::from(sign > 0));
                }
                true
            }
        })
    })?;
    let mut histogram = BTreeMap::new();
    let mut total = 0u64;
    let mut sum_sq = 0u128;
    for &size in counts.values() {
        *histogram.entry(size).or_insert(0u64) += 1;
        total += size;
        sum_sq += u128::from(size) * u128::from(size);
    }
    let classes = counts.len();
    Ok(CongruenceReport {
        group,
        d,
        k,
        n,
        any_order,
        nonsingular_count: total,
        class_count: classes,
        class_size_histogram: histogram,
        cs_inequality_lhs: u128::from(total) * u128::from(total),
        cs_inequality_rhs: classes as u128 * sum_sq,
    })
}
