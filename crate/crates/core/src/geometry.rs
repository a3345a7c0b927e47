//! Exact points, point sets and configuration tuples.

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

/// A point of `R^d` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<BigRational>);

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::precondition("a point needs at least one coordinate"));
        }
        Ok(Point(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
            .expect("non-empty coordinates")
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Point) -> Result<Vec<BigRational>> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn translate(&self, by: &[BigRational]) -> Result<Point> {
        check_dim(self.dim(), by.len())?;
        Ok(Point(self.0.iter().zip(by).map(|(a, b)| a + b).collect()))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rationals(&self.0, s)
    }
}

/// Rationals render as exact `p/q` strings (integers without a slash).
pub fn serialize_rationals<S: Serializer>(values: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<String> = values.iter().map(ToString::to_string).collect();
    text.serialize(s)
}

pub fn serialize_rational_rows<S: Serializer>(
    rows: &[Vec<BigRational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    text.serialize(s)
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(|m| Error::parse(1, m))?;
        Point::new(coords)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses an integer or a `p/q` rational. Decimal points are rejected.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    if s.is_empty() {
        return Err("empty coordinate".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let parse_int = |t: &str| {
        BigInt::from_str(t).map_err(|_| format!("invalid integer `{t}` in coordinate `{s}`"))
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Exact squared Euclidean distance.
pub fn squared_distance(p: &Point, q: &Point) -> Result<BigRational> {
    check_dim(p.dim(), q.dim())?;
    Ok(p.0
        .iter()
        .zip(&q.0)
        .map(|(a, b)| {
            let d = a - b;
            &d * &d
        })
        .fold(BigRational::zero(), |acc, v| acc + v))
}

/// A finite set `E` of points, all in one dimension.
///
/// Construction removes duplicates and keeps the first occurrence of each
/// point, so the order of `points` follows the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    source_index: Vec<usize>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::precondition("a point set needs at least one point"))?;
        let dim = first.dim();
        let mut seen = HashSet::with_capacity(points.len());
        let mut kept = Vec::with_capacity(points.len());
        let mut source_index = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            check_dim(dim, p.dim())?;
            if seen.insert(p.clone()) {
                kept.push(p);
                source_index.push(i);
            }
        }
        Ok(PointSet {
            dim,
            points: kept,
            source_index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Position of each kept point in the original input.
    pub fn source_index(&self) -> &[usize] {
        &self.source_index
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.position(p).is_some()
    }

    /// Same set without the point at `index`.
    pub fn without(&self, index: usize) -> Option<PointSet> {
        if self.points.len() <= 1 || index >= self.points.len() {
            return None;
        }
        let mut points = self.points.clone();
        let mut source_index = self.source_index.clone();
        points.remove(index);
        source_index.remove(index);
        Some(PointSet {
            dim: self.dim,
            points,
            source_index,
        })
    }

    /// Parses the point-file format: one point per line, comma-separated
    /// integer or `p/q` coordinates, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        PointSet::new(parse_point_lines(text)?)
    }
}

/// Parses point lines without deduplicating (the tuple-file reading).
pub fn parse_point_lines(text: &str) -> Result<Vec<Point>> {
    let mut out: Vec<Point> = Vec::new();
    let mut dim = None;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(|m| Error::parse(line_no, m))?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::parse(
                    line_no,
                    format!("expected {d} coordinates, found {}", coords.len()),
                ))
            }
            _ => {}
        }
        out.push(Point::new(coords).map_err(|e| Error::parse(line_no, e.to_string()))?);
    }
    if out.is_empty() {
        return Err(Error::parse(0, "no points found"));
    }
    Ok(out)
}

/// All integer points of `{0..s}^2` in row-major order.
pub fn lattice_point_set(s: u32) -> PointSet {
    let s = i64::from(s);
    let mut pts = Vec::with_capacity(((s + 1) * (s + 1)) as usize);
    for x in 0..=s {
        for y in 0..=s {
            pts.push(Point::from_ints(&[x, y]));
        }
    }
    PointSet::new(pts).expect("lattice is non-empty")
}

/// `n` distinct integer points drawn uniformly from `[-bound, bound]^d`,
/// reproducible for a fixed seed.
pub fn random_point_set(n: usize, d: usize, bound: u64, seed: u64) -> Result<PointSet> {
    if n == 0 || d == 0 || bound == 0 {
        return Err(Error::precondition("random_point_set needs n, d, bound >= 1"));
    }
    let side = 2 * u128::from(bound) + 1;
    let available = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX);
    if n as u128 > available {
        return Err(Error::InfeasibleSize {
            requested: n,
            available,
        });
    }
    let b = i64::try_from(bound).map_err(|_| Error::precondition("bound too large"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<i64>> = HashSet::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-b..=b)).collect();
        if seen.insert(c.clone()) {
            pts.push(Point::from_ints(&c));
        }
    }
    PointSet::new(pts)
}

/// An ordered `(k+1)`-tuple of points; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigTuple {
    dim: usize,
    points: Vec<Point>,
}

impl ConfigTuple {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::precondition("a configuration tuple needs at least 2 points"));
        }
        let dim = points[0].dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        Ok(ConfigTuple { dim, points })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        ConfigTuple::new(points.iter().map(|c| Point::from_ints(c)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        ConfigTuple::new(parse_point_lines(text)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points, `k + 1`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Applies `p -> p + by` to every point.
    pub fn translated(&self, by: &[BigRational]) -> Result<ConfigTuple> {
        let points = self
            .points
            .iter()
            .map(|p| p.translate(by))
            .collect::<Result<_>>()?;
        ConfigTuple::new(points)
    }

    /// Applies the linear map `p -> m p` (row-major `dim x dim`) to every point.
    pub fn mapped(&self, m: &RationalMatrix) -> Result<ConfigTuple> {
        check_dim(self.dim, m.rows())?;
        check_dim(self.dim, m.cols())?;
        let points = self
            .points
            .iter()
            .map(|p| {
                let coords = (0..self.dim)
                    .map(|r| {
                        m.row(r)
                            .iter()
                            .zip(p.coords())
                            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect();
                Point::new(coords)
            })
            .collect::<Result<_>>()?;
        ConfigTuple::new(points)
    }

    pub fn permuted(&self, order: &[usize]) -> Result<ConfigTuple> {
        ConfigTuple::new(order.iter().map(|&i| self.points[i].clone()).collect())
    }
}

/// Whether the FIRST `d+1` points of the tuple are affinely independent.
///
/// Only the leading `d+1` points are examined; a tuple whose later points
/// would span is still singular if its prefix does not.
pub fn is_nonsingular(t: &ConfigTuple) -> Result<bool> {
    let d = t.dim();
    if t.len() < d + 1 {
        return Err(Error::precondition(format!(
            "non-singularity needs at least d+1 = {} points, tuple has {}",
            d + 1,
            t.len()
        )));
    }
    Ok(prefix_is_independent(&t.points[..=d]))
}

/// Affine independence of exactly `d+1` points in `R^d`.
pub(crate) fn prefix_is_independent(points: &[Point]) -> bool {
    let d = points[0].dim();
    debug_assert_eq!(points.len(), d + 1);
    let rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).expect("same dimension"))
        .collect();
    RationalMatrix::from_rows(rows).rank() == d
}

/// Dense index of the distinct squared distances occurring in a point set.
///
/// Distinct values are sorted increasingly so index order agrees with value
/// order; `table[i * n + j]` is the index of `|p_i - p_j|^2`.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    values: Vec<BigRational>,
    table: Vec<u32>,
}

impl DistanceTable {
    pub fn new(set: &PointSet) -> Self {
        let n = set.len();
        let pts = set.points();
        let mut raw = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                raw.push(squared_distance(&pts[i], &pts[j]).expect("uniform dimension"));
            }
        }
        let mut values = raw.clone();
        values.sort();
        values.dedup();
        let index: HashMap<&BigRational, u32> =
            values.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        let mut table = vec![0u32; n * n];
        let mut it = raw.iter();
        for i in 0..n {
            for j in i..n {
                let id = index[it.next().expect("length")];
                table[i * n + j] = id;
                table[j * n + i] = id;
            }
        }
        DistanceTable { n, values, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn id(&self, i: usize, j: usize) -> u32 {
        self.table[i * self.n + j]
    }

    pub fn value(&self, id: u32) -> &BigRational {
        &self.values[id as usize]
    }

    /// All distinct squared distances, zero included when `n >= 1`.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Number of distinct nonzero squared distances, `|Δ°|`.
    pub fn distinct_nonzero(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}
