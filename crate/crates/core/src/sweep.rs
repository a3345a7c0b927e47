//! Scaling experiments: run a census over growing point sets and fit the
//! log-log slope of the count against `n`.

use crate::census::{distance_energy, graph_distance_census, CensusOptions};
use crate::congruence::{congruence_census, Group};
use crate::error::{Error, Result};
use crate::geometry::{lattice_point_set, random_point_set, DistanceTable, PointSet};
use crate::graph::Graph;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// Katz–Tardos pinned-distance exponent `(48 - 14e) / (55 - 16e)`.
pub fn katz_tardos_exponent() -> f64 {
    let e = std::f64::consts::E;
    (48.0 - 14.0 * e) / (55.0 - 16.0 * e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    PairDistances,
    GraphDistances,
    Congruence,
    Energy,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::PairDistances => "pair-distances",
            Experiment::GraphDistances => "graph-distances",
            Experiment::Congruence => "congruence",
            Experiment::Energy => "energy",
        })
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair-distances" => Ok(Experiment::PairDistances),
            "graph-distances" => Ok(Experiment::GraphDistances),
            "congruence" => Ok(Experiment::Congruence),
            "energy" => Ok(Experiment::Energy),
            _ => Err(Error::precondition(format!("unknown experiment `{s}`"))),
        }
    }
}

/// Family of point sets a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SetFamily {
    /// `{0..s}^2`; sizes are side lengths `s`.
    Lattice,
    /// Seeded random planar sets; sizes are point counts. The set of size
    /// `n` uses seed `seed + n`.
    Random { bound: u64, seed: u64 },
}

impl SetFamily {
    pub fn build(&self, size: usize) -> Result<PointSet> {
        match *self {
            SetFamily::Lattice => Ok(lattice_point_set(
                u32::try_from(size).map_err(|_| Error::precondition("lattice side too large"))?,
            )),
            SetFamily::Random { bound, seed } => random_point_set(size, 2, bound, seed.wrapping_add(size as u64)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub experiment: Experiment,
    pub family: SetFamily,
    pub sizes: Vec<usize>,
    /// Graph for `graph-distances`.
    pub graph: Option<Graph>,
    /// Tuple length minus one for `congruence`.
    pub k: usize,
    pub group: Group,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// The requested size parameter (lattice side or point count).
    pub size: usize,
    pub n: usize,
    pub count: u128,
    /// `Q / (n^3 ln n)` for energy sweeps.
    pub normalized: Option<f64>,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub experiment: Experiment,
    pub family: SetFamily,
    pub rows: Vec<SweepRow>,
    pub fitted_exponent: f64,
    pub reference_exponent: f64,
    pub reference_note: String,
}

/// Ordinary least-squares slope of `ln count` against `ln n`.
pub fn fit_exponent(points: &[(usize, u128)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::precondition("a fit needs at least 3 sizes"));
    }
    if points.iter().any(|&(n, c)| n == 0 || c == 0) {
        return Err(Error::precondition("log-log fit needs positive sizes and counts"));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, c)| (c as f64).ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::precondition("sizes must not all give the same n"));
    }
    Ok(sxy / sxx)
}

impl SweepResult {
    /// Re-fits the exponent from the emitted rows alone.
    pub fn refit(&self) -> Result<f64> {
        fit_exponent(&self.rows.iter().map(|r| (r.n, r.count)).collect::<Vec<_>>())
    }
}

fn reference(cfg: &SweepConfig) -> Result<(f64, String)> {
    Ok(match cfg.experiment {
        Experiment::PairDistances => (1.0, "distinct distances ~ n / log n in the plane".into()),
        Experiment::GraphDistances => {
            let g = cfg
                .graph
                .as_ref()
                .ok_or_else(|| Error::precondition("graph-distances sweep needs a graph"))?;
            let k = g.num_vertices() - 1;
            (k as f64, format!("conjectured |Δ(G, E^{{k+1}})| ≳ n^k with k = {k}"))
        }
        Experiment::Congruence => (
            cfg.k as f64,
            format!("congruence classes ≳ n^k with k = {} (group {})", cfg.k, cfg.group),
        ),
        Experiment::Energy => (3.0, "Q ≲ n^3 log n".into()),
    })
}

/// Runs the sweep. Runtimes are recorded only when `timed` is set.
pub fn run_sweep(cfg: &SweepConfig, opts: &CensusOptions, timed: bool) -> Result<SweepResult> {
    if cfg.sizes.len() < 3 {
        return Err(Error::precondition("a sweep needs at least 3 sizes"));
    }
    let (reference_exponent, reference_note) = reference(cfg)?;
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let set = cfg.family.build(size)?;
        let n = set.len();
        let start = Instant::now();
        let (count, normalized) = match cfg.experiment {
            Experiment::PairDistances => (DistanceTable::new(&set).distinct_nonzero() as u128, None),
            Experiment::GraphDistances => {
                let g = cfg.graph.as_ref().expect("checked in reference");
                (graph_distance_census(g, &set, opts)?.count as u128, None)
            }
            Experiment::Congruence => (congruence_census(&set, cfg.k, cfg.group, opts)?.class_count as u128, None),
            Experiment::Energy => {
                let e = distance_energy(&set)?;
                (e.quadruples, Some(e.normalized()))
            }
        };
        let runtime_ms = timed.then(|| start.elapsed().as_secs_f64() * 1e3);
        rows.push(SweepRow {
            size,
            n,
            count,
            normalized,
            runtime_ms,
        });
    }
    let fitted_exponent = fit_exponent(&rows.iter().map(|r| (r.n, r.count)).collect::<Vec<_>>())?;
    Ok(SweepResult {
        experiment: cfg.experiment,
        family: cfg.family,
        rows,
        fitted_exponent,
        reference_exponent,
        reference_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_exact_power_laws() {
        let pts: Vec<(usize, u128)> = [2usize, 4, 8, 16].iter().map(|&n| (n, (n * n * n) as u128)).collect();
        assert!((fit_exponent(&pts).unwrap() - 3.0).abs() < 1e-12);
        let flat = [(3, 7), (9, 7), (27, 7)];
        assert!(fit_exponent(&flat).unwrap().abs() < 1e-12);
        assert!(fit_exponent(&[(1, 1), (2, 2)]).is_err());
    }

    #[test]
    fn katz_tardos_value() {
        let v = katz_tardos_exponent();
        assert!((v - 0.8641).abs() < 1e-4, "{v}");
    }

    #[test]
    fn sweep_needs_three_sizes() {
        let cfg = SweepConfig {
            experiment: Experiment::Energy,
            family: SetFamily::Lattice,
            sizes: vec![2, 3],
            graph: None,
            k: 2,
            group: Group::O,
        };
        assert!(run_sweep(&cfg, &CensusOptions::default(), false).is_err());
    }

    #[test]
    fn energy_sweep_rows_refit() {
        let cfg = SweepConfig {
            experiment: Experiment::Energy,
            family: SetFamily::Lattice,
            sizes: vec![2, 3, 4],
            graph: None,
            k: 2,
            group: Group::O,
        };
        let r = run_sweep(&cfg, &CensusOptions::default(), false).unwrap();
        assert_eq!(r.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![9, 16, 25]);
        assert_eq!(r.refit().unwrap(), r.fitted_exponent);
        assert!(r.rows.iter().all(|r| r.runtime_ms.is_none() && r.normalized.is_some()));
    }
}
