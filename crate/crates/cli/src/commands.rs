use crate::cli::{Command, Common, PointSource, SetsArg};
use anyhow::{Context, Result};
use rigcensus::census::{
    distance_energy, graph_distance_census, max_richness, rich_pins_greedy, CensusOptions,
};
use rigcensus::congruence::congruence_census;
use rigcensus::geometry::{lattice_point_set, random_point_set, ConfigTuple, PointSet};
use rigcensus::graph::{is_connected, pebble_game_2_3, Graph};
use rigcensus::rigidity::{
    classify_generic, complete_generic_rank, generic_rank, is_generic_tuple, is_regular_tuple,
    motion_dims, DEFAULT_TRIALS,
};
use rigcensus::sweep::{katz_tardos_exponent, run_sweep, SetFamily, SweepConfig};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// A finished command: its text rendering and its JSON payload.
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    Graph::parse(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_points(src: &PointSource, bound: u64, seed: u64) -> Result<PointSet> {
    if let Some(path) = &src.points {
        let text = read(path)?;
        return PointSet::parse(&text).with_context(|| format!("parsing points {}", path.display()));
    }
    if let Some(s) = src.lattice {
        return Ok(lattice_point_set(s));
    }
    let n = src.random.expect("clap enforces one point source");
    Ok(random_point_set(n, 2, bound, seed)?)
}

fn options(common: &Common) -> CensusOptions {
    CensusOptions {
        threads: common.threads,
        budget: common.budget,
        include_degenerate: !common.no_degenerate,
        keep_fibers: common.fibers,
        any_order: common.any_order,
    }
}

fn bound(p: f64) -> String {
    if p == 0.0 {
        "0".into()
    } else {
        format!("{p:.3e}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(command: &Command, common: &Common) -> Result<Output> {
    match command {
        Command::Rigidity { graph, dim, tuple } => rigidity(common, &read_graph(graph)?, *dim, tuple.as_deref()),
        Command::Census { graph, source, bound } => {
            census(common, &read_graph(graph)?, &read_points(source, *bound, common.seed)?)
        }
        Command::Congruence { source, k, bound } => {
            congruence(common, &read_points(source, *bound, common.seed)?, *k)
        }
        Command::Pins { source, count, bound } => pins(&read_points(source, *bound, common.seed)?, *count),
        Command::Energy { source, bound } => energy(&read_points(source, *bound, common.seed)?),
        Command::Sweep {
            experiment,
            graph,
            sizes,
            k,
            sets,
            bound,
        } => {
            let family = match sets {
                SetsArg::Lattice => SetFamily::Lattice,
                SetsArg::Random => SetFamily::Random {
                    bound: *bound,
                    seed: common.seed,
                },
            };
            let cfg = SweepConfig {
                experiment: (*experiment).into(),
                family,
                sizes: sizes.clone(),
                graph: graph.as_deref().map(read_graph).transpose()?,
                k: *k,
                group: common.group.into(),
            };
            sweep(common, &cfg)
        }
    }
}

fn rigidity(common: &Common, g: &Graph, d: usize, tuple: Option<&Path>) -> Result<Output> {
    let mut text = String::new();
    let v = g.num_vertices();
    let m = g.num_edges();
    writeln!(text, "graph: {v} vertices, {m} edges, d = {d}")?;
    let mut report = serde_json::Map::new();
    report.insert("vertices".into(), json!(v));
    report.insert("edges".into(), json!(m));
    report.insert("d".into(), json!(d));

    let generic = if v > d && is_connected(g) {
        let c = classify_generic(g, d, common.seed)?;
        writeln!(
            text,
            "classification: {}, rank {} (complete rank {}, failure bound {})",
            c.class,
            c.generic_rank,
            c.complete_rank,
            bound(c.failure_bound)
        )?;
        report.insert("classification".into(), serde_json::to_value(&c)?);
        c.generic_rank
    } else {
        let r = generic_rank(g, d, common.seed, DEFAULT_TRIALS)?;
        let why = if v <= d {
            format!("needs more than {d} vertices")
        } else {
            "graph is disconnected".to_string()
        };
        writeln!(
            text,
            "classification: unavailable ({why}); generic rank {} of complete rank {}",
            r.rank,
            complete_generic_rank(v, d)
        )?;
        report.insert("generic_rank".into(), serde_json::to_value(r)?);
        r.rank
    };
    if d == 2 {
        let p = pebble_game_2_3(g);
        writeln!(text, "pebble game (2,3): {p}")?;
        report.insert("pebble_game".into(), json!(p.to_string()));
    }

    if let Some(path) = tuple {
        let t = ConfigTuple::parse(&read(path)?).with_context(|| format!("parsing tuple {}", path.display()))?;
        let r = motion_dims(g, &t)?;
        let regular = is_regular_tuple(g, &t, common.seed)?;
        let status = if !regular {
            "critical".to_string()
        } else {
            match is_generic_tuple(&t, common.seed)? {
                Some(true) => "regular and generic".to_string(),
                Some(false) => "regular, not generic".to_string(),
                None => "regular (genericity checked only up to 6 points)".to_string(),
            }
        };
        writeln!(text, "generic rank {generic}; tuple rank {}; tuple is {status}", r.rank)?;
        writeln!(text, "motion space dimension: {}", r.motion_dim)?;
        writeln!(text, "trivial motion dimension: {}", r.trivial_dim)?;
        writeln!(text, "infinitesimally rigid at tuple: {}", yes_no(r.inf_rigid_at_x))?;
        report.insert("tuple".into(), serde_json::to_value(&r)?);
        report.insert("regular".into(), json!(regular));
        report.insert("tuple_status".into(), json!(status));
    }
    Ok(Output {
        text,
        json: Value::Object(report),
    })
}

fn is_hinge(g: &Graph) -> bool {
    g.num_vertices() == 3 && g.num_edges() == 2
}

fn census(common: &Common, g: &Graph, set: &PointSet) -> Result<Output> {
    let report = graph_distance_census(g, set, &options(common))?;
    let mut text = String::new();
    writeln!(
        text,
        "graph: {} vertices, {} edges; points: {} in dimension {}",
        g.num_vertices(),
        g.num_edges(),
        report.n,
        report.d
    )?;
    writeln!(
        text,
        "tuples: {} ({})",
        report.tuples,
        if report.include_degenerate {
            "repeated points allowed"
        } else {
            "distinct points only"
        }
    )?;
    writeln!(text, "distinct distance vectors: {}", report.count)?;
    let mut payload = serde_json::to_value(&report)?;
    if is_hinge(g) {
        let r = max_richness(set);
        let holds = report.count as u128 >= (r as u128) * (r as u128);
        writeln!(
            text,
            "hinge check: {} >= max pin richness^2 = {}^2 = {}: {}",
            report.count,
            r,
            r * r,
            if holds { "ok" } else { "VIOLATED" }
        )?;
        payload["hinge_check"] = json!({ "max_richness": r, "holds": holds });
    }
    if let Some(fibers) = &report.fibers {
        writeln!(text, "fibers:")?;
        for f in fibers {
            let value: Vec<String> = f.value.iter().map(ToString::to_string).collect();
            writeln!(text, "  ({}) x {}", value.join(", "), f.multiplicity)?;
        }
    }
    Ok(Output { text, json: payload })
}

fn congruence(common: &Common, set: &PointSet, k: usize) -> Result<Output> {
    let report = congruence_census(set, k, common.group.into(), &options(common))?;
    let mut text = String::new();
    writeln!(
        text,
        "group {}, d = {}, k = {}, n = {}{}",
        report.group,
        report.d,
        report.k,
        report.n,
        if report.any_order { ", any order" } else { "" }
    )?;
    writeln!(text, "non-singular tuples: {}", report.nonsingular_count)?;
    writeln!(text, "congruence classes: {}", report.class_count)?;
    writeln!(text, "class size histogram (size: classes):")?;
    for (size, classes) in &report.class_size_histogram {
        writeln!(text, "  {size}: {classes}")?;
    }
    writeln!(
        text,
        "Cauchy-Schwarz: N^2 = {} <= |M| * sum(size^2) = {}: {}",
        report.cs_inequality_lhs,
        report.cs_inequality_rhs,
        if report.cauchy_schwarz_holds() { "ok" } else { "VIOLATED" }
    )?;
    Ok(Output {
        text,
        json: serde_json::to_value(&report)?,
    })
}

fn pins(set: &PointSet, count: usize) -> Result<Output> {
    let report = rich_pins_greedy(set, count)?;
    let kt = katz_tardos_exponent();
    let mut text = String::new();
    writeln!(text, "n = {}, pins = {}", report.n, report.pins.len())?;
    for (step, p) in report.pins.iter().enumerate() {
        writeln!(text, "  {}: ({}) richness {}", step + 1, p.point, p.richness)?;
    }
    writeln!(text, "richness histogram (richness: pins):")?;
    for (r, c) in report.histogram() {
        writeln!(text, "  {r}: {c}")?;
    }
    writeln!(
        text,
        "reference: rich pins have richness >~ n^{kt:.4}; here n^{kt:.4} = {:.2}",
        (report.n as f64).powf(kt)
    )?;
    let mut payload = serde_json::to_value(&report)?;
    payload["richness_histogram"] = serde_json::to_value(report.histogram())?;
    payload["reference_exponent"] = json!(kt);
    Ok(Output { text, json: payload })
}

fn energy(set: &PointSet) -> Result<Output> {
    let e = distance_energy(set)?;
    let mut text = String::new();
    writeln!(text, "n = {}", e.n)?;
    writeln!(text, "energy Q = {}", e.quadruples)?;
    writeln!(text, "distinct nonzero distances: {}", e.distinct_nonzero)?;
    writeln!(
        text,
        "Cauchy-Schwarz: (n^2 - n)^2 = {} <= |D| * Q = {}: {}",
        e.pair_count * e.pair_count,
        e.distinct_nonzero as u128 * e.quadruples,
        if e.cauchy_schwarz_holds() { "ok" } else { "VIOLATED" }
    )?;
    writeln!(text, "Q / (n^3 ln n) = {:.6}", e.normalized())?;
    let mut payload = serde_json::to_value(&e)?;
    payload["quadruples"] = json!(e.quadruples.to_string());
    payload["pair_count"] = json!(e.pair_count.to_string());
    payload["cauchy_schwarz_holds"] = json!(e.cauchy_schwarz_holds());
    payload["normalized"] = json!(e.normalized());
    Ok(Output { text, json: payload })
}

fn sweep(common: &Common, cfg: &SweepConfig) -> Result<Output> {
    let result = run_sweep(cfg, &options(common), !common.no_meta)?;
    let mut text = String::new();
    writeln!(text, "experiment: {}", result.experiment)?;
    let energy = result.rows.iter().any(|r| r.normalized.is_some());
    let timed = result.rows.iter().any(|r| r.runtime_ms.is_some());
    let mut header = format!("{:>6} {:>8} {:>16}", "size", "n", "count");
    if energy {
        header.push_str(&format!(" {:>14}", "Q/(n^3 ln n)"));
    }
    if timed {
        header.push_str(&format!(" {:>12}", "runtime_ms"));
    }
    writeln!(text, "{header}")?;
    for r in &result.rows {
        let mut line = format!("{:>6} {:>8} {:>16}", r.size, r.n, r.count);
        if let Some(q) = r.normalized {
            line.push_str(&format!(" {q:>14.6}"));
        }
        if let Some(ms) = r.runtime_ms {
            line.push_str(&format!(" {ms:>12.1}"));
        }
        writeln!(text, "{line}")?;
    }
    writeln!(text, "fitted exponent: {:.4}", result.fitted_exponent)?;
    writeln!(
        text,
        "reference exponent: {:.4} ({})",
        result.reference_exponent, result.reference_note
    )?;
    let mut payload = serde_json::to_value(&result)?;
    if let Some(rows) = payload["rows"].as_array_mut() {
        for (row, r) in rows.iter_mut().zip(&result.rows) {
            row["count"] = json!(r.count.to_string());
            if r.runtime_ms.is_none() {
                row.as_object_mut().map(|o| o.remove("runtime_ms"));
            }
        }
    }
    Ok(Output { text, json: payload })
}
