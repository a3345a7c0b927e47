//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigcensus::census::{
    distance_energy, graph_distance_census, max_richness, tree_projection_bound, CensusOptions,
};
use rigcensus::congruence::{canonical_form, congruence_census, congruent_exact, Group};
use rigcensus::geometry::{is_nonsingular, lattice_point_set, random_point_set, ConfigTuple, Point, PointSet};
use rigcensus::graph::{
    complete_graph, connected_graphs_up_to_isomorphism, laman_check, path_graph, pebble_game_2_3, Graph,
    PebbleClass,
};
use rigcensus::linalg::RationalMatrix;
use rigcensus::rigidity::{
    classify_generic, generic_rank, is_minimal_by_edge_removal, is_regular_tuple, motion_dims, GenericClass,
    DEFAULT_TRIALS,
};
use rigcensus::sweep::{run_sweep, Experiment, SetFamily, SweepConfig};
use std::collections::HashSet;
use std::panic;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, target {limit:?}");
    Ok(())
}

// Rigidity: generic classification against the pebble game and Laman.

fn c1_rigidity_oracles() -> Outcome {
    let start = Instant::now();
    let seeds = [11u64, 2024, 0xdead_beef];
    let mut graphs = 0usize;
    for v in 3..=7 {
        for g in connected_graphs_up_to_isomorphism(v) {
            graphs += 1;
            let pebble = pebble_game_2_3(&g);
            let laman = laman_check(&g);
            for &seed in &seeds {
                let c = classify_generic(&g, 2, seed).map_err(err)?;
                let expected = match pebble {
                    PebbleClass::MinimallyRigid => GenericClass::MinimallyInfinitesimallyRigid,
                    PebbleClass::RigidWithRedundancy => GenericClass::InfinitesimallyRigid,
                    PebbleClass::Flexible => GenericClass::Flexible,
                };
                ensure!(c.class == expected, "{g:?} seed {seed}: {} vs pebble {pebble}", c.class);
                let minimal = c.class == GenericClass::MinimallyInfinitesimallyRigid;
                ensure!(minimal == laman, "{g:?} seed {seed}: minimal {minimal} vs Laman {laman}");
                let by_removal = is_minimal_by_edge_removal(&g, 2, seed).map_err(err)?;
                ensure!(by_removal == laman, "{g:?} seed {seed}: edge-removal {by_removal} vs Laman {laman}");
            }
        }
    }
    within(start, Duration::from_secs(120), "exhaustive rigidity check")?;
    Ok(format!(
        "{graphs} connected graph classes on 3..=7 vertices x {} seeds, {:.1}s",
        seeds.len(),
        start.elapsed().as_secs_f64()
    ))
}

// Canonical small frameworks, all exact.

fn c2_canonical_examples() -> Outcome {
    let tri = complete_graph(3).map_err(err)?;
    let c = classify_generic(&tri, 2, 1).map_err(err)?;
    ensure!(
        c.class == GenericClass::MinimallyInfinitesimallyRigid && c.generic_rank == 3,
        "triangle: {c:?}"
    );

    let p3 = path_graph(3).map_err(err)?;
    let c = classify_generic(&p3, 2, 1).map_err(err)?;
    ensure!(c.class == GenericClass::Flexible && c.generic_rank == 2, "P3: {c:?}");
    let t = ConfigTuple::from_ints(&[&[0, 0], &[3, 1], &[1, 4]]).map_err(err)?;
    let r = motion_dims(&p3, &t).map_err(err)?;
    ensure!(
        r.rank == 2 && r.motion_dim == 4 && r.trivial_dim == 3 && !r.inf_rigid_at_x,
        "P3 at a generic triangle: {r:?}"
    );

    let k4 = complete_graph(4).map_err(err)?;
    let c = classify_generic(&k4, 2, 1).map_err(err)?;
    ensure!(
        c.class == GenericClass::InfinitesimallyRigid && c.generic_rank == 5 && c.num_edges == 6,
        "K4: {c:?}"
    );

    let k4e = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).map_err(err)?;
    let c = classify_generic(&k4e, 2, 1).map_err(err)?;
    ensure!(c.class == GenericClass::MinimallyInfinitesimallyRigid, "K4-e: {c:?}");

    let c4 = Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).map_err(err)?;
    let line = ConfigTuple::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[3, 0]]).map_err(err)?;
    let at = motion_dims(&c4, &line).map_err(err)?;
    let generic = generic_rank(&c4, 2, 1, DEFAULT_TRIALS).map_err(err)?;
    let regular = is_regular_tuple(&c4, &line, 1).map_err(err)?;
    ensure!(at.rank == 3, "collinear 4-cycle rank {}", at.rank);
    ensure!(generic.rank == 4, "4-cycle generic rank {}", generic.rank);
    ensure!(!regular, "collinear 4-cycle reported regular");

    let (c4g, colt, trig) = (fx("c4.g"), fx("col.t"), fx("tri.g"));
    let out = run_cli(&["rigidity", "--graph", &c4g, "--tuple", &colt, "--no-meta"])?;
    ensure!(
        out.contains("generic rank 4; tuple rank 3; tuple is critical"),
        "CLI output lacks the critical report:\n{out}"
    );
    let out = run_cli(&["rigidity", "--graph", &trig, "--no-meta"])?;
    ensure!(
        out.contains("minimally-infinitesimally-rigid, rank 3"),
        "CLI output lacks the triangle classification:\n{out}"
    );
    Ok("triangle, P3, K4, K4-e, collinear 4-cycle".into())
}

// Congruence: canonical forms under exact rational isometries.

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

struct Isometry {
    linear: RationalMatrix,
    shift: Vec<BigRational>,
    reflection: bool,
}

/// Rotation by a Pythagorean angle, optionally composed with a reflection,
/// plus a rational translation.
fn random_isometry(rng: &mut ChaCha8Rng) -> Isometry {
    let m: i64 = rng.gen_range(2..=12);
    let n: i64 = rng.gen_range(1..m);
    let (mut a, mut b, c) = (m * m - n * n, 2 * m * n, m * m + n * n);
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut a, &mut b);
    }
    if rng.gen_bool(0.5) {
        a = -a;
    }
    if rng.gen_bool(0.5) {
        b = -b;
    }
    let reflection = rng.gen_bool(0.5);
    let s = if reflection { -1 } else { 1 };
    // [[a, -b], [b, a]] * diag(1, s)
    let linear = RationalMatrix::from_rows(vec![
        vec![rat(a, c), rat(-b * s, c)],
        vec![rat(b, c), rat(a * s, c)],
    ]);
    let shift = (0..2)
        .map(|_| rat(rng.gen_range(-500..=500), rng.gen_range(1..=9)))
        .collect();
    Isometry {
        linear,
        shift,
        reflection,
    }
}

fn random_nonsingular(rng: &mut ChaCha8Rng, points: usize) -> Result<ConfigTuple, String> {
    loop {
        let pts: Vec<Point> = (0..points)
            .map(|_| Point::from_ints(&[rng.gen_range(-50..=50), rng.gen_range(-50..=50)]))
            .collect();
        let t = ConfigTuple::new(pts).map_err(err)?;
        if is_nonsingular(&t).map_err(err)? {
            return Ok(t);
        }
    }
}

fn c3_congruence_completeness() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0usize;
    let mut previous: Option<ConfigTuple> = None;
    for i in 0..500 {
        let k = if i % 2 == 0 { 2 } else { 3 };
        let t = random_nonsingular(&mut rng, k + 1)?;
        let cf_o = canonical_form(&t, Group::O).map_err(err)?;
        let cf_so = canonical_form(&t, Group::SO).map_err(err)?;
        for _ in 0..20 {
            let g = random_isometry(&mut rng);
            let image = t.mapped(&g.linear).and_then(|x| x.translated(&g.shift)).map_err(err)?;

            let img_o = canonical_form(&image, Group::O).map_err(err)?;
            let same_o = cf_o.approx_eq(&img_o, TOL);
            ensure!(same_o, "O canonical form moved under an isometry: {t:?} -> {image:?}");
            let exact_o = congruent_exact(&t, &image, Group::O).map_err(err)?;
            ensure!(exact_o == same_o, "O: exact {exact_o} vs canonical {same_o} for {t:?}");

            let img_so = canonical_form(&image, Group::SO).map_err(err)?;
            let same_so = cf_so.approx_eq(&img_so, TOL);
            ensure!(
                same_so == !g.reflection,
                "SO canonical equality {same_so} for reflection {} on {t:?}",
                g.reflection
            );
            let exact_so = congruent_exact(&t, &image, Group::SO).map_err(err)?;
            ensure!(exact_so == same_so, "SO: exact {exact_so} vs canonical {same_so} for {t:?}");
            checks += 4;
        }
        // Unrelated pairs: the two tests must still agree.
        if let Some(p) = previous.filter(|p| p.len() == t.len()) {
            for group in [Group::O, Group::SO] {
                let same = canonical_form(&p, group)
                    .map_err(err)?
                    .approx_eq(&canonical_form(&t, group).map_err(err)?, TOL);
                let exact = congruent_exact(&p, &t, group).map_err(err)?;
                ensure!(same == exact, "{group}: exact {exact} vs canonical {same} on {p:?} / {t:?}");
                checks += 1;
            }
        }
        previous = Some(t);
    }
    Ok(format!("500 tuples x 20 isometries, {checks} comparisons at tol {TOL:e}"))
}

// Census oracles: naive loops over integer points.

fn int_points(set: &PointSet) -> Vec<(i64, i64)> {
    set.points()
        .iter()
        .map(|p| {
            let c = p.to_f64();
            (c[0] as i64, c[1] as i64)
        })
        .collect()
}

fn d2(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)
}

fn cross(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn naive_triangle(p: &[(i64, i64)]) -> usize {
    let mut seen = HashSet::new();
    for &a in p {
        for &b in p {
            for &c in p {
                seen.insert([d2(a, b), d2(b, c), d2(a, c)]);
            }
        }
    }
    seen.len()
}

fn naive_hinge(p: &[(i64, i64)]) -> usize {
    let mut seen = HashSet::new();
    for &a in p {
        for &b in p {
            for &c in p {
                seen.insert([d2(a, b), d2(b, c)]);
            }
        }
    }
    seen.len()
}

fn naive_nonzero_pairs(p: &[(i64, i64)]) -> usize {
    let mut seen = HashSet::new();
    for &a in p {
        for &b in p {
            if a != b {
                seen.insert(d2(a, b));
            }
        }
    }
    seen.len()
}

/// Labelled non-degenerate triangles up to congruence: side-side-side, plus
/// the orientation when reflections are excluded.
fn naive_congruence(p: &[(i64, i64)], oriented: bool) -> usize {
    let mut seen = HashSet::new();
    for &a in p {
        for &b in p {
            for &c in p {
                let s = cross(a, b, c);
                if s != 0 {
                    let o = if oriented { s.signum() } else { 0 };
                    seen.insert([d2(a, b), d2(a, c), d2(b, c), o]);
                }
            }
        }
    }
    seen.len()
}

fn c4_census_oracles() -> Outcome {
    let square = PointSet::parse("0,0\n1,0\n0,1\n1,1\n").map_err(err)?;
    let lattice = lattice_point_set(2);
    let corner = PointSet::parse("0,0\n1,0\n0,1\n").map_err(err)?;
    let opts = CensusOptions::default();

    let tri = complete_graph(3).map_err(err)?;
    let hinge = path_graph(3).map_err(err)?;
    let k2 = complete_graph(2).map_err(err)?;

    let cases: Vec<(&str, usize, usize, usize)> = vec![
        (
            "triangle/unit square",
            10,
            naive_triangle(&int_points(&square)),
            graph_distance_census(&tri, &square, &opts).map_err(err)?.count,
        ),
        (
            "hinge/unit square",
            9,
            naive_hinge(&int_points(&square)),
            graph_distance_census(&hinge, &square, &opts).map_err(err)?.count,
        ),
        (
            "K2/3x3 lattice, nonzero",
            5,
            naive_nonzero_pairs(&int_points(&lattice)),
            graph_distance_census(&k2, &lattice, &opts.clone().without_degenerate())
                .map_err(err)?
                .count,
        ),
        (
            "congruence O",
            3,
            naive_congruence(&int_points(&corner), false),
            congruence_census(&corner, 2, Group::O, &opts).map_err(err)?.class_count,
        ),
        (
            "congruence SO",
            6,
            naive_congruence(&int_points(&corner), true),
            congruence_census(&corner, 2, Group::SO, &opts).map_err(err)?.class_count,
        ),
    ];
    for (name, expected, naive, production) in &cases {
        ensure!(
            naive == expected && production == expected,
            "{name}: expected {expected}, naive {naive}, production {production}"
        );
    }
    Ok(cases
        .iter()
        .map(|(name, e, _, _)| format!("{name} = {e}"))
        .collect::<Vec<_>>()
        .join("; "))
}

// Inequalities over random sets and lattices.

fn check_inequalities(set: &PointSet, with_k4: bool) -> Result<(), String> {
    let n = set.len() as u64;
    let opts = CensusOptions::default();
    let tri = complete_graph(3).map_err(err)?;
    let hinge = path_graph(3).map_err(err)?;

    let full = graph_distance_census(&tri, set, &opts.clone().with_fibers()).map_err(err)?;
    let sub = graph_distance_census(&hinge, set, &opts).map_err(err)?;
    ensure!(sub.count <= full.count, "hinge {} > triangle {}", sub.count, full.count);
    let fibers: u64 = full.fibers.as_ref().map_or(0, |f| f.iter().map(|x| x.multiplicity).sum());
    ensure!(fibers == n.pow(3), "triangle fibers sum to {fibers}, n^3 = {}", n.pow(3));

    let tp = tree_projection_bound(&tri, set, &opts).map_err(err)?;
    ensure!(tp.tree_count <= tp.full_count, "tree projection {tp:?}");

    let r = max_richness(set);
    ensure!(sub.count >= r * r, "hinge {} < max richness^2 = {}", sub.count, r * r);

    let e = distance_energy(set).map_err(err)?;
    ensure!(e.cauchy_schwarz_holds(), "energy Cauchy-Schwarz fails: {e:?}");

    for group in [Group::O, Group::SO] {
        let c = congruence_census(set, 2, group, &opts).map_err(err)?;
        ensure!(c.cauchy_schwarz_holds(), "{group} class Cauchy-Schwarz fails: {c:?}");
        let members: u64 = c.class_size_histogram.iter().map(|(s, m)| s * m).sum();
        ensure!(members == c.nonsingular_count, "{group} class sizes do not cover the tuples");
    }

    if with_k4 {
        let k4 = complete_graph(4).map_err(err)?;
        let full = graph_distance_census(&k4, set, &opts.clone().with_fibers()).map_err(err)?;
        let fibers: u64 = full.fibers.as_ref().map_or(0, |f| f.iter().map(|x| x.multiplicity).sum());
        ensure!(fibers == n.pow(4), "K4 fibers sum to {fibers}, n^4 = {}", n.pow(4));
        for drop in 0..k4.num_edges() {
            let h = k4.without_edge(drop);
            let c = graph_distance_census(&h, set, &opts).map_err(err)?.count;
            ensure!(c <= full.count, "K4 minus edge {drop}: {c} > {}", full.count);
        }
        let c4 = Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)]).map_err(err)?;
        let c = graph_distance_census(&c4, set, &opts).map_err(err)?.count;
        ensure!(c <= full.count, "C4 {c} > K4 {}", full.count);
        let tp = tree_projection_bound(&k4, set, &opts).map_err(err)?;
        ensure!(tp.tree_count <= tp.full_count, "K4 tree projection {tp:?}");
    }
    Ok(())
}

fn c5_inequalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bounds = [3u64, 6, 20, 1000];
    for i in 0..100 {
        let n = rng.gen_range(3..=40);
        let bound = bounds[i % bounds.len()];
        let seed = rng.gen();
        let set = random_point_set(n, 2, bound, seed).map_err(err)?;
        check_inequalities(&set, true).map_err(|e| format!("random set #{i} (n {n}, bound {bound}, seed {seed}): {e}"))?;
    }
    for s in 1..=12 {
        let set = lattice_point_set(s);
        check_inequalities(&set, s <= 5).map_err(|e| format!("lattice s = {s}: {e}"))?;
    }
    Ok("100 random sets (n <= 40) and lattices s = 1..=12".into())
}

// Observational sweeps.

fn c6_sweeps() -> Outcome {
    let opts = CensusOptions::default();
    let limit = Duration::from_secs(300);

    let start = Instant::now();
    let cong = run_sweep(
        &SweepConfig {
            experiment: Experiment::Congruence,
            family: SetFamily::Random { bound: 1000, seed: 6 },
            sizes: vec![20, 30, 40],
            graph: None,
            k: 2,
            group: Group::O,
        },
        &opts,
        false,
    )
    .map_err(err)?;
    within(start, limit, "congruence sweep")?;
    ensure!(cong.fitted_exponent >= 1.9, "congruence exponent {:.4} < 1.9", cong.fitted_exponent);

    let start = Instant::now();
    let pairs = run_sweep(
        &SweepConfig {
            experiment: Experiment::PairDistances,
            family: SetFamily::Lattice,
            sizes: vec![4, 8, 16],
            graph: None,
            k: 1,
            group: Group::O,
        },
        &opts,
        false,
    )
    .map_err(err)?;
    within(start, limit, "pair-distance sweep")?;
    ensure!(
        (0.8..=1.4).contains(&pairs.fitted_exponent),
        "lattice pair-distance exponent {:.4} outside [0.8, 1.4]",
        pairs.fitted_exponent
    );

    let start = Instant::now();
    let energy = run_sweep(
        &SweepConfig {
            experiment: Experiment::Energy,
            family: SetFamily::Lattice,
            sizes: (4..=20).collect(),
            graph: None,
            k: 1,
            group: Group::O,
        },
        &opts,
        false,
    )
    .map_err(err)?;
    within(start, limit, "energy sweep")?;
    let ratios: Vec<f64> = energy.rows.iter().filter_map(|r| r.normalized).collect();
    ensure!(ratios.len() == 17, "missing energy ratios");
    for w in ratios.windows(2) {
        ensure!(w[1] <= w[0], "Q/(n^3 ln n) increased: {ratios:?}");
    }
    ensure!(
        ratios.iter().all(|&r| r > 0.0 && r <= ratios[0]),
        "Q/(n^3 ln n) not bounded by its first value: {ratios:?}"
    );
    Ok(format!(
        "congruence {:.3} >= 1.9; pair distances {:.3} in [0.8, 1.4]; energy ratio {:.4} -> {:.4}",
        cong.fitted_exponent,
        pairs.fitted_exponent,
        ratios[0],
        ratios[ratios.len() - 1]
    ))
}

// Determinism of the binary.

fn fixture_dir() -> PathBuf {
    std::env::temp_dir().join(format!("rigcensus-acceptance-{}", std::process::id()))
}

fn fixture(name: &str) -> PathBuf {
    fixture_dir().join(name)
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn write_fixtures() -> std::io::Result<()> {
    let dir = fixture_dir();
    std::fs::create_dir_all(&dir)?;
    let files = [
        ("tri.g", "v 3\n1 2\n2 3\n1 3\n"),
        ("hinge.g", "v 3\n1 2\n2 3\n"),
        ("c4.g", "v 4\n1 2\n2 3\n3 4\n1 4\n"),
        ("k4.g", "v 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"),
        ("col.t", "0,0\n1,0\n2,0\n3,0\n"),
        ("square.p", "# unit square\n0,0\n1,0\n0,1\n1,1\n"),
    ];
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn run_raw(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rigcensus"))
        .args(args)
        .output()
        .map_err(err)?;
    Ok((out.stdout, out.status.code()))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let (stdout, code) = run_raw(args)?;
    ensure!(code == Some(0), "rigcensus {args:?} exited with {code:?}");
    String::from_utf8(stdout).map_err(err)
}

fn c7_determinism() -> Outcome {
    let (tri, hinge, c4, k4, col, square) =
        (fx("tri.g"), fx("hinge.g"), fx("c4.g"), fx("k4.g"), fx("col.t"), fx("square.p"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["rigidity", "--graph", &k4],
        vec!["rigidity", "--graph", &c4, "--tuple", &col],
        vec!["census", "--graph", &tri, "--points", &square, "--fibers"],
        vec!["census", "--graph", &hinge, "--lattice", "6"],
        vec!["census", "--graph", &k4, "--random", "30", "--no-degenerate"],
        vec!["congruence", "--random", "25", "-k", "2", "--group", "SO"],
        vec!["congruence", "--lattice", "4", "-k", "3", "--any-order"],
        vec!["pins", "--lattice", "5", "--count", "6"],
        vec!["energy", "--lattice", "8"],
        vec!["sweep", "--experiment", "congruence", "--sets", "random", "--sizes", "10,15,20"],
        vec!["sweep", "--experiment", "graph-distances", "--graph", &tri, "--sizes", "2,3,4"],
    ];
    let mut runs = 0;
    for base in &commands {
        for json in [false, true] {
            let mut reference: Option<(Vec<u8>, Option<i32>)> = None;
            for threads in ["1", "4", "1", "4"] {
                let mut args = base.clone();
                args.extend(["--no-meta", "--threads", threads]);
                if json {
                    args.push("--json");
                }
                let out = run_raw(&args)?;
                ensure!(out.1 == Some(0), "{args:?} exited with {:?}", out.1);
                runs += 1;
                match &reference {
                    None => reference = Some(out),
                    Some(r) => ensure!(*r == out, "output of {args:?} differs between runs"),
                }
            }
        }
    }
    Ok(format!("{} invocations over {} commands, text and JSON", runs, commands.len()))
}

fn main() {
    if let Err(e) = write_fixtures() {
        println!("FAIL setup: {e}");
        std::process::exit(1);
    }
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 rigidity oracle agreement", c1_rigidity_oracles),
        ("2 canonical examples", c2_canonical_examples),
        ("3 congruence completeness", c3_congruence_completeness),
        ("4 census oracles", c4_census_oracles),
        ("5 inequality suite", c5_inequalities),
        ("6 sweep sanity", c6_sweeps),
        ("7 determinism", c7_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    let _ = std::fs::remove_dir_all(fixture_dir());
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
