//! Combinatorial graphs on vertices `1..=v` with lexicographically ordered
//! edges, plus the plane-rigidity combinatorial oracles.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// An undirected simple graph. Vertices are 1-based; edges `(i, j)` have
/// `i < j` and are kept in lexicographic order, which fixes the component
/// order of distance vectors and rigidity-matrix rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Normalizes `(j, i)` to `(i, j)`, sorts, and rejects loops, duplicates
    /// and out-of-range endpoints.
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == j {
                return Err(Error::precondition(format!("self-loop at vertex {i}")));
            }
            if i < 1 || j > num_vertices {
                return Err(Error::precondition(format!(
                    "edge ({a},{b}) outside vertex range 1..={num_vertices}"
                )));
            }
            out.push((i, j));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::precondition(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
        }
        Ok(Graph {
            num_vertices,
            edges: out,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let e = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Spanning subgraph keeping the edges at the given positions.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let mut edges: Vec<_> = keep.iter().map(|&k| self.edges[k]).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph {
            num_vertices: self.num_vertices,
            edges,
        }
    }

    pub fn without_edge(&self, index: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Graph {
            num_vertices: self.num_vertices,
            edges,
        }
    }

    /// Whether every edge of `self` is an edge of `other` on the same vertex set.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.num_vertices == other.num_vertices
            && self.edges.iter().all(|&(i, j)| other.has_edge(i, j))
    }

    /// Parses the graph file format: `v <n>` then one `i j` edge per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty graph file"))?;
        let num_vertices = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["v", n] => n
                .parse::<usize>()
                .map_err(|_| Error::parse(header_line, format!("invalid vertex count `{n}`")))?,
            _ => return Err(Error::parse(header_line, "expected header `v <num_vertices>`")),
        };
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        for (no, line) in lines {
            let parts: Vec<_> = line.split_whitespace().collect();
            let [a, b] = parts.as_slice() else {
                return Err(Error::parse(no, "expected an edge `i j`"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(no, format!("invalid vertex `{s}`")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a == b || a < 1 || b < 1 || a > num_vertices || b > num_vertices {
                return Err(Error::parse(no, format!("invalid edge ({a},{b})")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::parse(no, format!("duplicate edge ({a},{b})")));
            }
            edges.push((a, b));
        }
        Graph::new(num_vertices, edges).map_err(|e| Error::parse(header_line, e.to_string()))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices + 1];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }
}

impl fmt::Display for Graph {
    /// Renders the graph file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v {}", self.num_vertices)?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

/// `K_v` with all `C(v, 2)` edges in lexicographic order.
pub fn complete_graph(v: usize) -> Result<Graph> {
    if v < 2 {
        return Err(Error::precondition("complete graph needs at least 2 vertices"));
    }
    let edges = (1..=v).flat_map(|i| ((i + 1)..=v).map(move |j| (i, j)));
    Graph::new(v, edges)
}

/// Path `1 - 2 - ... - v`.
pub fn path_graph(v: usize) -> Result<Graph> {
    Graph::new(v, (1..v).map(|i| (i, i + 1)))
}

pub fn is_connected(g: &Graph) -> bool {
    if g.num_vertices <= 1 {
        return true;
    }
    let adj = g.adjacency();
    let mut seen = vec![false; g.num_vertices + 1];
    let mut stack = vec![1];
    seen[1] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.num_vertices
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Lexicographically first spanning tree: edges are scanned in order and
/// kept when they join two components.
pub fn spanning_tree(g: &Graph) -> Result<Graph> {
    if !is_connected(g) {
        return Err(Error::precondition("spanning tree of a disconnected graph"));
    }
    let mut uf = UnionFind::new(g.num_vertices + 1);
    let edges: Vec<_> = g.edges.iter().copied().filter(|&(i, j)| uf.union(i, j)).collect();
    Ok(Graph {
        num_vertices: g.num_vertices,
        edges,
    })
}

/// Exhaustive Laman test: `m = 2v - 3` and no vertex subset of size
/// `v' >= 2` spans more than `2v' - 3` edges. Exponential in `v`; meant for
/// `v <= 12` and as the trusted oracle in tests.
pub fn laman_check(g: &Graph) -> bool {
    let v = g.num_vertices;
    if v < 2 || g.num_edges() != 2 * v - 3 {
        return false;
    }
    assert!(v < 64, "laman_check is exhaustive over vertex subsets");
    let masks: Vec<u64> = g
        .edges
        .iter()
        .map(|&(i, j)| (1u64 << (i - 1)) | (1u64 << (j - 1)))
        .collect();
    for subset in 1u64..(1u64 << v) {
        let size = subset.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let inside = masks.iter().filter(|&&m| m & subset == m).count();
        if inside > 2 * size - 3 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PebbleClass {
    MinimallyRigid,
    RigidWithRedundancy,
    Flexible,
}

impl fmt::Display for PebbleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PebbleClass::MinimallyRigid => "minimally-rigid",
            PebbleClass::RigidWithRedundancy => "rigid-with-redundancy",
            PebbleClass::Flexible => "flexible",
        })
    }
}

/// Outcome of a (2,3)-pebble game run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PebbleGame {
    pub independent: Vec<usize>,
    pub class: PebbleClass,
}

struct Pebbles {
    free: Vec<u8>,
    // out[v] holds heads of edges whose pebble sits on v.
    out: Vec<Vec<usize>>,
}

impl Pebbles {
    /// Moves one free pebble onto `target` by reversing a directed path,
    /// never taking it from `protected`.
    fn fetch(&mut self, target: usize, protected: usize) -> bool {
        let n = self.free.len();
        let mut parent = vec![usize::MAX; n];
        parent[target] = target;
        parent[protected] = protected;
        let mut stack = vec![target];
        let mut found = None;
        'search: while let Some(v) = stack.pop() {
            for &w in &self.out[v] {
                if parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = v;
                if self.free[w] > 0 {
                    found = Some(w);
                    break 'search;
                }
                stack.push(w);
            }
        }
        let Some(mut w) = found else { return false };
        self.free[w] -= 1;
        self.free[target] += 1;
        while w != target {
            let p = parent[w];
            let pos = self.out[p].iter().position(|&x| x == w).expect("edge on path");
            self.out[p].swap_remove(pos);
            self.out[w].push(p);
            w = p;
        }
        true
    }
}

/// Runs the (2,3)-pebble game over the edges in order.
pub fn pebble_game(g: &Graph) -> PebbleGame {
    let n = g.num_vertices + 1;
    let mut st = Pebbles {
        free: vec![2; n],
        out: vec![Vec::new(); n],
    };
    st.free[0] = 0;
    let mut independent = Vec::new();
    for (idx, &(u, v)) in g.edges.iter().enumerate() {
        while st.free[u] < 2 && st.fetch(u, v) {}
        while st.free[v] < 2 && st.fetch(v, u) {}
        if st.free[u] + st.free[v] == 4 {
            st.free[u] -= 1;
            st.out[u].push(v);
            independent.push(idx);
        }
    }
    let target = (2 * g.num_vertices).saturating_sub(3);
    let m = g.num_edges();
    let class = if independent.len() == target && m == target {
        PebbleClass::MinimallyRigid
    } else if independent.len() == target && target < m {
        PebbleClass::RigidWithRedundancy
    } else {
        PebbleClass::Flexible
    };
    PebbleGame { independent, class }
}

pub fn pebble_game_2_3(g: &Graph) -> PebbleClass {
    pebble_game(g).class
}

/// Canonical code of a graph on at most 8 vertices: the largest
/// adjacency bitstring over all relabellings that respect a degree-based
/// vertex partition. Isomorphic graphs get equal codes.
fn canonical_code(v: usize, adj: &[u8]) -> u32 {
    // Vertex invariant: degree, then the sorted multiset of neighbour degrees.
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut inv: Vec<(u32, Vec<u32>, usize)> = (0..v)
        .map(|i| {
            let mut nd: Vec<u32> = (0..v).filter(|&j| adj[i] >> j & 1 == 1).map(|j| deg[j]).collect();
            nd.sort_unstable();
            (deg[i], nd, i)
        })
        .collect();
    inv.sort();
    // Cells of equal invariant, in canonical order.
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for w in 0..v {
        if w > 0 && inv[w].0 == inv[w - 1].0 && inv[w].1 == inv[w - 1].1 {
            cells.last_mut().expect("cell").push(inv[w].2);
        } else {
            cells.push(vec![inv[w].2]);
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(v);
    let mut best = 0u32;
    search_labellings(&cells, 0, &mut order, &mut vec![false; v], adj, &mut best);
    best
}

fn search_labellings(
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut Vec<bool>,
    adj: &[u8],
    best: &mut u32,
) {
    if cell == cells.len() {
        let code = encode(order, adj);
        *best = (*best).max(code);
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&x| used[x]).count();
    if placed == members.len() {
        search_labellings(cells, cell + 1, order, used, adj, best);
        return;
    }
    for &x in members {
        if used[x] {
            continue;
        }
        used[x] = true;
        order.push(x);
        search_labellings(cells, cell, order, used, adj, best);
        order.pop();
        used[x] = false;
    }
}

// Bit for pair (a, b), a < b, in lexicographic pair order; first pair is the
// most significant bit.
fn encode(order: &[usize], adj: &[u8]) -> u32 {
    let v = order.len();
    let mut code = 0u32;
    for a in 0..v {
        for b in (a + 1)..v {
            code = (code << 1) | u32::from(adj[order[a]] >> order[b] & 1);
        }
    }
    code
}

fn decode(v: usize, code: u32) -> Graph {
    let total = v * (v - 1) / 2;
    let mut edges = Vec::new();
    let mut bit = total;
    for a in 0..v {
        for b in (a + 1)..v {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((a + 1, b + 1));
            }
        }
    }
    Graph::new(v, edges).expect("decoded graph")
}

/// One representative of every isomorphism class of graphs on `v` vertices
/// (`1 <= v <= 8`), in canonical order.
pub fn graphs_up_to_isomorphism(v: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&v), "isomorphism census supports 1..=8 vertices");
    if v == 1 {
        return vec![Graph::new(1, []).expect("trivial")];
    }
    let mut all: Vec<u32> = Vec::new();
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    while !level.is_empty() {
        all.extend(level.iter().copied());
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = decode(v, code);
            let mut adj = vec![0u8; v];
            for &(i, j) in g.edges() {
                adj[i - 1] |= 1 << (j - 1);
                adj[j - 1] |= 1 << (i - 1);
            }
            for a in 0..v {
                for b in (a + 1)..v {
                    if adj[a] >> b & 1 == 1 {
                        continue;
                    }
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                    next.insert(canonical_code(v, &adj));
                    adj[a] &= !(1 << b);
                    adj[b] &= !(1 << a);
                }
            }
        }
        level = next;
    }
    all.into_iter().map(|c| decode(v, c)).collect()
}

/// Connected representatives only.
pub fn connected_graphs_up_to_isomorphism(v: usize) -> Vec<Graph> {
    graphs_up_to_isomorphism(v)
        .into_iter()
        .filter(is_connected)
        .collect()
}

/// Every labelled graph on `v` vertices (`2^(C(v,2))` of them), for small `v`.
pub fn all_labelled_graphs(v: usize) -> impl Iterator<Item = Graph> {
    assert!((2..=7).contains(&v), "labelled census supports 2..=7 vertices");
    let pairs: Vec<(usize, usize)> = (1..=v)
        .flat_map(|i| ((i + 1)..=v).map(move |j| (i, j)))
        .collect();
    (0u32..(1u32 << pairs.len())).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(v, edges).expect("valid subset of K_v")
    })
}
