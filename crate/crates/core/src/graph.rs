//! Finite multigraphs in dart form: every edge is a pair of mutually reverse
//! darts, so loops, parallel edges, and edge-reversing symmetries are all
//! first-class. Provides the named graph families used across the crate,
//! genus, full automorphism enumeration, invariant forests, admissibility
//! verdicts, and the induced action on the first homology of a graph.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Vertex-count ceiling for the automorphism backtracking search.
pub const MAX_SEARCH_VERTICES: u32 = 14;

/// Ceiling on how many automorphisms `automorphisms` will materialize.
pub const MAX_AUTOMORPHISMS: u128 = 2_000_000;

/// A multigraph on vertices `0..num_vertices` whose darts are paired by a
/// fixed-point-free involution `rev`; `head(d)` is the vertex a dart points
/// to and `tail(d) = head(rev(d))`. An edge is a dart pair `{d, rev(d)}`,
/// identified by its smaller dart and numbered in ascending dart order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiGraph {
    num_vertices: u32,
    head: Vec<u32>,
    rev: Vec<u32>,
    edge_of_dart: Vec<u32>,
    edge_darts: Vec<(u32, u32)>,
}

impl MultiGraph {
    pub fn new(num_vertices: u32, head: Vec<u32>, rev: Vec<u32>) -> Result<Self> {
        if head.len() != rev.len() {
            return Err(Error::Invalid(format!(
                "head has {} darts but rev has {}",
                head.len(),
                rev.len()
            )));
        }
        if head.len() % 2 != 0 {
            return Err(Error::Invalid(format!(
                "dart count must be even, got {}",
                head.len()
            )));
        }
        let darts = head.len();
        for (d, &h) in head.iter().enumerate() {
            if h >= num_vertices {
                return Err(Error::Invalid(format!(
                    "dart {d} has head {h} but there are only {num_vertices} vertices"
                )));
            }
        }
        for (d, &r) in rev.iter().enumerate() {
            if r as usize >= darts {
                return Err(Error::Invalid(format!("rev of dart {d} is out of range")));
            }
            if r as usize == d {
                return Err(Error::Invalid(format!("rev fixes dart {d}")));
            }
            if rev[r as usize] as usize != d {
                return Err(Error::Invalid(format!("rev is not an involution at dart {d}")));
            }
        }
        let mut edge_of_dart = vec![0u32; darts];
        let mut edge_darts = Vec::with_capacity(darts / 2);
        for d in 0..darts {
            if d < rev[d] as usize {
                let e = edge_darts.len() as u32;
                edge_of_dart[d] = e;
                edge_of_dart[rev[d] as usize] = e;
                edge_darts.push((d as u32, rev[d]));
            }
        }
        Ok(MultiGraph { num_vertices, head, rev, edge_of_dart, edge_darts })
    }

    /// Builds the graph with edge `k` realized as darts `2k` (pointing
    /// `u -> w`) and `2k + 1` (pointing back); loops are listed as `(v, v)`.
    pub fn from_edges(num_vertices: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let mut head = Vec::with_capacity(2 * edges.len());
        let mut rev = Vec::with_capacity(2 * edges.len());
        for (k, &(u, w)) in edges.iter().enumerate() {
            head.push(w);
            head.push(u);
            rev.push(2 * k as u32 + 1);
            rev.push(2 * k as u32);
        }
        MultiGraph::new(num_vertices, head, rev)
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_darts(&self) -> u32 {
        self.head.len() as u32
    }

    pub fn num_edges(&self) -> u32 {
        self.edge_darts.len() as u32
    }

    pub fn head(&self, d: u32) -> u32 {
        self.head[d as usize]
    }

    pub fn tail(&self, d: u32) -> u32 {
        self.head[self.rev[d as usize] as usize]
    }

    pub fn rev(&self, d: u32) -> u32 {
        self.rev[d as usize]
    }

    /// The edge a dart belongs to.
    pub fn edge_of(&self, d: u32) -> u32 {
        self.edge_of_dart[d as usize]
    }

    /// The dart pair of an edge, smaller dart first; the smaller dart is the
    /// positive orientation wherever one is needed.
    pub fn edge_darts(&self, e: u32) -> (u32, u32) {
        self.edge_darts[e as usize]
    }

    /// Endpoints `(tail, head)` of the positively oriented dart of an edge.
    pub fn edge_endpoints(&self, e: u32) -> (u32, u32) {
        let (d, _) = self.edge_darts[e as usize];
        (self.tail(d), self.head(d))
    }

    pub fn is_loop(&self, e: u32) -> bool {
        let (u, w) = self.edge_endpoints(e);
        u == w
    }

    /// Number of dart ends at a vertex; a loop contributes two.
    pub fn valence(&self, v: u32) -> usize {
        self.head.iter().filter(|&&h| h == v).count()
    }

    pub fn loops_at(&self, v: u32) -> usize {
        (0..self.num_edges()).filter(|&e| self.edge_endpoints(e) == (v, v)).count()
    }

    /// Darts leaving a vertex, ascending.
    pub fn darts_from(&self, v: u32) -> Vec<u32> {
        (0..self.num_darts()).filter(|&d| self.tail(d) == v).collect()
    }

    pub fn num_components(&self) -> u32 {
        let mut uf = UnionFind::new(self.num_vertices as usize);
        for e in 0..self.num_edges() {
            let (u, w) = self.edge_endpoints(e);
            uf.union(u as usize, w as usize);
        }
        uf.class_count() as u32
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Rank of the first homology: `e - v + c`.
    pub fn genus(&self) -> u32 {
        self.num_edges() + self.num_components() - self.num_vertices
    }

    /// The subgraph spanned by an edge subset: its vertices are exactly the
    /// endpoints of the kept edges, renumbered in ascending order.
    pub fn edge_subgraph(&self, keep: &BTreeSet<u32>) -> Result<MultiGraph> {
        let mut vertices = BTreeSet::new();
        for &e in keep {
            if e >= self.num_edges() {
                return Err(Error::Invalid(format!("edge {e} is out of range")));
            }
            let (u, w) = self.edge_endpoints(e);
            vertices.insert(u);
            vertices.insert(w);
        }
        let index: BTreeMap<u32, u32> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let edges: Vec<(u32, u32)> = keep
            .iter()
            .map(|&e| {
                let (u, w) = self.edge_endpoints(e);
                (index[&u], index[&w])
            })
            .collect();
        MultiGraph::from_edges(vertices.len() as u32, &edges)
    }

    /// Whether an edge subset is cycle-free (so in particular loop-free).
    pub fn is_forest(&self, edges: &BTreeSet<u32>) -> bool {
        let mut uf = UnionFind::new(self.num_vertices as usize);
        for &e in edges {
            let (u, w) = self.edge_endpoints(e);
            if u == w || !uf.union(u as usize, w as usize) {
                return false;
            }
        }
        true
    }

    /// Edges joining two distinct vertices, ascending.
    fn edges_between(&self, u: u32, w: u32) -> Vec<u32> {
        (0..self.num_edges())
            .filter(|&e| {
                let (a, b) = self.edge_endpoints(e);
                (a, b) == (u, w) || (a, b) == (w, u)
            })
            .collect()
    }

    fn loop_edges_at(&self, v: u32) -> Vec<u32> {
        (0..self.num_edges()).filter(|&e| self.edge_endpoints(e) == (v, v)).collect()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: (0..self.num_vertices).collect(),
            edges: (0..self.num_edges()).map(|e| {
                let (u, w) = self.edge_endpoints(e);
                [u, w]
            }).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<MultiGraph> {
        let mut index = BTreeMap::new();
        for (i, &v) in json.vertices.iter().enumerate() {
            if index.insert(v, i as u32).is_some() {
                return Err(Error::Parse(format!("vertex {v} is listed twice")));
            }
        }
        let mut edges = Vec::with_capacity(json.edges.len());
        for &[u, w] in &json.edges {
            let iu = *index.get(&u).ok_or_else(|| {
                Error::Parse(format!("edge endpoint {u} is not a listed vertex"))
            })?;
            let iw = *index.get(&w).ok_or_else(|| {
                Error::Parse(format!("edge endpoint {w} is not a listed vertex"))
            })?;
            edges.push((iu, iw));
        }
        MultiGraph::from_edges(json.vertices.len() as u32, &edges)
    }
}

/// Interchange format: explicit vertex list plus unordered edge pairs, loops
/// written as `[v, v]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
}

/// A graph symmetry: compatible permutations of vertices and darts. The
/// dart permutation determines where each edge goes and whether it is
/// reversed on the way.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GraphMap {
    vertex_map: Vec<u32>,
    dart_map: Vec<u32>,
}

impl GraphMap {
    pub fn new(g: &MultiGraph, vertex_map: Vec<u32>, dart_map: Vec<u32>) -> Result<Self> {
        let map = GraphMap { vertex_map, dart_map };
        map.validate(g)?;
        Ok(map)
    }

    pub fn identity(g: &MultiGraph) -> Self {
        GraphMap {
            vertex_map: (0..g.num_vertices()).collect(),
            dart_map: (0..g.num_darts()).collect(),
        }
    }

    /// Checks that both maps are permutations commuting with head and rev.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        if self.vertex_map.len() != g.num_vertices() as usize {
            return Err(Error::Invalid(format!(
                "vertex map covers {} vertices but the graph has {}",
                self.vertex_map.len(),
                g.num_vertices()
            )));
        }
        if self.dart_map.len() != g.num_darts() as usize {
            return Err(Error::Invalid(format!(
                "dart map covers {} darts but the graph has {}",
                self.dart_map.len(),
                g.num_darts()
            )));
        }
        if !is_permutation(&self.vertex_map) {
            return Err(Error::Invalid("vertex map is not a permutation".into()));
        }
        if !is_permutation(&self.dart_map) {
            return Err(Error::Invalid("dart map is not a permutation".into()));
        }
        for d in 0..g.num_darts() {
            if g.head(self.dart(d)) != self.vertex(g.head(d)) {
                return Err(Error::Invalid(format!(
                    "map does not commute with head at dart {d}"
                )));
            }
            if g.rev(self.dart(d)) != self.dart(g.rev(d)) {
                return Err(Error::Invalid(format!(
                    "map does not commute with rev at dart {d}"
                )));
            }
        }
        Ok(())
    }

    pub fn vertex(&self, v: u32) -> u32 {
        self.vertex_map[v as usize]
    }

    pub fn dart(&self, d: u32) -> u32 {
        self.dart_map[d as usize]
    }

    pub fn image_edge(&self, g: &MultiGraph, e: u32) -> u32 {
        let (d, _) = g.edge_darts(e);
        g.edge_of(self.dart(d))
    }

    /// Composition applying `other` first.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            vertex_map: other.vertex_map.iter().map(|&v| self.vertex_map[v as usize]).collect(),
            dart_map: other.dart_map.iter().map(|&d| self.dart_map[d as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphMap {
        GraphMap {
            vertex_map: invert_permutation(&self.vertex_map),
            dart_map: invert_permutation(&self.dart_map),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| v == i as u32)
            && self.dart_map.iter().enumerate().all(|(i, &d)| d == i as u32)
    }
}

fn is_permutation(map: &[u32]) -> bool {
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x as usize >= map.len() || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn invert_permutation(map: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; map.len()];
    for (i, &x) in map.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// The named families. `n` indexes the family member, not the genus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rose,
    Cage,
    K3n,
    CageWithLoops,
    RoseWithLoops,
    WedgeCages,
    BouquetC3,
    X,
    Complete,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Rose,
        Family::Cage,
        Family::K3n,
        Family::CageWithLoops,
        Family::RoseWithLoops,
        Family::WedgeCages,
        Family::BouquetC3,
        Family::X,
        Family::Complete,
    ];

    pub fn build(self, n: u32) -> Result<MultiGraph> {
        match self {
            Family::Rose => rose(n),
            Family::Cage => cage(n),
            Family::K3n => complete_bipartite(3, n),
            Family::CageWithLoops => cage_with_loops(n),
            Family::RoseWithLoops => rose_with_loops(n),
            Family::WedgeCages => wedge_cages(n),
            Family::BouquetC3 => bouquet_of_triple_cages(n),
            Family::X => cycle_with_loops(n),
            Family::Complete => complete(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Rose => "rose",
            Family::Cage => "cage",
            Family::K3n => "k3n",
            Family::CageWithLoops => "cl",
            Family::RoseWithLoops => "rl",
            Family::WedgeCages => "wedge_cages",
            Family::BouquetC3 => "bouquet_c3",
            Family::X => "x",
            Family::Complete => "complete",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "rose" => Ok(Family::Rose),
            "cage" => Ok(Family::Cage),
            "k3n" => Ok(Family::K3n),
            "cl" => Ok(Family::CageWithLoops),
            "rl" => Ok(Family::RoseWithLoops),
            "wedge_cages" => Ok(Family::WedgeCages),
            "bouquet_c3" => Ok(Family::BouquetC3),
            "x" => Ok(Family::X),
            "complete" => Ok(Family::Complete),
            other => Err(Error::Parse(format!("unknown graph family: {other}"))),
        }
    }
}

fn require(cond: bool, family: &str, min: u32, n: u32) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invalid(format!("family {family} requires n >= {min}, got {n}")))
    }
}

/// One vertex with `n` loops; edge `i` is loop `i`. Genus `n`.
pub fn rose(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "rose", 1, n)?;
    MultiGraph::from_edges(1, &vec![(0, 0); n as usize])
}

/// Two vertices joined by `n` parallel edges, each oriented `0 -> 1`.
/// Genus `n - 1`.
pub fn cage(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "cage", 1, n)?;
    MultiGraph::from_edges(2, &vec![(0, 1); n as usize])
}

/// Complete bipartite graph: left vertices `0..a`, right vertices
/// `a..a + b`, edges grouped by left vertex. Genus `ab - a - b + 1`.
pub fn complete_bipartite(a: u32, b: u32) -> Result<MultiGraph> {
    if a < 1 || b < 1 {
        return Err(Error::Invalid(format!(
            "complete bipartite graph requires both sides nonempty, got {a} and {b}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    MultiGraph::from_edges(a + b, &edges)
}

/// The cage with loops: cage ends `0` and `1`, midpoint `2 + i` on strand
/// `i`; strand `i` contributes edges `3i` (`0` to midpoint), `3i + 1`
/// (midpoint to `1`), and `3i + 2` (the loop). Genus `2n - 1`.
pub fn cage_with_loops(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "cl", 1, n)?;
    let mut edges = Vec::new();
    for i in 0..n {
        let mid = 2 + i;
        edges.push((0, mid));
        edges.push((mid, 1));
        edges.push((mid, mid));
    }
    MultiGraph::from_edges(n + 2, &edges)
}

/// The rose with loops: center `0`, satellite `1 + i`; spoke `i` contributes
/// two parallel edges `3i`, `3i + 1` and the loop `3i + 2`. Genus `2n`.
pub fn rose_with_loops(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "rl", 1, n)?;
    let mut edges = Vec::new();
    for i in 0..n {
        let sat = 1 + i;
        edges.push((0, sat));
        edges.push((0, sat));
        edges.push((sat, sat));
    }
    MultiGraph::from_edges(n + 1, &edges)
}

/// Two `n`-cages wedged at vertex `0`: edges `0..n` join `0` to `1`, edges
/// `n..2n` join `0` to `2`. Genus `2n - 2`.
pub fn wedge_cages(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "wedge_cages", 1, n)?;
    let mut edges = vec![(0, 1); n as usize];
    edges.extend(vec![(0, 2); n as usize]);
    MultiGraph::from_edges(3, &edges)
}

/// Wedge of `n` triple cages at vertex `0`: cage `i` has far vertex `1 + i`
/// and three parallel edges `3i..3i + 3`. Genus `2n`.
pub fn bouquet_of_triple_cages(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "bouquet_c3", 1, n)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for _ in 0..3 {
            edges.push((0, 1 + i));
        }
    }
    MultiGraph::from_edges(n + 1, &edges)
}

/// A cycle of length `n - 1` with one loop at each vertex: cycle edges
/// `0..n - 1` first, then the loops. Genus `n`.
pub fn cycle_with_loops(n: u32) -> Result<MultiGraph> {
    require(n >= 2, "x", 2, n)?;
    let k = n - 1;
    let mut edges: Vec<(u32, u32)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    edges.extend((0..k).map(|i| (i, i)));
    MultiGraph::from_edges(k, &edges)
}

/// Complete graph on `n` vertices, edges in lexicographic order. Genus
/// `(n - 1)(n - 2) / 2`.
pub fn complete(n: u32) -> Result<MultiGraph> {
    require(n >= 1, "complete", 1, n)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    MultiGraph::from_edges(n, &edges)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; false when already merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Shared state of the vertex-level isomorphism search. Candidate images
/// must match on valence and loop count and preserve edge multiplicities
/// toward every vertex placed earlier.
struct VertexSearch<'a> {
    g: &'a MultiGraph,
    mult: Vec<Vec<u32>>,
    class: Vec<(usize, usize)>,
    image: Vec<u32>,
    used: Vec<bool>,
    found: Vec<Vec<u32>>,
}

impl<'a> VertexSearch<'a> {
    fn new(g: &'a MultiGraph) -> Self {
        let nv = g.num_vertices() as usize;
        let mut mult = vec![vec![0u32; nv]; nv];
        for e in 0..g.num_edges() {
            let (u, w) = g.edge_endpoints(e);
            mult[u as usize][w as usize] += 1;
            if u != w {
                mult[w as usize][u as usize] += 1;
            }
        }
        let class = (0..nv).map(|v| (g.valence(v as u32), g.loops_at(v as u32))).collect();
        VertexSearch {
            g,
            mult,
            class,
            image: vec![0; nv],
            used: vec![false; nv],
            found: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Vec<u32>> {
        let nv = self.g.num_vertices() as usize;
        self.place(0, nv);
        self.found
    }

    fn place(&mut self, u: usize, nv: usize) {
        if u == nv {
            self.found.push(self.image.clone());
            return;
        }
        for x in 0..nv {
            if self.used[x] || self.class[u] != self.class[x] {
                continue;
            }
            let consistent = (0..u).all(|w| {
                self.mult[u][w] == self.mult[x][self.image[w] as usize]
            });
            if !consistent {
                continue;
            }
            self.image[u] = x as u32;
            self.used[x] = true;
            self.place(u + 1, nv);
            self.used[x] = false;
        }
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of dart-level extensions of one vertex permutation: independent
/// matchings of parallel classes and signed matchings of loop classes.
fn extension_count(g: &MultiGraph) -> u128 {
    let mut count = 1u128;
    for u in 0..g.num_vertices() {
        let l = g.loops_at(u);
        count *= factorial(l) << l;
        for w in u + 1..g.num_vertices() {
            count *= factorial(g.edges_between(u, w).len());
        }
    }
    count
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations_of(k - 1) {
        for slot in 0..k {
            let mut perm = rest.clone();
            perm.insert(slot, k - 1);
            out.push(perm);
        }
    }
    out
}

/// All ways to extend a vertex permutation to dart permutations, as lists of
/// `(dart, image dart)` pairs contributed by each parallel or loop class.
fn class_choices(g: &MultiGraph, vperm: &[u32]) -> Vec<Vec<Vec<(u32, u32)>>> {
    let mut classes = Vec::new();
    for u in 0..g.num_vertices() {
        let src_loops = g.loop_edges_at(u);
        if !src_loops.is_empty() {
            let tgt_loops = g.loop_edges_at(vperm[u as usize]);
            let mut choices = Vec::new();
            for perm in permutations_of(src_loops.len()) {
                for signs in 0..1u32 << src_loops.len() {
                    let mut pairs = Vec::new();
                    for (i, &e) in src_loops.iter().enumerate() {
                        let (da, db) = g.edge_darts(e);
                        let (ta, tb) = g.edge_darts(tgt_loops[perm[i]]);
                        if signs >> i & 1 == 0 {
                            pairs.push((da, ta));
                            pairs.push((db, tb));
                        } else {
                            pairs.push((da, tb));
                            pairs.push((db, ta));
                        }
                    }
                    choices.push(pairs);
                }
            }
            classes.push(choices);
        }
        for w in u + 1..g.num_vertices() {
            let src = g.edges_between(u, w);
            if src.is_empty() {
                continue;
            }
            let (iu, iw) = (vperm[u as usize], vperm[w as usize]);
            let tgt = g.edges_between(iu, iw);
            let mut choices = Vec::new();
            for perm in permutations_of(src.len()) {
                let mut pairs = Vec::new();
                for (i, &e) in src.iter().enumerate() {
                    let (da, db) = g.edge_darts(e);
                    let (from_u, from_w) = if g.tail(da) == u { (da, db) } else { (db, da) };
                    let (ta, tb) = g.edge_darts(tgt[perm[i]]);
                    let (to_iu, to_iw) = if g.tail(ta) == iu { (ta, tb) } else { (tb, ta) };
                    pairs.push((from_u, to_iu));
                    pairs.push((from_w, to_iw));
                }
                choices.push(pairs);
            }
            classes.push(choices);
        }
    }
    classes
}

fn guard_vertices(g: &MultiGraph) -> Result<()> {
    if g.num_vertices() > MAX_SEARCH_VERTICES {
        return Err(Error::ResourceBound {
            what: "vertices in automorphism search",
            got: u64::from(g.num_vertices()),
            limit: u64::from(MAX_SEARCH_VERTICES),
        });
    }
    Ok(())
}

/// Order of the automorphism group, computed without materializing the maps.
pub fn automorphism_count(g: &MultiGraph) -> Result<u128> {
    guard_vertices(g)?;
    let vperms = VertexSearch::new(g).run();
    Ok(vperms.len() as u128 * extension_count(g))
}

/// The full automorphism group, identity included, enumerated by extending
/// each admissible vertex permutation over its parallel and loop classes.
pub fn automorphisms(g: &MultiGraph) -> Result<Vec<GraphMap>> {
    guard_vertices(g)?;
    let vperms = VertexSearch::new(g).run();
    let total = vperms.len() as u128 * extension_count(g);
    if total > MAX_AUTOMORPHISMS {
        return Err(Error::ResourceBound {
            what: "automorphism group size",
            got: total.min(u64::MAX as u128) as u64,
            limit: MAX_AUTOMORPHISMS as u64,
        });
    }
    let mut maps = Vec::with_capacity(total as usize);
    for vperm in vperms {
        let classes = class_choices(g, &vperm);
        let mut partials: Vec<Vec<u32>> = vec![vec![u32::MAX; g.num_darts() as usize]];
        for choices in &classes {
            let mut next = Vec::with_capacity(partials.len() * choices.len());
            for partial in &partials {
                for choice in choices {
                    let mut dart_map = partial.clone();
                    for &(d, img) in choice {
                        dart_map[d as usize] = img;
                    }
                    next.push(dart_map);
                }
            }
            partials = next;
        }
        for dart_map in partials {
            debug_assert!(dart_map.iter().all(|&d| d != u32::MAX));
            let map = GraphMap { vertex_map: vperm.clone(), dart_map };
            debug_assert!(map.validate(g).is_ok());
            maps.push(map);
        }
    }
    Ok(maps)
}

/// Searches for a nonempty invariant cycle-free edge set under the group
/// generated by `maps`. Edge orbits under the generated group coincide with
/// orbits under the generators, and a union of orbits is a forest only if
/// each orbit is, so the orbit through the least qualifying edge is
/// returned.
pub fn invariant_forest(g: &MultiGraph, maps: &[GraphMap]) -> Result<Option<BTreeSet<u32>>> {
    for map in maps {
        map.validate(g)?;
    }
    let ne = g.num_edges() as usize;
    let mut uf = UnionFind::new(ne);
    for map in maps {
        for e in 0..g.num_edges() {
            uf.union(e as usize, map.image_edge(g, e) as usize);
        }
    }
    let mut orbits: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for e in 0..ne {
        orbits.entry(uf.find(e)).or_default().insert(e as u32);
    }
    for orbit in orbits.values() {
        if g.is_forest(orbit) {
            return Ok(Some(orbit.clone()));
        }
    }
    Ok(None)
}

/// Admissibility verdict; the witness names the violated condition.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub witness: Option<String>,
}

/// A graph is admissible when it is connected, every vertex has valence at
/// least 3, and no nonempty forest is invariant under the full automorphism
/// group.
pub fn is_admissible(g: &MultiGraph) -> Result<AdmissibilityReport> {
    if g.num_vertices() == 0 {
        return Ok(AdmissibilityReport {
            admissible: false,
            witness: Some("graph has no vertices".into()),
        });
    }
    if !g.is_connected() {
        return Ok(AdmissibilityReport {
            admissible: false,
            witness: Some("graph is not connected".into()),
        });
    }
    for v in 0..g.num_vertices() {
        let k = g.valence(v);
        if k < 3 {
            return Ok(AdmissibilityReport {
                admissible: false,
                witness: Some(format!("vertex {v} has valence {k}")),
            });
        }
    }
    let auts = automorphisms(g)?;
    if let Some(forest) = invariant_forest(g, &auts)? {
        let edges: Vec<String> = forest.iter().map(|e| e.to_string()).collect();
        return Ok(AdmissibilityReport {
            admissible: false,
            witness: Some(format!(
                "edges {{{}}} form an invariant forest",
                edges.join(", ")
            )),
        });
    }
    Ok(AdmissibilityReport { admissible: true, witness: None })
}

/// Fundamental cycle data for a connected graph: a BFS spanning tree rooted
/// at vertex 0 and one cycle per non-tree edge, oriented along the edge's
/// smaller dart.
struct CycleBasis {
    cotree: Vec<u32>,
    cycles: Vec<Vec<u32>>,
}

fn cycle_basis(g: &MultiGraph) -> CycleBasis {
    let nv = g.num_vertices() as usize;
    let mut entering: Vec<Option<u32>> = vec![None; nv];
    let mut visited = vec![false; nv];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0u32]);
    let mut tree_edges = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for d in g.darts_from(u) {
            let w = g.head(d);
            if !visited[w as usize] {
                visited[w as usize] = true;
                entering[w as usize] = Some(d);
                tree_edges.insert(g.edge_of(d));
                queue.push_back(w);
            }
        }
    }
    let path_from_root = |v: u32| -> Vec<u32> {
        let mut darts = Vec::new();
        let mut cur = v;
        while let Some(d) = entering[cur as usize] {
            darts.push(d);
            cur = g.tail(d);
        }
        darts.reverse();
        darts
    };
    let cotree: Vec<u32> =
        (0..g.num_edges()).filter(|e| !tree_edges.contains(e)).collect();
    let cycles = cotree
        .iter()
        .map(|&e| {
            let (d, _) = g.edge_darts(e);
            let mut cycle = path_from_root(g.tail(d));
            cycle.push(d);
            let mut back = path_from_root(g.head(d));
            back.reverse();
            cycle.extend(back.into_iter().map(|t| g.rev(t)));
            cycle
        })
        .collect();
    CycleBasis { cotree, cycles }
}

/// Matrix of the map induced by `f` on the first homology of `g`, in the
/// fundamental cycle basis of a BFS spanning tree rooted at vertex 0.
/// Column `k` holds the coordinates of the image of basis cycle `k`.
pub fn h1_action(g: &MultiGraph, f: &GraphMap) -> Result<IntMatrix> {
    if g.num_vertices() == 0 || !g.is_connected() {
        return Err(Error::Invalid(
            "homology action requires a nonempty connected graph".into(),
        ));
    }
    f.validate(g)?;
    let basis = cycle_basis(g);
    let row_of: BTreeMap<u32, usize> =
        basis.cotree.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rank = basis.cotree.len();
    let mut m = IntMatrix::zeros(rank, rank);
    for (col, cycle) in basis.cycles.iter().enumerate() {
        for &d in cycle {
            let q = f.dart(d);
            if let Some(&row) = row_of.get(&g.edge_of(q)) {
                let (positive, _) = g.edge_darts(g.edge_of(q));
                let sign = if q == positive { 1 } else { -1 };
                m.set(row, col, m.get(row, col) + sign);
            }
        }
    }
    Ok(m)
}
