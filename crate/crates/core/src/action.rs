//! Finite group actions on graphs. A `GroupTag` names a finitely presented
//! group (signed permutations, a symmetric group with a commuting flip,
//! alternating, symmetric); a `GroupAction` assigns a graph symmetry to each
//! generator and is only constructible when every defining relation acts as
//! the identity. A catalog builds the standard actions on the named graph
//! families.

use crate::error::{Error, Result};
use crate::graph::{self, Family, GraphMap, MultiGraph};
use crate::presentation::{evaluate_indexed, GroupOps};
use std::collections::{HashSet, VecDeque};
use std::fmt;

/// Ceiling on the closure size used for image orders.
pub const MAX_CLOSURE: usize = 2_000_000;

/// A finitely presented finite group, identified by its defining relations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(tag = "group", content = "degree", rename_all = "snake_case")]
pub enum GroupTag {
    /// `(Z/2)^n x| S_n`: permutations of `n` objects with independent sign
    /// flips. Generators `e1..en` (flips) and `s1..s(n-1)` (adjacent
    /// transpositions).
    Signed(u32),
    /// `S_(n+1) x Z/2`: generators `s1..sn` plus a central `delta`.
    SymmetricWithFlip(u32),
    /// Alternating group on `n` letters, presented on the 3-cycles
    /// `vi = (1, 2, i + 2)` with `vi^3 = (vi vj)^2 = 1`.
    Alternating(u32),
    /// Symmetric group on `n` letters, Coxeter presentation.
    Symmetric(u32),
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Signed(n) => write!(f, "signed permutation group of degree {n}"),
            GroupTag::SymmetricWithFlip(n) => {
                write!(f, "symmetric group of degree {} with central flip", n + 1)
            }
            GroupTag::Alternating(n) => write!(f, "alternating group of degree {n}"),
            GroupTag::Symmetric(n) => write!(f, "symmetric group of degree {n}"),
        }
    }
}

impl GroupTag {
    fn check(&self) -> Result<()> {
        match *self {
            GroupTag::Signed(n) | GroupTag::SymmetricWithFlip(n) | GroupTag::Symmetric(n) => {
                if n < 1 {
                    return Err(Error::Invalid(format!("{self} requires degree >= 1")));
                }
            }
            GroupTag::Alternating(n) => {
                if n < 3 {
                    return Err(Error::Invalid(format!(
                        "the 3-cycle presentation of {self} requires degree >= 3"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u128 {
        fn fact(k: u32) -> u128 {
            (1..=u128::from(k)).product()
        }
        match *self {
            GroupTag::Signed(n) => fact(n) << n,
            GroupTag::SymmetricWithFlip(n) => 2 * fact(n + 1),
            GroupTag::Alternating(n) => fact(n) / 2,
            GroupTag::Symmetric(n) => fact(n),
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match *self {
            GroupTag::Signed(n) => (1..=n)
                .map(|i| format!("e{i}"))
                .chain((1..n).map(|j| format!("s{j}")))
                .collect(),
            GroupTag::SymmetricWithFlip(n) => (1..=n)
                .map(|i| format!("s{i}"))
                .chain(["delta".to_string()])
                .collect(),
            GroupTag::Alternating(n) => (1..=n - 2).map(|i| format!("v{i}")).collect(),
            GroupTag::Symmetric(n) => (1..n).map(|j| format!("s{j}")).collect(),
        }
    }

    /// Defining relations as words over generator indices, each with a
    /// printable form.
    pub fn relations(&self) -> Vec<(String, Vec<(usize, i32)>)> {
        let mut rels = Vec::new();
        match *self {
            GroupTag::Signed(n) => {
                let n = n as usize;
                let s = |j: usize| n + j - 1;
                for i in 1..=n {
                    rels.push((format!("e{i}^2"), vec![(i - 1, 2)]));
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        rels.push((
                            format!("[e{i}, e{j}]"),
                            vec![(i - 1, 1), (j - 1, 1), (i - 1, -1), (j - 1, -1)],
                        ));
                    }
                }
                coxeter_relations(&mut rels, n - 1, |j| n + j);
                for j in 1..n {
                    for i in 1..=n {
                        let swapped = if i == j {
                            j + 1
                        } else if i == j + 1 {
                            j
                        } else {
                            i
                        };
                        rels.push((
                            format!("s{j} e{i} s{j}^-1 e{swapped}^-1"),
                            vec![(s(j), 1), (i - 1, 1), (s(j), -1), (swapped - 1, -1)],
                        ));
                    }
                }
            }
            GroupTag::SymmetricWithFlip(n) => {
                let n = n as usize;
                coxeter_relations(&mut rels, n, |j| j);
                rels.push(("delta^2".to_string(), vec![(n, 2)]));
                for i in 1..=n {
                    rels.push((
                        format!("[delta, s{i}]"),
                        vec![(n, 1), (i - 1, 1), (n, -1), (i - 1, -1)],
                    ));
                }
            }
            GroupTag::Alternating(n) => {
                let k = (n - 2) as usize;
                for i in 1..=k {
                    rels.push((format!("v{i}^3"), vec![(i - 1, 3)]));
                }
                for i in 1..=k {
                    for j in 1..=k {
                        if i != j {
                            rels.push((
                                format!("(v{i} v{j})^2"),
                                vec![(i - 1, 1), (j - 1, 1), (i - 1, 1), (j - 1, 1)],
                            ));
                        }
                    }
                }
            }
            GroupTag::Symmetric(n) => {
                coxeter_relations(&mut rels, n as usize - 1, |j| j);
            }
        }
        rels
    }
}

/// Coxeter relations for adjacent transpositions `s1..sk` located at the
/// generator indices given by `idx` (zero-based slot of `s(j+1)`).
fn coxeter_relations(
    rels: &mut Vec<(String, Vec<(usize, i32)>)>,
    k: usize,
    idx: impl Fn(usize) -> usize,
) {
    for j in 1..=k {
        rels.push((format!("s{j}^2"), vec![(idx(j - 1), 2)]));
    }
    for j in 1..k {
        let braid = vec![(idx(j - 1), 1), (idx(j), 1)];
        rels.push((format!("(s{j} s{})^3", j + 1), braid.repeat(3)));
    }
    for j in 1..=k {
        for l in j + 2..=k {
            let word = vec![(idx(j - 1), 1), (idx(l - 1), 1)];
            rels.push((format!("(s{j} s{l})^2"), word.repeat(2)));
        }
    }
}

/// Group operations on graph symmetries of one fixed graph.
#[derive(Clone, Debug)]
pub struct GraphMapOps {
    identity: GraphMap,
}

impl GraphMapOps {
    pub fn for_graph(g: &MultiGraph) -> Self {
        GraphMapOps { identity: GraphMap::identity(g) }
    }
}

impl GroupOps for GraphMapOps {
    type Elt = GraphMap;

    fn identity(&self) -> GraphMap {
        self.identity.clone()
    }

    fn mul(&self, a: &GraphMap, b: &GraphMap) -> GraphMap {
        a.compose(b)
    }

    fn inv(&self, a: &GraphMap) -> GraphMap {
        a.inverse()
    }

    fn is_identity(&self, a: &GraphMap) -> bool {
        a.is_identity()
    }
}

/// A generator-to-symmetry assignment whose defining relations all act as
/// the identity; checked at construction.
#[derive(Clone, Debug)]
pub struct GroupAction {
    tag: GroupTag,
    graph: MultiGraph,
    maps: Vec<GraphMap>,
}

impl GroupAction {
    pub fn new(tag: GroupTag, graph: MultiGraph, maps: Vec<GraphMap>) -> Result<Self> {
        tag.check()?;
        let names = tag.generator_names();
        if maps.len() != names.len() {
            return Err(Error::Invalid(format!(
                "{} expects {} generators, got {}",
                tag,
                names.len(),
                maps.len()
            )));
        }
        for (name, map) in names.iter().zip(&maps) {
            map.validate(&graph).map_err(|e| {
                Error::IncompatibleAction(format!("generator {name}: {e}"))
            })?;
        }
        let ops = GraphMapOps::for_graph(&graph);
        for (display, word) in tag.relations() {
            let value = evaluate_indexed(&ops, &maps, &word)?;
            if !value.is_identity() {
                return Err(Error::IncompatibleAction(format!(
                    "relation {display} does not act as the identity"
                )));
            }
        }
        Ok(GroupAction { tag, graph, maps })
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn generator_maps(&self) -> &[GraphMap] {
        &self.maps
    }

    pub fn generator(&self, name: &str) -> Option<&GraphMap> {
        self.tag
            .generator_names()
            .iter()
            .position(|n| n == name)
            .map(|i| &self.maps[i])
    }

    /// Evaluates a word over generator indices to a single symmetry.
    pub fn element(&self, word: &[(usize, i32)]) -> Result<GraphMap> {
        let ops = GraphMapOps::for_graph(&self.graph);
        evaluate_indexed(&ops, &self.maps, word)
    }

    /// Size of the subgroup of graph symmetries the generators actually
    /// produce, by closure.
    pub fn image_order(&self) -> Result<u128> {
        let mut seen: HashSet<GraphMap> = HashSet::new();
        let identity = GraphMap::identity(&self.graph);
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for gen in &self.maps {
                let y = gen.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_CLOSURE {
                        return Err(Error::ResourceBound {
                            what: "group closure size",
                            got: seen.len() as u64,
                            limit: MAX_CLOSURE as u64,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len() as u128)
    }

    /// Whether the image has the full group order, i.e. the action has
    /// trivial kernel.
    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self.image_order()? == self.tag.order())
    }
}

/// Catalog variants of the standard actions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionVariant {
    Standard,
    /// Signed generators flip every petal except their own.
    AlphaTwisted,
    /// The same permutation applied to both wedge summands.
    Diagonal,
}

impl fmt::Display for ActionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ActionVariant::Standard => "standard",
            ActionVariant::AlphaTwisted => "alpha_twisted",
            ActionVariant::Diagonal => "diagonal",
        };
        f.write_str(name)
    }
}

fn transposition(len: usize, a: usize, b: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    perm.swap(a, b);
    perm
}

fn three_cycle(len: usize, a: usize, b: usize, c: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    perm[a] = b;
    perm[b] = c;
    perm[c] = a;
    perm
}

/// Rose symmetry from a petal permutation and per-petal flips.
fn rose_map(g: &MultiGraph, perm: &[usize], flip: &[bool]) -> Result<GraphMap> {
    let mut dart_map = vec![0u32; g.num_darts() as usize];
    for (i, &p) in perm.iter().enumerate() {
        let (da, db) = g.edge_darts(i as u32);
        let (ta, tb) = g.edge_darts(p as u32);
        if flip[i] {
            dart_map[da as usize] = tb;
            dart_map[db as usize] = ta;
        } else {
            dart_map[da as usize] = ta;
            dart_map[db as usize] = tb;
        }
    }
    GraphMap::new(g, vec![0], dart_map)
}

/// Cage symmetry from an edge permutation, optionally interchanging the two
/// vertices (which reverses every edge without permuting them further).
fn cage_map(g: &MultiGraph, perm: &[usize], swap_vertices: bool) -> Result<GraphMap> {
    let mut dart_map = vec![0u32; g.num_darts() as usize];
    for (i, &p) in perm.iter().enumerate() {
        let (da, db) = g.edge_darts(i as u32);
        let (ta, tb) = g.edge_darts(p as u32);
        if swap_vertices {
            dart_map[da as usize] = tb;
            dart_map[db as usize] = ta;
        } else {
            dart_map[da as usize] = ta;
            dart_map[db as usize] = tb;
        }
    }
    let vertex_map = if swap_vertices { vec![1, 0] } else { vec![0, 1] };
    GraphMap::new(g, vertex_map, dart_map)
}

/// Wedge-of-two-cages symmetry applying the same edge permutation to both
/// summands.
fn wedge_diagonal_map(g: &MultiGraph, n: usize, perm: &[usize]) -> Result<GraphMap> {
    let mut dart_map = vec![0u32; g.num_darts() as usize];
    for side in 0..2 {
        for (i, &p) in perm.iter().enumerate() {
            let (da, db) = g.edge_darts((side * n + i) as u32);
            let (ta, tb) = g.edge_darts((side * n + p) as u32);
            dart_map[da as usize] = ta;
            dart_map[db as usize] = tb;
        }
    }
    GraphMap::new(g, vec![0, 1, 2], dart_map)
}

/// Cage-with-loops symmetry from a strand permutation and per-strand loop
/// flips; strand `i` carries edges `3i`, `3i + 1` and loop `3i + 2`.
fn strand_map(g: &MultiGraph, perm: &[usize], flip: &[bool]) -> Result<GraphMap> {
    let mut vertex_map: Vec<u32> = vec![0, 1];
    vertex_map.extend(perm.iter().map(|&p| 2 + p as u32));
    let mut dart_map = vec![0u32; g.num_darts() as usize];
    for (i, &p) in perm.iter().enumerate() {
        for leg in 0..2 {
            let (da, db) = g.edge_darts((3 * i + leg) as u32);
            let (ta, tb) = g.edge_darts((3 * p + leg) as u32);
            dart_map[da as usize] = ta;
            dart_map[db as usize] = tb;
        }
        let (da, db) = g.edge_darts((3 * i + 2) as u32);
        let (ta, tb) = g.edge_darts((3 * p + 2) as u32);
        if flip[i] {
            dart_map[da as usize] = tb;
            dart_map[db as usize] = ta;
        } else {
            dart_map[da as usize] = ta;
            dart_map[db as usize] = tb;
        }
    }
    GraphMap::new(g, vertex_map, dart_map)
}

/// Builds a cataloged action. Unsupported combinations are rejected with
/// the obstruction when a structural one is known.
pub fn standard_action(
    tag: GroupTag,
    family: Family,
    variant: ActionVariant,
) -> Result<GroupAction> {
    tag.check()?;
    match (tag, family, variant) {
        (GroupTag::Signed(n), Family::Rose, ActionVariant::Standard)
        | (GroupTag::Signed(n), Family::Rose, ActionVariant::AlphaTwisted) => {
            let g = graph::rose(n)?;
            let n = n as usize;
            let id: Vec<usize> = (0..n).collect();
            let mut maps = Vec::new();
            for i in 0..n {
                let flips: Vec<bool> = (0..n)
                    .map(|j| match variant {
                        ActionVariant::AlphaTwisted => j != i,
                        _ => j == i,
                    })
                    .collect();
                maps.push(rose_map(&g, &id, &flips)?);
            }
            for j in 0..n - 1 {
                maps.push(rose_map(&g, &transposition(n, j, j + 1), &vec![false; n])?);
            }
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::Signed(n), Family::CageWithLoops, ActionVariant::Standard) => {
            let g = graph::cage_with_loops(n)?;
            let n = n as usize;
            let id: Vec<usize> = (0..n).collect();
            let mut maps = Vec::new();
            for i in 0..n {
                let flips: Vec<bool> = (0..n).map(|j| j == i).collect();
                maps.push(strand_map(&g, &id, &flips)?);
            }
            for j in 0..n - 1 {
                maps.push(strand_map(&g, &transposition(n, j, j + 1), &vec![false; n])?);
            }
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::SymmetricWithFlip(n), Family::Cage, ActionVariant::Standard) => {
            let g = graph::cage(n + 1)?;
            let k = (n + 1) as usize;
            let mut maps = Vec::new();
            for j in 0..n as usize {
                maps.push(cage_map(&g, &transposition(k, j, j + 1), false)?);
            }
            let id: Vec<usize> = (0..k).collect();
            maps.push(cage_map(&g, &id, true)?);
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::Alternating(n), Family::Rose, ActionVariant::Standard) => {
            let g = graph::rose(n)?;
            let n = n as usize;
            let mut maps = Vec::new();
            for i in 0..n - 2 {
                let perm = three_cycle(n, 0, 1, i + 2);
                maps.push(rose_map(&g, &perm, &vec![false; n])?);
            }
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::Alternating(n), Family::Cage, ActionVariant::Standard) => {
            let g = graph::cage(n)?;
            let n = n as usize;
            let mut maps = Vec::new();
            for i in 0..n - 2 {
                maps.push(cage_map(&g, &three_cycle(n, 0, 1, i + 2), false)?);
            }
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::Alternating(n), Family::WedgeCages, ActionVariant::Diagonal) => {
            let g = graph::wedge_cages(n)?;
            let n = n as usize;
            let mut maps = Vec::new();
            for i in 0..n - 2 {
                maps.push(wedge_diagonal_map(&g, n, &three_cycle(n, 0, 1, i + 2))?);
            }
            GroupAction::new(tag, g, maps)
        }
        (GroupTag::Signed(n), Family::K3n, _) => Err(Error::IncompatibleAction(format!(
            "the full symmetry group of a 3-by-{n} complete bipartite graph has order \
             6 * {n}!, smaller than the signed permutation group of degree {n}"
        ))),
        (tag, family, variant) => Err(Error::IncompatibleAction(format!(
            "no cataloged action of the {tag} on family {family} with variant {variant}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::h1_action;
    use crate::matrix::IntMatrix;

    #[test]
    fn presentation_orders_are_realized_by_standard_actions() {
        for n in 1..=4u32 {
            let action =
                standard_action(GroupTag::Signed(n), Family::Rose, ActionVariant::Standard)
                    .unwrap();
            assert_eq!(action.image_order().unwrap(), action.tag().order());
            assert!(action.is_faithful().unwrap());
        }
        for n in 2..=4u32 {
            let action = standard_action(
                GroupTag::SymmetricWithFlip(n),
                Family::Cage,
                ActionVariant::Standard,
            )
            .unwrap();
            assert_eq!(action.image_order().unwrap(), action.tag().order());
            assert!(action.is_faithful().unwrap());
        }
        for n in 3..=5u32 {
            let action =
                standard_action(GroupTag::Alternating(n), Family::Rose, ActionVariant::Standard)
                    .unwrap();
            assert_eq!(action.image_order().unwrap(), action.tag().order());
        }
    }

    #[test]
    fn group_orders_match_closed_forms() {
        assert_eq!(GroupTag::Signed(3).order(), 48);
        assert_eq!(GroupTag::SymmetricWithFlip(3).order(), 48);
        assert_eq!(GroupTag::Alternating(5).order(), 60);
        assert_eq!(GroupTag::Symmetric(4).order(), 24);
    }

    #[test]
    fn alpha_twist_kills_the_total_flip_in_odd_degree() {
        let delta_word = |n: usize| -> Vec<(usize, i32)> { (0..n).map(|i| (i, 1)).collect() };

        let odd =
            standard_action(GroupTag::Signed(3), Family::Rose, ActionVariant::AlphaTwisted)
                .unwrap();
        let delta = odd.element(&delta_word(3)).unwrap();
        assert!(delta.is_identity());
        assert!(!odd.is_faithful().unwrap());
        assert_eq!(odd.image_order().unwrap(), odd.tag().order() / 2);

        let even =
            standard_action(GroupTag::Signed(4), Family::Rose, ActionVariant::AlphaTwisted)
                .unwrap();
        let delta = even.element(&delta_word(4)).unwrap();
        assert!(!delta.is_identity());
        assert!(even.is_faithful().unwrap());
    }

    #[test]
    fn total_flip_acts_as_minus_identity_on_rose_homology() {
        for n in 2..=4u32 {
            let action =
                standard_action(GroupTag::Signed(n), Family::Rose, ActionVariant::Standard)
                    .unwrap();
            let word: Vec<(usize, i32)> = (0..n as usize).map(|i| (i, 1)).collect();
            let delta = action.element(&word).unwrap();
            let m = h1_action(action.graph(), &delta).unwrap();
            assert_eq!(m, IntMatrix::identity(n as usize).scale(-1));
        }
    }

    #[test]
    fn central_flip_on_cage_swaps_vertices_and_negates_homology() {
        let action = standard_action(
            GroupTag::SymmetricWithFlip(3),
            Family::Cage,
            ActionVariant::Standard,
        )
        .unwrap();
        let delta = action.generator("delta").unwrap();
        assert_eq!(delta.vertex(0), 1);
        for e in 0..action.graph().num_edges() {
            assert_eq!(delta.image_edge(action.graph(), e), e);
        }
        let m = h1_action(action.graph(), delta).unwrap();
        assert_eq!(m, IntMatrix::identity(3).scale(-1));
    }

    #[test]
    fn double_transposition_fixes_two_dimensional_flip_space() {
        let action =
            standard_action(GroupTag::Alternating(5), Family::Rose, ActionVariant::Standard)
                .unwrap();
        let sigma = action.element(&[(0, 2), (1, 1), (0, 2)]).unwrap();
        for (i, expect) in [1, 0, 3, 2, 4].into_iter().enumerate() {
            assert_eq!(sigma.image_edge(action.graph(), i as u32), expect);
        }
    }

    #[test]
    fn diagonal_wedge_action_is_verified_and_faithful() {
        for n in 4..=5u32 {
            let action = standard_action(
                GroupTag::Alternating(n),
                Family::WedgeCages,
                ActionVariant::Diagonal,
            )
            .unwrap();
            assert!(action.is_faithful().unwrap());
        }
    }

    #[test]
    fn determinant_of_homology_action_is_multiplicative() {
        let action =
            standard_action(GroupTag::Signed(3), Family::Rose, ActionVariant::Standard)
                .unwrap();
        let g = action.graph();
        let mut elements = vec![GraphMap::identity(g)];
        for _ in 0..3 {
            let mut next = Vec::new();
            for x in &elements {
                for gen in action.generator_maps() {
                    let y = gen.compose(x);
                    if !elements.contains(&y) && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
            elements.extend(next);
        }
        let dets: Vec<(GraphMap, i64)> = elements
            .into_iter()
            .map(|m| {
                let d = h1_action(g, &m).unwrap().det().unwrap();
                assert_eq!(d.abs(), 1);
                (m, d)
            })
            .collect();
        for (f, df) in &dets {
            for (k, dk) in &dets {
                let composed = h1_action(g, &f.compose(k)).unwrap().det().unwrap();
                assert_eq!(composed, df * dk);
            }
        }
    }

    #[test]
    fn broken_assignments_are_rejected_with_the_relation_named() {
        let g = graph::rose(2).unwrap();
        let e1 = rose_map(&g, &[0, 1], &[true, false]).unwrap();
        let e2 = rose_map(&g, &[0, 1], &[false, true]).unwrap();
        let bad_s = GraphMap::identity(&g);
        match GroupAction::new(GroupTag::Signed(2), g, vec![e1, e2, bad_s]) {
            Err(Error::IncompatibleAction(msg)) => {
                assert!(msg.contains("s1 e1 s1^-1 e2^-1"), "message was: {msg}");
            }
            other => panic!("expected a relation failure, got {other:?}"),
        }
    }

    #[test]
    fn uncataloged_combinations_are_rejected() {
        let err = standard_action(GroupTag::Signed(3), Family::K3n, ActionVariant::Standard)
            .unwrap_err();
        match err {
            Error::IncompatibleAction(msg) => assert!(msg.contains("bipartite")),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            standard_action(GroupTag::Symmetric(3), Family::Rose, ActionVariant::Diagonal),
            Err(Error::IncompatibleAction(_))
        ));
    }

    #[test]
    fn degenerate_degrees_are_rejected() {
        assert!(matches!(
            standard_action(GroupTag::Alternating(2), Family::Rose, ActionVariant::Standard),
            Err(Error::Invalid(_))
        ));
        assert!(GroupTag::Signed(0).check().is_err());
    }

    #[test]
    fn generator_count_is_checked() {
        let g = graph::rose(2).unwrap();
        let id = GraphMap::identity(&g);
        assert!(matches!(
            GroupAction::new(GroupTag::Signed(2), g, vec![id]),
            Err(Error::Invalid(_))
        ));
    }
}
