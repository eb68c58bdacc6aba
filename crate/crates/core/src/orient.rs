//! Orientations of a [`Graph`] and the semi-transitivity verifier.
//!
//! An orientation is semi-transitive when it is acyclic and has no shortcut: a
//! directed path `v0 -> v1 -> ... -> vk` with `k >= 3`, an arc `v0 -> vk`, and
//! some pair of path vertices that is not adjacent in the base graph.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::graph::{EdgeId, Graph};

/// Direction of an edge relative to its [`EdgeId`]: `Forward` is `u -> v` with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }

    /// Direction that makes `tail -> head` on edge `e`.
    pub fn from_arc(e: EdgeId, tail: usize) -> Dir {
        if tail == e.u {
            Dir::Forward
        } else {
            Dir::Backward
        }
    }

    /// `(tail, head)` of edge `e` under this direction.
    pub fn arc(self, e: EdgeId) -> (usize, usize) {
        match self {
            Dir::Forward => (e.u, e.v),
            Dir::Backward => (e.v, e.u),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientError {
    /// The directed part contains this cycle.
    Cyclic(Vec<usize>),
    ImproperColoring { u: usize, v: usize },
    LengthMismatch { expected: usize, got: usize },
    NotAnEdge { tail: usize, head: usize },
    DuplicateArc(EdgeId),
    MissingArc(EdgeId),
    AlreadyAssigned(EdgeId),
    /// The exhaustive path enumerator refuses regions larger than [`EXHAUSTIVE_REGION_LIMIT`].
    RegionTooLarge { vertex: usize, reachable: usize },
}

impl fmt::Display for OrientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientError::Cyclic(c) => write!(f, "orientation contains a directed cycle {c:?}"),
            OrientError::ImproperColoring { u, v } => write!(f, "coloring is improper on edge ({u}, {v})"),
            OrientError::LengthMismatch { expected, got } => write!(f, "expected {expected} entries, got {got}"),
            OrientError::NotAnEdge { tail, head } => write!(f, "({tail}, {head}) is not an edge of the base graph"),
            OrientError::DuplicateArc(e) => write!(f, "edge ({}, {}) oriented twice", e.u, e.v),
            OrientError::MissingArc(e) => write!(f, "edge ({}, {}) has no orientation", e.u, e.v),
            OrientError::AlreadyAssigned(e) => write!(f, "edge ({}, {}) is already oriented", e.u, e.v),
            OrientError::RegionTooLarge { vertex, reachable } => {
                write!(f, "{reachable} vertices reachable from {vertex}; exhaustive search allows {EXHAUSTIVE_REGION_LIMIT}")
            }
        }
    }
}

impl core::error::Error for OrientError {}

/// Anything that assigns directions to some or all edges of a base graph.
pub trait Directed {
    fn graph(&self) -> &Graph;
    fn direction(&self, edge: usize) -> Option<Dir>;

    /// Directed arcs `(tail, head)` in edge order.
    fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let g = self.graph();
        g.edges().iter().enumerate().filter_map(move |(i, &e)| self.direction(i).map(|d| d.arc(e)))
    }

    /// Is `tail -> head` a directed arc?
    fn has_arc(&self, tail: usize, head: usize) -> bool {
        let g = self.graph();
        match g.edge_index(tail, head) {
            Some(i) => self.direction(i).map(|d| d.arc(g.edges()[i]).0) == Some(tail),
            None => false,
        }
    }
}

/// A direction for every edge of `base`.
#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    base: Graph,
    dirs: Vec<Dir>,
}

impl Orientation {
    pub fn new(base: Graph, dirs: Vec<Dir>) -> Result<Self, OrientError> {
        if dirs.len() != base.edge_count() {
            return Err(OrientError::LengthMismatch { expected: base.edge_count(), got: dirs.len() });
        }
        Ok(Orientation { base, dirs })
    }

    /// Exactly one arc per base edge, given as `(tail, head)` index pairs.
    pub fn from_arcs(base: Graph, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, OrientError> {
        let mut dirs: Vec<Option<Dir>> = vec![None; base.edge_count()];
        for (t, h) in arcs {
            let i = base.edge_index(t, h).ok_or(OrientError::NotAnEdge { tail: t, head: h })?;
            let e = base.edges()[i];
            if dirs[i].replace(Dir::from_arc(e, t)).is_some() {
                return Err(OrientError::DuplicateArc(e));
            }
        }
        let dirs = dirs
            .iter()
            .enumerate()
            .map(|(i, d)| d.ok_or(OrientError::MissingArc(base.edges()[i])))
            .collect::<Result<_, _>>()?;
        Ok(Orientation { base, dirs })
    }

    /// Every edge directed from the lower to the higher `rank` (ties by index).
    pub fn from_ranking(base: Graph, rank: &[usize]) -> Result<Self, OrientError> {
        if rank.len() != base.vertex_count() {
            return Err(OrientError::LengthMismatch { expected: base.vertex_count(), got: rank.len() });
        }
        let dirs = base
            .edges()
            .iter()
            .map(|e| if (rank[e.u], e.u) <= (rank[e.v], e.v) { Dir::Forward } else { Dir::Backward })
            .collect();
        Ok(Orientation { base, dirs })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn directions(&self) -> &[Dir] {
        &self.dirs
    }

    /// Every arc flipped.
    pub fn reversed(&self) -> Orientation {
        Orientation { base: self.base.clone(), dirs: self.dirs.iter().map(|d| d.reversed()).collect() }
    }
}

impl Directed for Orientation {
    fn graph(&self) -> &Graph {
        &self.base
    }

    fn direction(&self, edge: usize) -> Option<Dir> {
        Some(self.dirs[edge])
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.arcs()).finish()
    }
}

/// Directions for a subset of the edges, with an assignment trail for undo.
#[derive(Clone, Debug)]
pub struct PartialOrientation<'g> {
    base: &'g Graph,
    dirs: Vec<Option<Dir>>,
    trail: Vec<usize>,
}

impl<'g> PartialOrientation<'g> {
    pub fn new(base: &'g Graph) -> Self {
        PartialOrientation { base, dirs: vec![None; base.edge_count()], trail: Vec::new() }
    }

    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn assign(&mut self, edge: usize, dir: Dir) -> Result<(), OrientError> {
        if self.dirs[edge].is_some() {
            return Err(OrientError::AlreadyAssigned(self.base.edges()[edge]));
        }
        self.dirs[edge] = Some(dir);
        self.trail.push(edge);
        Ok(())
    }

    /// Directs the edge `tail - head` as `tail -> head`.
    pub fn assign_arc(&mut self, tail: usize, head: usize) -> Result<(), OrientError> {
        let i = self.base.edge_index(tail, head).ok_or(OrientError::NotAnEdge { tail, head })?;
        self.assign(i, Dir::from_arc(self.base.edges()[i], tail))
    }

    pub fn trail(&self) -> &[usize] {
        &self.trail
    }

    /// Current trail length, to pass to [`PartialOrientation::undo_to`].
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            self.dirs[e] = None;
        }
    }

    pub fn assigned_count(&self) -> usize {
        self.trail.len()
    }

    pub fn is_complete(&self) -> bool {
        self.trail.len() == self.base.edge_count()
    }

    pub fn unassigned(&self) -> impl Iterator<Item = usize> + '_ {
        self.dirs.iter().enumerate().filter(|(_, d)| d.is_none()).map(|(i, _)| i)
    }

    pub fn to_orientation(&self) -> Option<Orientation> {
        let dirs = self.dirs.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(Orientation { base: self.base.clone(), dirs })
    }
}

impl Directed for PartialOrientation<'_> {
    fn graph(&self) -> &Graph {
        self.base
    }

    fn direction(&self, edge: usize) -> Option<Dir> {
        self.dirs[edge]
    }
}

/// A directed path `v0 -> ... -> vk` (k >= 3) whose end points are joined by the arc
/// `v0 -> vk`, together with a non-adjacent pair of path vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutWitness {
    pub path: Vec<usize>,
    /// Vertices `(vi, vj)` with `i < j` in path order.
    pub missing_pair: (usize, usize),
}

impl ShortcutWitness {
    pub fn shortcutting_edge(&self) -> (usize, usize) {
        (self.path[0], *self.path.last().unwrap())
    }

    /// Checks the witness against `d` without re-running detection.
    pub fn is_valid_for(&self, d: &impl Directed) -> bool {
        let g = d.graph();
        let p = &self.path;
        if p.len() < 4 || p.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        let (a, b) = self.missing_pair;
        let (Some(i), Some(j)) = (p.iter().position(|&x| x == a), p.iter().position(|&x| x == b)) else {
            return false;
        };
        p.windows(2).all(|w| d.has_arc(w[0], w[1]))
            && d.has_arc(p[0], p[p.len() - 1])
            && i < j
            && !g.adjacent(a, b)
    }
}

/// Outcome of [`verify_semi_transitive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    SemiTransitive,
    Cycle(Vec<usize>),
    Shortcut(ShortcutWitness),
}

impl Verdict {
    pub fn is_semi_transitive(&self) -> bool {
        matches!(self, Verdict::SemiTransitive)
    }
}

/// Shortcut detection strategy for [`find_shortcut`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Per-arc reachability sets over bitsets.
    Reachability,
    /// Enumerates every directed path; an oracle for small inputs.
    Exhaustive,
}

/// Vertex limit on the region reachable from any arc tail in [`Method::Exhaustive`].
pub const EXHAUSTIVE_REGION_LIMIT: usize = 12;

/// Successor and predecessor sets of the directed part.
pub(crate) struct Digraph {
    pub succ: Vec<BitSet>,
    pub pred: Vec<BitSet>,
}

impl Digraph {
    pub fn of(d: &impl Directed) -> Self {
        let n = d.graph().vertex_count();
        let mut succ: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        let mut pred = succ.clone();
        for (t, h) in d.arcs() {
            succ[t].insert(h);
            pred[h].insert(t);
        }
        Digraph { succ, pred }
    }

    fn len(&self) -> usize {
        self.succ.len()
    }

    /// Kahn's algorithm, always releasing the smallest ready vertex.
    pub(crate) fn topological_order(&self) -> Result<Vec<usize>, Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.pred.iter().map(BitSet::len).collect();
        let mut ready = BitSet::new(n);
        (0..n).filter(|&v| indeg[v] == 0).for_each(|v| ready.insert(v));
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.iter().next() {
            ready.remove(v);
            order.push(v);
            for w in self.succ[v].iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Every leftover vertex has a leftover predecessor; walk backwards until a repeat.
        let mut left = BitSet::new(n);
        (0..n).filter(|&v| indeg[v] > 0).for_each(|v| left.insert(v));
        let mut seen = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut v = left.iter().next().unwrap();
        while seen[v] == usize::MAX {
            seen[v] = walk.len();
            walk.push(v);
            v = self.pred[v].iter().find(|&p| left.contains(p)).unwrap();
        }
        let mut cycle = walk.split_off(seen[v]);
        cycle.reverse();
        let start = cycle.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
        cycle.rotate_left(start);
        Err(cycle)
    }

    /// Strict descendant and ancestor sets.
    pub(crate) fn closure(&self, order: &[usize]) -> (Vec<BitSet>, Vec<BitSet>) {
        let n = self.len();
        let mut desc: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        let mut anc = desc.clone();
        for &v in order.iter().rev() {
            let mut acc = self.succ[v].clone();
            for w in self.succ[v].iter() {
                acc.union_with(&desc[w]);
            }
            desc[v] = acc;
        }
        for &v in order {
            let mut acc = self.pred[v].clone();
            for w in self.pred[v].iter() {
                acc.union_with(&anc[w]);
            }
            anc[v] = acc;
        }
        (desc, anc)
    }

    /// BFS distance of every vertex to `target` along arcs.
    fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[target] = Some(0);
        let mut frontier = vec![target];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for v in frontier {
                for p in self.pred[v].iter() {
                    if dist[p].is_none() {
                        dist[p] = Some(d);
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Lexicographically least among shortest paths `from ~> to` (requires reachability).
    fn lex_shortest_path(&self, from: usize, to: usize, dist_to: &[Option<usize>]) -> Vec<usize> {
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let want = dist_to[cur].unwrap() - 1;
            cur = self.succ[cur].iter().find(|&w| dist_to[w] == Some(want)).unwrap();
            path.push(cur);
        }
        path
    }
}

/// A topological order of the directed part, or a directed cycle.
pub fn is_acyclic(d: &impl Directed) -> Result<Vec<usize>, Vec<usize>> {
    Digraph::of(d).topological_order()
}

/// Searches the directed part for a shortcut.
pub fn find_shortcut(d: &impl Directed, method: Method) -> Result<Option<ShortcutWitness>, OrientError> {
    let dg = Digraph::of(d);
    let order = dg.topological_order().map_err(OrientError::Cyclic)?;
    match method {
        Method::Reachability => Ok(shortcut_by_reachability(d, &dg, &order)),
        Method::Exhaustive => shortcut_by_paths(d, &dg),
    }
}

fn shortcut_by_reachability(d: &impl Directed, dg: &Digraph, order: &[usize]) -> Option<ShortcutWitness> {
    let g = d.graph();
    let (desc, anc) = dg.closure(order);
    for (x, y) in d.arcs() {
        let mut span = desc[x].clone();
        span.intersect_with(&anc[y]);
        span.insert(x);
        span.insert(y);
        let mut bad_pairs = Vec::new();
        for p in span.iter() {
            let mut bad = desc[p].clone();
            bad.intersect_with(&span);
            bad.difference_with(g.neighbors(p));
            bad_pairs.extend(bad.iter().map(|q| (p, q)));
        }
        if bad_pairs.is_empty() {
            continue;
        }
        let mut dist_cache: Vec<Option<Vec<Option<usize>>>> = vec![None; g.vertex_count()];
        let mut dist = |t: usize| -> Vec<Option<usize>> { dist_cache[t].get_or_insert_with(|| dg.distances_to(t)).clone() };
        let to_y = dist(y);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (p, q) in bad_pairs {
            let (to_p, to_q) = (dist(p), dist(q));
            let len = to_p[x].unwrap() + to_q[p].unwrap() + to_y[q].unwrap();
            if best.as_ref().is_some_and(|(l, _)| *l < len) {
                continue;
            }
            let mut path = dg.lex_shortest_path(x, p, &to_p);
            path.extend(dg.lex_shortest_path(p, q, &to_q).into_iter().skip(1));
            path.extend(dg.lex_shortest_path(q, y, &to_y).into_iter().skip(1));
            if best.as_ref().is_none_or(|(l, b)| len < *l || path < *b) {
                best = Some((len, path));
            }
        }
        let path = best.unwrap().1;
        return Some(witness_for_path(g, path).expect("path carries a missing pair"));
    }
    None
}

/// The lexicographically least non-adjacent position pair of `path`, if any.
fn witness_for_path(g: &Graph, path: Vec<usize>) -> Option<ShortcutWitness> {
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if !g.adjacent(path[i], path[j]) {
                let pair = (path[i], path[j]);
                return Some(ShortcutWitness { path, missing_pair: pair });
            }
        }
    }
    None
}

fn shortcut_by_paths(d: &impl Directed, dg: &Digraph) -> Result<Option<ShortcutWitness>, OrientError> {
    let g = d.graph();
    for (x, y) in d.arcs() {
        let reachable = reachable_count(dg, x);
        if reachable > EXHAUSTIVE_REGION_LIMIT {
            return Err(OrientError::RegionTooLarge { vertex: x, reachable });
        }
        let mut path = vec![x];
        if let Some(w) = walk_paths(g, dg, y, &mut path) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn reachable_count(dg: &Digraph, from: usize) -> usize {
    let mut seen = BitSet::new(dg.len());
    seen.insert(from);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for w in dg.succ[v].iter() {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.len()
}

fn walk_paths(g: &Graph, dg: &Digraph, target: usize, path: &mut Vec<usize>) -> Option<ShortcutWitness> {
    let last = *path.last().unwrap();
    for w in dg.succ[last].iter() {
        path.push(w);
        if w == target && path.len() >= 4 {
            if let Some(found) = witness_for_path(g, path.clone()) {
                return Some(found);
            }
        }
        if w != target {
            if let Some(found) = walk_paths(g, dg, target, path) {
                return Some(found);
            }
        }
        path.pop();
    }
    None
}

/// `SemiTransitive` iff acyclic and shortcut-free.
pub fn verify_semi_transitive(o: &impl Directed) -> Verdict {
    let dg = Digraph::of(o);
    match dg.topological_order() {
        Err(cycle) => Verdict::Cycle(cycle),
        Ok(order) => match shortcut_by_reachability(o, &dg, &order) {
            Some(w) => Verdict::Shortcut(w),
            None => Verdict::SemiTransitive,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPath {
    /// Number of arcs.
    pub length: usize,
    pub path: Vec<usize>,
}

/// Exact longest directed path by dynamic programming over a topological order.
pub fn longest_directed_path(o: &impl Directed) -> Result<LongestPath, OrientError> {
    let dg = Digraph::of(o);
    let order = dg.topological_order().map_err(OrientError::Cyclic)?;
    let n = dg.len();
    if n == 0 {
        return Ok(LongestPath { length: 0, path: Vec::new() });
    }
    let mut best = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    for &v in &order {
        for p in dg.pred[v].iter() {
            if best[p] + 1 > best[v] {
                best[v] = best[p] + 1;
                parent[v] = p;
            }
        }
    }
    let end = (0..n).max_by_key(|&v| (best[v], core::cmp::Reverse(v))).unwrap();
    let mut path = vec![end];
    while parent[*path.last().unwrap()] != usize::MAX {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(LongestPath { length: best[end], path })
}

/// Directs every edge from the smaller colour to the larger one.
pub fn orientation_from_coloring(g: &Graph, coloring: &[usize]) -> Result<Orientation, OrientError> {
    if coloring.len() != g.vertex_count() {
        return Err(OrientError::LengthMismatch { expected: g.vertex_count(), got: coloring.len() });
    }
    if let Some(e) = g.edges().iter().find(|e| coloring[e.u] == coloring[e.v]) {
        return Err(OrientError::ImproperColoring { u: e.u, v: e.v });
    }
    let dirs = g.edges().iter().map(|e| if coloring[e.u] < coloring[e.v] { Dir::Forward } else { Dir::Backward }).collect();
    Ok(Orientation { base: g.clone(), dirs })
}
