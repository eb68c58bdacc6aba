//! Branch-and-prune search for a semi-transitive orientation.
//!
//! The search assigns directions edge by edge. After every decision each
//! unassigned edge is tried in both directions against the directed part; a
//! direction that closes a directed cycle or completes a shortcut (long path,
//! shortcutting arc and a static non-edge all present) is ruled out. An edge
//! with one surviving direction is forced, an edge with none is a conflict.
//!
//! A direction is also ruled out when it strands a neighbouring edge: if
//! `a ~> x` is directed, `a` is adjacent to `y` but not to `x`, then `x -> y`
//! leaves `ay` with no valid direction. This is the 4-cycle rule: with
//! `a -> b -> c` directed, `cd` and `da` undirected and `{a,b,c,d}` not
//! complete, it forces `a -> d -> c`.
//!
//! The first branched edge is tried in one direction only, since reversing
//! every arc of a semi-transitive orientation gives another one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::coloring::{good_coloring, Coloring};
use crate::graph::{EdgeId, Graph};
use crate::orient::{find_shortcut, is_acyclic, verify_semi_transitive, Dir, Method, Orientation, PartialOrientation, ShortcutWitness};

/// Default wall-clock limit for [`solve`].
pub const DEFAULT_BUDGET_MS: u64 = 60_000;

/// Largest edge count [`exhaustive_check`] accepts.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 20;

/// Node budget for the exact colouring that seeds the value ordering.
const HINT_COLORING_NODES: u64 = 20_000;

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_ms: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: None, max_ms: Some(DEFAULT_BUDGET_MS) }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None, max_ms: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget { max_nodes: None, max_ms: Some(ms) }
    }

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_ms: None }
    }
}

/// Time source and cancellation hook for the search.
pub trait Clock {
    fn elapsed_ms(&self) -> u64;

    fn cancelled(&self) -> bool {
        false
    }
}

/// A clock that never advances; only node limits apply.
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed_ms(&self) -> u64 {
        0
    }
}

#[cfg(feature = "std")]
pub struct WallClock(std::time::Instant);

#[cfg(feature = "std")]
impl WallClock {
    pub fn start() -> Self {
        WallClock(std::time::Instant::now())
    }
}

#[cfg(feature = "std")]
impl Clock for WallClock {
    fn elapsed_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Search nodes (decision points) visited.
    pub nodes: u64,
    /// Edges oriented by propagation.
    pub forced: u64,
    /// Single-direction violation checks.
    pub checks: u64,
    pub elapsed_ms: u64,
    /// Colours in the colouring that seeds the value ordering.
    pub hint_colors: usize,
    /// The colour-order orientation was already semi-transitive.
    pub hint_hit: bool,
}

impl Stats {
    pub fn absorb(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.forced += other.forced;
        self.checks += other.checks;
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes={}", self.nodes)?;
        writeln!(f, "forced={}", self.forced)?;
        writeln!(f, "checks={}", self.checks)?;
        writeln!(f, "elapsed_ms={}", self.elapsed_ms)?;
        writeln!(f, "hint_colors={}", self.hint_colors)?;
        write!(f, "hint_hit={}", self.hint_hit as u8)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// A verified semi-transitive orientation.
    Witness(Orientation),
    /// The whole search tree was refuted: the graph is not semi-transitive.
    Exhausted,
    /// The budget ran out first. Says nothing about the graph.
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub stats: Stats,
}

/// A sequence of branching decisions, used to hand out disjoint subtrees.
pub type Prefix = Vec<(usize, Dir)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverError {
    TooManyEdges { edges: usize, limit: usize },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::TooManyEdges { edges, limit } => write!(f, "{edges} edges exceeds the exhaustive limit of {limit}"),
        }
    }
}

impl core::error::Error for SolverError {}

struct Interrupted;

#[inline]
fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

/// Calls `f` on each member in increasing order; stops early when `f` returns true.
#[inline]
fn any_member(words: &[u64], mut f: impl FnMut(usize) -> bool) -> bool {
    for (wi, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let i = wi * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if f(i) {
                return true;
            }
        }
    }
    false
}

/// Incremental search state: directed part plus its transitive closure as flat bit rows.
struct Engine {
    n: usize,
    w: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
    out: Vec<u64>,
    desc: Vec<u64>,
    anc: Vec<u64>,
    dirs: Vec<Option<Dir>>,
    trail: Vec<usize>,
    assigned_deg: Vec<u32>,
    levels: Vec<usize>,
    saved: Vec<u64>,
    set_a: Vec<u64>,
    set_d: Vec<u64>,
    span: Vec<u64>,
    stats: Stats,
}

impl Engine {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let w = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * w];
        for v in 0..n {
            adj[v * w..(v + 1) * w].copy_from_slice(g.neighbors(v).words());
        }
        Engine {
            n,
            w,
            edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            adj,
            out: vec![0; n * w],
            desc: vec![0; n * w],
            anc: vec![0; n * w],
            dirs: vec![None; g.edge_count()],
            trail: Vec::new(),
            assigned_deg: vec![0; n],
            levels: Vec::new(),
            saved: Vec::new(),
            set_a: vec![0; w],
            set_d: vec![0; w],
            span: vec![0; w],
            stats: Stats::default(),
        }
    }

    fn arc(&self, e: usize, d: Dir) -> (usize, usize) {
        let (u, v) = self.edges[e];
        match d {
            Dir::Forward => (u, v),
            Dir::Backward => (v, u),
        }
    }

    /// Would the arc `x -> y` close a cycle, complete a shortcut or strand an edge?
    fn violates(&mut self, x: usize, y: usize) -> bool {
        self.stats.checks += 1;
        let w = self.w;
        let Engine { adj, out, desc, anc, set_a, set_d, span, .. } = self;
        if test_bit(&desc[y * w..(y + 1) * w], x) {
            return true;
        }
        // Dead arc: some a with a ~> x, a adjacent to y but not to x. Then the edge ay
        // has no valid direction (y -> a closes a cycle, a -> y shortcuts a ~> x -> y).
        // Mirror case: some b with y ~> b, b adjacent to x but not to y.
        if (0..w).any(|i| {
            anc[x * w + i] & adj[y * w + i] & !adj[x * w + i] != 0 || desc[y * w + i] & adj[x * w + i] & !adj[y * w + i] != 0
        }) {
            return true;
        }
        // Every new violation uses x -> y, so lies on an arc p -> q with p in A, q in D.
        set_a.copy_from_slice(&anc[x * w..(x + 1) * w]);
        set_bit(set_a, x);
        set_d.copy_from_slice(&desc[y * w..(y + 1) * w]);
        set_bit(set_d, y);
        let (set_a, set_d) = (&*set_a, &*set_d);
        any_member(set_a, |p| {
            let out_p = &out[p * w..(p + 1) * w];
            (0..w).any(|wi| {
                let mut heads = out_p[wi] & set_d[wi];
                if p == x && wi == y / 64 {
                    heads |= 1 << (y % 64);
                }
                while heads != 0 {
                    let q = wi * 64 + heads.trailing_zeros() as usize;
                    heads &= heads - 1;
                    // span = desc'(p) & anc'(q) + {p, q} in the extended closure.
                    for i in 0..w {
                        span[i] = (desc[p * w + i] | set_d[i]) & (anc[q * w + i] | set_a[i]);
                    }
                    set_bit(span, p);
                    set_bit(span, q);
                    let span = &*span;
                    let bad = any_member(span, |s| {
                        let in_a = test_bit(set_a, s);
                        (0..w).any(|i| {
                            let reach = desc[s * w + i] | if in_a { set_d[i] } else { 0 };
                            reach & span[i] & !adj[s * w + i] != 0
                        })
                    });
                    if bad {
                        return true;
                    }
                }
                false
            })
        })
    }

    fn assign(&mut self, e: usize, d: Dir) {
        let (x, y) = self.arc(e, d);
        let w = self.w;
        debug_assert!(self.dirs[e].is_none());
        self.set_a.copy_from_slice(&self.anc[x * w..(x + 1) * w]);
        set_bit(&mut self.set_a, x);
        self.set_d.copy_from_slice(&self.desc[y * w..(y + 1) * w]);
        set_bit(&mut self.set_d, y);
        let Engine { desc, anc, set_a, set_d, .. } = self;
        any_member(set_a, |a| {
            for i in 0..w {
                desc[a * w + i] |= set_d[i];
            }
            false
        });
        any_member(set_d, |b| {
            for i in 0..w {
                anc[b * w + i] |= set_a[i];
            }
            false
        });
        set_bit(&mut self.out[x * w..(x + 1) * w], y);
        self.dirs[e] = Some(d);
        self.trail.push(e);
        self.assigned_deg[x] += 1;
        self.assigned_deg[y] += 1;
    }

    fn push_level(&mut self) {
        self.levels.push(self.trail.len());
        self.saved.extend_from_slice(&self.out);
        self.saved.extend_from_slice(&self.desc);
        self.saved.extend_from_slice(&self.anc);
    }

    fn pop_level(&mut self) {
        let mark = self.levels.pop().expect("level stack underflow");
        let size = self.n * self.w;
        let base = self.saved.len() - 3 * size;
        self.out.copy_from_slice(&self.saved[base..base + size]);
        self.desc.copy_from_slice(&self.saved[base + size..base + 2 * size]);
        self.anc.copy_from_slice(&self.saved[base + 2 * size..]);
        self.saved.truncate(base);
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            let (u, v) = self.edges[e];
            self.assigned_deg[u] -= 1;
            self.assigned_deg[v] -= 1;
            self.dirs[e] = None;
        }
    }

    /// Orients forced edges to a fixpoint. Returns the conflicting edge, if any.
    fn propagate(&mut self) -> Option<usize> {
        loop {
            let mut changed = false;
            for e in 0..self.edges.len() {
                if self.dirs[e].is_some() {
                    continue;
                }
                let (u, v) = self.edges[e];
                let forward_ok = !self.violates(u, v);
                let backward_ok = !self.violates(v, u);
                let d = match (forward_ok, backward_ok) {
                    (false, false) => return Some(e),
                    (true, false) => Dir::Forward,
                    (false, true) => Dir::Backward,
                    (true, true) => continue,
                };
                self.assign(e, d);
                self.stats.forced += 1;
                changed = true;
            }
            if !changed {
                return None;
            }
        }
    }

    /// Unassigned edge with the most directed incident edges; ties to the lowest index.
    fn pick_edge(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (e, d) in self.dirs.iter().enumerate() {
            if d.is_some() {
                continue;
            }
            let (u, v) = self.edges[e];
            let score = self.assigned_deg[u] + self.assigned_deg[v];
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, e));
            }
        }
        best.map(|(_, e)| e)
    }
}

/// Search driver for one graph. Reusable across subtrees.
pub struct Solver<'g> {
    graph: &'g Graph,
    engine: Engine,
    hint: Coloring,
    preferred: Vec<Dir>,
}

impl<'g> Solver<'g> {
    /// Seeds the value ordering with a colouring found by bounded exact search.
    pub fn new(graph: &'g Graph) -> Self {
        let hint = if graph.vertex_count() <= 256 {
            good_coloring(graph, HINT_COLORING_NODES)
        } else {
            crate::bounds::coloring::dsatur(graph)
        };
        Self::with_hint(graph, hint)
    }

    /// Branches first toward arcs from smaller to larger colour of `hint`.
    pub fn with_hint(graph: &'g Graph, hint: Coloring) -> Self {
        assert_eq!(hint.assignment.len(), graph.vertex_count());
        let c = &hint.assignment;
        let preferred = graph
            .edges()
            .iter()
            .map(|e| if (c[e.u], e.u) <= (c[e.v], e.v) { Dir::Forward } else { Dir::Backward })
            .collect();
        Solver { graph, engine: Engine::new(graph), hint, preferred }
    }

    pub fn hint(&self) -> &Coloring {
        &self.hint
    }

    /// The colour-order orientation, if it is already semi-transitive.
    pub fn try_hint(&self) -> Option<Orientation> {
        let o = Orientation::new(self.graph.clone(), self.preferred.clone()).ok()?;
        verify_semi_transitive(&o).is_semi_transitive().then_some(o)
    }

    fn reset(&mut self) {
        self.engine = Engine::new(self.graph);
    }

    /// Applies `prefix` as decisions, propagating before each. `false` if the subtree is empty.
    fn replay(&mut self, prefix: &[(usize, Dir)]) -> bool {
        for &(e, d) in prefix {
            if self.engine.propagate().is_some() {
                return false;
            }
            match self.engine.dirs[e] {
                Some(existing) => {
                    if existing != d {
                        return false;
                    }
                }
                None => {
                    let (x, y) = self.engine.arc(e, d);
                    if self.engine.violates(x, y) {
                        return false;
                    }
                    self.engine.push_level();
                    self.engine.assign(e, d);
                }
            }
        }
        true
    }

    fn branch_dirs(&self, e: usize, first: bool) -> ([Dir; 2], usize) {
        let p = self.preferred[e];
        ([p, p.reversed()], if first { 1 } else { 2 })
    }

    fn dfs(&mut self, first: bool, budget: &Budget, clock: &dyn Clock) -> Result<bool, Interrupted> {
        self.engine.stats.nodes += 1;
        if budget.max_nodes.is_some_and(|m| self.engine.stats.nodes > m)
            || budget.max_ms.is_some_and(|m| clock.elapsed_ms() > m)
            || clock.cancelled()
        {
            return Err(Interrupted);
        }
        if self.engine.propagate().is_some() {
            return Ok(false);
        }
        let Some(e) = self.engine.pick_edge() else {
            return Ok(true);
        };
        let (dirs, count) = self.branch_dirs(e, first);
        for &d in &dirs[..count] {
            // After a quiescent propagation both directions are consistent.
            self.engine.push_level();
            self.engine.assign(e, d);
            if self.dfs(false, budget, clock)? {
                return Ok(true);
            }
            self.engine.pop_level();
        }
        Ok(false)
    }

    /// Searches the subtree below `prefix` (empty for the whole tree).
    pub fn run(&mut self, prefix: &[(usize, Dir)], budget: &Budget, clock: &dyn Clock) -> SolveOutcome {
        self.reset();
        let mut stats = Stats { hint_colors: self.hint.colors, ..Stats::default() };
        let status = if !self.replay(prefix) {
            SolveStatus::Exhausted
        } else {
            match self.dfs(prefix.is_empty(), budget, clock) {
                Err(Interrupted) => SolveStatus::Timeout,
                Ok(false) => SolveStatus::Exhausted,
                Ok(true) => SolveStatus::Witness(self.extract()),
            }
        };
        stats.absorb(&self.engine.stats);
        stats.elapsed_ms = clock.elapsed_ms();
        SolveOutcome { status, stats }
    }

    fn extract(&self) -> Orientation {
        let dirs = self.engine.dirs.iter().map(|d| d.expect("complete assignment")).collect();
        let o = Orientation::new(self.graph.clone(), dirs).expect("one direction per edge");
        let verdict = verify_semi_transitive(&o);
        assert!(verdict.is_semi_transitive(), "search produced an invalid witness: {verdict:?}");
        o
    }

    /// Decision prefixes of the open subtrees at `depth`, in search order.
    /// Prefixes that end early lead to complete assignments.
    pub fn frontier(&mut self, depth: usize) -> Vec<Prefix> {
        self.reset();
        let mut out = Vec::new();
        self.collect_frontier(depth, &mut Vec::new(), &mut out);
        out
    }

    fn collect_frontier(&mut self, depth: usize, prefix: &mut Prefix, out: &mut Vec<Prefix>) {
        if self.engine.propagate().is_some() {
            return;
        }
        let next = self.engine.pick_edge();
        if depth == 0 || next.is_none() {
            out.push(prefix.clone());
            return;
        }
        let e = next.unwrap();
        let (dirs, count) = self.branch_dirs(e, prefix.is_empty());
        for &d in &dirs[..count] {
            self.engine.push_level();
            self.engine.assign(e, d);
            prefix.push((e, d));
            self.collect_frontier(depth - 1, prefix, out);
            prefix.pop();
            self.engine.pop_level();
        }
    }
}

/// Decides semi-transitivity of `g` within `budget`, timing with `clock`.
pub fn solve_with_clock(g: &Graph, budget: &Budget, clock: &dyn Clock) -> SolveOutcome {
    let solver = Solver::new(g);
    if let Some(o) = solver.try_hint() {
        let stats = Stats { hint_colors: solver.hint.colors, hint_hit: true, elapsed_ms: clock.elapsed_ms(), ..Stats::default() };
        return SolveOutcome { status: SolveStatus::Witness(o), stats };
    }
    let mut solver = solver;
    solver.run(&[], budget, clock)
}

/// Decides semi-transitivity of `g` within `budget` of wall-clock time and nodes.
#[cfg(feature = "std")]
pub fn solve(g: &Graph, budget: &Budget) -> SolveOutcome {
    solve_with_clock(g, budget, &WallClock::start())
}

/// Depth-first search without the colour-order shortcut, for oracle comparisons.
pub fn search_only(g: &Graph, budget: &Budget, clock: &dyn Clock) -> SolveOutcome {
    Solver::new(g).run(&[], budget, clock)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExhaustiveOutcome {
    SemiTransitive(Orientation),
    NotSemiTransitive,
}

/// Tries every orientation with the first edge fixed forward, verifying each.
pub fn exhaustive_check(g: &Graph) -> Result<ExhaustiveOutcome, SolverError> {
    let m = g.edge_count();
    if m > EXHAUSTIVE_EDGE_LIMIT {
        return Err(SolverError::TooManyEdges { edges: m, limit: EXHAUSTIVE_EDGE_LIMIT });
    }
    if m == 0 {
        let o = Orientation::new(g.clone(), Vec::new()).unwrap();
        return Ok(ExhaustiveOutcome::SemiTransitive(o));
    }
    for mask in 0u32..1 << (m - 1) {
        let dirs = (0..m)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { Dir::Backward } else { Dir::Forward })
            .collect();
        let o = Orientation::new(g.clone(), dirs).unwrap();
        if verify_semi_transitive(&o).is_semi_transitive() {
            return Ok(ExhaustiveOutcome::SemiTransitive(o));
        }
    }
    Ok(ExhaustiveOutcome::NotSemiTransitive)
}

/// What a tentative direction would break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Cycle(Vec<usize>),
    Shortcut(ShortcutWitness),
    /// No cycle or shortcut yet, but this edge would be left with no valid direction.
    Strands(EdgeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConflictKind {
    Cycle,
    Shortcut,
    Strands,
}

/// An undirected edge neither of whose directions survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub edge: EdgeId,
    /// Edges forced earlier in the same propagation; the witnesses hold with these applied.
    pub forced_before: Vec<(EdgeId, Dir)>,
    /// Violation created by orienting `edge` as `u -> v`.
    pub forward: Violation,
    /// Violation created by orienting `edge` as `v -> u`.
    pub backward: Violation,
}

impl Conflict {
    pub fn kind(&self) -> ConflictKind {
        match self.forward {
            Violation::Cycle(_) => ConflictKind::Cycle,
            Violation::Shortcut(_) => ConflictKind::Shortcut,
            Violation::Strands(_) => ConflictKind::Strands,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Newly oriented edges, in the order they were forced.
    Forced(Vec<(EdgeId, Dir)>),
    Conflict(Conflict),
    Quiescent,
}

/// Violation caused by the last arc `x -> y` assigned in `p`.
fn violation_of(p: &PartialOrientation<'_>, x: usize, y: usize) -> Violation {
    if let Err(cycle) = is_acyclic(p) {
        return Violation::Cycle(cycle);
    }
    if let Some(w) = find_shortcut(p, Method::Reachability).expect("acyclic") {
        return Violation::Shortcut(w);
    }
    let g = p.base();
    let dg = crate::orient::Digraph::of(p);
    let (desc, anc) = dg.closure(&dg.topological_order().expect("acyclic"));
    for a in anc[x].iter() {
        if g.adjacent(a, y) && !g.adjacent(a, x) {
            return Violation::Strands(EdgeId::new(a, y));
        }
    }
    for b in desc[y].iter() {
        if g.adjacent(b, x) && !g.adjacent(b, y) {
            return Violation::Strands(EdgeId::new(b, x));
        }
    }
    unreachable!("tentative arc was flagged but violates nothing")
}

/// Orients every edge whose direction is forced by the current partial orientation,
/// to a fixpoint. `p` must be free of cycles and shortcuts. On `Forced`, `p` is
/// extended; on `Conflict` it is left unchanged.
pub fn propagate_forced(p: &mut PartialOrientation<'_>) -> Propagation {
    let g = p.base();
    let mut engine = Engine::new(g);
    for &e in p.trail() {
        let d = crate::orient::Directed::direction(p, e).unwrap();
        engine.assign(e, d);
    }
    let start = engine.trail.len();
    let conflict = engine.propagate();
    let forced: Vec<(usize, Dir)> = engine.trail[start..].iter().map(|&e| (e, engine.dirs[e].unwrap())).collect();
    let named = |list: &[(usize, Dir)]| list.iter().map(|&(e, d)| (g.edges()[e], d)).collect::<Vec<_>>();
    if let Some(e) = conflict {
        let mut trial = p.clone();
        for &(f, d) in &forced {
            trial.assign(f, d).unwrap();
        }
        let mark = trial.mark();
        let (u, v) = engine.edges[e];
        trial.assign(e, Dir::Forward).unwrap();
        let forward = violation_of(&trial, u, v);
        trial.undo_to(mark);
        trial.assign(e, Dir::Backward).unwrap();
        let backward = violation_of(&trial, v, u);
        return Propagation::Conflict(Conflict { edge: g.edges()[e], forced_before: named(&forced), forward, backward });
    }
    if forced.is_empty() {
        return Propagation::Quiescent;
    }
    for &(e, d) in &forced {
        p.assign(e, d).unwrap();
    }
    Propagation::Forced(named(&forced))
}
