//! Exact and greedy colouring, and exact maximum clique / independent set, for small graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::graph::Graph;

/// A proper colouring with colours `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: usize,
    pub assignment: Vec<usize>,
}

impl Coloring {
    fn from_assignment(assignment: Vec<usize>) -> Self {
        let colors = assignment.iter().map(|c| c + 1).max().unwrap_or(0);
        Coloring { colors, assignment }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.assignment.len() == g.vertex_count() && g.edges().iter().all(|e| self.assignment[e.u] != self.assignment[e.v])
    }
}

/// Uncoloured vertex of maximum saturation; ties by uncoloured degree, then index.
fn most_saturated(g: &Graph, colors: &[Option<usize>], palette: usize) -> Option<(usize, BitSet)> {
    let mut best: Option<(usize, usize, usize, BitSet)> = None;
    for v in 0..g.vertex_count() {
        if colors[v].is_some() {
            continue;
        }
        let mut seen = BitSet::new(palette.max(1));
        let mut free_deg = 0;
        for w in g.neighbors(v).iter() {
            match colors[w] {
                Some(c) => seen.insert(c),
                None => free_deg += 1,
            }
        }
        let sat = seen.len();
        if best.as_ref().is_none_or(|(s, d, _, _)| (sat, free_deg) > (*s, *d)) {
            best = Some((sat, free_deg, v, seen));
        }
    }
    best.map(|(_, _, v, seen)| (v, seen))
}

/// Greedy DSATUR colouring.
pub fn dsatur(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![None; n];
    while let Some((v, seen)) = most_saturated(g, &colors, n) {
        colors[v] = Some((0..).find(|&c| !seen.contains(c)).unwrap());
    }
    Coloring::from_assignment(colors.into_iter().map(Option::unwrap).collect())
}

struct BudgetExhausted;

fn colorable_rec(
    g: &Graph,
    k: usize,
    colors: &mut Vec<Option<usize>>,
    used: usize,
    nodes: &mut u64,
    limit: u64,
) -> Result<bool, BudgetExhausted> {
    *nodes += 1;
    if *nodes > limit {
        return Err(BudgetExhausted);
    }
    let Some((v, seen)) = most_saturated(g, colors, k) else {
        return Ok(true);
    };
    // Colours above `used` are interchangeable; try only the first of them.
    for c in 0..k.min(used + 1) {
        if seen.contains(c) {
            continue;
        }
        colors[v] = Some(c);
        if colorable_rec(g, k, colors, used.max(c + 1), nodes, limit)? {
            return Ok(true);
        }
    }
    colors[v] = None;
    Ok(false)
}

/// A proper `k`-colouring, `Ok(None)` if none exists, `Err` if the node budget ran out.
fn k_coloring(g: &Graph, k: usize, nodes: &mut u64, limit: u64) -> Result<Option<Coloring>, BudgetExhausted> {
    let mut colors = vec![None; g.vertex_count()];
    if colorable_rec(g, k, &mut colors, 0, nodes, limit)? {
        Ok(Some(Coloring::from_assignment(colors.into_iter().map(Option::unwrap).collect())))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number with an optimal colouring: iterative deepening from a
/// clique lower bound up to the DSATUR upper bound. `None` when `max_nodes` runs out.
pub fn exact_chromatic(g: &Graph, max_nodes: u64) -> Option<Coloring> {
    let upper = dsatur(g);
    let mut nodes = 0;
    let lower = match max_clique_bounded(g, &mut nodes, max_nodes) {
        Ok(c) => c.len(),
        Err(BudgetExhausted) => return None,
    };
    for k in lower..upper.colors {
        match k_coloring(g, k, &mut nodes, max_nodes) {
            Ok(Some(c)) => return Some(c),
            Ok(None) => {}
            Err(BudgetExhausted) => return None,
        }
    }
    Some(upper)
}

/// A colouring using as few colours as a bounded exact search finds, else DSATUR.
pub(crate) fn good_coloring(g: &Graph, max_nodes: u64) -> Coloring {
    exact_chromatic(g, max_nodes).unwrap_or_else(|| dsatur(g))
}

/// Greedy sequential colouring of `cand`; returns vertices ordered by colour class
/// with the number of classes used up to each position.
fn color_sort(g: &Graph, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut left = cand.clone();
    let (mut order, mut bound) = (Vec::new(), Vec::new());
    let mut class = 0;
    while !left.is_empty() {
        class += 1;
        let mut avail = left.clone();
        while let Some(v) = avail.iter().next() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            left.remove(v);
            order.push(v);
            bound.push(class);
        }
    }
    (order, bound)
}

fn expand(g: &Graph, current: &mut Vec<usize>, mut cand: BitSet, best: &mut Vec<usize>, nodes: &mut u64, limit: u64) -> Result<(), BudgetExhausted> {
    *nodes += 1;
    if *nodes > limit {
        return Err(BudgetExhausted);
    }
    let (order, bound) = color_sort(g, &cand);
    for i in (0..order.len()).rev() {
        if current.len() + bound[i] <= best.len() {
            return Ok(());
        }
        let v = order[i];
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best, nodes, limit)?;
        }
        current.pop();
        cand.remove(v);
    }
    Ok(())
}

fn max_clique_bounded(g: &Graph, nodes: &mut u64, limit: u64) -> Result<Vec<usize>, BudgetExhausted> {
    let n = g.vertex_count();
    let mut all = BitSet::new(n);
    (0..n).for_each(|v| all.insert(v));
    let mut best = Vec::new();
    if n > 0 {
        expand(g, &mut Vec::new(), all, &mut best, nodes, limit)?;
    }
    best.sort_unstable();
    Ok(best)
}

/// A maximum clique (sorted vertex indices) by colour-bounded branch and bound.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    max_clique_bounded(g, &mut 0, u64::MAX).ok().unwrap()
}

pub fn maximum_independent_set(g: &Graph) -> Vec<usize> {
    max_clique(&g.complement())
}
