//! Kneser graphs `K(n,k)`, their complements, and the fixed datasets built from them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::graph::{Graph, GraphError};

/// Largest vertex count the generators will materialise.
pub const MAX_GENERATED_VERTICES: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KneserError {
    InvalidParams { n: u32, k: u32 },
    PrefixOutOfRange { m: usize, total: usize },
    PaddingNeedsK2 { k: u32 },
    TooLarge { vertices: u128 },
    Graph(GraphError),
}

impl fmt::Display for KneserError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KneserError::InvalidParams { n, k } => write!(f, "invalid Kneser parameters n={n}, k={k} (need 1 <= k <= n)"),
            KneserError::PrefixOutOfRange { m, total } => write!(f, "prefix length {m} outside 1..={total}"),
            KneserError::PaddingNeedsK2 { k } => write!(f, "padding embedding needs k >= 2, got {k}"),
            KneserError::TooLarge { vertices } => {
                write!(f, "{vertices} vertices exceeds the generator limit of {MAX_GENERATED_VERTICES}")
            }
            KneserError::Graph(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for KneserError {}

impl From<GraphError> for KneserError {
    fn from(e: GraphError) -> Self {
        KneserError::Graph(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KneserParams {
    n: u32,
    k: u32,
}

impl KneserParams {
    pub fn new(n: u32, k: u32) -> Result<Self, KneserError> {
        if k == 0 || k > n {
            return Err(KneserError::InvalidParams { n, k });
        }
        Ok(KneserParams { n, k })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn k(self) -> u32 {
        self.k
    }

    /// `C(n, k)` as a machine integer (saturating).
    pub fn subset_count(self) -> u128 {
        let (n, k) = (self.n as u128, self.k.min(self.n - self.k) as u128);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = match acc.checked_mul(n - i) {
                Some(v) => v / (i + 1),
                None => return u128::MAX,
            };
        }
        acc
    }
}

/// A `k`-element subset of `[n] = {1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    n: u32,
    members: Vec<u32>,
}

impl KSubset {
    /// Members are sorted and deduplicated; returns `None` if any member is outside `1..=n`.
    pub fn new(n: u32, members: impl IntoIterator<Item = u32>) -> Option<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m == 0 || m > n) {
            return None;
        }
        Some(KSubset { n, members })
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Members concatenated; multi-digit members are parenthesised, e.g. `29(10)`.
    pub fn label(&self) -> String {
        let mut s = String::new();
        for &m in &self.members {
            if m < 10 {
                write!(s, "{m}").unwrap();
            } else {
                write!(s, "({m})").unwrap();
            }
        }
        s
    }

    /// Inverse of [`KSubset::label`].
    pub fn parse_label(n: u32, label: &str) -> Option<Self> {
        let mut members = Vec::new();
        let mut chars = label.chars();
        while let Some(c) = chars.next() {
            if c == '(' {
                let mut num = String::new();
                for d in chars.by_ref() {
                    if d == ')' {
                        break;
                    }
                    num.push(d);
                }
                members.push(num.parse().ok()?);
            } else {
                members.push(c.to_digit(10)?);
            }
        }
        let len = members.len();
        let s = KSubset::new(n, members)?;
        (s.k() == len).then_some(s)
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All `C(n,k)` subsets in lexicographic order of their member sequences.
pub fn k_subsets(p: KneserParams) -> Vec<KSubset> {
    let (n, k) = (p.n, p.k as usize);
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(KSubset { n, members: cur.clone() });
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i) as u32) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn graph_on_subsets(subsets: &[KSubset], complemented: bool) -> Result<Graph, KneserError> {
    let labels = subsets.iter().map(KSubset::label).collect();
    let mut edges = Vec::new();
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            if subsets[a].is_disjoint(&subsets[b]) != complemented {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_index_edges(labels, edges)?)
}

fn check_size(p: KneserParams) -> Result<(), KneserError> {
    let count = p.subset_count();
    if count > MAX_GENERATED_VERTICES as u128 {
        return Err(KneserError::TooLarge { vertices: count });
    }
    Ok(())
}

/// `K(n,k)` (adjacent iff disjoint) or its complement (adjacent iff distinct and intersecting).
pub fn kneser_graph(p: KneserParams, complemented: bool) -> Result<Graph, KneserError> {
    check_size(p)?;
    graph_on_subsets(&k_subsets(p), complemented)
}

/// Induced subgraph on the `m` lexicographically smallest subsets.
pub fn lex_prefix_subgraph(p: KneserParams, m: usize, complemented: bool) -> Result<Graph, KneserError> {
    check_size(p)?;
    let all = k_subsets(p);
    if m == 0 || m > all.len() {
        return Err(KneserError::PrefixOutOfRange { m, total: all.len() });
    }
    graph_on_subsets(&all[..m], complemented)
}

/// Vertex triples of the 16-vertex triangle-free subgraph of `K(8,3)`, in drawing order (vertex `i+1`).
pub const S16_TRIPLES: [[u32; 3]; 16] = [
    [3, 5, 7],
    [4, 6, 8],
    [1, 2, 8],
    [1, 4, 6],
    [1, 4, 8],
    [1, 6, 8],
    [1, 2, 7],
    [2, 3, 5],
    [2, 3, 7],
    [2, 5, 7],
    [3, 4, 6],
    [3, 4, 5],
    [2, 5, 8],
    [4, 5, 8],
    [1, 6, 7],
    [3, 6, 7],
];

/// Edges as drawn, by 1-based vertex number in drawing order.
pub const S16_EDGES: [(usize, usize); 36] = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 7), (2, 8), (2, 9), (2, 10),
    (3, 11), (3, 12), (3, 16),
    (7, 12), (7, 11), (7, 14),
    (4, 8), (4, 9), (4, 10), (4, 13),
    (5, 8), (5, 9), (5, 10), (5, 16),
    (6, 8), (6, 9), (6, 10), (6, 12),
    (8, 15),
    (9, 14),
    (10, 11),
    (13, 15), (13, 16), (13, 11),
    (14, 15), (14, 16),
    (12, 15),
];

pub fn s16_subsets() -> Vec<KSubset> {
    S16_TRIPLES
        .iter()
        .map(|t| KSubset::new(8, t.iter().copied()).expect("triples lie in [8]"))
        .collect()
}

/// The 16-vertex, 36-edge graph S, labeled by its triples in drawing order.
pub fn s16_graph() -> Graph {
    let labels = s16_subsets().iter().map(KSubset::label).collect();
    Graph::from_index_edges(labels, S16_EDGES.iter().map(|&(a, b)| (a - 1, b - 1))).expect("edge list is well formed")
}

/// One vertex of `K(6,2)` and its padded image in `K(15k-24, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedVertex {
    pub base: KSubset,
    pub image: KSubset,
}

/// Ground-set size `15k - 24` used by [`pad_embedding`].
pub fn padded_ground(k: u32) -> u32 {
    15 * k - 24
}

/// Extends each 2-subset of `[6]` with its own block of `k-2` fresh elements from
/// `7..=15k-24`, blocks assigned in lex order of the 2-subsets.
pub fn pad_embedding(k: u32) -> Result<Vec<PaddedVertex>, KneserError> {
    if k < 2 {
        return Err(KneserError::PaddingNeedsK2 { k });
    }
    let ground = padded_ground(k);
    let pad = k - 2;
    let base = k_subsets(KneserParams::new(6, 2)?);
    Ok(base
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let first = 7 + i as u32 * pad;
            let image = KSubset::new(ground, b.members().iter().copied().chain(first..first + pad)).expect("padding stays inside the ground set");
            PaddedVertex { base: b, image }
        })
        .collect())
}
