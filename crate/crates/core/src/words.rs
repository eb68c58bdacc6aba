//! Word-representability: letters `x` and `y` alternate in a word when, after
//! deleting every other letter, what remains is `xyxy...` or `yxyx...`. A word
//! represents a graph when its letters are exactly the vertices and two letters
//! alternate iff the vertices are adjacent.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError};
use crate::kneser::{k_subsets, kneser_graph, KSubset, KneserParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    SameLetter(String),
    EmptyToken,
    AlphabetMismatch { missing: Vec<String>, extra: Vec<String> },
    Graph(GraphError),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::SameLetter(x) => write!(f, "alternation needs two distinct letters, got `{x}` twice"),
            WordError::EmptyToken => f.write_str("word tokens must be non-empty"),
            WordError::AlphabetMismatch { missing, extra } => {
                write!(f, "alphabet mismatch: absent from word {missing:?}, not in alphabet {extra:?}")
            }
            WordError::Graph(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for WordError {}

/// A finite sequence of letter tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.iter().any(String::is_empty) {
            return Err(WordError::EmptyToken);
        }
        Ok(Word(letters))
    }

    /// Whitespace-separated tokens.
    pub fn parse(text: &str) -> Self {
        Word(text.split_whitespace().map(ToString::to_string).collect())
    }

    /// One token per non-whitespace character, e.g. `11245431252`.
    pub fn parse_compact(text: &str) -> Self {
        Word(text.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_string()).collect())
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> BTreeSet<&str> {
        self.0.iter().map(String::as_str).collect()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(l)?;
        }
        Ok(())
    }
}

/// Do `x` and `y` alternate in `w`? Vacuously true when the restriction has length 0 or 1.
pub fn alternate(w: &Word, x: &str, y: &str) -> Result<bool, WordError> {
    if x == y {
        return Err(WordError::SameLetter(x.to_string()));
    }
    let mut prev: Option<&str> = None;
    for l in w.0.iter().map(String::as_str).filter(|&l| l == x || l == y) {
        if prev == Some(l) {
            return Ok(false);
        }
        prev = Some(l);
    }
    Ok(true)
}

/// Positions of each letter, used to test every pair in one pass per pair.
fn occurrences(w: &Word) -> BTreeMap<&str, Vec<usize>> {
    let mut occ: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in w.0.iter().enumerate() {
        occ.entry(l.as_str()).or_default().push(i);
    }
    occ
}

/// Alternation of two letters from their sorted position lists.
fn interleaved(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut last_a: Option<bool> = None;
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        if last_a == Some(take_a) {
            return false;
        }
        last_a = Some(take_a);
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
    }
    true
}

/// The graph whose vertices are the distinct letters (lexicographic order) and whose
/// edges are the alternating pairs. A supplied alphabet must equal the letter set.
pub fn graph_of_word(w: &Word, alphabet: Option<&BTreeSet<String>>) -> Result<Graph, WordError> {
    let occ = occurrences(w);
    if let Some(alpha) = alphabet {
        let missing: Vec<String> = alpha.iter().filter(|a| !occ.contains_key(a.as_str())).cloned().collect();
        let extra: Vec<String> = occ.keys().filter(|l| !alpha.contains(**l)).map(|l| l.to_string()).collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(WordError::AlphabetMismatch { missing, extra });
        }
    }
    let letters: Vec<(&str, &Vec<usize>)> = occ.iter().map(|(l, p)| (*l, p)).collect();
    let mut edges = Vec::new();
    for a in 0..letters.len() {
        for b in a + 1..letters.len() {
            if interleaved(letters[a].1, letters[b].1) {
                edges.push((a, b));
            }
        }
    }
    let labels = letters.iter().map(|(l, _)| l.to_string()).collect();
    Graph::from_index_edges(labels, edges).map_err(WordError::Graph)
}

/// Outcome of [`represents`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Represents,
    /// Letter set and vertex set differ.
    AlphabetMismatch { missing: Vec<String>, extra: Vec<String> },
    /// First pair (in graph index order) whose alternation disagrees with adjacency.
    Differs { x: String, y: String, adjacent: bool },
}

impl Representation {
    pub fn holds(&self) -> bool {
        matches!(self, Representation::Represents)
    }
}

/// Does `w` represent `g`?
pub fn represents(w: &Word, g: &Graph) -> Representation {
    let occ = occurrences(w);
    let missing: Vec<String> = g.labels().iter().filter(|l| !occ.contains_key(l.as_str())).cloned().collect();
    let extra: Vec<String> = occ.keys().filter(|l| g.vertex(l).is_none()).map(|l| l.to_string()).collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Representation::AlphabetMismatch { missing, extra };
    }
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            let alt = interleaved(&occ[g.label(a)], &occ[g.label(b)]);
            if alt != g.adjacent(a, b) {
                return Representation::Differs { x: g.label(a).to_string(), y: g.label(b).to_string(), adjacent: g.adjacent(a, b) };
            }
        }
    }
    Representation::Represents
}

/// The complement of `K(2k,k)` relabeled `1..=x` (`x = C(2k,k)`) so that the
/// non-edges are `{2i-1, 2i}`, with the word `1 2 ... x 2 1 4 3 ... x x-1`.
///
/// Each subset is paired with its set complement; pairs are ordered by the lex
/// rank of their smaller member, which receives the odd label.
pub fn word_complement_matching(k: u32) -> Result<(Word, Graph), WordError> {
    assert!(k >= 1, "k must be positive");
    let p = KneserParams::new(2 * k, k).expect("2k >= k >= 1");
    let subsets = k_subsets(p);
    let rank: BTreeMap<&KSubset, usize> = subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut new_label = alloc::vec![0usize; subsets.len()];
    let mut next = 1;
    for (i, s) in subsets.iter().enumerate() {
        let other = KSubset::new(2 * k, (1..=2 * k).filter(|m| !s.members().contains(m))).unwrap();
        let j = rank[&other];
        if i < j {
            new_label[i] = next;
            new_label[j] = next + 1;
            next += 2;
        }
    }
    let base = kneser_graph(p, true).expect("small parameters");
    let x = subsets.len();
    // Reorder vertices so index i carries label i+1.
    let mut position = alloc::vec![0usize; x];
    for (old, &l) in new_label.iter().enumerate() {
        position[old] = l - 1;
    }
    let labels = (1..=x).map(|i| i.to_string()).collect();
    let edges = base.edges().iter().map(|e| (position[e.u], position[e.v]));
    let graph = Graph::from_index_edges(labels, edges).map_err(WordError::Graph)?;
    let first = (1..=x).map(|i| i.to_string());
    let second = (1..=x).map(|i| if i % 2 == 1 { i + 1 } else { i - 1 }.to_string());
    let word = Word(first.chain(second).collect());
    Ok((word, graph))
}
