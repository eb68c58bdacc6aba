//! One-shot reproduction of the known results on Kneser graphs, each with its expected outcome.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use semitrans_core::bounds::{
    binomial_inequality, complement_chromatic, ekr_independence, exact_chromatic, kneser_chromatic, maximum_independent_set,
};
use semitrans_core::kneser::{kneser_graph, lex_prefix_subgraph, s16_graph, KneserParams};
use semitrans_core::orient::{orientation_from_coloring, verify_semi_transitive};
use semitrans_core::solver::{exhaustive_check, solve, Budget, ExhaustiveOutcome, SolveStatus};
use semitrans_core::words::{represents, word_complement_matching};
use semitrans_core::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReproCase {
    W5,
    K62,
    K62VertexDeleted,
    S16,
    S16Minimality,
    K83Prefix46,
    K83Certificate,
    Petersen3Col,
    ComplementWords,
    Formulas,
    BinomialInequality,
}

impl ReproCase {
    pub const ALL: [ReproCase; 11] = [
        ReproCase::W5,
        ReproCase::K62,
        ReproCase::K62VertexDeleted,
        ReproCase::S16,
        ReproCase::S16Minimality,
        ReproCase::K83Prefix46,
        ReproCase::K83Certificate,
        ReproCase::Petersen3Col,
        ReproCase::ComplementWords,
        ReproCase::Formulas,
        ReproCase::BinomialInequality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReproCase::W5 => "w5",
            ReproCase::K62 => "k62",
            ReproCase::K62VertexDeleted => "k62-vertex-deleted",
            ReproCase::S16 => "s16",
            ReproCase::S16Minimality => "s16-minimality",
            ReproCase::K83Prefix46 => "k83-prefix46",
            ReproCase::K83Certificate => "k83-certificate",
            ReproCase::Petersen3Col => "petersen-3col",
            ReproCase::ComplementWords => "complement-words",
            ReproCase::Formulas => "formulas",
            ReproCase::BinomialInequality => "binomial-inequality",
        }
    }

    /// What a passing run establishes.
    pub fn expected(self) -> &'static str {
        match self {
            ReproCase::W5 => "W5 is not semi-transitive (search and exhaustive enumeration)",
            ReproCase::K62 => "K(6,2) is not semi-transitive",
            ReproCase::K62VertexDeleted => "every vertex-deleted subgraph of K(6,2) is not semi-transitive",
            ReproCase::S16 => "the 16-vertex subgraph S of K(8,3) is not semi-transitive",
            ReproCase::S16Minimality => "every vertex-deleted subgraph of S is semi-transitive",
            ReproCase::K83Prefix46 => "the first 46 lex-ordered vertices of K(8,3) induce a semi-transitive graph",
            ReproCase::K83Certificate => "S is an induced subgraph of K(8,3), so K(8,3) is not semi-transitive",
            ReproCase::Petersen3Col => "3-colour orientations of K(5,2) and K(7,3) are semi-transitive",
            ReproCase::ComplementWords => "the matching word represents the complement of K(2k,k), k = 1..4",
            ReproCase::Formulas => "chromatic and independence formulas agree with exact values",
            ReproCase::BinomialInequality => "C(2k,k-1) + k < C(2k+1,k)/2 - 2 holds for 4 <= k <= 64 and fails at k = 3",
        }
    }

    pub fn run(self, budget: &Budget) -> CaseReport {
        let start = Instant::now();
        let result = match self {
            ReproCase::W5 => w5(budget),
            ReproCase::K62 => expect_exhausted(&kneser(6, 2), budget),
            ReproCase::K62VertexDeleted => {
                let g = kneser(6, 2);
                all_vertex_deleted(&g, |h| expect_exhausted(h, budget))
            }
            ReproCase::S16 => expect_exhausted(&s16_graph(), budget),
            ReproCase::S16Minimality => {
                let g = s16_graph();
                all_vertex_deleted(&g, |h| expect_witness(h, budget))
            }
            ReproCase::K83Prefix46 => {
                let g = lex_prefix_subgraph(KneserParams::new(8, 3).unwrap(), 46, false).unwrap();
                expect_witness(&g, budget)
            }
            ReproCase::K83Certificate => k83_certificate(),
            ReproCase::Petersen3Col => three_colourings(),
            ReproCase::ComplementWords => complement_words(),
            ReproCase::Formulas => formulas(),
            ReproCase::BinomialInequality => inequality(),
        };
        let (passed, detail) = match result {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        CaseReport { case: self, passed, detail, elapsed_ms: start.elapsed().as_millis() as u64 }
    }
}

impl fmt::Display for ReproCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown case `{0}`")]
pub struct UnknownCase(pub String);

impl FromStr for ReproCase {
    type Err = UnknownCase;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReproCase::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: ReproCase,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} [{} ms]", self.case, self.detail, self.elapsed_ms)
    }
}

type CaseResult = Result<String, String>;

fn kneser(n: u32, k: u32) -> Graph {
    kneser_graph(KneserParams::new(n, k).unwrap(), false).unwrap()
}

fn describe(s: &SolveStatus) -> &'static str {
    match s {
        SolveStatus::Witness(_) => "witness",
        SolveStatus::Exhausted => "exhausted",
        SolveStatus::Timeout => "timeout",
    }
}

fn expect_exhausted(g: &Graph, budget: &Budget) -> CaseResult {
    let out = solve(g, budget);
    match out.status {
        SolveStatus::Exhausted => Ok(format!("NotSemiTransitive after {} nodes", out.stats.nodes)),
        other => Err(format!("expected exhausted search, got {}", describe(&other))),
    }
}

fn expect_witness(g: &Graph, budget: &Budget) -> CaseResult {
    match solve(g, budget).status {
        SolveStatus::Witness(o) if verify_semi_transitive(&o).is_semi_transitive() => Ok("SemiTransitive, witness verified".into()),
        other => Err(format!("expected a verified witness, got {}", describe(&other))),
    }
}

fn all_vertex_deleted(g: &Graph, check: impl Fn(&Graph) -> CaseResult) -> CaseResult {
    for v in 0..g.vertex_count() {
        check(&g.without_vertex(v)).map_err(|e| format!("without {}: {e}", g.label(v)))?;
    }
    Ok(format!("all {} subgraphs as expected", g.vertex_count()))
}

fn w5(budget: &Budget) -> CaseResult {
    let g = Graph::wheel(5);
    expect_exhausted(&g, budget)?;
    match exhaustive_check(&g) {
        Ok(ExhaustiveOutcome::NotSemiTransitive) => Ok("NotSemiTransitive by search and by all 512 orientations".into()),
        other => Err(format!("exhaustive check returned {other:?}")),
    }
}

fn k83_certificate() -> CaseResult {
    let s = s16_graph();
    let induced = kneser(8, 3).induced_subgraph(s.labels()).map_err(|e| e.to_string())?;
    if induced.label_edge_set() != s.label_edge_set() {
        return Err("S differs from the subgraph of K(8,3) induced by its triples".into());
    }
    Ok(format!("S = K(8,3)[{} triples], {} edges; NotSemiTransitive by heredity", s.vertex_count(), s.edge_count()))
}

fn three_colourings() -> CaseResult {
    for (n, k) in [(5, 2), (7, 3)] {
        let g = kneser(n, k);
        let c = exact_chromatic(&g, 10_000_000).ok_or(format!("K({n},{k}): colouring budget exhausted"))?;
        if c.colors != 3 {
            return Err(format!("K({n},{k}): chromatic number {} != 3", c.colors));
        }
        let o = orientation_from_coloring(&g, &c.assignment).map_err(|e| e.to_string())?;
        if !verify_semi_transitive(&o).is_semi_transitive() {
            return Err(format!("K({n},{k}): colour orientation is not semi-transitive"));
        }
    }
    Ok("chromatic number 3 and verified orientations for K(5,2), K(7,3)".into())
}

fn complement_words() -> CaseResult {
    for k in 1..=4 {
        let (w, g) = word_complement_matching(k).map_err(|e| e.to_string())?;
        let r = represents(&w, &g);
        if !r.holds() {
            return Err(format!("k={k}: {r:?}"));
        }
    }
    Ok("represented for k = 1..4".into())
}

fn formulas() -> CaseResult {
    let chi = exact_chromatic(&kneser(5, 2), 1_000_000).map(|c| c.colors as u64);
    if chi != Some(kneser_chromatic(5, 2).unwrap()) {
        return Err(format!("K(5,2): exact chromatic {chi:?}"));
    }
    let cc = complement_chromatic(7, 3).unwrap();
    let ekr = ekr_independence(7, 3).unwrap();
    if cc != 18u32.into() || ekr != 15u32.into() {
        return Err(format!("complement chromatic {cc}, independence {ekr}"));
    }
    for n in 2..=7u32 {
        for k in 1..=3.min(n / 2) {
            let alpha = maximum_independent_set(&kneser(n, k)).len();
            if ekr_independence(n as u64, k as u64).unwrap() != alpha.into() {
                return Err(format!("K({n},{k}): independence {alpha}"));
            }
        }
    }
    Ok("chi(K(5,2)) = 3, chi(complement K(7,3)) = 18, alpha(K(7,3)) = 15, independence n <= 7".into())
}

fn inequality() -> CaseResult {
    if let Some(k) = (4..=64).find(|&k| !binomial_inequality(k).holds) {
        return Err(format!("fails at k={k}"));
    }
    let three = binomial_inequality(3);
    if three.holds {
        return Err("unexpectedly holds at k=3".into());
    }
    Ok(format!("holds for 4..=64; {three}"))
}
