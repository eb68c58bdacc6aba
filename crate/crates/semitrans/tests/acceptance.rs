//! Acceptance criteria, one PASS/FAIL line each. Runs without the test harness so
//! the lines are always printed; exits non-zero if any criterion fails.
//!
//! Solver verdicts on the hard instances are cross-checked against a plain
//! backtracking search that only calls the reference verifier.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use semitrans_core::bounds::{
    binomial_inequality, classify, complement_chromatic, ekr_independence, exact_chromatic, kneser_chromatic, Status,
};
use semitrans_core::kneser::{kneser_graph, lex_prefix_subgraph, s16_graph, s16_subsets, KneserParams};
use semitrans_core::orient::{find_shortcut, is_acyclic, longest_directed_path, orientation_from_coloring, verify_semi_transitive, Method};
use semitrans_core::solver::{exhaustive_check, search_only, solve, Budget, ExhaustiveOutcome, SolveStatus, WallClock};
use semitrans_core::words::{alternate, represents, word_complement_matching, Word};
use semitrans_core::{Dir, Graph, Orientation, PartialOrientation};

fn kneser(n: u32, k: u32) -> Graph {
    kneser_graph(KneserParams::new(n, k).unwrap(), false).unwrap()
}

fn complement_kneser(n: u32, k: u32) -> Graph {
    kneser_graph(KneserParams::new(n, k).unwrap(), true).unwrap()
}

fn is_witness(s: &SolveStatus) -> bool {
    match s {
        SolveStatus::Witness(o) => verify_semi_transitive(o).is_semi_transitive(),
        _ => false,
    }
}

/// Edge-by-edge backtracking that prunes on the reference verifier's partial checks.
fn reference_search(g: &Graph) -> bool {
    fn go(p: &mut PartialOrientation, e: usize) -> bool {
        if e == p.base().edge_count() {
            return true;
        }
        for d in [Dir::Forward, Dir::Backward] {
            if e == 0 && d == Dir::Backward {
                break;
            }
            let mark = p.mark();
            p.assign(e, d).unwrap();
            let ok = is_acyclic(p).is_ok() && find_shortcut(p, Method::Reachability).unwrap().is_none();
            if ok && go(p, e + 1) {
                return true;
            }
            p.undo_to(mark);
        }
        false
    }
    go(&mut PartialOrientation::new(g), 0)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w5_is_not_semi_transitive() -> Check {
    let start = Instant::now();
    let g = Graph::wheel(5);
    ensure((g.vertex_count(), g.edge_count()) == (6, 10), || "W5 shape".into())?;
    let out = solve(&g, &Budget::millis(1_000));
    ensure(out.status == SolveStatus::Exhausted, || format!("solve: {:?}", out.status))?;
    ensure(exhaustive_check(&g) == Ok(ExhaustiveOutcome::NotSemiTransitive), || "exhaustive check found a witness".into())?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("solve Exhausted ({} nodes), exhaustive NotSemiTransitive", out.stats.nodes))
}

fn k62_is_not_semi_transitive() -> Check {
    let start = Instant::now();
    let g = kneser(6, 2);
    ensure((g.vertex_count(), g.edge_count()) == (15, 45), || "K(6,2) shape".into())?;
    let out = solve(&g, &Budget::millis(60_000));
    ensure(out.status == SolveStatus::Exhausted, || format!("solve: {:?}", out.status))?;
    within(Duration::from_secs(60), start)?;
    ensure(!reference_search(&g), || "reference search found an orientation".into())?;
    Ok(format!("Exhausted after {} nodes in {} ms; reference search agrees", out.stats.nodes, out.stats.elapsed_ms))
}

fn k62_vertex_deleted() -> Check {
    let g = kneser(6, 2);
    for v in 0..15 {
        let start = Instant::now();
        let h = g.without_vertex(v);
        let out = solve(&h, &Budget::millis(60_000));
        ensure(out.status == SolveStatus::Exhausted, || format!("without {}: {:?}", g.label(v), out.status))?;
        within(Duration::from_secs(60), start)?;
    }
    ensure(!reference_search(&g.without_vertex(0)), || "reference search disagrees on K(6,2) - 12".into())?;
    Ok("all 15 vertex-deleted subgraphs Exhausted".into())
}

fn s16_and_minimality() -> Check {
    let start = Instant::now();
    let s = s16_graph();
    let out = solve(&s, &Budget::millis(60_000));
    ensure(out.status == SolveStatus::Exhausted, || format!("S: {:?}", out.status))?;
    within(Duration::from_secs(60), start)?;
    ensure(!reference_search(&s), || "reference search found an orientation of S".into())?;
    for v in 0..16 {
        let start = Instant::now();
        let h = s.without_vertex(v);
        let out = solve(&h, &Budget::millis(60_000));
        ensure(is_witness(&out.status), || format!("S without {}: {:?}", s.label(v), out.status))?;
        within(Duration::from_secs(60), start)?;
    }
    Ok(format!("S Exhausted ({} nodes); all 16 vertex-deleted subgraphs have verified witnesses", out.stats.nodes))
}

fn k83_prefix46() -> Check {
    let start = Instant::now();
    let g = lex_prefix_subgraph(KneserParams::new(8, 3).unwrap(), 46, false).unwrap();
    let out = solve(&g, &Budget::millis(120_000));
    ensure(is_witness(&out.status), || format!("solve: {:?}", out.status))?;
    within(Duration::from_secs(120), start)?;
    // The plain search must also get there without the colour-order shortcut.
    let searched = search_only(&g, &Budget::millis(120_000), &WallClock::start());
    ensure(is_witness(&searched.status), || format!("search without colour order: {:?}", searched.status))?;
    Ok(format!("{} vertices, {} edges; witness verified (search alone: {} nodes)", g.vertex_count(), g.edge_count(), searched.stats.nodes))
}

fn k83_certificate() -> Check {
    let start = Instant::now();
    let s = s16_graph();
    let induced = kneser(8, 3).induced_subgraph(s.labels()).map_err(|e| e.to_string())?;
    ensure(induced.label_edge_set() == s.label_edge_set(), || "edge sets differ".into())?;
    let subsets = s16_subsets();
    let disjoint_pairs = (0..16).flat_map(|i| (i + 1..16).map(move |j| (i, j))).filter(|&(i, j)| subsets[i].is_disjoint(&subsets[j])).count();
    ensure(disjoint_pairs == s.edge_count(), || format!("{disjoint_pairs} disjoint pairs vs {} edges", s.edge_count()))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("S = K(8,3) induced on its 16 triples ({} edges)", s.edge_count()))
}

fn complement_words() -> Check {
    let start = Instant::now();
    for k in 1..=4 {
        let (w, g) = word_complement_matching(k).map_err(|e| e.to_string())?;
        ensure(represents(&w, &g).holds(), || format!("k={k}: represents() fails"))?;
        // Brute force: every pair of letters alternates exactly when adjacent.
        for a in 0..g.vertex_count() {
            for b in a + 1..g.vertex_count() {
                let alt = alternate(&w, g.label(a), g.label(b)).unwrap();
                ensure(alt == g.adjacent(a, b), || format!("k={k}: pair {} {}", g.label(a), g.label(b)))?;
            }
        }
        let expected = complement_kneser(2 * k, k);
        ensure(g.edge_count() == expected.edge_count(), || format!("k={k}: edge count"))?;
    }
    let w = Word::parse_compact("11245431252");
    ensure(alternate(&w, "2", "5") == Ok(true), || "2 and 5 should alternate".into())?;
    ensure(alternate(&w, "2", "4") == Ok(false), || "2 and 4 should not alternate".into())?;
    within(Duration::from_secs(5), start)?;
    Ok("matching words represent the complement of K(2k,k) for k = 1..4; alternation examples hold".into())
}

fn three_colouring_pipeline() -> Check {
    let start = Instant::now();
    for (n, k, vertices) in [(5, 2, 10), (7, 3, 35)] {
        let g = kneser(n, k);
        ensure(g.vertex_count() == vertices, || format!("K({n},{k}) has {} vertices", g.vertex_count()))?;
        let c = exact_chromatic(&g, 10_000_000).ok_or(format!("K({n},{k}): budget"))?;
        ensure(c.colors == 3 && c.is_proper(&g), || format!("K({n},{k}): {} colours", c.colors))?;
        let o = orientation_from_coloring(&g, &c.assignment).map_err(|e| e.to_string())?;
        ensure(verify_semi_transitive(&o).is_semi_transitive(), || format!("K({n},{k}): orientation rejected"))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok("chi = 3 and verified colour orientations for K(5,2), K(7,3)".into())
}

/// Maximum independent set by subset enumeration.
fn brute_force_independence(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 35);
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w)).collect();
    fn grow(adj: &[u64], v: usize, allowed: u64, size: usize, best: &mut usize) {
        if size + (allowed >> v).count_ones() as usize <= *best {
            return;
        }
        if v == adj.len() {
            *best = size;
            return;
        }
        if allowed >> v & 1 == 1 {
            grow(adj, v + 1, allowed & !adj[v], size + 1, best);
        }
        grow(adj, v + 1, allowed & !(1 << v), size, best);
    }
    let mut best = 0;
    grow(&adj, 0, (1u64 << n) - 1, 0, &mut best);
    best
}

fn formulas() -> Check {
    let start = Instant::now();
    let chi = exact_chromatic(&kneser(5, 2), 1_000_000).ok_or("budget")?.colors as u64;
    ensure(kneser_chromatic(5, 2) == Ok(chi) && chi == 3, || format!("chi(K(5,2)) = {chi}"))?;
    ensure(complement_chromatic(7, 3).unwrap() == 18u32.into(), || "complement chromatic of K(7,3)".into())?;
    ensure(ekr_independence(7, 3).unwrap() == 15u32.into(), || "independence of K(7,3)".into())?;
    for n in 1..=7u32 {
        for k in 1..=3.min(n) {
            if n < 2 * k {
                continue;
            }
            let alpha = brute_force_independence(&kneser(n, k));
            ensure(ekr_independence(n as u64, k as u64).unwrap() == alpha.into(), || format!("K({n},{k}): alpha {alpha}"))?;
        }
    }
    for k in 4..=64 {
        ensure(binomial_inequality(k).holds, || format!("inequality fails at k={k}"))?;
    }
    let three = binomial_inequality(3);
    ensure(!three.holds, || "inequality holds at k=3".into())?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("all formula values exact; {three}"))
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| Graph::numbered(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap())
        .collect()
}

fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v).iter() {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Graph::numbered(n, edges.into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

fn random_acyclic(rng: &mut StdRng, g: &Graph) -> Orientation {
    let mut rank: Vec<usize> = (0..g.vertex_count()).collect();
    rank.shuffle(rng);
    Orientation::from_ranking(g.clone(), &rank).unwrap()
}

fn verifier_agreement(o: &Orientation) -> Result<(), String> {
    let fast = find_shortcut(o, Method::Reachability).unwrap();
    let slow = find_shortcut(o, Method::Exhaustive).map_err(|e| e.to_string())?;
    ensure(fast.is_some() == slow.is_some(), || format!("verifiers disagree on {:?}", o.base().label_edge_set()))?;
    if let Some(w) = fast {
        ensure(w.is_valid_for(o), || "invalid witness".into())?;
    }
    Ok(())
}

fn property_suite() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut corpus: Vec<Graph> = (1..=5).flat_map(all_graphs).filter(is_connected).collect();
    corpus.push(Graph::wheel(5));
    corpus.extend((4..=8).map(Graph::cycle));
    corpus.push(kneser(4, 2));
    corpus.push(complement_kneser(4, 2));
    for _ in 0..40 {
        let n = rng.gen_range(5..=8);
        let g = random_graph(&mut rng, n, 0.45);
        if g.edge_count() <= 20 {
            corpus.push(g);
        }
    }

    let mut orientations = 0;
    for g in corpus.iter().filter(|g| g.edge_count() <= 9) {
        let m = g.edge_count();
        for mask in 0u32..1 << m {
            let dirs = (0..m).map(|i| if mask >> i & 1 == 1 { Dir::Backward } else { Dir::Forward }).collect();
            let o = Orientation::new(g.clone(), dirs).unwrap();
            if is_acyclic(&o).is_ok() {
                verifier_agreement(&o)?;
                orientations += 1;
            }
        }
    }
    for _ in 0..200 {
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, 8, p);
        verifier_agreement(&random_acyclic(&mut rng, &g))?;
    }

    let mut solved = 0;
    for g in corpus.iter().filter(|g| g.edge_count() <= 20) {
        let oracle = match exhaustive_check(g).map_err(|e| e.to_string())? {
            ExhaustiveOutcome::SemiTransitive(o) => {
                ensure(verify_semi_transitive(&o).is_semi_transitive(), || "oracle witness rejected".into())?;
                true
            }
            ExhaustiveOutcome::NotSemiTransitive => false,
        };
        let out = solve(g, &Budget::millis(60_000));
        ensure(out.status != SolveStatus::Timeout, || "timeout on a corpus graph".into())?;
        ensure(is_witness(&out.status) == oracle, || format!("solve disagrees with oracle on {:?}", g.label_edge_set()))?;
        solved += 1;
    }

    // Graphs whose chromatic number is known in closed form.
    let known: Vec<(Graph, usize)> = vec![
        (Graph::cycle(5), 3),
        (Graph::cycle(6), 2),
        (Graph::wheel(5), 4),
        (Graph::wheel(6), 3),
        (Graph::complete(6), 6),
        (kneser(5, 2), kneser_chromatic(5, 2).unwrap() as usize),
        (kneser(6, 2), kneser_chromatic(6, 2).unwrap() as usize),
        (kneser(7, 2), kneser_chromatic(7, 2).unwrap() as usize),
        (kneser(7, 3), kneser_chromatic(7, 3).unwrap() as usize),
    ];
    for i in 0..100 {
        let (g, chi) = &known[i % known.len()];
        let o = random_acyclic(&mut rng, g);
        let lp = longest_directed_path(&o).map_err(|e| e.to_string())?;
        ensure(lp.length + 1 >= *chi, || format!("longest path {} with chi {chi}", lp.length))?;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{orientations} exhaustive + 200 random orientations agree; {solved} graphs match the oracle; 100 longest paths >= chi-1"))
}

fn solver_says_st(g: &Graph) -> Option<bool> {
    match solve(g, &Budget::millis(60_000)).status {
        SolveStatus::Witness(o) => Some(verify_semi_transitive(&o).is_semi_transitive()),
        SolveStatus::Exhausted => Some(false),
        SolveStatus::Timeout => None,
    }
}

fn classifier_table() -> Check {
    let start = Instant::now();
    let status = |n: u64, k: u64, c: bool| classify(n, k, c).unwrap().status;
    use Status::*;
    for n in 2..=40 {
        let want = if n <= 5 { SemiTransitive } else { NotSemiTransitive };
        ensure(status(n, 2, false) == want, || format!("K({n},2)"))?;
    }
    for n in 3..=40 {
        let want = if n <= 7 { SemiTransitive } else { NotSemiTransitive };
        ensure(status(n, 3, false) == want, || format!("K({n},3)"))?;
    }
    for k in 4..=12 {
        for n in k..=16 * k {
            let want = if n <= 2 * k + 1 {
                SemiTransitive
            } else if n >= 15 * k - 24 {
                NotSemiTransitive
            } else {
                Unknown
            };
            ensure(status(n, k, false) == want, || format!("K({n},{k})"))?;
        }
    }
    for k in 2..=12 {
        for n in k..=4 * k {
            let want = if n <= 2 * k { SemiTransitive } else { NotSemiTransitive };
            ensure(status(n, k, true) == want, || format!("complement K({n},{k})"))?;
        }
    }
    // k = 1: distinct singletons never intersect, so the complement has no edges.
    for n in 1..=10 {
        ensure(status(n, 1, true) == SemiTransitive, || format!("complement K({n},1)"))?;
    }

    let mut spot = 0;
    let cases: [(u32, u32, bool); 14] = [
        (4, 2, false),
        (5, 2, false),
        (6, 2, false),
        (7, 2, false),
        (6, 3, false),
        (7, 3, false),
        (5, 1, false),
        (4, 2, true),
        (3, 2, true),
        (5, 2, true),
        (6, 3, true),
        (4, 1, true),
        (9, 4, false),
        (8, 3, false),
    ];
    for (n, k, c) in cases {
        let g = if c { complement_kneser(n, k) } else { kneser(n, k) };
        let claimed = classify(n as u64, k as u64, c).unwrap().status;
        let verdict = if g.edge_count() <= 20 {
            Some(matches!(exhaustive_check(&g).unwrap(), ExhaustiveOutcome::SemiTransitive(_)))
        } else if (n, k, c) == (8, 3, false) {
            // Whole-graph search is out of reach; the induced copy of S decides it.
            let s = s16_graph();
            ensure(g.induced_subgraph(s.labels()).unwrap().label_edge_set() == s.label_edge_set(), || "S not induced".into())?;
            solver_says_st(&s)
        } else {
            solver_says_st(&g)
        };
        let Some(st) = verdict else { continue };
        let want = claimed == SemiTransitive;
        ensure(st == want, || format!("({n},{k},{c}): classifier {claimed}, solver {st}"))?;
        spot += 1;
    }
    ensure(spot >= 12, || format!("only {spot} spot checks decided"))?;
    Ok(format!("table reproduced; {spot} classifications confirmed by search or enumeration in {} ms", start.elapsed().as_millis()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 W5 not semi-transitive", w5_is_not_semi_transitive),
        ("2 K(6,2) not semi-transitive", k62_is_not_semi_transitive),
        ("3 K(6,2) vertex-deleted subgraphs", k62_vertex_deleted),
        ("4 S not semi-transitive and minimal", s16_and_minimality),
        ("5 K(8,3) lex prefix of 46", k83_prefix46),
        ("6 K(8,3) contains S", k83_certificate),
        ("7 complement words", complement_words),
        ("8 3-colouring pipeline", three_colouring_pipeline),
        ("9 formula oracles", formulas),
        ("10 property suite", property_suite),
        ("11 classifier table", classifier_table),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{ms} ms]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{ms} ms]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
