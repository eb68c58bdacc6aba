//! Cross-checks between independent implementations, over small graph corpora and random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use semitrans_core::bounds::{
    binomial, ekr_independence, exact_chromatic, has_clique_threshold, kneser_chromatic, max_clique, maximum_independent_set,
};
use semitrans_core::kneser::{kneser_graph, pad_embedding, s16_graph, s16_subsets, k_subsets, KSubset, KneserParams};
use semitrans_core::orient::{find_shortcut, is_acyclic, longest_directed_path, orientation_from_coloring, Method};
use semitrans_core::solver::{exhaustive_check, search_only, solve_with_clock, Budget, ExhaustiveOutcome, NoClock, SolveStatus};
use semitrans_core::words::{alternate, graph_of_word, represents, Word};
use semitrans_core::{Dir, Graph, Orientation};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every labelled graph on `n` vertices.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = all_pairs(n);
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
        Graph::numbered(n, edges).unwrap()
    })
}

fn orientations(g: &Graph) -> impl Iterator<Item = Orientation> + '_ {
    let m = g.edge_count();
    (0u64..1 << m).map(move |mask| {
        let dirs = (0..m).map(|i| if mask >> i & 1 == 1 { Dir::Backward } else { Dir::Forward }).collect();
        Orientation::new(g.clone(), dirs).unwrap()
    })
}

fn kneser(n: u32, k: u32) -> Graph {
    kneser_graph(KneserParams::new(n, k).unwrap(), false).unwrap()
}

fn named_corpus() -> Vec<Graph> {
    let mut out = vec![Graph::wheel(4), Graph::wheel(5), Graph::wheel(6)];
    out.extend((4..=8).map(Graph::cycle));
    out.extend((1..=6).map(Graph::complete));
    out.push(kneser(4, 2));
    out.push(kneser_graph(KneserParams::new(4, 2).unwrap(), true).unwrap());
    out.push(kneser(5, 2));
    out
}

fn status_is_st(s: &SolveStatus) -> bool {
    match s {
        SolveStatus::Witness(_) => true,
        SolveStatus::Exhausted => false,
        SolveStatus::Timeout => panic!("small instance timed out"),
    }
}

fn agree_with_oracle(g: &Graph) {
    let oracle = matches!(exhaustive_check(g).unwrap(), ExhaustiveOutcome::SemiTransitive(_));
    let budget = Budget::nodes(1_000_000);
    let solved = solve_with_clock(g, &budget, &NoClock);
    let searched = search_only(g, &budget, &NoClock);
    assert_eq!(status_is_st(&solved.status), oracle, "solve disagrees on {:?}", g.label_edge_set());
    assert_eq!(status_is_st(&searched.status), oracle, "search disagrees on {:?}", g.label_edge_set());
}

#[test]
fn verifiers_agree_on_every_orientation_of_small_graphs() {
    let mut checked = 0;
    for g in (1..=5).flat_map(all_graphs).chain(named_corpus()).filter(|g| g.edge_count() <= 9) {
        for o in orientations(&g) {
            if is_acyclic(&o).is_err() {
                continue;
            }
            let fast = find_shortcut(&o, Method::Reachability).unwrap();
            let slow = find_shortcut(&o, Method::Exhaustive).unwrap();
            assert_eq!(fast.is_some(), slow.is_some());
            if let Some(w) = fast {
                assert!(w.is_valid_for(&o));
            }
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn solver_agrees_with_exhaustive_oracle_on_small_graphs() {
    for g in (1..=5).flat_map(all_graphs).chain(named_corpus()).filter(|g| g.edge_count() <= 20) {
        agree_with_oracle(&g);
    }
}

#[test]
fn kneser_edge_count_formula() {
    for n in 1..=10u32 {
        for k in 1..=n {
            let g = kneser(n, k);
            let (n, k) = (n as u64, k as u64);
            let want = if n >= 2 * k { binomial(n, k).unwrap() * binomial(n - k, k).unwrap() / 2u32 } else { 0u32.into() };
            assert_eq!(g.edge_count().to_string(), want.to_string(), "K({n},{k})");
        }
    }
}

#[test]
fn clique_threshold_matches_clique_search() {
    for n in 1..=9u32 {
        for k in 1..=n.min(4) {
            let omega = max_clique(&kneser(n, k)).len() as u64;
            for c in 1..=4u64 {
                assert_eq!(has_clique_threshold(n as u64, k as u64, c), omega >= c, "K({n},{k}) c={c}");
            }
        }
    }
}

#[test]
fn independence_formula_matches_search() {
    for n in 2..=7u32 {
        for k in 1..=3.min(n / 2) {
            let alpha = maximum_independent_set(&kneser(n, k)).len();
            assert_eq!(ekr_independence(n as u64, k as u64).unwrap(), alpha.into(), "K({n},{k})");
        }
    }
}

#[test]
fn chromatic_formula_matches_search() {
    for (n, k) in [(4, 2), (5, 2), (6, 3), (7, 3)] {
        let c = exact_chromatic(&kneser(n, k), 1_000_000).unwrap();
        assert_eq!(kneser_chromatic(n as u64, k as u64).unwrap(), c.colors as u64);
    }
}

#[test]
fn s16_is_the_disjointness_relation_and_induced_in_k83() {
    let s = s16_graph();
    let subsets = s16_subsets();
    let mut pairs = 0;
    for i in 0..16 {
        for j in i + 1..16 {
            assert_eq!(s.adjacent(i, j), subsets[i].is_disjoint(&subsets[j]), "{} {}", s.label(i), s.label(j));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 120);
    let induced = kneser(8, 3).induced_subgraph(s.labels()).unwrap();
    assert_eq!(induced.label_edge_set(), s.label_edge_set());
    for (a, b, c) in (0..16).flat_map(|a| (a + 1..16).flat_map(move |b| (b + 1..16).map(move |c| (a, b, c)))) {
        assert!(!(s.adjacent(a, b) && s.adjacent(b, c) && s.adjacent(a, c)));
    }
}

#[test]
fn padding_preserves_disjointness() {
    for k in 2..=5 {
        let pad = pad_embedding(k).unwrap();
        for a in &pad {
            for b in &pad {
                if a != b {
                    assert_eq!(a.base.is_disjoint(&b.base), a.image.is_disjoint(&b.image));
                }
            }
        }
    }
    let pad = pad_embedding(3).unwrap();
    let big = kneser(21, 3);
    let induced = big.induced_subgraph(pad.iter().map(|p| p.image.label())).unwrap();
    assert_eq!(induced.edge_count(), 45);
    let small = kneser(6, 2);
    let relabel: Vec<String> = pad.iter().map(|p| p.image.label()).collect();
    let image_of_small = small.relabeled(relabel).unwrap();
    assert_eq!(image_of_small.label_edge_set(), induced.label_edge_set());
}

#[test]
fn restricting_ground_set_gives_smaller_kneser_graph() {
    let big = kneser(7, 2);
    let keep: Vec<String> = k_subsets(KneserParams::new(6, 2).unwrap()).iter().map(KSubset::label).collect();
    assert_eq!(big.induced_subgraph(&keep).unwrap().label_edge_set(), kneser(6, 2).label_edge_set());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = all_pairs(n);
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let edges = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&p, _)| p);
            Graph::numbered(n, edges).unwrap()
        })
    })
}

fn arb_ranked(n_max: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(n_max).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_acyclic_orientations_agree((g, rank) in arb_ranked(8)) {
        let o = Orientation::from_ranking(g, &rank).unwrap();
        prop_assert!(is_acyclic(&o).is_ok());
        let fast = find_shortcut(&o, Method::Reachability).unwrap();
        let slow = find_shortcut(&o, Method::Exhaustive).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(w) = fast {
            prop_assert!(w.is_valid_for(&o));
        }
    }

    #[test]
    fn longest_path_bounds_chromatic_number((g, rank) in arb_ranked(8)) {
        let chi = exact_chromatic(&g, 1_000_000).unwrap().colors;
        let o = Orientation::from_ranking(g, &rank).unwrap();
        let lp = longest_directed_path(&o).unwrap();
        prop_assert!(lp.length + 1 >= chi);
        prop_assert_eq!(lp.path.len(), lp.length + 1);
    }

    #[test]
    fn three_colour_orientations_are_semi_transitive(g in arb_graph(9)) {
        let c = exact_chromatic(&g, 1_000_000).unwrap();
        prop_assume!(c.colors <= 3);
        let o = orientation_from_coloring(&g, &c.assignment).unwrap();
        prop_assert!(semitrans_core::orient::verify_semi_transitive(&o).is_semi_transitive());
    }

    #[test]
    fn solver_matches_oracle_on_random_graphs(g in arb_graph(7).prop_filter("edge limit", |g| g.edge_count() <= 14)) {
        agree_with_oracle(&g);
    }

    #[test]
    fn solver_witness_reversal_is_semi_transitive(g in arb_graph(8)) {
        if let SolveStatus::Witness(o) = solve_with_clock(&g, &Budget::nodes(1_000_000), &NoClock).status {
            prop_assert!(semitrans_core::orient::verify_semi_transitive(&o.reversed()).is_semi_transitive());
        }
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.vertex_count() * g.vertex_count().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn alternation_is_symmetric_and_local(letters in proptest::collection::vec(0u8..4, 0..14)) {
        let w = Word::new(letters.iter().map(|l| l.to_string())).unwrap();
        for (x, y) in [("0", "1"), ("1", "2"), ("0", "3")] {
            let a = alternate(&w, x, y).unwrap();
            prop_assert_eq!(a, alternate(&w, y, x).unwrap());
            let restricted = Word::new(w.letters().iter().filter(|l| *l == x || *l == y).cloned()).unwrap();
            prop_assert_eq!(a, alternate(&restricted, x, y).unwrap());
            prop_assert_eq!(a, alternate(&w.reversed(), x, y).unwrap());
        }
    }

    #[test]
    fn word_graph_is_represented(letters in proptest::collection::vec(0u8..5, 1..16)) {
        let w = Word::new(letters.iter().map(|l| l.to_string())).unwrap();
        let g = graph_of_word(&w, None).unwrap();
        prop_assert!(represents(&w, &g).holds());
        let alphabet: BTreeSet<&str> = w.alphabet();
        prop_assert_eq!(g.vertex_count(), alphabet.len());
    }
}
