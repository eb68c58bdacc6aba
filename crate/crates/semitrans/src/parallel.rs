//! Portfolio search: disjoint subtrees of the sequential search tree on worker threads.
//!
//! The status matches the sequential one: a witness from any subtree is a
//! witness for the graph, and `Exhausted` is reported only when every subtree
//! was refuted. The witness itself may differ from the sequential run.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use semitrans_core::solver::{self, Budget, Clock, Prefix, SolveOutcome, SolveStatus, Solver, Stats};
use semitrans_core::Graph;

/// Deepest frontier split attempted.
const MAX_SPLIT_DEPTH: usize = 16;

struct SharedClock<'a> {
    start: Instant,
    stop: &'a AtomicBool,
}

impl Clock for SharedClock<'_> {
    fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }

    fn cancelled(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

fn split(solver: &mut Solver<'_>, jobs: usize) -> Vec<Prefix> {
    let mut leaves = solver.frontier(0);
    for depth in 1..=MAX_SPLIT_DEPTH {
        if leaves.len() >= 4 * jobs {
            break;
        }
        let next = solver.frontier(depth);
        if next.len() <= leaves.len() {
            return next;
        }
        leaves = next;
    }
    leaves
}

/// Like [`solver::solve`], spreading the search over `jobs` threads.
pub fn solve_parallel(g: &Graph, budget: &Budget, jobs: usize) -> SolveOutcome {
    if jobs <= 1 {
        return solver::solve(g, budget);
    }
    let start = Instant::now();
    let mut root = Solver::new(g);
    let hint = root.hint().clone();
    if let Some(o) = root.try_hint() {
        let stats = Stats { hint_colors: hint.colors, hint_hit: true, elapsed_ms: start.elapsed().as_millis() as u64, ..Stats::default() };
        return SolveOutcome { status: SolveStatus::Witness(o), stats };
    }
    let leaves = split(&mut root, jobs);

    let stop = AtomicBool::new(false);
    let next = AtomicUsize::new(0);
    let nodes_used = AtomicU64::new(0);
    let incomplete = AtomicBool::new(false);
    let witness = Mutex::new(None);
    let totals = Mutex::new(Stats { hint_colors: hint.colors, ..Stats::default() });

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(leaves.len()) {
            scope.spawn(|| {
                let clock = SharedClock { start, stop: &stop };
                let mut worker = Solver::with_hint(g, hint.clone());
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= leaves.len() || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut local = *budget;
                    if let Some(max) = budget.max_nodes {
                        let used = nodes_used.load(Ordering::Relaxed);
                        if used >= max {
                            incomplete.store(true, Ordering::Relaxed);
                            break;
                        }
                        local.max_nodes = Some(max - used);
                    }
                    let out = worker.run(&leaves[i], &local, &clock);
                    nodes_used.fetch_add(out.stats.nodes, Ordering::Relaxed);
                    totals.lock().unwrap().absorb(&out.stats);
                    match out.status {
                        SolveStatus::Exhausted => {}
                        SolveStatus::Timeout => {
                            incomplete.store(true, Ordering::Relaxed);
                            break;
                        }
                        SolveStatus::Witness(o) => {
                            witness.lock().unwrap().get_or_insert(o);
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                }
            });
        }
    });

    let mut stats = totals.into_inner().unwrap();
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    let status = match witness.into_inner().unwrap() {
        Some(o) => SolveStatus::Witness(o),
        None if incomplete.load(Ordering::Relaxed) => SolveStatus::Timeout,
        None => SolveStatus::Exhausted,
    };
    SolveOutcome { status, stats }
}
