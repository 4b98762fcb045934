//! Exact minimum bisection width by enumeration of balanced colorings.
//!
//! Both searches assign vertices in index order, trying color 1 before color
//! 2, with vertex 0 pinned to color 1. Leaves are therefore visited in
//! lexicographic order of their color strings, and keeping only strictly
//! better leaves yields the lexicographically smallest optimal witness.
//! The cut is maintained incrementally from neighborhood bitmasks.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::contiguous_coloring;
use crate::coloring::{cut_size, BalancedColoring, Color};
use crate::graph::Graph;
use crate::heuristic::{local_search_rna, LocalSearchOptions};

pub const DEFAULT_BRUTE_GUARD: usize = 30;
pub const DEFAULT_BNB_GUARD: usize = 40;
/// Bitmask neighborhoods cap every exact search at this many vertices.
pub const MAX_EXACT_N: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {n} vertices, above the size guard of {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("graph has {n} vertices, need at least {min}")]
    TooSmall { n: usize, min: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    BranchAndBound,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    /// Cut size of `witness`; the exact minimum when `optimal` is set.
    pub rna_value: usize,
    pub witness: BalancedColoring,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub method: Method,
    /// False for heuristic results and for budget-limited searches that
    /// stopped early.
    pub optimal: bool,
}

impl SolveReport {
    /// Checks the report against `g`: witness balanced and its cut equal to
    /// `rna_value`.
    pub fn is_consistent(&self, g: &Graph) -> bool {
        self.witness
            .class_sizes()
            .0
            .abs_diff(self.witness.class_sizes().1)
            <= 1
            && cut_size(g, &self.witness) == Ok(self.rna_value)
    }

    /// Same report with the timing zeroed, for comparisons across runs.
    pub fn without_timing(mut self) -> Self {
        self.elapsed = Duration::ZERO;
        self
    }
}

fn check_guard(g: &Graph, guard: usize) -> Result<Vec<u64>, SolveError> {
    let guard = guard.min(MAX_EXACT_N);
    if g.n() > guard {
        return Err(SolveError::TooLarge { n: g.n(), guard });
    }
    if g.n() == 0 {
        return Err(SolveError::TooSmall { n: 0, min: 1 });
    }
    Ok(g.adjacency_masks().expect("n <= 64"))
}

/// Exhaustive search with the default guard of 30 vertices.
pub fn brute_force_rna(g: &Graph) -> Result<SolveReport, SolveError> {
    brute_force_rna_with_guard(g, DEFAULT_BRUTE_GUARD)
}

pub fn brute_force_rna_with_guard(g: &Graph, guard: usize) -> Result<SolveReport, SolveError> {
    let adj = check_guard(g, guard)?;
    let start = Instant::now();
    let n = g.n();
    let mut search = Enumeration {
        adj: &adj,
        n,
        cap: n.div_ceil(2),
        best: usize::MAX,
        best_ones: 0,
        nodes: 0,
        leaves: 0,
    };
    search.descend(1, 1, 0, 1, 0, 0);
    Ok(SolveReport {
        rna_value: search.best,
        witness: witness_from_mask(n, search.best_ones),
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        method: Method::BruteForce,
        optimal: true,
    })
}

fn witness_from_mask(n: usize, ones: u64) -> BalancedColoring {
    let colors = (0..n)
        .map(|v| {
            if ones >> v & 1 == 1 {
                Color::One
            } else {
                Color::Two
            }
        })
        .collect();
    BalancedColoring::new(colors).expect("search only completes balanced colorings")
}

fn mask_from_coloring(f: &BalancedColoring) -> u64 {
    f.colors()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Color::One)
        .fold(0, |m, (v, _)| m | 1 << v)
}

struct Enumeration<'a> {
    adj: &'a [u64],
    n: usize,
    cap: usize,
    best: usize,
    best_ones: u64,
    nodes: u64,
    leaves: u64,
}

impl Enumeration<'_> {
    fn descend(
        &mut self,
        v: usize,
        ones: u64,
        twos: u64,
        n_ones: usize,
        n_twos: usize,
        cut: usize,
    ) {
        self.nodes += 1;
        if v == self.n {
            self.leaves += 1;
            if cut < self.best {
                self.best = cut;
                self.best_ones = ones;
            }
            return;
        }
        let nb = self.adj[v];
        if n_ones < self.cap {
            let c = cut + (nb & twos).count_ones() as usize;
            self.descend(v + 1, ones | 1 << v, twos, n_ones + 1, n_twos, c);
        }
        if n_twos < self.cap {
            let c = cut + (nb & ones).count_ones() as usize;
            self.descend(v + 1, ones, twos | 1 << v, n_ones, n_twos + 1, c);
        }
    }
}

#[derive(Debug, Clone)]
pub struct BnbOptions {
    pub guard_n: usize,
    /// Stop after this many search nodes and report the incumbent.
    pub node_budget: Option<u64>,
    /// Seed the bound with a local-search solution.
    pub warm_start: bool,
    pub seed: u64,
}

impl Default for BnbOptions {
    fn default() -> Self {
        BnbOptions {
            guard_n: DEFAULT_BNB_GUARD,
            node_budget: None,
            warm_start: true,
            seed: 0,
        }
    }
}

/// Depth-first branch and bound over the same tree as [`brute_force_rna`].
///
/// A node is pruned when its committed cut plus a lower bound on the rest
/// exceeds the incumbent. The bound charges each unassigned vertex the
/// smaller of its edge counts into the two assigned classes; those edge sets
/// are disjoint, so the sum is admissible. Ties with the incumbent are only
/// pruned once the search itself has produced a leaf of that value, which
/// keeps the witness identical to the brute-force one.
pub fn branch_and_bound_rna(g: &Graph, opts: &BnbOptions) -> Result<SolveReport, SolveError> {
    let adj = check_guard(g, opts.guard_n)?;
    let start = Instant::now();
    let n = g.n();

    let mut incumbent = None;
    if opts.warm_start && n >= 2 {
        let ls = LocalSearchOptions {
            seed: opts.seed,
            restarts: 4,
            max_passes: None,
        };
        if let Ok(r) = local_search_rna(g, &ls) {
            incumbent = Some((r.rna_value, mask_from_coloring(&r.witness.normalized())));
        }
    }
    if incumbent.is_none() {
        if let Some((cn, d)) = g.tag().cycle_power_params().filter(|&(cn, _)| cn == n) {
            if let Ok(f) = contiguous_coloring(cn, d) {
                let cut = cut_size(g, &f).expect("length checked by construction");
                incumbent = Some((cut, mask_from_coloring(&f)));
            }
        }
    }

    let mut search = Pruned {
        adj: &adj,
        n,
        cap: n.div_ceil(2),
        best: incumbent.map_or(usize::MAX, |(v, _)| v),
        best_ones: incumbent.map_or(0, |(_, m)| m),
        found: false,
        nodes: 0,
        budget: opts.node_budget.unwrap_or(u64::MAX),
        exhausted: false,
    };
    search.descend(1, 1, 0, 1, 0, 0);
    if !search.found && incumbent.is_none() {
        // stopped before the first leaf
        let f =
            BalancedColoring::prefix(n, n.div_ceil(2)).expect("prefix of ceil(n/2) is balanced");
        search.best = cut_size(g, &f).expect("length matches");
        search.best_ones = mask_from_coloring(&f);
    }
    Ok(SolveReport {
        rna_value: search.best,
        witness: witness_from_mask(n, search.best_ones),
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        method: Method::BranchAndBound,
        optimal: !search.exhausted,
    })
}

struct Pruned<'a> {
    adj: &'a [u64],
    n: usize,
    cap: usize,
    best: usize,
    best_ones: u64,
    found: bool,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Pruned<'_> {
    fn lower_bound(&self, v: usize, ones: u64, twos: u64) -> usize {
        (v..self.n)
            .map(|u| {
                let a = (self.adj[u] & ones).count_ones();
                let b = (self.adj[u] & twos).count_ones();
                a.min(b) as usize
            })
            .sum()
    }

    fn prune(&self, bound: usize) -> bool {
        bound > self.best || (self.found && bound >= self.best)
    }

    fn descend(
        &mut self,
        v: usize,
        ones: u64,
        twos: u64,
        n_ones: usize,
        n_twos: usize,
        cut: usize,
    ) {
        if self.exhausted {
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if v == self.n {
            if cut < self.best || (!self.found && cut == self.best) {
                self.best = cut;
                self.best_ones = ones;
                self.found = true;
            }
            return;
        }
        if self.prune(cut + self.lower_bound(v, ones, twos)) {
            return;
        }
        let nb = self.adj[v];
        if n_ones < self.cap {
            let c = cut + (nb & twos).count_ones() as usize;
            if !self.prune(c) {
                self.descend(v + 1, ones | 1 << v, twos, n_ones + 1, n_twos, c);
            }
        }
        if n_twos < self.cap {
            let c = cut + (nb & ones).count_ones() as usize;
            if !self.prune(c) {
                self.descend(v + 1, ones, twos | 1 << v, n_ones, n_twos + 1, c);
            }
        }
    }
}
