//! Pair-swap local search for an upper bound on the bisection width.
//!
//! Every state is a balanced coloring; a move exchanges one vertex of each
//! class, so balance is never lost. Each pass applies the single best
//! improving exchange (lowest vertex indices on ties) until none improves.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::contiguous_coloring;
use crate::coloring::{cut_size, BalancedColoring, Color};
use crate::exact::{Method, SolveError, SolveReport};
use crate::graph::Graph;

pub const DEFAULT_RESTARTS: usize = 16;

#[derive(Debug, Clone)]
pub struct LocalSearchOptions {
    pub seed: u64,
    /// Random starting bipartitions, in addition to the contiguous warm
    /// start used for tagged cycle powers.
    pub restarts: usize,
    /// Swap limit per start; `None` means n².
    pub max_passes: Option<usize>,
}

impl Default for LocalSearchOptions {
    fn default() -> Self {
        LocalSearchOptions {
            seed: 0,
            restarts: DEFAULT_RESTARTS,
            max_passes: None,
        }
    }
}

pub fn local_search_rna(g: &Graph, opts: &LocalSearchOptions) -> Result<SolveReport, SolveError> {
    let n = g.n();
    if n < 2 {
        return Err(SolveError::TooSmall { n, min: 2 });
    }
    let start = Instant::now();
    let max_passes = opts.max_passes.unwrap_or(n * n);

    let mut starts: Vec<Vec<Color>> = Vec::with_capacity(opts.restarts + 1);
    if let Some((cn, d)) = g.tag().cycle_power_params() {
        if cn == n {
            if let Ok(f) = contiguous_coloring(n, d) {
                starts.push(f.into_inner());
            }
        }
    }
    starts.extend((0..opts.restarts).map(|i| random_start(n, opts.seed, i as u64)));

    let (cut, colors, passes) = starts
        .into_par_iter()
        .map(|colors| descend(g, colors, max_passes))
        .map(|(cut, colors, passes)| {
            let f = BalancedColoring::new(colors)
                .expect("swaps keep balance")
                .normalized();
            (cut, f, passes)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            None::<(usize, BalancedColoring, u64)>,
            |acc, (cut, f, passes)| match acc {
                None => Some((cut, f, passes)),
                Some((bc, bf, total)) => {
                    if (cut, &f) < (bc, &bf) {
                        Some((cut, f, total + passes))
                    } else {
                        Some((bc, bf, total + passes))
                    }
                }
            },
        )
        .expect("at least one start");

    debug_assert_eq!(cut_size(g, &colors), Ok(cut));
    Ok(SolveReport {
        rna_value: cut,
        witness: colors,
        nodes_explored: passes,
        elapsed: start.elapsed(),
        method: Method::Heuristic,
        optimal: false,
    })
}

fn random_start(n: usize, seed: u64, stream: u64) -> Vec<Color> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut colors: Vec<Color> = (0..n)
        .map(|v| {
            if v < n.div_ceil(2) {
                Color::One
            } else {
                Color::Two
            }
        })
        .collect();
    colors.shuffle(&mut rng);
    colors
}

/// External minus internal degree of `v`.
fn gain_of(g: &Graph, colors: &[Color], v: usize) -> i64 {
    g.neighbors(v)
        .iter()
        .map(|&w| if colors[w] != colors[v] { 1 } else { -1 })
        .sum()
}

fn descend(g: &Graph, mut colors: Vec<Color>, max_passes: usize) -> (usize, Vec<Color>, u64) {
    let n = g.n();
    let mut cut = g
        .edges()
        .iter()
        .filter(|e| colors[e.u()] != colors[e.v()])
        .count() as i64;
    let mut gain: Vec<i64> = (0..n).map(|v| gain_of(g, &colors, v)).collect();
    let mut passes = 0u64;

    for _ in 0..max_passes {
        let ones: Vec<usize> = (0..n).filter(|&v| colors[v] == Color::One).collect();
        let twos: Vec<usize> = (0..n).filter(|&v| colors[v] == Color::Two).collect();
        let mut best: Option<(i64, usize, usize)> = None;
        for &a in &ones {
            for &b in &twos {
                let upper = gain[a] + gain[b];
                if upper <= best.map_or(0, |(gb, _, _)| gb) {
                    continue;
                }
                let delta = upper - if g.has_edge(a, b) { 2 } else { 0 };
                if delta > best.map_or(0, |(gb, _, _)| gb) {
                    best = Some((delta, a, b));
                }
            }
        }
        let Some((delta, a, b)) = best else { break };
        colors[a] = Color::Two;
        colors[b] = Color::One;
        cut -= delta;
        passes += 1;
        for v in [a, b] {
            gain[v] = gain_of(g, &colors, v);
            for &w in g.neighbors(v) {
                gain[w] = gain_of(g, &colors, w);
            }
        }
    }
    (cut as usize, colors, passes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force_rna;
    use crate::graph::{cycle_power, gnp, make_family, FamilyTag};
    use rand::Rng;

    #[test]
    fn c7_2_any_seed() {
        let g = cycle_power(7, 2).unwrap();
        for seed in 0..10 {
            let opts = LocalSearchOptions {
                seed,
                ..Default::default()
            };
            assert_eq!(local_search_rna(&g, &opts).unwrap().rna_value, 6);
        }
        let untagged = Graph::from_edges(7, g.edges().iter().map(|e| e.endpoints())).unwrap();
        let r = local_search_rna(&untagged, &LocalSearchOptions::default()).unwrap();
        assert_eq!(r.rna_value, 6);
    }

    #[test]
    fn k6_is_nine() {
        let g = make_family(FamilyTag::Complete(6)).unwrap();
        for seed in 0..5 {
            let opts = LocalSearchOptions {
                seed,
                restarts: 3,
                ..Default::default()
            };
            assert_eq!(local_search_rna(&g, &opts).unwrap().rna_value, 9);
        }
    }

    #[test]
    fn large_cycle_power_warm_start() {
        let g = cycle_power(200, 4).unwrap();
        let opts = LocalSearchOptions {
            restarts: 2,
            ..Default::default()
        };
        let r = local_search_rna(&g, &opts).unwrap();
        assert!(r.rna_value <= 20);
        assert!(r.is_consistent(&g));
    }

    #[test]
    fn needs_two_vertices() {
        let g = Graph::from_edges(1, []).unwrap();
        assert!(local_search_rna(&g, &LocalSearchOptions::default()).is_err());
    }

    #[test]
    fn sound_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for i in 0..200 {
            let n = rng.gen_range(2..=12);
            let g = gnp(n, rng.gen_range(0.1..0.9), &mut rng);
            let opts = LocalSearchOptions {
                seed: i,
                restarts: 4,
                ..Default::default()
            };
            let r = local_search_rna(&g, &opts).unwrap();
            assert!(r.rna_value >= brute_force_rna(&g).unwrap().rna_value);
            assert_eq!(cut_size(&g, &r.witness).unwrap(), r.rna_value);
            assert_eq!(r.witness.colors()[0], Color::One);
        }
    }

    #[test]
    fn reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = gnp(40, 0.2, &mut rng);
        let opts = LocalSearchOptions {
            seed: 77,
            restarts: 8,
            ..Default::default()
        };
        let a = local_search_rna(&g, &opts).unwrap().without_timing();
        let b = local_search_rna(&g, &opts).unwrap().without_timing();
        assert_eq!(a, b);
    }

    #[test]
    fn pass_limit_zero_keeps_start() {
        let g = cycle_power(12, 2).unwrap();
        let opts = LocalSearchOptions {
            restarts: 0,
            max_passes: Some(0),
            ..Default::default()
        };
        let r = local_search_rna(&g, &opts).unwrap();
        assert_eq!(r.witness, contiguous_coloring(12, 2).unwrap());
        assert_eq!(r.nodes_explored, 0);
    }
}
