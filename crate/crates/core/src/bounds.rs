//! Closed forms and constructions for cycle powers `C_n^d`.
//!
//! * [`contiguous_coloring`]: the arc coloring whose cut is exactly `d(d+1)`.
//! * [`theorem_value`], [`ska_bounds`], [`kang_bound`]: the known values and
//!   bounds for the bisection width.
//! * [`reduce_cycle_power`]: deletes a majority-class vertex from `C_n^d`
//!   and patches the gap with `d` new edges, producing `C_{n-1}^d` together
//!   with a balanced coloring whose cut did not grow.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{cut_size, BalancedColoring, ColoringError};
use crate::graph::{cycle_power, Edge, Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("power d = {0} is outside the range d >= 2")]
    PowerOutOfRange(usize),
    #[error("C_{n}^{d} needs n >= {min}")]
    CycleTooShort { n: usize, d: usize, min: usize },
    #[error("pivot {pivot} is not a vertex of C_{n}^d")]
    PivotOutOfRange { pivot: usize, n: usize },
    #[error(
        "pivot {pivot} lies in a class of size {class_size}, below the majority size {needed}"
    )]
    MinorityPivot {
        pivot: usize,
        class_size: usize,
        needed: usize,
    },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `d(d+1)`, the bisection width of `C_n^d` for `n >= 2d+1`.
pub fn theorem_value(d: usize) -> Result<usize, BoundsError> {
    if d < 2 {
        return Err(BoundsError::PowerOutOfRange(d));
    }
    Ok(d * (d + 1))
}

/// The earlier sandwich `(2d, d(d+1))`.
pub fn ska_bounds(d: usize) -> Result<(usize, usize), BoundsError> {
    Ok((2 * d, theorem_value(d)?))
}

/// `⌊(2m + n) / 4⌋`, an upper bound valid for every graph.
pub fn kang_bound(g: &Graph) -> usize {
    (2 * g.m() + g.n()) / 4
}

/// Colors the arc `0..⌊n/2⌋` with 1 and the complementary arc with 2.
///
/// Both arcs have at least `d` vertices, so each of the two arc boundaries is
/// crossed by `1 + 2 + .. + d` edges.
pub fn contiguous_coloring(n: usize, d: usize) -> Result<BalancedColoring, BoundsError> {
    if d < 2 {
        return Err(BoundsError::PowerOutOfRange(d));
    }
    if n < 2 * d + 1 {
        return Err(BoundsError::CycleTooShort {
            n,
            d,
            min: 2 * d + 1,
        });
    }
    Ok(BalancedColoring::prefix(n, n / 2)?)
}

/// Outcome of [`reduce_cycle_power`]. Vertex `j` of `h` is vertex `j + 1`
/// of the rotated input, i.e. input vertex `(j + 1 + pivot) mod n`.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub h: Graph,
    pub f_prime: BalancedColoring,
    /// The patch edges, in `h`'s labels.
    pub added_edges: Vec<Edge>,
    pub cut_before: usize,
    pub cut_after: usize,
    /// Cut edges among the patch edges under `f_prime`.
    pub added_cut: usize,
    /// Cut edges among the deleted vertex's incident edges under the input coloring.
    pub removed_cut: usize,
    pub pivot: usize,
    /// Input vertex `i` became vertex `(i - rotation) mod n` before deletion.
    pub rotation: usize,
}

#[derive(Debug, Serialize)]
struct ReductionJson<'a> {
    n: usize,
    d: usize,
    pivot: usize,
    rotation: usize,
    h_n: usize,
    h_edges: Vec<[usize; 2]>,
    f_prime: &'a BalancedColoring,
    added_edges: Vec<[usize; 2]>,
    cut_before: usize,
    cut_after: usize,
    added_cut: usize,
    removed_cut: usize,
}

impl ReductionResult {
    pub fn to_json(&self, n: usize, d: usize) -> serde_json::Value {
        let pairs = |edges: &[Edge]| edges.iter().map(|e| [e.u(), e.v()]).collect();
        serde_json::to_value(ReductionJson {
            n,
            d,
            pivot: self.pivot,
            rotation: self.rotation,
            h_n: self.h.n(),
            h_edges: pairs(self.h.edges()),
            f_prime: &self.f_prime,
            added_edges: pairs(&self.added_edges),
            cut_before: self.cut_before,
            cut_after: self.cut_after,
            added_cut: self.added_cut,
            removed_cut: self.removed_cut,
        })
        .expect("plain data serializes")
    }
}

/// Removes `pivot` from `C_n^d` colored by `f` and rejoins the two sides of
/// the gap.
///
/// Indices are first rotated so the pivot is vertex 0. Deleting vertex 0
/// leaves the pairs `(n-d+k, 1+k)`, `k < d`, at distance `d` around the
/// shorter cycle but unjoined; adding them gives `C_{n-1}^d` after shifting
/// every index down by one. Each patch edge has both endpoints adjacent to
/// the deleted vertex and no two patch edges share an endpoint, so a cut
/// patch edge can be charged to a distinct cut edge at the pivot.
pub fn reduce_cycle_power(
    n: usize,
    d: usize,
    f: &BalancedColoring,
    pivot: usize,
) -> Result<ReductionResult, BoundsError> {
    if d < 1 {
        return Err(BoundsError::PowerOutOfRange(d));
    }
    if n < 2 * d + 2 {
        return Err(BoundsError::CycleTooShort {
            n,
            d,
            min: 2 * d + 2,
        });
    }
    if f.len() != n {
        return Err(ColoringError::LengthMismatch {
            expected: n,
            got: f.len(),
        }
        .into());
    }
    if pivot >= n {
        return Err(BoundsError::PivotOutOfRange { pivot, n });
    }
    let (ones, twos) = f.class_sizes();
    let class_size = match f.color(pivot) {
        crate::coloring::Color::One => ones,
        crate::coloring::Color::Two => twos,
    };
    let needed = n.div_ceil(2);
    if class_size < needed {
        return Err(BoundsError::MinorityPivot {
            pivot,
            class_size,
            needed,
        });
    }

    let rotated: Vec<_> = (0..n).map(|i| f.color((i + pivot) % n)).collect();
    let rotated = BalancedColoring::new(rotated)?;
    let g = cycle_power(n, d)?;
    let cut_before = cut_size(&g, &rotated)?;
    let removed_cut = g
        .neighbors(0)
        .iter()
        .filter(|&&w| rotated.color(w) != rotated.color(0))
        .count();

    let patch: Vec<(usize, usize)> = (n - d..n).map(|i| (i, (i + d + 1) % n)).collect();
    debug_assert!(patch.iter().all(|&(u, v)| !g.has_edge(u, v)));
    debug_assert!(patch
        .iter()
        .all(|&(u, v)| g.has_edge(0, u) && g.has_edge(0, v)));

    let kept = g
        .edges()
        .iter()
        .filter(|e| e.u() != 0)
        .map(|e| (e.u() - 1, e.v() - 1));
    let added: Vec<(usize, usize)> = patch.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    let h = Graph::from_edges(n - 1, kept.chain(added.iter().copied()))?;
    let reference = cycle_power(n - 1, d)?;
    let h = if h == reference { reference } else { h };

    let f_prime = BalancedColoring::new(rotated.colors()[1..].to_vec())?;
    let cut_after = cut_size(&h, &f_prime)?;
    let added_edges: Vec<Edge> = added.iter().map(|&(u, v)| Edge::new(u, v)).collect();
    let added_cut = added_edges
        .iter()
        .filter(|e| f_prime.color(e.u()) != f_prime.color(e.v()))
        .count();

    Ok(ReductionResult {
        h,
        f_prime,
        added_edges,
        cut_before,
        cut_after,
        added_cut,
        removed_cut,
        pivot,
        rotation: pivot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{cut_set, Color};
    use crate::graph::{make_family, FamilyTag};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Counts cut edges by scanning all vertex pairs at cyclic distance <= d.
    fn pair_scan_cut(n: usize, d: usize, f: &BalancedColoring) -> usize {
        let mut cut = 0;
        for u in 0..n {
            for v in u + 1..n {
                let dist = (v - u).min(n - (v - u));
                if dist <= d && f.color(u) != f.color(v) {
                    cut += 1;
                }
            }
        }
        cut
    }

    #[test]
    fn theorem_and_sandwich_values() {
        assert_eq!(theorem_value(2).unwrap(), 6);
        assert_eq!(theorem_value(3).unwrap(), 12);
        assert_eq!(theorem_value(5).unwrap(), 30);
        assert_eq!(
            theorem_value(1).unwrap_err(),
            BoundsError::PowerOutOfRange(1)
        );
        assert_eq!(ska_bounds(2).unwrap(), (4, 6));
        assert_eq!(ska_bounds(3).unwrap(), (6, 12));
        assert_eq!(ska_bounds(4).unwrap(), (8, 20));
        assert!(ska_bounds(0).is_err());
    }

    #[test]
    fn kang_values() {
        assert_eq!(kang_bound(&cycle_power(7, 2).unwrap()), 8);
        assert_eq!(kang_bound(&make_family(FamilyTag::Complete(5)).unwrap()), 6);
        assert_eq!(kang_bound(&make_family(FamilyTag::Path(4)).unwrap()), 2);
    }

    #[test]
    fn contiguous_examples() {
        let f = contiguous_coloring(7, 2).unwrap();
        assert_eq!(f.to_string(), "1112222");
        assert_eq!(cut_set(&cycle_power(7, 2).unwrap(), &f).unwrap().size(), 6);

        let f = contiguous_coloring(10, 2).unwrap();
        assert_eq!(f.to_string(), "1111122222");
        assert_eq!(pair_scan_cut(10, 2, &f), 6);
        assert_eq!(cut_set(&cycle_power(10, 2).unwrap(), &f).unwrap().size(), 6);

        let f = contiguous_coloring(11, 3).unwrap();
        assert_eq!(pair_scan_cut(11, 3, &f), 12);
        assert_eq!(cut_size(&cycle_power(11, 3).unwrap(), &f).unwrap(), 12);

        assert!(contiguous_coloring(6, 3).is_err());
        assert!(contiguous_coloring(9, 1).is_err());
    }

    #[test]
    fn contiguous_matches_pair_scan() {
        for d in 2..=5 {
            for n in 2 * d + 1..=60 {
                let f = contiguous_coloring(n, d).unwrap();
                let (a, b) = f.class_sizes();
                assert!(a.abs_diff(b) <= 1);
                assert_eq!(pair_scan_cut(n, d, &f), d * (d + 1), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn reduce_n8_d2_contiguous() {
        let f = contiguous_coloring(8, 2).unwrap();
        let r = reduce_cycle_power(8, 2, &f, 0).unwrap();
        assert_eq!(r.cut_before, 6);
        assert!(r.cut_after <= r.cut_before);
        assert_eq!(r.h, cycle_power(7, 2).unwrap());
        assert_eq!(r.h.tag(), FamilyTag::CyclePower { n: 7, d: 2 });
        assert_eq!(r.f_prime.to_string(), "1112222");
    }

    #[test]
    fn reduce_n9_d2_prefix_of_five() {
        let f = BalancedColoring::prefix(9, 5).unwrap();
        let r = reduce_cycle_power(9, 2, &f, 0).unwrap();
        assert_eq!(r.cut_before, 6);
        assert_eq!(r.cut_after, 6);
        assert_eq!(r.h, cycle_power(8, 2).unwrap());
        // patch edges (7,1),(8,2) shift to (6,0),(7,1)
        assert_eq!(r.added_edges, vec![Edge::new(0, 6), Edge::new(1, 7)]);
    }

    #[test]
    fn reduce_errors() {
        let f = BalancedColoring::prefix(7, 4).unwrap();
        assert_eq!(
            reduce_cycle_power(7, 3, &f, 0).unwrap_err(),
            BoundsError::CycleTooShort { n: 7, d: 3, min: 8 }
        );
        let f = BalancedColoring::prefix(9, 5).unwrap();
        assert_eq!(
            reduce_cycle_power(9, 2, &f, 6).unwrap_err(),
            BoundsError::MinorityPivot {
                pivot: 6,
                class_size: 4,
                needed: 5
            }
        );
        assert!(matches!(
            reduce_cycle_power(9, 2, &f, 9).unwrap_err(),
            BoundsError::PivotOutOfRange { .. }
        ));
        assert!(matches!(
            reduce_cycle_power(10, 2, &f, 0).unwrap_err(),
            BoundsError::Coloring(ColoringError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn even_n_either_class_is_majority() {
        let f = BalancedColoring::prefix(10, 5).unwrap();
        for pivot in 0..10 {
            let r = reduce_cycle_power(10, 2, &f, pivot).unwrap();
            assert!(r.cut_after <= r.cut_before);
        }
    }

    #[test]
    fn patch_edges_are_new_and_hang_off_the_pivot() {
        for d in 1..=6 {
            for n in 2 * d + 2..=30 {
                let g = cycle_power(n, d).unwrap();
                let mut endpoints = Vec::new();
                for i in n - d..n {
                    let (u, v) = (i, (i + d + 1) % n);
                    assert!(!g.has_edge(u, v));
                    assert!(g.has_edge(0, u) && g.has_edge(0, v));
                    endpoints.extend([u, v]);
                }
                endpoints.sort_unstable();
                endpoints.dedup();
                assert_eq!(endpoints.len(), 2 * d);
            }
        }
    }

    #[test]
    fn structure_and_monotonicity_on_random_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=5 {
            for n in 2 * d + 2..=24 {
                let reference = cycle_power(n - 1, d).unwrap();
                for _ in 0..20 {
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
                    let f = BalancedColoring::new(colors).unwrap();
                    let majority: Vec<usize> =
                        (0..n).filter(|&v| f.color(v) == Color::One).collect();
                    let pivot = majority[rng.gen_range(0..majority.len())];
                    let r = reduce_cycle_power(n, d, &f, pivot).unwrap();
                    assert_eq!(r.h, reference);
                    assert!(r.added_cut <= r.removed_cut);
                    assert_eq!(r.cut_after, r.cut_before - r.removed_cut + r.added_cut);
                    assert!(r.cut_after <= r.cut_before);
                    // f' is f read off from pivot+1 onward
                    for j in 0..n - 1 {
                        assert_eq!(r.f_prime.color(j), f.color((j + 1 + pivot) % n));
                    }
                }
            }
        }
    }
}
