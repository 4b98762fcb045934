//! Balanced 2-colorings, cut sets, and parity signatures induced by vertex
//! labelings.
//!
//! A labeling `1..=n` signs an edge negative exactly when its endpoint labels
//! differ in parity. Coloring odd labels `1` and even labels `2` turns the
//! negative edges into the cut of a balanced coloring, and every balanced
//! coloring arises this way, so both minima coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("class sizes {ones} and {twos} differ by more than one")]
    Unbalanced { ones: usize, twos: usize },
    #[error("invalid color character {0:?}, expected '1' or '2'")]
    BadColor(char),
    #[error("labels are not a permutation of 1..={0}")]
    NotPermutation(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    One,
    Two,
}

impl Color {
    pub fn swapped(self) -> Color {
        match self {
            Color::One => Color::Two,
            Color::Two => Color::One,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::One => '1',
            Color::Two => '2',
        }
    }
}

/// Class sizes `(|colors⁻¹(1)|, |colors⁻¹(2)|)`.
pub fn class_sizes(colors: &[Color]) -> (usize, usize) {
    let ones = colors.iter().filter(|&&c| c == Color::One).count();
    (ones, colors.len() - ones)
}

pub fn is_balanced(colors: &[Color]) -> bool {
    let (ones, twos) = class_sizes(colors);
    ones.abs_diff(twos) <= 1
}

/// A vertex 2-coloring whose classes differ in size by at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedColoring(Vec<Color>);

impl BalancedColoring {
    pub fn new(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let (ones, twos) = class_sizes(&colors);
        if ones.abs_diff(twos) > 1 {
            return Err(ColoringError::Unbalanced { ones, twos });
        }
        Ok(BalancedColoring(colors))
    }

    /// Vertices `0..ones` get color 1, the rest color 2.
    pub fn prefix(n: usize, ones: usize) -> Result<Self, ColoringError> {
        Self::new(
            (0..n)
                .map(|v| if v < ones { Color::One } else { Color::Two })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn color(&self, v: usize) -> Color {
        self.0[v]
    }

    pub fn class_sizes(&self) -> (usize, usize) {
        class_sizes(&self.0)
    }

    pub fn swapped(&self) -> BalancedColoring {
        BalancedColoring(self.0.iter().map(|c| c.swapped()).collect())
    }

    /// Swaps colors if needed so that vertex 0 has color 1.
    pub fn normalized(self) -> BalancedColoring {
        match self.0.first() {
            Some(Color::Two) => self.swapped(),
            _ => self,
        }
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.0
    }
}

impl fmt::Display for BalancedColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BalancedColoring {
    type Err = ColoringError;

    /// Parses the report form, a string of `'1'`/`'2'` characters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let colors = s
            .trim()
            .chars()
            .map(|ch| match ch {
                '1' => Ok(Color::One),
                '2' => Ok(Color::Two),
                other => Err(ColoringError::BadColor(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BalancedColoring::new(colors)
    }
}

impl Serialize for BalancedColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BalancedColoring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Edges joining the two color classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub edges: Vec<Edge>,
}

impl CutSet {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

pub fn cut_set(g: &Graph, f: &BalancedColoring) -> Result<CutSet, ColoringError> {
    check_len(g, f.len())?;
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| f.color(e.u()) != f.color(e.v()))
        .collect();
    Ok(CutSet { edges })
}

/// `|cut_set(g, f)|` without materializing the edges.
pub fn cut_size(g: &Graph, f: &BalancedColoring) -> Result<usize, ColoringError> {
    check_len(g, f.len())?;
    Ok(g.edges()
        .iter()
        .filter(|e| f.color(e.u()) != f.color(e.v()))
        .count())
}

fn check_len(g: &Graph, got: usize) -> Result<(), ColoringError> {
    if got != g.n() {
        return Err(ColoringError::LengthMismatch {
            expected: g.n(),
            got,
        });
    }
    Ok(())
}

/// A bijection from vertex indices to labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLabeling(Vec<usize>);

impl VertexLabeling {
    pub fn new(labels: Vec<usize>) -> Result<Self, ColoringError> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &l in &labels {
            if l == 0 || l > n || seen[l - 1] {
                return Err(ColoringError::NotPermutation(n));
            }
            seen[l - 1] = true;
        }
        Ok(VertexLabeling(labels))
    }

    pub fn identity(n: usize) -> Self {
        VertexLabeling((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// Per-edge signs, aligned with `Graph::edges()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSignature {
    signs: Vec<(Edge, Sign)>,
}

impl EdgeSignature {
    pub fn sign(&self, e: Edge) -> Option<Sign> {
        self.signs
            .binary_search_by_key(&e, |&(edge, _)| edge)
            .ok()
            .map(|i| self.signs[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Sign)> + '_ {
        self.signs.iter().copied()
    }

    pub fn negative_edges(&self) -> Vec<Edge> {
        self.signs
            .iter()
            .filter(|(_, s)| *s == Sign::Negative)
            .map(|&(e, _)| e)
            .collect()
    }

    pub fn negative_count(&self) -> usize {
        self.signs
            .iter()
            .filter(|(_, s)| *s == Sign::Negative)
            .count()
    }
}

/// The parity signature of `labeling`: an edge is positive iff its endpoint
/// labels have the same parity.
pub fn labeling_to_signature(
    g: &Graph,
    labeling: &VertexLabeling,
) -> Result<EdgeSignature, ColoringError> {
    check_len(g, labeling.len())?;
    let signs = g
        .edges()
        .iter()
        .map(|&e| {
            let same = labeling.label(e.u()) % 2 == labeling.label(e.v()) % 2;
            (e, if same { Sign::Positive } else { Sign::Negative })
        })
        .collect();
    Ok(EdgeSignature { signs })
}

/// Odd labels become color 1, even labels color 2.
pub fn labeling_to_coloring(labeling: &VertexLabeling) -> BalancedColoring {
    let colors = labeling
        .labels()
        .iter()
        .map(|l| if l % 2 == 1 { Color::One } else { Color::Two })
        .collect();
    // ⌈n/2⌉ odd labels against ⌊n/2⌋ even ones
    BalancedColoring::new(colors).expect("parity classes of a permutation are balanced")
}

/// Inverse of [`labeling_to_coloring`] up to a global color swap.
///
/// The larger class (class 1 on a tie) receives the odd labels `1, 3, 5, ..`
/// in ascending vertex order, the other class the even labels.
pub fn coloring_to_labeling(f: &BalancedColoring) -> VertexLabeling {
    let (ones, twos) = f.class_sizes();
    let odd_class = if ones >= twos { Color::One } else { Color::Two };
    let mut next_odd = 1;
    let mut next_even = 2;
    let labels = f
        .colors()
        .iter()
        .map(|&c| {
            if c == odd_class {
                next_odd += 2;
                next_odd - 2
            } else {
                next_even += 2;
                next_even - 2
            }
        })
        .collect();
    VertexLabeling(labels)
}
