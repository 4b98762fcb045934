//! Undirected simple graphs on dense vertex indices, the standard families
//! (cycle powers first among them) and the plain-text edge-list format.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("cycle power needs d >= 1, got d = {0}")]
    PowerTooSmall(usize),
    #[error("cycle power C_{n}^{d} needs n >= 2d+1 = {}", 2 * .d + 1)]
    CycleTooShort { n: usize, d: usize },
    #[error("{family} needs at least {min} vertices, got {n}")]
    FamilyTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("cannot generate a custom family")]
    CustomFamily,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {u}-{v} references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

/// Undirected edge stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(usize, usize);

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a self-loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "self-loop {u}-{u}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Graph families with a generator. `Custom` marks anything read from a file
/// without a family header or built from an explicit edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    CyclePower { n: usize, d: usize },
    Path(usize),
    Cycle(usize),
    Star(usize),
    Wheel(usize),
    Complete(usize),
    Custom,
}

impl FamilyTag {
    /// The `(n, d)` parameters when this tags a cycle power.
    pub fn cycle_power_params(self) -> Option<(usize, usize)> {
        match self {
            FamilyTag::CyclePower { n, d } => Some((n, d)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::CyclePower { n, d } => write!(f, "cycle-power n={n} d={d}"),
            FamilyTag::Path(n) => write!(f, "path n={n}"),
            FamilyTag::Cycle(n) => write!(f, "cycle n={n}"),
            FamilyTag::Star(n) => write!(f, "star n={n}"),
            FamilyTag::Wheel(n) => write!(f, "wheel n={n}"),
            FamilyTag::Complete(n) => write!(f, "complete n={n}"),
            FamilyTag::Custom => write!(f, "custom"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = String;

    /// Parses the `Display` form, e.g. `cycle-power n=7 d=2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or("empty family tag")?;
        let mut n = None;
        let mut d = None;
        for w in words {
            let (key, val) = w
                .split_once('=')
                .ok_or_else(|| format!("bad parameter {w:?}"))?;
            let val: usize = val.parse().map_err(|_| format!("bad value in {w:?}"))?;
            match key {
                "n" => n = Some(val),
                "d" => d = Some(val),
                _ => return Err(format!("unknown parameter {key:?}")),
            }
        }
        let need_n = || n.ok_or_else(|| format!("{kind} needs n="));
        Ok(match kind {
            "cycle-power" => FamilyTag::CyclePower {
                n: need_n()?,
                d: d.ok_or("cycle-power needs d=")?,
            },
            "path" => FamilyTag::Path(need_n()?),
            "cycle" => FamilyTag::Cycle(need_n()?),
            "star" => FamilyTag::Star(need_n()?),
            "wheel" => FamilyTag::Wheel(need_n()?),
            "complete" => FamilyTag::Complete(need_n()?),
            "custom" => FamilyTag::Custom,
            other => return Err(format!("unknown family {other:?}")),
        })
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted in canonical order; adjacency lists are sorted too.
/// The hash set backing [`Graph::has_edge`] is built on first use so that
/// huge generated graphs which are only iterated never pay for it.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    tag: FamilyTag,
    lookup: OnceLock<HashSet<Edge>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from raw endpoint pairs, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            edges.push(Edge::new(u, v));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, edges))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            tag: FamilyTag::Custom,
            lookup: OnceLock::new(),
        }
    }

    pub fn with_tag(mut self, tag: FamilyTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    /// Edges in ascending canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n || v >= self.n {
            return false;
        }
        self.lookup
            .get_or_init(|| self.edges.iter().copied().collect())
            .contains(&Edge::new(u, v))
    }

    /// Neighborhoods as bitmasks, for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.0], perm[e.1]))
            .collect();
        edges.sort_unstable();
        Self::from_sorted(self.n, edges)
    }
}

/// The `d`-th power of the cycle on `n` vertices: `i` is joined to `i+1..=i+d`
/// modulo `n`.
pub fn cycle_power(n: usize, d: usize) -> Result<Graph, GraphError> {
    if d < 1 {
        return Err(GraphError::PowerTooSmall(d));
    }
    if n < 2 * d + 1 {
        return Err(GraphError::CycleTooShort { n, d });
    }
    // Emitted directly in canonical order: for each u the forward partners
    // u+1..=u+d that do not wrap, then the wrapped partners u+n-j for
    // j = d down to u+1, all of which exceed u+d because n > 2d.
    let mut edges = Vec::with_capacity(n * d);
    for u in 0..n {
        edges.extend((u + 1..=(u + d).min(n - 1)).map(|v| Edge(u, v)));
        edges.extend((u + 1..=d).rev().map(|j| Edge(u, u + n - j)));
    }
    let adj = (0..n)
        .map(|v| {
            let mut list: Vec<usize> = (1..=d)
                .flat_map(|k| [(v + k) % n, (v + n - k) % n])
                .collect();
            list.sort_unstable();
            list
        })
        .collect();
    Ok(Graph {
        n,
        edges,
        adj,
        tag: FamilyTag::CyclePower { n, d },
        lookup: OnceLock::new(),
    })
}

pub fn make_family(tag: FamilyTag) -> Result<Graph, GraphError> {
    let too_small = |family, min, n| GraphError::FamilyTooSmall { family, min, n };
    let graph = match tag {
        FamilyTag::CyclePower { n, d } => return cycle_power(n, d),
        FamilyTag::Path(n) => {
            if n < 2 {
                return Err(too_small("path", 2, n));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        }
        FamilyTag::Cycle(n) => {
            if n < 3 {
                return Err(too_small("cycle", 3, n));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        FamilyTag::Star(n) => {
            if n < 4 {
                return Err(too_small("star", 4, n));
            }
            Graph::from_edges(n, (1..n).map(|i| (0, i)))?
        }
        FamilyTag::Wheel(n) => {
            // hub 0, rim 1..n
            if n < 4 {
                return Err(too_small("wheel", 4, n));
            }
            let rim = n - 1;
            let spokes = (1..n).map(|i| (0, i));
            let ring = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
            Graph::from_edges(n, spokes.chain(ring))?
        }
        FamilyTag::Complete(n) => {
            if n < 1 {
                return Err(too_small("complete", 1, n));
            }
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
        }
        FamilyTag::Custom => return Err(GraphError::CustomFamily),
    };
    Ok(graph.with_tag(tag))
}

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge(u, v));
            }
        }
    }
    Graph::from_sorted(n, edges)
}

const FAMILY_PREFIX: &str = "# family:";

/// Parses the edge-list format: a `n m` header followed by `m` lines `u v`.
/// Lines starting with `#` are comments, except that a `# family: <tag>`
/// comment attaches a family tag to the result.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut tag = FamilyTag::Custom;
    let mut header = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(FAMILY_PREFIX) {
            tag = rest
                .trim()
                .parse()
                .map_err(|msg| GraphError::Malformed { line: line_no, msg })?;
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields =
            parse_pair(line).map_err(|msg| GraphError::Malformed { line: line_no, msg })?;
        if header.is_none() {
            header = Some(fields);
        } else {
            pairs.push(fields);
        }
    }
    let (n, m) = header.ok_or(GraphError::Malformed {
        line: 0,
        msg: "missing \"n m\" header".into(),
    })?;
    if pairs.len() != m {
        return Err(GraphError::Malformed {
            line: 1,
            msg: format!("header declares {m} edges, found {}", pairs.len()),
        });
    }
    Ok(Graph::from_edges(n, pairs)?.with_tag(tag))
}

fn parse_pair(line: &str) -> Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, String> {
        let tok = it
            .next()
            .ok_or_else(|| format!("expected two integers in {line:?}"))?;
        tok.parse()
            .map_err(|_| format!("not a non-negative integer: {tok:?}"))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(format!("trailing fields in {line:?}"));
    }
    Ok(pair)
}

/// Canonical serialization: optional family comment, header, edges sorted.
pub fn serialize_edge_list(g: &Graph) -> String {
    use std::fmt::Write;
    let mut out = String::with_capacity(16 + 12 * g.m());
    if g.tag != FamilyTag::Custom {
        let _ = writeln!(out, "{FAMILY_PREFIX} {}", g.tag);
    }
    let _ = writeln!(out, "{} {}", g.n, g.m());
    for e in &g.edges {
        let _ = writeln!(out, "{} {}", e.0, e.1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_power_5_2_is_k5() {
        let g = cycle_power(5, 2).unwrap();
        assert_eq!(g.m(), 10);
        assert!((0..5).all(|v| g.degree(v) == 4));
        assert_eq!(g, make_family(FamilyTag::Complete(5)).unwrap());
    }

    #[test]
    fn cycle_power_7_2_counts() {
        // brute enumeration of the defining edge set
        let mut set = HashSet::new();
        for i in 0..7 {
            for j in 1..=2 {
                set.insert(Edge::new(i, (i + j) % 7));
            }
        }
        assert_eq!(set.len(), 14);
        let g = cycle_power(7, 2).unwrap();
        assert_eq!(g.m(), 14);
        assert!((0..7).all(|v| g.degree(v) == 4));
        assert!(set.iter().all(|e| g.has_edge(e.u(), e.v())));
    }

    #[test]
    fn cycle_power_rejects_short_cycles() {
        for d in 1..6 {
            assert_eq!(
                cycle_power(2 * d, d).unwrap_err(),
                GraphError::CycleTooShort { n: 2 * d, d }
            );
        }
        assert_eq!(cycle_power(5, 0).unwrap_err(), GraphError::PowerTooSmall(0));
    }

    #[test]
    fn cycle_power_matches_defining_edge_set() {
        for d in 1..=6 {
            for n in 2 * d + 1..=40 {
                let g = cycle_power(n, d).unwrap();
                let defining = Graph::from_edges(
                    n,
                    (0..n).flat_map(|i| (1..=d).map(move |j| (i, (i + j) % n))),
                )
                .unwrap();
                assert_eq!(g, defining, "C_{n}^{d}");
                for v in 0..n {
                    assert_eq!(g.neighbors(v), defining.neighbors(v));
                }
            }
        }
    }

    #[test]
    fn cycle_power_is_rotation_invariant() {
        for d in 1..=5 {
            for n in 2 * d + 1..=30 {
                let g = cycle_power(n, d).unwrap();
                assert_eq!(g.m(), n * d);
                let rot: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
                assert_eq!(g.relabel(&rot), g, "C_{n}^{d}");
            }
        }
    }

    #[test]
    fn family_edge_counts() {
        assert_eq!(make_family(FamilyTag::Complete(4)).unwrap().m(), 6);
        assert_eq!(make_family(FamilyTag::Path(5)).unwrap().m(), 4);
        assert_eq!(make_family(FamilyTag::Cycle(5)).unwrap().m(), 5);
        assert_eq!(make_family(FamilyTag::Star(7)).unwrap().m(), 6);
        let wheel = make_family(FamilyTag::Wheel(5)).unwrap();
        assert_eq!(wheel.m(), 8);
        assert_eq!(wheel.degree(0), 4);
        assert!((1..5).all(|v| wheel.degree(v) == 3));
    }

    #[test]
    fn family_preconditions() {
        assert!(make_family(FamilyTag::Path(1)).is_err());
        assert!(make_family(FamilyTag::Cycle(2)).is_err());
        assert!(make_family(FamilyTag::Star(3)).is_err());
        assert!(make_family(FamilyTag::Wheel(3)).is_err());
        assert!(make_family(FamilyTag::Complete(0)).is_err());
        assert!(make_family(FamilyTag::Custom).is_err());
        assert_eq!(make_family(FamilyTag::Complete(1)).unwrap().m(), 0);
    }

    #[test]
    fn parse_basic() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(g.tag(), FamilyTag::Custom);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_edge_list("3 1\n0 0\n").unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            parse_edge_list("3 1\n0 3\n").unwrap_err(),
            GraphError::VertexOutOfRange { .. }
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n").unwrap_err(),
            GraphError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n").unwrap_err(),
            GraphError::Malformed { .. }
        ));
        assert!(matches!(
            parse_edge_list("# nothing\n").unwrap_err(),
            GraphError::Malformed { .. }
        ));
        assert!(matches!(
            parse_edge_list("3 1 4\n0 1\n").unwrap_err(),
            GraphError::Malformed { line: 1, .. }
        ));
    }

    #[test]
    fn parse_keeps_isolated_vertices_and_comments() {
        let g = parse_edge_list("# a comment\n6 1\n\n# another\n4 2\n").unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(serialize_edge_list(&g), "6 1\n2 4\n");
    }

    #[test]
    fn family_header_round_trip() {
        let g = cycle_power(7, 2).unwrap();
        let text = serialize_edge_list(&g);
        assert!(text.starts_with("# family: cycle-power n=7 d=2\n7 14\n"));
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.tag(), FamilyTag::CyclePower { n: 7, d: 2 });
    }

    #[test]
    fn tag_display_parses_back() {
        for tag in [
            FamilyTag::CyclePower { n: 9, d: 3 },
            FamilyTag::Path(4),
            FamilyTag::Cycle(5),
            FamilyTag::Star(6),
            FamilyTag::Wheel(7),
            FamilyTag::Complete(8),
            FamilyTag::Custom,
        ] {
            assert_eq!(tag.to_string().parse::<FamilyTag>().unwrap(), tag);
        }
        assert!("cycle-power n=7".parse::<FamilyTag>().is_err());
        assert!("blob n=7".parse::<FamilyTag>().is_err());
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..20, seed in any::<u64>(), p in 0.0f64..1.0) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = gnp(n, p, &mut rng);
            let text = serialize_edge_list(&g);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_edge_list(&back), text);
        }

        #[test]
        fn has_edge_matches_adjacency(n in 2usize..16, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = gnp(n, 0.4, &mut rng);
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(g.has_edge(u, v), g.neighbors(u).contains(&v));
                }
            }
        }
    }
}
