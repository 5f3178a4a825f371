//! Graphs on `2n` vertices split into `n` senders and `n` receivers.
//!
//! Internally the senders occupy vertices `0..n` and the receivers `n..2n`.
//! Graphs read from a file keep a map from each internal vertex to the label
//! it had in the file, so reports can quote the user's own ids.
//!
//! # File format
//!
//! ```text
//! # comments start with '#'
//! pairs: 2
//! senders: 1 3
//! edges: 1-2 2-3 3-4
//! ```
//!
//! Ids are 1-based and must lie in `1..=2n`. Senders are sorted and mapped to
//! `0..n`; the remaining ids are sorted and mapped to `n..2n`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rand::Rng;
use thiserror::Error;

use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} senders, found {found}")]
    WrongSenderCount { expected: usize, found: usize },
    #[error("sender {0} listed twice")]
    DuplicateSender(usize),
    #[error("a graph needs at least one sender/receiver pair")]
    NoPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error(transparent)]
    Invalid(#[from] GraphError),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing `{0}:` section")]
    MissingSection(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Sender/receiver edge classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgePartition {
    /// Edges with one sender and one receiver endpoint, as `(sender, receiver)`.
    pub e_sr: Vec<(usize, usize)>,
    /// Edges between two senders.
    pub e_s: Vec<(usize, usize)>,
    /// Edges between two receivers.
    pub e_r: Vec<(usize, usize)>,
}

impl EdgePartition {
    pub fn is_tanner_type(&self) -> bool {
        self.e_s.is_empty() && self.e_r.is_empty()
    }

    pub fn len(&self) -> usize {
        self.e_sr.len() + self.e_s.len() + self.e_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The `n×n` blocks of the adjacency matrix.
///
/// `gamma_t[i][j]` is set when sender `i` is joined to receiver `n + j`.
/// `gamma_s` and `gamma_r` are the sender-sender and receiver-receiver
/// blocks; the `_lower`/`_upper` fields hold their strict triangles in
/// internal vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphMatrices {
    pub gamma_t: BitMatrix,
    pub gamma_s: BitMatrix,
    pub gamma_r: BitMatrix,
    pub gamma_s_lower: BitMatrix,
    pub gamma_s_upper: BitMatrix,
    pub gamma_r_lower: BitMatrix,
    pub gamma_r_upper: BitMatrix,
}

/// A simple undirected graph on `2n` vertices with a sender/receiver split.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    n: usize,
    adj: BitMatrix,
    labels: Vec<usize>,
    primed: bool,
}

impl PartitionedGraph {
    /// Builds a graph from internal 0-based vertex pairs. Senders are `0..n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoPairs);
        }
        let size = 2 * n;
        let mut adj = BitMatrix::zeros(size, size);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= size {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w + 1,
                        max: size,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            if adj.get(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
            adj.set(u, v, true);
            adj.set(v, u, true);
        }
        Ok(Self {
            n,
            adj,
            labels: (1..=size).collect(),
            primed: false,
        })
    }

    /// Builds a graph from 1-based file labels, relabeling senders to `0..n`
    /// and receivers to `n..2n` (each group in increasing label order).
    pub fn from_labeled(
        n: usize,
        senders: &[usize],
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoPairs);
        }
        let size = 2 * n;
        if senders.len() != n {
            return Err(GraphError::WrongSenderCount {
                expected: n,
                found: senders.len(),
            });
        }
        let mut sender_set = BTreeSet::new();
        for &s in senders {
            if s == 0 || s > size {
                return Err(GraphError::VertexOutOfRange {
                    vertex: s,
                    max: size,
                });
            }
            if !sender_set.insert(s) {
                return Err(GraphError::DuplicateSender(s));
            }
        }
        let labels: Vec<usize> = sender_set
            .iter()
            .copied()
            .chain((1..=size).filter(|l| !sender_set.contains(l)))
            .collect();
        let mut internal = vec![0; size + 1];
        for (i, &l) in labels.iter().enumerate() {
            internal[l] = i;
        }
        let mut mapped = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > size {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        max: size,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            mapped.push((internal[u], internal[v]));
        }
        let mut g = Self::new(n, &mapped)?;
        g.labels = labels;
        Ok(g)
    }

    /// Erdős–Rényi graph on `2n` vertices with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let size = 2 * n;
        let edges: Vec<_> = (0..size)
            .flat_map(|u| (u + 1..size).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(p))
            .collect();
        Self::new(n, &edges).expect("generated edges are valid")
    }

    /// Number of sender/receiver pairs.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.n
    }

    pub fn is_sender(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn senders(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn receivers(&self) -> std::ops::Range<usize> {
        self.n..2 * self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row(v).ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).weight()
    }

    /// Edges as internal pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices())
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    /// Original 1-based label of an internal vertex.
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Label for display; senders of a mirror copy carry a prime.
    pub fn display_label(&self, v: usize) -> String {
        if self.primed && self.is_sender(v) {
            format!("{}′", self.labels[v])
        } else {
            self.labels[v].to_string()
        }
    }

    pub fn vertex_by_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn is_mirror(&self) -> bool {
        self.primed
    }

    pub fn is_connected(&self) -> bool {
        let size = self.num_vertices();
        let mut seen = vec![false; size];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn classify_edges(&self) -> EdgePartition {
        let mut part = EdgePartition::default();
        for (u, v) in self.edges() {
            match (self.is_sender(u), self.is_sender(v)) {
                (true, true) => part.e_s.push((u, v)),
                (false, false) => part.e_r.push((u, v)),
                (true, false) => part.e_sr.push((u, v)),
                (false, true) => part.e_sr.push((v, u)),
            }
        }
        part
    }

    pub fn sub_matrices(&self) -> SubgraphMatrices {
        let n = self.n;
        let block = |row0: usize, col0: usize| {
            let mut m = BitMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, self.adj.get(row0 + i, col0 + j));
                }
            }
            m
        };
        let gamma_s = block(0, 0);
        let gamma_r = block(n, n);
        SubgraphMatrices {
            gamma_t: block(0, n),
            gamma_s_lower: gamma_s.lower_triangle(),
            gamma_s_upper: gamma_s.upper_triangle(),
            gamma_r_lower: gamma_r.lower_triangle(),
            gamma_r_upper: gamma_r.upper_triangle(),
            gamma_s,
            gamma_r,
        }
    }

    /// The sender-receiver block on its own.
    pub fn gamma_t(&self) -> BitMatrix {
        self.sub_matrices().gamma_t
    }

    pub fn gamma_t_rank(&self) -> usize {
        self.gamma_t().rank()
    }

    /// A graph supports deterministic dense coding and faithful
    /// teleportation exactly when its sender-receiver block has full rank.
    pub fn is_viable(&self) -> bool {
        self.gamma_t_rank() == self.n
    }

    /// Toggles every edge between two neighbors of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Self, GraphError> {
        if v >= self.num_vertices() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v + 1,
                max: self.num_vertices(),
            });
        }
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        let mut out = self.clone();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                let on = !out.adj.get(a, b);
                out.adj.set(a, b, on);
                out.adj.set(b, a, on);
            }
        }
        Ok(out)
    }

    /// Copy with every sender `i` renamed `i′`; the receivers are shared, so
    /// all sub-adjacency blocks coincide with those of `self`.
    pub fn mirror_pair(&self) -> Self {
        let mut m = self.clone();
        m.primed = true;
        m
    }

    /// The same graph with the roles of senders and receivers exchanged.
    pub fn swapped_roles(&self) -> Self {
        let n = self.n;
        let remap = |v: usize| if v < n { v + n } else { v - n };
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (remap(u), remap(v)))
            .collect();
        let mut g = Self::new(n, &edges).expect("relabeling preserves validity");
        g.labels = (0..2 * n).map(|v| self.labels[remap(v)]).collect();
        g
    }

    /// Serializes in the file format, using original labels and a canonical
    /// edge order.
    pub fn to_file_string(&self) -> String {
        let mut senders: Vec<usize> = self.senders().map(|v| self.labels[v]).collect();
        senders.sort_unstable();
        let mut edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let mut out = String::new();
        writeln!(out, "pairs: {}", self.n).unwrap();
        let senders: Vec<String> = senders.iter().map(ToString::to_string).collect();
        writeln!(out, "senders: {}", senders.join(" ")).unwrap();
        let edges: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        if edges.is_empty() {
            writeln!(out, "edges:").unwrap();
        } else {
            writeln!(out, "edges: {}", edges.join(" ")).unwrap();
        }
        out
    }
}

impl fmt::Debug for PartitionedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.display_label(u), self.display_label(v)))
            .collect();
        let senders: Vec<String> = self.senders().map(|v| self.display_label(v)).collect();
        write!(
            f,
            "PartitionedGraph {{ n: {}, senders: [{}], edges: [{}] }}",
            self.n,
            senders.join(" "),
            edges.join(" ")
        )
    }
}

fn section<'a>(body: &'a str, key: &'static str, line: usize) -> Result<&'a str, ParseError> {
    let (head, rest) = body.split_once(':').ok_or(ParseError {
        line,
        kind: ParseErrorKind::MissingSection(key),
    })?;
    if head.trim() != key {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::MissingSection(key),
        });
    }
    Ok(rest.trim())
}

fn parse_id(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::Malformed(format!("bad vertex id {tok:?}")),
    })
}

/// Parses the three-section graph format described in the module docs.
pub fn parse_graph(text: &str) -> Result<PartitionedGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let last_line = text.lines().count().max(1);
    let mut next = |key: &'static str| {
        lines.next().ok_or(ParseError {
            line: last_line,
            kind: ParseErrorKind::MissingSection(key),
        })
    };

    let (pairs_line, body) = next("pairs")?;
    let pairs_text = section(body, "pairs", pairs_line)?;
    let n: usize = pairs_text.parse().map_err(|_| ParseError {
        line: pairs_line,
        kind: ParseErrorKind::Malformed(format!("bad pair count {pairs_text:?}")),
    })?;
    if n == 0 {
        return Err(ParseError {
            line: pairs_line,
            kind: GraphError::NoPairs.into(),
        });
    }
    let size = 2 * n;

    let (senders_line, body) = next("senders")?;
    let senders = section(body, "senders", senders_line)?
        .split_whitespace()
        .map(|t| parse_id(t, senders_line))
        .collect::<Result<Vec<_>, _>>()?;
    let invalid = |line: usize| {
        move |e: GraphError| ParseError {
            line,
            kind: e.into(),
        }
    };
    if senders.len() != n {
        return Err(invalid(senders_line)(GraphError::WrongSenderCount {
            expected: n,
            found: senders.len(),
        }));
    }
    let mut sender_set = BTreeSet::new();
    for &s in &senders {
        if s == 0 || s > size {
            return Err(invalid(senders_line)(GraphError::VertexOutOfRange {
                vertex: s,
                max: size,
            }));
        }
        if !sender_set.insert(s) {
            return Err(invalid(senders_line)(GraphError::DuplicateSender(s)));
        }
    }

    let (edges_line, body) = next("edges")?;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for tok in section(body, "edges", edges_line)?.split_whitespace() {
        let (a, b) = tok.split_once('-').ok_or_else(|| ParseError {
            line: edges_line,
            kind: ParseErrorKind::Malformed(format!("bad edge {tok:?}, expected u-v")),
        })?;
        let (u, v) = (parse_id(a, edges_line)?, parse_id(b, edges_line)?);
        for w in [u, v] {
            if w == 0 || w > size {
                return Err(invalid(edges_line)(GraphError::VertexOutOfRange {
                    vertex: w,
                    max: size,
                }));
            }
        }
        if u == v {
            return Err(invalid(edges_line)(GraphError::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(invalid(edges_line)(GraphError::DuplicateEdge(
                u.min(v),
                u.max(v),
            )));
        }
        edges.push((u, v));
    }

    if let Some((line, extra)) = lines.next() {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Malformed(format!("unexpected content {extra:?}")),
        });
    }

    PartitionedGraph::from_labeled(n, &senders, &edges).map_err(invalid(edges_line))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path() -> PartitionedGraph {
        parse_graph("pairs: 2\nsenders: 1 3\nedges: 1-2 2-3 3-4\n").unwrap()
    }

    fn star() -> PartitionedGraph {
        parse_graph("pairs: 2\nsenders: 1 2\nedges: 1-2 1-3 1-4\n").unwrap()
    }

    fn matching(n: usize) -> PartitionedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, n + i)).collect();
        PartitionedGraph::new(n, &edges).unwrap()
    }

    fn m(rows: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn parses_smallest_graph() {
        let g = parse_graph("pairs: 1\nsenders: 1\nedges: 1-2\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let g = parse_graph("# star\n\npairs: 2 # two pairs\nsenders: 2 1\nedges: 1-2 1-3 1-4\n")
            .unwrap();
        assert_eq!(g, star());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = |t: &str| parse_graph(t).unwrap_err();
        let e = err("pairs: 1\nsenders: 1\nedges: 1-1\n");
        assert_eq!(e.line, 3);
        assert_eq!(e.kind, ParseErrorKind::Invalid(GraphError::SelfLoop(1)));

        let e = err("pairs: 2\nsenders: 1\nedges:\n");
        assert_eq!(e.line, 2);
        assert!(matches!(
            e.kind,
            ParseErrorKind::Invalid(GraphError::WrongSenderCount { .. })
        ));

        let e = err("pairs: 1\nsenders: 1\nedges: 1-3\n");
        assert!(matches!(
            e.kind,
            ParseErrorKind::Invalid(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));

        let e = err("pairs: 1\nsenders: 1\nedges: 1-2 2-1\n");
        assert_eq!(
            e.kind,
            ParseErrorKind::Invalid(GraphError::DuplicateEdge(1, 2))
        );

        let e = err("pairs: 1\nsenders: 1\nedges: 1=2\n");
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));

        let e = err("senders: 1\npairs: 1\nedges:\n");
        assert_eq!(e.line, 1);
        assert_eq!(e.kind, ParseErrorKind::MissingSection("pairs"));

        let e = err("pairs: 1\nsenders: 1\n");
        assert_eq!(e.kind, ParseErrorKind::MissingSection("edges"));

        let e = err("pairs: x\nsenders: 1\nedges:\n");
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));
    }

    #[test]
    fn classify_examples() {
        let p = path().classify_edges();
        assert_eq!(p.e_sr.len(), 3);
        assert!(p.is_tanner_type());

        // Star senders {1,2}: E_SR = {1-3, 1-4}, E_S = {1-2}.
        let s = star();
        let part = s.classify_edges();
        let lab = |e: &[(usize, usize)]| {
            e.iter()
                .map(|&(u, v)| (s.label(u), s.label(v)))
                .collect::<Vec<_>>()
        };
        assert_eq!(lab(&part.e_sr), vec![(1, 3), (1, 4)]);
        assert_eq!(lab(&part.e_s), vec![(1, 2)]);
        assert!(part.e_r.is_empty());

        let empty = PartitionedGraph::new(3, &[]).unwrap().classify_edges();
        assert!(empty.is_empty());
    }

    #[test]
    fn sub_matrix_examples() {
        let p = path().sub_matrices();
        assert_eq!(p.gamma_t, m(&[&[1, 0], &[1, 1]]));
        assert!(p.gamma_s.is_zero() && p.gamma_r.is_zero());

        let s = star().sub_matrices();
        assert_eq!(s.gamma_t, m(&[&[1, 1], &[0, 0]]));
        assert_eq!(s.gamma_s, m(&[&[0, 1], &[1, 0]]));
        assert!(s.gamma_r.is_zero());

        assert_eq!(matching(3).sub_matrices().gamma_t, BitMatrix::identity(3));
    }

    #[test]
    fn viability_examples() {
        assert!(path().is_viable());
        assert!(!star().is_viable());
        assert_eq!(star().gamma_t_rank(), 1);
        for n in 1..=6 {
            assert!(matching(n).is_viable());
        }
    }

    #[test]
    fn local_complement_examples() {
        let p = path();
        // Vertex label 1 is a leaf.
        let leaf = p.vertex_by_label(1).unwrap();
        assert_eq!(p.local_complement(leaf).unwrap(), p);

        let s = star();
        let centre = s.vertex_by_label(1).unwrap();
        let lc = s.local_complement(centre).unwrap();
        assert_eq!(lc.num_edges(), 6);
        assert_eq!(lc.local_complement(centre).unwrap(), s);
        assert!(s.local_complement(4).is_err());
    }

    #[test]
    fn mirror_pair_matches_matrices() {
        let p = path();
        let mp = p.mirror_pair();
        assert_eq!(mp.sub_matrices(), p.sub_matrices());
        assert_eq!(mp.receivers(), p.receivers());
        assert_eq!(mp.display_label(0), "1′");
        assert_eq!(mp.display_label(2), "2");
        let edge = PartitionedGraph::new(1, &[(0, 1)]).unwrap().mirror_pair();
        assert_eq!(
            format!("{edge:?}"),
            "PartitionedGraph { n: 1, senders: [1′], edges: [1′-2] }"
        );
    }

    #[test]
    fn emit_is_canonical() {
        let text = path().to_file_string();
        assert_eq!(text, "pairs: 2\nsenders: 1 3\nedges: 1-2 2-3 3-4\n");
        assert_eq!(
            PartitionedGraph::new(1, &[]).unwrap().to_file_string(),
            "pairs: 1\nsenders: 1\nedges:\n"
        );
    }

    #[test]
    fn connectivity_flag() {
        assert!(path().is_connected());
        assert!(!matching(2).is_connected());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = PartitionedGraph> {
        (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            PartitionedGraph::random(n, 0.5, &mut rng)
        })
    }

    proptest! {
        #[test]
        fn lc_preserves_gamma_t_rank(g in arb_graph(6)) {
            let r = g.gamma_t_rank();
            for v in 0..g.num_vertices() {
                let h = g.local_complement(v).unwrap();
                prop_assert_eq!(h.gamma_t_rank(), r);
                prop_assert_eq!(h.local_complement(v).unwrap(), g.clone());
            }
        }

        #[test]
        fn lc_touches_only_neighbourhood(g in arb_graph(5), v in 0usize..10) {
            let v = v % g.num_vertices();
            let nbrs: BTreeSet<usize> = g.neighbors(v).collect();
            let h = g.local_complement(v).unwrap();
            for a in 0..g.num_vertices() {
                for b in 0..g.num_vertices() {
                    if !(nbrs.contains(&a) && nbrs.contains(&b)) {
                        prop_assert_eq!(g.has_edge(a, b), h.has_edge(a, b));
                    }
                }
            }
        }

        #[test]
        fn partition_covers_edges(g in arb_graph(6)) {
            let part = g.classify_edges();
            prop_assert_eq!(part.len(), g.num_edges());
            for &(s, r) in &part.e_sr {
                prop_assert!(g.is_sender(s) && !g.is_sender(r));
            }
        }

        #[test]
        fn sub_matrix_shapes(g in arb_graph(6)) {
            let sm = g.sub_matrices();
            prop_assert!(sm.gamma_s.is_symmetric() && sm.gamma_r.is_symmetric());
            for i in 0..g.n() {
                prop_assert!(!sm.gamma_s.get(i, i) && !sm.gamma_r.get(i, i));
            }
            prop_assert_eq!(sm.gamma_s_upper.transpose(), sm.gamma_s_lower.clone());
            prop_assert_eq!(sm.gamma_r_upper.transpose(), sm.gamma_r_lower.clone());
            prop_assert_eq!(sm.gamma_s_lower.add(&sm.gamma_s_upper).unwrap(), sm.gamma_s.clone());
            prop_assert_eq!(sm.gamma_r_lower.add(&sm.gamma_r_upper).unwrap(), sm.gamma_r.clone());
            if g.classify_edges().is_tanner_type() {
                prop_assert!(sm.gamma_s.is_zero() && sm.gamma_r.is_zero());
            }
        }

        #[test]
        fn viability_symmetric_in_roles(g in arb_graph(6)) {
            let sw = g.swapped_roles();
            prop_assert_eq!(sw.gamma_t(), g.gamma_t().transpose());
            prop_assert_eq!(sw.is_viable(), g.is_viable());
        }

        #[test]
        fn file_round_trip(g in arb_graph(6)) {
            let back = parse_graph(&g.to_file_string()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
