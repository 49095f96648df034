//! Directed graphs `G(V, L)` with 0-based vertex labels.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An oriented edge `(control, target)`.
pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    ZeroVertices,
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    AntiparallelPair(usize, usize),
    IndexOutOfRange { vertex: usize, num_vertices: usize },
    EdgeIndexOutOfRange { index: usize, num_edges: usize },
    NotABijection,
    UnsupportedKind(String),
    BadParams(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::ZeroVertices => write!(f, "graph must have at least one vertex"),
            GraphError::SelfLoop(a) => write!(f, "self-loop at vertex {a}"),
            GraphError::DuplicateEdge(a, b) => write!(f, "duplicate edge ({a}, {b})"),
            GraphError::AntiparallelPair(a, b) => {
                write!(f, "antiparallel pair ({a}, {b}) and ({b}, {a})")
            }
            GraphError::IndexOutOfRange {
                vertex,
                num_vertices,
            } => {
                write!(
                    f,
                    "vertex {vertex} out of range for {num_vertices} vertices"
                )
            }
            GraphError::EdgeIndexOutOfRange { index, num_edges } => {
                write!(f, "edge index {index} out of range for {num_edges} edges")
            }
            GraphError::NotABijection => write!(f, "permutation is not a bijection"),
            GraphError::UnsupportedKind(kind) => write!(f, "unsupported graph kind `{kind}`"),
            GraphError::BadParams(why) => write!(f, "bad generator parameters: {why}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Whether a graph may contain both `(a, b)` and `(b, a)`.
///
/// The degree-only closed form is not defined for such pairs, so graphs admitted
/// under [`AntiparallelPolicy::Allow`] are only evaluated on the statevector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AntiparallelPolicy {
    #[default]
    Reject,
    Allow,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeRecord {
    pub out_degree: usize,
    pub in_degree: usize,
    pub total: usize,
}

/// Checks every graph invariant for `num_vertices` vertices and `edges`.
pub fn validate(
    num_vertices: usize,
    edges: &[Edge],
    policy: AntiparallelPolicy,
) -> Result<(), GraphError> {
    if num_vertices == 0 {
        return Err(GraphError::ZeroVertices);
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        for v in [a, b] {
            if v >= num_vertices {
                return Err(GraphError::IndexOutOfRange {
                    vertex: v,
                    num_vertices,
                });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if !seen.insert((a, b)) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
    }
    if policy == AntiparallelPolicy::Reject {
        for &(a, b) in edges {
            if a < b && seen.contains(&(b, a)) {
                return Err(GraphError::AntiparallelPair(a, b));
            }
        }
    }
    Ok(())
}

/// A validated directed graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    policy: AntiparallelPolicy,
}

impl DirectedGraph {
    pub fn new(num_vertices: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        Self::with_policy(num_vertices, edges, AntiparallelPolicy::Reject)
    }

    pub fn with_policy(
        num_vertices: usize,
        edges: Vec<Edge>,
        policy: AntiparallelPolicy,
    ) -> Result<Self, GraphError> {
        validate(num_vertices, &edges, policy)?;
        Ok(DirectedGraph {
            num_vertices,
            edges,
            policy,
        })
    }

    pub fn empty(num_vertices: usize) -> Result<Self, GraphError> {
        Self::new(num_vertices, Vec::new())
    }

    /// Number of vertices `M`, which is also the qubit count.
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn policy(&self) -> AntiparallelPolicy {
        self.policy
    }

    pub fn has_antiparallel_pair(&self) -> bool {
        let set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        self.edges.iter().any(|&(a, b)| set.contains(&(b, a)))
    }

    pub fn degrees(&self) -> Vec<DegreeRecord> {
        let mut out = vec![DegreeRecord::default(); self.num_vertices];
        for &(a, b) in &self.edges {
            out[a].out_degree += 1;
            out[b].in_degree += 1;
        }
        for rec in &mut out {
            rec.total = rec.out_degree + rec.in_degree;
        }
        out
    }

    /// Sorted total degrees.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.degrees().iter().map(|r| r.total).collect();
        d.sort_unstable();
        d
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == i).map(|e| e.1)
    }

    pub fn in_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.1 == i).map(|e| e.0)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.num_vertices {
            return Err(GraphError::NotABijection);
        }
        let mut hit = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || core::mem::replace(&mut hit[p], true) {
                return Err(GraphError::NotABijection);
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Self::with_policy(self.num_vertices, edges, self.policy)
    }

    /// Flips the orientation of the edges at the given positions of [`Self::edges`].
    pub fn reverse_edges(&self, subset: &[usize]) -> Result<Self, GraphError> {
        let mut edges = self.edges.clone();
        let mut flipped = vec![false; edges.len()];
        for &idx in subset {
            if idx >= edges.len() {
                return Err(GraphError::EdgeIndexOutOfRange {
                    index: idx,
                    num_edges: edges.len(),
                });
            }
            // a repeated index flips once
            if !core::mem::replace(&mut flipped[idx], true) {
                let (a, b) = edges[idx];
                edges[idx] = (b, a);
            }
        }
        Self::with_policy(self.num_vertices, edges, self.policy)
    }

    /// Same graph with the edge list shuffled; the graph state does not change.
    pub fn shuffled_edges<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut edges = self.edges.clone();
        edges.shuffle(rng);
        DirectedGraph {
            num_vertices: self.num_vertices,
            edges,
            policy: self.policy,
        }
    }

    /// Hex SHA-256 of `M` and the sorted edge list, so edge order does not matter.
    pub fn hash_hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        let mut hasher = Sha256::new();
        hasher.update((self.num_vertices as u64).to_le_bytes());
        for (a, b) in sorted {
            hasher.update((a as u64).to_le_bytes());
            hasher.update((b as u64).to_le_bytes());
        }
        let digest = hasher.finalize();
        let mut s = String::with_capacity(64);
        for byte in digest {
            let _ = fmt::Write::write_fmt(&mut s, format_args!("{byte:02x}"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Path,
    Cycle,
    StarOut,
    StarIn,
    CompleteDag,
    ErdosRenyi,
}

impl GraphKind {
    pub const ALL: [GraphKind; 6] = [
        GraphKind::Path,
        GraphKind::Cycle,
        GraphKind::StarOut,
        GraphKind::StarIn,
        GraphKind::CompleteDag,
        GraphKind::ErdosRenyi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::StarOut => "star_out",
            GraphKind::StarIn => "star_in",
            GraphKind::CompleteDag => "complete_dag",
            GraphKind::ErdosRenyi => "erdos_renyi",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GraphError::UnsupportedKind(s.into()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenParams {
    /// Edge probability for `erdos_renyi`.
    pub p: Option<f64>,
}

impl GenParams {
    pub fn with_p(p: f64) -> Self {
        GenParams { p: Some(p) }
    }
}

/// Deterministic generator: the output depends only on the arguments.
///
/// Vertex 0 is the hub of both stars. `erdos_renyi` visits ordered pairs
/// `(a, b)` in row-major order, keeps each with probability `p`, and skips a
/// kept draw when `(b, a)` is already present.
pub fn generate(
    kind: GraphKind,
    num_vertices: usize,
    params: &GenParams,
    seed: u64,
) -> Result<DirectedGraph, GraphError> {
    if num_vertices == 0 {
        return Err(GraphError::ZeroVertices);
    }
    let m = num_vertices;
    let edges: Vec<Edge> = match kind {
        GraphKind::Path => (1..m).map(|i| (i - 1, i)).collect(),
        GraphKind::Cycle => {
            if m < 3 {
                return Err(GraphError::BadParams("cycle needs at least 3 vertices"));
            }
            (0..m).map(|i| (i, (i + 1) % m)).collect()
        }
        GraphKind::StarOut => (1..m).map(|i| (0, i)).collect(),
        GraphKind::StarIn => (1..m).map(|i| (i, 0)).collect(),
        GraphKind::CompleteDag => (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .collect(),
        GraphKind::ErdosRenyi => {
            let p = params
                .p
                .ok_or(GraphError::BadParams("erdos_renyi needs p"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(GraphError::BadParams("p must lie in [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut present = BTreeSet::new();
            let mut edges = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if a == b {
                        continue;
                    }
                    // always draw, so later pairs see the same stream
                    let keep = rng.gen::<f64>() < p;
                    if keep && !present.contains(&(b, a)) {
                        present.insert((a, b));
                        edges.push((a, b));
                    }
                }
            }
            edges
        }
    };
    DirectedGraph::new(m, edges)
}
