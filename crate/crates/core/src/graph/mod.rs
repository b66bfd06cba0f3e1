//! Finite and lazily generated locally finite graphs on vertex set {1, 2, ...}.
//!
//! A [`GraphHandle`] is either a [`FiniteGraph`] stored as compressed
//! neighbor lists, or a [`LazyGraph`] backed by a deterministic neighbor
//! oracle. Degrees reported for lazy graphs are always the true degrees of
//! the infinite graph; finite windows ([`Window`], [`Truncation`]) only
//! restrict which vertices a whole-graph analysis looks at.

mod edgelist;
mod generators;
mod rank;
mod structure;
mod twins;

use std::borrow::Cow;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::num::NonZeroU64;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use edgelist::parse_edge_list;
pub use generators::{generate, GeneratorSpec, GraphSpec};
pub use rank::{
    adjacency_rank, adjacency_rank_with_cap, analyze_rank, non_singular, RankAnalysis,
    DEFAULT_RANK_CAP,
};
pub use structure::{
    check_biregular, check_regular, is_connected, BipartitionInfo, Counterexample, Side,
    StructuralVerdict,
};
pub use twins::{quotient_graph, twin_partition, twin_reduce, Quotient, TwinPartition};

/// A vertex index. Vertices are numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(NonZeroU64);

/// Accepts a positive integer or its decimal string, since JSON object keys
/// are strings.
impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        let index = match Raw::deserialize(d)? {
            Raw::Int(i) => i,
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom)?,
        };
        VertexId::new(index)
            .ok_or_else(|| serde::de::Error::custom("vertex indices start at 1"))
    }
}

impl VertexId {
    pub fn new(index: u64) -> Option<Self> {
        NonZeroU64::new(index).map(VertexId)
    }

    /// Converts a 0-based position into a vertex id.
    pub fn from_zero_based(pos: usize) -> Self {
        VertexId(NonZeroU64::new(pos as u64 + 1).expect("pos + 1 is nonzero"))
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }

    pub fn zero_based(self) -> usize {
        (self.0.get() - 1) as usize
    }
}

impl TryFrom<u64> for VertexId {
    type Error = Error;

    fn try_from(index: u64) -> Result<Self> {
        VertexId::new(index).ok_or(Error::InvalidVertex(index))
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether a result covers the whole graph or only a ball around the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Exact,
    WithinRadius(usize),
}

/// A simple undirected graph in compressed neighbor-list form.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl FiniteGraph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// Repeated edges (in either orientation) are merged. Loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut lists: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (a, b) in edges {
            let u = checked_vertex(a, n)?;
            let v = checked_vertex(b, n)?;
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            lists[u.zero_based()].push(v);
            lists[v.zero_based()].push(u);
        }
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_lists(lists))
    }

    /// Builds a graph from explicit neighbor lists (`lists[i]` holds the
    /// neighbors of vertex `i + 1`). The lists must describe a symmetric,
    /// loop-free relation.
    pub fn from_neighbor_lists(lists: Vec<Vec<u64>>) -> Result<Self> {
        let n = lists.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut sorted = Vec::with_capacity(n);
        for (pos, list) in lists.iter().enumerate() {
            let me = VertexId::from_zero_based(pos);
            let mut out = list
                .iter()
                .map(|&j| checked_vertex(j, n))
                .collect::<Result<Vec<_>>>()?;
            out.sort_unstable();
            if out.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated neighbor of vertex {me}")));
            }
            if out.contains(&me) {
                return Err(Error::InvalidGraph(format!("loop at vertex {me}")));
            }
            sorted.push(out);
        }
        for (pos, list) in sorted.iter().enumerate() {
            let me = VertexId::from_zero_based(pos);
            for &j in list {
                if sorted[j.zero_based()].binary_search(&me).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric adjacency: {j} listed for {me} but not vice versa"
                    )));
                }
            }
        }
        Ok(Self::from_sorted_lists(sorted))
    }

    fn from_sorted_lists(lists: Vec<Vec<VertexId>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for list in lists {
            targets.extend(list);
            offsets.push(targets.len());
        }
        FiniteGraph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn contains(&self, i: VertexId) -> bool {
        i.zero_based() < self.vertex_count()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.vertex_count()).map(VertexId::from_zero_based)
    }

    pub fn neighbors(&self, i: VertexId) -> Result<&[VertexId]> {
        if !self.contains(i) {
            return Err(Error::InvalidVertex(i.get()));
        }
        let p = i.zero_based();
        Ok(&self.targets[self.offsets[p]..self.offsets[p + 1]])
    }

    pub fn degree(&self, i: VertexId) -> Result<usize> {
        self.neighbors(i).map(<[_]>::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_adjacent(&self, i: VertexId, j: VertexId) -> bool {
        self.neighbors(i)
            .map(|n| n.binary_search(&j).is_ok())
            .unwrap_or(false)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            let p = u.zero_based();
            self.targets[self.offsets[p]..self.offsets[p + 1]]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGraph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn checked_vertex(index: u64, n: usize) -> Result<VertexId> {
    match VertexId::new(index) {
        Some(v) if v.zero_based() < n => Ok(v),
        _ => Err(Error::InvalidVertex(index)),
    }
}

/// Source of neighbor lists for a lazily generated graph.
///
/// Implementations must be pure: the same vertex always yields the same
/// sorted, duplicate-free list. `None` means the vertex does not exist.
pub trait NeighborOracle: Send + Sync + fmt::Debug {
    fn neighbors(&self, i: VertexId) -> Option<Vec<VertexId>>;

    fn degree(&self, i: VertexId) -> Option<usize> {
        self.neighbors(i).map(|n| n.len())
    }
}

/// Adapts a closure into a [`NeighborOracle`].
pub struct FnOracle<F>(pub F);

impl<F> fmt::Debug for FnOracle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnOracle")
    }
}

impl<F> NeighborOracle for FnOracle<F>
where
    F: Fn(VertexId) -> Option<Vec<VertexId>> + Send + Sync,
{
    fn neighbors(&self, i: VertexId) -> Option<Vec<VertexId>> {
        (self.0)(i)
    }
}

/// A locally finite graph given by a neighbor oracle, with a designated
/// root for ball truncation and an optional declared degree bound.
#[derive(Clone)]
pub struct LazyGraph {
    oracle: Arc<dyn NeighborOracle>,
    degree_bound: Option<usize>,
    root: VertexId,
}

impl fmt::Debug for LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyGraph")
            .field("oracle", &self.oracle)
            .field("degree_bound", &self.degree_bound)
            .field("root", &self.root)
            .finish()
    }
}

impl LazyGraph {
    pub fn new(oracle: Arc<dyn NeighborOracle>, root: VertexId, degree_bound: Option<usize>) -> Self {
        LazyGraph {
            oracle,
            degree_bound,
            root,
        }
    }

    pub fn from_fn<F>(root: VertexId, degree_bound: Option<usize>, f: F) -> Self
    where
        F: Fn(VertexId) -> Option<Vec<VertexId>> + Send + Sync + 'static,
    {
        Self::new(Arc::new(FnOracle(f)), root, degree_bound)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.degree_bound
    }

    fn raw_neighbors(&self, i: VertexId) -> Result<Vec<VertexId>> {
        let list = self
            .oracle
            .neighbors(i)
            .ok_or(Error::InvalidVertex(i.get()))?;
        self.enforce_bound(i, list.len())?;
        Ok(list)
    }

    fn enforce_bound(&self, i: VertexId, degree: usize) -> Result<()> {
        match self.degree_bound {
            Some(bound) if degree > bound => Err(Error::DegreeBoundExceeded {
                vertex: i,
                degree,
                bound,
            }),
            _ => Ok(()),
        }
    }

    /// Neighbors of `i`, with every returned pair checked for symmetry.
    pub fn neighbors(&self, i: VertexId) -> Result<Vec<VertexId>> {
        let list = self.raw_neighbors(i)?;
        if list.windows(2).any(|w| w[0] >= w[1]) || list.contains(&i) {
            return Err(Error::InvalidGraph(format!(
                "oracle returned a malformed neighbor list for {i}"
            )));
        }
        for &j in &list {
            let back = self.raw_neighbors(j)?;
            if back.binary_search(&i).is_err() {
                return Err(Error::AsymmetricOracle { from: i, to: j });
            }
        }
        Ok(list)
    }

    pub fn degree(&self, i: VertexId) -> Result<usize> {
        let d = self
            .oracle
            .degree(i)
            .ok_or(Error::InvalidVertex(i.get()))?;
        self.enforce_bound(i, d)?;
        Ok(d)
    }

    /// Vertices of the ball `B(root, radius)` grouped by distance.
    pub fn ball_levels(&self, radius: usize) -> Result<Vec<Vec<VertexId>>> {
        let mut seen: HashMap<VertexId, usize> = HashMap::new();
        let mut levels = vec![vec![self.root]];
        seen.insert(self.root, 0);
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            let du = seen[&u];
            if du == radius {
                continue;
            }
            for w in self.neighbors(u)? {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(du + 1);
                    if levels.len() <= du + 1 {
                        levels.push(Vec::new());
                    }
                    levels[du + 1].push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(levels)
    }

    /// Induced subgraph on `B(root, radius)`, re-indexed in BFS order, with
    /// the true degree of every retained vertex.
    pub fn truncate(&self, radius: usize) -> Result<Truncation> {
        let original: Vec<VertexId> = self.ball_levels(radius)?.into_iter().flatten().collect();
        let local: HashMap<VertexId, VertexId> = original
            .iter()
            .enumerate()
            .map(|(p, &v)| (v, VertexId::from_zero_based(p)))
            .collect();
        let mut lists = Vec::with_capacity(original.len());
        let mut true_degree = Vec::with_capacity(original.len());
        for &v in &original {
            let nbrs = self.neighbors(v)?;
            true_degree.push(nbrs.len());
            let mut mapped: Vec<VertexId> = nbrs.iter().filter_map(|w| local.get(w).copied()).collect();
            mapped.sort_unstable();
            lists.push(mapped);
        }
        Ok(Truncation {
            graph: FiniteGraph::from_sorted_lists(lists),
            original,
            true_degree,
            local,
            radius,
        })
    }
}

/// A finite window onto a lazy graph.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub graph: FiniteGraph,
    original: Vec<VertexId>,
    true_degree: Vec<usize>,
    local: HashMap<VertexId, VertexId>,
    radius: usize,
}

impl Truncation {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn original_of(&self, local: VertexId) -> Option<VertexId> {
        self.original.get(local.zero_based()).copied()
    }

    pub fn local_of(&self, original: VertexId) -> Option<VertexId> {
        self.local.get(&original).copied()
    }

    pub fn original_ids(&self) -> &[VertexId] {
        &self.original
    }

    /// True degree (in the untruncated graph) of a retained vertex, by local id.
    pub fn true_degree(&self, local: VertexId) -> Option<usize> {
        self.true_degree.get(local.zero_based()).copied()
    }

    pub fn true_degrees(&self) -> &[usize] {
        &self.true_degree
    }
}

/// The set of vertices a whole-graph analysis examines.
#[derive(Clone, Debug)]
pub struct Window {
    pub vertices: Vec<VertexId>,
    /// Vertices whose full neighborhood lies inside `vertices`.
    pub interior: Vec<VertexId>,
    pub scope: Scope,
}

/// Either kind of graph. Cloning is cheap.
#[derive(Clone, Debug)]
pub enum GraphHandle {
    Finite(Arc<FiniteGraph>),
    Lazy(LazyGraph),
}

impl From<FiniteGraph> for GraphHandle {
    fn from(g: FiniteGraph) -> Self {
        GraphHandle::Finite(Arc::new(g))
    }
}

impl From<LazyGraph> for GraphHandle {
    fn from(g: LazyGraph) -> Self {
        GraphHandle::Lazy(g)
    }
}

impl GraphHandle {
    pub fn neighbors(&self, i: VertexId) -> Result<Cow<'_, [VertexId]>> {
        match self {
            GraphHandle::Finite(g) => g.neighbors(i).map(Cow::Borrowed),
            GraphHandle::Lazy(g) => g.neighbors(i).map(Cow::Owned),
        }
    }

    pub fn degree(&self, i: VertexId) -> Result<usize> {
        match self {
            GraphHandle::Finite(g) => g.degree(i),
            GraphHandle::Lazy(g) => g.degree(i),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteGraph> {
        match self {
            GraphHandle::Finite(g) => Some(g),
            GraphHandle::Lazy(_) => None,
        }
    }

    pub fn as_lazy(&self) -> Option<&LazyGraph> {
        match self {
            GraphHandle::Finite(_) => None,
            GraphHandle::Lazy(g) => Some(g),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GraphHandle::Finite(_))
    }

    /// The vertices to examine: all of a finite graph (the radius is
    /// ignored), or the ball of the given radius around a lazy graph's root.
    pub fn window(&self, radius: Option<usize>) -> Result<Window> {
        match self {
            GraphHandle::Finite(g) => {
                let all: Vec<VertexId> = g.vertices().collect();
                Ok(Window {
                    interior: all.clone(),
                    vertices: all,
                    scope: Scope::Exact,
                })
            }
            GraphHandle::Lazy(g) => {
                let r = radius.ok_or(Error::RadiusRequired)?;
                let levels = g.ball_levels(r)?;
                let interior_levels = levels.len().min(r);
                let interior = levels[..interior_levels].iter().flatten().copied().collect();
                Ok(Window {
                    vertices: levels.into_iter().flatten().collect(),
                    interior,
                    scope: Scope::WithinRadius(r),
                })
            }
        }
    }
}
