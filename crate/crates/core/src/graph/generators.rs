//! Graph families and the generator DSL (`cycle:5`, `sstree:2,3@r=4`, ...).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphHandle, LazyGraph, NeighborOracle, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cycle(usize),
    Path(usize),
    /// K_{1,n}: center 1, leaves 2..=n+1.
    Star(usize),
    /// K_{m,n}: vertices 1..=m on one side, m+1..=m+n on the other.
    CompleteBipartite(usize, usize),
    /// Rooted tree whose vertices at distance `l` from the root have degree
    /// `degrees[l % degrees.len()]`.
    SphericallySymmetricTree(Vec<usize>),
    /// Rooted tree whose vertices at distance `n` have degree `n + 2`.
    FactorialTree,
    /// Center 1 with disjoint paths of the given lengths attached.
    Spider(Vec<usize>),
}

/// A generator together with an optional truncation radius (`@r=<radius>`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub generator: GeneratorSpec,
    pub radius: Option<usize>,
}

pub fn generate(spec: &GeneratorSpec) -> Result<GraphHandle> {
    use GeneratorSpec::*;
    let bad = |msg: &str| Err(Error::Generator(msg.to_string()));
    let g: GraphHandle = match spec {
        Cycle(n) => {
            if *n < 3 {
                return bad("cycle needs n >= 3");
            }
            let n64 = *n as u64;
            FiniteGraph::from_edges(*n, (1..=n64).map(|i| (i, i % n64 + 1)))?.into()
        }
        Path(n) => {
            if *n < 2 {
                return bad("path needs n >= 2");
            }
            FiniteGraph::from_edges(*n, (1..*n as u64).map(|i| (i, i + 1)))?.into()
        }
        Star(n) => {
            if *n < 1 {
                return bad("star needs n >= 1");
            }
            FiniteGraph::from_edges(n + 1, (2..=*n as u64 + 1).map(|i| (1, i)))?.into()
        }
        CompleteBipartite(m, n) => {
            if *m < 1 || *n < 1 {
                return bad("complete bipartite needs m, n >= 1");
            }
            let (m, n) = (*m as u64, *n as u64);
            let edges = (1..=m).flat_map(|a| (m + 1..=m + n).map(move |b| (a, b)));
            FiniteGraph::from_edges((m + n) as usize, edges)?.into()
        }
        Spider(legs) => {
            if legs.is_empty() || legs.contains(&0) {
                return bad("spider needs at least one leg, each of length >= 1");
            }
            let mut edges = Vec::new();
            let mut next = 2u64;
            for &len in legs {
                let mut prev = 1u64;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            FiniteGraph::from_edges(next as usize - 1, edges)?.into()
        }
        SphericallySymmetricTree(degrees) => {
            if degrees.is_empty() || degrees.contains(&0) {
                return bad("tree degree sequence must be nonempty with entries >= 1");
            }
            let bound = degrees.iter().copied().max();
            LazyGraph::new(
                Arc::new(SphericalTree::Periodic(degrees.clone())),
                VertexId::from_zero_based(0),
                bound,
            )
            .into()
        }
        FactorialTree => LazyGraph::new(
            Arc::new(SphericalTree::Factorial),
            VertexId::from_zero_based(0),
            None,
        )
        .into(),
    };
    Ok(g)
}

/// Spherically symmetric trees enumerated in BFS order from root 1: the
/// children of each vertex receive consecutive indices, level by level.
#[derive(Debug, Clone)]
enum SphericalTree {
    Periodic(Vec<usize>),
    Factorial,
}

struct Position {
    level: usize,
    offset: u64,
    start: u64,
    size: u64,
    parent_start: u64,
}

impl SphericalTree {
    fn degree_at(&self, level: usize) -> usize {
        match self {
            SphericalTree::Periodic(d) => d[level % d.len()],
            SphericalTree::Factorial => level + 2,
        }
    }

    fn children_at(&self, level: usize) -> u64 {
        let d = self.degree_at(level) as u64;
        if level == 0 {
            d
        } else {
            d - 1
        }
    }

    fn locate(&self, i: VertexId) -> Option<Position> {
        let i = i.get();
        let (mut level, mut start, mut size, mut parent_start) = (0usize, 1u64, 1u64, 0u64);
        loop {
            if i < start.checked_add(size)? {
                return Some(Position {
                    level,
                    offset: i - start,
                    start,
                    size,
                    parent_start,
                });
            }
            let next = size.checked_mul(self.children_at(level))?;
            if next == 0 {
                return None;
            }
            parent_start = start;
            start = start.checked_add(size)?;
            size = next;
            level += 1;
        }
    }
}

impl NeighborOracle for SphericalTree {
    fn neighbors(&self, i: VertexId) -> Option<Vec<VertexId>> {
        let pos = self.locate(i)?;
        let mut out = Vec::with_capacity(self.degree_at(pos.level));
        if pos.level > 0 {
            let parent = pos.parent_start + pos.offset / self.children_at(pos.level - 1);
            out.push(VertexId::new(parent)?);
        }
        let c = self.children_at(pos.level);
        let first = (pos.start + pos.size).checked_add(pos.offset.checked_mul(c)?)?;
        for k in 0..c {
            out.push(VertexId::new(first.checked_add(k)?)?);
        }
        Some(out)
    }

    fn degree(&self, i: VertexId) -> Option<usize> {
        self.locate(i).map(|p| self.degree_at(p.level))
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Generator(format!("expected a non-negative integer, got {t:?}")))
        })
        .collect()
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, radius) = match s.split_once('@') {
            Some((body, r)) => {
                let r = r
                    .strip_prefix("r=")
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| Error::Generator(format!("bad radius suffix in {s:?}")))?;
                (body, Some(r))
            }
            None => (s, None),
        };
        let (name, args) = match body.split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (body, None),
        };
        let one = |args: Option<&str>| -> Result<usize> {
            match parse_list(args.unwrap_or(""))?.as_slice() {
                [n] => Ok(*n),
                _ => Err(Error::Generator(format!("{name} takes exactly one parameter"))),
            }
        };
        let generator = match name {
            "cycle" => GeneratorSpec::Cycle(one(args)?),
            "path" => GeneratorSpec::Path(one(args)?),
            "star" => GeneratorSpec::Star(one(args)?),
            "kbipartite" => match parse_list(args.unwrap_or(""))?.as_slice() {
                [m, n] => GeneratorSpec::CompleteBipartite(*m, *n),
                _ => return Err(Error::Generator("kbipartite takes two parameters".into())),
            },
            "sstree" => GeneratorSpec::SphericallySymmetricTree(parse_list(args.unwrap_or(""))?),
            "factorial" if args.is_none() => GeneratorSpec::FactorialTree,
            "spider" => GeneratorSpec::Spider(parse_list(args.unwrap_or(""))?),
            _ => return Err(Error::Generator(format!("unknown generator {s:?}"))),
        };
        Ok(GraphSpec { generator, radius })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match &self.generator {
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}")?,
            GeneratorSpec::Path(n) => write!(f, "path:{n}")?,
            GeneratorSpec::Star(n) => write!(f, "star:{n}")?,
            GeneratorSpec::CompleteBipartite(m, n) => write!(f, "kbipartite:{m},{n}")?,
            GeneratorSpec::SphericallySymmetricTree(d) => write!(f, "sstree:{}", join(d))?,
            GeneratorSpec::FactorialTree => write!(f, "factorial")?,
            GeneratorSpec::Spider(l) => write!(f, "spider:{}", join(l))?,
        }
        if let Some(r) = self.radius {
            write!(f, "@r={r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn gen(s: &str) -> GraphHandle {
        generate(&s.parse::<GraphSpec>().unwrap().generator).unwrap()
    }

    #[test]
    fn cycle_neighbors() {
        let c4 = gen("cycle:4");
        assert_eq!(&*c4.neighbors(v(1)).unwrap(), &[v(2), v(4)]);
        assert_eq!(c4.as_finite().unwrap().edge_count(), 4);
        let c5 = gen("cycle:5");
        for i in 1..=5 {
            assert_eq!(c5.degree(v(i)).unwrap(), 2);
        }
    }

    #[test]
    fn path_and_bipartite() {
        let p3 = gen("path:3");
        assert_eq!(&*p3.neighbors(v(2)).unwrap(), &[v(1), v(3)]);
        let k23 = gen("kbipartite:2,3");
        assert_eq!(k23.degree(v(1)).unwrap(), 3);
        assert_eq!(k23.degree(v(4)).unwrap(), 2);
    }

    #[test]
    fn spider_layout() {
        let s = gen("spider:1,1,2");
        let g = s.as_finite().unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.degrees(), vec![3, 1, 1, 2, 1]);
    }

    #[test]
    fn factorial_tree_degrees_follow_distance() {
        let t = gen("factorial");
        let root = v(1);
        let kids = t.neighbors(root).unwrap().into_owned();
        assert_eq!(kids, vec![v(2), v(3)]);
        for &k in &kids {
            assert_eq!(t.degree(k).unwrap(), 3);
        }
        let lazy = t.as_lazy().unwrap();
        let levels = lazy.ball_levels(3).unwrap();
        let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 12]);
        for &u in &levels[2] {
            assert_eq!(t.degree(u).unwrap(), 4);
        }
        assert_eq!(lazy.degree_bound(), None);
    }

    #[test]
    fn periodic_tree_alternates() {
        let t = gen("sstree:2,3");
        let lazy = t.as_lazy().unwrap();
        assert_eq!(lazy.degree_bound(), Some(3));
        let levels = lazy.ball_levels(4).unwrap();
        for (l, level) in levels.iter().enumerate() {
            let want = if l % 2 == 0 { 2 } else { 3 };
            for &u in level {
                assert_eq!(t.degree(u).unwrap(), want, "vertex {u} at level {l}");
            }
        }
        // BFS enumeration: root 1, children 2 and 3, then 4..=7.
        assert_eq!(&*t.neighbors(v(2)).unwrap(), &[v(1), v(4), v(5)]);
    }

    #[test]
    fn tree_truncation_keeps_true_degrees() {
        let t = gen("sstree:2,3");
        let tr = t.as_lazy().unwrap().truncate(1).unwrap();
        assert_eq!(tr.graph.vertex_count(), 3);
        assert_eq!(tr.graph.edge_count(), 2);
        assert_eq!(tr.true_degrees(), &[2, 3, 3]);
        let f = gen("factorial").as_lazy().unwrap().truncate(2).unwrap();
        assert_eq!(f.graph.vertex_count(), 7);
        let r0 = gen("factorial").as_lazy().unwrap().truncate(0).unwrap();
        assert_eq!(r0.graph.vertex_count(), 1);
        assert_eq!(r0.true_degrees(), &[2]);
    }

    #[test]
    fn finite_periodic_tree_ends() {
        // root has 2 children, which are leaves.
        let t = gen("sstree:2,1");
        assert_eq!(t.as_lazy().unwrap().ball_levels(5).unwrap().len(), 2);
        assert_eq!(t.degree(v(4)), Err(Error::InvalidVertex(4)));
    }

    #[test]
    fn dsl_round_trip_and_errors() {
        for s in ["cycle:5", "sstree:2,3@r=4", "factorial@r=3", "spider:1,1,2", "kbipartite:2,3"] {
            assert_eq!(s.parse::<GraphSpec>().unwrap().to_string(), s);
        }
        for s in ["cycle", "cycle:2", "kbipartite:2", "sstree:2,0", "factorial@r=x", "torus:3"] {
            let parsed = s.parse::<GraphSpec>();
            assert!(parsed.is_err() || generate(&parsed.unwrap().generator).is_err(), "{s}");
        }
    }
}
