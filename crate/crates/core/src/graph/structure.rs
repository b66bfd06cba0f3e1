//! Connectivity, regularity and biregularity checks.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphHandle, LazyGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

/// A proper 2-coloring with constant degree on each side. Side one holds
/// vertex 1 (or the root of a lazy graph).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipartitionInfo {
    pub side_of: BTreeMap<VertexId, Side>,
    pub d1: usize,
    pub d2: usize,
}

impl BipartitionInfo {
    pub fn side(&self, i: VertexId) -> Option<Side> {
        self.side_of.get(&i).copied()
    }

    pub fn count(&self, side: Side) -> usize {
        self.side_of.values().filter(|&&s| s == side).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    DegreeMismatch {
        a: VertexId,
        degree_a: usize,
        b: VertexId,
        degree_b: usize,
    },
    OddCycleEdge {
        u: VertexId,
        v: VertexId,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "payload", rename_all = "snake_case")]
pub enum StructuralVerdict<P> {
    Exact(P),
    ConsistentUpToRadius(usize, P),
    Refuted(Counterexample),
}

impl<P> StructuralVerdict<P> {
    pub fn is_exact(&self) -> bool {
        matches!(self, StructuralVerdict::Exact(_))
    }

    pub fn holds(&self) -> bool {
        !matches!(self, StructuralVerdict::Refuted(_))
    }

    pub fn payload(&self) -> Option<&P> {
        match self {
            StructuralVerdict::Exact(p) | StructuralVerdict::ConsistentUpToRadius(_, p) => Some(p),
            StructuralVerdict::Refuted(_) => None,
        }
    }

    fn consistent(radius: Option<usize>, payload: P) -> Self {
        match radius {
            None => StructuralVerdict::Exact(payload),
            Some(r) => StructuralVerdict::ConsistentUpToRadius(r, payload),
        }
    }
}

/// BFS from vertex 1 reaches every vertex.
pub fn is_connected(g: &FiniteGraph) -> bool {
    bfs_distances(g, VertexId::from_zero_based(0))
        .iter()
        .all(Option::is_some)
}

fn bfs_distances(g: &FiniteGraph, start: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[start.zero_based()] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.zero_based()].unwrap_or(0);
        for &w in g.neighbors(u).expect("vertex in range") {
            if dist[w.zero_based()].is_none() {
                dist[w.zero_based()] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Vertices examined by a structural check, with BFS distance parity.
struct Examined {
    /// (vertex, distance from start, true degree)
    vertices: Vec<(VertexId, usize, usize)>,
    radius: Option<usize>,
}

fn examine(g: &GraphHandle, radius: Option<usize>) -> Result<Examined> {
    match g {
        GraphHandle::Finite(f) => {
            let dist = bfs_distances(f, VertexId::from_zero_based(0));
            let degrees = f.degrees();
            let vertices = f
                .vertices()
                .map(|v| (v, dist[v.zero_based()].unwrap_or(usize::MAX), degrees[v.zero_based()]))
                .collect();
            Ok(Examined {
                vertices,
                radius: None,
            })
        }
        GraphHandle::Lazy(l) => {
            let r = radius.ok_or(Error::RadiusRequired)?;
            Ok(Examined {
                vertices: lazy_ball(l, r)?,
                radius: Some(r),
            })
        }
    }
}

fn lazy_ball(l: &LazyGraph, r: usize) -> Result<Vec<(VertexId, usize, usize)>> {
    let mut out = Vec::new();
    for (d, level) in l.ball_levels(r)?.into_iter().enumerate() {
        for v in level {
            out.push((v, d, l.degree(v)?));
        }
    }
    Ok(out)
}

/// All degrees equal. Lazy graphs need a radius and use the true degree of
/// every vertex in the ball.
pub fn check_regular(g: &GraphHandle, radius: Option<usize>) -> Result<StructuralVerdict<usize>> {
    let ex = examine(g, radius)?;
    let (first, _, d) = ex.vertices[0];
    for &(v, _, dv) in &ex.vertices[1..] {
        if dv != d {
            return Ok(StructuralVerdict::Refuted(Counterexample::DegreeMismatch {
                a: first,
                degree_a: d,
                b: v,
                degree_b: dv,
            }));
        }
    }
    Ok(StructuralVerdict::consistent(ex.radius, d))
}

/// Bipartite with constant degree on each side, sides taken from BFS
/// distance parity. A regular bipartite graph reports `(d, d)`.
pub fn check_biregular(
    g: &GraphHandle,
    radius: Option<usize>,
) -> Result<StructuralVerdict<BipartitionInfo>> {
    let ex = examine(g, radius)?;
    if ex.vertices.iter().any(|&(_, d, _)| d == usize::MAX) {
        return Err(Error::Disconnected);
    }
    let side_of: BTreeMap<VertexId, Side> = ex
        .vertices
        .iter()
        .map(|&(v, d, _)| (v, if d % 2 == 0 { Side::One } else { Side::Two }))
        .collect();
    for &(u, _, _) in &ex.vertices {
        for w in g.neighbors(u)?.iter() {
            if let Some(&sw) = side_of.get(w) {
                if sw == side_of[&u] {
                    return Ok(StructuralVerdict::Refuted(Counterexample::OddCycleEdge {
                        u: u.min(*w),
                        v: u.max(*w),
                    }));
                }
            }
        }
    }
    let mut reference: [Option<(VertexId, usize)>; 2] = [None, None];
    for &(v, _, dv) in &ex.vertices {
        let slot = &mut reference[(side_of[&v] == Side::Two) as usize];
        match *slot {
            None => *slot = Some((v, dv)),
            Some((a, da)) if da != dv => {
                return Ok(StructuralVerdict::Refuted(Counterexample::DegreeMismatch {
                    a,
                    degree_a: da,
                    b: v,
                    degree_b: dv,
                }))
            }
            Some(_) => {}
        }
    }
    let d1 = reference[0].map_or(0, |(_, d)| d);
    let d2 = reference[1].map_or(0, |(_, d)| d);
    Ok(StructuralVerdict::consistent(
        ex.radius,
        BipartitionInfo { side_of, d1, d2 },
    ))
}
