//! Twin partition (vertices with identical neighborhoods) and the quotient
//! graph obtained by merging each twin class.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    /// Classes ordered by their smallest member; each class sorted.
    pub classes: Vec<Vec<VertexId>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn class_of(&self, i: VertexId) -> Option<usize> {
        self.class_of.get(i.zero_based()).copied()
    }

    pub fn representative(&self, class: usize) -> VertexId {
        self.classes[class][0]
    }

    pub fn is_twin_free(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Builds a partition from explicit classes over vertices `1..=n`.
    pub fn from_classes(n: usize, mut classes: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        for class in &mut classes {
            class.sort_unstable();
            if class.is_empty() {
                return Err(Error::InconsistentPartition("empty class".into()));
            }
        }
        classes.sort_unstable_by_key(|c| c[0]);
        for (idx, class) in classes.iter().enumerate() {
            for &v in class {
                let slot = class_of
                    .get_mut(v.zero_based())
                    .ok_or(Error::InconsistentPartition(format!("vertex {v} out of range")))?;
                if *slot != usize::MAX {
                    return Err(Error::InconsistentPartition(format!("vertex {v} in two classes")));
                }
                *slot = idx;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InconsistentPartition(format!(
                "vertex {} is not covered",
                p + 1
            )));
        }
        Ok(TwinPartition { classes, class_of })
    }
}

/// Groups vertices by identical sorted neighbor lists.
pub fn twin_partition(g: &FiniteGraph) -> TwinPartition {
    let mut by_nbrs: HashMap<&[VertexId], usize> = HashMap::new();
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    let mut class_of = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let nbrs = g.neighbors(v).expect("vertex in range");
        let idx = *by_nbrs.entry(nbrs).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(v);
        class_of.push(idx);
    }
    // vertices are visited in increasing order, so classes are already
    // sorted and ordered by smallest member
    TwinPartition { classes, class_of }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    /// Class `c` of the partition becomes vertex `c + 1`.
    pub graph: FiniteGraph,
    pub partition: TwinPartition,
}

impl Quotient {
    pub fn vertex_of(&self, i: VertexId) -> Option<VertexId> {
        self.partition.class_of(i).map(VertexId::from_zero_based)
    }
}

/// Merges each twin class into a single vertex. Two classes are adjacent
/// iff their members are adjacent in `g`.
pub fn quotient_graph(g: &FiniteGraph, p: &TwinPartition) -> Result<Quotient> {
    if p.class_of.len() != g.vertex_count() {
        return Err(Error::InconsistentPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.class_of.len(),
            g.vertex_count()
        )));
    }
    for class in &p.classes {
        let rep = g.neighbors(class[0])?;
        for &v in &class[1..] {
            if g.neighbors(v)? != rep {
                return Err(Error::InconsistentPartition(format!(
                    "{} and {v} share a class but not their neighborhoods",
                    class[0]
                )));
            }
        }
    }
    let mut edges = Vec::new();
    for (c, class) in p.classes.iter().enumerate() {
        for &w in g.neighbors(class[0])? {
            let d = p.class_of[w.zero_based()];
            if c < d {
                edges.push((c as u64 + 1, d as u64 + 1));
            }
        }
    }
    Ok(Quotient {
        graph: FiniteGraph::from_edges(p.classes.len(), edges)?,
        partition: p.clone(),
    })
}

/// Repeats twin reduction until the graph is twin-free; returns the final
/// graph and the number of reduction rounds that changed something.
pub fn twin_reduce(g: &FiniteGraph) -> (FiniteGraph, usize) {
    let mut current = g.clone();
    let mut rounds = 0;
    loop {
        let p = twin_partition(&current);
        if p.is_twin_free() {
            return (current, rounds);
        }
        current = quotient_graph(&current, &p)
            .expect("twin partition is consistent with its graph")
            .graph;
        rounds += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphSpec};

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn finite(s: &str) -> FiniteGraph {
        generate(&s.parse::<GraphSpec>().unwrap().generator)
            .unwrap()
            .as_finite()
            .unwrap()
            .clone()
    }

    #[test]
    fn cycle_four_has_two_classes() {
        let g = finite("cycle:4");
        let p = twin_partition(&g);
        assert_eq!(p.classes, vec![vec![v(1), v(3)], vec![v(2), v(4)]]);
        assert_eq!(p.representative(1), v(2));
        let q = quotient_graph(&g, &p).unwrap();
        assert_eq!(q.graph, finite("path:2"));
        assert_eq!(q.vertex_of(v(3)), Some(v(1)));
    }

    #[test]
    fn path_four_is_twin_free() {
        let g = finite("path:4");
        let p = twin_partition(&g);
        assert!(p.is_twin_free());
        assert_eq!(quotient_graph(&g, &p).unwrap().graph, g);
    }

    #[test]
    fn complete_bipartite_collapses_to_edge() {
        let g = finite("kbipartite:2,3");
        let p = twin_partition(&g);
        let sizes: Vec<usize> = p.classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(quotient_graph(&g, &p).unwrap().graph, finite("path:2"));
    }

    #[test]
    fn spider_quotient_is_path() {
        let g = finite("spider:1,1,2");
        let q = quotient_graph(&g, &twin_partition(&g)).unwrap();
        assert_eq!(q.graph.vertex_count(), 4);
        assert_eq!(q.graph.degrees().iter().filter(|&&d| d == 1).count(), 2);
        assert!(twin_partition(&q.graph).is_twin_free());
    }

    #[test]
    fn inconsistent_partition_rejected() {
        let g = finite("path:4");
        let bad = TwinPartition::from_classes(4, vec![vec![v(1), v(2)], vec![v(3)], vec![v(4)]]).unwrap();
        assert!(matches!(quotient_graph(&g, &bad), Err(Error::InconsistentPartition(_))));
        assert!(TwinPartition::from_classes(4, vec![vec![v(1)], vec![v(2)]]).is_err());
        assert!(TwinPartition::from_classes(2, vec![vec![v(1), v(2)], vec![v(2)]]).is_err());
    }

    #[test]
    fn reduction_reaches_twin_free_fixpoint() {
        for s in ["cycle:4", "kbipartite:3,4", "spider:1,1,1,2", "star:5", "path:6"] {
            let (r, _) = twin_reduce(&finite(s));
            assert!(twin_partition(&r).is_twin_free(), "{s}");
        }
    }
}
