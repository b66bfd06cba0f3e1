//! Evolution algebras of a graph and the linear operators attached to them.
//!
//! An evolution algebra has a natural basis `{e_i}` with `e_i · e_j = 0` for
//! `i ≠ j` and `e_i · e_i = Σ_k c_ki e_k`. The structure constants here are
//! derived from the graph on demand:
//!
//! | kind            | `c_ki`                    |
//! |-----------------|---------------------------|
//! | adjacency       | `a_ki`                    |
//! | random walk     | `a_ki / deg(i)`           |
//! | degree weighted | `a_ki / deg(k)^{1/2}`     |
//!
//! Nothing is materialized as a matrix, so lazily generated infinite graphs
//! work the same way as finite ones: every product of finitely supported
//! vectors touches finitely many oracle calls and involves no truncation.

mod bounds;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexId};
use crate::space::{InnerProduct, SparseVector};

pub use bounds::{
    adjacency_ratio, degree_bound_norm_check, k_condition, left_mult_norm_estimate, schur_test, BoundKind,
    BoundValue, BoundednessReport, Weights,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Adjacency,
    RandomWalk,
    DegreeWeighted,
}

impl AlgebraKind {
    /// `c_ki` for an edge `{i, k}`.
    pub fn coefficient(self, deg_i: usize, deg_k: usize) -> f64 {
        match self {
            AlgebraKind::Adjacency => 1.0,
            AlgebraKind::RandomWalk => 1.0 / deg_i as f64,
            AlgebraKind::DegreeWeighted => 1.0 / (deg_k as f64).sqrt(),
        }
    }

    /// `c_ki²` for an edge `{i, k}`, exactly.
    pub fn squared_coefficient(self, deg_i: usize, deg_k: usize) -> BigRational {
        let one = BigInt::one();
        match self {
            AlgebraKind::Adjacency => BigRational::one(),
            AlgebraKind::RandomWalk => {
                BigRational::new(one, BigInt::from(deg_i) * BigInt::from(deg_i))
            }
            AlgebraKind::DegreeWeighted => BigRational::new(one, BigInt::from(deg_k)),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            AlgebraKind::Adjacency => "adj",
            AlgebraKind::RandomWalk => "rw",
            AlgebraKind::DegreeWeighted => "dw",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adj" | "adjacency" => Ok(AlgebraKind::Adjacency),
            "rw" | "random_walk" | "random-walk" => Ok(AlgebraKind::RandomWalk),
            "dw" | "degree_weighted" | "degree-weighted" => Ok(AlgebraKind::DegreeWeighted),
            _ => Err(Error::InvalidData(format!("unknown algebra kind {s:?}"))),
        }
    }
}

/// A graph together with the rule for its structure constants.
#[derive(Clone, Debug)]
pub struct EvolutionAlgebra {
    graph: GraphHandle,
    kind: AlgebraKind,
}

impl EvolutionAlgebra {
    pub fn new(graph: GraphHandle, kind: AlgebraKind) -> Self {
        EvolutionAlgebra { graph, kind }
    }

    pub fn adjacency(graph: GraphHandle) -> Self {
        Self::new(graph, AlgebraKind::Adjacency)
    }

    pub fn random_walk(graph: GraphHandle) -> Self {
        Self::new(graph, AlgebraKind::RandomWalk)
    }

    pub fn degree_weighted(graph: GraphHandle) -> Self {
        Self::new(graph, AlgebraKind::DegreeWeighted)
    }

    pub fn graph(&self) -> &GraphHandle {
        &self.graph
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// The inner product the algebra's Hilbert space carries.
    pub fn inner_product(&self) -> InnerProduct<'_> {
        match self.kind {
            AlgebraKind::DegreeWeighted => InnerProduct::DegreeWeighted(&self.graph),
            _ => InnerProduct::Standard,
        }
    }

    /// Nonzero structure constants of column `i` as `(k, c_ki)`, `k` ascending.
    pub fn column(&self, i: VertexId) -> Result<Vec<(VertexId, f64)>> {
        let nbrs = self.graph.neighbors(i)?;
        let deg_i = nbrs.len();
        if deg_i == 0 && self.kind != AlgebraKind::Adjacency {
            return Err(Error::ZeroDegree(i));
        }
        nbrs.iter()
            .map(|&k| {
                let deg_k = match self.kind {
                    AlgebraKind::DegreeWeighted => self.graph.degree(k)?,
                    _ => 0,
                };
                Ok((k, self.kind.coefficient(deg_i, deg_k)))
            })
            .collect()
    }

    /// `e_i · e_i = Σ_k c_ki e_k`
    pub fn square_basis(&self, i: VertexId) -> Result<SparseVector> {
        Ok(self.column(i)?.into_iter().collect())
    }

    /// `v · w = Σ_k (Σ_i v_i w_i c_ki) e_k`, summed over the common support.
    pub fn product(&self, v: &SparseVector, w: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        let mut a = v.iter().peekable();
        let mut b = w.iter().peekable();
        while let (Some(&(i, x)), Some(&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    let xy = x * y;
                    for (k, c) in self.column(i)? {
                        out.accumulate(k, xy * c);
                    }
                    a.next();
                    b.next();
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Evolution operator `C(v) = Σ_i v_i e_i²`, accumulated column by column.
    pub fn apply_evolution(&self, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (i, x) in v.iter() {
            for (k, c) in self.column(i)? {
                out.accumulate(k, x * c);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Left multiplication `L_v(w) = v · w`.
    pub fn left_multiply(&self, v: &SparseVector, w: &SparseVector) -> Result<SparseVector> {
        self.product(v, w)
    }
}

/// Adjacency operator `A(v)_k = Σ_i a_ki v_i`.
///
/// Computed row by row (each output coordinate pulls from its neighbors), so
/// it shares no code path with [`EvolutionAlgebra::apply_evolution`].
pub fn apply_adjacency(g: &GraphHandle, v: &SparseVector) -> Result<SparseVector> {
    let mut rows: Vec<VertexId> = Vec::new();
    for i in v.support() {
        rows.extend(g.neighbors(i)?.iter().copied());
    }
    rows.sort_unstable();
    rows.dedup();
    let mut out = Vec::with_capacity(rows.len());
    for k in rows {
        let mut sum = 0.0;
        for &i in g.neighbors(k)?.iter() {
            let x = v.get(i);
            if x != 0.0 {
                sum += x;
            }
        }
        out.push((k, sum));
    }
    Ok(SparseVector::from_entries(out))
}

/// Transition probability `p_ik = a_ki / deg(i)` of the simple random walk.
pub fn transition_probability(g: &GraphHandle, i: VertexId, k: VertexId) -> Result<BigRational> {
    let nbrs = g.neighbors(i)?;
    if nbrs.is_empty() {
        return Err(Error::ZeroDegree(i));
    }
    let a = i64::from(nbrs.binary_search(&k).is_ok());
    Ok(BigRational::new(BigInt::from(a), BigInt::from(nbrs.len())))
}

/// Transition operator `P(δ_i) = Σ_k p_ik δ_k`, extended linearly.
pub fn apply_transition(g: &GraphHandle, v: &SparseVector) -> Result<SparseVector> {
    let mut out = SparseVector::zero();
    for (i, x) in v.iter() {
        let nbrs = g.neighbors(i)?;
        if nbrs.is_empty() {
            return Err(Error::ZeroDegree(i));
        }
        let p = 1.0 / nbrs.len() as f64;
        for &k in nbrs.iter() {
            out.accumulate(k, x * p);
        }
    }
    out.prune();
    Ok(out)
}

/// `‖P δ_i‖²` in exact arithmetic.
pub fn transition_column_norm_sq(g: &GraphHandle, i: VertexId) -> Result<BigRational> {
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for &k in g.neighbors(i)?.iter() {
        let p = transition_probability(g, i, k)?;
        sum += &p * &p;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphSpec};

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn gen(s: &str) -> GraphHandle {
        generate(&s.parse::<GraphSpec>().unwrap().generator).unwrap()
    }

    fn vec_of(pairs: &[(u64, f64)]) -> SparseVector {
        pairs.iter().map(|&(i, c)| (v(i), c)).collect()
    }

    #[test]
    fn square_basis_examples() {
        let c4 = gen("cycle:4");
        assert_eq!(
            EvolutionAlgebra::adjacency(c4.clone()).square_basis(v(1)).unwrap(),
            vec_of(&[(2, 1.0), (4, 1.0)])
        );
        assert_eq!(
            EvolutionAlgebra::random_walk(c4).square_basis(v(1)).unwrap(),
            vec_of(&[(2, 0.5), (4, 0.5)])
        );
        let t = gen("factorial");
        let s = EvolutionAlgebra::degree_weighted(t).square_basis(v(1)).unwrap();
        let c = 1.0 / 3f64.sqrt();
        assert_eq!(s, vec_of(&[(2, c), (3, c)]));
    }

    #[test]
    fn random_walk_rejects_isolated_vertex() {
        let g: GraphHandle = crate::graph::FiniteGraph::from_edges(3, [(1, 2)]).unwrap().into();
        assert_eq!(
            EvolutionAlgebra::random_walk(g.clone()).square_basis(v(3)),
            Err(Error::ZeroDegree(v(3)))
        );
        assert!(EvolutionAlgebra::adjacency(g).square_basis(v(3)).unwrap().is_zero());
    }

    #[test]
    fn product_examples() {
        let adj = EvolutionAlgebra::adjacency(gen("cycle:4"));
        let x = vec_of(&[(1, 1.0), (2, 1.0)]);
        assert_eq!(
            adj.product(&x, &x).unwrap(),
            vec_of(&[(1, 1.0), (2, 1.0), (3, 1.0), (4, 1.0)])
        );
        assert!(adj
            .product(&SparseVector::basis(v(1)), &SparseVector::basis(v(2)))
            .unwrap()
            .is_zero());
        let rw = EvolutionAlgebra::random_walk(gen("cycle:5"));
        assert_eq!(
            rw.product(&vec_of(&[(1, 2.0)]), &vec_of(&[(1, 3.0)])).unwrap(),
            vec_of(&[(2, 3.0), (5, 3.0)])
        );
    }

    #[test]
    fn adjacency_operator_examples() {
        assert_eq!(
            apply_adjacency(&gen("cycle:5"), &SparseVector::basis(v(1))).unwrap(),
            vec_of(&[(2, 1.0), (5, 1.0)])
        );
        assert_eq!(
            apply_adjacency(&gen("sstree:2,3"), &SparseVector::basis(v(1))).unwrap(),
            vec_of(&[(2, 1.0), (3, 1.0)])
        );
        assert!(apply_adjacency(&gen("cycle:4"), &vec_of(&[(1, 1.0), (3, -1.0)]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn evolution_operator_examples() {
        let c5 = gen("cycle:5");
        let e1 = SparseVector::basis(v(1));
        assert_eq!(
            EvolutionAlgebra::adjacency(c5.clone()).apply_evolution(&e1).unwrap(),
            apply_adjacency(&c5, &e1).unwrap()
        );
        assert_eq!(
            EvolutionAlgebra::random_walk(gen("cycle:4"))
                .apply_evolution(&vec_of(&[(1, 1.0), (3, 1.0)]))
                .unwrap(),
            vec_of(&[(2, 1.0), (4, 1.0)])
        );
        assert!(EvolutionAlgebra::degree_weighted(c5)
            .apply_evolution(&SparseVector::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn transition_operator_examples() {
        let c4 = gen("cycle:4");
        let p = apply_transition(&c4, &SparseVector::basis(v(1))).unwrap();
        assert_eq!(p, vec_of(&[(2, 0.5), (4, 0.5)]));
        assert_eq!(p.dot(&p), 0.5);
        assert_eq!(
            transition_column_norm_sq(&c4, v(1)).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        let third = 1.0 / 3.0;
        assert_eq!(
            apply_transition(&gen("star:3"), &SparseVector::basis(v(1))).unwrap(),
            vec_of(&[(2, third), (3, third), (4, third)])
        );
        assert_eq!(
            apply_transition(&gen("path:3"), &vec_of(&[(1, 0.5), (3, 0.5)])).unwrap(),
            vec_of(&[(2, 1.0)])
        );
    }

    #[test]
    fn kind_names_parse() {
        for k in [AlgebraKind::Adjacency, AlgebraKind::RandomWalk, AlgebraKind::DegreeWeighted] {
            assert_eq!(k.short_name().parse::<AlgebraKind>().unwrap(), k);
        }
        assert!("xyz".parse::<AlgebraKind>().is_err());
    }
}
