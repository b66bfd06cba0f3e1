//! Numerical verification of the homomorphism identities and the monomial
//! classification of sparse maps.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index;
use serde::Serialize;

use crate::algebra::EvolutionAlgebra;
use crate::error::Result;
use crate::graph::VertexId;
use crate::morphism::{LinearMap, MonomialMap, SparseLinearMap};
use crate::sampling::seeded_rng;
use crate::space::SparseVector;
use crate::WITNESS_TOL;

/// Up to this many vertices every pair is tested for the zero-product
/// identity; beyond it `4n` seeded pairs are sampled.
pub const ALL_PAIRS_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            tol: WITNESS_TOL,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub vertices_checked: usize,
    pub pairs_checked: usize,
    /// `max_i ‖f(e_i · e_i) − f(e_i) · f(e_i)‖`
    pub max_square_residual: f64,
    /// `max_{i≠j} ‖f(e_i) · f(e_j)‖`
    pub max_zero_product_residual: f64,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_square: Option<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_pair: Option<(VertexId, VertexId)>,
    pub sampled_pairs: bool,
    pub seed: u64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks `f(e_i²) = f(e_i)²` for every `i` in `vertices` and
/// `f(e_i) f(e_j) = 0` for pairs `i ≠ j`, residuals in the target norm.
pub fn check_homomorphism<M: LinearMap + ?Sized>(
    map: &M,
    src: &EvolutionAlgebra,
    dst: &EvolutionAlgebra,
    vertices: &[VertexId],
    opts: &CheckOptions,
) -> Result<HomomorphismReport> {
    let norm = dst.inner_product();
    let images: Vec<SparseVector> = vertices
        .iter()
        .map(|&i| map.image(i))
        .collect::<Result<_>>()?;

    let mut max_square = 0.0f64;
    let mut worst_square = None;
    for (&i, fi) in vertices.iter().zip(&images) {
        let lhs = map.apply(&src.square_basis(i)?)?;
        let rhs = dst.product(fi, fi)?;
        let r = norm.norm(&lhs.sub(&rhs))?;
        if r > max_square || worst_square.is_none() {
            max_square = max_square.max(r);
            worst_square = Some(i);
        }
    }

    let n = vertices.len();
    let sampled = n > ALL_PAIRS_LIMIT;
    let pairs: Vec<(usize, usize)> = if sampled {
        let mut rng = seeded_rng(opts.seed);
        (0..4 * n)
            .map(|_| {
                let p = index::sample(&mut rng, n, 2);
                (p.index(0), p.index(1))
            })
            .collect()
    } else {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    };
    let mut max_zero = 0.0f64;
    let mut worst_pair = None;
    for &(a, b) in &pairs {
        let r = norm.norm(&dst.product(&images[a], &images[b])?)?;
        if r > max_zero {
            max_zero = r;
            worst_pair = Some((vertices[a], vertices[b]));
        }
    }

    let max_residual = max_square.max(max_zero);
    Ok(HomomorphismReport {
        vertices_checked: n,
        pairs_checked: pairs.len(),
        max_square_residual: max_square,
        max_zero_product_residual: max_zero,
        max_residual,
        worst_square,
        worst_pair,
        sampled_pairs: sampled,
        seed: opts.seed,
        tol: opts.tol,
        passed: max_residual <= opts.tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonomialViolation {
    /// `|Ω_i| ≠ 1`
    SupportSize { i: VertexId, size: usize },
    /// `k ∈ Ω_i ∩ Ω_j`
    Overlap { i: VertexId, j: VertexId, k: VertexId },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    /// `Some` iff every column has exactly one nonzero entry and the
    /// supports are pairwise disjoint.
    pub monomial: Option<MonomialMap>,
    pub disjoint: bool,
    pub covering: bool,
    pub null_columns: Vec<VertexId>,
    /// First violation found, if any.
    pub violation: Option<MonomialViolation>,
}

impl Classification {
    pub fn is_monomial(&self) -> bool {
        self.monomial.is_some()
    }
}

/// Computes the column supports `Ω_i`, their pairwise disjointness and
/// whether their union covers `target` (the map's own domain when `None`).
pub fn classify_monomial(m: &SparseLinearMap, target: Option<&[VertexId]>) -> Classification {
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut null_columns = Vec::new();
    let mut violation = None;
    let mut disjoint = true;
    for (i, col) in m.columns() {
        if col.is_zero() {
            null_columns.push(i);
        }
        if col.len() != 1 && violation.is_none() {
            violation = Some(MonomialViolation::SupportSize { i, size: col.len() });
        }
        for k in col.support() {
            if let Some(&j) = owner.get(&k) {
                if disjoint {
                    disjoint = false;
                    let overlap = MonomialViolation::Overlap { i: j, j: i, k };
                    // an overlap explains more than a support size on its own
                    if !matches!(violation, Some(MonomialViolation::SupportSize { size: 0, .. })) {
                        violation = Some(overlap);
                    }
                }
            } else {
                owner.insert(k, i);
            }
        }
    }
    let covered: BTreeSet<VertexId> = owner.keys().copied().collect();
    let covering = match target {
        Some(t) => t.iter().all(|k| covered.contains(k)),
        None => m.domain().all(|k| covered.contains(&k)),
    };
    let monomial = if violation.is_none() {
        MonomialMap::new(
            m.direction(),
            m.columns().map(|(i, col)| {
                let (p, a) = col.iter().next().expect("singleton column");
                (i, a, p)
            }),
        )
        .ok()
    } else {
        None
    };
    Classification {
        monomial,
        disjoint,
        covering,
        null_columns,
        violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphHandle, GraphSpec};
    use crate::morphism::build_regular_iso;

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn vec_of(pairs: &[(u64, f64)]) -> SparseVector {
        pairs.iter().map(|&(i, c)| (v(i), c)).collect()
    }

    fn gen(s: &str) -> GraphHandle {
        generate(&s.parse::<GraphSpec>().unwrap().generator).unwrap()
    }

    fn cols(c: &[(u64, &[(u64, f64)])]) -> SparseLinearMap {
        SparseLinearMap::new(None, c.iter().map(|&(i, p)| (v(i), vec_of(p))).collect())
    }

    #[test]
    fn c5_witness_passes() {
        let g = gen("cycle:5");
        let m = build_regular_iso(&g, None).unwrap();
        let verts: Vec<VertexId> = m.domain().collect();
        let rep = check_homomorphism(
            &m,
            &EvolutionAlgebra::adjacency(g.clone()),
            &EvolutionAlgebra::random_walk(g),
            &verts,
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(rep.passed);
        assert!(rep.max_residual < 1e-12);
        assert_eq!(rep.pairs_checked, 10);
    }

    #[test]
    fn identity_on_p3_fails() {
        let g = gen("path:3");
        let id = MonomialMap::diagonal(None, [v(1), v(2), v(3)], |_| 1.0).unwrap();
        let rep = check_homomorphism(
            &id,
            &EvolutionAlgebra::adjacency(g.clone()),
            &EvolutionAlgebra::random_walk(g),
            &[v(1), v(2), v(3)],
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(!rep.passed);
        assert!((rep.max_residual - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(rep.worst_square, Some(v(2)));
    }

    #[test]
    fn outside_domain_is_an_error() {
        let g = gen("path:3");
        let m = MonomialMap::diagonal(None, [v(1)], |_| 1.0).unwrap();
        assert!(check_homomorphism(
            &m,
            &EvolutionAlgebra::adjacency(g.clone()),
            &EvolutionAlgebra::random_walk(g),
            &[v(1), v(2)],
            &CheckOptions::default(),
        )
        .is_err());
    }

    #[test]
    fn classification_examples() {
        let id = cols(&[(1, &[(1, 1.0)]), (2, &[(2, 1.0)]), (3, &[(3, 1.0)]), (4, &[(4, 1.0)])]);
        let c = classify_monomial(&id, None);
        assert!(c.disjoint && c.covering && c.null_columns.is_empty());
        let m = c.monomial.unwrap();
        assert!(m.is_bijective_on_domain());
        assert!(m.entries().all(|(i, a, p)| a == 1.0 && p == i));

        let bad = cols(&[(1, &[(1, 1.0), (2, 1.0)]), (2, &[(2, 1.0)])]);
        let c = classify_monomial(&bad, None);
        assert!(c.monomial.is_none() && !c.disjoint);
        assert_eq!(
            c.violation,
            Some(MonomialViolation::Overlap { i: v(1), j: v(2), k: v(2) })
        );

        let swap = cols(&[(1, &[(2, 3.0)]), (2, &[(1, 5.0)])]);
        let m = classify_monomial(&swap, None).monomial.unwrap();
        assert_eq!((m.alpha(v(1)), m.pi(v(1))), (Some(3.0), Some(v(2))));
        assert_eq!((m.alpha(v(2)), m.pi(v(2))), (Some(5.0), Some(v(1))));

        let null = cols(&[(1, &[]), (2, &[])]);
        let c = classify_monomial(&null, None);
        assert_eq!(c.null_columns, vec![v(1), v(2)]);
        assert!(c.disjoint && !c.covering && c.monomial.is_none());
    }
}
