//! Boundedness certificates: the K-condition, the Schur test with weight
//! sequences, and randomized checks of `‖A v‖ ≤ M ‖v‖`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{apply_adjacency, AlgebraKind, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::graph::{GraphHandle, Scope, VertexId};
use crate::sampling::{random_sparse_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use crate::space::SparseVector;
use crate::{DEFAULT_ABS_TOL, DEFAULT_REL_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    KCondition,
    SchurTest,
    DegreeBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    K(f64),
    Pair { m1: f64, m2: f64 },
    Degree(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    pub kind: BoundKind,
    pub value: BoundValue,
    pub scope: Scope,
    pub satisfied: bool,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    /// Exact value of K as a reduced fraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip)]
    pub exact_value: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_degree_bound: Option<usize>,
    /// `(M1 M2)^{1/2}`, the implied bound on the evolution operator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_norm_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<usize>,
}

impl BoundednessReport {
    fn new(kind: BoundKind, value: BoundValue, scope: Scope) -> Self {
        BoundednessReport {
            kind,
            value,
            scope,
            satisfied: true,
            seed: None,
            max_ratio: None,
            exact: None,
            exact_value: None,
            declared_degree_bound: None,
            operator_norm_bound: None,
            weights: None,
            trials: None,
            violations: None,
        }
    }
}

/// Positive weight sequence for the Schur test.
#[derive(Clone, Debug, PartialEq)]
pub enum Weights {
    Constant(f64),
    Map(BTreeMap<VertexId, f64>),
}

impl Default for Weights {
    fn default() -> Self {
        Weights::Constant(1.0)
    }
}

impl Weights {
    pub fn get(&self, i: VertexId) -> Result<f64> {
        let w = match self {
            Weights::Constant(c) => *c,
            Weights::Map(m) => *m.get(&i).ok_or(Error::MissingWeight(i))?,
        };
        if w > 0.0 && w.is_finite() {
            Ok(w)
        } else {
            Err(Error::NonPositiveWeight { vertex: i, value: w })
        }
    }

    fn describe(&self) -> String {
        match self {
            Weights::Constant(c) => format!("constant {c}"),
            Weights::Map(m) => format!("explicit ({} entries)", m.len()),
        }
    }
}

fn declared_bound(g: &GraphHandle) -> Option<usize> {
    g.as_lazy().and_then(|l| l.degree_bound())
}

/// `K = max_i Σ_k c_ki²` over the examined vertices, computed exactly.
///
/// Lazy graphs require a radius and report `WithinRadius`; the global
/// supremum is never claimed from a window.
pub fn k_condition(alg: &EvolutionAlgebra, radius: Option<usize>) -> Result<BoundednessReport> {
    let g = alg.graph();
    let window = g.window(radius)?;
    let mut k_max = BigRational::zero();
    for &i in &window.vertices {
        let nbrs = g.neighbors(i)?;
        let deg_i = nbrs.len();
        if deg_i == 0 && alg.kind() != AlgebraKind::Adjacency {
            return Err(Error::ZeroDegree(i));
        }
        let mut sum = BigRational::zero();
        for &k in nbrs.iter() {
            let deg_k = g.degree(k)?;
            sum += alg.kind().squared_coefficient(deg_i, deg_k);
        }
        if sum > k_max {
            k_max = sum;
        }
    }
    let mut report = BoundednessReport::new(
        BoundKind::KCondition,
        BoundValue::K(k_max.to_f64().unwrap_or(f64::INFINITY)),
        window.scope,
    );
    report.exact = Some(format_rational(&k_max));
    report.exact_value = Some(k_max);
    report.declared_degree_bound = declared_bound(g);
    Ok(report)
}

fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Smallest `(M1, M2)` with `Σ_k |c_ki| α_k ≤ M1 β_i` for every examined `i`
/// and `Σ_i |c_ki| β_i ≤ M2 α_k` for every examined `k`.
pub fn schur_test(
    alg: &EvolutionAlgebra,
    alpha: &Weights,
    beta: &Weights,
    radius: Option<usize>,
) -> Result<BoundednessReport> {
    let g = alg.graph();
    let kind = alg.kind();
    let window = g.window(radius)?;
    let (mut m1, mut m2) = (0.0f64, 0.0f64);
    for &x in &window.vertices {
        let nbrs = g.neighbors(x)?;
        let deg_x = nbrs.len();
        if deg_x == 0 && kind != AlgebraKind::Adjacency {
            return Err(Error::ZeroDegree(x));
        }
        // column sum with x as i, row sum with x as k
        let (mut col, mut row) = (0.0, 0.0);
        for &y in nbrs.iter() {
            let deg_y = g.degree(y)?;
            col += kind.coefficient(deg_x, deg_y).abs() * alpha.get(y)?;
            row += kind.coefficient(deg_y, deg_x).abs() * beta.get(y)?;
        }
        m1 = m1.max(col / beta.get(x)?);
        m2 = m2.max(row / alpha.get(x)?);
    }
    let mut report = BoundednessReport::new(
        BoundKind::SchurTest,
        BoundValue::Pair { m1, m2 },
        window.scope,
    );
    report.satisfied = m1.is_finite() && m2.is_finite();
    report.operator_norm_bound = Some((m1 * m2).sqrt());
    report.declared_degree_bound = declared_bound(g);
    report.weights = Some(if alpha == beta {
        alpha.describe()
    } else {
        format!("alpha: {}, beta: {}", alpha.describe(), beta.describe())
    });
    Ok(report)
}

/// `‖A v‖ / ‖v‖` for a nonzero vector.
pub fn adjacency_ratio(g: &GraphHandle, v: &SparseVector) -> Result<f64> {
    Ok(apply_adjacency(g, v)?.norm() / v.norm())
}

/// Checks `‖A v‖ ≤ M ‖v‖` on `trials` seeded random vectors supported in the
/// examined window. `M` must dominate every examined degree.
pub fn degree_bound_norm_check(
    g: &GraphHandle,
    m: usize,
    trials: usize,
    radius: Option<usize>,
    seed: u64,
) -> Result<BoundednessReport> {
    let window = g.window(radius)?;
    for &i in &window.vertices {
        let d = g.degree(i)?;
        if d > m {
            return Err(Error::BoundBelowDegree {
                vertex: i,
                degree: d,
                bound: m,
            });
        }
    }
    let mut rng = seeded_rng(seed);
    let mut max_ratio = 0.0f64;
    let mut violations = 0;
    for _ in 0..trials {
        let v = random_sparse_vector(&mut rng, &window.vertices, MAX_RANDOM_SUPPORT);
        let (av, nv) = (apply_adjacency(g, &v)?.norm(), v.norm());
        if nv == 0.0 {
            continue;
        }
        max_ratio = max_ratio.max(av / nv);
        let limit = m as f64 * nv;
        if av > limit + DEFAULT_REL_TOL * limit + DEFAULT_ABS_TOL {
            violations += 1;
        }
    }
    let mut report = BoundednessReport::new(BoundKind::DegreeBound, BoundValue::Degree(m), window.scope);
    report.satisfied = violations == 0;
    report.seed = Some(seed);
    report.max_ratio = Some(max_ratio);
    report.trials = Some(trials);
    report.violations = Some(violations);
    report.declared_degree_bound = declared_bound(g);
    Ok(report)
}

/// Lower estimate of `‖L_v‖` in the algebra's own norm.
///
/// Tries the basis vectors of `supp(v)` and then `trials` random vectors on
/// `supp(v) ∪ N(supp(v))`; returns the largest observed `‖v·w‖ / ‖w‖`.
pub fn left_mult_norm_estimate(
    alg: &EvolutionAlgebra,
    v: &SparseVector,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if v.is_zero() {
        return Ok(0.0);
    }
    let g = alg.graph();
    let ip = alg.inner_product();
    let mut pool: Vec<VertexId> = v.support().collect();
    for i in v.support() {
        pool.extend(g.neighbors(i)?.iter().copied());
    }
    pool.sort_unstable();
    pool.dedup();

    let mut best = 0.0f64;
    let mut consider = |w: &SparseVector| -> Result<()> {
        let nw = ip.norm(w)?;
        if nw > 0.0 {
            best = best.max(ip.norm(&alg.left_multiply(v, w)?)? / nw);
        }
        Ok(())
    };
    for i in v.support() {
        consider(&SparseVector::basis(i))?;
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        consider(&random_sparse_vector(&mut rng, &pool, MAX_RANDOM_SUPPORT))?;
    }
    Ok(best)
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

    #[test]
    fn k_condition_examples() {
        let r = k_condition(&EvolutionAlgebra::random_walk(gen("cycle:5")), None).unwrap();
        assert_eq!(r.value, BoundValue::K(0.5));
        assert_eq!(r.exact.as_deref(), Some("1/2"));
        assert!(r.satisfied);
        let r = k_condition(&EvolutionAlgebra::adjacency(gen("kbipartite:2,3")), None).unwrap();
        assert_eq!(r.value, BoundValue::K(3.0));
        assert_eq!(r.exact.as_deref(), Some("3"));
    }

    #[test]
    fn k_condition_on_lazy_graph_is_windowed() {
        let t = gen("sstree:2,3");
        let alg = EvolutionAlgebra::random_walk(t);
        assert!(matches!(k_condition(&alg, None), Err(Error::RadiusRequired)));
        let r = k_condition(&alg, Some(3)).unwrap();
        assert_eq!(r.scope, Scope::WithinRadius(3));
        assert_eq!(r.exact.as_deref(), Some("1/2"));
        assert_eq!(r.declared_degree_bound, Some(3));
    }

    #[test]
    fn schur_examples() {
        let unit = Weights::default();
        let pair = |s: &str, kind| {
            schur_test(&EvolutionAlgebra::new(gen(s), kind), &unit, &unit, None)
                .unwrap()
                .value
        };
        assert_eq!(pair("cycle:5", AlgebraKind::Adjacency), BoundValue::Pair { m1: 2.0, m2: 2.0 });
        assert_eq!(
            pair("kbipartite:2,3", AlgebraKind::Adjacency),
            BoundValue::Pair { m1: 3.0, m2: 3.0 }
        );
        assert_eq!(pair("cycle:4", AlgebraKind::RandomWalk), BoundValue::Pair { m1: 1.0, m2: 1.0 });
        let r = schur_test(&EvolutionAlgebra::adjacency(gen("cycle:5")), &unit, &unit, None).unwrap();
        assert_eq!(r.operator_norm_bound, Some(2.0));
    }

    #[test]
    fn schur_rejects_bad_weights() {
        let alg = EvolutionAlgebra::adjacency(gen("cycle:4"));
        let zero = Weights::Constant(0.0);
        assert!(matches!(
            schur_test(&alg, &zero, &Weights::default(), None),
            Err(Error::NonPositiveWeight { .. })
        ));
        let partial = Weights::Map(BTreeMap::from([(v(1), 1.0)]));
        assert!(matches!(
            schur_test(&alg, &partial, &Weights::default(), None),
            Err(Error::MissingWeight(_))
        ));
    }

    #[test]
    fn degree_bound_examples() {
        let c5 = gen("cycle:5");
        let r = degree_bound_norm_check(&c5, 2, 200, None, 0).unwrap();
        assert!(r.satisfied);
        assert!(r.max_ratio.unwrap() <= 2.0 + 1e-12);
        let ones: SparseVector = (1..=5).map(|i| (v(i), 1.0)).collect();
        assert_eq!(adjacency_ratio(&c5, &ones).unwrap(), 2.0);

        let r = degree_bound_norm_check(&gen("sstree:2,3"), 3, 200, Some(4), 0).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.violations, Some(0));

        let k2 = gen("path:2");
        let x: SparseVector = [(v(1), 1.0), (v(2), 1.0)].into_iter().collect();
        assert_eq!(adjacency_ratio(&k2, &x).unwrap(), 1.0);
    }

    #[test]
    fn degree_bound_below_degree_is_rejected() {
        assert_eq!(
            degree_bound_norm_check(&gen("star:3"), 2, 10, None, 0).unwrap_err(),
            Error::BoundBelowDegree {
                vertex: v(1),
                degree: 3,
                bound: 2
            }
        );
    }

    #[test]
    fn left_multiplication_estimates() {
        let alg = EvolutionAlgebra::adjacency(gen("cycle:4"));
        assert_eq!(left_mult_norm_estimate(&alg, &SparseVector::zero(), 10, 0).unwrap(), 0.0);
        let est = left_mult_norm_estimate(&alg, &SparseVector::basis(v(1)), 50, 0).unwrap();
        assert!((est - 2f64.sqrt()).abs() < 1e-12);
    }
}
