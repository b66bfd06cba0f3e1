//! Finitely supported vectors of ℓ²(ℕ) and the three inner products used on
//! them: standard, degree-weighted, and the one induced by a monomial
//! isomorphism's scale factors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexId};

/// A finitely supported real vector `Σ v_i e_i`.
///
/// Exact zeros are never stored. Near-zero values produced by arithmetic
/// are kept as they are.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SparseVector {
    entries: BTreeMap<VertexId, f64>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: VertexId) -> Self {
        Self {
            entries: BTreeMap::from([(i, 1.0)]),
        }
    }

    /// Collects `(index, coefficient)` pairs, summing repeated indices.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, f64)>,
    {
        let mut v = Self::zero();
        for (i, c) in entries {
            v.accumulate(i, c);
        }
        v.prune();
        v
    }

    pub fn get(&self, i: VertexId) -> f64 {
        self.entries.get(&i).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_entries(self.iter().map(|(i, x)| (i, c * x)))
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: f64, other: &Self) {
        for (i, x) in other.iter() {
            self.accumulate(i, c * x);
        }
        self.prune();
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .iter()
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    /// Adds to a coefficient without pruning; callers finish with `prune`.
    pub(crate) fn accumulate(&mut self, i: VertexId, c: f64) {
        *self.entries.entry(i).or_insert(0.0) += c;
    }

    pub(crate) fn prune(&mut self) {
        self.entries.retain(|_, c| *c != 0.0);
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .iter()
            .filter_map(|(i, x)| large.entries.get(&i).map(|y| x * y))
            .fold(0.0, |acc, t| acc + t)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        BTreeMap::<VertexId, f64>::deserialize(d).map(Self::from_entries)
    }
}

impl FromIterator<(VertexId, f64)> for SparseVector {
    fn from_iter<T: IntoIterator<Item = (VertexId, f64)>>(iter: T) -> Self {
        Self::from_entries(iter)
    }
}

/// Which inner product to use.
#[derive(Clone, Copy, Debug)]
pub enum InnerProduct<'a> {
    /// `⟨v, w⟩ = Σ v_i w_i`
    Standard,
    /// `⟨v, w⟩_d = Σ v_i w_i deg(i)`
    DegreeWeighted(&'a GraphHandle),
    /// `⟨v, w⟩_f = Σ v_i w_i α_i²`, making `α_i⁻¹ e_i` orthonormal.
    AlphaInduced(&'a BTreeMap<VertexId, f64>),
}

impl InnerProduct<'_> {
    fn weight(&self, i: VertexId) -> Result<f64> {
        match self {
            InnerProduct::Standard => Ok(1.0),
            InnerProduct::DegreeWeighted(g) => match g.degree(i)? {
                0 => Err(Error::ZeroDegree(i)),
                d => Ok(d as f64),
            },
            InnerProduct::AlphaInduced(alpha) => match alpha.get(&i) {
                None => Err(Error::MissingWeight(i)),
                Some(&0.0) => Err(Error::InvalidData(format!("alpha_{i} is zero"))),
                Some(&a) => Ok(a * a),
            },
        }
    }

    pub fn inner(&self, v: &SparseVector, w: &SparseVector) -> Result<f64> {
        if let InnerProduct::Standard = self {
            return Ok(v.dot(w));
        }
        // every support vertex must carry a weight, even where the other
        // vector vanishes
        for i in w.support() {
            if v.get(i) == 0.0 {
                self.weight(i)?;
            }
        }
        let mut sum = 0.0;
        for (i, x) in v.iter() {
            let wt = self.weight(i)?;
            sum += x * w.get(i) * wt;
        }
        Ok(sum)
    }

    pub fn norm(&self, v: &SparseVector) -> Result<f64> {
        Ok(self.inner(v, v)?.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn vec_of(pairs: &[(u64, f64)]) -> SparseVector {
        pairs.iter().map(|&(i, c)| (v(i), c)).collect()
    }

    #[test]
    fn basis_is_orthonormal() {
        let ip = InnerProduct::Standard;
        assert_eq!(SparseVector::basis(v(3)), vec_of(&[(3, 1.0)]));
        assert_eq!(ip.inner(&SparseVector::basis(v(3)), &SparseVector::basis(v(3))).unwrap(), 1.0);
        assert_eq!(ip.inner(&SparseVector::basis(v(3)), &SparseVector::basis(v(5))).unwrap(), 0.0);
    }

    #[test]
    fn arithmetic_prunes_exact_zeros() {
        assert!(vec_of(&[(1, 1.0)]).add(&vec_of(&[(1, -1.0)])).is_zero());
        assert_eq!(
            vec_of(&[(1, 1.0), (4, -0.5)]).scale(2.0),
            vec_of(&[(1, 2.0), (4, -1.0)])
        );
        assert_eq!(
            vec_of(&[(1, 1.0)]).add(&vec_of(&[(2, 1.0)])),
            vec_of(&[(1, 1.0), (2, 1.0)])
        );
        assert!(vec_of(&[(1, 3.0)]).scale(0.0).is_zero());
        // tiny values are not zeros
        assert_eq!(vec_of(&[(1, 1e-300)]).len(), 1);
    }

    #[test]
    fn standard_norm() {
        let x = vec_of(&[(1, 3.0), (2, 4.0)]);
        assert_eq!(InnerProduct::Standard.inner(&x, &x).unwrap(), 25.0);
        assert_eq!(InnerProduct::Standard.norm(&x).unwrap(), 5.0);
    }

    #[test]
    fn degree_weighted_root_of_factorial_tree() {
        let g = generate(&GeneratorSpec::FactorialTree).unwrap();
        let ip = InnerProduct::DegreeWeighted(&g);
        let e = SparseVector::basis(v(1));
        assert_eq!(ip.inner(&e, &e).unwrap(), 2.0);
    }

    #[test]
    fn degree_weighted_rejects_isolated_vertex() {
        let g: GraphHandle = crate::graph::FiniteGraph::from_edges(3, [(1, 2)]).unwrap().into();
        let ip = InnerProduct::DegreeWeighted(&g);
        assert_eq!(
            ip.norm(&SparseVector::basis(v(3))),
            Err(Error::ZeroDegree(v(3)))
        );
    }

    #[test]
    fn alpha_induced_rescaled_basis() {
        let alpha = BTreeMap::from([(v(1), 2.0)]);
        let ip = InnerProduct::AlphaInduced(&alpha);
        let e = SparseVector::basis(v(1));
        assert_eq!(ip.inner(&e, &e).unwrap(), 4.0);
        let tilde = e.scale(0.5);
        assert_eq!(ip.inner(&tilde, &tilde).unwrap(), 1.0);
        assert_eq!(
            ip.inner(&e, &SparseVector::basis(v(2))),
            Err(Error::MissingWeight(v(2)))
        );
    }

    #[test]
    fn json_format() {
        let x: SparseVector = serde_json::from_str(r#"{"1": 0.5, "4": -1.0}"#).unwrap();
        assert_eq!(x, vec_of(&[(1, 0.5), (4, -1.0)]));
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"1":0.5,"4":-1.0}"#);
        assert!(serde_json::from_str::<SparseVector>(r#"{"0": 1.0}"#).is_err());
    }
}
