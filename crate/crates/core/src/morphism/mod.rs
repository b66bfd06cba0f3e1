//! Linear maps between evolution algebras on the same graph: monomial
//! witnesses `f(e_i) = α_i e_{π(i)}`, general sparse maps, homomorphism
//! verification, the isomorphism decision procedure, twin-quotient lifts
//! and unitary witnesses.

mod check;
mod decide;
mod unitary;
mod witness;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraKind;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::space::SparseVector;

pub use check::{
    check_homomorphism, classify_monomial, CheckOptions, Classification, HomomorphismReport,
    MonomialViolation, ALL_PAIRS_LIMIT,
};
pub use decide::{
    decide_isomorphism, decide_within_radius, twin_quotient_homomorphism, Decision, DecideOptions,
    Evidence, NonIsomorphismReason, Structure, TwinLift, Verdict,
};
pub use unitary::{induce_unitary, UnitarityReport, UnitaryWitness};
pub use witness::{biregular_scales, build_biregular_iso, build_regular_iso};

/// Which algebra a map goes from and to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `A(G) → A_RW(G)`
    AdjToRw,
    /// `A_RW(G) → A(G)`
    RwToAdj,
}

impl Direction {
    pub fn source(self) -> AlgebraKind {
        match self {
            Direction::AdjToRw => AlgebraKind::Adjacency,
            Direction::RwToAdj => AlgebraKind::RandomWalk,
        }
    }

    pub fn target(self) -> AlgebraKind {
        match self {
            Direction::AdjToRw => AlgebraKind::RandomWalk,
            Direction::RwToAdj => AlgebraKind::Adjacency,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Direction::AdjToRw => Direction::RwToAdj,
            Direction::RwToAdj => Direction::AdjToRw,
        }
    }
}

/// A linear map given by its values on basis vectors.
pub trait LinearMap {
    /// `f(e_i)`; errors outside the map's domain.
    fn image(&self, i: VertexId) -> Result<SparseVector>;

    /// `f(v) = Σ_i v_i f(e_i)`
    fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (i, x) in v.iter() {
            for (k, c) in self.image(i)?.iter() {
                out.accumulate(k, x * c);
            }
        }
        out.prune();
        Ok(out)
    }
}

/// `f(e_i) = α_i e_{π(i)}` with `α_i ≠ 0` and `π` injective.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMap {
    entries: BTreeMap<VertexId, (f64, VertexId)>,
    direction: Option<Direction>,
}

impl MonomialMap {
    pub fn new<I>(direction: Option<Direction>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, f64, VertexId)>,
    {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (i, alpha, pi) in entries {
            if alpha == 0.0 || !alpha.is_finite() {
                return Err(Error::InvalidData(format!("alpha_{i} must be finite and nonzero")));
            }
            if !image.insert(pi) {
                return Err(Error::InvalidData(format!("pi is not injective: {pi} hit twice")));
            }
            if map.insert(i, (alpha, pi)).is_some() {
                return Err(Error::InvalidData(format!("vertex {i} listed twice")));
            }
        }
        Ok(MonomialMap {
            entries: map,
            direction,
        })
    }

    /// `π = id`, `α_i = scale(i)` on the given domain.
    pub fn diagonal<I, F>(direction: Option<Direction>, domain: I, scale: F) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        F: Fn(VertexId) -> f64,
    {
        Self::new(direction, domain.into_iter().map(|i| (i, scale(i), i)))
    }

    pub fn direction(&self) -> Option<Direction> {
        self.direction
    }

    pub fn alpha(&self, i: VertexId) -> Option<f64> {
        self.entries.get(&i).map(|&(a, _)| a)
    }

    pub fn pi(&self, i: VertexId) -> Option<VertexId> {
        self.entries.get(&i).map(|&(_, p)| p)
    }

    /// `(i, α_i, π(i))` in increasing `i`.
    pub fn entries(&self) -> impl Iterator<Item = (VertexId, f64, VertexId)> + '_ {
        self.entries.iter().map(|(&i, &(a, p))| (i, a, p))
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `π` maps the domain onto itself.
    pub fn is_bijective_on_domain(&self) -> bool {
        let image: BTreeSet<VertexId> = self.entries.values().map(|&(_, p)| p).collect();
        image.len() == self.entries.len() && image.iter().all(|p| self.entries.contains_key(p))
    }

    pub fn max_abs_alpha(&self) -> f64 {
        self.entries.values().map(|&(a, _)| a.abs()).fold(0.0, f64::max)
    }

    /// `f⁻¹(e_{π(i)}) = α_i⁻¹ e_i`, with the direction reversed.
    pub fn inverse(&self) -> MonomialMap {
        let entries = self
            .entries
            .iter()
            .map(|(&i, &(a, p))| (p, (1.0 / a, i)))
            .collect();
        MonomialMap {
            entries,
            direction: self.direction.map(Direction::reversed),
        }
    }

    pub fn to_sparse(&self) -> SparseLinearMap {
        SparseLinearMap {
            columns: self
                .entries
                .iter()
                .map(|(&i, &(a, p))| (i, SparseVector::from_entries([(p, a)])))
                .collect(),
            direction: self.direction,
        }
    }
}

impl LinearMap for MonomialMap {
    fn image(&self, i: VertexId) -> Result<SparseVector> {
        let &(a, p) = self.entries.get(&i).ok_or(Error::OutsideDomain(i))?;
        Ok(SparseVector::from_entries([(p, a)]))
    }
}

/// `f(e_i) = Σ_k t_ki e_k` with finitely many nonzero columns given
/// explicitly; the domain is the set of listed columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseLinearMap {
    columns: BTreeMap<VertexId, SparseVector>,
    direction: Option<Direction>,
}

impl SparseLinearMap {
    pub fn new(direction: Option<Direction>, columns: BTreeMap<VertexId, SparseVector>) -> Self {
        SparseLinearMap { columns, direction }
    }

    pub fn direction(&self) -> Option<Direction> {
        self.direction
    }

    pub fn columns(&self) -> impl Iterator<Item = (VertexId, &SparseVector)> + '_ {
        self.columns.iter().map(|(&i, c)| (i, c))
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.columns.keys().copied()
    }

    pub fn column(&self, i: VertexId) -> Option<&SparseVector> {
        self.columns.get(&i)
    }

    pub fn set_column(&mut self, i: VertexId, image: SparseVector) {
        self.columns.insert(i, image);
    }

    /// First pair of distinct basis vectors with the same image.
    pub fn identical_columns(&self) -> Option<(VertexId, VertexId)> {
        let cols: Vec<(VertexId, &SparseVector)> = self.columns().collect();
        for (a, &(i, ci)) in cols.iter().enumerate() {
            for &(j, cj) in &cols[a + 1..] {
                if ci == cj {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl LinearMap for SparseLinearMap {
    fn image(&self, i: VertexId) -> Result<SparseVector> {
        self.columns.get(&i).cloned().ok_or(Error::OutsideDomain(i))
    }
}

/// Either representation, as read from a morphism file.
#[derive(Clone, Debug, PartialEq)]
pub enum Morphism {
    Monomial(MonomialMap),
    Sparse(SparseLinearMap),
}

impl Morphism {
    pub fn direction(&self) -> Option<Direction> {
        match self {
            Morphism::Monomial(m) => m.direction(),
            Morphism::Sparse(m) => m.direction(),
        }
    }
}

impl LinearMap for Morphism {
    fn image(&self, i: VertexId) -> Result<SparseVector> {
        match self {
            Morphism::Monomial(m) => m.image(i),
            Morphism::Sparse(m) => m.image(i),
        }
    }
}
