//! Unitary form of a monomial isomorphism: with `ẽ_i = α_i⁻¹ e_i` and the
//! inner product `⟨v, w⟩_f = Σ v_i w_i α_i²`, the map sends the orthonormal
//! basis `ẽ_i` to `e_{π(i)}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::morphism::{LinearMap, MonomialMap};
use crate::sampling::{random_sparse_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use crate::space::{InnerProduct, SparseVector};

/// Basis check tolerance.
const BASIS_TOL: f64 = 1e-12;
/// Random-vector polarization tolerance, relative to `max(1, |⟨v, w⟩_f|)`.
const POLARIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct UnitaryWitness {
    base: MonomialMap,
    alpha: BTreeMap<VertexId, f64>,
    /// `f̃(ẽ_i) = e_{π(i)}`, acting on coordinates in the `ẽ` basis.
    tilde: MonomialMap,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitarityReport {
    pub basis_pairs: usize,
    /// `max_{i,j} |⟨f̃(ẽ_i), f̃(ẽ_j)⟩ − δ_ij|`
    pub max_basis_error: f64,
    /// `max_i ‖f(ẽ_i) − f̃(ẽ_i)‖`
    pub max_consistency_error: f64,
    pub trials: usize,
    /// `max |⟨f(v), f(w)⟩ − ⟨v, w⟩_f|`, relative.
    pub max_polarization_error: f64,
    pub seed: u64,
    pub passed: bool,
}

pub fn induce_unitary(f: &MonomialMap) -> Result<UnitaryWitness> {
    if !f.is_bijective_on_domain() {
        return Err(Error::NotInvertible("pi is not a bijection of the domain".into()));
    }
    let alpha: BTreeMap<VertexId, f64> = f.entries().map(|(i, a, _)| (i, a)).collect();
    if let Some((&i, _)) = alpha.iter().find(|(_, &a)| a == 0.0) {
        return Err(Error::InvalidData(format!("alpha_{i} is zero")));
    }
    let tilde = MonomialMap::new(f.direction(), f.entries().map(|(i, _, p)| (i, 1.0, p)))?;
    Ok(UnitaryWitness {
        base: f.clone(),
        alpha,
        tilde,
    })
}

impl UnitaryWitness {
    pub fn base(&self) -> &MonomialMap {
        &self.base
    }

    pub fn alpha(&self) -> &BTreeMap<VertexId, f64> {
        &self.alpha
    }

    /// `⟨·,·⟩_f` on the source.
    pub fn inner_product(&self) -> InnerProduct<'_> {
        InnerProduct::AlphaInduced(&self.alpha)
    }

    /// `ẽ_i = α_i⁻¹ e_i` in standard coordinates.
    pub fn tilde_basis(&self, i: VertexId) -> Result<SparseVector> {
        let a = self.alpha.get(&i).ok_or(Error::OutsideDomain(i))?;
        Ok(SparseVector::from_entries([(i, 1.0 / a)]))
    }

    /// Standard coordinates to `ẽ` coordinates: `v_i ↦ α_i v_i`.
    pub fn to_tilde(&self, v: &SparseVector) -> Result<SparseVector> {
        v.iter()
            .map(|(i, x)| Ok((i, x * self.alpha.get(&i).ok_or(Error::OutsideDomain(i))?)))
            .collect()
    }

    /// `f̃` applied to a vector given in `ẽ` coordinates.
    pub fn apply_tilde(&self, v: &SparseVector) -> Result<SparseVector> {
        self.tilde.apply(v)
    }

    /// `f̃(v)` for `v` in standard coordinates.
    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        self.apply_tilde(&self.to_tilde(v)?)
    }

    pub fn verify(&self, trials: usize, seed: u64) -> Result<UnitarityReport> {
        let std_ip = InnerProduct::Standard;
        let domain: Vec<VertexId> = self.base.domain().collect();
        let images: Vec<SparseVector> = domain
            .iter()
            .map(|&i| self.tilde.image(i))
            .collect::<Result<_>>()?;
        let mut max_basis = 0.0f64;
        for (a, fa) in images.iter().enumerate() {
            for (b, fb) in images.iter().enumerate() {
                let delta = if a == b { 1.0 } else { 0.0 };
                max_basis = max_basis.max((std_ip.inner(fa, fb)? - delta).abs());
            }
        }
        let mut max_consistency = 0.0f64;
        for (&i, fi) in domain.iter().zip(&images) {
            let direct = self.base.apply(&self.tilde_basis(i)?)?;
            max_consistency = max_consistency.max(direct.sub(fi).norm());
        }

        let ip = self.inner_product();
        let mut rng = seeded_rng(seed);
        let mut max_polar = 0.0f64;
        for _ in 0..trials {
            let v = random_sparse_vector(&mut rng, &domain, MAX_RANDOM_SUPPORT);
            let w = random_sparse_vector(&mut rng, &domain, MAX_RANDOM_SUPPORT);
            let lhs = std_ip.inner(&self.apply(&v)?, &self.apply(&w)?)?;
            let rhs = ip.inner(&v, &w)?;
            max_polar = max_polar.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        }
        Ok(UnitarityReport {
            basis_pairs: images.len() * images.len(),
            max_basis_error: max_basis,
            max_consistency_error: max_consistency,
            trials,
            max_polarization_error: max_polar,
            seed,
            passed: max_basis <= BASIS_TOL
                && max_consistency <= BASIS_TOL
                && max_polar <= POLARIZATION_TOL,
        })
    }
}
