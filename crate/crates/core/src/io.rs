//! JSON formats: vector files, weight files, morphism files and the
//! isomorphism verdict report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Weights;
use crate::error::{Error, Result};
use crate::graph::{Scope, VertexId};
use crate::morphism::{
    Decision, Direction, HomomorphismReport, MonomialMap, Morphism, SparseLinearMap, Structure,
    Verdict,
};
use crate::space::SparseVector;

fn invalid(e: serde_json::Error) -> Error {
    Error::InvalidData(e.to_string())
}

/// `{"1": 0.5, "4": -1.0}`
pub fn parse_vector(text: &str) -> Result<SparseVector> {
    serde_json::from_str(text).map_err(invalid)
}

/// A JSON map from vertex index to a positive weight.
pub fn parse_weights(text: &str) -> Result<Weights> {
    let map: BTreeMap<VertexId, f64> = serde_json::from_str(text).map_err(invalid)?;
    for (&vertex, &value) in &map {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveWeight { vertex, value });
        }
    }
    Ok(Weights::Map(map))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialEntry {
    pub i: VertexId,
    pub alpha: f64,
    pub pi: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MorphismFile {
    Monomial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        direction: Option<Direction>,
        entries: Vec<MonomialEntry>,
    },
    Sparse {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        direction: Option<Direction>,
        columns: BTreeMap<VertexId, SparseVector>,
    },
}

impl From<&MonomialMap> for MorphismFile {
    fn from(m: &MonomialMap) -> Self {
        MorphismFile::Monomial {
            direction: m.direction(),
            entries: m
                .entries()
                .map(|(i, alpha, pi)| MonomialEntry { i, alpha, pi })
                .collect(),
        }
    }
}

impl From<&SparseLinearMap> for MorphismFile {
    fn from(m: &SparseLinearMap) -> Self {
        MorphismFile::Sparse {
            direction: m.direction(),
            columns: m.columns().map(|(i, c)| (i, c.clone())).collect(),
        }
    }
}

impl From<&Morphism> for MorphismFile {
    fn from(m: &Morphism) -> Self {
        match m {
            Morphism::Monomial(m) => m.into(),
            Morphism::Sparse(m) => m.into(),
        }
    }
}

impl TryFrom<MorphismFile> for Morphism {
    type Error = Error;

    fn try_from(f: MorphismFile) -> Result<Self> {
        match f {
            MorphismFile::Monomial { direction, entries } => Ok(Morphism::Monomial(MonomialMap::new(
                direction,
                entries.into_iter().map(|e| (e.i, e.alpha, e.pi)),
            )?)),
            MorphismFile::Sparse { direction, columns } => {
                Ok(Morphism::Sparse(SparseLinearMap::new(direction, columns)))
            }
        }
    }
}

pub fn parse_morphism(text: &str) -> Result<Morphism> {
    serde_json::from_str::<MorphismFile>(text)
        .map_err(invalid)?
        .try_into()
}

pub fn morphism_to_json(m: &Morphism) -> String {
    serde_json::to_string_pretty(&MorphismFile::from(m)).expect("morphism serializes")
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Residuals {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forward: Option<HomomorphismReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<HomomorphismReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin: Option<HomomorphismReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwinEvidence {
    pub map: MorphismFile,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub quotient_witness: MorphismFile,
    pub non_injective: Option<(VertexId, VertexId)>,
    pub covers_quotient_image: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub status: &'static str,
    pub scope: Scope,
    pub structure: Structure,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MorphismFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<MorphismFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<crate::morphism::NonIsomorphismReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_vector: Option<SparseVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin_classes: Option<Vec<Vec<VertexId>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin_homomorphism: Option<TwinEvidence>,
    pub residuals: Residuals,
}

impl From<&Decision> for VerdictReport {
    fn from(d: &Decision) -> Self {
        let mut report = VerdictReport {
            status: d.verdict.status(),
            scope: d.scope,
            structure: d.structure,
            witness: None,
            inverse: None,
            reason: None,
            rank: d.rank,
            singular: None,
            kernel_vector: None,
            twin_classes: d.twin_classes.clone(),
            twin_homomorphism: None,
            residuals: Residuals {
                forward: d.forward_check.clone(),
                inverse: d.inverse_check.clone(),
                twin: None,
            },
        };
        match &d.verdict {
            Verdict::Isomorphic { witness, inverse } => {
                report.witness = Some(witness.into());
                report.inverse = Some(inverse.into());
            }
            Verdict::NotIsomorphic { reason } => report.reason = Some(*reason),
            Verdict::Undetermined(ev) => {
                report.singular = ev.singular;
                report.kernel_vector = ev.kernel_vector.clone();
                report.residuals.twin = ev.twin_check.clone();
                report.twin_homomorphism = ev.twin_homomorphism.as_ref().map(|lift| TwinEvidence {
                    map: (&lift.map).into(),
                    quotient_vertices: lift.quotient.vertex_count(),
                    quotient_edges: lift.quotient.edge_count(),
                    quotient_witness: (&lift.quotient_witness).into(),
                    non_injective: lift.identical_columns(),
                    covers_quotient_image: lift.covers_quotient_image(),
                });
            }
        }
        report
    }
}
