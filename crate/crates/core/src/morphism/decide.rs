//! Deciding `A(G) ≅ A_RW(G)`: monomial witnesses for regular and biregular
//! graphs, an exact-rank refutation for non-singular graphs, and evidence
//! (kernel vector, twin-quotient map) when neither applies.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::EvolutionAlgebra;
use crate::error::{Error, Result};
use crate::graph::{
    analyze_rank, check_biregular, check_regular, is_connected, quotient_graph, twin_partition,
    FiniteGraph, GraphHandle, LazyGraph, Scope, StructuralVerdict, TwinPartition, VertexId,
    DEFAULT_RANK_CAP,
};
use crate::morphism::{
    build_biregular_iso, build_regular_iso, check_homomorphism, CheckOptions, HomomorphismReport,
    LinearMap, MonomialMap, SparseLinearMap,
};
use crate::space::SparseVector;
use crate::WITNESS_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonIsomorphismReason {
    NonSingularNotBiregular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    Regular { degree: usize },
    Biregular { d1: usize, d2: usize },
    Neither,
}

/// A map `A_RW(G) → A(G)` constant on twin classes, lifted from an
/// isomorphism of the twin quotient.
#[derive(Clone, Debug)]
pub struct TwinLift {
    pub map: SparseLinearMap,
    pub partition: TwinPartition,
    pub quotient: FiniteGraph,
    /// `A_RW(G/Π) → A(G/Π)` on quotient vertices.
    pub quotient_witness: MonomialMap,
}

impl TwinLift {
    /// Two basis vectors with the same image.
    pub fn identical_columns(&self) -> Option<(VertexId, VertexId)> {
        self.map.identical_columns()
    }

    /// Every image vector of the quotient witness, read back in `G`
    /// through class representatives, is a column of the lifted map.
    pub fn covers_quotient_image(&self) -> bool {
        self.quotient_witness.entries().all(|(_, a, p)| {
            let target = SparseVector::from_entries([(self.partition.representative(p.zero_based()), a)]);
            self.map.columns().any(|(_, col)| *col == target)
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Evidence {
    /// `None` when singularity was not examined (lazy graphs).
    pub singular: Option<bool>,
    /// Primitive integer vector with `A x = 0`.
    pub kernel_vector: Option<SparseVector>,
    pub twin_homomorphism: Option<TwinLift>,
    pub twin_check: Option<HomomorphismReport>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// `witness: A(G) → A_RW(G)` and its inverse.
    Isomorphic {
        witness: MonomialMap,
        inverse: MonomialMap,
    },
    NotIsomorphic {
        reason: NonIsomorphismReason,
    },
    Undetermined(Evidence),
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Isomorphic { .. } => "isomorphic",
            Verdict::NotIsomorphic { .. } => "not_isomorphic",
            Verdict::Undetermined(_) => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub scope: Scope,
    pub structure: Structure,
    pub rank: Option<usize>,
    pub twin_classes: Option<Vec<Vec<VertexId>>>,
    /// Witness check `A(G) → A_RW(G)`.
    pub forward_check: Option<HomomorphismReport>,
    /// Inverse check `A_RW(G) → A(G)`.
    pub inverse_check: Option<HomomorphismReport>,
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub tol: f64,
    pub rank_cap: usize,
    pub seed: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            tol: WITNESS_TOL,
            rank_cap: DEFAULT_RANK_CAP,
            seed: 0,
        }
    }
}

fn find_witness(g: &GraphHandle, radius: Option<usize>) -> Result<Option<(MonomialMap, Structure)>> {
    // without a radius a verdict that holds is exact
    if let Some(&d) = check_regular(g, radius)?.payload() {
        if d > 0 {
            return Ok(Some((build_regular_iso(g, radius)?, Structure::Regular { degree: d })));
        }
    }
    let bi = check_biregular(g, radius)?;
    if let StructuralVerdict::Exact(info) | StructuralVerdict::ConsistentUpToRadius(_, info) = &bi {
        if info.d1 > 0 && info.d2 > 0 {
            let s = Structure::Biregular {
                d1: info.d1,
                d2: info.d2,
            };
            return Ok(Some((build_biregular_iso(g, info)?, s)));
        }
    }
    Ok(None)
}

fn verify_witness(
    g: &GraphHandle,
    witness: &MonomialMap,
    vertices: &[VertexId],
    opts: &DecideOptions,
) -> Result<(MonomialMap, HomomorphismReport, HomomorphismReport)> {
    let adj = EvolutionAlgebra::adjacency(g.clone());
    let rw = EvolutionAlgebra::random_walk(g.clone());
    let check = CheckOptions {
        tol: opts.tol,
        seed: opts.seed,
    };
    let inverse = witness.inverse();
    let fwd = check_homomorphism(witness, &adj, &rw, vertices, &check)?;
    let inv = check_homomorphism(&inverse, &rw, &adj, vertices, &check)?;
    if !fwd.passed || !inv.passed {
        return Err(Error::WitnessRejected {
            residual: fwd.max_residual.max(inv.max_residual),
        });
    }
    Ok((inverse, fwd, inv))
}

/// Decides whether `A(G) ≅ A_RW(G)` for a connected finite graph on at
/// least two vertices.
pub fn decide_isomorphism(g: &FiniteGraph, opts: &DecideOptions) -> Result<Decision> {
    if g.vertex_count() < 2 {
        return Err(Error::InvalidGraph("need at least two vertices".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let handle = GraphHandle::from(g.clone());
    let all: Vec<VertexId> = g.vertices().collect();

    if let Some((witness, structure)) = find_witness(&handle, None)? {
        let (inverse, fwd, inv) = verify_witness(&handle, &witness, &all, opts)?;
        return Ok(Decision {
            verdict: Verdict::Isomorphic { witness, inverse },
            scope: Scope::Exact,
            structure,
            rank: None,
            twin_classes: None,
            forward_check: Some(fwd),
            inverse_check: Some(inv),
        });
    }

    let rank = analyze_rank(g, opts.rank_cap)?;
    if rank.non_singular() {
        return Ok(Decision {
            verdict: Verdict::NotIsomorphic {
                reason: NonIsomorphismReason::NonSingularNotBiregular,
            },
            scope: Scope::Exact,
            structure: Structure::Neither,
            rank: Some(rank.rank),
            twin_classes: None,
            forward_check: None,
            inverse_check: None,
        });
    }

    let kernel_vector = rank.kernel_vector.as_ref().map(|x| {
        x.iter()
            .enumerate()
            .map(|(p, c)| (VertexId::from_zero_based(p), c.to_f64().unwrap_or(f64::NAN)))
            .collect::<SparseVector>()
    });
    let partition = twin_partition(g);
    let twin_homomorphism = twin_quotient_homomorphism(g)?;
    let twin_check = match &twin_homomorphism {
        Some(lift) => Some(check_homomorphism(
            &lift.map,
            &EvolutionAlgebra::random_walk(handle.clone()),
            &EvolutionAlgebra::adjacency(handle.clone()),
            &all,
            &CheckOptions {
                tol: opts.tol,
                seed: opts.seed,
            },
        )?),
        None => None,
    };
    Ok(Decision {
        verdict: Verdict::Undetermined(Evidence {
            singular: Some(true),
            kernel_vector,
            twin_homomorphism,
            twin_check,
        }),
        scope: Scope::Exact,
        structure: Structure::Neither,
        rank: Some(rank.rank),
        twin_classes: Some(partition.classes),
        forward_check: None,
        inverse_check: None,
    })
}

/// Windowed variant for lazy graphs: a witness on the ball of the given
/// radius, verified on its interior. Non-singularity is never certified, so
/// the verdict is `Isomorphic` or `Undetermined`.
pub fn decide_within_radius(g: &LazyGraph, radius: usize, opts: &DecideOptions) -> Result<Decision> {
    let handle = GraphHandle::from(g.clone());
    let window = handle.window(Some(radius))?;
    if let Some((witness, structure)) = find_witness(&handle, Some(radius))? {
        let (inverse, fwd, inv) = verify_witness(&handle, &witness, &window.interior, opts)?;
        return Ok(Decision {
            verdict: Verdict::Isomorphic { witness, inverse },
            scope: window.scope,
            structure,
            rank: None,
            twin_classes: None,
            forward_check: Some(fwd),
            inverse_check: Some(inv),
        });
    }
    Ok(Decision {
        verdict: Verdict::Undetermined(Evidence::default()),
        scope: window.scope,
        structure: Structure::Neither,
        rank: None,
        twin_classes: None,
        forward_check: None,
        inverse_check: None,
    })
}

/// Lifts an isomorphism `A_RW(G/Π) → A(G/Π)` of the twin quotient to `G`:
/// vertex `i` goes to the image of its class, read through class
/// representatives. `None` when `G` is twin-free or the quotient is neither
/// regular nor biregular.
pub fn twin_quotient_homomorphism(g: &FiniteGraph) -> Result<Option<TwinLift>> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let partition = twin_partition(g);
    if partition.is_twin_free() {
        return Ok(None);
    }
    let quotient = quotient_graph(g, &partition)?;
    let qh = GraphHandle::from(quotient.graph.clone());
    let Some((forward, _)) = find_witness(&qh, None)? else {
        return Ok(None);
    };
    let quotient_witness = forward.inverse();
    let mut columns = BTreeMap::new();
    for i in g.vertices() {
        let class = quotient.vertex_of(i).expect("partition covers g");
        let image = quotient_witness.image(class)?;
        let lifted = image
            .iter()
            .map(|(q, a)| (partition.representative(q.zero_based()), a))
            .collect();
        columns.insert(i, lifted);
    }
    Ok(Some(TwinLift {
        map: SparseLinearMap::new(quotient_witness.direction(), columns),
        partition: quotient.partition,
        quotient: quotient.graph,
        quotient_witness,
    }))
}
