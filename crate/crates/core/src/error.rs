use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {0} is not a valid vertex of this graph")]
    InvalidVertex(u64),

    #[error("oracle symmetry violation: {to} is a neighbor of {from} but {from} is not a neighbor of {to}")]
    AsymmetricOracle { from: VertexId, to: VertexId },

    #[error("declared degree bound {bound} exceeded at vertex {vertex} (degree {degree})")]
    DegreeBoundExceeded {
        vertex: VertexId,
        degree: usize,
        bound: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed generator spec: {0}")]
    Generator(String),

    #[error("a truncation radius is required for lazy graphs")]
    RadiusRequired,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("vertex {0} has degree zero")]
    ZeroDegree(VertexId),

    #[error("no weight defined for vertex {0}")]
    MissingWeight(VertexId),

    #[error("weight for vertex {vertex} must be positive, got {value}")]
    NonPositiveWeight { vertex: VertexId, value: f64 },

    #[error("degree bound {bound} is below the degree {degree} of vertex {vertex}")]
    BoundBelowDegree {
        vertex: VertexId,
        degree: usize,
        bound: usize,
    },

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    #[error("graph is not biregular: {0}")]
    NotBiregular(String),

    #[error("vertex {0} is outside the map's domain")]
    OutsideDomain(VertexId),

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("partition is inconsistent with the graph: {0}")]
    InconsistentPartition(String),

    #[error("constructed witness failed verification (max residual {residual:e})")]
    WitnessRejected { residual: f64 },

    #[error("invalid data: {0}")]
    InvalidData(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidVertex(_) => "invalid_vertex",
            Error::AsymmetricOracle { .. } => "asymmetric_oracle",
            Error::DegreeBoundExceeded { .. } => "degree_bound_exceeded",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Parse { .. } => "parse",
            Error::Generator(_) => "generator",
            Error::RadiusRequired => "radius_required",
            Error::Disconnected => "disconnected",
            Error::SizeCapExceeded { .. } => "size_cap_exceeded",
            Error::ZeroDegree(_) => "zero_degree",
            Error::MissingWeight(_) => "missing_weight",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::BoundBelowDegree { .. } => "bound_below_degree",
            Error::NotRegular(_) => "not_regular",
            Error::NotBiregular(_) => "not_biregular",
            Error::OutsideDomain(_) => "outside_domain",
            Error::NotInvertible(_) => "not_invertible",
            Error::InconsistentPartition(_) => "inconsistent_partition",
            Error::WitnessRejected { .. } => "witness_rejected",
            Error::InvalidData(_) => "invalid_data",
        }
    }
}
