//! Hilbert evolution algebras built from graphs.
//!
//! The crate covers three structures on the same graph `G` (adjacency,
//! simple random walk, degree weighted), their products and operators on
//! finitely supported vectors, boundedness certificates, and the question of
//! when the adjacency algebra `A(G)` and the random-walk algebra `A_RW(G)`
//! are isomorphic: explicit monomial witnesses for regular and biregular
//! graphs, an exact-rank refutation for non-singular graphs, and twin
//! quotient evidence otherwise.
//!
//! ```
//! use evoalg::graph::{generate, GraphSpec};
//! use evoalg::morphism::{decide_isomorphism, DecideOptions, Verdict};
//!
//! let c5 = generate(&"cycle:5".parse::<GraphSpec>().unwrap().generator).unwrap();
//! let decision = decide_isomorphism(c5.as_finite().unwrap(), &DecideOptions::default()).unwrap();
//! assert!(matches!(decision.verdict, Verdict::Isomorphic { .. }));
//! ```

pub mod algebra;
pub mod error;
pub mod graph;
pub mod io;
pub mod morphism;
pub mod sampling;
pub mod space;

pub use algebra::{AlgebraKind, EvolutionAlgebra};
pub use error::{Error, Result};
pub use graph::{FiniteGraph, GraphHandle, LazyGraph, Scope, VertexId};
pub use morphism::{MonomialMap, SparseLinearMap, Verdict};
pub use space::{InnerProduct, SparseVector};

/// Default relative tolerance for floating-point comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Default absolute tolerance for floating-point comparisons.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Default residual tolerance when verifying constructed witnesses.
pub const WITNESS_TOL: f64 = 1e-10;
