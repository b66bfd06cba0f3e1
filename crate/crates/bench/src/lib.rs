//! Graph fixtures shared by the benchmarks.

use evoalg::graph::{generate, GraphSpec};
use evoalg::GraphHandle;

pub fn fixture(spec: &str) -> (GraphHandle, Option<usize>) {
    let spec: GraphSpec = spec.parse().expect("fixture spec");
    (generate(&spec.generator).expect("fixture graph"), spec.radius)
}
