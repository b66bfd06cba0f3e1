use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use evoalg::algebra::{apply_adjacency, transition_probability};
use evoalg::graph::{
    check_biregular, generate, quotient_graph, twin_partition, twin_reduce, GraphSpec,
    StructuralVerdict,
};
use evoalg::morphism::{build_biregular_iso, build_regular_iso, check_homomorphism, CheckOptions};
use evoalg::{
    AlgebraKind, EvolutionAlgebra, FiniteGraph, GraphHandle, InnerProduct, SparseVector, VertexId,
};

fn v(i: u64) -> VertexId {
    VertexId::new(i).unwrap()
}

/// Connected graph: a random spanning tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = FiniteGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> =
            (1..n).map(|k| (0..k).boxed()).collect();
        let extra = proptest::collection::vec((0..n, 0..n), 0..2 * n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(u64, u64)> = parents
                .iter()
                .enumerate()
                .map(|(k, &p)| (p as u64 + 1, k as u64 + 2))
                .collect();
            edges.extend(
                extra
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a as u64 + 1, b as u64 + 1)),
            );
            FiniteGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn vector_on(n: usize) -> impl Strategy<Value = SparseVector> {
    proptest::collection::btree_map(1..=n as u64, -4.0f64..4.0, 0..=n)
        .prop_map(|m| m.into_iter().map(|(i, c)| (v(i), c)).collect())
}

fn graph_and_vectors(max_n: usize) -> impl Strategy<Value = (FiniteGraph, SparseVector, SparseVector, SparseVector)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), vector_on(n), vector_on(n), vector_on(n))
    })
}

fn kinds() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![
        Just(AlgebraKind::Adjacency),
        Just(AlgebraKind::RandomWalk),
        Just(AlgebraKind::DegreeWeighted)
    ]
}

fn close(a: &SparseVector, b: &SparseVector, scale: f64) -> bool {
    a.max_abs_diff(b) <= 1e-9 * scale.max(1.0)
}

proptest! {
    #[test]
    fn product_is_bilinear_and_commutative(
        (g, x, y, z) in graph_and_vectors(10),
        kind in kinds(),
        a in -3.0f64..3.0,
    ) {
        let alg = EvolutionAlgebra::new(g.into(), kind);
        let xy = alg.product(&x, &y).unwrap();
        prop_assert_eq!(&xy, &alg.product(&y, &x).unwrap());
        let lhs = alg.product(&x.scale(a).add(&z), &y).unwrap();
        let rhs = xy.scale(a).add(&alg.product(&z, &y).unwrap());
        prop_assert!(close(&lhs, &rhs, 100.0));
    }

    #[test]
    fn disjoint_supports_annihilate((g, x, y, _) in graph_and_vectors(10), kind in kinds()) {
        let y: SparseVector = y.iter().filter(|&(i, _)| x.get(i) == 0.0).collect();
        let alg = EvolutionAlgebra::new(g.into(), kind);
        prop_assert!(alg.product(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn evolution_equals_adjacency_bitwise((g, x, _, _) in graph_and_vectors(12)) {
        let h: GraphHandle = g.into();
        let alg = EvolutionAlgebra::adjacency(h.clone());
        prop_assert_eq!(alg.apply_evolution(&x).unwrap(), apply_adjacency(&h, &x).unwrap());
    }

    #[test]
    fn random_walk_columns_are_stochastic(g in connected_graph(12)) {
        let h: GraphHandle = g.clone().into();
        for i in g.vertices() {
            let total: BigRational = g
                .neighbors(i)
                .unwrap()
                .iter()
                .map(|&k| transition_probability(&h, i, k).unwrap())
                .sum();
            prop_assert!(total.is_one());
            let sq = EvolutionAlgebra::random_walk(h.clone()).square_basis(i).unwrap();
            let s: f64 = sq.iter().map(|(_, c)| c).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_weighted_square_norm(g in connected_graph(12)) {
        let h: GraphHandle = g.clone().into();
        let alg = EvolutionAlgebra::degree_weighted(h.clone());
        let ip = InnerProduct::DegreeWeighted(&h);
        for i in g.vertices() {
            let n2 = ip.inner(&alg.square_basis(i).unwrap(), &alg.square_basis(i).unwrap()).unwrap();
            let d = g.degree(i).unwrap() as f64;
            prop_assert!((n2 - d).abs() <= 1e-9 * d);
            prop_assert_eq!(ip.inner(&SparseVector::basis(i), &SparseVector::basis(i)).unwrap(), d);
        }
    }

    #[test]
    fn degree_weighted_left_multiplication_is_contractive((g, x, y, _) in graph_and_vectors(12)) {
        let h: GraphHandle = g.into();
        let alg = EvolutionAlgebra::degree_weighted(h.clone());
        let ip = InnerProduct::DegreeWeighted(&h);
        let lhs = ip.norm(&alg.product(&x, &y).unwrap()).unwrap();
        let rhs = x.norm() * ip.norm(&y).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn inner_products_are_symmetric_and_satisfy_cauchy_schwarz(
        (g, x, y, _) in graph_and_vectors(10),
        weights in proptest::collection::vec(0.1f64..5.0, 10),
    ) {
        let h: GraphHandle = g.into();
        let alpha: BTreeMap<VertexId, f64> =
            weights.iter().enumerate().map(|(p, &a)| (VertexId::from_zero_based(p), a)).collect();
        for ip in [InnerProduct::Standard, InnerProduct::DegreeWeighted(&h), InnerProduct::AlphaInduced(&alpha)] {
            let xy = ip.inner(&x, &y).unwrap();
            prop_assert!((xy - ip.inner(&y, &x).unwrap()).abs() <= 1e-12 * xy.abs().max(1.0));
            let (nx, ny) = (ip.norm(&x).unwrap(), ip.norm(&y).unwrap());
            prop_assert!(xy.abs() <= nx * ny * (1.0 + 1e-12) + 1e-12);
            prop_assert!(ip.norm(&x.add(&y)).unwrap() <= (nx + ny) * (1.0 + 1e-12) + 1e-12);
        }
    }

    #[test]
    fn rescaled_basis_is_orthonormal(weights in proptest::collection::vec(0.1f64..5.0, 1..10)) {
        let alpha: BTreeMap<VertexId, f64> =
            weights.iter().enumerate().map(|(p, &a)| (VertexId::from_zero_based(p), a)).collect();
        let ip = InnerProduct::AlphaInduced(&alpha);
        for (&i, &ai) in &alpha {
            for &j in alpha.keys() {
                let ti = SparseVector::from_entries([(i, 1.0 / ai)]);
                let tj = SparseVector::from_entries([(j, 1.0 / alpha[&j])]);
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ip.inner(&ti, &tj).unwrap() - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn twin_reduction_is_idempotent(g in connected_graph(12)) {
        let (once, _) = twin_reduce(&g);
        let (twice, rounds) = twin_reduce(&once);
        prop_assert_eq!(rounds, 0);
        prop_assert_eq!(once.vertex_count(), twice.vertex_count());
        let p = twin_partition(&g);
        let q = quotient_graph(&g, &p).unwrap();
        prop_assert_eq!(q.graph.vertex_count(), p.classes.len());
    }

    #[test]
    fn biregular_sides_count_edges_twice(g in connected_graph(12)) {
        let h: GraphHandle = g.clone().into();
        if let StructuralVerdict::Exact(info) = check_biregular(&h, None).unwrap() {
            let n1 = info.count(evoalg::graph::Side::One);
            let n2 = info.count(evoalg::graph::Side::Two);
            prop_assert_eq!(n1 * info.d1, g.edge_count());
            prop_assert_eq!(n2 * info.d2, g.edge_count());
            let m = build_biregular_iso(&h, &info).unwrap();
            let rep = check_homomorphism(
                &m,
                &EvolutionAlgebra::adjacency(h.clone()),
                &EvolutionAlgebra::random_walk(h.clone()),
                &g.vertices().collect::<Vec<_>>(),
                &CheckOptions::default(),
            ).unwrap();
            prop_assert!(rep.passed, "{:?}", rep);
        }
    }

    #[test]
    fn truncation_keeps_true_degrees(seq in proptest::collection::vec(2usize..5, 1..4), r in 1usize..4) {
        let spec = GraphSpec { generator: evoalg::graph::GeneratorSpec::SphericallySymmetricTree(seq), radius: Some(r) };
        let g = generate(&spec.generator).unwrap();
        let lazy = g.as_lazy().unwrap();
        let t = lazy.truncate(r).unwrap();
        for local in t.graph.vertices() {
            let orig = t.original_of(local).unwrap();
            prop_assert_eq!(t.true_degree(local).unwrap(), lazy.degree(orig).unwrap());
            prop_assert!(t.graph.degree(local).unwrap() <= lazy.degree(orig).unwrap());
        }
    }

    #[test]
    fn regular_witness_is_sound(n in 3usize..30) {
        let h = generate(&format!("cycle:{n}").parse::<GraphSpec>().unwrap().generator).unwrap();
        let m = build_regular_iso(&h, None).unwrap();
        let rep = check_homomorphism(
            &m.inverse(),
            &EvolutionAlgebra::random_walk(h.clone()),
            &EvolutionAlgebra::adjacency(h.clone()),
            &m.domain().collect::<Vec<_>>(),
            &CheckOptions::default(),
        ).unwrap();
        prop_assert!(rep.passed);
    }
}
