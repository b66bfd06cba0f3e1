//! Monomial isomorphisms `A(G) → A_RW(G)` for regular and biregular graphs.

use crate::error::{Error, Result};
use crate::graph::{check_regular, BipartitionInfo, GraphHandle, Side, StructuralVerdict};
use crate::morphism::{Direction, MonomialMap};

/// Scale factors `((d1² d2)^{1/3}, (d1 d2²)^{1/3})`. Equal degrees give
/// exactly `(d, d)`.
pub fn biregular_scales(d1: usize, d2: usize) -> (f64, f64) {
    if d1 == d2 {
        return (d1 as f64, d2 as f64);
    }
    let (a, b) = (d1 as f64, d2 as f64);
    ((a * a * b).cbrt(), (a * b * b).cbrt())
}

/// `α_i = d`, `π = id` on every vertex of the window (all of a finite graph).
pub fn build_regular_iso(g: &GraphHandle, radius: Option<usize>) -> Result<MonomialMap> {
    let d = match check_regular(g, radius)? {
        StructuralVerdict::Exact(d) | StructuralVerdict::ConsistentUpToRadius(_, d) => d,
        StructuralVerdict::Refuted(c) => return Err(Error::NotRegular(format!("{c:?}"))),
    };
    if d == 0 {
        return Err(Error::NotRegular("0-regular graph has no random walk".into()));
    }
    let window = g.window(radius)?;
    MonomialMap::diagonal(Some(Direction::AdjToRw), window.vertices, |_| d as f64)
}

/// `α_i = (d1² d2)^{1/3}` on side one, `(d1 d2²)^{1/3}` on side two,
/// `π = id`, on the vertices listed in `info`.
pub fn build_biregular_iso(g: &GraphHandle, info: &BipartitionInfo) -> Result<MonomialMap> {
    if info.d1 == 0 || info.d2 == 0 {
        return Err(Error::NotBiregular("a side has degree 0".into()));
    }
    for (&v, &side) in &info.side_of {
        let want = match side {
            Side::One => info.d1,
            Side::Two => info.d2,
        };
        let got = g.degree(v)?;
        if got != want {
            return Err(Error::NotBiregular(format!(
                "{v} has degree {got}, its side expects {want}"
            )));
        }
        for w in g.neighbors(v)?.iter() {
            if info.side(*w) == Some(side) {
                return Err(Error::NotBiregular(format!("edge {v}-{w} inside one side")));
            }
        }
    }
    let (s1, s2) = biregular_scales(info.d1, info.d2);
    MonomialMap::diagonal(Some(Direction::AdjToRw), info.side_of.keys().copied(), |v| {
        match info.side_of[&v] {
            Side::One => s1,
            Side::Two => s2,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_biregular, generate, GraphSpec, VertexId};

    fn v(i: u64) -> VertexId {
        VertexId::new(i).unwrap()
    }

    fn gen(s: &str) -> (GraphHandle, Option<usize>) {
        let spec: GraphSpec = s.parse().unwrap();
        (generate(&spec.generator).unwrap(), spec.radius)
    }

    #[test]
    fn regular_witnesses() {
        let (c5, _) = gen("cycle:5");
        let m = build_regular_iso(&c5, None).unwrap();
        assert_eq!(m.len(), 5);
        assert!(m.entries().all(|(i, a, p)| a == 2.0 && p == i));
        let (k2, _) = gen("path:2");
        assert!(build_regular_iso(&k2, None).unwrap().entries().all(|(_, a, _)| a == 1.0));
        let (p3, _) = gen("path:3");
        assert!(matches!(build_regular_iso(&p3, None), Err(Error::NotRegular(_))));
    }

    #[test]
    fn biregular_witnesses() {
        let (p3, _) = gen("path:3");
        let info = check_biregular(&p3, None).unwrap().payload().cloned().unwrap();
        let m = build_biregular_iso(&p3, &info).unwrap();
        // vertex 1 is on side one with degree 1
        assert!((m.alpha(v(2)).unwrap() - 4f64.cbrt()).abs() < 1e-15);
        assert!((m.alpha(v(1)).unwrap() - 2f64.cbrt()).abs() < 1e-15);
        assert!((m.alpha(v(3)).unwrap() - 2f64.cbrt()).abs() < 1e-15);

        let (k23, _) = gen("kbipartite:2,3");
        let info = check_biregular(&k23, None).unwrap().payload().cloned().unwrap();
        let m = build_biregular_iso(&k23, &info).unwrap();
        assert!((m.alpha(v(1)).unwrap() - 2.620741394208897).abs() < 1e-12);
        assert!((m.alpha(v(3)).unwrap() - 2.289428485106663).abs() < 1e-12);

        let (t, r) = gen("sstree:2,3@r=3");
        let info = check_biregular(&t, r).unwrap().payload().cloned().unwrap();
        let m = build_biregular_iso(&t, &info).unwrap();
        assert_eq!(m.alpha(v(1)), Some(12f64.cbrt()));
        assert_eq!(m.alpha(v(2)), Some(18f64.cbrt()));
    }

    #[test]
    fn rejects_wrong_partition() {
        let (p3, _) = gen("path:3");
        let mut info = check_biregular(&p3, None).unwrap().payload().cloned().unwrap();
        std::mem::swap(&mut info.d1, &mut info.d2);
        assert!(matches!(build_biregular_iso(&p3, &info), Err(Error::NotBiregular(_))));
    }
}
