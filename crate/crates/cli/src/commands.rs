use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use evoalg::algebra::{
    apply_adjacency, apply_transition, degree_bound_norm_check, k_condition, schur_test,
    BoundednessReport, Weights,
};
use evoalg::graph::{
    analyze_rank, check_biregular, check_regular, is_connected, quotient_graph, twin_partition,
    twin_reduce, DEFAULT_RANK_CAP,
};
use evoalg::io::{morphism_to_json, VerdictReport};
use evoalg::morphism::{
    check_homomorphism, classify_monomial, decide_isomorphism, decide_within_radius,
    induce_unitary, CheckOptions, DecideOptions, Direction, Morphism, Structure, Verdict,
};
use evoalg::{
    AlgebraKind, Error, EvolutionAlgebra, FiniteGraph, GraphHandle, Scope, SparseVector, VertexId,
};

use crate::input::{InputError, Inputs, LoadedGraph};
use crate::{usage, Cli, Command, GraphArg, OperatorArg, Outcome};

type Result<T> = std::result::Result<T, InputError>;

pub fn run(cli: &Cli) -> Result<(Outcome, String)> {
    let mut inputs = Inputs::default();
    let outcome = match &cli.command {
        Command::Analyze(g) => analyze(&mut inputs, g)?,
        Command::Iso { graph, witness_out } => iso(cli, &mut inputs, graph, witness_out.as_deref())?,
        Command::VerifyHom {
            graph,
            morphism,
            from,
            to,
        } => {
            let lg = load(&mut inputs, graph)?;
            let m = inputs.morphism(morphism)?;
            let (from, to) = resolve_direction(&m, from.map(Into::into), to.map(Into::into))?;
            verify_hom(cli, &lg, &m, from, to)?
        }
        Command::Product {
            graph,
            algebra,
            v,
            w,
        } => {
            let lg = load(&mut inputs, graph)?;
            let (v, w) = (inputs.vector(v)?, inputs.vector(w)?);
            let alg = EvolutionAlgebra::new(lg.handle.clone(), (*algebra).into());
            let out = alg.product(&v, &w)?;
            let norm = alg.inner_product().norm(&out)?;
            Outcome {
                summary: vec![
                    format!("product ({}): {}", alg.kind(), vector_text(&out)),
                    format!("norm: {norm}"),
                ],
                results: json!({ "algebra": alg.kind(), "result": out, "norm": norm }),
                warnings: radius_warnings(&lg, graph),
                negative: false,
            }
        }
        Command::Apply {
            graph,
            operator,
            algebra,
            v,
        } => {
            let lg = load(&mut inputs, graph)?;
            let v = inputs.vector(v)?;
            let kind: AlgebraKind = (*algebra).into();
            let (name, out) = match operator {
                OperatorArg::A => ("A", apply_adjacency(&lg.handle, &v)?),
                OperatorArg::C => (
                    "C",
                    EvolutionAlgebra::new(lg.handle.clone(), kind).apply_evolution(&v)?,
                ),
                OperatorArg::P => ("P", apply_transition(&lg.handle, &v)?),
            };
            let mut results = json!({ "operator": name, "result": out, "norm": out.norm() });
            if let OperatorArg::C = operator {
                results["algebra"] = json!(kind);
            }
            Outcome {
                summary: vec![format!("{name}(v) = {}", vector_text(&out))],
                results,
                warnings: radius_warnings(&lg, graph),
                negative: false,
            }
        }
        Command::Twins {
            graph,
            quotient_out,
        } => twins(&mut inputs, graph, quotient_out.as_deref())?,
        Command::Bounds {
            graph,
            algebra,
            m,
            trials,
            weights,
        } => {
            let lg = load(&mut inputs, graph)?;
            let w = match weights {
                Some(p) => inputs.weights(p)?,
                None => Weights::default(),
            };
            bounds(cli, &lg, graph, (*algebra).into(), *m, *trials, &w)?
        }
        Command::Unitary { witness, trials } => {
            let Morphism::Monomial(m) = inputs.morphism(witness)? else {
                return usage("unitary needs a monomial witness");
            };
            let u = induce_unitary(&m)?;
            let rep = u.verify(*trials, cli.seed)?;
            Outcome {
                summary: vec![
                    format!("unitary: {}", pass_fail(rep.passed)),
                    format!("max basis error: {:e}", rep.max_basis_error),
                    format!(
                        "max polarization error over {} pairs: {:e}",
                        rep.trials, rep.max_polarization_error
                    ),
                ],
                results: json!({ "report": rep, "alpha": u.alpha() }),
                warnings: Vec::new(),
                negative: !rep.passed,
            }
        }
    };
    Ok((outcome, inputs.digest()))
}

fn load(inputs: &mut Inputs, g: &GraphArg) -> Result<LoadedGraph> {
    inputs.graph(&g.graph, g.radius)
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "passed"
    } else {
        "FAILED"
    }
}

fn vector_text(v: &SparseVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v.iter().map(|(i, c)| format!("{c}*e{i}")).collect();
    terms.join(" + ")
}

fn radius_warnings(lg: &LoadedGraph, arg: &GraphArg) -> Vec<String> {
    let mut w = Vec::new();
    if arg.radius.is_some() && lg.handle.is_finite() {
        w.push("--radius is ignored for finite graphs".into());
    }
    w
}

fn scope_warning(scope: Scope) -> Option<String> {
    match scope {
        Scope::Exact => None,
        Scope::WithinRadius(r) => Some(format!("verdict is WithinRadius({r}), not global")),
    }
}

fn require_radius(lg: &LoadedGraph) -> Result<usize> {
    lg.radius.ok_or(InputError::Core(Error::RadiusRequired))
}

fn analyze(inputs: &mut Inputs, arg: &GraphArg) -> Result<Outcome> {
    let lg = load(inputs, arg)?;
    let mut warnings = radius_warnings(&lg, arg);
    let mut summary = Vec::new();
    let results = match &lg.handle {
        GraphHandle::Finite(g) => {
            let degrees: BTreeMap<VertexId, usize> =
                g.vertices().map(|v| (v, g.degree(v).expect("own vertex"))).collect();
            let connected = is_connected(g);
            let regular = check_regular(&lg.handle, None)?;
            let biregular_verdict = match check_biregular(&lg.handle, None) {
                Ok(b) => Some(b),
                Err(Error::Disconnected) => {
                    warnings.push("biregularity is undefined for a disconnected graph".into());
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let biregular = json!(biregular_verdict);
            let twins = twin_partition(g);
            summary.push(format!("vertices: {}, edges: {}", g.vertex_count(), g.edge_count()));
            summary.push(format!("connected: {connected}"));
            summary.push(format!(
                "regular: {}",
                verdict_text(regular.payload().map(|d| format!("degree {d}")), true)
            ));
            summary.push(format!(
                "biregular: {}",
                match &biregular_verdict {
                    Some(b) => verdict_text(b.payload().map(|i| format!("({}, {})", i.d1, i.d2)), true),
                    None => "undefined".into(),
                }
            ));
            let rank = match analyze_rank(g, DEFAULT_RANK_CAP) {
                Ok(r) => {
                    summary.push(format!(
                        "rank: {} of {} ({})",
                        r.rank,
                        r.n,
                        if r.non_singular() { "non-singular" } else { "singular" }
                    ));
                    let kernel = r
                        .kernel_vector
                        .as_ref()
                        .map(|x| x.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                    json!({
                        "rank": r.rank,
                        "n": r.n,
                        "non_singular": r.non_singular(),
                        "kernel_vector": kernel,
                    })
                }
                Err(e @ Error::SizeCapExceeded { .. }) => {
                    warnings.push(format!("rank skipped: {e}"));
                    Value::Null
                }
                Err(e) => return Err(e.into()),
            };
            summary.push(format!("twin classes: {}", classes_text(&twins.classes)));
            json!({
                "scope": Scope::Exact,
                "vertex_count": g.vertex_count(),
                "edge_count": g.edge_count(),
                "degrees": degrees,
                "connected": connected,
                "regular": regular,
                "biregular": biregular,
                "twin_classes": twins.classes,
                "rank": rank,
            })
        }
        GraphHandle::Lazy(_) => {
            let r = require_radius(&lg)?;
            let t = lg.truncation.as_ref().expect("lazy graph with radius is truncated");
            let regular = check_regular(&lg.handle, Some(r))?;
            let biregular = check_biregular(&lg.handle, Some(r))?;
            let table: Vec<Value> = t
                .graph
                .vertices()
                .map(|local| {
                    json!({
                        "vertex": t.original_of(local),
                        "true_degree": t.true_degree(local),
                        "window_degree": t.graph.degree(local).expect("own vertex"),
                    })
                })
                .collect();
            let scope = Scope::WithinRadius(r);
            warnings.extend(scope_warning(scope));
            summary.push(format!(
                "ball of radius {r}: {} vertices, {} edges",
                t.graph.vertex_count(),
                t.graph.edge_count()
            ));
            summary.push(format!("regular: {}", verdict_text(regular.payload().map(|d| format!("degree {d}")), false)));
            summary.push(format!(
                "biregular: {}",
                verdict_text(biregular.payload().map(|i| format!("({}, {})", i.d1, i.d2)), false)
            ));
            json!({
                "scope": scope,
                "vertex_count": t.graph.vertex_count(),
                "edge_count": t.graph.edge_count(),
                "degrees": table,
                "regular": regular,
                "biregular": biregular,
            })
        }
    };
    Ok(Outcome {
        results,
        summary,
        warnings,
        negative: false,
    })
}

fn verdict_text(payload: Option<String>, exact: bool) -> String {
    match payload {
        None => "no".into(),
        Some(p) if exact => format!("yes, {p}"),
        Some(p) => format!("consistent within radius, {p}"),
    }
}

fn classes_text(classes: &[Vec<VertexId>]) -> String {
    let parts: Vec<String> = classes
        .iter()
        .map(|c| {
            let members: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    parts.join(" ")
}

fn iso(cli: &Cli, inputs: &mut Inputs, arg: &GraphArg, witness_out: Option<&Path>) -> Result<Outcome> {
    let lg = load(inputs, arg)?;
    let mut warnings = radius_warnings(&lg, arg);
    let opts = DecideOptions {
        tol: cli.tol,
        seed: cli.seed,
        ..DecideOptions::default()
    };
    let decision = match &lg.handle {
        GraphHandle::Finite(g) => decide_isomorphism(g, &opts)?,
        GraphHandle::Lazy(l) => decide_within_radius(l, require_radius(&lg)?, &opts)?,
    };
    warnings.extend(scope_warning(decision.scope));
    let mut summary = vec![format!("status: {}", decision.verdict.status())];
    match &decision.verdict {
        Verdict::Isomorphic { witness, .. } => {
            let mut alphas: Vec<f64> = witness.entries().map(|(_, a, _)| a).collect();
            alphas.sort_by(f64::total_cmp);
            alphas.dedup();
            summary.push(format!("structure: {}", structure_text(decision.structure)));
            summary.push(format!("witness adj_to_rw, pi = id, alpha values {alphas:?}"));
            if let Some(f) = &decision.forward_check {
                summary.push(format!("witness residual: {:e}", f.max_residual));
            }
            if let Some(path) = witness_out {
                write_file(path, &morphism_to_json(&Morphism::Monomial(witness.clone())))?;
                summary.push(format!("witness written to {}", path.display()));
            }
        }
        Verdict::NotIsomorphic { .. } => {
            summary.push("reason: non-singular and neither regular nor biregular".into());
            if let Some(r) = decision.rank {
                summary.push(format!("rank: {r}"));
            }
        }
        Verdict::Undetermined(ev) => {
            if let Some(s) = ev.singular {
                summary.push(format!("singular: {s}"));
            }
            if let Some(x) = &ev.kernel_vector {
                summary.push(format!("kernel vector: {}", vector_text(x)));
            }
            match (&ev.twin_homomorphism, &ev.twin_check) {
                (Some(_), Some(rep)) => {
                    summary.push(format!("twin-quotient map: present, residual {:e}", rep.max_residual));
                    if !rep.passed {
                        warnings.push(format!(
                            "twin-quotient map fails the homomorphism check (max residual {:e})",
                            rep.max_residual
                        ));
                    }
                }
                _ => summary.push("twin-quotient map: absent".into()),
            }
            if witness_out.is_some() {
                warnings.push("no witness to write".into());
            }
        }
    }
    let negative = matches!(decision.verdict, Verdict::NotIsomorphic { .. });
    Ok(Outcome {
        results: json!(VerdictReport::from(&decision)),
        summary,
        warnings,
        negative,
    })
}

fn structure_text(s: Structure) -> String {
    match s {
        Structure::Regular { degree } => format!("regular, degree {degree}"),
        Structure::Biregular { d1, d2 } => format!("biregular, degrees ({d1}, {d2})"),
        Structure::Neither => "neither regular nor biregular".into(),
    }
}

fn resolve_direction(
    m: &Morphism,
    from: Option<AlgebraKind>,
    to: Option<AlgebraKind>,
) -> Result<(AlgebraKind, AlgebraKind)> {
    let dir = m.direction();
    match (from.or(dir.map(Direction::source)), to.or(dir.map(Direction::target))) {
        (Some(f), Some(t)) => Ok((f, t)),
        _ => usage("--from and --to are required when the morphism file has no direction"),
    }
}

fn verify_hom(
    cli: &Cli,
    lg: &LoadedGraph,
    m: &Morphism,
    from: AlgebraKind,
    to: AlgebraKind,
) -> Result<Outcome> {
    let window = lg.handle.window(lg.radius)?;
    let src = EvolutionAlgebra::new(lg.handle.clone(), from);
    let dst = EvolutionAlgebra::new(lg.handle.clone(), to);
    let rep = check_homomorphism(
        m,
        &src,
        &dst,
        &window.interior,
        &CheckOptions {
            tol: cli.tol,
            seed: cli.seed,
        },
    )?;
    let sparse = match m {
        Morphism::Monomial(mm) => mm.to_sparse(),
        Morphism::Sparse(s) => s.clone(),
    };
    let c = classify_monomial(&sparse, Some(&window.interior));
    let mut warnings = Vec::new();
    warnings.extend(scope_warning(window.scope));
    if let Some(d) = m.direction() {
        if (d.source(), d.target()) != (from, to) {
            warnings.push(format!(
                "checking {from} -> {to} but the file declares {} -> {}",
                d.source(),
                d.target()
            ));
        }
    }
    Ok(Outcome {
        summary: vec![
            format!("{from} -> {to}: {}", pass_fail(rep.passed)),
            format!(
                "max residual {:e} (square {:e}, zero product {:e}) over {} vertices, {} pairs",
                rep.max_residual,
                rep.max_square_residual,
                rep.max_zero_product_residual,
                rep.vertices_checked,
                rep.pairs_checked
            ),
            format!("monomial: {}, disjoint supports: {}", c.monomial.is_some(), c.disjoint),
        ],
        results: json!({
            "from": from,
            "to": to,
            "scope": window.scope,
            "report": rep,
            "classification": {
                "monomial": c.monomial.is_some(),
                "bijective": c.monomial.as_ref().map(|m| m.is_bijective_on_domain()),
                "disjoint": c.disjoint,
                "covering": c.covering,
                "null_columns": c.null_columns,
                "violation": c.violation,
            },
        }),
        warnings,
        negative: !rep.passed,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn edge_list_text(g: &FiniteGraph) -> String {
    let mut out = format!("n={}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn twins(inputs: &mut Inputs, arg: &GraphArg, quotient_out: Option<&Path>) -> Result<Outcome> {
    let lg = load(inputs, arg)?;
    let mut warnings = radius_warnings(&lg, arg);
    let g: FiniteGraph = match (&lg.handle, &lg.truncation) {
        (GraphHandle::Finite(g), _) => (**g).clone(),
        (GraphHandle::Lazy(_), Some(t)) => {
            warnings.push(format!(
                "twins computed on the radius-{} ball with local vertex numbering",
                t.radius()
            ));
            t.graph.clone()
        }
        (GraphHandle::Lazy(_), None) => return Err(Error::RadiusRequired.into()),
    };
    let p = twin_partition(&g);
    let q = quotient_graph(&g, &p)?;
    let (_, rounds) = twin_reduce(&g);
    let edges: Vec<(VertexId, VertexId)> = q.graph.edges().collect();
    let mut summary = vec![
        format!("twin classes: {}", classes_text(&p.classes)),
        format!(
            "quotient: {} vertices, {} edges",
            q.graph.vertex_count(),
            q.graph.edge_count()
        ),
        format!("twin-free: {}, reduction rounds to a twin-free graph: {rounds}", p.is_twin_free()),
    ];
    if let Some(path) = quotient_out {
        write_file(path, &edge_list_text(&q.graph))?;
        summary.push(format!("quotient written to {}", path.display()));
    }
    Ok(Outcome {
        results: json!({
            "classes": p.classes,
            "twin_free": p.is_twin_free(),
            "quotient": { "vertex_count": q.graph.vertex_count(), "edges": edges },
            "reduction_rounds": rounds,
        }),
        summary,
        warnings,
        negative: false,
    })
}

fn bound_line(r: &BoundednessReport) -> String {
    let mut s = format!(
        "{}: {} = {}",
        serde_json::to_value(r.kind).expect("kind serializes").as_str().unwrap_or("?"),
        pass_fail(r.satisfied),
        serde_json::to_string(&r.value).expect("value serializes")
    );
    if let Some(e) = &r.exact {
        s.push_str(&format!(" (exact {e})"));
    }
    if let Some(m) = r.max_ratio {
        s.push_str(&format!(", max ratio {m}"));
    }
    if let Some(v) = r.violations {
        s.push_str(&format!(", {v} violations"));
    }
    s
}

fn bounds(
    cli: &Cli,
    lg: &LoadedGraph,
    arg: &GraphArg,
    kind: AlgebraKind,
    m: Option<usize>,
    trials: usize,
    weights: &Weights,
) -> Result<Outcome> {
    let mut warnings = radius_warnings(lg, arg);
    let alg = EvolutionAlgebra::new(lg.handle.clone(), kind);
    let window = lg.handle.window(lg.radius)?;
    warnings.extend(scope_warning(window.scope));
    let k = k_condition(&alg, lg.radius)?;
    let schur = schur_test(&alg, weights, weights, lg.radius)?;
    let m = match m {
        Some(m) => m,
        None => match lg.handle.as_lazy().and_then(|l| l.degree_bound()) {
            Some(b) => b,
            None => window
                .vertices
                .iter()
                .map(|&v| lg.handle.degree(v))
                .collect::<std::result::Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0),
        },
    };
    let degree = degree_bound_norm_check(&lg.handle, m, trials, lg.radius, cli.seed)?;
    Ok(Outcome {
        summary: vec![bound_line(&k), bound_line(&schur), bound_line(&degree)],
        results: json!({
            "algebra": kind,
            "k_condition": k,
            "schur_test": schur,
            "degree_bound": degree,
        }),
        warnings,
        negative: !degree.satisfied,
    })
}
