use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use topocode::auth::{
    authenticate, authenticate_chain, authenticate_vector, derive_bundle, Affine, GraphRelation, LegOp, TransformSpec,
};
use topocode::degseq::{cds_group, ds_lattice_sample, ds_transform, erdos_gallai, parse_sequence, CdsMatrix, DsOp, LatticeOp};
use topocode::groups::{build_group, classify_spanning_tree_groups};
use topocode::labeling::{
    dual, equivalent_labeling, graceful_join, reciprocal_transform, search_labeling, set_dual_transform,
    totally_kd_sequential, verify_as, EdgeRule, Kind, SearchOutcome, VerificationReport,
};
use topocode::networks::{leaf_algo_a, leaf_algo_b, leaf_algo_c, SelfSimilarSpec};
use topocode::rla::{
    rla_e_image, rla_kd_elegant, rla_kd_graceful_total, rla_kd_harmonious, rla_odd_graceful,
    rla_strongly_edge_magic, LeafPlan, RlaError,
};
use topocode::strings::{pnbspp_solve, vo_string, NumberString, PnbsppMode, Rendering, Traversal};
use topocode::topcode::TopcodeMatrix;

use crate::args::*;
use crate::io::{self, Output};

/// Exit status: 0 accepted, 1 rejected. Input problems surface as errors.
pub type Status = i32;

fn status(accepted: bool) -> Status {
    if accepted {
        0
    } else {
        1
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::from(if r.accepted { "accepted\n" } else { "rejected\n" });
    for v in &r.violations {
        s.push_str(&format!("  {}: {}\n", v.clause, v.witness));
    }
    s
}

fn kind(tag: &str) -> Result<Kind> {
    tag.parse().map_err(|e| anyhow!("{e}"))
}

fn traversal(tag: &str) -> Result<Traversal> {
    tag.parse().map_err(|e| anyhow!("{e}"))
}

pub fn run(cli: Cli) -> Result<Status> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Verify(a) => verify(&out, a),
        Command::Search(a) => search(&out, a),
        Command::Transform(a) => transform(&out, a),
        Command::Matrix(c) => matrix(&out, c),
        Command::GenString(a) => gen_string(&out, a),
        Command::Pnbspp(a) => pnbspp(&out, a),
        Command::Rla(a) => rla(&out, a, cli.seed),
        Command::Degseq(c) => degseq(&out, c),
        Command::Group(c) => group(&out, c),
        Command::Selfsim(a) => selfsim(&out, a),
        Command::Auth(c) => auth(&out, c),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn verify(out: &Output, a: VerifyArgs) -> Result<Status> {
    let g = io::graph(&a.graph)?;
    let l = io::labeling(&a.labeling)?;
    let k = match &a.kind {
        Some(t) => kind(t)?,
        None => l.kind,
    };
    let r = verify_as(&g, &l, k)?;
    out.emit(&r, || report_text(&r))?;
    Ok(status(r.accepted))
}

fn search(out: &Output, a: SearchArgs) -> Result<Status> {
    let g = io::graph(&a.graph)?;
    let params = io::params(&a.params)?;
    match search_labeling(&g, kind(&a.kind)?, &params, a.budget)? {
        SearchOutcome::Found(l) => {
            out.artifact(&l)?;
            Ok(0)
        }
        SearchOutcome::Exhausted => {
            eprintln!("no {} labeling exists", a.kind);
            Ok(1)
        }
        SearchOutcome::BudgetExceeded { nodes } => {
            eprintln!("search budget exceeded after {nodes} nodes");
            Ok(1)
        }
    }
}

fn transform(out: &Output, a: TransformArgs) -> Result<Status> {
    let g = io::graph(&a.graph)?;
    let l = io::labeling(&a.labeling)?;
    let need = |v: &Option<String>, flag: &str| v.clone().ok_or_else(|| anyhow!("--{flag} is required"));
    let result = match a.op {
        TransformOp::Dual => dual(&g, &l, a.scope.parse()?)?,
        TransformOp::SetDual => set_dual_transform(&g, &l, need(&a.variant, "variant")?.parse()?)?,
        TransformOp::Reciprocal => reciprocal_transform(&g, &l, a.part.parse()?, a.edges.parse()?)?,
        TransformOp::Equivalent => {
            equivalent_labeling(&g, &l, kind(&need(&a.target, "target")?)?, &io::params(&a.params)?)?
        }
        TransformOp::KdSequential => totally_kd_sequential(&g, &l, a.k, a.d)?,
        TransformOp::Join => {
            let gb = a.graph_b.as_deref().ok_or_else(|| anyhow!("--graph-b is required"))?;
            let lb = a.labeling_b.as_deref().ok_or_else(|| anyhow!("--labeling-b is required"))?;
            let mode = need(&a.mode, "mode")?.parse()?;
            let (joined, labeling) = graceful_join(&g, &l, &io::graph(gb)?, &io::labeling(lb)?, mode)?;
            out.artifact(&json!({ "graph": joined, "labeling": labeling }))?;
            return Ok(0);
        }
    };
    out.artifact(&result)?;
    Ok(0)
}

fn matrix(out: &Output, c: MatrixCommand) -> Result<Status> {
    let result = match c {
        MatrixCommand::FromGraph { graph, labeling } => {
            TopcodeMatrix::from_colored_graph(&io::graph(&graph)?, &io::labeling(&labeling)?)?
        }
        MatrixCommand::Info { a } => {
            let m = io::matrix(&a)?;
            let degrees = m.tm_degree_sequence();
            let graphicable = m.is_graphicable();
            let info = json!({ "q": m.q(), "degree_sequence": degrees.as_slice(), "graphicable": graphicable });
            out.emit(&info, || {
                format!("q {}\ndegree sequence {:?}\ngraphicable {graphicable}\n", m.q(), degrees.as_slice())
            })?;
            return Ok(0);
        }
        MatrixCommand::Op(a) => {
            let m = io::matrix(&a.a)?;
            let b = || -> Result<TopcodeMatrix> {
                io::matrix(a.b.as_deref().ok_or_else(|| anyhow!("--b is required for this operation"))?)
            };
            match a.op {
                MatrixOp::UnionSum => m.union_sum(&b()?),
                MatrixOp::Union => m.union(&b()?),
                MatrixOp::Intersect => m.intersect(&b()?),
                MatrixOp::Difference => m.difference(&b()?),
                MatrixOp::Subtract => m.subtract(&b()?)?,
                MatrixOp::Coincide => {
                    let h = io::matrix(a.h.as_deref().ok_or_else(|| anyhow!("--h is required for coincide"))?)?;
                    m.coincide(&b()?, &h)?
                }
                MatrixOp::StandardForm => m.standard_form()?,
                MatrixOp::Reciprocal => m.reciprocal(),
                MatrixOp::Dual => m.dual(a.dual_edges.parse()?)?,
                MatrixOp::Scale => m.scale(a.factor),
            }
        }
    };
    out.emit(&result, || result.to_text())?;
    Ok(0)
}

fn gen_string(out: &Output, a: GenStringArgs) -> Result<Status> {
    let m = io::matrix(&a.matrix)?;
    let s = vo_string(&m, traversal(&a.algo)?)?;
    let rendering = if a.tokens { Rendering::Tokens } else { Rendering::Digits };
    let value = json!({ "tokens": s.tokens(), "digits": s.render(Rendering::Digits) });
    out.emit(&value, || s.render(rendering))?;
    Ok(0)
}

fn pnbspp(out: &Output, a: PnbsppArgs) -> Result<Status> {
    let s = NumberString::from_digits(&a.string)?;
    let mode = match &a.target {
        Some(t) => PnbsppMode::MatchTarget(io::matrix(t)?),
        None => PnbsppMode::GraphicableAny,
    };
    let r = pnbspp_solve(&s, a.q, &mode, traversal(&a.algo)?, a.bound)?;
    let value = json!({ "matrices": r.matrices, "cuts_visited": r.cuts_visited, "target_found": r.target_found });
    out.emit(&value, || {
        let mut text = format!("{} matrices from {} cuts\n", r.matrices.len(), r.cuts_visited);
        for m in &r.matrices {
            text.push_str(&format!("\n{}\n", m.to_text()));
        }
        if let Some(found) = r.target_found {
            text.push_str(&format!("target found: {found}\n"));
        }
        text
    })?;
    Ok(status(r.target_found.unwrap_or(!r.matrices.is_empty())))
}

fn rla(out: &Output, a: RlaArgs, seed: u64) -> Result<Status> {
    let g = io::graph(&a.graph)?;
    let l = io::labeling(&a.labeling)?;
    let plan = match (&a.plan, a.m) {
        (Some(p), _) => io::json_file::<LeafPlan>(p)?,
        (None, Some(m)) => LeafPlan::random(g.vertex_count(), m, seed),
        (None, None) => bail!("either --plan or --m is required"),
    };
    let result: Result<Value, RlaError> = match a.algo {
        RlaAlgo::OddGraceful => rla_odd_graceful(&g, &l, &plan).map(|e| json!({ "graph": e.graph, "labeling": e.labeling })),
        RlaAlgo::KdHarmonious => rla_kd_harmonious(&g, &l, &plan).map(|e| json!({ "graph": e.graph, "labeling": e.labeling })),
        RlaAlgo::KdElegant => rla_kd_elegant(&g, &l, &plan).map(|e| json!({ "graph": e.graph, "labeling": e.labeling })),
        RlaAlgo::KdGracefulTotal => {
            rla_kd_graceful_total(&g, &l, &plan, None).map(|e| json!({ "graph": e.graph, "labeling": e.labeling }))
        }
        RlaAlgo::EImage => rla_e_image(&g, &l, &plan)
            .map(|p| json!({ "graph": p.graph, "g": p.g, "h": p.h, "constant": p.constant })),
        RlaAlgo::StronglyEdgeMagic => rla_strongly_edge_magic(&g, &l, &plan)
            .map(|e| json!({ "graph": e.graph, "labeling": e.labeling, "constant": e.constant })),
    };
    match result {
        Ok(mut v) => {
            v["plan"] = json!(plan);
            out.artifact(&v)?;
            Ok(0)
        }
        Err(e @ (RlaError::Collision | RlaError::NoAssignment | RlaError::Rejected(_))) => {
            eprintln!("{e}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn sequence(s: &str) -> Result<Vec<usize>> {
    Ok(parse_sequence(s)?)
}

fn degseq(out: &Output, c: DegseqCommand) -> Result<Status> {
    match c {
        DegseqCommand::Check { seq } => {
            let d = sequence(&seq)?;
            let mut sorted = d.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let graphical = erdos_gallai(&d);
            out.emit(&json!({ "sequence": sorted, "graphical": graphical }), || {
                format!("{} is {}graphical\n", topocode::degseq::format_sequence(&sorted), if graphical { "" } else { "not " })
            })?;
            Ok(status(graphical))
        }
        DegseqCommand::Transform { seq, other, op } => {
            let d = sequence(&seq)?;
            let other = other.as_deref().map(sequence).transpose()?;
            let op: DsOp = if op.trim_start().starts_with('{') {
                serde_json::from_str(&op).context("malformed operation JSON")?
            } else {
                serde_json::from_value(json!({ "op": op })).with_context(|| format!("operation `{op}` needs parameters"))?
            };
            let r = ds_transform(&d, other.as_deref(), &op)?;
            out.emit(&r, || {
                format!(
                    "{}\ngraphical {}\n",
                    topocode::degseq::format_sequence(&r.sorted),
                    r.graphical
                )
            })?;
            Ok(0)
        }
        DegseqCommand::Group { degrees, colors, modulus, add } => {
            let group = cds_group(CdsMatrix::new(sequence(&degrees)?, io::ints(&colors)?)?, modulus)?;
            if let Some(add) = add {
                let ix = io::ints(&add)?;
                let [i, j, k] = ix[..] else { bail!("--add takes I,J,ZERO") };
                let at = |x: i64| io::one_based(usize::try_from(x).unwrap_or(0));
                let r = group.add(at(i)?, at(j)?, at(k)?)? + 1;
                out.emit(&json!({ "result": r, "colors": group.element(r - 1)? }), || format!("f_{r}\n"))?;
                return Ok(0);
            }
            let elements = (0..group.modulus as usize).map(|r| group.element(r)).collect::<Result<Vec<_>, _>>()?;
            out.emit(&json!({ "modulus": group.modulus, "elements": elements }), || {
                elements.iter().enumerate().map(|(r, e)| format!("f_{}: {e:?}\n", r + 1)).collect()
            })?;
            Ok(0)
        }
        DegseqCommand::Lattice { base, coeffs, op } => {
            let base = base.split(';').map(sequence).collect::<Result<Vec<_>>>()?;
            let coeffs = coeffs.split(',').map(|c| c.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
            let op: LatticeOp = serde_json::from_value(json!(op)).with_context(|| format!("unknown lattice op `{op}`"))?;
            let r = ds_lattice_sample(&base, &coeffs, op)?;
            out.emit(&r, || format!("{}\ngraphical {}\n", topocode::degseq::format_sequence(&r.sorted), r.graphical))?;
            Ok(0)
        }
    }
}

fn group_of(s: &GroupSource) -> Result<topocode::groups::GraphicGroup> {
    let g = io::graph(&s.graph)?;
    let rule: EdgeRule = s.rule.parse()?;
    Ok(build_group(&g, &io::ints(&s.colors)?, s.modulus, rule)?)
}

fn group(out: &Output, c: GroupCommand) -> Result<Status> {
    match c {
        GroupCommand::Build(s) => {
            let g = group_of(&s)?;
            let elements: Vec<Value> = (0..g.size())
                .map(|i| {
                    let el = g.element(i)?;
                    Ok(json!({ "index": i + 1, "vertex": el.vertex, "edges": el.edges, "matrix": g.matrix(i)? }))
                })
                .collect::<Result<_>>()?;
            let laws = g.verify_group_laws();
            out.emit(&json!({ "modulus": g.modulus, "elements": elements, "group_laws": laws.accepted }), || {
                let mut text = String::new();
                for i in 0..g.size() {
                    text.push_str(&format!("S_{}\n{}\n", i + 1, g.matrix(i).map(|m| m.to_text()).unwrap_or_default()));
                }
                text.push_str(&format!("group laws {}\n", if laws.accepted { "hold" } else { "fail" }));
                text
            })?;
            Ok(status(laws.accepted))
        }
        GroupCommand::Add { source, i, j, zero } => {
            let g = group_of(&source)?;
            let (i, j, zero) = (io::one_based(i)?, io::one_based(j)?, io::one_based(zero)?);
            let r = g.add(i, j, zero)?;
            let elementwise = g.add_elementwise(i, j, zero)?;
            let value = json!({ "result": r + 1, "elementwise": elementwise.map(|e| e + 1) });
            out.emit(&value, || format!("S_{}\n", r + 1))?;
            Ok(status(elementwise == Some(r)))
        }
        GroupCommand::ClassifyKn { n } => {
            let orbits = classify_spanning_tree_groups(n)?;
            let value: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "shape": o.shape.as_slice(),
                        "size": o.size(),
                        "members": o.members,
                        "family": o.family.iter().map(|f| f + 1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.emit(&value, || {
                let mut text = format!("{} orbits\n", orbits.len());
                for (k, o) in orbits.iter().enumerate() {
                    text.push_str(&format!("orbit {}: shape {:?}, size {}\n", k + 1, o.shape.as_slice(), o.size()));
                    for m in &o.members {
                        text.push_str(&format!("  {m:?}\n"));
                    }
                }
                text
            })?;
            Ok(0)
        }
    }
}

fn selfsim(out: &Output, a: SelfsimArgs) -> Result<Status> {
    let spec = SelfSimilarSpec { base: io::graph(&a.base)?, root: a.root, iterations: a.t };
    let r = match a.algo {
        SelfsimAlgo::A => leaf_algo_a(&spec)?,
        SelfsimAlgo::B => leaf_algo_b(&spec)?,
        SelfsimAlgo::C => leaf_algo_c(&spec)?,
    };
    if let Some(path) = &a.out {
        std::fs::write(path, r.graph.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let value = json!({ "counts": r.counts, "root": r.root });
    out.emit(&value, || {
        let mut text = format!("vertices {}\nedges {}\n", r.counts.vertices, r.counts.edges);
        if let Some(c) = r.counts.closed_form {
            text.push_str(&format!("closed form {c}\n"));
        }
        text
    })?;
    Ok(0)
}

fn relation(s: &str) -> Result<GraphRelation> {
    serde_json::from_value(json!(s)).map_err(|_| anyhow!("unknown graph relation `{s}`"))
}

fn auth(out: &Output, c: AuthCommand) -> Result<Status> {
    let r = match c {
        AuthCommand::Derive { graph, labeling, algo } => {
            let b = derive_bundle(&io::graph(&graph)?, &io::labeling(&labeling)?, traversal(&algo)?)?;
            out.artifact(&b)?;
            return Ok(0);
        }
        AuthCommand::Verify { public, private, spec, x, e, y, relation: rel } => {
            let spec = match spec {
                Some(p) => io::json_file(&p)?,
                None => TransformSpec {
                    x: x.parse::<Affine>()?,
                    e: e.parse::<Affine>()?,
                    y: y.parse::<Affine>()?,
                    relation: relation(&rel)?,
                },
            };
            authenticate(&io::bundle(&public)?, &io::bundle(&private)?, &spec)?
        }
        AuthCommand::VerifyVector { public, private, ops, chain } => {
            let ops: Vec<LegOp> = io::json_file(&ops)?;
            let pubs = public.iter().map(|p| io::bundle(p)).collect::<Result<Vec<_>>>()?;
            if chain {
                if !private.is_empty() {
                    bail!("--priv is not used in chain mode");
                }
                authenticate_chain(&pubs, &ops)?
            } else {
                let privs = private.iter().map(|p| io::bundle(p)).collect::<Result<Vec<_>>>()?;
                authenticate_vector(&pubs, &privs, &ops)?
            }
        }
    };
    out.emit(&r, || report_text(&r))?;
    Ok(status(r.accepted))
}

fn export_dot(a: ExportDotArgs) -> Result<Status> {
    let mut g = io::graph(&a.graph)?;
    if let Some(path) = &a.labeling {
        let l = io::labeling(path)?;
        g = g.with_names(l.vertex.iter().map(i64::to_string).collect())?;
    }
    print!("{}", g.to_dot());
    Ok(0)
}
