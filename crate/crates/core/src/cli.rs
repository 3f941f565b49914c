//! Command-line front end. `run` parses arguments, dispatches, and returns the
//! exit code with the JSON report; the binary and the C interface both call it.
//!
//! Exit codes: 0 success, 1 a mathematical identity failed on concrete data,
//! 2 anything wrong with the input.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::comodule::{
    hom_dim, is_nilpotent, is_semisimple, is_two_sided_ideal, kleiman_check, present, simple_census, tautological,
    AlgModule, ModuleMap, Presentation, RadicalMethod, SemisimpleVerdict, DEFAULT_COPIES_PER_VERTEX,
};
use crate::corpus::{self, case_rng};
use crate::diagram::{Representation, Subgraph};
use crate::endomorphism::{
    check_disjoint_union, check_path_invariance, compute_end, compute_endvee, restriction_map,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{dec_check, kunneth_check, pairing_duality, FilteredComplex, LefschetzDatum};
use crate::json::{self, matrix_json, scalar_json, vector_json, DocumentKind};
use crate::linalg::rank;
use crate::tannaka::{
    dual_of_cokernel, extension_functor, tensor_coalgebra, Bialgebra, DualityDatum,
};

#[derive(Parser, Debug)]
#[command(name = "nori-kernel", version, about = "Exact computations with diagram representations and their endomorphism algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub session: Session,
}

/// Options shared by every command.
#[derive(Args, Debug, Clone, Default)]
pub struct Session {
    /// Input document.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Second input document, for binary operations.
    #[arg(long = "in2", global = true, value_name = "FILE")]
    pub input2: Option<PathBuf>,
    /// Coefficient field: Q or Fp:P.
    #[arg(long, global = true, value_name = "FIELD")]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of generated cases for `check`.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Longest path considered.
    #[arg(long = "max-len", global = true)]
    pub max_len: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Emit JSON (the only format).
    #[arg(long, global = true)]
    pub json: bool,
    /// Vertex ids of a full subdiagram, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub sub: Vec<String>,
    /// Present only the tautological module of this vertex.
    #[arg(long, global = true)]
    pub vertex: Option<String>,
    /// Present only the cokernel module of this edge.
    #[arg(long, global = true)]
    pub edge: Option<String>,
    /// Last spectral sequence page reported.
    #[arg(long = "r-max", global = true)]
    pub r_max: Option<usize>,
    /// Print the elapsed time to standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// The algebra End(H) of compatible endomorphism tuples.
    End,
    /// The coalgebra End^∨(H) with its axioms checked.
    Coalgebra,
    /// The map End(H) → End(H|sub) and its dual.
    Restrict,
    /// Tautological modules, their Hom dimensions and simple classes.
    Modules,
    /// Presentations by tautological modules.
    Present,
    /// Semisimplicity verdict, with the positivity test when an involution is given.
    Semisimple,
    /// End^∨(H ⊗ H') against End^∨(H) ⊗ End^∨(H').
    Tensor,
    /// Dual of a representation of ℤ/m, or of a cokernel of such.
    Dual,
    /// Extension along a lift of H to modules over another algebra.
    Extend,
    /// Cohomology of a complex.
    Homology,
    /// Künneth dimension identity for two complexes.
    Kunneth,
    /// Spectral sequence pages of a filtered complex and the décalage identity.
    Specseq,
    /// Perfectness of a graded pairing and its duality data.
    Pairing,
    /// Primitive decomposition under hard Lefschetz.
    Lefschetz,
    /// Run a seeded property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Enumerate paths with their composite matrices.
    Paths,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::End => "end",
            Command::Coalgebra => "coalgebra",
            Command::Restrict => "restrict",
            Command::Modules => "modules",
            Command::Present => "present",
            Command::Semisimple => "semisimple",
            Command::Tensor => "tensor",
            Command::Dual => "dual",
            Command::Extend => "extend",
            Command::Homology => "homology",
            Command::Kunneth => "kunneth",
            Command::Specseq => "specseq",
            Command::Pairing => "pairing",
            Command::Lefschetz => "lefschetz",
            Command::Check { .. } => "check",
            Command::Paths => "paths",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PathInvariance,
    Coalgebra,
    DisjointUnion,
    Tensor,
    Presentation,
    Duality,
    Semisimple,
    Kunneth,
    Decalage,
    Lefschetz,
    Reconstruction,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::PathInvariance => "path-invariance",
            Suite::Coalgebra => "coalgebra",
            Suite::DisjointUnion => "disjoint-union",
            Suite::Tensor => "tensor",
            Suite::Presentation => "presentation",
            Suite::Duality => "duality",
            Suite::Semisimple => "semisimple",
            Suite::Kunneth => "kunneth",
            Suite::Decalage => "decalage",
            Suite::Lefschetz => "lefschetz",
            Suite::Reconstruction => "reconstruction",
        }
    }

    /// The statement exercised, printed in the report header.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::PathInvariance => "End(H) over a diagram equals End(H) over its path closure: composites of edges impose no new conditions",
            Suite::Coalgebra => "End^∨(H) is coassociative and counital, exactly",
            Suite::DisjointUnion => "End^∨ of a disjoint union of diagrams is the direct sum of the two coalgebras",
            Suite::Tensor => "End^∨(H ⊗ H') is isomorphic to End^∨(H) ⊗ End^∨(H') as a coalgebra",
            Suite::Presentation => "a module generated by tautological modules is the cokernel of a map between finite sums of them",
            Suite::Duality => "duals satisfy both triangle identities, and the dual of a cokernel is the kernel of the transposed map",
            Suite::Semisimple => "the trace-form radical is a nilpotent two-sided ideal with semisimple quotient, so it is the Jacobson radical",
            Suite::Kunneth => "dim H^n(C ⊗ C') is the sum over j of dim H^j(C) · dim H^(n-j)(C')",
            Suite::Decalage => "E_1 of the shifted filtration Dec(F) equals E_2 of F",
            Suite::Lefschetz => "under hard Lefschetz every H^i is the direct sum of ℓ-powers of primitive parts",
            Suite::Reconstruction => "n isolated one-dimensional vertices give exactly n simple modules, as for F^n",
        }
    }

    pub fn default_cases(self) -> usize {
        match self {
            Suite::PathInvariance => 50,
            Suite::Kunneth => 30,
            Suite::Reconstruction => 4,
            Suite::Lefschetz => 6,
            _ => 20,
        }
    }

    pub fn all() -> &'static [Suite] {
        &[
            Suite::PathInvariance,
            Suite::Coalgebra,
            Suite::DisjointUnion,
            Suite::Tensor,
            Suite::Presentation,
            Suite::Duality,
            Suite::Semisimple,
            Suite::Kunneth,
            Suite::Decalage,
            Suite::Lefschetz,
            Suite::Reconstruction,
        ]
    }
}

/// What a run produced: the exit code, the report text, and where it was written.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub written_to: Option<PathBuf>,
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.to_string(),
                written_to: None,
            };
        }
    };
    let name = cli.command.name();
    let started = std::time::Instant::now();
    let (code, mut report) = match execute(&cli.command, &cli.session) {
        Ok((report, ok)) => (if ok { 0 } else { 1 }, report),
        Err(e) => (e.exit_code(), error_report(&e)),
    };
    // kept out of the report so reports stay byte-identical across runs
    if cli.session.verbose > 0 {
        eprintln!("{name}: exit {code} after {:.3?}", started.elapsed());
    }
    report["command"] = json!(name);
    let output = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    let mut written_to = None;
    if let Some(path) = &cli.session.out {
        match std::fs::write(path, &output) {
            Ok(()) => written_to = Some(path.clone()),
            Err(e) => {
                return Outcome {
                    code: 2,
                    output: serde_json::to_string_pretty(&error_report(&Error::Io(e))).expect("serializable") + "\n",
                    written_to: None,
                }
            }
        }
    }
    Outcome { code, output, written_to }
}

fn error_report(e: &Error) -> Value {
    let mut err = json!({"message": e.to_string()});
    if let Error::Falsified { identity, witness } = e {
        err["identity"] = json!(identity);
        err["witness"] = json!(witness);
    }
    json!({
        "status": if e.exit_code() == 1 { "falsified" } else { "input-error" },
        "error": err,
    })
}

fn field_flag(s: &Session) -> Result<Option<Field>> {
    s.field.as_deref().map(str::parse).transpose()
}

fn read(path: &Option<PathBuf>, flag: &str) -> Result<String> {
    let path = path.as_ref().ok_or_else(|| Error::Input(format!("missing {flag} FILE")))?;
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_rep(path: &Option<PathBuf>, flag: &str, s: &Session) -> Result<Representation> {
    json::parse_representation(&read(path, flag)?, field_flag(s)?)
}

fn subgraph(rep: &Representation, s: &Session) -> Result<Subgraph> {
    if s.sub.is_empty() {
        Ok(Subgraph::full(rep.diagram()))
    } else {
        let ids: Vec<&str> = s.sub.iter().map(String::as_str).collect();
        Subgraph::induced(rep.diagram(), &ids)
    }
}

/// Runs a command: the report and whether every check in it passed.
fn execute(command: &Command, s: &Session) -> Result<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match command {
        Command::End => ok(end_report(&load_rep(&s.input, "--in", s)?, s)?),
        Command::Coalgebra => ok(coalgebra_report(&load_rep(&s.input, "--in", s)?, s)?),
        Command::Restrict => ok(restrict_report(&load_rep(&s.input, "--in", s)?, s)?),
        Command::Modules => ok(modules_report(&load_rep(&s.input, "--in", s)?, s)?),
        Command::Present => ok(present_report(&load_rep(&s.input, "--in", s)?, s)?),
        Command::Semisimple => ok(semisimple_report(s)?),
        Command::Tensor => {
            let t = tensor_coalgebra(&load_rep(&s.input, "--in", s)?, &load_rep(&s.input2, "--in2", s)?)?;
            ok(json!({
                "status": "ok",
                "dims": [t.dims.0, t.dims.1],
                "dim_product": t.dim_product,
                "isomorphism": matrix_json(&t.isomorphism.matrix),
                "verified": true,
            }))
        }
        Command::Dual => ok(dual_report(s)?),
        Command::Extend => ok(extend_report(s)?),
        Command::Homology => {
            let (c, _) = json::parse_complex(&read(&s.input, "--in")?, field_flag(s)?)?;
            let groups = c.cohomology()?;
            ok(json!({
                "status": "ok",
                "start": c.start(),
                "dims": c.dims(),
                "cohomology": groups.iter().map(|g| json!({
                    "degree": g.degree,
                    "dim": g.dim(),
                    "representatives": g.space.representatives().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "euler_characteristic": c.euler_characteristic(),
                "euler_characteristic_cohomology": crate::homology::cohomology_euler(&c),
            }))
        }
        Command::Kunneth => {
            let flag = field_flag(s)?;
            let (c, _) = json::parse_complex(&read(&s.input, "--in")?, flag)?;
            let (c2, _) = json::parse_complex(&read(&s.input2, "--in2")?, flag)?;
            let r = kunneth_check(&c, &c2)?;
            let report = json!({
                "status": if r.holds { "ok" } else { "falsified" },
                "start": r.start,
                "tensor": r.tensor,
                "predicted": r.predicted,
                "holds": r.holds,
            });
            Ok((report, r.holds))
        }
        Command::Specseq => specseq_report(s),
        Command::Pairing => pairing_report(s),
        Command::Lefschetz => {
            let ld = json::parse_lefschetz(&read(&s.input, "--in")?, field_flag(s)?)?;
            let d = ld.decompose()?;
            let report = json!({
                "status": if d.verified { "ok" } else { "falsified" },
                "n": ld.n(),
                "dims": ld.dims(),
                "primitive_dims": d.primitive_dims,
                "primitive_bases": d.primitive.iter().map(|p| p.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "certificate": d.certificate.iter().map(matrix_json).collect::<Vec<_>>(),
                "verified": d.verified,
            });
            Ok((report, d.verified))
        }
        Command::Check { suite } => run_suite(*suite, s),
        Command::Paths => {
            let rep = load_rep(&s.input, "--in", s)?;
            let closure = rep.path_closure(s.max_len.unwrap_or(3))?;
            let d = rep.diagram();
            ok(json!({
                "status": "ok",
                "max_len": closure.max_len,
                "paths": closure.paths.iter().map(|p| json!({
                    "word": p.word.iter().map(|&e| d.edges()[e].id.clone()).collect::<Vec<_>>(),
                    "src": d.vertices()[p.src].id,
                    "dst": d.vertices()[p.dst].id,
                    "matrix": matrix_json(&p.matrix),
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

fn sparse_products(a: &FiniteAlgebra) -> Value {
    let d = a.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let p = a.product(i, j);
            if !p.is_empty() {
                out.push(json!([i, j, p.iter().map(|(k, c)| json!([k, scalar_json(c)])).collect::<Vec<_>>()]));
            }
        }
    }
    Value::Array(out)
}

fn end_report(rep: &Representation, s: &Session) -> Result<Value> {
    let sub = subgraph(rep, s)?;
    let a = compute_end(rep, &sub)?;
    let ids: Vec<&str> = sub.vertices().iter().map(|&v| rep.diagram().vertices()[v].id.as_str()).collect();
    let basis: Vec<Value> = a
        .realization()
        .expect("realized")
        .basis()
        .iter()
        .map(|t| {
            let m: serde_json::Map<String, Value> =
                ids.iter().zip(t).map(|(id, b)| (id.to_string(), matrix_json(b))).collect();
            Value::Object(m)
        })
        .collect();
    Ok(json!({
        "status": "ok",
        "field": rep.field().descriptor(),
        "dim": a.dim(),
        "basis": basis,
        "unit": vector_json(a.unit()),
        "products": sparse_products(&a),
        "commutative": a.is_commutative(),
    }))
}

fn coalgebra_report(rep: &Representation, s: &Session) -> Result<Value> {
    let sub = subgraph(rep, s)?;
    let c = compute_endvee(rep, &sub)?;
    let comult: Vec<Value> = (0..c.dim())
        .map(|k| {
            Value::Array(c.comult(k).iter().map(|(i, j, x)| json!([i, j, scalar_json(x)])).collect())
        })
        .collect();
    let coassociative = c.check_coassociativity().is_ok();
    let counital = c.check_counit().is_ok();
    Ok(json!({
        "status": "ok",
        "field": rep.field().descriptor(),
        "dim": c.dim(),
        "comultiplication": comult,
        "counit": vector_json(c.counit()),
        "coassociative": coassociative,
        "counital": counital,
    }))
}

fn restrict_report(rep: &Representation, s: &Session) -> Result<Value> {
    if s.sub.is_empty() {
        return Err(Error::Input("restrict needs --sub with the vertices of the smaller diagram".into()));
    }
    let small = subgraph(rep, s)?;
    let large = Subgraph::full(rep.diagram());
    let r = restriction_map(rep, &small, &large)?;
    Ok(json!({
        "status": "ok",
        "sub": s.sub,
        "dim_large": r.algebra_map.cols(),
        "dim_small": r.algebra_map.rows(),
        "algebra_map": matrix_json(&r.algebra_map),
        "coalgebra_map": matrix_json(&r.coalgebra_map.matrix),
        "surjective": r.surjective,
    }))
}

fn modules_report(rep: &Representation, s: &Session) -> Result<Value> {
    let sub = subgraph(rep, s)?;
    let a = Arc::new(compute_end(rep, &sub)?);
    let taut: Vec<AlgModule> = sub.vertices().iter().map(|&v| tautological(&a, &sub, v)).collect::<Result<_>>()?;
    let ids: Vec<String> = sub.vertices().iter().map(|&v| rep.diagram().vertices()[v].id.clone()).collect();
    let hom: Vec<Vec<usize>> = taut
        .iter()
        .map(|x| taut.iter().map(|y| hom_dim(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let census = simple_census(&a, &taut)?;
    Ok(json!({
        "status": "ok",
        "algebra_dim": a.dim(),
        "modules": ids.iter().zip(&taut).map(|(id, m)| json!({"vertex": id, "dim": m.dim()})).collect::<Vec<_>>(),
        "hom_dims": hom,
        "census": {
            "semisimple": census.semisimple,
            "schur": census.schur.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>(),
            "classes": census.classes.iter().map(|c| c.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "simple_count": census.classes.len(),
            "complete": census.complete,
        },
    }))
}

fn presentation_json(rep: &Representation, p: &Presentation) -> Value {
    let id = |v: &usize| rep.diagram().vertices()[*v].id.clone();
    let c = &p.certificate;
    json!({
        "generators": p.generators.iter().map(id).collect::<Vec<_>>(),
        "relations": p.relations.iter().map(id).collect::<Vec<_>>(),
        "generator_map": matrix_json(&p.generator_map),
        "relation_map": matrix_json(&p.relation_map),
        "certificate": {
            "dim_module": c.dim_module,
            "dim_generators": c.dim_generators,
            "dim_relations": c.dim_relations,
            "rank_generator_map": c.rank_generator_map,
            "rank_relation_map": c.rank_relation_map,
            "composite_zero": c.composite_zero,
            "exact": c.holds(),
        },
    })
}

fn present_report(rep: &Representation, s: &Session) -> Result<Value> {
    let sub = subgraph(rep, s)?;
    let a = Arc::new(compute_end(rep, &sub)?);
    let mut targets: Vec<(String, AlgModule)> = Vec::new();
    let vertex_module = |id: &str| -> Result<AlgModule> { tautological(&a, &sub, rep.vertex_index(id)?) };
    let edge_module = |id: &str| -> Result<AlgModule> {
        let e = rep
            .diagram()
            .edge_index(id)
            .ok_or_else(|| Error::Input(format!("unknown edge {id:?}")))?;
        let edge = &rep.diagram().edges()[e];
        let f = ModuleMap::new(
            tautological(&a, &sub, edge.src)?,
            tautological(&a, &sub, edge.dst)?,
            rep.map(e).clone(),
        )?;
        Ok(f.cokernel()?.0)
    };
    match (&s.vertex, &s.edge) {
        (Some(v), _) => targets.push((format!("h({v})"), vertex_module(v)?)),
        (None, Some(e)) => targets.push((format!("coker h({e})"), edge_module(e)?)),
        (None, None) => {
            for &v in sub.vertices() {
                let id = &rep.diagram().vertices()[v].id;
                targets.push((format!("h({id})"), vertex_module(id)?));
            }
            for &e in sub.edges() {
                let id = &rep.diagram().edges()[e].id;
                targets.push((format!("coker h({id})"), edge_module(id)?));
            }
        }
    }
    let mut out = Vec::new();
    for (name, m) in &targets {
        let p = present(rep, &sub, &a, m, DEFAULT_COPIES_PER_VERTEX)?;
        let mut v = presentation_json(rep, &p);
        v["module"] = json!(name);
        out.push(v);
    }
    Ok(json!({"status": "ok", "algebra_dim": a.dim(), "presentations": out}))
}

fn method_name(m: RadicalMethod) -> &'static str {
    match m {
        RadicalMethod::TraceForm => "trace-form",
        RadicalMethod::TraceRadical => "trace-radical",
        RadicalMethod::Exhaustive => "exhaustive",
        RadicalMethod::Inconclusive => "inconclusive",
    }
}

fn verdict_json(v: &SemisimpleVerdict) -> Value {
    json!({
        "semisimple": v.semisimple,
        "method": method_name(v.method),
        "radical_dim": v.radical.as_ref().map(|r| r.dim()),
        "radical_basis": v.radical.as_ref().map(|r| r.basis().iter().map(|b| vector_json(b)).collect::<Vec<_>>()),
    })
}

fn semisimple_report(s: &Session) -> Result<Value> {
    let text = read(&s.input, "--in")?;
    let (a, involution) = match json::document_kind(&text)? {
        DocumentKind::Diagram => {
            let rep = json::parse_representation(&text, field_flag(s)?)?;
            (compute_end(&rep, &subgraph(&rep, s)?)?, None)
        }
        DocumentKind::Algebra => json::parse_algebra(&text, field_flag(s)?)?,
        DocumentKind::Other => return Err(Error::Input("expected a diagram or an algebra document".into())),
    };
    let verdict = is_semisimple(&a);
    let mut report = json!({"status": "ok", "dim": a.dim(), "verdict": verdict_json(&verdict)});
    if let Some(inv) = involution {
        let k = kleiman_check(&a, &inv)?;
        report["positivity"] = json!({
            "positive_definite": k.positive_definite,
            "gram": matrix_json(&k.gram),
            "leading_minors": vector_json(&k.minors),
            "witness": k.witness.as_ref().map(|w| vector_json(w)),
            "semisimple": k.semisimple,
        });
    }
    Ok(report)
}

fn datum_json(d: &DualityDatum) -> Value {
    let t = d.triangles().ok();
    json!({
        "dim": d.dim,
        "dual_dim": d.dual_dim,
        "coevaluation": vector_json(&d.coevaluation.column(0)),
        "evaluation": vector_json(d.evaluation.row(0)),
        "d1": t.as_ref().map(|t| t.d1),
        "d2": t.as_ref().map(|t| t.d2),
    })
}

fn dual_report(s: &Session) -> Result<Value> {
    let input = json::parse_group_module(&read(&s.input, "--in")?, field_flag(s)?)?;
    let b = &input.bialgebra;
    let d = b.dual_module(&input.module)?;
    if let Some(supplied) = &input.duality {
        supplied.verify(None)?;
    }
    let mut report = json!({
        "status": "ok",
        "group_order": b.dim(),
        "datum": datum_json(&d),
        "dual_generator": d.dual.as_ref().map(|m| matrix_json(m.action(1 % b.dim()))),
    });
    if let Some((source, f)) = &input.cokernel_of {
        let d1 = b.dual_module(source)?;
        let c = dual_of_cokernel(f, &d1, &d, Some(b))?;
        report["cokernel"] = json!({
            "datum": datum_json(&c.datum),
            "transpose": matrix_json(&c.transpose),
            "left_exact": c.left_exact,
        });
    }
    Ok(report)
}

fn extend_report(s: &Session) -> Result<Value> {
    let rep = load_rep(&s.input, "--in", s)?;
    let sub = subgraph(&rep, s)?;
    let (a, lift) = json::parse_extension(&read(&s.input2, "--in2")?, &rep)?;
    let ext = extension_functor(&rep, &sub, &a, &lift)?;
    let ids = |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| rep.diagram().vertices()[v].id.clone()).collect() };
    Ok(json!({
        "status": "ok",
        "phi": matrix_json(&ext.phi),
        "image_dim": ext.image_dim,
        "vertices": ids(sub.vertices()),
        "vertices_commute": ext.vertices_commute,
        "edges_commute": ext.edges_commute,
    }))
}

fn specseq_report(s: &Session) -> Result<(Value, bool)> {
    let (c, fc) = json::parse_complex(&read(&s.input, "--in")?, field_flag(s)?)?;
    let fc = fc.unwrap_or_else(|| FilteredComplex::trivial(c));
    let pages = fc.pages(s.r_max.unwrap_or(3))?;
    let dec = dec_check(&fc)?;
    let page_json = |p: &[crate::homology::PageEntry]| -> Value {
        Value::Array(p.iter().map(|e| json!({"p": e.p, "q": e.q, "dim": e.dim})).collect())
    };
    let report = json!({
        "status": if dec.holds { "ok" } else { "falsified" },
        "pages": pages.pages.iter().map(|p| page_json(p)).collect::<Vec<_>>(),
        "infinity": page_json(&pages.infinity),
        "dec_check": {
            "holds": dec.holds,
            "entries": dec.entries.iter().map(|(p, n, a, b)| json!({"p": p, "n": n, "dec_e1": a, "e2": b})).collect::<Vec<_>>(),
        },
    });
    Ok((report, dec.holds))
}

fn pairing_report(s: &Session) -> Result<(Value, bool)> {
    let gp = json::parse_pairing(&read(&s.input, "--in")?, field_flag(s)?)?;
    let failures = gp.verify();
    let perfect = failures.is_empty();
    let mut report = json!({
        "status": "ok",
        "perfect": perfect,
        "failures": failures.iter().map(|f| json!({"degree": f.degree, "reason": f.reason})).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if perfect {
        let data = pairing_duality(&gp);
        match data {
            Ok(ds) => report["duality"] = Value::Array(ds.iter().map(datum_json).collect()),
            Err(e @ Error::Falsified { .. }) => {
                ok = false;
                report = error_report(&e);
            }
            Err(e) => return Err(e),
        }
    }
    Ok((report, ok))
}

/// Thread pool for the check suites, capped by `NORI_KERNEL_THREADS`.
fn pool() -> rayon::ThreadPool {
    let threads = std::env::var("NORI_KERNEL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// One case of a suite: whether it passed, and what was compared.
pub struct CaseResult {
    pub pass: bool,
    pub detail: Value,
}

fn pass_if(pass: bool, detail: Value) -> Result<CaseResult> {
    Ok(CaseResult { pass, detail })
}

/// Runs case `index` of `suite`.
pub fn run_case(suite: Suite, field: Field, seed: u64, index: usize, max_len: usize) -> Result<CaseResult> {
    let rng = &mut case_rng(seed, index);
    match suite {
        Suite::PathInvariance => {
            let rep = corpus::random_acyclic_rep(rng, field, 5, 3, 2);
            let r = check_path_invariance(&rep, max_len)?;
            pass_if(r.equal, json!({"vertices": rep.dims().len(), "dim_edges": r.dim_edges, "dim_paths": r.dim_paths, "paths": r.paths}))
        }
        Suite::Coalgebra => {
            let rep = corpus::random_acyclic_rep(rng, field, 4, 3, 2);
            let c = compute_endvee(&rep, &Subgraph::full(rep.diagram()))?;
            let a = c.check_coassociativity().is_ok();
            let u = c.check_counit().is_ok();
            pass_if(a && u, json!({"dim": c.dim(), "coassociative": a, "counital": u}))
        }
        Suite::DisjointUnion => {
            let r1 = corpus::random_acyclic_rep(rng, field, 3, 2, 2);
            let r2 = corpus::random_acyclic_rep(rng, field, 3, 2, 2);
            let d = check_disjoint_union(&r1, &r2)?;
            pass_if(d.block_decomposes, json!({"dims": [d.dims.0, d.dims.1, d.dims.2]}))
        }
        Suite::Tensor => {
            let r1 = corpus::random_acyclic_rep(rng, field, 3, 2, 2);
            let r2 = corpus::random_acyclic_rep(rng, field, 3, 2, 2);
            let t = tensor_coalgebra(&r1, &r2)?;
            pass_if(
                t.dim_product == t.dims.0 * t.dims.1,
                json!({"dims": [t.dims.0, t.dims.1], "dim_product": t.dim_product, "vertices": r1.dims().len() * r2.dims().len()}),
            )
        }
        Suite::Presentation => {
            let case = corpus::random_presentation_case(rng, field, 8)?;
            let sub = Subgraph::full(case.rep.diagram());
            let p = present(&case.rep, &sub, &case.algebra, &case.module, DEFAULT_COPIES_PER_VERTEX)?;
            let g = &p.generator_map;
            let r = &p.relation_map;
            let recheck = rank(g) == case.module.dim()
                && (r.cols() == 0 || g.mul(r)?.is_zero())
                && rank(r) + case.module.dim() == g.cols();
            pass_if(
                p.certificate.holds() && recheck,
                json!({"algebra_dim": case.algebra.dim(), "module_dim": case.module.dim(), "generators": p.generators.len(), "relations": p.relations.len()}),
            )
        }
        Suite::Duality => {
            let order = 1 + index % 3;
            let b = Bialgebra::cyclic_group(field, order)?;
            let m1 = corpus::random_group_module(rng, &b, 2);
            let m2 = corpus::random_group_module(rng, &b, 3);
            let d1 = b.dual_module(&m1)?;
            let d2 = b.dual_module(&m2)?;
            let f = corpus::random_module_map(rng, &m1, &m2)?;
            let c = dual_of_cokernel(&f, &d1, &d2, Some(&b))?;
            let (d3, _) = ModuleMap::new(m1.clone(), m2.clone(), f.clone())?.cokernel()?;
            let tri = c.datum.triangles()?;
            pass_if(
                tri.d1 && tri.d2 && c.left_exact && c.datum.dim == d3.dim(),
                json!({"group_order": order, "dims": [m1.dim(), m2.dim()], "rank": rank(&f), "cokernel_dim": c.datum.dim, "d1": tri.d1, "d2": tri.d2}),
            )
        }
        Suite::Semisimple => {
            let zoo = corpus::algebra_zoo(field);
            let (name, a) = if index < zoo.len() {
                zoo[index].clone()
            } else {
                (format!("End(H) #{index}"), corpus::random_end_algebra(rng, field, 6)?)
            };
            let v = is_semisimple(&a);
            let good = radical_is_jacobson(&a, &v)?;
            pass_if(good, json!({"algebra": name, "dim": a.dim(), "verdict": verdict_json(&v)}))
        }
        Suite::Kunneth => {
            let c1 = corpus::random_complex(rng, field, 4, 3);
            let c2 = corpus::random_complex(rng, field, 4, 3);
            let r = kunneth_check(&c1, &c2)?;
            pass_if(r.holds, json!({"tensor": r.tensor, "predicted": r.predicted}))
        }
        Suite::Decalage => {
            let fc = corpus::random_filtered_complex(rng, field, 4, 3, 3);
            let d = dec_check(&fc)?;
            pass_if(d.holds, json!({"dims": fc.complex().dims(), "depth": fc.depth()}))
        }
        Suite::Lefschetz => {
            let a = 1 + index % 3;
            let b = index / 3 % 3;
            let ld = LefschetzDatum::projective(field, a).product(&LefschetzDatum::projective(field, b))?;
            let d = ld.decompose()?;
            let dims = ld.dims();
            // p^i has dimension dim H^i − dim H^(i−2) for i ≤ n
            let expected: Vec<usize> = (0..dims.len())
                .map(|i| if i <= ld.n() { dims[i] - if i >= 2 { dims[i - 2] } else { 0 } } else { 0 })
                .collect();
            pass_if(
                d.verified && d.primitive_dims == expected,
                json!({"factors": [a, b], "dims": dims, "primitive_dims": d.primitive_dims}),
            )
        }
        Suite::Reconstruction => {
            let n = 1 + index % 4;
            let vertices: Vec<(String, usize)> = (0..n).map(|i| (format!("v{i}"), 1)).collect();
            let vs: Vec<(&str, usize)> = vertices.iter().map(|(s, d)| (s.as_str(), *d)).collect();
            let rep = crate::diagram::build::rep(field, &vs, &[])?;
            let sub = Subgraph::full(rep.diagram());
            let a = Arc::new(compute_end(&rep, &sub)?);
            let taut: Vec<AlgModule> = (0..n).map(|v| tautological(&a, &sub, v)).collect::<Result<_>>()?;
            let census = simple_census(&a, &taut)?;
            pass_if(
                census.classes.len() == n && census.complete && a.dim() == n,
                json!({"n": n, "algebra_dim": a.dim(), "simple_count": census.classes.len(), "complete": census.complete}),
            )
        }
    }
}

/// The computed radical `R` is the Jacobson radical iff it is a nilpotent
/// two-sided ideal and `A/R` is semisimple; in characteristic 0 the latter is
/// nondegeneracy of the trace form of `A/R`.
fn radical_is_jacobson(a: &FiniteAlgebra, v: &SemisimpleVerdict) -> Result<bool> {
    let Some(r) = &v.radical else {
        return Ok(false);
    };
    if !is_two_sided_ideal(a, r) || !is_nilpotent(a, r) {
        return Ok(false);
    }
    if v.semisimple != Some(r.is_zero()) {
        return Ok(false);
    }
    if a.field().characteristic() != 0 {
        return Ok(true);
    }
    let q = r.quotient_map();
    let field = a.field();
    let free: Vec<usize> = (0..a.dim()).filter(|c| !r.pivots().contains(c)).collect();
    let d = free.len();
    let mut products = Vec::with_capacity(d * d);
    for &i in &free {
        for &j in &free {
            let p = q.mul_vec(&a.mul(&a.basis_vector(i), &a.basis_vector(j)))?;
            products.push(p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    let unit = q.mul_vec(a.unit())?;
    let quotient = FiniteAlgebra::from_structure(field, d, products, unit)?;
    Ok(rank(&quotient.trace_form()) == d)
}

/// Runs `n` cases of a suite on the worker pool; cases are reported by index.
pub fn suite_report(suite: Suite, field: Field, seed: u64, n: usize, max_len: usize) -> (Value, bool) {
    let results: Vec<(usize, Result<CaseResult>)> =
        pool().install(|| (0..n).into_par_iter().map(|i| (i, run_case(suite, field, seed, i, max_len))).collect());
    let mut passed = 0;
    let cases: Vec<Value> = results
        .into_iter()
        .map(|(i, r)| match r {
            Ok(c) => {
                passed += usize::from(c.pass);
                json!({"index": i, "pass": c.pass, "detail": c.detail})
            }
            Err(e) => json!({"index": i, "pass": false, "error": e.to_string()}),
        })
        .collect();
    let all = passed == n;
    let report = json!({
        "status": if all { "ok" } else { "falsified" },
        "suite": suite.name(),
        "statement": suite.statement(),
        "field": field.descriptor(),
        "seed": seed,
        "n": n,
        "passed": passed,
        "failed": n - passed,
        "cases": cases,
    });
    (report, all)
}

fn run_suite(suite: Suite, s: &Session) -> Result<(Value, bool)> {
    let field = field_flag(s)?.unwrap_or(Field::Rational);
    let n = s.n.unwrap_or_else(|| suite.default_cases());
    let max_len = s.max_len.unwrap_or(4);
    if max_len == 0 {
        return Err(Error::Input("--max-len must be at least 1".into()));
    }
    Ok(suite_report(suite, field, s.seed, n, max_len))
}

/// Map from vertex id to tautological module dimension, used in tests.
pub fn tautological_dims(rep: &Representation) -> Result<BTreeMap<String, usize>> {
    let sub = Subgraph::full(rep.diagram());
    let a = Arc::new(compute_end(rep, &sub)?);
    sub.vertices()
        .iter()
        .map(|&v| Ok((rep.diagram().vertices()[v].id.clone(), tautological(&a, &sub, v)?.dim())))
        .collect()
}
