//! JSON input documents and report helpers.
//!
//! Scalars are read from integers or strings `"n"`, `"n/d"` and always written
//! as strings (`"num/den"` over ℚ, the residue over 𝔽_p). Matrices are arrays of
//! rows; when a matrix has no rows its column count comes from context.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::comodule::{AlgModule, Involution};
use crate::diagram::{Diagram, Edge, EdgeKind, MotivicLabel, Representation, Vertex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::{Complex, FilteredComplex, GradedPairing, LefschetzDatum};
use crate::linalg::{Matrix, Subspace};
use crate::tannaka::{Bialgebra, DualityDatum};

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

pub type RawMatrix = Vec<Vec<RawScalar>>;

fn scalar(field: Field, raw: &RawScalar) -> Result<Scalar> {
    match raw {
        RawScalar::Int(n) => Ok(field.from_i64(*n)),
        RawScalar::Text(t) => field.parse(t),
    }
}

/// Reads a matrix that must have the given shape.
pub fn matrix(field: Field, raw: &RawMatrix, shape: (usize, usize), what: &str) -> Result<Matrix> {
    let (r, c) = shape;
    if raw.len() != r || raw.iter().any(|row| row.len() != c) {
        let found_cols = raw.first().map_or(0, Vec::len);
        return Err(Error::Input(format!(
            "{what}: expected a {r}×{c} matrix, found {}×{found_cols}",
            raw.len()
        )));
    }
    let data = raw.iter().flatten().map(|s| scalar(field, s)).collect::<Result<Vec<_>>>()?;
    Matrix::new(field, r, c, data)
}

/// Reads a square matrix, or a matrix with a known column count.
fn matrix_free(field: Field, raw: &RawMatrix, cols: Option<usize>, what: &str) -> Result<Matrix> {
    let c = cols.unwrap_or_else(|| raw.first().map_or(0, Vec::len));
    matrix(field, raw, (raw.len(), c), what)
}

fn vector(field: Field, raw: &[RawScalar], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if raw.len() != len {
        return Err(Error::Input(format!("{what}: expected {len} entries, found {}", raw.len())));
    }
    raw.iter().map(|s| scalar(field, s)).collect()
}

/// The field named in a document, reconciled with the command-line choice.
pub fn resolve_field(doc: Option<&str>, flag: Option<Field>) -> Result<Field> {
    let doc = doc.map(str::parse::<Field>).transpose()?;
    match (doc, flag) {
        (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(a, b)),
        (Some(f), _) | (None, Some(f)) => Ok(f),
        (None, None) => Ok(Field::Rational),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    i: u32,
    w: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    dim: usize,
    label: Option<RawLabel>,
    #[serde(default)]
    initial: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    src: String,
    dst: String,
    #[serde(rename = "type")]
    kind: Option<String>,
    matrix: Option<RawMatrix>,
}

#[derive(Deserialize)]
struct RawDiagram {
    field: Option<String>,
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<RawEdge>,
}

/// A represented diagram. An edge without a matrix carries the zero map.
pub fn parse_representation(text: &str, flag: Option<Field>) -> Result<Representation> {
    let raw: RawDiagram = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    let vertices: Vec<Vertex> = raw
        .vertices
        .iter()
        .map(|v| Vertex {
            id: v.id.clone(),
            label: v.label.as_ref().map(|l| MotivicLabel { degree: l.i, twist: l.w }),
            initial: v.initial,
        })
        .collect();
    let index: BTreeMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let find = |id: &str, edge: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Input(format!("edge {edge:?} refers to unknown vertex {id:?}")))
    };
    let dims: Vec<usize> = raw.vertices.iter().map(|v| v.dim).collect();
    let mut edges = Vec::with_capacity(raw.edges.len());
    let mut maps = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        let (src, dst) = (find(&e.src, &e.id)?, find(&e.dst, &e.id)?);
        let kind = match e.kind.as_deref() {
            None | Some("plain") => EdgeKind::Plain,
            Some("I") => EdgeKind::TypeI,
            Some("II") => EdgeKind::TypeII,
            Some("III") => EdgeKind::TypeIII,
            Some(other) => return Err(Error::Input(format!("edge {:?}: unknown type {other:?}", e.id))),
        };
        let shape = (dims[dst], dims[src]);
        maps.push(match &e.matrix {
            Some(m) => matrix(field, m, shape, &format!("edge {:?}", e.id))?,
            None => Matrix::zeros(field, shape.0, shape.1),
        });
        edges.push(Edge {
            id: e.id.clone(),
            src,
            dst,
            kind,
        });
    }
    let diagram = Diagram::new(vertices, edges)?;
    Representation::new(field, diagram, dims, maps)
}

pub fn representation_json(rep: &Representation) -> Value {
    let d = rep.diagram();
    let vertices: Vec<Value> = d
        .vertices()
        .iter()
        .zip(rep.dims())
        .map(|(v, dim)| {
            let mut o = json!({"id": v.id, "dim": dim});
            if let Some(l) = v.label {
                o["label"] = json!({"i": l.degree, "w": l.twist});
            }
            if v.initial {
                o["initial"] = json!(true);
            }
            o
        })
        .collect();
    let edges: Vec<Value> = d
        .edges()
        .iter()
        .zip(rep.maps())
        .map(|(e, m)| {
            json!({
                "id": e.id,
                "src": d.vertices()[e.src].id,
                "dst": d.vertices()[e.dst].id,
                "type": e.kind.to_string(),
                "matrix": matrix_json(m),
            })
        })
        .collect();
    json!({"field": rep.field().descriptor(), "vertices": vertices, "edges": edges})
}

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_text())
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawElement {
    Matrix(RawMatrix),
    Blocks(Vec<RawMatrix>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInvolution {
    Named(String),
    Matrix { matrix: RawMatrix },
    Conjugate { conjugate: Vec<RawMatrix> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    field: Option<String>,
    basis: Vec<RawElement>,
    involution: Option<RawInvolution>,
}

/// An algebra spanned by block-diagonal matrices. Each basis element is a
/// square matrix or a list of square blocks; the unit must lie in the span.
pub fn parse_algebra(text: &str, flag: Option<Field>) -> Result<(FiniteAlgebra, Option<Involution>)> {
    let raw: RawAlgebra = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    let basis = raw
        .basis
        .iter()
        .enumerate()
        .map(|(i, e)| match e {
            RawElement::Matrix(m) => Ok(vec![matrix_free(field, m, Some(m.len()), &format!("basis element {i}"))?]),
            RawElement::Blocks(bs) => bs
                .iter()
                .map(|m| matrix_free(field, m, Some(m.len()), &format!("basis element {i}")))
                .collect(),
        })
        .collect::<Result<Vec<Vec<Matrix>>>>()?;
    let blocks: Vec<usize> = basis.first().map(|t| t.iter().map(Matrix::rows).collect()).unwrap_or_default();
    if basis.iter().any(|t| t.iter().map(Matrix::rows).collect::<Vec<_>>() != blocks) {
        return Err(Error::Input("basis elements have different block shapes".into()));
    }
    let a = FiniteAlgebra::from_matrix_basis(field, blocks.clone(), basis)?;
    let inv = match raw.involution {
        None => None,
        Some(RawInvolution::Named(n)) if n == "transpose" => Some(Involution::transpose(&a)?),
        Some(RawInvolution::Named(n)) => return Err(Error::Input(format!("unknown involution {n:?}"))),
        Some(RawInvolution::Matrix { matrix: m }) => Some(Involution {
            matrix: matrix(field, &m, (a.dim(), a.dim()), "involution")?,
        }),
        Some(RawInvolution::Conjugate { conjugate }) => {
            if conjugate.len() != blocks.len() {
                return Err(Error::Input("conjugate involution needs one matrix per block".into()));
            }
            let js = conjugate
                .iter()
                .zip(&blocks)
                .map(|(m, &b)| matrix(field, m, (b, b), "involution block"))
                .collect::<Result<Vec<_>>>()?;
            Some(Involution::conjugate_transpose(&a, &js)?)
        }
    };
    Ok((a, inv))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupModule {
    field: Option<String>,
    group_order: usize,
    generator: RawMatrix,
    cokernel_of: Option<RawMap>,
    duality: Option<RawDuality>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDuality {
    dual_dim: usize,
    coevaluation: Vec<RawScalar>,
    evaluation: Vec<RawScalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    generator: RawMatrix,
    matrix: RawMatrix,
}

/// A representation of `ℤ/m` on which the generator acts by `generator`,
/// optionally with a map `f` into it from another one, for duals of cokernels.
pub struct GroupModuleInput {
    pub bialgebra: Bialgebra,
    pub module: AlgModule,
    pub cokernel_of: Option<(AlgModule, Matrix)>,
    /// Candidate coevaluation and evaluation supplied with the module.
    pub duality: Option<DualityDatum>,
}

fn group_module(b: &Bialgebra, g: &Matrix) -> Result<AlgModule> {
    let m = b.dim();
    let field = b.field();
    let mut action = vec![Matrix::identity(field, g.rows())];
    for k in 1..m {
        action.push(g.mul(&action[k - 1])?);
    }
    if !g.mul(&action[m - 1])?.is_identity() {
        return Err(Error::Input(format!("the generator does not have order dividing {m}")));
    }
    AlgModule::new(b.algebra.clone(), g.rows(), action)
}

pub fn parse_group_module(text: &str, flag: Option<Field>) -> Result<GroupModuleInput> {
    let raw: RawGroupModule = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    let bialgebra = Bialgebra::cyclic_group(field, raw.group_order)?;
    let g = matrix_free(field, &raw.generator, Some(raw.generator.len()), "generator")?;
    let module = group_module(&bialgebra, &g)?;
    let cokernel_of = match &raw.cokernel_of {
        None => None,
        Some(map) => {
            let g1 = matrix_free(field, &map.generator, Some(map.generator.len()), "source generator")?;
            let source = group_module(&bialgebra, &g1)?;
            let f = matrix(field, &map.matrix, (module.dim(), source.dim()), "cokernel_of.matrix")?;
            Some((source, f))
        }
    };
    let duality = match &raw.duality {
        None => None,
        Some(d) => {
            let (n, m) = (module.dim(), d.dual_dim);
            let coevaluation = matrix(field, &d.coevaluation.iter().map(|x| vec![x.clone()]).collect(), (m * n, 1), "duality.coevaluation")?;
            let evaluation = matrix(field, &vec![d.evaluation.clone()], (1, n * m), "duality.evaluation")?;
            Some(DualityDatum {
                dim: n,
                dual_dim: m,
                coevaluation,
                evaluation,
                module: None,
                dual: None,
            })
        }
    };
    Ok(GroupModuleInput {
        bialgebra,
        module,
        cokernel_of,
        duality,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    field: Option<String>,
    algebra: Vec<RawElement>,
    lift: BTreeMap<String, Vec<RawMatrix>>,
}

/// A target algebra `A` (by a matrix basis) and, per vertex, the action of
/// each basis element of `A` on `H(M)`.
pub fn parse_extension(
    text: &str,
    rep: &Representation,
) -> Result<(Arc<FiniteAlgebra>, BTreeMap<usize, AlgModule>)> {
    let raw: RawExtension = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), Some(rep.field()))?;
    let algebra_doc = json!({
        "field": field.descriptor(),
        "basis": serde_json::to_value(raw.algebra.iter().map(element_value).collect::<Vec<_>>())?,
    });
    let (a, _) = parse_algebra(&algebra_doc.to_string(), Some(field))?;
    let a = Arc::new(a);
    let mut lift = BTreeMap::new();
    for (id, mats) in &raw.lift {
        let v = rep.vertex_index(id)?;
        let n = rep.dim(v);
        if mats.len() != a.dim() {
            return Err(Error::Input(format!("lift of {id:?}: one matrix per basis element of A is needed")));
        }
        let action = mats
            .iter()
            .map(|m| matrix(field, m, (n, n), &format!("lift of {id:?}")))
            .collect::<Result<Vec<_>>>()?;
        lift.insert(v, AlgModule::new(a.clone(), n, action)?);
    }
    Ok((a, lift))
}

fn element_value(e: &RawElement) -> Value {
    let m = |m: &RawMatrix| -> Value {
        Value::Array(
            m.iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|s| match s {
                                RawScalar::Int(n) => json!(n),
                                RawScalar::Text(t) => json!(t),
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    match e {
        RawElement::Matrix(x) => m(x),
        RawElement::Blocks(bs) => Value::Array(bs.iter().map(m).collect()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    start: i64,
    /// Per degree, per filtration step, a spanning list of vectors.
    steps: Vec<Vec<Vec<Vec<RawScalar>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    field: Option<String>,
    #[serde(default)]
    start: i64,
    dims: Vec<usize>,
    #[serde(default)]
    differentials: Vec<RawMatrix>,
    filtration: Option<RawFiltration>,
}

pub fn parse_complex(text: &str, flag: Option<Field>) -> Result<(Complex, Option<FilteredComplex>)> {
    let raw: RawComplex = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    if raw.dims.is_empty() || raw.differentials.len() + 1 != raw.dims.len() {
        return Err(Error::Input(format!(
            "{} degrees need {} differentials",
            raw.dims.len(),
            raw.dims.len().saturating_sub(1)
        )));
    }
    let diffs = raw
        .differentials
        .iter()
        .enumerate()
        .map(|(k, m)| {
            matrix(field, m, (raw.dims[k + 1], raw.dims[k]), &format!("d^{}", raw.start + k as i64))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Complex::new(field, raw.start, raw.dims.clone(), diffs)?;
    let fc = match raw.filtration {
        None => None,
        Some(f) => {
            if f.steps.len() != raw.dims.len() {
                return Err(Error::Input("filtration must list every degree".into()));
            }
            let steps = f
                .steps
                .iter()
                .zip(&raw.dims)
                .map(|(degree, &dim)| {
                    degree
                        .iter()
                        .map(|vecs| {
                            let vs = vecs
                                .iter()
                                .map(|v| vector(field, v, dim, "filtration vector"))
                                .collect::<Result<Vec<_>>>()?;
                            Subspace::span(field, dim, vs)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Some(FilteredComplex::new(c.clone(), f.start, steps)?)
        }
    };
    Ok((c, fc))
}

pub fn complex_json(c: &Complex) -> Value {
    json!({
        "field": c.field().descriptor(),
        "start": c.start(),
        "dims": c.dims(),
        "differentials": c.diffs().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairingEntry {
    degree: usize,
    matrix: RawMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairing {
    field: Option<String>,
    dims: Vec<usize>,
    pairings: Vec<RawPairingEntry>,
}

/// Pairing matrices are read with whatever shape they have, so that a
/// non-square pairing is reported rather than rejected.
pub fn parse_pairing(text: &str, flag: Option<Field>) -> Result<GradedPairing> {
    let raw: RawPairing = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    let top = raw.dims.len().saturating_sub(1);
    let mut pairings = BTreeMap::new();
    for p in &raw.pairings {
        if p.degree > top {
            return Err(Error::Input(format!("pairing degree {} beyond {top}", p.degree)));
        }
        let shape = (raw.dims[p.degree], raw.dims[top - p.degree]);
        let m = matrix(field, &p.matrix, shape, &format!("pairing in degree {}", p.degree))?;
        if pairings.insert(p.degree, m).is_some() {
            return Err(Error::Input(format!("two pairings given in degree {}", p.degree)));
        }
    }
    GradedPairing::new(field, raw.dims, pairings)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLefschetz {
    field: Option<String>,
    n: usize,
    dims: Vec<usize>,
    ell: Vec<RawMatrix>,
}

pub fn parse_lefschetz(text: &str, flag: Option<Field>) -> Result<LefschetzDatum> {
    let raw: RawLefschetz = serde_json::from_str(text)?;
    let field = resolve_field(raw.field.as_deref(), flag)?;
    if raw.dims.len() != 2 * raw.n + 1 || raw.ell.len() != (2 * raw.n).saturating_sub(1) {
        return Err(Error::Input(format!(
            "relative dimension {} needs {} degrees and {} maps ℓ",
            raw.n,
            2 * raw.n + 1,
            (2 * raw.n).saturating_sub(1)
        )));
    }
    let ell = raw
        .ell
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(field, m, (raw.dims[i + 2], raw.dims[i]), &format!("ℓ on H^{i}")))
        .collect::<Result<Vec<_>>>()?;
    LefschetzDatum::new(field, raw.n, raw.dims, ell)
}

/// Which kind of document a text is, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Diagram,
    Algebra,
    Other,
}

pub fn document_kind(text: &str) -> Result<DocumentKind> {
    let v: Value = serde_json::from_str(text)?;
    Ok(if v.get("vertices").is_some() {
        DocumentKind::Diagram
    } else if v.get("basis").is_some() {
        DocumentKind::Algebra
    } else {
        DocumentKind::Other
    })
}
