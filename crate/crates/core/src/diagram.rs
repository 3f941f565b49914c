//! Finite directed multigraphs and their representations in finite-dimensional
//! vector spaces.
//!
//! Orientation: an edge `f : N → P` stores the matrix of the linear map
//! `H(N) → H(P)`, so its shape is `dim H(P) × dim H(N)`. Every constraint
//! elsewhere in the crate is written against this stored direction; a user who
//! models a contravariant situation simply declares the edge the other way.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Geometric edge type tag; pure metadata.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    #[default]
    Plain,
    TypeI,
    TypeII,
    TypeIII,
}

/// Cohomological degree `i` and twist `w` attached to a vertex; pure metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MotivicLabel {
    pub degree: u32,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub label: Option<MotivicLabel>,
    pub initial: bool,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            label: None,
            initial: false,
        }
    }

    pub fn initial(id: impl Into<String>) -> Self {
        Vertex {
            initial: true,
            ..Vertex::new(id)
        }
    }

    pub fn labelled(id: impl Into<String>, degree: u32, twist: i64) -> Self {
        Vertex {
            label: Some(MotivicLabel { degree, twist }),
            ..Vertex::new(id)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Diagram {
    /// Builds a diagram; edge endpoints must index existing vertices.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let d = Diagram { vertices, edges };
        let problems = d.structural_violations();
        if problems.is_empty() {
            Ok(d)
        } else {
            Err(Error::Invalid(problems))
        }
    }

    pub(crate) fn new_unchecked(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        Diagram { vertices, edges }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.as_str()) {
                out.push(format!("vertex {:?}: duplicate id", v.id));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(e.id.as_str()) {
                out.push(format!("edge {:?}: duplicate id", e.id));
            }
            if e.src >= self.vertices.len() || e.dst >= self.vertices.len() {
                out.push(format!("edge {:?}: endpoint does not exist", e.id));
            }
        }
        if out.is_empty() {
            let comp = self.components();
            let mut initial_seen: HashMap<usize, &str> = HashMap::new();
            for (v, c) in self.vertices.iter().zip(&comp) {
                if v.initial {
                    if let Some(other) = initial_seen.insert(*c, &v.id) {
                        out.push(format!(
                            "vertex {:?}: second initial vertex in the component of {other:?}",
                            v.id
                        ));
                    }
                }
            }
        }
        out
    }

    /// Connected component index of every vertex (edges taken undirected).
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut ids = HashMap::new();
        (0..n)
            .map(|v| {
                let r = find(&mut parent, v);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn has_directed_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.src == v) {
                indeg[e.dst] -= 1;
                if indeg[e.dst] == 0 {
                    stack.push(e.dst);
                }
            }
        }
        seen < n
    }

    /// Shifts the twist of a labelled vertex by `n`.
    pub fn twist(&self, vertex: &str, n: i64) -> Result<Diagram> {
        let idx = self
            .vertex_index(vertex)
            .ok_or_else(|| Error::Input(format!("no vertex {vertex:?}")))?;
        let mut out = self.clone();
        let label = out.vertices[idx]
            .label
            .as_mut()
            .ok_or_else(|| Error::Input(format!("vertex {vertex:?} carries no motivic label")))?;
        label.twist += n;
        Ok(out)
    }
}

/// A finite subgraph, as sorted vertex and edge index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgraph {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Subgraph {
    pub fn full(d: &Diagram) -> Self {
        Subgraph {
            vertices: (0..d.vertices.len()).collect(),
            edges: (0..d.edges.len()).collect(),
        }
    }

    /// The vertices named plus every edge between them.
    pub fn induced(d: &Diagram, ids: &[&str]) -> Result<Self> {
        let vertices: BTreeSet<usize> = ids
            .iter()
            .map(|id| {
                d.vertex_index(id)
                    .ok_or_else(|| Error::Input(format!("no vertex {id:?}")))
            })
            .collect::<Result<_>>()?;
        let edges = d
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| vertices.contains(&e.src) && vertices.contains(&e.dst))
            .map(|(i, _)| i)
            .collect();
        Ok(Subgraph {
            vertices: vertices.into_iter().collect(),
            edges,
        })
    }

    /// Explicit vertex and edge sets; every chosen edge must have both endpoints chosen.
    pub fn new(d: &Diagram, vertex_ids: &[&str], edge_ids: &[&str]) -> Result<Self> {
        let base = Subgraph::induced(d, vertex_ids)?;
        let edges: BTreeSet<usize> = edge_ids
            .iter()
            .map(|id| {
                d.edge_index(id)
                    .ok_or_else(|| Error::Input(format!("no edge {id:?}")))
            })
            .collect::<Result<_>>()?;
        for &e in &edges {
            if !base.edges.contains(&e) {
                return Err(Error::Input(format!(
                    "edge {:?} leaves the chosen vertex set",
                    d.edges[e].id
                )));
            }
        }
        Ok(Subgraph {
            vertices: base.vertices,
            edges: edges.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
            && self.edges.iter().all(|e| other.edges.contains(e))
    }
}

/// A representation `H` of a [`Diagram`]: a dimension per vertex and a matrix per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    diagram: Diagram,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        field: Field,
        diagram: Diagram,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        let rep = Representation {
            field,
            diagram,
            dims,
            maps,
        };
        rep.validate().map_err(Error::Invalid)?;
        Ok(rep)
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(
        field: Field,
        diagram: Diagram,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Self {
        Representation {
            field,
            diagram,
            dims,
            maps,
        }
    }

    /// Every violated shape or structure invariant, one message per problem.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let d = &self.diagram;
        let mut out = d.structural_violations();
        if self.dims.len() != d.vertices.len() {
            out.push(format!(
                "{} dimensions for {} vertices",
                self.dims.len(),
                d.vertices.len()
            ));
        }
        if self.maps.len() != d.edges.len() {
            out.push(format!(
                "{} matrices for {} edges",
                self.maps.len(),
                d.edges.len()
            ));
        }
        if !out.is_empty() {
            return Err(out);
        }
        for (e, m) in d.edges.iter().zip(&self.maps) {
            if m.field() != self.field {
                out.push(format!(
                    "edge {:?}: matrix over {} in a representation over {}",
                    e.id,
                    m.field(),
                    self.field
                ));
            }
            let want = (self.dims[e.dst], self.dims[e.src]);
            if m.shape() != want {
                out.push(format!(
                    "edge {:?}: matrix is {}x{} but dim H({})={} and dim H({})={} require {}x{}",
                    e.id,
                    m.rows(),
                    m.cols(),
                    d.vertices[e.src].id,
                    want.1,
                    d.vertices[e.dst].id,
                    want.0,
                    want.0,
                    want.1
                ));
            }
        }
        for (v, &dim) in d.vertices.iter().zip(&self.dims) {
            if v.initial && dim != 0 {
                out.push(format!(
                    "vertex {:?}: initial vertices must carry the zero space, found dimension {dim}",
                    v.id
                ));
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex]
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, edge: usize) -> &Matrix {
        &self.maps[edge]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.diagram
            .vertex_index(id)
            .ok_or_else(|| Error::Input(format!("no vertex {id:?}")))
    }

    pub fn twist(&self, vertex: &str, n: i64) -> Result<Representation> {
        Ok(Representation {
            diagram: self.diagram.twist(vertex, n)?,
            ..self.clone()
        })
    }

    /// Restriction to a subgraph, re-indexed in the subgraph's order.
    pub fn restrict(&self, sub: &Subgraph) -> Representation {
        let pos: HashMap<usize, usize> = sub
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let vertices = sub
            .vertices
            .iter()
            .map(|&v| self.diagram.vertices[v].clone())
            .collect();
        let edges = sub
            .edges
            .iter()
            .map(|&e| {
                let edge = &self.diagram.edges[e];
                Edge {
                    src: pos[&edge.src],
                    dst: pos[&edge.dst],
                    ..edge.clone()
                }
            })
            .collect();
        Representation {
            field: self.field,
            diagram: Diagram::new_unchecked(vertices, edges),
            dims: sub.vertices.iter().map(|&v| self.dims[v]).collect(),
            maps: sub.edges.iter().map(|&e| self.maps[e].clone()).collect(),
        }
    }

    /// All composites of at most `max_len` edges, plus the empty path at every vertex.
    pub fn path_closure(&self, max_len: usize) -> Result<PathClosure> {
        if max_len == 0 {
            return Err(Error::Input("path length bound must be at least 1".into()));
        }
        let mut paths: Vec<Path> = (0..self.dims.len())
            .map(|v| Path {
                word: Vec::new(),
                src: v,
                dst: v,
                matrix: Matrix::identity(self.field, self.dims[v]),
            })
            .collect();
        let mut frontier: Vec<usize> = (0..paths.len()).collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for &p in &frontier {
                for (ei, e) in self.diagram.edges.iter().enumerate() {
                    if e.src != paths[p].dst {
                        continue;
                    }
                    let mut word = paths[p].word.clone();
                    word.push(ei);
                    let matrix = self.maps[ei].mul(&paths[p].matrix)?;
                    next.push(paths.len());
                    paths.push(Path {
                        word,
                        src: paths[p].src,
                        dst: e.dst,
                        matrix,
                    });
                }
            }
            frontier = next;
        }
        Ok(PathClosure { max_len, paths })
    }

    fn check_same_field(&self, other: &Representation) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `H ⊗ H'` on the product graph: vertex `(M, N)` carries `H(M) ⊗ H'(N)`.
    pub fn tensor_product(&self, other: &Representation) -> Result<Representation> {
        self.product_with(
            other,
            |a, b| a * b,
            |f, id| f.kronecker(id),
            |id, g| id.kronecker(g),
        )
    }

    /// `H × H'` on the product graph: vertex `(M, N)` carries `H(M) ⊕ H'(N)`.
    pub fn direct_sum_product(&self, other: &Representation) -> Result<Representation> {
        let field = self.field;
        self.product_with(
            other,
            |a, b| a + b,
            |f, id| Matrix::block_diag(field, &[f.clone(), id.clone()]),
            |id, g| Matrix::block_diag(field, &[id.clone(), g.clone()]),
        )
    }

    /// Shared product-graph construction. Vertices are pairs in lexicographic
    /// declaration order; edges are `(f, N)` for every edge `f` and vertex `N`,
    /// followed by `(M, g)`, i.e. the generators of `Paths(Δ) × Paths(Δ')`.
    fn product_with(
        &self,
        other: &Representation,
        combine_dims: impl Fn(usize, usize) -> usize,
        left_edge: impl Fn(&Matrix, &Matrix) -> Result<Matrix>,
        right_edge: impl Fn(&Matrix, &Matrix) -> Result<Matrix>,
    ) -> Result<Representation> {
        self.check_same_field(other)?;
        let (d1, d2) = (&self.diagram, &other.diagram);
        let n2 = d2.vertices.len();
        let at = |a: usize, b: usize| a * n2 + b;
        let mut vertices = Vec::new();
        let mut dims = Vec::new();
        for (a, va) in d1.vertices.iter().enumerate() {
            for (b, vb) in d2.vertices.iter().enumerate() {
                let label = match (va.label, vb.label) {
                    (Some(x), Some(y)) => Some(MotivicLabel {
                        degree: x.degree + y.degree,
                        twist: x.twist + y.twist,
                    }),
                    _ => None,
                };
                vertices.push(Vertex {
                    id: format!("({},{})", va.id, vb.id),
                    label,
                    initial: va.initial && vb.initial,
                });
                dims.push(combine_dims(self.dims[a], other.dims[b]));
            }
        }
        let mut edges = Vec::new();
        let mut maps = Vec::new();
        for (ei, e) in d1.edges.iter().enumerate() {
            for (b, vb) in d2.vertices.iter().enumerate() {
                edges.push(Edge {
                    id: format!("({},{})", e.id, vb.id),
                    src: at(e.src, b),
                    dst: at(e.dst, b),
                    kind: e.kind,
                });
                maps.push(left_edge(
                    &self.maps[ei],
                    &Matrix::identity(self.field, other.dims[b]),
                )?);
            }
        }
        for (a, va) in d1.vertices.iter().enumerate() {
            for (ei, e) in d2.edges.iter().enumerate() {
                edges.push(Edge {
                    id: format!("({},{})", va.id, e.id),
                    src: at(a, e.src),
                    dst: at(a, e.dst),
                    kind: e.kind,
                });
                maps.push(right_edge(
                    &Matrix::identity(self.field, self.dims[a]),
                    &other.maps[ei],
                )?);
            }
        }
        Representation::new(
            self.field,
            Diagram::new_unchecked(vertices, edges),
            dims,
            maps,
        )
    }

    /// Disjoint union. When ids collide, every id is prefixed with `a.` or `b.`.
    pub fn disjoint_union(&self, other: &Representation) -> Result<Representation> {
        self.check_same_field(other)?;
        let ids: HashSet<&str> = self
            .diagram
            .vertices
            .iter()
            .map(|v| v.id.as_str())
            .chain(self.diagram.edges.iter().map(|e| e.id.as_str()))
            .collect();
        let clash = other
            .diagram
            .vertices
            .iter()
            .map(|v| v.id.as_str())
            .chain(other.diagram.edges.iter().map(|e| e.id.as_str()))
            .any(|id| ids.contains(id));
        let rename = |prefix: &str, id: &str| {
            if clash {
                format!("{prefix}.{id}")
            } else {
                id.to_string()
            }
        };
        let shift = self.diagram.vertices.len();
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (prefix, d, off) in [("a", &self.diagram, 0), ("b", &other.diagram, shift)] {
            vertices.extend(d.vertices.iter().map(|v| Vertex {
                id: rename(prefix, &v.id),
                ..v.clone()
            }));
            edges.extend(d.edges.iter().map(|e| Edge {
                id: rename(prefix, &e.id),
                src: e.src + off,
                dst: e.dst + off,
                kind: e.kind,
            }));
        }
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        let maps = self.maps.iter().chain(&other.maps).cloned().collect();
        Representation::new(
            self.field,
            Diagram::new_unchecked(vertices, edges),
            dims,
            maps,
        )
    }
}

/// A path of the diagram with the composite of its edge matrices.
#[derive(Clone, Debug)]
pub struct Path {
    /// Edge indices in traversal order; empty for an identity path.
    pub word: Vec<usize>,
    pub src: usize,
    pub dst: usize,
    pub matrix: Matrix,
}

/// The truncated path category of a represented diagram.
#[derive(Clone, Debug)]
pub struct PathClosure {
    pub max_len: usize,
    pub paths: Vec<Path>,
}

impl PathClosure {
    pub fn nonempty(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(|p| !p.word.is_empty())
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Plain => "plain",
            EdgeKind::TypeI => "I",
            EdgeKind::TypeII => "II",
            EdgeKind::TypeIII => "III",
        })
    }
}

/// Test and example helpers: build representations tersely.
pub mod build {
    use super::*;

    /// `vertices` as `(id, dim)`, `edges` as `(id, src, dst, matrix)`.
    pub fn rep(
        field: Field,
        vertices: &[(&str, usize)],
        edges: &[(&str, &str, &str, Matrix)],
    ) -> Result<Representation> {
        let vs: Vec<Vertex> = vertices.iter().map(|(id, _)| Vertex::new(*id)).collect();
        let index = |id: &str| {
            vs.iter()
                .position(|v| v.id == id)
                .ok_or_else(|| Error::Input(format!("no vertex {id:?}")))
        };
        let es = edges
            .iter()
            .map(|(id, s, t, _)| {
                Ok(Edge {
                    id: id.to_string(),
                    src: index(s)?,
                    dst: index(t)?,
                    kind: EdgeKind::Plain,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = vertices.iter().map(|(_, d)| *d).collect();
        let maps = edges.iter().map(|(.., m)| m.clone()).collect();
        Representation::new(field, Diagram::new(vs, es)?, dims, maps)
    }

    /// A single vertex `pt` with `H(pt) = F^dim` and no edges.
    pub fn point(field: Field, dim: usize) -> Representation {
        rep(field, &[("pt", dim)], &[]).expect("valid")
    }

    /// A vertex `pt` of dimension `dim` plus an initial vertex `0` with an edge `0 → pt`.
    pub fn point_with_initial(field: Field, dim: usize) -> Representation {
        let d = Diagram::new(
            vec![Vertex::initial("0"), Vertex::new("pt")],
            vec![Edge {
                id: "i".into(),
                src: 0,
                dst: 1,
                kind: EdgeKind::Plain,
            }],
        )
        .expect("valid");
        Representation::new(field, d, vec![0, dim], vec![Matrix::zeros(field, dim, 0)])
            .expect("valid")
    }
}
