//! Seeded random inputs for the `check` suites and the test corpora.
//!
//! Case `i` of a run with seed `s` draws from ChaCha8 seeded with `s` on stream
//! `i`, so cases are independent of each other and of evaluation order.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteAlgebra;
use crate::comodule::{hom_space, tautological, AlgModule};
use crate::diagram::{Diagram, Edge, EdgeKind, Representation, Subgraph, Vertex};
use crate::endomorphism::compute_end;
use crate::error::Result;
use crate::field::Field;
use crate::homology::{Complex, FilteredComplex};
use crate::linalg::{image, inverse, Matrix, Subspace};
use crate::tannaka::Bialgebra;

pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect();
    Matrix::new(field, rows, cols, data).expect("sized")
}

/// Vertices `0..n` with edges only from lower to higher index, so the diagram
/// is acyclic; roughly two fifths of the pairs get an edge, a few get two.
pub fn random_acyclic_rep(
    rng: &mut impl Rng,
    field: Field,
    max_vertices: usize,
    max_dim: usize,
    bound: i64,
) -> Representation {
    let n = rng.gen_range(1..=max_vertices);
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_dim)).collect();
    let vertices = (0..n).map(|i| Vertex::new(format!("v{i}"))).collect();
    let mut edges = Vec::new();
    let mut maps = Vec::new();
    for src in 0..n {
        for dst in src + 1..n {
            if !rng.gen_bool(0.4) {
                continue;
            }
            let copies = if rng.gen_bool(0.15) { 2 } else { 1 };
            for _ in 0..copies {
                edges.push(Edge {
                    id: format!("e{}", edges.len()),
                    src,
                    dst,
                    kind: EdgeKind::Plain,
                });
                maps.push(random_matrix(rng, field, dims[dst], dims[src], bound));
            }
        }
    }
    let diagram = Diagram::new(vertices, edges).expect("fresh ids");
    Representation::new(field, diagram, dims, maps).expect("shapes match")
}

/// A complex of `1..=max_len` terms in dimensions `0..=max_dim`: each
/// differential factors through the cokernel of the previous one.
pub fn random_complex(rng: &mut impl Rng, field: Field, max_len: usize, max_dim: usize) -> Complex {
    let len = rng.gen_range(1..=max_len);
    let start = rng.gen_range(-1..=1);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let q = match diffs.last() {
            Some(prev) => image(prev).quotient_map(),
            None => Matrix::identity(field, dims[k]),
        };
        let a = random_matrix(rng, field, dims[k + 1], q.rows(), 1);
        diffs.push(a.mul(&q).expect("shapes"));
    }
    Complex::new(field, start, dims, diffs).expect("d² = 0 by construction")
}

/// Closes a family of subspaces under the differential, degree by degree.
fn close_under_d(c: &Complex, mut w: Vec<Subspace>) -> Vec<Subspace> {
    for k in 1..w.len() {
        let pushed = w[k - 1].image_under(&c.diffs()[k - 1]).expect("shapes");
        w[k] = w[k].sum(&pushed);
    }
    w
}

fn random_vectors(rng: &mut impl Rng, field: Field, dim: usize) -> Subspace {
    let count = rng.gen_range(0..=dim);
    let vs = (0..count)
        .map(|_| (0..dim).map(|_| field.from_i64(rng.gen_range(-1..=1))).collect())
        .collect();
    Subspace::span(field, dim, vs).expect("sized")
}

/// A random complex with a filtration of `1..=max_depth` listed steps made of
/// nested subcomplexes.
pub fn random_filtered_complex(
    rng: &mut impl Rng,
    field: Field,
    max_len: usize,
    max_dim: usize,
    max_depth: usize,
) -> FilteredComplex {
    let c = random_complex(rng, field, max_len, max_dim);
    let depth = rng.gen_range(1..=max_depth);
    let p0 = rng.gen_range(-1..=1);
    let mut layers: Vec<Vec<Subspace>> = Vec::with_capacity(depth);
    let mut current: Vec<Subspace> = c.dims().iter().map(|&d| Subspace::zero(field, d)).collect();
    for _ in 1..depth {
        let grown = current
            .iter()
            .zip(c.dims())
            .map(|(w, &d)| w.sum(&random_vectors(rng, field, d)))
            .collect();
        current = close_under_d(&c, grown);
        layers.push(current.clone());
    }
    layers.push(c.dims().iter().map(|&d| Subspace::full(field, d)).collect());
    layers.reverse();
    let steps = (0..c.dims().len()).map(|k| layers.iter().map(|l| l[k].clone()).collect()).collect();
    FilteredComplex::new(c, p0, steps).expect("subcomplexes are preserved")
}

/// A random invertible matrix with small entries.
pub fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> (Matrix, Matrix) {
    loop {
        let p = random_matrix(rng, field, n, n, 1);
        if let Some(q) = inverse(&p) {
            return (p, q);
        }
    }
}

/// A representation of `ℤ/m` (`m ≤ 3`) over the bialgebra, built from
/// irreducible blocks in a random basis.
pub fn random_group_module(rng: &mut impl Rng, b: &Bialgebra, max_blocks: usize) -> AlgModule {
    let field = b.field();
    let m = b.dim();
    let mut blocks = Vec::new();
    for _ in 0..rng.gen_range(1..=max_blocks) {
        blocks.push(match (m, rng.gen_range(0..3)) {
            (2, 0) => Matrix::from_i64(field, &[&[-1]]),
            (3, 0) => Matrix::from_i64(field, &[&[0, -1], &[1, -1]]),
            _ => Matrix::identity(field, 1),
        });
    }
    let g = Matrix::block_diag(field, &blocks).expect("square blocks");
    let (p, q) = random_invertible(rng, field, g.rows());
    let g = p.mul(&g).and_then(|x| x.mul(&q)).expect("shapes");
    let mut action = vec![Matrix::identity(field, g.rows())];
    for k in 1..m {
        action.push(g.mul(&action[k - 1]).expect("shapes"));
    }
    AlgModule::new(b.algebra.clone(), g.rows(), action).expect("a group representation")
}

/// A random combination of a basis of `Hom(V, W)`.
pub fn random_module_map(rng: &mut impl Rng, v: &AlgModule, w: &AlgModule) -> Result<Matrix> {
    let field = v.field();
    let mut f = Matrix::zeros(field, w.dim(), v.dim());
    for phi in hom_space(v, w)? {
        let c = field.from_i64(rng.gen_range(-1..=1));
        f = f.add(&phi.matrix.scale(&c))?;
    }
    Ok(f)
}

/// A represented diagram, its algebra `End(H)` of dimension at most
/// `max_algebra_dim`, and a module `coker(⊕ h(M_i) → ⊕ h(N_j))` for a random
/// module map.
pub struct PresentationCase {
    pub rep: Representation,
    pub algebra: Arc<FiniteAlgebra>,
    pub module: AlgModule,
}

pub fn random_presentation_case(rng: &mut impl Rng, field: Field, max_algebra_dim: usize) -> Result<PresentationCase> {
    loop {
        let rep = random_acyclic_rep(rng, field, 4, 3, 2);
        let a = compute_end(&rep, &Subgraph::full(rep.diagram()))?;
        if a.dim() > max_algebra_dim {
            continue;
        }
        let algebra = Arc::new(a);
        let sub = Subgraph::full(rep.diagram());
        let n = rep.dims().len();
        let pick = |rng: &mut dyn rand::RngCore, lo: usize, hi: usize| -> Result<AlgModule> {
            let count = rng.gen_range(lo..=hi);
            let parts = (0..count)
                .map(|_| tautological(&algebra, &sub, rng.gen_range(0..n)))
                .collect::<Result<Vec<_>>>()?;
            AlgModule::direct_sum_all(algebra.clone(), &parts)
        };
        let target = pick(rng, 1, 3)?;
        let source = pick(rng, 1, 2)?;
        let f = random_module_map(rng, &source, &target)?;
        let (module, _) = target.quotient(&image(&f))?;
        // a zero module makes the case vacuous
        if module.dim() > 0 {
            return Ok(PresentationCase { rep, algebra, module });
        }
    }
}

/// Named algebras of dimension at most six, semisimple and not.
pub fn algebra_zoo(field: Field) -> Vec<(String, FiniteAlgebra)> {
    let mut zoo: Vec<(String, FiniteAlgebra)> = vec![
        ("F".into(), FiniteAlgebra::matrix_algebra(field, 1)),
        ("F^2".into(), FiniteAlgebra::diagonal(field, 2)),
        ("F^3".into(), FiniteAlgebra::diagonal(field, 3)),
        ("M_2".into(), FiniteAlgebra::matrix_algebra(field, 2)),
        ("T_2".into(), FiniteAlgebra::upper_triangular(field, 2)),
        ("T_3".into(), FiniteAlgebra::upper_triangular(field, 3)),
    ];
    let nilpotent = |n: usize| -> FiniteAlgebra {
        // F[x]/(x^n) realized by powers of a Jordan block
        let mut x = Matrix::zeros(field, n, n);
        for i in 0..n - 1 {
            x.set(i + 1, i, field.one());
        }
        let basis = (0..n).map(|k| vec![x.pow(k as u32).expect("square")]).collect();
        FiniteAlgebra::from_matrix_basis(field, vec![n], basis).expect("commutative basis")
    };
    zoo.push(("F[x]/x^2".into(), nilpotent(2)));
    zoo.push(("F[x]/x^3".into(), nilpotent(3)));
    let m2 = FiniteAlgebra::matrix_algebra(field, 2);
    let f = FiniteAlgebra::matrix_algebra(field, 1);
    zoo.push(("M_2 x F".into(), m2.direct_product(&f).expect("same field")));
    zoo.push(("T_2 x F".into(), FiniteAlgebra::upper_triangular(field, 2).direct_product(&f).expect("same field")));
    zoo.push(("F[x]/x^2 x F[x]/x^2".into(), nilpotent(2).direct_product(&nilpotent(2)).expect("same field")));
    zoo.push(("F[x]/x^2 (x) F[y]/y^2".into(), nilpotent(2).tensor(&nilpotent(2)).expect("same field")));
    zoo
}

/// `End(H)` for a random representation, retried until its dimension is at most `max_dim`.
pub fn random_end_algebra(rng: &mut impl Rng, field: Field, max_dim: usize) -> Result<FiniteAlgebra> {
    loop {
        let rep = random_acyclic_rep(rng, field, 3, 2, 1);
        let a = compute_end(&rep, &Subgraph::full(rep.diagram()))?;
        if a.dim() <= max_dim {
            return Ok(a);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn generation_is_reproducible() {
        let a = random_acyclic_rep(&mut case_rng(7, 3), Q, 5, 3, 2);
        let b = random_acyclic_rep(&mut case_rng(7, 3), Q, 5, 3, 2);
        assert_eq!(a.maps(), b.maps());
        assert_eq!(a.dims(), b.dims());
        assert!(!a.diagram().has_directed_cycle());
    }

    #[test]
    fn generated_complexes_and_filtrations_are_valid() {
        for i in 0..30 {
            let fc = random_filtered_complex(&mut case_rng(1, i), Q, 4, 3, 3);
            assert!(fc.depth() >= 1 && fc.depth() <= 3);
        }
    }

    #[test]
    fn zoo_dimensions() {
        for (name, a) in algebra_zoo(Q) {
            assert!(a.dim() <= 6, "{name}");
        }
    }

    #[test]
    fn presentation_cases() {
        for i in 0..5 {
            let c = random_presentation_case(&mut case_rng(3, i), Q, 8).unwrap();
            assert!(c.algebra.dim() <= 8);
        }
    }
}
