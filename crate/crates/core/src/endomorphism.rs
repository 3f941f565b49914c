//! `End(H|_D)` as the kernel of the edge constraints, its dual coalgebra, and
//! the structural statements about them: restriction to subgraphs, invariance
//! under passing to the path category, products with initial objects and
//! disjoint unions.

use crate::algebra::{Coalgebra, CoalgebraMap, FiniteAlgebra, Realization};
use crate::diagram::{Representation, Subgraph};
use crate::error::{Error, Result};
use crate::linalg::{rank, BlockSystem, Matrix, Subspace, Term};

fn constraint_system(rep: &Representation, sub: &Subgraph) -> Result<BlockSystem> {
    let field = rep.field();
    let shapes: Vec<(usize, usize)> = sub.vertices().iter().map(|&v| (rep.dim(v), rep.dim(v))).collect();
    let mut sys = BlockSystem::new(field, &shapes);
    let block = |v: usize| sub.vertices().binary_search(&v).expect("edge endpoints lie in the subgraph");
    for &e in sub.edges() {
        let edge = &rep.diagram().edges()[e];
        let (s, t) = (edge.src, edge.dst);
        if rep.dim(s) == 0 || rep.dim(t) == 0 {
            continue;
        }
        let a = rep.map(e);
        // η_dst · A = A · η_src
        sys.add_equation(rep.dim(t), rep.dim(s), &[Term::Right(block(t), a), Term::NegLeft(a, block(s))])?;
    }
    Ok(sys)
}

/// The solution space of the edge constraints over `sub`, inside `∏_M End(H(M))`
/// flattened in subgraph vertex order.
pub fn end_space(rep: &Representation, sub: &Subgraph) -> Result<Subspace> {
    Ok(constraint_system(rep, sub)?.solve())
}

/// `End(H|_D)` with its echelon basis of compatible tuples. An empty subgraph
/// gives the zero algebra.
pub fn compute_end(rep: &Representation, sub: &Subgraph) -> Result<FiniteAlgebra> {
    let field = rep.field();
    let sys = constraint_system(rep, sub)?;
    let space = sys.solve();
    let basis: Vec<Vec<Matrix>> = space.basis().iter().map(|b| sys.split(b)).collect();
    for (n, tuple) in basis.iter().enumerate() {
        check_tuple(rep, sub, tuple).map_err(|w| {
            Error::falsified("basis tuples satisfy every edge constraint", format!("basis element {n}: {w}"))
        })?;
    }
    let blocks = sub.vertices().iter().map(|&v| rep.dim(v)).collect();
    let algebra = FiniteAlgebra::from_realization_unchecked(field, Realization::new(field, blocks, basis)?)?;
    algebra.verify()?;
    Ok(algebra)
}

/// `End^∨(H|_D)`, the dual of [`compute_end`] with its laws verified.
pub fn compute_endvee(rep: &Representation, sub: &Subgraph) -> Result<Coalgebra> {
    let c = compute_end(rep, sub)?.dual();
    c.verify()?;
    Ok(c)
}

fn check_tuple(rep: &Representation, sub: &Subgraph, tuple: &[Matrix]) -> std::result::Result<(), String> {
    let block = |v: usize| sub.vertices().binary_search(&v).expect("in subgraph");
    for &e in sub.edges() {
        let edge = &rep.diagram().edges()[e];
        let a = rep.map(e);
        let lhs = tuple[block(edge.dst)].mul(a).map_err(|e| e.to_string())?;
        let rhs = a.mul(&tuple[block(edge.src)]).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("edge {:?} does not commute", edge.id));
        }
    }
    Ok(())
}

/// Restriction `End(H|_{D'}) → End(H|_D)` and its dual coalgebra map.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// `dim End(D) × dim End(D')`: coordinates of the projected tuples.
    pub algebra_map: Matrix,
    pub coalgebra_map: CoalgebraMap,
    /// Surjectivity is not automatic: a subgraph can see endomorphisms that no
    /// compatible tuple on the larger graph extends.
    pub surjective: bool,
}

pub fn restriction_map(rep: &Representation, small: &Subgraph, large: &Subgraph) -> Result<Restriction> {
    if !small.is_subgraph_of(large) {
        return Err(Error::Input("the smaller subgraph is not contained in the larger one".into()));
    }
    let field = rep.field();
    let end_small = compute_end(rep, small)?;
    let end_large = compute_end(rep, large)?;
    let positions: Vec<usize> = small
        .vertices()
        .iter()
        .map(|v| large.vertices().binary_search(v).expect("subgraph"))
        .collect();
    let real_small = end_small.realization().expect("computed algebras are realized");
    let real_large = end_large.realization().expect("computed algebras are realized");
    let mut m = Matrix::zeros(field, end_small.dim(), end_large.dim());
    for (j, tuple) in real_large.basis().iter().enumerate() {
        let projected: Vec<Matrix> = positions.iter().map(|&p| tuple[p].clone()).collect();
        let coords = real_small.coordinates(field, &projected).ok_or_else(|| {
            Error::falsified(
                "restriction of a compatible tuple is compatible",
                format!("basis element {j} of the larger algebra"),
            )
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    end_large.check_morphism(&end_small, &m)?;
    let coalgebra_map = CoalgebraMap { matrix: m.transpose() };
    coalgebra_map.check(&end_small.dual(), &end_large.dual())?;
    Ok(Restriction {
        surjective: rank(&m) == end_small.dim(),
        algebra_map: m,
        coalgebra_map,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInvariance {
    pub equal: bool,
    pub dim_edges: usize,
    pub dim_paths: usize,
    pub paths: usize,
}

/// Compares the solution space of the edge constraints with that of every
/// composite of length at most `max_len`, as subspaces of the same product.
pub fn check_path_invariance(rep: &Representation, max_len: usize) -> Result<PathInvariance> {
    let full = Subgraph::full(rep.diagram());
    let by_edges = end_space(rep, &full)?;
    let closure = rep.path_closure(max_len)?;
    let shapes: Vec<(usize, usize)> = rep.dims().iter().map(|&d| (d, d)).collect();
    let mut sys = BlockSystem::new(rep.field(), &shapes);
    let mut count = 0;
    for p in closure.nonempty() {
        count += 1;
        if rep.dim(p.src) == 0 || rep.dim(p.dst) == 0 {
            continue;
        }
        sys.add_equation(
            rep.dim(p.dst),
            rep.dim(p.src),
            &[Term::Right(p.dst, &p.matrix), Term::NegLeft(&p.matrix, p.src)],
        )?;
    }
    let by_paths = sys.solve();
    Ok(PathInvariance {
        equal: by_edges == by_paths,
        dim_edges: by_edges.dim(),
        dim_paths: by_paths.dim(),
        paths: count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialProduct {
    pub dim_product: usize,
    pub dim_factors: (usize, usize),
    /// `End(H_1 × H_2) ≅ End(H_1) × End(H_2)` through the block-diagonal embedding.
    pub isomorphic: bool,
}

fn require_initial(rep: &Representation, which: &str) -> Result<usize> {
    let d = rep.diagram();
    let init = d
        .vertices()
        .iter()
        .position(|v| v.initial)
        .ok_or_else(|| Error::Precondition(format!("{which} diagram has no vertex flagged initial")))?;
    for (p, v) in d.vertices().iter().enumerate() {
        if p != init && !d.edges().iter().any(|e| e.src == init && e.dst == p) {
            return Err(Error::Precondition(format!(
                "{which} diagram lacks an edge from the initial vertex {:?} to {:?}",
                d.vertices()[init].id,
                v.id
            )));
        }
    }
    Ok(init)
}

/// The product formula for diagrams with initial objects carrying the zero
/// space: `End(H_1 × H_2) = End(H_1) × End(H_2)` on the direct-sum product.
pub fn check_initial_object_product(rep1: &Representation, rep2: &Representation) -> Result<InitialProduct> {
    require_initial(rep1, "first")?;
    require_initial(rep2, "second")?;
    let field = rep1.field();
    let prod = rep1.direct_sum_product(rep2)?;
    let e1 = compute_end(rep1, &Subgraph::full(rep1.diagram()))?;
    let e2 = compute_end(rep2, &Subgraph::full(rep2.diagram()))?;
    let ep = compute_end(&prod, &Subgraph::full(prod.diagram()))?;
    let factors = e1.direct_product(&e2)?;
    let mut isomorphic = ep.dim() == factors.dim();
    if isomorphic {
        let (n1, n2) = (rep1.dims().len(), rep2.dims().len());
        let r1 = e1.realization().expect("realized");
        let r2 = e2.realization().expect("realized");
        let zero1 = vec![field.zero(); e1.dim()];
        let zero2 = vec![field.zero(); e2.dim()];
        let mut phi = Matrix::zeros(field, ep.dim(), factors.dim());
        for k in 0..factors.dim() {
            let (a, b) = if k < e1.dim() {
                (r1.element(field, &e1.basis_vector(k)), r2.element(field, &zero2))
            } else {
                (r1.element(field, &zero1), r2.element(field, &e2.basis_vector(k - e1.dim())))
            };
            let mut tuple = Vec::with_capacity(n1 * n2);
            for x in &a {
                for y in &b {
                    tuple.push(Matrix::block_diag(field, &[x.clone(), y.clone()])?);
                }
            }
            match ep.realization().expect("realized").coordinates(field, &tuple) {
                Some(coords) => {
                    for (i, c) in coords.into_iter().enumerate() {
                        phi.set(i, k, c);
                    }
                }
                None => {
                    isomorphic = false;
                    break;
                }
            }
        }
        isomorphic = isomorphic && rank(&phi) == ep.dim() && factors.check_morphism(&ep, &phi).is_ok();
    }
    Ok(InitialProduct {
        dim_product: ep.dim(),
        dim_factors: (e1.dim(), e2.dim()),
        isomorphic,
    })
}

#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub dims: (usize, usize, usize),
    /// The union's coalgebra equals the direct sum of the two, constant for constant.
    pub block_decomposes: bool,
}

pub fn check_disjoint_union(rep1: &Representation, rep2: &Representation) -> Result<DisjointUnion> {
    let u = rep1.disjoint_union(rep2)?;
    let c1 = compute_endvee(rep1, &Subgraph::full(rep1.diagram()))?;
    let c2 = compute_endvee(rep2, &Subgraph::full(rep2.diagram()))?;
    let cu = compute_endvee(&u, &Subgraph::full(u.diagram()))?;
    Ok(DisjointUnion {
        dims: (c1.dim(), c2.dim(), cu.dim()),
        block_decomposes: cu == c1.direct_sum(&c2)?,
    })
}
