//! Modules over a finite algebra `A = End(H|_D)`, standing in for comodules over
//! its predual: tautological modules, Hom spaces, kernels and cokernels,
//! presentations by tautological modules, quotients by the kernel ideal of an
//! exact functor, and semisimplicity tests.

use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::diagram::{Representation, Subgraph};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{
    image, inverse, is_positive_definite, kernel, leading_principal_minors, rank, BlockSystem, Matrix, Subspace, Term,
};

/// A finite-dimensional left module: one action matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct AlgModule {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for AlgModule {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && same_algebra(&self.algebra, &other.algebra)
    }
}

fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl AlgModule {
    /// Checks the unit law and `ρ(b_i)ρ(b_j) = Σ_k c_ij^k ρ(b_k)`.
    pub fn new(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = AlgModule { algebra, dim, action };
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        AlgModule { algebra, dim, action }
    }

    pub fn zero(algebra: Arc<FiniteAlgebra>) -> Self {
        let action = vec![Matrix::zeros(algebra.field(), 0, 0); algebra.dim()];
        AlgModule { algebra, dim: 0, action }
    }

    /// The regular left module `A`.
    pub fn regular(algebra: Arc<FiniteAlgebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(&algebra.basis_vector(i))).collect();
        AlgModule {
            dim: algebra.dim(),
            algebra,
            action,
        }
    }

    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        let field = a.field();
        if self.action.len() != a.dim() {
            return Err(Error::shape(
                "module",
                format!("{} action matrices for an algebra of dimension {}", self.action.len(), a.dim()),
            ));
        }
        for (i, m) in self.action.iter().enumerate() {
            if m.shape() != (self.dim, self.dim) || m.field() != field {
                return Err(Error::shape("module", format!("action of b_{i} is {:?}, module has dimension {}", m.shape(), self.dim)));
            }
        }
        if !self.act(a.unit()).is_identity() {
            return Err(Error::falsified("the unit acts as the identity", "ρ(1) ≠ id"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j])?;
                let rhs = self.act_sparse(a.product(i, j));
                if lhs != rhs {
                    return Err(Error::falsified(
                        "module axiom ρ(b_i)ρ(b_j) = ρ(b_i b_j)",
                        format!("fails for (i, j) = ({i}, {j})"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(a)` for an algebra element in coordinates.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("same shape");
            }
        }
        out
    }

    fn act_sparse(&self, a: &[(usize, Scalar)]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (k, c) in a {
            out = out.add(&self.action[*k].scale(c)).expect("same shape");
        }
        out
    }

    pub fn direct_sum(&self, other: &AlgModule) -> Result<AlgModule> {
        check_same_algebra(self, other)?;
        let field = self.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| Matrix::block_diag(field, &[x.clone(), y.clone()]))
            .collect::<Result<_>>()?;
        Ok(AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action,
        })
    }

    pub fn direct_sum_all(algebra: Arc<FiniteAlgebra>, parts: &[AlgModule]) -> Result<AlgModule> {
        parts.iter().try_fold(AlgModule::zero(algebra), |acc, m| acc.direct_sum(m))
    }

    /// The submodule carried by an invariant subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace) -> Result<(AlgModule, ModuleMap)> {
        let incl = sub.inclusion();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols = m.mul(&incl)?;
                let mut out = Matrix::zeros(self.field(), sub.dim(), sub.dim());
                for j in 0..sub.dim() {
                    let coords = sub.coordinates(&cols.column(j)).ok_or_else(|| {
                        Error::Precondition("subspace is not invariant under the action".into())
                    })?;
                    for (i, c) in coords.into_iter().enumerate() {
                        out.set(i, j, c);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let k = AlgModule {
            algebra: self.algebra.clone(),
            dim: sub.dim(),
            action,
        };
        let map = ModuleMap::new_unchecked(k.clone(), self.clone(), incl);
        Ok((k, map))
    }

    /// The quotient by an invariant subspace, with its projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(AlgModule, ModuleMap)> {
        let q = sub.quotient_map();
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let mut section = Matrix::zeros(self.field(), self.dim, free.len());
        for (j, &c) in free.iter().enumerate() {
            section.set(c, j, self.field().one());
        }
        for m in &self.action {
            if !q.mul(m)?.mul(&sub.inclusion())?.is_zero() {
                return Err(Error::Precondition("subspace is not invariant under the action".into()));
            }
        }
        let action = self
            .action
            .iter()
            .map(|m| q.mul(m)?.mul(&section))
            .collect::<Result<Vec<_>>>()?;
        let c = AlgModule {
            algebra: self.algebra.clone(),
            dim: free.len(),
            action,
        };
        let map = ModuleMap::new_unchecked(self.clone(), c.clone(), q);
        Ok((c, map))
    }
}

fn check_same_algebra(a: &AlgModule, b: &AlgModule) -> Result<()> {
    if !same_algebra(&a.algebra, &b.algebra) {
        return Err(Error::Input("modules over different algebras".into()));
    }
    Ok(())
}

/// A module homomorphism, `matrix` of shape `target.dim × source.dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub source: AlgModule,
    pub target: AlgModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: AlgModule, target: AlgModule, matrix: Matrix) -> Result<Self> {
        check_same_algebra(&source, &target)?;
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::shape(
                "module map",
                format!("{:?} for {} → {}", matrix.shape(), source.dim, target.dim),
            ));
        }
        for (i, (s, t)) in source.action.iter().zip(&target.action).enumerate() {
            if matrix.mul(s)? != t.mul(&matrix)? {
                return Err(Error::Input(format!("matrix does not intertwine the action of b_{i}")));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: AlgModule, target: AlgModule, matrix: Matrix) -> Self {
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &AlgModule) -> Self {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim))
    }

    pub fn zero(source: &AlgModule, target: &AlgModule) -> Self {
        ModuleMap::new_unchecked(source.clone(), target.clone(), Matrix::zeros(source.field(), target.dim, source.dim))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        Ok(ModuleMap::new_unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)?))
    }

    pub fn kernel(&self) -> Result<(AlgModule, ModuleMap)> {
        self.source.submodule(&kernel(&self.matrix))
    }

    pub fn cokernel(&self) -> Result<(AlgModule, ModuleMap)> {
        self.target.quotient(&image(&self.matrix))
    }

    /// Factorization `V ↠ im f ↪ W`.
    pub fn image(&self) -> Result<(AlgModule, ModuleMap, ModuleMap)> {
        let im = image(&self.matrix);
        let (m, incl) = self.target.submodule(&im)?;
        let mut proj = Matrix::zeros(self.source.field(), im.dim(), self.source.dim);
        for j in 0..self.source.dim {
            let coords = im.coordinates(&self.matrix.column(j)).expect("column lies in the image");
            for (i, c) in coords.into_iter().enumerate() {
                proj.set(i, j, c);
            }
        }
        let surj = ModuleMap::new_unchecked(self.source.clone(), m.clone(), proj);
        Ok((m, surj, incl))
    }
}

/// A basis of `Hom_A(V, W)`.
pub fn hom_space(v: &AlgModule, w: &AlgModule) -> Result<Vec<ModuleMap>> {
    check_same_algebra(v, w)?;
    Ok(hom_basis(v, w)?
        .into_iter()
        .map(|m| ModuleMap::new_unchecked(v.clone(), w.clone(), m))
        .collect())
}

fn hom_basis(v: &AlgModule, w: &AlgModule) -> Result<Vec<Matrix>> {
    let mut sys = BlockSystem::new(v.field(), &[(w.dim, v.dim)]);
    if v.dim > 0 && w.dim > 0 {
        for (s, t) in v.action.iter().zip(&w.action) {
            sys.add_equation(w.dim, v.dim, &[Term::Right(0, s), Term::NegLeft(t, 0)])?;
        }
    }
    Ok(sys.solve().basis().iter().map(|b| sys.split(b).remove(0)).collect())
}

pub fn hom_dim(v: &AlgModule, w: &AlgModule) -> Result<usize> {
    check_same_algebra(v, w)?;
    Ok(hom_basis(v, w)?.len())
}

/// `h(M)`: the space `H(M)` on which a tuple acts through its `M` component.
pub fn tautological(algebra: &Arc<FiniteAlgebra>, sub: &Subgraph, vertex: usize) -> Result<AlgModule> {
    let block = sub
        .vertices()
        .binary_search(&vertex)
        .map_err(|_| Error::Input(format!("vertex {vertex} is not in the subgraph")))?;
    let real = algebra
        .realization()
        .ok_or_else(|| Error::Input("tautological modules need an algebra of compatible tuples".into()))?;
    if real.blocks().len() != sub.vertices().len() {
        return Err(Error::Input("algebra was not computed on this subgraph".into()));
    }
    let action = real.basis().iter().map(|t| t[block].clone()).collect();
    Ok(AlgModule::new_unchecked(algebra.clone(), real.blocks()[block], action))
}

/// `⊕ h(M_i) → ⊕ h(N_j) → V → 0`, vertices listed with multiplicity.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub relations: Vec<usize>,
    /// `V.dim × Σ dim h(N_j)`.
    pub generator_map: Matrix,
    /// `Σ dim h(N_j) × Σ dim h(M_i)`.
    pub relation_map: Matrix,
    pub certificate: ExactnessCertificate,
}

/// Ranks establishing exactness at the middle and surjectivity at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub dim_module: usize,
    pub dim_generators: usize,
    pub dim_relations: usize,
    pub rank_generator_map: usize,
    pub rank_relation_map: usize,
    pub composite_zero: bool,
}

impl ExactnessCertificate {
    pub fn holds(&self) -> bool {
        self.composite_zero
            && self.rank_generator_map == self.dim_module
            && self.rank_relation_map == self.dim_generators - self.dim_module
    }
}

/// Default cap on copies of one tautological module in a cover.
pub const DEFAULT_COPIES_PER_VERTEX: usize = 8;

/// Covers `target` by copies of the tautological modules: returns the chosen
/// vertices and the matrix of `⊕ h(N_j) → target`. Fails when the images of all
/// maps from tautological modules span a proper submodule, which no cover can fix.
fn cover(
    taut: &[(usize, AlgModule)],
    target: &AlgModule,
    cap: usize,
    what: &str,
) -> Result<(Vec<usize>, Matrix)> {
    let field = target.field();
    let mut covered = Subspace::zero(field, target.dim);
    let mut chosen = Vec::new();
    let mut blocks: Vec<Matrix> = Vec::new();
    'outer: for (vertex, h) in taut {
        let mut used = 0;
        for phi in hom_basis(h, target)? {
            if covered.dim() == target.dim {
                break 'outer;
            }
            let img = image(&phi);
            if img.is_subspace_of(&covered) {
                continue;
            }
            if used == cap {
                return Err(Error::Precondition(format!(
                    "cover of the {what} needs more than {cap} copies of one tautological module"
                )));
            }
            used += 1;
            covered = covered.sum(&img);
            chosen.push(*vertex);
            blocks.push(phi);
        }
    }
    if covered.dim() < target.dim {
        return Err(Error::falsified(
            "every module is a quotient of a finite sum of tautological modules",
            format!(
                "the images of all maps from tautological modules span only {} of the {} dimensions of the {what}",
                covered.dim(),
                target.dim
            ),
        ));
    }
    let m = if blocks.is_empty() {
        Matrix::zeros(field, target.dim, 0)
    } else {
        Matrix::hcat(field, target.dim, &blocks)?
    };
    Ok((chosen, m))
}

/// Presents `V` by tautological modules over `End(H|_D)`: cover `V`, then cover
/// the kernel of the cover. The result is certified by exact ranks.
pub fn present(
    rep: &Representation,
    sub: &Subgraph,
    algebra: &Arc<FiniteAlgebra>,
    v: &AlgModule,
    cap: usize,
) -> Result<Presentation> {
    if !same_algebra(algebra, v.algebra()) {
        return Err(Error::Input("module is not over the given algebra".into()));
    }
    let field = v.field();
    let taut: Vec<(usize, AlgModule)> = sub
        .vertices()
        .iter()
        .filter(|&&m| rep.dim(m) > 0)
        .map(|&m| Ok((m, tautological(algebra, sub, m)?)))
        .collect::<Result<_>>()?;

    if let Some((m, h)) = taut.iter().find(|(_, h)| h == v) {
        let generator_map = Matrix::identity(field, h.dim);
        let relation_map = Matrix::zeros(field, h.dim, 0);
        let certificate = certify(&generator_map, &relation_map);
        return Ok(Presentation {
            generators: vec![*m],
            relations: Vec::new(),
            generator_map,
            relation_map,
            certificate,
        });
    }

    // The first cover step is order independent: its image is the trace of the
    // tautological modules in V. The kernel step is not, so several orders are tried.
    let mut tried = 0;
    for order in cover_orders(&taut) {
        let ordered: Vec<(usize, AlgModule)> = order.iter().map(|&i| taut[i].clone()).collect();
        let (generators, generator_map) = cover(&ordered, v, cap, "module")?;
        let parts: Vec<AlgModule> = generators
            .iter()
            .map(|g| taut.iter().find(|(m, _)| m == g).expect("chosen from the list").1.clone())
            .collect();
        let sum = AlgModule::direct_sum_all(algebra.clone(), &parts)?;
        let pi = ModuleMap::new_unchecked(sum, v.clone(), generator_map.clone());
        let (k, incl) = pi.kernel()?;
        tried += 1;
        let Ok((relations, rel_into_k)) = cover(&ordered, &k, cap, "kernel of the cover") else {
            continue;
        };
        let relation_map = if relations.is_empty() {
            Matrix::zeros(field, generator_map.cols(), 0)
        } else {
            incl.matrix.mul(&rel_into_k)?
        };
        let certificate = certify(&generator_map, &relation_map);
        if !certificate.holds() {
            return Err(Error::falsified("presentation is exact", format!("{certificate:?}")));
        }
        return Ok(Presentation {
            generators,
            relations,
            generator_map,
            relation_map,
            certificate,
        });
    }
    Err(Error::Precondition(format!(
        "none of the {tried} covers tried has a kernel generated by tautological modules"
    )))
}

/// Orders in which tautological modules are offered to the cover: smallest
/// first, as given, largest first, then every permutation when there are at most five.
fn cover_orders(taut: &[(usize, AlgModule)]) -> Vec<Vec<usize>> {
    let n = taut.len();
    let mut by_dim: Vec<usize> = (0..n).collect();
    by_dim.sort_by_key(|&i| taut[i].1.dim);
    let mut orders = vec![by_dim.clone(), (0..n).collect(), by_dim.into_iter().rev().collect()];
    if n <= 5 {
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut orders);
    }
    let mut seen = std::collections::BTreeSet::new();
    orders.retain(|o| seen.insert(o.clone()));
    orders
}

fn permutations(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == perm.len() {
        out.push(perm.clone());
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, out);
        perm.swap(k, i);
    }
}

fn certify(generator_map: &Matrix, relation_map: &Matrix) -> ExactnessCertificate {
    let composite_zero = relation_map.cols() == 0
        || generator_map.rows() == 0
        || generator_map.mul(relation_map).map(|m| m.is_zero()).unwrap_or(false);
    ExactnessCertificate {
        dim_module: generator_map.rows(),
        dim_generators: generator_map.cols(),
        dim_relations: relation_map.cols(),
        rank_generator_map: rank(generator_map),
        rank_relation_map: rank(relation_map),
        composite_zero,
    }
}

/// The exact functor `V ↦ eV` for an idempotent `e`, e.g. projection to one
/// factor of `F × F`-modules.
#[derive(Clone, Debug)]
pub struct IdempotentFunctor {
    pub idempotent: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct QuotientEntry {
    pub source: usize,
    pub target: usize,
    pub hom_dim: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    /// `Hom → Hom / I` in the Hom basis coordinates.
    pub projection: Matrix,
}

#[derive(Clone, Debug)]
pub struct QuotientTable {
    pub functor_dims: Vec<usize>,
    pub entries: Vec<QuotientEntry>,
    pub absorption_checked: usize,
}

/// `Hom(c_1, c_2) / I(c_1, c_2)` for every ordered pair of the sample, where
/// `I` is the set of maps the functor sends to zero. Both absorption laws of an
/// ideal are checked on all composable basis triples.
pub fn quotient_by_kernel(functor: &IdempotentFunctor, modules: &[AlgModule]) -> Result<QuotientTable> {
    let Some(first) = modules.first() else {
        return Ok(QuotientTable {
            functor_dims: Vec::new(),
            entries: Vec::new(),
            absorption_checked: 0,
        });
    };
    let algebra = first.algebra().clone();
    let e = &functor.idempotent;
    if e.len() != algebra.dim() {
        return Err(Error::Input(format!("idempotent has {} coordinates, algebra has dimension {}", e.len(), algebra.dim())));
    }
    if e.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition(
            "the zero functor kills every object; it is not a faithful exact functor on any nonzero sample".into(),
        ));
    }
    if algebra.mul(e, e) != *e {
        return Err(Error::Precondition("functor is not exact: the given element is not idempotent (e² ≠ e)".into()));
    }
    for m in modules {
        check_same_algebra(first, m)?;
    }
    let field = algebra.field();
    let projectors: Vec<Matrix> = modules.iter().map(|m| m.act(e)).collect();
    let functor_dims = projectors.iter().map(rank).collect();
    let n = modules.len();
    let homs: Vec<Vec<Vec<Matrix>>> = (0..n)
        .map(|s| (0..n).map(|t| hom_basis(&modules[s], &modules[t])).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    // I(s, t) in hom coordinates: maps vanishing on e·V_s.
    let ideals: Vec<Vec<Subspace>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    let basis = &homs[s][t];
                    let cols: Vec<Vec<Scalar>> = basis
                        .iter()
                        .map(|phi| phi.mul(&projectors[s]).expect("shape").to_vec())
                        .collect();
                    let width = modules[t].dim * modules[s].dim;
                    if basis.is_empty() || width == 0 {
                        return Ok(Subspace::full(field, basis.len()));
                    }
                    let m = Matrix::from_rows(field, basis.len(), transpose_rows(&cols, width))?;
                    Ok(kernel(&m))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let in_ideal = |s: usize, f: &Matrix| -> bool { f.mul(&projectors[s]).map(|m| m.is_zero()).unwrap_or(false) };
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // I(a,b) ∘ Hom ⊆ I and Hom ∘ I(b,c) ⊆ I on basis elements.
                for f in ideals[a][b].basis() {
                    let fm = combine(field, &homs[a][b], f, modules[b].dim, modules[a].dim);
                    for g in &homs[b][c] {
                        checked += 1;
                        if !in_ideal(a, &g.mul(&fm)?) {
                            return Err(Error::falsified("kernel of a functor is an ideal", format!("Hom({b},{c}) ∘ I({a},{b}) leaves I")));
                        }
                    }
                }
                for g in ideals[b][c].basis() {
                    let gm = combine(field, &homs[b][c], g, modules[c].dim, modules[b].dim);
                    for f in &homs[a][b] {
                        checked += 1;
                        if !in_ideal(a, &gm.mul(f)?) {
                            return Err(Error::falsified("kernel of a functor is an ideal", format!("I({b},{c}) ∘ Hom({a},{b}) leaves I")));
                        }
                    }
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let ideal = &ideals[s][t];
            let projection = ideal.quotient_map();
            entries.push(QuotientEntry {
                source: s,
                target: t,
                hom_dim: homs[s][t].len(),
                ideal_dim: ideal.dim(),
                quotient_dim: projection.rows(),
                projection,
            });
        }
    }
    Ok(QuotientTable {
        functor_dims,
        entries,
        absorption_checked: checked,
    })
}

fn transpose_rows(cols: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    (0..width).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

fn combine(field: Field, basis: &[Matrix], coords: &[Scalar], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for (c, m) in coords.iter().zip(basis) {
        if !c.is_zero() {
            out = out.add(&m.scale(c)).expect("same shape");
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Characteristic 0: the radical of `tr(L_a L_b)` is the Jacobson radical.
    TraceForm,
    /// Characteristic p: the trace radical is zero, or is a nilpotent ideal.
    TraceRadical,
    /// Characteristic p: maximal nilpotent left ideal found by enumeration.
    Exhaustive,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct SemisimpleVerdict {
    pub semisimple: Option<bool>,
    pub radical: Option<Subspace>,
    pub method: RadicalMethod,
}

/// Largest number of elements enumerated by the characteristic-p fallback.
pub const EXHAUSTIVE_BOUND: u64 = 1 << 16;

pub fn is_semisimple(a: &FiniteAlgebra) -> SemisimpleVerdict {
    let t = kernel(&a.trace_form());
    if a.field().characteristic() == 0 {
        return SemisimpleVerdict {
            semisimple: Some(t.is_zero()),
            radical: Some(t),
            method: RadicalMethod::TraceForm,
        };
    }
    if t.is_zero() || (is_two_sided_ideal(a, &t) && is_nilpotent(a, &t)) {
        return SemisimpleVerdict {
            semisimple: Some(t.is_zero()),
            radical: Some(t),
            method: RadicalMethod::TraceRadical,
        };
    }
    let p = u64::from(a.field().characteristic());
    let fits = (0..t.dim()).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= EXHAUSTIVE_BOUND));
    if fits.is_none() {
        return SemisimpleVerdict {
            semisimple: None,
            radical: None,
            method: RadicalMethod::Inconclusive,
        };
    }
    // The radical is contained in the trace radical; enumerate it.
    let mut rad = Subspace::zero(a.field(), a.dim());
    let field = a.field();
    let mut digits = vec![0u32; t.dim()];
    loop {
        let coords: Vec<Scalar> = digits.iter().map(|&d| field.from_i64(i64::from(d))).collect();
        let x = t.combine(&coords);
        if !rad.contains(&x) {
            let candidate = rad.sum(&left_ideal(a, &x));
            if is_nilpotent(a, &candidate) {
                rad = candidate;
            }
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if u64::from(digits[i]) < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    SemisimpleVerdict {
        semisimple: Some(rad.is_zero()),
        radical: Some(rad),
        method: RadicalMethod::Exhaustive,
    }
}

/// `A x`.
pub fn left_ideal(a: &FiniteAlgebra, x: &[Scalar]) -> Subspace {
    let vectors = (0..a.dim()).map(|i| a.mul(&a.basis_vector(i), x)).collect();
    Subspace::span(a.field(), a.dim(), vectors).expect("ambient matches")
}

fn subspace_product(a: &FiniteAlgebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut vectors = Vec::new();
    for x in s.basis() {
        for y in t.basis() {
            vectors.push(a.mul(x, y));
        }
    }
    Subspace::span(a.field(), a.dim(), vectors).expect("ambient matches")
}

pub fn is_two_sided_ideal(a: &FiniteAlgebra, s: &Subspace) -> bool {
    let all = Subspace::full(a.field(), a.dim());
    subspace_product(a, &all, s).is_subspace_of(s) && subspace_product(a, s, &all).is_subspace_of(s)
}

/// `S^k = 0` for some `k ≤ dim A + 1`.
pub fn is_nilpotent(a: &FiniteAlgebra, s: &Subspace) -> bool {
    let mut power = s.clone();
    for _ in 0..=a.dim() {
        if power.is_zero() {
            return true;
        }
        power = subspace_product(a, &power, s);
    }
    power.is_zero()
}

/// An involution `a ↦ a'` given as a matrix on coordinates.
#[derive(Clone, Debug)]
pub struct Involution {
    pub matrix: Matrix,
}

impl Involution {
    /// `a' = aᵗ` blockwise on a realized algebra.
    pub fn transpose(a: &FiniteAlgebra) -> Result<Self> {
        Self::from_tuple_map(a, |t| Ok(t.iter().map(Matrix::transpose).collect()))
    }

    /// `a' = J aᵗ J⁻¹` blockwise, `J` given per block.
    pub fn conjugate_transpose(a: &FiniteAlgebra, j: &[Matrix]) -> Result<Self> {
        let inv: Vec<Matrix> = j
            .iter()
            .map(|m| inverse(m).ok_or_else(|| Error::Input("J is not invertible".into())))
            .collect::<Result<_>>()?;
        Self::from_tuple_map(a, |t| {
            t.iter()
                .zip(j)
                .zip(&inv)
                .map(|((x, jm), ji)| jm.mul(&x.transpose())?.mul(ji))
                .collect()
        })
    }

    fn from_tuple_map(a: &FiniteAlgebra, f: impl Fn(&[Matrix]) -> Result<Vec<Matrix>>) -> Result<Self> {
        let real = a
            .realization()
            .ok_or_else(|| Error::Input("a matrix-level involution needs a realized algebra".into()))?;
        let mut m = Matrix::zeros(a.field(), a.dim(), a.dim());
        for (j, t) in real.basis().iter().enumerate() {
            let image = f(t)?;
            let coords = real.coordinates(a.field(), &image).ok_or_else(|| {
                Error::Precondition(format!("the involution moves basis element {j} out of the algebra"))
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(Involution { matrix: m })
    }

    /// Linear, involutive, unital and order-reversing on every basis pair.
    pub fn verify(&self, a: &FiniteAlgebra) -> Result<()> {
        let s = &self.matrix;
        if s.shape() != (a.dim(), a.dim()) {
            return Err(Error::shape("involution", format!("{:?} on an algebra of dimension {}", s.shape(), a.dim())));
        }
        if !s.mul(s)?.is_identity() {
            return Err(Error::Precondition("involution does not square to the identity".into()));
        }
        if s.mul_vec(a.unit())? != a.unit() {
            return Err(Error::Precondition("involution does not fix the unit".into()));
        }
        let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| s.column(i)).collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = s.mul_vec(&a.mul(&a.basis_vector(i), &a.basis_vector(j)))?;
                let rhs = a.mul(&images[j], &images[i]);
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "involution is not an anti-automorphism: (b_{i} b_{j})' ≠ b_{j}' b_{i}'"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct KleimanVerdict {
    /// `None` over a prime field, where definiteness has no meaning.
    pub positive_definite: Option<bool>,
    pub gram: Matrix,
    pub minors: Vec<Scalar>,
    /// A nonzero `x` with `tr(x x') ≤ 0` when the form is not definite.
    pub witness: Option<Vec<Scalar>>,
    pub semisimple: Option<bool>,
    /// The general test, consulted when the form is not definite.
    pub fallback: Option<SemisimpleVerdict>,
}

/// Semisimplicity from positive-definiteness of `(a, b) ↦ tr(a b')`. The trace
/// is taken in the realization when there is one, otherwise in the regular
/// representation. The form is symmetrized before testing.
pub fn kleiman_check(a: &FiniteAlgebra, involution: &Involution) -> Result<KleimanVerdict> {
    involution.verify(a)?;
    let field = a.field();
    let n = a.dim();
    let trace_of = |x: &[Scalar]| -> Scalar {
        match a.realization() {
            Some(real) => real
                .element(field, x)
                .iter()
                .map(|m| m.trace().expect("square"))
                .fold(field.zero(), |s, t| &s + &t),
            None => a.left_mult(x).trace().expect("square"),
        }
    };
    let primes: Vec<Vec<Scalar>> = (0..n).map(|j| involution.matrix.column(j)).collect();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, trace_of(&a.mul(&a.basis_vector(i), &primes[j])));
        }
    }
    if field.characteristic() != 0 {
        let fallback = is_semisimple(a);
        return Ok(KleimanVerdict {
            positive_definite: None,
            minors: Vec::new(),
            witness: None,
            semisimple: fallback.semisimple,
            fallback: Some(fallback),
            gram,
        });
    }
    let half = field.from_ratio(1, 2)?;
    let sym = gram.add(&gram.transpose())?.scale(&half);
    let minors = leading_principal_minors(&sym)?;
    let definite = is_positive_definite(&sym)?;
    if definite {
        return Ok(KleimanVerdict {
            positive_definite: Some(true),
            gram,
            minors,
            witness: None,
            semisimple: Some(true),
            fallback: None,
        });
    }
    let fallback = is_semisimple(a);
    Ok(KleimanVerdict {
        positive_definite: Some(false),
        witness: nonpositive_vector(&sym),
        gram,
        minors,
        semisimple: fallback.semisimple,
        fallback: Some(fallback),
    })
}

/// Symmetric elimination `Vᵗ G V = diag`; the first nonpositive pivot gives `x`
/// with `xᵗ G x ≤ 0`.
fn nonpositive_vector(g: &Matrix) -> Option<Vec<Scalar>> {
    let n = g.rows();
    let field = g.field();
    let mut m = g.clone();
    let mut v = Matrix::identity(field, n);
    for k in 0..n {
        let pivot = m.get(k, k).clone();
        if pivot.is_positive() != Some(true) {
            return Some(v.column(k));
        }
        let inv = pivot.inv().expect("positive");
        for j in k + 1..n {
            let f = m.get(k, j) * &inv;
            if f.is_zero() {
                continue;
            }
            for r in 0..n {
                let x = m.get(r, j) - &(&f * m.get(r, k));
                m.set(r, j, x);
            }
            for c in 0..n {
                let x = m.get(j, c) - &(&f * m.get(k, c));
                m.set(j, c, x);
            }
            for r in 0..n {
                let x = v.get(r, j) - &(&f * v.get(r, k));
                v.set(r, j, x);
            }
        }
    }
    None
}

/// Simple modules among a list of candidates, grouped by isomorphism.
#[derive(Clone, Debug)]
pub struct SimpleCensus {
    pub semisimple: Option<bool>,
    /// Candidate indices with `End_A = F` (the Schur class).
    pub schur: Vec<usize>,
    /// Isomorphism classes among the Schur-class candidates, by nonzero Hom.
    pub classes: Vec<Vec<usize>>,
    /// `Σ (dim S)² = dim A` over one representative per class: over a
    /// semisimple algebra this says the list exhausts the simple modules.
    pub complete: bool,
}

pub fn simple_census(a: &FiniteAlgebra, candidates: &[AlgModule]) -> Result<SimpleCensus> {
    let verdict = is_semisimple(a);
    let mut schur = Vec::new();
    for (i, m) in candidates.iter().enumerate() {
        if m.dim() > 0 && hom_dim(m, m)? == 1 {
            schur.push(i);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &schur {
        let mut placed = false;
        for class in classes.iter_mut() {
            if hom_dim(&candidates[class[0]], &candidates[i])? > 0 {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let total: usize = classes.iter().map(|c| candidates[c[0]].dim().pow(2)).sum();
    Ok(SimpleCensus {
        complete: verdict.semisimple == Some(true) && total == a.dim(),
        semisimple: verdict.semisimple,
        schur,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::{point, rep};
    use crate::endomorphism::compute_end;

    const Q: Field = Field::Rational;

    fn end_of(r: &Representation) -> (Subgraph, Arc<FiniteAlgebra>) {
        let sub = Subgraph::full(r.diagram());
        let a = Arc::new(compute_end(r, &sub).unwrap());
        (sub, a)
    }

    #[test]
    fn tautological_modules() {
        let r = point(Q, 2);
        let (sub, a) = end_of(&r);
        let h = tautological(&a, &sub, 0).unwrap();
        h.verify().unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(hom_dim(&h, &h).unwrap(), 1);
        let z = point(Q, 0);
        let (zs, za) = end_of(&z);
        assert_eq!(tautological(&za, &zs, 0).unwrap().dim(), 0);
    }

    #[test]
    fn hom_over_a_field_is_everything() {
        let a = Arc::new(FiniteAlgebra::matrix_algebra(Q, 1));
        let v = AlgModule::new(a.clone(), 3, vec![Matrix::identity(Q, 3)]).unwrap();
        assert_eq!(hom_dim(&v, &v).unwrap(), 9);
        let w = AlgModule::new(a, 2, vec![Matrix::identity(Q, 2)]).unwrap();
        let z = ModuleMap::zero(&v, &w);
        assert_eq!(z.kernel().unwrap().0.dim(), 3);
        assert_eq!(z.cokernel().unwrap().0.dim(), 2);
    }

    #[test]
    fn bad_actions_are_rejected() {
        let a = Arc::new(FiniteAlgebra::diagonal(Q, 2));
        // e_0 acting as a non-idempotent
        let bad = AlgModule::new(a, 1, vec![Matrix::from_i64(Q, &[&[2]]), Matrix::from_i64(Q, &[&[-1]])]);
        assert!(bad.is_err());
    }

    #[test]
    fn image_factorization() {
        let a = Arc::new(FiniteAlgebra::matrix_algebra(Q, 1));
        let v = AlgModule::new(a.clone(), 2, vec![Matrix::identity(Q, 2)]).unwrap();
        let f = ModuleMap::new(v.clone(), v.clone(), Matrix::from_i64(Q, &[&[1, 2], &[2, 4]])).unwrap();
        let (im, p, i) = f.image().unwrap();
        assert_eq!(im.dim(), 1);
        assert_eq!(i.compose(&p).unwrap().matrix, f.matrix);
    }

    #[test]
    fn presentation_of_a_tautological_module() {
        let r = point(Q, 2);
        let (sub, a) = end_of(&r);
        let h = tautological(&a, &sub, 0).unwrap();
        let p = present(&r, &sub, &a, &h, DEFAULT_COPIES_PER_VERTEX).unwrap();
        assert_eq!(p.generators, vec![0]);
        assert!(p.relations.is_empty());
        assert!(p.certificate.holds());
        let z = AlgModule::zero(a.clone());
        let pz = present(&r, &sub, &a, &z, DEFAULT_COPIES_PER_VERTEX).unwrap();
        assert!(pz.generators.is_empty());
    }

    #[test]
    fn presentation_with_relations() {
        // A → B, H(A) = F, H(B) = F², map e_1: End is 3-dimensional and the
        // simple quotient of h(B) needs a relation.
        let r = rep(Q, &[("A", 1), ("B", 2)], &[("f", "A", "B", Matrix::from_i64(Q, &[&[1], &[0]]))]).unwrap();
        let (sub, a) = end_of(&r);
        assert_eq!(a.dim(), 3);
        let hb = tautological(&a, &sub, 1).unwrap();
        let ha = tautological(&a, &sub, 0).unwrap();
        let f = &hom_space(&ha, &hb).unwrap()[0];
        let (c, _) = f.cokernel().unwrap();
        assert_eq!(c.dim(), 1);
        let p = present(&r, &sub, &a, &c, DEFAULT_COPIES_PER_VERTEX).unwrap();
        assert!(p.certificate.holds());
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn presentation_can_be_obstructed() {
        // 1 → 2 with H(1) = F², H(2) = F, map [0 1]: the simple module on which
        // the corner a acts is a submodule of h(1) and not a quotient of any h.
        let r = rep(Q, &[("1", 2), ("2", 1)], &[("f", "1", "2", Matrix::from_i64(Q, &[&[0, 1]]))]).unwrap();
        let (sub, a) = end_of(&r);
        let h1 = tautological(&a, &sub, 0).unwrap();
        let socle = Subspace::span(Q, 2, vec![vec![Q.one(), Q.zero()]]).unwrap();
        let (s, _) = h1.submodule(&socle).unwrap();
        let err = present(&r, &sub, &a, &s, DEFAULT_COPIES_PER_VERTEX).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn quotient_by_projection_functor() {
        let a = Arc::new(FiniteAlgebra::diagonal(Q, 2));
        let module = |d1: usize, d2: usize| {
            let e0 = Matrix::block_diag(Q, &[Matrix::identity(Q, d1), Matrix::zeros(Q, d2, d2)]).unwrap();
            let e1 = Matrix::block_diag(Q, &[Matrix::zeros(Q, d1, d1), Matrix::identity(Q, d2)]).unwrap();
            AlgModule::new(a.clone(), d1 + d2, vec![e0, e1]).unwrap()
        };
        let sample = vec![module(1, 2), module(2, 1)];
        let p1 = IdempotentFunctor { idempotent: vec![Q.one(), Q.zero()] };
        let t = quotient_by_kernel(&p1, &sample).unwrap();
        let e01 = &t.entries[1];
        assert_eq!((e01.hom_dim, e01.quotient_dim), (2 + 2, 2));
        let id = IdempotentFunctor { idempotent: vec![Q.one(), Q.one()] };
        assert!(quotient_by_kernel(&id, &sample).unwrap().entries.iter().all(|e| e.ideal_dim == 0));
        let zero = IdempotentFunctor { idempotent: vec![Q.zero(), Q.zero()] };
        assert!(quotient_by_kernel(&zero, &sample).is_err());
        let not_idem = IdempotentFunctor { idempotent: vec![Q.from_i64(2), Q.zero()] };
        assert!(quotient_by_kernel(&not_idem, &sample).is_err());
    }

    #[test]
    fn semisimplicity_examples() {
        assert_eq!(is_semisimple(&FiniteAlgebra::matrix_algebra(Q, 1)).semisimple, Some(true));
        let t2 = is_semisimple(&FiniteAlgebra::upper_triangular(Q, 2));
        assert_eq!(t2.semisimple, Some(false));
        let rad = t2.radical.unwrap();
        assert_eq!(rad.basis(), &[vec![Q.zero(), Q.one(), Q.zero()]]);
        assert_eq!(is_semisimple(&FiniteAlgebra::matrix_algebra(Q, 2)).semisimple, Some(true));
    }

    #[test]
    fn prime_characteristic_fallbacks() {
        let f2 = Field::prime(2).unwrap();
        // M_2(F_2): trace form is degenerate in characteristic 2 but the algebra is simple.
        let m2 = is_semisimple(&FiniteAlgebra::matrix_algebra(f2, 2));
        assert_eq!(m2.semisimple, Some(true));
        assert_eq!(m2.method, RadicalMethod::Exhaustive);
        let t2 = is_semisimple(&FiniteAlgebra::upper_triangular(Field::prime(5).unwrap(), 2));
        assert_eq!(t2.semisimple, Some(false));
        assert_eq!(t2.radical.unwrap().dim(), 1);
    }

    #[test]
    fn kleiman_examples() {
        let m2 = FiniteAlgebra::matrix_algebra(Q, 2);
        let v = kleiman_check(&m2, &Involution::transpose(&m2).unwrap()).unwrap();
        assert_eq!(v.positive_definite, Some(true));
        assert_eq!(v.semisimple, Some(true));
        let t2 = FiniteAlgebra::upper_triangular(Q, 2);
        assert!(Involution::transpose(&t2).is_err());
        let flip = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        let inv = Involution::conjugate_transpose(&t2, &[flip]).unwrap();
        let v = kleiman_check(&t2, &inv).unwrap();
        assert_eq!(v.positive_definite, Some(false));
        let w = v.witness.clone().unwrap();
        assert!(w.iter().any(|x| !x.is_zero()));
        let gw = v.gram.mul_vec(&w).unwrap();
        let q = w.iter().zip(&gw).fold(Q.zero(), |s, (x, y)| &s + &(x * y));
        assert_eq!(q.is_positive(), Some(false));
        assert_eq!(v.semisimple, Some(false));
        let id = Involution { matrix: Matrix::identity(Q, 3) };
        assert!(kleiman_check(&t2, &id).is_err());
    }

    #[test]
    fn isolated_vertices_have_one_simple_each() {
        for n in 1..=4 {
            let vertices: Vec<(String, usize)> = (0..n).map(|i| (format!("v{i}"), 1)).collect();
            let vs: Vec<(&str, usize)> = vertices.iter().map(|(s, d)| (s.as_str(), *d)).collect();
            let r = rep(Q, &vs, &[]).unwrap();
            let (sub, a) = end_of(&r);
            let hs: Vec<AlgModule> = (0..n).map(|v| tautological(&a, &sub, v).unwrap()).collect();
            let census = simple_census(&a, &hs).unwrap();
            assert_eq!(census.classes.len(), n);
            assert!(census.complete);
        }
    }
}
