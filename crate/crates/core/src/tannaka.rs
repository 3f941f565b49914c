//! Tensor structure and duals: `End^∨(H ⊗ H') ≅ End^∨(H) ⊗ End^∨(H')`,
//! bialgebras and the tensor product of their modules, duality data with the
//! triangle identities, duals of cokernels, and the extension functor along a
//! lift of `H` through a faithful exact functor.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{CoalgebraMap, FiniteAlgebra, Sparse};
use crate::comodule::{hom_dim, AlgModule, ModuleMap};
use crate::diagram::{Representation, Subgraph};
use crate::endomorphism::compute_end;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{inverse, kernel, rank, Matrix};

/// Outcome of comparing `End^∨(H ⊗ H')` with `End^∨(H) ⊗ End^∨(H')`.
#[derive(Clone, Debug)]
pub struct TensorTheorem {
    pub dims: (usize, usize),
    pub dim_product: usize,
    /// `End^∨(H⊗H') → End^∨(H) ⊗ End^∨(H')`, dual to `η ⊗ η' ↦ (η_M ⊗ η'_N)`.
    pub isomorphism: CoalgebraMap,
}

/// Builds the comparison map and checks it is a coalgebra isomorphism; any
/// failure is a falsification.
pub fn tensor_coalgebra(rep1: &Representation, rep2: &Representation) -> Result<TensorTheorem> {
    let field = rep1.field();
    let prod = rep1.tensor_product(rep2)?;
    let e1 = compute_end(rep1, &Subgraph::full(rep1.diagram()))?;
    let e2 = compute_end(rep2, &Subgraph::full(rep2.diagram()))?;
    let ep = compute_end(&prod, &Subgraph::full(prod.diagram()))?;
    if ep.dim() != e1.dim() * e2.dim() {
        return Err(Error::falsified(
            "dim End(H⊗H') = dim End(H) · dim End(H')",
            format!("{} ≠ {} · {}", ep.dim(), e1.dim(), e2.dim()),
        ));
    }
    let et = e1.tensor(&e2)?;
    let target = ep.realization().expect("realized");
    let mut phi = Matrix::zeros(field, ep.dim(), et.dim());
    for (k, tuple) in et.realization().expect("realized").basis().iter().enumerate() {
        let coords = target.coordinates(field, tuple).ok_or_else(|| {
            Error::falsified(
                "η ⊗ η' is an endomorphism of H ⊗ H'",
                format!("tensor basis element {k} violates a product-edge constraint"),
            )
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            phi.set(i, k, c);
        }
    }
    let isomorphism = CoalgebraMap { matrix: phi.transpose() };
    if !isomorphism.is_isomorphism() {
        return Err(Error::falsified("the comparison map is invertible", format!("rank {} < {}", rank(&phi), ep.dim())));
    }
    isomorphism.check(&ep.dual(), &e1.dual().tensor(&e2.dual())?)?;
    Ok(TensorTheorem {
        dims: (e1.dim(), e2.dim()),
        dim_product: ep.dim(),
        isomorphism,
    })
}

/// An algebra with a compatible coproduct `Δ: A → A ⊗ A` and counit; modules
/// over it form a tensor category.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    pub algebra: Arc<FiniteAlgebra>,
    /// `coproduct[i]`: nonzero `(j, k, c)` with `Δ(b_i) = Σ c b_j ⊗ b_k`.
    pub coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
    /// Antipode as a matrix on coordinates, when duals are to be formed.
    pub antipode: Option<Matrix>,
}

impl Bialgebra {
    pub fn new(
        algebra: Arc<FiniteAlgebra>,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Option<Matrix>,
    ) -> Result<Self> {
        let b = Bialgebra {
            algebra,
            coproduct,
            counit,
            antipode,
        };
        b.verify()?;
        Ok(b)
    }

    /// The group algebra of `ℤ/m` with basis `g^0, …, g^{m−1}`: `Δ(g) = g ⊗ g`,
    /// `ε(g) = 1`, `S(g) = g⁻¹`.
    pub fn cyclic_group(field: Field, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Input("group order must be positive".into()));
        }
        let products = (0..m * m).map(|ij| vec![((ij / m + ij % m) % m, field.one())]).collect();
        let mut unit = vec![field.zero(); m];
        unit[0] = field.one();
        let algebra = Arc::new(FiniteAlgebra::from_structure(field, m, products, unit)?);
        let mut s = Matrix::zeros(field, m, m);
        for g in 0..m {
            s.set((m - g) % m, g, field.one());
        }
        Bialgebra::new(
            algebra,
            (0..m).map(|g| vec![(g, g, field.one())]).collect(),
            vec![field.one(); m],
            Some(s),
        )
    }

    /// The coproduct induced on `End(H)` by a product on the vertex spaces:
    /// `Δ(η)_{(M,N)} = m_{M,N}⁻¹ ∘ η_{M·N} ∘ m_{M,N}`, counit `η ↦ η_*`.
    pub fn from_pairing(rep: &Representation, pairing: &VertexPairing) -> Result<Self> {
        let field = rep.field();
        let n = rep.dims().len();
        pairing.verify(rep)?;
        let sub = Subgraph::full(rep.diagram());
        let a = compute_end(rep, &sub)?;
        let aa = a.tensor(&a)?;
        let real = a.realization().expect("realized");
        let inverses: Vec<Matrix> = pairing
            .products
            .iter()
            .map(|(_, m)| inverse(m).expect("verified invertible"))
            .collect();
        let mut coproduct = Vec::with_capacity(a.dim());
        for (k, tuple) in real.basis().iter().enumerate() {
            let mut image = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let (p, m) = &pairing.products[x * n + y];
                    image.push(inverses[x * n + y].mul(&tuple[*p])?.mul(m)?);
                }
            }
            let coords = aa.realization().expect("realized").coordinates(field, &image).ok_or_else(|| {
                Error::Precondition(format!(
                    "the pairing does not respect the edges: Δ(b_{k}) is not in End(H) ⊗ End(H)"
                ))
            })?;
            let d = a.dim();
            coproduct.push(
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(ij, c)| (ij / d, ij % d, c))
                    .collect(),
            );
        }
        let counit = real.basis().iter().map(|t| t[pairing.unit].get(0, 0).clone()).collect();
        Bialgebra::new(Arc::new(a), coproduct, counit, None)
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn coproduct_vector(&self, x: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field().zero(); d * d];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, k, e) in &self.coproduct[i] {
                out[j * d + k] = &out[j * d + k] + &(c * e);
            }
        }
        out
    }

    /// Coassociativity, counit laws, multiplicativity of `Δ` and `ε`, and the
    /// antipode identity when an antipode is present.
    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        let d = a.dim();
        let field = a.field();
        if self.coproduct.len() != d || self.counit.len() != d {
            return Err(Error::shape("bialgebra", format!("coproduct or counit length differs from {d}")));
        }
        let coalg = crate::algebra::Coalgebra::new(field, d, self.coproduct.clone(), self.counit.clone())
            .map_err(|e| relabel(e, "the coproduct is coassociative and counital"))?;
        let aa = a.tensor(a)?;
        let eps = |x: &[Scalar]| x.iter().zip(&self.counit).fold(field.zero(), |s, (a, b)| &s + &(a * b));
        if self.coproduct_vector(a.unit()) != aa.unit() || eps(a.unit()) != field.one() {
            return Err(Error::falsified("Δ and ε are unital", "Δ(1) ≠ 1⊗1 or ε(1) ≠ 1"));
        }
        for i in 0..d {
            for j in 0..d {
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                let lhs = self.coproduct_vector(&prod);
                let rhs = aa.mul(&self.coproduct_vector(&a.basis_vector(i)), &self.coproduct_vector(&a.basis_vector(j)));
                if lhs != rhs {
                    return Err(Error::falsified("Δ is an algebra morphism", format!("Δ(b_{i} b_{j}) ≠ Δ(b_{i})Δ(b_{j})")));
                }
                if eps(&prod) != &self.counit[i] * &self.counit[j] {
                    return Err(Error::falsified("ε is an algebra morphism", format!("ε(b_{i} b_{j}) ≠ ε(b_{i})ε(b_{j})")));
                }
            }
        }
        if let Some(s) = &self.antipode {
            // m(S ⊗ id)Δ = m(id ⊗ S)Δ = ε·1
            for i in 0..d {
                let mut left = vec![field.zero(); d];
                let mut right = vec![field.zero(); d];
                for (j, k, c) in &coalg_terms(&coalg, i) {
                    let sj = s.column(*j);
                    let sk = s.column(*k);
                    let l = a.mul(&sj, &a.basis_vector(*k));
                    let r = a.mul(&a.basis_vector(*j), &sk);
                    for t in 0..d {
                        left[t] = &left[t] + &(c * &l[t]);
                        right[t] = &right[t] + &(c * &r[t]);
                    }
                }
                let want: Vec<Scalar> = a.unit().iter().map(|u| u * &self.counit[i]).collect();
                if left != want || right != want {
                    return Err(Error::falsified("antipode identity m(S⊗id)Δ = ε1", format!("fails on b_{i}")));
                }
            }
        }
        Ok(())
    }

    /// `𝟏`: the field with `a` acting by `ε(a)`.
    pub fn unit_module(&self) -> AlgModule {
        let action = self.counit.iter().map(|e| Matrix::new(self.field(), 1, 1, vec![e.clone()]).expect("1x1")).collect();
        AlgModule::new_unchecked(self.algebra.clone(), 1, action)
    }

    /// `V ⊗ W` with `a` acting as `Σ ρ_V(a_(1)) ⊗ ρ_W(a_(2))`; module axioms re-verified.
    pub fn tensor_module(&self, v: &AlgModule, w: &AlgModule) -> Result<AlgModule> {
        for m in [v, w] {
            if !Arc::ptr_eq(m.algebra(), &self.algebra) && **m.algebra() != *self.algebra {
                return Err(Error::Input("module is not over this bialgebra".into()));
            }
        }
        let field = self.field();
        let dim = v.dim() * w.dim();
        let action = self
            .coproduct
            .iter()
            .map(|terms| {
                let mut out = Matrix::zeros(field, dim, dim);
                for (j, k, c) in terms {
                    out = out.add(&v.action(*j).kronecker(w.action(*k))?.scale(c))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgModule::new(self.algebra.clone(), dim, action).map_err(|e| relabel(e, "Δ is an algebra morphism (tensor action)"))
    }

    /// The contragredient `V^∨`: `a` acts as `ρ_V(S(a))ᵗ`, with the standard
    /// coevaluation and evaluation.
    pub fn dual_module(&self, v: &AlgModule) -> Result<DualityDatum> {
        let s = self
            .antipode
            .as_ref()
            .ok_or_else(|| Error::Input("forming duals needs an antipode".into()))?;
        let action = (0..self.dim()).map(|i| v.act(&s.column(i)).transpose()).collect();
        let dual = AlgModule::new(self.algebra.clone(), v.dim(), action)?;
        let datum = DualityDatum::standard(v.field(), v.dim()).with_modules(v.clone(), dual);
        datum.verify(Some(self))?;
        Ok(datum)
    }

    /// Checks the canonical isomorphisms `V ⊗ 𝟏 ≅ V ≅ 𝟏 ⊗ V`.
    pub fn check_unit_laws(&self, v: &AlgModule) -> Result<()> {
        let one = self.unit_module();
        for (side, m) in [("V ⊗ 1", self.tensor_module(v, &one)?), ("1 ⊗ V", self.tensor_module(&one, v)?)] {
            ModuleMap::new(m, v.clone(), Matrix::identity(v.field(), v.dim()))
                .map_err(|_| Error::falsified("unit law of the tensor product", format!("{side} → V is not a module map")))?;
        }
        Ok(())
    }
}

fn coalg_terms(c: &crate::algebra::Coalgebra, k: usize) -> Vec<(usize, usize, Scalar)> {
    c.comult(k).to_vec()
}

fn relabel(e: Error, identity: &str) -> Error {
    match e {
        Error::Falsified { witness, .. } => Error::falsified(identity, witness),
        other => other,
    }
}

/// A product on vertex spaces: for every ordered pair `(M, N)` a vertex `M·N`
/// and an isomorphism `H(M) ⊗ H(N) → H(M·N)`, with a unit vertex `*`, `H(*) = F`.
#[derive(Clone, Debug)]
pub struct VertexPairing {
    pub unit: usize,
    /// Indexed by `M * n + N`.
    pub products: Vec<(usize, Matrix)>,
}

impl VertexPairing {
    /// Unit, symmetry (plain swap, no signs) and associativity, on the nose.
    pub fn verify(&self, rep: &Representation) -> Result<()> {
        let n = rep.dims().len();
        let field = rep.field();
        if self.products.len() != n * n || self.unit >= n {
            return Err(Error::Input("the pairing must list a product for every ordered pair of vertices".into()));
        }
        if rep.dim(self.unit) != 1 {
            return Err(Error::Input("the unit vertex must carry a one-dimensional space".into()));
        }
        let id = |x: usize| -> &str { &rep.diagram().vertices()[x].id };
        for x in 0..n {
            for y in 0..n {
                let (p, m) = &self.products[x * n + y];
                let want = (rep.dim(*p), rep.dim(x) * rep.dim(y));
                if m.shape() != want || m.shape().0 != m.shape().1 || !crate::linalg::is_invertible(m) {
                    return Err(Error::Input(format!(
                        "product of {:?} and {:?} is not an isomorphism onto H({:?})",
                        id(x),
                        id(y),
                        id(*p)
                    )));
                }
            }
        }
        for x in 0..n {
            let (p, m) = &self.products[self.unit * n + x];
            if *p != x || !m.is_identity() {
                return Err(Error::Precondition(format!("* · {:?} is not {:?} with the identity map", id(x), id(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (p, m) = &self.products[x * n + y];
                let (q, m2) = &self.products[y * n + x];
                if p != q || *m != m2.mul(&swap(field, rep.dim(x), rep.dim(y)))? {
                    return Err(Error::Precondition(format!("the product of {:?} and {:?} is not symmetric", id(x), id(y))));
                }
                for z in 0..n {
                    let (xy, m_xy) = &self.products[x * n + y];
                    let (yz, m_yz) = &self.products[y * n + z];
                    let (l, m_l) = &self.products[xy * n + z];
                    let (r, m_r) = &self.products[x * n + yz];
                    let left = m_l.mul(&m_xy.kronecker(&Matrix::identity(field, rep.dim(z)))?)?;
                    let right = m_r.mul(&Matrix::identity(field, rep.dim(x)).kronecker(m_yz)?)?;
                    if l != r || left != right {
                        return Err(Error::Precondition(format!(
                            "the product is not associative on ({:?}, {:?}, {:?})",
                            id(x),
                            id(y),
                            id(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The swap `F^a ⊗ F^b → F^b ⊗ F^a`.
pub fn swap(field: Field, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(field, a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, field.one());
        }
    }
    m
}

/// A dual pair: `δ: 𝟏 → M^∨ ⊗ M` as a column and `ε: M ⊗ M^∨ → 𝟏` as a row.
#[derive(Clone, Debug)]
pub struct DualityDatum {
    pub dim: usize,
    pub dual_dim: usize,
    pub coevaluation: Matrix,
    pub evaluation: Matrix,
    pub module: Option<AlgModule>,
    pub dual: Option<AlgModule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCheck {
    pub d1: bool,
    pub d2: bool,
}

impl DualityDatum {
    /// `δ(1) = Σ_ℓ e^ℓ ⊗ e_ℓ` and `ε(Σ a_jℓ e_j ⊗ e^ℓ) = Σ_j a_jj` on `F^n`.
    pub fn standard(field: Field, n: usize) -> Self {
        let mut delta = Matrix::zeros(field, n * n, 1);
        let mut eps = Matrix::zeros(field, 1, n * n);
        for l in 0..n {
            delta.set(l * n + l, 0, field.one());
            eps.set(0, l * n + l, field.one());
        }
        DualityDatum {
            dim: n,
            dual_dim: n,
            coevaluation: delta,
            evaluation: eps,
            module: None,
            dual: None,
        }
    }

    pub fn with_modules(mut self, module: AlgModule, dual: AlgModule) -> Self {
        self.module = Some(module);
        self.dual = Some(dual);
        self
    }

    pub fn field(&self) -> Field {
        self.coevaluation.field()
    }

    /// The composites `(ε ⊗ id_M)(id_M ⊗ δ)` and `(id_{M^∨} ⊗ ε)(δ ⊗ id_{M^∨})`.
    pub fn triangle_composites(&self) -> Result<(Matrix, Matrix)> {
        let field = self.field();
        let (n, m) = (self.dim, self.dual_dim);
        let d1 = self
            .evaluation
            .kronecker(&Matrix::identity(field, n))?
            .mul(&Matrix::identity(field, n).kronecker(&self.coevaluation)?)?;
        let d2 = Matrix::identity(field, m)
            .kronecker(&self.evaluation)?
            .mul(&self.coevaluation.kronecker(&Matrix::identity(field, m))?)?;
        Ok((d1, d2))
    }

    pub fn triangles(&self) -> Result<TriangleCheck> {
        let (d1, d2) = self.triangle_composites()?;
        Ok(TriangleCheck {
            d1: d1.is_identity(),
            d2: d2.is_identity(),
        })
    }

    /// D1 and D2, and when modules are attached, that `δ` and `ε` are module maps.
    pub fn verify(&self, bialgebra: Option<&Bialgebra>) -> Result<()> {
        let (d1, d2) = self.triangle_composites()?;
        if !d1.is_identity() {
            return Err(Error::falsified("D1: (ε⊗id)(id⊗δ) = id_M", format!("composite is {d1:?}")));
        }
        if !d2.is_identity() {
            return Err(Error::falsified("D2: (id⊗ε)(δ⊗id) = id_M^∨", format!("composite is {d2:?}")));
        }
        if let (Some(b), Some(m), Some(dual)) = (bialgebra, &self.module, &self.dual) {
            let one = b.unit_module();
            ModuleMap::new(one.clone(), b.tensor_module(dual, m)?, self.coevaluation.clone())
                .map_err(|_| Error::falsified("coevaluation is a module map", "δ does not intertwine"))?;
            ModuleMap::new(b.tensor_module(m, dual)?, one, self.evaluation.clone())
                .map_err(|_| Error::falsified("evaluation is a module map", "ε does not intertwine"))?;
        }
        Ok(())
    }

    /// The datum exhibiting `M` as the dual of `M^∨`, through the symmetry.
    pub fn swapped(&self) -> Result<DualityDatum> {
        let field = self.field();
        Ok(DualityDatum {
            dim: self.dual_dim,
            dual_dim: self.dim,
            coevaluation: swap(field, self.dual_dim, self.dim).mul(&self.coevaluation)?,
            evaluation: self.evaluation.mul(&swap(field, self.dual_dim, self.dim))?,
            module: self.dual.clone(),
            dual: self.module.clone(),
        })
    }

    /// `f^∨: N^∨ → M^∨` for `f: M → N`, through `δ_M` and `ε_N`.
    pub fn transpose_map(source: &DualityDatum, target: &DualityDatum, f: &Matrix) -> Result<Matrix> {
        let field = f.field();
        let (m1, m2) = (source.dual_dim, target.dual_dim);
        kron3(&Matrix::identity(field, m1), &target.evaluation, None)?
            .mul(&kron3(&Matrix::identity(field, m1), f, Some(&Matrix::identity(field, m2)))?)?
            .mul(&source.coevaluation.kronecker(&Matrix::identity(field, m2))?)
    }
}

fn kron3(a: &Matrix, b: &Matrix, c: Option<&Matrix>) -> Result<Matrix> {
    let ab = a.kronecker(b)?;
    match c {
        Some(c) => ab.kronecker(c),
        None => Ok(ab),
    }
}

/// The dual of `M_3 = coker(f: M_1 → M_2)` built as `M_3^∨ = ker(f^∨)`.
#[derive(Clone, Debug)]
pub struct CokernelDual {
    pub datum: DualityDatum,
    pub transpose: Matrix,
    /// `0 → M_3^∨ → M_2^∨ → M_1^∨` is exact and `dim M_3^∨ = dim M_3`.
    pub left_exact: bool,
}

pub fn dual_of_cokernel(
    f: &Matrix,
    d1: &DualityDatum,
    d2: &DualityDatum,
    bialgebra: Option<&Bialgebra>,
) -> Result<CokernelDual> {
    let field = f.field();
    if f.shape() != (d2.dim, d1.dim) {
        return Err(Error::shape("dual_of_cokernel", format!("map {:?} between dimensions {} and {}", f.shape(), d1.dim, d2.dim)));
    }
    let ft = DualityDatum::transpose_map(d1, d2, f)?;
    let dual3 = kernel(&ft);
    let iota = dual3.inclusion();
    let im = crate::linalg::image(f);
    let pi = im.quotient_map();
    let d3 = pi.rows();
    let free: Vec<usize> = (0..d2.dim).filter(|c| !im.pivots().contains(c)).collect();
    let mut section = Matrix::zeros(field, d2.dim, d3);
    for (j, &c) in free.iter().enumerate() {
        section.set(c, j, field.one());
    }
    // (id ⊗ π) δ_2, reshaped so that rows index M_2^∨; its columns lie in ker f^∨.
    let pushed = Matrix::identity(field, d2.dual_dim).kronecker(&pi)?.mul(&d2.coevaluation)?;
    let k = dual3.dim();
    let mut delta3 = Matrix::zeros(field, k * d3, 1);
    for b in 0..d3 {
        let column: Vec<Scalar> = (0..d2.dual_dim).map(|a| pushed.get(a * d3 + b, 0).clone()).collect();
        let coords = dual3.coordinates(&column).ok_or_else(|| {
            Error::falsified("(id ⊗ π)δ lands in ker(f^∨) ⊗ M_3", format!("column {b} leaves the kernel"))
        })?;
        for (a, c) in coords.into_iter().enumerate() {
            delta3.set(a * d3 + b, 0, c);
        }
    }
    let eps3 = d2.evaluation.mul(&section.kronecker(&iota)?)?;
    let (module, dual) = match (&d2.module, &d2.dual) {
        (Some(m2), Some(m2v)) => {
            let fm = ModuleMap::new_unchecked(d1.module.clone().unwrap_or_else(|| m2.clone()), m2.clone(), f.clone());
            let (m3, _) = fm.cokernel()?;
            let (m3v, _) = m2v.submodule(&dual3)?;
            (Some(m3), Some(m3v))
        }
        _ => (None, None),
    };
    let datum = DualityDatum {
        dim: d3,
        dual_dim: k,
        coevaluation: delta3,
        evaluation: eps3,
        module,
        dual,
    };
    datum.verify(bialgebra)?;
    let left_exact = rank(&iota) == k && k == d3 && rank(&ft) == d2.dual_dim - k;
    Ok(CokernelDual {
        datum,
        transpose: ft,
        left_exact,
    })
}

/// `dim Hom(X ⊗ M, Y)` and `dim Hom(X, M^∨ ⊗ Y)`.
pub fn adjunction_dims(b: &Bialgebra, datum: &DualityDatum, x: &AlgModule, y: &AlgModule) -> Result<(usize, usize)> {
    let (m, dual) = match (&datum.module, &datum.dual) {
        (Some(m), Some(d)) => (m, d),
        _ => return Err(Error::Input("the duality datum carries no modules".into())),
    };
    Ok((hom_dim(&b.tensor_module(x, m)?, y)?, hom_dim(x, &b.tensor_module(dual, y)?)?))
}

/// The algebra map `φ: A → End(H|_D)`, `a ↦ (ρ_{G(M)}(a))_M`, and the functor it induces.
#[derive(Clone, Debug)]
pub struct Extension {
    pub phi: Matrix,
    pub image_dim: usize,
    /// For every vertex: restriction of `h(M)` along `φ` equals `G(M)`.
    pub vertices_commute: Vec<bool>,
    /// For every edge: `H(f)` is a map of the restricted modules.
    pub edges_commute: Vec<bool>,
}

/// Restriction of scalars along `φ: A → B` (matrix `dim B × dim A`).
pub fn restrict_scalars(a: &Arc<FiniteAlgebra>, phi: &Matrix, v: &AlgModule) -> Result<AlgModule> {
    let action = (0..a.dim()).map(|i| v.act(&phi.column(i))).collect();
    AlgModule::new(a.clone(), v.dim(), action)
}

pub fn extension_functor(
    rep: &Representation,
    sub: &Subgraph,
    target: &Arc<FiniteAlgebra>,
    lift: &BTreeMap<usize, AlgModule>,
) -> Result<Extension> {
    let field = rep.field();
    for &v in sub.vertices() {
        let g = lift.get(&v).ok_or_else(|| {
            Error::Precondition(format!("no module given for vertex {:?}", rep.diagram().vertices()[v].id))
        })?;
        if g.dim() != rep.dim(v) {
            return Err(Error::Precondition(format!(
                "G({:?}) has dimension {} but H has {}",
                rep.diagram().vertices()[v].id,
                g.dim(),
                rep.dim(v)
            )));
        }
    }
    for &e in sub.edges() {
        let edge = &rep.diagram().edges()[e];
        ModuleMap::new(lift[&edge.src].clone(), lift[&edge.dst].clone(), rep.map(e).clone()).map_err(|err| {
            Error::Precondition(format!("H({:?}) is not a map of A-modules: {err}", edge.id))
        })?;
    }
    let end = Arc::new(compute_end(rep, sub)?);
    let real = end.realization().expect("realized");
    let mut phi = Matrix::zeros(field, end.dim(), target.dim());
    for i in 0..target.dim() {
        let tuple: Vec<Matrix> = sub.vertices().iter().map(|v| lift[v].action(i).clone()).collect();
        let coords = real
            .coordinates(field, &tuple)
            .ok_or_else(|| Error::falsified("a ↦ (ρ_G(M)(a)) lands in End(H)", format!("basis element {i}")))?;
        for (r, c) in coords.into_iter().enumerate() {
            phi.set(r, i, c);
        }
    }
    target.check_morphism(&end, &phi)?;
    let restricted: Vec<AlgModule> = sub
        .vertices()
        .iter()
        .map(|&v| restrict_scalars(target, &phi, &crate::comodule::tautological(&end, sub, v)?))
        .collect::<Result<_>>()?;
    let vertices_commute = sub
        .vertices()
        .iter()
        .zip(&restricted)
        .map(|(v, r)| r.actions() == lift[v].actions())
        .collect();
    let block = |v: usize| sub.vertices().binary_search(&v).expect("in subgraph");
    let edges_commute = sub
        .edges()
        .iter()
        .map(|&e| {
            let edge = &rep.diagram().edges()[e];
            ModuleMap::new(restricted[block(edge.src)].clone(), restricted[block(edge.dst)].clone(), rep.map(e).clone()).is_ok()
        })
        .collect();
    Ok(Extension {
        image_dim: rank(&phi),
        phi,
        vertices_commute,
        edges_commute,
    })
}

/// Coordinates of a sparse coproduct term list, for reports.
pub fn coproduct_table(b: &Bialgebra) -> Vec<Sparse> {
    let d = b.dim();
    b.coproduct
        .iter()
        .map(|t| t.iter().map(|(j, k, c)| (j * d + k, c.clone())).collect())
        .collect()
}
