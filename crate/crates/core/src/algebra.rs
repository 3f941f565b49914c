//! Finite-dimensional associative algebras given by structure constants, their
//! dual coalgebras, and morphisms between coalgebras.
//!
//! Structure constants are stored sparsely: for an algebra of dimension `d`,
//! `b_i · b_j = Σ_k c_ij^k b_k` is kept as the nonzero `(k, c_ij^k)` pairs, and
//! the dual comultiplication `Δ(b^k) = Σ c_ij^k b^i ⊗ b^j` as nonzero `(i, j, c)`
//! triples. Tensor products of endomorphism algebras reach a few hundred
//! dimensions, where dense `d³` tensors stop being practical.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{inverse, rank, Matrix, Subspace};

/// Nonzero `(index, coefficient)` pairs, sorted by index.
pub type Sparse = Vec<(usize, Scalar)>;

fn add_into<K: Ord>(acc: &mut BTreeMap<K, Scalar>, key: K, value: Scalar) {
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(e) => {
            if !value.is_zero() {
                e.insert(value);
            }
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn sparse_of(v: &[Scalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn dense_of(field: Field, dim: usize, s: &Sparse) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    for (i, x) in s {
        v[*i] = x.clone();
    }
    v
}

fn format_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_text).collect();
    format!("[{}]", parts.join(", "))
}

/// A concrete model of an algebra as block-diagonal matrix tuples, one block
/// per vertex. Basis elements are tuples; coordinates are recovered through an
/// invertible pivot submatrix of the flattened basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    blocks: Vec<usize>,
    basis: Vec<Vec<Matrix>>,
    flat: Vec<Sparse>,
    pivots: Vec<usize>,
    /// `None` when the pivot submatrix is the identity (echelon bases).
    pivot_inverse: Option<Matrix>,
}

impl Realization {
    pub fn new(field: Field, blocks: Vec<usize>, basis: Vec<Vec<Matrix>>) -> Result<Self> {
        let total: usize = blocks.iter().map(|b| b * b).sum();
        let mut flat = Vec::with_capacity(basis.len());
        for (n, tuple) in basis.iter().enumerate() {
            if tuple.len() != blocks.len() {
                return Err(Error::shape(
                    "Realization",
                    format!("basis element {n} has {} blocks, expected {}", tuple.len(), blocks.len()),
                ));
            }
            let mut v = Vec::with_capacity(total);
            for (m, &b) in tuple.iter().zip(&blocks) {
                if m.shape() != (b, b) || m.field() != field {
                    return Err(Error::shape(
                        "Realization",
                        format!("basis element {n} has a {}x{} block where {b}x{b} is required", m.rows(), m.cols()),
                    ));
                }
                v.extend(m.entries().iter().cloned());
            }
            flat.push(v);
        }
        let span = Subspace::span(field, total, flat.clone())?;
        if span.dim() != basis.len() {
            return Err(Error::Input("algebra basis is linearly dependent".into()));
        }
        let pivots = span.pivots().to_vec();
        let square = Matrix::from_rows(
            field,
            pivots.len(),
            flat.iter().map(|v| pivots.iter().map(|&p| v[p].clone()).collect()).collect(),
        )?;
        let pivot_inverse = if square.is_identity() {
            None
        } else {
            Some(inverse(&square).expect("pivot submatrix of an independent family is invertible"))
        };
        Ok(Realization {
            blocks,
            basis,
            flat: flat.iter().map(|v| sparse_of(v)).collect(),
            pivots,
            pivot_inverse,
        })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }
    pub fn basis(&self) -> &[Vec<Matrix>] {
        &self.basis
    }
    pub fn flat_len(&self) -> usize {
        self.blocks.iter().map(|b| b * b).sum()
    }

    pub fn flatten(tuple: &[Matrix]) -> Vec<Scalar> {
        tuple.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Coordinates of a flattened tuple in this basis, or `None` outside the span.
    pub fn coordinates_flat(&self, field: Field, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let at: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let coords = match &self.pivot_inverse {
            None => at,
            Some(inv) => inv.transpose().mul_vec(&at).expect("shape"),
        };
        let mut residual: BTreeMap<usize, Scalar> = sparse_of(v).into_iter().collect();
        for (c, b) in coords.iter().zip(&self.flat) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in b {
                add_into(&mut residual, *i, -(c * x));
            }
        }
        debug_assert!(coords.iter().all(|c| c.field() == field));
        residual.is_empty().then_some(coords)
    }

    pub fn coordinates(&self, field: Field, tuple: &[Matrix]) -> Option<Vec<Scalar>> {
        self.coordinates_flat(field, &Self::flatten(tuple))
    }

    /// The tuple with the given coordinates.
    pub fn element(&self, field: Field, coords: &[Scalar]) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = self.blocks.iter().map(|&b| Matrix::zeros(field, b, b)).collect();
        for (c, tuple) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(tuple) {
                *o = o.add(&m.scale(c)).expect("same shape");
            }
        }
        out
    }
}

/// A finite-dimensional unital associative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    /// `products[i * dim + j]` holds the coordinates of `b_i · b_j`.
    products: Vec<Sparse>,
    unit: Vec<Scalar>,
    realization: Option<Realization>,
}

impl FiniteAlgebra {
    /// An abstract algebra from structure constants; associativity and the unit
    /// laws are verified.
    pub fn from_structure(field: Field, dim: usize, products: Vec<Sparse>, unit: Vec<Scalar>) -> Result<Self> {
        if products.len() != dim * dim || unit.len() != dim {
            return Err(Error::shape(
                "FiniteAlgebra",
                format!("{} products and unit of length {} for dimension {dim}", products.len(), unit.len()),
            ));
        }
        let a = FiniteAlgebra {
            field,
            dim,
            products,
            unit,
            realization: None,
        };
        a.verify()?;
        Ok(a)
    }

    /// The subalgebra of block-diagonal matrices spanned by `basis`, kept in the
    /// given order. Closure under products and the identity tuple are checked.
    pub fn from_matrix_basis(field: Field, blocks: Vec<usize>, basis: Vec<Vec<Matrix>>) -> Result<Self> {
        let realization = Realization::new(field, blocks, basis)?;
        let a = Self::from_realization_unchecked(field, realization)?;
        a.verify()?;
        Ok(a)
    }

    /// Same as [`from_matrix_basis`](Self::from_matrix_basis) but skips the
    /// associativity check, which holds automatically for matrix tuples.
    pub(crate) fn from_realization_unchecked(field: Field, realization: Realization) -> Result<Self> {
        let dim = realization.basis.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod: Vec<Matrix> = realization.basis[i]
                    .iter()
                    .zip(&realization.basis[j])
                    .map(|(x, y)| x.mul(y))
                    .collect::<Result<_>>()?;
                let coords = realization.coordinates(field, &prod).ok_or_else(|| {
                    Error::Input(format!("span is not closed under multiplication: b_{i} · b_{j} leaves it"))
                })?;
                products.push(sparse_of(&coords));
            }
        }
        let identity: Vec<Matrix> = realization.blocks.iter().map(|&b| Matrix::identity(field, b)).collect();
        let unit = realization
            .coordinates(field, &identity)
            .ok_or_else(|| Error::Input("span does not contain the identity tuple".into()))?;
        Ok(FiniteAlgebra {
            field,
            dim,
            products,
            unit,
            realization: Some(realization),
        })
    }

    /// The zero algebra (the convention for an empty subgraph).
    pub fn zero(field: Field) -> Self {
        FiniteAlgebra {
            field,
            dim: 0,
            products: Vec::new(),
            unit: Vec::new(),
            realization: Some(Realization {
                blocks: Vec::new(),
                basis: Vec::new(),
                flat: Vec::new(),
                pivots: Vec::new(),
                pivot_inverse: None,
            }),
        }
    }

    /// `M_n(F)` with matrix units `e_ij` in row-major order.
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let basis = (0..n * n)
            .map(|k| {
                let mut m = Matrix::zeros(field, n, n);
                m.set(k / n, k % n, field.one());
                vec![m]
            })
            .collect();
        Self::from_matrix_basis(field, vec![n], basis).expect("matrix units form an algebra")
    }

    /// Upper-triangular `n × n` matrices, basis `e_ij` (i ≤ j) in row-major order.
    pub fn upper_triangular(field: Field, n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut m = Matrix::zeros(field, n, n);
                m.set(i, j, field.one());
                basis.push(vec![m]);
            }
        }
        Self::from_matrix_basis(field, vec![n], basis).expect("triangular matrices form an algebra")
    }

    /// `F^n` with orthogonal idempotents, realized as diagonal matrices.
    pub fn diagonal(field: Field, n: usize) -> Self {
        let basis = (0..n)
            .map(|k| (0..n).map(|b| if b == k { Matrix::identity(field, 1) } else { Matrix::zeros(field, 1, 1) }).collect())
            .collect();
        Self::from_matrix_basis(field, vec![1; n], basis).expect("idempotents form an algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }
    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        &self.products[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut acc = BTreeMap::new();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.product(i, j) {
                    add_into(&mut acc, *k, &xy * c);
                }
            }
        }
        dense_of(self.field, self.dim, &acc.into_iter().collect())
    }

    /// Matrix of left multiplication by `a` in the basis.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// `tr(L_{b_k})` for every basis element.
    pub fn regular_traces(&self) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| {
                let mut t = self.field.zero();
                for j in 0..self.dim {
                    if let Some((_, c)) = self.product(k, j).iter().find(|(idx, _)| *idx == j) {
                        t = &t + c;
                    }
                }
                t
            })
            .collect()
    }

    /// Gram matrix of `(a, b) ↦ tr(L_{ab})` in the basis.
    pub fn trace_form(&self) -> Matrix {
        let traces = self.regular_traces();
        let mut g = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut t = self.field.zero();
                for (k, c) in self.product(i, j) {
                    t = &t + &(c * &traces[*k]);
                }
                g.set(i, j, t);
            }
        }
        g
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Checks associativity (through coassociativity of the dual, which only
    /// touches nonzero structure constants) and both unit laws.
    pub fn verify(&self) -> Result<()> {
        self.dual().verify().map_err(|e| match e {
            Error::Falsified { witness, .. } => Error::falsified("associativity and unit laws", witness),
            other => other,
        })
    }

    /// Dual coalgebra: `Δ(b^k) = Σ c_ij^k b^i ⊗ b^j`, `ε(b^k) = unit_k`.
    pub fn dual(&self) -> Coalgebra {
        let mut comult: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product(i, j) {
                    comult[*k].push((i, j, c.clone()));
                }
            }
        }
        Coalgebra {
            field: self.field,
            dim: self.dim,
            comult,
            counit: self.unit.clone(),
        }
    }

    /// `A × B`, basis of `A` followed by basis of `B`.
    pub fn direct_product(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let d = self.dim + other.dim;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                products[i * d + j] = self.product(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                products[(self.dim + i) * d + self.dim + j] = other
                    .product(i, j)
                    .iter()
                    .map(|(k, c)| (k + self.dim, c.clone()))
                    .collect();
            }
        }
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        let realization = match (&self.realization, &other.realization) {
            (Some(r), Some(s)) => {
                let zeros_r: Vec<Matrix> = r.blocks.iter().map(|&b| Matrix::zeros(self.field, b, b)).collect();
                let zeros_s: Vec<Matrix> = s.blocks.iter().map(|&b| Matrix::zeros(self.field, b, b)).collect();
                let basis = r
                    .basis
                    .iter()
                    .map(|t| t.iter().chain(&zeros_s).cloned().collect())
                    .chain(s.basis.iter().map(|t| zeros_r.iter().chain(t).cloned().collect()))
                    .collect();
                let blocks = r.blocks.iter().chain(&s.blocks).copied().collect();
                Some(Realization::new(self.field, blocks, basis)?)
            }
            _ => None,
        };
        Ok(FiniteAlgebra {
            field: self.field,
            dim: d,
            products,
            unit,
            realization,
        })
    }

    /// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j`. A realized pair
    /// is realized on the blocks `(p, q)` in lexicographic order by Kronecker products.
    pub fn tensor(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 * d2;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d1 {
            for k in 0..d1 {
                let pa = self.product(i, k);
                if pa.is_empty() {
                    continue;
                }
                for j in 0..d2 {
                    for l in 0..d2 {
                        let pb = other.product(j, l);
                        let mut acc = Vec::with_capacity(pa.len() * pb.len());
                        for (m, x) in pa {
                            for (n, y) in pb {
                                acc.push((m * d2 + n, x * y));
                            }
                        }
                        acc.sort_by_key(|(idx, _)| *idx);
                        products[(i * d2 + j) * d + k * d2 + l] = acc;
                    }
                }
            }
        }
        let mut unit = Vec::with_capacity(d);
        for x in &self.unit {
            for y in &other.unit {
                unit.push(x * y);
            }
        }
        let realization = match (&self.realization, &other.realization) {
            (Some(r), Some(s)) => {
                let mut blocks = Vec::new();
                for &p in &r.blocks {
                    for &q in &s.blocks {
                        blocks.push(p * q);
                    }
                }
                let mut basis = Vec::with_capacity(d);
                for ta in &r.basis {
                    for tb in &s.basis {
                        let mut tuple = Vec::with_capacity(blocks.len());
                        for x in ta {
                            for y in tb {
                                tuple.push(x.kronecker(y)?);
                            }
                        }
                        basis.push(tuple);
                    }
                }
                Some(Realization::new(self.field, blocks, basis)?)
            }
            _ => None,
        };
        Ok(FiniteAlgebra {
            field: self.field,
            dim: d,
            products,
            unit,
            realization,
        })
    }

    /// Whether the linear map `f` (target dim × source dim) is a unital algebra morphism `self → target`.
    pub fn check_morphism(&self, target: &FiniteAlgebra, f: &Matrix) -> Result<()> {
        if f.shape() != (target.dim, self.dim) {
            return Err(Error::shape("algebra morphism", format!("{:?} for {} → {}", f.shape(), self.dim, target.dim)));
        }
        let images: Vec<Vec<Scalar>> = (0..self.dim).map(|i| f.column(i)).collect();
        if f.mul_vec(&self.unit)? != target.unit {
            return Err(Error::falsified("morphism preserves the unit", "f(1) ≠ 1"));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.mul_vec(&dense_of(self.field, self.dim, self.product(i, j)))?;
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::falsified(
                        "morphism preserves products",
                        format!("f(b_{i} b_{j}) = {} but f(b_{i}) f(b_{j}) = {}", format_vec(&lhs), format_vec(&rhs)),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional coalgebra `(C, Δ, ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    /// `comult[k]` lists the nonzero `(i, j, c)` with `Δ(b^k) = Σ c b^i ⊗ b^j`.
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    pub fn new(
        field: Field,
        dim: usize,
        comult: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        if comult.len() != dim || counit.len() != dim {
            return Err(Error::shape("Coalgebra", format!("comultiplication or counit length differs from {dim}")));
        }
        let c = Coalgebra {
            field,
            dim,
            comult,
            counit,
        };
        c.verify()?;
        Ok(c)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn comult(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[k]
    }
    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    /// Dense coefficient `c` of `b^i ⊗ b^j` in `Δ(b^k)`.
    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> Scalar {
        self.comult[k]
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn check_coassociativity(&self) -> Result<()> {
        for k in 0..self.dim {
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for (m, l, c) in &self.comult[k] {
                for (i, j, d) in &self.comult[*m] {
                    add_into(&mut left, (*i, *j, *l), c * d);
                }
            }
            for (i, m, c) in &self.comult[k] {
                for (j, l, d) in &self.comult[*m] {
                    add_into(&mut right, (*i, *j, *l), c * d);
                }
            }
            if left != right {
                let (i, j, l) = left
                    .keys()
                    .chain(right.keys())
                    .find(|key| left.get(key) != right.get(key))
                    .copied()
                    .expect("maps differ");
                let show = |m: &BTreeMap<(usize, usize, usize), Scalar>| {
                    m.get(&(i, j, l)).map(Scalar::to_text).unwrap_or_else(|| "0".into())
                };
                return Err(Error::falsified(
                    "coassociativity (Δ⊗id)Δ = (id⊗Δ)Δ",
                    format!(
                        "coefficient of b^{i}⊗b^{j}⊗b^{l} in the image of b^{k}: {} vs {}",
                        show(&left),
                        show(&right)
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn check_counit(&self) -> Result<()> {
        for k in 0..self.dim {
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for (i, j, c) in &self.comult[k] {
                add_into(&mut left, *j, &self.counit[*i] * c);
                add_into(&mut right, *i, &self.counit[*j] * c);
            }
            let expected: BTreeMap<usize, Scalar> = [(k, self.field.one())].into_iter().collect();
            for (side, got) in [("(ε⊗id)Δ", left), ("(id⊗ε)Δ", right)] {
                if got != expected {
                    return Err(Error::falsified(
                        "counit laws (ε⊗id)Δ = id = (id⊗ε)Δ",
                        format!("{side} moves b^{k}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn verify(&self) -> Result<()> {
        self.check_coassociativity()?;
        self.check_counit()
    }

    /// The dual algebra (inverse of [`FiniteAlgebra::dual`]).
    pub fn dual_algebra(&self) -> FiniteAlgebra {
        let mut products = vec![Vec::new(); self.dim * self.dim];
        for (k, terms) in self.comult.iter().enumerate() {
            for (i, j, c) in terms {
                products[i * self.dim + j].push((k, c.clone()));
            }
        }
        FiniteAlgebra {
            field: self.field,
            dim: self.dim,
            products,
            unit: self.counit.clone(),
            realization: None,
        }
    }

    /// Direct sum `C ⊕ D`, basis of `C` first.
    pub fn direct_sum(&self, other: &Coalgebra) -> Result<Coalgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let s = self.dim;
        let comult = self
            .comult
            .iter()
            .cloned()
            .chain(
                other
                    .comult
                    .iter()
                    .map(|t| t.iter().map(|(i, j, c)| (i + s, j + s, c.clone())).collect()),
            )
            .collect();
        Ok(Coalgebra {
            field: self.field,
            dim: s + other.dim,
            comult,
            counit: self.counit.iter().chain(&other.counit).cloned().collect(),
        })
    }

    /// `C ⊗ D` with basis `b^i ⊗ b'^j` at index `i * dim D + j`.
    pub fn tensor(&self, other: &Coalgebra) -> Result<Coalgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let d2 = other.dim;
        let mut comult = Vec::with_capacity(self.dim * d2);
        let mut counit = Vec::with_capacity(self.dim * d2);
        for a in 0..self.dim {
            for b in 0..d2 {
                let mut terms = Vec::new();
                for (i, j, c) in &self.comult[a] {
                    for (k, l, d) in &other.comult[b] {
                        terms.push((i * d2 + k, j * d2 + l, c * d));
                    }
                }
                terms.sort_by_key(|(x, y, _)| (*x, *y));
                comult.push(terms);
                counit.push(&self.counit[a] * &other.counit[b]);
            }
        }
        Ok(Coalgebra {
            field: self.field,
            dim: self.dim * d2,
            comult,
            counit,
        })
    }
}

/// A linear map between coalgebras, `matrix` of shape `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct CoalgebraMap {
    pub matrix: Matrix,
}

impl CoalgebraMap {
    /// Verifies `Δ_T ∘ f = (f ⊗ f) ∘ Δ_S` and `ε_T ∘ f = ε_S`.
    pub fn check(&self, source: &Coalgebra, target: &Coalgebra) -> Result<()> {
        let f = &self.matrix;
        if f.shape() != (target.dim, source.dim) {
            return Err(Error::shape(
                "coalgebra map",
                format!("{:?} for {} → {}", f.shape(), source.dim, target.dim),
            ));
        }
        let columns: Vec<Sparse> = (0..source.dim).map(|k| sparse_of(&f.column(k))).collect();
        for k in 0..source.dim {
            let mut lhs = BTreeMap::new();
            for (m, x) in &columns[k] {
                for (i, j, c) in &target.comult[*m] {
                    add_into(&mut lhs, (*i, *j), x * c);
                }
            }
            let mut rhs = BTreeMap::new();
            for (a, b, c) in &source.comult[k] {
                for (i, x) in &columns[*a] {
                    let cx = c * x;
                    for (j, y) in &columns[*b] {
                        add_into(&mut rhs, (*i, *j), &cx * y);
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::falsified(
                    "Δ ∘ f = (f ⊗ f) ∘ Δ",
                    format!("fails on source basis element {k}"),
                ));
            }
            let mut eps = target.field.zero();
            for (m, x) in &columns[k] {
                eps = &eps + &(x * &target.counit[*m]);
            }
            if eps != source.counit[k] {
                return Err(Error::falsified("ε ∘ f = ε", format!("fails on source basis element {k}")));
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.matrix.cols()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && rank(&self.matrix) == self.matrix.cols()
    }
}
