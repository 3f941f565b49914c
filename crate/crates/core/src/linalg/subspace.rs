use super::echelon::{rref, rref_rows};
use super::Matrix;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A linear subspace of `F^n`, stored as the nonzero rows of its reduced row
/// echelon form. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_row_space(&Matrix::identity(field, ambient))
    }

    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::shape(
                    "Subspace::span",
                    format!("vector of length {} in F^{ambient}", v.len()),
                ));
            }
            if let Some(bad) = v.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch(field, bad.field()));
            }
        }
        let e = rref_rows(field, ambient, vectors);
        Ok(Subspace {
            field,
            ambient,
            basis: e.rows,
            pivots: e.pivots,
        })
    }

    /// Row space of a matrix.
    pub fn from_row_space(m: &Matrix) -> Self {
        let e = rref(m);
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            basis: e.rows,
            pivots: e.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `dim × ambient` matrix whose rows are the echelon basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent basis")
    }

    /// `ambient × dim` matrix whose columns are the echelon basis (the inclusion map).
    pub fn inclusion(&self) -> Matrix {
        self.basis_matrix().transpose()
    }

    /// Subtracts the unique combination of basis vectors that clears every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates in the echelon basis: the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, rows).expect("same ambient")
    }

    /// The projection `F^n → F^n / self`, realized on the non-pivot coordinates
    /// of the reduced vector. Its kernel is exactly `self`.
    pub fn quotient_map(&self) -> Matrix {
        let free: Vec<usize> = (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let mut m = Matrix::zeros(self.field, free.len(), self.ambient);
        let mut unit = vec![self.field.zero(); self.ambient];
        for j in 0..self.ambient {
            unit[j] = self.field.one();
            let red = self.reduce(&unit);
            for (r, &c) in free.iter().enumerate() {
                m.set(r, j, red[c].clone());
            }
            unit[j] = self.field.zero();
        }
        m
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // x ↦ reduce_other(Σ x_i b_i) is linear; its kernel gives the intersection.
        let reduced: Vec<Vec<Scalar>> = self.basis.iter().map(|b| other.reduce(b)).collect();
        let m = Matrix::from_rows(self.field, self.ambient, reduced)
            .expect("consistent")
            .transpose();
        let coeffs = kernel(&m);
        let vectors = coeffs.basis.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.field, self.ambient, vectors).expect("same ambient")
    }

    /// Image of this subspace under `f` (`f` maps `F^ambient → F^m`).
    pub fn image_under(&self, f: &Matrix) -> Result<Subspace> {
        if f.cols() != self.ambient {
            return Err(Error::shape(
                "image_under",
                format!("map with {} columns on F^{}", f.cols(), self.ambient),
            ));
        }
        let vectors = self
            .basis
            .iter()
            .map(|b| f.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field, f.rows(), vectors)
    }

    /// `{x : f x ∈ self}` for `f : F^n → F^ambient`.
    pub fn preimage_under(&self, f: &Matrix) -> Result<Subspace> {
        if f.rows() != self.ambient {
            return Err(Error::shape(
                "preimage_under",
                format!("map with {} rows into F^{}", f.rows(), self.ambient),
            ));
        }
        Ok(kernel(&self.quotient_map().mul(f)?))
    }
}

/// Solution space of `constraints · x = 0`.
pub fn solve_homogeneous(constraints: &Matrix) -> Subspace {
    kernel(constraints)
}

/// Kernel of `f : F^cols → F^rows` as a canonical echelon basis.
pub fn kernel(f: &Matrix) -> Subspace {
    let field = f.field();
    let n = f.cols();
    let e = rref(f);
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); n];
            v[fc] = field.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = -&row[fc];
            }
            v
        })
        .collect();
    Subspace::span(field, n, vectors).expect("kernel vectors live in F^cols")
}

/// Column space of `f`.
pub fn image(f: &Matrix) -> Subspace {
    Subspace::from_row_space(&f.transpose())
}

pub fn rank(f: &Matrix) -> usize {
    rref(f).rank()
}

/// Cokernel of `f`: the quotient dimension and a surjection `F^rows → F^q` killing `im f`.
pub fn cokernel(f: &Matrix) -> (usize, Matrix) {
    let p = image(f).quotient_map();
    (p.rows(), p)
}

/// One solution of `a x = b`, if any.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::shape(
            "solve",
            format!("{}x{} system with right side of length {}", a.rows(), a.cols(), b.len()),
        ));
    }
    let field = a.field();
    let aug = a.hstack(&Matrix::column_vector(field, b.to_vec())?)?;
    let e = rref(&aug);
    if e.pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); a.cols()];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = row[a.cols()].clone();
    }
    Ok(Some(x))
}

/// Solves `a X = b` column by column.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let mut cols = Vec::with_capacity(b.cols());
    for c in 0..b.cols() {
        match solve(a, &b.column(c))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_rows(a.field(), a.cols(), cols)?.transpose()))
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(a.clone());
    }
    let aug = a.hstack(&Matrix::identity(a.field(), n)).ok()?;
    let e = rref(&aug);
    if e.rank() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    let rows = e.rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Matrix::from_rows(a.field(), n, rows).ok()
}

pub fn is_invertible(a: &Matrix) -> bool {
    a.is_square() && rank(a) == a.rows()
}

/// Leading principal minors `det A[0..k, 0..k]` for `k = 1..=n`.
pub fn leading_principal_minors(a: &Matrix) -> Result<Vec<Scalar>> {
    if !a.is_square() {
        return Err(Error::shape("leading_principal_minors", "matrix is not square"));
    }
    Ok((1..=a.rows())
        .map(|k| super::echelon::determinant(&a.submatrix(0, k, 0, k)))
        .collect())
}

/// Positive definiteness of a symmetric rational matrix by Sylvester's criterion.
pub fn is_positive_definite(a: &Matrix) -> Result<bool> {
    if a.field() != Field::Rational {
        return Err(Error::Precondition(
            "positive definiteness needs an ordered field (Q)".into(),
        ));
    }
    if *a != a.transpose() {
        return Err(Error::Precondition("Gram matrix is not symmetric".into()));
    }
    Ok(leading_principal_minors(a)?
        .iter()
        .all(|m| m.is_positive() == Some(true)))
}

/// A subquotient `numerator / denominator` of some `F^n`, with a canonical
/// complement of the denominator inside the numerator serving as its basis.
#[derive(Clone, Debug)]
pub struct Subquotient {
    numerator: Subspace,
    denominator: Subspace,
    representatives: Subspace,
}

impl Subquotient {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self> {
        if !denominator.is_subspace_of(&numerator) {
            return Err(Error::Precondition(
                "subquotient denominator is not contained in the numerator".into(),
            ));
        }
        let reduced = numerator.basis().iter().map(|b| denominator.reduce(b)).collect();
        let representatives =
            Subspace::span(numerator.field(), numerator.ambient_dim(), reduced)?;
        debug_assert_eq!(
            representatives.dim() + denominator.dim(),
            numerator.dim()
        );
        Ok(Subquotient {
            numerator,
            denominator,
            representatives,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }
    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }
    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Representative vectors of the quotient basis, in the ambient space.
    pub fn representatives(&self) -> &[Vec<Scalar>] {
        self.representatives.basis()
    }

    /// Class of `v` in the quotient basis; `None` if `v` is not in the numerator.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.numerator.contains(v) {
            return None;
        }
        self.representatives.coordinates(&self.denominator.reduce(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn dims(f: &Matrix) -> (usize, usize, usize) {
        (kernel(f).dim(), image(f).dim(), cokernel(f).0)
    }

    #[test]
    fn spec_kernel_examples() {
        let zero = Matrix::from_i64(Q, &[&[0]]);
        assert_eq!(solve_homogeneous(&zero).dim(), 1);
        let eq = Matrix::from_i64(Q, &[&[1, -1]]);
        let k = solve_homogeneous(&eq);
        assert_eq!(k.basis(), &[vec![Q.one(), Q.one()]]);
    }

    #[test]
    fn kernel_cokernel_of_small_maps() {
        assert_eq!(dims(&Matrix::identity(Q, 2)), (0, 2, 0));
        assert_eq!(dims(&Matrix::zeros(Q, 2, 3)), (3, 0, 2));
        let f = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        let (q, p) = cokernel(&f);
        assert_eq!(q, 1);
        assert_eq!(p, Matrix::from_i64(Q, &[&[0, 1]]));
        assert!(p.mul(&f).unwrap().is_zero());
    }

    #[test]
    fn intersection_and_preimage() {
        let u = Subspace::span(Q, 3, vec![vec![Q.one(), Q.zero(), Q.zero()], vec![Q.zero(), Q.one(), Q.zero()]]).unwrap();
        let w = Subspace::span(Q, 3, vec![vec![Q.zero(), Q.one(), Q.zero()], vec![Q.zero(), Q.zero(), Q.one()]]).unwrap();
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[Q.zero(), Q.from_i64(5), Q.zero()]));
        let proj = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        // x with proj x ∈ w: first coordinate zero
        assert_eq!(w.preimage_under(&proj).unwrap(), w);
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inverse(&Matrix::from_i64(Q, &[&[1, 1], &[1, 1]])).is_none());
        let x = solve(&a, &[Q.from_i64(3), Q.from_i64(2)]).unwrap().unwrap();
        assert_eq!(x, vec![Q.one(), Q.one()]);
        let sing = Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert!(solve(&sing, &[Q.one(), Q.zero()]).unwrap().is_none());
    }

    #[test]
    fn sylvester_criterion() {
        assert!(is_positive_definite(&Matrix::identity(Q, 3)).unwrap());
        let indefinite = Matrix::from_i64(Q, &[&[1, 2], &[2, 1]]);
        assert!(!is_positive_definite(&indefinite).unwrap());
        let f3 = Field::prime(3).unwrap();
        assert!(is_positive_definite(&Matrix::identity(f3, 1)).is_err());
    }

    #[test]
    fn subquotient_coordinates() {
        let num = Subspace::full(Q, 2);
        let den = Subspace::span(Q, 2, vec![vec![Q.one(), Q.one()]]).unwrap();
        let sq = Subquotient::new(num, den).unwrap();
        assert_eq!(sq.dim(), 1);
        let a = sq.coordinates(&[Q.from_i64(3), Q.from_i64(1)]).unwrap();
        let b = sq.coordinates(&[Q.from_i64(2), Q.zero()]).unwrap();
        assert_eq!(a, b);
    }
}
