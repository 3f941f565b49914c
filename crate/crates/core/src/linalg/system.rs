use super::{solve_homogeneous, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// One summand of a matrix equation in block unknowns.
pub enum Term<'a> {
    /// `coeff · X_block`
    Left(&'a Matrix, usize),
    /// `X_block · coeff`
    Right(usize, &'a Matrix),
    /// `-(coeff · X_block)`
    NegLeft(&'a Matrix, usize),
    /// `-(X_block · coeff)`
    NegRight(usize, &'a Matrix),
}

/// Homogeneous linear system whose unknowns are a list of matrices, flattened
/// row-major one after the other. Intertwining conditions such as
/// `X_P · A = A · X_N` are added as matrix equations.
pub struct BlockSystem {
    field: Field,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    total: usize,
    rows: Vec<Vec<Scalar>>,
}

impl BlockSystem {
    pub fn new(field: Field, shapes: &[(usize, usize)]) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in shapes {
            offsets.push(total);
            total += r * c;
        }
        BlockSystem {
            field,
            shapes: shapes.to_vec(),
            offsets,
            total,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.total
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    /// Adds `Σ terms = 0`, an equation between `r × c` matrices.
    pub fn add_equation(&mut self, r: usize, c: usize, terms: &[Term<'_>]) -> Result<()> {
        let mut eqs = vec![vec![self.field.zero(); self.total]; r * c];
        for term in terms {
            let (coeff, block, left, negate) = match *term {
                Term::Left(m, b) => (m, b, true, false),
                Term::Right(b, m) => (m, b, false, false),
                Term::NegLeft(m, b) => (m, b, true, true),
                Term::NegRight(b, m) => (m, b, false, true),
            };
            if coeff.field() != self.field {
                return Err(Error::FieldMismatch(self.field, coeff.field()));
            }
            let (br, bc) = self.shapes[block];
            let off = self.offsets[block];
            let signed = |x: &Scalar| if negate { -x } else { x.clone() };
            if left {
                if coeff.rows() != r || coeff.cols() != br || bc != c {
                    return Err(Error::shape(
                        "BlockSystem",
                        format!("left factor {:?} on block {br}x{bc} for a {r}x{c} equation", coeff.shape()),
                    ));
                }
                for i in 0..r {
                    for k in 0..br {
                        let a = coeff.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..c {
                            let slot = &mut eqs[i * c + j][off + k * bc + j];
                            *slot = &*slot + &signed(a);
                        }
                    }
                }
            } else {
                if coeff.cols() != c || coeff.rows() != bc || br != r {
                    return Err(Error::shape(
                        "BlockSystem",
                        format!("right factor {:?} on block {br}x{bc} for a {r}x{c} equation", coeff.shape()),
                    ));
                }
                for i in 0..r {
                    for k in 0..bc {
                        for j in 0..c {
                            let b = coeff.get(k, j);
                            if b.is_zero() {
                                continue;
                            }
                            let slot = &mut eqs[i * c + j][off + i * bc + k];
                            *slot = &*slot + &signed(b);
                        }
                    }
                }
            }
        }
        self.rows
            .extend(eqs.into_iter().filter(|e| e.iter().any(|x| !x.is_zero())));
        Ok(())
    }

    pub fn constraint_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.total, self.rows.clone()).expect("rows have full width")
    }

    pub fn solve(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.field, self.total);
        }
        solve_homogeneous(&self.constraint_matrix())
    }

    /// Splits a flattened solution vector back into its blocks.
    pub fn split(&self, v: &[Scalar]) -> Vec<Matrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| {
                Matrix::from_vec(self.field, r, c, &v[off..off + r * c]).expect("block shape")
            })
            .collect()
    }
}
