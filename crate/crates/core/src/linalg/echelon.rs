//! Reduced row echelon forms.
//!
//! Over ℚ the forward pass is fraction-free (Bareiss): rows are cleared of
//! denominators and every intermediate entry is a minor of the input, so the
//! exact division by the previous pivot never leaves a remainder. Only the
//! final back-substitution works with fractions. Over 𝔽_p plain Gauss-Jordan
//! elimination is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::field::{Field, Scalar};

/// Nonzero rows of the reduced row echelon form together with their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Matrix) -> Echelon {
    rref_rows(m.field(), m.cols(), m.row_vecs())
}

pub fn rref_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Echelon {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    match field {
        Field::Rational => {
            let rows = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|s| match s {
                            Scalar::Rational(q) => q,
                            Scalar::Prime { .. } => unreachable!("field checked by caller"),
                        })
                        .collect()
                })
                .collect();
            let (rows, pivots) = rref_rational(cols, rows);
            Echelon {
                rows: rows
                    .into_iter()
                    .map(|r| r.into_iter().map(Scalar::Rational).collect())
                    .collect(),
                pivots,
            }
        }
        Field::Prime(p) => {
            let rows = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|s| match s {
                            Scalar::Prime { value, .. } => value as u64,
                            Scalar::Rational(_) => unreachable!("field checked by caller"),
                        })
                        .collect()
                })
                .collect();
            let (rows, pivots) = rref_prime(p as u64, cols, rows);
            Echelon {
                rows: rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|v| Scalar::Prime { value: v as u32, modulus: p })
                            .collect()
                    })
                    .collect(),
                pivots,
            }
        }
    }
}

fn clear_denominators(row: Vec<BigRational>) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.into_iter()
        .map(|q| {
            let (n, d) = q.into_raw();
            n * (&lcm / d)
        })
        .collect()
}

/// Fraction-free forward elimination; returns the integer echelon rows and pivot columns.
pub(crate) fn bareiss_forward(cols: usize, rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.into_iter().map(clear_denominators).collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut num = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    num -= &factor * &pivot_row[j];
                }
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn rref_rational(cols: usize, rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let (ints, pivots) = bareiss_forward(cols, rows);
    let mut out: Vec<Vec<BigRational>> = ints
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.into_iter().map(|x| BigRational::new(x, lead.clone())).collect()
        })
        .collect();
    for k in (0..pivots.len()).rev() {
        let pc = pivots[k];
        let (above, rest) = out.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &f * &pivot_row[j];
                }
            }
        }
    }
    (out, pivots)
}

fn rref_prime(p: u64, cols: usize, mut a: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let inv = |x: u64| {
        let (mut base, mut exp, mut acc) = (x % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Determinant of a square matrix (fraction-free over ℚ).
pub fn determinant(m: &Matrix) -> Scalar {
    assert!(m.is_square());
    let n = m.rows();
    let field = m.field();
    if n == 0 {
        return field.one();
    }
    match field {
        Field::Rational => {
            // Track row swaps by running Bareiss on an augmented copy is awkward;
            // instead do it directly here.
            let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
            let mut den = BigInt::one();
            for r in 0..n {
                let row: Vec<BigRational> = m
                    .row(r)
                    .iter()
                    .map(|s| s.as_rational().expect("rational field").clone())
                    .collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                den *= &lcm;
                a.push(row.into_iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
            }
            let mut sign = BigInt::one();
            let mut prev = BigInt::one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                    return field.zero();
                };
                if p != c {
                    a.swap(p, c);
                    sign = -sign;
                }
                for i in c + 1..n {
                    for j in c + 1..n {
                        let num = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                        a[i][j] = num / &prev;
                    }
                    a[i][c] = BigInt::zero();
                }
                prev = a[c][c].clone();
            }
            Scalar::Rational(BigRational::new(sign * prev, den))
        }
        Field::Prime(_) => {
            let mut a = m.row_vecs();
            let mut det = field.one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                    return field.zero();
                };
                if p != c {
                    a.swap(p, c);
                    det = -&det;
                }
                det = &det * &a[c][c];
                let inv = a[c][c].inv().expect("nonzero pivot");
                for i in c + 1..n {
                    let f = &a[i][c] * &inv;
                    if f.is_zero() {
                        continue;
                    }
                    for j in c..n {
                        let t = &f * &a[c][j];
                        a[i][j] = &a[i][j] - &t;
                    }
                }
            }
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_of_rank_deficient_matrix() {
        let m = Matrix::from_i64(Q, &[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        let e = rref(&m);
        assert_eq!(e.pivots, vec![0, 1]);
        let expect = Matrix::from_i64(Q, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(Matrix::from_rows(Q, 3, e.rows).unwrap(), expect);
    }

    #[test]
    fn rref_handles_fractions() {
        let half = Q.parse("1/2").unwrap();
        let third = Q.parse("1/3").unwrap();
        let m = Matrix::new(Q, 2, 2, vec![half.clone(), third.clone(), third, half]).unwrap();
        let e = rref(&m);
        assert_eq!(e.rank(), 2);
        assert_eq!(Matrix::from_rows(Q, 2, e.rows).unwrap(), Matrix::identity(Q, 2));
    }

    #[test]
    fn prime_field_rref() {
        let f5 = Field::prime(5).unwrap();
        // rows (1,2) and (3,1): 3*(1,2) = (3,6) = (3,1) mod 5
        let m = Matrix::from_i64(f5, &[&[1, 2], &[3, 1]]);
        assert_eq!(rref(&m).rank(), 1);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), Q.from_i64(-1));
        let m = Matrix::from_i64(Q, &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(determinant(&m), Q.from_i64(4));
        let f7 = Field::prime(7).unwrap();
        let m = Matrix::from_i64(f7, &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(determinant(&m), f7.from_i64(4));
        let h = Matrix::new(
            Q,
            2,
            2,
            ["1", "1/2", "1/2", "1/3"].iter().map(|s| Q.parse(s).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(determinant(&h), Q.parse("1/12").unwrap());
    }
}
