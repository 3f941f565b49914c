//! Oracles for the integration tests. They read matrices out of the crate's
//! types but do all arithmetic here, with plain fraction-by-fraction Gaussian
//! elimination and brute-force enumeration.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use nori_kernel::algebra::FiniteAlgebra;
use nori_kernel::diagram::Representation;
use nori_kernel::{Field, Matrix, Scalar};

/// Entry of an oracle matrix: a rational, or a residue modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Q,
    Mod(u64),
}

impl Arith {
    pub fn of(field: Field) -> Self {
        match field.characteristic() {
            0 => Arith::Q,
            p => Arith::Mod(p as u64),
        }
    }
}

pub fn q(s: &Scalar) -> BigRational {
    match s.as_rational() {
        Some(r) => r.clone(),
        None => s.to_text().parse::<BigInt>().map(BigRational::from_integer).expect("residue"),
    }
}

pub fn residue(r: &BigRational, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let num = ((r.numer() % &p_big) + &p_big) % &p_big;
    let den = ((r.denom() % &p_big) + &p_big) % &p_big;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    assert!(den != 0, "denominator divisible by {p}");
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(q).collect()).collect()
}

/// Rank by textbook elimination.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let t = &rows[rank][k] * &f;
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_rows(arith: Arith, rows: Vec<Vec<BigRational>>) -> usize {
    match arith {
        Arith::Q => rank_q(rows),
        Arith::Mod(p) => rank_mod(rows.iter().map(|r| r.iter().map(|x| residue(x, p)).collect()).collect(), p),
    }
}

pub fn oracle_rank(m: &Matrix) -> usize {
    rank_rows(Arith::of(m.field()), rows_of(m))
}

/// Equations `A·X_src = X_dst·A` for each `(src, dst, A)`, over the unknowns
/// of all vertex matrices `X_v` (row-major, vertex after vertex).
pub fn commutation_equations(dims: &[usize], maps: &[(usize, usize, Vec<Vec<BigRational>>)]) -> Vec<Vec<BigRational>> {
    let mut offsets = vec![0];
    for d in dims {
        offsets.push(offsets.last().unwrap() + d * d);
    }
    let unknowns = *offsets.last().unwrap();
    let mut eqs = Vec::new();
    for (s, t, a) in maps {
        let (ds, dt) = (dims[*s], dims[*t]);
        for i in 0..dt {
            for j in 0..ds {
                // (A X_s)_{ij} − (X_t A)_{ij}
                let mut row = vec![BigRational::zero(); unknowns];
                for k in 0..ds {
                    row[offsets[*s] + k * ds + j] += &a[i][k];
                }
                for k in 0..dt {
                    row[offsets[*t] + i * dt + k] -= &a[k][j];
                }
                eqs.push(row);
            }
        }
    }
    if eqs.is_empty() {
        eqs.push(vec![BigRational::zero(); unknowns]);
    }
    eqs
}

/// dim End(H) from the edge maps, by counting free unknowns.
pub fn end_dim(rep: &Representation) -> usize {
    let maps: Vec<_> = rep
        .diagram()
        .edges()
        .iter()
        .zip(rep.maps())
        .map(|(e, m)| (e.src, e.dst, rows_of(m)))
        .collect();
    end_dim_from(rep.field(), rep.dims(), &maps)
}

pub fn end_dim_from(field: Field, dims: &[usize], maps: &[(usize, usize, Vec<Vec<BigRational>>)]) -> usize {
    let eqs = commutation_equations(dims, maps);
    let unknowns = eqs[0].len();
    unknowns - rank_rows(Arith::of(field), eqs)
}

/// Composite matrices of every directed path of length 1..=max_len.
pub fn all_paths(rep: &Representation, max_len: usize) -> Vec<(usize, usize, Vec<Vec<BigRational>>)> {
    let edges: Vec<_> = rep
        .diagram()
        .edges()
        .iter()
        .zip(rep.maps())
        .map(|(e, m)| (e.src, e.dst, rows_of(m)))
        .collect();
    let mut frontier = edges.clone();
    let mut out = edges.clone();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for (s, t, a) in &frontier {
            for (s2, t2, b) in &edges {
                if s2 == t {
                    next.push((*s, *t2, matmul(b, a, rep.dims()[*s])));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>], inner_cols: usize) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            (0..inner_cols)
                .map(|j| row.iter().zip(b).fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Structure constants of `a` reduced modulo `p`: `table[i][j][k]` is the
/// coefficient of `e_k` in `e_i e_j`.
pub fn structure_mod(a: &FiniteAlgebra, p: u64) -> (Vec<Vec<Vec<u64>>>, Vec<u64>) {
    let d = a.dim();
    let mut table = vec![vec![vec![0u64; d]; d]; d];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (k, c) in a.product(i, j) {
                cell[*k] = residue(&q(c), p);
            }
        }
    }
    let unit = a.unit().iter().map(|c| residue(&q(c), p)).collect();
    (table, unit)
}

fn mul_mod(table: &[Vec<Vec<u64>>], x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    let d = x.len();
    let mut out = vec![0u64; d];
    for i in 0..d {
        if x[i] == 0 {
            continue;
        }
        for j in 0..d {
            if y[j] == 0 {
                continue;
            }
            let c = x[i] * y[j] % p;
            for k in 0..d {
                out[k] = (out[k] + c * table[i][j][k]) % p;
            }
        }
    }
    out
}

fn is_nilpotent_mod(table: &[Vec<Vec<u64>>], x: &[u64], p: u64) -> bool {
    let d = x.len();
    let mut power = x.to_vec();
    for _ in 0..d {
        if power.iter().all(|&c| c == 0) {
            return true;
        }
        power = mul_mod(table, &power, x, p);
    }
    power.iter().all(|&c| c == 0)
}

fn enumerate(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(d as u32);
    (0..total).map(move |mut n| {
        (0..d)
            .map(|_| {
                let c = n % p;
                n /= p;
                c
            })
            .collect()
    })
}

/// The Jacobson radical by exhaustive search over 𝔽_p: `x` lies in it iff
/// `a·x` is nilpotent for every `a`. Returns the number of radical elements.
pub fn brute_force_radical_size(table: &[Vec<Vec<u64>>], p: u64) -> u64 {
    let d = table.len();
    let all: Vec<Vec<u64>> = enumerate(d, p).collect();
    let nilpotent: std::collections::HashSet<Vec<u64>> =
        all.iter().filter(|x| is_nilpotent_mod(table, x, p)).cloned().collect();
    all.iter()
        .filter(|x| nilpotent.contains(*x) && all.iter().all(|a| nilpotent.contains(&mul_mod(table, a, x, p))))
        .count() as u64
}

pub fn rational_identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}
