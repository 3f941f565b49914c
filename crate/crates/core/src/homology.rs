//! Bounded cochain complexes: cohomology, tensor products and Künneth,
//! filtered complexes with their spectral sequence pages and the décalage,
//! perfect pairings on graded spaces, and Lefschetz decompositions.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::FiniteAlgebra;
use crate::comodule::{kleiman_check, AlgModule, Involution, KleimanVerdict, ModuleMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{image, inverse, kernel, rank, Matrix, Subquotient, Subspace};
use crate::tannaka::DualityDatum;

/// `C^a → C^{a+1} → … → C^b`, zero outside `[a, b]`.
#[derive(Clone, Debug)]
pub struct Complex {
    field: Field,
    start: i64,
    dims: Vec<usize>,
    /// `diffs[k]: C^{a+k} → C^{a+k+1}`, shape `dims[k+1] × dims[k]`.
    diffs: Vec<Matrix>,
    modules: Option<Vec<AlgModule>>,
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: i64,
    pub space: Subquotient,
    pub module: Option<AlgModule>,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl Complex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(field: Field, start: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Input("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Input(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(Error::FieldMismatch(field, d.field()));
            }
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::shape(
                    "complex",
                    format!("d^{} has shape {:?}, expected {:?}", start + k as i64, d.shape(), (dims[k + 1], dims[k])),
                ));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::Input(format!("d∘d ≠ 0 from degree {}", start + k as i64)));
            }
        }
        Ok(Complex {
            field,
            start,
            dims,
            diffs,
            modules: None,
        })
    }

    /// A complex of modules; every differential must be a module map.
    pub fn of_modules(start: i64, modules: Vec<AlgModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let field = modules.first().map(|m| m.field()).ok_or_else(|| Error::Input("empty complex".into()))?;
        let mut c = Complex::new(field, start, modules.iter().map(AlgModule::dim).collect(), diffs)?;
        for (k, d) in c.diffs.iter().enumerate() {
            ModuleMap::new(modules[k].clone(), modules[k + 1].clone(), d.clone())
                .map_err(|_| Error::Input(format!("d^{} is not a module map", start + k as i64)))?;
        }
        c.modules = Some(modules);
        Ok(c)
    }

    /// `F` in degree 0.
    pub fn unit(field: Field) -> Self {
        Complex::new(field, 0, vec![1], vec![]).expect("valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn start(&self) -> i64 {
        self.start
    }
    pub fn end(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn diffs(&self) -> &[Matrix] {
        &self.diffs
    }
    pub fn modules(&self) -> Option<&[AlgModule]> {
        self.modules.as_deref()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.start && n <= self.end()).then(|| (n - self.start) as usize)
    }

    /// `d^n: C^n → C^{n+1}`, a zero matrix at the ends.
    pub fn diff(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn cohomology(&self) -> Result<Vec<CohomologyGroup>> {
        (self.start..=self.end())
            .map(|n| {
                let space = Subquotient::new(kernel(&self.diff(n)), image(&self.diff(n - 1)))?;
                let module = match &self.modules {
                    Some(ms) => Some(induced_module(&ms[self.index(n).expect("in range")], &space)?),
                    None => None,
                };
                Ok(CohomologyGroup { degree: n, space, module })
            })
            .collect()
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        (self.start..=self.end())
            .map(|n| kernel(&self.diff(n)).dim() - rank(&self.diff(n - 1)))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.start, &self.dims)
    }
}

fn alternating(start: i64, dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| if (start + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Euler characteristic of the cohomology.
pub fn cohomology_euler(c: &Complex) -> i64 {
    alternating(c.start, &c.cohomology_dims())
}

fn induced_module(m: &AlgModule, space: &Subquotient) -> Result<AlgModule> {
    let field = m.field();
    let reps = space.representatives();
    let action = m
        .actions()
        .iter()
        .map(|a| {
            let mut out = Matrix::zeros(field, reps.len(), reps.len());
            for (j, r) in reps.iter().enumerate() {
                let coords = space
                    .coordinates(&a.mul_vec(r)?)
                    .ok_or_else(|| Error::Precondition("the action does not preserve cocycles".into()))?;
                for (i, c) in coords.into_iter().enumerate() {
                    out.set(i, j, c);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    AlgModule::new(m.algebra().clone(), reps.len(), action)
}

/// The total complex of `C ⊠ C'`: in degree `n` the blocks `C^i ⊗ C'^{n−i}` by
/// increasing `i`, with `d(x ⊗ y) = dx ⊗ y + (−1)^{deg x} x ⊗ dy`.
pub fn tensor_complex(c: &Complex, c2: &Complex) -> Result<Complex> {
    if c.field != c2.field {
        return Err(Error::FieldMismatch(c.field, c2.field));
    }
    let field = c.field;
    let start = c.start + c2.start;
    let end = c.end() + c2.end();
    // blocks[n] = [(i, offset)] for the summands of degree n
    let blocks = |n: i64| -> Vec<(i64, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for i in c.start..=c.end() {
            let j = n - i;
            if j >= c2.start && j <= c2.end() {
                out.push((i, off));
                off += c.dim(i) * c2.dim(j);
            }
        }
        out
    };
    let total = |n: i64| -> usize { (c.start..=c.end()).map(|i| c.dim(i) * c2.dim(n - i)).sum() };
    let dims: Vec<usize> = (start..=end).map(total).collect();
    let mut diffs = Vec::new();
    for n in start..end {
        let mut d = Matrix::zeros(field, total(n + 1), total(n));
        let targets: BTreeMap<i64, usize> = blocks(n + 1).into_iter().collect();
        for (i, off) in blocks(n) {
            let j = n - i;
            if let Some(&t) = targets.get(&(i + 1)) {
                d.paste(t, off, &c.diff(i).kronecker(&Matrix::identity(field, c2.dim(j)))?);
            }
            if let Some(&t) = targets.get(&i) {
                let sign = if i.rem_euclid(2) == 0 { field.one() } else { -field.one() };
                d.paste(t, off, &Matrix::identity(field, c.dim(i)).kronecker(&c2.diff(j))?.scale(&sign));
            }
        }
        diffs.push(d);
    }
    Complex::new(field, start, dims, diffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub start: i64,
    /// `dim H^n(C ⊗ C')`.
    pub tensor: Vec<usize>,
    /// `Σ_{j+j'=n} dim H^j(C) · dim H^{j'}(C')`.
    pub predicted: Vec<usize>,
    pub holds: bool,
}

pub fn kunneth_check(c: &Complex, c2: &Complex) -> Result<KunnethReport> {
    let t = tensor_complex(c, c2)?;
    let tensor = t.cohomology_dims();
    let (h1, h2) = (c.cohomology_dims(), c2.cohomology_dims());
    let predicted = (t.start..=t.end())
        .map(|n| {
            (c.start..=c.end())
                .filter_map(|i| {
                    let j = n - i;
                    (j >= c2.start && j <= c2.end())
                        .then(|| h1[(i - c.start) as usize] * h2[(j - c2.start) as usize])
                })
                .sum()
        })
        .collect::<Vec<usize>>();
    Ok(KunnethReport {
        start: t.start,
        holds: tensor == predicted,
        tensor,
        predicted,
    })
}

/// A complex with a decreasing filtration `F^p C^n`, given for
/// `p = p0, …, p0 + len − 1`; below `p0` it is everything, from `p0 + len` on
/// it is zero.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: Complex,
    p0: i64,
    /// `steps[k][m] = F^{p0+m} C^{start+k}`.
    steps: Vec<Vec<Subspace>>,
}

impl FilteredComplex {
    pub fn new(complex: Complex, p0: i64, steps: Vec<Vec<Subspace>>) -> Result<Self> {
        if steps.len() != complex.dims.len() {
            return Err(Error::Input("the filtration must list steps for every degree".into()));
        }
        let len = steps.iter().map(Vec::len).max().unwrap_or(0);
        let mut padded = Vec::with_capacity(steps.len());
        for (k, mut s) in steps.into_iter().enumerate() {
            let n = complex.start + k as i64;
            let dim = complex.dims[k];
            for (m, sub) in s.iter().enumerate() {
                if sub.ambient_dim() != dim || sub.field() != complex.field {
                    return Err(Error::Input(format!("F^{} C^{n} does not live in C^{n}", p0 + m as i64)));
                }
                if m > 0 && !sub.is_subspace_of(&s[m - 1]) {
                    return Err(Error::Input(format!("F^{} C^{n} is not inside F^{} C^{n}", p0 + m as i64, p0 + m as i64 - 1)));
                }
            }
            if s.first().is_some_and(|f| f.dim() != dim) {
                return Err(Error::Input(format!("F^{p0} C^{n} must be all of C^{n}")));
            }
            s.resize(len, Subspace::zero(complex.field, dim));
            padded.push(s);
        }
        let fc = FilteredComplex { complex, p0, steps: padded };
        for n in fc.complex.start..fc.complex.end() {
            for p in fc.p0..fc.p0 + len as i64 {
                if !fc.step(n, p).image_under(&fc.complex.diff(n))?.is_subspace_of(&fc.step(n + 1, p)) {
                    return Err(Error::Input(format!("d does not preserve F^{p} in degree {n}")));
                }
            }
        }
        Ok(fc)
    }

    /// The one-step filtration `F^0 = C`, `F^1 = 0`.
    pub fn trivial(complex: Complex) -> Self {
        let steps = complex.dims.iter().map(|&d| vec![Subspace::full(complex.field, d)]).collect();
        FilteredComplex { complex, p0: 0, steps }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }
    pub fn p_range(&self) -> (i64, i64) {
        (self.p0, self.p0 + self.depth() as i64)
    }
    /// Number of listed filtration steps.
    pub fn depth(&self) -> usize {
        self.steps.first().map_or(0, Vec::len)
    }

    /// `F^p C^n`.
    pub fn step(&self, n: i64, p: i64) -> Subspace {
        let dim = self.complex.dim(n);
        let field = self.complex.field;
        match self.complex.index(n) {
            None => Subspace::zero(field, 0),
            Some(_) if p < self.p0 => Subspace::full(field, dim),
            Some(k) => self.steps[k].get((p - self.p0) as usize).cloned().unwrap_or_else(|| Subspace::zero(field, dim)),
        }
    }

    /// `Z_r^{p,n} = F^p C^n ∩ d⁻¹(F^{p+r} C^{n+1})`.
    fn cycles(&self, r: i64, p: i64, n: i64) -> Result<Subspace> {
        Ok(self.step(n, p).intersection(&self.step(n + 1, p + r).preimage_under(&self.complex.diff(n))?))
    }

    /// `E_r^{p,n} = Z_r^{p,n} / (Z_{r−1}^{p+1,n} + d Z_{r−1}^{p−r+1,n−1})`, as a dimension.
    pub fn page_entry(&self, r: i64, p: i64, n: i64) -> Result<usize> {
        let z = self.cycles(r, p, n)?;
        let lower = self.cycles(r - 1, p + 1, n)?;
        let boundaries = self.cycles(r - 1, p - r + 1, n - 1)?.image_under(&self.complex.diff(n - 1))?;
        Ok(Subquotient::new(z, lower.sum(&boundaries))?.dim())
    }

    /// Pages `E_0 … E_{r_max}`, plus `E_∞` (reached once `r` exceeds the depth).
    pub fn pages(&self, r_max: usize) -> Result<SpectralPages> {
        let (lo, hi) = self.p_range();
        let degrees: Vec<i64> = (self.complex.start..=self.complex.end()).collect();
        let ps: Vec<i64> = (lo..hi).collect();
        let page = |r: i64| -> Result<Vec<PageEntry>> {
            let cells: Vec<(i64, i64)> = ps.iter().flat_map(|&p| degrees.iter().map(move |&n| (p, n))).collect();
            cells
                .par_iter()
                .map(|&(p, n)| Ok(PageEntry { p, q: n - p, dim: self.page_entry(r, p, n)? }))
                .collect()
        };
        let pages = (0..=r_max as i64).map(page).collect::<Result<Vec<_>>>()?;
        let infinity = page(self.depth() as i64 + 1)?;
        Ok(SpectralPages { pages, infinity })
    }

    /// `Dec(F)^p C^n = {x ∈ F^{p+n} C^n : dx ∈ F^{p+n+1} C^{n+1}}`.
    pub fn decalage(&self) -> Result<FilteredComplex> {
        let c = &self.complex;
        let (lo, hi) = self.p_range();
        let p0 = lo - c.end() - 1;
        let p1 = hi - c.start;
        let steps = (c.start..=c.end())
            .map(|n| {
                (p0..p1)
                    .map(|p| {
                        Ok(self
                            .step(n, p + n)
                            .intersection(&self.step(n + 1, p + n + 1).preimage_under(&c.diff(n))?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(c.clone(), p0, steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct SpectralPages {
    pub pages: Vec<Vec<PageEntry>>,
    pub infinity: Vec<PageEntry>,
}

impl SpectralPages {
    /// `Σ_p dim E_∞^{p, n−p}` for total degree `n`.
    pub fn abutment(&self, n: i64) -> usize {
        self.infinity.iter().filter(|e| e.p + e.q == n).map(|e| e.dim).sum()
    }
}

#[derive(Clone, Debug)]
pub struct DecReport {
    /// `(p, n, dim E_1^p(Dec F) in degree n, dim E_2^{p+n}(F) in degree n)`.
    pub entries: Vec<(i64, i64, usize, usize)>,
    pub holds: bool,
}

/// Compares `E_1(Dec F)` with `E_2(F)` under `(p, n) ↦ (p + n, n)`.
pub fn dec_check(fc: &FilteredComplex) -> Result<DecReport> {
    let dec = fc.decalage()?;
    let (lo, hi) = dec.p_range();
    let c = fc.complex();
    let cells: Vec<(i64, i64)> = (lo - 1..=hi).flat_map(|p| (c.start..=c.end()).map(move |n| (p, n))).collect();
    let entries = cells
        .par_iter()
        .map(|&(p, n)| Ok((p, n, dec.page_entry(1, p, n)?, fc.page_entry(2, p + n, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecReport {
        holds: entries.iter().all(|(_, _, a, b)| a == b),
        entries,
    })
}

/// Pairings `H^i × H^{2n−i} → F` on a graded space `H^0, …, H^{2n}`.
#[derive(Clone, Debug)]
pub struct GradedPairing {
    pub field: Field,
    pub dims: Vec<usize>,
    /// Keyed by `i`; the matrix has shape `dims[i] × dims[2n−i]`.
    pub pairings: BTreeMap<usize, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingFailure {
    pub degree: usize,
    pub reason: String,
}

impl GradedPairing {
    pub fn new(field: Field, dims: Vec<usize>, pairings: BTreeMap<usize, Matrix>) -> Result<Self> {
        if dims.len().is_multiple_of(2) {
            return Err(Error::Input("a graded pairing needs degrees 0..2n".into()));
        }
        let top = dims.len() - 1;
        for (&i, m) in &pairings {
            if i > top {
                return Err(Error::Input(format!("pairing in degree {i} beyond 2n = {top}")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dims[i], dims[top - i]) {
                return Err(Error::shape("pairing", format!("degree {i}: {:?} vs {:?}", m.shape(), (dims[i], dims[top - i]))));
            }
        }
        Ok(GradedPairing { field, dims, pairings })
    }

    pub fn n(&self) -> usize {
        (self.dims.len() - 1) / 2
    }

    /// The matrix of `H^i × H^{2n−i} → F`, from the partner degree if needed.
    pub fn matrix(&self, i: usize) -> Option<Matrix> {
        let top = self.dims.len() - 1;
        self.pairings.get(&i).cloned().or_else(|| self.pairings.get(&(top - i)).map(Matrix::transpose))
    }

    /// Perfectness in every degree; the witness for a singular pairing is a
    /// kernel vector.
    pub fn verify(&self) -> Vec<PairingFailure> {
        let mut failures = Vec::new();
        for i in 0..self.dims.len() {
            let Some(m) = self.matrix(i) else {
                if self.dims[i] > 0 {
                    failures.push(PairingFailure { degree: i, reason: "no pairing given".into() });
                }
                continue;
            };
            if !m.is_square() {
                failures.push(PairingFailure { degree: i, reason: format!("not square: {}×{}", m.rows(), m.cols()) });
            } else if let Some(v) = kernel(&m.transpose()).basis().first() {
                failures.push(PairingFailure {
                    degree: i,
                    reason: format!("singular: x = {} pairs to zero with everything", fmt_vec(v)),
                });
            }
        }
        failures
    }

    pub fn is_perfect(&self) -> bool {
        self.verify().is_empty()
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
}

/// Per degree `i`, `H^{2n−i}` as the dual of `H^i`: `ε(x ⊗ y) = ⟨x, y⟩` and
/// `δ(1) = Σ_ℓ e^ℓ ⊗ e_ℓ` with `e^ℓ` the basis dual to `e_ℓ` under the pairing.
pub fn pairing_duality(gp: &GradedPairing) -> Result<Vec<DualityDatum>> {
    let field = gp.field;
    let top = gp.dims.len() - 1;
    (0..=top)
        .map(|i| {
            let (a, b) = (gp.dims[i], gp.dims[top - i]);
            let m = gp.matrix(i).unwrap_or_else(|| Matrix::zeros(field, a, b));
            let x = if a == b { inverse(&m) } else { None }.ok_or_else(|| {
                Error::Precondition(format!("the pairing in degree {i} is not perfect"))
            })?;
            let mut eval = Matrix::zeros(field, 1, a * b);
            let mut coev = Matrix::zeros(field, b * a, 1);
            for j in 0..a {
                for k in 0..b {
                    eval.set(0, j * b + k, m.get(j, k).clone());
                    coev.set(k * a + j, 0, x.get(k, j).clone());
                }
            }
            let datum = DualityDatum {
                dim: a,
                dual_dim: b,
                coevaluation: coev,
                evaluation: eval,
                module: None,
                dual: None,
            };
            datum.verify(None)?;
            Ok(datum)
        })
        .collect()
}

/// A graded space `H^0, …, H^{2n}` with `ℓ: H^i → H^{i+2}` satisfying hard Lefschetz.
#[derive(Clone, Debug)]
pub struct LefschetzDatum {
    field: Field,
    n: usize,
    dims: Vec<usize>,
    /// `ell[i]: H^i → H^{i+2}` for `i = 0, …, 2n−2`.
    ell: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct LefschetzDecomposition {
    /// `dim p^i` for `i = 0, …, 2n` (zero above `n`).
    pub primitive_dims: Vec<usize>,
    pub primitive: Vec<Subspace>,
    /// Per degree, the vectors `ℓ^k(p^{i−2k})` as columns.
    pub certificate: Vec<Matrix>,
    /// Each certificate matrix is square of full rank.
    pub verified: bool,
}

impl LefschetzDatum {
    pub fn new(field: Field, n: usize, dims: Vec<usize>, ell: Vec<Matrix>) -> Result<Self> {
        if dims.len() != 2 * n + 1 {
            return Err(Error::Input(format!("relative dimension {n} needs {} degrees, got {}", 2 * n + 1, dims.len())));
        }
        if ell.len() != (2 * n).saturating_sub(1) {
            return Err(Error::Input(format!("expected {} maps ℓ, got {}", (2 * n).saturating_sub(1), ell.len())));
        }
        for (i, m) in ell.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dims[i + 2], dims[i]) {
                return Err(Error::shape("lefschetz", format!("ℓ on H^{i} has shape {:?}", m.shape())));
            }
        }
        let datum = LefschetzDatum { field, n, dims, ell };
        for i in 1..=n {
            let power = datum.power(n - i, i)?;
            if !crate::linalg::is_invertible(&power) {
                return Err(Error::Precondition(format!(
                    "hard Lefschetz fails: ℓ^{i}: H^{} → H^{} is not invertible",
                    n - i,
                    n + i
                )));
            }
        }
        Ok(datum)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `ℓ^k: H^i → H^{i+2k}`, zero once past the top degree.
    pub fn power(&self, i: usize, k: usize) -> Result<Matrix> {
        let top = 2 * self.n;
        if i + 2 * k > top {
            return Ok(Matrix::zeros(self.field, 0, self.dims[i]));
        }
        let mut m = Matrix::identity(self.field, self.dims[i]);
        for s in 0..k {
            m = self.ell[i + 2 * s].mul(&m)?;
        }
        Ok(m)
    }

    /// The cohomology of projective `k`-space: `F` in each even degree, `ℓ = 1`.
    pub fn projective(field: Field, k: usize) -> Self {
        let dims = (0..=2 * k).map(|i| usize::from(i % 2 == 0)).collect::<Vec<_>>();
        let ell = (0..(2 * k).saturating_sub(1))
            .map(|i| Matrix::identity(field, 1).submatrix(0, dims[i + 2], 0, dims[i]))
            .collect();
        LefschetzDatum::new(field, k, dims, ell).expect("hard Lefschetz holds")
    }

    /// `H ⊗ H'` graded by total degree with `ℓ ⊗ 1 + 1 ⊗ ℓ'`; blocks in degree
    /// `m` are `H^i ⊗ H'^{m−i}` by increasing `i`.
    pub fn product(&self, other: &LefschetzDatum) -> Result<LefschetzDatum> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let field = self.field;
        let (ta, tb) = (2 * self.n, 2 * other.n);
        let top = ta + tb;
        let terms = |m: usize| -> Vec<(usize, usize)> {
            let mut off = 0;
            let mut out = Vec::new();
            for i in 0..=ta.min(m) {
                if m - i <= tb {
                    out.push((i, off));
                    off += self.dims[i] * other.dims[m - i];
                }
            }
            out
        };
        let dims: Vec<usize> = (0..=top)
            .map(|m| terms(m).iter().map(|&(i, _)| self.dims[i] * other.dims[m - i]).sum())
            .collect();
        let ell = (0..top.saturating_sub(1))
            .map(|m| {
                let mut out = Matrix::zeros(field, dims[m + 2], dims[m]);
                let target: BTreeMap<usize, usize> = terms(m + 2).into_iter().collect();
                for (i, off) in terms(m) {
                    let j = m - i;
                    if i + 2 <= ta {
                        let t = target[&(i + 2)];
                        out.paste(t, off, &self.ell[i].kronecker(&Matrix::identity(field, other.dims[j]))?);
                    }
                    if j + 2 <= tb {
                        let t = target[&i];
                        out.paste(t, off, &Matrix::identity(field, self.dims[i]).kronecker(&other.ell[j])?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        LefschetzDatum::new(field, self.n + other.n, dims, ell)
    }

    /// `p^i = H^i ∩ ker ℓ^{n−i+1}` and the certificate `H^i = ⊕_k ℓ^k p^{i−2k}`.
    pub fn decompose(&self) -> Result<LefschetzDecomposition> {
        let top = 2 * self.n;
        let primitive: Vec<Subspace> = (0..=top)
            .map(|i| {
                if i <= self.n {
                    Ok(kernel(&self.power(i, self.n - i + 1)?))
                } else {
                    Ok(Subspace::zero(self.field, self.dims[i]))
                }
            })
            .collect::<Result<_>>()?;
        let mut certificate = Vec::with_capacity(top + 1);
        let mut verified = true;
        for i in 0..=top {
            let mut columns: Vec<Vec<Scalar>> = Vec::new();
            for k in 0..=i / 2 {
                let j = i - 2 * k;
                // ℓ^k kills p^j once k > n − j
                if j + k > self.n {
                    continue;
                }
                let lk = self.power(j, k)?;
                for b in primitive[j].basis() {
                    columns.push(lk.mul_vec(b)?);
                }
            }
            let m = Matrix::from_rows(self.field, self.dims[i], columns)?.transpose();
            verified &= m.cols() == self.dims[i] && rank(&m) == self.dims[i];
            certificate.push(m);
        }
        Ok(LefschetzDecomposition {
            primitive_dims: primitive.iter().map(Subspace::dim).collect(),
            primitive,
            certificate,
            verified,
        })
    }
}

/// Semisimplicity of an algebra of endomorphisms of `H^*` through the
/// positivity of `tr(a a')` for a supplied involution.
pub fn lefschetz_semisimple(a: &FiniteAlgebra, involution: &Involution) -> Result<KleimanVerdict> {
    kleiman_check(a, involution).map_err(|e| match e {
        Error::Falsified { identity, witness } => {
            Error::Precondition(format!("the involution is not an anti-automorphism ({identity}): {witness}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn two_term(d: i64) -> Complex {
        Complex::new(Q, 0, vec![1, 1], vec![Matrix::from_i64(Q, &[&[d]])]).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(two_term(1).cohomology_dims(), vec![0, 0]);
        assert_eq!(two_term(0).cohomology_dims(), vec![1, 1]);
        let p1 = Complex::new(Q, 0, vec![1, 0, 1], vec![Matrix::zeros(Q, 0, 1), Matrix::zeros(Q, 1, 0)]).unwrap();
        assert_eq!(p1.cohomology_dims(), vec![1, 0, 1]);
        let bad = Complex::new(
            Q,
            0,
            vec![1, 1, 1],
            vec![Matrix::from_i64(Q, &[&[1]]), Matrix::from_i64(Q, &[&[1]])],
        );
        assert!(matches!(bad, Err(Error::Input(m)) if m.contains("degree 0")));
    }

    #[test]
    fn kunneth_examples() {
        let c = two_term(0);
        let r = kunneth_check(&c, &c).unwrap();
        assert_eq!(r.tensor, vec![1, 2, 1]);
        assert!(r.holds);
        let u = Complex::unit(Q);
        assert_eq!(tensor_complex(&two_term(1), &u).unwrap().cohomology_dims(), vec![0, 0]);
        let acyclic = tensor_complex(&two_term(1), &two_term(0)).unwrap();
        assert!(acyclic.cohomology_dims().iter().all(|&d| d == 0));
        let t = tensor_complex(&two_term(1), &two_term(1)).unwrap();
        for k in 0..t.diffs().len() - 1 {
            assert!(t.diffs()[k + 1].mul(&t.diffs()[k]).unwrap().is_zero());
        }
    }

    fn diag_filtered() -> FilteredComplex {
        let c = Complex::new(Q, 0, vec![2, 2], vec![Matrix::from_i64(Q, &[&[1, 0], &[0, 0]])]).unwrap();
        let e1 = |_: ()| Subspace::span(Q, 2, vec![vec![Q.one(), Q.zero()]]).unwrap();
        FilteredComplex::new(c, 0, vec![vec![Subspace::full(Q, 2), e1(())], vec![Subspace::full(Q, 2), e1(())]]).unwrap()
    }

    #[test]
    fn pages_of_trivial_filtration() {
        let c = two_term(0);
        let fc = FilteredComplex::trivial(c.clone());
        let pages = fc.pages(3).unwrap();
        let e1: Vec<usize> = pages.pages[1].iter().map(|e| e.dim).collect();
        assert_eq!(e1, c.cohomology_dims());
        assert_eq!(pages.pages[2], pages.pages[1]);
        assert!(dec_check(&fc).unwrap().holds);
    }

    #[test]
    fn two_step_filtration() {
        let fc = diag_filtered();
        let pages = fc.pages(3).unwrap();
        for w in pages.pages.windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                assert!(b.dim <= a.dim);
            }
        }
        for n in 0..=1 {
            assert_eq!(pages.abutment(n), fc.complex().cohomology_dims()[n as usize]);
        }
        // E_0 = gr, every entry 1; d maps gr^0 → gr^0 by 0 and gr^1 → gr^1 by 1.
        assert!(pages.pages[0].iter().all(|e| e.dim == 1));
        let e1: Vec<(i64, i64, usize)> = pages.pages[1].iter().map(|e| (e.p, e.q, e.dim)).collect();
        assert_eq!(e1, vec![(0, 0, 1), (0, 1, 1), (1, -1, 0), (1, 0, 0)]);
        assert!(dec_check(&fc).unwrap().holds);
    }

    #[test]
    fn filtration_must_be_preserved() {
        let c = Complex::new(Q, 0, vec![2, 2], vec![Matrix::from_i64(Q, &[&[0, 1], &[0, 0]])]).unwrap();
        let e2 = Subspace::span(Q, 2, vec![vec![Q.zero(), Q.one()]]).unwrap();
        let f = FilteredComplex::new(c, 0, vec![vec![Subspace::full(Q, 2), e2.clone()], vec![Subspace::full(Q, 2), e2]]);
        assert!(f.is_err());
    }

    #[test]
    fn pairings() {
        let one = |v: i64| Matrix::from_i64(Q, &[&[v]]);
        let gp = GradedPairing::new(Q, vec![1], BTreeMap::from([(0, one(1))])).unwrap();
        assert!(gp.is_perfect());
        assert!(pairing_duality(&gp).unwrap().iter().all(|d| d.triangles().unwrap().d1));
        let p1 = GradedPairing::new(Q, vec![1, 0, 1], BTreeMap::from([(0, one(1))])).unwrap();
        assert!(p1.is_perfect());
        assert_eq!(pairing_duality(&p1).unwrap().len(), 3);
        let sing = GradedPairing::new(Q, vec![2], BTreeMap::from([(0, Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]))])).unwrap();
        let f = sing.verify();
        assert_eq!(f.len(), 1);
        assert!(f[0].reason.starts_with("singular"));
        let g = GradedPairing::new(Q, vec![2, 0, 2], BTreeMap::from([(0, Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]))])).unwrap();
        for d in pairing_duality(&g).unwrap() {
            d.verify(None).unwrap();
        }
    }

    #[test]
    fn lefschetz_examples() {
        let p1 = LefschetzDatum::new(Q, 1, vec![1, 0, 1], vec![Matrix::from_i64(Q, &[&[1]])]).unwrap();
        let d = p1.decompose().unwrap();
        assert_eq!(d.primitive_dims, vec![1, 0, 0]);
        assert!(d.verified);
        // ℙ¹×ℙ¹: ℓ = h1 + h2, H^2 = span(h1, h2), h1h2 spans H^4.
        let ell = vec![
            Matrix::from_i64(Q, &[&[1], &[1]]),
            Matrix::zeros(Q, 0, 0),
            Matrix::from_i64(Q, &[&[1, 1]]),
        ];
        let sq = LefschetzDatum::new(Q, 2, vec![1, 0, 2, 0, 1], ell).unwrap();
        let d = sq.decompose().unwrap();
        assert_eq!(d.primitive_dims, vec![1, 0, 1, 0, 0]);
        assert!(d.verified);
        let built = LefschetzDatum::projective(Q, 1).product(&LefschetzDatum::projective(Q, 1)).unwrap();
        assert_eq!(built.decompose().unwrap().primitive_dims, vec![1, 0, 1, 0, 0]);
        let p2p1 = LefschetzDatum::projective(Q, 2).product(&LefschetzDatum::projective(Q, 1)).unwrap();
        assert_eq!(p2p1.dims(), &[1, 0, 2, 0, 2, 0, 1]);
        assert!(p2p1.decompose().unwrap().verified);
        let pt = LefschetzDatum::new(Q, 0, vec![3], vec![]).unwrap();
        assert_eq!(pt.decompose().unwrap().primitive_dims, vec![3]);
        let bad = LefschetzDatum::new(Q, 1, vec![1, 0, 1], vec![Matrix::from_i64(Q, &[&[0]])]);
        assert!(matches!(bad, Err(Error::Precondition(m)) if m.contains("ℓ^1")));
    }

    #[test]
    fn lefschetz_semisimplicity() {
        let scalars = FiniteAlgebra::matrix_algebra(Q, 1);
        let v = lefschetz_semisimple(&scalars, &Involution::transpose(&scalars).unwrap()).unwrap();
        assert_eq!(v.semisimple, Some(true));
        let m2 = FiniteAlgebra::matrix_algebra(Q, 2);
        let v = lefschetz_semisimple(&m2, &Involution::transpose(&m2).unwrap()).unwrap();
        assert_eq!(v.positive_definite, Some(true));
    }
}
