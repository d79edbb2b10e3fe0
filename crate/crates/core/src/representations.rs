//! Reduced Burau and coloured Gassner matrices at a torus point, computed
//! with Fox calculus from the Artin action, together with the
//! skew-Hermitian intersection form they preserve.
//!
//! Conventions: `sigma_i` acts by `x_i -> x_i x_{i+1} x_i^-1`,
//! `x_{i+1} -> x_i`; letters of a braid word act in reading order; puncture
//! `j` carries `u_j = omega_{|c(j)|}^{sgn c(j)}`.

use crate::braidtangle::{check_omega, ColouredBraid, ColouredObject};
use crate::hermforms::{IsotropicRelation, SkewSpace};
use crate::linalg::{identity, lstsq, max_abs, nullspace, zeros};
use crate::{CMat, Complex64, Error, Result};

/// A letter `x_g^{e}` of a free group word, `g` 0-based, `e = ±1`.
pub type Letter = (usize, i8);
pub type Word = Vec<Letter>;

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Fox derivative `d w / d x_i` evaluated at `x_k -> values[k]`.
pub fn fox_derivative(w: &[Letter], i: usize, values: &[Complex64]) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut prefix = Complex64::new(1.0, 0.0);
    for &(g, e) in w {
        if e > 0 {
            if g == i {
                total += prefix;
            }
            prefix *= values[g];
        } else {
            prefix /= values[g];
            if g == i {
                total -= prefix;
            }
        }
    }
    total
}

/// Image of a word under the evaluation `x_k -> values[k]`.
pub fn evaluate(w: &[Letter], values: &[Complex64]) -> Complex64 {
    w.iter()
        .map(|&(g, e)| if e > 0 { values[g] } else { values[g].inv() })
        .product()
}

/// An automorphism of the free group `F_n`, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupAutomorphism {
    pub images: Vec<Word>,
}

impl FreeGroupAutomorphism {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).map(|j| vec![(j, 1)]).collect(),
        }
    }

    /// Artin generator `sigma_{|k|}^{sgn k}`.
    pub fn artin(n: usize, k: i32) -> Self {
        let mut a = Self::identity(n);
        let i = k.unsigned_abs() as usize - 1;
        if k > 0 {
            a.images[i] = vec![(i, 1), (i + 1, 1), (i, -1)];
            a.images[i + 1] = vec![(i, 1)];
        } else {
            a.images[i] = vec![(i + 1, 1)];
            a.images[i + 1] = vec![(i + 1, -1), (i, 1), (i + 1, 1)];
        }
        a
    }

    /// Substitutes the images into a word and reduces.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for &(g, e) in w {
            if e > 0 {
                out.extend_from_slice(&self.images[g]);
            } else {
                out.extend(invert(&self.images[g]));
            }
        }
        free_reduce(&out)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            images: self.images.iter().map(|w| next.apply(w)).collect(),
        }
    }
}

pub fn braid_to_automorphism(b: &ColouredBraid) -> FreeGroupAutomorphism {
    let n = b.strands();
    b.word()
        .iter()
        .fold(FreeGroupAutomorphism::identity(n), |acc, &k| {
            acc.then(&FreeGroupAutomorphism::artin(n, k))
        })
}

/// The punctured disk with its puncture values at a fixed `omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct PuncturedDiskModel {
    pub object: ColouredObject,
    pub omega: Vec<Complex64>,
    pub values: Vec<Complex64>,
    /// Entries `u_j - 1`; its kernel is the reduced homology.
    pub boundary_row: Vec<Complex64>,
}

impl PuncturedDiskModel {
    pub fn new(object: &ColouredObject, omega: &[Complex64], tol: f64) -> Result<Self> {
        check_omega(omega, object.mu, tol)?;
        let values = object.puncture_values(omega);
        let boundary_row = values.iter().map(|u| u - 1.0).collect();
        Ok(Self {
            object: object.clone(),
            omega: omega.to_vec(),
            values,
            boundary_row,
        })
    }

    pub fn punctures(&self) -> usize {
        self.values.len()
    }

    /// Columns `e_j - kappa_j e_{j+1}` with `kappa_j = (u_j - 1)/(u_{j+1} - 1)`.
    pub fn kernel_basis(&self) -> CMat {
        let n = self.punctures();
        let mut k = zeros(n, n.saturating_sub(1));
        for j in 0..n.saturating_sub(1) {
            k[(j, j)] = Complex64::new(1.0, 0.0);
            k[(j + 1, j)] = -self.boundary_row[j] / self.boundary_row[j + 1];
        }
        k
    }

    /// The intersection pairing on the free module with basis `x_1..x_n`:
    /// `conj` of the upper-triangular matrix with diagonal `1 - conj(u_j)`
    /// and entries `(1 - u_j)(1 - conj(u_k))` above it.
    pub fn full_form(&self) -> CMat {
        let n = self.punctures();
        let u = &self.values;
        let one = Complex64::new(1.0, 0.0);
        let mut e = zeros(n, n);
        for j in 0..n {
            e[(j, j)] = one - u[j].conj();
            for k in j + 1..n {
                e[(j, k)] = (one - u[j]) * (one - u[k].conj());
            }
        }
        e.map(|z| z.conj())
    }
}

/// Fox Jacobian `M[i][j] = d(image of x_j)/d x_i`, evaluated at the model.
///
/// For a braid the model must be the target one: the images are words in
/// the generators at the top.
pub fn fox_jacobian(a: &FreeGroupAutomorphism, model: &PuncturedDiskModel) -> CMat {
    let n = a.images.len();
    CMat::from_fn(n, n, |i, j| fox_derivative(&a.images[j], i, &model.values))
}

/// A reduced representation matrix with its two disk models.
#[derive(Debug, Clone)]
pub struct EvaluatedRep {
    pub matrix: CMat,
    pub source_model: PuncturedDiskModel,
    pub target_model: PuncturedDiskModel,
}

pub fn reduced_rep(b: &ColouredBraid, omega: &[Complex64], tol: f64) -> Result<EvaluatedRep> {
    let source_model = PuncturedDiskModel::new(b.source(), omega, tol)?;
    let target_model = PuncturedDiskModel::new(&b.target(), omega, tol)?;
    let m = fox_jacobian(&braid_to_automorphism(b), &target_model);
    let ks = source_model.kernel_basis();
    let kt = target_model.kernel_basis();
    let image = &m * &ks;
    let matrix = lstsq(&kt, &image, tol);
    let miss = max_abs(&(&kt * &matrix - &image));
    if miss > 1e3 * tol * max_abs(&image).max(1.0) {
        return Err(Error::Dimension(format!(
            "Jacobian leaves the reduced subspace (residual {miss:.3e})"
        )));
    }
    Ok(EvaluatedRep {
        matrix,
        source_model,
        target_model,
    })
}

/// The intersection form on the reduced homology of the punctured disk.
#[derive(Debug, Clone)]
pub struct DiskForm {
    pub model: PuncturedDiskModel,
    pub form: CMat,
}

impl DiskForm {
    pub fn space(&self) -> SkewSpace {
        SkewSpace::new(self.form.clone(), 1e-6).expect("closed form is skew-Hermitian")
    }
}

/// `K* E K` for the kernel basis `K` and the full pairing `E`.
///
/// Degenerate exactly when `I_c(omega) = 1`; no error is raised there so
/// that callers can still study isotropy.
pub fn invariant_form(c: &ColouredObject, omega: &[Complex64], tol: f64) -> Result<DiskForm> {
    let model = PuncturedDiskModel::new(c, omega, tol)?;
    let k = model.kernel_basis();
    let form = k.adjoint() * model.full_form() * &k;
    let form = (&form - form.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(DiskForm { model, form })
}

/// Solves `R* J_target R = J_source` over every generator between the
/// rearrangements of `c`, returning the component at `c` scaled to unit
/// Frobenius norm. Its sign is aligned with [`invariant_form`].
pub fn solve_invariance_system(
    c: &ColouredObject,
    omega: &[Complex64],
    tol: f64,
) -> Result<CMat> {
    let n = c.len();
    if n < 2 {
        return Err(Error::NonUniqueForm { dim: 0 });
    }
    let d = n - 1;
    let per = d * d;
    // Orbit of c under adjacent swaps.
    let mut orbit = vec![c.entries.clone()];
    let mut k = 0;
    while k < orbit.len() {
        for i in 0..d {
            let mut e = orbit[k].clone();
            e.swap(i, i + 1);
            if !orbit.contains(&e) {
                orbit.push(e);
            }
        }
        k += 1;
    }
    let index = |e: &Vec<i32>| orbit.iter().position(|x| x == e).unwrap();

    // J = i H with H Hermitian: real diagonal, (re, im) above the diagonal.
    let basis_matrix = |p: usize| -> CMat {
        let mut h = zeros(d, d);
        let mut q = 0;
        for a in 0..d {
            if q == p {
                h[(a, a)] = Complex64::new(1.0, 0.0);
            }
            q += 1;
            for b in a + 1..d {
                if q == p {
                    h[(a, b)] = Complex64::new(1.0, 0.0);
                    h[(b, a)] = Complex64::new(1.0, 0.0);
                }
                if q + 1 == p {
                    h[(a, b)] = Complex64::new(0.0, 1.0);
                    h[(b, a)] = Complex64::new(0.0, -1.0);
                }
                q += 2;
            }
        }
        h * Complex64::i()
    };
    let unit: Vec<CMat> = (0..per).map(basis_matrix).collect();

    let cols = orbit.len() * per;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (s, e) in orbit.iter().enumerate() {
        let src = ColouredObject::new(c.mu, e.clone())?;
        for i in 1..=d {
            let b = ColouredBraid::new(src.clone(), vec![i as i32])?;
            let t = index(&b.target().entries);
            let r = reduced_rep(&b, omega, tol)?.matrix;
            let mut block = vec![vec![0.0; cols]; 2 * per];
            for p in 0..per {
                let lhs = r.adjoint() * &unit[p] * &r;
                for (q, z) in lhs.iter().enumerate() {
                    block[2 * q][t * per + p] += z.re;
                    block[2 * q + 1][t * per + p] += z.im;
                }
                for (q, z) in unit[p].iter().enumerate() {
                    block[2 * q][s * per + p] -= z.re;
                    block[2 * q + 1][s * per + p] -= z.im;
                }
            }
            rows.extend(block);
        }
    }
    let system = CMat::from_fn(rows.len(), cols, |r, c| Complex64::from(rows[r][c]));
    let kernel = nullspace(&system, tol);
    if kernel.ncols() != 1 {
        return Err(Error::NonUniqueForm { dim: kernel.ncols() });
    }
    // A real kernel vector up to phase.
    let v = kernel.column(0);
    let big = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
    let phase = big / big.norm();
    let mut j = zeros(d, d);
    for p in 0..per {
        j += &unit[p] * Complex64::from((v[p] / phase).re);
    }
    let norm = j.norm();
    j /= Complex64::from(norm);
    let reference = invariant_form(c, omega, tol)?.form;
    if (j.adjoint() * reference).trace().re < 0.0 {
        j = -j;
    }
    Ok(j)
}

/// The graph of a representation matrix as a relation between disk forms.
pub fn graph_relation(
    r: &EvaluatedRep,
    f_src: &DiskForm,
    f_tgt: &DiskForm,
    tol: f64,
) -> Result<IsotropicRelation> {
    let m = &r.matrix;
    if m.shape() != (f_tgt.form.nrows(), f_src.form.nrows()) {
        return Err(Error::Dimension("matrix and forms disagree".into()));
    }
    let residual = max_abs(&(m.adjoint() * &f_tgt.form * m - &f_src.form));
    let scale = max_abs(&f_src.form).max(1.0) * max_abs(m).max(1.0).powi(2);
    if residual > 100.0 * tol * scale {
        return Err(Error::NotUnitary { residual });
    }
    Ok(IsotropicRelation::graph(&f_src.space(), &f_tgt.space(), m))
}

/// Representation matrix and both forms in one go.
pub fn rep_with_forms(
    b: &ColouredBraid,
    omega: &[Complex64],
    tol: f64,
) -> Result<(EvaluatedRep, DiskForm, DiskForm)> {
    let r = reduced_rep(b, omega, tol)?;
    let fs = invariant_form(b.source(), omega, tol)?;
    let ft = invariant_form(&b.target(), omega, tol)?;
    Ok((r, fs, ft))
}

/// Residual of `R* J_t R - J_s`.
pub fn unitarity_residual(r: &EvaluatedRep, f_src: &DiskForm, f_tgt: &DiskForm) -> f64 {
    max_abs(&(r.matrix.adjoint() * &f_tgt.form * &r.matrix - &f_src.form))
}

/// Identity-sized check used by the CLI and tests.
pub fn is_identity(m: &CMat, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - identity(m.nrows()))) <= tol
}
