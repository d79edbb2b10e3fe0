//! Dense complex linear algebra helpers: nalgebra matrices, faer's SVD and
//! Hermitian eigensolver. Every rank decision goes through
//! [`rank_threshold`].

use crate::{CMat, Complex64};
use nalgebra::DMatrix;

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Singular values at or below this are treated as zero.
///
/// The scale is floored at 1 so that a matrix made of round-off alone is
/// not promoted to full rank.
pub fn rank_threshold(smax: f64, rows: usize, cols: usize, tol: f64) -> f64 {
    tol * smax.max(1.0) * rows.max(cols).max(1) as f64
}

struct Svd {
    u: CMat,
    s: Vec<f64>,
    v: CMat,
}

// nalgebra's complex SVD loses accuracy on rank-deficient input, so the
// decomposition itself comes from faer. Full U (m x m) and V (n x n),
// singular values in decreasing order.
fn svd(a: &CMat) -> Svd {
    let (m, n) = a.shape();
    let f = faer::Mat::<Complex64>::from_fn(m, n, |r, c| a[(r, c)]);
    let dec = f.svd().expect("SVD did not converge");
    let (fu, fs, fv) = (dec.U(), dec.S().column_vector(), dec.V());
    Svd {
        u: CMat::from_fn(m, m, |r, c| fu[(r, c)]),
        s: (0..m.min(n)).map(|k| fs[k].re).collect(),
        v: CMat::from_fn(n, n, |r, c| fv[(r, c)]),
    }
}

fn numerical_rank(d: &Svd, rows: usize, cols: usize, tol: f64) -> usize {
    let smax = d.s.first().copied().unwrap_or(0.0);
    let thr = rank_threshold(smax, rows, cols, tol);
    d.s.iter().filter(|&&s| s > thr).count()
}

pub fn rank(a: &CMat, tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let d = svd(a);
    numerical_rank(&d, a.nrows(), a.ncols(), tol)
}

/// Orthonormal basis of the kernel, as columns.
pub fn nullspace(a: &CMat, tol: f64) -> CMat {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return identity(n);
    }
    let d = svd(a);
    let r = numerical_rank(&d, a.nrows(), n, tol);
    d.v.columns(r, n - r).into_owned()
}

/// Orthonormal basis of the column space.
pub fn colspace(a: &CMat, tol: f64) -> CMat {
    if a.ncols() == 0 || a.nrows() == 0 {
        return zeros(a.nrows(), 0);
    }
    let d = svd(a);
    let r = numerical_rank(&d, a.nrows(), a.ncols(), tol);
    d.u.columns(0, r).into_owned()
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn lstsq(a: &CMat, b: &CMat, tol: f64) -> CMat {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return zeros(n, b.ncols());
    }
    let d = svd(a);
    let r = numerical_rank(&d, m, n, tol);
    let mut x = zeros(n, b.ncols());
    for k in 0..r {
        let uk = d.u.column(k);
        let coef = uk.adjoint() * b / Complex64::from(d.s[k]);
        x += d.v.column(k) * coef;
    }
    x
}

/// Column spaces coincide (mutual containment under the rank threshold).
pub fn same_span(a: &CMat, b: &CMat, tol: f64) -> bool {
    if a.nrows() != b.nrows() {
        return false;
    }
    let ra = rank(a, tol);
    ra == rank(b, tol) && ra == rank(&hstack(&[a, b]), tol)
}

/// Column space of `a` is contained in that of `b`.
pub fn contained_in(a: &CMat, b: &CMat, tol: f64) -> bool {
    a.nrows() == b.nrows() && rank(&hstack(&[a, b]), tol) == rank(b, tol)
}

pub fn hstack(parts: &[&CMat]) -> CMat {
    let rows = parts.first().map_or(0, |p| p.nrows());
    let cols = parts.iter().map(|p| p.ncols()).sum();
    let mut out = zeros(rows, cols);
    let mut c = 0;
    for p in parts {
        assert_eq!(p.nrows(), rows, "hstack row mismatch");
        out.view_mut((0, c), p.shape()).copy_from(*p);
        c += p.ncols();
    }
    out
}

pub fn vstack(parts: &[&CMat]) -> CMat {
    let cols = parts.first().map_or(0, |p| p.ncols());
    let rows = parts.iter().map(|p| p.nrows()).sum();
    let mut out = zeros(rows, cols);
    let mut r = 0;
    for p in parts {
        assert_eq!(p.ncols(), cols, "vstack column mismatch");
        out.view_mut((r, 0), p.shape()).copy_from(*p);
        r += p.nrows();
    }
    out
}

pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let mut out = zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut(a.shape(), b.shape()).copy_from(b);
    out
}

/// Eigenvalues of the Hermitian part `(m + m*)/2`, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = (m + m.adjoint()) * Complex64::from(0.5);
    let f = faer::Mat::<Complex64>::from_fn(h.nrows(), h.ncols(), |r, c| h[(r, c)]);
    let mut ev = f
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .expect("Hermitian eigensolver did not converge");
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn from_real(m: &DMatrix<f64>) -> CMat {
    m.map(Complex64::from)
}
