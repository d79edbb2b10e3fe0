//! Skew-Hermitian spaces, isotropic subspaces and relations, Hermitian
//! signatures, the Maslov index of three isotropic subspaces and the Meyer
//! cocycle of two form-preserving matrices.

use crate::linalg::{
    block_diag, colspace, hermitian_eigenvalues, hstack, identity, lstsq, max_abs, nullspace,
    same_span, vstack, zeros,
};
use crate::{CMat, Complex64, Error, Result};

// Structural checks (skewness, isotropy, unitarity) compare a residual
// scaled by the size of the inputs against this multiple of tol.
const STRUCTURE_FACTOR: f64 = 100.0;

fn structural(residual: f64, scale: f64, tol: f64) -> bool {
    residual <= STRUCTURE_FACTOR * tol * scale.max(1.0)
}

/// A finite-dimensional complex space with a skew-Hermitian form.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewSpace {
    form: CMat,
}

impl SkewSpace {
    pub fn new(form: CMat, tol: f64) -> Result<Self> {
        if !form.is_square() {
            return Err(Error::Dimension("form must be square".into()));
        }
        let residual = max_abs(&(&form + form.adjoint()));
        if !structural(residual, max_abs(&form), tol) {
            return Err(Error::Dimension(format!(
                "form is not skew-Hermitian (residual {residual:.3e})"
            )));
        }
        Ok(Self { form })
    }

    pub fn zero(dim: usize) -> Self {
        Self { form: zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    pub fn form(&self) -> &CMat {
        &self.form
    }

    /// The same space with the opposite form.
    pub fn negate(&self) -> Self {
        Self { form: -&self.form }
    }

    /// Evaluates `lambda(x, y) = x* form y` column-wise.
    pub fn pair(&self, x: &CMat, y: &CMat) -> CMat {
        x.adjoint() * &self.form * y
    }

    pub fn is_nondegenerate(&self, tol: f64) -> bool {
        crate::linalg::rank(&self.form, tol) == self.dim()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && structural(
                max_abs(&(&self.form - &other.form)),
                max_abs(&self.form),
                tol,
            )
    }
}

/// A subspace given by a basis of column vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: SkewSpace,
    basis: CMat,
}

impl Subspace {
    /// The span of the columns of `spanning`, reduced to an orthonormal basis.
    pub fn span(ambient: &SkewSpace, spanning: &CMat, tol: f64) -> Result<Self> {
        if spanning.nrows() != ambient.dim() {
            return Err(Error::Dimension(format!(
                "vectors have {} rows, ambient dimension is {}",
                spanning.nrows(),
                ambient.dim()
            )));
        }
        Ok(Self {
            ambient: ambient.clone(),
            basis: colspace(spanning, tol),
        })
    }

    /// Takes the columns as they are; the caller vouches for full column rank.
    pub fn from_basis(ambient: &SkewSpace, basis: CMat) -> Self {
        assert_eq!(basis.nrows(), ambient.dim());
        Self {
            ambient: ambient.clone(),
            basis,
        }
    }

    pub fn zero(ambient: &SkewSpace) -> Self {
        Self::from_basis(ambient, zeros(ambient.dim(), 0))
    }

    pub fn whole(ambient: &SkewSpace) -> Self {
        Self::from_basis(ambient, identity(ambient.dim()))
    }

    pub fn ambient(&self) -> &SkewSpace {
        &self.ambient
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Largest entry of the form restricted to the subspace, relative to
    /// the size of the form and basis.
    pub fn isotropy_residual(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        let g = self.ambient.pair(&self.basis, &self.basis);
        let scale = max_abs(self.ambient.form()) * max_abs(&self.basis).powi(2);
        max_abs(&g) / scale.max(1.0)
    }

    pub fn is_isotropic(&self, tol: f64) -> bool {
        structural(self.isotropy_residual(), 1.0, tol)
    }

    pub fn is_lagrangian(&self, tol: f64) -> bool {
        self.is_isotropic(tol) && 2 * self.dim() == self.ambient.dim()
    }

    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        same_span(&self.basis, &other.basis, tol)
    }

    /// Right-multiplies the basis by an invertible matrix.
    pub fn rebased(&self, p: &CMat) -> Self {
        Self::from_basis(&self.ambient, &self.basis * p)
    }
}

/// An isotropic subspace of `(-source) (+) target`, seen as a morphism.
#[derive(Debug, Clone)]
pub struct IsotropicRelation {
    source: SkewSpace,
    target: SkewSpace,
    space: Subspace,
}

impl IsotropicRelation {
    pub fn new(source: &SkewSpace, target: &SkewSpace, spanning: &CMat, tol: f64) -> Result<Self> {
        let ambient = relation_ambient(source, target);
        let space = Subspace::span(&ambient, spanning, tol)?;
        let residual = space.isotropy_residual();
        if !structural(residual, 1.0, tol) {
            return Err(Error::NotIsotropic { residual });
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            space,
        })
    }

    /// The diagonal `{(h, h)}`, identity morphism of `h`.
    pub fn diagonal(h: &SkewSpace) -> Self {
        let i = identity(h.dim());
        Self {
            source: h.clone(),
            target: h.clone(),
            space: Subspace::from_basis(&relation_ambient(h, h), vstack(&[&i, &i])),
        }
    }

    /// Graph `{(v, m v)}` of a linear map; isotropy is the caller's concern.
    pub fn graph(source: &SkewSpace, target: &SkewSpace, m: &CMat) -> Self {
        assert_eq!(m.shape(), (target.dim(), source.dim()));
        let i = identity(source.dim());
        Self {
            source: source.clone(),
            target: target.clone(),
            space: Subspace::from_basis(&relation_ambient(source, target), vstack(&[&i, m])),
        }
    }

    pub fn source(&self) -> &SkewSpace {
        &self.source
    }

    pub fn target(&self) -> &SkewSpace {
        &self.target
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Rows of the basis living in the source.
    pub fn source_part(&self) -> CMat {
        self.space.basis.rows(0, self.source.dim()).into_owned()
    }

    /// Rows of the basis living in the target.
    pub fn target_part(&self) -> CMat {
        self.space
            .basis
            .rows(self.source.dim(), self.target.dim())
            .into_owned()
    }

    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.source.dim() == other.source.dim()
            && self.target.dim() == other.target.dim()
            && self.space.same_as(&other.space, tol)
    }
}

/// `(-source) (+) target`.
pub fn relation_ambient(source: &SkewSpace, target: &SkewSpace) -> SkewSpace {
    SkewSpace {
        form: block_diag(&(-&source.form), &target.form),
    }
}

/// Inertia of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureResult {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
    pub tol: f64,
}

impl SignatureResult {
    pub fn value(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.null
    }
}

pub fn hermitian_signature(m: &CMat, tol: f64) -> Result<SignatureResult> {
    if !m.is_square() {
        return Err(Error::Dimension("signature of a non-square matrix".into()));
    }
    let residual = max_abs(&(m - m.adjoint()));
    if !structural(residual, max_abs(m), tol) {
        return Err(Error::NotHermitian { residual });
    }
    let (mut plus, mut minus, mut null) = (0, 0, 0);
    for e in hermitian_eigenvalues(m) {
        let a = e.abs();
        if a > tol && a < 10.0 * tol {
            return Err(Error::IllConditioned { eigenvalue: e, tol });
        }
        if e > tol {
            plus += 1;
        } else if e < -tol {
            minus += 1;
        } else {
            null += 1;
        }
    }
    Ok(SignatureResult { plus, minus, null, tol })
}

pub fn annihilator(v: &Subspace, tol: f64) -> Subspace {
    let map = v.basis.adjoint() * v.ambient.form();
    Subspace::from_basis(&v.ambient, nullspace(&map, tol))
}

fn require_isotropic(l: &Subspace, tol: f64) -> Result<()> {
    let residual = l.isotropy_residual();
    if structural(residual, 1.0, tol) {
        Ok(())
    } else {
        Err(Error::NotIsotropic { residual })
    }
}

/// Signature of `f(a, b) = lambda(a2, b)` on `(L1 + L2) ∩ L3`, where
/// `a = a1 + a2` with `ai` in `Li`.
pub fn maslov(l1: &Subspace, l2: &Subspace, l3: &Subspace, tol: f64) -> Result<i64> {
    Ok(maslov_signature(l1, l2, l3, tol)?.value())
}

/// As [`maslov`], keeping the full inertia of the form.
pub fn maslov_signature(
    l1: &Subspace,
    l2: &Subspace,
    l3: &Subspace,
    tol: f64,
) -> Result<SignatureResult> {
    let amb = l1.ambient();
    if !amb.approx_eq(l2.ambient(), tol) || !amb.approx_eq(l3.ambient(), tol) {
        return Err(Error::SpaceMismatch);
    }
    for l in [l1, l2, l3] {
        require_isotropic(l, tol)?;
    }
    let (k1, k2, k3) = (l1.dim(), l2.dim(), l3.dim());
    let sum = hstack(&[l1.basis(), l2.basis()]);
    let system = hstack(&[&sum, &(-l3.basis())]);
    let kernel = nullspace(&system, tol);
    let meet = l3.basis() * kernel.rows(k1 + k2, k3);
    let meet = colspace(&meet, tol);
    if meet.ncols() == 0 {
        return hermitian_signature(&zeros(0, 0), tol);
    }
    let coef = lstsq(&sum, &meet, tol);
    let miss = max_abs(&(&sum * &coef - &meet));
    if !structural(miss, 1.0, tol.sqrt()) {
        return Err(Error::DecompositionFailed);
    }
    let a2 = l2.basis() * coef.rows(k1, k2);
    hermitian_signature(&amb.pair(&a2, &meet), tol)
}

fn require_unitary(g: &CMat, ambient: &SkewSpace, tol: f64) -> Result<()> {
    let j = ambient.form();
    if g.shape() != j.shape() {
        return Err(Error::Dimension("matrix and form sizes differ".into()));
    }
    let residual = max_abs(&(g.adjoint() * j * g - j));
    let scale = max_abs(j) * max_abs(g).powi(2);
    if structural(residual, scale, tol) {
        Ok(())
    } else {
        Err(Error::NotUnitary { residual })
    }
}

/// The data behind a Meyer cocycle value: a basis `e` of
/// `E = Im(g1^-1 - I) ∩ Im(I - g2)` and preimages with
/// `e = (g1^-1 - I) x1 = (I - g2) x2`.
#[derive(Debug, Clone)]
pub struct MeyerPairing {
    pub e: CMat,
    pub x1: CMat,
    pub x2: CMat,
    pub a: CMat,
    pub b: CMat,
}

impl MeyerPairing {
    /// Signature of `b(x, y) = lambda(x1 + x2, y)`.
    pub fn signature(&self, ambient: &SkewSpace, tol: f64) -> Result<SignatureResult> {
        hermitian_signature(&ambient.pair(&(&self.x1 + &self.x2), &self.e), tol)
    }
}

pub fn meyer_pairing(g1: &CMat, g2: &CMat, ambient: &SkewSpace, tol: f64) -> Result<MeyerPairing> {
    require_unitary(g1, ambient, tol)?;
    require_unitary(g2, ambient, tol)?;
    let n = ambient.dim();
    let id = identity(n);
    let g1inv = g1
        .clone()
        .try_inverse()
        .ok_or(Error::NotUnitary { residual: f64::INFINITY })?;
    let a = g1inv - &id;
    let b = &id - g2;
    let kernel = nullspace(&hstack(&[&a, &(-&b)]), tol);
    let e = colspace(&(&a * kernel.rows(0, n)), tol);
    let x1 = lstsq(&a, &e, tol);
    let x2 = lstsq(&b, &e, tol);
    Ok(MeyerPairing { e, x1, x2, a, b })
}

pub fn meyer(g1: &CMat, g2: &CMat, ambient: &SkewSpace, tol: f64) -> Result<i64> {
    Ok(meyer_pairing(g1, g2, ambient, tol)?
        .signature(ambient, tol)?
        .value())
}

/// `{(h1, h3) : (h1, h2) in N1, (h2, h3) in N2 for some h2}`.
pub fn compose_relations(
    n1: &IsotropicRelation,
    n2: &IsotropicRelation,
    tol: f64,
) -> Result<IsotropicRelation> {
    if !n1.target.approx_eq(&n2.source, tol) {
        return Err(Error::SpaceMismatch);
    }
    let (a1, b1) = (n1.source_part(), n1.target_part());
    let (a2, b2) = (n2.source_part(), n2.target_part());
    let kernel = nullspace(&hstack(&[&b1, &(-&a2)]), tol);
    let y1 = kernel.rows(0, n1.dim());
    let y2 = kernel.rows(n1.dim(), n2.dim());
    let spanning = vstack(&[&(&a1 * y1), &(&b2 * y2)]);
    let ambient = relation_ambient(&n1.source, &n2.target);
    Ok(IsotropicRelation {
        source: n1.source.clone(),
        target: n2.target.clone(),
        space: Subspace::span(&ambient, &spanning, tol)?,
    })
}

/// Orthogonal direct sum.
pub trait DirectSum {
    fn direct_sum(&self, other: &Self) -> Self;
}

impl DirectSum for SkewSpace {
    fn direct_sum(&self, other: &Self) -> Self {
        SkewSpace {
            form: block_diag(&self.form, &other.form),
        }
    }
}

impl DirectSum for Subspace {
    fn direct_sum(&self, other: &Self) -> Self {
        Subspace {
            ambient: self.ambient.direct_sum(&other.ambient),
            basis: block_diag(&self.basis, &other.basis),
        }
    }
}

impl DirectSum for IsotropicRelation {
    fn direct_sum(&self, other: &Self) -> Self {
        let (s1, s2) = (self.source.dim(), other.source.dim());
        let (t1, t2) = (self.target.dim(), other.target.dim());
        let (k1, k2) = (self.dim(), other.dim());
        // Reorder (x1, x1', x2, x2') into (x1, x2, x1', x2').
        let mut basis = zeros(s1 + s2 + t1 + t2, k1 + k2);
        basis.view_mut((0, 0), (s1, k1)).copy_from(&self.source_part());
        basis.view_mut((s1, k1), (s2, k2)).copy_from(&other.source_part());
        basis.view_mut((s1 + s2, 0), (t1, k1)).copy_from(&self.target_part());
        basis
            .view_mut((s1 + s2 + t1, k1), (t2, k2))
            .copy_from(&other.target_part());
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let ambient = relation_ambient(&source, &target);
        IsotropicRelation {
            source,
            target,
            space: Subspace::from_basis(&ambient, basis),
        }
    }
}

/// `i * h` for a Hermitian `h` is skew-Hermitian; handy for random forms.
pub fn skew_from_hermitian(h: &CMat) -> CMat {
    h * Complex64::i()
}
