//! Levine–Tristram and multivariable signatures, a Seifert matrix for
//! closures of one-colour braids, and the additivity defect checks.

use crate::braidtangle::{check_omega, reflect, ColouredBraid, ColouredObject, TangleWord};
use crate::hermforms::{hermitian_signature, maslov_signature, meyer, IsotropicRelation, SignatureResult};
use crate::linalg::from_real;
use crate::representations::{invariant_form, reduced_rep};
use crate::tanglefunctor::functor_value;
use crate::{CMat, Complex64, Error, Result};
use nalgebra::DMatrix;
use rayon::prelude::*;

/// A Seifert matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SeifertData {
    pub a: DMatrix<f64>,
}

/// The matrices `A_e` of a C-complex, indexed by sign vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CComplexData {
    pub mu: u32,
    /// `(e, A_e)` for all `2^mu` sign vectors.
    pub matrices: Vec<(Vec<i8>, DMatrix<f64>)>,
}

pub fn sign_key(e: &[i8]) -> String {
    e.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

impl CComplexData {
    pub fn new(mu: u32, matrices: Vec<(Vec<i8>, DMatrix<f64>)>) -> Result<Self> {
        if matrices.len() != 1 << mu {
            return Err(Error::Dimension(format!(
                "{} matrices for mu = {mu}",
                matrices.len()
            )));
        }
        let size = matrices[0].1.nrows();
        for (e, a) in &matrices {
            if e.len() != mu as usize || a.nrows() != size || a.ncols() != size {
                return Err(Error::Dimension(format!("bad block {}", sign_key(e))));
            }
        }
        Ok(Self { mu, matrices })
    }

    pub fn size(&self) -> usize {
        self.matrices[0].1.nrows()
    }

    pub fn get(&self, e: &[i8]) -> Option<&DMatrix<f64>> {
        self.matrices.iter().find(|(k, _)| k == e).map(|(_, a)| a)
    }

    /// `A_{-e} = A_e^T` for every `e`.
    pub fn check_transpose_symmetry(&self, tol: f64) -> Result<()> {
        for (e, a) in &self.matrices {
            let neg: Vec<i8> = e.iter().map(|s| -s).collect();
            let b = self
                .get(&neg)
                .ok_or_else(|| Error::TransposeSymmetryViolated(sign_key(&neg)))?;
            if (b - a.transpose()).amax() > tol {
                return Err(Error::TransposeSymmetryViolated(sign_key(e)));
            }
        }
        Ok(())
    }

    /// `H(omega) = sum_e prod_i (1 - conj(omega_i)^{e_i}) A_e`.
    pub fn hermitian_matrix(&self, omega: &[Complex64]) -> CMat {
        let n = self.size();
        let mut h = CMat::zeros(n, n);
        for (e, a) in &self.matrices {
            let coef: Complex64 = e
                .iter()
                .zip(omega)
                .map(|(&s, w)| {
                    let wb = w.conj();
                    Complex64::new(1.0, 0.0) - if s > 0 { wb } else { wb.inv() }
                })
                .product();
            h += from_real(a) * coef;
        }
        h
    }
}

pub fn lt_signature(a: &SeifertData, omega: Complex64, tol: f64) -> Result<SignatureResult> {
    check_omega(&[omega], 1, tol)?;
    let one = Complex64::new(1.0, 0.0);
    let m = from_real(&a.a) * (one - omega) + from_real(&a.a.transpose()) * (one - omega.conj());
    hermitian_signature(&m, tol)
}

pub fn mv_signature(data: &CComplexData, omega: &[Complex64], tol: f64) -> Result<SignatureResult> {
    check_omega(omega, data.mu, tol)?;
    data.check_transpose_symmetry(tol)?;
    hermitian_signature(&data.hermitian_matrix(omega), tol)
}

/// Seifert matrix of the surface built from one disk per strand and one
/// half-twisted band per letter.
///
/// Homology is generated by consecutive pairs of bands on the same column;
/// pair `a` starts at letter `i` and ends at the next letter `h(i)` on the
/// same column. Entries are linking numbers of a loop with the push-off of
/// another, read off from how the two pairs interleave.
pub fn seifert_from_braid(b: &ColouredBraid) -> Result<SeifertData> {
    let e = &b.source().entries;
    if e.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Unsupported(
            "Seifert matrix needs a constant colouring".into(),
        ));
    }
    let x = b.word();
    let len = x.len();
    let next: Vec<Option<usize>> = (0..len)
        .map(|i| (i + 1..len).find(|&j| x[j].abs() == x[i].abs()))
        .collect();
    let gens: Vec<usize> = (0..len).filter(|&i| next[i].is_some()).collect();
    let m = gens.len();
    let sg = |v: i32| if v > 0 { 1.0 } else { -1.0 };
    let mut a = DMatrix::<f64>::zeros(m, m);
    for (p, &i) in gens.iter().enumerate() {
        for (q, &j) in gens.iter().enumerate() {
            if j < i {
                continue;
            }
            let (hi, hj) = (next[i].unwrap(), next[j].unwrap());
            let (ci, cj) = (x[i].abs(), x[j].abs());
            if i == j {
                a[(p, p)] = -(sg(x[i]) + sg(x[hi])) / 2.0;
            } else if hi > hj || hi < j {
                // nested or disjoint on the same or distant columns
            } else if hi == j {
                if x[j] > 0 {
                    a[(q, p)] = 1.0;
                } else {
                    a[(p, q)] = -1.0;
                }
            } else if (ci - cj).abs() > 1 {
            } else if ci - cj == 1 {
                a[(q, p)] = -1.0;
            } else if cj - ci == 1 {
                a[(p, q)] = 1.0;
            }
        }
    }
    Ok(SeifertData { a })
}

/// Signature data for a closure.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosureSignature {
    Seifert(SeifertData),
    CComplex(CComplexData),
}

impl ClosureSignature {
    pub fn signature(&self, omega: &[Complex64], tol: f64) -> Result<SignatureResult> {
        match self {
            ClosureSignature::Seifert(a) => {
                if omega.len() != 1 {
                    return Err(Error::OmegaArity { expected: 1, got: omega.len() });
                }
                lt_signature(a, omega[0], tol)
            }
            ClosureSignature::CComplex(d) => mv_signature(d, omega, tol),
        }
    }
}

/// Closure data for `t1 t2`, `t1` and `t2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureFixtures {
    pub product: ClosureSignature,
    pub first: ClosureSignature,
    pub second: ClosureSignature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub omega: Vec<Complex64>,
    /// `sigma(closure of t1 t2) - sigma(closure t1) - sigma(closure t2)`.
    pub lhs: Option<i64>,
    /// `Maslov(F(reflect t1), diagonal, F(t2))`.
    pub rhs: i64,
    /// `-Meyer(rep t1, rep t2)` when both are braids.
    pub meyer_rhs: Option<i64>,
    pub admissible: bool,
    /// Nullity of the form computing the signature of the product closure.
    pub nullity: Option<usize>,
}

impl DefectReport {
    /// Equalities that must hold here; vacuous off the admissible set.
    pub fn consistent(&self) -> bool {
        !self.admissible
            || (self.lhs.is_none_or(|l| l == self.rhs)
                && self.meyer_rhs.is_none_or(|m| m == self.rhs))
    }
}

fn common_object(t1: &TangleWord, t2: &TangleWord) -> Result<ColouredObject> {
    if !t1.is_endomorphism() || !t2.is_endomorphism() {
        return Err(Error::NotAnEndomorphism);
    }
    if t1.source() != t2.source() {
        return Err(Error::ColourMismatch {
            left: t1.source().entries.clone(),
            right: t2.source().entries.clone(),
        });
    }
    Ok(t1.source().clone())
}

/// Maslov side of the defect.
pub fn maslov_defect(t1: &TangleWord, t2: &TangleWord, omega: &[Complex64], tol: f64) -> Result<i64> {
    let f1 = functor_value(&reflect(t1), omega, tol)?;
    let f2 = functor_value(t2, omega, tol)?;
    let diag = IsotropicRelation::diagonal(f2.relation.source());
    Ok(maslov_signature(f1.relation.space(), diag.space(), f2.relation.space(), tol)?.value())
}

/// `-Meyer(rep b1, rep b2)` for braids in the same `B_c`.
pub fn meyer_defect(b1: &ColouredBraid, b2: &ColouredBraid, omega: &[Complex64], tol: f64) -> Result<i64> {
    let j = invariant_form(b1.source(), omega, tol)?.space();
    let r1 = reduced_rep(b1, omega, tol)?.matrix;
    let r2 = reduced_rep(b2, omega, tol)?.matrix;
    Ok(-meyer(&r1, &r2, &j, tol)?)
}

fn automatic_closures(t1: &TangleWord, t2: &TangleWord) -> Option<ClosureFixtures> {
    let (b1, b2) = (t1.as_braid()?, t2.as_braid()?);
    if t1.mu() != 1 {
        return None;
    }
    let prod = ColouredBraid::new(b1.source().clone(), [b1.word(), b2.word()].concat()).ok()?;
    Some(ClosureFixtures {
        product: ClosureSignature::Seifert(seifert_from_braid(&prod).ok()?),
        first: ClosureSignature::Seifert(seifert_from_braid(&b1).ok()?),
        second: ClosureSignature::Seifert(seifert_from_braid(&b2).ok()?),
    })
}

pub fn defect(
    t1: &TangleWord,
    t2: &TangleWord,
    omega: &[Complex64],
    tol: f64,
    closures: Option<&ClosureFixtures>,
) -> Result<DefectReport> {
    let c = common_object(t1, t2)?;
    let admissible = c.is_admissible(omega, tol)?;
    let rhs = maslov_defect(t1, t2, omega, tol)?;
    let meyer_rhs = match (t1.as_braid(), t2.as_braid()) {
        (Some(b1), Some(b2)) => Some(meyer_defect(&b1, &b2, omega, tol)?),
        _ => None,
    };
    let auto;
    let closures = match closures {
        Some(c) => Some(c),
        None => {
            auto = automatic_closures(t1, t2);
            auto.as_ref()
        }
    };
    let (lhs, nullity) = match closures {
        Some(f) => {
            let p = f.product.signature(omega, tol)?;
            let s1 = f.first.signature(omega, tol)?;
            let s2 = f.second.signature(omega, tol)?;
            (Some(p.value() - s1.value() - s2.value()), Some(p.null))
        }
        None => (None, None),
    };
    Ok(DefectReport {
        omega: omega.to_vec(),
        lhs,
        rhs,
        meyer_rhs,
        admissible,
        nullity,
    })
}

/// Angles `(k + offset) / n` turns in every coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub offset: f64,
}

impl GridSpec {
    pub fn roots_of_unity(n: usize) -> Self {
        Self { n, offset: 0.0 }
    }

    pub fn angle(&self, k: usize) -> f64 {
        (k as f64 + self.offset) / self.n as f64
    }

    /// Grid indices in lexicographic order, dropping points where some
    /// coordinate sits at angle 0.
    pub fn points(&self, mu: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..mu {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..self.n).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        out.retain(|p| p.iter().all(|&k| self.angle(k).fract().abs() > 1e-12));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: Vec<usize>,
    pub angles: Vec<f64>,
    pub report: Result<DefectReport>,
}

pub fn defect_sweep(
    t1: &TangleWord,
    t2: &TangleWord,
    grid: &GridSpec,
    tol: f64,
    closures: Option<&ClosureFixtures>,
) -> Vec<SweepRow> {
    let pts = grid.points(t1.mu() as usize);
    let mut rows: Vec<SweepRow> = pts
        .into_par_iter()
        .map(|index| {
            let angles: Vec<f64> = index.iter().map(|&k| grid.angle(k)).collect();
            let omega: Vec<Complex64> = angles.iter().map(|&a| crate::omega_from_turns(a)).collect();
            let report = defect(t1, t2, &omega, tol, closures);
            SweepRow { index, angles, report }
        })
        .collect();
    rows.sort_by(|a, b| a.index.cmp(&b.index));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega_from_turns;

    fn braid(e: &[i32], w: &[i32]) -> ColouredBraid {
        ColouredBraid::new(ColouredObject::new(1, e.to_vec()).unwrap(), w.to_vec()).unwrap()
    }

    fn seifert(rows: &[&[f64]]) -> SeifertData {
        let n = rows.len();
        SeifertData {
            a: DMatrix::from_fn(n, n, |r, c| rows[r][c]),
        }
    }

    #[test]
    fn hopf_and_unknot_seifert() {
        let a = seifert_from_braid(&braid(&[1, 1], &[1, 1])).unwrap();
        assert_eq!(a.a, DMatrix::from_element(1, 1, -1.0));
        assert_eq!(seifert_from_braid(&braid(&[1, 1], &[1])).unwrap().a.nrows(), 0);
    }

    #[test]
    fn lt_examples() {
        for t in [0.05, 0.25, 0.5, 0.9] {
            let w = omega_from_turns(t);
            assert_eq!(lt_signature(&seifert(&[&[-1.0]]), w, 1e-9).unwrap().value(), -1);
            assert_eq!(lt_signature(&seifert(&[&[0.0, 0.0], &[0.0, 0.0]]), w, 1e-9).unwrap().value(), 0);
        }
        let tref = seifert(&[&[-1.0, 1.0], &[0.0, -1.0]]);
        assert_eq!(lt_signature(&tref, Complex64::new(-1.0, 0.0), 1e-9).unwrap().value(), -2);
    }

    #[test]
    fn lt_refuses_omega_one() {
        assert_eq!(
            lt_signature(&seifert(&[&[-1.0]]), Complex64::new(1.0, 0.0), 1e-9),
            Err(Error::OmegaOnForbiddenLocus { index: 1 })
        );
    }

    #[test]
    fn transpose_symmetry_is_enforced() {
        let one = DMatrix::from_element(1, 1, 1.0);
        let two = DMatrix::from_element(1, 1, 2.0);
        let d = CComplexData::new(1, vec![(vec![1], one), (vec![-1], two)]).unwrap();
        assert!(matches!(
            mv_signature(&d, &[Complex64::i()], 1e-9),
            Err(Error::TransposeSymmetryViolated(_))
        ));
    }

    #[test]
    fn contractible_ccomplex_is_zero() {
        let e = DMatrix::<f64>::zeros(0, 0);
        let d = CComplexData::new(
            2,
            [[1, 1], [1, -1], [-1, 1], [-1, -1]]
                .iter()
                .map(|s| (s.to_vec(), e.clone()))
                .collect(),
        )
        .unwrap();
        let w = [omega_from_turns(0.3), omega_from_turns(0.8)];
        let s = mv_signature(&d, &w, 1e-9).unwrap();
        assert_eq!((s.value(), s.dim()), (0, 0));
    }

    #[test]
    fn grid_skips_angle_zero() {
        let g = GridSpec::roots_of_unity(4);
        assert_eq!(g.points(1), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(g.points(2).len(), 9);
        let h = GridSpec { n: 4, offset: 0.5 };
        assert_eq!(h.points(2).len(), 16);
    }
}
