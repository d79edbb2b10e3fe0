//! The isotropic functor on coloured tangles: twisted first homology of the
//! exterior from a Wirtinger presentation, and the relation cut out by the
//! two boundary inclusions.

use crate::braidtangle::{ColouredObject, Slice, TangleWord};
use crate::hermforms::IsotropicRelation;
use crate::linalg::{colspace, hstack, nullspace, rank};
use crate::representations::{fox_derivative, invariant_form, DiskForm, Word};
use crate::{CMat, Complex64, Error, Result};

/// Wirtinger-style presentation of a tangle exterior.
///
/// Generators are arcs (meridians, oriented by the strand), one relator per
/// crossing. Boundary words express the puncture loops `x_j` at the bottom
/// and top in the arc generators; each is a single signed letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TanglePresentation {
    pub arc_colours: Vec<u32>,
    pub relators: Vec<Word>,
    pub bottom_words: Vec<Word>,
    pub top_words: Vec<Word>,
    pub source: ColouredObject,
    pub target: ColouredObject,
}

#[derive(Default)]
struct Arcs {
    parent: Vec<usize>,
    colour: Vec<u32>,
}

impl Arcs {
    fn add(&mut self, colour: u32) -> usize {
        self.parent.push(self.parent.len());
        self.colour.push(colour);
        self.parent.len() - 1
    }

    fn root(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

pub fn presentation(t: &TangleWord) -> TanglePresentation {
    let mut arcs = Arcs::default();
    // (arc, orientation sign) at each position
    let mut state: Vec<(usize, i8)> = t
        .source()
        .entries
        .iter()
        .map(|&e| (arcs.add(e.unsigned_abs()), e.signum() as i8))
        .collect();
    let bottom = state.clone();
    // (new under-arc c, conjugate w) meaning c = w
    let mut raw: Vec<(usize, Word)> = Vec::new();

    for s in t.slices() {
        match *s {
            Slice::Crossing { pos, sign } => {
                let (l, r) = (state[pos - 1], state[pos]);
                if sign > 0 {
                    // Over strand runs from position i+1 to i.
                    let ((b, o), a) = (r, l.0);
                    let c = arcs.add(arcs.colour[a]);
                    raw.push((c, vec![(b, -o), (a, 1), (b, o)]));
                    state[pos - 1] = (b, r.1);
                    state[pos] = (c, l.1);
                } else {
                    let ((a, o), b) = (l, r.0);
                    let c = arcs.add(arcs.colour[b]);
                    raw.push((c, vec![(a, o), (b, 1), (a, -o)]));
                    state[pos - 1] = (c, r.1);
                    state[pos] = (a, l.1);
                }
            }
            Slice::Cup { pos, colour, up } => {
                let g = arcs.add(colour);
                let s = if up { 1 } else { -1 };
                state.splice(pos - 1..pos - 1, [(g, s), (g, -s)]);
            }
            Slice::Cap { pos } => {
                arcs.join(state[pos - 1].0, state[pos].0);
                state.drain(pos - 1..=pos);
            }
        }
    }

    let mut roots: Vec<usize> = (0..arcs.parent.len()).map(|a| arcs.root(a)).collect();
    roots.sort_unstable();
    roots.dedup();
    let mut canon = |a: usize| roots.binary_search(&arcs.root(a)).unwrap();
    let relators = raw
        .iter()
        .map(|(c, w)| {
            let mut r: Word = vec![(canon(*c), -1)];
            r.extend(w.iter().map(|&(x, e)| (canon(x), e)));
            r
        })
        .collect();
    let bottom_words = bottom.iter().map(|&(a, s)| vec![(canon(a), s)]).collect();
    let top_words = state.iter().map(|&(a, s)| vec![(canon(a), s)]).collect();
    TanglePresentation {
        arc_colours: roots.iter().map(|&r| arcs.colour[r]).collect(),
        relators,
        bottom_words,
        top_words,
        source: t.source().clone(),
        target: t.target().clone(),
    }
}

/// Twisted first homology of the presentation complex at `omega`.
#[derive(Debug, Clone)]
pub struct TwistedH1 {
    /// Arc values `omega_{colour}`.
    pub values: Vec<Complex64>,
    /// `d1`: the row `phi(m) - 1` over arcs.
    pub d1: CMat,
    /// `d2`: Fox derivatives of the relators, one column per relator.
    pub d2: CMat,
    pub cycles: CMat,
    pub boundaries: CMat,
    /// Cycles completing the boundaries to a basis of the cycle space;
    /// their classes form a basis of `H_1`.
    pub basis: CMat,
    /// Inclusion of the bottom and top punctures' loops on chains.
    pub bottom_inclusion: CMat,
    pub top_inclusion: CMat,
}

impl TwistedH1 {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

fn fox_matrix(words: &[Word], arcs: usize, values: &[Complex64]) -> CMat {
    CMat::from_fn(arcs, words.len(), |i, j| fox_derivative(&words[j], i, values))
}

pub fn twisted_h1(p: &TanglePresentation, omega: &[Complex64], tol: f64) -> Result<TwistedH1> {
    crate::braidtangle::check_omega(omega, p.source.mu, tol)?;
    let values: Vec<Complex64> = p
        .arc_colours
        .iter()
        .map(|&c| omega[c as usize - 1])
        .collect();
    let arcs = values.len();
    let d1 = CMat::from_fn(1, arcs, |_, j| values[j] - 1.0);
    let d2 = fox_matrix(&p.relators, arcs, &values);
    let cycles = nullspace(&d1, tol);
    let boundaries = colspace(&d2, tol);
    let mut basis_cols: Vec<usize> = Vec::new();
    let mut span = boundaries.clone();
    for k in 0..cycles.ncols() {
        let trial = hstack(&[&span, &cycles.columns(k, 1).into_owned()]);
        if rank(&trial, tol) > span.ncols() {
            span = trial;
            basis_cols.push(k);
        }
    }
    let basis = CMat::from_fn(arcs, basis_cols.len(), |r, c| cycles[(r, basis_cols[c])]);
    Ok(TwistedH1 {
        bottom_inclusion: fox_matrix(&p.bottom_words, arcs, &values),
        top_inclusion: fox_matrix(&p.top_words, arcs, &values),
        values,
        d1,
        d2,
        cycles,
        boundaries,
        basis,
    })
}

/// `F_omega(t)` with the disk forms at both ends.
#[derive(Debug, Clone)]
pub struct FunctorValue {
    pub relation: IsotropicRelation,
    pub source_form: DiskForm,
    pub target_form: DiskForm,
    /// `Some(AdmissibilityViolated)` when an end has `I_c(omega) = 1`; the
    /// relation is then only guaranteed isotropic.
    pub warning: Option<Error>,
}

impl FunctorValue {
    pub fn lagrangian_expected(&self) -> bool {
        self.warning.is_none()
    }
}

pub fn functor_value(t: &TangleWord, omega: &[Complex64], tol: f64) -> Result<FunctorValue> {
    let source_form = invariant_form(t.source(), omega, tol)?;
    let target_form = invariant_form(t.target(), omega, tol)?;
    let h = twisted_h1(&presentation(t), omega, tol)?;
    let a = -(&h.bottom_inclusion * source_form.model.kernel_basis());
    let b = &h.top_inclusion * target_form.model.kernel_basis();
    let kernel = nullspace(&hstack(&[&a, &b, &h.d2]), tol);
    let ends = kernel.rows(0, a.ncols() + b.ncols()).into_owned();
    let relation =
        IsotropicRelation::new(&source_form.space(), &target_form.space(), &ends, tol)?;
    let admissible = t.source().is_admissible(omega, tol)? && t.target().is_admissible(omega, tol)?;
    Ok(FunctorValue {
        relation,
        source_form,
        target_form,
        warning: (!admissible).then_some(Error::AdmissibilityViolated),
    })
}
