//! Coloured objects, braid words and Morse-word tangle diagrams.
//!
//! Positions and generators are 1-based: `Crossing { pos: i, sign: 1 }` is
//! `sigma_i`, a cup at `pos: i` creates the strands at positions `i, i+1`.

use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// A signed colouring `c(1..n)` with values in `±1..±mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColouredObject {
    pub mu: u32,
    pub entries: Vec<i32>,
}

impl ColouredObject {
    pub fn new(mu: u32, entries: Vec<i32>) -> Result<Self> {
        if mu == 0 {
            return Err(Error::InvalidColouring("mu must be positive".into()));
        }
        if let Some(&e) = entries
            .iter()
            .find(|&&e| e == 0 || e.unsigned_abs() > mu)
        {
            return Err(Error::InvalidColouring(format!(
                "entry {e} outside ±1..±{mu}"
            )));
        }
        Ok(Self { mu, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `i_j = sum of sgn c(k) over k with |c(k)| = j`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut out = vec![0; self.mu as usize];
        for &e in &self.entries {
            out[e.unsigned_abs() as usize - 1] += e.signum() as i64;
        }
        out
    }

    /// `I_c(omega) = prod omega_j^{i_j}`.
    pub fn admissibility(&self, omega: &[Complex64], tol: f64) -> Result<Complex64> {
        check_omega(omega, self.mu, tol)?;
        Ok(self
            .exponent_sums()
            .iter()
            .zip(omega)
            .map(|(&i, w)| w.powi(i as i32))
            .product())
    }

    /// True when `|I_c(omega) - 1| > tol`.
    pub fn is_admissible(&self, omega: &[Complex64], tol: f64) -> Result<bool> {
        Ok((self.admissibility(omega, tol)? - 1.0).norm() > tol)
    }

    /// The value `omega_{|c(j)|}^{sgn c(j)}` carried by each puncture.
    pub fn puncture_values(&self, omega: &[Complex64]) -> Vec<Complex64> {
        self.entries
            .iter()
            .map(|&e| {
                let w = omega[e.unsigned_abs() as usize - 1];
                if e > 0 {
                    w
                } else {
                    w.inv()
                }
            })
            .collect()
    }
}

/// Validates a torus point: right arity, unit modulus, no coordinate at 1.
pub fn check_omega(omega: &[Complex64], mu: u32, tol: f64) -> Result<()> {
    if omega.len() != mu as usize {
        return Err(Error::OmegaArity {
            expected: mu as usize,
            got: omega.len(),
        });
    }
    for (j, w) in omega.iter().enumerate() {
        if (w.norm() - 1.0).abs() > tol.sqrt() {
            return Err(Error::OmegaNotUnit { index: j + 1 });
        }
        if (w - 1.0).norm() <= tol {
            return Err(Error::OmegaOnForbiddenLocus { index: j + 1 });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Slice {
    Crossing { pos: usize, sign: i8 },
    /// `up` orients the strand at `pos` upward and the one at `pos + 1` downward.
    Cup { pos: usize, colour: u32, up: bool },
    Cap { pos: usize },
}

/// Applies one slice to a colouring, checking the slice against it.
fn apply_slice(entries: &mut Vec<i32>, slice: &Slice, mu: u32) -> Result<()> {
    let n = entries.len();
    match *slice {
        Slice::Crossing { pos, sign } => {
            if pos == 0 || pos >= n {
                return Err(Error::InvalidWord(format!("crossing at {pos} on {n} strands")));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidWord(format!("crossing sign {sign}")));
            }
            entries.swap(pos - 1, pos);
        }
        Slice::Cup { pos, colour, up } => {
            if pos == 0 || pos > n + 1 {
                return Err(Error::InvalidWord(format!("cup at {pos} on {n} strands")));
            }
            if colour == 0 || colour > mu {
                return Err(Error::InvalidColouring(format!("cup colour {colour}")));
            }
            let c = colour as i32;
            let pair = if up { [c, -c] } else { [-c, c] };
            entries.splice(pos - 1..pos - 1, pair);
        }
        Slice::Cap { pos } => {
            if pos == 0 || pos >= n {
                return Err(Error::InvalidWord(format!("cap at {pos} on {n} strands")));
            }
            if entries[pos - 1] != -entries[pos] {
                return Err(Error::InvalidWord(format!(
                    "cap at {pos} joins {} and {}",
                    entries[pos - 1],
                    entries[pos]
                )));
            }
            entries.drain(pos - 1..=pos);
        }
    }
    Ok(())
}

/// A tangle diagram as a bottom-to-top sequence of elementary slices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangleWord {
    source: ColouredObject,
    target: ColouredObject,
    slices: Vec<Slice>,
}

impl TangleWord {
    pub fn new(source: ColouredObject, slices: Vec<Slice>) -> Result<Self> {
        let mut entries = source.entries.clone();
        for s in &slices {
            apply_slice(&mut entries, s, source.mu)?;
        }
        let target = ColouredObject::new(source.mu, entries)?;
        Ok(Self {
            source,
            target,
            slices,
        })
    }

    pub fn identity(c: &ColouredObject) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            slices: Vec::new(),
        }
    }

    pub fn source(&self) -> &ColouredObject {
        &self.source
    }

    pub fn target(&self) -> &ColouredObject {
        &self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn mu(&self) -> u32 {
        self.source.mu
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s, Slice::Crossing { .. }))
            .count()
    }

    /// The colouring before each slice, followed by the target.
    pub fn levels(&self) -> Vec<Vec<i32>> {
        let mut cur = self.source.entries.clone();
        let mut out = vec![cur.clone()];
        for s in &self.slices {
            apply_slice(&mut cur, s, self.mu()).expect("validated on construction");
            out.push(cur.clone());
        }
        out
    }

    /// The braid word, if the diagram has no cups or caps.
    pub fn braid_word(&self) -> Option<Vec<i32>> {
        self.slices
            .iter()
            .map(|s| match *s {
                Slice::Crossing { pos, sign } => Some(sign as i32 * pos as i32),
                _ => None,
            })
            .collect()
    }

    pub fn as_braid(&self) -> Option<ColouredBraid> {
        Some(ColouredBraid {
            source: self.source.clone(),
            word: self.braid_word()?,
        })
    }
}

/// `a` followed by `b` (stacked on top).
pub fn compose(a: &TangleWord, b: &TangleWord) -> Result<TangleWord> {
    if a.target != b.source {
        return Err(Error::ColourMismatch {
            left: a.target.entries.clone(),
            right: b.source.entries.clone(),
        });
    }
    let mut slices = a.slices.clone();
    slices.extend_from_slice(&b.slices);
    Ok(TangleWord {
        source: a.source.clone(),
        target: b.target.clone(),
        slices,
    })
}

/// Mirror across a horizontal plane with orientation reversed.
///
/// Boundary colourings keep their signs: an upward strand turned upside
/// down and then reversed points up again.
pub fn reflect(t: &TangleWord) -> TangleWord {
    let levels = t.levels();
    let slices = t
        .slices
        .iter()
        .enumerate()
        .rev()
        .map(|(k, s)| match *s {
            Slice::Crossing { pos, sign } => Slice::Crossing { pos, sign: -sign },
            Slice::Cup { pos, .. } => Slice::Cap { pos },
            Slice::Cap { pos } => {
                let e = levels[k][pos - 1];
                Slice::Cup {
                    pos,
                    colour: e.unsigned_abs(),
                    up: e > 0,
                }
            }
        })
        .collect();
    TangleWord {
        source: t.target.clone(),
        target: t.source.clone(),
        slices,
    }
}

/// A coloured braid: a tangle made of crossings only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColouredBraid {
    source: ColouredObject,
    word: Vec<i32>,
}

impl ColouredBraid {
    pub fn new(source: ColouredObject, word: Vec<i32>) -> Result<Self> {
        let n = source.len() as i32;
        if let Some(&k) = word.iter().find(|&&k| k == 0 || k.abs() >= n) {
            return Err(Error::InvalidWord(format!(
                "generator {k} on {n} strands"
            )));
        }
        Ok(Self { source, word })
    }

    pub fn source(&self) -> &ColouredObject {
        &self.source
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.source.len()
    }

    /// Colouring at the top: each letter swaps its two positions.
    pub fn target(&self) -> ColouredObject {
        let mut e = self.source.entries.clone();
        for &k in &self.word {
            let i = k.unsigned_abs() as usize;
            e.swap(i - 1, i);
        }
        ColouredObject {
            mu: self.source.mu,
            entries: e,
        }
    }

    pub fn is_endomorphism(&self) -> bool {
        self.target() == self.source
    }

    /// `perm[p]` is the top position reached from bottom position `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let n = self.strands();
        let mut at: Vec<usize> = (0..n).collect(); // at[pos] = bottom strand there
        for &k in &self.word {
            let i = k.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; n];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn to_tangle(&self) -> TangleWord {
        let slices = self
            .word
            .iter()
            .map(|&k| Slice::Crossing {
                pos: k.unsigned_abs() as usize,
                sign: k.signum() as i8,
            })
            .collect();
        TangleWord {
            source: self.source.clone(),
            target: self.target(),
            slices,
        }
    }
}

/// A component of a closure: its colour and the bottom positions (1-based)
/// it passes through. Braid components list positions in cycle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureComponent {
    pub colour: u32,
    pub positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDescription {
    pub components: Vec<ClosureComponent>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

pub fn closure(t: &TangleWord) -> Result<ClosureDescription> {
    if !t.is_endomorphism() {
        return Err(Error::NotAnEndomorphism);
    }
    if let Some(b) = t.as_braid() {
        let perm = b.permutation();
        let mut seen = vec![false; perm.len()];
        let mut components = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut positions = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                positions.push(p + 1);
                p = perm[p];
            }
            components.push(ClosureComponent {
                colour: t.source.entries[start].unsigned_abs(),
                positions,
            });
        }
        return Ok(ClosureDescription { components });
    }

    // Strand pieces joined by caps and by the closing parallel strands.
    let mut parent: Vec<usize> = Vec::new();
    let mut colour: Vec<u32> = Vec::new();
    let mut state: Vec<usize> = Vec::new();
    for &e in &t.source.entries {
        parent.push(parent.len());
        colour.push(e.unsigned_abs());
        state.push(parent.len() - 1);
    }
    let bottom = state.clone();
    for s in &t.slices {
        match *s {
            Slice::Crossing { pos, .. } => state.swap(pos - 1, pos),
            Slice::Cup { pos, colour: c, .. } => {
                let id = parent.len();
                parent.push(id);
                colour.push(c);
                state.splice(pos - 1..pos - 1, [id, id]);
            }
            Slice::Cap { pos } => {
                let (a, b) = (find(&mut parent, state[pos - 1]), find(&mut parent, state[pos]));
                parent[b] = a;
                state.drain(pos - 1..=pos);
            }
        }
    }
    for (k, &top) in state.iter().enumerate() {
        let (a, b) = (find(&mut parent, bottom[k]), find(&mut parent, top));
        parent[b] = a;
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut components: Vec<ClosureComponent> = Vec::new();
    for id in 0..parent.len() {
        let r = find(&mut parent, id);
        if !roots.contains(&r) {
            roots.push(r);
            components.push(ClosureComponent {
                colour: colour[r],
                positions: Vec::new(),
            });
        }
    }
    for (k, &b) in bottom.iter().enumerate() {
        let r = find(&mut parent, b);
        let idx = roots.iter().position(|&x| x == r).unwrap();
        components[idx].positions.push(k + 1);
    }
    Ok(ClosureDescription { components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(mu: u32, e: &[i32]) -> ColouredObject {
        ColouredObject::new(mu, e.to_vec()).unwrap()
    }

    fn braid(mu: u32, e: &[i32], w: &[i32]) -> TangleWord {
        ColouredBraid::new(obj(mu, e), w.to_vec()).unwrap().to_tangle()
    }

    #[test]
    fn exponent_sums_examples() {
        assert_eq!(obj(1, &[1, 1]).exponent_sums(), vec![2]);
        assert_eq!(obj(1, &[1, -1]).exponent_sums(), vec![0]);
        assert_eq!(obj(2, &[1, 2]).exponent_sums(), vec![1, 1]);
    }

    #[test]
    fn admissibility_examples() {
        let i = Complex64::i();
        let m1 = Complex64::new(-1.0, 0.0);
        let c = obj(1, &[1, 1]);
        assert!((c.admissibility(&[m1], 1e-9).unwrap() - 1.0).norm() < 1e-12);
        assert!(!c.is_admissible(&[m1], 1e-9).unwrap());
        let c = obj(2, &[1, 2]);
        assert!((c.admissibility(&[i, i], 1e-9).unwrap() + 1.0).norm() < 1e-12);
        let c = obj(1, &[1, -1]);
        assert!(!c.is_admissible(&[crate::omega_from_turns(0.37)], 1e-9).unwrap());
        assert_eq!(
            c.admissibility(&[Complex64::new(1.0, 0.0)], 1e-9),
            Err(Error::OmegaOnForbiddenLocus { index: 1 })
        );
    }

    #[test]
    fn compose_identity_and_inverse_pair() {
        let t = braid(1, &[1, 1], &[1]);
        let id = TangleWord::identity(t.source());
        assert_eq!(compose(&id, &t).unwrap(), t);
        let inv = braid(1, &[1, 1], &[-1]);
        let both = compose(&t, &inv).unwrap();
        assert_eq!(both.braid_word().unwrap(), vec![1, -1]);
        assert!(both.is_endomorphism());
    }

    #[test]
    fn composition_checks_boundary_colours() {
        // c = (-2) -> c' = (-1, +1, -2) by a cup on the left.
        let c = obj(2, &[-2]);
        let t1 = TangleWord::new(c, vec![Slice::Cup { pos: 1, colour: 1, up: false }]).unwrap();
        assert_eq!(t1.target().entries, vec![-1, 1, -2]);
        let t2 = TangleWord::new(
            t1.target().clone(),
            vec![Slice::Cap { pos: 1 }, Slice::Cup { pos: 2, colour: 1, up: true }],
        )
        .unwrap();
        assert_eq!(t2.target().entries, vec![-2, 1, -1]);
        assert!(compose(&t1, &t2).is_ok());
        assert!(matches!(compose(&t2, &t2), Err(Error::ColourMismatch { .. })));
    }

    #[test]
    fn cap_needs_opposite_orientations() {
        let c = obj(1, &[1, 1]);
        assert!(TangleWord::new(c, vec![Slice::Cap { pos: 1 }]).is_err());
    }

    #[test]
    fn reflection_examples() {
        let id = TangleWord::identity(&obj(2, &[1, -2]));
        assert_eq!(reflect(&id), id);
        let t = braid(1, &[1, 1, 1], &[1, 2]);
        assert_eq!(reflect(&t).braid_word().unwrap(), vec![-2, -1]);
    }

    #[test]
    fn reflection_of_cup_and_cap() {
        let c = obj(1, &[1]);
        let t = TangleWord::new(
            c,
            vec![
                Slice::Cup { pos: 2, colour: 1, up: true },
                Slice::Crossing { pos: 1, sign: 1 },
                Slice::Cap { pos: 2 },
            ],
        )
        .unwrap();
        let r = reflect(&t);
        assert_eq!(
            r.slices(),
            &[
                Slice::Cup { pos: 2, colour: 1, up: true },
                Slice::Crossing { pos: 1, sign: -1 },
                Slice::Cap { pos: 2 },
            ]
        );
        assert_eq!(reflect(&r), t);
    }

    #[test]
    fn closure_examples() {
        let c = obj(1, &[1, 1]);
        let cl = closure(&TangleWord::identity(&c)).unwrap();
        assert_eq!(cl.components.len(), 2);
        assert!(cl.components.iter().all(|k| k.colour == 1));
        assert_eq!(closure(&braid(1, &[1, 1], &[1])).unwrap().components.len(), 1);
        assert_eq!(closure(&braid(1, &[1, 1], &[1, 1])).unwrap().components.len(), 2);
        assert_eq!(
            closure(&braid(1, &[1, 1], &[1, 1])).unwrap().components[0].positions,
            vec![1]
        );
        assert_eq!(
            closure(&braid(1, &[1, 1, 1], &[1, 2])).unwrap().components[0].positions,
            vec![1, 3, 2]
        );
        let half = TangleWord::new(c, vec![Slice::Cap { pos: 1 }]);
        assert!(half.is_err());
        let t = braid(2, &[1, 2], &[1]);
        assert_eq!(closure(&t), Err(Error::NotAnEndomorphism));
    }

    #[test]
    fn closure_with_cups_and_caps() {
        // A kink on one strand plus a small closed circle.
        let c = obj(2, &[1]);
        let t = TangleWord::new(
            c,
            vec![
                Slice::Cup { pos: 2, colour: 1, up: true },
                Slice::Crossing { pos: 1, sign: 1 },
                Slice::Cap { pos: 2 },
                Slice::Cup { pos: 1, colour: 2, up: true },
                Slice::Cap { pos: 1 },
            ],
        )
        .unwrap();
        let cl = closure(&t).unwrap();
        assert_eq!(cl.components.len(), 2);
        assert_eq!(cl.components[0], ClosureComponent { colour: 1, positions: vec![1] });
        assert_eq!(cl.components[1], ClosureComponent { colour: 2, positions: vec![] });
    }
}
