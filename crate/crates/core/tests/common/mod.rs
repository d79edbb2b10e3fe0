//! Random instances shared by the property tests and the acceptance run.
#![allow(dead_code)]

use nalgebra::DMatrix;

use rand_chacha::ChaCha8Rng;
use tanglesig::braidtangle::{ColouredBraid, ColouredObject, Slice, TangleWord};
use tanglesig::hermforms::{SkewSpace, Subspace};
use tanglesig::{omega_from_turns, CMat, Complex64};

pub use rand::{Rng as _, SeedableRng};
pub type Rng8 = ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cx(rng: &mut Rng8) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut Rng8, r: usize, c: usize) -> CMat {
    CMat::from_fn(r, c, |_, _| cx(rng))
}

/// Well-conditioned invertible matrix: identity plus a small perturbation.
pub fn random_invertible(rng: &mut Rng8, n: usize) -> CMat {
    CMat::identity(n, n) + random_matrix(rng, n, n) * Complex64::new(0.3, 0.0)
}

/// Unitary matrix from the QR factorisation of a random matrix.
pub fn random_unitary(rng: &mut Rng8, n: usize) -> CMat {
    random_matrix(rng, n, n).qr().q()
}

/// A point on the circle away from 1, at an angle in turns within (0.03, 0.97).
pub fn random_angle(rng: &mut Rng8) -> f64 {
    rng.gen_range(0.03..0.97)
}

pub fn random_omega(rng: &mut Rng8, mu: usize) -> Vec<Complex64> {
    (0..mu).map(|_| omega_from_turns(random_angle(rng))).collect()
}

/// A nondegenerate skew-Hermitian form `P* (i D) P` with `D = diag(±1)` of
/// split signature, together with `P` and `D`.
pub struct SplitForm {
    pub space: SkewSpace,
    pub p: CMat,
    pub d: Vec<f64>,
}

pub fn split_form(rng: &mut Rng8, m: usize) -> SplitForm {
    let d: Vec<f64> = (0..2 * m).map(|k| if k < m { 1.0 } else { -1.0 }).collect();
    let p = random_invertible(rng, 2 * m);
    let id = CMat::from_fn(2 * m, 2 * m, |r, c| {
        if r == c {
            Complex64::new(0.0, d[r])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let form = p.adjoint() * id * &p;
    SplitForm {
        space: SkewSpace::new(form, TOL).unwrap(),
        p,
        d,
    }
}

/// A random isotropic subspace of dimension `k <= m` of a split form:
/// part of the graph of a unitary `C^m -> C^m`, pulled back by `P^-1`.
pub fn random_isotropic(rng: &mut Rng8, f: &SplitForm, k: usize) -> Subspace {
    let m = f.d.len() / 2;
    let u = random_unitary(rng, m);
    let mut graph = CMat::zeros(2 * m, m);
    graph.view_mut((0, 0), (m, m)).copy_from(&CMat::identity(m, m));
    graph.view_mut((m, 0), (m, m)).copy_from(&u);
    let pick = random_matrix(rng, m, k);
    let pinv = f.p.clone().try_inverse().unwrap();
    Subspace::from_basis(&f.space, pinv * graph * pick)
}

/// An element of the group preserving a split form, via the Cayley
/// transform of a Lie algebra element `D A` with `A` skew-Hermitian.
pub fn random_form_unitary(rng: &mut Rng8, f: &SplitForm, scale: f64) -> CMat {
    let n = f.d.len();
    let a = random_matrix(rng, n, n);
    let a = (&a - a.adjoint()) * Complex64::new(0.5 * scale, 0.0);
    let dm = CMat::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(f.d[r], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let x = dm * a * Complex64::new(0.5, 0.0);
    let id = CMat::identity(n, n);
    let g = (&id - &x).try_inverse().unwrap() * (&id + &x);
    let pinv = f.p.clone().try_inverse().unwrap();
    pinv * g * &f.p
}

pub fn random_colouring(rng: &mut Rng8, n: usize, mu: u32) -> ColouredObject {
    loop {
        let e: Vec<i32> = (0..n)
            .map(|_| {
                let c = rng.gen_range(1..=mu) as i32;
                if rng.gen_bool(0.75) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        if (1..=mu as i32).all(|j| e.iter().any(|x| x.abs() == j)) {
            return ColouredObject::new(mu, e).unwrap();
        }
    }
}

pub fn random_word(rng: &mut Rng8, n: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

pub fn random_braid(rng: &mut Rng8, n: usize, mu: u32, len: usize) -> ColouredBraid {
    let c = random_colouring(rng, n, mu);
    ColouredBraid::new(c, random_word(rng, n, len)).unwrap()
}

/// A random word in `B_c` whose permutation preserves the colouring: a
/// random word followed by a word sorting the strands back.
pub fn random_pure_coloured_braid(rng: &mut Rng8, c: &ColouredObject, len: usize) -> ColouredBraid {
    let n = c.len();
    let mut w = random_word(rng, n, len);
    let mut cur = ColouredBraid::new(c.clone(), w.clone()).unwrap().target().entries;
    // bubble the entries back into the order of c
    for i in 0..n {
        let j = (i..n).find(|&j| cur[j] == c.entries[i]).unwrap();
        for k in (i..j).rev() {
            cur.swap(k, k + 1);
            w.push(if rng.gen_bool(0.5) { k as i32 + 1 } else { -(k as i32 + 1) });
        }
    }
    ColouredBraid::new(c.clone(), w).unwrap()
}

/// A random tangle starting at `c`, never dropping below one strand or
/// growing past `max_strands`.
pub fn random_tangle(rng: &mut Rng8, c: &ColouredObject, len: usize, max_strands: usize) -> TangleWord {
    let mut entries = c.entries.clone();
    let mut slices = Vec::new();
    while slices.len() < len {
        let n = entries.len();
        let choice = rng.gen_range(0..4);
        if choice <= 1 && n >= 2 {
            let pos = rng.gen_range(1..n);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            entries.swap(pos - 1, pos);
            slices.push(Slice::Crossing { pos, sign });
        } else if choice == 2 && n + 2 <= max_strands {
            let pos = rng.gen_range(1..=n + 1);
            let colour = rng.gen_range(1..=c.mu);
            let up = rng.gen_bool(0.5);
            let s = colour as i32;
            entries.splice(pos - 1..pos - 1, if up { [s, -s] } else { [-s, s] });
            slices.push(Slice::Cup { pos, colour, up });
        } else if choice == 3 && n >= 3 {
            let caps: Vec<usize> = (1..n).filter(|&p| entries[p - 1] == -entries[p]).collect();
            if caps.is_empty() {
                continue;
            }
            let pos = caps[rng.gen_range(0..caps.len())];
            entries.drain(pos - 1..=pos);
            slices.push(Slice::Cap { pos });
        }
    }
    TangleWord::new(c.clone(), slices).unwrap()
}

pub fn random_integer_matrix(rng: &mut Rng8, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.gen_range(-2..=2) as f64)
}

/// All words of length `0..=max_len` over the given letters.
pub fn all_words(letters: &[i32], max_len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<i32>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Classical unreduced Burau matrix of a word: each `sigma_i` contributes
/// the block `[[1 - t, 1], [t, 0]]` on rows and columns `i, i+1`, later
/// letters multiplying on the left.
pub fn burau_oracle(n: usize, word: &[i32], t: Complex64) -> CMat {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = CMat::identity(n, n);
    for &k in word {
        let i = k.unsigned_abs() as usize - 1;
        let mut g = CMat::identity(n, n);
        let block = if k > 0 {
            [[one - t, one], [t, zero]]
        } else {
            [[zero, one / t], [one, one - one / t]]
        };
        for a in 0..2 {
            for b in 0..2 {
                g[(i + a, i + b)] = block[a][b];
            }
        }
        m = g * m;
    }
    m
}

/// Reduced Burau in the basis `e_j - e_{j+1}`: coordinates of a vector in
/// that basis are its prefix sums.
pub fn reduced_burau_oracle(n: usize, word: &[i32], t: Complex64) -> CMat {
    let m = burau_oracle(n, word, t);
    CMat::from_fn(n - 1, n - 1, |r, c| {
        // image of e_c - e_{c+1}, coordinate r
        (0..=r).map(|l| m[(l, c)] - m[(l, c + 1)]).sum()
    })
}

/// Deterministic proptest configuration: fixed seed, no persistence files.
pub fn pinned(seed: u64, cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Default::default()
    }
}
