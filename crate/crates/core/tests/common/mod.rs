#![allow(dead_code)]

use cotame::endo::{AffineMap, Endo};
use cotame::poly::{Monomial, Poly};
use cotame::ring::{Elem, Ring};
use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

pub fn small_elem(r: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    match r.elements() {
        Ok(all) => all.choose(rng).unwrap().clone(),
        Err(_) => r.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn nonzero_elem(r: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let a = small_elem(r, rng);
        if r.is_unit(&a) {
            return a;
        }
    }
}

/// Sparse affine letters: permutations, unit scalings, translations and transvections.
pub fn random_affine(r: &Ring, n: usize, rng: &mut ChaCha8Rng) -> AffineMap {
    match rng.gen_range(0..4) {
        0 => {
            let mut sigma: Vec<usize> = (0..n).collect();
            sigma.shuffle(rng);
            AffineMap::permutation(r, &sigma).unwrap()
        }
        1 => {
            let d: Vec<Elem> = (0..n).map(|_| nonzero_elem(r, rng)).collect();
            AffineMap::diagonal(r, &d).unwrap()
        }
        2 => AffineMap::translation(r, (0..n).map(|_| small_elem(r, rng)).collect()),
        _ => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut a: Vec<Vec<Elem>> = (0..n)
                .map(|x| (0..n).map(|y| if x == y { r.one() } else { r.zero() }).collect())
                .collect();
            a[j][i] = small_elem(r, rng);
            AffineMap::new(r, a, vec![r.zero(); n]).unwrap()
        }
    }
}

/// Random polynomial in the variables `vars` with up to `terms` terms of total
/// degree in `1..=max_deg`.
pub fn random_poly(r: &Ring, n: usize, vars: &[usize], max_deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut f = Poly::zero(r, n);
    for _ in 0..terms {
        let deg = rng.gen_range(1..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[*vars.choose(rng).unwrap()] += 1;
        }
        f = f.add(&Poly::term(r, Monomial::from_exps(&e), nonzero_elem(r, rng)));
    }
    f
}

/// `x_i -> x_i + f` with `f` free of `x_i`, and its inverse.
pub fn elementary_pair(f: &Poly, i: usize) -> (Endo, Endo) {
    let r = f.ring();
    let n = f.nvars();
    let make = |g: &Poly| {
        let images = (0..n)
            .map(|j| {
                let v = Poly::var(r, n, j);
                if j == i { v.add(g) } else { v }
            })
            .collect();
        Endo::new(r, images).unwrap()
    };
    (make(f), make(&f.neg()))
}

/// A tame automorphism built from a word of at most `len` letters, at most
/// `max_nonlinear` of them elementary of degree at most `max_deg`, with its inverse.
pub fn random_tame(
    r: &Ring,
    n: usize,
    len: usize,
    max_nonlinear: usize,
    max_deg: u32,
    rng: &mut ChaCha8Rng,
) -> (Endo, Endo) {
    let mut phi = Endo::identity(r, n);
    let mut inv = Endo::identity(r, n);
    let mut nonlinear = 0;
    let len = rng.gen_range(1..=len);
    let forced = rng.gen_range(0..len);
    for k in 0..len {
        let (a, b) = if nonlinear < max_nonlinear && (k == forced || rng.gen_bool(0.3)) {
            nonlinear += 1;
            let i = rng.gen_range(0..n);
            let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let f = random_poly(r, n, &others, max_deg, 2, rng);
            let f = if f.total_deg().finite().unwrap_or(0) < 2 {
                f.add(&Poly::term(r, Monomial::var(n, others[0]), r.one()).pow(2))
            } else {
                f
            };
            elementary_pair(&f, i)
        } else {
            let a = random_affine(r, n, rng);
            (a.to_endo(), a.inverse().to_endo())
        };
        phi = phi.compose(&a).unwrap();
        inv = b.compose(&inv).unwrap();
    }
    (phi, inv)
}

pub fn random_affine_map(r: &Ring, n: usize, rng: &mut ChaCha8Rng) -> Endo {
    let mut phi = Endo::identity(r, n);
    for _ in 0..4 {
        phi = phi.compose(&random_affine(r, n, rng).to_endo()).unwrap();
    }
    phi
}
