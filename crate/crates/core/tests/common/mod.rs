#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use sepsys::hamming::{Guard, HammingSpace, Word};
use sepsys::separation::Code;

pub fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn all_words(space: HammingSpace) -> Vec<Word> {
    space.words(Guard::default()).unwrap().collect()
}

pub fn random_word<R: Rng>(rng: &mut R, space: HammingSpace) -> Word {
    Word::new((0..space.n()).map(|_| rng.random_range(0..space.q())).collect())
}

/// `size` distinct random words (fewer if the space is smaller).
pub fn random_set<R: Rng>(rng: &mut R, space: HammingSpace, size: usize) -> Vec<Word> {
    let cap = space.size().min(size as u128) as usize;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < cap {
        let w = random_word(rng, space);
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

pub fn random_code<R: Rng>(rng: &mut R, space: HammingSpace, size: usize) -> Code {
    Code::new(space, random_set(rng, space, size)).unwrap()
}

/// Brute-force segment: all `z` with `d(x,z) + d(z,y) = d(x,y)`.
pub fn segment_by_distances(space: HammingSpace, x: &Word, y: &Word) -> BTreeSet<Word> {
    let d = x.distance(y);
    all_words(space)
        .into_iter()
        .filter(|z| x.distance(z) + z.distance(y) == d)
        .collect()
}

/// A Hamming isometry: coordinate permutation plus per-coordinate alphabet
/// permutations.
pub struct Isometry {
    pub coords: Vec<usize>,
    pub alphabets: Vec<Vec<u8>>,
}

impl Isometry {
    pub fn random<R: Rng>(rng: &mut R, space: HammingSpace) -> Self {
        let mut coords: Vec<usize> = (0..space.n()).collect();
        coords.shuffle(rng);
        let alphabets = (0..space.n())
            .map(|_| {
                let mut a: Vec<u8> = (0..space.q()).collect();
                a.shuffle(rng);
                a
            })
            .collect();
        Self { coords, alphabets }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let s = w.symbols();
        Word::new(
            self.coords
                .iter()
                .enumerate()
                .map(|(i, &src)| self.alphabets[i][s[src] as usize])
                .collect(),
        )
    }

    pub fn apply_code(&self, code: &Code) -> Code {
        Code::new(code.space(), code.words().iter().map(|w| self.apply(w)).collect()).unwrap()
    }
}
