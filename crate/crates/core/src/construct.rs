//! Constructions of binary `(2,1)`-separating codes.
//!
//! Codes are handled as packed words (coordinate 0 most significant, see
//! [`Word::pack`](crate::hamming::Word::pack)); `z ∈ [x, y]` iff
//! `(x ⊕ z) ∧ (y ⊕ z) = 0`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::separation::Code;

/// Largest length accepted by the enumerating constructions.
pub const MAX_GREEDY_LEN: usize = 24;

#[inline]
pub(crate) fn in_segment(x: u64, y: u64, z: u64) -> bool {
    (x ^ z) & (y ^ z) == 0
}

/// True iff none of `a, b, c` lies in the segment of the other two.
#[inline]
pub(crate) fn triple_ok(a: u64, b: u64, c: u64) -> bool {
    !in_segment(a, b, c) && !in_segment(a, c, b) && !in_segment(b, c, a)
}

/// Whether `code ∪ {w}` stays `(2,1)`-separating, given that `code` is.
pub fn can_extend(code: &[u64], w: u64) -> bool {
    code.iter().enumerate().all(|(i, &x)| code[i + 1..].iter().all(|&y| triple_ok(x, y, w)))
}

/// Order in which [`greedy_construct`] scans candidate words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    Lex,
    /// Binary reflected Gray code order.
    Gray,
    /// Uniformly shuffled, one shuffle per restart.
    Random { seed: u64 },
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GREEDY_LEN {
        return Err(Error::InvalidParameter(format!(
            "length must be in 1..={MAX_GREEDY_LEN}, got {n}"
        )));
    }
    Ok(())
}

fn greedy_pass(candidates: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut code = Vec::new();
    for w in candidates {
        if can_extend(&code, w) {
            code.push(w);
        }
    }
    code
}

/// Scans all words of `{0,1}^n` in `order` and keeps each one that leaves the
/// code separating. Random orders are retried `restarts` times (seeds
/// `seed, seed+1, …`) and the largest result wins, earliest on ties.
pub fn greedy_construct(n: usize, order: ScanOrder, restarts: usize) -> Result<Code> {
    check_len(n)?;
    let total = 1u64 << n;
    let code = match order {
        ScanOrder::Lex => greedy_pass(0..total),
        ScanOrder::Gray => greedy_pass((0..total).map(|i| i ^ (i >> 1))),
        ScanOrder::Random { seed } => {
            let mut best: Vec<u64> = Vec::new();
            for r in 0..restarts.max(1) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
                let mut words: Vec<u64> = (0..total).collect();
                words.shuffle(&mut rng);
                let code = greedy_pass(words);
                if code.len() > best.len() {
                    best = code;
                }
            }
            best
        }
    };
    Code::from_packed(n, &code)
}

/// First violating triple `(i, j, k)` with `i < j`, `k ∉ {i, j}` and
/// `code[k] ∈ [code[i], code[j]]`, in the same order as
/// [`check_21_fast`](crate::separation::check_21_fast).
pub fn first_violation(code: &[u64]) -> Option<(usize, usize, usize)> {
    let m = code.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in (0..m).filter(|&k| k != i && k != j) {
                if in_segment(code[i], code[j], code[k]) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Samples `m` distinct uniform words of length `n`, sorts them, then
/// repeatedly deletes the lowest-index member of the first violating triple
/// until the code separates.
pub fn random_repair_construct(n: usize, m: usize, seed: u64) -> Result<Code> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidParameter(format!("length must be in 1..=64, got {n}")));
    }
    if m == 0 || (n < 64 && m as u128 > 1u128 << n) {
        return Err(Error::InvalidParameter(format!("cannot draw {m} distinct words of length {n}")));
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = BTreeSet::new();
    while sample.len() < m {
        sample.insert(rng.random::<u64>() & mask);
    }
    let mut code: Vec<u64> = sample.into_iter().collect();
    while let Some((i, j, k)) = first_violation(&code) {
        code.remove(i.min(j).min(k));
    }
    Code::from_packed(n, &code)
}
