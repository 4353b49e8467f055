//! Convexity in the Hamming space `Q^n`.
//!
//! Segments are coordinate-wise products `[x, y] = { z | z_i ∈ {x_i, y_i} }`,
//! and the hull of a finite set `S` has three equivalent descriptions: the
//! intersection of the coordinate half-spaces containing `S`
//! ([`hull_by_half_spaces`]), the recursive union of segments
//! ([`hull_by_segments`]), and the product of coordinate projections
//! ([`hull_by_projections`]). The last one is the canonical representation,
//! [`ProjectionHull`]; the others enumerate words and are guarded.
//!
//! Coordinates are 0-based in this API; [`Membership::Separated`] and the
//! text formats report them 1-based.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// Largest alphabet expressible in word files (`0-9a-z`).
pub const MAX_Q: u8 = 36;

/// Default enumeration limit, `2^24` words.
pub const DEFAULT_GUARD: u128 = 1 << 24;

/// Upper bound on the number of words an operation may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard(pub u128);

impl Default for Guard {
    fn default() -> Self {
        Guard(DEFAULT_GUARD)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HammingSpace {
    q: u8,
    n: usize,
}

/// A word of `Q^n`, stored as its symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    /// Parses symbols written as `0-9a-z`.
    pub fn parse(text: &str) -> Option<Word> {
        text.chars()
            .map(|c| c.to_digit(MAX_Q as u32).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Packs a binary word into the low `n` bits, coordinate 0 most
    /// significant, so that integer order equals lexicographic order.
    /// Returns `None` if the word is longer than 64 or not binary.
    pub fn pack(&self) -> Option<u64> {
        if self.0.len() > 64 {
            return None;
        }
        self.0.iter().try_fold(0u64, |acc, &s| match s {
            0 | 1 => Some((acc << 1) | s as u64),
            _ => None,
        })
    }

    /// Inverse of [`Word::pack`].
    pub fn unpack(bits: u64, n: usize) -> Word {
        Word((0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect())
    }

    pub fn distance(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            let c = char::from_digit(s as u32, MAX_Q as u32).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl HammingSpace {
    pub fn new(q: u8, n: usize) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) || n == 0 {
            return Err(Error::InvalidSpace { q, n });
        }
        Ok(Self { q, n })
    }

    pub fn binary(n: usize) -> Result<Self> {
        Self::new(2, n)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.q as u128).checked_pow(self.n as u32).unwrap_or(u128::MAX)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: w.len() });
        }
        match w.0.iter().find(|&&s| s >= self.q) {
            Some(&symbol) => Err(Error::SymbolOutOfRange { symbol, q: self.q }),
            None => Ok(()),
        }
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text).ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("invalid word `{text}`"),
        })?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn check_guard(&self, guard: Guard) -> Result<()> {
        let size = self.size();
        if size > guard.0 {
            Err(Error::GuardExceeded { size, limit: guard.0 })
        } else {
            Ok(())
        }
    }

    /// Position of `w` in lexicographic order (mixed radix, coordinate 0 most
    /// significant). Only meaningful when `q^n` fits in `usize`.
    pub fn rank(&self, w: &Word) -> usize {
        w.0.iter().fold(0usize, |acc, &s| acc * self.q as usize + s as usize)
    }

    pub fn unrank(&self, mut index: usize) -> Word {
        let q = self.q as usize;
        let mut symbols = vec![0u8; self.n];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        Word(symbols)
    }

    /// All words in lexicographic order.
    pub fn words(&self, guard: Guard) -> Result<impl Iterator<Item = Word> + '_> {
        self.check_guard(guard)?;
        Ok((0..self.size() as usize).map(move |i| self.unrank(i)))
    }

    /// The space as a generic finite metric space, labelled by word.
    pub fn as_metric_space(&self, guard: Guard) -> Result<FiniteMetricSpace> {
        let words: Vec<Word> = self.words(guard)?.collect();
        let labels = words.iter().map(Word::to_string).collect();
        FiniteMetricSpace::from_points(labels, &words, |a, b| {
            Rational64::from_integer(a.distance(b) as i64)
        })
    }

    /// Every half-space `H_{i,α}` of the space.
    pub fn half_spaces(&self) -> impl Iterator<Item = HalfSpace> + '_ {
        (0..self.n).flat_map(move |coordinate| {
            (0..self.q).map(move |excluded| HalfSpace { coordinate, excluded })
        })
    }
}

/// Per-coordinate symbol sets `A_1 × … × A_n`; a word is a member iff each of
/// its symbols lies in the corresponding set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectionHull {
    space: HammingSpace,
    // bit `a` of `sets[i]` is set iff symbol `a` is in `A_i`
    sets: Vec<u64>,
}

/// Outcome of testing a word against a hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    /// 1-based coordinate `i` with `π_i(w) ∉ A_i`.
    Separated { coordinate: usize },
}

impl ProjectionHull {
    pub fn space(&self) -> HammingSpace {
        self.space
    }

    /// Symbols allowed at coordinate `i` (0-based), ascending.
    pub fn allowed(&self, i: usize) -> Vec<u8> {
        (0..self.space.q).filter(|&a| self.sets[i] >> a & 1 == 1).collect()
    }

    pub fn profile(&self) -> Vec<Vec<u8>> {
        (0..self.space.n).map(|i| self.allowed(i)).collect()
    }

    /// `∏ |A_i|`.
    pub fn cardinality(&self) -> BigUint {
        self.sets
            .iter()
            .map(|s| BigUint::from(s.count_ones()))
            .product()
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.space.check_word(w)?;
        Ok(self.witness_unchecked(w).is_none())
    }

    fn witness_unchecked(&self, w: &Word) -> Option<usize> {
        w.0.iter()
            .zip(&self.sets)
            .position(|(&s, &set)| set >> s & 1 == 0)
    }

    /// Discrete Hahn-Banach: a word outside the hull is cut off by a single
    /// coordinate. Returns the smallest such coordinate, 1-based.
    pub fn separating_coordinate(&self, w: &Word) -> Result<Membership> {
        self.space.check_word(w)?;
        Ok(match self.witness_unchecked(w) {
            Some(i) => Membership::Separated { coordinate: i + 1 },
            None => Membership::Inside,
        })
    }

    pub fn is_subset(&self, other: &ProjectionHull) -> bool {
        self.space == other.space
            && self.sets.iter().zip(&other.sets).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ProjectionHull) -> bool {
        self.sets.iter().zip(&other.sets).any(|(a, b)| a & b == 0)
    }

    /// Members in lexicographic order; refuses if the hull exceeds `guard`.
    pub fn members(&self, guard: Guard) -> Result<Vec<Word>> {
        let size = self.cardinality();
        if size > BigUint::from(guard.0) {
            return Err(Error::GuardExceeded {
                size: u128::try_from(&size).unwrap_or(u128::MAX),
                limit: guard.0,
            });
        }
        let profile = self.profile();
        let mut out = Vec::new();
        let mut current = vec![0usize; profile.len()];
        loop {
            out.push(Word(current.iter().zip(&profile).map(|(&k, a)| a[k]).collect()));
            // odometer, last coordinate fastest
            let mut i = profile.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < profile[i].len() {
                    break;
                }
                current[i] = 0;
            }
        }
    }
}

/// `H_{i,α} = { x | π_i(x) ≠ α }` with a 0-based coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub coordinate: usize,
    pub excluded: u8,
}

impl HalfSpace {
    pub fn contains(&self, w: &Word) -> bool {
        w.0[self.coordinate] != self.excluded
    }

    /// `(q-1) q^(n-1)`.
    pub fn cardinality(&self, space: HammingSpace) -> BigUint {
        BigUint::from(space.q - 1) * BigUint::from(space.q).pow(space.n as u32 - 1)
    }
}

fn check_all(space: HammingSpace, set: &[Word]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.iter().try_for_each(|w| space.check_word(w))
}

/// `[x, y]` as the product of `{x_i, y_i}`.
pub fn segment(space: HammingSpace, x: &Word, y: &Word) -> Result<ProjectionHull> {
    hull_by_projections(space, &[x.clone(), y.clone()])
}

/// Canonical hull: `A_i = π_i(S)`.
pub fn hull_by_projections(space: HammingSpace, set: &[Word]) -> Result<ProjectionHull> {
    check_all(space, set)?;
    let mut sets = vec![0u64; space.n];
    for w in set {
        for (slot, &s) in sets.iter_mut().zip(&w.0) {
            *slot |= 1 << s;
        }
    }
    Ok(ProjectionHull { space, sets })
}

/// Hull built from the inside: `hull(x_1) = {x_1}` and
/// `hull(x_1..x_m) = ∪_{x ∈ hull(x_1..x_{m-1})} [x, x_m]`.
pub fn hull_by_segments(space: HammingSpace, set: &[Word], guard: Guard) -> Result<BTreeSet<Word>> {
    check_all(space, set)?;
    space.check_guard(guard)?;
    let mut hull: BTreeSet<Word> = BTreeSet::from([set[0].clone()]);
    for xm in &set[1..] {
        let mut next = BTreeSet::new();
        for x in &hull {
            next.extend(segment(space, x, xm)?.members(guard)?);
        }
        hull = next;
    }
    Ok(hull)
}

/// Hull built from the outside: the words lying in every half-space that
/// contains `set`.
pub fn hull_by_half_spaces(
    space: HammingSpace,
    set: &[Word],
    guard: Guard,
) -> Result<BTreeSet<Word>> {
    check_all(space, set)?;
    let containing: Vec<HalfSpace> = space
        .half_spaces()
        .filter(|h| set.iter().all(|w| h.contains(w)))
        .collect();
    Ok(space
        .words(guard)?
        .filter(|w| containing.iter().all(|h| h.contains(w)))
        .collect())
}

/// Least `k` with `K_k = hull(S)`, where `K_0 = S` and `K_{i+1}` is the union
/// of the segments between members of `K_i`.
pub fn saturation_depth(space: HammingSpace, set: &[Word], guard: Guard) -> Result<usize> {
    let hull = hull_by_projections(space, set)?;
    space.check_guard(guard)?;
    let target = u128::try_from(&hull.cardinality()).unwrap_or(u128::MAX) as usize;

    let mut present = vec![false; space.size() as usize];
    let mut current: Vec<usize> = Vec::new();
    for w in set {
        let r = space.rank(w);
        if !present[r] {
            present[r] = true;
            current.push(r);
        }
    }
    let mut depth = 0;
    while current.len() < target {
        let words: Vec<Word> = current.iter().map(|&r| space.unrank(r)).collect();
        let mut grew = false;
        'pairs: for (i, x) in words.iter().enumerate() {
            for y in &words[i + 1..] {
                for_each_segment_rank(space, x, y, |r| {
                    if !present[r] {
                        present[r] = true;
                        current.push(r);
                        grew = true;
                    }
                });
                if current.len() == target {
                    break 'pairs;
                }
            }
        }
        depth += 1;
        if !grew {
            // unreachable for a hull computed by projections
            return Err(Error::InvalidParameter("saturation stalled".into()));
        }
    }
    Ok(depth)
}

fn for_each_segment_rank(space: HammingSpace, x: &Word, y: &Word, mut visit: impl FnMut(usize)) {
    let q = space.q as usize;
    let base = space.rank(x);
    // weight of coordinate i in the rank, and the offset from x_i to y_i
    let diffs: Vec<isize> = (0..space.n)
        .filter(|&i| x.0[i] != y.0[i])
        .map(|i| {
            let weight = q.pow((space.n - 1 - i) as u32) as isize;
            weight * (y.0[i] as isize - x.0[i] as isize)
        })
        .collect();
    for mask in 0u64..(1u64 << diffs.len()) {
        let offset: isize = diffs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, d)| d)
            .sum();
        visit((base as isize + offset) as usize);
    }
}

/// Parses a word file: one word per line over `0-9a-z`, `#` comments, uniform
/// length. `q` defaults to one more than the largest symbol (at least 2).
pub fn parse_words(text: &str, q_override: Option<u8>) -> Result<(HammingSpace, Vec<Word>)> {
    let mut words = Vec::new();
    let mut lines = Vec::new();
    let mut n = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w = Word::parse(line).ok_or_else(|| Error::Parse {
            line: lineno + 1,
            message: format!("invalid symbol in `{line}`"),
        })?;
        match n {
            None => n = Some(w.len()),
            Some(len) if len != w.len() => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("word has length {}, expected {len}", w.len()),
                })
            }
            _ => {}
        }
        words.push(w);
        lines.push(lineno + 1);
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "no words".into() })?;
    let max_symbol = words.iter().flat_map(|w| w.0.iter().copied()).max().unwrap_or(0);
    let q = q_override.unwrap_or((max_symbol + 1).max(2));
    let space = HammingSpace::new(q, n)?;
    for (w, line) in words.iter().zip(lines) {
        space.check_word(w).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    }
    Ok((space, words))
}
