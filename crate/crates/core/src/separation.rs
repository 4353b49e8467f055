//! `(s,t)`- and `ε-(s,t)`-separation of Hamming codes.
//!
//! For disjoint `S, T ⊆ C`, a coordinate `i` separates them when
//! `π_i(S) ∩ π_i(T) = ∅`; call the set of such coordinates `Λ(S,T)`. A code
//! is `ε-(s,t)`-separating when every admissible pair has `|Λ| > εn`, and
//! `(s,t)`-separating when `ε = 0`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{HammingSpace, Word};
use crate::rational::{format_rational, is_unit_interval};

/// A finite set of distinct words of one Hamming space, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    space: HammingSpace,
    words: Vec<Word>,
}

impl Code {
    pub fn new(space: HammingSpace, words: Vec<Word>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for w in &words {
            space.check_word(w)?;
            if !seen.insert(w) {
                return Err(Error::Duplicate(w.to_string()));
            }
        }
        Ok(Self { space, words })
    }

    /// Binary code from packed words (see [`Word::pack`]).
    pub fn from_packed(n: usize, packed: &[u64]) -> Result<Self> {
        let space = HammingSpace::binary(n)?;
        Self::new(space, packed.iter().map(|&b| Word::unpack(b, n)).collect())
    }

    pub fn parse(space: HammingSpace, words: &[&str]) -> Result<Self> {
        Self::new(space, words.iter().map(|w| space.word(w)).collect::<Result<_>>()?)
    }

    pub fn space(&self) -> HammingSpace {
        self.space
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Packed words when the code is binary with `n <= 64`.
    pub fn packed(&self) -> Option<Vec<u64>> {
        if self.space.q() != 2 {
            return None;
        }
        self.words.iter().map(Word::pack).collect()
    }
}

/// A pair `(S, T)` whose separating coordinates are too few.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(rename = "S", serialize_with = "ser_words")]
    pub s: Vec<Word>,
    #[serde(rename = "T", serialize_with = "ser_words")]
    pub t: Vec<Word>,
}

fn ser_words<S: serde::Serializer>(words: &[Word], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(words.iter().map(Word::to_string))
}

fn ser_rational<S: serde::Serializer>(
    value: &BigRational,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rational(value))
}

/// Outcome of an `ε-(s,t)` check.
///
/// `min_lambda` is `None` when the code admits no pair at all (fewer than two
/// words); such codes pass vacuously.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub s: usize,
    pub t: usize,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub n: usize,
    pub min_lambda: Option<usize>,
    pub separating: bool,
    pub violation: Option<Violation>,
}

/// `|Λ| > εn`, exactly.
pub fn exceeds(lambda: usize, epsilon: &BigRational, n: usize) -> bool {
    BigInt::from(lambda) * epsilon.denom() > epsilon.numer() * BigInt::from(n)
}

fn check_params(s: usize, t: usize, epsilon: &BigRational) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParameter(format!("s and t must be >= 1 (got s={s}, t={t})")));
    }
    if !is_unit_interval(epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in [0, 1), got {}",
            format_rational(epsilon)
        )));
    }
    Ok(())
}

/// Coordinates (0-based) at which the projections of `S` and `T` are disjoint.
pub fn separating_coordinates(space: HammingSpace, s: &[Word], t: &[Word]) -> Result<Vec<usize>> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptySet);
    }
    for w in s.iter().chain(t) {
        space.check_word(w)?;
    }
    if s.iter().any(|w| t.contains(w)) {
        return Err(Error::Overlap);
    }
    Ok(lambda_coordinates(space.n(), s.iter(), t.iter()))
}

fn lambda_coordinates<'a>(
    n: usize,
    s: impl Iterator<Item = &'a Word> + Clone,
    t: impl Iterator<Item = &'a Word> + Clone,
) -> Vec<usize> {
    (0..n)
        .filter(|&i| {
            let left: u64 = s.clone().fold(0, |m, w| m | 1 << w.symbols()[i]);
            let right: u64 = t.clone().fold(0, |m, w| m | 1 << w.symbols()[i]);
            left & right == 0
        })
        .collect()
}

/// All `k`-subsets of `0..m` in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Admissible `(S, T)` index pairs in enumeration order: increasing
/// `|S| + |T|`, then lexicographic in `S`, then `T`. When `m >= s + t` only the
/// pairs with `|S| = s, |T| = t` are produced, since `Λ` shrinks as sides grow.
fn admissible_pairs(m: usize, s: usize, t: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    let sizes: Vec<(usize, usize)> = if m >= s + t {
        vec![(s, t)]
    } else {
        let mut v: Vec<(usize, usize)> = (1..=s.min(m))
            .flat_map(|a| (1..=t.min(m - a)).map(move |b| (a, b)))
            .collect();
        v.sort_by_key(|&(a, b)| (a + b, a));
        v
    };
    sizes.into_iter().flat_map(move |(a, b)| {
        combinations(m, a).into_iter().flat_map(move |left| {
            let rest: Vec<usize> = (0..m).filter(|i| !left.contains(i)).collect();
            combinations(rest.len(), b).into_iter().map(move |pick| {
                let right: Vec<usize> = pick.iter().map(|&k| rest[k]).collect();
                (left.clone(), right)
            })
        })
    })
}

struct Minimum {
    lambda: Option<usize>,
    pair: Option<(Vec<usize>, Vec<usize>)>,
}

fn scan_pairs(code: &Code, s: usize, t: usize) -> Minimum {
    let n = code.space.n();
    let mut best = Minimum { lambda: None, pair: None };
    for (left, right) in admissible_pairs(code.len(), s, t) {
        let lambda = lambda_coordinates(
            n,
            left.iter().map(|&i| &code.words[i]),
            right.iter().map(|&i| &code.words[i]),
        )
        .len();
        if best.lambda.is_none_or(|b| lambda < b) {
            best = Minimum { lambda: Some(lambda), pair: Some((left, right)) };
            // the first zero is both the global minimum and the first minimiser
            if lambda == 0 {
                break;
            }
        }
    }
    best
}

fn build_report(code: &Code, s: usize, t: usize, epsilon: &BigRational, min: Minimum) -> SeparationReport {
    let n = code.space.n();
    let separating = min.lambda.is_none_or(|l| exceeds(l, epsilon, n));
    let violation = match (separating, min.pair) {
        (false, Some((left, right))) => Some(Violation {
            s: left.iter().map(|&i| code.words[i].clone()).collect(),
            t: right.iter().map(|&i| code.words[i].clone()).collect(),
        }),
        _ => None,
    };
    SeparationReport {
        s,
        t,
        epsilon: epsilon.clone(),
        n,
        min_lambda: min.lambda,
        separating,
        violation,
    }
}

/// Minimum of `|Λ(S,T)|` over disjoint nonempty `S, T ⊆ C` with `|S| <= s`,
/// `|T| <= t`, and the `ε` verdict. The reported violation is the first
/// minimising pair in enumeration order.
pub fn min_separating_count(
    code: &Code,
    s: usize,
    t: usize,
    epsilon: &BigRational,
) -> Result<SeparationReport> {
    check_params(s, t, epsilon)?;
    let min = scan_pairs(code, s, t);
    Ok(build_report(code, s, t, epsilon, min))
}

/// Plain `(s,t)`-separation, stopping at the first pair with no separating
/// coordinate.
pub fn is_separating(code: &Code, s: usize, t: usize) -> Result<bool> {
    check_params(s, t, &BigRational::zero())?;
    Ok(scan_pairs(code, s, t).lambda.is_none_or(|l| l > 0))
}

/// Packs a binary code into `ceil(n/64)` limbs per word.
fn pack_limbs(code: &Code) -> (usize, Vec<u64>) {
    let n = code.space.n();
    let limbs = n.div_ceil(64);
    let mut out = vec![0u64; limbs * code.len()];
    for (k, w) in code.words.iter().enumerate() {
        for (i, &s) in w.symbols().iter().enumerate() {
            if s == 1 {
                out[k * limbs + i / 64] |= 1 << (i % 64);
            }
        }
    }
    (limbs, out)
}

/// `(2,1)` check for binary codes over packed words: `z ∈ [x, y]` iff
/// `(x ⊕ z) ∧ (y ⊕ z) = 0`, and the popcount of that mask is `|Λ({x,y},{z})|`.
/// Same report as `min_separating_count(code, 2, 1, ε)`.
pub fn check_21_fast(code: &Code, epsilon: &BigRational) -> Result<SeparationReport> {
    if code.space.q() != 2 {
        return Err(Error::NotBinary(code.space.q()));
    }
    check_params(2, 1, epsilon)?;
    let m = code.len();
    if m < 3 {
        return min_separating_count(code, 2, 1, epsilon);
    }
    let (limbs, packed) = pack_limbs(code);
    let word = |k: usize| &packed[k * limbs..(k + 1) * limbs];
    let mut best: Option<(usize, [usize; 3])> = None;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let (x, y) = (word(i), word(j));
            for k in (0..m).filter(|&k| k != i && k != j) {
                let z = word(k);
                let lambda: u32 = (0..limbs).map(|l| ((x[l] ^ z[l]) & (y[l] ^ z[l])).count_ones()).sum();
                let lambda = lambda as usize;
                if best.is_none_or(|(b, _)| lambda < b) {
                    best = Some((lambda, [i, j, k]));
                    if lambda == 0 {
                        break 'outer;
                    }
                }
            }
        }
    }
    let min = Minimum {
        lambda: best.map(|b| b.0),
        pair: best.map(|(_, [i, j, k])| (vec![i, j], vec![k])),
    };
    Ok(build_report(code, 2, 1, epsilon, min))
}

/// Result of a set-system check: the first triple `(A, B, C)` (indices into
/// the family) with `A ∩ B ⊆ C ⊆ A ∪ B`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystemReport {
    pub ok: bool,
    pub violation: Option<(usize, usize, usize)>,
}

/// Checks that no three distinct members satisfy `A ∩ B ⊆ C ⊆ A ∪ B`. With
/// `strict`, both inclusions must be proper for a triple to count.
pub fn set_system_check<T: Ord + Clone + ToString>(
    family: &[BTreeSet<T>],
    strict: bool,
) -> Result<SetSystemReport> {
    let mut seen = BTreeSet::new();
    for set in family {
        if !seen.insert(set) {
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            return Err(Error::Duplicate(format!("{{{}}}", items.join(","))));
        }
    }
    let m = family.len();
    for a in 0..m {
        for b in a + 1..m {
            let meet: BTreeSet<T> = family[a].intersection(&family[b]).cloned().collect();
            let join: BTreeSet<T> = family[a].union(&family[b]).cloned().collect();
            for c in (0..m).filter(|&c| c != a && c != b) {
                let set = &family[c];
                let hit = meet.is_subset(set)
                    && set.is_subset(&join)
                    && (!strict || (meet.len() < set.len() && set.len() < join.len()));
                if hit {
                    return Ok(SetSystemReport { ok: false, violation: Some((a, b, c)) });
                }
            }
        }
    }
    Ok(SetSystemReport { ok: true, violation: None })
}

/// Characteristic vectors of a family over its sorted ground set.
pub fn characteristic_code<T: Ord + Clone + ToString>(
    family: &[BTreeSet<T>],
) -> Result<(Vec<T>, Code)> {
    let ground: BTreeSet<T> = family.iter().flatten().cloned().collect();
    let ground: Vec<T> = ground.into_iter().collect();
    if ground.is_empty() {
        return Err(Error::InvalidParameter("ground set is empty".into()));
    }
    let position: BTreeMap<&T, usize> = ground.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let space = HammingSpace::binary(ground.len())?;
    let words = family
        .iter()
        .map(|set| {
            let mut symbols = vec![0u8; ground.len()];
            for e in set {
                symbols[position[e]] = 1;
            }
            Word::new(symbols)
        })
        .collect();
    let code = Code::new(space, words)?;
    Ok((ground, code))
}

/// Parses a set-system file: one set per line, whitespace-separated tokens,
/// `#` comments. A line holding only `{}` or `-` is the empty set; blank lines
/// are skipped.
pub fn parse_set_system(text: &str) -> Result<Vec<BTreeSet<String>>> {
    let mut family = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "{}" || line == "-" {
            family.push(BTreeSet::new());
            continue;
        }
        family.push(line.split_whitespace().map(str::to_string).collect());
    }
    Ok(family)
}
