//! Closed-form lower bounds on `κ(n)`, the largest binary `(2,1)`-separating
//! code of length `n`.
//!
//! Integer columns are exact. With `ρ = (2/√3)^n`:
//!
//! * `⌊ρ/2⌋` is the largest `k` with `4k²·3ⁿ ≤ 4ⁿ`,
//! * `2⌊(√6/9)ρ⌋` doubles the largest `k` with `k²·3^(n+3) ≤ 2^(2n+1)`.
//!
//! The `11^(3n/50)` column is a reference envelope only: the underlying bound
//! carries an unevaluated `o(1)` in the exponent and is not attained here.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

/// `1 - ½·log₂3`, the exponent of the probabilistic bound.
pub fn rate_probabilistic() -> f64 {
    1.0 - 0.5 * 3f64.log2()
}

/// `(3/50)·log₂11`, the exponent of the algebraic-geometry bound.
pub fn rate_algebraic() -> f64 {
    3.0 / 50.0 * 11f64.log2()
}

/// `⌊½(2/√3)^n⌋`.
pub fn probabilistic_bound(n: u32) -> BigUint {
    let num = BigUint::from(4u32).pow(n);
    let den = BigUint::from(4u32) * BigUint::from(3u32).pow(n);
    (num / den).sqrt()
}

/// `2⌊(√6/9)(2/√3)^n⌋`.
pub fn bevan_bound(n: u32) -> BigUint {
    let num = BigUint::from(2u32).pow(2 * n + 1);
    let den = BigUint::from(3u32).pow(n + 3);
    BigUint::from(2u32) * (num / den).sqrt()
}

/// `11^(3n/50)` in floating point.
pub fn algebraic_envelope(n: u32) -> f64 {
    11f64.powf(3.0 * n as f64 / 50.0)
}

// JSON numbers while the value fits in u64, decimal strings beyond
fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: u32,
    #[serde(serialize_with = "ser_big")]
    pub eq1: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub bevan: BigUint,
    pub envelope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub rate_probabilistic: f64,
    pub rate_algebraic: f64,
    pub rows: Vec<BoundRow>,
}

pub fn eval_bounds(n_max: u32) -> BoundTable {
    BoundTable {
        rate_probabilistic: rate_probabilistic(),
        rate_algebraic: rate_algebraic(),
        rows: (1..=n_max)
            .map(|n| BoundRow {
                n,
                eq1: probabilistic_bound(n),
                bevan: bevan_bound(n),
                envelope: algebraic_envelope(n),
            })
            .collect(),
    }
}
