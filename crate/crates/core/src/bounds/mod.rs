//! Exact binomial arithmetic, closed-form invariants of Kneser graphs and their
//! complements, exact small-instance invariants, and the semi-transitivity classifier.

use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

mod classify;
pub mod coloring;

pub use classify::{classify, Classification, Provenance, Status};
pub use coloring::{dsatur, exact_chromatic, max_clique, maximum_independent_set, Coloring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsError {
    /// `k > n`, or `k == 0` where the formula needs `k >= 1`.
    InvalidParams { n: u64, k: u64 },
    /// The formula is only stated for `n >= 2k - 1`.
    OutsideDomain { n: u64, k: u64 },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidParams { n, k } => write!(f, "invalid parameters n={n}, k={k}"),
            BoundsError::OutsideDomain { n, k } => write!(f, "n={n}, k={k} is outside the formula's domain n >= 2k-1"),
        }
    }
}

impl core::error::Error for BoundsError {}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> Result<BigUint, BoundsError> {
    if k > n {
        return Err(BoundsError::InvalidParams { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

fn valid(n: u64, k: u64) -> Result<(), BoundsError> {
    if k == 0 || k > n {
        return Err(BoundsError::InvalidParams { n, k });
    }
    Ok(())
}

/// Chromatic number of `K(n,k)`: `n - 2k + 2`, for `n >= 2k - 1`.
pub fn kneser_chromatic(n: u64, k: u64) -> Result<u64, BoundsError> {
    valid(n, k)?;
    if n + 1 < 2 * k {
        return Err(BoundsError::OutsideDomain { n, k });
    }
    Ok(n + 2 - 2 * k)
}

/// Chromatic number of the complement of `K(n,k)`: `ceil(C(n,k) / floor(n/k))`.
pub fn complement_chromatic(n: u64, k: u64) -> Result<BigUint, BoundsError> {
    valid(n, k)?;
    let total = binomial(n, k)?;
    let per_class = BigUint::from(n / k);
    Ok((total + &per_class - 1u32) / per_class)
}

/// Independence number of `K(n,k)` (clique number of its complement): `C(n-1, k-1)`.
/// The value is the true independence number for `n >= 2k`.
pub fn ekr_independence(n: u64, k: u64) -> Result<BigUint, BoundsError> {
    valid(n, k)?;
    binomial(n - 1, k - 1)
}

/// Does `K(n,k)` contain a clique on `c` vertices? True iff `n >= c*k`.
pub fn has_clique_threshold(n: u64, k: u64, c: u64) -> bool {
    n >= c.saturating_mul(k)
}

/// Both sides of `C(2k, k-1) + k < C(2k+1, k)/2 - 2`, each doubled to stay integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialInequality {
    pub k: u64,
    pub holds: bool,
    pub lhs_twice: BigInt,
    pub rhs_twice: BigInt,
}

impl BinomialInequality {
    /// Left side as a float, for display only.
    pub fn lhs(&self) -> f64 {
        self.lhs_twice.to_f64().unwrap_or(f64::INFINITY) / 2.0
    }

    pub fn rhs(&self) -> f64 {
        self.rhs_twice.to_f64().unwrap_or(f64::INFINITY) / 2.0
    }
}

impl fmt::Display for BinomialInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: &BigInt| {
            let two = BigInt::from(2);
            let (q, r) = (v / &two, v % &two);
            if r == BigInt::from(0) {
                alloc::format!("{q}")
            } else {
                alloc::format!("{v}/2")
            }
        };
        let op = if self.holds { "<" } else { ">=" };
        write!(f, "k={} {} {} {}", self.k, half(&self.lhs_twice), op, half(&self.rhs_twice))
    }
}

/// Evaluates `C(2k, k-1) + k < C(2k+1, k)/2 - 2` exactly, for `k >= 1`.
pub fn binomial_inequality(k: u64) -> BinomialInequality {
    assert!(k >= 1, "inequality is stated for k >= 1");
    let lhs_twice = BigInt::from(2u32) * (BigInt::from(binomial(2 * k, k - 1).unwrap()) + BigInt::from(k));
    let rhs_twice = BigInt::from(binomial(2 * k + 1, k).unwrap()) - BigInt::from(4u32);
    BinomialInequality { k, holds: lhs_twice < rhs_twice, lhs_twice, rhs_twice }
}
