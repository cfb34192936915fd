//! Exact finite-field workbench for Steinberg idempotents of `GL_n(F_p)`,
//! subgroup posets of `p`-groups, and the Poincaré-series bookkeeping of the
//! mod `p` symmetric power filtration.
//!
//! Everything here is finite and exact: matrices over `F_p`, Cayley-table
//! groups, simplicial complexes, and truncated integer power series.

pub mod complexes;
pub mod error;
pub mod fpla;
pub mod glalg;
pub mod graded;
pub mod groups;
pub mod gsets;
pub mod strata;

pub use error::{Error, Result};

/// Exact `n choose k` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `|GL_n(F_p)| = prod_{i<n} (p^n - p^i)`.
pub fn gl_order(n: u32, p: u64) -> u128 {
    let pn = (p as u128).pow(n);
    (0..n).map(|i| pn - (p as u128).pow(i)).product()
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
