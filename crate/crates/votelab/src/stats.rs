//! Small statistics helpers for reporting simulation results.

use crate::error::{Error, Result};
use statrs::distribution::{Binomial, DiscreteCDF};

/// Standard error of an estimated proportion, in percentage points:
/// 100 * sqrt(p * (1 - p)) / sqrt(n).
///
/// The operations are grouped so that the worst case at a million trials
/// (p = 0.5) is exactly 0.05.
pub fn standard_error(p: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    debug_assert!((0.0..=1.0).contains(&p));
    Ok(100.0 * (p * (1.0 - p)).sqrt() / (n as f64).sqrt())
}

/// Exact two-tailed binomial test of `k` successes in `n` fair coin
/// flips: min(1, 2 * min(P(X <= k), P(X >= k))) under X ~ Binomial(n, 1/2).
pub fn binomial_two_tailed(k: u64, n: u64) -> f64 {
    assert!(k <= n, "successes cannot exceed trials");
    assert!(n > 0, "empty sample");
    let dist = Binomial::new(0.5, n).expect("valid binomial");
    let lower = dist.cdf(k);
    let upper = if k == 0 { 1.0 } else { dist.sf(k - 1) };
    (2.0 * lower.min(upper)).min(1.0)
}
