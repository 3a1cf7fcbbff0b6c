//! `ξ(n) = max{t^(n−t) : 1 ≤ t ≤ n}` and `α(n)`, the largest `t` attaining it.

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiAlpha {
    pub n: usize,
    pub xi: BigUint,
    pub alpha: usize,
}

pub fn xi_alpha(n: usize) -> Result<XiAlpha> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut best = BigUint::from(0u32);
    let mut alpha = 0;
    for t in 1..=n {
        let value = BigUint::from(t).pow((n - t) as u32);
        if value >= best {
            best = value;
            alpha = t;
        }
    }
    Ok(XiAlpha { n, xi: best, alpha })
}

/// Rows `1..=n_max`.
pub fn xi_table(n_max: usize) -> Result<Vec<XiAlpha>> {
    if n_max == 0 {
        return Err(Error::ZeroDegree);
    }
    (1..=n_max).map(xi_alpha).collect()
}

pub fn alpha(n: usize) -> Result<usize> {
    xi_alpha(n).map(|r| r.alpha)
}

/// `ξ(n)` as a machine integer, for sizes that must be materialised anyway.
pub fn xi_u64(n: usize) -> Result<u64> {
    let xi = xi_alpha(n)?.xi;
    u64::try_from(&xi).map_err(|_| Error::invalid(format!("xi({n}) does not fit in 64 bits")))
}
