//! Exact left/right evaluators for every registered identity.
//!
//! Each side is a plain function of a fully derived [`ParamPoint`]. Shared
//! building blocks (the very-well-poised term, Pochhammer quotients) live here
//! so the certificate replays can reuse exactly the same term definitions.

mod finite_forms;
mod multisum;
mod single;

pub use finite_forms::*;
pub use multisum::*;
pub use single::*;

use crate::error::Result;
use crate::qcore::{qpoch_multi, ratio, ParamPoint, QRational};

pub(crate) fn sym(p: &ParamPoint, name: &str) -> Result<QRational> {
    p.sym(name).cloned()
}

pub(crate) fn div(num: &QRational, den: &QRational) -> Result<QRational> {
    ratio(num, den, "quotient")
}

/// `(upper; q)_n / (lower; q)_n`.
pub fn poch_quotient(upper: &[QRational], lower: &[QRational], q: &QRational, n: i64) -> Result<QRational> {
    let num = qpoch_multi(upper, q, n)?;
    if num.is_zero() {
        return Ok(num);
    }
    let den = qpoch_multi(lower, q, n)?;
    ratio(&num, &den, &format!("Pochhammer quotient at index {n}"))
}

/// Very-well-poised term with the `q a^{1/2}, -q a^{1/2}` pair folded into
/// `(1 - a q^{2k}) / (1 - a)`:
///
/// `(1 - a q^{2k})/(1 - a) * (a, p_1, .., p_s; q)_k / (q, aq/p_1, .., aq/p_s; q)_k * z^k`,
/// and 0 for `k < 0`.
pub fn vwp_term(a: &QRational, params: &[QRational], q: &QRational, z: &QRational, k: i64) -> Result<QRational> {
    if k < 0 {
        return Ok(QRational::zero());
    }
    let aq = a * q;
    let mut upper = Vec::with_capacity(params.len() + 1);
    let mut lower = Vec::with_capacity(params.len() + 1);
    upper.push(a.clone());
    lower.push(q.clone());
    for p in params {
        upper.push(p.clone());
        lower.push(div(&aq, p)?);
    }
    let head = div(&(a * q.pow(2 * k)?).one_minus(), &a.one_minus())?;
    Ok(head * poch_quotient(&upper, &lower, q, k)? * z.pow(k)?)
}

/// `sum_{k=0}^{n}` of [`vwp_term`].
pub fn vwp_sum(a: &QRational, params: &[QRational], q: &QRational, z: &QRational, n: i64) -> Result<QRational> {
    let mut total = QRational::zero();
    for k in 0..=n {
        total += vwp_term(a, params, q, z, k)?;
    }
    Ok(total)
}

/// `q^{k(k-1)/2}`-style exponent helper: `k (k + shift) / 2` for integer results.
pub(crate) fn half_exponent(k: i64, shift: i64) -> i64 {
    let v = k * (k + shift);
    debug_assert!(v % 2 == 0);
    v / 2
}
