//! The inductive step for the C_r Jackson sum.
//!
//! The level-`n+1` summand is a combination of level-`n` summands at
//! `x -> x q^s`, `s in {0,1}^r`:
//!
//! `summand_{n+1}(x; k) = sum_s beta_s(x) summand_n(x q^s; k - s)`,
//!
//! so `P_{n+1}(x) = sum_s beta_s(x) P_n(x q^s)` for the full sums. The replay
//! propagates this from `P_0 = 1` and compares against both sides of the
//! identity; the closing step is the `n = 1` lemma at `a -> a q^n`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::identities::formulas::{check_multisum_cost, for_each_index_vector, SchlosserParams};
use crate::qcore::{qpoch_multi, ratio, ParamPoint, QRational};

pub const PROOF_ID: &str = "schlosser";
/// Largest `r` and `n` the replay runs at.
pub const MAX_R: i64 = 3;
pub const MAX_N: i64 = 3;

fn div(num: QRational, den: QRational) -> Result<QRational> {
    ratio(&num, &den, "C_r certificate")
}

fn pow_flag(x: QRational, e: i64) -> QRational {
    if e == 0 {
        QRational::one()
    } else {
        x
    }
}

pub fn params(p: &ParamPoint) -> Result<SchlosserParams> {
    let r = p.idx("r")?;
    if !(0..=MAX_R).contains(&r) {
        return Err(Error::CostGuard(format!("C_r certificate runs at r <= {MAX_R}, got {r}")));
    }
    SchlosserParams::from_point(p, r as usize)
}

/// `prod_{i<j} (x_i q^{s_i} - x_j q^{s_j})(1 - a x_i x_j q^{s_i+s_j}) / ((x_i - x_j)(1 - a x_i x_j))`.
fn pair_ratio(sp: &SchlosserParams, s: &[i64]) -> Result<QRational> {
    sp.pair_factor(s, 0)
}

/// `alpha_s` of the partial-fraction expansion.
pub fn alpha(sp: &SchlosserParams, n: i64, s: &[i64]) -> Result<QRational> {
    let (a, q) = (&sp.a, &sp.q);
    let r = sp.r() as i64;
    let bcd = &sp.b * &sp.c * &sp.d;
    let qn1 = q.pow(n + 1)?;
    let mut acc = div(QRational::one(), qn1.one_minus().pow(r)?)?;
    for (x, &si) in sp.x.iter().zip(s) {
        let ax2 = a * x * x;
        let keep = 1 - si;
        acc *= div(pow_flag(-qn1.clone(), keep), (&ax2 * &qn1).one_minus())?;
        acc *= pow_flag(div(a * a * x * q.pow(n - r + 2)?, bcd.clone())?.one_minus(), keep);
        acc *= pow_flag(div(&bcd * x * q.pow(r - n - 2)?, a.clone())?.one_minus(), keep);
        acc *= pow_flag(div(a * a * x * q.pow(2 * n - r + 3)?, bcd.clone())?.one_minus(), si);
        acc *= pow_flag(div(&bcd * x * q.pow(r - 1)?, a.clone())?.one_minus(), si);
    }
    Ok(acc)
}

/// `beta_s` built from `alpha_s` (the first displayed form).
pub fn beta_from_alpha(sp: &SchlosserParams, n: i64, s: &[i64]) -> Result<QRational> {
    let (a, q) = (&sp.a, &sp.q);
    let r = sp.r() as i64;
    let bcd = &sp.b * &sp.c * &sp.d;
    let mut acc = alpha(sp, n, s)? * pair_ratio(sp, s)?;
    for (x, &si) in sp.x.iter().zip(s) {
        let ax2 = a * x * x;
        let axq = a * x * q;
        let head = div((&ax2 * q.pow(2 * si)?).one_minus(), ax2.one_minus())?;
        let tail = (&ax2 * q.pow(n + si + 1)?).one_minus().pow(1 - 2 * si)?;
        let num = qpoch_multi(std::slice::from_ref(&ax2), q, 2 * si)?
            * qpoch_multi(&[&sp.b * x, &sp.c * x, &sp.d * x], q, si)?
            * q.pow(si)?
            * tail
            * q.pow(-n - 1)?.one_minus();
        let den = qpoch_multi(&[div(axq.clone(), sp.b.clone())?, div(axq.clone(), sp.c.clone())?, div(axq, sp.d.clone())?], q, si)?
            * qpoch_multi(&[div(&bcd * x * q.pow(r - n - 2)?, a.clone())?], q, si + 1)?
            * qpoch_multi(&[div(a * a * x * q.pow(n - r + 2)?, bcd.clone())?], q, 1 - si)?;
        acc *= head * div(num, den)?;
    }
    Ok(acc)
}

/// `beta_s` in product form (the second displayed form).
pub fn beta(sp: &SchlosserParams, n: i64, s: &[i64]) -> Result<QRational> {
    let (a, q) = (&sp.a, &sp.q);
    let r = sp.r() as i64;
    let bcd = &sp.b * &sp.c * &sp.d;
    let mut acc = pair_ratio(sp, s)?;
    for (x, &si) in sp.x.iter().zip(s) {
        let ax2 = a * x * x;
        let axq = a * x * q;
        let upper = [
            &sp.b * x,
            &sp.c * x,
            &sp.d * x,
            div(&bcd * x * q.pow(r - 1)?, a.clone())?,
            div(a * a * x * q.pow(2 * n - r + 3)?, bcd.clone())?,
        ];
        let num = qpoch_multi(&[&ax2 * q], q, 2 * si)? * qpoch_multi(&upper, q, si)?;
        let den = q.pow(n * si)?
            * qpoch_multi(&[&ax2 * q.pow(n + 1)?, div(&bcd * x * q.pow(r - n - 2)?, a.clone())?], q, 2 * si)?
            * qpoch_multi(&[div(axq.clone(), sp.b.clone())?, div(axq.clone(), sp.c.clone())?, div(axq, sp.d.clone())?], q, si)?;
        let term = div(num, den)?;
        acc *= if si == 1 { -term } else { term };
    }
    Ok(acc)
}

/// Difference of the two displayed forms of `beta_s`.
pub fn schlosser_coeff_residual(p: &ParamPoint, n: i64, s: &[i64]) -> Result<QRational> {
    let sp = params(p)?;
    check_s(&sp, s)?;
    Ok(beta_from_alpha(&sp, n, s)? - beta(&sp, n, s)?)
}

fn check_s(sp: &SchlosserParams, s: &[i64]) -> Result<()> {
    if s.len() != sp.r() || s.iter().any(|&v| !(0..=1).contains(&v)) {
        return Err(Error::Config(format!("s-vector must lie in {{0,1}}^{}", sp.r())));
    }
    Ok(())
}

/// The two-term split for coordinate `i` (0-based) at `k_i`, with both sides
/// multiplied by `(1 - q^{k_i-n-1})(1 - a x_i^2 q^{n+k_i+1})` so that
/// `k_i = n + 1` is admissible.
pub fn schlosser_split_residual(p: &ParamPoint, n: i64, i: usize, k: i64) -> Result<QRational> {
    let sp = params(p)?;
    split_residual_with(&sp, n, i, k, true)
}

/// As [`schlosser_split_residual`]; `with_a = false` evaluates the left
/// factor `1 - bcd x q^{k+r-n-2}` exactly as printed, without the `1/a`.
pub fn split_residual_with(sp: &SchlosserParams, n: i64, i: usize, k: i64, with_a: bool) -> Result<QRational> {
    let (a, q) = (&sp.a, &sp.q);
    let r = sp.r() as i64;
    let x = sp.x.get(i).ok_or_else(|| Error::Config(format!("coordinate {i} outside 0..{r}")))?;
    let bcd = &sp.b * &sp.c * &sp.d;
    let ax2 = a * x * x;
    let qn1 = q.pow(n + 1)?;
    let d1 = q.pow(k - n - 1)?.one_minus();
    let d2 = (&ax2 * q.pow(n + k + 1)?).one_minus();
    let second_factor = &bcd * x * q.pow(k + r - n - 2)?;
    let second_factor = if with_a { div(second_factor, a.clone())? } else { second_factor };
    let lhs = div(a * a * x * q.pow(n + k - r + 2)?, bcd.clone())?.one_minus() * second_factor.one_minus();
    let common = qn1.one_minus() * (&ax2 * &qn1).one_minus();
    let first = div(
        -(&qn1)
            * div(a * a * x * q.pow(n - r + 2)?, bcd.clone())?.one_minus()
            * div(&bcd * x * q.pow(r - n - 2)?, a.clone())?.one_minus()
            * &d1
            * &d2,
        common.clone(),
    )?;
    let second = div(
        div(a * a * x * q.pow(2 * n - r + 3)?, bcd.clone())?.one_minus()
            * div(&bcd * x * q.pow(r - 1)?, a.clone())?.one_minus()
            * (&ax2 * q.pow(k)?).one_minus()
            * q.pow(k)?.one_minus(),
        common,
    )?;
    Ok(lhs - first - second)
}

/// `summand_{n+1}(x; k) - sum_s beta_s summand_n(x q^s; k - s)`.
pub fn schlosser_term_residual(p: &ParamPoint, n: i64, ks: &[i64]) -> Result<QRational> {
    let sp = params(p)?;
    term_residual(&sp, n, ks)
}

/// Every `s` in `{0,1}^r`, lexicographic.
pub fn s_vectors(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(1 << r);
    for_each_index_vector(r, 1, |s| {
        out.push(s.to_vec());
        Ok(())
    })
    .expect("infallible visitor");
    out
}

fn term_residual(sp: &SchlosserParams, n: i64, ks: &[i64]) -> Result<QRational> {
    let mut total = sp.summand(n + 1, ks)?;
    for s in s_vectors(sp.r()) {
        let shifted_k: Vec<i64> = ks.iter().zip(&s).map(|(k, s)| k - s).collect();
        let inner = sp.shift_x(&s)?.summand(n, &shifted_k)?;
        if inner.is_zero() {
            continue;
        }
        total -= beta(sp, n, &s)? * inner;
    }
    Ok(total)
}

/// Every residual for one point at level `n`: term residuals over the
/// `{0..n+1}^r` box, split residuals, coefficient residuals. Returns the name
/// and value of the first nonzero one.
pub fn step_residuals(p: &ParamPoint, n: i64) -> Result<Option<(String, QRational)>> {
    let sp = params(p)?;
    let r = sp.r();
    check_multisum_cost(n + 1, r as i64)?;
    let mut found = None;
    for_each_index_vector(r, n + 1, |ks| {
        if found.is_none() {
            let v = term_residual(&sp, n, ks)?;
            if !v.is_zero() {
                found = Some((format!("term k={ks:?}"), v));
            }
        }
        Ok(())
    })?;
    if found.is_some() {
        return Ok(found);
    }
    for i in 0..r {
        for k in 0..=n + 1 {
            let v = split_residual_with(&sp, n, i, k, true)?;
            if !v.is_zero() {
                return Ok(Some((format!("split i={i} k={k}"), v)));
            }
        }
    }
    for s in s_vectors(r) {
        let v = beta_from_alpha(&sp, n, &s)? - beta(&sp, n, &s)?;
        if !v.is_zero() {
            return Ok(Some((format!("coefficient s={s:?}"), v)));
        }
    }
    Ok(None)
}

/// The closing step: `sum_s beta_s RHS_n(x q^s) = RHS_{n+1}(x)`, together with
/// the `n = 1` lemma at `a -> a q^n`.
pub fn closing_step(p: &ParamPoint, n: i64) -> Result<bool> {
    let sp = params(p)?;
    let mut total = QRational::zero();
    for s in s_vectors(sp.r()) {
        total += beta(&sp, n, &s)? * sp.shift_x(&s)?.rhs(n)?;
    }
    let lemma = sp.with_a(&sp.a * sp.q.pow(n)?);
    Ok(total == sp.rhs(n + 1)? && lemma.lemma_lhs()? == lemma.lemma_rhs()?)
}

/// Propagates `P_{n+1}(x) = sum_s beta_s(x) P_n(x q^s)` from `P_0 = 1` and
/// compares with both sides of the identity at each level up to `n_max`.
pub fn inductive_replay(p: &ParamPoint, n_max: i64) -> Result<bool> {
    let sp = params(p)?;
    if n_max > MAX_N {
        return Err(Error::CostGuard(format!("C_r replay runs at n <= {MAX_N}, got {n_max}")));
    }
    let mut memo = HashMap::new();
    for n in 0..=n_max {
        let v = propagate(&sp, n, vec![0; sp.r()], &mut memo)?;
        if v != sp.rhs(n)? || v != sp.lhs(n)? {
            return Ok(false);
        }
        if n < n_max && !closing_step(p, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn propagate(sp: &SchlosserParams, n: i64, offset: Vec<i64>, memo: &mut HashMap<(i64, Vec<i64>), QRational>) -> Result<QRational> {
    if n == 0 {
        return Ok(QRational::one());
    }
    if let Some(v) = memo.get(&(n, offset.clone())) {
        return Ok(v.clone());
    }
    let here = sp.shift_x(&offset)?;
    let mut total = QRational::zero();
    for s in s_vectors(sp.r()) {
        let next: Vec<i64> = offset.iter().zip(&s).map(|(o, s)| o + s).collect();
        total += beta(&here, n - 1, &s)? * propagate(sp, n - 1, next, memo)?;
    }
    memo.insert((n, offset), total.clone());
    Ok(total)
}
