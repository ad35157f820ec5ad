//! Finite forms of Lebesgue's identity, the triple product and the quintuple
//! product, all built on q-binomial sums.

use super::{div, half_exponent, sym};
use crate::error::Result;
use crate::qcore::{qbinom, qpoch, ParamPoint, QRational};

/// `[n,k] q^{k(k+1)/2} / (a q^k; q)_{n+1}`.
pub fn lebesgue_term(a: &QRational, q: &QRational, n: i64, k: i64) -> Result<QRational> {
    if k < 0 || k > n {
        return Ok(QRational::zero());
    }
    let num = qbinom(n, k, q)? * q.pow(half_exponent(k, 1))?;
    div(&num, &qpoch(&(a * q.pow(k)?), q, n + 1)?)
}

/// `(-q;q)_n / (a;q^2)_{n+1}`.
pub fn lebesgue_closed_form(a: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    div(&qpoch(&-q, q, n)?, &qpoch(a, &(q * q), n + 1)?)
}

pub fn lebesgue_finite_lhs(p: &ParamPoint) -> Result<QRational> {
    let a = sym(p, "a")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    (0..=n).map(|k| lebesgue_term(&a, q, n, k)).sum()
}

pub fn lebesgue_finite_rhs(p: &ParamPoint) -> Result<QRational> {
    lebesgue_closed_form(&sym(p, "a")?, p.q()?, p.idx("n")?)
}

/// `(-q^2/z; q^2)_m (-z; q^2)_{n+1} / ((-q/z; q)_{m-k} (-z; q)_{n+k+1}) q^{k^2} z^k`.
fn jacobi_shifted_factor(z: &QRational, q: &QRational, m: i64, n: i64, k: i64) -> Result<QRational> {
    let q2 = q * q;
    let num = qpoch(&-div(&q2, z)?, &q2, m)? * qpoch(&-z, &q2, n + 1)? * q.pow(k * k)? * z.pow(k)?;
    let den = qpoch(&-div(q, z)?, q, m - k)? * qpoch(&-z, q, n + k + 1)?;
    div(&num, &den)
}

pub fn jacobi_finite_lhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let (m, n) = (p.idx("m")?, p.idx("n")?);
    let mut total = QRational::zero();
    for k in -m..=n {
        total += qbinom(m + n, m + k, q)? * jacobi_shifted_factor(&z, q, m, n, k)?;
    }
    Ok(total)
}

pub fn jacobi_finite_rhs(p: &ParamPoint) -> Result<QRational> {
    let q = p.q()?;
    let (m, n) = (p.idx("m")?, p.idx("n")?);
    qpoch(&-q, q, m + n)
}

/// `(-z q^{-2m}; q^2)_{m+n+1} / (-z q^{k-m}; q)_{m+n+1} q^{C(m+k+1, 2)}`.
pub fn jacobi_prefactor_lhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let (m, n, k) = (p.idx("m")?, p.idx("n")?, p.idx("k")?);
    let q2 = q * q;
    let num = qpoch(&-(&z * q.pow(-2 * m)?), &q2, m + n + 1)?;
    let den = qpoch(&-(&z * q.pow(k - m)?), q, m + n + 1)?;
    let t = m + k + 1;
    Ok(div(&num, &den)? * q.pow(t * (t - 1) / 2)?)
}

pub fn jacobi_prefactor_rhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let (m, n, k) = (p.idx("m")?, p.idx("n")?, p.idx("k")?);
    jacobi_shifted_factor(&z, q, m, n, k)
}

/// `(1 - z^2 q^{2k+1}) [n,k] (zq;q)_n / (z^2 q^{k+1}; q)_{n+1} z^k q^{k^2}`.
pub fn quintuple_term(z: &QRational, q: &QRational, n: i64, k: i64) -> Result<QRational> {
    if k < 0 || k > n {
        return Ok(QRational::zero());
    }
    let z2 = z * z;
    let head = (&z2 * q.pow(2 * k + 1)?).one_minus() * qbinom(n, k, q)?;
    let num = head * qpoch(&(z * q), q, n)? * z.pow(k)? * q.pow(k * k)?;
    div(&num, &qpoch(&(&z2 * q.pow(k + 1)?), q, n + 1)?)
}

pub fn quintuple_finite_lhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    (0..=n).map(|k| quintuple_term(&z, q, n, k)).sum()
}

pub fn one(_: &ParamPoint) -> Result<QRational> {
    Ok(QRational::one())
}

pub fn quintuple_mn_lhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let (m, n) = (p.idx("m")?, p.idx("n")?);
    let z2 = &z * &z;
    let zinv2 = div(&QRational::one(), &z2)?;
    let common = qpoch(&-div(q, &z)?, q, m - 1)? * qpoch(&-z.clone(), q, n + 1)?;
    let mut total = QRational::zero();
    for k in -m..=n {
        let head = (&z2 * q.pow(2 * k + 1)?).one_minus() * qbinom(m + n, m + k, q)?;
        let num = head * &common * z.pow(3 * k - 1)? * q.pow(k * (3 * k + 1) / 2)?;
        let den = qpoch(&zinv2, q, m - k)? * qpoch(&(&z2 * q), q, n + k + 1)?;
        total += div(&num, &den)?;
    }
    Ok(total)
}

/// `(1 + z q^k) [n,k] (z;q)_{n+1} / (z^2 q^k; q)_{n+1} z^k q^{k^2}`.
pub fn quintuple_ccg_lhs(p: &ParamPoint) -> Result<QRational> {
    let z = sym(p, "z")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    let z2 = &z * &z;
    let lead = qpoch(&z, q, n + 1)?;
    let mut total = QRational::zero();
    for k in 0..=n {
        let qk = q.pow(k)?;
        let num = (QRational::one() + &z * &qk) * qbinom(n, k, q)? * &lead * z.pow(k)? * q.pow(k * k)?;
        total += div(&num, &qpoch(&(&z2 * &qk), q, n + 1)?)?;
    }
    Ok(total)
}
