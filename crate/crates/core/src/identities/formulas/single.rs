use super::{div, poch_quotient, sym, vwp_sum};
use crate::error::Result;
use crate::hyper::{phi_sum, PhiSpec};
use crate::qcore::{qpoch_multi, ParamPoint, QRational};

// ---------------------------------------------------------------------------
// Derived symbols

/// `e := a^2 q^{n+1} / (b c d)`.
pub fn derive_jackson_e(p: &mut ParamPoint) -> Result<()> {
    let (a, b, c, d) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?);
    let q = p.q()?.clone();
    let n = p.idx("n")?;
    let e = div(&(&a * &a * q.pow(n + 1)?), &(b * c * d))?;
    p.set("e", e);
    Ok(())
}

/// `lambda := a^2 q / (b c d)`.
pub fn derive_lambda(p: &mut ParamPoint) -> Result<()> {
    let (a, b, c, d) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?);
    let q = p.q()?.clone();
    p.set("lambda", div(&(&a * &a * q), &(b * c * d))?);
    Ok(())
}

/// Terminates the quadratic transformation: `d := q^{-n}`, or `c := q^{-n}`
/// when the `variant` index is 1.
pub fn derive_singh_termination(p: &mut ParamPoint) -> Result<()> {
    let q = p.q()?.clone();
    let n = p.idx("n")?;
    let which = if p.idx("variant").unwrap_or(0) == 1 { "c" } else { "d" };
    p.set(which, q.pow(-n)?);
    Ok(())
}

// ---------------------------------------------------------------------------
// Jackson 8phi7 / 6phi5

pub fn jackson_8phi7_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d, e) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    vwp_sum(&a, &[b, c, d, e, q.pow(-n)?], q, q, n)
}

pub fn jackson_8phi7_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    jackson_closed_form(&a, &b, &c, &d, q, n)
}

/// `(aq, aq/bc, aq/bd, aq/cd; q)_n / (aq/b, aq/c, aq/d, aq/bcd; q)_n`.
pub fn jackson_closed_form(a: &QRational, b: &QRational, c: &QRational, d: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    let aq = a * q;
    let upper = [aq.clone(), div(&aq, &(b * c))?, div(&aq, &(b * d))?, div(&aq, &(c * d))?];
    let lower = [div(&aq, b)?, div(&aq, c)?, div(&aq, d)?, div(&aq, &(b * c * d))?];
    poch_quotient(&upper, &lower, q, n)
}

pub fn jackson_6phi5_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let z = div(&(&a * q.pow(n + 1)?), &(&b * &c))?;
    vwp_sum(&a, &[b, c, q.pow(-n)?], q, &z, n)
}

pub fn jackson_6phi5_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let aq = &a * q;
    poch_quotient(&[aq.clone(), div(&aq, &(&b * &c))?], &[div(&aq, &b)?, div(&aq, &c)?], q, n)
}

// ---------------------------------------------------------------------------
// Watson's transformation and the very-well-poised 8phi7 transformation

/// The terminating very-well-poised 8phi7 with argument `a^2 q^{n+2} / (bcde)`.
pub fn watson_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d, e) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let z = div(&(&a * &a * q.pow(n + 2)?), &(&b * &c * &d * &e))?;
    vwp_sum(&a, &[b, c, d, e, q.pow(-n)?], q, &z, n)
}

/// `(aq/bc, d, e, q^{-n}; q)_k q^k / (q, aq/b, aq/c, d e q^{-n}/a; q)_k` summed.
pub fn watson_4phi3(a: &QRational, b: &QRational, c: &QRational, d: &QRational, e: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    let aq = a * q;
    let qn = q.pow(-n)?;
    let spec = PhiSpec {
        numerator_params: vec![div(&aq, &(b * c))?, d.clone(), e.clone(), qn.clone()],
        denominator_params: vec![div(&aq, b)?, div(&aq, c)?, div(&(d * e * qn), a)?],
        q: q.clone(),
        z: q.clone(),
        term_count: (n + 1) as usize,
    };
    phi_sum(&spec)
}

/// `(aq, aq/de; q)_n / (aq/d, aq/e; q)_n`.
pub fn watson_prefactor(a: &QRational, d: &QRational, e: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    let aq = a * q;
    poch_quotient(&[aq.clone(), div(&aq, &(d * e))?], &[div(&aq, d)?, div(&aq, e)?], q, n)
}

pub fn watson_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d, e) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    Ok(watson_prefactor(&a, &d, &e, q, n)? * watson_4phi3(&a, &b, &c, &d, &e, q, n)?)
}

pub fn vwp_transform_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d, e) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?);
    let lambda = sym(p, "lambda")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    let aq = &a * q;
    let lq = &lambda * q;
    let pre = poch_quotient(&[aq.clone(), div(&lq, &e)?], &[div(&aq, &e)?, lq.clone()], q, n)?;
    let la = div(&lambda, &a)?;
    let z = div(&(&a * q.pow(n + 1)?), &e)?;
    let params = [&la * &b, &la * &c, &la * &d, e, q.pow(-n)?];
    Ok(pre * vwp_sum(&lambda, &params, q, &z, n)?)
}

// ---------------------------------------------------------------------------
// Bailey's 10phi9 transformation

/// The ten numerator parameters after the leading one: `b, c, d, e, f,
/// lambda a q^{n+1}/(ef), q^{-n}`.
pub fn bailey_left_params(p: &ParamPoint, n: i64) -> Result<(QRational, Vec<QRational>)> {
    let (a, b, c, d, e, f) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?, sym(p, "f")?);
    let lambda = sym(p, "lambda")?;
    let q = p.q()?;
    let top = div(&(&lambda * &a * q.pow(n + 1)?), &(&e * &f))?;
    Ok((a, vec![b, c, d, e, f, top, q.pow(-n)?]))
}

pub fn bailey_right_params(p: &ParamPoint, n: i64) -> Result<(QRational, Vec<QRational>)> {
    let (a, b, c, d, e, f) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?, sym(p, "e")?, sym(p, "f")?);
    let lambda = sym(p, "lambda")?;
    let q = p.q()?;
    let la = div(&lambda, &a)?;
    let top = div(&(&lambda * &a * q.pow(n + 1)?), &(&e * &f))?;
    Ok((lambda.clone(), vec![&la * &b, &la * &c, &la * &d, e, f, top, q.pow(-n)?]))
}

/// `(aq, aq/ef, lambda q/e, lambda q/f; q)_n / (aq/e, aq/f, lambda q/ef, lambda q; q)_n`.
pub fn bailey_prefactor(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (a, e, f) = (sym(p, "a")?, sym(p, "e")?, sym(p, "f")?);
    let lambda = sym(p, "lambda")?;
    let q = p.q()?;
    let aq = &a * q;
    let lq = &lambda * q;
    let ef = &e * &f;
    poch_quotient(
        &[aq.clone(), div(&aq, &ef)?, div(&lq, &e)?, div(&lq, &f)?],
        &[div(&aq, &e)?, div(&aq, &f)?, div(&lq, &ef)?, lq.clone()],
        q,
        n,
    )
}

pub fn bailey_lhs(p: &ParamPoint) -> Result<QRational> {
    let q = p.q()?;
    let n = p.idx("n")?;
    let (a, params) = bailey_left_params(p, n)?;
    vwp_sum(&a, &params, q, q, n)
}

pub fn bailey_rhs(p: &ParamPoint) -> Result<QRational> {
    let q = p.q()?;
    let n = p.idx("n")?;
    let (lambda, params) = bailey_right_params(p, n)?;
    Ok(bailey_prefactor(p, n)? * vwp_sum(&lambda, &params, q, q, n)?)
}

// ---------------------------------------------------------------------------
// Quadratic transformation. `a2`, `b2` stand for a^2 and b^2.

/// Left 4phi3 term: `(A, B, c, d; q)_k q^k / ((q;q)_k (ABq; q^2)_k (-cd; q)_k)`.
pub fn singh_left_term(a2: &QRational, b2: &QRational, c: &QRational, d: &QRational, q: &QRational, k: i64) -> Result<QRational> {
    if k < 0 {
        return Ok(QRational::zero());
    }
    let num = qpoch_multi(&[a2.clone(), b2.clone(), c.clone(), d.clone()], q, k)? * q.pow(k)?;
    if num.is_zero() {
        return Ok(num);
    }
    let q2 = q * q;
    let den = qpoch_multi(&[q.clone(), -(c * d)], q, k)? * qpoch_multi(&[a2 * b2 * q], &q2, k)?;
    div(&num, &den)
}

/// Right 4phi3 term in base `q^2`:
/// `(A, B, c^2, d^2; q^2)_k q^{2k} / ((q^2, ABq; q^2)_k (-cd; q)_{2k})`.
pub fn singh_right_term(a2: &QRational, b2: &QRational, c: &QRational, d: &QRational, q: &QRational, k: i64) -> Result<QRational> {
    if k < 0 {
        return Ok(QRational::zero());
    }
    let q2 = q * q;
    let num = qpoch_multi(&[a2.clone(), b2.clone(), c * c, d * d], &q2, k)? * q2.pow(k)?;
    if num.is_zero() {
        return Ok(num);
    }
    let den = qpoch_multi(&[q2.clone(), a2 * b2 * q], &q2, k)? * qpoch_multi(&[-(c * d)], q, 2 * k)?;
    div(&num, &den)
}

fn singh_symbols(p: &ParamPoint) -> Result<(QRational, QRational, QRational, QRational, QRational, i64)> {
    Ok((sym(p, "a2")?, sym(p, "b2")?, sym(p, "c")?, sym(p, "d")?, p.q()?.clone(), p.idx("n")?))
}

pub fn singh_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a2, b2, c, d, q, n) = singh_symbols(p)?;
    (0..=n).map(|k| singh_left_term(&a2, &b2, &c, &d, &q, k)).sum()
}

pub fn singh_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a2, b2, c, d, q, n) = singh_symbols(p)?;
    (0..=n).map(|k| singh_right_term(&a2, &b2, &c, &d, &q, k)).sum()
}

// ---------------------------------------------------------------------------
// Andrews-Jain (b = 0 gives the second finite Lebesgue form)

pub fn andrews_jain_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b) = (sym(p, "a")?, sym(p, "b")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let q2 = q * q;
    let q2n = q2.pow(-n)?;
    let abq = &a * &b * q;
    let mut total = QRational::zero();
    for k in 0..=n {
        let num = qpoch_multi(&[a.clone(), b.clone()], q, k)? * qpoch_multi(std::slice::from_ref(&q2n), &q2, k)? * q.pow(k)?;
        let den = qpoch_multi(&[q.clone(), q2n.clone()], q, k)? * qpoch_multi(std::slice::from_ref(&abq), &q2, k)?;
        total += div(&num, &den)?;
    }
    Ok(total)
}

pub fn andrews_jain_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b) = (sym(p, "a")?, sym(p, "b")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let q2 = q * q;
    poch_quotient(&[&a * q, &b * q], &[q.clone(), &a * &b * q], &q2, n)
}

/// Terminating very-well-poised 8phi7 with parameters `b, c, d, e, q^{-n}`.
#[allow(clippy::too_many_arguments)]
pub fn vwp_8phi7(
    a: &QRational,
    b: &QRational,
    c: &QRational,
    d: &QRational,
    e: &QRational,
    q: &QRational,
    z: &QRational,
    n: i64,
) -> Result<QRational> {
    vwp_sum(a, &[b.clone(), c.clone(), d.clone(), e.clone(), q.pow(-n)?], q, z, n)
}
