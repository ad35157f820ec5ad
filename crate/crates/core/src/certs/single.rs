use super::{AuxCheck, ProofCertificate, RecTerm};
use crate::error::Result;
use crate::identities::formulas::{
    bailey_left_params, bailey_prefactor, bailey_right_params, derive_lambda, jackson_closed_form, lebesgue_closed_form, lebesgue_term,
    quintuple_term, singh_left_term, singh_right_term, vwp_term, watson_prefactor,
};
use crate::qcore::{qbinom, qpoch_multi, qpoch_recip, ratio, ParamPoint, QRational};

fn s(p: &ParamPoint, name: &str) -> Result<QRational> {
    p.sym(name).cloned()
}

fn div(num: QRational, den: QRational) -> Result<QRational> {
    ratio(&num, &den, "certificate coefficient")
}

fn scale(p: &ParamPoint, factors: &[(&str, i64)]) -> Result<ParamPoint> {
    let q = p.q()?.clone();
    let mut out = p.clone();
    for &(name, e) in factors {
        out.set(name, s(p, name)? * q.pow(e)?);
    }
    Ok(out)
}

fn unit(_: &ParamPoint, _: i64) -> Result<QRational> {
    Ok(QRational::one())
}

/// `F_{n,k} = F_{n-1,k} + c_n F_{n-1,k-1}(shifted)`.
const fn two_term(coeff: super::LevelFn) -> [RecTerm; 2] {
    [
        RecTerm { coeff: unit, negate: false, level: 1, k_offset: 0, shifts: 0 },
        RecTerm { coeff, negate: false, level: 1, k_offset: 1, shifts: 1 },
    ]
}

// ---------------------------------------------------------------------------
// Jackson

pub fn jackson_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a, b, c, d) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?);
    let q = p.q()?;
    let e = div(&a * &a * q.pow(n + 1)?, &b * &c * &d)?;
    vwp_term(&a, &[b, c, d, e, q.pow(-n)?], q, q, k)
}

pub fn jackson_alpha(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (a, b, c, d) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?);
    let q = p.q()?;
    let bcd = &b * &c * &d;
    let aq = &a * q;
    let num = (div(&a * &a * q.pow(n)?, bcd.clone())? - q.pow(-n)?)
        * div(bcd.clone(), a.clone())?.one_minus()
        * aq.one_minus()
        * (&aq * q).one_minus()
        * b.one_minus()
        * c.one_minus()
        * d.one_minus()
        * q;
    let den = div(&bcd * q.pow(-n)?, a.clone())?.one_minus()
        * (&a * q.pow(n)?).one_minus()
        * div(aq.clone(), b)?.one_minus()
        * div(aq.clone(), c)?.one_minus()
        * div(aq.clone(), d)?.one_minus()
        * div(&bcd * q.pow(1 - n)?, a.clone())?.one_minus()
        * (&a * q.pow(n + 1)?).one_minus();
    div(num, den)
}

fn jackson_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("a", 2), ("b", 1), ("c", 1), ("d", 1)])
}

fn jackson_s(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (a, b, c, d) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?);
    jackson_closed_form(&a, &b, &c, &d, p.q()?, n)
}

const JACKSON_REC: [RecTerm; 2] = two_term(jackson_alpha);

// ---------------------------------------------------------------------------
// Watson

pub fn watson_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let z = div(&a * &a * q.pow(n + 2)?, &b * &c * &d * &e)?;
    vwp_term(&a, &[b, c, d, e, q.pow(-n)?], q, &z, k)
}

pub fn watson_beta(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let aq = &a * q;
    let num =
        aq.one_minus() * (&aq * q).one_minus() * b.one_minus() * c.one_minus() * d.one_minus() * e.one_minus() * &a * &a * q.pow(n + 1)?;
    let den = div(aq.clone(), b.clone())?.one_minus()
        * div(aq.clone(), c.clone())?.one_minus()
        * div(aq.clone(), d.clone())?.one_minus()
        * div(aq.clone(), e.clone())?.one_minus()
        * (&a * q.pow(n)?).one_minus()
        * (&a * q.pow(n + 1)?).one_minus()
        * b
        * c
        * d
        * e;
    Ok(-div(num, den)?)
}

fn watson_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("a", 2), ("b", 1), ("c", 1), ("d", 1), ("e", 1)])
}

pub fn watson_g(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let aq = &a * q;
    let qn = q.pow(-n)?;
    let upper = [div(aq.clone(), &b * &c)?, d.clone(), e.clone(), qn.clone()];
    let num = qpoch_multi(&upper, q, k)?;
    if num.is_zero() {
        return Ok(num);
    }
    let lower = [q.clone(), div(aq.clone(), b)?, div(aq.clone(), c)?, div(&d * &e * &qn, a.clone())?];
    Ok(watson_prefactor(&a, &d, &e, q, n)? * div(num * q.pow(k)?, qpoch_multi(&lower, q, k)?)?)
}

pub fn watson_h(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let aq = &a * q;
    let pre = div(
        qpoch_multi(std::slice::from_ref(&aq), q, n - 1)? * qpoch_multi(&[div(aq.clone(), &d * &e)?], q, n)?,
        qpoch_multi(&[div(aq.clone(), d.clone())?, div(aq.clone(), e.clone())?], q, n)?,
    )?;
    let num = qpoch_multi(&[div(aq.clone(), &b * &c)?, q.pow(1 - n)?], q, k)? * qpoch_multi(&[d.clone(), e.clone()], q, k + 1)?;
    if num.is_zero() {
        return Ok(num);
    }
    let den = qpoch_multi(&[q.clone(), div(aq.clone(), b)?, div(aq, c)?], q, k)? * qpoch_multi(&[div(&d * &e * q.pow(-n)?, a)?], q, k + 1)?;
    Ok(pre * div(num, den)?)
}

const WATSON_REC: [RecTerm; 2] = two_term(watson_beta);

// ---------------------------------------------------------------------------
// Bailey. The point carries a..f; lambda = a^2 q / bcd is re-derived at every
// shifted point (the shift sends lambda to lambda q).

fn with_lambda(p: &ParamPoint) -> Result<ParamPoint> {
    let mut out = p.clone();
    derive_lambda(&mut out)?;
    Ok(out)
}

pub fn bailey_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let p = with_lambda(p)?;
    let (a, params) = bailey_left_params(&p, n)?;
    let q = p.q()?;
    vwp_term(&a, &params, q, q, k)
}

pub fn bailey_alpha(p: &ParamPoint, n: i64) -> Result<QRational> {
    let p = with_lambda(p)?;
    let (a, b, c, d, e, f) = (s(&p, "a")?, s(&p, "b")?, s(&p, "c")?, s(&p, "d")?, s(&p, "e")?, s(&p, "f")?);
    let lambda = s(&p, "lambda")?;
    let q = p.q()?;
    let aq = &a * q;
    let ef = &e * &f;
    let first = div(
        b.one_minus() * c.one_minus() * d.one_minus() * e.one_minus() * f.one_minus(),
        div(aq.clone(), b)?.one_minus()
            * div(aq.clone(), c)?.one_minus()
            * div(aq.clone(), d)?.one_minus()
            * div(aq.clone(), e)?.one_minus()
            * div(aq.clone(), f)?.one_minus(),
    )?;
    let num = aq.one_minus()
        * (&aq * q).one_minus()
        * div(ef.clone(), lambda.clone())?.one_minus()
        * div(&lambda * &a * q.pow(2 * n)?, ef.clone())?.one_minus();
    let den = (&a * q.pow(n)?).one_minus()
        * (&a * q.pow(n + 1)?).one_minus()
        * div(&ef * q.pow(1 - n)?, lambda.clone())?.one_minus()
        * div(&ef * q.pow(-n)?, lambda)?.one_minus()
        * q.pow(n - 1)?;
    Ok(-(first * div(num, den)?))
}

fn bailey_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("a", 2), ("b", 1), ("c", 1), ("d", 1), ("e", 1), ("f", 1)])
}

pub fn bailey_g(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let p = with_lambda(p)?;
    let (lambda, params) = bailey_right_params(&p, n)?;
    let q = p.q()?;
    let t = vwp_term(&lambda, &params, q, q, k)?;
    if t.is_zero() {
        return Ok(t);
    }
    Ok(bailey_prefactor(&p, n)? * t)
}

pub fn bailey_h(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let p = with_lambda(p)?;
    let (a, b, c, d, e, f) = (s(&p, "a")?, s(&p, "b")?, s(&p, "c")?, s(&p, "d")?, s(&p, "e")?, s(&p, "f")?);
    let lambda = s(&p, "lambda")?;
    let q = p.q()?;
    let aq = &a * q;
    let lq = &lambda * q;
    let ef = &e * &f;
    let la = div(lambda.clone(), a.clone())?;
    let top = div(&lambda * &a * q.pow(n + 1)?, ef.clone())?;
    let pre_num = div(&a * &lambda * q.pow(2 * n)?, ef.clone())?.one_minus()
        * qpoch_multi(&[aq.clone(), div(lq.clone(), e.clone())?, div(lq.clone(), f.clone())?], q, n - 1)?
        * qpoch_multi(&[div(aq.clone(), ef.clone())?], q, n)?;
    let pre_den =
        qpoch_multi(&[div(aq.clone(), e.clone())?, div(aq.clone(), f.clone())?, div(lq.clone(), ef.clone())?, lambda.clone()], q, n)?;
    let num = div(&lambda * q.pow(k)?, a.clone())?.one_minus()
        * qpoch_multi(&[&la * &b, &la * &c, &la * &d, top, q.pow(1 - n)?], q, k)?
        * qpoch_multi(&[lambda.clone(), e.clone(), f.clone()], q, k + 1)?;
    if num.is_zero() {
        return Ok(num);
    }
    let den = qpoch_multi(&[q.clone(), div(aq.clone(), b)?, div(aq.clone(), c)?, div(aq, d)?, div(lq.clone(), e)?, div(lq, f)?], q, k)?
        * qpoch_multi(&[div(&ef * q.pow(-n)?, a)?, &lambda * q.pow(n)?], q, k + 1)?;
    Ok(div(pre_num, pre_den)? * div(num, den)?)
}

const BAILEY_REC: [RecTerm; 2] = two_term(bailey_alpha);

// ---------------------------------------------------------------------------
// Singh, with d = q^{-n}; `a2`, `b2` stand for a^2, b^2.

fn singh_syms(p: &ParamPoint) -> Result<(QRational, QRational, QRational, QRational)> {
    Ok((s(p, "a2")?, s(p, "b2")?, s(p, "c")?, p.q()?.clone()))
}

pub fn singh_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a2, b2, c, q) = singh_syms(p)?;
    singh_left_term(&a2, &b2, &c, &q.pow(-n)?, &q, k)
}

pub fn singh_g(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a2, b2, c, q) = singh_syms(p)?;
    singh_right_term(&a2, &b2, &c, &q.pow(-n)?, &q, k)
}

fn one_plus(x: QRational) -> QRational {
    QRational::one() + x
}

pub fn singh_alpha(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (_, _, c, q) = singh_syms(p)?;
    div(one_plus(q.clone()) * one_plus(&c * q.pow(1 - n)?), &q * one_plus(&c * q.pow(-n)?))
}

pub fn singh_beta(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (_, _, c, q) = singh_syms(p)?;
    div(one_plus(&c * q.pow(2 - n)?), &q * one_plus(&c * q.pow(-n)?))
}

pub fn singh_gamma(p: &ParamPoint, n: i64) -> Result<QRational> {
    let (a2, b2, c, q) = singh_syms(p)?;
    let ab = &a2 * &b2;
    let c2 = &c * &c;
    let num = a2.one_minus()
        * b2.one_minus()
        * c2.one_minus()
        * (&a2 * &q).one_minus()
        * (&b2 * &q).one_minus()
        * (&c2 * q.pow(2)?).one_minus()
        * q.pow(3 - 2 * n)?;
    let mut den = (&ab * &q).one_minus() * (&ab * q.pow(3)?).one_minus();
    for j in 0..4 {
        den *= one_plus(&c * q.pow(j - n)?);
    }
    div(num, den)
}

/// `(a, b, c) -> (aq, bq, cq^2)`, i.e. `(a2, b2, c) -> (a2 q^2, b2 q^2, c q^2)`.
fn singh_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("a2", 2), ("b2", 2), ("c", 2)])
}

pub fn singh_h(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a2, b2, c, q) = singh_syms(p)?;
    let q2 = &q * &q;
    // 1/(q^2;q^2)_{k-1} vanishes for k <= 0.
    let inv = qpoch_recip(&q2, &q2, k - 1)?;
    if inv.is_zero() {
        return Ok(inv);
    }
    let num = (q2.pow(k)? * q.pow(-1)?).one_minus()
        * qpoch_multi(&[a2.clone(), b2.clone()], &q2, k)?
        * qpoch_multi(&[q.pow(4 - 2 * n)?], &q2, k - 1)?
        * qpoch_multi(&[&c * &c], &q2, k + 1)?
        * q.pow(2 - 2 * n)?;
    let den = qpoch_multi(&[&a2 * &b2 * &q], &q2, k)? * qpoch_multi(&[-(&c * q.pow(-n)?)], &q, 2 * k + 2)?;
    Ok(-(inv * div(num, den)?))
}

/// The first-order relation the three-term one is built from:
/// `F_{n,k} - F_{n-1,k} + (1-a^2)(1-b^2)(1-c^2) q^{1-n} / ((1-a^2b^2q)(1+cq^{-n})(1+cq^{1-n}))
///  F_{n-1,k-1}(aq^{1/2}, bq^{1/2}, cq)`.
pub fn singh_first_order_residual(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let (a2, b2, c, q) = singh_syms(p)?;
    let coeff = div(
        a2.one_minus() * b2.one_minus() * (&c * &c).one_minus() * q.pow(1 - n)?,
        (&a2 * &b2 * &q).one_minus() * one_plus(&c * q.pow(-n)?) * one_plus(&c * q.pow(1 - n)?),
    )?;
    let half = scale(p, &[("a2", 1), ("b2", 1), ("c", 1)])?;
    let f = |pt: &ParamPoint, n: i64, k: i64| -> Result<QRational> {
        if n < 0 || k < 0 || k > n {
            Ok(QRational::zero())
        } else {
            singh_term(pt, n, k)
        }
    };
    Ok(f(p, n, k)? - f(p, n - 1, k)? + coeff * f(&half, n - 1, k - 1)?)
}

const SINGH_REC: [RecTerm; 3] = [
    RecTerm { coeff: singh_alpha, negate: false, level: 1, k_offset: 0, shifts: 0 },
    RecTerm { coeff: singh_beta, negate: true, level: 2, k_offset: 0, shifts: 0 },
    RecTerm { coeff: singh_gamma, negate: false, level: 2, k_offset: 2, shifts: 1 },
];

// ---------------------------------------------------------------------------
// Lebesgue

pub fn lebesgue_cert_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    lebesgue_term(&s(p, "a")?, p.q()?, n, k)
}

pub fn lebesgue_c1(p: &ParamPoint, n: i64) -> Result<QRational> {
    div(QRational::one(), (s(p, "a")? * p.q()?.pow(n)?).one_minus())
}

pub fn lebesgue_c2(p: &ParamPoint, n: i64) -> Result<QRational> {
    let q = p.q()?;
    div(q.pow(n)?, (s(p, "a")? * q.pow(n)?).one_minus())
}

fn lebesgue_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("a", 2)])
}

fn lebesgue_s(p: &ParamPoint, n: i64) -> Result<QRational> {
    lebesgue_closed_form(&s(p, "a")?, p.q()?, n)
}

/// `[n,k](1 - aq^n) - [n-1,k](1 - aq^{n+k}) - [n-1,k-1](1 - aq^k) q^{n-k}`.
pub fn binomial_recurrence_residual(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let a = s(p, "a")?;
    let q = p.q()?;
    let lhs = qbinom(n, k, q)? * (&a * q.pow(n)?).one_minus();
    let rhs =
        qbinom(n - 1, k, q)? * (&a * q.pow(n + k)?).one_minus() + qbinom(n - 1, k - 1, q)? * (&a * q.pow(k)?).one_minus() * q.pow(n - k)?;
    Ok(lhs - rhs)
}

const LEBESGUE_REC: [RecTerm; 2] = [
    RecTerm { coeff: lebesgue_c1, negate: false, level: 1, k_offset: 0, shifts: 0 },
    RecTerm { coeff: lebesgue_c2, negate: false, level: 1, k_offset: 1, shifts: 1 },
];

// ---------------------------------------------------------------------------
// Quintuple

pub fn quintuple_cert_term(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    quintuple_term(&s(p, "z")?, p.q()?, n, k)
}

pub fn quintuple_c1(p: &ParamPoint, n: i64) -> Result<QRational> {
    let z = s(p, "z")?;
    let q = p.q()?;
    div((&z * q.pow(n)?).one_minus(), (&z * &z * q.pow(n + 1)?).one_minus())
}

pub fn quintuple_c2(p: &ParamPoint, n: i64) -> Result<QRational> {
    let z = s(p, "z")?;
    let q = p.q()?;
    div((&z * q).one_minus() * &z * q.pow(n)?, (&z * &z * q.pow(n + 1)?).one_minus())
}

fn quintuple_shift(p: &ParamPoint) -> Result<ParamPoint> {
    scale(p, &[("z", 1)])
}

fn quintuple_s(_: &ParamPoint, _: i64) -> Result<QRational> {
    Ok(QRational::one())
}

/// The binomial recurrence at `a = z^2 q`.
fn quintuple_binomial_residual(p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let z = s(p, "z")?;
    let q = p.q()?.clone();
    binomial_recurrence_residual(&p.clone().with("a", &z * &z * &q), n, k)
}

const QUINTUPLE_REC: [RecTerm; 2] = [
    RecTerm { coeff: quintuple_c1, negate: false, level: 1, k_offset: 0, shifts: 0 },
    RecTerm { coeff: quintuple_c2, negate: false, level: 1, k_offset: 1, shifts: 1 },
];

// ---------------------------------------------------------------------------

pub(super) static CERTIFICATES: [ProofCertificate; 6] = [
    ProofCertificate {
        id: "jackson",
        title: "Jackson's 8phi7 sum by the first contiguous relation",
        symbols: &["a", "b", "c", "d", "q"],
        term: jackson_term,
        rhs_term: None,
        closed_form: Some(jackson_s),
        shift: jackson_shift,
        recurrence: &JACKSON_REC,
        anti_diff: None,
        order: 1,
        aux: &[],
    },
    ProofCertificate {
        id: "watson",
        title: "Watson's transformation by the second contiguous relation",
        symbols: &["a", "b", "c", "d", "e", "q"],
        term: watson_term,
        rhs_term: Some(watson_g),
        closed_form: None,
        shift: watson_shift,
        recurrence: &WATSON_REC,
        anti_diff: Some(watson_h),
        order: 1,
        aux: &[],
    },
    ProofCertificate {
        id: "bailey",
        title: "Bailey's 10phi9 transformation",
        symbols: &["a", "b", "c", "d", "e", "f", "q"],
        term: bailey_term,
        rhs_term: Some(bailey_g),
        closed_form: None,
        shift: bailey_shift,
        recurrence: &BAILEY_REC,
        anti_diff: Some(bailey_h),
        order: 1,
        aux: &[],
    },
    ProofCertificate {
        id: "singh",
        title: "Singh's quadratic transformation, three-term recurrence",
        symbols: &["a2", "b2", "c", "q"],
        term: singh_term,
        rhs_term: Some(singh_g),
        closed_form: None,
        shift: singh_shift,
        recurrence: &SINGH_REC,
        anti_diff: Some(singh_h),
        order: 2,
        aux: &[AuxCheck { name: "first_order", residual: singh_first_order_residual, min_n: 1 }],
    },
    ProofCertificate {
        id: "lebesgue",
        title: "Finite Lebesgue identity",
        symbols: &["a", "q"],
        term: lebesgue_cert_term,
        rhs_term: None,
        closed_form: Some(lebesgue_s),
        shift: lebesgue_shift,
        recurrence: &LEBESGUE_REC,
        anti_diff: None,
        order: 1,
        aux: &[AuxCheck { name: "binomial_recurrence", residual: binomial_recurrence_residual, min_n: 1 }],
    },
    ProofCertificate {
        id: "quintuple",
        title: "Finite quintuple product identity",
        symbols: &["z", "q"],
        term: quintuple_cert_term,
        rhs_term: None,
        closed_form: Some(quintuple_s),
        shift: quintuple_shift,
        recurrence: &QUINTUPLE_REC,
        anti_diff: None,
        order: 1,
        aux: &[AuxCheck { name: "binomial_recurrence", residual: quintuple_binomial_residual, min_n: 1 }],
    },
];
