//! Terminating basic hypergeometric sums, the well-poised term `F_k`, and the
//! two contiguous relations between well-poised terms as zero-residual checks.

use crate::error::{Error, Result};
use crate::qcore::{check_base, ratio, QRational};

/// A terminating `_{r+1}phi_r` evaluated over its first `term_count` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    pub numerator_params: Vec<QRational>,
    pub denominator_params: Vec<QRational>,
    pub q: QRational,
    pub z: QRational,
    pub term_count: usize,
}

/// Parameters `a_1..a_{r+1}` of a well-poised series, with `q` and `z`.
///
/// The `k`-th term is
/// `(a_1..a_{r+1};q)_k / (q, a_1 q/a_2, .., a_1 q/a_{r+1};q)_k * z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellPoisedTerm {
    pub a_list: Vec<QRational>,
    pub q: QRational,
    pub z: QRational,
}

impl WellPoisedTerm {
    pub fn new(a_list: Vec<QRational>, q: QRational, z: QRational) -> Self {
        WellPoisedTerm { a_list, q, z }
    }

    /// `r`, i.e. one less than the number of numerator parameters.
    pub fn r(&self) -> usize {
        self.a_list.len().saturating_sub(1)
    }

    fn with_param_scaled(&self, i: usize, by: &QRational) -> Self {
        let mut t = self.clone();
        t.a_list[i] = &t.a_list[i] * by;
        t
    }

    /// `(a_1 q^2, a_2 q, .., a_{r+1} q)`, the parameters of the `F_{k-1}` term
    /// on the right of both contiguous relations.
    pub fn raised(&self) -> Self {
        let mut t = self.clone();
        for a in t.a_list.iter_mut() {
            *a = &*a * &self.q;
        }
        t.a_list[0] = &t.a_list[0] * &self.q;
        t
    }
}

/// `sum_{k < term_count} (a;q)_k z^k / (q, b;q)_k`, built term by term from the
/// term ratio. Stops early once a term vanishes (the series has terminated).
pub fn phi_sum(spec: &PhiSpec) -> Result<QRational> {
    check_base(&spec.q)?;
    let mut total = QRational::zero();
    let mut term = QRational::one();
    let mut qk = QRational::one();
    for k in 0..spec.term_count {
        if k > 0 {
            let mut num = spec.z.clone();
            let mut den = (&qk * &spec.q).one_minus();
            for a in &spec.numerator_params {
                num *= (a * &qk).one_minus();
            }
            for b in &spec.denominator_params {
                den *= (b * &qk).one_minus();
            }
            term = ratio(&(term * num), &den, &format!("phi_sum denominator at k={k}"))?;
            qk *= &spec.q;
        }
        if term.is_zero() {
            break;
        }
        total += &term;
    }
    Ok(total)
}

/// The well-poised term `F_k`; `F_k = 0` for `k < 0`.
pub fn wp_term(t: &WellPoisedTerm, k: i64) -> Result<QRational> {
    if k < 0 {
        return Ok(QRational::zero());
    }
    check_base(&t.q)?;
    let a1 = t.a_list.first().ok_or_else(|| Error::Config("empty parameter list".into()))?;
    let a1q = a1 * &t.q;
    let mut lower = Vec::with_capacity(t.a_list.len());
    lower.push(t.q.clone());
    for (i, a) in t.a_list.iter().enumerate().skip(1) {
        lower.push(ratio(&a1q, a, &format!("a_1 q / a_{}", i + 1))?);
    }
    let mut num = t.z.pow(k)?;
    let mut den = QRational::one();
    let mut qj = QRational::one();
    for _ in 0..k {
        for a in &t.a_list {
            num *= (a * &qj).one_minus();
        }
        for b in &lower {
            den *= (b * &qj).one_minus();
        }
        qj *= &t.q;
    }
    if num.is_zero() {
        return Ok(num);
    }
    ratio(&num, &den, &format!("F_{k} denominator"))
}

/// Coefficient of `F_{k-1}(a_1 q^2, a_2 q, ..)` in the first contiguous relation.
/// Needs `r >= 2`; at `r = 1` the factor `1 - a_1/a_r` is identically zero.
pub fn contiguous_alpha(t: &WellPoisedTerm) -> Result<QRational> {
    let r = t.r();
    if r < 2 {
        return Err(Error::pole("first contiguous relation needs r >= 2 (1 - a_1/a_r = 0)"));
    }
    let a = &t.a_list;
    let q = &t.q;
    let (a1, ar, ar1) = (&a[0], &a[r - 1], &a[r]);
    let mut num = (ar - ar1) * ratio(a1, &(ar * ar1), "a_r a_{r+1}")?.one_minus();
    num *= a1.one_minus() * (a1 * q).one_minus();
    for ai in &a[1..r - 1] {
        num *= ai.one_minus();
    }
    num *= &t.z;
    let mut den = ratio(a1, ar, "a_r")?.one_minus() * ratio(a1, ar1, "a_{r+1}")?.one_minus();
    let a1q = a1 * q;
    for ai in &a[1..=r] {
        den *= ratio(&a1q, ai, "a_i")?.one_minus();
    }
    ratio(&num, &den, "contiguous alpha")
}

/// Coefficient of `F_{k-1}(a_1 q^2, a_2 q, ..)` in the second contiguous relation.
pub fn contiguous_beta(t: &WellPoisedTerm) -> Result<QRational> {
    let r = t.r();
    if r < 1 {
        return Err(Error::Config("second contiguous relation needs r >= 1".into()));
    }
    let a = &t.a_list;
    let q = &t.q;
    let a1 = &a[0];
    let mut num = a1.one_minus() * (a1 * q).one_minus();
    for ai in &a[1..r] {
        num *= ai.one_minus();
    }
    num *= &t.z;
    let mut den = ratio(a1, &a[r], "a_{r+1}")?.one_minus();
    let a1q = a1 * q;
    for ai in &a[1..=r] {
        den *= ratio(&a1q, ai, "a_i")?.one_minus();
    }
    Ok(-ratio(&num, &den, "contiguous beta")?)
}

/// `F_k(.., a_r q, a_{r+1}) - F_k(.., a_r, a_{r+1} q) - alpha F_{k-1}(raised)`.
pub fn contiguous_residual_1(t: &WellPoisedTerm, k: i64) -> Result<QRational> {
    let r = t.r();
    let alpha = contiguous_alpha(t)?;
    let first = wp_term(&t.with_param_scaled(r - 1, &t.q), k)?;
    let second = wp_term(&t.with_param_scaled(r, &t.q), k)?;
    let tail = wp_term(&t.raised(), k - 1)?;
    Ok(first - second - alpha * tail)
}

/// `F_k(..; q, qz) - F_k(.., a_{r+1} q; q, z) - beta F_{k-1}(raised)`.
pub fn contiguous_residual_2(t: &WellPoisedTerm, k: i64) -> Result<QRational> {
    let r = t.r();
    let beta = contiguous_beta(t)?;
    let mut qz = t.clone();
    qz.z = &t.z * &t.q;
    let first = wp_term(&qz, k)?;
    let second = wp_term(&t.with_param_scaled(r, &t.q), k)?;
    let tail = wp_term(&t.raised(), k - 1)?;
    Ok(first - second - beta * tail)
}

/// Residuals of the two rational-function identities behind the contiguous
/// relations (`a = a_1`, `b = a_r`, `c = a_{r+1}`, `x = q^k`).
pub fn trivial_identity_residuals(a: &QRational, b: &QRational, c: &QRational, x: &QRational) -> Result<(QRational, QRational)> {
    let one_minus_ratio = |n: &QRational, d: &QRational, what: &str| -> Result<QRational> { Ok(ratio(n, d, what)?.one_minus()) };
    let ax = a * x;
    let db = b.one_minus() * one_minus_ratio(a, b, "a/b")?;
    let dc = c.one_minus() * one_minus_ratio(a, c, "a/c")?;
    let term_b = ratio(&((b * x).one_minus() * one_minus_ratio(&ax, b, "ax/b")?), &db, "(1-b)(1-a/b)")?;
    let term_c = ratio(&((c * x).one_minus() * one_minus_ratio(&ax, c, "ax/c")?), &dc, "(1-c)(1-a/c)")?;
    let cross = ratio(
        &((b - c) * one_minus_ratio(a, &(b * c), "a/bc")? * x.one_minus() * ax.one_minus()),
        &(&db * &dc),
        "(1-b)(1-c)(1-a/b)(1-a/c)",
    )?;
    let first = &term_b - &term_c - cross;
    let tail = ratio(&(x.one_minus() * ax.one_minus()), &dc, "(1-c)(1-a/c)")?;
    let second = x - term_c + tail;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> QRational {
        QRational::new(p, q).unwrap()
    }

    // direct summation, one Pochhammer product per term
    fn phi_oracle(spec: &PhiSpec) -> QRational {
        use crate::qcore::qpoch_multi;
        let mut lower = vec![spec.q.clone()];
        lower.extend(spec.denominator_params.iter().cloned());
        (0..spec.term_count as i64)
            .map(|k| {
                let num = qpoch_multi(&spec.numerator_params, &spec.q, k).unwrap() * spec.z.pow(k).unwrap();
                num.checked_div(&qpoch_multi(&lower, &spec.q, k).unwrap()).unwrap()
            })
            .sum()
    }

    #[test]
    fn phi_single_term() {
        let spec =
            PhiSpec { numerator_params: vec![r(2, 1), r(3, 1)], denominator_params: vec![r(5, 1)], q: r(2, 1), z: r(1, 1), term_count: 1 };
        assert_eq!(phi_sum(&spec).unwrap(), QRational::one());
    }

    #[test]
    fn phi_two_terms() {
        let spec =
            PhiSpec { numerator_params: vec![r(2, 1), r(3, 1)], denominator_params: vec![r(5, 1)], q: r(2, 1), z: r(1, 1), term_count: 2 };
        // 1 + (1-2)(1-3) / ((1-2)(1-5)) = 1 + 2/4
        assert_eq!(phi_oracle(&spec), r(3, 2));
        assert_eq!(phi_sum(&spec).unwrap(), r(3, 2));
    }

    #[test]
    fn phi_unit_numerator_kills_tail() {
        let spec = PhiSpec {
            numerator_params: vec![r(7, 3), QRational::one()],
            denominator_params: vec![r(-5, 2)],
            q: r(3, 4),
            z: r(9, 1),
            term_count: 6,
        };
        assert_eq!(phi_sum(&spec).unwrap(), QRational::one());
    }

    #[test]
    fn phi_reports_pole() {
        // (b;q)_1 with b = 1 vanishes
        let spec = PhiSpec { numerator_params: vec![r(2, 1)], denominator_params: vec![r(1, 1)], q: r(3, 1), z: r(1, 1), term_count: 3 };
        assert!(phi_sum(&spec).unwrap_err().is_pole());
    }

    #[test]
    fn wp_term_examples() {
        let t = WellPoisedTerm::new(vec![r(3, 1), r(5, 1)], r(2, 1), r(1, 1));
        assert_eq!(wp_term(&t, 0).unwrap(), QRational::one());
        assert_eq!(wp_term(&t, -1).unwrap(), QRational::zero());
        assert_eq!(wp_term(&t, 1).unwrap(), r(40, 1));
        let t0 = WellPoisedTerm::new(vec![r(3, 1), r(5, 1)], r(2, 1), QRational::zero());
        assert_eq!(wp_term(&t0, 2).unwrap(), QRational::zero());
    }

    #[test]
    fn contiguous_at_k0() {
        let t = WellPoisedTerm::new(vec![r(3, 1), r(5, 7), r(-2, 9)], r(2, 3), r(4, 5));
        assert_eq!(contiguous_residual_1(&t, 0).unwrap(), QRational::zero());
        assert_eq!(contiguous_residual_2(&t, 0).unwrap(), QRational::zero());
    }

    #[test]
    fn contiguous_small_shapes() {
        let t = WellPoisedTerm::new(vec![r(-7, 3), r(11, 5)], r(3, 2), r(-5, 4));
        for k in 0..6 {
            assert_eq!(contiguous_residual_2(&t, k).unwrap(), QRational::zero(), "k={k}");
        }
        assert!(contiguous_residual_1(&t, 1).unwrap_err().is_pole());
    }

    #[test]
    fn trivial_identities() {
        let (a, b, c) = (r(2, 3), r(5, 1), r(7, 1));
        assert_eq!(trivial_identity_residuals(&a, &b, &c, &r(4, 1)).unwrap(), (QRational::zero(), QRational::zero()));
        assert_eq!(trivial_identity_residuals(&a, &b, &c, &QRational::one()).unwrap(), (QRational::zero(), QRational::zero()));
        assert_eq!(
            trivial_identity_residuals(&QRational::zero(), &r(-3, 4), &r(5, 6), &r(8, 9)).unwrap(),
            (QRational::zero(), QRational::zero())
        );
    }

    #[test]
    fn trivial_identity_pole() {
        assert!(trivial_identity_residuals(&r(2, 1), &QRational::one(), &r(3, 1), &r(5, 1)).unwrap_err().is_pole());
    }
}
