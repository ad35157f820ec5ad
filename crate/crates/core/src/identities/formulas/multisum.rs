//! The r-fold sums: the C_r extension of Jackson's summation, its n = 1 case,
//! the single-sum reduction used in its proof, and the two allied sums.

use super::{div, half_exponent, poch_quotient, sym};
use crate::error::{Error, Result};
use crate::qcore::{qbinom, qpoch_multi, ParamPoint, QRational};

/// Largest `r` any multi-sum is evaluated at.
pub const MAX_R: i64 = 4;
/// Largest number of summands `(n+1)^r` per evaluation.
pub const MAX_SUMMANDS: i64 = 2500;

pub fn check_multisum_cost(n: i64, r: i64) -> Result<()> {
    if !(0..=MAX_R).contains(&r) {
        return Err(Error::CostGuard(format!("r = {r} outside 0..={MAX_R}")));
    }
    if n < 0 {
        return Err(Error::CostGuard(format!("n = {n} is negative")));
    }
    let count = (n + 1).checked_pow(r as u32).unwrap_or(i64::MAX);
    if count > MAX_SUMMANDS {
        return Err(Error::CostGuard(format!("(n+1)^r = {count} exceeds {MAX_SUMMANDS}")));
    }
    Ok(())
}

/// Visits every vector in `{0..=hi}^r` in lexicographic order.
pub fn for_each_index_vector(r: usize, hi: i64, mut f: impl FnMut(&[i64]) -> Result<()>) -> Result<()> {
    let mut ks = vec![0i64; r];
    loop {
        f(&ks)?;
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if ks[i] < hi {
                ks[i] += 1;
                break;
            }
            ks[i] = 0;
        }
    }
}

/// Symbols shared by the C_r Jackson sum and its lemma.
#[derive(Clone, Debug)]
pub struct SchlosserParams {
    pub a: QRational,
    pub b: QRational,
    pub c: QRational,
    pub d: QRational,
    pub q: QRational,
    pub x: Vec<QRational>,
}

impl SchlosserParams {
    pub fn from_point(p: &ParamPoint, r: usize) -> Result<Self> {
        Ok(SchlosserParams { a: sym(p, "a")?, b: sym(p, "b")?, c: sym(p, "c")?, d: sym(p, "d")?, q: p.q()?.clone(), x: p.x_vector(r)? })
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }

    pub fn with_a(&self, a: QRational) -> Self {
        SchlosserParams { a, ..self.clone() }
    }

    /// `x_i -> x_i q^{s_i}`.
    pub fn shift_x(&self, s: &[i64]) -> Result<Self> {
        let mut out = self.clone();
        for (x, &si) in out.x.iter_mut().zip(s) {
            *x = &*x * self.q.pow(si)?;
        }
        Ok(out)
    }

    fn bcd(&self) -> QRational {
        &self.b * &self.c * &self.d
    }

    /// `(x_i q^{k_i} - x_j q^{k_j})(1 - a x_i x_j q^{k_i+k_j})`.
    fn pair_numerator(&self, i: usize, j: usize, ki: i64, kj: i64) -> Result<QRational> {
        let q = &self.q;
        let (xi, xj) = (&self.x[i], &self.x[j]);
        let diff = xi * q.pow(ki)? - xj * q.pow(kj)?;
        Ok(diff * (&self.a * xi * xj * q.pow(ki + kj)?).one_minus())
    }

    /// `prod_{i<j} (x_i q^{k_i} - x_j q^{k_j})(1 - a x_i x_j q^{k_i+k_j})
    ///  / ((x_i - x_j)(1 - a x_i x_j q^{shift}))`.
    pub fn pair_factor(&self, ks: &[i64], den_shift: i64) -> Result<QRational> {
        let r = self.r();
        let mut num = QRational::one();
        let mut den = QRational::one();
        for i in 0..r {
            for j in i + 1..r {
                num *= self.pair_numerator(i, j, ks[i], ks[j])?;
                den *= (&self.x[i] - &self.x[j]) * (&self.a * &self.x[i] * &self.x[j] * self.q.pow(den_shift)?).one_minus();
            }
        }
        if num.is_zero() {
            return Ok(num);
        }
        div(&num, &den)
    }

    /// Per-coordinate factor of the level-`n` summand:
    /// `(1 - a x^2 q^{2k})/(1 - a x^2) (a x^2, bx, cx, dx, a^2 x q^{n-r+2}/bcd, q^{-n}; q)_k q^k
    ///  / (q, axq/b, axq/c, axq/d, bcd x q^{r-n-1}/a, a x^2 q^{n+1}; q)_k`.
    pub fn single_factor(&self, i: usize, n: i64, k: i64) -> Result<QRational> {
        if k < 0 || k > n {
            return Ok(QRational::zero());
        }
        let (a, q) = (&self.a, &self.q);
        let r = self.r() as i64;
        let x = &self.x[i];
        let ax2 = a * x * x;
        let bcd = self.bcd();
        let axq = a * x * q;
        let head = div(&(&ax2 * q.pow(2 * k)?).one_minus(), &ax2.one_minus())?;
        let upper = [ax2.clone(), &self.b * x, &self.c * x, &self.d * x, div(&(a * a * x * q.pow(n - r + 2)?), &bcd)?, q.pow(-n)?];
        let lower = [
            q.clone(),
            div(&axq, &self.b)?,
            div(&axq, &self.c)?,
            div(&axq, &self.d)?,
            div(&(&bcd * x * q.pow(r - n - 1)?), a)?,
            &ax2 * q.pow(n + 1)?,
        ];
        Ok(head * poch_quotient(&upper, &lower, q, k)? * q.pow(k)?)
    }

    /// The full level-`n` summand at the index vector `ks` (zero off the box).
    pub fn summand(&self, n: i64, ks: &[i64]) -> Result<QRational> {
        if ks.iter().any(|&k| k < 0 || k > n) {
            return Ok(QRational::zero());
        }
        let mut acc = QRational::one();
        for (i, &k) in ks.iter().enumerate() {
            acc *= self.single_factor(i, n, k)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        Ok(acc * self.pair_factor(ks, 0)?)
    }

    /// Left side of the C_r sum at level `n`. Per-coordinate and pair factors
    /// are tabulated once, then combined over the `(n+1)^r` box.
    pub fn lhs(&self, n: i64) -> Result<QRational> {
        let r = self.r();
        check_multisum_cost(n, r as i64)?;
        let singles: Vec<Vec<QRational>> = (0..r).map(|i| (0..=n).map(|k| self.single_factor(i, n, k)).collect()).collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let den = (&self.x[i] - &self.x[j]) * (&self.a * &self.x[i] * &self.x[j]).one_minus();
                let mut table = Vec::with_capacity(((n + 1) * (n + 1)) as usize);
                for ki in 0..=n {
                    for kj in 0..=n {
                        table.push(div(&self.pair_numerator(i, j, ki, kj)?, &den)?);
                    }
                }
                pairs.push((i, j, table));
            }
        }
        let width = (n + 1) as usize;
        let mut total = QRational::zero();
        for_each_index_vector(r, n, |ks| {
            let mut term = QRational::one();
            for (i, &k) in ks.iter().enumerate() {
                term *= &singles[i][k as usize];
            }
            if term.is_zero() {
                return Ok(());
            }
            for (i, j, table) in &pairs {
                term *= &table[ks[*i] as usize * width + ks[*j] as usize];
            }
            total += term;
            Ok(())
        })?;
        Ok(total)
    }

    /// `prod_{i<j} (1 - a x_i x_j q^n)/(1 - a x_i x_j) prod_i (a x_i^2 q, a q^{2-i}/bc,
    /// a q^{2-i}/bd, a q^{2-i}/cd; q)_n / (a q^{2-r}/(bcd x_i), a x_i q/b, a x_i q/c, a x_i q/d; q)_n`.
    pub fn rhs(&self, n: i64) -> Result<QRational> {
        let (a, q) = (&self.a, &self.q);
        let r = self.r();
        let mut acc = QRational::one();
        for i in 0..r {
            for j in i + 1..r {
                let axx = a * &self.x[i] * &self.x[j];
                acc *= div(&(&axx * q.pow(n)?).one_minus(), &axx.one_minus())?;
            }
        }
        let bcd = self.bcd();
        for (idx, x) in self.x.iter().enumerate() {
            let i = idx as i64 + 1;
            let aqi = a * q.pow(2 - i)?;
            let axq = a * x * q;
            let upper =
                [a * x * x * q, div(&aqi, &(&self.b * &self.c))?, div(&aqi, &(&self.b * &self.d))?, div(&aqi, &(&self.c * &self.d))?];
            let lower = [div(&(a * q.pow(2 - r as i64)?), &(&bcd * x))?, div(&axq, &self.b)?, div(&axq, &self.c)?, div(&axq, &self.d)?];
            acc *= poch_quotient(&upper, &lower, q, n)?;
        }
        Ok(acc)
    }

    /// Left side of the n = 1 lemma (sum over `s` in `{0,1}^r`).
    pub fn lemma_lhs(&self) -> Result<QRational> {
        let r = self.r();
        let (a, q) = (&self.a, &self.q);
        let rr = r as i64;
        let bcd = self.bcd();
        let mut total = QRational::zero();
        for_each_index_vector(r, 1, |s| {
            let mut term = self.pair_factor(s, 1)?;
            for (i, &si) in s.iter().enumerate() {
                let x = &self.x[i];
                let axq = a * x * q;
                let upper = [&self.b * x, &self.c * x, &self.d * x, div(&(a * a * x * q.pow(3 - rr)?), &bcd)?];
                let lower = [div(&axq, &self.b)?, div(&axq, &self.c)?, div(&axq, &self.d)?, div(&(&bcd * x * q.pow(rr - 2)?), a)?];
                term *= poch_quotient(&upper, &lower, q, si)?;
                if si == 1 {
                    term = -term;
                }
            }
            total += term;
            Ok(())
        })?;
        Ok(total)
    }

    /// Right side of the n = 1 lemma.
    pub fn lemma_rhs(&self) -> Result<QRational> {
        let (a, q) = (&self.a, &self.q);
        let r = self.r() as i64;
        let bcd = self.bcd();
        let mut acc = QRational::one();
        for (idx, x) in self.x.iter().enumerate() {
            let i = idx as i64 + 1;
            let aqi = a * q.pow(2 - i)?;
            let axq = a * x * q;
            let upper =
                [a * x * x * q, div(&aqi, &(&self.b * &self.c))?, div(&aqi, &(&self.b * &self.d))?, div(&aqi, &(&self.c * &self.d))?];
            let lower = [div(&(a * q.pow(2 - r)?), &(&bcd * x))?, div(&axq, &self.b)?, div(&axq, &self.c)?, div(&axq, &self.d)?];
            acc *= poch_quotient(&upper, &lower, q, 1)?;
        }
        Ok(acc)
    }
}

fn schlosser_params(p: &ParamPoint) -> Result<(SchlosserParams, i64)> {
    let r = p.idx("r")?;
    let n = p.idx("n")?;
    check_multisum_cost(n, r)?;
    Ok((SchlosserParams::from_point(p, r as usize)?, n))
}

pub fn schlosser_cr_lhs(p: &ParamPoint) -> Result<QRational> {
    let (sp, n) = schlosser_params(p)?;
    sp.lhs(n)
}

pub fn schlosser_cr_rhs(p: &ParamPoint) -> Result<QRational> {
    let (sp, n) = schlosser_params(p)?;
    sp.rhs(n)
}

fn lemma_params(p: &ParamPoint) -> Result<SchlosserParams> {
    let r = p.idx("r")?;
    check_multisum_cost(1, r)?;
    SchlosserParams::from_point(p, r as usize)
}

pub fn schlosser_lemma_lhs(p: &ParamPoint) -> Result<QRational> {
    lemma_params(p)?.lemma_lhs()
}

pub fn schlosser_lemma_rhs(p: &ParamPoint) -> Result<QRational> {
    lemma_params(p)?.lemma_rhs()
}

// ---------------------------------------------------------------------------
// Single-sum reduction used for the lemma

pub fn sch_8phi7_lhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?);
    let q = p.q()?;
    let r = p.idx("r")?;
    let bcd = &b * &c * &d;
    let aq = &a * q;
    let upper = [div(&aq, &b)?, div(&aq, &c)?, div(&aq, &d)?, div(&(&bcd * q.pow(r - 2)?), &a)?];
    let lower = [b.clone(), c.clone(), d.clone(), div(&(&a * &a * q.pow(3 - r)?), &bcd)?];
    let mut total = QRational::zero();
    for k in 0..=r {
        let sign = if k % 2 == 0 { QRational::one() } else { -QRational::one() };
        let power = q.pow(half_exponent(k, 1 - 2 * r))?;
        let head = div(&(&a * q.pow(2 * k)?).one_minus(), &qpoch_multi(&[&a * q.pow(k)?], q, r + 1)?)?;
        total += sign * power * qbinom(r, k, q)? * head * poch_quotient(&upper, &lower, q, k)?;
    }
    Ok(total)
}

pub fn sch_8phi7_rhs(p: &ParamPoint) -> Result<QRational> {
    let (a, b, c, d) = (sym(p, "a")?, sym(p, "b")?, sym(p, "c")?, sym(p, "d")?);
    let q = p.q()?;
    let r = p.idx("r")?;
    let bcd = &b * &c * &d;
    let aq2r = &a * q.pow(2 - r)?;
    let lead = div(&(&bcd * q.pow(r - 2)?), &a)?.pow(r)?;
    let upper = [div(&aq2r, &(&b * &c))?, div(&aq2r, &(&b * &d))?, div(&aq2r, &(&c * &d))?];
    let lower = [b.clone(), c.clone(), d.clone(), div(&(&a * &a * q.pow(3 - r)?), &bcd)?];
    let num = qpoch_multi(&upper, q, r)?;
    let den = qpoch_multi(&lower, q, r)?;
    Ok(lead * div(&num, &den)?)
}

// ---------------------------------------------------------------------------
// The two allied r-fold sums

/// Which per-coordinate weight the allied sum carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlliedWeight {
    /// `q^{-(r-1) s_i}`
    Plain,
    /// `(-1)^{s_i} q^{-(r-1) s_i}`
    Alternating,
    /// `(-q)^{-(r-1) s_i}`, the weight as printed for the alternating sum.
    /// Agrees with `Alternating` only for even `r`.
    NegQ,
}

pub fn allied_lhs(p: &ParamPoint, weight: AlliedWeight) -> Result<QRational> {
    let r = p.idx("r")?;
    let n = p.idx("n")?;
    check_multisum_cost(n, r)?;
    let a = sym(p, "a")?;
    let q = p.q()?.clone();
    let x = p.x_vector(r as usize)?;
    allied_sum(&a, &q, &x, n, weight)
}

pub fn allied_sum(a: &QRational, q: &QRational, x: &[QRational], n: i64, weight: AlliedWeight) -> Result<QRational> {
    let r = x.len();
    let rr = r as i64;
    let base = match weight {
        AlliedWeight::Plain => q.pow(1 - rr)?,
        AlliedWeight::Alternating => {
            let b = q.pow(1 - rr)?;
            -b
        }
        AlliedWeight::NegQ => (-q).pow(1 - rr)?,
    };
    let powers: Vec<QRational> = (0..=n).map(|s| base.pow(s)).collect::<Result<_>>()?;
    let sp = SchlosserParams { a: a.clone(), b: QRational::one(), c: QRational::one(), d: QRational::one(), q: q.clone(), x: x.to_vec() };
    let mut total = QRational::zero();
    for_each_index_vector(r, n, |s| {
        let mut term = sp.pair_factor(s, n)?;
        for &si in s {
            term *= &powers[si as usize];
        }
        total += term;
        Ok(())
    })?;
    Ok(total)
}

fn binom2(r: i64) -> i64 {
    r * (r - 1) / 2
}

pub fn cr_prop_1_lhs(p: &ParamPoint) -> Result<QRational> {
    allied_lhs(p, AlliedWeight::Plain)
}

/// `(n+1)(q^{n+1}; q^{n+1})_{r-1} / (q^{n C(r,2)} (q;q)_{r-1})`.
pub fn cr_prop_1_rhs(p: &ParamPoint) -> Result<QRational> {
    let q = p.q()?;
    let (n, r) = (p.idx("n")?, p.idx("r")?);
    let qn1 = q.pow(n + 1)?;
    let num = QRational::from_int(n + 1) * qpoch_multi(std::slice::from_ref(&qn1), &qn1, r - 1)?;
    let den = q.pow(n * binom2(r))? * qpoch_multi(std::slice::from_ref(q), q, r - 1)?;
    div(&num, &den)
}

pub fn cr_prop_2_lhs(p: &ParamPoint) -> Result<QRational> {
    allied_lhs(p, AlliedWeight::Alternating)
}

/// Even `n`: `(-q^{n+1}; q^{n+1})_{r-1} / (q^{n C(r,2)} (-q;q)_{r-1})`; odd `n`: 0.
pub fn cr_prop_2_rhs(p: &ParamPoint) -> Result<QRational> {
    let q = p.q()?;
    let (n, r) = (p.idx("n")?, p.idx("r")?);
    if n % 2 != 0 {
        return Ok(QRational::zero());
    }
    let qn1 = q.pow(n + 1)?;
    let num = qpoch_multi(&[-qn1.clone()], &qn1, r - 1)?;
    let den = q.pow(n * binom2(r))? * qpoch_multi(&[-q.clone()], q, r - 1)?;
    div(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_vectors_enumerate_box() {
        let mut seen = Vec::new();
        for_each_index_vector(2, 2, |v| {
            seen.push(v.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[8], vec![2, 2]);
        let mut count = 0;
        for_each_index_vector(0, 5, |_| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn cost_guard() {
        assert!(check_multisum_cost(6, 4).is_ok());
        assert!(matches!(check_multisum_cost(7, 4), Err(Error::CostGuard(_))));
        assert!(matches!(check_multisum_cost(1, 5), Err(Error::CostGuard(_))));
    }
}
