//! Truncated power series in `q` with exact rational coefficients, used to
//! check the infinite product identities coefficient by coefficient.
//!
//! A [`QSeries`] of order `N` stands for `sum_{j<=N} c_j q^j + O(q^{N+1})`.
//! Symbols other than `q` are specialized to rationals beforehand.

mod infinite;
mod run;

pub use infinite::*;
pub use run::{check_series, SeriesFailure, SeriesOptions, SeriesReport};

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::QRational;

/// Largest order accepted by the series checks.
pub const MAX_ORDER: usize = 400;

/// Default verification order.
pub const DEFAULT_ORDER: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QSeries {
    coeffs: Vec<QRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![QRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(QRational::one(), 0, order)
    }

    /// `c q^e`, or the zero series when `e > order`.
    pub fn monomial(c: QRational, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<QRational>, order: usize) -> Self {
        coeffs.resize(order + 1, QRational::zero());
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &QRational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QRational::is_zero)
    }

    /// Index and value of the lowest nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &QRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &QRational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for j in e..=n {
            out.coeffs[j] = self.coeffs[j - e].clone();
        }
        out
    }

    /// Multiplication by `1 - c q^e`.
    pub fn mul_factor(&mut self, c: &QRational, e: usize) {
        if c.is_zero() {
            return;
        }
        if e == 0 {
            let f = c.one_minus();
            for x in &mut self.coeffs {
                *x *= &f;
            }
            return;
        }
        for j in (e..=self.order()).rev() {
            let t = c * &self.coeffs[j - e];
            self.coeffs[j] -= t;
        }
    }

    /// Division by `1 - c q^e`.
    pub fn div_factor(&mut self, c: &QRational, e: usize) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if e == 0 {
            let f = c.one_minus().recip().map_err(|_| Error::pole("constant factor 1 - c with c = 1"))?;
            for x in &mut self.coeffs {
                *x *= &f;
            }
            return Ok(());
        }
        for j in e..=self.order() {
            let t = c * &self.coeffs[j - e];
            self.coeffs[j] += t;
        }
        Ok(())
    }

    /// Inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs[0].recip().map_err(|_| Error::pole("series inverse with zero constant term"))?;
        let mut out = Self::zero(n);
        out.coeffs[0] = c0.clone();
        for j in 1..=n {
            let mut acc = QRational::zero();
            for i in 1..=j {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out.coeffs[j - i];
                }
            }
            out.coeffs[j] = -(acc * &c0);
        }
        Ok(out)
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries { coeffs: (0..=n).map(|j| &self.coeffs[j] + &rhs.coeffs[j]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries { coeffs: (0..=n).map(|j| &self.coeffs[j] - &rhs.coeffs[j]).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `prod_k (1 - c_k q^{e_k})` to order `order`. `factors(k)` yields the
/// `k`-th factor, or `None` once a finite set is exhausted. Exponents must be
/// nonnegative and strictly increasing; factors with `e_k > order` are 1.
pub fn series_product<F>(mut factors: F, order: usize) -> Result<QSeries>
where
    F: FnMut(usize) -> Option<(QRational, i64)>,
{
    let cap = order + 2;
    let mut out = QSeries::one(order);
    let mut last: Option<i64> = None;
    for k in 0..cap {
        let Some((c, e)) = factors(k) else {
            return Ok(out);
        };
        if e < 0 {
            return Err(Error::Config(format!("factor {k} has negative exponent {e}")));
        }
        if last.is_some_and(|l| e <= l) {
            return Err(Error::NonTerminatingExponent { order, cap });
        }
        if e as usize > order {
            return Ok(out);
        }
        out.mul_factor(&c, e as usize);
        last = Some(e);
    }
    Err(Error::NonTerminatingExponent { order, cap })
}

/// `(c q^{e0}; q^d)_inf` to order `order`.
pub fn inf_poch(c: &QRational, e0: i64, d: i64, order: usize) -> Result<QSeries> {
    if d < 1 {
        return Err(Error::Config(format!("infinite product step must be positive, got {d}")));
    }
    series_product(|k| Some((c.clone(), e0 + d * k as i64)), order)
}

/// `1 / (c q^{e0}; q^d)_inf` to order `order`.
pub fn inf_poch_recip(c: &QRational, e0: i64, d: i64, order: usize) -> Result<QSeries> {
    if d < 1 || e0 < 0 {
        return Err(Error::Config(format!("bad infinite product ({e0}, {d})")));
    }
    let mut out = QSeries::one(order);
    let mut e = e0;
    while e as usize <= order {
        out.div_factor(c, e as usize)?;
        e += d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QRational {
        QRational::from_int(n)
    }

    fn ints(s: &QSeries) -> Vec<QRational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn single_factor() {
        let s = series_product(|k| (k == 0).then(|| (q(1), 1)), 3).unwrap();
        assert_eq!(ints(&s), vec![q(1), q(-1), q(0), q(0)]);
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(series_product(|_| None, 4).unwrap(), QSeries::one(4));
    }

    #[test]
    fn euler_pentagonal() {
        // Oracle: multiply out (1-q)(1-q^2)... naively on integer vectors.
        let n = 30usize;
        let mut naive = vec![0i64; n + 1];
        naive[0] = 1;
        for e in 1..=n {
            for j in (e..=n).rev() {
                naive[j] -= naive[j - e];
            }
        }
        let s = inf_poch(&q(1), 1, 1, n).unwrap();
        assert_eq!(ints(&s), naive.iter().map(|&v| q(v)).collect::<Vec<_>>());
        let five = inf_poch(&q(1), 1, 1, 5).unwrap();
        assert_eq!(ints(&five), vec![q(1), q(-1), q(-1), q(0), q(0), q(1)]);
    }

    #[test]
    fn non_increasing_exponents_rejected() {
        let err = series_product(|_| Some((q(1), 1)), 5).unwrap_err();
        assert!(matches!(err, Error::NonTerminatingExponent { .. }));
    }

    #[test]
    fn inverse_round_trip() {
        let s = inf_poch(&QRational::new(2, 3).unwrap(), 0, 1, 20).unwrap();
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, QSeries::one(20));
        assert_eq!(inv, inf_poch_recip(&QRational::new(2, 3).unwrap(), 0, 1, 20).unwrap());
        assert!(inf_poch(&q(1), 0, 1, 5).unwrap().invert().unwrap_err().is_pole());
    }

    #[test]
    fn truncation_commutes_with_product() {
        let a = inf_poch(&QRational::new(-3, 4).unwrap(), 1, 2, 30).unwrap();
        let b = inf_poch_recip(&QRational::new(5, 2).unwrap(), 0, 3, 30).unwrap();
        let full = &a * &b;
        for m in [0, 1, 7, 19, 30] {
            assert_eq!(full.truncate(m), &a.truncate(m) * &b.truncate(m));
        }
    }
}
