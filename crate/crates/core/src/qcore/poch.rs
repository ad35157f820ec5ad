use super::{check_base, ratio, QRational};
use crate::error::{Error, Result};

/// `(a; q)_n`. Negative `n` uses `(a;q)_{-m} = 1 / (a q^{-m}; q)_m`.
pub fn qpoch(a: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    if n >= 0 {
        let mut acc = QRational::one();
        let mut aqk = a.clone();
        for _ in 0..n {
            acc *= aqk.one_minus();
            if acc.is_zero() {
                return Ok(acc);
            }
            aqk *= q;
        }
        Ok(acc)
    } else {
        let den = qpoch_recip(a, q, n)?;
        ratio(&QRational::one(), &den, &format!("({a};{q})_{n}: factor 1 - a q^-j vanishes"))
    }
}

/// `1 / (a; q)_n` as a finite product. For negative `n` this never divides,
/// so it is defined (and may be 0) even where `(a;q)_n` itself has a pole.
pub fn qpoch_recip(a: &QRational, q: &QRational, n: i64) -> Result<QRational> {
    if n >= 0 {
        let p = qpoch(a, q, n)?;
        ratio(&QRational::one(), &p, &format!("({a};{q})_{n} vanishes"))
    } else {
        if q.is_zero() {
            return Err(Error::DegenerateQ(q.to_string()));
        }
        let m = -n;
        let qinv = q.recip()?;
        let mut acc = QRational::one();
        let mut aqj = a.clone();
        for _ in 1..=m {
            aqj *= &qinv;
            acc *= aqj.one_minus();
        }
        Ok(acc)
    }
}

/// `(a_1, ..., a_m; q)_n`.
pub fn qpoch_multi(params: &[QRational], q: &QRational, n: i64) -> Result<QRational> {
    let mut acc = QRational::one();
    for (i, a) in params.iter().enumerate() {
        let v = qpoch(a, q, n).map_err(|e| match e {
            Error::Pole { what } => Error::pole(format!("factor #{i}: {what}")),
            other => other,
        })?;
        acc *= v;
    }
    Ok(acc)
}

/// Gaussian binomial `[n, k]_q` via `prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)`.
pub fn qbinom(n: i64, k: i64, q: &QRational) -> Result<QRational> {
    check_base(q)?;
    if k < 0 || k > n {
        return Ok(QRational::zero());
    }
    let k = k.min(n - k);
    let mut num = QRational::one();
    let mut den = QRational::one();
    for i in 1..=k {
        num *= q.pow(n - k + i)?.one_minus();
        den *= q.pow(i)?.one_minus();
    }
    ratio(&num, &den, &format!("[{n},{k}]_q at q={q}"))
}

/// `q^e` for a base already known to be nonzero.
pub fn qpow(q: &QRational, e: i64) -> Result<QRational> {
    q.pow(e)
}
