use super::{inf_poch, inf_poch_recip, QSeries};
use crate::error::{Error, Result};
use crate::qcore::{ParamPoint, QRational};

/// A checked infinite identity: its id, title and the symbols it is sampled at.
#[derive(Clone, Copy, Debug)]
pub struct SeriesIdentity {
    pub id: &'static str,
    pub title: &'static str,
    pub symbols: &'static [&'static str],
    residual: fn(&ParamPoint, usize) -> Result<QSeries>,
}

impl SeriesIdentity {
    pub fn residual(&self, p: &ParamPoint, order: usize) -> Result<QSeries> {
        (self.residual)(p, order)
    }
}

static SERIES: [SeriesIdentity; 8] = [
    SeriesIdentity { id: "jacobi_triple", title: "Jacobi's triple product identity", symbols: &["z"], residual: jacobi_triple },
    SeriesIdentity { id: "quintuple", title: "Watson's quintuple product identity", symbols: &["z"], residual: quintuple },
    SeriesIdentity { id: "lebesgue_inf", title: "Lebesgue's identity", symbols: &["a"], residual: lebesgue_inf },
    SeriesIdentity { id: "ab11", title: "Quintuple limit with z -> z/q, q -> q^2", symbols: &["z"], residual: ab11 },
    SeriesIdentity { id: "ab00", title: "Quintuple limit with z -> zq, q -> q^2", symbols: &["z"], residual: ab00 },
    SeriesIdentity { id: "q_kummer", title: "q-analogue of Kummer's theorem", symbols: &["a", "b"], residual: q_kummer },
    SeriesIdentity {
        id: "jacobi_relation",
        title: "Product relation closing the triple product limit",
        symbols: &["z"],
        residual: jacobi_relation,
    },
    SeriesIdentity {
        id: "quintuple_relation",
        title: "Product relation closing the quintuple product limit",
        symbols: &["z"],
        residual: quintuple_relation,
    },
];

/// The six infinite identities followed by the two product relations.
pub fn list_series() -> &'static [SeriesIdentity] {
    &SERIES
}

/// Ids of the six infinite identities.
pub fn series_ids() -> Vec<&'static str> {
    SERIES[..6].iter().map(|s| s.id).collect()
}

pub fn find_series(id: &str) -> Result<&'static SeriesIdentity> {
    SERIES.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownSeries(id.to_string()))
}

/// LHS minus RHS of an infinite identity, to order `order`.
pub fn infinite_identity_residual(id: &str, p: &ParamPoint, order: usize) -> Result<QSeries> {
    if order > super::MAX_ORDER {
        return Err(Error::CostGuard(format!("series order {order} exceeds {}", super::MAX_ORDER)));
    }
    find_series(id)?.residual(p, order)
}

fn sym(p: &ParamPoint, name: &str) -> Result<QRational> {
    p.sym(name).cloned()
}

fn nonzero(p: &ParamPoint, name: &str) -> Result<QRational> {
    let v = sym(p, name)?;
    if v.is_zero() {
        return Err(Error::pole(format!("{name} = 0")));
    }
    Ok(v)
}

fn product(parts: &[QSeries]) -> QSeries {
    let mut it = parts.iter();
    let first = it.next().expect("nonempty product").clone();
    it.fold(first, |acc, s| &acc * s)
}

/// Adds `c q^e` when `e` is within order.
fn add_monomial(s: &mut QSeries, c: QRational, e: i64) {
    if e >= 0 && (e as usize) <= s.order() {
        *s = &*s + &QSeries::monomial(c, e as usize, s.order());
    }
}

/// `sum_{k in Z} f(k)` over the `k` whose minimal exponent `min_exp(k)` is
/// within order, scanning outward from 0 in both directions.
fn bilateral(order: usize, min_exp: impl Fn(i64) -> i64, mut add: impl FnMut(i64)) {
    let mut k = 0;
    while min_exp(k) <= order as i64 {
        add(k);
        k += 1;
    }
    k = -1;
    while min_exp(k) <= order as i64 {
        add(k);
        k -= 1;
    }
}

/// `sum q^{k^2} z^k - (q^2, -q/z, -qz; q^2)_inf`.
pub fn jacobi_triple(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let z = nonzero(p, "z")?;
    let mut lhs = QSeries::zero(n);
    let mut err = None;
    bilateral(
        n,
        |k| k * k,
        |k| match z.pow(k) {
            Ok(zk) => add_monomial(&mut lhs, zk, k * k),
            Err(e) => err = Some(e),
        },
    );
    if let Some(e) = err {
        return Err(e);
    }
    let zi = z.recip()?;
    let rhs = product(&[inf_poch(&QRational::one(), 2, 2, n)?, inf_poch(&-zi, 1, 2, n)?, inf_poch(&-z, 1, 2, n)?]);
    Ok(lhs - rhs)
}

/// `sum (z^2 q^{2k+1} - 1) z^{3k+1} q^{k(3k+1)/2} - (q, z, q/z; q)_inf (qz^2, q/z^2; q^2)_inf`.
pub fn quintuple(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let z = nonzero(p, "z")?;
    let pent = |k: i64| k * (3 * k + 1) / 2;
    let mut lhs = QSeries::zero(n);
    let mut err = None;
    bilateral(
        n,
        |k| pent(k).min(pent(k) + 2 * k + 1),
        |k| match z.pow(3 * k + 1) {
            Ok(zk) => {
                add_monomial(&mut lhs, &zk * &z * &z, pent(k) + 2 * k + 1);
                add_monomial(&mut lhs, -zk, pent(k));
            }
            Err(e) => err = Some(e),
        },
    );
    if let Some(e) = err {
        return Err(e);
    }
    let zi = z.recip()?;
    let z2 = &z * &z;
    let rhs = product(&[
        inf_poch(&QRational::one(), 1, 1, n)?,
        inf_poch(&z, 0, 1, n)?,
        inf_poch(&zi, 1, 1, n)?,
        inf_poch(&z2, 1, 2, n)?,
        inf_poch(&(&zi * &zi), 1, 2, n)?,
    ]);
    Ok(lhs - rhs)
}

/// `sum (a;q)_k / (q;q)_k q^{k(k+1)/2} - (aq;q^2)_inf (-q;q)_inf`.
pub fn lebesgue_inf(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let a = sym(p, "a")?;
    let mut term = QSeries::one(n);
    let mut lhs = term.clone();
    let mut k = 1usize;
    while k * (k + 1) / 2 <= n {
        term.mul_factor(&a, k - 1);
        term.div_factor(&QRational::one(), k)?;
        term = term.shift(k);
        lhs = &lhs + &term;
        k += 1;
    }
    let rhs = &inf_poch(&a, 1, 2, n)? * &inf_poch(&-QRational::one(), 1, 1, n)?;
    Ok(lhs - rhs)
}

fn ab_rhs(z: &QRational, n: usize) -> Result<QSeries> {
    Ok(&inf_poch(&-z.clone(), 1, 2, n)? * &inf_poch(&(z * z), 4, 4, n)?)
}

/// `1 + sum_{k>=1} z^k q^{2k^2-k} (z^2q^2;q^2)_{k-1} (1 - z^2 q^{4k}) / (q^2;q^2)_k
///  - (-zq;q^2)_inf (z^2q^4;q^4)_inf`.
pub fn ab11(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let z = sym(p, "z")?;
    let z2 = &z * &z;
    let one = QRational::one();
    let mut lhs = QSeries::one(n);
    // u_k = z^k q^{2k^2-k} (z^2q^2;q^2)_{k-1} / (q^2;q^2)_k
    let mut u = QSeries::one(n);
    let mut k = 1usize;
    while 2 * k * k - k <= n {
        if k > 1 {
            u.mul_factor(&z2, 2 * k - 2);
        }
        u.div_factor(&one, 2 * k)?;
        u = u.shift(4 * k - 3).scale(&z);
        let mut t = u.clone();
        t.mul_factor(&z2, 4 * k);
        lhs = &lhs + &t;
        k += 1;
    }
    Ok(lhs - ab_rhs(&z, n)?)
}

/// `sum_{k>=0} z^k q^{2k^2+k} (z^2q^2;q^2)_k (1 + z q^{2k+1}) / (q^2;q^2)_k
///  - (-zq;q^2)_inf (z^2q^4;q^4)_inf`.
pub fn ab00(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let z = sym(p, "z")?;
    let z2 = &z * &z;
    let one = QRational::one();
    let mut lhs = QSeries::zero(n);
    // v_k = z^k q^{2k^2+k} (z^2q^2;q^2)_k / (q^2;q^2)_k
    let mut v = QSeries::one(n);
    let mut k = 0usize;
    while 2 * k * k + k <= n {
        if k > 0 {
            v.mul_factor(&z2, 2 * k);
            v.div_factor(&one, 2 * k)?;
            v = v.shift(4 * k - 1).scale(&z);
        }
        let mut t = v.clone();
        t.mul_factor(&-z.clone(), 2 * k + 1);
        lhs = &lhs + &t;
        k += 1;
    }
    Ok(lhs - ab_rhs(&z, n)?)
}

/// `2phi1(a, b; aq/b; q, -q/b)
///  - (aq;q^2)_inf (aq^2/b^2;q^2)_inf (-q;q)_inf / ((aq/b;q)_inf (-q/b;q)_inf)`.
pub fn q_kummer(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let a = sym(p, "a")?;
    let b = nonzero(p, "b")?;
    let bi = b.recip()?;
    let ab = &a * &bi;
    let mut term = QSeries::one(n);
    let mut lhs = term.clone();
    // The k-th term has order at least k.
    for k in 1..=n {
        term.mul_factor(&a, k - 1);
        term.mul_factor(&b, k - 1);
        term.div_factor(&QRational::one(), k)?;
        term.div_factor(&ab, k)?;
        term = term.shift(1).scale(&-bi.clone());
        lhs = &lhs + &term;
    }
    let num = product(&[inf_poch(&a, 1, 2, n)?, inf_poch(&(&ab * &bi), 2, 2, n)?, inf_poch(&-QRational::one(), 1, 1, n)?]);
    let rhs = &(&num * &inf_poch_recip(&ab, 1, 1, n)?) * &inf_poch_recip(&-bi, 1, 1, n)?;
    Ok(lhs - rhs)
}

/// `(-q, q, -q/z, -z; q)_inf / (-q^2/z, -z; q^2)_inf - (q^2, -q/z, -qz; q^2)_inf`.
pub fn jacobi_relation(p: &ParamPoint, n: usize) -> Result<QSeries> {
    let z = nonzero(p, "z")?;
    let zi = z.recip()?;
    let one = QRational::one();
    let lhs = product(&[
        inf_poch(&-one.clone(), 1, 1, n)?,
        inf_poch(&one, 1, 1, n)?,
        inf_poch(&-zi.clone(), 1, 1, n)?,
        inf_poch(&-z.clone(), 0, 1, n)?,
        inf_poch_recip(&-zi.clone(), 2, 2, n)?,
        inf_poch_recip(&-z.clone(), 0, 2, n)?,
    ]);
    let rhs = product(&[inf_poch(&one, 2, 2, n)?, inf_poch(&-zi, 1, 2, n)?, inf_poch(&-z, 1, 2, n)?]);
    Ok(lhs - rhs)
}

/// `(-z, -q/z; q)_inf / (z^2 q, 1/z^2; q)_inf
///  + z^2 / ((qz^2, q/z^2; q^2)_inf (z, q/z; q)_inf)`.
pub fn quintuple_relation(p: &ParamPoint, n: usize) -> Result<QSeries> {
    quintuple_relation_with(p, n, 2)
}

/// As [`quintuple_relation`] with `(q/z^2; q^step)_inf` on the right;
/// `step = 1` is the base-q reading, which does not hold.
pub fn quintuple_relation_with(p: &ParamPoint, n: usize, step: i64) -> Result<QSeries> {
    let z = nonzero(p, "z")?;
    let zi = z.recip()?;
    let z2 = &z * &z;
    let zi2 = &zi * &zi;
    let lhs = product(&[
        inf_poch(&-z.clone(), 0, 1, n)?,
        inf_poch(&-zi.clone(), 1, 1, n)?,
        inf_poch_recip(&z2, 1, 1, n)?,
        inf_poch_recip(&zi2, 0, 1, n)?,
    ]);
    let rhs = product(&[
        inf_poch_recip(&z2, 1, 2, n)?,
        inf_poch_recip(&z, 0, 1, n)?,
        inf_poch_recip(&zi2, 1, step, n)?,
        inf_poch_recip(&zi, 1, 1, n)?,
    ])
    .scale(&-z2.clone());
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(name: &str, v: QRational) -> ParamPoint {
        ParamPoint::new().with(name, v)
    }

    fn rat(n: i64, d: i64) -> QRational {
        QRational::new(n, d).unwrap()
    }

    #[test]
    fn jacobi_at_one_order_one() {
        let r = jacobi_triple(&at("z", rat(1, 1)), 1).unwrap();
        assert_eq!(r.order(), 1);
        assert!(r.is_zero());
        // Oracle: product side (q^2;q^2)(-q;q^2)^2 = 1 + 2q + O(q^2).
        let rhs = product(&[
            inf_poch(&QRational::one(), 2, 2, 1).unwrap(),
            inf_poch(&rat(-1, 1), 1, 2, 1).unwrap(),
            inf_poch(&rat(-1, 1), 1, 2, 1).unwrap(),
        ]);
        assert_eq!(rhs.coeffs(), &[rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn fixed_points_vanish() {
        assert!(quintuple(&at("z", rat(2, 3)), 40).unwrap().is_zero());
        assert!(ab00(&at("z", rat(1, 5)), 40).unwrap().is_zero());
        assert!(ab11(&at("z", rat(-7, 2)), 40).unwrap().is_zero());
        assert!(lebesgue_inf(&at("a", rat(3, 4)), 40).unwrap().is_zero());
        let p = ParamPoint::new().with("a", rat(5, 3)).with("b", rat(-2, 7));
        assert!(q_kummer(&p, 40).unwrap().is_zero());
        assert!(jacobi_relation(&at("z", rat(3, 5)), 40).unwrap().is_zero());
        assert!(quintuple_relation(&at("z", rat(3, 5)), 40).unwrap().is_zero());
    }

    #[test]
    fn wrong_sign_is_detected() {
        // Flipping z in the product side of the triple product.
        let z = rat(2, 3);
        let n = 20;
        let lhs = &jacobi_triple(&at("z", z.clone()), n).unwrap()
            + &product(&[
                inf_poch(&QRational::one(), 2, 2, n).unwrap(),
                inf_poch(&-z.recip().unwrap(), 1, 2, n).unwrap(),
                inf_poch(&-z.clone(), 1, 2, n).unwrap(),
            ]);
        let wrong = product(&[
            inf_poch(&QRational::one(), 2, 2, n).unwrap(),
            inf_poch(&z.recip().unwrap(), 1, 2, n).unwrap(),
            inf_poch(&z, 1, 2, n).unwrap(),
        ]);
        assert!(!(lhs - wrong).is_zero());
    }

    #[test]
    fn quintuple_relation_base_q_reading_fails() {
        let p = at("z", rat(3, 5));
        assert!(quintuple_relation_with(&p, 10, 2).unwrap().is_zero());
        assert!(!quintuple_relation_with(&p, 10, 1).unwrap().is_zero());
    }

    #[test]
    fn kummer_needs_nonzero_b() {
        let p = ParamPoint::new().with("a", rat(1, 2)).with("b", QRational::zero());
        assert!(q_kummer(&p, 10).unwrap_err().is_pole());
    }

    #[test]
    fn order_monotonicity() {
        for s in list_series() {
            let mut p = ParamPoint::new();
            for (i, name) in s.symbols.iter().enumerate() {
                p.set(name, rat(3 + i as i64, 7));
            }
            let r60 = s.residual(&p, 60).unwrap();
            let r40 = s.residual(&p, 40).unwrap();
            assert_eq!(r60.truncate(40), r40, "{}", s.id);
        }
    }

    #[test]
    fn unknown_and_oversized() {
        let p = at("z", rat(1, 2));
        assert!(matches!(infinite_identity_residual("nope", &p, 5), Err(Error::UnknownSeries(_))));
        assert!(matches!(infinite_identity_residual("quintuple", &p, 10_000), Err(Error::CostGuard(_))));
    }
}
