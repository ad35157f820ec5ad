//! Registry of terminating identities, exact side evaluators and the
//! random-point verifier.

pub mod formulas;
mod registry;
pub mod sampling;
mod verify;

pub use verify::{verify, Counterexample, Mutation, Status, VerificationReport, VerifyOptions};

use crate::error::{Error, Result};
use crate::qcore::{ParamPoint, QRational};

pub type SideFn = fn(&ParamPoint) -> Result<QRational>;
pub type GuardFn = fn(&ParamPoint) -> Result<Vec<QRational>>;

/// `name := rule`, enforced by substitution before evaluation.
#[derive(Clone, Copy)]
pub struct DerivedSymbol {
    pub name: &'static str,
    pub rule: &'static str,
    pub apply: fn(&mut ParamPoint) -> Result<()>,
}

/// How an integer index is sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexRule {
    /// Uniform over the configured range for `name`.
    Range(&'static str),
    /// Uniform over `-neg_lo ..= hi`, both bounds read from already sampled indices.
    Between { name: &'static str, neg_lo: &'static str, hi: &'static str },
}

impl IndexRule {
    pub fn name(&self) -> &'static str {
        match self {
            IndexRule::Range(n) => n,
            IndexRule::Between { name, .. } => name,
        }
    }
}

/// An alias that pins some symbols or indices of its parent descriptor.
#[derive(Clone, Copy, Debug)]
pub struct Specialization {
    pub alias: &'static str,
    pub fixed_symbols: &'static [(&'static str, i64)],
    pub fixed_indices: &'static [(&'static str, i64)],
}

impl Specialization {
    fn apply(&self, p: &mut ParamPoint) {
        for &(name, v) in self.fixed_symbols {
            p.set(name, QRational::from_int(v));
        }
        for &(name, v) in self.fixed_indices {
            p.set_index(name, v);
        }
    }

    fn fixes(&self, name: &str) -> bool {
        self.fixed_symbols.iter().any(|(n, _)| *n == name)
    }
}

pub struct IdentityDescriptor {
    pub id: &'static str,
    pub title: &'static str,
    /// Symbols sampled independently. `q` is always the base.
    pub free_symbols: &'static [&'static str],
    /// Takes `x1..xr` in addition to `free_symbols`.
    pub x_vector: bool,
    /// The left side does not depend on `x1..xr`; the verifier spot-checks this.
    pub x_independent: bool,
    pub derived_symbols: &'static [DerivedSymbol],
    pub indices: &'static [IndexRule],
    /// Default `(lo, hi)` per `Range` index.
    pub default_ranges: &'static [(&'static str, i64, i64)],
    pub lhs: SideFn,
    pub rhs: SideFn,
    /// Factors that must be nonzero at the derived point.
    pub pole_guard: GuardFn,
    pub specializations: &'static [Specialization],
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor").field("id", &self.id).finish_non_exhaustive()
    }
}

impl IdentityDescriptor {
    pub fn index_names(&self) -> Vec<&'static str> {
        self.indices.iter().map(IndexRule::name).collect()
    }

    pub fn default_range(&self, name: &str) -> Option<(i64, i64)> {
        self.default_ranges.iter().find(|(n, _, _)| *n == name).map(|&(_, lo, hi)| (lo, hi))
    }

    /// Applies derived symbols in order.
    pub fn derive(&self, p: &mut ParamPoint) -> Result<()> {
        for d in self.derived_symbols {
            (d.apply)(p)?;
        }
        Ok(())
    }

    /// `Err(Pole)` naming the first vanishing guard factor.
    pub fn check_guards(&self, p: &ParamPoint) -> Result<()> {
        let factors = (self.pole_guard)(p)?;
        match factors.iter().position(QRational::is_zero) {
            Some(i) => Err(Error::pole(format!("{}: guard factor #{i} vanishes", self.id))),
            None => Ok(()),
        }
    }
}

/// An identity id resolved to its descriptor and optional specialization.
#[derive(Clone, Copy, Debug)]
pub struct Resolved {
    pub id: &'static str,
    pub descriptor: &'static IdentityDescriptor,
    pub specialization: Option<&'static Specialization>,
}

impl Resolved {
    /// Copies the point, pins specialization values, derives constrained
    /// symbols and checks the pole guard.
    pub fn prepare(&self, point: &ParamPoint) -> Result<ParamPoint> {
        let mut p = point.clone();
        if let Some(s) = self.specialization {
            s.apply(&mut p);
        }
        self.descriptor.derive(&mut p)?;
        self.descriptor.check_guards(&p)?;
        Ok(p)
    }

    /// Free symbols that are actually sampled (specialization pins excluded).
    pub fn sampled_symbols(&self) -> Vec<&'static str> {
        self.descriptor.free_symbols.iter().copied().filter(|n| !self.specialization.is_some_and(|s| s.fixes(n))).collect()
    }

    pub fn eval_prepared(&self, p: &ParamPoint) -> Result<(QRational, QRational)> {
        Ok(((self.descriptor.lhs)(p)?, (self.descriptor.rhs)(p)?))
    }
}

/// The eighteen registered descriptors.
pub fn list_identities() -> &'static [IdentityDescriptor] {
    &registry::REGISTRY
}

/// Ids and aliases accepted by [`eval_sides`] and [`verify`].
pub fn all_ids() -> Vec<&'static str> {
    let mut out = Vec::new();
    for d in list_identities() {
        out.push(d.id);
        out.extend(d.specializations.iter().map(|s| s.alias));
    }
    out
}

pub fn resolve(id: &str) -> Result<Resolved> {
    for d in list_identities() {
        if d.id == id {
            return Ok(Resolved { id: d.id, descriptor: d, specialization: None });
        }
        if let Some(s) = d.specializations.iter().find(|s| s.alias == id) {
            return Ok(Resolved { id: s.alias, descriptor: d, specialization: Some(s) });
        }
    }
    Err(Error::UnknownIdentity(id.to_string()))
}

/// Exact `(LHS, RHS)` at `point` after specialization, derivation and guard checks.
pub fn eval_sides(id: &str, point: &ParamPoint) -> Result<(QRational, QRational)> {
    let r = resolve(id)?;
    let p = r.prepare(point)?;
    r.eval_prepared(&p)
}

#[cfg(test)]
mod tests {
    use super::formulas::*;
    use super::*;
    use crate::qcore::qpoch_multi;
    use std::collections::HashSet;

    fn q(p: i64, r: i64) -> QRational {
        QRational::new(p, r).unwrap()
    }

    #[test]
    fn registry_shape() {
        let ids: Vec<_> = list_identities().iter().map(|d| d.id).collect();
        assert_eq!(ids.len(), 18);
        assert_eq!(ids.iter().collect::<HashSet<_>>().len(), 18);
        assert!(resolve("schlosser_cr").unwrap().descriptor.index_names().contains(&"r"));
        assert_eq!(resolve("lebesgue_finite_2").unwrap().descriptor.id, "andrews_jain");
        assert_eq!(all_ids().len(), 20);
        assert!(matches!(resolve("nope"), Err(Error::UnknownIdentity(_))));
        for d in list_identities() {
            for rule in d.indices {
                if let IndexRule::Range(n) = rule {
                    assert!(d.default_range(n).is_some(), "{} lacks a range for {n}", d.id);
                }
            }
        }
    }

    fn jackson_point(n: i64) -> ParamPoint {
        ParamPoint::new().with("a", q(3, 1)).with("b", q(1, 2)).with("c", q(5, 1)).with("d", q(1, 7)).with("q", q(2, 1)).with_index("n", n)
    }

    #[test]
    fn jackson_n0_is_one() {
        let (l, r) = eval_sides("jackson_8phi7", &jackson_point(0)).unwrap();
        assert!(l.is_one() && r.is_one());
    }

    #[test]
    fn jackson_n1_brute_force() {
        let (l, r) = eval_sides("jackson_8phi7", &jackson_point(1)).unwrap();
        // Two-term sum written out by hand.
        let (a, b, c, d, qq) = (q(3, 1), q(1, 2), q(5, 1), q(1, 7), q(2, 1));
        let e = &a * &a * &qq * &qq * (&b * &c * &d).recip().unwrap();
        let qn = qq.recip().unwrap();
        let aq = &a * &qq;
        let mut t1 = (&a * &qq * &qq).one_minus() * a.one_minus().recip().unwrap();
        for (u, w) in [
            (&a, &qq),
            (&b, &(&aq * b.recip().unwrap())),
            (&c, &(&aq * c.recip().unwrap())),
            (&d, &(&aq * d.recip().unwrap())),
            (&e, &(&aq * e.recip().unwrap())),
            (&qn, &(&aq * qn.recip().unwrap())),
        ] {
            t1 = t1 * u.one_minus() * w.one_minus().recip().unwrap();
        }
        let brute = QRational::one() + t1 * &qq;
        assert_eq!(l, brute);
        assert_eq!(r, brute);
    }

    #[test]
    fn trivial_cases() {
        let z = ParamPoint::new().with("z", q(3, 5)).with("q", q(-2, 7));
        let (l, r) = eval_sides("quintuple_finite", &z.clone().with_index("n", 0)).unwrap();
        assert!(l.is_one() && r.is_one());
        let (l, r) = eval_sides("jacobi_finite", &z.clone().with_index("m", 0).with_index("n", 0)).unwrap();
        assert!(l.is_one() && r.is_one());
        for n in 0..4 {
            let p = ParamPoint::new().with("a", q(2, 3)).with("q", q(5, 1)).with("x1", q(7, 2)).with_index("r", 1).with_index("n", n);
            let (l, r) = eval_sides("cr_prop_1", &p).unwrap();
            assert_eq!(l, QRational::from_int(n + 1));
            assert_eq!(r, QRational::from_int(n + 1));
        }
    }

    #[test]
    fn guard_violation_is_pole() {
        let p = jackson_point(1).with("a", QRational::one());
        assert!(eval_sides("jackson_8phi7", &p).unwrap_err().is_pole());
        assert!(matches!(eval_sides("jackson_8phi7", &ParamPoint::new()), Err(Error::MissingSymbol(_))));
    }

    fn generic() -> ParamPoint {
        ParamPoint::new()
            .with("a", q(3, 7))
            .with("b", q(-5, 2))
            .with("c", q(11, 3))
            .with("d", q(2, 13))
            .with("e", q(-17, 5))
            .with("q", q(-3, 4))
    }

    #[test]
    fn vwp_transform_matches_watson_on_both_sides() {
        for n in 0..5 {
            let p = generic().with_index("n", n);
            let (l, r) = eval_sides("vwp_transform", &p).unwrap();
            // The right side, rewritten through Watson with (lambda, lambda b/a, lambda c/a, lambda d/a, e).
            let (a, b, c, d, e) = (q(3, 7), q(-5, 2), q(11, 3), q(2, 13), q(-17, 5));
            let qq = q(-3, 4);
            let lam = &a * &a * &qq * (&b * &c * &d).recip().unwrap();
            let la = &lam * a.recip().unwrap();
            let lhs_watson = watson_rhs(&p).unwrap();
            let right_point = ParamPoint::new()
                .with("a", lam.clone())
                .with("b", &la * &b)
                .with("c", &la * &c)
                .with("d", &la * &d)
                .with("e", e.clone())
                .with("q", qq.clone())
                .with_index("n", n);
            let pre =
                poch_quotient(&[&a * &qq, &lam * &qq * e.recip().unwrap()], &[&a * &qq * e.recip().unwrap(), &lam * &qq], &qq, n).unwrap();
            let rhs_watson = pre * watson_rhs(&right_point).unwrap();
            assert_eq!(l, lhs_watson);
            assert_eq!(r, rhs_watson);
            assert_eq!(lhs_watson, rhs_watson);
        }
    }

    #[test]
    fn quintuple_forms_agree() {
        for n in 0..6 {
            let p = ParamPoint::new().with("z", q(4, 9)).with("q", q(7, 3)).with_index("n", n);
            assert_eq!(eval_sides("quintuple_finite", &p).unwrap().0, eval_sides("quintuple_ccg", &p).unwrap().0);
        }
    }

    #[test]
    fn schlosser_r1_is_rescaled_jackson() {
        let x = q(-7, 3);
        for n in 0..5 {
            let p = generic().with("x1", x.clone()).with_index("r", 1).with_index("n", n);
            let (l, r) = eval_sides("schlosser_cr", &p).unwrap();
            let jp = ParamPoint::new()
                .with("a", q(3, 7) * &x * &x)
                .with("b", q(-5, 2) * &x)
                .with("c", q(11, 3) * &x)
                .with("d", q(2, 13) * &x)
                .with("q", q(-3, 4))
                .with_index("n", n);
            let (jl, jr) = eval_sides("jackson_8phi7", &jp).unwrap();
            assert_eq!(l, jl);
            assert_eq!(r, jr);
        }
    }

    #[test]
    fn singh_variants() {
        for n in 0..5 {
            let p = ParamPoint::new()
                .with("a2", q(3, 5))
                .with("b2", q(-7, 2))
                .with("c", q(9, 4))
                .with("d", q(2, 11))
                .with("q", q(5, 3))
                .with_index("n", n);
            let (l, r) = eval_sides("singh_quadratic", &p).unwrap();
            assert_eq!(l, r);
            let (l2, r2) = eval_sides("singh_quadratic_c", &p).unwrap();
            assert_eq!(l2, r2);
        }
    }

    #[test]
    fn lebesgue_second_form_pins_b() {
        let p = ParamPoint::new().with("a", q(3, 5)).with("b", q(9, 2)).with("q", q(-4, 3)).with_index("n", 3);
        let (l, r) = eval_sides("lebesgue_finite_2", &p).unwrap();
        assert_eq!(l, r);
        let q2 = q(16, 9);
        let qq = q(-4, 3);
        let expected =
            qpoch_multi(&[q(3, 5) * &qq], &q2, 3).unwrap() * qpoch_multi(std::slice::from_ref(&qq), &q2, 3).unwrap().recip().unwrap();
        assert_eq!(r, expected);
    }
}
