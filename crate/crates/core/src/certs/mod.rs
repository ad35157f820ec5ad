//! Replay of the inductive proofs: term recurrences, telescoping
//! anti-differences, boundary sums and level-by-level induction.
//!
//! A scalar certificate describes a summand `F_{n,k}` satisfying
//!
//! `F_{n,k}(p) = sum_t c_t(p, n) F_{n - level_t, k - k_offset_t}(shift^{s_t} p)`
//!
//! with coefficients independent of `k`. The right side is either a closed
//! form `S_n(p)` or a sum of `G_{n,k}` obeying the same recurrence up to
//! `H_{n,k} - H_{n,k-1}`. The C_r Jackson sum uses vector indices and has its
//! own module.

mod run;
pub mod schlosser;
mod single;

pub use run::{certify, CertFailure, CertReport, CertifyOptions};
pub use single::*;

#[cfg(test)]
mod tests;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qcore::{ParamPoint, QRational};

pub type TermFn = fn(&ParamPoint, i64, i64) -> Result<QRational>;
pub type LevelFn = fn(&ParamPoint, i64) -> Result<QRational>;
pub type ShiftFn = fn(&ParamPoint) -> Result<ParamPoint>;

/// One term `c(p, n) X_{n - level, k - k_offset}(shift^s p)` of a recurrence.
#[derive(Clone, Copy)]
pub struct RecTerm {
    pub coeff: LevelFn,
    pub negate: bool,
    pub level: i64,
    pub k_offset: i64,
    /// Number of parameter shifts applied (0 or 1).
    pub shifts: usize,
}

impl RecTerm {
    fn coefficient(&self, p: &ParamPoint, n: i64) -> Result<QRational> {
        let c = (self.coeff)(p, n)?;
        Ok(if self.negate { -c } else { c })
    }
}

/// A named extra residual the proof relies on, checked like the main one.
#[derive(Clone, Copy)]
pub struct AuxCheck {
    pub name: &'static str,
    pub residual: TermFn,
    pub min_n: i64,
}

pub struct ProofCertificate {
    pub id: &'static str,
    pub title: &'static str,
    /// Symbols sampled for a random point. `q` is the base.
    pub symbols: &'static [&'static str],
    /// `F_{n,k}`.
    pub term: TermFn,
    /// `G_{n,k}` when the right side is itself a sum.
    pub rhs_term: Option<TermFn>,
    /// `S_n` when the right side is a closed form.
    pub closed_form: Option<LevelFn>,
    /// Parameter map `(a_1..a_s) -> (b_1..b_s)`; never touches indices.
    pub shift: ShiftFn,
    pub recurrence: &'static [RecTerm],
    /// `H_{n,k}`.
    pub anti_diff: Option<TermFn>,
    /// Number of lower levels the recurrence reaches back (1, or 2 for a
    /// three-term recurrence).
    pub order: i64,
    pub aux: &'static [AuxCheck],
}

impl std::fmt::Debug for ProofCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProofCertificate").field("id", &self.id).finish_non_exhaustive()
    }
}

impl ProofCertificate {
    /// `F_{n,k}` with the `k < 0`, `k > n`, `n < 0` conventions.
    pub fn f(&self, p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
        if n < 0 || k < 0 || k > n {
            return Ok(QRational::zero());
        }
        (self.term)(p, n, k)
    }

    /// `G_{n,k}` with the same conventions.
    pub fn g(&self, p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
        let Some(g) = self.rhs_term else {
            return Err(Error::Config(format!("{} has no right-side summand", self.id)));
        };
        if n < 0 || k < 0 || k > n {
            return Ok(QRational::zero());
        }
        g(p, n, k)
    }

    /// `H_{n,k}`, zero for `k < 0`.
    pub fn h(&self, p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
        let Some(h) = self.anti_diff else {
            return Err(Error::Config(format!("{} has no anti-difference", self.id)));
        };
        if k < 0 {
            return Ok(QRational::zero());
        }
        h(p, n, k)
    }

    /// `shift^count p`.
    pub fn shifted(&self, p: &ParamPoint, count: usize) -> Result<ParamPoint> {
        let mut out = p.clone();
        for _ in 0..count {
            out = (self.shift)(&out)?;
        }
        Ok(out)
    }

    /// The right side `S_n`: the closed form, or the sum of `G_{n,k}`.
    pub fn s(&self, p: &ParamPoint, n: i64) -> Result<QRational> {
        if let Some(cf) = self.closed_form {
            return cf(p, n);
        }
        (0..=n).map(|k| self.g(p, n, k)).sum()
    }

    pub fn lhs_sum(&self, p: &ParamPoint, n: i64) -> Result<QRational> {
        (0..=n).map(|k| self.f(p, n, k)).sum()
    }

    /// `sum_t c_t X_{n - level_t, k - k_offset_t}(shift p)` for `X` = F or G.
    fn recurrence_rhs(
        &self,
        p: &ParamPoint,
        n: i64,
        k: i64,
        x: fn(&Self, &ParamPoint, i64, i64) -> Result<QRational>,
    ) -> Result<QRational> {
        let shifted = (self.shift)(p)?;
        let mut total = QRational::zero();
        for t in self.recurrence {
            let target = if t.shifts == 0 { p } else { &shifted };
            let value = x(self, target, n - t.level, k - t.k_offset)?;
            if value.is_zero() {
                continue;
            }
            total += t.coefficient(p, n)? * value;
        }
        Ok(total)
    }

    /// The smallest `n` at which the recurrence is stated.
    pub fn min_n(&self) -> i64 {
        self.order
    }
}

/// `F_{n,k} - sum_t c_t F_{n - level_t, k - k_offset_t}(shifted)`.
pub fn term_recurrence_residual(cert: &ProofCertificate, p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    Ok(cert.f(p, n, k)? - cert.recurrence_rhs(p, n, k, ProofCertificate::f)?)
}

/// `G_{n,k} - sum_t c_t G_{...}(shifted) - (H_{n,k} - H_{n,k-1})`.
pub fn telescoping_residual(cert: &ProofCertificate, p: &ParamPoint, n: i64, k: i64) -> Result<QRational> {
    let lhs = cert.g(p, n, k)? - cert.recurrence_rhs(p, n, k, ProofCertificate::g)?;
    Ok(lhs - (cert.h(p, n, k)? - cert.h(p, n, k - 1)?))
}

/// The telescoped difference summed over `0..=n` vanishes.
pub fn boundary_check(cert: &ProofCertificate, p: &ParamPoint, n: i64) -> Result<bool> {
    let mut total = QRational::zero();
    for k in 0..=n {
        total += cert.g(p, n, k)? - cert.recurrence_rhs(p, n, k, ProofCertificate::g)?;
    }
    Ok(total.is_zero())
}

/// Outcome of an induction replay.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplayOutcome {
    /// First level whose propagated value disagrees, if any.
    pub mismatch: Option<i64>,
    /// Propagated `S_n` for `n = 0..=n_max`.
    pub values: Vec<QRational>,
}

impl ReplayOutcome {
    pub fn ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Rebuilds `S_n` from the base levels with the recurrence of the summand and
/// checks it against the directly evaluated right side and the left sum at
/// every level up to `n_max`.
pub fn replay(cert: &ProofCertificate, p: &ParamPoint, n_max: i64) -> Result<ReplayOutcome> {
    let mut memo: HashMap<(i64, usize), QRational> = HashMap::new();
    let mut values = Vec::new();
    let mut mismatch = None;
    for n in 0..=n_max {
        let v = propagated(cert, p, n, 0, &mut memo)?;
        let direct = cert.s(p, n)?;
        if mismatch.is_none() && (v != direct || cert.lhs_sum(p, n)? != v) {
            mismatch = Some(n);
        }
        values.push(v);
    }
    Ok(ReplayOutcome { mismatch, values })
}

fn propagated(
    cert: &ProofCertificate,
    p: &ParamPoint,
    n: i64,
    shifts: usize,
    memo: &mut HashMap<(i64, usize), QRational>,
) -> Result<QRational> {
    if let Some(v) = memo.get(&(n, shifts)) {
        return Ok(v.clone());
    }
    let here = cert.shifted(p, shifts)?;
    let v = if n < cert.order {
        cert.s(&here, n)?
    } else {
        let mut total = QRational::zero();
        for t in cert.recurrence {
            let c = t.coefficient(&here, n)?;
            total += c * propagated(cert, p, n - t.level, shifts + t.shifts, memo)?;
        }
        total
    };
    memo.insert((n, shifts), v.clone());
    Ok(v)
}

/// True iff every level up to `n_max` replays exactly.
pub fn inductive_replay(cert: &ProofCertificate, p: &ParamPoint, n_max: i64) -> Result<bool> {
    Ok(replay(cert, p, n_max)?.ok())
}

/// The six scalar certificates, followed by the vector one in [`schlosser`].
pub fn list_certificates() -> &'static [ProofCertificate] {
    &single::CERTIFICATES
}

pub fn find_certificate(id: &str) -> Result<&'static ProofCertificate> {
    list_certificates().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownProof(id.to_string()))
}

/// All proof ids, scalar ones first.
pub fn all_proof_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = list_certificates().iter().map(|c| c.id).collect();
    ids.push(schlosser::PROOF_ID);
    ids
}
