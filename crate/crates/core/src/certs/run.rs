use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{boundary_check, find_certificate, replay, schlosser, telescoping_residual, term_recurrence_residual, ProofCertificate};
use crate::error::{Error, Result};
use crate::identities::sampling::{random_base, random_rational, trial_rng, DEFAULT_MAX_ABS};
use crate::identities::Status;
use crate::qcore::{x_name, ParamPoint, QRational};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub trials: u64,
    pub seed: u64,
    /// Largest `n` for term and telescoping residuals.
    pub n_max: i64,
    /// Largest `n` for the induction replay.
    pub replay_n_max: i64,
    /// Largest `r` for the C_r certificate.
    pub r_max: i64,
    pub max_abs: i64,
    pub retry_cap: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            trials: 20,
            seed: 42,
            n_max: 6,
            replay_n_max: 5,
            r_max: schlosser::MAX_R,
            max_abs: DEFAULT_MAX_ABS,
            retry_cap: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertFailure {
    pub trial: u64,
    pub point: ParamPoint,
    pub check: String,
    pub residual: Option<QRational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub id: String,
    pub status: Status,
    pub trials: u64,
    pub attempted: u64,
    pub succeeded: u64,
    pub rejected: u64,
    pub seed: u64,
    /// Number of exact residuals and replays evaluated.
    pub checks: u64,
    pub elapsed_ms: u64,
    pub failure: Option<CertFailure>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Failure {
    check: String,
    residual: Option<QRational>,
}

enum Outcome {
    Pass(u64),
    Fail(Failure),
}

fn fail(check: String, residual: Option<QRational>) -> Outcome {
    Outcome::Fail(Failure { check, residual })
}

fn sample(symbols: &[&str], max_abs: i64, rng: &mut rand_chacha::ChaCha8Rng) -> ParamPoint {
    let mut p = ParamPoint::new();
    for &name in symbols {
        let v = if name == "q" { random_base(rng, max_abs) } else { random_rational(rng, max_abs) };
        p.set(name, v);
    }
    p
}

fn check_scalar(cert: &ProofCertificate, p: &ParamPoint, opts: &CertifyOptions) -> Result<Outcome> {
    let mut checks = 0;
    for n in cert.min_n()..=opts.n_max {
        for k in 0..=n {
            checks += 1;
            let v = term_recurrence_residual(cert, p, n, k)?;
            if !v.is_zero() {
                return Ok(fail(format!("term n={n} k={k}"), Some(v)));
            }
            if cert.anti_diff.is_some() {
                checks += 1;
                let v = telescoping_residual(cert, p, n, k)?;
                if !v.is_zero() {
                    return Ok(fail(format!("telescoping n={n} k={k}"), Some(v)));
                }
            }
        }
        if cert.rhs_term.is_some() {
            checks += 1;
            if !boundary_check(cert, p, n)? {
                return Ok(fail(format!("boundary n={n}"), None));
            }
        }
    }
    for aux in cert.aux {
        for n in aux.min_n..=opts.n_max {
            for k in 0..=n {
                checks += 1;
                let v = (aux.residual)(p, n, k)?;
                if !v.is_zero() {
                    return Ok(fail(format!("{} n={n} k={k}", aux.name), Some(v)));
                }
            }
        }
    }
    checks += 1;
    let rep = replay(cert, p, opts.replay_n_max)?;
    if let Some(n) = rep.mismatch {
        return Ok(fail(format!("replay level {n}"), None));
    }
    Ok(Outcome::Pass(checks))
}

fn check_schlosser(p: &ParamPoint, opts: &CertifyOptions) -> Result<Outcome> {
    let n_top = opts.replay_n_max.min(schlosser::MAX_N);
    let mut checks = 0;
    for n in 0..n_top {
        checks += 1;
        if let Some((check, v)) = schlosser::step_residuals(p, n)? {
            return Ok(fail(format!("{check} n={n}"), Some(v)));
        }
    }
    checks += 1;
    if !schlosser::inductive_replay(p, n_top)? {
        return Ok(fail("replay".into(), None));
    }
    Ok(Outcome::Pass(checks))
}

struct TrialResult {
    outcome: Option<(Outcome, ParamPoint)>,
    attempts: u64,
    rejected: u64,
}

fn run_trial(id: &str, cert: Option<&ProofCertificate>, opts: &CertifyOptions, trial: u64) -> Result<TrialResult> {
    let mut rng = trial_rng(opts.seed, id, trial);
    let mut res = TrialResult { outcome: None, attempts: 0, rejected: 0 };
    for _ in 0..opts.retry_cap.max(1) {
        res.attempts += 1;
        let (p, outcome) = match cert {
            Some(c) => {
                let p = sample(c.symbols, opts.max_abs, &mut rng);
                let o = check_scalar(c, &p, opts);
                (p, o)
            }
            None => {
                let mut p = sample(&["a", "b", "c", "d", "q"], opts.max_abs, &mut rng);
                let r = opts.r_max;
                for i in 1..=r as usize {
                    p.set(&x_name(i), random_rational(&mut rng, opts.max_abs));
                }
                // Every r up to r_max at the same base point.
                let mut o = Ok(Outcome::Pass(0));
                let mut total = 0;
                for rr in 1..=r {
                    let mut pr = p.clone();
                    pr.set_index("r", rr);
                    match check_schlosser(&pr, opts) {
                        Ok(Outcome::Pass(c)) => total += c,
                        other => {
                            o = other;
                            break;
                        }
                    }
                }
                if let Ok(Outcome::Pass(_)) = o {
                    o = Ok(Outcome::Pass(total));
                }
                p.set_index("r", r);
                (p, o)
            }
        };
        match outcome {
            Ok(o) => {
                res.outcome = Some((o, p));
                return Ok(res);
            }
            Err(e) if e.is_pole() => res.rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(res)
}

/// Replays one proof certificate at `opts.trials` random points.
pub fn certify(id: &str, opts: &CertifyOptions) -> Result<CertReport> {
    let start = Instant::now();
    let cert = if id == schlosser::PROOF_ID {
        if !(1..=schlosser::MAX_R).contains(&opts.r_max) {
            return Err(Error::CostGuard(format!("C_r certificate runs at 1 <= r <= {}", schlosser::MAX_R)));
        }
        None
    } else {
        Some(find_certificate(id)?)
    };
    if opts.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if opts.max_abs < 2 {
        return Err(Error::Config("max_abs must be at least 2".into()));
    }
    if opts.n_max < 1 || opts.replay_n_max < 1 {
        return Err(Error::Config("certificate levels start at n = 1".into()));
    }
    if opts.n_max > 12 || opts.replay_n_max > 12 {
        return Err(Error::CostGuard("certificate levels are capped at n = 12".into()));
    }
    let results: Vec<TrialResult> = (0..opts.trials).into_par_iter().map(|t| run_trial(id, cert, opts, t)).collect::<Result<_>>()?;
    let mut report = CertReport {
        id: id.to_string(),
        status: Status::Pass,
        trials: opts.trials,
        attempted: 0,
        succeeded: 0,
        rejected: 0,
        seed: opts.seed,
        checks: 0,
        elapsed_ms: 0,
        failure: None,
    };
    let mut exhausted = false;
    for (trial, t) in results.into_iter().enumerate() {
        report.attempted += t.attempts;
        report.rejected += t.rejected;
        match t.outcome {
            Some((Outcome::Pass(c), _)) => {
                report.succeeded += 1;
                report.checks += c;
            }
            Some((Outcome::Fail(f), point)) => {
                if report.failure.is_none() {
                    report.failure = Some(CertFailure { trial: trial as u64, point, check: f.check, residual: f.residual });
                }
            }
            None => exhausted = true,
        }
    }
    report.status = if report.failure.is_some() {
        Status::Fail
    } else if exhausted {
        Status::RetryExhausted
    } else {
        Status::Pass
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
