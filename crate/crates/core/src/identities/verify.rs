use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::formulas::check_multisum_cost;
use super::sampling::{random_base, random_rational, trial_rng, DEFAULT_MAX_ABS};
use super::{resolve, IndexRule, Resolved};
use crate::error::{Error, Result};
use crate::qcore::{x_name, ParamPoint, QRational};

/// Deliberate corruption of the right side, used to check that the harness
/// can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    #[default]
    None,
    ScaleRhsByQ,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trials: u64,
    pub seed: u64,
    pub max_abs: i64,
    pub retry_cap: u32,
    /// Upper bounds overriding the descriptor's default ranges.
    pub index_max: BTreeMap<String, i64>,
    pub mutation: Mutation,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 20,
            seed: 42,
            max_abs: DEFAULT_MAX_ABS,
            retry_cap: 100,
            index_max: BTreeMap::new(),
            mutation: Mutation::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    RetryExhausted,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::RetryExhausted => "RETRY_EXHAUSTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub point: ParamPoint,
    pub lhs: QRational,
    pub rhs: QRational,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub trials: u64,
    /// Points drawn, including the ones rejected at a pole.
    pub attempted: u64,
    pub succeeded: u64,
    pub rejected: u64,
    /// Rejections raised during evaluation rather than by the guard.
    pub unguarded_poles: u64,
    pub seed: u64,
    /// Largest value drawn for each index.
    pub max_indices: BTreeMap<String, i64>,
    pub elapsed_ms: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn into_result(self) -> Result<Self> {
        match self.status {
            Status::Pass => Ok(self),
            Status::Fail => {
                let c = self.counterexample.as_ref();
                Err(Error::CounterexampleFound {
                    id: self.id.clone(),
                    trial: c.map_or(0, |c| c.trial),
                    point: c.map_or_else(String::new, |c| c.point.to_string()),
                })
            }
            Status::RetryExhausted => Err(Error::RetryExhausted { id: self.id.clone(), trial: self.attempted, retries: 0 }),
        }
    }
}

enum Outcome {
    Pass,
    Fail(Box<Counterexample>),
    Exhausted,
}

struct TrialResult {
    outcome: Outcome,
    attempts: u64,
    rejected: u64,
    unguarded: u64,
    indices: BTreeMap<String, i64>,
}

fn index_bounds(r: &Resolved, opts: &VerifyOptions) -> Result<BTreeMap<&'static str, (i64, i64)>> {
    let mut out = BTreeMap::new();
    for rule in r.descriptor.indices {
        if let IndexRule::Range(name) = rule {
            let (lo, default_hi) = r.descriptor.default_range(name).unwrap_or((0, 0));
            let hi = opts.index_max.get(*name).copied().unwrap_or(default_hi);
            if hi < lo {
                return Err(Error::Config(format!("{}: upper bound {hi} for `{name}` is below {lo}", r.id)));
            }
            out.insert(*name, (lo, hi));
        }
    }
    Ok(out)
}

/// Rejects index ranges whose largest multi-sum exceeds the cost guard.
fn check_cost(r: &Resolved, bounds: &BTreeMap<&'static str, (i64, i64)>) -> Result<()> {
    if !r.descriptor.x_vector {
        return Ok(());
    }
    let r_hi = bounds.get("r").map_or(0, |b| b.1);
    let n_hi = bounds.get("n").map_or(1, |b| b.1);
    check_multisum_cost(n_hi, r_hi)
}

fn sample_point<R: Rng>(r: &Resolved, bounds: &BTreeMap<&'static str, (i64, i64)>, max_abs: i64, rng: &mut R) -> ParamPoint {
    let mut p = ParamPoint::new();
    for rule in r.descriptor.indices {
        let v = match *rule {
            IndexRule::Range(name) => {
                let (lo, hi) = bounds[name];
                rng.gen_range(lo..=hi)
            }
            IndexRule::Between { neg_lo, hi, .. } => {
                let lo = -p.indices[neg_lo];
                rng.gen_range(lo..=p.indices[hi])
            }
        };
        p.set_index(rule.name(), v);
    }
    for name in r.sampled_symbols() {
        let v = if name == "q" { random_base(rng, max_abs) } else { random_rational(rng, max_abs) };
        p.set(name, v);
    }
    if r.descriptor.x_vector {
        let count = p.indices.get("r").copied().unwrap_or(0).max(0) as usize;
        for i in 1..=count {
            p.set(&x_name(i), random_rational(rng, max_abs));
        }
    }
    p
}

fn run_trial(r: &Resolved, bounds: &BTreeMap<&'static str, (i64, i64)>, opts: &VerifyOptions, trial: u64) -> Result<TrialResult> {
    let mut rng = trial_rng(opts.seed, r.id, trial);
    let mut res = TrialResult { outcome: Outcome::Exhausted, attempts: 0, rejected: 0, unguarded: 0, indices: BTreeMap::new() };
    for _ in 0..opts.retry_cap.max(1) {
        res.attempts += 1;
        let raw = sample_point(r, bounds, opts.max_abs, &mut rng);
        let point = match r.prepare(&raw) {
            Ok(p) => p,
            Err(e) if e.is_pole() => {
                res.rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (lhs, mut rhs) = match r.eval_prepared(&point) {
            Ok(v) => v,
            Err(e) if e.is_pole() => {
                res.rejected += 1;
                res.unguarded += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if opts.mutation == Mutation::ScaleRhsByQ {
            rhs *= point.q()?;
        }
        res.indices = point.indices.clone();
        let mut reason = None;
        if lhs != rhs {
            reason = Some("lhs != rhs".to_string());
        } else if r.descriptor.x_independent {
            if let Some(msg) = x_independence(r, &point, &lhs, opts.max_abs, &mut rng)? {
                reason = Some(msg);
            }
        }
        res.outcome = match reason {
            None => Outcome::Pass,
            Some(reason) => Outcome::Fail(Box::new(Counterexample { trial, point, lhs, rhs, reason })),
        };
        return Ok(res);
    }
    Ok(res)
}

/// Re-evaluates the left side at a fresh x-vector. A pole there is skipped.
fn x_independence<R: Rng>(r: &Resolved, point: &ParamPoint, lhs: &QRational, max_abs: i64, rng: &mut R) -> Result<Option<String>> {
    let mut other = point.clone();
    let count = point.idx("r")?.max(0) as usize;
    for i in 1..=count {
        other.set(&x_name(i), random_rational(rng, max_abs));
    }
    let value = match r.prepare(&other).and_then(|p| (r.descriptor.lhs)(&p)) {
        Ok(v) => v,
        Err(e) if e.is_pole() => return Ok(None),
        Err(e) => return Err(e),
    };
    if &value != lhs {
        return Ok(Some(format!("lhs depends on x: {value} at {other}")));
    }
    Ok(None)
}

/// Checks `id` at `opts.trials` random points. Trials run in parallel; each
/// owns a generator derived from `(seed, id, trial)`, so the report does not
/// depend on scheduling.
pub fn verify(id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let r = resolve(id)?;
    if opts.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if opts.max_abs < 2 {
        return Err(Error::Config("max_abs must be at least 2".into()));
    }
    let bounds = index_bounds(&r, opts)?;
    check_cost(&r, &bounds)?;
    let results: Vec<TrialResult> = (0..opts.trials).into_par_iter().map(|t| run_trial(&r, &bounds, opts, t)).collect::<Result<_>>()?;

    let mut report = VerificationReport {
        id: r.id.to_string(),
        status: Status::Pass,
        trials: opts.trials,
        attempted: 0,
        succeeded: 0,
        rejected: 0,
        unguarded_poles: 0,
        seed: opts.seed,
        max_indices: BTreeMap::new(),
        elapsed_ms: 0,
        counterexample: None,
    };
    let mut exhausted = false;
    for t in results {
        report.attempted += t.attempts;
        report.rejected += t.rejected;
        report.unguarded_poles += t.unguarded;
        for (k, v) in t.indices {
            let e = report.max_indices.entry(k).or_insert(v);
            *e = (*e).max(v);
        }
        match t.outcome {
            Outcome::Pass => report.succeeded += 1,
            Outcome::Fail(c) => {
                if report.counterexample.is_none() {
                    report.counterexample = Some(*c);
                }
            }
            Outcome::Exhausted => exhausted = true,
        }
    }
    report.status = if report.counterexample.is_some() {
        Status::Fail
    } else if exhausted {
        Status::RetryExhausted
    } else {
        Status::Pass
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(trials: u64, seed: u64) -> VerifyOptions {
        VerifyOptions { trials, seed, ..Default::default() }
    }

    #[test]
    fn jackson_passes() {
        let mut o = opts(20, 42);
        o.index_max.insert("n".into(), 6);
        let rep = verify("jackson_8phi7", &o).unwrap();
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
        assert_eq!(rep.succeeded, 20);
        assert!(rep.succeeded + rep.rejected <= rep.attempted);
    }

    #[test]
    fn mutation_is_caught_on_first_trial() {
        let mut o = opts(5, 42);
        o.mutation = Mutation::ScaleRhsByQ;
        let rep = verify("jackson_8phi7", &o).unwrap();
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.counterexample.as_ref().unwrap().trial, 0);
        assert!(matches!(rep.into_result(), Err(Error::CounterexampleFound { .. })));
    }

    #[test]
    fn report_is_reproducible() {
        let a = verify("schlosser_cr", &opts(6, 9)).unwrap();
        let b = verify("schlosser_cr", &opts(6, 9)).unwrap();
        assert_eq!(a.attempted, b.attempted);
        assert_eq!(a.max_indices, b.max_indices);
        assert_eq!(a.status, Status::Pass, "{a:?}");
    }

    #[test]
    fn cost_guard_rejects_large_boxes() {
        let mut o = opts(1, 1);
        o.index_max.insert("r".into(), 4);
        o.index_max.insert("n".into(), 7);
        assert!(matches!(verify("schlosser_cr", &o), Err(Error::CostGuard(_))));
        o.index_max.insert("n".into(), -1);
        assert!(matches!(verify("schlosser_cr", &o), Err(Error::Config(_))));
        assert!(matches!(verify("jackson_8phi7", &opts(0, 1)), Err(Error::Config(_))));
    }
}
