use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{find_series, QSeries, DEFAULT_ORDER, MAX_ORDER};
use crate::error::{Error, Result};
use crate::identities::sampling::{random_rational, trial_rng, DEFAULT_MAX_ABS};
use crate::identities::Status;
use crate::qcore::{ParamPoint, QRational};

#[derive(Clone, Debug)]
pub struct SeriesOptions {
    pub order: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_abs: i64,
    pub retry_cap: u32,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { order: DEFAULT_ORDER, trials: 5, seed: 42, max_abs: DEFAULT_MAX_ABS, retry_cap: 100 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesFailure {
    pub trial: u64,
    pub point: ParamPoint,
    /// Lowest power of `q` with a nonzero residual coefficient.
    pub exponent: usize,
    pub coefficient: QRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub id: String,
    pub status: Status,
    pub order: usize,
    pub trials: u64,
    pub attempted: u64,
    pub succeeded: u64,
    pub rejected: u64,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub failure: Option<SeriesFailure>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct TrialResult {
    outcome: Option<(ParamPoint, QSeries)>,
    attempts: u64,
    rejected: u64,
}

/// Checks one infinite identity to `opts.order` at `opts.trials` random
/// specializations of its symbols.
pub fn check_series(id: &str, opts: &SeriesOptions) -> Result<SeriesReport> {
    let start = Instant::now();
    let ident = find_series(id)?;
    if opts.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if opts.max_abs < 2 {
        return Err(Error::Config("max_abs must be at least 2".into()));
    }
    if opts.order > MAX_ORDER {
        return Err(Error::CostGuard(format!("series order {} exceeds {MAX_ORDER}", opts.order)));
    }
    let results: Vec<TrialResult> = (0..opts.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(opts.seed, id, trial);
            let mut res = TrialResult { outcome: None, attempts: 0, rejected: 0 };
            for _ in 0..opts.retry_cap.max(1) {
                res.attempts += 1;
                let mut p = ParamPoint::new();
                for name in ident.symbols {
                    p.set(name, random_rational(&mut rng, opts.max_abs));
                }
                match ident.residual(&p, opts.order) {
                    Ok(s) => {
                        res.outcome = Some((p, s));
                        return Ok(res);
                    }
                    Err(e) if e.is_pole() => res.rejected += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok(res)
        })
        .collect::<Result<_>>()?;
    let mut report = SeriesReport {
        id: id.to_string(),
        status: Status::Pass,
        order: opts.order,
        trials: opts.trials,
        attempted: 0,
        succeeded: 0,
        rejected: 0,
        seed: opts.seed,
        elapsed_ms: 0,
        failure: None,
    };
    let mut exhausted = false;
    for (trial, t) in results.into_iter().enumerate() {
        report.attempted += t.attempts;
        report.rejected += t.rejected;
        match t.outcome {
            Some((p, s)) => match s.first_nonzero() {
                None => report.succeeded += 1,
                Some((exponent, c)) => {
                    if report.failure.is_none() {
                        report.failure = Some(SeriesFailure { trial: trial as u64, point: p, exponent, coefficient: c.clone() });
                    }
                }
            },
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psers::series_ids;

    #[test]
    fn all_series_pass_at_order_60() {
        let opts = SeriesOptions { trials: 2, ..Default::default() };
        for id in series_ids() {
            let rep = check_series(id, &opts).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep.failure);
            assert_eq!(rep.succeeded, 2);
        }
    }

    #[test]
    fn relations_pass() {
        for id in ["jacobi_relation", "quintuple_relation"] {
            assert!(check_series(id, &SeriesOptions { trials: 3, ..Default::default() }).unwrap().passed());
        }
    }

    #[test]
    fn config_errors() {
        let opts = SeriesOptions { order: MAX_ORDER + 1, ..Default::default() };
        assert!(matches!(check_series("ab00", &opts), Err(Error::CostGuard(_))));
        let opts = SeriesOptions { trials: 0, ..Default::default() };
        assert!(matches!(check_series("ab00", &opts), Err(Error::Config(_))));
    }
}
