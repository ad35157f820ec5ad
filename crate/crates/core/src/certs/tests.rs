use super::schlosser::{self, split_residual_with};
use super::*;
use crate::hyper::{contiguous_alpha, contiguous_beta, WellPoisedTerm};
use crate::identities::formulas::SchlosserParams;
use crate::identities::sampling::{random_base, random_rational, trial_rng};
use crate::qcore::{x_name, QRational};

fn r(n: i64, d: i64) -> QRational {
    QRational::new(n, d).unwrap()
}

fn point(pairs: &[(&str, QRational)]) -> ParamPoint {
    let mut p = ParamPoint::new();
    for (k, v) in pairs {
        p.set(k, v.clone());
    }
    p
}

fn jackson_point() -> ParamPoint {
    point(&[("a", r(3, 1)), ("b", r(1, 2)), ("c", r(5, 1)), ("d", r(1, 7)), ("q", r(2, 1))])
}

fn random_point(symbols: &[&str], trial: u64) -> ParamPoint {
    let mut rng = trial_rng(7, "certs-test", trial);
    let mut p = ParamPoint::new();
    for &s in symbols {
        let v = if s == "q" { random_base(&mut rng, 1000) } else { random_rational(&mut rng, 1000) };
        p.set(s, v);
    }
    p
}

#[test]
fn jackson_term_residual_at_fixed_point() {
    let cert = find_certificate("jackson").unwrap();
    let p = jackson_point();
    assert!(term_recurrence_residual(cert, &p, 3, 2).unwrap().is_zero());
    for n in 1..=6 {
        for k in -2..=n + 2 {
            assert!(term_recurrence_residual(cert, &p, n, k).unwrap().is_zero(), "n={n} k={k}");
        }
    }
}

#[test]
fn out_of_range_terms_vanish() {
    let p = jackson_point();
    let cert = find_certificate("jackson").unwrap();
    assert!(cert.f(&p, 3, 4).unwrap().is_zero());
    assert!(cert.f(&p, 3, -1).unwrap().is_zero());
    assert!(cert.f(&p, -1, 0).unwrap().is_zero());
}

#[test]
fn telescoping_and_boundary_at_random_points() {
    let cases = [("watson", 2, 1), ("bailey", 3, 0), ("singh", 4, 2)];
    for (id, n, k) in cases {
        let cert = find_certificate(id).unwrap();
        let p = random_point(cert.symbols, 0);
        assert!(telescoping_residual(cert, &p, n, k).unwrap().is_zero(), "{id}");
        assert!(boundary_check(cert, &p, n).unwrap(), "{id}");
    }
}

#[test]
fn every_scalar_certificate_replays() {
    for cert in list_certificates() {
        for trial in 0..2 {
            let p = random_point(cert.symbols, trial);
            let rep = replay(cert, &p, 4).unwrap();
            assert!(rep.ok(), "{} trial {trial}", cert.id);
            assert_eq!(rep.values.len(), 5);
        }
    }
}

#[test]
fn singh_first_order_relation() {
    let cert = find_certificate("singh").unwrap();
    let p = random_point(cert.symbols, 3);
    for n in 1..=5 {
        for k in 0..=n {
            assert!(singh_first_order_residual(&p, n, k).unwrap().is_zero());
        }
    }
}

#[test]
fn corrupted_coefficient_is_caught() {
    fn doubled(p: &ParamPoint, n: i64) -> crate::error::Result<QRational> {
        Ok(jackson_alpha(p, n)? * QRational::from_int(2))
    }
    static BAD: [RecTerm; 2] = [
        RecTerm { coeff: unit_coeff, negate: false, level: 1, k_offset: 0, shifts: 0 },
        RecTerm { coeff: doubled, negate: false, level: 1, k_offset: 1, shifts: 1 },
    ];
    fn unit_coeff(_: &ParamPoint, _: i64) -> crate::error::Result<QRational> {
        Ok(QRational::one())
    }
    let good = find_certificate("jackson").unwrap();
    let bad = ProofCertificate { recurrence: &BAD, ..*good };
    let p = jackson_point();
    assert!(!term_recurrence_residual(&bad, &p, 2, 1).unwrap().is_zero());
    assert_eq!(replay(&bad, &p, 3).unwrap().mismatch, Some(1));
}

#[test]
fn bailey_anti_difference_with_lambda_q_fails() {
    // Replacing (lambda;q)_n by (lambda q;q)_n in the prefactor of H.
    fn h_alt(p: &ParamPoint, n: i64, k: i64) -> crate::error::Result<QRational> {
        let mut pl = p.clone();
        crate::identities::formulas::derive_lambda(&mut pl)?;
        let lambda = pl.sym("lambda")?.clone();
        let q = pl.q()?;
        let scale = crate::qcore::ratio(&lambda.one_minus(), &(&lambda * q.pow(n)?).one_minus(), "test")?;
        Ok(bailey_h(p, n, k)? * scale)
    }
    let good = find_certificate("bailey").unwrap();
    let alt = ProofCertificate { anti_diff: Some(h_alt), ..*good };
    let p = random_point(good.symbols, 1);
    assert!(telescoping_residual(good, &p, 3, 1).unwrap().is_zero());
    assert!(!telescoping_residual(&alt, &p, 3, 1).unwrap().is_zero());
}

#[test]
fn jackson_alpha_matches_first_contiguous_coefficient() {
    let s = r(3, 2);
    let a = &s * &s;
    let p = point(&[("a", a.clone()), ("b", r(-4, 5)), ("c", r(7, 3)), ("d", r(2, 9)), ("q", r(-5, 3))]);
    let q = p.q().unwrap().clone();
    for n in 1..=5 {
        let bcd = p.sym("b").unwrap() * p.sym("c").unwrap() * p.sym("d").unwrap();
        let top = crate::qcore::ratio(&(&a * &a * q.pow(n).unwrap()), &bcd, "t").unwrap();
        let list = vec![
            a.clone(),
            &q * &s,
            -(&q * &s),
            p.sym("b").unwrap().clone(),
            p.sym("c").unwrap().clone(),
            p.sym("d").unwrap().clone(),
            top,
            q.pow(-n).unwrap(),
        ];
        let t = WellPoisedTerm::new(list, q.clone(), q.clone());
        assert_eq!(jackson_alpha(&p, n).unwrap(), contiguous_alpha(&t).unwrap(), "n={n}");
    }
}

#[test]
fn bailey_alpha_matches_first_contiguous_coefficient() {
    let s = r(-2, 3);
    let a = &s * &s;
    let q = r(3, 4);
    let mut p =
        point(&[("a", a.clone()), ("b", r(5, 2)), ("c", r(-1, 6)), ("d", r(8, 5)), ("e", r(3, 7)), ("f", r(-9, 4)), ("q", q.clone())]);
    let base = p.clone();
    crate::identities::formulas::derive_lambda(&mut p).unwrap();
    let lambda = p.sym("lambda").unwrap().clone();
    let ef = p.sym("e").unwrap() * p.sym("f").unwrap();
    for n in 1..=5 {
        let mut list = vec![a.clone(), &q * &s, -(&q * &s)];
        for name in ["b", "c", "d", "e", "f"] {
            list.push(p.sym(name).unwrap().clone());
        }
        list.push(crate::qcore::ratio(&(&lambda * &a * q.pow(n).unwrap()), &ef, "t").unwrap());
        list.push(q.pow(-n).unwrap());
        let t = WellPoisedTerm::new(list, q.clone(), q.clone());
        assert_eq!(bailey_alpha(&base, n).unwrap(), contiguous_alpha(&t).unwrap(), "n={n}");
    }
}

#[test]
fn watson_beta_matches_second_contiguous_coefficient() {
    let s = r(5, 4);
    let a = &s * &s;
    let q = r(-2, 7);
    let p = point(&[("a", a.clone()), ("b", r(3, 2)), ("c", r(-7, 5)), ("d", r(1, 8)), ("e", r(6, 1)), ("q", q.clone())]);
    let bcde: QRational = ["b", "c", "d", "e"].iter().map(|n| p.sym(n).unwrap().clone()).product();
    for n in 1..=5 {
        let mut list = vec![a.clone(), &q * &s, -(&q * &s)];
        for name in ["b", "c", "d", "e"] {
            list.push(p.sym(name).unwrap().clone());
        }
        list.push(q.pow(-n).unwrap());
        let z = crate::qcore::ratio(&(&a * &a * q.pow(n + 1).unwrap()), &bcde, "z").unwrap();
        let t = WellPoisedTerm::new(list, q.clone(), z);
        assert_eq!(watson_beta(&p, n).unwrap(), contiguous_beta(&t).unwrap(), "n={n}");
    }
}

fn schlosser_point(rr: usize, trial: u64) -> ParamPoint {
    let mut rng = trial_rng(11, "schlosser-test", trial);
    let mut p = ParamPoint::new();
    for s in ["a", "b", "c", "d"] {
        p.set(s, random_rational(&mut rng, 1000));
    }
    p.set("q", random_base(&mut rng, 1000));
    for i in 1..=rr {
        p.set(&x_name(i), random_rational(&mut rng, 1000));
    }
    p.with_index("r", rr as i64)
}

#[test]
fn schlosser_split_cases() {
    let p = schlosser_point(2, 0);
    assert!(schlosser::schlosser_split_residual(&p, 2, 0, 3).unwrap().is_zero());
    assert!(schlosser::schlosser_split_residual(&p, 2, 1, 1).unwrap().is_zero());
    let p3 = schlosser_point(3, 0);
    assert!(schlosser::schlosser_split_residual(&p3, 1, 2, 0).unwrap().is_zero());
}

#[test]
fn schlosser_split_without_a_fails() {
    let p = schlosser_point(2, 1);
    let sp = SchlosserParams::from_point(&p, 2).unwrap();
    assert!(!split_residual_with(&sp, 2, 0, 1, false).unwrap().is_zero());
    assert!(split_residual_with(&sp, 2, 0, 1, true).unwrap().is_zero());
}

#[test]
fn schlosser_coefficient_forms_agree() {
    for (rr, s) in [(1usize, vec![0]), (2, vec![0, 1]), (3, vec![1, 1, 0])] {
        let p = schlosser_point(rr, 2);
        for n in 0..3 {
            assert!(schlosser::schlosser_coeff_residual(&p, n, &s).unwrap().is_zero(), "r={rr} s={s:?}");
        }
    }
}

#[test]
fn schlosser_steps_and_replay() {
    for rr in 1..=2 {
        let p = schlosser_point(rr, 3);
        for n in 0..2 {
            assert_eq!(schlosser::step_residuals(&p, n).unwrap(), None);
            assert!(schlosser::closing_step(&p, n).unwrap());
        }
        assert!(schlosser::inductive_replay(&p, 2).unwrap());
    }
}

#[test]
fn certify_small_run() {
    let opts = CertifyOptions { trials: 2, ..Default::default() };
    for id in ["jackson", "lebesgue", "quintuple"] {
        let rep = certify(id, &opts).unwrap();
        assert!(rep.passed(), "{id}: {:?}", rep.failure);
    }
    let bad = CertifyOptions { n_max: 13, ..Default::default() };
    assert!(matches!(certify("jackson", &bad), Err(crate::error::Error::CostGuard(_))));
    assert!(matches!(certify("nope", &opts), Err(crate::error::Error::UnknownProof(_))));
}
