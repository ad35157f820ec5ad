//! The eighteen registered terminating identities.

use super::formulas::*;
use super::{DerivedSymbol, IdentityDescriptor, IndexRule, Specialization};
use crate::error::Result;
use crate::qcore::{qpoch_multi, ParamPoint, QRational};

// ---------------------------------------------------------------------------
// Pole guards. Each returns factors that must be nonzero at the derived point.

fn s(p: &ParamPoint, name: &str) -> Result<QRational> {
    p.sym(name).cloned()
}

/// Denominators of a very-well-poised sum with leading parameter `a`.
fn vwp_guard(out: &mut Vec<QRational>, a: &QRational, params: &[QRational], q: &QRational, n: i64) -> Result<()> {
    out.push(a.one_minus());
    out.extend(params.iter().cloned());
    let aq = a * q;
    let mut lower = vec![q.clone()];
    for p in params {
        if p.is_zero() {
            return Ok(());
        }
        lower.push(aq.checked_div(p)?);
    }
    out.push(qpoch_multi(&lower, q, n)?);
    Ok(())
}

fn guard_jackson(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let mut g = vec![];
    vwp_guard(&mut g, &a, &[b.clone(), c.clone(), d.clone(), e, q.pow(-n)?], q, n)?;
    let aq = &a * q;
    g.push(qpoch_multi(&[aq.checked_div(&b)?, aq.checked_div(&c)?, aq.checked_div(&d)?, aq.checked_div(&(&b * &c * &d))?], q, n)?);
    Ok(g)
}

fn guard_6phi5(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a, b, c) = (s(p, "a")?, s(p, "b")?, s(p, "c")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let mut g = vec![];
    vwp_guard(&mut g, &a, &[b.clone(), c.clone(), q.pow(-n)?], q, n)?;
    let aq = &a * q;
    g.push(qpoch_multi(&[aq.checked_div(&b)?, aq.checked_div(&c)?], q, n)?);
    Ok(g)
}

fn guard_watson(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let mut g = vec![];
    vwp_guard(&mut g, &a, &[b.clone(), c.clone(), d.clone(), e.clone(), q.pow(-n)?], q, n)?;
    let aq = &a * q;
    let lower = [
        q.clone(),
        aq.checked_div(&b)?,
        aq.checked_div(&c)?,
        (&d * &e * q.pow(-n)?).checked_div(&a)?,
        aq.checked_div(&d)?,
        aq.checked_div(&e)?,
    ];
    g.push(qpoch_multi(&lower, q, n)?);
    Ok(g)
}

fn guard_vwp(p: &ParamPoint) -> Result<Vec<QRational>> {
    let mut g = guard_watson(p)?;
    let (a, b, c, d, e) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?, s(p, "e")?);
    let lambda = s(p, "lambda")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    let la = lambda.checked_div(&a)?;
    vwp_guard(&mut g, &lambda, &[&la * &b, &la * &c, &la * &d, e.clone(), q.pow(-n)?], q, n)?;
    g.push(qpoch_multi(&[(&a * q).checked_div(&e)?, &lambda * q], q, n)?);
    Ok(g)
}

fn guard_bailey(p: &ParamPoint) -> Result<Vec<QRational>> {
    let q = p.q()?;
    let n = p.idx("n")?;
    let mut g = vec![];
    let (a, left) = bailey_left_params(p, n)?;
    vwp_guard(&mut g, &a, &left, q, n)?;
    let (lambda, right) = bailey_right_params(p, n)?;
    vwp_guard(&mut g, &lambda, &right, q, n)?;
    let (e, f) = (s(p, "e")?, s(p, "f")?);
    let aq = &a * q;
    let lq = &lambda * q;
    g.push(qpoch_multi(&[aq.checked_div(&e)?, aq.checked_div(&f)?, lq.checked_div(&(&e * &f))?, lq], q, n)?);
    Ok(g)
}

fn guard_singh(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a2, b2, c, d) = (s(p, "a2")?, s(p, "b2")?, s(p, "c")?, s(p, "d")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let q2 = q * q;
    Ok(vec![qpoch_multi(&[q.clone(), -(&c * &d)], q, 2 * n)?, qpoch_multi(&[q2.clone(), &a2 * &b2 * q], &q2, n)?])
}

fn guard_andrews_jain(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a, b) = (s(p, "a")?, s(p, "b")?);
    let q = p.q()?;
    let n = p.idx("n")?;
    let q2 = q * q;
    Ok(vec![qpoch_multi(&[q.clone(), q2.pow(-n)?], q, n)?, qpoch_multi(&[q.clone(), &a * &b * q], &q2, n)?])
}

/// `x_i != 0`, `x_i != x_j`, `1 - a x_i x_j q^t` for the pair shifts used,
/// and `1 - a x_i^2`.
fn guard_x(p: &ParamPoint, shifts: &[i64]) -> Result<Vec<QRational>> {
    let r = p.idx("r")?;
    let a = s(p, "a")?;
    let q = p.q()?;
    let x = p.x_vector(r as usize)?;
    let mut g = vec![];
    for (i, xi) in x.iter().enumerate() {
        g.push(xi.clone());
        g.push((&a * xi * xi).one_minus());
        for xj in &x[i + 1..] {
            g.push(xi - xj);
            for &t in shifts {
                g.push((&a * xi * xj * q.pow(t)?).one_minus());
            }
        }
    }
    Ok(g)
}

fn guard_schlosser(p: &ParamPoint) -> Result<Vec<QRational>> {
    let n = p.idx("n")?;
    let mut g = guard_x(p, &[0, n])?;
    let r = p.idx("r")?;
    let sp = SchlosserParams::from_point(p, r as usize)?;
    let (a, q) = (&sp.a, &sp.q);
    let bcd = &sp.b * &sp.c * &sp.d;
    for x in &sp.x {
        let axq = a * x * q;
        let lower = [
            q.clone(),
            axq.checked_div(&sp.b)?,
            axq.checked_div(&sp.c)?,
            axq.checked_div(&sp.d)?,
            (&bcd * x * q.pow(r - n - 1)?).checked_div(a)?,
            a * x * x * q.pow(n + 1)?,
            (a * q.pow(2 - r)?).checked_div(&(&bcd * x))?,
        ];
        g.push(qpoch_multi(&lower, q, n)?);
    }
    Ok(g)
}

fn guard_lemma(p: &ParamPoint) -> Result<Vec<QRational>> {
    let mut g = guard_x(p, &[0, 1])?;
    let r = p.idx("r")?;
    let sp = SchlosserParams::from_point(p, r as usize)?;
    let (a, q) = (&sp.a, &sp.q);
    let bcd = &sp.b * &sp.c * &sp.d;
    for x in &sp.x {
        let axq = a * x * q;
        g.push(axq.checked_div(&sp.b)?.one_minus());
        g.push(axq.checked_div(&sp.c)?.one_minus());
        g.push(axq.checked_div(&sp.d)?.one_minus());
        g.push((&bcd * x * q.pow(r - 2)?).checked_div(a)?.one_minus());
        g.push((a * q.pow(2 - r)?).checked_div(&(&bcd * x))?.one_minus());
    }
    Ok(g)
}

fn guard_sch_8phi7(p: &ParamPoint) -> Result<Vec<QRational>> {
    let (a, b, c, d) = (s(p, "a")?, s(p, "b")?, s(p, "c")?, s(p, "d")?);
    let q = p.q()?;
    let r = p.idx("r")?;
    let bcd = &b * &c * &d;
    Ok(vec![
        qpoch_multi(std::slice::from_ref(&a), q, 2 * r + 1)?,
        qpoch_multi(&[b, c, d, (&a * &a * q.pow(3 - r)?).checked_div(&bcd)?], q, r)?,
    ])
}

fn guard_allied(p: &ParamPoint) -> Result<Vec<QRational>> {
    let n = p.idx("n")?;
    let r = p.idx("r")?;
    let q = p.q()?;
    let mut g = guard_x(p, &[n])?;
    g.push(qpoch_multi(&[q.clone(), -q.clone()], q, r)?);
    Ok(g)
}

fn guard_lebesgue(p: &ParamPoint) -> Result<Vec<QRational>> {
    let a = s(p, "a")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    Ok(vec![qpoch_multi(&[a], q, 2 * n + 1)?])
}

fn guard_jacobi(p: &ParamPoint) -> Result<Vec<QRational>> {
    let z = s(p, "z")?;
    let q = p.q()?;
    let (m, n) = (p.idx("m")?, p.idx("n")?);
    let qz = q.checked_div(&z)?;
    Ok(vec![
        qpoch_multi(&[-(&z * q.pow(-m)?)], q, 2 * m + 2 * n + 2)?,
        qpoch_multi(&[-qz], q, 2 * m + 1)?,
        qpoch_multi(&[-z], q, 2 * n + 2)?,
    ])
}

fn guard_quintuple(p: &ParamPoint) -> Result<Vec<QRational>> {
    let z = s(p, "z")?;
    let q = p.q()?;
    let n = p.idx("n")?;
    Ok(vec![z.clone(), qpoch_multi(&[&z * &z], q, 2 * n + 2)?])
}

fn guard_quintuple_mn(p: &ParamPoint) -> Result<Vec<QRational>> {
    let z = s(p, "z")?;
    let q = p.q()?;
    let (m, n) = (p.idx("m")?, p.idx("n")?);
    let z2 = &z * &z;
    Ok(vec![
        z.clone(),
        (QRational::one() + z.recip()?),
        qpoch_multi(&[z2.recip()?], q, 2 * m + 1)?,
        qpoch_multi(&[&z2 * q], q, 2 * n + 2)?,
        qpoch_multi(&[-q.checked_div(&z)?], q, m.max(1))?,
    ])
}

// ---------------------------------------------------------------------------

const N_ONLY: &[IndexRule] = &[IndexRule::Range("n")];
const N_AND_R: &[IndexRule] = &[IndexRule::Range("n"), IndexRule::Range("r")];
const R_ONLY: &[IndexRule] = &[IndexRule::Range("r")];
const M_AND_N: &[IndexRule] = &[IndexRule::Range("m"), IndexRule::Range("n")];

const N_RANGE: &[(&str, i64, i64)] = &[("n", 0, 6)];
const MULTISUM_RANGE: &[(&str, i64, i64)] = &[("n", 0, 3), ("r", 1, 3)];
const MN_RANGE: &[(&str, i64, i64)] = &[("m", 0, 4), ("n", 0, 6)];

const E_RULE: DerivedSymbol = DerivedSymbol { name: "e", rule: "a^2 q^(n+1) / (b c d)", apply: derive_jackson_e };
const LAMBDA_RULE: DerivedSymbol = DerivedSymbol { name: "lambda", rule: "a^2 q / (b c d)", apply: derive_lambda };
const SINGH_RULE: DerivedSymbol =
    DerivedSymbol { name: "d", rule: "q^(-n)  (c := q^(-n) when variant = 1)", apply: derive_singh_termination };

pub(super) static REGISTRY: [IdentityDescriptor; 18] = [
    IdentityDescriptor {
        id: "jackson_8phi7",
        title: "Jackson's terminating 8phi7 summation",
        free_symbols: &["a", "b", "c", "d", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[E_RULE],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: jackson_8phi7_lhs,
        rhs: jackson_8phi7_rhs,
        pole_guard: guard_jackson,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "jackson_6phi5",
        title: "Jackson's terminating 6phi5 summation",
        free_symbols: &["a", "b", "c", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: jackson_6phi5_lhs,
        rhs: jackson_6phi5_rhs,
        pole_guard: guard_6phi5,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "watson_transform",
        title: "Watson's 8phi7 to 4phi3 transformation",
        free_symbols: &["a", "b", "c", "d", "e", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: watson_lhs,
        rhs: watson_rhs,
        pole_guard: guard_watson,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "vwp_transform",
        title: "Very-well-poised 8phi7 transformation",
        free_symbols: &["a", "b", "c", "d", "e", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[LAMBDA_RULE],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: watson_lhs,
        rhs: vwp_transform_rhs,
        pole_guard: guard_vwp,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "bailey_10phi9",
        title: "Bailey's 10phi9 transformation",
        free_symbols: &["a", "b", "c", "d", "e", "f", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[LAMBDA_RULE],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: bailey_lhs,
        rhs: bailey_rhs,
        pole_guard: guard_bailey,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "singh_quadratic",
        title: "Singh's quadratic 4phi3 transformation (a2 = a^2, b2 = b^2)",
        free_symbols: &["a2", "b2", "c", "d", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[SINGH_RULE],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: singh_lhs,
        rhs: singh_rhs,
        pole_guard: guard_singh,
        specializations: &[Specialization { alias: "singh_quadratic_c", fixed_symbols: &[], fixed_indices: &[("variant", 1)] }],
    },
    IdentityDescriptor {
        id: "schlosser_cr",
        title: "C_r extension of Jackson's 8phi7 summation",
        free_symbols: &["a", "b", "c", "d", "q"],
        x_vector: true,
        x_independent: false,
        derived_symbols: &[],
        indices: N_AND_R,
        default_ranges: MULTISUM_RANGE,
        lhs: schlosser_cr_lhs,
        rhs: schlosser_cr_rhs,
        pole_guard: guard_schlosser,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "schlosser_lemma_n1",
        title: "The n = 1 case of the C_r Jackson sum",
        free_symbols: &["a", "b", "c", "d", "q"],
        x_vector: true,
        x_independent: false,
        derived_symbols: &[],
        indices: R_ONLY,
        default_ranges: &[("r", 0, 3)],
        lhs: schlosser_lemma_lhs,
        rhs: schlosser_lemma_rhs,
        pole_guard: guard_lemma,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "sch_8phi7_special",
        title: "Single-sum reduction behind the n = 1 lemma",
        free_symbols: &["a", "b", "c", "d", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: R_ONLY,
        default_ranges: &[("r", 0, 6)],
        lhs: sch_8phi7_lhs,
        rhs: sch_8phi7_rhs,
        pole_guard: guard_sch_8phi7,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "cr_prop_1",
        title: "Allied r-fold sum with weight q^-(r-1)s",
        free_symbols: &["a", "q"],
        x_vector: true,
        x_independent: true,
        derived_symbols: &[],
        indices: N_AND_R,
        default_ranges: MULTISUM_RANGE,
        lhs: cr_prop_1_lhs,
        rhs: cr_prop_1_rhs,
        pole_guard: guard_allied,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "cr_prop_2",
        title: "Allied r-fold sum with alternating weight, parity split",
        free_symbols: &["a", "q"],
        x_vector: true,
        x_independent: true,
        derived_symbols: &[],
        indices: N_AND_R,
        default_ranges: MULTISUM_RANGE,
        lhs: cr_prop_2_lhs,
        rhs: cr_prop_2_rhs,
        pole_guard: guard_allied,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "lebesgue_finite",
        title: "Finite form of Lebesgue's identity",
        free_symbols: &["a", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: lebesgue_finite_lhs,
        rhs: lebesgue_finite_rhs,
        pole_guard: guard_lebesgue,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "jacobi_finite",
        title: "Two-sided finite form of Jacobi's triple product",
        free_symbols: &["z", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: M_AND_N,
        default_ranges: MN_RANGE,
        lhs: jacobi_finite_lhs,
        rhs: jacobi_finite_rhs,
        pole_guard: guard_jacobi,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "jacobi_prefactor_relation",
        title: "Prefactor rewriting behind the two-sided triple product form",
        free_symbols: &["z", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: &[IndexRule::Range("m"), IndexRule::Range("n"), IndexRule::Between { name: "k", neg_lo: "m", hi: "n" }],
        default_ranges: MN_RANGE,
        lhs: jacobi_prefactor_lhs,
        rhs: jacobi_prefactor_rhs,
        pole_guard: guard_jacobi,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "quintuple_finite",
        title: "Finite form of the quintuple product identity",
        free_symbols: &["z", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: quintuple_finite_lhs,
        rhs: one,
        pole_guard: guard_quintuple,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "quintuple_finite_mn",
        title: "Two-sided finite form of the quintuple product identity",
        free_symbols: &["z", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: M_AND_N,
        default_ranges: MN_RANGE,
        lhs: quintuple_mn_lhs,
        rhs: one,
        pole_guard: guard_quintuple_mn,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "quintuple_ccg",
        title: "Alternative finite form of the quintuple product identity",
        free_symbols: &["z", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: quintuple_ccg_lhs,
        rhs: one,
        pole_guard: guard_quintuple,
        specializations: &[],
    },
    IdentityDescriptor {
        id: "andrews_jain",
        title: "Andrews-Jain summation (b = 0: second finite Lebesgue form)",
        free_symbols: &["a", "b", "q"],
        x_vector: false,
        x_independent: false,
        derived_symbols: &[],
        indices: N_ONLY,
        default_ranges: N_RANGE,
        lhs: andrews_jain_lhs,
        rhs: andrews_jain_rhs,
        pole_guard: guard_andrews_jain,
        specializations: &[Specialization { alias: "lebesgue_finite_2", fixed_symbols: &[("b", 0)], fixed_indices: &[] }],
    },
];
