use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qcore::QRational;

/// Default bound on sampled numerators and denominators.
pub const DEFAULT_MAX_ABS: i64 = 1000;

/// Stable 64-bit FNV-1a; item ids feed the per-trial seed, so this must not
/// depend on the toolchain's hasher.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for one trial, a pure function of `(seed, item, trial)`.
pub fn trial_rng(seed: u64, item: &str, trial: u64) -> ChaCha8Rng {
    let s = splitmix(seed ^ splitmix(fnv1a(item.as_bytes()) ^ splitmix(trial)));
    ChaCha8Rng::seed_from_u64(s)
}

fn nonzero<R: Rng>(rng: &mut R, max_abs: i64) -> i64 {
    let v = rng.gen_range(1..=max_abs);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// `p / r` with `p, r` uniform in `[-max_abs, max_abs] \ {0}`.
pub fn random_rational<R: Rng>(rng: &mut R, max_abs: i64) -> QRational {
    let max_abs = max_abs.max(1);
    let p = nonzero(rng, max_abs);
    let r = nonzero(rng, max_abs);
    QRational::new(p, r).expect("nonzero denominator")
}

/// A random base `q` outside `{0, 1, -1}`.
pub fn random_base<R: Rng>(rng: &mut R, max_abs: i64) -> QRational {
    let max_abs = max_abs.max(2);
    loop {
        let q = random_rational(rng, max_abs);
        if q.abs() != QRational::one() {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_rng_is_reproducible() {
        let a: Vec<u64> = (0..4).map(|_| trial_rng(42, "x", 3).gen()).collect();
        let b: Vec<u64> = (0..4).map(|_| trial_rng(42, "x", 3).gen()).collect();
        assert_eq!(a, b);
        let mut r1 = trial_rng(42, "x", 3);
        let mut r2 = trial_rng(42, "x", 4);
        let mut r3 = trial_rng(42, "y", 3);
        let v1: u64 = r1.gen();
        assert_ne!(v1, r2.gen::<u64>());
        assert_ne!(v1, r3.gen::<u64>());
    }

    #[test]
    fn sampled_values_respect_bounds() {
        let mut rng = trial_rng(1, "bounds", 0);
        for _ in 0..500 {
            let x = random_rational(&mut rng, 10);
            assert!(!x.is_zero());
            assert!(x.numer().magnitude() <= &10u32.into());
            assert!(x.denom().magnitude() <= &10u32.into());
            let q = random_base(&mut rng, 10);
            assert!(q.abs() != QRational::one());
        }
    }
}
