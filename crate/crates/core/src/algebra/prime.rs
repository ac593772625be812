use rand::Rng;

use crate::{Error, Result, Seed};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Ranges no longer than this are enumerated outright. Every gap between
/// consecutive primes below 2^64 is shorter, so longer ranges always
/// contain a prime.
const SCAN_LIMIT: u64 = 4096;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= lo`.
pub fn next_prime(lo: u64) -> Result<u64> {
    (lo..=u64::MAX)
        .find(|&p| is_prime(p))
        .ok_or(Error::NoPrime { lo, hi: u64::MAX })
}

/// A uniformly random prime in `[lo, hi]`.
pub fn sample_prime(lo: u64, hi: u64, seed: Seed) -> Result<u64> {
    if lo < 2 || lo > hi || hi >= 1 << 62 {
        return Err(Error::InvalidParameters(format!("need 2 <= lo <= hi < 2^62, got [{lo}, {hi}]")));
    }
    let mut rng = seed.rng();
    if hi - lo < SCAN_LIMIT {
        let primes: Vec<u64> = (lo..=hi).filter(|&p| is_prime(p)).collect();
        if primes.is_empty() {
            return Err(Error::NoPrime { lo, hi });
        }
        return Ok(primes[rng.random_range(0..primes.len())]);
    }
    loop {
        let c = rng.random_range(lo..=hi);
        if is_prime(c) {
            return Ok(c);
        }
    }
}
