use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::prime::is_prime;
use crate::{Error, Result};

/// A commutative ring with explicit context (modulus, field polynomial).
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Low-order coefficients of the irreducible polynomial used for GF(2^k),
/// indexed by `k - 1`; the leading `x^k` term is implicit. For each degree
/// this is the trinomial `x^k + x^a + 1` with the smallest `a`, or failing
/// that the pentanomial with the smallest middle terms.
pub const IRREDUCIBLE_LOW: [u64; 64] = [
    0x1, 0x3, 0x3, 0x3, 0x5, 0x3, 0x3, 0x1b, 0x3, 0x9, 0x5, 0x9, 0x1b, 0x21, 0x3, 0x2b, 0x9, 0x9,
    0x27, 0x9, 0x5, 0x3, 0x21, 0x1b, 0x9, 0x1b, 0x27, 0x3, 0x5, 0x3, 0x9, 0x8d, 0x401, 0x81, 0x5,
    0x201, 0x53, 0x63, 0x11, 0x39, 0x9, 0x81, 0x59, 0x21, 0x1b, 0x3, 0x21, 0x2d, 0x201, 0x1d, 0x4b,
    0x9, 0x47, 0x201, 0x81, 0x95, 0x11, 0x80001, 0x95, 0x3, 0x27, 0x20000001, 0x3, 0x1b,
];

/// Largest degree for which log/antilog tables are built.
const TABLE_BITS: u32 = 16;

/// GF(2^k) in the polynomial basis; elements are `k`-bit words.
#[derive(Clone)]
pub struct Gf2k {
    k: u32,
    low: u64,
    tables: Option<std::sync::Arc<(Vec<u32>, Vec<u32>)>>,
}

impl Debug for Gf2k {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF(2^{})", self.k)
    }
}

impl Gf2k {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=64).contains(&k) {
            return Err(Error::InvalidParameters(format!("GF(2^k) needs 1 <= k <= 64, got {k}")));
        }
        let mut f = Gf2k {
            k,
            low: IRREDUCIBLE_LOW[k as usize - 1],
            tables: None,
        };
        if !f.modulus_is_irreducible() {
            return Err(Error::Internal(format!("table polynomial for degree {k} is reducible")));
        }
        if k <= TABLE_BITS {
            f.tables = Some(std::sync::Arc::new(f.build_tables()?));
        }
        Ok(f)
    }

    /// The field used for `n`-vertex polynomial identity tests: `k = ceil(lg 8n)`.
    pub fn for_vertices(n: usize) -> Self {
        let k = (8 * n.max(1)).next_power_of_two().trailing_zeros().clamp(1, 64);
        Self::new(k).expect("table field")
    }

    pub fn bits(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u128 {
        1u128 << self.k
    }

    pub fn mask(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    /// Uniformly random element.
    pub fn random(&self, rng: &mut impl rand::Rng) -> u64 {
        rng.random::<u64>() & self.mask()
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let k = self.k;
        let mut prod: u128 = 0;
        let mut bb = b;
        let mut aa = a as u128;
        while bb != 0 {
            if bb & 1 == 1 {
                prod ^= aa;
            }
            bb >>= 1;
            aa <<= 1;
        }
        let full = (1u128 << k) | self.low as u128;
        let mut top = 127 - prod.leading_zeros() as i32;
        while prod != 0 && top >= k as i32 {
            if (prod >> top) & 1 == 1 {
                prod ^= full << (top as u32 - k);
            }
            top -= 1;
        }
        prod as u64
    }

    fn pow_slow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, a);
            }
            a = self.mul_slow(a, a);
            e >>= 1;
        }
        r
    }

    /// Rabin's test: `x^(2^k) = x mod f` and `gcd(x^(2^(k/q)) - x, f) = 1`
    /// for every prime `q | k`.
    fn modulus_is_irreducible(&self) -> bool {
        let k = self.k;
        if k == 1 {
            return true;
        }
        let x = 2u64;
        let frob = |j: u32| (0..j).fold(x, |y, _| self.mul_slow(y, y));
        if frob(k) != x {
            return false;
        }
        let full = (1u128 << k) | self.low as u128;
        prime_factors(k).into_iter().all(|q| {
            let h = (frob(k / q) ^ x) as u128;
            poly_gcd(full, h) == 1
        })
    }

    fn build_tables(&self) -> Result<(Vec<u32>, Vec<u32>)> {
        let q = 1usize << self.k;
        let order = q as u128 - 1;
        let g = (2..q as u64)
            .chain(std::iter::once(1))
            .find(|&g| {
                order == 1
                    || prime_factors_u128(order)
                        .into_iter()
                        .all(|p| self.pow_slow(g, order / p) != 1)
            })
            .ok_or_else(|| Error::Internal("no generator".into()))?;
        let mut exp = vec![0u32; 2 * q];
        let mut log = vec![0u32; q];
        let mut cur = 1u64;
        for i in 0..q - 1 {
            exp[i] = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, g);
        }
        for i in q - 1..2 * q {
            exp[i] = exp[i - (q - 1)];
        }
        Ok((exp, log))
    }
}

fn prime_factors(mut k: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            out.push(d);
            while k.is_multiple_of(d) {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

fn prime_factors_u128(mut m: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let db = 127 - b.leading_zeros();
        while a != 0 && 127 - a.leading_zeros() >= db {
            a ^= b << (127 - a.leading_zeros() - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl Ring for Gf2k {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if *a == 0 || *b == 0 {
                    0
                } else {
                    let (exp, log) = &**t;
                    exp[(log[*a as usize] + log[*b as usize]) as usize] as u64
                }
            }
            None => self.mul_slow(*a, *b),
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        *a
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v & 1) as u64
    }
}

impl Field for Gf2k {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let (exp, log) = &**t;
                let q1 = (1u32 << self.k) - 1;
                Some(exp[((q1 - log[*a as usize]) % q1) as usize] as u64)
            }
            None => Some(self.pow_slow(*a, self.order() - 2)),
        }
    }
}

/// The prime field Z_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        Ok(Zp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_u128(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        r
    }
}

impl Ring for Zp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for Zp {
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
}

/// The integers, with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Wrapping 128-bit integers, for callers that bound their values in advance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct I128;

impl Ring for I128 {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a.wrapping_add(*b)
    }
    fn sub(&self, a: &i128, b: &i128) -> i128 {
        a.wrapping_sub(*b)
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a.wrapping_mul(*b)
    }
    fn neg(&self, a: &i128) -> i128 {
        a.wrapping_neg()
    }
    fn from_i64(&self, v: i64) -> i128 {
        v as i128
    }
}
