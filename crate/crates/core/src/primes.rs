//! Prime generation, deterministic primality and overflow-safe modular
//! arithmetic.
//!
//! Residues are `u64`; every product goes through a `u128` intermediate, so
//! any modulus below `2^64` is safe (the sieve only needs `f < 2^63`).

use crate::{Error, Result};

/// Largest limit accepted by [`sieve_eratosthenes`]. The odd-only byte sieve
/// needs `limit / 2` bytes.
pub const SIEVE_LIMIT_MAX: u64 = 1_000_000_000;

/// Miller-Rabin bases that make the test deterministic for every `n < 2^64`
/// (in fact for `n < 3.3 * 10^24`; Sorenson and Webster, 2015).
pub const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// All primes up to `limit`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u64> {
        self.primes.iter()
    }

    /// Membership test for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Distinct prime factors of `n >= 1`, ascending.
    ///
    /// Trial division runs over the list; a leftover cofactor is accepted
    /// when the list reaches its square root or when it passes [`is_prime`].
    pub fn distinct_factors(&self, mut n: u64) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::Precondition("cannot factor 0".into()));
        }
        let mut out = Vec::new();
        for &p in &self.primes {
            if p.saturating_mul(p) > n {
                break;
            }
            if n.is_multiple_of(p) {
                out.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
        }
        if n > 1 {
            let reach = self.limit.saturating_mul(self.limit);
            if n <= reach || is_prime(n) {
                out.push(n);
            } else {
                return Err(Error::Resource {
                    what: "cofactor beyond trial-division reach",
                    requested: n,
                    limit: reach,
                });
            }
        }
        Ok(out)
    }
}

impl<'a> IntoIterator for &'a PrimeList {
    type Item = &'a u64;
    type IntoIter = std::slice::Iter<'a, u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.primes.iter()
    }
}

/// Sieve of Eratosthenes over the odd numbers up to `limit`.
pub fn sieve_eratosthenes(limit: u64) -> Result<PrimeList> {
    if limit < 2 {
        return Err(Error::Precondition(format!("sieve limit {limit} < 2")));
    }
    if limit > SIEVE_LIMIT_MAX {
        return Err(Error::Resource {
            what: "sieve limit",
            requested: limit,
            limit: SIEVE_LIMIT_MAX,
        });
    }
    // composite[i] marks 2i + 1
    let half = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    Ok(PrimeList { limit, primes })
}

fn estimate_pi(x: u64) -> usize {
    let xf = x as f64;
    (1.26 * xf / xf.ln().max(1.0)) as usize + 8
}

/// Primes in `[lo, hi]` by a segmented sieve over `base`.
///
/// `base` must reach `sqrt(hi)`; the window is allocated in one piece, so
/// callers split large ranges themselves.
pub fn primes_in_range(lo: u64, hi: u64, base: &PrimeList) -> Result<Vec<u64>> {
    if lo > hi {
        return Ok(Vec::new());
    }
    let root = isqrt(hi);
    if base.limit() < root {
        return Err(Error::Precondition(format!(
            "base primes up to {} cannot sieve up to {hi}",
            base.limit()
        )));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    let width = hi - lo + 1;
    if width > SIEVE_LIMIT_MAX {
        return Err(Error::Resource {
            what: "segment width",
            requested: width,
            limit: SIEVE_LIMIT_MAX,
        });
    }
    let mut composite = vec![false; width as usize];
    for &p in base.iter() {
        if p > root {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    Ok(composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect())
}

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

/// Deterministic Miller-Rabin with [`MR_BASES`]; exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let ctx = ModContext::new(n);
    'witness: for &a in &MR_BASES {
        let mut x = ctx.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ctx.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Arithmetic modulo a fixed `m >= 2`. All reductions land in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModContext {
    m: u64,
}

impl ModContext {
    pub fn new(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        Self { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.m
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut b = self.reduce(base);
        let mut acc = 1 % self.m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let (mut r0, mut r1) = (self.m as i128, self.reduce(a) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(Error::NotInvertible { a, m: self.m });
        }
        Ok(t0.rem_euclid(self.m as i128) as u64)
    }
}

pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    ModContext::new(m).pow(base, exp)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ModContext::new(m).mul(a, b)
}

/// `x` in `[1, m)` with `a * x = 1 (mod m)`; `m = 1` is rejected by
/// [`ModContext::new`].
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    ModContext::new(m).inv(a)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
