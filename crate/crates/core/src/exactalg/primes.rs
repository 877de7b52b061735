//! Primality testing and integer factorization.
//!
//! Miller-Rabin with the first thirteen prime bases is deterministic for every
//! n < 3.317 * 10^24; above that bound twelve further prime bases are used and
//! the answer is probabilistic (no counterexample is known for the combined
//! base set). Factorization uses trial division up to 10^6 followed by
//! Pollard's rho with Brent's cycle detection.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_BASES: [u32; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    pub sign: i8,
    #[serde(serialize_with = "crate::serde_util::prime_map")]
    pub factors: BTreeMap<BigInt, u32>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.keys()
    }

    pub fn largest_prime(&self) -> Option<&BigInt> {
        self.factors.keys().next_back()
    }

    pub fn product(&self) -> BigInt {
        let mag = self.factors.iter().fold(BigInt::one(), |acc, (p, &e)| {
            acc * num_traits::pow(p.clone(), e as usize)
        });
        if self.sign < 0 {
            -mag
        } else {
            mag
        }
    }

    fn insert(&mut self, p: BigInt, e: u32) {
        *self.factors.entry(p).or_insert(0) += e;
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, &e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES[..12] {
        let p = p as u64;
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // the first twelve primes are a deterministic set for all of u64
    'witness: for &a in &DETERMINISTIC_BASES[..12] {
        let mut x = pow_mod(a as u64, d, n);
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

fn is_prime_big(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in DETERMINISTIC_BASES.iter().chain(EXTRA_BASES.iter()) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let bound = BigInt::parse_bytes(b"3317044064679887385961981", 10).expect("literal");
    let bases: &[u32] = if n < &bound {
        &DETERMINISTIC_BASES
    } else {
        &[
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
            89, 97,
        ]
    };
    'witness: for &a in bases {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin primality test; see the module docs for the determinism range.
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n <= &BigInt::one() {
        return Err(Error::NotAboveOne(n.clone()));
    }
    Ok(is_prime_big(n))
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let m = 128u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let m = 128u64;
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Splits a composite u64 (with no factor below the trial limit) into primes.
fn split_u64(n: u64, out: &mut PrimeFactorization) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.insert(BigInt::from(n), 1);
        return;
    }
    let d = (1..)
        .find_map(|c| brent_u64(n, c))
        .expect("rho finds a factor of a composite");
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: BigInt, out: &mut PrimeFactorization) {
    if let Some(small) = n.to_u64() {
        split_u64(small, out);
        return;
    }
    if is_prime_big(&n) {
        out.insert(n, 1);
        return;
    }
    let d = (1..)
        .find_map(|c| brent_big(&n, c))
        .expect("rho finds a factor of a composite");
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Complete factorization of a nonzero integer. Deterministic: the rho
/// iteration uses the fixed polynomial sequence x^2 + 1, x^2 + 2, ...
pub fn factorize(n: &BigInt) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument { op: "factorize" });
    }
    let mut out = PrimeFactorization {
        sign: if n.is_negative() { -1 } else { 1 },
        factors: BTreeMap::new(),
    };
    let mut m = n.abs();
    if let Some(mut small) = m.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > small {
                break;
            }
            while small % p == 0 {
                small /= p;
                out.insert(BigInt::from(p), 1);
            }
        }
        if small > 1 {
            split_u64(small, &mut out);
        }
        return Ok(out);
    }
    for &p in small_primes() {
        if let Some(small) = m.to_u64() {
            if (p as u64) * (p as u64) > small {
                break;
            }
        }
        while (&m % p).is_zero() {
            m /= p;
            out.insert(BigInt::from(p), 1);
        }
    }
    if !m.is_one() {
        split_big(m, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_primality() {
        assert!(is_prime(&big(2)).unwrap());
        assert!(is_prime(&big(4_992_539)).unwrap());
        assert!(!is_prime(&big(8193)).unwrap());
        assert!(!is_prime(&big(561)).unwrap());
        assert!(matches!(is_prime(&big(1)), Err(Error::NotAboveOne(_))));
        assert!(is_prime(&big(-7)).is_err());
    }

    #[test]
    fn large_primality() {
        // 2^89 - 1 is a Mersenne prime, 2^67 - 1 is not
        let m89 = (BigInt::one() << 89u32) - 1u32;
        let m67 = (BigInt::one() << 67u32) - 1u32;
        assert!(is_prime(&m89).unwrap());
        assert!(!is_prime(&m67).unwrap());
        // strong pseudoprime to bases 2..37 (Jaeschke / Zhang); caught by 41
        let psp = BigInt::parse_bytes(b"318665857834031151167461", 10).unwrap();
        assert!(!is_prime(&psp).unwrap());
        // strong pseudoprime to all of 2..41; the extended base set catches it
        let psp41 = BigInt::parse_bytes(b"3317044064679887385961981", 10).unwrap();
        assert!(!is_prime(&psp41).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f = factorize(&big(1)).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.sign, 1);
        let f = factorize(&big(728)).unwrap();
        assert_eq!(f.to_string(), "2^3 * 7 * 13");
        let f = factorize(&big(529_984)).unwrap();
        assert_eq!(f.to_string(), "2^6 * 7^2 * 13^2");
        let f = factorize(&big(-8193)).unwrap();
        assert_eq!(f.to_string(), "-3 * 2731");
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn factor_beyond_trial_limit() {
        // two primes above 10^6 and a u64-overflowing semiprime
        let n = big(1_000_003) * big(1_000_033);
        assert_eq!(factorize(&n).unwrap().to_string(), "1000003 * 1000033");
        let m67 = (BigInt::one() << 67u32) - 1u32;
        assert_eq!(
            factorize(&m67).unwrap().to_string(),
            "193707721 * 761838257287"
        );
        let big_semi = BigInt::from(4_294_967_311u64) * BigInt::from(4_294_967_357u64) * 3u32;
        let f = factorize(&big_semi).unwrap();
        assert_eq!(f.product(), big_semi);
        assert_eq!(f.factors.len(), 3);
    }
}
