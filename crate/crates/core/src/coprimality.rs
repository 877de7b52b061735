//! Coprimality of the factors of `phi(a, b)` over Q(zeta_13), checked on
//! explicit integer pairs through ideal norms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{phi_value, valuation, CycElt, PhiFactors, ORDER};
use crate::error::{Error, Result};
use crate::exactalg::lattice_index;
use crate::quadfield::{descend, QuadPrime};

/// Norm of the ideal of Z[zeta] generated by `gens`: the index of the
/// Z-lattice spanned by all `zeta^k g`.
pub fn ideal_norm(gens: &[CycElt]) -> BigInt {
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .flat_map(|g| (0..12).map(move |k| (g * &CycElt::zeta_pow(k)).coeffs().to_vec()))
        .collect();
    lattice_index(&rows, 12)
}

/// `true` when `n` is a power of 13 (including 1).
pub fn is_power_of_13(n: &BigInt) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut m = n.abs();
    while (&m % 13u32).is_zero() {
        m /= 13u32;
    }
    m.is_one()
}

fn fail(identity: &'static str, a: &BigInt, b: &BigInt, detail: String) -> Error {
    Error::IdentityFailed {
        identity,
        detail: format!("(a, b) = ({a}, {b}): {detail}"),
    }
}

fn check_coprime(a: &BigInt, b: &BigInt) -> Result<()> {
    if a.gcd(b).is_one() {
        Ok(())
    } else {
        Err(Error::BadPair {
            a: a.clone(),
            b: b.clone(),
            reason: "not coprime",
        })
    }
}

fn linear(a: &BigInt, b: &BigInt, i: i64) -> CycElt {
    &CycElt::from_bigint(a.clone()) + &(&CycElt::zeta_pow(i) * &CycElt::from_bigint(b.clone()))
}

/// Any two factors `a + zeta^i b`, `a + zeta^j b` of `phi(a, b)` generate an
/// ideal of 13-power norm; when 13 | a + b every factor has valuation 1 at
/// the prime above 13.
pub fn check_linear_factors(a: &BigInt, b: &BigInt) -> Result<()> {
    check_coprime(a, b)?;
    let forms: Vec<CycElt> = (1..13).map(|i| linear(a, b, i)).collect();
    for i in 0..12 {
        for j in i + 1..12 {
            let n = ideal_norm(&[forms[i].clone(), forms[j].clone()]);
            if !is_power_of_13(&n) {
                return Err(fail(
                    "factors of phi coprime outside P13",
                    a,
                    b,
                    format!("ideal (a + z^{} b, a + z^{} b) has norm {n}", i + 1, j + 1),
                ));
            }
        }
    }
    if ((a + b) % ORDER).is_zero() {
        for (i, f) in forms.iter().enumerate() {
            let v = f.val_p13()?;
            if v != 1 {
                return Err(fail(
                    "13 | a + b implies v(a + z^i b) = 1",
                    a,
                    b,
                    format!("valuation {v} at i = {}", i + 1),
                ));
            }
        }
    }
    Ok(())
}

/// `gcd(a + b, phi(a, b))` is 1 or 13, and `v_13(phi(a, b)) = 1` when 13 | a + b.
pub fn check_sum_and_phi(a: &BigInt, b: &BigInt) -> Result<()> {
    check_coprime(a, b)?;
    let phi = phi_value(ORDER, a, b);
    let s = a + b;
    let g = s.gcd(&phi);
    if !(g.is_one() || g == BigInt::from(13)) {
        return Err(fail(
            "gcd(a + b, phi(a, b)) | 13",
            a,
            b,
            format!("gcd is {g}"),
        ));
    }
    if (&s % 13u32).is_zero() && valuation(&phi, 13) != 1 {
        return Err(fail(
            "13 | a + b implies v_13(phi(a, b)) = 1",
            a,
            b,
            format!("valuation {}", valuation(&phi, 13)),
        ));
    }
    Ok(())
}

/// Every prime `l <= limit` with `l | a^13 + b^13` and `l != 1 mod 13`
/// divides `a + b`. Returns the number of such primes encountered.
pub fn check_small_prime_divisors(a: &BigInt, b: &BigInt, limit: u32) -> Result<usize> {
    check_coprime(a, b)?;
    let total = num_traits::pow(a.clone(), 13) + num_traits::pow(b.clone(), 13);
    let s = a + b;
    let mut seen = 0;
    for l in primes_up_to(limit) {
        if l % 13 == 1 || !(&total % l).is_zero() {
            continue;
        }
        seen += 1;
        if !(&s % l).is_zero() {
            return Err(fail(
                "l | a^13 + b^13, l != 1 mod 13 implies l | a + b",
                a,
                b,
                format!("l = {l}"),
            ));
        }
    }
    Ok(seen)
}

/// `phi_1(a, b)` and `phi_2(a, b)` generate an ideal of 13-power norm, and
/// `phi_1(a, b)` has valuation 1 or 0 at the prime of Q(sqrt 13) above 13
/// according as 13 divides a + b or not.
pub fn check_sextic_factors(factors: &PhiFactors, a: &BigInt, b: &BigInt) -> Result<()> {
    check_coprime(a, b)?;
    let (ca, cb) = (
        CycElt::from_bigint(a.clone()),
        CycElt::from_bigint(b.clone()),
    );
    let p1 = factors.phi1.eval(&ca, &cb);
    let p2 = factors.phi2.eval(&ca, &cb);
    let n = ideal_norm(&[p1.clone(), p2]);
    if !is_power_of_13(&n) {
        return Err(fail(
            "phi_1(a, b), phi_2(a, b) coprime outside P13",
            a,
            b,
            format!("ideal norm {n}"),
        ));
    }
    let l13 = QuadPrime::named("L13")?;
    let v = l13.val_at(&descend(&p1)?)?;
    let expected = u32::from(((a + b) % ORDER).is_zero());
    if v != expected {
        return Err(fail(
            "v_P13(phi_1(a, b)) in {0, 1}",
            a,
            b,
            format!("valuation {v}, expected {expected}"),
        ));
    }
    Ok(())
}

/// Primes up to `n` by a sieve.
pub fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        for j in (i * i..=n).step_by(i) {
            composite[j] = true;
        }
    }
    out
}

/// `count` coprime pairs with entries in `[-bound, bound]`, not both zero,
/// drawn from a seeded generator. With `multiple_of_13_share`, roughly that
/// fraction of the pairs is forced to satisfy 13 | a + b.
pub fn sample_pairs(
    seed: u64,
    count: usize,
    bound: i64,
    multiple_of_13_share: f64,
) -> Vec<(BigInt, BigInt)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: i64 = rng.gen_range(-bound..=bound);
        let mut b: i64 = rng.gen_range(-bound..=bound);
        if rng.gen_bool(multiple_of_13_share) {
            b -= (a + b).rem_euclid(13);
        }
        if a.gcd(&b) == 1 {
            out.push((BigInt::from(a), BigInt::from(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build_phi_factors;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn norms_of_principal_ideals() {
        assert_eq!(
            ideal_norm(&[&CycElt::from_int(1) - &CycElt::zeta_pow(1)]),
            bi(13)
        );
        assert_eq!(ideal_norm(&[CycElt::from_int(2)]), bi(4096));
        assert_eq!(
            ideal_norm(&[CycElt::from_int(2), CycElt::from_int(3)]),
            bi(1)
        );
    }

    #[test]
    fn non_coprime_ideals_are_detected() {
        // 53 = 1 mod 13 splits completely: a + z b and 53 share a prime
        // whenever -a/b has order 13 modulo 53
        let r = (2..53)
            .find(|&x| {
                (1..13).all(|k| (0..k).fold(1, |acc, _| acc * x % 53) != 1)
                    && (0..13).fold(1, |acc, _| acc * x % 53) == 1
            })
            .unwrap();
        let n = ideal_norm(&[linear(&bi(-r), &bi(1), 1), CycElt::from_int(53)]);
        assert_eq!(n, bi(53));
    }

    #[test]
    fn fixed_pairs() {
        let f = build_phi_factors().unwrap();
        for (a, b) in [(1, 0), (2, 1), (14, -1), (4, -3), (-7, 20)] {
            let (a, b) = (bi(a), bi(b));
            check_linear_factors(&a, &b).unwrap();
            check_sum_and_phi(&a, &b).unwrap();
            check_small_prime_divisors(&a, &b, 1000).unwrap();
            check_sextic_factors(&f, &a, &b).unwrap();
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let x = sample_pairs(7, 20, 1000, 0.3);
        assert_eq!(x, sample_pairs(7, 20, 1000, 0.3));
        assert!(x.iter().all(|(a, b)| a.gcd(b).is_one()));
    }

    #[test]
    fn sieve() {
        assert_eq!(primes_up_to(30), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
