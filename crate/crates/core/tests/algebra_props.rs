use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use frey13::coprimality::{
    check_linear_factors, check_sextic_factors, check_small_prime_divisors, check_sum_and_phi,
    sample_pairs,
};
use frey13::cyclotomic::{build_phi_factors, phi_value, CycElt};
use frey13::exactalg::{factorize, is_prime, resultant, IntPoly};
use frey13::quadfield::{ascend, descend, QuadElt};

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn cyc() -> impl Strategy<Value = CycElt> {
    prop::collection::vec(-20i64..=20, 12).prop_map(|c| {
        CycElt::from_terms(
            &c.iter()
                .enumerate()
                .map(|(k, &x)| (k as i64, x))
                .collect::<Vec<_>>(),
        )
    })
}

fn quad() -> impl Strategy<Value = QuadElt> {
    (-200i64..=200, -200i64..=200).prop_map(|(a, b)| QuadElt::from_parts(a, b))
}

fn from_roots(roots: &[i64]) -> IntPoly {
    roots.iter().fold(IntPoly::from_i64s(&[1]), |acc, &r| {
        acc.mul(&IntPoly::from_i64s(&[-r, 1]))
    })
}

fn trial_division_is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[test]
fn coprimality_statements_on_random_pairs() {
    let factors = build_phi_factors().unwrap();
    let pairs = sample_pairs(2024, 200, 10_000, 0.25);
    let multiples = pairs
        .iter()
        .filter(|(a, b)| ((a + b) % 13u32).is_zero())
        .count();
    assert!(multiples > 20, "both cases should be exercised");
    for (a, b) in &pairs {
        check_linear_factors(a, b).unwrap();
        check_sum_and_phi(a, b).unwrap();
        check_small_prime_divisors(a, b, 10_000).unwrap();
        check_sextic_factors(&factors, a, b).unwrap();
    }
}

#[test]
fn small_prime_divisors_against_brute_force() {
    // gcd(a + b, phi(a, b)) | 13, so any prime l | a^13 + b^13 missing from
    // a + b divides phi(a, b), and then 13 | l - 1 (or l = 13)
    for (a, b) in sample_pairs(5, 100, 300, 0.0) {
        let phi = phi_value(13, &a, &b);
        for l in 2u32..2000 {
            if trial_division_is_prime(l as u64) && (&phi % l).is_zero() && l != 13 {
                assert_eq!(l % 13, 1, "({a}, {b}) l = {l}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_the_cofactor(a in -500i64..500, b in -500i64..500) {
        let (a, b) = (bi(a), bi(b));
        let lhs = num_traits::pow(a.clone(), 13) + num_traits::pow(b.clone(), 13);
        prop_assert_eq!(lhs, (&a + &b) * phi_value(13, &a, &b));
    }

    #[test]
    fn resultant_of_split_polynomials(
        r in prop::collection::vec(-6i64..=6, 1..5),
        s in prop::collection::vec(-6i64..=6, 1..5),
    ) {
        let p = from_roots(&r);
        let q = from_roots(&s);
        let expected: BigInt = r
            .iter()
            .flat_map(|x| s.iter().map(move |y| bi(x - y)))
            .product();
        prop_assert_eq!(resultant(&p, &q).unwrap(), expected);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        p in prop::collection::vec(-5i64..=5, 2..6),
        q in prop::collection::vec(-5i64..=5, 2..6),
        shared in prop::option::of(-4i64..=4),
    ) {
        let mut p = IntPoly::from_i64s(&p);
        let mut q = IntPoly::from_i64s(&q);
        prop_assume!(!p.is_zero() && !q.is_zero());
        if let Some(c) = shared {
            let f = IntPoly::from_i64s(&[c, 1]);
            p = p.mul(&f);
            q = q.mul(&f);
        }
        let res = resultant(&p, &q).unwrap();
        let g = p.gcd(&q);
        prop_assert_eq!(res.is_zero(), g.degree().unwrap_or(0) > 0);
    }

    #[test]
    fn factorization_round_trips(n in 2u64..(1u64 << 62)) {
        let n = BigInt::from(n);
        let f = factorize(&n).unwrap();
        prop_assert_eq!(f.product(), n);
        for p in f.primes() {
            prop_assert!(is_prime(p).unwrap());
        }
    }

    #[test]
    fn factorization_of_products(a in 2u64..100_000, b in 2u64..100_000) {
        let next = |mut n: u64| { while !trial_division_is_prime(n) { n += 1; } n };
        let (p, q) = (next(a), next(b));
        let f = factorize(&(BigInt::from(p) * BigInt::from(q))).unwrap();
        let mut got: Vec<BigInt> = f.primes().cloned().collect();
        got.sort();
        let mut want = vec![BigInt::from(p.min(q)), BigInt::from(p.max(q))];
        want.dedup();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn primality_agrees_with_trial_division(n in 0u64..200_000) {
        prop_assert_eq!(is_prime(&BigInt::from(n)).unwrap(), trial_division_is_prime(n));
    }

    #[test]
    fn horner_matches_naive_evaluation(
        c in prop::collection::vec(-1000i64..1000, 0..20),
        x in -50i64..50,
    ) {
        let p = IntPoly::from_i64s(&c);
        let naive: BigInt = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| bi(ci) * num_traits::pow(bi(x), i))
            .sum();
        prop_assert_eq!(p.eval_i64(x), naive);
    }

    #[test]
    fn galois_action_is_a_ring_homomorphism(x in cyc(), y in cyc(), k in 1u32..13) {
        prop_assert_eq!((&x * &y).galois(k), &x.galois(k) * &y.galois(k));
        prop_assert_eq!((&x + &y).galois(k), &x.galois(k) + &y.galois(k));
        prop_assert_eq!(x.galois(k).galois(1), x.galois(k + 1));
        prop_assert_eq!(x.galois(0), x.clone());
    }

    #[test]
    fn sigma_has_order_twelve(x in cyc()) {
        let mut y = x.clone();
        for _ in 0..12 {
            y = y.galois(1);
        }
        prop_assert_eq!(y, x);
        prop_assert_eq!(CycElt::zeta_pow(1).galois(1), CycElt::zeta_pow(2));
    }

    #[test]
    fn norm_is_multiplicative(x in cyc(), y in cyc()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn quadratic_field_arithmetic(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &x.conj()).as_integer(), Some(x.norm()));
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).div_exact(&y), Some(x.clone()));
        }
    }

    #[test]
    fn descent_inverts_ascent(x in quad(), y in quad()) {
        prop_assert_eq!(descend(&ascend(&x)).unwrap(), x.clone());
        prop_assert_eq!(ascend(&(&x * &y)), &ascend(&x) * &ascend(&y));
    }
}

#[test]
fn twelve_multiples_of_a_unit_have_index_one() {
    let u = &CycElt::from_int(1) + &CycElt::zeta_pow(1);
    assert!(frey13::coprimality::ideal_norm(&[u]).is_one());
}
