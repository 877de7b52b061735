//! The Frey family `E(a, b): y^2 = x (x - A) (x + B)` over the sextic subfield
//! of Q(zeta_13), and its short Weierstrass model `E_0` over Q(sqrt 13).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::cyclotomic::{
    build_phi_factors, check_null_relation, galois_poly, weights, CycElt, CycPoly, NullRelation,
    PhiFactors,
};
use crate::error::{Error, Result};
use crate::quadfield::{descend, QuadElt};

pub type QuadPoly = BiPoly<QuadElt>;

/// Printed coefficients of `a_4(a, b)` as `(w, constant)` pairs, from `a^4`
/// down to `b^4`.
pub const PRINTED_A4: [(i64, i64); 5] = [
    (216, -2808),
    (-1728, 5616),
    (1728, -11232),
    (-1728, 5616),
    (216, -2808),
];

/// Printed coefficients of `a_6(a, b)`, from `a^6` down to `b^6`.
pub const PRINTED_A6: [(i64, i64); 7] = [
    (-8640, 44928),
    (49248, -235872),
    (-129600, 471744),
    (152928, -662688),
    (-129600, 471744),
    (49248, -235872),
    (-8640, 44928),
];

/// Second term printed in the `b^6` slot of `a_6`.
pub const PRINTED_A6_EXTRA_B6: (i64, i64) = (50193, 182520);

#[derive(Clone, Debug)]
pub struct FreyFamily {
    pub pairing: NullRelation,
    pub factors: PhiFactors,
    pub a: CycPoly,
    pub b: CycPoly,
    pub c: CycPoly,
    pub delta: CycPoly,
    pub c4: CycPoly,
    pub c6: CycPoly,
    /// `-27 c_4` and `-54 c_6` before descent.
    pub a4_cyc: CycPoly,
    pub a6_cyc: CycPoly,
    pub a4: QuadPoly,
    pub a6: QuadPoly,
    /// `16 (A B C)^2` descended; equals the discriminant of `E`.
    pub delta_quad: QuadPoly,
    a4_dense: Vec<QuadElt>,
    a6_dense: Vec<QuadElt>,
}

fn int(n: i64) -> CycElt {
    CycElt::from_int(n)
}

fn descend_poly(p: &CycPoly) -> Result<QuadPoly> {
    p.try_map_coeffs(descend)
}

fn check_zero(identity: &'static str, p: &CycPoly) -> Result<()> {
    match p.terms().next() {
        None => Ok(()),
        Some((&(i, j), c)) => Err(Error::IdentityFailed {
            identity,
            detail: format!("coefficient of x^{i} y^{j} is {c}"),
        }),
    }
}

/// Coefficients of a homogeneous polynomial of degree `d`, indexed by the
/// power of `y`.
fn dense(p: &QuadPoly, d: u32) -> Vec<QuadElt> {
    (0..=d).map(|j| p.coeff(d - j, j)).collect()
}

/// Builds A, B, C from the verified null relation, the invariants and the
/// descended short model, checking `A + B + C = 0` and
/// `c_4^3 - c_6^2 = 1728 Delta`.
pub fn build_family() -> Result<FreyFamily> {
    let factors = build_phi_factors()?;
    let pairing = check_null_relation(&factors)?;
    let w = weights();
    let [a, b, c] = [0, 1, 2].map(|k| factors.quadratics[pairing.assignment[k]].scale(&w[k]));
    check_zero("A + B + C = 0", &a.add(&b).add(&c))?;

    let k = |n: i64| CycPoly::constant(int(n));
    let abc = a.mul(&b).mul(&c);
    let delta = abc.mul(&abc).scale(&int(16));
    let c4 = a.mul(&a).add(&a.mul(&b)).add(&b.mul(&b)).scale(&int(16));
    let c6 = c
        .add(&b.scale(&int(2)))
        .mul(&a.add(&b.scale(&int(2))))
        .mul(&a.scale(&int(2)).add(&b))
        .scale(&int(-32));
    let lhs = c4.pow(3).sub(&c6.pow(2));
    check_zero("c4^3 - c6^2 = 1728 Delta", &lhs.sub(&delta.mul(&k(1728))))?;

    let a4_cyc = c4.scale(&int(-27));
    let a6_cyc = c6.scale(&int(-54));
    let a4 = descend_poly(&a4_cyc)?;
    let a6 = descend_poly(&a6_cyc)?;
    let delta_quad = descend_poly(&delta)?;
    let a4_dense = dense(&a4, 4);
    let a6_dense = dense(&a6, 6);
    Ok(FreyFamily {
        pairing,
        factors,
        a,
        b,
        c,
        delta,
        c4,
        c6,
        a4_cyc,
        a6_cyc,
        a4,
        a6,
        delta_quad,
        a4_dense,
        a6_dense,
    })
}

/// One monomial slot of a printed polynomial next to its derived value.
#[derive(Clone, Debug, Serialize)]
pub struct SlotComparison {
    pub monomial: String,
    pub derived: QuadElt,
    pub printed: Vec<QuadElt>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedComparison {
    pub a4: Vec<SlotComparison>,
    pub a6: Vec<SlotComparison>,
    /// The derived `b^6` coefficient, the printed terms in that slot, and
    /// which printed term (if any) equals the derived value.
    pub b6_derived: QuadElt,
    pub b6_printed: Vec<QuadElt>,
    pub b6_matching_term: Option<usize>,
    pub b6_printed_sum_matches: bool,
}

fn monomial(d: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", part("a", d - j), part("b", j))
}

fn printed(p: (i64, i64)) -> QuadElt {
    QuadElt::from_parts(p.1, p.0)
}

/// Compares the derived `a_4`, `a_6` with the printed transcriptions. The
/// `a_4` slots and the `a_6` slots other than `b^6` must match exactly.
pub fn verify_printed_polynomials(fam: &FreyFamily) -> Result<PrintedComparison> {
    let a4: Vec<SlotComparison> = (0..5u32)
        .map(|j| {
            let derived = fam.a4_dense[j as usize].clone();
            let p = printed(PRINTED_A4[j as usize]);
            SlotComparison {
                monomial: monomial(4, j),
                matches: derived == p,
                derived,
                printed: vec![p],
            }
        })
        .collect();
    if let Some(bad) = a4.iter().find(|s| !s.matches) {
        return Err(Error::IdentityFailed {
            identity: "printed a4",
            detail: format!(
                "{}: derived {} vs printed {}",
                bad.monomial, bad.derived, bad.printed[0]
            ),
        });
    }
    let mut a6: Vec<SlotComparison> = (0..7u32)
        .map(|j| {
            let derived = fam.a6_dense[j as usize].clone();
            let p = printed(PRINTED_A6[j as usize]);
            SlotComparison {
                monomial: monomial(6, j),
                matches: derived == p,
                derived,
                printed: vec![p],
            }
        })
        .collect();
    a6[6].printed.push(printed(PRINTED_A6_EXTRA_B6));
    let b6_printed = a6[6].printed.clone();
    let b6_derived = a6[6].derived.clone();
    let sum = &b6_printed[0] + &b6_printed[1];
    a6[6].matches = sum == b6_derived;
    if let Some(bad) = a6[..6].iter().find(|s| !s.matches) {
        return Err(Error::IdentityFailed {
            identity: "printed a6",
            detail: format!(
                "{}: derived {} vs printed {}",
                bad.monomial, bad.derived, bad.printed[0]
            ),
        });
    }
    Ok(PrintedComparison {
        b6_matching_term: b6_printed.iter().position(|p| *p == b6_derived),
        b6_printed_sum_matches: sum == b6_derived,
        b6_derived,
        b6_printed,
        a4,
        a6,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisCoherence {
    /// Coefficients checked for invariance under sigma^2.
    pub fixed_coefficients: usize,
    /// `sigma4_image[k]` is the index in (A, B, C) of sigma^4 applied to the k-th.
    pub sigma4_image: [usize; 3],
    pub cyclic: bool,
    pub sigma12_identity: bool,
}

/// Checks that a_4, a_6, AB + BC + CA and ABC are fixed by sigma^2 and that
/// sigma^4 permutes {A, B, C} cyclically.
pub fn galois_coherence(fam: &FreyFamily) -> Result<GaloisCoherence> {
    let sym2 = fam
        .a
        .mul(&fam.b)
        .add(&fam.b.mul(&fam.c))
        .add(&fam.c.mul(&fam.a));
    let abc = fam.a.mul(&fam.b).mul(&fam.c);
    let mut fixed_coefficients = 0;
    for (name, p) in [
        ("a4", &fam.a4_cyc),
        ("a6", &fam.a6_cyc),
        ("AB + BC + CA", &sym2),
        ("ABC", &abc),
    ] {
        for (&(i, j), c) in p.terms() {
            if &c.galois(2) != c {
                return Err(Error::IdentityFailed {
                    identity: "sigma^2 invariance",
                    detail: format!("{name}: coefficient of x^{i} y^{j}"),
                });
            }
            fixed_coefficients += 1;
        }
    }
    let abc_list = [&fam.a, &fam.b, &fam.c];
    let mut sigma4_image = [0usize; 3];
    for (k, p) in abc_list.iter().enumerate() {
        let img = galois_poly(p, 4);
        sigma4_image[k] =
            abc_list
                .iter()
                .position(|q| **q == img)
                .ok_or_else(|| Error::IdentityFailed {
                    identity: "sigma^4 permutes {A, B, C}",
                    detail: format!("image of {} is not in the set", ["A", "B", "C"][k]),
                })?;
    }
    let cyclic = sigma4_image.iter().enumerate().all(|(k, &i)| i != k)
        && sigma4_image[sigma4_image[sigma4_image[0]]] == 0;
    if !cyclic {
        return Err(Error::IdentityFailed {
            identity: "sigma^4 acts as a 3-cycle",
            detail: format!("permutation {sigma4_image:?}"),
        });
    }
    let sigma12_identity = galois_poly(&fam.a, 12) == fam.a;
    Ok(GaloisCoherence {
        fixed_coefficients,
        sigma4_image,
        cyclic,
        sigma12_identity,
    })
}

/// The short model `E_0(a, b)` at a coprime integer pair.
#[derive(Clone, Debug, Serialize)]
pub struct CurveInstance {
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub b: BigInt,
    pub a4: QuadElt,
    pub a6: QuadElt,
    /// `-16 (4 a_4^3 + 27 a_6^2)`, equal to `6^12` times the discriminant of `E`.
    pub delta0: QuadElt,
}

/// Evaluates a homogeneous polynomial given by its coefficients (indexed by
/// the power of the second variable).
fn eval_dense(coeffs: &[QuadElt], a: &BigInt, b: &BigInt) -> QuadElt {
    let d = coeffs.len() - 1;
    let mut apow = vec![BigInt::one(); d + 1];
    let mut bpow = vec![BigInt::one(); d + 1];
    for k in 1..=d {
        apow[k] = &apow[k - 1] * a;
        bpow[k] = &bpow[k - 1] * b;
    }
    coeffs
        .iter()
        .enumerate()
        .fold(QuadElt::zero(), |acc, (j, c)| {
            &acc + &c.mul_int(&(&apow[d - j] * &bpow[j]))
        })
}

impl FreyFamily {
    pub fn a4_coeffs(&self) -> &[QuadElt] {
        &self.a4_dense
    }

    pub fn a6_coeffs(&self) -> &[QuadElt] {
        &self.a6_dense
    }

    /// Exact evaluation of the short model at a coprime pair.
    pub fn instantiate(&self, a: &BigInt, b: &BigInt) -> Result<CurveInstance> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BadPair {
                a: a.clone(),
                b: b.clone(),
                reason: "both zero",
            });
        }
        if !a.gcd(b).is_one() {
            return Err(Error::BadPair {
                a: a.clone(),
                b: b.clone(),
                reason: "not coprime",
            });
        }
        self.instantiate_unchecked(a, b)
    }

    /// Evaluation without the coprimality check; still rejects a vanishing
    /// discriminant.
    pub fn instantiate_unchecked(&self, a: &BigInt, b: &BigInt) -> Result<CurveInstance> {
        let a4 = eval_dense(&self.a4_dense, a, b);
        let a6 = eval_dense(&self.a6_dense, a, b);
        let delta0 = short_discriminant(&a4, &a6);
        if delta0.is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(CurveInstance {
            a: a.clone(),
            b: b.clone(),
            a4,
            a6,
            delta0,
        })
    }

    pub fn instantiate_i64(&self, a: i64, b: i64) -> Result<CurveInstance> {
        self.instantiate(&BigInt::from(a), &BigInt::from(b))
    }

    /// Discriminant of `E(a, b)` itself, `16 (ABC)^2`, descended to Q(sqrt 13).
    pub fn delta_e(&self, a: &BigInt, b: &BigInt) -> QuadElt {
        let qa = QuadElt::from_bigint(a);
        let qb = QuadElt::from_bigint(b);
        self.delta_quad.eval(&qa, &qb)
    }
}

/// `-16 (4 a_4^3 + 27 a_6^2)`.
pub fn short_discriminant(a4: &QuadElt, a6: &QuadElt) -> QuadElt {
    let cube = &(a4 * a4) * a4;
    let sq = a6 * a6;
    let inner = &cube.mul_int(&BigInt::from(4)) + &sq.mul_int(&BigInt::from(27));
    inner.mul_int(&BigInt::from(-16))
}

/// `6^12`.
pub fn short_model_scale() -> BigInt {
    num_traits::pow(BigInt::from(6), 12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::QuadPrime;
    use std::sync::OnceLock;

    fn fam() -> &'static FreyFamily {
        static F: OnceLock<FreyFamily> = OnceLock::new();
        F.get_or_init(|| build_family().unwrap())
    }

    #[test]
    fn a4_leading_coefficients() {
        assert_eq!(fam().a4.coeff(4, 0), QuadElt::from_parts(-2808, 216));
        assert_eq!(fam().a4.coeff(3, 1), QuadElt::from_parts(5616, -1728));
    }

    #[test]
    fn abc_sum_vanishes_at_a_point() {
        let f = fam();
        let one = CycElt::one();
        let m1 = -CycElt::one();
        let s = &(&f.a.eval(&one, &m1) + &f.b.eval(&one, &m1)) + &f.c.eval(&one, &m1);
        assert!(s.is_zero());
    }

    #[test]
    fn printed_polynomials() {
        let cmp = verify_printed_polynomials(fam()).unwrap();
        assert!(cmp.a4.iter().all(|s| s.matches));
        assert!(cmp.a6[..6].iter().all(|s| s.matches));
        assert_eq!(cmp.b6_printed.len(), 2);
        assert_eq!(cmp.b6_matching_term, Some(0));
        assert!(!cmp.b6_printed_sum_matches);
    }

    #[test]
    fn coherence() {
        let g = galois_coherence(fam()).unwrap();
        assert!(g.cyclic);
        assert!(g.sigma12_identity);
    }

    #[test]
    fn delta_scaling() {
        let f = fam();
        let inst = f.instantiate_i64(4, -3).unwrap();
        let de = f.delta_e(&BigInt::from(4), &BigInt::from(-3));
        assert_eq!(inst.delta0, de.mul_int(&short_model_scale()));
    }

    #[test]
    fn discriminant_valuations() {
        let f = fam();
        let l13 = QuadPrime::named("L13").unwrap();
        let l2 = QuadPrime::named("L2").unwrap();
        let v = |a: i64, b: i64, p: &QuadPrime| {
            p.val_at(&f.delta_e(&BigInt::from(a), &BigInt::from(b)))
                .unwrap()
        };
        // the sextic field is ramified of index 3 over Q(sqrt 13) at 13
        assert_eq!(3 * v(1, 0, &l13), 6);
        assert_eq!(3 * v(4, -3, &l13), 6);
        assert_eq!(3 * v(14, -1, &l13), 12);
        assert_eq!(v(1, 0, &l2), 4);
        assert_eq!(v(1, 1, &l2), 4);
    }

    #[test]
    fn rejects_bad_pairs() {
        let f = fam();
        assert!(matches!(
            f.instantiate_i64(0, 0),
            Err(Error::BadPair { .. })
        ));
        assert!(matches!(
            f.instantiate_i64(2, 4),
            Err(Error::BadPair { .. })
        ));
        assert!(f.instantiate_i64(1, -1).is_ok());
    }
}
