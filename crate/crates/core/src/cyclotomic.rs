//! Arithmetic in Z[zeta] for a primitive 13th root of unity zeta, together
//! with the factorization of phi(x, y) = (x^13 + y^13) / (x + y) into linear
//! forms x + zeta^i y and the weights (alpha, beta, gamma) used to build the
//! Frey family.

use std::array;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};

pub const ORDER: u32 = 13;
/// Generator of (Z/13)^*; sigma acts as zeta -> zeta^2.
pub const PRIMITIVE_ROOT: u32 = 2;

/// Element of Z[zeta] in the power basis 1, zeta, ..., zeta^11.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElt {
    c: [BigInt; 12],
}

pub type CycPoly = BiPoly<CycElt>;

impl CycElt {
    /// Reduces a vector indexed by exponents mod 13 using
    /// zeta^12 = -(1 + zeta + ... + zeta^11).
    fn from_full(full: &[BigInt; 13]) -> Self {
        let top = &full[12];
        CycElt {
            c: array::from_fn(|i| &full[i] - top),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut c: [BigInt; 12] = Default::default();
        c[0] = n;
        CycElt { c }
    }

    /// `zeta^k`, for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        Self::from_terms(&[(1, k)])
    }

    /// Sum of `coefficient * zeta^exponent` over the given pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut full: [BigInt; 13] = Default::default();
        for &(coef, e) in terms {
            full[e.rem_euclid(13) as usize] += coef;
        }
        Self::from_full(&full)
    }

    pub fn coeffs(&self) -> &[BigInt; 12] {
        &self.c
    }

    /// `Some(n)` when the element is the rational integer n.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.c[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.c[0].clone())
    }

    /// Applies sigma^k, where sigma(zeta) = zeta^2. The exponent is read
    /// modulo 12, the order of sigma.
    pub fn galois(&self, k: u32) -> Self {
        let g = pow_mod(PRIMITIVE_ROOT, k % 12, ORDER) as usize;
        let mut full: [BigInt; 13] = Default::default();
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                full[(i * g) % 13] += x;
            }
        }
        Self::from_full(&full)
    }

    /// Absolute norm: the product of all twelve Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let prod = (0..12).fold(CycElt::one(), |acc, k| &acc * &self.galois(k));
        prod.as_integer()
            .expect("the product of all conjugates is rational")
    }

    /// Valuation at the prime above 13 of Z[zeta] (normalized so that
    /// 1 - zeta has valuation 1). The prime is totally ramified of degree 12,
    /// so this equals the 13-adic valuation of the norm.
    pub fn val_p13(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroArgument { op: "val_p13" });
        }
        Ok(valuation(&self.norm(), 13))
    }

    /// Valuation at the prime above 13 of the degree-6 subfield fixed by
    /// sigma^6. Requires the element to lie in that subfield; the prime
    /// above 13 ramifies with index 2 in Q(zeta) over it.
    pub fn val_p13_sextic(&self) -> Result<u32> {
        if &self.galois(6) != self {
            return Err(Error::NotDescended {
                conjugate: "sigma^6",
            });
        }
        Ok(self.val_p13()? / 2)
    }
}

fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, p: u32) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

impl Zero for CycElt {
    fn zero() -> Self {
        CycElt {
            c: Default::default(),
        }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for CycElt {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add<&CycElt> for &CycElt {
    type Output = CycElt;
    fn add(self, rhs: &CycElt) -> CycElt {
        CycElt {
            c: array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub<&CycElt> for &CycElt {
    type Output = CycElt;
    fn sub(self, rhs: &CycElt) -> CycElt {
        CycElt {
            c: array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl Mul<&CycElt> for &CycElt {
    type Output = CycElt;
    fn mul(self, rhs: &CycElt) -> CycElt {
        let mut full: [BigInt; 13] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % 13] += a * b;
                }
            }
        }
        CycElt::from_full(&full)
    }
}

impl Add for CycElt {
    type Output = CycElt;
    fn add(self, rhs: CycElt) -> CycElt {
        &self + &rhs
    }
}

impl Mul for CycElt {
    type Output = CycElt;
    fn mul(self, rhs: CycElt) -> CycElt {
        &self * &rhs
    }
}

impl Neg for CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        CycElt {
            c: self.c.map(|x| -x),
        }
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => x.to_string(),
                1 => format!("{x}*z"),
                _ => format!("{x}*z^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Applies sigma^k coefficientwise.
pub fn galois_poly(p: &CycPoly, k: u32) -> CycPoly {
    p.map_coeffs(|c| c.galois(k))
}

/// The linear form `x + zeta^i y`.
pub fn linear_form(i: i64) -> CycPoly {
    CycPoly::from_terms([((1, 0), CycElt::one()), ((0, 1), CycElt::zeta_pow(i))])
}

/// `phi_r(x, y) = sum_{i=0}^{r-1} (-1)^i x^(r-1-i) y^i` with integer coefficients.
pub fn phi_integer(r: u32) -> BiPoly<BigInt> {
    BiPoly::from_terms((0..r).map(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        ((r - 1 - i, i), BigInt::from(sign))
    }))
}

/// `phi_r(a, b) = (a^r + b^r) / (a + b)`, evaluated directly from the
/// alternating sum so that a + b = 0 is allowed.
pub fn phi_value(r: u32, a: &BigInt, b: &BigInt) -> BigInt {
    phi_integer(r).eval(a, b)
}

/// Exponent groupings of the two sextic factors and the three quadratic
/// factors of phi_1.
pub const PHI1_EXPONENTS: [i64; 6] = [1, 12, 4, 9, 3, 10];
pub const PHI2_EXPONENTS: [i64; 6] = [2, 5, 6, 7, 8, 11];
pub const QUADRATIC_EXPONENTS: [[i64; 2]; 3] = [[1, 12], [4, 9], [3, 10]];

/// The products of linear forms grouped as phi = phi_1 * phi_2 and
/// phi_1 = f_1 * f_2 * f_3.
#[derive(Clone, Debug)]
pub struct PhiFactors {
    pub phi: CycPoly,
    pub phi1: CycPoly,
    pub phi2: CycPoly,
    pub quadratics: [CycPoly; 3],
}

fn product_of_forms(exps: &[i64]) -> CycPoly {
    exps.iter()
        .fold(CycPoly::constant(CycElt::one()), |acc, &e| {
            acc.mul(&linear_form(e))
        })
}

fn check_identity(identity: &'static str, lhs: &CycPoly, rhs: &CycPoly) -> Result<()> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((i, j)) => Err(Error::IdentityFailed {
            identity,
            detail: format!(
                "coefficient of x^{i} y^{j}: {} vs {}",
                lhs.coeff(i, j),
                rhs.coeff(i, j)
            ),
        }),
    }
}

/// Builds phi, phi_1, phi_2, f_1, f_2, f_3 from linear forms and checks
/// phi_1 * phi_2 = phi, f_1 f_2 f_3 = phi_1 and that the product of all
/// twelve linear forms is the integer polynomial phi.
pub fn build_phi_factors() -> Result<PhiFactors> {
    let phi: CycPoly = product_of_forms(&(1..=12).collect::<Vec<_>>());
    let phi1 = product_of_forms(&PHI1_EXPONENTS);
    let phi2 = product_of_forms(&PHI2_EXPONENTS);
    let quadratics = QUADRATIC_EXPONENTS.map(|e| product_of_forms(&e));

    let integer_phi = phi_integer(ORDER).map_coeffs(|c| CycElt::from_bigint(c.clone()));
    check_identity("prod (x + zeta^i y) = phi", &phi, &integer_phi)?;
    check_identity("phi_1 * phi_2 = phi", &phi1.mul(&phi2), &phi)?;
    let f123 = quadratics[0].mul(&quadratics[1]).mul(&quadratics[2]);
    check_identity("f_1 * f_2 * f_3 = phi_1", &f123, &phi1)?;
    Ok(PhiFactors {
        phi,
        phi1,
        phi2,
        quadratics,
    })
}

/// alpha = -z^10 + z^9 + z^4 - z^3, beta = z^12 - z^9 - z^4 + z,
/// gamma = -z^12 + z^10 + z^3 - z.
pub fn weights() -> [CycElt; 3] {
    [
        CycElt::from_terms(&[(-1, 10), (1, 9), (1, 4), (-1, 3)]),
        CycElt::from_terms(&[(1, 12), (-1, 9), (-1, 4), (1, 1)]),
        CycElt::from_terms(&[(-1, 12), (1, 10), (1, 3), (-1, 1)]),
    ]
}

pub const WEIGHT_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];

/// Which quadratic each weight multiplies in the null relation
/// `alpha * f_i + beta * f_j + gamma * f_k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NullRelation {
    /// `assignment[w]` is the (0-based) index of the quadratic paired with weight `w`.
    pub assignment: [usize; 3],
    /// Whether the pairing alpha f_1 + beta f_2 + gamma f_3 itself vanishes.
    pub printed_pairing_holds: bool,
}

impl NullRelation {
    pub fn describe(&self) -> String {
        let parts: Vec<String> = (0..3)
            .map(|w| format!("{}*f{}", WEIGHT_NAMES[w], self.assignment[w] + 1))
            .collect();
        format!("{} = 0", parts.join(" + "))
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn weighted_sum(w: &[CycElt; 3], q: &[CycPoly; 3], assignment: [usize; 3]) -> CycPoly {
    (0..3).fold(CycPoly::zero(), |acc, k| {
        acc.add(&q[assignment[k]].scale(&w[k]))
    })
}

/// Finds a pairing of weights to quadratics whose weighted sum vanishes
/// identically, trying alpha f_1 + beta f_2 + gamma f_3 first.
pub fn check_null_relation(factors: &PhiFactors) -> Result<NullRelation> {
    let w = weights();
    let printed_pairing_holds = weighted_sum(&w, &factors.quadratics, PERMUTATIONS[0]).is_zero();
    PERMUTATIONS
        .iter()
        .find(|&&perm| weighted_sum(&w, &factors.quadratics, perm).is_zero())
        .map(|&assignment| NullRelation {
            assignment,
            printed_pairing_holds,
        })
        .ok_or_else(|| Error::IdentityFailed {
            identity: "alpha, beta, gamma null relation",
            detail: "no assignment of weights to f_1, f_2, f_3 sums to zero".into(),
        })
}
