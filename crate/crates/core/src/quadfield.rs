//! The ring of integers of Q(sqrt 13), its named prime ideals and their
//! residue fields.
//!
//! Elements are stored as `(u + v w) / 2` with `w^2 = 13` and `u = v mod 2`,
//! which covers all of Z[(1 + w)/2]. The embedding into Q(zeta_13) sends `w`
//! to the Gauss sum `2 * eta + 1`, where `eta` is the sum of zeta^i over the
//! quadratic residues i mod 13.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{valuation, CycElt};
use crate::error::{Error, Result};

/// `(u + v w) / 2` with `u = v (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadElt {
    u: BigInt,
    v: BigInt,
}

impl QuadElt {
    /// Builds `(u + v w) / 2`; rejects pairs of different parity.
    pub fn new(u: BigInt, v: BigInt) -> Result<Self> {
        if u.is_odd() != v.is_odd() {
            return Err(Error::Unsupported {
                what: "half-integer pair",
                value: format!("({u} + {v}w)/2"),
            });
        }
        Ok(QuadElt { u, v })
    }

    /// `(u + v w) / 2` from machine integers. Panics on a parity mismatch.
    pub fn halves(u: i64, v: i64) -> Self {
        Self::new(BigInt::from(u), BigInt::from(v)).expect("u and v must have equal parity")
    }

    /// `a + b w`.
    pub fn from_parts(a: i64, b: i64) -> Self {
        QuadElt {
            u: BigInt::from(2 * a),
            v: BigInt::from(2 * b),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        QuadElt {
            u: n * 2,
            v: BigInt::zero(),
        }
    }

    pub fn w() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    /// `u^2 - 13 v^2) / 4`.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(13) * &self.v * &self.v) / 4
    }

    pub fn conj(&self) -> Self {
        QuadElt {
            u: self.u.clone(),
            v: -&self.v,
        }
    }

    /// `Some(n)` when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.v.is_zero().then(|| &self.u / 2)
    }

    /// Exact division by a nonzero rational integer, if the quotient is integral.
    pub fn div_int_exact(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let (qu, ru) = self.u.div_rem(n);
        let (qv, rv) = self.v.div_rem(n);
        if !ru.is_zero() || !rv.is_zero() {
            return None;
        }
        Self::new(qu, qv).ok()
    }

    /// Exact division, if the quotient is integral.
    pub fn div_exact(&self, d: &QuadElt) -> Option<Self> {
        let n = d.norm();
        (self * &d.conj()).div_int_exact(&n)
    }

    /// Multiplication by a rational integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        QuadElt {
            u: &self.u * k,
            v: &self.v * k,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QuadElt::one(), |acc, _| &acc * self)
    }
}

impl Zero for QuadElt {
    fn zero() -> Self {
        QuadElt::default()
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for QuadElt {
    fn one() -> Self {
        QuadElt::from_int(1)
    }
}

impl Add<&QuadElt> for &QuadElt {
    type Output = QuadElt;
    fn add(self, rhs: &QuadElt) -> QuadElt {
        QuadElt {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl Sub<&QuadElt> for &QuadElt {
    type Output = QuadElt;
    fn sub(self, rhs: &QuadElt) -> QuadElt {
        QuadElt {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl Mul<&QuadElt> for &QuadElt {
    type Output = QuadElt;
    fn mul(self, rhs: &QuadElt) -> QuadElt {
        let uu = &self.u * &rhs.u + BigInt::from(13) * &self.v * &rhs.v;
        let vv = &self.u * &rhs.v + &self.v * &rhs.u;
        QuadElt {
            u: uu / 2,
            v: vv / 2,
        }
    }
}

impl Add for QuadElt {
    type Output = QuadElt;
    fn add(self, rhs: QuadElt) -> QuadElt {
        &self + &rhs
    }
}

impl Sub for QuadElt {
    type Output = QuadElt;
    fn sub(self, rhs: QuadElt) -> QuadElt {
        &self - &rhs
    }
}

impl Mul for QuadElt {
    type Output = QuadElt;
    fn mul(self, rhs: QuadElt) -> QuadElt {
        &self * &rhs
    }
}

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt {
            u: -self.u,
            v: -self.v,
        }
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_even() {
            let a: BigInt = &self.u / 2;
            let b: BigInt = &self.v / 2;
            match (a.is_zero(), b.is_zero()) {
                (_, true) => write!(f, "{a}"),
                (true, false) => write!(f, "{b}w"),
                (false, false) if a.is_negative() => write!(f, "{b}w - {}", -a),
                (false, false) => write!(f, "{b}w + {a}"),
            }
        } else if self.u.is_negative() {
            write!(f, "({}w - {})/2", self.v, -&self.u)
        } else {
            write!(f, "({}w + {})/2", self.v, self.u)
        }
    }
}

impl Serialize for QuadElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Gauss period: the sum of zeta^i over the nonzero squares i mod 13.
pub fn gauss_period() -> CycElt {
    let terms: Vec<(i64, i64)> = [1, 3, 4, 9, 10, 12].iter().map(|&e| (1, e)).collect();
    CycElt::from_terms(&terms)
}

/// Image of `w` in Z[zeta].
pub fn w_in_cyclotomic() -> CycElt {
    let eta = gauss_period();
    &(&eta + &eta) + &CycElt::one()
}

/// Writes an element of Z[zeta] fixed by sigma^2 as an element of Z[(1+w)/2].
pub fn descend(e: &CycElt) -> Result<QuadElt> {
    if &e.galois(2) != e {
        return Err(Error::NotDescended {
            conjugate: "sigma^2",
        });
    }
    let eta = gauss_period();
    // e = x + y * eta; eta has a nonzero coordinate outside the constant term
    let (j, ej) = eta
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.is_zero())
        .expect("eta is irrational");
    let (y, rem) = e.coeffs()[j].div_rem(ej);
    let x = &e.coeffs()[0] - &y * &eta.coeffs()[0];
    let back = &CycElt::from_bigint(x.clone()) + &(&eta * &CycElt::from_bigint(y.clone()));
    if !rem.is_zero() || &back != e {
        return Err(Error::NotDescended {
            conjugate: "sigma^2",
        });
    }
    // x + y (w - 1)/2 = (2x - y + y w)/2
    QuadElt::new(BigInt::from(2) * &x - &y, y)
}

/// Inverse of [`descend`].
pub fn ascend(e: &QuadElt) -> CycElt {
    // (u + v w)/2 = (u + v)/2 + v * eta
    let half = (e.u() + e.v()) / 2;
    &CycElt::from_bigint(half) + &(&gauss_period() * &CycElt::from_bigint(e.v().clone()))
}

// ---------------------------------------------------------------------------
// Residue fields

/// Finite field F_p or F_p[theta]/(theta^2 - m1 theta - m0).
///
/// For odd p of degree 2 the generator is the image `t` of `w`, so
/// `theta^2 = 13`; for p = 2 it is the image of `(1 + w)/2`, which satisfies
/// `theta^2 = theta + 1` over F_2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    p: u32,
    degree: u8,
    m1: u32,
    m0: u32,
}

/// Element `c0 + c1 * theta` of a [`ResidueField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq {
    pub c0: u32,
    pub c1: u32,
}

impl Fq {
    pub const ZERO: Fq = Fq { c0: 0, c1: 0 };

    pub fn is_zero(self) -> bool {
        self == Fq::ZERO
    }
}

impl ResidueField {
    pub fn prime(p: u32) -> Self {
        ResidueField {
            p,
            degree: 1,
            m1: 0,
            m0: 0,
        }
    }

    /// Quadratic extension of F_p cut out by the image of Z[(1+w)/2].
    pub fn quadratic(p: u32) -> Result<Self> {
        let field = if p == 2 {
            ResidueField {
                p,
                degree: 2,
                m1: 1,
                m0: 1,
            }
        } else {
            let m0 = 13 % p;
            if (0..p).any(|x| (x as u64 * x as u64) % p as u64 == m0 as u64) {
                return Err(Error::Unsupported {
                    what: "inert residue field (t^2 - 13 splits)",
                    value: p.to_string(),
                });
            }
            ResidueField {
                p,
                degree: 2,
                m1: 0,
                m0,
            }
        };
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    pub fn from_int(&self, n: i64) -> Fq {
        Fq {
            c0: n.rem_euclid(self.p as i64) as u32,
            c1: 0,
        }
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    /// The generator theta (the image of `w`, or of `(1+w)/2` in characteristic 2).
    pub fn theta(&self) -> Fq {
        assert_eq!(self.degree, 2, "prime field has no theta");
        Fq { c0: 0, c1: 1 }
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq {
            c0: (a.c0 + b.c0) % self.p,
            c1: (a.c1 + b.c1) % self.p,
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq {
            c0: (self.p - a.c0) % self.p,
            c1: (self.p - a.c1) % self.p,
        }
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p as u64;
        let (a0, a1, b0, b1) = (a.c0 as u64, a.c1 as u64, b.c0 as u64, b.c1 as u64);
        let hi = a1 * b1 % p;
        Fq {
            c0: ((a0 * b0 + hi * self.m0 as u64) % p) as u32,
            c1: ((a0 * b1 + a1 * b0 + hi * self.m1 as u64) % p) as u32,
        }
    }

    pub fn scale(&self, k: i64, a: Fq) -> Fq {
        self.mul(self.from_int(k), a)
    }

    pub fn pow(&self, mut a: Fq, mut e: u64) -> Fq {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (!a.is_zero()).then(|| self.pow(a, self.size() - 2))
    }

    pub fn elements(&self) -> Vec<Fq> {
        let c1_range = if self.degree == 2 { self.p } else { 1 };
        (0..c1_range)
            .flat_map(|c1| (0..self.p).map(move |c0| Fq { c0, c1 }))
            .collect()
    }

    /// Position of `a` in [`ResidueField::elements`].
    pub fn index(&self, a: Fq) -> usize {
        a.c0 as usize + self.p as usize * a.c1 as usize
    }

    /// Some square root, found by exhaustive search.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.elements().into_iter().find(|&x| self.mul(x, x) == a)
    }

    pub fn format(&self, a: Fq) -> String {
        if self.degree == 1 || a.c1 == 0 {
            a.c0.to_string()
        } else {
            let g = if self.p == 2 { "theta" } else { "t" };
            match a.c0 {
                0 => format!("{}{g}", a.c1),
                c0 => format!("{c0} + {}{g}", a.c1),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Prime ideals

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug)]
pub struct QuadPrime {
    label: String,
    l: u32,
    kind: PrimeKind,
    generator: QuadElt,
    /// For split primes: the residue of `w` modulo the prime.
    root: Option<u32>,
    field: ResidueField,
}

impl PartialEq for QuadPrime {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl QuadPrime {
    fn build(label: String, l: u32, kind: PrimeKind, generator: QuadElt) -> Self {
        let (root, field) = match kind {
            PrimeKind::Split => {
                let lb = BigInt::from(l);
                let u = generator.u().mod_floor(&lb).to_i64().expect("small");
                let v = generator.v().mod_floor(&lb).to_i64().expect("small");
                let inv_v = mod_inverse(v, l as i64).expect("generator has v prime to l");
                let r = (-u * inv_v).rem_euclid(l as i64) as u32;
                (Some(r), ResidueField::prime(l))
            }
            PrimeKind::Inert => (
                None,
                ResidueField::quadratic(l).expect("inert prime has quadratic residue field"),
            ),
            PrimeKind::Ramified => (None, ResidueField::prime(l)),
        };
        QuadPrime {
            label,
            l,
            kind,
            generator,
            root,
            field,
        }
    }

    /// Looks up one of the named primes (`"L2"`, `"L3_0"`, ..., `"L29_1"`).
    pub fn named(label: &str) -> Result<QuadPrime> {
        named_primes()
            .iter()
            .find(|p| p.label == label)
            .cloned()
            .ok_or_else(|| Error::UnknownPrime(label.to_string()))
    }

    /// The prime ideals above a rational prime `l`, with generators found by
    /// search (the ring is a PID). Split primes come back as
    /// `[Ll_0, Ll_1]`, where `Ll_0` has generator `(u + v w)/2` with `u, v > 0`.
    pub fn above(l: u32) -> Result<Vec<QuadPrime>> {
        if l < 2 || !crate::exactalg::is_prime(&BigInt::from(l))? {
            return Err(Error::Unsupported {
                what: "rational prime",
                value: l.to_string(),
            });
        }
        if let Some(p) = named_primes()
            .iter()
            .filter(|p| p.l == l)
            .cloned()
            .collect::<Vec<_>>()
            .into_iter()
            .map(Some)
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
        {
            return Ok(p);
        }
        let splits = l != 2 && (0..l).any(|x| (x as u64 * x as u64) % l as u64 == 13 % l as u64);
        if !splits {
            return Ok(vec![Self::build(
                format!("L{l}"),
                l,
                PrimeKind::Inert,
                QuadElt::from_int(l as i64),
            )]);
        }
        // u^2 - 13 v^2 = +-4l
        let four_l = 4 * l as i64;
        for v in 1i64.. {
            for target in [13 * v * v + four_l, 13 * v * v - four_l] {
                if target < 0 {
                    continue;
                }
                let u = (target as f64).sqrt().round() as i64;
                for u in [u - 1, u, u + 1] {
                    if u > 0 && u * u == target && (u - v) % 2 == 0 {
                        let g0 = QuadElt::halves(u, v);
                        let g1 = g0.conj();
                        return Ok(vec![
                            Self::build(format!("L{l}_0"), l, PrimeKind::Split, g0),
                            Self::build(format!("L{l}_1"), l, PrimeKind::Split, g1),
                        ]);
                    }
                }
            }
        }
        unreachable!("search over v is unbounded")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The rational prime below.
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }

    pub fn residue_degree(&self) -> u8 {
        self.field.degree()
    }

    pub fn is_ramified(&self) -> bool {
        self.kind == PrimeKind::Ramified
    }

    pub fn generator(&self) -> &QuadElt {
        &self.generator
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    /// Size of the residue field.
    pub fn norm(&self) -> u64 {
        self.field.size()
    }

    /// Residue of `w` for a split prime.
    pub fn w_root(&self) -> Option<u32> {
        self.root
    }

    /// Reduction map onto the residue field.
    pub fn reduce(&self, e: &QuadElt) -> Fq {
        let l = self.l as i64;
        let lb = BigInt::from(self.l);
        let small = |x: &BigInt| x.mod_floor(&lb).to_i64().expect("reduced");
        match self.kind {
            PrimeKind::Split => {
                let r = self.root.expect("split prime") as i64;
                let inv2 = mod_inverse(2, l).expect("odd");
                let x = (small(e.u()) + small(e.v()) * r) % l * inv2 % l;
                self.field.from_int(x)
            }
            PrimeKind::Ramified => {
                let inv2 = mod_inverse(2, l).expect("odd");
                self.field.from_int(small(e.u()) * inv2)
            }
            PrimeKind::Inert if self.l == 2 => {
                // (u + v w)/2 = (u - v)/2 + v (1 + w)/2
                let half = (e.u() - e.v()) / 2;
                Fq {
                    c0: small(&half) as u32,
                    c1: small(e.v()) as u32,
                }
            }
            PrimeKind::Inert => {
                let inv2 = mod_inverse(2, l).expect("odd");
                Fq {
                    c0: (small(e.u()) * inv2 % l) as u32,
                    c1: (small(e.v()) * inv2 % l) as u32,
                }
            }
        }
    }

    /// A ring element reducing to `x`, with coordinates in `[0, l)`.
    pub fn lift(&self, x: Fq) -> QuadElt {
        let (c0, c1) = (x.c0 as i64, x.c1 as i64);
        match self.kind {
            PrimeKind::Split | PrimeKind::Ramified => QuadElt::from_int(c0),
            PrimeKind::Inert if self.l == 2 => QuadElt::halves(2 * c0 + c1, c1),
            PrimeKind::Inert => QuadElt::from_parts(c0, c1),
        }
    }

    pub fn divides(&self, e: &QuadElt) -> bool {
        self.reduce(e).is_zero()
    }

    /// `e / generator`, when integral.
    pub fn div_uniformizer(&self, e: &QuadElt) -> Option<QuadElt> {
        if let PrimeKind::Inert = self.kind {
            return e.div_int_exact(&BigInt::from(self.l));
        }
        e.div_exact(&self.generator)
    }

    /// Valuation of a nonzero element: nu_l(norm)/2 at inert primes,
    /// nu_13(norm) at the ramified prime, and the number of exact divisions by
    /// the generator at split primes.
    pub fn val_at(&self, e: &QuadElt) -> Result<u32> {
        if e.is_zero() {
            return Err(Error::ZeroArgument { op: "val_at" });
        }
        Ok(match self.kind {
            PrimeKind::Inert => valuation(&e.norm(), self.l) / 2,
            PrimeKind::Ramified => valuation(&e.norm(), self.l),
            PrimeKind::Split => {
                let mut k = 0;
                let mut cur = e.clone();
                while self.divides(&cur) {
                    cur = self.div_uniformizer(&cur).expect("divisible");
                    k += 1;
                }
                k
            }
        })
    }
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// The thirteen named primes in the order L2, L13, L3_0, L3_1, L17_0, L17_1,
/// L23_0, L23_1, L29_0, L29_1, L5, L7, L11.
pub fn named_primes() -> &'static [QuadPrime] {
    static PRIMES: OnceLock<Vec<QuadPrime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        use PrimeKind::*;
        let spec: [(&str, u32, PrimeKind, i64, i64); 13] = [
            ("L2", 2, Inert, 4, 0),
            ("L13", 13, Ramified, 0, 2),
            ("L3_0", 3, Split, 1, 1),
            ("L3_1", 3, Split, 1, -1),
            ("L17_0", 17, Split, 9, 1),
            ("L17_1", 17, Split, 9, -1),
            ("L23_0", 23, Split, -5, -3),
            ("L23_1", 23, Split, 5, -3),
            ("L29_0", 29, Split, 1, 3),
            ("L29_1", 29, Split, -1, 3),
            ("L5", 5, Inert, 10, 0),
            ("L7", 7, Inert, 14, 0),
            ("L11", 11, Inert, 22, 0),
        ];
        spec.iter()
            .map(|&(label, l, kind, u, v)| {
                QuadPrime::build(label.to_string(), l, kind, QuadElt::halves(u, v))
            })
            .collect()
    })
}

/// Column order of the eigenvalue tables: L3_0, L3_1, L17_0, L17_1, L23_0,
/// L23_1, L5, L29_0, L29_1, L7, L11.
pub const TRACE_PRIME_LABELS: [&str; 11] = [
    "L3_0", "L3_1", "L17_0", "L17_1", "L23_0", "L23_1", "L5", "L29_0", "L29_1", "L7", "L11",
];

pub fn trace_primes() -> Vec<QuadPrime> {
    TRACE_PRIME_LABELS
        .iter()
        .map(|l| QuadPrime::named(l).expect("named"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(u: i64, v: i64) -> QuadElt {
        QuadElt::halves(u, v)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(QuadElt::w().norm(), BigInt::from(-13));
        assert_eq!(q(1, 1).norm(), BigInt::from(-3));
        assert_eq!(q(-5, -3).norm(), BigInt::from(-23));
    }

    #[test]
    fn parity_enforced() {
        assert!(QuadElt::new(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn arithmetic() {
        let w = QuadElt::w();
        assert_eq!(&w * &w, QuadElt::from_int(13));
        let omega = q(1, 1);
        // omega^2 = omega + 3
        assert_eq!(&omega * &omega, &omega + &QuadElt::from_int(3));
        let prod = &q(5, 3) * &q(1, 1);
        assert_eq!(prod.div_exact(&q(1, 1)), Some(q(5, 3)));
        // norm -17 is not divisible by 3
        assert!(q(7, 3).div_exact(&q(1, 1)).is_none());
        assert!(QuadElt::from_int(1)
            .div_exact(&QuadElt::from_int(2))
            .is_none());
    }

    #[test]
    fn display() {
        assert_eq!(QuadElt::from_parts(-2808, 216).to_string(), "216w - 2808");
        assert_eq!(q(1, 1).to_string(), "(1w + 1)/2");
        assert_eq!(QuadElt::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn descend_examples() {
        assert_eq!(descend(&CycElt::one()).unwrap(), QuadElt::one());
        assert_eq!(descend(&gauss_period()).unwrap(), q(-1, 1));
        assert!(matches!(
            descend(&CycElt::zeta_pow(1)),
            Err(Error::NotDescended { .. })
        ));
        let wz = w_in_cyclotomic();
        assert_eq!(&wz * &wz, CycElt::from_int(13));
        assert_eq!(descend(&wz).unwrap(), QuadElt::w());
        assert_eq!(ascend(&QuadElt::w()), wz);
        assert_eq!(descend(&ascend(&q(-7, 9))).unwrap(), q(-7, 9));
    }

    #[test]
    fn named_prime_generators() {
        for p in named_primes() {
            let n = p.generator().norm().abs();
            assert_eq!(n, BigInt::from(p.norm()), "{}", p.label());
            assert!(p.divides(p.generator()));
            assert_eq!(p.val_at(p.generator()).unwrap(), 1, "{}", p.label());
        }
        assert_eq!(named_primes().len(), 13);
    }

    #[test]
    fn valuation_examples() {
        let l13 = QuadPrime::named("L13").unwrap();
        let l2 = QuadPrime::named("L2").unwrap();
        let l30 = QuadPrime::named("L3_0").unwrap();
        let l31 = QuadPrime::named("L3_1").unwrap();
        assert_eq!(l13.val_at(&QuadElt::w()).unwrap(), 1);
        assert_eq!(l13.val_at(&QuadElt::from_int(13)).unwrap(), 2);
        assert_eq!(l2.val_at(&QuadElt::from_int(2)).unwrap(), 1);
        assert_eq!(l30.val_at(&q(1, 1)).unwrap(), 1);
        assert_eq!(l31.val_at(&q(1, 1)).unwrap(), 0);
        assert_eq!(l30.val_at(&QuadElt::from_int(9)).unwrap(), 2);
        assert!(l30.val_at(&QuadElt::zero()).is_err());
    }

    #[test]
    fn reduction_examples() {
        let l30 = QuadPrime::named("L3_0").unwrap();
        assert_eq!(l30.reduce(&QuadElt::w()), Fq { c0: 2, c1: 0 });
        let l5 = QuadPrime::named("L5").unwrap();
        assert_eq!(l5.reduce(&QuadElt::w()), l5.residue_field().theta());
        let l17 = QuadPrime::named("L17_0").unwrap();
        assert_eq!(l17.w_root(), Some(8));
        assert_eq!(l17.reduce(&q(1, 1)), Fq { c0: 13, c1: 0 });
        let l2 = QuadPrime::named("L2").unwrap();
        let f = l2.residue_field();
        let th = l2.reduce(&q(1, 1));
        assert_eq!(th, f.theta());
        assert_eq!(f.mul(th, th), f.add(th, f.one()));
    }

    #[test]
    fn lift_inverts_reduce() {
        for p in named_primes() {
            for x in p.residue_field().elements() {
                assert_eq!(p.reduce(&p.lift(x)), x, "{}", p.label());
            }
        }
    }

    #[test]
    fn residue_fields_are_fields() {
        for p in named_primes() {
            let f = p.residue_field();
            for x in f.elements() {
                if !x.is_zero() {
                    let inv = f.inv(x).unwrap();
                    assert_eq!(f.mul(x, inv), f.one(), "{}", p.label());
                }
            }
        }
    }

    #[test]
    fn quadratic_field_rejects_split_prime() {
        assert!(ResidueField::quadratic(3).is_err());
        assert!(ResidueField::quadratic(5).is_ok());
    }

    #[test]
    fn primes_above() {
        let p = QuadPrime::above(43).unwrap();
        assert_eq!(p.len(), 2);
        for x in &p {
            assert_eq!(x.generator().norm().abs(), BigInt::from(43));
        }
        assert_eq!(QuadPrime::above(19).unwrap().len(), 1);
        assert_eq!(QuadPrime::above(19).unwrap()[0].residue_degree(), 2);
        assert_eq!(QuadPrime::above(3).unwrap()[0].label(), "L3_0");
        assert!(QuadPrime::above(15).is_err());
    }
}
