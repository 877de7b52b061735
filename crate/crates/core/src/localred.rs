//! Tate's algorithm over the completions of Q(sqrt 13) at the named primes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frey::CurveInstance;
use crate::quadfield::{Fq, QuadElt, QuadPrime};

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeierstrassModel {
    pub a1: QuadElt,
    pub a2: QuadElt,
    pub a3: QuadElt,
    pub a4: QuadElt,
    pub a6: QuadElt,
}

fn k(n: i64) -> BigInt {
    BigInt::from(n)
}

impl WeierstrassModel {
    pub fn new(a1: QuadElt, a2: QuadElt, a3: QuadElt, a4: QuadElt, a6: QuadElt) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn short(a4: QuadElt, a6: QuadElt) -> Self {
        let z = QuadElt::zero();
        Self::new(z.clone(), z.clone(), z, a4, a6)
    }

    pub fn from_instance(inst: &CurveInstance) -> Self {
        Self::short(inst.a4.clone(), inst.a6.clone())
    }

    pub fn b2(&self) -> QuadElt {
        &(&self.a1 * &self.a1) + &self.a2.mul_int(&k(4))
    }

    pub fn b4(&self) -> QuadElt {
        &self.a4.mul_int(&k(2)) + &(&self.a1 * &self.a3)
    }

    pub fn b6(&self) -> QuadElt {
        &(&self.a3 * &self.a3) + &self.a6.mul_int(&k(4))
    }

    pub fn b8(&self) -> QuadElt {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let t1 = &(a1 * a1) * a6;
        let t2 = (a2 * a6).mul_int(&k(4));
        let t3 = &(a1 * a3) * a4;
        let t4 = &(a3 * a3) * a2;
        let t5 = a4 * a4;
        &(&(&(&t1 + &t2) - &t3) + &t4) - &t5
    }

    pub fn c4(&self) -> QuadElt {
        let b2 = self.b2();
        &(&b2 * &b2) - &self.b4().mul_int(&k(24))
    }

    pub fn c6(&self) -> QuadElt {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        let cube = &(&b2 * &b2) * &b2;
        &(&(-cube) + &(&b2 * &b4).mul_int(&k(36))) - &b6.mul_int(&k(216))
    }

    pub fn discriminant(&self) -> QuadElt {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let t1 = -(&(&b2 * &b2) * &b8);
        let t2 = (&(&b4 * &b4) * &b4).mul_int(&k(8));
        let t3 = (&b6 * &b6).mul_int(&k(27));
        let t4 = (&(&b2 * &b4) * &b6).mul_int(&k(9));
        &(&(&t1 - &t2) - &t3) + &t4
    }

    /// Substitution `x = x' + r`, `y = y' + s x' + t`.
    pub fn rst(&self, r: &QuadElt, s: &QuadElt, t: &QuadElt) -> Self {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = k(2);
        let three = k(3);
        let n1 = a1 + &s.mul_int(&two);
        let n2 = &(&(a2 - &(s * a1)) + &r.mul_int(&three)) - &(s * s);
        let n3 = &(a3 + &(r * a1)) + &t.mul_int(&two);
        let n4 = {
            let rs = r * s;
            let x = &(a4 - &(s * a3)) + &(r * a2).mul_int(&two);
            let y = &(t + &rs) * a1;
            &(&(&x - &y) + &(r * r).mul_int(&three)) - &(s * t).mul_int(&two)
        };
        let n6 = {
            let r2 = r * r;
            let x = &(&(a6 + &(r * a4)) + &(&r2 * a2)) + &(&r2 * r);
            &(&(&x - &(t * a3)) - &(t * t)) - &(&(r * t) * a1)
        };
        Self::new(n1, n2, n3, n4, n6)
    }

    /// Scaling `x = u^2 x'`, `y = u^3 y'`: divides `a_i` by `u^i` when exact.
    pub fn scale_down(&self, u: &QuadElt) -> Option<Self> {
        let mut up = QuadElt::from_int(1);
        let mut pow = Vec::with_capacity(7);
        for _ in 0..=6 {
            pow.push(up.clone());
            up = &up * u;
        }
        Some(Self::new(
            self.a1.div_exact(&pow[1])?,
            self.a2.div_exact(&pow[2])?,
            self.a3.div_exact(&pow[3])?,
            self.a4.div_exact(&pow[4])?,
            self.a6.div_exact(&pow[6])?,
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reduction {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalData {
    pub prime: String,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    /// Valuation of the minimal discriminant.
    pub disc_valuation: u32,
    pub reduction: Reduction,
    /// Number of `u = pi` scalings needed to reach a minimal model.
    pub scalings: u32,
    pub minimal_model: WeierstrassModel,
}

const INFINITE: u32 = u32::MAX / 2;

struct Local<'a> {
    prime: &'a QuadPrime,
    pi: QuadElt,
}

impl Local<'_> {
    fn v(&self, x: &QuadElt) -> u32 {
        if x.is_zero() {
            INFINITE
        } else {
            self.prime.val_at(x).expect("nonzero")
        }
    }

    fn red(&self, x: &QuadElt) -> Fq {
        self.prime.reduce(x)
    }

    fn lift(&self, x: Fq) -> QuadElt {
        self.prime.lift(x)
    }

    fn inv(&self, x: &QuadElt) -> Result<Fq> {
        self.prime
            .residue_field()
            .inv(self.red(x))
            .ok_or_else(|| Error::Tate(format!("{} is not a unit", x)))
    }

    /// An `e`-th root of the residue of `x`.
    fn root(&self, x: &QuadElt, e: u64) -> Result<QuadElt> {
        self.root_fq(self.red(x), e)
    }

    fn root_fq(&self, x: Fq, e: u64) -> Result<QuadElt> {
        let f = self.prime.residue_field();
        f.elements()
            .into_iter()
            .find(|&y| f.pow(y, e) == x)
            .map(|y| self.lift(y))
            .ok_or_else(|| Error::Tate(format!("no {e}-th root of {}", f.format(x))))
    }

    fn mul_fq(&self, a: Fq, b: Fq) -> Fq {
        self.prime.residue_field().mul(a, b)
    }

    fn div_pi(&self, x: &QuadElt, times: u32) -> Result<QuadElt> {
        let mut cur = x.clone();
        for _ in 0..times {
            cur = self
                .prime
                .div_uniformizer(&cur)
                .ok_or_else(|| Error::Tate(format!("{x} is not divisible by pi^{times}")))?;
        }
        Ok(cur)
    }

    fn div(&self, x: &QuadElt, d: &QuadElt) -> Result<QuadElt> {
        x.div_exact(d)
            .ok_or_else(|| Error::Tate(format!("{x} is not divisible by {d}")))
    }

    fn half(&self, x: &QuadElt) -> Result<Fq> {
        let f = self.prime.residue_field();
        let inv2 = f
            .inv(f.from_int(2))
            .ok_or_else(|| Error::Tate("2 is not a unit".into()))?;
        Ok(f.mul(self.red(x), inv2))
    }
}

fn local_data(
    prime: &QuadPrime,
    kodaira: Kodaira,
    conductor_exponent: u32,
    disc_valuation: u32,
    scalings: u32,
    model: WeierstrassModel,
) -> LocalData {
    let reduction = match conductor_exponent {
        0 => Reduction::Good,
        1 => Reduction::Multiplicative,
        _ => Reduction::Additive,
    };
    LocalData {
        prime: prime.label().to_string(),
        kodaira,
        conductor_exponent,
        disc_valuation,
        reduction,
        scalings,
        minimal_model: model,
    }
}

/// Tate's algorithm: minimal model, Kodaira type and conductor exponent at
/// `prime`. The conductor exponent follows from Ogg's formula
/// `f = v(Delta_min) + 1 - (number of components)`.
pub fn tate(model: &WeierstrassModel, prime: &QuadPrime) -> Result<LocalData> {
    if model.discriminant().is_zero() {
        return Err(Error::SingularModel);
    }
    let lc = Local {
        prime,
        pi: prime.generator().clone(),
    };
    let p = prime.l();
    let f = prime.residue_field();
    let pi = lc.pi.clone();
    let pi2 = &pi * &pi;
    let zero = QuadElt::zero();
    let mut e = model.clone();
    let mut scalings = 0;
    loop {
        let n = lc.v(&e.discriminant());
        let done =
            |kod, fexp, e: WeierstrassModel| Ok(local_data(prime, kod, fexp, n, scalings, e));
        if n == 0 {
            return done(Kodaira::I0, 0, e);
        }
        if lc.v(&e.c4()) == 0 {
            return done(Kodaira::In(n), 1, e);
        }

        // move the singular point of the reduction to (0, 0)
        let (r, t) = match p {
            2 => {
                let r = lc.root(&e.a4, 2)?;
                let rhs = &(&(&(&(&r + &e.a2) * &r) + &e.a4) * &r) + &e.a6;
                let t = lc.root(&rhs, 2)?;
                (r, t)
            }
            3 => {
                let r = lc.root(&-e.b6(), 3)?;
                let t = &(&e.a1 * &r) + &e.a3;
                (r, lc.lift(lc.red(&t)))
            }
            _ => {
                let inv12 = f.inv(f.from_int(12)).expect("p >= 5");
                let r = f.neg(f.mul(inv12, lc.red(&e.b2())));
                let r_lift = lc.lift(r);
                let t = f.neg(lc.half(&(&(&e.a1 * &r_lift) + &e.a3))?);
                (r_lift, lc.lift(t))
            }
        };
        e = e.rst(&r, &zero, &t);

        if lc.v(&e.a6) < 2 {
            return done(Kodaira::II, n, e);
        }
        if lc.v(&e.b8()) < 3 {
            return done(Kodaira::III, n - 1, e);
        }
        if lc.v(&e.b6()) < 3 {
            return done(Kodaira::IV, n - 2, e);
        }

        // arrange pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        let (s, t) = match p {
            2 => {
                let s = lc.root(&e.a2, 2)?;
                let t = &pi * &lc.root(&lc.div_pi(&e.a6, 2)?, 2)?;
                (s, t)
            }
            3 => (e.a1.clone(), e.a3.clone()),
            _ => {
                // (p + 1) / 2 inverts 2 modulo p; no reduction, so that the
                // valuations of a1 and a3 strictly increase
                let h = BigInt::from(-((p as i64 + 1) / 2));
                (e.a1.mul_int(&h), e.a3.mul_int(&h))
            }
        };
        e = e.rst(&zero, &s, &t);

        let b = lc.div_pi(&e.a2, 1)?;
        let c = lc.div_pi(&e.a4, 2)?;
        let d = lc.div_pi(&e.a6, 3)?;
        let (bb, cc) = (&b * &b, &c * &c);
        let w = {
            let t1 = (&d * &d).mul_int(&k(27));
            let t2 = &bb * &cc;
            let t3 = (&(&bb * &b) * &d).mul_int(&k(4));
            let t4 = (&(&b * &c) * &d).mul_int(&k(18));
            let t5 = (&cc * &c).mul_int(&k(4));
            &(&(&(&t1 - &t2) + &t3) - &t4) + &t5
        };
        let x = &c.mul_int(&k(3)) - &bb;
        if lc.v(&w) == 0 {
            return done(Kodaira::I0Star, n - 4, e);
        }
        if lc.v(&x) == 0 {
            // double root: type I_m^*
            let r0 = match p {
                2 => lc.root(&c, 2)?,
                3 => lc.lift(lc.mul_fq(lc.red(&c), lc.inv(&b)?)),
                _ => {
                    let num = &(&b * &c) - &d.mul_int(&k(9));
                    let den = lc.inv(&x.mul_int(&k(2)))?;
                    lc.lift(lc.mul_fq(lc.red(&num), den))
                }
            };
            e = e.rst(&(&pi * &r0), &zero, &zero);
            let mut m = 1;
            let mut mx = pi2.clone();
            let mut my = pi2.clone();
            loop {
                let a2t = lc.div_pi(&e.a2, 1)?;
                let a3t = lc.div(&e.a3, &my)?;
                let a6t = lc.div(&e.a6, &(&mx * &my))?;
                if lc.v(&(&(&a3t * &a3t) + &a6t.mul_int(&k(4)))) == 0 {
                    break;
                }
                let t = match p {
                    2 => &my * &lc.root(&a6t, 2)?,
                    _ => &my * &lc.lift(f.neg(lc.half(&a3t)?)),
                };
                e = e.rst(&zero, &zero, &t);
                my = &my * &pi;
                m += 1;
                let a4t = lc.div(&e.a4, &(&pi * &mx))?;
                let a6t = lc.div(&e.a6, &(&mx * &my))?;
                if lc.v(&(&(&a4t * &a4t) - &(&a6t * &a2t).mul_int(&k(4)))) == 0 {
                    break;
                }
                let r = match p {
                    2 => {
                        let q = lc.mul_fq(lc.red(&a6t), lc.inv(&a2t)?);
                        &mx * &lc.root_fq(q, 2)?
                    }
                    _ => {
                        let q = lc.mul_fq(f.neg(lc.red(&a4t)), lc.inv(&a2t.mul_int(&k(2)))?);
                        &mx * &lc.lift(q)
                    }
                };
                e = e.rst(&r, &zero, &zero);
                mx = &mx * &pi;
                m += 1;
            }
            return done(Kodaira::InStar(m), n - m - 4, e);
        }

        // triple root
        let r0 = match p {
            2 => lc.lift(lc.red(&b)),
            3 => lc.root(&-d.clone(), 3)?,
            _ => {
                let inv3 = f.inv(f.from_int(3)).expect("p >= 5");
                lc.lift(f.neg(lc.mul_fq(lc.red(&b), inv3)))
            }
        };
        e = e.rst(&(&pi * &r0), &zero, &zero);
        let x3 = lc.div_pi(&e.a3, 2)?;
        let x6 = lc.div_pi(&e.a6, 4)?;
        if lc.v(&(&(&x3 * &x3) + &x6.mul_int(&k(4)))) == 0 {
            return done(Kodaira::IVStar, n - 6, e);
        }
        let t = match p {
            2 => &pi2 * &lc.root(&x6, 2)?,
            _ => &pi2 * &lc.lift(f.neg(lc.half(&x3)?)),
        };
        e = e.rst(&zero, &zero, &t);
        if lc.v(&e.a4) < 4 {
            return done(Kodaira::IIIStar, n - 7, e);
        }
        if lc.v(&e.a6) < 6 {
            return done(Kodaira::IIStar, n - 8, e);
        }
        e = e
            .scale_down(&pi)
            .ok_or_else(|| Error::Tate("non-minimal model does not scale".into()))?;
        scalings += 1;
    }
}

/// Conductor exponents of a curve at the given primes. At residue
/// characteristic at least 5 the exponent is read off from valuations when
/// v(Delta) < 12 (the model is then minimal); otherwise Tate's algorithm runs.
pub fn conductor_profile(
    inst: &CurveInstance,
    primes: &[QuadPrime],
) -> Result<BTreeMap<String, u32>> {
    let model = WeierstrassModel::from_instance(inst);
    let c4 = inst.a4.mul_int(&k(-48));
    let mut out = BTreeMap::new();
    for prime in primes {
        let fexp = if prime.l() >= 5 {
            let n = prime.val_at(&inst.delta0)?;
            let vc4 = if c4.is_zero() {
                INFINITE
            } else {
                prime.val_at(&c4)?
            };
            match (n, vc4) {
                (0, _) => 0,
                (_, 0) => 1,
                (n, _) if n < 12 => 2,
                _ => tate(&model, prime)?.conductor_exponent,
            }
        } else {
            tate(&model, prime)?.conductor_exponent
        };
        out.insert(prime.label().to_string(), fexp);
    }
    Ok(out)
}

/// Norm of the ideal of the ring of integers of Q(sqrt 13) generated by
/// `gens`, as a lattice index in the basis `1, (1 + w)/2`.
pub fn quad_ideal_norm(gens: &[QuadElt]) -> BigInt {
    let theta = QuadElt::halves(1, 1);
    let coords = |x: &QuadElt| vec![(x.u() - x.v()) / 2, x.v().clone()];
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .flat_map(|g| [coords(g), coords(&(g * &theta))])
        .collect();
    crate::exactalg::lattice_index(&rows, 2)
}

/// Reduction of `E_0(a, b)` away from 2.
#[derive(Clone, Debug, Serialize)]
pub struct SemistabilityCheck {
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub b: BigInt,
    /// Norm of `gcd((Delta_0), (c_4))`; only 2, 3 and 13 may divide it.
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub gcd_norm: BigInt,
    /// Conductor exponents above 3 from Tate's algorithm, and whether they
    /// agree with the valuation of the discriminant of `E(a, b)`.
    pub above_3: BTreeMap<String, u32>,
    pub above_3_consistent: bool,
    /// Exponent of `E_0` at the prime above 13 of Q(sqrt 13).
    pub at_13: u32,
    /// Exponent of `E` at the prime above 13 of the sextic field, where that
    /// prime has ramification index 3 over Q(sqrt 13).
    pub at_13_sextic: u32,
    pub thirteen_divides_sum: bool,
}

impl SemistabilityCheck {
    /// Semistable outside 2 and 13; exponent 2 at 13 for `E_0`, and for `E`
    /// over the sextic field exponent 2 or 0 according as 13 does not or
    /// does divide a + b.
    pub fn holds(&self) -> bool {
        let gcd_ok = {
            let mut n = self.gcd_norm.clone();
            for p in [2u32, 3, 13] {
                while !n.is_zero() && (&n % p).is_zero() {
                    n /= p;
                }
            }
            n == BigInt::from(1)
        };
        let expected_13 = if self.thirteen_divides_sum { 0 } else { 2 };
        gcd_ok && self.above_3_consistent && self.at_13 == 2 && self.at_13_sextic == expected_13
    }
}

/// Checks the reduction type of `E_0(a, b)` at every prime other than 2:
/// primes not dividing 6 * 13 through the ideal gcd of the discriminant and
/// `c_4`, the primes above 3 and 13 through Tate's algorithm.
pub fn semistability(inst: &CurveInstance, delta_e: &QuadElt) -> Result<SemistabilityCheck> {
    let model = WeierstrassModel::from_instance(inst);
    let c4 = inst.a4.mul_int(&k(-48));
    let gcd_norm = quad_ideal_norm(&[inst.delta0.clone(), c4]);
    let mut above_3 = BTreeMap::new();
    let mut above_3_consistent = true;
    for label in ["L3_0", "L3_1"] {
        let p = QuadPrime::named(label)?;
        let f = tate(&model, &p)?.conductor_exponent;
        above_3_consistent &= f == u32::from(p.divides(delta_e));
        above_3.insert(label.to_string(), f);
    }
    let l13 = QuadPrime::named("L13")?;
    let at_13 = tate(&model, &l13)?.conductor_exponent;
    let v = |x: &QuadElt| -> Result<u32> {
        Ok(if x.is_zero() {
            INFINITE
        } else {
            3 * l13.val_at(x)?
        })
    };
    let at_13_sextic = exponent_from_invariants(v(delta_e)?, v(&model.c4())?, v(&model.c6())?);
    Ok(SemistabilityCheck {
        a: inst.a.clone(),
        b: inst.b.clone(),
        gcd_norm,
        above_3,
        above_3_consistent,
        at_13,
        at_13_sextic,
        thirteen_divides_sum: ((&inst.a + &inst.b) % 13u32).is_zero(),
    })
}

/// Conductor exponent in residue characteristic at least 5 from the
/// valuations of the discriminant, `c_4` and `c_6`, scaling while the model
/// is not minimal.
pub fn exponent_from_invariants(mut vd: u32, mut vc4: u32, mut vc6: u32) -> u32 {
    while vd >= 12 && vc4 >= 4 && vc6 >= 6 {
        vd -= 12;
        vc4 -= 4;
        vc6 -= 6;
    }
    match (vd, vc4) {
        (0, _) => 0,
        (_, 0) => 1,
        _ => 2,
    }
}

/// Conductor exponents at the prime above 2 over one residue class of
/// `(a, b)` modulo 4.
#[derive(Clone, Debug, Serialize)]
pub struct Mod4Class {
    pub a: u32,
    pub b: u32,
    /// Exponents seen over the sampled coprime lifts of the class.
    pub exponents: std::collections::BTreeSet<u32>,
    pub lifts: usize,
}

/// Runs Tate's algorithm at the prime above 2 for every class of `(a, b)`
/// modulo 4 with not both entries even, over the coprime lifts
/// `(a + 4i, b + 4j)` with `0 <= a + 4i, b + 4j < lift_modulus`.
pub fn mod4_conductors(fam: &crate::frey::FreyFamily, lift_modulus: u32) -> Result<Vec<Mod4Class>> {
    use num_integer::Integer;
    use rayon::prelude::*;
    let l2 = QuadPrime::named("L2")?;
    let classes: Vec<(u32, u32)> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .filter(|(a, b)| a % 2 == 1 || b % 2 == 1)
        .collect();
    let m = lift_modulus.max(4);
    classes
        .par_iter()
        .map(|&(a0, b0)| {
            let mut exponents = std::collections::BTreeSet::new();
            let mut lifts = 0;
            for x in (a0..m).step_by(4) {
                for y in (b0..m).step_by(4) {
                    if x.gcd(&y) != 1 {
                        continue;
                    }
                    let inst = fam.instantiate(&BigInt::from(x), &BigInt::from(y))?;
                    let data = tate(&WeierstrassModel::from_instance(&inst), &l2)?;
                    exponents.insert(data.conductor_exponent);
                    lifts += 1;
                }
            }
            Ok(Mod4Class {
                a: a0,
                b: b0,
                exponents,
                lifts,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::named_primes;

    fn qi(n: i64) -> QuadElt {
        QuadElt::from_int(n)
    }

    fn over_q(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::new(qi(a[0]), qi(a[1]), qi(a[2]), qi(a[3]), qi(a[4]))
    }

    #[test]
    fn invariants_of_a_known_curve() {
        // 11a1: [0, -1, 1, -10, -20], discriminant -161051 = -11^5
        let e = over_q([0, -1, 1, -10, -20]);
        assert_eq!(e.discriminant(), qi(-161051));
        assert_eq!(e.c4(), qi(496));
        assert_eq!(e.c6(), qi(20008));
    }

    #[test]
    fn rst_preserves_discriminant() {
        let e = over_q([1, -1, 1, -10, -20]);
        let f = e.rst(&QuadElt::halves(1, 1), &QuadElt::w(), &qi(5));
        assert_eq!(e.discriminant(), f.discriminant());
        assert_eq!(e.c4(), f.c4());
    }

    #[test]
    fn split_prime_above_eleven_is_inert_here() {
        // 11 is inert in Q(sqrt 13): 11a1 has I5 at L11 over the quadratic field
        let l11 = QuadPrime::named("L11").unwrap();
        let d = tate(&over_q([0, -1, 1, -10, -20]), &l11).unwrap();
        assert_eq!(d.kodaira, Kodaira::In(5));
        assert_eq!(d.conductor_exponent, 1);
    }

    #[test]
    fn additive_types_over_rationals_embedded() {
        // 27a1: [0, 0, 1, 0, -7], type IV* at 3 (conductor 27, v(Delta) = 9);
        // 3 splits in Q(sqrt 13) so each prime above 3 sees the same data.
        let l3 = QuadPrime::named("L3_0").unwrap();
        let d = tate(&over_q([0, 0, 1, 0, -7]), &l3).unwrap();
        assert_eq!(d.kodaira, Kodaira::IVStar);
        assert_eq!(d.conductor_exponent, 3);
        // 24a1: [0, -1, 0, -4, 4], I1* at 2 with conductor exponent 3; 2 is
        // inert but unramified, so local data is unchanged
        let l2 = QuadPrime::named("L2").unwrap();
        let d = tate(&over_q([0, -1, 0, -4, 4]), &l2).unwrap();
        assert_eq!(d.kodaira, Kodaira::InStar(1));
        assert_eq!(d.conductor_exponent, 3);
        // 32a2: y^2 = x^3 - x, conductor 2^5, type III
        let d = tate(&over_q([0, 0, 0, -1, 0]), &l2).unwrap();
        assert_eq!(d.kodaira, Kodaira::III);
        assert_eq!(d.conductor_exponent, 5);
    }

    #[test]
    fn non_minimal_model_is_scaled() {
        // 11a1 scaled by u = 3 at a prime above 3
        let e = over_q([0, -1, 1, -10, -20]);
        let big = WeierstrassModel::new(
            e.a1.mul_int(&k(3)),
            e.a2.mul_int(&k(9)),
            e.a3.mul_int(&k(27)),
            e.a4.mul_int(&k(81)),
            e.a6.mul_int(&k(729)),
        );
        for label in ["L3_0", "L3_1"] {
            let p = QuadPrime::named(label).unwrap();
            let d = tate(&big, &p).unwrap();
            assert_eq!(d.kodaira, Kodaira::I0);
            assert_eq!(d.scalings, 1);
            assert_eq!(d.disc_valuation, 0);
        }
    }

    #[test]
    fn singular_model_rejected() {
        let e = over_q([0, 0, 0, 0, 0]);
        let p = &named_primes()[0];
        assert!(matches!(tate(&e, p), Err(Error::SingularModel)));
    }
}
