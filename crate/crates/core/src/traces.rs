//! Residual Frey curves over the residue fields of the trace primes: point
//! counts and the sets of possible Frobenius traces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frey::FreyFamily;
use crate::localred::{tate, Reduction, WeierstrassModel};
use crate::quadfield::{Fq, QuadPrime, ResidueField};

/// A long Weierstrass model over a residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCurve {
    field: ResidueField,
    /// a1, a2, a3, a4, a6
    a: [Fq; 5],
}

fn discriminant_fq(f: &ResidueField, a: &[Fq; 5]) -> Fq {
    let [a1, a2, a3, a4, a6] = *a;
    let m = |x, y| f.mul(x, y);
    let s = |k: i64, x| f.scale(k, x);
    let b2 = f.add(m(a1, a1), s(4, a2));
    let b4 = f.add(s(2, a4), m(a1, a3));
    let b6 = f.add(m(a3, a3), s(4, a6));
    let b8 = {
        let t = f.add(m(m(a1, a1), a6), s(4, m(a2, a6)));
        let t = f.sub(t, m(m(a1, a3), a4));
        let t = f.add(t, m(m(a3, a3), a2));
        f.sub(t, m(a4, a4))
    };
    let t1 = f.neg(m(m(b2, b2), b8));
    let t2 = s(8, m(m(b4, b4), b4));
    let t3 = s(27, m(b6, b6));
    let t4 = s(9, m(m(b2, b4), b6));
    f.add(f.sub(f.sub(t1, t2), t3), t4)
}

impl ReducedCurve {
    pub fn new(field: ResidueField, a: [Fq; 5]) -> Result<Self> {
        if discriminant_fq(&field, &a).is_zero() {
            return Err(Error::SingularCurve { q: field.size() });
        }
        Ok(ReducedCurve { field, a })
    }

    /// Short model `y^2 = x^3 + a4 x + a6` over F_p, from machine integers.
    pub fn short_prime(p: u32, a4: i64, a6: i64) -> Result<Self> {
        let f = ResidueField::prime(p);
        let a = [Fq::ZERO, Fq::ZERO, Fq::ZERO, f.from_int(a4), f.from_int(a6)];
        Self::new(f, a)
    }

    pub fn reduce(model: &WeierstrassModel, prime: &QuadPrime) -> Result<Self> {
        let a = [&model.a1, &model.a2, &model.a3, &model.a4, &model.a6].map(|x| prime.reduce(x));
        Self::new(prime.residue_field().clone(), a)
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn coefficients(&self) -> [Fq; 5] {
        self.a
    }

    fn sides(&self, x: Fq) -> (Fq, Fq) {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let b = f.add(f.mul(a1, x), a3);
        let x2 = f.mul(x, x);
        let c = f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6);
        (b, c)
    }

    /// `#E(F_q)` including the point at infinity, enumerating x and counting
    /// the solutions of `y^2 + B(x) y = C(x)`.
    pub fn count_points(&self) -> u64 {
        let f = &self.field;
        let elements = f.elements();
        let affine: u64 = if f.characteristic() == 2 {
            elements
                .iter()
                .map(|&x| {
                    let (b, c) = self.sides(x);
                    elements
                        .iter()
                        .filter(|&&y| f.add(f.mul(y, y), f.mul(b, y)) == c)
                        .count() as u64
                })
                .sum()
        } else {
            // (2y + B)^2 = B^2 + 4C
            let mut squares = vec![0u64; elements.len()];
            for &y in &elements {
                squares[f.index(f.mul(y, y))] += 1;
            }
            elements
                .iter()
                .map(|&x| {
                    let (b, c) = self.sides(x);
                    squares[f.index(f.add(f.mul(b, b), f.scale(4, c)))]
                })
                .sum()
        };
        affine + 1
    }

    /// Independent recount: every pair (x, y) checked directly, y outermost.
    pub fn count_points_by_pairs(&self) -> u64 {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let elements = f.elements();
        let mut n = 1;
        for &y in &elements {
            for &x in &elements {
                let lhs = f.add(f.add(f.mul(y, y), f.mul(f.mul(a1, x), y)), f.mul(a3, y));
                let x2 = f.mul(x, x);
                let rhs = f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6);
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    /// `q + 1 - #E(F_q)`.
    pub fn trace(&self) -> i64 {
        self.field.size() as i64 + 1 - self.count_points() as i64
    }
}

/// `a^2 <= 4 q`.
pub fn within_weil_bound(a: i64, q: u64) -> bool {
    (a * a) as u64 <= 4 * q
}

/// Restriction on the pairs (a, b) fed to the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Constraint {
    None,
    /// `d | a + b`.
    DividesSum(u32),
    /// Frey arguments `(a^2, b^2)`, optionally with `5 | a^2 + b^2`.
    Squares {
        five_divides: bool,
    },
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::None => write!(f, "none"),
            Constraint::DividesSum(d) => write!(f, "{d} | a + b"),
            Constraint::Squares {
                five_divides: false,
            } => write!(f, "squares"),
            Constraint::Squares { five_divides: true } => write!(f, "squares, 5 | a^2 + b^2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSet {
    pub prime: String,
    pub constraint: Constraint,
    /// Pairs were enumerated modulo this number.
    pub modulus: u64,
    pub values: BTreeSet<i64>,
    pub pairs: u64,
    /// Pairs with bad reduction at the prime (skipped).
    pub bad_pairs: u64,
    /// Distinct residual curves encountered.
    pub distinct_curves: usize,
}

impl TraceSet {
    pub fn values_vec(&self) -> Vec<i64> {
        self.values.iter().copied().collect()
    }
}

/// Smallest lift `(a + i m, b + j m)`, ordered by `i + j`, with coprime entries.
pub fn coprime_lift(a: u64, b: u64, m: u64) -> (BigInt, BigInt) {
    for total in 0u64.. {
        for i in 0..=total {
            let x = a + i * m;
            let y = b + (total - i) * m;
            if x.gcd(&y) == 1 {
                return (BigInt::from(x), BigInt::from(y));
            }
        }
    }
    unreachable!()
}

fn modulus_for(prime: &QuadPrime, constraint: Constraint, lift_exponent: u32) -> u64 {
    let l = prime.l() as u64;
    let base = l.pow(lift_exponent.max(1));
    let extra = match constraint {
        Constraint::None => 1,
        Constraint::DividesSum(d) => d as u64,
        Constraint::Squares { five_divides: true } => 5,
        Constraint::Squares {
            five_divides: false,
        } => 1,
    };
    if extra == 1 || base.is_multiple_of(extra) {
        base
    } else {
        base.lcm(&extra)
    }
}

fn admissible(a: u64, b: u64, l: u64, constraint: Constraint) -> bool {
    if a.is_multiple_of(l) && b.is_multiple_of(l) {
        return false;
    }
    match constraint {
        Constraint::None => true,
        Constraint::DividesSum(d) => {
            let d = d as u64;
            (a + b).is_multiple_of(d) && !(a.is_multiple_of(d) && b.is_multiple_of(d))
        }
        Constraint::Squares { five_divides } => {
            !five_divides
                || ((a * a + b * b).is_multiple_of(5)
                    && !(a.is_multiple_of(5) && b.is_multiple_of(5)))
        }
    }
}

/// The trace of the residual curve of `E_0(a, b)` at `prime`, or `None` for
/// bad reduction. The short model is minimized with Tate's algorithm first.
pub fn residual_trace(
    fam: &FreyFamily,
    prime: &QuadPrime,
    a: &BigInt,
    b: &BigInt,
) -> Result<Option<ReducedCurve>> {
    let inst = fam.instantiate(a, b)?;
    let model = WeierstrassModel::from_instance(&inst);
    if !prime.divides(&inst.delta0) {
        // the first step of Tate's algorithm: a unit discriminant means good reduction
        return ReducedCurve::reduce(&model, prime).map(Some);
    }
    let data = tate(&model, prime)?;
    if data.reduction != Reduction::Good {
        return Ok(None);
    }
    ReducedCurve::reduce(&data.minimal_model, prime).map(Some)
}

/// Enumerates the pairs modulo `l^lift_exponent` (times whatever the
/// constraint needs), lifts each to a coprime integer pair and records the
/// trace of every good residual curve.
pub fn trace_set(
    fam: &FreyFamily,
    prime: &QuadPrime,
    constraint: Constraint,
    lift_exponent: u32,
) -> Result<TraceSet> {
    if prime.l() == 2 || prime.is_ramified() {
        return Err(Error::Unsupported {
            what: "trace prime",
            value: prime.label().to_string(),
        });
    }
    let l = prime.l() as u64;
    let m = modulus_for(prime, constraint, lift_exponent);
    let rows: Vec<Result<Vec<Option<[Fq; 5]>>>> = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in 0..m {
                if !admissible(a, b, l, constraint) {
                    continue;
                }
                let (x, y) = coprime_lift(a, b, m);
                let (x, y) = match constraint {
                    Constraint::Squares { .. } => (&x * &x, &y * &y),
                    _ => (x, y),
                };
                out.push(residual_trace(fam, prime, &x, &y)?.map(|c| c.coefficients()));
            }
            Ok(out)
        })
        .collect();
    let mut counts: HashMap<[Fq; 5], i64> = HashMap::new();
    let mut pairs = 0;
    let mut bad_pairs = 0;
    for row in rows {
        for entry in row? {
            pairs += 1;
            match entry {
                None => bad_pairs += 1,
                Some(a) => {
                    if let std::collections::hash_map::Entry::Vacant(v) = counts.entry(a) {
                        let curve = ReducedCurve::new(prime.residue_field().clone(), a)?;
                        v.insert(curve.trace());
                    }
                }
            }
        }
    }
    let q = prime.norm();
    let values: BTreeSet<i64> = counts.values().copied().collect();
    if let Some(&bad) = values.iter().find(|&&t| !within_weil_bound(t, q)) {
        return Err(Error::IdentityFailed {
            identity: "Weil bound",
            detail: format!("trace {bad} at {} exceeds 2 sqrt({q})", prime.label()),
        });
    }
    Ok(TraceSet {
        prime: prime.label().to_string(),
        constraint,
        modulus: m,
        values,
        pairs,
        bad_pairs,
        distinct_curves: counts.len(),
    })
}

/// Default lift exponent for the stability check: 3 above 3, else 2.
pub fn stability_exponent(prime: &QuadPrime) -> u32 {
    if prime.l() == 3 {
        3
    } else {
        2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityCheck {
    pub prime: String,
    pub base_modulus: u64,
    pub lifted_modulus: u64,
    pub base: BTreeSet<i64>,
    pub lifted: BTreeSet<i64>,
    pub stable: bool,
}

/// Recomputes a trace set over residues modulo a higher power of `l` and
/// compares it with the set over residues modulo `l`.
pub fn lift_stability(
    fam: &FreyFamily,
    prime: &QuadPrime,
    constraint: Constraint,
    lift_exponent: u32,
) -> Result<StabilityCheck> {
    let base = trace_set(fam, prime, constraint, 1)?;
    let lifted = trace_set(fam, prime, constraint, lift_exponent)?;
    Ok(StabilityCheck {
        prime: prime.label().to_string(),
        base_modulus: base.modulus,
        lifted_modulus: lifted.modulus,
        stable: base.values == lifted.values,
        base: base.values,
        lifted: lifted.values,
    })
}

/// Trace sets under `d | a + b` at the trace primes above `d`.
pub fn constrained_singletons(fam: &FreyFamily, d: u32) -> Result<Vec<TraceSet>> {
    if ![3, 5, 7, 11].contains(&d) {
        return Err(Error::Unsupported {
            what: "d",
            value: d.to_string(),
        });
    }
    crate::quadfield::trace_primes()
        .iter()
        .filter(|p| p.l() == d)
        .map(|p| trace_set(fam, p, Constraint::DividesSum(d), 1))
        .collect()
}

/// Trace set of the family evaluated at `(a^2, b^2)`.
pub fn squares_trace_set(
    fam: &FreyFamily,
    prime: &QuadPrime,
    five_divides: bool,
) -> Result<TraceSet> {
    trace_set(fam, prime, Constraint::Squares { five_divides }, 1)
}

/// For every pair of residues mod 4, not both even: `a^2 + b^2 mod 4` is 1 or 2.
pub fn squares_mod4_check() -> bool {
    (0..4u32)
        .flat_map(|a| (0..4u32).map(move |b| (a, b)))
        .filter(|(a, b)| a % 2 == 1 || b % 2 == 1)
        .all(|(a, b)| matches!((a * a + b * b) % 4, 1 | 2))
}

/// The printed trace sets, in the column order of the eigenvalue tables.
pub fn expected_trace_sets() -> Vec<(&'static str, Vec<i64>)> {
    vec![
        ("L3_0", vec![-3, -1]),
        ("L3_1", vec![-3, -1, 1]),
        ("L17_0", vec![-3, -1, 1, 3, 5, 7]),
        ("L17_1", vec![-7, -5, -3, 3, 5, 7]),
        ("L23_0", vec![-9, -7, -5, -3, 1, 3, 5, 7]),
        ("L23_1", vec![-9, -3, -1, 1, 3, 7]),
        ("L5", vec![-6, -2, 2]),
        ("L29_0", vec![-9, -7, -5, -3, -1, 1, 3, 5]),
        ("L29_1", vec![-9, -7, -5, -3, -1, 1, 3, 5, 9]),
        ("L7", vec![-11, -5, -1, 11]),
        ("L11", vec![-15, -7, -1, 3, 5, 9, 15]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let e = ReducedCurve::short_prime(5, 1, 0).unwrap();
        assert_eq!(e.count_points(), 4);
        assert_eq!(e.trace(), 2);
        // y^2 = x^3 + 1 over F_7: x in {0, 1, 2, 3, 4, 5, 6} gives 2+0+2+1+2+1+1 + infinity
        let e = ReducedCurve::short_prime(7, 0, 1).unwrap();
        assert_eq!(e.count_points(), 12);
        assert_eq!(e.count_points_by_pairs(), 12);
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            ReducedCurve::short_prime(5, 0, 0),
            Err(Error::SingularCurve { q: 5 })
        ));
    }

    #[test]
    fn characteristic_two_counts() {
        let f = ResidueField::quadratic(2).unwrap();
        let one = f.one();
        // y^2 + y = x^3 over F_4 is supersingular with 9 points
        let e =
            ReducedCurve::new(f.clone(), [Fq::ZERO, Fq::ZERO, one, Fq::ZERO, Fq::ZERO]).unwrap();
        assert_eq!(e.count_points(), 9);
        assert_eq!(e.count_points_by_pairs(), 9);
    }

    #[test]
    fn quadratic_field_counts_agree() {
        let f = ResidueField::quadratic(5).unwrap();
        let t = f.theta();
        let e = ReducedCurve::new(f.clone(), [Fq::ZERO, Fq::ZERO, Fq::ZERO, t, f.one()]).unwrap();
        assert_eq!(e.count_points(), e.count_points_by_pairs());
        assert!(within_weil_bound(e.trace(), 25));
    }

    #[test]
    fn coprime_lifts() {
        assert_eq!(coprime_lift(2, 2, 3), (BigInt::from(2), BigInt::from(5)));
        assert_eq!(coprime_lift(0, 1, 3), (BigInt::from(0), BigInt::from(1)));
    }

    #[test]
    fn mod4_squares() {
        assert!(squares_mod4_check());
    }
}
