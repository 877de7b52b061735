//! Newform eigenvalue tables, characteristic-polynomial factors, and the
//! sieves and bounds built on them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{factorize, resultant, IntPoly, PrimeFactorization};
use crate::quadfield::{QuadPrime, TRACE_PRIME_LABELS};
use crate::traces::{within_weil_bound, TraceSet};

pub const NEWFORMS_FILE: &str = "newforms.csv";
pub const FACTORS_FILE: &str = "factors.txt";

/// The bundled eigenvalue table.
pub const BUNDLED_NEWFORMS: &str = include_str!("../data/newforms.csv");
/// The bundled factor list.
pub const BUNDLED_FACTORS: &str = include_str!("../data/factors.txt");

/// The four forms left after the unconstrained comparison, with their levels.
pub const SURVIVORS: [(&str, u8, [i64; 11]); 4] = [
    ("f1", 3, [-1, 1, 7, 3, 1, 7, 2, -7, -3, -1, 3]),
    ("f2", 4, [-1, 1, 3, 7, -7, -1, 2, -3, -7, -1, 3]),
    ("f3", 3, [-1, -3, -1, -5, 5, -9, -6, -3, 1, -5, 15]),
    ("f4", 3, [-3, -1, 1, -3, -3, -9, -2, -7, 5, -11, -15]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewformRecord {
    /// Exponent s of the level P2^s * P13^2.
    pub level: u8,
    /// Eigenvalues in the column order of [`TRACE_PRIME_LABELS`].
    pub eigenvalues: [i64; 11],
    /// 1-based line in the source.
    pub line: usize,
}

impl NewformRecord {
    /// Name of the matching row of [`SURVIVORS`], if any.
    pub fn survivor_name(&self) -> Option<&'static str> {
        SURVIVORS
            .iter()
            .find(|(_, level, ev)| *level == self.level && *ev == self.eigenvalues)
            .map(|(name, _, _)| *name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorEntry {
    pub level: u8,
    pub multiplicity: u32,
    #[serde(serialize_with = "serialize_poly")]
    pub poly: IntPoly,
    pub line: usize,
}

fn serialize_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn parse_error(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        source_name: source.to_string(),
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_level(source: &str, line: usize, field: &str) -> Result<u8> {
    match field.trim() {
        "3" => Ok(3),
        "4" => Ok(4),
        other => Err(parse_error(
            source,
            line,
            format!("level must be 3 or 4, got {other:?}"),
        )),
    }
}

/// Residue field sizes of the trace primes, in column order.
pub fn column_norms() -> [u64; 11] {
    TRACE_PRIME_LABELS.map(|l| QuadPrime::named(l).expect("named").norm())
}

/// Parses and validates the eigenvalue table: twelve integer columns, level
/// 3 or 4, every eigenvalue within the Weil bound of its prime.
pub fn load_newforms(source: &str, text: &str) -> Result<Vec<NewformRecord>> {
    let norms = column_norms();
    let mut out = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != 12 {
            return Err(parse_error(
                source,
                line,
                format!("expected 12 columns, found {}", fields.len()),
            ));
        }
        let level = parse_level(source, line, fields[0])?;
        let mut eigenvalues = [0i64; 11];
        for (k, f) in fields[1..].iter().enumerate() {
            let v: i64 = f.trim().parse().map_err(|_| {
                parse_error(source, line, format!("not an integer: {:?}", f.trim()))
            })?;
            if !within_weil_bound(v, norms[k]) {
                return Err(parse_error(
                    source,
                    line,
                    format!(
                        "a_{} = {v} violates the Weil bound for norm {}",
                        TRACE_PRIME_LABELS[k], norms[k]
                    ),
                ));
            }
            eigenvalues[k] = v;
        }
        out.push(NewformRecord {
            level,
            eigenvalues,
            line,
        });
    }
    Ok(out)
}

/// Parses `level; multiplicity; c0 c1 ... cn`.
pub fn load_factors(source: &str, text: &str) -> Result<Vec<FactorEntry>> {
    let mut out = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(';').collect();
        if fields.len() != 3 {
            return Err(parse_error(
                source,
                line,
                format!("expected 3 fields, found {}", fields.len()),
            ));
        }
        let level = parse_level(source, line, fields[0])?;
        let multiplicity: u32 = fields[1]
            .trim()
            .parse()
            .ok()
            .filter(|&m| m > 0)
            .ok_or_else(|| parse_error(source, line, "multiplicity must be a positive integer"))?;
        let coeffs = fields[2]
            .split_whitespace()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| parse_error(source, line, format!("not an integer: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(parse_error(source, line, "leading coefficient is zero"));
        }
        let poly = IntPoly::new(coeffs);
        if poly.degree().unwrap_or(0) == 0 {
            return Err(parse_error(source, line, "polynomial must be nonconstant"));
        }
        out.push(FactorEntry {
            level,
            multiplicity,
            poly,
            line,
        });
    }
    Ok(out)
}

pub fn bundled_newforms() -> Result<Vec<NewformRecord>> {
    load_newforms(NEWFORMS_FILE, BUNDLED_NEWFORMS)
}

pub fn bundled_factors() -> Result<Vec<FactorEntry>> {
    load_factors(FACTORS_FILE, BUNDLED_FACTORS)
}

/// Why a form was discarded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prime: String,
    pub eigenvalue: i64,
    pub allowed: Vec<i64>,
    /// `max |eigenvalue - t|` over the allowed traces t: no congruence
    /// modulo a prime above this number is possible.
    pub threshold: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eliminated {
    pub form: NewformRecord,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    pub survivors: Vec<NewformRecord>,
    pub eliminated: Vec<Eliminated>,
    /// Largest threshold over all witnesses: every elimination is valid
    /// modulo any prime above this number.
    pub max_threshold: i64,
}

impl EliminationReport {
    pub fn survivor_levels(&self) -> BTreeMap<u8, usize> {
        let mut m = BTreeMap::new();
        for f in &self.survivors {
            *m.entry(f.level).or_insert(0) += 1;
        }
        m
    }
}

fn witness(label: &str, value: i64, allowed: &BTreeSet<i64>) -> Witness {
    Witness {
        prime: label.to_string(),
        eigenvalue: value,
        allowed: allowed.iter().copied().collect(),
        threshold: allowed.iter().map(|t| (value - t).abs()).max().unwrap_or(0),
    }
}

fn sieve(forms: &[NewformRecord], allowed: &[(usize, &BTreeSet<i64>)]) -> EliminationReport {
    let mut survivors = Vec::new();
    let mut eliminated = Vec::new();
    for f in forms {
        let fail = allowed
            .iter()
            .find(|(col, set)| !set.contains(&f.eigenvalues[*col]));
        match fail {
            None => survivors.push(f.clone()),
            Some(&(col, set)) => eliminated.push(Eliminated {
                form: f.clone(),
                witness: witness(TRACE_PRIME_LABELS[col], f.eigenvalues[col], set),
            }),
        }
    }
    let max_threshold = eliminated
        .iter()
        .map(|e| e.witness.threshold)
        .max()
        .unwrap_or(0);
    EliminationReport {
        survivors,
        eliminated,
        max_threshold,
    }
}

fn column_of(label: &str) -> Result<usize> {
    TRACE_PRIME_LABELS
        .iter()
        .position(|l| *l == label)
        .ok_or_else(|| Error::UnknownPrime(label.to_string()))
}

/// Keeps the forms whose eleven eigenvalues all lie in the corresponding
/// trace sets; each discarded form records its first failing column.
pub fn eliminate_s1(forms: &[NewformRecord], trace_sets: &[TraceSet]) -> Result<EliminationReport> {
    let mut allowed = Vec::new();
    for label in TRACE_PRIME_LABELS {
        let ts = trace_sets
            .iter()
            .find(|t| t.prime == label)
            .ok_or_else(|| Error::UnknownPrime(format!("no trace set for {label}")))?;
        allowed.push((column_of(label)?, &ts.values));
    }
    Ok(sieve(forms, &allowed))
}

#[derive(Clone, Debug, Serialize)]
pub struct DEliminationReport {
    pub d: u32,
    pub report: EliminationReport,
    /// Survivors that match the trivial solution and need the inertia
    /// argument at P13 instead.
    pub inertia_remainder: Vec<String>,
}

/// Sieves `forms` against whichever trace sets are given.
pub fn sieve_against(forms: &[NewformRecord], sets: &[TraceSet]) -> Result<EliminationReport> {
    let allowed = sets
        .iter()
        .map(|t| Ok((column_of(&t.prime)?, &t.values)))
        .collect::<Result<Vec<_>>>()?;
    Ok(sieve(forms, &allowed))
}

/// Applies the traces computed under `d | a + b` to the survivors.
pub fn eliminate_with_d(
    survivors: &[NewformRecord],
    d: u32,
    constrained: &[TraceSet],
) -> Result<DEliminationReport> {
    if constrained.is_empty() {
        return Err(Error::Unsupported {
            what: "d without trace primes",
            value: d.to_string(),
        });
    }
    let report = sieve_against(survivors, constrained)?;
    let inertia_remainder = report
        .survivors
        .iter()
        .map(|f| f.survivor_name().unwrap_or("unnamed").to_string())
        .collect();
    Ok(DEliminationReport {
        d,
        report,
        inertia_remainder,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultantEntry {
    pub a: i64,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub resultant: BigInt,
    pub factorization: PrimeFactorization,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub entries: Vec<ResultantEntry>,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub max_prime: BigInt,
}

/// Largest prime dividing `Res(x^12 - 1, x^2 - a x + 3)` for `|a| <= 3`.
pub fn irreducibility_bound() -> Result<IrreducibilityReport> {
    let q1 = IntPoly::binomial(12, 1);
    let mut entries = Vec::new();
    for a in -3..=3 {
        let q2 = IntPoly::from_i64s(&[3, -a, 1]);
        let r = resultant(&q1, &q2)?;
        if r.is_zero() {
            return Err(Error::IdentityFailed {
                identity: "Res(x^12 - 1, x^2 - a x + 3) != 0",
                detail: format!("vanishes at a = {a}"),
            });
        }
        let factorization = factorize(&r)?;
        entries.push(ResultantEntry {
            a,
            resultant: r,
            factorization,
        });
    }
    let max_prime = entries
        .iter()
        .filter_map(|e| e.factorization.largest_prime().cloned())
        .max()
        .unwrap_or_default();
    Ok(IrreducibilityReport { entries, max_prime })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEvaluation {
    pub line: usize,
    pub level: u8,
    pub degree: usize,
    pub at: i64,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub value: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint_opt")]
    pub largest_prime: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct S2Report {
    pub evaluation_set: Vec<i64>,
    pub nonlinear_factors: usize,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub bound: BigInt,
    /// Evaluation attaining the bound.
    pub attained_by: Option<FactorEvaluation>,
    /// Sum of degree times multiplicity per level.
    pub dimension_tally: BTreeMap<u8, u64>,
    /// Total multiplicity of the linear factors per level.
    pub linear_tally: BTreeMap<u8, u64>,
}

/// Evaluates every nonlinear factor at every point of `values`, factorizes
/// the (necessarily nonzero) results and returns the largest prime seen.
pub fn s2_bound(factors: &[FactorEntry], values: &[i64]) -> Result<S2Report> {
    let nonlinear: Vec<&FactorEntry> = factors
        .iter()
        .filter(|f| f.poly.degree().unwrap_or(0) >= 2)
        .collect();
    let jobs: Vec<(&FactorEntry, i64)> = nonlinear
        .iter()
        .flat_map(|f| values.iter().map(move |&v| (*f, v)))
        .collect();
    let evaluations: Vec<FactorEvaluation> = jobs
        .par_iter()
        .map(|&(f, v)| {
            let value = f.poly.eval_i64(v);
            if value.is_zero() {
                return Err(Error::VanishingFactor {
                    poly: f.poly.to_string(),
                    value: v,
                });
            }
            let largest_prime = if value.abs() == BigInt::from(1) {
                None
            } else {
                factorize(&value)?.largest_prime().cloned()
            };
            Ok(FactorEvaluation {
                line: f.line,
                level: f.level,
                degree: f.poly.degree().unwrap_or(0),
                at: v,
                value,
                largest_prime,
            })
        })
        .collect::<Result<_>>()?;
    let attained_by = evaluations
        .iter()
        .filter(|e| e.largest_prime.is_some())
        .max_by(|x, y| {
            x.largest_prime
                .cmp(&y.largest_prime)
                .then_with(|| y.line.cmp(&x.line))
                .then_with(|| y.at.cmp(&x.at))
        })
        .cloned();
    let bound = attained_by
        .as_ref()
        .and_then(|e| e.largest_prime.clone())
        .unwrap_or_default();
    let mut dimension_tally = BTreeMap::new();
    let mut linear_tally = BTreeMap::new();
    for f in factors {
        let deg = f.poly.degree().unwrap_or(0) as u64;
        *dimension_tally.entry(f.level).or_insert(0) += deg * f.multiplicity as u64;
        if deg == 1 {
            *linear_tally.entry(f.level).or_insert(0) += f.multiplicity as u64;
        }
    }
    let mut evaluation_set = values.to_vec();
    evaluation_set.sort_unstable();
    evaluation_set.dedup();
    Ok(S2Report {
        evaluation_set,
        nonlinear_factors: nonlinear.len(),
        bound,
        attained_by,
        dimension_tally,
        linear_tally,
    })
}

/// The evaluation points stated alongside the final bound.
pub const PRINTED_EVALUATION_SET: [i64; 2] = [3, -1];
