use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use frey13::coprimality::sample_pairs;
use frey13::cyclotomic::CycElt;
use frey13::exactalg::{factorize, resultant, IntPoly};
use frey13::localred::{tate, WeierstrassModel};
use frey13::pipeline::{Options, Pipeline};
use frey13::quadfield::{trace_primes, QuadPrime};
use frey13::report::{Status, VerificationReport};
use frey13::traces::{coprime_lift, residual_trace, within_weil_bound};

/// Writes past the test harness's output capture so the verdict lines are
/// always visible.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

struct Gate {
    results: Vec<(usize, bool, String)>,
}

impl Gate {
    fn record(&mut self, n: usize, name: &str, checks: Vec<(&str, bool)>) {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        let ok = failed.is_empty();
        let detail = if ok {
            format!("{name} ({} checks)", checks.len())
        } else {
            format!("{name}: failing {}", failed.join(", "))
        };
        emit(&format!(
            "{} criterion {n}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        ));
        self.results.push((n, ok, detail));
    }
}

fn verified(r: &VerificationReport, id: &str) -> bool {
    r.claim(id).is_some_and(|c| c.status == Status::Verified)
}

fn not_failed(r: &VerificationReport, id: &str) -> bool {
    r.claim(id).is_some_and(|c| c.status != Status::Failed)
}

fn first_case_exponents_at_13(p: &Pipeline) -> bool {
    let fam = p.family().unwrap();
    let l13 = QuadPrime::named("L13").unwrap();
    let pairs: Vec<(BigInt, BigInt)> = sample_pairs(4099, 400, 10_000, 0.0)
        .into_iter()
        .filter(|(a, b)| !((a + b) % 13u32).is_zero())
        .take(200)
        .collect();
    pairs.len() == 200
        && pairs.iter().all(|(a, b)| {
            let inst = fam.instantiate(a, b).unwrap();
            tate(&WeierstrassModel::from_instance(&inst), &l13)
                .is_ok_and(|d| d.conductor_exponent == 2)
        })
}

/// Recounts every residual curve met while enumerating the trace sets with
/// the loop order swapped, and checks the Weil bound on each.
fn point_count_oracle(p: &Pipeline) -> (bool, usize) {
    let fam = p.family().unwrap();
    let mut curves = 0;
    for prime in trace_primes() {
        let m = prime.l() as u64;
        for a in 0..m {
            for b in 0..m {
                if a % m == 0 && b % m == 0 {
                    continue;
                }
                let (x, y) = coprime_lift(a, b, m);
                let Some(c) = residual_trace(fam, &prime, &x, &y).unwrap() else {
                    continue;
                };
                curves += 1;
                let n = c.count_points();
                if n != c.count_points_by_pairs()
                    || !within_weil_bound(c.trace(), prime.norm())
                    || c.trace() != (prime.norm() + 1) as i64 - n as i64
                {
                    return (false, curves);
                }
            }
        }
    }
    (true, curves)
}

fn resultant_duality() -> bool {
    // x^2 - 1 and x^2 - 3x + 2 share x - 1; x^12 - 1 and x^2 + 3 do not
    let p = IntPoly::from_i64s(&[-1, 0, 1]);
    let q = IntPoly::from_i64s(&[2, -3, 1]);
    let x12 = IntPoly::binomial(12, -1);
    let r = IntPoly::from_i64s(&[3, 0, 1]);
    resultant(&p, &q).unwrap().is_zero()
        && p.gcd(&q).degree() == Some(1)
        && !resultant(&x12, &r).unwrap().is_zero()
        && r.gcd(&x12).degree() == Some(0)
}

fn factorization_round_trips() -> bool {
    [4_992_539u64, 529_984, 2731, 1 << 40, 999_999_999_989 * 3]
        .iter()
        .all(|&n| factorize(&BigInt::from(n)).unwrap().product() == BigInt::from(n))
}

#[test]
fn acceptance() {
    let t0 = Instant::now();
    let p = Pipeline::new(Options::default());
    let report = p.all();
    let mut gate = Gate {
        results: Vec::new(),
    };

    let null_pairing = report
        .claim("algebra.null-relation")
        .map(|c| c.values["assignment"] == serde_json::json!([0, 2, 1]))
        .unwrap_or(false);
    let w = frey13::cyclotomic::weights();
    let abc = &(&w[0] * &w[1]) * &w[2];
    gate.record(
        1,
        "algebraic identities",
        vec![
            (
                "phi factorization",
                verified(&report, "algebra.phi-factorization"),
            ),
            (
                "null relation",
                not_failed(&report, "algebra.null-relation") && null_pairing,
            ),
            (
                "weight valuations",
                verified(&report, "algebra.weight-valuations"),
            ),
            (
                "v(alpha beta gamma) = 3",
                CycElt::val_p13_sextic(&abc).ok() == Some(3),
            ),
        ],
    );

    let a6_six = report
        .claim("family.printed-a6")
        .is_some_and(|c| c.status != Status::Failed && c.values["b6_matching_term"].is_number());
    gate.record(
        2,
        "descent and printed coefficients",
        vec![
            ("sigma^2 fixed", verified(&report, "family.galois")),
            ("a4 exact", verified(&report, "family.printed-a4")),
            ("a6 with b^6 anomaly reported", a6_six),
        ],
    );

    gate.record(
        3,
        "conductors",
        vec![
            ("mod 4 classes", verified(&report, "conductors.mod4")),
            ("examples", verified(&report, "conductors.examples")),
            (
                "exponent 2 at 13 on 200 first-case pairs",
                first_case_exponents_at_13(&p),
            ),
            (
                "semistability",
                verified(&report, "conductors.semistability"),
            ),
        ],
    );

    let sets = p.base_trace_sets().unwrap();
    let l5 = sets
        .iter()
        .find(|s| s.prime == "L5")
        .map(|s| s.values_vec());
    let l29 = sets
        .iter()
        .find(|s| s.prime == "L29_1")
        .map(|s| s.values.len());
    gate.record(
        4,
        "trace sets",
        vec![
            ("eleven sets", verified(&report, "traces.sets")),
            ("L5 = {-6, -2, 2}", l5 == Some(vec![-6, -2, 2])),
            ("L29_1 has 9 elements", l29 == Some(9)),
            ("lift stability", verified(&report, "traces.lift-stability")),
        ],
    );

    gate.record(
        5,
        "constrained traces",
        vec![
            ("d = 3", verified(&report, "traces.d3")),
            ("d = 5", verified(&report, "traces.d5")),
            ("d = 7", verified(&report, "traces.d7")),
            ("d = 11", verified(&report, "traces.d11")),
            ("squares", verified(&report, "traces.squares")),
        ],
    );

    gate.record(
        6,
        "elimination",
        vec![
            ("four survivors", verified(&report, "eliminate.s1")),
            ("d = 3", verified(&report, "eliminate.d3")),
            ("d = 5", verified(&report, "eliminate.d5")),
            ("d = 7", verified(&report, "eliminate.d7")),
            ("d = 11", verified(&report, "eliminate.d11")),
        ],
    );

    gate.record(
        7,
        "irreducibility bound",
        vec![("97", verified(&report, "bound.irreducibility"))],
    );

    gate.record(
        8,
        "final bound",
        vec![
            ("4992539 at {3, -1}", verified(&report, "bound.s2-printed")),
            (
                "enumerated set reported",
                not_failed(&report, "bound.s2-enumerated"),
            ),
            ("chain", verified(&report, "theorem.chain")),
        ],
    );

    let (oracle, curves) = point_count_oracle(&p);
    gate.record(
        9,
        "property suites",
        vec![
            (
                "linear factors",
                verified(&report, "algebra.linear-factors"),
            ),
            ("sum and phi", verified(&report, "algebra.sum-and-phi")),
            (
                "small prime divisors",
                verified(&report, "algebra.small-prime-divisors"),
            ),
            (
                "sextic factors",
                verified(&report, "algebra.sextic-factors"),
            ),
            ("resultant and gcd", resultant_duality()),
            ("factorization round trips", factorization_round_trips()),
            ("point counts and Weil bound", oracle && curves > 0),
        ],
    );

    let elapsed = t0.elapsed();
    emit(&format!(
        "acceptance finished in {:.1} s",
        elapsed.as_secs_f64()
    ));
    let failed: Vec<&String> = gate.results.iter().filter(|r| !r.1).map(|r| &r.2).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
    assert_eq!(gate.results.len(), 9);
}
