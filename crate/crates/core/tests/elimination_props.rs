use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frey13::elimination::{
    bundled_factors, bundled_newforms, eliminate_s1, load_factors, load_newforms, s2_bound,
    sieve_against, FactorEntry, NewformRecord, SURVIVORS,
};
use frey13::frey::build_family;
use frey13::quadfield::trace_primes;
use frey13::traces::{trace_set, Constraint, TraceSet};

fn sets() -> &'static [TraceSet] {
    static S: OnceLock<Vec<TraceSet>> = OnceLock::new();
    S.get_or_init(|| {
        let fam = build_family().unwrap();
        trace_primes()
            .iter()
            .map(|p| trace_set(&fam, p, Constraint::None, 1).unwrap())
            .collect()
    })
}

fn forms() -> &'static [NewformRecord] {
    static F: OnceLock<Vec<NewformRecord>> = OnceLock::new();
    F.get_or_init(|| bundled_newforms().unwrap())
}

fn factors() -> &'static [FactorEntry] {
    static F: OnceLock<Vec<FactorEntry>> = OnceLock::new();
    F.get_or_init(|| bundled_factors().unwrap())
}

fn survivor_rows(forms: &[NewformRecord]) -> BTreeSet<(u8, [i64; 11])> {
    forms.iter().map(|f| (f.level, f.eigenvalues)).collect()
}

#[test]
fn survivor_rows_are_in_the_data() {
    for (name, level, row) in SURVIVORS {
        let hits = forms()
            .iter()
            .filter(|f| f.level == level && f.eigenvalues == row)
            .count();
        assert_eq!(hits, 1, "{name}");
    }
}

#[test]
fn survivors_are_exactly_the_table_rows() {
    let r = eliminate_s1(forms(), sets()).unwrap();
    let want: BTreeSet<(u8, [i64; 11])> = SURVIVORS.iter().map(|(_, l, row)| (*l, *row)).collect();
    assert_eq!(survivor_rows(&r.survivors), want);
    assert_eq!(r.survivors.len() + r.eliminated.len(), forms().len());
    for e in &r.eliminated {
        assert!(!e.witness.allowed.contains(&e.witness.eigenvalue));
    }
}

#[test]
fn sieve_needs_every_set() {
    assert!(eliminate_s1(forms(), &sets()[1..]).is_err());
}

#[test]
fn loader_reports_line_numbers() {
    let err = load_newforms("t", "3,1,2,3\n").unwrap_err().to_string();
    assert!(err.contains("t:1"), "{err}");
    let err = load_factors("f", "# c\n3 1 x^2 +\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("f:2"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sieve_is_order_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = forms().to_vec();
        f.shuffle(&mut rng);
        let mut s = sets().to_vec();
        s.shuffle(&mut rng);
        let base = sieve_against(forms(), sets()).unwrap();
        let shuffled = sieve_against(&f, &s).unwrap();
        prop_assert_eq!(survivor_rows(&base.survivors), survivor_rows(&shuffled.survivors));
    }

    #[test]
    fn s2_bound_ignores_order_and_repetition(seed in any::<u64>(), dup in 0usize..148) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = factors().to_vec();
        f.shuffle(&mut rng);
        let extra = f[dup % f.len()].clone();
        f.push(extra);
        let base = s2_bound(factors(), &[3, -1]).unwrap();
        let other = s2_bound(&f, &[-1, 3, -1]).unwrap();
        prop_assert_eq!(base.bound, other.bound);
    }
}
