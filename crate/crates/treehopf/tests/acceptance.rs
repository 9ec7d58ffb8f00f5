//! Acceptance suite: every gate identity at its full bound, exact
//! arithmetic throughout, one pass/fail line per criterion.
//!
//! Criteria serialize through a mutex so the per-criterion wall-clock
//! budgets are measured without contention.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::{Duration, Instant};

use num::traits::One;
use num::BigInt;

use treehopf::algebra::{coproduct_tree, pi_fold, Coefficient, TreeVector};
use treehopf::enumeration::{
    cayley_counts, enumerate_trees, hot_counts, indecomposable_counts, ordered_closed_form,
    ordered_counts, pbw_dimensions,
};
use treehopf::family::FamilyId;
use treehopf::series::cayley_series_report;
use treehopf::verify::{
    primitive_space_dimension, verify_family_axioms, verify_freeness, verify_hopf_axioms,
    verify_milnor_moore,
};

fn lock() -> MutexGuard<'static, ()> {
    static GATE: OnceLock<Mutex<()>> = OnceLock::new();
    GATE.get_or_init(|| Mutex::new(())).lock().unwrap()
}

fn finish(name: &str, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("PASS {name}: {detail} [{:.2?} < {:.0?}]", elapsed, budget);
    assert!(
        elapsed < budget,
        "{name} overran its {budget:?} budget: {elapsed:?}"
    );
}

fn big(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|v| BigInt::from(*v)).collect()
}

#[test]
fn criterion_01_plain_tree_dimensions() {
    let _g = lock();
    let start = Instant::now();
    let family = FamilyId::unordered();
    let expected = big(&[1, 1, 2, 4, 9, 20, 48]);
    let recurrence = cayley_counts(1, 6);
    assert_eq!(recurrence, expected, "recurrence values");
    for (degree, want) in expected.iter().enumerate() {
        let enumerated = BigInt::from(enumerate_trees(&family, degree).len());
        assert_eq!(enumerated, *want, "enumerated dimension at degree {degree}");
    }
    finish(
        "criterion 1",
        "dim T at degrees 0..6 = 1,1,2,4,9,20,48 by enumeration and recurrence",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_02_ordered_tree_dimensions() {
    let _g = lock();
    let start = Instant::now();
    let family = FamilyId::ordered();
    let expected = big(&[1, 1, 2, 5, 14, 42]);
    assert_eq!(ordered_counts(1, 5), expected, "recurrence values");
    for (degree, want) in expected.iter().enumerate() {
        assert_eq!(
            &ordered_closed_form(1, degree),
            want,
            "closed form at degree {degree}"
        );
        let enumerated = BigInt::from(enumerate_trees(&family, degree).len());
        assert_eq!(enumerated, *want, "enumerated dimension at degree {degree}");
    }
    finish(
        "criterion 2",
        "dim OT at degrees 0..5 = 1,1,2,5,14,42 by enumeration, recurrence, and closed form",
        start,
        Duration::from_secs(2),
    );
}

#[test]
fn criterion_03_heap_ordered_dimensions() {
    let _g = lock();
    let start = Instant::now();
    let family = FamilyId::heap_ordered();
    let table = hot_counts(5);
    let mut factorial = BigInt::one();
    for (degree, value) in table.iter().enumerate() {
        if degree > 0 {
            factorial *= BigInt::from(degree);
        }
        assert_eq!(value, &factorial, "table at degree {degree}");
        let enumerated = BigInt::from(enumerate_trees(&family, degree).len());
        assert_eq!(
            enumerated, factorial,
            "enumerated dimension at degree {degree}"
        );
    }
    finish(
        "criterion 3",
        "dim HOT at degree n equals n! for n = 0..5, enumeration agrees",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_04_labeled_dimensions() {
    let _g = lock();
    let start = Instant::now();
    let family = FamilyId::labeled(2).unwrap();
    let expected = big(&[1, 2, 7]);
    assert_eq!(cayley_counts(2, 2), expected, "recurrence values");
    for (degree, want) in expected.iter().enumerate() {
        let enumerated = BigInt::from(enumerate_trees(&family, degree).len());
        assert_eq!(enumerated, *want, "enumerated dimension at degree {degree}");
    }
    finish(
        "criterion 4",
        "dim LT(M=2) at degrees 0..2 = 1,2,7 by enumeration and recurrence",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_05_hopf_axiom_suites() {
    let _g = lock();
    let start = Instant::now();
    let runs = [
        (FamilyId::unordered(), 5),
        (FamilyId::ordered(), 5),
        (FamilyId::labeled(2).unwrap(), 5),
        (FamilyId::heap_ordered(), 4),
    ];
    let mut total_instances = 0;
    for (family, bound) in runs {
        let report = verify_hopf_axioms(&family, bound);
        assert!(report.all_ok(), "{}", report.summary());
        assert_eq!(report.checks.len(), 8);
        total_instances += report.checks.iter().map(|c| c.instances).sum::<u64>();
    }
    finish(
        "criterion 5",
        &format!(
            "Hopf suites (8 identities) pass exhaustively for T/OT/LT(M=2) to degree 5 \
             and HOT to degree 4; {total_instances} instances, zero failures"
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_06_family_axiom_suites() {
    let _g = lock();
    let start = Instant::now();
    let runs = [
        (FamilyId::unordered(), 4),
        (FamilyId::ordered(), 4),
        (FamilyId::heap_ordered(), 4),
        (FamilyId::labeled(2).unwrap(), 3),
    ];
    let mut total_instances = 0;
    for (family, bound) in runs {
        let report = verify_family_axioms(&family, bound);
        assert!(report.all_ok(), "{}", report.summary());
        total_instances += report.checks.iter().map(|c| c.instances).sum::<u64>();
    }
    finish(
        "criterion 6",
        &format!(
            "structural axioms and all four bijection round trips pass exhaustively \
             to 4 nodes per tree (T, OT, HOT; LT(M=2) to 3); {total_instances} instances"
        ),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_07_primitive_structure() {
    let _g = lock();
    let start = Instant::now();
    let family = FamilyId::unordered();
    // Nullspace dimensions p_1..p_4 equal a_0..a_3.
    let p: Vec<BigInt> = (1..=4)
        .map(|n| BigInt::from(primitive_space_dimension(&family, n)))
        .collect();
    assert_eq!(p, big(&[1, 1, 2, 4]), "primitive dimensions");
    // π∘Δ(t) = 2^r t for every basis tree to degree 4.
    for degree in 0..=4 {
        for t in enumerate_trees(&family, degree) {
            let folded = pi_fold(&coproduct_tree(&t));
            let factor = Coefficient::from_integer(BigInt::from(1u64 << t.root_child_count()));
            let expected = TreeVector::from_tree(t.clone()).scaled(&factor);
            assert_eq!(folded, expected, "π∘Δ at {t}");
        }
    }
    // The partition formula applied to p reproduces a, with a_4 = 9.
    let derived = pbw_dimensions(&p, 4);
    assert_eq!(derived, big(&[1, 1, 2, 4, 9]));
    finish(
        "criterion 7",
        "T primitives: nullspace p_1..p_4 = 1,1,2,4 = a_0..a_3, π∘Δ(t) = 2^r·t to degree 4, \
         partition formula gives a_4 = 9",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_08_milnor_moore_dimensions() {
    let _g = lock();
    let start = Instant::now();
    let ot = FamilyId::ordered();
    let p_ot: Vec<BigInt> = (1..=4)
        .map(|n| BigInt::from(primitive_space_dimension(&ot, n)))
        .collect();
    assert_eq!(p_ot, big(&[1, 1, 3, 8]), "OT primitive dimensions");
    let report = verify_milnor_moore(&ot, 4);
    assert!(report.all_ok(), "{}", report.summary());

    let hot = FamilyId::heap_ordered();
    let report = verify_milnor_moore(&hot, 4);
    assert!(report.all_ok(), "{}", report.summary());
    finish(
        "criterion 8",
        "nullspace primitive dimensions reproduce enumerated dimensions through the \
         partition formula for OT (p = 1,1,3,8) and HOT, to degree 4",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_09_freeness() {
    let _g = lock();
    let start = Instant::now();
    let ot_report = verify_freeness(&FamilyId::ordered(), 5).unwrap();
    assert!(ot_report.all_ok(), "{}", ot_report.summary());
    // g_n = a_{n-1} for OT with one label.
    let a = ordered_counts(1, 5);
    for n in 1..=5usize {
        let g_n = BigInt::from(
            enumerate_trees(&FamilyId::ordered(), n)
                .iter()
                .filter(|t| treehopf::enumeration::is_indecomposable(t))
                .count(),
        );
        assert_eq!(g_n, a[n - 1], "OT generator count at degree {n}");
    }
    let hot_report = verify_freeness(&FamilyId::heap_ordered(), 4).unwrap();
    assert!(hot_report.all_ok(), "{}", hot_report.summary());
    assert_eq!(indecomposable_counts(4), big(&[1, 1, 3, 13]));
    finish(
        "criterion 9",
        "freeness: generator identity, root-arity triangularity, and unique factorization \
         pass for OT to degree 5 (g_n = a_(n-1)) and HOT to degree 4 (g = 1,1,3,13)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_10_generating_function_identity() {
    let _g = lock();
    let start = Instant::now();
    let one_label = cayley_series_report(1, 8);
    assert!(
        one_label.ok,
        "first mismatch: {:?}",
        one_label.first_mismatch
    );
    let two_labels = cayley_series_report(2, 6);
    assert!(
        two_labels.ok,
        "first mismatch: {:?}",
        two_labels.first_mismatch
    );
    finish(
        "criterion 10",
        "T(z) = z·Π(1-z^n)^(-M t_n) holds exactly mod z^9 for M = 1 and mod z^7 for M = 2",
        start,
        Duration::from_secs(1),
    );
}
