//! Acceptance run over the example corpus: one status line per criterion.
//!
//! Lines are written straight to standard output so that they show up in
//! captured test logs. Each criterion asserts what the library must satisfy;
//! a criterion that cannot hold for mathematical reasons prints `FAIL` with the
//! reason while the assertions pin the library to the oracle instead.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::{q, Tensor};
use splitlts::connectivity::{
    connection_classes, enumerate_ideals_maximal_length, find_connection, simplicity_report, BruteForceVerdict,
    TheoremVerdict, DEFAULT_SUBSET_CAP,
};
use splitlts::corpus::{case, cases};
use splitlts::embedding::{check_right_leibniz, derived_triple_system, standard_embedding};
use splitlts::exact_linear::{format_vector, Subspace};
use splitlts::split::{
    check_gradings, check_h0_identities, check_split, decompose, ideal_root_decomposition, is_maximal_length,
    is_symmetric, Root,
};
use splitlts::triple::{check_leibniz_triple, find_defining_violation, is_lie_triple_system, j_ideal, product_space};
use splitlts::{RootDecomposition, TripleSystem};

fn report(id: u32, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {id}: {status} {detail}").unwrap();
}

fn golden(name: &str) -> serde_json::Value {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn decomposition(name: &str) -> RootDecomposition {
    let c = case(name).unwrap();
    let e = standard_embedding(&c.system).unwrap();
    decompose(&c.system, &e, &c.masa).unwrap()
}

/// Mutants adding `delta` to one structure constant, at most `limit` of them,
/// spread evenly over the positions of the tensor.
fn mutants(t: &TripleSystem, limit: usize) -> Vec<TripleSystem> {
    let n = t.dim();
    let deltas = [q(1), q(-1), q(2), q(-2)];
    let positions = n * n * n * n;
    let total = positions * deltas.len();
    let stride = (total / limit).max(1);
    (0..total)
        .step_by(stride)
        .take(limit)
        .map(|m| {
            let (slot, delta) = (m / deltas.len(), &deltas[m % deltas.len()]);
            let (ijk, out) = (slot / n, slot % n);
            let (i, j, k) = (ijk / (n * n), (ijk / n) % n, ijk % n);
            let mut value = t.entry(i, j, k).clone();
            value[out] += delta;
            t.with_entry(i, j, k, value).unwrap()
        })
        .collect()
}

fn identity_soundness() {
    let start = Instant::now();
    let corpus_ok = cases().iter().all(|c| check_leibniz_triple(&c.system).passed);
    assert!(corpus_ok);
    let mut details = Vec::new();
    let mut all_killed = true;
    for name in ["c2-nilpotent", "c3-sl2", "c5-hs-adjoint"] {
        let c = case(name).unwrap();
        let derived = derived_triple_system(c.algebra.as_ref().unwrap()).unwrap();
        let batch = mutants(&derived, 64);
        assert!(batch.len() >= 50);
        let mut survivors = 0;
        for m in &batch {
            let killed = find_defining_violation(m).is_some();
            // a survivor must be a genuine system, not a missed violation
            assert_eq!(killed, !Tensor::of(m).defining_identities_hold(), "{name}");
            if !killed {
                survivors += 1;
            }
        }
        all_killed &= survivors == 0;
        details.push(format!("{name} {}/{} killed", batch.len() - survivors, batch.len()));
    }
    let elapsed = start.elapsed();
    let mut detail = format!("[{}] in {:.2?}", details.join(", "), elapsed);
    if !all_killed {
        detail.push_str(
            "; survivors are verified by the oracle to satisfy both defining identities, \
             so no identity check can reject them",
        );
    }
    report(1, all_killed && elapsed < Duration::from_secs(10), &detail);
}

fn j_properties() {
    for c in cases() {
        let t = &c.system;
        let n = t.dim();
        let (full, j) = (Subspace::full(n), j_ideal(t));
        assert!(product_space(t, &full, &full, &j).is_zero(), "{}", c.name);
        assert!(product_space(t, &full, &j, &full).is_zero(), "{}", c.name);
        assert_eq!(is_lie_triple_system(t), golden(c.name)["is_lie_triple_system"], "{}", c.name);
    }
    assert!(is_lie_triple_system(&case("c3-sl2").unwrap().system));
    assert!(!is_lie_triple_system(&case("c5-hs-adjoint").unwrap().system));
    report(2, true, "{T,T,J} = {T,J,T} = 0 on every system; Lie triple flags match golden files");
}

fn standard_embedding_checks() {
    let start = Instant::now();
    for c in cases() {
        let e = standard_embedding(&c.system).unwrap();
        assert!(check_right_leibniz(e.algebra()).passed, "{}", c.name);
        assert!(e.check_grading().passed(), "{}", c.name);
        assert!(check_right_leibniz(&e.l0_algebra()).passed, "{}", c.name);
    }
    let elapsed = start.elapsed();
    report(
        3,
        elapsed < Duration::from_secs(30),
        &format!("every embedding and its degree-zero part verified in {elapsed:.2?}"),
    );
}

fn split_machinery() {
    let d = decomposition("c3-sl2");
    assert_eq!(d.t_zero().rank(), 1);
    let expected: BTreeSet<Vec<String>> = golden("c3-sl2")["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| serde_json::from_value(r["root"].clone()).unwrap())
        .collect();
    let found: BTreeSet<Vec<String>> = d.lambda1().iter().map(|r| format_vector(r.values())).collect();
    assert_eq!(found, expected);
    assert_eq!(d.lambda1().len(), 2);
    for alpha in d.lambda1() {
        assert_eq!(d.t_space(&alpha).unwrap().rank(), 1);
        assert!(d.in_lambda1(&alpha.neg()));
    }
    assert!(check_split(&d).passed());
    assert!(check_gradings(&d).passed());
    assert!(check_h0_identities(&d).passed());
    assert!(is_maximal_length(&d));
    report(4, true, &format!("roots {:?}, T0 rank 1, all split checks pass", found));
}

fn connected(d: &RootDecomposition, a: &Root, b: &Root) -> bool {
    find_connection(d, a, b).unwrap().is_some()
}

fn connectivity_laws() {
    let mut counts = Vec::new();
    for c in cases() {
        let e = standard_embedding(&c.system).unwrap();
        let d = decompose(&c.system, &e, &c.masa).unwrap();
        let roots = d.lambda1();
        for alpha in &roots {
            assert!(connected(&d, alpha, alpha) && connected(&d, alpha, &alpha.neg()), "{} {alpha}", c.name);
        }
        let classes = connection_classes(&d);
        if is_symmetric(d.lambda0().iter()) {
            // the relation is rebuilt here from pairwise searches
            for a in &roots {
                for b in &roots {
                    if connected(&d, a, b) {
                        assert!(connected(&d, b, a), "{}", c.name);
                        for g in roots.iter().filter(|g| connected(&d, b, g)) {
                            assert!(connected(&d, a, g), "{}", c.name);
                        }
                    }
                }
            }
            assert!(classes.is_equivalence(), "{}", c.name);
        }
        counts.push((c.name, classes.class_count()));
    }
    let count = |name| counts.iter().find(|(n, _)| *n == name).unwrap().1;
    assert_eq!(count("c3-sl2"), Some(1));
    assert_eq!(count("c4-sl2-sum"), Some(2));
    report(5, true, "every root reaches itself and its negative; relations are equivalences; C3 one class, C4 two");
}

fn ideal_decomposition() {
    let mut checked = 0;
    for c in cases() {
        let e = standard_embedding(&c.system).unwrap();
        let d = decompose(&c.system, &e, &c.masa).unwrap();
        if !is_maximal_length(&d) || d.lambda1().is_empty() {
            continue;
        }
        let family = enumerate_ideals_maximal_length(&d, DEFAULT_SUBSET_CAP).unwrap();
        for member in &family.ideals {
            let split = ideal_root_decomposition(&d, &member.space).unwrap();
            let mut rebuilt = member.space.intersect(d.t_zero()).unwrap();
            for alpha in d.lambda1() {
                rebuilt = rebuilt.sum(&member.space.intersect(d.t_space(&alpha).unwrap()).unwrap()).unwrap();
            }
            assert_eq!(rebuilt, member.space, "{}", c.name);
            assert_eq!(split.zero_part, member.space.intersect(d.t_zero()).unwrap());
            assert!(member.decomposes);
            checked += 1;
        }
    }
    report(6, checked > 0, &format!("{checked} enumerated ideals rebuilt from their root pieces"));
}

fn theorem_cross_check() {
    let mut lines = Vec::new();
    for c in cases() {
        let e = standard_embedding(&c.system).unwrap();
        let d = decompose(&c.system, &e, &c.masa).unwrap();
        let r = simplicity_report(&d).unwrap();
        if r.hypotheses.all_hold() {
            let theorem = r.verdict_theorem == TheoremVerdict::Simple;
            assert_eq!(Some(theorem), r.is_simple(), "{}", c.name);
            assert_ne!(r.verdict_bruteforce, BruteForceVerdict::NotApplicable, "{}", c.name);
        } else {
            assert_eq!(r.verdict_theorem, TheoremVerdict::HypothesesUnmet, "{}", c.name);
        }
        assert_eq!(r.is_simple(), golden(c.name)["expected_simple"].as_bool(), "{}", c.name);
        lines.push(format!("{}={:?}/{:?}", c.name, r.verdict_theorem, r.verdict_bruteforce));
    }
    let c3 = simplicity_report(&decomposition("c3-sl2")).unwrap();
    assert_eq!((c3.verdict_theorem, c3.verdict_bruteforce), (TheoremVerdict::Simple, BruteForceVerdict::Simple));
    let zero = simplicity_report(&decomposition("c1-zero-1")).unwrap();
    assert_eq!(zero.verdict_bruteforce, BruteForceVerdict::NotSimple);
    let c5 = simplicity_report(&decomposition("c5-hs-adjoint")).unwrap();
    assert_eq!(c5.verdict_theorem, TheoremVerdict::HypothesesUnmet);
    assert_eq!(c5.verdict_bruteforce, BruteForceVerdict::Simple);
    report(7, true, &lines.join(" "));
}

fn proposition_coverage() {
    let (mut outside, mut inside) = (0, 0);
    for c in cases() {
        let e = standard_embedding(&c.system).unwrap();
        let d = decompose(&c.system, &e, &c.masa).unwrap();
        let r = simplicity_report(&d).unwrap();
        let Some(family) = r.enumerated_ideals.as_ref() else { continue };
        assert_ne!(r.propositions.ideal_outside_j_is_t, Some(false), "{}", c.name);
        assert_ne!(r.propositions.j_splits, Some(false), "{}", c.name);
        let t0_j = d.t_zero().sum(&family.j).unwrap();
        for member in &family.ideals {
            let qualifies = r.propositions.ideal_outside_j_is_t.is_some();
            if qualifies && !t0_j.contains_subspace(&member.space).unwrap() {
                assert!(member.space.is_full(), "{}", c.name);
                outside += 1;
            }
            if r.propositions.j_splits.is_some()
                && !member.space.is_zero()
                && member.space != family.j
                && family.j.contains_subspace(&member.space).unwrap()
            {
                inside += 1;
            }
        }
    }
    report(
        8,
        outside > 0,
        &format!(
            "{outside} ideals outside T0+J all equal T; {inside} proper nonzero ideals inside J (the corpus has none)"
        ),
    );
}

fn performance() {
    let mut slowest = Duration::ZERO;
    for c in cases() {
        let start = Instant::now();
        assert!(check_leibniz_triple(&c.system).passed);
        let e = standard_embedding(&c.system).unwrap();
        let d = decompose(&c.system, &e, &c.masa).unwrap();
        simplicity_report(&d).unwrap();
        slowest = slowest.max(start.elapsed());
    }
    let mut timings = Vec::new();
    for n in 2..=8usize {
        let t = TripleSystem::zero(n).unwrap();
        let start = Instant::now();
        let r = check_leibniz_triple(&t);
        let elapsed = start.elapsed();
        assert!(r.passed);
        // each basis tuple costs O(n) scalar operations on top of the n^5 tuples
        assert_eq!(r.tuples_checked % (n as u64).pow(5), 0);
        timings.push(format!("n={n}:{}x{}^5 tuples {elapsed:.2?}", r.tuples_checked / (n as u64).pow(5), n));
    }
    report(9, slowest < Duration::from_secs(60), &format!("slowest pipeline {slowest:.2?}; {}", timings.join(", ")));
}

#[test]
fn acceptance_criteria() {
    // start on a fresh line after the harness's "test ... " prefix
    writeln!(std::io::stdout().lock()).unwrap();
    identity_soundness();
    j_properties();
    standard_embedding_checks();
    split_machinery();
    connectivity_laws();
    ideal_decomposition();
    theorem_cross_check();
    proposition_coverage();
    performance();
}
