mod common;

use std::collections::BTreeSet;

use spantl::nfta::{
    count_by_enumeration, count_by_size, count_exact, count_unordered_classes, determinize,
    enumerate_accepted, parse_nfta, serialize_nfta,
};
use spantl::trees::Mode;

#[test]
fn counts_match_brute_force() {
    for seed in 0..24 {
        let a = common::random_nfta(seed, 4, 3, 2);
        let per_size = count_by_size(&a, 5).unwrap();
        for (n, got) in per_size.iter().enumerate() {
            let want = common::brute_force_count(&a, n, 2);
            assert_eq!(*got, want.into(), "seed {seed}, size {n}");
            assert_eq!(
                count_by_enumeration(&a, n, false).unwrap(),
                want.into(),
                "seed {seed}, size {n}"
            );
        }
        let total: usize = (0..=5).map(|n| common::brute_force_count(&a, n, 2)).sum();
        assert_eq!(count_exact(&a, 5, true).unwrap(), total.into());
    }
}

#[test]
fn enumeration_lists_exactly_the_members() {
    for seed in 100..110 {
        let a = common::random_nfta(seed, 3, 2, 2);
        let listed: BTreeSet<_> = enumerate_accepted(&a, 4).unwrap().into_iter().collect();
        let labels: Vec<String> = a.alphabet.iter().cloned().collect();
        let brute: BTreeSet<_> = (1..=4)
            .flat_map(|n| common::all_trees(&labels, n, 2))
            .filter(|t| common::member(&a, &a.initial, t))
            .collect();
        assert_eq!(listed, brute, "seed {seed}");
    }
}

#[test]
fn unordered_classes_match_brute_force() {
    for seed in 200..210 {
        let a = common::random_nfta(seed, 3, 2, 2);
        let labels: Vec<String> = a.alphabet.iter().cloned().collect();
        let classes: BTreeSet<_> = (1..=4)
            .flat_map(|n| common::all_trees(&labels, n, 2))
            .filter(|t| common::member(&a, &a.initial, t))
            .map(|t| t.canonical_code(Mode::Unordered))
            .collect();
        assert_eq!(
            count_unordered_classes(&a, 4).unwrap(),
            classes.len(),
            "seed {seed}"
        );
    }
}

#[test]
fn determinized_agrees_with_membership() {
    for seed in 300..320 {
        let a = common::random_nfta(seed, 4, 3, 2);
        let det = determinize(&a).unwrap();
        let labels: Vec<String> = a.alphabet.iter().cloned().collect();
        for n in 1..=4 {
            for t in common::all_trees(&labels, n, 3) {
                let want = common::member(&a, &a.initial, &t);
                assert_eq!(det.accepts(&t), want, "seed {seed}: {t}");
                assert_eq!(a.accepts(&t), want, "seed {seed}: {t}");
            }
        }
    }
}

#[test]
fn binary_automaton_sequence() {
    let a = parse_nfta(common::BINARY).unwrap();
    for (n, want) in [(1, 1u32), (2, 1), (3, 2), (4, 4), (5, 9), (6, 21)] {
        assert_eq!(common::brute_force_count(&a, n, 2), want as usize);
        assert_eq!(count_exact(&a, n, false).unwrap(), want.into());
    }
}

#[test]
fn random_automata_round_trip() {
    for seed in 0..20 {
        let a = common::random_nfta(seed, 4, 3, 2);
        assert_eq!(parse_nfta(&serialize_nfta(&a)).unwrap(), a);
    }
}

fn corpus_automata() -> Vec<(String, spantl::nfta::Nfta)> {
    let mut out = Vec::new();
    for &(name, text) in spantl::corpus::MACHINES {
        if name == "ex5_loop" {
            continue;
        }
        let m = spantl::machine::parse_machine(text).unwrap();
        let b = m.bounds().unwrap();
        for w in ["", "ab", "ba"] {
            out.push((
                format!("{name} on {w:?}"),
                spantl::reduction::build_nfta(&m, w, b).unwrap().nfta,
            ));
        }
    }
    out
}

#[test]
fn cumulative_counts_are_prefix_sums() {
    let mut automata = corpus_automata();
    automata.extend((0..10).map(|s| (format!("seed {s}"), common::random_nfta(s, 4, 3, 2))));
    for (what, a) in &automata {
        let per_size = count_by_size(a, 8).unwrap();
        let mut running = spantl::nfta::BigUint::default();
        for (n, c) in per_size.iter().enumerate() {
            let before = running.clone();
            running += c;
            assert!(running >= before);
            assert_eq!(
                count_exact(a, n, true).unwrap(),
                running,
                "{what}, size {n}"
            );
        }
    }
}

#[test]
fn corpus_counts_match_brute_force() {
    for (what, a) in corpus_automata() {
        let arity = a.max_arity();
        for n in 0..=5 {
            let want = common::brute_force_count(&a, n, arity);
            assert_eq!(
                count_exact(&a, n, false).unwrap(),
                want.into(),
                "{what}, size {n}"
            );
        }
    }
}

#[test]
fn determinized_corpus_automata_up_to_size_five() {
    for (what, a) in corpus_automata() {
        let det = determinize(&a).unwrap();
        let labels: Vec<String> = a.alphabet.iter().cloned().collect();
        for n in 1..=5 {
            for t in common::all_trees(&labels, n, n - 1) {
                assert_eq!(
                    det.accepts(&t),
                    common::member(&a, &a.initial, &t),
                    "{what}: {t}"
                );
            }
        }
    }
}
