mod common;

use std::collections::BTreeSet;

use spantl::computation::{enumerate_computations, span_exact, valid_outputs};
use spantl::corpus;
use spantl::dag::build_dag;
use spantl::machine::{parse_machine, AtoMachine, ResourceBounds, StateKind};
use spantl::nfta::{count_by_size, count_exact, enumerate_accepted, parse_nfta, serialize_nfta};
use spantl::reduction::{build_nfta, size_bound, tuple_product, TupleSet};
use spantl::trees::{LabeledTree, Mode};
use spantl::RunError;

fn load(name: &str) -> (AtoMachine, ResourceBounds) {
    let m = parse_machine(corpus::machine(name)).unwrap();
    let b = m.bounds().unwrap();
    (m, b)
}

fn terminating() -> impl Iterator<Item = &'static str> {
    corpus::MACHINES
        .iter()
        .map(|&(n, _)| n)
        .filter(|&n| n != "ex5_loop")
}

#[test]
fn ordered_outputs_are_the_accepted_trees() {
    for name in terminating() {
        let (m, b) = load(name);
        for w in common::words(&['a', 'b', 'x'], 4) {
            let outputs = valid_outputs(&m, &w, b, Mode::Ordered).unwrap();
            let r = build_nfta(&m, &w, b).unwrap();
            let accepted = enumerate_accepted(&r.nfta, size_bound(&b)).unwrap();
            let from_span: BTreeSet<&LabeledTree> = outputs.values().collect();
            let from_nfta: BTreeSet<&LabeledTree> = accepted.iter().collect();
            assert_eq!(from_span, from_nfta, "{name} on {w:?}");
            let count = count_exact(&r.nfta, size_bound(&b), true).unwrap();
            assert_eq!(count, outputs.len().into(), "{name} on {w:?}");
        }
    }
}

#[test]
fn corpus_spans() {
    let cases: &[(&str, &str, usize, usize)] = &[
        ("ex1_forced_accept", "", 1, 1),
        ("ex2_existential", "x", 2, 2),
        ("ex3_universal", "", 1, 1),
        ("ex4_universal_chain", "", 1, 1),
        ("ex6_nested_fanout", "", 2, 2),
        ("ex7_reject_annihilates", "", 1, 1),
        ("ex8_input_reading", "aab", 4, 4),
        ("ex8_input_reading", "", 1, 1),
        ("ex8_input_reading", "ax", 0, 0),
        ("ex9_dead_end", "", 1, 1),
        ("ex10_tape_writing", "", 3, 3),
        ("ex11_labeled_halting", "", 2, 2),
        ("ex12_sibling_order", "", 2, 1),
    ];
    for &(name, w, ordered, unordered) in cases {
        let (m, b) = load(name);
        assert_eq!(
            span_exact(&m, w, b, Mode::Ordered).unwrap(),
            ordered,
            "{name}"
        );
        assert_eq!(
            span_exact(&m, w, b, Mode::Unordered).unwrap(),
            unordered,
            "{name}"
        );
    }
}

#[test]
fn reduction_language_is_bounded() {
    for name in terminating() {
        let (m, b) = load(name);
        let r = build_nfta(&m, "ab", b).unwrap();
        let bound = size_bound(&b);
        let counts = count_by_size(&r.nfta, bound + 8).unwrap();
        assert!(
            counts[bound + 1..].iter().all(|c| *c == 0u32.into()),
            "{name}"
        );
    }
}

// The set computed at each non-labeling node is the union or product of
// what its children produced; for labeling nodes the same set shows up as
// the transitions leaving the node's state.
#[test]
fn tuple_set_sizes_follow_the_children() {
    for name in terminating() {
        let (m, b) = load(name);
        for w in ["", "ab", "ba"] {
            let r = build_nfta(&m, w, b).unwrap();
            let g = &r.dag;
            for id in 0..g.len() {
                if g.is_leaf(id) {
                    continue;
                }
                let c = g.config(id);
                let parts: Vec<TupleSet> = g
                    .children(id)
                    .iter()
                    .map(|&k| r.memo[&m.encode(g.config(k))].clone())
                    .collect();
                let universal = m.classify(c).kind == StateKind::Universal;
                let combined = if universal {
                    let product: usize = parts.iter().map(TupleSet::len).product();
                    let p = tuple_product(&parts);
                    assert!(p.len() <= product);
                    p
                } else {
                    let sum: usize = parts.iter().map(TupleSet::len).sum();
                    let mut p = TupleSet::empty();
                    for q in &parts {
                        p = p.union(q);
                    }
                    assert!(p.len() <= sum);
                    p
                };
                let key = m.encode(c);
                if m.is_labeling(c) {
                    assert_eq!(r.memo[&key], TupleSet::singleton(key.clone()));
                    let leaving = r.nfta.transitions.iter().filter(|t| t.state == key).count();
                    assert_eq!(leaving, combined.len(), "{name} {key}");
                } else {
                    assert_eq!(r.memo[&key], combined, "{name} {key}");
                }
            }
        }
    }
}

#[test]
fn emitted_automaton_round_trips() {
    let (m, b) = load("ex2_existential");
    let r = build_nfta(&m, "x", b).unwrap();
    let text = serialize_nfta(&r.nfta);
    let back = parse_nfta(&text).unwrap();
    assert_eq!(back, r.nfta);
    assert!(back.accepts(&"\"\"(a)".parse().unwrap()));
    assert!(!back.accepts(&"\"\"(a,b)".parse().unwrap()));
}

#[test]
fn dag_covers_every_computation() {
    for name in terminating() {
        let (m, b) = load(name);
        for w in common::words(&['a', 'b'], 3) {
            let g = build_dag(&m, &w, b).unwrap();
            for t in enumerate_computations(&m, &w, b).unwrap() {
                assert!(t.nodes().all(|n| g.contains(&n.config)), "{name} on {w:?}");
            }
        }
    }
}

#[test]
fn loop_is_rejected_everywhere() {
    let (m, b) = load("ex5_loop");
    assert!(matches!(build_dag(&m, "", b), Err(RunError::Cycle { .. })));
    assert!(matches!(build_nfta(&m, "", b), Err(RunError::Cycle { .. })));
    assert_eq!(
        span_exact(&m, "", b, Mode::Ordered).unwrap_err().bound(),
        Some("max_nodes")
    );
}
