//! Brute-force helpers shared by the integration tests. Nothing here calls
//! into the automaton code it is used to check.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spantl::nfta::Nfta;
use spantl::trees::LabeledTree;

/// Every ordered tree with exactly `size` nodes, labels drawn from `labels`,
/// and at most `max_arity` children per node.
pub fn all_trees(labels: &[String], size: usize, max_arity: usize) -> Vec<LabeledTree> {
    if size == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for forest in forests(labels, size - 1, max_arity, max_arity) {
        for l in labels {
            out.push(LabeledTree::node(l.clone(), forest.clone()));
        }
    }
    out
}

/// Ordered sequences of at most `slots` trees with `size` nodes in total.
fn forests(
    labels: &[String],
    size: usize,
    slots: usize,
    max_arity: usize,
) -> Vec<Vec<LabeledTree>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if slots == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=size {
        let heads = all_trees(labels, first, max_arity);
        let tails = forests(labels, size - first, slots - 1, max_arity);
        for h in &heads {
            for t in &tails {
                let mut f = Vec::with_capacity(t.len() + 1);
                f.push(h.clone());
                f.extend(t.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

/// Top-down membership straight from the definition of a run.
pub fn member(a: &Nfta, state: &str, t: &LabeledTree) -> bool {
    a.transitions.iter().any(|tr| {
        tr.state == state
            && tr.label == t.label
            && tr.children.len() == t.children.len()
            && tr
                .children
                .iter()
                .zip(&t.children)
                .all(|(q, c)| member(a, q, c))
    })
}

pub fn brute_force_count(a: &Nfta, size: usize, max_arity: usize) -> usize {
    let labels: Vec<String> = a.alphabet.iter().cloned().collect();
    all_trees(&labels, size, max_arity)
        .iter()
        .filter(|t| member(a, &a.initial, t))
        .count()
}

/// A random automaton with up to `max_states` states, up to `max_labels`
/// labels and arity at most `max_arity`.
pub fn random_nfta(seed: u64, max_states: usize, max_labels: usize, max_arity: usize) -> Nfta {
    let mut rng = StdRng::seed_from_u64(seed);
    let n_states = rng.gen_range(1..=max_states);
    let n_labels = rng.gen_range(1..=max_labels);
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let labels: Vec<String> = (0..n_labels)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let density = rng.gen_range(0.1..0.45);
    let mut a = Nfta::new(states[0].clone());
    for s in &states {
        a.declare_state(s);
    }
    for l in &labels {
        a.declare_label(l);
    }
    for s in &states {
        for l in &labels {
            for arity in 0..=max_arity {
                let mut tuple = vec![0usize; arity];
                loop {
                    if rng.gen_bool(density) {
                        let children: Vec<String> =
                            tuple.iter().map(|&i| states[i].clone()).collect();
                        a.add_transition(s, l, &children);
                    }
                    let mut i = arity;
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        tuple[i] += 1;
                        if tuple[i] < n_states {
                            break;
                        }
                        tuple[i] = 0;
                    }
                    if tuple.iter().all(|&x| x == 0) {
                        break;
                    }
                }
            }
        }
    }
    a
}

/// Every word over `symbols` of length at most `max_len`.
pub fn words(symbols: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| symbols.iter().map(move |&c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub const BINARY: &str = "\
states: q
alphabet: \"a\"
init: q
delta:
(q, \"a\") -> ()
(q, \"a\") -> (q)
(q, \"a\") -> (q, q)
";
