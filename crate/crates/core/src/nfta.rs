//! Top-down nondeterministic finite tree automata over ordered trees.
//!
//! Besides membership, this module counts accepted trees exactly: the
//! automaton is determinized bottom-up (subset construction over reachable
//! state sets) and trees are then counted per size by dynamic programming,
//! which is exact because every tree reaches exactly one deterministic state.
//!
//! # Text format
//!
//! ```text
//! states: q r
//! alphabet: "a" ""
//! init: q
//! delta:
//! (q, "a") -> (r, r)
//! (r, "") -> ()
//! ```
//!
//! State names are bare words or quoted strings; labels are always quoted
//! when written.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

pub use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::trees::{quote_label, CanonicalCode, LabeledTree, Lexer, Mode, TreeParseError};

/// Ceiling on reachable deterministic states.
pub const MAX_DET_STATES: usize = 1 << 14;
/// Ceiling on child tuples examined during determinization.
pub const MAX_DET_TUPLES: usize = 1 << 26;
/// Ceiling on trees held in memory by [`enumerate_accepted`].
pub const MAX_ENUMERATED_TREES: usize = 1 << 20;
/// Largest `max_size` accepted by [`enumerate_accepted`].
pub const MAX_ENUMERATION_SIZE: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub state: String,
    pub label: String,
    pub children: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfta {
    pub states: BTreeSet<String>,
    pub alphabet: BTreeSet<String>,
    pub initial: String,
    pub transitions: BTreeSet<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NftaError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared {what} `{name}`")]
    Undeclared { what: &'static str, name: String },
    #[error("determinization exceeded {limit} {what}; count by enumeration instead")]
    DeterminizationCap { what: &'static str, limit: usize },
    #[error("enumeration exceeded {limit} {what}")]
    EnumerationCap { what: &'static str, limit: usize },
}

impl From<TreeParseError> for NftaError {
    fn from(e: TreeParseError) -> Self {
        match e {
            TreeParseError::Empty => NftaError::Syntax {
                line: 1,
                column: 1,
                message: "empty input".into(),
            },
            TreeParseError::Syntax {
                line,
                column,
                message,
            } => NftaError::Syntax {
                line,
                column,
                message,
            },
        }
    }
}

impl Nfta {
    /// An automaton with only its initial state.
    pub fn new(initial: impl Into<String>) -> Self {
        let initial = initial.into();
        Nfta {
            states: BTreeSet::from([initial.clone()]),
            alphabet: BTreeSet::new(),
            initial,
            transitions: BTreeSet::new(),
        }
    }

    /// Inserts a transition, declaring its states and label. Returns false if
    /// it was already present.
    pub fn add_transition(&mut self, state: &str, label: &str, children: &[String]) -> bool {
        self.states.insert(state.to_string());
        self.states.extend(children.iter().cloned());
        self.alphabet.insert(label.to_string());
        self.transitions.insert(Transition {
            state: state.to_string(),
            label: label.to_string(),
            children: children.to_vec(),
        })
    }

    pub fn declare_state(&mut self, state: &str) {
        self.states.insert(state.to_string());
    }

    pub fn declare_label(&mut self, label: &str) {
        self.alphabet.insert(label.to_string());
    }

    /// Largest transition arity.
    pub fn max_arity(&self) -> usize {
        self.transitions
            .iter()
            .map(|t| t.children.len())
            .max()
            .unwrap_or(0)
    }

    /// Checks that every state and label used is declared.
    pub fn check_declared(&self) -> Result<(), NftaError> {
        let state = |name: &String| {
            if self.states.contains(name) {
                Ok(())
            } else {
                Err(NftaError::Undeclared {
                    what: "state",
                    name: name.clone(),
                })
            }
        };
        state(&self.initial)?;
        for t in &self.transitions {
            state(&t.state)?;
            t.children.iter().try_for_each(state)?;
            if !self.alphabet.contains(&t.label) {
                return Err(NftaError::Undeclared {
                    what: "label",
                    name: t.label.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn accepts(&self, t: &LabeledTree) -> bool {
        accepts(self, t)
    }
}

impl fmt::Display for Nfta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self.states.iter().map(|s| quote_label(s)).collect();
        writeln!(f, "states: {}", states.join(" "))?;
        let alphabet: Vec<String> = self.alphabet.iter().map(|a| quoted(a)).collect();
        writeln!(f, "alphabet: {}", alphabet.join(" "))?;
        writeln!(f, "init: {}", quote_label(&self.initial))?;
        writeln!(f, "delta:")?;
        for t in &self.transitions {
            let kids: Vec<String> = t.children.iter().map(|s| quote_label(s)).collect();
            writeln!(
                f,
                "({}, {}) -> ({})",
                quote_label(&t.state),
                quoted(&t.label),
                kids.join(", ")
            )?;
        }
        Ok(())
    }
}

fn quoted(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn serialize_nfta(a: &Nfta) -> String {
    a.to_string()
}

pub fn parse_nfta(text: &str) -> Result<Nfta, NftaError> {
    let mut states = None;
    let mut alphabet = None;
    let mut initial = None;
    let mut transitions = BTreeSet::new();
    let mut in_delta = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.chars().count() - trimmed.chars().count();
        let syntax = |column: usize, message: String| NftaError::Syntax {
            line,
            column,
            message,
        };
        if in_delta {
            transitions.insert(parse_transition(trimmed, line, indent + 1)?);
            continue;
        }
        let Some((section, rest)) = trimmed.split_once(':') else {
            return Err(syntax(indent + 1, "expected `section: values`".into()));
        };
        let column = indent + section.chars().count() + 2;
        let items = || -> Result<Vec<String>, NftaError> {
            let mut lx = Lexer::at(rest, line, column);
            let mut out = Vec::new();
            loop {
                lx.skip_ws();
                match lx.peek() {
                    None => return Ok(out),
                    Some(',') => {
                        lx.bump();
                    }
                    Some(_) => out.push(lx.label()?),
                }
            }
        };
        let slot = match section.trim() {
            "states" => &mut states,
            "alphabet" => &mut alphabet,
            "init" => &mut initial,
            "delta" => {
                if !rest.trim().is_empty() {
                    return Err(syntax(column, "transitions start on the next line".into()));
                }
                in_delta = true;
                continue;
            }
            other => return Err(syntax(indent + 1, format!("unknown section `{other}`"))),
        };
        if slot.is_some() {
            return Err(syntax(
                indent + 1,
                format!("duplicate section `{}`", section.trim()),
            ));
        }
        *slot = Some(items()?);
    }

    let missing = |name: &str| NftaError::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: format!("missing section `{name}`"),
    };
    let initial = match initial.ok_or_else(|| missing("init"))?.as_slice() {
        [one] => one.clone(),
        _ => {
            return Err(NftaError::Syntax {
                line: 1,
                column: 1,
                message: "`init` takes exactly one state".into(),
            })
        }
    };
    let a = Nfta {
        states: states
            .ok_or_else(|| missing("states"))?
            .into_iter()
            .collect(),
        alphabet: alphabet
            .ok_or_else(|| missing("alphabet"))?
            .into_iter()
            .collect(),
        initial,
        transitions,
    };
    a.check_declared()?;
    Ok(a)
}

fn parse_transition(text: &str, line: usize, column: usize) -> Result<Transition, NftaError> {
    let mut lx = Lexer::at(text, line, column);
    let expect = |lx: &mut Lexer<'_>, c: char| -> Result<(), NftaError> {
        lx.skip_ws();
        if lx.peek() == Some(c) {
            lx.bump();
            Ok(())
        } else {
            Err(lx.error(&format!("expected `{c}`")).into())
        }
    };
    expect(&mut lx, '(')?;
    lx.skip_ws();
    let state = lx.label()?;
    expect(&mut lx, ',')?;
    lx.skip_ws();
    let label = lx.label()?;
    expect(&mut lx, ')')?;
    expect(&mut lx, '-')?;
    expect(&mut lx, '>')?;
    expect(&mut lx, '(')?;
    let mut children = Vec::new();
    lx.skip_ws();
    if lx.peek() == Some(')') {
        lx.bump();
    } else {
        loop {
            lx.skip_ws();
            children.push(lx.label()?);
            lx.skip_ws();
            match lx.bump() {
                Some(',') => continue,
                Some(')') => break,
                _ => return Err(lx.error("expected `,` or `)`").into()),
            }
        }
    }
    lx.skip_ws();
    if lx.peek().is_some() {
        return Err(lx.error("unexpected text after transition").into());
    }
    Ok(Transition {
        state,
        label,
        children,
    })
}

/// (label, arity) -> [(parent, children)]
type Groups = BTreeMap<(usize, usize), Vec<(usize, Vec<usize>)>>;

/// Index-based view used by the algorithms below.
struct Indexed {
    states: Vec<String>,
    labels: Vec<String>,
    initial: usize,
    groups: Groups,
}

impl Indexed {
    fn new(a: &Nfta) -> Self {
        let states: Vec<String> = a.states.iter().cloned().collect();
        let labels: Vec<String> = a.alphabet.iter().cloned().collect();
        let sid: HashMap<&str, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lid: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut groups = Groups::new();
        for t in &a.transitions {
            let kids = t
                .children
                .iter()
                .map(|c| sid[c.as_str()])
                .collect::<Vec<_>>();
            groups
                .entry((lid[t.label.as_str()], kids.len()))
                .or_default()
                .push((sid[t.state.as_str()], kids));
        }
        Indexed {
            initial: sid[a.initial.as_str()],
            states,
            labels,
            groups,
        }
    }

    fn label_id(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }
}

/// True iff some run of `a` on `t` puts the initial state at the root.
///
/// Evaluated bottom-up: each node gets the set of states from which its
/// subtree can be read.
pub fn accepts(a: &Nfta, t: &LabeledTree) -> bool {
    if a.check_declared().is_err() {
        return false;
    }
    let ix = Indexed::new(a);
    fn eval(ix: &Indexed, t: &LabeledTree) -> Vec<bool> {
        let mut out = vec![false; ix.states.len()];
        let Some(label) = ix.label_id(&t.label) else {
            return out;
        };
        let Some(group) = ix.groups.get(&(label, t.children.len())) else {
            return out;
        };
        let kids: Vec<Vec<bool>> = t.children.iter().map(|c| eval(ix, c)).collect();
        for (parent, children) in group {
            if children.iter().zip(&kids).all(|(&q, set)| set[q]) {
                out[*parent] = true;
            }
        }
        out
    }
    eval(&ix, t)[ix.initial]
}

/// Every accepted tree with at most `max_size` nodes, each once, ordered by
/// size and then by ordered canonical code.
///
/// Trees are generated top-down from each state and size, so the cost is
/// proportional to the number of accepted trees rather than to all trees.
pub fn enumerate_accepted(a: &Nfta, max_size: usize) -> Result<Vec<LabeledTree>, NftaError> {
    if max_size > MAX_ENUMERATION_SIZE {
        return Err(NftaError::EnumerationCap {
            what: "nodes per tree",
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    a.check_declared()?;
    let ix = Indexed::new(a);
    let n_states = ix.states.len();
    // table[s][q]: distinct trees of size s readable from q, keyed by ordered code
    let mut table: Vec<Vec<BTreeMap<Vec<u8>, LabeledTree>>> = vec![vec![BTreeMap::new(); n_states]];
    let mut held = 0usize;

    for size in 1..=max_size {
        let mut row: Vec<BTreeMap<Vec<u8>, LabeledTree>> = vec![BTreeMap::new(); n_states];
        for (&(label, arity), group) in &ix.groups {
            if arity + 1 > size {
                continue;
            }
            for (parent, kids) in group {
                let mut choice = Vec::with_capacity(arity);
                let mut emit = |children: Vec<LabeledTree>| -> Result<(), NftaError> {
                    let t = LabeledTree::node(ix.labels[label].clone(), children);
                    let code = t.canonical_code(Mode::Ordered).code;
                    if row[*parent].insert(code, t).is_none() {
                        held += 1;
                        if held > MAX_ENUMERATED_TREES {
                            return Err(NftaError::EnumerationCap {
                                what: "trees",
                                limit: MAX_ENUMERATED_TREES,
                            });
                        }
                    }
                    Ok(())
                };
                fill(&table, kids, size - 1, &mut choice, &mut emit)?;
            }
        }
        table.push(row);
    }

    let mut out = Vec::new();
    for row in table.iter().skip(1) {
        out.extend(row[ix.initial].values().cloned());
    }
    Ok(out)
}

/// Calls `emit` once per way of giving each of `kids` a tree so that the
/// sizes sum to `budget`.
fn fill<'t>(
    table: &'t [Vec<BTreeMap<Vec<u8>, LabeledTree>>],
    kids: &[usize],
    budget: usize,
    choice: &mut Vec<&'t LabeledTree>,
    emit: &mut dyn FnMut(Vec<LabeledTree>) -> Result<(), NftaError>,
) -> Result<(), NftaError> {
    let Some((&first, rest)) = kids.split_first() else {
        if budget == 0 {
            emit(choice.iter().map(|t| (*t).clone()).collect())?;
        }
        return Ok(());
    };
    // every remaining child needs at least one node
    let max_here = budget.saturating_sub(rest.len());
    for size in 1..=max_here.min(table.len() - 1) {
        for t in table[size][first].values() {
            choice.push(t);
            fill(table, rest, budget - size, choice, emit)?;
            choice.pop();
        }
    }
    Ok(())
}

/// Bottom-up deterministic automaton obtained by subset construction.
///
/// Deterministic states are non-empty sets of automaton states; the empty
/// set is the implicit sink and has no transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetBottomUpTa {
    pub labels: Vec<String>,
    /// Names of the original automaton's states.
    pub nfta_states: Vec<String>,
    /// Each deterministic state as a sorted list of indices into `nfta_states`.
    pub states: Vec<Vec<usize>>,
    /// (label index, child det-states) -> det-state
    pub transitions: BTreeMap<(usize, Vec<usize>), usize>,
    pub accepting: Vec<bool>,
}

impl DetBottomUpTa {
    /// The deterministic state reached by `t`, or `None` for the sink.
    pub fn evaluate(&self, t: &LabeledTree) -> Option<usize> {
        let label = self
            .labels
            .binary_search_by(|l| l.as_str().cmp(&t.label))
            .ok()?;
        let kids = t
            .children
            .iter()
            .map(|c| self.evaluate(c))
            .collect::<Option<Vec<_>>>()?;
        self.transitions.get(&(label, kids)).copied()
    }

    pub fn accepts(&self, t: &LabeledTree) -> bool {
        self.evaluate(t).is_some_and(|q| self.accepting[q])
    }
}

/// Subset construction on the bottom-up reading of `a`, materializing only
/// reachable state sets.
pub fn determinize(a: &Nfta) -> Result<DetBottomUpTa, NftaError> {
    a.check_declared()?;
    let ix = Indexed::new(a);
    let words = ix.states.len().div_ceil(64).max(1);
    let mut sets: Vec<Vec<u64>> = Vec::new();
    let mut id_of: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut transitions = BTreeMap::new();
    let mut examined = 0usize;

    let mut intern = |bits: Vec<u64>, sets: &mut Vec<Vec<u64>>| -> Result<usize, NftaError> {
        if let Some(&id) = id_of.get(&bits) {
            return Ok(id);
        }
        if sets.len() == MAX_DET_STATES {
            return Err(NftaError::DeterminizationCap {
                what: "states",
                limit: MAX_DET_STATES,
            });
        }
        id_of.insert(bits.clone(), sets.len());
        sets.push(bits);
        Ok(sets.len() - 1)
    };
    let contains = |bits: &[u64], q: usize| bits[q / 64] >> (q % 64) & 1 == 1;

    for (&(label, arity), group) in &ix.groups {
        if arity == 0 {
            let mut bits = vec![0u64; words];
            for (parent, _) in group {
                bits[parent / 64] |= 1 << (parent % 64);
            }
            let id = intern(bits, &mut sets)?;
            transitions.insert((label, Vec::new()), id);
        }
    }

    // Semi-naive rounds: each child tuple is examined once, in the round
    // where its newest component was discovered.
    let mut frontier = 0usize;
    while frontier < sets.len() {
        let known = sets.len();
        for (&(label, arity), group) in &ix.groups {
            if arity == 0 {
                continue;
            }
            // `first` is the first position holding a frontier state
            for first in 0..arity {
                let ranges: Vec<(usize, usize)> = (0..arity)
                    .map(|j| match j.cmp(&first) {
                        std::cmp::Ordering::Less => (0, frontier),
                        std::cmp::Ordering::Equal => (frontier, known),
                        std::cmp::Ordering::Greater => (0, known),
                    })
                    .collect();
                if ranges.iter().any(|&(lo, hi)| lo >= hi) {
                    continue;
                }
                let mut tuple: Vec<usize> = ranges.iter().map(|r| r.0).collect();
                loop {
                    examined += 1;
                    if examined > MAX_DET_TUPLES {
                        return Err(NftaError::DeterminizationCap {
                            what: "child tuples",
                            limit: MAX_DET_TUPLES,
                        });
                    }
                    let mut bits = vec![0u64; words];
                    let mut any = false;
                    for (parent, kids) in group {
                        if kids
                            .iter()
                            .zip(&tuple)
                            .all(|(&q, &d)| contains(&sets[d], q))
                        {
                            bits[parent / 64] |= 1 << (parent % 64);
                            any = true;
                        }
                    }
                    if any {
                        let id = intern(bits, &mut sets)?;
                        transitions.insert((label, tuple.clone()), id);
                    }
                    if !advance(&mut tuple, &ranges) {
                        break;
                    }
                }
            }
        }
        frontier = known;
    }

    let states: Vec<Vec<usize>> = sets
        .iter()
        .map(|bits| {
            (0..ix.states.len())
                .filter(|&q| contains(bits, q))
                .collect()
        })
        .collect();
    let accepting = sets.iter().map(|bits| contains(bits, ix.initial)).collect();
    Ok(DetBottomUpTa {
        labels: ix.labels,
        nfta_states: ix.states,
        states,
        transitions,
        accepting,
    })
}

/// Steps `tuple` to the next point of the product of `ranges`, last position
/// fastest. Returns false after the last point.
fn advance(tuple: &mut [usize], ranges: &[(usize, usize)]) -> bool {
    for j in (0..tuple.len()).rev() {
        tuple[j] += 1;
        if tuple[j] < ranges[j].1 {
            return true;
        }
        tuple[j] = ranges[j].0;
    }
    false
}

/// `|L_s(A)|` for every `s` in `0..=n` (index 0 is always zero).
pub fn count_by_size(a: &Nfta, n: usize) -> Result<Vec<BigUint>, NftaError> {
    Ok(count_det_by_size(&determinize(a)?, n))
}

/// Per-size counts for a deterministic automaton.
///
/// `count[q][s]` is the number of trees of size `s` evaluating to `q`. For a
/// transition `(label, q_1..q_m) -> q`, the trees it contributes at size `s`
/// are the ways to split `s - 1` among the children; these are kept as
/// running prefix convolutions `prefix[j][u]` (first `j` children, `u` nodes)
/// extended by one size per step.
pub fn count_det_by_size(det: &DetBottomUpTa, n: usize) -> Vec<BigUint> {
    let mut count: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); n + 1]; det.states.len()];
    let rules: Vec<(&[usize], usize)> = det
        .transitions
        .iter()
        .map(|((_, kids), &q)| (kids.as_slice(), q))
        .collect();
    let mut prefix: Vec<Vec<Vec<BigUint>>> = rules
        .iter()
        .map(|(kids, _)| {
            let mut p = vec![vec![BigUint::zero(); n + 1]; kids.len() + 1];
            p[0][0] = BigUint::one();
            p
        })
        .collect();

    for s in 1..=n {
        let u = s - 1;
        let mut fresh: Vec<(usize, BigUint)> = Vec::new();
        for (r, (kids, q)) in rules.iter().enumerate() {
            let p = &mut prefix[r];
            for j in 1..=kids.len() {
                let child = &count[kids[j - 1]];
                let mut acc = BigUint::zero();
                for v in 1..=u {
                    if !p[j - 1][u - v].is_zero() && !child[v].is_zero() {
                        acc += &p[j - 1][u - v] * &child[v];
                    }
                }
                p[j][u] = acc;
            }
            let ways = &p[kids.len()][u];
            if !ways.is_zero() {
                fresh.push((*q, ways.clone()));
            }
        }
        for (q, ways) in fresh {
            count[q][s] += ways;
        }
    }

    (0..=n)
        .map(|s| {
            det.accepting
                .iter()
                .enumerate()
                .filter(|(_, &acc)| acc)
                .fold(BigUint::zero(), |sum, (q, _)| sum + &count[q][s])
        })
        .collect()
}

/// `|L_n(A)|`, or `|L_0(A) ∪ ... ∪ L_n(A)|` when `cumulative`.
pub fn count_exact(a: &Nfta, n: usize, cumulative: bool) -> Result<BigUint, NftaError> {
    let per_size = count_by_size(a, n)?;
    Ok(if cumulative {
        per_size.iter().sum()
    } else {
        per_size[n].clone()
    })
}

/// The same quantity as [`count_exact`], by explicit enumeration.
pub fn count_by_enumeration(a: &Nfta, n: usize, cumulative: bool) -> Result<BigUint, NftaError> {
    let trees = enumerate_accepted(a, n)?;
    let hits = trees.iter().filter(|t| cumulative || t.size() == n).count();
    Ok(BigUint::from(hits))
}

/// Number of distinct unordered shapes among the accepted trees of size at
/// most `max_size`.
pub fn count_unordered_classes(a: &Nfta, max_size: usize) -> Result<usize, NftaError> {
    let codes: HashSet<CanonicalCode> = enumerate_accepted(a, max_size)?
        .iter()
        .map(|t| t.canonical_code(Mode::Unordered))
        .collect();
    Ok(codes.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_tree;

    const BINARY: &str = "\
states: q
alphabet: \"a\"
init: q
delta:
(q, \"a\") -> ()
(q, \"a\") -> (q)
(q, \"a\") -> (q, q)
";

    fn tree(s: &str) -> LabeledTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn parse_and_round_trip() {
        let a = parse_nfta(BINARY).unwrap();
        assert_eq!(a.transitions.len(), 3);
        assert_eq!(a.max_arity(), 2);
        assert_eq!(parse_nfta(&serialize_nfta(&a)).unwrap(), a);
    }

    #[test]
    fn quoted_state_names_round_trip() {
        let mut a = Nfta::new("q0|>||1|1");
        a.add_transition("q0|>||1|1", "", &["l|>|a b|1|1".to_string()]);
        a.add_transition("l|>|a b|1|1", "a b", &[]);
        let text = serialize_nfta(&a);
        assert_eq!(parse_nfta(&text).unwrap(), a);
        assert!(a.accepts(&tree("\"\"(\"a b\")")));
    }

    #[test]
    fn empty_automaton_accepts_nothing() {
        let a = parse_nfta("states: q\nalphabet:\ninit: q\ndelta:\n").unwrap();
        assert!(enumerate_accepted(&a, 5).unwrap().is_empty());
        assert_eq!(count_exact(&a, 5, true).unwrap(), BigUint::zero());
    }

    #[test]
    fn undeclared_names_are_errors() {
        let text = "states: q\nalphabet: \"a\"\ninit: q\ndelta:\n(q, \"a\") -> (r)\n";
        assert_eq!(
            parse_nfta(text),
            Err(NftaError::Undeclared {
                what: "state",
                name: "r".into()
            })
        );
        let text = "states: q\nalphabet: \"a\"\ninit: q\ndelta:\n(q, \"b\") -> ()\n";
        assert!(matches!(
            parse_nfta(text),
            Err(NftaError::Undeclared { what: "label", .. })
        ));
        assert!(matches!(
            parse_nfta("states: q\nalphabet:\ninit: p\n"),
            Err(NftaError::Undeclared { what: "state", .. })
        ));
        assert!(matches!(
            parse_nfta("states: q\nalphabet:\ninit: q\ndelta:\n(q, \"a\" -> ()\n"),
            Err(NftaError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn membership() {
        let a = parse_nfta(BINARY).unwrap();
        assert!(a.accepts(&tree("a")));
        assert!(a.accepts(&tree("a(a(a),a)")));
        assert!(!a.accepts(&tree("a(a,a,a)")));
        assert!(!a.accepts(&tree("a(b)")));
    }

    #[test]
    fn binary_sequence() {
        let a = parse_nfta(BINARY).unwrap();
        let counts: Vec<u64> = count_by_size(&a, 6)
            .unwrap()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(counts, [0, 1, 1, 2, 4, 9, 21]);
        assert_eq!(count_exact(&a, 0, true).unwrap(), BigUint::zero());
        let listed = enumerate_accepted(&a, 6).unwrap();
        assert_eq!(listed.len(), 1 + 1 + 2 + 4 + 9 + 21);
        assert!(listed.windows(2).all(|w| w[0].size() <= w[1].size()));
    }

    #[test]
    fn single_node_language() {
        let a =
            parse_nfta("states: q\nalphabet: \"a\"\ninit: q\ndelta:\n(q, \"a\") -> ()\n").unwrap();
        assert_eq!(count_exact(&a, 1, false).unwrap(), BigUint::one());
        assert_eq!(count_exact(&a, 2, false).unwrap(), BigUint::zero());
    }

    #[test]
    fn deterministic_input_keeps_its_shape() {
        let a = parse_nfta(BINARY).unwrap();
        let det = determinize(&a).unwrap();
        assert_eq!(det.states, vec![vec![0]]);
        assert_eq!(det.transitions.len(), 3);
    }

    #[test]
    fn interchangeable_states_merge() {
        let text = "\
states: p q r
alphabet: \"a\" \"b\"
init: r
delta:
(p, \"a\") -> ()
(q, \"a\") -> ()
(r, \"b\") -> (p, q)
(r, \"b\") -> (q, p)
";
        let a = parse_nfta(text).unwrap();
        let det = determinize(&a).unwrap();
        assert_eq!(det.states, vec![vec![0, 1], vec![2]]);
        assert!(det.accepts(&tree("b(a,a)")));
        assert!(!det.accepts(&tree("b(a)")));
        assert_eq!(count_exact(&a, 3, false).unwrap(), BigUint::one());
    }

    #[test]
    fn large_counts_do_not_overflow() {
        let a = parse_nfta(BINARY).unwrap();
        // Motzkin numbers grow like 3^n; 200 nodes is far past u64.
        let c = count_exact(&a, 200, false).unwrap();
        assert!(c.bits() > 64);
    }
}
