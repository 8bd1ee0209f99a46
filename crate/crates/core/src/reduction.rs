//! Compile a machine and an input into a top-down tree automaton whose
//! accepted trees are the (ordered) outputs of the accepting computations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::dag::{build_dag, ComputationDag, NodeId};
use crate::error::RunError;
use crate::machine::{AtoMachine, ResourceBounds, StateKind};
use crate::nfta::Nfta;

/// A set of tuples of automaton state names.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSet(BTreeSet<Vec<String>>);

impl TupleSet {
    /// The empty set.
    pub fn empty() -> Self {
        TupleSet(BTreeSet::new())
    }

    /// `{()}`, the identity of [`tuple_product`].
    pub fn unit() -> Self {
        TupleSet(BTreeSet::from([Vec::new()]))
    }

    pub fn singleton(state: impl Into<String>) -> Self {
        TupleSet(BTreeSet::from([vec![state.into()]]))
    }

    pub fn insert(&mut self, tuple: Vec<String>) -> bool {
        self.0.insert(tuple)
    }

    pub fn contains(&self, tuple: &[String]) -> bool {
        self.0.contains(tuple)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<String>> {
        self.0.iter()
    }

    pub fn union(&self, other: &TupleSet) -> TupleSet {
        TupleSet(self.0.union(&other.0).cloned().collect())
    }
}

impl<T: Into<String>> FromIterator<Vec<T>> for TupleSet {
    fn from_iter<I: IntoIterator<Item = Vec<T>>>(iter: I) -> Self {
        TupleSet(
            iter.into_iter()
                .map(|t| t.into_iter().map(Into::into).collect())
                .collect(),
        )
    }
}

impl IntoIterator for TupleSet {
    type Item = Vec<String>;
    type IntoIter = std::collections::btree_set::IntoIter<Vec<String>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({})", t.join(","))?;
        }
        f.write_str("}")
    }
}

/// Cartesian product of the parts with each combination flattened into one
/// tuple. Any empty part gives the empty set; no parts gives `{()}`.
pub fn tuple_product(parts: &[TupleSet]) -> TupleSet {
    let mut acc = TupleSet::unit();
    for part in parts {
        if part.is_empty() {
            return TupleSet::empty();
        }
        let mut next = BTreeSet::new();
        for prefix in &acc.0 {
            for t in &part.0 {
                let mut joined = Vec::with_capacity(prefix.len() + t.len());
                joined.extend_from_slice(prefix);
                joined.extend_from_slice(t);
                next.insert(joined);
            }
        }
        acc = TupleSet(next);
    }
    acc
}

/// Processed configurations, keyed by their encoding.
pub type ReductionMemo = BTreeMap<String, TupleSet>;

#[derive(Debug, Clone)]
pub struct Reduction {
    pub nfta: Nfta,
    pub memo: ReductionMemo,
    pub dag: ComputationDag,
}

/// Largest tree size the reduction can produce under `bounds`.
pub fn size_bound(bounds: &ResourceBounds) -> usize {
    bounds.max_nodes
}

struct Process<'a> {
    m: &'a AtoMachine,
    dag: &'a ComputationDag,
    nfta: Nfta,
    memo: Vec<Option<TupleSet>>,
    use_memo: bool,
}

impl Process<'_> {
    fn run(&mut self, id: NodeId) -> TupleSet {
        if self.use_memo {
            if let Some(p) = &self.memo[id] {
                return p.clone();
            }
        }
        let c = self.dag.config(id);
        let class = self.m.classify(c);
        let p = if self.dag.is_leaf(id) {
            let accepting = class.kind == StateKind::Accepting;
            if class.labeling {
                let s = self.m.encode(c);
                self.nfta.declare_state(&s);
                self.nfta.declare_label(&c.label);
                if accepting {
                    self.nfta.add_transition(&s, &c.label, &[]);
                }
                TupleSet::singleton(s)
            } else if accepting {
                TupleSet::unit()
            } else {
                TupleSet::empty()
            }
        } else {
            let parts: Vec<TupleSet> = self
                .dag
                .children(id)
                .to_vec()
                .into_iter()
                .map(|child| self.run(child))
                .collect();
            let p = if class.kind == StateKind::Universal {
                tuple_product(&parts)
            } else {
                parts.iter().fold(TupleSet::empty(), |acc, q| acc.union(q))
            };
            if class.labeling {
                let s = self.m.encode(c);
                self.nfta.declare_state(&s);
                self.nfta.declare_label(&c.label);
                for t in p.iter() {
                    self.nfta.add_transition(&s, &c.label, t);
                }
                TupleSet::singleton(s)
            } else {
                p
            }
        };
        self.memo[id] = Some(p.clone());
        p
    }
}

/// Build the computation DAG of `m` on `w` and translate it into an NFTA.
pub fn build_nfta(m: &AtoMachine, w: &str, bounds: ResourceBounds) -> Result<Reduction, RunError> {
    reduce(m, w, bounds, true)
}

/// As [`build_nfta`]; with `use_memo` false every visit recomputes its
/// subresult, which is exponential on shared subgraphs.
pub fn reduce(
    m: &AtoMachine,
    w: &str,
    bounds: ResourceBounds,
    use_memo: bool,
) -> Result<Reduction, RunError> {
    let dag = build_dag(m, w, bounds)?;
    let root_state = m.encode(dag.root());
    let mut process = Process {
        m,
        dag: &dag,
        nfta: Nfta::new(root_state.clone()),
        memo: vec![None; dag.len()],
        use_memo,
    };
    let top = process.run(ComputationDag::ROOT);
    assert_eq!(
        top,
        TupleSet::singleton(root_state),
        "the initial configuration is labeling, so it must map to its own state"
    );
    let memo = process
        .memo
        .iter()
        .enumerate()
        .filter_map(|(id, p)| p.as_ref().map(|p| (m.encode(dag.config(id)), p.clone())))
        .collect();
    let nfta = process.nfta;
    Ok(Reduction { nfta, memo, dag })
}
