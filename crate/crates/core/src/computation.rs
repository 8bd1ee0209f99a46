//! Computations of a machine on an input, their outputs, the well-behaved
//! guard, and the exact span.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::RunError;
use crate::machine::{AtoMachine, Configuration, InputTape, ResourceBounds, StateKind};
use crate::trees::{CanonicalCode, LabeledTree, Mode};

/// Hard ceiling on how many computations [`enumerate_computations`] will
/// materialize.
pub const MAX_COMPUTATIONS: usize = 1 << 20;

/// A node of a computation tree. Subtrees are shared between computations.
#[derive(Debug, PartialEq, Eq)]
pub struct ComputationNode {
    pub config: Configuration,
    pub children: Vec<Arc<ComputationNode>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputationTree {
    pub root: Arc<ComputationNode>,
}

impl ComputationTree {
    pub fn size(&self) -> usize {
        self.nodes().count()
    }

    /// Preorder traversal.
    pub fn nodes(&self) -> impl Iterator<Item = &ComputationNode> {
        let mut stack = vec![self.root.as_ref()];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev().map(Arc::as_ref));
            Some(node)
        })
    }

    pub fn is_accepting(&self, m: &AtoMachine) -> bool {
        is_accepting_computation(m, self)
    }

    pub fn render(&self, m: &AtoMachine) -> LabeledTree {
        fn go(m: &AtoMachine, n: &ComputationNode) -> LabeledTree {
            LabeledTree::node(
                m.encode(&n.config),
                n.children.iter().map(|c| go(m, c)).collect(),
            )
        }
        go(m, &self.root)
    }
}

/// True iff every leaf carries an accepting configuration.
pub fn is_accepting_computation(m: &AtoMachine, t: &ComputationTree) -> bool {
    t.nodes()
        .filter(|n| n.children.is_empty())
        .all(|n| m.classify(&n.config).kind == StateKind::Accepting)
}

struct Alternative {
    node: Arc<ComputationNode>,
    size: usize,
}

struct Enumerator<'a> {
    machine: &'a AtoMachine,
    input: &'a InputTape,
    bounds: ResourceBounds,
    memo: HashMap<Configuration, Arc<Vec<Alternative>>>,
}

impl Enumerator<'_> {
    fn check_tapes(&self, c: &Configuration) -> Result<(), RunError> {
        let cap = self.bounds.tape_cap;
        if c.work.chars().count() > cap || c.label.chars().count() > cap {
            return Err(RunError::TapeCap {
                limit: cap,
                config: self.machine.encode(c),
            });
        }
        Ok(())
    }

    /// All computation subtrees rooted at `c`.
    fn expand(
        &mut self,
        c: &Configuration,
        depth: usize,
    ) -> Result<Arc<Vec<Alternative>>, RunError> {
        if let Some(hit) = self.memo.get(c) {
            return Ok(Arc::clone(hit));
        }
        // A root-to-node path longer than the cap already exceeds it; this is
        // also what stops machines that loop.
        if depth > self.bounds.max_nodes {
            return Err(RunError::MaxNodes {
                limit: self.bounds.max_nodes,
                config: self.machine.encode(c),
            });
        }
        self.check_tapes(c)?;

        let alternatives = if self.machine.is_halting(c) {
            vec![Alternative {
                node: Arc::new(ComputationNode {
                    config: c.clone(),
                    children: Vec::new(),
                }),
                size: 1,
            }]
        } else {
            let succ = self.machine.successors(self.input, c)?;
            let mut parts = Vec::with_capacity(succ.len());
            for s in &succ {
                parts.push(self.expand(s, depth + 1)?);
            }
            match self.machine.classify(c).kind {
                StateKind::Existential => {
                    let mut out = Vec::new();
                    for alt in parts.iter().flat_map(|p| p.iter()) {
                        out.push(self.wrap(c, vec![Arc::clone(&alt.node)], 1 + alt.size)?);
                        if out.len() > MAX_COMPUTATIONS {
                            return Err(RunError::TooManyComputations {
                                limit: MAX_COMPUTATIONS,
                            });
                        }
                    }
                    out
                }
                StateKind::Universal => self.product(c, &parts)?,
                StateKind::Accepting | StateKind::Rejecting => unreachable!(),
            }
        };
        let alternatives = Arc::new(alternatives);
        self.memo.insert(c.clone(), Arc::clone(&alternatives));
        Ok(alternatives)
    }

    fn wrap(
        &self,
        c: &Configuration,
        children: Vec<Arc<ComputationNode>>,
        size: usize,
    ) -> Result<Alternative, RunError> {
        if size > self.bounds.max_nodes {
            return Err(RunError::MaxNodes {
                limit: self.bounds.max_nodes,
                config: self.machine.encode(c),
            });
        }
        Ok(Alternative {
            node: Arc::new(ComputationNode {
                config: c.clone(),
                children,
            }),
            size,
        })
    }

    /// One alternative per choice of a subtree for every successor, first
    /// successor varying slowest. Empty if the configuration is a dead end or
    /// any successor has no computation.
    fn product(
        &self,
        c: &Configuration,
        parts: &[Arc<Vec<Alternative>>],
    ) -> Result<Vec<Alternative>, RunError> {
        if parts.is_empty() || parts.iter().any(|p| p.is_empty()) {
            return Ok(Vec::new());
        }
        let total = parts
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
            .filter(|&n| n <= MAX_COMPUTATIONS)
            .ok_or(RunError::TooManyComputations {
                limit: MAX_COMPUTATIONS,
            })?;
        let mut out = Vec::with_capacity(total);
        let mut index = vec![0usize; parts.len()];
        loop {
            let children: Vec<_> = index
                .iter()
                .zip(parts)
                .map(|(&i, p)| Arc::clone(&p[i].node))
                .collect();
            let size = 1 + index
                .iter()
                .zip(parts)
                .map(|(&i, p)| p[i].size)
                .sum::<usize>();
            out.push(self.wrap(c, children, size)?);

            // odometer, last position fastest
            let mut pos = parts.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                index[pos] += 1;
                if index[pos] < parts[pos].len() {
                    break;
                }
                index[pos] = 0;
            }
        }
    }
}

/// Every computation of `m` on `w`, each once, in depth-first order over
/// existential choices (successors in canonical order).
///
/// Configurations without successors that are not halting belong to no
/// computation: existential parents skip them, universal parents lose the
/// whole branch.
pub fn enumerate_computations(
    m: &AtoMachine,
    w: &str,
    bounds: ResourceBounds,
) -> Result<Vec<ComputationTree>, RunError> {
    let input = m.input(w)?;
    let mut en = Enumerator {
        machine: m,
        input: &input,
        bounds,
        memo: HashMap::new(),
    };
    let root = m.initial();
    let alts = en.expand(&root, 1)?;
    Ok(alts
        .iter()
        .map(|a| ComputationTree {
            root: Arc::clone(&a.node),
        })
        .collect())
}

/// The output tree of a computation: labeling configurations, linked when the
/// path between them has only non-labeling configurations strictly inside.
///
/// With [`Mode::Ordered`] siblings keep their depth-first order in the
/// computation; with [`Mode::Unordered`] the canonical unordered
/// representative is returned.
pub fn extract_output(m: &AtoMachine, t: &ComputationTree, mode: Mode) -> LabeledTree {
    fn collect(m: &AtoMachine, n: &ComputationNode, out: &mut Vec<LabeledTree>) {
        for c in &n.children {
            if m.is_labeling(&c.config) {
                out.push(build(m, c));
            } else {
                collect(m, c, out);
            }
        }
    }
    fn build(m: &AtoMachine, n: &ComputationNode) -> LabeledTree {
        let mut children = Vec::new();
        collect(m, n, &mut children);
        LabeledTree::node(n.config.label.clone(), children)
    }

    debug_assert!(m.is_labeling(&t.root.config));
    let ordered = build(m, &t.root);
    match mode {
        Mode::Ordered => ordered,
        Mode::Unordered => ordered.canonicalize_unordered(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WellBehavedViolation {
    TooManyNodes {
        count: usize,
        limit: usize,
    },
    TapeTooLong {
        config: String,
        length: usize,
        limit: usize,
    },
    /// A maximal labeled-free path with more than `k` universal configurations.
    UniversalPath {
        path: Vec<String>,
        universal: usize,
        limit: usize,
    },
}

impl std::fmt::Display for WellBehavedViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WellBehavedViolation::TooManyNodes { count, limit } => {
                write!(f, "computation has {count} nodes (max_nodes={limit})")
            }
            WellBehavedViolation::TapeTooLong {
                config,
                length,
                limit,
            } => {
                write!(f, "{config}: tape of length {length} (tape_cap={limit})")
            }
            WellBehavedViolation::UniversalPath {
                path,
                universal,
                limit,
            } => write!(
                f,
                "labeled-free path [{}] has {universal} universal configurations (k={limit})",
                path.join(", ")
            ),
        }
    }
}

/// Checks one computation against the declared resource bounds.
///
/// Labeled-free paths are checked in their maximal form: downward runs of
/// non-labeling configurations that cannot be extended at either end.
pub fn check_well_behaved(
    m: &AtoMachine,
    t: &ComputationTree,
    bounds: ResourceBounds,
) -> Vec<WellBehavedViolation> {
    let mut out = Vec::new();
    let count = t.size();
    if count > bounds.max_nodes {
        out.push(WellBehavedViolation::TooManyNodes {
            count,
            limit: bounds.max_nodes,
        });
    }
    for n in t.nodes() {
        let length = n
            .config
            .work
            .chars()
            .count()
            .max(n.config.label.chars().count());
        if length > bounds.tape_cap {
            out.push(WellBehavedViolation::TapeTooLong {
                config: m.encode(&n.config),
                length,
                limit: bounds.tape_cap,
            });
        }
    }

    // Paths start at non-labeling children of labeling nodes (the root is
    // always labeling).
    let mut path: Vec<&ComputationNode> = Vec::new();
    for n in t.nodes().filter(|n| m.is_labeling(&n.config)) {
        for c in n.children.iter().filter(|c| !m.is_labeling(&c.config)) {
            walk_paths(m, c, &mut path, bounds.k, &mut out);
        }
    }
    out
}

fn walk_paths<'t>(
    m: &AtoMachine,
    n: &'t ComputationNode,
    path: &mut Vec<&'t ComputationNode>,
    k: usize,
    out: &mut Vec<WellBehavedViolation>,
) {
    path.push(n);
    let mut extended = false;
    for c in n.children.iter().filter(|c| !m.is_labeling(&c.config)) {
        extended = true;
        walk_paths(m, c, path, k, out);
    }
    if !extended {
        let universal = path
            .iter()
            .filter(|p| m.classify(&p.config).kind == StateKind::Universal)
            .count();
        if universal > k {
            out.push(WellBehavedViolation::UniversalPath {
                path: path.iter().map(|p| m.encode(&p.config)).collect(),
                universal,
                limit: k,
            });
        }
    }
    path.pop();
}

/// Distinct valid outputs keyed by their canonical code under `mode`.
pub fn valid_outputs(
    m: &AtoMachine,
    w: &str,
    bounds: ResourceBounds,
    mode: Mode,
) -> Result<BTreeMap<CanonicalCode, LabeledTree>, RunError> {
    let mut out = BTreeMap::new();
    for t in enumerate_computations(m, w, bounds)? {
        if t.is_accepting(m) {
            let o = extract_output(m, &t, mode);
            out.entry(o.canonical_code(mode)).or_insert(o);
        }
    }
    Ok(out)
}

/// Number of distinct valid outputs of `m` on `w`.
pub fn span_exact(
    m: &AtoMachine,
    w: &str,
    bounds: ResourceBounds,
    mode: Mode,
) -> Result<usize, RunError> {
    Ok(valid_outputs(m, w, bounds, mode)?.len())
}
