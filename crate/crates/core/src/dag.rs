//! The computation DAG: every configuration reachable from the initial one,
//! deduplicated, with edges to its successors.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use crate::error::RunError;
use crate::machine::{AtoMachine, Configuration, ResourceBounds, StateKind};

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct ComputationDag {
    nodes: Vec<Configuration>,
    index: HashMap<Configuration, NodeId>,
    edges: Vec<Vec<NodeId>>,
    dead_end: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DagStats {
    pub nodes: usize,
    pub edges: usize,
    /// Edges on a longest root-to-leaf path.
    pub depth: usize,
    pub accepting: usize,
    pub rejecting: usize,
    pub existential: usize,
    pub universal: usize,
    pub labeling: usize,
    pub dead_ends: usize,
}

impl ComputationDag {
    pub const ROOT: NodeId = 0;

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &Configuration {
        &self.nodes[Self::ROOT]
    }

    /// Configurations in breadth-first discovery order.
    pub fn nodes(&self) -> &[Configuration] {
        &self.nodes
    }

    pub fn config(&self, id: NodeId) -> &Configuration {
        &self.nodes[id]
    }

    pub fn id_of(&self, c: &Configuration) -> Option<NodeId> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.index.contains_key(c)
    }

    /// Successors in canonical configuration order.
    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.edges[id]
    }

    /// Non-halting configuration without successors.
    pub fn is_dead_end(&self, id: NodeId) -> bool {
        self.dead_end[id]
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.edges[id].is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Nodes ordered so that every edge points backwards (leaves first).
    fn reverse_topological(&self) -> Result<Vec<NodeId>, NodeId> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.nodes.len()];
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<(NodeId, usize)> = vec![(Self::ROOT, 0)];
        mark[Self::ROOT] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let id = top.0;
            if let Some(&child) = self.edges[id].get(top.1) {
                top.1 += 1;
                match mark[child] {
                    Mark::Open => return Err(child),
                    Mark::New => {
                        mark[child] = Mark::Open;
                        stack.push((child, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[id] = Mark::Done;
                order.push(id);
                stack.pop();
            }
        }
        Ok(order)
    }

    /// Edges on a longest path from the root.
    pub fn depth(&self) -> usize {
        let order = self.reverse_topological().expect("a built DAG is acyclic");
        let mut height = vec![0usize; self.nodes.len()];
        for id in order {
            height[id] = self.edges[id]
                .iter()
                .map(|&c| height[c] + 1)
                .max()
                .unwrap_or(0);
        }
        height[Self::ROOT]
    }

    pub fn stats(&self, m: &AtoMachine) -> DagStats {
        let mut s = DagStats {
            nodes: self.len(),
            edges: self.edge_count(),
            depth: self.depth(),
            ..DagStats::default()
        };
        for (id, c) in self.nodes.iter().enumerate() {
            let class = m.classify(c);
            match class.kind {
                StateKind::Accepting => s.accepting += 1,
                StateKind::Rejecting => s.rejecting += 1,
                StateKind::Existential => s.existential += 1,
                StateKind::Universal => s.universal += 1,
            }
            s.labeling += class.labeling as usize;
            s.dead_ends += self.dead_end[id] as usize;
        }
        s
    }

    /// Line-based dump: one `node <encoding> <class>` line per configuration,
    /// then one `<from> -> <to>` line per edge.
    pub fn to_edge_list(&self, m: &AtoMachine) -> String {
        let mut out = String::new();
        for (id, c) in self.nodes.iter().enumerate() {
            let class = m.classify(c);
            let _ = write!(out, "node {} {}", m.encode(c), class.kind);
            if class.labeling {
                out.push_str(" labeling");
            }
            if self.dead_end[id] {
                out.push_str(" dead-end");
            }
            out.push('\n');
        }
        for (id, succ) in self.edges.iter().enumerate() {
            for &s in succ {
                let _ = writeln!(
                    out,
                    "{} -> {}",
                    m.encode(&self.nodes[id]),
                    m.encode(&self.nodes[s])
                );
            }
        }
        out
    }
}

/// Breadth-first closure of the initial configuration under the successor
/// relation.
///
/// Fails if a tape outgrows `tape_cap`, if the graph has a cycle, or if some
/// path is longer than `max_nodes` (every path is part of a computation, so
/// such a computation would be too large; this also stops runaway heads).
pub fn build_dag(
    m: &AtoMachine,
    w: &str,
    bounds: ResourceBounds,
) -> Result<ComputationDag, RunError> {
    let input = m.input(w)?;
    let root = m.initial();
    let mut dag = ComputationDag {
        nodes: vec![root.clone()],
        index: HashMap::from([(root, ComputationDag::ROOT)]),
        edges: Vec::new(),
        dead_end: Vec::new(),
    };
    let mut layer = vec![0usize];
    let mut queue = VecDeque::from([ComputationDag::ROOT]);

    while let Some(id) = queue.pop_front() {
        let c = dag.nodes[id].clone();
        if c.work.chars().count() > bounds.tape_cap || c.label.chars().count() > bounds.tape_cap {
            return Err(RunError::TapeCap {
                limit: bounds.tape_cap,
                config: m.encode(&c),
            });
        }
        if layer[id] + 1 > bounds.max_nodes {
            return Err(RunError::MaxNodes {
                limit: bounds.max_nodes,
                config: m.encode(&c),
            });
        }
        let succ = if m.is_halting(&c) {
            Vec::new()
        } else {
            m.successors(&input, &c)?
        };
        let mut ids = Vec::with_capacity(succ.len());
        for s in succ {
            let next = match dag.index.get(&s) {
                Some(&known) => known,
                None => {
                    let fresh = dag.nodes.len();
                    dag.index.insert(s.clone(), fresh);
                    dag.nodes.push(s);
                    layer.push(layer[id] + 1);
                    queue.push_back(fresh);
                    fresh
                }
            };
            ids.push(next);
        }
        debug_assert_eq!(dag.edges.len(), id);
        dag.dead_end.push(ids.is_empty() && !m.is_halting(&c));
        dag.edges.push(ids);
    }

    if let Err(on_cycle) = dag.reverse_topological() {
        return Err(RunError::Cycle {
            config: m.encode(&dag.nodes[on_cycle]),
        });
    }
    if dag.depth() + 1 > bounds.max_nodes {
        return Err(RunError::MaxNodes {
            limit: bounds.max_nodes,
            config: m.encode(dag.root()),
        });
    }
    Ok(dag)
}
