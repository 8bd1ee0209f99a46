//! Alternating Turing machines with output: description, validation,
//! configurations and the one-step successor relation.
//!
//! # Text format
//!
//! ```text
//! # comments run to end of line
//! states: q0 l acc rej
//! alphabet: a b
//! init: q0
//! accept: acc
//! reject: rej
//! existential: q0 l
//! universal:
//! labeling: q0 l
//! bounds: max_nodes=100 tape_cap=8 k=2
//! delta:
//! (q0, >, >) -> (l, 0, 0, >, "a")
//! (l, >, >) -> (acc, 0, 0, >, "")
//! ```
//!
//! Symbols are single characters. The blank is spelled `_` and the left
//! marker `>`; both are always part of the alphabet. Rules are
//! `(state, input-symbol, work-symbol) -> (state, dx, dy, write, "emit")`
//! with moves in `-1 | 0 | +1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub const BLANK: char = '_';
pub const MARKER: char = '>';

/// Characters that cannot be alphabet symbols because the file formats use them.
const RESERVED: &[char] = &['(', ')', ',', '"', '#', ':', '=', '|', '\\'];

/// Index of a state in [`AtoMachine::states`]. States are sorted by name, so
/// comparing ids compares names bytewise.
pub type StateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResourceBounds {
    /// Largest admissible computation tree.
    pub max_nodes: usize,
    /// Largest admissible working or labeling tape, marker included.
    pub tape_cap: usize,
    /// Most universal configurations allowed on one labeled-free path.
    pub k: usize,
}

impl Default for ResourceBounds {
    fn default() -> Self {
        ResourceBounds {
            max_nodes: 1000,
            tape_cap: 64,
            k: 8,
        }
    }
}

impl fmt::Display for ResourceBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_nodes={} tape_cap={} k={}",
            self.max_nodes, self.tape_cap, self.k
        )
    }
}

impl ResourceBounds {
    /// Applies `key=value` assignments separated by commas or whitespace on
    /// top of `self`. Unmentioned fields keep their value.
    pub fn with_overrides(mut self, text: &str) -> Result<Self, String> {
        for item in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, found `{item}`"))?;
            let value: usize = value
                .parse()
                .map_err(|_| format!("`{value}` is not a nonnegative integer"))?;
            match key {
                "max_nodes" => self.max_nodes = value,
                "tape_cap" => self.tape_cap = value,
                "k" => self.k = value,
                other => return Err(format!("unknown bound `{other}`")),
            }
        }
        if self.max_nodes == 0 || self.tape_cap == 0 {
            return Err("max_nodes and tape_cap must be positive".into());
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionRule {
    pub next: String,
    pub input_move: i8,
    pub work_move: i8,
    pub write: char,
    pub emit: String,
}

/// Left-hand side of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleKey {
    pub state: String,
    pub input: char,
    pub work: char,
}

/// A machine as written, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MachineSpec {
    pub states: BTreeSet<String>,
    pub alphabet: BTreeSet<char>,
    pub init: String,
    pub accept: String,
    pub reject: String,
    pub existential: BTreeSet<String>,
    pub universal: BTreeSet<String>,
    pub labeling: BTreeSet<String>,
    pub bounds: Option<ResourceBounds>,
    pub delta: BTreeMap<RuleKey, BTreeSet<TransitionRule>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Stable short identifier, e.g. `marker-underflow`.
    pub kind: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: &'static str, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid machine:\n{0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("illegal input symbol `{0}`")]
    IllegalInput(char),
    #[error("configuration {0} is halting and has no successors")]
    Halting(String),
    #[error("a head would move left of the marker from {0}")]
    HeadUnderflow(String),
}

pub fn validate_machine(spec: &MachineSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let known = |s: &str| spec.states.contains(s);

    for (role, name) in [
        ("init", &spec.init),
        ("accept", &spec.accept),
        ("reject", &spec.reject),
    ] {
        if !known(name) {
            report.push(
                "unknown-state",
                format!("{role} state `{name}` is not declared"),
            );
        }
    }
    for (set, names) in [
        ("existential", &spec.existential),
        ("universal", &spec.universal),
        ("labeling", &spec.labeling),
    ] {
        for name in names.iter().filter(|n| !known(n)) {
            report.push(
                "unknown-state",
                format!("{set} state `{name}` is not declared"),
            );
        }
    }
    if spec.accept == spec.reject {
        report.push(
            "accept-is-reject",
            format!(
                "`{}` is both the accepting and the rejecting state",
                spec.accept
            ),
        );
    }

    for both in spec.existential.intersection(&spec.universal) {
        report.push(
            "partition-overlap",
            format!("`{both}` is both existential and universal"),
        );
    }
    for s in &spec.states {
        let halting = *s == spec.accept || *s == spec.reject;
        let classified = spec.existential.contains(s) || spec.universal.contains(s);
        if halting && classified {
            report.push(
                "partition-halting",
                format!("halting state `{s}` is listed as existential or universal"),
            );
        } else if !halting && !classified {
            report.push(
                "partition-incomplete",
                format!("`{s}` is neither existential nor universal"),
            );
        }
    }
    if !spec.labeling.contains(&spec.init) {
        report.push(
            "init-not-labeling",
            format!("initial state `{}` is not a labeling state", spec.init),
        );
    }

    for &c in &spec.alphabet {
        if c.is_whitespace() || RESERVED.contains(&c) {
            report.push(
                "reserved-symbol",
                format!("`{c}` cannot be an alphabet symbol"),
            );
        }
    }
    let in_alphabet = |c: char| c == BLANK || c == MARKER || spec.alphabet.contains(&c);

    for (key, rules) in &spec.delta {
        let at = format!("({}, {}, {})", key.state, key.input, key.work);
        if !known(&key.state) {
            report.push(
                "unknown-state",
                format!("{at}: state `{}` is not declared", key.state),
            );
        }
        if key.state == spec.accept || key.state == spec.reject {
            report.push(
                "halting-has-rules",
                format!("{at}: halting states have no transitions"),
            );
        }
        for sym in [key.input, key.work] {
            if !in_alphabet(sym) {
                report.push(
                    "unknown-symbol",
                    format!("{at}: `{sym}` is not in the alphabet"),
                );
            }
        }
        for rule in rules {
            if !known(&rule.next) {
                report.push(
                    "unknown-state",
                    format!("{at}: next state `{}` is not declared", rule.next),
                );
            }
            if !in_alphabet(rule.write) {
                report.push(
                    "unknown-symbol",
                    format!("{at}: written `{}` is not in the alphabet", rule.write),
                );
            }
            if key.input == MARKER && rule.input_move < 0 {
                report.push(
                    "marker-underflow",
                    format!("{at}: input head moves left of `>`"),
                );
            }
            if key.work == MARKER && rule.work_move < 0 {
                report.push(
                    "marker-underflow",
                    format!("{at}: work head moves left of `>`"),
                );
            }
            if key.work == MARKER && rule.write != MARKER {
                report.push(
                    "marker-overwrite",
                    format!("{at}: `>` overwritten with `{}`", rule.write),
                );
            }
            if key.work != MARKER && rule.write == MARKER {
                report.push(
                    "marker-write",
                    format!("{at}: `>` written onto a non-marker cell"),
                );
            }
            for c in rule.emit.chars() {
                if c == BLANK || c == MARKER {
                    report.push(
                        "emit-reserved",
                        format!("{at}: emitted string contains `{c}`"),
                    );
                } else if !in_alphabet(c) {
                    report.push(
                        "unknown-symbol",
                        format!("{at}: emitted `{c}` is not in the alphabet"),
                    );
                }
            }
        }
    }
    report
}

/// Existential/universal/halting class of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    Accepting,
    Rejecting,
    Existential,
    Universal,
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateKind::Accepting => "accepting",
            StateKind::Rejecting => "rejecting",
            StateKind::Existential => "existential",
            StateKind::Universal => "universal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: StateKind,
    pub labeling: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CompiledRule {
    next: StateId,
    input_move: i8,
    work_move: i8,
    write: char,
    emit: String,
}

/// A validated machine.
#[derive(Debug, Clone)]
pub struct AtoMachine {
    spec: MachineSpec,
    states: Vec<String>,
    class: Vec<Classification>,
    init: StateId,
    delta: HashMap<(StateId, char, char), Vec<CompiledRule>>,
}

/// A machine snapshot. The input tape lives in [`InputTape`] since it never
/// changes during a run.
///
/// The derived order compares (state name, work tape, labeling tape, input
/// head, work head) bytewise/numerically; it is the canonical configuration
/// order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    /// Written prefix of the working tape, starting with the marker.
    pub work: String,
    /// Labeling tape contents.
    pub label: String,
    /// 1-based input head position.
    pub input_head: usize,
    /// 1-based work head position, at most `work.len() + 1`.
    pub work_head: usize,
}

/// `>w` followed by blanks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputTape {
    cells: Vec<char>,
}

impl InputTape {
    pub fn new(machine: &AtoMachine, w: &str) -> Result<Self, StepError> {
        let mut cells = vec![MARKER];
        for c in w.chars() {
            if c == BLANK || c == MARKER || !machine.spec.alphabet.contains(&c) {
                return Err(StepError::IllegalInput(c));
            }
            cells.push(c);
        }
        Ok(InputTape { cells })
    }

    /// Input length without the marker.
    pub fn len(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn read(&self, head: usize) -> char {
        self.cells.get(head - 1).copied().unwrap_or(BLANK)
    }

    pub fn word(&self) -> String {
        self.cells[1..].iter().collect()
    }
}

impl TryFrom<MachineSpec> for AtoMachine {
    type Error = MachineError;

    fn try_from(spec: MachineSpec) -> Result<Self, Self::Error> {
        let report = validate_machine(&spec);
        if !report.is_clean() {
            return Err(MachineError::Invalid(report));
        }
        let states: Vec<String> = spec.states.iter().cloned().collect();
        let id = |name: &str| -> StateId {
            states
                .binary_search_by(|s| s.as_str().cmp(name))
                .expect("validated state")
        };
        let class = states
            .iter()
            .map(|s| Classification {
                kind: if *s == spec.accept {
                    StateKind::Accepting
                } else if *s == spec.reject {
                    StateKind::Rejecting
                } else if spec.universal.contains(s) {
                    StateKind::Universal
                } else {
                    StateKind::Existential
                },
                labeling: spec.labeling.contains(s),
            })
            .collect();
        let delta = spec
            .delta
            .iter()
            .map(|(key, rules)| {
                let compiled = rules
                    .iter()
                    .map(|r| CompiledRule {
                        next: id(&r.next),
                        input_move: r.input_move,
                        work_move: r.work_move,
                        write: r.write,
                        emit: r.emit.clone(),
                    })
                    .collect();
                ((id(&key.state), key.input, key.work), compiled)
            })
            .collect();
        let init = id(&spec.init);
        Ok(AtoMachine {
            spec,
            states,
            class,
            init,
            delta,
        })
    }
}

impl AtoMachine {
    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    pub fn bounds(&self) -> Option<ResourceBounds> {
        self.spec.bounds
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn classify(&self, c: &Configuration) -> Classification {
        self.class[c.state]
    }

    pub fn is_labeling(&self, c: &Configuration) -> bool {
        self.class[c.state].labeling
    }

    pub fn is_halting(&self, c: &Configuration) -> bool {
        matches!(
            self.class[c.state].kind,
            StateKind::Accepting | StateKind::Rejecting
        )
    }

    pub fn input(&self, w: &str) -> Result<InputTape, StepError> {
        InputTape::new(self, w)
    }

    /// `(s_init, >w, >, ε, 1, 1)`; fails on illegal input symbols.
    pub fn initial_configuration(&self, w: &str) -> Result<Configuration, StepError> {
        InputTape::new(self, w)?;
        Ok(self.initial())
    }

    pub(crate) fn initial(&self) -> Configuration {
        Configuration {
            state: self.init,
            work: MARKER.to_string(),
            label: String::new(),
            input_head: 1,
            work_head: 1,
        }
    }

    /// All configurations reachable in one step, in canonical order.
    pub fn successors(
        &self,
        input: &InputTape,
        c: &Configuration,
    ) -> Result<Vec<Configuration>, StepError> {
        if self.is_halting(c) {
            return Err(StepError::Halting(self.encode(c)));
        }
        let alpha = input.read(c.input_head);
        let beta = c.work.chars().nth(c.work_head - 1).unwrap_or(BLANK);
        let Some(rules) = self.delta.get(&(c.state, alpha, beta)) else {
            return Ok(Vec::new());
        };
        let labeling = self.is_labeling(c);
        let mut out = Vec::with_capacity(rules.len());
        for rule in rules {
            let input_head = moved(c.input_head, rule.input_move)
                .ok_or_else(|| StepError::HeadUnderflow(self.encode(c)))?;
            let work_head = moved(c.work_head, rule.work_move)
                .ok_or_else(|| StepError::HeadUnderflow(self.encode(c)))?;
            let mut work: Vec<char> = c.work.chars().collect();
            if c.work_head > work.len() {
                work.push(rule.write);
            } else {
                work[c.work_head - 1] = rule.write;
            }
            let label = if labeling {
                rule.emit.clone()
            } else {
                let mut z = c.label.clone();
                z.push_str(&rule.emit);
                z
            };
            out.push(Configuration {
                state: rule.next,
                work: work.into_iter().collect(),
                label,
                input_head,
                work_head,
            });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Printable key `state|work|label|h_x|h_y`. Injective, since `|` is not
    /// an alphabet symbol and state names are single tokens.
    pub fn encode(&self, c: &Configuration) -> String {
        format!(
            "{}|{}|{}|{}|{}",
            self.states[c.state], c.work, c.label, c.input_head, c.work_head
        )
    }
}

fn moved(head: usize, delta: i8) -> Option<usize> {
    let next = head as isize + delta as isize;
    (next >= 1).then_some(next as usize)
}

/// Parses and validates a machine description.
pub fn parse_machine(text: &str) -> Result<AtoMachine, MachineError> {
    AtoMachine::try_from(parse_machine_spec(text)?)
}

/// Parses a machine description without semantic checks.
pub fn parse_machine_spec(text: &str) -> Result<MachineSpec, MachineError> {
    let mut spec = MachineSpec::default();
    let mut seen = BTreeSet::new();
    let mut in_delta = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if in_delta {
            let (key, rule) = parse_rule(line, line_no)?;
            spec.delta.entry(key).or_default().insert(rule);
            continue;
        }
        let err = |column: usize, message: String| MachineError::Syntax {
            line: line_no,
            column,
            message,
        };
        let Some((section, rest)) = line.split_once(':') else {
            return Err(err(1, "expected `section: values`".into()));
        };
        let section = section.trim();
        if !seen.insert(section.to_string()) {
            return Err(err(1, format!("duplicate section `{section}`")));
        }
        let words: Vec<&str> = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .collect();
        let single = |words: &[&str]| -> Result<String, MachineError> {
            match words {
                [w] => Ok(w.to_string()),
                _ => Err(err(
                    section.len() + 2,
                    format!("`{section}` takes exactly one state"),
                )),
            }
        };
        match section {
            "states" => spec.states = words.iter().map(|w| w.to_string()).collect(),
            "alphabet" => {
                for w in &words {
                    let mut chars = w.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => {
                            spec.alphabet.insert(c);
                        }
                        _ => return Err(err(1, format!("symbol `{w}` is not a single character"))),
                    }
                }
            }
            "init" => spec.init = single(&words)?,
            "accept" => spec.accept = single(&words)?,
            "reject" => spec.reject = single(&words)?,
            "existential" => spec.existential = words.iter().map(|w| w.to_string()).collect(),
            "universal" => spec.universal = words.iter().map(|w| w.to_string()).collect(),
            "labeling" => spec.labeling = words.iter().map(|w| w.to_string()).collect(),
            "bounds" => {
                let bounds = ResourceBounds::default()
                    .with_overrides(rest)
                    .map_err(|m| err(section.len() + 2, m))?;
                spec.bounds = Some(bounds);
            }
            "delta" => {
                if !words.is_empty() {
                    return Err(err(1, "rules start on the line after `delta:`".into()));
                }
                in_delta = true;
            }
            other => return Err(err(1, format!("unknown section `{other}`"))),
        }
    }
    for required in ["states", "init", "accept", "reject"] {
        if !seen.contains(required) {
            return Err(MachineError::Syntax {
                line: text.lines().count().max(1),
                column: 1,
                message: format!("missing section `{required}`"),
            });
        }
    }
    spec.alphabet.insert(BLANK);
    spec.alphabet.insert(MARKER);
    Ok(spec)
}

fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_string => escaped = true,
            '"' => in_string = !in_string,
            '#' if !in_string => return &line[..i],
            _ => {}
        }
    }
    line
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Str(String),
    Word(String),
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(usize, Tok)>, MachineError> {
    let err = |column: usize, message: &str| MachineError::Syntax {
        line: line_no,
        column,
        message: message.to_string(),
    };
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((col, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::Close));
                i += 1;
            }
            ',' => {
                out.push((col, Tok::Comma));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((col, Tok::Arrow));
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&c @ ('"' | '\\')) => s.push(c),
                                _ => return Err(err(i + 1, "bad escape in string")),
                            }
                            i += 2;
                        }
                        Some(&c) => {
                            s.push(c);
                            i += 1;
                        }
                        None => return Err(err(col, "unterminated string")),
                    }
                }
                i += 1;
                out.push((col, Tok::Str(s)));
            }
            _ => {
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !matches!(chars[i], '(' | ')' | ',' | '"')
                    && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>') && i > start)
                {
                    i += 1;
                }
                out.push((col, Tok::Word(chars[start..i].iter().collect())));
            }
        }
    }
    Ok(out)
}

fn parse_rule(line: &str, line_no: usize) -> Result<(RuleKey, TransitionRule), MachineError> {
    let toks = tokenize(line, line_no)?;
    let mut it = toks.into_iter().peekable();
    let end_col = line.chars().count() + 1;
    let err = |column: usize, message: String| MachineError::Syntax {
        line: line_no,
        column,
        message,
    };

    let expect = |next: Option<(usize, Tok)>, want: Tok| -> Result<(), MachineError> {
        match next {
            Some((_, t)) if t == want => Ok(()),
            Some((col, t)) => Err(err(col, format!("expected {want:?}, found {t:?}"))),
            None => Err(err(end_col, format!("expected {want:?}"))),
        }
    };
    let fields = |n: usize, it: &mut std::iter::Peekable<std::vec::IntoIter<(usize, Tok)>>| {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match it.next() {
                Some((col, t @ (Tok::Word(_) | Tok::Str(_)))) => out.push((col, t)),
                Some((col, t)) => return Err(err(col, format!("expected a field, found {t:?}"))),
                None => return Err(err(end_col, "rule is incomplete".into())),
            }
            let sep = if i + 1 == n { Tok::Close } else { Tok::Comma };
            match it.next() {
                Some((_, t)) if t == sep => {}
                Some((col, t)) => return Err(err(col, format!("expected {sep:?}, found {t:?}"))),
                None => return Err(err(end_col, "rule is incomplete".into())),
            }
        }
        Ok::<_, MachineError>(out)
    };
    expect(it.next(), Tok::Open)?;
    let lhs = fields(3, &mut it)?;
    expect(it.next(), Tok::Arrow)?;
    expect(it.next(), Tok::Open)?;
    let rhs = fields(5, &mut it)?;
    if let Some((col, t)) = it.next() {
        return Err(err(col, format!("unexpected {t:?} after rule")));
    }

    let word = |(col, t): &(usize, Tok)| -> Result<String, MachineError> {
        match t {
            Tok::Word(w) => Ok(w.clone()),
            Tok::Str(_) => Err(err(*col, "expected a bare word, found a string".into())),
            _ => unreachable!(),
        }
    };
    let symbol = |f: &(usize, Tok)| -> Result<char, MachineError> {
        let w = word(f)?;
        let mut cs = w.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(err(f.0, format!("`{w}` is not a single symbol"))),
        }
    };
    let movement = |f: &(usize, Tok)| -> Result<i8, MachineError> {
        match word(f)?.as_str() {
            "-1" => Ok(-1),
            "0" => Ok(0),
            "+1" | "1" => Ok(1),
            other => Err(err(
                f.0,
                format!("move must be -1, 0 or +1, found `{other}`"),
            )),
        }
    };
    let emit = match &rhs[4] {
        (_, Tok::Str(s)) => s.clone(),
        (col, _) => return Err(err(*col, "emitted string must be quoted".into())),
    };

    Ok((
        RuleKey {
            state: word(&lhs[0])?,
            input: symbol(&lhs[1])?,
            work: symbol(&lhs[2])?,
        },
        TransitionRule {
            next: word(&rhs[0])?,
            input_move: movement(&rhs[1])?,
            work_move: movement(&rhs[2])?,
            write: symbol(&rhs[3])?,
            emit,
        },
    ))
}

/// Writes a spec back in the text format.
pub fn serialize_machine(spec: &MachineSpec) -> String {
    use std::fmt::Write;
    let join = |set: &BTreeSet<String>| set.iter().cloned().collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", join(&spec.states));
    let alphabet: Vec<String> = spec
        .alphabet
        .iter()
        .filter(|&&c| c != BLANK && c != MARKER)
        .map(|c| c.to_string())
        .collect();
    let _ = writeln!(out, "alphabet: {}", alphabet.join(" "));
    let _ = writeln!(out, "init: {}", spec.init);
    let _ = writeln!(out, "accept: {}", spec.accept);
    let _ = writeln!(out, "reject: {}", spec.reject);
    let _ = writeln!(out, "existential: {}", join(&spec.existential));
    let _ = writeln!(out, "universal: {}", join(&spec.universal));
    let _ = writeln!(out, "labeling: {}", join(&spec.labeling));
    if let Some(b) = spec.bounds {
        let _ = writeln!(out, "bounds: {b}");
    }
    let _ = writeln!(out, "delta:");
    for (key, rules) in &spec.delta {
        for r in rules {
            let mv = |d: i8| match d {
                -1 => "-1",
                0 => "0",
                _ => "+1",
            };
            let emit = r.emit.replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(
                out,
                "({}, {}, {}) -> ({}, {}, {}, {}, \"{}\")",
                key.state,
                key.input,
                key.work,
                r.next,
                mv(r.input_move),
                mv(r.work_move),
                r.write,
                emit
            );
        }
    }
    out
}
