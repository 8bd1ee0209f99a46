use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::Instant;

use spantl::computation::{
    check_well_behaved, enumerate_computations, extract_output, valid_outputs,
};
use spantl::dag::build_dag;
use spantl::machine::{
    parse_machine_spec, validate_machine, AtoMachine, MachineError, ResourceBounds, StepError,
};
use spantl::nfta::{
    count_by_enumeration, count_by_size, count_exact, count_unordered_classes, parse_nfta,
    serialize_nfta, NftaError,
};
use spantl::reduction::{build_nfta, size_bound};
use spantl::trees::{serialize_tree, Mode};
use spantl::RunError;

use crate::report::RunReport;
use crate::{Cli, Command, MachineInput, Method, ModeArg};

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

/// A failure carrying its exit status.
struct Failure(i32, String);

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Step(StepError::IllegalInput(_)) => Failure(EXIT_IO, e.to_string()),
            other => Failure(EXIT_BOUND, other.to_string()),
        }
    }
}

impl From<NftaError> for Failure {
    fn from(e: NftaError) -> Self {
        match e {
            NftaError::Syntax { .. } | NftaError::Undeclared { .. } => {
                Failure(EXIT_IO, e.to_string())
            }
            NftaError::DeterminizationCap { .. } | NftaError::EnumerationCap { .. } => {
                Failure(EXIT_BOUND, e.to_string())
            }
        }
    }
}

type Outcome = Result<(), Failure>;

struct Clock {
    enabled: bool,
}

impl Clock {
    fn time<T>(&self, report: &mut RunReport, what: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            report
                .timings_ms
                .insert(what.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

pub fn dispatch(cli: &Cli, report: &mut RunReport) {
    let clock = Clock {
        enabled: cli.timings,
    };
    let bounds = cli.bounds.as_deref();
    let outcome = match &cli.command {
        Command::Validate { machine } => validate(machine, report),
        Command::Run { target, list } => run(target, bounds, *list, report),
        Command::Span { target, mode, list } => span(target, bounds, *mode, *list, &clock, report),
        Command::Reduce { target, out } => reduce(target, bounds, out.as_deref(), &clock, report),
        Command::Count {
            nfta,
            size,
            cumulative,
            method,
        } => count(nfta, *size, *cumulative, *method, &clock, report),
        Command::Check { target } => check(target, bounds, &clock, report),
        Command::Dag { target, export } => dag(target, bounds, export.as_deref(), report),
    };
    if let Err(Failure(status, message)) = outcome {
        report.fail(status, message);
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load(
    target: &MachineInput,
    overrides: Option<&str>,
) -> Result<(AtoMachine, ResourceBounds), Failure> {
    let text = read(&target.machine)?;
    let spec = parse_machine_spec(&text)
        .map_err(|e| Failure(EXIT_IO, format!("{}:{e}", target.machine.display())))?;
    let machine = AtoMachine::try_from(spec).map_err(|e| match e {
        MachineError::Invalid(r) => Failure(
            EXIT_INVALID,
            format!("invalid machine\n{r}").trim_end().to_string(),
        ),
        other => Failure(EXIT_IO, other.to_string()),
    })?;
    let mut bounds = machine.bounds().unwrap_or_default();
    if let Some(o) = overrides {
        bounds = bounds
            .with_overrides(o)
            .map_err(|e| Failure(EXIT_IO, format!("--bounds: {e}")))?;
    }
    Ok((machine, bounds))
}

fn validate(path: &Path, report: &mut RunReport) -> Outcome {
    let text = read(path)?;
    let spec = parse_machine_spec(&text)
        .map_err(|e| Failure(EXIT_IO, format!("{}:{e}", path.display())))?;
    let checked = validate_machine(&spec);
    report.count("states", spec.states.len());
    report.count("rules", spec.delta.values().map(|r| r.len()).sum::<usize>());
    report.count("violations", checked.violations.len());
    report.violations = checked.violations.iter().map(ToString::to_string).collect();
    if !checked.is_clean() {
        return Err(Failure(
            EXIT_INVALID,
            format!("{}: machine is invalid", path.display()),
        ));
    }
    Ok(())
}

fn run(
    target: &MachineInput,
    overrides: Option<&str>,
    list: bool,
    report: &mut RunReport,
) -> Outcome {
    let (m, b) = load(target, overrides)?;
    let computations = enumerate_computations(&m, &target.input, b)?;
    let mut accepting = 0;
    let mut outputs = BTreeSet::new();
    for (i, t) in computations.iter().enumerate() {
        let accepts = t.is_accepting(&m);
        let out = extract_output(&m, t, Mode::Ordered);
        if accepts {
            accepting += 1;
            outputs.insert(out.canonical_code(Mode::Unordered));
        }
        if list {
            let verdict = if accepts { "accepting" } else { "rejecting" };
            report.listing.push(format!(
                "computation {i} {verdict} nodes={}: {}",
                t.size(),
                serialize_tree(&out)
            ));
        }
        for v in check_well_behaved(&m, t, b) {
            report.violations.push(format!("computation {i}: {v}"));
        }
    }
    report.count("bounds", b.to_string());
    report.count("computations", computations.len());
    report.count("accepting", accepting);
    report.count("span", outputs.len());
    if !report.violations.is_empty() {
        return Err(Failure(
            EXIT_BOUND,
            "some computations exceed the declared bounds".into(),
        ));
    }
    Ok(())
}

fn span(
    target: &MachineInput,
    overrides: Option<&str>,
    mode: ModeArg,
    list: bool,
    clock: &Clock,
    report: &mut RunReport,
) -> Outcome {
    let (m, b) = load(target, overrides)?;
    let mode = match mode {
        ModeArg::Ordered => Mode::Ordered,
        ModeArg::Unordered => Mode::Unordered,
    };
    let outputs = clock.time(report, "span", || valid_outputs(&m, &target.input, b, mode))?;
    report.count("mode", mode.to_string());
    report.count("span", outputs.len());
    if list {
        report.listing = outputs.values().map(serialize_tree).collect();
    }
    Ok(())
}

fn reduce(
    target: &MachineInput,
    overrides: Option<&str>,
    out: Option<&Path>,
    clock: &Clock,
    report: &mut RunReport,
) -> Outcome {
    let (m, b) = load(target, overrides)?;
    let r = clock.time(report, "reduce", || build_nfta(&m, &target.input, b))?;
    let text = serialize_nfta(&r.nfta);
    report.count("dag_nodes", r.dag.len());
    report.count("states", r.nfta.states.len());
    report.count("labels", r.nfta.alphabet.len());
    report.count("transitions", r.nfta.transitions.len());
    report.count("size_bound", size_bound(&b));
    match out {
        Some(path) => write(path, &text)?,
        None => {
            report.counts_as_comments = true;
            report.output = Some(text);
        }
    }
    Ok(())
}

fn count(
    path: &Path,
    size: usize,
    cumulative: bool,
    method: Method,
    clock: &Clock,
    report: &mut RunReport,
) -> Outcome {
    let a = parse_nfta(&read(path)?)
        .map_err(|e| Failure(EXIT_IO, format!("{}:{e}", path.display())))?;
    let per_size = match method {
        Method::Dp => clock.time(report, "count", || count_by_size(&a, size))?,
        Method::Enum => clock.time(report, "count", || {
            (0..=size)
                .map(|n| count_by_enumeration(&a, n, false))
                .collect::<Result<Vec<_>, _>>()
        })?,
    };
    report.count(
        "method",
        match method {
            Method::Dp => "dp",
            Method::Enum => "enum",
        },
    );
    for (n, c) in per_size.iter().enumerate().skip(1) {
        report.big(&format!("size {n}"), c);
    }
    let total = if cumulative {
        per_size.iter().sum()
    } else {
        per_size[size].clone()
    };
    report.big(if cumulative { "cumulative" } else { "count" }, &total);
    Ok(())
}

fn check(
    target: &MachineInput,
    overrides: Option<&str>,
    clock: &Clock,
    report: &mut RunReport,
) -> Outcome {
    let (m, b) = load(target, overrides)?;
    let w = &target.input;
    let ordered = clock
        .time(report, "span ordered", || {
            valid_outputs(&m, w, b, Mode::Ordered)
        })?
        .len();
    let unordered = clock
        .time(report, "span unordered", || {
            valid_outputs(&m, w, b, Mode::Unordered)
        })?
        .len();
    let r = clock.time(report, "reduce", || build_nfta(&m, w, b))?;
    let bound = size_bound(&b);
    let total = clock.time(report, "count", || count_exact(&r.nfta, bound, true))?;
    let classes = clock.time(report, "unordered classes", || {
        count_unordered_classes(&r.nfta, bound)
    })?;

    report.count("span ordered", ordered);
    report.count("span unordered", unordered);
    report.big("automaton count", &total);
    report.count("automaton unordered classes", classes);
    report.count("size_bound", bound);
    if ordered != unordered {
        report.info.push(format!(
            "{unordered} unordered outputs vs {ordered} ordered: outputs differing only in sibling order"
        ));
    }
    if classes != unordered {
        report.info.push(format!(
            "automaton has {classes} unordered classes, span has {unordered}"
        ));
    }
    if total != ordered.into() {
        return Err(Failure(
            EXIT_DISAGREE,
            format!("ordered span {ordered} differs from automaton count {total}"),
        ));
    }
    report.count("agree", true);
    Ok(())
}

fn dag(
    target: &MachineInput,
    overrides: Option<&str>,
    export: Option<&Path>,
    report: &mut RunReport,
) -> Outcome {
    let (m, b) = load(target, overrides)?;
    let g = build_dag(&m, &target.input, b)?;
    let s = g.stats(&m);
    report.count("nodes", s.nodes);
    report.count("edges", s.edges);
    report.count("depth", s.depth);
    report.count("accepting", s.accepting);
    report.count("rejecting", s.rejecting);
    report.count("existential", s.existential);
    report.count("universal", s.universal);
    report.count("labeling", s.labeling);
    report.count("dead_ends", s.dead_ends);
    match export {
        Some(p) if p == Path::new("-") => report.output = Some(g.to_edge_list(&m)),
        Some(p) => write(p, &g.to_edge_list(&m))?,
        None => {}
    }
    Ok(())
}
