//! Browser bindings. Each export takes the text of a file plus a few
//! parameters and returns a plain-text report, or an error message.

use std::fmt::Write;

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::wasm_bindgen;

use spantl::computation::valid_outputs;
use spantl::corpus;
use spantl::machine::{parse_machine, AtoMachine, ResourceBounds};
use spantl::nfta::{count_by_size, parse_nfta, serialize_nfta};
use spantl::reduction::{build_nfta, size_bound};
use spantl::trees::{serialize_tree, Mode};

/// Larger inputs belong on the command line.
const MAX_LISTED: usize = 200;

fn load(machine: &str, bounds: &str) -> Result<(AtoMachine, ResourceBounds), String> {
    let m = parse_machine(machine).map_err(|e| e.to_string())?;
    let b = m.bounds().unwrap_or_default().with_overrides(bounds)?;
    Ok((m, b))
}

/// Names of the bundled example machines, one per line.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn preset_names() -> String {
    corpus::MACHINES
        .iter()
        .map(|(n, _)| *n)
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn preset(name: &str) -> Result<String, String> {
    corpus::MACHINES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| format!("no preset `{name}`"))
}

/// Span of `machine` on `input`, with the outputs listed.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn span(machine: &str, input: &str, ordered: bool, bounds: &str) -> Result<String, String> {
    let (m, b) = load(machine, bounds)?;
    let mode = if ordered {
        Mode::Ordered
    } else {
        Mode::Unordered
    };
    let outputs = valid_outputs(&m, input, b, mode).map_err(|e| e.to_string())?;
    let mut out = format!("span ({mode}): {}\n", outputs.len());
    for t in outputs.values().take(MAX_LISTED) {
        writeln!(out, "  {}", serialize_tree(t)).unwrap();
    }
    if outputs.len() > MAX_LISTED {
        writeln!(out, "  ... {} more", outputs.len() - MAX_LISTED).unwrap();
    }
    Ok(out)
}

/// The tree automaton for `machine` on `input`, in the text format, headed by
/// its size bound as a comment.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn reduce(machine: &str, input: &str, bounds: &str) -> Result<String, String> {
    let (m, b) = load(machine, bounds)?;
    let r = build_nfta(&m, input, b).map_err(|e| e.to_string())?;
    Ok(format!(
        "# size_bound: {}\n{}",
        size_bound(&b),
        serialize_nfta(&r.nfta)
    ))
}

/// Per-size counts of the trees accepted by `nfta`, sizes 1 to `size`.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn count(nfta: &str, size: usize) -> Result<String, String> {
    let a = parse_nfta(nfta).map_err(|e| e.to_string())?;
    let per_size = count_by_size(&a, size).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let mut total = spantl::nfta::BigUint::default();
    for (n, c) in per_size.iter().enumerate().skip(1) {
        total += c;
        writeln!(out, "size {n}: {c}").unwrap();
    }
    writeln!(out, "total: {total}").unwrap();
    Ok(out)
}
