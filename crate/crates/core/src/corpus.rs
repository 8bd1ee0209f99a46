//! Example machines shipped with the crate. Names are file stems under `corpus/`.

pub const MACHINES: &[(&str, &str)] = &[
    (
        "ex1_forced_accept",
        include_str!("../corpus/ex1_forced_accept.ato"),
    ),
    (
        "ex2_existential",
        include_str!("../corpus/ex2_existential.ato"),
    ),
    ("ex3_universal", include_str!("../corpus/ex3_universal.ato")),
    (
        "ex4_universal_chain",
        include_str!("../corpus/ex4_universal_chain.ato"),
    ),
    ("ex5_loop", include_str!("../corpus/ex5_loop.ato")),
    (
        "ex6_nested_fanout",
        include_str!("../corpus/ex6_nested_fanout.ato"),
    ),
    (
        "ex7_reject_annihilates",
        include_str!("../corpus/ex7_reject_annihilates.ato"),
    ),
    (
        "ex8_input_reading",
        include_str!("../corpus/ex8_input_reading.ato"),
    ),
    ("ex9_dead_end", include_str!("../corpus/ex9_dead_end.ato")),
    (
        "ex10_tape_writing",
        include_str!("../corpus/ex10_tape_writing.ato"),
    ),
    (
        "ex11_labeled_halting",
        include_str!("../corpus/ex11_labeled_halting.ato"),
    ),
    (
        "ex12_sibling_order",
        include_str!("../corpus/ex12_sibling_order.ato"),
    ),
];

/// Source text of a corpus machine.
///
/// # Panics
/// If no machine has that name.
pub fn machine(name: &str) -> &'static str {
    MACHINES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .unwrap_or_else(|| panic!("no corpus machine named `{name}`"))
}
