//! Shared fixtures for the criterion benchmarks.

use korovkin_core::library;
use korovkin_core::{FunctionHandle, SpaceSpec};

/// The functions every benchmark sweeps over.
pub fn corpus() -> Vec<FunctionHandle> {
    ["x2", "sqrt", "abshalf", "step"].iter().map(|d| library::parse_function_auto(d).expect("builtin")).collect()
}

/// One representative space per kernel family.
pub fn spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::sup(),
        SpaceSpec::lp(2.0),
        SpaceSpec::grand_lp(2.0),
        SpaceSpec::morrey(2.0, 3.0),
        SpaceSpec::weak_mp(2.0),
    ]
}
