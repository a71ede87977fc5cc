#![allow(dead_code)]

use korovkin_core::library::parse_function;
use korovkin_core::norms::YoungFunction;
use korovkin_core::{Domain, FunctionHandle, SpaceKind, SpaceSpec};

pub const CORPUS: [&str; 12] = [
    "one", "x", "x2", "x3", "sqrt", "abshalf", "step", "sin2pi", "pow:1.5", "abs:0.3", "pp:0.5;0,1|1,-1", "const:-2",
];

pub fn corpus() -> Vec<FunctionHandle> {
    CORPUS.iter().map(|d| parse_function(d, Domain::Unit).unwrap()).collect()
}

pub fn f(desc: &str) -> FunctionHandle {
    parse_function(desc, Domain::Unit).unwrap()
}

pub fn weight() -> FunctionHandle {
    FunctionHandle::new(Domain::Unit, |x| 1.0 + x).with_name("1+x")
}

/// One representative space of every kind, in `SpaceKind::ALL` order.
pub fn space_of(kind: SpaceKind) -> SpaceSpec {
    match kind {
        SpaceKind::Sup => SpaceSpec::sup(),
        SpaceKind::Lp => SpaceSpec::lp(2.5),
        SpaceKind::WeightedLp => SpaceSpec::weighted_lp(2.0, weight()),
        SpaceKind::GrandLp => SpaceSpec::grand_lp(2.0),
        SpaceKind::WeightedGrandLp => SpaceSpec::weighted_grand_lp(2.0, weight()),
        SpaceKind::VariableLp => SpaceSpec::variable_lp(f("pp:;1.5,1")),
        SpaceKind::Orlicz => SpaceSpec::orlicz(YoungFunction::exponential()),
        SpaceKind::Morrey => SpaceSpec::morrey(2.0, 3.0),
        SpaceKind::WeightedMorrey => SpaceSpec::weighted_morrey(2.0, 3.0, weight()),
        SpaceKind::SmallMorrey => SpaceSpec::small_morrey(2.0, 0.5),
        SpaceKind::WeakMp => SpaceSpec::weak_mp(2.0),
    }
}

pub fn all_spaces() -> Vec<SpaceSpec> {
    SpaceKind::ALL.iter().map(|&k| space_of(k)).collect()
}

/// Prints the verdict line and fails the test on FAIL.
pub fn verdict(id: u32, title: &str, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("criterion {id:>2} PASS  {title}  [{detail}]");
    } else {
        println!("criterion {id:>2} FAIL  {title}  [{} failures; first: {}]", failures.len(), failures[0]);
        panic!("criterion {id} failed: {failures:#?}");
    }
}
