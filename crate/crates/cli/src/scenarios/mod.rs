//! Registered experiments.

use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::Report;

mod decay;
mod fields;
mod fock;
mod gauge;
mod radiation;
mod strings;

pub type RunFn = fn(&Params, &mut Report) -> Result<(), CliError>;

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    /// Formulas the output reproduces.
    pub anchors: &'static [&'static str],
    pub params: &'static [ParamSpec],
    pub run: RunFn,
}

pub fn registry() -> &'static [Scenario] {
    REGISTRY
}

pub fn find(name: &str) -> Option<&'static Scenario> {
    REGISTRY.iter().find(|s| s.name == name)
}

static REGISTRY: &[Scenario] = &[
    gauge::AB_RING,
    gauge::AB_SECTOR,
    gauge::TWO_SLIT,
    gauge::LANDAU_LEVELS,
    gauge::LANDAU_EDGE,
    gauge::LANDAU_CURRENT,
    gauge::LINEAR_POTENTIAL,
    gauge::GAUGE_CURRENTS,
    strings::STRING_MODES,
    strings::CASIMIR_SUM,
    strings::CASIMIR_1D,
    fock::FOCK_ORACLE,
    fock::FERMION_ALGEBRA,
    fields::COHERENT_STATE,
    fields::PLANCK,
    decay::WW_DECAY,
    decay::WW_KERNEL,
    radiation::RADIATION_PATTERN,
    radiation::SELECTION_RULES,
    radiation::HYDROGEN_DIPOLE,
    radiation::CG_ORTHOGONALITY,
];

/// `n` evenly spaced points on `[a, b]`, or `[a]` when `n == 1`.
pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}
