//! Fixtures shared by the benchmarks.

use tabgen_core::builtin::lukasiewicz;
use tabgen_core::fuzz::{corpus, FuzzConfig};
use tabgen_core::{build_calculus, Calculus, Sequent};

/// Calculus for the `n`-valued Łukasiewicz logic with its builtin separators.
pub fn calculus(n: usize) -> Calculus {
    build_calculus(&lukasiewicz(n)).expect("builtin separators are valid")
}

/// A fixed random corpus for `calc`'s logic.
pub fn sequents(calc: &Calculus, count: usize) -> Vec<Sequent> {
    corpus(
        calc.spec(),
        &FuzzConfig {
            count,
            seed: 2024,
            ..FuzzConfig::default()
        },
    )
}
