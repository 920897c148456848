//! Generation of classic-like 2-signed tableau calculi for finite-valued
//! propositional logics, and an analytic prover over them.
//!
//! A logic is given by truth tables and a set of separating formulas. Each
//! truth value gets a binary print (the signs of itself and of its separator
//! images); expansion rules have labelled prints as branches, and sign vectors
//! that are no value's print become closure rules.

pub mod builtin;
pub mod calculus;
pub mod emit;
pub mod error;
pub mod fuzz;
pub mod logic;
pub mod parse;
pub mod prover;
pub mod separators;
pub mod strategy;

pub use calculus::{
    build_calculus, build_calculus_with, Calculus, ClosureRule, RuleHead, TableauRule,
};
pub use error::{Error, Result};
pub use logic::{
    oracle_entails, Formula, LogicSpec, Sequent, Sign, SignedFormula, Valuation, Verdict,
};
pub use parse::{parse_formula, parse_logic_spec, parse_sequent};
pub use prover::{prove, ProofResult, Prover, ProverConfig};
pub use separators::{
    compute_print_table, search_separators, validate_separators, PrintTable, SearchOutcome,
    Separability, SeparatorPattern,
};
