//! Seeded random sequents, and differential testing of the prover against the
//! brute-force oracle.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::Calculus;
use crate::error::Result;
use crate::logic::{oracle_entails, Formula, LogicSpec, Sequent, Valuation, Verdict};
use crate::prover::{ProofResult, Prover, ProverConfig};

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub count: usize,
    /// Atoms are drawn from the first `atoms` of `p, q, r, s, ...`.
    pub atoms: usize,
    pub depth: usize,
    pub max_premises: usize,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 500,
            atoms: 3,
            depth: 4,
            max_premises: 2,
            seed: 0,
        }
    }
}

pub fn atom_names(count: usize) -> Vec<String> {
    const BASE: [&str; 8] = ["p", "q", "r", "s", "u", "v", "w", "x"];
    (0..count)
        .map(|i| match BASE.get(i) {
            Some(name) => name.to_string(),
            None => format!("p{i}"),
        })
        .collect()
}

/// A random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    spec: &LogicSpec,
    atoms: &[String],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return Formula::atom(&atoms[rng.random_range(0..atoms.len())]);
    }
    let ci = rng.random_range(0..spec.connectives().len());
    let conn = &spec.connectives()[ci];
    let args = (0..conn.arity)
        .map(|_| random_formula(rng, spec, atoms, depth - 1))
        .collect();
    Formula::apply(ci, conn.name.clone(), args)
}

pub fn random_sequent<R: Rng>(rng: &mut R, spec: &LogicSpec, config: &FuzzConfig) -> Sequent {
    let atoms = atom_names(config.atoms.max(1));
    let premises = (0..rng.random_range(0..=config.max_premises))
        .map(|_| random_formula(rng, spec, &atoms, config.depth))
        .collect();
    Sequent::new(premises, random_formula(rng, spec, &atoms, config.depth))
}

/// The seeded corpus a fuzz run checks.
pub fn corpus(spec: &LogicSpec, config: &FuzzConfig) -> Vec<Sequent> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| random_sequent(&mut rng, spec, config))
        .collect()
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub case: usize,
    pub sequent: Sequent,
    pub oracle: Verdict,
    pub prover_closed: bool,
    pub countermodels: Vec<Valuation>,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub total: usize,
    pub agree: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// Whether a proof result agrees with the oracle: closed exactly when valid,
/// and, when open, extracting exactly the oracle's witnesses.
pub fn agrees(result: &ProofResult, oracle: &Verdict) -> bool {
    match (result, oracle) {
        (ProofResult::Closed(_), Verdict::Valid) => true,
        (ProofResult::Open { countermodels, .. }, Verdict::Invalid(witnesses)) => {
            countermodels == witnesses
        }
        _ => false,
    }
}

pub fn run_fuzz(calc: &Calculus, config: &FuzzConfig) -> Result<FuzzReport> {
    let prover = Prover::with_config(calc, ProverConfig::default());
    let mut report = FuzzReport {
        total: config.count,
        agree: 0,
        first_mismatch: None,
    };
    for (case, sequent) in corpus(calc.spec(), config).into_iter().enumerate() {
        let oracle = oracle_entails(calc.spec(), &sequent);
        let result = prover.prove(&sequent)?;
        if agrees(&result, &oracle) {
            report.agree += 1;
        } else if report.first_mismatch.is_none() {
            report.first_mismatch = Some(Mismatch {
                case,
                prover_closed: result.is_closed(),
                countermodels: result.countermodels().to_vec(),
                sequent,
                oracle,
            });
        }
    }
    Ok(report)
}
