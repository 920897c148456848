//! Complexity measures and θ-reading recognition.
//!
//! A formula `φ` may be read as `θi(ψ)` for several separators. The measure
//! used by the prover assigns `φ` the canonical complexity of the core of its
//! minimal reading, so that separator-wrapped daughters never outweigh the
//! argument they wrap.

use std::collections::HashMap;

use crate::logic::Formula;
use crate::separators::{instantiate_position, SeparatorPattern};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reading {
    /// Print position; 0 reads the formula as itself.
    pub position: usize,
    pub core: Formula,
}

impl Reading {
    /// Wraps the core back in its pattern.
    pub fn reconstruct(&self, seps: &[SeparatorPattern]) -> Formula {
        instantiate_position(seps, self.position, &self.core)
    }
}

pub fn canonical_complexity(f: &Formula) -> usize {
    f.complexity()
}

/// All outermost readings of `f`, position 0 first, then by separator index.
pub fn theta_readings(f: &Formula, seps: &[SeparatorPattern]) -> Vec<Reading> {
    let mut out = vec![Reading {
        position: 0,
        core: f.clone(),
    }];
    out.extend(seps.iter().filter_map(|s| {
        s.match_formula(f).map(|core| Reading {
            position: s.index,
            core,
        })
    }));
    out
}

/// Index into `readings` of the minimal one: least core complexity, ties to
/// the highest position.
pub(crate) fn minimal_index(readings: &[Reading]) -> usize {
    readings
        .iter()
        .enumerate()
        .min_by_key(|(_, r)| (r.core.complexity(), std::cmp::Reverse(r.position)))
        .map(|(i, _)| i)
        .expect("position 0 is always a reading")
}

pub fn minimal_reading(f: &Formula, seps: &[SeparatorPattern]) -> Reading {
    let mut readings = theta_readings(f, seps);
    let i = minimal_index(&readings);
    readings.swap_remove(i)
}

pub fn node_complexity(f: &Formula, seps: &[SeparatorPattern]) -> usize {
    minimal_reading(f, seps).core.complexity()
}

/// Memoized minimal readings for one separator list.
#[derive(Debug, Clone)]
pub struct ComplexityMeasure {
    separators: Vec<SeparatorPattern>,
    memo: HashMap<Formula, Reading>,
}

impl ComplexityMeasure {
    pub fn new(separators: &[SeparatorPattern]) -> Self {
        ComplexityMeasure {
            separators: separators.to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn separators(&self) -> &[SeparatorPattern] {
        &self.separators
    }

    pub fn minimal_reading(&mut self, f: &Formula) -> Reading {
        if let Some(r) = self.memo.get(f) {
            return r.clone();
        }
        let r = minimal_reading(f, &self.separators);
        self.memo.insert(f.clone(), r.clone());
        r
    }

    pub fn node_complexity(&mut self, f: &Formula) -> usize {
        self.minimal_reading(f).core.complexity()
    }
}
