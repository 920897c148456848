//! Separating formulas and binary prints.
//!
//! A separator is a unary pattern `θ(#)`. The binary print of a value `v` is
//! the sign vector `t(v), t(θ1(v)), ..., t(θk(v))` where `t` maps designated
//! values to `T`. Position 0 is always the identity.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Formula, LogicSpec, Sign, PLACEHOLDER};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparatorPattern {
    /// 1-based position in the print; 0 is reserved for the identity.
    pub index: usize,
    pub body: Formula,
}

impl SeparatorPattern {
    pub fn new(index: usize, body: Formula) -> Result<Self> {
        let atoms = body.atoms();
        if index == 0 {
            return Err(Error::BadPattern {
                pattern: body.to_string(),
                reason: "separator index 0 is reserved for the identity".into(),
            });
        }
        if !atoms.iter().any(|a| &**a == PLACEHOLDER) {
            return Err(Error::BadPattern {
                pattern: body.to_string(),
                reason: "pattern does not mention the placeholder `#`".into(),
            });
        }
        if let Some(other) = atoms.iter().find(|a| &***a != PLACEHOLDER) {
            return Err(Error::BadPattern {
                pattern: body.to_string(),
                reason: format!("pattern mentions atom `{other}`"),
            });
        }
        if body.is_atom() {
            return Err(Error::BadPattern {
                pattern: body.to_string(),
                reason: "the identity is implicit and cannot be a separator".into(),
            });
        }
        Ok(SeparatorPattern { index, body })
    }

    pub fn instantiate(&self, arg: &Formula) -> Formula {
        self.body.substitute(PLACEHOLDER, arg)
    }

    /// Returns the unique `ψ` with `self.instantiate(ψ) == f`, if any.
    pub fn match_formula(&self, f: &Formula) -> Option<Formula> {
        let mut binding = None;
        if match_pattern(&self.body, f, &mut binding) {
            binding.cloned()
        } else {
            None
        }
    }
}

fn match_pattern<'f>(pattern: &Formula, f: &'f Formula, binding: &mut Option<&'f Formula>) -> bool {
    match (pattern, f) {
        (Formula::Atom(_), _) => match binding {
            Some(bound) => *bound == f,
            None => {
                *binding = Some(f);
                true
            }
        },
        (Formula::App(p), Formula::App(g)) => {
            p.connective == g.connective
                && p.args.len() == g.args.len()
                && p.args
                    .iter()
                    .zip(&g.args)
                    .all(|(pa, ga)| match_pattern(pa, ga, binding))
        }
        (Formula::App(_), Formula::Atom(_)) => false,
    }
}

impl fmt::Display for SeparatorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}(#) = {}", self.index, self.body)
    }
}

/// Instantiates print position `position` at `arg`; position 0 is `arg` itself.
pub fn instantiate_position(seps: &[SeparatorPattern], position: usize, arg: &Formula) -> Formula {
    if position == 0 {
        arg.clone()
    } else {
        seps[position - 1].instantiate(arg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPrint(pub Vec<Sign>);

impl fmt::Display for BinaryPrint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintTable {
    prints: Vec<BinaryPrint>,
    separators: Vec<SeparatorPattern>,
}

impl PrintTable {
    pub fn print(&self, value: usize) -> &BinaryPrint {
        &self.prints[value]
    }

    pub fn prints(&self) -> &[BinaryPrint] {
        &self.prints
    }

    pub fn separators(&self) -> &[SeparatorPattern] {
        &self.separators
    }

    /// Print length, `k + 1` for `k` separators.
    pub fn width(&self) -> usize {
        self.separators.len() + 1
    }

    /// The value whose print is exactly `signs`, if any.
    pub fn value_of(&self, signs: &[Sign]) -> Option<usize> {
        self.prints.iter().position(|p| p.0 == signs)
    }

    /// Values whose print agrees with every `(position, sign)` constraint.
    pub fn candidates<'a>(
        &'a self,
        constraints: &'a [(usize, Sign)],
    ) -> impl Iterator<Item = usize> + 'a {
        (0..self.prints.len())
            .filter(move |&v| constraints.iter().all(|&(i, s)| self.prints[v].0[i] == s))
    }
}

pub fn compute_print_table(spec: &LogicSpec, seps: &[SeparatorPattern]) -> PrintTable {
    let prints = (0..spec.num_values())
        .map(|v| {
            let mut signs = Vec::with_capacity(seps.len() + 1);
            signs.push(spec.sign_of(v));
            signs.extend(
                seps.iter()
                    .map(|s| spec.sign_of(spec.eval_pattern(&s.body, v))),
            );
            BinaryPrint(signs)
        })
        .collect();
    PrintTable {
        prints,
        separators: seps.to_vec(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Separable,
    /// Two values (by index) sharing a print.
    Collision(usize, usize),
}

pub fn validate_separators(table: &PrintTable) -> Separability {
    for (a, pa) in table.prints.iter().enumerate() {
        for (b, pb) in table.prints.iter().enumerate().skip(a + 1) {
            if pa == pb {
                return Separability::Collision(a, b);
            }
        }
    }
    Separability::Separable
}

/// Like [`validate_separators`], mapping a collision to an error.
pub fn require_separable(spec: &LogicSpec, table: &PrintTable) -> Result<()> {
    match validate_separators(table) {
        Separability::Separable => Ok(()),
        Separability::Collision(a, b) => Err(Error::NotSeparable(
            spec.label(a).to_string(),
            spec.label(b).to_string(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<SeparatorPattern>),
    NotFound,
}

struct Candidate {
    body: Formula,
    function: Vec<usize>,
    depth: usize,
}

/// Searches unary patterns of depth at most `max_depth`, smallest first, and
/// greedily keeps every pattern that splits a class of values sharing a print.
///
/// Patterns are enumerated by size, connectives in declaration order and
/// argument sizes left to right. Only the first pattern computing a given unary
/// function is kept, both as a candidate and as a building block.
pub fn search_separators(spec: &LogicSpec, max_depth: usize) -> SearchOutcome {
    let n = spec.num_values();
    let mut prints: Vec<Vec<Sign>> = (0..n).map(|v| vec![spec.sign_of(v)]).collect();
    let mut chosen: Vec<SeparatorPattern> = Vec::new();

    let distinct = |prints: &[Vec<Sign>]| prints.iter().collect::<HashSet<_>>().len();
    if distinct(&prints) == n {
        return SearchOutcome::Found(chosen);
    }

    let identity = Candidate {
        body: Formula::placeholder(),
        function: (0..n).collect(),
        depth: 0,
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.function.clone()]);
    // by_size[s] holds the kept patterns with s connective occurrences
    let mut by_size: Vec<Vec<Candidate>> = vec![vec![identity]];
    let max_arity = spec
        .connectives()
        .iter()
        .map(|c| c.arity)
        .max()
        .unwrap_or(1);
    let max_size = (0..max_depth)
        .map(|d| max_arity.pow(d as u32))
        .sum::<usize>();

    for size in 1..=max_size {
        let mut level = Vec::new();
        for (ci, conn) in spec.connectives().iter().enumerate() {
            for sizes in compositions(size - 1, conn.arity) {
                if sizes.iter().any(|&s| s >= by_size.len()) {
                    continue;
                }
                let pools: Vec<&[Candidate]> = sizes.iter().map(|&s| &by_size[s][..]).collect();
                for pick in cartesian(&pools) {
                    let depth = 1 + pick.iter().map(|c| c.depth).max().unwrap_or(0);
                    if depth > max_depth {
                        continue;
                    }
                    let function: Vec<usize> = (0..n)
                        .map(|v| {
                            let args: Vec<usize> = pick.iter().map(|c| c.function[v]).collect();
                            conn.apply(&args, n)
                        })
                        .collect();
                    if !seen.insert(function.clone()) {
                        continue;
                    }
                    let body = Formula::apply(
                        ci,
                        conn.name.clone(),
                        pick.iter().map(|c| c.body.clone()).collect(),
                    );
                    let before = distinct(&prints);
                    let mut refined = prints.clone();
                    for (v, p) in refined.iter_mut().enumerate() {
                        p.push(spec.sign_of(function[v]));
                    }
                    if distinct(&refined) > before {
                        prints = refined;
                        chosen.push(
                            SeparatorPattern::new(chosen.len() + 1, body.clone())
                                .expect("enumerated patterns mention only the placeholder"),
                        );
                        if distinct(&prints) == n {
                            return SearchOutcome::Found(chosen);
                        }
                    }
                    level.push(Candidate {
                        body,
                        function,
                        depth,
                    });
                }
            }
        }
        by_size.push(level);
    }
    SearchOutcome::NotFound
}

/// All ways to write `total` as an ordered sum of `parts` naturals.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian<'a, T>(pools: &[&'a [T]]) -> Vec<Vec<&'a T>> {
    pools.iter().fold(vec![Vec::new()], |acc, pool| {
        acc.into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |item| {
                    let mut next = prefix.clone();
                    next.push(item);
                    next
                })
            })
            .collect()
    })
}
