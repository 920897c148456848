//! Generation of 2-signed tableau calculi from binary prints.
//!
//! Every rule head has the form `S:θj(c(α1..αm))`. Its branches are the
//! labelled prints of the argument tuples `v⃗` with `t(θj(c(v⃗))) = S`. Closure
//! rules are the sign vectors that are the print of no value.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use crate::error::Result;
use crate::logic::{LogicSpec, Sign};
use crate::separators::{compute_print_table, require_separable, PrintTable, SeparatorPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleHead {
    pub sign: Sign,
    /// Separator wrapping the connective; 0 for none.
    pub position: usize,
    /// Index of the connective in its logic.
    pub connective: usize,
}

/// Schematic node `sign:θposition(α_slot)`, slots counted from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemaNode {
    pub sign: Sign,
    pub position: usize,
    pub slot: usize,
}

impl fmt::Display for SchemaNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            0 => write!(f, "{}:A{}", self.sign, self.slot),
            i => write!(f, "{}:t{}(A{})", self.sign, i, self.slot),
        }
    }
}

/// Schematic node `sign:θposition(α)` of a closure pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosureNode {
    pub sign: Sign,
    pub position: usize,
}

impl fmt::Display for ClosureNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            0 => write!(f, "{}:A", self.sign),
            i => write!(f, "{}:t{}(A)", self.sign, i),
        }
    }
}

trait Complement: Copy + Eq + Hash {
    fn complement(self) -> Self;
}

impl Complement for SchemaNode {
    fn complement(self) -> Self {
        SchemaNode {
            sign: self.sign.complement(),
            ..self
        }
    }
}

impl Complement for ClosureNode {
    fn complement(self) -> Self {
        ClosureNode {
            sign: self.sign.complement(),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauRule {
    pub head: RuleHead,
    pub branches: Vec<Vec<SchemaNode>>,
}

impl TableauRule {
    /// A head no valuation realizes; the head node alone closes a branch.
    pub fn is_immediate_closure(&self) -> bool {
        self.branches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosureRule {
    pub nodes: Vec<ClosureNode>,
}

impl fmt::Display for ClosureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

pub fn generate_rule(spec: &LogicSpec, table: &PrintTable, head: RuleHead) -> TableauRule {
    let conn = &spec.connectives()[head.connective];
    let n = spec.num_values();
    let width = table.width();
    let mut branches = Vec::new();
    for code in 0..n.pow(conn.arity as u32) {
        let mut args = vec![0; conn.arity];
        let mut rest = code;
        for a in args.iter_mut().rev() {
            *a = rest % n;
            rest /= n;
        }
        let out = conn.apply(&args, n);
        let wrapped = match head.position {
            0 => out,
            i => spec.eval_pattern(&table.separators()[i - 1].body, out),
        };
        if spec.sign_of(wrapped) != head.sign {
            continue;
        }
        let branch: Vec<SchemaNode> = args
            .iter()
            .enumerate()
            .flat_map(|(slot, &v)| {
                (0..width).map(move |position| SchemaNode {
                    sign: table.print(v).0[position],
                    position,
                    slot,
                })
            })
            .collect();
        if !branches.contains(&branch) {
            branches.push(branch);
        }
    }
    TableauRule { head, branches }
}

/// One closure rule per sign vector that is no value's print, vectors in
/// lexicographic order (`F < T`, position 0 most significant).
pub fn generate_closure_rules(table: &PrintTable) -> Vec<ClosureRule> {
    sign_vectors(table.width())
        .filter(|b| table.value_of(b).is_none())
        .map(|b| ClosureRule {
            nodes: b
                .into_iter()
                .enumerate()
                .map(|(position, sign)| ClosureNode { sign, position })
                .collect(),
        })
        .collect()
}

fn sign_vectors(width: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0..1usize << width).map(move |code| {
        (0..width)
            .map(|i| {
                if code >> (width - 1 - i) & 1 == 1 {
                    Sign::T
                } else {
                    Sign::F
                }
            })
            .collect()
    })
}

/// Minimal partial prints matching no value: every node set whose
/// completions are all unrealizable, and which loses that property when any
/// node is dropped. Ordered by size, then lexicographically.
pub fn implied_closure_rules(table: &PrintTable) -> Vec<ClosureRule> {
    let width = table.width();
    let inconsistent = |partial: &[Option<Sign>]| {
        table.prints().iter().all(|p| {
            partial
                .iter()
                .zip(&p.0)
                .any(|(c, s)| matches!(c, Some(c) if c != s))
        })
    };
    let mut found: Vec<Vec<Option<Sign>>> = Vec::new();
    for code in 0..3usize.pow(width as u32) {
        let mut rest = code;
        let mut partial = vec![None; width];
        for slot in partial.iter_mut().rev() {
            *slot = match rest % 3 {
                0 => Some(Sign::F),
                1 => Some(Sign::T),
                _ => None,
            };
            rest /= 3;
        }
        if !inconsistent(&partial) {
            continue;
        }
        let prime = (0..width).filter(|&i| partial[i].is_some()).all(|i| {
            let mut wider = partial.clone();
            wider[i] = None;
            !inconsistent(&wider)
        });
        if prime {
            found.push(partial);
        }
    }
    found.sort_by_key(|p| p.iter().filter(|s| s.is_some()).count());
    found
        .into_iter()
        .map(|p| ClosureRule {
            nodes: p
                .into_iter()
                .enumerate()
                .filter_map(|(position, s)| s.map(|sign| ClosureNode { sign, position }))
                .collect(),
        })
        .collect()
}

fn same_set<N: Eq + Hash>(a: &[N], b: &[N]) -> bool {
    a.len() == b.len() && {
        let sa: HashSet<&N> = a.iter().collect();
        b.iter().all(|n| sa.contains(n))
    }
}

/// If `a` and `b` differ only in the sign of one node, returns that node's
/// position in `a`.
fn complementary_pivot<N: Complement>(a: &[N], b: &[N]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    let sb: HashSet<&N> = b.iter().collect();
    let mut missing = a.iter().enumerate().filter(|(_, n)| !sb.contains(n));
    let (pivot, node) = missing.next()?;
    if missing.next().is_some() {
        return None;
    }
    let sa: HashSet<&N> = a.iter().collect();
    let extra: Vec<&N> = b.iter().filter(|n| !sa.contains(n)).collect();
    (extra.len() == 1 && *extra[0] == node.complement()).then_some(pivot)
}

/// If every node of `a` but one occurs in `b`, `a` does not hold that node's
/// complement and `b` does, the complement is redundant in `b`.
fn strengthening_pivot<N: Complement>(a: &[N], b: &[N]) -> Option<usize> {
    let sb: HashSet<&N> = b.iter().collect();
    let mut outside = a.iter().filter(|n| !sb.contains(n));
    let node = outside.next()?;
    if outside.next().is_some() || a.contains(&node.complement()) {
        return None;
    }
    b.iter().position(|n| *n == node.complement())
}

fn simplify_sets<N: Complement>(mut sets: Vec<Vec<N>>) -> Vec<Vec<N>> {
    for set in sets.iter_mut() {
        let mut seen = HashSet::new();
        set.retain(|n| seen.insert(*n));
    }
    prune(&mut sets);
    'restart: loop {
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if let Some(pivot) = complementary_pivot(&sets[i], &sets[j]) {
                    sets[i].remove(pivot);
                    sets.remove(j);
                    prune(&mut sets);
                    continue 'restart;
                }
            }
        }
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i == j {
                    continue;
                }
                if let Some(pivot) = strengthening_pivot(&sets[i], &sets[j]) {
                    sets[j].remove(pivot);
                    prune(&mut sets);
                    continue 'restart;
                }
            }
        }
        return sets;
    }
}

/// Drops duplicate sets and sets that include another set.
fn prune<N: Eq + Hash>(sets: &mut Vec<Vec<N>>) {
    let mut i = 0;
    while i < sets.len() {
        let redundant = sets.iter().enumerate().any(|(j, other)| {
            j != i && includes(&sets[i], other) && (other.len() < sets[i].len() || j < i)
        });
        if redundant {
            sets.remove(i);
        } else {
            i += 1;
        }
    }
}

/// `sup` contains every node of `sub`.
fn includes<N: Eq + Hash>(sup: &[N], sub: &[N]) -> bool {
    let s: HashSet<&N> = sup.iter().collect();
    sub.iter().all(|n| s.contains(n))
}

/// Simplifies a rule to a fixpoint: branches differing only in the sign of one
/// node merge into one without that node; a node is dropped from a branch when
/// another branch consists of its complement plus nodes the branch already has;
/// duplicate and subsumed branches are removed.
pub fn simplify_rule(rule: &TableauRule) -> TableauRule {
    TableauRule {
        head: rule.head,
        branches: simplify_sets(rule.branches.clone()),
    }
}

/// The closure-set counterpart of [`simplify_rule`].
pub fn simplify_closures(rules: &[ClosureRule]) -> Vec<ClosureRule> {
    simplify_sets(rules.iter().map(|r| r.nodes.clone()).collect())
        .into_iter()
        .map(|nodes| ClosureRule { nodes })
        .collect()
}

/// A generated calculus: print table, expansion rules for every head (raw and
/// simplified) and closure rules.
#[derive(Debug, Clone)]
pub struct Calculus {
    spec: LogicSpec,
    table: PrintTable,
    rules: Vec<TableauRule>,
    simplified: Vec<TableauRule>,
    closures: Vec<ClosureRule>,
    simplified_closures: Vec<ClosureRule>,
    implied_closures: Vec<ClosureRule>,
}

impl Calculus {
    pub fn spec(&self) -> &LogicSpec {
        &self.spec
    }

    pub fn table(&self) -> &PrintTable {
        &self.table
    }

    pub fn separators(&self) -> &[SeparatorPattern] {
        self.table.separators()
    }

    pub fn width(&self) -> usize {
        self.table.width()
    }

    fn head_index(&self, head: RuleHead) -> usize {
        (head.connective * self.width() + head.position) * 2 + matches!(head.sign, Sign::T) as usize
    }

    /// Every head, by connective, then position, then sign (`F` first).
    pub fn heads(&self) -> impl Iterator<Item = RuleHead> + '_ {
        self.rules.iter().map(|r| r.head)
    }

    /// The generated (unsimplified) rule for `head`.
    pub fn rule(&self, head: RuleHead) -> &TableauRule {
        &self.rules[self.head_index(head)]
    }

    pub fn simplified_rule(&self, head: RuleHead) -> &TableauRule {
        &self.simplified[self.head_index(head)]
    }

    pub fn rules(&self) -> &[TableauRule] {
        &self.rules
    }

    pub fn simplified_rules(&self) -> &[TableauRule] {
        &self.simplified
    }

    /// The unrealizable prints, one rule each.
    pub fn closure_rules(&self) -> &[ClosureRule] {
        &self.closures
    }

    pub fn simplified_closure_rules(&self) -> &[ClosureRule] {
        &self.simplified_closures
    }

    /// Minimal unrealizable partial prints not already among the simplified
    /// closure rules.
    pub fn implied_closure_rules(&self) -> &[ClosureRule] {
        &self.implied_closures
    }

    /// Looks a head up by connective name.
    pub fn head(&self, sign: Sign, position: usize, connective: &str) -> Option<RuleHead> {
        let (connective, _) = self.spec.connective(connective)?;
        (position < self.width()).then_some(RuleHead {
            sign,
            position,
            connective,
        })
    }
}

/// Builds the calculus for the spec's declared separators.
pub fn build_calculus(spec: &LogicSpec) -> Result<Calculus> {
    build_calculus_with(spec, spec.separators())
}

/// Builds the calculus for `seps`, which replace the spec's own separators.
pub fn build_calculus_with(spec: &LogicSpec, seps: &[SeparatorPattern]) -> Result<Calculus> {
    let table = compute_print_table(spec, seps);
    require_separable(spec, &table)?;
    let mut rules = Vec::new();
    for connective in 0..spec.connectives().len() {
        for position in 0..table.width() {
            for sign in [Sign::F, Sign::T] {
                rules.push(generate_rule(
                    spec,
                    &table,
                    RuleHead {
                        sign,
                        position,
                        connective,
                    },
                ));
            }
        }
    }
    let simplified = rules.iter().map(simplify_rule).collect();
    let closures = generate_closure_rules(&table);
    let simplified_closures = simplify_closures(&closures);
    let implied_closures = implied_closure_rules(&table)
        .into_iter()
        .filter(|r| {
            !simplified_closures
                .iter()
                .any(|s| same_set(&s.nodes, &r.nodes))
        })
        .collect();
    Ok(Calculus {
        spec: spec.clone().with_separators(seps.to_vec()),
        table,
        rules,
        simplified,
        closures,
        simplified_closures,
        implied_closures,
    })
}
