//! The tableau engine.
//!
//! A proof starts from the single branch `T:γ1, ..., T:γn, F:α` and processes
//! leaves depth-first, leftmost first. On each leaf it checks closure, then
//! expands one unexpanded node under its minimal reading. A leaf on which no
//! node can be expanded is saturated and yields counter-models.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::calculus::{Calculus, ClosureRule, RuleHead, TableauRule};
use crate::emit::rule_name;
use crate::error::{Error, Result};
use crate::logic::{Formula, Sequent, Sign, SignedFormula, Valuation};
use crate::separators::instantiate_position;
use crate::strategy::{minimal_index, theta_readings, Reading};

#[derive(Debug, Clone)]
pub struct ProverConfig {
    /// Expand with simplified rules instead of the raw generated ones.
    pub simplified_rules: bool,
    /// Fail if a daughter is not strictly less complex than its head.
    pub check_descent: bool,
    pub trace: bool,
    /// Stop collecting counter-models after this many.
    pub max_countermodels: Option<usize>,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            simplified_rules: true,
            check_descent: true,
            trace: false,
            max_countermodels: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BranchNode {
    pub signed: SignedFormula,
    /// All outermost readings; `readings[minimal]` is the one rules apply to.
    pub readings: Arc<[Reading]>,
    pub minimal: usize,
    pub expanded: bool,
    // (branch count, complexity drop) under the raw and simplified rules
    selection: [OnceCell<(usize, isize)>; 2],
}

impl BranchNode {
    fn new(signed: SignedFormula, calc: &Calculus) -> Self {
        let readings: Arc<[Reading]> = theta_readings(&signed.formula, calc.separators()).into();
        let minimal = minimal_index(&readings);
        BranchNode {
            signed,
            readings,
            minimal,
            expanded: false,
            selection: Default::default(),
        }
    }

    pub fn reading(&self) -> &Reading {
        &self.readings[self.minimal]
    }

    pub fn complexity(&self) -> usize {
        self.reading().core.complexity()
    }

    /// `sign:θi(p)` for an atom `p`.
    pub fn is_literal(&self) -> bool {
        self.reading().core.is_atom()
    }

    fn head(&self) -> Option<RuleHead> {
        let reading = self.reading();
        reading.core.as_app().map(|app| RuleHead {
            sign: self.signed.sign,
            position: reading.position,
            connective: app.connective,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureMatch {
    /// `T:φ` and `F:φ` on one branch.
    Base(Formula),
    /// Closure rule instantiated at `core`.
    Print { rule: ClosureId, core: Formula },
    /// A node whose head no valuation realizes.
    EmptyHead(SignedFormula),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureId {
    /// Index into the calculus's simplified closure rules.
    Generated(usize),
    /// Index into its implied closure rules.
    Implied(usize),
}

impl fmt::Display for ClosureMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureMatch::Base(formula) => write!(f, "base at {formula}"),
            ClosureMatch::Print {
                rule: ClosureId::Generated(i),
                core,
            } => write!(f, "CR{} at {core}", i + 1),
            ClosureMatch::Print {
                rule: ClosureId::Implied(i),
                core,
            } => write!(f, "CI{} at {core}", i + 1),
            ClosureMatch::EmptyHead(node) => write!(f, "empty rule at {node}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchStatus {
    Open,
    Closed(ClosureMatch),
    Saturated,
}

#[derive(Debug, Clone)]
pub struct Branch {
    pub id: usize,
    nodes: Vec<BranchNode>,
    present: HashSet<SignedFormula>,
    /// Print constraints `(position, sign)` per reading core.
    cores: HashMap<Formula, Vec<(usize, Sign)>>,
    /// Nodes before this index are known not to close the branch.
    checked: usize,
    pub status: BranchStatus,
}

impl Branch {
    pub fn new(calc: &Calculus, nodes: impl IntoIterator<Item = SignedFormula>) -> Self {
        let mut branch = Branch {
            id: 0,
            nodes: Vec::new(),
            present: HashSet::new(),
            cores: HashMap::new(),
            checked: 0,
            status: BranchStatus::Open,
        };
        for n in nodes {
            branch.push(n, calc);
        }
        branch
    }

    /// The initial branch for `s`.
    pub fn for_sequent(calc: &Calculus, s: &Sequent) -> Self {
        let premises = s
            .premises
            .iter()
            .map(|p| SignedFormula::new(Sign::T, p.clone()));
        let conclusion = SignedFormula::new(Sign::F, s.conclusion.clone());
        Branch::new(calc, premises.chain(std::iter::once(conclusion)))
    }

    fn push(&mut self, signed: SignedFormula, calc: &Calculus) -> bool {
        if self.present.contains(&signed) {
            return false;
        }
        self.present.insert(signed.clone());
        let node = BranchNode::new(signed, calc);
        for r in node.readings.iter() {
            self.cores
                .entry(r.core.clone())
                .or_default()
                .push((r.position, node.signed.sign));
        }
        self.nodes.push(node);
        true
    }

    pub fn nodes(&self) -> &[BranchNode] {
        &self.nodes
    }

    pub fn contains(&self, node: &SignedFormula) -> bool {
        self.present.contains(node)
    }

    pub fn position_of(&self, node: &SignedFormula) -> Option<usize> {
        self.nodes.iter().position(|n| &n.signed == node)
    }

    /// Print constraints gathered for `core`.
    pub fn constraints(&self, core: &Formula) -> &[(usize, Sign)] {
        self.cores.get(core).map_or(&[], Vec::as_slice)
    }
}

/// One node of the proof tree. Interior nodes record the expansion that
/// produced their children.
#[derive(Debug, Clone)]
pub struct TreeNode {
    pub parent: Option<usize>,
    /// Signed formulas added to the parent's branch.
    pub added: Vec<SignedFormula>,
    pub expansion: Option<Expansion>,
    pub status: BranchStatus,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Expansion {
    pub node: SignedFormula,
    pub reading: Reading,
    pub head: RuleHead,
}

#[derive(Debug, Clone, Default)]
pub struct Statistics {
    pub expansions: usize,
    pub closed: usize,
    pub saturated: usize,
    /// Nodes over all tree nodes, counting each added formula once.
    pub nodes: usize,
}

#[derive(Debug, Clone)]
pub struct Tableau {
    pub root: Sequent,
    pub tree: Vec<TreeNode>,
    pub stats: Statistics,
    pub trace: Vec<String>,
}

impl Tableau {
    pub fn leaves(&self) -> impl Iterator<Item = (usize, &TreeNode)> {
        self.tree
            .iter()
            .enumerate()
            .filter(|(_, n)| n.children.is_empty())
    }
}

#[derive(Debug, Clone)]
pub enum ProofResult {
    /// Every branch closed.
    Closed(Tableau),
    /// Some branch saturated; each counter-model falsifies the root sequent.
    Open {
        tableau: Tableau,
        countermodels: Vec<Valuation>,
    },
}

impl ProofResult {
    pub fn is_closed(&self) -> bool {
        matches!(self, ProofResult::Closed(_))
    }

    pub fn tableau(&self) -> &Tableau {
        match self {
            ProofResult::Closed(t) => t,
            ProofResult::Open { tableau, .. } => tableau,
        }
    }

    pub fn countermodels(&self) -> &[Valuation] {
        match self {
            ProofResult::Closed(_) => &[],
            ProofResult::Open { countermodels, .. } => countermodels,
        }
    }
}

pub struct Prover<'c> {
    calc: &'c Calculus,
    config: ProverConfig,
}

impl<'c> Prover<'c> {
    pub fn new(calc: &'c Calculus) -> Self {
        Prover::with_config(calc, ProverConfig::default())
    }

    pub fn with_config(calc: &'c Calculus, config: ProverConfig) -> Self {
        Prover { calc, config }
    }

    fn rule(&self, head: RuleHead) -> &'c TableauRule {
        if self.config.simplified_rules {
            self.calc.simplified_rule(head)
        } else {
            self.calc.rule(head)
        }
    }

    /// The first closure applicable to `b`: base closure, then nodes with
    /// unrealizable heads, then the calculus's closure rules in order. Only
    /// nodes added since the branch was last marked checked are considered.
    pub fn check_closure(&self, b: &Branch) -> Option<ClosureMatch> {
        let fresh = &b.nodes[b.checked..];
        for node in fresh {
            let flipped =
                SignedFormula::new(node.signed.sign.complement(), node.signed.formula.clone());
            if b.contains(&flipped) {
                return Some(ClosureMatch::Base(node.signed.formula.clone()));
            }
        }
        for node in fresh {
            if let Some(head) = node.head() {
                if self.calc.rule(head).is_immediate_closure() {
                    return Some(ClosureMatch::EmptyHead(node.signed.clone()));
                }
            }
        }
        let mut touched: Vec<&Formula> = Vec::new();
        let mut seen = HashSet::new();
        for node in fresh {
            for r in node.readings.iter() {
                if seen.insert(&r.core) {
                    touched.push(&r.core);
                }
            }
        }
        let matches = |rule: &ClosureRule| {
            touched.iter().find_map(|core| {
                let known = b.constraints(core);
                rule.nodes
                    .iter()
                    .all(|n| known.contains(&(n.position, n.sign)))
                    .then(|| (*core).clone())
            })
        };
        let generated = self.calc.simplified_closure_rules().iter().enumerate();
        for (i, rule) in generated {
            if let Some(core) = matches(rule) {
                return Some(ClosureMatch::Print {
                    rule: ClosureId::Generated(i),
                    core,
                });
            }
        }
        for (i, rule) in self.calc.implied_closure_rules().iter().enumerate() {
            if let Some(core) = matches(rule) {
                return Some(ClosureMatch::Print {
                    rule: ClosureId::Implied(i),
                    core,
                });
            }
        }
        None
    }

    fn daughters(&self, node: &BranchNode, rule: &TableauRule) -> Vec<Vec<SignedFormula>> {
        let app = node.reading().core.as_app().expect("expandable node");
        rule.branches
            .iter()
            .map(|branch| {
                branch
                    .iter()
                    .map(|n| {
                        SignedFormula::new(
                            n.sign,
                            instantiate_position(
                                self.calc.separators(),
                                n.position,
                                &app.args[n.slot],
                            ),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    fn selection_key(&self, node: &BranchNode, head: RuleHead) -> (usize, isize) {
        *node.selection[self.config.simplified_rules as usize].get_or_init(|| {
            let rule = self.rule(head);
            let deepest = self
                .daughters(node, rule)
                .iter()
                .flatten()
                .map(|d| BranchNode::new(d.clone(), self.calc).complexity())
                .max()
                .unwrap_or(0);
            (
                rule.branches.len(),
                node.complexity() as isize - deepest as isize,
            )
        })
    }

    /// Picks the next node to expand: fewest branches first, then the
    /// largest drop in complexity, then earliest on the branch. `None` means
    /// the branch is saturated.
    pub fn select_node(&self, b: &Branch) -> Option<(usize, Reading)> {
        let mut best: Option<(usize, usize, isize)> = None;
        for (i, node) in b.nodes.iter().enumerate() {
            if node.expanded {
                continue;
            }
            let Some(head) = node.head() else { continue };
            let (width, drop) = self.selection_key(node, head);
            let better = match best {
                None => true,
                Some((_, w, d)) => width < w || (width == w && drop > d),
            };
            if better {
                best = Some((i, width, drop));
            }
        }
        best.map(|(i, _, _)| (i, b.nodes[i].reading().clone()))
    }

    /// Expands node `index` of `b` under its minimal reading. Daughters already
    /// on the branch are not re-added; if some child adds nothing, the branch
    /// already satisfies the rule and that child alone is returned.
    pub fn apply_rule_instance(&self, b: &Branch, index: usize) -> Result<Vec<Branch>> {
        let node = &b.nodes[index];
        if node.expanded {
            return Err(Error::AlreadyExpanded(node.signed.to_string()));
        }
        let head = node
            .head()
            .ok_or_else(|| Error::NotExpandable(node.signed.to_string()))?;
        let rule = self.rule(head);
        let daughters = self.daughters(node, rule);

        let mut parent = b.clone();
        parent.nodes[index].expanded = true;
        parent.status = BranchStatus::Open;
        parent.checked = b.nodes.len();
        let mut children = Vec::with_capacity(daughters.len());
        for set in daughters {
            let mut child = parent.clone();
            let mut added = false;
            for d in set {
                if self.config.check_descent {
                    let dc = BranchNode::new(d.clone(), self.calc).complexity();
                    if dc >= node.complexity() {
                        return Err(Error::DescentViolation {
                            head: node.signed.to_string(),
                            head_complexity: node.complexity(),
                            daughter: d.to_string(),
                            daughter_complexity: dc,
                        });
                    }
                }
                added |= child.push(d, self.calc);
            }
            if !added {
                return Ok(vec![child]);
            }
            children.push(child);
        }
        Ok(children)
    }

    /// Valuations of `atoms` satisfying every literal on a saturated branch,
    /// each checked to falsify `sequent`.
    pub fn extract_countermodels(&self, b: &Branch, sequent: &Sequent) -> Result<Vec<Valuation>> {
        let spec = self.calc.spec();
        let table = self.calc.table();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        let atoms = sequent.atoms();
        for atom in &atoms {
            let constraints: Vec<(usize, Sign)> = b
                .nodes
                .iter()
                .filter(|n| n.reading().core.as_atom() == Some(atom))
                .map(|n| (n.reading().position, n.signed.sign))
                .collect();
            let values: Vec<usize> = table.candidates(&constraints).collect();
            if values.is_empty() {
                return Err(Error::EmptyCandidates {
                    atom: atom.to_string(),
                    constraints,
                });
            }
            candidates.push(values);
        }
        let mut out = Vec::new();
        let total: usize = candidates.iter().map(Vec::len).product();
        for code in 0..total {
            let mut rest = code;
            let mut chosen = vec![0; atoms.len()];
            for (slot, values) in chosen.iter_mut().zip(&candidates).rev() {
                *slot = values[rest % values.len()];
                rest /= values.len();
            }
            let v: Valuation = atoms.iter().cloned().zip(chosen).collect();
            if !spec.falsifies(sequent, &v)? {
                return Err(Error::BogusCountermodel(v.display(spec).to_string()));
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn prove(&self, sequent: &Sequent) -> Result<ProofResult> {
        let root = Branch::for_sequent(self.calc, sequent);
        let mut tableau = Tableau {
            root: sequent.clone(),
            tree: vec![TreeNode {
                parent: None,
                added: root.nodes.iter().map(|n| n.signed.clone()).collect(),
                expansion: None,
                status: BranchStatus::Open,
                children: Vec::new(),
            }],
            stats: Statistics {
                nodes: root.nodes.len(),
                ..Statistics::default()
            },
            trace: Vec::new(),
        };
        let mut countermodels: Vec<Valuation> = Vec::new();
        let mut seen_models: HashSet<Valuation> = HashSet::new();
        let mut open = false;
        let mut stack = vec![root];

        while let Some(branch) = stack.pop() {
            let id = branch.id;
            let mut branch = branch;
            if let Some(m) = self.check_closure(&branch) {
                if self.config.trace {
                    tableau
                        .trace
                        .push(format!("CLOSE b{id} by {}", self.closure_name(&m)));
                }
                tableau.tree[id].status = BranchStatus::Closed(m);
                tableau.stats.closed += 1;
                continue;
            }
            branch.checked = branch.nodes.len();
            let Some((index, reading)) = self.select_node(&branch) else {
                if self.config.trace {
                    tableau.trace.push(format!("SATURATED b{id}"));
                }
                tableau.tree[id].status = BranchStatus::Saturated;
                tableau.stats.saturated += 1;
                open = true;
                let cap = self.config.max_countermodels.unwrap_or(usize::MAX);
                if countermodels.len() < cap {
                    for v in self.extract_countermodels(&branch, sequent)? {
                        if countermodels.len() >= cap {
                            break;
                        }
                        if seen_models.insert(v.clone()) {
                            countermodels.push(v);
                        }
                    }
                }
                continue;
            };
            let node = branch.nodes[index].signed.clone();
            let head = branch.nodes[index]
                .head()
                .expect("selected nodes have heads");
            let children = self.apply_rule_instance(&branch, index)?;
            tableau.stats.expansions += 1;
            if self.config.trace {
                tableau.trace.push(format!(
                    "EXPAND {node} via {} -> {} children",
                    rule_name(self.calc.spec(), head),
                    children.len()
                ));
            }
            tableau.tree[id].expansion = Some(Expansion {
                node,
                reading,
                head,
            });
            let base = branch.nodes.len();
            let mut ids = Vec::with_capacity(children.len());
            let mut staged = Vec::with_capacity(children.len());
            for mut child in children {
                let child_id = tableau.tree.len();
                child.id = child_id;
                let added: Vec<SignedFormula> = child.nodes[base..]
                    .iter()
                    .map(|n| n.signed.clone())
                    .collect();
                tableau.stats.nodes += added.len();
                tableau.tree.push(TreeNode {
                    parent: Some(id),
                    added,
                    expansion: None,
                    status: BranchStatus::Open,
                    children: Vec::new(),
                });
                ids.push(child_id);
                staged.push(child);
            }
            tableau.tree[id].children = ids;
            stack.extend(staged.into_iter().rev());
        }

        countermodels.sort();
        if open {
            Ok(ProofResult::Open {
                tableau,
                countermodels,
            })
        } else {
            Ok(ProofResult::Closed(tableau))
        }
    }

    fn closure_name(&self, m: &ClosureMatch) -> String {
        match m {
            ClosureMatch::Base(_) => "base".to_string(),
            ClosureMatch::Print { rule, .. } => match rule {
                ClosureId::Generated(i) => format!("CR{}", i + 1),
                ClosureId::Implied(i) => format!("CI{}", i + 1),
            },
            ClosureMatch::EmptyHead(node) => format!("empty rule at {node}"),
        }
    }
}

/// Proves `s` with the default configuration.
pub fn prove(calc: &Calculus, s: &Sequent) -> Result<ProofResult> {
    Prover::new(calc).prove(s)
}
