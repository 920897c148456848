//! Finite-valued logics, formulas, evaluation and the brute-force entailment oracle.
//!
//! Truth values are identified by their 0-based position in the logic's value
//! list; labels are display metadata only. Connectives carry extensional truth
//! tables, so evaluation is a sequence of table lookups.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::separators::SeparatorPattern;

/// Atom name reserved for the argument slot of separator patterns.
pub const PLACEHOLDER: &str = "#";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthValue {
    pub index: usize,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    F,
    T,
}

impl Sign {
    pub fn complement(self) -> Sign {
        match self {
            Sign::F => Sign::T,
            Sign::T => Sign::F,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Sign::F => "F",
            Sign::T => "T",
        })
    }
}

/// An `arity`-ary operator over value indices, stored as a flat row-major
/// table (first argument outermost).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connective {
    pub name: Arc<str>,
    pub arity: usize,
    table: Vec<usize>,
}

impl Connective {
    /// Builds a connective, checking that the table is total over `num_values`.
    pub fn new(name: &str, arity: usize, table: Vec<usize>, num_values: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidLogic(format!(
                "connective `{name}` must have arity >= 1"
            )));
        }
        let expected = num_values
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::InvalidLogic(format!("truth table of `{name}` is too large")))?;
        if table.len() != expected {
            return Err(Error::InvalidLogic(format!(
                "truth table of `{name}` has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= num_values) {
            return Err(Error::InvalidLogic(format!(
                "truth table of `{name}` refers to value index {bad}"
            )));
        }
        Ok(Connective {
            name: name.into(),
            arity,
            table,
        })
    }

    pub fn apply(&self, args: &[usize], num_values: usize) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * num_values + a);
        self.table[idx]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Application {
    pub connective: usize,
    pub name: Arc<str>,
    pub args: Vec<Formula>,
    complexity: usize,
    // structural hash, fixed at construction
    digest: u64,
}

/// A propositional formula. Cloning is cheap; subterms are shared.
#[derive(Debug, Clone, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    App(Arc<Application>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::App(a), Formula::App(b)) => {
                Arc::ptr_eq(a, b) || (a.digest == b.digest && a == b)
            }
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.digest());
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn placeholder() -> Formula {
        Formula::atom(PLACEHOLDER)
    }

    /// Applies connective number `connective`, trusting the caller on arity.
    pub fn apply(connective: usize, name: Arc<str>, args: Vec<Formula>) -> Formula {
        let complexity = 1 + args.iter().map(Formula::complexity).sum::<usize>();
        let mut hasher = DefaultHasher::new();
        connective.hash(&mut hasher);
        for a in &args {
            hasher.write_u64(a.digest());
        }
        Formula::App(Arc::new(Application {
            connective,
            name,
            args,
            complexity,
            digest: hasher.finish(),
        }))
    }

    fn digest(&self) -> u64 {
        match self {
            Formula::Atom(name) => {
                let mut hasher = DefaultHasher::new();
                name.hash(&mut hasher);
                hasher.finish()
            }
            Formula::App(app) => app.digest,
        }
    }

    /// Canonical complexity: atoms count 0, every connective occurrence counts 1.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::App(app) => app.complexity,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::App(app) => 1 + app.args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&Arc<str>> {
        match self {
            Formula::Atom(name) => Some(name),
            Formula::App(_) => None,
        }
    }

    pub fn as_app(&self) -> Option<&Application> {
        match self {
            Formula::Atom(_) => None,
            Formula::App(app) => Some(app),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::App(app) => app.args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Replaces every occurrence of atom `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Formula) -> Formula {
        match self {
            Formula::Atom(a) if &**a == name => by.clone(),
            Formula::Atom(_) => self.clone(),
            Formula::App(app) => Formula::apply(
                app.connective,
                app.name.clone(),
                app.args.iter().map(|a| a.substitute(name, by)).collect(),
            ),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::App(app) => {
                write!(f, "{}(", app.name)?;
                for (i, arg) in app.args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedFormula {
    pub sign: Sign,
    pub formula: Formula,
}

impl SignedFormula {
    pub fn new(sign: Sign, formula: Formula) -> Self {
        SignedFormula { sign, formula }
    }
}

impl fmt::Display for SignedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sign, self.formula)
    }
}

/// Assignment of value indices to atom names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<Arc<str>, usize>);

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn set(&mut self, atom: impl Into<Arc<str>>, value: usize) {
        self.0.insert(atom.into(), value);
    }

    pub fn get(&self, atom: &str) -> Option<usize> {
        self.0.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, &v)| (&**k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renders as `{p↦1/3, q↦0}` using the logic's labels.
    pub fn display<'a>(&'a self, spec: &'a LogicSpec) -> impl fmt::Display + 'a {
        DisplayValuation {
            valuation: self,
            spec,
        }
    }
}

impl<K: Into<Arc<str>>> FromIterator<(K, usize)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (K, usize)>>(iter: I) -> Self {
        Valuation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

struct DisplayValuation<'a> {
    valuation: &'a Valuation,
    spec: &'a LogicSpec,
}

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (atom, v)) in self.valuation.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}↦{}", self.spec.label(v))?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        Sequent {
            premises,
            conclusion,
        }
    }

    /// Atoms occurring anywhere in the sequent, sorted by name.
    pub fn atoms(&self) -> Vec<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in self
            .premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
        {
            f.collect_atoms(&mut out);
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

/// A finite-valued logic: values, designated set, connectives and the
/// separating formulas used to build its tableau calculus.
#[derive(Debug, Clone)]
pub struct LogicSpec {
    pub name: String,
    values: Vec<TruthValue>,
    designated: Vec<bool>,
    connectives: Vec<Connective>,
    separators: Vec<SeparatorPattern>,
    notation: BTreeMap<String, String>,
    by_name: HashMap<Arc<str>, usize>,
}

impl LogicSpec {
    /// Assembles a logic from labels, checking every structural invariant.
    /// Separators are attached afterwards with [`LogicSpec::with_separators`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        designated: &[usize],
        connectives: Vec<Connective>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidLogic(format!("duplicate value `{label}`")));
            }
        }
        let n = labels.len();
        let mut flags = vec![false; n];
        for &d in designated {
            if d >= n {
                return Err(Error::InvalidLogic(format!(
                    "designated value index {d} out of range"
                )));
            }
            flags[d] = true;
        }
        if !flags.iter().any(|&d| d) {
            return Err(Error::InvalidLogic("no designated value".into()));
        }
        if flags.iter().all(|&d| d) {
            return Err(Error::InvalidLogic("no undesignated value".into()));
        }
        let mut by_name = HashMap::new();
        for (i, c) in connectives.iter().enumerate() {
            if c.table.len() != n.pow(c.arity as u32) || c.table.iter().any(|&v| v >= n) {
                return Err(Error::InvalidLogic(format!(
                    "truth table of `{}` does not match {n} values",
                    c.name
                )));
            }
            if by_name.insert(c.name.clone(), i).is_some() {
                return Err(Error::InvalidLogic(format!(
                    "duplicate connective `{}`",
                    c.name
                )));
            }
        }
        Ok(LogicSpec {
            name: name.into(),
            values: labels
                .into_iter()
                .enumerate()
                .map(|(index, label)| TruthValue { index, label })
                .collect(),
            designated: flags,
            connectives,
            separators: Vec::new(),
            notation: BTreeMap::new(),
            by_name,
        })
    }

    pub fn with_separators(mut self, separators: Vec<SeparatorPattern>) -> Self {
        self.separators = separators;
        self
    }

    pub fn with_notation(mut self, notation: BTreeMap<String, String>) -> Self {
        self.notation = notation;
        self
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn num_values(&self) -> usize {
        self.values.len()
    }

    pub fn label(&self, value: usize) -> &str {
        &self.values[value].label
    }

    pub fn value_by_label(&self, label: &str) -> Option<usize> {
        self.values.iter().position(|v| v.label == label)
    }

    pub fn is_designated(&self, value: usize) -> bool {
        self.designated[value]
    }

    pub fn designated(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.values.len()).filter(|&v| self.designated[v])
    }

    pub fn sign_of(&self, value: usize) -> Sign {
        if self.designated[value] {
            Sign::T
        } else {
            Sign::F
        }
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }

    pub fn connective(&self, name: &str) -> Option<(usize, &Connective)> {
        self.by_name.get(name).map(|&i| (i, &self.connectives[i]))
    }

    pub fn separators(&self) -> &[SeparatorPattern] {
        &self.separators
    }

    /// Display glyph for a connective, if the logic declares one.
    pub fn notation(&self, connective: &str) -> Option<&str> {
        self.notation.get(connective).map(String::as_str)
    }

    /// Applies a declared connective, checking arity.
    pub fn app(&self, name: &str, args: Vec<Formula>) -> Result<Formula> {
        let (idx, conn) = self
            .connective(name)
            .ok_or_else(|| Error::UnknownConnective(name.to_string()))?;
        if conn.arity != args.len() {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: conn.arity,
                found: args.len(),
            });
        }
        Ok(Formula::apply(idx, conn.name.clone(), args))
    }

    /// Evaluates `f` under `v` by recursive table lookup.
    pub fn eval(&self, f: &Formula, v: &Valuation) -> Result<usize> {
        match f {
            Formula::Atom(name) => v
                .get(name)
                .ok_or_else(|| Error::MissingAtom(name.to_string())),
            Formula::App(app) => {
                let mut args = Vec::with_capacity(app.args.len());
                for a in &app.args {
                    args.push(self.eval(a, v)?);
                }
                Ok(self.connectives[app.connective].apply(&args, self.num_values()))
            }
        }
    }

    /// Evaluates a unary pattern at `value`, binding the placeholder.
    pub(crate) fn eval_pattern(&self, pattern: &Formula, value: usize) -> usize {
        match pattern {
            Formula::Atom(_) => value,
            Formula::App(app) => {
                let args: Vec<usize> = app
                    .args
                    .iter()
                    .map(|a| self.eval_pattern(a, value))
                    .collect();
                self.connectives[app.connective].apply(&args, self.num_values())
            }
        }
    }

    /// True iff `v` designates every premise and leaves the conclusion undesignated.
    pub fn falsifies(&self, s: &Sequent, v: &Valuation) -> Result<bool> {
        for p in &s.premises {
            if !self.is_designated(self.eval(p, v)?) {
                return Ok(false);
            }
        }
        Ok(!self.is_designated(self.eval(&s.conclusion, v)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Every falsifying valuation, in lexicographic (atom, value) order.
    Invalid(Vec<Valuation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Iterates over all `num_values^atoms.len()` valuations of `atoms`, first atom
/// most significant.
pub fn valuations(atoms: &[Arc<str>], num_values: usize) -> impl Iterator<Item = Valuation> + '_ {
    let total = num_values.pow(atoms.len() as u32);
    (0..total).map(move |mut code| {
        let mut assignment = vec![0; atoms.len()];
        for slot in assignment.iter_mut().rev() {
            *slot = code % num_values;
            code /= num_values;
        }
        atoms.iter().cloned().zip(assignment).collect()
    })
}

/// Brute-force entailment: `s` is valid iff no valuation designates every
/// premise while leaving the conclusion undesignated.
pub fn oracle_entails(spec: &LogicSpec, s: &Sequent) -> Verdict {
    let atoms = s.atoms();
    let witnesses: Vec<Valuation> = valuations(&atoms, spec.num_values())
        .filter(|v| {
            spec.falsifies(s, v)
                .expect("valuation covers sequent atoms")
        })
        .collect();
    if witnesses.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(witnesses)
    }
}
