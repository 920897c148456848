//! Spec documents (JSON), formulas and sequents.
//!
//! Formulas use prefix application: `imp(p,neg(q))`. Atoms match
//! `[a-z][a-z0-9_]*`. A sequent is `f1, ..., fn |- g`; the premise list may be
//! empty.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::logic::{Connective, Formula, LogicSpec, Sequent, PLACEHOLDER};
use crate::separators::SeparatorPattern;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    name: String,
    values: Vec<String>,
    designated: Vec<String>,
    connectives: Vec<ConnectiveDocument>,
    #[serde(default)]
    separators: Vec<String>,
    #[serde(default)]
    notation: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectiveDocument {
    name: String,
    arity: usize,
    table: Value,
}

pub fn parse_logic_spec(text: &str) -> Result<LogicSpec> {
    let doc: SpecDocument = serde_json::from_str(text)?;
    let n = doc.values.len();
    let lookup = |label: &str, what: &str| -> Result<usize> {
        doc.values
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::InvalidLogic(format!("{what} refers to unknown value `{label}`")))
    };

    let mut designated = Vec::with_capacity(doc.designated.len());
    for label in &doc.designated {
        designated.push(lookup(label, "designated set")?);
    }

    let mut connectives = Vec::with_capacity(doc.connectives.len());
    for c in &doc.connectives {
        if !is_identifier(&c.name) {
            return Err(Error::InvalidLogic(format!(
                "connective name `{}` is not an identifier",
                c.name
            )));
        }
        let mut table = Vec::new();
        flatten_table(&c.table, c.arity, n, &c.name, &lookup, &mut table)?;
        connectives.push(Connective::new(&c.name, c.arity, table, n)?);
    }

    let spec = LogicSpec::new(doc.name, doc.values.clone(), &designated, connectives)?;
    for name in doc.notation.keys() {
        if spec.connective(name).is_none() {
            return Err(Error::InvalidLogic(format!(
                "notation given for undeclared connective `{name}`"
            )));
        }
    }
    let separators = doc
        .separators
        .iter()
        .enumerate()
        .map(|(i, text)| parse_pattern(text, i + 1, &spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(spec.with_separators(separators).with_notation(doc.notation))
}

fn flatten_table(
    node: &Value,
    depth: usize,
    n: usize,
    name: &str,
    lookup: &dyn Fn(&str, &str) -> Result<usize>,
    out: &mut Vec<usize>,
) -> Result<()> {
    if depth == 0 {
        let label = node.as_str().ok_or_else(|| {
            Error::InvalidLogic(format!(
                "truth table of `{name}` has a non-string entry {node}"
            ))
        })?;
        out.push(lookup(label, &format!("truth table of `{name}`"))?);
        return Ok(());
    }
    let rows = node.as_array().ok_or_else(|| {
        Error::InvalidLogic(format!(
            "truth table of `{name}` is nested less deeply than its arity"
        ))
    })?;
    if rows.len() != n {
        return Err(Error::InvalidLogic(format!(
            "truth table of `{name}` has a row of length {}, expected {n}",
            rows.len()
        )));
    }
    for row in rows {
        flatten_table(row, depth - 1, n, name, lookup, out)?;
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

pub fn parse_formula(text: &str, spec: &LogicSpec) -> Result<Formula> {
    let mut p = Parser::new(text, spec, false);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a separator pattern body, with `#` standing for the argument.
pub fn parse_pattern(text: &str, index: usize, spec: &LogicSpec) -> Result<SeparatorPattern> {
    let mut p = Parser::new(text, spec, true);
    let body = p.formula().map_err(|e| Error::BadPattern {
        pattern: text.to_string(),
        reason: e.to_string(),
    })?;
    p.finish().map_err(|e| Error::BadPattern {
        pattern: text.to_string(),
        reason: e.to_string(),
    })?;
    SeparatorPattern::new(index, body)
}

pub fn parse_sequent(text: &str, spec: &LogicSpec) -> Result<Sequent> {
    let mut p = Parser::new(text, spec, false);
    let mut premises = Vec::new();
    p.skip_ws();
    if !p.peek_turnstile() {
        loop {
            premises.push(p.formula()?);
            p.skip_ws();
            if p.eat(',') {
                continue;
            }
            break;
        }
    }
    p.skip_ws();
    if !p.peek_turnstile() {
        return Err(p.error("expected `|-`"));
    }
    p.pos += 2;
    let conclusion = p.formula()?;
    p.finish()?;
    Ok(Sequent::new(premises, conclusion))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    spec: &'a LogicSpec,
    allow_placeholder: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, spec: &'a LogicSpec, allow_placeholder: bool) -> Self {
        Parser {
            text,
            pos: 0,
            spec,
            allow_placeholder,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn peek_turnstile(&self) -> bool {
        self.rest().starts_with("|-")
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn formula(&mut self) -> Result<Formula> {
        self.skip_ws();
        if self.rest().starts_with(PLACEHOLDER) {
            if !self.allow_placeholder {
                return Err(self.error("placeholder `#` is only allowed in separator patterns"));
            }
            self.pos += PLACEHOLDER.len();
            return Ok(Formula::placeholder());
        }
        let start = self.pos;
        let name = self
            .ident()
            .ok_or_else(|| self.error("expected a formula"))?;
        if self.eat('(') {
            let mut args = Vec::new();
            if !self.eat(')') {
                loop {
                    args.push(self.formula()?);
                    if self.eat(',') {
                        continue;
                    }
                    if self.eat(')') {
                        break;
                    }
                    return Err(self.error("expected `,` or `)`"));
                }
            }
            return self.spec.app(name, args).map_err(|e| match e {
                Error::UnknownConnective(_) | Error::Arity { .. } => Error::Syntax {
                    pos: start,
                    msg: e.to_string(),
                },
                other => other,
            });
        }
        if self.spec.connective(name).is_some() {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("connective `{name}` used without arguments"),
            });
        }
        if !is_atom_name(name) {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("`{name}` is not a valid atom name"),
            });
        }
        Ok(Formula::atom(name))
    }
}
