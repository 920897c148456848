//! Rendering of calculi: a plain listing, and a sequent-style theory document
//! with `$H`/`$G` context markers, closure axioms and separator rewrites.

use std::fmt::Write;

use crate::calculus::{Calculus, ClosureRule, RuleHead, SchemaNode, TableauRule};
use crate::logic::{Formula, LogicSpec, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Text,
    Theory,
}

pub fn emit(calc: &Calculus, format: EmitFormat) -> String {
    match format {
        EmitFormat::Text => emit_text(calc),
        EmitFormat::Theory => emit_theory(calc),
    }
}

/// `FNeg`, `Tt1Neg`, `Tt2Imp`, ...
pub fn rule_name(spec: &LogicSpec, head: RuleHead) -> String {
    let conn = &spec.connectives()[head.connective].name;
    let mut chars = conn.chars();
    let capitalized: String = chars
        .next()
        .map(|c| c.to_ascii_uppercase())
        .into_iter()
        .chain(chars)
        .collect();
    match head.position {
        0 => format!("{}{capitalized}", head.sign),
        i => format!("{}t{i}{capitalized}", head.sign),
    }
}

fn schema_args(arity: usize) -> Vec<Formula> {
    (0..arity)
        .map(|i| Formula::atom(&format!("A{i}")))
        .collect()
}

fn schema_head(spec: &LogicSpec, head: RuleHead) -> Formula {
    let conn = &spec.connectives()[head.connective];
    Formula::apply(head.connective, conn.name.clone(), schema_args(conn.arity))
}

/// Renders with the logic's notation. `compact` drops spaces and parentheses
/// around unary operands (`~~(A0-->~A0)`); otherwise unary operands are
/// parenthesized and infix operators spaced (`~(A0)`, `A0 --> A1`).
fn render(spec: &LogicSpec, f: &Formula, compact: bool) -> String {
    let Some(app) = f.as_app() else {
        return f.to_string();
    };
    let glyph = spec.notation(&app.name);
    match (glyph, app.args.as_slice()) {
        (Some(g), [arg]) => {
            let inner = render(spec, arg, compact);
            if compact && !is_infix(spec, arg) {
                format!("{g}{inner}")
            } else {
                format!("{g}({inner})")
            }
        }
        (Some(g), [a, b]) => {
            let side = |x: &Formula| {
                let s = render(spec, x, compact);
                if is_infix(spec, x) {
                    format!("({s})")
                } else {
                    s
                }
            };
            if compact {
                format!("{}{g}{}", side(a), side(b))
            } else {
                format!("{} {g} {}", side(a), side(b))
            }
        }
        _ => {
            let args: Vec<String> = app.args.iter().map(|a| render(spec, a, compact)).collect();
            format!("{}({})", app.name, args.join(", "))
        }
    }
}

fn is_infix(spec: &LogicSpec, f: &Formula) -> bool {
    f.as_app()
        .is_some_and(|app| app.args.len() == 2 && spec.notation(&app.name).is_some())
}

fn head_text(spec: &LogicSpec, head: RuleHead) -> String {
    let core = render(spec, &schema_head(spec, head), false);
    match head.position {
        0 => format!("{}:{core}", head.sign),
        i => format!("{}:t{i}({core})", head.sign),
    }
}

fn branch_text(branch: &[SchemaNode]) -> String {
    branch
        .iter()
        .map(SchemaNode::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn emit_text(calc: &Calculus) -> String {
    let spec = calc.spec();
    let mut out = String::new();
    let labels: Vec<&str> = spec.values().iter().map(|v| v.label.as_str()).collect();
    let designated: Vec<&str> = spec.designated().map(|v| spec.label(v)).collect();
    writeln!(out, "logic {}", spec.name).unwrap();
    writeln!(out, "values: {}", labels.join(", ")).unwrap();
    writeln!(out, "designated: {}", designated.join(", ")).unwrap();

    writeln!(out, "\nseparators:").unwrap();
    if calc.separators().is_empty() {
        writeln!(out, "  (none)").unwrap();
    }
    for s in calc.separators() {
        writeln!(
            out,
            "  t{}(A) = {}",
            s.index,
            s.instantiate(&Formula::atom("A"))
        )
        .unwrap();
    }

    writeln!(out, "\nprints:").unwrap();
    let label_width = labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(1)
        .max(5);
    let mut header = format!("  {:label_width$}  A", "value");
    for s in calc.separators() {
        write!(header, "  t{}", s.index).unwrap();
    }
    writeln!(out, "{}", header.trim_end()).unwrap();
    for (v, print) in calc.table().prints().iter().enumerate() {
        let mut row = format!("  {:label_width$}", spec.label(v));
        for (i, sign) in print.0.iter().enumerate() {
            let w = if i == 0 { 1 } else { 1 + i.to_string().len() };
            write!(row, "  {sign:w$}").unwrap();
        }
        writeln!(out, "{}", row.trim_end()).unwrap();
    }

    writeln!(out, "\nrules:").unwrap();
    for (raw, simple) in calc.rules().iter().zip(calc.simplified_rules()) {
        writeln!(
            out,
            "  {}  {}",
            rule_name(spec, raw.head),
            head_text(spec, raw.head)
        )
        .unwrap();
        if raw.is_immediate_closure() {
            writeln!(out, "    closes immediately").unwrap();
            continue;
        }
        for b in &raw.branches {
            writeln!(out, "    | {}", branch_text(b)).unwrap();
        }
        if simple != raw {
            writeln!(out, "    simplified:").unwrap();
            for b in &simple.branches {
                writeln!(out, "    | {}", branch_text(b)).unwrap();
            }
        }
    }

    writeln!(out, "\nclosure rules:").unwrap();
    writeln!(out, "  base  {{T:A, F:A}}").unwrap();
    for (i, r) in calc.closure_rules().iter().enumerate() {
        writeln!(out, "  CR{}  {r}", i + 1).unwrap();
    }
    if calc.simplified_closure_rules() != calc.closure_rules() {
        writeln!(out, "  simplified:").unwrap();
        for r in calc.simplified_closure_rules() {
            writeln!(out, "    {r}").unwrap();
        }
    }
    if !calc.implied_closure_rules().is_empty() {
        writeln!(out, "  implied:").unwrap();
        for r in calc.implied_closure_rules() {
            writeln!(out, "    {r}").unwrap();
        }
    }
    out
}

fn theory_node(spec: &LogicSpec, sign: Sign, position: usize, arg: &Formula) -> String {
    let arg = render(spec, arg, false);
    match position {
        0 => format!("{sign}:{arg}"),
        i => format!("{sign}:t{i}({arg})"),
    }
}

fn theory_rule(spec: &LogicSpec, rule: &TableauRule) -> String {
    let name = rule_name(spec, rule.head);
    let args = schema_args(spec.connectives()[rule.head.connective].arity);
    let goal = format!("[ $H, {}, $G ]", head_text(spec, rule.head));
    if rule.is_immediate_closure() {
        return format!(
            "{name}: \"{}\"",
            goal.replace("$H", "$C1").replace("$G", "$C2")
        );
    }
    let indent = " ".repeat(name.len() + 2);
    let subgoals: Vec<String> = rule
        .branches
        .iter()
        .map(|b| {
            let nodes: Vec<String> = b
                .iter()
                .map(|n| theory_node(spec, n.sign, n.position, &args[n.slot]))
                .collect();
            format!("[ $H, {}, $G ]", nodes.join(", "))
        })
        .collect();
    format!(
        "{name}: \"[| {} |]\n{indent}   ==> {goal}\"",
        subgoals.join(&format!(" ;\n{indent}    "))
    )
}

fn theory_axiom(name: &str, rule: &ClosureRule) -> String {
    let mut parts = vec!["$C1".to_string()];
    for (i, n) in rule.nodes.iter().enumerate() {
        parts.push(n.to_string());
        parts.push(format!("$C{}", i + 2));
    }
    format!("{name}: \"[ {} ]\"", parts.join(", "))
}

pub fn emit_theory(calc: &Calculus) -> String {
    let spec = calc.spec();
    let theory: String = spec
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let mut out = String::new();
    writeln!(out, "(* tableau theory for {} *)", spec.name).unwrap();
    writeln!(out, "theory {theory}\n").unwrap();

    writeln!(out, "(* separator rewrites *)").unwrap();
    for s in calc.separators() {
        let body = render(spec, &s.instantiate(&Formula::atom("A0")), true);
        writeln!(out, "t{}_def: \"S:{body} == S:t{}(A0)\"", s.index, s.index).unwrap();
    }

    writeln!(out, "\n(* expansion rules *)").unwrap();
    for rule in calc.rules() {
        writeln!(out, "{}\n", theory_rule(spec, rule)).unwrap();
    }

    writeln!(out, "(* closure rules *)").unwrap();
    writeln!(out, "Ax: \"[ $C1, T:A, $C2, F:A, $C3 ]\"").unwrap();
    for (i, r) in calc.closure_rules().iter().enumerate() {
        writeln!(out, "{}", theory_axiom(&format!("CR{}", i + 1), r)).unwrap();
    }

    if !calc.separators().is_empty() {
        let order: Vec<String> = calc
            .separators()
            .iter()
            .rev()
            .map(|s| format!("(rewrite_goals_tac [t{}_def])", s.index))
            .collect();
        writeln!(out, "\n(* ordered separator recognition *)").unwrap();
        writeln!(
            out,
            "val auto_rw = {};",
            order.join(" THEN\n              ")
        )
        .unwrap();
    }
    writeln!(out, "\nend").unwrap();
    out
}
