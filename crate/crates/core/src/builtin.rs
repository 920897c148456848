//! Łukasiewicz logics built from their arithmetic definitions, without going
//! through a spec document.

use crate::logic::{Connective, LogicSpec};
use crate::parse::parse_pattern;
use crate::separators::{search_separators, SearchOutcome};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn label(i: usize, den: usize) -> String {
    if i == 0 || i == den {
        return (i / den).to_string();
    }
    let g = gcd(i, den);
    format!("{}/{}", i / g, den / g)
}

/// The `n`-valued Łukasiewicz logic over `neg` (`1 - v`) and `imp`
/// (`min(1, 1 - a + b)`), values listed in increasing order, `1` designated.
///
/// Separators: none for `n = 2`, `neg(#)` for `n = 3`,
/// `neg(#), neg(neg(imp(#,neg(#))))` for `n = 4`; otherwise whatever a depth-4
/// search finds (possibly none).
pub fn lukasiewicz(n: usize) -> LogicSpec {
    assert!(n >= 2, "a Łukasiewicz logic needs at least two values");
    let top = n - 1;
    let labels: Vec<String> = (0..n).map(|i| label(i, top)).collect();
    let neg = Connective::new("neg", 1, (0..n).map(|v| top - v).collect(), n)
        .expect("negation table is total");
    let imp_table = (0..n)
        .flat_map(|a| (0..n).map(move |b| top.min(top - a + b)))
        .collect();
    let imp = Connective::new("imp", 2, imp_table, n).expect("implication table is total");
    let name = if n == 2 {
        "classical".to_string()
    } else {
        format!("L{n}")
    };
    let spec = LogicSpec::new(name, labels, &[top], vec![neg, imp])
        .expect("Łukasiewicz logics are well formed")
        .with_notation(
            [("neg", "~"), ("imp", "-->")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        );
    let patterns: &[&str] = match n {
        2 => &[],
        3 => &["neg(#)"],
        4 => &["neg(#)", "neg(neg(imp(#,neg(#))))"],
        _ => {
            return match search_separators(&spec, 4) {
                SearchOutcome::Found(seps) => spec.with_separators(seps),
                SearchOutcome::NotFound => spec,
            }
        }
    };
    let seps = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| parse_pattern(p, i + 1, &spec).expect("builtin pattern parses"))
        .collect();
    spec.with_separators(seps)
}

pub fn classical() -> LogicSpec {
    lukasiewicz(2)
}
