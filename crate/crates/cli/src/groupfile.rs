//! `@file` group specs: `order N`, then `N` rows of `N` 0-based indices,
//! then an optional `labels` section. Lines starting with `#` are ignored.

use stein_core::groups::{build_catalog, FiniteGroup};

use crate::report::InputError;

pub fn parse_group_file(name: &str, text: &str) -> Result<FiniteGroup, InputError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| InputError("empty group file".into()))?;
    let order: usize = header
        .strip_prefix("order")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| InputError(format!("expected `order N`, found `{header}`")))?;
    if order == 0 {
        return Err(InputError("order must be positive".into()));
    }
    let mut table = Vec::with_capacity(order);
    for i in 0..order {
        let line = lines.next().ok_or_else(|| InputError(format!("missing table row {i}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| InputError(format!("bad entry `{t}` in row {i}"))))
            .collect::<Result<_, _>>()?;
        if row.len() != order {
            return Err(InputError(format!("row {i} has {} entries, expected {order}", row.len())));
        }
        table.push(row);
    }
    let labels = match lines.next() {
        None => None,
        Some("labels") => {
            let labels: Vec<String> = lines.by_ref().flat_map(|l| l.split_whitespace().map(String::from).collect::<Vec<_>>()).collect();
            if labels.len() != order {
                return Err(InputError(format!("{} labels for {order} elements", labels.len())));
            }
            Some(labels)
        }
        Some(other) => return Err(InputError(format!("unexpected line `{other}`"))),
    };
    FiniteGroup::from_table(name, table, labels).map_err(|e| InputError(e.to_string()))
}

/// Catalog spec or `@path`.
pub fn load_group(spec: &str) -> Result<FiniteGroup, InputError> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
            parse_group_file(path, &text)
        }
        None => build_catalog(spec).map_err(|e| InputError(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_klein() {
        let text = "order 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\nlabels\ne a b ab\n";
        let g = parse_group_file("v4", text).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.label(3), "ab");
        assert!(parse_group_file("x", "order 2\n0 1\n1 1\n").is_err());
        assert!(parse_group_file("x", "order 2\n0 1\n").is_err());
        assert!(parse_group_file("x", "ord 2").is_err());
    }
}
