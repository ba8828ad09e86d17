//! Census configuration: one spec per line, `#` starts a comment, and an
//! optional `| budget=<ms>` suffix overrides the search budget for that ring.

use crate::error::{Error, Result};

use super::parse::{parse_ring_spec, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub spec: RingSpec,
    pub budget_ms: Option<u64>,
}

impl CensusEntry {
    pub fn new(spec: RingSpec) -> Self {
        CensusEntry { spec, budget_ms: None }
    }
}

/// Syntax errors report byte offsets into `text`.
pub fn parse_census_config(text: &str) -> Result<Vec<CensusEntry>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (lineno, raw) in text.split_inclusive('\n').enumerate() {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']).split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (spec_text, opts) = match line.split_once('|') {
            Some((s, o)) => (s, Some(o)),
            None => (line, None),
        };
        let at = |e: Error, base: usize| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: line_start + base + pos, msg: format!("line {}: {msg}", lineno + 1) },
            other => other,
        };
        let spec = parse_ring_spec(spec_text).map_err(|e| at(e, 0))?;
        let mut budget_ms = None;
        if let Some(opts) = opts {
            let base = spec_text.len() + 1;
            for item in opts.split(',').filter(|s| !s.trim().is_empty()) {
                let bad = || at(Error::Syntax { pos: 0, msg: format!("bad option {:?}", item.trim()) }, base);
                let (key, value) = item.split_once('=').ok_or_else(bad)?;
                match key.trim() {
                    "budget" => budget_ms = Some(value.trim().parse::<u64>().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
        }
        out.push(CensusEntry { spec, budget_ms });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_budgets() {
        let text = "# header\n\nZ6   # trailing\nGF(2)*Z4 | budget=500\n";
        let e = parse_census_config(text).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].spec.label(), "Z6");
        assert_eq!(e[0].budget_ms, None);
        assert_eq!(e[1].budget_ms, Some(500));
    }

    #[test]
    fn errors_point_into_the_file() {
        let text = "Z6\nZ6*\n";
        match parse_census_config(text) {
            Err(Error::Syntax { pos, msg }) => {
                assert_eq!(pos, 6);
                assert!(msg.starts_with("line 2"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_census_config("Z6 | budget=x").is_err());
        assert!(parse_census_config("Z6 | speed=1").is_err());
    }
}
