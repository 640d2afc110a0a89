//! Vector text format: one `index:value` pair per line, `#` starts a comment,
//! indices strictly increasing.

use std::fmt::Write as _;

use super::SparseVec;
use crate::error::{Error, Result};

pub fn parse_vector(text: &str) -> Result<SparseVec> {
    let mut pairs = Vec::new();
    let mut last: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (idx, val) = body.split_once(':').ok_or_else(|| err(format!("expected `index:value`, got `{body}`")))?;
        let index: usize = idx.trim().parse().map_err(|_| err(format!("bad index `{}`", idx.trim())))?;
        if index == 0 {
            return Err(err("indices start at 1".into()));
        }
        let value: f64 = val.trim().parse().map_err(|_| err(format!("bad value `{}`", val.trim())))?;
        if !value.is_finite() {
            return Err(err(format!("value `{}` is not finite", val.trim())));
        }
        if let Some(prev) = last {
            if index <= prev {
                return Err(err(format!("index {index} does not exceed previous index {prev}")));
            }
        }
        last = Some(index);
        pairs.push((index, value));
    }
    SparseVec::from_pairs(pairs)
}

/// Writes `x` in the text format, values in shortest round-trip form.
pub fn format_vector(x: &SparseVec) -> String {
    let mut out = String::new();
    for (i, v) in x.iter() {
        let _ = writeln!(out, "{i}:{v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let x = parse_vector("# header\n1:2\n\n3: -5.5  # trailing\n").unwrap();
        assert_eq!(x, SparseVec::from_pairs([(1, 2.0), (3, -5.5)]).unwrap());
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_vector("1:1\n1:2\n"),
            Err(Error::Parse { line: 2, message: "index 1 does not exceed previous index 1".into() })
        );
        assert!(matches!(parse_vector("# c\nfoo\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_vector("0:1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_vector("2:abc\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn zero_values_parse_but_are_dropped() {
        let x = parse_vector("1:0\n2:1\n").unwrap();
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn format_parses_back() {
        let x = SparseVec::from_pairs([(2, 0.1), (7, -3.0), (40, 1e-20)]).unwrap();
        assert_eq!(parse_vector(&format_vector(&x)).unwrap(), x);
    }
}
