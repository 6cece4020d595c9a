//! Truth-table text format.
//!
//! ```text
//! 2
//! 1 2 4 3
//! ```
//!
//! The first non-empty line holds the arity `n`; the remaining tokens are the
//! `2^n` values (integers, decimals or `p/q`) in index order, `x_1` being the
//! least significant bit. The JSON form is the serde encoding of
//! [`FunctionTable`]: `{"arity": 2, "values": ["1", "2", "4", "3"]}`.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::table::FunctionTable;

pub fn parse_table_text(text: &str) -> Result<FunctionTable> {
    let mut tokens = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut pos = 0;
        for tok in content.split_whitespace() {
            let at = content[pos..].find(tok).map(|i| i + pos).unwrap_or(pos);
            pos = at + tok.len();
            tokens.push((offset + at, tok));
        }
        offset += line.len();
    }
    let mut iter = tokens.into_iter();
    let (pos, head) = iter
        .next()
        .ok_or_else(|| Error::parse(0, "empty input, expected arity"))?;
    let arity: usize = head
        .parse()
        .map_err(|_| Error::parse(pos, format!("invalid arity {head:?}")))?;
    let values = iter
        .map(|(pos, tok)| {
            Rational::parse_literal(tok).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(pos, message),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FunctionTable::new(arity, values)
}

pub fn to_table_text(f: &FunctionTable) -> String {
    let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    format!("{}\n{}\n", f.arity(), values.join(" "))
}

pub fn parse_table_json(text: &str) -> Result<FunctionTable> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_literals() {
        let f = parse_table_text("2\n1 1/2 0.25 -3\n").unwrap();
        assert_eq!(f.to_string(), "[1,1/2,1/4,-3]");
        assert_eq!(parse_table_text(&to_table_text(&f)).unwrap(), f);
    }

    #[test]
    fn allows_comments_and_wrapping() {
        let f = parse_table_text("# staircase\n2\n0 1\n1 0\n").unwrap();
        assert_eq!(f.arity(), 2);
    }

    #[test]
    fn reports_positions() {
        match parse_table_text("2\n1 2 x 3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_table_text("2\n1 2 3"), Err(Error::TableLength { .. })));
        assert!(parse_table_text("").is_err());
        assert!(matches!(parse_table_text("25\n0"), Err(Error::ArityTooLarge(25))));
    }

    #[test]
    fn json_round_trip() {
        let f = parse_table_json(r#"{"arity": 1, "values": ["1/3", 2]}"#).unwrap();
        assert_eq!(f.to_string(), "[1/3,2]");
    }
}
