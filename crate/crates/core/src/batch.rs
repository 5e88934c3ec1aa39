//! Line-oriented input records.
//!
//! ```text
//! # quaternion data
//! q1=-1,-1 q2=2,3 q3=-1,-1 q4=2,3 c=-1 field=Q
//! # Tits data, phi3 a prefix of phi5
//! gamma3=-1,-1,-1 phi3=-1,-1,-1 phi5=-1,-1,-1,-1,-1 field=R
//! ```
//!
//! `field` defaults to `Q`. Blank lines and text after `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::e8kill::{E8Input, KillError, TitsInput};
use crate::qform::{parse_ints, BaseField, FormError, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct BatchError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Record {
    E8(E8Input),
    Tits(TitsInput),
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Record::E8(i) => write!(
                f,
                "q1={} q2={} q3={} q4={} c={} field={}",
                i.q[0], i.q[1], i.q[2], i.q[3], i.c, i.field
            ),
            Record::Tits(t) => write!(
                f,
                "gamma3={} phi3={} phi5={} field={}",
                join(&t.gamma3),
                join(&t.phi3),
                join(&t.phi5),
                t.field
            ),
        }
    }
}

fn fixed<const N: usize>(key: &str, v: &str) -> Result<[i64; N], String> {
    let ints = parse_ints(v).map_err(|e| e.to_string())?;
    ints.try_into().map_err(|got: Vec<i64>| format!("{key} needs {N} entries, got {}", got.len()))
}

fn parse_fields(body: &str) -> Result<Option<Record>, String> {
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for tok in body.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got `{tok}`"))?;
        if kv.insert(k, v).is_some() {
            return Err(format!("duplicate key `{k}`"));
        }
    }
    if kv.is_empty() {
        return Ok(None);
    }
    let field: BaseField = match kv.remove("field") {
        Some(f) => f.parse().map_err(|e: FormError| e.to_string())?,
        None => BaseField::Q,
    };
    let kill = |e: KillError| e.to_string();
    let record = if kv.contains_key("gamma3") {
        let mut take = |k: &str| kv.remove(k).ok_or_else(|| format!("missing `{k}`"));
        let (g, p3, p5) = (take("gamma3")?, take("phi3")?, take("phi5")?);
        Record::Tits(TitsInput::new(field, fixed("gamma3", g)?, fixed("phi3", p3)?, fixed("phi5", p5)?).map_err(kill)?)
    } else {
        let mut take = |k: &str| kv.remove(k).ok_or_else(|| format!("missing `{k}`"));
        let mut q = [Quaternion::split(); 4];
        for (i, slot) in q.iter_mut().enumerate() {
            *slot = take(&format!("q{}", i + 1))?.parse().map_err(|e: FormError| e.to_string())?;
        }
        let [c] = fixed::<1>("c", take("c")?)?;
        Record::E8(E8Input::new(field, q, c).map_err(kill)?)
    };
    if let Some(k) = kv.keys().next() {
        return Err(format!("unknown key `{k}`"));
    }
    Ok(Some(record))
}

/// Parses one line; `Ok(None)` for blank and comment lines.
pub fn parse_record(text: &str, line: usize) -> Result<Option<Record>, BatchError> {
    let body = text.split('#').next().unwrap_or("");
    parse_fields(body).map_err(|message| BatchError { line, message })
}

/// Parses every line independently, numbering lines from 1.
pub fn parse_batch(text: &str) -> Vec<Result<(usize, Record), BatchError>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| parse_record(l, i + 1).map(|r| r.map(|rec| (i + 1, rec))).transpose())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let line = "q1=-1,-1 q2=2,3 q3=-1,-1 q4=2,3 c=-1 field=Q";
        let rec = parse_record(line, 1).unwrap().unwrap();
        assert_eq!(rec.to_string(), line);
        let tits = "gamma3=-1,-1,-1 phi3=-1,-1,-1 phi5=-1,-1,-1,-1,-1 field=R";
        assert_eq!(parse_record(tits, 1).unwrap().unwrap().to_string(), tits);
    }

    #[test]
    fn comments_and_defaults() {
        assert_eq!(parse_record("   # nothing", 3), Ok(None));
        let rec = parse_record("c=6 q4=1,1 q3=1,1 q2=1,1 q1=5,7 # trailing", 1).unwrap().unwrap();
        assert_eq!(rec.to_string(), "q1=5,7 q2=1,1 q3=1,1 q4=1,1 c=6 field=Q");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "q1=1,1 q2=1,1 q3=1,1 q4=1,1 c=2\nq1=0,1 q2=1,1 q3=1,1 q4=1,1 c=2\nq1=1,1 c=2\n";
        let out = parse_batch(text);
        assert!(out[0].is_ok());
        let e = out[1].as_ref().unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("zero symbol entry"));
        assert!(out[2].as_ref().unwrap_err().message.contains("missing `q2`"));
        assert!(parse_record("q1=1,1 q2=1,1 q3=1,1 q4=1,1 c=2 z=1", 9).unwrap_err().message.contains("unknown key"));
    }
}
