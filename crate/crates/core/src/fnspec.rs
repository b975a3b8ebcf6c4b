//! Text specs for functions (`mt:9`, `!and:3`, `parity:4~1,3`, `file:f.json`)
//! and the truth-table JSON format.

use crate::boolfn::{family, Bits, BooleanFunction};
use crate::error::{Error, Result};
use crate::formula::ReadOnceFormula;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk truth table; `domain` and `values` use little-endian hex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableJson {
    pub n: usize,
    pub domain: String,
    pub values: String,
}

impl TruthTableJson {
    pub fn from_function(f: &BooleanFunction) -> Self {
        TruthTableJson { n: f.n(), domain: f.domain().to_hex(), values: f.values().to_hex() }
    }

    pub fn to_function(&self) -> Result<BooleanFunction> {
        crate::boolfn::check_vars(self.n)?;
        let size = 1usize << self.n;
        BooleanFunction::new(self.n, Bits::from_hex(&self.domain, size)?, Bits::from_hex(&self.values, size)?)
    }
}

pub fn function_to_json(f: &BooleanFunction) -> String {
    serde_json::to_string(&TruthTableJson::from_function(f)).expect("serializable")
}

pub fn function_from_json(text: &str) -> Result<BooleanFunction> {
    let t: TruthTableJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("truth table JSON: {e}")))?;
    t.to_function()
}

pub fn load_function(path: &Path) -> Result<BooleanFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    function_from_json(&text)
}

fn parse_usize(tok: &str) -> Result<usize> {
    tok.trim().parse().map_err(|_| Error::Parse(format!("expected a non-negative integer, got `{tok}`")))
}

/// Parses a comma list of 1-based variable indices into 0-based ones.
pub fn parse_var_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match parse_usize(t)? {
            0 => Err(Error::Parse("variables are numbered from 1".into())),
            i => Ok(i - 1),
        })
        .collect()
}

/// Parses a function spec.
///
/// Bases: `name:params` for the families (`thr:k:n`, `andor:axb`),
/// `file:<path>` for a truth-table JSON file and `ro:<formula>` for a
/// read-once formula. A leading `!` negates the output; a trailing `~1,3`
/// negates the listed inputs before the output negation is applied.
pub fn parse_function_spec(spec: &str) -> Result<BooleanFunction> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix('!') {
        return Ok(parse_function_spec(rest)?.negate_output());
    }
    if !spec.starts_with("file:") && !spec.starts_with("ro:") {
        if let Some((base, vars)) = spec.rsplit_once('~') {
            let f = parse_function_spec(base)?;
            return f.negate_inputs(&parse_var_list(vars)?);
        }
    }
    let (name, rest) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("bad function spec `{spec}`")))?;
    match name.to_ascii_lowercase().as_str() {
        "file" => load_function(Path::new(rest)),
        "ro" => ReadOnceFormula::parse(rest)?.to_function(),
        "andor" => {
            let (a, b) = rest.split_once(['x', 'X', ':']).ok_or_else(|| Error::Parse(format!("andor expects AxB, got `{rest}`")))?;
            family("andor", &[parse_usize(a)?, parse_usize(b)?])
        }
        fam => {
            let params = rest.split(':').map(parse_usize).collect::<Result<Vec<_>>>()?;
            family(fam, &params)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_and_modifiers() {
        assert_eq!(parse_function_spec("and:4").unwrap(), family("and", &[4]).unwrap());
        assert_eq!(parse_function_spec("thr:2:5").unwrap(), family("thr", &[2, 5]).unwrap());
        assert_eq!(parse_function_spec("andor:3x3").unwrap(), family("andor", &[3, 3]).unwrap());
        assert_eq!(parse_function_spec("!or:3").unwrap(), family("or", &[3]).unwrap().negate_output());
        let g = parse_function_spec("and:3~2").unwrap();
        assert_eq!(g, family("and", &[3]).unwrap().negate_inputs(&[1]).unwrap());
        let h = parse_function_spec("!and:3~1,3").unwrap();
        assert_eq!(h, family("and", &[3]).unwrap().negate_inputs(&[0, 2]).unwrap().negate_output());
        assert_eq!(parse_function_spec("ro:thr2(x1,x2,x3)").unwrap(), family("maj", &[3]).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_function_spec("and"), Err(Error::Parse(_))));
        assert!(matches!(parse_function_spec("nosuch:3"), Err(Error::Parse(_))));
        assert!(matches!(parse_function_spec("mt:7"), Err(Error::BadParams(_))));
        assert!(matches!(parse_function_spec("and:x"), Err(Error::Parse(_))));
        assert!(matches!(parse_function_spec("and:21"), Err(Error::CapExceeded { .. })));
        assert!(matches!(parse_function_spec("and:3~0"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = family("majn", &[6]).unwrap();
        let text = function_to_json(&f);
        assert_eq!(function_from_json(&text).unwrap(), f);
        let and2 = function_from_json(r#"{"n":2,"domain":"f","values":"8"}"#).unwrap();
        assert_eq!(and2, family("and", &[2]).unwrap());
        assert!(function_from_json(r#"{"n":2,"domain":"0","values":"0"}"#).is_err());
    }
}
