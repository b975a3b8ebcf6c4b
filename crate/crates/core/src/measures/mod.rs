//! Complexity measures and the report that collects them.

pub mod combinatorial;
pub mod lpdeg;
pub mod ndeg;
pub mod spectral;

pub use combinatorial::{
    and_dimension, block_sensitivity, block_sensitivity_at, certificate_complexity, certificate_complexity_b,
    certificate_profile, one_sided_sensitivity, or_dimension, sensitivity, sensitivity_at,
};
pub use lpdeg::{approx_degree, sign_degree, symmetry_blocks, LpDegree};
pub use ndeg::{avoidance_combine, ndeg, rdeg, NdegResult, RdegResult};
pub use spectral::{spectral_sensitivity, SpectralResult};

use crate::boolfn::BooleanFunction;
use crate::error::Result;
use crate::poly::{fmt_q, Basis, MultilinearPolynomial, PolyJson, Q};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::str::FromStr;

/// Fourier degree of a total function.
pub fn deg(f: &BooleanFunction) -> Result<usize> {
    f.require_total("deg")?;
    Ok(MultilinearPolynomial::from_function(f, Basis::ZeroOne)?.degree())
}

/// One requested measure, as named on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    Deg,
    Ndeg,
    Rdeg,
    Sensitivity,
    BlockSensitivity,
    Certificate,
    SignDegree,
    ApproxDegree(Q),
    Lambda(f64),
    DimAnd,
    DimOr,
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Deg => "deg",
            Measure::Ndeg => "ndeg",
            Measure::Rdeg => "rdeg",
            Measure::Sensitivity => "s",
            Measure::BlockSensitivity => "bs",
            Measure::Certificate => "cert",
            Measure::SignDegree => "signdeg",
            Measure::ApproxDegree(_) => "adeg",
            Measure::Lambda(_) => "lambda",
            Measure::DimAnd => "dimand",
            Measure::DimOr => "dimor",
        }
    }
}

impl FromStr for Measure {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let m = match (name, arg) {
            ("deg", None) => Measure::Deg,
            ("ndeg", None) => Measure::Ndeg,
            ("rdeg", None) => Measure::Rdeg,
            ("s", None) => Measure::Sensitivity,
            ("bs", None) => Measure::BlockSensitivity,
            ("cert", None) => Measure::Certificate,
            ("signdeg", None) => Measure::SignDegree,
            ("adeg", None) => Measure::ApproxDegree(Q::new(1.into(), 3.into())),
            ("adeg", Some(e)) => Measure::ApproxDegree(
                Q::from_str(e).map_err(|_| crate::Error::Parse(format!("bad epsilon '{e}'")))?,
            ),
            ("lambda", None) => Measure::Lambda(spectral::DEFAULT_TOL),
            ("lambda", Some(t)) => Measure::Lambda(
                t.parse::<f64>()
                    .ok()
                    .filter(|t| *t > 0.0)
                    .ok_or_else(|| crate::Error::Parse(format!("bad tolerance '{t}'")))?,
            ),
            ("dimand", None) => Measure::DimAnd,
            ("dimor", None) => Measure::DimOr,
            _ => return Err(crate::Error::Parse(format!("unknown measure '{s}'"))),
        };
        Ok(m)
    }
}

/// Parses a comma-separated measure list such as `rdeg,adeg:1/4,lambda`.
pub fn parse_measure_list(list: &str) -> Result<Vec<Measure>> {
    let out: Vec<Measure> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(crate::Error::Parse("empty measure list".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureValue {
    Int(usize),
    Rational(Q),
    Interval { lower: Q, upper: Q, estimate: f64 },
}

impl MeasureValue {
    pub fn to_json(&self) -> Value {
        match self {
            MeasureValue::Int(v) => json!({"value": v.to_string(), "float": *v as f64}),
            MeasureValue::Rational(v) => json!({"value": fmt_q(v), "float": v.to_f64()}),
            MeasureValue::Interval { lower, upper, estimate } => {
                json!({"lower": fmt_q(lower), "upper": fmt_q(upper), "float": estimate})
            }
        }
    }

    pub fn as_int(&self) -> Option<usize> {
        match self {
            MeasureValue::Int(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureEntry {
    pub name: String,
    pub value: MeasureValue,
    pub witnesses: Vec<(String, PolyJson)>,
    pub note: Option<String>,
}

/// Requested measures of one function, in request order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MeasureReport {
    pub function: String,
    pub n: usize,
    pub total: bool,
    pub entries: Vec<MeasureEntry>,
}

impl MeasureReport {
    pub fn new(function: impl Into<String>, f: &BooleanFunction) -> Self {
        MeasureReport { function: function.into(), n: f.n(), total: f.is_total(), entries: vec![] }
    }

    pub fn push(&mut self, name: impl Into<String>, value: MeasureValue) -> &mut MeasureEntry {
        self.entries.push(MeasureEntry { name: name.into(), value, witnesses: vec![], note: None });
        self.entries.last_mut().unwrap()
    }

    pub fn get(&self, name: &str) -> Option<&MeasureValue> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    pub fn to_json(&self) -> Value {
        let mut measures = Map::new();
        for e in &self.entries {
            let mut v = e.value.to_json();
            if !e.witnesses.is_empty() {
                let ws: Map<String, Value> = e
                    .witnesses
                    .iter()
                    .map(|(k, p)| (k.clone(), serde_json::to_value(p).expect("polynomial JSON")))
                    .collect();
                v["witnesses"] = Value::Object(ws);
            }
            if let Some(note) = &e.note {
                v["note"] = Value::String(note.clone());
            }
            measures.insert(e.name.clone(), v);
        }
        json!({"function": self.function, "n": self.n, "total": self.total, "measures": measures})
    }

    /// One header line and one value line; intervals are reported by their lower bound.
    pub fn to_csv(&self) -> String {
        let header: Vec<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
        let values: Vec<String> = self
            .entries
            .iter()
            .map(|e| match &e.value {
                MeasureValue::Int(v) => v.to_string(),
                MeasureValue::Rational(v) => fmt_q(v),
                MeasureValue::Interval { lower, .. } => fmt_q(lower),
            })
            .collect();
        format!("function,{}\n{},{}\n", header.join(","), self.function, values.join(","))
    }
}

const PARTIAL_NOTE: &str = "partial function: conditions imposed on the domain only";

/// Computes `measures` for `f`; a measure undefined on partial input is an error.
pub fn measure_report(label: &str, f: &BooleanFunction, measures: &[Measure]) -> Result<MeasureReport> {
    let mut report = MeasureReport::new(label, f);
    let partial_note = (!f.is_total()).then(|| PARTIAL_NOTE.to_string());
    for m in measures {
        let name = match m {
            Measure::ApproxDegree(e) => format!("adeg:{}", fmt_q(e)),
            _ => m.name().to_string(),
        };
        match m {
            Measure::Deg => {
                report.push(name, MeasureValue::Int(deg(f)?));
            }
            Measure::Ndeg => {
                let r = ndeg(f);
                let e = report.push(name, MeasureValue::Int(r.value));
                e.witnesses.push(("p".into(), r.witness.to_json()));
                e.note = partial_note.clone();
            }
            Measure::Rdeg => {
                let r = rdeg(f);
                let e = report.push(name, MeasureValue::Int(r.value));
                e.witnesses.push(("p".into(), r.p.to_json()));
                e.witnesses.push(("q".into(), r.q.to_json()));
                e.note = partial_note.clone();
            }
            Measure::Sensitivity => {
                report.push(name, MeasureValue::Int(sensitivity(f))).note = partial_note.clone();
            }
            Measure::BlockSensitivity => {
                report.push(name, MeasureValue::Int(block_sensitivity(f)?));
            }
            Measure::Certificate => {
                report.push(name, MeasureValue::Int(certificate_complexity(f)?));
            }
            Measure::SignDegree => {
                let r = sign_degree(f)?;
                report.push(name, MeasureValue::Int(r.value)).witnesses.push(("p".into(), r.witness.to_json()));
            }
            Measure::ApproxDegree(eps) => {
                let r = approx_degree(f, eps)?;
                let e = report.push(name, MeasureValue::Int(r.value));
                e.witnesses.push(("p".into(), r.witness.to_json()));
                e.note = partial_note.clone();
            }
            Measure::Lambda(tol) => {
                let r = spectral_sensitivity(f, *tol)?;
                report.push(name, MeasureValue::Interval { lower: r.lower, upper: r.upper, estimate: r.lambda });
            }
            Measure::DimAnd => {
                report.push(name, MeasureValue::Int(and_dimension(f)?));
            }
            Measure::DimOr => {
                report.push(name, MeasureValue::Int(or_dimension(f)?));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family;
    use crate::error::Error;

    #[test]
    fn deg_examples() {
        assert_eq!(deg(&family("and", &[5]).unwrap()).unwrap(), 5);
        assert_eq!(deg(&family("parity", &[4]).unwrap()).unwrap(), 4);
        assert_eq!(deg(&BooleanFunction::constant(3, true).unwrap()).unwrap(), 0);
        assert!(matches!(deg(&family("majn", &[4]).unwrap()), Err(Error::PartialNotSupported(_))));
    }

    #[test]
    fn mt6_degree_matches_fourier_oracle() {
        // oracle: largest |S| with a nonzero Fourier sum 2^{-n} Σ_x f(x) χ_S(x)
        let f = family("mt", &[6]).unwrap();
        let oracle = (0..64u32)
            .filter(|&s| {
                (0..64usize)
                    .map(|x| {
                        let fx = if f.value(x) { -1i64 } else { 1 };
                        if (x as u32 & s).count_ones() % 2 == 0 {
                            fx
                        } else {
                            -fx
                        }
                    })
                    .sum::<i64>()
                    != 0
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(deg(&f).unwrap(), oracle);
        assert_eq!(oracle, 6);
    }

    #[test]
    fn measure_list_parsing() {
        let list = parse_measure_list("deg, adeg:1/4,lambda:1e-6,adeg").unwrap();
        assert_eq!(list[0], Measure::Deg);
        assert_eq!(list[1], Measure::ApproxDegree(Q::new(1.into(), 4.into())));
        assert_eq!(list[2], Measure::Lambda(1e-6));
        assert_eq!(list[3], Measure::ApproxDegree(Q::new(1.into(), 3.into())));
        assert!(matches!(parse_measure_list("deg,foo"), Err(Error::Parse(_))));
        assert!(matches!(parse_measure_list("lambda:-1"), Err(Error::Parse(_))));
        assert!(matches!(parse_measure_list(""), Err(Error::Parse(_))));
    }

    #[test]
    fn report_contains_only_requested() {
        let f = family("parity", &[3]).unwrap();
        let r = measure_report("parity:3", &f, &parse_measure_list("s,bs,cert").unwrap()).unwrap();
        let j = r.to_json();
        let keys: Vec<&String> = j["measures"].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 3);
        for k in ["s", "bs", "cert"] {
            assert_eq!(j["measures"][k]["value"], "3");
        }
        assert_eq!(r.to_csv(), "function,s,bs,cert\nparity:3,3,3,3\n");
    }

    #[test]
    fn report_partial_behaviour() {
        let f = family("majn", &[4]).unwrap();
        let r = measure_report("majn:4", &f, &[Measure::Ndeg]).unwrap();
        assert!(r.entries[0].note.is_some());
        assert!(r.to_json()["measures"]["ndeg"]["witnesses"]["p"].is_object());
        assert!(matches!(measure_report("majn:4", &f, &[Measure::Certificate]), Err(Error::PartialNotSupported(_))));
    }
}
