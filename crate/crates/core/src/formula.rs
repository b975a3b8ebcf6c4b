//! Read-once formulas over NOT, threshold and symmetric gates.
//!
//! Text syntax: `x3`, `not(φ)`, `and(φ,…)`, `or(φ,…)`, `parity(φ,…)`,
//! `thr2(φ,…)` and `sym0110(φ,…)` where the digit string is the gate's
//! output on child-weight `0, 1, …, fanin`. Variables are 1-based in text.

use crate::boolfn::{check_vars, BooleanFunction};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReadOnceFormula {
    /// A variable, 0-based.
    Leaf(usize),
    Not(Box<ReadOnceFormula>),
    /// Output 1 iff at least `k` children are 1.
    Thr(usize, Vec<ReadOnceFormula>),
    /// Output `spectrum[w]` where `w` counts the children that are 1.
    Sym(Vec<bool>, Vec<ReadOnceFormula>),
    And(Vec<ReadOnceFormula>),
    Or(Vec<ReadOnceFormula>),
    Parity(Vec<ReadOnceFormula>),
}

/// Shape statistics of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaStats {
    /// Number of gates on the longest root-to-leaf path.
    pub depth: usize,
    /// Largest fan-in of any gate.
    pub max_branching: usize,
    /// Number of variables.
    pub vars: usize,
}

use ReadOnceFormula::*;

impl ReadOnceFormula {
    pub fn var(i: usize) -> Self {
        Leaf(i)
    }

    pub fn not(child: ReadOnceFormula) -> Self {
        Not(Box::new(child))
    }

    fn children(&self) -> &[ReadOnceFormula] {
        match self {
            Leaf(_) => &[],
            Not(c) => std::slice::from_ref(c.as_ref()),
            Thr(_, cs) | Sym(_, cs) | And(cs) | Or(cs) | Parity(cs) => cs,
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Leaf(i) => out.push(*i),
            _ => self.children().iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Checks gate parameters and that the leaves are exactly `0..m`, each once.
    pub fn validate(&self) -> Result<usize> {
        self.validate_gates()?;
        let mut leaves = vec![];
        self.collect_leaves(&mut leaves);
        let m = leaves.len();
        let mut seen = vec![false; m];
        for &i in &leaves {
            if i >= m {
                return Err(Error::NotReadOnce(format!("variables must be x1..x{m}, found x{}", i + 1)));
            }
            if seen[i] {
                return Err(Error::NotReadOnce(format!("x{} occurs more than once", i + 1)));
            }
            seen[i] = true;
        }
        Ok(m)
    }

    fn validate_gates(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        match self {
            Leaf(_) => return Ok(()),
            Not(_) => {}
            Thr(k, cs) => {
                if *k == 0 || *k > cs.len() {
                    return bad(format!("threshold {k} outside 1..={}", cs.len()));
                }
            }
            Sym(spec, cs) => {
                if spec.len() != cs.len() + 1 {
                    return bad(format!("symmetric gate of fan-in {} needs {} spectrum bits", cs.len(), cs.len() + 1));
                }
                if spec.iter().all(|&b| b == spec[0]) {
                    return bad("symmetric gate spectrum is constant".into());
                }
            }
            And(_) | Or(_) | Parity(_) => {}
        }
        if self.children().is_empty() {
            return bad("gate without inputs".into());
        }
        self.children().iter().try_for_each(|c| c.validate_gates())
    }

    /// Evaluates on the point with index `x`.
    pub fn eval(&self, x: usize) -> bool {
        match self {
            Leaf(i) => x >> i & 1 == 1,
            Not(c) => !c.eval(x),
            Thr(k, cs) => cs.iter().filter(|c| c.eval(x)).count() >= *k,
            Sym(spec, cs) => spec[cs.iter().filter(|c| c.eval(x)).count()],
            And(cs) => cs.iter().all(|c| c.eval(x)),
            Or(cs) => cs.iter().any(|c| c.eval(x)),
            Parity(cs) => cs.iter().filter(|c| c.eval(x)).count() % 2 == 1,
        }
    }

    pub fn to_function(&self) -> Result<BooleanFunction> {
        let m = self.validate()?;
        check_vars(m)?;
        BooleanFunction::from_fn(m, |x| self.eval(x))
    }

    pub fn stats(&self) -> Result<FormulaStats> {
        let vars = self.validate()?;
        Ok(FormulaStats { depth: self.depth(), max_branching: self.max_branching(), vars })
    }

    fn depth(&self) -> usize {
        match self {
            Leaf(_) => 0,
            _ => 1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    fn max_branching(&self) -> usize {
        let own = match self {
            Leaf(_) => 0,
            _ => self.children().len(),
        };
        self.children().iter().map(|c| c.max_branching()).fold(own, usize::max)
    }

    /// The gate at the root as a function of its children, or `None` for a leaf.
    pub fn gate_function(&self) -> Option<BooleanFunction> {
        let k = self.children().len();
        let spectrum: Vec<bool> = match self {
            Leaf(_) => return None,
            Not(_) => vec![true, false],
            Thr(t, _) => (0..=k).map(|w| w >= *t).collect(),
            Sym(spec, _) => spec.clone(),
            And(_) => (0..=k).map(|w| w == k).collect(),
            Or(_) => (0..=k).map(|w| w > 0).collect(),
            Parity(_) => (0..=k).map(|w| w % 2 == 1).collect(),
        };
        Some(BooleanFunction::from_fn(k, |x| spectrum[x.count_ones() as usize]).expect("fan-in within cap"))
    }

    /// The first gate (pre-order) of largest fan-in.
    pub fn widest_gate(&self) -> &ReadOnceFormula {
        let mut best = self;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.children().len() > best.children().len() {
                best = node;
            }
            stack.extend(node.children().iter().rev());
        }
        best
    }

    /// True when every gate is NOT or a threshold gate (AND/OR count as thresholds).
    pub fn is_threshold_formula(&self) -> bool {
        match self {
            Leaf(_) => true,
            Sym(..) | Parity(_) => false,
            _ => self.children().iter().all(|c| c.is_threshold_formula()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Display for ReadOnceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Leaf(i) => return write!(f, "x{}", i + 1),
            Not(_) => "not".to_string(),
            Thr(k, _) => format!("thr{k}"),
            Sym(spec, _) => format!("sym{}", spec.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()),
            And(_) => "and".into(),
            Or(_) => "or".into(),
            Parity(_) => "parity".into(),
        };
        write!(f, "{name}(")?;
        for (i, c) in self.children().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("formula: {msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).to_ascii_lowercase()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn formula(&mut self) -> Result<ReadOnceFormula> {
        let id = self.ident();
        if id.is_empty() {
            return Err(self.err("expected a gate or variable"));
        }
        if let Some(num) = id.strip_prefix('x') {
            if let Ok(i) = num.parse::<usize>() {
                if i == 0 {
                    return Err(self.err("variables are numbered from x1"));
                }
                return Ok(Leaf(i - 1));
            }
        }
        self.expect(b'(')?;
        let mut children = vec![self.formula()?];
        loop {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b',') => {
                    self.pos += 1;
                    children.push(self.formula()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
        Ok(match id.as_str() {
            "not" => {
                if children.len() != 1 {
                    return Err(self.err("not takes one argument"));
                }
                Not(Box::new(children.pop().unwrap()))
            }
            "and" => And(children),
            "or" => Or(children),
            "parity" | "xor" => Parity(children),
            _ => {
                if let Some(k) = id.strip_prefix("thr") {
                    let k = k.parse().map_err(|_| self.err("bad threshold"))?;
                    Thr(k, children)
                } else if let Some(bits) = id.strip_prefix("sym") {
                    if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
                        return Err(self.err("bad symmetric spectrum"));
                    }
                    Sym(bits.chars().map(|c| c == '1').collect(), children)
                } else {
                    return Err(self.err(&format!("unknown gate `{id}`")));
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family;

    fn p(s: &str) -> ReadOnceFormula {
        ReadOnceFormula::parse(s).unwrap()
    }

    #[test]
    fn majority_gate() {
        let f = p("thr2(x1,x2,x3)");
        assert_eq!(f.to_function().unwrap(), family("maj", &[3]).unwrap());
        let st = f.stats().unwrap();
        assert_eq!((st.depth, st.max_branching, st.vars), (1, 3, 3));
    }

    #[test]
    fn and_of_ors() {
        let f = p("and(or(x1,x2),or(x3,x4))");
        assert_eq!(f.to_function().unwrap(), family("andor", &[2, 2]).unwrap());
        assert_eq!(f.stats().unwrap().max_branching, 2);
        assert_eq!(f.stats().unwrap().depth, 2);
    }

    #[test]
    fn nor() {
        let f = p("not(thr1(x1,x2))");
        assert_eq!(f.to_function().unwrap().table_string(), "1000");
    }

    #[test]
    fn de_morgan() {
        let a = p("not(and(x1,thr2(x2,x3,x4),x5))").to_function().unwrap();
        let b = p("or(not(x1),not(thr2(x2,x3,x4)),not(x5))").to_function().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_round_trip() {
        let s = "and(sym0110(x1,x2),not(x3),thr1(x4,parity(x5,x6)))";
        assert_eq!(p(s).to_string(), s);
    }

    #[test]
    fn rejects_invalid() {
        assert!(matches!(p("and(x1,x1)").validate(), Err(Error::NotReadOnce(_))));
        assert!(matches!(p("and(x1,x3)").validate(), Err(Error::NotReadOnce(_))));
        assert!(matches!(p("thr3(x1,x2)").validate(), Err(Error::BadParams(_))));
        assert!(matches!(p("sym000(x1,x2)").validate(), Err(Error::BadParams(_))));
        assert!(matches!(p("sym01(x1,x2)").validate(), Err(Error::BadParams(_))));
        assert!(ReadOnceFormula::parse("and(x1,").is_err());
        assert!(ReadOnceFormula::parse("foo(x1)").is_err());
        assert!(ReadOnceFormula::parse("x0").is_err());
    }

    #[test]
    fn widest_gate_and_its_function() {
        let f = p("or(not(x1),thr2(x2,x3,x4))");
        let g = f.widest_gate();
        assert_eq!(g, &p("thr2(x2,x3,x4)"));
        assert_eq!(g.gate_function().unwrap(), family("maj", &[3]).unwrap());
        assert_eq!(p("not(x1)").gate_function().unwrap(), family("and", &[1]).unwrap().negate_output());
        assert!(p("x1").gate_function().is_none());
    }
}
