use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lang::Dfa;
use crate::term::Letter;

/// Regular expressions with an explicit fixed-power operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularExpr {
    Empty,
    Epsilon,
    Symbol(Letter),
    Concat(Vec<RegularExpr>),
    Union(Vec<RegularExpr>),
    Star(Box<RegularExpr>),
    /// `r^k`, the `k`-fold concatenation.
    Power(Box<RegularExpr>, usize),
}

impl RegularExpr {
    pub fn symbol(c: char) -> Self {
        RegularExpr::Symbol(Letter::Plain(c))
    }

    pub fn star(self) -> Self {
        RegularExpr::Star(Box::new(self))
    }

    pub fn pow(self, k: usize) -> Self {
        RegularExpr::Power(Box::new(self), k)
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Letter>) {
        match self {
            RegularExpr::Empty | RegularExpr::Epsilon => {}
            RegularExpr::Symbol(l) => {
                out.insert(*l);
            }
            RegularExpr::Concat(v) | RegularExpr::Union(v) => v.iter().for_each(|r| r.collect(out)),
            RegularExpr::Star(r) | RegularExpr::Power(r, _) => r.collect(out),
        }
    }

    /// Minimal complete automaton over the letters of the expression.
    pub fn to_dfa(&self) -> Dfa {
        let alphabet: Vec<Letter> = self.letters().into_iter().collect();
        self.to_dfa_over(&alphabet)
    }

    /// Minimal complete automaton over `alphabet`, which must contain every
    /// letter of the expression.
    pub fn to_dfa_over(&self, alphabet: &[Letter]) -> Dfa {
        match self {
            RegularExpr::Empty => Dfa::empty_language(alphabet),
            RegularExpr::Epsilon => Dfa::epsilon(alphabet),
            RegularExpr::Symbol(l) => Dfa::single_letter(alphabet, *l),
            RegularExpr::Concat(v) => v
                .iter()
                .map(|r| r.to_dfa_over(alphabet))
                .reduce(|a, b| a.concat(&b))
                .unwrap_or_else(|| Dfa::epsilon(alphabet)),
            RegularExpr::Union(v) => v
                .iter()
                .map(|r| r.to_dfa_over(alphabet))
                .reduce(|a, b| a.union(&b))
                .unwrap_or_else(|| Dfa::empty_language(alphabet)),
            RegularExpr::Star(r) => r.to_dfa_over(alphabet).star(),
            RegularExpr::Power(r, k) => r.to_dfa_over(alphabet).power(*k),
        }
    }

    /// Parses the text produced by `Display`. Juxtaposition also
    /// concatenates, so `(a*a^3b)*` is accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let r = p.union()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected symbol"));
        }
        Ok(r)
    }
}

impl fmt::Display for RegularExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularExpr::Empty => f.write_str("∅"),
            RegularExpr::Epsilon => f.write_str("ε"),
            RegularExpr::Symbol(l) => write!(f, "{l}"),
            RegularExpr::Concat(v) => join(f, v, "."),
            RegularExpr::Union(v) => join(f, v, "|"),
            RegularExpr::Star(r) => write!(f, "{r}*"),
            RegularExpr::Power(r, k) => write!(f, "{r}^{k}"),
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, v: &[RegularExpr], sep: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, r) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{r}")?;
    }
    f.write_str(")")
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<RegularExpr> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegularExpr::Union(parts)
        })
    }

    fn concat(&mut self) -> Result<RegularExpr> {
        let mut parts = vec![self.postfix()?];
        loop {
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    parts.push(self.postfix()?);
                }
                Some(c) if c != '|' && c != ')' => parts.push(self.postfix()?),
                _ => break,
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegularExpr::Concat(parts)
        })
    }

    fn postfix(&mut self) -> Result<RegularExpr> {
        let mut r = self.base()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    r = r.star();
                }
                Some('^') => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    let digits: String = self.chars[start..self.pos].iter().collect();
                    let k = digits.parse().map_err(|_| self.error("expected exponent"))?;
                    r = r.pow(k);
                }
                _ => return Ok(r),
            }
        }
    }

    fn base(&mut self) -> Result<RegularExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('ε') => {
                self.pos += 1;
                Ok(RegularExpr::Epsilon)
            }
            Some('∅') => {
                self.pos += 1;
                Ok(RegularExpr::Empty)
            }
            Some(c) if c.is_alphanumeric() => {
                self.pos += 1;
                Ok(RegularExpr::symbol(c))
            }
            _ => Err(self.error("expected a letter, ε, ∅ or '('")),
        }
    }
}
