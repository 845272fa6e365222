//! The rewriting rules 1–5 and traces of their applications.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::term::{Atom, OmegaTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `((α)) ⇌ (α)`
    R1,
    /// `(α^k) ⇌ (α)`
    R2,
    /// `(α)(α) ⇌ (α)`
    R3,
    /// `α(α) ⇌ (α)`
    R4L,
    /// `(α)α ⇌ (α)`
    R4R,
    /// `(αβ)α ⇌ α(βα)`
    R5,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4L, Rule::R4R, Rule::R5];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "1",
            Rule::R2 => "2",
            Rule::R3 => "3",
            Rule::R4L => "4L",
            Rule::R4R => "4R",
            Rule::R5 => "5",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("unknown rule '{s}'"),
            })
    }
}

/// Left to right is a contraction (for rule 5: `(αβ)α → α(βα)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Contract,
    Expand,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Contract => "contract",
            Direction::Expand => "expand",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contract" => Ok(Direction::Contract),
            "expand" => Ok(Direction::Expand),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown direction '{s}'"),
            }),
        }
    }
}

/// One rule application.
///
/// `position` is the serialization offset where the redex starts. `arg` is
/// the exponent `k` for rule 2 and the number of atoms of `α` for rule 5.
/// For a rule 4L contraction a nonzero `arg` is the number of atoms of `α`;
/// zero takes the shortest match. It is ignored otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub direction: Direction,
    pub position: usize,
    pub arg: usize,
    pub before: OmegaTerm,
    pub after: OmegaTerm,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} -> {}",
            self.rule, self.direction, self.position, self.before, self.after
        )
    }
}

impl FromStr for RewriteStep {
    type Err = Error;

    /// Parses `rule dir position before -> after`; the argument is
    /// recovered by replaying the rule.
    fn from_str(line: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            position: 0,
            message: format!("{m} in step '{line}'"),
        };
        let (lhs, after) = line.split_once("->").ok_or_else(|| bad("missing '->'"))?;
        let mut parts = lhs.split_whitespace();
        let rule: Rule = parts.next().ok_or_else(|| bad("missing rule"))?.parse()?;
        let direction: Direction = parts.next().ok_or_else(|| bad("missing direction"))?.parse()?;
        let position: usize = parts
            .next()
            .ok_or_else(|| bad("missing position"))?
            .parse()
            .map_err(|_| bad("bad position"))?;
        let before = OmegaTerm::parse(&parts.collect::<String>())?;
        let after = OmegaTerm::parse(after)?;
        let arg = find_arg(&before, rule, direction, position, &after).unwrap_or(0);
        Ok(RewriteStep {
            rule,
            direction,
            position,
            arg,
            before,
            after,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: OmegaTerm,
    pub steps: Vec<RewriteStep>,
    pub end: OmegaTerm,
}

impl RewriteTrace {
    pub fn empty(t: &OmegaTerm) -> Self {
        RewriteTrace {
            start: t.clone(),
            steps: Vec::new(),
            end: t.clone(),
        }
    }

    /// One step per line, preceded by `# start` and followed by `# end`
    /// comment lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("# start {}\n", self.start);
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out.push_str(&format!("# end {}\n", self.end));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut start = None;
        let mut end = None;
        let mut steps: Vec<RewriteStep> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("# start") {
                start = Some(OmegaTerm::parse(rest)?);
            } else if let Some(rest) = line.strip_prefix("# end") {
                end = Some(OmegaTerm::parse(rest)?);
            } else if !line.starts_with('#') {
                steps.push(line.parse()?);
            }
        }
        let start = start
            .or_else(|| steps.first().map(|s| s.before.clone()))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "empty trace".into(),
            })?;
        let end = end
            .or_else(|| steps.last().map(|s| s.after.clone()))
            .unwrap_or_else(|| start.clone());
        Ok(RewriteTrace { start, steps, end })
    }
}

type LocalRewrite<'a> = dyn Fn(&[Atom], usize) -> Option<Vec<Atom>> + 'a;

/// Rewrites the sequence containing the atom that starts at `pos`; `f`
/// receives that sequence and the atom's index.
fn rewrite_at(atoms: &[Atom], pos: usize, f: &LocalRewrite<'_>) -> Option<Vec<Atom>> {
    let mut off = 0;
    for (i, a) in atoms.iter().enumerate() {
        if off == pos {
            return f(atoms, i);
        }
        if pos > off && pos < off + a.len() {
            let body = a.body()?;
            let new_body = rewrite_at(body.atoms(), pos - off - 1, f)?;
            if new_body.is_empty() {
                return None;
            }
            let mut out = atoms.to_vec();
            out[i] = Atom::Power(OmegaTerm::from_atoms(new_body));
            return Some(out);
        }
        off += a.len();
    }
    None
}

fn splice(atoms: &[Atom], start: usize, end: usize, with: Vec<Atom>) -> Vec<Atom> {
    let mut out = atoms[..start].to_vec();
    out.extend(with);
    out.extend_from_slice(&atoms[end..]);
    out
}

fn power(atoms: &[Atom]) -> Atom {
    Atom::Power(OmegaTerm::from_atoms(atoms.to_vec()))
}

/// `atoms[i..]` starts with `pat`.
fn matches_at(atoms: &[Atom], i: usize, pat: &[Atom]) -> bool {
    atoms.len() >= i + pat.len() && atoms[i..i + pat.len()] == *pat
}

/// Body of `atoms[i]` as `α^k`, if it is one.
fn kth_root(body: &[Atom], k: usize) -> Option<&[Atom]> {
    if k < 2 || !body.len().is_multiple_of(k) {
        return None;
    }
    let l = body.len() / k;
    (l..body.len()).all(|j| body[j] == body[j - l]).then_some(&body[..l])
}

fn apply_local(seq: &[Atom], i: usize, rule: Rule, dir: Direction, arg: usize) -> Option<Vec<Atom>> {
    use Direction::*;
    let body = |j: usize| seq.get(j).and_then(Atom::body).map(|b| b.atoms());
    match (rule, dir) {
        (Rule::R1, Contract) => {
            let b = body(i)?;
            (b.len() == 1 && b[0].is_power()).then(|| splice(seq, i, i + 1, vec![b[0].clone()]))
        }
        (Rule::R1, Expand) => {
            body(i)?;
            Some(splice(seq, i, i + 1, vec![power(&seq[i..i + 1])]))
        }
        (Rule::R2, Contract) => {
            let root = kth_root(body(i)?, arg)?;
            Some(splice(seq, i, i + 1, vec![power(root)]))
        }
        (Rule::R2, Expand) => {
            let b = body(i)?;
            if arg < 2 {
                return None;
            }
            Some(splice(seq, i, i + 1, vec![power(&super::normalize::rep(b, arg))]))
        }
        (Rule::R3, Contract) => {
            body(i)?;
            (seq.get(i + 1) == Some(&seq[i])).then(|| splice(seq, i + 1, i + 2, vec![]))
        }
        (Rule::R3, Expand) => {
            body(i)?;
            Some(splice(seq, i + 1, i + 1, vec![seq[i].clone()]))
        }
        (Rule::R4R, Contract) => {
            let b = body(i)?;
            matches_at(seq, i + 1, b).then(|| splice(seq, i + 1, i + 1 + b.len(), vec![]))
        }
        (Rule::R4R, Expand) => {
            let b = body(i)?.to_vec();
            Some(splice(seq, i + 1, i + 1, b))
        }
        (Rule::R4L, Contract) => {
            // α starting at i, followed by (α); a nonzero arg fixes |α|
            let range = if arg == 0 {
                i + 1..seq.len()
            } else {
                i + arg..(i + arg + 1).min(seq.len())
            };
            range.into_iter().find_map(|p| {
                let b = body(p)?;
                (b.len() == p - i && seq[i..p] == *b).then(|| splice(seq, i, p, vec![]))
            })
        }
        (Rule::R4L, Expand) => {
            let b = body(i)?.to_vec();
            Some(splice(seq, i, i, b))
        }
        (Rule::R5, Contract) => {
            // (αβ)α → α(βα), |α| = arg
            let b = body(i)?;
            if arg == 0 || arg > b.len() || !matches_at(seq, i + 1, &b[..arg]) {
                return None;
            }
            let mut with = b[..arg].to_vec();
            let mut nb = b[arg..].to_vec();
            nb.extend_from_slice(&b[..arg]);
            with.push(power(&nb));
            Some(splice(seq, i, i + 1 + arg, with))
        }
        (Rule::R5, Expand) => {
            // α(βα) → (αβ)α, α starting at i, |α| = arg
            let p = i + arg;
            let b = body(p)?;
            if arg == 0 || arg > b.len() || seq[i..p] != b[b.len() - arg..] {
                return None;
            }
            let alpha = seq[i..p].to_vec();
            let mut nb = alpha.clone();
            nb.extend_from_slice(&b[..b.len() - arg]);
            let mut with = vec![power(&nb)];
            with.extend(alpha);
            Some(splice(seq, i, p + 1, with))
        }
    }
}

/// Applies one rule at the serialization offset `position`.
pub fn apply_rule(t: &OmegaTerm, rule: Rule, direction: Direction, position: usize, arg: usize) -> Result<OmegaTerm> {
    rewrite_at(t.atoms(), position, &|seq, i| apply_local(seq, i, rule, direction, arg))
        .map(OmegaTerm::from_atoms)
        .ok_or_else(|| Error::PatternMismatch {
            rule: rule.to_string(),
            direction: direction.to_string(),
            position,
        })
}

/// An argument under which the rule turns `before` into `after`.
fn find_arg(before: &OmegaTerm, rule: Rule, dir: Direction, position: usize, after: &OmegaTerm) -> Option<usize> {
    let candidates: Vec<usize> = match rule {
        Rule::R2 | Rule::R5 => (1..=before.len().max(after.len())).collect(),
        Rule::R4L if dir == Direction::Contract => (0..=before.len()).collect(),
        _ => vec![0],
    };
    candidates
        .into_iter()
        .find(|&arg| apply_rule(before, rule, dir, position, arg).ok().as_ref() == Some(after))
}

/// Each step matches its rule and the steps chain from start to end.
pub fn verify_trace(trace: &RewriteTrace) -> bool {
    let mut cur = &trace.start;
    for s in &trace.steps {
        if &s.before != cur {
            return false;
        }
        let ok = apply_rule(&s.before, s.rule, s.direction, s.position, s.arg)
            .ok()
            .as_ref()
            == Some(&s.after)
            || find_arg(&s.before, s.rule, s.direction, s.position, &s.after).is_some();
        if !ok {
            return false;
        }
        cur = &s.after;
    }
    cur == &trace.end
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn t(s: &str) -> OmegaTerm {
        OmegaTerm::parse(s).unwrap()
    }

    fn app(s: &str, rule: Rule, dir: Direction, pos: usize, arg: usize) -> String {
        apply_rule(&t(s), rule, dir, pos, arg).unwrap().to_string()
    }

    #[test]
    fn each_rule_both_ways() {
        assert_eq!(app("((a))", Rule::R1, Contract, 0, 0), "(a)");
        assert_eq!(app("(a)", Rule::R1, Expand, 0, 0), "((a))");
        assert_eq!(app("(abab)", Rule::R2, Contract, 0, 2), "(ab)");
        assert_eq!(app("(ab)", Rule::R2, Expand, 0, 3), "(ababab)");
        assert_eq!(app("(a)(a)", Rule::R3, Contract, 0, 0), "(a)");
        assert_eq!(app("(a)", Rule::R3, Expand, 0, 0), "(a)(a)");
        assert_eq!(app("b(a)a", Rule::R4R, Contract, 1, 0), "b(a)");
        assert_eq!(app("(ab)", Rule::R4R, Expand, 0, 0), "(ab)ab");
        assert_eq!(app("ab(ab)", Rule::R4L, Contract, 0, 0), "(ab)");
        assert_eq!(app("(ab)", Rule::R4L, Expand, 0, 0), "ab(ab)");
        assert_eq!(app("(ab)a", Rule::R5, Contract, 0, 1), "a(ba)");
        assert_eq!(app("a(ba)", Rule::R5, Expand, 0, 1), "(ab)a");
        // inside a power
        assert_eq!(app("((a)(a)b)", Rule::R3, Contract, 1, 0), "((a)b)");
    }

    #[test]
    fn mismatches() {
        assert!(apply_rule(&t("(a)(b)"), Rule::R3, Contract, 0, 0).is_err());
        assert!(apply_rule(&t("(ab)b"), Rule::R5, Contract, 0, 1).is_err());
        assert!(apply_rule(&t("(ab)"), Rule::R2, Contract, 0, 2).is_err());
        assert!(apply_rule(&t("(a)"), Rule::R3, Contract, 1, 0).is_err());
        assert!(apply_rule(&t("ab"), Rule::R4R, Expand, 0, 0).is_err());
    }

    #[test]
    fn traces() {
        let s = RewriteStep {
            rule: Rule::R3,
            direction: Contract,
            position: 0,
            arg: 0,
            before: t("(a)(a)"),
            after: t("(a)"),
        };
        let trace = RewriteTrace {
            start: t("(a)(a)"),
            steps: vec![s.clone()],
            end: t("(a)"),
        };
        assert!(verify_trace(&trace));
        assert_eq!(RewriteTrace::parse(&trace.to_text()).unwrap(), trace);
        let forged = RewriteTrace {
            start: t("(a)"),
            steps: vec![RewriteStep {
                before: t("(a)"),
                after: t("(b)"),
                ..s
            }],
            end: t("(b)"),
        };
        assert!(!verify_trace(&forged));
    }
}
