//! ω-terms and their encoding as well-parenthesized words.
//!
//! A term is a flat sequence of atoms, each atom being a letter or the
//! ω-power of a nonempty term. Writing every power `t^ω` as `(t)` gives the
//! serialization over `Y = X ∪ {(, )}` that the rest of the crate compares,
//! rotates and searches. Frozen letters (produced by [`OmegaTerm::freeze`])
//! are ordinary letters that sort below (opening) or above (closing) every
//! plain letter.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of an ω-term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Plain(char),
    /// Opening frozen parenthesis of the given freeze level.
    FrozenOpen(u8),
    /// Closing frozen parenthesis of the given freeze level.
    FrozenClose(u8),
}

const FROZEN_GLYPHS: [(char, char); 5] = [('<', '>'), ('{', '}'), ('[', ']'), ('«', '»'), ('‹', '›')];

impl Letter {
    fn class_key(self) -> (u8, i64) {
        match self {
            // later freezes sort outside earlier ones
            Letter::FrozenOpen(k) => (0, -(k as i64)),
            Letter::Plain(c) => (1, c as i64),
            Letter::FrozenClose(k) => (2, k as i64),
        }
    }

    pub fn is_frozen(self) -> bool {
        !matches!(self, Letter::Plain(_))
    }

    fn from_char(c: char) -> Option<Letter> {
        if c == '⟨' {
            return Some(Letter::FrozenOpen(1));
        }
        if c == '⟩' {
            return Some(Letter::FrozenClose(1));
        }
        for (i, &(o, cl)) in FROZEN_GLYPHS.iter().enumerate() {
            if c == o {
                return Some(Letter::FrozenOpen(i as u8 + 1));
            }
            if c == cl {
                return Some(Letter::FrozenClose(i as u8 + 1));
            }
        }
        if c.is_alphanumeric() {
            Some(Letter::Plain(c))
        } else {
            None
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.class_key().cmp(&other.class_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Plain(c) => write!(f, "{c}"),
            Letter::FrozenOpen(k) => match FROZEN_GLYPHS.get(k as usize - 1) {
                Some((o, _)) => write!(f, "{o}"),
                None => write!(f, "⟨{k}"),
            },
            Letter::FrozenClose(k) => match FROZEN_GLYPHS.get(k as usize - 1) {
                Some((_, c)) => write!(f, "{c}"),
                None => write!(f, "{k}⟩"),
            },
        }
    }
}

/// A symbol of the serialization alphabet `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    Open,
    Letter(Letter),
    Close,
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> Ordering {
        Alphabet::default().cmp_sym(*self, *other)
    }
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Open => f.write_str("("),
            Sym::Close => f.write_str(")"),
            Sym::Letter(l) => l.fmt(f),
        }
    }
}

/// Renders a symbol sequence as text.
pub fn syms_to_string(syms: &[Sym]) -> String {
    syms.iter().map(|s| s.to_string()).collect()
}

/// Total order on plain letters, extended to `Y` by `( < x < )`.
///
/// The default order is code-point order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    order: Option<Vec<char>>,
}

impl Alphabet {
    pub fn ascii() -> Self {
        Self::default()
    }

    /// Explicit order, smallest letter first. Letters outside the list sort
    /// after it in code-point order.
    pub fn with_order(letters: &str) -> Result<Self> {
        let order: Vec<char> = letters.chars().collect();
        if order.is_empty() {
            return Err(Error::Precondition("alphabet order is empty".into()));
        }
        let distinct: BTreeSet<char> = order.iter().copied().collect();
        if distinct.len() != order.len() {
            return Err(Error::Precondition("alphabet order repeats a letter".into()));
        }
        if let Some(c) = order.iter().find(|c| !c.is_alphanumeric()) {
            return Err(Error::Precondition(format!("'{c}' cannot be a letter")));
        }
        Ok(Self { order: Some(order) })
    }

    fn plain_key(&self, c: char) -> (u8, u32) {
        match &self.order {
            None => (0, c as u32),
            Some(order) => match order.iter().position(|&x| x == c) {
                Some(i) => (0, i as u32),
                None => (1, c as u32),
            },
        }
    }

    pub fn cmp_letter(&self, a: Letter, b: Letter) -> Ordering {
        match (a, b) {
            (Letter::Plain(x), Letter::Plain(y)) => self.plain_key(x).cmp(&self.plain_key(y)),
            _ => a.cmp(&b),
        }
    }

    pub fn cmp_sym(&self, a: Sym, b: Sym) -> Ordering {
        fn class(s: Sym) -> u8 {
            match s {
                Sym::Open => 0,
                Sym::Letter(_) => 1,
                Sym::Close => 2,
            }
        }
        match (a, b) {
            (Sym::Letter(x), Sym::Letter(y)) => self.cmp_letter(x, y),
            _ => class(a).cmp(&class(b)),
        }
    }
}

/// One atom of a term body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Letter(Letter),
    /// `(body)`, standing for `body^ω`.
    Power(OmegaTerm),
}

impl Atom {
    pub fn rank(&self) -> usize {
        match self {
            Atom::Letter(_) => 0,
            Atom::Power(t) => t.rank() + 1,
        }
    }

    /// Length of the serialization.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Atom::Letter(_) => 1,
            Atom::Power(t) => t.len() + 2,
        }
    }

    pub fn is_power(&self) -> bool {
        matches!(self, Atom::Power(_))
    }

    pub fn body(&self) -> Option<&OmegaTerm> {
        match self {
            Atom::Power(t) => Some(t),
            Atom::Letter(_) => None,
        }
    }

    fn write_syms(&self, out: &mut Vec<Sym>) {
        match self {
            Atom::Letter(l) => out.push(Sym::Letter(*l)),
            Atom::Power(t) => {
                out.push(Sym::Open);
                for a in &t.atoms {
                    a.write_syms(out);
                }
                out.push(Sym::Close);
            }
        }
    }
}

/// Serializes a slice of atoms.
pub fn atoms_syms(atoms: &[Atom]) -> Vec<Sym> {
    let mut out = Vec::new();
    for a in atoms {
        a.write_syms(&mut out);
    }
    out
}

/// Serialization length of a slice of atoms.
pub fn atoms_len(atoms: &[Atom]) -> usize {
    atoms.iter().map(Atom::len).sum()
}

/// An ω-term: a flat sequence of atoms.
///
/// Parsed and constructed terms are nonempty; the empty term only arises
/// internally, as the empty factor between two powers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OmegaTerm {
    atoms: Vec<Atom>,
}

impl OmegaTerm {
    pub fn empty() -> Self {
        Self { atoms: Vec::new() }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    /// A rank-0 term spelling the given plain letters.
    pub fn word(letters: &str) -> Self {
        Self {
            atoms: letters.chars().map(|c| Atom::Letter(Letter::Plain(c))).collect(),
        }
    }

    /// Parses a well-parenthesized word over `Y`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut syms = Vec::new();
        for (i, c) in text.chars().enumerate() {
            let s = match c {
                '(' => Sym::Open,
                ')' => Sym::Close,
                c if c.is_whitespace() => continue,
                c => Sym::Letter(Letter::from_char(c).ok_or_else(|| Error::Parse {
                    position: i,
                    message: format!("symbol '{c}' is not a letter or parenthesis"),
                })?),
            };
            syms.push(s);
        }
        Self::from_syms(&syms)
    }

    /// Rebuilds a term from its serialization.
    pub fn from_syms(syms: &[Sym]) -> Result<Self> {
        if syms.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty term".into(),
            });
        }
        let mut stack: Vec<Vec<Atom>> = vec![Vec::new()];
        for (i, &s) in syms.iter().enumerate() {
            match s {
                Sym::Letter(l) => stack.last_mut().unwrap().push(Atom::Letter(l)),
                Sym::Open => stack.push(Vec::new()),
                Sym::Close => {
                    if stack.len() == 1 {
                        return Err(Error::Parse {
                            position: i,
                            message: "unbalanced ')'".into(),
                        });
                    }
                    let body = stack.pop().unwrap();
                    if body.is_empty() {
                        return Err(Error::Parse {
                            position: i - 1,
                            message: "empty power \"()\"".into(),
                        });
                    }
                    stack.last_mut().unwrap().push(Atom::Power(OmegaTerm { atoms: body }));
                }
            }
        }
        if stack.len() != 1 {
            return Err(Error::Parse {
                position: syms.len(),
                message: "unbalanced '('".into(),
            });
        }
        Ok(OmegaTerm {
            atoms: stack.pop().unwrap(),
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The term `(self)`.
    ///
    /// # Panics
    /// If `self` is empty: `()` is not a term.
    pub fn power(self) -> OmegaTerm {
        assert!(!self.is_empty(), "the empty term has no ω-power");
        OmegaTerm {
            atoms: vec![Atom::Power(self)],
        }
    }

    pub fn concat(&self, other: &OmegaTerm) -> OmegaTerm {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        OmegaTerm { atoms }
    }

    /// `self` repeated `k` times.
    pub fn repeat(&self, k: usize) -> OmegaTerm {
        let mut atoms = Vec::with_capacity(self.atoms.len() * k);
        for _ in 0..k {
            atoms.extend(self.atoms.iter().cloned());
        }
        OmegaTerm { atoms }
    }

    pub fn syms(&self) -> Vec<Sym> {
        atoms_syms(&self.atoms)
    }

    /// Maximum nesting depth of parentheses.
    pub fn rank(&self) -> usize {
        self.atoms.iter().map(Atom::rank).max().unwrap_or(0)
    }

    /// Length of the serialization.
    pub fn len(&self) -> usize {
        atoms_len(&self.atoms)
    }

    /// Plain letters occurring anywhere in the term.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        for a in &self.atoms {
            match a {
                Atom::Letter(Letter::Plain(c)) => {
                    out.insert(*c);
                }
                Atom::Letter(_) => {}
                Atom::Power(t) => t.collect_letters(out),
            }
        }
    }

    /// All letters (plain and frozen) occurring in the term.
    pub fn all_letters(&self) -> BTreeSet<Letter> {
        self.syms()
            .into_iter()
            .filter_map(|s| match s {
                Sym::Letter(l) => Some(l),
                _ => None,
            })
            .collect()
    }

    /// The letters of a rank-0 term.
    pub fn as_word(&self) -> Option<Vec<Letter>> {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => Some(*l),
                Atom::Power(_) => None,
            })
            .collect()
    }

    /// Atom indices of the top-level powers of maximal rank.
    pub fn max_rank_powers(&self) -> Vec<usize> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.rank() == r)
            .map(|(i, _)| i)
            .collect()
    }

    /// Serialization offset of the atom at `index`.
    pub fn offset_of(&self, index: usize) -> usize {
        atoms_len(&self.atoms[..index])
    }

    /// The factors `(δ_j)γ_j(δ_{j+1})` between consecutive maximal-rank
    /// powers.
    pub fn crucial_portions(&self) -> Result<Vec<CrucialPortion>> {
        if self.rank() == 0 {
            return Err(Error::RankZero);
        }
        let idx = self.max_rank_powers();
        Ok(idx
            .windows(2)
            .map(|w| CrucialPortion {
                left_base: self.atoms[w[0]].body().unwrap().clone(),
                middle: OmegaTerm::from_atoms(self.atoms[w[0] + 1..w[1]].to_vec()),
                right_base: self.atoms[w[1]].body().unwrap().clone(),
                location: self.offset_of(w[0]),
            })
            .collect())
    }

    /// `2^rank` times the longest crucial portion of the square; 0 for words.
    pub fn mu(&self) -> usize {
        let r = self.rank();
        if r == 0 {
            return 0;
        }
        let sq = self.concat(self);
        let longest = sq
            .crucial_portions()
            .expect("positive rank")
            .iter()
            .map(CrucialPortion::len)
            .max()
            .unwrap_or(0);
        (1usize << r) * longest
    }

    fn max_frozen_level(&self) -> u8 {
        self.all_letters()
            .into_iter()
            .map(|l| match l {
                Letter::FrozenOpen(k) | Letter::FrozenClose(k) => k,
                Letter::Plain(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Reinterprets the rank-1 parentheses as fresh letters, lowering the
    /// rank by one.
    pub fn freeze(&self) -> Result<OmegaTerm> {
        if self.rank() == 0 {
            return Err(Error::RankZero);
        }
        let level = self.max_frozen_level() + 1;
        Ok(self.freeze_at(level))
    }

    fn freeze_at(&self, level: u8) -> OmegaTerm {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            match a {
                Atom::Power(body) if body.rank() == 0 => {
                    atoms.push(Atom::Letter(Letter::FrozenOpen(level)));
                    atoms.extend(body.atoms.iter().cloned());
                    atoms.push(Atom::Letter(Letter::FrozenClose(level)));
                }
                Atom::Power(body) => atoms.push(Atom::Power(body.freeze_at(level))),
                Atom::Letter(_) => atoms.push(a.clone()),
            }
        }
        OmegaTerm { atoms }
    }

    /// Inverse of [`freeze`](Self::freeze): turns the most recent frozen
    /// letters back into parentheses.
    pub fn unfreeze(&self) -> Result<OmegaTerm> {
        let level = self.max_frozen_level();
        if level == 0 {
            return Err(Error::Frozen("no frozen letters".into()));
        }
        self.unfreeze_at(level)
    }

    fn unfreeze_at(&self, level: u8) -> Result<OmegaTerm> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        let mut open: Option<Vec<Atom>> = None;
        for a in &self.atoms {
            match a {
                Atom::Letter(Letter::FrozenOpen(k)) if *k == level => {
                    if open.is_some() {
                        return Err(Error::Frozen("nested frozen parentheses".into()));
                    }
                    open = Some(Vec::new());
                }
                Atom::Letter(Letter::FrozenClose(k)) if *k == level => match open.take() {
                    Some(body) if !body.is_empty() => atoms.push(Atom::Power(OmegaTerm { atoms: body })),
                    Some(_) => return Err(Error::Frozen("empty frozen power".into())),
                    None => return Err(Error::Frozen("unmatched closing frozen letter".into())),
                },
                Atom::Letter(_) => match &mut open {
                    Some(body) => body.push(a.clone()),
                    None => atoms.push(a.clone()),
                },
                Atom::Power(body) => {
                    if open.is_some() {
                        return Err(Error::Frozen("frozen power encloses a power".into()));
                    }
                    atoms.push(Atom::Power(body.unfreeze_at(level)?));
                }
            }
        }
        if open.is_some() {
            return Err(Error::Frozen("unmatched opening frozen letter".into()));
        }
        Ok(OmegaTerm { atoms })
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.syms() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for OmegaTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OmegaTerm::parse(s)
    }
}

/// A factor `(δ_j)γ_j(δ_{j+1})` between consecutive maximal-rank powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrucialPortion {
    pub left_base: OmegaTerm,
    /// Possibly empty.
    pub middle: OmegaTerm,
    pub right_base: OmegaTerm,
    /// Start offset in the serialization of the term it was taken from.
    pub location: usize,
}

impl CrucialPortion {
    pub fn to_term(&self) -> OmegaTerm {
        let mut atoms = vec![Atom::Power(self.left_base.clone())];
        atoms.extend(self.middle.atoms().iter().cloned());
        atoms.push(Atom::Power(self.right_base.clone()));
        OmegaTerm::from_atoms(atoms)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.left_base.len() + self.middle.len() + self.right_base.len() + 4
    }
}
