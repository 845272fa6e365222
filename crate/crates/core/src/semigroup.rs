//! Finite semigroups given by multiplication tables, used as the ground-truth
//! oracle for identities over finite aperiodic semigroups.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::Dfa;
use crate::term::{Atom, Letter, OmegaTerm};

/// Largest order accepted by the exhaustive enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 4;

/// Maps each letter to an element index.
pub type GeneratorAssignment = BTreeMap<char, usize>;

/// Parses `a=0,b=1`.
pub fn parse_assignment(text: &str) -> Result<GeneratorAssignment> {
    let mut out = GeneratorAssignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Precondition(format!("bad assignment entry '{part}'")))?;
        let mut chars = k.trim().chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(Error::Precondition(format!("bad letter '{k}'"))),
        };
        let value = v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad element '{v}'")))?;
        out.insert(letter, value);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

/// A finite semigroup on `0..order`, row-major table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates shape, range and associativity.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::InvalidTable(format!("entry {bad} out of range in row {i}")));
            }
            table.extend(row);
        }
        let s = Self { order, table };
        if let Some((a, b, c)) = s.non_associative_triple() {
            return Err(Error::NotAssociative(a, b, c));
        }
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        if file.order != file.table.len() {
            return Err(Error::InvalidTable(format!(
                "order {} does not match {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::new(file.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableFile {
            order: self.order,
            table: self.rows(),
        })
        .expect("plain data")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    fn non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `s^k` for `k >= 1`.
    pub fn pow(&self, s: usize, k: usize) -> usize {
        assert!(k >= 1, "semigroups have no empty product");
        (1..k).fold(s, |acc, _| self.mul(acc, s))
    }

    /// The unique idempotent power of `s`.
    pub fn omega_power(&self, s: usize) -> usize {
        let mut x = s;
        loop {
            if self.mul(x, x) == x {
                return x;
            }
            x = self.mul(x, s);
        }
    }

    pub fn is_aperiodic(&self) -> bool {
        let n = self.order;
        (0..n).all(|s| {
            let p = self.pow(s, n);
            self.mul(p, s) == p
        })
    }

    /// Least `l >= 1` with `s^(l+k) = s^l` for some `k >= 1` and all `s`.
    pub fn ind(&self) -> usize {
        (0..self.order).map(|s| self.index_of(s)).max().unwrap_or(1)
    }

    fn index_of(&self, s: usize) -> usize {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut x = s;
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&x) {
                return first;
            }
            seen.insert(x, k);
            x = self.mul(x, s);
            k += 1;
        }
    }

    /// Value of a term with `ω` read as the idempotent power.
    pub fn evaluate(&self, t: &OmegaTerm, g: &GeneratorAssignment) -> Result<usize> {
        self.evaluate_atoms(t.atoms(), g)
    }

    fn evaluate_atoms(&self, atoms: &[Atom], g: &GeneratorAssignment) -> Result<usize> {
        let mut acc: Option<usize> = None;
        for a in atoms {
            let v = match a {
                Atom::Letter(Letter::Plain(c)) => {
                    let v = *g.get(c).ok_or(Error::UnassignedLetter(*c))?;
                    if v >= self.order {
                        return Err(Error::Precondition(format!("element {v} out of range")));
                    }
                    v
                }
                Atom::Letter(l) => return Err(Error::Precondition(format!("cannot evaluate frozen letter {l}"))),
                Atom::Power(body) => self.omega_power(self.evaluate_atoms(body.atoms(), g)?),
            };
            acc = Some(match acc {
                None => v,
                Some(x) => self.mul(x, v),
            });
        }
        acc.ok_or_else(|| Error::Precondition("cannot evaluate the empty term".into()))
    }

    /// Value of a plain word.
    pub fn evaluate_word(&self, w: &[char], g: &GeneratorAssignment) -> Result<usize> {
        let mut acc: Option<usize> = None;
        for c in w {
            let v = *g.get(c).ok_or(Error::UnassignedLetter(*c))?;
            acc = Some(acc.map_or(v, |x| self.mul(x, v)));
        }
        acc.ok_or_else(|| Error::Precondition("cannot evaluate the empty word".into()))
    }

    /// Every map from `letters` to elements.
    pub fn assignments(&self, letters: &[char]) -> Vec<GeneratorAssignment> {
        let mut out = vec![GeneratorAssignment::new()];
        for &c in letters {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..self.order).map(move |v| {
                        let mut g = g.clone();
                        g.insert(c, v);
                        g
                    })
                })
                .collect();
        }
        out
    }
}

/// All associative tables of the given order (labelled, duplicates up to
/// isomorphism included).
pub fn enumerate_semigroups(order: usize) -> Result<Vec<FiniteSemigroup>> {
    if order == 0 || order > MAX_ENUMERATION_ORDER {
        return Err(Error::BoundExceeded {
            what: "semigroup order",
            value: order,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    let mut table = vec![usize::MAX; order * order];
    let mut out = Vec::new();
    fill(order, 0, &mut table, &mut out);
    Ok(out)
}

fn fill(n: usize, cell: usize, table: &mut Vec<usize>, out: &mut Vec<FiniteSemigroup>) {
    if cell == n * n {
        out.push(FiniteSemigroup {
            order: n,
            table: table.clone(),
        });
        return;
    }
    for v in 0..n {
        table[cell] = v;
        if consistent(n, table) {
            fill(n, cell + 1, table, out);
        }
    }
    table[cell] = usize::MAX;
}

fn consistent(n: usize, t: &[usize]) -> bool {
    let get = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = get(a, b);
            if ab == usize::MAX {
                continue;
            }
            for c in 0..n {
                let bc = get(b, c);
                if bc == usize::MAX {
                    continue;
                }
                let l = get(ab, c);
                let r = get(a, bc);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

static APERIODIC: [OnceLock<Vec<FiniteSemigroup>>; MAX_ENUMERATION_ORDER] =
    [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];

fn aperiodic_of_order(order: usize) -> &'static [FiniteSemigroup] {
    APERIODIC[order - 1].get_or_init(|| {
        enumerate_semigroups(order)
            .expect("order within bound")
            .into_iter()
            .filter(FiniteSemigroup::is_aperiodic)
            .collect()
    })
}

/// Every aperiodic table of order `1..=order_max`.
pub fn enumerate_aperiodic(order_max: usize) -> Result<impl Iterator<Item = &'static FiniteSemigroup>> {
    if order_max == 0 || order_max > MAX_ENUMERATION_ORDER {
        return Err(Error::BoundExceeded {
            what: "semigroup order",
            value: order_max,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok((1..=order_max).flat_map(aperiodic_of_order))
}

/// A finite aperiodic semigroup and assignment separating two terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub semigroup: FiniteSemigroup,
    pub assignment: GeneratorAssignment,
    pub left: usize,
    pub right: usize,
}

/// Searches the aperiodic semigroups up to `order_max` for one in which the
/// two terms take different values.
pub fn find_refutation(t1: &OmegaTerm, t2: &OmegaTerm, order_max: usize) -> Result<Option<Refutation>> {
    let letters: Vec<char> = t1.letters().union(&t2.letters()).copied().collect();
    for s in enumerate_aperiodic(order_max)? {
        for g in s.assignments(&letters) {
            let left = s.evaluate(t1, &g)?;
            let right = s.evaluate(t2, &g)?;
            if left != right {
                return Ok(Some(Refutation {
                    semigroup: s.clone(),
                    assignment: g,
                    left,
                    right,
                }));
            }
        }
    }
    Ok(None)
}

/// Whether the terms agree in every aperiodic semigroup up to `order_max`
/// under every assignment.
pub fn agree_on_aperiodic(t1: &OmegaTerm, t2: &OmegaTerm, order_max: usize) -> Result<bool> {
    Ok(find_refutation(t1, t2, order_max)?.is_none())
}

/// The semigroup of state maps generated by the letters of an automaton.
#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    elements: Vec<Vec<u32>>,
    /// `generators[i]` is the element index of letter `i`.
    generators: Vec<usize>,
}

impl TransformationSemigroup {
    pub fn of_dfa(d: &Dfa) -> Self {
        let n = d.num_states();
        let gens: Vec<Vec<u32>> = (0..d.alphabet().len())
            .map(|x| (0..n).map(|q| d.next(q, x) as u32).collect())
            .collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut elements = Vec::new();
        let mut generators = Vec::new();
        let mut queue = VecDeque::new();
        for g in &gens {
            let id = *index.entry(g.clone()).or_insert_with(|| {
                elements.push(g.clone());
                queue.push_back(elements.len() - 1);
                elements.len() - 1
            });
            generators.push(id);
        }
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                // apply element i, then generator g
                let f: Vec<u32> = elements[i].iter().map(|&q| g[q as usize]).collect();
                if !index.contains_key(&f) {
                    index.insert(f.clone(), elements.len());
                    elements.push(f);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Self { elements, generators }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Aperiodic iff every element's functional graph has only fixed-point
    /// cycles.
    pub fn is_aperiodic(&self) -> bool {
        self.elements.iter().all(|f| only_trivial_cycles(f))
    }

    /// An element with a nontrivial cycle, if any.
    pub fn periodic_witness(&self) -> Option<&[u32]> {
        self.elements
            .iter()
            .find(|f| !only_trivial_cycles(f))
            .map(Vec::as_slice)
    }

    pub fn to_finite_semigroup(&self) -> FiniteSemigroup {
        if self.elements.is_empty() {
            return FiniteSemigroup {
                order: 1,
                table: vec![0],
            };
        }
        let index: HashMap<&[u32], usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let n = self.elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                let ab: Vec<u32> = a.iter().map(|&q| b[q as usize]).collect();
                table.push(index[ab.as_slice()]);
            }
        }
        FiniteSemigroup { order: n, table }
    }
}

fn only_trivial_cycles(f: &[u32]) -> bool {
    let n = f.len();
    // f^n maps every state onto a cycle; those must all be fixed points
    let mut img: Vec<u32> = (0..n as u32).collect();
    for _ in 0..n {
        img = img.iter().map(|&q| f[q as usize]).collect();
    }
    img.iter().all(|&q| f[q as usize] == q)
}

/// Transition semigroup of a complete automaton as a multiplication table.
///
/// An automaton over the empty alphabet yields the trivial semigroup.
pub fn transition_semigroup(d: &Dfa) -> FiniteSemigroup {
    TransformationSemigroup::of_dfa(d).to_finite_semigroup()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nilpotent_pair() -> FiniteSemigroup {
        // x = 0, x^2 = 1, x^3 = x^2
        FiniteSemigroup::new(vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn left_zero_band() -> FiniteSemigroup {
        FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn omega_powers() {
        let b = left_zero_band();
        assert_eq!(b.omega_power(0), 0);
        assert_eq!(b.omega_power(1), 1);
        assert_eq!(nilpotent_pair().omega_power(0), 1);
        assert_eq!(z2().omega_power(1), 0);
    }

    #[test]
    fn aperiodicity_and_index() {
        assert!(left_zero_band().is_aperiodic());
        assert!(!z2().is_aperiodic());
        assert!(nilpotent_pair().is_aperiodic());
        assert_eq!(left_zero_band().ind(), 1);
        assert_eq!(nilpotent_pair().ind(), 2);
        assert_eq!(z2().ind(), 1);
    }

    #[test]
    fn rejects_bad_tables() {
        // 0*1 = 1, 1*0 = 0, otherwise 0: (1*0)*1 = 1 but 1*(0*1) = 0
        let err = FiniteSemigroup::new(vec![vec![0, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
        assert!(FiniteSemigroup::new(vec![vec![0, 2], vec![0, 0]]).is_err());
        assert!(FiniteSemigroup::new(vec![]).is_err());
        assert!(FiniteSemigroup::from_json(r#"{"order":2,"table":[[0,0]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = nilpotent_pair();
        assert_eq!(FiniteSemigroup::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn evaluation() {
        let s = nilpotent_pair();
        let g = parse_assignment("a=0").unwrap();
        assert_eq!(s.evaluate(&"a".parse().unwrap(), &g).unwrap(), 0);
        assert_eq!(s.evaluate(&"(a)".parse().unwrap(), &g).unwrap(), 1);
        assert!(matches!(
            s.evaluate(&"ab".parse().unwrap(), &g),
            Err(Error::UnassignedLetter('b'))
        ));
    }

    #[test]
    fn enumeration_counts() {
        // labelled semigroups of orders 1, 2, 3
        assert_eq!(enumerate_semigroups(1).unwrap().len(), 1);
        assert_eq!(enumerate_semigroups(2).unwrap().len(), 8);
        assert_eq!(enumerate_semigroups(3).unwrap().len(), 113);
        let ap: Vec<_> = enumerate_aperiodic(2).unwrap().collect();
        assert!(ap.iter().all(|s| s.is_aperiodic()));
        assert!(!ap.contains(&&z2()));
        assert!(ap.contains(&&nilpotent_pair()));
        assert!(enumerate_aperiodic(5).is_err());
    }

    #[test]
    fn agreement_examples() {
        let t = |s: &str| s.parse::<OmegaTerm>().unwrap();
        assert!(agree_on_aperiodic(&t("(a)"), &t("(a)(a)"), 3).unwrap());
        assert!(!agree_on_aperiodic(&t("a"), &t("aa"), 3).unwrap());
        assert!(!agree_on_aperiodic(&t("(a)"), &t("(b)"), 2).unwrap());
    }
}
