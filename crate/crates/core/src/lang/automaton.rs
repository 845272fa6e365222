use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::Letter;

/// A complete deterministic automaton over an ordered alphabet.
///
/// Automata returned by the public constructors and operations are minimal,
/// with states numbered in breadth-first order from the initial state
/// (letters visited in alphabet order). Two of them with the same alphabet
/// are equal iff they accept the same language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<Letter>,
    /// `delta[q * |alphabet| + x]`
    delta: Vec<usize>,
    initial: usize,
    accepting: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DfaFile {
    states: usize,
    alphabet: Vec<String>,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<usize>,
}

/// A state of a product automaton.
type Pair = (usize, usize);

impl Dfa {
    /// Builds and minimizes an automaton from raw parts.
    pub fn from_parts(
        alphabet: Vec<Letter>,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 || accepting.len() != n || initial >= n {
            return Err(Error::Precondition("inconsistent automaton".into()));
        }
        let mut sorted = alphabet.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != alphabet {
            return Err(Error::Precondition("alphabet must be sorted and distinct".into()));
        }
        let mut flat = Vec::with_capacity(n * alphabet.len());
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().any(|&q| q >= n) {
                return Err(Error::Precondition("transition table is not complete".into()));
            }
            flat.extend(row);
        }
        Ok(Dfa {
            alphabet,
            delta: flat,
            initial,
            accepting,
        }
        .minimize())
    }

    fn sink_only(alphabet: &[Letter], accepting: bool) -> Self {
        Dfa {
            alphabet: alphabet.to_vec(),
            delta: vec![0; alphabet.len()],
            initial: 0,
            accepting: vec![accepting],
        }
    }

    pub fn empty_language(alphabet: &[Letter]) -> Self {
        Self::sink_only(alphabet, false)
    }

    pub fn epsilon(alphabet: &[Letter]) -> Self {
        let k = alphabet.len();
        if k == 0 {
            return Self::sink_only(alphabet, true);
        }
        let mut delta = vec![1; 2 * k];
        delta[..k].fill(1);
        Dfa {
            alphabet: alphabet.to_vec(),
            delta,
            initial: 0,
            accepting: vec![true, false],
        }
    }

    pub fn single_letter(alphabet: &[Letter], l: Letter) -> Self {
        let k = alphabet.len();
        let x = alphabet
            .iter()
            .position(|&a| a == l)
            .expect("letter must belong to the alphabet");
        let mut delta = vec![2; 3 * k];
        delta[x] = 1;
        Dfa {
            alphabet: alphabet.to_vec(),
            delta,
            initial: 0,
            accepting: vec![false, true, false],
        }
        .minimize()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Successor of `q` under the `x`-th letter of the alphabet.
    pub fn next(&self, q: usize, x: usize) -> usize {
        self.delta[q * self.alphabet.len() + x]
    }

    pub fn letter_index(&self, l: Letter) -> Option<usize> {
        self.alphabet.binary_search(&l).ok()
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut q = self.initial;
        for &l in w {
            match self.letter_index(l) {
                Some(x) => q = self.next(q, x),
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn accepts_str(&self, w: &str) -> bool {
        let letters: Vec<Letter> = w.chars().map(Letter::Plain).collect();
        self.accepts(&letters)
    }

    fn reachable_renumbered(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut id = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        id[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for x in 0..k {
                let r = self.next(q, x);
                if id[r] == usize::MAX {
                    id[r] = order.len();
                    order.push(r);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for x in 0..k {
                delta.push(id[self.next(q, x)]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    /// Minimal automaton for the same language (Hopcroft partition
    /// refinement), canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let d = self.reachable_renumbered();
        let n = d.num_states();
        let k = d.alphabet.len();
        let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
        for q in 0..n {
            for (x, inv) in inverse.iter_mut().enumerate() {
                inv[d.next(q, x)].push(q);
            }
        }
        let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| d.accepting[q]);
        let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
        let mut block_of = vec![0; n];
        for (b, members) in blocks.iter().enumerate() {
            for &q in members {
                block_of[q] = b;
            }
        }
        let mut work: VecDeque<(usize, usize)> = VecDeque::new();
        let mut in_work: Vec<Vec<bool>> = Vec::new();
        let smallest = (0..blocks.len()).min_by_key(|&b| blocks[b].len()).unwrap_or(0);
        for b in 0..blocks.len() {
            let seed = b == smallest && blocks.len() > 1;
            in_work.push(vec![seed; k]);
            if seed {
                work.extend((0..k).map(|x| (b, x)));
            }
        }
        let mut marked = vec![false; n];
        while let Some((b, x)) = work.pop_front() {
            in_work[b][x] = false;
            let splitter: Vec<usize> = blocks[b].iter().flat_map(|&q| inverse[x][q].iter().copied()).collect();
            let mut touched: Vec<usize> = Vec::new();
            for &p in &splitter {
                if !marked[p] {
                    marked[p] = true;
                    touched.push(block_of[p]);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for y in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[y].iter().partition(|&&q| marked[q]);
                if outside.is_empty() {
                    continue;
                }
                let new = blocks.len();
                let (keep, moved) = if inside.len() <= outside.len() {
                    (outside, inside)
                } else {
                    (inside, outside)
                };
                for &q in &moved {
                    block_of[q] = new;
                }
                blocks[y] = keep;
                blocks.push(moved);
                // pending or not, the moved part is the smaller half
                in_work.push(vec![true; k]);
                work.extend((0..k).map(|z| (new, z)));
            }
            for &p in &splitter {
                marked[p] = false;
            }
        }
        let mut delta = Vec::with_capacity(blocks.len() * k);
        let mut accepting = Vec::with_capacity(blocks.len());
        for members in &blocks {
            let q = members[0];
            for x in 0..k {
                delta.push(block_of[d.next(q, x)]);
            }
            accepting.push(d.accepting[q]);
        }
        Dfa {
            alphabet: d.alphabet,
            delta,
            initial: block_of[0],
            accepting,
        }
        .reachable_renumbered()
    }

    /// The same language over a larger alphabet; new letters lead to a sink.
    pub fn with_alphabet(&self, alphabet: &[Letter]) -> Dfa {
        if alphabet == self.alphabet.as_slice() {
            return self.clone();
        }
        let map: Vec<Option<usize>> = alphabet.iter().map(|&l| self.letter_index(l)).collect();
        assert!(
            self.alphabet.iter().all(|l| alphabet.contains(l)),
            "alphabet must be a superset"
        );
        let n = self.num_states();
        let sink = n;
        let mut delta = Vec::with_capacity((n + 1) * alphabet.len());
        for q in 0..=n {
            for m in &map {
                delta.push(match (q < n, m) {
                    (true, Some(x)) => self.next(q, *x),
                    _ => sink,
                });
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa {
            alphabet: alphabet.to_vec(),
            delta,
            initial: self.initial,
            accepting,
        }
        .minimize()
    }

    fn aligned(&self, other: &Dfa) -> (Dfa, Dfa) {
        if self.alphabet == other.alphabet {
            return (self.clone(), other.clone());
        }
        let mut all = self.alphabet.clone();
        all.extend(other.alphabet.iter().copied());
        all.sort();
        all.dedup();
        (self.with_alphabet(&all), other.with_alphabet(&all))
    }

    /// Reachable product automaton accepting where `f` holds.
    pub fn product(&self, other: &Dfa, f: impl Fn(bool, bool) -> bool) -> Dfa {
        let (a, b) = self.aligned(other);
        let k = a.alphabet.len();
        let mut id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(a.initial, b.initial)];
        id.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for x in 0..k {
                let t = (a.next(p, x), b.next(q, x));
                let next = *id.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                delta.push(next);
            }
            i += 1;
        }
        let accepting = pairs.iter().map(|&(p, q)| f(a.accepting[p], b.accepting[q])).collect();
        Dfa {
            alphabet: a.alphabet,
            delta,
            initial: 0,
            accepting,
        }
        .minimize()
    }

    pub fn intersection(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |x, y| x || y)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
        .minimize()
    }

    pub fn is_empty(&self) -> bool {
        self.reachable_renumbered().accepting.iter().all(|a| !a)
    }

    /// Emptiness of the intersection, exploring the product lazily.
    pub fn intersection_is_empty(&self, other: &Dfa) -> bool {
        self.shortest_common_word(other).is_none()
    }

    /// A shortest word accepted by both automata.
    pub fn shortest_common_word(&self, other: &Dfa) -> Option<Vec<Letter>> {
        let (a, b) = self.aligned(other);
        let k = a.alphabet.len();
        let start = (a.initial, b.initial);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if a.accepting[p] && b.accepting[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, x))) = parent.get(&cur) {
                    word.push(a.alphabet[*x]);
                    cur = *prev;
                }
                word.reverse();
                return Some(word);
            }
            for x in 0..k {
                let t = (a.next(p, x), b.next(q, x));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert(Some(((p, q), x)));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Dfa) -> bool {
        self.product(other, |x, y| x && !y).is_empty()
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        let (a, b) = self.aligned(other);
        a.minimize() == b.minimize()
    }

    fn as_nfa(&self, offset: usize, nfa: &mut Nfa) {
        let k = self.alphabet.len();
        for q in 0..self.num_states() {
            let mut row = Vec::with_capacity(k);
            for x in 0..k {
                row.push(self.next(q, x) + offset);
            }
            nfa.trans.push(row);
            nfa.eps.push(Vec::new());
            nfa.accept.push(false);
        }
    }

    /// Concatenation `L(self) L(other)`.
    pub fn concat(&self, other: &Dfa) -> Dfa {
        let (a, b) = self.aligned(other);
        let mut nfa = Nfa::default();
        a.as_nfa(0, &mut nfa);
        let off = a.num_states();
        b.as_nfa(off, &mut nfa);
        for q in 0..a.num_states() {
            if a.accepting[q] {
                nfa.eps[q].push(off + b.initial);
            }
        }
        for q in 0..b.num_states() {
            nfa.accept[off + q] = b.accepting[q];
        }
        nfa.start = a.initial;
        nfa.determinize(&a.alphabet)
    }

    /// Kleene star.
    pub fn star(&self) -> Dfa {
        let mut nfa = Nfa::default();
        self.as_nfa(0, &mut nfa);
        for q in 0..self.num_states() {
            nfa.accept[q] = self.accepting[q];
            if self.accepting[q] {
                nfa.eps[q].push(self.initial);
            }
        }
        let start = self.num_states();
        nfa.trans.push(vec![usize::MAX; self.alphabet.len()]);
        nfa.eps.push(vec![self.initial]);
        nfa.accept.push(true);
        nfa.start = start;
        nfa.determinize(&self.alphabet)
    }

    /// `k`-fold concatenation, by repeated squaring.
    pub fn power(&self, k: usize) -> Dfa {
        let mut result = Dfa::epsilon(&self.alphabet);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.concat(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.concat(&base);
            }
        }
        result
    }

    /// Accepted words of length at most `max_len`, shortlex order.
    pub fn accepted_words(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let counts = self.count_table(max_len);
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut prefix = Vec::new();
            self.enumerate_exact(self.initial, len, &counts, &mut prefix, &mut out);
        }
        out
    }

    fn enumerate_exact(
        &self,
        q: usize,
        remaining: usize,
        counts: &[Vec<u128>],
        prefix: &mut Vec<Letter>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if counts[remaining][q] == 0 {
            return;
        }
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for x in 0..self.alphabet.len() {
            prefix.push(self.alphabet[x]);
            self.enumerate_exact(self.next(q, x), remaining - 1, counts, prefix, out);
            prefix.pop();
        }
    }

    /// `counts[l][q]`: number of words of length `l` accepted from `q`
    /// (saturating).
    fn count_table(&self, max_len: usize) -> Vec<Vec<u128>> {
        let n = self.num_states();
        let mut counts = vec![self.accepting.iter().map(|&a| a as u128).collect::<Vec<_>>()];
        for l in 1..=max_len {
            let prev = &counts[l - 1];
            let row: Vec<u128> = (0..n)
                .map(|q| {
                    (0..self.alphabet.len())
                        .map(|x| prev[self.next(q, x)])
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
            counts.push(row);
        }
        counts
    }

    /// Number of accepted words of each length `0..=max_len`.
    pub fn count_by_length(&self, max_len: usize) -> Vec<u128> {
        self.count_table(max_len).iter().map(|row| row[self.initial]).collect()
    }

    /// A random accepted word of length at most `max_len`: a length is
    /// chosen uniformly among those with accepted words, then a word
    /// uniformly among the words of that length.
    pub fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Option<Vec<Letter>> {
        let counts = self.count_table(max_len);
        let lengths: Vec<usize> = (0..=max_len).filter(|&l| counts[l][self.initial] > 0).collect();
        if lengths.is_empty() {
            return None;
        }
        let mut remaining = lengths[rng.gen_range(0..lengths.len())];
        let mut q = self.initial;
        let mut word = Vec::with_capacity(remaining);
        while remaining > 0 {
            let total = counts[remaining][q];
            let mut pick = rng.gen_range(0..total);
            for x in 0..self.alphabet.len() {
                let c = counts[remaining - 1][self.next(q, x)];
                if pick < c {
                    word.push(self.alphabet[x]);
                    q = self.next(q, x);
                    break;
                }
                pick -= c;
            }
            remaining -= 1;
        }
        Some(word)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for q in 0..self.num_states() {
            let mut by_target: Vec<(usize, Vec<String>)> = Vec::new();
            for (x, l) in self.alphabet.iter().enumerate() {
                let r = self.next(q, x);
                match by_target.iter_mut().find(|(t, _)| *t == r) {
                    Some((_, labels)) => labels.push(l.to_string()),
                    None => by_target.push((r, vec![l.to_string()])),
                }
            }
            for (r, labels) in by_target {
                let _ = writeln!(out, "  q{q} -> q{r} [label=\"{}\"];", labels.join(","));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let k = self.alphabet.len();
        let file = DfaFile {
            states: self.num_states(),
            alphabet: self.alphabet.iter().map(|l| l.to_string()).collect(),
            delta: (0..self.num_states())
                .map(|q| (0..k).map(|x| self.next(q, x)).collect())
                .collect(),
            initial: self.initial,
            accepting: (0..self.num_states()).filter(|&q| self.accepting[q]).collect(),
        };
        serde_json::to_string(&file).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let file: DfaFile = serde_json::from_str(text)?;
        let mut alphabet = Vec::new();
        for s in &file.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.push(Letter::Plain(c)),
                _ => return Err(Error::Precondition(format!("bad letter '{s}'"))),
            }
        }
        if file.states != file.delta.len() {
            return Err(Error::Precondition("state count does not match delta".into()));
        }
        let mut accepting = vec![false; file.states];
        for q in file.accepting {
            *accepting
                .get_mut(q)
                .ok_or_else(|| Error::Precondition("accepting state out of range".into()))? = true;
        }
        Dfa::from_parts(alphabet, file.delta, file.initial, accepting)
    }
}

/// ε-automaton used as the intermediate of concatenation and star.
#[derive(Default)]
struct Nfa {
    trans: Vec<Vec<usize>>,
    eps: Vec<Vec<usize>>,
    accept: Vec<bool>,
    start: usize,
}

impl Nfa {
    fn closure(&self, set: &mut Vec<usize>) {
        let mut stack = set.clone();
        let mut seen: std::collections::HashSet<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if seen.insert(r) {
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        set.sort_unstable();
    }

    /// Subset construction followed by minimization.
    fn determinize(&self, alphabet: &[Letter]) -> Dfa {
        let k = alphabet.len();
        let mut start = vec![self.start];
        self.closure(&mut start);
        let mut id: HashMap<Vec<usize>, usize> = HashMap::new();
        id.insert(start.clone(), 0);
        let mut sets = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for x in 0..k {
                let mut next: Vec<usize> = sets[i]
                    .iter()
                    .map(|&q| self.trans[q][x])
                    .filter(|&r| r != usize::MAX)
                    .collect();
                next.sort_unstable();
                next.dedup();
                self.closure(&mut next);
                let target = match id.get(&next) {
                    Some(&t) => t,
                    None => {
                        id.insert(next.clone(), sets.len());
                        sets.push(next);
                        sets.len() - 1
                    }
                };
                delta.push(target);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accept[q])).collect();
        Dfa {
            alphabet: alphabet.to_vec(),
            delta,
            initial: 0,
            accepting,
        }
        .minimize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::RegularExpr;

    fn dfa(r: &str) -> Dfa {
        RegularExpr::parse(r).unwrap().to_dfa()
    }

    #[test]
    fn small_minimal_automata() {
        let ab = dfa("ab");
        assert_eq!(ab.num_states(), 4);
        assert!(ab.accepts_str("ab"));
        assert!(!ab.accepts_str("a"));
        assert!(!ab.accepts_str("abb"));
        // a^{>=2}: counter 0, 1, >=2; no sink needed over {a}
        let a2 = dfa("a*a^2");
        assert_eq!(a2.num_states(), 3);
        assert!(a2.accepts_str("aa") && a2.accepts_str("aaaa") && !a2.accepts_str("a"));
        let e = RegularExpr::Empty.to_dfa();
        assert_eq!(e.num_states(), 1);
        assert!(e.is_empty());
    }

    #[test]
    fn equivalence_and_inclusion() {
        assert!(dfa("(a|b)*").equivalent(&dfa("(a*b*)*")));
        assert!(dfa("a*a^3").is_subset_of(&dfa("a*a")));
        assert!(!dfa("a*a").is_subset_of(&dfa("a*a^3")));
        assert!(dfa("a*").intersection_is_empty(&dfa("b")));
        assert_eq!(
            dfa("(ab)*").shortest_common_word(&dfa("a(ba)*b")),
            Some(vec![Letter::Plain('a'), Letter::Plain('b')])
        );
    }

    #[test]
    fn enumeration_and_sampling() {
        let d = dfa("(a|b)b*");
        let words = d.accepted_words(2);
        assert_eq!(words.len(), 4);
        assert_eq!(d.count_by_length(3), vec![0, 2, 2, 2]);
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let w = d.sample_word(&mut rng, 5).unwrap();
            assert!(d.accepts(&w));
        }
    }

    #[test]
    fn json_round_trip() {
        let d = dfa("(a*a^3b)*");
        assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
        assert!(d.to_dot().starts_with("digraph"));
    }
}
