//! Normalization by repeated local repair of the first violated condition.
//!
//! Every repair is a short sequence of rule applications, so the result
//! comes with a trace. Violations found in an expansion are mapped back to
//! the atoms they are copies of; when a violated factor straddles a power
//! boundary the power is first unfolded by one copy (4L/4R expansion) or its
//! base rotated so that the factor becomes literal.

use super::check::{first_violation, is_nf_atoms, level_violations, Violation};
use super::rules::{apply_rule, Direction, RewriteStep, RewriteTrace, Rule};
use super::view::{seq_at, Origin, View};
use crate::error::{Error, Result};
use crate::term::{atoms_syms, Alphabet, Atom, OmegaTerm};
use crate::words::primitive_root;

/// Copies of a neighbouring base tried around an intermediate core.
fn max_copies(bl: &[Atom], br: &[Atom]) -> usize {
    atoms_syms(bl).len().max(atoms_syms(br).len()) + 1
}

struct Normalizer<'a> {
    alph: &'a Alphabet,
    t: OmegaTerm,
    steps: Vec<RewriteStep>,
    budget: usize,
    max_len: usize,
    /// Normalize non-normal bases as terms of their own before anything else.
    bases_first: bool,
}

fn stalled(t: &OmegaTerm, what: &str) -> Error {
    Error::Resource(format!("normalization stalled at {t}: {what}"))
}

impl<'a> Normalizer<'a> {
    fn seq(&self, path: &[usize]) -> Vec<Atom> {
        seq_at(self.t.atoms(), path).to_vec()
    }

    fn pos(&self, path: &[usize], idx: usize) -> usize {
        super::view::position(&self.t, path, idx)
    }

    fn step(&mut self, rule: Rule, direction: Direction, path: &[usize], idx: usize, arg: usize) -> Result<()> {
        if self.steps.len() >= self.budget {
            return Err(Error::GuardExceeded(self.budget));
        }
        let position = self.pos(path, idx);
        let after = apply_rule(&self.t, rule, direction, position, arg)?;
        if after.len() > self.max_len {
            return Err(stalled(&self.t, "term grew too long"));
        }
        self.steps.push(RewriteStep {
            rule,
            direction,
            position,
            arg,
            before: std::mem::replace(&mut self.t, after.clone()),
            after,
        });
        Ok(())
    }

    /// Normalizes the sequence at `path`, viewed as a term on its own.
    fn normalize_at(&mut self, path: &[usize]) -> Result<()> {
        loop {
            let seq = self.seq(path);
            if let Some(i) = (0..seq.len()).find(|&i| {
                seq[i]
                    .body()
                    .is_some_and(|b| b.atoms().len() == 1 && b.atoms()[0].is_power())
            }) {
                self.step(Rule::R1, Direction::Contract, path, i, 0)?;
                continue;
            }
            if self.bases_first {
                if let Some(i) =
                    (0..seq.len()).find(|&i| seq[i].body().is_some_and(|b| !is_nf_atoms(b.atoms(), self.alph)))
                {
                    self.normalize_at(&join(path, &[i]))?;
                    continue;
                }
            }
            let Some((view, v, _)) = first_violation(&seq, self.alph) else {
                return Ok(());
            };
            let before = self.steps.len();
            self.repair(path, &view, &v)?;
            if self.steps.len() == before {
                return Err(stalled(&self.t, "repair made no progress"));
            }
        }
    }

    fn repair(&mut self, path: &[usize], view: &View, v: &Violation) -> Result<()> {
        let origins = &view.origins;
        if let Violation::NotLyndon { power } = *v {
            let o = &origins[power];
            return self.fix_base(&join(path, &o.path), o.idx);
        }
        let (lo, hi) = v.region();
        if let Violation::Intermediate { left, right, .. } = *v {
            let (ol, or) = (&origins[left], &origins[right]);
            let n = ol.copies.len();
            let wraps = n > 0
                && ol.path == or.path
                && ol.copies[..n - 1] == or.copies[..n - 1]
                && ol.copies[n - 1] + 1 == or.copies[n - 1]
                && (lo..=hi).all(|i| origins[i].path == ol.path)
                && (lo..hi).filter(|&i| !origins[i].adjacent(&origins[i + 1])).count() == 1;
            if wraps {
                return self.canonicalize_wrap(&join(path, &ol.path), ol.idx, or.idx);
            }
        }
        if let Some(i) = (lo..hi).find(|&i| !origins[i].adjacent(&origins[i + 1])) {
            return self.unfold_junction(path, &origins[i], &origins[i + 1]);
        }
        if let Violation::Removable { prefix, .. } = *v {
            // a removable copy at either end of the view that lies inside a
            // power is peeled off that power first
            let o = &origins[lo];
            let r = view.rank();
            let at_end = if prefix {
                view.atoms[hi + 1..].iter().all(|a| a.rank() < r)
            } else {
                view.atoms[..lo].iter().all(|a| a.rank() < r)
            };
            if at_end && !o.path.is_empty() {
                let rule = if prefix { Rule::R4R } else { Rule::R4L };
                return self.step(rule, Direction::Expand, path, o.path[0], 0);
            }
        }
        let ctx = join(path, &origins[lo].path);
        let real = |i: usize| origins[lo].idx + (i - lo);
        match *v {
            Violation::Intermediate { left, right, .. } => self.canonicalize(&ctx, real(left), real(right)),
            Violation::Removable {
                power, prefix: true, ..
            } => self.step(Rule::R4R, Direction::Contract, &ctx, real(power), 0),
            Violation::Removable {
                prefix: false,
                start,
                end,
                ..
            } => self.step(Rule::R4L, Direction::Contract, &ctx, real(start), end - start),
            Violation::NotLyndon { .. } => unreachable!(),
        }
    }

    /// Makes the base of the power `idx` at `path` a primitive Lyndon word.
    fn fix_base(&mut self, path: &[usize], idx: usize) -> Result<()> {
        let body = self.seq(path)[idx].body().expect("power").atoms().to_vec();
        let mut inner = path.to_vec();
        inner.push(idx);
        if body.len() == 1 && body[0].is_power() {
            return self.step(Rule::R1, Direction::Contract, path, idx, 0);
        }
        let (_, k) = primitive_root(&body)?;
        if k > 1 {
            return self.step(Rule::R2, Direction::Contract, path, idx, k);
        }
        let best = (1..body.len()).fold(0, |best, c| {
            let rot = |c: usize| atoms_syms(&[&body[c..], &body[..c]].concat());
            if self.less(&rot(c), &rot(best)) {
                c
            } else {
                best
            }
        });
        if best == 0 {
            if !is_nf_atoms(&body, self.alph) {
                return self.normalize_at(&inner);
            }
            return Err(stalled(&self.t, "least rotation of a base is not well parenthesized"));
        }
        self.rotate(path, idx, best)
    }

    fn less(&self, a: &[crate::term::Sym], b: &[crate::term::Sym]) -> bool {
        for (x, y) in a.iter().zip(b) {
            match self.alph.cmp_sym(*x, *y) {
                std::cmp::Ordering::Equal => continue,
                o => return o.is_lt(),
            }
        }
        a.len() < b.len()
    }

    /// `(xy) → (xy)xy → x(yx)y` with `|x| = cut` atoms.
    fn rotate(&mut self, path: &[usize], idx: usize, cut: usize) -> Result<()> {
        self.step(Rule::R4R, Direction::Expand, path, idx, 0)?;
        self.step(Rule::R5, Direction::Contract, path, idx, cut)
    }

    /// Makes the junction between two atoms adjacent in an expansion
    /// literal in the term.
    fn unfold_junction(&mut self, path: &[usize], a: &Origin, b: &Origin) -> Result<()> {
        let level = (0..)
            .find(|&l| {
                let ka = (a.path.get(l), a.copies.get(l));
                let kb = (b.path.get(l), b.copies.get(l));
                ka != kb || ka.0.is_none()
            })
            .expect("finite paths");
        let ctx = join(path, &a.path[..level.min(a.path.len())]);
        match (a.path.get(level), b.path.get(level)) {
            (Some(&p), Some(&q)) if p == q => {
                // consecutive copies of the same base
                let body_len = self.seq(&ctx)[p].body().expect("power").atoms().len();
                if body_len == 1 {
                    return self.step(Rule::R1, Direction::Contract, &ctx, p, 0);
                }
                // square the base so the junction lies inside it
                self.step(Rule::R2, Direction::Expand, &ctx, p, 2)
            }
            (Some(&p), _) => self.step(Rule::R4R, Direction::Expand, &ctx, p, 0),
            (None, Some(&q)) => self.step(Rule::R4L, Direction::Expand, &ctx, q, 0),
            (None, None) => Err(stalled(&self.t, "junction is already literal")),
        }
    }

    /// Rewrites the factor between the powers `l < r` at `path` into the
    /// shortest form meeting conditions 2 and 4 locally.
    fn canonicalize(&mut self, path: &[usize], l: usize, r: usize) -> Result<()> {
        let seq = self.seq(path);
        let bl = seq[l].body().expect("power").atoms().to_vec();
        let br = seq[r].body().expect("power").atoms().to_vec();
        let mid = seq[l + 1..r].to_vec();
        let splits = [strip(&mid, &bl, &br, true), strip(&mid, &bl, &br, false)];
        let (a0, core0, b0) = &splits[0];
        if core0.is_empty() && bl == br {
            for _ in 0..*a0 {
                self.step(Rule::R4R, Direction::Contract, path, l, 0)?;
            }
            for _ in 0..*b0 {
                self.step(Rule::R4L, Direction::Contract, path, l + 1, br.len())?;
            }
            return self.step(Rule::R3, Direction::Contract, path, l, 0);
        }
        let mut candidates: Vec<(Vec<Atom>, usize, usize, usize)> = Vec::new();
        for (s, (_, core, _)) in splits.iter().enumerate() {
            for i in 0..=max_copies(&bl, &br) {
                for k in 0..=max_copies(&bl, &br) {
                    let cand = [rep(&bl, i), core.clone(), rep(&br, k)].concat();
                    candidates.push((cand, s, i, k));
                }
            }
        }
        candidates.sort_by(|x, y| {
            let (sx, sy) = (atoms_syms(&x.0), atoms_syms(&y.0));
            sx.len().cmp(&sy.len()).then_with(|| {
                if self.less(&sx, &sy) {
                    std::cmp::Ordering::Less
                } else if self.less(&sy, &sx) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
        });
        let local =
            |cand: &[Atom]| -> Vec<Atom> { [vec![seq[l].clone()], cand.to_vec(), vec![seq[r].clone()]].concat() };
        let chosen = candidates
            .iter()
            .find(|c| is_nf_atoms(&local(&c.0), self.alph))
            .or_else(|| {
                candidates.iter().find(|c| {
                    level_violations(&local(&c.0), self.alph, false)
                        .iter()
                        .all(|v| matches!(v, Violation::NotLyndon { .. }))
                })
            })
            .ok_or_else(|| stalled(&self.t, "no admissible intermediate"))?
            .clone();
        if chosen.0 == mid {
            return Err(stalled(&self.t, "intermediate already canonical"));
        }
        let (a, _, b) = &splits[chosen.1];
        let (i, k) = (chosen.2, chosen.3);
        // adjust the copies on the right first so that `r` stays valid
        let mut r = r;
        for _ in k..*b {
            self.step(Rule::R4L, Direction::Contract, path, r - br.len(), br.len())?;
            r -= br.len();
        }
        for _ in *b..k {
            self.step(Rule::R4L, Direction::Expand, path, r, 0)?;
            r += br.len();
        }
        for _ in i..*a {
            self.step(Rule::R4R, Direction::Contract, path, l, 0)?;
        }
        for _ in *a..i {
            self.step(Rule::R4R, Direction::Expand, path, l, 0)?;
        }
        Ok(())
    }
}

impl<'a> Normalizer<'a> {
    /// Like [`Self::canonicalize`] for the intermediate running from the
    /// power `last` around the end of the base at `path` to the power
    /// `first`.
    fn canonicalize_wrap(&mut self, path: &[usize], last: usize, first: usize) -> Result<()> {
        let seq = self.seq(path);
        let bl = seq[last].body().expect("power").atoms().to_vec();
        let br = seq[first].body().expect("power").atoms().to_vec();
        let (mut s, mut p) = (seq[last + 1..].to_vec(), seq[..first].to_vec());
        let (mut a, mut b) = (0, 0);
        while s.starts_with(&bl) {
            s.drain(..bl.len());
            a += 1;
        }
        while p.ends_with(&br) {
            p.truncate(p.len() - br.len());
            b += 1;
        }
        let core = [s, p].concat();
        if core.is_empty() && bl == br {
            if last == first {
                // the base is a power of `bl`
                for _ in 0..a {
                    self.step(Rule::R4R, Direction::Contract, path, last, 0)?;
                }
                for _ in 0..b {
                    self.step(Rule::R4L, Direction::Contract, path, 0, br.len())?;
                }
                let outer = &path[..path.len() - 1];
                return self.step(Rule::R1, Direction::Contract, outer, path[path.len() - 1], 0);
            }
            // bring the two powers together inside the base
            let outer = &path[..path.len() - 1];
            return self.rotate(outer, path[path.len() - 1], first + 1);
        }
        let mut candidates: Vec<(Vec<Atom>, usize, usize)> = Vec::new();
        for i in 0..=max_copies(&bl, &br) {
            for k in 0..=max_copies(&bl, &br) {
                candidates.push(([rep(&bl, i), core.clone(), rep(&br, k)].concat(), i, k));
            }
        }
        candidates.sort_by(|x, y| {
            let (sx, sy) = (atoms_syms(&x.0), atoms_syms(&y.0));
            sx.len().cmp(&sy.len()).then_with(|| {
                if self.less(&sx, &sy) {
                    std::cmp::Ordering::Less
                } else if self.less(&sy, &sx) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
        });
        let local = |cand: &[Atom]| -> Vec<Atom> {
            [vec![seq[last].clone()], cand.to_vec(), vec![seq[first].clone()]].concat()
        };
        let (_, i, k) = candidates
            .iter()
            .find(|c| is_nf_atoms(&local(&c.0), self.alph))
            .or_else(|| {
                candidates.iter().find(|c| {
                    level_violations(&local(&c.0), self.alph, false)
                        .iter()
                        .all(|v| matches!(v, Violation::NotLyndon { .. }))
                })
            })
            .ok_or_else(|| stalled(&self.t, "no admissible intermediate"))?
            .clone();
        if (i, k) == (a, b) {
            return Err(stalled(&self.t, "intermediate already canonical"));
        }
        // copies after `last` first so that `first` stays valid
        for _ in i..a {
            self.step(Rule::R4R, Direction::Contract, path, last, 0)?;
        }
        for _ in a..i {
            self.step(Rule::R4R, Direction::Expand, path, last, 0)?;
        }
        let mut first = first;
        for _ in k..b {
            self.step(Rule::R4L, Direction::Contract, path, first - br.len(), br.len())?;
            first -= br.len();
        }
        for _ in b..k {
            self.step(Rule::R4L, Direction::Expand, path, first, 0)?;
            first += br.len();
        }
        Ok(())
    }
}

pub(crate) fn rep(atoms: &[Atom], k: usize) -> Vec<Atom> {
    (0..k).flat_map(|_| atoms.iter().cloned()).collect()
}

fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    [a, b].concat()
}

/// `mid = bl^a core br^b` with `a` and `b` maximal, stripping the left
/// copies first when `left_first`.
fn strip(mid: &[Atom], bl: &[Atom], br: &[Atom], left_first: bool) -> (usize, Vec<Atom>, usize) {
    let mut core = mid.to_vec();
    let (mut a, mut b) = (0, 0);
    let strip_left = |core: &mut Vec<Atom>, a: &mut usize| {
        while core.starts_with(bl) {
            core.drain(..bl.len());
            *a += 1;
        }
    };
    let strip_right = |core: &mut Vec<Atom>, b: &mut usize| {
        while core.ends_with(br) {
            core.truncate(core.len() - br.len());
            *b += 1;
        }
    };
    if left_first {
        strip_left(&mut core, &mut a);
        strip_right(&mut core, &mut b);
    } else {
        strip_right(&mut core, &mut b);
        strip_left(&mut core, &mut a);
    }
    (a, core, b)
}

/// Terms explored by the fallback search.
const SEARCH_LIMIT: usize = 50_000;

fn greedy(t: &OmegaTerm, alph: &Alphabet, bases_first: bool) -> Result<Vec<RewriteStep>> {
    let mut n = Normalizer {
        alph,
        t: t.clone(),
        steps: Vec::new(),
        budget: 10 * t.len() * t.len(),
        max_len: 4 * t.len() + 16,
        bases_first,
    };
    n.normalize_at(&[])?;
    Ok(n.steps)
}

/// The normal form of `t` together with a trace reaching it.
///
/// The repair loop runs first with two orderings; if both stall the result
/// comes from a bounded best-first search. Aborts with
/// [`Error::GuardExceeded`] when all of them fail.
pub fn normalize(t: &OmegaTerm, alph: &Alphabet) -> Result<(OmegaTerm, RewriteTrace)> {
    let steps = greedy(t, alph, false)
        .or_else(|_| greedy(t, alph, true))
        .or_else(|e| super::search::search(t, alph, SEARCH_LIMIT, 4 * t.len() + 16).ok_or(e))
        .map_err(|e| match e {
            Error::GuardExceeded(n) => Error::GuardExceeded(n),
            _ => Error::GuardExceeded(10 * t.len() * t.len()),
        })?;
    let end = steps.last().map_or_else(|| t.clone(), |s| s.after.clone());
    Ok((
        end.clone(),
        RewriteTrace {
            start: t.clone(),
            steps,
            end,
        },
    ))
}
