//! Best-first search over single rule applications, used when the repair
//! loop gets stuck.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::check::{defect, is_nf_atoms};
use super::rules::{apply_rule, Direction, RewriteStep, Rule};
use crate::term::{Alphabet, Atom, OmegaTerm};

/// Serialization offsets of every atom, at every depth.
fn atom_offsets(atoms: &[Atom], base: usize, out: &mut Vec<(usize, Option<usize>)>) {
    let mut off = base;
    for a in atoms {
        let body_len = a.body().map(|b| b.atoms().len());
        out.push((off, body_len));
        if let Some(b) = a.body() {
            atom_offsets(b.atoms(), off + 1, out);
        }
        off += a.len();
    }
}

fn moves(t: &OmegaTerm) -> Vec<(Rule, Direction, usize, usize)> {
    use Direction::*;
    let mut offs = Vec::new();
    atom_offsets(t.atoms(), 0, &mut offs);
    let mut out = Vec::new();
    for &(pos, body_len) in &offs {
        for rule in [Rule::R1, Rule::R3, Rule::R4L, Rule::R4R] {
            out.push((rule, Contract, pos, 0));
        }
        out.push((Rule::R4L, Expand, pos, 0));
        for arg in 1..=3 {
            out.push((Rule::R5, Expand, pos, arg));
        }
        if let Some(n) = body_len {
            out.push((Rule::R4R, Expand, pos, 0));
            out.push((Rule::R2, Expand, pos, 2));
            for k in 2..=n {
                out.push((Rule::R2, Contract, pos, k));
            }
            for arg in 1..=n {
                out.push((Rule::R5, Contract, pos, arg));
            }
        }
    }
    out
}

/// Rule applications leading from `t` to a normal form, exploring at most
/// `limit` terms no longer than `max_len`.
pub(crate) fn search(t: &OmegaTerm, alph: &Alphabet, limit: usize, max_len: usize) -> Option<Vec<RewriteStep>> {
    let score = |u: &OmegaTerm| 4 * defect(u.atoms(), alph) + u.len();
    let mut parent: HashMap<OmegaTerm, Option<RewriteStep>> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let mut nodes = vec![t.clone()];
    parent.insert(t.clone(), None);
    heap.push(Reverse((score(t), 0usize)));
    let mut seen = 0;
    while let Some(Reverse((_, id))) = heap.pop() {
        let u = nodes[id].clone();
        if is_nf_atoms(u.atoms(), alph) {
            let mut steps = Vec::new();
            let mut cur = u;
            while let Some(Some(s)) = parent.get(&cur) {
                cur = s.before.clone();
                steps.push(s.clone());
            }
            steps.reverse();
            return Some(steps);
        }
        seen += 1;
        if seen > limit {
            return None;
        }
        for (rule, direction, position, arg) in moves(&u) {
            let Ok(v) = apply_rule(&u, rule, direction, position, arg) else {
                continue;
            };
            if v.len() > max_len || parent.contains_key(&v) {
                continue;
            }
            let s = score(&v);
            parent.insert(
                v.clone(),
                Some(RewriteStep {
                    rule,
                    direction,
                    position,
                    arg,
                    before: u.clone(),
                    after: v.clone(),
                }),
            );
            heap.push(Reverse((s, nodes.len())));
            nodes.push(v);
        }
    }
    None
}
