//! Combinatorics on words: primitivity, conjugacy, Lyndon words and the
//! Fine–Wilf periodicity test.
//!
//! Everything is generic over the symbol type; functions taking a
//! comparator (`*_by`) let callers impose an alphabet order other than the
//! symbol type's own `Ord`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest period length `p` dividing `|w|` with `w = (w[..p])^{|w|/p}`.
fn root_len<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

pub fn is_primitive<T: PartialEq>(w: &[T]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(root_len(w) == w.len())
}

/// `(r, k)` with `w = r^k` and `r` primitive.
pub fn primitive_root<T: PartialEq + Clone>(w: &[T]) -> Result<(Vec<T>, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let p = root_len(w);
    Ok((w[..p].to_vec(), w.len() / p))
}

/// Compares the rotations of `w` starting at `i` and `j`.
fn cmp_rotations<T, F>(w: &[T], i: usize, j: usize, cmp: &F) -> Ordering
where
    F: Fn(&T, &T) -> Ordering,
{
    let n = w.len();
    for k in 0..n {
        match cmp(&w[(i + k) % n], &w[(j + k) % n]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Start index of the least rotation (first one, in case of ties).
pub fn least_rotation_by<T, F>(w: &[T], cmp: F) -> usize
where
    F: Fn(&T, &T) -> Ordering,
{
    (1..w.len()).fold(0, |best, i| {
        if cmp_rotations(w, i, best, &cmp) == Ordering::Less {
            i
        } else {
            best
        }
    })
}

pub fn is_lyndon_by<T, F>(w: &[T], cmp: F) -> Result<bool>
where
    T: PartialEq,
    F: Fn(&T, &T) -> Ordering,
{
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    // strictly smaller than every proper rotation
    Ok((1..w.len()).all(|i| cmp_rotations(w, 0, i, &cmp) == Ordering::Less))
}

pub fn is_lyndon<T: Ord>(w: &[T]) -> Result<bool> {
    is_lyndon_by(w, T::cmp)
}

/// The Lyndon word conjugate to a primitive word.
pub fn lyndon_conjugate_by<T, F>(w: &[T], cmp: F) -> Result<Vec<T>>
where
    T: PartialEq + Clone,
    F: Fn(&T, &T) -> Ordering,
{
    if !is_primitive(w)? {
        return Err(Error::NotPrimitive);
    }
    let i = least_rotation_by(w, cmp);
    Ok(w[i..].iter().chain(&w[..i]).cloned().collect())
}

pub fn lyndon_conjugate<T: Ord + Clone>(w: &[T]) -> Result<Vec<T>> {
    lyndon_conjugate_by(w, T::cmp)
}

/// Outcome of testing "a prefix-and-suffix of a Lyndon word is trivial".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorderCheck {
    /// `t` is both a prefix and a suffix of `w`.
    pub hypothesis: bool,
    /// `t` is empty or equal to `w`.
    pub conclusion: bool,
}

impl BorderCheck {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

pub fn lyndon_border_check<T: Ord>(t: &[T], w: &[T]) -> Result<BorderCheck> {
    if !is_lyndon(w)? {
        return Err(Error::NotLyndon);
    }
    Ok(BorderCheck {
        hypothesis: w.starts_with(t) && w.ends_with(t),
        conclusion: t.is_empty() || t == w,
    })
}

/// Whether suitable powers of `u` and `v` share a prefix of length
/// `prefix_len`.
pub fn fine_wilf<T: PartialEq>(u: &[T], v: &[T], prefix_len: usize) -> bool {
    if u.is_empty() || v.is_empty() {
        return prefix_len == 0;
    }
    (0..prefix_len).all(|i| u[i % u.len()] == v[i % v.len()])
}

/// `|u| + |v| - gcd(|u|, |v|)`.
pub fn fine_wilf_bound(u_len: usize, v_len: usize) -> usize {
    u_len + v_len - gcd(u_len, v_len)
}

/// Split of a common factor `w = w1 w2` of `u^m` and `v^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap<T> {
    pub w1: Vec<T>,
    pub w2: Vec<T>,
}

/// Common factor of `u^m` (at `offset_u`) and `v^n` (at `offset_v`) of
/// length `len`.
///
/// Returns `None` if the two windows do not hold the same word. When
/// `len >= |u| + |v|` a split always exists: `u = v` and `x w1, z w1 ∈ u*`,
/// where `x` and `z` are the words before the windows. Shorter windows get
/// a split only if `u = v` and the offsets agree modulo `|u|`.
#[allow(clippy::too_many_arguments)]
pub fn synchronized_overlap<T: Ord + Clone>(
    u: &[T],
    v: &[T],
    m: usize,
    n: usize,
    offset_u: usize,
    offset_v: usize,
    len: usize,
) -> Result<Option<Overlap<T>>> {
    if !is_lyndon(u)? || !is_lyndon(v)? {
        return Err(Error::NotLyndon);
    }
    if offset_u + len > u.len() * m || offset_v + len > v.len() * n {
        return Ok(None);
    }
    let w: Vec<T> = (0..len).map(|i| u[(offset_u + i) % u.len()].clone()).collect();
    let same = (0..len).all(|i| w[i] == v[(offset_v + i) % v.len()]);
    // Past the overlap bound `u = v` and the offsets synchronize; below it
    // the split is returned only when that can be checked directly.
    if !same || u != v {
        return Ok(None);
    }
    let cut = (u.len() - offset_u % u.len()) % u.len();
    if !(offset_v + cut).is_multiple_of(v.len()) {
        return Ok(None);
    }
    Ok(Some(Overlap {
        w1: w[..cut].to_vec(),
        w2: w[cut..].to_vec(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Vec<u8> {
        s.bytes().collect()
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&b("ab")).unwrap());
        assert!(!is_primitive(&b("abab")).unwrap());
        assert!(is_primitive(&b("aab")).unwrap());
        assert!(matches!(is_primitive::<u8>(&[]), Err(Error::EmptyWord)));
        assert_eq!(primitive_root(&b("abab")).unwrap(), (b("ab"), 2));
        assert_eq!(primitive_root(&b("aaa")).unwrap(), (b("a"), 3));
        assert_eq!(primitive_root(&b("aab")).unwrap(), (b("aab"), 1));
    }

    #[test]
    fn lyndon() {
        assert!(is_lyndon(&b("aab")).unwrap());
        assert!(!is_lyndon(&b("ba")).unwrap());
        assert!(is_lyndon(&b("a")).unwrap());
        assert!(!is_lyndon(&b("aa")).unwrap());
        assert_eq!(lyndon_conjugate(&b("ba")).unwrap(), b("ab"));
        assert_eq!(lyndon_conjugate(&b("aab")).unwrap(), b("aab"));
        assert_eq!(lyndon_conjugate(&b("bab")).unwrap(), b("abb"));
        assert!(matches!(lyndon_conjugate(&b("abab")), Err(Error::NotPrimitive)));
        // reversed alphabet
        assert!(is_lyndon_by(&b("ba"), |x: &u8, y: &u8| y.cmp(x)).unwrap());
    }

    #[test]
    fn borders() {
        assert!(lyndon_border_check(&b(""), &b("aab")).unwrap().holds());
        assert!(lyndon_border_check(&b("aab"), &b("aab")).unwrap().holds());
        let c = lyndon_border_check(&b("a"), &b("aab")).unwrap();
        assert!(!c.hypothesis && c.holds());
        assert!(matches!(lyndon_border_check(&b("a"), &b("ba")), Err(Error::NotLyndon)));
    }

    #[test]
    fn fine_wilf_examples() {
        assert!(fine_wilf(&b("ab"), &b("abab"), 6));
        assert!(!fine_wilf(&b("a"), &b("b"), 2));
        assert!(!fine_wilf(&b("ab"), &b("ba"), 3));
        assert_eq!(fine_wilf_bound(2, 4), 4);
    }

    #[test]
    fn synchronized_overlap_examples() {
        let o = synchronized_overlap(&b("ab"), &b("ab"), 3, 3, 0, 0, 4)
            .unwrap()
            .unwrap();
        assert!(o.w1.is_empty());
        assert_eq!(o.w2, b("abab"));
        for len in 3..=4 {
            for ou in 0..=(4 - len) {
                for ov in 0..=(6 - len) {
                    assert_eq!(
                        synchronized_overlap(&b("a"), &b("ab"), 4, 3, ou, ov, len).unwrap(),
                        None
                    );
                }
            }
        }
        let o = synchronized_overlap(&b("aab"), &b("aab"), 3, 3, 1, 4, 5)
            .unwrap()
            .unwrap();
        assert_eq!(o.w1, b("ab"));
        assert_eq!(o.w2, b("aab"));
        assert!(synchronized_overlap(&b("ba"), &b("ab"), 2, 2, 0, 0, 2).is_err());
    }
}
