//! Lyndon words, primitive roots and the Fine–Wilf bound.

use omega_terms::words::{
    fine_wilf, fine_wilf_bound, is_lyndon, lyndon_conjugate, primitive_root, synchronized_overlap,
};

pub fn main() {
    for w in ["aab", "aba", "abab", "aabab"] {
        let b: Vec<char> = w.chars().collect();
        let (root, k) = primitive_root(&b).expect("nonempty");
        let conj: String = lyndon_conjugate(&root).expect("nonempty").into_iter().collect();
        println!(
            "{w}: lyndon={} root={}^{k} lyndon conjugate of root={conj}",
            is_lyndon(&b).expect("nonempty"),
            root.iter().collect::<String>()
        );
    }
    let (u, v): (Vec<char>, Vec<char>) = ("abaab".chars().collect(), "aba".chars().collect());
    let bound = fine_wilf_bound(u.len(), v.len());
    println!("Fine–Wilf bound for |u|=5, |v|=3: {bound}");
    println!("powers share a prefix of length {bound}: {}", fine_wilf(&u, &v, bound));
    let o = synchronized_overlap(&['a', 'a', 'b'], &['a', 'a', 'b'], 3, 3, 1, 4, 5).expect("Lyndon bases");
    println!("synchronized split: {o:?}");
}
