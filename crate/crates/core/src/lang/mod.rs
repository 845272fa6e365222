//! Regular languages: expressions, automata and the expansion languages of
//! ω-terms.

pub mod automaton;
pub mod expansion;
pub mod regex;

pub use automaton::Dfa;
pub use regex::RegularExpr;
