//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::decide::{decide_eq, decide_eq_language, EqVerdict};
use crate::error::{Error, Result};
use crate::gen::random_term;
use crate::lang::expansion::{build_ln, is_star_free, ln_dfa, monotone_check, sample_expansion};
use crate::lang::Dfa;
use crate::normal_form::{check_normal_form, is_normal_form, normalize, verify_trace};
use crate::semigroup::{agree_on_aperiodic, parse_assignment, FiniteSemigroup, TransformationSemigroup};
use crate::term::{Alphabet, Atom, Letter, OmegaTerm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "omega", about = "Normal forms, languages and semigroups for ω-terms")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Letter order used for Lyndon words, e.g. "ba".
    #[arg(long, global = true)]
    order: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, length, μ and normality of a term.
    Info { term: String },
    /// Check or compute normal forms.
    #[command(subcommand)]
    Nf(NfCommand),
    /// Decide equality over finite aperiodic semigroups.
    Eq {
        t1: String,
        t2: String,
        #[arg(long, value_enum, default_value = "normalize")]
        method: EqMethodArg,
    },
    /// Build and query the languages L_n.
    #[command(subcommand)]
    Lang(LangCommand),
    /// Evaluate terms in a finite semigroup given as a JSON table.
    #[command(subcommand)]
    Sgp(SgpCommand),
    /// Random terms checked against the invariant suites.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum NfCommand {
    Check {
        term: String,
    },
    Normalize {
        term: String,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LangCommand {
    Build {
        term: String,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    Member {
        term: String,
        #[arg(short)]
        n: usize,
        word: String,
    },
    Starfree {
        term: String,
        #[arg(short)]
        n: usize,
    },
    /// Emptiness of `L_n[t1] ∩ L_n[t2]`; `--sweep` reports every n from 1.
    Disjoint {
        t1: String,
        t2: String,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SgpCommand {
    Eval {
        term: String,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        assign: String,
    },
    Aperiodic {
        #[arg(long)]
        table: PathBuf,
    },
    Ind {
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EqMethodArg {
    Normalize,
    Language,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Regex,
}

/// What a subcommand produced: text, the equivalent JSON, and the exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Outcome {
    fn new(text: impl Into<String>, json: serde_json::Value, code: i32) -> Self {
        Outcome {
            text: text.into(),
            json,
            code,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded(_) | Error::Resource(_) | Error::BoundExceeded { .. } => EXIT_GUARD,
        Error::TheoremViolation(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_GUARD => "resource",
        EXIT_NEGATIVE => "theorem-violation",
        _ => "input",
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let alph = match &cli.order {
        Some(o) => Alphabet::with_order(o),
        None => Ok(Alphabet::default()),
    };
    let result = alph.and_then(|alph| dispatch(&cli.command, &alph));
    match result {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", o.json)
            } else if o.text.is_empty() || o.text.ends_with('\n') {
                write!(out, "{}", o.text)
            } else {
                writeln!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let _ = if cli.json {
                writeln!(err, "{}", json!({"error": error_kind(&e), "message": e.to_string()}))
            } else {
                writeln!(err, "error: {e}")
            };
            exit_code(&e)
        }
    }
}

fn term(s: &str) -> Result<OmegaTerm> {
    OmegaTerm::parse(s)
}

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn dispatch(cmd: &Command, alph: &Alphabet) -> Result<Outcome> {
    match cmd {
        Command::Info { term: s } => info(&term(s)?, alph),
        Command::Nf(NfCommand::Check { term: s }) => {
            let r = check_normal_form(&term(s)?, alph);
            let mut text = format!("normal={}", r.verdict);
            for f in &r.failures {
                text.push_str(&format!("\ncondition {} at {}: {}", f.condition, f.position, f.witness));
            }
            Ok(Outcome::new(text, serde_json::to_value(&r)?, verdict(r.verdict)))
        }
        Command::Nf(NfCommand::Normalize { term: s, trace }) => {
            let t = term(s)?;
            let (nf, tr) = normalize(&t, alph)?;
            let text = if *trace { tr.to_text() } else { nf.to_string() };
            let steps: Vec<String> = tr.steps.iter().map(ToString::to_string).collect();
            let mut j = json!({"input": t.to_string(), "normal_form": nf.to_string()});
            if *trace {
                j["trace"] = json!(steps);
            }
            Ok(Outcome::new(text, j, EXIT_OK))
        }
        Command::Eq { t1, t2, method } => eq(&term(t1)?, &term(t2)?, *method, alph),
        Command::Lang(c) => lang(c),
        Command::Sgp(c) => sgp(c),
        Command::Fuzz { seed, count, max_len } => fuzz(*seed, *count, *max_len, alph),
    }
}

fn info(t: &OmegaTerm, alph: &Alphabet) -> Result<Outcome> {
    let (rank, length, mu, normal) = (t.rank(), t.len(), t.mu(), is_normal_form(t, alph));
    Ok(Outcome::new(
        format!("term={t}\nrank={rank}\nlength={length}\nmu={mu}\nnormal={normal}"),
        json!({"term": t.to_string(), "rank": rank, "length": length, "mu": mu, "normal": normal}),
        EXIT_OK,
    ))
}

fn eq_text(v: &EqVerdict) -> String {
    let mut s = format!(
        "{} ({})\nnormal_form_1={}\nnormal_form_2={}",
        if v.equal { "equal" } else { "not equal" },
        serde_json::to_value(v.method)
            .ok()
            .and_then(|m| m.as_str().map(String::from))
            .unwrap_or_default(),
        v.normal_form_1,
        v.normal_form_2
    );
    if let Some(n) = v.n {
        s.push_str(&format!("\nn={n}"));
    }
    if let Some(r) = &v.refuting_semigroup {
        s.push_str(&format!(
            "\nrefuted by table {:?} under {:?}: {} != {}",
            r.table, r.assignment, r.left, r.right
        ));
    }
    s
}

fn eq(t1: &OmegaTerm, t2: &OmegaTerm, method: EqMethodArg, alph: &Alphabet) -> Result<Outcome> {
    let v = match method {
        EqMethodArg::Normalize => decide_eq(t1, t2, alph)?,
        EqMethodArg::Language => decide_eq_language(t1, t2, alph)?,
        EqMethodArg::Both => {
            let by_nf = decide_eq(t1, t2, alph)?;
            let nf1 = term(&by_nf.normal_form_1)?;
            let nf2 = term(&by_nf.normal_form_2)?;
            let by_lang = decide_eq_language(&nf1, &nf2, alph)?;
            if by_lang.equal != by_nf.equal {
                return Err(Error::TheoremViolation(format!("methods disagree on {t1} and {t2}")));
            }
            let text = format!("{}\n{}", eq_text(&by_nf), eq_text(&by_lang));
            let j = json!({"equal": by_nf.equal, "normalize": by_nf, "language": by_lang});
            return Ok(Outcome::new(text, j, verdict(by_nf.equal)));
        }
    };
    Ok(Outcome::new(eq_text(&v), serde_json::to_value(&v)?, verdict(v.equal)))
}

fn lang(cmd: &LangCommand) -> Result<Outcome> {
    match cmd {
        LangCommand::Build {
            term: s,
            n,
            out,
            format,
        } => {
            let t = term(s)?;
            let re = build_ln(&t, *n)?;
            let dfa = ln_dfa(&t, *n)?;
            let body = match format {
                Format::Dot => dfa.to_dot(),
                Format::Json => dfa.to_json(),
                Format::Regex => re.to_string(),
            };
            let states = dfa.num_states();
            match out {
                Some(path) => {
                    std::fs::write(path, &body)?;
                    Ok(Outcome::new(
                        format!("states={states}\nwritten to {}", path.display()),
                        json!({"states": states, "out": path.display().to_string()}),
                        EXIT_OK,
                    ))
                }
                None => {
                    let j = match format {
                        Format::Json => serde_json::from_str(&body)?,
                        _ => json!({"states": states, "format": format!("{format:?}").to_lowercase(), "output": body}),
                    };
                    Ok(Outcome::new(body, j, EXIT_OK))
                }
            }
        }
        LangCommand::Member { term: s, n, word } => {
            let t = term(s)?;
            let w: Vec<Letter> = word.chars().map(Letter::Plain).collect();
            let m = ln_dfa(&t, *n)?.accepts(&w);
            Ok(Outcome::new(
                format!("member={m}"),
                json!({"term": t.to_string(), "n": n, "word": word, "member": m}),
                verdict(m),
            ))
        }
        LangCommand::Starfree { term: s, n } => {
            let t = term(s)?;
            let dfa = ln_dfa(&t, *n)?;
            let sg = TransformationSemigroup::of_dfa(&dfa);
            let sf = is_star_free(&dfa);
            let mut text = format!(
                "star-free={sf}\nstates={}\nsemigroup order={}",
                dfa.num_states(),
                sg.len()
            );
            let witness = sg.periodic_witness().map(<[u32]>::to_vec);
            if let Some(w) = &witness {
                text.push_str(&format!("\nnon-aperiodic element (state map) {w:?}"));
            }
            Ok(Outcome::new(
                text,
                json!({"term": t.to_string(), "n": n, "star_free": sf, "states": dfa.num_states(),
                       "semigroup_order": sg.len(), "periodic_element": witness}),
                verdict(sf),
            ))
        }
        LangCommand::Disjoint { t1, t2, n, sweep } => {
            let (a, b) = (term(t1)?, term(t2)?);
            let check = |k: usize| -> Result<(bool, Option<String>)> {
                let (d1, d2): (Dfa, Dfa) = (ln_dfa(&a, k)?, ln_dfa(&b, k)?);
                let w = d1.shortest_common_word(&d2);
                Ok((w.is_none(), w.map(|w| w.iter().map(ToString::to_string).collect())))
            };
            let range: Vec<usize> = if *sweep { (1..=*n).collect() } else { vec![*n] };
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut last = true;
            for k in range {
                let (disjoint, witness) = check(k)?;
                match &witness {
                    Some(w) => text.push_str(&format!("n={k} disjoint=false witness={w}\n")),
                    None => text.push_str(&format!("n={k} disjoint=true\n")),
                }
                rows.push(json!({"n": k, "disjoint": disjoint, "witness": witness}));
                last = disjoint;
            }
            let j = if *sweep {
                json!(rows)
            } else {
                rows.pop().expect("one row")
            };
            Ok(Outcome::new(text, j, verdict(last)))
        }
    }
}

fn load_table(path: &PathBuf) -> Result<FiniteSemigroup> {
    FiniteSemigroup::from_json(&std::fs::read_to_string(path)?)
}

fn sgp(cmd: &SgpCommand) -> Result<Outcome> {
    match cmd {
        SgpCommand::Eval { term: s, table, assign } => {
            let t = term(s)?;
            let sg = load_table(table)?;
            let g = parse_assignment(assign)?;
            let v = sg.evaluate(&t, &g)?;
            Ok(Outcome::new(
                format!("{v}"),
                json!({"term": t.to_string(), "value": v}),
                EXIT_OK,
            ))
        }
        SgpCommand::Aperiodic { table } => {
            let a = load_table(table)?.is_aperiodic();
            Ok(Outcome::new(
                format!("aperiodic={a}"),
                json!({"aperiodic": a}),
                verdict(a),
            ))
        }
        SgpCommand::Ind { table } => {
            let i = load_table(table)?.ind();
            Ok(Outcome::new(format!("{i}"), json!({"ind": i}), EXIT_OK))
        }
    }
}

/// The first invariant `t` breaks, if any.
fn fuzz_case(t: &OmegaTerm, alph: &Alphabet, rng: &mut ChaCha8Rng) -> Option<&'static str> {
    let Ok((nf, trace)) = normalize(t, alph) else {
        return Some("normalization aborted");
    };
    if !is_normal_form(&nf, alph) {
        return Some("output not in normal form");
    }
    if !verify_trace(&trace) {
        return Some("trace does not verify");
    }
    if !agree_on_aperiodic(t, &nf, 3).unwrap_or(false) {
        return Some("output differs in an aperiodic semigroup");
    }
    match normalize(&nf, alph) {
        Ok((again, tr)) if again == nf && tr.steps.is_empty() => {}
        _ => return Some("normalization not idempotent"),
    }
    if nf.rank() > 0 {
        let k = nf.max_rank_powers().len();
        let exps: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=3)).collect();
        match sample_expansion(&nf, 2, &exps) {
            Ok(e) if is_normal_form(&e, alph) => {}
            _ => return Some("expansion of a normal form not in normal form"),
        }
    }
    if !monotone_check(t, 1).unwrap_or(false) {
        return Some("L_2 not contained in L_1");
    }
    None
}

/// Terms obtained by deleting one atom or unwrapping one power.
fn shrink(atoms: &[Atom]) -> Vec<Vec<Atom>> {
    let mut out = Vec::new();
    for i in 0..atoms.len() {
        if atoms.len() > 1 {
            let mut v = atoms.to_vec();
            v.remove(i);
            out.push(v);
        }
        if let Some(b) = atoms[i].body() {
            let mut v = atoms[..i].to_vec();
            v.extend(b.atoms().iter().cloned());
            v.extend_from_slice(&atoms[i + 1..]);
            out.push(v);
            for inner in shrink(b.atoms()) {
                let mut v = atoms.to_vec();
                v[i] = Atom::Power(OmegaTerm::from_atoms(inner));
                out.push(v);
            }
        }
    }
    out
}

fn minimize(t: &OmegaTerm, alph: &Alphabet, seed: u64) -> OmegaTerm {
    let fails = |u: &OmegaTerm| fuzz_case(u, alph, &mut ChaCha8Rng::seed_from_u64(seed)).is_some();
    let mut cur = t.clone();
    'outer: loop {
        for cand in shrink(cur.atoms()) {
            let u = OmegaTerm::from_atoms(cand);
            if fails(&u) {
                cur = u;
                continue 'outer;
            }
        }
        return cur;
    }
}

fn fuzz(seed: u64, count: usize, max_len: usize, alph: &Alphabet) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut text = String::new();
    for case in 0..count {
        let t = random_term(&mut rng, max_len, &['a', 'b']);
        let case_seed = rng.gen::<u64>();
        if let Some(what) = fuzz_case(&t, alph, &mut ChaCha8Rng::seed_from_u64(case_seed)) {
            let small = minimize(&t, alph, case_seed);
            text.push_str(&format!("case {case}: {what}: {t}\nminimized: {small}\n"));
            violations
                .push(json!({"case": case, "invariant": what, "term": t.to_string(), "minimized": small.to_string()}));
        }
    }
    text.push_str(&format!("{count} cases, {} violations", violations.len()));
    let code = verdict(violations.is_empty());
    Ok(Outcome::new(
        text,
        json!({"seed": seed, "count": count, "max_len": max_len, "violations": violations}),
        code,
    ))
}
