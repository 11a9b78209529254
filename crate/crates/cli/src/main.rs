//! `stacker`: normal forms, word problems, flow checks, automata and
//! van Kampen diagrams for the shipped groups.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stacker::automata::Fsa;
use stacker::diagrams::{build_diagram, check_diagram, export_diagram, DiagramError};
use stacker::groups::gp::GpError;
use stacker::groups::{
    bg_structure, bs12_structure, gp_structure, graph_phi_fsa, ntilde_fsa, oracle_bg, oracle_bs12, oracle_gp,
};
use stacker::groups::graph_phi::graph_phi_piece;
use stacker::laurent::Modulus;
use stacker::rewriting::{RewriteError, StackingStructure, DEFAULT_STEP_BUDGET};
use stacker::{parse_word, Letter, Word};

#[derive(Parser)]
#[command(name = "stacker", version, about = "Stacking structures for BS(1,2), Baumslag-Gersten and G_p")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "bs12")]
    group: Group,
    /// Modulus for `gp`: an integer ≥ 2 or `inf`.
    #[arg(long, global = true)]
    p: Option<String>,
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[arg(long, env = "STACKER_STEP_BUDGET", global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    step_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Bs12,
    Bg,
    Gp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of WORD, or of each line of stdin.
    Normalize { word: Option<String> },
    /// Print EQUAL or DISTINCT.
    Wp { w1: String, w2: String },
    /// Check the flow axioms on all normal forms up to the radius.
    Verify {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        /// Also compare this many random words with the algebraic model.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, hide = true)]
        mutant: bool,
    },
    /// Export an automaton: nf, graphphi, piece:N or ntilde:δ,η.
    Fsa { which: String },
    /// Van Kampen diagram for the edge from nf(WORD) along LETTER.
    Diagram { word: String, letter: String },
}

enum Failure {
    Parse(String),
    Budget(String),
    Unsupported(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Unsupported(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Budget(m) | Failure::Unsupported(m) | Failure::Other(m) => m,
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Failure {
        match e {
            RewriteError::StepBudgetExceeded(_) => Failure::Budget(e.to_string()),
            RewriteError::UnknownLetter(_) | RewriteError::Word(_) => Failure::Parse(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<GpError> for Failure {
    fn from(e: GpError) -> Failure {
        match e {
            GpError::UnsupportedForInfiniteP => Failure::Unsupported(e.to_string()),
            GpError::InvalidModulus(_) | GpError::NoSuchPiece(_) => Failure::Parse(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Failure {
        match e {
            DiagramError::Rewrite(r) => r.into(),
            DiagramError::UnsupportedFormat(_) => Failure::Unsupported(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Equality = Arc<dyn Fn(&[Letter], &[Letter]) -> bool + Send + Sync>;

struct Setup {
    structure: StackingStructure,
    modulus: Option<Modulus>,
    oracle: Equality,
}

fn setup(cli: &Cli) -> Result<Setup, Failure> {
    let modulus = match (&cli.p, cli.group) {
        (Some(p), Group::Gp) => Some(p.parse::<Modulus>().map_err(|e| Failure::Parse(e.to_string()))?),
        (None, Group::Gp) => return Err(Failure::Parse("--p is required for --group gp".into())),
        (Some(_), _) => return Err(Failure::Parse("--p only applies to --group gp".into())),
        (None, _) => None,
    };
    let (structure, oracle): (StackingStructure, Equality) = match (cli.group, modulus) {
        (Group::Bs12, _) => (bs12_structure(), Arc::new(|x: &[Letter], y: &[Letter]| oracle_bs12(x) == oracle_bs12(y))),
        (Group::Bg, _) => (
            bg_structure().map_err(|e| Failure::Other(e.to_string()))?,
            Arc::new(|x: &[Letter], y: &[Letter]| oracle_bg(x, y).unwrap_or(false)),
        ),
        (Group::Gp, Some(p)) => (gp_structure(p)?, Arc::new(move |x: &[Letter], y: &[Letter]| oracle_gp(p, x) == oracle_gp(p, y))),
        (Group::Gp, None) => unreachable!(),
    };
    Ok(Setup { structure: structure.with_step_budget(cli.step_budget), modulus, oracle })
}

fn word(s: &StackingStructure, text: &str) -> Result<Word, Failure> {
    parse_word(text.trim(), s.alphabet()).map_err(|e| Failure::Parse(format!("{text:?}: {e}")))
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Other(e.to_string()))
}

fn normalize(s: &StackingStructure, w: Option<&str>, out: &mut impl Write) -> Result<u8, Failure> {
    match w {
        Some(w) => emit(out, &s.normalize(&word(s, w)?)?.to_string())?,
        None => {
            for line in io::stdin().lock().lines() {
                let line = line.map_err(|e| Failure::Other(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                emit(out, &s.normalize(&word(s, &line)?)?.to_string())?;
            }
        }
    }
    Ok(0)
}

fn verify(
    cli: &Cli,
    setup: &Setup,
    radius: usize,
    samples: usize,
    seed: u64,
    mutant: bool,
    out: &mut impl Write,
) -> Result<u8, Failure> {
    let mut s = setup.structure.clone();
    if mutant {
        // a map that breaks F1 on every non-tree edge
        let base = s.clone();
        let extra = s.alphabet().letters()[0];
        s = s.with_map(format!("{}-mutant", s.id()), Arc::new(move |u, z| base.phi(u, z).push(extra)));
    }
    let oracle = setup.oracle.clone();
    let mut report = s.verify_flow(radius, Some(&|x: &[Letter], y: &[Letter]| oracle(x, y)));
    let mut mismatches = Vec::new();
    if samples > 0 {
        let letters = s.alphabet().letters();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: std::collections::HashMap<Word, Word> = std::collections::HashMap::new();
        for _ in 0..samples {
            let n = rng.gen_range(0..=2 * radius);
            let w = Word::from((0..n).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<_>>());
            let nf = s.normalize(&w)?.into_word();
            if !oracle(&w, &nf) {
                mismatches.push(format!("{w} differs from its normal form {nf}"));
            }
            seen.entry(nf).or_insert(w);
        }
        let reps: Vec<&Word> = seen.values().collect();
        for (i, x) in reps.iter().enumerate() {
            for y in &reps[i + 1..] {
                if oracle(x, y) {
                    mismatches.push(format!("{x} and {y} are equal but normalize differently"));
                }
            }
        }
    }
    let passed = report.passed() && mismatches.is_empty();
    if !mismatches.is_empty() {
        report.note = format!("{} sample mismatches", mismatches.len());
    }
    match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).map_err(|e| Failure::Other(e.to_string()))?;
            v["sample_mismatches"] = serde_json::json!(mismatches);
            v["samples"] = serde_json::json!(samples);
            v["seed"] = serde_json::json!(seed);
            emit(out, &serde_json::to_string_pretty(&v).expect("json"))?;
        }
        _ => {
            emit(out, &format!("structure {} radius {radius}", report.structure))?;
            emit(out, &format!("edges {} max |φ| {} bound {} max steps {}", report.edges_checked, report.max_phi_len, report.declared_bound, report.max_steps))?;
            for f in &report.failures {
                emit(out, &format!("failure {:?} {}: {}", f.axiom, f.input, f.detail))?;
            }
            for m in &mismatches {
                emit(out, &format!("mismatch {m}"))?;
            }
            emit(out, if passed { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn render<S: stacker::automata::Symbol>(m: &Fsa<S>, format: Format) -> String {
    match format {
        Format::Dot => m.to_dot(),
        Format::Json => serde_json::to_string_pretty(&m.to_json()).expect("json"),
        Format::Text => {
            let j = m.to_json();
            format!("states {} accepting {} transitions {}", j.states, j.accepting.len(), j.transitions.len())
        }
    }
}

fn fsa(setup: &Setup, which: &str, format: Format) -> Result<String, Failure> {
    if which == "nf" {
        return match setup.structure.recognizer().automaton() {
            Some(m) => Ok(render(m, format)),
            None => Err(Failure::Unsupported("this recognizer is not an automaton".into())),
        };
    }
    let Some(p) = setup.modulus else {
        return Err(Failure::Unsupported(format!("{which} is only defined for --group gp")));
    };
    if which == "graphphi" {
        return Ok(render(&graph_phi_fsa(p)?, format));
    }
    if let Some(n) = which.strip_prefix("piece:") {
        let n: usize = n.parse().map_err(|_| Failure::Parse(format!("bad piece {n:?}")))?;
        return Ok(render(&graph_phi_piece(p, n)?, format));
    }
    if let Some(args) = which.strip_prefix("ntilde:") {
        let sign = |t: &str| match t.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(Failure::Parse(format!("expected ±1, got {other:?}"))),
        };
        let (d, e) = args.split_once(',').ok_or_else(|| Failure::Parse("expected ntilde:δ,η".into()))?;
        if p == Modulus::Infinite {
            return Err(GpError::UnsupportedForInfiniteP.into());
        }
        return Ok(render(&ntilde_fsa(p, sign(d)?, sign(e)?), format));
    }
    Err(Failure::Parse(format!("unknown automaton {which:?}")))
}

fn diagram(s: &StackingStructure, w: &str, letter: &str, format: Format) -> Result<String, Failure> {
    let u = s.normalize(&word(s, w)?)?.into_word();
    let z = match word(s, letter)?.letters() {
        [z] => *z,
        _ => return Err(Failure::Parse(format!("{letter:?} is not a single letter"))),
    };
    let d = build_diagram(s, &u, z)?;
    match format {
        Format::Text => {
            let check = check_diagram(&d, s, None);
            let b = &d.boundary;
            Ok(format!(
                "boundary {} | {} | {}\narea {}\nvalid {}",
                b.lower,
                b.x,
                b.upper,
                d.area(),
                check.ok()
            ))
        }
        Format::Json => Ok(export_diagram(&d, "json")?),
        Format::Dot => Ok(export_diagram(&d, "dot")?),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let setup = setup(cli)?;
    let s = &setup.structure;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Normalize { word } => normalize(s, word.as_deref(), &mut out),
        Command::Wp { w1, w2 } => {
            let equal = s.word_problem(&word(s, w1)?, &word(s, w2)?)?;
            emit(&mut out, if equal { "EQUAL" } else { "DISTINCT" })?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::Verify { radius, samples, seed, mutant } => {
            verify(cli, &setup, *radius as usize, *samples, *seed, *mutant, &mut out)
        }
        Command::Fsa { which } => {
            emit(&mut out, fsa(&setup, which, cli.format)?.trim_end())?;
            Ok(0)
        }
        Command::Diagram { word, letter } => {
            emit(&mut out, diagram(s, word, letter, cli.format)?.trim_end())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
