//! Command-line front end for the `transemi` library.
//!
//! Semigroups travel as JSON files with 0-based images. Everything printed
//! for people, and every point given on the command line, is 1-based.

mod error;
mod io;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use transemi::constructions::{
    abelian_witness, e_ix, gamma, knit_witness, null_max, null_plus_identity, omega_pn,
};
use transemi::oracle::Family;
use transemi::tree::{
    build_tree, element_order, format_word, nullify_with, s_partition, word_of, LeafMatching,
};
use transemi::xi::alpha;
use transemi::{xi_table, CommGraph, Element, Kind, SemigroupSet};

use crate::error::CliError;
use crate::io::{emit, read_set, to_json, write_text, AnySet};
use crate::verify::ClaimArg;

#[derive(Parser)]
#[command(
    name = "transemi",
    version,
    about = "Commutative subsemigroups of transformation semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print xi(n) and alpha(n) for n = 1..=max.
    Xi {
        #[arg(long)]
        max: usize,
        /// Also write the table as CSV (n,alpha,xi).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Emit a named construction as semigroup JSON.
    Construct {
        #[arg(value_enum)]
        family: Construction,
        #[arg(long)]
        n: usize,
        /// Fixed point of gamma (1-based).
        #[arg(long)]
        x: Option<usize>,
        /// Points of nullmax or nullid, head first (1-based, comma separated).
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<usize>>,
        /// The set B of omega (1-based, comma separated).
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report closure, commutativity, idempotents, center and structure.
    Analyze { file: PathBuf },
    /// Print the layering of points induced by a commutative semigroup with
    /// one idempotent.
    Spartition { file: PathBuf },
    /// Build the word tree and print its level profile.
    Tree {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Turn a commutative semigroup with one non-identity idempotent into a
    /// null semigroup of the same size.
    Nullify {
        file: PathBuf,
        /// Replacement null semigroup on the window (0-based window indices).
        #[arg(long)]
        m_override: Option<PathBuf>,
        /// Pair prefixes with replacement words in reverse order.
        #[arg(long)]
        reversed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Commuting-graph statistics.
    Graph {
        file: PathBuf,
        #[arg(long)]
        clique: bool,
        #[arg(long)]
        girth: bool,
        /// Search for left paths with at most this many edges.
        #[arg(long, value_name = "MAXLEN")]
        knit: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Binary adjacency dump.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Compare an exhaustive computation with its closed-form value.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        kind: KindArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Gamma,
    Nullmax,
    Omega,
    Eix,
    Abelian,
    Nullid,
    Knit,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Full,
    Partial,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Full => Kind::Full,
            KindArg::Partial => Kind::Partial,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Xi { max, csv } => xi(max, csv.as_deref()),
        Command::Construct {
            family,
            n,
            x,
            points,
            b,
            out,
        } => {
            let set = construct(family, n, x, points, b)?;
            emit(out.as_deref(), &to_json(&set))
        }
        Command::Analyze { file } => match read_set(&file)? {
            AnySet::Full(s) => analyze(&s),
            AnySet::Partial(s) => analyze(&s),
        },
        Command::Spartition { file } => spartition(&read_set(&file)?.expect_full("spartition")?),
        Command::Tree { file, dot } => tree(&read_set(&file)?.expect_full("tree")?, dot.as_deref()),
        Command::Nullify {
            file,
            m_override,
            reversed,
            out,
        } => {
            let s = read_set(&file)?.expect_full("nullify")?;
            let m = m_override
                .map(|p| read_set(&p)?.expect_full("--m-override"))
                .transpose()?;
            let matching = if reversed {
                LeafMatching::Reversed
            } else {
                LeafMatching::Lexicographic
            };
            nullify(&s, m.as_ref(), matching, out.as_deref())
        }
        Command::Graph {
            file,
            clique,
            girth,
            knit,
            dot,
            dump,
        } => {
            let opts = GraphOpts {
                clique,
                girth,
                knit,
                dot,
                dump,
            };
            match read_set(&file)? {
                AnySet::Full(s) => graph(&s, &opts),
                AnySet::Partial(s) => graph(&s, &opts),
            }
        }
        Command::Verify {
            claim,
            n,
            kind,
            json,
        } => {
            let report = verify::run(claim, n, kind.into())?;
            println!("{}", report.summary());
            for failure in &report.shape_failures {
                println!("  shape: {failure}");
            }
            for w in &report.witnesses {
                println!("  {} |{}| {}", w.shape, w.size, w.sha256);
            }
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("report serialises");
                write_text(&path, &text)?;
            }
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} n={}",
                    report.claim, report.n
                )))
            }
        }
    }
}

fn xi(max: usize, csv: Option<&Path>) -> Result<(), CliError> {
    let rows = xi_table(max)?;
    println!("   n  alpha xi");
    for r in &rows {
        println!("{:>4} {:>6} {}", r.n, r.alpha, r.xi);
    }
    if let Some(path) = csv {
        let mut text = String::from("n,alpha,xi\n");
        for r in &rows {
            text.push_str(&format!("{},{},{}\n", r.n, r.alpha, r.xi));
        }
        write_text(path, &text)?;
    }
    Ok(())
}

fn zero_based(points: &[usize], n: usize) -> Result<Vec<usize>, CliError> {
    points
        .iter()
        .map(|&p| {
            if p == 0 || p > n {
                Err(CliError::Input(format!("point {p} is outside 1..={n}")))
            } else {
                Ok(p - 1)
            }
        })
        .collect()
}

fn construct(
    family: Construction,
    n: usize,
    x: Option<usize>,
    points: Option<Vec<usize>>,
    b: Option<Vec<usize>>,
) -> Result<AnySet, CliError> {
    let first = |k: usize| (0..k).collect::<Vec<_>>();
    let points = |default: usize| match &points {
        Some(p) => zero_based(p, n),
        None => Ok(first(default)),
    };
    Ok(match family {
        Construction::Gamma => {
            let x = zero_based(&[x.unwrap_or(1)], n)?[0];
            gamma(n, x)?.into()
        }
        Construction::Nullmax => null_max(n, &points(alpha(n)?)?)?.into(),
        Construction::Nullid => null_plus_identity(n, &points(alpha(n)?)?)?.into(),
        Construction::Omega => {
            let b = match &b {
                Some(b) => zero_based(b, n)?,
                None => first(alpha(n + 1)? - 1),
            };
            omega_pn(n, &b)?.into()
        }
        Construction::Eix => e_ix(n)?.into(),
        Construction::Abelian => abelian_witness(n)?.into(),
        Construction::Knit => {
            let (a1, a2) = knit_witness(n)?;
            SemigroupSet::closure(&[a1, a2])?.into()
        }
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn listing<E: Element>(items: &[E]) -> String {
    if items.is_empty() {
        return "(none)".into();
    }
    items
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn analyze<E: Family>(s: &SemigroupSet<E>) -> Result<(), CliError> {
    println!("degree: {}", s.degree());
    println!("kind: {}", s.kind().as_str());
    println!("size: {}", s.len());
    let closed = s.is_closed();
    println!("closed: {}", yes(closed));
    println!("commutative: {}", yes(s.is_commutative()));
    println!("idempotents: {}", listing(&s.idempotents()));
    if !closed {
        return Ok(());
    }
    println!("center: {}", listing(s.center()?.elements()));
    match s.is_null()? {
        Some(z) => println!("null: yes (zero {z})"),
        None => println!("null: no"),
    }
    println!("nilpotent: {}", yes(s.is_nilpotent()?));
    println!("group: {}", yes(s.is_group()));
    println!("within Sym: {}", yes(s.is_within_sym()));
    println!("shape: {}", E::classify(s));
    Ok(())
}

fn one_based(points: &[usize]) -> String {
    points
        .iter()
        .map(|p| (p + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn spartition(s: &SemigroupSet<transemi::Transformation>) -> Result<(), CliError> {
    let p = s_partition(s)?;
    for (i, block) in p.blocks.iter().enumerate() {
        println!("A{i}: {{{}}}", one_based(block));
    }
    println!("order: {}", one_based(&element_order(&p)));
    Ok(())
}

fn tree(s: &SemigroupSet<transemi::Transformation>, dot: Option<&Path>) -> Result<(), CliError> {
    let p = s_partition(s)?;
    let order = element_order(&p);
    let t = build_tree(s, &order)?;
    let profile = t.level_profile();
    println!("order: {}", one_based(&order));
    println!("depth: {}", t.depth());
    println!("leaves: {}", t.leaf_count());
    println!("trunk: {}", profile.trunk_length);
    for (i, kind) in profile.kinds.iter().enumerate() {
        println!(
            "level {}: {} (max out-degree {})",
            i + 1,
            kind.as_str(),
            profile.max_branching[i]
        );
    }
    let branchings: Vec<String> = t.branchings().iter().map(|w| format_word(w)).collect();
    println!("branchings: {}", branchings.join(" "));
    if let Some(path) = dot {
        write_text(path, &t.to_dot())?;
    }
    Ok(())
}

fn nullify(
    s: &SemigroupSet<transemi::Transformation>,
    m: Option<&SemigroupSet<transemi::Transformation>>,
    matching: LeafMatching,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let r = nullify_with(s, m, matching)?;
    let words = |ws: &[Vec<usize>]| {
        ws.iter()
            .map(|w| format_word(w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("order: {}", one_based(&r.order));
    println!("window: {}", one_based(&r.window));
    println!("prefixes: {}", words(&r.prefixes));
    println!("replacement words: {}", words(&r.replacement_words));
    println!("spliced trunk: {}", r.spliced_profile.trunk_length);
    let output: Vec<Vec<usize>> = r.output.iter().map(|b| word_of(b, &r.order)).collect();
    println!("output words: {}", words(&output));
    let zero = r.output.zero().expect("nullify output has a zero");
    println!("zero: {zero}");
    println!("size: {}", r.output.len());
    let json = to_json(&AnySet::Full(r.output));
    match out {
        Some(path) => write_text(path, &json),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

struct GraphOpts {
    clique: bool,
    girth: bool,
    knit: Option<usize>,
    dot: Option<PathBuf>,
    dump: Option<PathBuf>,
}

fn graph<E: Element>(s: &SemigroupSet<E>, opts: &GraphOpts) -> Result<(), CliError> {
    let g = CommGraph::build(s)?;
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("center: {}", g.center().len());
    if opts.clique {
        let c = g.max_clique();
        let members: Vec<E> = c.witness.iter().map(|&v| g.elements()[v].clone()).collect();
        println!("clique number: {}", c.size);
        println!("clique: {}", listing(&members));
    }
    if opts.girth {
        match g.girth() {
            Some(k) => println!("girth: {k}"),
            None => println!("girth: infinity"),
        }
    }
    if let Some(max_len) = opts.knit {
        match g.knit_degree(max_len) {
            Some(path) => {
                let members: Vec<E> = path.iter().map(|&v| g.elements()[v].clone()).collect();
                println!("knit degree: {}", path.len() - 1);
                println!("left path: {}", listing(&members));
            }
            None => println!("knit degree: none up to {max_len}"),
        }
    }
    if let Some(path) = &opts.dot {
        write_text(path, &g.to_dot())?;
    }
    if let Some(path) = &opts.dump {
        std::fs::write(path, g.adjacency_dump())
            .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
