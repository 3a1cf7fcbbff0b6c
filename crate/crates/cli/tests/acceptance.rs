//! Acceptance criteria 1 to 14. Each test prints one `PASS criterion k` or
//! `FAIL criterion k` line straight to stdout, so the lines show up even
//! when the harness captures test output.

use std::collections::HashMap;
use std::io::Write;
use std::process::Command;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use transemi::constructions::{
    abelian_witness, e_ix, gamma, knit_witness, null_plus_identity, null_semigroup,
};
use transemi::oracle::{self, Claim, Family, OracleResult, Shape};
use transemi::semigroup::{enumerate_full, enumerate_partial};
use transemi::tree::{
    build_tree, element_order, format_word, nullify_with, s_partition, words, LeafMatching,
};
use transemi::xi::{alpha, xi_u64};
use transemi::{
    CommGraph, Element, GroupClass, PartialTransformation, SemigroupSet, Transformation,
};

/// n, alpha(n), xi(n) for n = 1..=20.
const TABLE_ONE: [(usize, usize, u64); 20] = [
    (1, 1, 1),
    (2, 2, 1),
    (3, 2, 2),
    (4, 2, 4),
    (5, 3, 9),
    (6, 3, 27),
    (7, 3, 81),
    (8, 4, 256),
    (9, 4, 1024),
    (10, 4, 4096),
    (11, 4, 16384),
    (12, 5, 78125),
    (13, 5, 390625),
    (14, 5, 1953125),
    (15, 6, 10077696),
    (16, 6, 60466176),
    (17, 6, 362797056),
    (18, 6, 2176782336),
    (19, 7, 13841287201),
    (20, 7, 96889010407),
];

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

/// Collects the conditions of one criterion and reports them on one line.
struct Criterion {
    number: u32,
    start: Instant,
    failures: Vec<String>,
    checked: usize,
}

impl Criterion {
    fn new(number: u32) -> Self {
        Criterion {
            number,
            start: Instant::now(),
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.check(
            elapsed < limit,
            format!("{what} took {elapsed:?}, limit {limit:?}"),
        );
    }

    fn finish(self, summary: &str) {
        let elapsed = self.start.elapsed();
        let line = if self.failures.is_empty() {
            format!(
                "PASS criterion {}: {summary} ({} checks, {elapsed:.2?})\n",
                self.number, self.checked
            )
        } else {
            format!(
                "FAIL criterion {}: {summary}: {}\n",
                self.number,
                self.failures.join("; ")
            )
        };
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        assert!(self.failures.is_empty(), "{line}");
    }
}

struct Run<E> {
    result: Result<OracleResult<E>, transemi::Error>,
    elapsed: Duration,
}

type Store<E> = Mutex<HashMap<(Claim, usize), Arc<OnceLock<Arc<Run<E>>>>>>;

/// Element types with a shared cache of oracle runs, so the closure-check
/// tally sees every run exactly once.
trait Cached: Family {
    fn store() -> &'static Store<Self>;
}

impl Cached for Transformation {
    fn store() -> &'static Store<Self> {
        static STORE: OnceLock<Store<Transformation>> = OnceLock::new();
        STORE.get_or_init(Default::default)
    }
}

impl Cached for PartialTransformation {
    fn store() -> &'static Store<Self> {
        static STORE: OnceLock<Store<PartialTransformation>> = OnceLock::new();
        STORE.get_or_init(Default::default)
    }
}

fn run<E: Cached>(claim: Claim, n: usize) -> Arc<Run<E>> {
    let cell = E::store()
        .lock()
        .unwrap()
        .entry((claim, n))
        .or_default()
        .clone();
    cell.get_or_init(|| {
        let start = Instant::now();
        let result = match claim {
            Claim::Commutative => oracle::max_commutative::<E>(n),
            Claim::Idempotent => oracle::max_commutative_idempotent::<E>(n),
            Claim::UniqueIdempotent => oracle::max_unique_idempotent::<E>(n),
            Claim::Null => oracle::max_null::<E>(n),
            Claim::AbelianSubgroup => unreachable!("abelian runs go through run_abelian"),
        };
        Arc::new(Run {
            result,
            elapsed: start.elapsed(),
        })
    })
    .clone()
}

fn run_abelian(n: usize) -> Arc<Run<Transformation>> {
    let cell = Transformation::store()
        .lock()
        .unwrap()
        .entry((Claim::AbelianSubgroup, n))
        .or_default()
        .clone();
    cell.get_or_init(|| {
        let start = Instant::now();
        let result = oracle::max_abelian_subgroup(n);
        Arc::new(Run {
            result,
            elapsed: start.elapsed(),
        })
    })
    .clone()
}

/// Checks a run succeeded and hands back its result.
fn result<'a, E>(c: &mut Criterion, run: &'a Run<E>, what: &str) -> Option<&'a OracleResult<E>> {
    match &run.result {
        Ok(r) => Some(r),
        Err(e) => {
            c.check(false, format!("{what}: {e}"));
            None
        }
    }
}

fn shapes<E>(r: &OracleResult<E>) -> Vec<String> {
    r.maximizers.iter().map(|m| m.shape.to_string()).collect()
}

const FULL_RUNS: [(Claim, &[usize]); 4] = [
    (Claim::Idempotent, &[2, 3, 4, 5]),
    (Claim::Commutative, &[2, 3, 4, 5]),
    (Claim::UniqueIdempotent, &[2, 3, 4, 5]),
    (Claim::Null, &[2, 3, 4, 5]),
];

const PARTIAL_RUNS: [(Claim, &[usize]); 4] = [
    (Claim::Idempotent, &[2, 3, 4]),
    (Claim::Commutative, &[2, 3, 4]),
    (Claim::UniqueIdempotent, &[2, 3, 4]),
    (Claim::Null, &[2, 3, 4]),
];

#[test]
fn criterion_01_xi_table() {
    let mut c = Criterion::new(1);
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_transemi"))
        .args(["xi", "--max", "20"])
        .output()
        .expect("binary runs");
    c.within(start.elapsed(), SECOND, "xi --max 20");
    c.check(out.status.success(), format!("exit status {}", out.status));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<(usize, usize, u64)> = stdout
        .lines()
        .skip(1)
        .filter_map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            Some((
                f.first()?.parse().ok()?,
                f.get(1)?.parse().ok()?,
                f.get(2)?.parse().ok()?,
            ))
        })
        .collect();
    c.check(rows.len() == 20, format!("{} rows", rows.len()));
    for (got, want) in rows.iter().zip(TABLE_ONE.iter()) {
        c.check(got == want, format!("row {got:?}, expected {want:?}"));
    }
    c.finish("xi --max 20 reproduces the 20-row table");
}

#[test]
fn criterion_02_idempotent_full() {
    let mut c = Criterion::new(2);
    for n in 2..=5 {
        let run = run::<Transformation>(Claim::Idempotent, n);
        let limit = if n <= 4 { 10 * SECOND } else { 5 * MINUTE };
        c.within(run.elapsed, limit, &format!("n={n}"));
        let Some(r) = result(&mut c, &run, &format!("n={n}")) else {
            continue;
        };
        c.check(r.size == 1 << (n - 1), format!("n={n}: size {}", r.size));
        c.check(
            r.maximizers.len() == n,
            format!("n={n}: {} maximizers", r.maximizers.len()),
        );
        for m in &r.maximizers {
            let is_gamma = (0..n).any(|x| gamma(n, x).is_ok_and(|g| g == m.set));
            c.check(
                is_gamma,
                format!("n={n}: maximizer {} is not a Gamma", m.shape),
            );
        }
    }
    c.finish("idempotent maximum of T_n is 2^(n-1), attained by the n Gammas, n = 2..5");
}

#[test]
fn criterion_03_idempotent_partial() {
    let mut c = Criterion::new(3);
    for n in 2..=4 {
        let run = run::<PartialTransformation>(Claim::Idempotent, n);
        c.within(run.elapsed, MINUTE, &format!("n={n}"));
        let Some(r) = result(&mut c, &run, &format!("n={n}")) else {
            continue;
        };
        c.check(r.size == 1 << n, format!("n={n}: size {}", r.size));
        let eix = e_ix(n).unwrap();
        c.check(
            r.maximizers.len() == 1 && r.maximizers[0].set == eix,
            format!("n={n}: maximizers {:?}", shapes(r)),
        );
    }
    c.finish("idempotent maximum of P_n is 2^n, attained only by E(I(X)), n = 2..4");
}

fn is_gamma(shape: &Shape) -> bool {
    matches!(shape, Shape::Gamma { .. })
}

fn is_sym_group(shape: &Shape, classes: &[GroupClass]) -> bool {
    matches!(shape, Shape::Group { class, within_sym: true } if classes.contains(class))
}

#[test]
fn criterion_04_commutative_full() {
    let mut c = Criterion::new(4);
    for n in 2..=5 {
        let run = run::<Transformation>(Claim::Commutative, n);
        let limit = if n <= 4 { MINUTE } else { 30 * MINUTE };
        c.within(run.elapsed, limit, &format!("n={n}"));
        let Some(r) = result(&mut c, &run, &format!("n={n}")) else {
            continue;
        };
        let omega = (1 << (n - 1)) - 1;
        c.check(
            r.clique_number == omega,
            format!("n={n}: clique number {}", r.clique_number),
        );
        let gammas = r.maximizers.iter().filter(|m| is_gamma(&m.shape)).count();
        c.check(
            gammas == n,
            format!("n={n}: {gammas} Gammas among {:?}", shapes(r)),
        );
        let others: Vec<&Shape> = r
            .maximizers
            .iter()
            .map(|m| &m.shape)
            .filter(|s| !is_gamma(s))
            .collect();
        if n == 2 {
            c.check(
                others.len() == 1 && is_sym_group(others[0], &[GroupClass::C2]),
                format!("n=2: non-Gamma maximizers {others:?}"),
            );
        } else {
            c.check(
                others.is_empty(),
                format!("n={n}: non-Gamma maximizers {others:?}"),
            );
        }
    }
    c.finish(
        "clique number of G(T_n) is 2^(n-1)-1, maximizers Gammas (plus C2 at n = 2), n = 2..5",
    );
}

#[test]
fn criterion_05_commutative_partial() {
    let mut c = Criterion::new(5);
    for n in 2..=4 {
        let run = run::<PartialTransformation>(Claim::Commutative, n);
        let limit = if n <= 3 { MINUTE } else { 10 * MINUTE };
        c.within(run.elapsed, limit, &format!("n={n}"));
        let Some(r) = result(&mut c, &run, &format!("n={n}")) else {
            continue;
        };
        let omega = (1 << n) - 2;
        c.check(
            r.clique_number == omega,
            format!("n={n}: clique number {}", r.clique_number),
        );
        let eix = e_ix(n).unwrap();
        c.check(
            r.maximizers.len() == 1 && r.maximizers[0].set == eix,
            format!("n={n}: maximizers {:?}", shapes(r)),
        );
    }
    c.finish("clique number of G(P_n) is 2^n-2, unique maximizer E(I(X)), n = 2..4");
}

/// Whether `set` is the full null semigroup collapsing `points` (head
/// first) with image inside them.
fn null_on(set: &SemigroupSet<Transformation>, points: &[usize]) -> bool {
    null_semigroup(set.degree(), points).is_ok_and(|m| m == *set)
}

fn null_points(shape: &Shape) -> Option<&[usize]> {
    match shape {
        Shape::Null { points } => Some(points),
        _ => None,
    }
}

fn omega_size(shape: &Shape) -> Option<usize> {
    match shape {
        Shape::NullPartial { b } => Some(b.len()),
        _ => None,
    }
}

#[test]
fn criterion_06_unique_idempotent() {
    let mut c = Criterion::new(6);
    let start = Instant::now();
    for (n, want) in [(2, 2), (3, 3), (4, 4), (5, 9)] {
        let run = run::<Transformation>(Claim::UniqueIdempotent, n);
        let Some(r) = result(&mut c, &run, &format!("full n={n}")) else {
            continue;
        };
        c.check(r.size == want, format!("full n={n}: size {}", r.size));
        for m in &r.maximizers {
            let ok = match n {
                2 => is_sym_group(&m.shape, &[GroupClass::C2]),
                3 => is_sym_group(&m.shape, &[GroupClass::C3]),
                4 => {
                    is_sym_group(&m.shape, &[GroupClass::C4, GroupClass::C2xC2])
                        || null_points(&m.shape).is_some_and(|p| p.len() == 2 && null_on(&m.set, p))
                }
                _ => null_points(&m.shape).is_some_and(|p| p.len() == 3 && null_on(&m.set, p)),
            };
            c.check(ok, format!("full n={n}: maximizer {}", m.shape));
        }
    }
    for n in 2..=4 {
        let run = run::<PartialTransformation>(Claim::UniqueIdempotent, n);
        let Some(r) = result(&mut c, &run, &format!("partial n={n}")) else {
            continue;
        };
        let want = xi_u64(n + 1).unwrap() as usize;
        c.check(r.size == want, format!("partial n={n}: size {}", r.size));
        let b = alpha(n + 1).unwrap() - 1;
        let mut groups = 0;
        for m in &r.maximizers {
            if n == 2 && is_sym_group(&m.shape, &[GroupClass::C2]) {
                groups += 1;
                continue;
            }
            c.check(
                omega_size(&m.shape) == Some(b),
                format!("partial n={n}: maximizer {}", m.shape),
            );
        }
        if n == 2 {
            c.check(groups == 1, format!("partial n=2: {groups} copies of C2"));
        }
    }
    c.within(start.elapsed(), 10 * MINUTE, "all runs");
    c.finish(
        "unique-idempotent maxima 2,3,4,9 (full) and 2,4,9 (partial) with the predicted maximizers",
    );
}

#[test]
fn criterion_07_null() {
    let mut c = Criterion::new(7);
    let start = Instant::now();
    for (n, want) in [(2, 1), (3, 2), (4, 4), (5, 9)] {
        let run = run::<Transformation>(Claim::Null, n);
        let Some(r) = result(&mut c, &run, &format!("full n={n}")) else {
            continue;
        };
        c.check(r.size == want, format!("full n={n}: size {}", r.size));
        let t = alpha(n).unwrap();
        let mut identities = 0;
        for m in &r.maximizers {
            if n == 2 && m.set.elements() == [Transformation::identity(2)] {
                identities += 1;
                continue;
            }
            // Headed by the zero's value; any alpha(n)-point set will do.
            let ok = m.set.zero().is_some_and(|z| {
                subsets_with_head(n, z.get(0), t)
                    .iter()
                    .any(|p| null_on(&m.set, p))
            });
            c.check(ok, format!("full n={n}: maximizer {}", m.shape));
        }
        if n == 2 {
            c.check(
                identities == 1,
                format!("full n=2: {identities} copies of the identity"),
            );
        }
    }
    for n in 2..=4 {
        let run = run::<PartialTransformation>(Claim::Null, n);
        let Some(r) = result(&mut c, &run, &format!("partial n={n}")) else {
            continue;
        };
        let want = xi_u64(n + 1).unwrap() as usize;
        c.check(r.size == want, format!("partial n={n}: size {}", r.size));
        let b = alpha(n + 1).unwrap() - 1;
        for m in &r.maximizers {
            c.check(
                omega_size(&m.shape) == Some(b),
                format!("partial n={n}: maximizer {}", m.shape),
            );
        }
    }
    c.within(start.elapsed(), 10 * MINUTE, "all runs");
    c.finish("null maxima 1,2,4,9 (full) and xi(n+1) (partial), each attained only by the predicted sets");
}

/// All `t`-point subsets of `0..n` containing `head`, listed head first.
fn subsets_with_head(n: usize, head: usize, t: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..n).filter(|&x| x != head).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        if mask.count_ones() as usize + 1 != t {
            continue;
        }
        let mut p = vec![head];
        p.extend(
            (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i]),
        );
        out.push(p);
    }
    out
}

#[test]
fn criterion_08_abelian_subgroups() {
    let mut c = Criterion::new(8);
    let start = Instant::now();
    for (n, want) in [(2, 2), (3, 3), (4, 4), (5, 6), (6, 9)] {
        let run = run_abelian(n);
        let Some(r) = result(&mut c, &run, &format!("n={n}")) else {
            continue;
        };
        c.check(r.size == want, format!("n={n}: size {}", r.size));
        let witness = abelian_witness(n).unwrap();
        c.check(
            witness.len() == want,
            format!("n={n}: witness has {} elements", witness.len()),
        );
        c.check(
            witness.is_group() && witness.is_commutative(),
            format!("n={n}: witness is not an abelian group"),
        );
    }
    c.within(start.elapsed(), 5 * MINUTE, "all runs");
    c.finish("largest abelian subgroups of Sym_n have orders 2,3,4,6,9 for n = 2..6");
}

const EXAMPLE: [[usize; 7]; 7] = [
    [1, 7, 4, 4, 4, 4, 7],
    [4, 1, 7, 7, 7, 7, 1],
    [7, 4, 1, 1, 1, 1, 4],
    [1, 7, 4, 4, 4, 3, 7],
    [7, 3, 1, 1, 1, 1, 4],
    [1, 7, 4, 4, 4, 5, 7],
    [7, 5, 1, 1, 1, 1, 4],
];

fn sorted_words(ws: &[Vec<usize>]) -> Vec<String> {
    let mut out: Vec<String> = ws.iter().map(|w| format_word(w)).collect();
    out.sort();
    out
}

#[test]
fn criterion_09_worked_example() {
    let mut c = Criterion::new(9);
    let maps = EXAMPLE
        .iter()
        .map(|m| Transformation::from_one_based(m).unwrap())
        .collect();
    let s = SemigroupSet::from_elements(7, maps).unwrap();
    let p = s_partition(&s).unwrap();
    let blocks: Vec<Vec<usize>> = p
        .blocks
        .iter()
        .map(|b| b.iter().map(|x| x + 1).collect())
        .collect();
    c.check(
        blocks == [vec![1, 4, 7], vec![3, 5], vec![2, 6]],
        format!("partition {blocks:?}"),
    );
    let order = element_order(&p);
    let ws = sorted_words(&words(&s, &order));
    c.check(
        ws == [
            "1474473", "1474474", "1474475", "4717717", "7141131", "7141141", "7141151",
        ],
        format!("words {ws:?}"),
    );
    let tree = build_tree(&s, &order).unwrap();
    c.check(
        tree.leaf_count() == 7,
        format!("{} leaves", tree.leaf_count()),
    );
    let branchings = sorted_words(&tree.branchings());
    c.check(
        branchings == ["147447", "71411", "ε"],
        format!("branchings {branchings:?}"),
    );

    let replacement = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        .iter()
        .map(|m| Transformation::new(m.to_vec()).unwrap())
        .collect();
    let m = SemigroupSet::from_elements(4, replacement).unwrap();
    match nullify_with(&s, Some(&m), LeafMatching::Lexicographic) {
        Ok(r) => {
            let out: Vec<Vec<usize>> = r
                .output
                .iter()
                .map(|b| transemi::tree::word_of(b, &r.order))
                .collect();
            let z = sorted_words(&out);
            c.check(
                z == [
                    "1111111", "1111114", "1111117", "1111411", "1114111", "1114141", "1114171",
                ],
                format!("output words {z:?}"),
            );
        }
        Err(e) => c.check(false, format!("nullify: {e}")),
    }
    c.within(c.start.elapsed(), SECOND, "example");
    c.finish("seven-map example: partition, words, tree and nullified words reproduced");
}

#[test]
fn criterion_10_random_nullify() {
    let mut c = Criterion::new(10);
    for seed in 0..500u64 {
        let n = 2 + (seed as usize % 5);
        let s = match oracle::random_commutative_unique_idem(n, seed) {
            Ok(s) => s,
            Err(e) => {
                c.check(false, format!("seed {seed}: generator failed: {e}"));
                continue;
            }
        };
        let e = s.idempotents();
        c.check(
            e.len() == 1 && e[0] != Transformation::identity(n),
            format!("seed {seed}: idempotents {e:?}"),
        );
        let p = s_partition(&s).unwrap();
        let m = p.blocks[0].len();
        let tree = build_tree(&s, &element_order(&p)).unwrap();
        c.check(
            tree.check_label_invariant(m).is_ok(),
            format!("seed {seed}: label invariant"),
        );
        c.check(
            tree.check_linear_level_invariant(m).is_ok(),
            format!("seed {seed}: linear-level invariant"),
        );
        match nullify_with(&s, None, LeafMatching::Lexicographic) {
            Ok(r) => {
                let out = SemigroupSet::from_elements(n, r.output.elements().to_vec()).unwrap();
                c.check(out.is_closed(), format!("seed {seed}: output not closed"));
                c.check(
                    out.len() == s.len(),
                    format!("seed {seed}: |N| = {}, |S| = {}", out.len(), s.len()),
                );
                let zero = out.is_null().ok().flatten();
                c.check(
                    zero.is_some_and(|z| z.rank() == 1),
                    format!("seed {seed}: output not null with rank-1 zero"),
                );
            }
            Err(e) => c.check(false, format!("seed {seed}: nullify: {e}")),
        }
    }
    c.within(c.start.elapsed(), 5 * MINUTE, "500 seeds");
    c.finish("500 random commutative unique-idempotent semigroups nullify correctly");
}

#[test]
fn criterion_11_embedding() {
    let mut c = Criterion::new(11);
    let p3 = enumerate_partial(3).unwrap();
    c.check(p3.len() == 64, format!("|P_3| = {}", p3.len()));
    let embedded: Vec<Transformation> = p3.iter().map(|b| b.embed()).collect();
    let mut distinct = embedded.clone();
    distinct.sort();
    distinct.dedup();
    c.check(
        distinct.len() == 64,
        format!("{} distinct images", distinct.len()),
    );
    let mut pairs = 0;
    for (a, ea) in p3.iter().zip(&embedded) {
        for (b, eb) in p3.iter().zip(&embedded) {
            pairs += 1;
            if a.mul(b).embed() != ea.mul(eb) {
                c.check(false, format!("embedding not multiplicative at {a} {b}"));
            }
        }
    }
    c.check(pairs == 4096, format!("{pairs} pairs"));
    c.within(c.start.elapsed(), SECOND, "P_3");
    c.finish("the embedding of P_3 into T_4 is an injective homomorphism (4096 pairs)");
}

fn knit_check<E: Element>(c: &mut Criterion, name: &str, universe: &SemigroupSet<E>, a: E, b: E) {
    let g = CommGraph::build(universe).unwrap();
    let find = |x: &E| g.elements().iter().position(|v| v == x);
    let ok = matches!((find(&a), find(&b)), (Some(i), Some(j)) if g.is_left_path(&[i, j]));
    c.check(ok, format!("{name}: witness is not a left path"));
}

#[test]
fn criterion_12_girth_and_knit() {
    let mut c = Criterion::new(12);
    for n in 2..=4 {
        let t = CommGraph::build(&enumerate_full(n).unwrap()).unwrap();
        let p = CommGraph::build(&enumerate_partial(n).unwrap()).unwrap();
        let want = if n == 2 { None } else { Some(3) };
        c.check(
            t.girth() == want,
            format!("girth G(T_{n}) = {:?}", t.girth()),
        );
        c.check(
            p.girth() == want,
            format!("girth G(P_{n}) = {:?}", p.girth()),
        );
        if n == 2 {
            c.check(
                t.knit_degree(3).is_none(),
                "left path of length <= 3 in G(T_2)",
            );
            c.check(
                p.knit_degree(3).is_none(),
                "left path of length <= 3 in G(P_2)",
            );
        }
    }
    for n in 3..=5 {
        let (a, b) = knit_witness(n).unwrap();
        knit_check(
            &mut c,
            &format!("T_{n}"),
            &enumerate_full(n).unwrap(),
            a.clone(),
            b.clone(),
        );
        knit_check(
            &mut c,
            &format!("P_{n}"),
            &enumerate_partial(n).unwrap(),
            PartialTransformation::from_total(&a),
            PartialTransformation::from_total(&b),
        );
    }
    c.within(c.start.elapsed(), MINUTE, "girth and knit");
    c.finish("girth infinite for n = 2 and 3 for n = 3,4; knit degree 1 witnessed for n = 3..5");
}

#[test]
fn criterion_13_lower_bounds() {
    let mut c = Criterion::new(13);
    for n in 7..=12 {
        let t = TABLE_ONE[n - 1];
        let points: Vec<usize> = (0..t.1).collect();
        let built = null_plus_identity(n, &points).unwrap();
        let fresh = SemigroupSet::from_elements(n, built.elements().to_vec()).unwrap();
        c.check(
            fresh.len() as u64 == t.2 + 1,
            format!("n={n}: size {}", fresh.len()),
        );
        c.check(fresh.is_closed(), format!("n={n}: not closed"));
        c.check(fresh.is_commutative(), format!("n={n}: not commutative"));
    }
    c.within(c.start.elapsed(), MINUTE, "n = 7..12");
    c.finish("null semigroup plus identity has xi(n)+1 elements and is commutative and closed, n = 7..12");
}

#[test]
fn criterion_14_closure_soundness() {
    let mut c = Criterion::new(14);
    let mut checks = 0;
    let mut runs = 0;
    fn tally<E: Cached>(
        c: &mut Criterion,
        claim: Claim,
        n: usize,
        checks: &mut usize,
        runs: &mut usize,
    ) {
        let run = run::<E>(claim, n);
        let what = format!("{} {:?} n={n}", claim.as_str(), E::KIND);
        if let Some(r) = result(c, &run, &what) {
            *runs += 1;
            *checks += r.closure_checks;
            if claim == Claim::Commutative {
                c.check(
                    r.clique_number == r.size - r.center_size,
                    format!(
                        "{what}: clique number {} vs {} - {}",
                        r.clique_number, r.size, r.center_size
                    ),
                );
            }
        }
    }
    for (claim, ns) in FULL_RUNS {
        for &n in ns {
            tally::<Transformation>(&mut c, claim, n, &mut checks, &mut runs);
        }
    }
    for (claim, ns) in PARTIAL_RUNS {
        for &n in ns {
            tally::<PartialTransformation>(&mut c, claim, n, &mut checks, &mut runs);
        }
    }
    for n in 2..=6 {
        let run = run_abelian(n);
        if let Some(r) = result(&mut c, &run, &format!("abelian n={n}")) {
            runs += 1;
            checks += r.closure_checks;
        }
    }
    c.check(checks > 0, "no closure checks ran");
    c.finish(&format!(
        "{runs} oracle runs, {checks} clique closure checks, no violations"
    ));
}
