//! Acceptance gate: one line per criterion, run over every corpus entry and
//! every tilting module found on it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tilting_core::corpus::golden::{file_name, table, Source};
use tilting_core::corpus::{enumerate_tilting, load, CorpusEntry, ENTRY_NAMES, TILTING_BOUND};
use tilting_core::input::Document;
use tilting_core::linalg::{Field, Mat};
use tilting_core::pipeline::{check_tilting, verify_bb, verify_derived, Options};
use tilting_core::report::{Check, Probe, Status};

const RECOGNITION_LIMIT: Duration = Duration::from_secs(5);
const DERIVED_LIMIT: Duration = Duration::from_secs(60);
const A2_CLASSES: usize = 2;
const SES_SAMPLES: usize = 200;
const ORE_SAMPLES: usize = 100;
const DERIVED_SAMPLES: usize = 50;
const FF_PAIRS: usize = 10;
const WINDOW: std::ops::RangeInclusive<i32> = -2..=2;
const MAX_LEN: usize = 4;
const MAX_DIM: usize = 8;
const SEED: u64 = 0x7e57;
const MATRIX_SAMPLES: usize = 300;
const PRIMES: [u32; 5] = [2, 3, 5, 7, 10007];

const NAMES: [&str; 13] = [
    "tilting-recognition",
    "gen-equals-perp",
    "counit-iso-iff-perp",
    "tor-vanishes-on-hom",
    "dual-partial-cotilting",
    "reject-radical",
    "class-E-characterization",
    "class-E-collapse",
    "round-trips",
    "fraction-witnesses",
    "derived-equivalence",
    "oracle-equivalence",
    "exact-arithmetic",
];

/// Which criterion a check feeds.
fn criterion(claim: &str) -> usize {
    match claim {
        "is-tilting" | "axiom-T1-projective-dimension" | "axiom-T2-no-self-extensions" | "axiom-T3-coresolution" => 1,
        "gen-equals-perp" | "perp-equals-gen" => 2,
        "counit-iso-iff-perp" => 3,
        "tor-vanishes-on-hom" => 4,
        "dual-partial-cotilting" | "ext-into-dual-equals-tor" => 5,
        "reject-radical" | "reject-detects-cogenerated" => 6,
        "class-E-characterization" | "class-E-two-out-of-three" => 7,
        "class-E-is-zero-up-to-cap" | "class-E-vanishes" | "Y-equals-cogenerated" | "X-equals-tensor-kernel"
        | "dual-hom-detects-tensor" => 8,
        "hom-lands-in-Y" | "ext-lands-in-X" | "tensor-lands-in-T" | "tor-lands-in-F" | "xi-iso-iff-torsion-free"
        | "xi-canonical-on-torsion-free-quotient" | "theta-iso-iff-tensor-vanishes"
        | "theta-canonical-on-tensor-kernel" | "unit-iso-iff-cogenerated" | "ext-dimension-agrees"
        | "tor-dimension-agrees" => 9,
        "ore-left-completion" | "ore-equalizer" | "triangle-identity-hom" | "triangle-identity-tensor"
        | "unit-inverted-by-tensor" => 10,
        "derived-counit-quasi-iso" | "les-exact" | "tensor-matches-cone" | "fully-faithful" | "ker-LG-iff-acyclic"
        | "ker-LG-contains-cones-of-identities" | "sigma-derived-iff-cone-in-kernel"
        | "LG-two-term-matches-resolution" | "xi-derived-agrees" | "theta-derived-agrees" => 11,
        other => panic!("claim {other:?} is not assigned to a criterion"),
    }
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: Vec<String>,
    undecided: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl Into<String>) {
        if ok {
            self.pass += 1;
        } else {
            self.fail.push(what.into());
        }
    }

    fn add(&mut self, context: &str, c: &Check) {
        let what = format!("{context} {}/{}: {}", c.claim, c.subject, c.detail);
        match c.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail.push(what),
            Status::Undecided => self.undecided.push(what),
        }
    }
}

fn options() -> Options {
    Options {
        seed: SEED,
        bound: Some(TILTING_BOUND),
        ses_samples: SES_SAMPLES,
        ore_samples: ORE_SAMPLES,
        window: WINDOW,
        samples: DERIVED_SAMPLES,
        ff_pairs: FF_PAIRS,
        max_len: MAX_LEN,
        max_dim: MAX_DIM,
    }
}

fn document(entry: &CorpusEntry, name: &str, t: &tilting_core::RightModule) -> Document {
    let mut modules = entry.modules.clone();
    modules.push(Probe::new(format!("T={name}"), t.clone()));
    Document {
        algebra: entry.algebra.clone(),
        modules,
        tilting: vec![format!("T={name}")],
        probes: Some(entry.modules.iter().map(|p| p.name.clone()).collect()),
        complexes: Vec::new(),
    }
}

fn recognition(t: &mut Tally) {
    for name in ["A2-Q", "A2-F2", "A2-F3"] {
        let entry = load(name).expect("corpus entry loads");
        let start = Instant::now();
        let found = enumerate_tilting(&entry, TILTING_BOUND).expect("enumeration succeeds");
        let took = start.elapsed();
        t.record(found.len() == A2_CLASSES, format!("{name}: {} classes", found.len()));
        t.record(took < RECOGNITION_LIMIT, format!("{name}: took {took:?}"));
        for f in &found {
            let c = &f.check;
            let witnessed = c.t1
                && c.t2
                && c.verdict.is_yes()
                && c.certificate.as_ref().is_some_and(|cert| cert.coresolution.verify());
            t.record(witnessed, format!("{name}/{}: witnesses do not verify", f.name));
        }
        let names: Vec<&str> = found.iter().map(|f| f.name.as_str()).collect();
        t.notes.push(format!("{name} {names:?} in {}ms", took.as_millis()));
    }
}

fn golden(t: &mut Tally) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    for name in ENTRY_NAMES {
        let entry = load(name).expect("corpus entry loads");
        let stored = std::fs::read_to_string(dir.join(file_name(name))).unwrap_or_default();
        let oracle = table(&entry, Source::Oracle).expect("oracle table");
        let engine = table(&entry, Source::Engine).expect("engine table");
        t.record(!stored.is_empty() && oracle == stored, format!("{name}: oracle table differs from the stored file"));
        t.record(engine == stored, format!("{name}: engine table differs from the stored file"));
    }
    t.notes.push(format!("{} golden tables", ENTRY_NAMES.len()));
}

fn rust_files(dir: &Path, out: &mut Vec<PathBuf>) {
    let Ok(rd) = std::fs::read_dir(dir) else { return };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            if p.file_name().is_some_and(|n| n != "target") {
                rust_files(&p, out);
            }
        } else if p.extension().is_some_and(|x| x == "rs") {
            out.push(p);
        }
    }
}

fn float_tokens(src: &str) -> usize {
    let tokens = [format!("f{}", 32), format!("f{}", 64)];
    let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut n = 0;
    for tok in &tokens {
        for (i, _) in src.match_indices(tok.as_str()) {
            let before = src[..i].chars().next_back();
            let after = src[i + tok.len()..].chars().next();
            if !before.is_some_and(word) && !after.is_some_and(word) {
                n += 1;
            }
        }
    }
    n
}

/// Rank over `Q` against rank over `F_p` of the reduction: never larger,
/// and equal whenever an invertible pivot minor stays invertible mod `p`.
/// Kernel vectors over `Q` reduce to kernel vectors mod `p`.
fn reduction_agrees(a: &Mat, p: u32) -> Result<bool, String> {
    let r = a.rank();
    let ap = a.reduce_mod(p).ok_or("integer matrix failed to reduce")?;
    let rp = ap.rank();
    if rp > r {
        return Ok(false);
    }
    let k = a.left_kernel();
    if let Some(kp) = k.reduce_mod(p) {
        if !(&kp * &ap).is_zero() {
            return Ok(false);
        }
    }
    let cols = a.rref().pivots;
    let rows = a.transpose().rref().pivots;
    let minor = a.select_rows(&rows).select_cols(&cols);
    let inv = minor.inverse().ok_or("pivot minor is singular over Q")?;
    let certified = match (minor.reduce_mod(p), inv.reduce_mod(p)) {
        (Some(m), Some(i)) => (&m * &i).is_identity(),
        _ => false,
    };
    Ok(!certified || rp == r)
}

fn arithmetic(t: &mut Tally) {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut files = Vec::new();
    rust_files(&root.join("crates"), &mut files);
    let mut hits = 0;
    for f in &files {
        let src = std::fs::read_to_string(f).unwrap_or_default();
        let n = float_tokens(&src);
        if n > 0 {
            t.fail.push(format!("{}: {n} floating-point type tokens", f.display()));
        }
        hits += n;
    }
    if hits == 0 {
        t.pass += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut certified = 0;
    for k in 0..MATRIX_SAMPLES {
        let rows = 1 + k % 6;
        let cols = 1 + (k / 6) % 7;
        let spread = [1, 3, 20][k % 3];
        let mut a = Mat::random(Field::Rational, rows, cols, &mut rng, spread);
        if k % 4 == 0 && rows > 1 {
            // force a dependent row
            let r0 = &a.row(0) + &a.row(1).scale(&Field::Rational.from_i64(3));
            a.paste(rows - 1, 0, &r0);
        }
        for p in PRIMES {
            match reduction_agrees(&a, p) {
                Ok(ok) => t.record(ok, format!("matrix #{k} mod {p}")),
                Err(e) => t.fail.push(format!("matrix #{k} mod {p}: {e}")),
            }
            if a.reduce_mod(p).is_some_and(|ap| ap.rank() == a.rank()) {
                certified += 1;
            }
        }
    }
    t.notes.push(format!(
        "{} source files scanned, {MATRIX_SAMPLES} matrices x {} primes, {certified} with equal rank",
        files.len(),
        PRIMES.len()
    ));
}

fn main() -> ExitCode {
    let mut tallies: BTreeMap<usize, Tally> = (1..=13).map(|k| (k, Tally::default())).collect();
    let total = Instant::now();
    recognition(tallies.get_mut(&1).unwrap());
    let opts = options();
    let mut contexts = 0;
    let mut slowest = (String::new(), Duration::ZERO);
    for name in ENTRY_NAMES {
        let entry = load(name).expect("corpus entry loads");
        let found = enumerate_tilting(&entry, TILTING_BOUND).expect("enumeration succeeds");
        let mut derived_time = Duration::ZERO;
        for f in &found {
            contexts += 1;
            let doc = document(&entry, &f.name, &f.module);
            let context = format!("[{name} T={}]", f.name);
            let probes = doc.probe_list();
            let mut checks = Vec::new();
            match check_tilting(&doc, &opts) {
                Ok(o) => checks.extend(o.checks),
                Err(e) => tallies.get_mut(&1).unwrap().fail.push(format!("{context} check-tilting: {e}")),
            }
            match verify_bb(&doc, &probes, &opts) {
                Ok(o) => checks.extend(o.checks),
                Err(e) => tallies.get_mut(&9).unwrap().fail.push(format!("{context} verify-bb: {e}")),
            }
            let start = Instant::now();
            match verify_derived(&doc, &opts) {
                Ok(o) => checks.extend(o.checks),
                Err(e) => tallies.get_mut(&11).unwrap().fail.push(format!("{context} verify-derived: {e}")),
            }
            derived_time += start.elapsed();
            for c in &checks {
                tallies.get_mut(&criterion(&c.claim)).unwrap().add(&context, c);
            }
        }
        let t11 = tallies.get_mut(&11).unwrap();
        t11.record(derived_time < DERIVED_LIMIT, format!("{name}: derived suite took {derived_time:?}"));
        if derived_time > slowest.1 {
            slowest = (name.to_string(), derived_time);
        }
    }
    tallies.get_mut(&11).unwrap().notes.push(format!(
        "slowest entry {} at {}ms (limit {}s)",
        slowest.0,
        slowest.1.as_millis(),
        DERIVED_LIMIT.as_secs()
    ));
    golden(tallies.get_mut(&12).unwrap());
    arithmetic(tallies.get_mut(&13).unwrap());

    let mut failed = 0;
    for (k, t) in &tallies {
        let ok = t.fail.is_empty() && t.pass > 0;
        failed += usize::from(!ok);
        let mut line = format!(
            "C{k:02} {} {:<26} pass {} fail {} undecided {}",
            if ok { "PASS" } else { "FAIL" },
            NAMES[k - 1],
            t.pass,
            t.fail.len(),
            t.undecided.len()
        );
        if !t.notes.is_empty() {
            line.push_str(&format!("; {}", t.notes.join("; ")));
        }
        println!("{line}");
        for f in t.fail.iter().take(5) {
            println!("    fail: {f}");
        }
        for u in t.undecided.iter().take(3) {
            println!("    undecided: {u}");
        }
    }
    println!(
        "acceptance: {}/13 criteria pass over {} corpus entries and {contexts} tilting contexts in {}ms",
        13 - failed,
        ENTRY_NAMES.len(),
        total.elapsed().as_millis()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
