//! Parser fuzzing shared by the `fuzz` and `acceptance` test targets.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramislope_cli::{parse_job, DslError};

const VOCAB: &[&str] = &[
    "trait", "cover", "sheaf", "task", "on", "=", "+", "#", "p=2", "p=3", "p=5", "q=9", "q=0",
    "precision=64", "max_precision=8", "trivial", "kummer", "artin_schreier", "compositum",
    "base_change", "regular", "character", "n=2", "n=0", "n=-1", "m=5", "m=1..50", "m=9..3",
    "a=1", "a=g^3", "a=g^", "rank=2", "tame=1", "wild=1,2", "wild=,", "cover=K", "sheaf=F",
    "base_cover=K", "covers=K,L", "covers=", "filtration", "slopes", "nearby", "certificate",
    "sweep", "tameness", "K", "L", "F", "99999999999999999999999", "\t", "\n", "é", "\u{0}",
];

/// Generates a job that the grammar accepts.
pub fn valid_job(rng: &mut impl Rng) -> String {
    let p = *[2u32, 3, 5].choose(rng).unwrap();
    let tame: &[u64] = if p == 2 { &[1, 3] } else { &[1, 2, 4] };
    let mut out = format!("trait p={p}\n");
    let mut covers: Vec<String> = Vec::new();
    let mut wild: Vec<String> = Vec::new();
    for i in 0..rng.gen_range(1..5) {
        let name = format!("C{i}");
        let m = loop {
            let m = rng.gen_range(1..12u64);
            if m % p as u64 != 0 {
                break m;
            }
        };
        let body = match rng.gen_range(0..4) {
            0 => "trivial".to_string(),
            1 => format!("kummer n={}", tame.choose(rng).unwrap()),
            2 if !wild.is_empty() => {
                let base = wild.choose(rng).unwrap().clone();
                format!("base_change {base} n={}", rng.gen_range(1..3))
            }
            _ => {
                wild.push(name.clone());
                format!("artin_schreier m={m} a=1")
            }
        };
        out += &format!("cover {name} = {body}\n");
        covers.push(name);
    }
    let mut sheaves = Vec::new();
    for (i, c) in covers.iter().enumerate() {
        if rng.gen_bool(0.7) {
            let spec = ["regular", "trivial", "trivial rank=2 + regular"].choose(rng).unwrap();
            out += &format!("sheaf F{i} on {c} = {spec}\n");
            sheaves.push(format!("F{i}"));
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        let c = covers.choose(rng).unwrap();
        let line = match (rng.gen_range(0..4), sheaves.choose(rng)) {
            (1, Some(s)) => format!("task slopes sheaf={s}"),
            (2, Some(s)) => format!("task nearby cover={c} sheaf={s}"),
            (3, _) => {
                let lo = rng.gen_range(1..20);
                format!("task sweep p={p} m={lo}..{}", lo + rng.gen_range(0..20))
            }
            _ => format!("task filtration cover={c}"),
        };
        out += &line;
        out.push('\n');
    }
    if rng.gen_bool(0.3) {
        out += "# trailing comment\n";
    }
    out
}

fn mutate(rng: &mut impl Rng, src: &str) -> Vec<u8> {
    let mut toks: Vec<String> = src.split(' ').map(String::from).collect();
    for _ in 0..rng.gen_range(1..4) {
        let i = rng.gen_range(0..toks.len().max(1));
        match rng.gen_range(0..5) {
            0 if !toks.is_empty() => {
                toks.remove(i);
            }
            1 => toks.insert(i.min(toks.len()), VOCAB.choose(rng).unwrap().to_string()),
            2 if toks.len() > 1 => {
                let j = rng.gen_range(0..toks.len());
                toks.swap(i, j);
            }
            3 if !toks.is_empty() => toks[i] = VOCAB.choose(rng).unwrap().to_string(),
            _ => {}
        }
    }
    let mut bytes = toks.join(" ").into_bytes();
    if rng.gen_bool(0.2) && !bytes.is_empty() {
        let k = rng.gen_range(0..bytes.len());
        bytes[k] = rng.gen();
    }
    if rng.gen_bool(0.1) {
        bytes.truncate(rng.gen_range(0..=bytes.len()));
    }
    bytes
}

fn random_input(rng: &mut impl Rng, seeds: &[String]) -> Vec<u8> {
    match rng.gen_range(0..10) {
        0..=1 => (0..rng.gen_range(0..200)).map(|_| rng.gen()).collect(),
        2..=3 => (0..rng.gen_range(0..30))
            .map(|_| *VOCAB.choose(rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ")
            .into_bytes(),
        4..=5 => valid_job(rng).into_bytes(),
        6 => {
            let src = valid_job(rng);
            mutate(rng, &src)
        }
        _ => {
            let src = seeds.choose(rng).unwrap().clone();
            mutate(rng, &src)
        }
    }
}

#[derive(Debug, Default)]
pub struct FuzzStats {
    pub ok: usize,
    pub parse_errors: usize,
    pub validation_errors: usize,
}

/// Feeds `n` inputs to the parser. Fails on a panic, on an error position
/// outside the input, or when a grammar-generated job is rejected.
pub fn fuzz(n: usize, seed: u64, seeds: &[String]) -> Result<FuzzStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    for case in 0..n {
        let generated = rng.gen_bool(0.2);
        let input = if generated {
            valid_job(&mut rng).into_bytes()
        } else {
            random_input(&mut rng, seeds)
        };
        let outcome = catch_unwind(AssertUnwindSafe(|| parse_job(&input)))
            .map_err(|_| format!("case {case}: parser panicked on {:?}", String::from_utf8_lossy(&input)))?;
        let lines = input.split(|b| *b == b'\n').count();
        match outcome {
            Ok(_) => stats.ok += 1,
            Err(e) if generated => {
                return Err(format!("case {case}: valid job rejected: {e}\n{}", String::from_utf8_lossy(&input)))
            }
            Err(DslError::Parse { line, col, .. }) | Err(DslError::Validation { line, col, .. })
                if line == 0 || line > lines.max(1) || col == 0 =>
            {
                return Err(format!("case {case}: error position {line}:{col} outside the input"))
            }
            Err(DslError::Parse { .. }) => stats.parse_errors += 1,
            Err(DslError::Validation { .. }) => stats.validation_errors += 1,
        }
    }
    Ok(stats)
}

pub fn golden_jobs() -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "job"))
        .collect();
    v.sort();
    v.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect()
}
