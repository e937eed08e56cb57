//! Parser for the line-oriented job language.
//!
//! ```text
//! trait p=3 q=9
//! cover L = artin_schreier m=5 a=1
//! cover M = kummer n=4
//! cover T = compositum L M
//! sheaf F on L = regular
//! task nearby cover=M sheaf=F
//! ```
//!
//! Syntax errors and semantic errors (unknown names, `p | n`, ...) are
//! reported separately, both with a line and column.

use std::collections::{BTreeMap, BTreeSet};

use ramislope_core::corpus::{smallest_order, tower_tame_degrees};
use ramislope_core::extensions::{CoverSpec, FieldConst};
use ramislope_core::field::{is_prime, MAX_ORDER};
use ramislope_core::nearby::SheafSpec;
use thiserror::Error;

use crate::job::{CoverDecl, Job, SheafDecl, Task, TraitDecl};

/// Longest accepted break range in a sweep task.
pub const MAX_SWEEP_LEN: u64 = 10_000;
/// Bound on degrees and breaks given in a job.
pub const MAX_PARAMETER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("validation error at {line}:{col}: {msg}")]
    Validation { line: usize, col: usize, msg: String },
}

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    number: usize,
    toks: Vec<Tok<'a>>,
    end: usize,
}

impl<'a> Line<'a> {
    fn parse_err(&self, col: usize, msg: impl Into<String>) -> DslError {
        DslError::Parse {
            line: self.number,
            col,
            msg: msg.into(),
        }
    }

    fn invalid(&self, col: usize, msg: impl Into<String>) -> DslError {
        DslError::Validation {
            line: self.number,
            col,
            msg: msg.into(),
        }
    }

    fn tok(&self, i: usize, what: &str) -> Result<Tok<'a>, DslError> {
        self.toks
            .get(i)
            .copied()
            .ok_or_else(|| self.parse_err(self.end, format!("expected {what}")))
    }
}

fn tokenize(number: usize, text: &str) -> Line<'_> {
    let text = match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    };
    let mut toks = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut col = 0;
    for (byte, ch) in text.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                toks.push(Tok {
                    text: &text[b..byte],
                    col: c,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        toks.push(Tok { text: &text[b..], col: c });
    }
    Line {
        number,
        toks,
        end: col + 1,
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `key=value` pairs, each key at most once and from `allowed`.
struct Pairs<'a> {
    map: BTreeMap<&'a str, (Tok<'a>, &'a str)>,
}

fn pairs<'a>(line: &Line<'a>, toks: &[Tok<'a>], allowed: &[&str]) -> Result<Pairs<'a>, DslError> {
    let mut map = BTreeMap::new();
    for &t in toks {
        let Some((k, v)) = t.text.split_once('=') else {
            return Err(line.parse_err(t.col, format!("expected key=value, found `{}`", t.text)));
        };
        if !allowed.contains(&k) {
            return Err(line.parse_err(
                t.col,
                format!("unknown key `{k}`, expected one of {}", allowed.join(", ")),
            ));
        }
        if v.is_empty() {
            return Err(line.parse_err(t.col + k.len() + 1, format!("missing value for `{k}`")));
        }
        if map.insert(k, (t, v)).is_some() {
            return Err(line.parse_err(t.col, format!("duplicate key `{k}`")));
        }
    }
    Ok(Pairs { map })
}

impl<'a> Pairs<'a> {
    fn get(&self, k: &str) -> Option<(Tok<'a>, &'a str)> {
        self.map.get(k).copied()
    }

    fn require(&self, line: &Line<'a>, k: &str) -> Result<(Tok<'a>, &'a str), DslError> {
        self.get(k)
            .ok_or_else(|| line.parse_err(line.end, format!("missing required key `{k}`")))
    }

    fn value_col(&self, k: &str) -> usize {
        self.map.get(k).map(|(t, _)| t.col + k.len() + 1).unwrap_or(1)
    }
}

fn parse_u64(line: &Line, col: usize, s: &str) -> Result<u64, DslError> {
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.parse_err(col, format!("expected a nonnegative integer, found `{s}`")));
    }
    s.parse()
        .map_err(|_| line.parse_err(col, format!("integer `{s}` is out of range")))
}

fn parse_i64(line: &Line, col: usize, s: &str) -> Result<i64, DslError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.parse_err(col, format!("expected an integer, found `{s}`")));
    }
    s.parse()
        .map_err(|_| line.parse_err(col, format!("integer `{s}` is out of range")))
}

fn key_u64(line: &Line, kv: &Pairs, k: &str) -> Result<u64, DslError> {
    let (_, v) = kv.require(line, k)?;
    parse_u64(line, kv.value_col(k), v)
}

fn bounded(line: &Line, col: usize, what: &str, v: u64, lo: u64) -> Result<u64, DslError> {
    if v < lo || v > MAX_PARAMETER {
        return Err(line.invalid(col, format!("{what} = {v} must lie in {lo}..={MAX_PARAMETER}")));
    }
    Ok(v)
}

struct Parser {
    base: Option<TraitDecl>,
    base_line: usize,
    covers: Vec<CoverDecl>,
    sheaves: Vec<SheafDecl>,
    tasks: Vec<Task>,
    /// Tame degrees each task needs, with the line requiring them.
    needs: Vec<(usize, Vec<u64>)>,
}

impl Parser {
    fn p(&self) -> u32 {
        self.base.as_ref().map(|b| b.p).unwrap_or(0)
    }

    fn cover_ref(&self, line: &Line, tok: Tok, name: &str) -> Result<CoverSpec, DslError> {
        let col = tok.col + tok.text.len() - name.len();
        self.covers
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.spec.clone())
            .ok_or_else(|| line.invalid(col, format!("undeclared cover `{name}`")))
    }

    fn sheaf_ref(&self, line: &Line, tok: Tok, name: &str) -> Result<SheafDecl, DslError> {
        let col = tok.col + tok.text.len() - name.len();
        self.sheaves
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| line.invalid(col, format!("undeclared sheaf `{name}`")))
    }

    fn line(&mut self, line: &Line) -> Result<(), DslError> {
        let head = line.toks[0];
        if head.text != "trait" && self.base.is_none() {
            return Err(line.invalid(head.col, "the job must start with a trait declaration"));
        }
        match head.text {
            "trait" => self.trait_decl(line),
            "cover" => self.cover_decl(line),
            "sheaf" => self.sheaf_decl(line),
            "task" => self.task_decl(line),
            other => Err(line.parse_err(
                head.col,
                format!("unknown statement `{other}`, expected trait, cover, sheaf or task"),
            )),
        }
    }

    fn trait_decl(&mut self, line: &Line) -> Result<(), DslError> {
        if self.base.is_some() {
            return Err(line.invalid(line.toks[0].col, "duplicate trait declaration"));
        }
        let kv = pairs(line, &line.toks[1..], &["p", "q", "precision", "max_precision"])?;
        let p = key_u64(line, &kv, "p")?;
        if p > MAX_ORDER || !is_prime(p) {
            return Err(line.invalid(kv.value_col("p"), format!("p = {p} is not a supported prime")));
        }
        let q = match kv.get("q") {
            None => None,
            Some((_, v)) => {
                let col = kv.value_col("q");
                let q = parse_u64(line, col, v)?;
                let mut x = q;
                while x > 1 && x % p == 0 {
                    x /= p;
                }
                if x != 1 || q > MAX_ORDER {
                    return Err(line.invalid(col, format!("q = {q} is not a power of {p} up to {MAX_ORDER}")));
                }
                Some(q)
            }
        };
        let prec = |k: &str| -> Result<Option<i64>, DslError> {
            match kv.get(k) {
                None => Ok(None),
                Some((_, v)) => {
                    let col = kv.value_col(k);
                    let n = parse_u64(line, col, v)?;
                    if !(8..=1 << 20).contains(&n) {
                        return Err(line.invalid(col, format!("{k} = {n} must lie in 8..={}", 1 << 20)));
                    }
                    Ok(Some(n as i64))
                }
            }
        };
        let precision = prec("precision")?;
        let max_precision = prec("max_precision")?;
        if let (Some(a), Some(b)) = (precision, max_precision) {
            if a > b {
                return Err(line.invalid(
                    kv.value_col("max_precision"),
                    format!("max_precision = {b} is below precision = {a}"),
                ));
            }
        }
        self.base = Some(TraitDecl {
            p: p as u32,
            q,
            precision,
            max_precision,
        });
        self.base_line = line.number;
        Ok(())
    }

    fn declared_name(&self, line: &Line, tok: Tok) -> Result<String, DslError> {
        if !is_ident(tok.text) {
            return Err(line.parse_err(tok.col, format!("`{}` is not a valid name", tok.text)));
        }
        let taken = self.covers.iter().any(|c| c.name == tok.text)
            || self.sheaves.iter().any(|s| s.name == tok.text);
        if taken {
            return Err(line.invalid(tok.col, format!("name `{}` is already declared", tok.text)));
        }
        Ok(tok.text.to_string())
    }

    fn expect_eq(line: &Line, i: usize) -> Result<(), DslError> {
        let t = line.tok(i, "`=`")?;
        if t.text != "=" {
            return Err(line.parse_err(t.col, format!("expected `=`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn cover_decl(&mut self, line: &Line) -> Result<(), DslError> {
        let name = self.declared_name(line, line.tok(1, "a cover name")?)?;
        Self::expect_eq(line, 2)?;
        let kind = line.tok(3, "a cover kind")?;
        let rest = &line.toks[4..];
        let p = self.p() as u64;
        let spec = match kind.text {
            "trivial" => {
                pairs(line, rest, &[])?;
                CoverSpec::Trivial
            }
            "kummer" => {
                let kv = pairs(line, rest, &["n"])?;
                let col = kv.value_col("n");
                let n = bounded(line, col, "n", key_u64(line, &kv, "n")?, 1)?;
                if n % p == 0 {
                    return Err(line.invalid(col, format!("Kummer degree {n} is divisible by p = {p}")));
                }
                CoverSpec::Kummer { n }
            }
            "artin_schreier" => {
                let kv = pairs(line, rest, &["m", "a"])?;
                let col = kv.value_col("m");
                let m = bounded(line, col, "m", key_u64(line, &kv, "m")?, 1)?;
                if m % p == 0 {
                    return Err(line.invalid(col, format!("break {m} is divisible by p = {p}")));
                }
                let (_, a) = kv.require(line, "a")?;
                let a = self.field_const(line, kv.value_col("a"), a)?;
                CoverSpec::ArtinSchreier { m, a }
            }
            "compositum" => {
                let a = line.tok(4, "a cover name")?;
                let b = line.tok(5, "a second cover name")?;
                if let Some(extra) = line.toks.get(6) {
                    return Err(line.parse_err(extra.col, format!("unexpected `{}`", extra.text)));
                }
                let sa = self.cover_ref(line, a, a.text)?;
                let sb = self.cover_ref(line, b, b.text)?;
                CoverSpec::Compositum(Box::new(sa), Box::new(sb))
            }
            "base_change" => {
                let inner = line.tok(4, "a cover name")?;
                let spec = self.cover_ref(line, inner, inner.text)?;
                let kv = pairs(line, &line.toks[5..], &["n"])?;
                let col = kv.value_col("n");
                let n = key_u64(line, &kv, "n")?;
                let fits = p.checked_pow(n.min(64) as u32).is_some_and(|d| d <= 1 << 40);
                if !fits {
                    return Err(line.invalid(col, format!("base change degree {p}^{n} is too large")));
                }
                CoverSpec::BaseChange {
                    inner: Box::new(spec),
                    n: n as u32,
                }
            }
            other => {
                return Err(line.parse_err(
                    kind.col,
                    format!(
                        "unknown cover kind `{other}`, expected trivial, kummer, artin_schreier, compositum or base_change"
                    ),
                ))
            }
        };
        self.needs.push((line.number, spec.tame_degrees()));
        self.covers.push(CoverDecl { name, spec });
        Ok(())
    }

    fn field_const(&self, line: &Line, col: usize, s: &str) -> Result<FieldConst, DslError> {
        let p = self.p() as i64;
        if let Some(k) = s.strip_prefix("g^") {
            return Ok(FieldConst::GenPower(parse_i64(line, col + 2, k)?));
        }
        let a = parse_i64(line, col, s)?;
        if a.rem_euclid(p) == 0 {
            return Err(line.invalid(col, format!("coefficient {a} vanishes in characteristic {p}")));
        }
        Ok(FieldConst::Int(a))
    }

    fn sheaf_decl(&mut self, line: &Line) -> Result<(), DslError> {
        let name = self.declared_name(line, line.tok(1, "a sheaf name")?)?;
        let on = line.tok(2, "`on`")?;
        if on.text != "on" {
            return Err(line.parse_err(on.col, format!("expected `on`, found `{}`", on.text)));
        }
        let cover_tok = line.tok(3, "a cover name")?;
        self.cover_ref(line, cover_tok, cover_tok.text)?;
        Self::expect_eq(line, 4)?;
        let mut terms = Vec::new();
        let mut i = 5;
        loop {
            let head = line.tok(i, "a sheaf term")?;
            let mut j = i + 1;
            while j < line.toks.len() && line.toks[j].text != "+" {
                j += 1;
            }
            let args = &line.toks[i + 1..j];
            terms.push(self.sheaf_term(line, head, args)?);
            if j == line.toks.len() {
                break;
            }
            i = j + 1;
        }
        let spec = if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            SheafSpec::Sum(terms)
        };
        self.sheaves.push(SheafDecl {
            name,
            cover: cover_tok.text.to_string(),
            spec,
        });
        Ok(())
    }

    fn sheaf_term(&self, line: &Line, head: Tok, args: &[Tok]) -> Result<SheafSpec, DslError> {
        match head.text {
            "trivial" => {
                let kv = pairs(line, args, &["rank"])?;
                let rank = match kv.get("rank") {
                    None => 1,
                    Some((_, v)) => {
                        let col = kv.value_col("rank");
                        let r = parse_u64(line, col, v)?;
                        if !(1..=1024).contains(&r) {
                            return Err(line.invalid(col, format!("rank = {r} must lie in 1..=1024")));
                        }
                        r
                    }
                };
                Ok(SheafSpec::Trivial { rank })
            }
            "regular" => {
                pairs(line, args, &[])?;
                Ok(SheafSpec::Regular)
            }
            "character" => {
                let kv = pairs(line, args, &["tame", "wild"])?;
                let tame = match kv.get("tame") {
                    None => 0,
                    Some((_, v)) => parse_i64(line, kv.value_col("tame"), v)?,
                };
                let wild = match kv.get("wild") {
                    None => Vec::new(),
                    Some((_, v)) => {
                        let mut col = kv.value_col("wild");
                        let mut out = Vec::new();
                        for part in v.split(',') {
                            out.push(parse_i64(line, col, part)?);
                            col += part.chars().count() + 1;
                        }
                        out
                    }
                };
                Ok(SheafSpec::Character { tame, wild })
            }
            other => Err(line.parse_err(
                head.col,
                format!("unknown sheaf term `{other}`, expected trivial, regular or character"),
            )),
        }
    }

    fn task_decl(&mut self, line: &Line) -> Result<(), DslError> {
        let kind = line.tok(1, "a task kind")?;
        let rest = &line.toks[2..];
        let task = match kind.text {
            "filtration" => {
                let kv = pairs(line, rest, &["cover"])?;
                let (t, c) = kv.require(line, "cover")?;
                self.cover_ref(line, t, c)?;
                Task::Filtration { cover: c.into() }
            }
            "slopes" => {
                let kv = pairs(line, rest, &["sheaf"])?;
                let (t, s) = kv.require(line, "sheaf")?;
                self.sheaf_ref(line, t, s)?;
                Task::Slopes { sheaf: s.into() }
            }
            "nearby" | "certificate" => {
                let cover_key = if kind.text == "nearby" { "cover" } else { "base_cover" };
                let kv = pairs(line, rest, &[cover_key, "sheaf"])?;
                let (ct, c) = kv.require(line, cover_key)?;
                let (st, s) = kv.require(line, "sheaf")?;
                let f = self.cover_ref(line, ct, c)?;
                let decl = self.sheaf_ref(line, st, s)?;
                let mono = self.cover_ref(line, st, &decl.cover)?;
                self.needs.push((line.number, tower_tame_degrees(&f, &mono)));
                if kind.text == "nearby" {
                    Task::Nearby {
                        cover: c.into(),
                        sheaf: s.into(),
                    }
                } else {
                    Task::Certificate {
                        base_cover: c.into(),
                        sheaf: s.into(),
                    }
                }
            }
            "sweep" => self.sweep(line, rest)?,
            "tameness" => {
                let kv = pairs(line, rest, &["sheaf", "covers"])?;
                let (st, s) = kv.require(line, "sheaf")?;
                let decl = self.sheaf_ref(line, st, s)?;
                let mono = self.cover_ref(line, st, &decl.cover)?;
                let (ct, list) = kv.require(line, "covers")?;
                let mut covers = Vec::new();
                let mut col = kv.value_col("covers");
                let mut seen = BTreeSet::new();
                for name in list.split(',') {
                    if !is_ident(name) {
                        return Err(line.parse_err(col, format!("`{name}` is not a valid name")));
                    }
                    let f = self
                        .covers
                        .iter()
                        .find(|c| c.name == name)
                        .map(|c| c.spec.clone())
                        .ok_or_else(|| line.invalid(col, format!("undeclared cover `{name}`")))?;
                    if !seen.insert(name) {
                        return Err(line.invalid(col, format!("cover `{name}` listed twice")));
                    }
                    self.needs.push((line.number, tower_tame_degrees(&f, &mono)));
                    covers.push(name.to_string());
                    col += name.chars().count() + 1;
                }
                let _ = ct;
                Task::Tameness { sheaf: s.into(), covers }
            }
            other => {
                return Err(line.parse_err(
                    kind.col,
                    format!(
                        "unknown task `{other}`, expected filtration, slopes, nearby, certificate, sweep or tameness"
                    ),
                ))
            }
        };
        self.tasks.push(task);
        Ok(())
    }

    fn sweep(&mut self, line: &Line, rest: &[Tok]) -> Result<Task, DslError> {
        let kv = pairs(line, rest, &["p", "m", "sheaf"])?;
        let pcol = kv.value_col("p");
        let p = key_u64(line, &kv, "p")?;
        if p != self.p() as u64 {
            return Err(line.invalid(
                pcol,
                format!("sweep over p = {p} in a job with trait p = {}", self.p()),
            ));
        }
        let (_, range) = kv.require(line, "m")?;
        let mcol = kv.value_col("m");
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (
                parse_u64(line, mcol, a)?,
                parse_u64(line, mcol + a.len() + 2, b)?,
            ),
            None => {
                let m = parse_u64(line, mcol, range)?;
                (m, m)
            }
        };
        if lo == 0 || lo > hi {
            return Err(line.invalid(mcol, format!("empty or invalid break range {lo}..{hi}")));
        }
        if hi > MAX_PARAMETER || hi - lo >= MAX_SWEEP_LEN {
            return Err(line.invalid(
                mcol,
                format!("break range {lo}..{hi} exceeds {MAX_SWEEP_LEN} values or {MAX_PARAMETER}"),
            ));
        }
        let (ms, skipped) = (lo..=hi).partition(|m| m % p != 0);
        let sheaf = match kv.get("sheaf") {
            None => None,
            Some((t, s)) => {
                let decl = self.sheaf_ref(line, t, s)?;
                let mono = self.cover_ref(line, t, &decl.cover)?;
                self.needs.push((line.number, mono.tame_degrees()));
                Some(s.to_string())
            }
        };
        Ok(Task::Sweep {
            p: p as u32,
            ms,
            skipped,
            sheaf,
        })
    }

    fn finish(self) -> Result<Job, DslError> {
        let base = self.base.ok_or(DslError::Validation {
            line: 1,
            col: 1,
            msg: "missing trait declaration".into(),
        })?;
        let q = match base.q {
            Some(q) => {
                for (line, degrees) in &self.needs {
                    if let Some(n) = degrees.iter().find(|&&n| (q - 1) % n != 0) {
                        return Err(DslError::Validation {
                            line: *line,
                            col: 1,
                            msg: format!("F_{q} has no primitive {n}-th root of unity"),
                        });
                    }
                }
                q
            }
            None => {
                let all: Vec<u64> = self.needs.iter().flat_map(|(_, d)| d.iter().copied()).collect();
                smallest_order(base.p, &all).map_err(|e| DslError::Validation {
                    line: self.base_line,
                    col: 1,
                    msg: e.to_string(),
                })?
            }
        };
        Ok(Job {
            base,
            q,
            covers: self.covers,
            sheaves: self.sheaves,
            tasks: self.tasks,
        })
    }
}

/// Parses and validates a job.
pub fn parse_job(input: &[u8]) -> Result<Job, DslError> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let prefix = &input[..e.valid_up_to()];
        let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
        let start = prefix.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let col = String::from_utf8_lossy(&prefix[start..]).chars().count() + 1;
        DslError::Parse {
            line,
            col,
            msg: "input is not valid UTF-8".into(),
        }
    })?;
    let mut parser = Parser {
        base: None,
        base_line: 1,
        covers: Vec::new(),
        sheaves: Vec::new(),
        tasks: Vec::new(),
        needs: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = tokenize(i + 1, raw);
        if !line.toks.is_empty() {
            parser.line(&line)?;
        }
    }
    parser.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Job, DslError> {
        parse_job(s.as_bytes())
    }

    #[test]
    fn minimal_job() {
        let job = parse("trait p=3\ncover K = kummer n=4\ntask filtration cover=K\n").unwrap();
        assert_eq!(job.tasks.len(), 1);
        assert_eq!(job.q, 9);
        assert_eq!(job.cover("K"), Some(&CoverSpec::Kummer { n: 4 }));
    }

    #[test]
    fn undeclared_cover_is_named() {
        let err = parse("trait p=3\ntask filtration cover=Nope\n").unwrap_err();
        match err {
            DslError::Validation { line, col, msg } => {
                assert_eq!((line, col), (2, 23));
                assert!(msg.contains("Nope"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_range_excludes_multiples_of_p() {
        let job = parse("trait p=3\ntask sweep p=3 m=1..50\n").unwrap();
        match &job.tasks[0] {
            Task::Sweep { ms, skipped, .. } => {
                assert_eq!(ms.len(), 34);
                assert_eq!(skipped.len(), 16);
                assert!(ms.iter().all(|m| m % 3 != 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn full_grammar() {
        let job = parse(
            "# comment\n\
             trait p=3 precision=32 max_precision=512\n\
             cover L = artin_schreier m=5 a=g^1\n\
             cover M = kummer n=4   # tame\n\
             cover T = compositum L M\n\
             cover B = base_change L n=2\n\
             sheaf F on L = regular\n\
             sheaf G on M = trivial rank=2 + character tame=1\n\
             sheaf H on L = character wild=2\n\
             task nearby cover=M sheaf=F\n\
             task certificate base_cover=M sheaf=F\n\
             task slopes sheaf=H\n\
             task tameness sheaf=G covers=M,L\n",
        )
        .unwrap();
        assert_eq!(job.covers.len(), 4);
        assert_eq!(job.tasks.len(), 4);
        // The tameness probe of G along M builds a degree 16 Kummer tower.
        assert_eq!(job.q, 81);
        assert_eq!(
            job.sheaf("G").unwrap().spec,
            SheafSpec::Sum(vec![
                SheafSpec::Trivial { rank: 2 },
                SheafSpec::Character { tame: 1, wild: vec![] }
            ])
        );
    }

    #[test]
    fn error_categories() {
        let cases: &[(&str, bool)] = &[
            ("cover K = kummer n=2", false),
            ("trait p=4", false),
            ("trait p=3 q=10", false),
            ("trait p=3\ncover K = kummer n=3", false),
            ("trait p=3\ncover K = kummer n=2\ncover K = trivial", false),
            ("trait p=3\ntrait p=3", false),
            ("trait p=3 q=3\ncover K = kummer n=4", false),
            ("trait p=3\ntask sweep p=5 m=1..4", false),
            ("trait p=3\ncover A = artin_schreier m=2 a=3", false),
            ("trait p=3\nfrobnicate", true),
            ("trait p=3 z=1", true),
            ("trait p=x", true),
            ("trait p=3\ncover K kummer n=2", true),
            ("trait p=3\ncover K = kummer", true),
            ("trait p=3\ncover 9K = trivial", true),
            ("trait p=3\ncover K = kummer n=2 n=2", true),
            ("trait p=3\ntask", true),
        ];
        for (src, is_parse) in cases {
            let err = parse(src).unwrap_err();
            assert_eq!(matches!(err, DslError::Parse { .. }), *is_parse, "{src}: {err}");
        }
    }

    #[test]
    fn invalid_utf8_position() {
        let err = parse_job(b"trait p=3\ncover \xff").unwrap_err();
        assert_eq!(
            err,
            DslError::Parse {
                line: 2,
                col: 7,
                msg: "input is not valid UTF-8".into()
            }
        );
    }
}
