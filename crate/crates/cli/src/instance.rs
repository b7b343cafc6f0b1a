//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! n 5
//! k 0
//! len 3
//! h 0
//! variant focusw
//! yc 2 2
//! zc 0 3
//! x 1 1
//! x 0 1
//! x 1 1
//! x 0 0
//! x 0 1
//! among 0 4 1 3
//! ```
//!
//! `h` may be omitted (read as 0). `zc` is required for the weighted
//! variants and rejected otherwise. There must be exactly `n` `x` lines;
//! `among s e lo hi` lines are optional.

use std::fmt;
use std::str::FromStr;

use focus_core::solver::{AmongSpec, RentalsInstance};
use focus_core::{FocusInstance, FocusParams, IntInterval, ModelError, Variant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: FocusInstance,
    pub amongs: Vec<AmongSpec>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` given twice")]
    Duplicate { line: usize, key: &'static str },
    #[error("line {line}: `{key}` takes {expected} integer(s)")]
    Arity {
        line: usize,
        key: &'static str,
        expected: usize,
    },
    #[error("line {line}: `{text}` is not an integer")]
    NotAnInteger { line: usize, text: String },
    #[error("line {line}: {source}")]
    Variant { line: usize, source: ModelError },
    #[error("line {line}: window {text} is out of range")]
    Window { line: usize, text: String },
    #[error("line {line}: empty interval [{lo},{hi}]")]
    EmptyInterval { line: usize, lo: i64, hi: i64 },
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error("{found} `x` lines for n = {n}")]
    XCount { found: usize, n: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn ints(line: usize, key: &'static str, args: &[&str], expected: usize) -> Result<Vec<i64>, ParseError> {
    if args.len() != expected {
        return Err(ParseError::Arity { line, key, expected });
    }
    args.iter()
        .map(|a| {
            a.parse().map_err(|_| ParseError::NotAnInteger {
                line,
                text: a.to_string(),
            })
        })
        .collect()
}

fn interval(line: usize, v: &[i64]) -> Result<IntInterval, ParseError> {
    let d = IntInterval::new(v[0], v[1]);
    if d.is_empty() {
        return Err(ParseError::EmptyInterval { line, lo: v[0], hi: v[1] });
    }
    Ok(d)
}

fn set<T>(slot: &mut Option<T>, v: T, line: usize, key: &'static str) -> Result<(), ParseError> {
    if slot.replace(v).is_some() {
        return Err(ParseError::Duplicate { line, key });
    }
    Ok(())
}

fn count(line: usize, key: &'static str, v: i64) -> Result<usize, ParseError> {
    usize::try_from(v).map_err(|_| ParseError::NotAnInteger {
        line,
        text: format!("{key} {v}"),
    })
}

impl FromStr for InstanceFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut n = None;
        let mut k = None;
        let mut len = None;
        let mut h = None;
        let mut variant = None;
        let mut yc = None;
        let mut zc = None;
        let mut xs = Vec::new();
        let mut windows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            let mut words = body.split_whitespace();
            let Some(key) = words.next() else { continue };
            let args: Vec<&str> = words.collect();
            match key {
                "n" => set(&mut n, count(line, "n", ints(line, "n", &args, 1)?[0])?, line, "n")?,
                "k" => set(&mut k, ints(line, "k", &args, 1)?[0], line, "k")?,
                "len" => set(&mut len, count(line, "len", ints(line, "len", &args, 1)?[0])?, line, "len")?,
                "h" => set(&mut h, count(line, "h", ints(line, "h", &args, 1)?[0])?, line, "h")?,
                "variant" => {
                    if args.len() != 1 {
                        return Err(ParseError::Arity {
                            line,
                            key: "variant",
                            expected: 1,
                        });
                    }
                    let v: Variant = args[0]
                        .parse()
                        .map_err(|source| ParseError::Variant { line, source })?;
                    set(&mut variant, v, line, "variant")?
                }
                "yc" => set(&mut yc, interval(line, &ints(line, "yc", &args, 2)?)?, line, "yc")?,
                "zc" => set(&mut zc, interval(line, &ints(line, "zc", &args, 2)?)?, line, "zc")?,
                "x" => xs.push(interval(line, &ints(line, "x", &args, 2)?)?),
                "among" => {
                    let v = ints(line, "among", &args, 4)?;
                    windows.push((line, v));
                }
                _ => {
                    return Err(ParseError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        let n = n.ok_or(ParseError::Missing("n"))?;
        let k = k.ok_or(ParseError::Missing("k"))?;
        let len = len.ok_or(ParseError::Missing("len"))?;
        let variant = variant.ok_or(ParseError::Missing("variant"))?;
        let yc = yc.ok_or(ParseError::Missing("yc"))?;
        if xs.len() != n {
            return Err(ParseError::XCount { found: xs.len(), n });
        }
        let params = FocusParams::new(variant, k, len, h.unwrap_or(0));
        let instance = FocusInstance::new(xs, yc, zc, params)?;
        let amongs = windows
            .into_iter()
            .map(|(line, v)| {
                let bad = || ParseError::Window {
                    line,
                    text: format!("{} {} {} {}", v[0], v[1], v[2], v[3]),
                };
                if v.iter().any(|&a| a < 0) {
                    return Err(bad());
                }
                let [s, e, lo, hi] = [v[0], v[1], v[2], v[3]].map(|a| a as usize);
                if s > e || e >= n || lo > hi || hi > e - s + 1 {
                    return Err(bad());
                }
                Ok(AmongSpec::new(s, e, lo, hi))
            })
            .collect::<Result<_, _>>()?;
        Ok(InstanceFile { instance, amongs })
    }
}

/// Canonical form: keys in the order of the module example, `h` always
/// written.
impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inst = &self.instance;
        let p = inst.params();
        writeln!(f, "n {}", inst.n())?;
        writeln!(f, "k {}", p.k)?;
        writeln!(f, "len {}", p.len)?;
        writeln!(f, "h {}", p.h)?;
        writeln!(f, "variant {}", p.variant)?;
        writeln!(f, "yc {} {}", inst.yc().lo(), inst.yc().hi())?;
        if let Some(z) = inst.zc() {
            writeln!(f, "zc {} {}", z.lo(), z.hi())?;
        }
        for x in inst.xs() {
            writeln!(f, "x {} {}", x.lo(), x.hi())?;
        }
        for a in &self.amongs {
            writeln!(f, "among {} {} {} {}", a.start, a.end, a.lo, a.hi)?;
        }
        Ok(())
    }
}

impl InstanceFile {
    /// The rentals problem over the same days, windows, `len` and `k`, with
    /// tolerance `h`. The count domains of the file are not used.
    pub fn rentals(&self, h: usize) -> RentalsInstance {
        let p = self.instance.params();
        RentalsInstance {
            days: self.instance.xs().to_vec(),
            k: p.k,
            len: p.len,
            h,
            amongs: self.amongs.clone(),
        }
    }
}
