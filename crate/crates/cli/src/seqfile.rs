//! `edpseq v1` sequence files: a header line
//! `edpseq v1 N=<n> kind=<pm1|complex|character> [seed=<s>]` followed by one
//! value per line, `+1`/`-1` for `pm1` and `re,im` otherwise.

use std::fmt::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Pm1,
    Complex,
    Character,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pm1 => "pm1",
            Kind::Complex => "complex",
            Kind::Character => "character",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pm1" => Ok(Kind::Pm1),
            "complex" => Ok(Kind::Complex),
            "character" => Ok(Kind::Character),
            _ => Err(format!("unknown kind {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeqFile {
    pub kind: Kind,
    pub seed: Option<u64>,
    pub values: Vec<Complex64>,
}

fn tidy(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl SeqFile {
    pub fn from_signs(signs: &[i8], seed: Option<u64>) -> Self {
        SeqFile {
            kind: Kind::Pm1,
            seed,
            values: signs.iter().map(|&s| Complex64::new(s as f64, 0.0)).collect(),
        }
    }

    pub fn signs(&self) -> Option<Vec<i8>> {
        self.values
            .iter()
            .map(|z| match (z.re, z.im) {
                (r, i) if r == 1.0 && i == 0.0 => Some(1),
                (r, i) if r == -1.0 && i == 0.0 => Some(-1),
                _ => None,
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!("edpseq v1 N={} kind={}", self.values.len(), self.kind);
        if let Some(s) = self.seed {
            let _ = write!(out, " seed={s}");
        }
        out.push('\n');
        for z in &self.values {
            match self.kind {
                Kind::Pm1 => out.push_str(if z.re > 0.0 { "+1\n" } else { "-1\n" }),
                _ => {
                    let _ = writeln!(out, "{},{}", tidy(z.re), tidy(z.im));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty file")?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("edpseq") || tokens.next() != Some("v1") {
            return Err("header must start with \"edpseq v1\"".into());
        }
        let (mut n, mut kind, mut seed) = (None, None, None);
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| format!("malformed header field {tok:?}"))?;
            match key {
                "N" => n = Some(value.parse::<usize>().map_err(|e| format!("N: {e}"))?),
                "kind" => kind = Some(value.parse::<Kind>()?),
                "seed" => seed = Some(value.parse::<u64>().map_err(|e| format!("seed: {e}"))?),
                _ => return Err(format!("unknown header field {key:?}")),
            }
        }
        let n = n.ok_or("header lacks N")?;
        let kind = kind.ok_or("header lacks kind")?;
        let mut values = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let z = match kind {
                Kind::Pm1 => match line {
                    "+1" => Complex64::new(1.0, 0.0),
                    "-1" => Complex64::new(-1.0, 0.0),
                    _ => return Err(format!("line {}: {line:?} is not +1 or -1", i + 2)),
                },
                _ => {
                    let (re, im) = line
                        .split_once(',')
                        .ok_or_else(|| format!("line {}: expected re,im", i + 2))?;
                    let parse = |s: &str| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|e| format!("line {}: {e}", i + 2))
                    };
                    Complex64::new(parse(re)?, parse(im)?)
                }
            };
            values.push(z);
        }
        if values.len() != n {
            return Err(format!("header declares N={n} but the file holds {} values", values.len()));
        }
        Ok(SeqFile { kind, seed, values })
    }
}
