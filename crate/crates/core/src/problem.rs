//! Problem files and the bundled fixtures.
//!
//! The format is line oriented:
//!
//! ```text
//! # comment
//! dim 2
//! gen 5 0
//! gen 0 3
//! weight q 2 1
//! option pmax 6
//! ```
//!
//! `gen` lines are taken in order; that order indexes the current entries.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExpVec;
use crate::ideal::MonomialIdeal;
use crate::residue::{MonomialSeq, Weight};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ProblemOptions {
    pub tol: Option<f64>,
    pub p_max: Option<u64>,
    pub numeric: bool,
    pub experimental: bool,
    pub parallel: bool,
    pub force: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    /// where the problem came from: a path or a fixture name
    pub source: String,
    /// set when the problem is one of the bundled fixtures
    pub fixture: Option<String>,
    pub seq: MonomialSeq,
    /// named weights in file order
    pub weights: Vec<(String, Weight)>,
    pub options: ProblemOptions,
}

pub const FIXTURES: [&str; 3] = ["ex41", "ex42", "ex54"];

const EX41: &str = "\
# four monomials in two variables with four named weights
dim 2
gen 5 0
gen 4 1
gen 2 2
gen 0 3
weight p 1 1 1 1
weight q 2 2 1 3
weight r 3 3 4 5
weight s 2 1 1 2
option pmax 6
";

const EX42: &str = "\
# z and z^2 in one variable
dim 1
gen 1
gen 2
weight p1 1 1
weight p2 2 1
weight p3 3 1
";

const EX54: &str = "\
# z1^2, z1*z2, z2^2
dim 2
gen 2 0
gen 1 1
gen 0 2
weight p 1 1 1
weight q 1 2 1
weight r 2 1 1
option pmax 3
";

pub fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "ex41" => Some(EX41),
        "ex42" => Some(EX42),
        "ex54" => Some(EX54),
        _ => None,
    }
}

pub fn fixture(name: &str) -> Option<ProblemFile> {
    let text = fixture_text(name)?;
    let mut pf = parse_str(text, name).expect("bundled fixtures parse");
    pf.fixture = Some(name.to_string());
    Some(pf)
}

/// The generator list printed in the literature for the left end of the
/// inclusion chain, where one is known for a fixture and weight.
pub fn published_left_ideal(fixture: &str, weight: &str) -> Option<MonomialIdeal> {
    let gens: &[[u64; 2]] = match (fixture, weight) {
        ("ex41", "q") => &[[15, 0], [11, 1], [7, 2], [3, 3], [2, 5], [1, 9], [0, 12]],
        _ => return None,
    };
    MonomialIdeal::from_gens(gens.iter().map(|&g| ExpVec::from(g)).collect()).ok()
}

/// A fixture name or a path to a problem file.
pub fn load(spec: &str) -> Result<ProblemFile> {
    if let Some(pf) = fixture(spec) {
        return Ok(pf);
    }
    parse(Path::new(spec))
}

pub fn parse(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text, &path.display().to_string())
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

pub fn parse_str(text: &str, source: &str) -> Result<ProblemFile> {
    let err = |line: usize, column: usize, message: String| Error::Parse {
        path: source.to_string(),
        line,
        column,
        message,
    };
    let uint = |t: &Token, line: usize, what: &str| -> Result<u64> {
        t.text.parse::<u64>().map_err(|_| {
            err(
                line,
                t.column,
                format!("expected a nonnegative integer for {what}, found '{}'", t.text),
            )
        })
    };

    let mut dim: Option<(usize, usize)> = None;
    let mut gens: Vec<(ExpVec, usize)> = Vec::new();
    let mut weights: Vec<(String, Vec<u64>, usize, usize)> = Vec::new();
    let mut options = ProblemOptions::default();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { continue };
        let args = &toks[1..];
        match head.text {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line_no, head.column, "duplicate 'dim' line".into()));
                }
                let [t] = args else {
                    return Err(err(line_no, head.column, "'dim' takes exactly one value".into()));
                };
                let n = uint(t, line_no, "dim")? as usize;
                if n == 0 {
                    return Err(err(line_no, t.column, "dimension must be >= 1".into()));
                }
                dim = Some((n, line_no));
            }
            "gen" => {
                let Some((n, _)) = dim else {
                    return Err(err(line_no, head.column, "'gen' before 'dim'".into()));
                };
                if args.len() != n {
                    let col = args.get(n).map_or(head.column, |t| t.column);
                    return Err(err(
                        line_no,
                        col,
                        format!("generator has {} exponents, expected {n}", args.len()),
                    ));
                }
                let coords = args
                    .iter()
                    .map(|t| uint(t, line_no, "an exponent"))
                    .collect::<Result<Vec<_>>>()?;
                gens.push((ExpVec::new(coords)?, line_no));
            }
            "weight" => {
                let Some((name, values)) = args.split_first() else {
                    return Err(err(line_no, head.column, "'weight' needs a name".into()));
                };
                if name.text.parse::<u64>().is_ok() {
                    return Err(err(line_no, name.column, "weight name must not be a number".into()));
                }
                if weights.iter().any(|w| w.0 == name.text) {
                    return Err(err(line_no, name.column, format!("duplicate weight '{}'", name.text)));
                }
                let mut p = Vec::with_capacity(values.len());
                for t in values {
                    let v = uint(t, line_no, "a weight entry")?;
                    if v == 0 {
                        return Err(err(line_no, t.column, "weight entries must be >= 1".into()));
                    }
                    p.push(v);
                }
                weights.push((name.text.to_string(), p, line_no, name.column));
            }
            "option" => {
                let [key, value] = args else {
                    return Err(err(line_no, head.column, "'option' takes a key and a value".into()));
                };
                let flag = |t: &Token| match t.text {
                    "true" | "on" | "1" => Ok(true),
                    "false" | "off" | "0" => Ok(false),
                    _ => Err(err(
                        line_no,
                        t.column,
                        format!("expected true or false, found '{}'", t.text),
                    )),
                };
                match key.text {
                    "tol" => {
                        let v: f64 = value
                            .text
                            .parse()
                            .map_err(|_| err(line_no, value.column, format!("bad tolerance '{}'", value.text)))?;
                        if !(v > 0.0 && v.is_finite()) {
                            return Err(err(line_no, value.column, "tolerance must be positive".into()));
                        }
                        options.tol = Some(v);
                    }
                    "pmax" => options.p_max = Some(uint(value, line_no, "pmax")?.max(1)),
                    "numeric" => options.numeric = flag(value)?,
                    "experimental" => options.experimental = flag(value)?,
                    "parallel" => options.parallel = flag(value)?,
                    "force" => options.force = flag(value)?,
                    other => return Err(err(line_no, key.column, format!("unknown option '{other}'"))),
                }
            }
            other => {
                return Err(err(line_no, head.column, format!("unknown directive '{other}'")));
            }
        }
    }

    let Some((n, dim_line)) = dim else {
        return Err(err(1, 1, "missing 'dim' line".into()));
    };
    if gens.is_empty() {
        return Err(err(dim_line, 1, "no 'gen' lines".into()));
    }
    let m = gens.len();
    let seq = MonomialSeq::new(n, gens.into_iter().map(|g| g.0).collect())?;
    let weights = weights
        .into_iter()
        .map(|(name, p, _line, _col)| {
            if p.len() != m {
                return Err(Error::WeightLength {
                    name,
                    expected: m,
                    found: p.len(),
                });
            }
            Ok((name, Weight::new(p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemFile {
        source: source.to_string(),
        fixture: None,
        seq,
        weights,
        options,
    })
}

impl ProblemFile {
    /// The named weight, or all ones when no name is given.
    pub fn weight(&self, name: Option<&str>) -> Result<(String, Weight)> {
        match name {
            None => Ok(("ones".to_string(), Weight::ones(self.seq.len()))),
            Some(n) => self
                .weights
                .iter()
                .find(|(k, _)| k == n)
                .map(|(k, w)| (k.clone(), w.clone()))
                .ok_or_else(|| Error::UnknownWeight(n.to_string())),
        }
    }

    pub fn weight_map(&self) -> BTreeMap<&str, &Weight> {
        self.weights.iter().map(|(k, w)| (k.as_str(), w)).collect()
    }
}
