use std::collections::BTreeMap;
use std::path::Path;

use ircl_chains::{from_emp, to_emp, Emp, Layer, Tie};
use ircl_core::{BuildError, FinResLat};
use ircl_enumerate::library;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Table,
    Emp,
}

/// On-disk algebra. `mult` is keyed by labels; `layers` holds the EMP lines
/// (top to bottom) and replaces `mult` when `kind` is `emp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: FileKind,
    pub elements: Vec<String>,
    pub unit: String,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<String>>,
}

/// Errors in the file's own structure are input errors; a table that is
/// well formed but violates an axiom is a verification failure.
fn build_error(e: BuildError) -> CliError {
    match e {
        BuildError::Empty
        | BuildError::DuplicateLabel(_)
        | BuildError::UnknownLabel(_)
        | BuildError::OutOfRange(_)
        | BuildError::TableShape { .. }
        | BuildError::CyclicCovers(_) => CliError::input(e.to_string()),
        _ => CliError::verify(e.to_string()),
    }
}

impl AlgebraFile {
    pub fn from_algebra(name: &str, a: &FinResLat) -> AlgebraFile {
        let l = |x| a.label(x).to_string();
        let mult = a
            .elems()
            .map(|x| (l(x), a.elems().map(|y| (l(y), l(a.mult(x, y)))).collect()))
            .collect();
        AlgebraFile {
            name: name.to_string(),
            kind: FileKind::Table,
            elements: a.labels().to_vec(),
            unit: l(a.unit()),
            covers: a.covers().into_iter().map(|(x, y)| (l(x), l(y))).collect(),
            mult: Some(mult),
            layers: None,
        }
    }

    pub fn from_emp(name: &str, p: &Emp) -> Result<AlgebraFile, CliError> {
        let a = from_emp(p).map_err(|e| CliError::input(e.to_string()))?;
        let mut f = AlgebraFile::from_algebra(name, &a);
        f.kind = FileKind::Emp;
        f.mult = None;
        f.layers = Some(emp_lines(p)?);
        Ok(f)
    }

    pub fn to_algebra(&self) -> Result<FinResLat, CliError> {
        match self.kind {
            FileKind::Table => {
                let mult = self.mult.as_ref().ok_or_else(|| CliError::input("table file without `mult`"))?;
                let idx = |l: &str| {
                    self.elements.iter().position(|e| e == l).ok_or_else(|| CliError::input(format!("unknown label `{l}`")))
                };
                let n = self.elements.len();
                let mut table = vec![0; n * n];
                for (x, lx) in self.elements.iter().enumerate() {
                    let row = mult.get(lx).ok_or_else(|| CliError::input(format!("no mult row for `{lx}`")))?;
                    for (y, ly) in self.elements.iter().enumerate() {
                        let z = row.get(ly).ok_or_else(|| CliError::input(format!("no product `{lx}`*`{ly}`")))?;
                        table[x * n + y] = idx(z)?;
                    }
                    if row.len() != n {
                        return Err(CliError::input(format!("mult row `{lx}` has stray entries")));
                    }
                }
                if mult.len() != n {
                    return Err(CliError::input("mult has rows for unknown labels"));
                }
                let covers =
                    self.covers.iter().map(|(x, y)| Ok((idx(x)?, idx(y)?))).collect::<Result<Vec<_>, CliError>>()?;
                let a = FinResLat::from_covers(self.elements.clone(), &covers, table, idx(&self.unit)?)
                    .map_err(build_error)?;
                if a.covers() != sorted_covers(&a, &covers) {
                    return Err(CliError::input("covers are not the cover relation of the order they generate"));
                }
                Ok(a)
            }
            FileKind::Emp => {
                let lines = self.layers.as_ref().ok_or_else(|| CliError::input("emp file without `layers`"))?;
                let p = parse_emp(&lines.join("\n"))?;
                let a = from_emp(&p).map_err(|e| CliError::input(e.to_string()))?;
                let perm: Option<Vec<usize>> = a.labels().iter().map(|l| self.elements.iter().position(|e| e == l)).collect();
                match perm {
                    Some(perm) if self.elements.len() == a.len() => Ok(a.permute(&perm)),
                    _ => Err(CliError::input("`elements` disagrees with the labels in `layers`")),
                }
            }
        }
    }
}

fn sorted_covers(a: &FinResLat, covers: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut c = covers.to_vec();
    c.sort_unstable();
    c.dedup();
    c.retain(|&(x, y)| x < a.len() && y < a.len());
    c
}

pub fn to_json(f: &AlgebraFile) -> String {
    let mut s = serde_json::to_string_pretty(f).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_json(s: &str) -> Result<AlgebraFile, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::input(format!("bad algebra file: {e}")))
}

/// EMP lines top to bottom.
pub fn emp_lines(p: &Emp) -> Result<Vec<String>, CliError> {
    if p.labels()[p.unit()] != "1" {
        return Err(CliError::input(format!("EMP text needs the unit labelled `1`, found `{}`", p.labels()[p.unit()])));
    }
    let l = |e: usize| p.labels()[e].as_str();
    Ok(p.layers()
        .iter()
        .rev()
        .map(|layer| match *layer {
            Layer::Unit(e) | Layer::Pos(e) => format!("+{}", l(e)),
            Layer::Neg(e) => format!("-{}", l(e)),
            Layer::Pair { pos, neg, tie } => format!("+{} -{} {}", l(pos), l(neg), if tie == Tie::L { "L" } else { "R" }),
        })
        .collect())
}

pub fn emp_text(p: &Emp) -> Result<String, CliError> {
    Ok(emp_lines(p)?.into_iter().map(|l| l + "\n").collect())
}

/// Parse EMP text. Blank lines and `#` comments are skipped; element indices
/// run bottom to top, positive before negative within a pair.
pub fn parse_emp(text: &str) -> Result<Emp, CliError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    match lines.first() {
        Some((_, "+1")) => {}
        Some((i, l)) => return Err(CliError::input(format!("line {i}: first layer must be `+1`, got `{l}`"))),
        None => return Err(CliError::input("empty EMP text")),
    }
    let mut labels = Vec::new();
    let mut layers = Vec::new();
    let name = |tok: &str, sign: char, i: usize| {
        tok.strip_prefix(sign)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .ok_or_else(|| CliError::input(format!("line {i}: expected `{sign}label`, got `{tok}`")))
    };
    for &(i, line) in lines[1..].iter().rev() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let mut push = |l: String| {
            labels.push(l);
            labels.len() - 1
        };
        let layer = match toks.as_slice() {
            [t] if t.starts_with('+') => Layer::Pos(push(name(t, '+', i)?)),
            [t] => Layer::Neg(push(name(t, '-', i)?)),
            [p, n, tie] => {
                let tie = match *tie {
                    "L" => Tie::L,
                    "R" => Tie::R,
                    _ => return Err(CliError::input(format!("line {i}: tie must be L or R, got `{tie}`"))),
                };
                let pos = push(name(p, '+', i)?);
                let neg = push(name(n, '-', i)?);
                Layer::Pair { pos, neg, tie }
            }
            _ => return Err(CliError::input(format!("line {i}: cannot parse layer `{line}`"))),
        };
        layers.push(layer);
    }
    labels.push("1".into());
    layers.push(Layer::Unit(labels.len() - 1));
    let mut seen = std::collections::HashSet::new();
    if let Some(d) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(CliError::input(format!("label `{d}` appears twice")));
    }
    Emp::from_layers(labels, layers).map_err(|e| CliError::verify(e.to_string()))
}

/// A command input: an algebra, or an EMP given as text.
#[derive(Debug, Clone)]
pub enum Input {
    Algebra { name: String, algebra: FinResLat },
    Emp { name: String, emp: Emp },
}

impl Input {
    pub fn name(&self) -> &str {
        match self {
            Input::Algebra { name, .. } | Input::Emp { name, .. } => name,
        }
    }

    pub fn algebra(&self) -> Result<FinResLat, CliError> {
        match self {
            Input::Algebra { algebra, .. } => Ok(algebra.clone()),
            Input::Emp { emp, .. } => from_emp(emp).map_err(|e| CliError::verify(e.to_string())),
        }
    }

    pub fn emp(&self) -> Result<Emp, CliError> {
        match self {
            Input::Emp { emp, .. } => Ok(emp.clone()),
            Input::Algebra { algebra, .. } => to_emp(algebra).map_err(|e| CliError::input(format!("no EMP: {e}"))),
        }
    }
}

/// Read a JSON algebra file or an EMP text file; a path that does not exist
/// is looked up as a library name.
pub fn load(arg: &str) -> Result<Input, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        let algebra = library(arg).map_err(|e| CliError::input(format!("`{arg}` is neither a file nor a library name ({e})")))?;
        return Ok(Input::Algebra { name: arg.to_string(), algebra });
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string();
    if text.trim_start().starts_with('{') {
        let f = parse_json(&text)?;
        let algebra = f.to_algebra()?;
        Ok(Input::Algebra { name: f.name, algebra })
    } else {
        Ok(Input::Emp { name: stem, emp: parse_emp(&text)? })
    }
}
