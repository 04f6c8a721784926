//! Group files, primary-invariant files and generator files.
//!
//! A group file is line oriented; `#` starts a comment. Header lines are
//! `characteristic <p>` (default 0) and `variables <n>`. Generators follow as
//! either `permutation i1 ... in` lines, where `ik` is the image of `k`, or a
//! `matrix` line followed by `n` rows of `n` rationals (`a` or `a/b`). Lines of
//! the form `primary <polynomial>` optionally list primary invariants.
//!
//! Primary-invariant and generator files hold one polynomial per line in the
//! canonical text form; blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use invring::action::{GroupElement, GroupSpec, Matrix, Permutation};
use invring::coeff::{Field, FieldSpec};
use invring::poly::Polynomial;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// A rational matrix entry as read, before it is mapped into a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRational {
    pub num: BigInt,
    pub den: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawGenerators {
    /// One-based image vectors with their line numbers.
    Permutations(Vec<(usize, Vec<usize>)>),
    /// Row-major entries with the line number of the `matrix` keyword.
    Matrices(Vec<(usize, Vec<Vec<RawRational>>)>),
}

/// A parsed group file, independent of the coefficient field it will be
/// built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub characteristic: FieldSpec,
    pub nvars: usize,
    pub generators: RawGenerators,
    /// Primary invariants given inline, with line numbers.
    pub primary: Vec<(usize, String)>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_rational(tok: &str, line: usize) -> Result<RawRational, FormatError> {
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| syntax(line, format!("bad rational `{tok}`")))?;
    let den: BigInt = den.parse().map_err(|_| syntax(line, format!("bad rational `{tok}`")))?;
    if den == BigInt::from(0) {
        return Err(syntax(line, format!("zero denominator in `{tok}`")));
    }
    Ok(RawRational { num, den })
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, FormatError> {
    let mut characteristic = FieldSpec::RATIONALS;
    let mut nvars: Option<usize> = None;
    let mut perms: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut matrices: Vec<(usize, Vec<Vec<RawRational>>)> = Vec::new();
    let mut primary = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    while let Some((no, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "characteristic" => {
                let p: u64 = rest
                    .parse()
                    .map_err(|_| syntax(no, format!("bad characteristic `{rest}`")))?;
                characteristic = FieldSpec::new(p).map_err(|e| syntax(no, e.to_string()))?;
            }
            "variables" => {
                if nvars.is_some() {
                    return Err(syntax(no, "`variables` given twice"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| syntax(no, format!("bad variable count `{rest}`")))?;
                if n == 0 {
                    return Err(syntax(no, "at least one variable is needed"));
                }
                nvars = Some(n);
            }
            "permutation" => {
                let n = nvars.ok_or_else(|| syntax(no, "`variables` must precede generators"))?;
                if !matrices.is_empty() {
                    return Err(syntax(no, "permutation and matrix generators cannot be mixed"));
                }
                let images: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| syntax(no, format!("bad image `{t}`"))))
                    .collect::<Result<_, _>>()?;
                if images.len() != n {
                    return Err(syntax(no, format!("expected {n} images, found {}", images.len())));
                }
                Permutation::from_images(&images).map_err(|e| syntax(no, e.to_string()))?;
                perms.push((no, images));
            }
            "matrix" => {
                let n = nvars.ok_or_else(|| syntax(no, "`variables` must precede generators"))?;
                if !perms.is_empty() {
                    return Err(syntax(no, "permutation and matrix generators cannot be mixed"));
                }
                if !rest.is_empty() {
                    return Err(syntax(no, "`matrix` takes its rows on the following lines"));
                }
                let mut rows = Vec::with_capacity(n);
                while rows.len() < n {
                    let Some((rno, row)) = lines.next() else {
                        return Err(syntax(no, format!("matrix has {} of {n} rows", rows.len())));
                    };
                    if row.is_empty() {
                        continue;
                    }
                    let entries: Vec<RawRational> = row
                        .split_whitespace()
                        .map(|t| parse_rational(t, rno))
                        .collect::<Result<_, _>>()?;
                    if entries.len() != n {
                        return Err(syntax(rno, format!("expected {n} entries, found {}", entries.len())));
                    }
                    rows.push(entries);
                }
                matrices.push((no, rows));
            }
            "primary" => {
                if nvars.is_none() {
                    return Err(syntax(no, "`variables` must precede primary invariants"));
                }
                primary.push((no, rest.to_string()));
            }
            other => return Err(syntax(no, format!("unknown keyword `{other}`"))),
        }
    }
    let nvars = nvars.ok_or_else(|| FormatError::Invalid("missing `variables` line".into()))?;
    let generators = if !perms.is_empty() {
        RawGenerators::Permutations(perms)
    } else if !matrices.is_empty() {
        RawGenerators::Matrices(matrices)
    } else {
        return Err(FormatError::Invalid("no generators".into()));
    };
    Ok(GroupFile {
        characteristic,
        nvars,
        generators,
        primary,
    })
}

impl GroupFile {
    /// The group over `field`: matrices are mapped into the field and checked
    /// for invertibility there, and the group order for non-modularity.
    pub fn build<F: Field>(&self, field: F, cap: usize) -> Result<GroupSpec<F>, FormatError> {
        let elements = match &self.generators {
            RawGenerators::Permutations(perms) => perms
                .iter()
                .map(|(_, images)| {
                    Permutation::from_images(images)
                        .map(GroupElement::Perm)
                        .map_err(|e| FormatError::Invalid(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
            RawGenerators::Matrices(mats) => mats
                .iter()
                .map(|(no, rows)| {
                    let rows = rows
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|r| field.from_ratio(&r.num, &r.den).map_err(|e| syntax(*no, e.to_string())))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Matrix::from_rows(&field, rows)
                        .map(GroupElement::Matrix)
                        .map_err(|e| syntax(*no, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        GroupSpec::new(field, self.nvars, elements, cap).map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn primary_polys<F: Field>(&self, field: &F) -> Result<Vec<Polynomial<F>>, FormatError> {
        self.primary
            .iter()
            .map(|(no, text)| {
                Polynomial::parse(text, field.clone(), self.nvars).map_err(|e| syntax(*no, e.to_string()))
            })
            .collect()
    }
}

/// One polynomial per nonblank, non-comment line.
pub fn parse_polynomial_file<F: Field>(text: &str, field: &F, nvars: usize) -> Result<Vec<Polynomial<F>>, FormatError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .map(|(no, l)| Polynomial::parse(l, field.clone(), nvars).map_err(|e| syntax(no, e.to_string())))
        .collect()
}

/// A generator file: a comment header, then one polynomial per line.
pub fn write_polynomial_file<'a, F: Field>(
    header: &[String],
    polys: impl IntoIterator<Item = &'a Polynomial<F>>,
) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for p in polys {
        let _ = writeln!(out, "{p}");
    }
    out
}
