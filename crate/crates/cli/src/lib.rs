//! Library side of the `invring` command: reading group and polynomial files,
//! running a computation over the field the file (or an override) asks for,
//! and reporting or benchmarking the result.

pub mod bench;
pub mod format;

use std::path::{Path, PathBuf};
use std::time::Instant;

use invring::action::{GroupSpec, DEFAULT_GROUP_CAP};
use invring::coeff::{Field, FieldSpec, PrimeField, Rationals};
use invring::invar::{
    default_mode, invariant_algebra, irreducible_secondary, verify_generating_set, GeneratingSet, Mode, Options,
    VerificationReport, VerifyOptions,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{parse_group_file, parse_polynomial_file, write_polynomial_file, FormatError, GroupFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// The machine-readable summary of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub group: String,
    pub n: usize,
    pub characteristic: u32,
    pub mode: String,
    pub counts_by_degree: Vec<usize>,
    pub degree_bound: u32,
    pub num_generators: usize,
    pub wall_ms: u64,
    pub verified: Option<bool>,
}

/// Everything a run produces, with polynomials already in canonical text.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub json: JsonReport,
    pub d_max: u32,
    pub seeded_with_primary: bool,
    pub generators: Vec<String>,
    pub verification: Option<VerificationReport>,
}

impl RunReport {
    pub fn max_degree(&self) -> Option<u32> {
        let top = self.json.counts_by_degree.len();
        (top > 0).then_some(top as u32)
    }

    pub fn generator_file(&self) -> String {
        let j = &self.json;
        let what = if self.seeded_with_primary {
            "irreducible secondary invariants"
        } else {
            "minimal generating set"
        };
        let header = vec![
            format!(
                "{what} of {} ({} variables, characteristic {})",
                j.group, j.n, j.characteristic
            ),
            format!("counts by degree: {}", join(&j.counts_by_degree)),
        ];
        let mut out = String::new();
        for h in header {
            out.push_str(&format!("# {h}\n"));
        }
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let j = &self.json;
        let mut s = format!(
            "group {} ({} variables, characteristic {}, mode {})\n",
            j.group, j.n, j.characteristic, j.mode
        );
        let noun = if self.seeded_with_primary {
            "irreducible secondary invariants"
        } else {
            "generators"
        };
        s.push_str(&format!(
            "{noun} by degree: {} ({} total)\n",
            join(&j.counts_by_degree),
            j.num_generators
        ));
        s.push_str(&format!(
            "degree bound: {} (staircase top degree {})\n",
            j.degree_bound, self.d_max
        ));
        s.push_str(&format!("wall time: {} ms\n", j.wall_ms));
        if let Some(v) = &self.verification {
            s.push_str(&format!("verification: {}\n", describe_verification(v)));
        }
        s
    }
}

pub fn join(counts: &[usize]) -> String {
    counts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn describe_verification(v: &VerificationReport) -> String {
    if v.passed() {
        let completeness = match v.completeness_checked_to {
            Some(d) => format!(", completeness to degree {d}"),
            None => String::new(),
        };
        return format!(
            "passed (invariance, homogeneity, minimality of {} generators{completeness})",
            v.minimality_checked
        );
    }
    let mut parts = Vec::new();
    if !v.non_homogeneous.is_empty() {
        parts.push(format!("not homogeneous: {:?}", v.non_homogeneous));
    }
    if !v.non_invariant.is_empty() {
        parts.push(format!("not invariant: {:?}", v.non_invariant));
    }
    if !v.redundant.is_empty() {
        parts.push(format!("redundant: {:?}", v.redundant));
    }
    if !v.incomplete_degrees.is_empty() {
        parts.push(format!("incomplete in degrees {:?}", v.incomplete_degrees));
    }
    format!("FAILED ({})", parts.join("; "))
}

/// Where the primary invariants of a secondary run come from.
#[derive(Debug, Clone)]
pub enum PrimarySource {
    File(PathBuf),
    /// The `primary` lines of the group file.
    Inline,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: PathBuf,
    pub characteristic: Option<u64>,
    pub mode: Option<Mode>,
    pub verify: bool,
    pub cap: usize,
    pub primary: Option<PrimarySource>,
}

impl RunConfig {
    pub fn new(group: impl Into<PathBuf>) -> Self {
        RunConfig {
            group: group.into(),
            characteristic: None,
            mode: None,
            verify: false,
            cap: DEFAULT_GROUP_CAP,
            primary: None,
        }
    }
}

pub fn group_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Reads the group file and runs the computation over the field given by the
/// override or the file header.
pub fn execute(config: &RunConfig) -> Result<RunReport, CliError> {
    let text = read_file(&config.group)?;
    let file = parse_group_file(&text).map_err(|source| CliError::Format {
        path: config.group.clone(),
        source,
    })?;
    let field = match config.characteristic {
        Some(p) => FieldSpec::new(p).map_err(|e| CliError::Usage(format!("--char: {e}")))?,
        None => file.characteristic,
    };
    if field.is_rationals() {
        execute_in(Rationals, &file, config)
    } else {
        let f = PrimeField::new(u64::from(field.characteristic())).map_err(|e| CliError::Usage(e.to_string()))?;
        execute_in(f, &file, config)
    }
}

fn execute_in<F: Field>(field: F, file: &GroupFile, config: &RunConfig) -> Result<RunReport, CliError> {
    let spec = file
        .build(field.clone(), config.cap)
        .map_err(|source| CliError::Format {
            path: config.group.clone(),
            source,
        })?;
    let mode = config.mode.unwrap_or_else(|| default_mode(&spec));
    let options = Options::new(mode);
    let start = Instant::now();
    let result = match &config.primary {
        None => invariant_algebra(&spec, options),
        Some(source) => {
            let primary =
                match source {
                    PrimarySource::Inline => file.primary_polys(&field).map_err(|source| CliError::Format {
                        path: config.group.clone(),
                        source,
                    })?,
                    PrimarySource::File(path) => parse_polynomial_file(&read_file(path)?, &field, spec.nvars())
                        .map_err(|source| CliError::Format {
                            path: path.clone(),
                            source,
                        })?,
                };
            irreducible_secondary(&spec, &primary, options)
        }
    }
    .map_err(|e| CliError::Compute(e.to_string()))?;
    let wall_ms = start.elapsed().as_millis() as u64;
    let verification = if config.verify {
        Some(
            verify_generating_set(&result, &spec, VerifyOptions::default())
                .map_err(|e| CliError::Compute(e.to_string()))?,
        )
    } else {
        None
    };
    Ok(report(&spec, &config.group, &result, wall_ms, verification))
}

fn report<F: Field>(
    spec: &GroupSpec<F>,
    path: &Path,
    result: &GeneratingSet<F>,
    wall_ms: u64,
    verification: Option<VerificationReport>,
) -> RunReport {
    RunReport {
        json: JsonReport {
            group: group_name(path),
            n: spec.nvars(),
            characteristic: spec.field().spec().characteristic(),
            mode: result.mode.name().to_string(),
            counts_by_degree: result.counts_by_degree.clone(),
            degree_bound: result.degree_bound,
            num_generators: result.len(),
            wall_ms,
            verified: verification.as_ref().map(VerificationReport::passed),
        },
        d_max: result.d_max,
        seeded_with_primary: result.seeded_with_primary,
        generators: result.polynomials().map(ToString::to_string).collect(),
        verification,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_join() {
        assert_eq!(join(&[1, 3, 8]), "1,3,8");
        assert_eq!(join(&[]), "");
    }
}
