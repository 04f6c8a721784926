//! Fixture benchmarks: run every case of a manifest, time it and compare the
//! generator counts with the expected ones.
//!
//! A manifest is a TOML file with one `[[case]]` table per run:
//!
//! ```toml
//! [[case]]
//! id = "c7"
//! group = "c7.grp"          # relative to the manifest
//! characteristic = 2        # optional override of the file header
//! mode = "orbit"            # optional: orbit | reynolds
//! primary = "ex10.pri"      # optional: run the secondary-invariant variant
//! counts = [1, 3, 8, 12, 12, 6, 6]
//! degree_bound = 28         # optional
//! num_generators = 49       # optional
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use invring::invar::Mode;
use serde::Deserialize;

use crate::{execute, join, read_file, CliError, PrimarySource, RunConfig, RunReport};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub id: String,
    pub group: PathBuf,
    pub characteristic: Option<u64>,
    pub mode: Option<String>,
    pub primary: Option<PathBuf>,
    pub counts: Vec<usize>,
    pub degree_bound: Option<u32>,
    pub num_generators: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "case", default)]
    pub cases: Vec<Case>,
}

pub fn parse_mode(name: &str) -> Result<Mode, CliError> {
    match name {
        "orbit" => Ok(Mode::OrbitSums),
        "reynolds" => Ok(Mode::Reynolds),
        other => Err(CliError::Usage(format!(
            "unknown mode `{other}` (expected orbit or reynolds)"
        ))),
    }
}

pub fn load_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = read_file(path)?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Match(RunReport),
    Mismatch { report: RunReport, problems: Vec<String> },
    Error(String),
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub id: String,
    pub outcome: Outcome,
}

impl Case {
    fn config(&self, base: &Path) -> Result<RunConfig, CliError> {
        let mut config = RunConfig::new(base.join(&self.group));
        config.characteristic = self.characteristic;
        config.mode = self.mode.as_deref().map(parse_mode).transpose()?;
        config.primary = self.primary.as_ref().map(|p| PrimarySource::File(base.join(p)));
        Ok(config)
    }

    fn check(&self, report: &RunReport) -> Vec<String> {
        let j = &report.json;
        let mut problems = Vec::new();
        if j.counts_by_degree != self.counts {
            problems.push(format!(
                "counts {} expected {}",
                join(&j.counts_by_degree),
                join(&self.counts)
            ));
        }
        if let Some(b) = self.degree_bound {
            if j.degree_bound != b {
                problems.push(format!("degree bound {} expected {b}", j.degree_bound));
            }
        }
        if let Some(n) = self.num_generators {
            if j.num_generators != n {
                problems.push(format!("{} generators expected {n}", j.num_generators));
            }
        }
        problems
    }

    pub fn run(&self, base: &Path) -> CaseResult {
        let outcome = match self.config(base).and_then(|c| execute(&c)) {
            Err(e) => Outcome::Error(e.to_string()),
            Ok(report) => {
                let problems = self.check(&report);
                if problems.is_empty() {
                    Outcome::Match(report)
                } else {
                    Outcome::Mismatch { report, problems }
                }
            }
        };
        CaseResult {
            id: self.id.clone(),
            outcome,
        }
    }
}

/// Runs the selected cases (all when `only` is empty), printing one row per
/// case as it finishes.
pub fn run_manifest(path: &Path, only: &[String], mut sink: impl FnMut(&str)) -> Result<Vec<CaseResult>, CliError> {
    let manifest = load_manifest(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    for id in only {
        if !manifest.cases.iter().any(|c| &c.id == id) {
            return Err(CliError::Usage(format!("no case `{id}` in {}", path.display())));
        }
    }
    sink(&format!(
        "{:<24} {:>4} {:>10}  {:<40} status",
        "case", "char", "wall_ms", "counts by degree"
    ));
    let mut results = Vec::new();
    for case in manifest
        .cases
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
    {
        let result = case.run(base);
        sink(&row(&result));
        results.push(result);
    }
    Ok(results)
}

pub fn row(result: &CaseResult) -> String {
    let mut s = String::new();
    match &result.outcome {
        Outcome::Match(r) => {
            let _ = write!(
                s,
                "{:<24} {:>4} {:>10}  {:<40} ok",
                result.id,
                r.json.characteristic,
                r.json.wall_ms,
                join(&r.json.counts_by_degree)
            );
        }
        Outcome::Mismatch { report: r, problems } => {
            let _ = write!(
                s,
                "{:<24} {:>4} {:>10}  {:<40} MISMATCH: {}",
                result.id,
                r.json.characteristic,
                r.json.wall_ms,
                join(&r.json.counts_by_degree),
                problems.join("; ")
            );
        }
        Outcome::Error(e) => {
            let _ = write!(s, "{:<24} {:>4} {:>10}  {:<40} ERROR: {e}", result.id, "-", "-", "-");
        }
    }
    s
}

/// `0` if every case matched, the mismatch code if any count differed, and
/// the computation code if any case failed to run.
pub fn exit_code(results: &[CaseResult]) -> i32 {
    if results.iter().any(|r| matches!(r.outcome, Outcome::Error(_))) {
        crate::EXIT_COMPUTE
    } else if results.iter().any(|r| matches!(r.outcome, Outcome::Mismatch { .. })) {
        crate::EXIT_MISMATCH
    } else {
        crate::EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses() {
        let m: Manifest = toml::from_str(
            r#"
            [[case]]
            id = "c6-p5"
            group = "c6.grp"
            characteristic = 5
            counts = [1, 3, 6, 6, 2, 2]
            "#,
        )
        .unwrap();
        assert_eq!(m.cases.len(), 1);
        assert_eq!(m.cases[0].characteristic, Some(5));
        assert!(toml::from_str::<Manifest>("[[case]]\nid = \"x\"\ngroup = \"g\"\ncounts = []\nbogus = 1\n").is_err());
    }

    #[test]
    fn modes() {
        assert_eq!(parse_mode("orbit").unwrap(), Mode::OrbitSums);
        assert_eq!(parse_mode("reynolds").unwrap(), Mode::Reynolds);
        assert!(matches!(parse_mode("fast"), Err(CliError::Usage(_))));
    }
}
