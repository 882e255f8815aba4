//! Timing of low-index searches listed in a TOML manifest.
//!
//! ```toml
//! repetitions = 3
//!
//! [[case]]
//! name = "C4"
//! presentation = "catalan4.p"   # relative to the manifest
//! max_classes = 14
//! threads = [1, 2, 4]
//!
//! [[case]]
//! name = "O3"
//! family = "order-preserving:3" # presentation of a built-in monoid
//! max_classes = 10
//! sweep = 8                     # threads 1, 2, 4, 8
//! expected = 25
//! ```

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use congkit::lowindex::parallel_stats;
use congkit::{Presentation, SearchConfig, Side};
use serde::{Deserialize, Serialize};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(rename = "case", default)]
    pub cases: Vec<Case>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    pub presentation: Option<PathBuf>,
    pub family: Option<String>,
    pub max_classes: usize,
    #[serde(default)]
    pub side: Side,
    #[serde(default)]
    pub semigroup: bool,
    pub threads: Option<Vec<usize>>,
    pub sweep: Option<usize>,
    pub deduction: Option<String>,
    pub expected: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub max_classes: usize,
    pub side: Side,
    pub deduction: String,
    pub threads: usize,
    pub repetitions: usize,
    pub count: u64,
    pub mean_s: f64,
    pub sd_s: f64,
    pub relations: usize,
    pub presentation_length: usize,
}

impl Case {
    fn thread_counts(&self) -> Vec<usize> {
        match (&self.threads, self.sweep) {
            (Some(t), _) => t.clone(),
            (None, Some(max)) => std::iter::successors(Some(1usize), |t| Some(t * 2))
                .take_while(|&t| t <= max.max(1))
                .collect(),
            (None, None) => vec![1],
        }
    }

    fn presentation(&self, base: &Path) -> Result<Presentation> {
        match (&self.presentation, &self.family) {
            (Some(path), None) => {
                let path = base.join(path);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| congkit::Error::input(format!("missing fixture {}: {e}", path.display())))?;
                Ok(Presentation::parse(&text).with_context(|| format!("in {}", path.display()))?)
            }
            (None, Some(spec)) => Ok(crate::source::family(spec, None)?.presentation().clone()),
            _ => bail!(congkit::Error::input(format!(
                "case '{}' needs exactly one of presentation and family",
                self.name
            ))),
        }
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    toml::from_str(text).map_err(|e| congkit::Error::input(format!("bad manifest: {e}")).into())
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every case of the manifest at `manifest_path`. `cap` limits the
/// thread counts taken from the manifest.
pub fn run(manifest_path: &Path, cap: Option<usize>, mut on_row: impl FnMut(&Row) -> Result<()>) -> Result<Vec<Row>> {
    let text = std::fs::read_to_string(manifest_path)
        .map_err(|e| congkit::Error::input(format!("missing manifest {}: {e}", manifest_path.display())))?;
    let manifest = parse_manifest(&text)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let reps = manifest.repetitions.max(1);
    // load everything first so a missing fixture fails before any timing
    let loaded = manifest
        .cases
        .iter()
        .map(|c| c.presentation(base).map(|p| (c, p)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (case, p) in loaded {
        let deduction = case.deduction.clone().unwrap_or_else(|| "felsch".to_string());
        let cfg = SearchConfig::new(case.max_classes)
            .side(case.side)
            .semigroup(case.semigroup)
            .engine(&deduction);
        let mut threads = case.thread_counts();
        if let Some(cap) = cap {
            threads.retain(|&t| t <= cap);
        }
        for t in threads {
            let mut times = Vec::with_capacity(reps);
            let mut count = 0;
            for _ in 0..reps {
                let start = Instant::now();
                count = parallel_stats(&p, &cfg, t)?.count;
                times.push(start.elapsed().as_secs_f64());
            }
            if let Some(expected) = case.expected {
                if expected != count {
                    bail!(
                        "case '{}' with {t} threads counted {count}, expected {expected}",
                        case.name
                    );
                }
            }
            let (mean_s, sd_s) = mean_sd(&times);
            let row = Row {
                name: case.name.clone(),
                max_classes: case.max_classes,
                side: case.side,
                deduction: deduction.clone(),
                threads: t,
                repetitions: reps,
                count,
                mean_s,
                sd_s,
                relations: p.relations().len(),
                presentation_length: p.length(),
            };
            on_row(&row)?;
            rows.push(row);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps_double() {
        let c: Case = toml::from_str("name = 'x'\nfamily = 'full:2'\nmax_classes = 3\nsweep = 5").unwrap();
        assert_eq!(c.thread_counts(), vec![1, 2, 4]);
        assert_eq!(mean_sd(&[1.0, 3.0]), (2.0, std::f64::consts::SQRT_2));
        assert!(parse_manifest("[[case]]\nname = 'x'\nbogus = 1").is_err());
    }
}
