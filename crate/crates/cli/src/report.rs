use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

/// Summary of one run, written to stderr as a single JSON line.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub counts: BTreeMap<String, u64>,
    pub wall_time_s: f64,
    pub threads: usize,
    pub peak_depth: usize,
    pub phases: Vec<(String, f64)>,
    #[serde(skip)]
    started: Option<Instant>,
    #[serde(skip)]
    phase_start: Option<Instant>,
}

impl RunReport {
    pub fn start() -> Self {
        let now = Instant::now();
        RunReport {
            command: std::env::args().collect(),
            counts: BTreeMap::new(),
            wall_time_s: 0.0,
            threads: 1,
            peak_depth: 0,
            phases: Vec::new(),
            started: Some(now),
            phase_start: Some(now),
        }
    }

    /// Closes the current phase under `name` and starts the next one.
    pub fn phase(&mut self, name: &str) {
        let now = Instant::now();
        let since = self.phase_start.replace(now).unwrap_or(now);
        self.phases.push((name.to_string(), (now - since).as_secs_f64()));
    }

    pub fn count(&mut self, name: &str, value: impl TryInto<u64>) {
        self.counts
            .insert(name.to_string(), value.try_into().unwrap_or(u64::MAX));
    }

    pub fn emit(mut self) {
        if let Some(t) = self.started {
            self.wall_time_s = t.elapsed().as_secs_f64();
        }
        if let Ok(line) = serde_json::to_string(&self) {
            eprintln!("{line}");
        }
    }
}
