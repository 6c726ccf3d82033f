//! Machine-readable verification reports: a list of named checks, each
//! tied to the mathematical identity it exercises, with pass / fail /
//! flagged status. Flagged marks a documented discrepancy between the
//! mathematics and a printed formula; it never fails a run.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// Anchor for checks that exercise plumbing rather than an identity.
pub const PLUMBING: &str = "plumbing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    /// Name of the identity the check verifies, or "plumbing".
    pub anchor: String,
    pub status: Status,
    /// Observed value. Finite by construction (infinities are clamped).
    pub metric: f64,
    pub tolerance: f64,
    /// Monomial count of a symbolic residual, where one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
}

/// serde_json rejects non-finite floats; clamp before building entries.
fn fin(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x.is_finite() {
        x
    } else if x > 0.0 {
        f64::MAX
    } else {
        f64::MIN
    }
}

impl Entry {
    /// Pass iff metric <= tolerance.
    pub fn within(name: &str, anchor: &str, metric: f64, tolerance: f64) -> Self {
        Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: if fin(metric) <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            metric: fin(metric),
            tolerance,
            residual_terms: None,
        }
    }

    /// Detector check: pass iff metric >= threshold (the check proves the
    /// instrument reacts, so a small value is the failure).
    pub fn at_least(name: &str, anchor: &str, metric: f64, threshold: f64) -> Self {
        Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: if fin(metric) >= threshold {
                Status::Pass
            } else {
                Status::Fail
            },
            metric: fin(metric),
            tolerance: threshold,
            residual_terms: None,
        }
    }

    /// Exact symbolic check: tolerance 0, metric is the residual size.
    pub fn exact(name: &str, anchor: &str, is_exact: bool, metric: f64) -> Self {
        Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: if is_exact { Status::Pass } else { Status::Fail },
            metric: fin(metric),
            tolerance: 0.0,
            residual_terms: None,
        }
    }

    /// Informational entry: always passes, the metric is a recorded
    /// observation rather than a bound.
    pub fn info(name: &str, anchor: &str, metric: f64) -> Self {
        Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            metric: fin(metric),
            tolerance: 0.0,
            residual_terms: None,
        }
    }

    /// Documented discrepancy between the mathematics and a printed
    /// formula. Never a failure.
    pub fn flagged(name: &str, anchor: &str, metric: f64) -> Self {
        Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Flagged,
            metric: fin(metric),
            tolerance: 0.0,
            residual_terms: None,
        }
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.residual_terms = Some(terms);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolStamp {
    pub name: &'static str,
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
}

impl ToolStamp {
    pub fn current() -> Self {
        ToolStamp {
            name: "susy-vcs",
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub flagged: usize,
    pub fail: usize,
}

#[derive(Debug, Serialize)]
pub struct Report<C: Serialize> {
    pub schema_version: u32,
    /// Seconds since the Unix epoch; the one nondeterministic field.
    pub generated_unix: u64,
    pub tool: ToolStamp,
    pub command: String,
    pub config: C,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl<C: Serialize> Report<C> {
    pub fn new(command: &str, config: C, entries: Vec<Entry>) -> Self {
        let summary = Summary {
            pass: entries.iter().filter(|e| e.status == Status::Pass).count(),
            flagged: entries
                .iter()
                .filter(|e| e.status == Status::Flagged)
                .count(),
            fail: entries.iter().filter(|e| e.status == Status::Fail).count(),
        };
        let generated_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            schema_version: SCHEMA_VERSION,
            generated_unix,
            tool: ToolStamp::current(),
            command: command.into(),
            config,
            entries,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn write_json(&self, path: &Path) -> anyhow::Result<()> {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        f.write_all(b"\n")?;
        Ok(())
    }

    /// One line per entry plus a totals line, for the terminal.
    pub fn print_lines(&self) {
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "pass   ",
                Status::Fail => "FAIL   ",
                Status::Flagged => "flagged",
            };
            let terms = match e.residual_terms {
                Some(t) => format!(", residual terms {t}"),
                None => String::new(),
            };
            println!(
                "[{tag}] {}  (metric {:.3e}, tolerance {:.3e}{terms})",
                e.name, e.metric, e.tolerance
            );
        }
        println!(
            "total: {} pass, {} flagged, {} fail",
            self.summary.pass, self.summary.flagged, self.summary.fail
        );
    }
}
