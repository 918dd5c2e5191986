//! Runner for the acceptance suite. Criteria run one after another (so that
//! runtime budgets are measured without contention), each printing a single
//! `PASS`/`FAIL` line; errors, panics and blown budgets count as failures.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// Verdict of one criterion with a human-readable account of the numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }

    /// Passes when every part passes; details are joined with `; `.
    pub fn all(parts: impl IntoIterator<Item = Outcome>) -> Self {
        let parts: Vec<Outcome> = parts.into_iter().collect();
        let pass = parts.iter().all(|p| p.pass);
        let detail = parts
            .iter()
            .map(|p| if p.pass { p.detail.clone() } else { format!("[fail] {}", p.detail) })
            .collect::<Vec<_>>()
            .join("; ");
        Self { pass, detail }
    }
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    /// Wall-clock limit, part of the criterion when present.
    pub budget: Option<Duration>,
    pub run: fn() -> anyhow::Result<Outcome>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<34} {}  ({:.1} s)  {}",
            self.id,
            self.title,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn evaluate(c: &Criterion) -> Report {
    let started = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(c.run));
    let elapsed = started.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(Ok(o)) => (o.pass, o.detail),
        Ok(Err(e)) => (false, format!("error: {e:#}")),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panic: {msg}"))
        }
    };
    if let Some(budget) = c.budget {
        let within = elapsed <= budget;
        detail = format!("{detail}; runtime {:.1} s (limit {} s)", elapsed.as_secs_f64(), budget.as_secs());
        pass &= within;
    }
    Report { id: c.id, title: c.title, pass, detail, elapsed }
}

/// Whether a criterion is selected by the positional filters (substrings of
/// its number or title); no filters selects everything.
pub fn selected(c: &Criterion, filters: &[String]) -> bool {
    filters.is_empty() || filters.iter().any(|f| c.id.to_string() == *f || c.title.contains(f.as_str()))
}

/// Runs the selected criteria in order, printing each line as it finishes,
/// then a summary.
pub fn run_all(criteria: &[Criterion], filters: &[String]) -> Vec<Report> {
    let reports: Vec<Report> = criteria
        .iter()
        .filter(|c| selected(c, filters))
        .map(|c| {
            let r = evaluate(c);
            println!("{}", r.line());
            r
        })
        .collect();
    let passed = reports.iter().filter(|r| r.pass).count();
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.id.to_string()).collect();
    println!("\nacceptance: {passed}/{} criteria passed", reports.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
    }
    reports
}
