//! Shared reporting for the acceptance target.

use std::time::Duration;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({}; {:.2} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// `k/n` with a label, for detail strings.
pub fn tally(label: &str, ok: usize, total: usize) -> String {
    format!("{label} {ok}/{total}")
}
