//! In-window period detection for integer series, with the structural checks
//! (period a power of p, period dividing a computed bound) layered on top.
//!
//! Detection never claims eventual periodicity from finite data: a period is
//! reported only when it repeats through the window with at least the
//! requested number of confirmed full periods past the onset.

use core::fmt;

use crate::fimod::DimensionSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodError {
    EmptySeries,
    MarginTooSmall(u64),
}

impl fmt::Display for PeriodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodError::EmptySeries => write!(f, "cannot detect a period in an empty series"),
            PeriodError::MarginTooSmall(m) => {
                write!(f, "confirmation margin must be at least 2, got {m}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    /// Smallest in-window period, or None when inconclusive.
    pub period: Option<u64>,
    /// First level from which the period holds through the window.
    pub onset: Option<usize>,
    /// Examined range (inclusive).
    pub window: (usize, usize),
    /// Number of confirmed full periods past the onset.
    pub margin: u64,
}

/// Reports the period P >= 1 with s(n) = s(n+P) from some onset through the
/// whole window, confirmed by at least `min_margin` full periods. Candidates
/// are ranked by earliest onset (the hypothesis explaining the longest tail)
/// and then by smallest period, so a short constant run at the window edge
/// cannot shadow the true period of the bulk.
pub fn detect_period(s: &DimensionSeries, min_margin: u64) -> Result<PeriodReport, PeriodError> {
    if s.values.is_empty() {
        return Err(PeriodError::EmptySeries);
    }
    if min_margin < 2 {
        return Err(PeriodError::MarginTooSmall(min_margin));
    }
    let lo = s.start;
    let hi = s.end();
    let len = s.values.len();
    let max_period = (len.saturating_sub(1)) as u64 / min_margin;
    let mut best: Option<(usize, u64)> = None; // (onset, period)
    for period in 1..=max_period {
        let p = period as usize;
        // latest disagreement s(n) != s(n+P) determines the least onset
        let mut onset_idx = 0;
        for i in (0..len - p).rev() {
            if s.values[i] != s.values[i + p] {
                onset_idx = i + 1;
                break;
            }
        }
        let onset = lo + onset_idx;
        let span = (hi - onset) as u64;
        if span >= min_margin * period && best.map_or(true, |(o, _)| onset < o) {
            best = Some((onset, period));
            if onset == lo {
                break;
            }
        }
    }
    Ok(match best {
        Some((onset, period)) => PeriodReport {
            period: Some(period),
            onset: Some(onset),
            window: (lo, hi),
            margin: (hi - onset) as u64 / period,
        },
        None => PeriodReport {
            period: None,
            onset: None,
            window: (lo, hi),
            margin: 0,
        },
    })
}

/// True when the detected period is a power of p. Requires a conclusive
/// report.
pub fn check_power_of_p(report: &PeriodReport, p: u64) -> bool {
    let mut period = report.period.expect("inconclusive report");
    while period % p == 0 {
        period /= p;
    }
    period == 1
}

/// True when the detected period divides p^exponent. Requires a conclusive
/// report.
pub fn check_divides_bound(report: &PeriodReport, p: u64, exponent: u64) -> bool {
    let mut period = report.period.expect("inconclusive report");
    let mut left = exponent;
    while period % p == 0 && left > 0 {
        period /= p;
        left -= 1;
    }
    period == 1
}
