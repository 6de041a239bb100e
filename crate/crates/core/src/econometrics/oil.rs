use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentRate {
    pub start: usize,
    pub end: usize,
    /// Mean of 100 (ln p_t - ln p_{t-1}) over months start+1..=end.
    pub mean_log_change: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowDrop {
    pub start: usize,
    pub end: usize,
    pub percent_change: f64,
    /// p_end - p_start, in production units.
    pub absolute_change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentReport {
    pub segments: Vec<SegmentRate>,
    pub windows: Vec<WindowDrop>,
}

/// Average monthly log decline between breakpoints, plus discrete drops over
/// the given windows. Breakpoints split the month index range
/// `0..monthly.len()` into consecutive segments sharing their boundary month.
pub fn segment_decline_rates(
    monthly: &[f64],
    breakpoints: &[usize],
    jump_windows: &[(usize, usize)],
) -> Result<SegmentReport> {
    if monthly.len() < 2 {
        return Err(Error::InsufficientData("need at least two months".into()));
    }
    if let Some((i, v)) = monthly.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(Error::Domain(format!("production {v} at month {i} is not positive")));
    }
    let last = monthly.len() - 1;
    let mut bounds = Vec::with_capacity(breakpoints.len() + 2);
    bounds.push(0);
    for &b in breakpoints {
        if b == 0 || b >= last || b <= *bounds.last().unwrap_or(&0) {
            return Err(Error::InvalidParameter(format!(
                "breakpoint {b} must be interior and increasing"
            )));
        }
        bounds.push(b);
    }
    bounds.push(last);

    let logs: Vec<f64> = monthly.iter().map(|p| 100.0 * p.ln()).collect();
    let segments = bounds
        .windows(2)
        .map(|w| {
            let diffs: f64 = (w[0] + 1..=w[1]).map(|t| logs[t] - logs[t - 1]).sum();
            SegmentRate { start: w[0], end: w[1], mean_log_change: diffs / (w[1] - w[0]) as f64 }
        })
        .collect();

    let windows = jump_windows
        .iter()
        .map(|&(start, end)| {
            if start >= end || end > last {
                return Err(Error::InvalidParameter(format!("window ({start}, {end}) is not inside the series")));
            }
            Ok(WindowDrop {
                start,
                end,
                percent_change: (monthly[end] / monthly[start] - 1.0) * 100.0,
                absolute_change: monthly[end] - monthly[start],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SegmentReport { segments, windows })
}
