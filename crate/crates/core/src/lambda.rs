//! Finite unions of half-open intervals inside `Λ = [−½, ½)`.

use serde::Serialize;

pub const LAMBDA_MIN: f64 = -0.5;
pub const LAMBDA_MAX: f64 = 0.5;

/// Sorted, disjoint, non-empty `[lo, hi)` pieces clipped to `Λ`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct LambdaSet {
    intervals: Vec<(f64, f64)>,
}

impl LambdaSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![(LAMBDA_MIN, LAMBDA_MAX)],
        }
    }

    /// Clips to `Λ`, drops empty pieces, sorts and merges overlaps.
    pub fn from_intervals(pieces: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut pieces: Vec<(f64, f64)> = pieces
            .into_iter()
            .map(|(lo, hi)| (lo.max(LAMBDA_MIN), hi.min(LAMBDA_MAX)))
            .filter(|(lo, hi)| lo < hi)
            .collect();
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Self { intervals: merged }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::from_intervals([(lo, hi)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure; `dμ(λ) = dλ`.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn contains(&self, lambda: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(lo, hi)| lo <= lambda && lambda < hi)
    }

    pub fn intersection(&self, other: &LambdaSet) -> LambdaSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a_lo, a_hi) = self.intervals[i];
            let (b_lo, b_hi) = other.intervals[j];
            let lo = a_lo.max(b_lo);
            let hi = a_hi.min(b_hi);
            if lo < hi {
                out.push((lo, hi));
            }
            if a_hi < b_hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        LambdaSet { intervals: out }
    }

    /// `Λ \ self`.
    pub fn complement(&self) -> LambdaSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = LAMBDA_MIN;
        for &(lo, hi) in &self.intervals {
            if cursor < lo {
                out.push((cursor, lo));
            }
            cursor = hi;
        }
        if cursor < LAMBDA_MAX {
            out.push((cursor, LAMBDA_MAX));
        }
        LambdaSet { intervals: out }
    }

    pub fn union(&self, other: &LambdaSet) -> LambdaSet {
        LambdaSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }
}
