//! Statistical audit of schedules: who sits where, how often, and whether
//! the constraint set was ever violated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifest::AuthorManifest;
use crate::permute::{find_violation, Schedule, ScheduleMode, ViolationKind};

/// Chi-square critical values at alpha = 0.001 for df = 1..=10. Larger
/// degrees of freedom report the statistic only.
pub const CHI_SQUARE_CRITICAL_001: [f64; 10] = [
    10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.125, 27.877, 29.588,
];

/// Expected count per category below which the test is inapplicable.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

/// Occurrence counts of each author at each position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionHistogram {
    /// `counts[author_index][position]`, authors in manifest order.
    pub counts: Vec<Vec<u64>>,
    pub total_frames: u64,
}

/// Count author/position occurrences across a schedule.
pub fn position_histogram(
    schedule: &Schedule,
    manifest: &AuthorManifest,
) -> Result<PositionHistogram> {
    let n = manifest.authors.len();
    let mut counts = vec![vec![0u64; n]; n];
    for frame in &schedule.frames {
        for (position, id) in frame.visible.iter().enumerate() {
            let author = manifest
                .author_index(id)
                .ok_or_else(|| Error::UnknownAuthor { id: id.clone() })?;
            counts[author][position] += 1;
        }
    }
    Ok(PositionHistogram {
        counts,
        total_frames: schedule.frames.len() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiSquareOutcome {
    Pass,
    Fail,
    /// Expected count per category below 5; statistic reported anyway.
    InsufficientSamples,
    /// Degrees of freedom beyond the embedded table; statistic only.
    StatisticOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub df: usize,
    pub critical: Option<f64>,
    pub outcome: ChiSquareOutcome,
}

/// Chi-square goodness-of-fit against the uniform distribution:
/// `X² = Σ (O−E)²/E` with `E = total/k`, judged at alpha = 0.001.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquareResult> {
    let k = counts.len();
    if k < 2 {
        return Err(Error::ChiSquareCategories { categories: k });
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / k as f64;
    let statistic = if total == 0 {
        0.0
    } else {
        counts
            .iter()
            .map(|&o| {
                let diff = o as f64 - expected;
                diff * diff / expected
            })
            .sum()
    };
    let df = k - 1;
    let critical = CHI_SQUARE_CRITICAL_001.get(df - 1).copied();
    let outcome = if expected < MIN_EXPECTED_COUNT {
        ChiSquareOutcome::InsufficientSamples
    } else {
        match critical {
            Some(limit) if statistic <= limit => ChiSquareOutcome::Pass,
            Some(_) => ChiSquareOutcome::Fail,
            None => ChiSquareOutcome::StatisticOnly,
        }
    };
    Ok(ChiSquareResult {
        statistic,
        df,
        critical,
        outcome,
    })
}

/// Uniformity check of one position across authors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionCheck {
    pub position: usize,
    /// Occupancy counts per author, manifest order.
    pub counts: Vec<u64>,
    pub chi_square: ChiSquareResult,
}

/// Observed visibility rate of one author against its `p_appear`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityCheck {
    pub id: String,
    pub expected: f64,
    pub observed: f64,
    /// Three-sigma band: `3·sqrt(p(1−p)/N)`.
    pub tolerance: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub frame_index: usize,
    pub pair: (String, String),
    pub kind: String,
}

/// The full audit: per-position chi-square, per-author visibility vs
/// `p_appear`, and a zero-tolerance constraint-violation count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub mode: ScheduleMode,
    pub seed: u64,
    pub total_frames: u64,
    pub positions: Vec<PositionCheck>,
    pub authors: Vec<VisibilityCheck>,
    pub violation_count: usize,
    pub violations: Vec<ViolationRecord>,
}

pub fn audit(schedule: &Schedule, manifest: &AuthorManifest) -> Result<AuditReport> {
    let histogram = position_histogram(schedule, manifest)?;
    let n = manifest.authors.len();
    let total = histogram.total_frames;

    let mut positions = Vec::with_capacity(n);
    for position in 0..n {
        let counts: Vec<u64> = (0..n).map(|a| histogram.counts[a][position]).collect();
        positions.push(PositionCheck {
            position,
            chi_square: chi_square_uniform(&counts)?,
            counts,
        });
    }

    let mut authors = Vec::with_capacity(n);
    for (index, author) in manifest.authors.iter().enumerate() {
        let appearances: u64 = histogram.counts[index].iter().sum();
        let observed = if total == 0 {
            0.0
        } else {
            appearances as f64 / total as f64
        };
        let p = author.p_appear;
        let tolerance = 3.0 * (p * (1.0 - p) / total as f64).sqrt();
        authors.push(VisibilityCheck {
            id: author.id.clone(),
            expected: p,
            observed,
            tolerance,
            flagged: (observed - p).abs() > tolerance,
        });
    }

    let mut violations = Vec::new();
    for (frame_index, frame) in schedule.frames.iter().enumerate() {
        if let Some(v) = find_violation(frame, &manifest.constraints) {
            violations.push(ViolationRecord {
                frame_index,
                pair: v.pair,
                kind: match v.kind {
                    ViolationKind::NeverTogether => "never_together".to_string(),
                    ViolationKind::NeverAdjacent => "never_adjacent".to_string(),
                },
            });
        }
    }

    Ok(AuditReport {
        mode: schedule.mode,
        seed: schedule.seed,
        total_frames: total,
        positions,
        authors,
        violation_count: violations.len(),
        violations,
    })
}

impl AuditReport {
    /// Canonical JSON form: sorted keys, 2-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        let mut out = serde_json::to_string_pretty(&value).expect("valid JSON value");
        out.push('\n');
        out
    }

    /// Human-readable table for standard output.
    pub fn to_table(&self) -> String {
        let mode = match self.mode {
            ScheduleMode::Enumeration => "enumeration",
            ScheduleMode::Sampling => "sampling",
            ScheduleMode::AlphaGiven => "alpha_given",
            ScheduleMode::AlphaFamily => "alpha_family",
            ScheduleMode::Fixed => "fixed",
        };
        let mut out = format!(
            "schedule: mode={mode} seed={} frames={}\n",
            self.seed, self.total_frames
        );
        out.push_str("position uniformity (chi-square, alpha=0.001):\n");
        out.push_str("  pos   statistic  df  critical  outcome\n");
        for check in &self.positions {
            let critical = check
                .chi_square
                .critical
                .map_or("-".to_string(), |c| format!("{c:.3}"));
            let outcome = match check.chi_square.outcome {
                ChiSquareOutcome::Pass => "pass",
                ChiSquareOutcome::Fail => "FAIL",
                ChiSquareOutcome::InsufficientSamples => "insufficient samples",
                ChiSquareOutcome::StatisticOnly => "statistic only",
            };
            out.push_str(&format!(
                "  {:>3}  {:>10.3}  {:>2}  {:>8}  {}\n",
                check.position, check.chi_square.statistic, check.chi_square.df, critical, outcome
            ));
        }
        out.push_str("author visibility:\n");
        out.push_str("  id                p_appear  observed  tolerance  flag\n");
        for check in &self.authors {
            out.push_str(&format!(
                "  {:<16}  {:>8.4}  {:>8.4}  {:>9.4}  {}\n",
                check.id,
                check.expected,
                check.observed,
                check.tolerance,
                if check.flagged { "FLAGGED" } else { "ok" }
            ));
        }
        out.push_str(&format!("constraint violations: {}\n", self.violation_count));
        for v in &self.violations {
            out.push_str(&format!(
                "  frame {}: {} pair ({}, {})\n",
                v.frame_index, v.kind, v.pair.0, v.pair.1
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::parse_manifest;
    use crate::permute::{build_schedule, sample_frames, Frame, OrderMode, SplitMix64};

    fn manifest(n: usize) -> AuthorManifest {
        let ids = ["a", "b", "c", "d", "e", "f"];
        let authors: Vec<String> = ids[..n]
            .iter()
            .map(|id| {
                format!(
                    r#"{{"id": "{id}", "display_name": "{up} Name", "given_name": "{up}", "family_name": "Name"}}"#,
                    up = id.to_uppercase()
                )
            })
            .collect();
        parse_manifest(&format!(
            r#"{{"title": "t", "authors": [{}]}}"#,
            authors.join(", ")
        ))
        .unwrap()
    }

    #[test]
    fn single_frame_counts_land_in_the_right_cells() {
        let m = manifest(2);
        let schedule = Schedule {
            mode: ScheduleMode::Fixed,
            fps: 12.0,
            loop_enabled: true,
            autoplay: true,
            controls: true,
            seed: 0,
            frames: vec![Frame {
                visible: vec!["a".into(), "b".into()],
            }],
        };
        let h = position_histogram(&schedule, &m).unwrap();
        assert_eq!(h.counts[0][0], 1);
        assert_eq!(h.counts[1][1], 1);
        assert_eq!(h.counts[0][1], 0);
        assert_eq!(h.total_frames, 1);
    }

    #[test]
    fn enumeration_histogram_is_exactly_uniform() {
        // Each author occupies each position (n-1)! times over all n! frames.
        let m = manifest(3);
        let schedule = build_schedule(&m, OrderMode::Shuffle).unwrap();
        let h = position_histogram(&schedule, &m).unwrap();
        for row in &h.counts {
            for &cell in row {
                assert_eq!(cell, 2);
            }
        }
    }

    #[test]
    fn unknown_author_in_frame_is_an_error() {
        let m = manifest(2);
        let schedule = Schedule {
            mode: ScheduleMode::Fixed,
            fps: 12.0,
            loop_enabled: true,
            autoplay: true,
            controls: true,
            seed: 0,
            frames: vec![Frame {
                visible: vec!["ghost".into()],
            }],
        };
        assert!(matches!(
            position_histogram(&schedule, &m),
            Err(Error::UnknownAuthor { id }) if id == "ghost"
        ));
    }

    #[test]
    fn first_position_is_always_occupied_without_constraints() {
        let m = manifest(4);
        let schedule = build_schedule(&m, OrderMode::Shuffle).unwrap();
        let h = position_histogram(&schedule, &m).unwrap();
        let column0: u64 = (0..4).map(|a| h.counts[a][0]).sum();
        assert_eq!(column0, h.total_frames);
    }

    #[test]
    fn chi_square_zero_iff_uniform() {
        let result = chi_square_uniform(&[100, 100, 100, 100]).unwrap();
        assert_eq!(result.statistic, 0.0);
        assert_eq!(result.outcome, ChiSquareOutcome::Pass);
        let skewed = chi_square_uniform(&[99, 100, 101, 100]).unwrap();
        assert!(skewed.statistic > 0.0);
    }

    #[test]
    fn chi_square_formula_values() {
        // (50² + 50²)/50 = 100 > 10.828 at df 1.
        let fail = chi_square_uniform(&[100, 0]).unwrap();
        assert_eq!(fail.statistic, 100.0);
        assert_eq!(fail.critical, Some(10.828));
        assert_eq!(fail.outcome, ChiSquareOutcome::Fail);
        // (5² + 5²)/50 = 1.0 ≤ 10.828.
        let pass = chi_square_uniform(&[55, 45]).unwrap();
        assert_eq!(pass.statistic, 1.0);
        assert_eq!(pass.outcome, ChiSquareOutcome::Pass);
    }

    #[test]
    fn chi_square_needs_two_categories() {
        assert!(matches!(
            chi_square_uniform(&[7]),
            Err(Error::ChiSquareCategories { categories: 1 })
        ));
        assert!(chi_square_uniform(&[]).is_err());
    }

    #[test]
    fn chi_square_low_counts_are_inapplicable() {
        let result = chi_square_uniform(&[2, 2, 2]).unwrap();
        assert_eq!(result.outcome, ChiSquareOutcome::InsufficientSamples);
        assert_eq!(result.statistic, 0.0);
        let empty = chi_square_uniform(&[0, 0]).unwrap();
        assert_eq!(empty.statistic, 0.0);
    }

    #[test]
    fn chi_square_beyond_table_reports_statistic_only() {
        let counts = vec![100u64; 12];
        let result = chi_square_uniform(&counts).unwrap();
        assert_eq!(result.df, 11);
        assert_eq!(result.critical, None);
        assert_eq!(result.outcome, ChiSquareOutcome::StatisticOnly);
    }

    #[test]
    fn enumeration_audit_is_clean() {
        let m = manifest(4);
        let schedule = build_schedule(&m, OrderMode::Shuffle).unwrap();
        let report = audit(&schedule, &m).unwrap();
        assert_eq!(report.violation_count, 0);
        for check in &report.positions {
            assert_eq!(check.chi_square.statistic, 0.0);
        }
        for check in &report.authors {
            assert!(!check.flagged);
            assert_eq!(check.observed, 1.0);
        }
        assert_eq!(report.mode, ScheduleMode::Enumeration);
    }

    #[test]
    fn injected_violation_is_counted_and_named() {
        let mut m = manifest(3);
        m.constraints.never_together = vec![("a".into(), "b".into())];
        let mut schedule = build_schedule(&m, OrderMode::Shuffle).unwrap();
        schedule.frames.push(Frame {
            visible: vec!["a".into(), "c".into(), "b".into()],
        });
        let bad_index = schedule.frames.len() - 1;
        let report = audit(&schedule, &m).unwrap();
        assert_eq!(report.violation_count, 1);
        assert_eq!(report.violations[0].frame_index, bad_index);
        assert_eq!(report.violations[0].pair, ("a".to_string(), "b".to_string()));
        assert_eq!(report.violations[0].kind, "never_together");
    }

    #[test]
    fn half_visible_author_stays_inside_three_sigma() {
        let mut m = manifest(3);
        m.authors[1].p_appear = 0.5;
        let mut rng = SplitMix64::new(42);
        let frames = sample_frames(&m, 10_000, &mut rng).unwrap();
        let schedule = Schedule {
            mode: ScheduleMode::Sampling,
            fps: 12.0,
            loop_enabled: true,
            autoplay: true,
            controls: true,
            seed: 42,
            frames,
        };
        let report = audit(&schedule, &m).unwrap();
        let b = report.authors.iter().find(|c| c.id == "b").unwrap();
        assert!(
            !b.flagged,
            "observed {} expected {} tolerance {}",
            b.observed, b.expected, b.tolerance
        );
        assert!((b.observed - 0.5).abs() < 0.05);
    }

    #[test]
    fn report_serializes_both_ways() {
        let m = manifest(3);
        let schedule = build_schedule(&m, OrderMode::Shuffle).unwrap();
        let report = audit(&schedule, &m).unwrap();
        let json = report.to_json();
        assert!(json.contains("\"violation_count\": 0"));
        let table = report.to_table();
        assert!(table.contains("constraint violations: 0"));
        assert!(table.contains("mode=enumeration"));
    }
}
