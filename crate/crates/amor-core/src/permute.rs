//! Permutation stream generation and schedule assembly.
//!
//! The randomness anchor is SplitMix64 with plain modulo reduction, chosen so
//! that any implementation in any language can reproduce a schedule bit-exactly
//! from (manifest, seed). Schedules come in two flavors: full enumeration of
//! constraint-valid permutations (shuffled once so loop playback is not
//! alphabetically biased) when the space fits the frame budget, and rejection
//! sampling against the constraint set otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifest::{AuthorManifest, ConstraintSet};

/// Full enumeration is refused above this many permutations.
pub const ENUMERATION_GUARD: u64 = 1_000_000;

/// Rejection-sampling attempt cap per frame.
const MAX_FRAME_ATTEMPTS: usize = 1000;

/// Re-sample attempts before the deterministic empty-set fallback.
const MAX_EMPTY_RESAMPLES: usize = 100;

/// Deterministic 64-bit PRNG (SplitMix64).
///
/// The step is fixed bit-for-bit: `state += 0x9E3779B97F4A7C15`, then the
/// output is the xorshift-multiply finalizer of the new state. Identical
/// seeds yield identical streams everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Advance the state and return the next 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, 1)` from the top 53 bits of the next draw,
    /// so the conversion to f64 is exact.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// One animation frame: an ordered, constraint-satisfying permutation of a
/// visible subset of the manifest authors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frame {
    pub visible: Vec<String>,
}

/// How the frames of a schedule were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    Enumeration,
    Sampling,
    AlphaGiven,
    AlphaFamily,
    Fixed,
}

/// Ordering requested by the caller. `Shuffle` selects enumeration or
/// sampling automatically; the rest produce a single static frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    Shuffle,
    AlphaGiven,
    AlphaFamily,
    Fixed,
}

/// Ordered frame sequence plus playback parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub mode: ScheduleMode,
    pub fps: f64,
    #[serde(rename = "loop")]
    pub loop_enabled: bool,
    pub autoplay: bool,
    pub controls: bool,
    pub seed: u64,
    pub frames: Vec<Frame>,
}

impl Schedule {
    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }
}

/// Exact `n!` when it fits in 64 unsigned bits, `None` otherwise.
/// Never wraps.
pub fn factorial_checked(n: u64) -> Option<u64> {
    (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Fisher-Yates: for `i` from `len-1` down to 1, swap `items[i]` with
/// `items[j]` where `j = next_u64() mod (i+1)`. The tiny modulo bias is
/// accepted in exchange for a reduction every implementation gets right.
pub fn shuffle<T>(rng: &mut SplitMix64, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// A constraint violated by a concrete frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pair: (String, String),
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NeverTogether,
    NeverAdjacent,
}

/// First constraint the frame breaks, if any.
pub fn find_violation(frame: &Frame, constraints: &ConstraintSet) -> Option<Violation> {
    let position = |id: &str| frame.visible.iter().position(|v| v == id);
    for pair in &constraints.never_together {
        if position(&pair.0).is_some() && position(&pair.1).is_some() {
            return Some(Violation {
                pair: pair.clone(),
                kind: ViolationKind::NeverTogether,
            });
        }
    }
    for pair in &constraints.never_adjacent {
        if let (Some(a), Some(b)) = (position(&pair.0), position(&pair.1)) {
            if a.abs_diff(b) == 1 {
                return Some(Violation {
                    pair: pair.clone(),
                    kind: ViolationKind::NeverAdjacent,
                });
            }
        }
    }
    None
}

/// True iff both constraint families are satisfied.
pub fn is_valid_frame(frame: &Frame, constraints: &ConstraintSet) -> bool {
    find_violation(frame, constraints).is_none()
}

/// Draw the set of visible authors for one frame, in canonical input order.
///
/// Each author is included independently with probability `p_appear`
/// (threshold test on a uniform draw). Then, for every `never_together`
/// pair with both members present, one member is removed: draw mod 2 equal
/// to 0 drops the lexicographically smaller id, 1 drops the larger. An
/// empty result is re-sampled up to 100 times, after which all authors are
/// forced visible and the exclusions re-applied deterministically by
/// dropping the lexicographically larger member of each pair.
pub fn sample_visible(rng: &mut SplitMix64, manifest: &AuthorManifest) -> Vec<String> {
    for _ in 0..=MAX_EMPTY_RESAMPLES {
        let mut visible: Vec<&str> = Vec::with_capacity(manifest.authors.len());
        for author in &manifest.authors {
            if rng.next_unit() < author.p_appear {
                visible.push(author.id.as_str());
            }
        }
        for (small, large) in &manifest.constraints.never_together {
            if visible.iter().any(|v| v == small) && visible.iter().any(|v| v == large) {
                let drop = if rng.next_u64().is_multiple_of(2) { small } else { large };
                visible.retain(|v| v != drop);
            }
        }
        if !visible.is_empty() {
            return visible.into_iter().map(String::from).collect();
        }
    }

    let mut visible: Vec<&str> = manifest.authors.iter().map(|a| a.id.as_str()).collect();
    for (small, large) in &manifest.constraints.never_together {
        if visible.iter().any(|v| v == small) && visible.iter().any(|v| v == large) {
            visible.retain(|v| v != large);
        }
    }
    visible.into_iter().map(String::from).collect()
}

/// All permutations of the full author list, in lexicographic order of
/// author indices, filtered by the constraint set. `p_appear` is treated
/// as 1 here; `never_together` pairs therefore exclude every full
/// permutation and belong to the sampling path instead.
pub fn enumerate_valid(manifest: &AuthorManifest) -> Result<Vec<Frame>> {
    let n = manifest.authors.len();
    match factorial_checked(n as u64) {
        Some(count) if count <= ENUMERATION_GUARD => {}
        Some(count) => {
            return Err(Error::EnumerationGuard {
                n,
                reason: format!("{count} permutations exceed the {ENUMERATION_GUARD} guard"),
            })
        }
        None => {
            return Err(Error::EnumerationGuard {
                n,
                reason: "permutation count overflows 64 bits".to_string(),
            })
        }
    }

    let mut frames = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let frame = Frame {
            visible: perm
                .iter()
                .map(|&i| manifest.authors[i].id.clone())
                .collect(),
        };
        if is_valid_frame(&frame, &manifest.constraints) {
            frames.push(frame);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(frames)
}

/// Advance to the next lexicographic permutation; false after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Draw `count` constraint-valid frames by rejection sampling: each frame is
/// a shuffled visible subset, re-drawn until valid (cap 1000 attempts).
pub fn sample_frames(
    manifest: &AuthorManifest,
    count: usize,
    rng: &mut SplitMix64,
) -> Result<Vec<Frame>> {
    (0..count).map(|k| sample_one(manifest, rng, k)).collect()
}

fn sample_one(manifest: &AuthorManifest, rng: &mut SplitMix64, frame_index: usize) -> Result<Frame> {
    let mut last_violation: Option<Violation> = None;
    for _ in 0..MAX_FRAME_ATTEMPTS {
        let mut ids = sample_visible(rng, manifest);
        shuffle(rng, &mut ids);
        let frame = Frame { visible: ids };
        match find_violation(&frame, &manifest.constraints) {
            None => return Ok(frame),
            Some(v) => last_violation = Some(v),
        }
    }
    let pair = last_violation
        .map(|v| v.pair)
        .expect("attempt cap exhausted implies a recorded violation");
    Err(Error::InfeasibleConstraints {
        pair,
        frame_index,
        attempts: MAX_FRAME_ATTEMPTS,
    })
}

/// Assemble the playback schedule for a manifest.
///
/// `Shuffle` picks the strategy: when every author always appears, no
/// `never_together` pair exists, and the valid-permutation count fits the
/// frame budget, the schedule is the full enumeration shuffled once with the
/// seed (each loop cycle shows every valid permutation exactly once).
/// Otherwise `frame_budget` frames are rejection-sampled. The alphabetical
/// and fixed modes produce a single static frame; `never_together` pairs are
/// resolved there by dropping the lexicographically larger member, and a
/// sort order that breaks `never_adjacent` is reported as infeasible rather
/// than silently reordered.
pub fn build_schedule(manifest: &AuthorManifest, mode: OrderMode) -> Result<Schedule> {
    let frames = match mode {
        OrderMode::Shuffle => return shuffled_schedule(manifest),
        OrderMode::AlphaGiven => vec![static_frame(manifest, |m, a, b| {
            m.authors[a].given_name.cmp(&m.authors[b].given_name)
        })?],
        OrderMode::AlphaFamily => vec![static_frame(manifest, |m, a, b| {
            m.authors[a].family_name.cmp(&m.authors[b].family_name)
        })?],
        OrderMode::Fixed => vec![static_frame(manifest, |_, a, b| a.cmp(&b))?],
    };
    let schedule_mode = match mode {
        OrderMode::AlphaGiven => ScheduleMode::AlphaGiven,
        OrderMode::AlphaFamily => ScheduleMode::AlphaFamily,
        OrderMode::Fixed => ScheduleMode::Fixed,
        OrderMode::Shuffle => unreachable!(),
    };
    Ok(with_playback(manifest, schedule_mode, frames))
}

fn shuffled_schedule(manifest: &AuthorManifest) -> Result<Schedule> {
    let playback = &manifest.playback;
    let n = manifest.authors.len();
    let always_all_visible = manifest.authors.iter().all(|a| a.p_appear >= 1.0);
    let enumerable = matches!(
        factorial_checked(n as u64),
        Some(count) if count <= ENUMERATION_GUARD
    );

    if always_all_visible && manifest.constraints.never_together.is_empty() && enumerable {
        let mut frames = enumerate_valid(manifest)?;
        if !frames.is_empty() && frames.len() <= playback.frame_budget {
            let mut rng = SplitMix64::new(playback.seed);
            shuffle(&mut rng, &mut frames);
            return Ok(with_playback(manifest, ScheduleMode::Enumeration, frames));
        }
    }

    let mut rng = SplitMix64::new(playback.seed);
    let frames = sample_frames(manifest, playback.frame_budget, &mut rng)?;
    Ok(with_playback(manifest, ScheduleMode::Sampling, frames))
}

fn static_frame(
    manifest: &AuthorManifest,
    cmp: impl Fn(&AuthorManifest, usize, usize) -> std::cmp::Ordering,
) -> Result<Frame> {
    let mut order: Vec<usize> = (0..manifest.authors.len()).collect();
    order.sort_by(|&a, &b| cmp(manifest, a, b));
    let mut visible: Vec<String> = order
        .into_iter()
        .map(|i| manifest.authors[i].id.clone())
        .collect();
    for (small, large) in &manifest.constraints.never_together {
        if visible.iter().any(|v| v == small) && visible.iter().any(|v| v == large) {
            visible.retain(|v| v != large);
        }
    }
    let frame = Frame { visible };
    if let Some(v) = find_violation(&frame, &manifest.constraints) {
        return Err(Error::InfeasibleConstraints {
            pair: v.pair,
            frame_index: 0,
            attempts: 1,
        });
    }
    Ok(frame)
}

fn with_playback(manifest: &AuthorManifest, mode: ScheduleMode, frames: Vec<Frame>) -> Schedule {
    let p = &manifest.playback;
    Schedule {
        mode,
        fps: p.fps,
        loop_enabled: p.loop_enabled,
        autoplay: p.autoplay,
        controls: p.controls,
        seed: p.seed,
        frames,
    }
}

/// Canonical schedule JSON: sorted keys, 2-space indent, trailing newline.
pub fn serialize_schedule(schedule: &Schedule) -> String {
    let value = serde_json::to_value(schedule).expect("schedule is always serializable");
    let mut out = serde_json::to_string_pretty(&value).expect("valid JSON value");
    out.push('\n');
    out
}

pub fn parse_schedule(text: &str) -> Result<Schedule> {
    serde_json::from_str(text).map_err(|e| Error::ScheduleParse {
        message: e.to_string(),
    })
}
