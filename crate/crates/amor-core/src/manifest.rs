//! The author manifest: the single input document driving everything downstream.
//!
//! Manifests are JSON. Parsing distinguishes three failure classes — syntax
//! (malformed JSON, position-reporting), schema (unknown field, wrong type),
//! and semantic (duplicate id, dangling constraint reference). Serialization
//! is canonical: sorted keys, explicit defaults, so `serialize` is a fixed
//! point after one application.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One author entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Author {
    /// Stable key used by constraints and schedules.
    pub id: String,
    /// Full name as rendered on the page.
    pub display_name: String,
    pub given_name: String,
    pub family_name: String,
    /// 1-based indices into the manifest affiliation table.
    #[serde(default)]
    pub affiliations: Vec<usize>,
    /// Probability in [0, 1] that this author is visible in a sampled frame.
    #[serde(default = "default_p_appear")]
    pub p_appear: f64,
}

fn default_p_appear() -> f64 {
    1.0
}

/// Conflict-of-interest constraints over unordered author-id pairs.
///
/// `never_together`: at most one of the pair is visible per frame.
/// `never_adjacent`: both may be visible but never in consecutive positions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSet {
    #[serde(default)]
    pub never_together: Vec<(String, String)>,
    #[serde(default)]
    pub never_adjacent: Vec<(String, String)>,
}

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        self.never_together.is_empty() && self.never_adjacent.is_empty()
    }

    /// Orient each pair lexicographically, then sort and dedup the lists.
    fn normalize(&mut self) {
        for list in [&mut self.never_together, &mut self.never_adjacent] {
            for pair in list.iter_mut() {
                if pair.0 > pair.1 {
                    std::mem::swap(&mut pair.0, &mut pair.1);
                }
            }
            list.sort();
            list.dedup();
        }
    }
}

/// Render style for the author line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Style {
    pub font_size_pt: f64,
    pub separator: String,
    pub page_width_pt: f64,
    pub page_height_pt: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            font_size_pt: 12.0,
            separator: ", ".to_string(),
            page_width_pt: 612.0,
            page_height_pt: 792.0,
        }
    }
}

/// Default playback parameters for generated schedules and PDFs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Playback {
    pub fps: f64,
    pub frame_budget: usize,
    #[serde(rename = "loop")]
    pub loop_enabled: bool,
    pub autoplay: bool,
    pub controls: bool,
    pub seed: u64,
}

impl Default for Playback {
    fn default() -> Self {
        Playback {
            fps: 12.0,
            frame_budget: 120,
            loop_enabled: true,
            autoplay: true,
            controls: true,
            seed: 0,
        }
    }
}

/// The parsed author manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuthorManifest {
    pub title: String,
    #[serde(default)]
    pub affiliations: Vec<String>,
    pub authors: Vec<Author>,
    #[serde(default)]
    pub constraints: ConstraintSet,
    #[serde(default)]
    pub style: Style,
    #[serde(default)]
    pub playback: Playback,
}

impl AuthorManifest {
    /// Position of an author id in the canonical input order.
    pub fn author_index(&self, id: &str) -> Option<usize> {
        self.authors.iter().position(|a| a.id == id)
    }

    pub fn author(&self, id: &str) -> Option<&Author> {
        self.authors.iter().find(|a| a.id == id)
    }
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// One validation finding: what broke and where.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    /// Path of the offending value, e.g. `authors[2].p_appear`.
    pub path: String,
    pub message: String,
}

/// Outcome of [`validate`]: zero findings iff all manifest invariants hold.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }

    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Error,
            path: path.into(),
            message: message.into(),
        });
    }
}

/// Parse a UTF-8 JSON document into a manifest, applying documented defaults
/// and normalizing constraint pairs to lexicographic order.
pub fn parse_manifest(text: &str) -> Result<AuthorManifest> {
    let mut manifest: AuthorManifest = serde_json::from_str(text).map_err(|e| {
        if e.classify() == serde_json::error::Category::Data {
            Error::ManifestSchema {
                message: e.to_string(),
            }
        } else {
            Error::ManifestSyntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })?;
    manifest.constraints.normalize();

    let mut seen = std::collections::HashSet::new();
    for author in &manifest.authors {
        if !seen.insert(author.id.as_str()) {
            return Err(Error::ManifestSemantic {
                message: format!("duplicate author id {:?}", author.id),
            });
        }
    }
    for (set_name, list) in [
        ("never_together", &manifest.constraints.never_together),
        ("never_adjacent", &manifest.constraints.never_adjacent),
    ] {
        for (a, b) in list {
            for id in [a, b] {
                if manifest.author_index(id).is_none() {
                    return Err(Error::ManifestSemantic {
                        message: format!(
                            "constraint set {set_name} references unknown author id {id:?}"
                        ),
                    });
                }
            }
        }
    }
    Ok(manifest)
}

/// Check every manifest invariant; findings are data, not failures.
pub fn validate(manifest: &AuthorManifest) -> ValidationReport {
    let mut report = ValidationReport::default();

    if manifest.authors.is_empty() {
        report.error("authors", "author list must not be empty");
    }
    let mut seen = std::collections::HashSet::new();
    for (i, author) in manifest.authors.iter().enumerate() {
        if author.id.is_empty() {
            report.error(format!("authors[{i}].id"), "author id must not be empty");
        }
        if !seen.insert(author.id.as_str()) {
            report.error(
                format!("authors[{i}].id"),
                format!("duplicate author id {:?}", author.id),
            );
        }
        if !(0.0..=1.0).contains(&author.p_appear) {
            report.error(
                format!("authors[{i}].p_appear"),
                format!("p_appear must be in [0, 1], got {}", author.p_appear),
            );
        }
        for (j, &affil) in author.affiliations.iter().enumerate() {
            if affil == 0 || affil > manifest.affiliations.len() {
                report.error(
                    format!("authors[{i}].affiliations[{j}]"),
                    format!(
                        "affiliation index {affil} out of range 1..={}",
                        manifest.affiliations.len()
                    ),
                );
            }
        }
    }

    for (set_name, list) in [
        ("never_together", &manifest.constraints.never_together),
        ("never_adjacent", &manifest.constraints.never_adjacent),
    ] {
        for (k, (a, b)) in list.iter().enumerate() {
            if a == b {
                report.error(
                    format!("constraints.{set_name}[{k}]"),
                    format!("self-pair ({a:?}, {a:?}) is not allowed"),
                );
            }
            for id in [a, b] {
                if manifest.author_index(id).is_none() {
                    report.error(
                        format!("constraints.{set_name}[{k}]"),
                        format!("unknown author id {id:?}"),
                    );
                }
            }
        }
    }
    for pair in &manifest.constraints.never_together {
        if manifest.constraints.never_adjacent.contains(pair) {
            report.error(
                "constraints",
                format!(
                    "pair ({:?}, {:?}) appears in both never_together and never_adjacent",
                    pair.0, pair.1
                ),
            );
        }
    }

    if manifest.playback.frame_budget < 1 {
        report.error("playback.frame_budget", "frame budget must be at least 1");
    }
    if manifest.playback.fps <= 0.0 || manifest.playback.fps.is_nan() {
        report.error(
            "playback.fps",
            format!("fps must be positive, got {}", manifest.playback.fps),
        );
    }

    report
}

/// Serialize a manifest canonically: sorted keys, explicit defaults, 2-space
/// indent, trailing newline. `parse_manifest(serialize_manifest(m)) == m`.
pub fn serialize_manifest(manifest: &AuthorManifest) -> String {
    // serde_json's Map is a BTreeMap, so going through Value sorts all keys.
    let value = serde_json::to_value(manifest).expect("manifest is always serializable");
    let mut out = serde_json::to_string_pretty(&value).expect("valid JSON value");
    out.push('\n');
    out
}
