//! Animated author-order toolchain.
//!
//! Everything needed to turn an author manifest into a PDF whose author
//! block cycles through constraint-respecting permutations at viewing time:
//!
//! - [`manifest`] — parse, validate, and canonically serialize the input manifest.
//! - [`permute`] — seeded shuffling, permutation enumeration, and schedule assembly.
//! - [`layout`] — Helvetica-metric text measurement and centered line layout.
//! - [`pdfgen`] — animated/static PDF emission, LaTeX bundle emission, and a
//!   structural self-inspector used as the test oracle.
//! - [`cite`] — BibTeX-subset parsing and rotating "X et al." citations.
//! - [`verify`] — position histograms, chi-square uniformity checks, audits.

pub mod cite;
pub mod error;
pub mod layout;
pub mod manifest;
pub mod pdfgen;
pub mod permute;
pub mod verify;

pub use cite::{parse_bib, rotate_citation, serialize_bib, shuffle_bib, BibEntry};
pub use error::{Error, Result};
pub use layout::{layout_frame, measure_text, RenderedFrame, TextRun};
pub use manifest::{
    parse_manifest, serialize_manifest, validate, Author, AuthorManifest, ConstraintSet, Finding,
    Playback, Severity, Style, ValidationReport,
};
pub use pdfgen::{
    build_animated_pdf, build_static_pdf, emit_latex, inspect_pdf, AnimationPlan, AnimationReport,
    PdfConfig, StartMode,
};
pub use permute::{
    build_schedule, enumerate_valid, factorial_checked, find_violation, is_valid_frame,
    parse_schedule, sample_frames, sample_visible, serialize_schedule, shuffle, Frame, OrderMode,
    Schedule, ScheduleMode, SplitMix64, Violation, ViolationKind, ENUMERATION_GUARD,
};
pub use verify::{audit, chi_square_uniform, position_histogram, AuditReport, ChiSquareOutcome,
    ChiSquareResult, PositionHistogram,
};
