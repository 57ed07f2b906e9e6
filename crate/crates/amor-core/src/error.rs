//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the toolchain.
#[derive(Debug, Error)]
pub enum Error {
    /// The manifest document is not well-formed JSON.
    #[error("manifest syntax error at line {line}, column {column}: {message}")]
    ManifestSyntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// The manifest is valid JSON but does not match the schema
    /// (unknown field, wrong type, missing required field).
    #[error("manifest schema violation: {message}")]
    ManifestSchema { message: String },

    /// The manifest matches the schema but breaks a referential rule
    /// (duplicate author id, constraint naming an unknown id).
    #[error("manifest semantic violation: {message}")]
    ManifestSemantic { message: String },

    /// Full enumeration was requested for an author list whose permutation
    /// count exceeds the enumeration guard.
    #[error("cannot enumerate permutations of {n} authors: {reason}")]
    EnumerationGuard { n: usize, reason: String },

    /// Rejection sampling could not produce a constraint-satisfying frame.
    #[error(
        "infeasible constraints: gave up after {attempts} attempts on frame {frame_index}; \
         last violated pair ({0}, {1})",
        pair.0,
        pair.1
    )]
    InfeasibleConstraints {
        pair: (String, String),
        frame_index: usize,
        attempts: usize,
    },

    /// A frame or schedule referenced an author id missing from the manifest.
    #[error("unknown author id {id:?}")]
    UnknownAuthor { id: String },

    /// Text contains a character outside the WinAnsi-representable subset.
    #[error("character {ch:?} (U+{code:04X}) cannot be encoded as WinAnsi text", code = *ch as u32)]
    UnmappableChar { ch: char },

    /// The author line is wider than the page.
    #[error("author line overflows the page: line {line_width_pt:.3}pt, page {page_width_pt:.3}pt")]
    LineOverflow {
        line_width_pt: f64,
        page_width_pt: f64,
    },

    /// Rendered frame count does not match the schedule.
    #[error("rendered frame count {rendered} does not match schedule frame count {scheduled}")]
    MismatchedInputs { rendered: usize, scheduled: usize },

    /// A schedule with no frames cannot be rendered.
    #[error("schedule has no frames")]
    EmptySchedule,

    /// A generated PDF failed structural inspection.
    #[error("malformed PDF structure at byte {offset}: {message}")]
    PdfStructure { offset: usize, message: String },

    /// A schedule document failed to parse.
    #[error("schedule parse error: {message}")]
    ScheduleParse { message: String },

    /// A bibliography document failed to parse.
    #[error("bibliography parse error at line {line}: {message}")]
    BibParse { line: usize, message: String },

    /// A chi-square test was requested over fewer than two categories.
    #[error("chi-square test needs at least 2 categories, got {categories}")]
    ChiSquareCategories { categories: usize },

    /// Filesystem failure while emitting output.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
