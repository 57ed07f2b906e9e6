//! Text measurement and author-line layout.
//!
//! A single standard font (Helvetica, WinAnsi encoding) with bundled advance
//! widths makes measurement a purely additive, bit-stable function: no
//! kerning, no ligatures, no font files. The width table ships as a data
//! file of `code width` pairs; see `data/helvetica_widths.txt`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::manifest::AuthorManifest;
use crate::permute::Frame;

/// Baseline of the title line, measured down from the top edge.
pub const TITLE_BASELINE_DROP_PT: f64 = 72.0;
/// Baseline of the author line, measured down from the top edge.
pub const AUTHOR_BASELINE_DROP_PT: f64 = 120.0;
/// Superscript font size as a fraction of the body size.
pub const SUPERSCRIPT_SCALE: f64 = 0.7;
/// Superscript baseline raise as a fraction of the body size.
pub const SUPERSCRIPT_RAISE: f64 = 0.33;

static WIDTHS: OnceLock<[u16; 256]> = OnceLock::new();

fn widths() -> &'static [u16; 256] {
    WIDTHS.get_or_init(|| {
        let mut table = [0u16; 256];
        for line in include_str!("../data/helvetica_widths.txt").lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let code: usize = parts.next().and_then(|s| s.parse().ok()).expect("code");
            let width: u16 = parts.next().and_then(|s| s.parse().ok()).expect("width");
            table[code] = width;
        }
        table
    })
}

// WinAnsi positions 0x80..0x9F that differ from Latin-1.
const WINANSI_HIGH: [(u8, char); 27] = [
    (0x80, '\u{20AC}'),
    (0x82, '\u{201A}'),
    (0x83, '\u{0192}'),
    (0x84, '\u{201E}'),
    (0x85, '\u{2026}'),
    (0x86, '\u{2020}'),
    (0x87, '\u{2021}'),
    (0x88, '\u{02C6}'),
    (0x89, '\u{2030}'),
    (0x8A, '\u{0160}'),
    (0x8B, '\u{2039}'),
    (0x8C, '\u{0152}'),
    (0x8E, '\u{017D}'),
    (0x91, '\u{2018}'),
    (0x92, '\u{2019}'),
    (0x93, '\u{201C}'),
    (0x94, '\u{201D}'),
    (0x95, '\u{2022}'),
    (0x96, '\u{2013}'),
    (0x97, '\u{2014}'),
    (0x98, '\u{02DC}'),
    (0x99, '\u{2122}'),
    (0x9A, '\u{0161}'),
    (0x9B, '\u{203A}'),
    (0x9C, '\u{0153}'),
    (0x9E, '\u{017E}'),
    (0x9F, '\u{0178}'),
];

/// WinAnsi code for a character, if the font has a glyph for it.
pub(crate) fn winansi_encode_char(c: char) -> Option<u8> {
    let code = c as u32;
    let byte = match code {
        0x20..=0x7E => code as u8,
        0xA0..=0xFF => code as u8,
        _ => WINANSI_HIGH.iter().find(|(_, ch)| *ch == c)?.0,
    };
    (widths()[byte as usize] > 0).then_some(byte)
}

/// Character for a WinAnsi code emitted by this toolchain.
pub(crate) fn winansi_decode_byte(b: u8) -> Option<char> {
    match b {
        0x20..=0x7E => Some(b as char),
        0xA0..=0xFF => char::from_u32(b as u32),
        _ => WINANSI_HIGH
            .iter()
            .find(|(byte, _)| *byte == b)
            .map(|(_, ch)| *ch),
    }
}

pub(crate) fn winansi_encode(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| winansi_encode_char(c).ok_or(Error::UnmappableChar { ch: c }))
        .collect()
}

/// Width in points of `text` at `size_pt`: the sum of per-character
/// Helvetica advance widths, `width/1000 × size`, with no kerning.
pub fn measure_text(text: &str, size_pt: f64) -> Result<f64> {
    let table = widths();
    let mut total = 0.0;
    for c in text.chars() {
        let byte = winansi_encode_char(c).ok_or(Error::UnmappableChar { ch: c })?;
        total += f64::from(table[byte as usize]) * size_pt / 1000.0;
    }
    Ok(total)
}

/// One positioned glyph string.
#[derive(Debug, Clone, PartialEq)]
pub struct TextRun {
    pub text: String,
    /// Horizontal offset from the page's left edge.
    pub x_pt: f64,
    /// Baseline height from the page's bottom edge.
    pub y_pt: f64,
    pub size_pt: f64,
    pub superscript: bool,
}

/// A frame laid out as a single centered line of runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedFrame {
    pub runs: Vec<TextRun>,
    pub line_width_pt: f64,
}

impl RenderedFrame {
    /// All run texts concatenated, superscripts included — what a reader
    /// of the PDF content stream sees.
    pub fn full_text(&self) -> String {
        self.runs.iter().map(|r| r.text.as_str()).collect()
    }

    /// Run texts with superscripts skipped: the display names joined by
    /// the style separator.
    pub fn body_text(&self) -> String {
        self.runs
            .iter()
            .filter(|r| !r.superscript)
            .map(|r| r.text.as_str())
            .collect()
    }
}

/// Lay out one frame: author display names in frame order, each followed by
/// its superscript affiliation indices (comma-joined) and the separator
/// (except after the last), centered on the page.
pub fn layout_frame(frame: &Frame, manifest: &AuthorManifest) -> Result<RenderedFrame> {
    let style = &manifest.style;
    let body = style.font_size_pt;
    let baseline = style.page_height_pt - AUTHOR_BASELINE_DROP_PT;
    let sup_size = SUPERSCRIPT_SCALE * body;
    let sup_baseline = baseline + SUPERSCRIPT_RAISE * body;

    // text, size, baseline, superscript flag
    let mut parts: Vec<(String, f64, f64, bool)> = Vec::new();
    for (k, id) in frame.visible.iter().enumerate() {
        let author = manifest
            .author(id)
            .ok_or_else(|| Error::UnknownAuthor { id: id.clone() })?;
        parts.push((author.display_name.clone(), body, baseline, false));
        if !author.affiliations.is_empty() {
            let indices = author
                .affiliations
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",");
            parts.push((indices, sup_size, sup_baseline, true));
        }
        if k + 1 < frame.visible.len() {
            parts.push((style.separator.clone(), body, baseline, false));
        }
    }

    let mut line_width = 0.0;
    let mut measured = Vec::with_capacity(parts.len());
    for (text, size, y, sup) in parts {
        let width = measure_text(&text, size)?;
        line_width += width;
        measured.push((text, size, y, sup, width));
    }
    if line_width > style.page_width_pt {
        return Err(Error::LineOverflow {
            line_width_pt: line_width,
            page_width_pt: style.page_width_pt,
        });
    }

    let mut x = (style.page_width_pt - line_width) / 2.0;
    let mut runs = Vec::with_capacity(measured.len());
    for (text, size_pt, y_pt, superscript, width) in measured {
        runs.push(TextRun {
            text,
            x_pt: x,
            y_pt,
            size_pt,
            superscript,
        });
        x += width;
    }
    Ok(RenderedFrame {
        runs,
        line_width_pt: line_width,
    })
}
