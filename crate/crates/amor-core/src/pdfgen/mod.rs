//! PDF and LaTeX emission, plus a structural self-inspector.
//!
//! Animation uses the only primitive plain PDF offers: every frame's author
//! block is a form XObject gated by its own optional content group, and a
//! document-level viewer script flips group visibility on a timer. The same
//! strategy the animate LaTeX package uses. Viewing-time randomness comes
//! from the viewer clock: the script derives the start frame from the epoch
//! time at open. Content streams are uncompressed and every byte is
//! deterministic given the inputs and a clock value.

mod inspect;
mod latex;
mod writer;

pub use inspect::{inspect_pdf, AnimationReport, ScriptParams};
pub use latex::emit_latex;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::layout::{measure_text, winansi_encode, RenderedFrame, TextRun, TITLE_BASELINE_DROP_PT};
use crate::manifest::AuthorManifest;
use crate::permute::Schedule;
use writer::{escape_literal, fmt_pt, PdfWriter};

/// Title font size relative to the body size.
pub const TITLE_SCALE: f64 = 1.5;

/// How the viewer picks the first visible frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartMode {
    /// Always start at this frame index.
    Fixed(usize),
    /// Derive the start index from the viewer clock at open time:
    /// `floor(epoch_ms / (1000/fps)) mod frame_count`.
    ViewingTime,
}

/// Deterministic assembly knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdfConfig {
    pub start_mode: StartMode,
    /// Epoch milliseconds stamped into /CreationDate.
    pub clock_ms: u64,
}

impl Default for PdfConfig {
    fn default() -> Self {
        PdfConfig {
            start_mode: StartMode::ViewingTime,
            clock_ms: 0,
        }
    }
}

/// Playback parameters bound to a concrete frame count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnimationPlan {
    pub frame_count: usize,
    pub fps: f64,
    pub loop_enabled: bool,
    pub autoplay: bool,
    pub controls: bool,
    pub start_mode: StartMode,
}

impl AnimationPlan {
    pub fn from_schedule(schedule: &Schedule, start_mode: StartMode) -> Result<Self> {
        if schedule.frames.is_empty() {
            return Err(Error::EmptySchedule);
        }
        Ok(AnimationPlan {
            frame_count: schedule.frames.len(),
            fps: schedule.fps,
            loop_enabled: schedule.loop_enabled,
            autoplay: schedule.autoplay,
            controls: schedule.controls,
            start_mode,
        })
    }
}

/// Emit the animated single-page PDF: static title, one OCG-gated form
/// XObject per frame (exactly one default-visible), and the viewer script
/// driving visibility. Byte-identical output for identical inputs.
pub fn build_animated_pdf(
    schedule: &Schedule,
    rendered: &[RenderedFrame],
    manifest: &AuthorManifest,
    config: &PdfConfig,
) -> Result<Vec<u8>> {
    if rendered.len() != schedule.frames.len() {
        return Err(Error::MismatchedInputs {
            rendered: rendered.len(),
            scheduled: schedule.frames.len(),
        });
    }
    let plan = AnimationPlan::from_schedule(schedule, config.start_mode)?;
    let f = plan.frame_count as u32;
    let style = &manifest.style;
    let (w, h) = (fmt_pt(style.page_width_pt), fmt_pt(style.page_height_pt));

    // Fixed id layout: 1 catalog, 2 pages, 3 page, 4 font, 5 info,
    // 6 content, then F OCGs, F XObjects, script action + stream, and the
    // play/pause widgets with their appearance streams when controls are on.
    let ocg_id = |k: u32| 6 + k;
    let xobj_id = |k: u32| 6 + f + k;
    let action_id = 7 + 2 * f;
    let js_id = 8 + 2 * f;
    let with_widgets = plan.controls && plan.frame_count > 1;
    let play_id = 9 + 2 * f;
    let pause_id = 10 + 2 * f;
    let play_ap_id = 11 + 2 * f;
    let pause_ap_id = 12 + 2 * f;

    let mut catalog = String::from("<< /Type /Catalog /Pages 2 0 R /OCProperties << /OCGs [");
    for k in 1..=f {
        let _ = write!(catalog, "{}{} 0 R", if k > 1 { " " } else { "" }, ocg_id(k));
    }
    let _ = write!(catalog, "] /D << /ON [{} 0 R] /OFF [", ocg_id(1));
    for k in 2..=f {
        let _ = write!(catalog, "{}{} 0 R", if k > 2 { " " } else { "" }, ocg_id(k));
    }
    catalog.push_str("] /Order [");
    for k in 1..=f {
        let _ = write!(catalog, "{}{} 0 R", if k > 1 { " " } else { "" }, ocg_id(k));
    }
    let _ = write!(
        catalog,
        "] >> >> /Names << /JavaScript << /Names [(amor) {action_id} 0 R] >> >>"
    );
    if with_widgets {
        let _ = write!(
            catalog,
            " /AcroForm << /Fields [{play_id} 0 R {pause_id} 0 R] /DA (/F1 9 Tf 0 g) \
             /DR << /Font << /F1 4 0 R >> >> >>"
        );
    }
    catalog.push_str(" >>");

    let mut page = format!(
        "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {w} {h}] \
         /Resources << /Font << /F1 4 0 R >> /XObject << "
    );
    for k in 1..=f {
        let _ = write!(page, "/Fr{k} {} 0 R ", xobj_id(k));
    }
    page.push_str(">> >> /Contents 6 0 R");
    if with_widgets {
        let _ = write!(page, " /Annots [{play_id} 0 R {pause_id} 0 R]");
    }
    page.push_str(" >>");

    let mut content: Vec<u8> = text_ops(std::slice::from_ref(&title_run(manifest)?))?;
    for k in 1..=f {
        content.extend(format!("q /Fr{k} Do Q\n").as_bytes());
    }

    let mut pdf = PdfWriter::new();
    pdf.add_obj(1, &catalog);
    pdf.add_obj(2, "<< /Type /Pages /Kids [3 0 R] /Count 1 >>");
    pdf.add_obj(3, &page);
    pdf.add_obj(4, FONT_OBJ);
    pdf.add_obj(5, &info_body(manifest, config.clock_ms));
    pdf.add_stream(6, "", &content);

    let name_width = plan.frame_count.to_string().len();
    for k in 1..=f {
        pdf.add_obj(
            ocg_id(k),
            &format!("<< /Type /OCG /Name (Frame {k:0name_width$}) >>"),
        );
    }
    for (k, frame) in rendered.iter().enumerate() {
        let k = k as u32 + 1;
        let extra = format!(
            "/Type /XObject /Subtype /Form /BBox [0 0 {w} {h}] /OC {} 0 R \
             /Resources << /Font << /F1 4 0 R >> >>",
            ocg_id(k)
        );
        pdf.add_stream(xobj_id(k), &extra, &text_ops(&frame.runs)?);
    }

    pdf.add_obj(
        action_id,
        &format!("<< /S /JavaScript /JS {js_id} 0 R >>"),
    );
    pdf.add_stream(js_id, "", viewer_script(&plan).as_bytes());

    if with_widgets {
        pdf.add_obj(play_id, &widget_body("amor-play", "amorPlay();", 18.0, play_ap_id));
        pdf.add_obj(pause_id, &widget_body("amor-pause", "amorPause();", 66.0, pause_ap_id));
        pdf.add_stream(play_ap_id, WIDGET_AP_EXTRA, &widget_appearance("Play"));
        pdf.add_stream(pause_ap_id, WIDGET_AP_EXTRA, &widget_appearance("Pause"));
    }

    Ok(pdf.finish(1, 5))
}

/// Emit the non-animated fallback: title plus one frame's author line.
pub fn build_static_pdf(
    rendered: &RenderedFrame,
    manifest: &AuthorManifest,
    clock_ms: u64,
) -> Result<Vec<u8>> {
    let style = &manifest.style;
    let (w, h) = (fmt_pt(style.page_width_pt), fmt_pt(style.page_height_pt));

    let mut content: Vec<u8> = text_ops(std::slice::from_ref(&title_run(manifest)?))?;
    content.extend(b"q /Fr1 Do Q\n");

    let mut pdf = PdfWriter::new();
    pdf.add_obj(1, "<< /Type /Catalog /Pages 2 0 R >>");
    pdf.add_obj(2, "<< /Type /Pages /Kids [3 0 R] /Count 1 >>");
    pdf.add_obj(
        3,
        &format!(
            "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {w} {h}] \
             /Resources << /Font << /F1 4 0 R >> /XObject << /Fr1 7 0 R >> >> /Contents 6 0 R >>"
        ),
    );
    pdf.add_obj(4, FONT_OBJ);
    pdf.add_obj(5, &info_body(manifest, clock_ms));
    pdf.add_stream(6, "", &content);
    pdf.add_stream(
        7,
        &format!(
            "/Type /XObject /Subtype /Form /BBox [0 0 {w} {h}] \
             /Resources << /Font << /F1 4 0 R >> >>"
        ),
        &text_ops(&rendered.runs)?,
    );
    Ok(pdf.finish(1, 5))
}

const FONT_OBJ: &str =
    "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>";

const WIDGET_AP_EXTRA: &str = "/Type /XObject /Subtype /Form /BBox [0 0 42 18] \
                               /Resources << /Font << /F1 4 0 R >> >>";

fn widget_body(field_name: &str, js: &str, x: f64, ap_id: u32) -> String {
    let action = String::from_utf8(escape_literal(js.as_bytes())).unwrap();
    format!(
        "<< /Type /Annot /Subtype /Widget /FT /Btn /Ff 65536 /T ({field_name}) \
         /Rect [{x} 18 {right} 36] /F 4 /A << /S /JavaScript /JS ({action}) >> \
         /AP << /N {ap_id} 0 R >> /MK << /BG [0.85 0.85 0.85] /BC [0 0 0] >> >>",
        x = fmt_pt(x),
        right = fmt_pt(x + 42.0),
    )
}

fn widget_appearance(label: &str) -> Vec<u8> {
    format!(
        "0.85 g 0 0 42 18 re f\n0 g BT /F1 9 Tf 6 5.5 Td ({label}) Tj ET\n"
    )
    .into_bytes()
}

/// The viewer script. The leading `var` block is the machine-readable
/// parameter surface the inspector parses back out; the timer functions are
/// only present for more than one frame.
fn viewer_script(plan: &AnimationPlan) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "var FRAME_COUNT = {};", plan.frame_count);
    let _ = writeln!(s, "var FPS = {};", plan.fps);
    let _ = writeln!(s, "var LOOP = {};", plan.loop_enabled);
    let _ = writeln!(s, "var AUTOPLAY = {};", plan.autoplay);
    let _ = writeln!(s, "var CONTROLS = {};", plan.controls);
    match plan.start_mode {
        StartMode::ViewingTime => {
            s.push_str("var START_MODE = \"viewing-time\";\nvar START_INDEX = 0;\n");
        }
        StartMode::Fixed(k) => {
            let _ = writeln!(s, "var START_MODE = \"fixed\";\nvar START_INDEX = {k};");
        }
    }
    s.push_str(concat!(
        "var INTERVAL_MS = 1000 / FPS;\n",
        "var amorTimer = null;\n",
        "var amorFrame = 0;\n",
        "var amorOcgs = this.getOCGs();\n",
        "amorOcgs.sort(function (a, b) { return a.name < b.name ? -1 : (a.name > b.name ? 1 : 0); });\n",
        "function amorShow(k) {\n",
        "  for (var i = 0; i < amorOcgs.length; i++) { amorOcgs[i].state = (i == k); }\n",
        "  amorFrame = k;\n",
        "}\n",
    ));
    if plan.frame_count > 1 {
        s.push_str(concat!(
            "function amorStep() {\n",
            "  var next = amorFrame + 1;\n",
            "  if (next >= FRAME_COUNT) {\n",
            "    if (!LOOP) { amorPause(); return; }\n",
            "    next = 0;\n",
            "  }\n",
            "  amorShow(next);\n",
            "}\n",
            "function amorPlay() {\n",
            "  if (amorTimer == null) { amorTimer = app.setInterval(\"amorStep();\", INTERVAL_MS); }\n",
            "}\n",
            "function amorPause() {\n",
            "  if (amorTimer != null) { app.clearInterval(amorTimer); amorTimer = null; }\n",
            "}\n",
        ));
    }
    s.push_str(concat!(
        "if (START_MODE == \"viewing-time\") {\n",
        "  amorShow(Math.floor(new Date().getTime() / INTERVAL_MS) % FRAME_COUNT);\n",
        "} else {\n",
        "  amorShow(START_INDEX % FRAME_COUNT);\n",
        "}\n",
    ));
    if plan.autoplay && plan.frame_count > 1 {
        s.push_str("amorPlay();\n");
    }
    s
}

fn title_run(manifest: &AuthorManifest) -> Result<TextRun> {
    let style = &manifest.style;
    let size = style.font_size_pt * TITLE_SCALE;
    let width = measure_text(&manifest.title, size)?;
    if width > style.page_width_pt {
        return Err(Error::LineOverflow {
            line_width_pt: width,
            page_width_pt: style.page_width_pt,
        });
    }
    Ok(TextRun {
        text: manifest.title.clone(),
        x_pt: (style.page_width_pt - width) / 2.0,
        y_pt: style.page_height_pt - TITLE_BASELINE_DROP_PT,
        size_pt: size,
        superscript: false,
    })
}

fn text_ops(runs: &[TextRun]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for run in runs {
        let encoded = winansi_encode(&run.text)?;
        out.extend(
            format!(
                "BT /F1 {} Tf {} {} Td (",
                fmt_pt(run.size_pt),
                fmt_pt(run.x_pt),
                fmt_pt(run.y_pt)
            )
            .as_bytes(),
        );
        out.extend(escape_literal(&encoded));
        out.extend(b") Tj ET\n");
    }
    Ok(out)
}

fn info_body(manifest: &AuthorManifest, clock_ms: u64) -> String {
    format!(
        "<< /Title {} /Producer (amor) /CreationDate ({}) >>",
        text_string(&manifest.title),
        pdf_date(clock_ms)
    )
}

/// A PDF text string: literal for ASCII, UTF-16BE hex with BOM otherwise.
fn text_string(text: &str) -> String {
    if text.is_ascii() {
        format!(
            "({})",
            String::from_utf8(escape_literal(text.as_bytes())).unwrap()
        )
    } else {
        let mut hex = String::from("<FEFF");
        for unit in text.encode_utf16() {
            let _ = write!(hex, "{unit:04X}");
        }
        hex.push('>');
        hex
    }
}

fn pdf_date(clock_ms: u64) -> String {
    let ms = i64::try_from(clock_ms).unwrap_or(i64::MAX);
    let epoch = || chrono::DateTime::<chrono::Utc>::from_timestamp_millis(0).unwrap();
    let dt = chrono::DateTime::<chrono::Utc>::from_timestamp_millis(ms).unwrap_or_else(epoch);
    dt.format("D:%Y%m%d%H%M%SZ").to_string()
}
