//! LaTeX bundle emission: one single-page PDF per frame plus a `main.tex`
//! that plays them with the animate package.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::layout::RenderedFrame;
use crate::manifest::AuthorManifest;
use crate::permute::Schedule;

use super::writer::fmt_pt;
use super::build_static_pdf;

/// Write `frames/frame_<k>.pdf` for k = 1..=F and a `main.tex` whose
/// `\animategraphics` options carry exactly the schedule's flags. Returns
/// the paths written. The bundle compiles with a standard LaTeX toolchain
/// that has the animate package installed.
pub fn emit_latex(
    schedule: &Schedule,
    rendered: &[RenderedFrame],
    manifest: &AuthorManifest,
    out_dir: &Path,
    clock_ms: u64,
) -> Result<Vec<PathBuf>> {
    if rendered.len() != schedule.frames.len() {
        return Err(Error::MismatchedInputs {
            rendered: rendered.len(),
            scheduled: schedule.frames.len(),
        });
    }
    let frames_dir = out_dir.join("frames");
    std::fs::create_dir_all(&frames_dir)?;

    let mut written = Vec::with_capacity(rendered.len() + 1);
    for (k, frame) in rendered.iter().enumerate() {
        let path = frames_dir.join(format!("frame_{}.pdf", k + 1));
        std::fs::write(&path, build_static_pdf(frame, manifest, clock_ms)?)?;
        written.push(path);
    }

    let main = out_dir.join("main.tex");
    std::fs::write(&main, latex_source(schedule, manifest))?;
    written.push(main);
    Ok(written)
}

fn latex_source(schedule: &Schedule, manifest: &AuthorManifest) -> String {
    let mut options = Vec::new();
    if schedule.controls {
        options.push("controls");
    }
    if schedule.loop_enabled {
        options.push("loop");
    }
    if schedule.autoplay {
        options.push("autoplay");
    }
    format!(
        "\\documentclass{{article}}\n\
         \\usepackage{{animate}}\n\
         \\usepackage[paperwidth={width}pt,paperheight={height}pt,margin=0pt]{{geometry}}\n\
         \\pagestyle{{empty}}\n\
         \\begin{{document}}\n\
         \\begin{{center}}\n\
         \\animategraphics[{options}]{{{fps}}}{{frames/frame_}}{{1}}{{{count}}}\n\
         \\end{{center}}\n\
         \\end{{document}}\n",
        width = fmt_pt(manifest.style.page_width_pt),
        height = fmt_pt(manifest.style.page_height_pt),
        options = options.join(","),
        fps = schedule.fps,
        count = schedule.frames.len(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::layout_frame;
    use crate::manifest::parse_manifest;
    use crate::permute::{build_schedule, OrderMode};

    fn manifest(n: usize) -> AuthorManifest {
        let ids = ["a", "b", "c", "d", "e"];
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

    fn emit(m: &AuthorManifest, dir: &Path) -> (Schedule, Vec<PathBuf>) {
        let schedule = build_schedule(m, OrderMode::Shuffle).unwrap();
        let rendered: Vec<RenderedFrame> = schedule
            .frames
            .iter()
            .map(|f| layout_frame(f, m).unwrap())
            .collect();
        let written = emit_latex(&schedule, &rendered, m, dir, 0).unwrap();
        (schedule, written)
    }

    fn temp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("amor-latex-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn default_five_author_bundle_has_120_frames() {
        let dir = temp_dir("five");
        let m = manifest(5);
        let (_, written) = emit(&m, &dir);
        assert_eq!(written.len(), 121);
        let tex = std::fs::read_to_string(dir.join("main.tex")).unwrap();
        assert!(tex.contains("\\animategraphics[controls,loop,autoplay]"));
        assert!(tex.contains("{1}{120}"));
        assert!(dir.join("frames/frame_1.pdf").exists());
        assert!(dir.join("frames/frame_120.pdf").exists());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn loop_toggle_removes_only_that_keyword() {
        let dir = temp_dir("noloop");
        let mut m = manifest(3);
        m.playback.loop_enabled = false;
        emit(&m, &dir);
        let tex = std::fs::read_to_string(dir.join("main.tex")).unwrap();
        assert!(tex.contains("\\animategraphics[controls,autoplay]"));
        assert!(!tex.contains("loop"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn three_authors_write_six_frame_files() {
        let dir = temp_dir("six");
        let m = manifest(3);
        let (schedule, _) = emit(&m, &dir);
        assert_eq!(schedule.frames.len(), 6);
        let count = std::fs::read_dir(dir.join("frames")).unwrap().count();
        assert_eq!(count, 6);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn frame_files_reparse_under_the_inspector() {
        let dir = temp_dir("inspect");
        let m = manifest(3);
        emit(&m, &dir);
        let bytes = std::fs::read(dir.join("frames/frame_2.pdf")).unwrap();
        let report = crate::pdfgen::inspect_pdf(&bytes).unwrap();
        assert_eq!(report.frame_count, 1);
        assert!(report.script.is_none());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
