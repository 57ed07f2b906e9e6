//! Minimal sequential PDF writer: numbered objects, uncompressed streams,
//! a classic cross-reference table, and a trailer.

use std::io::Write;

pub(crate) struct PdfWriter {
    buf: Vec<u8>,
    offsets: Vec<(u32, usize)>,
}

impl PdfWriter {
    pub fn new() -> Self {
        let mut buf = Vec::with_capacity(16 * 1024);
        buf.extend(b"%PDF-1.5\n%\xE2\xE3\xCF\xD3\n");
        PdfWriter {
            buf,
            offsets: Vec::new(),
        }
    }

    /// Write one indirect object whose body is already formatted.
    pub fn add_obj(&mut self, id: u32, body: &str) {
        self.begin(id);
        self.buf.extend(body.as_bytes());
        self.buf.extend(b"\nendobj\n");
    }

    /// Write one stream object. `extra` holds dictionary entries beyond
    /// /Length, e.g. `/Type /XObject /Subtype /Form ...`.
    pub fn add_stream(&mut self, id: u32, extra: &str, data: &[u8]) {
        self.begin(id);
        let sep = if extra.is_empty() { "" } else { " " };
        write!(self.buf, "<< /Length {}{sep}{extra} >>\nstream\n", data.len()).unwrap();
        self.buf.extend(data);
        self.buf.extend(b"\nendstream\nendobj\n");
    }

    fn begin(&mut self, id: u32) {
        debug_assert!(
            self.offsets.last().map_or(id == 1, |&(last, _)| id == last + 1),
            "object ids must be written contiguously from 1"
        );
        self.offsets.push((id, self.buf.len()));
        writeln!(self.buf, "{id} 0 obj").unwrap();
    }

    /// Append the cross-reference table and trailer; return the file bytes.
    pub fn finish(mut self, root_id: u32, info_id: u32) -> Vec<u8> {
        let xref_offset = self.buf.len();
        let size = self.offsets.len() + 1;
        write!(self.buf, "xref\n0 {size}\n").unwrap();
        self.buf.extend(b"0000000000 65535 f\r\n");
        for &(_, offset) in &self.offsets {
            write!(self.buf, "{offset:010} 00000 n\r\n").unwrap();
        }
        write!(
            self.buf,
            "trailer\n<< /Size {size} /Root {root_id} 0 R /Info {info_id} 0 R >>\nstartxref\n{xref_offset}\n%%EOF\n"
        )
        .unwrap();
        self.buf
    }
}

/// Format a coordinate with at most 4 decimals, no trailing zeros.
pub(crate) fn fmt_pt(v: f64) -> String {
    let s = format!("{v:.4}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    match trimmed {
        "" | "-" | "-0" => "0".to_string(),
        t => t.to_string(),
    }
}

/// Escape a WinAnsi byte string for use inside a PDF literal string.
pub(crate) fn escape_literal(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bytes.len() + 4);
    for &b in bytes {
        match b {
            b'\\' | b'(' | b')' => {
                out.push(b'\\');
                out.push(b);
            }
            b'\n' => out.extend(b"\\n"),
            b'\r' => out.extend(b"\\r"),
            _ => out.push(b),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_pt_trims_cleanly() {
        assert_eq!(fmt_pt(12.0), "12");
        assert_eq!(fmt_pt(6.67), "6.67");
        assert_eq!(fmt_pt(0.5), "0.5");
        assert_eq!(fmt_pt(-0.0), "0");
        assert_eq!(fmt_pt(100.12344), "100.1234");
    }

    #[test]
    fn literal_escaping_covers_delimiters() {
        assert_eq!(escape_literal(b"a(b)c\\"), b"a\\(b\\)c\\\\".to_vec());
        assert_eq!(escape_literal(b"plain"), b"plain".to_vec());
    }

    #[test]
    fn xref_offsets_point_at_objects() {
        let mut w = PdfWriter::new();
        w.add_obj(1, "<< /Type /Catalog >>");
        w.add_stream(2, "", b"BT ET");
        let bytes = w.finish(1, 1);
        let xref_at = bytes
            .windows(5)
            .position(|window| window == b"xref\n")
            .unwrap();
        let offsets: Vec<usize> = bytes[xref_at..]
            .split(|&b| b == b'\n')
            .skip(2)
            .filter_map(|line| {
                let text = std::str::from_utf8(line).ok()?;
                text.trim_end()
                    .ends_with('n')
                    .then(|| text[..10].parse().unwrap())
            })
            .collect();
        assert_eq!(offsets.len(), 2);
        assert!(bytes[offsets[0]..].starts_with(b"1 0 obj"));
        assert!(bytes[offsets[1]..].starts_with(b"2 0 obj"));
        assert!(bytes.ends_with(b"%%EOF\n"));
    }
}
