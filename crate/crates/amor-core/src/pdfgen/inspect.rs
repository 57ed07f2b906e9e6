//! Structural self-inspection: reparse a generated PDF, verify the
//! cross-reference table against actual byte positions, and pull back out
//! the animation parameters and per-frame text. This is the test oracle for
//! everything the emitters write; it is not a general PDF reader.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::layout::winansi_decode_byte;

use super::StartMode;

/// Everything the inspector recovers from one file.
#[derive(Debug, Clone, PartialEq)]
pub struct AnimationReport {
    /// Author-frame form XObject count; equals `ocg_count` for animated files.
    pub frame_count: usize,
    pub ocg_count: usize,
    /// OCGs listed in /OCProperties /D /ON — must be exactly one for
    /// animated output.
    pub default_visible_ocgs: usize,
    /// Widget annotations (the play/pause controls).
    pub widget_count: usize,
    /// Concatenated show-text of each frame XObject, in frame order.
    pub frame_texts: Vec<String>,
    /// Parameters parsed from the embedded viewer script, if present.
    pub script: Option<ScriptParams>,
}

/// The `var` block at the top of the viewer script, parsed back.
#[derive(Debug, Clone, PartialEq)]
pub struct ScriptParams {
    pub frame_count: usize,
    pub fps: f64,
    pub loop_enabled: bool,
    pub autoplay: bool,
    pub controls: bool,
    pub start_mode: StartMode,
    /// True when the interval-timer machinery is present.
    pub has_timer: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Obj {
    Null,
    Bool(bool),
    Int(i64),
    Real(f64),
    Name(String),
    Str(Vec<u8>),
    Array(Vec<Obj>),
    Dict(BTreeMap<String, Obj>),
    Stream(BTreeMap<String, Obj>, Vec<u8>),
    Ref(u32),
}

fn structure_err(offset: usize, message: impl Into<String>) -> Error {
    Error::PdfStructure {
        offset,
        message: message.into(),
    }
}

struct Lexer<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(data: &'a [u8], pos: usize) -> Self {
        Lexer { data, pos }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        structure_err(self.pos, message)
    }

    fn peek(&self) -> Option<u8> {
        self.data.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' | b'\x0C' | b'\0' => {
                    self.pos += 1;
                }
                b'%' => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn expect_bytes(&mut self, expected: &[u8]) -> Result<()> {
        if self.data[self.pos..].starts_with(expected) {
            self.pos += expected.len();
            Ok(())
        } else {
            Err(self.err(format!(
                "expected {:?}",
                String::from_utf8_lossy(expected)
            )))
        }
    }

    fn keyword(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphabetic() || b == b'*' || b == b'\'' || b == b'"' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.data[start..self.pos]).into_owned()
    }

    fn name(&mut self) -> Result<String> {
        self.expect_bytes(b"/")?;
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() || b"()<>[]{}/%".contains(&b) {
                break;
            }
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.data[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<Obj> {
        let start = self.pos;
        let mut is_real = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        while let Some(b) = self.peek() {
            match b {
                b'0'..=b'9' => self.pos += 1,
                b'.' => {
                    is_real = true;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let text = std::str::from_utf8(&self.data[start..self.pos])
            .map_err(|_| structure_err(start, "non-ascii number"))?;
        if is_real {
            text.parse()
                .map(Obj::Real)
                .map_err(|_| structure_err(start, format!("bad real {text:?}")))
        } else {
            text.parse()
                .map(Obj::Int)
                .map_err(|_| structure_err(start, format!("bad integer {text:?}")))
        }
    }

    fn literal_string(&mut self) -> Result<Vec<u8>> {
        self.expect_bytes(b"(")?;
        let mut out = Vec::new();
        let mut depth = 1;
        loop {
            let b = self.bump().ok_or_else(|| self.err("unterminated string"))?;
            match b {
                b'\\' => {
                    let esc = self.bump().ok_or_else(|| self.err("dangling escape"))?;
                    match esc {
                        b'n' => out.push(b'\n'),
                        b'r' => out.push(b'\r'),
                        b't' => out.push(b'\t'),
                        b'b' => out.push(0x08),
                        b'f' => out.push(0x0C),
                        b'(' | b')' | b'\\' => out.push(esc),
                        b'0'..=b'7' => {
                            let mut value = u32::from(esc - b'0');
                            for _ in 0..2 {
                                match self.peek() {
                                    Some(d @ b'0'..=b'7') => {
                                        value = value * 8 + u32::from(d - b'0');
                                        self.pos += 1;
                                    }
                                    _ => break,
                                }
                            }
                            out.push(value as u8);
                        }
                        b'\n' => {}
                        other => out.push(other),
                    }
                }
                b'(' => {
                    depth += 1;
                    out.push(b);
                }
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(out);
                    }
                    out.push(b);
                }
                _ => out.push(b),
            }
        }
    }

    fn hex_string(&mut self) -> Result<Vec<u8>> {
        self.expect_bytes(b"<")?;
        let mut digits = Vec::new();
        loop {
            match self.bump() {
                Some(b'>') => break,
                Some(b) if b.is_ascii_hexdigit() => digits.push(b),
                Some(b) if b.is_ascii_whitespace() => {}
                Some(b) => return Err(self.err(format!("bad hex digit {b:#04x}"))),
                None => return Err(self.err("unterminated hex string")),
            }
        }
        if digits.len() % 2 == 1 {
            digits.push(b'0');
        }
        Ok(digits
            .chunks(2)
            .map(|pair| {
                let hi = (pair[0] as char).to_digit(16).unwrap() as u8;
                let lo = (pair[1] as char).to_digit(16).unwrap() as u8;
                (hi << 4) | lo
            })
            .collect())
    }

    fn object(&mut self) -> Result<Obj> {
        self.skip_ws();
        match self.peek().ok_or_else(|| self.err("unexpected end of data"))? {
            b'<' => {
                if self.data[self.pos..].starts_with(b"<<") {
                    self.dict().map(Obj::Dict)
                } else {
                    self.hex_string().map(Obj::Str)
                }
            }
            b'(' => self.literal_string().map(Obj::Str),
            b'/' => self.name().map(Obj::Name),
            b'[' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b']') {
                        self.pos += 1;
                        return Ok(Obj::Array(items));
                    }
                    items.push(self.object()?);
                }
            }
            b'0'..=b'9' | b'+' | b'-' | b'.' => {
                let first = self.number()?;
                if let Obj::Int(id) = first {
                    // Lookahead for an indirect reference: <int> <int> R
                    let save = self.pos;
                    self.skip_ws();
                    if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                        if let Ok(Obj::Int(_gen)) = self.number() {
                            self.skip_ws();
                            if self.peek() == Some(b'R') {
                                let after = self.data.get(self.pos + 1).copied();
                                let delimits = after.is_none_or(|b| {
                                    b.is_ascii_whitespace() || b"()<>[]{}/%".contains(&b)
                                });
                                if delimits && id >= 0 {
                                    self.pos += 1;
                                    return Ok(Obj::Ref(id as u32));
                                }
                            }
                        }
                    }
                    self.pos = save;
                }
                Ok(first)
            }
            _ => {
                let at = self.pos;
                match self.keyword().as_str() {
                    "true" => Ok(Obj::Bool(true)),
                    "false" => Ok(Obj::Bool(false)),
                    "null" => Ok(Obj::Null),
                    other => Err(structure_err(at, format!("unexpected token {other:?}"))),
                }
            }
        }
    }

    fn dict(&mut self) -> Result<BTreeMap<String, Obj>> {
        self.expect_bytes(b"<<")?;
        let mut map = BTreeMap::new();
        loop {
            self.skip_ws();
            if self.data[self.pos..].starts_with(b">>") {
                self.pos += 2;
                return Ok(map);
            }
            let key = self.name()?;
            let value = self.object()?;
            map.insert(key, value);
        }
    }

    /// Parse `<id> 0 obj ... endobj` at the current position, including an
    /// optional stream body.
    fn indirect_object(&mut self) -> Result<(u32, Obj)> {
        self.skip_ws();
        let at = self.pos;
        let id = match self.number()? {
            Obj::Int(id) if id > 0 => id as u32,
            other => return Err(structure_err(at, format!("bad object id {other:?}"))),
        };
        self.skip_ws();
        match self.number()? {
            Obj::Int(0) => {}
            other => return Err(self.err(format!("bad generation {other:?}"))),
        }
        self.skip_ws();
        self.expect_bytes(b"obj")?;
        let body = self.object()?;
        self.skip_ws();
        if self.data[self.pos..].starts_with(b"stream") {
            let Obj::Dict(dict) = body else {
                return Err(self.err("stream without dictionary"));
            };
            self.pos += b"stream".len();
            if self.data[self.pos..].starts_with(b"\r\n") {
                self.pos += 2;
            } else if self.data[self.pos..].starts_with(b"\n") {
                self.pos += 1;
            }
            let length = match dict.get("Length") {
                Some(Obj::Int(n)) if *n >= 0 => *n as usize,
                other => return Err(self.err(format!("bad /Length {other:?}"))),
            };
            if self.pos + length > self.data.len() {
                return Err(self.err("stream runs past end of file"));
            }
            let data = self.data[self.pos..self.pos + length].to_vec();
            self.pos += length;
            self.skip_ws();
            self.expect_bytes(b"endstream")?;
            self.skip_ws();
            self.expect_bytes(b"endobj")?;
            Ok((id, Obj::Stream(dict, data)))
        } else {
            self.expect_bytes(b"endobj")?;
            Ok((id, body))
        }
    }
}

struct Document {
    objects: BTreeMap<u32, Obj>,
    trailer: BTreeMap<String, Obj>,
}

impl Document {
    fn resolve<'a>(&'a self, obj: &'a Obj) -> Result<&'a Obj> {
        match obj {
            Obj::Ref(id) => self
                .objects
                .get(id)
                .ok_or_else(|| structure_err(0, format!("dangling reference to object {id}"))),
            other => Ok(other),
        }
    }

    fn dict_path<'a>(&'a self, start: &'a Obj, path: &[&str]) -> Option<&'a Obj> {
        let mut current = self.resolve(start).ok()?;
        for key in path {
            let (Obj::Dict(map) | Obj::Stream(map, _)) = current else {
                return None;
            };
            current = self.resolve(map.get(*key)?).ok()?;
        }
        Some(current)
    }

    fn check_refs(&self, obj: &Obj) -> Result<()> {
        match obj {
            Obj::Ref(id) => {
                if !self.objects.contains_key(id) {
                    return Err(structure_err(0, format!("dangling reference to object {id}")));
                }
            }
            Obj::Array(items) => {
                for item in items {
                    self.check_refs(item)?;
                }
            }
            Obj::Dict(map) | Obj::Stream(map, _) => {
                for value in map.values() {
                    self.check_refs(value)?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn parse_document(bytes: &[u8]) -> Result<Document> {
    if !bytes.starts_with(b"%PDF-1.5") {
        return Err(structure_err(0, "missing %PDF-1.5 header"));
    }
    let tail = String::from_utf8_lossy(&bytes[bytes.len().saturating_sub(64)..]);
    if !tail.trim_end().ends_with("%%EOF") {
        return Err(structure_err(bytes.len(), "missing %%EOF marker"));
    }

    let startxref_pos = find_last(bytes, b"startxref")
        .ok_or_else(|| structure_err(bytes.len(), "missing startxref"))?;
    let mut lexer = Lexer::new(bytes, startxref_pos + b"startxref".len());
    lexer.skip_ws();
    let xref_offset = match lexer.number()? {
        Obj::Int(n) if n >= 0 => n as usize,
        other => return Err(structure_err(startxref_pos, format!("bad startxref {other:?}"))),
    };
    if xref_offset >= bytes.len() || !bytes[xref_offset..].starts_with(b"xref") {
        return Err(structure_err(xref_offset, "startxref does not point at an xref table"));
    }

    let mut lexer = Lexer::new(bytes, xref_offset + b"xref".len());
    lexer.skip_ws();
    let first = match lexer.number()? {
        Obj::Int(n) => n,
        other => return Err(lexer.err(format!("bad xref subsection start {other:?}"))),
    };
    if first != 0 {
        return Err(lexer.err("xref subsection must start at object 0"));
    }
    lexer.skip_ws();
    let count = match lexer.number()? {
        Obj::Int(n) if n >= 1 => n as usize,
        other => return Err(lexer.err(format!("bad xref count {other:?}"))),
    };
    lexer.skip_ws();

    let mut entries = Vec::with_capacity(count);
    for i in 0..count {
        let at = lexer.pos;
        let entry = bytes
            .get(at..at + 20)
            .ok_or_else(|| structure_err(at, "truncated xref entry"))?;
        let text = std::str::from_utf8(&entry[..18])
            .map_err(|_| structure_err(at, "non-ascii xref entry"))?;
        let offset: usize = text[..10]
            .parse()
            .map_err(|_| structure_err(at, format!("bad xref offset in entry {i}")))?;
        let in_use = match &text[17..18] {
            "n" => true,
            "f" => false,
            other => return Err(structure_err(at, format!("bad xref kind {other:?}"))),
        };
        entries.push((offset, in_use));
        lexer.pos = at + 20;
    }

    lexer.skip_ws();
    lexer.expect_bytes(b"trailer")?;
    lexer.skip_ws();
    let trailer = lexer.dict()?;
    match trailer.get("Size") {
        Some(Obj::Int(n)) if *n as usize == count => {}
        other => return Err(structure_err(xref_offset, format!("trailer /Size {other:?} does not match xref count {count}"))),
    }

    let mut objects = BTreeMap::new();
    for (id, &(offset, in_use)) in entries.iter().enumerate().skip(1) {
        if !in_use {
            continue;
        }
        if offset >= bytes.len() {
            return Err(structure_err(offset, format!("xref offset for object {id} past end of file")));
        }
        let mut obj_lexer = Lexer::new(bytes, offset);
        let (parsed_id, obj) = obj_lexer.indirect_object()?;
        if parsed_id as usize != id {
            return Err(structure_err(
                offset,
                format!("xref says object {id} but found object {parsed_id}"),
            ));
        }
        objects.insert(parsed_id, obj);
    }

    let doc = Document { objects, trailer };
    for obj in doc.objects.values() {
        doc.check_refs(obj)?;
    }
    for value in doc.trailer.values() {
        doc.check_refs(value)?;
    }
    Ok(doc)
}

fn find_last(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack
        .windows(needle.len())
        .rposition(|window| window == needle)
}

fn decode_winansi(bytes: &[u8], offset: usize) -> Result<String> {
    bytes
        .iter()
        .map(|&b| {
            winansi_decode_byte(b)
                .ok_or_else(|| structure_err(offset, format!("undecodable text byte {b:#04x}")))
        })
        .collect()
}

/// Show-text strings of a content stream, in stream order.
fn extract_show_strings(data: &[u8]) -> Result<Vec<Vec<u8>>> {
    let mut lexer = Lexer::new(data, 0);
    let mut out = Vec::new();
    let mut last: Option<Vec<u8>> = None;
    loop {
        lexer.skip_ws();
        let Some(b) = lexer.peek() else { break };
        match b {
            b'(' => last = Some(lexer.literal_string()?),
            b'<' => last = Some(lexer.hex_string()?),
            b'/' => {
                lexer.name()?;
            }
            b'[' | b']' => lexer.pos += 1,
            b'0'..=b'9' | b'+' | b'-' | b'.' => {
                lexer.number()?;
            }
            _ => {
                let at = lexer.pos;
                let op = lexer.keyword();
                if op.is_empty() {
                    return Err(structure_err(at, format!("unexpected content byte {b:#04x}")));
                }
                if op == "Tj" {
                    let text = last
                        .take()
                        .ok_or_else(|| structure_err(at, "Tj without a preceding string"))?;
                    out.push(text);
                }
            }
        }
    }
    Ok(out)
}

fn parse_script(text: &str) -> Result<ScriptParams> {
    fn var<'t>(text: &'t str, name: &str) -> Result<&'t str> {
        let pattern = format!("var {name} = ");
        let start = text
            .find(&pattern)
            .ok_or_else(|| structure_err(0, format!("viewer script missing var {name}")))?
            + pattern.len();
        let end = text[start..]
            .find(';')
            .ok_or_else(|| structure_err(0, format!("unterminated var {name}")))?
            + start;
        Ok(text[start..end].trim())
    }
    fn flag(text: &str, name: &str) -> Result<bool> {
        match var(text, name)? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(structure_err(0, format!("var {name} is not a boolean: {other:?}"))),
        }
    }

    let frame_count: usize = var(text, "FRAME_COUNT")?
        .parse()
        .map_err(|_| structure_err(0, "bad FRAME_COUNT"))?;
    let fps: f64 = var(text, "FPS")?
        .parse()
        .map_err(|_| structure_err(0, "bad FPS"))?;
    let start_index: usize = var(text, "START_INDEX")?
        .parse()
        .map_err(|_| structure_err(0, "bad START_INDEX"))?;
    let start_mode = match var(text, "START_MODE")? {
        "\"viewing-time\"" => StartMode::ViewingTime,
        "\"fixed\"" => StartMode::Fixed(start_index),
        other => return Err(structure_err(0, format!("bad START_MODE {other:?}"))),
    };
    Ok(ScriptParams {
        frame_count,
        fps,
        loop_enabled: flag(text, "LOOP")?,
        autoplay: flag(text, "AUTOPLAY")?,
        controls: flag(text, "CONTROLS")?,
        start_mode,
        has_timer: text.contains("app.setInterval"),
    })
}

/// Reparse a toolchain-generated PDF: validate structure (header, xref
/// offsets, references), count OCGs and widgets, recover the viewer-script
/// parameters, and extract per-frame show-text in order.
pub fn inspect_pdf(bytes: &[u8]) -> Result<AnimationReport> {
    let doc = parse_document(bytes)?;

    let ocg_count = doc
        .objects
        .values()
        .filter(|o| matches!(o, Obj::Dict(d) if d.get("Type") == Some(&Obj::Name("OCG".into()))))
        .count();
    let widget_count = doc
        .objects
        .values()
        .filter(
            |o| matches!(o, Obj::Dict(d) if d.get("Subtype") == Some(&Obj::Name("Widget".into()))),
        )
        .count();

    let root = doc
        .trailer
        .get("Root")
        .ok_or_else(|| structure_err(0, "trailer missing /Root"))?;
    let catalog = doc.resolve(root)?;
    match catalog {
        Obj::Dict(d) if d.get("Type") == Some(&Obj::Name("Catalog".into())) => {}
        _ => return Err(structure_err(0, "/Root is not a catalog")),
    }

    let default_visible_ocgs = match doc.dict_path(catalog, &["OCProperties", "D", "ON"]) {
        Some(Obj::Array(items)) => items.len(),
        _ => 0,
    };

    let script = match doc.dict_path(catalog, &["Names", "JavaScript", "Names"]) {
        Some(Obj::Array(items)) => {
            let action = items
                .get(1)
                .ok_or_else(|| structure_err(0, "JavaScript name tree has no action"))?;
            let js = doc
                .dict_path(action, &["JS"])
                .ok_or_else(|| structure_err(0, "JavaScript action missing /JS"))?;
            let text = match js {
                Obj::Stream(_, data) => String::from_utf8(data.clone())
                    .map_err(|_| structure_err(0, "viewer script is not UTF-8"))?,
                Obj::Str(data) => decode_winansi(data, 0)?,
                _ => return Err(structure_err(0, "/JS is neither stream nor string")),
            };
            Some(parse_script(&text)?)
        }
        _ => None,
    };

    let page = doc
        .dict_path(catalog, &["Pages", "Kids"])
        .and_then(|kids| match kids {
            Obj::Array(items) => items.first(),
            _ => None,
        })
        .ok_or_else(|| structure_err(0, "catalog has no page"))?;
    let page = doc.resolve(page)?;

    let mut frames: Vec<(usize, &Obj)> = Vec::new();
    if let Some(Obj::Dict(xobjects)) = doc.dict_path(page, &["Resources", "XObject"]) {
        for (name, value) in xobjects {
            let Some(index) = name.strip_prefix("Fr").and_then(|s| s.parse::<usize>().ok())
            else {
                return Err(structure_err(0, format!("unexpected XObject name /{name}")));
            };
            frames.push((index, value));
        }
    }
    frames.sort_by_key(|(index, _)| *index);
    for (expected, (index, _)) in frames.iter().enumerate() {
        if *index != expected + 1 {
            return Err(structure_err(
                0,
                format!("frame XObjects are not contiguous: missing /Fr{}", expected + 1),
            ));
        }
    }

    let mut frame_texts = Vec::with_capacity(frames.len());
    for (_, value) in &frames {
        match doc.resolve(value)? {
            Obj::Stream(_, data) => {
                let strings = extract_show_strings(data)?;
                let mut text = String::new();
                for s in strings {
                    text.push_str(&decode_winansi(&s, 0)?);
                }
                frame_texts.push(text);
            }
            _ => return Err(structure_err(0, "frame XObject is not a stream")),
        }
    }

    let frame_count = frames.len();
    if ocg_count > 0 && ocg_count != frame_count {
        return Err(structure_err(
            0,
            format!("{ocg_count} OCGs but {frame_count} frame XObjects"),
        ));
    }
    if let Some(params) = &script {
        if params.frame_count != frame_count {
            return Err(structure_err(
                0,
                format!(
                    "script declares {} frames but the file has {frame_count}",
                    params.frame_count
                ),
            ));
        }
    }

    Ok(AnimationReport {
        frame_count,
        ocg_count,
        default_visible_ocgs,
        widget_count,
        frame_texts,
        script,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_header() {
        match inspect_pdf(b"%PDF-1.7\nrest") {
            Err(Error::PdfStructure { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected structure error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_missing_eof() {
        let bytes = b"%PDF-1.5\nsomething".to_vec();
        assert!(matches!(
            inspect_pdf(&bytes),
            Err(Error::PdfStructure { .. })
        ));
    }

    #[test]
    fn rejects_corrupted_xref_offset() {
        // A hand-built file whose xref entry points at the wrong byte.
        let body = "%PDF-1.5\n1 0 obj\n<< /Type /Catalog >>\nendobj\n";
        let file = format!(
            "{body}xref\n0 2\n0000000000 65535 f\r\n0000000005 00000 n\r\ntrailer\n<< /Size 2 /Root 1 0 R >>\nstartxref\n{}\n%%EOF\n",
            body.len()
        );
        match inspect_pdf(file.as_bytes()) {
            Err(Error::PdfStructure { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected structure error, got {other:?}"),
        }
    }

    #[test]
    fn literal_string_unescapes() {
        let mut lexer = Lexer::new(b"(a\\(b\\)c\\\\d)", 0);
        assert_eq!(lexer.literal_string().unwrap(), b"a(b)c\\d".to_vec());
        let mut nested = Lexer::new(b"(a(b)c)", 0);
        assert_eq!(nested.literal_string().unwrap(), b"a(b)c".to_vec());
        let mut octal = Lexer::new(b"(\\101\\102)", 0);
        assert_eq!(octal.literal_string().unwrap(), b"AB".to_vec());
    }

    #[test]
    fn show_string_extraction_tracks_tj() {
        let stream = b"BT /F1 12 Tf 10 20 Td (Hello) Tj ET\nq /Fr1 Do Q\nBT (World) Tj ET\n";
        let strings = extract_show_strings(stream).unwrap();
        assert_eq!(strings, vec![b"Hello".to_vec(), b"World".to_vec()]);
    }

    #[test]
    fn script_params_parse_back() {
        let text = "var FRAME_COUNT = 6;\nvar FPS = 7.5;\nvar LOOP = false;\nvar AUTOPLAY = true;\nvar CONTROLS = true;\nvar START_MODE = \"fixed\";\nvar START_INDEX = 3;\nfunction amorPlay() { app.setInterval(\"x\", 10); }\n";
        let params = parse_script(text).unwrap();
        assert_eq!(params.frame_count, 6);
        assert_eq!(params.fps, 7.5);
        assert!(!params.loop_enabled);
        assert!(params.autoplay);
        assert_eq!(params.start_mode, StartMode::Fixed(3));
        assert!(params.has_timer);
    }
}
