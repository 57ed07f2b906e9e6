//! Rotating citations: no fixed author gets to own "X et al." forever.
//!
//! Supports a deliberate BibTeX subset: `@type{key, field = {value} |
//! "value" | bareword, ...}` with balanced braces. No @string, no
//! @preamble, no crossref resolution, no name-particle handling.

use crate::error::{Error, Result};
use crate::permute::{shuffle, SplitMix64};

/// One parsed bibliography record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibEntry {
    pub key: String,
    pub entry_type: String,
    /// Author names split on the standard `and` separator, in field order.
    pub authors: Vec<String>,
    /// All fields in file order; names lowercased, values verbatim.
    pub fields: Vec<(String, String)>,
}

impl BibEntry {
    pub fn field(&self, name: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
            line: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::BibParse {
            line: self.line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if let Some(b) = b {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
            }
        }
        b
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
        {
            self.bump();
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn expect(&mut self, expected: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == expected => {
                self.bump();
                Ok(())
            }
            Some(b) => Err(self.err(format!(
                "expected {:?}, found {:?}",
                expected as char, b as char
            ))),
            None => Err(self.err(format!("expected {:?}, found end of input", expected as char))),
        }
    }

    /// A `{...}`-delimited value with balanced inner braces preserved.
    fn braced_value(&mut self) -> Result<String> {
        self.expect(b'{')?;
        let start = self.pos;
        let mut depth = 1usize;
        loop {
            match self.bump() {
                Some(b'{') => depth += 1,
                Some(b'}') => {
                    depth -= 1;
                    if depth == 0 {
                        let raw = &self.bytes[start..self.pos - 1];
                        return Ok(String::from_utf8_lossy(raw).into_owned());
                    }
                }
                Some(_) => {}
                None => return Err(self.err("unbalanced braces in field value")),
            }
        }
    }

    fn quoted_value(&mut self) -> Result<String> {
        self.expect(b'"')?;
        let start = self.pos;
        loop {
            match self.bump() {
                Some(b'"') => {
                    let raw = &self.bytes[start..self.pos - 1];
                    return Ok(String::from_utf8_lossy(raw).into_owned());
                }
                Some(_) => {}
                None => return Err(self.err("unterminated quoted field value")),
            }
        }
    }

    fn bare_value(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| !b.is_ascii_whitespace() && b != b',' && b != b'}')
        {
            self.bump();
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }
}

/// Parse a bibliography in the supported subset; entries in file order.
pub fn parse_bib(text: &str) -> Result<Vec<BibEntry>> {
    let mut scanner = Scanner::new(text);
    let mut entries: Vec<BibEntry> = Vec::new();

    loop {
        // Everything outside @entries is commentary.
        while scanner.peek().is_some_and(|b| b != b'@') {
            scanner.bump();
        }
        if scanner.bump().is_none() {
            break;
        }
        let entry_type = scanner.identifier().to_ascii_lowercase();
        if entry_type.is_empty() {
            return Err(scanner.err("@ without an entry type"));
        }
        if entry_type == "string" || entry_type == "preamble" {
            return Err(scanner.err(format!("@{entry_type} is not supported")));
        }
        scanner.skip_ws();
        scanner.expect(b'{')?;
        scanner.skip_ws();
        let key = scanner.identifier();
        scanner.skip_ws();
        if key.is_empty() {
            return Err(scanner.err("entry is missing a citation key"));
        }
        if entries.iter().any(|e| e.key == key) {
            return Err(scanner.err(format!("duplicate citation key {key:?}")));
        }

        let mut fields: Vec<(String, String)> = Vec::new();
        loop {
            scanner.skip_ws();
            match scanner.peek() {
                Some(b'}') => {
                    scanner.bump();
                    break;
                }
                Some(b',') => {
                    scanner.bump();
                }
                Some(b) => {
                    return Err(scanner.err(format!(
                        "expected ',' or '}}' after field, found {:?}",
                        b as char
                    )))
                }
                None => return Err(scanner.err("unbalanced braces: entry never closes")),
            }
            scanner.skip_ws();
            if scanner.peek() == Some(b'}') {
                scanner.bump();
                break;
            }
            if scanner.peek().is_none() {
                return Err(scanner.err("unbalanced braces: entry never closes"));
            }
            let name = scanner.identifier().to_ascii_lowercase();
            if name.is_empty() {
                return Err(scanner.err("expected a field name"));
            }
            if name == "crossref" {
                return Err(scanner.err("crossref fields are not supported"));
            }
            scanner.skip_ws();
            scanner.expect(b'=')?;
            scanner.skip_ws();
            let value = match scanner.peek() {
                Some(b'{') => scanner.braced_value()?,
                Some(b'"') => scanner.quoted_value()?,
                Some(_) => scanner.bare_value(),
                None => return Err(scanner.err("expected a field value")),
            };
            fields.push((name, value));
        }

        let authors = fields
            .iter()
            .find(|(n, _)| n == "author")
            .map(|(_, v)| split_authors(v))
            .unwrap_or_default();
        entries.push(BibEntry {
            key,
            entry_type,
            authors,
            fields,
        });
    }
    Ok(entries)
}

/// Split an author field on the word `and` at brace depth 0, collapsing
/// runs of whitespace inside each name.
fn split_authors(value: &str) -> Vec<String> {
    let mut names = Vec::new();
    let mut depth = 0usize;
    let mut words: Vec<&str> = Vec::new();
    for word in value.split_whitespace() {
        if word == "and" && depth == 0 {
            if !words.is_empty() {
                names.push(words.join(" "));
                words.clear();
            }
            continue;
        }
        let open = word.matches('{').count();
        let close = word.matches('}').count();
        depth = (depth + open).saturating_sub(close);
        words.push(word);
    }
    if !words.is_empty() {
        names.push(words.join(" "));
    }
    names
}

/// Family name used in citations: the last whitespace-separated token.
/// Name particles (`von`, `de`, ...) are deliberately not handled.
fn family_name(author: &str) -> &str {
    author.split_whitespace().last().unwrap_or(author)
}

/// The citation string for an entry at a rotation epoch: the lead author is
/// `authors[epoch mod n]`, rendered as `"<family> et al."` for multi-author
/// entries and as the bare family name otherwise. `None` when the entry has
/// no authors.
pub fn rotate_citation(entry: &BibEntry, epoch: u64) -> Option<String> {
    if entry.authors.is_empty() {
        return None;
    }
    let n = entry.authors.len() as u64;
    let lead = family_name(&entry.authors[(epoch % n) as usize]);
    Some(if entry.authors.len() > 1 {
        format!("{lead} et al.")
    } else {
        lead.to_string()
    })
}

/// Per-entry seed: fold every key byte through one SplitMix64 step, XORing
/// the byte into the state first. Deterministic across implementations.
fn entry_seed(seed: u64, key: &str) -> u64 {
    key.bytes().fold(seed, |state, byte| {
        SplitMix64::new(state ^ u64::from(byte)).next_u64()
    })
}

/// Shuffle each entry's author list with a per-entry seed derived from the
/// bibliography seed and the citation key; the author field is rewritten to
/// match.
pub fn shuffle_bib(entries: &[BibEntry], seed: u64) -> Vec<BibEntry> {
    entries
        .iter()
        .map(|entry| {
            let mut shuffled = entry.clone();
            let mut rng = SplitMix64::new(entry_seed(seed, &entry.key));
            shuffle(&mut rng, &mut shuffled.authors);
            if let Some(slot) = shuffled.fields.iter_mut().find(|(n, _)| n == "author") {
                slot.1 = shuffled.authors.join(" and ");
            }
            shuffled
        })
        .collect()
}

/// Serialize entries back to `.bib` text in the supported subset.
pub fn serialize_bib(entries: &[BibEntry]) -> String {
    let mut out = String::new();
    for (i, entry) in entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("@{}{{{},\n", entry.entry_type, entry.key));
        for (name, value) in &entry.fields {
            out.push_str(&format!("  {name} = {{{value}}},\n"));
        }
        out.push_str("}\n");
    }
    out
}
