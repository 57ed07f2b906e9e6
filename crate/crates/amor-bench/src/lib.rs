//! Shared fixtures for the benchmark suite.

use amor_core::{parse_manifest, AuthorManifest};

/// A manifest with `n` authors (n <= 12), default playback, no constraints.
pub fn manifest_with_authors(n: usize) -> AuthorManifest {
    let names = [
        "Ada", "Bo", "Cy", "Dee", "Ed", "Fay", "Gil", "Hal", "Ivy", "Jo", "Kit", "Lou",
    ];
    let authors: Vec<String> = names[..n]
        .iter()
        .enumerate()
        .map(|(i, given)| {
            format!(
                r#"{{"id": "a{i}", "display_name": "{given} Benchling", "given_name": "{given}", "family_name": "Benchling"}}"#
            )
        })
        .collect();
    parse_manifest(&format!(
        r#"{{"title": "Benchmark Fixture", "authors": [{}]}}"#,
        authors.join(", ")
    ))
    .expect("fixture manifest parses")
}

/// A small bibliography with multi-author entries.
pub fn bibliography() -> String {
    let mut out = String::new();
    for k in 0..24 {
        out.push_str(&format!(
            "@article{{entry{k},\n  author = {{Ada One and Bo Two and Cy Three and Dee Four}},\n  title = {{Benchmark Entry {k}}},\n  year = {{20{k:02}}},\n}}\n\n"
        ));
    }
    out
}
