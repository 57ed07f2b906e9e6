//! Cross-validation of the PDF writer against an independent third-party
//! parser (lopdf), so the writer and the in-crate inspector cannot share a
//! blind spot.

use amor_core::{
    build_animated_pdf, build_schedule, build_static_pdf, layout_frame, parse_manifest,
    AuthorManifest, OrderMode, PdfConfig, RenderedFrame, Schedule,
};
use lopdf::{Document, Object};

fn five_author_manifest() -> AuthorManifest {
    parse_manifest(
        r#"{
          "title": "Cross Validation Fixture",
          "authors": [
            {"id": "alice", "display_name": "Alice Aardvark", "given_name": "Alice", "family_name": "Aardvark"},
            {"id": "bob", "display_name": "Bob Babbage", "given_name": "Bob", "family_name": "Babbage"},
            {"id": "carol", "display_name": "Carol Curie", "given_name": "Carol", "family_name": "Curie"},
            {"id": "dan", "display_name": "Dan Dirac", "given_name": "Dan", "family_name": "Dirac"},
            {"id": "eve", "display_name": "Eve Euler", "given_name": "Eve", "family_name": "Euler"}
          ]
        }"#,
    )
    .unwrap()
}

fn animated_fixture() -> (Schedule, Vec<RenderedFrame>, AuthorManifest, Vec<u8>) {
    let manifest = five_author_manifest();
    let schedule = build_schedule(&manifest, OrderMode::Shuffle).unwrap();
    let rendered: Vec<RenderedFrame> = schedule
        .frames
        .iter()
        .map(|f| layout_frame(f, &manifest).unwrap())
        .collect();
    let bytes =
        build_animated_pdf(&schedule, &rendered, &manifest, &PdfConfig::default()).unwrap();
    (schedule, rendered, manifest, bytes)
}

#[test]
fn third_party_parser_loads_the_animated_pdf() {
    let (schedule, _, _, bytes) = animated_fixture();
    let doc = Document::load_mem(&bytes).expect("lopdf parses the animated output");
    assert_eq!(doc.get_pages().len(), 1);

    let catalog = doc.catalog().unwrap();
    let ocprops = catalog
        .get(b"OCProperties")
        .and_then(Object::as_dict)
        .expect("catalog carries /OCProperties");
    let ocgs = ocprops.get(b"OCGs").and_then(Object::as_array).unwrap();
    assert_eq!(ocgs.len(), schedule.frames.len());
    let defaults = ocprops
        .get(b"D")
        .and_then(Object::as_dict)
        .and_then(|d| d.get(b"ON"))
        .and_then(Object::as_array)
        .unwrap();
    assert_eq!(defaults.len(), 1, "exactly one OCG default-visible");
}

#[test]
fn third_party_parser_reads_the_viewer_script() {
    let (schedule, _, _, bytes) = animated_fixture();
    let doc = Document::load_mem(&bytes).unwrap();
    let catalog = doc.catalog().unwrap();
    let names = catalog.get(b"Names").and_then(Object::as_dict).unwrap();
    let js_tree = names.get(b"JavaScript").and_then(Object::as_dict).unwrap();
    let pairs = js_tree.get(b"Names").and_then(Object::as_array).unwrap();
    let action_id = pairs[1].as_reference().unwrap();
    let action = doc.get_object(action_id).and_then(Object::as_dict).unwrap();
    let js_id = action.get(b"JS").and_then(Object::as_reference).unwrap();
    let script = doc
        .get_object(js_id)
        .and_then(Object::as_stream)
        .map(|s| String::from_utf8(s.content.clone()).unwrap())
        .unwrap();
    assert!(script.contains(&format!("var FRAME_COUNT = {};", schedule.frames.len())));
    assert!(script.contains("var FPS = 12;"));
    assert!(script.contains("app.setInterval"));
}

#[test]
fn third_party_parser_extracts_frame_text() {
    let (_, rendered, _, bytes) = animated_fixture();
    let doc = Document::load_mem(&bytes).unwrap();
    let (_, page_id) = doc.get_pages().into_iter().next().unwrap();
    let page = doc.get_object(page_id).and_then(Object::as_dict).unwrap();
    let resources = page.get(b"Resources").and_then(Object::as_dict).unwrap();
    let xobjects = resources.get(b"XObject").and_then(Object::as_dict).unwrap();
    let fr1 = xobjects.get(b"Fr1").and_then(Object::as_reference).unwrap();
    let stream = doc.get_object(fr1).and_then(Object::as_stream).unwrap();
    let content = String::from_utf8(stream.content.clone()).unwrap();
    for run in &rendered[0].runs {
        assert!(
            content.contains(&run.text),
            "frame 1 content stream should show {:?}",
            run.text
        );
    }
    assert!(
        stream.dict.get(b"OC").is_ok(),
        "frame XObject is bound to its OCG"
    );
}

#[test]
fn third_party_parser_extracts_page_text_of_the_static_pdf() {
    let manifest = five_author_manifest();
    let schedule = build_schedule(&manifest, OrderMode::Fixed).unwrap();
    let rendered = layout_frame(&schedule.frames[0], &manifest).unwrap();
    let bytes = build_static_pdf(&rendered, &manifest, 0).unwrap();
    let doc = Document::load_mem(&bytes).expect("lopdf parses the static output");
    let text = doc.extract_text(&[1]).unwrap();
    assert!(text.contains("Cross Validation Fixture"), "{text:?}");
}
