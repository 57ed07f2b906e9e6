use criterion::{black_box, criterion_group, criterion_main, Criterion};

use amor_bench::{bibliography, manifest_with_authors};
use amor_core::{
    build_animated_pdf, build_schedule, enumerate_valid, inspect_pdf, layout_frame, measure_text,
    parse_bib, sample_frames, shuffle, shuffle_bib, OrderMode, PdfConfig, SplitMix64,
};

fn bench_shuffle(c: &mut Criterion) {
    c.bench_function("shuffle_100", |b| {
        let mut rng = SplitMix64::new(7);
        let mut items: Vec<u32> = (0..100).collect();
        b.iter(|| {
            shuffle(&mut rng, black_box(&mut items));
        });
    });
}

fn bench_enumerate(c: &mut Criterion) {
    let manifest = manifest_with_authors(6);
    c.bench_function("enumerate_valid_6", |b| {
        b.iter(|| enumerate_valid(black_box(&manifest)).unwrap());
    });
}

fn bench_sampling(c: &mut Criterion) {
    let manifest = manifest_with_authors(8);
    c.bench_function("sample_frames_120_of_8", |b| {
        b.iter(|| {
            let mut rng = SplitMix64::new(0);
            sample_frames(black_box(&manifest), 120, &mut rng).unwrap()
        });
    });
}

fn bench_layout(c: &mut Criterion) {
    let manifest = manifest_with_authors(5);
    let schedule = build_schedule(&manifest, OrderMode::Shuffle).unwrap();
    c.bench_function("measure_text_line", |b| {
        b.iter(|| measure_text(black_box("Ada Benchling, Bo Benchling, Cy Benchling"), 12.0));
    });
    c.bench_function("layout_120_frames", |b| {
        b.iter(|| {
            for frame in &schedule.frames {
                black_box(layout_frame(frame, &manifest).unwrap());
            }
        });
    });
}

fn bench_pdf(c: &mut Criterion) {
    let manifest = manifest_with_authors(5);
    let schedule = build_schedule(&manifest, OrderMode::Shuffle).unwrap();
    let rendered: Vec<_> = schedule
        .frames
        .iter()
        .map(|f| layout_frame(f, &manifest).unwrap())
        .collect();
    let config = PdfConfig::default();
    c.bench_function("build_animated_pdf_120", |b| {
        b.iter(|| build_animated_pdf(&schedule, &rendered, &manifest, &config).unwrap());
    });
    let bytes = build_animated_pdf(&schedule, &rendered, &manifest, &config).unwrap();
    c.bench_function("inspect_pdf_120", |b| {
        b.iter(|| inspect_pdf(black_box(&bytes)).unwrap());
    });
}

fn bench_bib(c: &mut Criterion) {
    let text = bibliography();
    c.bench_function("parse_bib_24_entries", |b| {
        b.iter(|| parse_bib(black_box(&text)).unwrap());
    });
    let entries = parse_bib(&text).unwrap();
    c.bench_function("shuffle_bib_24_entries", |b| {
        b.iter(|| shuffle_bib(black_box(&entries), 42));
    });
}

criterion_group!(
    benches,
    bench_shuffle,
    bench_enumerate,
    bench_sampling,
    bench_layout,
    bench_pdf,
    bench_bib
);
criterion_main!(benches);
