//! `amor` — animated author-order PDFs from a JSON manifest.
//!
//! Exit codes: 0 success, 1 usage error, 2 manifest/input parse or
//! validation error, 3 generation error (infeasible constraints, overflow
//! guard, unrepresentable text), 4 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use amor_core::{
    audit, build_animated_pdf, build_schedule, build_static_pdf, emit_latex, layout_frame,
    parse_bib, parse_manifest, parse_schedule, rotate_citation, serialize_schedule, validate,
    AuthorManifest, Error, OrderMode, PdfConfig, RenderedFrame, Schedule, StartMode,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GENERATION: u8 = 3;
const EXIT_IO: u8 = 4;

type CliResult<T> = Result<T, (u8, String)>;

#[derive(Parser)]
#[command(
    name = "amor",
    version,
    about = "Author order randomized at viewing time: animated PDFs, LaTeX bundles, schedules, audits, rotating citations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the animated PDF (one frame per author-order permutation)
    Build(BuildArgs),
    /// Write a LaTeX bundle: frames/frame_1..F.pdf plus main.tex
    EmitLatex(EmitLatexArgs),
    /// Build the static fallback PDF showing one seed-chosen frame
    Static(StaticArgs),
    /// Print the frame schedule as JSON
    Schedule(ScheduleArgs),
    /// Audit a schedule: position uniformity, visibility rates, violations
    Verify(VerifyArgs),
    /// Print rotating citation strings for a bibliography
    Cite(CiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ModeArg {
    /// Random permutations (enumeration or sampling, chosen automatically)
    Shuffle,
    /// Single frame, authors sorted by given name
    AlphaGiven,
    /// Single frame, authors sorted by family name
    AlphaFamily,
    /// Single frame, authors in manifest order
    Fixed,
}

impl From<ModeArg> for OrderMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Shuffle => OrderMode::Shuffle,
            ModeArg::AlphaGiven => OrderMode::AlphaGiven,
            ModeArg::AlphaFamily => OrderMode::AlphaFamily,
            ModeArg::Fixed => OrderMode::Fixed,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Author manifest (JSON)
    manifest: PathBuf,
    /// Override the manifest seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the manifest frames-per-second
    #[arg(long)]
    fps: Option<f64>,
    /// Override the manifest frame budget
    #[arg(long)]
    frames: Option<usize>,
    /// Frame ordering mode
    #[arg(long, value_enum, default_value_t = ModeArg::Shuffle)]
    mode: ModeArg,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output PDF path
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct EmitLatexArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output directory for main.tex and frames/
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct StaticArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output PDF path
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ScheduleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Write to a file instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Audit this serialized schedule instead of rebuilding one
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// Emit the audit report as JSON instead of a table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CiteArgs {
    /// Bibliography (.bib, supported subset)
    bib: PathBuf,
    /// Rotation epoch selecting the lead author
    #[arg(long, default_value_t = 0)]
    epoch: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("amor: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Build(args) => {
            let manifest = load_manifest(&args.common)?;
            let schedule = make_schedule(&manifest, args.common.mode)?;
            let rendered = render_frames(&schedule, &manifest)?;
            let config = PdfConfig {
                start_mode: StartMode::ViewingTime,
                clock_ms: clock_ms()?,
            };
            let bytes = build_animated_pdf(&schedule, &rendered, &manifest, &config)
                .map_err(from_core)?;
            write_bytes(&args.output, &bytes)
        }
        Command::EmitLatex(args) => {
            let manifest = load_manifest(&args.common)?;
            let schedule = make_schedule(&manifest, args.common.mode)?;
            let rendered = render_frames(&schedule, &manifest)?;
            emit_latex(&schedule, &rendered, &manifest, &args.output, clock_ms()?)
                .map_err(from_core)?;
            Ok(())
        }
        Command::Static(args) => {
            let mut manifest = load_manifest(&args.common)?;
            manifest.playback.frame_budget = 1;
            let schedule = make_schedule(&manifest, args.common.mode)?;
            let rendered = render_frames(&schedule, &manifest)?;
            let bytes =
                build_static_pdf(&rendered[0], &manifest, clock_ms()?).map_err(from_core)?;
            write_bytes(&args.output, &bytes)
        }
        Command::Schedule(args) => {
            let manifest = load_manifest(&args.common)?;
            let schedule = make_schedule(&manifest, args.common.mode)?;
            let text = serialize_schedule(&schedule);
            match args.output {
                Some(path) => write_bytes(&path, text.as_bytes()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Verify(args) => {
            let manifest = load_manifest(&args.common)?;
            let schedule = match &args.schedule {
                Some(path) => {
                    let text = read_text(path)?;
                    parse_schedule(&text).map_err(from_core)?
                }
                None => make_schedule(&manifest, args.common.mode)?,
            };
            let report = audit(&schedule, &manifest).map_err(from_core)?;
            if args.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            Ok(())
        }
        Command::Cite(args) => {
            let text = read_text(&args.bib)?;
            let entries = parse_bib(&text).map_err(from_core)?;
            for entry in &entries {
                match rotate_citation(entry, args.epoch) {
                    Some(citation) => println!("{}: {citation}", entry.key),
                    None => println!("{}: (no authors)", entry.key),
                }
            }
            Ok(())
        }
    }
}

fn load_manifest(args: &CommonArgs) -> CliResult<AuthorManifest> {
    let text = read_text(&args.manifest)?;
    let mut manifest = parse_manifest(&text).map_err(from_core)?;
    if let Some(seed) = args.seed {
        manifest.playback.seed = seed;
    }
    if let Some(fps) = args.fps {
        manifest.playback.fps = fps;
    }
    if let Some(frames) = args.frames {
        manifest.playback.frame_budget = frames;
    }
    let report = validate(&manifest);
    if !report.is_valid() {
        let findings = report
            .findings
            .iter()
            .map(|f| format!("  {}: {}", f.path, f.message))
            .collect::<Vec<_>>()
            .join("\n");
        return Err((
            EXIT_INPUT,
            format!("manifest validation failed:\n{findings}"),
        ));
    }
    Ok(manifest)
}

fn make_schedule(manifest: &AuthorManifest, mode: ModeArg) -> CliResult<Schedule> {
    build_schedule(manifest, mode.into()).map_err(from_core)
}

fn render_frames(schedule: &Schedule, manifest: &AuthorManifest) -> CliResult<Vec<RenderedFrame>> {
    schedule
        .frames
        .iter()
        .map(|frame| layout_frame(frame, manifest).map_err(from_core))
        .collect()
}

/// Clock value for deterministic builds; defaults to epoch 0.
fn clock_ms() -> CliResult<u64> {
    match std::env::var("AMOR_CLOCK_MS") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| (EXIT_USAGE, format!("invalid AMOR_CLOCK_MS value {value:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err((EXIT_USAGE, format!("unreadable AMOR_CLOCK_MS: {e}"))),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| (EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes)
        .map_err(|e| (EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn from_core(err: Error) -> (u8, String) {
    let code = match &err {
        Error::ManifestSyntax { .. }
        | Error::ManifestSchema { .. }
        | Error::ManifestSemantic { .. }
        | Error::ScheduleParse { .. }
        | Error::BibParse { .. } => EXIT_INPUT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_GENERATION,
    };
    (code, err.to_string())
}
