use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3lat::char2::poly::HomPoly;
use k3lat::glue::CubeRoot;
use k3lat::report::{self, Command, Format, Params, RunConfig};

#[derive(Parser)]
#[command(name = "k3lat", version, about = "Exact lattice and characteristic-2 surface checks")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Lattice checks: dual bases, lemma searches, overlattices, root types, half-line searches.
    Lattice(Opts),
    /// Surface checks: singular points, splitting lines, dichotomy, recognition, separable covers.
    Surface(Opts),
    /// Both suites.
    All(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Extension degree of the field GF(2^k).
    #[arg(long, default_value_t = 8)]
    k: u32,
    /// Irreducible modulus as hex bits, replacing the built-in one.
    #[arg(long, value_parser = parse_hex_u32)]
    modulus: Option<u32>,
    /// Parameter r as a hex bit string.
    #[arg(long, requires = "s", conflicts_with_all = ["samples", "seed"])]
    r: Option<String>,
    /// Parameter s as a hex bit string.
    #[arg(long, requires = "r")]
    s: Option<String>,
    /// Number of seeded (r, s) samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for sampling.
    #[arg(long)]
    seed: Option<u64>,
    /// Add the class [G] for the cube root c (1, w, wbar).
    #[arg(long = "with-extra-glue", value_parser = parse_cube_root)]
    extra_glue: Option<CubeRoot>,
    /// Recognize the sextic in this polynomial JSON file.
    #[arg(long)]
    recognize: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Coordinate box radius for the lemma searches.
    #[arg(long = "lemma-box", default_value_t = 3)]
    lemma_box: u32,
    /// Run with r = 0 or s = 0.
    #[arg(long)]
    allow_degenerate: bool,
    #[arg(long, hide = true)]
    inject_corrupt_glue: bool,
}

fn parse_hex_u32(s: &str) -> Result<u32, String> {
    let t = s.trim_start_matches("0x");
    u32::from_str_radix(t, 16).map_err(|e| e.to_string())
}

fn parse_cube_root(s: &str) -> Result<CubeRoot, String> {
    s.parse().map_err(|e: k3lat::glue::GlueError| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("k3lat: {msg}");
    ExitCode::from(2)
}

fn config(command: Command, o: Opts) -> Result<RunConfig, String> {
    let params = match (o.r, o.s) {
        (Some(r), Some(s)) => Params::Fixed { r, s },
        _ => Params::Sampled { samples: o.samples.unwrap_or(20), seed: o.seed.unwrap_or(1) },
    };
    let recognize = match o.recognize {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(serde_json::from_str::<HomPoly>(&text).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };
    Ok(RunConfig {
        command,
        k: o.k,
        modulus: o.modulus,
        params,
        extra_glue: o.extra_glue,
        recognize,
        format: match o.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        lemma_box: o.lemma_box,
        allow_degenerate: o.allow_degenerate,
        inject_corrupt_glue: o.inject_corrupt_glue,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("K3LAT_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    return usage_error(e);
                }
            }
            _ => return usage_error(format!("K3LAT_THREADS must be a positive integer, got {v:?}")),
        }
    }
    let (command, opts) = match cli.command {
        Sub::Lattice(o) => (Command::Lattice, o),
        Sub::Surface(o) => (Command::Surface, o),
        Sub::All(o) => (Command::All, o),
    };
    let out = opts.out.clone();
    let cfg = match config(command, opts) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let rep = match report::run(&cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let rendered = rep.render();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                return usage_error(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report::exit_code(&rep) as u8)
}
