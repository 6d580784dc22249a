//! Command-line front end: constructs, checks, enumerates and renders torus
//! tilings stored as [`TilingDocument`]s.

pub mod document;
mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hextorus::construct::{
    central_minimal, parse_signs, strip_tiling, type_i_minimal, type_ii_minimal, type_iii_minimal, FreeVector,
    StripFrame, TorusTiling,
};
use hextorus::covering::{build_cover, enumerate_coverings, format_table, TilingType};
use hextorus::embed::{CurveParams, DrapeOptions, Embedding, EDGE_SUBDIVISIONS};
use hextorus::geom::Point2;
use hextorus::hexagon::{classify, spec_from_polygon, CLASSIFY_TOL};
use hextorus::lattice::{sl2_reduce, HnfTriple, Modulus, DEFAULT_SEARCH_BOUND};
use hextorus::moduli::{connected_components, sample_region, BBox, Family, DEFAULT_RESOLUTION};
use hextorus::validate::{validate, DEFAULT_TOL};
use num_complex::Complex64;

pub use document::TilingDocument;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] hextorus::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("usage: {0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Exit status when a document fails validation.
pub const EXIT_INVALID: i32 = 1;
/// Exit status for errors of any other kind.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hextorus", version, about = "Monohedral hexagonal tilings of flat tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a minimal tiling and write its document
    Construct(ConstructArgs),
    /// Check a document; exits 0 iff the tiling is valid
    Validate {
        #[arg(default_value = "-")]
        doc: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Report which tiling types the first tile satisfies
    Classify {
        #[arg(default_value = "-")]
        doc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Lift a tiling to the sublattice (m, n; l)
    Cover {
        #[arg(default_value = "-")]
        doc: PathBuf,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// List the coverings of a torus by minimal tilings of one type
    Enumerate {
        #[arg(long = "type")]
        kind: TilingType,
        /// `RE,IM` or `w3`
        #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
        tau: Modulus,
        #[arg(long)]
        tiles: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Moduli-space regions
    #[command(subcommand)]
    Moduli(ModuliCommand),
    /// Drawings of a tiling
    #[command(subcommand)]
    Render(RenderCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructType {
    I,
    Ii,
    Iii,
    Cs,
    Strip,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long = "type")]
    kind: ConstructType,
    /// Modulus `RE,IM` or `w3` (type i)
    #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
    tau: Option<Modulus>,
    /// Height of the rectangular torus (type ii)
    #[arg(long)]
    y: Option<f64>,
    /// Initial point of the free vector `X,Y` (types i, ii, strip)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    i: Option<[f64; 2]>,
    /// Terminal point of the free vector `X,Y` (types i, ii, strip)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    t: Option<[f64; 2]>,
    /// Free corner `X,Y` (type iii)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    p: Option<[f64; 2]>,
    /// Lattice generators `RE,IM` (type cs)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    alpha: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    beta: Option<[f64; 2]>,
    /// Free corner `X,Y` (type cs)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    u: Option<[f64; 2]>,
    /// Strip frame `H,W,S` (type strip)
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    frame: Option<[f64; 3]>,
    /// Sign word such as `++-` (type strip)
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Attach the validation report to the document
    #[arg(long)]
    with_report: bool,
    #[arg(short, long, default_value = "-")]
    output: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ModuliCommand {
    /// Sample a moduli region on a grid and write it as a PGM image
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long = "type")]
    kind: TilingType,
    #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
    tau: Option<Modulus>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    i: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    alpha: Option<[f64; 2]>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    beta: Option<[f64; 2]>,
    /// `NX,NY`
    #[arg(long, value_parser = parse_grid, default_value_t = GridSize(DEFAULT_RESOLUTION, DEFAULT_RESOLUTION))]
    grid: GridSize,
    /// `X0,Y0,X1,Y1`; defaults to the fundamental domain grown by 1.5
    /// domains each way
    #[arg(long, value_parser = parse_quad, allow_hyphen_values = true)]
    bbox: Option<[f64; 4]>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GridSize(usize, usize);

impl std::fmt::Display for GridSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

#[derive(Debug, Subcommand)]
enum RenderCommand {
    /// K×K translates of the fundamental domain as SVG
    Svg {
        #[arg(default_value = "-")]
        doc: PathBuf,
        #[arg(long, default_value_t = 3)]
        extent: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The tiling draped on a conformally embedded torus, as OBJ (or PLY
    /// when the output ends in `.ply`)
    Obj {
        #[arg(default_value = "-")]
        doc: PathBuf,
        /// `rect`, `rect:A`, `hopf:A,B,K` or `hopf:w3`
        #[arg(long)]
        embed: String,
        /// Surface samples per direction
        #[arg(long, default_value_t = 128)]
        resolution: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn numbers(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {s:?}"));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    let v = numbers(s, 2)?;
    Ok([v[0], v[1]])
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    let v = numbers(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

fn parse_quad(s: &str) -> std::result::Result<[f64; 4], String> {
    let v = numbers(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_tau(s: &str) -> std::result::Result<Modulus, String> {
    if s.eq_ignore_ascii_case("w3") {
        return Ok(Modulus::omega3());
    }
    let [re, im] = parse_pair(s)?;
    Modulus::from_parts(re, im).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<GridSize, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok(GridSize(
            x.trim().parse().map_err(|e| format!("{x:?}: {e}"))?,
            y.trim().parse().map_err(|e| format!("{y:?}: {e}"))?,
        )),
        _ => Err(format!("expected NX,NY, got {s:?}")),
    }
}

fn point(p: [f64; 2]) -> Point2 {
    Point2::new(p[0], p[1])
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Streams available to a command.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { io.stdout } else { io.stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(cli.command, io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_input(path: &Path, io: &mut Io<'_>) -> CliResult<String> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn read_doc(path: &Path, io: &mut Io<'_>) -> CliResult<TilingDocument> {
    Ok(TilingDocument::from_json(&read_input(path, io)?)?)
}

/// Writes to stdout for `-`, otherwise to a temporary file in the target
/// directory that is renamed into place.
fn write_output(path: &Path, bytes: &[u8], io: &mut Io<'_>) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        return io.stdout.write_all(bytes).map_err(io_err);
    }
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> CliResult<i32> {
    match cmd {
        Command::Construct(args) => {
            let out = args.output.clone();
            let with_report = args.with_report;
            let t = construct(args)?;
            let report = with_report.then(|| validate(&t, DEFAULT_TOL));
            let doc = TilingDocument::from_tiling(&t, report);
            write_output(&out, doc.to_json()?.as_bytes(), io)?;
            Ok(0)
        }
        Command::Validate { doc, tol, json } => {
            let t = read_doc(&doc, io)?.to_tiling()?;
            let report = validate(&t, tol);
            let w = &mut *io.stdout;
            let io_err = |source| CliError::Io {
                path: "stdout".into(),
                source,
            };
            if json {
                let text = serde_json::to_string_pretty(&report).expect("reports serialize");
                writeln!(w, "{text}").map_err(io_err)?;
            } else {
                let c = &report.census;
                writeln!(
                    w,
                    "{}: f={} v={} h={} e={} (euler {})",
                    if report.passed { "valid" } else { "INVALID" },
                    c.f,
                    c.v,
                    c.h,
                    c.e,
                    c.euler()
                )
                .map_err(io_err)?;
                for f in &report.failures {
                    writeln!(w, "  {}", serde_json::to_string(f).expect("failures serialize")).map_err(io_err)?;
                }
            }
            Ok(if report.passed { 0 } else { EXIT_INVALID })
        }
        Command::Classify { doc, json } => {
            let t = read_doc(&doc, io)?.to_tiling()?;
            let spec = spec_from_polygon(&t.tiles[0])?;
            let report = classify(&spec, CLASSIFY_TOL);
            let mut text = String::new();
            if json {
                text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
            } else {
                for (name, c) in [
                    ("I", &report.type_i),
                    ("II", &report.type_ii),
                    ("III", &report.type_iii),
                    ("CS", &report.central),
                    ("strip", &report.strip),
                ] {
                    text += &format!(
                        "{name:<6}{:<4} residual {:.3e}  labelling {:?}  {}\n",
                        if c.flag { "yes" } else { "no" },
                        c.residual,
                        c.labeling,
                        if c.generic { "generic" } else { "special" }
                    );
                }
            }
            write_output(Path::new("-"), text.as_bytes(), io)?;
            Ok(0)
        }
        Command::Cover { doc, m, n, l, output } => {
            let t = read_doc(&doc, io)?.to_tiling()?;
            let c = build_cover(&t, HnfTriple::new(m, n, l)?)?;
            write_output(&output, TilingDocument::from_tiling(&c, None).to_json()?.as_bytes(), io)?;
            Ok(0)
        }
        Command::Enumerate { kind, tau, tiles, bound } => {
            let rows = enumerate_coverings(kind, tau, tiles, bound)?;
            write_output(Path::new("-"), format_table(kind, &rows).as_bytes(), io)?;
            Ok(0)
        }
        Command::Moduli(ModuliCommand::Sample(args)) => {
            let family = sample_family(&args)?;
            let bbox = match args.bbox {
                Some([x0, y0, x1, y1]) => BBox::new(Point2::new(x0, y0), Point2::new(x1, y1))?,
                None => family.default_bbox()?,
            };
            let grid = sample_region(&family, bbox, args.grid.0, args.grid.1)?;
            write_output(&args.output, &grid.to_pgm(), io)?;
            let summary = format!(
                "members {} of {}, components {}\n",
                grid.count(),
                grid.bits.len(),
                connected_components(&grid).0
            );
            write_output(Path::new("-"), summary.as_bytes(), io)?;
            Ok(0)
        }
        Command::Render(RenderCommand::Svg { doc, extent, output }) => {
            if extent == 0 {
                return Err(CliError::Usage("--extent must be at least 1".into()));
            }
            let t = read_doc(&doc, io)?.to_tiling()?;
            write_output(&output, render::svg(&t, extent).as_bytes(), io)?;
            Ok(0)
        }
        Command::Render(RenderCommand::Obj {
            doc,
            embed,
            resolution,
            output,
        }) => {
            let t = read_doc(&doc, io)?.to_tiling()?;
            let target = parse_embedding(&embed, &t)?;
            let opts = DrapeOptions {
                nu: resolution,
                nv: resolution,
                edge_subdivisions: EDGE_SUBDIVISIONS,
            };
            let mesh = hextorus::embed::drape_tiling(&t, &target, opts)?;
            let ply = output.extension().is_some_and(|e| e.eq_ignore_ascii_case("ply"));
            let text = if ply { mesh.to_ply() } else { mesh.to_obj() };
            write_output(&output, text.as_bytes(), io)?;
            Ok(0)
        }
    }
}

fn parse_embedding(spec: &str, t: &TorusTiling) -> CliResult<Embedding> {
    let (kind, params) = spec.split_once(':').unwrap_or((spec, ""));
    match (kind, params) {
        ("rect", "") => Ok(Embedding::Rect {
            a: sl2_reduce(t.modulus()).0.im(),
        }),
        ("rect", a) => {
            let a: f64 = a.parse().map_err(|e| CliError::Usage(format!("rect:{a}: {e}")))?;
            Ok(Embedding::Rect { a })
        }
        ("hopf", "w3") => Ok(Embedding::Hopf {
            curve: CurveParams::omega3_preset(),
        }),
        ("hopf", p) => {
            let parts: Vec<&str> = p.split(',').collect();
            let bad = || CliError::Usage(format!("expected hopf:A,B,K, got {spec:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let k: u32 = parts[2].trim().parse().map_err(|_| bad())?;
            Ok(Embedding::Hopf {
                curve: CurveParams::new(a, b, k)?,
            })
        }
        _ => Err(CliError::Usage(format!("unknown embedding {spec:?}; use rect, rect:A, hopf:A,B,K or hopf:w3"))),
    }
}

/// Rejects flags that do not belong to the chosen type.
fn only(kind: &str, given: &[(&str, bool)], allowed: &[&str]) -> CliResult<()> {
    for (name, present) in given {
        if *present && !allowed.contains(name) {
            return Err(CliError::Usage(format!("--{name} does not apply to type {kind}")));
        }
    }
    Ok(())
}

fn need<T: Copy>(v: Option<T>, name: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("type {kind} needs --{name}")))
}

fn construct(a: ConstructArgs) -> CliResult<TorusTiling> {
    let given = [
        ("tau", a.tau.is_some()),
        ("y", a.y.is_some()),
        ("i", a.i.is_some()),
        ("t", a.t.is_some()),
        ("p", a.p.is_some()),
        ("alpha", a.alpha.is_some()),
        ("beta", a.beta.is_some()),
        ("u", a.u.is_some()),
        ("frame", a.frame.is_some()),
        ("signs", a.signs.is_some()),
    ];
    let sigma = |kind| -> CliResult<FreeVector> {
        Ok(FreeVector::new(point(need(a.i, "i", kind)?), point(need(a.t, "t", kind)?))?)
    };
    let t = match a.kind {
        ConstructType::I => {
            only("i", &given, &["tau", "i", "t"])?;
            type_i_minimal(need(a.tau, "tau", "i")?, sigma("i")?)?
        }
        ConstructType::Ii => {
            only("ii", &given, &["y", "i", "t"])?;
            type_ii_minimal(need(a.y, "y", "ii")?, sigma("ii")?)?
        }
        ConstructType::Iii => {
            only("iii", &given, &["p"])?;
            type_iii_minimal(point(need(a.p, "p", "iii")?))?
        }
        ConstructType::Cs => {
            only("cs", &given, &["alpha", "beta", "u"])?;
            central_minimal(
                complex(need(a.alpha, "alpha", "cs")?),
                complex(need(a.beta, "beta", "cs")?),
                point(need(a.u, "u", "cs")?),
            )?
        }
        ConstructType::Strip => {
            only("strip", &given, &["frame", "i", "t", "signs"])?;
            let [h, w, s] = need(a.frame, "frame", "strip")?;
            let word = a.signs.as_deref().ok_or_else(|| CliError::Usage("type strip needs --signs".into()))?;
            strip_tiling(StripFrame::new(h, w, s)?, sigma("strip")?, &parse_signs(word)?)?
        }
    };
    Ok(t)
}

fn sample_family(a: &SampleArgs) -> CliResult<Family> {
    let given = [
        ("tau", a.tau.is_some()),
        ("y", a.y.is_some()),
        ("i", a.i.is_some()),
        ("alpha", a.alpha.is_some()),
        ("beta", a.beta.is_some()),
    ];
    let kind = a.kind.name().to_ascii_lowercase();
    Ok(match a.kind {
        TilingType::I => {
            only(&kind, &given, &["tau", "i"])?;
            Family::TypeI {
                tau: need(a.tau, "tau", &kind)?,
                initial: point(need(a.i, "i", &kind)?),
            }
        }
        TilingType::II => {
            only(&kind, &given, &["y", "i"])?;
            Family::TypeII {
                y: need(a.y, "y", &kind)?,
                initial: point(need(a.i, "i", &kind)?),
            }
        }
        TilingType::III => {
            only(&kind, &given, &[])?;
            Family::TypeIII
        }
        TilingType::Central => {
            only(&kind, &given, &["alpha", "beta"])?;
            Family::Central {
                alpha: complex(need(a.alpha, "alpha", &kind)?),
                beta: complex(need(a.beta, "beta", &kind)?),
            }
        }
    })
}
