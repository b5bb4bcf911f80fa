use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nervecert::certificate::{
    error_exit_code, obstruction_report, recheck, run_certificate, vkf_demo, Certificate,
    PipelineOptions,
};
use nervecert::format::{parse_rational_list, ComplexFile, FamilyFile, WitnessFile};
use nervecert::nerve::{nerve_exhaustive_capped, nerve_helly_capped, DEFAULT_CAP};
use nervecert::obstruction::default_params;
use nervecert::{barycentric_subdivision, Error, Face, Point, Rational, Result, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "nervecert",
    version,
    about = "Exact nerves, subdivisions and mod-2 Van Kampen certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a complex: a skeleton of a simplex, or a (double) subdivision.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Nerve of a family of convex bodies.
    Nerve {
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Helly)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Mod-2 Van Kampen obstruction of a complex in R^{2d}.
    Vk {
        complex: PathBuf,
        d: usize,
        /// Comma-separated moment-curve parameters, one per vertex in ascending order.
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Check a family in R^{2d} against the subdivision of a source complex.
    Certificate {
        family: PathBuf,
        source: PathBuf,
        d: usize,
        /// Witness file to use instead of computed witnesses.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        /// Replace one witness, e.g. `1,4=3/2,1/2`.
        #[arg(long, value_name = "FACE=COORDS")]
        corrupt_witness: Option<String>,
        /// Placement parameters for the final obstruction of the source complex.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Crossing pair of the d-skeleton of the (2d+2)-simplex on the moment curve.
    VkfDemo {
        d: usize,
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Re-verify a certificate from its own data.
    Recheck { certificate: PathBuf },
}

#[derive(Subcommand)]
enum BuildKind {
    /// k-skeleton of the n-simplex on vertices 0..=n.
    Skeleton {
        n: usize,
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Barycentric subdivision with its vertex-label table.
    Sd {
        complex: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Subdivision of the subdivision.
    Sd2 {
        complex: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Helly,
    Exhaustive,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, format!("{text}\n"))
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = io::stdout().lock();
                match writeln!(stdout, "{text}") {
                    Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                        Err(Error::Parse(format!("stdout: {e}")))
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    ComplexFile::parse(&read(path)?)?.to_complex()
}

fn params_or_default(params: &Option<String>, k: &SimplicialComplex) -> Result<Vec<Rational>> {
    match params {
        Some(s) => parse_rational_list(s),
        None => Ok(default_params(k)),
    }
}

fn parse_corruption(s: &str) -> Result<(Face, Point<Rational>)> {
    let (face, coords) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected FACE=COORDS, got {s:?}")))?;
    let vertices = face
        .split(',')
        .map(|v| v.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("bad face {face:?}: {e}")))?;
    Ok((
        Face::new(vertices)?,
        Point::new(parse_rational_list(coords)?),
    ))
}

fn emit_certificate(cert: &Certificate, out: &Output) -> Result<i32> {
    out.emit(&cert.to_json())?;
    eprintln!("{}", cert.kind());
    Ok(cert.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build { kind } => {
            let (file, out) = match kind {
                BuildKind::Skeleton { n, k, out } => (
                    ComplexFile::from_complex(&SimplicialComplex::skeleton(n, k)?),
                    out,
                ),
                BuildKind::Sd { complex, out } => {
                    let sd = barycentric_subdivision(&read_complex(&complex)?);
                    (ComplexFile::from_subdivision(&sd), out)
                }
                BuildKind::Sd2 { complex, out } => {
                    let sd = barycentric_subdivision(&read_complex(&complex)?);
                    let sd2 = barycentric_subdivision(sd.complex());
                    (ComplexFile::from_subdivision(&sd2), out)
                }
            };
            out.emit(&file.to_json())?;
            Ok(0)
        }
        Command::Nerve {
            family,
            mode,
            cap,
            out,
        } => {
            let family = FamilyFile::parse(&read(&family)?)?.to_family()?;
            let nerve = match mode {
                Mode::Helly => nerve_helly_capped(&family, cap)?,
                Mode::Exhaustive => nerve_exhaustive_capped(&family, cap)?,
            };
            out.emit(&ComplexFile::from_complex(&nerve).to_json())?;
            Ok(0)
        }
        Command::Vk {
            complex,
            d,
            params,
            out,
        } => {
            let k = read_complex(&complex)?;
            let params = params_or_default(&params, &k)?;
            let report = obstruction_report(&k, d, &params)?;
            emit_certificate(&Certificate::ObstructionReport(report), &out)
        }
        Command::Certificate {
            family,
            source,
            d,
            witnesses,
            corrupt_witness,
            params,
            cap,
            out,
        } => {
            let family = FamilyFile::parse(&read(&family)?)?.to_family()?;
            let l = read_complex(&source)?;
            let opts = PipelineOptions {
                cap: Some(cap),
                params: params.as_deref().map(parse_rational_list).transpose()?,
                witnesses: witnesses
                    .map(|p| WitnessFile::parse(&read(&p)?)?.to_assignment())
                    .transpose()?,
                corrupt: corrupt_witness
                    .as_deref()
                    .map(parse_corruption)
                    .transpose()?,
            };
            emit_certificate(&run_certificate(&family, &l, d, &opts)?, &out)
        }
        Command::VkfDemo { d, params, out } => {
            let params = params.as_deref().map(parse_rational_list).transpose()?;
            emit_certificate(&vkf_demo(d, params)?, &out)
        }
        Command::Recheck { certificate } => {
            let cert = Certificate::parse(&read(&certificate)?)?;
            if recheck(&cert)? {
                Output { output: None }.emit(&format!("verified {}", cert.kind()))?;
                Ok(0)
            } else {
                Output { output: None }.emit(&format!("rejected {}", cert.kind()))?;
                Ok(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Genericity(_)) {
                eprintln!("hint: the placement is not generic; pass different --params");
            }
            error_exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
