use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use dstream::bench::{run_bench, write_bench, BenchConfig, DepthRange};
use dstream::explode::explode_table;
use dstream::lookup::lookup;
use dstream::vectors::{check, generate, read_vectors, write_vectors, GridConfig};
use dstream::Algorithm;

const EXIT_DATA: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "dstream", version, about = "Fixed-capacity stream downsampling tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explode (T, hex) dumps into one row per stored item.
    Explode {
        input: PathBuf,
        #[arg(long)]
        value_bits: u32,
        /// Output table; rejected rows go to `<output>.rejects`.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Generate or check conformance vectors.
    #[command(group(ArgGroup::new("mode").required(true).args(["generate", "check"])))]
    Validate {
        #[arg(long)]
        generate: bool,
        #[arg(long, value_name = "PATH")]
        check: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "steady,stretched,tilted")]
        algos: Vec<Algorithm>,
        #[arg(long = "max-S", alias = "max-s", default_value_t = 64)]
        max_sites: u64,
        #[arg(long = "max-T", alias = "max-t", default_value_t = 1024)]
        max_t: u64,
        /// Extra steady vectors at random depths, per site count.
        #[arg(long, default_value_t = 0)]
        deep_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where generated vectors go; stdout if omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Time site selection across buffer sizes and depth windows.
    Bench {
        #[arg(long, default_value = "steady")]
        algo: Algorithm,
        #[arg(long, value_delimiter = ',', default_value = "64,256,1024")]
        sizes: Vec<u64>,
        /// Half-open windows `lo:hi`.
        #[arg(long, value_delimiter = ',', default_value = "0:65536")]
        depths: Vec<DepthRange>,
        #[arg(long, default_value_t = 30)]
        replicates: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the ingest time held at each site.
    Lookup {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long = "S", alias = "sites")]
        sites: u64,
        #[arg(long = "T", alias = "t")]
        t: u64,
    },
}

fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("dstream: {msg}");
    ExitCode::from(code)
}

fn explode(input: &Path, value_bits: u32, output: &Path) -> ExitCode {
    if let Err(e) = dstream::surface::check_value_bits(value_bits) {
        return fail(EXIT_USAGE, e);
    }
    let mut rejects_path = output.as_os_str().to_owned();
    rejects_path.push(".rejects");
    let opened = File::open(input).and_then(|i| {
        Ok((
            i,
            BufWriter::new(File::create(output)?),
            BufWriter::new(File::create(&rejects_path)?),
        ))
    });
    let (input, out, rej) = match opened {
        Ok(files) => files,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    match explode_table(BufReader::new(input), value_bits, out, rej) {
        Ok(summary) if summary.rejects == 0 => ExitCode::SUCCESS,
        Ok(summary) => fail(
            EXIT_DATA,
            format!("{} of {} rows rejected", summary.rejects, summary.rows),
        ),
        // missing columns and unreadable tables
        Err(e) => fail(EXIT_USAGE, e),
    }
}

#[allow(clippy::too_many_arguments)]
fn validate(
    generate_mode: bool,
    check_path: Option<PathBuf>,
    algos: Vec<Algorithm>,
    max_sites: u64,
    max_t: u64,
    deep_samples: usize,
    seed: u64,
    output: Option<PathBuf>,
) -> ExitCode {
    if generate_mode {
        let cfg = GridConfig {
            algos,
            max_sites,
            max_t,
            deep_samples,
            seed,
        };
        let vectors = match generate(&cfg) {
            Ok(v) => v,
            Err(e) => return fail(EXIT_USAGE, e),
        };
        let written = sink(output.as_deref())
            .map_err(csv::Error::from)
            .and_then(|w| write_vectors(w, &vectors));
        return match written {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_USAGE, e),
        };
    }
    let path = check_path.expect("clap enforces one mode");
    let vectors = match File::open(&path)
        .map_err(|e| dstream::Error::Parse(e.to_string()))
        .and_then(|f| read_vectors(BufReader::new(f)))
    {
        Ok(v) => v,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", path.display())),
    };
    let mismatches = check(&vectors);
    for m in &mismatches {
        let actual = match &m.actual {
            Ok(sel) => format!("{:?}", sel.sites()),
            Err(e) => e.to_string(),
        };
        eprintln!(
            "mismatch at vector {}: {} S={} T={} expected {:?}, got {actual}",
            m.index,
            m.vector.algo,
            m.vector.sites,
            m.vector.t,
            m.vector.expected.sites()
        );
    }
    if mismatches.is_empty() {
        println!("{} vectors ok", vectors.len());
        ExitCode::SUCCESS
    } else {
        fail(
            EXIT_DATA,
            format!("{} of {} vectors mismatched", mismatches.len(), vectors.len()),
        )
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Explode {
            input,
            value_bits,
            output,
        } => explode(&input, value_bits, &output),
        Command::Validate {
            generate,
            check,
            algos,
            max_sites,
            max_t,
            deep_samples,
            seed,
            output,
        } => validate(generate, check, algos, max_sites, max_t, deep_samples, seed, output),
        Command::Bench {
            algo,
            sizes,
            depths,
            replicates,
            output,
        } => {
            let cfg = BenchConfig {
                algo,
                sizes,
                depths,
                replicates,
            };
            if let Err(e) = cfg.validate() {
                return fail(EXIT_USAGE, e);
            }
            let rows = match run_bench(&cfg) {
                Ok(rows) => rows,
                Err(e) => return fail(EXIT_DATA, e),
            };
            match sink(output.as_deref())
                .map_err(csv::Error::from)
                .and_then(|w| write_bench(w, &rows))
            {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_DATA, e),
            }
        }
        Command::Lookup { algo, sites, t } => match lookup(&algo, sites, t) {
            Ok(table) => {
                let mut out = io::stdout().lock();
                for (k, tbar) in table.entries().iter().enumerate() {
                    let tbar = tbar.map(|x| x.to_string()).unwrap_or_default();
                    if writeln!(out, "{k}\t{tbar}").is_err() {
                        return ExitCode::from(EXIT_DATA);
                    }
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(EXIT_DATA, e),
        },
    }
}
