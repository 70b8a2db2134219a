use clap::{Args, Parser, Subcommand, ValueEnum};
use flexproofs::algebra::{BilinearCtx, Scalar};
use flexproofs::bench::{self, BenchReport};
use flexproofs::encoding::{self, Reader, Writer};
use flexproofs::fc::FcCommitment;
use flexproofs::mle_opening::{self, MleEvalProof};
use flexproofs::vc::{self, VcCommitment, VcOpening, VcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(
    name = "flexproofs",
    version,
    about = "Vector commitments with linear-time all-proofs generation"
)]
struct Cli {
    /// Worker threads for library calls (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a parameter file.
    Setup {
        #[arg(long = "big-n")]
        big_n: usize,
        #[arg(long)]
        batch: usize,
        #[arg(long)]
        out: PathBuf,
        /// Derive the trapdoors from a seed. Insecure: for testing only.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Commit to a vector and write the commitment.
    Commit {
        #[command(flatten)]
        input: VectorInput,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate every opening proof and write them to one file.
    OpenAll {
        #[command(flatten)]
        input: VectorInput,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the opening proof of one index.
    Open {
        #[command(flatten)]
        input: VectorInput,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an opening proof; exits nonzero on rejection.
    Verify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        commitment: PathBuf,
        #[arg(long)]
        index: usize,
        /// The claimed entry, in decimal.
        #[arg(long)]
        value: String,
        #[arg(long)]
        opening: PathBuf,
    },
    /// Prove the multilinear extension of the vector at a point.
    ProveEval {
        #[command(flatten)]
        input: VectorInput,
        /// Comma-separated decimal coordinates, most significant first.
        #[arg(long)]
        point: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an evaluation proof; exits nonzero on rejection.
    VerifyEval {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        commitment: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        proof: PathBuf,
    },
    /// Benchmark the FC scheme.
    BenchFc {
        /// Comma-separated vector lengths.
        #[arg(long, value_delimiter = ',', default_values_t = [256usize, 1024, 4096])]
        n: Vec<usize>,
        /// Comma-separated batch sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 32])]
        t: Vec<usize>,
        #[command(flatten)]
        common: BenchArgs,
    },
    /// Benchmark the vector commitment.
    BenchVc {
        /// Comma-separated vector lengths.
        #[arg(long = "big-n", value_delimiter = ',', default_values_t = [1usize << 10, 1 << 12, 1 << 14])]
        big_n: Vec<usize>,
        /// Comma-separated batch sizes (default: log N, 2 log N, log² N).
        #[arg(long, value_delimiter = ',')]
        batch: Option<Vec<usize>>,
        /// Add the large sizes 2^16 and 2^18.
        #[arg(long)]
        large: bool,
        #[command(flatten)]
        common: BenchArgs,
    },
    /// Run the property suite at small sizes.
    Selftest,
}

#[derive(Args)]
struct VectorInput {
    #[arg(long)]
    params: PathBuf,
    /// File with one decimal entry per line; random from --seed if absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scalar(s: &str) -> CliResult<Scalar> {
    Scalar::from_str(s.trim()).map_err(|_| format!("not a decimal field element: {s:?}").into())
}

fn parse_point(s: &str) -> CliResult<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar).collect()
}

impl VectorInput {
    fn load(&self) -> CliResult<(VcParams, Vec<Scalar>)> {
        let pp = VcParams::load(&self.params)?;
        let m = match &self.input {
            Some(path) => std::fs::read_to_string(path)?
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_scalar)
                .collect::<CliResult<Vec<_>>>()?,
            None => bench::random_scalars(pp.len(), &mut ChaCha20Rng::seed_from_u64(self.seed)),
        };
        Ok((pp, m))
    }
}

/// Writes to a sibling temporary file first so readers never see a
/// partial file.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn read_commitment(path: &Path) -> CliResult<VcCommitment> {
    let bytes = std::fs::read(path)?;
    Ok(VcCommitment(FcCommitment(encoding::gt_from_bytes(&bytes)?)))
}

fn emit_report(report: &BenchReport, format: Format, out: Option<&Path>) -> CliResult<()> {
    if let Some(path) = out {
        write_atomic(path, report.to_json().as_bytes())?;
    }
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

fn verdict(ok: bool) -> ExitCode {
    println!("{}", if ok { "accept" } else { "reject" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.cmd {
        Cmd::Setup {
            big_n,
            batch,
            out,
            seed,
        } => {
            let pp = match seed {
                Some(seed) => {
                    eprintln!("warning: seeded setup; anyone with the seed can forge proofs");
                    VcParams::setup_seeded(big_n, batch, seed)?
                }
                None => VcParams::setup(big_n, batch, &mut rand::rngs::OsRng)?,
            };
            pp.save(&out)?;
            println!(
                "N={} mu={} nu={} b={} curve={} -> {}",
                pp.len(),
                pp.subvectors(),
                pp.subvector_len(),
                pp.batch_size(),
                BilinearCtx::CURVE_ID,
                out.display()
            );
        }
        Cmd::Commit { input, out } => {
            let (pp, m) = input.load()?;
            let (c, _) = vc::commit(&pp, &m)?;
            write_atomic(&out, &encoding::gt_bytes(&c.0 .0))?;
            println!("commitment -> {}", out.display());
        }
        Cmd::OpenAll { input, out } => {
            let (pp, m) = input.load()?;
            let (c, aux) = vc::commit(&pp, &m)?;
            let all = vc::open_all(&pp, &c, &aux, &m)?;
            let mut w = Writer::new();
            w.u64(all.len() as u64);
            for opening in all.iter() {
                let bytes = opening.to_bytes();
                w.u32(bytes.len() as u32).bytes(&bytes);
            }
            write_atomic(&out, &w.finish())?;
            println!("{} openings -> {}", all.len(), out.display());
        }
        Cmd::Open { input, index, out } => {
            let (pp, m) = input.load()?;
            let (c, aux) = vc::commit(&pp, &m)?;
            let opening = vc::open(&pp, &c, &aux, &m, index)?;
            write_atomic(&out, &opening.to_bytes())?;
            println!(
                "opening of index {index} ({} bytes) -> {}",
                opening.size_bytes(),
                out.display()
            );
        }
        Cmd::Verify {
            params,
            commitment,
            index,
            value,
            opening,
        } => {
            let pp = VcParams::load(params)?;
            let c = read_commitment(&commitment)?;
            let bytes = std::fs::read(opening)?;
            // a file from open-all holds every opening; pick the index's
            let opening = if bytes.len() >= 8 && VcOpening::from_bytes(&bytes).is_err() {
                let mut r = Reader::new(&bytes);
                let count = r.u64()? as usize;
                if index >= count {
                    return Err(format!("index {index} not in a file of {count} openings").into());
                }
                let mut found = None;
                for i in 0..=index {
                    let len = r.u32()? as usize;
                    let chunk = r.take(len)?;
                    if i == index {
                        found = Some(VcOpening::from_bytes(chunk)?);
                    }
                }
                found.expect("loop reaches index")
            } else {
                VcOpening::from_bytes(&bytes)?
            };
            let ok = vc::verify(&pp, &c, index, parse_scalar(&value)?, &opening)?;
            return Ok(verdict(ok));
        }
        Cmd::ProveEval { input, point, out } => {
            let (pp, m) = input.load()?;
            let (c, aux) = vc::commit(&pp, &m)?;
            let proof = mle_opening::prove(&pp, &c, &aux, &parse_point(&point)?)?;
            write_atomic(&out, &proof.to_bytes())?;
            println!("y = {}", proof.y);
        }
        Cmd::VerifyEval {
            params,
            commitment,
            point,
            proof,
        } => {
            let pp = VcParams::load(params)?;
            let c = read_commitment(&commitment)?;
            let proof = MleEvalProof::from_bytes(&pp, &std::fs::read(proof)?)?;
            let ok = mle_opening::verify(&pp, &c, &parse_point(&point)?, &proof)?;
            println!("y = {}", proof.y);
            return Ok(verdict(ok));
        }
        Cmd::BenchFc { n, t, common } => {
            let report = bench::bench_fc(&n, &t, common.reps, common.seed)?;
            emit_report(&report, cli.format, common.out.as_deref())?;
        }
        Cmd::BenchVc {
            mut big_n,
            batch,
            large,
            common,
        } => {
            if large {
                big_n.extend([1 << 16, 1 << 18]);
            }
            let report = bench::bench_vc(&big_n, batch.as_deref(), common.reps, common.seed)?;
            emit_report(&report, cli.format, common.out.as_deref())?;
        }
        Cmd::Selftest => {
            let report = bench::selftest();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Table => print!("{}", report.to_table()),
            }
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match bench::with_threads(threads, || run(cli).map_err(|e| e.to_string())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
