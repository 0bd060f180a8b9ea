use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use k3bm_cli::commands;
use k3bm_cli::pipeline::{certify_all, pipeline};
use k3bm_cli::{guarded, set_workers, Caps, Ctx, Format, Record, Report, RunConfig, Status};

#[derive(Parser)]
#[command(name = "k3bm", version, about = "Verifies a Brauer-Manin obstruction to the Hasse principle on a degree-2 K3 surface")]
struct Cli {
    /// Data directory holding the published constants and their manifest.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long = "cap-basis", global = true)]
    basis: Option<usize>,
    #[arg(long = "cap-degree", global = true)]
    degree: Option<u32>,
    #[arg(long = "cap-reductions", global = true)]
    reductions: Option<usize>,
    /// Cap on enumerated tuples.
    #[arg(long = "cap-enumeration", global = true, default_value_t = 1u64 << 32)]
    enumeration: u64,
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Fourfold(FourfoldCmd),
    #[command(subcommand)]
    K3(K3Cmd),
    #[command(subcommand)]
    Local(LocalCmd),
    #[command(subcommand)]
    Interp(InterpCmd),
    /// Collects all evidence and assembles the obstruction certificate.
    CertifyAll {
        /// Writes the evidence as JSON.
        #[arg(long)]
        evidence_out: Option<PathBuf>,
        /// Writes the certificate as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the construction steps end to end.
    Pipeline,
}

#[derive(Subcommand)]
enum FourfoldCmd {
    /// Saturates the quadrics by the two planes and compares the cubics.
    Build,
    /// Exhaustive scan for primitive zeros of the cubic.
    CheckInsoluble {
        #[arg(long, default_value_t = 9)]
        modulus: u64,
    },
    CertifySmooth {
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Subcommand)]
enum K3Cmd {
    BadPrimes,
    Classify {
        #[arg(long)]
        prime: Option<BigInt>,
    },
    Tritangent {
        #[arg(long)]
        prime: u64,
    },
    Weil {
        #[arg(long, default_value_t = 13)]
        prime: u64,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Normalized Weil polynomial in `t`; defaults to `weil_f<p>.txt`.
        #[arg(long)]
        weil: Option<PathBuf>,
    },
    /// Assembles a certificate from an evidence file.
    Certify {
        #[arg(long)]
        evidence: PathBuf,
    },
}

#[derive(Subcommand)]
enum LocalCmd {
    Scan {
        #[arg(long)]
        modulus: u64,
        /// Integer forms in the poly text format; repeat for a system.
        #[arg(long = "poly", required = true)]
        polys: Vec<PathBuf>,
    },
    QpCheck {
        #[arg(long)]
        prime: BigInt,
        /// `x,y,z`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 20)]
        precision: u32,
    },
    Table1 {
        #[arg(long, default_value_t = 20)]
        precision: u32,
    },
}

#[derive(Subcommand)]
enum InterpCmd {
    Solve {
        /// Rows `y0 z0 scale_known c0 c1 ... cd`.
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, default_value_t = 12)]
        degree: u32,
    },
    Extract {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
}

fn write_json<T: serde::Serialize>(path: &PathBuf, v: &T) -> anyhow::Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn run(cli: Cli) -> Report {
    let caps = Caps {
        max_basis: cli.caps.basis,
        max_degree: cli.caps.degree,
        max_reductions: cli.caps.reductions,
        budget: cli.caps.enumeration,
    };
    let data = cli.data.clone().unwrap_or_else(k3bm_core::data::DataDir::default_path);
    let cfg = match RunConfig::new(data, caps, cli.workers, cli.format) {
        Ok(c) => c,
        Err(e) => {
            let mut r = Report::new("config");
            r.push(Record::new("config", "", Status::InputError, format!("{e:#}")));
            return r;
        }
    };
    set_workers(cfg.workers);
    // interp commands and the local scan read only their own inputs
    match &cli.cmd {
        Cmd::Interp(InterpCmd::Solve { samples, degree }) => {
            return guarded("interp solve", "reconstruction", || commands::interp_solve(samples, *degree))
        }
        Cmd::Interp(InterpCmd::Extract { form, candidate }) => {
            return guarded("interp extract", "component extraction", || {
                commands::interp_extract(form, candidate, &cfg.caps.limits())
            })
        }
        Cmd::Local(LocalCmd::Scan { modulus, polys }) => {
            return guarded("local scan", "complete enumeration", || {
                commands::local_scan(*modulus, polys, cfg.caps.budget)
            })
        }
        Cmd::K3(K3Cmd::Certify { evidence }) => {
            return guarded("k3 certify", "certificate", || commands::k3_certify(evidence))
        }
        _ => {}
    }
    let ctx = match Ctx::open(&cfg) {
        Ok(c) => c,
        Err(e) => {
            let mut r = Report::new("data");
            r.push(k3bm_cli::error_record("data", "published constants", &e));
            return r;
        }
    };
    let ctx = &ctx;
    match cli.cmd {
        Cmd::Fourfold(FourfoldCmd::Build) => guarded("fourfold build", "surface ideal", || commands::fourfold_build(ctx)),
        Cmd::Fourfold(FourfoldCmd::CheckInsoluble { modulus }) => {
            guarded("fourfold check-insoluble", "insolubility", || commands::fourfold_check_insoluble(ctx, modulus))
        }
        Cmd::Fourfold(FourfoldCmd::CertifySmooth { prime }) => {
            guarded("fourfold certify-smooth", "smoothness", || commands::fourfold_certify_smooth(ctx, prime))
        }
        Cmd::K3(K3Cmd::BadPrimes) => guarded("k3 bad-primes", "bad primes", || Ok(commands::k3_bad_primes(ctx)?.0)),
        Cmd::K3(K3Cmd::Classify { prime }) => {
            guarded("k3 classify", "singularities", || Ok(commands::k3_classify(ctx, prime)?.0))
        }
        Cmd::K3(K3Cmd::Tritangent { prime }) => {
            guarded("k3 tritangent", "tritangent lines", || commands::k3_tritangent(ctx, prime))
        }
        Cmd::K3(K3Cmd::Weil { prime, kmax, weil }) => guarded("k3 weil", "Weil polynomial", || {
            Ok(commands::k3_weil(ctx, prime, kmax, weil.as_deref())?.0)
        }),
        Cmd::Local(LocalCmd::QpCheck { prime, point, precision }) => guarded("local qp-check", "local points", || {
            commands::local_qp_check(ctx, &prime, commands::parse_point(&point)?, precision)
        }),
        Cmd::Local(LocalCmd::Table1 { precision }) => {
            guarded("local table1", "local points", || Ok(commands::local_table1(ctx, precision)?.0))
        }
        Cmd::CertifyAll { evidence_out, out } => {
            let run = certify_all(ctx);
            let mut r = run.report;
            let writes = [
                evidence_out.map(|p| (write_json(&p, &run.evidence), p)),
                out.map(|p| (write_json(&p, &run.certificate), p)),
            ];
            for (res, p) in writes.into_iter().flatten() {
                if let Err(e) = res {
                    r.push(Record::new(
                        "output",
                        "",
                        Status::InputError,
                        format!("writing {}: {e:#}", p.display()),
                    ));
                }
            }
            r
        }
        Cmd::Pipeline => pipeline(ctx),
        Cmd::Interp(_) | Cmd::Local(LocalCmd::Scan { .. }) | Cmd::K3(K3Cmd::Certify { .. }) => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let report = run(cli);
    print!("{}", report.render(format));
    ExitCode::from(report.exit_code())
}
