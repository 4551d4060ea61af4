use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kzb_cli::docs::{self, SeriesFormat, TableFormat};
use kzb_cli::{exit_code, render_json, render_md, render_text, run_suite, Orders, Params, Suite};

#[derive(Parser)]
#[command(name = "kzb", version, about = "Exact verification of the elliptic KZB connection")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Md,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Word length N of the free Lie algebra.
        #[arg(long)]
        lie_deg: Option<usize>,
        /// u-order K.
        #[arg(long)]
        u_order: Option<i32>,
        /// q-order M.
        #[arg(long)]
        q_order: Option<i32>,
        /// Degree of the numeric transports.
        #[arg(long)]
        numeric_deg: Option<usize>,
        /// Range of the Bernoulli identity.
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        /// Largest modular weight for the modforms, qdr and hodge suites.
        #[arg(long, default_value_t = 14)]
        max_weight: u32,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[cfg(feature = "fault-injection")]
        #[arg(long, value_enum)]
        corrupt: Option<kzb_cli::Fault>,
    },
    /// Print the table of p_2m(u, v).
    P2mTable {
        #[arg(long, default_value_t = 24)]
        max_weight: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
    /// Dump exact series coefficients.
    Series {
        #[command(subcommand)]
        kind: SeriesKind,
    },
    /// Numeric Drinfeld associator.
    Associator {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 2048)]
        steps: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum SeriesKind {
    /// G_k.
    Eisenstein {
        weight: u32,
        #[arg(long, default_value_t = 10)]
        order: i32,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
        format: SeriesFormat,
    },
    /// q Π (1 - q^n)^24.
    Delta0 {
        #[arg(long, default_value_t = 10)]
        order: i32,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
        format: SeriesFormat,
    },
    /// The Jacobi form 𝔽(u, v).
    #[command(name = "jacobiF")]
    JacobiF {
        #[arg(long, default_value_t = 3)]
        u: i32,
        #[arg(long, default_value_t = 3)]
        v: i32,
        #[arg(long, default_value_t = 3)]
        q: i32,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
        format: SeriesFormat,
    },
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Verify {
            suite,
            lie_deg,
            u_order,
            q_order,
            numeric_deg,
            max_n,
            max_weight,
            tolerance,
            seed,
            format,
            #[cfg(feature = "fault-injection")]
            corrupt,
        } => {
            let mut orders = Orders::from_env()?;
            orders.n = lie_deg.unwrap_or(orders.n);
            orders.k = u_order.unwrap_or(orders.k);
            orders.m = q_order.unwrap_or(orders.m);
            orders.numeric_n = numeric_deg.unwrap_or(orders.numeric_n);
            orders.validate()?;
            if max_weight < 4 || max_weight % 2 == 1 {
                bail!("--max-weight must be even and at least 4");
            }
            if !(tolerance > 0.0) {
                bail!("--tolerance must be positive");
            }
            #[allow(unused_mut)]
            let mut params = Params { orders, max_n, max_weight, tolerance, seed, fault: None };
            #[cfg(feature = "fault-injection")]
            {
                params.fault = corrupt;
            }
            let reports = run_suite(suite, &params);
            let out = match format {
                ReportFormat::Text => render_text(&reports),
                ReportFormat::Md => render_md(&reports),
                ReportFormat::Json => render_json(&reports),
            };
            print!("{out}");
            Ok(exit_code(&reports))
        }
        Cmd::P2mTable { max_weight, format } => {
            print!("{}", docs::p2m_document(max_weight, format)?);
            Ok(0)
        }
        Cmd::Series { kind } => {
            let out = match kind {
                SeriesKind::Eisenstein { weight, order, format } => {
                    docs::eisenstein_document(weight, order, format).context("eisenstein")?
                }
                SeriesKind::Delta0 { order, format } => docs::delta0_document(order, format),
                SeriesKind::JacobiF { u, v, q, format } => {
                    if u < 1 || v < 1 || q < 1 {
                        bail!("orders must be positive");
                    }
                    docs::jacobi_document(u, v, q, format)
                }
            };
            print!("{out}");
            Ok(0)
        }
        Cmd::Associator { degree, steps, tolerance, format } => {
            if steps == 0 {
                bail!("--steps must be positive");
            }
            let (out, ok) = docs::associator_document(degree, steps, tolerance, format)?;
            print!("{out}");
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
