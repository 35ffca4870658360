//! Command-line front end. Exit codes: 0 success, 1 verification or
//! certification failure, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cantor_bouquet::model::{self, ModelPoint};
use cantor_bouquet::plane::{self, ComplexPoint, Viewport};
use cantor_bouquet::strata::{self, AlphaIndex};
use cantor_bouquet::verify::{self, OutputFormat, RunConfig};
use cantor_bouquet::SymbolSeq;

#[derive(Parser)]
#[command(name = "bouquet", version, about = "Certified computations for the exponential straight-brush model")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Target enclosure width.
    #[arg(long, global = true, default_value_t = model::DEFAULT_TOL)]
    tol: f64,
    /// Cap on scanned terms, nesting levels and orbit steps.
    #[arg(long, global = true, default_value_t = model::DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for the sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report (or the image, for `render`) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose t* of a shifted sequence.
    Tstar {
        /// Sequence descriptor as JSON, or @path to a file holding it.
        seq: String,
        #[arg(long, default_value_t = 0)]
        shift: usize,
    },
    /// Enclose the endpoint height t_s.
    Tmin { seq: String },
    /// Classify the point ⟨t, s⟩.
    Classify {
        seq: String,
        #[arg(long)]
        t: f64,
    },
    /// Test the endpoint of s for membership in X_alpha.
    Strata {
        seq: String,
        /// JSON list such as [0,3].
        #[arg(long, default_value = "[]")]
        alpha: String,
        /// Also search for the least extension N >= this floor.
        #[arg(long)]
        extend_from: Option<usize>,
    },
    /// Build witnesses approaching the endpoint of s from outside X_{alpha⌢N}.
    Witness {
        seq: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Escape-time image of e^z + a as a binary PPM.
    Render {
        /// Parameter as `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        a: String,
        /// `re_min,re_max,im_min,im_max`.
        #[arg(long, allow_hyphen_values = true, default_value = "-2,4,-3.141592653589793,3.141592653589793")]
        viewport: String,
        #[arg(long, default_value_t = 200)]
        width: usize,
        #[arg(long, default_value_t = 200)]
        height: usize,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        /// Real-part escape guard.
        #[arg(long, default_value_t = plane::ESCAPE_RE)]
        radius: f64,
    },
    /// Locate a cycle of e^z + a by Newton's method.
    Cycle {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 1)]
        period: usize,
        #[arg(long = "from", allow_hyphen_values = true, default_value = "0")]
        start: String,
    },
    /// Run the property suites.
    Verify {
        /// Run only the named suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn check(e: impl std::fmt::Display) -> Failure {
    Failure::Check(e.to_string())
}

fn read_seq(arg: &str) -> Result<SymbolSeq, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    SymbolSeq::from_json(&text).map_err(usage)
}

fn parse_complex(s: &str) -> Result<ComplexPoint, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| usage(format!("bad number {p:?} in {s:?}")));
    let (re, im) = match parts.as_slice() {
        [re] => (num(re)?, 0.0),
        [re, im] => (num(re)?, num(im)?),
        _ => return Err(usage(format!("expected re or re,im, got {s:?}"))),
    };
    ComplexPoint::new(re, im).map_err(usage)
}

fn parse_alpha(s: &str) -> Result<AlphaIndex, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("alpha {s:?}: {e}")))
}

/// Output sink: JSON value or a text rendering.
struct Emit<'a> {
    global: &'a Global,
}

impl Emit<'_> {
    fn send<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let body = match self.global.format {
            Format::Json => serde_json::to_string_pretty(value).map_err(check)? + "\n",
            Format::Text => text(),
        };
        match &self.global.out {
            Some(path) => std::fs::write(path, body).map_err(|e| check(format!("{}: {e}", path.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let config = RunConfig {
        tol: g.tol,
        budget: g.budget,
        seed: g.seed,
        format: match g.format {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        },
    };
    config.validate().map_err(usage)?;
    let precision = config.precision();
    let emit = Emit { global: g };
    match &cli.command {
        Command::Tstar { seq, shift } => {
            let s = read_seq(seq)?;
            let detail = model::t_star_detail(&s, *shift, g.budget);
            let iv = detail.value.to_interval();
            emit.send(&json!({"t_star": iv, "shift": shift, "horizon": detail.horizon}), || format!("{iv}\n"))
        }
        Command::Tmin { seq } => {
            let s = read_seq(seq)?;
            let r = model::t_min_detail(&s, &precision);
            let report = json!({"t_min": r.enclosure, "levels": r.levels, "converged": r.converged});
            emit.send(&report, || format!("{}\n", r.enclosure))?;
            if r.converged {
                Ok(())
            } else {
                Err(check(format!("t_min did not reach width {} (best {})", g.tol, r.enclosure)))
            }
        }
        Command::Classify { seq, t } => {
            let s = read_seq(seq)?;
            let x = ModelPoint::new(*t, s).map_err(usage)?;
            let c = model::classify(&x, g.budget.min(10_000), &precision);
            emit.send(&c, || format!("{c:?}\n"))
        }
        Command::Strata { seq, alpha, extend_from } => {
            let s = read_seq(seq)?;
            let alpha = parse_alpha(alpha)?;
            let x = ModelPoint::endpoint(s, &precision).map_err(check)?;
            let member = strata::in_x(&alpha, &x, &precision);
            let extension = match extend_from {
                Some(floor) if member.is_true() => Some(strata::find_extension(&alpha, &x, *floor, &precision).map_err(check)?),
                _ => None,
            };
            let report = json!({"alpha": alpha, "t": x.t(), "member": member, "extension": extension});
            emit.send(&report, || match extension {
                Some(n) => format!("{member:?}; least extension N = {n}\n"),
                None => format!("{member:?}\n"),
            })
        }
        Command::Witness { seq, alpha, n, count } => {
            let s = read_seq(seq)?;
            let alpha = parse_alpha(alpha)?;
            let x = ModelPoint::endpoint(s, &precision).map_err(check)?;
            let reports = strata::nowhere_dense_demo(&x, &alpha, *n, *count, &precision).map_err(check)?;
            emit.send(&reports, || {
                reports
                    .iter()
                    .map(|r| {
                        format!(
                            "m={} claim1={} claim2={} distance={:.3e}\n",
                            r.m, r.claim1_margin, r.claim2_bound, r.distance
                        )
                    })
                    .collect()
            })
        }
        Command::Render { a, viewport, width, height, max_iter, radius } => {
            let a = parse_complex(a)?;
            let v: Vec<f64> = viewport
                .split(',')
                .map(|p| p.trim().parse::<f64>().map_err(|_| usage(format!("bad viewport {viewport:?}"))))
                .collect::<Result<_, _>>()?;
            let [re_min, re_max, im_min, im_max] = v[..] else {
                return Err(usage("viewport needs four numbers"));
            };
            let vp = Viewport { re_min, re_max, im_min, im_max, width_px: *width, height_px: *height };
            let summary = plane::render_escape(a, &vp, *max_iter, *radius, g.out.as_deref()).map_err(|e| match e {
                plane::PlaneError::Io(_) => check(e),
                other => usage(other),
            })?;
            let text = match g.format {
                Format::Json => serde_json::to_string_pretty(&summary).map_err(check)?,
                Format::Text => {
                    format!("escaped={} retained={} hash={}", summary.escaped_pixels, summary.retained_pixels, summary.hash)
                }
            };
            println!("{text}");
            Ok(())
        }
        Command::Cycle { a, period, start } => {
            let a = parse_complex(a)?;
            let seed = parse_complex(start)?;
            let info = plane::find_cycle(a, *period, seed).map_err(|e| match e {
                plane::PlaneError::NoConvergence { .. } => check(e),
                other => usage(other),
            })?;
            emit.send(&info, || {
                format!("period {} at {} multiplier {} ({:?})\n", info.period, info.points[0], info.multiplier, info.kind)
            })
        }
        Command::Verify { suites } => {
            let report = if suites.is_empty() {
                verify::run_all(&config)
            } else {
                let mut results = Vec::new();
                for name in suites {
                    results.push(verify::run_suite(name, &config).ok_or_else(|| usage(format!("unknown suite {name:?}")))?);
                }
                verify::VerifyReport {
                    seed: config.seed,
                    tol: config.tol,
                    budget: config.budget,
                    passed: results.iter().all(|r| r.passed),
                    suites: results,
                }
            };
            emit.send(&report, || report.to_text())?;
            if report.passed {
                Ok(())
            } else {
                Err(check("verification failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
