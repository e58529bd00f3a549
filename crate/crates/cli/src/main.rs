use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bruhat::appendix::{antichain_hypercubes, dh_multiset, is_cosimple};
use bruhat::doubles::ds_multiset;
use bruhat::hcd::{enumerate_hcds, rtilde, shortcuts, standard_hcds};
use bruhat::rpoly::{rtilde_dyer, ReflectionOrder, RtildeCache, CACHE_ENV};
use bruhat::sweep::{run_sweep, Executor, Mode, SweepConfig};
use bruhat::{CheckKind, Error, Interval, Permutation, QPoly};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "bruhat",
    version,
    about = "Bruhat intervals, R-tilde polynomials and hypercube decompositions"
)]
struct Cli {
    /// Persistent R-tilde cache (JSON lines).
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Ignore any configured cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Record per-check timings in `verify` reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Dyer,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// R-tilde polynomial of [u,v].
    Rtilde {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Reduced word of w0 for path counting, e.g. "1,2,1" (default: the
        /// standard word).
        #[arg(long)]
        order: Option<String>,
    },
    /// Summary of [u,v]: size, decompositions, shortcuts.
    Inspect {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Also list the Bruhat-graph edges.
        #[arg(long)]
        edges: bool,
    },
    /// Shortcut set W^z.
    Shortcuts {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        z: String,
    },
    /// Double shortcuts DS(z,z') and DS(z',z).
    Ds {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        z2: String,
    },
    /// Double hypercubes DH(z,z') and DH(z',z).
    Dh {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        z2: String,
    },
    /// Sweep verification checks over intervals of S_n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated check names, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        sample_size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_interval_size: Option<usize>,
        /// How the lemma-paths check turns its hypothesis into order
        /// constraints: coatom or edge.
        #[arg(long, default_value = "coatom")]
        lemma_reading: String,
        /// Run on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotComparable { .. } => 2,
        Error::Io(_) => 4,
        Error::Config(_) => 5,
        _ => 3,
    }
}

fn perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn parse_word(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::InvalidWord(s.to_string());
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect()
    }
}

fn list(items: &[Permutation]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn coeffs(p: &QPoly) -> serde_json::Value {
    match p.to_u64s() {
        Some(c) => json!(c),
        None => json!(p
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()),
    }
}

struct Ctx {
    cache: Arc<RtildeCache>,
    format: Format,
}

impl Ctx {
    fn interval(&self, u: &str, v: &str) -> Result<Interval, Error> {
        Interval::with_cache(perm(u)?, perm(v)?, self.cache.clone())
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cache = match (&cli.cache, cli.no_cache) {
        (Some(path), false) => Arc::new(RtildeCache::open(path)?),
        _ => Arc::new(RtildeCache::in_memory()),
    };
    let ctx = Ctx {
        cache: cache.clone(),
        format: cli.format,
    };
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let is_ds = matches!(cli.command, Command::Ds { .. });
    let code = match cli.command {
        Command::Rtilde {
            u,
            v,
            method,
            order,
        } => {
            let iv = ctx.interval(&u, &v)?;
            let order = match order {
                Some(w) => ReflectionOrder::from_word(iv.n(), &parse_word(&w)?)?,
                None => ReflectionOrder::standard(iv.n()),
            };
            let rec = (method != Method::Dyer).then(|| rtilde(&iv));
            let dyer = match method {
                Method::Recurrence => None,
                _ => Some(rtilde_dyer(&iv, &order)?),
            };
            let agree = match (&rec, &dyer) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            match ctx.format {
                Format::Json => {
                    let mut obj = json!({ "u": iv.u(), "v": iv.v() });
                    if let Some(r) = &rec {
                        obj["recurrence"] = json!(r.to_string());
                        obj["coeffs"] = coeffs(r);
                    }
                    if let Some(d) = &dyer {
                        obj["dyer"] = json!(d.to_string());
                        obj["order"] = json!(order.to_string());
                        obj.as_object_mut()
                            .unwrap()
                            .entry("coeffs")
                            .or_insert(coeffs(d));
                    }
                    if let Some(a) = agree {
                        obj["agree"] = json!(a);
                    }
                    writeln!(out, "{obj}")?;
                }
                Format::Text => {
                    let parts: Vec<String> = rec
                        .iter()
                        .chain(dyer.iter())
                        .map(ToString::to_string)
                        .chain(agree.map(|a| if a { "AGREE" } else { "DISAGREE" }.to_string()))
                        .collect();
                    writeln!(out, "{}", parts.join(" | "))?;
                }
            }
            if agree == Some(false) {
                1
            } else {
                0
            }
        }
        Command::Inspect { u, v, edges } => {
            let iv = ctx.interval(&u, &v)?;
            let standard = standard_hcds(&iv);
            let hcds = enumerate_hcds(&iv, false);
            let amazing = enumerate_hcds(&iv, true);
            let mut w = Vec::new();
            for z in &hcds {
                w.push((*z, shortcuts(&iv, z)?));
            }
            let rt = rtilde(&iv);
            let cosimple = is_cosimple(&iv);
            match ctx.format {
                Format::Json => {
                    let mut obj = json!({
                        "n": iv.n(),
                        "u": iv.u(),
                        "v": iv.v(),
                        "size": iv.size(),
                        "rtilde": rt.to_string(),
                        "cosimple": cosimple,
                        "upper_hcds": hcds,
                        "amazing_hcds": amazing,
                        "shortcuts": w.iter().map(|(z, s)| json!({ "z": z, "w": s })).collect::<Vec<_>>(),
                    });
                    obj["standard_hcds"] = match &standard {
                        Ok(s) => json!(s
                            .iter()
                            .map(|h| json!({
                                "z": h.element,
                                "kinds": h.kinds.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            }))
                            .collect::<Vec<_>>()),
                        Err(e) => json!(e.to_string()),
                    };
                    if edges {
                        obj["edges"] = json!(iv
                            .edges()
                            .iter()
                            .map(|(a, b, t)| json!([a, b, t.to_string()]))
                            .collect::<Vec<_>>());
                    }
                    writeln!(out, "{obj}")?;
                }
                Format::Text => {
                    writeln!(out, "interval: [{},{}] in S_{}", iv.u(), iv.v(), iv.n())?;
                    writeln!(out, "size: {}", iv.size())?;
                    writeln!(out, "rtilde: {rt}")?;
                    writeln!(out, "co-simple: {cosimple}")?;
                    match &standard {
                        Ok(s) => {
                            let names: Vec<String> = s
                                .iter()
                                .map(|h| {
                                    let kinds: Vec<String> =
                                        h.kinds.iter().map(ToString::to_string).collect();
                                    format!("{} ({})", h.element, kinds.join(", "))
                                })
                                .collect();
                            writeln!(out, "standard HCDs: {}", names.join("; "))?;
                        }
                        Err(e) => writeln!(out, "standard HCDs: {e}")?,
                    }
                    writeln!(out, "upper HCDs: {}", list(&hcds))?;
                    writeln!(out, "amazing HCDs: {}", list(&amazing))?;
                    for (z, s) in &w {
                        writeln!(out, "W^{z}: {}", list(s))?;
                    }
                    if edges {
                        for (a, b, t) in iv.edges() {
                            writeln!(out, "{a} -> {b} {t}")?;
                        }
                    }
                }
            }
            0
        }
        Command::Shortcuts { u, v, z } => {
            let iv = ctx.interval(&u, &v)?;
            let w = shortcuts(&iv, &perm(&z)?)?;
            match ctx.format {
                Format::Json => writeln!(out, "{}", json!({ "z": z, "shortcuts": w }))?,
                Format::Text => writeln!(out, "{}", list(&w))?,
            }
            0
        }
        Command::Ds { u, v, z, z2 } | Command::Dh { u, v, z, z2 } => {
            let iv = ctx.interval(&u, &v)?;
            let (a, b) = (perm(&z)?, perm(&z2)?);
            let f = if is_ds { ds_multiset } else { dh_multiset };
            let forward = f(&iv, &a, &b)?;
            let backward = f(&iv, &b, &a)?;
            let name = if is_ds { "DS" } else { "DH" };
            match ctx.format {
                Format::Json => {
                    let mut obj = json!({
                        "z": a,
                        "z2": b,
                        "forward": forward.to_string(),
                        "backward": backward.to_string(),
                        "symmetric": forward == backward,
                    });
                    if !is_ds {
                        obj["cubes"] = json!(antichain_hypercubes(&iv, &a)?
                            .iter()
                            .map(|(c, p)| json!({ "p": p, "rank": c.rank(), "vertices": c.embedding.vertices() }))
                            .collect::<Vec<_>>());
                    }
                    writeln!(out, "{obj}")?;
                }
                Format::Text => {
                    writeln!(out, "{name}({a},{b}) = {forward}")?;
                    writeln!(out, "{name}({b},{a}) = {backward}")?;
                    writeln!(
                        out,
                        "{}",
                        if forward == backward {
                            "SYMMETRIC"
                        } else {
                            "ASYMMETRIC"
                        }
                    )?;
                }
            }
            0
        }
        Command::Verify {
            n,
            checks,
            mode,
            sample_size,
            seed,
            max_interval_size,
            lemma_reading,
            sequential,
        } => {
            let checks = if checks == "all" {
                CheckKind::ALL.to_vec()
            } else {
                checks
                    .split(',')
                    .map(|c| c.trim().parse())
                    .collect::<Result<Vec<_>, _>>()?
            };
            let config = SweepConfig {
                n,
                mode: mode.parse::<Mode>()?,
                sample_size,
                seed,
                max_interval_size,
                checks,
                lemma_reading: lemma_reading.parse()?,
                threads: cli.threads,
                timings: cli.timings,
            };
            let executor = if sequential {
                Executor::Sequential
            } else {
                Executor::Parallel {
                    threads: cli.threads,
                }
            };
            let report = run_sweep(&config, cache.clone(), executor)?;
            match ctx.format {
                Format::Json => report.write_json(&mut out)?,
                Format::Text => report.write_text(&mut out)?,
            }
            u8::from(report.has_failures())
        }
    };
    out.flush()?;
    cache.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
