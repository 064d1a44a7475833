//! Command-line front end.
//!
//! Every command prints one JSON report on standard output and a short
//! summary on standard error. Exit codes: 0 success, 1 a verified claim
//! failed, 2 a size cap or search budget was hit, 3 bad input.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::claims::{run_claim, ClaimParams, CLAIMS};
use crate::error::{Error, Result};
use crate::lattice::Block;
use crate::mixing::{extend_electrical, extend_with_wire_frame};
use crate::render::{render, RenderFormat, Style};
use crate::report::{sha256_hex, PatternDump};
use crate::sft::{count_patterns, format_pattern, load_sft_file, parse_pattern, save_sft, SftDefinition};
use crate::structure::{count_periodic_points, fixed_points, PeriodSpec};
use crate::transfer::{entropy_bounds, EntropyUnit, PerronOptions};
use crate::wire::{build_electrical_shift, build_wire_shift, WireShift};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Directory for cached entropy results.
pub const CACHE_DIR_ENV: &str = "SFTKIT_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "sftkit", version, about = "Nearest-neighbour shifts of finite type and wire shifts")]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ShiftArgs {
    /// Built-in shift: wire_W, wire_Wk (with --k), wire_Wk?k=K, wire_Wel, full.
    #[arg(long, conflicts_with = "definition")]
    pub shift: Option<String>,
    /// Number of blanks for wire_Wk.
    #[arg(long)]
    pub k: Option<usize>,
    /// Alphabet size of the full shift.
    #[arg(long)]
    pub symbols: Option<usize>,
    /// Dimension of the full shift.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// JSON definition document instead of a built-in.
    #[arg(long)]
    pub definition: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Unit {
    Nats,
    Bits,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count locally valid patterns on a block.
    Count {
        #[command(flatten)]
        shift: ShiftArgs,
        /// Block extents, e.g. 3x2 or 1x1x2.
        #[arg(long)]
        block: String,
        /// Also report the count for each single-axis block of the same length.
        #[arg(long)]
        axis_extents: bool,
    },
    /// Strip entropy bounds from the Perron value of a transfer operator.
    Entropy {
        #[command(flatten)]
        shift: ShiftArgs,
        /// Axis along which the strip runs.
        #[arg(long, default_value_t = 1)]
        axis: usize,
        /// Cross-section side length.
        #[arg(long)]
        n: usize,
        /// Gluing gap for the lower bound.
        #[arg(long, default_value_t = 0)]
        g: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200_000)]
        max_iterations: usize,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
    },
    /// Run a named verification bundle; `list` shows them.
    Verify {
        claim: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
    },
    /// Render a pattern file.
    Render {
        #[command(flatten)]
        shift: ShiftArgs,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Write the render here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a wire pattern by a frame.
    Frame {
        #[command(flatten)]
        shift: ShiftArgs,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 2)]
        margin: u64,
        /// Write the framed pattern file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the definition document of a shift.
    Export {
        #[command(flatten)]
        shift: ShiftArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count points with the given periods, e.g. --periods 1x1x2.
    Periodic {
        #[command(flatten)]
        shift: ShiftArgs,
        #[arg(long)]
        periods: String,
    },
}

#[derive(Serialize)]
struct RunReport<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a [String],
    shift: Option<String>,
    definition_sha256: Option<String>,
    seed: u64,
    payload: &'a Value,
    payload_sha256: String,
    wall_time_ms: f64,
}

/// Everything a run produced, for the binary to print.
#[derive(Clone, Debug, PartialEq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Resolved {
    sft: SftDefinition,
    wire: Option<WireShift>,
}

impl Resolved {
    fn style(&self) -> Style<'_> {
        match &self.wire {
            Some(w) => Style::Wires(w),
            None => Style::Labels(self.sft.symbols()),
        }
    }
}

fn resolve(args: &ShiftArgs) -> Result<Resolved> {
    if let Some(path) = &args.definition {
        return Ok(Resolved {
            sft: load_sft_file(path)?,
            wire: None,
        });
    }
    let id = args
        .shift
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("give --shift or --definition".into()))?;
    let wire = match id {
        "wire_W" => build_wire_shift(1)?,
        "wire_Wel" => build_electrical_shift(),
        "wire_Wk" => build_wire_shift(args.k.ok_or_else(|| Error::InvalidArgument("wire_Wk needs --k".into()))?)?,
        "full" => {
            let m = args
                .symbols
                .ok_or_else(|| Error::InvalidArgument("full needs --symbols".into()))?;
            return Ok(Resolved {
                sft: SftDefinition::full_shift(args.dim, m)?,
                wire: None,
            });
        }
        other => crate::wire::builtin(other)?,
    };
    Ok(Resolved {
        sft: wire.sft().clone(),
        wire: Some(wire),
    })
}

fn parse_extents(s: &str) -> Result<Vec<usize>> {
    s.split('x')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::InvalidArgument(format!("bad extent {t:?} in {s:?}")))
        })
        .collect()
}

fn read_pattern(path: &Path, x: &SftDefinition) -> Result<crate::sft::Pattern> {
    parse_pattern(&std::fs::read_to_string(path)?, x.symbols())
}

fn cache_path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(Path::new(&dir).join(format!("entropy-{}.json", sha256_hex(key.as_bytes()))))
}

struct Outcome {
    payload: Value,
    summary: String,
    code: i32,
}

fn ok(payload: Value, summary: String) -> Result<Outcome> {
    Ok(Outcome {
        payload,
        summary,
        code: EXIT_OK,
    })
}

fn execute(cmd: &Command) -> Result<(Outcome, Option<String>, Option<String>)> {
    let mut shift_id = None;
    let mut def_hash = None;
    let mut note = |r: &Resolved| {
        shift_id = Some(r.sft.name().to_string());
        def_hash = Some(sha256_hex(save_sft(&r.sft).as_bytes()));
    };
    let outcome = match cmd {
        Command::Count {
            shift,
            block,
            axis_extents,
        } => {
            let r = resolve(shift)?;
            note(&r);
            let extents = parse_extents(block)?;
            let b = Block::from_extents(&extents)?;
            let count = count_patterns(&r.sft, &b)?;
            let mut payload = json!({"block": extents, "count": count.to_string()});
            if *axis_extents {
                let per_axis = (0..extents.len())
                    .map(|k| {
                        let mut e = vec![1; extents.len()];
                        e[k] = extents[k];
                        Ok(count_patterns(&r.sft, &Block::from_extents(&e)?)?.to_string())
                    })
                    .collect::<Result<Vec<_>>>()?;
                payload["axis_counts"] = json!(per_axis);
            }
            ok(payload, format!("{count} locally valid patterns on {block}"))?
        }
        Command::Entropy {
            shift,
            axis,
            n,
            g,
            tol,
            max_iterations,
            unit,
        } => {
            let r = resolve(shift)?;
            note(&r);
            let unit = match unit {
                Unit::Nats => EntropyUnit::Nats,
                Unit::Bits => EntropyUnit::Bits,
            };
            let key = format!("{}|{axis}|{n}|{g}|{tol}|{max_iterations}|{unit:?}", save_sft(&r.sft));
            let cached = cache_path(&key).and_then(|p| std::fs::read_to_string(p).ok());
            let payload: Value = match cached.and_then(|t| serde_json::from_str(&t).ok()) {
                Some(v) => v,
                None => {
                    let opts = PerronOptions {
                        tol: *tol,
                        max_iterations: *max_iterations,
                    };
                    let b = entropy_bounds(&r.sft, *axis, *n, *g, opts, unit)?;
                    let v = serde_json::to_value(&b)?;
                    if let Some(p) = cache_path(&key) {
                        if let Some(dir) = p.parent() {
                            std::fs::create_dir_all(dir)?;
                        }
                        std::fs::write(p, serde_json::to_string(&v)?)?;
                    }
                    v
                }
            };
            let summary = format!("entropy in [{}, {}] {:?}", payload["lower"], payload["upper"], unit);
            ok(payload, summary)?
        }
        Command::Verify { claim, k, d, n, big_n } => {
            if claim == "list" {
                let list: Vec<Value> = CLAIMS.iter().map(|(n, d)| json!({"claim": n, "description": d})).collect();
                ok(json!(list), format!("{} claims", CLAIMS.len()))?
            } else {
                let params = ClaimParams {
                    k: *k,
                    d: *d,
                    n: *n,
                    big_n: *big_n,
                };
                let r = run_claim(claim, &params)?;
                Outcome {
                    summary: format!("{}: {}", r.claim, if r.passed { "PASS" } else { "FAIL" }),
                    code: if r.passed { EXIT_OK } else { EXIT_CLAIM_FAILED },
                    payload: serde_json::to_value(&r)?,
                }
            }
        }
        Command::Render {
            shift,
            pattern,
            format,
            out,
        } => {
            let r = resolve(shift)?;
            note(&r);
            let p = read_pattern(pattern, &r.sft)?;
            let fmt = match format {
                Format::Ascii => RenderFormat::Ascii,
                Format::Svg => RenderFormat::Svg,
            };
            let doc = render(&p, r.style(), fmt)?;
            let mut payload = json!({"format": format!("{format:?}").to_lowercase(), "sha256": sha256_hex(doc.as_bytes())});
            match out {
                Some(path) => {
                    std::fs::write(path, &doc)?;
                    payload["out"] = json!(path.display().to_string());
                }
                None => payload["document"] = json!(doc),
            }
            ok(payload, format!("rendered {} cells", p.cells().len()))?
        }
        Command::Frame {
            shift,
            pattern,
            margin,
            out,
        } => {
            let r = resolve(shift)?;
            note(&r);
            let w = r
                .wire
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("frames need a built-in wire shift".into()))?;
            let p = read_pattern(pattern, &r.sft)?;
            let framed = if w.is_electrical() {
                extend_electrical(w, &p, *margin)?
            } else {
                extend_with_wire_frame(w, &p, *margin)?
            };
            let text = format_pattern(&framed, r.sft.symbols())?;
            if let Some(path) = out {
                std::fs::write(path, &text)?;
            }
            let payload = json!({"margin": margin, "framed": PatternDump::new(&framed, r.sft.symbols()), "pattern_file": text});
            ok(payload, format!("framed to {}", framed.block()))?
        }
        Command::Export { shift, out } => {
            let r = resolve(shift)?;
            note(&r);
            let doc = save_sft(&r.sft);
            if let Some(path) = out {
                std::fs::write(path, &doc)?;
            }
            let payload: Value = serde_json::from_str(&doc)?;
            ok(payload, format!("exported {}", r.sft.name()))?
        }
        Command::Periodic { shift, periods } => {
            let r = resolve(shift)?;
            note(&r);
            let spec = PeriodSpec::new(parse_extents(periods)?)?;
            let count = count_periodic_points(&r.sft, &spec)?;
            let fixed: Vec<&str> = fixed_points(&r.sft).iter().map(|&s| r.sft.symbols().name(s)).collect();
            let payload = json!({"periods": spec.periods(), "count": count.to_string(), "fixed_points": fixed});
            ok(payload, format!("{count} points of period {periods}"))?
        }
    };
    Ok((outcome, shift_id, def_hash))
}

/// Parse arguments and run one command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            return CliOutput {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let result = pool.install(|| execute(&cli.command));
    match result {
        Ok((outcome, shift, definition_sha256)) => {
            let payload_bytes = serde_json::to_vec(&outcome.payload).expect("serializable");
            let report = RunReport {
                tool: "sftkit",
                version: env!("CARGO_PKG_VERSION"),
                command: &echo,
                shift,
                definition_sha256,
                seed: cli.seed,
                payload: &outcome.payload,
                payload_sha256: sha256_hex(&payload_bytes),
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            let mut stdout = serde_json::to_string_pretty(&report).expect("serializable");
            stdout.push('\n');
            CliOutput {
                code: outcome.code,
                stdout,
                stderr: format!("{}\n", outcome.summary),
            }
        }
        Err(e) => CliOutput {
            code: if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_INPUT },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
