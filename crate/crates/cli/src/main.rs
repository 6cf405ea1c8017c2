use std::fs;
use std::process::ExitCode;

use aztec::region::{count_tilings_capped, DEFAULT_ORACLE_CAP};
use aztec::shuffle::render_svg;
use aztec::verify::{self, Suite};
use aztec::*;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(
    name = "aztec",
    version,
    about = "Exact domino statistics on the Aztec diamond"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability of the horizontal black-left domino at (l, m).
    Prob(At),
    /// The rational function f for position (l, m) and residue alpha.
    Ratfunc {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
        alpha: u8,
    },
    /// Creation rate at (l, m), exact or as a rational function of p.
    Cr {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, required_unless_present = "symbolic")]
        n: Option<u32>,
        #[arg(long, requires = "alpha")]
        symbolic: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
        alpha: Option<u8>,
    },
    /// Number of domino tilings of a diamond with cells removed.
    Count {
        #[arg(long, required_unless_present = "region")]
        n: Option<u32>,
        /// Region JSON, inline or as a file path.
        #[arg(long, conflicts_with_all = ["n", "remove"])]
        region: Option<String>,
        /// Cell `i,j` to remove; repeatable.
        #[arg(long, value_parser = parse_cell, allow_hyphen_values = true)]
        remove: Vec<Cell>,
    },
    /// Tilings of the diamond with the 2x2 hole whose upper-right cell is (l, m).
    Hole {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, required_unless_present = "symbolic")]
        n: Option<u32>,
        /// Also count with the tiling oracle and compare.
        #[arg(long)]
        oracle: bool,
        /// Print g and h of the closed form instead.
        #[arg(long, requires = "alpha", conflicts_with_all = ["n", "oracle"])]
        symbolic: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
        alpha: Option<u8>,
    },
    /// A random tiling by domino shuffling, as JSON.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write an SVG picture to this path.
        #[arg(long)]
        svg: Option<String>,
    },
    /// Monte Carlo frequency of the domino {a, b}.
    Mc {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_cell, allow_hyphen_values = true)]
        a: Cell,
        #[arg(long, value_parser = parse_cell, allow_hyphen_values = true)]
        b: Cell,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Limiting placement probability at normalised (x, y).
    Asym {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Run identity checks.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Args)]
struct At {
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long)]
    n: u32,
}

fn parse_cell(s: &str) -> std::result::Result<Cell, String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j but got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Cell::new(num(i)?, num(j)?))
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn oracle_cap() -> std::result::Result<u32, Error> {
    match std::env::var("AZTEC_ORACLE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Invalid(format!(
                "AZTEC_ORACLE_CAP={v:?} is not a nonnegative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn alpha(v: u8) -> Alpha {
    Alpha::new(i64::from(v)).expect("clap restricts alpha to 0..4")
}

/// What a command produced: the plain-text lines and the JSON pieces.
struct Output {
    text: Vec<String>,
    inputs: Value,
    result: Value,
    provenance: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, inputs: Value, result: Value, provenance: &str) -> Output {
        Output {
            text: vec![text.into()],
            inputs,
            result,
            provenance: json!({ "method": provenance, "version": env!("CARGO_PKG_VERSION") }),
            ok: true,
        }
    }
}

fn read_region(arg: &str) -> std::result::Result<Region, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?
    };
    Region::from_json(&text)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        eprintln!("no --seed given, using {DEFAULT_SEED}");
        DEFAULT_SEED
    })
}

fn run(cmd: &Command) -> std::result::Result<Output, Error> {
    Ok(match cmd {
        Command::Prob(At { l, m, n }) => {
            let p = prob_numeric(*l, *m, *n);
            Output::new(
                p.to_string(),
                json!({ "l": l, "m": m, "n": n }),
                json!(p.to_string()),
                "telescoped creation rates",
            )
        }
        Command::Ratfunc { l, m, alpha: a } => {
            let sym = f_symbolic(*l, *m, alpha(*a));
            let text = match &sym.f {
                Some(f) => f.to_string(),
                None => "absent (probability is 0 by parity)".into(),
            };
            Output::new(
                text,
                json!({ "l": l, "m": m, "alpha": a }),
                json!({
                    "f": sym.f.as_ref().map(|f| f.to_string()),
                    "p_min": sym.p_min(),
                }),
                "recursive reduction to the origin",
            )
        }
        Command::Cr {
            l,
            m,
            n,
            symbolic,
            alpha: a,
        } => {
            if *symbolic {
                let a = a.expect("clap requires alpha with --symbolic");
                let h = cr_symbolic(*l, *m, alpha(a));
                let text = h
                    .as_ref()
                    .map_or_else(|| "0".to_string(), |h| h.to_string());
                Output::new(
                    text.clone(),
                    json!({ "l": l, "m": m, "alpha": a, "symbolic": true }),
                    json!(text),
                    "growth functions of Kravchuk values",
                )
            } else {
                let n = n.expect("clap requires n without --symbolic");
                let cr = creation_rate(*l, *m, n);
                Output::new(
                    cr.to_string(),
                    json!({ "l": l, "m": m, "n": n }),
                    json!(cr.to_string()),
                    "product of Kravchuk values",
                )
            }
        }
        Command::Count { n, region, remove } => {
            let region = match (region, n) {
                (Some(r), _) => read_region(r)?,
                (None, Some(n)) => Region::new(*n, remove.iter().copied())?,
                (None, None) => unreachable!("clap requires --n or --region"),
            };
            let count = count_tilings_capped(&region, oracle_cap()?)?;
            Output::new(
                count.to_string(),
                serde_json::from_str(&region.to_json()).expect("region JSON is valid"),
                json!(count.to_string()),
                "broken-profile transfer matrix",
            )
        }
        Command::Hole {
            l,
            m,
            n,
            oracle,
            symbolic,
            alpha: a,
        } => {
            if *symbolic {
                let a = a.expect("clap requires alpha with --symbolic");
                let sym = hole_symbolic(*l, *m, alpha(a))?;
                let mut out = Output::new(
                    format!("g = {}", sym.g),
                    json!({ "l": l, "m": m, "alpha": a }),
                    json!({
                        "g": sym.g.to_string(),
                        "h": sym.h.to_string(),
                        "p_min": sym.p_min(),
                    }),
                    "four placement functions",
                );
                out.text.push(format!("h = {}", sym.h));
                out
            } else {
                let n = n.expect("clap requires n without --symbolic");
                let spec = HoleSpec::new(*l, *m, n)?;
                let count = hole_count(&spec)?;
                let mut result = json!({ "count": count.to_string() });
                let mut out = Output::new(
                    count.to_string(),
                    json!({ "l": l, "m": m, "n": n, "oracle": oracle }),
                    Value::Null,
                    "condensation over exact placement probabilities",
                );
                if *oracle {
                    let region = Region::full(n).without(spec.cells())?;
                    let check = count_tilings_capped(&region, oracle_cap()?)?;
                    let agree = check == count;
                    result["oracle"] = json!(check.to_string());
                    result["agree"] = json!(agree);
                    out.text.push(format!(
                        "oracle {check}: {}",
                        if agree { "agrees" } else { "DISAGREES" }
                    ));
                    out.ok = agree;
                }
                out.result = result;
                out
            }
        }
        Command::Sample { n, seed, svg } => {
            let seed = resolve_seed(*seed);
            let tiling = sample(*n, &mut CoinSource::new(seed));
            if let Some(path) = svg {
                fs::write(path, render_svg(&tiling, 12))
                    .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
            }
            let value: Value =
                serde_json::from_str(&tiling.to_json()).expect("tiling JSON is valid");
            Output::new(
                tiling.to_json(),
                json!({ "n": n, "seed": seed, "svg": svg }),
                value,
                "domino shuffling",
            )
        }
        Command::Mc {
            n,
            a,
            b,
            samples,
            seed,
        } => {
            let seed = resolve_seed(*seed);
            let est = mc_estimate(*n, *a, *b, *samples, seed)?;
            let exact = prob_general(*a, *b, *n)?;
            let text = format!(
                "{} +- {:.6} ({} of {}), exact {} = {:.6}",
                est.frequency,
                est.stderr,
                est.hits,
                est.samples,
                exact,
                exact.to_f64()
            );
            Output::new(
                text,
                json!({ "n": n, "a": a, "b": b, "samples": samples, "seed": seed }),
                json!({
                    "hits": est.hits,
                    "samples": est.samples,
                    "frequency": est.frequency,
                    "stderr": est.stderr,
                    "exact": exact.to_string(),
                }),
                "domino shuffling",
            )
        }
        Command::Asym { x, y } => {
            let v = asymptotic_prob(*x, *y);
            Output::new(
                v.to_string(),
                json!({ "x": x, "y": y }),
                json!(v),
                "limit shape density",
            )
        }
        Command::Verify { suite } => {
            let checks = verify::run(*suite);
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut text: Vec<String> = checks.iter().map(ToString::to_string).collect();
            text.push(format!("{} passed, {failed} failed", checks.len() - failed));
            Output {
                text,
                inputs: json!({ "suite": suite }),
                result: json!({ "checks": checks, "failed": failed }),
                provenance: json!({ "method": "identity checks", "version": env!("CARGO_PKG_VERSION") }),
                ok: failed == 0,
            }
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Prob(_) => "prob",
        Command::Ratfunc { .. } => "ratfunc",
        Command::Cr { .. } => "cr",
        Command::Count { .. } => "count",
        Command::Hole { .. } => "hole",
        Command::Sample { .. } => "sample",
        Command::Mc { .. } => "mc",
        Command::Asym { .. } => "asym",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "inputs": out.inputs,
                    "result": out.result,
                    "provenance": out.provenance,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("JSON serializes")
                );
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "error": e.to_string(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("JSON serializes")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
