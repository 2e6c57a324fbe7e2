use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ivfmt_core::info::{self, DEFAULT_PRECISION};
use ivfmt_core::notation::{self, KindSet};
use ivfmt_core::stochastic::{estimate_average_width, measure_rule_of_one_tenth};
use ivfmt_core::{
    transform, Error, NotationKind, ParsedInterval, SimulationConfig, SimulationReport,
};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "ivfmt",
    version,
    about = "Read, convert and shorten decimal interval notations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, env = "IVFMT_FORMAT", default_value_t = Format::Plain)]
    format: Format,

    /// Notations accepted on input, comma separated (default: all but single-number).
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_kind)]
    from: Vec<NotationKind>,

    /// Accept bare numerals such as `1.234` as single-number notation.
    #[arg(long, global = true)]
    allow_single_number: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Plain,
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Intervals to read; `-` reads one per line from stdin.
    intervals: Vec<String>,

    /// Read one interval per line from a file.
    #[arg(long, short = 'f', conflicts_with = "intervals")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the interval each input denotes and the notation it is written in.
    Parse {
        #[command(flatten)]
        input: Input,
    },
    /// Rewrite intervals in another notation.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_kind)]
        to: NotationKind,
    },
    /// Widen to bounds with one digit fewer.
    Inflate {
        #[command(flatten)]
        input: Input,
        /// Number of inflations to apply.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_parser = parse_kind, default_value = "factored")]
        to: NotationKind,
    },
    /// Information content after each successive inflation.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Decimal places for information values.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        /// Efficiency a final digit pair must reach to be kept.
        #[arg(long, default_value_t = 0.01, value_parser = parse_threshold)]
        threshold: f64,
    },
    /// Shorten to a few bracket digits and choose a notation.
    Recommend {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        bracket_digits: u32,
    },
    /// Monte Carlo check of average width and per-digit information loss.
    Simulate {
        #[arg(long, default_value_t = 6)]
        j: u32,
        #[arg(long, default_value_t = 9)]
        k: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_kind(s: &str) -> Result<NotationKind, String> {
    s.parse::<NotationKind>().map_err(|e| e.to_string())
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else {
        Err(format!("threshold must lie in [0, 1], got {t}"))
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            e => Failure::Domain(e.to_string()),
        }
    }
}

fn allowed_kinds(cli: &Cli) -> Result<KindSet, Failure> {
    let base = if cli.from.is_empty() {
        KindSet::ALL
    } else {
        cli.from.iter().copied().collect()
    };
    let gate = if cli.allow_single_number {
        KindSet::ALL
    } else {
        KindSet::DEFAULT
    };
    let allowed: KindSet = NotationKind::ALL
        .into_iter()
        .filter(|&k| base.contains(k) && gate.contains(k))
        .collect();
    if allowed.is_empty() {
        return Err(Failure::Usage(
            "--from single-number needs --allow-single-number".into(),
        ));
    }
    Ok(allowed)
}

/// Source text of each interval, tagged with a line number for file input.
fn read_inputs(input: &Input) -> Result<Vec<(Option<usize>, String)>, Failure> {
    let lines = |text: &str| -> Vec<(Option<usize>, String)> {
        text.lines()
            .enumerate()
            .map(|(n, l)| (Some(n + 1), l.trim().to_string()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect()
    };
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(lines(&text));
    }
    if input.intervals.is_empty() {
        return Err(Failure::Usage(
            "no input; pass an interval, `-` or --file".into(),
        ));
    }
    let mut out = Vec::new();
    for arg in &input.intervals {
        if arg == "-" {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            out.extend(lines(&text));
        } else {
            out.push((None, arg.clone()));
        }
    }
    Ok(out)
}

/// Parses every input, prefixing errors with the line they came from.
fn parse_inputs(input: &Input, allowed: KindSet) -> Result<Vec<(String, ParsedInterval)>, Failure> {
    read_inputs(input)?
        .into_iter()
        .map(|(line, text)| match notation::parse(&text, allowed) {
            Ok(p) => Ok((text, p)),
            Err(e) => Err(match (line, Failure::from(e)) {
                (Some(n), Failure::Domain(m)) => Failure::Domain(format!("line {n}: {m}")),
                (_, f) => f,
            }),
        })
        .collect()
}

fn json_line(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut out = String::new();
    let format = cli.format;
    match &cli.command {
        Command::Parse { input } => {
            if format == Format::Tsv {
                out.push_str("input\tkind\tlo\thi\n");
            }
            for (text, p) in parse_inputs(input, allowed_kinds(cli)?)? {
                match format {
                    Format::Plain => writeln!(out, "{}\t{}", p.interval, p.kind).unwrap(),
                    Format::Tsv => writeln!(
                        out,
                        "{text}\t{}\t{}\t{}",
                        p.kind,
                        p.interval.lo(),
                        p.interval.hi()
                    )
                    .unwrap(),
                    Format::Json => json_line(&mut out, &json!({ "input": text, "parsed": p })),
                }
            }
        }
        Command::Convert { input, to } => {
            if format == Format::Tsv {
                out.push_str("input\toutput\n");
            }
            for (text, p) in parse_inputs(input, allowed_kinds(cli)?)? {
                let rendered = notation::render(&p, *to)?;
                emit_pair(&mut out, format, &text, &rendered, *to);
            }
        }
        Command::Inflate { input, steps, to } => {
            if format == Format::Tsv {
                out.push_str("input\toutput\n");
            }
            for (text, p) in parse_inputs(input, allowed_kinds(cli)?)? {
                let mut current = p.interval;
                for _ in 0..*steps {
                    current = transform::inflate(&current)?;
                }
                let rendered = notation::render_interval(&current, *to)?;
                emit_pair(&mut out, format, &text, &rendered, *to);
            }
        }
        Command::Analyze {
            input,
            precision,
            threshold,
        } => {
            for (text, p) in parse_inputs(input, allowed_kinds(cli)?)? {
                let trace = info::inflation_trace(&p.interval);
                let report = if trace.len() >= 2 {
                    Some(info::efficiency_report(&trace, *threshold)?)
                } else {
                    None
                };
                match format {
                    Format::Tsv => out.push_str(&info::trace_to_tsv(&trace, *precision)),
                    Format::Plain => {
                        out.push_str(&info::trace_to_tsv(&trace, *precision));
                        if let Some(r) = &report {
                            let kept = notation::render_interval(&r.kept, NotationKind::Factored)?;
                            writeln!(out, "keep row {}: {kept}", r.cut_row).unwrap();
                        }
                    }
                    Format::Json => json_line(
                        &mut out,
                        &json!({
                            "input": text,
                            "trace": info::trace_to_json(&trace, *precision),
                            "efficiency": report,
                        }),
                    ),
                }
            }
        }
        Command::Recommend {
            input,
            bracket_digits,
        } => {
            if format == Format::Tsv {
                out.push_str("input\toutput\tkind\tinfo_before\tinfo_after\n");
            }
            for (text, p) in parse_inputs(input, allowed_kinds(cli)?)? {
                let (short, kind) = transform::recommend(&p.interval, *bracket_digits as usize)?;
                let rendered = notation::render(&short, kind)?;
                let before = info::info_content(&p.interval).value;
                let after = info::info_content(&short.interval).value;
                match format {
                    Format::Plain => writeln!(out, "{rendered}").unwrap(),
                    Format::Tsv => {
                        writeln!(out, "{text}\t{rendered}\t{kind}\t{before:.9}\t{after:.9}")
                            .unwrap()
                    }
                    Format::Json => json_line(
                        &mut out,
                        &json!({
                            "input": text,
                            "output": rendered,
                            "kind": kind,
                            "info_before": before,
                            "info_after": after,
                            "loss": before - after,
                        }),
                    ),
                }
            }
        }
        Command::Simulate {
            j,
            k,
            samples,
            seed,
        } => {
            let config = SimulationConfig::new(*j, *k, *samples, *seed)?;
            let report = if *k >= 3 {
                measure_rule_of_one_tenth(&config)?
            } else {
                estimate_average_width(&config)?
            };
            match format {
                Format::Json => json_line(&mut out, &report),
                Format::Tsv => writeln!(
                    out,
                    "{}\n{}",
                    SimulationReport::TSV_HEADER,
                    report.tsv_line()
                )
                .unwrap(),
                Format::Plain => plain_report(&mut out, &report),
            }
        }
    }
    Ok(out)
}

fn emit_pair(out: &mut String, format: Format, input: &str, output: &str, kind: NotationKind) {
    match format {
        Format::Plain => writeln!(out, "{output}").unwrap(),
        Format::Tsv => writeln!(out, "{input}\t{output}").unwrap(),
        Format::Json => json_line(
            out,
            &json!({ "input": input, "output": output, "kind": kind }),
        ),
    }
}

fn plain_report(out: &mut String, r: &SimulationReport) {
    let c = &r.config;
    writeln!(
        out,
        "samples          {} (j = {}, k = {}, seed {})",
        r.samples_used, c.j, c.k, c.seed
    )
    .unwrap();
    writeln!(
        out,
        "mean width       {:.6} units of 1e-{} (stddev {:.6}, stderr {:.6})",
        r.mean_width_in_units, c.j, r.sample_stddev, r.stderr_in_units
    )
    .unwrap();
    if let Some(exact) = r.exact_expected_width {
        writeln!(out, "exact width      {exact:e}").unwrap();
    }
    writeln!(
        out,
        "bounds           {:e} <= {:e} < {:e}",
        r.lower_bound, r.mean_width, r.upper_bound
    )
    .unwrap();
    for d in &r.digit_losses {
        writeln!(
            out,
            "loss at {:>2}       {:.6e} (stderr {:.2e})",
            d.retained, d.mean_loss, d.stderr
        )
        .unwrap();
    }
    for q in &r.loss_ratios {
        writeln!(
            out,
            "ratio {:>2}/{:<2}      {:.4} [{:.4}, {:.4}]",
            q.retained + 1,
            q.retained,
            q.ratio,
            q.ci_low,
            q.ci_high
        )
        .unwrap();
    }
    writeln!(
        out,
        "pair chi-square  {:.3} (p = {:.4})",
        r.pair_chi_square, r.pair_p_value
    )
    .unwrap();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("ivfmt: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("ivfmt: {m}");
            ExitCode::from(2)
        }
    }
}
