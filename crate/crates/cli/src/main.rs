use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use jacquet::atom::Sign;
use jacquet::mustar::{minimal_words, mu_star_induced};
use jacquet::parse::{parse_expression, parse_triple};
use jacquet::rulebase::enumerate_nontempered_candidates;
use jacquet::verify::{self, ClaimCatalog, SuiteOptions, Triple};

/// Exact Jacquet-module calculus over a classical p-adic group.
#[derive(Parser)]
#[command(name = "jacquet", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check catalog claims on parameter triples.
    Verify {
        /// Claim ids to run, as a shell glob.
        #[arg(long, default_value = "*")]
        claims: String,
        /// A triple `a,b,c`; repeatable. Without --triple or --grid the
        /// default grid is used.
        #[arg(long)]
        triple: Vec<String>,
        /// File with one `a,b,c` per line.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Record the time each claim took. Makes the output vary between runs.
        #[arg(long)]
        timings: bool,
    },
    /// Print the Jacquet module of an induced representation.
    Expand {
        /// For example `d(1/2,5/2) x d(-1/2,3/2) |x sigma`.
        #[arg(long)]
        expr: String,
        /// Print the words of the minimal Jacquet module instead.
        #[arg(long)]
        to_words: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the possible non-tempered subquotients of d(1/2,c) |x ds{b=a,c=b,±}.
    Candidates {
        #[arg(long)]
        triple: String,
        #[arg(long, value_enum, allow_hyphen_values = true)]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input, as opposed to a claim that does not hold.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| Usage(e).into())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify {
            claims,
            triple,
            grid,
            format,
            timings,
        } => {
            let mut points: Vec<Triple> = usage(
                triple
                    .iter()
                    .map(|t| parse_triple(t).with_context(|| format!("--triple {t}")))
                    .collect(),
            )?;
            match grid {
                Some(path) => {
                    let text = usage(
                        std::fs::read_to_string(&path)
                            .with_context(|| format!("reading {}", path.display())),
                    )?;
                    points.extend(usage(verify::parse_grid(&text).map_err(Into::into))?);
                }
                None if points.is_empty() => points = verify::default_grid(),
                None => {}
            }
            let catalog = ClaimCatalog::builtin();
            if usage(catalog.select(&claims).map_err(Into::into))?.is_empty() {
                return Err(Usage(anyhow::anyhow!("no claim matches {claims:?}")).into());
            }
            let report = verify::run_suite(&catalog, &points, &claims, SuiteOptions { timings })?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(!report.any_failed() && report.errors.is_empty())
        }
        Cmd::Expand {
            expr,
            to_words,
            format,
        } => {
            let label = usage(parse_expression(&expr).with_context(|| format!("--expr {expr:?}")))?;
            if to_words {
                let words = minimal_words(&label)?;
                let rows: Vec<(String, i64)> = words
                    .iter()
                    .map(|(w, n)| {
                        (
                            w.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            n,
                        )
                    })
                    .collect();
                match format {
                    Format::Json => {
                        let v: Vec<_> = rows
                            .iter()
                            .map(|(w, n)| serde_json::json!({ "word": w, "count": n }))
                            .collect();
                        println!("{}", serde_json::to_string_pretty(&v)?);
                    }
                    Format::Text => {
                        for (w, n) in rows {
                            println!("{n}  ({w})");
                        }
                    }
                }
            } else {
                let mu = mu_star_induced(&label)?;
                match format {
                    Format::Json => println!("{}", serde_json::to_string_pretty(&mu.to_json())?),
                    Format::Text => println!("{mu}"),
                }
            }
            Ok(true)
        }
        Cmd::Candidates {
            triple,
            sign,
            format,
        } => {
            let (a, b, c) =
                usage(parse_triple(&triple).with_context(|| format!("--triple {triple}")))?;
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let r = usage(enumerate_nontempered_candidates(a, b, c, sign).map_err(Into::into))?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Format::Text => {
                    for x in &r.candidates {
                        println!("{x}");
                    }
                    for f in &r.flags {
                        eprintln!("note: {f}");
                    }
                }
            }
            Ok(true)
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
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 1 })
        }
    }
}
