use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use seplearn::Budget;
use seplearn_cli::config::{ExperimentConfig, InstanceSpec, LearnerKind};
use seplearn_cli::{graphfile, report, runner, verify};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "seplearn",
    about = "Learn hidden graph structure through separation-oracle queries",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Instance family: wheel6, path, cycle, clique, star, book, edgeless, band, random
    #[arg(long)]
    family: Option<String>,
    /// Vertex count (path/cycle/clique/star/edgeless/random) or band parameter n
    #[arg(long)]
    n: Option<usize>,
    /// Band parameter q
    #[arg(long)]
    q: Option<usize>,
    /// Band parameter k
    #[arg(long)]
    k: Option<usize>,
    /// Page count for the book family
    #[arg(long)]
    m: Option<usize>,
    /// Edge probability for the random family
    #[arg(long)]
    p: Option<f64>,
}

impl FamilyArgs {
    fn to_spec(&self) -> anyhow::Result<InstanceSpec> {
        let family = self
            .family
            .as_deref()
            .context("no instance source: pass --family (or --input where supported)")?;
        InstanceSpec::from_family(family, self.n, self.q, self.k, self.m, self.p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit an instance file in the graph format
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one learner against one instance and report bound checks
    Learn {
        /// Which learner to run
        #[arg(long)]
        algo: LearnerKind,
        /// Read the instance from a graph file
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject tests larger than this size
        #[arg(long)]
        budget_size: Option<usize>,
        /// Reject queries beyond this many distinct tests
        #[arg(long)]
        budget_count: Option<u64>,
        /// Report format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include ground-truth metadata and run the proof-internal audit
        #[arg(long)]
        audit: bool,
    },
    /// Sweep a parameter grid and emit one CSV row per experiment
    Bench {
        #[arg(long)]
        algo: LearnerKind,
        /// Instance family (random, book, path, cycle, clique, star, edgeless)
        #[arg(long)]
        family: String,
        /// Comma-separated sizes (n for most families, m for book)
        #[arg(long, default_value = "6,8,10")]
        sizes: String,
        /// Comma-separated edge probabilities (random family only)
        #[arg(long, default_value = "0.2")]
        probabilities: String,
        /// Number of seeds per configuration (random family only)
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Base seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        audit: bool,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the indistinguishability and generator-certification suites
    Verify {
        /// Which suite: thm1, band, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Connectivity samples per band instance
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> anyhow::Result<Vec<T>> {
    text.split(',')
        .map(|f| {
            f.trim()
                .parse::<T>()
                .map_err(|_| anyhow::anyhow!("bad {what} entry '{f}'"))
        })
        .collect()
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { family, seed, out } => {
            let spec = family.to_spec()?;
            let (name, graph) = spec.build(seed)?;
            let text = format!("# {name}\n{}", graphfile::format_graph(&graph));
            emit(&text, out.as_ref())?;
        }
        Command::Learn {
            algo,
            input,
            family,
            seed,
            budget_size,
            budget_count,
            format,
            out,
            audit,
        } => {
            let instance = match (input, family.family.is_some()) {
                (Some(path), false) => InstanceSpec::File(path),
                (None, true) => family.to_spec()?,
                (Some(_), true) => anyhow::bail!("pass either --input or --family, not both"),
                (None, false) => anyhow::bail!("pass --input FILE or --family NAME"),
            };
            let cfg = ExperimentConfig {
                instance,
                learner: algo,
                budget: Budget {
                    max_test_size: budget_size,
                    max_test_count: budget_count,
                },
                seed,
                audit,
            };
            let started = Instant::now();
            let rep = runner::run_experiment(&cfg)?;
            let text = match format.as_str() {
                "json" => report::write_json(&rep),
                "csv" => format!("{}{}", report::CSV_HEADER, report::write_csv_row(&rep)),
                other => anyhow::bail!("unknown format '{other}' (expected json or csv)"),
            };
            emit(&text, out.as_ref())?;
            eprintln!(
                "{}: {} in {:.2?}",
                rep.instance.name,
                if rep.success { "pass" } else { "FAIL" },
                started.elapsed()
            );
            if !rep.success {
                std::process::exit(1);
            }
        }
        Command::Bench {
            algo,
            family,
            sizes,
            probabilities,
            seeds,
            seed,
            audit,
            out,
        } => {
            let sizes: Vec<usize> = parse_list(&sizes, "size")?;
            let probabilities: Vec<f64> = parse_list(&probabilities, "probability")?;
            let is_random = family == "random";
            let mut rows = String::from(report::CSV_HEADER);
            let mut all_pass = true;
            for &size in &sizes {
                let prob_grid: Vec<Option<f64>> = if is_random {
                    probabilities.iter().copied().map(Some).collect()
                } else {
                    vec![None]
                };
                for p in prob_grid {
                    let seed_count = if is_random { seeds } else { 1 };
                    for offset in 0..seed_count {
                        let spec = match family.as_str() {
                            "random" => InstanceSpec::Random {
                                n: size,
                                p: p.expect("random grid carries probabilities"),
                            },
                            "book" => InstanceSpec::Book(size),
                            other => InstanceSpec::from_family(
                                other,
                                Some(size),
                                None,
                                None,
                                None,
                                None,
                            )?,
                        };
                        let cfg = ExperimentConfig {
                            instance: spec,
                            learner: algo,
                            budget: Budget::unlimited(),
                            seed: seed + offset,
                            audit,
                        };
                        let rep = runner::run_experiment(&cfg)?;
                        all_pass &= rep.success;
                        rows.push_str(&report::write_csv_row(&rep));
                    }
                }
            }
            emit(&rows, out.as_ref())?;
            if !all_pass {
                std::process::exit(1);
            }
        }
        Command::Verify { suite, samples } => {
            if !verify::run(&suite, samples)? {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}
