//! Experiment configuration: instance sources, learner selection, budgets.

use crate::graphfile;
use anyhow::{bail, Context};
use seplearn::{generators, Budget, Graph};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LearnerKind {
    Naive,
    Tw,
    #[value(name = "decomposition-only")]
    DecompositionOnly,
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LearnerKind::Naive => "naive",
            LearnerKind::Tw => "tw",
            LearnerKind::DecompositionOnly => "decomposition-only",
        };
        f.write_str(name)
    }
}

/// Exactly one instance source.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    File(PathBuf),
    Wheel6,
    Path(usize),
    Cycle(usize),
    Clique(usize),
    Star(usize),
    Book(usize),
    Edgeless(usize),
    Band { n: usize, q: usize, k: usize },
    Random { n: usize, p: f64 },
}

impl InstanceSpec {
    /// Builds the ground-truth graph and its canonical display name.
    pub fn build(&self, seed: u64) -> anyhow::Result<(String, Graph)> {
        Ok(match self {
            InstanceSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let g = graphfile::parse_graph(&text)?;
                (format!("file:{}", path.display()), g)
            }
            InstanceSpec::Wheel6 => ("wheel6".into(), generators::wheel6()),
            InstanceSpec::Path(n) => (format!("path-{n}"), generators::path_graph(*n)?),
            InstanceSpec::Cycle(n) => (format!("cycle-{n}"), generators::cycle_graph(*n)?),
            InstanceSpec::Clique(n) => (format!("clique-{n}"), generators::clique(*n)?),
            InstanceSpec::Star(n) => (format!("star-{n}"), generators::star(*n)?),
            InstanceSpec::Book(m) => (format!("book-{m}"), generators::book(*m)?),
            InstanceSpec::Edgeless(n) => (format!("edgeless-{n}"), generators::edgeless(*n)?),
            InstanceSpec::Band { n, q, k } => {
                let params = generators::BandParams::new(*n, *q, *k)?;
                (format!("band-{n}-{q}-{k}"), generators::band_graph(&params))
            }
            InstanceSpec::Random { n, p } => (
                format!("random-n{n}-p{p}-s{seed}"),
                generators::random_graph(*n, *p, seed)?,
            ),
        })
    }

    /// Maps a family name plus the generic size flags onto a spec.
    pub fn from_family(
        family: &str,
        n: Option<usize>,
        q: Option<usize>,
        k: Option<usize>,
        m: Option<usize>,
        p: Option<f64>,
    ) -> anyhow::Result<InstanceSpec> {
        let need_n = || n.with_context(|| format!("family '{family}' needs --n"));
        Ok(match family {
            "wheel6" => InstanceSpec::Wheel6,
            "path" => InstanceSpec::Path(need_n()?),
            "cycle" => InstanceSpec::Cycle(need_n()?),
            "clique" => InstanceSpec::Clique(need_n()?),
            "star" => InstanceSpec::Star(need_n()?),
            "edgeless" => InstanceSpec::Edgeless(need_n()?),
            "book" => InstanceSpec::Book(m.context("family 'book' needs --m")?),
            "band" => InstanceSpec::Band {
                n: need_n()?,
                q: q.context("family 'band' needs --q")?,
                k: k.context("family 'band' needs --k")?,
            },
            "random" => InstanceSpec::Random {
                n: need_n()?,
                p: p.context("family 'random' needs --p")?,
            },
            other => bail!("unknown family '{other}'"),
        })
    }
}

/// One experiment: instance, learner, budget, seed, audit switch.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub learner: LearnerKind,
    pub budget: Budget,
    pub seed: u64,
    pub audit: bool,
}
