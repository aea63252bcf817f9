//! Builds instances, runs learners against exact oracles, and evaluates
//! every bound check from the embedded stats and ground-truth metadata.
//! Learner failures (budget exhaustion, caps) become failing reports, not
//! errors; only configuration problems propagate as errors.

use crate::config::{ExperimentConfig, LearnerKind};
use crate::report::{BoundCheck, InstanceMeta, Report, StatsReport};
use seplearn::audit::audit_tw_report;
use seplearn::treewidth::{exact_treewidth, validate_decomposition};
use seplearn::twlearn::{self, learn_decomposition, learn_tw};
use seplearn::{learn_naive, Oracle};

fn check_eq(name: &str, bound: u64, observed: u64) -> BoundCheck {
    BoundCheck {
        bound,
        name: name.to_string(),
        observed,
        pass: observed == bound,
    }
}

fn check_le(name: &str, bound: u64, observed: u64) -> BoundCheck {
    BoundCheck {
        bound,
        name: name.to_string(),
        observed,
        pass: observed <= bound,
    }
}

fn power(n: usize, exp: usize) -> u64 {
    let exp = u32::try_from(exp).unwrap_or(u32::MAX);
    (n as u64).checked_pow(exp).unwrap_or(u64::MAX)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let (name, g) = cfg.instance.build(cfg.seed)?;
    let n = g.n();
    let kappa = if n >= 2 { g.kappa_max()? } else { 0 };
    let delta = g.max_degree();

    let needs_tw = matches!(cfg.learner, LearnerKind::Tw | LearnerKind::DecompositionOnly);
    let tw = if needs_tw || cfg.audit {
        Some(exact_treewidth(&g)?.0)
    } else {
        None
    };

    let mut oracle = Oracle::exact(g.clone(), cfg.budget);
    let (bounds, stats, error): (Vec<BoundCheck>, StatsReport, Option<String>) = match cfg.learner
    {
        LearnerKind::Naive => match learn_naive(&mut oracle, n) {
            Ok(rep) => {
                let bounds = vec![
                    check_eq("exact_recovery", 1, (rep.result_graph == g) as u64),
                    check_eq(
                        "max_size_equals_kappa",
                        kappa as u64,
                        rep.stats.max_size_seen as u64,
                    ),
                    check_le(
                        "test_count_bound",
                        power(n, kappa + 2),
                        rep.stats.total_tests,
                    ),
                ];
                (bounds, StatsReport::from(&rep.stats), None)
            }
            Err(failure) => (
                Vec::new(),
                StatsReport::from(&failure.stats),
                Some(failure.error.to_string()),
            ),
        },
        LearnerKind::DecompositionOnly => {
            let tw = tw.expect("computed above");
            match learn_decomposition(&mut oracle, n) {
                Ok((td, rep)) => {
                    let violations = validate_decomposition(&g, &td);
                    let bounds = vec![
                        check_eq("decomposition_valid", 0, violations.len() as u64),
                        check_eq("width_equals_tw", tw as u64, td.width() as u64),
                        // no test larger than n-2 exists, so cliques cap out there
                        check_eq(
                            "max_size_equals_tw",
                            tw.min(n.saturating_sub(2)) as u64,
                            rep.stats.max_size_seen as u64,
                        ),
                        check_le("test_count_bound", power(n, tw + 2), rep.stats.total_tests),
                    ];
                    (bounds, StatsReport::from(&rep.stats), None)
                }
                Err(failure) => (
                    Vec::new(),
                    StatsReport::from(&failure.stats),
                    Some(failure.error.to_string()),
                ),
            }
        }
        LearnerKind::Tw => {
            let tw = tw.expect("computed above");
            match learn_tw(&mut oracle, n) {
                Ok(rep) => {
                    let final_bucket = rep.stats.bucket(twlearn::BUCKET_FINAL);
                    let mut bounds = vec![
                        check_eq("exact_recovery", 1, (rep.result_graph == g) as u64),
                        check_le("final_count_bound", (n * tw) as u64, final_bucket.count),
                        check_le(
                            "final_size_bound",
                            2 * kappa as u64,
                            final_bucket.max_size as u64,
                        ),
                        check_le(
                            "small_size_bound",
                            (4 * tw + 4) as u64,
                            rep.stats.max_size_outside(twlearn::BUCKET_FINAL) as u64,
                        ),
                    ];
                    if cfg.audit {
                        let violations = audit_tw_report(&g, &rep)?;
                        for violation in &violations {
                            eprintln!("audit: {violation}");
                        }
                        bounds.push(check_eq("audit_clean", 0, violations.len() as u64));
                    }
                    (bounds, StatsReport::from(&rep.stats), None)
                }
                Err(failure) => (
                    Vec::new(),
                    StatsReport::from(&failure.stats),
                    Some(failure.error.to_string()),
                ),
            }
        }
    };

    let success = error.is_none() && bounds.iter().all(|b| b.pass);
    Ok(Report {
        bounds,
        error,
        instance: InstanceMeta {
            delta: cfg.audit.then_some(delta),
            kappa: cfg.audit.then_some(kappa),
            m: g.edge_count(),
            n,
            name,
            tw: if cfg.audit { tw } else { None },
        },
        learner: cfg.learner.to_string(),
        stats,
        success,
    })
}
