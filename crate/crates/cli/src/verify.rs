//! The `verify` subcommand: indistinguishability checks on the named
//! corpus, and certification of the band-graph family parameters together
//! with the always-Connected adversary's connectivity claim.

use seplearn::generators::{
    self, band_graph, band_graph_minus, band_path_decomposition, sample_non_covering_set,
    BandParams,
};
use seplearn::treewidth::{validate_decomposition, width_at_most};
use seplearn::{verify_size_lower_bound, Graph, VertexSet};

pub struct Outcome {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

fn outcome(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        label: label.into(),
        pass,
        detail: detail.into(),
    }
}

fn named_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![("wheel6".into(), generators::wheel6())];
    for n in 3..=6 {
        out.push((format!("path-{n}"), generators::path_graph(n).unwrap()));
    }
    for n in 4..=6 {
        out.push((format!("cycle-{n}"), generators::cycle_graph(n).unwrap()));
    }
    for n in 2..=5 {
        out.push((format!("clique-{n}"), generators::clique(n).unwrap()));
    }
    for m in 3..=6 {
        out.push((format!("book-{m}"), generators::book(m).unwrap()));
    }
    for n in [5, 7] {
        out.push((format!("star-{n}"), generators::star(n).unwrap()));
    }
    out
}

/// Confirms, exhaustively, that tests smaller than the maximum pairwise
/// connectivity cannot distinguish each corpus graph from its toggled twin.
pub fn verify_indistinguishability() -> Vec<Outcome> {
    named_corpus()
        .into_iter()
        .map(|(name, g)| match verify_size_lower_bound(&g) {
            Ok(true) => outcome(format!("indistinguishability {name}"), true, "agrees"),
            Ok(false) => outcome(
                format!("indistinguishability {name}"),
                false,
                "small test distinguishes the twin",
            ),
            Err(e) => outcome(format!("indistinguishability {name}"), false, e.to_string()),
        })
        .collect()
}

/// Certifies the band family on a parameter grid: vertex count, maximum
/// degree, pairwise connectivity, the sliding-window path decomposition,
/// and exact treewidth via the clique witness plus a width-k search.
pub fn verify_band_grid() -> Vec<Outcome> {
    let mut out = Vec::new();
    for (n, q, k) in [(3, 3, 3), (4, 3, 3), (4, 4, 3), (4, 4, 4)] {
        let label = format!("band({n},{q},{k})");
        let params = match BandParams::new(n, q, k) {
            Ok(p) => p,
            Err(e) => {
                out.push(outcome(label, false, e.to_string()));
                continue;
            }
        };
        let g = band_graph(&params);
        let mut problems = Vec::new();
        if g.n() != 3 * q * n {
            problems.push(format!("|V| = {} rather than {}", g.n(), 3 * q * n));
        }
        if g.max_degree() != 2 * k {
            problems.push(format!("max degree {} rather than {}", g.max_degree(), 2 * k));
        }
        match g.kappa_max() {
            Ok(kappa) if kappa == 2 * k - 2 => {}
            Ok(kappa) => problems.push(format!("kappa {} rather than {}", kappa, 2 * k - 2)),
            Err(e) => problems.push(e.to_string()),
        }
        let pd = band_path_decomposition(&params);
        if pd.width() != k {
            problems.push(format!("window decomposition width {}", pd.width()));
        }
        if !validate_decomposition(&g, &pd).is_empty() {
            problems.push("window decomposition invalid".into());
        }
        // First k+1 line positions are pairwise adjacent: a (k+1)-clique,
        // so no decomposition has width below k.
        let clique_ok = (0..=k as u32)
            .all(|a| (a + 1..=k as u32).all(|b| g.has_edge(a, b)));
        if !clique_ok {
            problems.push("clique witness missing".into());
        }
        match width_at_most(&g, k) {
            Ok(Some(td)) if validate_decomposition(&g, &td).is_empty() => {}
            Ok(Some(_)) => problems.push("width-k decomposition invalid".into()),
            Ok(None) => problems.push(format!("no width-{k} decomposition found")),
            Err(e) => problems.push(e.to_string()),
        }
        let minus = band_graph_minus(&params);
        if minus.edge_count() + 1 != g.edge_count() || minus.has_edge(0, k as u32) {
            problems.push("minus variant malformed".into());
        }
        out.push(if problems.is_empty() {
            outcome(label, true, "all parameters certified")
        } else {
            outcome(label, false, problems.join("; "))
        });
    }
    out
}

/// Samples seeded non-covering deletion sets and checks the minus-variant
/// band graph stays connected after removing each.
pub fn verify_adversary_connectivity(samples: usize) -> Vec<Outcome> {
    let mut out = Vec::new();
    for (n, q, k) in [(3, 3, 3), (4, 3, 3)] {
        let label = format!("adversary-connectivity band({n},{q},{k})");
        let params = BandParams::new(n, q, k).expect("grid is valid");
        let minus = band_graph_minus(&params);
        let total = params.total();
        let mut connected = 0usize;
        let mut retries = 0usize;
        let mut failed_seed = None;
        for seed in 0..samples as u64 {
            let (s, retry) =
                sample_non_covering_set(total, k, q, seed, 10_000).expect("sampling succeeds");
            retries += retry;
            let remainder: VertexSet = (0..total as u32).filter(|&w| !s.contains(w)).collect();
            let (sub, _) = minus.induced(&remainder).expect("in range");
            if sub.is_connected() {
                connected += 1;
            } else if failed_seed.is_none() {
                failed_seed = Some(seed);
            }
        }
        let pass = connected == samples;
        let detail = match failed_seed {
            None => format!("{connected}/{samples} connected, {retries} resamples"),
            Some(seed) => format!("{connected}/{samples} connected, first failure at seed {seed}"),
        };
        out.push(outcome(label, pass, detail));
    }
    out
}

pub fn run(suite: &str, samples: usize) -> anyhow::Result<bool> {
    let mut outcomes = Vec::new();
    match suite {
        "thm1" => outcomes.extend(verify_indistinguishability()),
        "band" => {
            outcomes.extend(verify_band_grid());
            outcomes.extend(verify_adversary_connectivity(samples));
        }
        "all" => {
            outcomes.extend(verify_indistinguishability());
            outcomes.extend(verify_band_grid());
            outcomes.extend(verify_adversary_connectivity(samples));
        }
        other => anyhow::bail!("unknown suite '{other}' (expected thm1, band, or all)"),
    }
    let mut all_pass = true;
    for o in &outcomes {
        let verdict = if o.pass { "ok" } else { "FAIL" };
        println!("{verdict} {} - {}", o.label, o.detail);
        all_pass &= o.pass;
    }
    println!(
        "{} of {} checks passed",
        outcomes.iter().filter(|o| o.pass).count(),
        outcomes.len()
    );
    Ok(all_pass)
}
