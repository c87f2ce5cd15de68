//! Seeded experiments and their reports.
//!
//! Every trial draws its own seed from the master seed and its index, so
//! trials are independent of each other and of execution order. Reports are
//! plain data with a fixed field order; rerunning a config reproduces the
//! JSON byte for byte unless wall time is recorded.

mod config;
mod oracle;
mod report;

use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use config::{Budgets, Ceilings, Check, ExperimentConfig, Regime};
pub use oracle::{brute_force_coverage, BruteCoverage, ORACLE_MAX_N};
pub use report::{emit_report, render_report, ReportFormat, CSV_COLUMNS};

use crate::coverage::{f_exact, uncovered_certificates, CertificateKind, CoverageFamily};
use crate::error::{Error, Result};
use crate::graph::{
    density_deviation, independence_number_exact, independent_set_local_search, max_balanced_biclique_side,
    sample_gnp, Effort, GnpSpec, Graph, VertexSet,
};
use crate::partition::{largest_induced_biclique, tau_exact, SolveStatus};
use crate::seeding::{rng_from_seed, sub_seed};
use crate::spectral::graham_pollak_lower_bound;
use crate::SearchStatus;

/// Everything measured in one trial; fields a check does not use are null.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub edges: usize,
    pub alpha: Option<usize>,
    pub alpha_status: Option<SearchStatus>,
    pub gp_bound: Option<usize>,
    /// `n - alpha`.
    pub tau_upper: Option<usize>,
    pub tau_exact: Option<usize>,
    pub tau_status: Option<SolveStatus>,
    /// `n - beta + 1`.
    pub alon_upper: Option<usize>,
    pub density_max_c: Option<f64>,
    pub subsets: Option<usize>,
    pub biclique_side_max: Option<usize>,
    /// Left sides of the random family, coverage check only.
    pub family: Option<Vec<Vec<usize>>>,
    /// `e(G) - f`, the fewest edges any trace leaves uncovered.
    pub min_uncovered: Option<usize>,
    /// Largest certified uncovered count.
    pub certificate: Option<usize>,
    pub certificate_method: Option<CertificateKind>,
    /// Invariants that failed in this trial, described in words.
    pub violations: Vec<String>,
    pub elapsed_ms: Option<f64>,
}

/// Aggregates over all trials of one report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    /// Trials with at least one violation.
    pub violating_trials: usize,
    pub exact_trials: usize,
    pub mean_alpha: Option<f64>,
    /// `2 log_{1/(1-p)} n`.
    pub alpha_target: Option<f64>,
    /// Whether the mean independence number lies inside the configured band;
    /// null when the band is not checked.
    pub alpha_in_band: Option<bool>,
    /// Mean of `(n - tau_upper) / (2 ln_{1/(1-p)} n)`; reported only.
    pub mean_gap_ratio: Option<f64>,
    pub max_density_c: Option<f64>,
    pub density_ceiling: Option<f64>,
    pub max_biclique_side: Option<usize>,
    /// `2 log_{1/p} n`; null when `p = 1`.
    pub biclique_threshold: Option<f64>,
    pub counterexamples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub check: Check,
    pub config: ExperimentConfig,
    /// `p <= 1/2`.
    pub in_regime: bool,
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
    pub passed: bool,
}

impl Report {
    fn new(check: Check, cfg: &ExperimentConfig, trials: Vec<TrialRecord>, mut summary: Summary) -> Self {
        summary.trials = trials.len();
        summary.violating_trials = trials.iter().filter(|t| !t.violations.is_empty()).count();
        let passed = summary.violating_trials == 0 && summary.alpha_in_band != Some(false);
        Report {
            tool: "bipart".into(),
            version: crate::VERSION.into(),
            check,
            config: cfg.clone(),
            in_regime: cfg.in_regime(),
            trials,
            summary,
            passed,
        }
    }
}

fn log_base(x: f64, b: f64) -> Option<f64> {
    (b > 1.0 && x > 1.0).then(|| x.ln() / b.ln())
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Runs `body` once per trial with the trial's record pre-filled. A graph
/// with no vertices yields no trials.
fn run_trials(
    cfg: &ExperimentConfig,
    mut body: impl FnMut(&mut TrialRecord, &Graph) -> Result<()>,
) -> Result<Vec<TrialRecord>> {
    let count = if cfg.n == 0 { 0 } else { cfg.trials };
    (0..count)
        .map(|index| {
            let started = Instant::now();
            let seed = sub_seed(cfg.seed, index as u64);
            let g = sample_gnp(&GnpSpec::new(cfg.n, cfg.p, seed)?)?;
            let mut record = TrialRecord {
                index,
                seed,
                edges: g.m(),
                ..Default::default()
            };
            body(&mut record, &g)?;
            if cfg.record_timing {
                record.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            Ok(record)
        })
        .collect()
}

/// Independence number, spectral bound and upper bounds per trial, plus
/// exact `tau` in the small regime, checking
/// `gp <= tau <= min(n - alpha, n - beta + 1)` and `n - alpha <= n - 1`.
///
/// Above the exact-`alpha` regime, `alpha` comes from local search (a lower
/// bound, so `n - alpha` is still an upper bound on `tau`) and the mean is
/// checked against the configured band around `2 log_{1/(1-p)} n`.
pub fn run_bounds_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let n = cfg.n;
    let trials = run_trials(cfg, |rec, g| {
        let (alpha, status) = if n <= cfg.regime.exact_alpha_max_n {
            let r = independence_number_exact(g, cfg.budgets.alpha_nodes);
            (r.size, r.status)
        } else {
            let set = independent_set_local_search(g, sub_seed(rec.seed, 1), cfg.budgets.alpha_search_rounds);
            (set.len(), SearchStatus::Incomplete)
        };
        let gp = graham_pollak_lower_bound(g)?;
        let upper = n - alpha;
        rec.alpha = Some(alpha);
        rec.alpha_status = Some(status);
        rec.gp_bound = Some(gp);
        rec.tau_upper = Some(upper);
        if gp > upper {
            rec.violations.push(format!("spectral bound {gp} exceeds n - alpha = {upper}"));
        }
        if n > 0 && upper > n - 1 {
            rec.violations.push(format!("n - alpha = {upper} exceeds n - 1"));
        }
        if n <= cfg.regime.exact_beta_max_n {
            let beta = largest_induced_biclique(g, Effort::Exact, u64::MAX, 0)?;
            if beta.status == SearchStatus::Exact {
                rec.alon_upper = Some(n + 1 - beta.size);
            }
        }
        if n <= cfg.regime.exact_tau_max_n {
            let r = tau_exact(g, cfg.budgets.tau_nodes)?;
            rec.tau_status = Some(r.status);
            if r.status == SolveStatus::Exact {
                let tau = r.value.finite().expect("tau is always finite");
                rec.tau_exact = Some(tau);
                if gp > tau {
                    rec.violations.push(format!("spectral bound {gp} exceeds tau = {tau}"));
                }
                if tau > upper {
                    rec.violations.push(format!("tau = {tau} exceeds n - alpha = {upper}"));
                }
                if let Some(alon) = rec.alon_upper.filter(|&a| tau > a) {
                    rec.violations.push(format!("tau = {tau} exceeds n - beta + 1 = {alon}"));
                }
            }
        }
        Ok(())
    })?;

    let alpha_target = log_base(n as f64, 1.0 / (1.0 - cfg.p)).map(|l| 2.0 * l);
    let mean_alpha = mean(trials.iter().filter_map(|t| t.alpha.map(|a| a as f64)));
    let band_checked = n > cfg.regime.exact_alpha_max_n && !trials.is_empty();
    let summary = Summary {
        exact_trials: trials.iter().filter(|t| t.tau_exact.is_some()).count(),
        mean_alpha,
        alpha_target,
        alpha_in_band: match (band_checked, mean_alpha, alpha_target) {
            (true, Some(m), Some(t)) => Some((m - t).abs() <= cfg.ceilings.alpha_band * t),
            _ => None,
        },
        mean_gap_ratio: alpha_target.and_then(|t| {
            mean(trials.iter().filter_map(|r| r.tau_upper.map(|u| (n - u) as f64 / t)))
        }),
        ..Default::default()
    };
    Ok(Report::new(Check::Bounds, cfg, trials, summary))
}

/// Random subsets with sizes spread log-uniformly between `sqrt(ln n)` and
/// `n`; records the largest deviation constant per trial against the
/// configured ceiling. Needs `n >= 16` when any trial runs.
pub fn run_density_check(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let n = cfg.n;
    if cfg.trials > 0 && n < 16 {
        return Err(Error::param(format!("density check needs n >= 16, got {n}")));
    }
    let trials = run_trials(cfg, |rec, g| {
        let mut rng = rng_from_seed(sub_seed(rec.seed, 1));
        let smallest = ((n as f64).ln().sqrt().ceil() as usize).max(1);
        let (lo, hi) = ((smallest as f64).ln(), (n as f64).ln());
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.subsets_per_trial {
            let size = (rng.random_range(lo..=hi).exp().round() as usize).clamp(1, n);
            let members = sample(&mut rng, n, size).into_vec();
            let u = VertexSet::from_vertices(n, members)?;
            worst = worst.max(density_deviation(g, &u, cfg.p)?);
        }
        rec.density_max_c = Some(worst);
        rec.subsets = Some(cfg.subsets_per_trial);
        if worst >= cfg.ceilings.density {
            rec.violations.push(format!(
                "deviation constant {worst} reaches the ceiling {}",
                cfg.ceilings.density
            ));
        }
        Ok(())
    })?;
    let summary = Summary {
        max_density_c: trials.iter().filter_map(|t| t.density_max_c).reduce(f64::max),
        density_ceiling: Some(cfg.ceilings.density),
        ..Default::default()
    };
    Ok(Report::new(Check::Density, cfg, trials, summary))
}

/// Greedy search for the largest balanced biclique per trial, flagged when it
/// exceeds `2 log_{1/p} n`. With `p = 1` there is no threshold and nothing is
/// flagged.
pub fn run_biclique_side_check(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let threshold = log_base(cfg.n as f64, 1.0 / cfg.p).map(|l| 2.0 * l);
    let trials = run_trials(cfg, |rec, g| {
        let r = max_balanced_biclique_side(g, Effort::Heuristic, cfg.budgets.biclique_steps, sub_seed(rec.seed, 1))?;
        rec.biclique_side_max = Some(r.side);
        if let Some(t) = threshold.filter(|&t| r.side as f64 > t) {
            rec.violations.push(format!("balanced biclique side {} exceeds {t}", r.side));
        }
        Ok(())
    })?;
    let summary = Summary {
        max_biclique_side: trials.iter().filter_map(|t| t.biclique_side_max).max(),
        biclique_threshold: threshold,
        ..Default::default()
    };
    Ok(Report::new(Check::Biclique, cfg, trials, summary))
}

fn random_family(n: usize, max_sets: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let count = rng.random_range(0..=max_sets);
    (0..count)
        .map(|_| {
            let size = if rng.random_bool(0.6) { 2 } else { rng.random_range(1..=3) };
            let mut set = sample(rng, n, size.min(n)).into_vec();
            set.sort_unstable();
            set
        })
        .collect()
}

/// Compares every uncovered-edge certificate on a random family against
/// exhaustive search over all coverage traces. A certificate fails when it
/// counts more edges than the best trace leaves uncovered, or names an edge
/// that some trace covers. The exact `f` is cross-checked as well.
pub fn run_coverage_soundness(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    if cfg.trials > 0 && (cfg.n > ORACLE_MAX_N || cfg.n < 2) {
        return Err(Error::param(format!(
            "coverage check needs 2 <= n <= {ORACLE_MAX_N}, got {}",
            cfg.n
        )));
    }
    if cfg.coverage_max_sets > 8 {
        return Err(Error::param("coverage check supports at most 8 sets"));
    }
    let trials = run_trials(cfg, |rec, g| {
        let mut rng = rng_from_seed(sub_seed(rec.seed, 1));
        let sets = random_family(cfg.n, cfg.coverage_max_sets, &mut rng);
        let fam = CoverageFamily::over_all(cfg.n, &sets)?;
        let truth = brute_force_coverage(g, &fam).expect("size checked above");
        let min_uncovered = g.m() - truth.max_covered;
        let (f, _) = f_exact(g, &fam)?;
        if f != truth.max_covered {
            rec.violations.push(format!("f_exact = {f} but exhaustive search gives {}", truth.max_covered));
        }
        let mut best = (0, CertificateKind::None);
        for cert in uncovered_certificates(g, &fam, sub_seed(rec.seed, 2))? {
            if cert.value > min_uncovered {
                rec.violations.push(format!(
                    "{:?} certificate {} exceeds the minimum uncovered count {min_uncovered}",
                    cert.method, cert.value
                ));
            }
            for e in cert.edges.iter().filter(|e| truth.coverable.binary_search(e).is_ok()) {
                rec.violations.push(format!("{:?} certificate names coverable edge {e:?}", cert.method));
            }
            if cert.value > best.0 {
                best = (cert.value, cert.method);
            }
        }
        rec.family = Some(sets);
        rec.min_uncovered = Some(min_uncovered);
        rec.certificate = Some(best.0);
        rec.certificate_method = Some(best.1);
        Ok(())
    })?;
    let summary = Summary {
        counterexamples: trials.iter().map(|t| t.violations.len()).sum(),
        ..Default::default()
    };
    Ok(Report::new(Check::Coverage, cfg, trials, summary))
}

/// Runs every check listed in the config, in the listed order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Report>> {
    cfg.validate()?;
    cfg.checks
        .iter()
        .map(|check| match check {
            Check::Bounds => run_bounds_experiment(cfg),
            Check::Density => run_density_check(cfg),
            Check::Biclique => run_biclique_side_check(cfg),
            Check::Coverage => run_coverage_soundness(cfg),
        })
        .collect()
}
