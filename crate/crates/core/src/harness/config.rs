use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which experiment a report comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Spectral bound, independence number and (when small) exact `tau`.
    Bounds,
    /// Edge-count deviation of random vertex subsets.
    Density,
    /// Largest balanced complete bipartite subgraph.
    Biclique,
    /// Uncovered-edge certificates against brute force.
    Coverage,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::Density => "density",
            Check::Biclique => "biclique",
            Check::Coverage => "coverage",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    /// Search nodes for exact `tau`.
    pub tau_nodes: u64,
    /// Search nodes for exact `alpha`.
    pub alpha_nodes: u64,
    /// Local-search rounds for `alpha` above the exact regime.
    pub alpha_search_rounds: u64,
    /// Greedy steps for the balanced biclique search.
    pub biclique_steps: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tau_nodes: 5_000_000,
            alpha_nodes: 10_000_000,
            alpha_search_rounds: 250_000,
            biclique_steps: 20_000,
        }
    }
}

/// Size limits for the exhaustive computations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Regime {
    pub exact_tau_max_n: usize,
    pub exact_alpha_max_n: usize,
    /// Induced biclique search for the `n - beta + 1` bound.
    pub exact_beta_max_n: usize,
}

impl Default for Regime {
    fn default() -> Self {
        Regime {
            exact_tau_max_n: 10,
            exact_alpha_max_n: 60,
            exact_beta_max_n: 12,
        }
    }
}

/// Empirical pass thresholds. These come from calibration runs, not from
/// any theorem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Ceilings {
    /// Largest acceptable density-deviation constant.
    pub density: f64,
    /// Allowed relative distance of mean `alpha` from `2 log_{1/(1-p)} n`,
    /// checked only above the exact-`alpha` regime.
    pub alpha_band: f64,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            density: 3.0,
            alpha_band: 0.3,
        }
    }
}

/// One experiment; the JSON form uses these field names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub c: f64,
    pub checks: Vec<Check>,
    pub budgets: Budgets,
    pub regime: Regime,
    pub ceilings: Ceilings,
    /// Random subsets per trial in the density check.
    pub subsets_per_trial: usize,
    /// Largest random family in the coverage check.
    pub coverage_max_sets: usize,
    /// Record wall time per trial. Off by default because it makes reports
    /// differ between runs.
    pub record_timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 9,
            p: 0.5,
            trials: 10,
            seed: 0,
            epsilon: 1.0,
            c: 1.0,
            checks: vec![Check::Bounds],
            budgets: Budgets::default(),
            regime: Regime::default(),
            ceilings: Ceilings::default(),
            subsets_per_trial: 50,
            coverage_max_sets: 4,
            record_timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn new(n: usize, p: f64, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            n,
            p,
            trials,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::param(format!("p must lie in (0, 1], got {}", self.p)));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::param(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::param(format!("c must be positive, got {}", self.c)));
        }
        if !(self.ceilings.density > 0.0 && self.ceilings.alpha_band >= 0.0) {
            return Err(Error::param("ceilings must be positive"));
        }
        Ok(())
    }

    /// Inside the `p <= 1/2` range the asymptotic statements are made for.
    pub fn in_regime(&self) -> bool {
        self.p <= 0.5
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
