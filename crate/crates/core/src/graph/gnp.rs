use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::seeding::rng_from_seed;

/// Parameters of a seeded Erdős–Rényi draw `G(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let spec = GnpSpec { n, p, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::param(format!(
                "edge probability must lie in (0, 1], got {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// Maps a raw 64-bit draw to a uniform deviate in `[0, 1)` using its top 53 bits.
pub(crate) fn unit_deviate(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples `G(n, p)`.
///
/// Pairs `{u, v}`, `u < v`, are visited in lexicographic order and each
/// consumes exactly one `next_u64` from a ChaCha8 stream seeded with
/// `seed_from_u64(seed)`; the pair is an edge iff the deviate from
/// [`unit_deviate`] is below `p`. The output depends only on the spec.
pub fn sample_gnp(spec: &GnpSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let mut g = Graph::empty(spec.n);
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if unit_deviate(rng.next_u64()) < spec.p {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}
