//! Seeded sampling shared by the probe operations.
//!
//! Probes must be reproducible: the same seed yields the same stream on
//! every platform, which is why the generator is a fixed ChaCha variant
//! rather than the process-seeded default.

use crate::group::{GroupDim, HeisPoint};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator used by every probe in the crate.
pub type ProbeRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ProbeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform vector in [-radius, radius]^dim.
pub fn sample_vec(rng: &mut ProbeRng, dim: usize, radius: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-radius..=radius)).collect()
}

/// Uniform point in the coordinate box [-radius, radius]^{2n+1}.
pub fn sample_point(rng: &mut ProbeRng, n: GroupDim, radius: f64) -> HeisPoint {
    let z = sample_vec(rng, n.planar_dim(), radius);
    let t = rng.random_range(-radius..=radius);
    HeisPoint::new(z, t).expect("sampled coordinates are finite")
}

/// Log-uniform dilation factor in [1e-3, 1e3], for homogeneity checks.
pub fn sample_dilation(rng: &mut ProbeRng) -> f64 {
    10f64.powf(rng.random_range(-3.0..=3.0))
}
