//! Default tolerances, collected in one place.
//!
//! Conventions: defects of algebraic identities (group law, lift recurrence,
//! norm axioms) are measured absolutely on values of size O(1)..O(10) and
//! compared against [`EXACT`]; verification of analytic claims that involve
//! sampling or root-finding uses the looser [`GEODESIC`]; discretized convex
//! bodies use [`ISO_NUMERIC`]-scale bands that shrink with resolution.

/// Absolute tolerance for identities that hold exactly in real arithmetic
/// and are only perturbed by rounding: group axioms, norm axioms at valid
/// parameters, horizontal dominance, the loop area law.
pub const EXACT: f64 = 1e-12;

/// Relative tolerance for homogeneity of norms, |N(delta_l p) - l N(p)|
/// measured relative to l N(p).
pub const HOMOGENEITY_REL: f64 = 1e-10;

/// Absolute tolerance on geodesic defects |d(c(s), c(s')) - |s - s'|| and on
/// recovered parameters (translation, T, a) of affine fits.
pub const GEODESIC: f64 = 1e-9;

/// Metric residual below which a fitted map is declared affine.
///
/// This cannot be as tight as [`GEODESIC`]: homogeneous distances see
/// coordinate rounding through a square root. Two independently computed
/// images of the same affine map differ by ~1e-13 in the t coordinate at
/// radius 10, which the distance reports as ~sqrt(1e-13) ~ 3e-7. Genuinely
/// non-affine maps in this crate sit above 1e-1, five orders away, so the
/// classification stays unambiguous.
pub const AFFINE_RESIDUAL: f64 = 1e-6;

/// Residual band below which a homomorphism constraint is considered to hold.
pub const HOM_RESIDUAL: f64 = 1e-10;

/// Relative threshold on singular values when deciding matrix rank.
pub const RANK_REL: f64 = 1e-8;

/// Absolute band for "is this coordinate zero" checks on witnesses
/// (horizontality of candidate points, collinearity residuals).
pub const WITNESS_ZERO: f64 = 1e-9;

/// Wide equality band used to harvest candidate equality triples while
/// probing; candidates are re-validated at [`WITNESS_ZERO`] before being
/// reported as counterexamples.
pub const EQUALITY_BAND: f64 = 1e-6;

/// Absolute error band for integral quantities (length, area, vertical
/// distance) of convex bodies discretized at a few thousand vertices.
pub const ISO_NUMERIC: f64 = 1e-4;

/// Hausdorff-distance band for the bipolar round trip at resolution 2048.
pub const BIPOLAR: f64 = 1e-3;

/// Default number of vertices used when a sub-Finsler vertical distance is
/// needed and the caller did not choose a resolution.
pub const DEFAULT_ISO_RESOLUTION: usize = 4096;

/// Default sampling radius for probes: coordinates are drawn from
/// [-radius, radius].
pub const DEFAULT_RADIUS: f64 = 10.0;
