//! Homogeneous homomorphisms and isometric embeddings.
//!
//! A map between Heisenberg groups that respects both the group law and the
//! dilations is affine on the planar layer and linear in t:
//!
//! * from R^m:  A(x) = (T x, 0) with T^t J_n T = 0 (isotropic column span);
//! * from H^m:  A(z, t) = (T z, a t) with a J_m = T^t J_n T.
//!
//! Such an H^m -> H^n map is injective exactly when m <= n, a != 0,
//! rank T = 2m, and |a| = det(T^t J_n T)^{1/2m}. Valid specs with a > 0 are
//! T = sqrt(a) B for a symplectic embedding B (B^t J_n B = J_m); for a < 0
//! compose with the block swap tau_m = (0, E_m; E_m, 0).
//!
//! Rigidity makes these maps the whole story: when the target norm has the
//! geodesic linearity property, every isometric embedding is a left
//! translation composed with a homogeneous homomorphism. [`fit_affine`]
//! recovers that decomposition from point evaluations and measures how far
//! a given map is from affine; [`isometry_probe`] measures metric
//! distortion directly.

use crate::error::{Error, Result};
use crate::group::{distance, inverse, multiply, GroupDim, HeisPoint};
use crate::norms::NormDescriptor;
use crate::sampling::{sample_point, sample_vec, seeded_rng, ProbeRng};
use crate::tol;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Domain of a homogeneous homomorphism: a Euclidean space R^m or a
/// Heisenberg group H^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Euclidean,
    Heisenberg,
}

/// A candidate homogeneous homomorphism into H^n, stored as the planar
/// matrix T (2n rows; m or 2m columns) plus the vertical factor a for
/// Heisenberg sources. Construction checks shapes only; whether the
/// algebraic constraint holds is measured by [`check_hom`].
#[derive(Clone, Debug, PartialEq)]
pub struct HomSpec {
    source: SourceKind,
    m: usize,
    n: usize,
    t_mat: DMatrix<f64>,
    a: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawHomSpec {
    #[serde(rename = "T")]
    t: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    source: SourceKind,
    m: usize,
    n: usize,
}

impl HomSpec {
    pub fn heisenberg(m: GroupDim, n: GroupDim, t_rows: &[Vec<f64>], a: f64) -> Result<Self> {
        let t_mat = rows_to_matrix(t_rows, 2 * n.get(), 2 * m.get())?;
        if !a.is_finite() {
            return Err(Error::NonFinite { context: "vertical factor a" });
        }
        Ok(HomSpec { source: SourceKind::Heisenberg, m: m.get(), n: n.get(), t_mat, a: Some(a) })
    }

    pub fn euclidean(m: usize, n: GroupDim, t_rows: &[Vec<f64>]) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadGroupDim(0));
        }
        let t_mat = rows_to_matrix(t_rows, 2 * n.get(), m)?;
        Ok(HomSpec { source: SourceKind::Euclidean, m, n: n.get(), t_mat, a: None })
    }

    pub fn source(&self) -> SourceKind {
        self.source
    }

    /// Source dimension parameter: group dimension m for Heisenberg
    /// sources, vector-space dimension m for Euclidean ones.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }

    pub fn t_matrix(&self) -> &DMatrix<f64> {
        &self.t_mat
    }

    /// Applies the map to a Heisenberg source point: (z, t) -> (T z, a t).
    pub fn apply(&self, p: &HeisPoint) -> Result<HeisPoint> {
        if self.source != SourceKind::Heisenberg {
            return Err(Error::InvalidArgument(
                "spec has a Euclidean source; use apply_euclidean".into(),
            ));
        }
        if p.n() != self.m {
            return Err(Error::DimensionMismatch { left: p.n(), right: self.m });
        }
        let z = &self.t_mat * DMatrix::from_column_slice(2 * self.m, 1, p.z());
        HeisPoint::new(z.as_slice().to_vec(), self.a.unwrap() * p.t())
    }

    /// Applies the map to a Euclidean source point: x -> (T x, 0).
    pub fn apply_euclidean(&self, x: &[f64]) -> Result<HeisPoint> {
        if self.source != SourceKind::Euclidean {
            return Err(Error::InvalidArgument("spec has a Heisenberg source; use apply".into()));
        }
        if x.len() != self.m {
            return Err(Error::DimensionMismatch { left: x.len(), right: self.m });
        }
        let z = &self.t_mat * DMatrix::from_column_slice(self.m, 1, x);
        HeisPoint::new(z.as_slice().to_vec(), 0.0)
    }

    /// T^t J_n T, the bilinear form the constraint talks about.
    fn pulled_back_form(&self) -> DMatrix<f64> {
        let jn = j_matrix(self.n);
        self.t_mat.transpose() * jn * &self.t_mat
    }
}

fn rows_to_matrix(rows: &[Vec<f64>], want_rows: usize, want_cols: usize) -> Result<DMatrix<f64>> {
    if rows.len() != want_rows {
        return Err(Error::DimensionMismatch { left: rows.len(), right: want_rows });
    }
    let mut flat = Vec::with_capacity(want_rows * want_cols);
    for row in rows {
        if row.len() != want_cols {
            return Err(Error::DimensionMismatch { left: row.len(), right: want_cols });
        }
        if row.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite { context: "matrix entries" });
        }
        flat.extend_from_slice(row);
    }
    Ok(DMatrix::from_row_slice(want_rows, want_cols, &flat))
}

/// The symplectic matrix J_k = (0, -E_k; E_k, 0), materialized only for the
/// small dense algebra in this module.
pub fn j_matrix(k: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        j[(i, k + i)] = -1.0;
        j[(k + i, i)] = 1.0;
    }
    j
}

/// The block swap tau_k = (0, E_k; E_k, 0) used for negative vertical
/// factors.
pub fn tau_matrix(k: usize) -> DMatrix<f64> {
    let mut tau = DMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        tau[(i, k + i)] = 1.0;
        tau[(k + i, i)] = 1.0;
    }
    tau
}

/// Result of checking the homomorphism constraint.
#[derive(Clone, Debug, Serialize)]
pub struct HomCheckReport {
    /// max |(T^t J_n T - a J_m)_{ij}| (Heisenberg source) or
    /// max |(T^t J_n T)_{ij}| (Euclidean source).
    pub residual: f64,
    pub holds: bool,
    pub tolerance: f64,
}

/// Verifies the algebraic constraint of a candidate homomorphism.
pub fn check_hom(spec: &HomSpec) -> HomCheckReport {
    let mut form = spec.pulled_back_form();
    if let Some(a) = spec.a {
        form -= a * j_matrix(spec.m);
    }
    let residual = form.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    HomCheckReport { residual, holds: residual <= tol::HOM_RESIDUAL, tolerance: tol::HOM_RESIDUAL }
}

/// Injectivity analysis of a homomorphism spec.
#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub injective: bool,
    /// Numerical rank of T (singular values above 1e-8 times the largest).
    pub rank: usize,
    pub required_rank: usize,
    /// det(T^t J_n T)^{1/2m} for Heisenberg sources, when the determinant
    /// is positive; |a| must match it.
    pub root_a: Option<f64>,
    pub singular_values: Vec<f64>,
}

/// Decides injectivity: rank m for Euclidean sources; for Heisenberg
/// sources m <= n, a != 0, rank T = 2m, and |a| = det(T^t J_n T)^{1/2m}.
pub fn is_injective_hom(spec: &HomSpec) -> InjectivityReport {
    let mut sv: Vec<f64> = spec.t_mat.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > tol::RANK_REL * sigma_max).count();
    match spec.source {
        SourceKind::Euclidean => InjectivityReport {
            injective: rank == spec.m,
            rank,
            required_rank: spec.m,
            root_a: None,
            singular_values: sv,
        },
        SourceKind::Heisenberg => {
            let a = spec.a.unwrap();
            let det = spec.pulled_back_form().determinant();
            let root_a =
                if det > 0.0 { Some(det.powf(1.0 / (2.0 * spec.m as f64))) } else { None };
            let a_matches = root_a
                .map(|r| (a.abs() - r).abs() <= tol::RANK_REL * r.max(1.0))
                .unwrap_or(false);
            InjectivityReport {
                injective: spec.m <= spec.n && a != 0.0 && rank == 2 * spec.m && a_matches,
                rank,
                required_rank: 2 * spec.m,
                root_a,
                singular_values: sv,
            }
        }
    }
}

/// Random symplectic embedding B in R^{2n x 2m} with B^t J_n B = J_m,
/// built from planar rotations: each source plane lands in a distinct
/// target plane, rotated by a random angle.
pub fn random_symplectic_embedding(
    m: GroupDim,
    n: GroupDim,
    rng: &mut ProbeRng,
) -> Result<DMatrix<f64>> {
    let (mm, nn) = (m.get(), n.get());
    if mm > nn {
        return Err(Error::InvalidArgument(format!(
            "no symplectic embedding R^{} -> R^{}: need m <= n",
            2 * mm,
            2 * nn
        )));
    }
    let mut planes: Vec<usize> = (0..nn).collect();
    planes.shuffle(rng);
    let mut b = DMatrix::zeros(2 * nn, 2 * mm);
    for j in 0..mm {
        let target = planes[j];
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (sin, cos) = theta.sin_cos();
        b[(target, j)] = cos;
        b[(nn + target, j)] = sin;
        b[(target, mm + j)] = -sin;
        b[(nn + target, mm + j)] = cos;
    }
    Ok(b)
}

/// Random valid homomorphism spec. Heisenberg sources draw a vertical
/// factor a with |a| in [0.3, 3] and either sign (T = sqrt(a) B, or
/// sqrt(-a) B tau_m for a < 0); Euclidean sources use the isotropic
/// x-columns of a symplectic embedding, rescaled per column.
pub fn random_hom_spec(
    m: GroupDim,
    n: GroupDim,
    source: SourceKind,
    rng: &mut ProbeRng,
) -> Result<HomSpec> {
    let b = random_symplectic_embedding(m, n, rng)?;
    match source {
        SourceKind::Heisenberg => {
            let magnitude: f64 = rng.random_range(0.3..3.0);
            let a = if rng.random_range(0..2) == 0 { magnitude } else { -magnitude };
            let t_mat = if a > 0.0 { a.sqrt() * b } else { (-a).sqrt() * b * tau_matrix(m.get()) };
            let rows = matrix_rows(&t_mat);
            HomSpec::heisenberg(m, n, &rows, a)
        }
        SourceKind::Euclidean => {
            let mut t_mat = DMatrix::zeros(2 * n.get(), m.get());
            for j in 0..m.get() {
                let scale: f64 = rng.random_range(0.3..3.0);
                t_mat.set_column(j, &(scale * b.column(j)));
            }
            let rows = matrix_rows(&t_mat);
            HomSpec::euclidean(m.get(), n, &rows)
        }
    }
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Result of a randomized isometry probe.
#[derive(Clone, Debug, Serialize)]
pub struct IsometryReport {
    pub samples_tested: u64,
    /// Worst |d_2(f(p), f(q)) - d_1(p, q)|.
    pub worst_defect: f64,
    pub is_isometry: bool,
    pub witness: (HeisPoint, HeisPoint),
    pub tolerance: f64,
}

/// Compares d_2(f(p), f(q)) with d_1(p, q) on seeded sample pairs in
/// [-radius, radius]^{2m+1}; the witness is the worst pair seen.
pub fn isometry_probe<F>(
    f: F,
    source: (&NormDescriptor, GroupDim),
    target: (&NormDescriptor, GroupDim),
    samples: u64,
    seed: u64,
    radius: f64,
    tolerance: f64,
) -> Result<IsometryReport>
where
    F: Fn(&HeisPoint) -> Result<HeisPoint>,
{
    if samples == 0 {
        return Err(Error::TooFewSamples { need: 1, got: 0 });
    }
    let (src_norm, m) = source;
    let (dst_norm, n) = target;
    let mut rng = seeded_rng(seed);
    let mut worst = -1.0;
    let mut witness = (HeisPoint::origin(m), HeisPoint::origin(m));
    for _ in 0..samples {
        let p = sample_point(&mut rng, m, radius);
        let q = sample_point(&mut rng, m, radius);
        let fp = f(&p)?;
        let fq = f(&q)?;
        if fp.n() != n.get() || fq.n() != n.get() {
            return Err(Error::DimensionMismatch { left: fp.n(), right: n.get() });
        }
        let defect = (distance(dst_norm, &fp, &fq)? - distance(src_norm, &p, &q)?).abs();
        if defect > worst {
            worst = defect;
            witness = (p, q);
        }
    }
    Ok(IsometryReport {
        samples_tested: samples,
        worst_defect: worst,
        is_isometry: worst <= tolerance,
        witness,
        tolerance,
    })
}

/// Design parameters for [`fit_affine`] / [`fit_affine_euclidean`].
#[derive(Clone, Debug)]
pub struct FitDesign {
    /// Size of the independent random set the residual is measured on.
    pub residual_samples: u64,
    pub seed: u64,
    pub radius: f64,
    /// Residual at or below which the map is declared affine.
    pub tolerance: f64,
}

impl Default for FitDesign {
    fn default() -> Self {
        FitDesign {
            residual_samples: 256,
            seed: 0,
            radius: tol::DEFAULT_RADIUS,
            tolerance: tol::AFFINE_RESIDUAL,
        }
    }
}

/// Result of fitting a left translation composed with a homogeneous
/// homomorphism to a black-box map.
#[derive(Clone, Debug, Serialize)]
pub struct AffineFitReport {
    /// f(0); the left-translation part.
    pub translation: HeisPoint,
    /// The fitted homomorphism A with f(p) ~ translation * A(p).
    #[serde(serialize_with = "serialize_spec")]
    pub fitted: HomSpec,
    /// max over the probe set of d_2(f(p), translation * A(p)).
    pub residual: f64,
    pub is_affine: bool,
    /// Constraint residual of the fitted spec (see [`check_hom`]).
    pub constraint_residual: f64,
}

fn serialize_spec<S: serde::Serializer>(
    spec: &HomSpec,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    RawHomSpec::from(spec.clone()).serialize(s)
}

/// Fits translation * homomorphism to a map f: H^m -> H^n: the translation
/// is f(0), the columns of T are the planar parts of g(e_j) for
/// g(p) = f(0)^{-1} * f(p), and a is the height of g((0, 1)). The residual
/// is measured on an independent seeded sample set.
pub fn fit_affine<F>(
    f: F,
    m: GroupDim,
    target: (&NormDescriptor, GroupDim),
    design: &FitDesign,
) -> Result<AffineFitReport>
where
    F: Fn(&HeisPoint) -> Result<HeisPoint>,
{
    let origin = HeisPoint::origin(m);
    let g0 = f(&origin)?;
    let (dst_norm, n) = target;
    if g0.n() != n.get() {
        return Err(Error::DimensionMismatch { left: g0.n(), right: n.get() });
    }
    let g0_inv = inverse(&g0);
    let g = |p: &HeisPoint| -> Result<HeisPoint> { multiply(&g0_inv, &f(p)?) };

    let cols = m.planar_dim();
    let mut t_rows = vec![vec![0.0; cols]; n.planar_dim()];
    for j in 0..cols {
        let img = g(&HeisPoint::horizontal_unit(m, j)?)?;
        for i in 0..n.planar_dim() {
            t_rows[i][j] = img.z()[i];
        }
    }
    let a = g(&HeisPoint::vertical(m, 1.0)?)?.t();
    let fitted = HomSpec::heisenberg(m, n, &t_rows, a)?;

    let mut rng = seeded_rng(design.seed);
    let mut residual = 0.0f64;
    for _ in 0..design.residual_samples {
        let p = sample_point(&mut rng, m, design.radius);
        let predicted = multiply(&g0, &fitted.apply(&p)?)?;
        residual = residual.max(distance(dst_norm, &f(&p)?, &predicted)?);
    }
    let constraint_residual = check_hom(&fitted).residual;
    Ok(AffineFitReport {
        translation: g0,
        fitted,
        residual,
        is_affine: residual <= design.tolerance,
        constraint_residual,
    })
}

/// [`fit_affine`] for maps with Euclidean source R^m: T columns come from
/// g(e_j) and there is no vertical factor.
pub fn fit_affine_euclidean<F>(
    f: F,
    m: usize,
    target: (&NormDescriptor, GroupDim),
    design: &FitDesign,
) -> Result<AffineFitReport>
where
    F: Fn(&[f64]) -> Result<HeisPoint>,
{
    if m == 0 {
        return Err(Error::BadGroupDim(0));
    }
    let g0 = f(&vec![0.0; m])?;
    let (dst_norm, n) = target;
    if g0.n() != n.get() {
        return Err(Error::DimensionMismatch { left: g0.n(), right: n.get() });
    }
    let g0_inv = inverse(&g0);
    let g = |x: &[f64]| -> Result<HeisPoint> { multiply(&g0_inv, &f(x)?) };

    let mut t_rows = vec![vec![0.0; m]; n.planar_dim()];
    for j in 0..m {
        let mut e = vec![0.0; m];
        e[j] = 1.0;
        let img = g(&e)?;
        for i in 0..n.planar_dim() {
            t_rows[i][j] = img.z()[i];
        }
    }
    let fitted = HomSpec::euclidean(m, n, &t_rows)?;

    let mut rng = seeded_rng(design.seed);
    let mut residual = 0.0f64;
    for _ in 0..design.residual_samples {
        let x = sample_vec(&mut rng, m, design.radius);
        let predicted = multiply(&g0, &fitted.apply_euclidean(&x)?)?;
        residual = residual.max(distance(dst_norm, &f(&x)?, &predicted)?);
    }
    let constraint_residual = check_hom(&fitted).residual;
    Ok(AffineFitReport {
        translation: g0,
        fitted,
        residual,
        is_affine: residual <= design.tolerance,
        constraint_residual,
    })
}

// --- serialization ----------------------------------------------------------

impl From<HomSpec> for RawHomSpec {
    fn from(spec: HomSpec) -> Self {
        RawHomSpec {
            t: matrix_rows(&spec.t_mat),
            a: spec.a,
            source: spec.source,
            m: spec.m,
            n: spec.n,
        }
    }
}

impl TryFrom<RawHomSpec> for HomSpec {
    type Error = Error;
    fn try_from(raw: RawHomSpec) -> Result<Self> {
        let n = GroupDim::new(raw.n)?;
        match raw.source {
            SourceKind::Heisenberg => {
                let a = raw
                    .a
                    .ok_or_else(|| Error::InvalidArgument("Heisenberg spec is missing a".into()))?;
                HomSpec::heisenberg(GroupDim::new(raw.m)?, n, &raw.t, a)
            }
            SourceKind::Euclidean => {
                if raw.a.is_some() {
                    return Err(Error::InvalidArgument(
                        "Euclidean spec must not carry a vertical factor a".into(),
                    ));
                }
                HomSpec::euclidean(raw.m, n, &raw.t)
            }
        }
    }
}

impl Serialize for HomSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawHomSpec::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawHomSpec::deserialize(d)?;
        HomSpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::max_coord_diff;

    fn h(n: usize) -> GroupDim {
        GroupDim::new(n).unwrap()
    }

    #[test]
    fn column_embedding_h1_into_h2_is_a_hom() {
        // T maps (x, y) to (x, 0, y, 0): source x -> first target x-axis,
        // source y -> first target y-axis. Then T^t J_2 T = J_1, a = 1.
        let t = vec![
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ];
        let spec = HomSpec::heisenberg(h(1), h(2), &t, 1.0).unwrap();
        let report = check_hom(&spec);
        assert_eq!(report.residual, 0.0);
        assert!(report.holds);
        let img = spec.apply(&HeisPoint::from_xyt(1.0, 2.0, 3.0).unwrap()).unwrap();
        assert_eq!(img, HeisPoint::new(vec![1.0, 0.0, 2.0, 0.0], 3.0).unwrap());
        assert!(is_injective_hom(&spec).injective);
    }

    #[test]
    fn planar_2x2_maps_scale_a_by_the_determinant() {
        // For 2x2 M, M^t J M = det(M) J; T = (1, -1; 1, 1) has det 2.
        let t = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        let spec = HomSpec::heisenberg(h(1), h(1), &t, 2.0).unwrap();
        assert_eq!(check_hom(&spec).residual, 0.0);
        // The wrong a shows up as exactly |det - a|.
        let bad = HomSpec::heisenberg(h(1), h(1), &t, 1.0).unwrap();
        let report = check_hom(&bad);
        assert_eq!(report.residual, 1.0);
        assert!(!report.holds);
    }

    #[test]
    fn euclidean_isotropic_columns_check_out() {
        // Columns e_1, e_2 of R^4 span the x-block, which is isotropic.
        let t = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
        ];
        let spec = HomSpec::euclidean(2, h(2), &t).unwrap();
        assert_eq!(check_hom(&spec).residual, 0.0);
        assert!(is_injective_hom(&spec).injective);
        let img = spec.apply_euclidean(&[3.0, -1.0]).unwrap();
        assert_eq!(img, HeisPoint::new(vec![3.0, -1.0, 0.0, 0.0], 0.0).unwrap());
        // A non-isotropic pair (e_1, e_3) fails: omega(e_1, e_2-plane...) != 0.
        let bad = vec![
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ];
        let spec = HomSpec::euclidean(2, h(2), &bad).unwrap();
        assert_eq!(check_hom(&spec).residual, 1.0);
    }

    #[test]
    fn random_specs_satisfy_the_constraint_and_the_hom_identity() {
        let mut rng = seeded_rng(13);
        for _ in 0..50 {
            let m = h(rng.random_range(1..=3));
            let n = h(rng.random_range(m.get()..=3));
            let spec = random_hom_spec(m, n, SourceKind::Heisenberg, &mut rng).unwrap();
            assert!(check_hom(&spec).residual <= tol::HOM_RESIDUAL);
            assert!(is_injective_hom(&spec).injective);
            // f(p * q) = f(p) * f(q) on samples.
            for _ in 0..20 {
                let p = sample_point(&mut rng, m, 5.0);
                let q = sample_point(&mut rng, m, 5.0);
                let lhs = spec.apply(&multiply(&p, &q).unwrap()).unwrap();
                let rhs = multiply(&spec.apply(&p).unwrap(), &spec.apply(&q).unwrap()).unwrap();
                assert!(max_coord_diff(&lhs, &rhs).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn negative_vertical_factors_are_valid_and_detected() {
        let mut rng = seeded_rng(99);
        let mut saw_negative = false;
        for _ in 0..20 {
            let spec = random_hom_spec(h(2), h(3), SourceKind::Heisenberg, &mut rng).unwrap();
            assert!(check_hom(&spec).holds);
            let report = is_injective_hom(&spec);
            assert!(report.injective);
            let a = spec.a().unwrap();
            if a < 0.0 {
                saw_negative = true;
                assert!((report.root_a.unwrap() - a.abs()).abs() < 1e-9);
            }
        }
        assert!(saw_negative);
    }

    #[test]
    fn rank_deficiency_defeats_injectivity() {
        // Duplicate columns: rank 1 < 2m.
        let t = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let spec = HomSpec::heisenberg(h(1), h(1), &t, 0.0).unwrap();
        let report = is_injective_hom(&spec);
        assert!(!report.injective);
        assert_eq!(report.rank, 1);
        // a = 0 kills injectivity even with full planar rank.
        let t = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let spec = HomSpec::heisenberg(h(1), h(1), &t, 0.0).unwrap();
        assert!(!is_injective_hom(&spec).injective);
    }

    #[test]
    fn identity_is_an_isometry_and_dilation_is_not() {
        let norm = NormDescriptor::Koranyi;
        let id = |p: &HeisPoint| Ok(p.clone());
        let report =
            isometry_probe(id, (&norm, h(1)), (&norm, h(1)), 500, 3, 5.0, tol::EXACT).unwrap();
        assert!(report.is_isometry, "{report:?}");
        let double = |p: &HeisPoint| crate::group::dilate(2.0, p);
        let report =
            isometry_probe(double, (&norm, h(1)), (&norm, h(1)), 500, 3, 5.0, tol::EXACT).unwrap();
        assert!(!report.is_isometry);
        assert!(report.worst_defect > 1.0);
    }

    #[test]
    fn fit_recovers_translated_homomorphisms() {
        let mut rng = seeded_rng(7);
        let norm = NormDescriptor::Koranyi;
        for _ in 0..20 {
            let m = h(rng.random_range(1..=3));
            let n = h(rng.random_range(m.get()..=3));
            let spec = random_hom_spec(m, n, SourceKind::Heisenberg, &mut rng).unwrap();
            let g = sample_point(&mut rng, n, 5.0);
            let f = |p: &HeisPoint| multiply(&g, &spec.apply(p)?);
            let report = fit_affine(f, m, (&norm, n), &FitDesign::default()).unwrap();
            assert!(report.is_affine, "{report:?}");
            assert!(report.residual <= tol::AFFINE_RESIDUAL);
            // Parameter recovery is far tighter than the metric residual,
            // which pays a square root on coordinate rounding.
            assert!(max_coord_diff(&report.translation, &g).unwrap() <= tol::GEODESIC);
            let dt = (&report.fitted.t_mat - &spec.t_mat)
                .iter()
                .fold(0.0f64, |mx, v| mx.max(v.abs()));
            assert!(dt <= tol::GEODESIC);
            assert!((report.fitted.a().unwrap() - spec.a().unwrap()).abs() <= tol::GEODESIC);
        }
    }

    #[test]
    fn fit_recovers_euclidean_sources() {
        let mut rng = seeded_rng(8);
        let norm = NormDescriptor::Koranyi;
        for _ in 0..10 {
            let m = rng.random_range(1..=3usize);
            let n = h(rng.random_range(m..=3));
            let spec = random_hom_spec(h(m), n, SourceKind::Euclidean, &mut rng).unwrap();
            let g = sample_point(&mut rng, n, 5.0);
            let f = |x: &[f64]| multiply(&g, &spec.apply_euclidean(x)?);
            let report = fit_affine_euclidean(f, m, (&norm, n), &FitDesign::default()).unwrap();
            assert!(report.is_affine, "{report:?}");
            assert!(max_coord_diff(&report.translation, &g).unwrap() <= tol::GEODESIC);
        }
    }

    #[test]
    fn fit_rejects_the_sine_embedding() {
        let f = crate::curves::SineEmbedding::new(h(2), 0.5).unwrap();
        let norm = f.target_norm();
        let report =
            fit_affine(|p| f.eval(p), h(1), (&norm, h(2)), &FitDesign::default()).unwrap();
        assert!(!report.is_affine);
        assert!(report.residual > 0.5, "residual {}", report.residual);
        // The fitted linear part is the best the probe directions allow:
        // column 1 picks up sin(1) in the second coordinate.
        assert!((report.fitted.t_matrix()[(1, 0)] - 1f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_the_nonlinear_catalog_geodesic() {
        // The p = inf catalog curve as a map R -> H^n is an isometric
        // embedding (unit-speed geodesic) but not affine.
        let c = crate::curves::CatalogGeodesic::p_inf(h(2), 0.4).unwrap();
        let norm = c.norm();
        let report = fit_affine_euclidean(
            |x| Ok(c.eval(x[0])),
            1,
            (&norm, h(2)),
            &FitDesign::default(),
        )
        .unwrap();
        assert!(!report.is_affine);
        assert!(report.residual > 0.1, "residual {}", report.residual);
    }

    #[test]
    fn spec_json_round_trip() {
        let t = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        let spec = HomSpec::heisenberg(h(1), h(1), &t, 2.0).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"T":[[1.0,-1.0],[1.0,1.0]],"a":2.0,"source":"heisenberg","m":1,"n":1}"#);
        let back: HomSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        // Shape errors surface on deserialize.
        let bad = r#"{"T":[[1.0,-1.0]],"a":2.0,"source":"heisenberg","m":1,"n":1}"#;
        assert!(serde_json::from_str::<HomSpec>(bad).is_err());
    }

    #[test]
    fn shape_validation() {
        let t = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(HomSpec::heisenberg(h(1), h(2), &t, 1.0).is_err());
        assert!(HomSpec::heisenberg(h(1), h(1), &t, f64::NAN).is_err());
        let spec = HomSpec::heisenberg(h(1), h(1), &t, 1.0).unwrap();
        assert!(spec.apply(&HeisPoint::new(vec![1.0, 0.0, 0.0, 0.0], 0.0).unwrap()).is_err());
        assert!(spec.apply_euclidean(&[1.0]).is_err());
    }

    #[test]
    fn symplectic_embeddings_are_symplectic() {
        let mut rng = seeded_rng(21);
        for (m, n) in [(1usize, 1usize), (1, 3), (2, 3), (3, 3)] {
            let b = random_symplectic_embedding(h(m), h(n), &mut rng).unwrap();
            let form = b.transpose() * j_matrix(n) * &b;
            let diff = (&form - j_matrix(m)).iter().fold(0.0f64, |mx, v| mx.max(v.abs()));
            assert!(diff <= 1e-15);
        }
        assert!(random_symplectic_embedding(h(3), h(2), &mut rng).is_err());
    }
}
