//! Horizontal curves: exact lifts, length, geodesic verification, and the
//! catalog of closed-form nonlinear geodesics.
//!
//! A piecewise-linear planar path (z_0, ..., z_K) has a unique horizontal
//! lift once t_0 is chosen, because the height of a lifted linear segment
//! changes by exactly
//!
//! ```text
//! t_{k+1} - t_k = 2 w(z_k, z_{k+1})
//! ```
//!
//! (the integral 2 w(gamma, gamma') is exact on segments since w(dz, dz) = 0).
//! [`HorizontalCurve`] stores sampled curves and maintains that recurrence
//! as an invariant. Length is measured by the projected norm of a
//! homogeneous norm N; a sampled curve is verified to be a geodesic by
//! comparing d_N(c(s), c(s')) with |s - s'| over many pairs.
//!
//! The catalog contains the two nonlinear infinite geodesics of the max
//! family (p = 1 and p = inf) and the sine embedding H^1 -> H^n, n >= 2.

use crate::error::{Error, Result};
use crate::group::{distance, multiply, omega, GroupDim, HeisPoint};
use crate::norms::{lpa_bound, projected_norm, NormDescriptor, PExponent};
use serde::Serialize;

/// A sampled horizontal curve: a strictly increasing parameter grid, planar
/// samples, and heights satisfying the lift recurrence
/// t_{k+1} - t_k = 2 w(z_k, z_{k+1}).
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalCurve {
    grid: Vec<f64>,
    /// Planar samples, row-major: sample k occupies [k*dim, (k+1)*dim).
    planar: Vec<f64>,
    heights: Vec<f64>,
    dim: usize,
}

impl HorizontalCurve {
    /// Lifts a planar polyline to the unique horizontal curve starting at
    /// height `t0`. The grid must be strictly increasing with at least two
    /// samples, and all rows must share one even dimension.
    pub fn lift(grid: &[f64], rows: &[Vec<f64>], t0: f64) -> Result<Self> {
        validate_grid(grid)?;
        if rows.len() != grid.len() {
            return Err(Error::DimensionMismatch { left: rows.len(), right: grid.len() });
        }
        let dim = rows[0].len();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::BadPlanarDim(dim));
        }
        if !t0.is_finite() {
            return Err(Error::NonFinite { context: "initial height" });
        }
        let mut planar = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: row.len(), right: dim });
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite { context: "planar samples" });
            }
            planar.extend_from_slice(row);
        }
        let mut heights = Vec::with_capacity(rows.len());
        heights.push(t0);
        for k in 0..rows.len() - 1 {
            let t = heights[k] + 2.0 * omega(&rows[k], &rows[k + 1])?;
            heights.push(t);
        }
        Ok(HorizontalCurve { grid: grid.to_vec(), planar, heights, dim })
    }

    /// Reassembles a curve from stored samples, verifying the lift
    /// recurrence (within a small band, so that serialized curves round-trip).
    pub fn from_parts(grid: Vec<f64>, rows: &[Vec<f64>], heights: Vec<f64>) -> Result<Self> {
        if heights.len() != grid.len() {
            return Err(Error::DimensionMismatch { left: heights.len(), right: grid.len() });
        }
        let lifted = Self::lift(&grid, rows, *heights.first().ok_or(Error::TooFewSamples { need: 2, got: 0 })?)?;
        for k in 0..heights.len() - 1 {
            let expected = 2.0 * omega(&rows[k], &rows[k + 1])?;
            let got = heights[k + 1] - heights[k];
            let scale = 1.0f64.max(heights[k].abs()).max(heights[k + 1].abs());
            let defect = (got - expected).abs();
            if defect > crate::tol::WITNESS_ZERO * scale {
                return Err(Error::NotHorizontal { segment: k, defect });
            }
        }
        Ok(HorizontalCurve { heights, ..lifted })
    }

    pub fn samples(&self) -> usize {
        self.grid.len()
    }

    /// Planar dimension 2n.
    pub fn planar_dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn planar_row(&self, k: usize) -> &[f64] {
        &self.planar[k * self.dim..(k + 1) * self.dim]
    }

    pub fn point(&self, k: usize) -> HeisPoint {
        HeisPoint::new(self.planar_row(k).to_vec(), self.heights[k])
            .expect("stored samples are validated")
    }

    /// The curve left-translated by g; horizontality is preserved exactly
    /// by left translations.
    pub fn left_translated(&self, g: &HeisPoint) -> Result<Self> {
        if g.z().len() != self.dim {
            return Err(Error::DimensionMismatch { left: g.z().len(), right: self.dim });
        }
        let mut planar = Vec::with_capacity(self.planar.len());
        let mut heights = Vec::with_capacity(self.heights.len());
        for k in 0..self.samples() {
            let p = multiply(g, &self.point(k))?;
            planar.extend_from_slice(p.z());
            heights.push(p.t());
        }
        Ok(HorizontalCurve { grid: self.grid.clone(), planar, heights, dim: self.dim })
    }

    /// The dilated curve delta_l(c(s / l)) sampled on the grid l * s: planar
    /// parts scale by l, heights by l^2, parameters by l. Geodesics stay
    /// geodesics under this map.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::BadDilation(lambda));
        }
        Ok(HorizontalCurve {
            grid: self.grid.iter().map(|s| lambda * s).collect(),
            planar: self.planar.iter().map(|c| lambda * c).collect(),
            heights: self.heights.iter().map(|t| lambda * lambda * t).collect(),
            dim: self.dim,
        })
    }

    /// The sub-curve over sample indices k0..=k1.
    pub fn subcurve(&self, k0: usize, k1: usize) -> Result<Self> {
        if k0 >= k1 || k1 >= self.samples() {
            return Err(Error::InvalidArgument(format!(
                "subcurve range ({k0}, {k1}) out of bounds for {} samples",
                self.samples()
            )));
        }
        Ok(HorizontalCurve {
            grid: self.grid[k0..=k1].to_vec(),
            planar: self.planar[k0 * self.dim..(k1 + 1) * self.dim].to_vec(),
            heights: self.heights[k0..=k1].to_vec(),
            dim: self.dim,
        })
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::TooFewSamples { need: 2, got: grid.len() });
    }
    if grid.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonFinite { context: "parameter grid" });
    }
    for k in 0..grid.len() - 1 {
        if grid[k + 1] <= grid[k] {
            return Err(Error::GridNotIncreasing(k + 1));
        }
    }
    Ok(())
}

/// Length of the sampled curve under the projected norm of N: the sum of
/// projected_norm(z_{k+1} - z_k). Additive over subdivision and covariant
/// under dilations.
pub fn length(curve: &HorizontalCurve, norm: &NormDescriptor) -> Result<f64> {
    let mut total = 0.0;
    let mut delta = vec![0.0; curve.planar_dim()];
    for k in 0..curve.samples() - 1 {
        let a = curve.planar_row(k);
        let b = curve.planar_row(k + 1);
        for i in 0..delta.len() {
            delta[i] = b[i] - a[i];
        }
        total += projected_norm(norm, &delta)?;
    }
    Ok(total)
}

/// Per-segment speeds |z_{k+1} - z_k| / (s_{k+1} - s_k) under the projected
/// norm.
pub fn speeds(curve: &HorizontalCurve, norm: &NormDescriptor) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(curve.samples() - 1);
    let mut delta = vec![0.0; curve.planar_dim()];
    for k in 0..curve.samples() - 1 {
        let a = curve.planar_row(k);
        let b = curve.planar_row(k + 1);
        for i in 0..delta.len() {
            delta[i] = b[i] - a[i];
        }
        out.push(projected_norm(norm, &delta)? / (curve.grid[k + 1] - curve.grid[k]));
    }
    Ok(out)
}

/// Reparametrizes the curve by arc length: the new grid is cumulative
/// projected-norm length starting at 0. Errors if any segment has zero
/// planar length (the new grid would not be strictly increasing).
pub fn reparametrize_arclength(
    curve: &HorizontalCurve,
    norm: &NormDescriptor,
) -> Result<HorizontalCurve> {
    let mut grid = Vec::with_capacity(curve.samples());
    grid.push(0.0);
    let mut delta = vec![0.0; curve.planar_dim()];
    for k in 0..curve.samples() - 1 {
        let a = curve.planar_row(k);
        let b = curve.planar_row(k + 1);
        for i in 0..delta.len() {
            delta[i] = b[i] - a[i];
        }
        let step = projected_norm(norm, &delta)?;
        if step <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "segment {k} has zero planar length; arc-length grid would stall"
            )));
        }
        grid.push(grid[k] + step);
    }
    let mut out = curve.clone();
    out.grid = grid;
    Ok(out)
}

/// Signed area enclosed by a closed planar polyline, summed over the n
/// coordinate planes (x_i, y_i) and oriented so that the horizontal lift of
/// a positively oriented loop gains height:
///
/// ```text
/// A = 1/2 sum_k sum_i (y_{k,i} x_{k+1,i} - x_{k,i} y_{k+1,i});
/// ```
///
/// the lift of any closed loop then satisfies delta t = 4 A. Computed from
/// coordinates directly (an independent route from the lift recurrence).
pub fn oriented_loop_area(rows: &[Vec<f64>]) -> Result<f64> {
    if rows.len() < 3 {
        return Err(Error::TooFewSamples { need: 3, got: rows.len() });
    }
    let dim = rows[0].len();
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::BadPlanarDim(dim));
    }
    let n = dim / 2;
    let first = &rows[0];
    let last = &rows[rows.len() - 1];
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let closure = first
        .iter()
        .zip(last.iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if closure > 1e-9 * scale.max(1.0) {
        return Err(Error::InvalidArgument(
            "polyline is not closed: first and last samples differ".into(),
        ));
    }
    let mut area = 0.0;
    for k in 0..rows.len() - 1 {
        let (zk, zk1) = (&rows[k], &rows[k + 1]);
        if zk1.len() != dim {
            return Err(Error::DimensionMismatch { left: zk1.len(), right: dim });
        }
        for i in 0..n {
            area += zk[n + i] * zk1[i] - zk[i] * zk1[n + i];
        }
    }
    Ok(0.5 * area)
}

/// Report of a geodesic verification run.
#[derive(Clone, Debug, Serialize)]
pub struct GeodesicReport {
    pub pairs_tested: u64,
    /// Worst | d_N(c(s), c(s')) - |s - s'| |.
    pub worst_defect: f64,
    pub is_geodesic: bool,
    /// The (s, s') realizing the worst defect.
    pub worst_pair: (f64, f64),
    pub tolerance: f64,
}

/// Verifies the geodesic property for a curve given by an exact evaluation
/// map on [s0, s1]: all pairs from a floor(sqrt(budget))-point uniform
/// subgrid (endpoints included) are tested, then the 10 worst pairs are
/// refined by testing against their midpoints.
pub fn verify_geodesic_map<F>(
    eval: F,
    s_range: (f64, f64),
    norm: &NormDescriptor,
    pair_budget: usize,
    tolerance: f64,
) -> Result<GeodesicReport>
where
    F: Fn(f64) -> HeisPoint,
{
    let (s0, s1) = s_range;
    if !(s0 < s1) || !s0.is_finite() || !s1.is_finite() {
        return Err(Error::InvalidArgument(format!("bad parameter range ({s0}, {s1})")));
    }
    let m = ((pair_budget as f64).sqrt().floor() as usize).max(2);
    let grid: Vec<f64> = (0..m)
        .map(|i| s0 + (s1 - s0) * (i as f64) / ((m - 1) as f64))
        .collect();
    let points: Vec<HeisPoint> = grid.iter().map(|&s| eval(s)).collect();

    let mut report = GeodesicReport {
        pairs_tested: 0,
        worst_defect: 0.0,
        is_geodesic: true,
        worst_pair: (s0, s1),
        tolerance,
    };
    // Keep the worst pairs for the refinement pass.
    let mut ranked: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let d = distance(norm, &points[i], &points[j])?;
            let defect = (d - (grid[j] - grid[i]).abs()).abs();
            report.pairs_tested += 1;
            ranked.push((defect, grid[i], grid[j]));
            if defect > report.worst_defect {
                report.worst_defect = defect;
                report.worst_pair = (grid[i], grid[j]);
            }
        }
    }
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    for &(_, si, sj) in ranked.iter().take(10) {
        let mid = 0.5 * (si + sj);
        let pm = eval(mid);
        for (sa, pa, sb, pb) in [(si, eval(si), mid, pm.clone()), (mid, pm, sj, eval(sj))] {
            let d = distance(norm, &pa, &pb)?;
            let defect = (d - (sb - sa).abs()).abs();
            report.pairs_tested += 1;
            if defect > report.worst_defect {
                report.worst_defect = defect;
                report.worst_pair = (sa, sb);
            }
        }
    }
    report.is_geodesic = report.worst_defect <= tolerance;
    Ok(report)
}

/// Verifies the geodesic property on the stored samples of a curve (which
/// are assumed to lie on the true curve): all pairs from a
/// floor(sqrt(budget))-point subgrid of the stored samples, then the 10
/// worst pairs refined against neighboring stored samples.
pub fn verify_geodesic(
    curve: &HorizontalCurve,
    norm: &NormDescriptor,
    pair_budget: usize,
    tolerance: f64,
) -> Result<GeodesicReport> {
    let k = curve.samples();
    let m = ((pair_budget as f64).sqrt().floor() as usize).clamp(2, k);
    let idx: Vec<usize> = (0..m)
        .map(|i| ((i as f64) * ((k - 1) as f64) / ((m - 1) as f64)).round() as usize)
        .collect();

    let mut report = GeodesicReport {
        pairs_tested: 0,
        worst_defect: 0.0,
        is_geodesic: true,
        worst_pair: (curve.grid[0], curve.grid[k - 1]),
        tolerance,
    };
    let mut ranked: Vec<(f64, usize, usize)> = Vec::new();
    let check = |i: usize, j: usize, report: &mut GeodesicReport| -> Result<f64> {
        let d = distance(norm, &curve.point(i), &curve.point(j))?;
        let defect = (d - (curve.grid[j] - curve.grid[i]).abs()).abs();
        report.pairs_tested += 1;
        if defect > report.worst_defect {
            report.worst_defect = defect;
            report.worst_pair = (curve.grid[i], curve.grid[j]);
        }
        Ok(defect)
    };
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let defect = check(idx[a], idx[b], &mut report)?;
            ranked.push((defect, idx[a], idx[b]));
        }
    }
    ranked.sort_by(|x, y| y.0.total_cmp(&x.0));
    for &(_, i, j) in ranked.iter().take(10) {
        for (a, b) in [
            (i.saturating_sub(1), j),
            ((i + 1).min(k - 1), j),
            (i, j.saturating_sub(1)),
            (i, (j + 1).min(k - 1)),
        ] {
            if a < b {
                check(a, b, &mut report)?;
            }
        }
    }
    report.is_geodesic = report.worst_defect <= tolerance;
    Ok(report)
}

/// Which closed-form nonlinear geodesic of the max family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogKind {
    P1,
    PInf,
}

/// A closed-form infinite geodesic for N_{p,a} with p = 1 or p = inf,
/// evaluated analytically at any parameter. Both curves are unit-speed:
/// d(c(s), c(s')) = |s - s'| for all s, s'; neither is contained in a line,
/// which is what disproves the geodesic linearity property at these p.
#[derive(Clone, Debug)]
pub struct CatalogGeodesic {
    kind: CatalogKind,
    n: GroupDim,
    a: f64,
}

impl CatalogGeodesic {
    /// Geodesic for N_{1,a}; requires 0 < a <= 1.
    ///
    /// ```text
    /// z(s) = ( (a s + sin a s) / 2a ) e_1 + ( (a s - sin a s) / 2a ) e_{n+1}
    /// t(s) = (2 cos a s + a s sin a s) / a^2
    /// ```
    pub fn p1(n: GroupDim, a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "p = 1 catalog geodesic requires 0 < a <= 1, got a = {a}"
            )));
        }
        Ok(CatalogGeodesic { kind: CatalogKind::P1, n, a })
    }

    /// Geodesic for N_{inf,a}; requires 0 < a <= (2n)^{-1/2} so that
    /// N_{inf,a} is actually a norm on H^n.
    ///
    /// ```text
    /// z(s) = s e_1 + ( sin(a s) / 2a ) e_{n+1}
    /// t(s) = -(2 cos a s + a s sin a s) / a^2
    /// ```
    pub fn p_inf(n: GroupDim, a: f64) -> Result<Self> {
        let bound = lpa_bound(n, PExponent::Infinity);
        if !(a > 0.0 && a <= bound) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "p = inf catalog geodesic requires 0 < a <= (2n)^(-1/2) = {bound}, got a = {a}"
            )));
        }
        Ok(CatalogGeodesic { kind: CatalogKind::PInf, n, a })
    }

    pub fn kind(&self) -> CatalogKind {
        self.kind
    }

    /// The norm for which this curve is a geodesic.
    pub fn norm(&self) -> NormDescriptor {
        match self.kind {
            CatalogKind::P1 => NormDescriptor::lpa(PExponent::Finite(1.0), self.a),
            CatalogKind::PInf => NormDescriptor::lpa(PExponent::Infinity, self.a),
        }
    }

    /// Analytic evaluation at parameter s.
    pub fn eval(&self, s: f64) -> HeisPoint {
        let a = self.a;
        let nn = self.n.get();
        let mut z = vec![0.0; self.n.planar_dim()];
        let (t, z0, zn) = match self.kind {
            CatalogKind::P1 => {
                let (sin, cos) = (a * s).sin_cos();
                (
                    (2.0 * cos + a * s * sin) / (a * a),
                    (a * s + sin) / (2.0 * a),
                    (a * s - sin) / (2.0 * a),
                )
            }
            CatalogKind::PInf => {
                let (sin, cos) = (a * s).sin_cos();
                (-(2.0 * cos + a * s * sin) / (a * a), s, sin / (2.0 * a))
            }
        };
        z[0] = z0;
        z[nn] = zn;
        HeisPoint::new(z, t).expect("catalog evaluation is finite")
    }

    /// Samples the curve onto a uniform grid and lifts the resulting
    /// polyline (heights then satisfy the piecewise-linear recurrence
    /// exactly and converge to the analytic heights as the grid refines).
    pub fn sample(&self, s0: f64, s1: f64, segments: usize) -> Result<HorizontalCurve> {
        if segments == 0 {
            return Err(Error::TooFewSamples { need: 1, got: 0 });
        }
        if !(s0 < s1) {
            return Err(Error::InvalidArgument(format!("bad parameter range ({s0}, {s1})")));
        }
        let grid: Vec<f64> = (0..=segments)
            .map(|i| s0 + (s1 - s0) * (i as f64) / (segments as f64))
            .collect();
        let rows: Vec<Vec<f64>> = grid.iter().map(|&s| self.eval(s).z().to_vec()).collect();
        HorizontalCurve::lift(&grid, &rows, self.eval(s0).t())
    }

    /// Geodesic verification of the analytic curve over [s0, s1].
    pub fn verify(&self, s0: f64, s1: f64, pair_budget: usize, tolerance: f64) -> Result<GeodesicReport> {
        verify_geodesic_map(|s| self.eval(s), (s0, s1), &self.norm(), pair_budget, tolerance)
    }
}

/// The sine embedding H^1 -> H^n, n >= 2:
///
/// ```text
/// (x e_1 + y e_2, t) |-> (x e_1 + sin(x) e_2 + y e_{n+1}, t)
/// ```
///
/// An isometric embedding (H^1, N_{inf,a}) -> (H^n, N_{inf,a}) that is not
/// affine. It does not exist for n = 1: every isometric self-embedding of a
/// group whose norm has the geodesic linearity property is affine, and for
/// n = 1 the extra coordinate needed by the sine term is simply not there.
#[derive(Clone, Debug)]
pub struct SineEmbedding {
    n: GroupDim,
    a: f64,
}

impl SineEmbedding {
    pub fn new(n: GroupDim, a: f64) -> Result<Self> {
        if n.get() < 2 {
            return Err(Error::Unsupported(
                "the sine embedding needs a second horizontal x-direction; no such embedding exists into H^1".into(),
            ));
        }
        let bound = lpa_bound(n, PExponent::Infinity);
        if !(a > 0.0 && a <= bound) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "sine embedding requires 0 < a <= (2n)^(-1/2) = {bound} (N_inf,a must \
                 be a norm on the target H^n), got a = {a}"
            )));
        }
        Ok(SineEmbedding { n, a })
    }

    /// Norm on the source H^1.
    pub fn source_norm(&self) -> NormDescriptor {
        NormDescriptor::lpa(PExponent::Infinity, self.a)
    }

    /// Norm on the target H^n.
    pub fn target_norm(&self) -> NormDescriptor {
        NormDescriptor::lpa(PExponent::Infinity, self.a)
    }

    pub fn target_dim(&self) -> GroupDim {
        self.n
    }

    pub fn eval(&self, p: &HeisPoint) -> Result<HeisPoint> {
        if p.n() != 1 {
            return Err(Error::DimensionMismatch { left: p.n(), right: 1 });
        }
        let nn = self.n.get();
        let mut z = vec![0.0; self.n.planar_dim()];
        z[0] = p.z()[0];
        z[1] = p.z()[0].sin();
        z[nn] = p.z()[1];
        HeisPoint::new(z, p.t())
    }
}
