//! Isoperimetric geometry of sub-Finsler H^1.
//!
//! Fix a norm ||.|| on the plane. Horizontal lifts gain height at four times
//! the rate the planar projection sweeps area, so the sub-Finsler distance
//! from the origin to a vertical point (0, t) is the least ||.||-length of a
//! closed planar loop enclosing area |t|/4. The optimal loop is the
//! isoperimetrix: the boundary of the polar body of the unit ball, rotated
//! by pi/2 (rotation matrix (0, -1; 1, 0)). With L_I its ||.||-length and
//! A_I its enclosed Euclidean area, homogeneity gives
//!
//! ```text
//! d((0, 0), (0, t)) = L_I sqrt(|t| / (4 A_I)).
//! ```
//!
//! Everything here is discretized: bodies are polygons with vertices on the
//! exact curve, so lengths and areas carry O(1/M^2) error at resolution M.
//! This module is planar (n = 1) by construction.

use crate::curves::HorizontalCurve;
use crate::error::{Error, Result};
use crate::group::HeisPoint;
use crate::norms::{lp_norm, PExponent};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A norm on R^2: either an l^p norm or the gauge of a convex polygon whose
/// vertices wind strictly counterclockwise around the origin (which forces
/// the origin strictly inside).
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarNormDescriptor {
    Lp { p: PExponent },
    Polygonal { vertices: Vec<[f64; 2]> },
}

impl PlanarNormDescriptor {
    pub fn lp(p: PExponent) -> Self {
        PlanarNormDescriptor::Lp { p }
    }

    pub fn polygonal(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let desc = PlanarNormDescriptor::Polygonal { vertices };
        desc.validate()?;
        Ok(desc)
    }

    /// Checks the polygon invariants: at least 3 finite vertices, each
    /// consecutive pair strictly counterclockwise as seen from the origin,
    /// and convexity up to a small tolerance (collinear runs are allowed so
    /// that sampled spheres of polyhedral norms validate).
    pub fn validate(&self) -> Result<()> {
        match self {
            PlanarNormDescriptor::Lp { .. } => Ok(()),
            PlanarNormDescriptor::Polygonal { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::TooFewSamples { need: 3, got: vertices.len() });
                }
                if vertices.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
                    return Err(Error::NonFinite { context: "polygon vertices" });
                }
                let scale = vertices
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v[0].abs()).max(v[1].abs()));
                let m = vertices.len();
                for i in 0..m {
                    let v = vertices[i];
                    let w = vertices[(i + 1) % m];
                    if cross(v, w) <= 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "polygon vertices must wind strictly counterclockwise around the origin (violated between vertices {i} and {})",
                            (i + 1) % m
                        )));
                    }
                    let u = vertices[(i + 2) % m];
                    let e1 = [w[0] - v[0], w[1] - v[1]];
                    let e2 = [u[0] - w[0], u[1] - w[1]];
                    if cross(e1, e2) < -1e-9 * scale * scale {
                        return Err(Error::InvalidArgument(format!(
                            "polygon is not convex at vertex {}",
                            (i + 1) % m
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for PlanarNormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarNormDescriptor::Lp { p } => write!(f, "lp:p={p}"),
            PlanarNormDescriptor::Polygonal { vertices } => {
                write!(f, "poly:{} vertices", vertices.len())
            }
        }
    }
}

impl FromStr for PlanarNormDescriptor {
    type Err = Error;

    /// CLI syntax: `lp:p=3` or `poly:[[1,0],[0,1],[-1,0],[0,-1]]`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("lp:") {
            match rest.split_once('=') {
                Some(("p", v)) => return Ok(PlanarNormDescriptor::Lp { p: v.parse()? }),
                _ => return Err(Error::Parse(format!("bad planar lp descriptor `{s}`"))),
            }
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            let vertices: Vec<[f64; 2]> = serde_json::from_str(rest)
                .map_err(|e| Error::Parse(format!("bad polygon vertex list: {e}")))?;
            return PlanarNormDescriptor::polygonal(vertices);
        }
        Err(Error::Parse(format!(
            "unknown planar norm descriptor `{s}` (expected lp:p=.. | poly:[[x,y],..])"
        )))
    }
}

#[derive(Serialize, Deserialize)]
struct RawPlanar {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<PExponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[f64; 2]>>,
}

impl Serialize for PlanarNormDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            PlanarNormDescriptor::Lp { p } => {
                RawPlanar { kind: "lp".into(), p: Some(*p), vertices: None }
            }
            PlanarNormDescriptor::Polygonal { vertices } => {
                RawPlanar { kind: "polygonal".into(), p: None, vertices: Some(vertices.clone()) }
            }
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarNormDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = RawPlanar::deserialize(d)?;
        match raw.kind.as_str() {
            "lp" => Ok(PlanarNormDescriptor::Lp {
                p: raw.p.ok_or_else(|| DeError::missing_field("p"))?,
            }),
            "polygonal" => {
                let vertices = raw.vertices.ok_or_else(|| DeError::missing_field("vertices"))?;
                PlanarNormDescriptor::polygonal(vertices).map_err(DeError::custom)
            }
            other => Err(DeError::custom(format!("unknown planar norm kind `{other}`"))),
        }
    }
}

#[inline]
fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Value of the planar norm at (x, y). For polygons this is the Minkowski
/// gauge max_i <w, n_i> / c_i over the edge half-planes <., n_i> <= c_i.
pub fn planar_norm_value(desc: &PlanarNormDescriptor, x: f64, y: f64) -> Result<f64> {
    match desc {
        PlanarNormDescriptor::Lp { p } => Ok(lp_norm(&[x, y], *p)),
        PlanarNormDescriptor::Polygonal { vertices } => {
            let m = vertices.len();
            let mut gauge = 0.0f64;
            for i in 0..m {
                let v = vertices[i];
                let w = vertices[(i + 1) % m];
                // Outward normal of the ccw edge v -> w is (ey, -ex); the
                // supporting value c = <v, n> equals cross(v, w).
                let c = cross(v, w);
                if c <= 0.0 {
                    return Err(Error::InvalidArgument(
                        "polygon does not wind strictly counterclockwise around the origin".into(),
                    ));
                }
                let n = [w[1] - v[1], -(w[0] - v[0])];
                gauge = gauge.max((x * n[0] + y * n[1]) / c);
            }
            Ok(gauge)
        }
    }
}

/// Dual norm ||w||_* = max { <w, z> : ||z|| <= 1 }: the conjugate l^q norm
/// in closed form for l^p, a maximum over vertices for polygons.
pub fn dual_norm_value(desc: &PlanarNormDescriptor, x: f64, y: f64) -> Result<f64> {
    match desc {
        PlanarNormDescriptor::Lp { p } => Ok(lp_norm(&[x, y], p.conjugate())),
        PlanarNormDescriptor::Polygonal { vertices } => Ok(vertices
            .iter()
            .fold(0.0f64, |m, v| m.max(x * v[0] + y * v[1]))),
    }
}

/// Vertices of the dual unit sphere { ||w||_* = 1 }, sampled along M
/// uniformly spaced directions, counterclockwise. M >= 8.
pub fn dual_sphere(desc: &PlanarNormDescriptor, resolution: usize) -> Result<Vec<[f64; 2]>> {
    if resolution < 8 {
        return Err(Error::TooFewSamples { need: 8, got: resolution });
    }
    desc.validate()?;
    let mut vertices = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (resolution as f64);
        let (sin, cos) = theta.sin_cos();
        let d = dual_norm_value(desc, cos, sin)?;
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidArgument(
                "degenerate planar norm: dual norm vanishes on a direction".into(),
            ));
        }
        vertices.push([cos / d, sin / d]);
    }
    Ok(vertices)
}

/// Discretized isoperimetrix of a planar norm.
#[derive(Clone, Debug, Serialize)]
pub struct IsoperimetrixModel {
    /// Polygon vertices, ordered so that one full traversal of the loop
    /// lifts to a horizontal curve that gains height.
    pub vertices: Vec<[f64; 2]>,
    /// Perimeter measured in the planar norm itself.
    pub length: f64,
    /// Enclosed Euclidean area (shoelace).
    pub area: f64,
    /// Number of vertices M.
    pub resolution: usize,
}

/// Builds the isoperimetrix: the dual sphere rotated by pi/2. The vertex
/// order is chosen (and pinned by tests) so that the horizontal lift of a
/// full traversal ends above its start.
pub fn build_isoperimetrix(
    desc: &PlanarNormDescriptor,
    resolution: usize,
) -> Result<IsoperimetrixModel> {
    let dual = dual_sphere(desc, resolution)?;
    // (x, y) -> (-y, x), then reverse: with w(e_1, e_2) = -1, lifts gain
    // height along loops that are clockwise in standard axes.
    let mut vertices: Vec<[f64; 2]> = dual.into_iter().map(|[x, y]| [-y, x]).collect();
    vertices.reverse();
    let m = vertices.len();
    let mut length = 0.0;
    let mut shoelace = 0.0;
    for i in 0..m {
        let v = vertices[i];
        let w = vertices[(i + 1) % m];
        length += planar_norm_value(desc, w[0] - v[0], w[1] - v[1])?;
        shoelace += cross(v, w);
    }
    Ok(IsoperimetrixModel { vertices, length, area: 0.5 * shoelace.abs(), resolution })
}

/// Sub-Finsler distance from the origin to the vertical point (0, t),
/// computed from the isoperimetrix at the given resolution:
/// L_I sqrt(|t| / (4 A_I)).
pub fn vertical_distance(desc: &PlanarNormDescriptor, t: f64, resolution: usize) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite { context: "vertical coordinate" });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let model = build_isoperimetrix(desc, resolution)?;
    Ok(model.length * (t.abs() / (4.0 * model.area)).sqrt())
}

/// Horizontal lift of an arc of the isoperimetrix.
///
/// The arc from fraction `frac0` to `frac1` of the full loop (0 <= frac0 <
/// frac1 <= 1, measured in vertex count) is translated so it starts at the
/// planar origin, dilated by `scale`, lifted with t_0 = 0, and parametrized
/// by its planar-norm arc length. An optional left translation moves the
/// lifted curve anywhere in the group. A degenerate arc is an error.
pub fn lift_isoperimetric_path(
    desc: &PlanarNormDescriptor,
    resolution: usize,
    frac0: f64,
    frac1: f64,
    scale: f64,
    translation: Option<&HeisPoint>,
) -> Result<HorizontalCurve> {
    if !(0.0..=1.0).contains(&frac0) || !(0.0..=1.0).contains(&frac1) || !(frac0 < frac1) {
        return Err(Error::InvalidArgument(format!(
            "arc fractions must satisfy 0 <= frac0 < frac1 <= 1, got ({frac0}, {frac1})"
        )));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::BadDilation(scale));
    }
    let model = build_isoperimetrix(desc, resolution)?;
    let m = model.resolution;
    let i0 = (frac0 * m as f64).round() as usize;
    let i1 = (frac1 * m as f64).round() as usize;
    if i1 <= i0 {
        return Err(Error::InvalidArgument(format!(
            "arc ({frac0}, {frac1}) is degenerate at resolution {m}"
        )));
    }
    let start = model.vertices[i0 % m];
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(i1 - i0 + 1);
    let mut grid = Vec::with_capacity(i1 - i0 + 1);
    let mut s = 0.0;
    for k in i0..=i1 {
        let v = model.vertices[k % m];
        let row = vec![scale * (v[0] - start[0]), scale * (v[1] - start[1])];
        if let Some(prev) = rows.last() {
            s += planar_norm_value(desc, row[0] - prev[0], row[1] - prev[1])?;
        }
        grid.push(s);
        rows.push(row);
    }
    let curve = HorizontalCurve::lift(&grid, &rows, 0.0)?;
    match translation {
        Some(g) => curve.left_translated(g),
        None => Ok(curve),
    }
}

/// Distance from a point to a closed polygon (minimum over edges).
fn point_polygon_distance(p: [f64; 2], polygon: &[[f64; 2]]) -> f64 {
    let m = polygon.len();
    let mut best = f64::INFINITY;
    for i in 0..m {
        let a = polygon[i];
        let b = polygon[(i + 1) % m];
        best = best.min(point_segment_distance(p, a, b));
    }
    best
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = if len2 > 0.0 { ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let d = [ap[0] - s * ab[0], ap[1] - s * ab[1]];
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

/// Symmetric Hausdorff distance between two closed polygons.
pub fn hausdorff_distance(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let d_ab = a.iter().fold(0.0f64, |m, &p| m.max(point_polygon_distance(p, b)));
    let d_ba = b.iter().fold(0.0f64, |m, &p| m.max(point_polygon_distance(p, a)));
    d_ab.max(d_ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::oriented_loop_area;
    use crate::group::multiply;
    use crate::tol;

    fn lp(p: f64) -> PlanarNormDescriptor {
        PlanarNormDescriptor::lp(PExponent::new(p).unwrap())
    }

    const SQRT_PI: f64 = 1.7724538509055159;

    #[test]
    fn euclidean_dual_sphere_is_the_unit_circle() {
        let sphere = dual_sphere(&lp(2.0), 64).unwrap();
        for v in sphere {
            assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn l1_dual_sphere_lies_on_the_unit_square() {
        // The dual of l^1 is l^inf, whose sphere is the square [-1,1]^2;
        // with 4 | M the corners (+-1, +-1) are hit exactly.
        let sphere = dual_sphere(&lp(1.0), 16).unwrap();
        for v in &sphere {
            assert!((v[0].abs().max(v[1].abs()) - 1.0).abs() < 1e-12);
        }
        assert!(sphere.iter().any(|v| (v[0] - 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12));
    }

    #[test]
    fn dual_norm_matches_support_maximization() {
        // Brute-force support function over a dense sampling of the primal
        // sphere, an independent route to the same value.
        for desc in [lp(1.0), lp(1.5), lp(3.0), lp(f64::INFINITY)] {
            for w in [[1.0, 0.0], [0.7, -0.3], [-2.0, 5.0]] {
                let exact = dual_norm_value(&desc, w[0], w[1]).unwrap();
                let mut brute = 0.0f64;
                let k = 8192;
                for i in 0..k {
                    let theta = 2.0 * std::f64::consts::PI * (i as f64) / (k as f64);
                    let (sin, cos) = theta.sin_cos();
                    let g = planar_norm_value(&desc, cos, sin).unwrap();
                    brute = brute.max((w[0] * cos + w[1] * sin) / g);
                }
                assert!(brute <= exact * (1.0 + 1e-12));
                assert!(exact - brute < 1e-5 * exact.max(1.0));
            }
        }
    }

    #[test]
    fn euclidean_isoperimetrix_numbers() {
        let model = build_isoperimetrix(&lp(2.0), 4096).unwrap();
        assert!((model.length - 2.0 * std::f64::consts::PI).abs() < 1e-4);
        assert!((model.area - std::f64::consts::PI).abs() < 1e-4);
        let v = vertical_distance(&lp(2.0), 1.0, 4096).unwrap();
        assert!((v - SQRT_PI).abs() < 1e-4);
        // Scaling in t: d(0, (0, t)) = sqrt(pi |t|).
        let v9 = vertical_distance(&lp(2.0), -9.0, 4096).unwrap();
        assert!((v9 - 3.0 * SQRT_PI).abs() < 3e-4);
    }

    #[test]
    fn l1_isoperimetrix_is_the_square() {
        // Dual of l^1 is the square [-1,1]^2, invariant under the pi/2
        // rotation; its l^1-perimeter is 8 and its area 4, hence
        // d(0, (0,t)) = 8 sqrt(|t|/16) = 2 sqrt(|t|).
        let model = build_isoperimetrix(&lp(1.0), 4096).unwrap();
        assert!((model.length - 8.0).abs() < 1e-9);
        assert!((model.area - 4.0).abs() < 1e-9);
        let v = vertical_distance(&lp(1.0), 1.0, 4096).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn full_loop_lift_gains_height_and_matches_area_law() {
        for desc in [lp(1.0), lp(2.0), lp(3.0)] {
            let curve = lift_isoperimetric_path(&desc, 256, 0.0, 1.0, 1.0, None).unwrap();
            let k = curve.samples() - 1;
            let dt = curve.heights()[k] - curve.heights()[0];
            // Pinned orientation: the full loop gains height.
            assert!(dt > 0.0, "{desc}: full lift lost height");
            let rows: Vec<Vec<f64>> = (0..curve.samples()).map(|i| curve.planar_row(i).to_vec()).collect();
            let area = oriented_loop_area(&rows).unwrap();
            assert!((dt - 4.0 * area).abs() < tol::EXACT);
            // Consistency of the vertical-distance formula with the lift:
            // the loop has length L and ends at (0, 4 A), so vdist(4 A) = L.
            let model = build_isoperimetrix(&desc, 256).unwrap();
            let v = vertical_distance(&desc, dt, 256).unwrap();
            assert!((v - model.length).abs() < 1e-9 * model.length);
        }
    }

    #[test]
    fn lifted_arc_is_translated_and_scaled() {
        let g = HeisPoint::from_xyt(0.5, -1.0, 2.0).unwrap();
        let plain = lift_isoperimetric_path(&lp(2.0), 64, 0.25, 0.75, 1.0, None).unwrap();
        let moved = lift_isoperimetric_path(&lp(2.0), 64, 0.25, 0.75, 1.0, Some(&g)).unwrap();
        assert_eq!(plain.planar_row(0), [0.0, 0.0]);
        assert_eq!(plain.heights()[0], 0.0);
        let expect = multiply(&g, &plain.point(0)).unwrap();
        assert!(crate::group::max_coord_diff(&moved.point(0), &expect).unwrap() < 1e-12);
        let k = plain.samples() - 1;
        let expect_end = multiply(&g, &plain.point(k)).unwrap();
        assert!(crate::group::max_coord_diff(&moved.point(k), &expect_end).unwrap() < 1e-12);

        // Dilation by lambda scales heights by lambda^2.
        let scaled = lift_isoperimetric_path(&lp(2.0), 64, 0.25, 0.75, 2.0, None).unwrap();
        assert!((scaled.heights()[k] - 4.0 * plain.heights()[k]).abs() < 1e-12);
        // And the grid is planar-norm arc length: monotone from 0.
        assert_eq!(plain.grid()[0], 0.0);
        assert!(plain.grid().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn degenerate_arcs_and_bad_input_error() {
        assert!(lift_isoperimetric_path(&lp(2.0), 64, 0.5, 0.5, 1.0, None).is_err());
        assert!(lift_isoperimetric_path(&lp(2.0), 64, 0.7, 0.2, 1.0, None).is_err());
        assert!(lift_isoperimetric_path(&lp(2.0), 64, 0.0, 1.0, 0.0, None).is_err());
        assert!(dual_sphere(&lp(2.0), 7).is_err());
    }

    #[test]
    fn bipolar_round_trip_at_moderate_resolution() {
        // Dualizing the sampled dual sphere returns the primal sphere up to
        // O(1/M^2) discretization error.
        for desc in [lp(1.5), lp(3.0)] {
            let m = 512;
            let dual = dual_sphere(&desc, m).unwrap();
            let polar = PlanarNormDescriptor::polygonal(dual).unwrap();
            let back = dual_sphere(&polar, m).unwrap();
            let mut primal = Vec::with_capacity(m);
            for i in 0..m {
                let theta = 2.0 * std::f64::consts::PI * (i as f64) / (m as f64);
                let (sin, cos) = theta.sin_cos();
                let g = planar_norm_value(&desc, cos, sin).unwrap();
                primal.push([cos / g, sin / g]);
            }
            let d = hausdorff_distance(&back, &primal);
            assert!(d < 1e-3, "{desc}: bipolar Hausdorff {d}");
        }
    }

    #[test]
    fn polygonal_gauge_oracles() {
        // The gauge of the square [-1,1]^2 is l^inf, the gauge of the
        // diamond is l^1.
        let square = PlanarNormDescriptor::polygonal(vec![
            [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0],
        ])
        .unwrap();
        let diamond = PlanarNormDescriptor::polygonal(vec![
            [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0],
        ])
        .unwrap();
        let mut rng = crate::sampling::seeded_rng(2);
        for _ in 0..200 {
            let v = crate::sampling::sample_vec(&mut rng, 2, 5.0);
            let linf = lp_norm(&v, PExponent::Infinity);
            let l1 = lp_norm(&v, PExponent::new(1.0).unwrap());
            assert!((planar_norm_value(&square, v[0], v[1]).unwrap() - linf).abs() <= 1e-12 * linf.max(1.0));
            assert!((planar_norm_value(&diamond, v[0], v[1]).unwrap() - l1).abs() <= 1e-12 * l1.max(1.0));
        }
    }

    #[test]
    fn polygon_validation_rejects_bad_input() {
        // Clockwise winding.
        assert!(PlanarNormDescriptor::polygonal(vec![
            [1.0, 0.0], [0.0, -1.0], [-1.0, 0.0], [0.0, 1.0],
        ])
        .is_err());
        // Origin outside.
        assert!(PlanarNormDescriptor::polygonal(vec![
            [1.0, 1.0], [2.0, 1.0], [2.0, 2.0], [1.0, 2.0],
        ])
        .is_err());
        // Non-convex.
        assert!(PlanarNormDescriptor::polygonal(vec![
            [2.0, 0.0], [0.1, 0.1], [0.0, 2.0], [-2.0, 0.0], [0.0, -2.0],
        ])
        .is_err());
        // Too few vertices.
        assert!(PlanarNormDescriptor::polygonal(vec![[1.0, 0.0], [-1.0, 0.0]]).is_err());
        // Collinear runs are fine: a square with edge midpoints.
        assert!(PlanarNormDescriptor::polygonal(vec![
            [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [-1.0, 1.0],
            [-1.0, 0.0], [-1.0, -1.0], [0.0, -1.0], [1.0, -1.0],
        ])
        .is_ok());
    }

    #[test]
    fn planar_descriptor_serialization() {
        let d = lp(3.0);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"kind":"lp","p":3.0}"#);
        assert_eq!(serde_json::from_str::<PlanarNormDescriptor>(&json).unwrap(), d);
        let poly = PlanarNormDescriptor::polygonal(vec![
            [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0],
        ])
        .unwrap();
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(serde_json::from_str::<PlanarNormDescriptor>(&json).unwrap(), poly);
        assert_eq!("lp:p=inf".parse::<PlanarNormDescriptor>().unwrap(), lp(f64::INFINITY));
        assert_eq!(
            "poly:[[1,0],[0,1],[-1,0],[0,-1]]".parse::<PlanarNormDescriptor>().unwrap(),
            PlanarNormDescriptor::Polygonal {
                vertices: vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
            }
        );
    }

    #[test]
    fn symmetric_polygon_model_is_rotation_invariant_as_a_set() {
        // Central symmetry of the ball makes the isoperimetrix invariant
        // under rotation by pi (as a vertex set).
        let model = build_isoperimetrix(&lp(1.5), 64).unwrap();
        for v in &model.vertices {
            let antipode = [-v[0], -v[1]];
            let closest = model
                .vertices
                .iter()
                .fold(f64::INFINITY, |m, w| m.min((w[0] - antipode[0]).hypot(w[1] - antipode[1])));
            assert!(closest < 1e-12);
        }
    }
}
