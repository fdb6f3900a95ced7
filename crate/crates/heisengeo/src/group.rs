//! Heisenberg group arithmetic.
//!
//! A point of the n-th Heisenberg group is a pair (z, t) with z in R^{2n}
//! and t in R, multiplied by
//!
//! ```text
//! (z, t) * (z', t') = (z + z', t + t' + 2 w(z, z'))
//! ```
//!
//! where w is the standard symplectic form. Splitting z = (x, y) with
//! x, y in R^n, the form evaluates as
//!
//! ```text
//! w(z, z') = y . x' - x . y'
//! ```
//!
//! which pins the sign convention: w(e_1, e_{n+1}) = -1. The identity is
//! (0, 0), the inverse of (z, t) is (-z, -t), and the dilations
//! delta_l(z, t) = (l z, l^2 t) are group automorphisms. All values here are
//! immutable; every operation returns a fresh point.

use crate::error::{Error, Result};
use crate::norms::{eval_norm, NormDescriptor};
use serde::{Deserialize, Serialize};

/// Group dimension n >= 1; the planar layer is R^{2n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroupDim(usize);

impl GroupDim {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadGroupDim(n));
        }
        Ok(GroupDim(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Dimension 2n of the planar layer.
    pub fn planar_dim(self) -> usize {
        2 * self.0
    }
}

impl TryFrom<usize> for GroupDim {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        GroupDim::new(n)
    }
}

impl From<GroupDim> for usize {
    fn from(d: GroupDim) -> usize {
        d.0
    }
}

impl std::fmt::Display for GroupDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawHeisPoint {
    z: Vec<f64>,
    t: f64,
}

/// A point (z, t) of a Heisenberg group. Construction validates that the
/// planar part has even positive length and every coordinate is finite, so
/// a `HeisPoint` can always be fed to the group operations without checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHeisPoint", into = "RawHeisPoint")]
pub struct HeisPoint {
    z: Vec<f64>,
    t: f64,
}

impl TryFrom<RawHeisPoint> for HeisPoint {
    type Error = Error;
    fn try_from(raw: RawHeisPoint) -> Result<Self> {
        HeisPoint::new(raw.z, raw.t)
    }
}

impl From<HeisPoint> for RawHeisPoint {
    fn from(p: HeisPoint) -> Self {
        RawHeisPoint { z: p.z, t: p.t }
    }
}

impl HeisPoint {
    pub fn new(z: Vec<f64>, t: f64) -> Result<Self> {
        if z.is_empty() || z.len() % 2 != 0 {
            return Err(Error::BadPlanarDim(z.len()));
        }
        if !t.is_finite() || z.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite { context: "point coordinates" });
        }
        Ok(HeisPoint { z, t })
    }

    /// The identity (0, 0) of H^n.
    pub fn origin(n: GroupDim) -> Self {
        HeisPoint { z: vec![0.0; n.planar_dim()], t: 0.0 }
    }

    /// Convenience constructor for H^1 points ((x, y), t).
    pub fn from_xyt(x: f64, y: f64, t: f64) -> Result<Self> {
        HeisPoint::new(vec![x, y], t)
    }

    /// The i-th horizontal unit point (e_i, 0), 0-based, i < 2n.
    pub fn horizontal_unit(n: GroupDim, i: usize) -> Result<Self> {
        if i >= n.planar_dim() {
            return Err(Error::DimensionMismatch { left: i, right: n.planar_dim() });
        }
        let mut z = vec![0.0; n.planar_dim()];
        z[i] = 1.0;
        Ok(HeisPoint { z, t: 0.0 })
    }

    /// The vertical point (0, t).
    pub fn vertical(n: GroupDim, t: f64) -> Result<Self> {
        HeisPoint::new(vec![0.0; n.planar_dim()], t)
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Group dimension n recovered from the planar length.
    pub fn n(&self) -> usize {
        self.z.len() / 2
    }

    pub fn dim(&self) -> GroupDim {
        GroupDim(self.n())
    }

    /// First half x of the split z = (x, y).
    pub fn x(&self) -> &[f64] {
        &self.z[..self.n()]
    }

    /// Second half y of the split z = (x, y).
    pub fn y(&self) -> &[f64] {
        &self.z[self.n()..]
    }

    pub fn is_origin(&self) -> bool {
        self.t == 0.0 && self.z.iter().all(|&c| c == 0.0)
    }
}

/// Symplectic form on the planar layer, w(z, z') = y . x' - x . y'.
///
/// This is the split form of `<z, J z'>`; the matrix J is never
/// materialized. Slices must have the same even length.
pub fn omega(z: &[f64], zp: &[f64]) -> Result<f64> {
    if z.len() != zp.len() {
        return Err(Error::DimensionMismatch { left: z.len(), right: zp.len() });
    }
    if z.is_empty() || z.len() % 2 != 0 {
        return Err(Error::BadPlanarDim(z.len()));
    }
    Ok(omega_unchecked(z, zp))
}

/// `omega` without dimension checks, for hot loops that have already
/// validated their inputs.
#[inline]
pub(crate) fn omega_unchecked(z: &[f64], zp: &[f64]) -> f64 {
    let n = z.len() / 2;
    let mut acc = 0.0;
    for i in 0..n {
        acc += z[n + i] * zp[i] - z[i] * zp[n + i];
    }
    acc
}

/// Group product (z, t) * (z', t') = (z + z', t + t' + 2 w(z, z')).
pub fn multiply(p: &HeisPoint, q: &HeisPoint) -> Result<HeisPoint> {
    if p.z.len() != q.z.len() {
        return Err(Error::DimensionMismatch { left: p.z.len(), right: q.z.len() });
    }
    let z: Vec<f64> = p.z.iter().zip(&q.z).map(|(a, b)| a + b).collect();
    let t = p.t + q.t + 2.0 * omega_unchecked(&p.z, &q.z);
    Ok(HeisPoint { z, t })
}

/// Group inverse (z, t)^{-1} = (-z, -t).
pub fn inverse(p: &HeisPoint) -> HeisPoint {
    HeisPoint { z: p.z.iter().map(|c| -c).collect(), t: -p.t }
}

/// Dilation delta_l(z, t) = (l z, l^2 t); l must be strictly positive.
pub fn dilate(lambda: f64, p: &HeisPoint) -> Result<HeisPoint> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::BadDilation(lambda));
    }
    Ok(HeisPoint {
        z: p.z.iter().map(|c| lambda * c).collect(),
        t: lambda * lambda * p.t,
    })
}

/// Left translation L_g(p) = g * p.
pub fn left_translate(g: &HeisPoint, p: &HeisPoint) -> Result<HeisPoint> {
    multiply(g, p)
}

/// The difference p^{-1} * q whose norm is the distance from p to q.
pub fn group_difference(p: &HeisPoint, q: &HeisPoint) -> Result<HeisPoint> {
    multiply(&inverse(p), q)
}

/// Left-invariant distance d_N(p, q) = N(p^{-1} * q) induced by a
/// homogeneous norm.
pub fn distance(norm: &NormDescriptor, p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    eval_norm(norm, &group_difference(p, q)?)
}

/// Largest absolute coordinate difference between two points, including the
/// height; handy for "equal up to rounding" assertions.
pub fn max_coord_diff(p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    if p.z.len() != q.z.len() {
        return Err(Error::DimensionMismatch { left: p.z.len(), right: q.z.len() });
    }
    let mut worst = (p.t - q.t).abs();
    for (a, b) in p.z.iter().zip(&q.z) {
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_point, seeded_rng};

    fn n(k: usize) -> GroupDim {
        GroupDim::new(k).unwrap()
    }

    #[test]
    fn omega_pins_sign_convention() {
        // w(e_1, e_{n+1}) = -1 must hold exactly for every dimension.
        for k in 1..=3 {
            let e1 = HeisPoint::horizontal_unit(n(k), 0).unwrap();
            let en1 = HeisPoint::horizontal_unit(n(k), k).unwrap();
            assert_eq!(omega(e1.z(), en1.z()).unwrap(), -1.0);
            assert_eq!(omega(en1.z(), e1.z()).unwrap(), 1.0);
        }
    }

    #[test]
    fn omega_hand_computed_value() {
        // z = (1,2,3,4), z' = (0,1,1,0) in H^2: split x = (1,2), y = (3,4),
        // x' = (0,1), y' = (1,0); w = (3*0 + 4*1) - (1*1 + 2*0) = 3.
        assert_eq!(omega(&[1.0, 2.0, 3.0, 4.0], &[0.0, 1.0, 1.0, 0.0]).unwrap(), 3.0);
    }

    #[test]
    fn multiply_hand_computed_value() {
        // (e_1, 0) * (e_{n+1}, 0) = (e_1 + e_{n+1}, 2 w(e_1, e_{n+1})) = (.., -2).
        for k in 1..=3 {
            let e1 = HeisPoint::horizontal_unit(n(k), 0).unwrap();
            let en1 = HeisPoint::horizontal_unit(n(k), k).unwrap();
            let prod = multiply(&e1, &en1).unwrap();
            let mut z = vec![0.0; 2 * k];
            z[0] = 1.0;
            z[k] = 1.0;
            assert_eq!(prod, HeisPoint::new(z, -2.0).unwrap());
        }
    }

    #[test]
    fn identity_and_inverse() {
        let p = HeisPoint::from_xyt(1.5, -2.0, 0.75).unwrap();
        let e = HeisPoint::origin(n(1));
        assert_eq!(multiply(&p, &e).unwrap(), p);
        assert_eq!(multiply(&e, &p).unwrap(), p);
        // w(z, -z) = 0, so p * p^{-1} is exactly the origin in floats too.
        assert!(multiply(&p, &inverse(&p)).unwrap().is_origin());
        assert!(multiply(&inverse(&p), &p).unwrap().is_origin());
    }

    #[test]
    fn associativity_on_seeded_samples() {
        let mut rng = seeded_rng(7);
        for k in 1..=3 {
            for _ in 0..500 {
                let p = sample_point(&mut rng, n(k), 2.0);
                let q = sample_point(&mut rng, n(k), 2.0);
                let r = sample_point(&mut rng, n(k), 2.0);
                let lhs = multiply(&multiply(&p, &q).unwrap(), &r).unwrap();
                let rhs = multiply(&p, &multiply(&q, &r).unwrap()).unwrap();
                assert!(max_coord_diff(&lhs, &rhs).unwrap() <= crate::tol::EXACT);
            }
        }
    }

    #[test]
    fn dilation_is_an_automorphism() {
        let mut rng = seeded_rng(11);
        for _ in 0..500 {
            let p = sample_point(&mut rng, n(2), 2.0);
            let q = sample_point(&mut rng, n(2), 2.0);
            for lambda in [0.25, 1.0, 3.0] {
                let lhs = dilate(lambda, &multiply(&p, &q).unwrap()).unwrap();
                let rhs = multiply(&dilate(lambda, &p).unwrap(), &dilate(lambda, &q).unwrap()).unwrap();
                assert!(max_coord_diff(&lhs, &rhs).unwrap() <= crate::tol::EXACT);
            }
        }
    }

    #[test]
    fn dilation_rejects_bad_factors() {
        let p = HeisPoint::from_xyt(1.0, 0.0, 0.0).unwrap();
        assert!(dilate(0.0, &p).is_err());
        assert!(dilate(-2.0, &p).is_err());
        assert!(dilate(f64::NAN, &p).is_err());
    }

    #[test]
    fn construction_rejects_bad_points() {
        assert!(HeisPoint::new(vec![], 0.0).is_err());
        assert!(HeisPoint::new(vec![1.0], 0.0).is_err());
        assert!(HeisPoint::new(vec![1.0, f64::NAN], 0.0).is_err());
        assert!(HeisPoint::new(vec![1.0, 2.0], f64::INFINITY).is_err());
        assert!(GroupDim::new(0).is_err());
    }

    #[test]
    fn mismatched_dimensions_error() {
        let p = HeisPoint::from_xyt(1.0, 2.0, 0.0).unwrap();
        let q = HeisPoint::new(vec![1.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        assert!(multiply(&p, &q).is_err());
        assert!(omega(p.z(), q.z()).is_err());
    }

    #[test]
    fn point_json_round_trip() {
        let p = HeisPoint::new(vec![1.0, -0.5, 2.25, 0.0], 3.5).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"z":[1.0,-0.5,2.25,0.0],"t":3.5}"#);
        let back: HeisPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        // Validation also runs on deserialize.
        assert!(serde_json::from_str::<HeisPoint>(r#"{"z":[1.0],"t":0.0}"#).is_err());
    }
}
