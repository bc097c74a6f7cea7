//! Hyperbolic geometry of the unit disc `𝕌` and the right half-plane `𝕂`.
//!
//! Points are validated newtypes around [`Complex64`]. Disc points closer than
//! [`BOUNDARY_MARGIN`] to the unit circle are rejected: every density and bound
//! in this crate diverges there and the arithmetic is dominated by
//! cancellation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Minimum admissible value of `1 - |z|` for a [`DiscPoint`].
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// Slack allowed when deciding that an automorphism parameter lies on the
/// unit circle.
const UNIT_CIRCLE_EPS: f64 = 4.0 * f64::EPSILON;

/// `artanh(x)` evaluated as `½(log1p(x) − log1p(−x))`.
pub fn artanh(x: f64) -> f64 {
    0.5 * (x.ln_1p() - (-x).ln_1p())
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(domain(format!("disc point {z} is not finite")));
        }
        let modulus = z.norm();
        if !(1.0 - modulus >= BOUNDARY_MARGIN) {
            return Err(domain(format!(
                "|z| = {modulus} is not inside the unit disc (margin {BOUNDARY_MARGIN:e})"
            )));
        }
        Ok(DiscPoint(z))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// `1 − |z|²`, factored as `(1 − |z|)(1 + |z|)`.
    #[inline]
    pub fn one_minus_norm_sqr(self) -> f64 {
        let m = self.modulus();
        (1.0 - m) * (1.0 + m)
    }
}

impl TryFrom<Complex64> for DiscPoint {
    type Error = crate::Error;

    fn try_from(z: Complex64) -> Result<Self> {
        DiscPoint::new(z)
    }
}

impl From<DiscPoint> for Complex64 {
    fn from(p: DiscPoint) -> Self {
        p.0
    }
}

/// A point of the right half-plane `Re w > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(w: Complex64) -> Result<Self> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(domain(format!("half-plane point {w} is not finite")));
        }
        if !(w.re > 0.0) {
            return Err(domain(format!("Re w = {} is not positive", w.re)));
        }
        Ok(HalfPlanePoint(w))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for HalfPlanePoint {
    type Error = crate::Error;

    fn try_from(w: Complex64) -> Result<Self> {
        HalfPlanePoint::new(w)
    }
}

impl From<HalfPlanePoint> for Complex64 {
    fn from(p: HalfPlanePoint) -> Self {
        p.0
    }
}

/// Radius of a hyperbolic disc, in hyperbolic length units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct HyperbolicRadius(f64);

impl HyperbolicRadius {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(domain(format!("hyperbolic radius {value} must be finite and >= 0")));
        }
        Ok(HyperbolicRadius(value))
    }

    /// The hyperbolic radius `2 artanh r` of the Euclidean disc `|z| ≤ r`
    /// about the origin of `𝕌`.
    pub fn from_euclidean(r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(domain(format!("euclidean radius {r} must lie in [0, 1)")));
        }
        Self::new(2.0 * artanh(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Inverse of [`HyperbolicRadius::from_euclidean`].
    pub fn euclidean(self) -> f64 {
        (0.5 * self.0).tanh()
    }
}

/// Closed real interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lower: f64,
    pub upper: f64,
}

impl RealInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Closed Euclidean disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl EuclideanDisc {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(domain(format!("disc radius {radius} must be finite and >= 0")));
        }
        Ok(EuclideanDisc { center, radius })
    }

    /// Unsigned Euclidean distance from `z` to the boundary circle.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        ((z - self.center).norm() - self.radius).abs()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    /// Projection onto the real axis, `[Re c − R, Re c + R]`.
    pub fn re_interval(&self) -> RealInterval {
        RealInterval {
            lower: self.center.re - self.radius,
            upper: self.center.re + self.radius,
        }
    }
}

/// Disc automorphism `φ_c(z) = (z + c)/(1 + c̄z)`, sending `0` to `c`.
///
/// For `|c| = 1` the map degenerates to the constant `c`.
pub fn disc_automorphism(c: Complex64, z: DiscPoint) -> Result<Complex64> {
    let modulus = c.norm();
    if !modulus.is_finite() || modulus > 1.0 + UNIT_CIRCLE_EPS {
        return Err(domain(format!("automorphism parameter |c| = {modulus} exceeds 1")));
    }
    if modulus >= 1.0 - UNIT_CIRCLE_EPS {
        return Ok(c);
    }
    let z = z.value();
    Ok((z + c) / (1.0 + c.conj() * z))
}

/// Cayley map `ψ(w) = (w − 1)/(w + 1)` from `𝕂` onto `𝕌`.
pub fn cayley_to_disc(w: HalfPlanePoint) -> Result<DiscPoint> {
    let w = w.value();
    DiscPoint::new((w - 1.0) / (w + 1.0))
}

/// Inverse Cayley map `κ(z) = (1 + z)/(1 − z)` from `𝕌` onto `𝕂`.
pub fn cayley_to_halfplane(z: DiscPoint) -> HalfPlanePoint {
    // (1 + z)(1 − z̄) = (1 − |z|²) + 2i Im z; the real part is formed from
    // the factored complement so it stays positive.
    let v = z.value();
    let denom = (1.0 - v).norm_sqr();
    HalfPlanePoint(Complex64::new(z.one_minus_norm_sqr() / denom, 2.0 * v.im / denom))
}

/// Hyperbolic density of the disc, `ρ_𝕌(z) = 2/(1 − |z|²)`.
pub fn density_disc(z: DiscPoint) -> f64 {
    2.0 / z.one_minus_norm_sqr()
}

/// Hyperbolic density of the half-plane, `ρ_𝕂(w) = 1/Re w`.
pub fn density_halfplane(w: HalfPlanePoint) -> f64 {
    1.0 / w.value().re
}

/// The point `φ_{−z1}(z2) = (z2 − z1)/(1 − z̄1 z2)`; the automorphism that
/// carries `z1` to the origin carries `z2` here.
pub fn reduce_to_origin(z1: DiscPoint, z2: DiscPoint) -> Complex64 {
    let (a, b) = (z1.value(), z2.value());
    (b - a) / (1.0 - a.conj() * b)
}

/// Hyperbolic distance `d_𝕌(z1, z2)`.
///
/// The pair is moved so that `z1` sits at the origin and the radial formula
/// `d_𝕌(w, 0) = 2 artanh |w|` is applied to the image of `z2`. Far from the
/// origin `1 − |w|²` is taken from the invariant product
/// `(1 − |z1|²)(1 − |z2|²)/|1 − z̄1 z2|²` instead of from `|w|`.
pub fn dist_disc(z1: DiscPoint, z2: DiscPoint) -> f64 {
    let (a, b) = (z1.value(), z2.value());
    let denom = 1.0 - a.conj() * b;
    let s = (b - a).norm() / denom.norm();
    if s < 0.5 {
        return 2.0 * artanh(s);
    }
    let complement = z1.one_minus_norm_sqr() * z2.one_minus_norm_sqr() / denom.norm_sqr();
    2.0 * s.ln_1p() - complement.ln()
}

/// Hyperbolic distance `d_𝕂(w1, w2) = d_𝕌(ψ(w1), ψ(w2))`.
pub fn dist_halfplane(w1: HalfPlanePoint, w2: HalfPlanePoint) -> Result<f64> {
    Ok(dist_disc(cayley_to_disc(w1)?, cayley_to_disc(w2)?))
}

fn check_disc_image_args(b: f64, r: f64) -> Result<()> {
    if !(b.is_finite() && b > 0.0) {
        return Err(domain(format!("centre b = {b} must be a positive real")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(domain(format!("radius parameter r = {r} must lie in (0, 1)")));
    }
    Ok(())
}

/// Image of `{|z| ≤ r}` under the isometry `κ_b` of `𝕌` onto `𝕂` with
/// `κ_b(0) = b`; equivalently the hyperbolic disc of `𝕂` about `b` with
/// radius `2 artanh r`. It is the Euclidean disc with centre
/// `(1 + r²)b/(1 − r²)` and radius `2rb/(1 − r²)`.
pub fn halfplane_disc_image(b: f64, r: f64) -> Result<EuclideanDisc> {
    check_disc_image_args(b, r)?;
    let denom = (1.0 - r) * (1.0 + r);
    EuclideanDisc::new(
        Complex64::new((1.0 + r * r) * b / denom, 0.0),
        2.0 * r * b / denom,
    )
}

/// Same disc as [`halfplane_disc_image`], parametrised by its hyperbolic radius.
pub fn halfplane_ball_image(b: f64, radius: HyperbolicRadius) -> Result<EuclideanDisc> {
    halfplane_disc_image(b, radius.euclidean())
}

/// Range of `Re w` over the hyperbolic disc of `𝕂` about `b` with radius
/// `2 artanh r`: `[(1 − r)/(1 + r)·b, (1 + r)/(1 − r)·b]`.
pub fn halfplane_disc_re_interval(b: f64, r: f64) -> Result<RealInterval> {
    check_disc_image_args(b, r)?;
    Ok(RealInterval {
        lower: (1.0 - r) / (1.0 + r) * b,
        upper: (1.0 + r) / (1.0 - r) * b,
    })
}

/// The isometry `κ_b = κ ∘ φ_a` of `𝕌` onto `𝕂` with `a = ψ(b)`, so that
/// `κ_b(0) = b`.
pub fn halfplane_chart(b: f64, z: DiscPoint) -> Result<HalfPlanePoint> {
    let a = cayley_to_disc(HalfPlanePoint::real(b)?)?;
    let moved = DiscPoint::new(disc_automorphism(a.value(), z)?)?;
    Ok(cayley_to_halfplane(moved))
}
