//! Harnack-type bounds for positive harmonic functions on the disc, their
//! extremal functions, and the distance and gradient inequalities behind them.
//!
//! Throughout, `c = |∇u(0)|/(2u(0)) = |f^h(0)|` is the modulus of the
//! hyperbolic derivative at the origin of the holomorphic completion
//! `f: 𝕌 → 𝕂`. It lies in `[0, 1]`; `c = 1` exactly when `u` is the real part
//! of a conformal map onto the half-plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::herglotz::{HerglotzMeasure, DEFAULT_FD_STEP};
use crate::hyperbolic::{disc_automorphism, dist_disc, dist_halfplane, DiscPoint, HalfPlanePoint};
use crate::oracle::central_gradient;

/// Amount by which a measured `c` may exceed 1 and still be read as 1.
pub const C_EXCESS_TOLERANCE: f64 = 1e-12;

/// Two-sided bound `lower ≤ u(z)/u(0) ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
}

impl BoundInterval {
    fn reciprocal_pair(upper: f64) -> Self {
        BoundInterval { lower: 1.0 / upper, upper }
    }

    pub fn contains(&self, ratio: f64) -> bool {
        self.lower <= ratio && ratio <= self.upper
    }

    /// Smallest relative distance from `ratio` to either endpoint, negative
    /// when `ratio` falls outside.
    pub fn relative_margin(&self, ratio: f64) -> f64 {
        ((ratio - self.lower) / self.lower).min((self.upper - ratio) / self.upper)
    }

    /// Whether `self ⊆ other` up to an absolute tolerance on each endpoint.
    pub fn is_within(&self, other: &BoundInterval, tol: f64) -> bool {
        self.lower >= other.lower - tol && self.upper <= other.upper + tol
    }
}

/// Both sides of an inequality `lhs ≤ rhs` and `slack = rhs − lhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalitySlack {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl InequalitySlack {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        InequalitySlack { lhs, rhs, slack: rhs - lhs }
    }

    /// `slack / max(1, |rhs|)`: the slack in units of the rounding scale of
    /// the two sides.
    pub fn normalized(&self) -> f64 {
        self.slack / self.rhs.abs().max(1.0)
    }
}

/// Which function of the extremal pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    /// `u1 = Re (1 + zφ_c(z))/(1 − zφ_c(z))`, attains the upper bound.
    U1,
    /// `u2 = Re (1 − zφ_c(z))/(1 + zφ_c(z))`, attains the lower bound.
    U2,
}

/// Validates `c ∈ [0, 1]`, reading values in `(1, 1 + C_EXCESS_TOLERANCE]` as 1.
pub fn checked_c(c: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&c) {
        Ok(c)
    } else if c > 1.0 && c <= 1.0 + C_EXCESS_TOLERANCE {
        Ok(1.0)
    } else {
        Err(domain(format!("c = {c} must lie in [0, 1]")))
    }
}

/// Classical Harnack interval `[(1 − |z|)/(1 + |z|), (1 + |z|)/(1 − |z|)]`.
pub fn classical_harnack(z: DiscPoint) -> BoundInterval {
    let t = z.modulus();
    BoundInterval::reciprocal_pair((1.0 + t) / (1.0 - t))
}

/// Sharpened Harnack interval `[1/B, B]` with
/// `B = (1 + |z|²)/(1 − |z|²) + (|∇u(0)|/u(0))·|z|/(1 − |z|²)` and
/// `|∇u(0)|/u(0) = 2c`.
pub fn stronger_harnack(z: DiscPoint, c: f64) -> Result<BoundInterval> {
    let c = checked_c(c)?;
    let t = z.modulus();
    let denom = z.one_minus_norm_sqr();
    let upper = (1.0 + t * t) / denom + 2.0 * c * t / denom;
    Ok(BoundInterval::reciprocal_pair(upper))
}

/// [`stronger_harnack`] with `c` taken from the measure.
pub fn stronger_harnack_for(m: &HerglotzMeasure, z: DiscPoint) -> Result<BoundInterval> {
    stronger_harnack(z, m.hyperbolic_derivative_zero())
}

/// `log(cosh d + hd·sinh d)`.
///
/// Evaluated as `d + log1p(½(1 − hd)·expm1(−2d))`, which is exact at
/// `hd = 1` and does not overflow for large `d`.
pub fn beardon_carne_rhs(d: f64, hd: f64) -> Result<f64> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(domain(format!("distance {d} must be finite and >= 0")));
    }
    let hd = checked_c(hd)?;
    Ok(d + (0.5 * (1.0 - hd) * (-2.0 * d).exp_m1()).ln_1p())
}

fn check_lemma2_args(c: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(domain(format!("t = {t} must lie in [0, 1)")));
    }
    checked_c(c)
}

/// `R = t(c + t)/(1 + ct) = t·φ_c(t)`, the radius with
/// `d_𝕌(R, 0) = log((1 + t² + 2ct)/(1 − t²))`.
pub fn lemma2_radius(c: f64, t: f64) -> Result<f64> {
    let c = check_lemma2_args(c, t)?;
    Ok(t * (c + t) / (1.0 + c * t))
}

/// `|log(cosh d + c·sinh d) − d_𝕌(R, 0)|` with `d = d_𝕌(t, 0)` and
/// `R = lemma2_radius(c, t)`.
pub fn lemma2_identity_gap(c: f64, t: f64) -> Result<f64> {
    let c = check_lemma2_args(c, t)?;
    let d = dist_disc(DiscPoint::real(t)?, DiscPoint::ORIGIN);
    let radius = lemma2_radius(c, t)?;
    let rhs = dist_disc(DiscPoint::real(radius)?, DiscPoint::ORIGIN);
    Ok((beardon_carne_rhs(d, c)? - rhs).abs())
}

/// `|∇u(z)| ≤ 2u(z)/(1 − |z|²)`.
pub fn schwarz_pick_gradient_slack(m: &HerglotzMeasure, z: DiscPoint) -> InequalitySlack {
    let lhs = m.grad_u(z).norm();
    let rhs = 2.0 * m.eval_u(z) / z.one_minus_norm_sqr();
    InequalitySlack::new(lhs, rhs)
}

/// `d_𝕂(u(z1), u(z2)) ≤ d_𝕌(z1, z2)`; the left side is `|log(u(z1)/u(z2))|`.
pub fn markovic_slack(m: &HerglotzMeasure, z1: DiscPoint, z2: DiscPoint) -> InequalitySlack {
    let lhs = (m.eval_u(z1) / m.eval_u(z2)).ln().abs();
    InequalitySlack::new(lhs, dist_disc(z1, z2))
}

/// Left side of [`markovic_slack`] through the general half-plane distance.
pub fn markovic_lhs_general(m: &HerglotzMeasure, z1: DiscPoint, z2: DiscPoint) -> Result<f64> {
    dist_halfplane(HalfPlanePoint::real(m.eval_u(z1))?, HalfPlanePoint::real(m.eval_u(z2))?)
}

/// `d_𝕂(f(z), f(0)) ≤ log(cosh d_𝕌(z, 0) + c·sinh d_𝕌(z, 0))` with `c = |f^h(0)|`.
pub fn beardon_carne_slack(m: &HerglotzMeasure, z: DiscPoint) -> Result<InequalitySlack> {
    let lhs = dist_halfplane(m.eval_f(z), m.eval_f(DiscPoint::ORIGIN))?;
    let rhs = beardon_carne_rhs(dist_disc(z, DiscPoint::ORIGIN), m.hyperbolic_derivative_zero())?;
    Ok(InequalitySlack::new(lhs, rhs))
}

/// `g(z) = z·φ_c(z)` for real `c ∈ [0, 1]`.
fn extremal_composite(c: f64, z: DiscPoint) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(domain(format!("extremal parameter c = {c} must lie in [0, 1]")));
    }
    Ok(z.value() * disc_automorphism(Complex64::new(c, 0.0), z)?)
}

/// `u1(z) = Re (1 + g)/(1 − g)` with `g = zφ_c(z)`.
pub fn extremal_u1(c: f64, z: DiscPoint) -> Result<f64> {
    let g = extremal_composite(c, z)?;
    Ok((1.0 - g.norm_sqr()) / (1.0 - g).norm_sqr())
}

/// `u2(z) = Re (1 − g)/(1 + g)` with `g = zφ_c(z)`.
pub fn extremal_u2(c: f64, z: DiscPoint) -> Result<f64> {
    let g = extremal_composite(c, z)?;
    Ok((1.0 - g.norm_sqr()) / (1.0 + g).norm_sqr())
}

pub fn extremal_u(which: Extremal, c: f64, z: DiscPoint) -> Result<f64> {
    match which {
        Extremal::U1 => extremal_u1(c, z),
        Extremal::U2 => extremal_u2(c, z),
    }
}

/// `|∇u(0)|` of an extremal function, by central differences with the
/// default step.
pub fn gradient_norm_extremal(c: f64, which: Extremal) -> Result<f64> {
    extremal_u(which, c, DiscPoint::ORIGIN)?;
    let h = DEFAULT_FD_STEP;
    let field = |x: f64, y: f64| {
        let p = DiscPoint::new(Complex64::new(x, y)).expect("stencil stays near the origin");
        extremal_u(which, c, p).expect("c validated above")
    };
    let (gx, gy) = central_gradient(field, 0.0, 0.0, h);
    Ok(gx.hypot(gy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    use proptest::prelude::*;

    fn re(x: f64) -> DiscPoint {
        DiscPoint::real(x).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_harnack(DiscPoint::ORIGIN), BoundInterval { lower: 1.0, upper: 1.0 });
        let i = classical_harnack(DiscPoint::from_polar(0.5, 2.0).unwrap());
        assert!(close(i.lower, 1.0 / 3.0, 1e-15) && close(i.upper, 3.0, 1e-15));
        let i = classical_harnack(re(0.9));
        assert!(close(i.lower, 1.0 / 19.0, 1e-15) && close(i.upper, 19.0, 1e-13));
        assert_eq!(i.lower, 1.0 / i.upper);
    }

    #[test]
    fn stronger_examples() {
        let i = stronger_harnack(re(0.5), 1.0).unwrap();
        assert!(close(i.lower, 1.0 / 3.0, 1e-15) && close(i.upper, 3.0, 1e-15));
        let i = stronger_harnack(re(0.5), 0.0).unwrap();
        assert!(close(i.lower, 0.6, 1e-15) && close(i.upper, 5.0 / 3.0, 1e-15));
        let i = stronger_harnack(re(0.5), 0.5).unwrap();
        assert!(close(i.upper, 7.0 / 3.0, 1e-15));
    }

    #[test]
    fn c_range_is_checked_not_clamped() {
        assert!(stronger_harnack(re(0.5), -0.1).is_err());
        assert!(stronger_harnack(re(0.5), 1.1).is_err());
        assert!(stronger_harnack(re(0.5), 1.0 + 2e-12).is_err());
        let edge = stronger_harnack(re(0.5), 1.0 + 1e-13).unwrap();
        assert_eq!(edge, stronger_harnack(re(0.5), 1.0).unwrap());
    }

    #[test]
    fn beardon_carne_examples() {
        for d in [0.0, 0.3, 2.0, 40.0] {
            assert!(close(beardon_carne_rhs(d, 1.0).unwrap(), d, 1e-15 * d.max(1.0)));
        }
        assert_eq!(beardon_carne_rhs(0.0, 0.4).unwrap(), 0.0);
        // cosh(log 3) = (3 + 1/3)/2 = 5/3
        let v = beardon_carne_rhs(3f64.ln(), 0.0).unwrap();
        assert!(close(v, (5.0f64 / 3.0).ln(), 1e-15));
        // direct cosh/sinh evaluation where it is well conditioned
        let (d, hd) = (1.3f64, 0.37);
        let direct = (d.cosh() + hd * d.sinh()).ln();
        assert!(close(beardon_carne_rhs(d, hd).unwrap(), direct, 1e-14));

        assert!(beardon_carne_rhs(-1.0, 0.5).is_err());
        assert!(beardon_carne_rhs(1.0, 1.5).is_err());
    }

    #[test]
    fn lemma2_examples() {
        assert!(close(lemma2_radius(0.0, 0.5).unwrap(), 0.25, 1e-16));
        assert!(close(lemma2_radius(1.0, 0.5).unwrap(), 0.5, 1e-16));
        assert!(close(lemma2_radius(0.5, 0.5).unwrap(), 0.4, 1e-16));
        for (c, t) in [(0.0, 0.5), (1.0, 0.9), (0.37, 0.73)] {
            assert!(lemma2_identity_gap(c, t).unwrap() <= 1e-12);
            let r = lemma2_radius(c, t).unwrap();
            let closed = ((1.0 + t * t + 2.0 * c * t) / (1.0 - t * t)).ln();
            assert!(close(dist_disc(re(r), DiscPoint::ORIGIN), closed, 1e-12));
        }
        assert!(lemma2_radius(0.5, 1.0).is_err());
        assert!(lemma2_identity_gap(-0.5, 0.3).is_err());
    }

    #[test]
    fn schwarz_pick_examples() {
        let m = HerglotzMeasure::single(1.2, 3.0).unwrap();
        for z in [re(0.0), re(0.5), DiscPoint::from_polar(0.99, 4.0).unwrap()] {
            let s = schwarz_pick_gradient_slack(&m, z);
            assert!(s.slack.abs() <= 1e-10 * s.rhs);
        }
        let sym = HerglotzMeasure::from_pairs(&[(0.0, 0.5), (PI, 0.5)]).unwrap();
        let s = schwarz_pick_gradient_slack(&sym, DiscPoint::ORIGIN);
        assert!(close(s.lhs, 0.0, 1e-15) && s.rhs == 2.0 && close(s.slack, 2.0, 1e-15));
    }

    #[test]
    fn markovic_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        let z = re(0.3);
        assert_eq!(markovic_slack(&m, z, z).slack, 0.0);
        let s = markovic_slack(&m, DiscPoint::ORIGIN, re(0.5));
        assert!(close(s.lhs, 3f64.ln(), 1e-15) && close(s.rhs, 3f64.ln(), 1e-15));
        assert!(s.slack.abs() <= 1e-15);
        let general = markovic_lhs_general(&m, DiscPoint::ORIGIN, re(0.5)).unwrap();
        assert!(close(general, s.lhs, 1e-12));
    }

    #[test]
    fn beardon_carne_slack_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        let s = beardon_carne_slack(&m, DiscPoint::ORIGIN).unwrap();
        assert_eq!((s.lhs, s.rhs), (0.0, 0.0));
        let s = beardon_carne_slack(&m, re(0.5)).unwrap();
        assert!(close(s.lhs, 3f64.ln(), 1e-14) && close(s.rhs, 3f64.ln(), 1e-15));

        let sym = HerglotzMeasure::from_pairs(&[(0.0, 0.5), (PI, 0.5)]).unwrap();
        let s = beardon_carne_slack(&sym, re(0.5)).unwrap();
        assert!(close(s.rhs, (5.0f64 / 3.0).ln(), 1e-15));
        // f(0.5) = 0.5·3 + 0.5/3 = 5/3 is real, so the bound is attained
        assert!(close(s.lhs, (5.0f64 / 3.0).ln(), 1e-14));
        assert!(s.slack >= -1e-14);
    }

    #[test]
    fn extremal_examples() {
        assert!(close(extremal_u1(1.0, re(0.5)).unwrap(), 3.0, 1e-14));
        assert!(close(extremal_u1(0.0, re(0.5)).unwrap(), 5.0 / 3.0, 1e-15));
        assert!(close(extremal_u2(0.0, re(0.5)).unwrap(), 0.6, 1e-15));
        assert!(close(extremal_u2(1.0, re(0.5)).unwrap(), 1.0 / 3.0, 1e-15));
        for c in [0.0, 0.3, 1.0] {
            assert_eq!(extremal_u1(c, DiscPoint::ORIGIN).unwrap(), 1.0);
            assert_eq!(extremal_u2(c, DiscPoint::ORIGIN).unwrap(), 1.0);
        }
        assert!(extremal_u1(1.2, re(0.1)).is_err());
    }

    #[test]
    fn extremal_gradients() {
        assert!(close(gradient_norm_extremal(0.0, Extremal::U1).unwrap(), 0.0, 1e-6));
        assert!(close(gradient_norm_extremal(1.0, Extremal::U2).unwrap(), 2.0, 1e-6));
        assert!(close(gradient_norm_extremal(0.5, Extremal::U1).unwrap(), 1.0, 1e-6));
        assert!(gradient_norm_extremal(-0.5, Extremal::U1).is_err());
    }

    #[test]
    fn extremal_functions_match_their_measures() {
        // u1 and u2 have atomic Herglotz measures; the two routes must agree
        for c in [0.0, 0.25, 0.8, 1.0] {
            let up = HerglotzMeasure::upper_extremal(c, 0.0).unwrap();
            let lo = HerglotzMeasure::lower_extremal(c, 0.0).unwrap();
            for z in [re(0.4), DiscPoint::from_polar(0.7, 2.1).unwrap()] {
                assert!(close(up.eval_u(z), extremal_u1(c, z).unwrap(), 1e-13));
                assert!(close(lo.eval_u(z), extremal_u2(c, z).unwrap(), 1e-13));
            }
        }
    }

    fn measure_strategy() -> impl Strategy<Value = HerglotzMeasure> {
        prop::collection::vec((0.0..TAU, 0.01f64..10.0), 1..8)
            .prop_map(|v| HerglotzMeasure::from_pairs(&v).unwrap())
    }

    fn disc_strategy(rmax: f64) -> impl Strategy<Value = DiscPoint> {
        (0.0..rmax, 0.0..TAU).prop_map(|(r, t)| DiscPoint::from_polar(r, t).unwrap())
    }

    proptest! {
        #[test]
        fn sharpened_bound_holds(m in measure_strategy(), z in disc_strategy(0.99)) {
            let ratio = m.eval_u(z) / m.eval_u(DiscPoint::ORIGIN);
            let b = stronger_harnack_for(&m, z).unwrap();
            prop_assert!(b.relative_margin(ratio) >= -1e-9);
            prop_assert!(b.is_within(&classical_harnack(z), 1e-12));
        }

        #[test]
        fn slacks_are_nonnegative(m in measure_strategy(), z1 in disc_strategy(0.99), z2 in disc_strategy(0.99)) {
            prop_assert!(schwarz_pick_gradient_slack(&m, z1).normalized() >= -1e-12);
            prop_assert!(markovic_slack(&m, z1, z2).normalized() >= -1e-10);
            prop_assert!(beardon_carne_slack(&m, z1).unwrap().normalized() >= -1e-10);
        }

        #[test]
        fn beardon_carne_rhs_is_monotone(d in 0.0f64..20.0, dd in 0.0f64..1.0, h in 0.0f64..1.0, dh in 0.0f64..0.5) {
            let base = beardon_carne_rhs(d, h).unwrap();
            prop_assert!(base >= 0.0 && base <= d + 1e-15 * d.max(1.0));
            prop_assert!(beardon_carne_rhs(d + dd, h).unwrap() >= base);
            prop_assert!(beardon_carne_rhs(d, (h + dh).min(1.0)).unwrap() >= base);
        }

        #[test]
        fn lemma2_identity_holds(c in 0.0f64..=1.0, t in 0.0f64..=0.99) {
            prop_assert!(lemma2_identity_gap(c, t).unwrap() <= 1e-12);
        }
    }
}
