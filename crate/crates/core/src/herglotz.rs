//! Positive harmonic functions on the unit disc as finite atomic Herglotz
//! measures.
//!
//! An atom `(θ, w)` contributes `w·(ζ + z)/(ζ − z)` with `ζ = e^{iθ}` to the
//! holomorphic function `f`, whose real part `w(1 − |z|²)/|ζ − z|²` is a
//! positive multiple of the Poisson kernel. Summing atoms gives `f: 𝕌 → 𝕂`
//! with `Re f = u` and `f(0) = u(0) = Σ w`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::{DiscPoint, HalfPlanePoint};
use crate::oracle::central_gradient;

/// Default step for [`HerglotzMeasure::grad_u_fd`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// One boundary atom: angle in radians and positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub theta: f64,
    pub w: f64,
}

/// Finite positive atomic measure on the unit circle.
///
/// Serialises as a JSON array of `{"theta": .., "w": ..}` objects. Angles are
/// reduced into `[0, 2π)` on construction; coincident angles are kept as
/// separate atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct HerglotzMeasure {
    atoms: Vec<Atom>,
    #[serde(skip)]
    units: Vec<Complex64>,
}

/// `∇u = (u_x, u_y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientVector {
    pub ux: f64,
    pub uy: f64,
}

impl GradientVector {
    pub fn norm(&self) -> f64 {
        self.ux.hypot(self.uy)
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &GradientVector) -> f64 {
        (self.ux - other.ux).hypot(self.uy - other.uy)
    }
}

fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl HerglotzMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("a measure needs at least one atom".into()));
        }
        let mut reduced = Vec::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if !a.theta.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom {i}: angle {} is not finite", a.theta)));
            }
            if !(a.w.is_finite() && a.w > 0.0) {
                return Err(Error::InvalidMeasure(format!("atom {i}: weight {} is not positive", a.w)));
            }
            reduced.push(Atom { theta: reduce_angle(a.theta), w: a.w });
        }
        let units = reduced.iter().map(|a| Complex64::cis(a.theta)).collect();
        Ok(HerglotzMeasure { atoms: reduced, units })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(theta, w)| Atom { theta, w }).collect())
    }

    /// A single atom: `u` is then the real part of a conformal map of `𝕌` onto `𝕂`.
    pub fn single(theta: f64, w: f64) -> Result<Self> {
        Self::from_pairs(&[(theta, w)])
    }

    /// Unit-mass measure whose `u` attains the upper sharpened Harnack bound
    /// along the ray `arg z = alpha`, with `|∇u(0)| = 2c`.
    ///
    /// Atoms `(1 + c)/2` at `alpha` and `(1 − c)/2` at `alpha + π`.
    pub fn upper_extremal(c: f64, alpha: f64) -> Result<Self> {
        check_unit_parameter(c)?;
        if c >= 1.0 {
            return Self::single(alpha, 1.0);
        }
        Self::from_pairs(&[(alpha, 0.5 * (1.0 + c)), (alpha + PI, 0.5 * (1.0 - c))])
    }

    /// Unit-mass measure whose `u` attains the lower sharpened Harnack bound
    /// along the ray `arg z = alpha`, with `|∇u(0)| = 2c`.
    ///
    /// Two atoms of mass ½ at `alpha + π ± arccos c`.
    pub fn lower_extremal(c: f64, alpha: f64) -> Result<Self> {
        check_unit_parameter(c)?;
        let beta = c.acos();
        Self::from_pairs(&[(alpha + PI - beta, 0.5), (alpha + PI + beta, 0.5)])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `Σ w_j = u(0)`.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    fn terms(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.atoms.iter().map(|a| a.w).zip(self.units.iter().copied())
    }

    /// `f(z) = Σ w_j (ζ_j + z)/(ζ_j − z)`.
    pub fn eval_f(&self, z: DiscPoint) -> HalfPlanePoint {
        let v = z.value();
        let complement = z.one_minus_norm_sqr();
        let (mut re, mut im) = (0.0, 0.0);
        for (w, zeta) in self.terms() {
            // (ζ + z)(ζ̄ − z̄) = 1 − |z|² + 2i Im(z ζ̄)
            let q = (zeta - v).norm_sqr();
            re += w * complement / q;
            im += w * 2.0 * (v * zeta.conj()).im / q;
        }
        HalfPlanePoint::new(Complex64::new(re, im))
            .expect("a sum of Poisson kernels with positive weights is positive")
    }

    /// `u(z) = Re f(z)`.
    pub fn eval_u(&self, z: DiscPoint) -> f64 {
        let v = z.value();
        let complement = z.one_minus_norm_sqr();
        self.terms().map(|(w, zeta)| w * complement / (zeta - v).norm_sqr()).sum()
    }

    /// `f′(z) = Σ 2 w_j ζ_j/(ζ_j − z)²`.
    pub fn eval_f_prime(&self, z: DiscPoint) -> Complex64 {
        let v = z.value();
        self.terms()
            .map(|(w, zeta)| {
                let d = zeta - v;
                2.0 * w * zeta / (d * d)
            })
            .sum()
    }

    /// `∇u(z)`, read off `f′ = u_x − i u_y`.
    pub fn grad_u(&self, z: DiscPoint) -> GradientVector {
        let fp = self.eval_f_prime(z);
        GradientVector { ux: fp.re, uy: -fp.im }
    }

    /// Central-difference estimate of `∇u(z)` with step `h`.
    pub fn grad_u_fd(&self, z: DiscPoint, h: f64) -> Result<GradientVector> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(domain(format!("finite-difference step {h} must be positive")));
        }
        let v = z.value();
        if !(z.modulus() + h < 1.0) {
            return Err(domain(format!("stencil of radius {h} around {v} leaves the disc")));
        }
        for probe in [v + h, v - h, v + Complex64::new(0.0, h), v - Complex64::new(0.0, h)] {
            DiscPoint::new(probe)?;
        }
        let (ux, uy) = central_gradient(
            |x, y| self.eval_u(DiscPoint::new(Complex64::new(x, y)).expect("probe checked above")),
            v.re,
            v.im,
            h,
        );
        Ok(GradientVector { ux, uy })
    }

    /// `|f^h(0)| = ρ_𝕂(f(0))|f′(0)|/ρ_𝕌(0) = |∇u(0)|/(2u(0))`.
    pub fn hyperbolic_derivative_zero(&self) -> f64 {
        let f0 = self.eval_f(DiscPoint::ORIGIN).value().re;
        self.eval_f_prime(DiscPoint::ORIGIN).norm() / (2.0 * f0)
    }

    /// `|u(z0) − (1/n) Σ_k u(z0 + ρ e^{2πik/n})|`.
    pub fn mean_value_check(&self, z0: DiscPoint, rho: f64, n: usize) -> Result<f64> {
        if n < 8 {
            return Err(domain(format!("mean-value check needs n >= 8, got {n}")));
        }
        if !(rho > 0.0 && z0.modulus() + rho < 1.0) {
            return Err(domain(format!("circle of radius {rho} about {} leaves the disc", z0.value())));
        }
        let centre = z0.value();
        let mut sum = 0.0;
        for k in 0..n {
            let p = centre + Complex64::from_polar(rho, TAU * k as f64 / n as f64);
            sum += self.eval_u(DiscPoint::new(p)?);
        }
        Ok((self.eval_u(z0) - sum / n as f64).abs())
    }
}

fn check_unit_parameter(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(domain(format!("extremal parameter c = {c} must lie in [0, 1]")));
    }
    Ok(())
}

impl TryFrom<Vec<Atom>> for HerglotzMeasure {
    type Error = Error;

    fn try_from(atoms: Vec<Atom>) -> Result<Self> {
        HerglotzMeasure::new(atoms)
    }
}

impl From<HerglotzMeasure> for Vec<Atom> {
    fn from(m: HerglotzMeasure) -> Self {
        m.atoms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dp(re: f64, im: f64) -> DiscPoint {
        DiscPoint::new(Complex64::new(re, im)).unwrap()
    }

    fn symmetric() -> HerglotzMeasure {
        HerglotzMeasure::from_pairs(&[(0.0, 0.5), (PI, 0.5)]).unwrap()
    }

    #[test]
    fn rejects_invalid_measures() {
        assert!(matches!(HerglotzMeasure::new(vec![]), Err(Error::InvalidMeasure(_))));
        assert!(HerglotzMeasure::single(0.0, 0.0).is_err());
        assert!(HerglotzMeasure::single(0.0, -1.0).is_err());
        assert!(HerglotzMeasure::single(f64::INFINITY, 1.0).is_err());
        assert!(serde_json::from_str::<HerglotzMeasure>("[]").is_err());
        assert!(serde_json::from_str::<HerglotzMeasure>(r#"[{"theta":0.0,"w":-2}]"#).is_err());
    }

    #[test]
    fn json_layout() {
        let m: HerglotzMeasure =
            serde_json::from_str(r#"[{"theta":0.0,"w":1.0},{"theta":1.0,"w":2.0}]"#).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.total_mass(), 3.0);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[{"theta":0.0,"w":1.0},{"theta":1.0,"w":2.0}]"#);
    }

    #[test]
    fn angles_are_reduced() {
        let m = HerglotzMeasure::single(-PI / 2.0, 1.0).unwrap();
        assert!((m.atoms()[0].theta - 1.5 * PI).abs() < 1e-15);
        let m = HerglotzMeasure::single(-1e-300, 1.0).unwrap();
        assert!(m.atoms()[0].theta < TAU);
    }

    #[test]
    fn eval_f_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        assert_eq!(m.eval_f(DiscPoint::ORIGIN).value(), Complex64::new(1.0, 0.0));
        assert!((m.eval_f(dp(0.5, 0.0)).value() - Complex64::new(3.0, 0.0)).norm() < 1e-15);

        // direct sum of the two Poisson terms at x = 0.3
        let expected = 0.5 * (1.3 / 0.7) + 0.5 * (0.7 / 1.3);
        let got = symmetric().eval_f(dp(0.3, 0.0)).value();
        assert!((got.re - expected).abs() < 1e-15);
        assert!((got.re - 1.197802197802198).abs() < 1e-14);
        assert!(got.im.abs() < 1e-16);
    }

    #[test]
    fn eval_u_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        assert_eq!(m.eval_u(DiscPoint::ORIGIN), 1.0);
        assert!((m.eval_u(dp(0.5, 0.0)) - 3.0).abs() < 1e-15);
        let m = HerglotzMeasure::from_pairs(&[(0.3, 0.7), (2.0, 1.1), (4.0, 0.25)]).unwrap();
        assert!((m.eval_u(DiscPoint::ORIGIN) - 2.05).abs() < 1e-15);
        assert_eq!(m.eval_f(DiscPoint::ORIGIN).value().im, 0.0);
    }

    #[test]
    fn f_prime_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        assert_eq!(m.eval_f_prime(DiscPoint::ORIGIN), Complex64::new(2.0, 0.0));
        assert!(symmetric().eval_f_prime(DiscPoint::ORIGIN).norm() < 1e-15);

        let m = HerglotzMeasure::single(PI / 2.0, 1.0).unwrap();
        let fp = m.eval_f_prime(DiscPoint::ORIGIN);
        assert!((fp - Complex64::new(0.0, -2.0)).norm() < 1e-15);
        // oracle: complex difference quotient of f along the real axis
        let h = 1e-6;
        let fd = (m.eval_f(dp(h, 0.0)).value() - m.eval_f(dp(-h, 0.0)).value()) / (2.0 * h);
        assert!((fd - fp).norm() < 1e-8);
    }

    #[test]
    fn gradient_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        assert_eq!(m.grad_u(DiscPoint::ORIGIN), GradientVector { ux: 2.0, uy: 0.0 });
        let g = symmetric().grad_u(DiscPoint::ORIGIN);
        assert!(g.norm() < 1e-15);

        let g = m.grad_u(dp(0.5, 0.0));
        assert!((g.ux - 8.0).abs() < 1e-14 && g.uy.abs() < 1e-14);
        let fd = m.grad_u_fd(dp(0.5, 0.0), DEFAULT_FD_STEP).unwrap();
        assert!((fd.ux - 8.0).abs() < 1e-5 && fd.uy.abs() < 1e-9);
    }

    #[test]
    fn fd_gradient_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        let fd = m.grad_u_fd(DiscPoint::ORIGIN, 1e-5).unwrap();
        assert!((fd.ux - 2.0).abs() < 1e-9 && fd.uy.abs() < 1e-9);
        let fd = symmetric().grad_u_fd(DiscPoint::ORIGIN, 1e-5).unwrap();
        assert!(fd.norm() < 1e-9);

        assert!(m.grad_u_fd(dp(0.99, 0.0), 0.02).is_err());
        assert!(m.grad_u_fd(DiscPoint::ORIGIN, 0.0).is_err());
    }

    #[test]
    fn fd_gradient_matches_analytic_for_five_atoms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let pairs: Vec<(f64, f64)> = (0..5)
            .map(|_| (rng.random::<f64>() * TAU, 0.1 + rng.random::<f64>() * 2.0))
            .collect();
        let m = HerglotzMeasure::from_pairs(&pairs).unwrap();
        let z = dp(0.3, 0.2);
        let exact = m.grad_u(z);
        let fd = m.grad_u_fd(z, 1e-5).unwrap();
        assert!(exact.distance(&fd) <= 1e-6 * exact.norm());
    }

    #[test]
    fn hyperbolic_derivative_examples() {
        assert_eq!(HerglotzMeasure::single(0.0, 1.0).unwrap().hyperbolic_derivative_zero(), 1.0);
        assert!(symmetric().hyperbolic_derivative_zero() < 1e-15);
        let m = HerglotzMeasure::from_pairs(&[(0.0, 0.75), (PI, 0.25)]).unwrap();
        assert!((m.hyperbolic_derivative_zero() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_collinear_atoms_are_not_extremal() {
        let m = HerglotzMeasure::from_pairs(&[(0.0, 1.0), (0.1, 1.0)]).unwrap();
        assert!(m.hyperbolic_derivative_zero() < 1.0);
        let m = HerglotzMeasure::from_pairs(&[(1.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!((m.hyperbolic_derivative_zero() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mean_value_examples() {
        let m = HerglotzMeasure::single(0.0, 1.0).unwrap();
        assert!(m.mean_value_check(DiscPoint::ORIGIN, 0.5, 256).unwrap() <= 1e-10);
        let m = HerglotzMeasure::from_pairs(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!(m.mean_value_check(dp(0.0, 0.2), 0.3, 512).unwrap() <= 1e-9);
        assert!(m.mean_value_check(dp(0.0, 0.2), 0.3, 4).is_err());
        assert!(m.mean_value_check(dp(0.0, 0.8), 0.3, 64).is_err());
    }

    #[test]
    fn extremal_measures_have_unit_mass_and_gradient_two_c() {
        for c in [0.0, 0.3, 0.5, 1.0] {
            for m in [
                HerglotzMeasure::upper_extremal(c, 0.7).unwrap(),
                HerglotzMeasure::lower_extremal(c, 0.7).unwrap(),
            ] {
                assert!((m.total_mass() - 1.0).abs() < 1e-15);
                assert!((m.grad_u(DiscPoint::ORIGIN).norm() - 2.0 * c).abs() < 1e-14);
            }
        }
        assert!(HerglotzMeasure::upper_extremal(1.5, 0.0).is_err());
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
        fn u_is_positive_and_matches_f(m in measure_strategy(), z in disc_strategy(0.999)) {
            let u = m.eval_u(z);
            prop_assert!(u > 0.0);
            prop_assert!((m.eval_f(z).value().re - u).abs() <= 1e-12 * u);
        }

        #[test]
        fn gradient_norm_equals_f_prime_modulus(m in measure_strategy(), z in disc_strategy(0.99)) {
            let g = m.grad_u(z);
            prop_assert!((g.norm() - m.eval_f_prime(z).norm()).abs() <= 1e-12 * g.norm().max(1.0));
        }

        #[test]
        fn hyperbolic_derivative_at_most_one(m in measure_strategy()) {
            prop_assert!(m.hyperbolic_derivative_zero() <= 1.0 + 1e-14);
        }

        #[test]
        fn json_round_trip(m in measure_strategy()) {
            let s = serde_json::to_string(&m).unwrap();
            let back: HerglotzMeasure = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
