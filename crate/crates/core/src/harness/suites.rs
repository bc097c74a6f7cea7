//! The property catalogue.
//!
//! A suite enumerates cases (seeded random draws or a fixed grid) and maps
//! each case to a margin. A case fails when `margin < −tolerance`, or for
//! strict suites when `margin ≤ 0`. Every case is a plain serialisable value
//! so a recorded witness can be replayed on its own.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampling::{case_rng, sample_disc_point, sample_measure, uniform};
use super::TrialConfig;
use crate::bounds::{
    beardon_carne_slack, classical_harnack, extremal_u1, extremal_u2, gradient_norm_extremal,
    lemma2_identity_gap, markovic_lhs_general, markovic_slack, schwarz_pick_gradient_slack,
    stronger_harnack, stronger_harnack_for, Extremal,
};
use crate::error::{Error, Result};
use crate::herglotz::{HerglotzMeasure, DEFAULT_FD_STEP};
use crate::hyperbolic::{
    artanh, cayley_to_disc, cayley_to_halfplane, disc_automorphism, dist_disc, dist_halfplane,
    halfplane_chart, halfplane_disc_image, halfplane_disc_re_interval, DiscPoint, HalfPlanePoint,
};
use crate::oracle::segment_length;

/// Largest `|z|` used by the Cayley round-trip suite.
pub const ROUND_TRIP_RMAX: f64 = 0.999;
/// Largest `|z|` used by the gradient oracle suite.
pub const GRADIENT_RMAX: f64 = 0.9;
/// Case budget of the finite-difference gradient suite.
pub const GRADIENT_CASES: u64 = 10_000;
/// Case budget of the mean-value suite.
pub const HARMONICITY_CASES: u64 = 1_000;
/// Samples on each mapped circle in the disc-image suites.
pub const DISC_IMAGE_SAMPLES: usize = 4096;
/// Quadrature points of the mean-value suite.
pub const MEAN_VALUE_POINTS: usize = 512;
/// Every `MAIN_THEOREM_EXTREMAL_EVERY`-th main-theorem case is an extremal
/// measure evaluated on its extremal ray.
pub const MAIN_THEOREM_EXTREMAL_EVERY: u64 = 8;

const GRID_T: usize = 200;
const GRID_C: usize = 101;
const GRID_T_MAX: f64 = 0.99;
const SHARPNESS_C: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const DISC_IMAGE_B: [f64; 3] = [0.5, 1.0, 2.0];

/// Inputs of a single case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Case {
    Automorphism { c: Complex64, z1: DiscPoint, z2: DiscPoint },
    PointPair { z1: DiscPoint, z2: DiscPoint },
    Point { z: DiscPoint },
    Radius { t: f64 },
    DiscImage { b: f64, r: f64 },
    Measure { measure: HerglotzMeasure },
    MeasurePoint { measure: HerglotzMeasure, z: DiscPoint },
    MeasurePair { measure: HerglotzMeasure, z1: DiscPoint, z2: DiscPoint },
    MeanValue { measure: HerglotzMeasure, z0: DiscPoint, rho: f64, n: usize },
    Grid { t: f64, c: f64 },
    Extremal { c: f64, x: f64 },
    ExtremalGradient { c: f64, which: Extremal },
}

macro_rules! suites {
    ($($variant:ident => $name:literal, $tol:expr, $strict:expr;)*) => {
        /// Named property suites.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum SuiteId { $($variant,)* }

        impl SuiteId {
            pub const ALL: &'static [SuiteId] = &[$(SuiteId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(SuiteId::$variant => $name,)* }
            }

            pub fn default_tolerance(self) -> f64 {
                match self { $(SuiteId::$variant => $tol,)* }
            }

            /// Strict suites also reject a margin of exactly zero.
            pub fn strict(self) -> bool {
                match self { $(SuiteId::$variant => $strict,)* }
            }
        }

        impl FromStr for SuiteId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(SuiteId::$variant),)*
                    other => Err(Error::Usage(format!("unknown suite `{other}`"))),
                }
            }
        }
    };
}

suites! {
    // hyperbolic geometry
    IsometryInvariance => "isometry_invariance", 1e-10, false;
    CayleyIsometry => "cayley_isometry", 1e-10, false;
    RadialClosedForm => "radial_closed_form", 1e-10, false;
    GeodesicIntegration => "geodesic_integration", 1e-6, false;
    DiscImageBoundary => "disc_image_boundary", 1e-9, false;
    DiscImageInterval => "disc_image_interval", 1e-6, false;
    RoundTrip => "round_trip", 1e-14, false;
    // harmonic functions
    Positivity => "positivity", 0.0, true;
    NormalizationAtZero => "normalization_at_zero", 1e-12, false;
    GradientConsistency => "gradient_consistency", 1e-6, false;
    SchwarzPickGradient => "schwarz_pick_gradient", 1e-12, false;
    SchwarzPickEquality => "schwarz_pick_equality", 1e-10, false;
    HyperbolicDerivativeBound => "hyperbolic_derivative_bound", 1e-14, false;
    HyperbolicDerivativeExtremal => "hyperbolic_derivative_extremal", 1e-12, false;
    Harmonicity => "harmonicity", 1e-9, false;
    // bounds
    MainTheorem => "main_theorem", 1e-9, false;
    Containment => "containment", 1e-12, false;
    ExtremalSharpness => "extremal_sharpness", 1e-9, false;
    ExtremalGradient => "extremal_gradient", 1e-6, false;
    Lemma2Identity => "lemma2_identity", 1e-12, false;
    Markovic => "markovic", 1e-10, false;
    BeardonCarne => "beardon_carne", 1e-10, false;
    ExtremalEquality => "extremal_equality", 1e-10, false;
    Monotonicity => "monotonicity", 0.0, true;
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn grid_t(i: usize) -> f64 {
    GRID_T_MAX * i as f64 / (GRID_T - 1) as f64
}

fn grid_c(j: usize) -> f64 {
    j as f64 / (GRID_C - 1) as f64
}

fn geodesic_radii() -> Vec<f64> {
    // 0.10, 0.15, ..., 0.95
    (2..=19).map(|k| k as f64 * 0.05).collect()
}

fn equality_axis() -> Vec<f64> {
    (0..=20).map(|k| -0.99 + 0.099 * k as f64).collect()
}

fn disc(z: Complex64) -> DiscPoint {
    DiscPoint::new(z).expect("generated point lies inside the disc")
}

fn measure(pairs: &[(f64, f64)]) -> HerglotzMeasure {
    HerglotzMeasure::from_pairs(pairs).expect("generated measure is valid")
}

impl SuiteId {
    /// Number of cases the suite evaluates under `config`.
    pub fn case_count(self, config: &TrialConfig) -> u64 {
        use SuiteId::*;
        match self {
            RadialClosedForm => 99,
            GeodesicIntegration => geodesic_radii().len() as u64,
            DiscImageBoundary | DiscImageInterval => (DISC_IMAGE_B.len() * 9) as u64,
            SchwarzPickEquality => 8 * 12 * 16,
            Containment | Lemma2Identity | Monotonicity => (GRID_T * GRID_C) as u64,
            ExtremalSharpness => (SHARPNESS_C.len() * 100) as u64,
            ExtremalGradient => (SHARPNESS_C.len() * 2) as u64,
            ExtremalEquality => 2 * 3 * 21 * 21,
            GradientConsistency => config.trials.min(GRADIENT_CASES),
            Harmonicity => config.trials.min(HARMONICITY_CASES),
            _ => config.trials,
        }
    }

    /// The `index`-th case under `config`.
    pub fn case(self, config: &TrialConfig, index: u64) -> Case {
        use SuiteId::*;
        let mut rng = case_rng(config.seed, self.name(), index);
        let rmax = config.rmax;
        let i = index as usize;
        let random_measure = |rng: &mut _| sample_measure(rng, config.max_atoms, config.weight_range);
        match self {
            IsometryInvariance => Case::Automorphism {
                c: sample_disc_point(&mut rng, rmax).value(),
                z1: sample_disc_point(&mut rng, rmax),
                z2: sample_disc_point(&mut rng, rmax),
            },
            CayleyIsometry => Case::PointPair {
                z1: sample_disc_point(&mut rng, rmax),
                z2: sample_disc_point(&mut rng, rmax),
            },
            RadialClosedForm => Case::Radius { t: (i + 1) as f64 / 100.0 },
            GeodesicIntegration => Case::Radius { t: geodesic_radii()[i] },
            DiscImageBoundary | DiscImageInterval => Case::DiscImage {
                b: DISC_IMAGE_B[i / 9],
                r: (i % 9 + 1) as f64 / 10.0,
            },
            RoundTrip => Case::Point { z: sample_disc_point(&mut rng, ROUND_TRIP_RMAX) },
            Positivity | NormalizationAtZero | SchwarzPickGradient | BeardonCarne => {
                let measure = random_measure(&mut rng);
                let z = sample_disc_point(&mut rng, rmax);
                Case::MeasurePoint { measure, z }
            }
            GradientConsistency => {
                let measure = random_measure(&mut rng);
                let z = sample_disc_point(&mut rng, rmax.min(GRADIENT_RMAX));
                Case::MeasurePoint { measure, z }
            }
            SchwarzPickEquality => {
                let atom = i / (12 * 16);
                let radius = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99][(i / 16) % 12];
                let angle = TAU * (i % 16) as f64 / 16.0;
                Case::MeasurePoint {
                    measure: measure(&[(TAU * atom as f64 / 8.0, 0.5 + atom as f64)]),
                    z: disc(Complex64::from_polar(radius, angle)),
                }
            }
            HyperbolicDerivativeBound => Case::Measure { measure: random_measure(&mut rng) },
            HyperbolicDerivativeExtremal => Case::Measure {
                measure: sample_measure(&mut rng, 1, config.weight_range),
            },
            Harmonicity => {
                let measure = random_measure(&mut rng);
                let z0 = sample_disc_point(&mut rng, 0.5);
                let rho = uniform(&mut rng, 0.05, 0.3);
                Case::MeanValue { measure, z0, rho, n: MEAN_VALUE_POINTS }
            }
            MainTheorem if index % MAIN_THEOREM_EXTREMAL_EVERY == MAIN_THEOREM_EXTREMAL_EVERY - 1 => {
                let c = rng.random::<f64>();
                let alpha = TAU * rng.random::<f64>();
                let measure = if rng.random::<bool>() {
                    HerglotzMeasure::upper_extremal(c, alpha)
                } else {
                    HerglotzMeasure::lower_extremal(c, alpha)
                }
                .expect("c drawn from [0, 1)");
                let x = rmax * rng.random::<f64>();
                Case::MeasurePoint { measure, z: disc(Complex64::from_polar(x, alpha)) }
            }
            MainTheorem => {
                let measure = random_measure(&mut rng);
                let z = sample_disc_point(&mut rng, rmax);
                Case::MeasurePoint { measure, z }
            }
            Containment | Lemma2Identity | Monotonicity => Case::Grid {
                t: grid_t(i / GRID_C),
                c: grid_c(i % GRID_C),
            },
            ExtremalSharpness => Case::Extremal {
                c: SHARPNESS_C[i / 100],
                x: (i % 100) as f64 / 100.0,
            },
            ExtremalGradient => Case::ExtremalGradient {
                c: SHARPNESS_C[i / 2],
                which: if i.is_multiple_of(2) { Extremal::U1 } else { Extremal::U2 },
            },
            Markovic => {
                let measure = random_measure(&mut rng);
                let z1 = sample_disc_point(&mut rng, rmax);
                let z2 = sample_disc_point(&mut rng, rmax);
                Case::MeasurePair { measure, z1, z2 }
            }
            ExtremalEquality => {
                let axis = equality_axis();
                let theta = if i / (3 * 441) == 0 { 0.0 } else { PI };
                let w = [0.5, 1.0, 3.0][(i / 441) % 3];
                Case::MeasurePair {
                    measure: measure(&[(theta, w)]),
                    z1: disc(Complex64::new(axis[(i % 441) / 21], 0.0)),
                    z2: disc(Complex64::new(axis[i % 21], 0.0)),
                }
            }
        }
    }

    /// Margin of one case; see the module docs for the pass rule.
    pub fn evaluate(self, case: &Case) -> Result<f64> {
        use SuiteId::*;
        let mismatch = || Error::Usage(format!("case {case:?} does not belong to suite `{self}`"));
        let margin = match (self, case) {
            (IsometryInvariance, Case::Automorphism { c, z1, z2 }) => {
                let m1 = DiscPoint::new(disc_automorphism(*c, *z1)?)?;
                let m2 = DiscPoint::new(disc_automorphism(*c, *z2)?)?;
                -(dist_disc(m1, m2) - dist_disc(*z1, *z2)).abs()
            }
            (CayleyIsometry, Case::PointPair { z1, z2 }) => {
                let direct = dist_disc(*z1, *z2);
                let via = dist_halfplane(cayley_to_halfplane(*z1), cayley_to_halfplane(*z2))?;
                -(via - direct).abs()
            }
            (RadialClosedForm, Case::Radius { t }) => {
                let d = dist_disc(DiscPoint::real(*t)?, DiscPoint::ORIGIN);
                -(d - ((1.0 + t) / (1.0 - t)).ln()).abs()
            }
            (GeodesicIntegration, Case::Radius { t }) => {
                let d = dist_disc(DiscPoint::real(*t)?, DiscPoint::ORIGIN);
                let rho = |z: Complex64| 2.0 / (1.0 - z.norm_sqr());
                let integral = segment_length(rho, Complex64::new(0.0, 0.0), Complex64::new(*t, 0.0), 1e-11);
                -(d - integral).abs()
            }
            (DiscImageBoundary, Case::DiscImage { b, r }) => {
                let image = halfplane_disc_image(*b, *r)?;
                let centre = HalfPlanePoint::real(*b)?;
                let radius = 2.0 * artanh(*r);
                let mut worst: f64 = 0.0;
                for p in mapped_circle(*b, *r)? {
                    worst = worst.max(image.boundary_distance(p.value()));
                    worst = worst.max((dist_halfplane(p, centre)? - radius).abs());
                }
                -worst
            }
            (DiscImageInterval, Case::DiscImage { b, r }) => {
                let interval = halfplane_disc_re_interval(*b, *r)?;
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for p in mapped_circle(*b, *r)? {
                    lo = lo.min(p.value().re);
                    hi = hi.max(p.value().re);
                }
                let from_disc = halfplane_disc_image(*b, *r)?.re_interval();
                -[
                    (lo - interval.lower).abs() / interval.lower,
                    (hi - interval.upper).abs() / interval.upper,
                    (from_disc.lower - interval.lower).abs() / interval.lower,
                    (from_disc.upper - interval.upper).abs() / interval.upper,
                ]
                .into_iter()
                .fold(0.0, f64::max)
            }
            (RoundTrip, Case::Point { z }) => {
                let back = cayley_to_disc(cayley_to_halfplane(*z))?;
                -(back.value() - z.value()).norm()
            }
            (Positivity, Case::MeasurePoint { measure, z }) => measure.eval_u(*z),
            (NormalizationAtZero, Case::MeasurePoint { measure, .. }) => {
                let f0 = measure.eval_f(DiscPoint::ORIGIN).value();
                let u0 = measure.eval_u(DiscPoint::ORIGIN);
                -(u0 - measure.total_mass()).abs().max(f0.im.abs())
            }
            (GradientConsistency, Case::MeasurePoint { measure, z }) => {
                let exact = measure.grad_u(*z);
                if exact.norm() <= 1e-8 {
                    0.0
                } else {
                    -exact.distance(&measure.grad_u_fd(*z, DEFAULT_FD_STEP)?) / exact.norm()
                }
            }
            (SchwarzPickGradient, Case::MeasurePoint { measure, z }) => {
                schwarz_pick_gradient_slack(measure, *z).normalized()
            }
            (SchwarzPickEquality, Case::MeasurePoint { measure, z }) => {
                let s = schwarz_pick_gradient_slack(measure, *z);
                -s.slack.abs() / s.rhs
            }
            (HyperbolicDerivativeBound, Case::Measure { measure }) => {
                1.0 - measure.hyperbolic_derivative_zero()
            }
            (HyperbolicDerivativeExtremal, Case::Measure { measure }) => {
                -(measure.hyperbolic_derivative_zero() - 1.0).abs()
            }
            (Harmonicity, Case::MeanValue { measure, z0, rho, n }) => {
                -measure.mean_value_check(*z0, *rho, *n)?
            }
            (MainTheorem, Case::MeasurePoint { measure, z }) => {
                let ratio = measure.eval_u(*z) / measure.eval_u(DiscPoint::ORIGIN);
                stronger_harnack_for(measure, *z)?.relative_margin(ratio)
            }
            (Containment, Case::Grid { t, c }) => {
                let z = DiscPoint::real(*t)?;
                let strong = stronger_harnack(z, *c)?;
                let classical = classical_harnack(z);
                let inner = (strong.lower - classical.lower).min(classical.upper - strong.upper);
                if *c == 1.0 {
                    -(strong.lower - classical.lower).abs().max((strong.upper - classical.upper).abs())
                } else {
                    inner
                }
            }
            (ExtremalSharpness, Case::Extremal { c, x }) => {
                let z = DiscPoint::real(*x)?;
                let bound = stronger_harnack(z, *c)?;
                let u1 = extremal_u1(*c, z)?;
                let u2 = extremal_u2(*c, z)?;
                -((u1 - bound.upper).abs() / bound.upper).max((u2 - bound.lower).abs() / bound.lower)
            }
            (ExtremalGradient, Case::ExtremalGradient { c, which }) => {
                -(gradient_norm_extremal(*c, *which)? - 2.0 * c).abs()
            }
            (Lemma2Identity, Case::Grid { t, c }) => -lemma2_identity_gap(*c, *t)?,
            (Monotonicity, Case::Grid { t, c }) => monotonicity_margin(*t, *c)?,
            (Markovic, Case::MeasurePair { measure, z1, z2 }) => {
                let s = markovic_slack(measure, *z1, *z2);
                let general = markovic_lhs_general(measure, *z1, *z2)?;
                s.normalized().min(-(general - s.lhs).abs())
            }
            (BeardonCarne, Case::MeasurePoint { measure, z }) => beardon_carne_slack(measure, *z)?.normalized(),
            (ExtremalEquality, Case::MeasurePair { measure, z1, z2 }) => {
                let m = markovic_slack(measure, *z1, *z2);
                let b = beardon_carne_slack(measure, *z1)?;
                -m.normalized().abs().max(b.normalized().abs())
            }
            _ => return Err(mismatch()),
        };
        Ok(margin)
    }

    /// Whether `margin` fails the suite at tolerance `tol`.
    pub fn is_violation(self, margin: f64, tol: f64) -> bool {
        !(margin >= -tol) || (self.strict() && margin <= 0.0)
    }
}

/// `κ_b(r e^{2πik/N})` for `k < DISC_IMAGE_SAMPLES`.
fn mapped_circle(b: f64, r: f64) -> Result<Vec<HalfPlanePoint>> {
    (0..DISC_IMAGE_SAMPLES)
        .map(|k| {
            let z = DiscPoint::from_polar(r, TAU * k as f64 / DISC_IMAGE_SAMPLES as f64)?;
            halfplane_chart(b, z)
        })
        .collect()
}

/// Smallest forward increment of the upper sharpened bound, in `c` (for
/// `t > 0`) and in `t`, from grid node `(t, c)`.
fn monotonicity_margin(t: f64, c: f64) -> Result<f64> {
    let upper = |t: f64, c: f64| -> Result<f64> { Ok(stronger_harnack(DiscPoint::real(t)?, c)?.upper) };
    let here = upper(t, c)?;
    let mut margin = f64::INFINITY;
    let dc = 1.0 / (GRID_C - 1) as f64;
    if t > 0.0 && c + dc <= 1.0 + 1e-12 {
        margin = margin.min(upper(t, (c + dc).min(1.0))? - here);
    }
    let dt = GRID_T_MAX / (GRID_T - 1) as f64;
    if t + dt <= GRID_T_MAX + 1e-12 {
        margin = margin.min(upper((t + dt).min(GRID_T_MAX), c)? - here);
    }
    Ok(margin)
}
