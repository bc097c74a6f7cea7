//! Seeded generation of measures and disc points.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::herglotz::{Atom, HerglotzMeasure};
use crate::hyperbolic::DiscPoint;

/// Human-readable identity of the generator, recorded in every report.
pub const GENERATOR: &str =
    "ChaCha8Rng (rand_chacha 0.9); key = seed_from_u64(seed ^ fnv1a64(suite)); stream = case index";

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Independent substream for case `index` of `suite`. Results never depend
/// on which worker draws a case or in which order.
pub fn case_rng(seed: u64, suite: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a64(suite.as_bytes()));
    rng.set_stream(index);
    rng
}

/// Uniform draw from `[lo, hi]`; returns `lo` exactly when the range is degenerate.
pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// `1..=max_atoms` atoms with angles uniform on `[0, 2π)` and weights
/// uniform in `weight_range`.
pub fn sample_measure<R: Rng>(rng: &mut R, max_atoms: usize, weight_range: (f64, f64)) -> HerglotzMeasure {
    let n = rng.random_range(1..=max_atoms.max(1));
    let atoms = (0..n)
        .map(|_| Atom {
            theta: TAU * rng.random::<f64>(),
            w: uniform(rng, weight_range.0, weight_range.1),
        })
        .collect();
    HerglotzMeasure::new(atoms).expect("sampled weights are positive")
}

/// Area-uniform point of `{|z| ≤ rmax}`: radius `rmax·sqrt(U)`, uniform angle.
pub fn sample_disc_point<R: Rng>(rng: &mut R, rmax: f64) -> DiscPoint {
    let r = rmax * rng.random::<f64>().sqrt();
    let theta = TAU * rng.random::<f64>();
    DiscPoint::new(Complex64::from_polar(r, theta)).expect("rmax < 1 keeps samples inside the disc")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let a = sample_measure(&mut case_rng(9, "s", 3), 8, (0.1, 10.0));
        let b = sample_measure(&mut case_rng(9, "s", 3), 8, (0.1, 10.0));
        assert_eq!(a, b);
        let c = sample_disc_point(&mut case_rng(9, "s", 4), 0.9);
        let d = sample_disc_point(&mut case_rng(9, "t", 4), 0.9);
        assert_ne!(c, d);
    }

    #[test]
    fn single_atom_and_unit_weights() {
        for i in 0..50 {
            let m = sample_measure(&mut case_rng(1, "x", i), 1, (0.1, 10.0));
            assert_eq!(m.len(), 1);
            let m = sample_measure(&mut case_rng(1, "y", i), 8, (1.0, 1.0));
            assert!(m.atoms().iter().all(|a| a.w == 1.0));
            assert!(m.len() <= 8);
        }
    }

    #[test]
    fn zero_radius_gives_origin() {
        let z = sample_disc_point(&mut case_rng(1, "z", 0), 0.0);
        assert_eq!(z.value().norm(), 0.0);
    }

    #[test]
    fn points_are_area_uniform() {
        let rmax = 0.9;
        let n = 100_000;
        let mut rng = case_rng(5, "area", 0);
        let mut mean = 0.0;
        for _ in 0..n {
            let z = sample_disc_point(&mut rng, rmax);
            assert!(z.modulus() <= rmax);
            mean += z.value().norm_sqr();
        }
        mean /= n as f64;
        let expected = rmax * rmax / 2.0;
        assert!((mean - expected).abs() <= 0.01 * expected, "mean |z|^2 = {mean}");
    }
}
