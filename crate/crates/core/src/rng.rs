//! Deterministic random sampling shared by the experiment modules.
//!
//! Every experiment draws its randomness from a counter-based scheme: one
//! ChaCha8 stream per sample, keyed by (seed, sample index). Results are
//! therefore independent of how samples are partitioned across workers.
//!
//! Gaussian variates use the polar-free Box-Muller transform with a fixed
//! convention (u1 in (0,1], u2 in [0,1), z = sqrt(-2 ln u1) * cos/sin(2 pi u2))
//! so that golden values are portable across platforms.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::mat2::{Mat2, MatrixPair};

/// Entry distribution for random matrix pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dist {
    /// Independent standard normal real entries.
    Real,
    /// Independent standard normal real and imaginary parts.
    Complex,
}

impl Dist {
    pub fn is_complex(self) -> bool {
        matches!(self, Dist::Complex)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Real => write!(f, "real"),
            Dist::Complex => write!(f, "complex"),
        }
    }
}

impl FromStr for Dist {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Dist::Real),
            "complex" => Ok(Dist::Complex),
            other => Err(format!("unknown distribution {other:?}; use real or complex")),
        }
    }
}

/// RNG for sample `index` of the experiment keyed by `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One pair of independent standard normal variates.
pub fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

/// A 2x2 matrix with independent standard normal entries; in complex mode the
/// real and imaginary parts are drawn independently (8 variates per matrix in
/// real mode, 16 in complex mode, consumed in row-major entry order).
pub fn gaussian_mat2(rng: &mut ChaCha8Rng, complex: bool) -> Mat2 {
    let mut entries = [Complex64::new(0.0, 0.0); 4];
    if complex {
        for e in &mut entries {
            let (re, im) = normal_pair(rng);
            *e = Complex64::new(re, im);
        }
    } else {
        for k in [0, 2] {
            let (a, b) = normal_pair(rng);
            entries[k] = Complex64::new(a, 0.0);
            entries[k + 1] = Complex64::new(b, 0.0);
        }
    }
    Mat2::new(entries[0], entries[1], entries[2], entries[3])
}

/// A pair of independent Gaussian matrices.
pub fn gaussian_pair(rng: &mut ChaCha8Rng, dist: Dist) -> MatrixPair {
    let first = gaussian_mat2(rng, dist.is_complex());
    let second = gaussian_mat2(rng, dist.is_complex());
    MatrixPair::new(first, second)
}

/// A complex Gaussian matrix rescaled to determinant one. Draws whose
/// determinant has absolute value below 1e-12 are discarded and resampled.
pub fn det1_complex_mat2(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = gaussian_mat2(rng, true);
        let d = m.det();
        if d.norm() < 1e-12 {
            continue;
        }
        return m.scale(d.sqrt().inv());
    }
}

/// A pair of independent det-1 complex Gaussian matrices.
pub fn det1_complex_pair(rng: &mut ChaCha8Rng) -> MatrixPair {
    let first = det1_complex_mat2(rng);
    let second = det1_complex_mat2(rng);
    MatrixPair::new(first, second)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_independent() {
        let mut a = stream_rng(7, 0);
        let mut b = stream_rng(7, 0);
        assert_eq!(a.random::<u64>(), b.random::<u64>());

        let mut c = stream_rng(7, 1);
        let mut d = stream_rng(8, 0);
        let x = stream_rng(7, 0).random::<u64>();
        assert_ne!(x, c.random::<u64>());
        assert_ne!(x, d.random::<u64>());
    }

    #[test]
    fn normal_moments() {
        let n = 10_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for i in 0..n {
            let mut rng = stream_rng(99, i);
            let (a, b) = normal_pair(&mut rng);
            sum += a + b;
            sumsq += a * a + b * b;
        }
        let count = (2 * n) as f64;
        let mean = sum / count;
        let var = sumsq / count - mean * mean;
        // 5 sigma bands for standard normal statistics.
        assert!(mean.abs() < 5.0 / count.sqrt(), "mean {mean}");
        assert!((var - 1.0).abs() < 5.0 * (2.0 / count).sqrt(), "var {var}");
    }

    #[test]
    fn det1_sampling_produces_unit_determinant() {
        for i in 0..50 {
            let mut rng = stream_rng(3, i);
            let m = det1_complex_mat2(&mut rng);
            assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn real_mode_has_zero_imaginary_parts() {
        let mut rng = stream_rng(5, 0);
        let p = gaussian_pair(&mut rng, Dist::Real);
        for m in [p.first, p.second] {
            for e in [m.a11, m.a12, m.a21, m.a22] {
                assert_eq!(e.im, 0.0);
            }
        }
    }
}
