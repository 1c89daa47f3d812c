//! 2x2 complex matrices: spectral radius, word evaluation, and determinant
//! normalization of pairs. Real matrices are the zero-imaginary special case.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::Word;

/// Default relative tolerance for comparing spectral radii. Products of up to
/// eight double-precision matrices lose roughly three digits, so 1e-9 leaves
/// ample headroom.
pub const SPECTRAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum Mat2Error {
    #[error("det(AB) = 0: pair cannot be scaled to det 1, use a limit argument")]
    SingularProduct,
}

/// Row-major [[re, im]; 4] wire form.
type Mat2Wire = [[f64; 2]; 4];

/// A 2x2 matrix with complex entries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Mat2Wire", into = "Mat2Wire")]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl From<Mat2Wire> for Mat2 {
    fn from(w: Mat2Wire) -> Self {
        Mat2 {
            a11: Complex64::new(w[0][0], w[0][1]),
            a12: Complex64::new(w[1][0], w[1][1]),
            a21: Complex64::new(w[2][0], w[2][1]),
            a22: Complex64::new(w[3][0], w[3][1]),
        }
    }
}

impl From<Mat2> for Mat2Wire {
    fn from(m: Mat2) -> Self {
        [
            [m.a11.re, m.a11.im],
            [m.a12.re, m.a12.im],
            [m.a21.re, m.a21.im],
            [m.a22.re, m.a22.im],
        ]
    }
}

impl Mat2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    /// Real matrix from row-major entries.
    pub fn from_real(e: [f64; 4]) -> Self {
        Mat2 {
            a11: Complex64::new(e[0], 0.0),
            a12: Complex64::new(e[1], 0.0),
            a21: Complex64::new(e[2], 0.0),
            a22: Complex64::new(e[3], 0.0),
        }
    }

    pub fn identity() -> Self {
        Mat2::from_real([1.0, 0.0, 0.0, 1.0])
    }

    pub fn zero() -> Self {
        Mat2::from_real([0.0; 4])
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn scale(&self, k: Complex64) -> Mat2 {
        Mat2 {
            a11: k * self.a11,
            a12: k * self.a12,
            a21: k * self.a21,
            a22: k * self.a22,
        }
    }

    /// Maximum absolute value of the eigenvalues, from the closed-form roots
    /// of lambda^2 - tr*lambda + det = 0 with a complex square root. A single
    /// code path covers real and complex spectra alike.
    pub fn spectral_radius(&self) -> f64 {
        let t = self.trace();
        let d = self.det();
        let s = (t * t - 4.0 * d).sqrt();
        let l1 = (t + s) * 0.5;
        let l2 = (t - s) * 0.5;
        l1.norm().max(l2.norm())
    }

    pub fn pow(&self, k: u32) -> Mat2 {
        let mut out = Mat2::identity();
        for _ in 0..k {
            out = out * *self;
        }
        out
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 + rhs.a11,
            a12: self.a12 + rhs.a12,
            a21: self.a21 + rhs.a21,
            a22: self.a22 + rhs.a22,
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 - rhs.a11,
            a12: self.a12 - rhs.a12,
            a21: self.a21 - rhs.a21,
            a22: self.a22 - rhs.a22,
        }
    }
}

/// An ordered pair of matrices; the first is substituted for symbol 1, the
/// second for symbol 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixPair {
    pub first: Mat2,
    pub second: Mat2,
}

impl MatrixPair {
    pub fn new(first: Mat2, second: Mat2) -> Self {
        MatrixPair { first, second }
    }
}

/// Left-to-right product with 1 -> first and 2 -> second, so that
/// `evaluate_word(uv) = evaluate_word(u) * evaluate_word(v)`.
pub fn evaluate_word(w: &Word, p: &MatrixPair) -> Mat2 {
    let mut out = None;
    for &s in w.symbols() {
        let m = if s == 1 { p.first } else { p.second };
        out = Some(match out {
            None => m,
            Some(acc) => acc * m,
        });
    }
    out.expect("words are nonempty")
}

/// rho(P(w))^(1/len(w)).
pub fn normalized_spectral_radius(w: &Word, p: &MatrixPair) -> f64 {
    evaluate_word(w, p)
        .spectral_radius()
        .powf(1.0 / w.len() as f64)
}

/// Orders the spectral radii of two real det-1 matrices by their traces
/// alone: the second matrix dominates iff |t_b| > max(2, |t_a|).
///
/// Returns the ordering of rho(B) relative to rho(A), where `t_a = tr(A)` and
/// `t_b = tr(B)`: `Greater` means rho(B) > rho(A).
pub fn compare_rho_sl2(t_a: f64, t_b: f64) -> Ordering {
    if t_b.abs() > f64::max(2.0, t_a.abs()) {
        Ordering::Greater
    } else if t_a.abs() > f64::max(2.0, t_b.abs()) {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Scales a pair (A, B) to (aA, bB) with det((aA)(bB)) = 1, choosing a = b.
/// Only the product ab matters; with a = b the product a^2 comes out real
/// when det(AB) > 0 and purely imaginary when det(AB) < 0.
pub fn normalize_pair(p: &MatrixPair) -> Result<MatrixPair, Mat2Error> {
    let d = (p.first * p.second).det();
    if d.norm() == 0.0 {
        return Err(Mat2Error::SingularProduct);
    }
    let mut recip = d.inv();
    if recip.im == 0.0 {
        // Clear a possible -0.0 so negative real determinants take the
        // principal branch (purely imaginary ab with positive sign).
        recip.im = 0.0;
    }
    let a = recip.powf(0.25);
    Ok(MatrixPair {
        first: p.first.scale(a),
        second: p.second.scale(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{gaussian_mat2, stream_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn nilpotent_pair() -> MatrixPair {
        MatrixPair::new(
            Mat2::from_real([0.0, 1.0, 0.0, 0.0]),
            Mat2::from_real([0.0, 0.0, 1.0, 0.0]),
        )
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * f64::max(1.0, f64::max(a.abs(), b.abs()))
    }

    /// Power-iteration estimate of the dominant eigenvalue modulus,
    /// independent of the closed-form eigenvalue path. Returns the Rayleigh
    /// quotient modulus together with the residual ||Mv - lambda v||, which
    /// certifies whether the iteration converged (it cannot when the two
    /// eigenvalue moduli are too close to separate within `iters` steps).
    fn power_iteration_radius(m: &Mat2, iters: usize) -> (f64, f64) {
        let mut v = (c(1.0, 0.0), c(0.7, 0.3));
        let norm0 = (v.0.norm_sqr() + v.1.norm_sqr()).sqrt();
        v = (v.0 / norm0, v.1 / norm0);
        for _ in 0..iters {
            let nv = (m.a11 * v.0 + m.a12 * v.1, m.a21 * v.0 + m.a22 * v.1);
            let norm = (nv.0.norm_sqr() + nv.1.norm_sqr()).sqrt();
            if norm == 0.0 {
                return (0.0, 0.0);
            }
            v = (nv.0 / norm, nv.1 / norm);
        }
        let mv = (m.a11 * v.0 + m.a12 * v.1, m.a21 * v.0 + m.a22 * v.1);
        let lambda = v.0.conj() * mv.0 + v.1.conj() * mv.1;
        let res = ((mv.0 - lambda * v.0).norm_sqr() + (mv.1 - lambda * v.1).norm_sqr()).sqrt();
        (lambda.norm(), res)
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(Mat2::from_real([0.0, 1.0, 0.0, 0.0]).spectral_radius(), 0.0);
        assert_eq!(Mat2::identity().spectral_radius(), 1.0);
        assert_eq!(Mat2::from_real([1.0, 0.0, 0.0, 0.0]).spectral_radius(), 1.0);
    }

    #[test]
    fn spectral_radius_complex_spectrum() {
        // Rotation by 90 degrees: eigenvalues +-i, radius 1.
        let rot = Mat2::from_real([0.0, -1.0, 1.0, 0.0]);
        assert!(rel_close(rot.spectral_radius(), 1.0, 1e-15));
    }

    #[test]
    fn evaluate_word_examples() {
        let p = nilpotent_pair();
        let ab = evaluate_word(&w("12"), &p);
        assert_eq!(ab, Mat2::from_real([1.0, 0.0, 0.0, 0.0]));
        assert_eq!(evaluate_word(&w("11"), &p), Mat2::zero());
        assert_eq!(evaluate_word(&w("1"), &p), p.first);
    }

    #[test]
    fn evaluate_word_is_a_homomorphism() {
        let mut rng = stream_rng(11, 0);
        let p = MatrixPair::new(gaussian_mat2(&mut rng, true), gaussian_mat2(&mut rng, true));
        let u = w("1121");
        let v = w("221");
        let uv = u.concat(&v);
        let lhs = evaluate_word(&uv, &p);
        let rhs = evaluate_word(&u, &p) * evaluate_word(&v, &p);
        for (a, b) in [
            (lhs.a11, rhs.a11),
            (lhs.a12, rhs.a12),
            (lhs.a21, rhs.a21),
            (lhs.a22, rhs.a22),
        ] {
            assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn normalized_radius_examples() {
        let p = nilpotent_pair();
        assert!(rel_close(normalized_spectral_radius(&w("12"), &p), 1.0, 1e-15));
        assert_eq!(normalized_spectral_radius(&w("1122"), &p), 0.0);
        let id = MatrixPair::new(Mat2::identity(), Mat2::identity());
        assert!(rel_close(normalized_spectral_radius(&w("1221"), &id), 1.0, 1e-15));
    }

    #[test]
    fn radius_scaling_and_powers() {
        for i in 0..50u64 {
            let mut rng = stream_rng(17, i);
            let m = gaussian_mat2(&mut rng, i % 2 == 0);
            let rho = m.spectral_radius();
            assert!(rel_close(m.scale(c(-2.5, 0.0)).spectral_radius(), 2.5 * rho, 1e-9));
            assert!(rel_close(m.scale(c(0.3, 0.4)).spectral_radius(), 0.5 * rho, 1e-9));
            for k in [2u32, 3] {
                assert!(rel_close(m.pow(k).spectral_radius(), rho.powi(k as i32), 1e-9));
            }
        }
    }

    #[test]
    fn radius_invariant_under_shift_and_mirror() {
        let reps = crate::words::enumerate_representatives(8).unwrap();
        for i in 0..20u64 {
            let mut rng = stream_rng(23, i);
            let p = MatrixPair::new(
                gaussian_mat2(&mut rng, i % 2 == 0),
                gaussian_mat2(&mut rng, i % 2 == 0),
            );
            for rep in reps.iter().step_by(7) {
                let base = normalized_spectral_radius(rep, &p);
                let shifted = normalized_spectral_radius(&rep.cyclic_shift(1), &p);
                let mirrored = normalized_spectral_radius(&rep.mirror(), &p);
                assert!(rel_close(base, shifted, 1e-9), "{rep} shift: {base} vs {shifted}");
                assert!(rel_close(base, mirrored, 1e-9), "{rep} mirror: {base} vs {mirrored}");
            }
        }
    }

    #[test]
    fn power_iteration_agrees_with_closed_form() {
        // Whenever 200 steps of power iteration converge (small Rayleigh
        // residual), the estimate must match the closed form to 1e-6. Draws
        // with near-equal eigenvalue moduli do not converge and are excluded
        // by the residual check itself, not by the closed form.
        let mut checked = 0;
        for i in 0..200u64 {
            let mut rng = stream_rng(12345, i);
            let m = gaussian_mat2(&mut rng, true);
            let rho = m.spectral_radius();
            if rho < 0.1 {
                continue;
            }
            let (est, residual) = power_iteration_radius(&m, 200);
            if residual > 1e-9 * rho {
                continue;
            }
            assert!(
                rel_close(rho, est, 1e-6),
                "sample {i}: closed form {rho} vs power iteration {est}"
            );
            checked += 1;
        }
        assert!(checked > 120, "only {checked} draws converged");
    }

    #[test]
    fn trace_comparison_examples() {
        assert_eq!(compare_rho_sl2(1.5, 1.9), Ordering::Equal);
        assert_eq!(compare_rho_sl2(2.5, 3.0), Ordering::Greater);
        assert_eq!(compare_rho_sl2(3.0, -3.0), Ordering::Equal);
        assert_eq!(compare_rho_sl2(-4.0, 2.1), Ordering::Less);
    }

    #[test]
    fn trace_comparison_matches_quadratic_roots() {
        // Oracle: for det 1, rho = 1 if |t| <= 2 else (|t| + sqrt(t^2-4))/2.
        fn rho_from_trace(t: f64) -> f64 {
            if t.abs() <= 2.0 {
                1.0
            } else {
                (t.abs() + (t * t - 4.0).sqrt()) / 2.0
            }
        }
        let traces = [-5.0, -3.0, -2.0, -1.2, 0.0, 0.7, 1.9, 2.0, 2.5, 3.0, 6.0];
        for &ta in &traces {
            for &tb in &traces {
                let expected = rho_from_trace(tb)
                    .partial_cmp(&rho_from_trace(ta))
                    .unwrap();
                assert_eq!(compare_rho_sl2(ta, tb), expected, "ta={ta} tb={tb}");
            }
        }
    }

    #[test]
    fn normalize_pair_examples() {
        // det(AB) = 36: scaling satisfies (a^2)^2 * 36 = 1, i.e. ab = 1/6.
        let a = Mat2::from_real([2.0, 0.0, 0.0, 3.0]);
        let b = Mat2::from_real([3.0, 0.0, 0.0, 2.0]);
        let p = normalize_pair(&MatrixPair::new(a, b)).unwrap();
        let d = (p.first * p.second).det();
        assert!((d - c(1.0, 0.0)).norm() < 1e-12);

        // det(AB) = 1 leaves the pair unchanged.
        let a = Mat2::from_real([1.0, 1.0, 0.0, 1.0]);
        let b = Mat2::from_real([1.0, 0.0, 1.0, 1.0]);
        let p = normalize_pair(&MatrixPair::new(a, b)).unwrap();
        assert!((p.first.a11 - c(1.0, 0.0)).norm() < 1e-12);
        assert!((p.first.a12 - c(1.0, 0.0)).norm() < 1e-12);

        // det(AB) = -4: ab = i/2, and (i/2)^2 * (-4) = 1.
        let a = Mat2::from_real([2.0, 0.0, 0.0, 1.0]);
        let b = Mat2::from_real([-2.0, 0.0, 0.0, 1.0]);
        let p = normalize_pair(&MatrixPair::new(a, b)).unwrap();
        let ab = p.first.a11 / a.a11 * (p.second.a11 / b.a11);
        assert!(ab.re.abs() < 1e-12 && (ab.im - 0.5).abs() < 1e-12);
        let d = (p.first * p.second).det();
        assert!((d - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn normalize_pair_rejects_singular_product() {
        let p = nilpotent_pair();
        assert_eq!(normalize_pair(&p), Err(Mat2Error::SingularProduct));
    }

    #[test]
    fn normalize_pair_det_and_argmax_stability() {
        let products = ["12121212", "11221122", "11212212", "11212122"].map(|s| w(s));
        let mut checked = 0;
        for i in 0..200u64 {
            let mut rng = stream_rng(31, i);
            let p = MatrixPair::new(
                gaussian_mat2(&mut rng, i % 2 == 0),
                gaussian_mat2(&mut rng, i % 2 == 0),
            );
            let Ok(q) = normalize_pair(&p) else { continue };
            let d = (q.first * q.second).det();
            assert!((d - c(1.0, 0.0)).norm() < 1e-12);

            // Scaling preserves the order of the four radii, so the set of
            // near-maximal products must not change. Exact ties are real:
            // when all four products have complex spectra, every radius
            // equals |det|^(1/2) because the words share letter counts.
            let near_max_set = |pair: &MatrixPair| {
                let radii = products
                    .iter()
                    .map(|word| normalized_spectral_radius(word, pair))
                    .collect::<Vec<_>>();
                let max = radii.iter().cloned().fold(0.0, f64::max);
                (0..radii.len())
                    .filter(|&k| radii[k] >= max * (1.0 - 1e-9))
                    .collect::<Vec<_>>()
            };
            assert_eq!(near_max_set(&p), near_max_set(&q), "sample {i}");
            checked += 1;
        }
        assert!(checked > 190);
    }

    #[test]
    fn serde_wire_format_round_trip() {
        let m = Mat2::new(c(1.0, -2.0), c(0.5, 0.0), c(0.0, 3.0), c(-1.0, 1.0));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[1.0,-2.0],[0.5,0.0],[0.0,3.0],[-1.0,1.0]]");
        let back: Mat2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
