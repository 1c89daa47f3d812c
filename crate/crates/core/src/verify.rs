//! Machine checks of the domination chain for the four length-8 comparison
//! products P1 = ABABABAB, P2 = AABBAABB, P3 = AABABBAB, P4 = AABABABB:
//! rho(P4) <= max(rho(P1), rho(P2), rho(P3)) for every real pair.
//!
//! Each P_i has a rotation expressible in C = AB and D = BA (C^4, CDCD, CCDD,
//! CCCD), whose traces restrict to two-variable polynomials F_i(v, z) with
//! v = tr(C)^2 - 2 and z = tr(CD). The exact layer certifies, in integer and
//! rational arithmetic only:
//!
//! - the factorizations of G_i = F_i - F_4,
//! - emptiness of the all-negative sign case,
//! - nonnegativity of F_3 + F_4 on the square via its four vertices
//!   (the sum is bilinear, so vertex values bound it), and
//! - nonnegativity of F_1 + F_4 and F_2 + F_4 on the two unbounded regions
//!   via their boundary edges (each sum is affine in the swept variable),
//!   with ray certificates from exact root isolation.
//!
//! A redundant float grid and seeded random sweeps provide the numerical
//! layer on top.

use num_rational::{BigRational, Rational64};
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::fricke::{shift_u_to_v, specialize_equal_traces, trace_polynomial, Poly2, Vars2};
use crate::linear::LinSystem;
use crate::mat2::{normalized_spectral_radius, MatrixPair};
use crate::rng::{gaussian_pair, stream_rng, Dist};
use crate::sturm::{format_unipoly, nonneg_on_ray, restrict_to_line, RayDirection, UniPoly};
use crate::words::Word;

/// The four comparison products, as words over {1, 2}.
pub const COMPARISON_WORDS: [&str; 4] = ["12121212", "11221122", "11212212", "11212122"];

/// Rotations of the comparison products written in C = AB and D = BA.
const RESTRICTED_WORDS: [&str; 4] = ["1111", "1212", "1122", "1112"];

pub fn comparison_products() -> [Word; 4] {
    COMPARISON_WORDS.map(|s| s.parse().expect("fixed word literals parse"))
}

/// F_1..F_4 in (v, z), derived through the full trace-polynomial pipeline.
pub fn restricted_trace_polys() -> [Poly2; 4] {
    RESTRICTED_WORDS.map(|s| {
        let w: Word = s.parse().expect("fixed word literals parse");
        let fr = trace_polynomial(&w);
        let fs = specialize_equal_traces(&fr).expect("comparison words have even x-degree");
        shift_u_to_v(&fs)
    })
}

/// The same four polynomials hard-coded; the pipeline must reproduce them.
fn reference_f_polys() -> [Poly2; 4] {
    [
        Poly2::from_terms(Vars2::VZ, &[((2, 0), 1), ((0, 0), -2)]),
        Poly2::from_terms(Vars2::VZ, &[((0, 2), 1), ((0, 0), -2)]),
        Poly2::from_terms(
            Vars2::VZ,
            &[((1, 1), 1), ((0, 1), 2), ((1, 0), -2), ((0, 0), -2)],
        ),
        Poly2::from_terms(
            Vars2::VZ,
            &[((1, 1), 1), ((0, 1), 1), ((1, 0), -1), ((0, 0), -2)],
        ),
    ]
}

/// Expected factored forms of G_i = F_i - F_4.
fn factored_g_polys() -> [Poly2; 3] {
    let z_minus_v = Poly2::from_terms(Vars2::VZ, &[((0, 1), 1), ((1, 0), -1)]);
    let neg_v_minus_1 = Poly2::from_terms(Vars2::VZ, &[((1, 0), -1), ((0, 0), -1)]);
    let z_minus_1 = Poly2::from_terms(Vars2::VZ, &[((0, 1), 1), ((0, 0), -1)]);
    [
        &neg_v_minus_1 * &z_minus_v,
        &z_minus_1 * &z_minus_v,
        z_minus_v,
    ]
}

fn check_g_factorizations_against(expected: &[Poly2; 3]) -> bool {
    let f = restricted_trace_polys();
    (0..3).all(|i| (&f[i] - &f[3]) == expected[i])
}

/// Expands the factored forms (-v-1)(z-v), (z-1)(z-v), z-v and compares them
/// with F_i - F_4 as exact polynomials.
pub fn check_g_factorizations() -> bool {
    check_g_factorizations_against(&factored_g_polys())
}

/// The all-negative sign case is empty: G_3 < 0 forces z < v, which turns
/// G_1 < 0 into v < -1 and G_2 < 0 into z > 1, and the linear system
/// {z < v, v < -1, z > 1} has no rational solution. A rational grid scan
/// over [-50, 50]^2 at step 1/8 re-confirms emptiness redundantly.
pub fn check_sign_cases() -> bool {
    if !check_g_factorizations() {
        return false;
    }
    // Variables [v, z]: v - z > 0, -v - 1 > 0, z - 1 > 0.
    let mut derived = LinSystem::new(2);
    derived.push(vec![1, -1], 0, true);
    derived.push(vec![-1, 0], -1, true);
    derived.push(vec![0, 1], -1, true);
    if derived.is_feasible() {
        return false;
    }

    let f = restricted_trace_polys();
    let g: Vec<Poly2> = (0..3).map(|i| &f[i] - &f[3]).collect();
    let step = Rational64::new(1, 8);
    let lo = Rational64::from_integer(-50);
    for i in 0..=800 {
        let v = lo + step * Rational64::from_integer(i);
        for j in 0..=800 {
            let z = lo + step * Rational64::from_integer(j);
            if g.iter().all(|gi| gi.eval_ratio64(v, z).is_negative()) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCheck {
    pub v: String,
    pub z: String,
    pub value: String,
    pub nonneg: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareCheck {
    pub sum_polynomial: String,
    pub vertices: Vec<VertexCheck>,
    pub pass: bool,
}

/// F_3 + F_4 on the square [-2, -1] x [1, 2]: the sum is bilinear (degree at
/// most one in each variable), so nonnegativity at the four vertices bounds
/// the whole square.
pub fn check_square_s3() -> SquareCheck {
    let f = restricted_trace_polys();
    let sum = &f[2] + &f[3];
    // 2vz + 3z - 3v - 4
    let expected = Poly2::from_terms(
        Vars2::VZ,
        &[((1, 1), 2), ((0, 1), 3), ((1, 0), -3), ((0, 0), -4)],
    );
    let bilinear = sum.terms().all(|(&(i, j), _)| i <= 1 && j <= 1);
    let mut pass = sum == expected && bilinear;
    let mut vertices = Vec::new();
    for (v, z) in [(-2i64, 1i64), (-2, 2), (-1, 1), (-1, 2)] {
        let value = sum.eval_big(
            &BigRational::from_integer(v.into()),
            &BigRational::from_integer(z.into()),
        );
        let nonneg = !value.is_negative();
        pass &= nonneg;
        vertices.push(VertexCheck {
            v: v.to_string(),
            z: z.to_string(),
            value: value.to_string(),
            nonneg,
        });
    }
    SquareCheck {
        sum_polynomial: sum.to_string(),
        vertices,
        pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCheck {
    pub edge: String,
    pub polynomial: String,
    pub nonneg: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnboundedCheck {
    pub edges: Vec<EdgeCheck>,
    pub pass: bool,
}

/// F_1 + F_4 on S1 = {v <= -2, 1 <= z <= -v} and F_2 + F_4 on
/// S2 = {z >= 2, -z <= v <= -1}. Each sum is affine in the swept variable
/// (z on S1, v on S2), so it is minimized on the two boundary edges of the
/// sweep; each edge restricts to a univariate polynomial certified
/// nonnegative on its ray by exact root isolation.
pub fn check_unbounded_regions() -> UnboundedCheck {
    let f = restricted_trace_polys();
    let s1 = &f[0] + &f[3];
    let s2 = &f[1] + &f[3];
    let affine_ok = s1.terms().all(|(&(_, j), _)| j <= 1)
        && s2.terms().all(|(&(i, _), _)| i <= 1);

    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    let neg_one = -&one;
    let two = BigRational::from_integer(2.into());
    let neg_two = -&two;

    // Each entry: id, restriction along (v(t), z(t)), expected polynomial,
    // ray start, ray direction.
    let cases = [
        (
            "S1: z = 1, v = t <= -2",
            restrict_to_line(&s1, (&zero, &one), (&one, &zero)),
            UniPoly::from_i64(&[-3, 0, 1]),
            neg_two.clone(),
            RayDirection::Below,
        ),
        (
            "S1: z = -v, v = t <= -2",
            restrict_to_line(&s1, (&zero, &one), (&zero, &neg_one)),
            UniPoly::from_i64(&[-4, -2]),
            neg_two.clone(),
            RayDirection::Below,
        ),
        (
            "S2: v = -1, z = t >= 2",
            restrict_to_line(&s2, (&neg_one, &zero), (&zero, &one)),
            UniPoly::from_i64(&[-3, 0, 1]),
            two.clone(),
            RayDirection::Above,
        ),
        (
            "S2: v = -z, z = t >= 2",
            restrict_to_line(&s2, (&zero, &neg_one), (&zero, &one)),
            UniPoly::from_i64(&[-4, 2]),
            two.clone(),
            RayDirection::Above,
        ),
    ];

    let mut pass = affine_ok;
    let mut edges = Vec::new();
    for (id, poly, expected, start, dir) in cases {
        let matches = poly == expected;
        let nonneg = nonneg_on_ray(&poly, &start, dir);
        pass &= matches && nonneg;
        edges.push(EdgeCheck {
            edge: id.to_string(),
            polynomial: format_unipoly(&poly, if id.starts_with("S1") { "v" } else { "z" }),
            nonneg,
        });
    }
    UnboundedCheck { edges, pass }
}

/// Redundant float layer: no grid point over [-bound, bound]^2 may violate
/// |F_4| <= max(|F_1|, |F_2|, |F_3|) + 1e-12.
pub fn float_grid_violations(bound: f64, step: f64) -> u64 {
    {
        // The closed forms below must be the pipeline polynomials.
        let f = restricted_trace_polys();
        assert_eq!(f, reference_f_polys());
    }
    let n = (2.0 * bound / step).round() as i64;
    (0..=n)
        .into_par_iter()
        .map(|i| {
            let v = -bound + i as f64 * step;
            let mut count = 0u64;
            for j in 0..=n {
                let z = -bound + j as f64 * step;
                let f1 = v * v - 2.0;
                let f2 = z * z - 2.0;
                let f3 = v * z + 2.0 * z - 2.0 * v - 2.0;
                let f4 = v * z + z - v - 2.0;
                let max = f1.abs().max(f2.abs()).max(f3.abs());
                if f4.abs() > max + 1e-12 {
                    count += 1;
                }
            }
            count
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    pub factorization_ok: bool,
    pub sign_case_ok: bool,
    pub square_vertices: Vec<VertexCheck>,
    pub square_pass: bool,
    pub edge_polynomials: Vec<EdgeCheck>,
    pub edges_pass: bool,
    pub grid_violations: u64,
    pub passed: bool,
}

/// Runs the whole exact chain plus the float grid.
pub fn lemma2_report(grid_bound: f64, grid_step: f64) -> RegionReport {
    let factorization_ok = check_g_factorizations();
    let sign_case_ok = check_sign_cases();
    let square = check_square_s3();
    let unbounded = check_unbounded_regions();
    let grid_violations = float_grid_violations(grid_bound, grid_step);
    let passed = factorization_ok
        && sign_case_ok
        && square.pass
        && unbounded.pass
        && grid_violations == 0;
    RegionReport {
        factorization_ok,
        sign_case_ok,
        square_vertices: square.vertices,
        square_pass: square.pass,
        edge_polynomials: unbounded.edges,
        edges_pass: unbounded.pass,
        grid_violations,
        passed,
    }
}

/// rho(P4) <= max(rho(P1), rho(P2), rho(P3)) up to the relative+absolute
/// tolerance. Singular pairs are legal; the inequality extends by continuity.
pub fn check_domination(p: &MatrixPair, tol: f64) -> bool {
    let words = comparison_products();
    let rho4 = normalized_spectral_radius(&words[3], p);
    let max = words[..3]
        .iter()
        .map(|w| normalized_spectral_radius(w, p))
        .fold(0.0, f64::max);
    rho4 <= max * (1.0 + tol) + tol
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationReport {
    pub samples: u64,
    pub dist: Dist,
    pub seed: u64,
    pub tol: f64,
    pub violations: u64,
    /// Smallest (max_i rho(P_i) - rho(P_4)) / max_i rho(P_i) seen.
    pub worst_margin: f64,
}

/// Seeded random sweep of `check_domination`; per-sample randomness is keyed
/// by (seed, index), so the outcome is independent of worker scheduling.
pub fn domination_sweep(samples: u64, dist: Dist, seed: u64, tol: f64) -> DominationReport {
    let words = comparison_products();
    let (violations, worst_margin) = (0..samples)
        .into_par_iter()
        .fold(
            || (0u64, f64::INFINITY),
            |(viol, worst), index| {
                let mut rng = stream_rng(seed, index);
                let p = gaussian_pair(&mut rng, dist);
                let rho4 = normalized_spectral_radius(&words[3], &p);
                let max = words[..3]
                    .iter()
                    .map(|w| normalized_spectral_radius(w, &p))
                    .fold(0.0, f64::max);
                let margin = if max > 0.0 { (max - rho4) / max } else { 0.0 };
                let violated = rho4 > max * (1.0 + tol) + tol;
                (viol + u64::from(violated), worst.min(margin))
            },
        )
        .reduce(|| (0u64, f64::INFINITY), |a, b| (a.0 + b.0, a.1.min(b.1)));
    DominationReport {
        samples,
        dist,
        seed,
        tol,
        violations,
        worst_margin: if samples == 0 { 0.0 } else { worst_margin },
    }
}
