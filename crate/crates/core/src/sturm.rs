//! Exact sign analysis of univariate polynomials with rational coefficients:
//! Sturm root counting, Yun squarefree decomposition, and certified
//! nonnegativity on a closed ray.
//!
//! The ray certificate never samples: a polynomial is nonnegative on
//! [t0, +inf) iff it is nonnegative at t0, tends to +inf (positive leading
//! coefficient), and has no sign change in the interior, i.e. no root of odd
//! multiplicity beyond t0. Odd-multiplicity roots are exactly the roots of
//! the odd part of the squarefree decomposition, counted by Sturm chains.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fricke::Poly2;

/// Ray direction for nonnegativity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayDirection {
    /// The closed ray [t0, +inf).
    Above,
    /// The closed ray (-inf, t0].
    Below,
}

/// Univariate polynomial, coefficients ascending by degree, trailing zeros
/// trimmed (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Exact quotient and remainder over the rationals.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg && !rem.is_empty() {
            let rdeg = rem.len() - 1;
            let factor = rem.last().unwrap() / &dlead;
            if !factor.is_zero() {
                quot[rdeg - ddeg] = factor.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let idx = rdeg - ddeg + i;
                    let delta = c * &factor;
                    rem[idx] -= delta;
                }
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Reflection t -> -t.
    pub fn reflected(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                .collect(),
        )
    }

    /// Monic associate.
    fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Scales by a positive rational so the coefficients become coprime
    /// integers; signs are preserved.
    fn positive_primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut lcm = num_bigint::BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut gcd = num_bigint::BigInt::zero();
        for i in &ints {
            gcd = num_integer::Integer::gcd(&gcd, i);
        }
        UniPoly::new(
            ints.into_iter()
                .map(|i| BigRational::from_integer(i / &gcd))
                .collect(),
        )
    }

    /// 1 + max |a_i| / |a_n|: every real root lies inside (-B, B).
    pub fn cauchy_root_bound(&self) -> BigRational {
        let lead = self.leading().expect("bound of the zero polynomial").abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            m = m.max(c.abs());
        }
        BigRational::one() + m / lead
    }
}

/// Monic gcd via the Euclidean algorithm.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.positive_primitive();
    }
    a.monic()
}

/// Yun's squarefree decomposition: p = c * prod a_i^i with each a_i monic
/// squarefree and pairwise coprime. Entry i-1 of the result is a_i.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<UniPoly> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let deriv = p.derivative();
    let d = poly_gcd(p, &deriv);
    if d.degree() == Some(0) {
        return vec![p.monic()];
    }
    let mut factors = Vec::new();
    let mut b = p.div_rem(&d).0;
    let mut c = deriv.div_rem(&d).0;
    loop {
        let w = c.sub(&b.derivative());
        let a = poly_gcd(&b, &w);
        factors.push(a.clone());
        b = b.div_rem(&a).0;
        c = w.div_rem(&a).0;
        if b.degree() == Some(0) {
            break;
        }
    }
    factors
}

/// Product of the odd-multiplicity squarefree factors: exactly the locus of
/// sign changes of `p`.
pub fn odd_multiplicity_part(p: &UniPoly) -> UniPoly {
    let mut out = UniPoly::constant(BigRational::one());
    for (i, a) in squarefree_decomposition(p).iter().enumerate() {
        if i % 2 == 0 {
            out = out.mul(a);
        }
    }
    out
}

/// The Sturm chain of `p`, each element scaled positively.
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.positive_primitive()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.positive_primitive());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-BigRational::one()).positive_primitive());
    }
    chain
}

fn sign_variations(chain: &[UniPoly], t: &BigRational) -> usize {
    let mut last = 0i8;
    let mut variations = 0;
    for p in chain {
        let v = p.eval(t);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

/// Number of distinct real roots of `p` in the open interval (a, b).
/// Requires p(a) != 0 and p(b) != 0.
pub fn count_roots_in(p: &UniPoly, a: &BigRational, b: &BigRational) -> usize {
    assert!(a < b);
    assert!(!p.eval(a).is_zero() && !p.eval(b).is_zero());
    let chain = sturm_chain(p);
    sign_variations(&chain, a) - sign_variations(&chain, b)
}

/// Certifies p >= 0 on the closed ray, exactly.
pub fn nonneg_on_ray(p: &UniPoly, t0: &BigRational, dir: RayDirection) -> bool {
    let (p, t0) = match dir {
        RayDirection::Above => (p.clone(), t0.clone()),
        RayDirection::Below => (p.reflected(), -t0),
    };
    if p.is_zero() {
        return true;
    }
    if p.eval(&t0).is_negative() {
        return false;
    }
    if p.degree() == Some(0) {
        return true;
    }
    if !p.leading().unwrap().is_positive() {
        return false;
    }
    // Strip the root at t0 if present; the sign just beyond t0 is the sign of
    // the stripped polynomial there.
    let linear = UniPoly::new(vec![-t0.clone(), BigRational::one()]);
    let mut q = p;
    while q.eval(&t0).is_zero() {
        let (quot, rem) = q.div_rem(&linear);
        debug_assert!(rem.is_zero());
        q = quot;
    }
    if q.eval(&t0).is_negative() {
        return false;
    }
    if q.degree() == Some(0) {
        return true;
    }
    let odd = odd_multiplicity_part(&q);
    if odd.degree().unwrap_or(0) == 0 {
        return true;
    }
    let bound = q.cauchy_root_bound().max(t0.clone() + BigRational::one()) + BigRational::one();
    count_roots_in(&odd, &t0, &bound) == 0
}

/// Renders a univariate polynomial with descending powers, e.g. "v^2 - 3".
pub fn format_unipoly(p: &UniPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let unit = mag == BigRational::one();
        if !unit || e == 0 {
            out.push_str(&mag.to_string());
        }
        if e > 0 {
            if !unit {
                out.push('*');
            }
            out.push_str(var);
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
    out
}

/// Restriction of a two-variable polynomial to the parametric line
/// (first, second) = (f0 + f1 t, s0 + s1 t).
pub fn restrict_to_line(
    p: &Poly2,
    first: (&BigRational, &BigRational),
    second: (&BigRational, &BigRational),
) -> UniPoly {
    let line_a = UniPoly::new(vec![first.0.clone(), first.1.clone()]);
    let line_b = UniPoly::new(vec![second.0.clone(), second.1.clone()]);
    let mut out = UniPoly::zero();
    for (&(i, j), &c) in p.terms() {
        let mut term = UniPoly::constant(BigRational::from_integer(c.into()));
        for _ in 0..i {
            term = term.mul(&line_a);
        }
        for _ in 0..j {
            term = term.mul(&line_b);
        }
        out = out.add(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qq(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_and_eval() {
        // t^3 - 2t + 1 = (t - 1)(t^2 + t - 1)
        let p = UniPoly::from_i64(&[1, -2, 0, 1]);
        let d = UniPoly::from_i64(&[-1, 1]);
        let (quot, rem) = p.div_rem(&d);
        assert!(rem.is_zero());
        assert_eq!(quot, UniPoly::from_i64(&[-1, 1, 1]));
        assert_eq!(p.eval(&q(2)), q(5));
        assert_eq!(p.eval(&qq(1, 2)), qq(1, 8));
    }

    #[test]
    fn root_counting() {
        let p = UniPoly::from_i64(&[-3, 0, 1]); // t^2 - 3
        assert_eq!(count_roots_in(&p, &q(0), &q(10)), 1);
        assert_eq!(count_roots_in(&p, &q(-10), &q(10)), 2);
        assert_eq!(count_roots_in(&p, &q(2), &q(10)), 0);

        // Repeated roots are counted once.
        let sq = p.mul(&p);
        assert_eq!(count_roots_in(&sq, &q(-10), &q(10)), 2);
    }

    #[test]
    fn squarefree_factors() {
        // (t - 1)^2 (t + 2)^3
        let a = UniPoly::from_i64(&[-1, 1]);
        let b = UniPoly::from_i64(&[2, 1]);
        let p = a.mul(&a).mul(&b).mul(&b).mul(&b);
        let factors = squarefree_decomposition(&p);
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0].degree(), Some(0));
        assert_eq!(factors[1], a);
        assert_eq!(factors[2], b);
        assert_eq!(odd_multiplicity_part(&p), b);
    }

    #[test]
    fn ray_certificates() {
        // The four domination edge polynomials on their rays.
        let v2m3 = UniPoly::from_i64(&[-3, 0, 1]); // v^2 - 3 for v <= -2
        assert!(nonneg_on_ray(&v2m3, &q(-2), RayDirection::Below));
        let m2vm4 = UniPoly::from_i64(&[-4, -2]); // -2v - 4 for v <= -2
        assert!(nonneg_on_ray(&m2vm4, &q(-2), RayDirection::Below));
        let z2m3 = UniPoly::from_i64(&[-3, 0, 1]); // z^2 - 3 for z >= 2
        assert!(nonneg_on_ray(&z2m3, &q(2), RayDirection::Above));
        let twozm4 = UniPoly::from_i64(&[-4, 2]); // 2z - 4 for z >= 2
        assert!(nonneg_on_ray(&twozm4, &q(2), RayDirection::Above));
    }

    #[test]
    fn ray_negative_controls() {
        let v2m3 = UniPoly::from_i64(&[-3, 0, 1]);
        assert!(!nonneg_on_ray(&v2m3, &q(0), RayDirection::Above));
        let m2vm4 = UniPoly::from_i64(&[-4, -2]);
        assert!(!nonneg_on_ray(&m2vm4, &q(-2), RayDirection::Above));
        // Wrong sign at infinity.
        let neg = UniPoly::from_i64(&[0, 0, -1]);
        assert!(!nonneg_on_ray(&neg, &q(1), RayDirection::Above));
    }

    #[test]
    fn ray_touching_cases() {
        // (t - 3)^2 dips to zero inside the ray but stays nonnegative.
        let p = UniPoly::from_i64(&[9, -6, 1]);
        assert!(nonneg_on_ray(&p, &q(0), RayDirection::Above));
        assert!(!nonneg_on_ray(&p.scale(&q(-1)), &q(0), RayDirection::Above));

        // (t^2 - 1)^2: two interior even roots.
        let sq = UniPoly::from_i64(&[-1, 0, 1]);
        let p = sq.mul(&sq);
        assert!(nonneg_on_ray(&p, &q(-2), RayDirection::Above));

        // (t - 2)^3 from its own root: nonnegative beyond 2, not from 1.
        let c = UniPoly::from_i64(&[-2, 1]);
        let p = c.mul(&c).mul(&c);
        assert!(nonneg_on_ray(&p, &q(2), RayDirection::Above));
        assert!(!nonneg_on_ray(&p, &q(1), RayDirection::Above));

        // t^3 - t changes sign inside (-2, inf).
        let p = UniPoly::from_i64(&[0, -1, 0, 1]);
        assert!(!nonneg_on_ray(&p, &q(-2), RayDirection::Above));
    }

    #[test]
    fn zero_and_constants() {
        assert!(nonneg_on_ray(&UniPoly::zero(), &q(5), RayDirection::Above));
        assert!(nonneg_on_ray(&UniPoly::from_i64(&[7]), &q(5), RayDirection::Below));
        assert!(!nonneg_on_ray(&UniPoly::from_i64(&[-7]), &q(5), RayDirection::Below));
    }

    mod ray_properties {
        use super::*;
        use proptest::prelude::*;

        // Ground truth for polynomials with known rational roots: sign
        // changes happen only at roots, so evaluating at the roots, at the
        // midpoints between consecutive roots on the ray, at t0, and beyond
        // the largest root decides nonnegativity exactly.
        fn expected_nonneg(
            lead: i64,
            factors: &[(i64, u32)],
            t0: &BigRational,
        ) -> bool {
            let poly = build(lead, factors);
            let mut samples = vec![t0.clone()];
            let mut roots: Vec<BigRational> =
                factors.iter().map(|&(r, _)| q(r)).filter(|r| r >= t0).collect();
            roots.sort();
            for pair in roots.windows(2) {
                samples.push((&pair[0] + &pair[1]) / q(2));
            }
            if let Some(max) = roots.last() {
                samples.push(max + q(1));
            } else {
                samples.push(t0 + q(1));
            }
            samples.extend(roots.iter().cloned());
            samples
                .iter()
                .all(|t| !poly.eval(t).is_negative())
                && (poly.degree() == Some(0) || lead > 0)
        }

        fn build(lead: i64, factors: &[(i64, u32)]) -> UniPoly {
            let mut p = UniPoly::from_i64(&[lead]);
            for &(root, mult) in factors {
                let linear = UniPoly::from_i64(&[-root, 1]);
                for _ in 0..mult {
                    p = p.mul(&linear);
                }
            }
            p
        }

        proptest! {
            #[test]
            fn certificate_matches_known_factorizations(
                lead in prop_oneof![Just(-3i64), Just(-1), Just(1), Just(2)],
                factors in proptest::collection::vec((-6i64..6, 1u32..4), 0..4),
                t0 in -8i64..8,
            ) {
                let poly = build(lead, &factors);
                let t0 = q(t0);
                let got = nonneg_on_ray(&poly, &t0, RayDirection::Above);
                let expected = expected_nonneg(lead, &factors, &t0);
                prop_assert_eq!(got, expected, "lead {} factors {:?} from {}", lead, &factors, t0);
            }
        }
    }
}
