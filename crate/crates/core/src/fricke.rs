//! Exact integer-coefficient trace polynomials for words in a det-1 pair.
//!
//! For 2x2 matrices A, B with det(A) = det(B) = 1, the trace of any word
//! product P(w)(A, B) is an integer polynomial in x = tr(A), y = tr(B),
//! z = tr(AB). The reduction below computes it from two facts:
//!
//! - traces are invariant under cyclic rotation of the product, and
//! - M^2 = tr(M) M - I for det(M) = 1, so a doubled letter shortens the word:
//!   tr(L L rest) = tr(L) tr(L rest) - tr(rest).
//!
//! Words with no doubled letter, even cyclically, are the alternating ones
//! (AB)^k, handled by the three-term recurrence for tr(M^k).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use serde::Serialize;
use thiserror::Error;

use crate::mat2::evaluate_word;
use crate::rng::{det1_complex_pair, stream_rng};
use crate::words::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrickeError {
    #[error("setting y = x leaves an odd power x^{0}; not expressible in u = x^2")]
    OddDegreeInX(u8),
}

/// Integer polynomial in (x, y, z), exponents mapped to coefficients with no
/// zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Poly3 {
    terms: BTreeMap<(u8, u8, u8), i64>,
}

/// Variable pair tag for two-variable polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Vars2 {
    /// (u, z) with u = x^2.
    UZ,
    /// (v, z) with u = v + 2.
    VZ,
}

impl Vars2 {
    fn names(self) -> (&'static str, &'static str) {
        match self {
            Vars2::UZ => ("u", "z"),
            Vars2::VZ => ("v", "z"),
        }
    }
}

/// Integer polynomial in two tagged variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly2 {
    vars: Vars2,
    terms: BTreeMap<(u8, u8), i64>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly3::from_terms(&[((0, 0, 0), c)])
    }

    pub fn var_x() -> Self {
        Poly3::from_terms(&[((1, 0, 0), 1)])
    }

    pub fn var_y() -> Self {
        Poly3::from_terms(&[((0, 1, 0), 1)])
    }

    pub fn var_z() -> Self {
        Poly3::from_terms(&[((0, 0, 1), 1)])
    }

    pub fn from_terms(terms: &[((u8, u8, u8), i64)]) -> Self {
        let mut p = Poly3::zero();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: (u8, u8, u8), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u8, u8, u8), &i64)> {
        self.terms.iter()
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), &c) in &self.terms {
            acc += c as f64 * x.powu(i as u32) * y.powu(j as u32) * z.powu(k as u32);
        }
        acc
    }

    pub fn eval_big(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(0.into());
        for (&(i, j, k), &c) in &self.terms {
            let mut term = BigRational::from_integer(c.into());
            for _ in 0..i {
                term *= x;
            }
            for _ in 0..j {
                term *= y;
            }
            for _ in 0..k {
                term *= z;
            }
            acc += term;
        }
        acc
    }
}

impl Poly2 {
    pub fn zero(vars: Vars2) -> Self {
        Poly2 {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars2, c: i64) -> Self {
        Poly2::from_terms(vars, &[((0, 0), c)])
    }

    pub fn from_terms(vars: Vars2, terms: &[((u8, u8), i64)]) -> Self {
        let mut p = Poly2::zero(vars);
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: (u8, u8), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn vars(&self) -> Vars2 {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u8, u8), &i64)> {
        self.terms.iter()
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        let mut acc = 0.0;
        for (&(i, j), &c) in &self.terms {
            acc += c as f64 * a.powi(i as i32) * b.powi(j as i32);
        }
        acc
    }

    pub fn eval_ratio64(&self, a: Rational64, b: Rational64) -> Rational64 {
        let mut acc = Rational64::from_integer(0);
        for (&(i, j), &c) in &self.terms {
            let mut term = Rational64::from_integer(c);
            for _ in 0..i {
                term *= a;
            }
            for _ in 0..j {
                term *= b;
            }
            acc += term;
        }
        acc
    }

    pub fn eval_big(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(0.into());
        for (&(i, j), &c) in &self.terms {
            let mut term = BigRational::from_integer(c.into());
            for _ in 0..i {
                term *= a;
            }
            for _ in 0..j {
                term *= b;
            }
            acc += term;
        }
        acc
    }
}

macro_rules! poly_ops {
    ($ty:ty, $exp:ty, $check:expr) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $check(self, rhs);
                let mut out = self.clone();
                for (&e, &c) in &rhs.terms {
                    out.add_term(e, c);
                }
                out
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $check(self, rhs);
                let mut out = self.clone();
                for (&e, &c) in &rhs.terms {
                    out.add_term(e, -c);
                }
                out
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = self.clone();
                for c in out.terms.values_mut() {
                    *c = -*c;
                }
                out
            }
        }
    };
}

poly_ops!(Poly3, (u8, u8, u8), |_a: &Poly3, _b: &Poly3| {});
poly_ops!(Poly2, (u8, u8), |a: &Poly2, b: &Poly2| assert_eq!(
    a.vars, b.vars,
    "mixing polynomials over different variable pairs"
));

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i1, j1, k1), &c1) in &self.terms {
            for (&(i2, j2, k2), &c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        assert_eq!(
            self.vars, rhs.vars,
            "mixing polynomials over different variable pairs"
        );
        let mut out = Poly2::zero(self.vars);
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: i64,
    factors: &[(&str, u8)],
) -> fmt::Result {
    let mag = coeff.unsigned_abs();
    if first {
        if coeff < 0 {
            write!(f, "-")?;
        }
    } else if coeff < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mut wrote_factor = false;
    let is_constant = factors.iter().all(|&(_, e)| e == 0);
    if mag != 1 || is_constant {
        write!(f, "{mag}")?;
        wrote_factor = true;
    }
    for &(name, e) in factors {
        if e == 0 {
            continue;
        }
        if wrote_factor {
            write!(f, "*")?;
        }
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
        wrote_factor = true;
    }
    Ok(())
}

// Canonical print order: graded lexicographic with x > y > z, descending.
impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u8, u8, u8)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j, k)| std::cmp::Reverse((i + j + k, i, j, k)));
        for (n, &&(i, j, k)) in keys.iter().enumerate() {
            let c = self.terms[&(i, j, k)];
            write_term(f, n == 0, c, &[("x", i), ("y", j), ("z", k)])?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (a, b) = self.vars.names();
        let mut keys: Vec<&(u8, u8)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| std::cmp::Reverse((i + j, i, j)));
        for (n, &&(i, j)) in keys.iter().enumerate() {
            let c = self.terms[&(i, j)];
            write_term(f, n == 0, c, &[(a, i), (b, j)])?;
        }
        Ok(())
    }
}

/// tr(M^k) in z = tr(M) for det(M) = 1: p0 = 2, p1 = z, pk = z p(k-1) - p(k-2).
fn alternating_trace(k: usize) -> Poly3 {
    let mut prev = Poly3::constant(2);
    if k == 0 {
        return prev;
    }
    let z = Poly3::var_z();
    let mut cur = z.clone();
    for _ in 1..k {
        let next = &(&z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn tr_product(word: &[u8], memo: &mut HashMap<Vec<u8>, Poly3>) -> Poly3 {
    if word.is_empty() {
        return Poly3::constant(2);
    }
    if word.len() == 1 {
        return if word[0] == 1 {
            Poly3::var_x()
        } else {
            Poly3::var_y()
        };
    }
    if let Some(p) = memo.get(word) {
        return p.clone();
    }
    let n = word.len();
    let result = match (0..n).find(|&i| word[i] == word[(i + 1) % n]) {
        Some(i) => {
            // Rotate the doubled letter to the front; each branch strictly
            // shortens the word, so the recursion terminates.
            let mut rotated = Vec::with_capacity(n);
            rotated.extend_from_slice(&word[i..]);
            rotated.extend_from_slice(&word[..i]);
            let t = if rotated[0] == 1 {
                Poly3::var_x()
            } else {
                Poly3::var_y()
            };
            let dropped_one = tr_product(&rotated[1..], memo);
            let dropped_two = tr_product(&rotated[2..], memo);
            &(&t * &dropped_one) - &dropped_two
        }
        // No doubled letter even cyclically: the word alternates, so it has
        // even length and is a rotation of (12)^(n/2).
        None => alternating_trace(n / 2),
    };
    memo.insert(word.to_vec(), result.clone());
    result
}

/// The unique integer polynomial F_w with tr(P(w)(A,B)) = F_w(x, y, z) for
/// every det-1 pair, where x = tr(A), y = tr(B), z = tr(AB).
pub fn trace_polynomial(w: &Word) -> Poly3 {
    let mut memo = HashMap::new();
    tr_product(w.symbols(), &mut memo)
}

/// Rewrites a polynomial under y = x in the variable u = x^2. Fails if some
/// x-power is odd after the substitution.
pub fn specialize_equal_traces(p: &Poly3) -> Result<Poly2, FrickeError> {
    let mut out = Poly2::zero(Vars2::UZ);
    for (&(i, j, k), &c) in &p.terms {
        let e = i + j;
        if e % 2 != 0 {
            return Err(FrickeError::OddDegreeInX(e));
        }
        out.add_term((e / 2, k), c);
    }
    Ok(out)
}

/// Exact substitution u = v + 2.
pub fn shift_u_to_v(p: &Poly2) -> Poly2 {
    assert_eq!(p.vars, Vars2::UZ, "shift applies to (u, z) polynomials");
    let mut out = Poly2::zero(Vars2::VZ);
    for (&(m, k), &c) in &p.terms {
        // (v + 2)^m expanded exactly.
        let mut binom = 1i64;
        for t in 0..=m {
            // binom = C(m, t) computed incrementally.
            out.add_term((t, k), c * binom * (1i64 << (m - t)));
            binom = binom * (m as i64 - t as i64) / (t as i64 + 1);
        }
    }
    out
}

/// Reference trace polynomials for the words 1111, 1212, 1122, 1112,
/// hard-coded; the reducer must reproduce them bit-exactly.
pub fn reference_trace_polynomials() -> [Poly3; 4] {
    [
        // x^4 - 4x^2 + 2
        Poly3::from_terms(&[((4, 0, 0), 1), ((2, 0, 0), -4), ((0, 0, 0), 2)]),
        // z^2 - 2
        Poly3::from_terms(&[((0, 0, 2), 1), ((0, 0, 0), -2)]),
        // xyz - x^2 - y^2 + 2
        Poly3::from_terms(&[
            ((1, 1, 1), 1),
            ((2, 0, 0), -1),
            ((0, 2, 0), -1),
            ((0, 0, 0), 2),
        ]),
        // x^2 z - xy - z
        Poly3::from_terms(&[((2, 0, 1), 1), ((1, 1, 0), -1), ((0, 0, 1), -1)]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentityReport {
    pub word: String,
    pub trials: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Samples random det-1 complex pairs and checks the trace identity
/// |tr(P(w)) - F_w(x, y, z)| < 1e-8 * (1 + |F_w|) on each trial.
pub fn verify_trace_identity(w: &Word, trials: u64, seed: u64) -> TraceIdentityReport {
    let poly = trace_polynomial(w);
    let mut max_residual = 0.0f64;
    let mut pass = true;
    for index in 0..trials {
        let mut rng = stream_rng(seed, index);
        let p = det1_complex_pair(&mut rng);
        let x = p.first.trace();
        let y = p.second.trace();
        let z = (p.first * p.second).trace();
        let direct = evaluate_word(w, &p).trace();
        let predicted = poly.eval_complex(x, y, z);
        let residual = (direct - predicted).norm() / (1.0 + predicted.norm());
        max_residual = max_residual.max(residual);
        if residual >= 1e-8 {
            pass = false;
        }
    }
    TraceIdentityReport {
        word: w.to_string(),
        trials,
        max_residual,
        tolerance: 1e-8,
        pass,
    }
}
