//! Exact linear feasibility over the rationals by Fourier-Motzkin
//! elimination, with strict/weak inequality tracking and rational witness
//! extraction.
//!
//! Rows are integer-coefficient constraints `sum(c_i * x_i) + k >= 0` (or
//! `> 0` when strict). Elimination projects variables one at a time; the
//! projection is exact, so any point of the projected system extends to the
//! original one. Witnesses are recovered by back-substitution, picking the
//! simplest rational (smallest denominator, then smallest magnitude) inside
//! each feasible interval.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs . x + constant >= 0`, strictly when `strict` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinIneq {
    pub coeffs: Vec<i128>,
    pub constant: i128,
    pub strict: bool,
}

impl LinIneq {
    /// Normalize by the gcd of all entries; orientation is preserved.
    fn normalized(mut self) -> Self {
        let mut g = self.constant.unsigned_abs();
        for &c in &self.coeffs {
            g = g.gcd(&c.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            for c in &mut self.coeffs {
                *c /= g;
            }
            self.constant /= g;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// For a constant row, whether it holds.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.constant > 0
        } else {
            self.constant >= 0
        }
    }

    /// Value of `coeffs . x + constant` at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::from_integer(self.constant.into());
        for (c, x) in self.coeffs.iter().zip(point) {
            if *c != 0 {
                acc += BigRational::from_integer((*c).into()) * x;
            }
        }
        acc
    }

    /// Whether the point satisfies the constraint.
    pub fn holds_at(&self, point: &[BigRational]) -> bool {
        let v = self.eval(point);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

/// A conjunction of linear constraints over `nvars` rational variables.
#[derive(Clone, Debug, Default)]
pub struct LinSystem {
    nvars: usize,
    rows: Vec<LinIneq>,
}

impl LinSystem {
    pub fn new(nvars: usize) -> Self {
        LinSystem {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[LinIneq] {
        &self.rows
    }

    /// Adds `coeffs . x + constant >= 0` (`> 0` when strict).
    pub fn push(&mut self, coeffs: Vec<i128>, constant: i128, strict: bool) {
        assert_eq!(coeffs.len(), self.nvars);
        self.rows.push(
            LinIneq {
                coeffs,
                constant,
                strict,
            }
            .normalized(),
        );
    }

    /// Adds `coeffs . x + constant = 0` as two weak inequalities.
    pub fn push_eq(&mut self, coeffs: Vec<i128>, constant: i128) {
        let neg: Vec<i128> = coeffs.iter().map(|&c| -c).collect();
        self.push(coeffs, constant, false);
        self.push(neg, -constant, false);
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// Decides feasibility; on success returns a rational interior point.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        // Stages record the system before each elimination together with the
        // variable removed, for back-substitution.
        let mut rows = dedupe(self.rows.iter().cloned().map(LinIneq::normalized).collect())?;
        let mut remaining: Vec<usize> = (0..self.nvars).collect();
        let mut stages: Vec<(usize, Vec<LinIneq>)> = Vec::with_capacity(self.nvars);

        while !remaining.is_empty() {
            // Cheapest variable first: fewest lower*upper combinations.
            let (pick, var) = remaining
                .iter()
                .enumerate()
                .map(|(slot, &v)| {
                    let pos = rows.iter().filter(|r| r.coeffs[v] > 0).count();
                    let neg = rows.iter().filter(|r| r.coeffs[v] < 0).count();
                    (pos * neg, slot, v)
                })
                .min()
                .map(|(_, slot, v)| (slot, v))
                .expect("remaining is nonempty");
            remaining.swap_remove(pick);
            let next = eliminate(&rows, var)?;
            stages.push((var, rows));
            rows = next;
        }
        // Only constant rows are left and dedupe() verified them.

        let mut values: Vec<BigRational> = vec![BigRational::zero(); self.nvars];
        for (var, system) in stages.iter().rev() {
            values[*var] = pick_value(system, *var, &values);
        }
        Some(values)
    }
}

/// Drops tautologies, keeps the tightest row per coefficient vector, and
/// reports `None` on an unsatisfiable constant row.
fn dedupe(rows: Vec<LinIneq>) -> Option<Vec<LinIneq>> {
    let mut best: HashMap<Vec<i128>, (i128, bool)> = HashMap::new();
    for row in rows {
        if row.is_constant() {
            if !row.constant_holds() {
                return None;
            }
            continue;
        }
        match best.entry(row.coeffs.clone()) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert((row.constant, row.strict));
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let (k, strict) = *e.get();
                // Smaller constant is tighter; for equal constants strict wins.
                let tighter = (row.constant, row.strict);
                if tighter.0 < k || (tighter.0 == k && tighter.1 && !strict) {
                    e.insert(tighter);
                }
            }
        }
    }
    Some(
        best.into_iter()
            .map(|(coeffs, (constant, strict))| LinIneq {
                coeffs,
                constant,
                strict,
            })
            .collect(),
    )
}

/// One Fourier-Motzkin step: all combinations of a lower and an upper bound
/// on `var`, plus the rows not mentioning it.
fn eliminate(rows: &[LinIneq], var: usize) -> Option<Vec<LinIneq>> {
    let mut out = Vec::new();
    let (mut lowers, mut uppers) = (Vec::new(), Vec::new());
    for row in rows {
        match row.coeffs[var].cmp(&0) {
            std::cmp::Ordering::Greater => lowers.push(row),
            std::cmp::Ordering::Less => uppers.push(row),
            std::cmp::Ordering::Equal => out.push(row.clone()),
        }
    }
    for lo in &lowers {
        for up in &uppers {
            let a = lo.coeffs[var];
            let b = -up.coeffs[var];
            let mul = |x: i128, y: i128| x.checked_mul(y).expect("overflow in elimination");
            let add = |x: i128, y: i128| x.checked_add(y).expect("overflow in elimination");
            let coeffs: Vec<i128> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(&cl, &cu)| add(mul(b, cl), mul(a, cu)))
                .collect();
            debug_assert_eq!(coeffs[var], 0);
            let row = LinIneq {
                coeffs,
                constant: add(mul(b, lo.constant), mul(a, up.constant)),
                strict: lo.strict || up.strict,
            }
            .normalized();
            out.push(row);
        }
    }
    dedupe(out)
}

/// Bounds on `var` in `system` once every other participating variable has a
/// value, and the simplest rational inside them. The projected system was
/// feasible, so the interval is nonempty.
fn pick_value(system: &[LinIneq], var: usize, values: &[BigRational]) -> BigRational {
    let mut lo: Option<(BigRational, bool)> = None;
    let mut hi: Option<(BigRational, bool)> = None;
    for row in system {
        let c = row.coeffs[var];
        if c == 0 {
            continue;
        }
        let mut rest = BigRational::from_integer(row.constant.into());
        for (i, (&ci, x)) in row.coeffs.iter().zip(values).enumerate() {
            if i != var && ci != 0 {
                rest += BigRational::from_integer(ci.into()) * x;
            }
        }
        let bound = -rest / BigRational::from_integer(c.into());
        if c > 0 {
            let tighter = match &lo {
                None => true,
                Some((cur, cur_strict)) => bound > *cur || (bound == *cur && row.strict && !cur_strict),
            };
            if tighter {
                lo = Some((bound, row.strict));
            }
        } else {
            let tighter = match &hi {
                None => true,
                Some((cur, cur_strict)) => bound < *cur || (bound == *cur && row.strict && !cur_strict),
            };
            if tighter {
                hi = Some((bound, row.strict));
            }
        }
    }
    match (lo, hi) {
        (None, None) => BigRational::zero(),
        (Some((lo, _)), None) => simplest_above(&lo),
        (None, Some((hi, _))) => -simplest_above(&-hi),
        (Some((lo, lo_strict)), Some((hi, hi_strict))) => {
            if lo == hi {
                assert!(!lo_strict && !hi_strict, "empty interval in back-substitution");
                lo
            } else {
                assert!(lo < hi, "inverted interval in back-substitution");
                simplest_rational_between(&lo, &hi)
            }
        }
    }
}

/// Simplest rational strictly above `lo`.
fn simplest_above(lo: &BigRational) -> BigRational {
    if lo.is_negative() {
        BigRational::zero()
    } else {
        BigRational::from_integer(lo.floor().to_integer() + BigInt::one())
    }
}

/// The rational with the smallest denominator (ties: smallest magnitude) in
/// the open interval (lo, hi), by continued-fraction descent.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return BigRational::zero();
    }
    if !hi.is_positive() {
        // lo < hi <= 0: mirror into the nonnegative case.
        return -simplest_rational_between(&-hi, &-lo);
    }
    // 0 <= lo < hi (hi > 0, and 0 is not inside, so lo >= 0).
    let fl = lo.floor();
    let next = &fl + BigRational::one();
    if next < *hi {
        // Smallest integer in the interval, hence smallest magnitude too.
        return next;
    }
    // Same integer part: recurse on the inverted fractional parts.
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = if lo_frac.is_zero() {
        simplest_above(&hi_frac.recip())
    } else {
        simplest_rational_between(&hi_frac.recip(), &lo_frac.recip())
    };
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn one_dimensional_intervals() {
        // 1 <= x < 3
        let mut s = LinSystem::new(1);
        s.push(vec![1], -1, false);
        s.push(vec![-1], 3, true);
        let w = s.solve().unwrap();
        assert!(w[0] >= q(1, 1) && w[0] < q(3, 1));

        // x > 2 and x < 2
        let mut s = LinSystem::new(1);
        s.push(vec![1], -2, true);
        s.push(vec![-1], 2, true);
        assert!(!s.is_feasible());

        // x >= 2 and x <= 2 pins x = 2
        let mut s = LinSystem::new(1);
        s.push(vec![1], -2, false);
        s.push(vec![-1], 2, false);
        assert_eq!(s.solve().unwrap()[0], q(2, 1));

        // x > 2 and x <= 2 is empty
        let mut s = LinSystem::new(1);
        s.push(vec![1], -2, true);
        s.push(vec![-1], 2, false);
        assert!(!s.is_feasible());
    }

    #[test]
    fn sign_case_system_is_empty() {
        // z < v, v < -1, z > 1 over variables [v, z].
        let mut s = LinSystem::new(2);
        s.push(vec![1, -1], 0, true);
        s.push(vec![-1, 0], -1, true);
        s.push(vec![0, 1], -1, true);
        assert!(!s.is_feasible());
    }

    #[test]
    fn modified_sign_case_has_witness() {
        // z < v, v < -1, z < 1: nonempty, e.g. (v, z) = (-2, -3).
        let mut s = LinSystem::new(2);
        s.push(vec![1, -1], 0, true);
        s.push(vec![-1, 0], -1, true);
        s.push(vec![0, -1], 1, true);
        let point = [q(-2, 1), q(-3, 1)];
        assert!(s.rows().iter().all(|r| r.holds_at(&point)));
        let w = s.solve().unwrap();
        assert!(s.rows().iter().all(|r| r.holds_at(&w)), "witness {w:?}");

        // A single constraint z < v is feasible too.
        let mut s = LinSystem::new(2);
        s.push(vec![1, -1], 0, true);
        assert!(s.is_feasible());
    }

    #[test]
    fn equalities_back_substitute() {
        // 2x + 3y = 6, x = 0 forced by x >= 0 and x <= 0.
        let mut s = LinSystem::new(2);
        s.push_eq(vec![2, 3], -6);
        s.push(vec![1, 0], 0, false);
        s.push(vec![-1, 0], 0, false);
        let w = s.solve().unwrap();
        assert_eq!(w[0], q(0, 1));
        assert_eq!(w[1], q(2, 1));
    }

    #[test]
    fn zero_variable_systems() {
        let s = LinSystem::new(0);
        assert!(s.is_feasible());
        let mut s = LinSystem::new(0);
        s.push(vec![], -1, false);
        assert!(!s.is_feasible());
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(simplest_rational_between(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_rational_between(&q(0, 1), &q(1, 1)), q(1, 2));
        assert_eq!(simplest_rational_between(&q(-1, 2), &q(1, 7)), q(0, 1));
        assert_eq!(simplest_rational_between(&q(2, 1), &q(7, 2)), q(3, 1));
        assert_eq!(simplest_rational_between(&q(-7, 2), &q(-13, 4)), q(-10, 3));
        assert_eq!(simplest_rational_between(&q(5, 1), &q(11, 2)), q(16, 3));
        // Magnitude tie-break among integers: (-5/2, 0) holds -1 and -2.
        assert_eq!(simplest_rational_between(&q(-5, 2), &q(0, 1)), q(-1, 1));
        assert_eq!(simplest_rational_between(&q(-1, 2), &q(0, 1)), q(-1, 3));
    }

    proptest! {
        #[test]
        fn witness_satisfies_random_feasible_systems(
            point in proptest::collection::vec((-20i128..20, 1i128..8), 3),
            rows in proptest::collection::vec(
                (proptest::collection::vec(-4i128..5, 3), any::<bool>()),
                1..12,
            ),
        ) {
            // Build a system that the chosen random point satisfies, by
            // setting each constant from the row value at the point.
            let p: Vec<BigRational> = point
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            let mut s = LinSystem::new(3);
            for (coeffs, strict) in rows {
                let mut acc = BigRational::zero();
                for (c, x) in coeffs.iter().zip(&p) {
                    acc += BigRational::from_integer((*c).into()) * x;
                }
                // ceil(-acc) + 1 keeps the point strictly feasible.
                let constant = (-acc).ceil().to_integer() + 1;
                let constant = i128::try_from(constant).unwrap();
                s.push(coeffs, constant, strict);
            }
            let w = s.solve();
            prop_assert!(w.is_some());
            let w = w.unwrap();
            for r in s.rows() {
                prop_assert!(r.holds_at(&w));
            }
        }

        #[test]
        fn contradictory_rows_are_infeasible(
            coeffs in proptest::collection::vec(-4i128..5, 3),
            constant in -10i128..10,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let mut s = LinSystem::new(3);
            let neg: Vec<i128> = coeffs.iter().map(|&c| -c).collect();
            s.push(coeffs, constant, false);
            s.push(neg, -constant, true);
            prop_assert!(!s.is_feasible());
        }

        #[test]
        fn simplest_rational_is_inside_and_minimal(
            a in (-40i64..40, 1i64..12),
            b in (-40i64..40, 1i64..12),
        ) {
            let x = q(a.0, a.1);
            let y = q(b.0, b.1);
            prop_assume!(x != y);
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            let r = simplest_rational_between(&lo, &hi);
            prop_assert!(lo < r && r < hi);
            // No rational with a smaller denominator fits in the interval.
            let denom = r.denom().clone();
            let mut d = BigInt::one();
            while d < denom {
                let lo_n = (&lo * BigRational::from_integer(d.clone())).floor().to_integer();
                let hi_n = (&hi * BigRational::from_integer(d.clone())).ceil().to_integer();
                let mut n = lo_n;
                while n <= hi_n {
                    let cand = BigRational::new(n.clone(), d.clone());
                    prop_assert!(!(lo < cand && cand < hi),
                        "{cand} inside ({lo}, {hi}) beats {r}");
                    n += BigInt::one();
                }
                d += BigInt::one();
            }
        }
    }
}
