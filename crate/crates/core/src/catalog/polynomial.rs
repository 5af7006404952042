//! Bivariate polynomials over the rationals, in canonical normal form.
//!
//! The term map holds exponent pairs with nonzero coefficients only, so
//! structural equality of the encoding coincides with semantic equality of
//! the polynomial function. Used by the trajectory collective, whose
//! aggregation is polynomial substitution.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::value::{Rational, Value};

/// A polynomial in `x1`, `x2`: exponent pair `(e1, e2)` to coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The coordinate polynomial `x1` (`axis = 0`) or `x2` (`axis = 1`).
    pub fn coordinate(axis: u8) -> Poly2 {
        let mut p = Poly2::zero();
        let e = if axis == 0 { (1, 0) } else { (0, 1) };
        p.terms.insert(e, Rational::from_integer(1.into()));
        p
    }

    pub fn add_term(&mut self, e1: u32, e2: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e1, e2)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((e1, e2), c) in &other.terms {
            out.add_term(*e1, *e2, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a1, a2), c) in &self.terms {
            for ((b1, b2), d) in &other.terms {
                out.add_term(a1 + b1, a2 + b2, c * d);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly2 {
        let mut out = Poly2::constant(Rational::from_integer(1.into()));
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `s1` for `x1` and `s2` for `x2`.
    pub fn substitute(&self, s1: &Poly2, s2: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((e1, e2), c) in &self.terms {
            let term = s1.pow(*e1).mul(&s2.pow(*e2));
            for ((t1, t2), d) in &term.terms {
                out.add_term(*t1, *t2, c * d);
            }
        }
        out
    }

    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let mut out = Rational::zero();
        for ((e1, e2), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..*e1 {
                term *= x1;
            }
            for _ in 0..*e2 {
                term *= x2;
            }
            out += term;
        }
        out
    }

    /// Canonical encoding: a sorted list of `(e1, e2, coefficient)` triples.
    pub fn to_value(&self) -> Value {
        Value::list(
            self.terms
                .iter()
                .map(|((e1, e2), c)| {
                    Value::tuple(alloc::vec![
                        Value::Int(*e1 as i64),
                        Value::Int(*e2 as i64),
                        Value::ratio(c.clone()),
                    ])
                })
                .collect(),
        )
    }

    /// Decodes and re-validates the canonical form: sorted exponent pairs,
    /// no duplicates, no zero coefficients.
    pub fn from_value(v: &Value) -> Option<Poly2> {
        let items = v.as_list()?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<(u32, u32)> = None;
        for item in items {
            let parts = item.as_tuple()?;
            if parts.len() != 3 {
                return None;
            }
            let e1 = u32::try_from(parts[0].as_nat()?).ok()?;
            let e2 = u32::try_from(parts[1].as_nat()?).ok()?;
            let c = parts[2].as_ratio()?;
            if c.is_zero() {
                return None;
            }
            if prev.is_some_and(|p| p >= (e1, e2)) {
                return None;
            }
            prev = Some((e1, e2));
            terms.insert((e1, e2), c);
        }
        Some(Poly2 { terms })
    }
}

/// Evaluates a pair of polynomials at a point.
pub fn eval_pair(pair: &(Poly2, Poly2), x: &(Rational, Rational)) -> (Rational, Rational) {
    (pair.0.eval(&x.0, &x.1), pair.1.eval(&x.0, &x.1))
}

/// Builds a polynomial from integer-coefficient terms, for tests and demos.
pub fn poly_from_terms(terms: &[(u32, u32, i64)]) -> Poly2 {
    let mut p = Poly2::zero();
    for (e1, e2, c) in terms {
        p.add_term(*e1, *e2, Rational::from_integer((*c).into()));
    }
    p
}

/// All monomial exponent pairs with total degree at most `degree`.
pub fn exponents_up_to(degree: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for e1 in 0..=degree {
        for e2 in 0..=(degree - e1) {
            out.push((e1, e2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;

    #[test]
    fn substitution_matches_pointwise_evaluation() {
        // p(x1, x2) = x1^2 - 2 x1 x2 + 3
        let p = poly_from_terms(&[(2, 0, 1), (1, 1, -2), (0, 0, 3)]);
        // s1 = x1 + x2, s2 = x2^2 - 1
        let s1 = poly_from_terms(&[(1, 0, 1), (0, 1, 1)]);
        let s2 = poly_from_terms(&[(0, 2, 1), (0, 0, -1)]);
        let composed = p.substitute(&s1, &s2);
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                let (x1, x2) = (rat(a, 1), rat(b, 1));
                let direct = composed.eval(&x1, &x2);
                let via = p.eval(&s1.eval(&x1, &x2), &s2.eval(&x1, &x2));
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn canonical_value_round_trip() {
        let p = poly_from_terms(&[(0, 1, 2), (1, 0, -1), (2, 2, 5)]);
        let v = p.to_value();
        assert_eq!(Poly2::from_value(&v), Some(p));
    }

    #[test]
    fn from_value_rejects_unsorted_and_zero_terms() {
        let unsorted = Value::list(alloc::vec![
            Value::tuple(alloc::vec![Value::Int(1), Value::Int(0), Value::Int(1)]),
            Value::tuple(alloc::vec![Value::Int(0), Value::Int(0), Value::Int(2)]),
        ]);
        assert_eq!(Poly2::from_value(&unsorted), None);
        let zero_coeff = Value::list(alloc::vec![Value::tuple(alloc::vec![
            Value::Int(0),
            Value::Int(0),
            Value::Int(0)
        ])]);
        assert_eq!(Poly2::from_value(&zero_coeff), None);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = poly_from_terms(&[(1, 0, 2)]);
        let q = poly_from_terms(&[(1, 0, -2)]);
        assert!(p.add(&q).is_zero());
    }
}
