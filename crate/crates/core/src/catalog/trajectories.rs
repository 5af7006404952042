//! Trajectories: polynomial vector fields on the rational plane.
//!
//! A contribution is a vector field `v = (v1, v2)` given by two polynomials
//! in `x1, x2`. Aggregation is "jump by `v`, then by `w` from where you
//! land": `(v then w)(x) = v(x) + w(x + v(x))`, computed by exact
//! polynomial substitution so the zero field is a strict unit. A return is
//! any point of the rational plane; distributing a start point hands each
//! member the position from which their jump departs, so the n-ary
//! distribution of `x0` is the cumulative trajectory `x0, x1, x2, ...`.
//!
//! Fields are restricted to polynomials over the rationals — closed under
//! the composition above — so law checking is exact.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;

use rand::Rng;

use crate::catalog::polynomial::{exponents_up_to, Poly2};
use crate::collective::{Collective, CollectiveHandle};
use crate::error::Result;
use crate::seed;
use crate::value::{Rational, Value};

/// A vector field as a pair of polynomial component functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldExpr {
    pub x1: Poly2,
    pub x2: Poly2,
}

impl VectorFieldExpr {
    pub fn zero() -> VectorFieldExpr {
        VectorFieldExpr {
            x1: Poly2::zero(),
            x2: Poly2::zero(),
        }
    }

    pub fn to_value(&self) -> Value {
        Value::tuple(alloc::vec![self.x1.to_value(), self.x2.to_value()])
    }

    pub fn from_value(v: &Value) -> Option<VectorFieldExpr> {
        let parts = v.as_tuple()?;
        if parts.len() != 2 {
            return None;
        }
        Some(VectorFieldExpr {
            x1: Poly2::from_value(&parts[0])?,
            x2: Poly2::from_value(&parts[1])?,
        })
    }

    pub fn eval(&self, x: &(Rational, Rational)) -> (Rational, Rational) {
        (self.x1.eval(&x.0, &x.1), self.x2.eval(&x.0, &x.1))
    }

    /// `self` then `other`: `x -> self(x) + other(x + self(x))`.
    pub fn then(&self, other: &VectorFieldExpr) -> VectorFieldExpr {
        let land1 = Poly2::coordinate(0).add(&self.x1);
        let land2 = Poly2::coordinate(1).add(&self.x2);
        VectorFieldExpr {
            x1: self.x1.add(&other.x1.substitute(&land1, &land2)),
            x2: self.x2.add(&other.x2.substitute(&land1, &land2)),
        }
    }
}

fn parse_point(v: &Value) -> Option<(Rational, Rational)> {
    let parts = v.as_tuple()?;
    if parts.len() != 2 {
        return None;
    }
    Some((parts[0].as_ratio()?, parts[1].as_ratio()?))
}

fn encode_point(p: (Rational, Rational)) -> Value {
    Value::tuple(alloc::vec![Value::ratio(p.0), Value::ratio(p.1)])
}

struct Trajectories;

impl Collective for Trajectories {
    fn neutral(&self) -> Value {
        VectorFieldExpr::zero().to_value()
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let v = VectorFieldExpr::from_value(a).unwrap();
        let w = VectorFieldExpr::from_value(b).unwrap();
        Ok(v.then(&w).to_value())
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let v = VectorFieldExpr::from_value(a).unwrap();
        let x0 = parse_point(r).unwrap();
        let jump = v.eval(&x0);
        let x1 = (x0.0.clone() + jump.0, x0.1.clone() + jump.1);
        Ok((r.clone(), encode_point(x1)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        VectorFieldExpr::from_value(v).is_some()
    }

    fn is_return(&self, _c: &Value, r: &Value) -> bool {
        parse_point(r).is_some()
    }

    /// Sparse fields of degree <= 2 with integer coefficients in `-2..=2`.
    fn gen_contribution(&self, s: u64, _size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        let component = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut p = Poly2::zero();
            for (e1, e2) in exponents_up_to(2) {
                // keep roughly half the monomials
                if rng.gen_range(0..2) == 0 {
                    let c = seed::gen_range_i(rng, 2);
                    p.add_term(e1, e2, Rational::from_integer(c.into()));
                }
            }
            p
        };
        Some(
            VectorFieldExpr {
                x1: component(&mut rng),
                x2: component(&mut rng),
            }
            .to_value(),
        )
    }

    fn gen_return(&self, _c: &Value, s: u64, size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        let a = seed::gen_nonneg_rational(&mut rng, size)
            - seed::gen_nonneg_rational(&mut rng, size);
        let b = seed::gen_nonneg_rational(&mut rng, size)
            - seed::gen_nonneg_rational(&mut rng, size);
        Some(encode_point((a, b)))
    }
}

/// The trajectory collective over polynomial vector fields.
pub fn trajectories() -> CollectiveHandle {
    CollectiveHandle::new("trajectories", BTreeMap::new(), Arc::new(Trajectories))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::polynomial::poly_from_terms;
    use crate::value::rat;

    fn constant_field(c1: i64, c2: i64) -> Value {
        VectorFieldExpr {
            x1: poly_from_terms(&[(0, 0, c1)]),
            x2: poly_from_terms(&[(0, 0, c2)]),
        }
        .to_value()
    }

    fn point(a: i64, b: i64) -> Value {
        Value::tuple(alloc::vec![Value::Int(a), Value::Int(b)])
    }

    #[test]
    fn each_member_learns_their_departure_point() {
        let h = trajectories();
        let t = constant_field(1, 0);
        let u = constant_field(0, 1);
        let (to_t, to_u) = h.distribute(&t, &u, &point(0, 0)).unwrap();
        assert_eq!(to_t, point(0, 0));
        assert_eq!(to_u, point(1, 0));
    }

    #[test]
    fn zero_field_is_a_strict_unit() {
        let h = trajectories();
        let v = constant_field(2, -1);
        assert_eq!(h.aggregate(&v, &h.neutral()).unwrap(), v);
        assert_eq!(h.aggregate(&h.neutral(), &v).unwrap(), v);
        let (x, y) = h.distribute(&v, &h.neutral(), &point(3, 4)).unwrap();
        assert_eq!(x, point(3, 4));
        assert_eq!(y, point(5, 3));
    }

    #[test]
    fn rotation_like_field_composes_by_substitution() {
        let h = trajectories();
        // v(x) = (-x2, x1)
        let v = VectorFieldExpr {
            x1: poly_from_terms(&[(0, 1, -1)]),
            x2: poly_from_terms(&[(1, 0, 1)]),
        };
        let agg = h.aggregate(&v.to_value(), &v.to_value()).unwrap();
        let composed = VectorFieldExpr::from_value(&agg).unwrap();
        // oracle: (v then v)(x) = v(x) + v(x + v(x)), evaluated pointwise
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let x = (rat(a, 1), rat(b, 1));
                let jump = v.eval(&x);
                let landed = (&x.0 + &jump.0, &x.1 + &jump.1);
                let second = v.eval(&landed);
                let expected = (jump.0 + second.0, jump.1 + second.1);
                assert_eq!(composed.eval(&x), expected);
            }
        }
        // at (1, 0): first jump (0, 1), lands at (1, 1), second jump (-1, 1)
        assert_eq!(
            composed.eval(&(rat(1, 1), rat(0, 1))),
            (rat(-1, 1), rat(2, 1))
        );
    }

    #[test]
    fn n_ary_distribution_walks_the_trajectory() {
        let h = trajectories();
        let fields = alloc::vec![
            constant_field(1, 0),
            constant_field(0, 1),
            constant_field(1, 1),
            constant_field(-1, 0),
        ];
        let shares = h.distribute_all(&fields, &point(0, 0)).unwrap();
        assert_eq!(
            shares,
            alloc::vec![point(0, 0), point(1, 0), point(1, 1), point(2, 2)]
        );
    }

    #[test]
    fn generated_fields_decode_and_are_canonical() {
        let h = trajectories();
        for s in 0..30 {
            let c = h.gen_contribution(s, 3).unwrap();
            assert!(h.is_contribution(&c));
        }
    }
}
