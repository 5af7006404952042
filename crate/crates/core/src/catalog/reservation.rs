//! First-come-first-served reservations: time requests filled in order.
//!
//! Contributions are nonnegative rationals (amounts of time) aggregated by
//! addition; a return on `x` is any amount in `[0, x]`. The first member's
//! request is filled before the second sees anything:
//! `d -> (min(d, m), max(0, d - m))`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::catalog::nonneg_rational_grid;
use crate::collective::{Collective, CollectiveHandle};
use crate::error::Result;
use crate::seed;
use crate::value::{Rational, Value};

struct Reservation;

impl Collective for Reservation {
    fn neutral(&self) -> Value {
        Value::Int(0)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(Value::ratio(a.as_ratio().unwrap() + b.as_ratio().unwrap()))
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let m = a.as_ratio().unwrap();
        let d = r.as_ratio().unwrap();
        let first = if d < m { d.clone() } else { m.clone() };
        let rest = &d - &m;
        let second = if rest.is_zero() || rest > Rational::zero() {
            rest
        } else {
            Rational::zero()
        };
        Ok((Value::ratio(first), Value::ratio(second)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_ratio().is_some_and(|r| r >= Rational::zero())
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let x = c.as_ratio().unwrap();
        r.as_ratio()
            .is_some_and(|d| d >= Rational::zero() && d <= x)
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        Some(
            nonneg_rational_grid(bound)
                .into_iter()
                .map(Value::ratio)
                .collect(),
        )
    }

    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        let x = c.as_ratio().unwrap();
        let mut grid = nonneg_rational_grid(bound);
        if !grid.contains(&x) {
            grid.push(x.clone());
            grid.sort();
        }
        Some(
            grid.into_iter()
                .filter(|d| *d <= x)
                .map(Value::ratio)
                .collect(),
        )
    }

    fn gen_contribution(&self, s: u64, size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        Some(Value::ratio(seed::gen_nonneg_rational(&mut rng, size)))
    }

    fn gen_return(&self, c: &Value, s: u64, size: u32) -> Option<Value> {
        let x = c.as_ratio().unwrap();
        let mut rng = seed::rng(s);
        // a rational fraction of the interval [0, x]
        let frac = seed::gen_nonneg_rational(&mut rng, size);
        let frac = if frac > Rational::one() {
            frac.recip()
        } else {
            frac
        };
        Some(Value::ratio(x * frac))
    }
}

/// The reservation collective: returns on `x` live in the interval `[0, x]`.
pub fn reservation() -> CollectiveHandle {
    CollectiveHandle::new("reservation", BTreeMap::new(), Arc::new(Reservation))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visitor_time_runs_out_in_order() {
        let h = reservation();
        let (x, y) = h
            .distribute(&Value::Int(2), &Value::Int(3), &Value::Int(4))
            .unwrap();
        assert_eq!((x, y), (Value::Int(2), Value::Int(2)));
        let (x, y) = h
            .distribute(&Value::Int(2), &Value::Int(3), &Value::Int(1))
            .unwrap();
        assert_eq!((x, y), (Value::Int(1), Value::Int(0)));
    }

    #[test]
    fn returns_outside_the_interval_are_invalid() {
        let h = reservation();
        assert!(h.is_valid_return(&Value::Int(3), &Value::Int(2)).unwrap());
        assert!(!h.is_valid_return(&Value::Int(3), &Value::Int(5)).unwrap());
        assert!(h
            .distribute(&Value::Int(2), &Value::Int(3), &Value::Int(25))
            .is_err());
    }

    #[test]
    fn first_share_differs_across_orders() {
        // the comm-dis witness: min(d, m) vs max(0, d - n)
        let h = reservation();
        let (first, _) = h
            .distribute(&Value::Int(1), &Value::Int(2), &Value::Int(2))
            .unwrap();
        let (_, second) = h
            .distribute(&Value::Int(2), &Value::Int(1), &Value::Int(2))
            .unwrap();
        assert_eq!(first, Value::Int(1));
        assert_eq!(second, Value::Int(0));
    }
}
