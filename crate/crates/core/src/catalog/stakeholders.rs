//! Stakeholders: pooled contributions with proportional payout.
//!
//! Contributions are nonnegative rationals aggregated by addition. A return
//! on a positive aggregate is any positive rational, divided in proportion
//! to the contributions; the only return on `0` is `0`, which settles the
//! all-members-contributed-nothing round (the `0/0 = 0` convention).

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::catalog::{nonneg_rational_grid, positive_rational_grid};
use crate::collective::{Collective, CollectiveHandle};
use crate::error::Result;
use crate::seed;
use crate::value::{Rational, Value};

struct Stakeholders;

impl Collective for Stakeholders {
    fn neutral(&self) -> Value {
        Value::Int(0)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(Value::ratio(a.as_ratio().unwrap() + b.as_ratio().unwrap()))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (a, b, t) = (
            a.as_ratio().unwrap(),
            b.as_ratio().unwrap(),
            r.as_ratio().unwrap(),
        );
        let total = &a + &b;
        if total.is_zero() {
            // both contributed nothing; the only valid return is 0
            return Ok((Value::Int(0), Value::Int(0)));
        }
        let first = &a * &t / &total;
        let second = t - &first;
        Ok((Value::ratio(first), Value::ratio(second)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_ratio().is_some_and(|r| r >= Rational::zero())
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let c = c.as_ratio().unwrap();
        match r.as_ratio() {
            Some(t) if c.is_zero() => t.is_zero(),
            Some(t) => t > Rational::zero(),
            None => false,
        }
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
        if c.as_ratio().unwrap().is_zero() {
            return Some(alloc::vec![Value::Int(0)]);
        }
        Some(
            positive_rational_grid(bound)
                .into_iter()
                .map(Value::ratio)
                .collect(),
        )
    }

    fn gen_contribution(&self, s: u64, size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        Some(Value::ratio(seed::gen_nonneg_rational(&mut rng, size)))
    }

    fn gen_return(&self, c: &Value, s: u64, size: u32) -> Option<Value> {
        if c.as_ratio().unwrap().is_zero() {
            return Some(Value::Int(0));
        }
        let mut rng = seed::rng(s);
        Some(Value::ratio(seed::gen_positive_rational(&mut rng, size)))
    }
}

/// The stakeholder collective over exact nonnegative rationals.
pub fn stakeholders() -> CollectiveHandle {
    CollectiveHandle::new("stakeholders", BTreeMap::new(), Arc::new(Stakeholders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;

    #[test]
    fn proportional_split() {
        let h = stakeholders();
        let (x, y) = h
            .distribute(&Value::Int(2), &Value::Int(3), &Value::Int(10))
            .unwrap();
        assert_eq!((x, y), (Value::Int(4), Value::Int(6)));
        let (x, y) = h
            .distribute(&Value::Int(1), &Value::Int(2), &Value::Int(1))
            .unwrap();
        assert_eq!(x, Value::Rat(rat(1, 3)));
        assert_eq!(y, Value::Rat(rat(2, 3)));
    }

    #[test]
    fn three_member_worked_example() {
        let h = stakeholders();
        let cs = alloc::vec![Value::Int(2), Value::Int(3), Value::Int(5)];
        assert_eq!(h.aggregate_all(&cs).unwrap(), Value::Int(10));
        let shares = h.distribute_all(&cs, &Value::Int(20)).unwrap();
        assert_eq!(shares, alloc::vec![Value::Int(4), Value::Int(6), Value::Int(10)]);
    }

    #[test]
    fn zero_contributor_gets_zero() {
        let h = stakeholders();
        let (x, y) = h
            .distribute(&Value::Int(2), &Value::Int(0), &Value::Int(10))
            .unwrap();
        assert_eq!((x, y), (Value::Int(10), Value::Int(0)));
    }

    #[test]
    fn return_set_on_zero_is_the_singleton_zero() {
        let h = stakeholders();
        assert!(h.is_valid_return(&Value::Int(0), &Value::Int(0)).unwrap());
        assert!(!h.is_valid_return(&Value::Int(0), &Value::Int(1)).unwrap());
        assert!(h.is_valid_return(&Value::Int(3), &Value::Int(2)).unwrap());
        assert!(!h.is_valid_return(&Value::Int(3), &Value::Int(0)).unwrap());
    }

    #[test]
    fn shares_sum_to_the_return_exactly() {
        let h = stakeholders();
        for s in 0..50u64 {
            let a = h.gen_contribution(s, 5).unwrap();
            let b = h.gen_contribution(s.wrapping_add(1000), 5).unwrap();
            let agg = h.aggregate(&a, &b).unwrap();
            if let Some(t) = h.gen_return(&agg, s, 5) {
                let (x, y) = h.distribute(&a, &b, &t).unwrap();
                let sum = x.as_ratio().unwrap() + y.as_ratio().unwrap();
                assert_eq!(sum, t.as_ratio().unwrap());
            }
        }
    }
}
