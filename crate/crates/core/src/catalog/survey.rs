//! Single-question survey: questions multiply into one big question.
//!
//! Contributions are naturals under multiplication (unit 1); a return on
//! `n` is an answer index below `n`. A combined answer `i < m·n` projects
//! back as `(i mod m, i div m)` — the first member's answer varies fastest,
//! which is exactly why this collective is not commutative.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

struct Survey;

impl Collective for Survey {
    fn neutral(&self) -> Value {
        Value::Int(1)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        a.as_int()
            .unwrap()
            .checked_mul(b.as_int().unwrap())
            .map(Value::Int)
            .ok_or(Error::Overflow {
                operation: "survey aggregation",
            })
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let m = a.as_int().unwrap();
        let i = r.as_int().unwrap();
        Ok((Value::Int(i % m), Value::Int(i / m)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_nat().is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let n = c.as_int().unwrap();
        r.as_int().is_some_and(|i| i >= 0 && i < n)
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        Some((0..=bound as i64).map(Value::Int).collect())
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let n = c.as_int().unwrap();
        Some((0..n).map(Value::Int).collect())
    }
}

/// The single-question survey collective.
pub fn single_question_survey() -> CollectiveHandle {
    CollectiveHandle::new(
        "single_question_survey",
        BTreeMap::new(),
        Arc::new(Survey),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_projection_example() {
        let h = single_question_survey();
        let (x, y) = h
            .distribute(&Value::Int(7), &Value::Int(4), &Value::Int(19))
            .unwrap();
        assert_eq!((x, y), (Value::Int(5), Value::Int(2)));
    }

    #[test]
    fn unit_on_the_right() {
        let h = single_question_survey();
        let (x, y) = h
            .distribute(&Value::Int(6), &Value::Int(1), &Value::Int(4))
            .unwrap();
        assert_eq!((x, y), (Value::Int(4), Value::Int(0)));
    }

    #[test]
    fn answers_must_fit_the_grid() {
        let h = single_question_survey();
        assert!(h
            .distribute(&Value::Int(7), &Value::Int(4), &Value::Int(28))
            .is_err());
    }

    #[test]
    fn first_share_depends_on_order() {
        let h = single_question_survey();
        let (first, _) = h
            .distribute(&Value::Int(2), &Value::Int(3), &Value::Int(4))
            .unwrap();
        let (_, second) = h
            .distribute(&Value::Int(3), &Value::Int(2), &Value::Int(4))
            .unwrap();
        assert_eq!(first, Value::Int(0)); // 4 mod 2
        assert_eq!(second, Value::Int(1)); // 4 div 3
    }
}
