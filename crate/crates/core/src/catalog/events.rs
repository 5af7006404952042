//! Probabilistic events: the operad of finite probability spaces as a
//! collective.
//!
//! A contribution `(n, p)` is an event with `n` outcomes of probabilities
//! `p`. Aggregation runs the first event, then the second: outcome pairs
//! `(i, j)` flatten to `i·n + j` (outer index first, 0-based) with
//! probability `p_i · q_j`. A return is an outcome index, distributed by the
//! two projections `(i div n, i mod n)`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::seed;
use crate::value::{Rational, Value};

struct ProbabilisticEvents;

fn parse(v: &Value) -> Option<(i64, Vec<Rational>)> {
    let parts = v.as_tuple()?;
    if parts.len() != 2 {
        return None;
    }
    let n = parts[0].as_int()?;
    let probs: Option<Vec<Rational>> = parts[1].as_list()?.iter().map(|p| p.as_ratio()).collect();
    let probs = probs?;
    if probs.len() as i64 != n {
        return None;
    }
    Some((n, probs))
}

fn encode(probs: Vec<Rational>) -> Value {
    Value::tuple(alloc::vec![
        Value::Int(probs.len() as i64),
        Value::list(probs.into_iter().map(Value::ratio).collect()),
    ])
}

impl Collective for ProbabilisticEvents {
    fn neutral(&self) -> Value {
        encode(alloc::vec![Rational::one()])
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let ((m, p), (n, q)) = (parse(a).unwrap(), parse(b).unwrap());
        m.checked_mul(n).ok_or(Error::Overflow {
            operation: "event aggregation",
        })?;
        let mut probs = Vec::with_capacity((m * n) as usize);
        for pi in &p {
            for qj in &q {
                probs.push(pi * qj);
            }
        }
        Ok(encode(probs))
    }

    fn distribute(&self, _a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (n, _) = parse(b).unwrap();
        let i = r.as_int().unwrap();
        Ok((Value::Int(i / n), Value::Int(i % n)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        match parse(v) {
            Some((n, probs)) => {
                n >= 1
                    && probs.iter().all(|p| *p >= Rational::zero())
                    && probs.iter().sum::<Rational>().is_one()
            }
            None => false,
        }
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let (n, _) = parse(c).unwrap();
        r.as_int().is_some_and(|i| i >= 0 && i < n)
    }

    fn gen_contribution(&self, s: u64, size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        let n = 1 + seed::gen_range_u(&mut rng, size.max(1) as u64 - 1) as i64;
        let masses: Vec<i64> = (0..n)
            .map(|_| 1 + seed::gen_range_u(&mut rng, size.max(1) as u64) as i64)
            .collect();
        let total: i64 = masses.iter().sum();
        Some(encode(
            masses
                .into_iter()
                .map(|m| Rational::new(BigInt::from(m), BigInt::from(total)))
                .collect(),
        ))
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let (n, _) = parse(c).unwrap();
        Some((0..n).map(Value::Int).collect())
    }
}

/// Probabilistic events with exact rational outcome distributions.
pub fn probabilistic_events() -> CollectiveHandle {
    CollectiveHandle::new(
        "probabilistic_events",
        BTreeMap::new(),
        Arc::new(ProbabilisticEvents),
    )
}
