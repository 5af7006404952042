//! Prediction market: team forecasts pooled by weighted average, rewards
//! split in proportion to the probability each team put on the winner.
//!
//! A contribution is `(k, p)`: `k` analysts with consensus distribution `p`
//! over the candidate set `E`. Non-neutral contributions have `k >= 1` and
//! strictly positive `p`; the designated neutral is `(0, uniform)`. Returns
//! on a non-neutral contribution are `(winner, reward)` pairs with a
//! strictly positive rational reward; returns on the neutral are `(e, 0)`,
//! so zero-weight members drop out of both the average and the payout.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::seed;
use crate::value::{Rational, Value};

struct PredictionMarket {
    candidates: Vec<Value>,
}

struct Forecast {
    weight: i64,
    probs: Vec<Rational>,
}

impl PredictionMarket {
    fn uniform(&self) -> Vec<Rational> {
        let n = self.candidates.len() as i64;
        self.candidates
            .iter()
            .map(|_| Rational::new(BigInt::one(), BigInt::from(n)))
            .collect()
    }

    fn parse(&self, v: &Value) -> Option<Forecast> {
        let parts = v.as_tuple()?;
        if parts.len() != 2 {
            return None;
        }
        let weight = parts[0].as_nat()?;
        let probs: Option<Vec<Rational>> = parts[1]
            .as_list()?
            .iter()
            .map(|p| p.as_ratio())
            .collect();
        let probs = probs?;
        if probs.len() != self.candidates.len() {
            return None;
        }
        Some(Forecast { weight, probs })
    }

    fn encode(weight: i64, probs: Vec<Rational>) -> Value {
        Value::tuple(alloc::vec![
            Value::Int(weight),
            Value::list(probs.into_iter().map(Value::ratio).collect()),
        ])
    }

    fn candidate_index(&self, e: &Value) -> Option<usize> {
        self.candidates.iter().position(|c| c == e)
    }
}

impl Collective for PredictionMarket {
    fn neutral(&self) -> Value {
        Self::encode(0, self.uniform())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (x, y) = (self.parse(a).unwrap(), self.parse(b).unwrap());
        let total = x.weight.checked_add(y.weight).ok_or(Error::Overflow {
            operation: "market aggregation",
        })?;
        if total == 0 {
            return Ok(self.neutral());
        }
        let kw = Rational::from(BigInt::from(x.weight));
        let lw = Rational::from(BigInt::from(y.weight));
        let tw = Rational::from(BigInt::from(total));
        let probs = x
            .probs
            .iter()
            .zip(&y.probs)
            .map(|(p, q)| (&kw * p + &lw * q) / &tw)
            .collect();
        Ok(Self::encode(total, probs))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (x, y) = (self.parse(a).unwrap(), self.parse(b).unwrap());
        let parts = r.as_tuple().unwrap();
        let (e, reward) = (&parts[0], parts[1].as_ratio().unwrap());
        let i = self.candidate_index(e).unwrap();
        let wx = Rational::from(BigInt::from(x.weight)) * &x.probs[i];
        let wy = Rational::from(BigInt::from(y.weight)) * &y.probs[i];
        let total = &wx + &wy;
        let (sx, sy) = if total.is_zero() {
            // both neutral; the reward is necessarily 0
            (Rational::zero(), Rational::zero())
        } else {
            let sx = &wx * &reward / &total;
            let sy = reward - &sx;
            (sx, sy)
        };
        Ok((
            Value::tuple(alloc::vec![e.clone(), Value::ratio(sx)]),
            Value::tuple(alloc::vec![e.clone(), Value::ratio(sy)]),
        ))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        let f = match self.parse(v) {
            Some(f) => f,
            None => return false,
        };
        let sum: Rational = f.probs.iter().sum();
        if !sum.is_one() {
            return false;
        }
        if f.weight == 0 {
            f.probs == self.uniform()
        } else {
            f.probs.iter().all(|p| *p > Rational::zero())
        }
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let f = self.parse(c).unwrap();
        let parts = match r.as_tuple() {
            Some(p) if p.len() == 2 => p,
            _ => return false,
        };
        if self.candidate_index(&parts[0]).is_none() {
            return false;
        }
        match parts[1].as_ratio() {
            Some(reward) if f.weight == 0 => reward.is_zero(),
            Some(reward) => reward > Rational::zero(),
            None => false,
        }
    }

    fn gen_contribution(&self, s: u64, size: u32) -> Option<Value> {
        let mut rng = seed::rng(s);
        let weight = seed::gen_range_u(&mut rng, size.max(1) as u64) as i64;
        if weight == 0 {
            return Some(self.neutral());
        }
        // strictly positive integer masses, normalized to sum 1
        let masses: Vec<i64> = self
            .candidates
            .iter()
            .map(|_| 1 + seed::gen_range_u(&mut rng, size.max(1) as u64) as i64)
            .collect();
        let total: i64 = masses.iter().sum();
        let probs = masses
            .into_iter()
            .map(|m| Rational::new(BigInt::from(m), BigInt::from(total)))
            .collect();
        Some(Self::encode(weight, probs))
    }

    fn gen_return(&self, c: &Value, s: u64, size: u32) -> Option<Value> {
        let f = self.parse(c).unwrap();
        let mut rng = seed::rng(s);
        let e = self.candidates
            [seed::gen_range_u(&mut rng, self.candidates.len() as u64 - 1) as usize]
            .clone();
        let reward = if f.weight == 0 {
            Rational::zero()
        } else {
            seed::gen_positive_rational(&mut rng, size)
        };
        Some(Value::tuple(alloc::vec![e, Value::ratio(reward)]))
    }
}

/// A prediction market over the candidate set `E`.
pub fn prediction_market(candidates: &[Value]) -> Result<CollectiveHandle> {
    if candidates.is_empty() {
        return Err(Error::InvalidParams {
            constructor: "prediction_market".to_string(),
            message: "candidate set must be nonempty".to_string(),
        });
    }
    let mut sorted = candidates.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut params = BTreeMap::new();
    params.insert("E".to_string(), Value::list(sorted.clone()));
    Ok(CollectiveHandle::new(
        "prediction_market",
        params,
        Arc::new(PredictionMarket { candidates: sorted }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;

    fn market() -> CollectiveHandle {
        prediction_market(&[Value::sym("e1"), Value::sym("e2")]).unwrap()
    }

    fn forecast(k: i64, probs: &[(i64, i64)]) -> Value {
        Value::tuple(alloc::vec![
            Value::Int(k),
            Value::list(
                probs
                    .iter()
                    .map(|(n, d)| Value::rational(*n, *d))
                    .collect()
            ),
        ])
    }

    #[test]
    fn weighted_average_of_forecasts() {
        let h = market();
        let agg = h
            .aggregate(&forecast(1, &[(1, 3), (2, 3)]), &forecast(1, &[(1, 2), (1, 2)]))
            .unwrap();
        assert_eq!(agg, forecast(2, &[(5, 12), (7, 12)]));
    }

    #[test]
    fn reward_split_for_the_winner() {
        let h = market();
        let (x, y) = h
            .distribute(
                &forecast(1, &[(1, 3), (2, 3)]),
                &forecast(1, &[(1, 2), (1, 2)]),
                &Value::tuple(alloc::vec![Value::sym("e2"), Value::Int(7)]),
            )
            .unwrap();
        assert_eq!(x, Value::tuple(alloc::vec![Value::sym("e2"), Value::Int(4)]));
        assert_eq!(y, Value::tuple(alloc::vec![Value::sym("e2"), Value::Int(3)]));
    }

    #[test]
    fn neutral_member_gets_the_zero_return() {
        let h = market();
        let c = forecast(1, &[(1, 3), (2, 3)]);
        let r = Value::tuple(alloc::vec![Value::sym("e1"), Value::Int(5)]);
        let (x, y) = h.distribute(&c, &h.neutral(), &r).unwrap();
        assert_eq!(x, r);
        assert_eq!(
            y,
            Value::tuple(alloc::vec![Value::sym("e1"), Value::Int(0)])
        );
    }

    #[test]
    fn contribution_validation() {
        let h = market();
        // not normalized
        assert!(!h.is_contribution(&forecast(1, &[(1, 3), (1, 3)])));
        // zero entry with positive weight
        assert!(!h.is_contribution(&forecast(2, &[(0, 1), (1, 1)])));
        // zero weight must be uniform
        assert!(!h.is_contribution(&forecast(0, &[(1, 3), (2, 3)])));
        assert!(h.is_contribution(&forecast(0, &[(1, 2), (1, 2)])));
        assert!(h.is_contribution(&forecast(3, &[(1, 4), (3, 4)])));
    }

    #[test]
    fn aggregate_probabilities_sum_to_one() {
        let h = market();
        for s in 0..40u64 {
            let a = h.gen_contribution(s, 4).unwrap();
            let b = h.gen_contribution(s.wrapping_add(77), 4).unwrap();
            let agg = h.aggregate(&a, &b).unwrap();
            let probs = agg.as_tuple().unwrap()[1].as_list().unwrap().to_vec();
            let sum: crate::value::Rational =
                probs.iter().map(|p| p.as_ratio().unwrap()).sum();
            assert_eq!(sum, rat(1, 1));
        }
    }
}
