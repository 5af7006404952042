//! Potluck planner: offered dishes are pooled by union, a chosen menu is
//! distributed back as bring-instructions.
//!
//! Contributions are subsets of the universe `U`; a return on `V` is a
//! subset of `V`. Three lawful variants differ in who brings a dish offered
//! by several members:
//!
//! * `symmetric`  — everyone who offered: `(V ∩ X, W ∩ X)`
//! * `first_served` — the first member: `(V ∩ X, (W ∩ X) \ V)`
//! * `last_served`  — the last member: `((V ∩ X) \ W, W ∩ X)`
//!
//! `last_served_printed` is the uncorrected formula `((V ∩ X) \ W, V ∩ X)`,
//! kept for demonstrating a unit-cancellation failure; it is not a lawful
//! collective.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotluckVariant {
    Symmetric,
    FirstServed,
    LastServed,
    /// The broken last-served formula; violates Eq. (1) at `V = ∅`.
    LastServedPrinted,
}

impl PotluckVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            PotluckVariant::Symmetric => "symmetric",
            PotluckVariant::FirstServed => "first_served",
            PotluckVariant::LastServed => "last_served",
            PotluckVariant::LastServedPrinted => "last_served_printed",
        }
    }

    pub fn from_str(s: &str) -> Option<PotluckVariant> {
        match s {
            "symmetric" => Some(PotluckVariant::Symmetric),
            "first_served" => Some(PotluckVariant::FirstServed),
            "last_served" => Some(PotluckVariant::LastServed),
            "last_served_printed" => Some(PotluckVariant::LastServedPrinted),
            _ => None,
        }
    }
}

struct Potluck {
    universe: BTreeSet<Value>,
    variant: PotluckVariant,
}

fn intersect(a: &BTreeSet<Value>, b: &BTreeSet<Value>) -> BTreeSet<Value> {
    a.intersection(b).cloned().collect()
}

fn minus(a: &BTreeSet<Value>, b: &BTreeSet<Value>) -> BTreeSet<Value> {
    a.difference(b).cloned().collect()
}

impl Collective for Potluck {
    fn neutral(&self) -> Value {
        Value::empty_set()
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let mut u = a.as_set().unwrap().clone();
        u.extend(b.as_set().unwrap().iter().cloned());
        Ok(Value::Set(u))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (v, w, x) = (
            a.as_set().unwrap(),
            b.as_set().unwrap(),
            r.as_set().unwrap(),
        );
        let (first, second) = match self.variant {
            PotluckVariant::Symmetric => (intersect(v, x), intersect(w, x)),
            PotluckVariant::FirstServed => (intersect(v, x), minus(&intersect(w, x), v)),
            PotluckVariant::LastServed => (minus(&intersect(v, x), w), intersect(w, x)),
            PotluckVariant::LastServedPrinted => (minus(&intersect(v, x), w), intersect(v, x)),
        };
        Ok((Value::Set(first), Value::Set(second)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_set()
            .is_some_and(|s| s.iter().all(|d| self.universe.contains(d)))
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let offered = c.as_set().unwrap();
        r.as_set().is_some_and(|x| x.is_subset(offered))
    }

    fn enumerate_contributions(&self, _bound: u32) -> Option<Vec<Value>> {
        Some(subsets(&self.universe))
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        Some(subsets(c.as_set().unwrap()))
    }
}

/// All subsets in binary-counter order (canonical, deterministic).
fn subsets(universe: &BTreeSet<Value>) -> Vec<Value> {
    let items: Vec<&Value> = universe.iter().collect();
    (0..(1u64 << items.len()))
        .map(|mask| {
            Value::set(
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| (*v).clone()),
            )
        })
        .collect()
}

/// Potluck over the dish universe `U` in the chosen variant.
pub fn potluck(universe: &[Value], variant: PotluckVariant) -> Result<CollectiveHandle> {
    if universe.len() > 16 {
        return Err(Error::InvalidParams {
            constructor: "potluck".to_string(),
            message: "universe too large to enumerate".to_string(),
        });
    }
    let set: BTreeSet<Value> = universe.iter().cloned().collect();
    let mut params = BTreeMap::new();
    params.insert("U".to_string(), Value::Set(set.clone()));
    params.insert("variant".to_string(), Value::sym(variant.as_str()));
    Ok(CollectiveHandle::new(
        "potluck",
        params,
        Arc::new(Potluck {
            universe: set,
            variant,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dishes(items: &[&str]) -> Value {
        Value::set(items.iter().map(|s| Value::sym(s)))
    }

    fn universe() -> Vec<Value> {
        alloc::vec![Value::sym("pie"), Value::sym("salad")]
    }

    #[test]
    fn symmetric_asks_everyone_who_offered() {
        let h = potluck(&universe(), PotluckVariant::Symmetric).unwrap();
        let (x, y) = h
            .distribute(
                &dishes(&["pie"]),
                &dishes(&["pie", "salad"]),
                &dishes(&["pie"]),
            )
            .unwrap();
        assert_eq!((x, y), (dishes(&["pie"]), dishes(&["pie"])));
    }

    #[test]
    fn first_served_gives_the_dish_to_the_first_offerer() {
        let h = potluck(&universe(), PotluckVariant::FirstServed).unwrap();
        let (x, y) = h
            .distribute(
                &dishes(&["pie"]),
                &dishes(&["pie", "salad"]),
                &dishes(&["pie"]),
            )
            .unwrap();
        assert_eq!((x, y), (dishes(&["pie"]), dishes(&[])));
    }

    #[test]
    fn unit_cancellation_holds_in_all_lawful_variants() {
        for variant in [
            PotluckVariant::Symmetric,
            PotluckVariant::FirstServed,
            PotluckVariant::LastServed,
        ] {
            let h = potluck(&universe(), variant).unwrap();
            let (x, y) = h
                .distribute(&dishes(&["pie", "salad"]), &dishes(&[]), &dishes(&["salad"]))
                .unwrap();
            assert_eq!((x, y), (dishes(&["salad"]), dishes(&[])));
        }
    }

    #[test]
    fn printed_variant_breaks_unit_cancellation_at_empty_first_member() {
        let h = potluck(&universe(), PotluckVariant::LastServedPrinted).unwrap();
        // V = ∅: the second member's share should be X but comes back V ∩ X = ∅.
        let (_, second) = h
            .distribute(&dishes(&[]), &dishes(&["pie"]), &dishes(&["pie"]))
            .unwrap();
        assert_eq!(second, dishes(&[]));
    }

    #[test]
    fn menu_must_come_from_the_offered_dishes() {
        let h = potluck(&universe(), PotluckVariant::Symmetric).unwrap();
        assert!(!h
            .is_valid_return(&dishes(&["pie"]), &dishes(&["pie", "salad"]))
            .unwrap());
    }
}
