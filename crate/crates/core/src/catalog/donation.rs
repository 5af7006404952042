//! Donation boxes: any monoid with the trivial distribution.
//!
//! Contributions are monoid elements; every return set is the singleton
//! `{go-team!}`, so the distribution is the unique pair map. Commutativity
//! of the collective is exactly commutativity of the monoid.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

const THANKS: &str = "go-team!";

/// An explicit finite monoid given by tables; the general carrier for
/// donation boxes beyond the built-in numeric and string monoids.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    pub elements: Vec<Value>,
    pub unit: usize,
    /// op[i][j] = index of elements[i] * elements[j]
    pub op: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// Validates shape, unit and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        let fail = |msg: String| Err(Error::InvalidParams {
            constructor: "monoid table".to_string(),
            message: msg,
        });
        if self.unit >= n || self.op.len() != n || self.op.iter().any(|row| row.len() != n) {
            return fail("shape mismatch".to_string());
        }
        let mut sorted = self.elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return fail("duplicate elements".to_string());
        }
        for (i, row) in self.op.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                if k >= n {
                    return fail(alloc::format!("op[{i}][{j}] out of range"));
                }
            }
        }
        let u = self.unit;
        for i in 0..n {
            if self.op[u][i] != i || self.op[i][u] != i {
                return fail(alloc::format!("unit law fails at {i}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.op[self.op[i][j]][k] != self.op[i][self.op[j][k]] {
                        return fail(alloc::format!("associativity fails at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        Ok(())
    }

    fn index_of(&self, v: &Value) -> Option<usize> {
        self.elements.iter().position(|e| e == v)
    }
}

/// The monoids a donation box can be built over.
#[derive(Clone, Debug)]
pub enum MonoidSpec {
    NaturalsAdd,
    IntegersAdd,
    /// Free monoid on a single-character alphabet; elements are symbols
    /// whose characters all come from the alphabet.
    StringsConcat(Vec<char>),
    Table(MonoidTable),
}

impl MonoidSpec {
    fn name(&self) -> &'static str {
        match self {
            MonoidSpec::NaturalsAdd => "naturals_add",
            MonoidSpec::IntegersAdd => "integers_add",
            MonoidSpec::StringsConcat(_) => "strings_concat",
            MonoidSpec::Table(_) => "table",
        }
    }
}

struct DonationBox {
    monoid: MonoidSpec,
}

impl DonationBox {
    fn thanks() -> Value {
        Value::sym(THANKS)
    }
}

impl Collective for DonationBox {
    fn neutral(&self) -> Value {
        match &self.monoid {
            MonoidSpec::NaturalsAdd | MonoidSpec::IntegersAdd => Value::Int(0),
            MonoidSpec::StringsConcat(_) => Value::sym(""),
            MonoidSpec::Table(t) => t.elements[t.unit].clone(),
        }
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        match &self.monoid {
            MonoidSpec::NaturalsAdd | MonoidSpec::IntegersAdd => {
                let (x, y) = (a.as_int().unwrap(), b.as_int().unwrap());
                x.checked_add(y)
                    .map(Value::Int)
                    .ok_or(Error::Overflow { operation: "donation aggregation" })
            }
            MonoidSpec::StringsConcat(_) => {
                let mut s = a.as_sym().unwrap().to_string();
                s.push_str(b.as_sym().unwrap());
                Ok(Value::Sym(s))
            }
            MonoidSpec::Table(t) => {
                let (i, j) = (t.index_of(a).unwrap(), t.index_of(b).unwrap());
                Ok(t.elements[t.op[i][j]].clone())
            }
        }
    }

    fn distribute(&self, _a: &Value, _b: &Value, _r: &Value) -> Result<(Value, Value)> {
        Ok((Self::thanks(), Self::thanks()))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        match &self.monoid {
            MonoidSpec::NaturalsAdd => v.as_nat().is_some(),
            MonoidSpec::IntegersAdd => v.as_int().is_some(),
            MonoidSpec::StringsConcat(alphabet) => v
                .as_sym()
                .is_some_and(|s| s.chars().all(|c| alphabet.contains(&c))),
            MonoidSpec::Table(t) => t.index_of(v).is_some(),
        }
    }

    fn is_return(&self, _c: &Value, r: &Value) -> bool {
        r.as_sym() == Some(THANKS)
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        match &self.monoid {
            MonoidSpec::NaturalsAdd => {
                Some((0..=bound as i64).map(Value::Int).collect())
            }
            MonoidSpec::IntegersAdd => {
                Some((-(bound as i64)..=bound as i64).map(Value::Int).collect())
            }
            MonoidSpec::StringsConcat(alphabet) => {
                // All strings of length <= bound in length-then-lex order.
                let mut out = alloc::vec![String::new()];
                let mut layer = alloc::vec![String::new()];
                for _ in 0..bound {
                    let mut next = Vec::new();
                    for s in &layer {
                        for &c in alphabet {
                            let mut t = s.clone();
                            t.push(c);
                            next.push(t);
                        }
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                Some(out.into_iter().map(Value::Sym).collect())
            }
            MonoidSpec::Table(t) => Some(t.elements.clone()),
        }
    }

    fn enumerate_returns_exact(&self, _c: &Value) -> Option<Vec<Value>> {
        Some(alloc::vec![Self::thanks()])
    }
}

/// Builds the donation box over the given monoid. Table monoids are
/// validated; the other specs are total.
pub fn donation_box(monoid: MonoidSpec) -> Result<CollectiveHandle> {
    if let MonoidSpec::Table(t) = &monoid {
        t.validate()?;
    }
    let mut params = BTreeMap::new();
    params.insert("monoid".to_string(), Value::sym(monoid.name()));
    if let MonoidSpec::StringsConcat(alphabet) = &monoid {
        params.insert(
            "alphabet".to_string(),
            Value::list(alphabet.iter().map(|c| Value::Sym(c.to_string())).collect()),
        );
    }
    Ok(CollectiveHandle::new(
        "donation_box",
        params,
        Arc::new(DonationBox { monoid }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat_zero;

    #[test]
    fn every_contributor_receives_thanks() {
        let h = donation_box(MonoidSpec::NaturalsAdd).unwrap();
        let (x, y) = h
            .distribute(&Value::Int(3), &Value::Int(4), &Value::sym(THANKS))
            .unwrap();
        assert_eq!(x, Value::sym(THANKS));
        assert_eq!(y, Value::sym(THANKS));
    }

    #[test]
    fn strings_concatenate() {
        let h = donation_box(MonoidSpec::StringsConcat(alloc::vec!['a', 'b', 'c'])).unwrap();
        let agg = h.aggregate(&Value::sym("ab"), &Value::sym("c")).unwrap();
        assert_eq!(agg, Value::sym("abc"));
        // noncommutative monoid: "ab"*"c" != "c"*"ab"
        let swapped = h.aggregate(&Value::sym("c"), &Value::sym("ab")).unwrap();
        assert!(!h.eq_contribution(&agg, &swapped, &rat_zero()));
    }

    #[test]
    fn table_monoid_validation_rejects_broken_associativity() {
        // Left projection away from the unit: x*y = x for x != e.
        let t = MonoidTable {
            elements: alloc::vec![Value::Int(0), Value::Int(1), Value::Int(2)],
            unit: 0,
            op: alloc::vec![
                alloc::vec![0, 1, 2],
                alloc::vec![1, 1, 1],
                alloc::vec![2, 2, 2],
            ],
        };
        assert!(t.validate().is_ok());
        // 1*2 = 0 breaks associativity: (1*2)*2 = 2 but 1*(2*2) = 0.
        let mut bad = t.clone();
        bad.op[1][2] = 0;
        assert!(bad.validate().is_err());
    }
}
