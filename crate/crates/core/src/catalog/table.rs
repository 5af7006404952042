//! Finite collectives given entirely by tables.
//!
//! A table lists the contributions, the unit index, the return set of every
//! contribution, the aggregation as an index table and the distribution as
//! an explicit pair map per contribution pair. Construction validates the
//! monoid laws and the three cancellation equations exhaustively, naming
//! the violated equation and indices on failure — so a handle built from a
//! table is lawful by construction.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

/// Explicit finite collective data.
#[derive(Clone, Debug)]
pub struct FiniteCollectiveTable {
    pub contributions: Vec<Value>,
    pub unit: usize,
    /// `returns[i]` is the return set of `contributions[i]`.
    pub returns: Vec<Vec<Value>>,
    /// `aggregation[i][j]` is the index of `contributions[i] * contributions[j]`.
    pub aggregation: Vec<Vec<usize>>,
    /// `distribution[i][j]` maps each return of the aggregate to the pair
    /// of returns for `i` and `j`.
    pub distribution: Vec<Vec<BTreeMap<Value, (Value, Value)>>>,
}

impl FiniteCollectiveTable {
    fn index_of(&self, v: &Value) -> Option<usize> {
        self.contributions.iter().position(|c| c == v)
    }

    fn agg(&self, i: usize, j: usize) -> usize {
        self.aggregation[i][j]
    }

    fn dist(&self, i: usize, j: usize, r: &Value) -> &(Value, Value) {
        &self.distribution[i][j][r]
    }

    /// Validates shape, the monoid laws, and Eqs. (1)-(3) exhaustively.
    pub fn validate(&self) -> Result<()> {
        let n = self.contributions.len();
        let shape = |detail: alloc::string::String| Err(Error::InvalidTable {
            law: "shape".to_string(),
            detail,
        });
        if n == 0 {
            return shape("no contributions".to_string());
        }
        let mut sorted = self.contributions.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return shape("duplicate contributions".to_string());
        }
        if self.unit >= n
            || self.returns.len() != n
            || self.aggregation.len() != n
            || self.distribution.len() != n
        {
            return shape("table sizes do not match the contribution count".to_string());
        }
        for i in 0..n {
            if self.aggregation[i].len() != n || self.distribution[i].len() != n {
                return shape(alloc::format!("row {i} has the wrong length"));
            }
            for j in 0..n {
                if self.aggregation[i][j] >= n {
                    return shape(alloc::format!("aggregation[{i}][{j}] out of range"));
                }
            }
            let mut rs = self.returns[i].clone();
            rs.sort();
            rs.dedup();
            if rs.len() != self.returns[i].len() {
                return shape(alloc::format!("duplicate returns for contribution {i}"));
            }
        }
        // distribution tables: total on the aggregate's returns, into the
        // factors' return sets
        for i in 0..n {
            for j in 0..n {
                let k = self.agg(i, j);
                let table = &self.distribution[i][j];
                if table.len() != self.returns[k].len()
                    || !self.returns[k].iter().all(|r| table.contains_key(r))
                {
                    return shape(alloc::format!(
                        "distribution[{i}][{j}] is not total on the returns of {k}"
                    ));
                }
                for (r, (ri, rj)) in table {
                    if !self.returns[i].contains(ri) || !self.returns[j].contains(rj) {
                        return shape(alloc::format!(
                            "distribution[{i}][{j}] leaves the return sets at {r}"
                        ));
                    }
                }
            }
        }
        let fail = |law: &str, detail: alloc::string::String| Err(Error::InvalidTable {
            law: law.to_string(),
            detail,
        });
        let u = self.unit;
        for i in 0..n {
            if self.agg(u, i) != i || self.agg(i, u) != i {
                return fail("monoid-unit", alloc::format!("at contribution {i}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.agg(self.agg(i, j), k) != self.agg(i, self.agg(j, k)) {
                        return fail("monoid-assoc", alloc::format!("at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        for i in 0..n {
            for r in &self.returns[i] {
                let (left, _) = self.dist(i, u, r);
                if left != r {
                    return fail("eq1-left", alloc::format!("at contribution {i}, return {r}"));
                }
                let (_, right) = self.dist(u, i, r);
                if right != r {
                    return fail("eq1-right", alloc::format!("at contribution {i}, return {r}"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = self.agg(a, b);
                    let bc = self.agg(b, c);
                    let abc = self.agg(ab, c);
                    for r in &self.returns[abc] {
                        let (r_ab, r_c) = self.dist(ab, c, r).clone();
                        let (r_a2, r_bc) = self.dist(a, bc, r).clone();
                        let (r_a1, r_b1) = self.dist(a, b, &r_ab).clone();
                        let (r_b2, r_c2) = self.dist(b, c, &r_bc).clone();
                        if r_a1 != r_a2 {
                            return fail("eq2-left", alloc::format!("at ({a}, {b}, {c}), return {r}"));
                        }
                        if r_c2 != r_c {
                            return fail("eq2-right", alloc::format!("at ({a}, {b}, {c}), return {r}"));
                        }
                        if r_b1 != r_b2 {
                            return fail("eq3", alloc::format!("at ({a}, {b}, {c}), return {r}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-contribution table whose return set is `{message}`: the
    /// smallest lawful table, behaving as a one-message distribution list.
    pub fn singleton_message(message: Value) -> FiniteCollectiveTable {
        FiniteCollectiveTable {
            contributions: alloc::vec![Value::sym("present")],
            unit: 0,
            returns: alloc::vec![alloc::vec![message.clone()]],
            aggregation: alloc::vec![alloc::vec![0]],
            distribution: alloc::vec![alloc::vec![
                [(message.clone(), (message.clone(), message))].into_iter().collect()
            ]],
        }
    }

    /// The potluck on a one-dish universe, encoded as a table, in the given
    /// variant. Cross-checks the table machinery against the potluck
    /// constructor.
    pub fn potluck_one_dish(variant: super::PotluckVariant) -> FiniteCollectiveTable {
        use super::PotluckVariant as V;
        let empty = Value::empty_set();
        let dish = Value::set([Value::sym("dish")]);
        let contributions = alloc::vec![empty.clone(), dish.clone()];
        let returns = alloc::vec![
            alloc::vec![empty.clone()],
            alloc::vec![empty.clone(), dish.clone()],
        ];
        let aggregation = alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]];
        let inter = |a: &Value, x: &Value| -> Value {
            Value::set(
                a.as_set()
                    .unwrap()
                    .intersection(x.as_set().unwrap())
                    .cloned(),
            )
        };
        let diff = |a: &Value, b: &Value| -> Value {
            Value::set(
                a.as_set()
                    .unwrap()
                    .difference(b.as_set().unwrap())
                    .cloned(),
            )
        };
        let mut distribution = Vec::new();
        for i in 0..2usize {
            let mut row = Vec::new();
            for j in 0..2usize {
                let v = &contributions[i];
                let w = &contributions[j];
                let k = aggregation[i][j];
                let mut table = BTreeMap::new();
                for x in &returns[k] {
                    let pair = match variant {
                        V::Symmetric => (inter(v, x), inter(w, x)),
                        V::FirstServed => (inter(v, x), diff(&inter(w, x), v)),
                        V::LastServed => (diff(&inter(v, x), w), inter(w, x)),
                        V::LastServedPrinted => (diff(&inter(v, x), w), inter(v, x)),
                    };
                    table.insert(x.clone(), pair);
                }
                row.push(table);
            }
            distribution.push(row);
        }
        FiniteCollectiveTable {
            contributions,
            unit: 0,
            returns,
            aggregation,
            distribution,
        }
    }
}

struct TableCollective {
    table: FiniteCollectiveTable,
}

impl Collective for TableCollective {
    fn neutral(&self) -> Value {
        self.table.contributions[self.table.unit].clone()
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (i, j) = (
            self.table.index_of(a).unwrap(),
            self.table.index_of(b).unwrap(),
        );
        Ok(self.table.contributions[self.table.agg(i, j)].clone())
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (i, j) = (
            self.table.index_of(a).unwrap(),
            self.table.index_of(b).unwrap(),
        );
        Ok(self.table.dist(i, j, r).clone())
    }

    fn is_contribution(&self, v: &Value) -> bool {
        self.table.index_of(v).is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let i = self.table.index_of(c).unwrap();
        self.table.returns[i].contains(r)
    }

    fn enumerate_contributions(&self, _bound: u32) -> Option<Vec<Value>> {
        Some(self.table.contributions.clone())
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let i = self.table.index_of(c).unwrap();
        Some(self.table.returns[i].clone())
    }
}

/// Builds a collective from validated table data. `fixture` is recorded as
/// the construction parameter for display purposes.
pub fn table_collective(table: FiniteCollectiveTable, fixture: &str) -> Result<CollectiveHandle> {
    table.validate()?;
    let mut params = BTreeMap::new();
    params.insert("fixture".to_string(), Value::sym(fixture));
    Ok(CollectiveHandle::new(
        "table_collective",
        params,
        Arc::new(TableCollective { table }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{potluck, PotluckVariant};

    #[test]
    fn singleton_table_is_a_distribution_list() {
        let h = table_collective(
            FiniteCollectiveTable::singleton_message(Value::sym("s")),
            "singleton_message",
        )
        .unwrap();
        let p = Value::sym("present");
        let (x, y) = h.distribute(&p, &p, &Value::sym("s")).unwrap();
        assert_eq!((x, y), (Value::sym("s"), Value::sym("s")));
    }

    #[test]
    fn encoded_potluck_matches_the_constructor() {
        let table = table_collective(
            FiniteCollectiveTable::potluck_one_dish(PotluckVariant::Symmetric),
            "potluck_one_dish",
        )
        .unwrap();
        let direct = potluck(&[Value::sym("dish")], PotluckVariant::Symmetric).unwrap();
        let contributions = table.enumerate_contributions(4).unwrap();
        for a in &contributions {
            for b in &contributions {
                assert_eq!(
                    table.aggregate(a, b).unwrap(),
                    direct.aggregate(a, b).unwrap()
                );
                let agg = table.aggregate(a, b).unwrap();
                for r in table.enumerate_returns_exact(&agg).unwrap() {
                    assert_eq!(
                        table.distribute(a, b, &r).unwrap(),
                        direct.distribute(a, b, &r).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn printed_potluck_formula_is_not_even_table_shaped() {
        // The broken printed formula hands the second member a share
        // outside their return set, so it cannot be written as a table at
        // all; the unit-cancellation failure itself is demonstrated through
        // the potluck constructor and the law checker.
        let err = table_collective(
            FiniteCollectiveTable::potluck_one_dish(PotluckVariant::LastServedPrinted),
            "potluck_printed",
        )
        .unwrap_err();
        match err {
            Error::InvalidTable { law, detail } => {
                assert_eq!(law, "shape");
                assert!(detail.contains("distribution"), "got {detail}");
            }
            other => panic!("expected invalid table, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_eq3_entry_is_named() {
        let mut t = FiniteCollectiveTable::potluck_one_dish(PotluckVariant::Symmetric);
        // Make the (dish, dish) distribution constantly ({dish}, ∅). Both
        // share maps are idempotent, so Eq. (2) still holds, and the unit
        // rows are untouched, so Eq. (1) holds; but the share maps no
        // longer commute, which is exactly Eq. (3).
        let dish = Value::set([Value::sym("dish")]);
        let empty = Value::empty_set();
        t.distribution[1][1].insert(empty.clone(), (dish.clone(), empty.clone()));
        t.distribution[1][1].insert(dish.clone(), (dish, empty));
        let err = table_collective(t, "corrupted").unwrap_err();
        match err {
            Error::InvalidTable { law, detail } => {
                assert_eq!(law, "eq3");
                assert!(detail.contains("(1, 1, 1)"), "got {detail}");
            }
            other => panic!("expected invalid table, got {other:?}"),
        }
    }
}
