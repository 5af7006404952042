//! Presheaves on finite spaces as collectives: opens aggregate by union,
//! sections distribute by restriction.
//!
//! The space is given as data — a finite family of opens (subsets of a
//! finite point set) containing the empty set and closed under union — with
//! a finite section set per open and a restriction map per inclusion.
//! Functoriality (identity and composition) and the singleton section set
//! over the empty open are validated at construction, which is exactly what
//! makes the cancellation equations hold.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

/// Presheaf data over a finite family of opens.
#[derive(Clone, Debug)]
pub struct PresheafData {
    /// The opens; must contain the empty set and be closed under union.
    pub opens: Vec<BTreeSet<Value>>,
    /// Section set per open, indexed like `opens`.
    pub sections: Vec<Vec<Value>>,
    /// `restrictions[(sup, sub)]` maps each section over `opens[sup]` to its
    /// restriction over `opens[sub]`, for every inclusion `sub ⊆ sup`.
    pub restrictions: BTreeMap<(usize, usize), BTreeMap<Value, Value>>,
}

impl PresheafData {
    fn open_index(&self, u: &BTreeSet<Value>) -> Option<usize> {
        self.opens.iter().position(|o| o == u)
    }

    /// Validates shape, union closure, functoriality and `|F(∅)| = 1`.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::InvalidPresheaf(msg));
        let n = self.opens.len();
        if self.sections.len() != n {
            return fail("sections must be indexed like opens".to_string());
        }
        let mut sorted = self.opens.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return fail("duplicate opens".to_string());
        }
        let empty_idx = match self.open_index(&BTreeSet::new()) {
            Some(i) => i,
            None => return fail("the empty open is missing".to_string()),
        };
        if self.sections[empty_idx].len() != 1 {
            return fail("the section set over the empty open must be a singleton".to_string());
        }
        for (i, u) in self.opens.iter().enumerate() {
            for (j, v) in self.opens.iter().enumerate() {
                let union: BTreeSet<Value> = u.union(v).cloned().collect();
                if self.open_index(&union).is_none() {
                    return fail(alloc::format!("opens not closed under union at ({i}, {j})"));
                }
            }
        }
        // every inclusion carries a total restriction map into the right set
        for (sup, u) in self.opens.iter().enumerate() {
            for (sub, v) in self.opens.iter().enumerate() {
                if !v.is_subset(u) {
                    continue;
                }
                let map = match self.restrictions.get(&(sup, sub)) {
                    Some(m) => m,
                    None => {
                        return fail(alloc::format!("missing restriction map ({sup} -> {sub})"))
                    }
                };
                for s in &self.sections[sup] {
                    match map.get(s) {
                        Some(t) if self.sections[sub].contains(t) => {}
                        Some(_) => {
                            return fail(alloc::format!(
                                "restriction ({sup} -> {sub}) leaves the section set"
                            ))
                        }
                        None => {
                            return fail(alloc::format!(
                                "restriction ({sup} -> {sub}) undefined on {s}"
                            ))
                        }
                    }
                }
                if sup == sub {
                    for s in &self.sections[sup] {
                        if map.get(s) != Some(s) {
                            return fail(alloc::format!(
                                "identity restriction is not the identity at open {sup}"
                            ));
                        }
                    }
                }
            }
        }
        // composition: res W<-V after res V<-U equals res W<-U
        for (sup, u) in self.opens.iter().enumerate() {
            for (mid, v) in self.opens.iter().enumerate() {
                if !v.is_subset(u) {
                    continue;
                }
                for (sub, w) in self.opens.iter().enumerate() {
                    if !w.is_subset(v) {
                        continue;
                    }
                    for s in &self.sections[sup] {
                        let via = &self.restrictions[&(mid, sub)]
                            [&self.restrictions[&(sup, mid)][s]];
                        let direct = &self.restrictions[&(sup, sub)][s];
                        if via != direct {
                            return fail(alloc::format!(
                                "restrictions do not compose ({sup} -> {mid} -> {sub}) at {s}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant-ish presheaf on the two-open space `∅ ⊆ X`:
    /// `F(X) = {m1, m2}`, `F(∅)` a point.
    pub fn constant_two_open() -> PresheafData {
        let x: BTreeSet<Value> = [Value::Int(1)].into_iter().collect();
        let sections_x = alloc::vec![Value::sym("m1"), Value::sym("m2")];
        let point = Value::Unit;
        let mut restrictions = BTreeMap::new();
        restrictions.insert(
            (0, 0),
            [(point.clone(), point.clone())].into_iter().collect(),
        );
        restrictions.insert(
            (1, 1),
            sections_x
                .iter()
                .map(|s| (s.clone(), s.clone()))
                .collect(),
        );
        restrictions.insert(
            (1, 0),
            sections_x.iter().map(|s| (s.clone(), point.clone())).collect(),
        );
        PresheafData {
            opens: alloc::vec![BTreeSet::new(), x],
            sections: alloc::vec![alloc::vec![point], sections_x],
            restrictions,
        }
    }

    /// A four-open space `∅, {1}, {2}, {1,2}` with nontrivial restrictions:
    /// the two sections over the whole space restrict to distinct sections
    /// over `{1}` and collapse over `{2}`.
    pub fn three_open() -> PresheafData {
        let a: BTreeSet<Value> = [Value::Int(1)].into_iter().collect();
        let b: BTreeSet<Value> = [Value::Int(2)].into_iter().collect();
        let x: BTreeSet<Value> = [Value::Int(1), Value::Int(2)].into_iter().collect();
        let point = Value::Unit;
        let opens = alloc::vec![BTreeSet::new(), a, b, x];
        let sections = alloc::vec![
            alloc::vec![point.clone()],
            alloc::vec![Value::sym("a1"), Value::sym("a2")],
            alloc::vec![Value::sym("b")],
            alloc::vec![Value::sym("x1"), Value::sym("x2")],
        ];
        let mut restrictions: BTreeMap<(usize, usize), BTreeMap<Value, Value>> = BTreeMap::new();
        for (i, secs) in sections.iter().enumerate() {
            restrictions.insert((i, i), secs.iter().map(|s| (s.clone(), s.clone())).collect());
            if i > 0 {
                restrictions.insert(
                    (i, 0),
                    secs.iter().map(|s| (s.clone(), point.clone())).collect(),
                );
            }
        }
        restrictions.insert(
            (3, 1),
            [
                (Value::sym("x1"), Value::sym("a1")),
                (Value::sym("x2"), Value::sym("a2")),
            ]
            .into_iter()
            .collect(),
        );
        restrictions.insert(
            (3, 2),
            [
                (Value::sym("x1"), Value::sym("b")),
                (Value::sym("x2"), Value::sym("b")),
            ]
            .into_iter()
            .collect(),
        );
        PresheafData {
            opens,
            sections,
            restrictions,
        }
    }
}

struct Presheaf {
    data: PresheafData,
}

impl Presheaf {
    fn open_of(&self, v: &Value) -> Option<usize> {
        v.as_set().and_then(|s| self.data.open_index(s))
    }
}

impl Collective for Presheaf {
    fn neutral(&self) -> Value {
        Value::empty_set()
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let mut u = a.as_set().unwrap().clone();
        u.extend(b.as_set().unwrap().iter().cloned());
        Ok(Value::Set(u))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (u, v) = (self.open_of(a).unwrap(), self.open_of(b).unwrap());
        let union = self.aggregate(a, b)?;
        let sup = self.open_of(&union).unwrap();
        Ok((
            self.data.restrictions[&(sup, u)][r].clone(),
            self.data.restrictions[&(sup, v)][r].clone(),
        ))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        self.open_of(v).is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        self.open_of(c)
            .is_some_and(|i| self.data.sections[i].contains(r))
    }

    fn enumerate_contributions(&self, _bound: u32) -> Option<Vec<Value>> {
        Some(
            self.data
                .opens
                .iter()
                .map(|o| Value::Set(o.clone()))
                .collect(),
        )
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        Some(self.data.sections[self.open_of(c).unwrap()].clone())
    }
}

/// Builds the collective of a validated presheaf. `fixture` is recorded as
/// the construction parameter for display purposes.
pub fn presheaf_collective(data: PresheafData, fixture: &str) -> Result<CollectiveHandle> {
    data.validate()?;
    let mut params = BTreeMap::new();
    params.insert("fixture".to_string(), Value::sym(fixture));
    Ok(CollectiveHandle::new(
        "presheaf_collective",
        params,
        Arc::new(Presheaf { data }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        assert!(PresheafData::constant_two_open().validate().is_ok());
        assert!(PresheafData::three_open().validate().is_ok());
    }

    #[test]
    fn identity_restrictions_copy_the_section() {
        let h = presheaf_collective(PresheafData::constant_two_open(), "constant_two_open")
            .unwrap();
        let x = Value::set([Value::Int(1)]);
        let (l, r) = h.distribute(&x, &x, &Value::sym("m1")).unwrap();
        assert_eq!((l, r), (Value::sym("m1"), Value::sym("m1")));
    }

    #[test]
    fn unit_member_receives_the_point() {
        let h = presheaf_collective(PresheafData::three_open(), "three_open").unwrap();
        let a = Value::set([Value::Int(1)]);
        let (l, r) = h
            .distribute(&a, &Value::empty_set(), &Value::sym("a2"))
            .unwrap();
        assert_eq!((l, r), (Value::sym("a2"), Value::Unit));
    }

    #[test]
    fn nontrivial_restrictions_distribute() {
        let h = presheaf_collective(PresheafData::three_open(), "three_open").unwrap();
        let a = Value::set([Value::Int(1)]);
        let b = Value::set([Value::Int(2)]);
        let (l, r) = h.distribute(&a, &b, &Value::sym("x2")).unwrap();
        assert_eq!((l, r), (Value::sym("a2"), Value::sym("b")));
    }

    #[test]
    fn broken_functoriality_is_rejected() {
        let mut data = PresheafData::three_open();
        // make the identity over {1} swap the two sections
        data.restrictions.insert(
            (1, 1),
            [
                (Value::sym("a1"), Value::sym("a2")),
                (Value::sym("a2"), Value::sym("a1")),
            ]
            .into_iter()
            .collect(),
        );
        assert!(matches!(
            presheaf_collective(data, "broken"),
            Err(Error::InvalidPresheaf(_))
        ));
    }

    #[test]
    fn empty_open_must_have_one_section() {
        let mut data = PresheafData::constant_two_open();
        data.sections[0].push(Value::sym("extra"));
        assert!(presheaf_collective(data, "broken").is_err());
    }
}
