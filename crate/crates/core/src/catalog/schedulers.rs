//! Task schedulers: returns are prefixes of the aggregated work list.
//!
//! The first-come-first-served scheduler concatenates task lists; a return
//! is a prefix of the concatenation and each member receives the completed
//! part of their own list (earlier members first).
//!
//! The balanced scheduler aggregates lists of task *bundles* (multisets)
//! pointwise, padding the shorter list with empty bundles; a return is a
//! prefix of the merged list and each member receives the same-length
//! prefix of their own padded list. Lists are kept in canonical form with
//! trailing empty bundles trimmed, making structural equality match the
//! paper's equivalence.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

struct FcfsScheduler {
    alphabet: Vec<Value>,
}

impl Collective for FcfsScheduler {
    fn neutral(&self) -> Value {
        Value::list(Vec::new())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let mut items = a.as_list().unwrap().to_vec();
        items.extend(b.as_list().unwrap().iter().cloned());
        Ok(Value::list(items))
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let k = a.as_list().unwrap();
        let pre = r.as_list().unwrap();
        if pre.len() <= k.len() {
            // the prefix ends inside the first member's list
            Ok((r.clone(), Value::list(Vec::new())))
        } else {
            Ok((a.clone(), Value::list(pre[k.len()..].to_vec())))
        }
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_list()
            .is_some_and(|items| items.iter().all(|t| self.alphabet.contains(t)))
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let (full, pre) = match (c.as_list(), r.as_list()) {
            (Some(f), Some(p)) => (f, p),
            _ => return false,
        };
        pre.len() <= full.len() && full[..pre.len()] == *pre
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        // lists of length <= bound in length-then-lex order
        let mut out = alloc::vec![Vec::new()];
        let mut layer = alloc::vec![Vec::<Value>::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for l in &layer {
                for t in &self.alphabet {
                    let mut e = l.clone();
                    e.push(t.clone());
                    next.push(e);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        Some(out.into_iter().map(Value::list).collect())
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let full = c.as_list().unwrap();
        Some(
            (0..=full.len())
                .map(|i| Value::list(full[..i].to_vec()))
                .collect(),
        )
    }
}

/// First-come-first-served scheduler over the task alphabet `A`.
pub fn fcfs_scheduler(alphabet: &[Value]) -> Result<CollectiveHandle> {
    if alphabet.is_empty() {
        return Err(Error::InvalidParams {
            constructor: "fcfs_scheduler".to_string(),
            message: "alphabet must be nonempty".to_string(),
        });
    }
    let mut sorted = alphabet.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut params = BTreeMap::new();
    params.insert("A".to_string(), Value::set(sorted.iter().cloned()));
    Ok(CollectiveHandle::new(
        "fcfs_scheduler",
        params,
        Arc::new(FcfsScheduler { alphabet: sorted }),
    ))
}

struct BalancedScheduler {
    tasks: Vec<Value>,
}

/// A multiset over the task set, possibly empty.
fn is_bundle(v: &Value, tasks: &[Value]) -> bool {
    v.as_multiset()
        .is_some_and(|m| m.iter().all(|(t, n)| *n > 0 && tasks.contains(t)))
}

fn empty_bundle() -> Value {
    Value::multiset(Vec::new())
}

fn trim(mut items: Vec<Value>) -> Vec<Value> {
    while items.last().is_some_and(|m| m.as_multiset().unwrap().is_empty()) {
        items.pop();
    }
    items
}

fn bundle_union(a: &Value, b: &Value) -> Value {
    let mut m = a.as_multiset().unwrap().clone();
    for (t, n) in b.as_multiset().unwrap() {
        *m.entry(t.clone()).or_insert(0) += n;
    }
    Value::Multiset(m)
}

impl Collective for BalancedScheduler {
    fn neutral(&self) -> Value {
        Value::list(Vec::new())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (k, l) = (a.as_list().unwrap(), b.as_list().unwrap());
        let n = k.len().max(l.len());
        let empty = empty_bundle();
        let merged: Vec<Value> = (0..n)
            .map(|i| bundle_union(k.get(i).unwrap_or(&empty), l.get(i).unwrap_or(&empty)))
            .collect();
        Ok(Value::list(trim(merged)))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let m = r.as_list().unwrap().len();
        let share = |c: &Value| {
            let own = c.as_list().unwrap();
            let empty = empty_bundle();
            let padded: Vec<Value> = (0..m)
                .map(|i| own.get(i).cloned().unwrap_or_else(|| empty.clone()))
                .collect();
            Value::list(trim(padded))
        };
        Ok((share(a), share(b)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_list().is_some_and(|items| {
            items.iter().all(|b| is_bundle(b, &self.tasks))
                && !items
                    .last()
                    .is_some_and(|b| b.as_multiset().unwrap().is_empty())
        })
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        // a trimmed prefix of the canonical list
        let full = c.as_list().unwrap();
        let pre = match r.as_list() {
            Some(p) => p,
            None => return false,
        };
        if pre.last().is_some_and(|b| {
            b.as_multiset().map(|m| m.is_empty()).unwrap_or(true)
        }) {
            return false;
        }
        pre.len() <= full.len() && full[..pre.len()] == *pre
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        // bundles with per-task counts <= bound, then trimmed lists of
        // length <= bound over them
        let mut bundles = alloc::vec![Vec::<(Value, u64)>::new()];
        for t in &self.tasks {
            let mut next = Vec::new();
            for b in &bundles {
                for count in 0..=bound as u64 {
                    let mut e = b.clone();
                    if count > 0 {
                        e.push((t.clone(), count));
                    }
                    next.push(e);
                }
            }
            bundles = next;
        }
        let bundles: Vec<Value> = bundles.into_iter().map(Value::multiset).collect();
        let mut out = alloc::vec![Vec::new()];
        let mut layer = alloc::vec![Vec::<Value>::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for l in &layer {
                for b in &bundles {
                    let mut e = l.clone();
                    e.push(b.clone());
                    next.push(e);
                }
            }
            out.extend(
                next.iter()
                    .filter(|l| !l.last().unwrap().as_multiset().unwrap().is_empty())
                    .cloned(),
            );
            layer = next;
        }
        out.sort();
        out.dedup();
        Some(out.into_iter().map(Value::list).collect())
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let full = c.as_list().unwrap();
        let mut out: Vec<Value> = (0..=full.len())
            .map(|i| Value::list(trim(full[..i].to_vec())))
            .collect();
        out.sort();
        out.dedup();
        Some(out)
    }
}

/// Balanced scheduler over the task set `A`.
pub fn balanced_scheduler(tasks: &[Value]) -> Result<CollectiveHandle> {
    if tasks.is_empty() {
        return Err(Error::InvalidParams {
            constructor: "balanced_scheduler".to_string(),
            message: "task set must be nonempty".to_string(),
        });
    }
    let mut sorted = tasks.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut params = BTreeMap::new();
    params.insert("A".to_string(), Value::set(sorted.iter().cloned()));
    Ok(CollectiveHandle::new(
        "balanced_scheduler",
        params,
        Arc::new(BalancedScheduler { tasks: sorted }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym_list(items: &[&str]) -> Value {
        Value::list(items.iter().map(|s| Value::sym(s)).collect())
    }

    #[test]
    fn fcfs_prefix_distribution() {
        let h = fcfs_scheduler(&[Value::sym("a"), Value::sym("b"), Value::sym("c")]).unwrap();
        // prefix inside the first list
        let (x, y) = h
            .distribute(&sym_list(&["a", "b"]), &sym_list(&["c"]), &sym_list(&["a"]))
            .unwrap();
        assert_eq!((x, y), (sym_list(&["a"]), sym_list(&[])));
        // prefix covering both
        let (x, y) = h
            .distribute(
                &sym_list(&["a", "b"]),
                &sym_list(&["c"]),
                &sym_list(&["a", "b", "c"]),
            )
            .unwrap();
        assert_eq!((x, y), (sym_list(&["a", "b"]), sym_list(&["c"])));
        // unit on the left passes everything through
        let (x, y) = h
            .distribute(&sym_list(&[]), &sym_list(&["c"]), &sym_list(&["c"]))
            .unwrap();
        assert_eq!((x, y), (sym_list(&[]), sym_list(&["c"])));
    }

    #[test]
    fn fcfs_rejects_non_prefixes() {
        let h = fcfs_scheduler(&[Value::sym("a"), Value::sym("b")]).unwrap();
        assert!(h
            .distribute(&sym_list(&["a"]), &sym_list(&["b"]), &sym_list(&["b"]))
            .is_err());
    }

    #[test]
    fn fcfs_aggregate_all_concatenates() {
        let h = fcfs_scheduler(&[Value::sym("a"), Value::sym("b"), Value::sym("c")]).unwrap();
        let agg = h
            .aggregate_all(&[sym_list(&["a"]), sym_list(&["b", "c"])])
            .unwrap();
        assert_eq!(agg, sym_list(&["a", "b", "c"]));
    }

    fn bundle(items: &[(&str, u64)]) -> Value {
        Value::multiset(items.iter().map(|(s, n)| (Value::sym(s), *n)))
    }

    #[test]
    fn balanced_pads_and_merges_pointwise() {
        let h = balanced_scheduler(&[Value::sym("a"), Value::sym("b")]).unwrap();
        let k = Value::list(alloc::vec![bundle(&[("a", 1)])]);
        let l = Value::list(alloc::vec![bundle(&[("b", 1)]), bundle(&[("b", 1)])]);
        let agg = h.aggregate(&k, &l).unwrap();
        assert_eq!(
            agg,
            Value::list(alloc::vec![
                bundle(&[("a", 1), ("b", 1)]),
                bundle(&[("b", 1)])
            ])
        );
        // one completed bundle: each member gets their own first bundle
        let r = Value::list(alloc::vec![bundle(&[("a", 1), ("b", 1)])]);
        let (x, y) = h.distribute(&k, &l, &r).unwrap();
        assert_eq!(x, Value::list(alloc::vec![bundle(&[("a", 1)])]));
        assert_eq!(y, Value::list(alloc::vec![bundle(&[("b", 1)])]));
    }

    #[test]
    fn balanced_shares_are_trimmed() {
        let h = balanced_scheduler(&[Value::sym("a"), Value::sym("b")]).unwrap();
        let k = Value::list(alloc::vec![bundle(&[("a", 1)])]);
        let l = Value::list(alloc::vec![bundle(&[("b", 1)]), bundle(&[("b", 1)])]);
        let agg = h.aggregate(&k, &l).unwrap();
        let (x, y) = h.distribute(&k, &l, &agg).unwrap();
        // k's padded prefix [ {a}, {} ] trims back to [ {a} ]
        assert_eq!(x, k);
        assert_eq!(y, l);
    }
}
