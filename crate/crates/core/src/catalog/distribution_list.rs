//! Distribution lists: the trivial monoid with a message set.
//!
//! The single contribution is `present`; a return is any message from `S`,
//! and distributing copies it to both members: `s -> (s, s)`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

struct DistributionList {
    messages: Vec<Value>,
}

fn present() -> Value {
    Value::sym("present")
}

impl Collective for DistributionList {
    fn neutral(&self) -> Value {
        present()
    }

    fn aggregate(&self, _a: &Value, _b: &Value) -> Result<Value> {
        Ok(present())
    }

    fn distribute(&self, _a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        Ok((r.clone(), r.clone()))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        *v == present()
    }

    fn is_return(&self, _c: &Value, r: &Value) -> bool {
        self.messages.contains(r)
    }

    fn enumerate_contributions(&self, _bound: u32) -> Option<Vec<Value>> {
        Some(alloc::vec![present()])
    }

    fn enumerate_returns_exact(&self, _c: &Value) -> Option<Vec<Value>> {
        Some(self.messages.clone())
    }
}

/// A distribution list over the message set `S`.
pub fn distribution_list(messages: &[Value]) -> Result<CollectiveHandle> {
    if messages.is_empty() {
        return Err(Error::InvalidParams {
            constructor: "distribution_list".to_string(),
            message: "message set must be nonempty".to_string(),
        });
    }
    let mut sorted = messages.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut params = BTreeMap::new();
    params.insert("S".to_string(), Value::set(sorted.iter().cloned()));
    Ok(CollectiveHandle::new(
        "distribution_list",
        params,
        Arc::new(DistributionList { messages: sorted }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_goes_to_everyone_present() {
        let h = distribution_list(&[Value::sym("m")]).unwrap();
        let (x, y) = h
            .distribute(&present(), &present(), &Value::sym("m"))
            .unwrap();
        assert_eq!((x, y), (Value::sym("m"), Value::sym("m")));
        // three members: s -> (s, s, s)
        let members = alloc::vec![present(), present(), present()];
        let shares = h.distribute_all(&members, &Value::sym("m")).unwrap();
        assert_eq!(shares, alloc::vec![Value::sym("m"); 3]);
    }

    #[test]
    fn rejects_foreign_messages() {
        let h = distribution_list(&[Value::sym("m1"), Value::sym("m2")]).unwrap();
        assert!(!h.is_valid_return(&present(), &Value::sym("other")).unwrap());
    }
}
