//! The collective abstraction: a monoid of contributions together with a
//! per-contribution set of returns and a coassociative distribution of
//! returns on aggregates back to the factors.
//!
//! Each concrete protocol is a type implementing [`Collective`]; a
//! [`CollectiveHandle`] wraps one behind `Arc<dyn Collective>` together with
//! its construction metadata, validates preconditions at the boundary, and
//! supplies the derived n-ary aggregation and distribution. Handles are
//! immutable and cheap to clone; all operations are pure.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interface::HandleInterface;
use crate::value::{Rational, Value};

/// One contribution-aggregation / return-distribution protocol, typed over
/// [`Value`]. Binary operations may assume their inputs already passed the
/// membership predicates — [`CollectiveHandle`] enforces that at the
/// boundary — but must still report genuine runtime failures (e.g. integer
/// overflow) rather than panic.
pub trait Collective: Send + Sync {
    /// The neutral contribution: the unit of `aggregate`.
    fn neutral(&self) -> Value;

    /// The associative binary aggregation. `a` and `b` are valid contributions.
    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value>;

    /// Splits a return on `aggregate(a, b)` into the two members' returns.
    /// `r` is a valid return on the aggregate.
    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)>;

    /// Membership in the contribution set.
    fn is_contribution(&self, v: &Value) -> bool;

    /// Membership of `r` in the return set of `c`; `c` is a valid contribution.
    fn is_return(&self, c: &Value, r: &Value) -> bool;

    /// Contribution equality; the tolerance applies to rational leaves only.
    fn eq_contribution(&self, a: &Value, b: &Value, tolerance: &Rational) -> bool {
        a.numeric_eq(b, tolerance)
    }

    /// Return equality; the tolerance applies to rational leaves only.
    fn eq_return(&self, a: &Value, b: &Value, tolerance: &Rational) -> bool {
        a.numeric_eq(b, tolerance)
    }

    /// All contributions of structural size at most `bound`, in a fixed
    /// deterministic order. `None` when the collective is not enumerable.
    fn enumerate_contributions(&self, _bound: u32) -> Option<Vec<Value>> {
        None
    }

    /// Returns of `c`, complete whenever `R[c]` is finite; for collectives
    /// with infinite return sets this is a bounded fragment.
    fn enumerate_returns(&self, c: &Value, _bound: u32) -> Option<Vec<Value>> {
        self.enumerate_returns_exact(c)
    }

    /// The complete, finite return set of `c`, or `None` when `R[c]` is
    /// infinite (or not exactly enumerable). Strategy tables in composite
    /// collectives rely on this being complete.
    fn enumerate_returns_exact(&self, _c: &Value) -> Option<Vec<Value>> {
        None
    }

    /// Deterministic seeded contribution generator. The default draws from
    /// `enumerate_contributions(size)` when available.
    fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        let all = self.enumerate_contributions(size)?;
        pick(&all, seed)
    }

    /// Deterministic seeded return generator for contribution `c`. `None`
    /// means no return could be produced (in particular when `R[c]` is
    /// empty). The default draws from `enumerate_returns(c, size)`.
    fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        let all = self.enumerate_returns(c, size)?;
        pick(&all, seed)
    }
}

fn pick(all: &[Value], seed: u64) -> Option<Value> {
    if all.is_empty() {
        None
    } else {
        Some(all[(seed % all.len() as u64) as usize].clone())
    }
}

/// A runnable collective: protocol plus construction metadata. The uniform
/// adapter consumed by the law checker, the session runner and the CLI.
#[derive(Clone)]
pub struct CollectiveHandle {
    name: String,
    params: BTreeMap<String, Value>,
    expr: String,
    inner: Arc<dyn Collective>,
}

impl CollectiveHandle {
    /// Wraps a protocol; the canonical expression text is synthesized from
    /// the name and parameters.
    pub fn new(
        name: &str,
        params: BTreeMap<String, Value>,
        inner: Arc<dyn Collective>,
    ) -> CollectiveHandle {
        let expr = synth_expr(name, &params);
        CollectiveHandle {
            name: name.to_owned(),
            params,
            expr,
            inner,
        }
    }

    /// Wraps a protocol under an explicit expression (used by combinators,
    /// whose parameters are sub-collectives rather than literals).
    pub fn with_expr(
        name: &str,
        params: BTreeMap<String, Value>,
        expr: String,
        inner: Arc<dyn Collective>,
    ) -> CollectiveHandle {
        CollectiveHandle {
            name: name.to_owned(),
            params,
            expr,
            inner,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Value> {
        &self.params
    }

    /// Canonical expression text for this handle.
    pub fn expr(&self) -> &str {
        &self.expr
    }

    pub fn neutral(&self) -> Value {
        self.inner.neutral()
    }

    pub fn is_contribution(&self, v: &Value) -> bool {
        self.inner.is_contribution(v)
    }

    /// Decidable membership in `R[c]`; errors if `c` is not a contribution.
    pub fn is_valid_return(&self, c: &Value, r: &Value) -> Result<bool> {
        self.check_contribution(c)?;
        Ok(self.inner.is_return(c, r))
    }

    /// Unvalidated membership test for callers that already validated `c`.
    pub fn is_return(&self, c: &Value, r: &Value) -> bool {
        self.inner.is_return(c, r)
    }

    pub fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        self.check_contribution(a)?;
        self.check_contribution(b)?;
        self.inner.aggregate(a, b)
    }

    pub fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        self.check_contribution(a)?;
        self.check_contribution(b)?;
        let agg = self.inner.aggregate(a, b)?;
        if !self.inner.is_return(&agg, r) {
            return Err(Error::InvalidReturn {
                collective: self.name.clone(),
                contribution: agg,
                value: r.clone(),
            });
        }
        self.inner.distribute(a, b, r)
    }

    /// Left fold of `aggregate` starting from the neutral contribution;
    /// the empty list aggregates to neutral.
    pub fn aggregate_all(&self, cs: &[Value]) -> Result<Value> {
        let mut acc = self.inner.neutral();
        for c in cs {
            self.check_contribution(c)?;
            acc = self.inner.aggregate(&acc, c)?;
        }
        Ok(acc)
    }

    /// Splits a return on `aggregate_all(cs)` into one return per member,
    /// recursively along the left-nested bracketing: split between
    /// `aggregate_all(cs[..n-1])` and `cs[n-1]`, then recurse on the prefix.
    pub fn distribute_all(&self, cs: &[Value], r: &Value) -> Result<Vec<Value>> {
        let n = cs.len();
        // Prefix aggregates: prefixes[i] = aggregate_all(cs[..=i]).
        let mut prefixes = Vec::with_capacity(n);
        let mut acc = self.inner.neutral();
        for c in cs {
            self.check_contribution(c)?;
            acc = self.inner.aggregate(&acc, c)?;
            prefixes.push(acc.clone());
        }
        let total = prefixes.last().cloned().unwrap_or_else(|| self.inner.neutral());
        if !self.inner.is_return(&total, r) {
            return Err(Error::InvalidReturn {
                collective: self.name.clone(),
                contribution: total,
                value: r.clone(),
            });
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut out = alloc::vec![Value::Unit; n];
        let mut current = r.clone();
        for i in (1..n).rev() {
            let (prefix_share, last_share) =
                self.inner.distribute(&prefixes[i - 1], &cs[i], &current)?;
            out[i] = last_share;
            current = prefix_share;
        }
        out[0] = current;
        Ok(out)
    }

    pub fn eq_contribution(&self, a: &Value, b: &Value, tolerance: &Rational) -> bool {
        self.inner.eq_contribution(a, b, tolerance)
    }

    pub fn eq_return(&self, a: &Value, b: &Value, tolerance: &Rational) -> bool {
        self.inner.eq_return(a, b, tolerance)
    }

    pub fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        self.inner.enumerate_contributions(bound)
    }

    pub fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        self.inner.enumerate_returns(c, bound)
    }

    pub fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        self.inner.enumerate_returns_exact(c)
    }

    pub fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        self.inner.gen_contribution(seed, size)
    }

    pub fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        self.inner.gen_return(c, seed, size)
    }

    /// The interface of the collective: its contributions with their return
    /// sets, forgetting the protocol. Input to the free construction.
    pub fn interface(&self) -> HandleInterface {
        HandleInterface::new(self.clone())
    }

    /// Direct access to the wrapped protocol (no precondition validation).
    pub fn raw(&self) -> &dyn Collective {
        &*self.inner
    }

    fn check_contribution(&self, v: &Value) -> Result<()> {
        if self.inner.is_contribution(v) {
            Ok(())
        } else {
            Err(Error::InvalidContribution {
                collective: self.name.clone(),
                value: v.clone(),
            })
        }
    }
}

impl core::fmt::Debug for CollectiveHandle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "CollectiveHandle({})", self.expr)
    }
}

fn synth_expr(name: &str, params: &BTreeMap<String, Value>) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = write!(s, "{name}(");
    for (i, (k, v)) in params.iter().enumerate() {
        if i > 0 {
            let _ = write!(s, ", ");
        }
        let _ = write!(s, "{k}={v}");
    }
    let _ = write!(s, ")");
    s
}

const _: () = {
    fn assert_send_sync<T: Send + Sync>() {}
    fn check() {
        assert_send_sync::<CollectiveHandle>();
    }
    let _ = check;
};
