//! Collectives on skeletal finite sets and finite ordinals.
//!
//! * `simplices` — objects of the algebraist's simplex category: naturals
//!   under addition, returns are incoming order-preserving maps, distributed
//!   by pulling back along the two block inclusions.
//! * `finset_coproduct` — skeletal finite sets under disjoint union (again
//!   addition on the skeleton), returns are outgoing functions, distributed
//!   by precomposing the two canonical inclusions.
//! * `finset_cartesian_closed` — skeletal finite sets under product
//!   (multiplication), returns are outgoing functions, distributed by the
//!   two curried forms.
//!
//! The skeleton fixes `{0..n-1}` as the representative of size `n`; pairing
//! uses `(i, j) -> i·d + j` and exponentials index functions by their
//! big-endian digit string, so every operation is literal arithmetic.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::catalog::index_vectors;
use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::value::Value;

// ---------------------------------------------------------------------------
// simplices

struct Simplices;

/// A face of simplex `n`: a nondecreasing list with values in `1..=n`
/// (1-based, matching the convention for ordered sets).
fn is_monotone_map(r: &Value, n: i64) -> bool {
    let items = match r.as_list() {
        Some(i) => i,
        None => return false,
    };
    let mut prev = 1;
    for v in items {
        match v.as_int() {
            Some(x) if x >= prev && x <= n => prev = x,
            _ => return false,
        }
    }
    true
}

impl Collective for Simplices {
    fn neutral(&self) -> Value {
        Value::Int(0)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        a.as_int()
            .unwrap()
            .checked_add(b.as_int().unwrap())
            .map(Value::Int)
            .ok_or(Error::Overflow {
                operation: "simplex aggregation",
            })
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let n = a.as_int().unwrap();
        let g = r.as_list().unwrap();
        let left: Vec<Value> = g
            .iter()
            .filter(|v| v.as_int().unwrap() <= n)
            .cloned()
            .collect();
        let right: Vec<Value> = g
            .iter()
            .filter_map(|v| {
                let x = v.as_int().unwrap();
                (x > n).then(|| Value::Int(x - n))
            })
            .collect();
        Ok((Value::list(left), Value::list(right)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_nat().is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        is_monotone_map(r, c.as_int().unwrap())
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        Some((0..=bound as i64).map(Value::Int).collect())
    }

    /// Faces with domain size `m <= bound` (the full return set is infinite
    /// in `m`).
    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        let n = c.as_int().unwrap();
        let mut out = Vec::new();
        let mut layer = alloc::vec![Vec::<i64>::new()];
        out.push(Value::list(Vec::new()));
        for _ in 0..bound {
            let mut next = Vec::new();
            for f in &layer {
                let lo = *f.last().unwrap_or(&1);
                for v in lo..=n {
                    let mut e = f.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            out.extend(
                next.iter()
                    .map(|f| Value::list(f.iter().map(|v| Value::Int(*v)).collect())),
            );
            layer = next;
        }
        Some(out)
    }
}

/// The simplex collective: simplices aggregate by joining point sets,
/// faces distribute by pullback along the block inclusions.
pub fn simplices() -> CollectiveHandle {
    CollectiveHandle::new("simplices", BTreeMap::new(), Arc::new(Simplices))
}

// ---------------------------------------------------------------------------
// finset_coproduct

struct FinsetCoproduct {
    codomain_bound: i64,
}

/// Returns the `(m, f)` pair encoded as `Tuple([Int(m), List(f)])`; `f` maps
/// `{0..n-1}` into `{0..m-1}`.
fn parse_function(r: &Value) -> Option<(i64, &[Value])> {
    let parts = r.as_tuple()?;
    if parts.len() != 2 {
        return None;
    }
    let m = parts[0].as_int()?;
    if m < 0 {
        return None;
    }
    Some((m, parts[1].as_list()?))
}

fn is_function(r: &Value, domain: i64) -> bool {
    match parse_function(r) {
        Some((m, f)) => {
            f.len() as i64 == domain
                && f.iter().all(|v| v.as_int().is_some_and(|x| x >= 0 && x < m))
        }
        None => false,
    }
}

fn encode_function(codomain: i64, f: Vec<i64>) -> Value {
    Value::tuple(alloc::vec![
        Value::Int(codomain),
        Value::list(f.into_iter().map(Value::Int).collect()),
    ])
}

/// All functions `domain -> {0..m-1}` for `m <= codomain_bound`.
fn enumerate_functions(domain: i64, codomain_bound: i64) -> Vec<Value> {
    let mut out = Vec::new();
    for m in 0..=codomain_bound {
        if m == 0 {
            // only the empty function has codomain 0
            if domain == 0 {
                out.push(encode_function(0, Vec::new()));
            }
            continue;
        }
        for f in index_vectors(m as usize, domain as usize) {
            out.push(encode_function(m, f.into_iter().map(|x| x as i64).collect()));
        }
    }
    out
}

impl Collective for FinsetCoproduct {
    fn neutral(&self) -> Value {
        Value::Int(0)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        a.as_int()
            .unwrap()
            .checked_add(b.as_int().unwrap())
            .map(Value::Int)
            .ok_or(Error::Overflow {
                operation: "coproduct aggregation",
            })
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let n = a.as_int().unwrap() as usize;
        let (m, f) = parse_function(r).unwrap();
        Ok((
            Value::tuple(alloc::vec![Value::Int(m), Value::list(f[..n].to_vec())]),
            Value::tuple(alloc::vec![Value::Int(m), Value::list(f[n..].to_vec())]),
        ))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_nat().is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        is_function(r, c.as_int().unwrap())
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        Some((0..=bound as i64).map(Value::Int).collect())
    }

    /// Codomains are capped by the constructor's `codomain_bound`; validity
    /// accepts any codomain.
    fn enumerate_returns(&self, c: &Value, _bound: u32) -> Option<Vec<Value>> {
        Some(enumerate_functions(c.as_int().unwrap(), self.codomain_bound))
    }
}

/// Skeletal finite sets under disjoint union; returns are outgoing
/// functions, distributed by restriction along the two inclusions.
pub fn finset_coproduct(codomain_bound: u32) -> Result<CollectiveHandle> {
    if codomain_bound == 0 {
        return Err(Error::InvalidParams {
            constructor: "finset_coproduct".to_string(),
            message: "codomain_bound must be at least 1".to_string(),
        });
    }
    let mut params = BTreeMap::new();
    params.insert(
        "codomain_bound".to_string(),
        Value::Int(codomain_bound as i64),
    );
    Ok(CollectiveHandle::new(
        "finset_coproduct",
        params,
        Arc::new(FinsetCoproduct {
            codomain_bound: codomain_bound as i64,
        }),
    ))
}

// ---------------------------------------------------------------------------
// finset_cartesian_closed

struct FinsetCartesianClosed {
    codomain_bound: i64,
}

/// Big-endian digit index of the tuple `(t_0, .., t_{k-1})` over base `e`:
/// the lexicographic position among all k-tuples.
fn lex_index(tuple: &[i64], base: i64) -> i64 {
    tuple.iter().fold(0, |acc, d| acc * base + d)
}

fn pow_i64(base: i64, exp: i64) -> Result<i64> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow {
        operation: "exponential object",
    })?;
    base.checked_pow(exp).ok_or(Error::Overflow {
        operation: "exponential object",
    })
}

impl Collective for FinsetCartesianClosed {
    fn neutral(&self) -> Value {
        Value::Int(1)
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        a.as_int()
            .unwrap()
            .checked_mul(b.as_int().unwrap())
            .map(Value::Int)
            .ok_or(Error::Overflow {
                operation: "product aggregation",
            })
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let c = a.as_int().unwrap();
        let d = b.as_int().unwrap();
        let (e, f) = parse_function(r).unwrap();
        let f: Vec<i64> = f.iter().map(|v| v.as_int().unwrap()).collect();
        // left: c -> e^d, i |-> index of (j |-> f(i*d + j))
        let mut left = Vec::with_capacity(c as usize);
        for i in 0..c {
            let row: Vec<i64> = (0..d).map(|j| f[(i * d + j) as usize]).collect();
            left.push(lex_index(&row, e));
        }
        // right: d -> e^c, j |-> index of (i |-> f(i*d + j))
        let mut right = Vec::with_capacity(d as usize);
        for j in 0..d {
            let col: Vec<i64> = (0..c).map(|i| f[(i * d + j) as usize]).collect();
            right.push(lex_index(&col, e));
        }
        Ok((
            encode_function(pow_i64(e, d)?, left),
            encode_function(pow_i64(e, c)?, right),
        ))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_nat().is_some()
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        is_function(r, c.as_int().unwrap())
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        Some((0..=bound as i64).map(Value::Int).collect())
    }

    fn enumerate_returns(&self, c: &Value, _bound: u32) -> Option<Vec<Value>> {
        Some(enumerate_functions(c.as_int().unwrap(), self.codomain_bound))
    }
}

/// Skeletal finite sets under product; returns are outgoing functions,
/// distributed by currying in each argument.
pub fn finset_cartesian_closed(codomain_bound: u32) -> Result<CollectiveHandle> {
    if codomain_bound == 0 {
        return Err(Error::InvalidParams {
            constructor: "finset_cartesian_closed".to_string(),
            message: "bound must be at least 1".to_string(),
        });
    }
    let mut params = BTreeMap::new();
    params.insert("bound".to_string(), Value::Int(codomain_bound as i64));
    Ok(CollectiveHandle::new(
        "finset_cartesian_closed",
        params,
        Arc::new(FinsetCartesianClosed {
            codomain_bound: codomain_bound as i64,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(values: &[i64]) -> Value {
        Value::list(values.iter().map(|v| Value::Int(*v)).collect())
    }

    #[test]
    fn simplex_pullback_example() {
        let h = simplices();
        let (f, f2) = h
            .distribute(&Value::Int(1), &Value::Int(2), &face(&[1, 2, 2, 3]))
            .unwrap();
        assert_eq!(f, face(&[1]));
        assert_eq!(f2, face(&[1, 1, 2]));
    }

    #[test]
    fn simplex_unit_keeps_everything_left() {
        let h = simplices();
        let g = face(&[1, 3, 3]);
        let (f, f2) = h.distribute(&Value::Int(3), &Value::Int(0), &g).unwrap();
        assert_eq!(f, g);
        assert_eq!(f2, face(&[]));
    }

    #[test]
    fn simplex_face_splits_preserve_monotonicity_and_merge_back() {
        let h = simplices();
        for n in 0..=3i64 {
            for n2 in 0..=3i64 {
                let agg = Value::Int(n + n2);
                for g in h.enumerate_returns(&agg, 3).unwrap() {
                    let (l, r) = h.distribute(&Value::Int(n), &Value::Int(n2), &g).unwrap();
                    assert!(h.is_return(&Value::Int(n), &l));
                    assert!(h.is_return(&Value::Int(n2), &r));
                    // merging left values with shifted right values restores g
                    let mut merged: Vec<i64> = l
                        .as_list()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_int().unwrap())
                        .collect();
                    merged.extend(
                        r.as_list()
                            .unwrap()
                            .iter()
                            .map(|v| v.as_int().unwrap() + n),
                    );
                    merged.sort();
                    let original: Vec<i64> = g
                        .as_list()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_int().unwrap())
                        .collect();
                    assert_eq!(merged, original);
                }
            }
        }
    }

    #[test]
    fn simplex_rejects_non_monotone_or_out_of_range_faces() {
        let h = simplices();
        assert!(!h.is_valid_return(&Value::Int(2), &face(&[2, 1])).unwrap());
        assert!(!h.is_valid_return(&Value::Int(2), &face(&[3])).unwrap());
        assert!(h.is_valid_return(&Value::Int(2), &face(&[1, 1, 2])).unwrap());
    }

    #[test]
    fn coproduct_restriction_example() {
        let h = finset_coproduct(2).unwrap();
        let f = encode_function(2, alloc::vec![0, 1]);
        let (l, r) = h.distribute(&Value::Int(1), &Value::Int(1), &f).unwrap();
        assert_eq!(l, encode_function(2, alloc::vec![0]));
        assert_eq!(r, encode_function(2, alloc::vec![1]));
    }

    #[test]
    fn coproduct_unit_gives_empty_function() {
        let h = finset_coproduct(2).unwrap();
        let f = encode_function(2, alloc::vec![1, 0]);
        let (l, r) = h.distribute(&Value::Int(2), &Value::Int(0), &f).unwrap();
        assert_eq!(l, f);
        assert_eq!(r, encode_function(2, alloc::vec![]));
    }

    #[test]
    fn coproduct_validity_accepts_any_codomain() {
        let h = finset_coproduct(2).unwrap();
        let f = encode_function(9, alloc::vec![8]);
        assert!(h.is_valid_return(&Value::Int(1), &f).unwrap());
        let bad = encode_function(2, alloc::vec![2]);
        assert!(!h.is_valid_return(&Value::Int(1), &bad).unwrap());
    }

    #[test]
    fn currying_example() {
        let h = finset_cartesian_closed(2).unwrap();
        // c = 2, d = 1, f = [0, 1] into e = 2
        let f = encode_function(2, alloc::vec![0, 1]);
        let (l, r) = h.distribute(&Value::Int(2), &Value::Int(1), &f).unwrap();
        assert_eq!(l, encode_function(2, alloc::vec![0, 1]));
        assert_eq!(r, encode_function(4, alloc::vec![1]));
    }

    #[test]
    fn currying_digit_oracle() {
        // decode each curried image back to its digit string and compare
        // against the original function values
        let h = finset_cartesian_closed(2).unwrap();
        let digits = |index: i64, len: i64, base: i64| -> Vec<i64> {
            let mut out = alloc::vec![0; len as usize];
            let mut rest = index;
            for slot in (0..len as usize).rev() {
                out[slot] = rest % base;
                rest /= base;
            }
            out
        };
        for c in 0..=2i64 {
            for d in 0..=2i64 {
                let agg = Value::Int(c * d);
                for fv in h.enumerate_returns(&agg, 2).unwrap() {
                    let (e, f) = parse_function(&fv).unwrap();
                    let f: Vec<i64> = f.iter().map(|v| v.as_int().unwrap()).collect();
                    let (l, r) = h.distribute(&Value::Int(c), &Value::Int(d), &fv).unwrap();
                    let (_, l) = parse_function(&l).unwrap();
                    let (_, r) = parse_function(&r).unwrap();
                    for i in 0..c {
                        let row = digits(l[i as usize].as_int().unwrap(), d, e);
                        for j in 0..d {
                            assert_eq!(row[j as usize], f[(i * d + j) as usize]);
                        }
                    }
                    for j in 0..d {
                        let col = digits(r[j as usize].as_int().unwrap(), c, e);
                        for i in 0..c {
                            assert_eq!(col[i as usize], f[(i * d + j) as usize]);
                        }
                    }
                }
            }
        }
    }
}
