//! Building new collectives from old.
//!
//! * [`parallel`] — both protocols run side by side: contributions and
//!   returns are pairs, everything acts componentwise.
//! * [`product`] — both contribute, but only one protocol's return comes
//!   back, tagged `left` or `right` and distributed by cases.
//! * [`composite`] — the protocols run in series: a contribution pairs a
//!   base contribution with a strategy turning each base return into a
//!   second-stage contribution.
//! * [`free`] — the free collective on a polynomial interface: lists of
//!   atoms under concatenation, returns distributed by list subdivision.
//!
//! Tagged returns are represented as `(left, v)` / `(right, v)` pairs;
//! strategies as explicit tables (`Value::Map`) or the constant form
//! `(const, d)`, compared extensionally.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::{Collective, CollectiveHandle};
use crate::error::{Error, Result};
use crate::interface::PolynomialInterface;
use crate::seed::mix;
use crate::value::{Rational, Value};

fn pair(a: Value, b: Value) -> Value {
    Value::tuple(alloc::vec![a, b])
}

fn as_pair(v: &Value) -> Option<(&Value, &Value)> {
    match v.as_tuple() {
        Some([a, b]) => Some((a, b)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// parallel

struct Parallel {
    left: CollectiveHandle,
    right: CollectiveHandle,
}

impl Collective for Parallel {
    fn neutral(&self) -> Value {
        pair(self.left.neutral(), self.right.neutral())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (ac, ad) = as_pair(a).unwrap();
        let (bc, bd) = as_pair(b).unwrap();
        Ok(pair(
            self.left.aggregate(ac, bc)?,
            self.right.aggregate(ad, bd)?,
        ))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (ac, ad) = as_pair(a).unwrap();
        let (bc, bd) = as_pair(b).unwrap();
        let (rc, rd) = as_pair(r).unwrap();
        let (rc1, rc2) = self.left.distribute(ac, bc, rc)?;
        let (rd1, rd2) = self.right.distribute(ad, bd, rd)?;
        Ok((pair(rc1, rd1), pair(rc2, rd2)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        as_pair(v).is_some_and(|(c, d)| {
            self.left.is_contribution(c) && self.right.is_contribution(d)
        })
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let (cc, cd) = as_pair(c).unwrap();
        as_pair(r).is_some_and(|(rc, rd)| {
            self.left.is_return(cc, rc) && self.right.is_return(cd, rd)
        })
    }

    fn eq_contribution(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (as_pair(a), as_pair(b)) {
            (Some((ac, ad)), Some((bc, bd))) => {
                self.left.eq_contribution(ac, bc, tol) && self.right.eq_contribution(ad, bd, tol)
            }
            _ => a.numeric_eq(b, tol),
        }
    }

    fn eq_return(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (as_pair(a), as_pair(b)) {
            (Some((ac, ad)), Some((bc, bd))) => {
                self.left.eq_return(ac, bc, tol) && self.right.eq_return(ad, bd, tol)
            }
            _ => a.numeric_eq(b, tol),
        }
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        let ls = self.left.enumerate_contributions(bound)?;
        let rs = self.right.enumerate_contributions(bound)?;
        Some(product_pairs(&ls, &rs))
    }

    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        let (cc, cd) = as_pair(c).unwrap();
        let ls = self.left.enumerate_returns(cc, bound)?;
        let rs = self.right.enumerate_returns(cd, bound)?;
        Some(product_pairs(&ls, &rs))
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let (cc, cd) = as_pair(c).unwrap();
        let ls = self.left.enumerate_returns_exact(cc)?;
        let rs = self.right.enumerate_returns_exact(cd)?;
        Some(product_pairs(&ls, &rs))
    }

    fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        Some(pair(
            self.left.gen_contribution(mix(seed, 1), size)?,
            self.right.gen_contribution(mix(seed, 2), size)?,
        ))
    }

    fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        let (cc, cd) = as_pair(c).unwrap();
        Some(pair(
            self.left.gen_return(cc, mix(seed, 1), size)?,
            self.right.gen_return(cd, mix(seed, 2), size)?,
        ))
    }
}

fn product_pairs(ls: &[Value], rs: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(ls.len() * rs.len());
    for l in ls {
        for r in rs {
            out.push(pair(l.clone(), r.clone()));
        }
    }
    out
}

/// The two protocols happen in parallel.
pub fn parallel(left: CollectiveHandle, right: CollectiveHandle) -> CollectiveHandle {
    let expr = alloc::format!("parallel({}, {})", left.expr(), right.expr());
    CollectiveHandle::with_expr(
        "parallel",
        BTreeMap::new(),
        expr,
        Arc::new(Parallel { left, right }),
    )
}

// ---------------------------------------------------------------------------
// product

const LEFT: &str = "left";
const RIGHT: &str = "right";

fn tagged(tag: &str, v: Value) -> Value {
    pair(Value::sym(tag), v)
}

/// Splits `(left|right, v)`; `None` for anything else.
fn untag(v: &Value) -> Option<(&str, &Value)> {
    let (t, inner) = as_pair(v)?;
    match t.as_sym() {
        Some(s) if s == LEFT || s == RIGHT => Some((s, inner)),
        _ => None,
    }
}

struct Product {
    left: CollectiveHandle,
    right: CollectiveHandle,
}

impl Collective for Product {
    fn neutral(&self) -> Value {
        pair(self.left.neutral(), self.right.neutral())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (ac, ad) = as_pair(a).unwrap();
        let (bc, bd) = as_pair(b).unwrap();
        Ok(pair(
            self.left.aggregate(ac, bc)?,
            self.right.aggregate(ad, bd)?,
        ))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (ac, ad) = as_pair(a).unwrap();
        let (bc, bd) = as_pair(b).unwrap();
        let (tag, inner) = untag(r).unwrap();
        if tag == LEFT {
            let (r1, r2) = self.left.distribute(ac, bc, inner)?;
            Ok((tagged(LEFT, r1), tagged(LEFT, r2)))
        } else {
            let (s1, s2) = self.right.distribute(ad, bd, inner)?;
            Ok((tagged(RIGHT, s1), tagged(RIGHT, s2)))
        }
    }

    fn is_contribution(&self, v: &Value) -> bool {
        as_pair(v).is_some_and(|(c, d)| {
            self.left.is_contribution(c) && self.right.is_contribution(d)
        })
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let (cc, cd) = as_pair(c).unwrap();
        match untag(r) {
            Some((tag, inner)) if tag == LEFT => self.left.is_return(cc, inner),
            Some((_, inner)) => self.right.is_return(cd, inner),
            None => false,
        }
    }

    fn eq_contribution(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (as_pair(a), as_pair(b)) {
            (Some((ac, ad)), Some((bc, bd))) => {
                self.left.eq_contribution(ac, bc, tol) && self.right.eq_contribution(ad, bd, tol)
            }
            _ => a.numeric_eq(b, tol),
        }
    }

    fn eq_return(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (untag(a), untag(b)) {
            (Some((ta, ia)), Some((tb, ib))) if ta == tb => {
                if ta == LEFT {
                    self.left.eq_return(ia, ib, tol)
                } else {
                    self.right.eq_return(ia, ib, tol)
                }
            }
            _ => false,
        }
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        let ls = self.left.enumerate_contributions(bound)?;
        let rs = self.right.enumerate_contributions(bound)?;
        Some(product_pairs(&ls, &rs))
    }

    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        let (cc, cd) = as_pair(c).unwrap();
        let ls = self.left.enumerate_returns(cc, bound)?;
        let rs = self.right.enumerate_returns(cd, bound)?;
        Some(tag_union(ls, rs))
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let (cc, cd) = as_pair(c).unwrap();
        let ls = self.left.enumerate_returns_exact(cc)?;
        let rs = self.right.enumerate_returns_exact(cd)?;
        Some(tag_union(ls, rs))
    }

    fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        Some(pair(
            self.left.gen_contribution(mix(seed, 1), size)?,
            self.right.gen_contribution(mix(seed, 2), size)?,
        ))
    }

    fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        let (cc, cd) = as_pair(c).unwrap();
        // alternate sides; fall back to the other when one side is empty
        let side_first = mix(seed, 3) % 2 == 0;
        let from_left = |s| self.left.gen_return(cc, s, size).map(|r| tagged(LEFT, r));
        let from_right = |s| self.right.gen_return(cd, s, size).map(|r| tagged(RIGHT, r));
        if side_first {
            from_left(mix(seed, 1)).or_else(|| from_right(mix(seed, 2)))
        } else {
            from_right(mix(seed, 2)).or_else(|| from_left(mix(seed, 1)))
        }
    }
}

fn tag_union(ls: Vec<Value>, rs: Vec<Value>) -> Vec<Value> {
    ls.into_iter()
        .map(|r| tagged(LEFT, r))
        .chain(rs.into_iter().map(|s| tagged(RIGHT, s)))
        .collect()
}

/// Both protocols collect contributions, but only one return is
/// distributed, tagged with the side it came from.
pub fn product(left: CollectiveHandle, right: CollectiveHandle) -> CollectiveHandle {
    let expr = alloc::format!("product({}, {})", left.expr(), right.expr());
    CollectiveHandle::with_expr(
        "product",
        BTreeMap::new(),
        expr,
        Arc::new(Product { left, right }),
    )
}

// ---------------------------------------------------------------------------
// composite

const CONST_TAG: &str = "const";

/// A strategy for the second stage: what to contribute there, given the
/// first stage's return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Explicit mapping, total on the base contribution's return set.
    Table(BTreeMap<Value, Value>),
    /// The same contribution regardless of the return; usable even when the
    /// base return set cannot be enumerated.
    Const(Value),
}

impl Strategy {
    pub fn to_value(&self) -> Value {
        match self {
            Strategy::Table(map) => Value::Map(map.clone()),
            Strategy::Const(d) => pair(Value::sym(CONST_TAG), d.clone()),
        }
    }

    pub fn from_value(v: &Value) -> Option<Strategy> {
        if let Some(map) = v.as_map() {
            return Some(Strategy::Table(map.clone()));
        }
        let (tag, inner) = as_pair(v)?;
        if tag.as_sym() == Some(CONST_TAG) {
            Some(Strategy::Const(inner.clone()))
        } else {
            None
        }
    }

    /// The second-stage contribution for base return `r`.
    fn apply(&self, r: &Value) -> Option<Value> {
        match self {
            Strategy::Table(map) => map.get(r).cloned(),
            Strategy::Const(d) => Some(d.clone()),
        }
    }
}

struct Composite {
    base: CollectiveHandle,
    second: CollectiveHandle,
}

impl Composite {
    fn parse(&self, v: &Value) -> Option<(Value, Strategy)> {
        let (c, f) = as_pair(v)?;
        Some((c.clone(), Strategy::from_value(f)?))
    }

    /// The exact return set of a base contribution, required by table
    /// strategies.
    fn base_returns(&self, c: &Value) -> Result<Vec<Value>> {
        self.base
            .enumerate_returns_exact(c)
            .ok_or(Error::NonEnumerableStrategy {
                collective: String::from(self.base.name()),
            })
    }

    /// The combined strategy of the aggregate: distribute the return, ask
    /// both strategies, aggregate their second-stage contributions.
    fn combine(
        &self,
        ac: &Value,
        af: &Strategy,
        bc: &Value,
        bf: &Strategy,
    ) -> Result<(Value, Strategy)> {
        let agg_c = self.base.aggregate(ac, bc)?;
        if let (Strategy::Const(d1), Strategy::Const(d2)) = (af, bf) {
            return Ok((
                agg_c.clone(),
                Strategy::Const(self.second.aggregate(d1, d2)?),
            ));
        }
        let mut table = BTreeMap::new();
        for r in self.base_returns(&agg_c)? {
            let (ra, rb) = self.base.distribute(ac, bc, &r)?;
            let d1 = af.apply(&ra).ok_or_else(|| Error::InvalidContribution {
                collective: String::from("composite"),
                value: pair(ac.clone(), af.to_value()),
            })?;
            let d2 = bf.apply(&rb).ok_or_else(|| Error::InvalidContribution {
                collective: String::from("composite"),
                value: pair(bc.clone(), bf.to_value()),
            })?;
            table.insert(r, self.second.aggregate(&d1, &d2)?);
        }
        Ok((agg_c, Strategy::Table(table)))
    }

    fn strategies_equal(&self, c: &Value, f: &Strategy, g: &Strategy, tol: &Rational) -> bool {
        match (f, g) {
            (Strategy::Const(d1), Strategy::Const(d2)) => {
                self.second.eq_contribution(d1, d2, tol)
            }
            (Strategy::Table(t1), Strategy::Table(t2)) => {
                t1.len() == t2.len()
                    && t1.iter().all(|(r, d1)| {
                        t2.get(r)
                            .is_some_and(|d2| self.second.eq_contribution(d1, d2, tol))
                    })
            }
            _ => {
                // extensional comparison needs the base return set
                match self.base.enumerate_returns_exact(c) {
                    Some(rs) => rs.iter().all(|r| match (f.apply(r), g.apply(r)) {
                        (Some(d1), Some(d2)) => self.second.eq_contribution(&d1, &d2, tol),
                        _ => false,
                    }),
                    None => false,
                }
            }
        }
    }
}

impl Collective for Composite {
    fn neutral(&self) -> Value {
        pair(
            self.base.neutral(),
            Strategy::Const(self.second.neutral()).to_value(),
        )
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let (ac, af) = self.parse(a).unwrap();
        let (bc, bf) = self.parse(b).unwrap();
        let (c, f) = self.combine(&ac, &af, &bc, &bf)?;
        Ok(pair(c, f.to_value()))
    }

    fn distribute(&self, a: &Value, b: &Value, r: &Value) -> Result<(Value, Value)> {
        let (ac, af) = self.parse(a).unwrap();
        let (bc, bf) = self.parse(b).unwrap();
        let (rc, rs) = as_pair(r).unwrap();
        let (ra, rb) = self.base.distribute(&ac, &bc, rc)?;
        let d1 = af.apply(&ra).unwrap();
        let d2 = bf.apply(&rb).unwrap();
        let (s1, s2) = self.second.distribute(&d1, &d2, rs)?;
        Ok((pair(ra, s1), pair(rb, s2)))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        let (c, f) = match self.parse(v) {
            Some(p) => p,
            None => return false,
        };
        if !self.base.is_contribution(&c) {
            return false;
        }
        match &f {
            Strategy::Const(d) => self.second.is_contribution(d),
            Strategy::Table(map) => {
                // total on R[c], keys valid returns, images valid contributions
                let rs = match self.base.enumerate_returns_exact(&c) {
                    Some(rs) => rs,
                    None => return false,
                };
                rs.len() == map.len()
                    && rs.iter().all(|r| {
                        map.get(r)
                            .is_some_and(|d| self.second.is_contribution(d))
                    })
            }
        }
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let (base_c, f) = self.parse(c).unwrap();
        let (rc, rs) = match as_pair(r) {
            Some(p) => p,
            None => return false,
        };
        if !self.base.is_return(&base_c, rc) {
            return false;
        }
        match f.apply(rc) {
            Some(d) => self.second.is_return(&d, rs),
            None => false,
        }
    }

    fn eq_contribution(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (self.parse(a), self.parse(b)) {
            (Some((ac, af)), Some((bc, bf))) => {
                self.base.eq_contribution(&ac, &bc, tol)
                    && self.strategies_equal(&ac, &af, &bf, tol)
            }
            _ => a.numeric_eq(b, tol),
        }
    }

    fn eq_return(&self, a: &Value, b: &Value, tol: &Rational) -> bool {
        match (as_pair(a), as_pair(b)) {
            (Some((ra, sa)), Some((rb, sb))) => {
                self.base.eq_return(ra, rb, tol) && self.second.eq_return(sa, sb, tol)
            }
            _ => a.numeric_eq(b, tol),
        }
    }

    /// Base contributions paired with every total strategy table into the
    /// bounded second-stage enumeration.
    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        let bases = self.base.enumerate_contributions(bound)?;
        let seconds = self.second.enumerate_contributions(bound)?;
        let mut out = Vec::new();
        for c in bases {
            let rs = self.base.enumerate_returns_exact(&c)?;
            let assignments = crate::catalog::index_vectors(seconds.len(), rs.len());
            for assign in assignments {
                let table: BTreeMap<Value, Value> = rs
                    .iter()
                    .cloned()
                    .zip(assign.iter().map(|i| seconds[*i].clone()))
                    .collect();
                out.push(pair(c.clone(), Strategy::Table(table).to_value()));
            }
        }
        Some(out)
    }

    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        let (base_c, f) = self.parse(c)?;
        let rs = self.base.enumerate_returns(&base_c, bound)?;
        let mut out = Vec::new();
        for r in rs {
            let d = f.apply(&r)?;
            for s in self.second.enumerate_returns(&d, bound)? {
                out.push(pair(r.clone(), s));
            }
        }
        Some(out)
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        let (base_c, f) = self.parse(c)?;
        let rs = self.base.enumerate_returns_exact(&base_c)?;
        let mut out = Vec::new();
        for r in rs {
            let d = f.apply(&r)?;
            for s in self.second.enumerate_returns_exact(&d)? {
                out.push(pair(r.clone(), s));
            }
        }
        Some(out)
    }

    fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        let c = self.base.gen_contribution(mix(seed, 1), size)?;
        let rs = self.base.enumerate_returns_exact(&c)?;
        let mut table = BTreeMap::new();
        for (i, r) in rs.into_iter().enumerate() {
            let d = self
                .second
                .gen_contribution(mix(seed, 2 + i as u64), size)?;
            table.insert(r, d);
        }
        Some(pair(c, Strategy::Table(table).to_value()))
    }

    fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        let (base_c, f) = self.parse(c)?;
        let r = self.base.gen_return(&base_c, mix(seed, 1), size)?;
        let d = f.apply(&r)?;
        let s = self.second.gen_return(&d, mix(seed, 2), size)?;
        Some(pair(r, s))
    }
}

/// The two protocols happen in series.
pub fn composite(base: CollectiveHandle, second: CollectiveHandle) -> CollectiveHandle {
    let expr = alloc::format!("composite({}, {})", base.expr(), second.expr());
    CollectiveHandle::with_expr(
        "composite",
        BTreeMap::new(),
        expr,
        Arc::new(Composite { base, second }),
    )
}

// ---------------------------------------------------------------------------
// free

struct Free {
    interface: Arc<dyn PolynomialInterface>,
}

impl Collective for Free {
    fn neutral(&self) -> Value {
        Value::list(Vec::new())
    }

    fn aggregate(&self, a: &Value, b: &Value) -> Result<Value> {
        let mut items = a.as_list().unwrap().to_vec();
        items.extend(b.as_list().unwrap().iter().cloned());
        Ok(Value::list(items))
    }

    fn distribute(&self, a: &Value, _b: &Value, r: &Value) -> Result<(Value, Value)> {
        let n = a.as_list().unwrap().len();
        let rs = r.as_tuple().unwrap();
        Ok((
            Value::tuple(rs[..n].to_vec()),
            Value::tuple(rs[n..].to_vec()),
        ))
    }

    fn is_contribution(&self, v: &Value) -> bool {
        v.as_list()
            .is_some_and(|items| items.iter().all(|c| self.interface.is_atom(c)))
    }

    fn is_return(&self, c: &Value, r: &Value) -> bool {
        let atoms = c.as_list().unwrap();
        match r.as_tuple() {
            Some(rs) => {
                rs.len() == atoms.len()
                    && atoms
                        .iter()
                        .zip(rs)
                        .all(|(a, ri)| self.interface.is_atom_return(a, ri))
            }
            None => false,
        }
    }

    fn enumerate_contributions(&self, bound: u32) -> Option<Vec<Value>> {
        let atoms = self.interface.enumerate_atoms(bound)?;
        let mut out = alloc::vec![Vec::new()];
        let mut layer = alloc::vec![Vec::<Value>::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for l in &layer {
                for a in &atoms {
                    let mut e = l.clone();
                    e.push(a.clone());
                    next.push(e);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        Some(out.into_iter().map(Value::list).collect())
    }

    fn enumerate_returns(&self, c: &Value, bound: u32) -> Option<Vec<Value>> {
        self.tuple_returns(c, |a| self.interface.enumerate_atom_returns(a, bound))
    }

    fn enumerate_returns_exact(&self, c: &Value) -> Option<Vec<Value>> {
        self.tuple_returns(c, |a| self.interface.enumerate_atom_returns_exact(a))
    }

    fn gen_contribution(&self, seed: u64, size: u32) -> Option<Value> {
        let len = (mix(seed, 0) % (size as u64 + 1)) as usize;
        let mut items = Vec::with_capacity(len);
        for i in 0..len {
            items.push(self.interface.gen_atom(mix(seed, 1 + i as u64), size)?);
        }
        Some(Value::list(items))
    }

    fn gen_return(&self, c: &Value, seed: u64, size: u32) -> Option<Value> {
        let atoms = c.as_list().unwrap();
        let mut rs = Vec::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            rs.push(self.interface.gen_atom_return(a, mix(seed, 1 + i as u64), size)?);
        }
        Some(Value::Tuple(rs))
    }
}

impl Free {
    fn tuple_returns(
        &self,
        c: &Value,
        per_atom: impl Fn(&Value) -> Option<Vec<Value>>,
    ) -> Option<Vec<Value>> {
        let atoms = c.as_list().unwrap();
        let mut out = alloc::vec![Vec::new()];
        for a in atoms {
            let choices = per_atom(a)?;
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for choice in &choices {
                    let mut t = prefix.clone();
                    t.push(choice.clone());
                    next.push(t);
                }
            }
            out = next;
        }
        Some(out.into_iter().map(Value::Tuple).collect())
    }
}

/// The free collective on a polynomial interface: lists of atomic
/// contributions under concatenation, returns subdivided positionally.
pub fn free(interface: Arc<dyn PolynomialInterface>, name: &str) -> CollectiveHandle {
    let expr = alloc::format!("free({name})");
    CollectiveHandle::with_expr("free", BTreeMap::new(), expr, Arc::new(Free { interface }))
}

/// The multi-question survey: the free collective on the single-question
/// survey interface. Contributions are lists of question sizes; a return is
/// one answer per question, subdivided back to each interviewer.
pub fn multi_question_survey() -> CollectiveHandle {
    let survey = crate::catalog::single_question_survey();
    CollectiveHandle::with_expr(
        "multi_question_survey",
        BTreeMap::new(),
        String::from("multi_question_survey()"),
        Arc::new(Free {
            interface: Arc::new(survey.interface()),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{potluck, single_question_survey, stakeholders, PotluckVariant};
    use crate::interface::EnumInterface;

    fn dishes(items: &[&str]) -> Value {
        Value::set(items.iter().map(|s| Value::sym(s)))
    }

    #[test]
    fn parallel_distributes_componentwise() {
        let h = parallel(
            stakeholders(),
            potluck(&[Value::sym("pie"), Value::sym("salad")], PotluckVariant::Symmetric)
                .unwrap(),
        );
        let a = pair(Value::Int(2), dishes(&["pie"]));
        let b = pair(Value::Int(3), dishes(&["salad"]));
        let r = pair(Value::Int(10), dishes(&["pie"]));
        let (x, y) = h.distribute(&a, &b, &r).unwrap();
        assert_eq!(x, pair(Value::Int(4), dishes(&["pie"])));
        assert_eq!(y, pair(Value::Int(6), dishes(&[])));
        assert_eq!(h.neutral(), pair(Value::Int(0), dishes(&[])));
    }

    #[test]
    fn product_distributes_by_cases() {
        let h = product(single_question_survey(), crate::catalog::reservation());
        let a = pair(Value::Int(7), Value::Int(1));
        let b = pair(Value::Int(4), Value::Int(2));
        // survey-side return
        let (x, y) = h.distribute(&a, &b, &tagged(LEFT, Value::Int(19))).unwrap();
        assert_eq!(x, tagged(LEFT, Value::Int(5)));
        assert_eq!(y, tagged(LEFT, Value::Int(2)));
        // reservation-side return
        let (x, y) = h.distribute(&a, &b, &tagged(RIGHT, Value::Int(2))).unwrap();
        assert_eq!(x, tagged(RIGHT, Value::Int(1)));
        assert_eq!(y, tagged(RIGHT, Value::Int(1)));
        // tag mismatch is an invalid return
        assert!(h
            .distribute(&a, &b, &pair(Value::sym("middle"), Value::Int(0)))
            .is_err());
    }

    #[test]
    fn composite_runs_in_series() {
        let survey = single_question_survey();
        let pot = potluck(&[Value::sym("dish")], PotluckVariant::Symmetric).unwrap();
        let h = composite(survey, pot);
        // base contribution 2 with a strategy answering 0 -> bring nothing,
        // 1 -> offer the dish; partner contributes 1 with constant strategy
        let f = Strategy::Table(
            [
                (Value::Int(0), dishes(&[])),
                (Value::Int(1), dishes(&["dish"])),
            ]
            .into_iter()
            .collect(),
        );
        let a = pair(Value::Int(2), f.to_value());
        let b = pair(Value::Int(1), Strategy::Const(dishes(&["dish"])).to_value());
        assert!(h.is_contribution(&a));
        assert!(h.is_contribution(&b));
        let agg = h.aggregate(&a, &b).unwrap();
        let (agg_c, agg_f) = as_pair(&agg).unwrap();
        assert_eq!(*agg_c, Value::Int(2));
        // combined strategy: r -> f(r-share) ∪ g(r'-share)
        let combined = Strategy::from_value(agg_f).unwrap();
        assert_eq!(combined.apply(&Value::Int(1)).unwrap(), dishes(&["dish"]));
        assert_eq!(combined.apply(&Value::Int(0)).unwrap(), dishes(&["dish"]));
        // distribute a full return through both stages
        let r = pair(Value::Int(1), dishes(&["dish"]));
        let (x, y) = h.distribute(&a, &b, &r).unwrap();
        assert_eq!(x, pair(Value::Int(1), dishes(&["dish"])));
        assert_eq!(y, pair(Value::Int(0), dishes(&["dish"])));
    }

    #[test]
    fn composite_neutral_is_a_unit() {
        let survey = single_question_survey();
        let pot = potluck(&[Value::sym("dish")], PotluckVariant::Symmetric).unwrap();
        let h = composite(survey, pot);
        let f = Strategy::Table(
            [
                (Value::Int(0), dishes(&["dish"])),
                (Value::Int(1), dishes(&[])),
            ]
            .into_iter()
            .collect(),
        );
        let a = pair(Value::Int(2), f.to_value());
        let e = h.neutral();
        let tol = crate::value::rat_zero();
        let left = h.aggregate(&a, &e).unwrap();
        let right = h.aggregate(&e, &a).unwrap();
        assert!(h.eq_contribution(&left, &a, &tol));
        assert!(h.eq_contribution(&right, &a, &tol));
    }

    #[test]
    fn free_subdivides_returns() {
        let h = free(Arc::new(EnumInterface::two_atoms()), "two_atom");
        let l = Value::list(alloc::vec![Value::sym("b")]);
        let l2 = Value::list(alloc::vec![Value::sym("a"), Value::sym("a")]);
        let r = Value::tuple(alloc::vec![Value::Int(0), Value::Int(1), Value::Int(1)]);
        let (x, y) = h.distribute(&l, &l2, &r).unwrap();
        assert_eq!(x, Value::tuple(alloc::vec![Value::Int(0)]));
        assert_eq!(y, Value::tuple(alloc::vec![Value::Int(1), Value::Int(1)]));
        // unit: everything goes left
        let (x, y) = h.distribute(&l, &h.neutral(), &Value::tuple(alloc::vec![Value::Int(1)])).unwrap();
        assert_eq!(x, Value::tuple(alloc::vec![Value::Int(1)]));
        assert_eq!(y, Value::tuple(alloc::vec![]));
    }

    #[test]
    fn free_return_length_must_match() {
        let h = free(Arc::new(EnumInterface::two_atoms()), "two_atom");
        let l = Value::list(alloc::vec![Value::sym("a")]);
        assert!(!h
            .is_valid_return(&l, &Value::tuple(alloc::vec![Value::Int(0), Value::Int(0)]))
            .unwrap());
    }

    #[test]
    fn multi_question_survey_round() {
        let h = multi_question_survey();
        let a = Value::list(alloc::vec![Value::Int(7), Value::Int(4)]);
        let b = Value::list(alloc::vec![Value::Int(2)]);
        let agg = h.aggregate(&a, &b).unwrap();
        assert_eq!(
            agg,
            Value::list(alloc::vec![Value::Int(7), Value::Int(4), Value::Int(2)])
        );
        let r = Value::tuple(alloc::vec![Value::Int(5), Value::Int(2), Value::Int(1)]);
        let shares = h.distribute_all(&[a, b], &r).unwrap();
        assert_eq!(
            shares,
            alloc::vec![
                Value::tuple(alloc::vec![Value::Int(5), Value::Int(2)]),
                Value::tuple(alloc::vec![Value::Int(1)]),
            ]
        );
        // answers validated componentwise: 7 is not a valid answer to 4
        let bad = Value::tuple(alloc::vec![Value::Int(5), Value::Int(7), Value::Int(1)]);
        assert!(!h
            .is_valid_return(
                &Value::list(alloc::vec![Value::Int(7), Value::Int(4), Value::Int(2)]),
                &bad
            )
            .unwrap());
    }
}
