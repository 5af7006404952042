//! The universal tagged datum carried across every collective boundary.
//!
//! Contributions and returns of every collective in the catalog are encoded
//! as [`Value`]s so that the law checker, the session runner and the CLI can
//! treat all protocols uniformly. Numeric data is exact: integers are `i64`,
//! everything else is an arbitrary-precision rational. A rational whose
//! denominator is 1 (and whose numerator fits in `i64`) canonicalizes to
//! [`Value::Int`], so structural equality coincides with numeric equality on
//! canonical values.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Unit,
    Bool(bool),
    Int(i64),
    /// Always in lowest terms, positive denominator, never integral
    /// (integral rationals canonicalize to `Int`).
    Rat(Rational),
    Sym(String),
    Tuple(Vec<Value>),
    List(Vec<Value>),
    Set(BTreeSet<Value>),
    /// Counts are strictly positive.
    Multiset(BTreeMap<Value, u64>),
    Map(BTreeMap<Value, Value>),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(n)
    }

    /// Canonicalize a rational: integral values that fit become `Int`.
    pub fn ratio(r: Rational) -> Value {
        if r.is_integer() {
            if let Some(n) = r.to_integer().to_i64() {
                return Value::Int(n);
            }
        }
        Value::Rat(r)
    }

    /// Exact rational from an integer pair. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Value {
        assert!(den != 0, "rational with zero denominator");
        Value::ratio(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sym(s: &str) -> Value {
        Value::Sym(s.to_string())
    }

    pub fn tuple(items: Vec<Value>) -> Value {
        Value::Tuple(items)
    }

    pub fn list(items: Vec<Value>) -> Value {
        Value::List(items)
    }

    pub fn set<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::Set(items.into_iter().collect())
    }

    /// Builds a multiset, summing duplicate elements and dropping zero counts.
    pub fn multiset<I: IntoIterator<Item = (Value, u64)>>(items: I) -> Value {
        let mut m: BTreeMap<Value, u64> = BTreeMap::new();
        for (v, n) in items {
            if n > 0 {
                *m.entry(v).or_insert(0) += n;
            }
        }
        Value::Multiset(m)
    }

    pub fn map<I: IntoIterator<Item = (Value, Value)>>(items: I) -> Value {
        Value::Map(items.into_iter().collect())
    }

    pub fn empty_set() -> Value {
        Value::Set(BTreeSet::new())
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Value::Int(_) | Value::Rat(_))
    }

    /// Numeric view of `Int` and `Rat` values.
    pub fn as_ratio(&self) -> Option<Rational> {
        match self {
            Value::Int(n) => Some(Rational::from(BigInt::from(*n))),
            Value::Rat(r) => Some(r.clone()),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Natural-number view: a nonnegative `Int`.
    pub fn as_nat(&self) -> Option<i64> {
        self.as_int().filter(|n| *n >= 0)
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Value::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Value]> {
        match self {
            Value::Tuple(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<Value>> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_multiset(&self) -> Option<&BTreeMap<Value, u64>> {
        match self {
            Value::Multiset(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_map(&self) -> Option<&BTreeMap<Value, Value>> {
        match self {
            Value::Map(m) => Some(m),
            _ => None,
        }
    }

    /// Structural equality, except that numeric leaves compare by value
    /// within `tolerance` (so `Int(4)` equals `Rat(4/1)` and, under a
    /// nonzero tolerance, nearby rationals are identified).
    pub fn numeric_eq(&self, other: &Value, tolerance: &Rational) -> bool {
        match (self, other) {
            (a, b) if a.is_numeric() && b.is_numeric() => {
                let (x, y) = (a.as_ratio().unwrap(), b.as_ratio().unwrap());
                (x - y).abs() <= *tolerance
            }
            (Value::Unit, Value::Unit) => true,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Sym(a), Value::Sym(b)) => a == b,
            (Value::Tuple(a), Value::Tuple(b)) | (Value::List(a), Value::List(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| x.numeric_eq(y, tolerance))
            }
            (Value::Set(a), Value::Set(b)) => {
                if tolerance.is_zero() {
                    a == b
                } else {
                    // Tolerant set comparison pairs elements in canonical order.
                    a.len() == b.len()
                        && a.iter().zip(b).all(|(x, y)| x.numeric_eq(y, tolerance))
                }
            }
            (Value::Multiset(a), Value::Multiset(b)) => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((xv, xn), (yv, yn))| xn == yn && xv.numeric_eq(yv, tolerance))
            }
            (Value::Map(a), Value::Map(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|((xk, xv), (yk, yv))| {
                        xk.numeric_eq(yk, tolerance) && xv.numeric_eq(yv, tolerance)
                    })
            }
            _ => false,
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Value {
        Value::Int(n)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Value {
        Value::ratio(r)
    }
}

/// Renders a rational in `num/den` form (integral rationals should not
/// occur on canonical values, but render faithfully if they do).
fn fmt_ratio(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => write!(f, "unit"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => fmt_ratio(r, f),
            Value::Sym(s) => write!(f, "{s}"),
            Value::Tuple(items) => {
                write!(f, "(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Value::Set(items) => {
                write!(f, "{{")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "}}")
            }
            Value::Multiset(items) => {
                write!(f, "{{|")?;
                for (i, (v, n)) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}:{n}")?;
                }
                write!(f, "|}}")
            }
            Value::Map(items) => {
                write!(f, "{{")?;
                for (i, (k, v)) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k} -> {v}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for a zero rational.
pub fn rat_zero() -> Rational {
    Rational::zero()
}

/// Rational from an integer pair; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn integral_rationals_canonicalize_to_int() {
        assert_eq!(Value::rational(4, 2), Value::Int(2));
        assert_eq!(Value::rational(-6, 3), Value::Int(-2));
        assert_eq!(Value::rational(1, 3), Value::Rat(rat(1, 3)));
        // normalization: lowest terms, positive denominator
        assert_eq!(Value::rational(2, -4), Value::rational(-1, 2));
    }

    #[test]
    fn numeric_eq_bridges_int_and_rat() {
        let tol = rat_zero();
        assert!(Value::Int(4).numeric_eq(&Value::Rat(rat(4, 1)), &tol));
        assert!(!Value::Int(4).numeric_eq(&Value::rational(1, 3), &tol));
        assert!(Value::rational(1, 3).numeric_eq(&Value::rational(167, 500), &rat(1, 100)));
        assert!(!Value::rational(1, 3).numeric_eq(&Value::rational(167, 500), &rat(1, 10000)));
    }

    #[test]
    fn numeric_eq_recurses_into_containers() {
        let a = Value::tuple(vec![Value::Int(1), Value::list(vec![Value::rational(1, 2)])]);
        let b = Value::tuple(vec![Value::Int(1), Value::list(vec![Value::rational(1, 2)])]);
        assert!(a.numeric_eq(&b, &rat_zero()));
        let c = Value::tuple(vec![Value::Int(2), Value::list(vec![Value::rational(1, 2)])]);
        assert!(!a.numeric_eq(&c, &rat_zero()));
    }

    #[test]
    fn multiset_builder_sums_and_drops_zeros() {
        let m = Value::multiset(vec![
            (Value::sym("a"), 1),
            (Value::sym("a"), 2),
            (Value::sym("b"), 0),
        ]);
        assert_eq!(m, Value::multiset(vec![(Value::sym("a"), 3)]));
    }

    #[test]
    fn display_is_compact() {
        let v = Value::tuple(vec![
            Value::Int(2),
            Value::list(vec![Value::rational(1, 3), Value::rational(2, 3)]),
        ]);
        assert_eq!(alloc::format!("{v}"), "(2, [1/3, 2/3])");
    }
}
