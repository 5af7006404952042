//! The collective-expression grammar.
//!
//! ```text
//! expr    := NAME "(" (arg ("," arg)*)? ")"
//! arg     := NAME "=" literal | expr | literal
//! literal := INT | RAT | NAME | "[" (literal ("," literal)*)? "]"
//!                              | "{" (literal ("," literal)*)? "}"
//! ```
//!
//! `INT` is a signed decimal integer, `RAT` a fraction `a/b` (normalized on
//! parse), `NAME` an identifier which doubles as a symbol literal when it
//! stands alone. Printing is canonical: `parse(print(e)) == e`, and parse
//! errors carry the byte offset of the offending input.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::value::{Rational, Value};

/// Abstract syntax of a collective expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectiveExpr {
    pub name: String,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    /// `name=literal`
    Named(String, Value),
    /// a nested sub-expression (combinator operand)
    Expr(CollectiveExpr),
    /// a bare positional literal, e.g. `free(survey)`
    Literal(Value),
}

impl CollectiveExpr {
    /// The named arguments as a map (positional arguments excluded).
    pub fn named(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.args.iter().filter_map(|a| match a {
            Arg::Named(k, v) => Some((k.as_str(), v)),
            _ => None,
        })
    }

    pub fn positional(&self) -> impl Iterator<Item = &Arg> {
        self.args.iter().filter(|a| !matches!(a, Arg::Named(..)))
    }
}

/// Canonical text of an expression; `parse_expr` inverts it.
pub fn print_expr(e: &CollectiveExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_expr(e: &CollectiveExpr, out: &mut String) {
    out.push_str(&e.name);
    out.push('(');
    for (i, arg) in e.args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        match arg {
            Arg::Named(k, v) => {
                out.push_str(k);
                out.push('=');
                write_literal(v, out);
            }
            Arg::Expr(sub) => write_expr(sub, out),
            Arg::Literal(v) => write_literal(v, out),
        }
    }
    out.push(')');
}

fn write_literal(v: &Value, out: &mut String) {
    match v {
        Value::Int(n) => out.push_str(&n.to_string()),
        Value::Rat(r) => {
            out.push_str(&r.numer().to_string());
            out.push('/');
            out.push_str(&r.denom().to_string());
        }
        Value::Sym(s) => out.push_str(s),
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_literal(item, out);
            }
            out.push(']');
        }
        Value::Set(items) => {
            out.push('{');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_literal(item, out);
            }
            out.push('}');
        }
        // not expressible in the grammar; rendered for diagnostics only
        other => out.push_str(&alloc::format!("{other}")),
    }
}

/// Parses an expression, requiring the entire input to be consumed.
pub fn parse_expr(text: &str) -> Result<CollectiveExpr, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", b as char)))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        if !self
            .peek()
            .is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
        {
            return Err(self.error("expected a name"));
        }
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        Ok(core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn expr(&mut self) -> Result<CollectiveExpr, ParseError> {
        let name = self.name()?;
        self.skip_ws();
        self.expect(b'(')?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(CollectiveExpr { name, args });
        }
        loop {
            args.push(self.arg()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(CollectiveExpr { name, args });
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        self.skip_ws();
        if self
            .peek()
            .is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
        {
            // NAME "=" literal | NAME "(" ... ")" | NAME as symbol literal
            let checkpoint = self.pos;
            let name = self.name()?;
            self.skip_ws();
            match self.peek() {
                Some(b'=') => {
                    self.pos += 1;
                    self.skip_ws();
                    let v = self.literal()?;
                    Ok(Arg::Named(name, v))
                }
                Some(b'(') => {
                    self.pos = checkpoint;
                    Ok(Arg::Expr(self.expr()?))
                }
                _ => Ok(Arg::Literal(Value::Sym(name))),
            }
        } else {
            Ok(Arg::Literal(self.literal()?))
        }
    }

    fn literal(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let items = self.literal_seq(b']')?;
                Ok(Value::List(items))
            }
            Some(b'{') => {
                self.pos += 1;
                let items = self.literal_seq(b'}')?;
                Ok(Value::set(items))
            }
            Some(b) if b.is_ascii_digit() || b == b'-' => self.number(),
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => Ok(Value::Sym(self.name()?)),
            _ => Err(self.error("expected a literal")),
        }
    }

    fn literal_seq(&mut self, close: u8) -> Result<Vec<Value>, ParseError> {
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.literal()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(b) if b == close => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => {
                    return Err(
                        self.error(&alloc::format!("expected ',' or '{}'", close as char))
                    )
                }
            }
        }
    }

    fn number(&mut self) -> Result<Value, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
            return Err(self.error("expected a digit"));
        }
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let numer: i64 = core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dstart = self.pos;
            if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
                return Err(self.error("expected a denominator"));
            }
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            let denom: i64 = core::str::from_utf8(&self.bytes[dstart..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("denominator out of range"))?;
            if denom == 0 {
                return Err(self.error("zero denominator"));
            }
            Ok(Value::ratio(Rational::new(
                BigInt::from(numer),
                BigInt::from(denom),
            )))
        } else {
            Ok(Value::Int(numer))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_params_and_literals() {
        let e = parse_expr("potluck(U=[pie, salad], variant=first_served)").unwrap();
        assert_eq!(e.name, "potluck");
        assert_eq!(
            e.args[0],
            Arg::Named(
                "U".to_string(),
                Value::list(alloc::vec![Value::sym("pie"), Value::sym("salad")])
            )
        );
        assert_eq!(
            e.args[1],
            Arg::Named("variant".to_string(), Value::sym("first_served"))
        );
    }

    #[test]
    fn parses_nested_expressions_and_bare_symbols() {
        let e = parse_expr("parallel(stakeholders(), potluck(U={a}))").unwrap();
        assert_eq!(e.args.len(), 2);
        assert!(matches!(&e.args[0], Arg::Expr(sub) if sub.name == "stakeholders"));
        let f = parse_expr("free(survey)").unwrap();
        assert_eq!(f.args, alloc::vec![Arg::Literal(Value::sym("survey"))]);
    }

    #[test]
    fn rationals_normalize_on_parse() {
        let e = parse_expr("x(a=2/4, b=4/2, c=-1/3)").unwrap();
        let named: Vec<(&str, &Value)> = e.named().collect();
        assert_eq!(*named[0].1, Value::rational(1, 2));
        assert_eq!(*named[1].1, Value::Int(2));
        assert_eq!(*named[2].1, Value::rational(-1, 3));
    }

    #[test]
    fn reports_the_offset_of_unbalanced_parens() {
        let err = parse_expr("parallel(stakeholders()").unwrap_err();
        assert_eq!(err.offset, 23);
        let err = parse_expr("nonsense(").unwrap_err();
        assert_eq!(err.offset, 9);
    }

    #[test]
    fn print_then_parse_is_identity() {
        for text in [
            "stakeholders()",
            "potluck(U=[pie, salad], variant=symmetric)",
            "parallel(stakeholders(), potluck(U={a}, variant=last_served))",
            "free(survey)",
            "x(a=-7, b=1/3, c={1, 2/3, z}, d=[[1], []])",
        ] {
            let e = parse_expr(text).unwrap();
            let printed = print_expr(&e);
            assert_eq!(parse_expr(&printed).unwrap(), e, "round-trip of {text}");
        }
    }
}
