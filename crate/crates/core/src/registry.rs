//! The constructor registry: builds a [`CollectiveHandle`] from a parsed
//! expression and lists every registered constructor with its parameter
//! schema.
//!
//! Presheaves and tables take their full data through the library API; the
//! expression grammar exposes them through named fixtures.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::catalog;
use crate::catalog::{FiniteCollectiveTable, MonoidSpec, PotluckVariant, PresheafData};
use crate::collective::CollectiveHandle;
use crate::combinators;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Arg, CollectiveExpr};
use crate::interface::{EnumInterface, PolynomialInterface};
use crate::value::Value;

/// One registered constructor, for `list`-style output.
#[derive(Clone, Debug)]
pub struct ConstructorInfo {
    pub name: &'static str,
    /// `name=kind` parameter descriptions, in declaration order.
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

/// Every registered constructor: the full catalog plus the four combinators.
pub fn constructors() -> Vec<ConstructorInfo> {
    alloc::vec![
        ConstructorInfo {
            name: "donation_box",
            params: &["monoid=naturals_add|integers_add|strings_concat", "alphabet=[symbols] (strings_concat only)"],
            summary: "any monoid; every contributor just gets a thank-you",
        },
        ConstructorInfo {
            name: "distribution_list",
            params: &["S=[messages]"],
            summary: "one trivial contribution; messages are copied to everyone",
        },
        ConstructorInfo {
            name: "stakeholders",
            params: &[],
            summary: "pool rational amounts, divide returns proportionally",
        },
        ConstructorInfo {
            name: "reservation",
            params: &[],
            summary: "reserve time; the visitor's hours fill requests in order",
        },
        ConstructorInfo {
            name: "fcfs_scheduler",
            params: &["A=[tasks]"],
            summary: "concatenate task lists; completed prefixes return to owners",
        },
        ConstructorInfo {
            name: "balanced_scheduler",
            params: &["A=[tasks]"],
            summary: "merge priority bundles pointwise; finished bundles return",
        },
        ConstructorInfo {
            name: "potluck",
            params: &["U=[dishes]", "variant=symmetric|first_served|last_served|last_served_printed"],
            summary: "offer dish sets; the chosen menu comes back as instructions",
        },
        ConstructorInfo {
            name: "single_question_survey",
            params: &[],
            summary: "questions multiply; answers project back by mod/div",
        },
        ConstructorInfo {
            name: "prediction_market",
            params: &["E=[candidates]"],
            summary: "weighted-average forecasts; winners' rewards split by weight",
        },
        ConstructorInfo {
            name: "probabilistic_events",
            params: &[],
            summary: "run events in sequence; outcomes project to each member",
        },
        ConstructorInfo {
            name: "simplices",
            params: &[],
            summary: "simplices add; faces pull back along the block inclusions",
        },
        ConstructorInfo {
            name: "finset_coproduct",
            params: &["codomain_bound=nat"],
            summary: "finite sets by disjoint union; functions restrict to parts",
        },
        ConstructorInfo {
            name: "finset_cartesian_closed",
            params: &["bound=nat"],
            summary: "finite sets by product; functions curry to each factor",
        },
        ConstructorInfo {
            name: "presheaf_collective",
            params: &["fixture=constant_two_open|three_open"],
            summary: "opens union; sections restrict along inclusions",
        },
        ConstructorInfo {
            name: "table_collective",
            params: &["fixture=singleton_message|potluck_one_dish|potluck_first_served"],
            summary: "explicit finite tables, validated lawful at construction",
        },
        ConstructorInfo {
            name: "trajectories",
            params: &[],
            summary: "polynomial vector fields compose; points walk the jumps",
        },
        ConstructorInfo {
            name: "multi_question_survey",
            params: &[],
            summary: "free collective on the survey interface: lists of questions",
        },
        ConstructorInfo {
            name: "parallel",
            params: &["<expr>", "<expr>"],
            summary: "run two protocols side by side",
        },
        ConstructorInfo {
            name: "product",
            params: &["<expr>", "<expr>"],
            summary: "contribute to both protocols; one tagged return comes back",
        },
        ConstructorInfo {
            name: "composite",
            params: &["<expr>", "<expr>"],
            summary: "run two protocols in series via strategies",
        },
        ConstructorInfo {
            name: "free",
            params: &["interface (survey|two_atom) or <expr>"],
            summary: "lists of atoms; returns subdivide positionally",
        },
    ]
}

/// Parses and builds in one step.
pub fn build_str(text: &str) -> Result<CollectiveHandle> {
    let expr = parse_expr(text).map_err(Error::Parse)?;
    build(&expr)
}

/// Builds a handle from a parsed expression.
pub fn build(expr: &CollectiveExpr) -> Result<CollectiveHandle> {
    let ctor = expr.name.as_str();
    match ctor {
        "donation_box" => {
            let monoid = match required_sym(expr, "monoid")? {
                m if m == "naturals_add" => MonoidSpec::NaturalsAdd,
                m if m == "integers_add" => MonoidSpec::IntegersAdd,
                m if m == "strings_concat" => {
                    let alphabet = required_values(expr, "alphabet")?;
                    let chars: Option<Vec<char>> = alphabet
                        .iter()
                        .map(|v| {
                            v.as_sym().and_then(|s| {
                                let mut cs = s.chars();
                                match (cs.next(), cs.next()) {
                                    (Some(c), None) => Some(c),
                                    _ => None,
                                }
                            })
                        })
                        .collect();
                    let chars = chars.ok_or_else(|| invalid(ctor, "alphabet entries must be single-character symbols"))?;
                    MonoidSpec::StringsConcat(chars)
                }
                other => return Err(Error::UnknownMonoid(other)),
            };
            catalog::donation_box(monoid)
        }
        "distribution_list" => catalog::distribution_list(&required_values(expr, "S")?),
        "stakeholders" => Ok(catalog::stakeholders()),
        "reservation" => Ok(catalog::reservation()),
        "fcfs_scheduler" => catalog::fcfs_scheduler(&required_values(expr, "A")?),
        "balanced_scheduler" => catalog::balanced_scheduler(&required_values(expr, "A")?),
        "potluck" => {
            let universe = required_values(expr, "U")?;
            let variant = match optional_sym(expr, "variant")? {
                Some(v) => PotluckVariant::from_str(&v)
                    .ok_or_else(|| invalid(ctor, "unknown variant"))?,
                None => PotluckVariant::Symmetric,
            };
            catalog::potluck(&universe, variant)
        }
        "single_question_survey" => Ok(catalog::single_question_survey()),
        "prediction_market" => catalog::prediction_market(&required_values(expr, "E")?),
        "probabilistic_events" => Ok(catalog::probabilistic_events()),
        "simplices" => Ok(catalog::simplices()),
        "finset_coproduct" => {
            catalog::finset_coproduct(required_nat(expr, "codomain_bound")? as u32)
        }
        "finset_cartesian_closed" => {
            catalog::finset_cartesian_closed(required_nat(expr, "bound")? as u32)
        }
        "presheaf_collective" => {
            let fixture = required_sym(expr, "fixture")?;
            let data = match fixture.as_str() {
                "constant_two_open" => PresheafData::constant_two_open(),
                "three_open" => PresheafData::three_open(),
                other => return Err(invalid(ctor, &alloc::format!("unknown fixture {other}"))),
            };
            catalog::presheaf_collective(data, &fixture)
        }
        "table_collective" => {
            let fixture = required_sym(expr, "fixture")?;
            let table = match fixture.as_str() {
                "singleton_message" => FiniteCollectiveTable::singleton_message(Value::sym("s")),
                "potluck_one_dish" => {
                    FiniteCollectiveTable::potluck_one_dish(PotluckVariant::Symmetric)
                }
                "potluck_first_served" => {
                    FiniteCollectiveTable::potluck_one_dish(PotluckVariant::FirstServed)
                }
                other => return Err(invalid(ctor, &alloc::format!("unknown fixture {other}"))),
            };
            catalog::table_collective(table, &fixture)
        }
        "trajectories" => Ok(catalog::trajectories()),
        "multi_question_survey" => Ok(combinators::multi_question_survey()),
        "parallel" | "product" | "composite" => {
            let mut subs = expr.positional();
            let (a, b) = match (subs.next(), subs.next(), subs.next()) {
                (Some(Arg::Expr(a)), Some(Arg::Expr(b)), None) => (build(a)?, build(b)?),
                _ => return Err(invalid(ctor, "expected exactly two sub-expressions")),
            };
            Ok(match ctor {
                "parallel" => combinators::parallel(a, b),
                "product" => combinators::product(a, b),
                _ => combinators::composite(a, b),
            })
        }
        "free" => {
            let mut subs = expr.positional();
            match (subs.next(), subs.next()) {
                (Some(Arg::Literal(Value::Sym(name))), None) => {
                    let interface = named_interface(name)?;
                    Ok(combinators::free(interface, name))
                }
                (Some(Arg::Expr(sub)), None) => {
                    let inner = build(sub)?;
                    let name = alloc::format!("{}", inner.expr());
                    Ok(combinators::free(Arc::new(inner.interface()), &name))
                }
                _ => Err(invalid(ctor, "expected an interface name or a sub-expression")),
            }
        }
        other => Err(Error::UnknownCollective(other.to_string())),
    }
}

/// The named interfaces available to `free(...)`.
pub fn named_interface(name: &str) -> Result<Arc<dyn PolynomialInterface>> {
    match name {
        "survey" | "single_question_survey" => Ok(Arc::new(
            catalog::single_question_survey().interface(),
        )),
        "two_atom" => Ok(Arc::new(EnumInterface::two_atoms())),
        other => Err(Error::UnknownInterface(other.to_string())),
    }
}

fn invalid(constructor: &str, message: &str) -> Error {
    Error::InvalidParams {
        constructor: constructor.to_string(),
        message: message.to_string(),
    }
}

fn named_value(expr: &CollectiveExpr, key: &str) -> Option<Value> {
    expr.named()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.clone())
}

fn required_sym(expr: &CollectiveExpr, key: &str) -> Result<String> {
    match named_value(expr, key) {
        Some(Value::Sym(s)) => Ok(s),
        Some(_) => Err(invalid(&expr.name, &alloc::format!("{key} must be a symbol"))),
        None => Err(invalid(&expr.name, &alloc::format!("missing parameter {key}"))),
    }
}

fn optional_sym(expr: &CollectiveExpr, key: &str) -> Result<Option<String>> {
    match named_value(expr, key) {
        Some(Value::Sym(s)) => Ok(Some(s)),
        Some(_) => Err(invalid(&expr.name, &alloc::format!("{key} must be a symbol"))),
        None => Ok(None),
    }
}

fn required_nat(expr: &CollectiveExpr, key: &str) -> Result<i64> {
    match named_value(expr, key) {
        Some(v) => v
            .as_nat()
            .ok_or_else(|| invalid(&expr.name, &alloc::format!("{key} must be a natural number"))),
        None => Err(invalid(&expr.name, &alloc::format!("missing parameter {key}"))),
    }
}

/// A list or set parameter, as a vector of element values.
fn required_values(expr: &CollectiveExpr, key: &str) -> Result<Vec<Value>> {
    match named_value(expr, key) {
        Some(Value::List(items)) => Ok(items),
        Some(Value::Set(items)) => Ok(items.into_iter().collect()),
        Some(_) => Err(invalid(&expr.name, &alloc::format!("{key} must be a list or set"))),
        None => Err(invalid(&expr.name, &alloc::format!("missing parameter {key}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_catalog_constructors() {
        for text in [
            "stakeholders()",
            "potluck(U=[pie, salad], variant=first_served)",
            "fcfs_scheduler(A=[x, y])",
            "donation_box(monoid=strings_concat, alphabet=[a, b, c])",
            "prediction_market(E=[e1, e2])",
            "finset_coproduct(codomain_bound=2)",
            "presheaf_collective(fixture=three_open)",
            "table_collective(fixture=potluck_one_dish)",
            "parallel(stakeholders(), potluck(U=[pie], variant=symmetric))",
            "free(survey)",
            "free(single_question_survey())",
            "multi_question_survey()",
        ] {
            let h = build_str(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            let _ = h.neutral();
        }
    }

    #[test]
    fn unknown_collective_and_bad_params() {
        assert!(matches!(
            build_str("nonsense()"),
            Err(Error::UnknownCollective(_))
        ));
        assert!(matches!(
            build_str("potluck(variant=symmetric)"),
            Err(Error::InvalidParams { .. })
        ));
        assert!(matches!(
            build_str("donation_box(monoid=weird)"),
            Err(Error::UnknownMonoid(_))
        ));
        assert!(matches!(build_str("nonsense("), Err(Error::Parse(_))));
    }

    #[test]
    fn registry_lists_all_constructors() {
        let names: Vec<&str> = constructors().iter().map(|c| c.name).collect();
        for required in [
            "donation_box",
            "distribution_list",
            "stakeholders",
            "reservation",
            "fcfs_scheduler",
            "balanced_scheduler",
            "potluck",
            "single_question_survey",
            "prediction_market",
            "probabilistic_events",
            "simplices",
            "finset_coproduct",
            "finset_cartesian_closed",
            "presheaf_collective",
            "table_collective",
            "trajectories",
            "multi_question_survey",
            "parallel",
            "product",
            "composite",
            "free",
        ] {
            assert!(names.contains(&required), "{required} missing");
        }
    }
}
