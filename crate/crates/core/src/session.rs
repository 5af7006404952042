//! Session runner: one full collective round.
//!
//! A session collects ordered member contributions, aggregates them, takes
//! an externally supplied return, and distributes it back per member.
//! Member order is preserved exactly as submitted — noncommutative
//! collectives depend on it. Sessions are values: every operation returns a
//! new session, and the wrapped handle is immutable.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::collective::CollectiveHandle;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, print_expr};
use crate::registry;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionStatus {
    Collecting,
    Aggregated,
    Settled,
}

impl SessionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SessionStatus::Collecting => "collecting",
            SessionStatus::Aggregated => "aggregated",
            SessionStatus::Settled => "settled",
        }
    }

    pub fn from_str(s: &str) -> Option<SessionStatus> {
        match s {
            "collecting" => Some(SessionStatus::Collecting),
            "aggregated" => Some(SessionStatus::Aggregated),
            "settled" => Some(SessionStatus::Settled),
            _ => None,
        }
    }
}

/// One round: ordered contributions, cached aggregate, supplied return,
/// per-member distributed returns.
#[derive(Clone, Debug)]
pub struct Session {
    expr: String,
    handle: CollectiveHandle,
    members: Vec<(String, Value)>,
    aggregate: Option<Value>,
    supplied_return: Option<Value>,
    distributed: Option<Vec<(String, Value)>>,
    status: SessionStatus,
}

impl Session {
    /// Opens an empty collecting session on the collective the expression
    /// names. The stored expression text is the canonical print of the
    /// parse, so serialized sessions are byte-stable.
    pub fn new(expr_text: &str) -> Result<Session> {
        let parsed = parse_expr(expr_text).map_err(Error::Parse)?;
        let handle = registry::build(&parsed)?;
        Ok(Session {
            expr: print_expr(&parsed),
            handle,
            members: Vec::new(),
            aggregate: None,
            supplied_return: None,
            distributed: None,
            status: SessionStatus::Collecting,
        })
    }

    pub fn expr(&self) -> &str {
        &self.expr
    }

    pub fn handle(&self) -> &CollectiveHandle {
        &self.handle
    }

    pub fn members(&self) -> &[(String, Value)] {
        &self.members
    }

    pub fn aggregate_value(&self) -> Option<&Value> {
        self.aggregate.as_ref()
    }

    pub fn supplied_return(&self) -> Option<&Value> {
        self.supplied_return.as_ref()
    }

    pub fn distributed(&self) -> Option<&[(String, Value)]> {
        self.distributed.as_deref()
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    fn require_status(&self, expected: SessionStatus, op: &'static str) -> Result<()> {
        if self.status == expected {
            Ok(())
        } else {
            let _ = op;
            Err(Error::WrongStatus {
                expected: expected.as_str(),
                actual: self.status.as_str(),
            })
        }
    }

    /// Appends a member's contribution, preserving submission order.
    pub fn submit(&self, member: &str, contribution: Value) -> Result<Session> {
        self.require_status(SessionStatus::Collecting, "submit")?;
        if self.members.iter().any(|(id, _)| id == member) {
            return Err(Error::DuplicateMember(member.to_string()));
        }
        if !self.handle.is_contribution(&contribution) {
            return Err(Error::InvalidContribution {
                collective: self.handle.name().to_string(),
                value: contribution,
            });
        }
        let mut next = self.clone();
        next.members.push((member.to_string(), contribution));
        Ok(next)
    }

    /// Computes and caches the aggregate, closing the member list.
    pub fn aggregate(&self) -> Result<Session> {
        self.require_status(SessionStatus::Collecting, "aggregate")?;
        let contributions: Vec<Value> = self.members.iter().map(|(_, c)| c.clone()).collect();
        let mut next = self.clone();
        next.aggregate = Some(self.handle.aggregate_all(&contributions)?);
        next.status = SessionStatus::Aggregated;
        Ok(next)
    }

    /// Settles the round on the supplied return: validates it against the
    /// aggregate and distributes per member in order.
    pub fn settle(&self, supplied: Value) -> Result<Session> {
        if self.status == SessionStatus::Settled {
            return Err(Error::WrongStatus {
                expected: "collecting or aggregated",
                actual: self.status.as_str(),
            });
        }
        let contributions: Vec<Value> = self.members.iter().map(|(_, c)| c.clone()).collect();
        let aggregate = match &self.aggregate {
            Some(a) => a.clone(),
            None => self.handle.aggregate_all(&contributions)?,
        };
        let shares = self.handle.distribute_all(&contributions, &supplied)?;
        let mut next = self.clone();
        next.aggregate = Some(aggregate);
        next.distributed = Some(
            self.members
                .iter()
                .map(|(id, _)| id.clone())
                .zip(shares)
                .collect(),
        );
        next.supplied_return = Some(supplied);
        next.status = SessionStatus::Settled;
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stakeholder_round() {
        let s = Session::new("stakeholders()").unwrap();
        let s = s.submit("alice", Value::Int(2)).unwrap();
        let s = s.submit("bob", Value::Int(3)).unwrap();
        let s = s.submit("carla", Value::Int(5)).unwrap();
        let s = s.settle(Value::Int(20)).unwrap();
        assert_eq!(s.status(), SessionStatus::Settled);
        assert_eq!(s.aggregate_value(), Some(&Value::Int(10)));
        let shares: Vec<Value> = s.distributed().unwrap().iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(shares, alloc::vec![Value::Int(4), Value::Int(6), Value::Int(10)]);
    }

    #[test]
    fn member_order_matters_for_the_survey() {
        let base = Session::new("single_question_survey()").unwrap();
        let forward = base
            .submit("p1", Value::Int(7))
            .unwrap()
            .submit("p2", Value::Int(4))
            .unwrap()
            .settle(Value::Int(19))
            .unwrap();
        let shares: Vec<Value> = forward
            .distributed()
            .unwrap()
            .iter()
            .map(|(_, v)| v.clone())
            .collect();
        assert_eq!(shares, alloc::vec![Value::Int(5), Value::Int(2)]);
        let reversed = base
            .submit("p2", Value::Int(4))
            .unwrap()
            .submit("p1", Value::Int(7))
            .unwrap()
            .settle(Value::Int(19))
            .unwrap();
        let shares: Vec<Value> = reversed
            .distributed()
            .unwrap()
            .iter()
            .map(|(_, v)| v.clone())
            .collect();
        assert_eq!(shares, alloc::vec![Value::Int(3), Value::Int(4)]);
    }

    #[test]
    fn error_paths() {
        let s = Session::new("stakeholders()").unwrap();
        assert!(matches!(
            s.submit("a", Value::sym("two")),
            Err(Error::InvalidContribution { .. })
        ));
        let s = s.submit("a", Value::Int(1)).unwrap();
        assert!(matches!(
            s.submit("a", Value::Int(2)),
            Err(Error::DuplicateMember(_))
        ));
        let settled = s.settle(Value::Int(3)).unwrap();
        assert!(matches!(
            settled.submit("b", Value::Int(1)),
            Err(Error::WrongStatus { .. })
        ));
        assert!(matches!(
            settled.settle(Value::Int(3)),
            Err(Error::WrongStatus { .. })
        ));
        // invalid return: reservation aggregate 5 cannot pay out 25
        let r = Session::new("reservation()")
            .unwrap()
            .submit("a", Value::Int(2))
            .unwrap()
            .submit("b", Value::Int(3))
            .unwrap();
        assert!(matches!(
            r.settle(Value::Int(25)),
            Err(Error::InvalidReturn { .. })
        ));
    }

    #[test]
    fn empty_session_settles_on_a_neutral_return() {
        let s = Session::new("stakeholders()").unwrap();
        let settled = s.settle(Value::Int(0)).unwrap();
        assert_eq!(settled.distributed(), Some(&[][..]));
        assert!(s.settle(Value::Int(5)).is_err());
    }

    #[test]
    fn aggregate_stage_closes_the_member_list() {
        let s = Session::new("stakeholders()")
            .unwrap()
            .submit("a", Value::Int(2))
            .unwrap()
            .aggregate()
            .unwrap();
        assert_eq!(s.status(), SessionStatus::Aggregated);
        assert!(matches!(
            s.submit("b", Value::Int(1)),
            Err(Error::WrongStatus { .. })
        ));
        let settled = s.settle(Value::Int(4)).unwrap();
        assert_eq!(settled.status(), SessionStatus::Settled);
    }
}
