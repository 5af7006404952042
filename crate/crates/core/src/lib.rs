//! Collectives: interfaces with a protocol for aggregating member
//! contributions and coassociatively distributing returns.
//!
//! A collective is a monoid of contributions together with, for each
//! contribution, a set of returns, and a distribution operation that splits
//! a return on an aggregate back to the members — subject to cancellation
//! equations that make n-member rounds well-defined regardless of
//! bracketing. This crate provides:
//!
//! * the [`collective`] abstraction and derived n-ary round operations;
//! * a [`catalog`] of concrete collectives, from proportional-payout
//!   stakeholding to task schedulers, surveys, prediction markets,
//!   simplices and vector-field trajectories;
//! * [`combinators`] building new collectives from old (parallel, product,
//!   composite, free);
//! * a [`laws`] engine checking the defining equations exhaustively on
//!   finite fragments or by seeded sampling, with counterexamples;
//! * a small expression grammar ([`expr`], [`registry`]) naming every
//!   constructor, and a [`session`] runner for full rounds.
//!
//! All numeric data is exact (arbitrary-precision rationals), so law
//! verdicts are never rounding artifacts. The crate is `no_std` (with
//! `alloc`); IO, file formats and the CLI live in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod collective;
pub mod combinators;
pub mod error;
pub mod expr;
pub mod interface;
pub mod laws;
pub mod registry;
mod seed;
pub mod session;
pub mod value;

pub use collective::{Collective, CollectiveHandle};
pub use error::{Error, ParseError, Result};
pub use interface::{EnumInterface, HandleInterface, PolynomialInterface};
pub use laws::{LawConfig, LawId, LawReport, Mode, Verdict};
pub use session::{Session, SessionStatus};
pub use value::{Rational, Value};
