//! Polynomial interfaces: atomic contributions with per-atom return sets.
//!
//! An interface carries no protocol — just the shape `Σ_c y^{R[c]}`. It is
//! the input to the free collective construction, and every collective
//! induces one by forgetting its aggregation and distribution.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::collective::CollectiveHandle;
use crate::value::Value;

/// Atoms plus, for each atom, a description of its return set: membership
/// predicates with optional enumerations and seeded generators.
pub trait PolynomialInterface: Send + Sync {
    fn is_atom(&self, v: &Value) -> bool;
    fn is_atom_return(&self, atom: &Value, r: &Value) -> bool;
    fn enumerate_atoms(&self, _bound: u32) -> Option<Vec<Value>> {
        None
    }
    fn enumerate_atom_returns(&self, atom: &Value, _bound: u32) -> Option<Vec<Value>> {
        self.enumerate_atom_returns_exact(atom)
    }
    fn enumerate_atom_returns_exact(&self, _atom: &Value) -> Option<Vec<Value>> {
        None
    }
    fn gen_atom(&self, seed: u64, size: u32) -> Option<Value> {
        let all = self.enumerate_atoms(size)?;
        pick(&all, seed)
    }
    fn gen_atom_return(&self, atom: &Value, seed: u64, size: u32) -> Option<Value> {
        let all = self.enumerate_atom_returns(atom, size)?;
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

/// The interface of a collective: atoms are its contributions, atom returns
/// its returns.
#[derive(Clone)]
pub struct HandleInterface {
    handle: CollectiveHandle,
}

impl HandleInterface {
    pub fn new(handle: CollectiveHandle) -> HandleInterface {
        HandleInterface { handle }
    }

    pub fn handle(&self) -> &CollectiveHandle {
        &self.handle
    }
}

impl PolynomialInterface for HandleInterface {
    fn is_atom(&self, v: &Value) -> bool {
        self.handle.is_contribution(v)
    }

    fn is_atom_return(&self, atom: &Value, r: &Value) -> bool {
        self.handle.is_return(atom, r)
    }

    fn enumerate_atoms(&self, bound: u32) -> Option<Vec<Value>> {
        self.handle.enumerate_contributions(bound)
    }

    fn enumerate_atom_returns(&self, atom: &Value, bound: u32) -> Option<Vec<Value>> {
        self.handle.enumerate_returns(atom, bound)
    }

    fn enumerate_atom_returns_exact(&self, atom: &Value) -> Option<Vec<Value>> {
        self.handle.enumerate_returns_exact(atom)
    }

    fn gen_atom(&self, seed: u64, size: u32) -> Option<Value> {
        self.handle.gen_contribution(seed, size)
    }

    fn gen_atom_return(&self, atom: &Value, seed: u64, size: u32) -> Option<Value> {
        self.handle.gen_return(atom, seed, size)
    }
}

/// A finite interface given by an explicit atom/return-set listing.
#[derive(Clone, Debug)]
pub struct EnumInterface {
    atoms: Arc<Vec<(Value, Vec<Value>)>>,
}

impl EnumInterface {
    pub fn new(atoms: Vec<(Value, Vec<Value>)>) -> EnumInterface {
        EnumInterface {
            atoms: Arc::new(atoms),
        }
    }

    /// Two atoms `a`, `b`, each with return set `{0, 1}`. The overlap of the
    /// return sets makes order sensitivity of the free collective's
    /// subdivision observable.
    pub fn two_atoms() -> EnumInterface {
        let ord2 = alloc::vec![Value::Int(0), Value::Int(1)];
        EnumInterface::new(alloc::vec![
            (Value::sym("a"), ord2.clone()),
            (Value::sym("b"), ord2),
        ])
    }
}

impl PolynomialInterface for EnumInterface {
    fn is_atom(&self, v: &Value) -> bool {
        self.atoms.iter().any(|(a, _)| a == v)
    }

    fn is_atom_return(&self, atom: &Value, r: &Value) -> bool {
        self.atoms
            .iter()
            .find(|(a, _)| a == atom)
            .is_some_and(|(_, rs)| rs.contains(r))
    }

    fn enumerate_atoms(&self, _bound: u32) -> Option<Vec<Value>> {
        Some(self.atoms.iter().map(|(a, _)| a.clone()).collect())
    }

    fn enumerate_atom_returns_exact(&self, atom: &Value) -> Option<Vec<Value>> {
        self.atoms
            .iter()
            .find(|(a, _)| a == atom)
            .map(|(_, rs)| rs.clone())
    }
}
