//! The catalog: every concrete collective, as a constructor returning a
//! [`CollectiveHandle`](crate::collective::CollectiveHandle).
//!
//! Each module documents the protocol it implements and, where the neutral
//! contribution's return set is not a singleton, what `is_return(neutral, ·)`
//! accepts.

mod distribution_list;
mod donation;
mod events;
mod finset;
pub mod polynomial;
mod potluck;
mod prediction_market;
mod presheaf;
mod reservation;
mod schedulers;
mod stakeholders;
mod survey;
mod table;
mod trajectories;

pub use distribution_list::distribution_list;
pub use donation::{donation_box, MonoidSpec, MonoidTable};
pub use events::probabilistic_events;
pub use finset::{finset_cartesian_closed, finset_coproduct, simplices};
pub use potluck::{potluck, PotluckVariant};
pub use prediction_market::prediction_market;
pub use presheaf::{presheaf_collective, PresheafData};
pub use reservation::reservation;
pub use schedulers::{balanced_scheduler, fcfs_scheduler};
pub use stakeholders::stakeholders;
pub use survey::single_question_survey;
pub use table::{table_collective, FiniteCollectiveTable};
pub use trajectories::{trajectories, VectorFieldExpr};

use alloc::vec::Vec;

use crate::value::Rational;

/// All nonnegative rationals `p/q` with `p ≤ bound`, `q ≤ bound`, sorted
/// ascending and deduplicated. The bounded enumeration fragment used by the
/// rational-valued collectives.
pub(crate) fn nonneg_rational_grid(bound: u32) -> Vec<Rational> {
    let bound = bound.max(1) as i64;
    let mut grid: Vec<Rational> = Vec::new();
    for p in 0..=bound {
        for q in 1..=bound {
            grid.push(crate::value::rat(p, q));
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

/// Sorted positive part of [`nonneg_rational_grid`].
pub(crate) fn positive_rational_grid(bound: u32) -> Vec<Rational> {
    use num_traits::Zero;
    nonneg_rational_grid(bound)
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect()
}

/// All length-`len` index vectors with entries `< base`, in lexicographic
/// order (empty product for `len == 0`).
pub(crate) fn index_vectors(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * base);
        for prefix in &out {
            for digit in 0..base {
                let mut v = prefix.clone();
                v.push(digit);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
