//! Ramanujan bigraphs from arithmetic lattices in unitary groups.

pub mod bigraph;
pub mod classify;
pub mod complexes;
pub mod dynamics;
pub mod groups;
pub mod io;
pub mod jobs;
pub mod lattice;
pub mod linalg;
pub mod rings;
pub mod spectral;

use serde::{Deserialize, Serialize};

/// Size limits for the dense and exhaustive code paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// largest |L| for the dense Gram eigensolve
    pub gram: usize,
    /// largest 2N for the dense non-backtracking eigensolve
    pub direct_b: usize,
    /// largest group closure
    pub closure: usize,
    /// largest m for exhaustive closed-walk counting
    pub nm_brute: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { gram: 8192, direct_b: 4000, closure: 2_000_000, nm_brute: 14 }
    }
}
