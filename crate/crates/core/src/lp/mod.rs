//! Exact LP kernel and the co-3-plex master model.

pub mod format;
pub mod master;
pub mod simplex;

pub use master::{build_master, reduced_cost, Column, ColumnKind, DualValues, MasterModel};
pub use format::write_lp;
pub use simplex::{solve_lp, BasisVar, Constraint, LinearProgram, LpSolution, LpStatus, Simplex};
