//! Exact arithmetic tables: τ, λ, Λ, μ and d.

mod arith;
mod checks;
pub mod io;
mod tau;

pub use arith::{build_arithmetic_tables, ArithmeticTables};
pub use checks::{deligne_check, deligne_check_with, hecke_relation_check, pnt_hecke_sum, DeligneReport};
pub use tau::{
    build_tau_table, build_tau_table_with, normalize, tau_oracle_naive, TauBuildOptions, TauTable, DISCRIMINANT_WEIGHT,
    NAIVE_ORACLE_CAP,
};

use crate::error::Result;

/// Eigenvalue table and arithmetic sidecar over the same range.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeTables {
    pub tau: TauTable,
    pub arith: ArithmeticTables,
}

impl HeckeTables {
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, TauBuildOptions::default())
    }

    pub fn build_with(limit: u64, options: TauBuildOptions) -> Result<Self> {
        Ok(HeckeTables { tau: build_tau_table_with(limit, options)?, arith: build_arithmetic_tables(limit)? })
    }

    pub fn limit(&self) -> u64 {
        self.tau.limit().min(self.arith.limit())
    }
}
