//! Weight modules: graded `gl_N`-modules, tensor fields, gap-p Virasoro modules,
//! axiom checks and the irreducibility oracle.

pub mod classify;
pub mod gln;
pub mod irreducible;
pub mod verify;
pub mod virp;
pub mod window;

pub use gln::{GradedGlnModule, GradedSimplicity};
pub use virp::{build_virp_module, FDiagnostics, FMatrix, VirPModule};
pub use window::{
    build_tensor_module, build_wmu_module, BlockAction, Driver, TensorAction, WeightWindowModule,
    WindowedModule,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("result leaves the weight window at {0}")]
    OutOfWindow(String),
    #[error("{0} does not act on this module")]
    NotInAlgebra(String),
    #[error("invalid graded gl_N-module: {0}")]
    InvalidW(String),
    #[error("invalid F-matrix: {0}")]
    InvalidF(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
pub use verify::{verify_module_axioms, verify_z_action};
pub use irreducible::{reducibility_criterion, reachability_irreducible, IrreducibilityReport, Verdict, Witness, WitnessPiece};
pub use classify::{special_weight_is_inner, grid_cell, reducibility_grid, GridCell, WChoice};
