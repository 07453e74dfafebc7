//! Exact counting of Pell-equation solutions in L1 balls.
//!
//! The crate solves x^2 - D y^2 = 1 over the integers, enumerates and
//! counts the solutions with |x| + |y| <= lambda, and extends both to the
//! shifted equation (x - a)^2 - D (y - b)^2 = 1. Counts are always backed
//! by exact integer arithmetic; closed-form and floating-point evaluations
//! are provided alongside and reconciled against the exact routes, never
//! trusted alone. A brute-force lattice scanner serves as independent
//! ground truth for everything else.

pub mod analytic;
pub mod counting;
pub mod error;
pub mod fundamental;
pub mod highprec;
pub mod instance;
pub mod oracle;
pub mod rational;
pub mod sequence;
pub mod shifted;

pub use analytic::{AnalyticContext, FloorG};
pub use counting::{
    count_region, enumerate_region, floor_g_exact, CountMethod, CountReport, RegionQuery,
};
pub use error::PellError;
pub use fundamental::FundamentalSolution;
pub use highprec::{sandwich_holds_exact, sandwich_precision, ExtendedEval};
pub use instance::PellInstance;
pub use oracle::{brute_force, brute_force_parallel, brute_force_window, OracleResult, DEFAULT_SCAN_CAP};
pub use sequence::{expand_signs, Solution, SolutionTerm, TermIter};
pub use shifted::{
    count_shifted, enumerate_shifted, eventual_quadrant, intercept_max_l1, intercept_norms,
    Quadrant, ShiftedInstance, SignedBranch, ThresholdK,
};

// re-exported so downstream binaries and fuzz targets share one version
pub use num_bigint;
pub use num_rational;
pub use num_traits;
