//! Complete reduction for indefinite summation in towers of difference-field
//! extensions `sigma(t) = t + a`, with telescoping, parameterized telescoping
//! and the transformation to well generated towers built on top.

pub mod arith;
pub mod basis;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod reduction;
pub mod sequence;
pub mod syntax;
pub mod telescoping;
pub mod tower;
pub mod towerfile;
pub mod workload;

pub use arith::{Elem, Poly, Var};
pub use basis::{BasisComponent, ThetaElement};
pub use error::{Error, Result};
pub use reduction::{
    validate_tower, EchelonEntry, FastPathMode, FirstPair, LevelVerdict, ReductionContext, ReductionOptions,
    SecondPair, SigmaPair,
};
pub use sequence::{
    eval_sequence, verify_recurrence, verify_sigma_pair, SeqValue, SequenceAssignment, SumDefinition,
    VerificationReport,
};
pub use syntax::{parse_expression, parse_poly, print_elem};
pub use telescoping::{
    depth_reduce, parameterized_telescope, sigma_check, telescope, well_generate, IsomorphismMap, ParamTelescopeBasis,
    ParamTelescopeRow, SigmaCheck, Telescoped, WellGenerated,
};
pub use tower::TowerSpec;
pub use towerfile::TowerFile;
