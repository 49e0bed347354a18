//! Exact algebra, Lie structures, Verma modules and the Gaudin operator builders.

pub mod affine;
pub mod bethe;
pub mod diffop;
pub mod eigen;
pub mod error;
pub mod jet;
pub mod lie;
pub mod operators;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod verma;

pub use diffop::{DiffPolyOperator, FunctionRing, Letter, OperatorRing, OperatorWord, RawFactor, ScalarDiffOp};
pub use error::{AlgebraError, Error, Result};
pub use lie::{Family, LieAlgebraSpec, RootKind, WeightVector};
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use scalar::{int, parse_rat, rat, HpFloat, Magnitude, Rat, Scalar};
pub use verma::{Mono, TensorProduct, TensorState, Tuple, VermaModule};
pub use bethe::{bae_residual, bae_solve, bethe_vector, BetheConfig, GaudinInstance, Solution};
pub use jet::Jet;
pub use eigen::{verify_eigen, verify_eigen_float, VerifyOptions, VerifyReport, ZSeriesOp};
pub use operators::{build_operator, OperatorKind, ProjectorKind};
