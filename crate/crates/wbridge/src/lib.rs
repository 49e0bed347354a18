//! Additive character rings with their screening operators, the `gr` map to classical
//! W-algebras, the W-algebra screenings `V_i`, and Harish-Chandra type images built from
//! the eigenvalue formulas with `∂` replaced by `τ`.

pub mod cartan;
pub mod characters;
pub mod lambda;
pub mod sparse;
pub mod w;

pub use cartan::CartanType;
pub use lambda::{parse_lambda, CharacterRing, LambdaElement, LambdaSym, SigmaElement};
pub use sparse::{Monomial, SparsePoly};
pub use w::{
    gr_map, hc_image_builder, is_w_element, mu, screening_v, v_coefficients, MuVar, WDiffElement, WPolynomial, GR_CAP,
};

#[derive(Debug, thiserror::Error)]
pub enum WError {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("color {color} out of range (the type has {screens} screenings)")]
    InvalidColor { color: usize, screens: usize },
    #[error("symbol index {index} out of range (bound {bound})")]
    InvalidIndex { index: usize, bound: usize },
    #[error("gr: no nonzero homogeneous component up to weight {cap}")]
    NotSaturated { cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error(transparent)]
    Core(#[from] gaudin_core::Error),
}

pub type Result<T> = std::result::Result<T, WError>;
