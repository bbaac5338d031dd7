//! Loop symmetric polynomials: shapes and tableaux, whirl matrices, loop
//! elementary / Schur / powersum polynomials and the network path model.

pub mod classical;
mod elementary;
mod matrix;
mod schur;
mod shape;
mod vars;

pub use elementary::{
    boundary_measurement, cycle_measurement, extract_e, loop_e, loop_e_semiring, loop_powersum, ETable,
};
pub use matrix::{whirl, whirl_product, MatrixPoly, MatrixPolyJson};
pub use schur::{
    jt_determinant, jt_matrix, loop_schur_jt, loop_schur_tableaux, mn_expand, ribbon_rows, tableau_weight, JtEntry,
};
pub use shape::{ssyt_enumerate, Partition, SkewShape, SsytIter, Tableau};
pub use vars::{parse_rational, parse_rational_str, random_point, LoopVarArray, LoopVarJson};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LsymError {
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("inner shape {1} is not contained in {0}")]
    InvalidShape(Partition, Partition),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}
