//! Loop symmetric functions and friends.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactring`] — big-rational sparse polynomials, rational expressions and
//!   the small ring/semiring traits everything else is generic over.
//! * [`lsym`] — partitions, tableaux, whirl matrices, loop elementary / Schur /
//!   powersum polynomials and the network path model.
//! * [`rmatrix`] — κ-functions, the birational swap and the S_m action,
//!   loop alternants.
//! * [`hopf`] — the free e-generator presentation with coproduct and antipode.
//! * [`crystal`] — tropicalization, the combinatorial R-matrix, cocharge and
//!   energy.
//! * [`boxball`] — the box-ball system and its tropical conserved quantities.
//! * [`factorize`] — block-Toeplitz total-nonnegativity tests and numeric
//!   whirl factorization.
//! * [`verify`] — seeded identity suites shared by the CLI.

pub mod boxball;
pub mod crystal;
pub mod exactring;
pub mod factorize;
pub mod hopf;
pub mod linalg;
pub mod lsym;
pub mod rmatrix;
pub mod verify;

pub use exactring::{Monomial, Poly, RationalExpr, Ring, Semifield, Semiring, SparsePoly, VarId};
