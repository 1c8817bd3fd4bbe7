//! Exact hyperpolarisations of homogeneous forms, small-format
//! hyperdeterminants, classical invariants of binary forms, skew
//! decompositions of tensors and Gramm forms, with a seeded harness that
//! checks the identities between them.

pub mod classical;
pub mod error;
pub mod gramm;
pub mod hyperdet;
pub mod json;
pub mod parse;
pub mod polar;
pub mod poly;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use gramm::{gramm_form, gramm_tensor, orbit_ord, project_k, skew_gramm, GrammValue, OrbitTable};
pub use hyperdet::{binary_form_disc, det_square, hyperdet, ternary_quadratic_disc, FormatClass, FormatKind};
pub use parse::parse_poly;
pub use polar::{hyperhessian, hyperresultant, jacobi_form, jacobi_sequence, polarize, PolarKey, SystemOfForms};
pub use poly::{Monomial, MultiPoly};
pub use scalar::Scalar;
pub use tensor::{enumerate_multiindices, MultiIndexSet, Shape, Tensor};
pub use verify::{VerifyConfig, VerifyReport};
