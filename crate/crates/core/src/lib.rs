//! Exact rational algebra for hom-Lie structures: multilinear forms, twisted
//! differentials, representations and cohomology, omni-hom-Lie algebras and
//! hom-Lie 2-algebras.

mod error;
pub mod dgca;
pub mod exactmath;
pub mod homlie;
pub mod homlie2;
pub mod io;
pub mod multilinear;
pub mod omni;
pub mod rep;
pub mod report;

pub use error::{HomkitError, Result};
pub use exactmath::{Matrix, Rational, Subspace};
pub use homlie::{BilinearMap, HomLieAlgebra};
pub use multilinear::AltForm;
pub use rep::{HomCochain, Representation};
pub use report::{CheckItem, CheckReport};
