//! Inputs shared by the benchmarks.

use homkit::exactmath::int;
use homkit::homlie::catalog;
use homkit::omni::OmniSpace;
use homkit::{HomLieAlgebra, Matrix, Representation};

/// The twist used for the omni and 2-algebra benchmarks at size `m`.
pub fn omni_beta(m: usize) -> Matrix {
    Matrix::from_fn(m, m, |i, j| {
        if i == j {
            int(i as i64 + 1)
        } else if j == i + 1 {
            int(1)
        } else {
            int(0)
        }
    })
}

pub fn omni_space(m: usize) -> OmniSpace {
    OmniSpace::new(omni_beta(m)).expect("upper triangular with nonzero diagonal")
}

pub fn sl2() -> HomLieAlgebra {
    catalog::sl2()
}

pub fn adjoint_sl2() -> Representation {
    homkit::rep::adjoint_rep(&catalog::sl2()).expect("sl2 is regular")
}
