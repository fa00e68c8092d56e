//! Embedded expected dimensions, keyed by algebra class.
//!
//! The class predicates (`λ = 0` versus `λ ≠ 0`, the special `(a,b)` pairs)
//! are resolved before lookup, so each grid point lands on one row.

use wittx::cohomology::H2Dims;
use wittx::rat::{Lambda, Rat};
use wittx::Algebra;

/// Expected `(dim H², dim HL², dim H¹(g;g))` for one algebra instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct ExpectedDims {
    pub h2: i64,
    pub hl2: i64,
    pub h1: i64,
}

pub fn expected_series_a(lambda: &Lambda) -> ExpectedDims {
    if lambda.is_zero() {
        ExpectedDims {
            h2: 3,
            hl2: 4,
            h1: 2,
        }
    } else {
        ExpectedDims {
            h2: 2,
            hl2: 3,
            h1: 2,
        }
    }
}

pub fn expected_series_b(lambda: &Lambda) -> ExpectedDims {
    if lambda.is_zero() {
        ExpectedDims {
            h2: 3,
            hl2: 3,
            h1: 3,
        }
    } else {
        ExpectedDims {
            h2: 3,
            hl2: 3,
            h1: 2,
        }
    }
}

pub fn expected_tensor_density(a: &Rat, b: &Rat) -> ExpectedDims {
    let is = |x: i64, y: i64| a == &Rat::int(x) && b == &Rat::int(y);
    let half_zero = a == &Rat::new(1, 2) && b.is_zero();
    let h2 = if is(0, 0) || is(0, 1) {
        3
    } else if is(0, -1) || half_zero {
        2
    } else {
        1
    };
    let hl2 = h2 + if is(0, 1) || is(0, 2) { 1 } else { 0 };
    let h1 = if is(0, 0) {
        3
    } else if is(0, 1) || is(0, 2) {
        2
    } else {
        1
    };
    ExpectedDims { h2, hl2, h1 }
}

pub fn expected_dims(alg: &Algebra) -> Option<ExpectedDims> {
    match alg.base() {
        Algebra::SeriesA { lambda } => Some(expected_series_a(lambda)),
        Algebra::SeriesB { lambda } => Some(expected_series_b(lambda)),
        Algebra::TensorDensity { a, b } => Some(expected_tensor_density(a, b)),
        _ => None,
    }
}

/// Expected `{vir, ab, mix}` split of `H²` for the series families.
pub fn expected_h2_split(alg: &Algebra) -> Option<H2Dims> {
    match alg.base() {
        Algebra::SeriesA { lambda } => Some(if lambda.is_zero() {
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 2,
                total: 3,
            }
        } else {
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 1,
                total: 2,
            }
        }),
        Algebra::SeriesB { .. } => Some(H2Dims {
            vir: 1,
            ab: 1,
            mix: 1,
            total: 3,
        }),
        _ => None,
    }
}

/// Expected `dim Inv` where stated: one for the A-family, zero for the
/// B-family.
pub fn expected_inv(alg: &Algebra) -> Option<i64> {
    match alg.base() {
        Algebra::SeriesA { .. } => Some(1),
        Algebra::SeriesB { .. } => Some(0),
        _ => None,
    }
}
