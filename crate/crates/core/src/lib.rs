//! Exact computer algebra for graded Lie algebras built from the Witt algebra
//! and its intermediate-series modules.
//!
//! The crate implements, over the rationals and with no floating point
//! anywhere:
//!
//! - the Witt algebra `W`, the tensor-density semi-direct sums `W(a,b)`, and
//!   the two projective families `W_A(λ)`, `W_B(λ)` ([`algebra`]);
//! - exact sparse linear algebra over `Q` ([`linsolve`]);
//! - degree-zero 2-cocycle machinery for `H²`: Virasoro, abelian, and mixing
//!   components, named closed-form cocycles, and windowed dimension
//!   computations ([`cohomology`]);
//! - Leibniz 2-cocycles, symmetric invariant bilinear forms, `HL²`, and the
//!   Cartan–Koszul exact-sequence cross-check ([`leibniz`]);
//! - parametric automorphisms with their composition law, named derivations,
//!   and the windowed solver for `H¹(g;g)` ([`morphisms`]);
//! - central extensions assembled from selected cocycles ([`extension`]).
//!
//! All infinite-dimensional linear problems are truncated to an index window
//! `[-N, N]` and solved exactly; results are reported together with their
//! window.

pub mod algebra;
pub mod cocycle;
pub mod cohomology;
pub mod element;
pub mod error;
pub mod extension;
pub mod leibniz;
pub mod linsolve;
pub mod morphisms;
pub mod rat;
pub mod report;
pub mod suites;

pub use algebra::{Algebra, CentralCharge};
pub use cocycle::{CocycleForm, Component, NamedCocycle};
pub use cohomology::{H2Dims, Window};
pub use element::{Basis, Element, Family};
pub use error::Error;
pub use linsolve::{LinearSystem, SparseVec, SubspaceBasis, VarId};
pub use morphisms::{AutSpec, DerGen, DerSpec};
pub use rat::{Lambda, Rat};
