//! Closed-form 2-cocycles on the semi-direct sum algebras.
//!
//! A degree-zero 2-cocycle on `W ⋉ X` splits into three components: a
//! Virasoro part pairing `L` with `L`, an abelian part pairing `X` with `X`,
//! and a mixing part pairing `L` with `X`. Each named cocycle here is one
//! such component together with a coefficient function of the degree, valid
//! on all of `Z` (no window).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::element::{Basis, Family};
use crate::error::{Error, Result};
use crate::rat::{Lambda, Rat};

/// The three components of a 2-cocycle on a semi-direct sum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Component {
    Vir,
    Ab,
    Mix,
}

/// The named cocycles, each given by its component and a closed-form
/// coefficient function.
///
/// - `OmegaVir`: `Ω(L_n, L_m) = (1/12) n(n²−1) δ⁰_{n+m}`
/// - `Omega0A`: `Ω(L_n, A_m) = n δ⁰_{n+m}` on `W_A(λ)`
/// - `OmegaMixA(λ)`: `Ω(L_n, A_m) = β_λ(n) δ⁰_{n+m}` on `W_A(λ)`
/// - `OmegaAbB`: `Ω(B_n, B_m) = n δ⁰_{n+m}` on `W_B(λ)`
/// - `OmegaMixB(λ)`: `Ω(L_n, B_m) = n δ⁰_{n+m}` for `λ ≠ 0`, `n² δ⁰_{n+m}`
///   for `λ = 0`
/// - `Iota`: the abelian cocycle function `n`
/// - `BetaLambda(λ)`: the mixing function with value `λ+1` at `n = 0`
///   (`1` everywhere when `λ = ∞`) and `1` elsewhere
/// - `Gamma1`, `Gamma2`: the mixing functions `n` and `n²`
/// - `EtaLambda(λ)`: the mixing coboundary function `n + n(n+1)λ`
///   (`n + n²` at `λ = ∞`)
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum NamedCocycle {
    OmegaVir,
    Omega0A,
    OmegaMixA(Lambda),
    OmegaAbB,
    OmegaMixB(Lambda),
    Iota,
    BetaLambda(Lambda),
    Gamma1,
    Gamma2,
    EtaLambda(Lambda),
}

impl NamedCocycle {
    pub fn component(&self) -> Component {
        match self {
            NamedCocycle::OmegaVir => Component::Vir,
            NamedCocycle::OmegaAbB | NamedCocycle::Iota => Component::Ab,
            _ => Component::Mix,
        }
    }

    /// The coefficient function evaluated at degree `n`.
    pub fn coeff(&self, n: i64) -> Rat {
        match self {
            NamedCocycle::OmegaVir => Rat::new(n * (n * n - 1), 12),
            NamedCocycle::Omega0A
            | NamedCocycle::OmegaAbB
            | NamedCocycle::Iota
            | NamedCocycle::Gamma1 => Rat::int(n),
            NamedCocycle::Gamma2 => Rat::int(n * n),
            NamedCocycle::OmegaMixA(lambda) | NamedCocycle::BetaLambda(lambda) => match lambda {
                Lambda::Finite(q) if n == 0 => q + &Rat::one(),
                _ => Rat::one(),
            },
            NamedCocycle::OmegaMixB(lambda) => {
                if lambda.is_zero() {
                    Rat::int(n * n)
                } else {
                    Rat::int(n)
                }
            }
            NamedCocycle::EtaLambda(lambda) => Rat::int(n) + lambda.weight_term(n),
        }
    }

    /// Checks that the cocycle makes sense on the given algebra.
    ///
    /// Family-specific cocycles insist on their family, and any carried `λ`
    /// must equal the algebra's.
    pub fn compatible_with(&self, alg: &Algebra) -> Result<()> {
        let base = alg.base();
        let mismatch = |why: &str| Err(Error::DomainMismatch(why.to_string()));
        match self {
            NamedCocycle::OmegaVir => Ok(()),
            NamedCocycle::Iota | NamedCocycle::Gamma1 | NamedCocycle::Gamma2 => match base {
                Algebra::SeriesA { .. } | Algebra::SeriesB { .. } => Ok(()),
                _ => mismatch("cocycle needs a module family with integer grading"),
            },
            NamedCocycle::Omega0A => match base {
                Algebra::SeriesA { .. } => Ok(()),
                _ => mismatch("cocycle lives on the A-family algebras"),
            },
            NamedCocycle::OmegaMixA(l) => match base {
                Algebra::SeriesA { lambda } if lambda == l => Ok(()),
                _ => mismatch("cocycle lives on the A-family algebra at its own lambda"),
            },
            NamedCocycle::OmegaAbB => match base {
                Algebra::SeriesB { .. } => Ok(()),
                _ => mismatch("cocycle lives on the B-family algebras"),
            },
            NamedCocycle::OmegaMixB(l) => match base {
                Algebra::SeriesB { lambda } if lambda == l => Ok(()),
                _ => mismatch("cocycle lives on the B-family algebra at its own lambda"),
            },
            NamedCocycle::BetaLambda(l) | NamedCocycle::EtaLambda(l) => match base {
                Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda } if lambda == l => Ok(()),
                _ => mismatch("function cocycle carries a lambda that must match the algebra"),
            },
        }
    }
}

/// A 2-cocycle usable in a central extension: either a named closed form or
/// an explicit windowed vector of degree-zero values.
///
/// A `Custom` form evaluates to zero outside its window, so extensions built
/// from one are only faithful within that window; [`crate::extension::verify_extension`]
/// restricts itself accordingly.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum CocycleForm {
    Named(NamedCocycle),
    Custom {
        component: Component,
        values: BTreeMap<i64, Rat>,
        window: i64,
    },
}

impl CocycleForm {
    pub fn component(&self) -> Component {
        match self {
            CocycleForm::Named(c) => c.component(),
            CocycleForm::Custom { component, .. } => *component,
        }
    }

    pub fn window(&self) -> Option<i64> {
        match self {
            CocycleForm::Named(_) => None,
            CocycleForm::Custom { window, .. } => Some(*window),
        }
    }

    fn coeff(&self, n: i64) -> Rat {
        match self {
            CocycleForm::Named(c) => c.coeff(n),
            CocycleForm::Custom { values, window, .. } => {
                if n.abs() > *window {
                    Rat::zero()
                } else {
                    values.get(&n).cloned().unwrap_or_else(Rat::zero)
                }
            }
        }
    }

    /// For the antisymmetric same-family components, the stored function is
    /// read off the positive side: `Ω(F_n, F_{-n}) = f(n)` for `n > 0` and
    /// `-f(-n)` for `n < 0`. Named functions are odd, so this is just `f(n)`.
    fn same_family_value(&self, n: i64) -> Rat {
        match self {
            CocycleForm::Named(_) => self.coeff(n),
            CocycleForm::Custom { .. } => {
                if n > 0 {
                    self.coeff(n)
                } else if n < 0 {
                    -self.coeff(-n)
                } else {
                    Rat::zero()
                }
            }
        }
    }

    /// Evaluates the bilinear form on a pair of basis vectors of the base
    /// algebra. Central symbols are outside every cocycle's domain.
    pub fn eval(&self, u: &Basis, v: &Basis) -> Result<Rat> {
        if u.is_central() || v.is_central() {
            return Err(Error::DomainMismatch(
                "cocycles are forms on the base algebra, not on central symbols".into(),
            ));
        }
        let (n, m) = (u.degree, v.degree);
        if n + m != 0 {
            return Ok(Rat::zero());
        }
        let value = match (&u.family, &v.family, self.component()) {
            (Family::L, Family::L, Component::Vir) => self.same_family_value(n),
            (Family::M, Family::M, Component::Ab) => self.same_family_value(n),
            (Family::L, Family::M, Component::Mix) => self.coeff(n),
            (Family::M, Family::L, Component::Mix) => -self.coeff(m),
            _ => Rat::zero(),
        };
        Ok(value)
    }
}

impl From<NamedCocycle> for CocycleForm {
    fn from(c: NamedCocycle) -> Self {
        CocycleForm::Named(c)
    }
}
