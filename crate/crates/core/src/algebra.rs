//! Algebra specifications, structure constants, and the Lie bracket.
//!
//! The base algebras are the Witt algebra `W` with `[L_n, L_m] = (m−n)L_{n+m}`
//! and its semi-direct sums with one intermediate-series module:
//!
//! - `W(a,b) = W ⋉ I(a,b)` with `[L_n, I_m] = (a + bn + m) I_{n+m}`,
//! - `W_A(λ) = W ⋉ A(λ)` with `[L_n, A_m] = (n + m + n(n+1)λ δ⁰_m) A_{n+m}`,
//! - `W_B(λ) = W ⋉ B(λ)` with `[L_n, B_m] = (m − n(n+1)λ δ⁰_{n+m}) B_{n+m}`,
//!
//! where the `n(n+1)λ` terms are read as `n²` at `λ = ∞`. Central extensions
//! attach named central generators whose bracket contribution is a cocycle
//! value; the attached generators annihilate everything.

use serde::{Deserialize, Serialize};

use crate::cocycle::CocycleForm;
use crate::element::{Basis, Element, Family};
use crate::error::{Error, Result};
use crate::rat::{Lambda, Rat};

/// A cocycle attached to a central extension under a fresh central name,
/// scaled by a coefficient.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CentralCharge {
    pub form: CocycleForm,
    pub name: String,
    pub coeff: Rat,
}

impl CentralCharge {
    pub fn new(form: impl Into<CocycleForm>, name: &str) -> Self {
        CentralCharge {
            form: form.into(),
            name: name.to_string(),
            coeff: Rat::one(),
        }
    }
}

/// Which algebra we are working in, together with its parameters.
///
/// `Extended` is only built through [`crate::extension::build_central_extension`],
/// which keeps the base flat (never itself extended) and central names unique.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum Algebra {
    Witt,
    TensorDensity {
        a: Rat,
        b: Rat,
    },
    SeriesA {
        lambda: Lambda,
    },
    SeriesB {
        lambda: Lambda,
    },
    Extended {
        base: Box<Algebra>,
        charges: Vec<CentralCharge>,
    },
}

impl Algebra {
    pub fn witt() -> Self {
        Algebra::Witt
    }

    pub fn tensor_density(a: Rat, b: Rat) -> Self {
        Algebra::TensorDensity { a, b }
    }

    pub fn series_a(lambda: Lambda) -> Self {
        Algebra::SeriesA { lambda }
    }

    pub fn series_b(lambda: Lambda) -> Self {
        Algebra::SeriesB { lambda }
    }

    /// The underlying non-extended algebra.
    pub fn base(&self) -> &Algebra {
        match self {
            Algebra::Extended { base, .. } => base,
            other => other,
        }
    }

    pub fn charges(&self) -> &[CentralCharge] {
        match self {
            Algebra::Extended { charges, .. } => charges,
            _ => &[],
        }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self, Algebra::Extended { .. })
    }

    pub fn has_module(&self) -> bool {
        !matches!(self.base(), Algebra::Witt)
    }

    pub fn lambda(&self) -> Option<&Lambda> {
        match self.base() {
            Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda } => Some(lambda),
            _ => None,
        }
    }

    /// The module letter used when printing elements.
    pub fn module_letter(&self) -> char {
        match self.base() {
            Algebra::Witt => 'X',
            Algebra::TensorDensity { .. } => 'I',
            Algebra::SeriesA { .. } => 'A',
            Algebra::SeriesB { .. } => 'B',
            Algebra::Extended { .. } => unreachable!("base is never extended"),
        }
    }

    /// The `ad_{L_0}`-eigenvalue offset of the module: the module generator
    /// of index `n` has degree `offset + n`.
    pub fn degree_offset(&self) -> Rat {
        match self.base() {
            Algebra::TensorDensity { a, .. } => a.clone(),
            _ => Rat::zero(),
        }
    }

    /// For `W(a,b)` with `a` a nonzero integer the module is isomorphic to
    /// the shifted `I(0,b)`; callers may want to surface this.
    pub fn normalization_note(&self) -> Option<String> {
        match self.base() {
            Algebra::TensorDensity { a, b } if a.is_integer() && !a.is_zero() => Some(format!(
                "W({a},{b}): a is a nonzero integer; I({a},{b}) is isomorphic to I(0,{b}) by an index shift"
            )),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Algebra::Witt => "W".to_string(),
            Algebra::TensorDensity { a, b } => format!("W({a},{b})"),
            Algebra::SeriesA { lambda } => format!("W_A({lambda})"),
            Algebra::SeriesB { lambda } => format!("W_B({lambda})"),
            Algebra::Extended { base, charges } => {
                let names: Vec<_> = charges.iter().map(|c| format!("c[{}]", c.name)).collect();
                format!("{} + {}", base.name(), names.join(" + "))
            }
        }
    }

    /// The structure constant `ω(n, m)`: the coefficient of the module
    /// generator of index `n+m` in `[L_n, X_m]`.
    pub fn weight(&self, n: i64, m: i64) -> Result<Rat> {
        match self.base() {
            Algebra::Witt => Err(Error::NoModuleFamily),
            Algebra::TensorDensity { a, b } => Ok(a + &(Rat::int(n) * b) + Rat::int(m)),
            Algebra::SeriesA { lambda } => {
                let mut w = Rat::int(n + m);
                if m == 0 {
                    w += &lambda.weight_term(n);
                }
                Ok(w)
            }
            Algebra::SeriesB { lambda } => {
                let mut w = Rat::int(m);
                if n + m == 0 {
                    w -= &lambda.weight_term(n);
                }
                Ok(w)
            }
            Algebra::Extended { .. } => unreachable!("base is never extended"),
        }
    }

    /// Checks a basis symbol is meaningful in this algebra.
    pub fn validate_basis(&self, b: &Basis) -> Result<()> {
        match &b.family {
            Family::L => Ok(()),
            Family::M => {
                if self.has_module() {
                    Ok(())
                } else {
                    Err(Error::ForeignBasisSymbol(b.render_plain()))
                }
            }
            Family::C(name) => {
                if self.charges().iter().any(|c| &c.name == name) {
                    Ok(())
                } else {
                    Err(Error::ForeignBasisSymbol(b.render_plain()))
                }
            }
        }
    }

    /// Bracket of two basis symbols.
    pub fn bracket_basis(&self, u: &Basis, v: &Basis) -> Result<Element> {
        self.validate_basis(u)?;
        self.validate_basis(v)?;
        if u.is_central() || v.is_central() {
            return Ok(Element::zero());
        }
        let (n, m) = (u.degree, v.degree);
        let mut out = match (&u.family, &v.family) {
            (Family::L, Family::L) => Element::term(Basis::el(n + m), Rat::int(m - n)),
            (Family::L, Family::M) => Element::term(Basis::md(n + m), self.weight(n, m)?),
            (Family::M, Family::L) => Element::term(Basis::md(n + m), -self.weight(m, n)?),
            (Family::M, Family::M) => Element::zero(),
            _ => unreachable!(),
        };
        for charge in self.charges() {
            let value = charge.form.eval(u, v)?;
            out.add_term(Basis::central(&charge.name), value * &charge.coeff);
        }
        Ok(out)
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (u, cu) in x.iter() {
            for (v, cv) in y.iter() {
                let b = self.bracket_basis(u, v)?;
                let k = cu * cv;
                for (w, cw) in b.iter() {
                    out.add_term(w.clone(), cw * &k);
                }
            }
        }
        Ok(out)
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`; zero exactly when the Jacobi
    /// identity holds on the triple.
    pub fn jacobi_defect(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let a = self.bracket(&self.bracket(x, y)?, z)?;
        let b = self.bracket(&self.bracket(y, z)?, x)?;
        let c = self.bracket(&self.bracket(z, x)?, y)?;
        Ok(a.add(&b).add(&c))
    }

    /// All non-central basis symbols with index in `[-n, n]`.
    pub fn basis_window(&self, n: i64) -> Vec<Basis> {
        let mut out = Vec::new();
        for i in -n..=n {
            out.push(Basis::el(i));
        }
        if self.has_module() {
            for i in -n..=n {
                out.push(Basis::md(i));
            }
        }
        out
    }

    pub fn render(&self, x: &Element) -> String {
        x.render(self.module_letter())
    }
}

impl Basis {
    fn render_plain(&self) -> String {
        match &self.family {
            Family::L => format!("L[{}]", self.degree),
            Family::M => format!("X[{}]", self.degree),
            Family::C(name) => format!("c[{name}]"),
        }
    }
}

/// Serialized algebra selector used in reports.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AlgebraId {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Lambda>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Rat>,
}

impl From<&Algebra> for AlgebraId {
    fn from(alg: &Algebra) -> Self {
        match alg.base() {
            Algebra::Witt => AlgebraId {
                family: "witt".into(),
                lambda: None,
                a: None,
                b: None,
            },
            Algebra::TensorDensity { a, b } => AlgebraId {
                family: "wab".into(),
                lambda: None,
                a: Some(a.clone()),
                b: Some(b.clone()),
            },
            Algebra::SeriesA { lambda } => AlgebraId {
                family: "wa".into(),
                lambda: Some(lambda.clone()),
                a: None,
                b: None,
            },
            Algebra::SeriesB { lambda } => AlgebraId {
                family: "wb".into(),
                lambda: Some(lambda.clone()),
                a: None,
                b: None,
            },
            Algebra::Extended { .. } => unreachable!("base is never extended"),
        }
    }
}

/// The module homomorphism `B(λ) → A(λ)` sending the index-`n` generator to
/// `n` times the index-`n` generator; its kernel is the span of index zero.
pub fn adjoint_hom_f(n: i64) -> Element {
    Element::term(Basis::md(n), Rat::int(n))
}

/// Checks `f(L_n · B_m) = L_n · f(B_m)` for all `|n|, |m|, |n+m| <= window`,
/// returning the offending triples `(n, m, defect)`.
pub fn check_f_equivariance(lambda: &Lambda, window: i64) -> Vec<(i64, i64, Element)> {
    let wa = Algebra::series_a(lambda.clone());
    let wb = Algebra::series_b(lambda.clone());
    let mut defects = Vec::new();
    for n in -window..=window {
        for m in -window..=window {
            if (n + m).abs() > window {
                continue;
            }
            // f(L_n · B_m) where L_n · B_m = ω_B(n,m) B_{n+m}
            let lhs = adjoint_hom_f(n + m).scale(&wb.weight(n, m).unwrap());
            // L_n · f(B_m) computed inside W_A(λ)
            let rhs = wa
                .bracket(&Element::basis(Basis::el(n)), &adjoint_hom_f(m))
                .unwrap();
            let defect = lhs.sub(&rhs);
            if !defect.is_zero() {
                defects.push((n, m, defect));
            }
        }
    }
    defects
}
