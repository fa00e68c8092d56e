//! Central extensions assembled from selected 2-cocycles.
//!
//! An extension attaches central generators `c[name]` to a base algebra and
//! adds `Σ coeff·Ω(x,y)·c[name]` to every bracket. Attaching a vector from
//! the computed cocycle kernel yields a Lie algebra; attaching anything else
//! breaks the Jacobi identity, which [`verify_extension`] detects.

use crate::algebra::Algebra;
pub use crate::algebra::CentralCharge;
use crate::cocycle::{CocycleForm, NamedCocycle};
use crate::cohomology::Window;
use crate::element::{Basis, Element};
use crate::error::{Error, Result};
use crate::rat::Lambda;

/// The cocycles to attach, with their central names and coefficients.
pub type CocycleSelection = Vec<CentralCharge>;

/// Attaches the selected cocycles to the base algebra under fresh central
/// names. Extending an extension appends to its charge list.
pub fn build_central_extension(base: Algebra, selection: CocycleSelection) -> Result<Algebra> {
    let (core, mut charges) = match base {
        Algebra::Extended { base, charges } => (*base, charges),
        other => (other, Vec::new()),
    };
    for charge in selection {
        if charges.iter().any(|c| c.name == charge.name) {
            return Err(Error::DuplicateCentralName(charge.name));
        }
        if let CocycleForm::Named(named) = &charge.form {
            named.compatible_with(&core)?;
        } else if !core.degree_offset().is_zero()
            && charge.form.component() != crate::cocycle::Component::Vir
        {
            return Err(Error::DomainMismatch(
                "explicit cocycle vectors pair indices n with -n; this module grading is offset"
                    .into(),
            ));
        }
        charges.push(charge);
    }
    Ok(Algebra::Extended {
        base: Box::new(core),
        charges,
    })
}

/// The Virasoro algebra: the Witt algebra extended by the degree cubic
/// cocycle under the central name `vir`.
pub fn virasoro() -> Algebra {
    build_central_extension(
        Algebra::witt(),
        vec![CentralCharge::new(NamedCocycle::OmegaVir, "vir")],
    )
    .expect("fresh names")
}

/// The full central extension of the A-family algebra at `λ`: the Virasoro
/// charge plus the mixing charge.
pub fn vir_a(lambda: Lambda) -> Algebra {
    build_central_extension(
        Algebra::series_a(lambda.clone()),
        vec![
            CentralCharge::new(NamedCocycle::OmegaVir, "vir"),
            CentralCharge::new(NamedCocycle::OmegaMixA(lambda), "mix_A"),
        ],
    )
    .expect("fresh names")
}

/// The universal central extension of the B-family algebra at `λ`: Virasoro,
/// abelian, and mixing charges.
pub fn vir_b(lambda: Lambda) -> Algebra {
    build_central_extension(
        Algebra::series_b(lambda.clone()),
        vec![
            CentralCharge::new(NamedCocycle::OmegaVir, "vir"),
            CentralCharge::new(NamedCocycle::OmegaAbB, "ab_B"),
            CentralCharge::new(NamedCocycle::OmegaMixB(lambda), "mix_B"),
        ],
    )
    .expect("fresh names")
}

/// A failure found while verifying an extension.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtensionDefect {
    Jacobi {
        x: Basis,
        y: Basis,
        z: Basis,
        defect: Element,
    },
    NotCentral {
        name: String,
        against: Basis,
    },
}

/// Checks the Jacobi identity on all base-family triples in the window and
/// that every attached generator is central. Windowed cocycle vectors cap
/// the check at their own window.
pub fn verify_extension(alg: &Algebra, w: Window) -> Result<Vec<ExtensionDefect>> {
    if !alg.is_extended() {
        return Err(Error::DomainMismatch(
            "verify_extension expects an extended algebra".into(),
        ));
    }
    let n = alg
        .charges()
        .iter()
        .filter_map(|c| c.form.window())
        .fold(w.n(), i64::min);
    let w = Window::new(n);

    let mut defects = Vec::new();
    let basis = alg.basis_window(w.n());

    for charge in alg.charges() {
        let c = Element::basis(Basis::central(&charge.name));
        for u in &basis {
            let ub = Element::basis(u.clone());
            if !alg.bracket(&c, &ub)?.is_zero() || !alg.bracket(&ub, &c)?.is_zero() {
                defects.push(ExtensionDefect::NotCentral {
                    name: charge.name.clone(),
                    against: u.clone(),
                });
            }
        }
    }

    for x in &basis {
        for y in &basis {
            for z in &basis {
                let defect = alg.jacobi_defect(
                    &Element::basis(x.clone()),
                    &Element::basis(y.clone()),
                    &Element::basis(z.clone()),
                )?;
                if !defect.is_zero() {
                    defects.push(ExtensionDefect::Jacobi {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        defect,
                    });
                }
            }
        }
    }
    Ok(defects)
}
