//! Single-instance solves: one algebra, one window, one kernel or quotient.

use serde::Serialize;

use wittx::algebra::AlgebraId;
use wittx::cocycle::NamedCocycle;
use wittx::cohomology::{
    constraints_abelian, constraints_mixing, constraints_virasoro, h2_dimensions,
    named_window_vector, Window,
};
use wittx::leibniz::{constraints_invariant_form, exact_sequence_crosscheck, theta_a_sym_vector};
use wittx::morphisms::{
    derivation_constraints, derivation_window_vector, h1_adjoint_dimension, inner_derivation_space,
    DerGen, DerSpec,
};
use wittx::report::{BasisForm, H2Report, Hl2Report};
use wittx::{Algebra, SparseVec, SubspaceBasis};

#[derive(Serialize)]
pub struct SolveRecord {
    #[serde(flatten)]
    pub algebra: AlgebraId,
    pub n: i64,
    pub what: String,
    pub dim: i64,
    pub basis: Vec<BasisForm>,
}

fn vector_form(v: &SparseVec) -> BasisForm {
    BasisForm::Vector(
        v.iter()
            .map(|(var, c)| (var.to_string(), c.clone()))
            .collect(),
    )
}

/// Writes a kernel basis as named cocycle functions where the names span it,
/// with any remainder in reduced vector form.
fn describe_basis(kernel: &SubspaceBasis, candidates: &[(&str, SparseVec)]) -> Vec<BasisForm> {
    let mut forms = Vec::new();
    let mut gens: Vec<SparseVec> = Vec::new();
    for (name, vec) in candidates {
        if vec.is_empty() || !kernel.in_span(vec) {
            continue;
        }
        let span = SubspaceBasis::from_vectors(kernel.vars().clone(), gens.clone());
        if !span.in_span(vec) {
            forms.push(BasisForm::Named(name.to_string()));
            gens.push(vec.clone());
        }
    }
    for v in kernel.vectors() {
        let span = SubspaceBasis::from_vectors(kernel.vars().clone(), gens.clone());
        let rest = span.reduce(v);
        if !rest.is_empty() {
            forms.push(vector_form(&rest));
            gens.push(rest);
        }
    }
    forms
}

fn mixing_candidates(alg: &Algebra, w: Window) -> Vec<(&'static str, SparseVec)> {
    match alg.base() {
        Algebra::SeriesA { lambda } => vec![
            (
                "beta_lambda",
                named_window_vector(&NamedCocycle::BetaLambda(lambda.clone()), alg, w),
            ),
            ("iota", named_window_vector(&NamedCocycle::Gamma1, alg, w)),
        ],
        Algebra::SeriesB { lambda } => vec![
            (
                "gamma_1",
                named_window_vector(&NamedCocycle::Gamma1, alg, w),
            ),
            (
                "gamma_2",
                named_window_vector(&NamedCocycle::Gamma2, alg, w),
            ),
            (
                "eta_lambda",
                named_window_vector(&NamedCocycle::EtaLambda(lambda.clone()), alg, w),
            ),
        ],
        _ => Vec::new(),
    }
}

fn ab_candidates(alg: &Algebra, w: Window) -> Vec<(&'static str, SparseVec)> {
    match alg.base() {
        Algebra::SeriesA { .. } | Algebra::SeriesB { .. } => {
            vec![("iota", named_window_vector(&NamedCocycle::Iota, alg, w))]
        }
        _ => Vec::new(),
    }
}

fn h1_candidates(alg: &Algebra, w: Window) -> Result<Vec<(&'static str, SparseVec)>, String> {
    let mut named: Vec<(&'static str, DerGen)> = vec![("d_ab", DerGen::DAb)];
    match alg.base() {
        Algebra::SeriesA { .. } => {
            named.push(("delta_a", DerGen::DeltaA));
            named.push(("partial_a", DerGen::PartialA));
        }
        Algebra::SeriesB { lambda } => {
            named.push(("d_b", DerGen::DB));
            if lambda.is_zero() {
                named.push(("partial_b0", DerGen::PartialB0));
            }
        }
        _ => {}
    }
    let mut out = Vec::new();
    for (tag, gen) in named {
        out.push((
            tag,
            derivation_window_vector(&DerSpec::single(gen), alg, w).map_err(|e| e.to_string())?,
        ));
    }
    let inner = inner_derivation_space(alg, w).map_err(|e| e.to_string())?;
    let mut inner_vecs = inner.vectors().iter();
    if let Some(v) = inner_vecs.next() {
        out.push(("ad_l0", v.clone()));
    }
    if let Some(v) = inner_vecs.next() {
        out.push(("ad_x0", v.clone()));
    }
    Ok(out)
}

/// Solves the requested problem and prints one JSON record.
pub fn run(what: &str, alg: &Algebra, window: i64) -> Result<(), String> {
    let w = Window::new(window);
    let id = AlgebraId::from(alg);
    if let Some(note) = alg.normalization_note() {
        eprintln!("warning: {note}");
    }
    let err = |e: wittx::Error| e.to_string();
    let text = match what {
        "h2" => {
            let dims = h2_dimensions(alg, w).map_err(err)?;
            let mut basis = Vec::new();
            let vir = constraints_virasoro(w).map_err(err)?.kernel();
            basis.extend(describe_basis(
                &vir,
                &[(
                    "omega_vir",
                    named_window_vector(&NamedCocycle::OmegaVir, alg, w),
                )],
            ));
            if alg.has_module() {
                let ab = constraints_abelian(alg, w).map_err(err)?.kernel();
                basis.extend(describe_basis(&ab, &ab_candidates(alg, w)));
                let mix = constraints_mixing(alg, w).map_err(err)?.kernel();
                basis.extend(describe_basis(&mix, &mixing_candidates(alg, w)));
            }
            let report = H2Report {
                algebra: id,
                n: window,
                dims,
                basis,
            };
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        "hl2" => {
            let crosscheck = exact_sequence_crosscheck(alg, w).map_err(err)?;
            let report = Hl2Report::from_crosscheck(id, window, &crosscheck);
            serde_json::to_string_pretty(&report).expect("serializable")
        }
        "inv" => {
            let kernel = constraints_invariant_form(alg, w).map_err(err)?.kernel();
            let record = SolveRecord {
                algebra: id,
                n: window,
                what: what.into(),
                dim: kernel.dim() as i64,
                basis: describe_basis(&kernel, &[("theta_a", theta_a_sym_vector())]),
            };
            serde_json::to_string_pretty(&record).expect("serializable")
        }
        "h1" => {
            let dim = h1_adjoint_dimension(alg, w).map_err(err)?;
            let kernel = derivation_constraints(alg, w).map_err(err)?.kernel();
            let record = SolveRecord {
                algebra: id,
                n: window,
                what: what.into(),
                dim,
                basis: describe_basis(&kernel, &h1_candidates(alg, w)?),
            };
            serde_json::to_string_pretty(&record).expect("serializable")
        }
        "abelian" => {
            let kernel = constraints_abelian(alg, w).map_err(err)?.kernel();
            let record = SolveRecord {
                algebra: id,
                n: window,
                what: what.into(),
                dim: kernel.dim() as i64,
                basis: describe_basis(&kernel, &ab_candidates(alg, w)),
            };
            serde_json::to_string_pretty(&record).expect("serializable")
        }
        "mixing" => {
            let kernel = constraints_mixing(alg, w).map_err(err)?.kernel();
            let record = SolveRecord {
                algebra: id,
                n: window,
                what: what.into(),
                dim: kernel.dim() as i64,
                basis: describe_basis(&kernel, &mixing_candidates(alg, w)),
            };
            serde_json::to_string_pretty(&record).expect("serializable")
        }
        other => {
            return Err(format!(
                "unknown solve target {other:?}; expected h2|hl2|inv|h1|abelian|mixing"
            ))
        }
    };
    println!("{text}");
    Ok(())
}
