//! Verification suites: identity checks batched per algebra instance.
//!
//! Each function returns deterministic [`Check`]s with the first
//! counterexample attached on failure; callers assemble them into reports.

use rand::Rng;

use crate::algebra::{check_f_equivariance, Algebra};
use crate::cocycle::NamedCocycle;
use crate::cohomology::{is_cocycle, Window};
use crate::element::{Basis, Element, Family};
use crate::error::Result;
use crate::extension::{self, build_central_extension, CentralCharge};
use crate::leibniz::{constraints_leibniz, theta_a_bilinear_vector};
use crate::linsolve::SubspaceBasis;
use crate::morphisms::{
    apply_aut, check_aut, check_der, compose_auts, derivation_constraints,
    derivation_window_vector, inner_derivation_space, inner_identity_check, inverse_aut,
    sample_aut_spec, DerGen, DerSpec, ETA_KIND,
};
use crate::rat::{Lambda, Rat};
use crate::report::Check;

fn fmt_triple(alg: &Algebra, x: &Basis, y: &Basis, z: &Basis, defect: &Element) -> String {
    format!(
        "({}, {}, {}) -> {}",
        alg.render(&Element::basis(x.clone())),
        alg.render(&Element::basis(y.clone())),
        alg.render(&Element::basis(z.clone())),
        alg.render(defect),
    )
}

/// Jacobi identity over every basis triple in the window.
///
/// With `inject_fault` the structure constant `ω(1,2)` is bumped by one
/// before the sweep; the resulting defect exercises the failure path.
pub fn jacobi_check(alg: &Algebra, w: Window, inject_fault: bool) -> Result<Check> {
    let name = format!("jacobi[{}]", alg.name());
    let perturbed = |u: &Basis, v: &Basis| -> Result<Element> {
        let mut e = alg.bracket_basis(u, v)?;
        if inject_fault {
            if (u, v) == (&Basis::el(1), &Basis::md(2)) {
                e.add_term(Basis::md(3), Rat::one());
            } else if (u, v) == (&Basis::md(2), &Basis::el(1)) {
                e.add_term(Basis::md(3), Rat::int(-1));
            }
        }
        Ok(e)
    };
    let basis = alg.basis_window(w.n());
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let mut defect = Element::zero();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = perturbed(a, b)?;
                    for (t, k) in inner.iter() {
                        let outer = perturbed(t, c)?;
                        for (t2, k2) in outer.iter() {
                            defect.add_term(t2.clone(), k2 * k);
                        }
                    }
                }
                if !defect.is_zero() {
                    return Ok(Check::fail(name, fmt_triple(alg, x, y, z, &defect)));
                }
            }
        }
    }
    Ok(Check::pass(name))
}

/// The named cocycles that live on this algebra.
pub fn named_cocycles_for(alg: &Algebra) -> Vec<(&'static str, NamedCocycle)> {
    match alg.base() {
        Algebra::Witt => vec![("omega_vir", NamedCocycle::OmegaVir)],
        Algebra::SeriesA { lambda } => {
            let mut named = vec![
                ("omega_vir", NamedCocycle::OmegaVir),
                ("omega_mix_a", NamedCocycle::OmegaMixA(lambda.clone())),
                ("beta_lambda", NamedCocycle::BetaLambda(lambda.clone())),
            ];
            if lambda.is_zero() {
                // the linear mixing function is a cocycle only at zero
                named.push(("omega_0_a", NamedCocycle::Omega0A));
            }
            named
        }
        Algebra::SeriesB { lambda } => vec![
            ("omega_vir", NamedCocycle::OmegaVir),
            ("omega_ab_b", NamedCocycle::OmegaAbB),
            ("omega_mix_b", NamedCocycle::OmegaMixB(lambda.clone())),
            ("iota", NamedCocycle::Iota),
            ("gamma_1", NamedCocycle::Gamma1),
            ("gamma_2", NamedCocycle::Gamma2),
            ("eta_lambda", NamedCocycle::EtaLambda(lambda.clone())),
        ],
        _ => Vec::new(),
    }
}

/// Cyclic-identity soundness of every named cocycle on its home algebra.
pub fn cocycle_checks(alg: &Algebra, w: Window) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (tag, cocycle) in named_cocycles_for(alg) {
        let name = format!("cocycle[{}][{tag}]", alg.name());
        let defects = is_cocycle(alg, &cocycle.into(), w)?;
        match defects.first() {
            None => checks.push(Check::pass(name)),
            Some(d) => checks.push(Check::fail(
                name,
                fmt_triple(alg, &d.x, &d.y, &d.z, &Element::zero()),
            )),
        }
    }
    Ok(checks)
}

/// Group law: closed-form composition and inversion agree with pointwise
/// application on every basis vector of the window, for sampled parameter
/// tuples; each sample is also an automorphism.
pub fn aut_law_checks(
    alg: &Algebra,
    w: Window,
    rng: &mut impl Rng,
    tuples: usize,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let basis = alg.basis_window(w.n());
    let mut law_ok = true;
    let mut inverse_ok = true;
    let mut hom_ok = true;
    let mut law_bad = String::new();
    let mut inverse_bad = String::new();
    let mut hom_bad = String::new();
    for k in 0..tuples {
        let s1 = sample_aut_spec(alg, rng);
        let s2 = sample_aut_spec(alg, rng);
        if hom_ok {
            if let Some((u, v)) = check_aut(&s1, alg, w)?.first() {
                hom_ok = false;
                hom_bad = format!("tuple {k}: bracket broken at ({u:?}, {v:?})");
            }
        }
        if law_ok {
            let composed = compose_auts(&s1, &s2, alg)?;
            for b in &basis {
                let x = Element::basis(b.clone());
                let direct = apply_aut(&s1, alg, &apply_aut(&s2, alg, &x)?)?;
                if apply_aut(&composed, alg, &x)? != direct {
                    law_ok = false;
                    law_bad = format!("tuple {k}: composite differs at {}", alg.render(&x));
                    break;
                }
            }
        }
        if inverse_ok {
            let inv = inverse_aut(&s1, alg)?;
            if !compose_auts(&s1, &inv, alg)?.is_identity()
                || !compose_auts(&inv, &s1, alg)?.is_identity()
            {
                inverse_ok = false;
                inverse_bad = format!("tuple {k}: inverse does not cancel");
            }
        }
    }
    let id = alg.name();
    checks.push(Check::of(format!("aut_hom[{id}]"), hom_ok, hom_bad));
    checks.push(Check::of(format!("aut_compose[{id}]"), law_ok, law_bad));
    checks.push(Check::of(
        format!("aut_inverse[{id}]"),
        inverse_ok,
        inverse_bad,
    ));
    Ok(checks)
}

/// The stated inner-automorphism identities on the A-family at sampled
/// parameters.
pub fn inner_identity_checks(w: Window, samples: &[Rat]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for lambda in [Lambda::int(2), Lambda::Infinity] {
        let ok = inner_identity_check(&lambda, w, samples)?;
        checks.push(Check::of(
            format!("inner_identity[W_A({lambda})]"),
            ok,
            "exponential of the degree-zero adjoint differs from the phi/psi composite",
        ));
    }
    Ok(checks)
}

fn named_derivations_for(alg: &Algebra) -> Vec<(&'static str, DerGen)> {
    match alg.base() {
        Algebra::SeriesA { lambda } => {
            let d_lambda = if lambda.is_zero() {
                DerGen::PartialA
            } else {
                DerGen::DeltaA
            };
            vec![
                ("d_ab", DerGen::DAb),
                ("d_lambda", d_lambda),
                ("delta_a", DerGen::DeltaA),
                ("partial_a", DerGen::PartialA),
            ]
        }
        Algebra::SeriesB { lambda } => {
            let mut named = vec![("d_ab", DerGen::DAb), ("d_lambda", DerGen::DB)];
            if lambda.is_zero() {
                named.push(("partial_b0", DerGen::PartialB0));
            }
            named
        }
        _ => Vec::new(),
    }
}

/// Derivation suite: the named directions satisfy the Leibniz rule, the
/// solver kernel has no module-to-Witt component, and inner plus named
/// directions span the whole kernel.
pub fn derivation_checks(alg: &Algebra, w: Window) -> Result<Vec<Check>> {
    let id = alg.name();
    let mut checks = Vec::new();

    let mut rule_ok = true;
    let mut rule_bad = String::new();
    for (tag, gen) in named_derivations_for(alg) {
        let defects = check_der(&DerSpec::single(gen), alg, w)?;
        if let Some((u, v)) = defects.first() {
            rule_ok = false;
            rule_bad = format!("{tag} breaks the Leibniz rule at ({u:?}, {v:?})");
            break;
        }
    }
    checks.push(Check::of(
        format!("der_leibniz_rule[{id}]"),
        rule_ok,
        rule_bad,
    ));

    let kernel = derivation_constraints(alg, w)?.kernel();
    let eta_free = kernel
        .vectors()
        .iter()
        .all(|v| v.keys().all(|var| var.kind != ETA_KIND));
    checks.push(Check::of(
        format!("der_eta_vanishes[{id}]"),
        eta_free,
        "a kernel vector maps the module onto the Witt side",
    ));

    let inner = inner_derivation_space(alg, w)?;
    let mut gens: Vec<_> = inner.vectors().to_vec();
    let mut members_ok = true;
    for (tag, gen) in named_derivations_for(alg) {
        let v = derivation_window_vector(&DerSpec::single(gen), alg, w)?;
        if !kernel.in_span(&v) {
            members_ok = false;
            checks.push(Check::fail(
                format!("der_named_in_kernel[{id}]"),
                format!("{tag} is not a solver solution"),
            ));
            break;
        }
        gens.push(v);
    }
    if members_ok {
        checks.push(Check::pass(format!("der_named_in_kernel[{id}]")));
        let span = SubspaceBasis::from_vectors(kernel.vars().clone(), gens);
        checks.push(Check::of(
            format!("der_span_matches[{id}]"),
            span.dim() == kernel.dim(),
            format!(
                "inner + named span {} of kernel dim {}",
                span.dim(),
                kernel.dim()
            ),
        ));
    }
    Ok(checks)
}

/// Builds and verifies the named central extensions of the algebra.
pub fn extension_checks(alg: &Algebra, w: Window) -> Result<Vec<Check>> {
    let ext = match alg.base() {
        Algebra::Witt => extension::virasoro(),
        Algebra::SeriesA { lambda } => extension::vir_a(lambda.clone()),
        Algebra::SeriesB { lambda } => extension::vir_b(lambda.clone()),
        _ => return Ok(Vec::new()),
    };
    let name = format!("extension[{}]", ext.name());
    let defects = crate::extension::verify_extension(&ext, w)?;
    Ok(vec![Check::of(
        name,
        defects.is_empty(),
        format!("{:?}", defects.first()),
    )])
}

/// Attaching a non-cocycle must break the Jacobi identity.
pub fn extension_negative_control(w: Window) -> Result<Check> {
    let values = w.indices().map(|k| (k, Rat::int(k * k * k))).collect();
    let bad = crate::cocycle::CocycleForm::Custom {
        component: crate::cocycle::Component::Mix,
        values,
        window: w.n(),
    };
    let alg = build_central_extension(
        Algebra::series_a(Lambda::int(1)),
        vec![CentralCharge {
            form: bad,
            name: "bad".into(),
            coeff: Rat::one(),
        }],
    )?;
    let defects = crate::extension::verify_extension(&alg, w)?;
    Ok(Check::of(
        "extension_negative_control",
        !defects.is_empty(),
        "a non-cocycle extension passed the Jacobi sweep",
    ))
}

/// `f(L_n · B_m) = L_n · f(B_m)` over the window.
pub fn module_hom_check(lambda: &Lambda, w: Window) -> Check {
    let defects = check_f_equivariance(lambda, w.n());
    Check::of(
        format!("module_hom[lambda={lambda}]"),
        defects.is_empty(),
        defects
            .first()
            .map(|(n, m, d)| format!("(n, m) = ({n}, {m}): defect {d}"))
            .unwrap_or_default(),
    )
}

/// Bracket-reachability witness: on the B-family every small-index basis
/// vector is a bracket image; on the A-family the degree-zero module symbol
/// is not.
pub fn perfectness_check(alg: &Algebra, w: Window) -> Result<Check> {
    let name = format!("perfectness[{}]", alg.name());
    let reach = alg.basis_window(w.n());
    let hit = |target: &Basis| -> Result<bool> {
        for u in &reach {
            for v in &reach {
                if !alg.bracket_basis(u, v)?.coeff(target).is_zero() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    };
    match alg.base() {
        Algebra::SeriesB { .. } => {
            for target in alg.basis_window(w.n() - 2) {
                if !hit(&target)? {
                    return Ok(Check::fail(
                        name,
                        format!("{target:?} is not a bracket image"),
                    ));
                }
            }
            Ok(Check::pass(name))
        }
        Algebra::SeriesA { .. } => {
            let a0 = Basis {
                family: Family::M,
                degree: 0,
            };
            Ok(Check::of(
                name,
                !hit(&a0)?,
                "the degree-zero module symbol is a bracket image",
            ))
        }
        _ => Ok(Check::pass(name)),
    }
}

/// `θ_A` is a Leibniz cocycle on the A-family but is independent of the
/// antisymmetric classes: a direct residual check.
pub fn theta_a_check(lambda: &Lambda, w: Window) -> Result<Check> {
    let alg = Algebra::series_a(lambda.clone());
    let sys = constraints_leibniz(&alg, w)?;
    Ok(Check::of(
        format!("theta_a_leibniz[W_A({lambda})]"),
        sys.satisfied_by(&theta_a_bilinear_vector()),
        "the symmetric degree-zero pairing fails the Leibniz identity",
    ))
}
