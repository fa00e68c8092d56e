//! Windowed degree-zero 2-cochain machinery for `H²`.
//!
//! The algebras here are internally graded by `ad_{L_0}`, which concentrates
//! scalar cohomology in degree zero: a 2-cocycle may be assumed to vanish on
//! every pair of basis vectors whose degrees do not sum to zero. The
//! remaining unknowns are one scalar per degree-zero pair:
//!
//! - `v(n) = Ω(L_n, L_{−n})` for `1 ≤ n ≤ N` (Virasoro component),
//! - `ab(n) = Ω(X_n, X_{−n−t})` on the canonical side of the pairing
//!   (abelian component),
//! - `mix(n) = Ω(L_n, X_{−n−s})` for `−N ≤ n ≤ N` (mixing component),
//!
//! where `s` and `t` account for the `ad_{L_0}`-eigenvalue offset of the
//! module (`s = a`, `t = 2a` on `W(a,b)`; both zero on `W_X(λ)`; the
//! corresponding component is empty when the offset is not an integer).
//! Antisymmetry is baked into the variables rather than added as rows:
//! `v(0)` and the self-paired abelian unknown do not exist, and negative-side
//! values are eliminated at generation time.
//!
//! Constraint rows are instances of the cyclic cocycle identity
//! `Ω(x,[y,z]) + Ω(y,[z,x]) + Ω(z,[x,y]) = 0` on basis triples of total
//! degree zero. An instance is included only if every basis index it
//! mentions lies in `[-N, N]`.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::cocycle::{CocycleForm, Component, NamedCocycle};
use crate::element::{Basis, Family};
use crate::error::{Error, Result};
use crate::linsolve::{add_scaled, LinearSystem, SparseVec, SubspaceBasis, VarId};
use crate::rat::Rat;

pub const VIR_KIND: &str = "v";
pub const AB_KIND: &str = "ab";
pub const MIX_KIND: &str = "mix";

/// The index window `[-N, N]` over which the infinite systems are truncated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    n: i64,
}

impl Window {
    pub fn new(n: i64) -> Self {
        assert!(n >= 1, "window must be positive");
        Window { n }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn contains(&self, index: i64) -> bool {
        index.abs() <= self.n
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        -self.n..=self.n
    }
}

/// Degree-zero pairing shifts of the module family against `L`.
#[derive(Clone, Copy, Debug)]
pub struct Pairing {
    /// `Ω(L_n, X_{−n−s})` is the degree-zero mixing pair; `None` when the
    /// module offset is not an integer (no mixing pairs at all).
    pub mix_shift: Option<i64>,
    /// `Ω(X_n, X_{−n−t})` is the degree-zero abelian pair; `None` when twice
    /// the offset is not an integer.
    pub ab_shift: Option<i64>,
}

impl Pairing {
    pub fn of(alg: &Algebra) -> Self {
        if !alg.has_module() {
            return Pairing {
                mix_shift: None,
                ab_shift: None,
            };
        }
        let offset = alg.degree_offset();
        let double = &offset + &offset;
        Pairing {
            mix_shift: offset.as_i64(),
            ab_shift: double.as_i64(),
        }
    }

    fn mix_var(&self, w: Window, n: i64) -> Option<VarId> {
        let s = self.mix_shift?;
        (w.contains(n) && w.contains(-n - s)).then(|| VarId::new(MIX_KIND, n))
    }

    /// Canonical abelian variable: the pair `(X_n, X_{−n−t})` read from the
    /// side with `2n + t > 0`; the self-paired index carries no unknown.
    fn ab_var(&self, w: Window, n: i64) -> Option<VarId> {
        let t = self.ab_shift?;
        (2 * n + t > 0 && w.contains(n) && w.contains(-n - t)).then(|| VarId::new(AB_KIND, n))
    }

    pub fn mix_vars(&self, w: Window) -> Vec<VarId> {
        w.indices().filter_map(|n| self.mix_var(w, n)).collect()
    }

    pub fn ab_vars(&self, w: Window) -> Vec<VarId> {
        (-2 * w.n()..=2 * w.n())
            .filter_map(|n| self.ab_var(w, n))
            .collect()
    }
}

fn vir_vars(w: Window) -> Vec<VarId> {
    (1..=w.n()).map(|n| VarId::new(VIR_KIND, n)).collect()
}

/// `Ω(u, v)` as a linear expression in the cochain unknowns. `None` means
/// the pair mentions a variable outside the window; the caller drops the
/// whole constraint instance.
fn pair_value(p: &Pairing, w: Window, u: &Basis, v: &Basis) -> Option<SparseVec> {
    let mut out = SparseVec::new();
    let (n, m) = (u.degree, v.degree);
    match (&u.family, &v.family) {
        (Family::L, Family::L) => {
            if n + m == 0 && n != 0 {
                if !w.contains(n) {
                    return None;
                }
                out.insert(VarId::new(VIR_KIND, n.abs()), Rat::int(n.signum()));
            }
        }
        (Family::L, Family::M) => {
            if let Some(s) = p.mix_shift {
                if m == -n - s {
                    out.insert(p.mix_var(w, n)?, Rat::one());
                }
            }
        }
        (Family::M, Family::L) => {
            if let Some(s) = p.mix_shift {
                if n == -m - s {
                    out.insert(p.mix_var(w, m)?, -Rat::one());
                }
            }
        }
        (Family::M, Family::M) => {
            if let Some(t) = p.ab_shift {
                if m == -n - t && 2 * n + t != 0 {
                    if 2 * n + t > 0 {
                        out.insert(p.ab_var(w, n)?, Rat::one());
                    } else {
                        out.insert(p.ab_var(w, -n - t)?, -Rat::one());
                    }
                }
            }
        }
        _ => unreachable!("constraint triples use base families only"),
    }
    Some(out)
}

/// One instance of the cyclic cocycle identity on the triple `(x, y, z)`.
fn cyclic_row(
    alg: &Algebra,
    p: &Pairing,
    w: Window,
    x: &Basis,
    y: &Basis,
    z: &Basis,
) -> Option<SparseVec> {
    let mut row = SparseVec::new();
    for (first, second, third) in [(x, y, z), (y, z, x), (z, x, y)] {
        let inner = alg.bracket_basis(second, third).expect("valid basis");
        for (b, c) in inner.iter() {
            if !w.contains(b.degree) {
                return None;
            }
            let pv = pair_value(p, w, first, b)?;
            add_scaled(&mut row, &pv, c);
        }
    }
    Some(row)
}

/// Constraints on the Virasoro component, in `v(1..N)`.
///
/// The kernel is the window restriction of `{a·n³ + b·n}`; below `N = 3`
/// there are no informative rows.
pub fn constraints_virasoro(w: Window) -> Result<LinearSystem> {
    if w.n() < 3 {
        return Err(Error::WindowTooSmall(w.n(), 3));
    }
    let witt = Algebra::witt();
    let p = Pairing {
        mix_shift: None,
        ab_shift: None,
    };
    let mut sys = LinearSystem::new(vir_vars(w));
    for a in w.indices() {
        for b in w.indices() {
            let c = -a - b;
            if !w.contains(c) {
                continue;
            }
            if let Some(row) = cyclic_row(&witt, &p, w, &Basis::el(a), &Basis::el(b), &Basis::el(c))
            {
                sys.add_row(row);
            }
        }
    }
    Ok(sys)
}

/// Constraints on the abelian component, from triples `(X_i, X_j, L_k)` of
/// total degree zero.
pub fn constraints_abelian(alg: &Algebra, w: Window) -> Result<LinearSystem> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let p = Pairing::of(alg);
    let mut sys = LinearSystem::new(p.ab_vars(w));
    let Some(t) = p.ab_shift else { return Ok(sys) };
    for i in w.indices() {
        for j in w.indices() {
            let k = -(i + j) - t;
            if !w.contains(k) {
                continue;
            }
            if let Some(row) = cyclic_row(
                alg.base(),
                &p,
                w,
                &Basis::md(i),
                &Basis::md(j),
                &Basis::el(k),
            ) {
                sys.add_row(row);
            }
        }
    }
    Ok(sys)
}

/// Constraints on the mixing component, from triples `(L_a, L_b, X_k)` of
/// total degree zero.
pub fn constraints_mixing(alg: &Algebra, w: Window) -> Result<LinearSystem> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let p = Pairing::of(alg);
    let mut sys = LinearSystem::new(p.mix_vars(w));
    let Some(s) = p.mix_shift else { return Ok(sys) };
    for a in w.indices() {
        for b in w.indices() {
            let k = -(a + b) - s;
            if !w.contains(k) {
                continue;
            }
            if let Some(row) = cyclic_row(
                alg.base(),
                &p,
                w,
                &Basis::el(a),
                &Basis::el(b),
                &Basis::md(k),
            ) {
                sys.add_row(row);
            }
        }
    }
    Ok(sys)
}

/// The coboundary span inside the cochain variables.
///
/// Degree-zero functionals are supported on `L_0` and the degree-zero module
/// symbol only. The `L_0` functional contributes `v(n) = 2n`; the module
/// functional contributes `mix(n) = −ω(n, −n−s)` and nothing abelian.
pub fn coboundary_space_h2(alg: &Algebra, w: Window) -> SubspaceBasis {
    let p = Pairing::of(alg);
    let mut vars: std::collections::BTreeSet<VarId> = vir_vars(w).into_iter().collect();
    vars.extend(p.ab_vars(w));
    vars.extend(p.mix_vars(w));

    let mut gens = Vec::new();
    let mut from_l0 = SparseVec::new();
    for n in 1..=w.n() {
        from_l0.insert(VarId::new(VIR_KIND, n), Rat::int(2 * n));
    }
    gens.push(from_l0);

    if let Some(s) = p.mix_shift {
        if w.contains(-s) {
            let mut from_module = SparseVec::new();
            for var in p.mix_vars(w) {
                let n = var.index;
                let value = -alg.weight(n, -n - s).expect("module present");
                if !value.is_zero() {
                    from_module.insert(var, value);
                }
            }
            gens.push(from_module);
        }
    }
    SubspaceBasis::from_vectors(vars, gens)
}

/// Component dimensions of `H²` at the given window.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct H2Dims {
    pub vir: i64,
    pub ab: i64,
    pub mix: i64,
    pub total: i64,
}

/// Computes `dim H²` component by component as kernel modulo coboundaries.
///
/// Extensions are refused: their second cohomology is a different problem
/// from the one these variables describe.
pub fn h2_dimensions(alg: &Algebra, w: Window) -> Result<H2Dims> {
    if alg.is_extended() {
        return Err(Error::DomainMismatch(
            "second cohomology is computed on the base algebras, not their extensions".into(),
        ));
    }
    if w.n() < 4 {
        return Err(Error::WindowTooSmall(w.n(), 4));
    }
    let cob = coboundary_space_h2(alg, w);
    let vir_kernel = constraints_virasoro(w)?.kernel();
    let vir = vir_kernel.quotient_dim(&cob.project_kinds(&[VIR_KIND]))? as i64;
    let (ab, mix) = if alg.has_module() {
        let ab_kernel = constraints_abelian(alg, w)?.kernel();
        let ab = ab_kernel.quotient_dim(&cob.project_kinds(&[AB_KIND]))? as i64;
        let mix_kernel = constraints_mixing(alg, w)?.kernel();
        let mix = mix_kernel.quotient_dim(&cob.project_kinds(&[MIX_KIND]))? as i64;
        (ab, mix)
    } else {
        (0, 0)
    };
    Ok(H2Dims {
        vir,
        ab,
        mix,
        total: vir + ab + mix,
    })
}

/// A failing instance of the cyclic cocycle identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleDefect {
    pub x: Basis,
    pub y: Basis,
    pub z: Basis,
    pub value: Rat,
}

/// Evaluates a named cocycle on a pair of basis vectors.
pub fn eval_named(c: &NamedCocycle, x: &Basis, y: &Basis) -> Result<Rat> {
    CocycleForm::from(c.clone()).eval(x, y)
}

/// Brute-force check of the cyclic cocycle identity for a closed-form
/// cocycle on every basis triple of total degree zero inside the window.
/// Triples of nonzero total degree only meet the form where it vanishes.
pub fn is_cocycle(alg: &Algebra, form: &CocycleForm, w: Window) -> Result<Vec<CocycleDefect>> {
    if alg.is_extended() {
        return Err(Error::DomainMismatch(
            "cocycles are checked on base algebras".into(),
        ));
    }
    if let CocycleForm::Named(named) = form {
        named.compatible_with(alg)?;
    } else if form.component() != Component::Vir {
        if !alg.has_module() {
            return Err(Error::NoModuleFamily);
        }
        if !alg.degree_offset().is_zero() {
            return Err(Error::DomainMismatch(
                "explicit cocycle vectors pair indices n with -n; this module grading is offset"
                    .into(),
            ));
        }
    }
    let w = match form.window() {
        Some(inner) => Window::new(w.n().min(inner)),
        None => w,
    };
    let mut defects = Vec::new();
    let basis = alg.basis_window(w.n());
    for x in &basis {
        for y in &basis {
            for z in &basis {
                if x.degree + y.degree + z.degree != 0 {
                    continue;
                }
                let mut value = Rat::zero();
                for (first, second, third) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = alg.bracket_basis(second, third)?;
                    for (b, c) in inner.iter() {
                        value += &(form.eval(first, b)? * c);
                    }
                }
                if !value.is_zero() {
                    defects.push(CocycleDefect {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        value,
                    });
                }
            }
        }
    }
    Ok(defects)
}

/// The window restriction of a named cocycle, as a vector in the cochain
/// variables of its component.
pub fn named_window_vector(c: &NamedCocycle, alg: &Algebra, w: Window) -> SparseVec {
    let p = Pairing::of(alg);
    let vars = match c.component() {
        Component::Vir => vir_vars(w),
        Component::Ab => p.ab_vars(w),
        Component::Mix => p.mix_vars(w),
    };
    let mut out = SparseVec::new();
    for var in vars {
        let value = c.coeff(var.index);
        if !value.is_zero() {
            out.insert(var, value);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Lambda;
    use std::collections::BTreeMap;

    fn wa(lambda: Lambda) -> Algebra {
        Algebra::series_a(lambda)
    }

    fn wb(lambda: Lambda) -> Algebra {
        Algebra::series_b(lambda)
    }

    #[test]
    fn virasoro_kernel_is_two_dimensional() {
        for n in [3, 8] {
            let sys = constraints_virasoro(Window::new(n)).unwrap();
            assert_eq!(sys.kernel().dim(), 2, "N = {n}");
        }
        assert!(matches!(
            constraints_virasoro(Window::new(2)),
            Err(Error::WindowTooSmall(2, 3))
        ));
    }

    #[test]
    fn gelfand_fuks_function_satisfies_all_rows() {
        let w = Window::new(8);
        let sys = constraints_virasoro(w).unwrap();
        let vec = named_window_vector(&NamedCocycle::OmegaVir, &Algebra::witt(), w);
        assert!(sys.satisfied_by(&vec));
    }

    #[test]
    fn abelian_kernels() {
        let w = Window::new(6);
        assert_eq!(
            constraints_abelian(&wa(Lambda::new_test(5, 7)), w)
                .unwrap()
                .kernel()
                .dim(),
            0
        );

        let k = constraints_abelian(&wb(Lambda::int(1)), w)
            .unwrap()
            .kernel();
        assert_eq!(k.dim(), 1);
        let iota = named_window_vector(&NamedCocycle::Iota, &wb(Lambda::int(1)), w);
        assert!(k.in_span(&iota));

        let k = constraints_abelian(&wb(Lambda::Infinity), Window::new(4))
            .unwrap()
            .kernel();
        assert_eq!(k.dim(), 1);

        assert!(matches!(
            constraints_abelian(&Algebra::witt(), w),
            Err(Error::NoModuleFamily)
        ));
    }

    #[test]
    fn abelian_pairing_with_offset() {
        // on W(1/2, 0) the abelian pairs are (I_n, I_{-n-1}); the kernel is a line
        let alg = Algebra::tensor_density(Rat::new(1, 2), Rat::zero());
        let k = constraints_abelian(&alg, Window::new(6)).unwrap().kernel();
        assert_eq!(k.dim(), 1);
        // a generic W(a,b) has no abelian pairs at all
        let generic = Algebra::tensor_density(Rat::new(1, 3), Rat::int(2));
        let k = constraints_abelian(&generic, Window::new(6))
            .unwrap()
            .kernel();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn mixing_kernels() {
        let w = Window::new(6);
        let k = constraints_mixing(&wa(Lambda::int(0)), w).unwrap().kernel();
        assert_eq!(k.dim(), 2);
        let beta0 = named_window_vector(
            &NamedCocycle::BetaLambda(Lambda::int(0)),
            &wa(Lambda::int(0)),
            w,
        );
        let iota = named_window_vector(&NamedCocycle::Gamma1, &wa(Lambda::int(0)), w);
        assert!(k.in_span(&beta0));
        assert!(k.in_span(&iota));

        let k = constraints_mixing(&wa(Lambda::new_test(5, 7)), w)
            .unwrap()
            .kernel();
        assert_eq!(k.dim(), 1);

        let k = constraints_mixing(&wb(Lambda::int(2)), w).unwrap().kernel();
        assert_eq!(k.dim(), 2);
        for c in [NamedCocycle::Gamma1, NamedCocycle::Gamma2] {
            assert!(k.in_span(&named_window_vector(&c, &wb(Lambda::int(2)), w)));
        }
    }

    #[test]
    fn coboundaries_by_family() {
        let w = Window::new(6);
        let cob_a = coboundary_space_h2(&wa(Lambda::int(1)), w);
        assert_eq!(cob_a.project_kinds(&[MIX_KIND]).dim(), 0);
        assert_eq!(cob_a.project_kinds(&[VIR_KIND]).dim(), 1);

        let cob_b = coboundary_space_h2(&wb(Lambda::int(2)), w);
        let mix_part = cob_b.project_kinds(&[MIX_KIND]);
        assert_eq!(mix_part.dim(), 1);
        let eta = named_window_vector(
            &NamedCocycle::EtaLambda(Lambda::int(2)),
            &wb(Lambda::int(2)),
            w,
        );
        assert_eq!(eta.get(&VarId::new(MIX_KIND, 2)), Some(&Rat::int(14)));
        assert!(mix_part.in_span(&eta));

        let cob_inf = coboundary_space_h2(&wb(Lambda::Infinity), w).project_kinds(&[MIX_KIND]);
        let eta_inf = named_window_vector(
            &NamedCocycle::EtaLambda(Lambda::Infinity),
            &wb(Lambda::Infinity),
            w,
        );
        assert!(cob_inf.in_span(&eta_inf));
        assert_eq!(eta_inf.get(&VarId::new(MIX_KIND, 2)), Some(&Rat::int(6)));
    }

    #[test]
    fn h2_dimension_examples() {
        let w = Window::new(8);
        assert_eq!(
            h2_dimensions(&wa(Lambda::int(0)), w).unwrap(),
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 2,
                total: 3
            }
        );
        assert_eq!(
            h2_dimensions(&wa(Lambda::int(-1)), w).unwrap(),
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 1,
                total: 2
            }
        );
        assert_eq!(
            h2_dimensions(&wb(Lambda::Infinity), w).unwrap(),
            H2Dims {
                vir: 1,
                ab: 1,
                mix: 1,
                total: 3
            }
        );
    }

    #[test]
    fn h2_refuses_extensions_and_small_windows() {
        let ext = crate::extension::virasoro();
        assert!(matches!(
            h2_dimensions(&ext, Window::new(8)),
            Err(Error::DomainMismatch(_))
        ));
        assert!(matches!(
            h2_dimensions(&wa(Lambda::int(0)), Window::new(3)),
            Err(Error::WindowTooSmall(3, 4))
        ));
    }

    #[test]
    fn named_cocycles_pass_cyclic_check() {
        let w = Window::new(8);
        assert!(is_cocycle(
            &wa(Lambda::int(7)),
            &NamedCocycle::OmegaMixA(Lambda::int(7)).into(),
            w
        )
        .unwrap()
        .is_empty());
        assert!(is_cocycle(
            &wb(Lambda::int(0)),
            &NamedCocycle::OmegaMixB(Lambda::int(0)).into(),
            w
        )
        .unwrap()
        .is_empty());
        assert!(is_cocycle(
            &wb(Lambda::int(1)),
            &NamedCocycle::Gamma1.into(),
            Window::new(4)
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn non_cocycle_is_detected() {
        // the mixing function n³ fails the cyclic identity on W_A(1)
        let values: BTreeMap<i64, Rat> = (-8..=8).map(|n| (n, Rat::int(n * n * n))).collect();
        let form = CocycleForm::Custom {
            component: Component::Mix,
            values,
            window: 8,
        };
        let defects = is_cocycle(&wa(Lambda::int(1)), &form, Window::new(8)).unwrap();
        assert!(!defects.is_empty());
    }

    #[test]
    fn lambda_mismatch_is_domain_error() {
        let w = Window::new(5);
        let err = is_cocycle(
            &wa(Lambda::int(2)),
            &NamedCocycle::OmegaMixA(Lambda::int(3)).into(),
            w,
        );
        assert!(matches!(err, Err(Error::DomainMismatch(_))));
        let err = is_cocycle(&wa(Lambda::int(2)), &NamedCocycle::OmegaAbB.into(), w);
        assert!(matches!(err, Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn eta_lies_in_the_gamma_span() {
        let w = Window::new(5);
        let alg = wb(Lambda::int(2));
        let gammas = SubspaceBasis::from_vectors(
            constraints_mixing(&alg, w).unwrap().vars().clone(),
            vec![
                named_window_vector(&NamedCocycle::Gamma1, &alg, w),
                named_window_vector(&NamedCocycle::Gamma2, &alg, w),
            ],
        );
        let eta = named_window_vector(&NamedCocycle::EtaLambda(Lambda::int(2)), &alg, w);
        assert!(gammas.in_span(&eta));
    }

    #[test]
    fn mixing_kernel_matches_named_span() {
        let w = Window::new(6);
        for lambda in [
            Lambda::int(1),
            Lambda::int(-1),
            Lambda::new_test(5, 7),
            Lambda::Infinity,
        ] {
            let alg = wa(lambda.clone());
            let k = constraints_mixing(&alg, w).unwrap().kernel();
            let beta = named_window_vector(&NamedCocycle::BetaLambda(lambda.clone()), &alg, w);
            assert_eq!(k.dim(), 1, "lambda = {lambda}");
            assert!(k.in_span(&beta), "lambda = {lambda}");
        }
    }
}
