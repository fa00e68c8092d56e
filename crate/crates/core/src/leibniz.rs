//! Leibniz 2-cocycles, symmetric invariant bilinear forms, and `HL²`.
//!
//! Leibniz cochains are bilinear with no antisymmetry, so the degree-zero
//! unknowns keep both orders of every pairing:
//!
//! - `LL(n) = χ(L_n, L_{−n})` for `−N ≤ n ≤ N`,
//! - `LX(n) = χ(L_n, X_{−n−s})` and `XL(n) = χ(X_n, L_{−n−s})`,
//! - `XX(n) = χ(X_n, X_{−n−t})`,
//!
//! with the same pairing shifts as in [`crate::cohomology`]. Constraint rows
//! instantiate the right-Leibniz cocycle identity
//! `χ([x,y],z) = χ(x,[y,z]) + χ([x,z],y)` on basis triples of total degree
//! zero; the degree-zero reduction carries over from the Lie case by the
//! same internal-grading argument, and the exact-sequence cross-check
//! guards the assumption.
//!
//! Symmetric invariant forms use their own canonical unknowns (`sLL`,
//! `sLX`, `sXX`) and the invariance identity `θ([x,y],z) = θ(x,[y,z])`.

use crate::algebra::Algebra;
use crate::cocycle::{Component, NamedCocycle};
use crate::cohomology::{h2_dimensions, Pairing, Window};
use crate::element::{Basis, Family};
use crate::error::{Error, Result};
use crate::linsolve::{add_scaled, LinearSystem, SparseVec, SubspaceBasis, VarId};
use crate::rat::Rat;

pub const LL_KIND: &str = "LL";
pub const LX_KIND: &str = "LX";
pub const XL_KIND: &str = "XL";
pub const XX_KIND: &str = "XX";
pub const SYM_LL_KIND: &str = "sLL";
pub const SYM_LX_KIND: &str = "sLX";
pub const SYM_XX_KIND: &str = "sXX";

fn bilinear_vars(p: &Pairing, w: Window) -> Vec<VarId> {
    let mut vars: Vec<VarId> = w.indices().map(|n| VarId::new(LL_KIND, n)).collect();
    if let Some(s) = p.mix_shift {
        for n in w.indices() {
            if w.contains(-n - s) {
                vars.push(VarId::new(LX_KIND, n));
                vars.push(VarId::new(XL_KIND, n));
            }
        }
    }
    if let Some(t) = p.ab_shift {
        for n in w.indices() {
            if w.contains(-n - t) {
                vars.push(VarId::new(XX_KIND, n));
            }
        }
    }
    vars
}

/// `χ(u, v)` in the bilinear unknowns; `None` when the needed unknown falls
/// outside the window.
fn bilinear_value(p: &Pairing, w: Window, u: &Basis, v: &Basis) -> Option<SparseVec> {
    let mut out = SparseVec::new();
    let (n, m) = (u.degree, v.degree);
    match (&u.family, &v.family) {
        (Family::L, Family::L) => {
            if m == -n {
                if !w.contains(n) {
                    return None;
                }
                out.insert(VarId::new(LL_KIND, n), Rat::one());
            }
        }
        (Family::L, Family::M) => {
            if let Some(s) = p.mix_shift {
                if m == -n - s {
                    if !(w.contains(n) && w.contains(m)) {
                        return None;
                    }
                    out.insert(VarId::new(LX_KIND, n), Rat::one());
                }
            }
        }
        (Family::M, Family::L) => {
            if let Some(s) = p.mix_shift {
                if m == -n - s {
                    if !(w.contains(n) && w.contains(m)) {
                        return None;
                    }
                    out.insert(VarId::new(XL_KIND, n), Rat::one());
                }
            }
        }
        (Family::M, Family::M) => {
            if let Some(t) = p.ab_shift {
                if m == -n - t {
                    if !(w.contains(n) && w.contains(m)) {
                        return None;
                    }
                    out.insert(VarId::new(XX_KIND, n), Rat::one());
                }
            }
        }
        _ => unreachable!("triples use base families only"),
    }
    Some(out)
}

fn degree_sum_is_zero(alg: &Algebra, triple: &[&Basis]) -> bool {
    let offset = alg.degree_offset();
    let mut total = Rat::zero();
    for b in triple {
        total += &Rat::int(b.degree);
        if b.family == Family::M {
            total += &offset;
        }
    }
    total.is_zero()
}

/// `χ([x,y],z) − χ(x,[y,z]) − χ([x,z],y)` expanded into a constraint row.
fn leibniz_row(
    alg: &Algebra,
    p: &Pairing,
    w: Window,
    x: &Basis,
    y: &Basis,
    z: &Basis,
) -> Option<SparseVec> {
    let mut row = SparseVec::new();
    let mut accumulate = |bracketed: crate::element::Element,
                          outer: &Basis,
                          bracket_on_left: bool,
                          sign: i64|
     -> Option<()> {
        for (term, coeff) in bracketed.iter() {
            if !w.contains(term.degree) {
                return None;
            }
            let value = if bracket_on_left {
                bilinear_value(p, w, term, outer)?
            } else {
                bilinear_value(p, w, outer, term)?
            };
            add_scaled(&mut row, &value, &(coeff * &Rat::int(sign)));
        }
        Some(())
    };
    accumulate(alg.bracket_basis(x, y).expect("valid basis"), z, true, 1)?;
    accumulate(alg.bracket_basis(y, z).expect("valid basis"), x, false, -1)?;
    accumulate(alg.bracket_basis(x, z).expect("valid basis"), y, true, -1)?;
    Some(row)
}

/// The degree-zero Leibniz 2-cocycle system over the bilinear unknowns.
pub fn constraints_leibniz(alg: &Algebra, w: Window) -> Result<LinearSystem> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let alg = alg.base();
    let p = Pairing::of(alg);
    let mut sys = LinearSystem::new(bilinear_vars(&p, w));
    let basis = alg.basis_window(w.n());
    for x in &basis {
        for y in &basis {
            for z in &basis {
                if !degree_sum_is_zero(alg, &[x, y, z]) {
                    continue;
                }
                if let Some(row) = leibniz_row(alg, &p, w, x, y, z) {
                    sys.add_row(row);
                }
            }
        }
    }
    Ok(sys)
}

/// Leibniz coboundaries `dφ(x,y) = −φ([x,y])` from functionals supported on
/// the degree-zero basis symbols. These are antisymmetric, like their Lie
/// counterparts.
pub fn leibniz_coboundary_space(alg: &Algebra, w: Window) -> SubspaceBasis {
    let alg = alg.base();
    let p = Pairing::of(alg);
    let vars: std::collections::BTreeSet<VarId> = bilinear_vars(&p, w).into_iter().collect();

    let mut gens = Vec::new();
    let mut from_l0 = SparseVec::new();
    for n in w.indices() {
        if n != 0 {
            from_l0.insert(VarId::new(LL_KIND, n), Rat::int(2 * n));
        }
    }
    gens.push(from_l0);

    if let Some(s) = p.mix_shift {
        if w.contains(-s) {
            let mut from_module = SparseVec::new();
            for n in w.indices() {
                if !w.contains(-n - s) {
                    continue;
                }
                let lx = -alg.weight(n, -n - s).expect("module present");
                if !lx.is_zero() {
                    from_module.insert(VarId::new(LX_KIND, n), lx);
                }
                let xl = alg.weight(-n - s, n).expect("module present");
                if !xl.is_zero() {
                    from_module.insert(VarId::new(XL_KIND, n), xl);
                }
            }
            gens.push(from_module);
        }
    }
    SubspaceBasis::from_vectors(vars, gens)
}

/// `dim HL²` at the window: Leibniz kernel modulo Leibniz coboundaries.
pub fn hl2_dimension(alg: &Algebra, w: Window) -> Result<i64> {
    if w.n() < 5 {
        return Err(Error::WindowTooSmall(w.n(), 5));
    }
    let kernel = constraints_leibniz(alg, w)?.kernel();
    let cob = leibniz_coboundary_space(alg, w);
    Ok(kernel.quotient_dim(&cob)? as i64)
}

fn sym_xx_var(t: i64, w: Window, n: i64) -> Option<VarId> {
    let canon = if 2 * n + t >= 0 { n } else { -n - t };
    (w.contains(canon) && w.contains(-canon - t)).then(|| VarId::new(SYM_XX_KIND, canon))
}

fn sym_vars(p: &Pairing, w: Window) -> Vec<VarId> {
    let mut vars: Vec<VarId> = (0..=w.n()).map(|n| VarId::new(SYM_LL_KIND, n)).collect();
    if let Some(s) = p.mix_shift {
        for n in w.indices() {
            if w.contains(-n - s) {
                vars.push(VarId::new(SYM_LX_KIND, n));
            }
        }
    }
    if let Some(t) = p.ab_shift {
        for n in w.indices() {
            if let Some(var) = sym_xx_var(t, w, n) {
                if !vars.contains(&var) {
                    vars.push(var);
                }
            }
        }
    }
    vars
}

/// `θ(u, v)` in the symmetric unknowns.
fn sym_value(p: &Pairing, w: Window, u: &Basis, v: &Basis) -> Option<SparseVec> {
    let mut out = SparseVec::new();
    let (n, m) = (u.degree, v.degree);
    match (&u.family, &v.family) {
        (Family::L, Family::L) => {
            if m == -n {
                if !w.contains(n) {
                    return None;
                }
                out.insert(VarId::new(SYM_LL_KIND, n.abs()), Rat::one());
            }
        }
        (Family::L, Family::M) | (Family::M, Family::L) => {
            if let Some(s) = p.mix_shift {
                let l_index = if u.family == Family::L { n } else { m };
                let m_index = if u.family == Family::L { m } else { n };
                if m_index == -l_index - s {
                    if !(w.contains(l_index) && w.contains(m_index)) {
                        return None;
                    }
                    out.insert(VarId::new(SYM_LX_KIND, l_index), Rat::one());
                }
            }
        }
        (Family::M, Family::M) => {
            if let Some(t) = p.ab_shift {
                if m == -n - t {
                    out.insert(sym_xx_var(t, w, n)?, Rat::one());
                }
            }
        }
        _ => unreachable!("triples use base families only"),
    }
    Some(out)
}

/// The invariance system `θ([x,y],z) − θ(x,[y,z]) = 0` over the symmetric
/// degree-zero unknowns; its kernel is the window restriction of the space
/// of symmetric invariant bilinear forms.
pub fn constraints_invariant_form(alg: &Algebra, w: Window) -> Result<LinearSystem> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let alg = alg.base();
    let p = Pairing::of(alg);
    let mut sys = LinearSystem::new(sym_vars(&p, w));
    let basis = alg.basis_window(w.n());
    for x in &basis {
        for y in &basis {
            for z in &basis {
                if !degree_sum_is_zero(alg, &[x, y, z]) {
                    continue;
                }
                let mut row = SparseVec::new();
                let mut ok = true;
                'terms: for (side, first, second, outer, sign) in
                    [(true, x, y, z, 1i64), (false, y, z, x, -1)]
                {
                    let bracketed = alg.bracket_basis(first, second).expect("valid basis");
                    for (term, coeff) in bracketed.iter() {
                        if !w.contains(term.degree) {
                            ok = false;
                            break 'terms;
                        }
                        let value = if side {
                            sym_value(&p, w, term, outer)
                        } else {
                            sym_value(&p, w, outer, term)
                        };
                        let Some(value) = value else {
                            ok = false;
                            break 'terms;
                        };
                        add_scaled(&mut row, &value, &(coeff * &Rat::int(sign)));
                    }
                }
                if ok {
                    sys.add_row(row);
                }
            }
        }
    }
    Ok(sys)
}

/// `dim Inv` at the window.
pub fn inv_dimension(alg: &Algebra, w: Window) -> Result<i64> {
    Ok(constraints_invariant_form(alg, w)?.kernel().dim() as i64)
}

/// The distinguished symmetric form pairing the degree-zero module symbol
/// with itself, as a vector in the symmetric unknowns.
pub fn theta_a_sym_vector() -> SparseVec {
    [(VarId::new(SYM_XX_KIND, 0), Rat::one())]
        .into_iter()
        .collect()
}

/// The same form as a bilinear (Leibniz) cochain vector.
pub fn theta_a_bilinear_vector() -> SparseVec {
    [(VarId::new(XX_KIND, 0), Rat::one())].into_iter().collect()
}

/// The antisymmetric bilinear vector of a named Lie cocycle: `LL(n)` odd in
/// `n`, `XL(n) = −LX(−n)`, `XX` odd across its pairing.
pub fn named_bilinear_vector(c: &NamedCocycle, alg: &Algebra, w: Window) -> SparseVec {
    let p = Pairing::of(alg.base());
    let mut out = SparseVec::new();
    match c.component() {
        Component::Vir => {
            for n in w.indices() {
                let value = c.coeff(n);
                if !value.is_zero() {
                    out.insert(VarId::new(LL_KIND, n), value);
                }
            }
        }
        Component::Mix => {
            let s = p.mix_shift.expect("named cocycles pair at shift zero");
            for n in w.indices() {
                if !w.contains(-n - s) {
                    continue;
                }
                let value = c.coeff(n);
                if !value.is_zero() {
                    out.insert(VarId::new(LX_KIND, n), value.clone());
                    out.insert(VarId::new(XL_KIND, -n - s), -value);
                }
            }
        }
        Component::Ab => {
            for n in w.indices() {
                let value = c.coeff(n);
                if !value.is_zero() {
                    out.insert(VarId::new(XX_KIND, n), value);
                }
            }
        }
    }
    out
}

/// Symmetrization `χ(x,y) + χ(y,x)` of a bilinear vector, in the symmetric
/// unknowns.
pub fn symmetrize(alg: &Algebra, w: Window, v: &SparseVec) -> SparseVec {
    let p = Pairing::of(alg.base());
    let mut out = SparseVec::new();
    for (var, c) in v {
        let target = match var.kind {
            k if k == LL_KIND => Some(VarId::new(SYM_LL_KIND, var.index.abs())),
            k if k == LX_KIND => Some(VarId::new(SYM_LX_KIND, var.index)),
            k if k == XL_KIND => {
                let s = p.mix_shift.expect("XL variable implies integer shift");
                Some(VarId::new(SYM_LX_KIND, -var.index - s))
            }
            k if k == XX_KIND => {
                let t = p
                    .ab_shift
                    .expect("XX variable implies integer double shift");
                sym_xx_var(t, w, var.index)
            }
            _ => None,
        };
        if let Some(target) = target {
            add_scaled(&mut out, &[(target, Rat::one())].into_iter().collect(), c);
        }
    }
    out
}

/// Outcome of the exact-sequence cross-check
/// `0 → H² → HL² → Inv` at one window.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct Crosscheck {
    pub h2: i64,
    pub hl2: i64,
    pub inv: i64,
    pub symmetrized_rank: i64,
    pub ok: bool,
}

/// Verifies that the gap `HL² − H²` is realized exactly by symmetrizations
/// of the computed Leibniz kernel sitting inside the invariant forms.
pub fn exact_sequence_crosscheck(alg: &Algebra, w: Window) -> Result<Crosscheck> {
    let h2 = h2_dimensions(alg, w)?.total;
    let hl2 = hl2_dimension(alg, w)?;
    let inv_kernel = constraints_invariant_form(alg, w)?.kernel();
    let inv = inv_kernel.dim() as i64;

    let kernel = constraints_leibniz(alg, w)?.kernel();
    let p = Pairing::of(alg.base());
    let sym_var_set: std::collections::BTreeSet<VarId> = sym_vars(&p, w).into_iter().collect();
    let images: Vec<SparseVec> = kernel
        .vectors()
        .iter()
        .map(|v| symmetrize(alg, w, v))
        .collect();
    let all_invariant = images.iter().all(|img| inv_kernel.in_span(img));
    let image_space = SubspaceBasis::from_vectors(sym_var_set, images);
    let rank = image_space.dim() as i64;

    let gap = hl2 - h2;
    Ok(Crosscheck {
        h2,
        hl2,
        inv,
        symmetrized_rank: rank,
        ok: gap >= 0 && gap <= inv && rank == gap && all_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Lambda;

    fn wa(lambda: Lambda) -> Algebra {
        Algebra::series_a(lambda)
    }

    fn wb(lambda: Lambda) -> Algebra {
        Algebra::series_b(lambda)
    }

    #[test]
    fn invariant_form_dimensions() {
        let w = Window::new(6);
        assert_eq!(inv_dimension(&wa(Lambda::int(2)), w).unwrap(), 1);
        assert_eq!(inv_dimension(&wb(Lambda::int(2)), w).unwrap(), 0);
        assert_eq!(inv_dimension(&wa(Lambda::Infinity), w).unwrap(), 1);
        let k = constraints_invariant_form(&wa(Lambda::int(2)), w)
            .unwrap()
            .kernel();
        assert!(k.in_span(&theta_a_sym_vector()));
    }

    #[test]
    fn theta_a_satisfies_leibniz_rows() {
        let w = Window::new(6);
        let sys = constraints_leibniz(&wa(Lambda::new_test(5, 7)), w).unwrap();
        assert!(sys.satisfied_by(&theta_a_bilinear_vector()));
    }

    #[test]
    fn lie_cocycles_are_leibniz_cocycles() {
        let w = Window::new(6);
        for lambda in [Lambda::int(1), Lambda::Infinity] {
            let a = wa(lambda.clone());
            let sys = constraints_leibniz(&a, w).unwrap();
            let vir = named_bilinear_vector(&NamedCocycle::OmegaVir, &a, w);
            assert!(sys.satisfied_by(&vir));
            let mix = named_bilinear_vector(&NamedCocycle::OmegaMixA(lambda.clone()), &a, w);
            assert!(sys.satisfied_by(&mix));

            let b = wb(lambda.clone());
            let sys = constraints_leibniz(&b, w).unwrap();
            let ab = named_bilinear_vector(&NamedCocycle::OmegaAbB, &b, w);
            assert!(sys.satisfied_by(&ab));
        }
    }

    #[test]
    fn hl2_dimension_examples() {
        let w = Window::new(8);
        assert_eq!(hl2_dimension(&wa(Lambda::int(0)), w).unwrap(), 4);
        assert_eq!(hl2_dimension(&wa(Lambda::int(-1)), w).unwrap(), 3);
        assert_eq!(hl2_dimension(&wb(Lambda::int(0)), w).unwrap(), 3);
        assert_eq!(hl2_dimension(&wb(Lambda::int(1)), w).unwrap(), 3);
    }

    #[test]
    fn hl2_on_tensor_density_rows() {
        let w = Window::new(8);
        // W(0,1) matches the A-family value at zero, including the extra
        // symmetric class; W(0,2) gains one over its H².
        assert_eq!(
            hl2_dimension(&Algebra::tensor_density(Rat::int(0), Rat::int(1)), w).unwrap(),
            4
        );
        assert_eq!(
            hl2_dimension(&Algebra::tensor_density(Rat::int(0), Rat::int(2)), w).unwrap(),
            2
        );
        assert_eq!(
            hl2_dimension(&Algebra::tensor_density(Rat::new(1, 2), Rat::int(0)), w).unwrap(),
            2
        );
    }

    #[test]
    fn symmetrization_of_antisymmetric_vanishes() {
        let w = Window::new(6);
        let a = wa(Lambda::int(1));
        for c in [
            NamedCocycle::OmegaVir,
            NamedCocycle::OmegaMixA(Lambda::int(1)),
        ] {
            let v = named_bilinear_vector(&c, &a, w);
            assert!(symmetrize(&a, w, &v).is_empty());
        }
    }

    #[test]
    fn theta_a_is_independent_of_antisymmetric_classes() {
        let w = Window::new(6);
        let lambda = Lambda::int(1);
        let alg = wa(lambda.clone());
        let sys = constraints_leibniz(&alg, w).unwrap();
        let mut gens: Vec<crate::linsolve::SparseVec> =
            leibniz_coboundary_space(&alg, w).vectors().to_vec();
        for c in [
            NamedCocycle::OmegaVir,
            NamedCocycle::OmegaMixA(lambda.clone()),
        ] {
            gens.push(named_bilinear_vector(&c, &alg, w));
        }
        let antisym_span = crate::linsolve::SubspaceBasis::from_vectors(sys.vars().clone(), gens);
        assert!(!antisym_span.in_span(&theta_a_bilinear_vector()));
    }

    #[test]
    fn crosscheck_examples() {
        let w = Window::new(8);
        let r = exact_sequence_crosscheck(&wa(Lambda::int(1)), w).unwrap();
        assert!(r.ok);
        assert_eq!(r.hl2 - r.h2, 1);
        assert_eq!(r.inv, 1);

        let r = exact_sequence_crosscheck(&wb(Lambda::int(1)), w).unwrap();
        assert!(r.ok);
        assert_eq!(r.hl2 - r.h2, 0);
        assert_eq!(r.inv, 0);
    }

    #[test]
    fn window_floor_is_enforced() {
        assert!(matches!(
            hl2_dimension(&wa(Lambda::int(1)), Window::new(4)),
            Err(Error::WindowTooSmall(4, 5))
        ));
    }
}
