//! Automorphisms, derivations, and the windowed `H¹(g;g)` solver.
//!
//! Automorphisms of `W_X(λ)` are stored parametrically as
//! `(inner) ∘ τ^k ∘ φ_a ∘ ψ_b ∘ σ_α ∘ μ_ξ` with the rightmost factor applied
//! first, where
//!
//! - `σ_α` scales the degree-`n` generators by `α^n`,
//! - `μ_ξ` scales the module by `ξ`,
//! - `ψ_b` sends `L_n ↦ L_n + b·n·X_n` (A-family, and B-family at `λ = 0`),
//! - `φ_a` sends `L_n ↦ L_n + a·n²·A_n` on the A-family and
//!   `L_n ↦ L_n + a·X_n` on the B-family, with the value `(λ+1)a` at `n = 0`
//!   for finite `λ`,
//! - `τ` is the degree flip `L_n ↦ −L_{−n}`, `X_n ↦ X_{−n}` (with
//!   `X_0 ↦ −X_0` at `λ = −1`), only available at `λ ∈ {0, −1}`,
//! - the inner part is a finite product `Π exp(c·ad_{X_i})`, acting by
//!   `L_m ↦ L_m − c·ω(m,i)·X_{m+i}` and fixing the module.
//!
//! Since the parameters exhaust the automorphism group modulo inner factors,
//! composition and inversion are closed-form on parameters; both are checked
//! against pointwise application.
//!
//! Degree-zero derivations `d(L_n) = α_n L_n + β_n X_n`,
//! `d(X_n) = η_n L_n + θ_n X_n` are solved for by instantiating the Leibniz
//! rule on basis pairs; `H¹(g;g)` is the kernel modulo the span of the
//! degree-zero inner derivations.

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::cohomology::{Pairing, Window};
use crate::element::{Basis, Element, Family};
use crate::error::{Error, Result};
use crate::linsolve::{add_scaled, LinearSystem, SparseVec, SubspaceBasis, VarId};
use crate::rat::{Lambda, Rat};

pub const ALPHA_KIND: &str = "al";
pub const BETA_KIND: &str = "be";
pub const ETA_KIND: &str = "et";
pub const THETA_KIND: &str = "th";

fn linear_map(x: &Element, f: impl Fn(&Basis) -> Element) -> Element {
    let mut out = Element::zero();
    for (b, c) in x.iter() {
        for (b2, c2) in f(b).iter() {
            out.add_term(b2.clone(), c2 * c);
        }
    }
    out
}

/// A parametric automorphism of `W_A(λ)` or `W_B(λ)`.
#[derive(Clone, PartialEq, Debug)]
pub struct AutSpec {
    pub flip: bool,
    pub phi_a: Rat,
    pub psi_b: Rat,
    pub alpha: Rat,
    pub xi: Rat,
    /// Normalized: sorted by index, duplicates merged, zeros dropped.
    pub inner: Vec<(i64, Rat)>,
}

impl AutSpec {
    pub fn new(flip: bool, phi_a: Rat, psi_b: Rat, alpha: Rat, xi: Rat) -> Result<Self> {
        if alpha.is_zero() || xi.is_zero() {
            return Err(Error::InvalidAutForAlgebra(
                "alpha and xi must be nonzero".into(),
            ));
        }
        Ok(AutSpec {
            flip,
            phi_a,
            psi_b,
            alpha,
            xi,
            inner: Vec::new(),
        })
    }

    pub fn identity() -> Self {
        AutSpec {
            flip: false,
            phi_a: Rat::zero(),
            psi_b: Rat::zero(),
            alpha: Rat::one(),
            xi: Rat::one(),
            inner: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self == &AutSpec::identity()
    }

    pub fn with_inner(mut self, factors: Vec<(i64, Rat)>) -> Self {
        self.inner = normalize_inner(factors.into_iter().chain(self.inner));
        self
    }

    fn sign(&self) -> i64 {
        if self.flip {
            -1
        } else {
            1
        }
    }

    /// Checks the parameters against the algebra: flips need `λ ∈ {0, −1}`,
    /// and the B-family has no `ψ` direction away from `λ = 0`.
    pub fn validate_for(&self, alg: &Algebra) -> Result<()> {
        if self.alpha.is_zero() || self.xi.is_zero() {
            return Err(Error::InvalidAutForAlgebra(
                "alpha and xi must be nonzero".into(),
            ));
        }
        let lambda = match alg {
            Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda } => lambda,
            _ => {
                return Err(Error::InvalidAutForAlgebra(
                    "parametric automorphisms are defined on the A- and B-family algebras".into(),
                ))
            }
        };
        if self.flip && !(lambda.is_zero() || lambda == &Lambda::int(-1)) {
            return Err(Error::InvalidAutForAlgebra(
                "the degree flip exists only at lambda in {0, -1}".into(),
            ));
        }
        if matches!(alg, Algebra::SeriesB { .. }) && !lambda.is_zero() && !self.psi_b.is_zero() {
            return Err(Error::InvalidAutForAlgebra(
                "the B-family has no psi direction away from lambda = 0".into(),
            ));
        }
        Ok(())
    }

    /// The inner factors as they act: index zero is trivial on the B-family
    /// (its degree-zero module symbol is central).
    fn effective_inner(&self, alg: &Algebra) -> Vec<(i64, Rat)> {
        let drop_zero = matches!(alg, Algebra::SeriesB { .. });
        self.inner
            .iter()
            .filter(|(i, _)| !(drop_zero && *i == 0))
            .cloned()
            .collect()
    }
}

fn normalize_inner(factors: impl IntoIterator<Item = (i64, Rat)>) -> Vec<(i64, Rat)> {
    let mut map: BTreeMap<i64, Rat> = BTreeMap::new();
    for (i, c) in factors {
        let entry = map.entry(i).or_insert_with(Rat::zero);
        *entry += &c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Serialize, Deserialize)]
struct AutSpecWire {
    k: u8,
    a: Rat,
    b: Rat,
    alpha: Rat,
    xi: Rat,
    inner: Vec<(i64, Rat)>,
}

impl Serialize for AutSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AutSpecWire {
            k: self.flip as u8,
            a: self.phi_a.clone(),
            b: self.psi_b.clone(),
            alpha: self.alpha.clone(),
            xi: self.xi.clone(),
            inner: self.inner.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AutSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = AutSpecWire::deserialize(deserializer)?;
        if wire.k > 1 {
            return Err(D::Error::custom("flip exponent must be 0 or 1"));
        }
        Ok(
            AutSpec::new(wire.k == 1, wire.a, wire.b, wire.alpha, wire.xi)
                .map_err(D::Error::custom)?
                .with_inner(wire.inner),
        )
    }
}

/// Coefficient of the module term that `φ_a` adds to `L_n`, per unit `a`.
fn phi_coeff(alg: &Algebra, n: i64) -> Rat {
    match alg {
        Algebra::SeriesA { .. } => Rat::int(n * n),
        Algebra::SeriesB { lambda } => match lambda {
            Lambda::Finite(q) if n == 0 => q + &Rat::one(),
            _ => Rat::one(),
        },
        _ => unreachable!("validated"),
    }
}

fn map_mu(xi: &Rat, x: &Element) -> Element {
    linear_map(x, |b| match b.family {
        Family::M => Element::term(b.clone(), xi.clone()),
        _ => Element::basis(b.clone()),
    })
}

fn map_sigma(alpha: &Rat, x: &Element) -> Element {
    linear_map(x, |b| Element::term(b.clone(), alpha.pow(b.degree)))
}

fn map_psi(b_coeff: &Rat, x: &Element) -> Element {
    linear_map(x, |b| {
        let mut out = Element::basis(b.clone());
        if b.family == Family::L {
            out.add_term(Basis::md(b.degree), b_coeff * &Rat::int(b.degree));
        }
        out
    })
}

fn map_phi(alg: &Algebra, a_coeff: &Rat, x: &Element) -> Element {
    linear_map(x, |b| {
        let mut out = Element::basis(b.clone());
        if b.family == Family::L {
            out.add_term(Basis::md(b.degree), a_coeff * &phi_coeff(alg, b.degree));
        }
        out
    })
}

fn map_tau(alg: &Algebra, x: &Element) -> Element {
    let minus_one_module = matches!(alg, Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda }
        if lambda == &Lambda::int(-1));
    linear_map(x, |b| match b.family {
        Family::L => Element::term(Basis::el(-b.degree), Rat::int(-1)),
        Family::M => {
            let sign = if minus_one_module && b.degree == 0 {
                Rat::int(-1)
            } else {
                Rat::one()
            };
            Element::term(Basis::md(-b.degree), sign)
        }
        _ => unreachable!("validated"),
    })
}

fn map_exp_inner(alg: &Algebra, index: i64, c: &Rat, x: &Element) -> Element {
    linear_map(x, |b| {
        let mut out = Element::basis(b.clone());
        if b.family == Family::L {
            let w = alg.weight(b.degree, index).expect("module present");
            out.add_term(Basis::md(b.degree + index), -(c * &w));
        }
        out
    })
}

/// Applies the automorphism to an element, factor by factor, exactly.
pub fn apply_aut(s: &AutSpec, alg: &Algebra, x: &Element) -> Result<Element> {
    s.validate_for(alg)?;
    for (b, _) in x.iter() {
        alg.validate_basis(b)?;
    }
    let mut e = map_mu(&s.xi, x);
    e = map_sigma(&s.alpha, &e);
    if !s.psi_b.is_zero() {
        e = map_psi(&s.psi_b, &e);
    }
    if !s.phi_a.is_zero() {
        e = map_phi(alg, &s.phi_a, &e);
    }
    if s.flip {
        e = map_tau(alg, &e);
    }
    for (i, c) in s.effective_inner(alg) {
        e = map_exp_inner(alg, i, &c, &e);
    }
    Ok(e)
}

/// Bracket-preservation check on all basis pairs in the window.
pub fn check_aut(s: &AutSpec, alg: &Algebra, w: Window) -> Result<Vec<(Basis, Basis)>> {
    s.validate_for(alg)?;
    let mut defects = Vec::new();
    let basis = alg.basis_window(w.n());
    for u in &basis {
        for v in &basis {
            let lhs = apply_aut(s, alg, &alg.bracket_basis(u, v)?)?;
            let rhs = alg.bracket(
                &apply_aut(s, alg, &Element::basis(u.clone()))?,
                &apply_aut(s, alg, &Element::basis(v.clone()))?,
            )?;
            if lhs != rhs {
                defects.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(defects)
}

fn minus_one_sign_at(alg: &Algebra, flipped: bool, index: i64) -> Rat {
    let at_minus_one = matches!(alg, Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda }
        if lambda == &Lambda::int(-1));
    if at_minus_one && flipped && index == 0 {
        Rat::int(-1)
    } else {
        Rat::one()
    }
}

/// The closed-form composite `s1 ∘ s2` (apply `s2` first).
///
/// The outer parameters compose as
/// `(k;a,b;α,ξ)·(ℓ;c,d;β,ζ) = (k+ℓ; (−1)^ℓ a + ξc, b + ξd; α^{(−1)^ℓ} β, ξζ)`,
/// and `s1` conjugates the inner factors of `s2` index-wise through
/// `exp(c·ad_{X_j}) ↦ exp(±α^j ξ c · ad_{X_{(−1)^k j}})`.
pub fn compose_auts(s1: &AutSpec, s2: &AutSpec, alg: &Algebra) -> Result<AutSpec> {
    s1.validate_for(alg)?;
    s2.validate_for(alg)?;
    let eps1 = s1.sign();
    let eps2 = Rat::int(s2.sign());

    let mut out = AutSpec::new(
        s1.flip ^ s2.flip,
        &(&eps2 * &s1.phi_a) + &(&s1.xi * &s2.phi_a),
        &s1.psi_b + &(&s1.xi * &s2.psi_b),
        s1.alpha.pow(s2.sign()) * &s2.alpha,
        &s1.xi * &s2.xi,
    )?;
    let mut inner: Vec<(i64, Rat)> = s1.effective_inner(alg);
    for (j, z) in s2.effective_inner(alg) {
        let target = eps1 * j;
        let coeff = minus_one_sign_at(alg, s1.flip, target) * s1.alpha.pow(j) * &s1.xi * &z;
        inner.push((target, coeff));
    }
    out.inner = normalize_inner(inner);
    Ok(out)
}

/// The parametric inverse, derived from the composition law.
pub fn inverse_aut(s: &AutSpec, alg: &Algebra) -> Result<AutSpec> {
    s.validate_for(alg)?;
    let eps = Rat::int(s.sign());
    let mut out = AutSpec::new(
        s.flip,
        -(&eps * &s.phi_a) / s.xi.clone(),
        -(&s.psi_b / &s.xi),
        s.alpha.pow(-s.sign()),
        s.xi.recip(),
    )?;
    let mut inner = Vec::new();
    for (i, y) in s.effective_inner(alg) {
        let j = s.sign() * i;
        let coeff = -(minus_one_sign_at(alg, s.flip, i) * s.alpha.pow(-j) * s.xi.recip() * &y);
        inner.push((j, coeff));
    }
    out.inner = normalize_inner(inner);
    Ok(out)
}

/// Checks that `exp(−a·ad` of the degree-zero module symbol `)` equals the
/// matching `φ`/`ψ` composite on the A-family: `φ_{λa} ∘ ψ_{(λ+1)a}` for
/// finite `λ` and `φ_a ∘ ψ_a` at `λ = ∞`, on every basis vector of the
/// window.
pub fn inner_identity_check(lambda: &Lambda, w: Window, samples: &[Rat]) -> Result<bool> {
    let alg = Algebra::series_a(lambda.clone());
    for a in samples {
        let lhs = AutSpec::identity().with_inner(vec![(0, -a)]);
        let (phi, psi) = match lambda {
            Lambda::Finite(q) => (q * a, &(q + &Rat::one()) * a),
            Lambda::Infinity => (a.clone(), a.clone()),
        };
        let rhs = AutSpec::new(false, phi, psi, Rat::one(), Rat::one())?;
        for b in alg.basis_window(w.n()) {
            let x = Element::basis(b);
            if apply_aut(&lhs, &alg, &x)? != apply_aut(&rhs, &alg, &x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Draws automorphism parameters valid for the algebra: small rationals,
/// nonzero scales, a flip only where it exists, and up to three inner
/// factors.
pub fn sample_aut_spec(alg: &Algebra, rng: &mut impl Rng) -> AutSpec {
    let lambda = alg.lambda().cloned().expect("A- or B-family algebra");
    let flip_allowed = lambda.is_zero() || lambda == Lambda::int(-1);
    let b_family = matches!(alg.base(), Algebra::SeriesB { .. });

    fn rat(rng: &mut impl Rng, nonzero: bool) -> Rat {
        loop {
            let q = Rat::new(rng.gen_range(-6..=6), rng.gen_range(1..=4));
            if !nonzero || !q.is_zero() {
                return q;
            }
        }
    }
    let flip = flip_allowed && rng.gen_bool(0.5);
    let phi_a = rat(rng, false);
    let psi_b = if b_family && !lambda.is_zero() {
        Rat::zero()
    } else {
        rat(rng, false)
    };
    let alpha = rat(rng, true);
    let xi = rat(rng, true);
    let mut inner = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let idx = rng.gen_range(-4..=4);
        if b_family && idx == 0 {
            continue;
        }
        inner.push((idx, rat(rng, false)));
    }
    AutSpec::new(flip, phi_a, psi_b, alpha, xi)
        .expect("nonzero scales")
        .with_inner(inner)
}

/// Generators for derivations: the adjoint of an element, the module
/// rescaling direction, and the one-parameter directions of the `φ`/`ψ`
/// automorphism families.
#[derive(Clone, PartialEq, Debug)]
pub enum DerGen {
    /// `x ↦ [y, x]`.
    AdInner(Element),
    /// `L_n ↦ 0`, `X_n ↦ X_n`.
    DAb,
    /// `L_n ↦ n·A_n`, `A_n ↦ 0` (A-family).
    DeltaA,
    /// `L_n ↦ n²·A_n`, `A_n ↦ 0` (A-family).
    PartialA,
    /// `L_n ↦ B_n` (value `(λ+1)·B_0` at `n = 0`, finite `λ`), `B_n ↦ 0`.
    DB,
    /// `L_n ↦ n·B_n`, `B_n ↦ 0` (B-family at `λ = 0` only).
    PartialB0,
}

impl DerGen {
    fn tag(&self) -> String {
        match self {
            DerGen::AdInner(x) => format!("ad({x})"),
            DerGen::DAb => "d_ab".into(),
            DerGen::DeltaA => "delta_a".into(),
            DerGen::PartialA => "partial_a".into(),
            DerGen::DB => "d_b".into(),
            DerGen::PartialB0 => "partial_b0".into(),
        }
    }

    fn validate_for(&self, alg: &Algebra) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidDerForAlgebra(why.to_string()));
        match self {
            DerGen::AdInner(x) => {
                for (b, _) in x.iter() {
                    alg.validate_basis(b)?;
                }
                Ok(())
            }
            DerGen::DAb => {
                if alg.is_extended() || !alg.has_module() {
                    bad("the module rescaling direction needs a bare semi-direct sum")
                } else {
                    Ok(())
                }
            }
            DerGen::DeltaA | DerGen::PartialA => match alg {
                Algebra::SeriesA { .. } => Ok(()),
                _ => bad("this direction lives on the A-family"),
            },
            DerGen::DB => match alg {
                Algebra::SeriesB { .. } => Ok(()),
                _ => bad("this direction lives on the B-family"),
            },
            DerGen::PartialB0 => match alg {
                Algebra::SeriesB { lambda } if lambda.is_zero() => Ok(()),
                _ => bad("this direction lives on the B-family at lambda = 0"),
            },
        }
    }

    fn apply_basis(&self, alg: &Algebra, b: &Basis) -> Result<Element> {
        Ok(match self {
            DerGen::AdInner(y) => alg.bracket(y, &Element::basis(b.clone()))?,
            DerGen::DAb => match b.family {
                Family::M => Element::basis(b.clone()),
                _ => Element::zero(),
            },
            DerGen::DeltaA => match b.family {
                Family::L => Element::term(Basis::md(b.degree), Rat::int(b.degree)),
                _ => Element::zero(),
            },
            DerGen::PartialA => match b.family {
                Family::L => Element::term(Basis::md(b.degree), Rat::int(b.degree * b.degree)),
                _ => Element::zero(),
            },
            DerGen::DB => match b.family {
                Family::L => Element::term(Basis::md(b.degree), phi_coeff(alg, b.degree)),
                _ => Element::zero(),
            },
            DerGen::PartialB0 => match b.family {
                Family::L => Element::term(Basis::md(b.degree), Rat::int(b.degree)),
                _ => Element::zero(),
            },
        })
    }
}

/// A formal rational combination of derivation generators.
#[derive(Clone, PartialEq, Debug)]
pub struct DerSpec {
    pub terms: Vec<(DerGen, Rat)>,
}

impl DerSpec {
    pub fn single(gen: DerGen) -> Self {
        DerSpec {
            terms: vec![(gen, Rat::one())],
        }
    }

    pub fn ad(y: Element) -> Self {
        DerSpec::single(DerGen::AdInner(y))
    }
}

impl Serialize for DerSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            terms: Vec<(String, Rat)>,
        }
        Wire {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.tag(), c.clone()))
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Applies the derivation to an element.
pub fn apply_der(d: &DerSpec, alg: &Algebra, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (gen, coeff) in &d.terms {
        gen.validate_for(alg)?;
        for (b, c) in x.iter() {
            alg.validate_basis(b)?;
            let img = gen.apply_basis(alg, b)?;
            for (b2, c2) in img.iter() {
                out.add_term(b2.clone(), c2 * &(c * coeff));
            }
        }
    }
    Ok(out)
}

/// Leibniz-rule check `d([x,y]) = [d(x), y] + [x, d(y)]` on all basis pairs
/// in the window.
pub fn check_der(d: &DerSpec, alg: &Algebra, w: Window) -> Result<Vec<(Basis, Basis)>> {
    let mut defects = Vec::new();
    let basis = alg.basis_window(w.n());
    for u in &basis {
        for v in &basis {
            let lhs = apply_der(d, alg, &alg.bracket_basis(u, v)?)?;
            let rhs = alg
                .bracket(
                    &apply_der(d, alg, &Element::basis(u.clone()))?,
                    &Element::basis(v.clone()),
                )?
                .add(&alg.bracket(
                    &Element::basis(u.clone()),
                    &apply_der(d, alg, &Element::basis(v.clone()))?,
                )?);
            if lhs != rhs {
                defects.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(defects)
}

/// A degree-zero linear map with unknown coefficients: each basis vector
/// maps to a formal combination `basis ↦ linear expression in the unknowns`.
type SymElement = BTreeMap<Basis, SparseVec>;

fn sym_add(target: &mut SymElement, basis: Basis, expr: &SparseVec, k: &Rat) {
    let slot = target.entry(basis).or_default();
    add_scaled(slot, expr, k);
    // drop empty slots lazily when reading rows
}

/// The unknown image `d(u)` of a degree-zero derivation. The window caps
/// the input index; images may mention shifted module indices beyond it.
fn d_sym(p: &Pairing, u: &Basis) -> SymElement {
    let n = u.degree;
    let mut out = SymElement::new();
    match u.family {
        Family::L => {
            out.insert(
                Basis::el(n),
                [(VarId::new(ALPHA_KIND, n), Rat::one())]
                    .into_iter()
                    .collect(),
            );
            if let Some(s) = p.mix_shift {
                out.insert(
                    Basis::md(n - s),
                    [(VarId::new(BETA_KIND, n), Rat::one())]
                        .into_iter()
                        .collect(),
                );
            }
        }
        Family::M => {
            out.insert(
                Basis::md(n),
                [(VarId::new(THETA_KIND, n), Rat::one())]
                    .into_iter()
                    .collect(),
            );
            if let Some(s) = p.mix_shift {
                out.insert(
                    Basis::el(n + s),
                    [(VarId::new(ETA_KIND, n), Rat::one())]
                        .into_iter()
                        .collect(),
                );
            }
        }
        Family::C(_) => unreachable!("pairs use base families only"),
    }
    out
}

fn der_vars(p: &Pairing, w: Window) -> Vec<VarId> {
    let mut vars = Vec::new();
    for n in w.indices() {
        vars.push(VarId::new(ALPHA_KIND, n));
        vars.push(VarId::new(THETA_KIND, n));
        if p.mix_shift.is_some() {
            vars.push(VarId::new(BETA_KIND, n));
            vars.push(VarId::new(ETA_KIND, n));
        }
    }
    vars
}

/// `[sym, v]` with the unknown coefficients carried through the bracket.
fn sym_bracket_left(alg: &Algebra, sym: &SymElement, v: &Basis) -> SymElement {
    let mut out = SymElement::new();
    for (b, expr) in sym {
        let img = alg.bracket_basis(b, v).expect("valid basis");
        for (b2, c2) in img.iter() {
            sym_add(&mut out, b2.clone(), expr, c2);
        }
    }
    out
}

fn sym_bracket_right(alg: &Algebra, u: &Basis, sym: &SymElement) -> SymElement {
    let mut out = SymElement::new();
    for (b, expr) in sym {
        let img = alg.bracket_basis(u, b).expect("valid basis");
        for (b2, c2) in img.iter() {
            sym_add(&mut out, b2.clone(), expr, c2);
        }
    }
    out
}

/// The linear system whose kernel is the space of degree-zero derivations
/// restricted to the window, generated from the Leibniz rule on basis pairs.
pub fn derivation_constraints(alg: &Algebra, w: Window) -> Result<LinearSystem> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let alg = alg.base();
    let p = Pairing::of(alg);
    let mut sys = LinearSystem::new(der_vars(&p, w));
    let basis = alg.basis_window(w.n());
    for u in &basis {
        for v in &basis {
            if !w.contains(u.degree + v.degree) {
                continue;
            }
            let (du, dv) = (d_sym(&p, u), d_sym(&p, v));
            let mut defect = SymElement::new();
            let bracket_uv = alg.bracket_basis(u, v)?;
            for (b, c) in bracket_uv.iter() {
                for (basis, expr) in &d_sym(&p, b) {
                    sym_add(&mut defect, basis.clone(), expr, c);
                }
            }
            for (basis, expr) in sym_bracket_left(alg, &du, v) {
                sym_add(&mut defect, basis, &expr, &Rat::int(-1));
            }
            for (basis, expr) in sym_bracket_right(alg, u, &dv) {
                sym_add(&mut defect, basis, &expr, &Rat::int(-1));
            }
            for (_, row) in defect {
                sys.add_row(row);
            }
        }
    }
    Ok(sys)
}

/// Reads a concrete degree-zero derivation off into the solver's
/// coordinates, dropping components that fall outside the window.
fn extract_window_vector(
    p: &Pairing,
    w: Window,
    d: impl Fn(&Basis) -> Result<Element>,
) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    let mut put = |var: VarId, value: Rat| {
        if !value.is_zero() {
            out.insert(var, value);
        }
    };
    for n in w.indices() {
        let img = d(&Basis::el(n))?;
        for (b, c) in img.iter() {
            match b.family {
                Family::L if b.degree == n => put(VarId::new(ALPHA_KIND, n), c.clone()),
                Family::M if Some(b.degree) == p.mix_shift.map(|s| n - s) => {
                    put(VarId::new(BETA_KIND, n), c.clone());
                }
                _ => debug_assert!(false, "not a degree-zero image"),
            }
        }
        let img = d(&Basis::md(n))?;
        for (b, c) in img.iter() {
            match b.family {
                Family::M if b.degree == n => put(VarId::new(THETA_KIND, n), c.clone()),
                Family::L if Some(b.degree) == p.mix_shift.map(|s| n + s) => {
                    put(VarId::new(ETA_KIND, n), c.clone());
                }
                _ => debug_assert!(false, "not a degree-zero image"),
            }
        }
    }
    Ok(out)
}

/// Span of the degree-zero inner derivations: `ad_{L_0}` and the adjoint of
/// the degree-zero module symbol (which is zero on the B-family).
pub fn inner_derivation_space(alg: &Algebra, w: Window) -> Result<SubspaceBasis> {
    if !alg.has_module() {
        return Err(Error::NoModuleFamily);
    }
    let alg = alg.base();
    let p = Pairing::of(alg);
    let mut gens = Vec::new();
    let ad_l0 = |b: &Basis| alg.bracket_basis(&Basis::el(0), b);
    gens.push(extract_window_vector(&p, w, ad_l0)?);
    if let Some(s) = p.mix_shift {
        if w.contains(-s) {
            let ad_x = |b: &Basis| alg.bracket_basis(&Basis::md(-s), b);
            gens.push(extract_window_vector(&p, w, ad_x)?);
        }
    }
    Ok(SubspaceBasis::from_vectors(
        der_vars(&p, w).into_iter().collect(),
        gens,
    ))
}

/// Window restriction of a named derivation in the solver's coordinates.
pub fn derivation_window_vector(d: &DerSpec, alg: &Algebra, w: Window) -> Result<SparseVec> {
    for (gen, _) in &d.terms {
        gen.validate_for(alg)?;
    }
    let p = Pairing::of(alg.base());
    extract_window_vector(&p, w, |b| apply_der(d, alg, &Element::basis(b.clone())))
}

/// `dim H¹(g;g)` at the window: degree-zero derivations modulo inner.
pub fn h1_adjoint_dimension(alg: &Algebra, w: Window) -> Result<i64> {
    if w.n() < 5 {
        return Err(Error::WindowTooSmall(w.n(), 5));
    }
    let kernel = derivation_constraints(alg, w)?.kernel();
    let inner = inner_derivation_space(alg, w)?;
    Ok(kernel.quotient_dim(&inner)? as i64)
}
