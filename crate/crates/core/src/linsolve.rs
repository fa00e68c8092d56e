//! Exact sparse linear algebra over the rationals.
//!
//! Homogeneous systems only: every row asserts `Σ coeff·var = 0`. Kernels
//! and spans are kept in reduced echelon form with respect to the global
//! variable order, so identical systems produce identical bases regardless
//! of row order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A structured variable label: a kind tag plus an integer index.
///
/// The total order (kind, then index) fixes pivot choice and output order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId {
    pub kind: &'static str,
    pub index: i64,
}

impl VarId {
    pub fn new(kind: &'static str, index: i64) -> Self {
        VarId { kind, index }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind, self.index)
    }
}

/// A sparse vector over [`VarId`]; zero coefficients are never stored.
pub type SparseVec = BTreeMap<VarId, Rat>;

/// Adds `k` times `src` into `target`, dropping cancelled entries.
pub fn add_scaled(target: &mut SparseVec, src: &SparseVec, k: &Rat) {
    if k.is_zero() {
        return;
    }
    for (var, coeff) in src {
        let add = coeff * k;
        match target.entry(*var) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(add);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &add;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Scales a vector so that its leading coefficient is one.
fn normalize(mut v: SparseVec) -> SparseVec {
    if let Some((_, lead)) = v.first_key_value() {
        let lead = lead.clone();
        if !lead.is_one() {
            for coeff in v.values_mut() {
                *coeff = &*coeff / &lead;
            }
        }
    }
    v
}

fn dot(row: &SparseVec, v: &SparseVec) -> Rat {
    let (small, large) = if row.len() <= v.len() {
        (row, v)
    } else {
        (v, row)
    };
    let mut acc = Rat::zero();
    for (var, c) in small {
        if let Some(d) = large.get(var) {
            acc += &(c * d);
        }
    }
    acc
}

fn render_row(row: &SparseVec) -> String {
    row.iter()
        .map(|(var, c)| format!("{var} {c}"))
        .collect::<Vec<_>>()
        .join("  ")
}

/// A homogeneous sparse linear system over a fixed variable set.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    vars: BTreeSet<VarId>,
    rows: Vec<SparseVec>,
}

impl LinearSystem {
    pub fn new(vars: impl IntoIterator<Item = VarId>) -> Self {
        LinearSystem {
            vars: vars.into_iter().collect(),
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> &BTreeSet<VarId> {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, row: SparseVec) {
        debug_assert!(
            row.keys().all(|v| self.vars.contains(v)),
            "row uses unknown variable"
        );
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// True when the vector satisfies every row exactly.
    pub fn satisfied_by(&self, v: &SparseVec) -> bool {
        self.rows.iter().all(|row| dot(row, v).is_zero())
    }

    /// Rows violated by the vector.
    pub fn residual(&self, v: &SparseVec) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| !dot(row, v).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Normalized, deduplicated rows. Constraint generators emit the same
    /// row from symmetric instances; duplicates carry no information.
    fn canonical_rows(&self) -> Vec<SparseVec> {
        let set: BTreeSet<SparseVec> = self.rows.iter().cloned().map(normalize).collect();
        set.into_iter().collect()
    }

    fn echelon(&self) -> BTreeMap<VarId, SparseVec> {
        let mut pivots: BTreeMap<VarId, SparseVec> = BTreeMap::new();
        for mut row in self.canonical_rows() {
            // eliminate every pivot variable the row touches, not just its
            // leading one; pivot rows carry no other pivot variables, so
            // each step strictly shrinks the pivot support
            while let Some(&hit) = row.keys().find(|v| pivots.contains_key(v)) {
                let c = row.get(&hit).cloned().unwrap();
                let pivot_row = pivots.get(&hit).unwrap().clone();
                add_scaled(&mut row, &pivot_row, &-c);
            }
            if row.is_empty() {
                continue;
            }
            let row = normalize(row);
            let lead = *row.first_key_value().unwrap().0;
            // clear the new pivot's column in the existing rows
            for prow in pivots.values_mut() {
                if let Some(c) = prow.get(&lead).cloned() {
                    add_scaled(prow, &row, &-c);
                }
            }
            pivots.insert(lead, row);
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// A reduced basis of the solution space.
    ///
    /// `dim kernel + rank = number of variables`.
    pub fn kernel(&self) -> SubspaceBasis {
        let pivots = self.echelon();
        let mut vectors = Vec::new();
        for free in self.vars.iter().filter(|v| !pivots.contains_key(v)) {
            let mut v: SparseVec = BTreeMap::new();
            v.insert(*free, Rat::one());
            for (pivot_var, row) in &pivots {
                if let Some(c) = row.get(free) {
                    v.insert(*pivot_var, -c);
                }
            }
            vectors.push(v);
        }
        SubspaceBasis::from_vectors(self.vars.clone(), vectors)
    }

    /// Line-oriented debug dump: one row per line, `var coeff` pairs.
    pub fn dump(&self) -> String {
        self.rows
            .iter()
            .map(render_row)
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A subspace given by a basis in reduced echelon form: leading coefficients
/// are one and leading variables strictly increase.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    vars: BTreeSet<VarId>,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    /// Reduces an arbitrary spanning set to a canonical basis.
    pub fn from_vectors(vars: BTreeSet<VarId>, vectors: Vec<SparseVec>) -> Self {
        let mut sys = LinearSystem {
            vars,
            rows: vectors,
        };
        let pivots = sys.echelon();
        let vectors = pivots.into_values().collect();
        sys.rows.clear();
        SubspaceBasis {
            vars: sys.vars,
            vectors,
        }
    }

    pub fn empty(vars: BTreeSet<VarId>) -> Self {
        SubspaceBasis {
            vars,
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn vars(&self) -> &BTreeSet<VarId> {
        &self.vars
    }

    /// Remainder of `v` after eliminating the basis's leading variables.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for basis_vec in &self.vectors {
            let lead = basis_vec.first_key_value().unwrap().0;
            if let Some(c) = out.get(lead).cloned() {
                add_scaled(&mut out, basis_vec, &-c);
            }
        }
        out
    }

    /// True iff `v` reduces to zero against the basis.
    pub fn in_span(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// `dim(self) − dim(sub)`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &SubspaceBasis) -> Result<usize> {
        for v in &sub.vectors {
            if !self.in_span(v) {
                return Err(Error::NotASubspace(render_row(v)));
            }
        }
        Ok(self.dim() - sub.dim())
    }

    /// Restriction to the variables of a given kind, dropping vectors with
    /// no support there.
    pub fn project_kinds(&self, kinds: &[&'static str]) -> SubspaceBasis {
        let vars = self
            .vars
            .iter()
            .copied()
            .filter(|v| kinds.contains(&v.kind))
            .collect();
        let vectors = self
            .vectors
            .iter()
            .map(|vec| {
                vec.iter()
                    .filter(|(var, _)| kinds.contains(&var.kind))
                    .map(|(var, c)| (*var, c.clone()))
                    .collect::<SparseVec>()
            })
            .filter(|v| !v.is_empty())
            .collect();
        SubspaceBasis::from_vectors(vars, vectors)
    }

    pub fn dump(&self) -> String {
        self.vectors
            .iter()
            .map(render_row)
            .collect::<Vec<_>>()
            .join("\n")
    }
}
