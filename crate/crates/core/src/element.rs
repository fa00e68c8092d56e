//! Basis symbols and finitely-supported linear combinations.

use std::collections::BTreeMap;
use std::fmt;

use crate::rat::Rat;

/// The three kinds of basis symbols.
///
/// `L` is the Witt family; `M` is the module family, printed as `I`, `A`, or
/// `B` depending on the algebra it lives in; `C(name)` is a named central
/// generator of an extension. Ordering is by family, then degree, then name,
/// giving a stable output order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    L,
    M,
    C(String),
}

/// A basis symbol: a family tag plus an integer degree.
///
/// Central generators always have degree zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Basis {
    pub family: Family,
    pub degree: i64,
}

impl Basis {
    /// The Witt generator `L_n`.
    pub fn el(n: i64) -> Self {
        Basis {
            family: Family::L,
            degree: n,
        }
    }

    /// The module generator of index `n` (`I_n`, `A_n`, or `B_n`).
    pub fn md(n: i64) -> Self {
        Basis {
            family: Family::M,
            degree: n,
        }
    }

    /// The central generator `c[name]`.
    pub fn central(name: &str) -> Self {
        Basis {
            family: Family::C(name.to_string()),
            degree: 0,
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self.family, Family::C(_))
    }

    fn render(&self, module_letter: char) -> String {
        match &self.family {
            Family::L => format!("L[{}]", self.degree),
            Family::M => format!("{}[{}]", module_letter, self.degree),
            Family::C(name) => format!("c[{name}]"),
        }
    }
}

/// A finitely-supported rational linear combination of basis symbols.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Basis, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(b: Basis) -> Self {
        Element::term(b, Rat::one())
    }

    pub fn term(b: Basis, coeff: Rat) -> Self {
        let mut e = Element::zero();
        e.add_term(b, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: &Basis) -> Rat {
        self.terms.get(b).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, b: Basis, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(b.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * k)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    /// True when every non-central term has the given degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.iter()
            .all(|(b, _)| b.is_central() || b.degree == degree)
    }

    /// Canonical text form, e.g. `-2*L[0] + 1/2*A[3] + 1*c[vir]`.
    ///
    /// Terms appear in (family, degree, name) order; the module letter is
    /// supplied by the algebra the element belongs to.
    pub fn render(&self, module_letter: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(b, c)| format!("{}*{}", c, b.render(module_letter)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('X'))
    }
}

impl FromIterator<(Basis, Rat)> for Element {
    fn from_iter<T: IntoIterator<Item = (Basis, Rat)>>(iter: T) -> Self {
        let mut e = Element::zero();
        for (b, c) in iter {
            e.add_term(b, c);
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_vanish() {
        let mut e = Element::basis(Basis::el(2));
        e.add_term(Basis::el(2), Rat::int(-1));
        assert!(e.is_zero());
        e.add_term(Basis::md(1), Rat::zero());
        assert!(e.is_zero());
    }

    #[test]
    fn render_is_ordered_and_canonical() {
        let mut e = Element::zero();
        e.add_term(Basis::md(3), Rat::new(1, 2));
        e.add_term(Basis::el(0), Rat::int(-2));
        e.add_term(Basis::central("vir"), Rat::one());
        assert_eq!(e.render('A'), "-2*L[0] + 1/2*A[3] + 1*c[vir]");
        assert_eq!(Element::zero().render('A'), "0");
    }

    #[test]
    fn central_sorts_after_module() {
        let mut e = Element::zero();
        e.add_term(Basis::central("ab"), Rat::one());
        e.add_term(Basis::md(-5), Rat::one());
        e.add_term(Basis::el(7), Rat::one());
        let names: Vec<_> = e.iter().map(|(b, _)| b.render('B')).collect();
        assert_eq!(names, ["L[7]", "B[-5]", "c[ab]"]);
    }
}
