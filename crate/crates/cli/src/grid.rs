//! Default parameter grids and algebra selection.

use wittx::rat::{parse_lambda, parse_rational, Lambda, Rat};
use wittx::Algebra;

/// The default `λ` grid: one point per class split plus a generic rational.
pub fn default_lambda_grid() -> Vec<Lambda> {
    vec![
        Lambda::int(0),
        Lambda::int(-1),
        Lambda::int(1),
        Lambda::Finite(Rat::new(5, 7)),
        Lambda::Infinity,
    ]
}

/// The default `(a,b)` grid: every special pair plus a generic point.
pub fn default_ab_grid() -> Vec<(Rat, Rat)> {
    vec![
        (Rat::int(0), Rat::int(0)),
        (Rat::int(0), Rat::int(1)),
        (Rat::int(0), Rat::int(2)),
        (Rat::int(0), Rat::int(-1)),
        (Rat::new(1, 2), Rat::int(0)),
        (Rat::int(3), Rat::int(4)),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyFilter {
    Witt,
    TensorDensity,
    SeriesA,
    SeriesB,
}

impl FamilyFilter {
    pub fn parse(text: &str) -> Result<Self, String> {
        match text {
            "witt" => Ok(FamilyFilter::Witt),
            "wab" => Ok(FamilyFilter::TensorDensity),
            "wa" => Ok(FamilyFilter::SeriesA),
            "wb" => Ok(FamilyFilter::SeriesB),
            other => Err(format!(
                "unknown algebra {other:?}; expected witt|wab|wa|wb"
            )),
        }
    }
}

/// Parses a comma-separated `λ` list.
pub fn parse_lambda_list(text: &str) -> Result<Vec<Lambda>, String> {
    text.split(',')
        .map(|t| parse_lambda(t).map_err(|e| e.to_string()))
        .collect()
}

/// Resolved selection of algebra instances.
pub struct GridSelection {
    pub family: Option<FamilyFilter>,
    pub lambdas: Vec<Lambda>,
    pub ab_pairs: Vec<(Rat, Rat)>,
}

impl GridSelection {
    pub fn resolve(
        family: Option<&str>,
        lambda: Option<&str>,
        a: Option<&str>,
        b: Option<&str>,
    ) -> Result<Self, String> {
        let family = family.map(FamilyFilter::parse).transpose()?;
        let lambdas = match lambda {
            Some(text) => parse_lambda_list(text)?,
            None => default_lambda_grid(),
        };
        let ab_pairs = match (a, b) {
            (Some(a), Some(b)) => vec![(
                parse_rational(a).map_err(|e| e.to_string())?,
                parse_rational(b).map_err(|e| e.to_string())?,
            )],
            (None, None) => default_ab_grid(),
            _ => return Err("give both --a and --b, or neither".into()),
        };
        Ok(GridSelection {
            family,
            lambdas,
            ab_pairs,
        })
    }

    /// The algebra instances selected, in deterministic grid order:
    /// `W(a,b)` rows first, then `W_A(λ)`, then `W_B(λ)`.
    pub fn algebras(&self) -> Vec<Algebra> {
        let mut out = Vec::new();
        let wants = |f: FamilyFilter| self.family.is_none() || self.family == Some(f);
        if wants(FamilyFilter::TensorDensity) {
            for (a, b) in &self.ab_pairs {
                out.push(Algebra::tensor_density(a.clone(), b.clone()));
            }
        }
        if wants(FamilyFilter::SeriesA) {
            for l in &self.lambdas {
                out.push(Algebra::series_a(l.clone()));
            }
        }
        if wants(FamilyFilter::SeriesB) {
            for l in &self.lambdas {
                out.push(Algebra::series_b(l.clone()));
            }
        }
        if self.family == Some(FamilyFilter::Witt) {
            out.push(Algebra::witt());
        }
        out
    }
}
