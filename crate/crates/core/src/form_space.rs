//! Convex-form spaces.
//!
//! A convex form on a polytope `C` is an affine functional with values in
//! `[0, 1]` on `C`. It is stored as its value vector on the extreme points
//! of `C` (in `C`'s canonical vertex order). A vector of values extends to
//! an affine functional exactly when it is orthogonal to every affine
//! dependency of the vertices, so the form space is the polytope
//!
//! ```text
//! { p : 0 <= p_j <= 1,  lambda . p = 0 for every dependency lambda }.
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{add, dot, sub, Matrix, Vector};
use crate::lp::HSystem;
use crate::polytope::{affine_dependencies, vertices_of_hsystem, VPolytope};
use crate::scalar::{to_strings, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form<S> {
    values: Vector<S>,
}

impl<S: Scalar> Form<S> {
    pub fn new(values: Vector<S>) -> Self {
        Self { values }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![S::zero(); len])
    }

    pub fn unit(len: usize) -> Self {
        Self::new(vec![S::one(); len])
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vector<S> {
        self.values
    }

    /// `unit - self`.
    pub fn complement(&self) -> Self {
        Self::new(self.values.iter().map(|v| S::one() - v).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::new(add(&self.values, &other.values))
    }

    pub fn to_strings(&self) -> Vec<String> {
        to_strings(&self.values)
    }
}

#[derive(Clone, Debug)]
pub struct FormSpace<S> {
    base: VPolytope<S>,
    dependency_basis: Vec<Vector<S>>,
    system: HSystem<S>,
    polytope: VPolytope<S>,
}

/// Build the form space of `base` and enumerate its extreme forms.
pub fn build_form_space<S: Scalar>(base: &VPolytope<S>) -> Result<FormSpace<S>> {
    if base.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = base.vertices().len();
    let dependency_basis = affine_dependencies(base.vertices())?;
    let mut system = HSystem::new(m);
    for j in 0..m {
        let mut e = vec![S::zero(); m];
        e[j] = S::one();
        system.push_lower_bound(e.clone(), S::zero())?;
        system.push_inequality(e, S::one())?;
    }
    for dep in &dependency_basis {
        system.push_equality(dep.clone(), S::zero())?;
    }
    let polytope = vertices_of_hsystem(&system)?;
    Ok(FormSpace {
        base: base.clone(),
        dependency_basis,
        system,
        polytope,
    })
}

impl<S: Scalar> FormSpace<S> {
    pub fn base(&self) -> &VPolytope<S> {
        &self.base
    }

    pub fn dependency_basis(&self) -> &[Vector<S>] {
        &self.dependency_basis
    }

    pub fn system(&self) -> &HSystem<S> {
        &self.system
    }

    /// The form space as a polytope in value coordinates.
    pub fn polytope(&self) -> &VPolytope<S> {
        &self.polytope
    }

    /// Extreme forms in lexicographic order of their value vectors.
    pub fn extreme_forms(&self) -> Vec<Form<S>> {
        self.polytope
            .vertices()
            .iter()
            .cloned()
            .map(Form::new)
            .collect()
    }

    pub fn extreme_count(&self) -> usize {
        self.polytope.vertices().len()
    }

    pub fn extreme_index(&self, form: &Form<S>) -> Option<usize> {
        self.polytope.index_of(form.values())
    }

    pub fn is_extreme(&self, form: &Form<S>) -> bool {
        self.extreme_index(form).is_some()
    }

    pub fn contains(&self, form: &Form<S>) -> bool {
        self.system.contains(form.values())
    }

    pub fn zero_form(&self) -> Form<S> {
        Form::zero(self.base.vertices().len())
    }

    pub fn unit_form(&self) -> Form<S> {
        Form::unit(self.base.vertices().len())
    }

    /// Affine dimension of the base model.
    pub fn base_dimension(&self) -> usize {
        self.base.dimension().unwrap_or(0)
    }

    /// Affine dimension of the form space itself; one more than the base,
    /// the extra direction being the constant functionals.
    pub fn dimension(&self) -> usize {
        self.polytope.dimension().unwrap_or(0)
    }

    /// `sum_j weights_j * u(s_j)`.
    pub fn evaluate(&self, form: &Form<S>, weights: &[S]) -> Result<S> {
        let m = self.base.vertices().len();
        if weights.len() != m || form.values().len() != m {
            return Err(Error::InvalidWeights(format!(
                "expected {m} weights and values"
            )));
        }
        if weights.iter().any(Scalar::is_negative) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        let total = weights.iter().fold(S::zero(), |a, w| a + w);
        if total != S::one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(dot(weights, form.values()))
    }

    /// Value of the affine extension of `form` at a point of `aff(C)`.
    ///
    /// Any affine decomposition of the point gives the same answer because
    /// form values annihilate the vertex dependencies.
    pub fn evaluate_at(&self, form: &Form<S>, point: &[S]) -> Result<S> {
        let weights = affine_coordinates(self.base.vertices(), point)?;
        Ok(dot(&weights, form.values()))
    }

    /// Unordered pairs `{i, j}` (`i < j`) of extreme forms summing to the
    /// unit form.
    pub fn unit_decompositions(&self) -> Vec<(usize, usize)> {
        let forms = self.extreme_forms();
        let unit = self.unit_form();
        let mut pairs = Vec::new();
        for (i, u) in forms.iter().enumerate() {
            if let Some(j) = self.extreme_index(&u.complement()) {
                if i < j {
                    debug_assert_eq!(u.plus(&forms[j]), unit);
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Two extreme forms whose midpoint is `form`, if any.
    pub fn midpoint_pair(&self, form: &Form<S>) -> Option<(usize, usize)> {
        let forms = self.polytope.vertices();
        let twice: Vector<S> = form.values().iter().map(|v| v.clone() + v).collect();
        for (i, f) in forms.iter().enumerate() {
            let other = sub(&twice, f);
            if let Some(j) = self.polytope.index_of(&other) {
                if i < j {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn report(&self) -> FormSpaceReport {
        FormSpaceReport {
            vertices: self.base.vertex_strings(),
            dependency_basis: self
                .dependency_basis
                .iter()
                .map(|d| to_strings(d))
                .collect(),
            extreme_forms: self.polytope.vertex_strings(),
            unit_pairs: self.unit_decompositions(),
            base_dimension: self.base_dimension(),
            form_space_dimension: self.dimension(),
        }
    }
}

/// Some affine weights `lambda` (summing to 1) with `sum lambda_j v_j = x`.
pub fn affine_coordinates<S: Scalar>(vertices: &[Vector<S>], x: &[S]) -> Result<Vector<S>> {
    let dim = x.len();
    let mut cols = Vec::with_capacity(vertices.len());
    for v in vertices {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let mut c = v.clone();
        c.push(S::one());
        cols.push(c);
    }
    let mut rhs = x.to_vec();
    rhs.push(S::one());
    Matrix::from_columns(&cols)?
        .solve(&rhs)
        .ok_or_else(|| Error::NotAMember {
            point: to_strings(x).join(", "),
        })
}

/// Form-space report, scalars in exact text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormSpaceReport {
    pub vertices: Vec<Vec<String>>,
    pub dependency_basis: Vec<Vec<String>>,
    pub extreme_forms: Vec<Vec<String>>,
    pub unit_pairs: Vec<(usize, usize)>,
    pub base_dimension: usize,
    pub form_space_dimension: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn poly(raw: &[&[i64]]) -> VPolytope<Rational> {
        VPolytope::new(
            raw.iter()
                .map(|p| p.iter().map(|&x| r(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn point_has_two_extreme_forms() {
        let p = poly(&[&[2, 3]]);
        let fs = build_form_space(&p).unwrap();
        let forms = fs.extreme_forms();
        assert_eq!(forms, vec![Form::new(vec![r(0)]), Form::new(vec![r(1)])]);
        assert_eq!(fs.dimension(), 1);
        assert_eq!(fs.base_dimension(), 0);
    }

    #[test]
    fn square_has_six_extreme_forms() {
        let sq = poly(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let fs = build_form_space(&sq).unwrap();
        assert_eq!(fs.extreme_count(), 6);
        // {0, u} plus two opposite-edge pairs.
        assert_eq!(fs.unit_decompositions().len(), 3);
    }

    #[test]
    fn evaluate_checks_weights() {
        let seg = poly(&[&[0], &[2]]);
        let fs = build_form_space(&seg).unwrap();
        let f = Form::new(vec![r(0), r(1)]);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            fs.evaluate(&f, &[half.clone(), half.clone()]).unwrap(),
            half
        );
        assert!(fs.evaluate(&f, &[r(1), r(1)]).is_err());
        assert!(fs.evaluate(&f, &[r(2), r(-1)]).is_err());
        assert!(fs.evaluate(&f, &[r(1)]).is_err());
        assert_eq!(fs.evaluate_at(&f, &[r(1)]).unwrap(), half);
    }

    #[test]
    fn evaluate_at_rejects_points_off_the_hull() {
        let seg = poly(&[&[0, 0], &[2, 0]]);
        let fs = build_form_space(&seg).unwrap();
        assert!(fs.evaluate_at(&fs.unit_form(), &[r(1), r(1)]).is_err());
    }
}
