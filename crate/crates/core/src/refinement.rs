//! Partial affine maps between polytopes and between form spaces.
//!
//! A map is given by finitely many assignments `source_i -> target_i`. It
//! is well defined on `conv(sources)` exactly when every affine dependency
//! among the sources also holds among the targets; the constructor checks
//! this and returns the violated dependency otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form_space::{Form, FormSpace};
use crate::linalg::{
    add, affine_rank, centroid, combine, dot, is_zero_vector, sub, Matrix, Vector,
};
use crate::lp::HSystem;
use crate::polytope::{affine_dependencies, vertices_of_hsystem, VPolytope};
use crate::scalar::{to_strings, Scalar};

#[derive(Clone, Debug)]
pub struct PartialAffineMap<S> {
    sources: Vec<Vector<S>>,
    targets: Vec<Vector<S>>,
    domain: VPolytope<S>,
    /// Image of each domain vertex, aligned with `domain.vertices()`.
    vertex_images: Vec<Vector<S>>,
    kernel: Vec<Vector<S>>,
}

/// Build a partial affine map from `(source, target)` pairs.
pub fn make_partial_affine_map<S: Scalar>(
    assignments: Vec<(Vector<S>, Vector<S>)>,
) -> Result<PartialAffineMap<S>> {
    if assignments.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (sources, targets): (Vec<_>, Vec<_>) = assignments.into_iter().unzip();
    let target_dim = targets[0].len();
    if let Some(t) = targets.iter().find(|t| t.len() != target_dim) {
        return Err(Error::DimensionMismatch {
            expected: target_dim,
            found: t.len(),
        });
    }
    for dep in affine_dependencies(&sources)? {
        if !is_zero_vector(&combine(&dep, &targets)) {
            return Err(Error::InconsistentAssignment {
                dependency: to_strings(&dep).join(", "),
            });
        }
    }
    let domain = VPolytope::new(sources.clone())?;
    let vertex_images = domain
        .vertices()
        .iter()
        .map(|v| {
            let i = sources
                .iter()
                .position(|s| s == v)
                .expect("vertex is a source");
            targets[i].clone()
        })
        .collect();
    let kernel = kernel_basis(&sources, &targets)?;
    Ok(PartialAffineMap {
        sources,
        targets,
        domain,
        vertex_images,
        kernel,
    })
}

/// Basis of the null space of the linear part, inside the direction space
/// of the sources' affine hull.
fn kernel_basis<S: Scalar>(sources: &[Vector<S>], targets: &[Vector<S>]) -> Result<Vec<Vector<S>>> {
    if sources.len() < 2 {
        return Ok(Vec::new());
    }
    let sd: Vec<_> = sources[1..].iter().map(|s| sub(s, &sources[0])).collect();
    let td: Vec<_> = targets[1..].iter().map(|t| sub(t, &targets[0])).collect();
    let coeffs = if td[0].is_empty() {
        // Target is zero-dimensional: every direction is in the kernel.
        (0..td.len())
            .map(|i| {
                (0..td.len())
                    .map(|j| S::from_i64((i == j) as i64))
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_columns(&td)?.nullspace()
    };
    let vectors: Vec<Vector<S>> = coeffs.iter().map(|c| combine(c, &sd)).collect();
    let vectors: Vec<Vector<S>> = vectors.into_iter().filter(|v| !is_zero_vector(v)).collect();
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let (red, pivots) = Matrix::from_rows(&vectors)?.rref();
    Ok((0..pivots.len()).map(|i| red.row(i).to_vec()).collect())
}

impl<S: Scalar> PartialAffineMap<S> {
    pub fn sources(&self) -> &[Vector<S>] {
        &self.sources
    }

    pub fn targets(&self) -> &[Vector<S>] {
        &self.targets
    }

    /// `conv(sources)`.
    pub fn domain(&self) -> &VPolytope<S> {
        &self.domain
    }

    pub fn vertex_images(&self) -> &[Vector<S>] {
        &self.vertex_images
    }

    pub fn kernel_basis(&self) -> &[Vector<S>] {
        &self.kernel
    }

    pub fn image_dimension(&self) -> usize {
        affine_rank(&self.targets).unwrap_or(0)
    }

    pub fn apply(&self, x: &[S]) -> Result<Vector<S>> {
        let weights = self
            .domain
            .convex_weights(x)
            .ok_or_else(|| Error::OutsideDomain {
                point: to_strings(x).join(", "),
            })?;
        Ok(combine(&weights, &self.vertex_images))
    }

    /// `conv` of the images of the domain vertices.
    pub fn image(&self) -> Result<VPolytope<S>> {
        VPolytope::new(self.vertex_images.clone())
    }

    /// `{x in domain : F(x) = y}` as a V-polytope (possibly empty).
    ///
    /// Solved in weight space over the domain vertices, then mapped back.
    pub fn preimage(&self, y: &[S]) -> Result<VPolytope<S>> {
        let verts = self.domain.vertices();
        let k = verts.len();
        let ambient = self.domain.ambient_dim();
        let target_dim = self.vertex_images[0].len();
        if y.len() != target_dim {
            return Err(Error::DimensionMismatch {
                expected: target_dim,
                found: y.len(),
            });
        }
        let mut sys = HSystem::new(k);
        for c in 0..target_dim {
            let normal: Vec<S> = self.vertex_images.iter().map(|t| t[c].clone()).collect();
            if is_zero_vector(&normal) {
                if !y[c].is_zero() {
                    return Ok(VPolytope::empty(ambient));
                }
                continue;
            }
            sys.push_equality(normal, y[c].clone())?;
        }
        sys.push_equality(vec![S::one(); k], S::one())?;
        for j in 0..k {
            let mut e = vec![S::zero(); k];
            e[j] = S::one();
            sys.push_lower_bound(e, S::zero())?;
        }
        let weights = vertices_of_hsystem(&sys)?;
        if weights.is_empty() {
            return Ok(VPolytope::empty(ambient));
        }
        let points = weights
            .vertices()
            .iter()
            .map(|w| combine(w, verts))
            .collect();
        VPolytope::new(points)
    }

    /// `(x0 + span(kernel)) ∩ domain`, computed from the domain's facets.
    fn kernel_slice(&self, x0: &[S]) -> Result<VPolytope<S>> {
        if self.kernel.is_empty() {
            return VPolytope::new(vec![x0.to_vec()]);
        }
        let facets = self.domain.facets()?;
        let kdim = self.kernel.len();
        let mut sys = HSystem::new(kdim);
        for row in facets.inequalities() {
            let normal: Vec<S> = self.kernel.iter().map(|kv| dot(&row.normal, kv)).collect();
            let slack = row.offset.clone() - &dot(&row.normal, x0);
            if is_zero_vector(&normal) {
                debug_assert!(!slack.is_negative());
                continue;
            }
            sys.push_inequality(normal, slack)?;
        }
        let coords = vertices_of_hsystem(&sys)?;
        let points = coords
            .vertices()
            .iter()
            .map(|c| add(x0, &combine(c, &self.kernel)))
            .collect();
        VPolytope::new(points)
    }

    /// Is this map a parallel projection of its domain onto `target`?
    ///
    /// Fibers are compared against kernel translates over every domain
    /// vertex and the domain centroid.
    pub fn is_parallel_projection_onto(
        &self,
        target: &VPolytope<S>,
    ) -> Result<ProjectionVerdict<S>> {
        let surjective = self.image()? == *target;
        let mut samples: Vec<Vector<S>> = self.domain.vertices().to_vec();
        samples.push(centroid(self.domain.vertices()));
        let mut fibers_are_translates = true;
        let mut fiber_dimensions = Vec::with_capacity(samples.len());
        for x0 in &samples {
            let fiber = self.preimage(&self.apply(x0)?)?;
            let slice = self.kernel_slice(x0)?;
            fiber_dimensions.push(fiber.dimension().map_or(-1, |d| d as i32));
            if fiber != slice {
                fibers_are_translates = false;
            }
        }
        Ok(ProjectionVerdict {
            surjective,
            kernel_basis: self.kernel.clone(),
            fibers_are_translates,
            fiber_dimensions,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionVerdict<S> {
    pub surjective: bool,
    pub kernel_basis: Vec<Vector<S>>,
    pub fibers_are_translates: bool,
    /// Dimension of each sampled fiber (domain vertices, then centroid).
    pub fiber_dimensions: Vec<i32>,
}

impl<S> ProjectionVerdict<S> {
    pub fn holds(&self) -> bool {
        self.surjective && self.fibers_are_translates
    }

    pub fn kernel_dimension(&self) -> usize {
        self.kernel_basis.len()
    }
}

/// A partial affine map between two form spaces, acting on value vectors.
#[derive(Clone, Debug)]
pub struct DualFormMap<S> {
    source_space: FormSpace<S>,
    target_space: FormSpace<S>,
    assignments: Vec<(Form<S>, Form<S>)>,
    map: PartialAffineMap<S>,
}

/// Build a form map; `0 -> 0` and `unit -> unit` are added when absent and
/// rejected when contradicted.
pub fn make_dual_form_map<S: Scalar>(
    source_space: &FormSpace<S>,
    target_space: &FormSpace<S>,
    assignments: Vec<(Form<S>, Form<S>)>,
) -> Result<DualFormMap<S>> {
    let (z_src, u_src) = (source_space.zero_form(), source_space.unit_form());
    let (z_tgt, u_tgt) = (target_space.zero_form(), target_space.unit_form());
    for (src, tgt) in &assignments {
        if !source_space.contains(src) {
            return Err(Error::NotAMember {
                point: src.to_strings().join(", "),
            });
        }
        if !target_space.contains(tgt) {
            return Err(Error::NotAMember {
                point: tgt.to_strings().join(", "),
            });
        }
        if *src == z_src && *tgt != z_tgt {
            return Err(Error::UnitPreservation("the zero form to the zero form"));
        }
        if *src == u_src && *tgt != u_tgt {
            return Err(Error::UnitPreservation("the unit form to the unit form"));
        }
    }
    let mut assignments = assignments;
    if !assignments.iter().any(|(s, _)| *s == z_src) {
        assignments.insert(0, (z_src, z_tgt));
    }
    if !assignments.iter().any(|(s, _)| *s == u_src) {
        assignments.push((u_src, u_tgt));
    }
    let map = make_partial_affine_map(
        assignments
            .iter()
            .map(|(s, t)| (s.values().to_vec(), t.values().to_vec()))
            .collect(),
    )?;
    Ok(DualFormMap {
        source_space: source_space.clone(),
        target_space: target_space.clone(),
        assignments,
        map,
    })
}

impl<S: Scalar> DualFormMap<S> {
    pub fn source_space(&self) -> &FormSpace<S> {
        &self.source_space
    }

    pub fn target_space(&self) -> &FormSpace<S> {
        &self.target_space
    }

    pub fn assignments(&self) -> &[(Form<S>, Form<S>)] {
        &self.assignments
    }

    /// The underlying map on value vectors.
    pub fn as_affine_map(&self) -> &PartialAffineMap<S> {
        &self.map
    }

    pub fn domain(&self) -> &VPolytope<S> {
        self.map.domain()
    }

    pub fn apply(&self, form: &Form<S>) -> Result<Form<S>> {
        self.map.apply(form.values()).map(Form::new)
    }

    /// Forms in `domain(G)` sent to `form`.
    pub fn preimage(&self, form: &Form<S>) -> Result<VPolytope<S>> {
        self.map.preimage(form.values())
    }
}

/// One generator pair of the compatibility check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityRow {
    /// Index into `domain(G).vertices()`.
    pub form_index: usize,
    /// Index into `domain(F).vertices()`.
    pub point_index: usize,
    /// `G(w)` evaluated at `F(t)`.
    pub lhs: String,
    /// `w` evaluated at `t`.
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub verdict: bool,
    pub rows: Vec<CompatibilityRow>,
}

/// Check `G(w)(F(t)) = w(t)` on every pair of generators of `domain(G)` and
/// `domain(F)`; both sides are affine in each argument, so this settles the
/// identity on the full domains.
pub fn check_compatibility<S: Scalar>(
    f: &PartialAffineMap<S>,
    g: &DualFormMap<S>,
) -> Result<CompatibilityReport> {
    let mut rows = Vec::new();
    for (wi, w) in g.domain().vertices().iter().enumerate() {
        let w = Form::new(w.clone());
        let gw = g.apply(&w)?;
        for (ti, t) in f.domain().vertices().iter().enumerate() {
            let ft = f.apply(t)?;
            let lhs = g.target_space().evaluate_at(&gw, &ft)?;
            let rhs = g.source_space().evaluate_at(&w, t)?;
            rows.push(CompatibilityRow {
                form_index: wi,
                point_index: ti,
                equal: lhs == rhs,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(CompatibilityReport {
        verdict: rows.iter().all(|r| r.equal),
        rows,
    })
}

/// `G(w)(F(t)) == w(t)` at a single pair of points (not just generators).
pub fn compatible_at<S: Scalar>(
    f: &PartialAffineMap<S>,
    g: &DualFormMap<S>,
    w: &Form<S>,
    t: &[S],
) -> Result<bool> {
    let lhs = g.target_space().evaluate_at(&g.apply(w)?, &f.apply(t)?)?;
    let rhs = g.source_space().evaluate_at(w, t)?;
    Ok(lhs == rhs)
}
