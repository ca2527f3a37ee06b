//! V-polytopes over an exact ordered field.
//!
//! Vertices are always kept pruned (every stored point extreme) and in
//! lexicographic order, so every derived object is reproducible. Facet and
//! vertex enumeration are exhaustive subset searches; that is fine for the
//! desk-scale instances this crate targets and is capped at
//! [`MAX_DIMENSION`].

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{affine_rank, dot, is_zero_vector, sub, Matrix, Vector};
use crate::lp::{self, convex_weights, lp_feasible, Feasibility, HRow, HSystem};
use crate::scalar::{to_strings, Scalar};

/// Largest affine dimension handled by facet and vertex enumeration.
pub const MAX_DIMENSION: usize = 7;

/// Basis of `{lambda : sum lambda_j = 0, sum lambda_j p_j = 0}`.
///
/// Empty iff the points are affinely independent.
pub fn affine_dependencies<S: Scalar>(points: &[Vector<S>]) -> Result<Vec<Vector<S>>> {
    let dim = check_points(points)?;
    let mut rows: Vec<Vector<S>> = (0..dim)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    rows.push(vec![S::one(); points.len()]);
    Ok(Matrix::from_rows(&rows)?.nullspace())
}

fn check_points<S: Scalar>(points: &[Vector<S>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    Ok(dim)
}

/// Sorted, deduplicated points that are not in the hull of the others.
pub fn extreme_points<S: Scalar>(points: &[Vector<S>]) -> Result<Vec<Vector<S>>> {
    check_points(points)?;
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let others: Vec<Vector<S>> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            others.is_empty() || convex_weights(&others, &pts[i]).is_none()
        })
        .collect();
    Ok(pts
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect())
}

/// A face, named by the indices of the polytope vertices it contains.
///
/// `dimension` is -1 for the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dimension: i32,
}

impl Face {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct VPolytope<S> {
    ambient_dim: usize,
    vertices: Vec<Vector<S>>,
    dim: Option<usize>,
    duplicates_removed: usize,
    non_extreme_removed: usize,
    facets: OnceLock<Result<HSystem<S>>>,
}

impl<S: Scalar> PartialEq for VPolytope<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl<S: Scalar> Eq for VPolytope<S> {}

impl<S: Scalar> VPolytope<S> {
    /// Convex hull of `points`; duplicates and non-extreme points are
    /// dropped.
    pub fn new(points: Vec<Vector<S>>) -> Result<Self> {
        let ambient_dim = check_points(&points)?;
        let distinct: BTreeSet<&Vector<S>> = points.iter().collect();
        let duplicates_removed = points.len() - distinct.len();
        let vertices = extreme_points(&points)?;
        let non_extreme_removed = distinct.len() - vertices.len();
        Ok(Self::from_vertices(
            ambient_dim,
            vertices,
            duplicates_removed,
            non_extreme_removed,
        ))
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self::from_vertices(ambient_dim, Vec::new(), 0, 0)
    }

    fn from_vertices(
        ambient_dim: usize,
        vertices: Vec<Vector<S>>,
        duplicates_removed: usize,
        non_extreme_removed: usize,
    ) -> Self {
        let dim = affine_rank(&vertices);
        Self {
            ambient_dim,
            vertices,
            dim,
            duplicates_removed,
            non_extreme_removed,
            facets: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[Vector<S>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dimension(&self) -> Option<usize> {
        self.dim
    }

    pub fn duplicates_removed(&self) -> usize {
        self.duplicates_removed
    }

    pub fn non_extreme_removed(&self) -> usize {
        self.non_extreme_removed
    }

    pub fn index_of(&self, x: &[S]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(x)).ok()
    }

    pub fn is_extreme(&self, x: &[S]) -> bool {
        self.index_of(x).is_some()
    }

    pub fn is_simplex(&self) -> bool {
        self.dim.is_some_and(|d| self.vertices.len() == d + 1)
    }

    pub fn contains(&self, x: &[S]) -> bool {
        x.len() == self.ambient_dim && convex_weights(&self.vertices, x).is_some()
    }

    /// Convex weights of `x` over the vertices, if it is a member.
    pub fn convex_weights(&self, x: &[S]) -> Option<Vector<S>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        convex_weights(&self.vertices, x)
    }

    /// Membership decided by the general LP, returning a witness or a
    /// Farkas certificate over the weight system.
    pub fn membership(&self, x: &[S]) -> Result<(HSystem<S>, Feasibility<S>)> {
        let sys = lp::membership_system(&self.vertices, x)?;
        let verdict = lp_feasible(&sys);
        Ok((sys, verdict))
    }

    /// Base vertex and a basis of the direction space of the affine hull.
    pub fn affine_hull(&self) -> Option<(Vector<S>, Vec<Vector<S>>)> {
        let (base, rest) = self.vertices.split_first()?;
        let diffs: Vec<_> = rest.iter().map(|v| sub(v, base)).collect();
        if diffs.is_empty() {
            return Some((base.clone(), Vec::new()));
        }
        let (red, pivots) = Matrix::from_rows(&diffs).ok()?.rref();
        let basis = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Some((base.clone(), basis))
    }

    /// Irredundant facet inequalities plus affine-hull equalities.
    pub fn facets(&self) -> Result<&HSystem<S>> {
        self.facets
            .get_or_init(|| compute_facets(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn face_from_indices(&self, vertices: Vec<usize>) -> Face {
        let pts: Vec<Vector<S>> = vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        let dimension = affine_rank(&pts).map_or(-1, |d| d as i32);
        Face {
            vertices,
            dimension,
        }
    }

    pub fn whole_face(&self) -> Face {
        self.face_from_indices((0..self.vertices.len()).collect())
    }

    /// The smallest face containing `x`: the vertices on every facet that
    /// is tight at `x`.
    pub fn minimal_face_containing(&self, x: &[S]) -> Result<Face> {
        if !self.contains(x) {
            return Err(Error::NotAMember {
                point: to_strings(x).join(", "),
            });
        }
        let facets = self.facets()?;
        let tight: Vec<&HRow<S>> = facets
            .inequalities()
            .iter()
            .filter(|r| r.value_at(x) == r.offset)
            .collect();
        let idx = (0..self.vertices.len())
            .filter(|&i| {
                tight
                    .iter()
                    .all(|r| r.value_at(&self.vertices[i]) == r.offset)
            })
            .collect();
        Ok(self.face_from_indices(idx))
    }

    pub fn face_intersection(&self, f: &Face, g: &Face) -> Face {
        let a: BTreeSet<usize> = f.vertices.iter().copied().collect();
        let idx = g
            .vertices
            .iter()
            .copied()
            .filter(|i| a.contains(i))
            .collect();
        self.face_from_indices(idx)
    }

    pub fn vertex_strings(&self) -> Vec<Vec<String>> {
        self.vertices.iter().map(|v| to_strings(v)).collect()
    }
}

/// Lexicographic k-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let current = state.clone()?;
        let mut next = current.clone();
        let mut i = k;
        state = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(current)
    })
}

/// Scale so the first nonzero entry has absolute value 1 (sign kept).
fn normalize_row<S: Scalar>(normal: Vector<S>, offset: S) -> (Vector<S>, S) {
    let lead = normal
        .iter()
        .find(|c| !c.is_zero())
        .cloned()
        .expect("nonzero normal");
    let mag = if lead.is_negative() { -lead } else { lead };
    let normal = normal.into_iter().map(|c| c / &mag).collect();
    (normal, offset / mag)
}

fn compute_facets<S: Scalar>(p: &VPolytope<S>) -> Result<HSystem<S>> {
    let n = p.ambient_dim;
    let mut sys = HSystem::new(n);
    let Some((base, dirs)) = p.affine_hull() else {
        return Err(Error::EmptyInput);
    };
    let d = dirs.len();
    if d > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dim: d,
            cap: MAX_DIMENSION,
        });
    }

    // Affine hull: normals orthogonal to the direction space.
    let complement = if d == 0 {
        (0..n)
            .map(|k| {
                let mut e = vec![S::zero(); n];
                e[k] = S::one();
                e
            })
            .collect()
    } else {
        Matrix::from_rows(&dirs)?.nullspace()
    };
    let mut eqs: Vec<(Vector<S>, S)> = complement
        .into_iter()
        .map(|c| {
            let off = dot(&c, &base);
            normalize_row(c, off)
        })
        .collect();
    eqs.sort();
    for (c, off) in eqs {
        sys.push_equality(c, off)?;
    }
    if d == 0 {
        return Ok(sys);
    }

    // Facet hyperplanes: normals inside the direction space, orthogonal to
    // d-1 independent differences of a d-subset of vertices.
    let verts = &p.vertices;
    let gram = |w: &[S]| -> Vector<S> { dirs.iter().map(|b| dot(b, w)).collect() };
    let mut found: BTreeSet<(Vector<S>, S)> = BTreeSet::new();
    for subset in combinations(verts.len(), d) {
        let anchor = &verts[subset[0]];
        let rows: Vec<Vector<S>> = subset[1..]
            .iter()
            .map(|&i| gram(&sub(&verts[i], anchor)))
            .collect();
        let null = if rows.is_empty() {
            vec![vec![S::one()]]
        } else {
            Matrix::from_rows(&rows)?.nullspace()
        };
        if null.len() != 1 {
            continue;
        }
        let coeffs = &null[0];
        let mut normal = vec![S::zero(); n];
        for (c, b) in coeffs.iter().zip(&dirs) {
            for (x, y) in normal.iter_mut().zip(b) {
                *x = x.clone() + c.clone() * y;
            }
        }
        if is_zero_vector(&normal) {
            continue;
        }
        let level = dot(&normal, anchor);
        let values: Vec<S> = verts.iter().map(|v| dot(&normal, v)).collect();
        let (normal, level) = if values.iter().all(|v| *v <= level) {
            (normal, level)
        } else if values.iter().all(|v| *v >= level) {
            (normal.into_iter().map(|c| -c).collect(), -level)
        } else {
            continue;
        };
        found.insert(normalize_row(normal, level));
    }
    for (c, off) in found {
        sys.push_inequality(c, off)?;
    }
    Ok(sys)
}

/// Vertices of a bounded H-system, by enumerating basic solutions over
/// subsets of active inequalities.
pub fn vertices_of_hsystem<S: Scalar>(sys: &HSystem<S>) -> Result<VPolytope<S>> {
    let n = sys.dim();
    let x0 = match lp_feasible(sys) {
        Feasibility::Feasible { witness } => witness,
        Feasibility::Infeasible { .. } => return Ok(VPolytope::empty(n)),
    };

    // Parametrize the equality solutions as x0 + N z.
    let basis = if sys.equalities().is_empty() {
        (0..n)
            .map(|i| (0..n).map(|k| S::from_i64((i == k) as i64)).collect())
            .collect()
    } else {
        let rows: Vec<Vector<S>> = sys.equalities().iter().map(|r| r.normal.clone()).collect();
        Matrix::from_rows(&rows)?.nullspace()
    };
    let free = basis.len();
    if free > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dim: free,
            cap: MAX_DIMENSION,
        });
    }
    if free == 0 {
        return Ok(VPolytope::from_vertices(n, vec![x0], 0, 0));
    }
    let reduced: Vec<HRow<S>> = sys
        .inequalities()
        .iter()
        .map(|r| HRow {
            normal: basis.iter().map(|b| dot(&r.normal, b)).collect(),
            offset: r.offset.clone() - &r.value_at(&x0),
        })
        .filter(|r| !is_zero_vector(&r.normal))
        .collect();
    check_bounded(&reduced, free)?;

    let lift = |z: &[S]| -> Vector<S> {
        let mut x = x0.clone();
        for (zi, b) in z.iter().zip(&basis) {
            for (xk, bk) in x.iter_mut().zip(b) {
                *xk = xk.clone() + &(zi.clone() * bk);
            }
        }
        x
    };
    let mut found: BTreeSet<Vector<S>> = BTreeSet::new();
    for subset in combinations(reduced.len(), free) {
        let m = Matrix::from_rows(
            &subset
                .iter()
                .map(|&i| reduced[i].normal.clone())
                .collect::<Vec<_>>(),
        )?;
        if m.rank() != free {
            continue;
        }
        let rhs: Vec<S> = subset.iter().map(|&i| reduced[i].offset.clone()).collect();
        let Some(z) = m.solve(&rhs) else {
            continue;
        };
        if reduced.iter().all(|r| r.value_at(&z) <= r.offset) {
            found.insert(lift(&z));
        }
    }
    // Basic feasible solutions of a pointed system are already vertices.
    let vertices: Vec<Vector<S>> = found.into_iter().collect();
    Ok(VPolytope::from_vertices(n, vertices, 0, 0))
}

/// Err(Unbounded) unless `{z : B z <= 0} = {0}`, i.e. the rows of `B` span
/// and some strictly positive combination of them vanishes.
fn check_bounded<S: Scalar>(rows: &[HRow<S>], free: usize) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Unbounded);
    }
    let b = Matrix::from_rows(&rows.iter().map(|r| r.normal.clone()).collect::<Vec<_>>())?;
    if b.rank() != free {
        return Err(Error::Unbounded);
    }
    let m = rows.len();
    let mut dual = HSystem::new(m);
    for c in 0..free {
        let col: Vector<S> = rows.iter().map(|r| r.normal[c].clone()).collect();
        dual.push_equality(col, S::zero())?;
    }
    for i in 0..m {
        let mut e = vec![S::zero(); m];
        e[i] = S::one();
        dual.push_lower_bound(e, S::one())?;
    }
    if lp_feasible(&dual).is_feasible() {
        Ok(())
    } else {
        Err(Error::Unbounded)
    }
}

/// Parse the V-polytope text format: one vertex per line, whitespace
/// separated scalars, `#` starts a comment.
pub fn parse_vpolytope<S: Scalar>(text: &str) -> Result<Vec<Vector<S>>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let point = fields
            .iter()
            .map(|f| S::parse_text(f))
            .collect::<Result<Vec<S>>>()
            .map_err(|e| {
                let detail = match e {
                    Error::Parse(m) => m,
                    other => other.to_string(),
                };
                Error::Parse(format!("line {}: {detail}", lineno + 1))
            })?;
        points.push(point);
    }
    check_points(&points)?;
    Ok(points)
}

pub fn format_vpolytope<S: Scalar>(points: &[Vector<S>]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{}", to_strings(p).join(" "));
    }
    out
}
