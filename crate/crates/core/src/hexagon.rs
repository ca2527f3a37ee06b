//! The hexagon refinement, built end to end and checked feature by feature.
//!
//! The construction is stated for a general cyclic polygon with `n`
//! vertices and window length `k`; the hexagon is `n = 6, k = 3`:
//!
//! * `T` is the standard `(n-1)`-simplex with vertices `e_1..e_n`;
//! * `m_j = (e_j + e_{j+1}) / 2` (indices cyclic);
//! * `F` sends `m_j` to the polygon vertex `s_j`;
//! * `G` sends the window form `d_i + .. + d_{i+k-1}` to the form `v_i` whose
//!   value at `s_j` is the window's value at `m_j`, plus `0 -> 0` and the
//!   unit to the unit.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::form_space::{build_form_space, Form, FormSpace};
use crate::linalg::{centroid, Vector};
use crate::lp::{CertificateText, Feasibility};
use crate::polytope::VPolytope;
use crate::refinement::{
    check_compatibility, make_dual_form_map, make_partial_affine_map, CompatibilityReport,
    DualFormMap, PartialAffineMap,
};
use crate::scalar::{to_strings, Rational, Scalar};

/// Rational affinely-regular hexagon `s_1..s_6`.
pub fn hexagon_vertices() -> Vec<Vector<Rational>> {
    let raw = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    raw.iter()
        .map(|&(x, y)| vec![Rational::from_i64(x), Rational::from_i64(y)])
        .collect()
}

/// `e_1..e_n` in `S^n`.
pub fn simplex_vertices<S: Scalar>(n: usize) -> Vec<Vector<S>> {
    (0..n)
        .map(|i| (0..n).map(|k| S::from_i64((i == k) as i64)).collect())
        .collect()
}

/// `m_j = (e_j + e_{j+1}) / 2`, cyclic.
pub fn cycle_midpoints<S: Scalar>(n: usize) -> Vec<Vector<S>> {
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if k == j || k == (j + 1) % n {
                        S::half()
                    } else {
                        S::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Value of the window `d_start + .. + d_{start+k-1}` (0-based, cyclic) at
/// the simplex vertex `e_l`.
fn window_value(n: usize, k: usize, start: usize, l: usize) -> bool {
    (l + n - start) % n < k
}

/// Values of window `start` at `m_1..m_n`: `([j in W] + [j+1 in W]) / 2`.
pub fn window_values_at_midpoints<S: Scalar>(n: usize, k: usize, start: usize) -> Vec<S> {
    (0..n)
        .map(|j| {
            let hits =
                window_value(n, k, start, j) as i64 + window_value(n, k, start, (j + 1) % n) as i64;
            S::from_i64(hits) / S::from_i64(2)
        })
        .collect()
}

/// Reorder values given in labelled order (`s_1..s_n`) into the canonical
/// vertex order of `poly`.
fn to_canonical<S: Scalar>(
    poly: &VPolytope<S>,
    labelled: &[Vector<S>],
    values: &[S],
) -> Result<Vec<S>> {
    let mut out = vec![S::zero(); poly.vertices().len()];
    for (p, v) in labelled.iter().zip(values) {
        let i = poly.index_of(p).ok_or_else(|| Error::NotAMember {
            point: to_strings(p).join(", "),
        })?;
        out[i] = v.clone();
    }
    Ok(out)
}

/// All objects of one window construction.
#[derive(Clone, Debug)]
pub struct RefinementInstance<S> {
    pub n: usize,
    pub k: usize,
    /// `s_1..s_n`.
    pub polygon_points: Vec<Vector<S>>,
    /// `e_1..e_n`.
    pub simplex_points: Vec<Vector<S>>,
    /// Assigned sources of `F`; the midpoints `m_1..m_n` in the real
    /// construction.
    pub sources: Vec<Vector<S>>,
    pub polygon: VPolytope<S>,
    pub simplex: VPolytope<S>,
    pub polygon_forms: FormSpace<S>,
    pub simplex_forms: FormSpace<S>,
    pub f: PartialAffineMap<S>,
    pub g: DualFormMap<S>,
    /// Window forms `W_1..W_n` on `T` (canonical vertex order of `T`).
    pub windows: Vec<Form<S>>,
    /// Their images `v_1..v_n` (canonical vertex order of the polygon).
    pub window_images: Vec<Form<S>>,
}

pub type HexagonInstance = RefinementInstance<Rational>;

/// The window form `v_1` on the polygon, in canonical vertex order.
pub fn realized_window_form<S: Scalar>(
    polygon: &VPolytope<S>,
    points: &[Vector<S>],
    k: usize,
) -> Result<Form<S>> {
    let vals = window_values_at_midpoints::<S>(points.len(), k, 0);
    Ok(Form::new(to_canonical(polygon, points, &vals)?))
}

/// Build the window construction with `F: sources[j] -> s_j`.
pub fn build_instance_from_sources<S: Scalar>(
    polygon_points: Vec<Vector<S>>,
    k: usize,
    sources: Vec<Vector<S>>,
) -> Result<RefinementInstance<S>> {
    let n = polygon_points.len();
    if n < 3 || !(2..n).contains(&k) {
        return Err(Error::Range(format!(
            "need n >= 3 and 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let polygon = VPolytope::new(polygon_points.clone())?;
    if polygon.vertices().len() != n {
        return Err(Error::Range("polygon points must all be extreme".into()));
    }
    let simplex_points = simplex_vertices::<S>(n);
    let simplex = VPolytope::new(simplex_points.clone())?;
    let f = make_partial_affine_map(
        sources
            .iter()
            .cloned()
            .zip(polygon_points.iter().cloned())
            .collect(),
    )?;
    let polygon_forms = build_form_space(&polygon)?;
    let simplex_forms = build_form_space(&simplex)?;

    let mut windows = Vec::with_capacity(n);
    let mut window_images = Vec::with_capacity(n);
    for start in 0..n {
        let on_vertices: Vec<S> = (0..n)
            .map(|l| S::from_i64(window_value(n, k, start, l) as i64))
            .collect();
        windows.push(Form::new(to_canonical(
            &simplex,
            &simplex_points,
            &on_vertices,
        )?));
        let image = window_values_at_midpoints::<S>(n, k, start);
        window_images.push(Form::new(to_canonical(&polygon, &polygon_points, &image)?));
    }
    let g = make_dual_form_map(
        &simplex_forms,
        &polygon_forms,
        windows
            .iter()
            .cloned()
            .zip(window_images.iter().cloned())
            .collect(),
    )?;
    Ok(RefinementInstance {
        n,
        k,
        polygon_points,
        simplex_points,
        sources,
        polygon,
        simplex,
        polygon_forms,
        simplex_forms,
        f,
        g,
        windows,
        window_images,
    })
}

pub fn build_window_instance<S: Scalar>(
    polygon_points: Vec<Vector<S>>,
    k: usize,
) -> Result<RefinementInstance<S>> {
    let n = polygon_points.len();
    build_instance_from_sources(polygon_points, k, cycle_midpoints(n))
}

/// The canonical hexagon instance over Q.
pub fn build_hexagon_instance() -> Result<HexagonInstance> {
    build_window_instance(hexagon_vertices(), 3)
}

/// A deliberately broken hexagon instance (`F: e_j -> s_j`), used to
/// exercise failure reporting.
#[doc(hidden)]
pub fn build_corrupted_hexagon_instance() -> Result<HexagonInstance> {
    build_instance_from_sources(hexagon_vertices(), 3, simplex_vertices(6))
}

impl<S: Scalar> RefinementInstance<S> {
    fn simplex_label(&self, idx: usize) -> String {
        let v = &self.simplex.vertices()[idx];
        let l = self
            .simplex_points
            .iter()
            .position(|p| p == v)
            .expect("simplex vertex");
        format!("e{}", l + 1)
    }

    fn polygon_label(&self, p: &[S]) -> String {
        match self.polygon_points.iter().position(|q| q == p) {
            Some(j) => format!("s{}", j + 1),
            None => format!("({})", to_strings(p).join(", ")),
        }
    }

    /// `0`, `u`, `v_i`, or a generic index label for a form on the polygon.
    pub fn polygon_form_label(&self, form: &Form<S>) -> String {
        if *form == self.polygon_forms.zero_form() {
            return "0".into();
        }
        if *form == self.polygon_forms.unit_form() {
            return "u".into();
        }
        if let Some(i) = self.window_images.iter().position(|w| w == form) {
            return format!("v{}", i + 1);
        }
        format!("[{}]", form.to_strings().join(", "))
    }

    /// `0`, `1`, or `d_a+..+d_b` for a 0/1 form on the simplex.
    pub fn simplex_form_label(&self, form: &Form<S>) -> String {
        let ones: Vec<usize> = self
            .simplex_points
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let i = self.simplex.index_of(p).expect("simplex vertex");
                form.values()[i] == S::one()
            })
            .map(|(l, _)| l + 1)
            .collect();
        let binary = form.values().iter().all(|v| v.is_zero() || *v == S::one());
        if !binary {
            return format!("[{}]", form.to_strings().join(", "));
        }
        match ones.len() {
            0 => "0".into(),
            n if n == self.n => "1".into(),
            _ => {
                // Rotate so a cyclic window prints in window order.
                let start = ones
                    .iter()
                    .position(|&l| !ones.contains(&(if l == 1 { self.n } else { l - 1 })))
                    .unwrap_or(0);
                let mut ordered = ones[start..].to_vec();
                ordered.extend_from_slice(&ones[..start]);
                ordered
                    .iter()
                    .map(|l| format!("d{l}"))
                    .collect::<Vec<_>>()
                    .join("+")
            }
        }
    }

    /// Values of `form` at `s_1..s_n`.
    pub fn values_in_labelled_order(&self, form: &Form<S>) -> Vec<S> {
        self.polygon_points
            .iter()
            .map(|p| form.values()[self.polygon.index_of(p).expect("polygon vertex")].clone())
            .collect()
    }

    /// Extreme forms of the polygon other than `0` and `u`, each labelled
    /// `v_i` by where it takes the value 1: `v_i` is the form equal to 1
    /// exactly at `s_i, s_{i+1}`. Rows are returned for `i = 1..n` with values
    /// at `s_1..s_n`, or `None` if the extreme forms do not have this shape.
    pub fn labelled_value_matrix(&self) -> Option<Vec<Vec<S>>> {
        let n = self.n;
        let mut rows: Vec<Option<Vec<S>>> = vec![None; n];
        for form in self.polygon_forms.extreme_forms() {
            if form == self.polygon_forms.zero_form() || form == self.polygon_forms.unit_form() {
                continue;
            }
            let vals = self.values_in_labelled_order(&form);
            let ones: Vec<usize> = (0..n).filter(|&j| vals[j] == S::one()).collect();
            let i = (0..n).find(|&i| ones == sorted_pair(i, (i + 1) % n))?;
            if rows[i].replace(vals).is_some() {
                return None;
            }
        }
        rows.into_iter().collect()
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        let mut feed = |tag: &str, rows: &[Vector<S>]| {
            h.update(tag.as_bytes());
            for r in rows {
                h.update(to_strings(r).join(" ").as_bytes());
                h.update(b";");
            }
        };
        feed(
            "n-k",
            &[vec![S::from_i64(self.n as i64), S::from_i64(self.k as i64)]],
        );
        feed("polygon", &self.polygon_points);
        feed("sources", &self.sources);
        feed("polygon-forms", self.polygon_forms.polytope().vertices());
        feed("simplex-forms", self.simplex_forms.polytope().vertices());
        let g: Vec<Vector<S>> = self
            .g
            .assignments()
            .iter()
            .flat_map(|(s, t)| [s.values().to_vec(), t.values().to_vec()])
            .collect();
        feed("g", &g);
        hex::encode(h.finalize())
    }
}

fn sorted_pair(a: usize, b: usize) -> Vec<usize> {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// Verdict plus the evidence that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feature<E> {
    pub verdict: bool,
    pub evidence: E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageEvidence {
    pub target: String,
    pub preimage: Vec<Vec<String>>,
    pub single_point: bool,
    /// The assigned source point, `m_j` in the construction.
    pub source: Vec<String>,
    pub preimage_is_source: bool,
    pub source_in_simplex: bool,
    pub source_extreme_in_simplex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormAssignmentEvidence {
    pub source: String,
    pub target: String,
    pub source_extreme: bool,
    pub target_extreme: bool,
    pub preimage_is_single: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionEvidence {
    pub assignments: Vec<FormAssignmentEvidence>,
    pub target_extreme_count: usize,
    pub covers_all_extreme_forms: bool,
    pub sources_distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideEvidence {
    pub vertex: String,
    pub outside_domain: bool,
    pub certificate: Option<CertificateText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialityEvidence {
    pub domain_is_proper: bool,
    pub vertices: Vec<OutsideEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceEvidence {
    pub target: String,
    pub face: Vec<String>,
    pub dimension: i32,
    pub is_expected_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionEvidence {
    pub targets: (String, String),
    pub face: Vec<String>,
    pub nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceIntersectionEvidence {
    pub faces: Vec<FaceEvidence>,
    pub intersections: Vec<IntersectionEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionEvidence {
    pub domain_dimension: usize,
    pub extreme_point_count: usize,
    pub is_simplex: bool,
    pub domain_is_proper: bool,
    pub surjective: bool,
    pub kernel_dimension: usize,
    pub kernel_basis: Vec<Vec<String>>,
    pub fibers_are_translates: bool,
    pub sampled_fiber_dimensions: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Features {
    pub a: Feature<Vec<PreimageEvidence>>,
    pub b: Feature<BijectionEvidence>,
    pub c: Feature<PartialityEvidence>,
    pub d: Feature<FaceIntersectionEvidence>,
    pub e: Feature<ProjectionEvidence>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureFlags {
    pub c1_disproved: bool,
    pub c3_disproved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeatureReport {
    pub n: usize,
    pub k: usize,
    pub features: Features,
    pub conjectures: ConjectureFlags,
    pub instance_digest: String,
}

impl FeatureReport {
    pub fn all_hold(&self) -> bool {
        self.failing_features().is_empty()
    }

    /// Names (`a`..`e`) of the features that did not verify.
    pub fn failing_features(&self) -> Vec<&'static str> {
        let f = &self.features;
        [
            ("a", f.a.verdict),
            ("b", f.b.verdict),
            ("c", f.c.verdict),
            ("d", f.d.verdict),
            ("e", f.e.verdict),
        ]
        .into_iter()
        .filter_map(|(name, ok)| (!ok).then_some(name))
        .collect()
    }
}

fn feature_a<S: Scalar>(inst: &RefinementInstance<S>) -> Result<Feature<Vec<PreimageEvidence>>> {
    let mut evidence = Vec::with_capacity(inst.n);
    for (s, m) in inst.polygon_points.iter().zip(&inst.sources) {
        let fiber = inst.f.preimage(s)?;
        let single_point = fiber.vertices().len() == 1;
        evidence.push(PreimageEvidence {
            target: inst.polygon_label(s),
            preimage: fiber.vertex_strings(),
            single_point,
            source: to_strings(m),
            preimage_is_source: single_point && fiber.vertices()[0] == *m,
            source_in_simplex: inst.simplex.contains(m),
            source_extreme_in_simplex: inst.simplex.is_extreme(m),
        });
    }
    let verdict = evidence
        .iter()
        .all(|e| e.preimage_is_source && e.source_in_simplex && !e.source_extreme_in_simplex);
    Ok(Feature { verdict, evidence })
}

fn feature_b<S: Scalar>(inst: &RefinementInstance<S>) -> Result<Feature<BijectionEvidence>> {
    let mut assignments = Vec::new();
    for (src, tgt) in inst.g.assignments() {
        let fiber = inst.g.preimage(tgt)?;
        assignments.push(FormAssignmentEvidence {
            source: inst.simplex_form_label(src),
            target: inst.polygon_form_label(tgt),
            source_extreme: inst.simplex_forms.is_extreme(src),
            target_extreme: inst.polygon_forms.is_extreme(tgt),
            preimage_is_single: fiber.vertices() == [src.values().to_vec()],
        });
    }
    let mut sources: Vec<&Form<S>> = inst.g.assignments().iter().map(|(s, _)| s).collect();
    let mut targets: Vec<Form<S>> = inst
        .g
        .assignments()
        .iter()
        .map(|(_, t)| t.clone())
        .collect();
    sources.sort();
    sources.dedup();
    targets.sort();
    let before = targets.len();
    targets.dedup();
    let sources_distinct = sources.len() == inst.g.assignments().len();
    let covers_all_extreme_forms =
        targets.len() == before && targets == inst.polygon_forms.extreme_forms();
    let verdict = sources_distinct
        && covers_all_extreme_forms
        && assignments
            .iter()
            .all(|a| a.source_extreme && a.target_extreme && a.preimage_is_single);
    Ok(Feature {
        verdict,
        evidence: BijectionEvidence {
            assignments,
            target_extreme_count: inst.polygon_forms.extreme_count(),
            covers_all_extreme_forms,
            sources_distinct,
        },
    })
}

fn feature_c<S: Scalar>(inst: &RefinementInstance<S>) -> Result<Feature<PartialityEvidence>> {
    let domain = inst.f.domain();
    let domain_is_proper = *domain != inst.simplex;
    let mut vertices = Vec::with_capacity(inst.n);
    for (l, e) in inst.simplex_points.iter().enumerate() {
        let (sys, verdict) = domain.membership(e)?;
        let (outside, certificate) = match verdict {
            Feasibility::Feasible { .. } => (false, None),
            Feasibility::Infeasible { certificate } => {
                (certificate.verify(&sys), Some(certificate.to_strings()))
            }
        };
        vertices.push(OutsideEvidence {
            vertex: format!("e{}", l + 1),
            outside_domain: outside,
            certificate,
        });
    }
    let verdict = domain_is_proper && vertices.iter().all(|v| v.outside_domain);
    Ok(Feature {
        verdict,
        evidence: PartialityEvidence {
            domain_is_proper,
            vertices,
        },
    })
}

fn feature_d<S: Scalar>(inst: &RefinementInstance<S>) -> Result<Feature<FaceIntersectionEvidence>> {
    let n = inst.n;
    let mut faces = Vec::with_capacity(n);
    let mut raw = Vec::with_capacity(n);
    for (j, s) in inst.polygon_points.iter().enumerate() {
        let fiber = inst.f.preimage(s)?;
        if fiber.is_empty() {
            return Err(Error::NotAMember {
                point: to_strings(s).join(", "),
            });
        }
        // The minimal face containing a convex set is that of its centroid.
        let face = inst
            .simplex
            .minimal_face_containing(&centroid(fiber.vertices()))?;
        let mut labels: Vec<String> = face
            .vertices
            .iter()
            .map(|&i| inst.simplex_label(i))
            .collect();
        labels.sort_by_key(|l| l[1..].parse::<usize>().unwrap_or(0));
        let expected = sorted_pair(j, (j + 1) % n)
            .into_iter()
            .map(|l| format!("e{}", l + 1))
            .collect::<Vec<_>>();
        let mut expected_sorted = expected.clone();
        expected_sorted.sort_by_key(|l| l[1..].parse::<usize>().unwrap_or(0));
        faces.push(FaceEvidence {
            target: inst.polygon_label(s),
            is_expected_edge: face.dimension == 1 && labels == expected_sorted,
            face: labels,
            dimension: face.dimension,
        });
        raw.push(face);
    }
    let mut intersections = Vec::with_capacity(n);
    for j in 0..n {
        let next = (j + 1) % n;
        let meet = inst.simplex.face_intersection(&raw[j], &raw[next]);
        intersections.push(IntersectionEvidence {
            targets: (faces[j].target.clone(), faces[next].target.clone()),
            face: meet
                .vertices
                .iter()
                .map(|&i| inst.simplex_label(i))
                .collect(),
            nonempty: !meet.is_empty(),
        });
    }
    let verdict =
        faces.iter().all(|f| f.is_expected_edge) && intersections.iter().all(|i| i.nonempty);
    Ok(Feature {
        verdict,
        evidence: FaceIntersectionEvidence {
            faces,
            intersections,
        },
    })
}

fn feature_e<S: Scalar>(inst: &RefinementInstance<S>) -> Result<Feature<ProjectionEvidence>> {
    let domain = inst.f.domain();
    let proj = inst.f.is_parallel_projection_onto(&inst.polygon)?;
    let evidence = ProjectionEvidence {
        domain_dimension: domain.dimension().unwrap_or(0),
        extreme_point_count: domain.vertices().len(),
        is_simplex: domain.is_simplex(),
        domain_is_proper: *domain != inst.simplex,
        surjective: proj.surjective,
        kernel_dimension: proj.kernel_dimension(),
        kernel_basis: proj.kernel_basis.iter().map(|v| to_strings(v)).collect(),
        fibers_are_translates: proj.fibers_are_translates,
        sampled_fiber_dimensions: proj.fiber_dimensions.clone(),
    };
    let verdict = !evidence.is_simplex
        && evidence.domain_is_proper
        && evidence.extreme_point_count == inst.n
        && proj.holds();
    Ok(Feature { verdict, evidence })
}

/// Check features a-e on a built instance.
pub fn verify_features<S: Scalar>(inst: &RefinementInstance<S>) -> Result<FeatureReport> {
    let features = Features {
        a: feature_a(inst)?,
        b: feature_b(inst)?,
        c: feature_c(inst)?,
        d: feature_d(inst)?,
        e: feature_e(inst)?,
    };
    let conjectures = ConjectureFlags {
        c1_disproved: features.e.verdict,
        c3_disproved: features.d.verdict,
    };
    Ok(FeatureReport {
        n: inst.n,
        k: inst.k,
        features,
        conjectures,
        instance_digest: inst.digest(),
    })
}

/// Compatibility of the instance's `F` and `G`.
pub fn instance_compatibility<S: Scalar>(
    inst: &RefinementInstance<S>,
) -> Result<CompatibilityReport> {
    check_compatibility(&inst.f, &inst.g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn midpoints_and_windows() {
        let m = cycle_midpoints::<Rational>(3);
        assert_eq!(m[2], vec![q(1, 2), q(0, 1), q(1, 2)]);
        let w = window_values_at_midpoints::<Rational>(6, 3, 0);
        assert_eq!(
            w,
            vec![q(1, 1), q(1, 1), q(1, 2), q(0, 1), q(0, 1), q(1, 2)]
        );
        let w2 = window_values_at_midpoints::<Rational>(6, 3, 1);
        assert_eq!(
            w2,
            vec![q(1, 2), q(1, 1), q(1, 1), q(1, 2), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn hexagon_builds_and_verifies() {
        let inst = build_hexagon_instance().unwrap();
        assert_eq!(inst.polygon_forms.extreme_count(), 8);
        assert_eq!(inst.simplex_forms.extreme_count(), 64);
        let report = verify_features(&inst).unwrap();
        assert!(
            report.all_hold(),
            "failing: {:?}",
            report.failing_features()
        );
        assert!(report.conjectures.c1_disproved && report.conjectures.c3_disproved);
    }

    #[test]
    fn labels() {
        let inst = build_hexagon_instance().unwrap();
        assert_eq!(inst.simplex_form_label(&inst.windows[0]), "d1+d2+d3");
        assert_eq!(inst.simplex_form_label(&inst.windows[5]), "d6+d1+d2");
        assert_eq!(inst.polygon_form_label(&inst.window_images[3]), "v4");
        assert_eq!(
            inst.simplex_form_label(&inst.simplex_forms.unit_form()),
            "1"
        );
    }

    #[test]
    fn corrupted_instance_fails_named_features() {
        let inst = build_corrupted_hexagon_instance().unwrap();
        let report = verify_features(&inst).unwrap();
        let failing = report.failing_features();
        assert!(failing.contains(&"a"));
        assert!(failing.contains(&"c"));
        assert!(failing.contains(&"e"));
    }
}
