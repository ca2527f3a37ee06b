//! The window construction on regular n-gons.
//!
//! For a cyclic polygon `s_1..s_n` and window length `k`, the form `v_1`
//! must take the value `([j in W] + [j+1 in W]) / 2` at `s_j`, where
//! `W = {1..k}`. On a regular n-gon such values extend to an affine
//! functional exactly when their discrete Fourier coefficients vanish at
//! every harmonic `h = 2..floor(n/2)`; those coefficients are computed
//! exactly in `Q(zeta_n)`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form_space::{build_form_space, Form};
use crate::hexagon::{
    build_window_instance, cycle_midpoints, instance_compatibility, realized_window_form,
    verify_features, window_values_at_midpoints, FeatureReport,
};
use crate::linalg::{sub, Vector};
use crate::polytope::VPolytope;
use crate::refinement::make_partial_affine_map;
use crate::scalar::{CycloElement, QuadScalar, Rational, Scalar};

pub const SCAN_N_MIN: usize = 3;
pub const SCAN_N_MAX: usize = 16;

pub const WINDOW_CAVEAT: &str = "only the cyclic window construction is checked for each (n, k); \
a FAIL row says that construction fails, not that no refinement exists";

/// Values `p_1..p_n` demanded of `v_1` at `s_1..s_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCandidate {
    pub n: usize,
    pub k: usize,
    pub values: Vec<Rational>,
}

pub fn window_pattern(n: usize, k: usize) -> Result<WindowCandidate> {
    if n < SCAN_N_MIN || k < 2 || k >= n {
        return Err(Error::Range(format!(
            "window pattern needs n >= {SCAN_N_MIN} and 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    Ok(WindowCandidate {
        n,
        k,
        values: window_values_at_midpoints(n, k, 0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicResidue {
    pub harmonic: usize,
    pub residue: CycloElement,
}

impl std::fmt::Display for HarmonicResidue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "harmonic {}: {}", self.harmonic, self.residue)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realizability {
    pub realizable: bool,
    /// Residues at `h = 2..floor(n/2)`, zero or not.
    pub residues: Vec<HarmonicResidue>,
}

impl Realizability {
    /// The nonzero residues; any one of them certifies non-realizability.
    pub fn obstructions(&self) -> impl Iterator<Item = &HarmonicResidue> {
        self.residues.iter().filter(|r| !r.residue.is_zero())
    }
}

/// `sum_j p_j zeta^{h j}` reduced in `Q(zeta_n)`, for `j = 1..n`.
pub fn harmonic_residue(values: &[Rational], h: usize) -> CycloElement {
    let n = values.len();
    let mut poly = vec![Rational::from_integer(0.into()); n];
    for (j, p) in values.iter().enumerate() {
        let idx = (h * (j + 1)) % n;
        poly[idx] = poly[idx].clone() + p;
    }
    CycloElement::reduce(&poly, n)
}

pub fn realizable_on_regular_ngon(c: &WindowCandidate) -> Realizability {
    let residues: Vec<HarmonicResidue> = (2..=c.n / 2)
        .map(|h| HarmonicResidue {
            harmonic: h,
            residue: harmonic_residue(&c.values, h),
        })
        .collect();
    Realizability {
        realizable: residues.iter().all(|r| r.residue.is_zero()),
        residues,
    }
}

/// `2 cos(2 pi / n)` for the n with a rational or real-quadratic value.
fn two_cos(n: usize) -> Result<QuadScalar> {
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    match n {
        3 => Ok(QuadScalar::rational(q(-1, 1))),
        4 => Ok(QuadScalar::rational(q(0, 1))),
        6 => Ok(QuadScalar::rational(q(1, 1))),
        5 => QuadScalar::new(q(-1, 2), q(1, 2), 5),
        8 => QuadScalar::sqrt(2),
        12 => QuadScalar::sqrt(3),
        _ => Err(Error::UnsupportedField { n }),
    }
}

/// Whether [`regular_ngon_vertices`] supports `n`.
pub fn has_exact_coordinates(n: usize) -> bool {
    two_cos(n).is_ok()
}

/// An affine image of the regular n-gon with `s_1 = (1, 0)`, `s_2 = (0, 1)`
/// and `s_{j+1} = t s_j - s_{j-1}`, `t = 2 cos(2 pi / n)`. Coordinates are
/// exact in `Q` or `Q(sqrt D)`.
pub fn regular_ngon_vertices(n: usize) -> Result<Vec<Vector<QuadScalar>>> {
    let t = two_cos(n)?;
    let mut pts: Vec<Vector<QuadScalar>> = vec![
        vec![QuadScalar::one(), QuadScalar::zero()],
        vec![QuadScalar::zero(), QuadScalar::one()],
    ];
    while pts.len() < n {
        let j = pts.len();
        let next = sub(
            &pts[j - 1].iter().map(|x| t.clone() * x).collect::<Vec<_>>(),
            &pts[j - 2],
        );
        pts.push(next);
    }
    Ok(pts)
}

/// Rational coordinates, for the n where the regular n-gon admits them.
pub fn regular_ngon_rational(n: usize) -> Result<Vec<Vector<Rational>>> {
    regular_ngon_vertices(n)?
        .into_iter()
        .map(|p| {
            p.iter()
                .map(|x| x.to_rational().ok_or(Error::UnsupportedField { n }))
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Realizability,
    FConsistency,
    Extremality,
    GConsistency,
    Compatibility,
    Features,
    UnsupportedField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub realizable: bool,
    #[serde(rename = "extreme_in_OC")]
    pub extreme_in_oc: Option<bool>,
    #[serde(rename = "F_consistent")]
    pub f_consistent: Option<bool>,
    pub verdict: Verdict,
    pub failure_stage: Option<Stage>,
    pub certificate: Vec<String>,
}

impl ScanRow {
    fn new(n: usize, k: usize, realizable: bool) -> Self {
        Self {
            n,
            k,
            realizable,
            extreme_in_oc: None,
            f_consistent: None,
            verdict: Verdict::Fail,
            failure_stage: None,
            certificate: Vec::new(),
        }
    }

    fn fail(mut self, stage: Stage, certificate: Vec<String>) -> Self {
        self.verdict = Verdict::Fail;
        self.failure_stage = Some(stage);
        self.certificate = certificate;
        self
    }
}

/// Outcome of the full pipeline on one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub row: ScanRow,
    pub realizability: Realizability,
    /// Present when the pipeline got as far as checking features.
    pub features: Option<FeatureReport>,
}

fn labelled_values<S: Scalar>(
    poly: &VPolytope<S>,
    points: &[Vector<S>],
    form: &[S],
) -> Vec<String> {
    points
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let i = poly.index_of(p).expect("polygon vertex");
            format!("s{}={}", j + 1, form[i])
        })
        .collect()
}

fn run_pipeline<S: Scalar>(
    points: Vec<Vector<S>>,
    k: usize,
    mut row: ScanRow,
) -> Result<(ScanRow, Option<FeatureReport>)> {
    let n = points.len();
    let assignments: Vec<(Vector<S>, Vector<S>)> = cycle_midpoints::<S>(n)
        .into_iter()
        .zip(points.iter().cloned())
        .collect();
    match make_partial_affine_map(assignments) {
        Ok(_) => row.f_consistent = Some(true),
        Err(Error::InconsistentAssignment { dependency }) => {
            row.f_consistent = Some(false);
            return Ok((
                row.fail(
                    Stage::FConsistency,
                    vec![format!("violated dependency: {dependency}")],
                ),
                None,
            ));
        }
        Err(e) => return Err(e),
    }

    let polygon = VPolytope::new(points.clone())?;
    let oc = build_form_space(&polygon)?;
    let v1: Form<S> = realized_window_form(&polygon, &points, k)?;
    if !oc.contains(&v1) {
        row.extreme_in_oc = Some(false);
        let cert = vec![format!(
            "v1 is not a form: {}",
            labelled_values(&polygon, &points, v1.values()).join(" ")
        )];
        return Ok((row.fail(Stage::Extremality, cert), None));
    }
    let extreme = oc.is_extreme(&v1);
    row.extreme_in_oc = Some(extreme);
    if !extreme {
        let forms = oc.polytope().vertices();
        let cert = match oc.midpoint_pair(&v1) {
            Some((a, b)) => vec![
                format!(
                    "v1 = {}",
                    labelled_values(&polygon, &points, v1.values()).join(" ")
                ),
                format!(
                    "= 1/2 * [{}]",
                    labelled_values(&polygon, &points, &forms[a]).join(" ")
                ),
                format!(
                    "+ 1/2 * [{}]",
                    labelled_values(&polygon, &points, &forms[b]).join(" ")
                ),
            ],
            None => {
                let weights = oc
                    .polytope()
                    .convex_weights(v1.values())
                    .unwrap_or_default();
                let mut lines = vec![format!(
                    "v1 = {}",
                    labelled_values(&polygon, &points, v1.values()).join(" ")
                )];
                for (w, f) in weights.iter().zip(forms) {
                    if !w.is_zero() {
                        lines.push(format!(
                            "+ {w} * [{}]",
                            labelled_values(&polygon, &points, f).join(" ")
                        ));
                    }
                }
                lines
            }
        };
        return Ok((row.fail(Stage::Extremality, cert), None));
    }

    let inst = match build_window_instance(points, k) {
        Ok(inst) => inst,
        Err(
            e @ (Error::InconsistentAssignment { .. }
            | Error::NotAMember { .. }
            | Error::UnitPreservation(_)),
        ) => {
            return Ok((row.fail(Stage::GConsistency, vec![e.to_string()]), None));
        }
        Err(e) => return Err(e),
    };
    let compat = instance_compatibility(&inst)?;
    if !compat.verdict {
        let cert = compat
            .rows
            .iter()
            .filter(|r| !r.equal)
            .map(|r| {
                format!(
                    "form {} at point {}: {} != {}",
                    r.form_index, r.point_index, r.lhs, r.rhs
                )
            })
            .collect();
        return Ok((row.fail(Stage::Compatibility, cert), None));
    }
    let report = verify_features(&inst)?;
    if !report.all_hold() {
        let cert = report
            .failing_features()
            .iter()
            .map(|f| format!("feature {f} fails"))
            .collect();
        return Ok((row.fail(Stage::Features, cert), Some(report)));
    }
    row.verdict = Verdict::Pass;
    row.certificate = vec![format!("instance digest {}", report.instance_digest)];
    Ok((row, Some(report)))
}

/// Run every stage on `(n, k)`: realizability, consistency of `F`,
/// extremality of `v_1`, consistency of `G`, compatibility, features.
/// Stops at the first failing stage.
pub fn full_check(n: usize, k: usize) -> Result<CellCheck> {
    let candidate = window_pattern(n, k)?;
    let realizability = realizable_on_regular_ngon(&candidate);
    let row = ScanRow::new(n, k, realizability.realizable);
    if !realizability.realizable {
        let cert = realizability
            .obstructions()
            .map(ToString::to_string)
            .collect();
        return Ok(CellCheck {
            row: row.fail(Stage::Realizability, cert),
            realizability,
            features: None,
        });
    }
    let (row, features) = match n {
        3 | 4 | 6 => run_pipeline(regular_ngon_rational(n)?, k, row)?,
        _ if has_exact_coordinates(n) => run_pipeline(regular_ngon_vertices(n)?, k, row)?,
        _ => {
            let mut row = row;
            row.verdict = Verdict::Undecided;
            row.failure_stage = Some(Stage::UnsupportedField);
            row.certificate = vec![format!("no exact coordinates for the regular {n}-gon")];
            (row, None)
        }
    };
    Ok(CellCheck {
        row,
        realizability,
        features,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub caveat: &'static str,
}

impl ScanReport {
    pub fn passing(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Pass)
    }
}

/// Check the given cells in parallel; rows come back sorted by `(n, k)`
/// whatever the input order.
pub fn scan_cells(cells: &[(usize, usize)]) -> Result<Vec<ScanRow>> {
    let mut rows = cells
        .par_iter()
        .map(|&(n, k)| full_check(n, k).map(|c| c.row))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.k));
    rows.dedup_by_key(|r| (r.n, r.k));
    Ok(rows)
}

/// Every cell with `n` in `n_range` and `2 <= k <= n-1` (further limited by
/// `k_range` if given).
pub fn scan(
    n_range: RangeInclusive<usize>,
    k_range: Option<RangeInclusive<usize>>,
) -> Result<ScanReport> {
    if n_range.is_empty() || *n_range.start() < SCAN_N_MIN || *n_range.end() > SCAN_N_MAX {
        return Err(Error::Range(format!(
            "n range must lie within {SCAN_N_MIN}..{SCAN_N_MAX}, got {}..{}",
            n_range.start(),
            n_range.end()
        )));
    }
    if let Some(kr) = &k_range {
        if kr.is_empty() {
            return Err(Error::Range(format!(
                "empty k range {}..{}",
                kr.start(),
                kr.end()
            )));
        }
    }
    let cells: Vec<(usize, usize)> = n_range
        .flat_map(|n| (2..n).map(move |k| (n, k)))
        .filter(|(_, k)| k_range.as_ref().is_none_or(|kr| kr.contains(k)))
        .collect();
    Ok(ScanReport {
        rows: scan_cells(&cells)?,
        caveat: WINDOW_CAVEAT,
    })
}
