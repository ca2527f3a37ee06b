use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use serde::Serialize;

use refinery_core::hexagon::{
    build_corrupted_hexagon_instance, ConjectureFlags, FeatureReport, Features,
};
use refinery_core::ngon::ScanRow;
use refinery_core::polytope::parse_vpolytope;
use refinery_core::refinement::CompatibilityRow;
use refinery_core::scalar::to_strings;
use refinery_core::{
    build_form_space, build_hexagon_instance, instance_compatibility, scan, verify_features,
    Error as CoreError, QuadScalar, Rational, Scalar, VPolytope, Vector,
};

use crate::args::{Format, InspectArgs, ScanArgs, VerifyArgs};
use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// What a command produced: the report body and the process exit code.
pub struct Outcome {
    pub body: String,
    pub exit_code: u8,
    /// One-line notes for standard error.
    pub notes: Vec<String>,
}

fn render<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Defect(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct MatrixRow {
    label: String,
    values: Vec<String>,
}

#[derive(Serialize)]
struct CompatibilitySummary {
    verdict: bool,
    pairs_checked: usize,
    mismatches: Vec<CompatibilityRow>,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema_version: &'static str,
    command: &'static str,
    n: usize,
    k: usize,
    verdict: bool,
    failing_features: Vec<&'static str>,
    features: &'a Features,
    conjectures: ConjectureFlags,
    instance_digest: &'a str,
    value_matrix: Option<Vec<MatrixRow>>,
    gamma: Option<String>,
    compatibility: CompatibilitySummary,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn feature_lines(report: &FeatureReport) -> Vec<String> {
    let f = &report.features;
    let mut lines = Vec::new();

    let a_ok =
        f.a.evidence
            .iter()
            .filter(|e| e.preimage_is_source && !e.source_extreme_in_simplex)
            .count();
    lines.push(format!(
        "feature a  {}  F^-1(s_j) is the single non-extreme point m_j for {}/{} vertices",
        pass_fail(f.a.verdict),
        a_ok,
        f.a.evidence.len()
    ));
    for e in
        f.a.evidence
            .iter()
            .filter(|e| !e.preimage_is_source || e.source_extreme_in_simplex)
    {
        lines.push(format!(
            "           {}: preimage {:?}",
            e.target, e.preimage
        ));
    }

    let b = &f.b.evidence;
    lines.push(format!(
        "feature b  {}  G sends {} extreme forms of OT onto the {} extreme forms of OC, one to one",
        pass_fail(f.b.verdict),
        b.assignments.len(),
        b.target_extreme_count
    ));
    for a in &b.assignments {
        lines.push(format!("           {} -> {}", a.source, a.target));
    }

    let outside =
        f.c.evidence
            .vertices
            .iter()
            .filter(|v| v.outside_domain)
            .count();
    lines.push(format!(
        "feature c  {}  {}/{} vertices of T lie outside dom(F) (Farkas certificates checked)",
        pass_fail(f.c.verdict),
        outside,
        f.c.evidence.vertices.len()
    ));

    let faces: Vec<String> = f.d.evidence.faces.iter().map(|x| x.face.join("")).collect();
    let meets: Vec<String> =
        f.d.evidence
            .intersections
            .iter()
            .map(|i| {
                if i.face.is_empty() {
                    "empty".into()
                } else {
                    i.face.join("")
                }
            })
            .collect();
    lines.push(format!(
        "feature d  {}  minimal faces {}; consecutive intersections {}",
        pass_fail(f.d.verdict),
        faces.join(" "),
        meets.join(" ")
    ));

    let e = &f.e.evidence;
    lines.push(format!(
        "feature e  {}  dom(F): dim {}, {} vertices, simplex {}; surjective {}, kernel dim {}, fibers translates {}",
        pass_fail(f.e.verdict),
        e.domain_dimension,
        e.extreme_point_count,
        yes_no(e.is_simplex),
        yes_no(e.surjective),
        e.kernel_dimension,
        yes_no(e.fibers_are_translates)
    ));
    lines
}

pub fn verify_hexagon(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let inst = if args.corrupt_fixture {
        build_corrupted_hexagon_instance()
    } else {
        build_hexagon_instance()
    }
    .map_err(|e| CliError::Defect(format!("instance construction failed: {e}")))?;
    let report = verify_features(&inst).map_err(|e| CliError::Defect(e.to_string()))?;
    let compat = instance_compatibility(&inst).map_err(|e| CliError::Defect(e.to_string()))?;

    let matrix = inst.labelled_value_matrix();
    let gamma = matrix.as_ref().map(|m| m[0][2].to_string());
    let matrix_rows = matrix.map(|m| {
        m.iter()
            .enumerate()
            .map(|(i, row)| MatrixRow {
                label: format!("v{}", i + 1),
                values: to_strings(row),
            })
            .collect::<Vec<_>>()
    });
    let failing = report.failing_features();
    let verdict = failing.is_empty() && compat.verdict;

    let mut notes = Vec::new();
    if !failing.is_empty() {
        notes.push(format!(
            "verification defect: failing features {}",
            failing.join(", ")
        ));
    }
    if !compat.verdict {
        notes.push("verification defect: compatibility fails".into());
    }

    let doc = VerifyDoc {
        schema_version: SCHEMA_VERSION,
        command: "verify-hexagon",
        n: report.n,
        k: report.k,
        verdict,
        failing_features: failing.clone(),
        features: &report.features,
        conjectures: report.conjectures,
        instance_digest: &report.instance_digest,
        value_matrix: matrix_rows,
        gamma,
        compatibility: CompatibilitySummary {
            verdict: compat.verdict,
            pairs_checked: compat.rows.len(),
            mismatches: compat.rows.iter().filter(|r| !r.equal).cloned().collect(),
        },
    };

    let body = match args.output.format {
        Format::Json => render(&doc)?,
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "hexagon refinement (n = {}, k = {})", doc.n, doc.k);
            let _ = writeln!(out, "instance digest {}", doc.instance_digest);
            if let Some(rows) = &doc.value_matrix {
                let _ = writeln!(out, "extreme forms of OC at s1..s6 (besides 0 and u):");
                for r in rows {
                    let _ = writeln!(out, "  {}: {}", r.label, r.values.join(" "));
                }
            }
            if let Some(g) = &doc.gamma {
                let _ = writeln!(out, "gamma = {g}");
            }
            let _ = writeln!(
                out,
                "compatibility {}: {}/{} generator pairs agree",
                pass_fail(compat.verdict),
                compat.rows.iter().filter(|r| r.equal).count(),
                compat.rows.len()
            );
            for line in feature_lines(&report) {
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(
                out,
                "conjecture 1 disproved: {}",
                yes_no(doc.conjectures.c1_disproved)
            );
            let _ = writeln!(
                out,
                "conjecture 3 disproved: {}",
                yes_no(doc.conjectures.c3_disproved)
            );
            let _ = writeln!(out, "verdict: {}", pass_fail(verdict));
            out
        }
    };
    Ok(Outcome {
        body,
        exit_code: if verdict { 0 } else { 2 },
        notes,
    })
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    schema_version: &'static str,
    command: &'static str,
    n_range: [usize; 2],
    k_range: Option<[usize; 2]>,
    passing: Vec<[usize; 2]>,
    rows: &'a [ScanRow],
    caveat: &'static str,
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

pub fn scan_cmd(args: &ScanArgs) -> Result<Outcome, CliError> {
    let report = scan(args.n.clone(), args.k.clone()).map_err(CliError::Input)?;
    let span = |r: &RangeInclusive<usize>| [*r.start(), *r.end()];
    let doc = ScanDoc {
        schema_version: SCHEMA_VERSION,
        command: "scan",
        n_range: span(&args.n),
        k_range: args.k.as_ref().map(span),
        passing: report.passing().map(|r| [r.n, r.k]).collect(),
        rows: &report.rows,
        caveat: report.caveat,
    };
    let body = match args.output.format {
        Format::Json => render(&doc)?,
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>3} {:>3}  {:<10} {:<13} {:<12} {:<9} {:<17} certificate",
                "n", "k", "realizable", "extreme_in_OC", "F_consistent", "verdict", "failure_stage"
            );
            for r in &report.rows {
                let stage = r
                    .failure_stage
                    .map(|s| {
                        serde_json::to_value(s)
                            .ok()
                            .and_then(|v| v.as_str().map(str::to_owned))
                            .unwrap_or_default()
                    })
                    .unwrap_or_else(|| "-".into());
                let verdict = serde_json::to_value(r.verdict)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{:>3} {:>3}  {:<10} {:<13} {:<12} {:<9} {:<17} {}",
                    r.n,
                    r.k,
                    yes_no(r.realizable),
                    opt_bool(r.extreme_in_oc),
                    opt_bool(r.f_consistent),
                    verdict,
                    stage,
                    r.certificate.join("; ")
                );
            }
            let passing: Vec<String> = doc
                .passing
                .iter()
                .map(|[n, k]| format!("({n}, {k})"))
                .collect();
            let _ = writeln!(
                out,
                "passing cells: {}",
                if passing.is_empty() {
                    "none".into()
                } else {
                    passing.join(" ")
                }
            );
            let _ = writeln!(out, "note: {}", doc.caveat);
            out
        }
    };
    Ok(Outcome {
        body,
        exit_code: 0,
        notes: Vec::new(),
    })
}

#[derive(Serialize)]
struct FormSpaceSummary {
    extreme_forms: usize,
    dimension: usize,
    unit_pairs: usize,
}

#[derive(Serialize)]
struct InspectDoc {
    schema_version: &'static str,
    command: &'static str,
    field: String,
    ambient_dim: usize,
    dimension: Option<usize>,
    vertex_count: usize,
    vertices: Vec<Vec<String>>,
    facet_count: usize,
    is_simplex: bool,
    duplicates_removed: usize,
    non_extreme_removed: usize,
    form_space: Option<FormSpaceSummary>,
    form_space_note: Option<String>,
}

fn inspect_points<S: Scalar>(
    points: Vec<Vector<S>>,
    field: String,
) -> Result<InspectDoc, CliError> {
    let poly = VPolytope::new(points).map_err(CliError::Input)?;
    let facet_count = poly.facets().map_err(CliError::Input)?.inequalities().len();
    let (form_space, form_space_note) = match build_form_space(&poly) {
        Ok(fs) => (
            Some(FormSpaceSummary {
                extreme_forms: fs.extreme_count(),
                dimension: fs.dimension(),
                unit_pairs: fs.unit_decompositions().len(),
            }),
            None,
        ),
        Err(e @ CoreError::DimensionTooLarge { .. }) => {
            (None, Some(format!("form space skipped: {e}")))
        }
        Err(e) => return Err(CliError::Input(e)),
    };
    Ok(InspectDoc {
        schema_version: SCHEMA_VERSION,
        command: "inspect",
        field,
        ambient_dim: poly.ambient_dim(),
        dimension: poly.dimension(),
        vertex_count: poly.vertices().len(),
        vertices: poly.vertex_strings(),
        facet_count,
        is_simplex: poly.is_simplex(),
        duplicates_removed: poly.duplicates_removed(),
        non_extreme_removed: poly.non_extreme_removed(),
        form_space,
        form_space_note,
    })
}

pub fn inspect(args: &InspectArgs) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&args.fixture).map_err(|e| CliError::Io {
        path: args.fixture.display().to_string(),
        source: e,
    })?;
    let doc = match parse_vpolytope::<Rational>(&text) {
        Ok(points) => inspect_points(points, "Q".into())?,
        Err(rational_err) => match parse_vpolytope::<QuadScalar>(&text) {
            Ok(points) => {
                let tag = points.iter().flatten().find_map(QuadScalar::field_tag);
                let field = tag.map_or("Q".into(), |d| format!("Q(sqrt {d})"));
                inspect_points(points, field)?
            }
            Err(_) => return Err(CliError::Input(rational_err)),
        },
    };
    let body = match args.output.format {
        Format::Json => render(&doc)?,
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "file: {}", display_name(&args.fixture));
            let _ = writeln!(out, "field: {}", doc.field);
            let _ = writeln!(out, "ambient dimension: {}", doc.ambient_dim);
            let _ = writeln!(
                out,
                "dimension: {}",
                doc.dimension.map_or("empty".into(), |d| d.to_string())
            );
            let _ = writeln!(out, "extreme points: {}", doc.vertex_count);
            for v in &doc.vertices {
                let _ = writeln!(out, "  {}", v.join(" "));
            }
            if doc.duplicates_removed > 0 {
                let _ = writeln!(out, "duplicates removed: {}", doc.duplicates_removed);
            }
            if doc.non_extreme_removed > 0 {
                let _ = writeln!(
                    out,
                    "non-extreme points removed: {}",
                    doc.non_extreme_removed
                );
            }
            let _ = writeln!(out, "facets: {}", doc.facet_count);
            let _ = writeln!(out, "simplex: {}", yes_no(doc.is_simplex));
            match (&doc.form_space, &doc.form_space_note) {
                (Some(fs), _) => {
                    let _ = writeln!(
                        out,
                        "form space: {} extreme forms, dimension {}, {} unit pairs",
                        fs.extreme_forms, fs.dimension, fs.unit_pairs
                    );
                }
                (None, Some(note)) => {
                    let _ = writeln!(out, "{note}");
                }
                (None, None) => {}
            }
            out
        }
    };
    Ok(Outcome {
        body,
        exit_code: 0,
        notes: Vec::new(),
    })
}

fn display_name(p: &Path) -> String {
    p.file_name().map_or_else(
        || p.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}
