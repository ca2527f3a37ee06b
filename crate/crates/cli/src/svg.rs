//! Schematic of the hexagon with the level lines `{v = 0}` and `{v = 1}` of
//! one form. Geometry is exact up to the final drawing step; decimals only
//! appear in the emitted coordinates.

use std::fmt::Write as _;

use refinery_core::hexagon::HexagonInstance;
use refinery_core::{Form, Rational, Scalar};

use crate::error::CliError;

/// Look up a named form of the hexagon: `v1`..`v6`, `u`, `0`.
pub fn named_form(inst: &HexagonInstance, name: &str) -> Result<Form<Rational>, CliError> {
    match name {
        "u" => Ok(inst.polygon_forms.unit_form()),
        "0" => Ok(inst.polygon_forms.zero_form()),
        _ => name
            .strip_prefix('v')
            .and_then(|i| i.parse::<usize>().ok())
            .filter(|i| (1..=inst.n).contains(i))
            .map(|i| inst.window_images[i - 1].clone())
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown form {name:?}; expected v1..v{}, u or 0",
                    inst.n
                ))
            }),
    }
}

/// `v(x, y) = a x + b y + c` from the values at `s1 = (1,0)`, `s2 = (0,1)`,
/// `s4 = (-1,0)`.
fn affine_coefficients(values: &[Rational]) -> (Rational, Rational, Rational) {
    let two = Rational::from_i64(2);
    let c = (values[0].clone() + values[3].clone()) / two.clone();
    let a = (values[0].clone() - values[3].clone()) / two;
    let b = values[1].clone() - c.clone();
    (a, b, c)
}

/// Display embedding of the affine coordinates: the regular hexagon.
fn display(x: f64, y: f64) -> (f64, f64) {
    (x + 0.5 * y, y * 3f64.sqrt() / 2.0)
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

struct Canvas {
    size: f64,
    scale: f64,
}

impl Canvas {
    fn point(&self, x: f64, y: f64) -> (String, String) {
        let (dx, dy) = display(x, y);
        let c = self.size / 2.0;
        (num(c + self.scale * dx), num(c - self.scale * dy))
    }
}

pub fn render(inst: &HexagonInstance, form_name: &str, size: u32) -> Result<String, CliError> {
    let form = named_form(inst, form_name)?;
    let values = inst.values_in_labelled_order(&form);
    let (a, b, c) = affine_coefficients(&values);
    let canvas = Canvas {
        size: f64::from(size),
        scale: f64::from(size) * 0.3,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r#"  <rect width="{size}" height="{size}" fill="white"/>"#
    );
    let pts: Vec<String> = inst
        .polygon_points
        .iter()
        .map(|p| {
            let (x, y) = canvas.point(p[0].to_f64(), p[1].to_f64());
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#e8eef8" stroke="#223" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for (j, p) in inst.polygon_points.iter().enumerate() {
        let (x, y) = canvas.point(p[0].to_f64() * 1.15, p[1].to_f64() * 1.15);
        let _ = writeln!(
            out,
            r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="middle">s{}</text>"#,
            j + 1
        );
    }

    let constant = a.is_zero() && b.is_zero();
    if constant {
        let _ = writeln!(
            out,
            r#"  <text x="10" y="20" font-family="sans-serif" font-size="13">{form_name} is constant ({}): no level lines</text>"#,
            c
        );
    } else {
        let _ = writeln!(
            out,
            r#"  <text x="10" y="20" font-family="sans-serif" font-size="13">level lines of {form_name}: {form_name} = 0 (blue), {form_name} = 1 (red)</text>"#
        );
        for (level, colour) in [(0i64, "#1f5fbf"), (1, "#c0392b")] {
            // a x + b y = level - c, drawn as a long segment along (-b, a).
            let rhs = Rational::from_i64(level) - c.clone();
            let (px, py) = if !b.is_zero() {
                (Rational::from_i64(0), rhs / b.clone())
            } else {
                (rhs / a.clone(), Rational::from_i64(0))
            };
            let (dx, dy) = (-b.to_f64(), a.to_f64());
            let norm = (dx * dx + dy * dy).sqrt();
            let reach = 4.0 / norm;
            let (x1, y1) = canvas.point(px.to_f64() - reach * dx, py.to_f64() - reach * dy);
            let (x2, y2) = canvas.point(px.to_f64() + reach * dx, py.to_f64() + reach * dy);
            let _ = writeln!(
                out,
                r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" stroke-width="2" stroke-dasharray="6 4"><title>{form_name} = {level}</title></line>"#
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
