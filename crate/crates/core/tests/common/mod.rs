#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use refinery_core::polytope::parse_vpolytope;
use refinery_core::{QuadScalar, Rational, Scalar, Vector};

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn r(a: i64) -> Rational {
    Rational::from_integer(a.into())
}

pub fn rows(raw: &[&[i64]]) -> Vec<Vector<Rational>> {
    raw.iter()
        .map(|p| p.iter().map(|&x| r(x)).collect())
        .collect()
}

/// Rank by plain Gaussian elimination, written independently of the
/// library's RREF.
pub fn rank_oracle<S: Scalar>(mut m: Vec<Vec<S>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[rank][c].clone();
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(pivot) {
                    *x = x.clone() - f.clone() * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Affine dimension of a point set via the oracle rank of differences.
pub fn affine_dim_oracle<S: Scalar>(points: &[Vector<S>]) -> usize {
    let base = &points[0];
    rank_oracle(
        points[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect(),
    )
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures")
}

pub fn rational_fixtures() -> Vec<(String, Vec<Vector<Rational>>)> {
    let mut out = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(fixture_dir())
        .expect("fixture dir")
        .map(|e| e.expect("entry").path())
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).expect("fixture");
        if let Ok(points) = parse_vpolytope::<Rational>(&text) {
            out.push((
                path.file_name().unwrap().to_string_lossy().into_owned(),
                points,
            ));
        }
    }
    out
}

pub fn quad_fixture(name: &str) -> Vec<Vector<QuadScalar>> {
    let text = std::fs::read_to_string(fixture_dir().join(name)).expect("fixture");
    parse_vpolytope::<QuadScalar>(&text).expect("parse")
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

pub fn point(dim: usize) -> impl Strategy<Value = Vector<Rational>> {
    prop::collection::vec((-4i64..=4).prop_map(r), dim)
}

/// Nonnegative weights summing to 1.
pub fn convex_weights(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..=5, len).prop_map(move |raw| {
        let total: i64 = raw.iter().sum();
        if total == 0 {
            let mut w = vec![r(0); raw.len()];
            w[0] = r(1);
            w
        } else {
            raw.iter().map(|&x| q(x, total)).collect()
        }
    })
}
