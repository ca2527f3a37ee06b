//! Exact linear feasibility.
//!
//! A phase-one simplex over standard form `A z = b, z >= 0` using Bland's
//! smallest-index rule, so it terminates without any numeric thresholds.
//! Infeasibility comes with a Farkas certificate read off the final
//! tableau.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vector, Matrix, Vector};
use crate::scalar::{to_strings, Scalar};

/// One row `normal . x (<= | =) offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRow<S> {
    pub normal: Vector<S>,
    pub offset: S,
}

impl<S: Scalar> HRow<S> {
    pub fn value_at(&self, x: &[S]) -> S {
        dot(&self.normal, x)
    }
}

/// Equalities `normal . x = offset` and inequalities `normal . x <= offset`
/// over free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSystem<S> {
    dim: usize,
    equalities: Vec<HRow<S>>,
    inequalities: Vec<HRow<S>>,
}

impl<S: Scalar> HSystem<S> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[HRow<S>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[HRow<S>] {
        &self.inequalities
    }

    fn check_row(&self, normal: &[S]) -> Result<()> {
        if normal.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: normal.len(),
            });
        }
        if is_zero_vector(normal) {
            return Err(Error::Range("zero normal in H-system row".into()));
        }
        Ok(())
    }

    pub fn push_equality(&mut self, normal: Vector<S>, offset: S) -> Result<()> {
        self.check_row(&normal)?;
        self.equalities.push(HRow { normal, offset });
        Ok(())
    }

    pub fn push_inequality(&mut self, normal: Vector<S>, offset: S) -> Result<()> {
        self.check_row(&normal)?;
        self.inequalities.push(HRow { normal, offset });
        Ok(())
    }

    /// `normal . x >= offset`, stored as `-normal . x <= -offset`.
    pub fn push_lower_bound(&mut self, normal: Vector<S>, offset: S) -> Result<()> {
        self.push_inequality(normal.into_iter().map(|c| -c).collect(), -offset)
    }

    pub fn contains(&self, x: &[S]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|r| r.value_at(x) == r.offset)
            && self.inequalities.iter().all(|r| r.value_at(x) <= r.offset)
    }
}

/// Nonnegative multipliers on the inequalities and free multipliers on the
/// equalities whose combination reads `0 . x <= negative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate<S> {
    pub inequality_multipliers: Vector<S>,
    pub equality_multipliers: Vector<S>,
}

impl<S: Scalar> FarkasCertificate<S> {
    pub fn verify(&self, sys: &HSystem<S>) -> bool {
        if self.inequality_multipliers.len() != sys.inequalities.len()
            || self.equality_multipliers.len() != sys.equalities.len()
            || self.inequality_multipliers.iter().any(Scalar::is_negative)
        {
            return false;
        }
        let rows = sys.inequalities.iter().zip(&self.inequality_multipliers);
        let rows = rows.chain(sys.equalities.iter().zip(&self.equality_multipliers));
        let mut normal = vec![S::zero(); sys.dim];
        let mut offset = S::zero();
        for (row, y) in rows {
            for (acc, a) in normal.iter_mut().zip(&row.normal) {
                *acc = acc.clone() + y.clone() * a;
            }
            offset = offset + y.clone() * &row.offset;
        }
        is_zero_vector(&normal) && offset.is_negative()
    }

    pub fn to_strings(&self) -> CertificateText {
        CertificateText {
            inequality_multipliers: to_strings(&self.inequality_multipliers),
            equality_multipliers: to_strings(&self.equality_multipliers),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateText {
    pub inequality_multipliers: Vec<String>,
    pub equality_multipliers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<S> {
    Feasible { witness: Vector<S> },
    Infeasible { certificate: FarkasCertificate<S> },
}

impl<S> Feasibility<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Outcome of phase one on `A z = b, z >= 0`.
pub(crate) enum StandardOutcome<S> {
    Feasible(Vector<S>),
    /// `y` with `y^T A <= 0` and `y . b > 0`.
    Infeasible(Vector<S>),
}

pub(crate) fn standard_feasibility<S: Scalar>(a: &Matrix<S>, b: &[S]) -> StandardOutcome<S> {
    let (m, n) = (a.rows(), a.cols());
    let width = n + m + 1;
    let rhs = width - 1;
    let flips: Vec<bool> = b.iter().map(Scalar::is_negative).collect();

    let mut tab = Matrix::zeros(m, width);
    for i in 0..m {
        let sign = if flips[i] { -S::one() } else { S::one() };
        for j in 0..n {
            tab.set(i, j, sign.clone() * a.get(i, j));
        }
        tab.set(i, n + i, S::one());
        tab.set(i, rhs, sign * &b[i]);
    }
    // Reduced costs of minimizing the artificial sum.
    let mut cost = vec![S::zero(); width];
    for (j, c) in cost.iter_mut().enumerate() {
        if j < n || j == rhs {
            *c = -(0..m).fold(S::zero(), |acc, i| acc + tab.get(i, j));
        }
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Bland: smallest entering index, ties in the ratio test broken by the
    // smallest basic index.
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, S)> = None;
        for i in 0..m {
            let coef = tab.get(i, enter);
            if !coef.is_positive() {
                continue;
            }
            let ratio = tab.get(i, rhs).clone() / coef;
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                        Some((i, ratio))
                    } else {
                        Some((li, lr))
                    }
                }
            };
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, row, enter);
        basis[row] = enter;
    }

    let objective = -cost[rhs].clone();
    if objective.is_zero() {
        let mut z = vec![S::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                z[bv] = tab.get(i, rhs).clone();
            }
        }
        StandardOutcome::Feasible(z)
    } else {
        // Dual of the flipped row k is 1 - (reduced cost of artificial k).
        let y = (0..m)
            .map(|k| {
                let pi = S::one() - &cost[n + k];
                if flips[k] {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        StandardOutcome::Infeasible(y)
    }
}

fn pivot<S: Scalar>(tab: &mut Matrix<S>, cost: &mut [S], row: usize, col: usize) {
    let width = tab.cols();
    let inv = S::one() / tab.get(row, col);
    for c in 0..width {
        let v = tab.get(row, c).clone() * &inv;
        tab.set(row, c, v);
    }
    for r in 0..tab.rows() {
        if r == row || tab.get(r, col).is_zero() {
            continue;
        }
        let f = tab.get(r, col).clone();
        for c in 0..width {
            let v = tab.get(r, c).clone() - &(f.clone() * tab.get(row, c));
            tab.set(r, c, v);
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (c, slot) in cost.iter_mut().enumerate() {
            *slot = slot.clone() - &(f.clone() * tab.get(row, c));
        }
    }
}

/// Decide whether an H-system has a solution.
///
/// Free variables are split as `x = p - q` and inequalities receive slacks.
pub fn lp_feasible<S: Scalar>(sys: &HSystem<S>) -> Feasibility<S> {
    let d = sys.dim;
    let ni = sys.inequalities.len();
    let ne = sys.equalities.len();
    let mut a = Matrix::zeros(ni + ne, 2 * d + ni);
    let mut b = Vec::with_capacity(ni + ne);
    let rows = sys.inequalities.iter().chain(&sys.equalities);
    // Column layout: slacks, then p, then q.
    for (i, row) in rows.enumerate() {
        if i < ni {
            a.set(i, i, S::one());
        }
        for (j, c) in row.normal.iter().enumerate() {
            a.set(i, ni + j, c.clone());
            a.set(i, ni + d + j, -c.clone());
        }
        b.push(row.offset.clone());
    }
    match standard_feasibility(&a, &b) {
        StandardOutcome::Feasible(z) => {
            let witness = (0..d).map(|j| z[ni + j].clone() - &z[ni + d + j]).collect();
            Feasibility::Feasible { witness }
        }
        StandardOutcome::Infeasible(y) => {
            let neg: Vec<S> = y.into_iter().map(|v| -v).collect();
            let certificate = FarkasCertificate {
                inequality_multipliers: neg[..ni].to_vec(),
                equality_multipliers: neg[ni..].to_vec(),
            };
            debug_assert!(certificate.verify(sys), "invalid Farkas certificate");
            Feasibility::Infeasible { certificate }
        }
    }
}

/// The system in `lambda` expressing `x = sum lambda_j p_j`, `sum lambda_j = 1`,
/// `lambda >= 0`.
pub fn membership_system<S: Scalar>(points: &[Vector<S>], x: &[S]) -> Result<HSystem<S>> {
    let m = points.len();
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    let mut sys = HSystem::new(m);
    for k in 0..x.len() {
        let normal: Vec<S> = points.iter().map(|p| p[k].clone()).collect();
        if is_zero_vector(&normal) {
            // 0 = x_k, shifted by the sum row so the normal is nonzero.
            sys.push_equality(vec![S::one(); m], x[k].clone() + S::one())?;
            continue;
        }
        sys.push_equality(normal, x[k].clone())?;
    }
    sys.push_equality(vec![S::one(); m], S::one())?;
    for j in 0..m {
        let mut e = vec![S::zero(); m];
        e[j] = -S::one();
        sys.push_inequality(e, S::zero())?;
    }
    Ok(sys)
}

/// Convex weights expressing `x` in terms of `points`, if `x` is in their
/// hull.
pub fn convex_weights<S: Scalar>(points: &[Vector<S>], x: &[S]) -> Option<Vector<S>> {
    let m = points.len();
    let d = x.len();
    if m == 0 || points.iter().any(|p| p.len() != d) {
        return None;
    }
    let mut a = Matrix::zeros(d + 1, m);
    for (j, p) in points.iter().enumerate() {
        for (k, c) in p.iter().enumerate() {
            a.set(k, j, c.clone());
        }
        a.set(d, j, S::one());
    }
    let mut b = x.to_vec();
    b.push(S::one());
    match standard_feasibility(&a, &b) {
        StandardOutcome::Feasible(z) => Some(z),
        StandardOutcome::Infeasible(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn unit_interval_is_feasible() {
        let mut sys = HSystem::new(1);
        sys.push_lower_bound(vec![r(1)], r(0)).unwrap();
        sys.push_inequality(vec![r(1)], r(1)).unwrap();
        match lp_feasible(&sys) {
            Feasibility::Feasible { witness } => {
                assert_eq!(witness, vec![r(0)]);
                assert!(sys.contains(&witness));
            }
            Feasibility::Infeasible { .. } => panic!("expected feasible"),
        }
    }

    #[test]
    fn crossed_bounds_are_infeasible_with_certificate() {
        let mut sys = HSystem::new(1);
        sys.push_lower_bound(vec![r(1)], r(1)).unwrap();
        sys.push_inequality(vec![r(1)], r(0)).unwrap();
        match lp_feasible(&sys) {
            Feasibility::Infeasible { certificate } => assert!(certificate.verify(&sys)),
            Feasibility::Feasible { .. } => panic!("expected infeasible"),
        }
    }

    #[test]
    fn equalities_with_negative_offsets() {
        let mut sys = HSystem::new(2);
        sys.push_equality(vec![r(1), r(1)], r(-3)).unwrap();
        sys.push_lower_bound(vec![r(1), r(0)], r(-5)).unwrap();
        let Feasibility::Feasible { witness } = lp_feasible(&sys) else {
            panic!("expected feasible");
        };
        assert!(sys.contains(&witness));

        sys.push_lower_bound(vec![r(0), r(1)], r(3)).unwrap();
        let Feasibility::Infeasible { certificate } = lp_feasible(&sys) else {
            panic!("expected infeasible");
        };
        assert!(certificate.verify(&sys));
    }

    #[test]
    fn zero_normals_rejected() {
        let mut sys = HSystem::<Rational>::new(2);
        assert!(sys.push_inequality(vec![r(0), r(0)], r(1)).is_err());
        assert!(sys.push_equality(vec![r(1)], r(1)).is_err());
    }

    #[test]
    fn convex_weights_reproduce_point() {
        let pts = vec![vec![r(0), r(0)], vec![r(2), r(0)], vec![r(0), r(2)]];
        let w = convex_weights(&pts, &[r(1), r(1)]).unwrap();
        assert_eq!(crate::linalg::combine(&w, &pts), vec![r(1), r(1)]);
        assert!(convex_weights(&pts, &[r(2), r(2)]).is_none());
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance, posed as feasibility with an
        // objective cut; Bland's rule must terminate.
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let mut sys = HSystem::new(4);
        sys.push_inequality(vec![q(1, 4), r(-60), q(-1, 25), r(9)], r(0))
            .unwrap();
        sys.push_inequality(vec![q(1, 2), r(-90), q(-1, 50), r(3)], r(0))
            .unwrap();
        sys.push_inequality(vec![r(0), r(0), r(1), r(0)], r(1))
            .unwrap();
        for j in 0..4 {
            let mut e = vec![r(0); 4];
            e[j] = r(1);
            sys.push_lower_bound(e, r(0)).unwrap();
        }
        sys.push_lower_bound(vec![q(3, 4), r(-150), q(1, 50), r(-6)], q(1, 20))
            .unwrap();
        let Feasibility::Feasible { witness } = lp_feasible(&sys) else {
            panic!("expected feasible");
        };
        assert!(sys.contains(&witness));
    }
}
