//! B-spline evaluation from knot sequences.
//!
//! An order-`l` B-spline is the degree `l - 1` piecewise polynomial defined
//! by `l + 1` nondecreasing knots through the Cox-de Boor recursion. Repeated
//! knots are allowed: whenever a recursion weight has a zero denominator the
//! corresponding term is dropped, which is exactly what the generalized
//! boundary splines with stacked end knots rely on.

use crate::error::{Result, SiacError};
use crate::quadrature::GaussRule;

/// Nondecreasing knots `t_0 <= ... <= t_l` defining a single order-`l` B-spline.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSequence {
    knots: Vec<f64>,
}

impl KnotSequence {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(SiacError::InvalidInput(format!(
                "knot sequence needs at least 2 knots, got {}",
                knots.len()
            )));
        }
        if knots.iter().any(|t| !t.is_finite()) {
            return Err(SiacError::InvalidInput("non-finite knot".into()));
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(SiacError::InvalidInput("knots must be nondecreasing".into()));
        }
        if knots[knots.len() - 1] == knots[0] {
            return Err(SiacError::InvalidInput(
                "all knots equal: spline support has zero width".into(),
            ));
        }
        Ok(KnotSequence { knots })
    }

    /// Spline order `l` (degree `l - 1`).
    pub fn order(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Support interval `[t_0, t_l)`.
    pub fn support(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }
}

/// Value of the B-spline at `x`. Zero outside the support `[t_0, t_l)`.
pub fn bspline_eval(ks: &KnotSequence, x: f64) -> f64 {
    eval_on_knots(ks.knots(), x)
}

/// `int B(y) (-y)^p dy`, exact via per-span Gauss-Legendre quadrature.
pub fn bspline_moment(ks: &KnotSequence, p: usize) -> f64 {
    moment_on_knots(ks.knots(), p)
}

/// Slice-level evaluation used by the kernel hot loop (no allocation).
pub(crate) fn eval_on_knots(knots: &[f64], x: f64) -> f64 {
    let order = knots.len() - 1;
    if x < knots[0] || x >= knots[order] {
        return 0.0;
    }
    cox_de_boor(knots, 0, order, x)
}

fn cox_de_boor(t: &[f64], j: usize, order: usize, x: f64) -> f64 {
    if order == 1 {
        return if t[j] <= x && x < t[j + 1] { 1.0 } else { 0.0 };
    }
    let mut value = 0.0;
    let d_left = t[j + order - 1] - t[j];
    if d_left != 0.0 {
        value += (x - t[j]) / d_left * cox_de_boor(t, j, order - 1, x);
    }
    let d_right = t[j + order] - t[j + 1];
    if d_right != 0.0 {
        value += (t[j + order] - x) / d_right * cox_de_boor(t, j + 1, order - 1, x);
    }
    value
}

pub(crate) fn moment_on_knots(knots: &[f64], p: usize) -> f64 {
    let order = knots.len() - 1;
    // Integrand degree is (order - 1) + p on each span.
    let nodes = (order + p).div_ceil(2).max(1);
    let rule = GaussRule::new(nodes);
    let mut total = 0.0;
    for w in knots.windows(2) {
        if w[1] > w[0] {
            total += rule.integrate(w[0], w[1], |y| eval_on_knots(knots, y) * (-y).powi(p as i32));
        }
    }
    total
}
