//! Exact convolution of the piecewise interpolant with a SIAC kernel.
//!
//! The integrand `K_H(x* - y) u_h(y)` is a polynomial between consecutive
//! breaks, where the breaks are the interpolant's element boundaries together
//! with the images of the kernel knots under `y = x* - u`. Integrating with a
//! Gauss-Legendre rule of sufficient degree between every pair of breaks
//! makes the convolution exact up to roundoff.

use crate::error::{Result, SiacError};
use crate::grid::PiecewiseInterpolant;
use crate::kernel::{BoundaryMode, KernelSet};
use crate::quadrature::GaussRule;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative tolerance (times the domain width) below which two breaks are
/// merged, avoiding zero-width panels from coincident knots and breakpoints.
const BREAK_MERGE_REL_TOL: f64 = 1e-14;

/// Filtered value `(K_H * u_h)(x_star)`.
pub fn filter_point(
    interp: &PiecewiseInterpolant,
    kernels: &KernelSet,
    x_star: f64,
) -> Result<f64> {
    let periodic = kernels.spec().boundary_mode() == BoundaryMode::Periodic;
    if periodic && !interp.is_periodic() {
        return Err(SiacError::InvalidInput(
            "periodic filtering needs a periodic interpolant".into(),
        ));
    }
    let (lo, hi) = interp.domain();
    let x_star = if periodic {
        crate::grid::wrap_into(x_star, lo, hi)
    } else {
        if x_star < lo || x_star > hi {
            return Err(SiacError::OutOfDomain { x: x_star, lo, hi });
        }
        x_star
    };

    let kernel = kernels.kernel_at(x_star)?;
    let (s_lo, s_hi) = kernel.support();
    let (mut y_lo, mut y_hi) = (x_star - s_hi, x_star - s_lo);
    if !periodic {
        y_lo = y_lo.max(lo);
        y_hi = y_hi.min(hi);
    }
    if y_hi <= y_lo {
        return Ok(0.0);
    }

    let mut breaks: Vec<f64> = kernel
        .break_offsets()
        .iter()
        .map(|&u| x_star - u)
        .filter(|y| (y_lo..=y_hi).contains(y))
        .collect();
    breaks.push(y_lo);
    breaks.push(y_hi);
    if periodic {
        let width = hi - lo;
        let k_min = ((y_lo - lo) / width).floor() as i64;
        let k_max = ((y_hi - lo) / width).floor() as i64 + 1;
        for k in k_min..=k_max {
            let offset = k as f64 * width;
            for &b in interp.breakpoints() {
                let y = b + offset;
                if (y_lo..=y_hi).contains(&y) {
                    breaks.push(y);
                }
            }
        }
    } else {
        for &b in interp.breakpoints() {
            if (y_lo..=y_hi).contains(&b) {
                breaks.push(b);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    let merge_tol = BREAK_MERGE_REL_TOL * (hi - lo);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= merge_tol);

    let degree = interp.max_degree() + kernels.spec().spline_order();
    let rule = GaussRule::new(degree.div_ceil(2) + 1);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += rule.integrate(w[0], w[1], |y| {
            let yy = if periodic { interp.wrap(y) } else { y };
            kernel.eval(x_star - y) * interp.eval_in_domain(yy)
        });
    }
    Ok(total)
}

/// Filter every point of `xs_out`. Runs as a parallel map when the
/// `parallel` feature is enabled; the output order and values are identical
/// to the sequential path.
pub fn filter_grid(
    interp: &PiecewiseInterpolant,
    kernels: &KernelSet,
    xs_out: &[f64],
) -> Result<Vec<f64>> {
    #[cfg(feature = "parallel")]
    {
        xs_out
            .par_iter()
            .map(|&x| filter_point(interp, kernels, x))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        filter_grid_seq(interp, kernels, xs_out)
    }
}

/// Sequential reference path for [`filter_grid`].
pub fn filter_grid_seq(
    interp: &PiecewiseInterpolant,
    kernels: &KernelSet,
    xs_out: &[f64],
) -> Result<Vec<f64>> {
    xs_out
        .iter()
        .map(|&x| filter_point(interp, kernels, x))
        .collect()
}
