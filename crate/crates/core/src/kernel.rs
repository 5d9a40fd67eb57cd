//! SIAC kernel construction.
//!
//! A kernel is a linear combination of `r + 1` B-splines of order `l` whose
//! knot rows live in an integer-offset knot matrix. The coefficients are the
//! solution of the consistency-plus-moments system, so the kernel reproduces
//! polynomials up to degree `r` under convolution. Near domain boundaries the
//! knot matrix is translated by a shift function `lambda`, optionally gains a
//! generalized boundary spline with stacked end knots, and the scaling `H`
//! may shrink adaptively so that the support collapses to a single element at
//! the boundary itself.

use std::sync::{Arc, OnceLock};

use crate::bspline::{eval_on_knots, moment_on_knots};
use crate::error::{Result, SiacError};

/// Condition-number limit for the coefficient solve.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Kernel scaling: a constant support dilation or the adaptive ramp that
/// collapses the support to one grid element at the domain boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scaling {
    Constant(f64),
    Adaptive { h_int: f64, h_grid: f64 },
}

/// Whether the kernel family may be translated near boundaries or the data
/// is treated as periodic (symmetric kernel everywhere).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    Periodic,
    PositionDependent,
}

/// Full description of a kernel family over a data domain.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    r: usize,
    ell: usize,
    scaling: Scaling,
    generalized_spline: bool,
    domain_lo: f64,
    domain_hi: f64,
    boundary_mode: BoundaryMode,
}

impl KernelSpec {
    pub fn new(
        r: usize,
        ell: usize,
        scaling: Scaling,
        generalized_spline: bool,
        domain: (f64, f64),
        boundary_mode: BoundaryMode,
    ) -> Result<Self> {
        let (lo, hi) = domain;
        if ell < 1 {
            return Err(SiacError::InvalidInput("spline order must be >= 1".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(SiacError::InvalidInput(format!(
                "invalid domain [{lo}, {hi}]"
            )));
        }
        let footprint = (r + ell) as f64;
        match scaling {
            Scaling::Constant(h) => {
                if !(h.is_finite() && h > 0.0) {
                    return Err(SiacError::InvalidInput(format!("scaling H = {h} must be > 0")));
                }
                if boundary_mode == BoundaryMode::PositionDependent && h * footprint > hi - lo {
                    return Err(SiacError::InvalidInput(format!(
                        "kernel support H*(r+l) = {} exceeds domain width {}",
                        h * footprint,
                        hi - lo
                    )));
                }
            }
            Scaling::Adaptive { h_int, h_grid } => {
                if boundary_mode == BoundaryMode::Periodic {
                    return Err(SiacError::InvalidInput(
                        "periodic mode uses the symmetric kernel with constant scaling".into(),
                    ));
                }
                if !(h_grid.is_finite() && h_grid > 0.0) {
                    return Err(SiacError::InvalidInput("h_grid must be > 0".into()));
                }
                if !(h_int.is_finite() && h_int >= h_grid / footprint) {
                    return Err(SiacError::InvalidInput(format!(
                        "adaptive H_int = {h_int} must be >= h_grid/(r+l) = {}",
                        h_grid / footprint
                    )));
                }
            }
        }
        if boundary_mode == BoundaryMode::Periodic && generalized_spline {
            return Err(SiacError::InvalidInput(
                "periodic mode uses the symmetric kernel without generalized splines".into(),
            ));
        }
        if generalized_spline && ell < 2 {
            // For order 1 the stacked-knot boundary row collapses onto the
            // first principal row and the coefficient system is singular.
            return Err(SiacError::UnsupportedConfiguration(
                "generalized boundary splines need spline order >= 2".into(),
            ));
        }
        Ok(KernelSpec {
            r,
            ell,
            scaling,
            generalized_spline,
            domain_lo: lo,
            domain_hi: hi,
            boundary_mode,
        })
    }

    /// Symmetric periodic kernel with constant scaling.
    pub fn periodic(r: usize, ell: usize, h: f64, domain: (f64, f64)) -> Result<Self> {
        KernelSpec::new(r, ell, Scaling::Constant(h), false, domain, BoundaryMode::Periodic)
    }

    pub fn moments(&self) -> usize {
        self.r
    }

    pub fn spline_order(&self) -> usize {
        self.ell
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    pub fn generalized_spline(&self) -> bool {
        self.generalized_spline
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }

    pub fn boundary_mode(&self) -> BoundaryMode {
        self.boundary_mode
    }

    /// `r + l`, the support width of the unscaled symmetric kernel.
    pub fn footprint(&self) -> f64 {
        (self.r + self.ell) as f64
    }

    /// Scaling H at a point (the constant, or the adaptive ramp).
    pub fn scaling_at(&self, x: f64) -> f64 {
        match self.scaling {
            Scaling::Constant(h) => h,
            Scaling::Adaptive { h_int, h_grid } => adaptive_scaling(
                x,
                h_int,
                h_grid,
                self.r,
                self.ell,
                self.domain_lo,
                self.domain_hi,
            ),
        }
    }
}

/// Position-dependent scaling: `H_int` wherever the symmetric support fits,
/// with linear ramps down to `h_grid/(r+l)` exactly at the domain ends.
pub fn adaptive_scaling(
    x: f64,
    h_int: f64,
    h_grid: f64,
    r: usize,
    ell: usize,
    lo: f64,
    hi: f64,
) -> f64 {
    let m = (r + ell) as f64;
    let half_support = h_int * m / 2.0;
    let floor = h_grid / m;
    if x - half_support >= lo && x + half_support <= hi {
        return h_int;
    }
    let slope = 2.0 * (h_int - floor) / (h_int * m);
    let left = floor + (x - lo) * slope;
    let right = floor - (x - hi) * slope;
    if x - half_support <= lo && x + half_support >= hi {
        left.min(right)
    } else if x - half_support <= lo {
        left
    } else {
        right
    }
}

/// Knot-matrix translation keeping the kernel support inside the domain:
/// zero in the interior, ramping to -(r+l)/2 at the left end and +(r+l)/2 at
/// the right end.
pub fn shift_lambda(x_star: f64, spec: &KernelSpec, h_at: f64) -> f64 {
    let half = spec.footprint() / 2.0;
    let (lo, hi) = spec.domain();
    if x_star < 0.5 * (lo + hi) {
        (-half + (x_star - lo) / h_at).min(0.0)
    } else {
        (half + (x_star - hi) / h_at).max(0.0)
    }
}

/// Rows of knot sequences for the kernel's constituent B-splines, in
/// unscaled kernel coordinates, with the shift already applied.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotMatrix {
    rows: Vec<Vec<f64>>,
    lambda: f64,
    order: usize,
}

impl KnotMatrix {
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn spline_order(&self) -> usize {
        self.order
    }
}

/// Build the knot matrix for a given shift. Row `i` holds knots
/// `-(r+l)/2 + i + j + lambda` for `j = 0..=l`; a nonzero shift with the
/// generalized-spline option adds the stacked-knot boundary row (appended
/// for `lambda < 0`, prepended for `lambda > 0`).
pub fn build_knot_matrix(spec: &KernelSpec, lambda: f64) -> KnotMatrix {
    let half = spec.footprint() / 2.0;
    let ell = spec.ell;
    let principal = (0..=spec.r).map(|i| {
        (0..=ell)
            .map(|j| -half + (i + j) as f64 + lambda)
            .collect::<Vec<f64>>()
    });

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(spec.r + 2);
    if spec.generalized_spline && lambda > 0.0 {
        let base = lambda - half;
        let mut row = vec![base; ell + 1];
        row[ell] = base + 1.0;
        rows.push(row);
    }
    rows.extend(principal);
    if spec.generalized_spline && lambda < 0.0 {
        let plateau = lambda + half;
        let mut row = vec![plateau; ell + 1];
        row[0] = plateau - 1.0;
        rows.push(row);
    }
    KnotMatrix {
        rows,
        lambda,
        order: ell,
    }
}

/// Solve the consistency-plus-moments system for the kernel coefficients.
///
/// Entry `(p, g)` of the system matrix is `int B_g(y) (-y)^p dy`; the right
/// hand side is the first unit vector. With a generalized spline the system
/// is square of size `r + 2` and enforces one extra vanishing moment.
pub fn solve_coefficients(t: &KnotMatrix) -> Result<Vec<f64>> {
    let n = t.rows.len();
    let matrix: Vec<Vec<f64>> = (0..n)
        .map(|p| t.rows.iter().map(|row| moment_on_knots(row, p)).collect())
        .collect();
    let mut rhs = vec![0.0; n];
    rhs[0] = 1.0;

    let solved = crate::linalg::solve_with_condition(&matrix, &rhs).ok_or(
        SiacError::DegenerateKernel {
            cond: f64::INFINITY,
            limit: CONDITION_LIMIT,
        },
    )?;
    if solved.condition > CONDITION_LIMIT {
        return Err(SiacError::DegenerateKernel {
            cond: solved.condition,
            limit: CONDITION_LIMIT,
        });
    }
    Ok(solved.solution)
}

/// A kernel ready for evaluation at one filtering point: unscaled knot rows,
/// solved coefficients, and the scaling `H` applied at evaluation time.
#[derive(Debug, Clone)]
pub struct Kernel {
    rows: Arc<Vec<Vec<f64>>>,
    coefficients: Arc<Vec<f64>>,
    h: f64,
}

impl Kernel {
    /// `K_H(u) = (1/H) sum_g c_g B_g(u/H)`.
    pub fn eval(&self, u: f64) -> f64 {
        let v = u / self.h;
        let mut acc = 0.0;
        for (row, c) in self.rows.iter().zip(self.coefficients.iter()) {
            acc += c * eval_on_knots(row, v);
        }
        acc / self.h
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn scaling(&self) -> f64 {
        self.h
    }

    /// Support `[H t_min, H t_max]` in physical offset coordinates.
    pub fn support(&self) -> (f64, f64) {
        let t_min = self
            .rows
            .iter()
            .map(|r| r[0])
            .fold(f64::INFINITY, f64::min);
        let t_max = self
            .rows
            .iter()
            .map(|r| *r.last().unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        (self.h * t_min, self.h * t_max)
    }

    /// Sorted, deduplicated physical knot offsets (breaks in kernel smoothness).
    pub fn break_offsets(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self.rows.iter().flatten().map(|t| t * self.h).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }
}

/// Builds kernels at filtering points, caching the coefficient solves that
/// recur: the symmetric interior kernel and the two fully shifted boundary
/// kernels. Intermediate shifts are recomputed per point.
#[derive(Debug)]
pub struct KernelSet {
    spec: KernelSpec,
    symmetric: OnceLock<Result<CachedKernel>>,
    left_saturated: OnceLock<Result<CachedKernel>>,
    right_saturated: OnceLock<Result<CachedKernel>>,
}

#[derive(Debug, Clone)]
struct CachedKernel {
    rows: Arc<Vec<Vec<f64>>>,
    coefficients: Arc<Vec<f64>>,
}

impl KernelSet {
    pub fn new(spec: KernelSpec) -> Self {
        KernelSet {
            spec,
            symmetric: OnceLock::new(),
            left_saturated: OnceLock::new(),
            right_saturated: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    /// Kernel for filtering at `x_star`.
    pub fn kernel_at(&self, x_star: f64) -> Result<Kernel> {
        let spec = &self.spec;
        let (lo, hi) = spec.domain();
        if spec.boundary_mode() == BoundaryMode::Periodic {
            let h = spec.scaling_at(x_star);
            let cached = self.cached_for(0.0)?;
            return Ok(Kernel {
                rows: cached.rows,
                coefficients: cached.coefficients,
                h,
            });
        }
        if x_star < lo || x_star > hi {
            return Err(SiacError::OutOfDomain {
                x: x_star,
                lo,
                hi,
            });
        }
        let h = spec.scaling_at(x_star);
        let lambda = shift_lambda(x_star, spec, h);
        let half = spec.footprint() / 2.0;
        let cached = if lambda == 0.0 || lambda == -half || lambda == half {
            self.cached_for(lambda)?
        } else {
            let matrix = build_knot_matrix(spec, lambda);
            let coefficients = solve_coefficients(&matrix)?;
            CachedKernel {
                rows: Arc::new(matrix.rows),
                coefficients: Arc::new(coefficients),
            }
        };
        let kernel = Kernel {
            rows: cached.rows,
            coefficients: cached.coefficients,
            h,
        };
        debug_assert!(
            {
                let (s_lo, s_hi) = kernel.support();
                x_star - s_hi >= lo - 1e-12 * (hi - lo) && x_star - s_lo <= hi + 1e-12 * (hi - lo)
            },
            "kernel support escapes the domain at x* = {x_star}"
        );
        Ok(kernel)
    }

    fn cached_for(&self, lambda: f64) -> Result<CachedKernel> {
        let half = self.spec.footprint() / 2.0;
        let slot = if lambda == 0.0 {
            &self.symmetric
        } else if lambda == -half {
            &self.left_saturated
        } else {
            &self.right_saturated
        };
        slot.get_or_init(|| {
            let matrix = build_knot_matrix(&self.spec, lambda);
            let coefficients = solve_coefficients(&matrix)?;
            Ok(CachedKernel {
                rows: Arc::new(matrix.rows),
                coefficients: Arc::new(coefficients),
            })
        })
        .clone()
    }
}

/// One-off kernel construction without a cache.
pub fn make_kernel_at(x_star: f64, spec: &KernelSpec) -> Result<Kernel> {
    KernelSet::new(spec.clone()).kernel_at(x_star)
}

/// Coefficients of the symmetric (unshifted) kernel with `r + 1` B-splines
/// of order `ell`, independent of any domain or scaling.
pub(crate) fn symmetric_coefficients(r: usize, ell: usize) -> Result<Vec<f64>> {
    if ell < 1 {
        return Err(SiacError::InvalidInput("spline order must be >= 1".into()));
    }
    let half = (r + ell) as f64 / 2.0;
    let rows: Vec<Vec<f64>> = (0..=r)
        .map(|i| (0..=ell).map(|j| -half + (i + j) as f64).collect())
        .collect();
    let matrix = KnotMatrix {
        rows,
        lambda: 0.0,
        order: ell,
    };
    solve_coefficients(&matrix)
}
