//! Pointwise data, the superimposed mesh, and the piecewise Lagrange
//! interpolant that turns discrete samples into a continuous representation.
//!
//! Samples are treated as cell-center values of a finite-volume style grid:
//! interior cell edges sit at midpoints between adjacent sample points and
//! the outer edges at the domain bounds. Elements cover one or two cells and
//! carry a Lagrange interpolant through a stencil of nearby samples; near the
//! domain boundaries the stencil is truncated (never extended past the
//! domain), shrinking the polynomial degree.

use crate::error::{Result, SiacError};

/// Discrete samples on cell centers over a bounded interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseData {
    domain_lo: f64,
    domain_hi: f64,
    xs: Vec<f64>,
    fs: Vec<f64>,
}

impl PointwiseData {
    pub fn new(domain_lo: f64, domain_hi: f64, xs: Vec<f64>, fs: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(SiacError::InvalidInput("no sample points".into()));
        }
        if xs.len() != fs.len() {
            return Err(SiacError::InvalidInput(format!(
                "{} sample points but {} values",
                xs.len(),
                fs.len()
            )));
        }
        if !(domain_lo.is_finite() && domain_hi.is_finite() && domain_lo < domain_hi) {
            return Err(SiacError::InvalidInput(format!(
                "invalid domain [{domain_lo}, {domain_hi}]"
            )));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SiacError::InvalidInput(
                "sample points must be strictly increasing".into(),
            ));
        }
        if xs[0] <= domain_lo || xs[xs.len() - 1] >= domain_hi {
            return Err(SiacError::InvalidInput(
                "sample points must lie strictly inside the domain".into(),
            ));
        }
        if fs.iter().any(|f| !f.is_finite()) {
            return Err(SiacError::InvalidInput("non-finite sample value".into()));
        }
        Ok(PointwiseData {
            domain_lo,
            domain_hi,
            xs,
            fs,
        })
    }

    /// Cell-center data with the domain inferred from the outermost spacings:
    /// `a = x_0 - (x_1 - x_0)/2`, `b = x_{N-1} + (x_{N-1} - x_{N-2})/2`.
    pub fn from_centers(xs: Vec<f64>, fs: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(SiacError::InvalidInput(
                "need at least 2 points to infer the domain".into(),
            ));
        }
        let lo = xs[0] - 0.5 * (xs[1] - xs[0]);
        let hi = xs[xs.len() - 1] + 0.5 * (xs[xs.len() - 1] - xs[xs.len() - 2]);
        PointwiseData::new(lo, hi, xs, fs)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn fs(&self) -> &[f64] {
        &self.fs
    }
}

/// Mesh superimposed on the pointwise grid: `N + 1` cell edges and elements
/// covering one or two consecutive cells each.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    cell_edges: Vec<f64>,
    /// Inclusive cell index ranges, partitioning the domain.
    elements: Vec<(usize, usize)>,
}

impl Mesh {
    pub fn cell_edges(&self) -> &[f64] {
        &self.cell_edges
    }

    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    /// Physical bounds of element `k`.
    pub fn element_bounds(&self, k: usize) -> (f64, f64) {
        let (c0, c1) = self.elements[k];
        (self.cell_edges[c0], self.cell_edges[c1 + 1])
    }
}

/// Build the mesh: interior edges at midpoints between adjacent samples,
/// outer edges at the domain bounds. With two cells per element and an odd
/// cell count, the final element covers the single leftover cell.
pub fn build_mesh(data: &PointwiseData, cells_per_element: usize) -> Result<Mesh> {
    if !(1..=2).contains(&cells_per_element) {
        return Err(SiacError::InvalidInput(format!(
            "cells_per_element must be 1 or 2, got {cells_per_element}"
        )));
    }
    let n = data.len();
    let mut cell_edges = Vec::with_capacity(n + 1);
    cell_edges.push(data.domain_lo);
    for w in data.xs.windows(2) {
        cell_edges.push(0.5 * (w[0] + w[1]));
    }
    cell_edges.push(data.domain_hi);

    let mut elements = Vec::new();
    let mut c = 0;
    while c < n {
        let last = (c + cells_per_element - 1).min(n - 1);
        elements.push((c, last));
        c = last + 1;
    }
    Ok(Mesh {
        cell_edges,
        elements,
    })
}

/// One element's interpolating polynomial in barycentric form.
#[derive(Debug, Clone, PartialEq)]
struct ElementPoly {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl ElementPoly {
    fn new(nodes: Vec<f64>, values: Vec<f64>) -> Self {
        let weights = nodes
            .iter()
            .enumerate()
            .map(|(q, &xq)| {
                let prod: f64 = nodes
                    .iter()
                    .enumerate()
                    .filter(|&(n, _)| n != q)
                    .map(|(_, &xn)| xq - xn)
                    .product();
                1.0 / prod
            })
            .collect();
        ElementPoly {
            nodes,
            weights,
            values,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        // Barycentric second form; exact at the nodes by the early return.
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xq, &wq), &fq) in self.nodes.iter().zip(&self.weights).zip(&self.values) {
            let d = x - xq;
            if d == 0.0 {
                return fq;
            }
            let t = wq / d;
            num += t * fq;
            den += t;
        }
        num / den
    }
}

/// Element-wise polynomial representation with recorded breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseInterpolant {
    breakpoints: Vec<f64>,
    elements: Vec<ElementPoly>,
    periodic: bool,
}

impl PiecewiseInterpolant {
    /// Element boundaries, including both domain ends.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.breakpoints[0], self.breakpoints[self.breakpoints.len() - 1])
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Largest polynomial degree over the elements.
    pub fn max_degree(&self) -> usize {
        self.elements
            .iter()
            .map(|e| e.nodes.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// Value at `x`. Elements own `[left, right)`; the last element also owns
    /// its right edge. Periodic interpolants wrap any real `x` into the domain.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        let x = if self.periodic {
            wrap_into(x, lo, hi)
        } else {
            if x < lo || x > hi {
                return Err(SiacError::OutOfDomain { x, lo, hi });
            }
            x
        };
        Ok(self.eval_in_domain(x))
    }

    /// Evaluation with `x` already inside the domain (wrapped if periodic).
    pub(crate) fn eval_in_domain(&self, x: f64) -> f64 {
        let interior = &self.breakpoints[1..self.breakpoints.len() - 1];
        let k = interior.partition_point(|&b| b <= x);
        self.elements[k].eval(x)
    }

    pub(crate) fn wrap(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        wrap_into(x, lo, hi)
    }
}

pub(crate) fn wrap_into(x: f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    let mut y = x - width * ((x - lo) / width).floor();
    // Guard the x == hi image of floating-point rounding.
    if y >= hi {
        y = lo;
    }
    if y < lo {
        y = lo;
    }
    y
}

/// Build the per-element Lagrange interpolant through the stencil
/// `{I_{j-left_width}, ..., I_{j+right_width}}` anchored at each element's
/// first cell, truncated at the domain boundaries.
///
/// `left_width = right_width = 0` gives the piecewise-constant initialization.
pub fn lagrange_interpolant(
    data: &PointwiseData,
    mesh: &Mesh,
    left_width: usize,
    right_width: usize,
    periodic: bool,
) -> Result<PiecewiseInterpolant> {
    let n = data.len();
    if left_width + right_width + 1 > n {
        return Err(SiacError::InvalidInput(format!(
            "stencil of {} cells exceeds the {} available",
            left_width + right_width + 1,
            n
        )));
    }
    let mut breakpoints = Vec::with_capacity(mesh.elements().len() + 1);
    let mut elements = Vec::with_capacity(mesh.elements().len());
    breakpoints.push(mesh.cell_edges()[0]);
    for (k, &(c0, _)) in mesh.elements().iter().enumerate() {
        let lo = c0.saturating_sub(left_width);
        let hi = (c0 + right_width).min(n - 1);
        elements.push(ElementPoly::new(
            data.xs[lo..=hi].to_vec(),
            data.fs[lo..=hi].to_vec(),
        ));
        breakpoints.push(mesh.element_bounds(k).1);
    }
    Ok(PiecewiseInterpolant {
        breakpoints,
        elements,
        periodic,
    })
}
