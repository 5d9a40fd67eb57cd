//! Bohm speed computation from filtered plasma moment profiles.
//!
//! Thirteen moment profiles on a common uniform grid feed the correction
//! factor `beta` and the Bohm speed `u = sqrt((Z beta T_ex + 3 T_ix) / m_i)`.
//! Each profile is denoised independently with its own kernel scaling
//! (expressed in grid cells) before gradients are taken; points where the
//! formula degenerates (vanishing electric field, flux, or denominator) are
//! flagged rather than crashing, and a negative radicand is reported as the
//! modulus with its own flag.

use crate::convolution::filter_grid;
use crate::error::{Result, SiacError};
use crate::grid::{build_mesh, lagrange_interpolant, PointwiseData};
use crate::kernel::{BoundaryMode, KernelSet, KernelSpec, Scaling};

/// Degeneracy guard for denominators, in normalized units.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// The thirteen moment profiles, in column order of the moment table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentVar {
    ElectronHeatFlux,
    IonHeatFlux,
    ElectronElectronExchange,
    ElectronIonExchange,
    IonIonExchange,
    ElectricField,
    ThermalForce,
    ElectronDensity,
    IonDensity,
    ElectronFlow,
    IonFlow,
    ElectronTemperature,
    IonTemperature,
}

use MomentVar::*;

impl MomentVar {
    pub const ALL: [MomentVar; 13] = [
        ElectronHeatFlux,
        IonHeatFlux,
        ElectronElectronExchange,
        ElectronIonExchange,
        IonIonExchange,
        ElectricField,
        ThermalForce,
        ElectronDensity,
        IonDensity,
        ElectronFlow,
        IonFlow,
        ElectronTemperature,
        IonTemperature,
    ];

    /// Column name used in moment tables.
    pub fn name(self) -> &'static str {
        match self {
            ElectronHeatFlux => "q_n^e",
            IonHeatFlux => "q_n^i",
            ElectronElectronExchange => "Q_ee",
            ElectronIonExchange => "Q_ei",
            IonIonExchange => "Q_ii",
            ElectricField => "E",
            ThermalForce => "R_T",
            ElectronDensity => "n_e",
            IonDensity => "n_i",
            ElectronFlow => "u_ex",
            IonFlow => "u_ix",
            ElectronTemperature => "T_ex",
            IonTemperature => "T_ix",
        }
    }

    /// Key used in JSON scaling-override files.
    pub fn json_key(self) -> &'static str {
        match self {
            ElectronHeatFlux => "q_n_e",
            IonHeatFlux => "q_n_i",
            ElectronElectronExchange => "Q_ee",
            ElectronIonExchange => "Q_ei",
            IonIonExchange => "Q_ii",
            ElectricField => "E",
            ThermalForce => "R_T",
            ElectronDensity => "n_e",
            IonDensity => "n_i",
            ElectronFlow => "u_ex",
            IonFlow => "u_ix",
            ElectronTemperature => "T_ex",
            IonTemperature => "T_ix",
        }
    }

    /// Default kernel scaling in grid cells.
    pub fn default_scaling(self) -> f64 {
        match self {
            ElectronHeatFlux => 8.0,
            IonHeatFlux => 4.0,
            ElectronElectronExchange => 16.0,
            ElectronIonExchange => 16.0,
            IonIonExchange => 16.0,
            ElectricField => 2.0,
            ThermalForce => 32.0,
            ElectronDensity => 6.0,
            IonDensity => 6.0,
            ElectronFlow => 8.0,
            IonFlow => 8.0,
            ElectronTemperature => 16.0,
            IonTemperature => 4.0,
        }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&v| v == self).unwrap()
    }
}

/// The thirteen named profiles on a common uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    xs: Vec<f64>,
    dx: f64,
    profiles: Vec<Vec<f64>>,
}

impl MomentSet {
    /// `profiles` are indexed in [`MomentVar::ALL`] order.
    pub fn new(xs: Vec<f64>, profiles: Vec<Vec<f64>>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(SiacError::InvalidInput(
                "moment grid needs at least 2 points".into(),
            ));
        }
        if profiles.len() != MomentVar::ALL.len() {
            return Err(SiacError::InvalidInput(format!(
                "expected {} profiles, got {}",
                MomentVar::ALL.len(),
                profiles.len()
            )));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SiacError::InvalidInput(
                "moment grid must be strictly increasing".into(),
            ));
        }
        let dx = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if xs
            .windows(2)
            .any(|w| ((w[1] - w[0]) - dx).abs() > 1e-9 * dx)
        {
            return Err(SiacError::InvalidInput("moment grid must be uniform".into()));
        }
        for (var, profile) in MomentVar::ALL.iter().zip(&profiles) {
            if profile.len() != xs.len() {
                return Err(SiacError::InvalidInput(format!(
                    "{}: {} values for {} grid points",
                    var.name(),
                    profile.len(),
                    xs.len()
                )));
            }
        }
        Ok(MomentSet { xs, dx, profiles })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn profile(&self, var: MomentVar) -> &[f64] {
        &self.profiles[var.index()]
    }
}

/// Physical constants, per-variable scalings (grid cells), and the kernel
/// used when filtering the moment profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct BohmConfig {
    pub z: f64,
    pub m_i: f64,
    pub e_charge: f64,
    /// Kernel scaling per variable, in multiples of the grid spacing.
    pub scalings: [f64; 13],
    pub kernel_r: usize,
    pub kernel_ell: usize,
    pub generalized_spline: bool,
    pub adaptive_scaling: bool,
}

impl Default for BohmConfig {
    fn default() -> Self {
        let mut scalings = [0.0; 13];
        for var in MomentVar::ALL {
            scalings[var.index()] = var.default_scaling();
        }
        BohmConfig {
            z: 1.0,
            m_i: 1.0,
            e_charge: 1.0,
            scalings,
            kernel_r: 2,
            kernel_ell: 2,
            generalized_spline: true,
            adaptive_scaling: true,
        }
    }
}

impl BohmConfig {
    fn validate(&self) -> Result<()> {
        if !(self.z > 0.0 && self.m_i > 0.0 && self.e_charge > 0.0) {
            return Err(SiacError::InvalidInput(
                "Z, m_i, and e must all be positive".into(),
            ));
        }
        for var in MomentVar::ALL {
            if !(self.scalings[var.index()] > 0.0) {
                return Err(SiacError::InvalidInput(format!(
                    "{}: kernel scaling must be positive",
                    var.name()
                )));
            }
        }
        Ok(())
    }
}

/// Per-point status of the Bohm speed evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    Real,
    ComplexModulus,
    Degenerate,
}

impl Validity {
    pub fn code(self) -> u8 {
        match self {
            Validity::Real => 0,
            Validity::ComplexModulus => 1,
            Validity::Degenerate => 2,
        }
    }
}

/// Bohm speed profile with its correction factor and per-point validity.
#[derive(Debug, Clone, PartialEq)]
pub struct BohmResult {
    pub beta: Vec<f64>,
    pub u_bohm: Vec<f64>,
    pub validity: Vec<Validity>,
}

impl BohmResult {
    pub fn complex_modulus_count(&self) -> usize {
        self.validity
            .iter()
            .filter(|v| **v == Validity::ComplexModulus)
            .count()
    }

    pub fn degenerate_count(&self) -> usize {
        self.validity
            .iter()
            .filter(|v| **v == Validity::Degenerate)
            .count()
    }
}

/// Central differences in the interior, first-order one-sided at the ends.
pub fn gradient(values: &[f64], dx: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 2 {
        return Err(SiacError::InvalidInput(
            "gradient needs at least 2 values".into(),
        ));
    }
    if !(dx.is_finite() && dx > 0.0) {
        return Err(SiacError::InvalidInput(format!("dx = {dx} must be > 0")));
    }
    let mut g = Vec::with_capacity(n);
    g.push((values[1] - values[0]) / dx);
    for j in 1..n - 1 {
        g.push((values[j + 1] - values[j - 1]) / (2.0 * dx));
    }
    g.push((values[n - 1] - values[n - 2]) / dx);
    Ok(g)
}

/// Pointwise correction factor `beta` and its degeneracy flags.
pub fn compute_beta(m: &MomentSet, cfg: &BohmConfig) -> Result<(Vec<f64>, Vec<bool>)> {
    cfg.validate()?;
    let dx = m.dx();
    let dq_e = gradient(m.profile(ElectronHeatFlux), dx)?;
    let dq_i = gradient(m.profile(IonHeatFlux), dx)?;
    let dt_ex = gradient(m.profile(ElectronTemperature), dx)?;

    let e = cfg.e_charge;
    let z = cfg.z;
    let n = m.len();
    let mut beta = Vec::with_capacity(n);
    let mut degenerate = Vec::with_capacity(n);
    for j in 0..n {
        let e_field = m.profile(ElectricField)[j];
        let gamma_e = m.profile(ElectronDensity)[j] * m.profile(ElectronFlow)[j];
        let gamma_i = m.profile(IonDensity)[j] * m.profile(IonFlow)[j];
        let r_t = m.profile(ThermalForce)[j];

        let mut bad = e_field.abs() < DEGENERACY_EPS
            || gamma_e.abs() < DEGENERACY_EPS
            || gamma_i.abs() < DEGENERACY_EPS;

        // alpha = -R_T / (n_e dT_ex/dx); zero thermal force means zero alpha
        // even where the temperature gradient vanishes.
        let alpha = if r_t == 0.0 {
            0.0
        } else {
            let denom = m.profile(ElectronDensity)[j] * dt_ex[j];
            if denom.abs() < DEGENERACY_EPS {
                bad = true;
                f64::NAN
            } else {
                -r_t / denom
            }
        };

        if bad {
            beta.push(f64::NAN);
            degenerate.push(true);
            continue;
        }

        let electron_bracket =
            -dq_e[j] / e_field + (m.profile(ElectronElectronExchange)[j]
                + m.profile(ElectronIonExchange)[j]) / e_field;
        let ion_bracket = -dq_i[j] / e_field + m.profile(IonIonExchange)[j] / e_field;

        let denominator = 1.0 + (1.0 + alpha) / (e * gamma_e) * electron_bracket;
        if denominator.abs() < DEGENERACY_EPS || !denominator.is_finite() {
            beta.push(f64::NAN);
            degenerate.push(true);
            continue;
        }
        let numerator = 3.0 - (3.0 + 2.0 * alpha) / (z * e * gamma_i) * ion_bracket
            + alpha / (e * gamma_e) * electron_bracket;
        let value = numerator / denominator;
        degenerate.push(!value.is_finite());
        beta.push(value);
    }
    Ok((beta, degenerate))
}

/// Bohm speed profile `sqrt((Z beta T_ex + 3 T_ix) / m_i)`; a negative
/// radicand yields the modulus with a complex-modulus flag.
pub fn compute_bohm_speed(m: &MomentSet, cfg: &BohmConfig) -> Result<BohmResult> {
    let (beta, degenerate) = compute_beta(m, cfg)?;
    let n = m.len();
    let mut u_bohm = Vec::with_capacity(n);
    let mut validity = Vec::with_capacity(n);
    for j in 0..n {
        if degenerate[j] {
            u_bohm.push(f64::NAN);
            validity.push(Validity::Degenerate);
            continue;
        }
        let radicand = (cfg.z * beta[j] * m.profile(ElectronTemperature)[j]
            + 3.0 * m.profile(IonTemperature)[j])
            / cfg.m_i;
        if !radicand.is_finite() {
            u_bohm.push(f64::NAN);
            validity.push(Validity::Degenerate);
        } else if radicand < 0.0 {
            u_bohm.push((-radicand).sqrt());
            validity.push(Validity::ComplexModulus);
        } else {
            u_bohm.push(radicand.sqrt());
            validity.push(Validity::Real);
        }
    }
    Ok(BohmResult {
        beta,
        u_bohm,
        validity,
    })
}

/// Filter every profile with its per-variable scaling (piecewise-constant
/// initialization, position-dependent kernels). The grid is unchanged.
pub fn filter_moments(m: &MomentSet, cfg: &BohmConfig) -> Result<MomentSet> {
    cfg.validate()?;
    let dx = m.dx();
    let lo = m.xs()[0] - 0.5 * dx;
    let hi = m.xs()[m.len() - 1] + 0.5 * dx;

    let mut filtered = Vec::with_capacity(MomentVar::ALL.len());
    for var in MomentVar::ALL {
        let h = cfg.scalings[var.index()] * dx;
        let scaling = if cfg.adaptive_scaling {
            Scaling::Adaptive {
                h_int: h,
                h_grid: dx,
            }
        } else {
            Scaling::Constant(h)
        };
        let run = || -> Result<Vec<f64>> {
            let spec = KernelSpec::new(
                cfg.kernel_r,
                cfg.kernel_ell,
                scaling,
                cfg.generalized_spline,
                (lo, hi),
                BoundaryMode::PositionDependent,
            )?;
            let data = PointwiseData::new(lo, hi, m.xs().to_vec(), m.profile(var).to_vec())?;
            let mesh = build_mesh(&data, 1)?;
            let interp = lagrange_interpolant(&data, &mesh, 0, 0, false)?;
            filter_grid(&interp, &KernelSet::new(spec), m.xs())
        };
        let profile = run().map_err(|err| match err {
            SiacError::InvalidInput(s) => {
                SiacError::InvalidInput(format!("{}: {s}", var.name()))
            }
            SiacError::UnsupportedConfiguration(s) => {
                SiacError::UnsupportedConfiguration(format!("{}: {s}", var.name()))
            }
            other => other,
        })?;
        filtered.push(profile);
    }
    MomentSet::new(m.xs().to_vec(), filtered)
}
