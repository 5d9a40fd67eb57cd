//! The four subcommands: filter, spectrum, kernel-response, bohm.

use std::fs;

use siac::{
    amplitude_spectrum, analytic_kernel_fourier, build_mesh, compute_bohm_speed, filter_grid,
    filter_moments, lagrange_interpolant, BohmConfig, BoundaryMode, KernelSet, KernelSpec,
    MomentVar, PiecewiseInterpolant, PointwiseData, Scaling,
};

use crate::io::{fmt_g, read_moments, read_xy, render_table, Output};
use crate::{siac_err, BohmArgs, CliError, FilterArgs, KernelArgs, KernelResponseArgs, SpectrumArgs};

fn kernel_spec(
    args: &KernelArgs,
    domain: (f64, f64),
    h_grid: f64,
) -> Result<KernelSpec, CliError> {
    let scaling = if args.adaptive {
        if args.h.is_some() {
            return Err(CliError::Config(
                "--H conflicts with --adaptive; use --H-int".into(),
            ));
        }
        let h_int = args
            .h_int
            .ok_or_else(|| CliError::Config("--adaptive needs --H-int".into()))?;
        Scaling::Adaptive { h_int, h_grid }
    } else {
        if args.h_int.is_some() {
            return Err(CliError::Config("--H-int needs --adaptive".into()));
        }
        let h = args
            .h
            .ok_or_else(|| CliError::Config("constant scaling needs --H".into()))?;
        Scaling::Constant(h)
    };
    let mode = if args.periodic {
        BoundaryMode::Periodic
    } else {
        BoundaryMode::PositionDependent
    };
    KernelSpec::new(args.r, args.l, scaling, args.generalized_spline, domain, mode)
        .map_err(siac_err)
}

fn echo_kernel(spec: &KernelSpec, points: usize) -> Vec<String> {
    let (lo, hi) = spec.domain();
    let scaling = match spec.scaling() {
        Scaling::Constant(h) => format!("scaling: constant H = {}", fmt_g(h)),
        Scaling::Adaptive { h_int, h_grid } => format!(
            "scaling: adaptive H_int = {} h_grid = {}",
            fmt_g(h_int),
            fmt_g(h_grid)
        ),
    };
    vec![
        format!("r: {}", spec.moments()),
        format!("l: {}", spec.spline_order()),
        scaling,
        format!("generalized-spline: {}", spec.generalized_spline()),
        format!(
            "boundary-mode: {}",
            match spec.boundary_mode() {
                BoundaryMode::Periodic => "periodic",
                BoundaryMode::PositionDependent => "position-dependent",
            }
        ),
        format!("domain: [{}, {}]", fmt_g(lo), fmt_g(hi)),
        format!("points: {points}"),
    ]
}

/// Piecewise-constant initialization of the profile.
fn piecewise_constant(
    data: &PointwiseData,
    periodic: bool,
) -> Result<PiecewiseInterpolant, CliError> {
    let mesh = build_mesh(data, 1).map_err(siac_err)?;
    lagrange_interpolant(data, &mesh, 0, 0, periodic).map_err(siac_err)
}

fn filtered_profile(
    xs: &[f64],
    fs: &[f64],
    kernel: &KernelArgs,
) -> Result<(Vec<f64>, KernelSpec), CliError> {
    let data = PointwiseData::from_centers(xs.to_vec(), fs.to_vec()).map_err(siac_err)?;
    let (lo, hi) = data.domain();
    let spec = kernel_spec(kernel, (lo, hi), (hi - lo) / xs.len() as f64)?;
    let interp = piecewise_constant(&data, kernel.periodic)?;
    let kernels = KernelSet::new(spec.clone());
    let out = filter_grid(&interp, &kernels, xs).map_err(siac_err)?;
    Ok((out, spec))
}

pub fn run_filter(args: &FilterArgs) -> Result<(), CliError> {
    let (xs, fs) = read_xy(&args.input)?;
    let (filtered, spec) = filtered_profile(&xs, &fs, &args.kernel)?;
    let mut header = vec![
        "siac filter".to_string(),
        format!("input: {}", args.input.display()),
    ];
    header.extend(echo_kernel(&spec, xs.len()));
    let rows: Vec<Vec<f64>> = xs
        .iter()
        .zip(&filtered)
        .map(|(&x, &f)| vec![x, f])
        .collect();
    Output::from_option(&args.output).write(&render_table(&header, "x f_filtered", &rows))
}

pub fn run_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let (xs, fs) = read_xy(&args.input)?;
    let dx = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    let base = amplitude_spectrum(&fs, dx, args.window).map_err(siac_err)?;

    let mut header = vec![
        "siac spectrum".to_string(),
        format!("input: {}", args.input.display()),
        format!("window: {}", args.window),
        format!("filtered: {}", args.filtered),
    ];
    let (columns, rows): (&str, Vec<Vec<f64>>) = if args.filtered {
        let (filtered, spec) = filtered_profile(&xs, &fs, &args.kernel)?;
        header.extend(echo_kernel(&spec, xs.len()));
        let of_filtered = amplitude_spectrum(&filtered, dx, args.window).map_err(siac_err)?;
        let rows = base
            .wavenumbers
            .iter()
            .zip(&base.amplitudes)
            .zip(&of_filtered.amplitudes)
            .map(|((&k, &a), &af)| vec![k, a, af])
            .collect();
        ("k amplitude amplitude_filtered", rows)
    } else {
        let rows = base
            .wavenumbers
            .iter()
            .zip(&base.amplitudes)
            .map(|(&k, &a)| vec![k, a])
            .collect();
        ("k amplitude", rows)
    };
    Output::from_option(&args.output).write(&render_table(&header, columns, &rows))
}

pub fn run_kernel_response(args: &KernelResponseArgs) -> Result<(), CliError> {
    let kernel = &args.kernel;
    if kernel.adaptive || kernel.h_int.is_some() || kernel.generalized_spline {
        return Err(CliError::Config(
            "unsupported configuration: the kernel response is defined for the \
             constant-scaling symmetric kernel only"
                .into(),
        ));
    }
    let h = kernel
        .h
        .ok_or_else(|| CliError::Config("kernel response needs --H".into()))?;
    let k_max = args.k_max.unwrap_or(20.0 / h);
    if !(k_max.is_finite() && k_max > 0.0) {
        return Err(CliError::Config(format!("--k-max = {k_max} must be > 0")));
    }
    if args.k_points < 2 {
        return Err(CliError::Config("--k-points must be at least 2".into()));
    }

    let mut rows = Vec::with_capacity(args.k_points);
    for i in 0..args.k_points {
        let k = k_max * i as f64 / (args.k_points - 1) as f64;
        let value = analytic_kernel_fourier(kernel.r, kernel.l, h, k).map_err(siac_err)?;
        rows.push(vec![k, value.abs()]);
    }
    let header = vec![
        "siac kernel-response".to_string(),
        format!("r: {}", kernel.r),
        format!("l: {}", kernel.l),
        format!("scaling: constant H = {}", fmt_g(h)),
        format!("k-max: {}", fmt_g(k_max)),
        format!("k-points: {}", args.k_points),
    ];
    Output::from_option(&args.output).write(&render_table(&header, "k response_magnitude", &rows))
}

fn apply_scaling_overrides(cfg: &mut BohmConfig, path: &std::path::Path) -> Result<(), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let map = value
        .as_object()
        .ok_or_else(|| CliError::Config("scalings file must be a JSON object".into()))?;
    for (key, raw) in map {
        let var = MomentVar::ALL
            .iter()
            .find(|v| v.json_key() == key)
            .ok_or_else(|| CliError::Config(format!("unknown scaling key '{key}'")))?;
        let scaling = raw
            .as_f64()
            .filter(|v| v.is_finite() && *v > 0.0)
            .ok_or_else(|| {
                CliError::Config(format!("scaling '{key}' must be a positive number"))
            })?;
        cfg.scalings[var.index()] = scaling;
    }
    Ok(())
}

pub fn run_bohm(args: &BohmArgs) -> Result<(), CliError> {
    let moments = read_moments(&args.input)?;
    let mut cfg = BohmConfig {
        kernel_r: args.r,
        kernel_ell: args.l,
        adaptive_scaling: args.adaptive,
        generalized_spline: args.generalized_spline,
        ..BohmConfig::default()
    };
    if let Some(path) = &args.scalings {
        apply_scaling_overrides(&mut cfg, path)?;
    }

    let filtered = filter_moments(&moments, &cfg).map_err(siac_err)?;
    let result = compute_bohm_speed(&filtered, &cfg).map_err(siac_err)?;
    let complex_points = result.complex_modulus_count();
    let degenerate_points = result.degenerate_count();
    if args.strict && degenerate_points > 0 {
        return Err(CliError::Numeric(format!(
            "{degenerate_points} degenerate points (strict mode)"
        )));
    }

    let scalings_echo = MomentVar::ALL
        .iter()
        .map(|v| format!("{} = {}", v.json_key(), fmt_g(cfg.scalings[v.index()])))
        .collect::<Vec<_>>()
        .join(" ");
    let header = vec![
        "siac bohm".to_string(),
        format!("input: {}", args.input.display()),
        format!("kernel: r = {} l = {}", cfg.kernel_r, cfg.kernel_ell),
        format!(
            "scaling-mode: {}",
            if cfg.adaptive_scaling {
                "adaptive"
            } else {
                "constant"
            }
        ),
        format!("generalized-spline: {}", cfg.generalized_spline),
        format!(
            "constants: Z = {} m_i = {} e = {}",
            fmt_g(cfg.z),
            fmt_g(cfg.m_i),
            fmt_g(cfg.e_charge)
        ),
        format!("scalings (cells): {scalings_echo}"),
        format!("strict: {}", args.strict),
    ];
    let rows: Vec<Vec<f64>> = moments
        .xs()
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            vec![
                x,
                result.beta[j],
                result.u_bohm[j],
                result.validity[j].code() as f64,
            ]
        })
        .collect();
    let mut text = render_table(&header, "x beta u_bohm validity", &rows);
    text.push_str(&format!("# complex-modulus points: {complex_points}\n"));
    text.push_str(&format!("# degenerate points: {degenerate_points}\n"));
    eprintln!("complex-modulus points: {complex_points}, degenerate points: {degenerate_points}");
    Output::from_option(&args.output).write(&text)
}
