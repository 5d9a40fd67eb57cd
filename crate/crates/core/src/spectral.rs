//! Fourier-side diagnostics: the analytic response of the symmetric kernel
//! and single-sided amplitude spectra of gridded data.

use std::f64::consts::PI;

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Result, SiacError};
use crate::kernel::{symmetric_coefficients, Kernel};
use crate::quadrature::GaussRule;

/// Single-sided amplitude spectrum: modes `0..=floor(N/2)` with non-DC
/// (and non-Nyquist) magnitudes doubled and everything divided by `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub wavenumbers: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub windowed: bool,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.wavenumbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wavenumbers.is_empty()
    }
}

/// Symmetric Hann window weights `0.5 (1 - cos(2 pi n / (N - 1)))`.
fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / (n as f64 - 1.0)).cos()))
        .collect()
}

/// Single-sided amplitude spectrum of `values` sampled with spacing `dx`.
/// Wavenumbers are `k_m = 2 pi m / (N dx)`.
pub fn amplitude_spectrum(values: &[f64], dx: f64, apply_window: bool) -> Result<Spectrum> {
    let n = values.len();
    if n < 2 {
        return Err(SiacError::InvalidInput(format!(
            "spectrum needs at least 2 samples, got {n}"
        )));
    }
    if !(dx.is_finite() && dx > 0.0) {
        return Err(SiacError::InvalidInput(format!("dx = {dx} must be > 0")));
    }

    let mut buffer: Vec<Complex<f64>> = if apply_window {
        values
            .iter()
            .zip(hann(n))
            .map(|(&v, w)| Complex::new(v * w, 0.0))
            .collect()
    } else {
        values.iter().map(|&v| Complex::new(v, 0.0)).collect()
    };
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);

    let half = n / 2;
    let nyquist_included = n % 2 == 0;
    let mut wavenumbers = Vec::with_capacity(half + 1);
    let mut amplitudes = Vec::with_capacity(half + 1);
    for (m, value) in buffer.iter().take(half + 1).enumerate() {
        let mut amp = value.norm() / n as f64;
        if m != 0 && !(nyquist_included && m == half) {
            amp *= 2.0;
        }
        wavenumbers.push(2.0 * PI * m as f64 / (n as f64 * dx));
        amplitudes.push(amp);
    }
    Ok(Spectrum {
        wavenumbers,
        amplitudes,
        windowed: apply_window,
    })
}

/// Analytic Fourier response of the symmetric kernel with `r + 1` B-splines
/// of order `ell` and constant scaling `h`:
/// `(sin(kH/2)/(kH/2))^l (c_mid + 2 sum_g c_{mid-g} cos(g k H))`.
///
/// Defined for an odd number of B-splines (`r` even); the centered cosine
/// form does not exist otherwise.
pub fn analytic_kernel_fourier(r: usize, ell: usize, h: f64, k: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(SiacError::InvalidInput(format!("scaling H = {h} must be > 0")));
    }
    if r % 2 != 0 {
        return Err(SiacError::UnsupportedConfiguration(format!(
            "centered Fourier form needs an odd number of B-splines, got {}",
            r + 1
        )));
    }
    let coefficients = symmetric_coefficients(r, ell)?;
    let mid = r / 2;
    let mut bracket = coefficients[mid];
    for g in 1..=mid {
        bracket += 2.0 * coefficients[mid - g] * (g as f64 * k * h).cos();
    }
    Ok(sinc(0.5 * k * h).powi(ell as i32) * bracket)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `int K(u) cos(k u) du` over the kernel support by panelled quadrature
/// (the imaginary part vanishes for symmetric kernels). Validates the
/// analytic response.
pub fn numerical_kernel_fourier(kernel: &Kernel, k: f64) -> f64 {
    let rule = GaussRule::new(16);
    let breaks = kernel.break_offsets();
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let span = w[1] - w[0];
        if span <= 0.0 {
            continue;
        }
        // Keep the phase advance per panel small so the rule stays exact.
        let panels = ((k.abs() * span / 2.0).ceil() as usize).max(2);
        let h = span / panels as f64;
        for p in 0..panels {
            let a = w[0] + p as f64 * h;
            total += rule.integrate(a, a + h, |u| kernel.eval(u) * (k * u).cos());
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{make_kernel_at, KernelSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};

    #[test]
    fn response_is_one_at_zero_wavenumber() {
        for (r, ell) in [(2usize, 2usize), (2, 4), (4, 2), (4, 4)] {
            let v = analytic_kernel_fourier(r, ell, 0.37, 0.0).unwrap();
            assert_relative_eq!(v, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn response_is_even_in_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let k = rng.random_range(0.0..200.0);
            let a = analytic_kernel_fourier(2, 2, 0.1, k).unwrap();
            let b = analytic_kernel_fourier(2, 2, 0.1, -k).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn scaling_dilates_the_response() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let k = rng.random_range(0.0..50.0);
            let h = 0.35;
            let scaled = analytic_kernel_fourier(2, 2, h, k).unwrap();
            let reference = analytic_kernel_fourier(2, 2, 1.0, h * k).unwrap();
            assert_abs_diff_eq!(scaled, reference, epsilon = 1e-12);
        }
    }

    #[test]
    fn even_spline_count_is_unsupported() {
        assert!(matches!(
            analytic_kernel_fourier(1, 2, 0.1, 1.0),
            Err(SiacError::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn numerical_transform_matches_analytic() {
        let h = 0.25;
        let spec = KernelSpec::periodic(2, 2, h, (0.0, 10.0)).unwrap();
        let kernel = make_kernel_at(5.0, &spec).unwrap();
        assert_relative_eq!(numerical_kernel_fourier(&kernel, 0.0), 1.0, max_relative = 1e-10);
        for i in 0..50 {
            let k = i as f64 * (20.0 / h) / 49.0;
            let analytic = analytic_kernel_fourier(2, 2, h, k).unwrap();
            let numeric = numerical_kernel_fourier(&kernel, k);
            assert_abs_diff_eq!(analytic, numeric, epsilon = 1e-6 * numeric.abs().max(1e-9));
        }
    }

    #[test]
    fn sinc_power_envelope_bounds_large_k() {
        let h = 0.2;
        let spec = KernelSpec::periodic(2, 2, h, (0.0, 10.0)).unwrap();
        let kernel = make_kernel_at(5.0, &spec).unwrap();
        let coeff_sum: f64 = kernel.coefficients().iter().map(|c| c.abs()).sum();
        for &k in &[40.0, 90.0, 250.0] {
            let v = analytic_kernel_fourier(2, 2, h, k).unwrap().abs();
            assert!(v <= (2.0 / (k * h)).powi(2) * coeff_sum + 1e-12);
        }
    }

    #[test]
    fn pure_tone_spectrum() {
        let n = 128;
        let m = 9;
        let amp = 0.75;
        let values: Vec<f64> = (0..n)
            .map(|i| amp * (2.0 * PI * m as f64 * i as f64 / n as f64).cos())
            .collect();
        let spectrum = amplitude_spectrum(&values, 0.01, false).unwrap();
        assert_eq!(spectrum.len(), n / 2 + 1);
        assert_relative_eq!(spectrum.amplitudes[m], amp, max_relative = 1e-10);
        for (i, &a) in spectrum.amplitudes.iter().enumerate() {
            if i != m {
                assert!(a <= 1e-10, "leakage {a} at mode {i}");
            }
        }
        // Wavenumber of mode m is 2 pi m / (N dx).
        assert_relative_eq!(
            spectrum.wavenumbers[m],
            2.0 * PI * m as f64 / (n as f64 * 0.01),
            max_relative = 1e-14
        );
    }

    #[test]
    fn constant_data_is_pure_dc() {
        let values = vec![2.5; 64];
        let spectrum = amplitude_spectrum(&values, 0.1, false).unwrap();
        assert_relative_eq!(spectrum.amplitudes[0], 2.5, max_relative = 1e-12);
        for &a in &spectrum.amplitudes[1..] {
            assert!(a <= 1e-12);
        }
    }

    #[test]
    fn too_short_input_is_rejected() {
        assert!(amplitude_spectrum(&[1.0], 0.1, false).is_err());
    }

    #[test]
    fn windowed_power_does_not_exceed_unwindowed() {
        let n = 256;
        let values: Vec<f64> = (0..n).map(|i| (i as f64 * 0.17).sin() + 0.01 * i as f64).collect();
        let plain = amplitude_spectrum(&values, 0.1, false).unwrap();
        let windowed = amplitude_spectrum(&values, 0.1, true).unwrap();
        let power = |s: &Spectrum| s.amplitudes.iter().map(|a| a * a).sum::<f64>();
        assert!(power(&windowed) <= power(&plain));
    }

    #[test]
    fn hann_window_reduces_ramp_leakage() {
        let n = 256;
        let values: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        let plain = amplitude_spectrum(&values, 1.0, false).unwrap();
        let windowed = amplitude_spectrum(&values, 1.0, true).unwrap();
        for m in 8..=n / 2 {
            assert!(
                windowed.amplitudes[m] < plain.amplitudes[m],
                "no leakage reduction at mode {m}"
            );
        }
    }

    #[test]
    fn first_lobe_damping_is_monotone() {
        let h = 1.0;
        let first_zero = 2.0 * PI / h;
        let mut prev = analytic_kernel_fourier(2, 2, h, 0.0).unwrap().abs();
        assert!(prev <= 1.0 + 1e-12);
        for i in 1..=1000 {
            let k = i as f64 * first_zero / 1000.0;
            let v = analytic_kernel_fourier(2, 2, h, k).unwrap().abs();
            assert!(v <= 1.0 + 1e-12);
            assert!(v <= prev + 1e-12, "response grew inside the first lobe at k = {k}");
            prev = v;
        }
    }

    #[test]
    fn higher_spline_order_damps_more_past_first_half_lobe() {
        let h = 1.0;
        for i in 0..100 {
            let k = PI / h + i as f64 * (PI / h) / 99.0;
            let low = analytic_kernel_fourier(2, 2, h, k).unwrap().abs();
            let high = analytic_kernel_fourier(2, 4, h, k).unwrap().abs();
            assert!(
                high <= low + 1e-12,
                "order 4 response {high} above order 2 {low} at kH = {}",
                k * h
            );
        }
    }

    #[test]
    fn response_is_flat_at_the_origin() {
        // Central differences of orders 1..=r at k = 0.
        let h = 1.0;
        let step = 1e-3 / h;
        let f = |k: f64| analytic_kernel_fourier(2, 2, h, k).unwrap();
        let d1 = (f(step) - f(-step)) / (2.0 * step);
        let d2 = (f(step) - 2.0 * f(0.0) + f(-step)) / (step * step);
        assert!(d1.abs() <= 1e-6);
        assert!(d2.abs() <= 1e-6);
    }
}
