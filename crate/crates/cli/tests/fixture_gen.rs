//! Regenerates the committed fixtures. Run explicitly:
//!
//! ```text
//! cargo test -p siac-cli --test fixture_gen -- --ignored
//! ```
//!
//! The moment fixture is constructed so that the noisy ion heat flux flips
//! the Bohm radicand negative somewhere on the raw grid while the default
//! per-variable filtering restores real values everywhere; the generator
//! asserts both before writing.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use siac::{compute_bohm_speed, filter_moments, BohmConfig, MomentSet, MomentVar};
use siac_cli::io::fmt_g;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[test]
#[ignore = "fixture generator"]
fn gen_profile() {
    let n = 32;
    let dx = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = String::from("# synthetic noisy profile, dx = 0.1\n");
    for j in 0..n {
        let x = (j as f64 + 0.5) * dx;
        let f = (2.0 * std::f64::consts::PI * x / 3.2).sin()
            + 0.25 * (14.0 * x).cos()
            + 0.05 * rng.random_range(-1.0..1.0);
        let _ = writeln!(out, "{} {}", fmt_g(x), fmt_g(f));
    }
    fs::create_dir_all(fixtures_dir()).unwrap();
    fs::write(fixtures_dir().join("profile.txt"), out).unwrap();
}

#[test]
#[ignore = "fixture generator"]
fn gen_moments() {
    let n = 256;
    let dx = 0.1;
    let xs: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * dx).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Quiet unit background; all of the action is in the ion heat flux,
    // whose noisy gradient drives beta below -3 at some raw grid points.
    let noise: Vec<f64> = (0..n).map(|_| 0.15 * rng.random_range(-1.0..1.0)).collect();
    let profile = |var: MomentVar, j: usize| -> f64 {
        match var {
            MomentVar::IonHeatFlux => -xs[j] + noise[j],
            MomentVar::ElectronHeatFlux
            | MomentVar::ElectronElectronExchange
            | MomentVar::ElectronIonExchange
            | MomentVar::IonIonExchange
            | MomentVar::ThermalForce => 0.0,
            _ => 1.0,
        }
    };
    let profiles: Vec<Vec<f64>> = MomentVar::ALL
        .iter()
        .map(|&var| (0..n).map(|j| profile(var, j)).collect())
        .collect();
    let moments = MomentSet::new(xs.clone(), profiles).unwrap();

    let cfg = BohmConfig::default();
    let raw = compute_bohm_speed(&moments, &cfg).unwrap();
    assert!(
        raw.complex_modulus_count() >= 1,
        "raw fixture has {} complex-modulus points; increase the noise",
        raw.complex_modulus_count()
    );
    assert_eq!(raw.degenerate_count(), 0);
    let filtered = filter_moments(&moments, &cfg).unwrap();
    let smooth = compute_bohm_speed(&filtered, &cfg).unwrap();
    assert_eq!(
        smooth.complex_modulus_count(),
        0,
        "filtered fixture still has complex-modulus points"
    );
    assert_eq!(smooth.degenerate_count(), 0);

    let mut out = String::from("# synthetic moment table, dx = 0.1\n# x");
    for var in MomentVar::ALL {
        out.push(' ');
        out.push_str(var.name());
    }
    out.push('\n');
    for j in 0..n {
        out.push_str(&fmt_g(xs[j]));
        for var in MomentVar::ALL {
            out.push(' ');
            out.push_str(&fmt_g(moments.profile(var)[j]));
        }
        out.push('\n');
    }
    fs::create_dir_all(fixtures_dir()).unwrap();
    fs::write(fixtures_dir().join("moments.txt"), out).unwrap();
}
