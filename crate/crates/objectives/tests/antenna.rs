use std::f64::consts::PI;

use cfo_core::noise::NoiseState;
use cfo_core::{EvalContext, Objective};
use cfo_objectives::pbm::linear_array_noise_sigma;
use cfo_objectives::{build, evaluate, Noisy, ObjectiveOptions};

const CTX: EvalContext = EvalContext { step: 0, probe: 0 };

fn within(value: f64, target: f64, frac: f64) -> bool {
    (value - target).abs() <= frac * target.abs()
}

#[test]
fn dipole_near_reported_optimum() {
    let d = evaluate("PBM_1", &[2.58, 0.63]).unwrap();
    assert!(within(d, 3.2, 0.05), "{d}");
}

#[test]
fn collinear_six_at_uniform_spacing() {
    let d = evaluate("PBM_5", &[0.99; 5]).unwrap();
    assert!(within(d, 11.22, 0.05), "{d}");
}

#[test]
fn circular_array_phase_symmetry() {
    let a = evaluate("PBM_3", &[0.5, PI / 2.0]).unwrap();
    let b = evaluate("PBM_3", &[1.5, PI / 2.0]).unwrap();
    assert!((a - b).abs() <= 1e-9 * a, "{a} vs {b}");
}

#[test]
fn linear_array_broadside() {
    let d = evaluate("PBM_2", &[5.85, PI / 2.0]).unwrap();
    assert!(within(d, 18.11, 0.05), "{d}");
}

#[test]
fn antenna_bounds() {
    let b = |id: &str| build(id, &ObjectiveOptions::default()).unwrap().space().bounds().to_vec();
    assert_eq!(b("PBM_1"), vec![(0.5, 3.0), (0.0, PI / 2.0)]);
    assert_eq!(b("PBM_2"), vec![(5.0, 15.0), (0.0, PI)]);
    assert_eq!(b("PBM_3"), vec![(0.0, 4.0), (0.0, PI)]);
    assert_eq!(b("PBM_5"), vec![(0.5, 1.5); 5]);
}

#[test]
fn noise_preset_variance() {
    assert!((linear_array_noise_sigma().powi(2) - 0.2).abs() < 1e-6);
}

#[test]
fn noise_is_separable_and_reproducible() {
    let clean = build("PBM_2", &ObjectiveOptions::default()).unwrap();
    let mut noisy = Noisy::linear_array_preset(clean.clone(), 17);
    let mut again = Noisy::linear_array_preset(clean.clone(), 17);
    let mut stream = NoiseState::new(0.0, linear_array_noise_sigma(), 17);
    let points = [[5.0, 1.0], [7.5, PI / 2.0], [15.0, 3.0], [9.3, 0.2]];
    for x in points {
        let got = noisy.evaluate(&x, CTX).unwrap();
        assert_eq!(got, clean.value(&x).unwrap() + stream.deviate());
        assert_eq!(got, again.evaluate(&x, CTX).unwrap());
    }
    let mut other = Noisy::linear_array_preset(clean.clone(), 18);
    let mut fresh = Noisy::linear_array_preset(clean, 17);
    assert_ne!(other.evaluate(&points[0], CTX).unwrap(), fresh.evaluate(&points[0], CTX).unwrap());
}

#[test]
fn million_draws_match_the_stated_moments() {
    let mut state = NoiseState::new(0.0, 0.4472, 20_080_415);
    let n = 1_000_000;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..n {
        let z = state.deviate();
        sum += z;
        sum_sq += z * z;
    }
    let mean = sum / n as f64;
    let var = sum_sq / n as f64 - mean * mean;
    assert!(mean.abs() < 0.002, "{mean}");
    assert!((0.198..=0.202).contains(&var), "{var}");
}

// Exact values recorded from both a debug and a release build. A mismatch in
// only one profile means the optimizer changed the arithmetic, e.g. by fusing
// a sine and cosine into one call. The bits depend on the platform libm.
#[cfg(all(target_arch = "x86_64", target_os = "linux", target_env = "gnu"))]
#[test]
fn surrogate_values_are_build_independent() {
    let cases: [(&str, &[f64], u64); 4] = [
        ("PBM_1", &[2.3, 0.7], 0x3fa73d6986315684),
        ("PBM_2", &[9.648602841413052, 0.39731829694255394], 0x3ffac83f22ced0d3),
        ("PBM_3", &[1.2345, 1.3], 0x4000b576430336b9),
        ("PBM_5", &[0.7, 0.9, 1.1, 1.3, 0.95], 0x40240ccbdf5e19ff),
    ];
    for (id, x, bits) in cases {
        let v = evaluate(id, x).unwrap();
        assert_eq!(v.to_bits(), bits, "{id} at {x:?}: {v:?}");
    }
}
