//! Sine and cosine integrals, and a sine/cosine pair that does not depend on
//! the optimization level.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 200;
const SERIES_LIMIT: f64 = 2.0;

/// `(sin x, cos x)` from two separate calls.
///
/// Optimized builds would otherwise fuse `sin` and `cos` of one argument into
/// a single `sincos` call, whose last bit can differ, so that debug and
/// release builds produced different fitness values.
pub fn sin_cos(x: f64) -> (f64, f64) {
    (x.sin(), std::hint::black_box(x).cos())
}

/// `exp(j angle)`, with the same guarantee as [`sin_cos`].
pub fn unit_phasor(angle: f64) -> Complex64 {
    let (s, c) = sin_cos(angle);
    Complex64::new(c, s)
}

/// `(Si(x), Ci(x))` for `x > 0`. Power series below 2, otherwise a
/// continued fraction for the complex exponential integral (modified Lentz).
pub fn sici(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "sici requires x > 0, got {x}");
    if x > SERIES_LIMIT {
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1e300, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 2..MAX_TERMS {
            let a = -(((i - 1) * (i - 1)) as f64);
            b += 2.0;
            d = (d * a + b).inv();
            c = b + c.inv() * a;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < EPS {
                break;
            }
        }
        h *= unit_phasor(x).conj();
        return (FRAC_PI_2 + h.im, -h.re);
    }
    let (mut si, mut ci) = (0.0, 0.0);
    let mut term = 1.0;
    for k in 1..MAX_TERMS {
        term *= x / k as f64;
        let contribution = term / k as f64;
        // Odd powers feed Si with alternating sign, even powers feed Ci.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            si += sign * contribution;
        } else {
            ci += sign * contribution;
        }
        if contribution < EPS * si.abs().max(ci.abs()).max(1e-300) {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + ci)
}
