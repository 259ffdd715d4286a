//! Real roots of the characteristic cubic `λ³ − tλ² + σλ − d`.
//!
//! Uses the trigonometric form of the depressed cubic, which is valid
//! whenever all three roots are real (always the case for Hermitian
//! matrices). Each root is then polished with Newton steps that are kept only
//! when they reduce the residual.

use std::f64::consts::PI;

fn eval(t: f64, s: f64, d: f64, x: f64) -> (f64, f64) {
    let f = ((x - t) * x + s) * x - d;
    let df = (3.0 * x - 2.0 * t) * x + s;
    (f, df)
}

/// Discriminant of `λ³ − tλ² + σλ − d`.
pub fn discriminant(t: f64, s: f64, d: f64) -> f64 {
    18.0 * t * s * d - 4.0 * t.powi(3) * d + t * t * s * s - 4.0 * s.powi(3) - 27.0 * d * d
}

/// The three real roots of `λ³ − tλ² + σλ − d`, largest first.
pub fn characteristic_roots(t: f64, s: f64, d: f64) -> [f64; 3] {
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t.powi(3) / 27.0 + t * s / 3.0 - d;
    let scale = t.abs().max(s.abs().sqrt()).max(d.abs().cbrt());

    let mut roots = if p >= -1e-28 * scale * scale {
        // (numerically) a triple root
        let y = (-q).cbrt();
        [shift + y; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        [0, 1, 2].map(|k| shift + r * (phi - 2.0 * PI * k as f64 / 3.0).cos())
    };

    for x in roots.iter_mut() {
        for _ in 0..3 {
            let (f, df) = eval(t, s, d, *x);
            if df.abs() <= f64::EPSILON * scale * scale || f == 0.0 {
                break;
            }
            let candidate = *x - f / df;
            if eval(t, s, d, candidate).0.abs() < f.abs() {
                *x = candidate;
            } else {
                break;
            }
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}
