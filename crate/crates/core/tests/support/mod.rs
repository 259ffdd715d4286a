//! Reference implementations built from raw coefficient arrays, used as
//! oracles against the library.
#![allow(dead_code)]

use e6_core::{Hermitian2, JordanMatrix, Octonion};

type Quat = [f64; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qsub(a: Quat, b: Quat) -> Quat {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn qadd(a: Quat, b: Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Splits `x = p + qℓ` with basis order `(1, i, j, k, kℓ, jℓ, iℓ, ℓ)`.
fn split(x: &[f64; 8]) -> (Quat, Quat) {
    ([x[0], x[1], x[2], x[3]], [x[7], x[6], x[5], x[4]])
}

fn join(p: Quat, q: Quat) -> [f64; 8] {
    [p[0], p[1], p[2], p[3], q[3], q[2], q[1], q[0]]
}

/// `(p + qℓ)(r + sℓ) = (pr − s̄q) + (sp + qr̄)ℓ`.
pub fn mul(x: &[f64; 8], y: &[f64; 8]) -> [f64; 8] {
    let (p, q) = split(x);
    let (r, s) = split(y);
    join(
        qsub(qmul(p, r), qmul(qconj(s), q)),
        qadd(qmul(s, p), qmul(q, qconj(r))),
    )
}

pub fn omul(x: Octonion, y: Octonion) -> Octonion {
    Octonion(mul(&x.0, &y.0))
}

pub fn re(x: &[f64; 8]) -> f64 {
    x[0]
}

pub fn dot(x: &[f64; 8], y: &[f64; 8]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm_sqr(x: &[f64; 8]) -> f64 {
    dot(x, x)
}

pub fn conj(x: &[f64; 8]) -> [f64; 8] {
    let mut c = x.map(|v| -v);
    c[0] = x[0];
    c
}

pub fn diff_norm(x: &[f64; 8], y: &[f64; 8]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// `pmn + 2 Re(a(cb)) − p|b|² − m|c|² − n|a|²` for
/// `[[p, ā, c], [a, m, b̄], [c̄, b, n]]`.
pub fn det3(x: &JordanMatrix) -> f64 {
    let [p, m, n] = x.diag;
    let (a, b, c) = (x.a.0, x.b.0, x.c.0);
    p * m * n + 2.0 * re(&mul(&a, &mul(&c, &b)))
        - p * norm_sqr(&b)
        - m * norm_sqr(&c)
        - n * norm_sqr(&a)
}

/// `½((tr X)² − tr(X²))`, with `tr X² = Σ diag² + 2Σ|off|²`.
pub fn sigma(x: &JordanMatrix) -> f64 {
    let t: f64 = x.diag.iter().sum();
    let tr2: f64 = x.diag.iter().map(|d| d * d).sum::<f64>()
        + 2.0 * (norm_sqr(&x.a.0) + norm_sqr(&x.b.0) + norm_sqr(&x.c.0));
    0.5 * (t * t - tr2)
}

pub type Mat3 = [[[f64; 8]; 3]; 3];

pub fn to_mat(x: &JordanMatrix) -> Mat3 {
    let r = |v: f64| {
        let mut o = [0.0; 8];
        o[0] = v;
        o
    };
    let (a, b, c) = (x.a.0, x.b.0, x.c.0);
    [
        [r(x.diag[0]), conj(&a), c],
        [a, r(x.diag[1]), conj(&b)],
        [conj(&c), b, r(x.diag[2])],
    ]
}

pub fn from_mat(m: &Mat3) -> JordanMatrix {
    JordanMatrix::new(
        [m[0][0][0], m[1][1][0], m[2][2][0]],
        Octonion(m[1][0]),
        Octonion(m[2][1]),
        Octonion(m[0][2]),
    )
}

pub fn mat_mul(x: &Mat3, y: &Mat3) -> Mat3 {
    let mut out = [[[0.0; 8]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let p = mul(&x[i][k], &y[k][j]);
                for (o, v) in out[i][j].iter_mut().zip(p) {
                    *o += v;
                }
            }
        }
    }
    out
}

/// `½(XY + YX)`.
pub fn jordan(x: &JordanMatrix, y: &JordanMatrix) -> JordanMatrix {
    let (a, b) = (to_mat(x), to_mat(y));
    let (ab, ba) = (mat_mul(&a, &b), mat_mul(&b, &a));
    let mut s = [[[0.0; 8]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..8 {
                s[i][j][k] = 0.5 * (ab[i][j][k] + ba[i][j][k]);
            }
        }
    }
    from_mat(&s)
}

/// `X * X = X² − (tr X) X + σ(X) I`.
pub fn freudenthal_square(x: &JordanMatrix) -> JordanMatrix {
    let t = x.trace();
    jordan(x, x) - x.scale(t) + JordanMatrix::identity().scale(sigma(x))
}

/// `X·Y = ⟨a, b⟩ − ½(x₁y₂ + x₂y₁)` for `X = [[x₁, ā], [a, x₂]]`, `Y = [[y₁, b̄], [b, y₂]]`.
pub fn lorentz(x: &Hermitian2, y: &Hermitian2) -> f64 {
    dot(&x.off.0, &y.off.0) - 0.5 * (x.diag[0] * y.diag[1] + x.diag[1] * y.diag[0])
}

/// `x ↦ x` with the ℓ-half negated.
pub fn ell_conjugate(x: &[f64; 8]) -> [f64; 8] {
    [x[0], x[1], x[2], x[3], -x[4], -x[5], -x[6], -x[7]]
}

pub fn basis(idx: usize) -> [f64; 8] {
    let mut e = [0.0; 8];
    e[idx] = 1.0;
    e
}
