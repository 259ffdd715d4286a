//! Seeded sampling of octonions, Jordan matrices and spinors.
//!
//! Coefficients are standard normal draws.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::jordan::{Hermitian2, JordanMatrix};
use crate::octonion::{ImaginaryUnit, Octonion};

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    let mut c = [0.0; 8];
    for v in c.iter_mut() {
        *v = normal(rng);
    }
    Octonion(c)
}

pub fn unit_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        let x = octonion(rng);
        let n = x.norm();
        if n > 1e-6 {
            return x / n;
        }
    }
}

pub fn imaginary_unit<R: Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let x = octonion(rng).im();
        if x.norm() > 1e-6 {
            return ImaginaryUnit::normalized(x).expect("nonzero imaginary part");
        }
    }
}

/// A random imaginary unit orthogonal to every element of `others`
/// (which must be orthonormal and imaginary).
pub fn orthogonal_imaginary_unit<R: Rng + ?Sized>(rng: &mut R, others: &[Octonion]) -> ImaginaryUnit {
    loop {
        let mut x = octonion(rng).im();
        for e in others {
            x -= *e * x.dot(e);
        }
        if x.norm() > 1e-3 {
            return ImaginaryUnit::normalized(x).expect("nonzero imaginary part");
        }
    }
}

/// An element of the complex subalgebra spanned by `1` and `u`.
pub fn in_complex<R: Rng + ?Sized>(rng: &mut R, u: &ImaginaryUnit) -> Octonion {
    Octonion::real(normal(rng)) + u.get() * normal(rng)
}

/// Orthonormal basis `(1, u, v, uv)` of a random quaternionic subalgebra.
pub fn quaternionic_basis<R: Rng + ?Sized>(rng: &mut R) -> [Octonion; 4] {
    let u = imaginary_unit(rng).get();
    let v = orthogonal_imaginary_unit(rng, &[u]).get();
    [Octonion::ONE, u, v, u * v]
}

/// A random element of the subalgebra with the given orthonormal basis.
pub fn in_span<R: Rng + ?Sized>(rng: &mut R, basis: &[Octonion]) -> Octonion {
    basis
        .iter()
        .fold(Octonion::ZERO, |acc, e| acc + *e * normal(rng))
}

pub fn jordan<R: Rng + ?Sized>(rng: &mut R) -> JordanMatrix {
    JordanMatrix::new(
        [normal(rng), normal(rng), normal(rng)],
        octonion(rng),
        octonion(rng),
        octonion(rng),
    )
}

/// A Jordan matrix whose entries all lie in the complex subalgebra of `u`.
pub fn jordan_in_complex<R: Rng + ?Sized>(rng: &mut R, u: &ImaginaryUnit) -> JordanMatrix {
    JordanMatrix::new(
        [normal(rng), normal(rng), normal(rng)],
        in_complex(rng, u),
        in_complex(rng, u),
        in_complex(rng, u),
    )
}

pub fn hermitian2<R: Rng + ?Sized>(rng: &mut R) -> Hermitian2 {
    Hermitian2::new([normal(rng), normal(rng)], octonion(rng))
}
