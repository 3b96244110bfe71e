//! SU(1,1) acting on the unit disk, on functions and on matrices.
//!
//! A group element is stored as `(alpha, beta)` and stands for the matrix
//! `[[alpha, conj(beta)], [beta, conj(alpha)]]` with
//! `|alpha|^2 - |beta|^2 = 1`; composition is matrix multiplication.
//!
//! Every `apply`-style function here uses the entries of `g` as the entries
//! of the inverse map. `mobius_disk(g, z) = (conj(alpha) z - conj(beta)) /
//! (alpha - beta z)` is the Möbius map of `g^{-1}`, so the action law reads
//! `mobius_disk(g1 g2, z) = mobius_disk(g2, mobius_disk(g1, z))`, and the
//! same holds for [`mobius_algebra`]. Under this convention the resolvent
//! `R(g, a) = (alpha e - beta a)^{-1}` satisfies the cocycle identity
//! `R(g1, a) R(g2, mobius_algebra(g1, a)) = R(g1 g2, a)`, and [`rho_a_apply`]
//! is an honest (left) representation.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::jordan::spectral_radius;
use crate::numerics::{CMatrix, Float, LeftModule, Scalar, Tolerances};

/// Element of SU(1,1).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<S> {
    alpha: S,
    beta: S,
}

impl<S: Scalar> GroupElement<S> {
    /// Checks `|alpha|^2 - |beta|^2 = 1`: exactly for the exact backend,
    /// within `tol.group` for floats.
    pub fn new(alpha: S, beta: S, tol: &Tolerances) -> Result<Self> {
        let g = GroupElement { alpha, beta };
        let ok = if S::EXACT {
            g.determinant() == S::one()
        } else {
            g.defect() <= tol.group
        };
        if ok {
            Ok(g)
        } else {
            Err(Error::InvalidGroupElement { defect: g.defect() })
        }
    }

    pub fn identity() -> Self {
        GroupElement {
            alpha: S::one(),
            beta: S::zero(),
        }
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn beta(&self) -> &S {
        &self.beta
    }

    /// `|alpha|^2 - |beta|^2`.
    pub fn determinant(&self) -> S {
        self.alpha.abs_sq() - self.beta.abs_sq()
    }

    /// `| |alpha|^2 - |beta|^2 - 1 |` in double precision.
    pub fn defect(&self) -> f64 {
        (self.determinant() - S::one()).magnitude()
    }

    /// The 2x2 matrix `[[alpha, conj(beta)], [beta, conj(alpha)]]`.
    pub fn matrix(&self) -> [[S; 2]; 2] {
        [
            [self.alpha.clone(), self.beta.conj()],
            [self.beta.clone(), self.alpha.conj()],
        ]
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            alpha: self.alpha.clone() * &other.alpha + self.beta.conj() * &other.beta,
            beta: self.beta.clone() * &other.alpha + self.alpha.conj() * &other.beta,
        }
    }

    /// `(conj(alpha), -beta)`.
    pub fn inverse(&self) -> Self {
        GroupElement {
            alpha: self.alpha.conj(),
            beta: -self.beta.clone(),
        }
    }

    pub fn to_float(&self) -> GroupElement<Float> {
        GroupElement {
            alpha: self.alpha.to_c64(),
            beta: self.beta.to_c64(),
        }
    }

    /// `omega = arg alpha`, `u = conj(beta) / alpha`.
    pub fn decompose(&self) -> KDDecomposition<S> {
        KDDecomposition {
            omega: self.alpha.to_c64().arg(),
            u: DiskPoint {
                z: self.beta.conj() * &invert(&self.alpha),
            },
        }
    }

    /// Frobenius distance between the 2x2 matrices, in double precision.
    pub fn distance(&self, other: &Self) -> f64 {
        let da = (self.alpha.clone() - &other.alpha).magnitude();
        let db = (self.beta.clone() - &other.beta).magnitude();
        (2.0 * (da * da + db * db)).sqrt()
    }
}

impl GroupElement<Float> {
    /// Rebuilds `diag(e^{i omega}, e^{-i omega}) [[1, u], [conj u, 1]] / sqrt(1 - |u|^2)`.
    pub fn reassemble(d: &KDDecomposition<Float>) -> Self {
        let u = d.u.z;
        let s = 1.0 / (1.0 - u.norm_sqr()).sqrt();
        let rot = Complex64::from_polar(1.0, d.omega);
        GroupElement {
            alpha: rot * s,
            beta: rot.conj() * u.conj() * s,
        }
    }

    /// Element with `omega` uniform on `[0, 2 pi)` and `u` uniform on `|u| <= max_u`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_u: f64) -> Self {
        assert!((0.0..1.0).contains(&max_u), "max_u must lie in [0, 1)");
        let r = max_u * rng.random::<f64>().sqrt();
        let theta = rng.random::<f64>() * TAU;
        let omega = rng.random::<f64>() * TAU;
        Self::reassemble(&KDDecomposition {
            omega,
            u: DiskPoint {
                z: Complex64::from_polar(r, theta),
            },
        })
    }
}

/// A point of the open unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskPoint<S> {
    z: S,
}

impl<S: Scalar> DiskPoint<S> {
    pub fn new(z: S) -> Result<Self> {
        if inside_unit_disk(&z) {
            Ok(DiskPoint { z })
        } else {
            Err(Error::NotInDisk { z: z.to_c64() })
        }
    }

    pub fn origin() -> Self {
        DiskPoint { z: S::zero() }
    }

    pub fn value(&self) -> &S {
        &self.z
    }

    pub fn into_value(self) -> S {
        self.z
    }
}

/// The `T x D` coordinates of a group element.
#[derive(Clone, Debug, PartialEq)]
pub struct KDDecomposition<S> {
    pub omega: f64,
    pub u: DiskPoint<S>,
}

fn inside_unit_disk<S: Scalar>(z: &S) -> bool {
    if S::EXACT {
        z.abs_sq().to_exact().re < BigRational::from_integer(BigInt::from(1))
    } else {
        z.magnitude() < 1.0
    }
}

fn invert<S: Scalar>(z: &S) -> S {
    S::one() / z.clone()
}

/// Möbius map `(conj(alpha) z - conj(beta)) / (alpha - beta z)` on the disk.
pub fn mobius_disk<S: Scalar>(g: &GroupElement<S>, z: &DiskPoint<S>) -> DiskPoint<S> {
    let w = mobius_point(g, &z.z).expect("alpha - beta z cannot vanish on the open disk");
    DiskPoint { z: w }
}

/// The same map at any point of the plane; fails at the pole `alpha / beta`.
pub fn mobius_point<S: Scalar>(g: &GroupElement<S>, z: &S) -> Result<S> {
    let den = g.alpha.clone() - g.beta.clone() * z;
    if den.negligible(0.0) {
        return Err(Error::Pole { at: z.to_c64() });
    }
    Ok((g.alpha.conj() * z - g.beta.conj()) / den)
}

fn check_radius<S: Scalar>(a: &CMatrix<S>, tol: &Tolerances) -> Result<()> {
    let rho = spectral_radius(a)?;
    if rho < 1.0 - tol.eig {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "spectral radius {rho} is not inside the unit disk"
        )))
    }
}

/// `alpha e - beta a`.
fn denominator<S: Scalar>(g: &GroupElement<S>, a: &CMatrix<S>) -> CMatrix<S> {
    a.scale(&-g.beta.clone()).shifted(&-g.alpha.clone())
}

/// `(conj(alpha) a - conj(beta) e) (alpha e - beta a)^{-1}`.
///
/// Requires spectral radius `< 1`, which makes `alpha e - beta a` invertible.
pub fn mobius_algebra<S: Scalar>(
    g: &GroupElement<S>,
    a: &CMatrix<S>,
    tol: &Tolerances,
) -> Result<CMatrix<S>> {
    check_radius(a, tol)?;
    mobius_algebra_unchecked(g, a, tol)
}

/// [`mobius_algebra`] without the spectral radius check.
pub fn mobius_algebra_unchecked<S: Scalar>(
    g: &GroupElement<S>,
    a: &CMatrix<S>,
    tol: &Tolerances,
) -> Result<CMatrix<S>> {
    let num = a.scale(&g.alpha.conj()).shifted(&g.beta.conj());
    num.checked_mul(&denominator(g, a).inverse_with(tol)?)
}

/// Resolvent `R(g, a) = (alpha e - beta a)^{-1}`.
pub fn resolvent<S: Scalar>(
    g: &GroupElement<S>,
    a: &CMatrix<S>,
    tol: &Tolerances,
) -> Result<CMatrix<S>> {
    check_radius(a, tol)?;
    resolvent_unchecked(g, a, tol)
}

/// [`resolvent`] without the spectral radius check.
pub fn resolvent_unchecked<S: Scalar>(
    g: &GroupElement<S>,
    a: &CMatrix<S>,
    tol: &Tolerances,
) -> Result<CMatrix<S>> {
    denominator(g, a).inverse_with(tol)
}

/// `[rho_a(g) F](b) = R(g, b) F(mobius_algebra(g, b))`.
pub fn rho_a_apply<S, F>(
    g: &GroupElement<S>,
    f: F,
    b: &CMatrix<S>,
    tol: &Tolerances,
) -> Result<CMatrix<S>>
where
    S: Scalar,
    F: Fn(&CMatrix<S>) -> Result<CMatrix<S>>,
{
    check_radius(b, tol)?;
    let r = resolvent_unchecked(g, b, tol)?;
    let moved = mobius_algebra_unchecked(g, b, tol)?;
    r.checked_mul(&f(&moved)?)
}

/// Coherent state `v_m(u, a) = (u e - a)^{-1} m`.
pub fn coherent_state<S: Scalar, M: LeftModule<S>>(
    u: &S,
    a: &CMatrix<S>,
    m: &M,
    tol: &Tolerances,
) -> Result<M> {
    let inv = a.scale(&-S::one()).shifted(&-u.clone()).inverse_with(tol)?;
    M::act(&inv, m)
}
