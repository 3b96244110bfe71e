//! The functional calculus `f -> f(a)`, computed two independent ways.
//!
//! [`apply_function_jet`] reads `f(J_k(lambda)) = sum_{j<k} f^{(j)}(lambda)/j! N^j`
//! off the jets of `f`. [`apply_function_contour`] integrates
//! `f(z) (z e - a)^{-1}` over `|z| = r` with the trapezoidal rule. The
//! wavelet transforms pair `f` against coherent states with the Cauchy kernel
//! `(z - u)^{-1}`, which is the orientation that reproduces `f(u)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::{jet_of, HoloFunction};
use crate::jordan::{spectral_radius, JordanSpec};
use crate::moebius::{mobius_algebra, resolvent, DiskPoint, GroupElement};
use crate::numerics::{CMatrix, Float, LeftModule, Scalar, Tolerances};

/// `f(a)` for `a` given by a Jordan specification: upper-triangular Toeplitz
/// blocks built from Taylor coefficients, conjugated by the transform if any.
pub fn apply_function_jet<S: Scalar>(
    f: &HoloFunction<S>,
    spec: &JordanSpec<S>,
) -> Result<CMatrix<S>> {
    spec.validate(&Tolerances::default())?;
    let blocks = spec
        .blocks
        .iter()
        .map(|b| {
            let taylor = jet_of(f, &b.value, b.len - 1)?.taylor();
            Ok(CMatrix::upper_toeplitz(b.len, &taylor))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = CMatrix::block_diag(&blocks);
    match &spec.transform {
        Some(p) => m.conjugate_by(p),
        None => Ok(m),
    }
}

/// Equispaced nodes `r e^{2 pi i j / N}`.
fn circle(radius: f64, nodes: usize) -> impl Iterator<Item = Complex64> {
    (0..nodes).map(move |j| Complex64::from_polar(radius, TAU * j as f64 / nodes as f64))
}

fn check_singularities(f: &HoloFunction<Float>, radius: f64) -> Result<()> {
    if let Some(poles) = f.singularities() {
        if let Some(p) = poles.iter().find(|p| p.norm() <= radius) {
            return Err(Error::ContourViolation(format!(
                "singularity {p} lies inside the contour |z| = {radius}"
            )));
        }
    }
    Ok(())
}

/// Default contour radius `(rho(a) + 1) / 2`.
pub fn default_radius(a: &CMatrix<Float>) -> Result<f64> {
    Ok((spectral_radius(a)? + 1.0) / 2.0)
}

/// `(1 / 2 pi i) oint_{|z| = r} f(z) (z e - a)^{-1} dz` by the trapezoidal rule
/// on `nodes` points with the default radius.
pub fn apply_function_contour(
    f: &HoloFunction<Float>,
    a: &CMatrix<Float>,
    nodes: usize,
) -> Result<CMatrix<Float>> {
    apply_function_contour_with_radius(f, a, nodes, None)
}

/// [`apply_function_contour`] with an explicit radius. Requires
/// `rho(a) < r < 1` and no known singularity of `f` on `|z| <= r`.
pub fn apply_function_contour_with_radius(
    f: &HoloFunction<Float>,
    a: &CMatrix<Float>,
    nodes: usize,
    radius: Option<f64>,
) -> Result<CMatrix<Float>> {
    let id = CMatrix::identity(a.dim());
    contour_pairing(f, a, &id, nodes, radius)
}

/// `(1/N) sum_j f(z_j) z_j v_m(z_j, a)` with coherent states
/// `v_m(z, a) = (z e - a)^{-1} m`, summed in node order.
fn contour_pairing<M: LeftModule<Float>>(
    f: &HoloFunction<Float>,
    a: &CMatrix<Float>,
    m: &M,
    nodes: usize,
    radius: Option<f64>,
) -> Result<M> {
    if nodes == 0 {
        return Err(Error::ContourViolation(
            "at least one node is needed".into(),
        ));
    }
    let rho = spectral_radius(a)?;
    let r = radius.unwrap_or((rho + 1.0) / 2.0);
    if !(rho < r && r < 1.0) {
        return Err(Error::ContourViolation(format!(
            "radius {r} does not separate the spectrum (radius {rho}) from the unit circle"
        )));
    }
    check_singularities(f, r)?;
    let weight = 1.0 / nodes as f64;
    let mut acc = m.zero_like();
    for z in circle(r, nodes) {
        let kernel = a
            .scale(&Complex64::new(-1.0, 0.0))
            .shifted(&-z)
            .lu_inverse()?;
        let term = M::act(&kernel, m)?;
        acc = acc.plus(&term.scaled(&(f.eval(&z)? * z * weight)));
    }
    Ok(acc)
}

/// Cauchy integral over the unit circle, `(1/2 pi i) oint f(z) (z - u)^{-1} dz`,
/// which reproduces `f(u)` for `f` holomorphic on the closed disk.
pub fn wavelet_transform(
    f: &HoloFunction<Float>,
    u: &DiskPoint<Float>,
    nodes: usize,
) -> Result<Float> {
    if nodes == 0 {
        return Err(Error::ContourViolation(
            "at least one node is needed".into(),
        ));
    }
    check_singularities(f, 1.0)?;
    let u = *u.value();
    let weight = 1.0 / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for z in circle(1.0, nodes) {
        acc += f.eval(&z)? * z / (z - u) * weight;
    }
    Ok(acc)
}

/// Matrix wavelet transform `W_m f(g)`: the contour pairing of `f` with the
/// transformed coherent states `R(g, a) (z e - g.a)^{-1} m`, where
/// `g.a = mobius_algebra(g, a)`. At `g = e`, `m = e` this is
/// [`apply_function_contour`].
pub fn wavelet_transform_matrix<M: LeftModule<Float>>(
    f: &HoloFunction<Float>,
    g: &GroupElement<Float>,
    a: &CMatrix<Float>,
    m: &M,
    nodes: usize,
    tol: &Tolerances,
) -> Result<M> {
    let moved = mobius_algebra(g, a, tol)?;
    let r = resolvent(g, a, tol)?;
    let paired = contour_pairing(f, &moved, m, nodes, None)?;
    M::act(&r, &paired)
}

/// Frobenius defect of the covariance `Phi(rho_1(g) f) = rho_a(g) Phi(f)` at `a`:
/// the left side runs the calculus on `z -> (alpha - beta z)^{-1} f(g.z)`,
/// the right side is `R(g, a) f(g.a)`. Both sides use contour quadrature.
pub fn intertwine_check(
    f: &HoloFunction<Float>,
    g: &GroupElement<Float>,
    a: &CMatrix<Float>,
    nodes: usize,
    tol: &Tolerances,
) -> Result<f64> {
    let lhs = apply_function_contour(&HoloFunction::rho1(g, f.clone()), a, nodes)?;
    let moved = mobius_algebra(g, a, tol)?;
    let rhs = resolvent(g, a, tol)?.checked_mul(&apply_function_contour(f, &moved, nodes)?)?;
    Ok(lhs.frobenius_distance(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{build_matrix, JordanBlock};
    use crate::numerics::Exact;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ex(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn jet_route_examples() {
        let spec = JordanSpec::from_values(vec![(ex(0), 3), (Exact::from_ratio(1, 2), 2)]);
        let id = HoloFunction::<Exact>::identity();
        assert_eq!(
            apply_function_jet(&id, &spec).unwrap(),
            build_matrix(&spec).unwrap()
        );
        let j3 = JordanSpec::from_values(vec![(ex(0), 3)]);
        let sq = apply_function_jet(&HoloFunction::monomial(2), &j3).unwrap();
        let mut n2 = CMatrix::zeros(3);
        n2[(0, 2)] = ex(1);
        assert_eq!(sq, n2);
    }

    #[test]
    fn blaschke_cube_on_its_zero() {
        let l = Exact::from_ratio(-1, 2) + Exact::i() * Exact::from_ratio(1, 3);
        let phi = HoloFunction::blaschke(vec![(l.clone(), 3)]);
        let spec = JordanSpec::from_values(vec![(l.clone(), 4)]);
        let m = apply_function_jet(&phi, &spec).unwrap();
        let third = jet_of(&phi, &l, 3).unwrap().taylor()[3].clone();
        let mut expected = CMatrix::zeros(4);
        expected[(0, 3)] = third;
        assert_eq!(m, expected);
    }

    #[test]
    fn similarity_functor_exact() {
        let spec = JordanSpec::from_values(vec![
            (Exact::from_ratio(1, 3), 2),
            (Exact::from_ratio(-1, 4), 1),
        ]);
        let p = CMatrix::from_rows(vec![
            vec![ex(1), ex(2), ex(0)],
            vec![ex(0), ex(1), Exact::i()],
            vec![ex(1), ex(0), ex(1)],
        ])
        .unwrap();
        let f = HoloFunction::rational(vec![ex(1), ex(2)], vec![ex(3), ex(-1)]);
        let plain = apply_function_jet(&f, &spec).unwrap();
        let conj = apply_function_jet(&f, &spec.clone().with_transform(p.clone())).unwrap();
        assert_eq!(conj, plain.conjugate_by(&p).unwrap());
    }

    #[test]
    fn pole_on_the_spectrum() {
        let spec = JordanSpec::from_values(vec![(ex(1), 2)]);
        let f = HoloFunction::rational(vec![ex(1)], vec![ex(1), ex(-1)]);
        assert!(matches!(
            apply_function_jet(&f, &spec),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn contour_examples() {
        let a = CMatrix::diag(&[c(0.1, 0.0), c(0.2, 0.0)]);
        let id = apply_function_contour(&HoloFunction::identity(), &a, 256).unwrap();
        assert!(id.frobenius_distance(&a) < 1e-12);
        let sq = apply_function_contour(&HoloFunction::monomial(2), &a, 256).unwrap();
        assert!(sq.frobenius_distance(&CMatrix::diag(&[c(0.01, 0.0), c(0.04, 0.0)])) < 1e-10);
        let spec = JordanSpec::from_values(vec![(c(0.0, 0.0), 4)]);
        let j4 = build_matrix(&spec).unwrap();
        let by_contour = apply_function_contour(&HoloFunction::monomial(2), &j4, 512).unwrap();
        let by_jet = apply_function_jet(&HoloFunction::monomial(2), &spec).unwrap();
        assert!(by_contour.frobenius_distance(&by_jet) < 1e-9);
    }

    #[test]
    fn contour_preconditions() {
        let a = CMatrix::diag(&[c(0.5, 0.0)]);
        let near_pole = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(0.6, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(
            apply_function_contour(&near_pole, &a, 64),
            Err(Error::ContourViolation(_))
        ));
        let f = HoloFunction::identity();
        assert!(matches!(
            apply_function_contour_with_radius(&f, &a, 64, Some(0.4)),
            Err(Error::ContourViolation(_))
        ));
        let outside = CMatrix::diag(&[c(1.5, 0.0)]);
        assert!(apply_function_contour(&f, &outside, 64).is_err());
        assert!(apply_function_contour(&f, &a, 0).is_err());
    }

    #[test]
    fn contour_converges_exponentially() {
        // spectrum close to the circle and a pole just outside keep the error visible
        let spec = JordanSpec::new(vec![
            JordanBlock::new("a", c(0.9, 0.0), 2),
            JordanBlock::new("b", c(0.0, -0.85), 1),
        ]);
        let a = build_matrix(&spec).unwrap();
        let f = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(-0.98, 0.0)]);
        let truth = apply_function_jet(&f, &spec).unwrap();
        let e128 = apply_function_contour(&f, &a, 128)
            .unwrap()
            .frobenius_distance(&truth);
        let e256 = apply_function_contour(&f, &a, 256)
            .unwrap()
            .frobenius_distance(&truth);
        assert!(e128 > 1e-8, "error {e128} already at round-off");
        assert!(e256 * 10.0 <= e128, "{e128} -> {e256}");
    }

    #[test]
    fn wavelet_reproduces_values() {
        let one = HoloFunction::constant(c(1.0, 0.0));
        let u = DiskPoint::new(c(0.3, 0.4)).unwrap();
        assert!((wavelet_transform(&one, &u, 64).unwrap() - 1.0).norm() < 1e-14);
        let cube = HoloFunction::monomial(3);
        let u = DiskPoint::new(c(0.3, 0.0)).unwrap();
        assert!((wavelet_transform(&cube, &u, 256).unwrap() - 0.027).norm() < 1e-10);
        let geo = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(-0.5, 0.0)]);
        let u = DiskPoint::new(c(0.1, 0.0)).unwrap();
        assert!((wavelet_transform(&geo, &u, 256).unwrap() - 1.0 / 0.95).norm() < 1e-10);
        let inside = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(0.5, 0.0), c(-1.0, 0.0)]);
        assert!(wavelet_transform(&inside, &u, 64).is_err());
    }

    #[test]
    fn wavelet_matrix_reductions() {
        let a = CMatrix::from_rows(vec![
            vec![c(0.2, 0.1), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.3, 0.0)],
        ])
        .unwrap();
        let f = HoloFunction::monomial(2);
        let e = GroupElement::identity();
        let w = wavelet_transform_matrix(&f, &e, &a, &CMatrix::identity(2), 256, &tol()).unwrap();
        assert!(w.frobenius_distance(&apply_function_contour(&f, &a, 256).unwrap()) < 1e-15);
        // root vector of J_3(0): f(z) = z gives a m
        let j3 = build_matrix(&JordanSpec::from_values(vec![(c(0.0, 0.0), 3)])).unwrap();
        let m = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let w =
            wavelet_transform_matrix(&HoloFunction::identity(), &e, &j3, &m, 256, &tol()).unwrap();
        let am = j3.mul_vec(&m).unwrap();
        assert!(w.iter().zip(&am).all(|(x, y)| (x - y).norm() < 1e-12));
    }

    #[test]
    fn wavelet_matrix_is_covariant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let g = GroupElement::random(&mut rng, 0.5);
        let a = CMatrix::from_rows(vec![
            vec![c(0.2, 0.1), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(-0.3, 0.2)],
        ])
        .unwrap();
        let f = HoloFunction::Polynomial(vec![c(1.0, 0.0), c(0.0, -1.0), c(0.5, 0.0)]);
        let w = wavelet_transform_matrix(&f, &g, &a, &CMatrix::identity(2), 512, &tol()).unwrap();
        let lhs = apply_function_contour(&HoloFunction::rho1(&g, f), &a, 512).unwrap();
        assert!(w.frobenius_distance(&lhs) < 1e-10);
    }

    #[test]
    fn intertwining_examples() {
        use rand::SeedableRng;
        let a = CMatrix::from_rows(vec![
            vec![c(0.2, 0.1), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.3, 0.2)],
        ])
        .unwrap();
        let f = HoloFunction::Polynomial(vec![c(0.5, 0.0), c(-1.0, 0.3), c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(
            intertwine_check(&f, &GroupElement::identity(), &a, 256, &tol()).unwrap(),
            0.0
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let g = GroupElement::random(&mut rng, 0.5);
            assert!(intertwine_check(&f, &g, &a, 1024, &tol()).unwrap() < 1e-8);
            let one = HoloFunction::constant(c(1.0, 0.0));
            assert!(intertwine_check(&one, &g, &a, 1024, &tol()).unwrap() < 1e-10);
        }
    }
}
