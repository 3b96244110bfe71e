use num_complex::Complex64;

use super::jet::{jet_compose, Jet};
use super::poly;
use crate::error::{Error, Result};
use crate::moebius::{mobius_point, DiskPoint, GroupElement};
use crate::numerics::{Float, Scalar, Tolerances};

/// A holomorphic function given as a closed expression tree.
///
/// Polynomial and rational coefficients are ascending (`c_0 + c_1 z + ...`).
/// A Blaschke product is `unimodular * prod ((z - l) / (1 - conj(l) z))^m`.
/// `Exp` and `Log` (principal branch) exist only for the float backend.
#[derive(Clone, Debug, PartialEq)]
pub enum HoloFunction<S> {
    Polynomial(Vec<S>),
    Rational {
        num: Vec<S>,
        den: Vec<S>,
    },
    Blaschke {
        factors: Vec<(S, usize)>,
        unimodular: S,
    },
    Sum(Vec<HoloFunction<S>>),
    Product(Vec<HoloFunction<S>>),
    Compose {
        outer: Box<HoloFunction<S>>,
        inner: Box<HoloFunction<S>>,
    },
    Exp(Box<HoloFunction<S>>),
    Log(Box<HoloFunction<S>>),
}

impl<S: Scalar> HoloFunction<S> {
    pub fn identity() -> Self {
        HoloFunction::Polynomial(vec![S::zero(), S::one()])
    }

    pub fn constant(c: S) -> Self {
        HoloFunction::Polynomial(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![S::zero(); k + 1];
        c[k] = S::one();
        HoloFunction::Polynomial(c)
    }

    pub fn rational(num: Vec<S>, den: Vec<S>) -> Self {
        HoloFunction::Rational { num, den }
    }

    /// Blaschke product with unimodular factor 1.
    pub fn blaschke(factors: Vec<(S, usize)>) -> Self {
        HoloFunction::Blaschke {
            factors,
            unimodular: S::one(),
        }
    }

    pub fn compose(outer: Self, inner: Self) -> Self {
        HoloFunction::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// The disk map `z -> mobius_point(g, z)` as a rational function.
    pub fn mobius(g: &GroupElement<S>) -> Self {
        HoloFunction::Rational {
            num: vec![-g.beta().conj(), g.alpha().conj()],
            den: vec![g.alpha().clone(), -g.beta().clone()],
        }
    }

    /// `rho_1(g) f : z -> (alpha - beta z)^{-1} f(mobius_point(g, z))`.
    pub fn rho1(g: &GroupElement<S>, f: Self) -> Self {
        let multiplier = HoloFunction::Rational {
            num: vec![S::one()],
            den: vec![g.alpha().clone(), -g.beta().clone()],
        };
        HoloFunction::Product(vec![multiplier, HoloFunction::compose(f, Self::mobius(g))])
    }

    /// Checks the structural invariants: nonzero denominators, Blaschke zeros
    /// inside the disk with a unimodular factor, no `exp`/`log` when exact.
    pub fn validate(&self) -> Result<()> {
        match self {
            HoloFunction::Polynomial(c) if c.is_empty() => {
                Err(Error::InvalidSpec("empty polynomial".into()))
            }
            HoloFunction::Polynomial(_) => Ok(()),
            HoloFunction::Rational { num, den } => {
                if num.is_empty() || poly::trim(den.clone()).iter().all(|c| c.negligible(0.0)) {
                    Err(Error::InvalidSpec(
                        "rational function with zero denominator".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            HoloFunction::Blaschke {
                factors,
                unimodular,
            } => {
                for (zero, m) in factors {
                    DiskPoint::new(zero.clone())?;
                    if *m == 0 {
                        return Err(Error::InvalidSpec("Blaschke multiplicity 0".into()));
                    }
                }
                let modulus = unimodular.abs_sq();
                let unit = if S::EXACT {
                    modulus == S::one()
                } else {
                    modulus.near(&S::one(), Tolerances::default().group)
                };
                if unit {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(
                        "Blaschke factor is not unimodular".into(),
                    ))
                }
            }
            HoloFunction::Sum(fs) | HoloFunction::Product(fs) => {
                fs.iter().try_for_each(|f| f.validate())
            }
            HoloFunction::Compose { outer, inner } => {
                outer.validate()?;
                inner.validate()
            }
            HoloFunction::Exp(f) | HoloFunction::Log(f) => {
                if S::EXACT {
                    return Err(Error::Unsupported(
                        if matches!(self, HoloFunction::Exp(_)) {
                            "exp"
                        } else {
                            "log"
                        },
                    ));
                }
                f.validate()
            }
        }
    }

    pub fn eval(&self, z: &S) -> Result<S> {
        Ok(jet_of(self, z, 0)?.value().clone())
    }

    pub fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> HoloFunction<T> {
        let coeffs = |c: &[S]| c.iter().map(f).collect::<Vec<T>>();
        match self {
            HoloFunction::Polynomial(c) => HoloFunction::Polynomial(coeffs(c)),
            HoloFunction::Rational { num, den } => HoloFunction::Rational {
                num: coeffs(num),
                den: coeffs(den),
            },
            HoloFunction::Blaschke {
                factors,
                unimodular,
            } => HoloFunction::Blaschke {
                factors: factors.iter().map(|(z, m)| (f(z), *m)).collect(),
                unimodular: f(unimodular),
            },
            HoloFunction::Sum(fs) => HoloFunction::Sum(fs.iter().map(|g| g.map(f)).collect()),
            HoloFunction::Product(fs) => {
                HoloFunction::Product(fs.iter().map(|g| g.map(f)).collect())
            }
            HoloFunction::Compose { outer, inner } => {
                HoloFunction::compose(outer.map(f), inner.map(f))
            }
            HoloFunction::Exp(g) => HoloFunction::Exp(Box::new(g.map(f))),
            HoloFunction::Log(g) => HoloFunction::Log(Box::new(g.map(f))),
        }
    }

    pub fn to_float(&self) -> HoloFunction<Float> {
        self.map(&|x: &S| x.to_c64())
    }

    /// `(numerator, denominator)` when the tree is rational (no `exp`/`log`).
    pub fn to_rational(&self) -> Option<(Vec<S>, Vec<S>)> {
        match self {
            HoloFunction::Polynomial(c) => Some((poly::trim(c.clone()), vec![S::one()])),
            HoloFunction::Rational { num, den } => {
                Some((poly::trim(num.clone()), poly::trim(den.clone())))
            }
            HoloFunction::Blaschke {
                factors,
                unimodular,
            } => {
                let mut num = vec![unimodular.clone()];
                let mut den = vec![S::one()];
                for (l, m) in factors {
                    let top = poly::pow(&[-l.clone(), S::one()], *m);
                    let bottom = poly::pow(&[S::one(), -l.conj()], *m);
                    num = poly::mul(&num, &top);
                    den = poly::mul(&den, &bottom);
                }
                Some((num, den))
            }
            HoloFunction::Sum(fs) => {
                fs.iter()
                    .try_fold((vec![S::zero()], vec![S::one()]), |(n, d), f| {
                        let (fn_, fd) = f.to_rational()?;
                        Some((
                            poly::add(&poly::mul(&n, &fd), &poly::mul(&fn_, &d)),
                            poly::mul(&d, &fd),
                        ))
                    })
            }
            HoloFunction::Product(fs) => {
                fs.iter()
                    .try_fold((vec![S::one()], vec![S::one()]), |(n, d), f| {
                        let (fn_, fd) = f.to_rational()?;
                        Some((poly::mul(&n, &fn_), poly::mul(&d, &fd)))
                    })
            }
            HoloFunction::Compose { outer, inner } => {
                let (p, q) = outer.to_rational()?;
                let (n, d) = inner.to_rational()?;
                let top = p.len().max(q.len()) - 1;
                // P(N/D) D^top and Q(N/D) D^top
                let homogenize = |c: &[S]| {
                    c.iter().enumerate().fold(vec![S::zero()], |acc, (i, ci)| {
                        let term = poly::mul(&poly::pow(&n, i), &poly::pow(&d, top - i));
                        poly::add(&acc, &poly::scale(&term, ci))
                    })
                };
                Some((homogenize(&p), homogenize(&q)))
            }
            HoloFunction::Exp(_) | HoloFunction::Log(_) => None,
        }
    }

    /// Finite singularities (poles, up to cancellation), when they can be
    /// located. `None` means unknown, e.g. under a logarithm.
    pub fn singularities(&self) -> Option<Vec<Complex64>> {
        match self {
            HoloFunction::Polynomial(_) => Some(Vec::new()),
            HoloFunction::Rational { den, .. } => poly::roots(den).ok().flatten(),
            HoloFunction::Blaschke { factors, .. } => Some(
                factors
                    .iter()
                    .filter(|(l, _)| !l.negligible(0.0))
                    .map(|(l, _)| Complex64::new(1.0, 0.0) / l.to_c64().conj())
                    .collect(),
            ),
            HoloFunction::Sum(fs) | HoloFunction::Product(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(f.singularities()?);
                }
                Some(out)
            }
            HoloFunction::Compose { outer, inner } => {
                let mut out = inner.singularities()?;
                let poles = outer.singularities()?;
                if poles.is_empty() {
                    return Some(out);
                }
                let (n, d) = inner.to_float().to_rational()?;
                for s in poles {
                    // preimages of s: roots of N - s D
                    let level = poly::add(&n, &poly::scale(&d, &-s));
                    out.extend(poly::roots(&level).ok()??);
                }
                Some(out)
            }
            HoloFunction::Exp(f) => f.singularities(),
            HoloFunction::Log(_) => None,
        }
    }
}

/// n-jet `(f(z), f'(z), ..., f^{(n)}(z))` by truncated-series arithmetic
/// over the expression tree.
pub fn jet_of<S: Scalar>(f: &HoloFunction<S>, z: &S, n: usize) -> Result<Jet<S>> {
    let id = || Jet::identity(z.clone(), n);
    let constant = |c: S| Jet::constant(z.clone(), c, n);
    let poly_jet = |c: &[S]| {
        c.iter().rev().fold(constant(S::zero()), |acc, ci| {
            let mut next = acc.mul(&id()).expect("same base and order");
            let mut d = next.clone().into_derivatives();
            d[0] = d[0].clone() + ci;
            next = Jet::new(z.clone(), d).expect("non-empty");
            next
        })
    };
    let pole = || Error::Pole { at: z.to_c64() };
    match f {
        HoloFunction::Polynomial(c) => Ok(poly_jet(c)),
        HoloFunction::Rational { num, den } => {
            let d = poly_jet(den);
            let inv = d.recip().map_err(|_| pole())?;
            poly_jet(num).mul(&inv)
        }
        HoloFunction::Blaschke {
            factors,
            unimodular,
        } => {
            let mut out = constant(unimodular.clone());
            for (l, m) in factors {
                let top = poly_jet(&[-l.clone(), S::one()]);
                let bottom = poly_jet(&[S::one(), -l.conj()])
                    .recip()
                    .map_err(|_| pole())?;
                out = out.mul(&top.mul(&bottom)?.powi(*m))?;
            }
            Ok(out)
        }
        HoloFunction::Sum(fs) => fs
            .iter()
            .try_fold(constant(S::zero()), |acc, g| acc.add(&jet_of(g, z, n)?)),
        HoloFunction::Product(fs) => fs
            .iter()
            .try_fold(constant(S::one()), |acc, g| acc.mul(&jet_of(g, z, n)?)),
        HoloFunction::Compose { outer, inner } => {
            let ji = jet_of(inner, z, n)?;
            let jo = jet_of(outer, ji.value(), n)?;
            jet_compose(&jo, &ji)
        }
        HoloFunction::Exp(g) => jet_of(g, z, n)?.exp(),
        HoloFunction::Log(g) => jet_of(g, z, n)?.ln(),
    }
}

/// Prolonged `rho_1`: maps the n-jet of `f` at `w` to the n-jet of
/// `rho_1(g) f` at the point `z0` with `mobius_point(g, z0) = w`.
///
/// Built as the product of the jet of `(alpha - beta z)^{-1}` with the
/// composite of `jf` and the jet of the Möbius map, both at `z0`.
pub fn rho1_prolonged<S: Scalar>(g: &GroupElement<S>, jf: &Jet<S>) -> Result<Jet<S>> {
    let z0 = mobius_point(&g.inverse(), jf.base())?;
    let n = jf.order();
    let multiplier = HoloFunction::Rational {
        num: vec![S::one()],
        den: vec![g.alpha().clone(), -g.beta().clone()],
    };
    let mobius = jet_of(&HoloFunction::mobius(g), &z0, n)?;
    jet_of(&multiplier, &z0, n)?.mul(&jet_compose(jf, &mobius)?)
}

/// Order of vanishing of `phi(z) - phi(lambda)` at `lambda`: the first
/// `m >= 1` whose Taylor coefficient is nonzero (exactly, or above
/// `tol.degree` for floats), searched up to `n_max`.
pub fn degree_of_zero<S: Scalar>(
    phi: &HoloFunction<S>,
    lambda: &S,
    n_max: usize,
    tol: &Tolerances,
) -> Result<usize> {
    let taylor = jet_of(phi, lambda, n_max)?.taylor();
    (1..=n_max)
        .find(|&m| !taylor[m].negligible(tol.degree))
        .ok_or(Error::DegreeExceedsOrder { order: n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Exact;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ex(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn derivs(j: &Jet<Exact>) -> Vec<Exact> {
        j.derivatives().to_vec()
    }

    #[test]
    fn jets_of_basic_functions() {
        let sq = HoloFunction::<Exact>::monomial(2);
        assert_eq!(
            derivs(&jet_of(&sq, &ex(0), 3).unwrap()),
            vec![ex(0), ex(0), ex(2), ex(0)]
        );
        let geo = HoloFunction::rational(vec![ex(1)], vec![ex(1), ex(-1)]);
        assert_eq!(
            derivs(&jet_of(&geo, &ex(0), 3).unwrap()),
            vec![ex(1), ex(1), ex(2), ex(6)]
        );
        assert!(matches!(jet_of(&geo, &ex(1), 2), Err(Error::Pole { .. })));
    }

    #[test]
    fn blaschke_factor_at_its_zero() {
        let l = q(1, 3) + Exact::i() * q(1, 4);
        let b = HoloFunction::blaschke(vec![(l.clone(), 1)]);
        let j = jet_of(&b, &l, 1).unwrap();
        assert_eq!(j.value(), &ex(0));
        assert_eq!(j.derivatives()[1], ex(1) / (ex(1) - l.abs_sq()));
        // finite difference of the float version
        let bf = b.to_float();
        let lf = l.to_c64();
        let h = 1e-5;
        let fd = (bf.eval(&(lf + h)).unwrap() - bf.eval(&(lf - h)).unwrap()) / (2.0 * h);
        assert!((fd - j.derivatives()[1].to_c64()).norm() < 1e-8);
    }

    #[test]
    fn degrees_of_zero() {
        let tol = Tolerances::default();
        let id = HoloFunction::<Exact>::identity();
        assert_eq!(degree_of_zero(&id, &q(2, 7), 4, &tol).unwrap(), 1);
        assert_eq!(
            degree_of_zero(&HoloFunction::monomial(2), &ex(0), 4, &tol).unwrap(),
            2
        );
        let l2 = q(-1, 2) + Exact::i() * q(1, 3);
        let cube = HoloFunction::blaschke(vec![(l2.clone(), 3)]);
        assert_eq!(degree_of_zero(&cube, &l2, 5, &tol).unwrap(), 3);
        assert_eq!(
            degree_of_zero(&cube.to_float(), &l2.to_c64(), 5, &tol).unwrap(),
            3
        );
        assert!(matches!(
            degree_of_zero(&HoloFunction::constant(ex(3)), &ex(0), 4, &tol),
            Err(Error::DegreeExceedsOrder { order: 4 })
        ));
    }

    #[test]
    fn validation() {
        assert!(HoloFunction::blaschke(vec![(ex(1), 1)]).validate().is_err());
        assert!(HoloFunction::blaschke(vec![(q(1, 2), 0)])
            .validate()
            .is_err());
        assert!(HoloFunction::Blaschke {
            factors: vec![],
            unimodular: ex(2)
        }
        .validate()
        .is_err());
        assert!(HoloFunction::rational(vec![ex(1)], vec![ex(0)])
            .validate()
            .is_err());
        let e = HoloFunction::Exp(Box::new(HoloFunction::<Exact>::identity()));
        assert!(matches!(e.validate(), Err(Error::Unsupported("exp"))));
        assert!(e.to_float().validate().is_ok());
    }

    fn sample_function() -> HoloFunction<Float> {
        // sum, product, composition and exp in one tree
        let p = HoloFunction::Polynomial(vec![c(0.2, 0.0), c(-1.0, 0.5), c(0.0, 0.0), c(0.3, 0.0)]);
        let r = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(2.0, 0.0), c(-1.0, 0.0)]);
        let b = HoloFunction::blaschke(vec![(c(0.3, -0.1), 2)]);
        HoloFunction::Sum(vec![
            HoloFunction::Product(vec![p.clone(), r.clone()]),
            HoloFunction::compose(b, p.clone()),
            HoloFunction::Exp(Box::new(r)),
        ])
    }

    #[test]
    fn jets_match_finite_differences() {
        let f = sample_function();
        let z = c(0.1, 0.2);
        let j = jet_of(&f, &z, 3).unwrap();
        let e = |w: Complex64| f.eval(&w).unwrap();
        // fourth-order central stencils
        let h = 1e-3;
        let d1 = (-e(z + 2.0 * h) + 8.0 * e(z + h) - 8.0 * e(z - h) + e(z - 2.0 * h)) / (12.0 * h);
        let d2 = (-e(z + 2.0 * h) + 16.0 * e(z + h) - 30.0 * e(z) + 16.0 * e(z - h)
            - e(z - 2.0 * h))
            / (12.0 * h * h);
        let h = 1e-2;
        let d3 = (-e(z + 3.0 * h) + 8.0 * e(z + 2.0 * h) - 13.0 * e(z + h) + 13.0 * e(z - h)
            - 8.0 * e(z - 2.0 * h)
            + e(z - 3.0 * h))
            / (8.0 * h * h * h);
        let d = j.derivatives();
        for (fd, exact) in [(d1, d[1]), (d2, d[2]), (d3, d[3])] {
            assert!(
                (fd - exact).norm() <= 1e-6 * exact.norm().max(1.0),
                "{fd} vs {exact}"
            );
        }
    }

    #[test]
    fn log_inverts_exp() {
        let inner = HoloFunction::Polynomial(vec![c(0.1, 0.0), c(0.5, 0.2), c(0.0, 0.3)]);
        let f = HoloFunction::Log(Box::new(HoloFunction::Exp(Box::new(inner.clone()))));
        let a = jet_of(&f, &c(0.2, 0.1), 4).unwrap();
        let b = jet_of(&inner, &c(0.2, 0.1), 4).unwrap();
        for (x, y) in a.derivatives().iter().zip(b.derivatives()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn rational_form_agrees_with_evaluation() {
        let mut f = sample_function();
        if let HoloFunction::Sum(parts) = &mut f {
            parts.pop(); // drop exp
        }
        let (n, d) = f.to_rational().unwrap();
        for z in [c(0.1, 0.2), c(-0.5, 0.3), c(0.0, -0.7)] {
            let direct = f.eval(&z).unwrap();
            let via = poly::eval(&n, &z) / poly::eval(&d, &z);
            assert!((direct - via).norm() < 1e-12);
        }
    }

    #[test]
    fn singularities_of_trees() {
        let r = HoloFunction::rational(vec![c(1.0, 0.0)], vec![c(2.0, 0.0), c(-1.0, 0.0)]);
        let s = r.singularities().unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - c(2.0, 0.0)).norm() < 1e-14);
        let b = HoloFunction::blaschke(vec![(c(0.5, 0.0), 1), (c(0.0, 0.0), 2)]);
        assert_eq!(b.singularities().unwrap(), vec![c(2.0, 0.0)]);
        // 1/(2 - z^2): poles at +-sqrt 2
        let comp = HoloFunction::compose(r, HoloFunction::monomial(2));
        let mut s = comp.singularities().unwrap();
        s.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((s[0] + 2f64.sqrt()).norm() < 1e-12 && (s[1] - 2f64.sqrt()).norm() < 1e-12);
        assert!(
            HoloFunction::Log(Box::new(HoloFunction::<Float>::identity()))
                .singularities()
                .is_none()
        );
    }

    fn random_jet(rng: &mut ChaCha8Rng, n: usize) -> Jet<Float> {
        let base = Complex64::from_polar(0.6 * rng.random::<f64>(), 6.3 * rng.random::<f64>());
        let d = (0..=n)
            .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        Jet::new(base, d).unwrap()
    }

    #[test]
    fn rho1_prolonged_is_a_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 0..=4 {
            for _ in 0..10 {
                let g1 = GroupElement::random(&mut rng, 0.7);
                let g2 = GroupElement::random(&mut rng, 0.7);
                let j = random_jet(&mut rng, n);
                let lhs = rho1_prolonged(&g1, &rho1_prolonged(&g2, &j).unwrap()).unwrap();
                let rhs = rho1_prolonged(&g1.compose(&g2), &j).unwrap();
                assert!((lhs.base() - rhs.base()).norm() < 1e-10);
                for (a, b) in lhs.derivatives().iter().zip(rhs.derivatives()) {
                    assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
                }
            }
        }
        let j = random_jet(&mut rng, 3);
        let same = rho1_prolonged(&GroupElement::identity(), &j).unwrap();
        assert_eq!(same.base(), j.base());
        for (a, b) in same.derivatives().iter().zip(j.derivatives()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn rho1_prolonged_matches_jet_of_rho1() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = HoloFunction::Polynomial(vec![
            c(0.5, 0.0),
            c(-1.0, 0.2),
            c(0.0, 0.0),
            c(0.7, -0.1),
            c(0.2, 0.0),
        ]);
        for _ in 0..10 {
            let g = GroupElement::random(&mut rng, 0.7);
            let w = Complex64::from_polar(0.8 * rng.random::<f64>(), 6.3 * rng.random::<f64>());
            let prolonged = rho1_prolonged(&g, &jet_of(&f, &w, 4).unwrap()).unwrap();
            let direct = jet_of(&HoloFunction::rho1(&g, f.clone()), prolonged.base(), 4).unwrap();
            for (a, b) in prolonged.derivatives().iter().zip(direct.derivatives()) {
                assert!((a - b).norm() <= 1e-10 * b.norm().max(1.0));
            }
            // order 0: multiplier times value at the image point
            let z0 = *prolonged.base();
            let scalar =
                f.eval(&mobius_point(&g, &z0).unwrap()).unwrap() / (g.alpha() - g.beta() * z0);
            let zeroth = rho1_prolonged(&g, &jet_of(&f, &w, 0).unwrap()).unwrap();
            assert!((zeroth.value() - scalar).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_rho1_prolonged() {
        let g = GroupElement::<Exact>::new(q(5, 4), q(3, 4), &Tolerances::default()).unwrap();
        let f = HoloFunction::Polynomial(vec![ex(1), ex(-2), q(1, 3)]);
        let j = jet_of(&f, &q(1, 5), 3).unwrap();
        let p = rho1_prolonged(&g, &j).unwrap();
        assert_eq!(p, jet_of(&HoloFunction::rho1(&g, f), p.base(), 3).unwrap());
    }

    #[test]
    fn subtracting_the_value_leaves_zero_constant_term() {
        let f = sample_function();
        let l = c(0.25, -0.4);
        let shifted = HoloFunction::Sum(vec![
            f.clone(),
            HoloFunction::constant(-f.eval(&l).unwrap()),
        ]);
        assert_eq!(jet_of(&shifted, &l, 3).unwrap().value().norm(), 0.0);
    }
}
