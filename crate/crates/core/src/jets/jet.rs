use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Truncated Taylor data `(z, u, u_1, ..., u_n)` at a base point `z`.
///
/// `derivatives()[j]` is the j-th derivative value, not divided by `j!`.
/// Arithmetic converts to Taylor coefficients `u_j / j!` internally.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    base: S,
    derivs: Vec<S>,
}

fn factorials<S: Scalar>(n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = S::one();
    out.push(f.clone());
    for j in 1..=n {
        f = f * S::from_i64(j as i64);
        out.push(f.clone());
    }
    out
}

impl<S: Scalar> Jet<S> {
    /// Jet from derivative values; `derivs` must be non-empty.
    pub fn new(base: S, derivs: Vec<S>) -> Result<Self> {
        if derivs.is_empty() {
            return Err(Error::JetMismatch("a jet needs at least its value".into()));
        }
        Ok(Jet { base, derivs })
    }

    /// Jet from Taylor coefficients `c_j = u_j / j!`.
    pub fn from_taylor(base: S, coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least its value");
        let fact = factorials::<S>(coeffs.len() - 1);
        let derivs = coeffs.into_iter().zip(fact).map(|(c, f)| c * f).collect();
        Jet { base, derivs }
    }

    pub fn constant(base: S, value: S, order: usize) -> Self {
        let mut derivs = vec![S::zero(); order + 1];
        derivs[0] = value;
        Jet { base, derivs }
    }

    /// Jet of `z -> z` at `base`.
    pub fn identity(base: S, order: usize) -> Self {
        let mut derivs = vec![S::zero(); order + 1];
        derivs[0] = base.clone();
        if order >= 1 {
            derivs[1] = S::one();
        }
        Jet { base, derivs }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn value(&self) -> &S {
        &self.derivs[0]
    }

    pub fn derivatives(&self) -> &[S] {
        &self.derivs
    }

    pub fn into_derivatives(self) -> Vec<S> {
        self.derivs
    }

    /// Taylor coefficients `u_j / j!`.
    pub fn taylor(&self) -> Vec<S> {
        let fact = factorials::<S>(self.order());
        self.derivs
            .iter()
            .zip(fact)
            .map(|(u, f)| u.clone() / f)
            .collect()
    }

    /// Drops derivatives above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a jet");
        Jet {
            base: self.base.clone(),
            derivs: self.derivs[..=order].to_vec(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::JetMismatch(format!(
                "orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        if !same_point(&self.base, &other.base) {
            return Err(Error::JetMismatch(format!(
                "bases {} and {}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    fn with_taylor(&self, coeffs: Vec<S>) -> Self {
        Jet::from_taylor(self.base.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Jet {
            base: self.base.clone(),
            derivs: self
                .derivs
                .iter()
                .zip(&other.derivs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Jet {
            base: self.base.clone(),
            derivs: self.derivs.iter().map(|u| u.clone() * s).collect(),
        }
    }

    /// Leibniz rule, done as a truncated Cauchy product of Taylor coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_taylor(series_mul(&self.taylor(), &other.taylor())))
    }

    /// Jet of `1 / f`; fails when `f` vanishes at the base.
    pub fn recip(&self) -> Result<Self> {
        let a = self.taylor();
        if a[0].negligible(0.0) {
            return Err(Error::Pole {
                at: self.base.to_c64(),
            });
        }
        let inv0 = S::one() / a[0].clone();
        let mut b = vec![inv0.clone()];
        for k in 1..a.len() {
            let mut s = S::zero();
            for j in 1..=k {
                s = s + a[j].clone() * &b[k - j];
            }
            b.push(-(s * &inv0));
        }
        Ok(self.with_taylor(b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn powi(&self, m: usize) -> Self {
        let mut out = Jet::constant(self.base.clone(), S::one(), self.order());
        for _ in 0..m {
            out = out.mul(self).expect("same base and order");
        }
        out
    }

    /// Jet of `exp f`; float backend only.
    pub fn exp(&self) -> Result<Self> {
        let a = self.taylor();
        let b0 = a[0].exp().ok_or(Error::Unsupported("exp"))?;
        let mut b = vec![b0];
        for k in 1..a.len() {
            let mut s = S::zero();
            for j in 1..=k {
                s = s + S::from_i64(j as i64) * &a[j] * &b[k - j];
            }
            b.push(s / S::from_i64(k as i64));
        }
        Ok(self.with_taylor(b))
    }

    /// Jet of the principal `log f`; float backend only.
    pub fn ln(&self) -> Result<Self> {
        let a = self.taylor();
        let b0 = a[0].ln().ok_or(Error::Unsupported("log"))?;
        if a[0].negligible(0.0) {
            return Err(Error::Pole {
                at: self.base.to_c64(),
            });
        }
        let mut b = vec![b0];
        for k in 1..a.len() {
            let mut s = S::zero();
            for j in 1..k {
                s = s + S::from_i64(j as i64) * &b[j] * &a[k - j];
            }
            let bk = (a[k].clone() - s / S::from_i64(k as i64)) / a[0].clone();
            b.push(bk);
        }
        Ok(self.with_taylor(b))
    }
}

/// Exact equality, or agreement to `1e-9` relative for floats.
fn same_point<S: Scalar>(a: &S, b: &S) -> bool {
    a.near(b, 1e-9 * a.magnitude().max(b.magnitude()).max(1.0))
}

fn series_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut s = S::zero();
            for j in 0..=k {
                s = s + a[j].clone() * &b[k - j];
            }
            s
        })
        .collect()
}

/// Jet product `p q` (same base and order).
pub fn jet_mul<S: Scalar>(p: &Jet<S>, q: &Jet<S>) -> Result<Jet<S>> {
    p.mul(q)
}

/// `outer o inner`: `outer` is a jet at `w0`, `inner` a jet at `z` with value
/// `w0`; the result is the jet of the composite at `z`.
///
/// Horner evaluation of the outer Taylor series at the inner series with its
/// constant term removed (Faà di Bruno without the bookkeeping).
pub fn jet_compose<S: Scalar>(outer: &Jet<S>, inner: &Jet<S>) -> Result<Jet<S>> {
    if outer.order() != inner.order() {
        return Err(Error::JetMismatch(format!(
            "orders {} and {}",
            outer.order(),
            inner.order()
        )));
    }
    if !same_point(outer.base(), inner.value()) {
        return Err(Error::JetMismatch(format!(
            "outer jet sits at {} but the inner value is {}",
            outer.base(),
            inner.value()
        )));
    }
    let c = outer.taylor();
    let mut h = inner.taylor();
    h[0] = S::zero();
    let mut r = vec![S::zero(); c.len()];
    for cj in c.iter().rev() {
        r = series_mul(&r, &h);
        r[0] = r[0].clone() + cj;
    }
    Ok(Jet::from_taylor(inner.base().clone(), r))
}
