//! Dense polynomials as ascending coefficient vectors.

use num_complex::Complex64;

use crate::error::Result;
use crate::jordan::{aberth_roots, MAX_ABERTH_ITERATIONS};
use crate::numerics::Scalar;

/// Drops exactly-zero leading coefficients (keeps at least one entry).
pub fn trim<S: Scalar>(mut p: Vec<S>) -> Vec<S> {
    while p.len() > 1 && p.last().is_some_and(|c| c.negligible(0.0)) {
        p.pop();
    }
    if p.is_empty() {
        p.push(S::zero());
    }
    p
}

pub fn add<S: Scalar>(p: &[S], q: &[S]) -> Vec<S> {
    let n = p.len().max(q.len());
    let out = (0..n)
        .map(|i| match (p.get(i), q.get(i)) {
            (Some(a), Some(b)) => a.clone() + b,
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

pub fn mul<S: Scalar>(p: &[S], q: &[S]) -> Vec<S> {
    if p.is_empty() || q.is_empty() {
        return vec![S::zero()];
    }
    let mut out = vec![S::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b;
        }
    }
    trim(out)
}

pub fn scale<S: Scalar>(p: &[S], s: &S) -> Vec<S> {
    trim(p.iter().map(|c| c.clone() * s).collect())
}

pub fn pow<S: Scalar>(p: &[S], m: usize) -> Vec<S> {
    (0..m).fold(vec![S::one()], |acc, _| mul(&acc, p))
}

pub fn eval<S: Scalar>(p: &[S], z: &S) -> S {
    p.iter().rev().fold(S::zero(), |acc, c| acc * z + c)
}

pub fn degree<S: Scalar>(p: &[S]) -> usize {
    trim(p.to_vec()).len() - 1
}

/// Complex roots; `None` for the zero polynomial.
pub fn roots<S: Scalar>(p: &[S]) -> Result<Option<Vec<Complex64>>> {
    let p = trim(p.to_vec());
    if p.len() == 1 && p[0].negligible(0.0) {
        return Ok(None);
    }
    let c: Vec<Complex64> = p.iter().map(|x| x.to_c64()).collect();
    aberth_roots(&c, MAX_ABERTH_ITERATIONS).map(Some)
}
