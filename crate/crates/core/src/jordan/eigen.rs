use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{CMatrix, Float, Scalar, Tolerances};

pub const MAX_ABERTH_ITERATIONS: usize = 500;

/// Value, derivative and a rounding-error bound for a polynomial at `z`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + c.norm();
    }
    (p, dp, bound)
}

/// All roots of `sum coeffs[j] z^j` by simultaneous Aberth-Ehrlich iteration.
///
/// Trailing zero leading coefficients are ignored. A root counts as converged
/// once its Newton-Aberth step is below round-off or `|p(z)|` sits at the
/// rounding-error level of the evaluation.
pub fn aberth_roots(coeffs: &[Complex64], max_iter: usize) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    let center = -monic[degree - 1] / degree as f64;
    let (at_center, _, _) = horner(&monic, center);
    let radius = at_center.norm().powf(1.0 / degree as f64).max(0.1);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / degree as f64 + 0.7;
            center + Complex64::from_polar(radius, theta)
        })
        .collect();

    let eps = f64::EPSILON;
    let mut settled = vec![false; degree];
    for _ in 0..max_iter {
        for i in 0..degree {
            if settled[i] {
                continue;
            }
            let (p, dp, bound) = horner(&monic, z[i]);
            if p.norm() <= 4.0 * degree as f64 * eps * bound {
                settled[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::NonConvergence { iterations: 0 });
            }
            z[i] -= step;
            if step.norm() <= 8.0 * eps * z[i].norm().max(1e-2) {
                settled[i] = true;
            }
        }
        if settled.iter().all(|&s| s) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
    })
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * j as f64)
        .collect()
}

/// Sharpens the centre of a k-fold root cluster by Newton iteration on
/// `p^{(k-1)}`, which has a simple root there. Individual roots of a k-fold
/// cluster are only good to about `eps^{1/k}`; the refined centre is good to
/// about `eps`. Keeps `mu` if Newton wanders further than `reach`.
fn refine_cluster_centre(coeffs: &[Complex64], mu: Complex64, k: usize, reach: f64) -> Complex64 {
    let mut q = coeffs.to_vec();
    for _ in 1..k {
        q = derivative(&q);
    }
    let mut z = mu;
    for _ in 0..60 {
        let (v, dv, _) = horner(&q, z);
        if v.norm() == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        if !step.re.is_finite() || !step.im.is_finite() {
            return mu;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1e-2) {
            break;
        }
    }
    if (z - mu).norm() <= reach {
        z
    } else {
        mu
    }
}

/// Complete-linkage merge tree over the roots.
struct Node {
    members: Vec<usize>,
    diameter: f64,
    children: Option<(usize, usize)>,
}

fn merge_tree(roots: &[Complex64]) -> (Vec<Node>, usize) {
    let mut nodes: Vec<Node> = (0..roots.len())
        .map(|i| Node {
            members: vec![i],
            diameter: 0.0,
            children: None,
        })
        .collect();
    let mut active: Vec<usize> = (0..roots.len()).collect();
    let diameter = |members: &[usize]| {
        let mut d: f64 = 0.0;
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                d = d.max((roots[i] - roots[j]).norm());
            }
        }
        d
    };
    while active.len() > 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for x in 0..active.len() {
            for y in x + 1..active.len() {
                let mut members = nodes[active[x]].members.clone();
                members.extend(&nodes[active[y]].members);
                let d = diameter(&members);
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, x, y));
                }
            }
        }
        let (d, x, y) = best.expect("at least two active clusters");
        let (a, b) = (active[x], active[y]);
        let mut members = nodes[a].members.clone();
        members.extend(&nodes[b].members);
        nodes.push(Node {
            members,
            diameter: d,
            children: Some((a, b)),
        });
        active.remove(y);
        active.remove(x);
        active.push(nodes.len() - 1);
    }
    let root = active.first().copied().unwrap_or(0);
    (nodes, root)
}

/// Does `(a - mu e)^k` have a k-dimensional (numerical) kernel?
fn multiplicity_at_least(a: &CMatrix<Float>, mu: Complex64, k: usize, tol: &Tolerances) -> bool {
    let scale = super::weyr::operator_scale(a).powi(k as i32);
    a.shifted(&mu).pow(k).kernel_dim_scaled(tol, scale) >= k
}

/// Eigenvalues of a dense float matrix with algebraic multiplicities.
///
/// Roots of the characteristic polynomial (Hessenberg recurrence) are found by
/// Aberth iteration and then clustered; each cluster centre is refined as the
/// simple root of the `(k-1)`-th derivative. A k-fold eigenvalue splits into roots
/// spread by roughly `eps^{1/k}`, so a candidate cluster of `k` roots is
/// accepted when its diameter is at most `2 tol.eig^{1/k} max(1, |mean|)` and
/// `(a - mean e)^k` has a k-dimensional numerical kernel. Results are in
/// display order (modulus descending, then argument).
pub fn find_eigenvalues(a: &CMatrix<Float>, tol: &Tolerances) -> Result<Vec<(Float, usize)>> {
    let coeffs = a.characteristic_polynomial();
    let roots = aberth_roots(&coeffs, MAX_ABERTH_ITERATIONS)?;
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let (nodes, root) = merge_tree(&roots);
    let mut clusters = Vec::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        let node = &nodes[id];
        let k = node.members.len();
        let mean = node.members.iter().map(|&i| roots[i]).sum::<Complex64>() / k as f64;
        let gate = 2.0 * tol.eig.powf(1.0 / k as f64) * mean.norm().max(1.0);
        let reach = node.diameter.max(1e-12 * mean.norm().max(1.0));
        let mean = refine_cluster_centre(&coeffs, mean, k, reach);
        let accept = k == 1 || (node.diameter <= gate && multiplicity_at_least(a, mean, k, tol));
        match (accept, node.children) {
            (true, _) | (false, None) => clusters.push((mean, k)),
            (false, Some((l, r))) => {
                stack.push(l);
                stack.push(r);
            }
        }
    }
    clusters.sort_by(|x, y| display_order(&x.0, &y.0));
    Ok(clusters)
}

pub(crate) fn display_order(x: &Complex64, y: &Complex64) -> std::cmp::Ordering {
    let key = |z: &Complex64| {
        // round so that float noise does not reorder equal-modulus points
        let m = (z.norm() * 1e12).round();
        let arg = if z.norm() == 0.0 { 0.0 } else { z.arg() };
        (m, (arg * 1e12).round())
    };
    let (mx, ax) = key(x);
    let (my, ay) = key(y);
    my.total_cmp(&mx).then(ax.total_cmp(&ay))
}

/// Largest eigenvalue modulus, from the raw characteristic roots.
pub fn spectral_radius<S: Scalar>(a: &CMatrix<S>) -> Result<f64> {
    let roots = aberth_roots(
        &a.to_float().characteristic_polynomial(),
        MAX_ABERTH_ITERATIONS,
    )?;
    Ok(roots.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
