//! How a holomorphic `phi` moves the jet-indexed spectrum.
//!
//! A block `J_k(lambda)` goes to `phi(J_k(lambda))`, whose nilpotent part is
//! `c_m N^m + ...` with `m` the order of the zero of `phi - phi(lambda)`. That
//! splits into `m` Jordan blocks at `phi(lambda)`: `k mod m` of length
//! `ceil(k/m)` and the rest of length `floor(k/m)` ([`map_point_split`]).
//! The shorthand `(phi(lambda), floor(k/m))` is kept as [`map_point_literal`];
//! [`verify_mapping`] recomputes the true structure and reports where the two
//! disagree.

use crate::calculus::apply_function_jet;
use crate::error::{Error, Result};
use crate::jets::{degree_of_zero, jet_of, HoloFunction};
use crate::jordan::{
    segre_from_weyr, spectrum, spectrum_of_spec, structural_segre, weyr_sequence, JordanSpec,
    Spectrum, SpectrumPoint, StandIn,
};
use crate::numerics::{CMatrix, Exact, Scalar, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    Literal,
    Split,
}

/// Order of the zero of `phi - phi(lambda)` at `lambda`, capped at `k`.
///
/// Only the coefficients below `k` matter for a block of length `k`: if they
/// all vanish, `phi(J_k) = phi(lambda) e` and the cap `m = k` yields the same
/// `k` singleton blocks as any larger order.
pub fn effective_degree<S: Scalar>(
    phi: &HoloFunction<S>,
    lambda: &S,
    k: usize,
    tol: &Tolerances,
) -> Result<usize> {
    if k <= 1 {
        return Ok(1);
    }
    match degree_of_zero(phi, lambda, k - 1, tol) {
        Ok(m) => Ok(m),
        Err(Error::DegreeExceedsOrder { .. }) => Ok(k),
        Err(e) => Err(e),
    }
}

/// Block lengths of `phi(J_k)` at `phi(lambda)` when the zero has order `m`,
/// descending.
pub fn split_profile(k: usize, m: usize) -> Vec<usize> {
    assert!(k >= 1 && m >= 1);
    let (q, r) = (k / m, k % m);
    let mut out = vec![q + 1; r];
    out.extend(std::iter::repeat_n(q, m - r).filter(|&len| len > 0));
    out
}

/// `(phi(lambda), max(1, floor(k / m)))`.
pub fn map_point_literal<S: Scalar>(
    phi: &HoloFunction<S>,
    p: &SpectrumPoint<S>,
    tol: &Tolerances,
) -> Result<SpectrumPoint<S>> {
    let m = effective_degree(phi, &p.lambda, p.k, tol)?;
    Ok(SpectrumPoint {
        lambda: phi.eval(&p.lambda)?,
        k: (p.k / m).max(1),
        label: p.label.clone(),
    })
}

/// All blocks of `phi(J_k(lambda))`, see [`split_profile`].
pub fn map_point_split<S: Scalar>(
    phi: &HoloFunction<S>,
    p: &SpectrumPoint<S>,
    tol: &Tolerances,
) -> Result<Vec<SpectrumPoint<S>>> {
    let m = effective_degree(phi, &p.lambda, p.k, tol)?;
    let image = phi.eval(&p.lambda)?;
    Ok(split_profile(p.k, m)
        .into_iter()
        .map(|k| SpectrumPoint {
            lambda: image.clone(),
            k,
            label: p.label.clone(),
        })
        .collect())
}

pub fn map_spectrum<S: Scalar>(
    phi: &HoloFunction<S>,
    s: &Spectrum<S>,
    mode: MapMode,
    tol: &Tolerances,
) -> Result<Spectrum<S>> {
    let mut out = Spectrum::default();
    for p in s.points() {
        match mode {
            MapMode::Literal => out.push(map_point_literal(phi, p, tol)?),
            MapMode::Split => {
                for q in map_point_split(phi, p, tol)? {
                    out.push(q);
                }
            }
        }
    }
    Ok(out.sorted())
}

/// Eigenvalues of `a` whose images under `phi` coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageGroup<S> {
    pub image: S,
    pub labels: Vec<String>,
}

/// Where `floor(k/m)` disagrees with the recomputed block lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct LiteralDiscrepancy<S> {
    pub image: S,
    pub labels: Vec<String>,
    pub literal: Vec<usize>,
    pub recomputed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MappingReport<S> {
    pub groups: Vec<ImageGroup<S>>,
    pub predicted: Spectrum<S>,
    pub recomputed: Spectrum<S>,
    pub matches: bool,
    pub literal_discrepancies: Vec<LiteralDiscrepancy<S>>,
}

fn group_images<S: Scalar>(
    phi: &HoloFunction<S>,
    spec: &JordanSpec<S>,
    tol: &Tolerances,
) -> Result<Vec<ImageGroup<S>>> {
    let mut groups: Vec<ImageGroup<S>> = Vec::new();
    for (label, value) in spec.labels() {
        let image = phi.eval(&value)?;
        let same = |g: &ImageGroup<S>| {
            let scale = g.image.magnitude().max(image.magnitude()).max(1.0);
            g.image.near(&image, tol.degree * scale)
        };
        if let Some(g) = groups.iter_mut().find(|g| same(g)) {
            g.labels.push(label);
        } else if let Some(g) = groups.iter().find(|g| g.image.near(&image, tol.eig)) {
            return Err(Error::ImageCollision {
                first: g.labels[0].clone(),
                second: label,
                eps: tol.eig,
            });
        } else {
            groups.push(ImageGroup {
                image,
                labels: vec![label],
            });
        }
    }
    Ok(groups)
}

/// Recomputes the spectrum of `phi(a)` and compares it with the split
/// prediction.
///
/// Exact backend: builds `b = phi(a)` by the jet route and runs the Weyr
/// analysis of `b` at each image `phi(lambda_i)`; equal images merge.
/// Float backend: eigenvalues are carried as labelled payloads, so the
/// analysis runs on exact stand-ins for `b - phi(lambda_i) e` (blocks of the
/// group become `sum_j c_j N^j` with Taylor coefficients snapped to zero
/// below `tol.degree`, the rest stay invertible). Float images that agree to
/// `tol.degree` (relative) merge; images further apart but still within
/// `tol.eig` cannot be resolved and are reported as [`Error::ImageCollision`].
pub fn verify_mapping<S: Scalar>(
    phi: &HoloFunction<S>,
    spec: &JordanSpec<S>,
    tol: &Tolerances,
) -> Result<MappingReport<S>> {
    phi.validate()?;
    spec.validate(tol)?;
    let groups = group_images(phi, spec, tol)?;
    let group_of = |label: &str| {
        groups
            .iter()
            .position(|g| g.labels.iter().any(|l| l == label))
            .expect("every label has a group")
    };

    let source = spectrum_of_spec(spec, tol)?;
    let mut predicted = Spectrum::default();
    let mut literal: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for p in source.points() {
        let gi = group_of(p.label.as_deref().expect("structural points carry labels"));
        for q in map_point_split(phi, p, tol)? {
            predicted.push(SpectrumPoint::labelled(
                groups[gi].image.clone(),
                q.k,
                group_name(&groups[gi]),
            ));
        }
        literal[gi].push(map_point_literal(phi, p, tol)?.k);
    }
    let predicted = predicted.sorted();

    let recomputed = if S::EXACT {
        recompute_exact(phi, spec, &groups, tol)?
    } else {
        recompute_structural(phi, spec, &groups, tol)?
    };

    let mut literal_discrepancies = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let mut lit = literal[gi].clone();
        lit.sort_unstable_by(|a, b| b.cmp(a));
        let truth = recomputed.profile(&g.image, tol.eig);
        if lit != truth {
            literal_discrepancies.push(LiteralDiscrepancy {
                image: g.image.clone(),
                labels: g.labels.clone(),
                literal: lit,
                recomputed: truth,
            });
        }
    }

    Ok(MappingReport {
        matches: predicted.same_multiset(&recomputed, tol.eig),
        groups,
        predicted,
        recomputed,
        literal_discrepancies,
    })
}

fn group_name<S>(g: &ImageGroup<S>) -> String {
    format!("phi({})", g.labels.join(","))
}

fn recompute_exact<S: Scalar>(
    phi: &HoloFunction<S>,
    spec: &JordanSpec<S>,
    groups: &[ImageGroup<S>],
    tol: &Tolerances,
) -> Result<Spectrum<S>> {
    let b = apply_function_jet(phi, spec)?;
    let images: Vec<S> = groups.iter().map(|g| g.image.clone()).collect();
    let raw = spectrum(&b, Some(&images), tol)?;
    // attach group names for display
    let points = raw
        .into_points()
        .into_iter()
        .map(|p| {
            let g = groups
                .iter()
                .find(|g| g.image == p.lambda)
                .expect("image of a group");
            SpectrumPoint::labelled(p.lambda, p.k, group_name(g))
        })
        .collect();
    Ok(Spectrum::new(points).sorted())
}

fn recompute_structural<S: Scalar>(
    phi: &HoloFunction<S>,
    spec: &JordanSpec<S>,
    groups: &[ImageGroup<S>],
    tol: &Tolerances,
) -> Result<Spectrum<S>> {
    let transform = spec.transform.as_ref().map(|p| p.map(|x| x.to_exact()));
    let mut out = Spectrum::default();
    for g in groups {
        let blocks = spec
            .blocks
            .iter()
            .map(|b| {
                if !g.labels.contains(&b.label) {
                    return Ok((b.len, StandIn::Invertible));
                }
                let taylor = jet_of(phi, &b.value, b.len - 1)?.taylor();
                let coeffs: Vec<Exact> = taylor[1..]
                    .iter()
                    .map(|c| {
                        if c.negligible(tol.degree) {
                            Exact::from_i64(0)
                        } else {
                            c.to_exact()
                        }
                    })
                    .collect();
                Ok((b.len, StandIn::Nilpotent(coeffs)))
            })
            .collect::<Result<Vec<_>>>()?;
        for k in structural_segre(&blocks, transform.as_ref())? {
            out.push(SpectrumPoint::labelled(g.image.clone(), k, group_name(g)));
        }
    }
    if out.dimension() != spec.dim() {
        return Err(Error::InconsistentStructure {
            found: out.dimension(),
            expected: spec.dim(),
        });
    }
    Ok(out.sorted())
}

/// Segre characteristic of a dense matrix at `mu`; a thin convenience for
/// callers that already hold `phi(a)`.
pub fn block_profile<S: Scalar>(b: &CMatrix<S>, mu: &S, tol: &Tolerances) -> Vec<usize> {
    segre_from_weyr(&weyr_sequence(b, mu, tol))
}
