//! The jet-indexed spectrum: `(lambda, k)` pairs, one per Jordan block.
//!
//! For a dense matrix the pairs come from Weyr characteristics (kernel growth
//! of `(a - lambda e)^j`) converted to block lengths by conjugate partition.
//! For a [`JordanSpec`] eigenvalues are tracked by label, so irrational values
//! such as `3/4 e^{i pi/4}` can ride along as float payloads while every rank
//! is still computed exactly on the shifted nilpotent structure.

mod eigen;
mod weyr;

use std::fmt;

use num_complex::Complex64;

pub use eigen::{aberth_roots, find_eigenvalues, spectral_radius, MAX_ABERTH_ITERATIONS};
pub use weyr::{conjugate_partition, segre_from_weyr, weyr_from_segre, weyr_sequence};

use crate::error::{Error, Result};
use crate::numerics::{CMatrix, Exact, Scalar, Tolerances};

/// One point of the spectrum: an eigenvalue with the length of one Jordan
/// block (the jet order of the primary subrepresentation it spans).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPoint<S> {
    pub lambda: S,
    pub k: usize,
    pub label: Option<String>,
}

impl<S: Scalar> SpectrumPoint<S> {
    pub fn new(lambda: S, k: usize) -> Self {
        assert!(k >= 1, "jet order must be positive");
        SpectrumPoint {
            lambda,
            k,
            label: None,
        }
    }

    pub fn labelled(lambda: S, k: usize, label: impl Into<String>) -> Self {
        SpectrumPoint {
            label: Some(label.into()),
            ..Self::new(lambda, k)
        }
    }
}

impl<S: Scalar> fmt::Display for SpectrumPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", polar_label(self.lambda.to_c64()), self.k)
    }
}

/// Multiset of spectrum points.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<S> {
    points: Vec<SpectrumPoint<S>>,
}

impl<S: Scalar> Default for Spectrum<S> {
    fn default() -> Self {
        Spectrum { points: Vec::new() }
    }
}

impl<S: Scalar> Spectrum<S> {
    pub fn new(points: Vec<SpectrumPoint<S>>) -> Self {
        Spectrum { points }
    }

    pub fn points(&self) -> &[SpectrumPoint<S>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<SpectrumPoint<S>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of all jet orders; the matrix dimension for a full spectrum.
    pub fn dimension(&self) -> usize {
        self.points.iter().map(|p| p.k).sum()
    }

    pub fn push(&mut self, point: SpectrumPoint<S>) {
        self.points.push(point);
    }

    pub fn extend(&mut self, other: Spectrum<S>) {
        self.points.extend(other.points);
    }

    /// Deterministic display order: `|lambda|` descending, then `arg lambda`,
    /// then `k` descending.
    pub fn sorted(mut self) -> Self {
        self.points.sort_by(|x, y| {
            eigen::display_order(&x.lambda.to_c64(), &y.lambda.to_c64())
                .then(y.k.cmp(&x.k))
                .then(x.label.cmp(&y.label))
        });
        self
    }

    /// Distinct eigenvalues in first-appearance order.
    pub fn eigenvalues(&self, tol: f64) -> Vec<S> {
        let mut out: Vec<S> = Vec::new();
        for p in &self.points {
            if !out.iter().any(|l| l.near(&p.lambda, tol)) {
                out.push(p.lambda.clone());
            }
        }
        out
    }

    /// Jet orders at `lambda`, descending (the Segre characteristic there).
    pub fn profile(&self, lambda: &S, tol: f64) -> Vec<usize> {
        let mut ks: Vec<usize> = self
            .points
            .iter()
            .filter(|p| p.lambda.near(lambda, tol))
            .map(|p| p.k)
            .collect();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        ks
    }

    /// Multiset equality on `(lambda, k)`; labels are ignored.
    pub fn same_multiset(&self, other: &Spectrum<S>, tol: f64) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let mut used = vec![false; other.points.len()];
        self.points.iter().all(|p| {
            let hit = other
                .points
                .iter()
                .enumerate()
                .find(|(i, q)| !used[*i] && q.k == p.k && q.lambda.near(&p.lambda, tol));
            match hit {
                Some((i, _)) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
    }
}

impl<S: Scalar> fmt::Display for Spectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `r∠θ°` with four decimals, trailing zeros trimmed; `0` for the origin.
pub fn polar_label(z: Complex64) -> String {
    let r = z.norm();
    if r < 5e-5 {
        return "0".to_string();
    }
    let mut deg = z.arg().to_degrees();
    if deg.abs() < 5e-5 {
        deg = 0.0;
    }
    format!("{}∠{}°", trim_decimal(r, 4), trim_decimal(deg, 4))
}

pub(crate) fn trim_decimal(x: f64, places: usize) -> String {
    let s = format!("{x:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// One Jordan block `J_k(lambda)` with an identity label.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlock<S> {
    pub label: String,
    pub value: S,
    pub len: usize,
}

impl<S: Scalar> JordanBlock<S> {
    pub fn new(label: impl Into<String>, value: S, len: usize) -> Self {
        JordanBlock {
            label: label.into(),
            value,
            len,
        }
    }

    /// Block labelled by the display form of its value.
    pub fn unlabelled(value: S, len: usize) -> Self {
        let label = value.to_string();
        JordanBlock { label, value, len }
    }
}

/// A direct sum of Jordan blocks, optionally conjugated by `transform`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanSpec<S> {
    pub blocks: Vec<JordanBlock<S>>,
    pub transform: Option<CMatrix<S>>,
}

impl<S: Scalar> JordanSpec<S> {
    pub fn new(blocks: Vec<JordanBlock<S>>) -> Self {
        JordanSpec {
            blocks,
            transform: None,
        }
    }

    /// Spec with one unlabelled block per `(value, length)` pair.
    pub fn from_values(blocks: Vec<(S, usize)>) -> Self {
        Self::new(
            blocks
                .into_iter()
                .map(|(v, k)| JordanBlock::unlabelled(v, k))
                .collect(),
        )
    }

    pub fn with_transform(mut self, p: CMatrix<S>) -> Self {
        self.transform = Some(p);
        self
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.len).sum()
    }

    /// Distinct `(label, value)` pairs in first-appearance order.
    pub fn labels(&self) -> Vec<(String, S)> {
        let mut out: Vec<(String, S)> = Vec::new();
        for b in &self.blocks {
            if !out.iter().any(|(l, _)| *l == b.label) {
                out.push((b.label.clone(), b.value.clone()));
            }
        }
        out
    }

    /// Checks block lengths, label/value consistency and the transform's shape.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::InvalidSpec("no blocks".into()));
        }
        if let Some(b) = self.blocks.iter().find(|b| b.len == 0) {
            return Err(Error::InvalidSpec(format!(
                "block '{}' has length 0",
                b.label
            )));
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                let same_value = a.value.near(&b.value, tol.eig);
                if a.label == b.label && !same_value {
                    return Err(Error::InvalidSpec(format!(
                        "label '{}' is used for two different eigenvalues",
                        a.label
                    )));
                }
                if a.label != b.label && same_value {
                    return Err(Error::InvalidSpec(format!(
                        "labels '{}' and '{}' name the same eigenvalue",
                        a.label, b.label
                    )));
                }
            }
        }
        if let Some(p) = &self.transform {
            if p.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    left: self.dim(),
                    right: p.dim(),
                });
            }
        }
        Ok(())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> JordanSpec<T> {
        JordanSpec {
            blocks: self
                .blocks
                .iter()
                .map(|b| JordanBlock {
                    label: b.label.clone(),
                    value: f(&b.value),
                    len: b.len,
                })
                .collect(),
            transform: self.transform.as_ref().map(|p| p.map(&f)),
        }
    }
}

/// `P (J_{k1}(l1) + ... + J_{kr}(lr)) P^{-1}`, or the plain direct sum.
pub fn build_matrix<S: Scalar>(spec: &JordanSpec<S>) -> Result<CMatrix<S>> {
    spec.validate(&Tolerances::default())?;
    let blocks: Vec<CMatrix<S>> = spec
        .blocks
        .iter()
        .map(|b| CMatrix::upper_toeplitz(b.len, &[b.value.clone(), S::one()]))
        .collect();
    let a = CMatrix::block_diag(&blocks);
    match &spec.transform {
        Some(p) => a.conjugate_by(p),
        None => Ok(a),
    }
}

/// Spectrum of a dense matrix.
///
/// The exact backend needs `eigenvalues`; the float backend computes them
/// with [`find_eigenvalues`] when none are given. Fails if the block lengths
/// found do not add up to the dimension.
pub fn spectrum<S: Scalar>(
    a: &CMatrix<S>,
    eigenvalues: Option<&[S]>,
    tol: &Tolerances,
) -> Result<Spectrum<S>> {
    let eigs: Vec<S> = match eigenvalues {
        Some(list) => {
            let mut distinct: Vec<S> = Vec::new();
            for l in list {
                if !distinct.iter().any(|d| d.near(l, tol.eig)) {
                    distinct.push(l.clone());
                }
            }
            distinct
        }
        None if S::EXACT => return Err(Error::EigenvaluesRequired),
        None => find_eigenvalues(&a.to_float(), tol)?
            .into_iter()
            .map(|(l, _)| S::from_c64(l))
            .collect(),
    };
    let mut out = Spectrum::default();
    for lambda in eigs {
        let weyr = weyr_sequence(a, &lambda, tol);
        for k in segre_from_weyr(&weyr) {
            out.push(SpectrumPoint::new(lambda.clone(), k));
        }
    }
    if out.dimension() != a.dim() {
        return Err(Error::InconsistentStructure {
            found: out.dimension(),
            expected: a.dim(),
        });
    }
    Ok(out.sorted())
}

/// Exact stand-in for one block of a shifted matrix: either nilpotent with the
/// given superdiagonal coefficients (`c_1, c_2, ...`), or invertible.
#[derive(Clone, Debug)]
pub(crate) enum StandIn {
    Nilpotent(Vec<Exact>),
    Invertible,
}

/// Segre characteristic of `P (B_1 + ... + B_r) P^{-1}` at 0, computed with
/// exact ranks, where each `B_i` is a [`StandIn`] of the given size.
pub(crate) fn structural_segre(
    blocks: &[(usize, StandIn)],
    transform: Option<&CMatrix<Exact>>,
) -> Result<Vec<usize>> {
    let mats: Vec<CMatrix<Exact>> = blocks
        .iter()
        .map(|(k, s)| match s {
            StandIn::Invertible => CMatrix::identity(*k),
            StandIn::Nilpotent(c) => {
                let mut diagonals = vec![Exact::from_i64(0)];
                diagonals.extend(c.iter().cloned());
                CMatrix::upper_toeplitz(*k, &diagonals)
            }
        })
        .collect();
    let mut m = CMatrix::block_diag(&mats);
    if let Some(p) = transform {
        m = m.conjugate_by(p)?;
    }
    let weyr = weyr_sequence(&m, &Exact::from_i64(0), &Tolerances::default());
    Ok(segre_from_weyr(&weyr))
}

/// Spectrum of the matrix a spec describes, with eigenvalues tracked by label.
///
/// For each label the shifted matrix `a - lambda e` is replaced by an exact
/// stand-in with the same rank structure: blocks with that label become the
/// nilpotent `J_k(0)`, the rest stay invertible. Kernel dimensions of its
/// powers are then exact regardless of how `lambda` itself is represented.
pub fn spectrum_of_spec<S: Scalar>(spec: &JordanSpec<S>, tol: &Tolerances) -> Result<Spectrum<S>> {
    spec.validate(tol)?;
    let transform = spec.transform.as_ref().map(|p| p.map(|x| x.to_exact()));
    let mut out = Spectrum::default();
    for (label, value) in spec.labels() {
        let blocks: Vec<(usize, StandIn)> = spec
            .blocks
            .iter()
            .map(|b| {
                let s = if b.label == label {
                    StandIn::Nilpotent(vec![Exact::from_i64(1)])
                } else {
                    StandIn::Invertible
                };
                (b.len, s)
            })
            .collect();
        for k in structural_segre(&blocks, transform.as_ref())? {
            out.push(SpectrumPoint::labelled(value.clone(), k, label.clone()));
        }
    }
    Ok(out.sorted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Float;

    fn ex(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    /// Eigenvalues of the two-stem example from the reference figure.
    pub(crate) fn four_blocks() -> JordanSpec<Float> {
        use std::f64::consts::PI;
        let polar = |r: f64, t: f64| Float::from_polar(r, t);
        JordanSpec::new(vec![
            JordanBlock::new("l1", polar(0.75, PI / 4.0), 3),
            JordanBlock::new("l2", polar(2.0 / 3.0, 5.0 * PI / 6.0), 4),
            JordanBlock::new("l3", polar(0.4, -3.0 * PI / 4.0), 1),
            JordanBlock::new("l4", polar(0.6, -PI / 3.0), 2),
        ])
    }

    #[test]
    fn build_small_cases() {
        let m = build_matrix(&JordanSpec::from_values(vec![(ex(0), 2)])).unwrap();
        assert_eq!(
            m,
            CMatrix::from_rows(vec![vec![ex(0), ex(1)], vec![ex(0), ex(0)]]).unwrap()
        );
        let m = build_matrix(
            &JordanSpec::from_values(vec![(ex(5), 1)]).with_transform(CMatrix::diag(&[ex(2)])),
        )
        .unwrap();
        assert_eq!(m, CMatrix::diag(&[ex(5)]));
    }

    #[test]
    fn build_four_blocks_shape() {
        let spec = four_blocks();
        let a = build_matrix(&spec).unwrap();
        assert_eq!(a.dim(), 10);
        // block offsets 0, 3, 7, 8
        assert_eq!(a[(0, 0)], spec.blocks[0].value);
        assert_eq!(a[(2, 2)], spec.blocks[0].value);
        assert_eq!(a[(3, 3)], spec.blocks[1].value);
        assert_eq!(a[(7, 7)], spec.blocks[2].value);
        assert_eq!(a[(9, 9)], spec.blocks[3].value);
        assert_eq!(a[(2, 3)], Float::new(0.0, 0.0));
        assert_eq!(a[(6, 7)], Float::new(0.0, 0.0));
        assert_eq!(a[(5, 6)], Float::new(1.0, 0.0));
    }

    #[test]
    fn singular_transform_is_rejected() {
        let spec = JordanSpec::from_values(vec![(ex(1), 2)]).with_transform(CMatrix::zeros(2));
        assert!(matches!(build_matrix(&spec), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn invalid_specs() {
        let tol = Tolerances::default();
        assert!(JordanSpec::<Exact>::new(vec![]).validate(&tol).is_err());
        assert!(JordanSpec::from_values(vec![(ex(1), 0)])
            .validate(&tol)
            .is_err());
        let clash = JordanSpec::new(vec![
            JordanBlock::new("a", ex(1), 1),
            JordanBlock::new("a", ex(2), 1),
        ]);
        assert!(clash.validate(&tol).is_err());
        let alias = JordanSpec::new(vec![
            JordanBlock::new("a", ex(1), 1),
            JordanBlock::new("b", ex(1), 1),
        ]);
        assert!(alias.validate(&tol).is_err());
    }

    #[test]
    fn structural_spectrum_of_four_blocks() {
        let spec = four_blocks();
        let s = spectrum_of_spec(&spec, &Tolerances::default()).unwrap();
        let got: Vec<(String, usize)> = s
            .points()
            .iter()
            .map(|p| (p.label.clone().unwrap(), p.k))
            .collect();
        // display order: |l1| = .75, |l2| = .667, |l4| = .6, |l3| = .4
        assert_eq!(
            got,
            vec![
                ("l1".into(), 3),
                ("l2".into(), 4),
                ("l4".into(), 2),
                ("l3".into(), 1)
            ]
        );
        let text: Vec<String> = s.points().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            text,
            [
                "(0.75∠45°, 3)",
                "(0.6667∠150°, 4)",
                "(0.6∠-60°, 2)",
                "(0.4∠-135°, 1)"
            ]
        );
    }

    #[test]
    fn diagonal_comparison_matrix_is_flat() {
        let spec = four_blocks();
        let flat = JordanSpec::new(
            spec.blocks
                .iter()
                .map(|b| JordanBlock::new(b.label.clone(), b.value, 1))
                .collect(),
        );
        let s = spectrum_of_spec(&flat, &Tolerances::default()).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.points().iter().all(|p| p.k == 1));
        // dense numerical route agrees
        let dense = spectrum(&build_matrix(&flat).unwrap(), None, &Tolerances::default()).unwrap();
        assert!(dense.same_multiset(&s, 1e-9));
    }

    #[test]
    fn dense_spectrum_of_zero_matrix() {
        let s = spectrum(
            &CMatrix::<Exact>::zeros(3),
            Some(&[ex(0)]),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(s, Spectrum::new(vec![SpectrumPoint::new(ex(0), 1); 3]));
        assert!(matches!(
            spectrum(&CMatrix::<Exact>::zeros(3), None, &Tolerances::default()),
            Err(Error::EigenvaluesRequired)
        ));
        let f = spectrum(&CMatrix::<Float>::zeros(3), None, &Tolerances::default()).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn dense_float_spectrum_of_four_blocks() {
        let spec = four_blocks();
        let a = build_matrix(&spec).unwrap();
        let eigs = find_eigenvalues(&a, &Tolerances::default()).unwrap();
        let mults: Vec<usize> = eigs.iter().map(|e| e.1).collect();
        assert_eq!(mults, vec![3, 4, 2, 1]);
        for ((z, _), b) in eigs.iter().zip([
            &spec.blocks[0],
            &spec.blocks[1],
            &spec.blocks[3],
            &spec.blocks[2],
        ]) {
            assert!((z - b.value).norm() < 1e-9, "{z} vs {}", b.value);
        }
        let dense = spectrum(&a, None, &Tolerances::default()).unwrap();
        let structural = spectrum_of_spec(&spec, &Tolerances::default()).unwrap();
        assert!(dense.same_multiset(&structural, 1e-9));
    }

    #[test]
    fn missing_eigenvalue_is_reported() {
        let a = build_matrix(&JordanSpec::from_values(vec![(ex(1), 2), (ex(2), 1)])).unwrap();
        let err = spectrum(&a, Some(&[ex(1)]), &Tolerances::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::InconsistentStructure {
                found: 2,
                expected: 3
            }
        ));
    }

    #[test]
    fn multiset_comparison_ignores_order_and_labels() {
        let a = Spectrum::new(vec![
            SpectrumPoint::new(ex(1), 2),
            SpectrumPoint::labelled(ex(0), 1, "z"),
        ]);
        let b = Spectrum::new(vec![
            SpectrumPoint::new(ex(0), 1),
            SpectrumPoint::new(ex(1), 2),
        ]);
        assert!(a.same_multiset(&b, 0.0));
        let c = Spectrum::new(vec![
            SpectrumPoint::new(ex(0), 2),
            SpectrumPoint::new(ex(1), 1),
        ]);
        assert!(!a.same_multiset(&c, 0.0));
    }

    #[test]
    fn polar_labels() {
        assert_eq!(polar_label(Complex64::new(0.0, 0.0)), "0");
        assert_eq!(polar_label(Complex64::new(1.0, 0.0)), "1∠0°");
        assert_eq!(polar_label(Complex64::new(-0.5, 0.0)), "0.5∠180°");
    }
}
