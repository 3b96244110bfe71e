//! Subcommand bodies. Each writes its report into `out` and pushes
//! diagnostics onto `warnings`; the binary decides where they go.

use std::fmt::Write;

use intertwine::jets::poly;
use intertwine::{
    apply_function_contour_with_radius, apply_function_jet, find_eigenvalues, map_spectrum,
    mobius_algebra, spectrum, spectrum_of_spec, verify_mapping, CMatrix, DiskPoint, Error, Exact,
    Float, GroupElement, HoloFunction, KDDecomposition, MapMode, Scalar, Spectrum, Tolerances,
};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::format::{matrix_json, matrix_text, spectrum_csv, spectrum_json, spectrum_text};
use crate::input::{Backend, LoadedFunction, LoadedMatrix, MatrixInput, Source, Value};
use crate::{figure, parse_complex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Jet,
    Contour,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapCommandMode {
    Literal,
    Split,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureKind {
    Svg,
    Csv,
}

/// How the group element was given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupArgs {
    AlphaBeta { alpha: String, beta: String },
    OmegaU { omega: f64, u: String },
}

/// Shared state of one invocation.
#[derive(Debug, Default)]
pub struct Session {
    pub tol: Tolerances,
    pub out: String,
    pub warnings: Vec<String>,
}

/// A spectrum on whichever backend produced it.
#[derive(Clone, Debug)]
pub enum AnySpectrum {
    Exact(Spectrum<Exact>),
    Float(Spectrum<Float>),
}

impl AnySpectrum {
    pub fn points_c64(&self) -> Vec<(Float, usize)> {
        match self {
            AnySpectrum::Exact(s) => s
                .points()
                .iter()
                .map(|p| (p.lambda.to_c64(), p.k))
                .collect(),
            AnySpectrum::Float(s) => s.points().iter().map(|p| (p.lambda, p.k)).collect(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            AnySpectrum::Exact(s) => spectrum_text(s),
            AnySpectrum::Float(s) => spectrum_text(s),
        }
    }
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    fn warn_outside_disk(&mut self, sp: &AnySpectrum) {
        let outside = sp
            .points_c64()
            .iter()
            .filter(|(z, _)| z.norm() >= 1.0)
            .count();
        if outside > 0 {
            self.warnings.push(format!(
                "{outside} spectrum point(s) lie on or outside the unit circle; disk-based results do not apply there"
            ));
        }
    }

    /// Jet-indexed spectrum of the input.
    pub fn compute_spectrum(&mut self, m: &LoadedMatrix) -> CliResult<AnySpectrum> {
        let sp = match &m.source {
            Backend::Exact(Source::Jordan(spec)) => {
                AnySpectrum::Exact(spectrum_of_spec(spec, &self.tol)?)
            }
            Backend::Float(Source::Jordan(spec)) => {
                AnySpectrum::Float(spectrum_of_spec(spec, &self.tol)?)
            }
            Backend::Exact(Source::Dense {
                a,
                eigenvalues: Some(e),
            }) => AnySpectrum::Exact(spectrum(a, Some(e), &self.tol)?),
            Backend::Exact(Source::Dense {
                a,
                eigenvalues: None,
            }) => self.exact_dense_spectrum(a)?,
            Backend::Float(Source::Dense { a, eigenvalues }) => {
                AnySpectrum::Float(spectrum(a, eigenvalues.as_deref(), &self.tol)?)
            }
        };
        self.warn_outside_disk(&sp);
        Ok(sp)
    }

    /// Exact dense input without an eigenvalue list: locate eigenvalues
    /// numerically, snap them to Gaussian rationals with small denominators
    /// and keep the exact analysis if every candidate is a true eigenvalue
    /// and the blocks fill the dimension. Otherwise fall back to floats.
    fn exact_dense_spectrum(&mut self, a: &CMatrix<Exact>) -> CliResult<AnySpectrum> {
        let approx = find_eigenvalues(&a.to_float(), &self.tol)?;
        let snapped: Option<Vec<Exact>> = approx
            .iter()
            .map(|(z, _)| Some(Complex::new(snap(z.re)?, snap(z.im)?)))
            .collect();
        if let Some(eigs) = snapped {
            let genuine = eigs.iter().all(|l| a.shifted(l).kernel_dim() > 0);
            if genuine {
                match spectrum(a, Some(&eigs), &self.tol) {
                    Ok(sp) => return Ok(AnySpectrum::Exact(sp)),
                    Err(Error::InconsistentStructure { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        self.warnings.push(
            "eigenvalues are not small Gaussian rationals; ranks computed in floating point".into(),
        );
        Ok(AnySpectrum::Float(spectrum(
            &a.to_float(),
            None,
            &self.tol,
        )?))
    }

    pub fn spectrum(&mut self, m: &LoadedMatrix, format: SpectrumFormat) -> CliResult<()> {
        let sp = self.compute_spectrum(m)?;
        let rendered = match (&sp, format) {
            (_, SpectrumFormat::Text) => sp.text(),
            (AnySpectrum::Exact(s), SpectrumFormat::Json) => spectrum_json(s, &m.label_text) + "\n",
            (AnySpectrum::Float(s), SpectrumFormat::Json) => spectrum_json(s, &m.label_text) + "\n",
            (AnySpectrum::Exact(s), SpectrumFormat::Csv) => spectrum_csv(s),
            (AnySpectrum::Float(s), SpectrumFormat::Csv) => spectrum_csv(s),
        };
        self.out.push_str(&rendered);
        Ok(())
    }

    pub fn figure(&mut self, m: &LoadedMatrix, kind: FigureKind) -> CliResult<String> {
        let sp = self.compute_spectrum(m)?;
        Ok(match (&sp, kind) {
            (AnySpectrum::Exact(s), FigureKind::Svg) => figure::svg(s),
            (AnySpectrum::Float(s), FigureKind::Svg) => figure::svg(s),
            (AnySpectrum::Exact(s), FigureKind::Csv) => spectrum_csv(s),
            (AnySpectrum::Float(s), FigureKind::Csv) => spectrum_csv(s),
        })
    }

    pub fn apply(
        &mut self,
        m: &LoadedMatrix,
        f: &LoadedFunction,
        method: Method,
        nodes: usize,
        radius: Option<f64>,
        format: MatrixFormat,
    ) -> CliResult<()> {
        let jet = match method {
            Method::Contour => None,
            _ => Some(self.jet_route(m, f)?),
        };
        let contour = match method {
            Method::Jet => None,
            _ => {
                let a = m.source.to_float().matrix();
                Some(apply_function_contour_with_radius(
                    &f.float, &a, nodes, radius,
                )?)
            }
        };
        let discrepancy = match (&jet, &contour) {
            (Some(j), Some(c)) => Some(j.to_float().frobenius_distance(c)),
            _ => None,
        };
        match format {
            MatrixFormat::Text => {
                if let Some(j) = &jet {
                    if method == Method::Both {
                        self.out.push_str("jet:\n");
                    }
                    self.out.push_str(&j.text());
                }
                if let Some(c) = &contour {
                    if method == Method::Both {
                        self.out.push_str("contour:\n");
                    }
                    self.out.push_str(&matrix_text(c));
                }
                if let Some(d) = discrepancy {
                    let _ = writeln!(self.out, "discrepancy (Frobenius): {d:.3e}");
                }
            }
            MatrixFormat::Json => {
                let parse = |s: String| {
                    serde_json::from_str::<serde_json::Value>(&s).expect("own json parses")
                };
                let doc = match (&jet, &contour) {
                    (Some(j), None) => parse(j.json()),
                    (None, Some(c)) => parse(matrix_json(c)),
                    (Some(j), Some(c)) => json!({
                        "jet": parse(j.json()),
                        "contour": parse(matrix_json(c)),
                        "discrepancy": discrepancy,
                    }),
                    (None, None) => unreachable!("some method always runs"),
                };
                let _ = writeln!(
                    self.out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json values serialize")
                );
            }
        }
        Ok(())
    }

    /// `f(a)` without quadrature: Taylor blocks for Jordan input, `N(a) D(a)^{-1}`
    /// for dense input with a rational `f`.
    fn jet_route(&mut self, m: &LoadedMatrix, f: &LoadedFunction) -> CliResult<AnyMatrix> {
        Ok(match (&m.source, &f.exact) {
            (Backend::Exact(Source::Jordan(spec)), Some(fe)) => {
                AnyMatrix::Exact(apply_function_jet(fe, spec)?)
            }
            (Backend::Exact(Source::Dense { a, .. }), Some(fe)) => {
                AnyMatrix::Exact(rational_at(fe, a)?)
            }
            (source, _) => match source.to_float() {
                Source::Jordan(spec) => AnyMatrix::Float(apply_function_jet(&f.float, &spec)?),
                Source::Dense { a, .. } => AnyMatrix::Float(rational_at(&f.float, &a)?),
            },
        })
    }

    pub fn map(
        &mut self,
        m: &LoadedMatrix,
        f: &LoadedFunction,
        mode: MapCommandMode,
    ) -> CliResult<()> {
        match mode {
            MapCommandMode::Literal | MapCommandMode::Split => {
                let mode = if mode == MapCommandMode::Literal {
                    MapMode::Literal
                } else {
                    MapMode::Split
                };
                let sp = self.compute_spectrum(m)?;
                let mapped = match (sp, &f.exact) {
                    (AnySpectrum::Exact(s), Some(fe)) => {
                        AnySpectrum::Exact(map_spectrum(fe, &s, mode, &self.tol)?)
                    }
                    (AnySpectrum::Exact(s), None) => {
                        let s = Spectrum::new(
                            s.into_points()
                                .into_iter()
                                .map(|p| intertwine::SpectrumPoint {
                                    lambda: p.lambda.to_c64(),
                                    k: p.k,
                                    label: p.label,
                                })
                                .collect(),
                        );
                        AnySpectrum::Float(map_spectrum(&f.float, &s, mode, &self.tol)?)
                    }
                    (AnySpectrum::Float(s), _) => {
                        AnySpectrum::Float(map_spectrum(&f.float, &s, mode, &self.tol)?)
                    }
                };
                self.out.push_str(&mapped.text());
                Ok(())
            }
            MapCommandMode::Verify => match (&m.source, &f.exact) {
                (Backend::Exact(Source::Jordan(spec)), Some(fe)) => self.verify(fe, spec),
                (Backend::Float(Source::Jordan(spec)), _) => self.verify(&f.float, spec),
                (Backend::Exact(Source::Jordan(spec)), None) => {
                    self.verify(&f.float, &spec.map(|x| x.to_c64()))
                }
                (
                    Backend::Exact(Source::Dense { .. }) | Backend::Float(Source::Dense { .. }),
                    _,
                ) => Err(
                    Error::Precondition("verify mode needs a jordan matrix input".into()).into(),
                ),
            },
        }
    }

    fn verify<S: Scalar>(
        &mut self,
        phi: &HoloFunction<S>,
        spec: &intertwine::JordanSpec<S>,
    ) -> CliResult<()> {
        let report = verify_mapping(phi, spec, &self.tol)?;
        let eps = self.tol.eig;
        let out = &mut self.out;
        let _ = writeln!(out, "predicted (split):");
        for p in report.predicted.points() {
            let _ = writeln!(out, "  {p}");
        }
        let _ = writeln!(out, "recomputed:");
        for p in report.recomputed.points() {
            let _ = writeln!(out, "  {p}");
        }
        for g in &report.groups {
            let predicted = report.predicted.profile(&g.image, eps);
            let recomputed = report.recomputed.profile(&g.image, eps);
            let verdict = if predicted == recomputed {
                "MATCH"
            } else {
                "MISMATCH"
            };
            let _ = writeln!(
                out,
                "phi({}) = {}: predicted {:?} recomputed {:?} {verdict}",
                g.labels.join(","),
                intertwine::jordan::polar_label(g.image.to_c64()),
                predicted,
                recomputed
            );
        }
        for d in &report.literal_discrepancies {
            let _ = writeln!(
                out,
                "literal discrepancy at phi({}) = {}: literal {:?} recomputed {:?}",
                d.labels.join(","),
                intertwine::jordan::polar_label(d.image.to_c64()),
                d.literal,
                d.recomputed
            );
        }
        if report.matches {
            let _ = writeln!(out, "MATCH");
            Ok(())
        } else {
            let _ = writeln!(out, "MISMATCH");
            Err(CliError::Mismatch(
                "recomputed spectrum differs from the prediction".into(),
            ))
        }
    }

    pub fn mobius(
        &mut self,
        m: &LoadedMatrix,
        g: &GroupArgs,
        format: MatrixFormat,
    ) -> CliResult<()> {
        let group = self.group(g)?;
        let (moved, sp) = match (&m.source, group) {
            (Backend::Exact(src), AnyGroup::Exact(g)) => {
                let (b, sp) = self.move_source(src, &g)?;
                (AnyMatrix::Exact(b), sp)
            }
            (source, group) => {
                let g = match group {
                    AnyGroup::Exact(g) => g.to_float(),
                    AnyGroup::Float(g) => g,
                };
                let (b, sp) = self.move_source(&source.to_float(), &g)?;
                (AnyMatrix::Float(b), sp)
            }
        };
        self.warn_outside_disk(&sp);
        match format {
            MatrixFormat::Text => {
                self.out.push_str("g.a:\n");
                self.out.push_str(&moved.text());
                self.out.push_str("spectrum:\n");
                self.out.push_str(&sp.text());
            }
            MatrixFormat::Json => self.out.push_str(&(moved.json() + "\n")),
        }
        Ok(())
    }

    /// `g.a` and its spectrum. Jordan input keeps its labels: the spectrum of
    /// `g.a` is recomputed structurally at the Möbius images.
    fn move_source<S: Scalar>(
        &mut self,
        src: &Source<S>,
        g: &GroupElement<S>,
    ) -> CliResult<(CMatrix<S>, AnySpectrum)>
    where
        AnySpectrum: From<Spectrum<S>>,
    {
        let a = src.matrix();
        let b = mobius_algebra(g, &a, &self.tol)?;
        let sp = match src {
            Source::Jordan(spec) => {
                verify_mapping(&HoloFunction::mobius(g), spec, &self.tol)?.recomputed
            }
            Source::Dense {
                eigenvalues: Some(e),
                ..
            } => {
                let phi = HoloFunction::mobius(g);
                let images = e
                    .iter()
                    .map(|l| phi.eval(l))
                    .collect::<intertwine::Result<Vec<S>>>()?;
                spectrum(&b, Some(&images), &self.tol)?
            }
            Source::Dense {
                eigenvalues: None, ..
            } if S::EXACT => {
                let exact = b.map(|x| x.to_exact());
                return Ok((b, self.exact_dense_spectrum(&exact)?));
            }
            Source::Dense {
                eigenvalues: None, ..
            } => spectrum(&b, None, &self.tol)?,
        };
        Ok((b, sp.into()))
    }

    fn group(&mut self, g: &GroupArgs) -> CliResult<AnyGroup> {
        match g {
            GroupArgs::AlphaBeta { alpha, beta } => {
                let a = parse_complex(alpha).map_err(|e| CliError::field("--alpha", e))?;
                let b = parse_complex(beta).map_err(|e| CliError::field("--beta", e))?;
                if let (Value::Exact(a), Value::Exact(b)) = (&a, &b) {
                    if let Ok(g) = GroupElement::new(a.clone(), b.clone(), &self.tol) {
                        return Ok(AnyGroup::Exact(Box::new(g)));
                    }
                }
                let g = GroupElement::new(a.to_float(), b.to_float(), &self.tol)?;
                self.warnings
                    .push("group element satisfies |alpha|^2 - |beta|^2 = 1 only approximately; using floats".into());
                Ok(AnyGroup::Float(g))
            }
            GroupArgs::OmegaU { omega, u } => {
                let u = parse_complex(u).map_err(|e| CliError::field("--u", e))?;
                let u = DiskPoint::new(u.to_float())?;
                Ok(AnyGroup::Float(GroupElement::reassemble(
                    &KDDecomposition { omega: *omega, u },
                )))
            }
        }
    }
}

impl From<Spectrum<Exact>> for AnySpectrum {
    fn from(s: Spectrum<Exact>) -> Self {
        AnySpectrum::Exact(s)
    }
}

impl From<Spectrum<Float>> for AnySpectrum {
    fn from(s: Spectrum<Float>) -> Self {
        AnySpectrum::Float(s)
    }
}

enum AnyGroup {
    Exact(Box<GroupElement<Exact>>),
    Float(GroupElement<Float>),
}

pub enum AnyMatrix {
    Exact(CMatrix<Exact>),
    Float(CMatrix<Float>),
}

impl AnyMatrix {
    pub fn to_float(&self) -> CMatrix<Float> {
        match self {
            AnyMatrix::Exact(a) => a.to_float(),
            AnyMatrix::Float(a) => a.clone(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            AnyMatrix::Exact(a) => matrix_text(a),
            AnyMatrix::Float(a) => matrix_text(a),
        }
    }

    pub fn json(&self) -> String {
        match self {
            AnyMatrix::Exact(a) => matrix_json(a),
            AnyMatrix::Float(a) => matrix_json(a),
        }
    }
}

/// `N(a) D(a)^{-1}` by Horner's rule on the matrix.
pub fn rational_at<S: Scalar>(f: &HoloFunction<S>, a: &CMatrix<S>) -> CliResult<CMatrix<S>> {
    let (num, den) = f.to_rational().ok_or_else(|| {
        Error::Precondition(
            "dense input needs a rational function (no exp/log) for the jet method; use --method contour".into(),
        )
    })?;
    let horner = |c: &[S]| {
        c.iter().rev().fold(CMatrix::zeros(a.dim()), |acc, ci| {
            acc.checked_mul(a).expect("square").shifted(&-ci.clone())
        })
    };
    let n = horner(&poly::trim(num));
    let d = horner(&poly::trim(den));
    Ok(n.checked_mul(&d.inverse()?)?)
}

/// Nearest rational with denominator at most 1000, if it agrees with `x` to
/// about eight digits.
fn snap(x: f64) -> Option<BigRational> {
    const MAX_DEN: i64 = 1000;
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let ai = a as i64;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 == 0 || (h1 as f64 / k1 as f64 - x).abs() > 1e-8 * x.abs().max(1.0) {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Reads a matrix file's JSON and resolves its backend.
pub fn load_matrix(text: &str, warnings: &mut Vec<String>) -> CliResult<LoadedMatrix> {
    MatrixInput::from_json(text)?.load(warnings)
}
