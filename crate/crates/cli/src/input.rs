//! JSON input formats and their resolution into a scalar backend.
//!
//! Values are strings whenever precision matters: `"3/4"`, `"-0.125"` and
//! `"2e-3"` all parse to exact rationals. A matrix or function stays on the
//! exact backend as long as every value it contains is a Gaussian rational;
//! one irrational entry (a polar angle that is not a multiple of pi/2, a float
//! group element, `exp`/`log`) moves the whole problem to floats.

use std::collections::BTreeMap;

use intertwine::numerics::{format_rational, parse_rational};
use intertwine::{CMatrix, Exact, Float, HoloFunction, JordanBlock, JordanSpec, Scalar};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A real number written as a string or a bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealText {
    Text(String),
    Number(serde_json::Number),
}

impl RealText {
    pub fn text(s: impl Into<String>) -> Self {
        RealText::Text(s.into())
    }

    fn parse(&self, field: &str) -> CliResult<BigRational> {
        let raw = match self {
            RealText::Text(s) => s.clone(),
            RealText::Number(n) => n.to_string(),
        };
        parse_rational(&raw)
            .ok_or_else(|| CliError::field(field, format!("`{raw}` is not a rational number")))
    }
}

/// A complex value: a real, a `[re, im]` pair, `{re, im}`, or polar
/// `{abs, arg_pi}` meaning `abs * e^{i pi arg_pi}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueInput {
    Real(RealText),
    Pair([RealText; 2]),
    Polar {
        abs: RealText,
        arg_pi: RealText,
    },
    Cartesian {
        re: RealText,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        im: Option<RealText>,
    },
}

/// A value after parsing: exact when it is a Gaussian rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Exact),
    Float(Float),
}

impl Value {
    pub fn to_float(&self) -> Float {
        match self {
            Value::Exact(z) => z.to_c64(),
            Value::Float(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&Exact> {
        match self {
            Value::Exact(z) => Some(z),
            Value::Float(_) => None,
        }
    }
}

impl ValueInput {
    pub fn exact(z: &Exact) -> Self {
        ValueInput::Cartesian {
            re: RealText::text(format_rational(&z.re)),
            im: Some(RealText::text(format_rational(&z.im))),
        }
    }

    /// Shortest decimal strings that read back to the same doubles.
    pub fn float(z: Float) -> Self {
        ValueInput::Cartesian {
            re: RealText::text(format!("{}", z.re)),
            im: Some(RealText::text(format!("{}", z.im))),
        }
    }

    pub fn resolve(&self, field: &str) -> CliResult<Value> {
        let sub = |name: &str| format!("{field}.{name}");
        match self {
            ValueInput::Real(r) => Ok(Value::Exact(Complex::new(
                r.parse(field)?,
                BigRational::zero(),
            ))),
            ValueInput::Pair([re, im]) => Ok(Value::Exact(Complex::new(
                re.parse(&format!("{field}[0]"))?,
                im.parse(&format!("{field}[1]"))?,
            ))),
            ValueInput::Cartesian { re, im } => {
                let im = match im {
                    Some(im) => im.parse(&sub("im"))?,
                    None => BigRational::zero(),
                };
                Ok(Value::Exact(Complex::new(re.parse(&sub("re"))?, im)))
            }
            ValueInput::Polar { abs, arg_pi } => {
                let r = abs.parse(&sub("abs"))?;
                if r.is_negative() {
                    return Err(CliError::field(sub("abs"), "modulus must be non-negative"));
                }
                let t = arg_pi.parse(&sub("arg_pi"))?;
                Ok(polar(r, t))
            }
        }
    }
}

/// `r e^{i pi t}`; exact when `t` is a multiple of 1/2.
fn polar(r: BigRational, t: BigRational) -> Value {
    let two = BigRational::from_integer(BigInt::from(2));
    let quarter_turns = &t * &two;
    if quarter_turns.is_integer() {
        let q = (quarter_turns.to_integer() % BigInt::from(4) + BigInt::from(4)) % BigInt::from(4);
        let zero = BigRational::zero();
        let z = match q.to_string().as_str() {
            "0" => Complex::new(r, zero),
            "1" => Complex::new(zero, r),
            "2" => Complex::new(-r, zero),
            _ => Complex::new(zero, -r),
        };
        return Value::Exact(z);
    }
    let r = Exact::new(r, BigRational::zero()).to_c64().re;
    let t = Exact::new(t, BigRational::zero()).to_c64().re;
    Value::Float(Complex64::from_polar(r, std::f64::consts::PI * t))
}

/// Matrix file contents.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixInput {
    Dense {
        entries: Vec<Vec<ValueInput>>,
        /// Optional eigenvalue list; lets exact dense input skip the numeric search.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eigenvalues: Option<Vec<ValueInput>>,
    },
    Jordan {
        blocks: Vec<BlockInput>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transform: Option<Vec<Vec<ValueInput>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockInput {
    pub lambda: ValueInput,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A dense matrix or Jordan data on one backend.
#[derive(Clone, Debug)]
pub enum Source<S> {
    Dense {
        a: CMatrix<S>,
        eigenvalues: Option<Vec<S>>,
    },
    Jordan(JordanSpec<S>),
}

impl<S: Scalar> Source<S> {
    pub fn matrix(&self) -> CMatrix<S> {
        match self {
            Source::Dense { a, .. } => a.clone(),
            Source::Jordan(spec) => intertwine::build_matrix(spec).expect("validated at load time"),
        }
    }

    pub fn to_float(&self) -> Source<Float> {
        match self {
            Source::Dense { a, eigenvalues } => Source::Dense {
                a: a.to_float(),
                eigenvalues: eigenvalues
                    .as_ref()
                    .map(|e| e.iter().map(|x| x.to_c64()).collect()),
            },
            Source::Jordan(spec) => Source::Jordan(spec.map(|x| x.to_c64())),
        }
    }
}

/// A matrix loaded on whichever backend its values allow.
#[derive(Clone, Debug)]
pub struct LoadedMatrix {
    pub source: Backend,
    /// Original value text per Jordan label, reused when writing JSON back out.
    pub label_text: BTreeMap<String, ValueInput>,
}

#[derive(Clone, Debug)]
pub enum Backend {
    Exact(Source<Exact>),
    Float(Source<Float>),
}

impl Backend {
    pub fn to_float(&self) -> Source<Float> {
        match self {
            Backend::Exact(s) => s.to_float(),
            Backend::Float(s) => s.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Backend::Exact(_))
    }
}

fn resolve_rows(rows: &[Vec<ValueInput>], field: &str) -> CliResult<Vec<Vec<Value>>> {
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(CliError::field(
                    format!("{field}[{i}]"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| v.resolve(&format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn all_exact<'a>(values: impl IntoIterator<Item = &'a Value>) -> Option<Vec<Exact>> {
    values.into_iter().map(|v| v.exact().cloned()).collect()
}

fn square<S: Scalar>(rows: Vec<Vec<S>>, field: &str) -> CliResult<CMatrix<S>> {
    if rows.is_empty() {
        return Err(CliError::field(field, "matrix must have at least one row"));
    }
    CMatrix::from_rows(rows).map_err(|e| CliError::field(field, e.to_string()))
}

fn label_for(v: &Value) -> String {
    match v {
        Value::Exact(z) => format!("{}{:+}i", format_rational(&z.re), FmtRat(&z.im)),
        Value::Float(z) => format!("{}{:+}i", z.re, z.im),
    }
}

fn make_blocks<S: Scalar>(
    blocks: &[BlockInput],
    labels: &[String],
    values: Vec<S>,
) -> Vec<JordanBlock<S>> {
    blocks
        .iter()
        .zip(labels)
        .zip(values)
        .map(|((b, l), v)| JordanBlock::new(l.clone(), v, b.k))
        .collect()
}

struct FmtRat<'a>(&'a BigRational);

impl std::fmt::Display for FmtRat<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if f.sign_plus() && !self.0.is_negative() {
            write!(f, "+")?;
        }
        write!(f, "{}", format_rational(self.0))
    }
}

/// Syntax check with line numbers, then the `kind` tag.
fn parse_tagged(text: &str, what: &'static str) -> CliResult<serde_json::Value> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::json(what, e))?;
    if !v.is_object() {
        return Err(CliError::field(what, "expected a JSON object"));
    }
    Ok(v)
}

fn kind_of<'a>(v: &'a serde_json::Value, path: &str) -> CliResult<&'a str> {
    v.get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| CliError::field(join(path, "kind"), "missing or non-string `kind` tag"))
}

fn join(path: &str, name: &str) -> String {
    if path.is_empty() {
        name.to_string()
    } else {
        format!("{path}.{name}")
    }
}

/// Decodes a variant body with the failing field path in the error.
fn body<T: serde::de::DeserializeOwned>(v: &serde_json::Value, path: &str) -> CliResult<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let field = match (path.is_empty(), inner.as_str()) {
            (_, ".") => path_or(path),
            (true, _) => inner,
            (false, _) => format!("{path}.{inner}"),
        };
        CliError::field(field, e.into_inner().to_string())
    })
}

#[derive(Deserialize)]
struct DenseBody {
    entries: Vec<Vec<ValueInput>>,
    #[serde(default)]
    eigenvalues: Option<Vec<ValueInput>>,
}

#[derive(Deserialize)]
struct JordanBody {
    blocks: Vec<BlockInput>,
    #[serde(default)]
    transform: Option<Vec<Vec<ValueInput>>>,
}

impl MatrixInput {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let v = parse_tagged(text, "matrix")?;
        match kind_of(&v, "")? {
            "dense" => {
                let b: DenseBody = body(&v, "")?;
                Ok(MatrixInput::Dense {
                    entries: b.entries,
                    eigenvalues: b.eigenvalues,
                })
            }
            "jordan" => {
                let b: JordanBody = body(&v, "")?;
                Ok(MatrixInput::Jordan {
                    blocks: b.blocks,
                    transform: b.transform,
                })
            }
            other => Err(CliError::field(
                "kind",
                format!("unknown matrix kind `{other}` (dense, jordan)"),
            )),
        }
    }

    /// Parses every value and picks the backend. Float fallback is reported
    /// through `warnings`.
    pub fn load(&self, warnings: &mut Vec<String>) -> CliResult<LoadedMatrix> {
        match self {
            MatrixInput::Dense {
                entries,
                eigenvalues,
            } => {
                let rows = resolve_rows(entries, "entries")?;
                let eigs = eigenvalues
                    .as_ref()
                    .map(|list| {
                        list.iter()
                            .enumerate()
                            .map(|(i, v)| v.resolve(&format!("eigenvalues[{i}]")))
                            .collect::<CliResult<Vec<_>>>()
                    })
                    .transpose()?;
                let exact_rows: Option<Vec<Vec<Exact>>> =
                    rows.iter().map(|r| all_exact(r.as_slice())).collect();
                let exact_eigs = eigs.as_ref().map(all_exact);
                let source = match (exact_rows, exact_eigs) {
                    (Some(r), None) => Backend::Exact(Source::Dense {
                        a: square(r, "entries")?,
                        eigenvalues: None,
                    }),
                    (Some(r), Some(Some(e))) => Backend::Exact(Source::Dense {
                        a: square(r, "entries")?,
                        eigenvalues: Some(e),
                    }),
                    _ => {
                        warnings
                            .push("irrational entries: using the floating-point backend".into());
                        let r = rows
                            .iter()
                            .map(|r| r.iter().map(Value::to_float).collect())
                            .collect();
                        Backend::Float(Source::Dense {
                            a: square(r, "entries")?,
                            eigenvalues: eigs.map(|e| e.iter().map(Value::to_float).collect()),
                        })
                    }
                };
                Ok(LoadedMatrix {
                    source,
                    label_text: BTreeMap::new(),
                })
            }
            MatrixInput::Jordan { blocks, transform } => {
                if blocks.is_empty() {
                    return Err(CliError::field("blocks", "at least one block is needed"));
                }
                let mut values = Vec::with_capacity(blocks.len());
                let mut labels = Vec::with_capacity(blocks.len());
                let mut label_text = BTreeMap::new();
                for (i, b) in blocks.iter().enumerate() {
                    if b.k == 0 {
                        return Err(CliError::field(
                            format!("blocks[{i}].k"),
                            "block length must be positive",
                        ));
                    }
                    let v = b.lambda.resolve(&format!("blocks[{i}].lambda"))?;
                    let label = b.label.clone().unwrap_or_else(|| label_for(&v));
                    label_text
                        .entry(label.clone())
                        .or_insert_with(|| b.lambda.clone());
                    labels.push(label);
                    values.push(v);
                }
                let p = transform
                    .as_ref()
                    .map(|t| resolve_rows(t, "transform"))
                    .transpose()?;
                let exact_vals = all_exact(&values);
                let exact_p = match &p {
                    Some(rows) => rows
                        .iter()
                        .map(|r| all_exact(r.as_slice()))
                        .collect::<Option<Vec<_>>>()
                        .map(Some),
                    None => Some(None),
                };
                let source = match (exact_vals, exact_p) {
                    (Some(vals), Some(p)) => {
                        let mut spec = JordanSpec::new(make_blocks(blocks, &labels, vals));
                        if let Some(p) = p {
                            spec = spec.with_transform(square(p, "transform")?);
                        }
                        Backend::Exact(Source::Jordan(spec))
                    }
                    _ => {
                        warnings.push(
                            "irrational eigenvalues: carried as floating-point labels".into(),
                        );
                        let mut spec = JordanSpec::new(make_blocks(
                            blocks,
                            &labels,
                            values.iter().map(Value::to_float).collect(),
                        ));
                        if let Some(p) = p {
                            let rows = p
                                .iter()
                                .map(|r| r.iter().map(Value::to_float).collect())
                                .collect();
                            spec = spec.with_transform(square(rows, "transform")?);
                        }
                        Backend::Float(Source::Jordan(spec))
                    }
                };
                let tol = intertwine::Tolerances::default();
                let checked = match &source {
                    Backend::Exact(Source::Jordan(s)) => s.validate(&tol),
                    Backend::Float(Source::Jordan(s)) => s.validate(&tol),
                    _ => Ok(()),
                };
                checked.map_err(|e| CliError::field("blocks", e.to_string()))?;
                Ok(LoadedMatrix { source, label_text })
            }
        }
    }
}

/// Function file contents: an expression tree.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionInput {
    Identity,
    Constant {
        value: ValueInput,
    },
    /// Ascending coefficients `c_0 + c_1 z + ...`.
    Poly {
        coeffs: Vec<ValueInput>,
    },
    Rational {
        num: Vec<ValueInput>,
        den: Vec<ValueInput>,
    },
    Blaschke {
        factors: Vec<FactorInput>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unimodular: Option<ValueInput>,
    },
    Sum {
        terms: Vec<FunctionInput>,
    },
    Product {
        factors: Vec<FunctionInput>,
    },
    Compose {
        outer: Box<FunctionInput>,
        inner: Box<FunctionInput>,
    },
    Exp {
        arg: Box<FunctionInput>,
    },
    Log {
        arg: Box<FunctionInput>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorInput {
    pub zero: ValueInput,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

/// A function on the exact backend when possible, always on floats.
#[derive(Clone, Debug)]
pub struct LoadedFunction {
    pub exact: Option<HoloFunction<Exact>>,
    pub float: HoloFunction<Float>,
}

#[derive(Deserialize)]
struct ConstantBody {
    value: ValueInput,
}

#[derive(Deserialize)]
struct PolyBody {
    coeffs: Vec<ValueInput>,
}

#[derive(Deserialize)]
struct RationalBody {
    num: Vec<ValueInput>,
    den: Vec<ValueInput>,
}

#[derive(Deserialize)]
struct BlaschkeBody {
    factors: Vec<FactorInput>,
    #[serde(default)]
    unimodular: Option<ValueInput>,
}

impl FunctionInput {
    pub fn from_json(text: &str) -> CliResult<Self> {
        Self::decode(&parse_tagged(text, "function")?, "")
    }

    fn decode(v: &serde_json::Value, path: &str) -> CliResult<Self> {
        let child = |name: &str| -> CliResult<Box<FunctionInput>> {
            let at = join(path, name);
            let c = v
                .get(name)
                .ok_or_else(|| CliError::field(at.clone(), "missing field"))?;
            Ok(Box::new(Self::decode(c, &at)?))
        };
        let list = |name: &str| -> CliResult<Vec<FunctionInput>> {
            let at = join(path, name);
            let items = v
                .get(name)
                .and_then(|c| c.as_array())
                .ok_or_else(|| CliError::field(at.clone(), "expected an array of functions"))?;
            items
                .iter()
                .enumerate()
                .map(|(i, c)| Self::decode(c, &format!("{at}[{i}]")))
                .collect()
        };
        Ok(match kind_of(v, path)? {
            "identity" => FunctionInput::Identity,
            "constant" => FunctionInput::Constant {
                value: body::<ConstantBody>(v, path)?.value,
            },
            "poly" => FunctionInput::Poly {
                coeffs: body::<PolyBody>(v, path)?.coeffs,
            },
            "rational" => {
                let b: RationalBody = body(v, path)?;
                FunctionInput::Rational { num: b.num, den: b.den }
            }
            "blaschke" => {
                let b: BlaschkeBody = body(v, path)?;
                FunctionInput::Blaschke {
                    factors: b.factors,
                    unimodular: b.unimodular,
                }
            }
            "sum" => FunctionInput::Sum { terms: list("terms")? },
            "product" => FunctionInput::Product { factors: list("factors")? },
            "compose" => FunctionInput::Compose {
                outer: child("outer")?,
                inner: child("inner")?,
            },
            "exp" => FunctionInput::Exp { arg: child("arg")? },
            "log" => FunctionInput::Log { arg: child("arg")? },
            other => {
                return Err(CliError::field(
                    join(path, "kind"),
                    format!(
                        "unknown function kind `{other}` \
                         (identity, constant, poly, rational, blaschke, sum, product, compose, exp, log)"
                    ),
                ))
            }
        })
    }

    pub fn load(&self) -> CliResult<LoadedFunction> {
        let tree = self.resolve("")?;
        let exact = tree.to_exact();
        let float = tree.to_float();
        float
            .validate()
            .map_err(|e| CliError::field("function", e.to_string()))?;
        Ok(LoadedFunction { exact, float })
    }

    fn resolve(&self, path: &str) -> CliResult<Tree> {
        let at = |name: &str| {
            if path.is_empty() {
                name.to_string()
            } else {
                format!("{path}.{name}")
            }
        };
        let list = |vals: &[ValueInput], name: &str| -> CliResult<Vec<Value>> {
            vals.iter()
                .enumerate()
                .map(|(i, v)| v.resolve(&format!("{}[{i}]", at(name))))
                .collect()
        };
        Ok(match self {
            FunctionInput::Identity => Tree::Poly(vec![
                Value::Exact(Exact::zero()),
                Value::Exact(Exact::one()),
            ]),
            FunctionInput::Constant { value } => Tree::Poly(vec![value.resolve(&at("value"))?]),
            FunctionInput::Poly { coeffs } => {
                if coeffs.is_empty() {
                    return Err(CliError::field(
                        at("coeffs"),
                        "at least one coefficient is needed",
                    ));
                }
                Tree::Poly(list(coeffs, "coeffs")?)
            }
            FunctionInput::Rational { num, den } => {
                if num.is_empty() || den.is_empty() {
                    return Err(CliError::field(
                        path_or(path),
                        "numerator and denominator must be non-empty",
                    ));
                }
                Tree::Rational(list(num, "num")?, list(den, "den")?)
            }
            FunctionInput::Blaschke {
                factors,
                unimodular,
            } => {
                let mut out = Vec::with_capacity(factors.len());
                for (i, f) in factors.iter().enumerate() {
                    let field = format!("{}[{i}]", at("factors"));
                    let z = f.zero.resolve(&format!("{field}.zero"))?;
                    if z.to_float().norm() >= 1.0 {
                        return Err(CliError::field(
                            format!("{field}.zero"),
                            "Blaschke zeros must lie inside the unit disk",
                        ));
                    }
                    if f.multiplicity == 0 {
                        return Err(CliError::field(
                            format!("{field}.multiplicity"),
                            "multiplicity must be positive",
                        ));
                    }
                    out.push((z, f.multiplicity));
                }
                let u = match unimodular {
                    Some(u) => u.resolve(&at("unimodular"))?,
                    None => Value::Exact(Exact::one()),
                };
                Tree::Blaschke(out, u)
            }
            FunctionInput::Sum { terms } => Tree::Sum(children(terms, &at("terms"))?),
            FunctionInput::Product { factors } => Tree::Product(children(factors, &at("factors"))?),
            FunctionInput::Compose { outer, inner } => Tree::Compose(
                Box::new(outer.resolve(&at("outer"))?),
                Box::new(inner.resolve(&at("inner"))?),
            ),
            FunctionInput::Exp { arg } => Tree::Exp(Box::new(arg.resolve(&at("arg"))?)),
            FunctionInput::Log { arg } => Tree::Log(Box::new(arg.resolve(&at("arg"))?)),
        })
    }
}

fn path_or(path: &str) -> String {
    if path.is_empty() {
        "input".into()
    } else {
        path.into()
    }
}

fn children(items: &[FunctionInput], field: &str) -> CliResult<Vec<Tree>> {
    if items.is_empty() {
        return Err(CliError::field(field, "at least one entry is needed"));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, f)| f.resolve(&format!("{field}[{i}]")))
        .collect()
}

/// Parsed function tree with backend-agnostic leaves.
enum Tree {
    Poly(Vec<Value>),
    Rational(Vec<Value>, Vec<Value>),
    Blaschke(Vec<(Value, usize)>, Value),
    Sum(Vec<Tree>),
    Product(Vec<Tree>),
    Compose(Box<Tree>, Box<Tree>),
    Exp(Box<Tree>),
    Log(Box<Tree>),
}

impl Tree {
    fn build<S: Scalar>(&self, leaf: &impl Fn(&Value) -> Option<S>) -> Option<HoloFunction<S>> {
        let many = |v: &[Value]| v.iter().map(leaf).collect::<Option<Vec<S>>>();
        let sub = |ts: &[Tree]| ts.iter().map(|t| t.build(leaf)).collect::<Option<Vec<_>>>();
        Some(match self {
            Tree::Poly(c) => HoloFunction::Polynomial(many(c)?),
            Tree::Rational(n, d) => HoloFunction::Rational {
                num: many(n)?,
                den: many(d)?,
            },
            Tree::Blaschke(f, u) => HoloFunction::Blaschke {
                factors: f
                    .iter()
                    .map(|(z, m)| leaf(z).map(|z| (z, *m)))
                    .collect::<Option<_>>()?,
                unimodular: leaf(u)?,
            },
            Tree::Sum(ts) => HoloFunction::Sum(sub(ts)?),
            Tree::Product(ts) => HoloFunction::Product(sub(ts)?),
            Tree::Compose(o, i) => HoloFunction::compose(o.build(leaf)?, i.build(leaf)?),
            Tree::Exp(_) | Tree::Log(_) if S::EXACT => return None,
            Tree::Exp(t) => HoloFunction::Exp(Box::new(t.build(leaf)?)),
            Tree::Log(t) => HoloFunction::Log(Box::new(t.build(leaf)?)),
        })
    }

    fn to_exact(&self) -> Option<HoloFunction<Exact>> {
        self.build(&|v: &Value| v.exact().cloned())
    }

    fn to_float(&self) -> HoloFunction<Float> {
        self.build(&|v: &Value| Some(v.to_float()))
            .expect("float leaves always resolve")
    }
}
