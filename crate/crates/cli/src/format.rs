//! Text, JSON and CSV renderings of spectra and matrices.

use std::collections::BTreeMap;

use intertwine::numerics::format_rational;
use intertwine::{CMatrix, Scalar, Spectrum};
use num_complex::Complex64;

use crate::input::{BlockInput, MatrixInput, ValueInput};

/// `x` with `digits` significant digits, trailing zeros dropped. Never
/// prints `-0` or exponents, so output is stable across platforms.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let magnitude = x.abs().log10().floor() as i64;
    let places = (digits as i64 - 1 - magnitude).clamp(0, 40) as usize;
    let s = format!("{x:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn join_parts(re: String, im: String, im_negative: bool, im_zero: bool, re_zero: bool) -> String {
    if im_zero {
        return re;
    }
    let im = im.trim_start_matches('-');
    let im = if im == "1" {
        String::new()
    } else {
        im.to_string()
    };
    match (re_zero, im_negative) {
        (true, false) => format!("{im}i"),
        (true, true) => format!("-{im}i"),
        (false, false) => format!("{re}+{im}i"),
        (false, true) => format!("{re}-{im}i"),
    }
}

/// Human-readable complex number: exact rationals as `p/q`, floats with ten
/// significant digits.
pub fn complex<S: Scalar>(z: &S) -> String {
    complex_chopped(z, 0.0)
}

/// As [`complex`], with float parts of magnitude at most `chop` shown as 0.
fn complex_chopped<S: Scalar>(z: &S, chop: f64) -> String {
    if S::EXACT {
        let e = z.to_exact();
        let re = format_rational(&e.re);
        let im = format_rational(&e.im);
        let neg = im.starts_with('-');
        join_parts(
            re,
            im,
            neg,
            e.im == num_traits::Zero::zero(),
            e.re == num_traits::Zero::zero(),
        )
    } else {
        let c = z.to_c64();
        let part = |x: f64| if x.abs() <= chop { 0.0 } else { x };
        let re = sig(part(c.re), 10);
        let im = sig(part(c.im), 10);
        join_parts(
            re.clone(),
            im.clone(),
            im.starts_with('-'),
            im == "0",
            re == "0",
        )
    }
}

/// Float entries are printed relative to the largest one: parts below
/// 1e-14 of it are rounding noise and show as 0.
pub fn matrix_text<S: Scalar>(a: &CMatrix<S>) -> String {
    let scale = a
        .rows()
        .flat_map(|r| r.iter().map(|z| z.to_c64().norm()))
        .fold(0.0, f64::max);
    let chop = if S::EXACT { 0.0 } else { 1e-14 * scale };
    let cells: Vec<Vec<String>> = a
        .rows()
        .map(|r| r.iter().map(|z| complex_chopped(z, chop)).collect())
        .collect();
    let widths: Vec<usize> = (0..a.dim())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&format!("[{}]\n", padded.join("  ")));
    }
    out
}

pub fn value_input<S: Scalar>(z: &S) -> ValueInput {
    if S::EXACT {
        ValueInput::exact(&z.to_exact())
    } else {
        ValueInput::float(z.to_c64())
    }
}

/// Dense matrix in the input format, so results can be piped back in.
pub fn matrix_json<S: Scalar>(a: &CMatrix<S>) -> String {
    let entries = a
        .rows()
        .map(|r| r.iter().map(value_input).collect())
        .collect();
    let input = MatrixInput::Dense {
        entries,
        eigenvalues: None,
    };
    serde_json::to_string_pretty(&input).expect("input types serialize")
}

pub fn spectrum_text<S: Scalar>(sp: &Spectrum<S>) -> String {
    sp.points().iter().map(|p| format!("{p}\n")).collect()
}

/// The spectrum as a Jordan matrix input. Labels keep the text they were
/// given in, so polar entries survive a round trip unchanged.
pub fn spectrum_json<S: Scalar>(
    sp: &Spectrum<S>,
    label_text: &BTreeMap<String, ValueInput>,
) -> String {
    let blocks = sp
        .points()
        .iter()
        .map(|p| BlockInput {
            lambda: p
                .label
                .as_ref()
                .and_then(|l| label_text.get(l).cloned())
                .unwrap_or_else(|| value_input(&p.lambda)),
            k: p.k,
            label: p.label.clone(),
        })
        .collect();
    let input = MatrixInput::Jordan {
        blocks,
        transform: None,
    };
    serde_json::to_string_pretty(&input).expect("input types serialize")
}

/// RFC 4180 rows `re,im,k` with twelve significant digits.
pub fn spectrum_csv<S: Scalar>(sp: &Spectrum<S>) -> String {
    let mut out = String::from("re,im,k\r\n");
    for p in sp.points() {
        let z: Complex64 = p.lambda.to_c64();
        out.push_str(&format!("{},{},{}\r\n", sig(z.re, 12), sig(z.im, 12), p.k));
    }
    out
}
