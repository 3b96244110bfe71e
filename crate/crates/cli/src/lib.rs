//! Command-line front end for the `intertwine` calculus: JSON inputs,
//! report formats and the stem-plot figure.

pub mod commands;
pub mod error;
pub mod figure;
pub mod format;
pub mod input;

pub use commands::{
    load_matrix, AnySpectrum, FigureKind, GroupArgs, MapCommandMode, MatrixFormat, Method, Session,
    SpectrumFormat,
};
pub use error::{CliError, CliResult};
pub use input::{FunctionInput, LoadedFunction, LoadedMatrix, MatrixInput, Value, ValueInput};

use intertwine::numerics::parse_rational;
use num_complex::Complex;

/// Parses `"3/4"`, `"0.5-0.25i"`, `"-i"`, `"2i"` or `"re,im"` into an exact value.
pub fn parse_complex(text: &str) -> Result<Value, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{text}` is not a complex number");
    let real = |s: &str| parse_rational(s).ok_or_else(bad);
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Value::Exact(Complex::new(real(re)?, real(im)?)));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Value::Exact(Complex::new(
            real(&t)?,
            num_traits::Zero::zero(),
        )));
    };
    // split before the last sign that is not an exponent sign or the leading one
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        s => s.strip_prefix('+').unwrap_or(s),
    };
    Ok(Value::Exact(Complex::new(real(re)?, real(im)?)))
}
