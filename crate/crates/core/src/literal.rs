//! Parsers for the textual arguments accepted on the command line: complex
//! literals `re+imi`, viewports `x0,y0,x1,y1` and resolutions `WxH`.

use rug::Float;

use crate::error::{Error, Result};
use crate::pipeline::Viewport;
use crate::scalar::BigComplex;

/// Largest accepted image side, in pixels.
pub const MAX_SIDE: u32 = 16384;

fn invalid(what: &str, text: &str) -> Error {
    Error::InvalidArgument(format!("cannot parse {what} from {text:?}"))
}

fn parse_real(text: &str, prec: u32) -> Option<Float> {
    let t = text.trim();
    if t.is_empty() || t.chars().any(|c| c.is_whitespace()) {
        return None;
    }
    let v = Float::with_val(prec, Float::parse(t).ok()?);
    v.is_finite().then_some(v)
}

/// Coefficient in front of `i`: empty, `+` and `-` stand for ±1.
fn parse_imag(text: &str, prec: u32) -> Option<Float> {
    match text {
        "" | "+" => Some(Float::with_val(prec, 1)),
        "-" => Some(Float::with_val(prec, -1)),
        _ => parse_real(text, prec),
    }
}

/// Byte offset of the sign separating the real and imaginary parts, if any.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len())
        .rev()
        .find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with decimal or exponent notation,
/// rounding to `prec` bits. `j` is accepted in place of `i`.
pub fn parse_complex(text: &str, prec: u32) -> Result<BigComplex> {
    let s = text.trim();
    let err = || invalid("a complex number", text);
    if s.is_empty() || !s.is_ascii() {
        return Err(err());
    }
    let zero = || Float::new(prec);
    let (re, im) = match s.strip_suffix(['i', 'j']) {
        None => (parse_real(s, prec).ok_or_else(err)?, zero()),
        Some(body) => match split_point(body) {
            Some(k) => (
                parse_real(&body[..k], prec).ok_or_else(err)?,
                parse_imag(&body[k..], prec).ok_or_else(err)?,
            ),
            None => (zero(), parse_imag(body, prec).ok_or_else(err)?),
        },
    };
    Ok(BigComplex::new(re, im))
}

fn parse_f64(text: &str) -> Option<f64> {
    let t = text.trim();
    let v: f64 = t.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Parses `x0,y0,x1,y1` into a viewport with `x0 < x1` and `y0 < y1`.
pub fn parse_viewport(text: &str) -> Result<Viewport> {
    let parts: Vec<f64> = text
        .split(',')
        .map(parse_f64)
        .collect::<Option<_>>()
        .ok_or_else(|| invalid("a viewport", text))?;
    match parts[..] {
        [x0, y0, x1, y1] => Viewport::new(x0, y0, x1, y1),
        _ => Err(invalid("a viewport", text)),
    }
}

/// Parses `WxH` with both sides in `1..=MAX_SIDE`.
pub fn parse_resolution(text: &str) -> Result<(u32, u32)> {
    let err = || invalid("a resolution", text);
    let (w, h) = text.trim().split_once(['x', 'X']).ok_or_else(err)?;
    let side = |s: &str| {
        s.parse::<u32>()
            .ok()
            .filter(|v| (1..=MAX_SIDE).contains(v) && !s.starts_with('+'))
    };
    Ok((side(w).ok_or_else(err)?, side(h).ok_or_else(err)?))
}
