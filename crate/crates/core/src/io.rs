//! Text entry points for the file formats, and JSON output with 17
//! significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::funcalc::SpectrumFunction;
use crate::octonion::Octonion;
use crate::operator::{OperatorFile, ParaLinearOperator};
use crate::vector::OVector;

/// Longest polynomial accepted from text.
pub const MAX_POLY_TERMS: usize = 64;

pub fn parse_octonion(text: &str) -> Result<Octonion> {
    let o: Octonion = serde_json::from_str(text)?;
    if o.0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parse("non-finite octonion coefficient".into()));
    }
    Ok(o)
}

pub fn parse_vector(text: &str) -> Result<OVector> {
    Ok(serde_json::from_str(text)?)
}

/// `tol` bounds the para-linearity defect of a `"matrix"` file, relative to
/// its largest entry.
pub fn parse_operator(text: &str, tol: f64) -> Result<ParaLinearOperator> {
    let file: OperatorFile = serde_json::from_str(text)?;
    file.into_operator(tol)
}

pub fn parse_spectrum_function(text: &str) -> Result<SpectrumFunction> {
    Ok(serde_json::from_str(text)?)
}

/// Polynomial coefficients `c_0, c_1, ...` from either a comma separated list
/// of reals (`"0, 0, 1"`) or a JSON array whose items are numbers or arrays
/// of 8 numbers (`[1, [0,1,0,0,0,0,0,0]]`).
pub fn parse_polynomial(text: &str) -> Result<Vec<Octonion>> {
    let text = text.trim();
    let coeffs = if text.starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(text)?;
        items
            .into_iter()
            .map(|v| match v {
                Value::Number(x) => x.as_f64().map(Octonion::real).ok_or_else(|| Error::Parse("bad number".into())),
                Value::Array(_) => Ok(serde_json::from_value::<Octonion>(v)?),
                _ => Err(Error::Parse("polynomial items must be numbers or 8-arrays".into())),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map(Octonion::real)
                    .map_err(|e| Error::Parse(format!("bad coefficient {:?}: {e}", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?
    };
    if coeffs.is_empty() || coeffs.len() > MAX_POLY_TERMS {
        return Err(Error::Parse(format!("polynomial needs 1..={MAX_POLY_TERMS} coefficients")));
    }
    if coeffs.iter().any(|c| c.0.iter().any(|v| !v.is_finite())) {
        return Err(Error::Parse("non-finite polynomial coefficient".into()));
    }
    Ok(coeffs)
}

/// Writes every float as `{:.16e}`, i.e. 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct ExactFloats;

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` with [`ExactFloats`] and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, ExactFloats);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
