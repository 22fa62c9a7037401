//! Fixed-precision number rendering shared by the JSON and CSV writers.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `x` rounded to `digits` significant digits, in shortest form.
pub fn sig_digits(x: f64, digits: usize) -> String {
    let rounded: f64 = format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("formatted float parses");
    rounded.to_string()
}

/// CSV cell: 6 significant digits, empty for missing or non-finite values.
pub fn csv_cell(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => sig_digits(v, 6),
        _ => String::new(),
    }
}

/// JSON number with 17 significant digits (lossless for f64); `null` when
/// non-finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}
