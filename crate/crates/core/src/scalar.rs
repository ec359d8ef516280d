//! Scalar types used for supports and confidences.
//!
//! Every support and confidence is a ratio of transaction counts. The rule
//! engine is written once against [`Scalar`] and instantiated with exact
//! rationals (the default everywhere in this crate) or with `f64`/`f32`
//! when approximate values are good enough.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational used for thresholds and, by default, for rule metrics.
pub type Rational = Ratio<i128>;

pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {
    /// `numer / denom`. A zero denominator yields zero.
    fn from_counts(numer: u64, denom: u64) -> Self;

    fn from_rational(value: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Fixed-point rendering with `places` digits after the point.
    fn to_decimal(&self, places: u32) -> String {
        format!("{:.*}", places as usize, self.to_f64())
    }
}

impl Scalar for Rational {
    fn from_counts(numer: u64, denom: u64) -> Self {
        if denom == 0 {
            return Rational::zero();
        }
        Rational::new(numer as i128, denom as i128)
    }

    fn from_rational(value: &Rational) -> Self {
        *value
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_decimal(&self, places: u32) -> String {
        render_rational(self, places)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_counts(numer: u64, denom: u64) -> Self {
                if denom == 0 {
                    return 0.0;
                }
                numer as $t / denom as $t
            }

            fn from_rational(value: &Rational) -> Self {
                (*value.numer() as f64 / *value.denom() as f64) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Rounds half away from zero to `places` decimals and renders exactly.
pub fn render_rational(value: &Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let scaled = value.abs() * Rational::from_integer(scale);
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * 2 >= *scaled.denom() { whole + 1 } else { whole };
    let sign = if value.is_negative() && rounded != 0 { "-" } else { "" };
    let int_part = rounded / scale;
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac_part = rounded % scale;
    format!("{sign}{int_part}.{frac_part:0width$}", width = places as usize)
}

/// Parses a decimal (`0.03`, `1`, `.5`) or a ratio (`1/3`) into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 30 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let value = Rational::new(numer, 10i128.pow(frac_part.len() as u32));
    Some(if negative { -value } else { value })
}

/// Reads an `f64` as the decimal it was most likely typed as (9 places).
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    if !value.is_finite() || value.abs() > 1e18 {
        return None;
    }
    const SCALE: i128 = 1_000_000_000;
    let numer = (value * SCALE as f64).round() as i128;
    Some(Rational::new(numer, SCALE))
}
