//! Numeric carriers the concrete structures are generic over.
//!
//! A [`Scalar`] is an ordered signed number type: `f32`, `f64`, or an exact
//! [`BigRational`]. Exact scalars compare with zero tolerance; floating-point
//! scalars carry a default absolute tolerance used by the structures built on
//! top of them.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use rand::Rng;

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// True when arithmetic on this type is exact.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Absolute tolerance used for equality when none is configured.
    fn default_tolerance() -> Self;

    /// Parses `"p/q"`, a plain decimal such as `"0.25"` or `"-3"`, or (for
    /// floats) anything `str::parse` accepts.
    fn parse_literal(s: &str) -> Option<Self>;

    fn render(&self) -> String;

    fn to_f64(&self) -> f64;

    fn from_f64(v: f64) -> Option<Self>;

    /// Draws a value in `[0, 1]`, hitting both endpoints with some regularity.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        match rng.gen_range(0..10) {
            0 => Self::zero(),
            1 => Self::one(),
            _ => Self::sample_interior(rng),
        }
    }

    fn sample_interior<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

/// Splits `"p/q"` into its two halves, trimmed.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let (p, q) = s.split_once('/')?;
    Some((p.trim(), q.trim()))
}

/// Parses a plain decimal (`-12.0625`) into an exact `(numerator, 10^k)` pair.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if neg { -value } else { value })
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed.
pub(crate) fn render_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn default_tolerance() -> Self {
                $tol
            }

            fn parse_literal(s: &str) -> Option<Self> {
                let s = s.trim();
                if let Some((p, q)) = split_fraction(s) {
                    let p: f64 = p.parse().ok()?;
                    let q: f64 = q.parse().ok()?;
                    let v = p / q;
                    return v.is_finite().then_some(v as $t);
                }
                let v: $t = s.parse().ok()?;
                v.is_finite().then_some(v)
            }

            fn render(&self) -> String {
                render_float(*self as f64)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_f64(v: f64) -> Option<Self> {
                v.is_finite().then_some(v as $t)
            }

            fn sample_interior<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.gen::<$t>()
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-6);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn default_tolerance() -> Self {
        BigRational::zero()
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = split_fraction(s) {
            let p = parse_decimal(p)?;
            let q = parse_decimal(q)?;
            if q.is_zero() {
                return None;
            }
            return Some(p / q);
        }
        parse_decimal(s)
    }

    fn render(&self) -> String {
        // Ratio keeps itself reduced with a positive denominator.
        self.to_string()
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn sample_interior<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let den = rng.gen_range(2..=16i64);
        let num = rng.gen_range(1..den);
        Self::from_ratio(num, den)
    }
}
