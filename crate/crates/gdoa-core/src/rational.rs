//! Arbitrary-precision rational scalars for the exact arithmetic mode.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Reduced arbitrary-precision rational, denominator > 0.
pub type Rat = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Integer power of a rational, with exact inversion for negative
/// exponents. `0^e` with `e < 0` is rejected.
pub fn rat_pow_i(base: &Rat, exp: i64) -> Result<Rat, Error> {
    if base.is_zero() {
        return match exp {
            0 => Ok(rat_int(1)),
            e if e > 0 => Ok(Rat::zero()),
            _ => Err(Error::InvalidParameter("0 raised to a negative power".to_string())),
        };
    }
    let k = exp.unsigned_abs() as u32;
    let num = num_traits::pow::pow(base.numer().clone(), k as usize);
    let den = num_traits::pow::pow(base.denom().clone(), k as usize);
    let p = Rat::new(num, den);
    if exp >= 0 {
        Ok(p)
    } else {
        Ok(p.recip())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_is_int(r: &Rat) -> bool {
    r.is_integer()
}

pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Canonical `num/den` form, always with an explicit denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"a/b"`, an integer literal, or a finite decimal such as
/// `"0.25"` (converted exactly as a power-of-ten fraction).
pub fn rat_from_str(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse `{s}` as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let num = if s.starts_with('-') { -num } else { num };
        let den = num_traits::pow::pow(BigInt::from(10), frac_part.len());
        return Ok(Rat::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(num))
}

/// Magnitude guard used by exact recurrences mirroring the float
/// DivergenceGuard; trips when the value exceeds 1e300 in absolute value.
pub fn rat_diverged(r: &Rat) -> bool {
    match r.to_f64() {
        Some(v) => v.abs() > 1e300,
        None => r.abs() > Rat::from_float(1e300).unwrap(),
    }
}
