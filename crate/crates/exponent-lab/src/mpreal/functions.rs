//! Certified elementary functions: pi generators, sine/cosine with
//! pi-multiple argument reduction, and natural logarithm.
//!
//! Error discipline: series are evaluated with explicit truncation bounds
//! (alternating or geometric tails) on top of the per-operation rounding
//! errors tracked by [`BigReal`], so every result carries a sound `err`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::sync::Mutex;

use super::bigreal::BigReal;
use super::magnitude::Magnitude;
use crate::error::{Error, Result};

/// `arctan(1/c)` to `frac_bits` fractional bits via the Taylor series in
/// pure integer arithmetic. Alternating with strictly decreasing terms, so
/// the truncation error is below the first omitted term.
fn atan_recip(c: u64, frac_bits: u32) -> BigReal {
    let s = frac_bits as u64;
    let c2 = BigUint::from(c) * BigUint::from(c);
    let mut power: BigUint = (BigUint::from(1u32) << s) / BigUint::from(c);
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigUint::from(2 * k + 1);
        if k % 2 == 0 {
            acc += BigInt::from(term);
        } else {
            acc -= BigInt::from(term);
        }
        power /= &c2;
        k += 1;
        terms += 1;
    }
    // each floored division loses < 1 unit of 2^-s; the truncated tail is
    // below one unit once `power` reaches zero
    let err = Magnitude::from_u128(3 * terms as u128 + 2, -(s as i64));
    BigReal::from_parts(acc, -(s as i64), frac_bits + 8, err)
}

/// `artanh(1/c)` to `frac_bits` fractional bits, `c >= 2`. Positive series
/// with ratio `1/c^2`; tail below twice the first omitted term.
fn atanh_recip(c: u64, frac_bits: u32) -> BigReal {
    assert!(c >= 2);
    let s = frac_bits as u64;
    let c2 = BigUint::from(c) * BigUint::from(c);
    let mut power: BigUint = (BigUint::from(1u32) << s) / BigUint::from(c);
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        acc += BigInt::from(&power / BigUint::from(2 * k + 1));
        power /= &c2;
        k += 1;
        terms += 1;
    }
    let err = Magnitude::from_u128(3 * terms as u128 + 4, -(s as i64));
    BigReal::from_parts(acc, -(s as i64), frac_bits + 8, err)
}

/// Machin's identity: `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi_machin(prec_bits: u32) -> BigReal {
    let s = prec_bits + 32;
    let a5 = atan_recip(5, s).mul_pow2(4);
    let a239 = atan_recip(239, s).mul_pow2(2);
    a5.sub(&a239).with_prec(prec_bits + 16)
}

/// Euler's identity: `pi = 4 (arctan(1/2) + arctan(1/3))`. Independent
/// cross-check for the Machin route.
pub fn pi_euler(prec_bits: u32) -> BigReal {
    let s = prec_bits + 32;
    let a2 = atan_recip(2, s);
    let a3 = atan_recip(3, s);
    a2.add(&a3).mul_pow2(2).with_prec(prec_bits + 16)
}

/// `ln 2 = 2 artanh(1/3)`.
pub fn ln2(prec_bits: u32) -> BigReal {
    atanh_recip(3, prec_bits + 32).mul_pow2(1).with_prec(prec_bits + 16)
}

// Highest-precision Machin pi computed so far; lower-precision requests are
// served by rounding it down, which keeps the error bound valid.
static PI_CACHE: Mutex<Option<BigReal>> = Mutex::new(None);

/// Cached pi with `err <= 2^(8 - prec_bits)`.
pub fn pi_cached(prec_bits: u32) -> BigReal {
    let mut guard = PI_CACHE.lock().unwrap();
    let good = matches!(&*guard, Some(p) if p.prec_bits() >= prec_bits + 16);
    if !good {
        *guard = Some(pi_machin(prec_bits.next_power_of_two().max(256)));
    }
    guard.as_ref().unwrap().clone().with_prec(prec_bits + 8)
}

/// sin by Taylor series, valid for `|x| <= 2`.
fn sin_taylor(x: &BigReal, prec_bits: u32) -> BigReal {
    debug_assert!(x.mag_stored() <= Magnitude::pow2(2));
    let cutoff = Magnitude::pow2(-(prec_bits as i64) - 16);
    let x2 = x.square();
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k: u64 = 1;
    loop {
        term = term.mul(&x2);
        term = term
            .div_u64((2 * k) * (2 * k + 1))
            .expect("nonzero factorial divisor");
        term = term.neg();
        sum = sum.add(&term);
        k += 1;
        if term.mag_upper() < cutoff && k >= 3 {
            break;
        }
    }
    // alternating once (2k)(2k+1) > x^2: tail below twice the next term
    let trunc = term.mag_upper().mul_pow2(1);
    sum.add_err(&trunc).with_prec(prec_bits + 8)
}

/// cos by Taylor series, valid for `|x| <= 2`.
fn cos_taylor(x: &BigReal, prec_bits: u32) -> BigReal {
    debug_assert!(x.mag_stored() <= Magnitude::pow2(2));
    let cutoff = Magnitude::pow2(-(prec_bits as i64) - 16);
    let x2 = x.square();
    let mut term = BigReal::from_u64(1, prec_bits + 32);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = term.mul(&x2);
        term = term
            .div_u64((2 * k - 1) * (2 * k))
            .expect("nonzero factorial divisor");
        term = term.neg();
        sum = sum.add(&term);
        k += 1;
        if term.mag_upper() < cutoff && k >= 3 {
            break;
        }
    }
    let trunc = term.mag_upper().mul_pow2(1);
    sum.add_err(&trunc).with_prec(prec_bits + 8)
}

/// Reduce `x` by the nearest multiple of pi: returns `(delta, m_parity)` with
/// `x = m pi + delta`, `|delta| <= pi/2 + epsilon`. The identity
/// `sin(x) = (-1)^m sin(delta)` holds for any integer `m`, so the rounding of
/// `m` needs no certification; only `delta` must stay in Taylor range.
fn reduce_mod_pi(x: &BigReal, prec_bits: u32) -> Result<(BigReal, bool)> {
    let mag_bits = x.mag_upper().log2_ceil().unwrap_or(0).max(0) as u32;
    let work = prec_bits + mag_bits + 64;
    let pi = pi_cached(work);
    let t = x.div(&pi)?;
    let m = t.round_stored_to_bigint();
    let delta = x.sub(&pi.mul_bigint(&m));
    if !(delta.mag_upper() <= Magnitude::pow2(1)) {
        return Err(Error::Internal(
            "pi reduction left an out-of-range remainder".into(),
        ));
    }
    let odd = m.magnitude().bit(0);
    Ok((delta, odd))
}

/// Certified sine for arbitrary (possibly huge) arguments.
pub fn sin(x: &BigReal, prec_bits: u32) -> Result<BigReal> {
    if x.mag_upper() <= Magnitude::pow2(1) {
        return Ok(sin_taylor(x, prec_bits));
    }
    let (delta, odd) = reduce_mod_pi(x, prec_bits)?;
    let s = sin_taylor(&delta, prec_bits);
    Ok(if odd { s.neg() } else { s })
}

/// Certified cosine for arbitrary arguments.
pub fn cos(x: &BigReal, prec_bits: u32) -> Result<BigReal> {
    if x.mag_upper() <= Magnitude::pow2(1) {
        return Ok(cos_taylor(x, prec_bits));
    }
    let (delta, odd) = reduce_mod_pi(x, prec_bits)?;
    let c = cos_taylor(&delta, prec_bits);
    Ok(if odd { c.neg() } else { c })
}

/// `sin(pi * d)` — the workhorse for reciprocal-sine rows, where `d` is the
/// small signed residual `pi^k q - p`.
pub fn sin_pi_times(d: &BigReal, prec_bits: u32) -> Result<BigReal> {
    let pi = pi_cached(prec_bits + 32);
    sin(&pi.mul(d), prec_bits)
}

/// `cos(pi * d)`.
pub fn cos_pi_times(d: &BigReal, prec_bits: u32) -> Result<BigReal> {
    let pi = pi_cached(prec_bits + 32);
    cos(&pi.mul(d), prec_bits)
}

/// `sin(x + m pi)` via symbolic tracking of the pi-multiple: evaluates
/// `(-1)^m sin(x)` without ever forming the huge argument.
pub fn sin_plus_pi_multiple(x: &BigReal, m: &BigInt, prec_bits: u32) -> Result<BigReal> {
    let s = sin(x, prec_bits)?;
    Ok(if m.magnitude().bit(0) { s.neg() } else { s })
}

/// Natural logarithm of a certified-positive value via
/// `ln(y 2^s) = s ln 2 + 2 artanh((y-1)/(y+1))` with `y` scaled to `[1, 2)`.
pub fn ln(x: &BigReal, prec_bits: u32) -> Result<BigReal> {
    if x.sign_certified() != Some(Ordering::Greater) {
        return Err(Error::Domain("ln of a non-positive or uncertified value".into()));
    }
    let work = prec_bits + 64;
    let s = x.stored_lower_pow2().unwrap();
    let y = x.mul_pow2(-s).with_prec(work);
    let one = BigReal::from_u64(1, work);
    let num = y.sub(&one);
    let den = y.add(&one);
    let u = num.div(&den)?;
    // u in [0, 1/3]: geometric tail with ratio u^2 <= 1/9
    let cutoff = Magnitude::pow2(-(work as i64) - 8);
    let u2 = u.square();
    let mut term = u.clone();
    let mut sum = u.clone();
    let mut k: u64 = 1;
    loop {
        if term.mag_upper() < cutoff {
            break;
        }
        term = term.mul(&u2);
        let add = term.div_u64(2 * k + 1)?;
        sum = sum.add(&add);
        k += 1;
    }
    let trunc = term.mag_upper().mul_pow2(1);
    let series = sum.add_err(&trunc).mul_pow2(1);
    let result = if s == 0 {
        series
    } else {
        series.add(&ln2(work).mul_bigint(&BigInt::from(s)))
    };
    Ok(result.with_prec(prec_bits + 8))
}

/// Natural logarithm of a positive integer.
pub fn ln_bigint(n: &BigInt, prec_bits: u32) -> Result<BigReal> {
    if !n.is_positive() {
        return Err(Error::Domain("ln of a non-positive integer".into()));
    }
    ln(&BigReal::from_bigint(n, prec_bits + 32), prec_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";

    fn assert_close_decimal(v: &BigReal, expect: &str, digits: u32) {
        let s = v.to_decimal_string(digits);
        assert_eq!(&s[..expect.len().min(s.len())], expect, "got {s}");
    }

    #[test]
    fn machin_and_euler_agree() {
        let a = pi_machin(256);
        let b = pi_euler(256);
        let d = a.sub(&b);
        assert!(d.mag_stored() <= a.err().add(&b.err()));
        assert_close_decimal(&a, &PI_60[..40], 45);
    }

    #[test]
    fn pi_error_bound_is_sound() {
        // compare 128-bit pi against 512-bit pi; difference must respect err
        let lo = pi_machin(128);
        let hi = pi_machin(512);
        let d = lo.sub(&hi);
        assert!(d.mag_stored() <= lo.err().add(&hi.err()));
        assert!(lo.err() < Magnitude::pow2(8 - 128));
    }

    #[test]
    fn sin_small_values() {
        let x = BigReal::from_ratio(&BigInt::from(1), &BigInt::from(2), 192).unwrap();
        let s = sin(&x, 192).unwrap();
        // sin(0.5) = 0.479425538604203...
        assert_close_decimal(&s, "0.4794255386042030002732879352", 30);
    }

    #[test]
    fn sin_reduction_matches_identity() {
        // sin(x + 17 pi) = -sin(x)
        let prec = 256;
        let x = BigReal::from_ratio(&BigInt::from(3), &BigInt::from(7), prec).unwrap();
        let pi = pi_cached(prec + 64);
        let big = x.add(&pi.mul_u64(17));
        let a = sin(&big, prec).unwrap();
        let b = sin(&x, prec).unwrap().neg();
        let d = a.sub(&b);
        assert!(d.mag_stored() <= d.err());
    }

    #[test]
    fn symbolic_multiple_matches_direct() {
        let prec = 320;
        let x = BigReal::from_ratio(&BigInt::from(1), &BigInt::from(3), prec).unwrap();
        let m = BigInt::from(10u64).pow(20) + 1i32;
        let sym = sin_plus_pi_multiple(&x, &m, prec).unwrap();
        let pi = pi_cached(prec + 128);
        let direct = sin(&x.add(&pi.mul_bigint(&m)), prec).unwrap();
        let d = sym.sub(&direct);
        assert!(d.mag_stored() <= d.err());
    }

    #[test]
    fn cos_of_zero_is_one() {
        let z = BigReal::zero(128);
        let c = cos(&z, 128).unwrap();
        let one = BigReal::from_u64(1, 128);
        let d = c.sub(&one);
        assert!(d.mag_upper() < Magnitude::pow2(-100));
    }

    #[test]
    fn ln_of_two_matches_ln2() {
        let two = BigReal::from_u64(2, 256);
        let a = ln(&two, 256).unwrap();
        let b = ln2(256);
        let d = a.sub(&b);
        assert!(d.mag_stored() <= d.err());
        assert_close_decimal(&a, "0.693147180559945309417232121458", 32);
    }

    #[test]
    fn ln_of_e_range_value() {
        // ln(10) = 2.302585092994045684017991454684364207601
        let ten = BigReal::from_u64(10, 256);
        let l = ln(&ten, 256).unwrap();
        assert_close_decimal(&l, "2.30258509299404568401799145468436", 40);
    }

    #[test]
    fn ln_rejects_nonpositive() {
        let z = BigReal::zero(128);
        assert!(ln(&z, 128).is_err());
        let neg = BigReal::from_i64(-3, 128);
        assert!(ln(&neg, 128).is_err());
    }
}
