//! Adaptive-precision dyadic reals with certified absolute error bounds.
//!
//! A [`BigReal`] stores `mantissa * 2^exp` together with `err`, an upper
//! bound on `|stored - true|` for whatever quantity the value represents.
//! Every arithmetic operation propagates `err` conservatively, so a chain
//! of operations started from certified inputs stays certified.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use super::magnitude::Magnitude;
use crate::error::{Error, Result};

/// Arbitrary-precision real: `mantissa * 2^exp`, `|stored - true| <= err`.
#[derive(Clone, Debug)]
pub struct BigReal {
    mantissa: BigInt,
    exp: i64,
    prec_bits: u32,
    err: Magnitude,
}

/// Shift a magnitude right with round-half-even, returning the rounded value.
fn round_shift_half_even(m: &BigUint, shift: u64) -> BigUint {
    if shift == 0 {
        return m.clone();
    }
    let q: BigUint = m >> shift;
    let rem: BigUint = m - (&q << shift);
    let half: BigUint = BigUint::one() << (shift - 1);
    match rem.cmp(&half) {
        Ordering::Less => q,
        Ordering::Greater => q + 1u32,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

impl BigReal {
    pub const MIN_PREC: u32 = 64;

    pub fn zero(prec_bits: u32) -> BigReal {
        BigReal {
            mantissa: BigInt::zero(),
            exp: 0,
            prec_bits,
            err: Magnitude::ZERO,
        }
    }

    /// Exact dyadic value `mantissa * 2^exp` with a caller-asserted error bound.
    pub fn from_parts(mantissa: BigInt, exp: i64, prec_bits: u32, err: Magnitude) -> BigReal {
        let mut v = BigReal {
            mantissa,
            exp,
            prec_bits,
            err,
        };
        v.normalize();
        v
    }

    pub fn from_bigint(n: &BigInt, prec_bits: u32) -> BigReal {
        BigReal::from_parts(n.clone(), 0, prec_bits, Magnitude::ZERO)
    }

    pub fn from_u64(n: u64, prec_bits: u32) -> BigReal {
        BigReal::from_bigint(&BigInt::from(n), prec_bits)
    }

    pub fn from_i64(n: i64, prec_bits: u32) -> BigReal {
        BigReal::from_bigint(&BigInt::from(n), prec_bits)
    }

    /// Exact conversion of a finite `f64` (every finite f64 is dyadic).
    pub fn from_f64(x: f64, prec_bits: u32) -> Result<BigReal> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite input {x}")));
        }
        let r = BigRational::from_float(x)
            .ok_or_else(|| Error::Domain(format!("unrepresentable input {x}")))?;
        // denominator of a dyadic rational is a power of two
        let den_bits = r.denom().bits() - 1;
        Ok(BigReal::from_parts(
            r.numer().clone(),
            -(den_bits as i64),
            prec_bits,
            Magnitude::ZERO,
        ))
    }

    /// `num / den` rounded to `prec_bits`, error at most one ulp.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec_bits: u32) -> Result<BigReal> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(BigReal::zero(prec_bits));
        }
        let target = prec_bits as i64 + 2;
        let shift = (target + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let scaled = num << shift;
        let (q, r) = scaled.div_rem(den);
        // round to nearest (half away from zero is fine: covered by the ulp bound)
        let q = if (&r * 2i32).magnitude() >= den.magnitude() {
            if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
                q - 1i32
            } else {
                q + 1i32
            }
        } else {
            q
        };
        let exp = -(shift as i64);
        Ok(BigReal::from_parts(
            q,
            exp,
            prec_bits,
            Magnitude::pow2(exp),
        ))
    }

    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn err(&self) -> Magnitude {
        self.err
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_stored_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Replace the error bound; caller asserts validity of the new bound.
    pub fn with_err(mut self, err: Magnitude) -> BigReal {
        self.err = err;
        self
    }

    pub fn add_err(mut self, extra: &Magnitude) -> BigReal {
        self.err = self.err.add(extra);
        self
    }

    /// Round to a (usually lower) precision; the error bound absorbs the
    /// rounding, so certification is preserved.
    pub fn with_prec(mut self, prec_bits: u32) -> BigReal {
        self.prec_bits = prec_bits;
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mantissa.bits();
        let cap = self.prec_bits as u64;
        if bits > cap {
            let shift = bits - cap;
            let sign = self.mantissa.sign();
            let mag = round_shift_half_even(self.mantissa.magnitude(), shift);
            self.mantissa = BigInt::from_biguint(sign, mag);
            self.exp += shift as i64;
            // rounding is at most half an ulp of the new scale
            self.err = self.err.add(&Magnitude::pow2(self.exp - 1));
        }
    }

    /// Upper bound on `|stored|`.
    pub fn mag_stored(&self) -> Magnitude {
        Magnitude::from_bigint_abs(&self.mantissa, self.exp)
    }

    /// Upper bound on `|true|`.
    pub fn mag_upper(&self) -> Magnitude {
        self.mag_stored().add(&self.err)
    }

    /// `e` such that `|stored| >= 2^e`; `None` when the stored value is zero.
    pub fn stored_lower_pow2(&self) -> Option<i64> {
        if self.mantissa.is_zero() {
            None
        } else {
            Some(self.exp + self.mantissa.bits() as i64 - 1)
        }
    }

    /// `e` such that `|true| >= 2^e`, or `None` if the interval may contain 0.
    pub fn true_lower_pow2(&self) -> Option<i64> {
        let lb = self.stored_lower_pow2()?;
        // |true| >= 2^lb - err; certify a power-of-two lower bound
        if self.err < Magnitude::pow2(lb - 1) {
            Some(lb - 1)
        } else {
            None
        }
    }

    /// Certified sign of the true value: `None` when the interval straddles 0.
    pub fn sign_certified(&self) -> Option<Ordering> {
        if self.mantissa.is_zero() {
            return if self.err.is_zero() {
                Some(Ordering::Equal)
            } else {
                None
            };
        }
        let lb = self.stored_lower_pow2().unwrap();
        if self.err < Magnitude::pow2(lb) {
            Some(if self.mantissa.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            })
        } else {
            None
        }
    }

    pub fn neg(&self) -> BigReal {
        BigReal {
            mantissa: -&self.mantissa,
            exp: self.exp,
            prec_bits: self.prec_bits,
            err: self.err,
        }
    }

    pub fn abs(&self) -> BigReal {
        BigReal {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
            prec_bits: self.prec_bits,
            err: self.err,
        }
    }

    /// Exact scaling by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> BigReal {
        if self.mantissa.is_zero() {
            return BigReal::zero(self.prec_bits).with_err(self.err.mul_pow2(e));
        }
        BigReal {
            mantissa: self.mantissa.clone(),
            exp: self.exp + e,
            prec_bits: self.prec_bits,
            err: self.err.mul_pow2(e),
        }
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let prec = self.prec_bits.max(other.prec_bits);
        let err = self.err.add(&other.err);
        if self.mantissa.is_zero() {
            return other.clone().with_prec(prec).with_err(err);
        }
        if other.mantissa.is_zero() {
            return self.clone().with_prec(prec).with_err(err);
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let gap = (hi.exp - lo.exp) as u64;
        let sum = (&hi.mantissa << gap) + &lo.mantissa;
        BigReal::from_parts(sum, lo.exp, prec, err)
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let prec = self.prec_bits.max(other.prec_bits);
        let err = self
            .mag_stored()
            .mul(&other.err)
            .add(&other.mag_stored().mul(&self.err))
            .add(&self.err.mul(&other.err));
        let prod = &self.mantissa * &other.mantissa;
        BigReal::from_parts(prod, self.exp + other.exp, prec, err)
    }

    pub fn square(&self) -> BigReal {
        self.mul(self)
    }

    pub fn mul_bigint(&self, k: &BigInt) -> BigReal {
        let err = Magnitude::from_bigint_abs(k, 0).mul(&self.err);
        BigReal::from_parts(&self.mantissa * k, self.exp, self.prec_bits, err)
    }

    pub fn mul_u64(&self, k: u64) -> BigReal {
        self.mul_bigint(&BigInt::from(k))
    }

    /// Division with a certified-nonzero denominator.
    pub fn div(&self, other: &BigReal) -> Result<BigReal> {
        let prec = self.prec_bits.max(other.prec_bits);
        let lb = other.stored_lower_pow2().ok_or_else(|| Error::UnresolvedTie {
            context: "division by stored zero".into(),
        })?;
        if !(other.err < Magnitude::pow2(lb - 1)) {
            return Err(Error::UnresolvedTie {
                context: "divisor not certified away from zero".into(),
            });
        }
        if self.mantissa.is_zero() {
            // |true a / true b| <= err_a / (|b| - err_b) <= err_a * 2^(1-lb)
            return Ok(BigReal::zero(prec).with_err(self.err.mul_pow2(1 - lb)));
        }
        let target = prec as i64 + 2;
        let shift = (target + other.mantissa.bits() as i64 - self.mantissa.bits() as i64).max(0)
            as u64;
        let scaled = &self.mantissa << shift;
        let (q, r) = scaled.div_rem(&other.mantissa);
        let q = if (&r * 2i32).magnitude() >= other.mantissa.magnitude() {
            if (self.mantissa.sign() == Sign::Minus) != (other.mantissa.sign() == Sign::Minus) {
                q - 1i32
            } else {
                q + 1i32
            }
        } else {
            q
        };
        let exp = self.exp - other.exp - shift as i64;
        let round_err = Magnitude::pow2(exp);
        let quotient_mag = Magnitude::from_bigint_abs(&q, exp).add(&round_err);
        // |a/b - a^/b^| <= (err_a + |a^/b^| err_b) / (|b^| - err_b)
        let prop = self
            .err
            .add(&quotient_mag.mul(&other.err))
            .mul_pow2(1 - lb);
        Ok(BigReal::from_parts(
            q,
            exp,
            prec,
            prop.add(&round_err),
        ))
    }

    pub fn div_u64(&self, k: u64) -> Result<BigReal> {
        if k == 0 {
            return Err(Error::ZeroDenominator);
        }
        self.div(&BigReal::from_u64(k, self.prec_bits))
    }

    /// Square root of a certified-nonnegative value.
    pub fn sqrt(&self) -> Result<BigReal> {
        match self.sign_certified() {
            Some(Ordering::Less) => {
                return Err(Error::Domain("sqrt of a certified-negative value".into()))
            }
            Some(Ordering::Equal) => return Ok(BigReal::zero(self.prec_bits)),
            Some(Ordering::Greater) => {}
            None => {
                if self.mantissa.is_negative() {
                    return Err(Error::UnresolvedTie {
                        context: "sqrt near zero with negative stored value".into(),
                    });
                }
                // stored >= 0 but not certified positive: |true| <= stored + err
                let bound = self.mag_upper();
                let half = bound.log2_ceil().map(|e| Magnitude::pow2(e / 2 + 1));
                return Ok(BigReal::zero(self.prec_bits)
                    .with_err(half.unwrap_or(Magnitude::ZERO)));
            }
        }
        let target = 2 * (self.prec_bits as i64 + 2);
        let bits = self.mantissa.bits() as i64;
        let mut shift = (target - bits).max(0) as u64;
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let scaled: BigUint = self.mantissa.magnitude() << shift;
        let root = scaled.sqrt();
        let exp = (self.exp - shift as i64) / 2;
        let round_err = Magnitude::pow2(exp);
        // d sqrt = err / (2 sqrt(x)); sqrt(x) >= 2^(lb/2 floor)
        let lb = self.true_lower_pow2().unwrap();
        let prop = self.err.mul_pow2(-1 - lb.div_euclid(2));
        Ok(BigReal::from_parts(
            BigInt::from_biguint(Sign::Plus, root),
            exp,
            self.prec_bits,
            prop.add(&round_err),
        ))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, k: u32) -> BigReal {
        if k == 0 {
            return BigReal::from_u64(1, self.prec_bits);
        }
        let mut acc: Option<BigReal> = None;
        let mut base = self.clone();
        let mut rem = k;
        loop {
            if rem & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            rem >>= 1;
            if rem == 0 {
                break;
            }
            base = base.square();
        }
        acc.unwrap()
    }

    /// Compare the stored dyadic values exactly (ignores error bounds).
    pub fn cmp_stored(&self, other: &BigReal) -> Ordering {
        let diff = self.sub_exact_for_cmp(other);
        diff.sign().cmp(&Sign::NoSign)
    }

    fn sub_exact_for_cmp(&self, other: &BigReal) -> BigInt {
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &other.mantissa << (other.exp - e) as u64;
        a - b
    }

    /// Certified comparison of the true values; `None` when intervals overlap
    /// without being exactly equal.
    pub fn cmp_certified(&self, other: &BigReal) -> Option<Ordering> {
        let e = self.exp.min(other.exp);
        let diff = self.sub_exact_for_cmp(other);
        let errsum = self.err.add(&other.err);
        if diff.is_zero() {
            return if errsum.is_zero() {
                Some(Ordering::Equal)
            } else {
                None
            };
        }
        let lb = e + diff.bits() as i64 - 1;
        if errsum < Magnitude::pow2(lb) {
            Some(diff.sign().cmp(&Sign::NoSign))
        } else {
            None
        }
    }

    /// Nearest integer to the stored value (round half to even).
    pub fn round_stored_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mantissa << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        let sign = self.mantissa.sign();
        let mag = round_shift_half_even(self.mantissa.magnitude(), shift);
        BigInt::from_biguint(sign, mag)
    }

    /// Nearest integer to the true value, certified. An exact half-integer
    /// (possible only for error-free dyadics) resolves to the smaller integer.
    pub fn round_to_nearest_certified(&self) -> Result<BigInt> {
        let n = self.round_stored_to_bigint();
        // distance from stored to the half-integer boundary must exceed err
        let frac = self.sub(&BigReal::from_bigint(&n, self.prec_bits));
        let frac_mag = frac.mag_stored();
        let half = Magnitude::pow2(-1);
        if self.err.is_zero() {
            // exact value: a half-integer boundary resolves to the smaller integer
            let two_frac = frac.mul_pow2(1).abs();
            let one = BigReal::from_u64(1, self.prec_bits);
            if two_frac.cmp_stored(&one) == Ordering::Equal {
                return Ok(if frac.mantissa.is_positive() {
                    n // true value is n + 1/2; smaller candidate is n
                } else {
                    n - 1i32 // true value is n - 1/2; smaller candidate is n - 1
                });
            }
            return Ok(n);
        }
        // |frac| + err < 1/2 certifies the choice
        if frac_mag.add(&self.err) < half {
            Ok(n)
        } else {
            Err(Error::UnresolvedTie {
                context: "rounding to nearest integer".into(),
            })
        }
    }

    /// Exact rational endpoints `[stored - err, stored + err]` of the
    /// certified interval.
    pub fn to_rational_endpoints(&self) -> (BigRational, BigRational) {
        let center = self.to_rational_stored();
        let (emant, eexp) = self.err.to_bigint_scaled();
        let err = scaled_to_rational(&BigInt::from_biguint(Sign::Plus, emant), eexp);
        (&center - &err, center + err)
    }

    pub fn to_rational_stored(&self) -> BigRational {
        scaled_to_rational(&self.mantissa, self.exp)
    }

    /// Lossy `f64` view of the stored value (display and diagnostics only).
    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        if bits <= 52 {
            return self.mantissa.to_f64().unwrap_or(0.0) * (self.exp as f64).exp2();
        }
        let shift = bits - 52;
        let top: BigInt = &self.mantissa >> shift;
        top.to_f64().unwrap_or(0.0) * ((self.exp + shift as i64) as f64).exp2()
    }

    /// Fixed-point decimal rendering of the stored value with `frac_digits`
    /// digits after the point (round half to even on the last digit).
    pub fn to_decimal_string(&self, frac_digits: u32) -> String {
        let scaled = self.scale_decimal(frac_digits);
        let neg = scaled.is_negative();
        let mag = scaled.magnitude().to_string();
        let d = frac_digits as usize;
        let padded = if mag.len() <= d {
            format!("0.{}{}", "0".repeat(d - mag.len()), mag)
        } else {
            let (int, frac) = mag.split_at(mag.len() - d);
            if d == 0 {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        };
        if neg {
            format!("-{padded}")
        } else {
            padded
        }
    }

    /// `round(stored * 10^digits)` half-even.
    fn scale_decimal(&self, digits: u32) -> BigInt {
        let pow = BigInt::from(10u32).pow(digits);
        let scaled_mant = &self.mantissa * &pow;
        let v = BigReal::from_parts(scaled_mant, self.exp, u32::MAX - 64, Magnitude::ZERO);
        v.round_stored_to_bigint()
    }

    /// Scientific rendering `d.ddd...e±k` of the stored value with `sig`
    /// significant digits.
    pub fn to_sci_string(&self, sig: u32) -> String {
        if self.mantissa.is_zero() {
            return "0".into();
        }
        let sig = sig.max(1);
        // decimal exponent of the leading digit
        let log10 = (self.exp as f64 + self.mantissa.bits() as f64) * std::f64::consts::LN_2
            / std::f64::consts::LN_10;
        let mut dec_exp = log10.floor() as i64;
        loop {
            // digits = round(|stored| * 10^(sig-1-dec_exp))
            let k = sig as i64 - 1 - dec_exp;
            let digits = self.scale_by_pow10_abs(k);
            let s = digits.to_string();
            if s.len() as u32 == sig {
                let neg = if self.mantissa.is_negative() { "-" } else { "" };
                let mantissa_str = if sig == 1 {
                    s
                } else {
                    format!("{}.{}", &s[..1], &s[1..])
                };
                return format!("{neg}{mantissa_str}e{dec_exp}");
            }
            if s.len() as u32 > sig {
                dec_exp += 1;
            } else {
                dec_exp -= 1;
            }
        }
    }

    /// `round(|stored| * 10^k)` for possibly negative `k`.
    fn scale_by_pow10_abs(&self, k: i64) -> BigUint {
        let mag = BigInt::from_biguint(Sign::Plus, self.mantissa.magnitude().clone());
        let v = if k >= 0 {
            let pow = BigInt::from(10u32).pow(k as u32);
            BigReal::from_parts(mag * pow, self.exp, u32::MAX - 64, Magnitude::ZERO)
        } else {
            let pow = BigInt::from(10u32).pow((-k) as u32);
            let num = mag << 128;
            let q = num / pow;
            BigReal::from_parts(q, self.exp - 128, u32::MAX - 64, Magnitude::ZERO)
        };
        v.round_stored_to_bigint().magnitude().clone()
    }

    /// Render with `places` decimals, rounding half to even, certified:
    /// errors if the true value could round differently.
    pub fn round_half_even_decimal(&self, places: u32) -> Result<String> {
        self.check_decimal_grid_distance(places)?;
        Ok(self.to_decimal_string(places))
    }

    /// Render with `places` decimals, rounded up (ceiling), certified.
    pub fn ceil_decimal(&self, places: u32) -> Result<String> {
        self.check_decimal_grid_distance(places)?;
        let pow = BigInt::from(10u32).pow(places);
        let scaled_mant = &self.mantissa * &pow;
        let v = BigReal::from_parts(scaled_mant, self.exp, u32::MAX - 64, Magnitude::ZERO);
        // ceiling of stored * 10^places
        let n = if v.exp >= 0 {
            &v.mantissa << v.exp as u64
        } else {
            let shift = (-v.exp) as u64;
            let q: BigInt = &v.mantissa >> shift;
            let rem = &v.mantissa - (&q << shift);
            if rem.is_zero() {
                q
            } else if v.mantissa.is_negative() {
                q
            } else {
                q + 1i32
            }
        };
        Ok(format_scaled_decimal(&n, places))
    }

    /// The half-even and ceiling renderings above are stable only when the
    /// true value is certifiably away from the rounding boundaries; rounding
    /// boundaries for both modes live on the grid of multiples of
    /// `10^-(places+1) * 5` (ties) and `10^-places` (ceiling jumps), so it is
    /// enough that the distance from `stored * 10^places * 2` to the integer
    /// grid exceeds the scaled error.
    fn check_decimal_grid_distance(&self, places: u32) -> Result<()> {
        let pow = BigInt::from(10u32).pow(places);
        let doubled = BigReal::from_parts(
            &self.mantissa * &pow * 2i32,
            self.exp,
            u32::MAX - 64,
            Magnitude::ZERO,
        );
        let n = doubled.round_stored_to_bigint();
        let frac = doubled.sub(&BigReal::from_bigint(&n, u32::MAX - 64));
        let scaled_err = self
            .err
            .mul(&Magnitude::from_bigint_abs(&pow, 1));
        if self.err.is_zero() {
            return Ok(());
        }
        if frac.mag_stored() > scaled_err && !frac.mag_stored().is_zero() {
            Ok(())
        } else if frac.is_stored_zero() && scaled_err.is_zero() {
            Ok(())
        } else {
            Err(Error::UnresolvedTie {
                context: format!("decimal rounding to {places} places"),
            })
        }
    }
}

fn scaled_to_rational(mantissa: &BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(mantissa << exp as u64)
    } else {
        BigRational::new(mantissa.clone(), BigInt::one() << (-exp) as u64)
    }
}

/// Format `n / 10^places` with exactly `places` decimals.
fn format_scaled_decimal(n: &BigInt, places: u32) -> String {
    let neg = n.is_negative();
    let mag = n.magnitude().to_string();
    let d = places as usize;
    let body = if mag.len() <= d {
        format!("0.{}{}", "0".repeat(d - mag.len()), mag)
    } else {
        let (int, frac) = mag.split_at(mag.len() - d);
        if d == 0 {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
