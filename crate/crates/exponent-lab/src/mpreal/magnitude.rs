//! Upward-rounded magnitude bounds.
//!
//! A [`Magnitude`] is a nonnegative bound `mant * 2^exp` with a 32-bit
//! mantissa, used for certified absolute error bounds and for coarse
//! `|value|` envelopes. Every operation rounds up, so a `Magnitude`
//! computed from upper bounds is itself an upper bound.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::cmp::Ordering;

/// Nonnegative upper bound of the form `mant * 2^exp`.
///
/// Invariant: `mant == 0` (the exact-zero bound) or `2^31 <= mant < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Magnitude {
    mant: u32,
    exp: i64,
}

const NORM_BITS: u32 = 32;

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude { mant: 0, exp: 0 };

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Magnitude {
        Magnitude {
            mant: 1 << (NORM_BITS - 1),
            exp: e - (NORM_BITS as i64 - 1),
        }
    }

    /// Upper bound built from a `u128` scaled by `2^exp`, rounding up.
    pub fn from_u128(m: u128, exp: i64) -> Magnitude {
        if m == 0 {
            return Magnitude::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        if bits <= NORM_BITS {
            let shift = NORM_BITS - bits;
            Magnitude {
                mant: (m as u32) << shift,
                exp: exp - shift as i64,
            }
        } else {
            let shift = bits - NORM_BITS;
            let kept = (m >> shift) as u64;
            let lost = m & ((1u128 << shift) - 1) != 0;
            let rounded = kept + lost as u64;
            if rounded >> NORM_BITS != 0 {
                // carry out of the 32-bit window
                Magnitude {
                    mant: 1 << (NORM_BITS - 1),
                    exp: exp + shift as i64 + 1 - (NORM_BITS as i64 - 1),
                }
            } else {
                Magnitude {
                    mant: rounded as u32,
                    exp: exp + shift as i64,
                }
            }
        }
    }

    /// Upper bound on `|n| * 2^exp`.
    pub fn from_bigint_abs(n: &BigInt, exp: i64) -> Magnitude {
        Self::from_biguint(n.magnitude(), exp)
    }

    pub fn from_biguint(n: &BigUint, exp: i64) -> Magnitude {
        if n.is_zero() {
            return Magnitude::ZERO;
        }
        let bits = n.bits();
        if bits <= 64 {
            let words = n.to_u64_digits();
            return Self::from_u128(words[0] as u128, exp);
        }
        let shift = bits - 64;
        let top: BigUint = n >> shift;
        let words = top.to_u64_digits();
        // +1 covers the truncated low bits
        Self::from_u128(words[0] as u128 + 1, exp + shift as i64)
    }

    /// Upper bound on `num / den` (both positive), rounding up.
    pub fn from_ratio(num: &BigUint, den: &BigUint) -> Magnitude {
        assert!(!den.is_zero(), "Magnitude::from_ratio zero denominator");
        if num.is_zero() {
            return Magnitude::ZERO;
        }
        // scale so the quotient carries ~48 significant bits
        let shift = (den.bits() as i64 - num.bits() as i64 + 48).max(0) as u64;
        let q = (num << shift) / den;
        let words = q.to_u64_digits();
        let lead = if words.len() > 2 {
            // quotient wider than 128 bits: bound by its bit length
            return Self::pow2(q.bits() as i64 - shift as i64);
        } else if words.len() == 2 {
            ((words[1] as u128) << 64) | words[0] as u128
        } else {
            words[0] as u128
        };
        Self::from_u128(lead + 1, -(shift as i64))
    }

    /// Upper bound on `10^e` for any integer `e`.
    pub fn pow10(e: i64) -> Magnitude {
        let ten = BigUint::from(10u32);
        if e >= 0 {
            Self::from_biguint(&ten.pow(e as u32), 0)
        } else {
            Self::from_ratio(&BigUint::from(1u32), &ten.pow((-e) as u32))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    pub fn add(&self, other: &Magnitude) -> Magnitude {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let diff = hi.exp - lo.exp;
        if diff >= 64 {
            // lo is below hi's resolution; bump one ulp
            return Magnitude::from_u128(hi.mant as u128 + 1, hi.exp);
        }
        let aligned_lo = (lo.mant as u128 >> diff) + 1; // +1 rounds the shift up
        Magnitude::from_u128(hi.mant as u128 + aligned_lo, hi.exp)
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        if self.is_zero() || other.is_zero() {
            return Magnitude::ZERO;
        }
        Magnitude::from_u128(
            self.mant as u128 * other.mant as u128,
            self.exp + other.exp,
        )
    }

    pub fn mul_pow2(&self, e: i64) -> Magnitude {
        if self.is_zero() {
            return Magnitude::ZERO;
        }
        Magnitude {
            mant: self.mant,
            exp: self.exp + e,
        }
    }

    pub fn max(&self, other: &Magnitude) -> Magnitude {
        if self >= other {
            *self
        } else {
            *other
        }
    }

    /// Exact value as a rational `(numerator, 2^k denominator-exponent)`:
    /// the bound equals `mant * 2^exp`.
    pub fn to_bigint_scaled(&self) -> (BigUint, i64) {
        (BigUint::from(self.mant), self.exp)
    }

    /// `log2` of the bound, rounded up to the next integer; `None` for zero.
    pub fn log2_ceil(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let bits = 32 - self.mant.leading_zeros(); // always 32 when normalized
        let pow2_exact = self.mant.is_power_of_two();
        Some(self.exp + bits as i64 - pow2_exact as i64)
    }

    /// Lossy `f64` view for display; saturates to 0/inf far outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp;
        if e > 1_000 {
            f64::INFINITY
        } else if e < -1_100 {
            0.0
        } else {
            self.mant as f64 * (e as f64).exp2()
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_mag(other))
    }
}

impl Magnitude {
    fn cmp_mag(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => {
                // both normalized to 32 mantissa bits, so exponent decides first
                match self.exp.cmp(&other.exp) {
                    Ordering::Equal => self.mant.cmp(&other.mant),
                    ord => ord,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_roundtrip() {
        let m = Magnitude::pow2(-100);
        assert_eq!(m.log2_ceil(), Some(-100));
        assert!(!m.is_zero());
    }

    #[test]
    fn add_is_upper_bound() {
        let a = Magnitude::pow2(-10);
        let b = Magnitude::pow2(-12);
        let s = a.add(&b);
        // 2^-10 + 2^-12 = 1.25 * 2^-10
        assert!(s >= a && s >= b);
        assert!(s.to_f64() >= 2f64.powi(-10) + 2f64.powi(-12));
        assert!(s.to_f64() <= 1.01 * (2f64.powi(-10) + 2f64.powi(-12)));
    }

    #[test]
    fn mul_rounds_up() {
        let a = Magnitude::from_u128(3, 0);
        let b = Magnitude::from_u128(5, -4);
        assert!(a.mul(&b).to_f64() >= 15.0 / 16.0);
    }

    #[test]
    fn ratio_bound_covers_value() {
        let m = Magnitude::from_ratio(&BigUint::from(1u32), &BigUint::from(3u32));
        assert!(m.to_f64() >= 1.0 / 3.0);
        assert!(m.to_f64() < 1.0 / 3.0 + 1e-8);
    }

    #[test]
    fn pow10_negative() {
        let m = Magnitude::pow10(-6);
        assert!(m.to_f64() >= 1e-6);
        assert!(m.to_f64() < 1.001e-6);
    }

    #[test]
    fn far_apart_add_bumps_ulp() {
        let a = Magnitude::pow2(0);
        let b = Magnitude::pow2(-200);
        let s = a.add(&b);
        assert!(s > a);
        assert!(s.to_f64() < 1.0 + 1e-8);
    }
}
