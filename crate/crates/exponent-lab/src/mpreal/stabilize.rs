//! Precision-doubling stabilization of recomputable expressions.

use super::bigreal::BigReal;
use super::magnitude::Magnitude;
use crate::error::{Error, Result};

/// Caps for the precision-escalation loops.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionLimits {
    /// Maximum working precision in decimal digits.
    pub max_digits: u64,
}

impl PrecisionLimits {
    pub const DEFAULT_MAX_DIGITS: u64 = 100_000;

    pub fn max_bits(&self) -> u64 {
        digits_to_bits(self.max_digits)
    }

    pub fn check_bits(&self, bits: u64, context: &str) -> Result<()> {
        if bits > self.max_bits() {
            Err(Error::PrecisionCeiling {
                max_digits: self.max_digits,
                context: context.to_string(),
            })
        } else {
            Ok(())
        }
    }
}

impl Default for PrecisionLimits {
    fn default() -> Self {
        PrecisionLimits {
            max_digits: Self::DEFAULT_MAX_DIGITS,
        }
    }
}

/// Bits needed to resolve `digits` decimal digits (with a small guard).
pub fn digits_to_bits(digits: u64) -> u64 {
    (digits as f64 * std::f64::consts::LN_10 / std::f64::consts::LN_2).ceil() as u64 + 4
}

const MAX_DOUBLINGS: u32 = 20;

/// Evaluate `expr` at doubling precisions until two successive evaluations
/// agree to `target_digits` decimal digits; the returned value carries
/// `err_abs <= 10^(-target_digits)`.
///
/// The certificate here is dual-evaluation agreement, not an a-priori
/// series bound, which is why ill-posed expressions fail with
/// [`Error::NoConvergence`] instead of returning garbage.
pub fn stabilize<F>(expr: F, target_digits: u32, limits: &PrecisionLimits) -> Result<BigReal>
where
    F: Fn(u32) -> Result<BigReal>,
{
    if target_digits == 0 {
        return Err(Error::Domain("target_digits must be positive".into()));
    }
    let tol = Magnitude::pow10(-(target_digits as i64)).mul_pow2(-1);
    let mut prec = (digits_to_bits(target_digits as u64) as u32 + 32).max(BigReal::MIN_PREC);
    let mut prev: Option<BigReal> = None;
    for _ in 0..=MAX_DOUBLINGS {
        limits.check_bits(prec as u64, "stabilize")?;
        let cur = match expr(prec) {
            Ok(v) => v,
            Err(e) if e.is_precision_failure() => {
                prev = None;
                prec = prec.saturating_mul(2);
                continue;
            }
            Err(e) => return Err(e),
        };
        if let Some(p) = &prev {
            let diff = cur.sub(p).mag_upper();
            if diff <= tol {
                let claimed = Magnitude::pow10(-(target_digits as i64));
                let err = if cur.err() < claimed { cur.err() } else { claimed };
                return Ok(cur.with_err(err));
            }
        }
        prev = Some(cur);
        prec = prec.saturating_mul(2);
    }
    Err(Error::NoConvergence {
        target_digits,
        doublings: MAX_DOUBLINGS,
    })
}
