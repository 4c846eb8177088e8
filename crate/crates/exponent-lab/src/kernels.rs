//! Dirichlet and Fejer harmonic summation kernels: closed forms, direct
//! summation oracles, and growth-bound scans.
//!
//! Summation side (the defining finite sums, exact by construction):
//!   `D_x(z) = 1 + 2 sum_{n=1..x} cos(2 n z)`
//!   `F_x(z) = sum_{n=0..x} D_n(z)`
//! Closed forms:
//!   `D_x(z) = sin((2x+1) z) / sin(z)`
//!   `F_x(z) = sin((x+1) z)^2 / sin(z)^2`
//!
//! The Fejer closed form here carries no leading 1/2: expanding the double
//! sum term by term gives `F_0(z) = 1` and `F_x -> (x+1)^2` as `z -> 0`,
//! which the 1/2-scaled form cannot match. The half-scaled variant is kept
//! available for side-by-side reporting of the discrepancy.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::mpreal::functions::{cos, sin};
use crate::mpreal::BigReal;

const MAX_SUM_X: u64 = 100_000;

/// One evaluated grid point.
#[derive(Clone, Debug)]
pub struct KernelSample {
    pub x: f64,
    pub z: f64,
    pub closed: BigReal,
    /// Present when `x` is a nonnegative integer and the summation oracle ran.
    pub summed: Option<BigReal>,
    /// `|closed - summed|` when both sides exist.
    pub deviation: Option<BigReal>,
}

/// Reject `z` when `sin z` cannot be certified at least `2^(-prec/2)` away
/// from zero; the caller must raise precision or use the limit value.
fn certified_sin(z: &BigReal, prec: u32) -> Result<BigReal> {
    let s = sin(z, prec)?;
    let half_prec = prec / 2;
    match s.true_lower_pow2() {
        Some(lb) if lb >= -(half_prec as i64) => Ok(s),
        _ => Err(Error::NearSingularity { half_prec }),
    }
}

/// Closed-form Dirichlet kernel `sin((2x+1) z) / sin(z)` for real `x`
/// (the analytic continuation when `x` is not an integer).
pub fn dirichlet_closed(x: &BigReal, z: &BigReal, prec: u32) -> Result<BigReal> {
    let den = certified_sin(z, prec)?;
    let two_x_plus_1 = x.mul_pow2(1).add(&BigReal::from_u64(1, prec));
    let num = sin(&two_x_plus_1.mul(z), prec)?;
    num.div(&den)
}

/// Summation-form Dirichlet kernel `1 + 2 sum_{n=1..x} cos(2 n z)`.
pub fn dirichlet_sum(x: u64, z: &BigReal, prec: u32) -> Result<BigReal> {
    if x > MAX_SUM_X {
        return Err(Error::Domain(format!(
            "summation oracle capped at x <= 10^5, got {x}"
        )));
    }
    let two_z = z.mul_pow2(1);
    let mut acc = BigReal::from_u64(1, prec);
    for n in 1..=x {
        let c = cos(&two_z.mul_u64(n), prec)?;
        acc = acc.add(&c.mul_pow2(1));
    }
    Ok(acc)
}

/// Closed-form Fejer kernel `sin((x+1) z)^2 / sin(z)^2` (no leading 1/2).
pub fn fejer_closed(x: &BigReal, z: &BigReal, prec: u32) -> Result<BigReal> {
    let den = certified_sin(z, prec)?.square();
    let x_plus_1 = x.add(&BigReal::from_u64(1, prec));
    let num = sin(&x_plus_1.mul(z), prec)?.square();
    num.div(&den)
}

/// The source's half-scaled closed form, kept for the documented
/// discrepancy report: it disagrees with the defining double sum by a
/// factor of exactly 2.
pub fn fejer_closed_paper_half(x: &BigReal, z: &BigReal, prec: u32) -> Result<BigReal> {
    Ok(fejer_closed(x, z, prec)?.mul_pow2(-1))
}

/// Summation-form Fejer kernel: the nested sum evaluated incrementally as a
/// running sum of Dirichlet values.
pub fn fejer_sum(x: u64, z: &BigReal, prec: u32) -> Result<BigReal> {
    if x > MAX_SUM_X {
        return Err(Error::Domain(format!(
            "summation oracle capped at x <= 10^5, got {x}"
        )));
    }
    let two_z = z.mul_pow2(1);
    let mut dirichlet = BigReal::from_u64(1, prec); // D_0
    let mut acc = dirichlet.clone();
    for n in 1..=x {
        let c = cos(&two_z.mul_u64(n), prec)?;
        dirichlet = dirichlet.add(&c.mul_pow2(1));
        acc = acc.add(&dirichlet);
    }
    Ok(acc)
}

/// Evaluate one kernel pair at an integer `x`.
pub fn sample_pair(
    fejer: bool,
    x: u64,
    z: &BigReal,
    prec: u32,
) -> Result<(BigReal, BigReal, BigReal)> {
    let xr = BigReal::from_u64(x, prec);
    let (closed, summed) = if fejer {
        (fejer_closed(&xr, z, prec)?, fejer_sum(x, z, prec)?)
    } else {
        (dirichlet_closed(&xr, z, prec)?, dirichlet_sum(x, z, prec)?)
    };
    let dev = closed.sub(&summed).abs();
    Ok((closed, summed, dev))
}

/// Evaluate one grid point: the closed form always, and the summation
/// oracle whenever `x` is a nonnegative integer in range.
pub fn evaluate_sample(fejer: bool, x: f64, z: f64, prec: u32) -> Result<KernelSample> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain("x must be a finite nonnegative real".into()));
    }
    let zr = BigReal::from_f64(z, prec)?;
    if x.fract() == 0.0 && x <= MAX_SUM_X as f64 {
        let (closed, summed, dev) = sample_pair(fejer, x as u64, &zr, prec)?;
        return Ok(KernelSample {
            x,
            z,
            closed,
            summed: Some(summed),
            deviation: Some(dev),
        });
    }
    let xr = BigReal::from_f64(x, prec)?;
    let closed = if fejer {
        fejer_closed(&xr, &zr, prec)?
    } else {
        dirichlet_closed(&xr, &zr, prec)?
    };
    Ok(KernelSample {
        x,
        z,
        closed,
        summed: None,
        deviation: None,
    })
}

/// Result of a growth-bound scan.
#[derive(Clone, Debug)]
pub struct GrowthScan {
    pub points: usize,
    /// Grid points where `|D_x| <= 2x+1` could not be certified.
    pub dirichlet_violations: usize,
    /// Grid points where `|F_x| <= (x+1)^2` could not be certified.
    pub fejer_violations: usize,
    /// Points rejected as too close to a pi multiple.
    pub singular_points: usize,
}

/// Verify `|D_x(z)| <= 2x+1` and `|F_x(z)| <= (x+1)^2` over a grid.
pub fn kernel_growth_scan(x: u64, z_grid: &[BigReal], prec: u32) -> Result<GrowthScan> {
    let xr = BigReal::from_u64(x, prec);
    let d_bound = BigReal::from_u64(2 * x + 1, prec);
    let f_bound = BigReal::from_u64((x + 1) * (x + 1), prec);
    let mut scan = GrowthScan {
        points: 0,
        dirichlet_violations: 0,
        fejer_violations: 0,
        singular_points: 0,
    };
    for z in z_grid {
        let d = match dirichlet_closed(&xr, z, prec) {
            Ok(v) => v,
            Err(Error::NearSingularity { .. }) => {
                scan.singular_points += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let f = fejer_closed(&xr, z, prec)?;
        scan.points += 1;
        // a violation is a certified exceedance; the bound itself is attained
        // only in the z -> 0 limit (and identically at x = 0)
        if d.abs().cmp_certified(&d_bound) == Some(Ordering::Greater) {
            scan.dirichlet_violations += 1;
        }
        if f.abs().cmp_certified(&f_bound) == Some(Ordering::Greater) {
            scan.fejer_violations += 1;
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpreal::Magnitude;
    use num_bigint::BigInt;

    const PREC: u32 = 192;

    fn real(x: f64) -> BigReal {
        BigReal::from_f64(x, PREC).unwrap()
    }

    fn ratio(p: i64, q: i64) -> BigReal {
        BigReal::from_ratio(&BigInt::from(p), &BigInt::from(q), PREC).unwrap()
    }

    #[test]
    fn dirichlet_x0_is_one() {
        let one = BigReal::from_u64(1, PREC);
        for z in [0.3, 0.7, 1.9, 3.0] {
            let v = dirichlet_closed(&BigReal::zero(PREC), &real(z), PREC).unwrap();
            let d = v.sub(&one);
            assert!(d.mag_stored() <= d.err());
        }
    }

    #[test]
    fn dirichlet_seven_term_sum() {
        // x = 3, z = 0.7: closed and summed both equal -1.5250320382...
        let (closed, summed, dev) = sample_pair(false, 3, &ratio(7, 10), PREC).unwrap();
        assert_eq!(&closed.to_decimal_string(12), "-1.525032038218");
        assert!(dev.mag_stored() <= closed.err().add(&summed.err()));
    }

    #[test]
    fn fejer_three_term_sum() {
        // x = 2, z = 0.5: value 4.3289155503...
        let (closed, summed, dev) = sample_pair(true, 2, &ratio(1, 2), PREC).unwrap();
        assert_eq!(&closed.to_decimal_string(10), "4.3289155504");
        assert_eq!(&summed.to_decimal_string(10), "4.3289155504");
        assert!(dev.mag_stored() <= closed.err().add(&summed.err()));
    }

    #[test]
    fn dirichlet_at_quarter_pi() {
        // x = 1, z = pi/4 (certified pi): 1 + 2 cos(pi/2) = 1
        let pi = crate::mpreal::functions::pi_cached(PREC + 32);
        let z = pi.mul_pow2(-2);
        let v = dirichlet_sum(1, &z, PREC).unwrap();
        let one = BigReal::from_u64(1, PREC);
        let d = v.sub(&one);
        assert!(d.mag_stored() <= d.err());
    }

    #[test]
    fn evaluate_sample_integer_vs_real_x() {
        let s = evaluate_sample(false, 3.0, 0.7, PREC).unwrap();
        assert!(s.summed.is_some());
        assert!(s.deviation.unwrap().mag_stored() <= s.closed.err().mul_pow2(2));
        let c = evaluate_sample(false, 2.5, 0.7, PREC).unwrap();
        assert!(c.summed.is_none());
    }

    #[test]
    fn fejer_x0_is_one() {
        let (closed, summed, _) = sample_pair(true, 0, &real(1.0), PREC).unwrap();
        let one = BigReal::from_u64(1, PREC);
        assert!(closed.sub(&one).mag_upper() < Magnitude::pow2(-150));
        assert!(summed.sub(&one).mag_upper() < Magnitude::pow2(-150));
    }

    #[test]
    fn paper_half_differs_by_factor_two() {
        let x = BigReal::from_u64(4, PREC);
        let z = real(0.9);
        let full = fejer_closed(&x, &z, PREC).unwrap();
        let half = fejer_closed_paper_half(&x, &z, PREC).unwrap();
        let back = half.mul_pow2(1);
        assert_eq!(full.cmp_stored(&back), Ordering::Equal);
    }

    #[test]
    fn near_singularity_rejected() {
        // z extremely close to pi
        let pi_approx = crate::mpreal::functions::pi_cached(PREC + 64);
        let z = pi_approx.add(&BigReal::from_ratio(
            &BigInt::from(1),
            &(BigInt::from(1) << 150),
            PREC + 64,
        ).unwrap());
        let x = BigReal::from_u64(3, PREC);
        match dirichlet_closed(&x, &z, PREC) {
            Err(Error::NearSingularity { .. }) => {}
            other => panic!("expected near-singularity rejection, got {other:?}"),
        }
    }

    #[test]
    fn growth_scan_small_grid() {
        let grid: Vec<BigReal> = (1..=40).map(|i| real(0.1 + 0.07 * i as f64)).collect();
        let scan = kernel_growth_scan(10, &grid, PREC).unwrap();
        assert_eq!(scan.dirichlet_violations, 0);
        assert_eq!(scan.fejer_violations, 0);
        assert_eq!(scan.points + scan.singular_points, 40);
    }

    #[test]
    fn summation_cap_enforced() {
        let z = real(0.3);
        assert!(dirichlet_sum(100_001, &z, PREC).is_err());
    }
}
