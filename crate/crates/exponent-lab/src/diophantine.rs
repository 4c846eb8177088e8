//! Per-convergent irrationality-exponent estimation and the sine inequality
//! chain of the headline theorems.
//!
//! `mu_n` solves `|alpha - p_n/q_n| = q_n^(-mu_n)`; rows with `q_n = 1` carry
//! a blank exponent exactly like the source tables. All row indices in the
//! public API are 1-based table rows (`row = internal index + 1`).

use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;

use crate::cfrac::{convergents, expand, Convergent};
use crate::error::{Error, Result};
use crate::mpreal::functions::{ln, ln_bigint, pi_cached, sin, sin_pi_times};
use crate::mpreal::stabilize::digits_to_bits;
use crate::mpreal::{gen_constant, BigReal, ConstantId, Magnitude, PrecisionLimits};

/// One row of an exponent table.
#[derive(Clone, Debug)]
pub struct MuRecord {
    /// 1-based table row.
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `ln(1/gap) / ln(q)`; `None` for `q = 1` rows and exact rational hits.
    pub mu: Option<BigReal>,
    /// `|alpha - p/q|` with certified error.
    pub gap: BigReal,
    /// Set when `alpha` is rational and `p/q` hits it exactly.
    pub exact_hit: bool,
}

impl MuRecord {
    /// Paper-style emission: exactly six decimals, half-even.
    pub fn mu_6dp(&self) -> Result<Option<String>> {
        self.mu
            .as_ref()
            .map(|m| m.round_half_even_decimal(6))
            .transpose()
    }

    /// Ceiling rendering at six decimals; the printed exponent then keeps
    /// `|alpha - p/q| >= q^(-mu)` true, which is the convention the pi^2
    /// source table follows.
    pub fn mu_6dp_ceil(&self) -> Result<Option<String>> {
        self.mu.as_ref().map(|m| m.ceil_decimal(6)).transpose()
    }
}

/// Exponent estimate for one convergent. `alpha` must be sharp enough that
/// `err(alpha) < gap / 10^8`; the result then carries at least eight correct
/// decimals of `mu`.
pub fn mu_estimate(alpha: &BigReal, c: &Convergent) -> Result<MuRecord> {
    let prec = alpha.prec_bits();
    let gap = alpha
        .mul_bigint(&c.q)
        .sub(&BigReal::from_bigint(&c.p, prec))
        .abs()
        .div(&BigReal::from_bigint(&c.q, prec))?;
    if c.q == BigInt::one() {
        return Ok(MuRecord {
            n: c.table_row(),
            p: c.p.clone(),
            q: c.q.clone(),
            mu: None,
            gap,
            exact_hit: false,
        });
    }
    let gap_lb = gap.true_lower_pow2().ok_or_else(|| {
        Error::PrecisionTooLow(format!("gap at row {} not resolved", c.table_row()))
    })?;
    // precondition: err(alpha) < gap / 10^8  (10^8 < 2^27)
    if !(alpha.err().mul_pow2(27) < Magnitude::pow2(gap_lb)) {
        return Err(Error::PrecisionTooLow(format!(
            "alpha error too coarse for row {}",
            c.table_row()
        )));
    }
    let work = (prec / 2).max(192);
    let ln_gap = ln(&gap, work)?;
    let ln_q = ln_bigint(&c.q, work)?;
    let mu = ln_gap.neg().div(&ln_q)?;
    // eight correct decimals demanded by the contract
    if !(mu.err() < Magnitude::pow10(-9)) {
        return Err(Error::PrecisionTooLow(format!(
            "mu error bound too large at row {}",
            c.table_row()
        )));
    }
    Ok(MuRecord {
        n: c.table_row(),
        p: c.p.clone(),
        q: c.q.clone(),
        mu: Some(mu),
        gap,
        exact_hit: false,
    })
}

/// Decimal digits of `q^2`, doubled, plus guard digits — the working
/// precision rule for resolving `|alpha - p/q| ~ q^-2`.
fn target_digits_for(q: &BigInt) -> u64 {
    let dec_digits_q2 = (2 * q.bits()) as f64 * std::f64::consts::LN_2 / std::f64::consts::LN_10;
    2 * (dec_digits_q2.ceil() as u64 + 1) + 20
}

/// Full exponent table for rows `1..=n_max`.
pub fn mu_table(
    alpha: &ConstantId,
    n_max: usize,
    limits: &PrecisionLimits,
) -> Result<Vec<MuRecord>> {
    mu_table_with_digits(alpha, n_max, None, limits)
}

/// As [`mu_table`], with an optional floor on the working precision in
/// decimal digits (the per-row default `2 digits(q^2) + 20` always applies
/// as a minimum).
pub fn mu_table_with_digits(
    alpha: &ConstantId,
    n_max: usize,
    digits_floor: Option<u64>,
    limits: &PrecisionLimits,
) -> Result<Vec<MuRecord>> {
    if n_max == 0 || n_max > 200 {
        return Err(Error::Domain(format!(
            "n_max = {n_max} outside the supported range 1..=200"
        )));
    }
    let cf = expand(alpha, n_max, limits)?;
    let rows = n_max.min(cf.verified_len());
    let cs = convergents(&cf, rows)?;
    let q_last = &cs.last().expect("at least one convergent").q;
    let digits = target_digits_for(q_last).max(digits_floor.unwrap_or(0));
    let bits = digits_to_bits(digits);
    limits.check_bits(bits, "mu table evaluation")?;
    let a = gen_constant(alpha, bits as u32)?;
    let rational = alpha.as_rational().map(|(p, q)| (p.clone(), q.clone()));
    let mut out = Vec::with_capacity(cs.len());
    for c in &cs {
        // exact rational hit: integer cross-multiplication decides exactly
        if let Some((rp, rq)) = &rational {
            if &c.p * rq == rp * &c.q {
                out.push(MuRecord {
                    n: c.table_row(),
                    p: c.p.clone(),
                    q: c.q.clone(),
                    mu: None,
                    gap: BigReal::zero(a.prec_bits()),
                    exact_hit: true,
                });
                continue;
            }
        }
        out.push(mu_estimate(&a, c)?);
    }
    Ok(out)
}

/// The four quantities of the proof chain at one row, all certified.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub k: u32,
    /// 1-based table row.
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `|sin(pi^(k+1) q_n)|` evaluated directly on the huge argument.
    pub sin_direct: BigReal,
    /// `|sin(pi (pi^k q_n - p_n))|` after the exact pi-multiple reduction.
    pub sin_reduced: BigReal,
    /// `|pi^k q_n - p_n|`.
    pub delta_abs: BigReal,
    /// `sin_reduced / (pi delta_abs)`, inside `[2/pi, 1]` for delta < 1/2.
    pub ratio: BigReal,
    /// Direct and reduced sines agree within their combined error bounds.
    pub reduction_consistent: bool,
    /// `delta_abs < 1/2`, the domain of the sinc sandwich; rows with a unit
    /// next denominator can fall outside it.
    pub delta_below_half: bool,
    /// Ratio certified inside `[2/pi, 1]` (meaningful when
    /// `delta_below_half`).
    pub ratio_in_bounds: bool,
}

/// Evaluate the inequality chain for `pi^k` at table row `n`.
pub fn inequality_chain(k: u32, n: usize, limits: &PrecisionLimits) -> Result<ChainReport> {
    if n == 0 {
        return Err(Error::Domain("row index is 1-based".into()));
    }
    let id = ConstantId::PiPow(k);
    let cf = expand(&id, n + 1, limits)?;
    let cs = convergents(&cf, n)?;
    let c = &cs[n - 1];
    let digits = target_digits_for(&c.q);
    let bits = digits_to_bits(digits) as u32;
    limits.check_bits(bits as u64, "inequality chain")?;

    let alpha = gen_constant(&id, bits)?;
    let delta = alpha
        .mul_bigint(&c.q)
        .sub(&BigReal::from_bigint(&c.p, bits));
    let delta_abs = delta.abs();
    let work = bits / 2 + 64;
    let sin_reduced = sin_pi_times(&delta, work)?.abs();

    // direct route: pi^(k+1) q_n fed to the generic reduction
    let pi1 = gen_constant(&ConstantId::PiPow(k + 1), bits)?;
    let sin_direct = sin(&pi1.mul_bigint(&c.q), work)?.abs();

    let diff = sin_direct.sub(&sin_reduced);
    let reduction_consistent = diff.mag_stored() <= sin_direct.err().add(&sin_reduced.err());

    let pi = pi_cached(work);
    let ratio = sin_reduced.div(&pi.mul(&delta_abs))?;
    let one = BigReal::from_u64(1, work);
    let half = one.mul_pow2(-1);
    let delta_below_half = delta_abs.cmp_certified(&half) == Some(Ordering::Less);
    let two_over_pi = BigReal::from_u64(2, work).div(&pi)?;
    let ratio_in_bounds = matches!(
        ratio.cmp_certified(&two_over_pi),
        Some(Ordering::Greater) | Some(Ordering::Equal)
    ) && matches!(
        ratio.cmp_certified(&one),
        Some(Ordering::Less) | Some(Ordering::Equal)
    );

    Ok(ChainReport {
        k,
        n,
        p: c.p.clone(),
        q: c.q.clone(),
        sin_direct,
        sin_reduced,
        delta_abs,
        ratio,
        reduction_consistent,
        delta_below_half,
        ratio_in_bounds,
    })
}
