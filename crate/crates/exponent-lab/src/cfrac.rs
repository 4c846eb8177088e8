//! Continued-fraction expansion with a certified prefix, exact convergents,
//! and the classical identities they satisfy.
//!
//! Certification: the set of reals whose expansion starts with a given block
//! of partial quotients is an interval, so when the exact expansions of
//! `value - err` and `value + err` share a prefix, that prefix is the true
//! expansion of every number in between. The expansion is run at two
//! precisions (P and 2P) and only the agreeing prefix is kept, doubling P
//! until the certified prefix is long enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::mpreal::{gen_constant, BigReal, ConstantId, PrecisionLimits};

/// Partial quotients `[a0; a1, a2, ...]` with a certified prefix length.
#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    a: Vec<BigInt>,
    verified_len: usize,
    terminated: bool,
}

impl ContinuedFraction {
    pub fn partial_quotients(&self) -> &[BigInt] {
        &self.a
    }

    pub fn verified_len(&self) -> usize {
        self.verified_len
    }

    /// True when the expansion is the complete (rational) one.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// Construct from explicit partial quotients (used by tests and by the
    /// rational path); `a_i >= 1` is required for `i >= 1`.
    pub fn from_quotients(a: Vec<BigInt>, terminated: bool) -> Result<ContinuedFraction> {
        for (i, q) in a.iter().enumerate() {
            if i >= 1 && q < &BigInt::one() {
                return Err(Error::Domain(format!(
                    "partial quotient a_{i} = {q} is invalid (must be >= 1)"
                )));
            }
        }
        let verified_len = a.len();
        Ok(ContinuedFraction {
            a,
            verified_len,
            terminated,
        })
    }
}

/// Exact convergent `p/q` with its 0-based index; the golden tables print
/// the same row as `n = index + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn table_row(&self) -> usize {
        self.n + 1
    }
}

/// Canonical-form Euclid expansion of `num/den`; the final quotient of a
/// multi-term expansion is always >= 2.
fn euclid_cf(num: &BigInt, den: &BigInt, max_terms: usize) -> (Vec<BigInt>, bool) {
    let mut a = Vec::new();
    let (mut p, mut q) = if den.is_negative() {
        (-num.clone(), -den.clone())
    } else {
        (num.clone(), den.clone())
    };
    while !q.is_zero() && a.len() < max_terms {
        let (fl, r) = p.div_mod_floor(&q);
        a.push(fl);
        p = q;
        q = r;
    }
    let terminated = q.is_zero();
    (canonicalize(a), terminated)
}

/// Canonicalize a terminating expansion: `[..., a, 1] -> [..., a+1]`.
pub fn canonicalize(mut a: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() >= 2 && a.last().map(BigInt::is_one) == Some(true) {
        a.pop();
        *a.last_mut().unwrap() += 1;
    }
    a
}

fn common_prefix_len(a: &[BigInt], b: &[BigInt]) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// Certified prefix at one precision: expand both interval endpoints exactly
/// and keep the shared prefix, dropping the final (possibly truncated) term
/// of either endpoint expansion when it terminated early.
fn certified_prefix(v: &BigReal, want: usize) -> Vec<BigInt> {
    let (lo, hi) = v.to_rational_endpoints();
    let budget = want + 2;
    let (cf_lo, term_lo) = euclid_cf(lo.numer(), lo.denom(), budget);
    let (cf_hi, term_hi) = euclid_cf(hi.numer(), hi.denom(), budget);
    let mut n = common_prefix_len(&cf_lo, &cf_hi);
    // a terminating endpoint expansion certifies nothing at its last term
    if term_lo && n == cf_lo.len() && n > 0 {
        n -= 1;
    }
    if term_hi && n == cf_hi.len() && n > 0 {
        n -= 1;
    }
    cf_lo[..n].to_vec()
}

/// Expand `alpha` to at least `n_terms` certified partial quotients.
///
/// Rational fixtures expand exactly and terminate early when shorter than
/// `n_terms`; irrational constants go through the interval-certified
/// precision ladder.
pub fn expand(
    alpha: &ConstantId,
    n_terms: usize,
    limits: &PrecisionLimits,
) -> Result<ContinuedFraction> {
    if n_terms == 0 {
        return Err(Error::Domain("n_terms must be positive".into()));
    }
    if n_terms > 10_000 {
        return Err(Error::Domain(format!(
            "n_terms = {n_terms} exceeds the supported maximum of 10^4"
        )));
    }
    if let Some((p, q)) = alpha.as_rational() {
        let (a, terminated) = euclid_cf(p, q, n_terms + 2);
        debug_assert!(terminated || a.len() >= n_terms);
        return ContinuedFraction::from_quotients(a, terminated);
    }
    let mut prec: u32 = (128 + 8 * n_terms as u64).min(u32::MAX as u64) as u32;
    loop {
        limits.check_bits(prec as u64, "continued-fraction expansion")?;
        let v1 = gen_constant(alpha, prec)?;
        let v2 = gen_constant(alpha, prec * 2)?;
        let p1 = certified_prefix(&v1, n_terms);
        let p2 = certified_prefix(&v2, n_terms);
        let n = common_prefix_len(&p1, &p2);
        if p1[..n] != p2[..n] {
            return Err(Error::Internal(
                "certified prefixes disagree across precisions".into(),
            ));
        }
        if n >= n_terms {
            return ContinuedFraction::from_quotients(p1[..n].to_vec(), false);
        }
        prec = prec.saturating_mul(2);
    }
}

/// First `n_max` convergents by the exact integer recursion
/// `p_n = a_n p_{n-1} + p_{n-2}`, `q_n = a_n q_{n-1} + q_{n-2}` with seeds
/// `p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0`.
pub fn convergents(cf: &ContinuedFraction, n_max: usize) -> Result<Vec<Convergent>> {
    if n_max > cf.verified_len {
        return Err(Error::PrefixTooShort {
            requested: n_max,
            verified: cf.verified_len,
        });
    }
    let mut out = Vec::with_capacity(n_max);
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    for (i, a) in cf.a.iter().take(n_max).enumerate() {
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        debug_assert!(p.gcd(&q).is_one(), "convergent {i} not in lowest terms");
        out.push(Convergent {
            n: i,
            p: p.clone(),
            q: q.clone(),
        });
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    Ok(out)
}

/// Exact determinant identity `p_n q_{n-1} - p_{n-1} q_n = (-1)^(n-1)` over
/// every consecutive pair; vacuously true for fewer than two convergents.
pub fn check_determinant(cs: &[Convergent]) -> bool {
    cs.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        if b.n != a.n + 1 {
            return false;
        }
        let det = &b.p * &a.q - &a.p * &b.q;
        let expect = if b.n % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        det == expect
    })
}

/// Exact alternating-sum identity
/// `p_n/q_n = a_0 + sum_{0 <= k < n} (-1)^k / (q_k q_{k+1})` for every
/// `n >= 1` within the slice.
pub fn check_alternating_sum(cs: &[Convergent], cf: &ContinuedFraction) -> bool {
    if cs.is_empty() || cs[0].n != 0 {
        return false;
    }
    let a0 = &cf.a[0];
    let mut rhs = BigRational::from_integer(a0.clone());
    for i in 1..cs.len() {
        let (prev, cur) = (&cs[i - 1], &cs[i]);
        let term = BigRational::new(BigInt::one(), &prev.q * &cur.q);
        if i % 2 == 1 {
            rhs += term;
        } else {
            rhs -= term;
        }
        let lhs = BigRational::new(cur.p.clone(), cur.q.clone());
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// One running-minimum record of the best-approximation scan.
#[derive(Clone, Debug)]
pub struct BestApprox {
    pub q: u64,
    pub p: BigInt,
    /// `|alpha q - p|` with its certified error.
    pub dist: BigReal,
}

/// Brute-force best-approximation oracle: for each `q <= q_max` the nearest
/// integer `p` to `alpha q`, recording every strict new minimum of
/// `|alpha q - p|`. Errors with [`Error::UnresolvedTie`] when `alpha` is too
/// coarse to order two candidates.
pub fn best_approx_bruteforce(alpha: &BigReal, q_max: u64) -> Result<Vec<BestApprox>> {
    if q_max == 0 {
        return Err(Error::Domain("q_max must be positive".into()));
    }
    if q_max > 1_000_000 {
        return Err(Error::Domain(format!(
            "q_max = {q_max} exceeds the supported maximum of 10^6"
        )));
    }
    let mut out: Vec<BestApprox> = Vec::new();
    for q in 1..=q_max {
        let t = alpha.mul_u64(q);
        let p = t.round_to_nearest_certified()?;
        let dist = t.sub(&BigReal::from_bigint(&p, alpha.prec_bits())).abs();
        let better = match out.last() {
            None => true,
            Some(best) => match dist.cmp_certified(&best.dist) {
                Some(Ordering::Less) => true,
                Some(_) => false,
                None => {
                    // exact zero distances compare equal; anything else is
                    // an unresolved ordering
                    return Err(Error::UnresolvedTie {
                        context: format!("best-approximation scan at q = {q}"),
                    });
                }
            },
        };
        if better {
            out.push(BestApprox { q, p, dist });
        }
    }
    Ok(out)
}

/// Best-approximation scan dispatched on the constant: exact integer
/// arithmetic for rational fixtures (ties broken toward the smaller `p`),
/// precision-escalating certified arithmetic otherwise.
pub fn best_approx_bruteforce_id(
    id: &ConstantId,
    q_max: u64,
    limits: &PrecisionLimits,
) -> Result<Vec<BestApprox>> {
    if let Some((p0, q0)) = id.as_rational() {
        if q0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (p0, q0) = if q0.is_negative() {
            (-p0.clone(), -q0.clone())
        } else {
            (p0.clone(), q0.clone())
        };
        let mut out: Vec<BestApprox> = Vec::new();
        let mut best_num: Option<BigInt> = None;
        for q in 1..=q_max {
            let num = &p0 * BigInt::from(q);
            let (fl, r) = num.div_mod_floor(&q0);
            // nearest integer; an exact half goes to the smaller candidate
            let p = if (&r << 1u32) > q0 { fl + 1 } else { fl };
            let dist_num = (&num - &p * &q0).abs();
            let better = best_num.as_ref().map_or(true, |b| &dist_num < b);
            if better {
                let dist = if dist_num.is_zero() {
                    BigReal::zero(BigReal::MIN_PREC)
                } else {
                    BigReal::from_ratio(&dist_num, &q0, 128)?
                };
                best_num = Some(dist_num);
                out.push(BestApprox { q, p, dist });
            }
        }
        return Ok(out);
    }
    let mut bits: u32 = 192 + 64;
    loop {
        limits.check_bits(bits as u64, "best-approximation scan")?;
        let alpha = gen_constant(id, bits)?;
        match best_approx_bruteforce(&alpha, q_max) {
            Ok(v) => return Ok(v),
            Err(e) if e.is_precision_failure() => bits = bits.saturating_mul(2),
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> PrecisionLimits {
        PrecisionLimits::default()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn rational_expansion_terminates_canonically() {
        let id = ConstantId::RationalFixture(int(10), int(7));
        let cf = expand(&id, 10, &limits()).unwrap();
        assert!(cf.is_terminated());
        assert_eq!(cf.partial_quotients(), &[int(1), int(2), int(3)]);
        let cs = convergents(&cf, 3).unwrap();
        assert_eq!(cs.last().unwrap().p, int(10));
        assert_eq!(cs.last().unwrap().q, int(7));
    }

    #[test]
    fn negative_rational_expansion() {
        let id = ConstantId::RationalFixture(int(-10), int(7));
        let cf = expand(&id, 10, &limits()).unwrap();
        // floor-based expansion keeps a_i >= 1 for i >= 1 even when a_0 < 0
        let cs = convergents(&cf, cf.verified_len()).unwrap();
        let last = cs.last().unwrap();
        assert_eq!((&last.p, &last.q), (&int(-10), &int(7)));
        assert!(check_determinant(&cs));
    }

    #[test]
    fn canonicalize_trailing_one() {
        let a = vec![int(1), int(2), int(2), int(1)];
        assert_eq!(canonicalize(a), vec![int(1), int(2), int(3)]);
    }

    #[test]
    fn single_term_convergent() {
        let cf = ContinuedFraction::from_quotients(vec![int(7)], true).unwrap();
        let cs = convergents(&cf, 1).unwrap();
        assert_eq!((&cs[0].p, &cs[0].q), (&int(7), &int(1)));
        assert!(check_determinant(&cs)); // vacuous
    }

    #[test]
    fn zero_partial_quotient_rejected() {
        let err = ContinuedFraction::from_quotients(vec![int(1), int(0)], true).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn pi_squared_prefix() {
        let cf = expand(&ConstantId::PiPow(2), 8, &limits()).unwrap();
        let expect: Vec<BigInt> = [9, 1, 6, 1, 2, 47, 1, 8].iter().map(|&v| int(v)).collect();
        assert_eq!(&cf.partial_quotients()[..8], &expect[..]);
        assert!(cf.verified_len() >= 8);
    }

    #[test]
    fn determinant_rows_from_pi_squared() {
        let cf = expand(&ConstantId::PiPow(2), 6, &limits()).unwrap();
        let cs = convergents(&cf, 6).unwrap();
        // rows 5-6 of the table: (227, 23), (10748, 1089)
        assert_eq!((&cs[4].p, &cs[4].q), (&int(227), &int(23)));
        assert_eq!((&cs[5].p, &cs[5].q), (&int(10748), &int(1089)));
        let det = &cs[5].p * &cs[4].q - &cs[4].p * &cs[5].q;
        assert_eq!(det, int(1));
        assert!(check_determinant(&cs));
        assert!(check_alternating_sum(&cs, &cf));
    }

    #[test]
    fn convergents_respect_verified_len() {
        let cf = expand(&ConstantId::PiPow(2), 5, &limits()).unwrap();
        let too_many = cf.verified_len() + 1;
        assert!(matches!(
            convergents(&cf, too_many),
            Err(Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn best_approx_hits_rational_exactly() {
        let id = ConstantId::RationalFixture(int(10), int(7));
        let recs = best_approx_bruteforce_id(&id, 7, &limits()).unwrap();
        let last = recs.last().unwrap();
        assert_eq!(last.q, 7);
        assert!(last.dist.is_stored_zero());
        assert!(last.dist.err().is_zero());
    }

    #[test]
    fn best_approx_minima_for_pi_squared() {
        let alpha = gen_constant(&ConstantId::PiPow(2), 256).unwrap();
        let recs = best_approx_bruteforce(&alpha, 30).unwrap();
        let qs: Vec<u64> = recs.iter().map(|r| r.q).collect();
        assert_eq!(qs, vec![1, 7, 8, 23]);
    }

    #[test]
    fn best_approx_minima_for_pi_cubed_small() {
        let recs = best_approx_bruteforce_id(&ConstantId::PiPow(3), 200, &limits()).unwrap();
        let qs: Vec<u64> = recs.iter().map(|r| r.q).collect();
        assert_eq!(qs, vec![1, 159]);
    }

    #[test]
    fn expansion_too_long_rejected() {
        assert!(expand(&ConstantId::Pi, 10_001, &limits()).is_err());
    }
}
