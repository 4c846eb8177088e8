//! Constant generators with certified error bounds.
//!
//! Every supported constant has two independent generation algorithms so the
//! test suite can cross-validate them: `gen_constant` is the primary route
//! and `gen_constant_crosscheck` takes a structurally different path to the
//! same number.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use super::bigreal::BigReal;
use super::functions::{pi_euler, pi_machin};
use super::magnitude::Magnitude;
use crate::error::{Error, Result};

/// Identifier of a generatable constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantId {
    Pi,
    /// `pi^k`, `1 <= k <= 64`.
    PiPow(u32),
    /// Apery's constant `zeta(3)`.
    Zeta3,
    /// Champernowne constant in base `b >= 2` (concatenation of 1, 2, 3, ...).
    Champernowne(u32),
    /// Liouville's number `sum b^(-n!)` in base `b >= 2`.
    Liouville(u32),
    /// Exact rational `p/q`.
    RationalFixture(BigInt, BigInt),
}

impl ConstantId {
    pub fn is_rational(&self) -> bool {
        matches!(self, ConstantId::RationalFixture(_, _))
    }

    pub fn as_rational(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            ConstantId::RationalFixture(p, q) => Some((p, q)),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ConstantId::PiPow(k) if *k < 1 || *k > 64 => Err(Error::ExponentOutOfRange(*k)),
            ConstantId::Champernowne(b) | ConstantId::Liouville(b) if *b < 2 => {
                Err(Error::InvalidBase(*b))
            }
            ConstantId::RationalFixture(_, q) if q.is_zero() => Err(Error::ZeroDenominator),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantId::Pi => write!(f, "pi"),
            ConstantId::PiPow(k) => write!(f, "pi^{k}"),
            ConstantId::Zeta3 => write!(f, "zeta3"),
            ConstantId::Champernowne(b) => write!(f, "champernowne:{b}"),
            ConstantId::Liouville(b) => write!(f, "liouville:{b}"),
            ConstantId::RationalFixture(p, q) => write!(f, "{p}/{q}"),
        }
    }
}

impl FromStr for ConstantId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConstantId> {
        let s = s.trim();
        match s {
            "pi" => return Ok(ConstantId::Pi),
            "pi^2" | "pi2" => return Ok(ConstantId::PiPow(2)),
            "pi^3" | "pi3" => return Ok(ConstantId::PiPow(3)),
            "zeta3" | "zeta(3)" => return Ok(ConstantId::Zeta3),
            "champernowne" => return Ok(ConstantId::Champernowne(10)),
            "liouville" => return Ok(ConstantId::Liouville(10)),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("pi^") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Domain(format!("bad exponent in {s:?}")))?;
            let id = ConstantId::PiPow(k);
            id.validate()?;
            return Ok(id);
        }
        if let Some(b) = s.strip_prefix("champernowne:") {
            let b: u32 = b
                .parse()
                .map_err(|_| Error::Domain(format!("bad base in {s:?}")))?;
            let id = ConstantId::Champernowne(b);
            id.validate()?;
            return Ok(id);
        }
        if let Some(b) = s.strip_prefix("liouville:") {
            let b: u32 = b
                .parse()
                .map_err(|_| Error::Domain(format!("bad base in {s:?}")))?;
            let id = ConstantId::Liouville(b);
            id.validate()?;
            return Ok(id);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
            let id = ConstantId::RationalFixture(p, q);
            id.validate()?;
            return Ok(id);
        }
        Err(Error::Domain(format!("unknown constant {s:?}")))
    }
}

/// Generate `id` with `err_abs <= 2^(8 - precision_bits)`.
pub fn gen_constant(id: &ConstantId, precision_bits: u32) -> Result<BigReal> {
    if precision_bits < BigReal::MIN_PREC {
        return Err(Error::UnsupportedPrecision(precision_bits));
    }
    id.validate()?;
    let v = match id {
        ConstantId::Pi => pi_machin(precision_bits),
        ConstantId::PiPow(k) => pi_pow(*k, precision_bits, pi_machin),
        ConstantId::Zeta3 => zeta3_series(precision_bits),
        ConstantId::Champernowne(b) => champernowne_concat(*b, precision_bits)?,
        ConstantId::Liouville(b) => liouville_partial_sums(*b, precision_bits)?,
        ConstantId::RationalFixture(p, q) => rational_fixture(p, q, precision_bits)?,
    };
    debug_assert!(
        v.err() <= Magnitude::pow2(8 - precision_bits as i64),
        "generator error contract violated for {id}"
    );
    Ok(v)
}

/// Independent second-algorithm generator for cross-oracle tests. Same
/// contract as [`gen_constant`].
pub fn gen_constant_crosscheck(id: &ConstantId, precision_bits: u32) -> Result<BigReal> {
    if precision_bits < BigReal::MIN_PREC {
        return Err(Error::UnsupportedPrecision(precision_bits));
    }
    id.validate()?;
    Ok(match id {
        ConstantId::Pi => pi_euler(precision_bits),
        ConstantId::PiPow(k) => pi_pow(*k, precision_bits, pi_euler),
        ConstantId::Zeta3 => zeta3_apery_recurrence(precision_bits),
        ConstantId::Champernowne(b) => champernowne_positional(*b, precision_bits)?,
        ConstantId::Liouville(b) => liouville_term_sum(*b, precision_bits)?,
        ConstantId::RationalFixture(p, q) => {
            // reciprocal-then-multiply route
            let work = working_prec_for_ratio(p, q, precision_bits);
            let recip = BigReal::from_u64(1, work).div(&BigReal::from_bigint(q, work))?;
            recip.mul_bigint(p)
        }
    })
}

fn working_prec_for_ratio(p: &BigInt, q: &BigInt, prec: u32) -> u32 {
    let mag_bits = (p.bits() as i64 - q.bits() as i64).max(0) as u32;
    prec + mag_bits + 16
}

fn rational_fixture(p: &BigInt, q: &BigInt, prec: u32) -> Result<BigReal> {
    BigReal::from_ratio(p, q, working_prec_for_ratio(p, q, prec))
}

fn pi_pow(k: u32, prec: u32, pi_gen: fn(u32) -> BigReal) -> BigReal {
    // log2(pi) < 1.652, so pi^k needs about 2k extra bits of headroom
    let work = prec + 2 * k + 32;
    pi_gen(work).powi(k)
}

/// Apery's alternating central-binomial series
/// `zeta(3) = (5/2) sum_{n>=1} (-1)^(n-1) / (n^3 C(2n,n))`.
/// Terms decrease strictly, so the truncation error is below the first
/// omitted term.
fn zeta3_series(prec: u32) -> BigReal {
    let s = (prec + 32) as u64;
    let scale: BigUint = BigUint::one() << s;
    let mut binom = BigUint::from(2u32); // C(2n, n) at n = 1
    let mut acc = BigInt::zero();
    let mut n: u64 = 1;
    let mut terms: u64 = 0;
    loop {
        let den = BigUint::from(n * n * n) * &binom;
        let term = &scale / &den;
        if term.is_zero() {
            break;
        }
        if n % 2 == 1 {
            acc += BigInt::from(term);
        } else {
            acc -= BigInt::from(term);
        }
        // C(2(n+1), n+1) = C(2n, n) * 2 (2n+1) / (n+1)
        binom = binom * BigUint::from(2 * (2 * n + 1)) / BigUint::from(n + 1);
        n += 1;
        terms += 1;
    }
    // 5/2 * acc * 2^-s; per-term floor error < 1 unit, tail < 1 unit
    let sum = BigReal::from_parts(acc * 5i32, -(s as i64) - 1, prec + 16, Magnitude::ZERO);
    let err = Magnitude::from_u128(3 * (terms as u128 + 2), -(s as i64));
    sum.add_err(&err)
}

/// Cross-check for `zeta(3)`: Apery's integer recurrence
/// `n^3 u_n = (34n^3 - 51n^2 + 27n - 5) u_{n-1} - (n-1)^3 u_{n-2}`
/// applied to the seed pairs `(a, b)`; `a_n / b_n -> zeta(3)` with
/// quadratically shrinking steps. The stopping certificate is the observed
/// geometric decay of consecutive deltas (asserted at ratio <= 1/16 per
/// step, far above the true asymptotic rate).
fn zeta3_apery_recurrence(prec: u32) -> BigReal {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (prec as u64 + 16));
    let mut a_prev = BigRational::zero();
    let mut b_prev = BigRational::one();
    let mut a = BigRational::new(BigInt::from(6), BigInt::one());
    let mut b = BigRational::new(BigInt::from(5), BigInt::one());
    let mut x_prev = &a / &b;
    let mut n: i64 = 2;
    let mut last_delta: Option<BigRational> = None;
    loop {
        let c = BigRational::from_integer(BigInt::from(34 * n * n * n - 51 * n * n + 27 * n - 5));
        let lead = BigRational::from_integer(BigInt::from(n * n * n));
        let tail = BigRational::from_integer(BigInt::from((n - 1) * (n - 1) * (n - 1)));
        let a_next = (&c * &a - &tail * &a_prev) / &lead;
        let b_next = (&c * &b - &tail * &b_prev) / &lead;
        a_prev = a;
        b_prev = b;
        a = a_next;
        b = b_next;
        let x = &a / &b;
        let delta = (&x - &x_prev).abs();
        if let Some(prev) = &last_delta {
            assert!(
                &delta * BigRational::from_integer(BigInt::from(16)) <= *prev,
                "Apery recurrence deltas stopped contracting"
            );
        }
        if delta < tol && n > 3 {
            // tail <= delta * (1/16) / (1 - 1/16) < delta / 8
            let err_tail = Magnitude::from_ratio(
                &(delta.numer().magnitude() + BigUint::one()),
                &(delta.denom().magnitude() << 3),
            );
            let v = BigReal::from_ratio(x.numer(), x.denom(), prec + 16)
                .expect("nonzero denominator");
            return v.add_err(&err_tail);
        }
        last_delta = Some(delta);
        x_prev = x;
        n += 1;
    }
}

/// Digits of `n` in base `b`, most significant first.
fn digits_base(mut n: u64, b: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % b as u64) as u32);
        n /= b as u64;
    }
    out.reverse();
    out
}

/// Champernowne constant by direct digit concatenation: take `d` base-`b`
/// digits with `b^-d` below the target error, then round the exact fraction.
fn champernowne_concat(b: u32, prec: u32) -> Result<BigReal> {
    let digits_needed = digits_for_bits(b, prec as u64 + 9);
    let big_b = BigInt::from(b);
    // chunked accumulation: acc = acc * b^len(chunk) + chunk
    let mut acc = BigInt::zero();
    let mut count: u64 = 0;
    let mut n: u64 = 1;
    while count < digits_needed {
        let ds = digits_base(n, b);
        let mut chunk = BigInt::zero();
        for d in &ds {
            chunk = chunk * &big_b + BigInt::from(*d);
        }
        acc = acc * big_b.pow(ds.len() as u32) + chunk;
        count += ds.len() as u64;
        n += 1;
    }
    // drop any overshoot so the truncation bound is exactly b^-digits_needed
    let overshoot = count - digits_needed;
    if overshoot > 0 {
        acc /= big_b.pow(overshoot as u32);
        count = digits_needed;
    }
    let den = big_b.pow(count as u32);
    let trunc = Magnitude::from_ratio(&BigUint::one(), den.magnitude());
    Ok(BigReal::from_ratio(&acc, &den, prec + 16)?.add_err(&trunc))
}

/// Cross-check: positional formula. The last digit of `n` sits at position
/// `d(n) = sum_{j<L} (b-1) j b^(j-1) + L (n - b^(L-1) + 1)` where `L` is the
/// digit count of `n`, so the constant equals `sum n b^(-d(n))`.
fn champernowne_positional(b: u32, prec: u32) -> Result<BigReal> {
    // extra digits so the truncation lands past the last whole integer
    let digits_needed = digits_for_bits(b, prec as u64 + 9) + 64;
    let bb = b as u64;
    let pos_of = |n: u64| -> u64 {
        let ds = digits_base(n, b);
        let l = ds.len() as u64;
        let mut total: u64 = 0;
        let mut p: u64 = 1; // b^(j-1)
        for j in 1..l {
            total += (bb - 1) * j * p;
            p *= bb;
        }
        total + l * (n - p + 1)
    };
    let mut acc = BigInt::zero();
    let mut n: u64 = 1;
    let last_n = loop {
        if pos_of(n) > digits_needed {
            break n - 1;
        }
        n += 1;
    };
    let d_last = pos_of(last_n);
    let big_b = BigInt::from(b);
    for m in 1..=last_n {
        acc += BigInt::from(m) * big_b.pow((d_last - pos_of(m)) as u32);
    }
    let den = big_b.pow(d_last as u32);
    // the tail starts with the digits of last_n + 1, all below b^-d_last
    let trunc = Magnitude::from_ratio(&BigUint::one(), den.magnitude());
    Ok(BigReal::from_ratio(&acc, &den, prec + 16)?.add_err(&trunc))
}

/// Number of base-`b` digits needed to push the truncation below `2^-bits`.
fn digits_for_bits(b: u32, bits: u64) -> u64 {
    let log2b = (b as f64).log2();
    (bits as f64 / log2b).ceil() as u64 + 1
}

/// Factorials `n!` not exceeding `limit`.
fn factorials_up_to(limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut f: u64 = 1;
    let mut n: u64 = 2;
    while let Some(next) = f.checked_mul(n) {
        if next > limit {
            break;
        }
        out.push(next);
        f = next;
        n += 1;
    }
    out
}

/// Liouville's number as one exact partial sum `sum_{n<=N} b^(-n!)` with the
/// tail bounded by `2 b^(-(N+1)!)`.
fn liouville_partial_sums(b: u32, prec: u32) -> Result<BigReal> {
    let bits_needed = prec as u64 + 9;
    let log2b = (b as f64).log2();
    let digit_target = (bits_needed as f64 / log2b).ceil() as u64 + 1;
    let facts = factorials_up_to(digit_target);
    let cutoff = *facts.last().unwrap();
    // next factorial beyond the cutoff bounds the tail
    let next_fact = cutoff * (facts.len() as u64 + 1);
    let big_b = BigInt::from(b);
    let mut num = BigInt::zero();
    for f in &facts {
        num += big_b.pow((cutoff - f) as u32);
    }
    let den = big_b.pow(cutoff as u32);
    let tail = Magnitude::from_ratio(&BigUint::from(2u32), big_b.pow(next_fact as u32).magnitude());
    Ok(BigReal::from_ratio(&num, &den, prec + 16)?.add_err(&tail))
}

/// Cross-check: sum the terms `b^(-n!)` as individually rounded dyadic
/// values instead of one exact fraction.
fn liouville_term_sum(b: u32, prec: u32) -> Result<BigReal> {
    let bits_needed = prec as u64 + 9;
    let log2b = (b as f64).log2();
    let digit_target = (bits_needed as f64 / log2b).ceil() as u64 + 1;
    let facts = factorials_up_to(digit_target);
    let next_fact = facts.last().unwrap() * (facts.len() as u64 + 1);
    let big_b = BigInt::from(b);
    let mut sum = BigReal::zero(prec + 16);
    for f in &facts {
        let term = BigReal::from_ratio(&BigInt::one(), &big_b.pow(*f as u32), prec + 32)?;
        sum = sum.add(&term);
    }
    let tail = Magnitude::from_ratio(&BigUint::from(2u32), big_b.pow(next_fact as u32).magnitude());
    Ok(sum.add_err(&tail))
}

/// Gauss-Legendre AGM iteration for pi. There is no a-priori error bound
/// here: the returned value reports only the accumulated arithmetic error of
/// the final iterate, and the caller is expected to certify it externally
/// (the test suite wraps it in `stabilize`). Kept as a third, structurally
/// unrelated pi oracle.
pub fn pi_agm_raw(prec: u32) -> Result<BigReal> {
    let work = prec + 64;
    let one = BigReal::from_u64(1, work);
    let half = one.mul_pow2(-1);
    let mut a = one.clone();
    let mut bv = half.sqrt()?; // 1/sqrt(2)
    let mut t = one.mul_pow2(-2);
    let mut x: u64 = 1;
    let threshold = Magnitude::pow2(-(prec as i64) - 8);
    loop {
        let a_next = a.add(&bv).mul_pow2(-1);
        let b_next = a.mul(&bv).sqrt()?;
        let d = a.sub(&a_next);
        t = t.sub(&d.square().mul_u64(x));
        x *= 2;
        let gap = a_next.sub(&b_next).mag_upper();
        a = a_next;
        bv = b_next;
        if gap < threshold {
            break;
        }
    }
    let num = a.add(&bv).square();
    let den = t.mul_pow2(2);
    num.div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA3_60: &str = "1.202056903159594285399738161511449990764986292340498881792271";

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["pi", "pi^2", "pi^7", "zeta3", "champernowne:10", "liouville:2", "227/23"] {
            let id: ConstantId = s.parse().unwrap();
            let back = id.to_string();
            let again: ConstantId = back.parse().unwrap();
            assert_eq!(id, again);
        }
        assert!("pi^0".parse::<ConstantId>().is_err());
        assert!("pi^65".parse::<ConstantId>().is_err());
        assert!("champernowne:1".parse::<ConstantId>().is_err());
        assert!("5/0".parse::<ConstantId>().is_err());
        assert!("nope".parse::<ConstantId>().is_err());
    }

    #[test]
    fn precision_floor_enforced() {
        assert!(matches!(
            gen_constant(&ConstantId::Pi, 32),
            Err(Error::UnsupportedPrecision(32))
        ));
    }

    #[test]
    fn zeta3_series_matches_reference_digits() {
        let v = gen_constant(&ConstantId::Zeta3, 256).unwrap();
        let s = v.to_decimal_string(60);
        assert_eq!(&s[..55], &ZETA3_60[..55]);
    }

    #[test]
    fn zeta3_recurrence_agrees_with_series() {
        let a = gen_constant(&ConstantId::Zeta3, 192).unwrap();
        let b = gen_constant_crosscheck(&ConstantId::Zeta3, 192).unwrap();
        let d = a.sub(&b);
        assert!(d.mag_stored() <= a.err().add(&b.err()));
    }

    #[test]
    fn rational_fixture_is_exact_to_ulp() {
        let id = ConstantId::RationalFixture(BigInt::from(227), BigInt::from(23));
        let v = gen_constant(&id, 64).unwrap();
        assert_eq!(&v.to_decimal_string(9)[..11], "9.869565217");
    }

    #[test]
    fn liouville_digit_pattern() {
        // 0.110001000000000000000001... in base 10
        let v = gen_constant(&ConstantId::Liouville(10), 256).unwrap();
        let s = v.to_decimal_string(24);
        assert_eq!(s, "0.110001000000000000000001");
        let w = gen_constant_crosscheck(&ConstantId::Liouville(10), 256).unwrap();
        let d = v.sub(&w);
        assert!(d.mag_stored() <= v.err().add(&w.err()));
    }

    #[test]
    fn champernowne_digit_prefix() {
        let v = gen_constant(&ConstantId::Champernowne(10), 192).unwrap();
        let s = v.to_decimal_string(30);
        assert_eq!(s, "0.123456789101112131415161718192");
        let w = gen_constant_crosscheck(&ConstantId::Champernowne(10), 192).unwrap();
        let d = v.sub(&w);
        assert!(d.mag_stored() <= v.err().add(&w.err()));
    }

    #[test]
    fn pi_pow_rejects_large_exponent() {
        assert!(gen_constant(&ConstantId::PiPow(65), 128).is_err());
        // pi^64 is inside the supported range
        let v = gen_constant(&ConstantId::PiPow(64), 128).unwrap();
        assert!(v.err() <= Magnitude::pow2(8 - 128));
    }

    #[test]
    fn pi_pow_squares_correctly() {
        let v = gen_constant(&ConstantId::PiPow(2), 192).unwrap();
        assert_eq!(&v.to_decimal_string(30)[..31], "9.86960440108935861883449099987");
    }

    #[test]
    fn agm_pi_close_to_machin() {
        let a = pi_agm_raw(256).unwrap();
        let p = pi_machin(256);
        let d = a.sub(&p).mag_stored();
        assert!(d < Magnitude::pow2(-250));
    }
}
