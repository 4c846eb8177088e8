//! Lemma-level integration: parity of w_n across all rows, the sine bounds,
//! the reciprocal-sine sandwich, argmax oracles, and the exactness of the
//! symbolic reduction against direct huge-argument evaluation.

use num_bigint::BigInt;
use std::cmp::Ordering;

use exponent_lab::cfrac::{convergents, expand};
use exponent_lab::diophantine::inequality_chain;
use exponent_lab::lemma_verifier::{
    reciprocal_sine_profile, sine_argmax_bruteforce, v2, verify_lemma_705, w_n,
};
use exponent_lab::mpreal::{Magnitude, ConstantId, PrecisionLimits};
use exponent_lab::BigReal;

fn limits() -> PrecisionLimits {
    PrecisionLimits::default()
}

#[test]
fn w_parity_all_rows_all_k() {
    for k in [1u32, 2, 3] {
        let cf = expand(&ConstantId::PiPow(k), 30, &limits()).unwrap();
        let cs = convergents(&cf, 30).unwrap();
        for c in &cs {
            let (_, odd) = w_n(&c.q);
            assert!(odd, "w_n even at k={k}, row {}", c.table_row());
        }
    }
}

#[test]
fn w_parity_exhaustive_small_integers() {
    // parity is a theorem for every positive integer, not only denominators
    for q in 1i64..=4096 {
        let (_, odd) = w_n(&BigInt::from(q));
        assert!(odd, "w_n even at q = {q}");
        let v = v2(&BigInt::from(q));
        assert_eq!(1i64 << v, q & -q, "v2 mismatch at q = {q}");
    }
}

#[test]
fn lemma_705_bounds_all_k_rows_one_to_twelve() {
    let one = BigReal::from_u64(1, 64);
    for k in [1u32, 2, 3] {
        for n in 1..=12 {
            let rep = verify_lemma_705(k, n, &limits()).unwrap();
            assert!(rep.w_odd);
            assert!(rep.s_minus_exact);
            let dev = rep.s_minus_numeric.sub(&one).mag_upper();
            assert!(
                dev < Magnitude::pow2(-60),
                "numeric s_minus off at k={k} n={n}"
            );
            assert!(rep.plus_equals_cos, "item (ii) failed at k={k} n={n}");
            if rep.q >= BigInt::from(3) {
                assert_eq!(rep.bound_ok, Some(true), "item (iii) failed at k={k} n={n}");
            } else {
                assert!(rep.degenerate);
                assert_eq!(rep.bound_ok, None);
            }
            // s_star is recorded and lies in [0, 1]
            assert!(rep.s_star.cmp_certified(&one) != Some(Ordering::Greater));
        }
    }
}

#[test]
fn reciprocal_sine_sandwich_thirty_rows() {
    for k in [1u32, 2, 3] {
        let rows = reciprocal_sine_profile(k, 30, &limits()).unwrap();
        assert_eq!(rows.len(), 30);
        for row in &rows {
            if row.n >= 2 {
                assert_eq!(
                    row.sandwich_ok,
                    Some(true),
                    "sandwich failed at k={k} n={}",
                    row.n
                );
            }
        }
    }
}

#[test]
fn argmax_confirms_denominators() {
    // maxima of 1/|sin(pi^(k+1) z)| land on convergent denominators of pi^k
    assert_eq!(sine_argmax_bruteforce(2, 30, &limits()).unwrap(), 23);
    assert_eq!(sine_argmax_bruteforce(2, 1100, &limits()).unwrap(), 1089);
    assert_eq!(sine_argmax_bruteforce(3, 200, &limits()).unwrap(), 159);
    assert_eq!(sine_argmax_bruteforce(1, 110, &limits()).unwrap(), 106);
    // scanning a little past q_n always lands on some convergent denominator
    // (possibly the next one, once the scan range reaches it)
    for k in [1u32, 2, 3] {
        let cf = expand(&ConstantId::PiPow(k), 10, &limits()).unwrap();
        let cs = convergents(&cf, 10).unwrap();
        let denom_set: Vec<u64> = cs
            .iter()
            .filter_map(|c| u64::try_from(&c.q).ok())
            .collect();
        for &q in denom_set.iter().take(6).filter(|&&q| q > 1 && q <= 100_000) {
            let got = sine_argmax_bruteforce(k, q + q / 8, &limits()).unwrap();
            assert!(
                denom_set.contains(&got),
                "argmax {got} at k={k}, scan to {} is not a convergent denominator",
                q + q / 8
            );
        }
    }
}

#[test]
fn chain_consistency_rows() {
    for k in [1u32, 2, 3] {
        for n in 1..=8 {
            let rep = inequality_chain(k, n, &limits()).unwrap();
            assert!(
                rep.reduction_consistent,
                "direct/reduced sine mismatch at k={k} n={n}"
            );
            if rep.delta_below_half {
                assert!(rep.ratio_in_bounds, "sinc ratio escaped at k={k} n={n}");
            }
        }
    }
}
