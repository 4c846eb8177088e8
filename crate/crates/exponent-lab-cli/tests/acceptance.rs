//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its assertions hold (run with `cargo test --test acceptance -- --nocapture`
//! to see them). The golden rows are the embedded source tables; nothing in
//! here recomputes a fixture.

use std::cmp::Ordering;
use std::process::Command;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exponent_lab::cfrac::{
    best_approx_bruteforce_id, check_alternating_sum, check_determinant, convergents, expand,
};
use exponent_lab::diophantine::mu_table;
use exponent_lab::kernels::sample_pair;
use exponent_lab::lemma_verifier::{
    reciprocal_sine_profile, sine_argmax_bruteforce, verify_lemma_705, w_n,
};
use exponent_lab::mpreal::{gen_constant, Magnitude};
use exponent_lab::{BigReal, ConstantId, PrecisionLimits};
use exponent_lab_cli::golden;

fn limits() -> PrecisionLimits {
    PrecisionLimits::default()
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_exponent-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Golden-table reproduction shared by criteria 1 and 2: the CLI check must
/// exit 0, every integer cell must match exactly, and every exponent cell
/// must match the certified value under half-even or (for the tables that
/// ceil) ceiling rendering — deviations are counted and reported.
fn golden_reproduction(constant: &str, table: &[golden::GoldenMuRow]) -> (usize, usize) {
    let out = cli(&[
        "mu-table",
        "--constant",
        constant,
        "--n",
        "30",
        "--check-golden",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "golden check exited nonzero for {constant}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = mu_table(&constant.parse().unwrap(), 30, &limits()).unwrap();
    assert_eq!(rows.len(), 30);
    let mut half_even = 0usize;
    let mut ceil_rows = 0usize;
    for (r, g) in rows.iter().zip(table) {
        assert_eq!(r.p, BigInt::from_str(g.p).unwrap(), "{constant} row {} p", g.n);
        assert_eq!(r.q, BigInt::from_str(g.q).unwrap(), "{constant} row {} q", g.n);
        match (r.mu.as_ref(), g.mu) {
            (None, None) => {}
            (Some(m), Some(gm)) => {
                let he = m.round_half_even_decimal(6).unwrap();
                let ce = m.ceil_decimal(6).unwrap();
                if gm == he {
                    half_even += 1;
                } else if gm == ce {
                    // one ulp up in the sixth decimal: the printed table kept
                    // the inequality direction by ceiling
                    ceil_rows += 1;
                } else {
                    panic!("{constant} row {}: golden {gm} vs computed {he}", g.n);
                }
            }
            (a, b) => panic!("{constant} row {}: blank mismatch {a:?} vs {b:?}", g.n),
        }
    }
    (half_even, ceil_rows)
}

#[test]
fn criterion_01_pi2_golden_table() {
    let t0 = Instant::now();
    let (he, ceil) = golden_reproduction("pi^2", golden::MU_PI2);
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "took {dt:?}, budget 10 s");
    // the pi^2 source table ceils every printed exponent: 10 of its 28
    // non-blank cells differ from half-even by exactly +1 ulp, all explained
    assert_eq!(he + ceil, 28);
    assert_eq!(ceil, 10, "ceiling-rendered rows drifted: {ceil}");
    println!(
        "ACCEPTANCE 1 PASS: pi^2 table reproduced in {dt:?} (integers exact; {he} half-even cells, {ceil} ceiling cells, 0 beyond 1 ulp)"
    );
}

#[test]
fn criterion_02_pi3_zeta3_golden_tables_and_a002117() {
    let (he3, ceil3) = golden_reproduction("pi^3", golden::MU_PI3);
    assert_eq!(he3 + ceil3, 29);
    assert!(ceil3 <= 2, "pi^3 ceiling rows within the 2-row allowance");
    let (hez, ceilz) = golden_reproduction("zeta3", golden::MU_ZETA3);
    assert_eq!(hez + ceilz, 29);
    assert_eq!(ceilz, 0);

    // zeta(3) digits against the A002117 prefix
    let z = gen_constant(&ConstantId::Zeta3, 512).unwrap();
    let s = z.to_decimal_string(118);
    assert_eq!(&s[..112], &golden::ZETA3_A002117[..112]);
    println!(
        "ACCEPTANCE 2 PASS: pi^3 ({he3} half-even / {ceil3} ceiling) and zeta3 ({hez} half-even / {ceilz} ceiling) reproduced; zeta3 matches A002117 to 110 digits"
    );
}

#[test]
fn criterion_03_continued_fraction_prefixes() {
    let cf2 = expand(&ConstantId::PiPow(2), golden::CF_PI2.len(), &limits()).unwrap();
    for (i, &want) in golden::CF_PI2.iter().enumerate() {
        assert_eq!(
            cf2.partial_quotients()[i],
            BigInt::from(want),
            "pi^2 partial quotient {i}"
        );
    }
    let cf3 = expand(&ConstantId::PiPow(3), golden::CF_PI3.len(), &limits()).unwrap();
    for (i, &want) in golden::CF_PI3.iter().enumerate() {
        assert_eq!(
            cf3.partial_quotients()[i],
            BigInt::from(want),
            "pi^3 partial quotient {i}"
        );
    }
    println!(
        "ACCEPTANCE 3 PASS: continued-fraction prefixes match term for term (pi^2: {} terms, pi^3: {} terms)",
        golden::CF_PI2.len(),
        golden::CF_PI3.len()
    );
}

#[test]
fn criterion_04_exact_identities() {
    for id in [ConstantId::PiPow(2), ConstantId::PiPow(3), ConstantId::Zeta3] {
        let cf = expand(&id, 30, &limits()).unwrap();
        let cs = convergents(&cf, 30).unwrap();
        assert!(check_determinant(&cs), "determinant identity for {id}");
        assert!(check_alternating_sum(&cs, &cf), "alternating sum for {id}");
    }
    println!("ACCEPTANCE 4 PASS: determinant and alternating-sum identities exact for 30 rows of all three constants");
}

#[test]
fn criterion_05_bound_suite() {
    use num_rational::BigRational;
    use num_traits::One;
    for id in [ConstantId::PiPow(2), ConstantId::PiPow(3), ConstantId::Zeta3] {
        let cf = expand(&id, 31, &limits()).unwrap();
        let cs = convergents(&cf, 31).unwrap();
        let a = cf.partial_quotients();
        let (lo, hi) = gen_constant(&id, 31 * 16 + 256).unwrap().to_rational_endpoints();
        for i in 0..30 {
            let c = &cs[i];
            let frac = BigRational::new(c.p.clone(), c.q.clone());
            let d_lo = &lo - &frac;
            let d_hi = &hi - &frac;
            assert!(
                d_lo.is_positive() == d_hi.is_positive(),
                "{id} row {}: interval straddles convergent",
                i + 1
            );
            let (gap_lo, gap_hi) = if d_lo.is_positive() {
                (d_lo.clone(), d_hi.clone())
            } else {
                (-d_hi.clone(), -d_lo.clone())
            };
            let one = BigRational::one();
            let q2 = BigRational::from_integer(&c.q * &c.q);
            // Dirichlet (2000.02): 0 < gap < 1/q^2
            assert!(gap_lo.is_positive(), "{id} row {}", i + 1);
            assert!(gap_hi < &one / &q2, "{id} row {}: 1/q^2", i + 1);
            // refined (2000.03): gap < 1/(a_{n+1} q^2)
            let a_next = BigRational::from_integer(a[i + 1].clone());
            assert!(gap_hi < &one / (&a_next * &q2), "{id} row {}: refined", i + 1);
            // sandwich (2000.05): 1/(2 q_{n+1} q_n) <= gap <= 1/q^2
            let s_lo = &one / BigRational::from_integer(BigInt::from(2) * &cs[i + 1].q * &c.q);
            assert!(gap_lo >= s_lo, "{id} row {}: sandwich", i + 1);
        }
    }
    println!("ACCEPTANCE 5 PASS: Dirichlet, refined, and sandwich bounds hold for every row (exact rational interval comparisons)");
}

#[test]
fn criterion_06_best_approximation_oracle() {
    for (id, q6) in [
        (ConstantId::PiPow(2), 1089u64),
        (ConstantId::PiPow(3), 55284),
        (ConstantId::Zeta3, 193),
    ] {
        let cf = expand(&id, 8, &limits()).unwrap();
        let cs = convergents(&cf, 8).unwrap();
        let minima: Vec<u64> = best_approx_bruteforce_id(&id, q6, &limits())
            .unwrap()
            .iter()
            .map(|r| r.q)
            .collect();
        let mut denoms: Vec<u64> = cs
            .iter()
            .map(|c| u64::try_from(&c.q).unwrap())
            .filter(|&q| q <= q6)
            .collect();
        denoms.dedup();
        assert_eq!(minima, denoms, "minima for {id}");
    }
    println!("ACCEPTANCE 6 PASS: running minima of |alpha q - p| occur exactly at convergent denominators up to q_6 for all three constants");
}

#[test]
fn criterion_07_w_parity() {
    let mut rows = 0usize;
    for k in [1u32, 2, 3] {
        let cf = expand(&ConstantId::PiPow(k), 30, &limits()).unwrap();
        let cs = convergents(&cf, 30).unwrap();
        for c in &cs {
            let (_, odd) = w_n(&c.q);
            assert!(odd, "w even at k={k}, row {}", c.table_row());
            rows += 1;
        }
    }
    assert_eq!(rows, 90);
    println!("ACCEPTANCE 7 PASS: w_n odd for all {rows} rows (k in {{1,2,3}}, n <= 30), exact integer test");
}

#[test]
fn criterion_08_lemma_705_bounds() {
    let one = BigReal::from_u64(1, 64);
    let mut checked = 0usize;
    let mut degenerate = 0usize;
    for k in [1u32, 2, 3] {
        for n in 1..=30 {
            let rep = verify_lemma_705(k, n, &limits()).unwrap();
            assert!(rep.s_minus_exact, "k={k} n={n}: parity argument failed");
            let dev = rep.s_minus_numeric.sub(&one).mag_upper();
            assert!(
                dev < Magnitude::pow2(-60),
                "k={k} n={n}: s_minus numeric cross-check"
            );
            assert!(rep.plus_equals_cos, "k={k} n={n}: item (ii)");
            if rep.q >= BigInt::from(3) {
                assert_eq!(rep.bound_ok, Some(true), "k={k} n={n}: item (iii)");
                checked += 1;
            } else {
                degenerate += 1;
            }
        }
    }
    println!("ACCEPTANCE 8 PASS: s_minus = 1 exactly on all 90 rows; bound (iii) holds on all {checked} rows with q >= 3 ({degenerate} degenerate rows exempt)");
}

#[test]
fn criterion_09_kernel_oracle_equivalence() {
    let prec = 192;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_97a2);
    for fejer in [false, true] {
        for i in 0..200 {
            let x: u64 = rng.gen_range(0..=100);
            let z = BigReal::from_f64(rng.gen_range(0.05f64..3.1), prec).unwrap();
            let (closed, summed, dev) = sample_pair(fejer, x, &z, prec).unwrap();
            let tol = closed
                .err()
                .add(&summed.err())
                .mul(&Magnitude::from_u128(10, 0));
            assert!(
                dev.mag_stored() <= tol,
                "{} sample {i} beyond 10x err",
                if fejer { "fejer" } else { "dirichlet" }
            );
        }
    }
    // documented discrepancy: the source's closed Fejer form carries a 1/2
    // that its own defining double sum contradicts (at z -> 0 the sum gives
    // (x+1)^2, the half-scaled form (x+1)^2/2); the comparison above uses
    // the half-free form throughout
    let z = BigReal::from_f64(0.6, prec).unwrap();
    let (closed, summed, _) = sample_pair(true, 4, &z, prec).unwrap();
    let half_dev = closed.mul_pow2(-1).sub(&summed).abs();
    // the half-scaled form misses by summed/2, far beyond any error bound
    assert_eq!(
        half_dev.cmp_certified(&summed.abs().mul_pow2(-2)),
        Some(Ordering::Greater)
    );
    println!("ACCEPTANCE 9 PASS: 200 randomized samples per kernel within 10x certified error; Fejer closed form validated without the printed 1/2 factor (half-scaled form misses the defining sum by a factor of 2)");
}

#[test]
fn criterion_10_reciprocal_sine_sandwich() {
    let mut rows_checked = 0usize;
    for k in [1u32, 2, 3] {
        let rows = reciprocal_sine_profile(k, 30, &limits()).unwrap();
        for row in rows.iter().filter(|r| r.n >= 2) {
            assert_eq!(row.sandwich_ok, Some(true), "k={k} n={}", row.n);
            rows_checked += 1;
        }
    }
    println!("ACCEPTANCE 10 PASS: q_(n+1)/pi <= 1/|sin(pi^(k+1) q_n)| <= q_(n+1) certified on all {rows_checked} rows (n >= 2, k in {{1,2,3}}); the headline exponent claim itself is measured, not asserted");
}

#[test]
fn criterion_11_sine_argmax() {
    assert_eq!(sine_argmax_bruteforce(2, 1100, &limits()).unwrap(), 1089);
    assert_eq!(sine_argmax_bruteforce(3, 200, &limits()).unwrap(), 159);
    println!("ACCEPTANCE 11 PASS: brute-force reciprocal-sine maximizers land on 1089 (k=2, z<=1100) and 159 (k=3, z<=200)");
}

#[test]
fn criterion_12_champernowne_spike() {
    let rows = mu_table(&ConstantId::Champernowne(10), 20, &limits()).unwrap();
    let four = BigReal::from_u64(4, 64);
    let spike = rows.iter().find(|r| {
        r.mu
            .as_ref()
            .is_some_and(|m| m.cmp_certified(&four) == Some(Ordering::Greater))
    });
    let spike = spike.expect("no row with mu > 4 in the first 20");
    println!(
        "ACCEPTANCE 12 PASS: champernowne base 10 shows mu = {} > 4 at row {} (q = {}), consistent with its exponent of 10",
        spike.mu.as_ref().unwrap().to_decimal_string(4),
        spike.n,
        spike.q
    );
}
