//! Experiments whose outcome is recorded rather than held to a constant.
//! Observed values are printed (`cargo test -- --nocapture`); the
//! assertions are only the qualitative ones.

use std::sync::Arc;

use hapdisc::discrepancy::{cesaro_sum, hap_discrepancy_cm, prefix_sums};
use hapdisc::mulfun::{bcc, lifted_legendre};
use hapdisc::numtheory::PrimeTable;
use hapdisc::reduction::{build_f, discrepancy_identity_check, pi_map};

#[test]
fn variant_roughly_halves_discrepancy() {
    let t = Arc::new(PrimeTable::new(3u64.pow(10)));
    let plain = bcc(t.clone());
    let variant = lifted_legendre(3, -1, t).unwrap();
    for k in 2..=10u32 {
        let n = 3u64.pow(k);
        let a = hap_discrepancy_cm(&plain, n).unwrap().sup;
        let b = hap_discrepancy_cm(&variant, n).unwrap().sup;
        println!("N=3^{k}: sup {a} with +1 at 3, {b} with -1 at 3, ratio {:.3}", b / a);
        assert!(b < a);
    }
}

fn cesaro_sup(p: u64, n: usize) -> (f64, f64) {
    let t = Arc::new(PrimeTable::new(n as u64));
    let w = lifted_legendre(p, 1, t).unwrap().materialize(n as u64).unwrap();
    let plain = prefix_sums(&w).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut smooth = 0.0f64;
    let mut m = 1;
    while m <= n {
        smooth = smooth.max(cesaro_sum(&w, m).unwrap().norm());
        m = (m * 11 / 10).max(m + 1);
    }
    (plain, smooth)
}

#[test]
fn cesaro_observations() {
    for (p, n) in [(5u64, 200_000usize), (13, 200_000), (3, 200_000)] {
        let (plain, smooth) = cesaro_sup(p, n);
        println!("p={p}, N={n}: max |partial sum| = {plain}, max |Cesàro sum| on a geometric grid = {smooth:.4}");
        assert!(smooth.is_finite() && smooth <= plain);
    }
}

#[test]
fn identity_as_modulus_grows() {
    let t = Arc::new(PrimeTable::new(100));
    let primes = [2u64, 3, 5];
    let f = bcc(t);
    for m in [4usize, 8, 12, 16] {
        let cap = (1..=6u64).take_while(|&j| pi_map(j, &primes, m).is_ok()).last().unwrap();
        let arr = build_f(&f, &primes, m).unwrap();
        for n in 1..=cap {
            let r = discrepancy_identity_check(&arr, &primes, n).unwrap();
            println!("M={m}, n={n}: lhs {:.12}, rhs {:.12}", r.lhs, r.rhs);
            assert!(r.agrees(1e-9));
        }
    }
}
