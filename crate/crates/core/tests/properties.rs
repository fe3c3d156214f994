use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use hapdisc::discrepancy::{
    hap_discrepancy, hap_discrepancy_brute, hap_discrepancy_cm, prefix_sums, SeqWindow,
};
use hapdisc::mulfun::{bcc, chi2_family, CompletelyMultiplicativeFn};
use hapdisc::numtheory::{
    base_digits, count_digit, enumerate_characters, euler_phi, legendre_character, PrimeTable,
};
use hapdisc::pretentious::{pretentious_dist_sq, triangle_check};
use hapdisc::reduction::{fourier_transform, inverse_fourier_transform, FreqDistribution, GroupArray};
use hapdisc::search::{verify_certificate, Certificate, Mode};
use hapdisc::unit::{RootOfUnity, Unit};
use hapdisc::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table() -> Arc<PrimeTable> {
    Arc::new(PrimeTable::new(100_000))
}

fn big_table() -> Arc<PrimeTable> {
    static TABLE: OnceLock<Arc<PrimeTable>> = OnceLock::new();
    TABLE.get_or_init(|| Arc::new(PrimeTable::new(5_000_000))).clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn roots_of_unity_form_a_group(a in 0u64..60, b in 1u64..60, c in 0u64..60, d in 1u64..60, e in 0u64..200) {
        let x = RootOfUnity::new(a, b);
        let y = RootOfUnity::new(c, d);
        let product = (x * y).to_complex();
        prop_assert!((product - x.to_complex() * y.to_complex()).norm() < 1e-12);
        prop_assert_eq!(x * x.conj(), RootOfUnity::ONE);
        prop_assert!((x.pow(e).to_complex() - x.to_complex().powu(e as u32)).norm() < 1e-9);
    }

    #[test]
    fn digits_round_trip(n in 0u64..u64::MAX / 2, q in 2u64..40) {
        let digits = base_digits(n, q).unwrap();
        let back = digits.iter().rev().fold(0u128, |acc, &d| acc * q as u128 + d as u128);
        prop_assert_eq!(back, n as u128);
        prop_assert!(digits.iter().all(|&d| d < q));
    }

    #[test]
    fn prefix_sums_telescope(signs in prop::collection::vec(prop::bool::ANY, 1..300)) {
        let v: Vec<i8> = signs.iter().map(|&s| if s { 1 } else { -1 }).collect();
        let w = SeqWindow::from_signs(&v).unwrap();
        let s = prefix_sums(&w);
        prop_assert_eq!(s[0], Complex64::new(0.0, 0.0));
        for n in 1..=v.len() {
            prop_assert_eq!(s[n] - s[n - 1], w.get(n));
        }
    }

    #[test]
    fn fast_discrepancy_matches_brute_force(signs in prop::collection::vec(prop::bool::ANY, 1..120)) {
        let v: Vec<i8> = signs.iter().map(|&s| if s { 1 } else { -1 }).collect();
        let w = SeqWindow::from_signs(&v).unwrap();
        let fast = hap_discrepancy(&w);
        let slow = hap_discrepancy_brute(&w);
        prop_assert_eq!((fast.sup, fast.witness_n, fast.witness_d), (slow.sup, slow.witness_n, slow.witness_d));
        let (ok, report) = verify_certificate(&Certificate::new(v.clone(), fast.sup as u32, Mode::General)).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(report.sup, fast.sup);
    }

    #[test]
    fn multiplicative_discrepancy_is_prefix_discrepancy(seed in any::<u64>(), n in 1u64..3000) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = CompletelyMultiplicativeFn::from_signs(table(), n, |_| if rng.gen() { 1 } else { -1 });
        let a = hap_discrepancy_cm(&f, n).unwrap();
        let b = hap_discrepancy(&f.materialize(n).unwrap());
        prop_assert_eq!(a.sup, b.sup);
    }

    #[test]
    fn bcc_prefix_counts_ternary_ones(n in 1u64..100_000) {
        let f = bcc(table());
        let s: f64 = (1..=n).map(|j| f.eval(j).unwrap().re).sum();
        prop_assert_eq!(s, count_digit(n, 3, 1).unwrap() as f64);
    }

    #[test]
    fn characters_are_multiplicative(q in 1u64..200, a in 0u64..1000, b in 0u64..1000) {
        let chars = enumerate_characters(q).unwrap();
        prop_assert_eq!(chars.len() as u64, euler_phi(q));
        for chi in chars.iter().take(8) {
            prop_assert!((chi.eval(a * b) - chi.eval(a) * chi.eval(b)).norm() < 1e-12);
            prop_assert!((chi.eval(a + q) - chi.eval(a)).norm() < 1e-12);
        }
    }

    #[test]
    fn pretentious_distance_is_a_pseudometric(seed in any::<u64>()) {
        use rand::Rng;
        let t = table();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut make = || {
            let values: BTreeMap<u64, Unit> = t.primes_up_to(500.0).iter()
                .map(|&p| (p, Unit::from_angle(rng.gen_range(0.0..6.3)))).collect();
            CompletelyMultiplicativeFn::from_prime_values(t.clone(), values, true).unwrap()
        };
        let (f, g, h) = (make(), make(), make());
        prop_assert!(pretentious_dist_sq(&f, &f, &t, 500.0).unwrap() < 1e-12);
        let fg = pretentious_dist_sq(&f, &g, &t, 500.0).unwrap();
        let gf = pretentious_dist_sq(&g, &f, &t, 500.0).unwrap();
        prop_assert!(fg >= 0.0 && (fg - gf).abs() < 1e-12);
        prop_assert!(triangle_check(&f, &g, &h, &t, 500.0).unwrap() <= 1e-9);
    }

    #[test]
    fn fourier_round_trip(seed in any::<u64>(), m in 2usize..7, r in 1usize..4, dim in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = GroupArray::random_unit(m, r, dim, &mut rng).unwrap();
        let fh = fourier_transform(&f);
        prop_assert!((FreqDistribution::from_transform(&fh).total() - 1.0).abs() < 1e-9);
        let back = inverse_fourier_transform(&fh);
        for i in 0..f.len() {
            for (a, b) in back.at_index(i).iter().zip(f.at_index(i)) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn chi2_family_has_zero_mean(overrides in prop::collection::btree_map(
        (prop::sample::select(vec![3u64, 5, 7]), 1u32..3), prop::bool::ANY, 0..4)) {
        let h: BTreeMap<(u64, u32), i8> = overrides.into_iter().map(|(k, s)| (k, if s { 1 } else { -1 })).collect();
        let fam = chi2_family(&h, big_table()).unwrap();
        let w = fam.f.materialize(2 * fam.period).unwrap();
        let first: f64 = (1..=fam.period as usize).map(|n| w.get(n).re).sum();
        prop_assert!(first.abs() < 1e-9);
        for n in 1..=fam.period as usize {
            prop_assert!((w.get(n) - w.get(n + fam.period as usize)).norm() < 1e-12);
        }
    }
}

#[test]
fn legendre_character_is_real() {
    for p in [3u64, 5, 7, 11, 13, 101] {
        assert!(legendre_character(p).unwrap().is_real());
    }
}
