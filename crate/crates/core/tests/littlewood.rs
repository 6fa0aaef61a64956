use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use laurel::cfengine::cf_eval;
use laurel::littlewood::oracle::oracle_scan;
use laurel::littlewood::*;
use laurel::words::*;
use laurel::{LaurentSeries, PrimeField};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn omega_checkpoints_through_level_six() {
    let o6 = omega(6).len();
    let word = buck_robbins_word(omega_len(7));
    let deg: i64 = word.tail.iter().take(o6 + 1).map(|l| l.deg()).sum();
    let set = palindrome_checkpoints(&word, 2 * deg + 8).unwrap();
    let levels: Vec<usize> = (2..=6).map(omega_len).collect();
    let within: Vec<&Checkpoint> = set.checkpoints.iter().filter(|c| c.n <= o6).collect();
    for l in &levels {
        assert!(within.iter().any(|c| c.n == *l), "missing checkpoint at {l}");
    }
    for c in &within {
        assert!(c.theta_line && c.inverse_line && c.product_line, "n={}: {:?}", c.n, c.report);
        assert!(c.report.product2.upper().exponent().unwrap() < 0);
    }
}

#[test]
fn mechanism_degree_identity_and_constant() {
    let letters = mills_robbins_prefix(3usize.pow(6));
    let pairs: Vec<_> = (2..=4).map(mills_robbins_uv).collect();
    let m = palindrome_mechanism(&letters, &pairs, 1100).unwrap();
    assert!(m.degree_identity);
    let c = m.constant.unwrap();
    for r in &m.rows {
        assert!(r.report.precision_ok);
        assert!(r.excess.unwrap() <= c);
    }
}

#[test]
fn closed_form_lengths() {
    for n in 2..=6u32 {
        let (u, v) = mills_robbins_uv(n);
        assert_eq!(u.len(), 3usize.pow(n));
        assert_eq!(v.len(), 3usize.pow(n + 1) - 2);
        assert!(2 * v.len() > 5 * u.len());
    }
    for k in 0..=2 {
        for n in [2u32, 4, 6] {
            let (u, v) = lasjaunias_uv(k, n);
            assert_eq!(v.len(), 5 * (k + 2) * 3usize.pow(n - 1) - 2);
            assert!(v.len() >= 3 * u.len() + 3);
        }
    }
    for p in [7u64, 11] {
        for n in 2..=4u32 {
            let (u, v) = theta_p_uv(p, n).unwrap();
            assert!(2 * v.len() >= 5 * u.len());
        }
    }
    for p in [5u64, 7] {
        for n in 2..=4u32 {
            let (u, _) = theta_p_uv(p, n).unwrap();
            assert!(2 * theta_p_l3(p, n).unwrap().len() >= 3 * u.len());
        }
    }
}

#[test]
fn periodic_certificate_and_mechanism() {
    let p = 5;
    let letters = theta_p_prefix(p, 700).unwrap();
    let us: Vec<Word> = (2..=3).map(|n| theta_p_uv(p, n).unwrap().0).collect();
    let ns: Vec<usize> = (2..=3u32).map(|n| (5usize.pow(n) - 1) / 2).collect();
    let v = theta_p_v3(p).unwrap();
    let cert = certify_periodic(&theta_p_word(p, 700).unwrap(), &us, &v, &ns).unwrap();
    assert!(cert.satisfied);
    assert!(cert.x_empirical >= BigRational::new(3.into(), 2.into()));
    let m = periodic_mechanism(&letters, &us, &v, &ns, (&int(1), &int(1)), 500).unwrap();
    for r in &m.rows {
        assert!(below(r.report.log_theta, -r.deg_big_q));
    }
}

fn random_series(rng: &mut ChaCha8Rng, p: u64, prec: i64) -> LaurentSeries {
    let f = PrimeField::new(p).unwrap();
    let coeffs: Vec<u64> = (0..prec).map(|_| rng.gen_range(0..p)).collect();
    LaurentSeries::new(f, -1, coeffs, prec)
}

#[test]
fn scan_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..20 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let a = random_series(&mut rng, p, 24);
        let b = random_series(&mut rng, p, 24);
        let s = scan(&Target::Series(a.clone()), &Target::Series(b.clone()), 5).unwrap();
        let o = oracle_scan(&a, &b, 5);
        assert_eq!((s.product1.value, &s.product1.argmin), (o.product1, &o.argmin1), "pair {i}");
        assert_eq!((s.product2.value, &s.product2.argmin), (o.product2, &o.argmin2), "pair {i}");
    }
}

#[test]
fn exponent_scan_on_the_quartic() {
    let word = buck_robbins_word(400);
    let theta = cf_eval(&word, 300).unwrap().series;
    let r = exponent_scan(&theta, 6, &int(1)).unwrap();
    assert!(r.floor_excluded.is_empty());
    assert_eq!(r.checked, (1..=6).map(|d| 3usize.pow(d)).sum::<usize>());
}
