use laurel::cfengine::identities::{check, Identity};
use laurel::cfengine::{cf_eval, cf_expand, CfWord};
use laurel::words::Word;
use laurel::{LaurentSeries, NormLog2, NormReading, Poly, PrimeField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_strategy() -> impl Strategy<Value = (Word, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3, 1usize..=40, any::<u64>()).prop_map(|(p, m, len, seed)| {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (laurel::cfengine::identities::random_word(&mut rng, f, len, m), m)
    })
}

fn series_strategy() -> impl Strategy<Value = LaurentSeries> {
    (prop::sample::select(vec![2u64, 3, 5]), -4i64..4, prop::collection::vec(0u64..5, 0..20)).prop_map(|(p, top, c)| {
        let f = PrimeField::new(p).unwrap();
        LaurentSeries::new(f, top, c.into_iter().map(|x| x % p).collect(), 24)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn identities_hold((w, m) in word_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for id in Identity::ALL {
            prop_assert!(check(id, &w, &mut rng, m).unwrap(), "{:?} fails on {}", id, w);
        }
    }

    #[test]
    fn expansion_round_trip((w, _) in word_strategy()) {
        let cf = CfWord::zero_then(w.clone());
        let top: i64 = w.iter().map(|l| l.deg()).sum();
        let (num, den) = cf.to_rational();
        let s = LaurentSeries::from_rational(&num, &den, 2 * top + 8).unwrap();
        prop_assert!(cf_eval(&cf, top).unwrap().series.agrees_with(&s));
        let e = cf_expand(&s, w.len() + 1).unwrap();
        prop_assert_eq!(e.word.tail.clone(), w.prefix(e.word.tail.len()));
        let coarse = cf_expand(&s.truncate(top + 4), w.len() + 1).unwrap();
        prop_assert_eq!(coarse.word.tail.clone(), w.prefix(coarse.word.tail.len()));
    }

    #[test]
    fn ultrametric(f in series_strategy(), g in series_strategy()) {
        prop_assume!(f.field() == g.field());
        let (nf, ng, ns) = (f.norm(), g.norm(), f.add(&g).norm());
        prop_assert!(ns.upper() <= nf.upper().max(ng.upper()));
        if let (NormReading::Exact(a), NormReading::Exact(b)) = (nf, ng) {
            if a != b {
                prop_assert_eq!(ns, NormReading::Exact(a.max(b)));
            }
        }
    }

    #[test]
    fn product_norms_add(f in series_strategy(), q in prop::collection::vec(0u64..5, 1..6)) {
        let field = f.field();
        let q = Poly::from_residues(field, q.into_iter().map(|x| x % field.modulus()).collect());
        prop_assume!(!q.is_zero());
        let prod = f.mul_poly(&q).norm();
        if let NormReading::Exact(NormLog2::Pow(v)) = f.norm() {
            prop_assert_eq!(prod, NormReading::Exact(NormLog2::Pow(v + q.deg())));
        }
    }
}
