use laurel::cfengine::{cf_eval, cf_expand, CfWord};
use laurel::construct::*;
use laurel::roots::instances::baum_sweet;
use laurel::roots::{newton_root, seed_search, DEFAULT_SEED_DEPTH};
use laurel::words::Word;

#[test]
fn baum_sweet_reciprocal_four_stages() {
    let poly = baum_sweet();
    let seeds = seed_search(&poly, -3..=1, DEFAULT_SEED_DEPTH);
    let root = newton_root(&poly, &seeds[0], 4096).unwrap().root;
    let e = cf_expand(&root, 2000).unwrap();
    let tail = Word::new(root.field(), e.word.all_letters()[1..].to_vec()).unwrap();
    let gauge = GaugeFunction::Reciprocal;
    let ns = choose_n_sequence(&gauge, 2, 4).unwrap();
    assert_eq!(ns, [1, 14, 119, 959]);
    let b = PhiBuilder::new(tail.clone(), 2, ns, TChoice::Default).unwrap();
    let theta = cf_eval(&CfWord::zero_then(tail.clone()), required_theta_precision(&b)).unwrap().series;
    let rep = verify_eq21(&theta, &b, &gauge).unwrap();
    assert_eq!(rep.rows.len(), 3);
    assert!(rep.all_hold(), "{rep:?}");

    let w = build_phi(&b, true);
    for j in 1..b.m_seq.len() {
        let (start, n) = (b.m_seq[j - 1] + 1, b.n_seq[j]);
        let block = Word::new(root.field(), w.tail.letters()[start..start + n].to_vec()).unwrap();
        assert_eq!(block, tail.prefix(n).mirror(), "stage {}", j + 1);
    }
    let phi = cf_eval(&w, 400).unwrap().series;
    assert!(linear_relation_search(&theta, &phi, 3, 200).is_none());
}
