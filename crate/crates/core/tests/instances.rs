use laurel::cfengine::{cf_eval, cf_expand};
use laurel::roots::instances::*;
use laurel::roots::{newton_root, seed_search, verify_algebraic, BivarPoly, DEFAULT_SEED_DEPTH};
use laurel::words::*;
use laurel::{LaurentSeries, Poly};

fn unique_root(p: &BivarPoly, tops: std::ops::RangeInclusive<i64>, prec: i64) -> LaurentSeries {
    let seeds = seed_search(p, tops, DEFAULT_SEED_DEPTH);
    assert_eq!(seeds.len(), 1, "seeds: {seeds:?}");
    newton_root(p, &seeds[0], prec).unwrap().root
}

fn letters(f: &LaurentSeries, n: usize) -> Vec<Poly> {
    cf_expand(f, n).unwrap().word.all_letters()
}

#[test]
fn frobenius_family() {
    for p in [2u64, 3, 5] {
        let poly = frobenius(p).unwrap();
        let root = unique_root(&poly, -3..=1, 400);
        let got: Vec<String> = letters(&root, 5).iter().map(|l| l.to_string()).collect();
        let want: Vec<String> = ["0".to_string()]
            .into_iter()
            .chain((0..4).map(|i| match p.pow(i) {
                1 => "X".to_string(),
                e => format!("X^{e}"),
            }))
            .collect();
        assert_eq!(got, want, "p={p}");
    }
}

#[test]
fn baum_sweet_bounded_degrees() {
    let poly = baum_sweet();
    let a = letters(&unique_root(&poly, -3..=1, 1400), 301);
    assert_eq!(a.len(), 301);
    assert!(a[1..].iter().all(|l| l.deg() <= 2));
    let b = letters(&unique_root(&poly, -3..=1, 2800), 301);
    assert_eq!(a, b);
}

#[test]
fn mills_robbins_quartic_expansion() {
    let root = unique_root(&mills_robbins_quartic(), -3..=1, 200);
    let got = letters(&root, 81);
    assert_eq!(got, mills_robbins_prefix(81).letters());
}

#[test]
fn lasjaunias_relation_holds() {
    for k in 0..=2 {
        let w = lasjaunias_word(k, 200);
        let f = cf_eval(&w, 400).unwrap().series;
        let rel = lasjaunias_relation(&w, k).unwrap();
        let v = verify_algebraic(&rel, &f).valuation().unwrap();
        assert!(v >= 150, "k={k} v={v}");
    }
}

#[test]
fn theta_p_words() {
    for p in [5u64, 7] {
        let poly = theta_p_poly(p).unwrap();
        let w = theta_p_word(p, 201).unwrap();
        let f = cf_eval(&w, 390).unwrap().series;
        let v = verify_algebraic(&poly, &f).valuation().unwrap();
        assert!(v >= 150, "p={p} v={v}");
        let unit = theta_p_poly_unit_constant(p).unwrap();
        assert!(verify_algebraic(&unit, &f).valuation().is_none());
        let root = unique_root(&poly, -3..=1, 260);
        assert_eq!(letters(&root, 100), theta_p_prefix(p, 100).unwrap().letters());
    }
}

#[test]
fn buck_robbins_omega() {
    let root = unique_root(&buck_robbins(), -3..=1, 1200);
    let o6 = omega(6);
    let got = letters(&root, o6.len() + 1);
    assert!(got[0].is_zero());
    assert_eq!(&got[1..], o6.letters());
}
