mod common;

use entropy_toolkit::entropy::{
    entropy_function, exl_closed_form, four_atom_distribution, ExLParams, FourAtomParams,
};
use entropy_toolkit::frame::{
    cross_section_point, ingleton_value, point_from_weights, IngletonFrame,
};
use entropy_toolkit::inequality::{
    check_point, dfz_bank, dfz_halfspace, dfz_inequality, dfz_pair, load_bank,
    symmetrized_zhang_yeung, symmetrized_zy_halfspace, BankEntry, CrossSectionHalfspace,
    LinearInequality,
};
use entropy_toolkit::search::outer_region;
use entropy_toolkit::SetFunction;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// DFZ written out term by term from conditional mutual informations.
fn dfz_oracle(h: &SetFunction, f: &IngletonFrame, s: i32) -> f64 {
    let (i, j, k, l) = (f.i(), f.j(), f.k(), f.l());
    let m = |b: usize| 1usize << b;
    let d = |a: usize, b: usize, c: usize| h.delta_cond(a, b, c);
    let stv = d(k, l, m(i)) + d(k, l, m(j)) + d(i, j, 0) - d(k, l, 0);
    let p = 2f64.powi(s - 1);
    (2.0 * p - 1.0) * stv
        + d(k, l, m(i))
        + f64::from(s) * p * (d(i, k, m(l)) + d(i, l, m(k)))
        + (f64::from(s - 2) * p + 1.0) * (d(j, k, m(l)) + d(j, l, m(k)))
}

#[test]
fn dfz_reads_as_conditional_informations() {
    let f = common::frame();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let h = entropy_function(&common::random_distribution(&mut rng));
        for s in 1..=6 {
            let ineq = dfz_inequality(&f, s).unwrap();
            assert!((ineq.evaluate(&h).unwrap() - dfz_oracle(&h, &f, s as i32)).abs() < 1e-12);
        }
    }
}

#[test]
fn dfz_holds_on_entropy_functions() {
    let f = common::frame();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..1000 {
        let h = entropy_function(&common::random_distribution(&mut rng));
        for s in 1..=6 {
            for ineq in dfz_pair(&f, s).unwrap() {
                assert!(ineq.evaluate(&h).unwrap() >= -1e-9, "{}", ineq.name());
            }
        }
        assert!(symmetrized_zhang_yeung(&f).evaluate(&h).unwrap() >= -1e-9);
    }
}

#[test]
fn cross_section_points_satisfy_the_bank() {
    let f = common::frame();
    let bank = dfz_bank(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut hs: Vec<SetFunction> = (0..1000)
        .map(|_| entropy_function(&common::random_distribution(&mut rng)))
        .collect();
    hs.extend((1..50).map(|k| {
        entropy_function(&four_atom_distribution(
            FourAtomParams::new(k as f64 / 100.0).unwrap(),
        ))
    }));
    hs.push(exl_closed_form(ExLParams::published()));
    let mut checked = 0;
    for h in &hs {
        let Ok(cs) = cross_section_point(h, &f, 1e-9) else {
            continue;
        };
        checked += 1;
        let report = check_point(&cs.point, &bank, 1e-7);
        assert!(
            report.all_satisfied(),
            "{:?}",
            report.violated().collect::<Vec<_>>()
        );
        assert!(report.min_margin() >= -1e-7);
    }
    assert!(checked > 500);
}

#[test]
fn pair_sum_restricts_to_the_closed_form_halfspace() {
    let f = common::frame();
    for s in 1..=12 {
        let [a, b] = dfz_pair(&f, s)
            .unwrap()
            .map(|q| q.to_halfspace(&f).unwrap());
        let sum: Vec<f64> = a.abcd.iter().zip(b.abcd).map(|(x, y)| x + y).collect();
        let want = dfz_halfspace(s).unwrap().abcd;
        for (x, y) in sum.iter().zip(want) {
            assert!(
                (x - y).abs() < 1e-9 * y.abs().max(1.0),
                "s = {s}: {sum:?} vs {want:?}"
            );
        }
    }
    assert_eq!(
        dfz_halfspace(1).unwrap().abcd,
        symmetrized_zy_halfspace().abcd
    );
    assert_eq!(
        symmetrized_zhang_yeung(&f).to_halfspace(&f).unwrap().abcd,
        [-0.5, 1.0, 0.0, 1.0]
    );
}

#[test]
fn edge_cap_per_s() {
    for s in 1..=10u32 {
        let cap = outer_region(&dfz_bank(s).unwrap())
            .max_alpha_on_edge_ab()
            .unwrap();
        let want = 2.0 / (2f64.powi(s as i32) + 1.0);
        assert!((cap - want).abs() < 1e-9, "s = {s}: {cap}");
    }
}

#[test]
fn bank_file_round_trip() {
    let f = common::frame();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bank.json");
    let entries = [
        dfz_inequality(&f, 2).unwrap().to_json_value(),
        dfz_halfspace(3).unwrap().to_json_value(),
    ];
    std::fs::write(&path, serde_json::to_string(&entries).unwrap()).unwrap();
    let bank = load_bank(&path, f.ground()).unwrap();
    assert_eq!(bank.len(), 2);
    match &bank[0] {
        BankEntry::Inequality(q) => assert_eq!(q, &dfz_inequality(&f, 2).unwrap()),
        other => panic!("{other:?}"),
    }
    assert_eq!(bank[1].to_halfspace(&f).unwrap(), dfz_halfspace(3).unwrap());
}

#[test]
fn ingleton_violators_break_the_raw_functional() {
    let f = common::frame();
    let h = exl_closed_form(ExLParams::published());
    assert!(ingleton_value(&h, &f).unwrap() < 0.0);
    assert!(symmetrized_zhang_yeung(&f).evaluate(&h).unwrap() > 0.0);
}

fn weights() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0f64..1.0).prop_filter_map("nonzero", |w| {
        let t: f64 = w.iter().sum();
        (t > 1e-3).then(|| w.map(|x| x / t))
    })
}

proptest! {
    #[test]
    fn restriction_is_linear(
        w in weights(),
        coeffs in prop::collection::vec(-3.0f64..3.0, 15),
    ) {
        let f = common::frame();
        prop_assume!(coeffs.iter().any(|c| *c != 0.0));
        let ineq = LinearInequality::from_terms("random", f.ground(), (1..16).zip(coeffs)).unwrap();
        let hs = ineq.to_halfspace(&f).unwrap();
        let direct = ineq.evaluate(&point_from_weights(w, &f).unwrap()).unwrap();
        prop_assert!((hs.margin(w) - direct).abs() < 1e-9);
        let neg = ineq.negated().to_halfspace(&f).unwrap();
        prop_assert!((hs.margin(w) + neg.margin(w)).abs() < 1e-12);
    }

    #[test]
    fn margins_match_abcd(w in weights(), abcd in prop::array::uniform4(-2.0f64..2.0)) {
        prop_assume!(abcd.iter().any(|c| *c != 0.0));
        let h = CrossSectionHalfspace::new("h", abcd).unwrap();
        let report = check_point(&entropy_toolkit::frame::CrossSectionPoint::new(w, ""), std::slice::from_ref(&h), 0.0);
        prop_assert_eq!(report.margins[0].margin, h.margin(w));
        prop_assert_eq!(report.all_satisfied(), h.margin(w) >= 0.0);
    }
}
