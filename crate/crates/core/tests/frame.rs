mod common;

use entropy_toolkit::entropy::{
    entropy_function, exl_closed_form, four_atom_distribution, ExLParams, FourAtomParams,
};
use entropy_toolkit::frame::{
    a_map, b_map, basis_coefficients, basis_generators, c_sym, cross_section_point, ingleton_base,
    ingleton_score, ingleton_value, pipeline, point_from_weights, read_points_csv, reconstruct,
    tetra_vertices, violated_instances, weights_of, write_points_csv, BasisCoefficients,
    CrossSectionPoint, IngletonFrame,
};
use entropy_toolkit::polymatroid::{is_polymatroid, is_tight, tight_part};
use entropy_toolkit::{GroundSet, SetFunction};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_frames() -> Vec<IngletonFrame> {
    let g = GroundSet::ijkl();
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if let Ok(f) = IngletonFrame::from_roles(&g, [a, b, c, d]) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

fn conic(frame: &IngletonFrame, c: [f64; 11]) -> SetFunction {
    basis_generators(frame)
        .iter()
        .zip(c)
        .fold(SetFunction::zero(frame.ground()), |acc, (g, w)| {
            acc.add_scaled(w, g).unwrap()
        })
}

fn coeffs() -> impl Strategy<Value = [f64; 11]> {
    prop::array::uniform11(0.0f64..2.0)
}

fn stabilizer(frame: &IngletonFrame) -> Vec<[usize; 4]> {
    let [i, j, k, l] = frame.roles();
    let mut out = Vec::new();
    for (sij, skl) in [(true, false), (false, true), (true, true)] {
        let mut perm = [0, 1, 2, 3];
        if sij {
            perm.swap(i, j);
        }
        if skl {
            perm.swap(k, l);
        }
        out.push(perm);
    }
    out
}

#[test]
fn ingleton_base_score() {
    for frame in all_frames() {
        assert_eq!(
            ingleton_score(&ingleton_base(&frame), &frame).unwrap(),
            -0.25
        );
    }
}

#[test]
fn vertices_have_unit_weights() {
    let frame = common::frame();
    let t = tetra_vertices(&frame);
    for (k, v) in t.vertices().into_iter().enumerate() {
        assert!(is_polymatroid(v, 1e-12) && is_tight(v, 1e-12));
        assert!((v.rank() - 1.0).abs() < 1e-15);
        let w = weights_of(v, &frame).unwrap();
        for (m, x) in w.iter().enumerate() {
            assert_eq!(*x, if m == k { 1.0 } else { 0.0 }, "{w:?}");
        }
    }
}

#[test]
fn example_two_cross_section() {
    let frame = common::frame();
    let cs = cross_section_point(&exl_closed_form(ExLParams::published()), &frame, 1e-12).unwrap();
    let w = cs.point.weights();
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(cs.point.in_tetrahedron(1e-12));
    assert!((w[0] - 0.369736).abs() < 1e-6, "{w:?}");
    // the reduced function is the point it names
    let back = point_from_weights(w, &frame).unwrap();
    assert!(back.max_abs_diff(&cs.h).unwrap() < 1e-12);
    assert!((ingleton_score(&cs.h, &frame).unwrap() - -w[0] / 4.0).abs() < 1e-12);
}

#[test]
fn degenerate_functions_have_no_point() {
    let frame = common::frame();
    assert!(cross_section_point(&SetFunction::zero(frame.ground()), &frame, 1e-12).is_err());
}

#[test]
fn points_csv_round_trip() {
    let pts = vec![
        CrossSectionPoint::new([0.25, 0.25, 0.25, 0.25], "centre"),
        CrossSectionPoint::new([0.1, 0.2, 0.3, 0.4], ""),
    ];
    let mut buf = Vec::new();
    write_points_csv(&mut buf, &pts).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("alpha,beta,gamma,delta,source"));
    assert_eq!(read_points_csv(buf.as_slice()).unwrap(), pts);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn basis_round_trip(c in coeffs()) {
        let frame = common::frame();
        let g = conic(&frame, c);
        let read = basis_coefficients(&g, &frame).unwrap();
        for (a, b) in read.to_array().iter().zip(c) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!(reconstruct(&read, &frame).max_abs_diff(&g).unwrap() < 1e-9);
    }

    #[test]
    fn map_laws(g in common::set_function(4)) {
        let frame = common::frame();
        let a = a_map(&g, &frame).unwrap();
        let b = b_map(&g, &frame).unwrap();
        let ab = a_map(&b, &frame).unwrap();
        let ba = b_map(&a, &frame).unwrap();
        prop_assert_eq!(ab.values(), ba.values());
        let s = ingleton_value(&g, &frame).unwrap();
        let c = c_sym(&g, &frame).unwrap();
        for h in [&a, &b, &c] {
            prop_assert!((ingleton_value(h, &frame).unwrap() - s).abs() < 1e-12);
        }
        let (i, j) = (frame.mask("i"), frame.mask("j"));
        prop_assert!(a.delta_cond(frame.i(), frame.j(), 0).abs() < 1e-12);
        prop_assert!(b.delta_cond(frame.k(), frame.l(), i | j).abs() < 1e-12);
        prop_assert!(ab.delta_cond(frame.i(), frame.j(), 0).abs() < 1e-12);
        prop_assert!(ab.delta_cond(frame.k(), frame.l(), i | j).abs() < 1e-12);
    }

    #[test]
    fn tightening_keeps_the_ingleton_value(g in common::polymatroid(4)) {
        let frame = common::frame();
        let t = tight_part(&g);
        prop_assert!((ingleton_value(&g, &frame).unwrap() - ingleton_value(&t, &frame).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn generator_combinations_violate_one_instance(c in coeffs(), bar in 0.01f64..2.0, f in 0usize..24) {
        let frame = all_frames()[f].clone();
        let mut c = c;
        c[0] = bar;
        let g = conic(&frame, c);
        let (i, j) = (frame.i().min(frame.j()), frame.i().max(frame.j()));
        prop_assert_eq!(violated_instances(&g, 1e-12).unwrap(), vec![(i, j)]);
        prop_assert!(is_polymatroid(&a_map(&g, &frame).unwrap(), 1e-9));
        prop_assert!(is_polymatroid(&b_map(&g, &frame).unwrap(), 1e-9));
    }

    #[test]
    fn pipeline_zeroes_two_coordinates(c in coeffs()) {
        let frame = common::frame();
        let p = pipeline(&conic(&frame, c), &frame).unwrap();
        let read = basis_coefficients(&p, &frame).unwrap();
        prop_assert!(read.c_ij.abs() < 1e-12 && read.c_kl_ij.abs() < 1e-12);
        prop_assert!(read.min() >= -1e-12);
    }

    #[test]
    fn swaps_do_not_change_scores(g in common::polymatroid(4), sij: bool, skl: bool) {
        let frame = common::frame();
        let other = frame.swapped(sij, skl);
        prop_assume!(g.rank() > 1e-9);
        prop_assert!((ingleton_score(&g, &frame).unwrap() - ingleton_score(&g, &other).unwrap()).abs() < 1e-12);
        let (w0, w1) = (weights_of(&g, &frame).unwrap(), weights_of(&g, &other).unwrap());
        for (a, b) in w0.iter().zip(w1) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetrization_is_invariant(g in common::set_function(4)) {
        let frame = common::frame();
        let c = c_sym(&g, &frame).unwrap();
        for perm in stabilizer(&frame) {
            prop_assert!(c.permute(&perm).unwrap().max_abs_diff(&c).unwrap() < 1e-12);
        }
        let cc = c_sym(&c, &frame).unwrap();
        prop_assert!(cc.max_abs_diff(&c).unwrap() < 1e-12);
    }

    #[test]
    fn weights_round_trip(raw in prop::array::uniform4(0.0f64..1.0)) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 1e-3);
        let w = raw.map(|x| x / total);
        let frame = common::frame();
        let h = point_from_weights(w, &frame).unwrap();
        prop_assert!(is_polymatroid(&h, 1e-12));
        for (a, b) in weights_of(&h, &frame).unwrap().iter().zip(w) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let cs = cross_section_point(&h, &frame, 1e-12).unwrap();
        for (a, b) in cs.point.weights().iter().zip(w) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn violators_land_in_the_tetrahedron() {
    let frame = common::frame();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut fs: Vec<SetFunction> = (1..50)
        .map(|k| {
            entropy_function(&four_atom_distribution(
                FourAtomParams::new(f64::from(k) / 100.0).unwrap(),
            ))
        })
        .collect();
    for _ in 0..200 {
        let w: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..1.0)).collect();
        let t: f64 = w.iter().sum::<f64>() * 8.0;
        let v: Vec<f64> = w.iter().map(|x| x / t).collect();
        if let Ok(p) = ExLParams::new(0.125 - v[1..].iter().sum::<f64>(), v[1], v[2], v[3], v[4]) {
            fs.push(exl_closed_form(p));
        }
    }
    let mut seen = 0;
    for h in fs {
        if ingleton_value(&h, &frame).unwrap() >= -1e-12 {
            continue;
        }
        seen += 1;
        assert!(is_polymatroid(&pipeline(&h, &frame).unwrap(), 1e-9));
        let cs = cross_section_point(&h, &frame, 1e-9).unwrap();
        assert!(cs.point.in_tetrahedron(1e-9), "{:?}", cs.point);
    }
    assert!(seen >= 40, "{seen}");
}

#[test]
fn basis_reads_any_tight_function() {
    let frame = common::frame();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let h = tight_part(&entropy_function(&common::random_distribution(&mut rng)));
        let read = basis_coefficients(&h, &frame).unwrap();
        assert!(reconstruct(&read, &frame).max_abs_diff(&h).unwrap() < 1e-12);
        assert_eq!(BasisCoefficients::from_array(read.to_array()), read);
    }
}
