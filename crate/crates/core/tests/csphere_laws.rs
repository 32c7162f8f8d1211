use nsym::cartan::{contract, ext_d, lie_bracket, PolyField, PolyForm};
use nsym::circle::{potential, CircleFn};
use nsym::csphere::{
    c2_family, c2_hamiltonian_field, c2_structure_field, contact_forms, form_part, holo_bracket, holo_vars,
    induced_bracket, kaehler_suite, pullback_to_circle_bundle, quaternion_frames, real_vars, s3_bracket,
    solve_s3_structure, spin_x, spin_y, split_family, split_to_vector, HoloPoly, RealField, SpinObservable,
};
use nsym::exact::{int, rat, GaussianRational, RealPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(rows: [[i64; 4]; 4]) -> RealField {
    // rows[k][j]: coefficient of q^{j+1} in the d/dq^{k+1} component
    let s = real_vars();
    PolyField::new(
        rows.iter()
            .map(|r| {
                let mut p = RealPoly::zero(&s);
                for (j, &c) in r.iter().enumerate() {
                    p = &p + &RealPoly::var(&s, j).scale(&int(c));
                }
                p
            })
            .collect(),
    )
}

fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[test]
fn frames_match_the_printed_fields() {
    let f = quaternion_frames();
    assert_eq!(f.left[0], field([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]));
    assert_eq!(f.left[1], field([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]));
    assert_eq!(f.left[2], field([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]));
    assert_eq!(f.right[0], field([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]));
    assert_eq!(f.right[1], field([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]));
    assert_eq!(f.right[2], field([[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]));
    assert_eq!(f.radial, field([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
}

#[test]
fn left_and_right_translations_commute() {
    let f = quaternion_frames();
    for v in &f.left {
        for w in &f.right {
            assert!(lie_bracket(v, w).unwrap().is_zero());
        }
    }
}

#[test]
fn spin_table_constant_is_minus_two() {
    let x = spin_x();
    for i in 0..3 {
        for j in 0..3 {
            let mut expect = HoloPoly::zero(&holo_vars());
            for k in 0..3 {
                let e = epsilon(i, j, k);
                if e != 0 {
                    expect = &expect + &x[k].scale(&GaussianRational::from(int(-2 * e)));
                }
            }
            assert_eq!(holo_bracket(&x[i], &x[j]), expect);
            let a = SpinObservable::basis(i).bracket(&SpinObservable::basis(j)).unwrap();
            assert_eq!(a.to_holo(), expect);
        }
    }
}

#[test]
fn left_frame_contractions() {
    // v^i ⌟ d theta^j = -2 eps^{ijk} theta^k
    let f = quaternion_frames();
    let theta = contact_forms();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let lhs = contract(&f.left[i], &ext_d(&theta[j]).unwrap()).unwrap();
            let k = 3 - i - j;
            let expect = theta[k].scaled(&RealPoly::constant(&real_vars(), int(-2 * epsilon(i, j, k))));
            assert_eq!(lhs, expect);
        }
    }
}

#[test]
fn right_frame_observables() {
    let f = quaternion_frames();
    let y = spin_y();
    let sols: Vec<_> = f.right.iter().map(|w| solve_s3_structure(w).unwrap()).collect();
    for (i, s) in sols.iter().enumerate() {
        assert_eq!(s.components[0], -y[i].clone());
        let [a, b, c] = &s.components;
        assert_eq!(a.diff(1), b.diff(2));
        assert_eq!(b.diff(2), c.diff(3));
    }
    // {f_i, f_j} = 2 eps^{ijk} f_k for the observables of w^i
    for i in 0..3 {
        for j in 0..3 {
            let b = s3_bracket(&sols[i], &sols[j]);
            for c in 0..3 {
                let mut expect = RealPoly::zero(&real_vars());
                for k in 0..3 {
                    expect = &expect + &sols[k].components[c].scale(&int(2 * epsilon(i, j, k)));
                }
                assert_eq!(b[c], expect);
            }
        }
    }
}

#[test]
fn c2_family_is_the_split_family() {
    for d in 1..=3 {
        let fam = c2_family(d);
        let splits = split_family(d);
        assert_eq!(fam.dimension(), (d as usize + 1) * (d as usize + 2));
        assert!(fam.same_span(&splits));
    }
}

fn random_holo(rng: &mut ChaCha8Rng) -> HoloPoly {
    let mut p = HoloPoly::zero(&holo_vars());
    for _ in 0..3 {
        let a = rng.gen_range(0..=2);
        let b = rng.gen_range(0..=2);
        let c = GaussianRational::new(int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3)));
        p.add_term(vec![a, b], c);
    }
    p
}

#[test]
fn induced_bracket_is_half_the_holomorphic_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let (f, g) = (random_holo(&mut rng), random_holo(&mut rng));
        let lhs = induced_bracket(&split_to_vector(&f), &split_to_vector(&g));
        let h = holo_bracket(&f, &g).scale(&GaussianRational::real(rat(1, 2)));
        assert_eq!(lhs, split_to_vector(&h));
        assert_eq!(c2_structure_field(&split_to_vector(&f).0), c2_hamiltonian_field(&f));
    }
}

#[test]
fn split_observables_satisfy_the_structure_equation() {
    let k = kaehler_suite();
    let to_form = |m: &nsym::csphere::ConstForm| {
        let mut w = PolyForm::zero(4, 2);
        for a in 0..4 {
            for b in a + 1..4 {
                let c = &m.matrix[a][b];
                assert!(c.is_real());
                w.add_term(vec![a, b], RealPoly::constant(&real_vars(), c.re.clone()));
            }
        }
        w
    };
    let (w2, w3) = (to_form(&k.omega2), to_form(&k.omega3));
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let f = random_holo(&mut rng);
        let (f1, f2) = split_to_vector(&f);
        let x = c2_hamiltonian_field(&f);
        for (fi, w) in [(f1, &w2), (f2, &w3)] {
            let df = ext_d(&PolyForm::function(4, fi)).unwrap();
            assert!(df.plus(&contract(&x, w).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn kaehler_pullbacks() {
    let k = kaehler_suite();
    let [t1, t2] = potential();
    let (d1, d2) = (ext_d(&t1).unwrap(), ext_d(&t2).unwrap());
    let minus_two = CircleFn::trig(nsym::exact::TrigPoly::constant(GaussianRational::from(int(-2))));
    // Along w = e^{-i phi}: omega+ pulls back to -2 (d theta^1 + i d theta^2).
    let pb = pullback_to_circle_bundle(&k.plus, -1);
    assert_eq!(form_part(&pb, false), d1.scaled(&minus_two));
    assert_eq!(form_part(&pb, true), d2.scaled(&minus_two));
    // Along w = e^{i phi} the real part is 2 sin(phi) dphi∧dq1 + 2 cos(phi) dphi∧dq2.
    let pb = pullback_to_circle_bundle(&k.plus, 1);
    let re = form_part(&pb, false);
    let two = |t| CircleFn::trig(t);
    let mut expect = PolyForm::zero(3, 2);
    expect.add_term(
        vec![0, 1],
        two(nsym::exact::TrigPoly::sin(1).scale(&GaussianRational::from(int(2)))),
    );
    expect.add_term(
        vec![0, 2],
        two(nsym::exact::TrigPoly::cos(1).scale(&GaussianRational::from(int(2)))),
    );
    assert_eq!(re, expect);
}
