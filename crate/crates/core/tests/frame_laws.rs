use nsym::exact::{int, rat, RealPoly};
use nsym::frame::{
    hamiltonian_field, index::tuples, is_allowable, poisson_bracket, project_to_cotangent, random_allowable,
    random_tensorial, swap_kernel, sym_product, bracket_with_field, cotangent_vars, FrameObservable, FrameSpace, Generator,
    HamiltonianField, RandomSpec, Symmetry,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> RandomSpec {
    RandomSpec {
        terms: 2,
        max_q_degree: 2,
        max_coeff: 3,
    }
}

fn draw(rng: &mut ChaCha8Rng, s: &FrameSpace, ranks: std::ops::RangeInclusive<usize>, tensorial: bool) -> FrameObservable {
    let rank = rng.gen_range(ranks);
    if tensorial {
        random_tensorial(rng, s, rank, &small())
    } else {
        random_allowable(rng, s, rank, &small())
    }
}

#[test]
fn antisymmetry_and_grading() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=3 {
        let s = FrameSpace::new(n).unwrap();
        for _ in 0..25 {
            let p = rng.gen_range(1..=3);
            let q = rng.gen_range(1..=3);
            let f = random_allowable(&mut rng, &s, p, &small());
            let g = random_allowable(&mut rng, &s, q, &small());
            let fg = poisson_bracket(&f, &g).unwrap();
            let gf = poisson_bracket(&g, &f).unwrap();
            assert_eq!(fg, gf.scale(&int(-1)));
            assert_eq!(fg.rank(), p + q - 1);
            assert!(is_allowable(&fg).allowable);
        }
    }
}

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=3 {
        let s = FrameSpace::new(n).unwrap();
        for _ in 0..10 {
            let f = draw(&mut rng, &s, 1..=2, false);
            let g = draw(&mut rng, &s, 1..=2, false);
            let h = draw(&mut rng, &s, 1..=2, false);
            let lhs = poisson_bracket(&sym_product(&f, &g).unwrap(), &h).unwrap();
            let rhs = sym_product(&f, &poisson_bracket(&g, &h).unwrap())
                .unwrap()
                .plus(&sym_product(&poisson_bracket(&f, &h).unwrap(), &g).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn jacobi_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=3 {
        let s = FrameSpace::new(n).unwrap();
        for _ in 0..10 {
            let f = draw(&mut rng, &s, 1..=2, false);
            let g = draw(&mut rng, &s, 1..=2, false);
            let h = draw(&mut rng, &s, 1..=2, false);
            let a = poisson_bracket(&f, &poisson_bracket(&g, &h).unwrap()).unwrap();
            let b = poisson_bracket(&g, &poisson_bracket(&h, &f).unwrap()).unwrap();
            let c = poisson_bracket(&h, &poisson_bracket(&f, &g).unwrap()).unwrap();
            assert!(a.plus(&b).unwrap().plus(&c).unwrap().is_zero());
        }
    }
}

#[test]
fn kernel_representatives_give_the_same_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let s = FrameSpace::new(3).unwrap();
    for _ in 0..10 {
        let p = rng.gen_range(2..=3);
        let f = random_allowable(&mut rng, &s, p, &small());
        let g = draw(&mut rng, &s, 1..=3, false);
        let xf = hamiltonian_field(&f).unwrap();
        let all = tuples(3, p);
        let mut y = HamiltonianField::zero(&s, p);
        for _ in 0..3 {
            let mut full = all[rng.gen_range(0..all.len())].clone();
            if full[0] == full[1] {
                full[1] = (full[0] + 1) % 3;
            }
            let h = &s.q(rng.gen_range(0..3)) * &s.pi(rng.gen_range(0..3), rng.gen_range(0..3));
            let j = rng.gen_range(0..3);
            y = y.plus(&swap_kernel(&s, p, full, j, h)).unwrap();
        }
        assert!(y.is_kernel());
        let shifted = xf.plus(&y).unwrap();
        shifted.check_structure_equation(&f).unwrap();
        assert_eq!(bracket_with_field(&xf, &g).unwrap(), bracket_with_field(&shifted, &g).unwrap());
    }
}

#[test]
fn tensorial_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 2..=3 {
        let s = FrameSpace::new(n).unwrap();
        for _ in 0..10 {
            let f = draw(&mut rng, &s, 1..=3, true);
            let g = draw(&mut rng, &s, 1..=3, true);
            assert!(poisson_bracket(&f, &g).unwrap().is_homogeneous());
        }
    }
}

#[test]
fn rank_one_field_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let s = FrameSpace::new(3).unwrap();
    for _ in 0..10 {
        let f = random_allowable(&mut rng, &s, 1, &small());
        let x = hamiltonian_field(&f).unwrap();
        x.check_structure_equation(&f).unwrap();
        for i in 0..3 {
            for a in 0..3 {
                assert_eq!(x.pi_component(&[i], a), -f.component(&[i]).diff(s.q_index(a)));
            }
            for b in 0..3 {
                for c in 0..3 {
                    let expect = if i == b { x.q_component(&[], c) } else { s.zero() };
                    assert_eq!(f.component(&[i]).diff(s.pi_index(b, c)), expect);
                }
            }
        }
    }
}

#[test]
fn rank_one_general_form_is_allowable() {
    let s = FrameSpace::new(2).unwrap();
    let big_f = [&s.q(0) * &s.q(1), s.q(1).scale(&int(3))];
    let big_g = [s.constant(int(2)), &s.q(0) * &s.q(0)];
    let mut f = FrameObservable::zero(&s, 1, Symmetry::Sym);
    for i in 0..2 {
        let mut c = big_g[i].clone();
        for j in 0..2 {
            c = &c + &(&big_f[j] * &s.pi(i, j));
        }
        f.set(&[i], c).unwrap();
    }
    assert!(is_allowable(&f).allowable);
    let x = hamiltonian_field(&f).unwrap();
    assert_eq!(x.q_component(&[], 0), big_f[0]);
    assert_eq!(x.q_component(&[], 1), big_f[1]);
}

#[test]
fn quadratic_example_is_allowable() {
    // g^{ij} = A^{ab} pi^i_a pi^j_b + 2 B^{c(i} pi^{j)}_c + C^{ij}
    let s = FrameSpace::new(2).unwrap();
    let a = |x: usize, y: usize| if x == y { s.q(0) } else { s.constant(int(1)) };
    let b = |c: usize, i: usize| s.q(c).scale(&int((i + 2) as i64));
    let c = |i: usize, j: usize| &s.q(i) * &s.q(j);
    let mut g = FrameObservable::zero(&s, 2, Symmetry::Sym);
    for i in 0..2 {
        for j in i..2 {
            let mut v = c(i, j);
            for x in 0..2 {
                for y in 0..2 {
                    v = &v + &(&a(x, y) * &(&s.pi(i, x) * &s.pi(j, y)));
                }
                v = &v + &(&b(x, i) * &s.pi(j, x));
                v = &v + &(&b(x, j) * &s.pi(i, x));
            }
            g.set(&[i, j], v).unwrap();
        }
    }
    assert!(is_allowable(&g).allowable);
    hamiltonian_field(&g).unwrap().check_structure_equation(&g).unwrap();
}

#[test]
fn unsymmetrized_pattern_is_rejected() {
    // f^{ij} = F^{ib} pi^j_b without symmetrization in (i, j).
    let s = FrameSpace::new(2).unwrap();
    let mut f = FrameObservable::zero(&s, 2, Symmetry::Sym);
    f.set(&[0, 0], s.pi(0, 1)).unwrap();
    f.set(&[0, 1], &s.pi(1, 0) * &s.pi(1, 0)).unwrap();
    assert!(!is_allowable(&f).allowable);
}

#[test]
fn generator_tables() {
    for n in 2..=3 {
        let s = FrameSpace::new(n).unwrap();
        let g = |k| FrameObservable::generator(&s, k).unwrap();
        for k in 1..=n {
            for i in 1..=n {
                for j in 1..=n {
                    let b = poisson_bracket(&g(Generator::PiHat(k)), &g(Generator::QHatFull(i, j))).unwrap();
                    let expect = if i == k {
                        g(Generator::IHat(j))
                    } else {
                        FrameObservable::zero(&s, 1, Symmetry::Sym)
                    };
                    assert_eq!(b, expect);
                }
            }
            for j in 1..=n {
                assert!(poisson_bracket(&g(Generator::PiHat(k)), &g(Generator::PiHat(j))).unwrap().is_zero());
                assert!(poisson_bracket(&g(Generator::IHat(k)), &g(Generator::QHat(j))).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn quadratic_projections() {
    let s = FrameSpace::new(2).unwrap();
    let cv = cotangent_vars(2);
    let alpha = [rat(1, 2), int(3)];
    let pi = |k| FrameObservable::generator(&s, Generator::PiHat(k)).unwrap();
    let id = |k| FrameObservable::generator(&s, Generator::IHat(k)).unwrap();
    let fq = |i: usize, j: usize| s.q(0).scale(&int((i + 2 * j + 1) as i64));
    let fq_cot = |i: usize, j: usize| RealPoly::var(&cv, 0).scale(&int((i + 2 * j + 1) as i64));
    let p = |j: usize| RealPoly::var(&cv, 2 + j);
    let mut pp = FrameObservable::zero(&s, 2, Symmetry::Sym);
    let mut pi_id = FrameObservable::zero(&s, 2, Symmetry::Sym);
    let mut expect_pp = RealPoly::zero(&cv);
    let mut expect_pi_id = RealPoly::zero(&cv);
    for i in 0..2 {
        for j in 0..2 {
            let scale = |o: FrameObservable| {
                let mut out = FrameObservable::zero(&s, 2, Symmetry::Sym);
                for (k, v) in o.components() {
                    out.set(k, v * &fq(i, j)).unwrap();
                }
                out
            };
            pp = pp.plus(&scale(sym_product(&pi(i + 1), &pi(j + 1)).unwrap())).unwrap();
            pi_id = pi_id.plus(&scale(sym_product(&pi(i + 1), &id(j + 1)).unwrap())).unwrap();
            expect_pp = &expect_pp + &(&fq_cot(i, j) * &(&p(i) * &p(j)));
            expect_pi_id = &expect_pi_id + &(&fq_cot(i, j) * &p(i)).scale(&alpha[j]);
        }
    }
    assert_eq!(project_to_cotangent(&pp, &alpha).unwrap(), expect_pp);
    assert_eq!(project_to_cotangent(&pi_id, &alpha).unwrap(), expect_pi_id);
}
