use deformations::{apply_e, apply_f, apply_iota};
use garnier_system::{sym_action, BEval, GarnierState, SAMPLE_Z};
use painleve::*;
use proj_linalg::{image_of, kernel_of, proj_dist, ProjPoint};

fn states() -> Vec<PainleveState> {
    let mut v = vec![PainleveState::fixture()];
    v.extend((0..10).map(|s| PainleveState::random(s).unwrap()));
    v
}

/// Reorders the points by adjacent transpositions so that slot `k` holds the
/// point that started in slot `target[k]`.
fn permute(s: &GarnierState, target: &[usize]) -> GarnierState {
    let mut labels: Vec<usize> = (0..s.u.len()).collect();
    let pos = |l: usize| target.iter().position(|&t| t == l).unwrap();
    let mut t = s.clone();
    loop {
        let Some(i) = (0..labels.len() - 1).find(|&i| pos(labels[i]) > pos(labels[i + 1])) else { break };
        t = sym_action(&t, i).unwrap();
        labels.swap(i, i + 1);
    }
    t
}

fn norm(s: &GarnierState) -> PainleveState {
    normalize(s).unwrap()
}

#[test]
fn closed_form_matches_general_build() {
    for x in states() {
        let s = x.to_garnier(3).unwrap();
        let b = BEval::new(&s).unwrap();
        let e8 = E8Eval::new(&x).unwrap();
        let cs: Vec<_> = SAMPLE_Z.iter().map(|&z| e8.eval(z).best_scalar(&b.eval(z))).collect();
        let mut worst = 0.0f64;
        for (k, &z) in SAMPLE_Z.iter().enumerate() {
            worst = worst.max(e8.eval(z).rel_diff(&b.eval(z).scale(cs[0])));
            worst = worst.max((cs[k] - cs[0]).norm() / cs[0].norm());
        }
        println!("be8 {worst:e}");
        assert!(worst < 1e-8);
        let r = verify_px(&x, 1e-8).unwrap();
        println!("{:?}", r.checks.iter().map(|c| c.residual).collect::<Vec<_>>());
        assert!(r.pass);
    }
}

#[test]
fn normalize_is_idempotent_on_normalised_states() {
    for x in states() {
        let y = normalize(&x.to_garnier(5).unwrap()).unwrap();
        assert!(x.distance(&y) < 1e-9, "{}", x.distance(&y));
    }
}

#[test]
fn kernel_and_image_at_u4() {
    for x in states() {
        let b = build_b_e8(&x, x.u[4]).unwrap();
        let k = kernel_of(&b, 1e-8).unwrap();
        assert!(proj_dist(&k, &kernel_u4(&x).unwrap()) < 1e-8);
        let im = image_of(&b, 1e-8).unwrap();
        assert!(proj_dist(&im.flip(), &image_u4(&x).unwrap()) < 1e-8);
    }
}

#[test]
fn two_path_e34_f34() {
    for x in states() {
        for seed in [1, 2] {
            let s = x.to_garnier(seed).unwrap();
            let de = bar_e34(&x).unwrap().distance(&norm(&apply_e(&s, 3, 4).unwrap()));
            let df = bar_f34(&x).unwrap().distance(&norm(&apply_f(&s, 3, 4).unwrap()));
            println!("E {de:e} F {df:e}");
            assert!(de < 1e-8 && df < 1e-8);
        }
    }
}

#[test]
fn two_path_generators() {
    for x in states() {
        let s = x.to_garnier(4).unwrap();
        for i in 0..7 {
            let d = gen(&x, i).unwrap().distance(&norm(&sym_action(&s, i).unwrap()));
            println!("s{i} {d:e}");
            assert!(d < 1e-8);
        }
        let d01 = bar_e01(&x).unwrap().distance(&norm(&sym_action(&apply_f(&s, 0, 1).unwrap(), 0).unwrap()));
        let d67 = bar_f67(&x).unwrap().distance(&norm(&sym_action(&apply_e(&s, 6, 7).unwrap(), 6).unwrap()));
        let di = iota_x(&x).distance(&norm(&permute(&apply_iota(&s).unwrap(), &[7, 6, 5, 3, 4, 2, 1, 0])));
        println!("e01 {d01:e} f67 {d67:e} iota {di:e}");
        assert!(d01 < 1e-8 && d67 < 1e-8 && di < 1e-8);
    }
}

#[test]
fn lax_and_orbit() {
    for x in states() {
        let r = lax_residual(&x, 7).unwrap();
        println!("lax {r:e}");
        assert!(r < 1e-7);
    }
    let (o, err) = orbit(&PainleveState::fixture(), 20, 1);
    assert!(err.is_none(), "{err:?}");
    let w = o.iter().map(|s| s.lax_residual).fold(0.0, f64::max);
    println!("orbit worst {w:e}");
    assert!(w < 1e-6);
}

fn same(a: &PainleveState, b: &PainleveState, tol: f64) -> bool {
    a.distance(b) <= tol
}

#[test]
fn involutions() {
    for x in states() {
        for i in 0..7 {
            assert!(same(&gen(&gen(&x, i).unwrap(), i).unwrap(), &x, 1e-10), "s{i}");
        }
        assert!(same(&bar_e34(&bar_e34(&x).unwrap()).unwrap(), &x, 1e-9));
        assert!(same(&bar_f34(&bar_f34(&x).unwrap()).unwrap(), &x, 1e-9));
        assert!(same(&bar_e01(&bar_e01(&x).unwrap()).unwrap(), &x, 1e-10));
        assert!(same(&bar_f67(&bar_f67(&x).unwrap()).unwrap(), &x, 1e-10));
        assert!(same(&step_inverse(&step(&x).unwrap()).unwrap(), &x, 1e-9));
        let ii = iota_x(&iota_x(&x));
        assert!(proj_dist(&ii.f, &x.f) < 1e-15 && proj_dist(&ii.g, &x.g) < 1e-15);
        let ff = fourier_laplace(&fourier_laplace(&x));
        assert!(same(&ff, &x, 1e-14));
    }
}

#[test]
fn coxeter_relations() {
    let word = |x: &PainleveState, w: &[usize]| w.iter().fold(x.clone(), |y, &i| gen(&y, i).unwrap());
    for x in states() {
        for i in 0..6 {
            let y = word(&x, &[i, i + 1, i, i + 1, i, i + 1]);
            assert!(same(&y, &x, 1e-7), "braid {i}: {:e}", y.distance(&x));
        }
        for i in 0..7 {
            for j in (i + 2)..7 {
                let (a, b) = (word(&x, &[i, j]), word(&x, &[j, i]));
                assert!(same(&a, &b, 1e-7), "commute {i} {j}");
            }
        }
    }
}

#[test]
fn step_shifts_parameters_exactly() {
    let x = PainleveState::fixture();
    let y = step(&x).unwrap();
    for k in 0..8 {
        let want = if k == 3 || k == 4 { x.q() * x.u[k] } else { x.u[k] };
        assert_eq!(y.u[k], want);
    }
    assert_eq!(y.eta(), x.eta());
}

#[test]
fn reduction_keeps_the_system() {
    let x = PainleveState::fixture();
    let mut y = x.clone();
    for _ in 0..4 {
        y = step(&y).unwrap();
    }
    let r = y.reduce();
    assert!(r.u.iter().all(|u| u.norm() > 0.3 && u.norm() < 1.0 / 0.3 + 1e-12));
    assert_eq!((r.f, r.g), (y.f, y.g));
    // B changes by a scalar function of z (quasi-periodicity of the shifted factors)
    let (a, b) = (E8Eval::new(&y).unwrap(), E8Eval::new(&r).unwrap());
    for &z in &SAMPLE_Z {
        let c = b.eval(z).best_scalar(&a.eval(z));
        assert!(b.eval(z).rel_diff(&a.eval(z).scale(c)) < 1e-9);
    }
    assert!(verify_px(&r, 1e-8).unwrap().pass);
}

/// Printed `P_1` (`g = 0`) and `P_2` (`g = inf`).
fn printed_p12(x: &PainleveState) -> [BasePoint; 2] {
    let th = x.theta().unwrap();
    let [u0, u1, u2, u3, u4, _, u6, u7] = x.u;
    let l = x.l;
    let f = |a: theta_core::C64| {
        ProjPoint::new(
            th.prod(&[u1 / u2, u0 / u3, u1 * u2 * u4 * a / l, u0 * u3 * u4 * a / l]),
            th.prod(&[u0 / u2, u1 / u3, u0 * u2 * u4 * a / l, u1 * u3 * u4 * a / l]),
        )
        .unwrap()
    };
    [(f(u7), ProjPoint::ZERO), (f(u6), ProjPoint::INF)]
}

#[test]
fn base_points_match_printed_points() {
    for x in states() {
        let bp = base_points(&x).unwrap();
        let pr = printed_p12(&x);
        assert!(point_dist(&bp[0], &pr[0]) < 1e-8);
        assert!(point_dist(&bp[1], &pr[1]) < 1e-8);
        // image at u_4 vanishes on the f(P_1) line and is infinite on f(P_2)
        assert!(proj_dist(&image_u4(&x.with_fg(bp[0].0, x.g)).unwrap(), &ProjPoint::ZERO) < 1e-10);
        assert!(proj_dist(&image_u4(&x.with_fg(bp[1].0, x.g)).unwrap(), &ProjPoint::INF) < 1e-10);
        // P_4: f = 0
        assert!(proj_dist(&bp[3].0, &ProjPoint::ZERO) < 1e-12);
    }
}

#[test]
fn chi_is_periodic() {
    for x in states() {
        for &z in &SAMPLE_Z {
            let (a, b) = (chi(&x, z).unwrap(), chi(&x, x.p() * z).unwrap());
            assert!(point_dist(&a, &b) < 1e-11);
        }
    }
}

#[test]
fn s4_blows_down_the_p1_and_p2_lines() {
    let x = PainleveState::fixture();
    let bp = base_points(&x).unwrap();
    for g in [0.3, -1.7, 4.0] {
        let g = ProjPoint::from_affine(theta_core::c64(g, 0.5));
        let y1 = gen(&x.with_fg(bp[0].0, g), 4).unwrap();
        assert!(proj_dist(&y1.g, &ProjPoint::INF) < 1e-10);
        let y2 = gen(&x.with_fg(bp[1].0, g), 4).unwrap();
        assert!(proj_dist(&y2.g, &ProjPoint::ZERO) < 1e-10);
    }
    assert!(matches!(gen(&x.with_fg(bp[0].0, bp[0].1), 4), Err(PainleveError::PoleInFormula(_))));
}

type Map = fn(&PainleveState) -> Result<PainleveState, PainleveError>;

fn maps() -> Vec<(String, Map)> {
    let mut v: Vec<(String, Map)> = vec![
        ("s0".into(), |x| gen(x, 0)),
        ("s1".into(), |x| gen(x, 1)),
        ("s2".into(), |x| gen(x, 2)),
        ("s3".into(), |x| gen(x, 3)),
        ("s4".into(), |x| gen(x, 4)),
        ("s5".into(), |x| gen(x, 5)),
        ("s6".into(), |x| gen(x, 6)),
    ];
    v.push(("iota".into(), |x| Ok(iota_x(x))));
    v.push(("fourier-laplace".into(), |x| Ok(fourier_laplace(x))));
    v
}

#[test]
fn generators_permute_base_points() {
    for x in states() {
        let bp = base_points(&x).unwrap();
        for (name, m) in maps() {
            let target = base_points(&m(&x).unwrap()).unwrap();
            let mut used = [false; 8];
            let mut skipped = vec![];
            for (k, p) in bp.iter().enumerate() {
                let Ok(y) = m(&x.with_fg(p.0, p.1)) else {
                    skipped.push(k + 1);
                    continue;
                };
                let hit = (0..8).find(|&j| !used[j] && point_dist(&(y.f, y.g), &target[j]) < 1e-8);
                assert!(hit.is_some(), "{name} sends P_{} outside", k + 1);
                used[hit.unwrap()] = true;
            }
            let expect: Vec<usize> = match name.as_str() {
                "s2" => vec![4, 5],
                "s4" => vec![1, 2],
                _ => vec![],
            };
            assert_eq!(skipped, expect, "{name}");
        }
    }
}

#[test]
fn fourier_laplace_keeps_b() {
    let x = PainleveState::fixture();
    let y = fourier_laplace(&x);
    for &z in &SAMPLE_Z {
        assert_eq!(build_b_e8(&x, z).unwrap(), build_b_e8(&y, z).unwrap());
    }
}

#[test]
fn step_does_not_commute_with_fourier_laplace() {
    let x = PainleveState::fixture();
    let a = step(&fourier_laplace(&x)).unwrap();
    let b = fourier_laplace(&step(&x).unwrap());
    assert!(a.distance(&b) > 1e-3);
}

#[test]
fn collision_is_rejected() {
    let x = PainleveState::fixture();
    let bp = base_points(&x).unwrap();
    for (k, p) in bp.iter().enumerate() {
        let y = x.with_fg(p.0, p.1);
        assert_eq!(step(&y), Err(PainleveError::BasePointCollision(k + 1)));
    }
}

#[test]
fn ensemble_matches_sequential_orbits() {
    let starts: Vec<_> = (0..4).map(|s| PainleveState::random(s).unwrap()).collect();
    let par = ensemble(&starts, 5, 3);
    for (x, (o, e)) in starts.iter().zip(&par) {
        let (o2, e2) = orbit(x, 5, 3);
        assert_eq!(e, &e2);
        assert_eq!(o.len(), o2.len());
        for (a, b) in o.iter().zip(&o2) {
            assert_eq!(a.state, b.state);
            assert_eq!(a.lax_residual.to_bits(), b.lax_residual.to_bits());
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_states_satisfy_the_frame_conditions(seed in 0u64..1000) {
            let x = PainleveState::random(seed).unwrap();
            prop_assert!(verify_px(&x, 1e-8).unwrap().pass);
        }

        #[test]
        fn generators_are_involutions(seed in 0u64..1000, i in 0usize..7) {
            let x = PainleveState::random(seed).unwrap();
            let y = gen(&gen(&x, i).unwrap(), i).unwrap();
            prop_assert!(y.distance(&x) < 1e-9);
        }

        #[test]
        fn step_is_certified(seed in 0u64..1000) {
            let x = PainleveState::random(seed).unwrap();
            let (y, r) = certified_step(&x, seed).unwrap();
            prop_assert!(r < 1e-6, "lax residual {r:e}");
            prop_assert!(step_inverse(&y).unwrap().distance(&x) < 1e-8);
        }
    }
}
