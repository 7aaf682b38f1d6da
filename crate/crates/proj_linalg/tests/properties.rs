use proj_linalg::{image_of, kernel_of, n_ijk, proj_dist, proj_eq, Mat2, ProjPoint, C64};
use proptest::prelude::*;
use serde::{Deserialize, Serialize};

fn cplx() -> impl Strategy<Value = C64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| C64::new(a, b))
}

fn point() -> impl Strategy<Value = ProjPoint> {
    (cplx(), cplx()).prop_filter_map("nonzero", |(x, y)| {
        if x.norm() + y.norm() > 1e-3 {
            ProjPoint::new(x, y).ok()
        } else {
            None
        }
    })
}

#[derive(Serialize, Deserialize)]
struct Doc {
    pt: ProjPoint,
}

proptest! {
    #[test]
    fn scaling_invariance(f in cplx(), s in cplx().prop_filter("nonzero", |s| s.norm() > 1e-3)) {
        let a = ProjPoint::new(C64::new(1.0, 0.0), f).unwrap();
        let b = ProjPoint::new(s, s * f).unwrap();
        prop_assert!(proj_eq(&a, &b, 1e-14));
    }

    #[test]
    fn outer_product_kernel_and_image(u in point(), w in point()) {
        // M = u w^T: kernel is orthogonal (bilinearly) to w, image is u
        let m = Mat2::new(u.x() * w.x(), u.x() * w.y(), u.y() * w.x(), u.y() * w.y());
        let k = kernel_of(&m, 1e-12).unwrap();
        let mk = m.apply([k.x(), k.y()]);
        prop_assert!(mk[0].norm() + mk[1].norm() <= 1e-14 * m.norm());
        prop_assert!((w.x() * k.x() + w.y() * k.y()).norm() <= 1e-14);
        prop_assert!(proj_eq(&image_of(&m, 1e-12).unwrap(), &u, 1e-14));
    }

    #[test]
    fn frame_postcondition(a in point(), b in point(), c in point(), g in (cplx(), cplx(), cplx(), cplx())) {
        prop_assume!(proj_dist(&a, &b) > 1e-2 && proj_dist(&a, &c) > 1e-2 && proj_dist(&b, &c) > 1e-2);
        let check = |a: &ProjPoint, b: &ProjPoint, c: &ProjPoint| -> Result<(), TestCaseError> {
            let n = n_ijk(a, b, c).unwrap();
            let o = C64::new(1.0, 0.0);
            let z = C64::new(0.0, 0.0);
            for (v, p) in [([o, z], a), ([z, o], b), ([o, o], c)] {
                let r = n.apply(v);
                prop_assert!(proj_eq(&ProjPoint::new(r[0], r[1]).unwrap(), p, 1e-12));
            }
            Ok(())
        };
        check(&a, &b, &c)?;
        // equivariance: transformed inputs still satisfy the frame conditions
        let gm = Mat2::new(g.0, g.1, g.2, g.3);
        prop_assume!(gm.det().norm() > 1e-2);
        let t = |p: &ProjPoint| { let r = gm.apply([p.x(), p.y()]); ProjPoint::new(r[0], r[1]).unwrap() };
        check(&t(&a), &t(&b), &t(&c))?;
    }

    #[test]
    fn serialization_round_trip_is_bit_exact(p in point()) {
        let s = toml::to_string(&Doc { pt: p }).unwrap();
        let back: Doc = toml::from_str(&s).unwrap();
        prop_assert_eq!(back.pt.to_array().map(f64::to_bits), p.to_array().map(f64::to_bits));
    }
}
