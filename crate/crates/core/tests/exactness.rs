use proptest::prelude::*;

use quartic_core::ellcurve::{EllPoint, WeierstrassCurve};
use quartic_core::exact::{deflate_triple_root, split_square_disc_quadratic, BinaryForm};
use quartic_core::{Int, P1Point, ProjPoint, Rat, RulingPair, SignAut, Surface};

fn nonzero_vec() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-50i64..50).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

fn linear() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..20, -20i64..20).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
}

proptest! {
    #[test]
    fn normalization_is_scale_invariant(v in nonzero_vec(), k in prop_oneof![-9i64..-1, 1i64..9]) {
        let p = ProjPoint::from_i64(v).unwrap();
        let q = ProjPoint::from_i64(v.map(|c| c * k)).unwrap();
        prop_assert_eq!(&p, &q);
        let first = p.coords().iter().find(|c| **c != Int::from(0)).unwrap();
        prop_assert!(*first > Int::from(0));
    }

    #[test]
    fn split_recovers_factors(l1 in linear(), l2 in linear()) {
        let a = BinaryForm::from_i64(&[l1.0, l1.1]);
        let b = BinaryForm::from_i64(&[l2.0, l2.1]);
        let q = a.mul(&b);
        let (f, g) = split_square_disc_quadratic(&q).unwrap();
        prop_assert!(f.mul(&g).proportional(&q));
        prop_assert!(f <= g);
    }

    #[test]
    fn deflation_finds_the_fourth_root(r in linear(), o in linear()) {
        let root = P1Point::from_i64(r.0, r.1).unwrap();
        // t_r s − s_r t vanishes at (s_r : t_r).
        let lr = BinaryForm::from_i64(&[r.1, -r.0]);
        let lo = BinaryForm::from_i64(&[o.1, -o.0]);
        let q = lr.mul(&lr).mul(&lr).mul(&lo);
        let other = deflate_triple_root(&q, &root).unwrap();
        prop_assert_eq!(other, P1Point::from_i64(o.0, o.1).unwrap());
    }

    #[test]
    fn group_law_is_associative(k in 1i64..6, m in 1i64..6, n in -5i64..6) {
        let e = WeierstrassCurve::new(
            Rat::from_integer(Int::from(1)),
            Rat::from_integer(Int::from(0)),
            Rat::from_integer(Int::from(1)),
            Rat::from_integer(Int::from(-2)),
            Rat::from_integer(Int::from(0)),
        ).unwrap();
        let p = EllPoint::Affine(Rat::from_integer(Int::from(0)), Rat::from_integer(Int::from(0)));
        prop_assert!(e.contains(&p));
        let (a, b, c) = (e.mul(k, &p), e.mul(m, &p), e.mul(n, &p));
        let left = e.add(&e.add(&a, &b), &c);
        let right = e.add(&a, &e.add(&b, &c));
        prop_assert!(e.contains(&left));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, e.mul(k + m + n, &p));
    }

    #[test]
    fn sign_changes_preserve_fibres(mask in 0u8..16) {
        let s = Surface::from_i64([1, 1, -1, -1]).unwrap();
        let p = ProjPoint::from_i64([133, 134, 158, 59]).unwrap();
        let r = RulingPair::for_surface(&s, &p).unwrap();
        let q = SignAut::from_mask(mask).apply(&p);
        prop_assert!(s.contains(&q));
        for i in 1..=2 {
            prop_assert_eq!(r.fibre_value(i, &q).unwrap(), r.fibre_value(i, &p).unwrap());
        }
    }
}
