use proptest::prelude::*;

use mfdo_core::radial::{radial, ThetaOperator};
use mfdo_core::ratpoly::{parse, rat, ratio, RatPoly};
use mfdo_core::smith::{rewrite_word, s_normal_form, CoeffRing, Letter, SmithAlgebra, Strategy as Redex};
use mfdo_core::torus::{SpaceParams, TorusElement};

const VARS: [&str; 3] = ["X0", "X1", "X2"];

fn poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-6i64..=6, 1i64..=3, prop::array::uniform3(0u32..=2)), 0..5).prop_map(|terms| {
        let mut p = RatPoly::zero();
        for (n, d, exps) in terms {
            let mut m = RatPoly::constant(ratio(n, d));
            for (v, e) in VARS.iter().zip(exps) {
                m = m * RatPoly::var(v).pow(e);
            }
            p += m;
        }
        p
    })
}

fn det3() -> std::sync::Arc<SpaceParams> {
    SpaceParams::new(vec![3, 2, 1], parse("X0*(X0+X1+1)*(X0+X1+X2+2)").unwrap()).unwrap()
}

fn torus() -> impl Strategy<Value = TorusElement> {
    prop::collection::vec((-2i64..=2, poly()), 1..3)
        .prop_map(|parts| TorusElement::from_parts(&det3(), parts))
}

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y), Just(Letter::E)], 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn display_reparses(a in poly()) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn shift_composes(a in poly(), s in -3i64..=3, t in -3i64..=3) {
        prop_assert_eq!(a.shift("X1", &rat(s)).shift("X1", &rat(t)), a.shift("X1", &rat(s + t)));
        let via_subst = a.substitute("X1", &(RatPoly::var("X1") + RatPoly::from_int(s)));
        prop_assert_eq!(a.shift("X1", &rat(s)), via_subst);
    }

    #[test]
    fn twisted_product_associative(a in torus(), b in torus(), c in torus()) {
        prop_assert_eq!(a.t_mul(&b).t_mul(&c), a.t_mul(&b.t_mul(&c)));
    }

    #[test]
    fn radial_homomorphism(a in torus(), b in torus(), l1 in 0i64..=3, l2 in 0i64..=3) {
        let lhs = radial(&a.t_mul(&b), &[l1, l2]).unwrap();
        let rhs = radial(&a, &[l1, l2]).unwrap().theta_mul(&radial(&b, &[l1, l2]).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_action_is_a_module(k in -4i64..=6, m in -2i64..=2, n in -2i64..=2) {
        let a = ThetaOperator::part_at(m, parse("th^2 - 1/2*th").unwrap());
        let b = ThetaOperator::part_at(n, parse("th + 3").unwrap());
        // (a b) t^k = a (b t^k)
        let inner = b.apply_theta(k);
        let mut composed = std::collections::BTreeMap::new();
        for (p, c) in inner {
            for (q, d) in a.apply_theta(p) {
                *composed.entry(q).or_insert_with(|| rat(0)) += c.clone() * d;
            }
        }
        composed.retain(|_, v| *v != rat(0));
        prop_assert_eq!(a.theta_mul(&b).apply_theta(k), composed);
    }

    #[test]
    fn rewriting_is_confluent(word in letters(), n in 1i64..=3, f in poly()) {
        let f = f.rename("X0", "t").rename("X1", "t").rename("X2", "t");
        let alg = SmithAlgebra::new(CoeffRing::Q, f, n).unwrap();
        let reference = s_normal_form(&alg, &word).unwrap();
        for mut s in [Redex::Leftmost, Redex::Rightmost] {
            prop_assert_eq!(rewrite_word(&alg, &word, &mut s).unwrap(), reference.clone());
        }
    }
}
