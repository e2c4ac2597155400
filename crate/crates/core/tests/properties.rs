use proptest::prelude::*;

use origami_core::io::{
    document_from_value, multifan_to_value, polytope_to_value, template_to_value, Document,
};
use origami_core::lattice::{det, quotient_group};
use origami_core::realize2d::{realize, V};
use origami_core::*;

/// Unimodular sequences: a base, insertions of `±vᵢ ± vᵢ₊₁`, sign flips and
/// a product of elementary matrices.
fn sequence() -> impl Strategy<Value = Vec<V>> {
    (
        0usize..3,
        prop::collection::vec((any::<prop::sample::Index>(), any::<bool>(), any::<bool>()), 0..7),
        prop::collection::vec(any::<bool>(), 10),
        prop::collection::vec((0u8..3, -2i64..=2), 0..4),
    )
        .prop_map(|(base, inserts, flips, ops)| {
            let mut s: Vec<V> = match base {
                0 => vec![[1, 0], [0, 1]],
                1 => vec![[1, 0], [0, 1], [-1, -1]],
                _ => vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
            };
            for (ix, ea, eb) in inserts {
                let i = ix.index(s.len());
                let (a, b) = (s[i], s[(i + 1) % s.len()]);
                let (ea, eb) = (if ea { 1 } else { -1 }, if eb { 1 } else { -1 });
                s.insert(i + 1, [ea * a[0] + eb * b[0], ea * a[1] + eb * b[1]]);
            }
            for (v, f) in s.iter_mut().zip(flips) {
                if f {
                    *v = [-v[0], -v[1]];
                }
            }
            for (op, k) in ops {
                for v in s.iter_mut() {
                    *v = match op {
                        0 => [v[0] + k * v[1], v[1]],
                        1 => [v[0], v[1] + k * v[0]],
                        _ => [v[1], v[0]],
                    };
                }
            }
            s
        })
}

fn polygon() -> impl Strategy<Value = DelzantPolytope> {
    (0i64..=3, 1i64..=3, 1i64..=3, prop::collection::vec(any::<prop::sample::Index>(), 0..4)).prop_map(
        |(a, b, c, chops)| {
            let mut p =
                DelzantPolytope::from_i64s(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, -1], b), (&[-1, a], c)]).unwrap();
            for ix in chops {
                p = p.corner_chop(ix.index(p.vertices().len()), None).unwrap();
            }
            p
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_is_the_winding_number(vs in sequence()) {
        let s = UnimodularSequence::new(vs).unwrap();
        prop_assert_eq!(s.multifan().merge().degree().unwrap(), s.winding_number());
    }

    #[test]
    fn realization_round_trips(vs in sequence()) {
        let s = UnimodularSequence::new(vs).unwrap();
        let cert = realize(&s).unwrap();
        prop_assert!(cert.verify().is_ok());
        let t = &cert.template;
        prop_assert!(t.count_fixed_points() > 0);
        prop_assert_eq!(pi1_report(t).simply_connected, Some(true));
    }

    #[test]
    fn global_flip_negates_degree(vs in sequence()) {
        let mf = UnimodularSequence::new(vs).unwrap().multifan();
        let flipped = mf.flip_global();
        prop_assert_eq!(flipped.degree().unwrap(), -mf.degree().unwrap());
        prop_assert_eq!(flipped.flip_global(), mf);
    }

    #[test]
    fn chops_stay_delzant(p in polygon(), ix in any::<prop::sample::Index>()) {
        let c = p.corner_chop(ix.index(p.vertices().len()), None).unwrap();
        prop_assert!(c.is_delzant().delzant);
        prop_assert_eq!(c.vertices().len(), p.vertices().len() + 1);
        prop_assert_eq!(c.normal_fan(Orientation::Positive).unwrap().degree().unwrap(), 1);
    }

    #[test]
    fn products_with_polygons(p in polygon()) {
        let s4 = OrigamiTemplate::sphere(2).unwrap();
        let t = s4.product(&p);
        prop_assert!(t.validate().is_valid());
        prop_assert_eq!(t.count_fixed_points(), 2 * p.vertices().len());
        prop_assert_eq!(t.graph().b1, 0);
        prop_assert_eq!(t.classify().acyclic, t.graph().b1 == 0);
    }

    #[test]
    fn quotient_order_is_the_determinant(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9) {
        let gens = [LatticeVector::from_i64s(&[a, c]), LatticeVector::from_i64s(&[b, d])];
        let g = quotient_group(&gens, 2).unwrap();
        let dt = det(&gens).unwrap();
        if dt == 0 {
            prop_assert!(g.free_rank >= 1);
        } else {
            prop_assert_eq!(g.order().unwrap(), Integer::from(dt.unsigned_abs_ref().clone()));
        }
    }

    #[test]
    fn documents_round_trip(p in polygon(), vs in sequence()) {
        let mf = UnimodularSequence::new(vs).unwrap().multifan();
        match document_from_value(&multifan_to_value(&mf), None).unwrap() {
            Document::MultiFan(back) => prop_assert_eq!(back, mf),
            _ => prop_assert!(false),
        }
        match document_from_value(&polytope_to_value(&p, Some(Orientation::Negative)), None).unwrap() {
            Document::Polytope(back, o) => {
                prop_assert_eq!(back, p.clone());
                prop_assert_eq!(o, Some(Orientation::Negative));
            }
            _ => prop_assert!(false),
        }
        let sheared = p.transformed(&IntegerMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]).unwrap()).unwrap();
        match document_from_value(&polytope_to_value(&sheared, None), None).unwrap() {
            Document::Polytope(back, _) => prop_assert_eq!(back, sheared),
            _ => prop_assert!(false),
        }
        let t = OrigamiTemplate::sphere(2).unwrap().product(&p);
        match document_from_value(&template_to_value(&t), None).unwrap() {
            Document::Template(back) => prop_assert_eq!(back, t),
            _ => prop_assert!(false),
        }
    }
}
