use super::*;

fn seq(vs: &[V]) -> UnimodularSequence {
    UnimodularSequence::new(vs.to_vec()).unwrap()
}

#[test]
fn unimodularity() {
    assert!(is_unimodular(&[[1, 0], [0, 1], [-1, -1]]).unwrap());
    assert!(is_unimodular(&[[1, 0], [2, 1]]).unwrap());
    assert!(!is_unimodular(&[[1, 0], [2, 0]]).unwrap_or(false));
    assert!(matches!(is_unimodular(&[[2, 0], [0, 1]]), Err(Error::NonPrimitiveVector(_))));
    assert!(matches!(UnimodularSequence::new(vec![[1, 0], [1, 0]]), Err(Error::NotUnimodular(_))));
}

#[test]
fn winding_examples() {
    assert_eq!(seq(&[[1, 0], [0, 1], [-1, -1]]).winding_number(), 1);
    assert_eq!(seq(&[[1, 0], [0, 1], [1, 1]]).winding_number(), 0);
    assert_eq!(seq(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).winding_number(), 1);
    assert_eq!(seq(&[[1, 0], [0, -1], [-1, 0], [0, 1]]).winding_number(), -1);
    assert_eq!(seq(&[[1, 0], [0, 1]]).winding_number(), 0);
}

#[test]
fn sequence_fans() {
    let cp2 = seq(&[[1, 0], [0, 1], [-1, -1]]).multifan();
    assert!(cp2.validate().is_valid());
    assert_eq!(cp2.degree().unwrap(), 1);
    assert!(cp2.is_complete());
    assert!(cp2.is_nonsingular());

    let s4 = seq(&[[1, 0], [0, 1]]).multifan().merge();
    assert_eq!(s4.chambers().len(), 1);
    assert_eq!((s4.chambers()[0].w_plus, s4.chambers()[0].w_minus), (1, 1));

    let mf = seq(&[[1, 0], [0, 1], [1, 1]]).multifan();
    let w: Vec<(u64, u64)> = mf.chambers().iter().map(|c| (c.w_plus, c.w_minus)).collect();
    assert_eq!(w, vec![(1, 0), (0, 1), (0, 1)]);
    assert_eq!(mf.degree().unwrap(), 0);
}

#[test]
fn reduce_examples() {
    let r = seq(&[[1, 0], [0, 1], [-1, 1], [0, -1]]).reduce_step().unwrap();
    assert_eq!((r.j, r.a), (3, 0));
    let r = seq(&[[1, 0], [0, 1], [-1, -1]]).reduce_step().unwrap();
    assert_eq!((r.j, r.a, r.eps), (3, 1, (1, 1)));
    let r = seq(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).reduce_step().unwrap();
    assert_eq!((r.j, r.a), (1, 0));
}

#[test]
fn canonical_forms() {
    let a = seq(&[[1, 0], [0, 1], [-1, -1]]);
    let c = a.canonical_form();
    for r in 0..3 {
        let mut v = a.vectors().to_vec();
        v.rotate_left(r);
        assert_eq!(seq(&v).canonical_form(), c);
    }
    assert_eq!(a.with_signs(&[1, -1, -1]).canonical_form(), c);
    let b = seq(&[[1, 0], [0, 1], [-1, 1], [0, -1]]);
    let mut rev = b.vectors().to_vec();
    rev.reverse();
    assert_eq!(seq(&rev).canonical_form(), b.canonical_form());
    assert_ne!(seq(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).canonical_form(), c);
    // Invariance under GL(2, Z).
    let m = [[2, 1], [1, 1]];
    let moved: Vec<V> = b.vectors().iter().map(|&v| apply(m, v)).collect();
    assert_eq!(seq(&moved).canonical_form(), b.canonical_form());
}

#[test]
fn realize_sphere() {
    let c = realize(&seq(&[[1, 0], [0, 1]])).unwrap();
    assert_eq!(c.signs, vec![1, 1]);
    assert_eq!(c.template.pieces().len(), 2);
    assert_eq!(c.template.folds().len(), 1);
}

#[test]
fn realize_triangle() {
    let c = realize(&seq(&[[1, 0], [0, 1], [-1, -1]])).unwrap();
    assert_eq!(c.signs, vec![1, 1, 1]);
    assert_eq!(c.template.pieces().len(), 1);
    assert!(c.template.folds().is_empty());
}

#[test]
fn realize_three_term_cases() {
    for v3 in [[1, -1], [1, 1], [-1, 1]] {
        let c = realize(&seq(&[[1, 0], [0, 1], v3])).unwrap();
        assert_eq!(c.signs, vec![1, 1, 1], "{v3:?}");
    }
}

#[test]
fn realize_hirzebruch_like() {
    let c = realize(&seq(&[[1, 0], [0, 1], [-1, 1], [0, -1]])).unwrap();
    assert!(c.trace.iter().any(|s| matches!(s, TraceStep::Reduce { a: 0, d: 4, .. })));
    c.verify().unwrap();
}

#[test]
fn realize_small_exhaustive() {
    // Every unimodular sequence of length ≤ 5 with entries in [-2, 2].
    let vals: Vec<V> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| [a, b]))
        .filter(|v| gcd(v[0], v[1]) == 1)
        .collect();
    let mut count = 0;
    let mut stack: Vec<Vec<V>> = vals.iter().map(|&v| vec![v]).collect();
    while let Some(s) = stack.pop() {
        let last = *s.last().unwrap();
        if s.len() >= 2 && det(last, s[0]).abs() == 1 {
            let q = seq(&s);
            let c = realize(&q).unwrap_or_else(|e| panic!("{q}: {e}"));
            assert_eq!(q.multifan().merge().degree().unwrap(), q.winding_number(), "{q}");
            assert_eq!(c.signs.len(), s.len());
            count += 1;
        }
        if s.len() < 5 {
            for &v in &vals {
                if det(last, v).abs() == 1 {
                    let mut t = s.clone();
                    t.push(v);
                    stack.push(t);
                }
            }
        }
    }
    assert!(count > 1000, "{count}");
}
