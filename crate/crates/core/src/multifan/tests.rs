use super::*;

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

/// Edges `e1…ek`, one chamber per listed pair.
fn fan2(vs: &[[i64; 2]], chambers: &[([usize; 2], (u64, u64))]) -> MultiFan {
    let mut b = MultiFan::builder(2);
    for (i, x) in vs.iter().enumerate() {
        b = b.edge(format!("e{}", i + 1), v(x));
    }
    for (k, (c, (p, m))) in chambers.iter().enumerate() {
        b = b.chamber(format!("c{}", k + 1), &[format!("e{}", c[0] + 1), format!("e{}", c[1] + 1)], *p, *m);
    }
    b.build().unwrap()
}

fn cp2() -> MultiFan {
    fan2(&[[1, 0], [0, 1], [-1, -1]], &[([0, 1], (1, 0)), ([1, 2], (1, 0)), ([2, 0], (1, 0))])
}

/// `Δ(P, F)` of the S⁴ template: the fold identifies the legs, leaving two
/// chambers on one cone.
fn s4_template_fan() -> MultiFan {
    fan2(&[[1, 0], [0, 1]], &[([0, 1], (1, 0)), ([0, 1], (0, 1))])
}

fn square(w: (u64, u64)) -> MultiFan {
    fan2(
        &[[1, 0], [0, 1], [-1, 0], [0, -1]],
        &[([0, 1], w), ([1, 2], w), ([2, 3], w), ([3, 0], w)],
    )
}

#[test]
fn cp2_is_a_complete_nonsingular_fan() {
    let f = cp2();
    assert!(f.validate().is_valid());
    assert!(f.is_nonsingular());
    assert_eq!(f.degree().unwrap(), 1);
    assert!(f.is_complete());
}

#[test]
fn validation_violations() {
    let dep = MultiFan::builder(2)
        .edge("e1", v(&[1, 0]))
        .edge("e2", v(&[2, 0]))
        .chamber("c", &["e1", "e2"], 1, 0)
        .build()
        .unwrap();
    assert!(dep.validate().has("dependent-generators"));
    let zero = fan2(&[[1, 0], [0, 1]], &[([0, 1], (0, 0))]);
    assert!(zero.validate().has("zero-weight"));
}

#[test]
fn singular_chamber() {
    let f = fan2(&[[1, 0], [1, 2]], &[([0, 1], (1, 0))]);
    assert!(!f.is_nonsingular());
    let bare = MultiFan::builder(2).edge("a", v(&[1, 0])).edge("b", v(&[-1, 0])).build().unwrap();
    assert!(bare.is_nonsingular());
}

#[test]
fn degrees() {
    assert_eq!(s4_template_fan().degree().unwrap(), 0);
    let bare = MultiFan::builder(2).edge("a", v(&[1, 0])).edge("b", v(&[-1, 0])).build().unwrap();
    assert_eq!(bare.degree(), Err(Error::EmptyTopDimension));
    assert!(!bare.is_complete());
    // A lone quadrant is not pre-complete.
    let q = fan2(&[[1, 0], [0, 1]], &[([0, 1], (1, 0))]);
    assert!(matches!(q.degree(), Err(Error::NotPreComplete { .. })));
}

#[test]
fn projections() {
    let p = s4_template_fan().projected(&["e1"]).unwrap();
    assert_eq!(p.dim(), 1);
    assert_eq!(p.edges().len(), 1);
    assert_eq!(p.edges()[0].vector, v(&[1]));
    let mut w: Vec<_> = p.chambers().iter().map(|c| (c.w_plus, c.w_minus)).collect();
    w.sort();
    assert_eq!(w, vec![(0, 1), (1, 0)]);

    let f = cp2();
    assert_eq!(f.projected(&[] as &[&str]).unwrap(), f);
    let p = f.projected(&["e2"]).unwrap();
    let mut rays: Vec<_> = p.edges().iter().map(|e| e.vector.clone()).collect();
    rays.sort();
    assert_eq!(rays, vec![v(&[-1]), v(&[1])]);
    assert!(p.chambers().iter().all(|c| (c.w_plus, c.w_minus) == (1, 0)));
    assert!(matches!(f.projected(&["e1", "e3", "e2"]), Err(_)));
}

#[test]
fn flips() {
    let f = cp2();
    let g = f.flip_edge("e3").unwrap();
    assert_eq!(g.edge_vector("e3"), Some(&v(&[1, 1])));
    assert_eq!((g.chamber("c1").unwrap().w_plus, g.chamber("c1").unwrap().w_minus), (1, 0));
    for id in ["c2", "c3"] {
        let c = g.chamber(id).unwrap();
        assert_eq!((c.w_plus, c.w_minus), (0, 1));
    }
    assert_eq!(g.flip_edge("e3").unwrap(), f);
    assert_eq!(f.flip_edge("nope"), Err(Error::EdgeNotPresent("nope".into())));

    let h = f.flip_global();
    assert_eq!(h.edge_vector("e1"), Some(&v(&[-1, 0])));
    assert!(h.chambers().iter().all(|c| (c.w_plus, c.w_minus) == (0, 1)));
    assert_eq!(h.degree().unwrap(), -1);
    assert_eq!(h.flip_global(), f);
}

#[test]
fn diamond_of_squares() {
    let a = square((1, 0));
    let b = square((0, 1));
    let d = a.diamond(&b, "e4", "e4").unwrap();
    let merged = d.merge();
    assert_eq!(merged.chambers().len(), 2);
    let s = d.chamber_summaries();
    assert_eq!(s.len(), 4);
    // Two first and two second quadrants with opposite weights.
    let first: Vec<_> = s.iter().filter(|c| c.cone == vec![vec!["0", "1"], vec!["1", "0"]]).map(|c| c.w).collect();
    let second: Vec<_> = s.iter().filter(|c| c.cone == vec![vec!["-1", "0"], vec!["0", "1"]]).map(|c| c.w).collect();
    assert_eq!(first, vec![(0, 1), (1, 0)]);
    assert_eq!(second, vec![(0, 1), (1, 0)]);
    assert!(d.is_complete());
    assert_eq!(d.degree().unwrap(), 0);

    assert!(matches!(a.diamond(&a, "e4", "e4"), Err(Error::WeightMismatch(_))));
    assert!(matches!(a.diamond(&cp2(), "e4", "e3"), Err(Error::NeighborhoodMismatch(_))));
}

#[test]
fn diamond_of_triangles_gives_s4() {
    let t = |w| fan2(&[[1, 0], [0, 1], [-1, -1]], &[([0, 1], w), ([1, 2], w), ([2, 0], w)]);
    let d = t((1, 0)).diamond(&t((0, 1)), "e3", "e3").unwrap();
    assert_eq!(d.chambers().len(), 2);
    let m = d.merge();
    assert_eq!(m.chambers().len(), 1);
    assert_eq!((m.chambers()[0].w_plus, m.chambers()[0].w_minus), (1, 1));
    assert_eq!(d.degree().unwrap(), 0);
}

#[test]
fn blow_ups() {
    let b = cp2().blow_up("c1", 1).unwrap();
    assert_eq!(b.edges().len(), 4);
    assert!(b.edges().iter().any(|e| e.vector == v(&[1, 1])));
    assert!(b.chamber("c1").is_none());
    assert_eq!(b.chambers().len(), 4);
    assert_eq!(b.degree().unwrap(), 1);
    assert!(b.is_complete());

    let s4 = s4_template_fan().merge();
    let id = s4.chambers()[0].id.clone();
    let b = s4.blow_up(&id, 1).unwrap();
    assert_eq!((b.chamber(&id).unwrap().w_plus, b.chamber(&id).unwrap().w_minus), (0, 1));
    assert_eq!(b.chambers().iter().filter(|c| (c.w_plus, c.w_minus) == (1, 0)).count(), 2);
    assert_eq!(b.degree().unwrap(), 0);

    assert!(matches!(cp2().blow_up("c1", -1), Err(Error::InsufficientWeight { .. })));
    assert!(matches!(cp2().blow_up("zz", 1), Err(Error::ChamberNotPresent(_))));
}

#[test]
fn connected_sums() {
    let minus = fan2(&[[1, 0], [0, 1], [-1, -1]], &[([0, 1], (0, 1)), ([1, 2], (0, 1)), ([2, 0], (0, 1))]);
    let s = cp2().connected_sum(&minus, "c1", "c1", true).unwrap();
    assert_eq!(s.chambers().len(), 4);
    assert_eq!(s.degree().unwrap(), 0);
    // Literal sum keeps the (1,1) chamber.
    let lit = cp2().connected_sum(&minus, "c1", "c1", false).unwrap();
    assert_eq!(lit.chambers().len(), 5);

    let two = fan2(&[[1, 0], [0, 1]], &[([0, 1], (2, 0))]);
    let one = fan2(&[[1, 0], [0, 1]], &[([0, 1], (0, 1))]);
    let r = two.connected_sum(&one, "c1", "c1", true).unwrap();
    assert_eq!(r.chambers().len(), 1);
    assert_eq!((r.chambers()[0].w_plus, r.chambers()[0].w_minus), (1, 0));
    assert!(matches!(cp2().connected_sum(&minus, "c1", "c2", true), Err(Error::ConeMismatch(_))));
}

#[test]
fn merges() {
    let m = s4_template_fan().merge();
    assert_eq!(m.edges().len(), 2);
    let split = fan2(&[[1, 0], [0, 1], [1, 0], [0, 1]], &[([0, 1], (1, 0)), ([2, 3], (0, 1))]);
    assert_eq!(split.merge(), m);
    assert_eq!(m.chambers().len(), 1);
    assert_eq!((m.chambers()[0].w_plus, m.chambers()[0].w_minus), (1, 1));
    assert_eq!(m.merge(), m);
    assert_eq!(m.degree().unwrap(), s4_template_fan().degree().unwrap());
}

#[test]
fn signs_up_to_equivalence() {
    let s4 = s4_template_fan();
    let seq = fan2(&[[1, 0], [0, 1]], &[([0, 1], (1, 0)), ([1, 0], (0, 1))]);
    let signs = s4.merge().equivalent_up_to_signs(&seq, 20).unwrap().unwrap();
    assert!(signs.iter().all(|&s| s == 1));

    let f = cp2();
    let g = f.flip_edge("e2").unwrap();
    assert_eq!(f.equivalent_up_to_signs(&g, 20).unwrap(), Some(vec![1, -1, 1]));
    assert_eq!(f.equivalent_up_to_signs(&square((1, 0)), 20).unwrap(), None);
    assert!(matches!(f.equivalent_up_to_signs(&f, 2), Err(Error::TooLarge { .. })));
}

#[test]
fn isomorphism_ignores_labels() {
    let f = cp2();
    assert!(f.is_isomorphic(&f.relabeled("x", "y")));
    assert!(!f.is_isomorphic(&f.flip_global()));
}
