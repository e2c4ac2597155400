use super::*;
use crate::lattice::LatticeVector;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn square() -> DelzantPolytope {
    DelzantPolytope::from_i64s(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 1), (&[0, -1], 1)]).unwrap()
}

fn piece(p: DelzantPolytope, s: i64) -> TemplatePiece {
    TemplatePiece { polytope: p, orientation: Orientation::from_sign(s) }
}

/// Two oppositely oriented squares; `folds` lists facet indices paired across.
fn squares(folds: &[usize]) -> OrigamiTemplate {
    OrigamiTemplate::new(
        vec![piece(square(), 1), piece(square(), -1)],
        folds.iter().map(|&f| FoldEntry::Pair(FacetRef::new(0, f), FacetRef::new(1, f))).collect(),
    )
    .unwrap()
}

#[test]
fn s4_template() {
    let t = OrigamiTemplate::sphere(2).unwrap();
    assert!(t.validate().is_valid());
    assert_eq!(t.classify(), Classification { cooriented: true, oriented: true, acyclic: true });
    let g = t.graph();
    assert_eq!((g.vertices, g.edges.len(), g.b1), (2, 1, 0));
    assert_eq!(t.count_fixed_points(), 2);
    assert!(!t.faces_connected());
    let m = t.multifan().unwrap();
    assert_eq!(m.edges().len(), 2);
    let merged = m.merge();
    assert_eq!(merged.chambers().len(), 1);
    assert_eq!((merged.chambers()[0].w_plus, merged.chambers()[0].w_minus), (1, 1));
}

#[test]
fn spheres_in_other_dimensions() {
    let s1 = OrigamiTemplate::sphere(1).unwrap();
    assert!(s1.validate().is_valid());
    assert_eq!(s1.count_fixed_points(), 2);
    let s3 = OrigamiTemplate::sphere(3).unwrap();
    assert!(s3.validate().is_valid());
    assert_eq!(s3.facet_classes().len(), 3);
    let m = s3.multifan().unwrap().merge();
    assert_eq!(m.chambers().len(), 1);
    assert_eq!((m.chambers()[0].w_plus, m.chambers()[0].w_minus), (1, 1));
    assert!(OrigamiTemplate::sphere(0).is_err());
}

#[test]
fn square_templates() {
    let minus = squares(&[3]);
    assert!(minus.validate().is_valid());
    assert!(minus.classify().acyclic);
    let m = minus.multifan().unwrap();
    assert_eq!(m.chambers().len(), 4);
    assert!(m.is_complete());
    assert_eq!(m.degree().unwrap(), 0);

    let pm = squares(&[1, 3]);
    assert!(pm.validate().is_valid());
    assert_eq!(pm.classify(), Classification { cooriented: true, oriented: true, acyclic: false });
    assert_eq!(pm.graph().b1, 1);
    assert_eq!(pm.count_fixed_points(), 0);
    let m = pm.multifan().unwrap();
    let mut rays: Vec<_> = m.merge().edges().iter().map(|e| e.vector.clone()).collect();
    rays.sort();
    assert_eq!(rays, vec![LatticeVector::from_i64s(&[-1, 0]), LatticeVector::from_i64s(&[1, 0])]);
    assert!(m.chambers().is_empty());

    assert!(OrigamiTemplate::single(square(), None).faces_connected());
    assert_eq!(OrigamiTemplate::single(square(), None).graph().b1, 0);
}

#[test]
fn violations() {
    // The folded top edge's neighbour is folded as well.
    let mut t = squares(&[3]);
    t.folds.push(FoldEntry::Single(FacetRef::new(0, 0)));
    assert!(t.validate().has("O2"));

    let far = DelzantPolytope::from_i64s(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 1), (&[0, -1], 2)]).unwrap();
    let t = OrigamiTemplate::new(
        vec![piece(square(), 1), piece(far, -1)],
        vec![FoldEntry::Pair(FacetRef::new(0, 3), FacetRef::new(1, 3))],
    )
    .unwrap();
    assert!(t.validate().has("O1"));

    let t = OrigamiTemplate::new(vec![piece(square(), 1), piece(square(), -1)], vec![]).unwrap();
    assert!(t.validate().has("O3"));

    let skew = DelzantPolytope::from_i64s(2, &[(&[1, 0], 0), (&[1, 2], 0), (&[-1, -1], 3)]).unwrap();
    assert!(OrigamiTemplate::single(skew, None).validate().has("not-delzant"));

    assert!(OrigamiTemplate::new(vec![piece(square(), 1)], vec![FoldEntry::Pair(FacetRef::new(0, 1), FacetRef::new(0, 1))]).is_err());
    assert!(OrigamiTemplate::new(vec![piece(square(), 1)], vec![FoldEntry::Single(FacetRef::new(0, 9))]).is_err());
}

#[test]
fn single_folds_are_not_cooriented() {
    let t = OrigamiTemplate::new(vec![piece(square(), 1)], vec![FoldEntry::Single(FacetRef::new(0, 3))]).unwrap();
    assert!(t.validate().is_valid());
    let c = t.classify();
    assert!(!c.cooriented && !c.oriented);
    assert_eq!(t.count_fixed_points(), 2);
    assert_eq!(t.multifan(), Err(Error::NotOriented));
}

#[test]
fn diamonds() {
    let tri = DelzantPolytope::simplex(2, q(1)).unwrap();
    let a = OrigamiTemplate::single(tri.clone(), Some(Orientation::Positive));
    let b = a.reversed();
    let d = a.diamond(&b, FacetRef::new(0, 2), FacetRef::new(0, 2)).unwrap();
    assert_eq!(d, OrigamiTemplate::sphere(2).unwrap());
    assert_eq!(a.diamond(&a, FacetRef::new(0, 2), FacetRef::new(0, 2)), Err(Error::SameOrientation));
    let bigger = OrigamiTemplate::single(DelzantPolytope::simplex(2, q(2)).unwrap(), Some(Orientation::Negative));
    assert!(matches!(a.diamond(&bigger, FacetRef::new(0, 2), FacetRef::new(0, 2)), Err(Error::NeighborhoodMismatch(_))));
    // Facet 0 touches the fold.
    assert!(matches!(d.diamond(&b, FacetRef::new(0, 0), FacetRef::new(0, 0)), Err(Error::NotNonFolded(_))));

    // Δ of the glued template is the diamond of the pieces' fans.
    let lhs = d.multifan().unwrap();
    let rhs = tri
        .normal_fan(Orientation::Positive)
        .unwrap()
        .diamond(&tri.normal_fan(Orientation::Negative).unwrap(), &edge_label(&a, 2), &edge_label(&b, 2))
        .unwrap();
    assert!(lhs.merge().is_isomorphic(&rhs.merge()));
}

fn edge_label(t: &OrigamiTemplate, facet: usize) -> String {
    let fan = t.polytope(0).normal_fan(t.pieces()[0].orientation.unwrap()).unwrap();
    let n = &t.polytope(0).facets()[facet].normal;
    fan.edges().iter().find(|e| &e.vector == n).unwrap().label.clone()
}

#[test]
fn connected_sums() {
    let s4 = OrigamiTemplate::sphere(2).unwrap();
    // The right-angle corner sits at the origin in both copies.
    let corner = |t: &OrigamiTemplate, p: usize| VertexRef {
        polytope: p,
        vertex: t.polytope(p).vertex_index(&[q(0), q(0)]).unwrap(),
    };
    let other = s4.reversed();
    let sum = s4.connected_sum(&other, corner(&s4, 0), corner(&other, 0)).unwrap();
    assert!(sum.validate().is_valid());
    assert_eq!(sum.count_fixed_points(), 2);
    assert!(sum.classify().oriented);

    let on_fold = VertexRef { polytope: 0, vertex: s4.polytope(0).vertex_index(&[q(1), q(0)]).unwrap() };
    assert!(matches!(s4.connected_sum(&other, on_fold, corner(&other, 0)), Err(Error::VertexOnFold(_))));
    assert_eq!(s4.connected_sum(&s4, corner(&s4, 0), corner(&s4, 0)), Err(Error::SameOrientation));
}

#[test]
fn products_and_transforms() {
    let s4 = OrigamiTemplate::sphere(2).unwrap();
    let i = DelzantPolytope::interval(q(0), q(1)).unwrap();
    let p = s4.product(&i);
    assert_eq!(p.dim(), 3);
    assert!(p.validate().is_valid());
    assert_eq!(p.count_fixed_points(), 4);
    assert_eq!(s4.product(&DelzantPolytope::point()), s4);
    assert_eq!(squares(&[1, 3]).product(&i).graph().b1, 1);

    let swap = IntegerMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
    let t = s4.transformed(&swap).unwrap();
    assert!(t.validate().is_valid());
    assert_eq!(t.pieces()[0].orientation, Some(Orientation::Negative));
    let shear = IntegerMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
    let t = s4.transformed(&shear).unwrap();
    assert!(t.validate().is_valid());
    assert_eq!(t.pieces()[0].orientation, Some(Orientation::Positive));
    assert!(s4.transformed(&IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]).unwrap()).is_err());

    assert!(s4.translated(&[q(3), q(-1)]).validate().is_valid());
    assert_eq!(s4.scaled(&q(2)).unwrap().count_fixed_points(), 2);
}
