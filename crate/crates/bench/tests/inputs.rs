use origami_bench::{blown_up_sequence, chopped_triangle, winding_sequence};
use origami_core::{Orientation, UnimodularSequence};

#[test]
fn benchmark_inputs_are_well_formed() {
    for k in 0..12 {
        let s = UnimodularSequence::new(blown_up_sequence(k)).unwrap();
        assert_eq!(s.winding_number(), 1);
    }
    let w = UnimodularSequence::new(winding_sequence(3)).unwrap();
    assert_eq!(w.winding_number(), 3);
    let p = chopped_triangle(5);
    assert_eq!(p.facets().len(), 8);
    assert_eq!(p.normal_fan(Orientation::Positive).unwrap().degree().unwrap(), 1);
}
