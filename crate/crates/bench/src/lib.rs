//! Inputs shared by the benchmarks.

use origami_core::realize2d::V;
use origami_core::{DelzantPolytope, Rational};

/// A unimodular sequence of length `3 + k`: the fan of `CP²` after `k`
/// insertions of sums of neighbours, which keeps it unimodular and winding
/// once.
pub fn blown_up_sequence(k: usize) -> Vec<V> {
    let mut s: Vec<V> = vec![[1, 0], [0, 1], [-1, -1]];
    for i in 0..k {
        let j = i % s.len();
        let (a, b) = (s[j], s[(j + 1) % s.len()]);
        s.insert(j + 1, [a[0] + b[0], a[1] + b[1]]);
    }
    s
}

/// A sequence winding `turns` times around the origin through the four
/// coordinate directions.
pub fn winding_sequence(turns: usize) -> Vec<V> {
    [[1, 0], [0, 1], [-1, 0], [0, -1]].iter().cycle().take(4 * turns).copied().collect()
}

/// A Delzant polygon with `3 + k` facets from corner chops of a triangle.
pub fn chopped_triangle(k: usize) -> DelzantPolytope {
    let mut p = DelzantPolytope::simplex(2, Rational::from(8)).expect("simplex");
    for _ in 0..k {
        p = p.corner_chop(0, None).expect("smooth corner");
    }
    p
}
