//! `N_Δ`, `N/N_Δ` and the fundamental-group bounds derived from a template.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{hermite_normal_form, quotient_group, AbelianGroupSNF, IntegerMatrix, LatticeVector};
use crate::multifan::MultiFan;
use crate::template::{FacetRef, OrigamiTemplate};

/// The sublattice spanned by the edge vectors: a basis (as columns) and the
/// quotient `N/N_Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NDelta {
    pub basis: IntegerMatrix,
    pub rank: usize,
    pub quotient: AbelianGroupSNF,
}

pub fn n_delta(mf: &MultiFan) -> NDelta {
    let gens: Vec<LatticeVector> = mf.edges().iter().map(|e| e.vector.clone()).collect();
    lattice_data(&gens, mf.dim()).expect("edge vectors have the fan's dimension")
}

fn lattice_data(gens: &[LatticeVector], n: usize) -> Result<NDelta> {
    let hnf = hermite_normal_form(gens, n)?;
    let basis = IntegerMatrix::from_columns(n, &hnf)?;
    Ok(NDelta { basis, rank: hnf.len(), quotient: quotient_group(gens, n)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Report {
    /// `b₁(Γ)`, the rank of `π₁(M/T)`.
    pub orbit_free_rank: usize,
    pub n_delta_quotient: AbelianGroupSNF,
    pub n_delta_rank: usize,
    /// `None` when the template is not coörientable: acyclicity no longer
    /// decides simple connectivity there.
    pub simply_connected: Option<bool>,
    pub structure_note: String,
    /// `π₁(M)` is only bounded (as a quotient), never computed.
    pub bound_only: bool,
    pub warnings: Vec<String>,
}

impl fmt::Display for Pi1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure_note)
    }
}

pub fn pi1_report(t: &OrigamiTemplate) -> Pi1Report {
    let g = t.graph();
    let class = t.classify();
    let n = t.dim();
    let mut warnings = Vec::new();
    // Edges of Δ(P, F) are exactly the normals of the facets that survive the
    // diamonds, i.e. of the unfolded facets; use them directly when the
    // template carries no orientation.
    let nd = match t.multifan() {
        Ok(mf) => n_delta(&mf),
        Err(_) => {
            let folded = t.folded_facets();
            let gens: Vec<LatticeVector> = t
                .pieces()
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    let folded = &folded;
                    p.polytope
                        .facets()
                        .iter()
                        .enumerate()
                        .filter(move |(j, _)| !folded.contains(&FacetRef::new(i, *j)))
                        .map(|(_, f)| f.normal.clone())
                })
                .collect();
            lattice_data(&gens, n).expect("normals have the template's dimension")
        }
    };
    if n > 0 && nd.rank + 1 < n {
        warnings.push(format!("N_Δ has rank {} < n − 1 = {}", nd.rank, n - 1));
    }
    let simply_connected = class.cooriented.then_some(class.acyclic);
    let structure_note = match simply_connected {
        Some(true) => "simply connected".to_string(),
        _ => {
            let mut s = format!("quotient of (N/N_Δ) × F_{} = ({}) × F_{}", g.b1, nd.quotient, g.b1);
            if simply_connected.is_none() {
                s.push_str("; not coörientable, simple connectivity undecided");
            }
            s
        }
    };
    Pi1Report {
        orbit_free_rank: g.b1,
        n_delta_quotient: nd.quotient,
        n_delta_rank: nd.rank,
        simply_connected,
        structure_note,
        bound_only: simply_connected != Some(true),
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AbelianGroupSNF;
    use crate::multifan::MultiFan;
    use crate::Integer;

    fn fan(vs: &[[i64; 2]]) -> MultiFan {
        let mut b = MultiFan::builder(2);
        for (i, v) in vs.iter().enumerate() {
            b = b.edge(format!("e{i}"), LatticeVector::from_i64s(v));
        }
        b.build().unwrap()
    }

    #[test]
    fn cp2_lattice_is_everything() {
        let nd = n_delta(&fan(&[[1, 0], [0, 1], [-1, -1]]));
        assert!(nd.quotient.is_trivial());
        assert_eq!(nd.rank, 2);
    }

    #[test]
    fn opposite_pair_leaves_infinite_cyclic() {
        let nd = n_delta(&fan(&[[1, 0], [-1, 0]]));
        assert_eq!(nd.quotient, AbelianGroupSNF { free_rank: 1, torsion: vec![] });
        assert_eq!(nd.rank, 1);
    }

    #[test]
    fn index_two_sublattice() {
        let nd = n_delta(&fan(&[[1, 0], [1, 2]]));
        assert_eq!(nd.quotient, AbelianGroupSNF { free_rank: 0, torsion: vec![Integer::from(2)] });
        assert_eq!(nd.quotient.to_string(), "Z/2");
    }

    #[test]
    fn sphere_is_simply_connected() {
        let t = OrigamiTemplate::sphere(2).unwrap();
        let r = pi1_report(&t);
        assert_eq!(r.simply_connected, Some(true));
        assert_eq!(r.orbit_free_rank, 0);
        assert!(!r.bound_only);
        assert!(r.n_delta_quotient.is_trivial());
    }
}
