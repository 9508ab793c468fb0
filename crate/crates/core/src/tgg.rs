//! Topological generalized groups: a generalized group and a finite
//! topology on one carrier, with continuity of inversion (`m1`),
//! multiplication (`m2`) and the identity map `t ↦ e(t)` checked, plus the
//! compatibility identities
//!
//! - eq1: `e(s·t) = e(s)·e(t)`
//! - eq2: `e(s)·e(t)·e(s) = e(s)` (a consequence of eq1)
//!
//! Combinations that fail the definition are retained as relaxed instances
//! with their report flags, because hypothesis-violating instances are what
//! the law harness hunts with.

use crate::algebra::{self, GenGroup};
use crate::topology::{pair_index, FiniteSpace, SpaceMap, TopologyError};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TggReport {
    pub hausdorff: bool,
    pub m1_continuous: bool,
    pub m2_continuous: bool,
    pub e_continuous: bool,
    pub eq1_holds: bool,
    pub eq2_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TggError {
    #[error("algebra has order {algebra} but the space has {space} points")]
    CarrierMismatch { algebra: usize, space: usize },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A generalized group with a topology on its carrier and the validation
/// report. Usable downstream (`well_formed`) iff the space is Hausdorff,
/// `m1` and `m2` are continuous and eq1 holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopGenGroup {
    algebra: GenGroup,
    space: FiniteSpace,
    report: TggReport,
}

impl TopGenGroup {
    pub fn algebra(&self) -> &GenGroup {
        &self.algebra
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn report(&self) -> TggReport {
        self.report
    }

    pub fn order(&self) -> usize {
        self.algebra.order()
    }

    pub fn well_formed(&self) -> bool {
        let r = self.report;
        r.hausdorff && r.m1_continuous && r.m2_continuous && r.eq1_holds
    }

    pub fn identity_set(&self) -> crate::sets::Mask {
        self.algebra.identity_set()
    }

    /// Inversion as a point map on the carrier space.
    pub fn m1(&self) -> SpaceMap {
        let table = (0..self.order()).map(|t| self.algebra.inv(t)).collect();
        SpaceMap::new(self.space.clone(), self.space.clone(), table).expect("total")
    }

    /// `t ↦ e(t)` as a point map.
    pub fn e_map(&self) -> SpaceMap {
        let table = (0..self.order()).map(|t| self.algebra.e(t)).collect();
        SpaceMap::new(self.space.clone(), self.space.clone(), table).expect("total")
    }

    /// Multiplication as a point map on the product space `T × T`.
    pub fn m2(&self) -> Result<SpaceMap, TopologyError> {
        let n = self.order();
        let product = FiniteSpace::product(&self.space, &self.space)?;
        let mut table = vec![0; n * n];
        for s in 0..n {
            for t in 0..n {
                table[pair_index(s, t, n)] = self.algebra.mul(s, t);
            }
        }
        Ok(SpaceMap::new(product, self.space.clone(), table).expect("total"))
    }
}

/// Check all structure maps and identities over a shared carrier. The
/// result is always returned (flags record failures); only a size mismatch
/// or an oversized product is an error.
pub fn validate_tgg(algebra: GenGroup, space: FiniteSpace) -> Result<TopGenGroup, TggError> {
    if algebra.order() != space.size() {
        return Err(TggError::CarrierMismatch { algebra: algebra.order(), space: space.size() });
    }
    let n = algebra.order();
    let eq1_holds = algebra.is_eq1_compatible();
    let eq2_holds = (0..n).all(|s| {
        (0..n).all(|t| {
            let e_s = algebra.e(s);
            algebra.mul(algebra.mul(e_s, algebra.e(t)), e_s) == e_s
        })
    });
    assert!(
        !eq1_holds || eq2_holds,
        "eq1 holds but eq2 fails: harness bug, eq2 is derivable from eq1"
    );
    let candidate = TopGenGroup {
        algebra,
        space: space.clone(),
        report: TggReport {
            hausdorff: space.is_hausdorff(),
            m1_continuous: false,
            m2_continuous: false,
            e_continuous: false,
            eq1_holds,
            eq2_holds,
        },
    };
    let m1_continuous = candidate.m1().is_continuous();
    let m2_continuous = candidate.m2()?.is_continuous();
    let e_continuous = candidate.e_map().is_continuous();
    Ok(TopGenGroup {
        report: TggReport {
            m1_continuous,
            m2_continuous,
            e_continuous,
            ..candidate.report
        },
        ..candidate
    })
}

/// A generalized group with the discrete topology — the only strict option
/// on a finite carrier, since every finite Hausdorff space is discrete.
pub fn with_discrete(algebra: GenGroup) -> TopGenGroup {
    let space = FiniteSpace::discrete(algebra.names().to_vec()).expect("nonempty carrier");
    validate_tgg(algebra, space).expect("carrier sizes agree")
}

/// The named strict corpus: small groups, left/right zero semigroups and
/// zero products, all with the discrete topology. Deterministic order.
pub fn canonical_instances() -> Vec<(String, TopGenGroup)> {
    let c2 = algebra::cyclic_group(2);
    let c3 = algebra::cyclic_group(3);
    let entries: Vec<(&str, GenGroup)> = vec![
        ("C1", algebra::cyclic_group(1)),
        ("C2", algebra::cyclic_group(2)),
        ("C3", algebra::cyclic_group(3)),
        ("C4", algebra::cyclic_group(4)),
        ("V4", algebra::klein_four()),
        ("LZ2", algebra::left_zero(2)),
        ("LZ3", algebra::left_zero(3)),
        ("RZ2", algebra::right_zero(2)),
        ("RZ3", algebra::right_zero(3)),
        ("RZP_C2_2", algebra::right_zero_product(&c2, 2).unwrap()),
        ("RZP_C2_3", algebra::right_zero_product(&c2, 3).unwrap()),
        ("RZP_C3_2", algebra::right_zero_product(&c3, 2).unwrap()),
        ("LZP_C2_2", algebra::left_zero_product(&c2, 2).unwrap()),
        ("LZP_C3_2", algebra::left_zero_product(&c3, 2).unwrap()),
    ];
    entries
        .into_iter()
        .map(|(name, g)| (name.to_string(), with_discrete(g)))
        .collect()
}

/// Non-well-formed instances kept for counterexample search: non-Hausdorff
/// topologies on LZ2 with continuous structure maps, and a Rees matrix
/// semigroup whose sandwich matrix breaks eq1.
pub fn relaxed_instances() -> Vec<(String, TopGenGroup)> {
    let lz2 = algebra::left_zero(2);
    let sierpinski = FiniteSpace::from_subbasis(
        lz2.names().to_vec(),
        &[crate::sets::bit(0)],
    )
    .unwrap();
    let indiscrete = FiniteSpace::indiscrete(lz2.names().to_vec()).unwrap();
    let bad_rees = algebra::rees_matrix(
        &algebra::cyclic_group(2),
        2,
        2,
        &[vec![0, 0], vec![0, 1]],
    )
    .unwrap();
    debug_assert!(!bad_rees.eq1_compatible);
    vec![
        (
            "LZ2_sierpinski".to_string(),
            validate_tgg(lz2.clone(), sierpinski).unwrap(),
        ),
        (
            "LZ2_indiscrete".to_string(),
            validate_tgg(lz2, indiscrete).unwrap(),
        ),
        ("REES_C2_twisted".to_string(), with_discrete(bad_rees.group)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{bit, members};

    #[test]
    fn rzp_c2_2_discrete_is_well_formed() {
        let g = algebra::right_zero_product(&algebra::cyclic_group(2), 2).unwrap();
        let t = with_discrete(g);
        let r = t.report();
        assert!(r.hausdorff && r.m1_continuous && r.m2_continuous && r.e_continuous);
        assert!(r.eq1_holds && r.eq2_holds);
        assert!(t.well_formed());
        // e((g,λ))·e((h,μ)) = (0,λ)(0,μ) = (0,μ) = e((gh,μ))
        let a = t.algebra();
        for s in 0..4 {
            for u in 0..4 {
                assert_eq!(a.e(a.mul(s, u)), a.mul(a.e(s), a.e(u)));
            }
        }
    }

    #[test]
    fn lz2_discrete_all_true() {
        let t = with_discrete(algebra::left_zero(2));
        let r = t.report();
        assert!(r.hausdorff && r.m1_continuous && r.m2_continuous && r.e_continuous);
        assert!(r.eq1_holds && r.eq2_holds);
    }

    #[test]
    fn twisted_rees_is_kept_relaxed_with_eq1_false() {
        let relaxed = relaxed_instances();
        let (_, rees) = relaxed.iter().find(|(n, _)| n == "REES_C2_twisted").unwrap();
        assert!(!rees.report().eq1_holds);
        assert!(!rees.well_formed());
        // still Hausdorff and continuous — only the identity compatibility
        // is broken
        assert!(rees.report().hausdorff && rees.report().m2_continuous);
    }

    #[test]
    fn sierpinski_lz2_has_continuous_maps_but_is_relaxed() {
        let relaxed = relaxed_instances();
        let (_, t) = relaxed.iter().find(|(n, _)| n == "LZ2_sierpinski").unwrap();
        let r = t.report();
        assert!(!r.hausdorff);
        assert!(r.m1_continuous && r.m2_continuous && r.e_continuous && r.eq1_holds);
        assert!(!t.well_formed());
    }

    #[test]
    fn carrier_mismatch_is_an_error() {
        let g = algebra::left_zero(2);
        let space = FiniteSpace::discrete(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert!(matches!(
            validate_tgg(g, space),
            Err(TggError::CarrierMismatch { algebra: 2, space: 3 })
        ));
    }

    #[test]
    fn corpus_members_are_well_formed() {
        for (name, t) in canonical_instances() {
            assert!(t.well_formed(), "{name}");
            assert!(t.report().e_continuous, "{name}");
        }
    }

    #[test]
    fn corpus_identity_sets() {
        let corpus = canonical_instances();
        let rzp = &corpus.iter().find(|(n, _)| n == "RZP_C2_2").unwrap().1;
        assert_eq!(rzp.identity_set().count_ones(), 2);
        let c3 = &corpus.iter().find(|(n, _)| n == "C3").unwrap().1;
        assert_eq!(c3.identity_set(), bit(0));
    }

    #[test]
    fn product_inverse_formula_over_corpus() {
        // (s·t)⁻¹ = e(s)·t⁻¹·s⁻¹·e(t) on every well-formed corpus member
        for (name, t) in canonical_instances() {
            let a = t.algebra();
            for s in 0..a.order() {
                for u in 0..a.order() {
                    let lhs = a.inv(a.mul(s, u));
                    let rhs = a.mul(a.mul(a.mul(a.e(s), a.inv(u)), a.inv(s)), a.e(u));
                    assert_eq!(lhs, rhs, "{name}: s={s}, t={u}");
                }
            }
        }
    }

    #[test]
    fn eclasses_are_closed_groups_in_discrete_corpus() {
        for (name, t) in canonical_instances() {
            for class in crate::algebra::eclass_decompose(t.algebra()) {
                assert!(class.is_group, "{name}");
                assert!(t.space().is_closed(class.members), "{name}");
            }
            // classes partition the carrier
            let union = crate::algebra::eclass_decompose(t.algebra())
                .iter()
                .fold(0, |acc, c| acc | c.members);
            assert_eq!(union, t.space().universe());
            let total: u32 = crate::algebra::eclass_decompose(t.algebra())
                .iter()
                .map(|c| c.members.count_ones())
                .sum();
            assert_eq!(total as usize, t.order());
            let _ = members(union);
        }
    }
}
