//! The orbit relation, the quotient space `X/T`, and the projection-map
//! profile.
//!
//! The raw relation `x ~ y ⟺ ∃t: t·x = y` is audited for reflexivity,
//! symmetry and transitivity before the quotient is built. When it is not an
//! equivalence, the partition is built from its equivalence closure and the
//! audit records that the closure was taken — the quotient stays usable and
//! the gap is surfaced instead of silently repaired.

use crate::action::GenAction;
use crate::sets::{bit, full, is_subset, members, subsets, Mask};
use crate::topology::{
    map_predicates, quotient_topology, FiniteSpace, MarkedVerdict, SpaceMap,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceAudit {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    /// True when the partition came from the equivalence closure rather
    /// than the raw relation.
    pub closure_taken: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Disjoint classes covering `X`, ordered by least member.
    pub classes: Vec<Mask>,
    pub audit: EquivalenceAudit,
}

impl OrbitPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes
            .iter()
            .position(|&c| c & bit(x) != 0)
            .expect("classes cover X")
    }
}

/// Audit the orbit relation and partition the space.
pub fn orbit_partition(a: &GenAction) -> OrbitPartition {
    let n = a.space().size();
    let reaches: Vec<Mask> = (0..n).map(|x| a.orbit(x)).collect();
    let reflexive = (0..n).all(|x| reaches[x] & bit(x) != 0);
    let symmetric =
        (0..n).all(|x| members(reaches[x]).all(|y| reaches[y] & bit(x) != 0));
    let transitive = (0..n).all(|x| members(reaches[x]).all(|y| is_subset(reaches[y], reaches[x])));
    let closure_taken = !(reflexive && symmetric && transitive);

    // Union-find over the symmetric closure; for a genuine equivalence this
    // reproduces the orbits exactly.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for x in 0..n {
        for y in members(reaches[x]) {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                let lo = rx.min(ry);
                parent[rx.max(ry)] = lo;
            }
        }
    }
    let mut classes: Vec<Mask> = Vec::new();
    let mut roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut seen: Vec<usize> = roots.clone();
    seen.sort_unstable();
    seen.dedup();
    for root in seen {
        let class = (0..n)
            .filter(|&x| roots[x] == root)
            .fold(0, |acc, x| acc | bit(x));
        classes.push(class);
    }
    roots.clear();
    OrbitPartition {
        classes,
        audit: EquivalenceAudit { reflexive, symmetric, transitive, closure_taken },
    }
}

/// The quotient of a T-space by its orbit relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    pub partition: OrbitPartition,
    pub space: FiniteSpace,
    pub projection: SpaceMap,
}

pub fn build_quotient(a: &GenAction) -> QuotientSpace {
    let partition = orbit_partition(a);
    let (space, projection) =
        quotient_topology(a.space(), &partition.classes).expect("orbit classes partition X");
    debug_assert!(projection.is_continuous());
    QuotientSpace { partition, space, projection }
}

/// Verdicts for the projection map. Parts that finiteness trivializes
/// (properness, compactness transfer, local compactness transfer) carry the
/// degenerate marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionProfile {
    pub open_map: bool,
    pub closed_map: bool,
    pub proper_literal: MarkedVerdict,
    pub proper_sufficient: bool,
    pub quotient_hausdorff: bool,
    /// `X` compact iff `X/T` compact.
    pub compact_iff: MarkedVerdict,
    /// `X` locally compact iff `X/T` locally compact.
    pub locally_compact_iff: MarkedVerdict,
}

pub fn projection_profile(q: &QuotientSpace) -> ProjectionProfile {
    let p = map_predicates(&q.projection);
    ProjectionProfile {
        open_map: p.open_map,
        closed_map: p.closed_map,
        proper_literal: p.proper_literal,
        proper_sufficient: p.proper_sufficient,
        quotient_hausdorff: q.space.is_hausdorff(),
        // both sides are always true on finite carriers
        compact_iff: MarkedVerdict::degenerate(true),
        locally_compact_iff: MarkedVerdict::degenerate(true),
    }
}

/// First subset `Y ⊆ X` with `π⁻¹(π(Y)) ≠ T·Y`, if any. For perfect actions
/// the identity holds for every subset; when the closure was taken it can
/// fail, and the failure is informative.
pub fn saturation_counterexample(a: &GenAction, q: &QuotientSpace) -> Option<Mask> {
    let n = a.space().size();
    assert!(n <= 16, "saturation check enumerates all subsets");
    subsets(full(n)).into_iter().find(|&y| {
        let via_projection = q.projection.preimage_of(q.projection.image_of(y));
        via_projection != a.saturate(y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{
        self, finite_plane_instance, self_action, sign_instance, trivial_action,
    };
    use crate::algebra;
    use crate::tgg;
    use crate::topology::{map_predicates, FiniteSpace};

    #[test]
    fn sign_instance_partition() {
        let a = sign_instance();
        let p = orbit_partition(&a);
        // X = (-1, 0, 1): classes {-1, 1} and {0}, ordered by least member
        assert_eq!(p.classes, vec![bit(0) | bit(2), bit(1)]);
        let audit = p.audit;
        assert!(audit.reflexive && audit.symmetric && audit.transitive);
        assert!(!audit.closure_taken);
    }

    #[test]
    fn perfect_actions_have_symmetric_relation() {
        let plane = finite_plane_instance();
        assert!(plane.is_perfect());
        assert!(orbit_partition(&plane).audit.symmetric);
        let rzp = tgg::with_discrete(
            algebra::right_zero_product(&algebra::cyclic_group(2), 2).unwrap(),
        );
        let a = self_action(&rzp);
        assert!(a.is_perfect());
        assert!(orbit_partition(&a).audit.symmetric);
    }

    #[test]
    fn transitive_action_gives_single_class() {
        let lz3 = tgg::with_discrete(algebra::left_zero(3));
        let p = orbit_partition(&self_action(&lz3));
        assert_eq!(p.classes, vec![full(3)]);
    }

    #[test]
    fn sign_quotient_is_two_point_discrete() {
        let q = build_quotient(&sign_instance());
        assert_eq!(q.partition.class_count(), 2);
        assert!(q.space.is_discrete());
        assert!(q.projection.is_continuous());
        assert_eq!(q.space.name(0), "[-1]");
        assert_eq!(q.space.name(1), "[0]");
    }

    #[test]
    fn plane_quotient_is_not_hausdorff() {
        let a = finite_plane_instance();
        let q = build_quotient(&a);
        assert_eq!(q.partition.class_count(), 3);
        // [z] is its own class and its only neighbourhood is everything
        let z_class = q.partition.class_of(0);
        assert_eq!(q.space.min_nbhd(z_class), full(3));
        let profile = projection_profile(&q);
        assert!(!profile.quotient_hausdorff);
        assert!(profile.open_map, "perfect action: π is open");
    }

    #[test]
    fn trivial_action_quotient_is_homeomorphic_copy() {
        let c2 = tgg::with_discrete(algebra::cyclic_group(2));
        let x = FiniteSpace::from_subbasis(
            vec!["a".into(), "b".into()],
            &[bit(0)],
        )
        .unwrap();
        let q = build_quotient(&trivial_action(&c2, &x));
        assert_eq!(q.partition.class_count(), 2);
        assert!(map_predicates(&q.projection).homeomorphism);
        let profile = projection_profile(&q);
        assert!(profile.open_map && profile.closed_map);
    }

    #[test]
    fn projection_is_surjective_and_continuous() {
        let actions = vec![
            sign_instance(),
            finite_plane_instance(),
            self_action(&tgg::with_discrete(algebra::cyclic_group(4))),
        ];
        for a in actions {
            let q = build_quotient(&a);
            assert!(q.projection.is_continuous());
            assert_eq!(
                q.projection.image_of(a.space().universe()),
                q.space.universe()
            );
        }
    }

    #[test]
    fn quotient_defining_property_over_all_class_sets() {
        for a in [sign_instance(), finite_plane_instance()] {
            let q = build_quotient(&a);
            for u in subsets(full(q.partition.class_count())) {
                assert_eq!(
                    q.space.is_open(u),
                    a.space().is_open(q.projection.preimage_of(u))
                );
            }
        }
    }

    #[test]
    fn saturation_identity_for_perfect_actions() {
        let rzp = tgg::with_discrete(
            algebra::right_zero_product(&algebra::cyclic_group(2), 2).unwrap(),
        );
        for a in [finite_plane_instance(), self_action(&rzp)] {
            assert!(a.is_perfect());
            let q = build_quotient(&a);
            assert_eq!(saturation_counterexample(&a, &q), None);
        }
        // the sign instance is not perfect, but its relation is already an
        // equivalence, so the identity still holds
        let a = sign_instance();
        let q = build_quotient(&a);
        assert_eq!(saturation_counterexample(&a, &q), None);
    }

    #[test]
    fn quotient_emits_valid_space_for_reuse() {
        // quotients of corpus actions can themselves be used as spaces
        let a = action::sign_instance();
        let q = build_quotient(&a);
        let c2 = tgg::with_discrete(algebra::cyclic_group(2));
        let t = trivial_action(&c2, &q.space);
        assert_eq!(t.space().size(), 2);
    }
}
