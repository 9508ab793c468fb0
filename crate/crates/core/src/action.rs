//! Generalized actions and T-spaces.
//!
//! An action of a topological generalized group `T` on a finite space `X`
//! is a table `λ: T × X → X` with
//!
//! - axiom (i): `λ(s, λ(t,x)) = λ(s·t, x)`,
//! - axiom (ii): every `x` is fixed by some idempotent `e(t)`,
//! - `λ` continuous on the product space `T × X`.
//!
//! Actions are stored as explicit tables, never as code, so the axioms and
//! continuity are decidable by enumeration.

use crate::algebra::GenGroup;
use crate::sets::{bit, full, members, Mask};
use crate::tgg::{self, TopGenGroup};
use crate::topology::{
    map_predicates, pair_index, FiniteSpace, MarkedVerdict, SpaceMap, TopologyError,
};
use serde::Serialize;
use std::fmt;

/// Validation failures, itemized with least witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActionViolations {
    /// Least `(s,t,x)` with `s·(t·x) ≠ (s·t)·x`.
    pub axiom1: Option<(usize, usize, usize)>,
    /// Least `x` not fixed by any idempotent.
    pub axiom2: Option<usize>,
    /// A basis open of `X` whose preimage under `λ` is not open.
    pub continuity: Option<Mask>,
}

impl ActionViolations {
    pub fn is_empty(&self) -> bool {
        self.axiom1.is_none() && self.axiom2.is_none() && self.continuity.is_none()
    }
}

impl fmt::Display for ActionViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        if let Some((s, t, x)) = self.axiom1 {
            write!(f, "axiom (i) fails at (s={s}, t={t}, x={x})")?;
            sep = "; ";
        }
        if let Some(x) = self.axiom2 {
            write!(f, "{sep}axiom (ii) fails at x={x} (no idempotent fixes it)")?;
            sep = "; ";
        }
        if let Some(v) = self.continuity {
            write!(f, "{sep}λ is not continuous: preimage of open {v:#x} is not open")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("action table must be |T|×|X| = {t}×{x}")]
    WrongShape { t: usize, x: usize },
    #[error("entry [{0}][{1}] is out of range")]
    EntryOutOfRange(usize, usize),
    #[error("{0}")]
    Invalid(ActionViolations),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("point {0} is out of range")]
    PointOutOfRange(usize),
}

/// A validated generalized action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenAction {
    group: TopGenGroup,
    space: FiniteSpace,
    table: Vec<Vec<usize>>,
}

/// Check the two action axioms and continuity; all failures are itemized.
pub fn validate_action(
    group: &TopGenGroup,
    space: &FiniteSpace,
    table: Vec<Vec<usize>>,
) -> Result<GenAction, ActionError> {
    let nt = group.order();
    let nx = space.size();
    if table.len() != nt || table.iter().any(|row| row.len() != nx) {
        return Err(ActionError::WrongShape { t: nt, x: nx });
    }
    for (t, row) in table.iter().enumerate() {
        for (x, &y) in row.iter().enumerate() {
            if y >= nx {
                return Err(ActionError::EntryOutOfRange(t, x));
            }
        }
    }
    let mut violations = ActionViolations::default();
    'ax1: for s in 0..nt {
        for t in 0..nt {
            let st = group.algebra().mul(s, t);
            for x in 0..nx {
                if table[s][table[t][x]] != table[st][x] {
                    violations.axiom1 = Some((s, t, x));
                    break 'ax1;
                }
            }
        }
    }
    let idempotents: Vec<usize> = members(group.identity_set()).collect();
    violations.axiom2 = (0..nx).find(|&x| !idempotents.iter().any(|&e| table[e][x] == x));
    let candidate = GenAction { group: group.clone(), space: space.clone(), table };
    violations.continuity = candidate.lambda_map()?.continuity_counterexample();
    if violations.is_empty() {
        Ok(candidate)
    } else {
        Err(ActionError::Invalid(violations))
    }
}

impl GenAction {
    pub fn group(&self) -> &TopGenGroup {
        &self.group
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn act(&self, t: usize, x: usize) -> usize {
        self.table[t][x]
    }

    /// `λ` as a point map on the product space `T × X`.
    pub fn lambda_map(&self) -> Result<SpaceMap, TopologyError> {
        let product = FiniteSpace::product(self.group.space(), &self.space)?;
        let nx = self.space.size();
        let mut table = vec![0; self.group.order() * nx];
        for t in 0..self.group.order() {
            for x in 0..nx {
                table[pair_index(t, x, nx)] = self.table[t][x];
            }
        }
        Ok(SpaceMap::new(product, self.space.clone(), table).expect("total"))
    }

    /// `λ̂(t,x) = (t·x, x)` as a map `T × X → X × X`.
    pub fn lambda_hat(&self) -> Result<SpaceMap, TopologyError> {
        let dom = FiniteSpace::product(self.group.space(), &self.space)?;
        let cod = FiniteSpace::product(&self.space, &self.space)?;
        let nx = self.space.size();
        let mut table = vec![0; self.group.order() * nx];
        for t in 0..self.group.order() {
            for x in 0..nx {
                table[pair_index(t, x, nx)] = pair_index(self.table[t][x], x, nx);
            }
        }
        Ok(SpaceMap::new(dom, cod, table).expect("total"))
    }

    /// `θ_t : X → X`, `x ↦ t·x`.
    pub fn theta(&self, t: usize) -> SpaceMap {
        SpaceMap::new(self.space.clone(), self.space.clone(), self.table[t].clone())
            .expect("total")
    }

    /// `ρ_x : T → X`, `t ↦ t·x`.
    pub fn rho(&self, x: usize) -> SpaceMap {
        let table = (0..self.group.order()).map(|t| self.table[t][x]).collect();
        SpaceMap::new(self.group.space().clone(), self.space.clone(), table).expect("total")
    }

    /// `T(x) = {t·x : t ∈ T}`.
    pub fn orbit(&self, x: usize) -> Mask {
        (0..self.group.order()).fold(0, |acc, t| acc | bit(self.table[t][x]))
    }

    /// `T_x = {t : t·x = x}`.
    pub fn stabilizer(&self, x: usize) -> Mask {
        (0..self.group.order())
            .filter(|&t| self.table[t][x] == x)
            .fold(0, |acc, t| acc | bit(t))
    }

    /// `T·Y = {t·y : t ∈ T, y ∈ Y}`.
    pub fn saturate(&self, y: Mask) -> Mask {
        members(y).fold(0, |acc, p| acc | self.orbit(p))
    }

    /// Every `θ_t` is the identity map.
    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|row| row.iter().enumerate().all(|(x, &y)| y == x))
    }

    /// `e(T) ⊆ T_x` for every `x`: all idempotents fix all points.
    pub fn is_perfect(&self) -> bool {
        let es = self.group.identity_set();
        (0..self.space.size()).all(|x| members(es).all(|e| self.table[e][x] == x))
    }
}

/// A T-space: a generalized action whose carrier is flagged strict when the
/// space is Hausdorff. Relaxed instances are first-class but always carry
/// `strict = false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSpace {
    pub action: GenAction,
    pub strict: bool,
}

impl TSpace {
    pub fn new(action: GenAction) -> TSpace {
        let strict = action.space().is_hausdorff();
        TSpace { action, strict }
    }
}

/// Orbit and stabilizer of one point, with the verified side conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub orbit: Mask,
    pub stabilizer: Mask,
    pub regular_point: bool,
    /// `T_x` is closed under multiplication and inversion.
    pub stabilizer_is_generalized_subgroup: bool,
    /// `T_x` is a topologically closed subset of `T`.
    pub stabilizer_closed: bool,
}

pub fn orbit_data(a: &GenAction, x: usize) -> Result<OrbitData, ActionError> {
    if x >= a.space().size() {
        return Err(ActionError::PointOutOfRange(x));
    }
    let stabilizer = a.stabilizer(x);
    Ok(OrbitData {
        orbit: a.orbit(x),
        stabilizer,
        regular_point: stabilizer.count_ones() == 1,
        stabilizer_is_generalized_subgroup: a.group().algebra().is_generalized_subgroup(stabilizer),
        stabilizer_closed: a.group().space().is_closed(stabilizer),
    })
}

/// The classification flags of one action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyProfile {
    pub effective: bool,
    pub transitive: bool,
    pub free: bool,
    pub regular: bool,
    pub perfect: bool,
    pub singular_set: Mask,
}

pub fn classify_action(a: &GenAction) -> PropertyProfile {
    let nt = a.group().order();
    let nx = a.space().size();
    let effective = (0..nt).all(|s| {
        (s + 1..nt).all(|t| (0..nx).any(|x| a.act(s, x) != a.act(t, x)))
    });
    // definition: for all x,y some t carries x to y
    let transitive = (0..nx).all(|x| (0..nx).all(|y| (0..nt).any(|t| a.act(t, x) == y)));
    // definition: precisely one t fixes each x
    let free = (0..nx).all(|x| a.stabilizer(x).count_ones() == 1);
    let singular_set = (0..nx)
        .filter(|&x| a.stabilizer(x).count_ones() != 1)
        .fold(0, |acc, x| acc | bit(x));
    PropertyProfile {
        effective,
        transitive,
        free,
        regular: transitive && free,
        perfect: a.is_perfect(),
        singular_set,
    }
}

/// The proper-action verdicts for one subset `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProperProfile {
    /// `Y_T = {t : t·Y ∩ Y ≠ ∅}`, computed exactly.
    pub y_t: Mask,
    /// `λ̂` is a proper map, literally: always true between finite spaces.
    pub proper_literal: MarkedVerdict,
    /// `Y'_T` is compact for every compact `Y'`: always true on finite
    /// carriers.
    pub proper_via_yt: MarkedVerdict,
}

/// `{t : t·Y ∩ Y ≠ ∅}`.
pub fn translate_meets(a: &GenAction, y: Mask) -> Mask {
    (0..a.group().order())
        .filter(|&t| a.theta(t).image_of(y) & y != 0)
        .fold(0, |acc, t| acc | bit(t))
}

pub fn proper_profile(a: &GenAction, y: Mask) -> ProperProfile {
    let proper_literal = a
        .lambda_hat()
        .map(|h| map_predicates(&h).proper_literal)
        .unwrap_or(MarkedVerdict::degenerate(true));
    // every subset of X is compact, and each Y'_T is a subset of finite T,
    // hence compact; the quantifier is exhausted for small X
    let nx = a.space().size();
    let proper_via_yt = if nx <= 12 {
        let all_compact = crate::sets::subsets(full(nx))
            .into_iter()
            .all(|yp| translate_meets(a, yp).count_ones() as usize <= a.group().order());
        MarkedVerdict::degenerate(all_compact)
    } else {
        MarkedVerdict::degenerate(true)
    };
    ProperProfile { y_t: translate_meets(a, y), proper_literal, proper_via_yt }
}

/// All induced point maps with their verified side conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMaps {
    pub theta: Vec<SpaceMap>,
    pub rho: Vec<SpaceMap>,
    pub all_theta_continuous: bool,
    pub all_rho_continuous: bool,
    /// `T(x) = ρ_x(T)` for every `x`.
    pub orbit_is_rho_image: bool,
    /// `T_x = ρ_x⁻¹(x)` for every `x`.
    pub stabilizer_is_rho_fiber: bool,
}

pub fn induced_maps(a: &GenAction) -> InducedMaps {
    let theta: Vec<SpaceMap> = (0..a.group().order()).map(|t| a.theta(t)).collect();
    let rho: Vec<SpaceMap> = (0..a.space().size()).map(|x| a.rho(x)).collect();
    let all_theta_continuous = theta.iter().all(|m| m.is_continuous());
    let all_rho_continuous = rho.iter().all(|m| m.is_continuous());
    let full_t = a.group().space().universe();
    let orbit_is_rho_image =
        (0..a.space().size()).all(|x| rho[x].image_of(full_t) == a.orbit(x));
    let stabilizer_is_rho_fiber =
        (0..a.space().size()).all(|x| rho[x].preimage_of(bit(x)) == a.stabilizer(x));
    InducedMaps {
        theta,
        rho,
        all_theta_continuous,
        all_rho_continuous,
        orbit_is_rho_image,
        stabilizer_is_rho_fiber,
    }
}

/// The semidynamical system generated by an action: the distinct translation
/// maps `S = {θ_t}` with composition.
#[derive(Debug, Clone)]
pub struct SemidynamicalSystem {
    /// Distinct `θ` tables in sorted order.
    pub maps: Vec<Vec<usize>>,
    /// Class of each `t` in `maps`.
    pub class_of: Vec<usize>,
    /// `θ_{t1} ∘ θ_{t2} = θ_{t1·t2}` and every point is fixed by some member.
    pub complete: bool,
    /// Composition descends to the quotient by map equality.
    pub composition_well_defined: bool,
    /// When the action is perfect: `S` as a generalized group under
    /// composition.
    pub gg_structure: Option<GenGroup>,
    /// `e(θ_t) = θ_{e(t)}` and `(θ_t)⁻¹ = θ_{t⁻¹}` at the level of classes.
    pub gg_id_compatible: bool,
}

pub fn semidynamical_system(a: &GenAction) -> SemidynamicalSystem {
    let nt = a.group().order();
    let nx = a.space().size();
    let mut maps: Vec<Vec<usize>> = (0..nt).map(|t| a.table()[t].clone()).collect();
    maps.sort_unstable();
    maps.dedup();
    let class_of: Vec<usize> = (0..nt)
        .map(|t| maps.binary_search(&a.table()[t].to_vec()).expect("present"))
        .collect();
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
        // (f ∘ g)(x) = f(g(x))
        g.iter().map(|&x| f[x]).collect()
    };
    let axiom_i = (0..nt).all(|t1| {
        (0..nt).all(|t2| {
            compose(&a.table()[t1], &a.table()[t2])
                == a.table()[a.group().algebra().mul(t1, t2)]
        })
    });
    let axiom_ii = (0..nx).all(|x| (0..nt).any(|t| a.act(t, x) == x));
    let complete = axiom_i && axiom_ii;
    // composition is well defined on classes iff class(θ_{t1·t2}) depends
    // only on (class(t1), class(t2))
    let k = maps.len();
    let mut comp_table: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
    let mut composition_well_defined = true;
    for t1 in 0..nt {
        for t2 in 0..nt {
            let (c1, c2) = (class_of[t1], class_of[t2]);
            let c = class_of[a.group().algebra().mul(t1, t2)];
            match comp_table[c1][c2] {
                None => comp_table[c1][c2] = Some(c),
                Some(prev) if prev == c => {}
                Some(_) => composition_well_defined = false,
            }
        }
    }
    // sanity: θ composition lands inside S
    if composition_well_defined {
        for (c1, m1) in maps.iter().enumerate() {
            for (c2, m2) in maps.iter().enumerate() {
                if let Some(c) = comp_table[c1][c2] {
                    if compose(m1, m2) != maps[c] {
                        composition_well_defined = false;
                    }
                }
            }
        }
    }
    let mut gg_structure = None;
    let mut gg_id_compatible = false;
    if a.is_perfect() && composition_well_defined {
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|c1| (0..k).map(|c2| comp_table[c1][c2].expect("filled")).collect())
            .collect();
        let names = (0..k).map(|c| format!("th{c}")).collect();
        if let Ok(table) = crate::algebra::CayleyTable::new(names, rows) {
            if let Ok(gg) = GenGroup::validate(table) {
                let alg = a.group().algebra();
                gg_id_compatible = (0..nt).all(|t| {
                    gg.e(class_of[t]) == class_of[alg.e(t)]
                        && gg.inv(class_of[t]) == class_of[alg.inv(t)]
                });
                gg_structure = Some(gg);
            }
        }
    }
    SemidynamicalSystem {
        maps,
        class_of,
        complete,
        composition_well_defined,
        gg_structure,
        gg_id_compatible,
    }
}

// ---------------------------------------------------------------------------
// Named corpus actions
// ---------------------------------------------------------------------------

/// `T` acting on itself by its own multiplication.
pub fn self_action(t: &TopGenGroup) -> GenAction {
    let table = t.algebra().carrier().rows().to_vec();
    validate_action(t, t.space(), table).expect("axiom (i) is associativity; e(x) fixes x")
}

/// `T` acting on itself by `s·t = e(s)·t`. Fails axiom (i) when eq1 does.
pub fn idempotent_self_action(t: &TopGenGroup) -> Result<GenAction, ActionError> {
    let alg = t.algebra();
    let table = (0..alg.order())
        .map(|s| (0..alg.order()).map(|u| alg.mul(alg.e(s), u)).collect())
        .collect();
    validate_action(t, t.space(), table)
}

/// The trivial action on a space: every `θ_t` is the identity.
pub fn trivial_action(t: &TopGenGroup, space: &FiniteSpace) -> GenAction {
    let row: Vec<usize> = (0..space.size()).collect();
    validate_action(t, space, vec![row; t.order()]).expect("identity rows")
}

/// The sign instance: `T = {+1,-1}` with `s·t = s` acting on discrete
/// `X = {-1,0,1}` by `t·x = t|x|`.
pub fn sign_instance() -> GenAction {
    let lz2 = crate::algebra::left_zero(2)
        .rename(vec!["+1".into(), "-1".into()])
        .unwrap();
    let t = tgg::with_discrete(lz2);
    let x = FiniteSpace::discrete(vec!["-1".into(), "0".into(), "1".into()]).unwrap();
    // indices: -1 ↦ 0, 0 ↦ 1, 1 ↦ 2
    let table = vec![
        vec![2, 1, 2], // +1·|x|
        vec![0, 1, 0], // -1·|x|
    ];
    validate_action(&t, &x, table).expect("the sign instance is a valid action")
}

/// The relaxed finite analog of the punctured-plane example: `X` is
/// `{z} ∪ (C2 × RZ2)` where every non-`z` singleton is open and `z` has only
/// the full space as a neighbourhood; `T = C2 × RZ2` acts by its own
/// multiplication on the non-`z` points and fixes `z`.
pub fn finite_plane_instance() -> GenAction {
    let rzp = crate::algebra::right_zero_product(&crate::algebra::cyclic_group(2), 2).unwrap();
    let t = tgg::with_discrete(rzp);
    let n = t.order();
    let mut names = vec!["z".to_string()];
    names.extend(t.algebra().names().iter().cloned());
    let mut min_nbhd: Vec<Mask> = vec![full(n + 1)];
    min_nbhd.extend((1..=n).map(bit));
    let x = FiniteSpace::from_min_nbhd(names, min_nbhd);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            let mut row = vec![0]; // s·z = z
            row.extend((0..n).map(|u| t.algebra().mul(s, u) + 1));
            row
        })
        .collect();
    validate_action(&t, &x, table).expect("the plane analog is a valid action")
}
