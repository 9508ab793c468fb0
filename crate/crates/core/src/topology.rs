//! Finite topological spaces and the point-set toolkit.
//!
//! A finite topology is determined by the minimal open neighbourhood of each
//! point (finite spaces are Alexandrov: arbitrary intersections of opens are
//! open). We store exactly that: `min_nbhd[p]` is the smallest open set
//! containing `p`. Every predicate reduces to it:
//!
//! - `U` is open iff `min_nbhd[p] ⊆ U` for every `p ∈ U`;
//! - `closure(S) = {q : min_nbhd[q] ∩ S ≠ ∅}`;
//! - `f` is continuous iff `f(min_nbhd[p]) ⊆ min_nbhd[f(p)]` for every `p`;
//! - `f` is an open map iff every `f(min_nbhd[p])` is open (opens are unions
//!   of minimal neighbourhoods and images commute with unions), and dually
//!   for closed maps via point closures.
//!
//! The full open family is derived on demand; products of discrete spaces
//! would otherwise need 2^(n·m) stored sets.

use crate::sets::{bit, full, image, is_subset, members, Mask, MAX_POINTS};
use serde::Serialize;

/// A truth value that may be trivially forced on finite carriers (every
/// finite space is compact, every subset of one is compact, ...). The
/// `degenerate` marker records that the check had no non-trivial content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarkedVerdict {
    pub holds: bool,
    pub degenerate: bool,
}

impl MarkedVerdict {
    pub fn degenerate(holds: bool) -> Self {
        MarkedVerdict { holds, degenerate: true }
    }

    pub fn checked(holds: bool) -> Self {
        MarkedVerdict { holds, degenerate: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("a space needs at least one point")]
    EmptySpace,
    #[error("spaces are capped at {MAX_POINTS} points, got {0}")]
    TooManyPoints(usize),
    #[error("duplicate point name `{0}`")]
    DuplicatePointName(String),
    #[error("a set mentions points outside the universe")]
    SetOutOfUniverse,
    #[error("not a topology: {0}")]
    NotATopology(NotATopologyWitness),
    #[error("invalid partition: classes must be nonempty, disjoint and cover the space")]
    InvalidPartition,
}

/// Why an explicit open family was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotATopologyWitness {
    MissingEmpty,
    MissingFull,
    /// The union of two member sets is absent.
    MissingUnion(Mask, Mask),
    /// The intersection of two member sets is absent.
    MissingIntersection(Mask, Mask),
}

impl std::fmt::Display for NotATopologyWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotATopologyWitness::MissingEmpty => write!(f, "the empty set is missing"),
            NotATopologyWitness::MissingFull => write!(f, "the full set is missing"),
            NotATopologyWitness::MissingUnion(a, b) => {
                write!(f, "union of {a:#x} and {b:#x} is missing")
            }
            NotATopologyWitness::MissingIntersection(a, b) => {
                write!(f, "intersection of {a:#x} and {b:#x} is missing")
            }
        }
    }
}

/// How to build a topology over a named point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologySpec {
    /// The family must already be a topology; it is rejected otherwise,
    /// never repaired.
    Explicit(Vec<Mask>),
    /// Generate the coarsest topology containing the sets.
    Subbasis(Vec<Mask>),
    Discrete,
    Indiscrete,
}

/// A finite topological space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    point_names: Vec<String>,
    min_nbhd: Vec<Mask>,
}

impl FiniteSpace {
    fn check_names(names: &[String]) -> Result<(), TopologyError> {
        if names.is_empty() {
            return Err(TopologyError::EmptySpace);
        }
        if names.len() > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(names.len()));
        }
        for i in 0..names.len() {
            if names[i + 1..].contains(&names[i]) {
                return Err(TopologyError::DuplicatePointName(names[i].clone()));
            }
        }
        Ok(())
    }

    pub fn build(names: Vec<String>, spec: TopologySpec) -> Result<Self, TopologyError> {
        match spec {
            TopologySpec::Explicit(opens) => FiniteSpace::from_opens(names, &opens),
            TopologySpec::Subbasis(sets) => FiniteSpace::from_subbasis(names, &sets),
            TopologySpec::Discrete => FiniteSpace::discrete(names),
            TopologySpec::Indiscrete => FiniteSpace::indiscrete(names),
        }
    }

    pub fn discrete(names: Vec<String>) -> Result<Self, TopologyError> {
        Self::check_names(&names)?;
        let min_nbhd = (0..names.len()).map(bit).collect();
        Ok(FiniteSpace { point_names: names, min_nbhd })
    }

    pub fn indiscrete(names: Vec<String>) -> Result<Self, TopologyError> {
        Self::check_names(&names)?;
        let n = names.len();
        Ok(FiniteSpace { point_names: names, min_nbhd: vec![full(n); n] })
    }

    /// Validate an explicit open family. The family must contain the empty
    /// and full sets and be closed under pairwise union and intersection;
    /// anything else is rejected with a witness.
    pub fn from_opens(names: Vec<String>, opens: &[Mask]) -> Result<Self, TopologyError> {
        Self::check_names(&names)?;
        let n = names.len();
        let universe = full(n);
        let mut family: Vec<Mask> = opens.to_vec();
        family.sort_unstable();
        family.dedup();
        if family.iter().any(|&s| !is_subset(s, universe)) {
            return Err(TopologyError::SetOutOfUniverse);
        }
        if !family.contains(&0) {
            return Err(TopologyError::NotATopology(NotATopologyWitness::MissingEmpty));
        }
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let (a, b) = (family[i], family[j]);
                if family.binary_search(&(a | b)).is_err() {
                    return Err(TopologyError::NotATopology(NotATopologyWitness::MissingUnion(
                        a, b,
                    )));
                }
                if family.binary_search(&(a & b)).is_err() {
                    return Err(TopologyError::NotATopology(
                        NotATopologyWitness::MissingIntersection(a, b),
                    ));
                }
            }
        }
        if !family.contains(&universe) {
            return Err(TopologyError::NotATopology(NotATopologyWitness::MissingFull));
        }
        let min_nbhd = (0..n)
            .map(|p| {
                family
                    .iter()
                    .filter(|&&s| s & bit(p) != 0)
                    .fold(universe, |acc, &s| acc & s)
            })
            .collect();
        Ok(FiniteSpace { point_names: names, min_nbhd })
    }

    /// The coarsest topology containing the given sets: the minimal open
    /// neighbourhood of `p` is the intersection of all subbasis sets
    /// containing `p` (the full set when there are none).
    pub fn from_subbasis(names: Vec<String>, sets: &[Mask]) -> Result<Self, TopologyError> {
        Self::check_names(&names)?;
        let n = names.len();
        let universe = full(n);
        if sets.iter().any(|&s| !is_subset(s, universe)) {
            return Err(TopologyError::SetOutOfUniverse);
        }
        let min_nbhd = (0..n)
            .map(|p| {
                sets.iter()
                    .filter(|&&s| s & bit(p) != 0)
                    .fold(universe, |acc, &s| acc & s)
            })
            .collect();
        Ok(FiniteSpace { point_names: names, min_nbhd })
    }

    /// Internal: from a precomputed minimal-neighbourhood table. The table
    /// must satisfy `p ∈ min_nbhd[p]` and `q ∈ min_nbhd[p] ⇒ min_nbhd[q] ⊆
    /// min_nbhd[p]`.
    pub(crate) fn from_min_nbhd(point_names: Vec<String>, min_nbhd: Vec<Mask>) -> Self {
        debug_assert!(min_nbhd.iter().enumerate().all(|(p, &u)| u & bit(p) != 0));
        debug_assert!(min_nbhd
            .iter()
            .all(|&u| members(u).all(|q| is_subset(min_nbhd[q], u))));
        FiniteSpace { point_names, min_nbhd }
    }

    pub fn size(&self) -> usize {
        self.point_names.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.point_names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.point_names[p]
    }

    pub fn universe(&self) -> Mask {
        full(self.size())
    }

    /// Smallest open set containing `p`.
    pub fn min_nbhd(&self, p: usize) -> Mask {
        self.min_nbhd[p]
    }

    /// The minimal basis: deduplicated, sorted minimal neighbourhoods.
    /// Every nonempty open set contains a member and is a union of members.
    pub fn basis(&self) -> Vec<Mask> {
        let mut b = self.min_nbhd.clone();
        b.sort_unstable();
        b.dedup();
        b
    }

    pub fn is_open(&self, s: Mask) -> bool {
        members(s).all(|p| is_subset(self.min_nbhd[p], s))
    }

    pub fn is_closed(&self, s: Mask) -> bool {
        self.is_open(self.universe() & !s)
    }

    /// Smallest closed superset: `q` is in the closure iff every open
    /// neighbourhood of `q` meets `S`, i.e. iff the minimal one does.
    pub fn closure(&self, s: Mask) -> Mask {
        (0..self.size())
            .filter(|&q| self.min_nbhd[q] & s != 0)
            .fold(0, |acc, q| acc | bit(q))
    }

    /// Largest open subset.
    pub fn interior(&self, s: Mask) -> Mask {
        members(s)
            .filter(|&p| is_subset(self.min_nbhd[p], s))
            .fold(0, |acc, p| acc | bit(p))
    }

    pub fn is_discrete(&self) -> bool {
        self.min_nbhd.iter().enumerate().all(|(p, &u)| u == bit(p))
    }

    /// Every pair of distinct points has disjoint open neighbourhoods. The
    /// minimal neighbourhoods are the best candidates, so this is exact.
    pub fn is_hausdorff(&self) -> bool {
        let n = self.size();
        (0..n).all(|p| (p + 1..n).all(|q| self.min_nbhd[p] & self.min_nbhd[q] == 0))
    }

    /// Every open set, as unions of basis elements. Exponential in the basis
    /// size; guarded for the small spaces where callers need the full family.
    pub fn all_opens(&self) -> Vec<Mask> {
        let basis = self.basis();
        assert!(
            basis.len() <= 16,
            "refusing to enumerate opens over a {}-set basis",
            basis.len()
        );
        let mut opens: Vec<Mask> = Vec::with_capacity(1 << basis.len());
        for pick in 0..(1u32 << basis.len()) {
            let mut u = 0;
            for (k, &b) in basis.iter().enumerate() {
                if pick & (1 << k) != 0 {
                    u |= b;
                }
            }
            opens.push(u);
        }
        opens.sort_unstable();
        opens.dedup();
        opens
    }

    /// Product space: points `(i,j)` with index `i*|B| + j`, topology with
    /// minimal neighbourhoods `min_nbhd(i) × min_nbhd(j)` (the basis
    /// `{U × V}` generates exactly these).
    pub fn product(a: &FiniteSpace, b: &FiniteSpace) -> Result<FiniteSpace, TopologyError> {
        let n = a.size() * b.size();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let mut names = Vec::with_capacity(n);
        let mut min_nbhd = Vec::with_capacity(n);
        for i in 0..a.size() {
            for j in 0..b.size() {
                names.push(format!("({},{})", a.name(i), b.name(j)));
                min_nbhd.push(product_mask(a.min_nbhd(i), b.min_nbhd(j), b.size()));
            }
        }
        Ok(FiniteSpace { point_names: names, min_nbhd })
    }
}

/// Index of the pair `(i,j)` in a product with right factor of size `nb`.
#[inline]
pub fn pair_index(i: usize, j: usize, nb: usize) -> usize {
    i * nb + j
}

/// `ma × mb` as a mask over product indices.
pub fn product_mask(ma: Mask, mb: Mask, nb: usize) -> Mask {
    let mut out = 0;
    for i in members(ma) {
        for j in members(mb) {
            out |= bit(pair_index(i, j, nb));
        }
    }
    out
}

/// Space-level predicates. Compactness is always true on finite carriers
/// and is reported with the degenerate marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpacePredicates {
    pub hausdorff: bool,
    pub discrete: bool,
    pub compact: MarkedVerdict,
}

pub fn space_predicates(x: &FiniteSpace) -> SpacePredicates {
    SpacePredicates {
        hausdorff: x.is_hausdorff(),
        discrete: x.is_discrete(),
        compact: MarkedVerdict::degenerate(true),
    }
}

/// Closure, interior and openness of one subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetOps {
    pub closure: Mask,
    pub interior: Mask,
    pub is_open: bool,
    pub is_closed: bool,
}

pub fn set_ops(x: &FiniteSpace, s: Mask) -> SetOps {
    SetOps {
        closure: x.closure(s),
        interior: x.interior(s),
        is_open: x.is_open(s),
        is_closed: x.is_closed(s),
    }
}

/// A total map between finite spaces, given pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceMap {
    dom: FiniteSpace,
    cod: FiniteSpace,
    table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map has {found} entries, domain has {expected} points")]
    WrongLength { expected: usize, found: usize },
    #[error("f({0}) = {1} is outside the codomain")]
    OutOfRange(usize, usize),
    #[error("domain/codomain mismatch in composition")]
    ComposeMismatch,
}

impl SpaceMap {
    pub fn new(dom: FiniteSpace, cod: FiniteSpace, table: Vec<usize>) -> Result<Self, MapError> {
        if table.len() != dom.size() {
            return Err(MapError::WrongLength { expected: dom.size(), found: table.len() });
        }
        for (x, &y) in table.iter().enumerate() {
            if y >= cod.size() {
                return Err(MapError::OutOfRange(x, y));
            }
        }
        Ok(SpaceMap { dom, cod, table })
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let table = (0..space.size()).collect();
        SpaceMap { dom: space.clone(), cod: space, table }
    }

    pub fn dom(&self) -> &FiniteSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSpace {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image_of(&self, s: Mask) -> Mask {
        image(&self.table, s)
    }

    pub fn preimage_of(&self, s: Mask) -> Mask {
        crate::sets::preimage(&self.table, s)
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom.size() != self.cod.size() {
            return false;
        }
        self.image_of(self.dom.universe()) == self.cod.universe()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SpaceMap) -> Result<SpaceMap, MapError> {
        if other.cod != self.dom {
            return Err(MapError::ComposeMismatch);
        }
        let table = other.table.iter().map(|&x| self.table[x]).collect();
        Ok(SpaceMap { dom: other.dom.clone(), cod: self.cod.clone(), table })
    }

    /// Inverse map when bijective.
    pub fn inverse(&self) -> Option<SpaceMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.size()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(SpaceMap { dom: self.cod.clone(), cod: self.dom.clone(), table })
    }

    pub fn is_continuous(&self) -> bool {
        (0..self.dom.size())
            .all(|p| is_subset(self.image_of(self.dom.min_nbhd(p)), self.cod.min_nbhd(self.apply(p))))
    }

    /// First basis open of the codomain whose preimage is not open, if any.
    pub fn continuity_counterexample(&self) -> Option<Mask> {
        self.cod
            .basis()
            .into_iter()
            .find(|&v| !self.dom.is_open(self.preimage_of(v)))
    }

    pub fn is_open_map(&self) -> bool {
        (0..self.dom.size()).all(|p| self.cod.is_open(self.image_of(self.dom.min_nbhd(p))))
    }

    pub fn is_closed_map(&self) -> bool {
        (0..self.dom.size()).all(|p| self.cod.is_closed(self.image_of(self.dom.closure(bit(p)))))
    }
}

/// The full predicate bundle for one map. Literal properness (preimages of
/// compacts are compact) is always true between finite spaces and carries
/// the degenerate marker; the sufficient condition (closed map with compact
/// fibers) is computed for real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapPredicates {
    pub continuous: bool,
    pub open_map: bool,
    pub closed_map: bool,
    pub proper_literal: MarkedVerdict,
    pub proper_sufficient: bool,
    pub homeomorphism: bool,
}

pub fn map_predicates(f: &SpaceMap) -> MapPredicates {
    let continuous = f.is_continuous();
    let open_map = f.is_open_map();
    let closed_map = f.is_closed_map();
    // every fiber of a map between finite spaces is finite, hence compact
    let proper_sufficient = closed_map;
    MapPredicates {
        continuous,
        open_map,
        closed_map,
        proper_literal: MarkedVerdict::degenerate(true),
        proper_sufficient,
        homeomorphism: f.is_bijective() && continuous && open_map,
    }
}

/// Quotient of a space by a partition: a class-set is open exactly when its
/// preimage is open. Classes are named by their least member. Returns the
/// quotient space and the projection map.
pub fn quotient_topology(
    x: &FiniteSpace,
    partition: &[Mask],
) -> Result<(FiniteSpace, SpaceMap), TopologyError> {
    let mut seen: Mask = 0;
    for &class in partition {
        if class == 0 || class & seen != 0 {
            return Err(TopologyError::InvalidPartition);
        }
        seen |= class;
    }
    if seen != x.universe() {
        return Err(TopologyError::InvalidPartition);
    }
    let k = partition.len();
    let mut class_of = vec![0; x.size()];
    for (c, &class) in partition.iter().enumerate() {
        for p in members(class) {
            class_of[p] = c;
        }
    }
    // Minimal quotient-open around class c: grow until the preimage is open.
    let mut min_nbhd = Vec::with_capacity(k);
    for c in 0..k {
        let mut u: Mask = bit(c);
        loop {
            let pre = preimage_classes(&class_of, u);
            let mut grown = u;
            for p in members(pre) {
                for q in members(x.min_nbhd(p)) {
                    grown |= bit(class_of[q]);
                }
            }
            if grown == u {
                break;
            }
            u = grown;
        }
        min_nbhd.push(u);
    }
    let names = partition
        .iter()
        .map(|&class| {
            let least = members(class).next().expect("nonempty class");
            format!("[{}]", x.name(least))
        })
        .collect();
    let quotient = FiniteSpace::from_min_nbhd(names, min_nbhd);
    let projection = SpaceMap::new(x.clone(), quotient.clone(), class_of).expect("total");
    Ok((quotient, projection))
}

fn preimage_classes(class_of: &[usize], u: Mask) -> Mask {
    class_of
        .iter()
        .enumerate()
        .filter(|(_, &c)| u & bit(c) != 0)
        .fold(0, |acc, (p, _)| acc | bit(p))
}

/// Brute-force oracle for tests and small spaces: close a family under
/// pairwise unions and intersections, always adding the empty and full
/// sets.
pub fn closure_oracle(n: usize, sets: &[Mask]) -> Vec<Mask> {
    let mut family: Vec<Mask> = sets.to_vec();
    family.push(0);
    family.push(full(n));
    family.sort_unstable();
    family.dedup();
    loop {
        let mut next = family.clone();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                next.push(family[i] | family[j]);
                next.push(family[i] & family[j]);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == family {
            return family;
        }
        family = next;
    }
}
