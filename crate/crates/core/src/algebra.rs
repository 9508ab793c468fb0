//! Finite semigroups and generalized groups.
//!
//! A generalized group is a semigroup in which every element `t` has a unique
//! local identity `e(t)` (with `t·e(t) = e(t)·t = t`) and an inverse relative
//! to it (`s·t = t·s = e(t)`). Elements are dense indices into a Cayley
//! table; names are presentation-layer only.

use crate::sets::{bit, members, Mask};
use std::fmt;

/// A finite magma: an `n×n` multiplication table over indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("carrier is empty")]
    Empty,
    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("entry [{row}][{col}] = {value} is out of range (order {order})")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
}

impl CayleyTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = names.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        for i in 0..n {
            if names[i + 1..].contains(&names[i]) {
                return Err(TableError::DuplicateName(names[i].clone()));
            }
        }
        if table.len() != n {
            return Err(TableError::WrongRowCount { expected: n, found: table.len() });
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::RaggedRow { row: r, expected: n, found: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(TableError::EntryOutOfRange { row: r, col: c, value: v, order: n });
                }
            }
        }
        Ok(CayleyTable { names, table })
    }

    /// Table with default names `t0, t1, ..`.
    pub fn from_rows(table: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let names = (0..table.len()).map(|i| format!("t{i}")).collect();
        CayleyTable::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Least triple `(a,b,c)` with `(a·b)·c ≠ a·(b·c)`, if any.
    pub fn associativity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_semigroup(&self) -> bool {
        self.associativity_counterexample().is_none()
    }

    /// Rename elements in place. The new names must be distinct and as many
    /// as the order.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, TableError> {
        if names.len() != self.order() {
            return Err(TableError::WrongRowCount { expected: self.order(), found: names.len() });
        }
        for i in 0..names.len() {
            if names[i + 1..].contains(&names[i]) {
                return Err(TableError::DuplicateName(names[i].clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// The table relabelled by a carrier permutation: element `i` becomes
    /// `perm[i]`. Used for canonical forms.
    pub fn permuted(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = perm[self.mul(inv[a], inv[b])];
            }
        }
        CayleyTable { names: self.names.clone(), table }
    }

    /// Row-major flattening, the raw material of canonical forms.
    pub fn flat(&self) -> Vec<usize> {
        self.table.iter().flatten().copied().collect()
    }
}

/// Validation failures for the generalized-group axioms. Existence of local
/// identities is checked for every element before uniqueness, so a table
/// where some element has no identity reports that first.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenGroupError {
    #[error("not a semigroup: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotASemigroup(usize, usize, usize),
    #[error("element {0} has no local identity")]
    NoIdentityFor(usize),
    #[error("element {0} has more than one local identity")]
    NonUniqueIdentityFor(usize),
    #[error("element {0} has no inverse")]
    NoInverseFor(usize),
    #[error("element {0} has more than one inverse")]
    NonUniqueInverseFor(usize),
}

/// A validated generalized group: a semigroup with per-element identity and
/// inverse maps, all axioms verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenGroup {
    carrier: CayleyTable,
    e_map: Vec<usize>,
    inv_map: Vec<usize>,
}

impl GenGroup {
    /// Verify the generalized-group axioms and build the identity and
    /// inverse maps. Uniqueness of inverses is verified, not assumed.
    pub fn validate(carrier: CayleyTable) -> Result<GenGroup, GenGroupError> {
        if let Some((a, b, c)) = carrier.associativity_counterexample() {
            return Err(GenGroupError::NotASemigroup(a, b, c));
        }
        let n = carrier.order();
        let mut identities: Vec<Vec<usize>> = Vec::with_capacity(n);
        for t in 0..n {
            let ids: Vec<usize> =
                (0..n).filter(|&e| carrier.mul(t, e) == t && carrier.mul(e, t) == t).collect();
            if ids.is_empty() {
                return Err(GenGroupError::NoIdentityFor(t));
            }
            identities.push(ids);
        }
        let mut e_map = Vec::with_capacity(n);
        for (t, ids) in identities.iter().enumerate() {
            if ids.len() > 1 {
                return Err(GenGroupError::NonUniqueIdentityFor(t));
            }
            e_map.push(ids[0]);
        }
        let mut inverses: Vec<Vec<usize>> = Vec::with_capacity(n);
        for t in 0..n {
            let e = e_map[t];
            let invs: Vec<usize> =
                (0..n).filter(|&s| carrier.mul(s, t) == e && carrier.mul(t, s) == e).collect();
            if invs.is_empty() {
                return Err(GenGroupError::NoInverseFor(t));
            }
            inverses.push(invs);
        }
        let mut inv_map = Vec::with_capacity(n);
        for (t, invs) in inverses.iter().enumerate() {
            if invs.len() > 1 {
                return Err(GenGroupError::NonUniqueInverseFor(t));
            }
            inv_map.push(invs[0]);
        }
        Ok(GenGroup { carrier, e_map, inv_map })
    }

    pub fn carrier(&self) -> &CayleyTable {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn names(&self) -> &[String] {
        self.carrier.names()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.carrier.mul(a, b)
    }

    #[inline]
    pub fn e(&self, t: usize) -> usize {
        self.e_map[t]
    }

    #[inline]
    pub fn inv(&self, t: usize) -> usize {
        self.inv_map[t]
    }

    /// The identity set `e(T) = {e(t) : t ∈ T}` as a mask.
    pub fn identity_set(&self) -> Mask {
        self.e_map.iter().fold(0, |acc, &e| acc | bit(e))
    }

    /// Whether `e(s·t) = e(s)·e(t)` holds for all pairs. Rees-matrix
    /// constructions with a non-trivial sandwich matrix can fail this.
    pub fn is_eq1_compatible(&self) -> bool {
        let n = self.order();
        (0..n).all(|s| (0..n).all(|t| self.e(self.mul(s, t)) == self.mul(self.e(s), self.e(t))))
    }

    /// Whether a subset is closed under multiplication and inversion (and so
    /// is itself a generalized group with the inherited maps).
    pub fn is_generalized_subgroup(&self, subset: Mask) -> bool {
        members(subset).all(|a| {
            contains_idx(subset, self.inv(a))
                && members(subset).all(|b| contains_idx(subset, self.mul(a, b)))
        })
    }

    pub fn rename(self, names: Vec<String>) -> Result<GenGroup, TableError> {
        Ok(GenGroup { carrier: self.carrier.with_names(names)?, ..self })
    }
}

#[inline]
fn contains_idx(mask: Mask, i: usize) -> bool {
    mask & bit(i) != 0
}

/// Outcome of checking `f(s·t) = f(s)·f(t)` over all pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomomorphismVerdict {
    Ok,
    /// Least pair `(s,t)` with `f(s·t) ≠ f(s)·f(t)`.
    Violation(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomomorphismError {
    #[error("map has {found} entries but the source has order {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("f({0}) = {1} is outside the codomain")]
    OutOfRange(usize, usize),
}

/// Check whether an index map is a homomorphism of generalized groups.
pub fn check_homomorphism(
    f: &[usize],
    src: &GenGroup,
    dst: &GenGroup,
) -> Result<HomomorphismVerdict, HomomorphismError> {
    if f.len() != src.order() {
        return Err(HomomorphismError::WrongLength { expected: src.order(), found: f.len() });
    }
    for (x, &y) in f.iter().enumerate() {
        if y >= dst.order() {
            return Err(HomomorphismError::OutOfRange(x, y));
        }
    }
    for s in 0..src.order() {
        for t in 0..src.order() {
            if f[src.mul(s, t)] != dst.mul(f[s], f[t]) {
                return Ok(HomomorphismVerdict::Violation(s, t));
            }
        }
    }
    Ok(HomomorphismVerdict::Ok)
}

/// One class of the decomposition by local identity, `T_e = {t : e(t) = e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EClass {
    pub identity: usize,
    pub members: Mask,
    /// Closed under multiplication and inversion, with `identity` acting as
    /// a two-sided identity inside the class.
    pub is_group: bool,
}

/// Decompose a generalized group into its e-classes and check that each one
/// is a group. A failure is evidence against the disjoint-union theorem, not
/// an error.
pub fn eclass_decompose(g: &GenGroup) -> Vec<EClass> {
    let mut idents: Vec<usize> = (0..g.order()).map(|t| g.e(t)).collect();
    idents.sort_unstable();
    idents.dedup();
    idents
        .into_iter()
        .map(|e| {
            let members_mask =
                (0..g.order()).filter(|&t| g.e(t) == e).fold(0, |acc, t| acc | bit(t));
            let closed = g.is_generalized_subgroup(members_mask);
            let identity_ok = members(members_mask)
                .all(|t| g.mul(t, e) == t && g.mul(e, t) == t && g.mul(g.inv(t), t) == e);
            EClass { identity: e, members: members_mask, is_group: closed && identity_ok }
        })
        .collect()
}

/// Independent completely-simple check: a finite semigroup is completely
/// simple iff `T¹·a·T¹ = T` for every `a` (finite simple semigroups are
/// completely simple). Shares no code with [`GenGroup::validate`]; used as a
/// harness observation against the cited equivalence with generalized
/// groups.
pub fn is_completely_simple(table: &CayleyTable) -> bool {
    if !table.is_semigroup() {
        return false;
    }
    let n = table.order();
    let full: Mask = crate::sets::full(n);
    (0..n).all(|a| {
        let mut ideal: Mask = bit(a);
        loop {
            let mut next = ideal;
            for x in members(ideal) {
                for t in 0..n {
                    next |= bit(table.mul(t, x));
                    next |= bit(table.mul(x, t));
                }
            }
            if next == ideal {
                break;
            }
            ideal = next;
        }
        ideal == full
    })
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Cyclic group of order `n`, elements named `e, g, g2, ..`.
pub fn cyclic_group(n: usize) -> GenGroup {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GenGroup::validate(CayleyTable::new(names, table).unwrap()).unwrap()
}

/// Klein four-group.
pub fn klein_four() -> GenGroup {
    let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
    let table = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    GenGroup::validate(CayleyTable::new(names, table).unwrap()).unwrap()
}

/// Left-zero semigroup `x·y = x` on `n` elements.
pub fn left_zero(n: usize) -> GenGroup {
    assert!(n >= 1);
    let names = (0..n).map(|i| format!("l{i}")).collect();
    let table = (0..n).map(|a| vec![a; n]).collect();
    GenGroup::validate(CayleyTable::new(names, table).unwrap()).unwrap()
}

/// Right-zero semigroup `x·y = y` on `n` elements.
pub fn right_zero(n: usize) -> GenGroup {
    assert!(n >= 1);
    let names = (0..n).map(|i| format!("r{i}")).collect();
    let table = (0..n).map(|_| (0..n).collect()).collect();
    GenGroup::validate(CayleyTable::new(names, table).unwrap()).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("base table is not a group: {0}")]
    NotAGroup(String),
    #[error("size parameter must be at least 1")]
    EmptyFactor,
    #[error("sandwich matrix has wrong shape: expected {expected_rows}×{expected_cols}")]
    SandwichShape { expected_rows: usize, expected_cols: usize },
    #[error("sandwich entry [{0}][{1}] is out of range")]
    SandwichEntry(usize, usize),
    #[error(transparent)]
    Axioms(#[from] GenGroupError),
}

fn require_group(g: &GenGroup) -> Result<(), ConstructionError> {
    // A generalized group is a group iff all local identities coincide.
    let e0 = g.e(0);
    if (0..g.order()).all(|t| g.e(t) == e0) {
        Ok(())
    } else {
        Err(ConstructionError::NotAGroup("local identities differ".into()))
    }
}

fn product_names(g: &GenGroup, m: usize) -> Vec<String> {
    let slot = |k: usize| ((b'a' + (k % 26) as u8) as char).to_string();
    let mut names = Vec::with_capacity(g.order() * m);
    for a in 0..g.order() {
        for k in 0..m {
            names.push(format!("{}{}", g.names()[a], slot(k)));
        }
    }
    names
}

/// `G × RZ_m` with `(g,λ)·(h,μ) = (g·h, μ)`, the finite analog of the
/// punctured-plane multiplication `r₁e^{iθ₁} · r₂e^{iθ₂} = r₁r₂e^{iθ₂}`.
/// Element `(g,k)` has index `g*m + k`.
pub fn right_zero_product(g: &GenGroup, m: usize) -> Result<GenGroup, ConstructionError> {
    zero_product(g, m, false)
}

/// `G × LZ_m` with `(g,λ)·(h,μ) = (g·h, λ)`.
pub fn left_zero_product(g: &GenGroup, m: usize) -> Result<GenGroup, ConstructionError> {
    zero_product(g, m, true)
}

fn zero_product(g: &GenGroup, m: usize, left: bool) -> Result<GenGroup, ConstructionError> {
    require_group(g)?;
    if m == 0 {
        return Err(ConstructionError::EmptyFactor);
    }
    let n = g.order() * m;
    let idx = |a: usize, k: usize| a * m + k;
    let mut table = vec![vec![0; n]; n];
    for a in 0..g.order() {
        for k in 0..m {
            for b in 0..g.order() {
                for l in 0..m {
                    let slot = if left { k } else { l };
                    table[idx(a, k)][idx(b, l)] = idx(g.mul(a, b), slot);
                }
            }
        }
    }
    let carrier = CayleyTable::new(product_names(g, m), table).unwrap();
    Ok(GenGroup::validate(carrier)?)
}

/// Direct product of two generalized groups, componentwise multiplication.
/// Element `(a,b)` has index `a*|B| + b`.
pub fn direct_product(a: &GenGroup, b: &GenGroup) -> GenGroup {
    let n = a.order() * b.order();
    let idx = |x: usize, y: usize| x * b.order() + y;
    let mut table = vec![vec![0; n]; n];
    let mut names = Vec::with_capacity(n);
    for x in 0..a.order() {
        for y in 0..b.order() {
            names.push(format!("{}.{}", a.names()[x], b.names()[y]));
            for u in 0..a.order() {
                for v in 0..b.order() {
                    table[idx(x, y)][idx(u, v)] = idx(a.mul(x, u), b.mul(y, v));
                }
            }
        }
    }
    let carrier = CayleyTable::new(names, table).unwrap();
    GenGroup::validate(carrier).expect("direct product of generalized groups")
}

/// Outcome of a Rees-matrix construction. The semigroup is always a
/// generalized group, but a non-trivial sandwich matrix can break the
/// `e(s·t) = e(s)·e(t)` compatibility needed for a topological generalized
/// group; the flag records that.
#[derive(Debug, Clone)]
pub struct ReesOutcome {
    pub group: GenGroup,
    pub eq1_compatible: bool,
}

/// Rees matrix semigroup `M(G; I, Λ; P)` over a group `G`:
/// `(i,g,λ)·(j,h,μ) = (i, g·p[λ][j]·h, μ)`. `p` is a `Λ×I` matrix of
/// `G`-indices. Element `(i,g,λ)` has index `(i*|G| + g)*|Λ| + λ`.
pub fn rees_matrix(
    g: &GenGroup,
    i_size: usize,
    lambda_size: usize,
    p: &[Vec<usize>],
) -> Result<ReesOutcome, ConstructionError> {
    require_group(g)?;
    if i_size == 0 || lambda_size == 0 {
        return Err(ConstructionError::EmptyFactor);
    }
    if p.len() != lambda_size || p.iter().any(|row| row.len() != i_size) {
        return Err(ConstructionError::SandwichShape {
            expected_rows: lambda_size,
            expected_cols: i_size,
        });
    }
    for (r, row) in p.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v >= g.order() {
                return Err(ConstructionError::SandwichEntry(r, c));
            }
        }
    }
    let n = i_size * g.order() * lambda_size;
    let idx = |i: usize, a: usize, l: usize| (i * g.order() + a) * lambda_size + l;
    let mut table = vec![vec![0; n]; n];
    let mut names = vec![String::new(); n];
    for i in 0..i_size {
        for a in 0..g.order() {
            for l in 0..lambda_size {
                names[idx(i, a, l)] = format!("i{}_{}_{}", i, g.names()[a], l);
                for j in 0..i_size {
                    for b in 0..g.order() {
                        for m in 0..lambda_size {
                            let prod = g.mul(g.mul(a, p[l][j]), b);
                            table[idx(i, a, l)][idx(j, b, m)] = idx(i, prod, m);
                        }
                    }
                }
            }
        }
    }
    let carrier = CayleyTable::new(names, table).unwrap();
    let group = GenGroup::validate(carrier)?;
    let eq1_compatible = group.is_eq1_compatible();
    Ok(ReesOutcome { group, eq1_compatible })
}

impl fmt::Display for GenGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generalized group of order {}", self.order())?;
        for (t, name) in self.names().iter().enumerate() {
            writeln!(
                f,
                "  {name}: e = {}, inv = {}",
                self.names()[self.e(t)],
                self.names()[self.inv(t)]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: Vec<Vec<usize>>) -> CayleyTable {
        CayleyTable::from_rows(rows).unwrap()
    }

    #[test]
    fn c2_is_a_semigroup() {
        let t = table(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(t.associativity_counterexample(), None);
    }

    /// Brute-force oracle: least violating triple by direct evaluation.
    fn least_violation(rows: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
        let n = rows.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn xnor_table_is_associative() {
        // 0·0=1, 0·1=0, 1·0=0, 1·1=1 is a·b = ¬(a⊕b): associative (C2 with
        // identity 1), confirmed by the oracle.
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(least_violation(&rows), None);
        assert_eq!(table(rows).associativity_counterexample(), None);
    }

    #[test]
    fn least_associativity_counterexample() {
        // (0·0)·0 = 1·0 = 1 but 0·(0·0) = 0·1 = 0.
        let rows = vec![vec![1, 0], vec![1, 0]];
        assert_eq!(least_violation(&rows), Some((0, 0, 0)));
        assert_eq!(table(rows).associativity_counterexample(), Some((0, 0, 0)));
    }

    #[test]
    fn left_zero_is_semigroup() {
        let t = table(vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        assert_eq!(t.associativity_counterexample(), None);
    }

    #[test]
    fn left_zero_generalized_group() {
        let g = left_zero(2);
        for t in 0..2 {
            assert_eq!(g.e(t), t);
            assert_eq!(g.inv(t), t);
        }
    }

    #[test]
    fn null_semigroup_has_element_without_identity() {
        let t = table(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(GenGroup::validate(t), Err(GenGroupError::NoIdentityFor(1)));
    }

    #[test]
    fn idempotent_monoid_has_non_unique_identity() {
        // {e,a} with a·a = a and e the identity: both e and a are local
        // identities for a.
        let t = table(vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(GenGroup::validate(t), Err(GenGroupError::NonUniqueIdentityFor(1)));
    }

    #[test]
    fn homomorphisms() {
        let c2 = cyclic_group(2);
        let lz2 = left_zero(2);
        assert_eq!(check_homomorphism(&[0, 1], &c2, &c2), Ok(HomomorphismVerdict::Ok));
        // constant map C2 -> LZ2: f(st) = a = a·a
        assert_eq!(check_homomorphism(&[0, 0], &c2, &lz2), Ok(HomomorphismVerdict::Ok));
        // swap on LZ2: f(s·t) = f(s) = f(s)·f(t)
        assert_eq!(check_homomorphism(&[1, 0], &lz2, &lz2), Ok(HomomorphismVerdict::Ok));
        // sign map C2 -> C2 twisted: f = const g is not a homomorphism
        assert_eq!(
            check_homomorphism(&[1, 1], &c2, &c2),
            Ok(HomomorphismVerdict::Violation(0, 0))
        );
        assert_eq!(
            check_homomorphism(&[0, 5], &c2, &c2),
            Err(HomomorphismError::OutOfRange(1, 5))
        );
    }

    #[test]
    fn right_zero_product_identity_and_inverse() {
        let c2 = cyclic_group(2);
        let rzp = right_zero_product(&c2, 2).unwrap();
        assert_eq!(rzp.order(), 4);
        // e((g,λ)) = (0,λ): index (g,k) = g*2 + k
        for g in 0..2 {
            for k in 0..2 {
                let t = g * 2 + k;
                assert_eq!(rzp.e(t), k, "e((g{g},{k}))");
                // C2 self-inverse: inv((g,λ)) = (g⁻¹,λ) = (g,λ)
                assert_eq!(rzp.inv(t), t);
            }
        }
        assert_eq!(rzp.identity_set(), bit(0) | bit(1));
        assert!(rzp.is_eq1_compatible());
    }

    #[test]
    fn left_zero_one_is_trivial_group() {
        let g = left_zero(1);
        assert_eq!(g.order(), 1);
        assert_eq!(g.e(0), 0);
    }

    #[test]
    fn eclass_decomposition() {
        let c4 = cyclic_group(4);
        let d = eclass_decompose(&c4);
        assert_eq!(d.len(), 1);
        assert!(d[0].is_group);
        assert_eq!(d[0].members, crate::sets::full(4));

        let lz2 = left_zero(2);
        let d = eclass_decompose(&lz2);
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|c| c.is_group && c.members.count_ones() == 1));

        let rzp = right_zero_product(&cyclic_group(2), 2).unwrap();
        let d = eclass_decompose(&rzp);
        assert_eq!(d.len(), 2);
        for class in &d {
            assert_eq!(class.members.count_ones(), 2);
            assert!(class.is_group);
        }
        // class of fixed λ: indices {k, 2+k}
        assert_eq!(d[0].members, bit(0) | bit(2));
        assert_eq!(d[1].members, bit(1) | bit(3));
    }

    #[test]
    fn rees_matrix_with_trivial_sandwich_is_eq1_compatible() {
        let c2 = cyclic_group(2);
        let out = rees_matrix(&c2, 2, 1, &[vec![0, 0]]).unwrap();
        assert!(out.eq1_compatible);
        assert_eq!(out.group.order(), 4);
    }

    #[test]
    fn rees_matrix_with_twisted_sandwich_breaks_eq1() {
        let c2 = cyclic_group(2);
        let out = rees_matrix(&c2, 2, 2, &[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(out.group.order(), 8);
        assert!(!out.eq1_compatible);
    }

    #[test]
    fn completely_simple_matches_validation_on_small_tables() {
        // Exhaustive order-2 cross-check of the validator against the
        // independent completely-simple test.
        for code in 0..16u32 {
            let rows = vec![
                vec![(code & 1) as usize, ((code >> 1) & 1) as usize],
                vec![((code >> 2) & 1) as usize, ((code >> 3) & 1) as usize],
            ];
            let t = table(rows);
            let is_gg = GenGroup::validate(t.clone()).is_ok();
            assert_eq!(is_gg, is_completely_simple(&t), "table code {code}");
        }
    }

    #[test]
    fn invariants_e_and_inv() {
        for g in [
            cyclic_group(4),
            klein_four(),
            left_zero(3),
            right_zero(3),
            right_zero_product(&cyclic_group(3), 2).unwrap(),
            left_zero_product(&cyclic_group(2), 3).unwrap(),
        ] {
            for t in 0..g.order() {
                assert_eq!(g.e(g.e(t)), g.e(t));
                assert_eq!(g.e(t), g.e(g.inv(t)));
                assert_eq!(g.inv(g.inv(t)), t);
            }
        }
    }
}
