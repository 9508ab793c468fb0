//! Bitmask subsets over a small point universe.
//!
//! Every subset of a carrier (points of a space, elements of a group) is a
//! `Mask`; point `i` is in the set iff bit `i` is set. All carriers are capped
//! at [`MAX_POINTS`] points.

/// A subset of a universe of at most 128 points.
pub type Mask = u128;

/// Hard cap on carrier size.
pub const MAX_POINTS: usize = 128;

/// Singleton `{i}`.
#[inline]
pub fn bit(i: usize) -> Mask {
    debug_assert!(i < MAX_POINTS);
    1u128 << i
}

/// The full set `{0, .., n-1}`.
#[inline]
pub fn full(n: usize) -> Mask {
    debug_assert!(n <= MAX_POINTS);
    if n == MAX_POINTS {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask & bit(i) != 0
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Iterate the members of a mask in increasing order.
pub fn members(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Image of a set under a total map given as an index table.
pub fn image(table: &[usize], set: Mask) -> Mask {
    members(set).fold(0, |acc, i| acc | bit(table[i]))
}

/// Preimage of a set under a total map given as an index table.
pub fn preimage(table: &[usize], set: Mask) -> Mask {
    table
        .iter()
        .enumerate()
        .filter(|(_, &y)| contains(set, y))
        .fold(0, |acc, (x, _)| acc | bit(x))
}

/// All subsets of `universe`, in increasing numeric order. Only usable when
/// `universe` has few members; the caller is responsible for the bound.
pub fn subsets(universe: Mask) -> Vec<Mask> {
    let k = universe.count_ones();
    assert!(k <= 24, "subset enumeration over {k} points is out of budget");
    let mut out = Vec::with_capacity(1 << k);
    // Standard submask walk, then sort for a canonical order.
    let mut s = universe;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & universe;
    }
    out.sort_unstable();
    out
}

/// Render a mask as `{a b c}` using the given point names.
pub fn render(mask: Mask, names: &[String]) -> String {
    let inner = members(mask)
        .map(|i| names[i].as_str())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{{{inner}}}")
}
