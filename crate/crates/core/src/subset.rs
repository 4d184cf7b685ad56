//! Coalitions as bitmasks.
//!
//! A subset of the player set `{0, …, n-1}` is a [`Mask`] whose bit `i` is
//! set exactly when player `i` belongs to the coalition. The empty coalition
//! is `0`, the grand coalition is [`full_mask`]`(n)`.

/// Bitmask encoding of a coalition; supports up to 16 players.
pub type Mask = u32;

/// The grand coalition on `n` players.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    debug_assert!(n <= 16);
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// Number of players in the coalition.
#[inline]
pub fn cardinality(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Whether player `i` (0-based) belongs to the coalition.
#[inline]
pub fn contains(mask: Mask, player: usize) -> bool {
    mask & (1 << player) != 0
}

/// Players of the coalition in ascending order.
pub fn players(mask: Mask) -> impl Iterator<Item = usize> {
    (0..u32::BITS as usize).filter(move |&i| contains(mask, i))
}

/// All subsets of `mask`, including `mask` itself and the empty set.
///
/// Enumeration runs in decreasing bitmask order, which is the standard
/// constant-amortized subset walk `sub = (sub - 1) & mask`.
pub fn submasks(mask: Mask) -> Submasks {
    Submasks {
        mask,
        next: Some(mask),
    }
}

/// Iterator returned by [`submasks`].
#[derive(Debug, Clone)]
pub struct Submasks {
    mask: Mask,
    next: Option<Mask>,
}

impl Iterator for Submasks {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(cur)
    }
}

/// All supersets of `mask` within the grand coalition on `n` players,
/// including `mask` itself.
pub fn supersets(mask: Mask, n: usize) -> impl Iterator<Item = Mask> {
    let complement = full_mask(n) & !mask;
    submasks(complement).map(move |extra| mask | extra)
}

/// Every coalition of at most `max_card` players, ordered by cardinality
/// ascending and bitmask ascending within each cardinality.
///
/// This is the canonical basis order used throughout the crate for Gram
/// matrices and coefficient vectors.
pub fn canonical_order(n: usize, max_card: usize) -> Vec<Mask> {
    let mut masks: Vec<Mask> = (0..=full_mask(n))
        .filter(|&m| cardinality(m) <= max_card)
        .collect();
    masks.sort_by_key(|&m| (cardinality(m), m));
    masks
}
