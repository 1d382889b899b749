//! Bitmask helpers for subsets of a small ground set.

/// Number of elements in the subset.
pub fn count(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Indices of the set bits, ascending.
pub fn elements(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

/// Lowest set bit index; panics on the empty mask.
pub fn lowest(mask: u32) -> usize {
    debug_assert!(mask != 0);
    mask.trailing_zeros() as usize
}

/// All submasks of `mask`, ascending by value.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(cur.wrapping_sub(mask) & mask) };
        Some(cur)
    })
}
