//! Subsets of a universe of at most 64 elements, stored as machine words.

/// Bit `i` set means element `i` (0-based) is a member.
pub type SubsetMask = u64;

/// Largest universe a [`SubsetMask`] can index.
pub const MAX_UNIVERSE: usize = 64;

/// The mask of the full universe `{0, .., n-1}`.
#[inline]
pub fn full(n: usize) -> SubsetMask {
    debug_assert!(n <= MAX_UNIVERSE);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn size(mask: SubsetMask) -> usize {
    mask.count_ones() as usize
}

#[inline]
pub fn is_subset(a: SubsetMask, b: SubsetMask) -> bool {
    a & !b == 0
}

/// Iterates the members of `mask` in increasing order.
pub fn elements(mut mask: SubsetMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Builds a mask from 0-based element indices.
pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> SubsetMask {
    it.into_iter().fold(0, |m, i| m | (1u64 << i))
}

/// Iterates every subset of `mask`, in decreasing numeric order, ending with 0.
pub fn subsets(mask: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Iterates the masks of exactly `k` elements of `{0, .., n-1}` in increasing
/// numeric order (Gosper's hack).
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = SubsetMask> {
    let limit = full(n);
    let mut cur = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full(k))
    };
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c.wrapping_add(low);
            if ripple == 0 {
                None
            } else {
                let next = (((ripple ^ c) >> 2) / low) | ripple;
                if next & !limit != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(c)
    })
}

/// The up-closure of `family` inside the universe `full(n)`, sorted ascending.
pub fn up_closure(family: &[SubsetMask], n: usize) -> Vec<SubsetMask> {
    closure(family, n, true)
}

/// The down-closure of `family`, sorted ascending.
pub fn down_closure(family: &[SubsetMask], n: usize) -> Vec<SubsetMask> {
    closure(family, n, false)
}

fn closure(family: &[SubsetMask], n: usize, up: bool) -> Vec<SubsetMask> {
    let universe = full(n);
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<SubsetMask> = Vec::new();
    for &f in family {
        if seen.insert(f) {
            stack.push(f);
        }
    }
    while let Some(x) = stack.pop() {
        let free = if up { universe & !x } else { x };
        for i in elements(free) {
            let y = x ^ (1u64 << i);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count_and_order() {
        let v: Vec<_> = combinations(5, 2).collect();
        assert_eq!(v.len(), 10);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|&m| size(m) == 2 && m < 32));
        assert_eq!(combinations(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(combinations(3, 4).count(), 0);
        assert_eq!(combinations(64, 63).count(), 64);
    }

    #[test]
    fn subsets_enumerates_all() {
        let v: Vec<_> = subsets(0b1011).collect();
        assert_eq!(v.len(), 8);
        assert_eq!(*v.last().unwrap(), 0);
    }

    #[test]
    fn closures() {
        assert_eq!(up_closure(&[0b11], 2), vec![0b11]);
        assert_eq!(up_closure(&[0], 2).len(), 4);
        assert_eq!(down_closure(&[0b101], 3), vec![0, 1, 4, 5]);
    }
}
