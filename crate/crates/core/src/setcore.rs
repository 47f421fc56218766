//! Finite sets of small positive integers and the orders on them.
//!
//! Elements are 1-based. A set is stored as a `u64` bitmask in which element
//! `k` occupies bit `k - 1`, so the ground set is capped at `[1, 64]`. The
//! increasing-sequence view `a_1 < a_2 < ... < a_r` is recovered by walking the
//! set bits from the least significant end.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest ground-set size the engine supports.
pub const MAX_N: u32 = 64;

/// Ground-set size `n` and set size `r` for one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: u32,
    r: u32,
}

impl Params {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r}, need r >= 2")));
        }
        if n < 2 * r {
            return Err(Error::InvalidParams(format!("n = {n} < 2r = {}", 2 * r)));
        }
        if n > MAX_N {
            return Err(Error::InvalidParams(format!("n = {n} > {MAX_N}")));
        }
        Ok(Params { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `n - 2r`, the number of ground elements beyond `[2r]`.
    pub fn excess(&self) -> u32 {
        self.n - 2 * self.r
    }
}

/// A nonempty subset of `[1, 64]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RSet {
    mask: u64,
}

/// Mask of `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
pub(crate) fn range_mask(lo: u32, hi: u32) -> u64 {
    if lo > hi || hi == 0 {
        return 0;
    }
    let lo = lo.max(1);
    let upper = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
    upper & !((1u64 << (lo - 1)) - 1)
}

/// Iterates the elements (1-based) of a mask in increasing order.
pub(crate) fn mask_elements(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros();
            mask &= mask - 1;
            Some(k + 1)
        }
    })
}

/// `A ≺ G` on raw masks: `|G| <= |A|` and `a_i <= g_i` for `i <= |G|`.
#[inline]
pub(crate) fn prefix_dominated(a: u64, g: u64) -> bool {
    if g.count_ones() > a.count_ones() {
        return false;
    }
    let (mut a, mut g) = (a, g);
    while g != 0 {
        if a.trailing_zeros() > g.trailing_zeros() {
            return false;
        }
        a &= a - 1;
        g &= g - 1;
    }
    true
}

/// Positionwise `a_i <= b_i` on equal-size masks.
#[inline]
pub(crate) fn mask_leq(a: u64, b: u64) -> bool {
    debug_assert_eq!(a.count_ones(), b.count_ones());
    prefix_dominated(a, b)
}

/// Lexicographic comparison of the increasing sequences of two equal-size masks.
#[inline]
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b) & (a ^ b).wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// All `k`-element masks over `[1, n]`, in increasing integer (colex) order.
pub(crate) fn masks_of_size(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { None } else { Some(1u64 << n) };
    let mut next = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some(range_mask(1, k))
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let rr = cur.wrapping_add(c);
            if rr == 0 {
                None
            } else {
                let nxt = (((rr ^ cur) >> 2) / c) | rr;
                match limit {
                    Some(l) if nxt >= l => None,
                    _ => Some(nxt),
                }
            }
        };
        Some(cur)
    })
}

impl RSet {
    /// Builds a set from a strictly increasing list of elements in `[1, 64]`.
    pub fn new(elements: &[u32]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidSet("empty set".into()));
        }
        let mut mask = 0u64;
        let mut prev = 0u32;
        for &e in elements {
            if e == 0 || e > MAX_N {
                return Err(Error::InvalidSet(format!(
                    "element {e} outside [1, {MAX_N}]"
                )));
            }
            if e <= prev {
                return Err(Error::InvalidSet(format!(
                    "elements must be strictly increasing ({prev} then {e})"
                )));
            }
            prev = e;
            mask |= 1u64 << (e - 1);
        }
        Ok(RSet { mask })
    }

    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::InvalidSet("empty set".into()));
        }
        Ok(RSet { mask })
    }

    /// `[lo, hi]` as a set.
    pub fn range(lo: u32, hi: u32) -> Result<Self> {
        if lo == 0 || hi > MAX_N {
            return Err(Error::InvalidSet(format!(
                "range [{lo}, {hi}] outside [1, {MAX_N}]"
            )));
        }
        RSet::from_mask(range_mask(lo, hi))
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        mask_elements(self.mask)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements().collect()
    }

    pub fn contains(&self, k: u32) -> bool {
        (1..=MAX_N).contains(&k) && self.mask & (1u64 << (k - 1)) != 0
    }

    pub fn min_element(&self) -> u32 {
        self.mask.trailing_zeros() + 1
    }

    pub fn max_element(&self) -> u32 {
        64 - self.mask.leading_zeros()
    }

    pub fn intersects(&self, other: &RSet) -> bool {
        self.mask & other.mask != 0
    }

    pub fn is_subset_of(&self, other: &RSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// The `i`-th smallest element, 1-based (`a_i`).
    pub fn get(&self, i: usize) -> Option<u32> {
        if i == 0 {
            return None;
        }
        self.elements().nth(i - 1)
    }

    /// Sum of elements, the potential that every effective compression lowers.
    pub fn weight(&self) -> u64 {
        self.elements().map(u64::from).sum()
    }

    /// Immediate predecessors in the compression order: lower one element by
    /// one where the result is still a set of positive integers.
    pub fn lower_covers(&self) -> impl Iterator<Item = RSet> + '_ {
        let mask = self.mask;
        mask_elements(mask).filter_map(move |e| {
            if e == 1 || mask & (1u64 << (e - 2)) != 0 {
                None
            } else {
                Some(RSet {
                    mask: (mask & !(1u64 << (e - 1))) | (1u64 << (e - 2)),
                })
            }
        })
    }

    /// Immediate successors in the compression order within `[1, n]`.
    pub fn upper_covers(&self, n: u32) -> impl Iterator<Item = RSet> + '_ {
        let mask = self.mask;
        mask_elements(mask).filter_map(move |e| {
            if e >= n || mask & (1u64 << e) != 0 {
                None
            } else {
                Some(RSet {
                    mask: (mask & !(1u64 << (e - 1))) | (1u64 << e),
                })
            }
        })
    }
}

impl Ord for RSet {
    /// Shorter sets first, then lexicographic on the increasing sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| lex_cmp_masks(self.mask, other.mask))
    }
}

impl PartialOrd for RSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for RSet {
    type Err = Error;

    /// Parses a set literal such as `2,5,8`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            what: "set literal",
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_err("empty literal".into()));
        }
        let elements = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| parse_err(format!("{:?}: {e}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        RSet::new(&elements).map_err(|e| parse_err(e.to_string()))
    }
}

/// The `ij`-compression `C_ij(A)`: replace `j` by `i` when `j ∈ A` and `i ∉ A`.
pub fn compress_set(a: &RSet, i: u32, j: u32, n: u32) -> Result<RSet> {
    if i == 0 || i >= j || j > n || n > MAX_N {
        return Err(Error::BadIndices { i, j, n });
    }
    if a.max_element() > n {
        return Err(Error::InvalidSet(format!("{a:?} is not inside [1, {n}]")));
    }
    if a.contains(j) && !a.contains(i) {
        Ok(RSet {
            mask: (a.mask & !(1u64 << (j - 1))) | (1u64 << (i - 1)),
        })
    } else {
        Ok(*a)
    }
}

/// The compression order: `a_i <= b_i` at every position.
pub fn leq(a: &RSet, b: &RSet) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    Ok(mask_leq(a.mask, b.mask))
}

/// A generating set: a subset of `[2r]` with at most `r` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(RSet);

impl Generator {
    pub fn new(set: RSet, r: u32) -> Result<Self> {
        if set.len() > r as usize {
            return Err(Error::InvalidSet(format!(
                "generator {set:?} has {} > r = {r} elements",
                set.len()
            )));
        }
        if set.max_element() > 2 * r {
            return Err(Error::InvalidSet(format!(
                "generator {set:?} is not inside [1, 2r] = [1, {}]",
                2 * r
            )));
        }
        Ok(Generator(set))
    }

    pub fn parse(literal: &str, r: u32) -> Result<Self> {
        Generator::new(literal.parse()?, r)
    }

    pub fn as_set(&self) -> &RSet {
        &self.0
    }

    pub fn mask(&self) -> u64 {
        self.0.mask
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `A ≺ G`: `G` generates `A`. Positions past `|G|` are unconstrained.
pub fn generates(g: &Generator, a: &RSet) -> bool {
    prefix_dominated(a.mask, g.mask())
}

/// `[1, within] \ A`.
pub fn complement(a: &RSet, within: u32) -> Result<RSet> {
    if within > MAX_N || a.max_element() > within {
        return Err(Error::InvalidSet(format!(
            "{a:?} is not inside [1, {within}]"
        )));
    }
    RSet::from_mask(range_mask(1, within) & !a.mask)
        .map_err(|_| Error::InvalidSet(format!("complement of {a:?} in [1, {within}] is empty")))
}

/// Every `r`-subset of `[n]`, sorted lexicographically.
pub fn all_rsets(n: u32, r: u32) -> Vec<RSet> {
    let mut sets: Vec<RSet> = masks_of_size(n, r)
        .filter(|&m| m != 0)
        .map(|mask| RSet { mask })
        .collect();
    sets.sort();
    sets
}
