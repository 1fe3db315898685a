//! Subset indexing over `{0, …, n}`, the position-sum exponent `S(F, P)`,
//! and perfect-matching enumeration with signs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ground-set element supported by [`SubsetIndex`].
pub const MAX_ELEMENT: u8 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinError {
    #[error("elements must be strictly increasing and at most {MAX_ELEMENT}, got {0:?}")]
    BadElements(Vec<u8>),
    #[error("{f} is not a subset of {p}")]
    NotASubset { f: SubsetIndex, p: SubsetIndex },
    #[error("perfect matchings require an even-cardinality set, |{0}| is odd")]
    OddCardinality(SubsetIndex),
    #[error("blocks do not form a perfect matching of their union: {0:?}")]
    BadBlocks(Vec<(u8, u8)>),
}

/// A subset of `{0, 1, …, MAX_ELEMENT}` in canonical sorted form.
///
/// Stored as a bitmask; the sorted element list is exposed through
/// [`SubsetIndex::elements`], which walks the mask in increasing order, so the
/// two views cannot disagree. Element `0` conventionally stands for the
/// distinguished degree-one generator (`X_0 := G`) wherever a subset indexes a
/// Clifford basis monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetIndex(u32);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    /// Builds a subset from strictly increasing elements.
    pub fn new(elements: &[u8]) -> Result<Self, CombinError> {
        let mut mask = 0u32;
        for (k, &e) in elements.iter().enumerate() {
            if e > MAX_ELEMENT || (k > 0 && elements[k - 1] >= e) {
                return Err(CombinError::BadElements(elements.to_vec()));
            }
            mask |= 1 << e;
        }
        Ok(SubsetIndex(mask))
    }

    pub fn singleton(e: u8) -> Self {
        debug_assert!(e <= MAX_ELEMENT);
        SubsetIndex(1 << e)
    }

    /// Subset `{lo, lo+1, …, hi}`.
    pub fn range(lo: u8, hi: u8) -> Self {
        debug_assert!(hi <= MAX_ELEMENT);
        if lo > hi {
            return Self::EMPTY;
        }
        SubsetIndex((((1u64 << (hi - lo + 1)) - 1) as u32) << lo)
    }

    pub fn from_mask(mask: u32) -> Self {
        debug_assert_eq!(mask >> (MAX_ELEMENT + 1), 0);
        SubsetIndex(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u8) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetIndex) -> SubsetIndex {
        SubsetIndex(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetIndex) -> SubsetIndex {
        SubsetIndex(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetIndex) -> SubsetIndex {
        SubsetIndex(self.0 & !other.0)
    }

    pub fn insert(self, e: u8) -> SubsetIndex {
        debug_assert!(e <= MAX_ELEMENT);
        SubsetIndex(self.0 | 1 << e)
    }

    pub fn remove(self, e: u8) -> SubsetIndex {
        SubsetIndex(self.0 & !(1 << e))
    }

    pub fn min(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8)
    }

    pub fn max(self) -> Option<u8> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as u8)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            (mask != 0).then(|| {
                let e = mask.trailing_zeros() as u8;
                mask &= mask - 1;
                e
            })
        })
    }

    /// All subsets of `self`, in increasing bitmask order (∅ first, `self` last).
    pub fn subsets(self) -> impl Iterator<Item = SubsetIndex> {
        let mask = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == mask {
                None
            } else {
                Some((s | !mask).wrapping_add(1) & mask)
            };
            Some(SubsetIndex(s))
        })
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Position-sum exponent `S(F, P) = (j_1 + … + j_r) - r(r+1)/2`, where `j_k`
/// is the 1-based position of the k-th element of `F` inside the sorted `P`,
/// and `S(∅, P) = 0`.
pub fn s_count(f: SubsetIndex, p: SubsetIndex) -> Result<i64, CombinError> {
    if !f.is_subset_of(p) {
        return Err(CombinError::NotASubset { f, p });
    }
    let mut pos_sum = 0i64;
    let mut r = 0i64;
    for (idx, e) in p.elements().enumerate() {
        if f.contains(e) {
            pos_sum += idx as i64 + 1;
            r += 1;
        }
    }
    Ok(pos_sum - r * (r + 1) / 2)
}

/// `(-1)^{S(F,P)}` as an exact integer sign.
pub fn s_sign(f: SubsetIndex, p: SubsetIndex) -> Result<i64, CombinError> {
    Ok(if s_count(f, p)? % 2 == 0 { 1 } else { -1 })
}

/// A perfect matching of an even-cardinality integer set: a partition into
/// blocks of cardinality 2, kept in canonical form (each block `(lo, hi)` with
/// `lo < hi`, blocks sorted by their larger element).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PerfectMatching {
    blocks: Vec<(u8, u8)>,
}

impl PerfectMatching {
    /// The empty matching (of ∅).
    pub fn empty() -> Self {
        PerfectMatching { blocks: Vec::new() }
    }

    /// Builds a matching from blocks, normalizing each block and the block
    /// order; rejects overlapping blocks.
    pub fn new(blocks: &[(u8, u8)]) -> Result<Self, CombinError> {
        let mut norm: Vec<(u8, u8)> = Vec::with_capacity(blocks.len());
        let mut seen = SubsetIndex::EMPTY;
        for &(a, b) in blocks {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if lo == hi || a > MAX_ELEMENT || b > MAX_ELEMENT || seen.contains(lo) || seen.contains(hi)
            {
                return Err(CombinError::BadBlocks(blocks.to_vec()));
            }
            seen = seen.insert(lo).insert(hi);
            norm.push((lo, hi));
        }
        norm.sort_by_key(|&(_, hi)| hi);
        Ok(PerfectMatching { blocks: norm })
    }

    pub fn blocks(&self) -> &[(u8, u8)] {
        &self.blocks
    }

    /// The union of all blocks.
    pub fn matched_set(&self) -> SubsetIndex {
        self.blocks
            .iter()
            .fold(SubsetIndex::EMPTY, |s, &(a, b)| s.insert(a).insert(b))
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "∅");
        }
        for (k, (a, b)) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

/// All perfect matchings of `s`, each in canonical form, in a deterministic
/// order. The recursion anchors at `s̄ = max(s)` and pairs it with partners in
/// increasing order; for `s = ∅` the single empty matching is returned.
pub fn enumerate_matchings(s: SubsetIndex) -> Result<Vec<PerfectMatching>, CombinError> {
    if s.len() % 2 != 0 {
        return Err(CombinError::OddCardinality(s));
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    enumerate_rec(s, &mut stack, &mut out);
    Ok(out)
}

fn enumerate_rec(s: SubsetIndex, stack: &mut Vec<(u8, u8)>, out: &mut Vec<PerfectMatching>) {
    let Some(top) = s.max() else {
        out.push(PerfectMatching {
            blocks: stack.clone(),
        });
        return;
    };
    let rest = s.remove(top);
    for i in rest.elements() {
        // Blocks accumulate with strictly increasing larger element, so the
        // innermost base case sees them already in canonical order.
        stack.insert(0, (i, top));
        enumerate_rec(rest.remove(i), stack, out);
        stack.remove(0);
    }
}

/// Sign of a canonical perfect matching: the sign of the permutation sending
/// the sorted matched set to the block-ordered listing. It coincides with
/// `(-1)^{Σ_k S(P_k, P_k ⊔ … ⊔ P_m)}`; both routes are computed and checked
/// against each other.
pub fn matching_sign(m: &PerfectMatching) -> i64 {
    let set = m.matched_set();
    let sorted: Vec<u8> = set.elements().collect();
    let image: Vec<u8> = m.blocks.iter().flat_map(|&(a, b)| [a, b]).collect();
    debug_assert_eq!(sorted.len(), image.len());

    // Permutation sign via cycle decomposition.
    let pos_of = |v: u8| sorted.iter().position(|&x| x == v).unwrap();
    let perm: Vec<usize> = image.iter().map(|&v| pos_of(v)).collect();
    let mut visited = vec![false; perm.len()];
    let mut sign = 1i64;
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !visited[at] {
            visited[at] = true;
            at = perm[at];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }

    // Independent route through the position-sum exponent.
    let mut exp = 0i64;
    let mut tail = set;
    for &(a, b) in &m.blocks {
        let block = SubsetIndex::EMPTY.insert(a).insert(b);
        exp += s_count(block, tail).expect("blocks partition the matched set");
        tail = tail.difference(block);
    }
    let formula_sign = if exp % 2 == 0 { 1 } else { -1 };
    assert_eq!(sign, formula_sign, "matching sign routes disagree on {m}");
    sign
}

/// Odd double factorial `(k)!!` for odd `k ≥ -1`, with `(-1)!! = 1`.
pub fn double_factorial(k: i64) -> u64 {
    let mut acc = 1u64;
    let mut v = k;
    while v > 1 {
        acc *= v as u64;
        v -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(elems: &[u8]) -> SubsetIndex {
        SubsetIndex::new(elems).unwrap()
    }

    /// Brute-force position counter, independent of `s_count`.
    fn s_count_oracle(f: SubsetIndex, p: SubsetIndex) -> i64 {
        let pv: Vec<u8> = p.elements().collect();
        let mut sum = 0i64;
        let mut r = 0i64;
        for e in f.elements() {
            sum += pv.iter().position(|&x| x == e).unwrap() as i64 + 1;
            r += 1;
        }
        sum - r * (r + 1) / 2
    }

    /// O(n²) inversion counter, independent of `matching_sign`.
    fn inversion_sign(m: &PerfectMatching) -> i64 {
        let image: Vec<u8> = m.blocks().iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut inv = 0;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                if image[i] > image[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn s_count_examples() {
        assert_eq!(s_count(SubsetIndex::EMPTY, sub(&[2, 3, 5, 8])).unwrap(), 0);
        assert_eq!(s_count(sub(&[1, 2]), sub(&[1, 2])).unwrap(), 0);
        // positions 2 and 4: 2 + 4 - 3 = 3, cross-checked below
        assert_eq!(s_count(sub(&[3, 8]), sub(&[2, 3, 5, 8])).unwrap(), 3);
        assert_eq!(
            s_count_oracle(sub(&[3, 8]), sub(&[2, 3, 5, 8])),
            s_count(sub(&[3, 8]), sub(&[2, 3, 5, 8])).unwrap()
        );
    }

    #[test]
    fn s_count_rejects_non_subset() {
        assert!(matches!(
            s_count(sub(&[1]), sub(&[2, 3])),
            Err(CombinError::NotASubset { .. })
        ));
    }

    #[test]
    fn s_count_matches_oracle_exhaustively() {
        let ground = SubsetIndex::range(1, 8);
        for p in ground.subsets() {
            for f in p.subsets() {
                assert_eq!(s_count(f, p).unwrap(), s_count_oracle(f, p), "F={f} P={p}");
            }
        }
    }

    #[test]
    fn matchings_of_empty_set() {
        let ms = enumerate_matchings(SubsetIndex::EMPTY).unwrap();
        assert_eq!(ms, vec![PerfectMatching::empty()]);
        assert_eq!(matching_sign(&ms[0]), 1);
    }

    #[test]
    fn matchings_of_2358() {
        // The three matchings of {2,3,5,8}: {2,3}|{5,8}, {2,5}|{3,8}, {3,5}|{2,8}.
        let ms = enumerate_matchings(sub(&[2, 3, 5, 8])).unwrap();
        assert_eq!(ms.len(), 3);
        let expect = [
            PerfectMatching::new(&[(3, 5), (2, 8)]).unwrap(),
            PerfectMatching::new(&[(2, 5), (3, 8)]).unwrap(),
            PerfectMatching::new(&[(2, 3), (5, 8)]).unwrap(),
        ];
        for e in &expect {
            assert!(ms.contains(e), "missing {e}");
        }
    }

    #[test]
    fn matching_counts_are_double_factorials() {
        for hi in [1u8, 3, 5, 7] {
            let s = SubsetIndex::range(0, hi);
            let ms = enumerate_matchings(s).unwrap();
            assert_eq!(ms.len() as u64, double_factorial(s.len() as i64 - 1));
        }
        assert_eq!(enumerate_matchings(SubsetIndex::range(1, 6)).unwrap().len(), 15);
    }

    #[test]
    fn matchings_reject_odd_sets() {
        assert!(matches!(
            enumerate_matchings(sub(&[1, 2, 3])),
            Err(CombinError::OddCardinality(_))
        ));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(matching_sign(&PerfectMatching::new(&[(1, 2)]).unwrap()), 1);
        // one-line image 1 3 2 4 has a single inversion
        let m = PerfectMatching::new(&[(1, 3), (2, 4)]).unwrap();
        assert_eq!(matching_sign(&m), -1);
        assert_eq!(inversion_sign(&m), -1);
    }

    #[test]
    fn signs_match_inversion_oracle_and_sum_to_one() {
        for mask in 0u32..1 << 9 {
            let s = SubsetIndex::from_mask(mask);
            if s.len() % 2 != 0 {
                continue;
            }
            let ms = enumerate_matchings(s).unwrap();
            assert_eq!(ms.len() as u64, double_factorial(s.len() as i64 - 1));
            let mut sum = 0i64;
            for m in &ms {
                let sg = matching_sign(m);
                assert_eq!(sg, inversion_sign(m), "matching {m}");
                sum += sg;
            }
            assert_eq!(sum, 1, "sign sum over π₂({s})");
        }
    }

    #[test]
    fn subset_iteration_order_is_ascending() {
        let s = sub(&[1, 3, 4]);
        let subs: Vec<u32> = s.subsets().map(|x| x.mask()).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subs[0], 0);
        assert_eq!(*subs.last().unwrap(), s.mask());
    }
}
