//! Multi-indices, jet coordinates and their orderings.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A multi-index μ = (μ₁,…,μ_n) of derivative counts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Builds μ from a list of 1-based variable indices, e.g. `[3, 3]` ↦ (0,0,2).
    pub fn from_derivatives(n: usize, vars: &[usize]) -> Result<Self> {
        let mut e = vec![0; n];
        for &v in vars {
            if v == 0 || v > n {
                return Err(Error::VariableOutOfRange { i: v, n });
            }
            e[v - 1] += 1;
        }
        Ok(Self(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// μ + 1_i with 0-based `i`.
    pub fn raised(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        Self(e)
    }

    /// μ − 1_i with 0-based `i`, if μᵢ > 0.
    pub fn lowered(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Self(e))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Class: the smallest 1-based i with μᵢ ≠ 0.
    pub fn class(&self) -> Result<usize> {
        self.0.iter().position(|&e| e != 0).map(|i| i + 1).ok_or(Error::ClassOfOrderZero)
    }

    /// Variables listed with repetition, 1-based: (2,0,1) ↦ [1,1,3].
    pub fn derivatives(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize))
            .collect()
    }

    /// Digit-string rendering of the derivative list, `0` for the empty index.
    /// Indices above 9 switch to a comma-separated list.
    pub fn digits(&self) -> String {
        self.digits_offset(0)
    }

    /// As [`MultiIndex::digits`], with variable numbers shifted by `offset`.
    pub fn digits_offset(&self, offset: usize) -> String {
        let d = self.derivatives();
        if d.is_empty() {
            return "0".into();
        }
        let shifted: Vec<usize> = d.iter().map(|v| v + offset).collect();
        if self.0.len() + offset <= 9 {
            shifted.iter().map(|v| v.to_string()).collect()
        } else {
            shifted.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Jet coordinate y^k_μ; `unknown` is 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JetCoordinate {
    pub unknown: usize,
    pub index: MultiIndex,
}

impl JetCoordinate {
    pub fn new(unknown: usize, index: MultiIndex) -> Self {
        Self { unknown, index }
    }

    pub fn order(&self) -> usize {
        self.index.order()
    }

    pub fn raised(&self, i: usize) -> Self {
        Self { unknown: self.unknown, index: self.index.raised(i) }
    }

    /// Label such as `y_{13}` for one unknown, `y^2_{13}` otherwise.
    pub fn label(&self, m: usize) -> String {
        self.label_with("y", m, 0)
    }

    /// Label with a custom unknown symbol and variables numbered from
    /// `offset + 1`.
    pub fn label_with(&self, symbol: &str, m: usize, offset: usize) -> String {
        let base = if m == 1 { symbol.to_string() } else { format!("{symbol}^{}", self.unknown + 1) };
        if self.order() == 0 {
            base
        } else {
            format!("{base}_{{{}}}", self.index.digits_offset(offset))
        }
    }
}

impl fmt::Debug for JetCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}{:?}", self.unknown + 1, self.index)
    }
}

/// Order in which jets of equal order are listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum JetOrdering {
    /// Highest class first; within a class, multi-indices in increasing
    /// lexicographic order. This is the order in which jets are solved.
    #[default]
    ClassDescending,
    /// Lowest class first (the reverse within each order), used for listing
    /// parametric jets as `y, y₁, y₂, …, y₁₁, y₁₂, …`.
    ClassAscending,
}

impl JetOrdering {
    /// Compares jets of arbitrary order: order ascending first.
    pub fn compare(self, a: &JetCoordinate, b: &JetCoordinate) -> Ordering {
        a.order()
            .cmp(&b.order())
            .then_with(|| self.compare_same_order(a, b))
    }

    fn compare_same_order(self, a: &JetCoordinate, b: &JetCoordinate) -> Ordering {
        let idx = match self {
            JetOrdering::ClassDescending => a.index.cmp(&b.index),
            JetOrdering::ClassAscending => b.index.cmp(&a.index),
        };
        idx.then_with(|| a.unknown.cmp(&b.unknown))
    }
}

/// Column order used by every elimination: higher order first, then
/// class-descending within an order. Pivots are therefore taken at the
/// highest order and class available.
pub fn elimination_cmp(a: &JetCoordinate, b: &JetCoordinate) -> Ordering {
    b.order()
        .cmp(&a.order())
        .then_with(|| JetOrdering::ClassDescending.compare_same_order(a, b))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of multi-indices of length exactly `q` in `n` variables.
pub fn monomial_count(n: usize, q: usize) -> usize {
    assert!(n >= 1, "at least one variable");
    binomial(q + n - 1, n - 1)
}

/// Number of multi-indices of length `q ≥ 1` and class `i`, 1 ≤ i ≤ n.
pub fn class_count(n: usize, q: usize, i: usize) -> usize {
    assert!((1..=n).contains(&i) && q >= 1);
    binomial(q + n - i - 1, n - i)
}

pub fn class_of(mu: &MultiIndex) -> Result<usize> {
    mu.class()
}

/// All multi-indices of length exactly `q`, sorted by `ordering`.
pub fn enumerate(n: usize, q: usize, ordering: JetOrdering) -> Vec<MultiIndex> {
    if n == 0 {
        return if q == 0 { vec![MultiIndex(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::with_capacity(monomial_count(n, q));
    let mut cur = vec![0u32; n];
    fill(&mut out, &mut cur, 0, q as u32);
    // `fill` emits in lexicographic order (ascending).
    if ordering == JetOrdering::ClassAscending {
        out.reverse();
    }
    out
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, rest: u32) {
    let n = cur.len();
    if pos + 1 == n {
        cur[pos] = rest;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for e in 0..=rest {
        cur[pos] = e;
        fill(out, cur, pos + 1, rest - e);
    }
    cur[pos] = 0;
}

/// All jets of order in `lo..=hi` for `m` unknowns, in elimination order,
/// with a reverse lookup from jet to column.
#[derive(Clone, Debug)]
pub struct JetIndex {
    jets: Vec<JetCoordinate>,
    lookup: HashMap<JetCoordinate, usize>,
}

impl JetIndex {
    pub fn new(n: usize, m: usize, lo: usize, hi: usize) -> Self {
        let mut jets = Vec::new();
        for q in (lo..=hi).rev() {
            for mu in enumerate(n, q, JetOrdering::ClassDescending) {
                for k in 0..m {
                    jets.push(JetCoordinate::new(k, mu.clone()));
                }
            }
        }
        let lookup = jets.iter().cloned().enumerate().map(|(i, j)| (j, i)).collect();
        Self { jets, lookup }
    }

    pub fn len(&self) -> usize {
        self.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn jets(&self) -> &[JetCoordinate] {
        &self.jets
    }

    pub fn jet(&self, col: usize) -> &JetCoordinate {
        &self.jets[col]
    }

    pub fn column(&self, jet: &JetCoordinate) -> Option<usize> {
        self.lookup.get(jet).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_of(&mi(&[0, 0, 2])), Ok(3));
        assert_eq!(class_of(&mi(&[0, 1, 1])), Ok(2));
        assert_eq!(class_of(&mi(&[1, 0, 0, 3])), Ok(1));
        assert_eq!(class_of(&mi(&[0, 0])), Err(Error::ClassOfOrderZero));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(monomial_count(4, 3), 20);
        assert_eq!(monomial_count(4, 4), 35);
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_count(3, 2, 3), 1);
        assert_eq!(class_count(3, 2, 1), 3);
    }

    /// Brute-force enumeration of all vectors with entries ≤ q.
    fn brute(n: usize, q: usize) -> Vec<Vec<u32>> {
        let mut all = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for v in &all {
                for e in 0..=q as u32 {
                    let mut w: Vec<u32> = v.clone();
                    w.push(e);
                    next.push(w);
                }
            }
            all = next;
        }
        all.retain(|v| v.iter().sum::<u32>() as usize == q);
        all
    }

    #[test]
    fn class_counts_sum_by_enumeration() {
        let all = brute(4, 5);
        assert_eq!(all.len(), 56);
        for i in 1..=4 {
            let by_class = all.iter().filter(|v| v.iter().position(|&e| e != 0) == Some(i - 1)).count();
            assert_eq!(class_count(4, 5, i), by_class);
        }
        assert_eq!((1..=4).map(|i| class_count(4, 5, i)).sum::<usize>(), 56);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(2, 1, JetOrdering::ClassDescending), vec![mi(&[0, 1]), mi(&[1, 0])]);
        assert_eq!(enumerate(3, 0, JetOrdering::ClassDescending), vec![mi(&[0, 0, 0])]);
        let e = enumerate(4, 2, JetOrdering::ClassDescending);
        assert_eq!(e.len(), 10);
        assert_eq!(e[0], mi(&[0, 0, 0, 2]));
        let mut oracle: Vec<MultiIndex> = brute(4, 2).into_iter().map(MultiIndex::new).collect();
        oracle.sort();
        assert_eq!(e, oracle);
    }

    #[test]
    fn elimination_order_puts_high_order_first() {
        let idx = JetIndex::new(2, 1, 0, 2);
        let labels: Vec<String> = idx.jets().iter().map(|j| j.label(1)).collect();
        assert_eq!(labels, ["y_{22}", "y_{12}", "y_{11}", "y_{2}", "y_{1}", "y"]);
    }

    #[test]
    fn digits_rendering() {
        assert_eq!(mi(&[2, 0, 1]).digits(), "113");
        assert_eq!(mi(&[0, 0, 0]).digits(), "0");
        let mut big = vec![0; 10];
        big[9] = 1;
        big[0] = 1;
        assert_eq!(MultiIndex::new(big).digits(), "1,10");
    }

    proptest! {
        #[test]
        fn class_counts_partition(n in 1usize..=6, q in 1usize..=10) {
            let s: usize = (1..=n).map(|i| class_count(n, q, i)).sum();
            prop_assert_eq!(s, monomial_count(n, q));
        }

        #[test]
        fn pascal_recurrence(n in 2usize..=6, q in 1usize..=10) {
            prop_assert_eq!(monomial_count(n, q), monomial_count(n - 1, q) + monomial_count(n, q - 1));
        }

        #[test]
        fn enumeration_is_duplicate_free(n in 1usize..=4, q in 0usize..=5) {
            let e = enumerate(n, q, JetOrdering::ClassDescending);
            let set: std::collections::HashSet<_> = e.iter().cloned().collect();
            prop_assert_eq!(set.len(), e.len());
            prop_assert_eq!(e.len(), monomial_count(n, q));
            prop_assert!(e.iter().all(|m| m.order() == q));
        }
    }
}
