//! Exponent vectors, integer partitions and the box-constrained counting
//! that gives the Betti numbers of `G(k, n)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponents `(a_1, ..., a_k)` of a monomial `c_1^{a_1} ... c_k^{a_k}`.
///
/// The ambient rank `k` is the length of the vector. Vectors are ordered by
/// weight first and then reverse-lexicographically (graded revlex), which is
/// the canonical term order of [`FreeClass`](crate::poly::FreeClass).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<u32>,
}

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn zero(k: usize) -> Self {
        Self {
            entries: vec![0; k],
        }
    }

    /// The exponent vector of the single generator `c_i` (1-based).
    pub fn unit(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= k, "generator index {i} outside 1..={k}");
        let mut entries = vec![0; k];
        entries[i - 1] = 1;
        Self { entries }
    }

    pub fn ambient_k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Exponent of `c_i`, 1-based; zero past the ambient rank.
    pub fn exponent(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// `a_1 + 2 a_2 + ... + k a_k`: the complex degree of the monomial.
    pub fn weight(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum()
    }

    /// `a_1 + ... + a_k`.
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|&a| a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    /// `size! / (a_1! ... a_k!)`.
    pub fn multinomial(&self) -> BigUint {
        // Build the multinomial as a product of binomials so intermediate
        // values stay as small as the result.
        let mut acc = BigUint::one();
        let mut running = 0u64;
        for &a in &self.entries {
            running += a as u64;
            acc *= binomial(running, a as u64);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_k(), other.ambient_k());
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self - e_i`, or `None` when `a_i = 0`.
    pub fn checked_sub_unit(&self, i: usize) -> Option<Self> {
        let a = *self.entries.get(i.checked_sub(1)?)?;
        if a == 0 {
            return None;
        }
        let mut entries = self.entries.clone();
        entries[i - 1] -= 1;
        Some(Self { entries })
    }

    pub fn with_incremented(&self, i: usize) -> Self {
        let mut entries = self.entries.clone();
        entries[i - 1] += 1;
        Self { entries }
    }

    /// Every exponent vector of length `k` with the given weight, in
    /// ascending canonical order.
    pub fn all_of_weight(weight: u64, k: usize) -> Vec<ExponentVector> {
        fn rec(idx: usize, remaining: u64, current: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if idx == 0 {
                if remaining == 0 {
                    out.push(ExponentVector::new(current.clone()));
                }
                return;
            }
            let step = idx as u64;
            let max = remaining / step;
            for a in 0..=max {
                current[idx - 1] = a as u32;
                rec(idx - 1, remaining - a * step, current, out);
            }
            current[idx - 1] = 0;
        }
        let mut out = Vec::new();
        if k == 0 {
            if weight == 0 {
                out.push(ExponentVector::zero(0));
            }
            return out;
        }
        let mut current = vec![0u32; k];
        rec(k, weight, &mut current, &mut out);
        out.sort();
        out
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_k()
            .cmp(&other.ambient_k())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| {
                // Reverse lexicographic: the vector whose last differing
                // entry is smaller is the larger one.
                for (a, b) in self.entries.iter().zip(&other.entries).rev() {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates weak monotonicity; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The rectangle `(n, ..., n)` with `k` rows.
    pub fn rectangle(k: usize, n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Self {
            parts: vec![n as u32; k],
        }
    }

    pub(crate) fn from_sorted_unchecked(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, k: usize, n: usize) -> bool {
        self.len() <= k && self.part(0) as usize <= n
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (1..=width as u32)
            .map(|col| self.parts.iter().filter(|&&p| p >= col).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Complement inside the `k x n` box, rotated by 180 degrees.
    pub fn complement(&self, k: usize, n: usize) -> Result<Partition> {
        if !self.fits_box(k, n) {
            return Err(Error::PartitionOutsideBox {
                partition: self.parts.clone(),
                k,
                n,
            });
        }
        let parts = (0..k).rev().map(|i| n as u32 - self.part(i)).collect();
        Ok(Partition::from_sorted_unchecked(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Partitions of `i` with at most `k` parts, each at most `n`, in
/// lexicographically descending order.
pub fn partitions_of_weight_in_box(i: u64, k: usize, n: usize) -> Vec<Partition> {
    fn rec(
        remaining: u64,
        max_part: u64,
        rows_left: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        if rows_left == 0 || max_part * (rows_left as u64) < remaining {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p as u32);
            rec(remaining - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(i, n as u64, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of the Gaussian binomial `[k+n choose k]_q`: entry `i` is the
/// number of partitions of `i` in the `k x n` box.
pub fn box_partition_counts(k: usize, n: usize) -> Vec<BigUint> {
    // table[r] holds [m choose r]_q for the current m, using
    // [m, r] = [m-1, r-1] + q^r [m-1, r].
    let mut table: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 1..=(k + n) {
        let top = m.min(k);
        let mut next: Vec<Vec<BigUint>> = Vec::with_capacity(top + 1);
        for r in 0..=top {
            let len = r * (m - r) + 1;
            let mut poly = vec![BigUint::zero(); len];
            if r >= 1 {
                for (d, c) in table[r - 1].iter().enumerate() {
                    poly[d] += c;
                }
            }
            if r < table.len() && r < m {
                for (d, c) in table[r].iter().enumerate() {
                    poly[d + r] += c;
                }
            }
            next.push(poly);
        }
        table = next;
    }
    table.swap_remove(k)
}

/// Number of partitions of `i` in the `k x n` box.
pub fn count_in_box(i: u64, k: usize, n: usize) -> BigUint {
    box_partition_counts(k, n)
        .get(i as usize)
        .cloned()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(ev(&[0, 0, 0, 0]).weight(), 0);
        assert_eq!(ev(&[0, 2, 2, 0]).weight(), 10);
        assert_eq!(ev(&[7, 0, 0]).weight(), 7);
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(ev(&[1, 1]).multinomial(), BigUint::from(2u32));
        assert_eq!(ev(&[3, 0]).multinomial(), BigUint::one());
        for l in 0..12u32 {
            let expected = factorial(l as u64 + 2) / (factorial(l as u64) * factorial(2));
            assert_eq!(ev(&[0, 2, l, 0]).multinomial(), expected);
        }
    }

    #[test]
    fn weight_dominates_size() {
        for v in ExponentVector::all_of_weight(9, 4) {
            assert!(v.weight() >= v.size());
            let only_first = v.entries()[1..].iter().all(|&a| a == 0);
            assert_eq!(v.weight() == v.size(), only_first);
        }
    }

    #[test]
    fn box_enumeration_small_cases() {
        assert_eq!(
            partitions_of_weight_in_box(0, 3, 3),
            vec![Partition::empty()]
        );
        assert_eq!(
            partitions_of_weight_in_box(2, 2, 2),
            vec![part(&[2]), part(&[1, 1])]
        );
        assert!(partitions_of_weight_in_box(5, 2, 2).is_empty());
    }

    #[test]
    fn box_counts_match_enumeration_and_binomial() {
        for k in 1..=8usize {
            for n in 1..=8usize {
                let counts = box_partition_counts(k, n);
                assert_eq!(counts.len(), k * n + 1);
                let mut total = BigUint::zero();
                for (i, c) in counts.iter().enumerate() {
                    let listed = partitions_of_weight_in_box(i as u64, k, n);
                    assert_eq!(BigUint::from(listed.len()), *c, "k={k} n={n} i={i}");
                    total += c;
                }
                assert_eq!(total, binomial((k + n) as u64, k as u64));
            }
        }
    }

    #[test]
    fn box_counts_are_palindromic() {
        for k in 1..=6usize {
            for n in 1..=6usize {
                let c = box_partition_counts(k, n);
                let rev: Vec<_> = c.iter().rev().cloned().collect();
                assert_eq!(c, rev);
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[3]).conjugate(), part(&[1, 1, 1]));
        assert_eq!(part(&[4, 2, 1]).conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn rejects_increasing_sequences() {
        assert!(matches!(
            Partition::new(vec![1, 2]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap(), part(&[3, 1]));
    }

    #[test]
    fn complement_in_box() {
        assert_eq!(part(&[2, 1]).complement(2, 3).unwrap(), part(&[2, 1]));
        assert_eq!(Partition::empty().complement(2, 2).unwrap(), part(&[2, 2]));
        assert!(part(&[3]).complement(2, 2).is_err());
    }

    #[test]
    fn canonical_order_is_graded_revlex() {
        // c1^2 > c2 and c1^3 > c1 c2 > c3 for k = 3
        assert!(ev(&[2, 0]) > ev(&[0, 1]));
        assert!(ev(&[3, 0, 0]) > ev(&[1, 1, 0]));
        assert!(ev(&[1, 1, 0]) > ev(&[0, 0, 1]));
        assert!(ev(&[0, 0, 1]) > ev(&[2, 0, 0]));
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..8, 0..7).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(p in arb_partition()) {
            let c = p.conjugate();
            prop_assert_eq!(c.size(), p.size());
            prop_assert_eq!(c.len(), p.part(0) as usize);
            prop_assert_eq!(c.conjugate(), p);
        }

        #[test]
        fn removing_one_generator_sums_to_multinomial(
            v in prop::collection::vec(0u32..5, 1..=6)
        ) {
            let beta = ExponentVector::new(v);
            prop_assume!(!beta.is_zero() && beta.size() <= 12);
            let total: BigUint = (1..=beta.ambient_k())
                .filter_map(|i| beta.checked_sub_unit(i))
                .map(|b| b.multinomial())
                .sum();
            prop_assert_eq!(total, beta.multinomial());
        }
    }
}
