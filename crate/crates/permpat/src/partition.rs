//! Set partitions of `{1..n}` and the interval calculus built on them:
//! `M(Π)`, the derived partition `Π′`, interwoven intervals, `μ` and `E_Π`.

use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{PartitionError, PermError};
use crate::perm::Permutation;

/// A partition of `{1..n}`. Blocks are sorted and ordered by their minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

/// Interwoven intervals touching the ends of `{1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InterwovenFeatures {
    /// Largest `ℓ` with `1 < ℓ < n` and `[1, ℓ]` interwoven.
    pub prefix: Option<usize>,
    /// Largest `m` with `1 < m < n` and `[m, n]` interwoven.
    pub suffix: Option<usize>,
    /// Whether `[1, n]` itself is interwoven.
    pub full: bool,
}

impl Partition {
    /// Builds a partition of `{1..n}` from blocks in any order.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition, PartitionError> {
        let mut block_of = vec![usize::MAX; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::Malformed("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(PartitionError::OutOfRange { n });
                }
                if block_of[x - 1] != usize::MAX {
                    return Err(PartitionError::Duplicate(x));
                }
                block_of[x - 1] = 0;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Missing(x + 1));
        }
        Ok(Partition::canonical(n, blocks))
    }

    /// Canonicalizes already-validated blocks.
    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Partition {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (id, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x - 1] = id;
            }
        }
        Partition { n, blocks, block_of }
    }

    /// Builds a partition from a block label for each element `1..=n`.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let n = labels.len();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i + 1);
        }
        Partition::canonical(n, groups.into_values().collect())
    }

    pub fn parse(text: &str) -> Result<Partition, PartitionError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(PartitionError::Malformed(text.to_string()));
        }
        let mut blocks = Vec::new();
        let mut n = 0;
        for part in t.split('|') {
            let block: Vec<usize> = part
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| PartitionError::Malformed(s.to_string())))
                .collect::<Result<_, _>>()?;
            if block.is_empty() {
                return Err(PartitionError::Malformed(text.to_string()));
            }
            n += block.len();
            blocks.push(block);
        }
        Partition::from_blocks(n, blocks)
    }

    /// `{ {1..n} }`.
    pub fn whole(n: usize) -> Partition {
        Partition::canonical(n, if n == 0 { vec![] } else { vec![(1..=n).collect()] })
    }

    /// All singletons.
    pub fn singletons(n: usize) -> Partition {
        Partition::canonical(n, (1..=n).map(|x| vec![x]).collect())
    }

    /// `Δ_n = { {i, n+1−i} }`.
    pub fn delta(n: usize) -> Partition {
        Partition::canonical(
            n,
            (1..=n.div_ceil(2)).map(|i| if i == n + 1 - i { vec![i] } else { vec![i, n + 1 - i] }).collect(),
        )
    }

    /// Odd numbers and even numbers.
    pub fn odd_even(n: usize) -> Partition {
        let blocks: Vec<Vec<usize>> = [1, 2]
            .iter()
            .map(|&s| (s..=n).step_by(2).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        Partition::canonical(n, blocks)
    }

    /// `{[1,a], [n−b+1,n]}` plus singletons in between.
    pub fn pi_ab(n: usize, a: usize, b: usize) -> Result<Partition, PartitionError> {
        if a == 0 || b == 0 || a + b > n {
            return Err(PartitionError::OutOfRange { n });
        }
        let mut blocks = vec![(1..=a).collect::<Vec<_>>(), (n - b + 1..=n).collect()];
        blocks.extend((a + 1..=n - b).map(|x| vec![x]));
        Ok(Partition::canonical(n, blocks))
    }

    /// Every partition of `{1..n}` in restricted-growth order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        if n == 0 {
            return vec![Partition::whole(0)];
        }
        let mut labels = vec![0usize; n];
        fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == labels.len() {
                out.push(Partition::from_labels(labels));
                return;
            }
            for l in 0..=max + 1 {
                labels[i] = l;
                rec(i + 1, max.max(l), labels, out);
            }
        }
        rec(1, 0, &mut labels, &mut out);
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `x` (1-based element).
    #[inline]
    pub fn block_index(&self, x: usize) -> usize {
        self.block_of[x - 1]
    }

    /// The block `[x]_Π`.
    pub fn block_of(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_of[x - 1]]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x - 1] == self.block_of[y - 1]
    }

    pub fn has_trivial_block(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }

    /// Neither the one-block partition nor the all-singletons partition.
    pub fn is_nontrivial(&self) -> bool {
        self.blocks.len() > 1 && self.blocks.len() < self.n
    }

    /// Every block is an interval.
    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| b[b.len() - 1] - b[0] + 1 == b.len())
    }

    /// An interval partition in which no two adjacent blocks are both nontrivial.
    pub fn has_no_consecutive_nontrivial_blocks(&self) -> bool {
        self.is_interval() && self.blocks.windows(2).all(|w| w[0].len() == 1 || w[1].len() == 1)
    }

    fn same_n(&self, other: &Partition) -> Result<(), PartitionError> {
        if self.n != other.n {
            Err(PartitionError::SizeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.same_n(other)?;
        let labels: Vec<usize> =
            (1..=self.n).map(|x| self.block_index(x) * self.n + other.block_index(x)).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.same_n(other)?;
        let mut uf = UnionFind::<usize>::new(self.n);
        for p in [self, other] {
            for b in &p.blocks {
                for w in b.windows(2) {
                    uf.union(w[0] - 1, w[1] - 1);
                }
            }
        }
        Ok(Partition::from_labels(&uf.into_labeling()))
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool, PartitionError> {
        self.same_n(other)?;
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| other.same_block(x, b[0]))))
    }

    /// `δ_n(Π)`: every block mapped through `x ↦ n+1−x`.
    pub fn reverse(&self) -> Partition {
        let n = self.n;
        Partition::canonical(n, self.blocks.iter().map(|b| b.iter().map(|&x| n + 1 - x).collect()).collect())
    }

    /// Image of the partition under a permutation of the same degree.
    pub fn image_under(&self, pi: &Permutation) -> Result<Partition, PermError> {
        if pi.degree() != self.n {
            return Err(PermError::DegreeMismatch { left: pi.degree(), right: self.n });
        }
        Ok(Partition::canonical(
            self.n,
            self.blocks.iter().map(|b| b.iter().map(|&x| pi.image(x)).collect()).collect(),
        ))
    }

    /// `M(Π)`: maximal runs of consecutive integers lying in one block.
    pub fn max_intervals(&self) -> Partition {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 1..=self.n {
            match blocks.last_mut() {
                Some(last) if self.same_block(x - 1, x) => last.push(x),
                _ => blocks.push(vec![x]),
            }
        }
        Partition::canonical(self.n, blocks)
    }

    /// `Π′` on `{1..n+1}`.
    pub fn derive(&self) -> Partition {
        let n = self.n;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for iv in self.max_intervals().blocks {
            let (a, b) = (iv[0], iv[iv.len() - 1]);
            match (a == 1, b == n) {
                (true, false) => blocks.push((a..=b).collect()),
                (false, false) => {
                    blocks.push(vec![a]);
                    if a < b {
                        blocks.push((a + 1..=b).collect());
                    }
                }
                (false, true) => {
                    blocks.push(vec![a]);
                    blocks.push((a + 1..=n + 1).collect());
                }
                (true, true) => blocks.push((1..=n + 1).collect()),
            }
        }
        Partition::canonical(n + 1, blocks)
    }

    /// `Π^{(i)}`, the `i`-fold derived partition on `{1..n+i}`; `i = 0` is `Π`.
    pub fn derive_iter(&self, i: usize) -> Partition {
        let mut p = self.clone();
        for _ in 0..i {
            p = p.derive();
        }
        p
    }

    /// Whether `[a, b]` is a union of interwoven blocks.
    pub fn interwoven(&self, a: usize, b: usize) -> Result<bool, PartitionError> {
        if a == 0 || a >= b || b > self.n {
            return Err(PartitionError::OutOfRange { n: self.n });
        }
        let len = b - a + 1;
        Ok((2..=len).filter(|k| len.is_multiple_of(*k)).any(|k| {
            let l = len / k;
            (0..k).all(|i| {
                let block = self.block_of(a + i);
                block.len() == l && block.iter().enumerate().all(|(m, &x)| x == a + i + m * k)
            })
        }))
    }

    pub fn interwoven_features(&self) -> InterwovenFeatures {
        let n = self.n;
        let prefix = (2..n).rev().find(|&l| self.interwoven(1, l).unwrap_or(false));
        let suffix = (2..n).find(|&m| self.interwoven(m, n).unwrap_or(false));
        let full = n >= 2 && self.interwoven(1, n).unwrap_or(false);
        InterwovenFeatures { prefix, suffix, full }
    }

    /// `μ(Π)`: largest middle block of `M(Π)`, or 1.
    pub fn mu(&self) -> usize {
        let m = self.max_intervals();
        let first = m.block_index(1);
        let last = m.block_index(self.n.max(1));
        m.blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != first && *i != last)
            .map(|(_, b)| b.len())
            .chain(std::iter::once(1))
            .max()
            .unwrap_or(1)
    }

    /// `μ_{a,b}(Π) = max(μ, |[1]_M| − a + 1, |[n]_M| − b + 1)`.
    pub fn mu_ab(&self, a: usize, b: usize) -> usize {
        let m = self.max_intervals();
        let head = m.block_of(1).len() as i64 - a as i64 + 1;
        let tail = m.block_of(self.n).len() as i64 - b as i64 + 1;
        (self.mu() as i64).max(head).max(tail) as usize
    }

    /// `E_Π`, a set of permutations of degree `n + 1`. Requires no trivial blocks.
    pub fn e_pi(&self) -> Result<Vec<Permutation>, PartitionError> {
        if let Some(b) = self.blocks.iter().find(|b| b.len() == 1) {
            return Err(PartitionError::TrivialBlock(b[0]));
        }
        let n = self.n;
        let mut out = Vec::new();
        for l in 2..n {
            if self.interwoven(1, l)? {
                out.push(Permutation::dja(n + 1, l).expect("valid sum"));
            }
        }
        for m in 2..n {
            if self.interwoven(m, n)? {
                out.push(Permutation::ajd(n + 1, n - m + 1).expect("valid sum"));
            }
        }
        if n >= 2 && self.interwoven(1, n)? {
            out.push(Permutation::natural_cycle(n + 1).expect("valid degree"));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::parse(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn example() -> Partition {
        pt("1,2,3,7,8,9,10|4,5,6,12,13,14|11")
    }

    #[test]
    fn parse_and_format() {
        let p = pt("1,2|3");
        assert_eq!(p.blocks(), &[vec![1, 2], vec![3]]);
        assert_eq!(pt("2,1|3"), p);
        assert_eq!(pt("3|2,1"), p);
        assert_eq!(p.to_string(), "1,2|3");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Partition::parse("1|1,2"), Err(PartitionError::Duplicate(1)));
        assert_eq!(Partition::parse("1,3"), Err(PartitionError::OutOfRange { n: 2 }));
        assert!(Partition::parse("1,|").is_err());
        assert!(Partition::parse("a").is_err());
        assert_eq!(Partition::from_blocks(3, vec![vec![1, 2]]), Err(PartitionError::Missing(3)));
    }

    #[test]
    fn lattice_operations() {
        let whole = pt("1,2,3");
        let split = pt("1,2|3");
        assert_eq!(whole.meet(&split).unwrap(), split);
        assert_eq!(pt("1,2|3").join(&pt("1|2,3")).unwrap(), whole);
        let d4 = Partition::delta(4);
        assert_eq!(d4, pt("1,4|2,3"));
        assert!(d4.refines(&d4).unwrap());
        assert!(split.refines(&whole).unwrap());
        assert!(!whole.refines(&split).unwrap());
        assert!(split.meet(&pt("1,2|3,4")).is_err());
    }

    #[test]
    fn special_partitions() {
        assert_eq!(Partition::delta(5), pt("1,5|2,4|3"));
        assert_eq!(Partition::odd_even(4), pt("1,3|2,4"));
        assert_eq!(Partition::pi_ab(7, 2, 3).unwrap(), pt("1,2|5,6,7|3|4"));
        assert!(Partition::pi_ab(4, 2, 3).is_err());
        assert_eq!(Partition::odd_even(1), pt("1"));
    }

    #[test]
    fn maximal_intervals() {
        assert_eq!(example().max_intervals(), pt("1,2,3|4,5,6|7,8,9,10|11|12,13,14"));
        let iv = pt("1,2|3|4,5");
        assert_eq!(iv.max_intervals(), iv);
        assert_eq!(Partition::odd_even(4).max_intervals(), Partition::singletons(4));
    }

    #[test]
    fn derived_partition() {
        assert_eq!(example().derive(), pt("1,2,3|4|5,6|7|8,9,10|11|12|13,14,15"));
        assert_eq!(Partition::whole(5).derive(), Partition::whole(6));
        assert_eq!(pt("1,2|3,4").derive(), pt("1,2|3|4,5"));
    }

    #[test]
    fn iterated_derivative() {
        let p = pt("1,2,3|4,5,6");
        assert_eq!(p.derive_iter(1), p.derive());
        assert_eq!(p.derive_iter(2), pt("1,2,3|4|5|6,7,8"));
        assert_eq!(Partition::whole(3).derive_iter(4), Partition::whole(7));
        assert_eq!(p.derive_iter(0), p);
    }

    #[test]
    fn reversed_partition() {
        assert_eq!(pt("1,2|3").reverse(), pt("2,3|1"));
        assert_eq!(Partition::delta(6).reverse(), Partition::delta(6));
        assert_eq!(Partition::pi_ab(7, 2, 3).unwrap().reverse(), pt("6,7|1,2,3|4|5"));
    }

    #[test]
    fn interwoven_intervals() {
        let p = pt("1,3,5|2,4,6");
        assert!(p.interwoven(1, 6).unwrap());
        let q = pt("1,3|2,4|5,6");
        assert!(q.interwoven(1, 4).unwrap());
        assert!(!q.interwoven(1, 6).unwrap());
        assert!(!q.interwoven(5, 6).unwrap());
        assert_eq!(q.interwoven_features(), InterwovenFeatures { prefix: Some(4), suffix: None, full: false });
        let s = pt("1|2|3,4");
        assert!(s.interwoven(1, 2).unwrap());
        assert!(q.interwoven(4, 3).is_err());
        assert!(q.interwoven(1, 7).is_err());
    }

    #[test]
    fn mu_measures() {
        assert_eq!(example().mu(), 4);
        assert_eq!(Partition::singletons(6).mu(), 1);
        assert_eq!(example().mu_ab(1, 1), 4);
        assert_eq!(Partition::whole(4).mu(), 1);
        assert_eq!(pt("1,2,3,4|5").mu_ab(1, 1), 4);
        assert_eq!(pt("1,2,3,4|5").mu_ab(4, 1), 1);
    }

    #[test]
    fn e_pi_sets() {
        let d = |l| Permutation::dja(7, l).unwrap();
        assert_eq!(pt("1,3|2,4|5,6").e_pi().unwrap(), vec![d(4)]);
        assert_eq!(pt("1,3,5|2,4,6").e_pi().unwrap(), vec![Permutation::natural_cycle(7).unwrap()]);
        assert!(pt("1,2|3,4").e_pi().unwrap().is_empty());
        assert_eq!(pt("1,2|3|4").e_pi(), Err(PartitionError::TrivialBlock(3)));
        assert_eq!(
            pt("1,2|3,5|4,6").e_pi().unwrap(),
            vec![Permutation::ajd(7, 4).unwrap()]
        );
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=7).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877]);
    }
}
