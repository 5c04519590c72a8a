//! Permutations in one-line notation, their algebra, patterns and jumps.
//!
//! A permutation of degree `n <= 16` is packed into a `u64`, four bits per
//! entry, most significant nibble first. Comparing two codes of the same
//! degree is therefore the same as comparing the one-line words
//! lexicographically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PermError;

/// Largest degree a single permutation can have.
pub const MAX_DEGREE: usize = 16;

/// A bijection of `{1..n}`, stored as its one-line word.
///
/// Ordering is by degree first, then lexicographic on the word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    code: u64,
}

/// Text notations understood by [`Permutation::parse`] and [`Permutation::format`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    OneLine,
    Cycles,
}

/// Named permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basic {
    Ascending,
    Descending,
    NaturalCycle,
    /// `δ_ℓ ⊕ α_{n−ℓ}`
    Dja(usize),
    /// `α_{n−ℓ} ⊕ δ_ℓ`
    Ajd(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumKind {
    Direct,
    Skew,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    RcConjugate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Values `a < b` adjacent in some one-line word with `a <= b - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JumpPair {
    pub a: usize,
    pub b: usize,
}

#[inline]
pub(crate) fn check_degree(n: usize) -> Result<(), PermError> {
    if n == 0 {
        Err(PermError::EmptyDegree)
    } else if n > MAX_DEGREE {
        Err(PermError::DegreeTooLarge { n, max: MAX_DEGREE })
    } else {
        Ok(())
    }
}

impl Permutation {
    /// Packs an image array of values `0..n` without validation.
    #[inline]
    pub(crate) fn pack0(img: &[u8]) -> Permutation {
        let mut code = 0u64;
        for &v in img {
            code = (code << 4) | v as u64;
        }
        Permutation { n: img.len() as u8, code }
    }

    /// Unpacks into zero-based images.
    #[inline]
    pub(crate) fn unpack0(&self) -> [u8; MAX_DEGREE] {
        let n = self.n as usize;
        let mut out = [0u8; MAX_DEGREE];
        let mut c = self.code;
        for i in (0..n).rev() {
            out[i] = (c & 0xF) as u8;
            c >>= 4;
        }
        out
    }

    #[inline]
    pub(crate) fn from_code(n: usize, code: u64) -> Permutation {
        Permutation { n: n as u8, code }
    }

    #[inline]
    pub(crate) fn code(&self) -> u64 {
        self.code
    }

    /// Builds a permutation from its 1-based one-line word.
    pub fn from_images(images: &[usize]) -> Result<Permutation, PermError> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        let mut img = [0u8; MAX_DEGREE];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermError::ValueOutOfRange { value: v, n });
            }
            if seen[v - 1] {
                return Err(PermError::RepeatedValue(v));
            }
            seen[v - 1] = true;
            img[i] = (v - 1) as u8;
        }
        Ok(Permutation::pack0(&img[..n]))
    }

    pub fn identity(n: usize) -> Result<Permutation, PermError> {
        check_degree(n)?;
        let img: Vec<u8> = (0..n as u8).collect();
        Ok(Permutation::pack0(&img))
    }

    pub fn descending(n: usize) -> Result<Permutation, PermError> {
        check_degree(n)?;
        let img: Vec<u8> = (0..n as u8).rev().collect();
        Ok(Permutation::pack0(&img))
    }

    /// `ζ_n = 2 3 … n 1`.
    pub fn natural_cycle(n: usize) -> Result<Permutation, PermError> {
        check_degree(n)?;
        let img: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
        Ok(Permutation::pack0(&img))
    }

    pub fn make_basic(kind: Basic, n: usize) -> Result<Permutation, PermError> {
        match kind {
            Basic::Ascending => Permutation::identity(n),
            Basic::Descending => Permutation::descending(n),
            Basic::NaturalCycle => Permutation::natural_cycle(n),
            Basic::Dja(l) | Basic::Ajd(l) => {
                check_degree(n)?;
                if l == 0 || l > n {
                    return Err(PermError::ParameterOutOfRange { param: l, n });
                }
                let descending_first = matches!(kind, Basic::Dja(_));
                let img: Vec<u8> = (0..n as u8)
                    .map(|i| {
                        let (lo, hi) = if descending_first { (0, l as u8) } else { ((n - l) as u8, n as u8) };
                        if i >= lo && i < hi {
                            hi - 1 - (i - lo)
                        } else {
                            i
                        }
                    })
                    .collect();
                Ok(Permutation::pack0(&img))
            }
        }
    }

    pub fn dja(n: usize, l: usize) -> Result<Permutation, PermError> {
        Permutation::make_basic(Basic::Dja(l), n)
    }

    pub fn ajd(n: usize, l: usize) -> Result<Permutation, PermError> {
        Permutation::make_basic(Basic::Ajd(l), n)
    }

    /// Transposition `(i j)` in `S_n`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Permutation, PermError> {
        check_degree(n)?;
        for p in [i, j] {
            if p == 0 || p > n {
                return Err(PermError::ValueOutOfRange { value: p, n });
            }
        }
        let mut img: Vec<u8> = (0..n as u8).collect();
        img.swap(i - 1, j - 1);
        Ok(Permutation::pack0(&img))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// `π(i)` for 1-based `i`. Panics when `i` is out of range.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.degree(), "position {i} out of range");
        let shift = 4 * (self.degree() - i);
        ((self.code >> shift) & 0xF) as usize + 1
    }

    /// The one-line word, 1-based.
    pub fn images(&self) -> Vec<usize> {
        let img = self.unpack0();
        img[..self.degree()].iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        let img = self.unpack0();
        (0..self.degree()).all(|i| img[i] as usize == i)
    }

    fn same_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.n != other.n {
            Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() })
        } else {
            Ok(())
        }
    }

    /// `(f ∘ g)(x) = f(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.same_degree(g)?;
        Ok(self.compose_unchecked(g))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, g: &Permutation) -> Permutation {
        let n = self.degree();
        let f = self.unpack0();
        let gi = g.unpack0();
        let mut out = [0u8; MAX_DEGREE];
        for x in 0..n {
            out[x] = f[gi[x] as usize];
        }
        Permutation::pack0(&out[..n])
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.degree();
        let f = self.unpack0();
        let mut out = [0u8; MAX_DEGREE];
        for x in 0..n {
            out[f[x] as usize] = x as u8;
        }
        Permutation::pack0(&out[..n])
    }

    pub fn power(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree()).expect("valid degree");
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        let mut l = 1u64;
        for c in self.cycles() {
            let len = c.len() as u64;
            l = l / gcd(l, len) * len;
        }
        l
    }

    /// Parses one-line (`"2,3,1"`, `"2 3 1"`, `"231"`) text.
    pub fn parse_one_line(text: &str) -> Result<Permutation, PermError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(PermError::Malformed(text.to_string()));
        }
        let has_sep = t.contains(',') || t.contains(char::is_whitespace);
        let values: Vec<usize> = if has_sep {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| PermError::Malformed(s.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::Malformed(c.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        if !has_sep && values.len() > 9 {
            return Err(PermError::Malformed(format!(
                "digit string of length {} is ambiguous; use commas",
                values.len()
            )));
        }
        Permutation::from_images(&values)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` on `{1..n}`.
    /// The identity may be written `"()"` or as the empty string.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation, PermError> {
        check_degree(n)?;
        let mut img: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Malformed(rest.to_string()));
            };
            let Some(close) = body.find(')') else {
                return Err(PermError::Malformed(rest.to_string()));
            };
            let inner = &body[..close];
            rest = body[close + 1..].trim_start();
            let cyc: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| PermError::Malformed(s.to_string())))
                .collect::<Result<_, _>>()?;
            for &v in &cyc {
                if v == 0 || v > n {
                    return Err(PermError::ValueOutOfRange { value: v, n });
                }
                if used[v] {
                    return Err(PermError::RepeatedValue(v));
                }
                used[v] = true;
            }
            for k in 0..cyc.len() {
                img[cyc[k] - 1] = cyc[(k + 1) % cyc.len()];
            }
        }
        Permutation::from_images(&img)
    }

    /// Parses `text` in the given notation. `n` is required for cycles.
    pub fn parse(text: &str, notation: Notation, n: Option<usize>) -> Result<Permutation, PermError> {
        match notation {
            Notation::OneLine => {
                let p = Permutation::parse_one_line(text)?;
                match n {
                    Some(d) if d != p.degree() => {
                        Err(PermError::DegreeMismatch { left: p.degree(), right: d })
                    }
                    _ => Ok(p),
                }
            }
            Notation::Cycles => {
                let n = n.ok_or_else(|| PermError::Malformed("cycle notation needs a degree".into()))?;
                Permutation::parse_cycles(text, n)
            }
        }
    }

    pub fn format(&self, notation: Notation) -> String {
        match notation {
            Notation::OneLine => self.to_string(),
            Notation::Cycles => {
                let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
                if cycles.is_empty() {
                    return "()".to_string();
                }
                cycles
                    .iter()
                    .map(|c| {
                        let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        format!("({})", body.join(" "))
                    })
                    .collect()
            }
        }
    }

    /// Disjoint cycles including fixed points, each starting at its minimum,
    /// ordered by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let img = self.unpack0();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Order-isomorphic permutation of a word of distinct integers.
    pub fn reduce(word: &[usize]) -> Result<Permutation, PermError> {
        check_degree(word.len())?;
        let mut idx: Vec<usize> = (0..word.len()).collect();
        idx.sort_by_key(|&i| word[i]);
        let mut img = [0u8; MAX_DEGREE];
        if let Some(w) = idx.windows(2).find(|w| word[w[0]] == word[w[1]]) {
            return Err(PermError::RepeatedValue(word[w[0]]));
        }
        for (rank, &i) in idx.iter().enumerate() {
            img[i] = rank as u8;
        }
        Ok(Permutation::pack0(&img[..word.len()]))
    }

    /// The pattern at a set of 1-based positions (duplicates ignored).
    pub fn pattern(&self, positions: &[usize]) -> Result<Permutation, PermError> {
        let n = self.degree();
        let mut mask = 0u32;
        for &p in positions {
            if p == 0 || p > n {
                return Err(PermError::PositionOutOfRange { pos: p, n });
            }
            mask |= 1 << (p - 1);
        }
        if mask == 0 {
            return Err(PermError::EmptyDegree);
        }
        Ok(self.pattern_mask(mask))
    }

    /// Pattern at the positions whose (0-based) bits are set in `mask`.
    #[inline]
    pub(crate) fn pattern_mask(&self, mask: u32) -> Permutation {
        let n = self.degree();
        let img = self.unpack0();
        let mut vals = [0u8; MAX_DEGREE];
        let mut k = 0;
        let mut present = 0u32;
        for (i, &v) in img.iter().enumerate().take(n) {
            if mask & (1 << i) != 0 {
                vals[k] = v;
                present |= 1 << v;
                k += 1;
            }
        }
        let mut out = [0u8; MAX_DEGREE];
        for j in 0..k {
            let below = present & ((1u32 << vals[j]) - 1);
            out[j] = below.count_ones() as u8;
        }
        Permutation::pack0(&out[..k])
    }

    /// `π ∖ i`: the pattern on all positions except `i`.
    pub fn delete_point(&self, i: usize) -> Result<Permutation, PermError> {
        let n = self.degree();
        if n < 2 {
            return Err(PermError::EmptyDegree);
        }
        if i == 0 || i > n {
            return Err(PermError::PositionOutOfRange { pos: i, n });
        }
        Ok(self.delete_unchecked(i - 1))
    }

    /// Deletes the 0-based position `i`.
    #[inline]
    pub(crate) fn delete_unchecked(&self, i: usize) -> Permutation {
        let n = self.degree();
        let img = self.unpack0();
        let removed = img[i];
        let mut out = [0u8; MAX_DEGREE];
        let mut k = 0;
        for (j, &v) in img[..n].iter().enumerate() {
            if j != i {
                out[k] = if v > removed { v - 1 } else { v };
                k += 1;
            }
        }
        Permutation::pack0(&out[..n - 1])
    }

    /// Inserts a new last entry with value `v` (1-based), shifting entries `>= v` up.
    #[inline]
    pub(crate) fn append_value(&self, v: usize) -> Permutation {
        let n = self.degree();
        let img = self.unpack0();
        let v0 = (v - 1) as u8;
        let mut out = [0u8; MAX_DEGREE];
        for j in 0..n {
            out[j] = if img[j] >= v0 { img[j] + 1 } else { img[j] };
        }
        out[n] = v0;
        Permutation::pack0(&out[..n + 1])
    }

    /// `Pat_ℓ(π)`: all distinct ℓ-patterns, sorted.
    pub fn all_patterns(&self, l: usize) -> Result<Vec<Permutation>, PermError> {
        let n = self.degree();
        if l == 0 || l > n {
            return Err(PermError::LengthOutOfRange { len: l, n });
        }
        let mut out: Vec<Permutation> = subsets_of_size(n, l).map(|m| self.pattern_mask(m)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Whether `self` is a pattern of `pi`.
    pub fn is_pattern_of(&self, pi: &Permutation) -> bool {
        let (l, n) = (self.degree(), pi.degree());
        if l > n {
            return false;
        }
        subsets_of_size(n, l).any(|m| pi.pattern_mask(m) == *self)
    }

    pub fn direct_sum(&self, tau: &Permutation) -> Result<Permutation, PermError> {
        self.sum(tau, SumKind::Direct)
    }

    pub fn skew_sum(&self, tau: &Permutation) -> Result<Permutation, PermError> {
        self.sum(tau, SumKind::Skew)
    }

    pub fn sum(&self, tau: &Permutation, kind: SumKind) -> Result<Permutation, PermError> {
        let (m, k) = (self.degree(), tau.degree());
        check_degree(m + k)?;
        let a = self.unpack0();
        let b = tau.unpack0();
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..m {
            out[i] = match kind {
                SumKind::Direct => a[i],
                SumKind::Skew => a[i] + k as u8,
            };
        }
        for i in 0..k {
            out[m + i] = match kind {
                SumKind::Direct => b[i] + m as u8,
                SumKind::Skew => b[i],
            };
        }
        Ok(Permutation::pack0(&out[..m + k]))
    }

    /// `π ∘ δ`.
    pub fn reverse(&self) -> Permutation {
        let n = self.degree();
        let img = self.unpack0();
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..n {
            out[i] = img[n - 1 - i];
        }
        Permutation::pack0(&out[..n])
    }

    /// `δ ∘ π`.
    pub fn complement(&self) -> Permutation {
        let n = self.degree();
        let img = self.unpack0();
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..n {
            out[i] = (n - 1) as u8 - img[i];
        }
        Permutation::pack0(&out[..n])
    }

    /// `δ ∘ π ∘ δ`.
    pub fn rc_conjugate(&self) -> Permutation {
        self.reverse().complement()
    }

    pub fn symmetry(&self, kind: Symmetry) -> Permutation {
        match kind {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::RcConjugate => self.rc_conjugate(),
        }
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let img = self.unpack0();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if img[i] > img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn parity(&self) -> Parity {
        if self.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn is_even(&self) -> bool {
        // n minus the number of cycles has the parity of the permutation
        let n = self.degree();
        let img = self.unpack0();
        let mut seen = 0u32;
        let mut cycles = 0;
        for s in 0..n {
            if seen & (1 << s) != 0 {
                continue;
            }
            cycles += 1;
            let mut x = s;
            while seen & (1 << x) == 0 {
                seen |= 1 << x;
                x = img[x] as usize;
            }
        }
        (n - cycles).is_multiple_of(2)
    }

    /// All jumps `(a, b)` with `a <= b - 2`, sorted.
    pub fn jumps(&self) -> Vec<JumpPair> {
        let n = self.degree();
        let img = self.unpack0();
        let mut out: Vec<JumpPair> = (0..n.saturating_sub(1))
            .filter_map(|t| {
                let (x, y) = (img[t] as usize + 1, img[t + 1] as usize + 1);
                let (a, b) = (x.min(y), x.max(y));
                (a + 2 <= b).then_some(JumpPair { a, b })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `γ(π, i) = (π ∖ (i+1)) ∘ (π ∖ i)^{-1}` for `1 <= i <= n-1`.
    pub fn adjacent_pattern_quotient(&self, i: usize) -> Result<Permutation, PermError> {
        let n = self.degree();
        if n < 2 || i == 0 || i >= n {
            return Err(PermError::PositionOutOfRange { pos: i, n });
        }
        let left = self.delete_unchecked(i);
        let right = self.delete_unchecked(i - 1);
        Ok(left.compose_unchecked(&right.inverse()))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Bitmasks over `0..n` with exactly `k` bits set, in increasing order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let start: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = Some(start);
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit || (k == 0 && c != 0) {
            cur = None;
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            Some((((ripple ^ c) >> 2) / lowest) | ripple)
        };
        Some(c as u32)
    })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs = self.images();
        if self.degree() <= 9 {
            for v in imgs {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = imgs.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse_one_line(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}
