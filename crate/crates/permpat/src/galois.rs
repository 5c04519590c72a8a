//! The `Pat` and `Comp` operators between levels, and their group-generated variants.

use rayon::prelude::*;

use crate::error::{Error, PermError};
use crate::group::{Limits, PermGroup};
use crate::perm::{check_degree, subsets_of_size, Permutation};

/// A set of permutations of one degree, sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermSet {
    degree: usize,
    codes: Vec<u64>,
}

/// How `comp_set` generates candidates for the next level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Extend each member of the previous level by one new last entry.
    #[default]
    Extension,
    /// Scan every permutation of the next degree.
    FullScan,
}

impl PermSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = Permutation>) -> Result<PermSet, Error> {
        check_degree(degree)?;
        let mut codes = Vec::new();
        for p in members {
            if p.degree() != degree {
                return Err(PermError::DegreeMismatch { left: degree, right: p.degree() }.into());
            }
            codes.push(p.code());
        }
        Ok(PermSet::from_codes(degree, codes))
    }

    pub(crate) fn from_codes(degree: usize, mut codes: Vec<u64>) -> PermSet {
        codes.par_sort_unstable();
        codes.dedup();
        PermSet { degree, codes }
    }

    pub fn from_group(g: &PermGroup) -> PermSet {
        PermSet { degree: g.degree(), codes: g.codes().to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, pi: &Permutation) -> bool {
        pi.degree() == self.degree && self.codes.binary_search(&pi.code()).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Permutation> + '_ {
        self.codes.iter().map(move |&c| Permutation::from_code(self.degree, c))
    }

    pub fn members(&self) -> Vec<Permutation> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &PermSet) -> bool {
        self.degree == other.degree && self.codes.iter().all(|c| other.codes.binary_search(c).is_ok())
    }

    /// Whether the set is closed under composition (and so a group when non-empty).
    pub fn is_group(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let members = self.members();
        members.par_iter().all(|f| members.iter().all(|g| self.contains(&f.compose_unchecked(g))))
    }
}

impl std::fmt::Debug for PermSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `Pat^ℓ(T)`: every `ℓ`-pattern of every member.
pub fn pat_set(t: &PermSet, l: usize) -> Result<PermSet, Error> {
    let n = t.degree;
    if l == 0 || l > n {
        return Err(PermError::LengthOutOfRange { len: l, n }.into());
    }
    let masks: Vec<u32> = subsets_of_size(n, l).collect();
    let codes: Vec<u64> = t
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|p| masks.iter().map(move |&m| p.pattern_mask(m).code()))
        .collect();
    Ok(PermSet::from_codes(l, codes))
}

fn check_target(base: usize, target: usize, limits: &Limits) -> Result<(), Error> {
    if target <= base {
        return Err(Error::TargetDegree { target, base });
    }
    if target > limits.max_degree {
        return Err(Error::EnumerationDegree { degree: target, max: limits.max_degree });
    }
    Ok(())
}

/// `Comp^m(S)`: every permutation of degree `m` all of whose patterns of
/// degree `deg S` lie in `S`.
pub fn comp_set(s: &PermSet, m: usize, limits: &Limits) -> Result<PermSet, Error> {
    comp_set_with(s, m, Strategy::Extension, limits)
}

pub fn comp_set_with(s: &PermSet, m: usize, strategy: Strategy, limits: &Limits) -> Result<PermSet, Error> {
    check_target(s.degree, m, limits)?;
    let mut level = s.clone();
    while level.degree < m {
        level = match strategy {
            Strategy::Extension => extension_step(&level),
            Strategy::FullScan => full_scan_step(&level),
        };
        if level.len() > limits.element_cap {
            return Err(Error::ElementCap { cap: limits.element_cap, reached: level.len() });
        }
    }
    Ok(level)
}

fn all_deletions_in(tau: &Permutation, prev: &PermSet) -> bool {
    (0..tau.degree()).all(|i| prev.codes.binary_search(&tau.delete_unchecked(i).code()).is_ok())
}

fn extension_step(prev: &PermSet) -> PermSet {
    let k = prev.degree;
    let codes: Vec<u64> = prev
        .codes
        .par_iter()
        .flat_map_iter(|&c| {
            let sigma = Permutation::from_code(k, c);
            (1..=k + 1).filter_map(move |v| {
                let tau = sigma.append_value(v);
                // The deletion of the last entry is `sigma` itself.
                (0..k).all(|i| prev.codes.binary_search(&tau.delete_unchecked(i).code()).is_ok()).then(|| tau.code())
            })
        })
        .collect();
    PermSet::from_codes(k + 1, codes)
}

fn full_scan_step(prev: &PermSet) -> PermSet {
    let n = prev.degree + 1;
    let mut codes = Vec::new();
    heap_permutations(n, |img| {
        let tau = Permutation::pack0(img);
        if all_deletions_in(&tau, prev) {
            codes.push(tau.code());
        }
    });
    PermSet::from_codes(n, codes)
}

/// Visits every permutation of `{0..n-1}` by Heap's algorithm.
fn heap_permutations(n: usize, mut visit: impl FnMut(&[u8])) {
    let mut a: Vec<u8> = (0..n as u8).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `⟨Pat^ℓ(G)⟩`.
pub fn gpat(g: &PermGroup, l: usize, limits: &Limits) -> Result<PermGroup, Error> {
    let pats = pat_set(&PermSet::from_group(g), l)?;
    PermGroup::closure(&pats.members(), l, limits)
}

/// `⟨Comp^m(G)⟩`, which for a group is `Comp^m(G)` itself.
pub fn gcomp(g: &PermGroup, m: usize, limits: &Limits) -> Result<PermGroup, Error> {
    let set = comp_set(&PermSet::from_group(g), m, limits)?;
    PermGroup::from_closed_codes(m, set.codes, limits)
}

/// `⟨Comp^m(S)⟩` for an arbitrary set.
pub fn gcomp_set(s: &PermSet, m: usize, limits: &Limits) -> Result<PermGroup, Error> {
    let set = comp_set(s, m, limits)?;
    PermGroup::closure(&set.members(), m, limits)
}

/// `[Comp^{n+1}(G), …, Comp^{n+depth}(G)]`, each level computed from the previous one.
pub fn comp_level_sequence(g: &PermGroup, depth: usize, limits: &Limits) -> Result<Vec<PermGroup>, Error> {
    if g.degree() + depth > limits.max_degree {
        return Err(Error::EnumerationDegree { degree: g.degree() + depth, max: limits.max_degree });
    }
    let mut out: Vec<PermGroup> = Vec::with_capacity(depth);
    for _ in 0..depth {
        let prev = out.last().unwrap_or(g);
        let next = gcomp(prev, prev.degree() + 1, limits)?;
        out.push(next);
    }
    Ok(out)
}
