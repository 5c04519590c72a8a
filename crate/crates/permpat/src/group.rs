//! Finite permutation groups stored as fully enumerated, sorted element sets.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::Error;
use crate::partition::Partition;
use crate::perm::{check_degree, JumpPair, Permutation};

/// Caps applied to exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest degree the Pat/Comp engine will enumerate.
    pub max_degree: usize,
    /// Largest number of elements a single group may have.
    pub element_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 11, element_cap: 500_000 }
    }
}

/// Largest degree accepted by [`enumerate_subgroups`].
pub const MAX_SUBGROUP_DEGREE: usize = 6;

/// A subgroup of `S_n` with its elements listed in lexicographic order.
///
/// Equality compares degree and element sets; generators are ignored.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<u64>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}", self.degree, self.order())?;
        if self.order() <= 24 {
            let els: Vec<String> = self.iter().map(|p| p.to_string()).collect();
            write!(f, ", {{{}}}", els.join(", "))?;
        }
        write!(f, ")")
    }
}

/// Breadth-first closure of `gens` inside `S_n`, returning sorted codes.
fn close(gens: &[Permutation], n: usize, cap: usize) -> Result<Vec<u64>, Error> {
    let id = Permutation::identity(n)?;
    let mut seen: HashSet<u64> = HashSet::from([id.code()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.compose_unchecked(&x);
            if seen.insert(y.code()) {
                if seen.len() > cap {
                    return Err(Error::ElementCap { cap, reached: seen.len() });
                }
                queue.push(y);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

impl PermGroup {
    /// `⟨generators⟩ ≤ S_n`.
    pub fn closure(generators: &[Permutation], n: usize, limits: &Limits) -> Result<PermGroup, Error> {
        check_degree(n)?;
        for g in generators {
            if g.degree() != n {
                return Err(crate::error::PermError::DegreeMismatch { left: g.degree(), right: n }.into());
            }
        }
        let mut gens: Vec<Permutation> = generators.iter().copied().filter(|g| !g.is_identity()).collect();
        gens.sort_unstable();
        gens.dedup();
        let elements = close(&gens, n, limits.element_cap)?;
        Ok(PermGroup { degree: n, generators: gens, elements })
    }

    pub fn trivial(n: usize) -> Result<PermGroup, Error> {
        PermGroup::closure(&[], n, &Limits::default())
    }

    /// Wraps a set already known to be a group, choosing generators greedily.
    pub(crate) fn from_closed_codes(n: usize, mut elements: Vec<u64>, limits: &Limits) -> Result<PermGroup, Error> {
        if elements.len() > limits.element_cap {
            return Err(Error::ElementCap { cap: limits.element_cap, reached: elements.len() });
        }
        elements.sort_unstable();
        elements.dedup();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current: Vec<u64> = vec![Permutation::identity(n)?.code()];
        for &c in &elements {
            if current.len() == elements.len() {
                break;
            }
            if current.binary_search(&c).is_err() {
                gens.push(Permutation::from_code(n, c));
                current = close(&gens, n, usize::MAX)?;
            }
        }
        debug_assert_eq!(current, elements, "input set is not a group");
        Ok(PermGroup { degree: n, generators: gens, elements })
    }

    /// Builds a group from an explicit list of its elements.
    /// Fails when the list is not closed under composition.
    pub fn from_elements(n: usize, elements: &[Permutation], limits: &Limits) -> Result<PermGroup, Error> {
        check_degree(n)?;
        let g = PermGroup::closure(elements, n, limits)?;
        if g.order() != {
            let mut v: Vec<u64> = elements.iter().map(|p| p.code()).collect();
            v.push(Permutation::identity(n)?.code());
            v.sort_unstable();
            v.dedup();
            v.len()
        } {
            return Err(Error::Invalid("element list is not closed under composition".into()));
        }
        Ok(g)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in lexicographic order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = Permutation> + '_ {
        let n = self.degree;
        self.elements.iter().map(move |&c| Permutation::from_code(n, c))
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.iter().collect()
    }

    pub(crate) fn codes(&self) -> &[u64] {
        &self.elements
    }

    /// Membership for a permutation of the same degree; other degrees are never members.
    #[inline]
    pub fn has(&self, pi: &Permutation) -> bool {
        pi.degree() == self.degree && self.elements.binary_search(&pi.code()).is_ok()
    }

    pub fn contains(&self, pi: &Permutation) -> Result<bool, Error> {
        self.same_degree(pi.degree())?;
        Ok(self.has(pi))
    }

    fn same_degree(&self, d: usize) -> Result<(), Error> {
        if d != self.degree {
            Err(crate::error::PermError::DegreeMismatch { left: self.degree, right: d }.into())
        } else {
            Ok(())
        }
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> Result<bool, Error> {
        self.same_degree(g.degree)?;
        Ok(self.order() <= g.order() && g.order().is_multiple_of(self.order()) && self.generators.iter().all(|x| g.has(x)))
    }

    pub fn group_eq(&self, g: &PermGroup) -> Result<bool, Error> {
        self.same_degree(g.degree)?;
        Ok(self == g)
    }

    /// `H ∩ K` as a group.
    pub fn intersection(&self, other: &PermGroup, limits: &Limits) -> Result<PermGroup, Error> {
        self.same_degree(other.degree)?;
        let codes: Vec<u64> = self.elements.iter().copied().filter(|c| other.elements.binary_search(c).is_ok()).collect();
        PermGroup::from_closed_codes(self.degree, codes, limits)
    }

    /// `Θ(G)`, the orbit partition.
    pub fn orbits(&self) -> Partition {
        orbits_of(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().num_blocks() == 1
    }

    /// All minimal nontrivial block systems of a transitive group.
    pub fn block_systems(&self) -> Result<Vec<Partition>, Error> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        Ok(minimal_block_systems(&self.generators, self.degree))
    }

    pub fn is_primitive(&self) -> Result<bool, Error> {
        Ok(self.block_systems()?.is_empty())
    }

    /// Largest `(a, b)` with `S_n^{a,1} ≤ G` and `S_n^{1,b} ≤ G`. Both equal `n` for `S_n`.
    pub fn largest_ab(&self) -> (usize, usize) {
        largest_ab_by(self.degree, |p| self.has(p))
    }

    /// Partition into connected components of the transpositions in `G`.
    /// `S_Γ` is then the subgroup generated by all transpositions of `G`.
    pub fn transposition_partition(&self) -> Partition {
        transposition_partition_by(self.degree, |p| self.has(p))
    }

    /// `ζ_n ∈ G` and `⟨Pat^{n−1}(G)⟩ ≠ S_{n−1}`.
    pub fn is_anomalous(&self, limits: &Limits) -> Result<bool, Error> {
        let n = self.degree;
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n, min: 2 });
        }
        if !self.has(&Permutation::natural_cycle(n)?) {
            return Ok(false);
        }
        let mut pats: Vec<Permutation> = Vec::new();
        for g in self.iter() {
            for i in 0..n {
                pats.push(g.delete_unchecked(i));
            }
        }
        pats.sort_unstable();
        pats.dedup();
        let h = PermGroup::closure(&pats, n - 1, limits)?;
        Ok(h.order() != factorial(n - 1) as usize)
    }

    /// Union of the jump sets of all elements.
    pub fn jump_set(&self) -> Vec<JumpPair> {
        jump_set_of(self.iter())
    }
}

/// Union of jump sets, sorted.
pub fn jump_set_of(perms: impl IntoIterator<Item = Permutation>) -> Vec<JumpPair> {
    let mut out: Vec<JumpPair> = perms.into_iter().flat_map(|p| p.jumps()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub(crate) fn orbits_of(gens: &[Permutation], n: usize) -> Partition {
    let mut uf = UnionFind::<usize>::new(n);
    for g in gens {
        for x in 1..=n {
            uf.union(x - 1, g.image(x) - 1);
        }
    }
    Partition::from_labels(&uf.into_labeling())
}

/// Finest `G`-congruence in which `1` and `j` are related.
fn block_system_through(gens: &[Permutation], n: usize, j: usize) -> Partition {
    let mut uf = UnionFind::<usize>::new(n);
    uf.union(0, j - 1);
    let mut queue = vec![(0usize, j - 1)];
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.image(x + 1) - 1, g.image(y + 1) - 1);
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    Partition::from_labels(&uf.into_labeling())
}

pub(crate) fn minimal_block_systems(gens: &[Permutation], n: usize) -> Vec<Partition> {
    let mut systems: Vec<Partition> =
        (2..=n).map(|j| block_system_through(gens, n, j)).filter(|p| p.num_blocks() > 1).collect();
    systems.sort();
    systems.dedup();
    let minimal: Vec<Partition> = systems
        .iter()
        .filter(|p| !systems.iter().any(|q| q != *p && q.refines(p).unwrap_or(false)))
        .cloned()
        .collect();
    minimal
}

pub(crate) fn largest_ab_by(n: usize, has: impl Fn(&Permutation) -> bool) -> (usize, usize) {
    let t = |i: usize| Permutation::transposition(n, i, i + 1).expect("valid transposition");
    let mut a = 1;
    while a < n && has(&t(a)) {
        a += 1;
    }
    let mut b = 1;
    while b < n && has(&t(n - b)) {
        b += 1;
    }
    (a, b)
}

pub(crate) fn transposition_partition_by(n: usize, has: impl Fn(&Permutation) -> bool) -> Partition {
    let mut uf = UnionFind::<usize>::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if has(&Permutation::transposition(n, i, j).expect("valid transposition")) {
                uf.union(i - 1, j - 1);
            }
        }
    }
    Partition::from_labels(&uf.into_labeling())
}

/// Every subgroup of `S_n` for `n <= 6`, ordered by order then elements.
///
/// Starts from the cyclic subgroups and repeatedly joins each known
/// subgroup with one more cyclic subgroup until nothing new appears.
pub fn enumerate_subgroups(n: usize) -> Result<Vec<PermGroup>, Error> {
    if n == 0 || n > MAX_SUBGROUP_DEGREE {
        return Err(Error::EnumerationDegree { degree: n, max: MAX_SUBGROUP_DEGREE });
    }
    let limits = Limits::default();
    let sym = PermGroup::closure(&symmetric_generators(n), n, &limits)?;
    let mut known: HashMap<Vec<u64>, PermGroup> = HashMap::new();
    let mut cyclic: Vec<(Permutation, PermGroup)> = Vec::new();
    for g in sym.iter() {
        let c = PermGroup::closure(&[g], n, &limits)?;
        if !known.contains_key(&c.elements) {
            known.insert(c.elements.clone(), c.clone());
            cyclic.push((g, c));
        }
    }
    let mut frontier: Vec<PermGroup> = cyclic.iter().map(|(_, c)| c.clone()).collect();
    while !frontier.is_empty() {
        let found: Vec<PermGroup> = frontier
            .par_iter()
            .flat_map_iter(|h| {
                cyclic
                    .iter()
                    .filter(|(g, _)| !h.has(g))
                    .map(|(g, _)| {
                        let mut gens = h.generators.clone();
                        gens.push(*g);
                        PermGroup::closure(&gens, n, &limits).expect("subgroup of a small symmetric group")
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = Vec::new();
        for k in found {
            if !known.contains_key(&k.elements) {
                known.insert(k.elements.clone(), k.clone());
                frontier.push(k);
            }
        }
    }
    let mut all: Vec<PermGroup> = known.into_values().collect();
    all.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
    Ok(all)
}

/// `(1 2)` and `ζ_n`.
pub(crate) fn symmetric_generators(n: usize) -> Vec<Permutation> {
    match n {
        0 | 1 => vec![],
        2 => vec![Permutation::transposition(2, 1, 2).expect("valid")],
        _ => vec![
            Permutation::transposition(n, 1, 2).expect("valid"),
            Permutation::natural_cycle(n).expect("valid"),
        ],
    }
}
