//! Predicts `Comp^{n+i}(G)` for a group `G ≤ S_n` from its structure, without brute force.
//!
//! Groups are handled as [`GroupForm`]s so that large closed forms (for example
//! `S_Π` on 14 points) can be classified by membership and order alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::descriptor::{aut_order, dihedral_order, in_aut, in_natural_dihedral, in_spi, spi_order, GroupDescriptor};
use crate::error::Error;
use crate::group::{factorial, largest_ab_by, minimal_block_systems, orbits_of, transposition_partition_by, Limits, PermGroup};
use crate::partition::Partition;
use crate::perm::{Notation, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Symmetric,
    Alternating,
    Trivial,
    DescOnly,
    ContainsNatCycle,
    Intransitive,
    ImprimitiveNoCycle,
    PrimitiveNoCycle,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `S_m^{a,b}`
    Sab { a: usize, b: usize },
    /// `C_m`
    Cyclic,
    /// `S_m`
    FullSymmetric,
}

/// One of the eventual level sequences a group class can settle into.
///
/// `Cyclic` with the descending flag is the dihedral family `D_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EventualFamily {
    pub kind: FamilyKind,
    pub with_descending: bool,
}

impl EventualFamily {
    pub fn sab(a: usize, b: usize, with_descending: bool) -> EventualFamily {
        EventualFamily { kind: FamilyKind::Sab { a, b }, with_descending }
    }

    pub fn cyclic(with_descending: bool) -> EventualFamily {
        EventualFamily { kind: FamilyKind::Cyclic, with_descending }
    }

    pub fn full_symmetric() -> EventualFamily {
        EventualFamily { kind: FamilyKind::FullSymmetric, with_descending: false }
    }

    /// The family member at degree `m`, if the family is defined there.
    pub fn member(&self, m: usize) -> Option<GroupForm> {
        let d = match (self.kind, self.with_descending) {
            (FamilyKind::FullSymmetric, _) => GroupDescriptor::Symmetric(m),
            (FamilyKind::Cyclic, false) => GroupDescriptor::NaturalCyclic(m),
            (FamilyKind::Cyclic, true) => GroupDescriptor::NaturalDihedral(m),
            (FamilyKind::Sab { a, b }, desc) => {
                if a + b > m {
                    return None;
                }
                let p = Partition::pi_ab(m, a, b).ok()?;
                if desc {
                    GroupDescriptor::SPiWithDesc(p)
                } else {
                    GroupDescriptor::Sab(m, a, b)
                }
            }
        };
        Some(GroupForm::Named(d))
    }

    pub fn to_json(&self) -> Value {
        let (family, params) = match self.kind {
            FamilyKind::Sab { a, b } => ("sab", vec![a, b]),
            FamilyKind::Cyclic => ("cyclic", vec![]),
            FamilyKind::FullSymmetric => ("full_symmetric", vec![]),
        };
        json!({ "family": family, "with_descending": self.with_descending, "params": params })
    }
}

impl fmt::Display for EventualFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.with_descending) {
            (FamilyKind::FullSymmetric, _) => write!(f, "S"),
            (FamilyKind::Cyclic, false) => write!(f, "C"),
            (FamilyKind::Cyclic, true) => write!(f, "D"),
            (FamilyKind::Sab { a, b }, false) => write!(f, "S^{{{a},{b}}}"),
            (FamilyKind::Sab { a, b }, true) => write!(f, "<S^{{{a},{b}}}, desc>"),
        }
    }
}

/// A permutation group given by a closed form or by its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupForm {
    Named(GroupDescriptor),
    /// `(S_O ∩ A_m) ∪ (Ō ∩ odd)`: permutations that keep the odd/even classes
    /// and are even, or swap them and are odd.
    AlternatingLift(usize),
    Listed(PermGroup),
}

fn alternating_lift_contains(m: usize, pi: &Permutation) -> bool {
    let keeps = (1..=m).all(|i| pi.image(i) % 2 == i % 2);
    let swaps = (1..=m).all(|i| pi.image(i) % 2 != i % 2);
    (keeps && pi.is_even()) || (swaps && !pi.is_even())
}

fn alternating_lift_order(m: usize) -> u64 {
    let (odd, even) = (factorial(m.div_ceil(2)), factorial(m / 2));
    match m {
        0 | 1 => 1,
        2 => 2,
        _ if m % 2 == 1 => odd * even / 2,
        _ => odd * even,
    }
}

fn alternating_lift_generators(m: usize) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = (1..=m.saturating_sub(4))
        .map(|i| Permutation::parse_cycles(&format!("({} {} {})", i, i + 2, i + 4), m).expect("valid cycle"))
        .collect();
    if m >= 4 {
        gens.push(Permutation::parse_cycles("(1 3)(2 4)", m).expect("valid cycle"));
    }
    if m.is_multiple_of(2) {
        gens.push(Permutation::natural_cycle(m).expect("valid degree"));
    }
    gens
}

impl GroupForm {
    pub fn degree(&self) -> usize {
        match self {
            GroupForm::Named(d) => d.degree(),
            GroupForm::AlternatingLift(m) => *m,
            GroupForm::Listed(g) => g.degree(),
        }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        match self {
            GroupForm::Named(d) => d.generators(),
            GroupForm::AlternatingLift(m) => alternating_lift_generators(*m),
            GroupForm::Listed(g) => g.generators().to_vec(),
        }
    }

    fn symbolic_order(&self) -> Option<u64> {
        match self {
            GroupForm::Named(d) => d.order(),
            GroupForm::AlternatingLift(m) => Some(alternating_lift_order(*m)),
            GroupForm::Listed(g) => Some(g.order() as u64),
        }
    }

    fn symbolic_contains(&self, pi: &Permutation) -> Option<bool> {
        if pi.degree() != self.degree() {
            return Some(false);
        }
        match self {
            GroupForm::Named(d) => d.contains(pi),
            GroupForm::AlternatingLift(m) => Some(alternating_lift_contains(*m, pi)),
            GroupForm::Listed(g) => Some(g.has(pi)),
        }
    }

    /// Whether order and membership are available without enumeration.
    pub fn is_symbolic(&self) -> bool {
        self.symbolic_order().is_some()
    }

    pub fn materialize(&self, limits: &Limits) -> Result<PermGroup, Error> {
        match self {
            GroupForm::Listed(g) => Ok(g.clone()),
            GroupForm::Named(d) => d.make_group(limits),
            GroupForm::AlternatingLift(m) => {
                let order = alternating_lift_order(*m);
                if order > limits.element_cap as u64 {
                    return Err(Error::ElementCap { cap: limits.element_cap, reached: order as usize });
                }
                PermGroup::closure(&self.generators(), *m, limits)
            }
        }
    }

    /// A form whose order and membership are available without enumeration.
    pub fn resolve(&self, limits: &Limits) -> Result<GroupForm, Error> {
        if self.is_symbolic() {
            Ok(self.clone())
        } else {
            Ok(GroupForm::Listed(self.materialize(limits)?))
        }
    }

    pub fn order(&self, limits: &Limits) -> Result<u64, Error> {
        match self.symbolic_order() {
            Some(o) => Ok(o),
            None => Ok(self.materialize(limits)?.order() as u64),
        }
    }

    pub fn contains(&self, pi: &Permutation, limits: &Limits) -> Result<bool, Error> {
        match self.symbolic_contains(pi) {
            Some(b) => Ok(b),
            None => Ok(self.materialize(limits)?.has(pi)),
        }
    }

    /// Membership in a resolved form.
    fn has(&self, pi: &Permutation) -> bool {
        self.symbolic_contains(pi).expect("form is resolved")
    }

    pub fn is_subgroup_of(&self, other: &GroupForm, limits: &Limits) -> Result<bool, Error> {
        if self.degree() != other.degree() {
            return Ok(false);
        }
        let other = other.resolve(limits)?;
        Ok(self.generators().iter().all(|g| other.has(g)))
    }

    pub fn same_group(&self, other: &GroupForm, limits: &Limits) -> Result<bool, Error> {
        Ok(self.degree() == other.degree()
            && self.order(limits)? == other.order(limits)?
            && self.is_subgroup_of(other, limits)?)
    }

    /// Textual form: a group descriptor, or `AltLift:m`.
    pub fn descriptor(&self) -> String {
        match self {
            GroupForm::Named(d) => d.to_string(),
            GroupForm::AlternatingLift(m) => format!("AltLift:{m}"),
            GroupForm::Listed(g) => GroupDescriptor::Generators(g.degree(), g.generators().to_vec()).to_string(),
        }
    }

    /// JSON summary; elements are listed when the order is at most `print_cap`.
    pub fn to_json(&self, limits: &Limits, print_cap: usize) -> Value {
        let mut out = json!({ "descriptor": self.descriptor(), "degree": self.degree() });
        if let Ok(order) = self.order(limits) {
            out["order"] = json!(order);
            if order <= print_cap as u64 {
                if let Ok(g) = self.materialize(limits) {
                    out["elements"] = json!(g.iter().map(|p| p.format(Notation::OneLine)).collect::<Vec<_>>());
                }
            }
        }
        out
    }
}

impl From<GroupDescriptor> for GroupForm {
    fn from(d: GroupDescriptor) -> Self {
        GroupForm::Named(d)
    }
}

impl From<PermGroup> for GroupForm {
    fn from(g: PermGroup) -> Self {
        GroupForm::Listed(g)
    }
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for GroupForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.trim().strip_prefix("AltLift:") {
            let m: usize = rest.trim().parse().map_err(|_| Error::Descriptor(s.to_string()))?;
            crate::perm::check_degree(m)?;
            return Ok(GroupForm::AlternatingLift(m));
        }
        Ok(GroupForm::Named(s.parse()?))
    }
}

/// `Comp` at the next degree: a single group, or a sandwich between two groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Next {
    Exact(GroupForm),
    Bounds { lower: GroupForm, upper: GroupForm },
}

impl Next {
    pub fn lower(&self) -> &GroupForm {
        match self {
            Next::Exact(g) => g,
            Next::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &GroupForm {
        match self {
            Next::Exact(g) => g,
            Next::Bounds { upper, .. } => upper,
        }
    }

    pub fn exact(&self) -> Option<&GroupForm> {
        match self {
            Next::Exact(g) => Some(g),
            Next::Bounds { .. } => None,
        }
    }

    pub fn to_json(&self, limits: &Limits, print_cap: usize) -> Value {
        match self {
            Next::Exact(g) => json!({ "exact": g.to_json(limits, print_cap) }),
            Next::Bounds { lower, upper } => {
                json!({ "lower": lower.to_json(limits, print_cap), "upper": upper.to_json(limits, print_cap) })
            }
        }
    }
}

/// Prediction of `Comp^{degree}(G)` together with the eventual behaviour of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub kind: ClassKind,
    /// Degree of the predicted level.
    pub degree: usize,
    pub next: Next,
    pub eventual: EventualFamily,
    /// Number of levels after which the sequence is guaranteed to follow `eventual`.
    pub onset_bound: usize,
    /// Names of the rules used, in order of application.
    pub citations: Vec<&'static str>,
}

impl Prediction {
    pub fn to_json(&self, limits: &Limits, print_cap: usize) -> Value {
        json!({
            "kind": self.kind,
            "degree": self.degree,
            "next": self.next.to_json(limits, print_cap),
            "eventual": self.eventual.to_json(),
            "onset_bound": self.onset_bound,
            "citations": self.citations,
        })
    }
}

/// Structural data of a resolved form.
struct Facts {
    form: GroupForm,
    n: usize,
    order: u64,
    kind: ClassKind,
    has_desc: bool,
    has_zeta: bool,
    /// Transposition components.
    gamma: Partition,
    orbits: Partition,
    ab: (usize, usize),
}

impl Facts {
    fn new(form: &GroupForm, limits: &Limits) -> Result<Facts, Error> {
        let n = form.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n, min: 2 });
        }
        let form = form.resolve(limits)?;
        let order = form.symbolic_order().expect("form is resolved");
        let gens = form.generators();
        let delta = Permutation::descending(n)?;
        let zeta = Permutation::natural_cycle(n)?;
        let has_desc = form.has(&delta);
        let has_zeta = form.has(&zeta);
        let orbits = orbits_of(&gens, n);
        let kind = if order == factorial(n) {
            ClassKind::Symmetric
        } else if order == factorial(n) / 2 && gens.iter().all(|g| g.is_even()) {
            ClassKind::Alternating
        } else if order == 1 {
            ClassKind::Trivial
        } else if order == 2 && has_desc {
            ClassKind::DescOnly
        } else if has_zeta {
            ClassKind::ContainsNatCycle
        } else if orbits.num_blocks() > 1 {
            ClassKind::Intransitive
        } else if !minimal_block_systems(&gens, n).is_empty() {
            ClassKind::ImprimitiveNoCycle
        } else {
            ClassKind::PrimitiveNoCycle
        };
        let gamma = transposition_partition_by(n, |p| form.has(p));
        let ab = largest_ab_by(n, |p| form.has(p));
        Ok(Facts { form, n, order, kind, has_desc, has_zeta, gamma, orbits, ab })
    }

    fn has_dihedral(&self) -> bool {
        self.has_zeta && self.has_desc
    }

    fn is_spi_of_gamma(&self) -> bool {
        self.order == spi_order(&self.gamma)
    }

    /// Whether `G = Aut Γ` for a transposition partition with no trivial blocks.
    fn is_aut_of_gamma(&self) -> bool {
        self.gamma.num_blocks() > 1 && !self.gamma.has_trivial_block() && self.order == aut_order(&self.gamma)
    }
}

type Step = (Next, Vec<&'static str>);

fn named(d: GroupDescriptor) -> GroupForm {
    GroupForm::Named(d)
}

/// `S_Π` or `⟨S_Π, δ⟩`.
fn spi_form(p: Partition, with_desc: bool) -> GroupForm {
    if with_desc {
        named(GroupDescriptor::SPiWithDesc(p))
    } else {
        named(GroupDescriptor::SPi(p))
    }
}

fn desc_or_trivial(m: usize, with_desc: bool) -> GroupForm {
    if with_desc {
        named(GroupDescriptor::DescOnly(m))
    } else {
        named(GroupDescriptor::Trivial(m))
    }
}

/// `Comp^{n+2}(A_n)`, decided by whether `δ_n` is even.
fn alternating_second_level(n: usize) -> GroupForm {
    let m = n + 2;
    named(match n % 4 {
        0 => GroupDescriptor::DescOnly(m),
        1 => GroupDescriptor::NaturalDihedral(m),
        2 => GroupDescriptor::Trivial(m),
        _ => GroupDescriptor::NaturalCyclic(m),
    })
}

fn alternating_family(n: usize) -> EventualFamily {
    match n % 4 {
        0 => EventualFamily::sab(1, 1, true),
        1 => EventualFamily::cyclic(true),
        2 => EventualFamily::sab(1, 1, false),
        _ => EventualFamily::cyclic(false),
    }
}

fn group_of_words(words: &[&str]) -> PermGroup {
    let perms: Vec<Permutation> = words.iter().map(|w| w.parse().expect("valid word")).collect();
    PermGroup::from_elements(perms[0].degree(), &perms, &Limits::default()).expect("listed set is a group")
}

/// The five degree-6 primitive groups whose next level is larger than `⟨δ_7⟩`.
fn degree_six_table() -> Vec<(GroupForm, GroupForm)> {
    let gens = |s: &str| named(s.parse().expect("valid descriptor"));
    let sum = |p: Permutation| named(GroupDescriptor::Generators(7, vec![p]));
    vec![
        (gens("gens:6:(1 2 3 4);(3 4 5 6)"), GroupForm::Listed(group_of_words(&["1234567", "2154376", "6734512", "7654321"]))),
        (gens("gens:6:(1 2 3 4);(2 3 4 5 6)"), GroupForm::Listed(group_of_words(&["1234567", "1276543", "1543276", "1567234"]))),
        (gens("gens:6:(1 2 3 4 5);(3 4 5 6)"), GroupForm::Listed(group_of_words(&["1234567", "2165437", "4561237", "5432167"]))),
        (gens("gens:6:(1 2 3 4 5);(1 3 4)(2 5 6)"), sum(Permutation::dja(7, 5).expect("valid"))),
        (gens("gens:6:(2 3 4 5 6);(1 2 5)(3 4 6)"), sum(Permutation::ajd(7, 5).expect("valid"))),
    ]
}

/// Rows `D_[a,b] ≤ G` of the interval-dihedral table for primitive groups of degree `n ≠ 6`.
fn interval_dihedral_rows(f: &Facts) -> Vec<GroupForm> {
    let n = f.n;
    if n < 4 {
        return vec![];
    }
    let rows = [
        (1, n - 1, Permutation::dja(n + 1, n - 1)),
        (1, n - 2, Permutation::dja(n + 1, n - 2)),
        (2, n, Permutation::ajd(n + 1, n - 1)),
        (3, n, Permutation::ajd(n + 1, n - 2)),
    ];
    rows.into_iter()
        .filter(|(a, b, _)| GroupDescriptor::DihedralInterval(n, *a, *b).generators().iter().all(|g| f.form.has(g)))
        .map(|(_, _, p)| named(GroupDescriptor::Generators(n + 1, vec![p.expect("valid sum")])))
        .collect()
}

/// Exact next level of a primitive group without the natural cycle, and whether a table row fired.
fn primitive_step(f: &Facts, limits: &Limits) -> Result<(GroupForm, &'static str), Error> {
    if f.n == 6 {
        for (g, next) in degree_six_table() {
            if f.form.same_group(&g, limits)? {
                return Ok((next, "primitive-degree-six-table"));
            }
        }
    } else {
        let rows = interval_dihedral_rows(f);
        debug_assert!(rows.len() <= 1, "interval dihedral rows overlap for {}", f.form);
        if let Some(row) = rows.into_iter().next() {
            return Ok((row, "primitive-interval-dihedral-table"));
        }
    }
    Ok((desc_or_trivial(f.n + 1, f.has_desc), "primitive-descending-only"))
}

/// `⟨S_{Π'}, E_Π⟩`, with `δ` when `δ_n ∈ Aut Π`.
fn aut_lift(p: &Partition, with_desc: bool) -> Result<GroupForm, Error> {
    let m = p.n() + 1;
    let mut gens = GroupDescriptor::SPi(p.derive()).generators();
    gens.extend(p.e_pi()?);
    if with_desc {
        gens.push(Permutation::descending(m)?);
    }
    Ok(named(GroupDescriptor::Generators(m, gens)))
}

fn structured_step(f: &Facts, limits: &Limits) -> Result<Step, Error> {
    let gamma = &f.gamma;
    if f.is_spi_of_gamma() {
        return Ok((Next::Exact(spi_form(gamma.derive(), f.has_desc)), vec!["partition-stabilizer-lift"]));
    }
    let delta = Permutation::descending(f.n)?;
    if f.has_desc
        && !in_spi(gamma, &delta)
        && f.order == 2 * spi_order(gamma)
        && gamma.reverse() == *gamma
        && gamma.is_interval()
        && gamma.has_no_consecutive_nontrivial_blocks()
    {
        return Ok((Next::Exact(spi_form(gamma.derive(), true)), vec!["partition-stabilizer-with-descending"]));
    }
    if f.is_aut_of_gamma() {
        return Ok((Next::Exact(aut_lift(gamma, f.has_desc)?), vec!["partition-automorphism-lift"]));
    }
    let lower = spi_form(gamma.derive(), f.has_desc);
    let upper = if f.kind == ClassKind::Intransitive {
        let theta = &f.orbits;
        spi_form(theta.derive(), in_spi(theta, &delta))
    } else {
        let systems = minimal_block_systems(&f.form.generators(), f.n);
        let uppers: Vec<GroupForm> = systems
            .iter()
            .map(|p| aut_lift(p, in_aut(p, &delta)))
            .collect::<Result<_, _>>()?;
        intersect_all(uppers, limits)
    };
    Ok((Next::Bounds { lower, upper }, vec!["monotone-bounds"]))
}

/// Intersection of forms; falls back to the first form when enumeration hits a cap.
fn intersect_all(forms: Vec<GroupForm>, limits: &Limits) -> GroupForm {
    let first = forms[0].clone();
    if forms.len() == 1 {
        return first;
    }
    let mut acc: Option<PermGroup> = None;
    for f in &forms {
        let Ok(g) = f.materialize(limits) else {
            return first;
        };
        acc = Some(match acc {
            None => g,
            Some(a) => match a.intersection(&g, limits) {
                Ok(x) => x,
                Err(_) => return first,
            },
        });
    }
    GroupForm::Listed(acc.expect("at least two forms"))
}

/// Prediction of `Comp^{n+1}` from an exact form.
fn next_step(form: &GroupForm, limits: &Limits) -> Result<Step, Error> {
    if let GroupForm::AlternatingLift(k) = form {
        if *k >= 3 {
            return Ok((Next::Exact(alternating_second_level(k - 1)), vec!["alternating-second-level"]));
        }
    }
    let f = Facts::new(form, limits)?;
    let m = f.n + 1;
    let exact = |g: GroupForm, c: &'static str| Ok((Next::Exact(g), vec![c]));
    match f.kind {
        ClassKind::Symmetric => exact(named(GroupDescriptor::Symmetric(m)), "symmetric-lift"),
        ClassKind::Alternating => exact(GroupForm::AlternatingLift(m), "alternating-lift"),
        ClassKind::Trivial => exact(named(GroupDescriptor::Trivial(m)), "trivial-lift"),
        ClassKind::DescOnly => exact(named(GroupDescriptor::DescOnly(m)), "descending-lift"),
        ClassKind::ContainsNatCycle => {
            let d = if f.has_dihedral() { GroupDescriptor::NaturalDihedral(m) } else { GroupDescriptor::NaturalCyclic(m) };
            exact(named(d), "natural-cycle-lift")
        }
        ClassKind::Intransitive | ClassKind::ImprimitiveNoCycle => structured_step(&f, limits),
        ClassKind::PrimitiveNoCycle => {
            let (g, c) = primitive_step(&f, limits)?;
            exact(g, c)
        }
    }
}

/// Tightens bounds at degree `m` using what the root group says about `δ`, `C` and `D`.
fn refine(next: Next, root: &Facts, m: usize, cites: &mut Vec<&'static str>, limits: &Limits) -> Result<Next, Error> {
    let Next::Bounds { lower, upper } = next else {
        return Ok(next);
    };
    if upper.generators().iter().all(in_natural_dihedral) {
        cites.push("dihedral-cap-refinement");
        let g = if root.has_dihedral() {
            named(GroupDescriptor::NaturalDihedral(m))
        } else if root.has_zeta {
            named(GroupDescriptor::NaturalCyclic(m))
        } else {
            desc_or_trivial(m, root.has_desc)
        };
        return Ok(Next::Exact(g));
    }
    if let (Ok(lo), Ok(up)) = (lower.order(limits), upper.order(limits)) {
        if lo == up {
            cites.push("bounds-coincide");
            return Ok(Next::Exact(lower));
        }
    }
    Ok(Next::Bounds { lower, upper })
}

/// Families of which the group is a member at its own degree.
pub(crate) fn labels_by(n: usize, order: u64, has: impl Fn(&Permutation) -> bool) -> Vec<EventualFamily> {
    let mut out = Vec::new();
    if order == factorial(n) {
        out.push(EventualFamily::full_symmetric());
    }
    let delta = Permutation::descending(n).expect("valid degree");
    let has_desc = has(&delta);
    if has(&Permutation::natural_cycle(n).expect("valid degree")) {
        if order == n as u64 {
            out.push(EventualFamily::cyclic(false));
        }
        if has_desc && order == dihedral_order(n) {
            out.push(EventualFamily::cyclic(true));
        }
    }
    let (a, b) = largest_ab_by(n, &has);
    for p in 1..n {
        for q in 1..=n - p {
            if p > a || q > b {
                continue;
            }
            let base = factorial(p) * factorial(q);
            if order == base {
                out.push(EventualFamily::sab(p, q, false));
            }
            if p == q && has_desc && order == 2 * base {
                out.push(EventualFamily::sab(p, p, true));
            }
        }
    }
    out.sort();
    out
}

/// Families of which `g` is a member at its own degree.
pub fn family_labels(g: &PermGroup) -> Vec<EventualFamily> {
    if g.degree() < 2 {
        return vec![];
    }
    labels_by(g.degree(), g.order() as u64, |p| g.has(p))
}

fn largest_proper_divisor(n: usize) -> usize {
    (1..n).rev().find(|d| n.is_multiple_of(*d)).unwrap_or(1)
}

fn eventual_of(f: &Facts, limits: &Limits) -> Result<(EventualFamily, usize), Error> {
    let n = f.n;
    let (a, b) = f.ab;
    let (family, bound) = match f.kind {
        ClassKind::Symmetric => (EventualFamily::full_symmetric(), 0),
        ClassKind::Alternating => (alternating_family(n), 2),
        ClassKind::Trivial => (EventualFamily::sab(1, 1, false), 0),
        ClassKind::DescOnly => (EventualFamily::sab(1, 1, true), 0),
        ClassKind::ContainsNatCycle => (EventualFamily::cyclic(f.has_dihedral()), 1),
        ClassKind::Intransitive => {
            let bound = if f.is_spi_of_gamma() {
                (f.gamma.mu() - 1).max(1)
            } else {
                f.orbits.mu_ab(a, b).min(n - 1)
            };
            (EventualFamily::sab(a, b, f.has_desc), bound)
        }
        ClassKind::ImprimitiveNoCycle => {
            let systems = minimal_block_systems(&f.form.generators(), n);
            let worst = systems.iter().map(|p| p.mu_ab(a, b).max(2)).max().unwrap_or(2);
            (EventualFamily::sab(a, b, f.has_desc), worst.min(largest_proper_divisor(n)))
        }
        ClassKind::PrimitiveNoCycle => {
            let (_, cite) = primitive_step(f, limits)?;
            let bound = if cite == "primitive-descending-only" { 1 } else { 2 };
            (EventualFamily::sab(1, 1, f.has_desc), bound)
        }
    };
    let member = labels_by(n, f.order, |p| f.form.has(p)).contains(&family);
    Ok((family, if member { 0 } else { bound }))
}

pub fn classify_kind_form(form: &GroupForm, limits: &Limits) -> Result<ClassKind, Error> {
    Ok(Facts::new(form, limits)?.kind)
}

pub fn classify_kind(g: &PermGroup) -> Result<ClassKind, Error> {
    classify_kind_form(&GroupForm::Listed(g.clone()), &Limits::default())
}

/// Predictions for levels `n+1, …, n+depth`.
pub fn predict_levels_form(form: &GroupForm, depth: usize, limits: &Limits) -> Result<Vec<Prediction>, Error> {
    let root = Facts::new(form, limits)?;
    let n = root.n;
    let (eventual, onset_bound) = eventual_of(&root, limits)?;
    let structured = matches!(root.kind, ClassKind::Intransitive | ClassKind::ImprimitiveNoCycle);
    let aut_root = structured && !root.is_spi_of_gamma() && root.is_aut_of_gamma();
    let mut out: Vec<Prediction> = Vec::with_capacity(depth);
    let mut current = Next::Exact(root.form.clone());
    for i in 1..=depth {
        let m = n + i;
        let (next, mut cites) = if i == 2 && root.kind == ClassKind::PrimitiveNoCycle {
            (Next::Exact(desc_or_trivial(m, root.has_desc)), vec!["primitive-second-level"])
        } else if i >= 2 && aut_root {
            (
                Next::Exact(spi_form(root.gamma.derive_iter(i), root.has_desc)),
                vec!["partition-automorphism-higher-levels"],
            )
        } else {
            match &current {
                Next::Exact(g) => next_step(g, limits)?,
                Next::Bounds { lower, upper } => {
                    let (lo, mut c) = next_step(lower, limits)?;
                    let (up, c2) = next_step(upper, limits)?;
                    c.extend(c2);
                    c.push("monotone-bounds");
                    (Next::Bounds { lower: lo.lower().clone(), upper: up.upper().clone() }, c)
                }
            }
        };
        let next = refine(next, &root, m, &mut cites, limits)?;
        cites.dedup();
        out.push(Prediction { kind: root.kind, degree: m, next: next.clone(), eventual, onset_bound, citations: cites });
        current = next;
    }
    Ok(out)
}

pub fn predict_next_form(form: &GroupForm, limits: &Limits) -> Result<Prediction, Error> {
    Ok(predict_levels_form(form, 1, limits)?.remove(0))
}

pub fn predict_level_form(form: &GroupForm, i: usize, limits: &Limits) -> Result<Prediction, Error> {
    if i == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    Ok(predict_levels_form(form, i, limits)?.pop().expect("non-empty"))
}

pub fn predict_eventual_form(form: &GroupForm, limits: &Limits) -> Result<(EventualFamily, usize), Error> {
    let root = Facts::new(form, limits)?;
    eventual_of(&root, limits)
}

pub fn predict_next(g: &PermGroup, limits: &Limits) -> Result<Prediction, Error> {
    predict_next_form(&GroupForm::Listed(g.clone()), limits)
}

pub fn predict_level(g: &PermGroup, i: usize, limits: &Limits) -> Result<Prediction, Error> {
    predict_level_form(&GroupForm::Listed(g.clone()), i, limits)
}

pub fn predict_levels(g: &PermGroup, depth: usize, limits: &Limits) -> Result<Vec<Prediction>, Error> {
    predict_levels_form(&GroupForm::Listed(g.clone()), depth, limits)
}

pub fn predict_eventual(g: &PermGroup, limits: &Limits) -> Result<(EventualFamily, usize), Error> {
    predict_eventual_form(&GroupForm::Listed(g.clone()), limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> GroupForm {
        s.parse().unwrap()
    }

    fn group(s: &str) -> PermGroup {
        form(s).materialize(&Limits::default()).unwrap()
    }

    fn kind(s: &str) -> ClassKind {
        classify_kind_form(&form(s), &Limits::default()).unwrap()
    }

    #[test]
    fn kinds() {
        assert_eq!(kind("S:5"), ClassKind::Symmetric);
        assert_eq!(kind("A:5"), ClassKind::Alternating);
        assert_eq!(kind("T:4"), ClassKind::Trivial);
        assert_eq!(kind("Desc:4"), ClassKind::DescOnly);
        assert_eq!(kind("D:6"), ClassKind::ContainsNatCycle);
        assert_eq!(kind("SPi:1,2|3,4,5"), ClassKind::Intransitive);
        assert_eq!(kind("AutPi:1,2|3,4|5,6"), ClassKind::ImprimitiveNoCycle);
        assert_eq!(kind("gens:6:(1 2 3 4);(3 4 5 6)"), ClassKind::PrimitiveNoCycle);
        assert!(classify_kind_form(&form("S:1"), &Limits::default()).is_err());
    }

    #[test]
    fn alternating_lift_matches_its_generators() {
        let limits = Limits::default();
        for m in 2..=8 {
            let f = GroupForm::AlternatingLift(m);
            let g = f.materialize(&limits).unwrap();
            assert_eq!(g.order() as u64, alternating_lift_order(m), "m = {m}");
            let sym = group(&format!("S:{m}"));
            for p in sym.iter() {
                assert_eq!(g.has(&p), alternating_lift_contains(m, &p));
            }
        }
    }

    #[test]
    fn next_level_examples() {
        let limits = Limits::default();
        let p = predict_next_form(&form("A:5"), &limits).unwrap();
        assert_eq!(p.next, Next::Exact(GroupForm::AlternatingLift(6)));
        assert_eq!(p.next.exact().unwrap().order(&limits).unwrap(), 36);

        let p = predict_next_form(&form("gens:6:(1 2 3 4 5);(1 3 4)(2 5 6)"), &limits).unwrap();
        let expected = named(GroupDescriptor::Generators(7, vec![Permutation::dja(7, 5).unwrap()]));
        assert!(p.next.exact().unwrap().same_group(&expected, &limits).unwrap());

        let pi: Partition = "1,2,3,7,8,9,10|4,5,6,12,13,14|11".parse().unwrap();
        let p = predict_next_form(&named(GroupDescriptor::SPi(pi)), &limits).unwrap();
        let derived: Partition = "1,2,3|4|5,6|7|8,9,10|11|12|13,14,15".parse().unwrap();
        assert_eq!(p.next, Next::Exact(named(GroupDescriptor::SPi(derived))));

        let p = predict_next_form(&form("D:8"), &limits).unwrap();
        assert_eq!(p.next, Next::Exact(form("D:9")));
        assert_eq!(p.eventual, EventualFamily::cyclic(true));
        let p = predict_next_form(&form("T:2"), &limits).unwrap();
        assert_eq!(p.next.exact().unwrap().order(&limits).unwrap(), 1);
    }

    #[test]
    fn second_levels() {
        let limits = Limits::default();
        let order_at = |s: &str, i| predict_level_form(&form(s), i, &limits).unwrap().next.exact().unwrap().order(&limits).unwrap();
        assert_eq!(order_at("A:6", 2), 1);
        assert_eq!(order_at("A:7", 2), 9);
        assert_eq!(order_at("A:5", 2), 14);
        assert_eq!(order_at("A:8", 2), 2);
        let pi: Partition = "1,2,3,7,8,9,10|4,5,6,12,13,14|11".parse().unwrap();
        let p = predict_level_form(&named(GroupDescriptor::SPi(pi.clone())), 2, &limits).unwrap();
        assert_eq!(p.next, Next::Exact(named(GroupDescriptor::SPi(pi.derive_iter(2)))));
    }

    #[test]
    fn eventual_examples() {
        let limits = Limits::default();
        assert_eq!(predict_eventual_form(&form("C:7"), &limits).unwrap(), (EventualFamily::cyclic(false), 0));
        assert_eq!(predict_eventual_form(&form("SPi:1,2|3,4,5"), &limits).unwrap(), (EventualFamily::sab(2, 3, false), 0));
        assert_eq!(predict_eventual_form(&form("SPi:1,2|3,5|4"), &limits).unwrap(), (EventualFamily::sab(2, 1, false), 1));
        let (fam, bound) = predict_eventual_form(&form("gens:6:(1 2 3 4);(3 4 5 6)"), &limits).unwrap();
        assert_eq!(fam, EventualFamily::sab(1, 1, true));
        assert!(bound <= 2);
    }

    #[test]
    fn labels() {
        assert_eq!(family_labels(&group("T:3")), vec![EventualFamily::sab(1, 1, false)]);
        assert!(family_labels(&group("S:2")).contains(&EventualFamily::sab(1, 1, true)));
        assert!(family_labels(&group("D:5")).contains(&EventualFamily::cyclic(true)));
        assert_eq!(family_labels(&group("Sab:7:2:3")), vec![EventualFamily::sab(2, 3, false)]);
        assert!(family_labels(&group("A:5")).is_empty());
    }

    #[test]
    fn form_parsing() {
        assert_eq!(form("AltLift:6"), GroupForm::AlternatingLift(6));
        assert_eq!(form("AltLift:6").to_string(), "AltLift:6");
        assert!("AltLift:x".parse::<GroupForm>().is_err());
    }
}
