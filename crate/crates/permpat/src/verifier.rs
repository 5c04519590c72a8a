//! Checks classifier predictions and structural laws against brute force.

use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{family_labels, predict_eventual, predict_levels, EventualFamily, GroupForm, Next};
use crate::descriptor::{in_natural_dihedral, GroupDescriptor};
use crate::error::Error;
use crate::galois::{comp_level_sequence, comp_set, comp_set_with, pat_set, PermSet, Strategy};
use crate::group::{enumerate_subgroups, Limits, PermGroup};
use crate::partition::Partition;
use crate::perm::{Notation, Permutation, Symmetry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one check. Equality ignores `elapsed_ms`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check_id: String,
    pub scope: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        (&self.check_id, &self.scope, self.status, &self.counterexample, &self.note)
            == (&other.check_id, &other.scope, other.status, &other.counterexample, &other.note)
    }
}

impl Eq for Report {}

/// Result of a single check before timing is attached.
enum Outcome {
    Pass,
    Fail(Value),
    Skipped(String),
}

fn timed(check_id: &str, scope: String, f: impl FnOnce() -> Outcome) -> Report {
    let start = Instant::now();
    let outcome = f();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (status, counterexample, note) = match outcome {
        Outcome::Pass => (Status::Pass, None, None),
        Outcome::Fail(v) => (Status::Fail, Some(v), None),
        Outcome::Skipped(s) => (Status::Skipped, None, Some(s)),
    };
    Report { check_id: check_id.to_string(), scope, status, counterexample, note, elapsed_ms }
}

fn from_error(e: Error) -> Outcome {
    if e.is_cap() {
        Outcome::Skipped(e.to_string())
    } else {
        Outcome::Fail(json!({ "error": e.to_string() }))
    }
}

const PRINT_CAP: usize = 64;

fn group_json(g: &PermGroup) -> Value {
    let mut v = json!({ "order": g.order() });
    if g.order() <= PRINT_CAP {
        v["elements"] = json!(g.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    v
}

pub fn describe(g: &PermGroup) -> String {
    GroupForm::Listed(g.clone()).descriptor()
}

/// First level at which a prediction disagrees with the oracle.
fn prediction_mismatch(g: &PermGroup, depth: usize, limits: &Limits) -> Result<Option<Value>, Error> {
    if g.degree() + depth > limits.max_degree {
        return Err(Error::EnumerationDegree { degree: g.degree() + depth, max: limits.max_degree });
    }
    let predictions = predict_levels(g, depth, limits)?;
    let oracle = comp_level_sequence(g, depth, limits)?;
    for (i, (p, actual)) in predictions.iter().zip(&oracle).enumerate() {
        let actual_form = GroupForm::Listed(actual.clone());
        let ok = match &p.next {
            Next::Exact(f) => f.same_group(&actual_form, limits)?,
            Next::Bounds { lower, upper } => {
                let upper = upper.resolve(limits)?;
                lower.is_subgroup_of(&actual_form, limits)?
                    && actual.iter().all(|x| upper.contains(&x, limits).unwrap_or(false))
            }
        };
        if !ok {
            return Ok(Some(json!({
                "group": describe(g),
                "level": i + 1,
                "degree": p.degree,
                "expected": p.next.to_json(limits, PRINT_CAP),
                "actual": group_json(actual),
                "citations": p.citations,
            })));
        }
    }
    Ok(None)
}

/// Compares `predict_level` with `comp_set` for levels `1..=depth`.
pub fn verify_prediction(g: &PermGroup, depth: usize, limits: &Limits) -> Report {
    timed("prediction", format!("group={} depth={}", describe(g), depth), || {
        match prediction_mismatch(g, depth, limits) {
            Ok(None) => Outcome::Pass,
            Ok(Some(v)) => Outcome::Fail(v),
            Err(e) => from_error(e),
        }
    })
}

/// Observed eventual behaviour of a level sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Onset {
    /// Families followed by every level from `observed_m` to the last computed level.
    pub families: Vec<EventualFamily>,
    /// First level (0 = the group itself) from which a family is followed, if any.
    pub observed_m: Option<usize>,
    /// Family labels of each computed level.
    pub labels: Vec<Vec<EventualFamily>>,
}

/// Walks `G, Comp^{n+1}(G), …, Comp^{n+max_depth}(G)` and finds the first level from which
/// all computed levels belong to a common family. At least two levels must agree.
pub fn eventual_onset(g: &PermGroup, max_depth: usize, limits: &Limits) -> Result<Onset, Error> {
    let mut levels = vec![g.clone()];
    levels.extend(comp_level_sequence(g, max_depth, limits)?);
    let labels: Vec<Vec<EventualFamily>> = levels.iter().map(family_labels).collect();
    for i in 0..max_depth {
        let common: Vec<EventualFamily> =
            labels[i].iter().filter(|f| labels[i + 1..].iter().all(|l| l.contains(f))).copied().collect();
        if !common.is_empty() {
            return Ok(Onset { families: common, observed_m: Some(i), labels });
        }
    }
    Ok(Onset { families: vec![], observed_m: None, labels })
}

fn onset_mismatch(g: &PermGroup, limits: &Limits) -> Result<Option<Value>, Error> {
    let (family, bound) = predict_eventual(g, limits)?;
    let onset = eventual_onset(g, bound + 1, limits)?;
    let follows = onset.labels[bound..].iter().all(|l| l.contains(&family));
    let within = onset.observed_m.is_some_and(|m| m <= bound);
    if follows && within {
        return Ok(None);
    }
    Ok(Some(json!({
        "group": describe(g),
        "predicted_family": family.to_json(),
        "onset_bound": bound,
        "observed_m": onset.observed_m,
        "observed_families": onset.families.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
    })))
}

/// Checks that the level sequence follows the predicted family from the predicted onset bound on.
pub fn verify_onset(g: &PermGroup, limits: &Limits) -> Report {
    timed("onset", format!("group={}", describe(g)), || match onset_mismatch(g, limits) {
        Ok(None) => Outcome::Pass,
        Ok(Some(v)) => Outcome::Fail(v),
        Err(e) => from_error(e),
    })
}

/// One report per subgroup of `S_n`, covering level predictions up to `depth` and the onset bound.
pub fn verify_catalog(n: usize, depth: usize, limits: &Limits) -> Result<Vec<Report>, Error> {
    let groups = enumerate_subgroups(n)?;
    let width = groups.len().to_string().len();
    let mut reports: Vec<Report> = groups
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let scope = format!("n={n} #{:0width$} group={}", i + 1, describe(g));
            timed("catalog", scope, || {
                let mut skipped = Vec::new();
                for check in [prediction_mismatch(g, depth, limits), onset_mismatch(g, limits)] {
                    match check {
                        Ok(None) => {}
                        Ok(Some(v)) => return Outcome::Fail(v),
                        Err(e) if e.is_cap() => skipped.push(e.to_string()),
                        Err(e) => return Outcome::Fail(json!({ "error": e.to_string() })),
                    }
                }
                if skipped.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Skipped(skipped.join("; "))
                }
            })
        })
        .collect();
    reports.sort_by(|a, b| (&a.check_id, &a.scope).cmp(&(&b.check_id, &b.scope)));
    Ok(reports)
}

/// Composition under test in the product-containment suite. Pattern products are
/// always formed with the library composition.
pub type ComposeFn = fn(&Permutation, &Permutation) -> Permutation;

fn true_compose(f: &Permutation, g: &Permutation) -> Permutation {
    f.compose(g).expect("equal degrees")
}

/// Runs every structural law suite with the library composition.
pub fn verify_laws(seed: u64) -> Vec<Report> {
    verify_laws_with(seed, true_compose)
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let limits = Limits { max_degree: 16, element_cap: 5040 };
    GroupDescriptor::Symmetric(n).make_group(&limits).expect("small symmetric group").elements()
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut img: Vec<usize> = (1..=n).collect();
    img.shuffle(rng);
    Permutation::from_images(&img).expect("shuffled identity")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> PermSet {
    let members: Vec<Permutation> = all_perms(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    PermSet::new(n, members).expect("consistent degree")
}

fn random_small_set(rng: &mut ChaCha8Rng, n: usize, k: usize) -> PermSet {
    let members: Vec<Permutation> = (0..k).map(|_| random_perm(rng, n)).collect();
    PermSet::new(n, members).expect("consistent degree")
}

fn set_json(s: &PermSet) -> Value {
    json!(s.iter().take(PRINT_CAP).map(|p| p.to_string()).collect::<Vec<_>>())
}

/// Runs a fallible check body; the first counterexample fails the suite.
fn suite(id: &str, scope: String, body: impl FnOnce() -> Result<Option<Value>, Error>) -> Report {
    timed(id, scope, || match body() {
        Ok(None) => Outcome::Pass,
        Ok(Some(v)) => Outcome::Fail(v),
        Err(e) => from_error(e),
    })
}

fn galois_identities(seed: u64) -> Report {
    suite("laws/galois-identities", format!("seed={seed} l<=5 n<=7"), || {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..24 {
            let l = rng.gen_range(2..=5);
            let n = rng.gen_range(l + 1..=7);
            let s = random_subset(&mut rng, l, 0.85);
            let k = rng.gen_range(1..6);
            let t = random_small_set(&mut rng, n, k);
            let comp_s = comp_set(&s, n, &limits)?;
            let pat_t = pat_set(&t, l)?;
            let checks = [
                ("pat-comp-subset", pat_set(&comp_s, l)?.is_subset_of(&s)),
                ("comp-pat-superset", t.is_subset_of(&comp_set(&pat_t, n, &limits)?)),
                ("comp-pat-comp", comp_set(&pat_set(&comp_s, l)?, n, &limits)? == comp_s),
                ("pat-comp-pat", pat_set(&comp_set(&pat_t, n, &limits)?, l)? == pat_t),
            ];
            if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
                return Ok(Some(json!({ "law": law, "l": l, "n": n, "S": set_json(&s), "T": set_json(&t) })));
            }
        }
        Ok(None)
    })
}

fn monotonicity(seed: u64) -> Report {
    suite("laws/monotonicity", format!("seed={seed} l<=4 n<=7"), || {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f);
        for _ in 0..24 {
            let l = rng.gen_range(2..=4);
            let n = rng.gen_range(l + 1..=7);
            let big = random_subset(&mut rng, l, 0.9);
            let small = PermSet::new(l, big.iter().filter(|_| rng.gen_bool(0.8))).expect("same degree");
            if !comp_set(&small, n, &limits)?.is_subset_of(&comp_set(&big, n, &limits)?) {
                return Ok(Some(json!({ "law": "comp", "small": set_json(&small), "big": set_json(&big), "n": n })));
            }
            let tbig = random_small_set(&mut rng, n, 6);
            let tsmall = PermSet::new(n, tbig.iter().take(3)).expect("same degree");
            if !pat_set(&tsmall, l)?.is_subset_of(&pat_set(&tbig, l)?) {
                return Ok(Some(json!({ "law": "pat", "small": set_json(&tsmall), "big": set_json(&tbig), "l": l })));
            }
        }
        Ok(None)
    })
}

fn transitivity(seed: u64) -> Report {
    suite("laws/transitivity", format!("seed={seed} l<m<n<=7"), || {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472);
        for _ in 0..16 {
            let l = rng.gen_range(2..=4);
            let m = rng.gen_range(l + 1..=6);
            let n = rng.gen_range(m + 1..=7);
            let s = random_subset(&mut rng, l, 0.85);
            let stepped = comp_set(&comp_set(&s, m, &limits)?, n, &limits)?;
            let direct = comp_set_with(&s, n, Strategy::FullScan, &limits)?;
            if stepped != direct {
                return Ok(Some(json!({ "S": set_json(&s), "m": m, "n": n })));
            }
            let t = random_small_set(&mut rng, n, 4);
            if pat_set(&pat_set(&t, m)?, l)? != pat_set(&t, l)? {
                return Ok(Some(json!({ "law": "pat", "T": set_json(&t), "m": m, "l": l })));
            }
        }
        Ok(None)
    })
}

fn interpolation() -> Report {
    suite("laws/interpolation", "exhaustive n<=7".into(), || {
        for n in 1..=7 {
            for tau in all_perms(n) {
                for m in 1..=n {
                    let mid = tau.all_patterns(m)?;
                    for l in 1..=m {
                        let direct = tau.all_patterns(l)?;
                        let via: Vec<Permutation> =
                            mid.iter().flat_map(|p| p.all_patterns(l).expect("l <= m")).sorted().dedup().collect();
                        if direct != via {
                            return Ok(Some(json!({ "tau": tau.to_string(), "l": l, "m": m })));
                        }
                    }
                }
            }
        }
        Ok(None)
    })
}

fn product_containment(seed: u64, compose: ComposeFn) -> Report {
    suite("laws/product-containment", format!("seed={seed} n<=7"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7072);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let (f, g) = (random_perm(&mut rng, n), random_perm(&mut rng, n));
            let fg = compose(&f, &g);
            for l in 1..=n {
                let (pf, pg) = (f.all_patterns(l)?, g.all_patterns(l)?);
                let products: Vec<Permutation> =
                    pf.iter().cartesian_product(&pg).map(|(a, b)| a.compose_unchecked(b)).sorted().dedup().collect();
                if let Some(bad) = fg.all_patterns(l)?.into_iter().find(|p| products.binary_search(p).is_err()) {
                    return Ok(Some(json!({ "f": f.to_string(), "g": g.to_string(), "l": l, "pattern": bad.to_string() })));
                }
            }
        }
        Ok(None)
    })
}

/// The permutations with exactly one jump: `dja`, `ajd` and their complements for
/// `2 <= l <= n-2`, and the powers of `ζ_n` with their complements.
fn one_jump_family(n: usize) -> Vec<Permutation> {
    let delta = Permutation::descending(n).expect("valid degree");
    let zeta = Permutation::natural_cycle(n).expect("valid degree");
    let mut out = Vec::new();
    for l in 2..=n.saturating_sub(2) {
        for p in [Permutation::dja(n, l), Permutation::ajd(n, l)] {
            let p = p.expect("valid sum");
            out.push(delta.compose_unchecked(&p));
            out.push(p);
        }
    }
    for j in 1..n {
        let z = zeta.power(j as i64);
        out.push(delta.compose_unchecked(&z));
        out.push(z);
    }
    out.sort();
    out.dedup();
    out
}

fn jump_characterisation() -> Report {
    suite("laws/jump-characterisation", "exhaustive 3<=n<=7".into(), || {
        for n in 3..=7 {
            let family = one_jump_family(n);
            let ends = [Permutation::identity(n)?, Permutation::descending(n)?];
            for pi in all_perms(n) {
                let jumps = pi.jumps().len();
                let ok = (jumps == 0) == ends.contains(&pi) && (jumps == 1) == family.binary_search(&pi).is_ok();
                if !ok {
                    return Ok(Some(json!({ "pi": pi.to_string(), "jumps": jumps })));
                }
            }
        }
        Ok(None)
    })
}

fn dihedral_criterion() -> Report {
    suite("laws/dihedral-criterion", "exhaustive n<=7".into(), || {
        let limits = Limits::default();
        for n in 1..=7 {
            let d = GroupDescriptor::NaturalDihedral(n).make_group(&limits)?;
            for pi in all_perms(n) {
                if d.has(&pi) != in_natural_dihedral(&pi) {
                    return Ok(Some(json!({ "pi": pi.to_string() })));
                }
            }
        }
        Ok(None)
    })
}

fn parity_deletion() -> Report {
    suite("laws/parity-deletion", "exhaustive n<=7".into(), || {
        for n in 2..=7 {
            for pi in all_perms(n) {
                let same = pi.parity() == pi.delete_point(1)?.parity();
                if same != (pi.image(1) % 2 == 1) {
                    return Ok(Some(json!({ "pi": pi.to_string() })));
                }
            }
        }
        Ok(None)
    })
}

fn descending_parity() -> Report {
    suite("laws/descending-parity", "n<=16".into(), || {
        for n in 1..=16 {
            let even = Permutation::descending(n)?.is_even();
            if even != matches!(n % 4, 0 | 1) {
                return Ok(Some(json!({ "n": n, "even": even })));
            }
        }
        Ok(None)
    })
}

fn gamma_cycle() -> Report {
    suite("laws/adjacent-quotient-cycle", "exhaustive n<=6".into(), || {
        for n in 2..=6 {
            for pi in all_perms(n) {
                for i in 1..n {
                    let (j, k) = (pi.image(i), pi.image(i + 1));
                    let cycle: Vec<usize> = if j < k { (j..k).collect() } else { (k..j).rev().collect() };
                    let text = format!("({})", cycle.iter().join(" "));
                    let expected = Permutation::parse_cycles(&text, n - 1)?;
                    let gamma = pi.adjacent_pattern_quotient(i)?;
                    if gamma != expected {
                        return Ok(Some(json!({ "pi": pi.to_string(), "i": i, "gamma": gamma.format(Notation::Cycles) })));
                    }
                }
            }
        }
        Ok(None)
    })
}

fn isaacs_zieschang() -> Report {
    suite("laws/cycle-pair-generation", "exhaustive 1<m<n<=7".into(), || {
        let limits = Limits::default();
        for n in 3..=7 {
            let zeta = Permutation::natural_cycle(n)?;
            for m in 2..n {
                let text = format!("({})", (1..=m).join(" "));
                let tau = Permutation::parse_cycles(&text, n)?;
                let g = PermGroup::closure(&[zeta, tau], n, &limits)?;
                let full = (1..=n as u64).product::<u64>();
                let expected = if m % 2 == 1 && n % 2 == 1 { full / 2 } else { full };
                if g.order() as u64 != expected {
                    return Ok(Some(json!({ "n": n, "m": m, "order": g.order() })));
                }
            }
        }
        Ok(None)
    })
}

fn join_generation() -> Report {
    suite("laws/partition-join-generation", "exhaustive n<=5".into(), || {
        let limits = Limits::default();
        for n in 1..=5 {
            let parts = Partition::all(n);
            let stabilizers: Vec<PermGroup> = parts
                .iter()
                .map(|p| GroupDescriptor::SPi(p.clone()).make_group(&limits))
                .collect::<Result<_, _>>()?;
            for (i, p) in parts.iter().enumerate() {
                for (j, q) in parts.iter().enumerate() {
                    let mut gens = stabilizers[i].generators().to_vec();
                    gens.extend_from_slice(stabilizers[j].generators());
                    let joined = PermGroup::closure(&gens, n, &limits)?;
                    let expected = GroupDescriptor::SPi(p.join(q)?).make_group(&limits)?;
                    if joined != expected {
                        return Ok(Some(json!({ "pi": p.to_string(), "gamma": q.to_string() })));
                    }
                }
            }
        }
        Ok(None)
    })
}

fn symmetry_preservation(seed: u64) -> Report {
    suite("laws/symmetry-preservation", format!("seed={seed} n<=7"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7379);
        for _ in 0..400 {
            let n = rng.gen_range(1..=7);
            let l = rng.gen_range(1..=n);
            let pi = random_perm(&mut rng, n);
            let tau = if rng.gen_bool(0.5) {
                let pats = pi.all_patterns(l)?;
                pats[rng.gen_range(0..pats.len())]
            } else {
                random_perm(&mut rng, l)
            };
            let base = tau.is_pattern_of(&pi);
            for s in [Symmetry::Reverse, Symmetry::Complement, Symmetry::RcConjugate] {
                if tau.symmetry(s).is_pattern_of(&pi.symmetry(s)) != base {
                    return Ok(Some(json!({ "tau": tau.to_string(), "pi": pi.to_string(), "symmetry": format!("{s:?}") })));
                }
            }
            if tau.inverse().is_pattern_of(&pi.inverse()) != base {
                return Ok(Some(json!({ "tau": tau.to_string(), "pi": pi.to_string(), "symmetry": "Inverse" })));
            }
        }
        Ok(None)
    })
}

fn involvement_order(seed: u64) -> Report {
    suite("laws/involvement-order", format!("seed={seed} n<=7"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x696f);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let c = random_perm(&mut rng, n);
            let mid = rng.gen_range(1..=n);
            let b = c.all_patterns(mid)?.choose(&mut rng).copied().expect("non-empty");
            let a = b.all_patterns(rng.gen_range(1..=mid))?.choose(&mut rng).copied().expect("non-empty");
            let other = random_perm(&mut rng, n);
            let ok = c.is_pattern_of(&c)
                && a.is_pattern_of(&b)
                && b.is_pattern_of(&c)
                && a.is_pattern_of(&c)
                && (!(other.is_pattern_of(&c) && c.is_pattern_of(&other)) || other == c);
            if !ok {
                return Ok(Some(json!({ "a": a.to_string(), "b": b.to_string(), "c": c.to_string() })));
            }
        }
        Ok(None)
    })
}

fn lifting_over_subgroups() -> Report {
    suite("laws/descending-cycle-dihedral-lifting", "all subgroups n=5".into(), || {
        let limits = Limits::default();
        let n = 5;
        let (delta, zeta) = (Permutation::descending(n)?, Permutation::natural_cycle(n)?);
        let (delta1, zeta1) = (Permutation::descending(n + 1)?, Permutation::natural_cycle(n + 1)?);
        for g in enumerate_subgroups(n)? {
            let next = crate::galois::gcomp(&g, n + 1, &limits)?;
            let checks = [
                ("descending", g.has(&delta), next.has(&delta1)),
                ("cyclic", g.has(&zeta), next.has(&zeta1)),
                ("dihedral", g.has(&zeta) && g.has(&delta), next.has(&zeta1) && next.has(&delta1)),
            ];
            if let Some((what, _, _)) = checks.iter().find(|(_, a, b)| a != b) {
                return Ok(Some(json!({ "group": describe(&g), "property": what })));
            }
        }
        Ok(None)
    })
}

/// `Π′` by its defining meet of two shifted copies of `M(Π)`.
pub fn derive_by_meet(p: &Partition) -> Partition {
    let n = p.n();
    let m = p.max_intervals();
    let shifted: Vec<usize> = (1..=n + 1).map(|x| if x == 1 { m.block_index(1) } else { m.block_index(x - 1) }).collect();
    let extended: Vec<usize> = (1..=n + 1).map(|x| m.block_index(x.min(n))).collect();
    Partition::from_labels(&shifted).meet(&Partition::from_labels(&extended)).expect("equal sizes")
}

fn partition_calculus() -> Report {
    suite("laws/partition-calculus", "exhaustive n<=8".into(), || {
        for n in 1..=8 {
            for p in Partition::all(n) {
                let d = p.derive();
                let fail = |what: &str| Ok(Some(json!({ "partition": p.to_string(), "property": what })));
                if d != derive_by_meet(&p) {
                    return fail("meet definition");
                }
                if !d.is_interval() || !d.has_no_consecutive_nontrivial_blocks() {
                    return fail("interval form");
                }
                if p.reverse() == p && d.reverse() != d {
                    return fail("descending symmetry");
                }
                let (mu, mu1) = (p.mu(), d.mu());
                if !((mu == 1 && mu1 == 1) || mu1 + 1 == mu) {
                    return fail("middle block decrease");
                }
                if !p.has_trivial_block() {
                    let intervals: Vec<(usize, usize)> = (1..=n)
                        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
                        .filter(|&(a, b)| p.interwoven(a, b).unwrap_or(false))
                        .collect();
                    let overlap = intervals.iter().tuple_combinations().any(|(x, y)| x.0 <= y.1 && y.0 <= x.1);
                    if overlap {
                        return fail("interwoven overlap");
                    }
                }
            }
        }
        Ok(None)
    })
}

/// Like [`verify_laws`], with the composition used by the product-containment suite replaced.
pub fn verify_laws_with(seed: u64, compose: ComposeFn) -> Vec<Report> {
    let jobs: Vec<Box<dyn Fn() -> Report + Send + Sync>> = vec![
        Box::new(move || galois_identities(seed)),
        Box::new(move || monotonicity(seed)),
        Box::new(move || transitivity(seed)),
        Box::new(interpolation),
        Box::new(move || product_containment(seed, compose)),
        Box::new(jump_characterisation),
        Box::new(dihedral_criterion),
        Box::new(parity_deletion),
        Box::new(descending_parity),
        Box::new(gamma_cycle),
        Box::new(isaacs_zieschang),
        Box::new(join_generation),
        Box::new(move || symmetry_preservation(seed)),
        Box::new(move || involvement_order(seed)),
        Box::new(lifting_over_subgroups),
        Box::new(partition_calculus),
    ];
    let mut reports: Vec<Report> = jobs.par_iter().map(|job| job()).collect();
    reports.sort_by(|a, b| (&a.check_id, &a.scope).cmp(&(&b.check_id, &b.scope)));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> PermGroup {
        s.parse::<GroupDescriptor>().unwrap().make_group(&Limits::default()).unwrap()
    }

    #[test]
    fn prediction_reports() {
        let limits = Limits::default();
        assert_eq!(verify_prediction(&group("A:5"), 2, &limits).status, Status::Pass);
        assert_eq!(verify_prediction(&group("gens:6:(1 2 3 4 5);(3 4 5 6)"), 1, &limits).status, Status::Pass);
        assert_eq!(verify_prediction(&group("S:4"), 3, &limits).status, Status::Pass);
        let r = verify_prediction(&group("S:4"), 9, &limits);
        assert_eq!(r.status, Status::Skipped);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn onsets() {
        let limits = Limits::default();
        let o = eventual_onset(&group("C:5"), 2, &limits).unwrap();
        assert_eq!(o.observed_m, Some(0));
        assert!(o.families.contains(&EventualFamily::cyclic(false)));
        let o = eventual_onset(&group("A:5"), 3, &limits).unwrap();
        assert_eq!(o.observed_m, Some(2));
        assert_eq!(o.families, vec![EventualFamily::cyclic(true)]);
        let o = eventual_onset(&group("SPi:1,2,3|4,5,6"), 3, &limits).unwrap();
        assert_eq!(o.observed_m, Some(0));
        assert_eq!(o.families, vec![EventualFamily::sab(3, 3, false)]);
    }

    #[test]
    fn small_catalogs_pass() {
        let limits = Limits::default();
        for (n, count) in [(2, 2), (3, 6)] {
            let reports = verify_catalog(n, 2, &limits).unwrap();
            assert_eq!(reports.len(), count);
            for r in reports {
                assert_eq!(r.status, Status::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn meet_definition_matches_example() {
        let p: Partition = "1,2,3,7,8,9,10|4,5,6,12,13,14|11".parse().unwrap();
        assert_eq!(derive_by_meet(&p), p.derive());
    }

    fn tampered(f: &Permutation, g: &Permutation) -> Permutation {
        let t = Permutation::transposition(f.degree(), 1, 2).unwrap();
        f.compose(g).unwrap().compose(&t).unwrap()
    }

    #[test]
    fn tampered_composition_is_caught() {
        let reports = verify_laws_with(3, tampered);
        let product = reports.iter().find(|r| r.check_id == "laws/product-containment").unwrap();
        assert_eq!(product.status, Status::Fail);
        assert!(product.counterexample.is_some());
    }

    #[test]
    fn laws_are_deterministic() {
        assert_eq!(verify_laws(11), verify_laws(11));
    }
}
