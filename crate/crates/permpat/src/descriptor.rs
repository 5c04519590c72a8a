//! Named permutation groups and their textual descriptors.
//!
//! Grammar: `S:5`, `A:5`, `T:5`, `Desc:5`, `C:5`, `D:5`, `Dint:5:1:4`,
//! `Sab:7:2:3`, `SPi:1,2|3|4,5`, `SPiDesc:1,2|3|4,5`, `AutPi:1,3,5|2,4,6`,
//! `gens:6:(1 2 3 4);(3 4 5 6)`. Generators may also be written in one-line form.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::group::{factorial, symmetric_generators, Limits, PermGroup};
use crate::partition::Partition;
use crate::perm::{check_degree, Notation, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Symmetric(usize),
    Alternating(usize),
    Trivial(usize),
    /// `⟨δ_n⟩`
    DescOnly(usize),
    /// `C_n = ⟨ζ_n⟩`
    NaturalCyclic(usize),
    /// `D_n = ⟨ζ_n, δ_n⟩`
    NaturalDihedral(usize),
    /// `D_[a,b]`: `α_{a−1} ⊕ π ⊕ α_{n−b}` for `π ∈ D_{b−a+1}`.
    DihedralInterval(usize, usize, usize),
    /// `S_n^{a,b}`
    Sab(usize, usize, usize),
    SPi(Partition),
    /// `⟨S_Π, δ_n⟩`
    SPiWithDesc(Partition),
    AutPi(Partition),
    Generators(usize, Vec<Permutation>),
}

/// Whether `π ∈ D_n`: adjacent images are consecutive modulo `n`.
pub fn in_natural_dihedral(pi: &Permutation) -> bool {
    let n = pi.degree();
    if n <= 2 {
        return true;
    }
    (1..n).all(|x| {
        let d = (pi.image(x + 1) + n - pi.image(x)) % n;
        d == 1 || d == n - 1
    })
}

/// Whether `π ∈ C_n`.
pub fn in_natural_cyclic(pi: &Permutation) -> bool {
    let n = pi.degree();
    (1..n).all(|x| pi.image(x) % n + 1 == pi.image(x + 1))
}

/// `α_{a−1} ⊕ σ ⊕ α_{n−b}`.
fn embed(n: usize, a: usize, sigma: &Permutation) -> Permutation {
    let k = sigma.degree();
    let img: Vec<usize> = (1..=n).map(|x| if x >= a && x < a + k { a - 1 + sigma.image(x - a + 1) } else { x }).collect();
    Permutation::from_images(&img).expect("valid embedding")
}

fn spi_generators(p: &Partition) -> Vec<Permutation> {
    let n = p.n();
    p.blocks()
        .iter()
        .flat_map(|b| b.windows(2).map(move |w| Permutation::transposition(n, w[0], w[1]).expect("valid")))
        .collect()
}

pub(crate) fn in_spi(p: &Partition, pi: &Permutation) -> bool {
    (1..=p.n()).all(|x| p.same_block(x, pi.image(x)))
}

pub(crate) fn in_aut(p: &Partition, pi: &Permutation) -> bool {
    p.blocks().iter().all(|b| {
        let target = p.block_of(pi.image(b[0]));
        target.len() == b.len() && b.iter().all(|&x| p.same_block(pi.image(x), target[0]))
    })
}

pub(crate) fn spi_order(p: &Partition) -> u64 {
    p.blocks().iter().map(|b| factorial(b.len())).product()
}

pub(crate) fn aut_order(p: &Partition) -> u64 {
    let mut sizes: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
    sizes.sort_unstable();
    let mut order = spi_order(p);
    let mut i = 0;
    while i < sizes.len() {
        let j = sizes[i..].iter().take_while(|&&s| s == sizes[i]).count();
        order *= factorial(j);
        i += j;
    }
    order
}

impl GroupDescriptor {
    pub fn degree(&self) -> usize {
        use GroupDescriptor::*;
        match self {
            Symmetric(n) | Alternating(n) | Trivial(n) | DescOnly(n) | NaturalCyclic(n) | NaturalDihedral(n) => *n,
            DihedralInterval(n, _, _) | Sab(n, _, _) | Generators(n, _) => *n,
            SPi(p) | SPiWithDesc(p) | AutPi(p) => p.n(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        use GroupDescriptor::*;
        check_degree(self.degree())?;
        let bad = || Error::Descriptor(self.to_string());
        match self {
            DihedralInterval(n, a, b) if !(*a >= 1 && a < b && b <= n) => Err(bad()),
            Sab(n, a, b) if !(*a >= 1 && *b >= 1 && a + b <= *n) => Err(bad()),
            Generators(n, gens) if gens.iter().any(|g| g.degree() != *n) => Err(bad()),
            _ => Ok(()),
        }
    }

    /// Generators of the named group.
    pub fn generators(&self) -> Vec<Permutation> {
        use GroupDescriptor::*;
        let n = self.degree();
        let delta = || Permutation::descending(n).expect("valid degree");
        let zeta = || Permutation::natural_cycle(n).expect("valid degree");
        let mut gens = match self {
            Symmetric(_) => symmetric_generators(n),
            Alternating(_) => (1..n.saturating_sub(1))
                .map(|i| Permutation::parse_cycles(&format!("({} {} {})", i, i + 1, i + 2), n).expect("valid"))
                .collect(),
            Trivial(_) => vec![],
            DescOnly(_) => vec![delta()],
            NaturalCyclic(_) => vec![zeta()],
            NaturalDihedral(_) => vec![zeta(), delta()],
            DihedralInterval(_, a, b) => {
                let k = b - a + 1;
                vec![
                    embed(n, *a, &Permutation::natural_cycle(k).expect("valid")),
                    embed(n, *a, &Permutation::descending(k).expect("valid")),
                ]
            }
            Sab(_, a, b) => spi_generators(&Partition::pi_ab(n, *a, *b).expect("validated")),
            SPi(p) => spi_generators(p),
            SPiWithDesc(p) => {
                let mut g = spi_generators(p);
                g.push(delta());
                g
            }
            AutPi(p) => {
                let mut g = spi_generators(p);
                let blocks = p.blocks();
                for (i, b) in blocks.iter().enumerate() {
                    if let Some(c) = blocks[i + 1..].iter().find(|c| c.len() == b.len()) {
                        let mut img: Vec<usize> = (1..=n).collect();
                        for (&x, &y) in b.iter().zip(c.iter()) {
                            img[x - 1] = y;
                            img[y - 1] = x;
                        }
                        g.push(Permutation::from_images(&img).expect("valid swap"));
                    }
                }
                g
            }
            Generators(_, gens) => gens.clone(),
        };
        gens.retain(|g| !g.is_identity());
        gens
    }

    /// Group order when it is known without enumeration.
    pub fn order(&self) -> Option<u64> {
        use GroupDescriptor::*;
        let n = self.degree();
        Some(match self {
            Symmetric(_) => factorial(n),
            Alternating(_) => (factorial(n) / 2).max(1),
            Trivial(_) => 1,
            DescOnly(_) => n.min(2) as u64,
            NaturalCyclic(_) => n as u64,
            NaturalDihedral(_) => dihedral_order(n),
            DihedralInterval(_, a, b) => dihedral_order(b - a + 1),
            Sab(_, a, b) => factorial(*a) * factorial(*b),
            SPi(p) => spi_order(p),
            SPiWithDesc(p) => {
                if p.reverse() != *p {
                    return None;
                }
                let delta = Permutation::descending(n).expect("valid degree");
                spi_order(p) * if in_spi(p, &delta) { 1 } else { 2 }
            }
            AutPi(p) => aut_order(p),
            Generators(..) => return None,
        })
    }

    /// Membership when it can be decided without enumeration.
    pub fn contains(&self, pi: &Permutation) -> Option<bool> {
        use GroupDescriptor::*;
        let n = self.degree();
        if pi.degree() != n {
            return Some(false);
        }
        let delta = || Permutation::descending(n).expect("valid degree");
        Some(match self {
            Symmetric(_) => true,
            Alternating(_) => pi.is_even(),
            Trivial(_) => pi.is_identity(),
            DescOnly(_) => pi.is_identity() || *pi == delta(),
            NaturalCyclic(_) => in_natural_cyclic(pi),
            NaturalDihedral(_) => in_natural_dihedral(pi),
            DihedralInterval(_, a, b) => {
                let fixed_outside = (1..=n).filter(|x| x < a || x > b).all(|x| pi.image(x) == x);
                fixed_outside && {
                    let inner: Vec<usize> = (*a..=*b).collect();
                    in_natural_dihedral(&pi.pattern(&inner).expect("valid positions"))
                }
            }
            Sab(_, a, b) => in_spi(&Partition::pi_ab(n, *a, *b).expect("validated"), pi),
            SPi(p) => in_spi(p, pi),
            SPiWithDesc(p) => {
                if p.reverse() != *p {
                    return None;
                }
                in_spi(p, pi) || in_spi(p, &delta().compose_unchecked(pi))
            }
            AutPi(p) => in_aut(p, pi),
            Generators(..) => return None,
        })
    }

    /// Enumerates the group.
    pub fn make_group(&self, limits: &Limits) -> Result<PermGroup, Error> {
        self.validate()?;
        if let Some(order) = self.order() {
            if order > limits.element_cap as u64 {
                return Err(Error::ElementCap { cap: limits.element_cap, reached: order.min(usize::MAX as u64) as usize });
            }
        }
        PermGroup::closure(&self.generators(), self.degree(), limits)
    }
}

pub(crate) fn dihedral_order(k: usize) -> u64 {
    match k {
        0 | 1 => 1,
        2 => 2,
        _ => 2 * k as u64,
    }
}

/// `make_group` as a free function.
pub fn make_group(d: &GroupDescriptor, limits: &Limits) -> Result<PermGroup, Error> {
    d.make_group(limits)
}

fn format_gens(gens: &[Permutation]) -> String {
    if gens.is_empty() {
        return "()".to_string();
    }
    gens.iter().map(|g| g.format(Notation::Cycles)).collect::<Vec<_>>().join(";")
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupDescriptor::*;
        match self {
            Symmetric(n) => write!(f, "S:{n}"),
            Alternating(n) => write!(f, "A:{n}"),
            Trivial(n) => write!(f, "T:{n}"),
            DescOnly(n) => write!(f, "Desc:{n}"),
            NaturalCyclic(n) => write!(f, "C:{n}"),
            NaturalDihedral(n) => write!(f, "D:{n}"),
            DihedralInterval(n, a, b) => write!(f, "Dint:{n}:{a}:{b}"),
            Sab(n, a, b) => write!(f, "Sab:{n}:{a}:{b}"),
            SPi(p) => write!(f, "SPi:{p}"),
            SPiWithDesc(p) => write!(f, "SPiDesc:{p}"),
            AutPi(p) => write!(f, "AutPi:{p}"),
            Generators(n, gens) => write!(f, "gens:{n}:{}", format_gens(gens)),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use GroupDescriptor::*;
        let bad = || Error::Descriptor(s.to_string());
        let (tag, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let nums = |t: &str, k: usize| -> Result<Vec<usize>, Error> {
            let v: Vec<usize> = t.split(':').map(num).collect::<Result<_, _>>()?;
            if v.len() == k {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        let d = match tag.trim() {
            "S" => Symmetric(num(rest)?),
            "A" => Alternating(num(rest)?),
            "T" => Trivial(num(rest)?),
            "Desc" => DescOnly(num(rest)?),
            "C" => NaturalCyclic(num(rest)?),
            "D" => NaturalDihedral(num(rest)?),
            "Dint" => {
                let v = nums(rest, 3)?;
                DihedralInterval(v[0], v[1], v[2])
            }
            "Sab" => {
                let v = nums(rest, 3)?;
                Sab(v[0], v[1], v[2])
            }
            "SPi" => SPi(rest.parse()?),
            "SPiDesc" => SPiWithDesc(rest.parse()?),
            "AutPi" => AutPi(rest.parse()?),
            "gens" => {
                let (n, list) = rest.split_once(':').ok_or_else(bad)?;
                let n = num(n)?;
                let gens = list
                    .split(';')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        if t.starts_with('(') {
                            Permutation::parse_cycles(t, n)
                        } else {
                            Permutation::parse(t, Notation::OneLine, Some(n))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Generators(n, gens)
            }
            _ => return Err(bad()),
        };
        d.validate()?;
        Ok(d)
    }
}
