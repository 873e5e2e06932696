//! Finitely representable subsets of a prime spectrum.
//!
//! Each set is tagged with its ring and kept in a canonical representation per
//! ring: explicit finite sets over finite spectra, a zero flag plus a
//! finite-or-cofinite maximal part over the dimension-one built-in domains,
//! and bitsets over synthetic posets. Equality is therefore extensional.

use std::collections::BTreeSet;
use std::fmt;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::ring::{PrimeIdeal, Ring, RingDescriptor};

/// The maximal-ideal part of a set over a dimension-one domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MaxPart {
    Finite(BTreeSet<PrimeIdeal>),
    CofiniteExcluding(BTreeSet<PrimeIdeal>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// Finite spectra (integer quotients): plain sets.
    Finite(BTreeSet<PrimeIdeal>),
    /// Dimension-one domains: zero flag and maximal part.
    DimOne { zero: bool, max: MaxPart },
    /// Synthetic posets: node bitsets.
    Bits(Bitset),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeSet {
    ring: Ring,
    repr: Repr,
}

impl PrimeSet {
    pub fn empty(ring: &Ring) -> PrimeSet {
        let repr = match &**ring {
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => Repr::DimOne {
                zero: false,
                max: MaxPart::Finite(BTreeSet::new()),
            },
            RingDescriptor::IntegerQuotient { .. } => Repr::Finite(BTreeSet::new()),
            RingDescriptor::Synthetic(p) => Repr::Bits(Bitset::empty(p.len())),
        };
        PrimeSet { ring: ring.clone(), repr }
    }

    /// The whole spectrum.
    pub fn full(ring: &Ring) -> PrimeSet {
        let repr = match &**ring {
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => Repr::DimOne {
                zero: true,
                max: MaxPart::CofiniteExcluding(BTreeSet::new()),
            },
            RingDescriptor::IntegerQuotient { primes, .. } => Repr::Finite(
                primes.iter().map(|&p| PrimeIdeal::IntegerPrime(p)).collect(),
            ),
            RingDescriptor::Synthetic(p) => Repr::Bits(Bitset::full(p.len())),
        };
        PrimeSet { ring: ring.clone(), repr }
    }

    /// Builds a set from explicit primes, canonicalizing the representation.
    pub fn from_primes<I>(ring: &Ring, primes: I) -> Result<PrimeSet>
    where
        I: IntoIterator<Item = PrimeIdeal>,
    {
        let mut out = PrimeSet::empty(ring);
        for p in primes {
            ring.check_member(&p)?;
            match &mut out.repr {
                Repr::Finite(set) => {
                    set.insert(p);
                }
                Repr::DimOne { zero, max } => {
                    if p == PrimeIdeal::Zero {
                        *zero = true;
                    } else if let MaxPart::Finite(set) = max {
                        set.insert(p);
                    }
                }
                Repr::Bits(bits) => {
                    bits.insert(ring.node_of(&p)?);
                }
            }
        }
        Ok(out)
    }

    /// Dimension-one constructor from a zero flag and maximal part.
    pub fn dim_one(ring: &Ring, zero: bool, max: MaxPart) -> Result<PrimeSet> {
        if !ring.is_dim_one_domain() {
            return Err(Error::Input(format!(
                "dim-one representation is not valid over {ring}"
            )));
        }
        let listed = match &max {
            MaxPart::Finite(s) | MaxPart::CofiniteExcluding(s) => s,
        };
        for p in listed {
            ring.check_member(p)?;
            if *p == PrimeIdeal::Zero {
                return Err(Error::Input(
                    "the zero ideal cannot appear in a maximal part".into(),
                ));
            }
        }
        Ok(PrimeSet {
            ring: ring.clone(),
            repr: Repr::DimOne { zero, max },
        })
    }

    pub fn from_bitset(ring: &Ring, bits: Bitset) -> Result<PrimeSet> {
        let poset = ring
            .poset()
            .ok_or_else(|| Error::Input(format!("bitsets are only valid over synthetic rings, not {ring}")))?;
        if bits.universe_len() != poset.len() {
            return Err(Error::Input("bitset width does not match the spectrum".into()));
        }
        Ok(PrimeSet { ring: ring.clone(), repr: Repr::Bits(bits) })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn contains(&self, p: &PrimeIdeal) -> Result<bool> {
        self.ring.check_member(p)?;
        Ok(match &self.repr {
            Repr::Finite(set) => set.contains(p),
            Repr::DimOne { zero, max } => {
                if *p == PrimeIdeal::Zero {
                    *zero
                } else {
                    match max {
                        MaxPart::Finite(s) => s.contains(p),
                        MaxPart::CofiniteExcluding(e) => !e.contains(p),
                    }
                }
            }
            Repr::Bits(bits) => bits.contains(self.ring.node_of(p)?),
        })
    }

    fn check_same_ring(&self, other: &PrimeSet) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Input(format!(
                "sets over different rings: {} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &PrimeSet) -> Result<PrimeSet> {
        self.check_same_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => Repr::Finite(a.union(b).cloned().collect()),
            (Repr::Bits(a), Repr::Bits(b)) => Repr::Bits(a.union(b)),
            (Repr::DimOne { zero: za, max: ma }, Repr::DimOne { zero: zb, max: mb }) => {
                use MaxPart::*;
                let max = match (ma, mb) {
                    (Finite(a), Finite(b)) => Finite(a.union(b).cloned().collect()),
                    (Finite(a), CofiniteExcluding(e)) | (CofiniteExcluding(e), Finite(a)) => {
                        CofiniteExcluding(e.difference(a).cloned().collect())
                    }
                    (CofiniteExcluding(e), CofiniteExcluding(f)) => {
                        CofiniteExcluding(e.intersection(f).cloned().collect())
                    }
                };
                Repr::DimOne { zero: *za || *zb, max }
            }
            _ => unreachable!("canonical representations per ring"),
        };
        Ok(PrimeSet { ring: self.ring.clone(), repr })
    }

    pub fn intersection(&self, other: &PrimeSet) -> Result<PrimeSet> {
        self.check_same_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => {
                Repr::Finite(a.intersection(b).cloned().collect())
            }
            (Repr::Bits(a), Repr::Bits(b)) => Repr::Bits(a.intersection(b)),
            (Repr::DimOne { zero: za, max: ma }, Repr::DimOne { zero: zb, max: mb }) => {
                use MaxPart::*;
                let max = match (ma, mb) {
                    (Finite(a), Finite(b)) => Finite(a.intersection(b).cloned().collect()),
                    (Finite(a), CofiniteExcluding(e)) | (CofiniteExcluding(e), Finite(a)) => {
                        Finite(a.difference(e).cloned().collect())
                    }
                    (CofiniteExcluding(e), CofiniteExcluding(f)) => {
                        CofiniteExcluding(e.union(f).cloned().collect())
                    }
                };
                Repr::DimOne { zero: *za && *zb, max }
            }
            _ => unreachable!("canonical representations per ring"),
        };
        Ok(PrimeSet { ring: self.ring.clone(), repr })
    }

    /// Complement within the ambient spectrum.
    pub fn complement(&self) -> PrimeSet {
        let repr = match &self.repr {
            Repr::Finite(a) => {
                let Repr::Finite(all) = PrimeSet::full(&self.ring).repr else { unreachable!() };
                Repr::Finite(all.difference(a).cloned().collect())
            }
            Repr::Bits(a) => {
                let full = Bitset::full(a.universe_len());
                let mut out = Bitset::empty(a.universe_len());
                for i in full.iter() {
                    if !a.contains(i) {
                        out.insert(i);
                    }
                }
                Repr::Bits(out)
            }
            Repr::DimOne { zero, max } => {
                use MaxPart::*;
                let max = match max {
                    Finite(s) => CofiniteExcluding(s.clone()),
                    CofiniteExcluding(e) => Finite(e.clone()),
                };
                Repr::DimOne { zero: !zero, max }
            }
        };
        PrimeSet { ring: self.ring.clone(), repr }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => a.is_subset(b),
            (Repr::Bits(a), Repr::Bits(b)) => a.is_subset(b),
            (Repr::DimOne { zero: za, max: ma }, Repr::DimOne { zero: zb, max: mb }) => {
                use MaxPart::*;
                let max_ok = match (ma, mb) {
                    (Finite(a), Finite(b)) => a.is_subset(b),
                    (Finite(a), CofiniteExcluding(e)) => a.intersection(e).next().is_none(),
                    (CofiniteExcluding(_), Finite(_)) => false,
                    (CofiniteExcluding(e), CofiniteExcluding(f)) => f.is_subset(e),
                };
                (!za || *zb) && max_ok
            }
            _ => unreachable!("canonical representations per ring"),
        })
    }

    pub fn is_empty(&self) -> bool {
        match &self.repr {
            Repr::Finite(a) => a.is_empty(),
            Repr::Bits(a) => a.is_empty(),
            Repr::DimOne { zero, max } => {
                !zero
                    && match max {
                        MaxPart::Finite(s) => s.is_empty(),
                        MaxPart::CofiniteExcluding(_) => false,
                    }
            }
        }
    }

    /// Downward closure test; a witnessing pair (member, missing smaller
    /// prime) is reported when the set is not a lower set.
    pub fn lower_set_witness(&self) -> Result<Option<(PrimeIdeal, PrimeIdeal)>> {
        Ok(match &self.repr {
            // finite spectra of integer quotients are antichains
            Repr::Finite(_) => None,
            Repr::DimOne { zero, max } => {
                if *zero {
                    return Ok(None);
                }
                match max {
                    MaxPart::Finite(s) => {
                        s.iter().next().map(|m| (m.clone(), PrimeIdeal::Zero))
                    }
                    MaxPart::CofiniteExcluding(e) => {
                        let m = self.ring.fresh_maximal(e)?;
                        Some((m, PrimeIdeal::Zero))
                    }
                }
            }
            Repr::Bits(bits) => {
                let poset = self.ring.poset().expect("bitset implies synthetic");
                let mut found = None;
                'outer: for i in bits.iter() {
                    for j in 0..poset.len() {
                        if poset.leq_idx(j, i) && !bits.contains(j) {
                            found = Some((
                                PrimeIdeal::SyntheticNode(poset.label(i).to_string()),
                                PrimeIdeal::SyntheticNode(poset.label(j).to_string()),
                            ));
                            break 'outer;
                        }
                    }
                }
                found
            }
        })
    }

    pub fn is_lower_set(&self) -> Result<bool> {
        Ok(self.lower_set_witness()?.is_none())
    }

    /// A prime in self and not in other, when one can be named. The sets must
    /// differ for the answer to be meaningful; cofinite-versus-cofinite
    /// differences always surface through the finitely many exclusions.
    pub fn difference_witness(&self, other: &PrimeSet) -> Result<Option<PrimeIdeal>> {
        self.check_same_ring(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => Ok(a.difference(b).next().cloned()),
            (Repr::Bits(a), Repr::Bits(b)) => {
                let poset = self.ring.poset().expect("bitset implies synthetic");
                Ok(a.iter()
                    .find(|&i| !b.contains(i))
                    .map(|i| PrimeIdeal::SyntheticNode(poset.label(i).to_string())))
            }
            (Repr::DimOne { zero: za, max: ma }, Repr::DimOne { zero: zb, max: mb }) => {
                if *za && !zb {
                    return Ok(Some(PrimeIdeal::Zero));
                }
                use MaxPart::*;
                Ok(match (ma, mb) {
                    (Finite(a), Finite(b)) => a.difference(b).next().cloned(),
                    (Finite(a), CofiniteExcluding(e)) => a.intersection(e).next().cloned(),
                    (CofiniteExcluding(e), Finite(b)) => {
                        let mut excluded = e.clone();
                        excluded.extend(b.iter().cloned());
                        Some(self.ring.fresh_maximal(&excluded)?)
                    }
                    (CofiniteExcluding(e), CofiniteExcluding(f)) => {
                        f.difference(e).next().cloned()
                    }
                })
            }
            _ => unreachable!("canonical representations per ring"),
        }
    }

    pub fn dim_one_parts(&self) -> Option<(bool, &MaxPart)> {
        match &self.repr {
            Repr::DimOne { zero, max } => Some((*zero, max)),
            _ => None,
        }
    }

    pub fn bits(&self) -> Option<&Bitset> {
        match &self.repr {
            Repr::Bits(b) => Some(b),
            _ => None,
        }
    }

    pub fn finite_set(&self) -> Option<&BTreeSet<PrimeIdeal>> {
        match &self.repr {
            Repr::Finite(s) => Some(s),
            _ => None,
        }
    }

    /// Explicit members when the set is finite; None for cofinite sets.
    pub fn enumerate_finite(&self) -> Option<Vec<PrimeIdeal>> {
        match &self.repr {
            Repr::Finite(s) => Some(s.iter().cloned().collect()),
            Repr::Bits(bits) => {
                let poset = self.ring.poset().expect("bitset implies synthetic");
                Some(
                    bits.iter()
                        .map(|i| PrimeIdeal::SyntheticNode(poset.label(i).to_string()))
                        .collect(),
                )
            }
            Repr::DimOne { zero, max } => match max {
                MaxPart::Finite(s) => {
                    let mut out = Vec::new();
                    if *zero {
                        out.push(PrimeIdeal::Zero);
                    }
                    out.extend(s.iter().cloned());
                    Some(out)
                }
                MaxPart::CofiniteExcluding(_) => None,
            },
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.enumerate_finite() {
            Some(elems) => {
                let inner: Vec<String> = elems.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", inner.join(", "))
            }
            None => {
                let (zero, max) = self.dim_one_parts().expect("infinite sets are dim-one");
                let MaxPart::CofiniteExcluding(e) = max else { unreachable!() };
                let excl: Vec<String> = e.iter().map(|p| p.to_string()).collect();
                if zero {
                    write!(f, "{{(0)}} + all-maximals-except {{{}}}", excl.join(", "))
                } else {
                    write!(f, "all-maximals-except {{{}}}", excl.join(", "))
                }
            }
        }
    }
}
