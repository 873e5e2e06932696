//! Membership of concrete modules in the classes cut out by a characteristic
//! sequence over Z: associated primes of cosyzygies on the cotilting side,
//! Tor vanishing against excluded residue fields on the tilting side.

use crate::charseq::CharacteristicSequence;
use crate::error::{Error, Result};
use crate::homology::tor_z;
use crate::prime_set::{MaxPart, PrimeSet};
use crate::ring::{PrimeIdeal, Ring, RingDescriptor};
use crate::zmodule::{FgZModule, MatlisModule};

/// A module argument for the membership tests over Z.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ZModuleArg {
    Fg(FgZModule),
    Matlis(MatlisModule),
}

impl std::fmt::Display for ZModuleArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZModuleArg::Fg(m) => write!(f, "{m}"),
            ZModuleArg::Matlis(m) => write!(f, "{m}"),
        }
    }
}

fn all_maximals(ring: &Ring) -> PrimeSet {
    PrimeSet::dim_one(ring, false, MaxPart::CofiniteExcluding(Default::default()))
        .expect("Z is a dimension-one domain")
}

fn support_set(ring: &Ring, primes: &[u64]) -> PrimeSet {
    PrimeSet::from_primes(ring, primes.iter().map(|&p| PrimeIdeal::IntegerPrime(p)))
        .expect("support primes are primes of Z")
}

/// Associated primes of the i-th cosyzygy along a minimal injective
/// coresolution over Z. Degree 0 is Ass of the module itself; everything
/// beyond degree 1 vanishes because cosyzygies of degree 1 are divisible.
pub fn ass_cosyzygy(m: &ZModuleArg, i: u32) -> PrimeSet {
    let ring = Ring::integers();
    match m {
        ZModuleArg::Fg(m) => match i {
            0 => {
                let mut s = support_set(&ring, &m.support());
                if m.rank() > 0 {
                    let zero = PrimeSet::from_primes(&ring, [PrimeIdeal::Zero]).unwrap();
                    s = s.union(&zero).unwrap();
                }
                s
            }
            1 => {
                // the cokernel of M -> E(M) has Q/Z factors from the free part
                // and p-power Pruefer factors from the p-torsion
                let s = support_set(&ring, &m.support());
                if m.rank() > 0 {
                    s.union(&all_maximals(&ring)).unwrap()
                } else {
                    s
                }
            }
            _ => PrimeSet::empty(&ring),
        },
        ZModuleArg::Matlis(m) => match i {
            0 => {
                let s = support_set(&ring, &m.finite_part().support());
                if m.divisible_rank() > 0 {
                    s.union(&all_maximals(&ring)).unwrap()
                } else {
                    s
                }
            }
            1 => support_set(&ring, &m.finite_part().support()),
            _ => PrimeSet::empty(&ring),
        },
    }
}

fn check_over_integers(seq: &CharacteristicSequence) -> Result<()> {
    if !matches!(&**seq.ring(), RingDescriptor::Integers) {
        return Err(Error::Input(format!(
            "membership tests run over Z, not {}",
            seq.ring()
        )));
    }
    let verdict = seq.validate()?;
    if !verdict.is_ok() {
        return Err(Error::Precondition(format!(
            "sequence is not a characteristic sequence: {verdict}"
        )));
    }
    Ok(())
}

/// Cotilting-side membership: Ass of every cosyzygy up to the length of the
/// sequence stays inside the corresponding level.
pub fn cotilting_membership(m: &ZModuleArg, seq: &CharacteristicSequence) -> Result<bool> {
    check_over_integers(seq)?;
    for (i, level) in seq.levels().iter().enumerate() {
        if !ass_cosyzygy(m, i as u32).is_subset(level)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tilting-side membership: Tor_i(N, Z/p) vanishes for every maximal ideal
/// (p) outside level i. The zero ideal is never a test prime: it lies in
/// every level of a valid sequence over a domain. Cofinite exclusion classes
/// are decided structurally, finite ones by computing the Tor groups.
pub fn tilting_membership(n: &FgZModule, seq: &CharacteristicSequence) -> Result<bool> {
    check_over_integers(seq)?;
    for (i, level) in seq.levels().iter().enumerate() {
        let i = i as u32;
        let (_, max) = level
            .dim_one_parts()
            .expect("levels over Z carry a dim-one representation");
        match max {
            MaxPart::CofiniteExcluding(excluded) => {
                for m in excluded {
                    let PrimeIdeal::IntegerPrime(p) = m else {
                        unreachable!("maximal parts list integer primes over Z")
                    };
                    if !tor_vanishes(i, n, *p)? {
                        return Ok(false);
                    }
                }
            }
            MaxPart::Finite(present) => {
                // every maximal outside `present` is excluded
                match i {
                    0 => {
                        if n.rank() > 0 {
                            return Ok(false);
                        }
                        if !support_inside(n, present) {
                            return Ok(false);
                        }
                    }
                    1 => {
                        if !support_inside(n, present) {
                            return Ok(false);
                        }
                    }
                    _ => {} // Tor vanishes beyond the global dimension
                }
            }
        }
    }
    Ok(true)
}

fn support_inside(n: &FgZModule, present: &std::collections::BTreeSet<PrimeIdeal>) -> bool {
    n.support()
        .into_iter()
        .all(|p| present.contains(&PrimeIdeal::IntegerPrime(p)))
}

fn tor_vanishes(i: u32, n: &FgZModule, p: u64) -> Result<bool> {
    let residue = FgZModule::cyclic(p);
    Ok(tor_z(i, n, &residue)?.is_zero())
}
