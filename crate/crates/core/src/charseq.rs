//! Characteristic sequences: nested lower subsets of a spectrum whose level i
//! contains the associated primes of the i-th cosyzygy of the ring.
//!
//! The validator reports every violated clause with a witnessing index and,
//! when one can be named, a witnessing prime. Clause labels follow the usual
//! numbering: (i) downward closure, (ii) nesting, (iii) Bass containment.

use std::fmt;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::prime_set::{MaxPart, PrimeSet};
use crate::ring::{PrimeIdeal, Ring, RingDescriptor};

/// Associated primes of the i-th cosyzygy of the ring along its minimal
/// injective coresolution. Hardwired for the built-in rings, declared data
/// for synthetic spectra.
pub fn bass_assassinators(ring: &Ring, i: usize) -> Result<PrimeSet> {
    match &**ring {
        RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => Ok(match i {
            0 => PrimeSet::from_primes(ring, [PrimeIdeal::Zero])?,
            1 => PrimeSet::dim_one(ring, false, MaxPart::CofiniteExcluding(Default::default()))?,
            _ => PrimeSet::empty(ring),
        }),
        // self-injective quotients: the injective envelope of the ring is the
        // ring itself, so only degree zero contributes
        RingDescriptor::IntegerQuotient { .. } => Ok(match i {
            0 => PrimeSet::full(ring),
            _ => PrimeSet::empty(ring),
        }),
        RingDescriptor::Synthetic(poset) => {
            let bits = poset.bass_nodes(i)?;
            PrimeSet::from_bitset(ring, bits)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Clause {
    Lower,
    Nesting,
    Bass,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::Lower => "(i)",
            Clause::Nesting => "(ii)",
            Clause::Bass => "(iii)",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub clause: Clause,
    pub index: usize,
    pub witness: Option<PrimeIdeal>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {} at index {}: {}", self.clause.label(), self.index, self.detail)
    }
}

/// Validation outcome: empty violation list means the input is a
/// characteristic sequence. Notes flag admissible oddities such as empty
/// levels without turning them into failures.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")?;
        } else {
            let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", lines.join("; "))?;
        }
        for n in &self.notes {
            write!(f, " [note: {n}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicSequence {
    ring: Ring,
    levels: Vec<PrimeSet>,
}

impl CharacteristicSequence {
    /// Builds a sequence after checking that every level lives over `ring`.
    /// Validity of the clauses is a separate question answered by
    /// [`CharacteristicSequence::validate`].
    pub fn new(ring: &Ring, levels: Vec<PrimeSet>) -> Result<CharacteristicSequence> {
        for (i, level) in levels.iter().enumerate() {
            if level.ring() != ring {
                return Err(Error::Input(format!(
                    "level {i} belongs to {} but the sequence is over {}",
                    level.ring(),
                    ring
                )));
            }
        }
        Ok(CharacteristicSequence { ring: ring.clone(), levels })
    }

    /// The empty sequence of length zero; the conditions hold vacuously.
    pub fn empty(ring: &Ring) -> CharacteristicSequence {
        CharacteristicSequence { ring: ring.clone(), levels: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn levels(&self) -> &[PrimeSet] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn validate(&self) -> Result<Verdict> {
        validate_levels(&self.ring, &self.levels, |i| bass_assassinators(&self.ring, i))
    }
}

/// Shared clause checker for global and localized sequences; the Bass data is
/// supplied by the caller so localized sequences can intersect it with a
/// down-set.
pub(crate) fn validate_levels(
    _ring: &Ring,
    levels: &[PrimeSet],
    bass: impl Fn(usize) -> Result<PrimeSet>,
) -> Result<Verdict> {
    let mut verdict = Verdict::default();
    for (i, level) in levels.iter().enumerate() {
        if let Some((member, missing)) = level.lower_set_witness()? {
            verdict.violations.push(Violation {
                clause: Clause::Lower,
                index: i,
                witness: Some(missing.clone()),
                detail: format!("{member} is in the level but {missing} below it is not"),
            });
        }
        if i + 1 < levels.len() && !level.is_subset(&levels[i + 1])? {
            let witness = level.difference_witness(&levels[i + 1])?;
            let name = witness
                .as_ref()
                .map(|p| p.to_string())
                .unwrap_or_else(|| "a prime".into());
            verdict.violations.push(Violation {
                clause: Clause::Nesting,
                index: i,
                witness,
                detail: format!("{name} lies in level {i} but not in level {}", i + 1),
            });
        }
        let required = bass(i)?;
        if !required.is_subset(level)? {
            let witness = required.difference_witness(level)?;
            let name = witness
                .as_ref()
                .map(|p| p.to_string())
                .unwrap_or_else(|| "a required prime".into());
            verdict.violations.push(Violation {
                clause: Clause::Bass,
                index: i,
                witness,
                detail: format!("{name} is a required associated prime missing from level {i}"),
            });
        } else if level.is_empty() {
            verdict.notes.push(format!(
                "level {i} is empty; admissible because no associated primes are required there"
            ));
        }
    }
    Ok(verdict)
}

/// Streaming enumerator of every characteristic sequence of a given length
/// over a finite synthetic spectrum, in ascending lexicographic order on the
/// level bitmasks (node index i contributes 2^i).
pub struct SequenceIter {
    ring: Ring,
    n: usize,
    width: usize,
    lower_sets: Vec<u64>,
    bass_masks: Vec<u64>,
    cursors: Vec<usize>,
    chosen: Vec<u64>,
    emitted_empty: bool,
    done: bool,
}

pub fn enumerate_sequences(ring: &Ring, n: usize) -> Result<SequenceIter> {
    if n == 0 {
        // the empty sequence is the only one of length zero over any ring
        return Ok(SequenceIter {
            ring: ring.clone(),
            n: 0,
            width: 0,
            lower_sets: Vec::new(),
            bass_masks: Vec::new(),
            cursors: Vec::new(),
            chosen: Vec::new(),
            emitted_empty: false,
            done: false,
        });
    }
    let poset = ring.poset().ok_or_else(|| {
        Error::Unsupported(format!(
            "enumeration over {ring} is infinite; only synthetic spectra are enumerable"
        ))
    })?;
    if poset.len() > 20 {
        return Err(Error::Unsupported(format!(
            "enumeration supports at most 20 primes, got {}",
            poset.len()
        )));
    }
    if n > 8 {
        return Err(Error::Unsupported(format!("enumeration supports length <= 8, got {n}")));
    }
    let width = poset.len();
    let down_masks: Vec<u64> = (0..width).map(|i| poset.down_set(i).as_mask()).collect();
    let mut lower_sets = Vec::new();
    for mask in 0u64..(1 << width) {
        let lower = (0..width).all(|i| mask >> i & 1 == 0 || down_masks[i] & !mask == 0);
        if lower {
            lower_sets.push(mask);
        }
    }
    let bass_masks: Result<Vec<u64>> = (0..n).map(|i| Ok(poset.bass_nodes(i)?.as_mask())).collect();
    Ok(SequenceIter {
        ring: ring.clone(),
        n,
        width,
        lower_sets,
        bass_masks: bass_masks?,
        cursors: vec![0; n],
        chosen: Vec::new(),
        emitted_empty: false,
        done: false,
    })
}

/// Number of characteristic sequences of length n, streamed rather than
/// materialized.
pub fn count_sequences(ring: &Ring, n: usize) -> Result<u64> {
    Ok(enumerate_sequences(ring, n)?.count() as u64)
}

impl Iterator for SequenceIter {
    type Item = CharacteristicSequence;

    fn next(&mut self) -> Option<CharacteristicSequence> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(CharacteristicSequence::empty(&self.ring));
        }
        let mut depth = self.chosen.len();
        loop {
            if depth == self.n {
                let item = self.build();
                self.chosen.pop();
                return Some(item);
            }
            let required = self.bass_masks[depth] | self.chosen.last().copied().unwrap_or(0);
            let mut idx = self.cursors[depth];
            let mut found = None;
            while idx < self.lower_sets.len() {
                let mask = self.lower_sets[idx];
                if mask & required == required {
                    found = Some((idx, mask));
                    break;
                }
                idx += 1;
            }
            match found {
                Some((idx, mask)) => {
                    self.cursors[depth] = idx + 1;
                    self.chosen.push(mask);
                    depth += 1;
                    if depth < self.n {
                        self.cursors[depth] = 0;
                    }
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    depth -= 1;
                    self.chosen.pop();
                }
            }
        }
    }
}

impl SequenceIter {
    fn build(&self) -> CharacteristicSequence {
        let levels = self
            .chosen
            .iter()
            .map(|&mask| {
                PrimeSet::from_bitset(&self.ring, Bitset::from_mask(self.width, mask))
                    .expect("masks come from the same spectrum")
            })
            .collect();
        CharacteristicSequence { ring: self.ring.clone(), levels }
    }
}
