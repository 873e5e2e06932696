//! Localization of characteristic sequences at maximal ideals, compatible
//! families, and the gluing construction inverse to localization.
//!
//! A local sequence stores its levels through the preimage identification of
//! the localized spectrum with the down-set of the maximal ideal, so
//! localization is intersection and gluing is union. Families over rings with
//! infinitely many maximal ideals are encoded as a default membership pattern
//! plus finitely many exceptional maximals; rings with finite maximal spectra
//! list every maximal ideal explicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::charseq::{bass_assassinators, validate_levels, CharacteristicSequence, Verdict};
use crate::error::{Error, Result};
use crate::prime_set::{MaxPart, PrimeSet};
use crate::ring::{primes_under, PrimeIdeal, Ring};

/// The spectrum of the localization at m, as a set of global primes.
pub fn down_set_of(ring: &Ring, m: &PrimeIdeal) -> Result<PrimeSet> {
    PrimeSet::from_primes(ring, primes_under(ring, m)?)
}

/// A characteristic sequence over the localization at `maximal`, with levels
/// stored as sets of global primes below it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalSequence {
    ring: Ring,
    maximal: PrimeIdeal,
    levels: Vec<PrimeSet>,
}

impl LocalSequence {
    pub fn new(ring: &Ring, maximal: PrimeIdeal, levels: Vec<PrimeSet>) -> Result<LocalSequence> {
        if !ring.is_maximal(&maximal)? {
            return Err(Error::Input(format!("{maximal} is not maximal in {ring}")));
        }
        let down = down_set_of(ring, &maximal)?;
        for (i, level) in levels.iter().enumerate() {
            if level.ring() != ring {
                return Err(Error::Input(format!(
                    "local level {i} belongs to {} but the sequence is over {}",
                    level.ring(),
                    ring
                )));
            }
            if !level.is_subset(&down)? {
                return Err(Error::Input(format!(
                    "local level {i} contains primes outside the down-set of {maximal}"
                )));
            }
        }
        Ok(LocalSequence { ring: ring.clone(), maximal, levels })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maximal(&self) -> &PrimeIdeal {
        &self.maximal
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

    /// Clause checks against the localized Bass data: the global data
    /// intersected with the down-set, since the minimal injective
    /// coresolution localizes to the minimal one.
    pub fn validate(&self) -> Result<Verdict> {
        let down = down_set_of(&self.ring, &self.maximal)?;
        validate_levels(&self.ring, &self.levels, |i| {
            bass_assassinators(&self.ring, i)?.intersection(&down)
        })
    }
}

/// Localizes a valid sequence at a maximal ideal by intersecting every level
/// with the down-set of m. The result is always a valid local sequence; that
/// is asserted rather than trusted.
pub fn localize_sequence(seq: &CharacteristicSequence, m: &PrimeIdeal) -> Result<LocalSequence> {
    let verdict = seq.validate()?;
    if !verdict.is_ok() {
        return Err(Error::Precondition(format!(
            "cannot localize an invalid sequence: {verdict}"
        )));
    }
    if !seq.ring().is_maximal(m)? {
        return Err(Error::Input(format!("{m} is not maximal in {}", seq.ring())));
    }
    let down = down_set_of(seq.ring(), m)?;
    let levels: Result<Vec<PrimeSet>> = seq.levels().iter().map(|l| l.intersection(&down)).collect();
    let local = LocalSequence::new(seq.ring(), m.clone(), levels?)?;
    let local_verdict = local.validate()?;
    assert!(
        local_verdict.is_ok(),
        "localization of a valid sequence must be valid, got: {local_verdict}"
    );
    Ok(local)
}

/// Membership pattern of a generic local level over a dimension-one ring:
/// whether it contains the zero ideal and whether it contains the maximal
/// ideal itself.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LocalPattern {
    pub zero: bool,
    pub max: bool,
}

impl LocalPattern {
    fn levels_at(patterns: &[LocalPattern], ring: &Ring, m: &PrimeIdeal) -> Result<Vec<PrimeSet>> {
        patterns
            .iter()
            .map(|p| {
                let mut primes = Vec::new();
                if p.zero {
                    primes.push(PrimeIdeal::Zero);
                }
                if p.max {
                    primes.push(m.clone());
                }
                PrimeSet::from_primes(ring, primes)
            })
            .collect()
    }
}

/// An assignment of a local sequence to every maximal ideal, finitely
/// encoded. Over dimension-one domains the default pattern covers the
/// cofinite remainder; over finite maximal spectra the exceptions map must be
/// total and no default is accepted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibleFamily {
    ring: Ring,
    n: usize,
    default: Option<Vec<LocalPattern>>,
    exceptions: BTreeMap<PrimeIdeal, Vec<PrimeSet>>,
}

impl CompatibleFamily {
    pub fn new(
        ring: &Ring,
        n: usize,
        default: Option<Vec<LocalPattern>>,
        exceptions: BTreeMap<PrimeIdeal, Vec<PrimeSet>>,
    ) -> Result<CompatibleFamily> {
        if let Some(patterns) = &default {
            if patterns.len() != n {
                return Err(Error::Input(format!(
                    "default pattern has {} levels but the family has length {n}",
                    patterns.len()
                )));
            }
        }
        for (m, levels) in &exceptions {
            if !ring.is_maximal(m)? {
                return Err(Error::Input(format!("exception key {m} is not maximal in {ring}")));
            }
            if levels.len() != n {
                return Err(Error::Input(format!(
                    "local sequence at {m} has {} levels but the family has length {n}",
                    levels.len()
                )));
            }
            let down = down_set_of(ring, m)?;
            for (i, level) in levels.iter().enumerate() {
                if level.ring() != ring {
                    return Err(Error::Input(format!(
                        "level {i} at {m} belongs to {}, expected {ring}",
                        level.ring()
                    )));
                }
                if !level.is_subset(&down)? {
                    return Err(Error::Input(format!(
                        "level {i} at {m} leaves the down-set of {m}"
                    )));
                }
            }
        }
        let mut family = if ring.is_dim_one_domain() {
            let Some(patterns) = default else {
                return Err(Error::Input(format!(
                    "families over {ring} need a default pattern to cover the cofinite remainder"
                )));
            };
            CompatibleFamily {
                ring: ring.clone(),
                n,
                default: Some(patterns),
                exceptions,
            }
        } else {
            if default.is_some() {
                return Err(Error::Input(format!(
                    "default patterns only describe dimension-one rings, not {ring}"
                )));
            }
            let all: BTreeSet<PrimeIdeal> = ring
                .finite_maximals()
                .expect("non-dim-one rings have finite maximal spectra")
                .into_iter()
                .collect();
            let given: BTreeSet<PrimeIdeal> = exceptions.keys().cloned().collect();
            if given != all {
                return Err(Error::Input(format!(
                    "the family must assign a local sequence to every maximal ideal of {ring}"
                )));
            }
            CompatibleFamily { ring: ring.clone(), n, default: None, exceptions }
        };
        family.canonicalize()?;
        Ok(family)
    }

    /// Drops exceptions that agree with the default pattern, so extensional
    /// equality of families is structural equality.
    fn canonicalize(&mut self) -> Result<()> {
        if let Some(patterns) = &self.default {
            let mut keep = BTreeMap::new();
            for (m, levels) in std::mem::take(&mut self.exceptions) {
                if LocalPattern::levels_at(patterns, &self.ring, &m)? != levels {
                    keep.insert(m, levels);
                }
            }
            self.exceptions = keep;
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn default_patterns(&self) -> Option<&[LocalPattern]> {
        self.default.as_deref()
    }

    pub fn exceptions(&self) -> &BTreeMap<PrimeIdeal, Vec<PrimeSet>> {
        &self.exceptions
    }

    /// The local levels assigned to a maximal ideal.
    pub fn levels_at(&self, m: &PrimeIdeal) -> Result<Vec<PrimeSet>> {
        if !self.ring.is_maximal(m)? {
            return Err(Error::Input(format!("{m} is not maximal in {}", self.ring)));
        }
        if let Some(levels) = self.exceptions.get(m) {
            return Ok(levels.clone());
        }
        let patterns = self
            .default
            .as_ref()
            .expect("total exception maps cover every maximal ideal");
        LocalPattern::levels_at(patterns, &self.ring, m)
    }

    pub fn local_sequence_at(&self, m: &PrimeIdeal) -> Result<LocalSequence> {
        LocalSequence::new(&self.ring, m.clone(), self.levels_at(m)?)
    }

    /// One representative maximal ideal per membership class: every
    /// exceptional maximal, plus a fresh one for the default class when a
    /// default pattern is present.
    fn class_representatives(&self) -> Result<Vec<(PrimeIdeal, bool)>> {
        let mut reps: Vec<(PrimeIdeal, bool)> = match &self.default {
            Some(_) => {
                let excluded: BTreeSet<PrimeIdeal> = self.exceptions.keys().cloned().collect();
                vec![(self.ring.fresh_maximal(&excluded)?, true)]
            }
            None => Vec::new(),
        };
        reps.extend(self.exceptions.keys().cloned().map(|m| (m, false)));
        Ok(reps)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairViolation {
    pub index: usize,
    pub first: PrimeIdeal,
    pub second: PrimeIdeal,
    pub witness: PrimeIdeal,
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "levels {} at {} and {} disagree on the shared prime {}",
            self.index, self.first, self.second, self.witness
        )
    }
}

/// Verdict of a family check: per-class validity reports plus pairwise
/// agreement failures. The `default_class` flag marks the representative of
/// the cofinitely many unexceptional maximals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FamilyVerdict {
    pub local_failures: Vec<(PrimeIdeal, bool, Verdict)>,
    pub pair_violations: Vec<PairViolation>,
}

impl FamilyVerdict {
    pub fn is_ok(&self) -> bool {
        self.local_failures.is_empty() && self.pair_violations.is_empty()
    }
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let mut lines = Vec::new();
        for (m, is_default, verdict) in &self.local_failures {
            let class = if *is_default { " (default class)" } else { "" };
            lines.push(format!("invalid local sequence at {m}{class}: {verdict}"));
        }
        for v in &self.pair_violations {
            lines.push(v.to_string());
        }
        write!(f, "{}", lines.join("; "))
    }
}

/// Checks that every assigned local sequence is valid and that any two agree
/// on the primes below both maximal ideals. Classes stand in for the
/// cofinitely many maximals sharing the default pattern; two default-class
/// maximals can only share the zero ideal and carry identical patterns, so
/// one representative suffices.
pub fn check_compatibility(family: &CompatibleFamily) -> Result<FamilyVerdict> {
    let mut verdict = FamilyVerdict::default();
    let reps = family.class_representatives()?;
    let mut rep_data = Vec::new();
    for (m, is_default) in &reps {
        let local = family.local_sequence_at(m)?;
        let v = local.validate()?;
        if !v.is_ok() {
            verdict.local_failures.push((m.clone(), *is_default, v));
        }
        let down = down_set_of(&family.ring, m)?;
        rep_data.push((m.clone(), down, local));
    }
    for a in 0..rep_data.len() {
        for b in a + 1..rep_data.len() {
            let (m1, down1, loc1) = &rep_data[a];
            let (m2, down2, loc2) = &rep_data[b];
            let shared = down1.intersection(down2)?;
            for i in 0..family.n {
                let left = loc1.levels()[i].intersection(&shared)?;
                let right = loc2.levels()[i].intersection(&shared)?;
                if left != right {
                    let witness = left
                        .difference_witness(&right)?
                        .or(right.difference_witness(&left)?)
                        .expect("unequal finite sets have a differing element");
                    verdict.pair_violations.push(PairViolation {
                        index: i,
                        first: m1.clone(),
                        second: m2.clone(),
                        witness,
                    });
                }
            }
        }
    }
    Ok(verdict)
}

/// Glues a compatible family into the sequence whose level i is the union of
/// the local levels over every maximal ideal. The output is validated and a
/// failure panics: compatibility makes validity a theorem, so a violation
/// here is an implementation bug.
pub fn glue_family(family: &CompatibleFamily) -> Result<CharacteristicSequence> {
    let verdict = check_compatibility(family)?;
    if !verdict.is_ok() {
        return Err(Error::Precondition(format!("family is not compatible: {verdict}")));
    }
    let ring = &family.ring;
    let levels: Result<Vec<PrimeSet>> = match &family.default {
        Some(patterns) => (0..family.n)
            .map(|i| {
                // the zero ideal enters the union through any class; the
                // maximal ideal m enters exactly through its own local level
                let mut zero = patterns[i].zero;
                let mut deviants = BTreeSet::new();
                for (m, levels) in &family.exceptions {
                    zero = zero || levels[i].contains(&PrimeIdeal::Zero)?;
                    if levels[i].contains(m)? != patterns[i].max {
                        deviants.insert(m.clone());
                    }
                }
                let max = if patterns[i].max {
                    MaxPart::CofiniteExcluding(deviants)
                } else {
                    MaxPart::Finite(deviants)
                };
                PrimeSet::dim_one(ring, zero, max)
            })
            .collect(),
        None => (0..family.n)
            .map(|i| {
                let mut acc = PrimeSet::empty(ring);
                for levels in family.exceptions.values() {
                    acc = acc.union(&levels[i])?;
                }
                Ok(acc)
            })
            .collect(),
    };
    let glued = CharacteristicSequence::new(ring, levels?)?;
    let glued_verdict = glued.validate()?;
    assert!(
        glued_verdict.is_ok(),
        "gluing a compatible family must yield a valid sequence, got: {glued_verdict}"
    );
    Ok(glued)
}

/// The family of localizations of a valid sequence at every maximal ideal,
/// finitely encoded. Its compatibility check always passes.
pub fn localization_family(seq: &CharacteristicSequence) -> Result<CompatibleFamily> {
    let verdict = seq.validate()?;
    if !verdict.is_ok() {
        return Err(Error::Precondition(format!(
            "cannot take the localization family of an invalid sequence: {verdict}"
        )));
    }
    let ring = seq.ring();
    if ring.is_dim_one_domain() {
        let mut patterns = Vec::new();
        let mut candidates: BTreeSet<PrimeIdeal> = BTreeSet::new();
        for level in seq.levels() {
            let (zero, max) = level
                .dim_one_parts()
                .expect("levels over a dimension-one ring use the dim-one representation");
            let (generic_max, listed) = match max {
                MaxPart::Finite(s) => (false, s),
                MaxPart::CofiniteExcluding(e) => (true, e),
            };
            patterns.push(LocalPattern { zero, max: generic_max });
            candidates.extend(listed.iter().cloned());
        }
        let mut exceptions = BTreeMap::new();
        for m in candidates {
            let local = localize_sequence(seq, &m)?;
            exceptions.insert(m, local.levels().to_vec());
        }
        CompatibleFamily::new(ring, seq.len(), Some(patterns), exceptions)
    } else {
        let mut exceptions = BTreeMap::new();
        for m in ring.finite_maximals().expect("finite maximal spectrum") {
            let local = localize_sequence(seq, &m)?;
            exceptions.insert(m, local.levels().to_vec());
        }
        CompatibleFamily::new(ring, seq.len(), None, exceptions)
    }
}

/// Extensional equality of sequences; representations are canonical, so this
/// is structural equality.
pub fn sequences_equal(a: &CharacteristicSequence, b: &CharacteristicSequence) -> bool {
    a == b
}

/// Extensional equality of families over every maximal ideal, decided on the
/// default and exception classes. Families over different rings or of
/// different lengths are simply unequal.
pub fn families_equivalent(a: &CompatibleFamily, b: &CompatibleFamily) -> bool {
    a == b
}

/// All valid local sequences of length n at a maximal ideal of a synthetic
/// spectrum, in the enumeration order of the global sequence enumerator.
pub fn enumerate_local_sequences(
    ring: &Ring,
    m: &PrimeIdeal,
    n: usize,
) -> Result<Vec<LocalSequence>> {
    let poset = ring.poset().ok_or_else(|| {
        Error::Unsupported(format!("local enumeration needs a synthetic spectrum, not {ring}"))
    })?;
    if poset.len() > 20 || n > 8 {
        return Err(Error::Unsupported("local enumeration supports <= 20 primes and n <= 8".into()));
    }
    if !ring.is_maximal(m)? {
        return Err(Error::Input(format!("{m} is not maximal in {ring}")));
    }
    let down_mask = poset.down_set(ring.node_of(m)?).as_mask();
    let down_masks: Vec<u64> = (0..poset.len()).map(|i| poset.down_set(i).as_mask()).collect();
    let mut lower: Vec<u64> = Vec::new();
    for mask in 0u64..(1 << poset.len()) {
        if mask & !down_mask != 0 {
            continue;
        }
        if (0..poset.len()).all(|i| mask >> i & 1 == 0 || down_masks[i] & !mask == 0) {
            lower.push(mask);
        }
    }
    let bass_masks: Result<Vec<u64>> = (0..n)
        .map(|i| Ok(poset.bass_nodes(i)?.as_mask() & down_mask))
        .collect();
    let bass_masks = bass_masks?;
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let levels: Result<Vec<PrimeSet>> = prefix
                .iter()
                .map(|&mask| {
                    PrimeSet::from_bitset(
                        ring,
                        crate::bitset::Bitset::from_mask(poset.len(), mask),
                    )
                })
                .collect();
            out.push(LocalSequence::new(ring, m.clone(), levels?)?);
            continue;
        }
        let depth = prefix.len();
        let required = bass_masks[depth] | prefix.last().copied().unwrap_or(0);
        // push in reverse so the output comes out in ascending mask order
        for &mask in lower.iter().rev() {
            if mask & required == required {
                let mut next = prefix.clone();
                next.push(mask);
                stack.push(next);
            }
        }
    }
    Ok(out)
}
