//! JSON wire formats for rings, prime sets, sequences, families and modules.
//!
//! Emitted documents are re-readable by the corresponding loader, and all
//! maps are ordered so output is byte-stable for identical inputs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::family::{CompatibleFamily, LocalPattern, LocalSequence};
use crate::charseq::CharacteristicSequence;
use crate::membership::ZModuleArg;
use crate::prime_set::{MaxPart, PrimeSet};
use crate::ring::{BassSpec, PrimeIdeal, Ring, RingDescriptor, SpectrumPoset};
use crate::zmodule::{FgZModule, MatlisModule};

fn input_err(e: serde_json::Error) -> Error {
    Error::Input(format!("malformed JSON: {e}"))
}

// ---- rings ------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RingJson {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<BTreeMap<String, u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bass: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gorenstein_heights: Option<bool>,
}

pub fn ring_to_json(ring: &Ring) -> RingJson {
    let empty = RingJson {
        ring: String::new(),
        q: None,
        n: None,
        primes: None,
        order: None,
        maximal: None,
        height: None,
        bass: None,
        gorenstein_heights: None,
    };
    match &**ring {
        RingDescriptor::Integers => RingJson { ring: "Z".into(), ..empty },
        RingDescriptor::PolyOverPrimeField { q } => RingJson {
            ring: "PolyGF".into(),
            q: Some(*q),
            ..empty
        },
        RingDescriptor::IntegerQuotient { n, .. } => RingJson {
            ring: "Zmod".into(),
            n: Some(*n),
            ..empty
        },
        RingDescriptor::Synthetic(poset) => {
            let labels = poset.labels().to_vec();
            let mut order = Vec::new();
            for a in 0..poset.len() {
                for b in 0..poset.len() {
                    if a != b && poset.leq_idx(a, b) {
                        order.push((labels[a].clone(), labels[b].clone()));
                    }
                }
            }
            let maximal = poset
                .maximal_nodes()
                .iter()
                .map(|&i| labels[i].clone())
                .collect();
            let height = (0..poset.len())
                .map(|i| (labels[i].clone(), poset.height_idx(i)))
                .collect();
            let (bass, gorenstein) = match poset.bass_spec() {
                Some(BassSpec::GorensteinHeights) => (None, Some(true)),
                Some(BassSpec::Explicit(map)) => (
                    Some(
                        map.iter()
                            .map(|(i, nodes)| {
                                (
                                    i.to_string(),
                                    nodes.iter().map(|&j| labels[j].clone()).collect(),
                                )
                            })
                            .collect(),
                    ),
                    None,
                ),
                None => (None, None),
            };
            RingJson {
                ring: "synthetic".into(),
                primes: Some(labels),
                order: Some(order),
                maximal: Some(maximal),
                height: Some(height),
                bass,
                gorenstein_heights: gorenstein,
                ..empty
            }
        }
    }
}

pub fn ring_from_json(json: &RingJson) -> Result<Ring> {
    match json.ring.as_str() {
        "Z" => Ok(Ring::integers()),
        "PolyGF" => {
            let q = json.q.ok_or_else(|| Error::Input("PolyGF needs the field size q".into()))?;
            Ring::poly_over_gf(q)
        }
        "Zmod" => {
            let n = json.n.ok_or_else(|| Error::Input("Zmod needs the modulus n".into()))?;
            Ring::integer_quotient(n)
        }
        "synthetic" => {
            let labels = json
                .primes
                .clone()
                .ok_or_else(|| Error::Input("synthetic rings need a primes list".into()))?;
            let order = json.order.clone().unwrap_or_default();
            let bass = match (&json.bass, json.gorenstein_heights) {
                (Some(_), Some(true)) => {
                    return Err(Error::Input(
                        "declare either explicit bass data or gorenstein_heights, not both".into(),
                    ))
                }
                (None, Some(true)) => Some(BassSpec::GorensteinHeights),
                (None, _) => None,
                (Some(map), _) => {
                    let index: BTreeMap<&str, usize> = labels
                        .iter()
                        .enumerate()
                        .map(|(i, l)| (l.as_str(), i))
                        .collect();
                    let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
                    for (deg, nodes) in map {
                        let d: usize = deg
                            .parse()
                            .map_err(|_| Error::Input(format!("bass degree {deg} is not a number")))?;
                        let mut set = BTreeSet::new();
                        for l in nodes {
                            set.insert(*index.get(l.as_str()).ok_or_else(|| {
                                Error::Input(format!("unknown label {l} in bass data"))
                            })?);
                        }
                        out.insert(d, set);
                    }
                    Some(BassSpec::Explicit(out))
                }
            };
            let poset = SpectrumPoset::new(
                labels,
                &order,
                json.maximal.clone(),
                json.height.clone(),
                bass,
            )?;
            Ok(Ring::synthetic(poset))
        }
        other => Err(Error::Input(format!("unknown ring kind {other}"))),
    }
}

pub fn parse_ring(text: &str) -> Result<Ring> {
    let json: RingJson = serde_json::from_str(text).map_err(input_err)?;
    ring_from_json(&json)
}

// ---- prime sets --------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeSetJson {
    Finite { elems: Vec<String> },
    Dim1 { zero: bool, max: MaxPartJson },
    Bitset { elems: Vec<String> },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum MaxPartJson {
    Finite { finite: Vec<String> },
    Cofinite { cofinite_excluding: Vec<String> },
}

pub fn prime_set_to_json(set: &PrimeSet) -> PrimeSetJson {
    if let Some((zero, max)) = set.dim_one_parts() {
        let to_strings = |s: &BTreeSet<PrimeIdeal>| s.iter().map(|p| p.to_string()).collect();
        let max = match max {
            MaxPart::Finite(s) => MaxPartJson::Finite { finite: to_strings(s) },
            MaxPart::CofiniteExcluding(e) => MaxPartJson::Cofinite {
                cofinite_excluding: to_strings(e),
            },
        };
        return PrimeSetJson::Dim1 { zero, max };
    }
    let elems: Vec<String> = set
        .enumerate_finite()
        .expect("non dim-one sets are finite")
        .iter()
        .map(|p| p.to_string())
        .collect();
    if set.bits().is_some() {
        PrimeSetJson::Bitset { elems }
    } else {
        PrimeSetJson::Finite { elems }
    }
}

pub fn prime_set_from_json(ring: &Ring, json: &PrimeSetJson) -> Result<PrimeSet> {
    match json {
        PrimeSetJson::Finite { elems } => {
            let primes: Result<Vec<PrimeIdeal>> =
                elems.iter().map(|s| ring.parse_prime(s)).collect();
            PrimeSet::from_primes(ring, primes?)
        }
        PrimeSetJson::Bitset { elems } => {
            let poset = ring.poset().ok_or_else(|| {
                Error::Input(format!("bitset sets need a synthetic ring, not {ring}"))
            })?;
            let mut bits = Bitset::empty(poset.len());
            for l in elems {
                let p = ring.parse_prime(l)?;
                bits.insert(ring.node_of(&p)?);
            }
            PrimeSet::from_bitset(ring, bits)
        }
        PrimeSetJson::Dim1 { zero, max } => {
            let parse_all = |items: &[String]| -> Result<BTreeSet<PrimeIdeal>> {
                items.iter().map(|s| ring.parse_prime(s)).collect()
            };
            let max = match max {
                MaxPartJson::Finite { finite } => MaxPart::Finite(parse_all(finite)?),
                MaxPartJson::Cofinite { cofinite_excluding } => {
                    MaxPart::CofiniteExcluding(parse_all(cofinite_excluding)?)
                }
            };
            PrimeSet::dim_one(ring, *zero, max)
        }
    }
}

// ---- sequences ----------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SequenceJson {
    pub ring: RingJson,
    pub n: usize,
    pub levels: Vec<PrimeSetJson>,
}

pub fn sequence_to_json(seq: &CharacteristicSequence) -> SequenceJson {
    SequenceJson {
        ring: ring_to_json(seq.ring()),
        n: seq.len(),
        levels: seq.levels().iter().map(prime_set_to_json).collect(),
    }
}

pub fn sequence_from_json(json: &SequenceJson) -> Result<CharacteristicSequence> {
    let ring = ring_from_json(&json.ring)?;
    if json.levels.len() != json.n {
        return Err(Error::Input(format!(
            "sequence declares n = {} but has {} levels",
            json.n,
            json.levels.len()
        )));
    }
    let levels: Result<Vec<PrimeSet>> = json
        .levels
        .iter()
        .map(|l| prime_set_from_json(&ring, l))
        .collect();
    CharacteristicSequence::new(&ring, levels?)
}

pub fn parse_sequence(text: &str) -> Result<CharacteristicSequence> {
    let json: SequenceJson = serde_json::from_str(text).map_err(input_err)?;
    sequence_from_json(&json)
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LocalSequenceJson {
    pub ring: RingJson,
    pub maximal: String,
    pub n: usize,
    pub levels: Vec<PrimeSetJson>,
}

pub fn local_sequence_to_json(seq: &LocalSequence) -> LocalSequenceJson {
    LocalSequenceJson {
        ring: ring_to_json(seq.ring()),
        maximal: seq.maximal().to_string(),
        n: seq.len(),
        levels: seq.levels().iter().map(prime_set_to_json).collect(),
    }
}

pub fn local_sequence_from_json(json: &LocalSequenceJson) -> Result<LocalSequence> {
    let ring = ring_from_json(&json.ring)?;
    let maximal = ring.parse_prime(&json.maximal)?;
    if json.levels.len() != json.n {
        return Err(Error::Input(format!(
            "local sequence declares n = {} but has {} levels",
            json.n,
            json.levels.len()
        )));
    }
    let levels: Result<Vec<PrimeSet>> = json
        .levels
        .iter()
        .map(|l| prime_set_from_json(&ring, l))
        .collect();
    LocalSequence::new(&ring, maximal, levels?)
}

// ---- families -------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FamilyJson {
    pub ring: RingJson,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default: Option<Vec<Vec<String>>>,
    pub exceptions: BTreeMap<String, Vec<PrimeSetJson>>,
}

pub fn family_to_json(family: &CompatibleFamily) -> FamilyJson {
    let default = family.default_patterns().map(|patterns| {
        patterns
            .iter()
            .map(|p| {
                let mut flags = Vec::new();
                if p.zero {
                    flags.push("zero".to_string());
                }
                if p.max {
                    flags.push("max".to_string());
                }
                flags
            })
            .collect()
    });
    FamilyJson {
        ring: ring_to_json(family.ring()),
        n: family.len(),
        default,
        exceptions: family
            .exceptions()
            .iter()
            .map(|(m, levels)| {
                (m.to_string(), levels.iter().map(prime_set_to_json).collect())
            })
            .collect(),
    }
}

pub fn family_from_json(json: &FamilyJson) -> Result<CompatibleFamily> {
    let ring = ring_from_json(&json.ring)?;
    let default = match &json.default {
        None => None,
        Some(patterns) => {
            let mut out = Vec::new();
            for (i, flags) in patterns.iter().enumerate() {
                let mut pattern = LocalPattern { zero: false, max: false };
                for flag in flags {
                    match flag.as_str() {
                        "zero" => pattern.zero = true,
                        "max" => pattern.max = true,
                        other => {
                            return Err(Error::Input(format!(
                                "level {i} of the default pattern has unknown flag {other}"
                            )))
                        }
                    }
                }
                out.push(pattern);
            }
            Some(out)
        }
    };
    let mut exceptions = BTreeMap::new();
    for (key, levels) in &json.exceptions {
        let m = ring.parse_prime(key)?;
        let parsed: Result<Vec<PrimeSet>> = levels
            .iter()
            .map(|l| prime_set_from_json(&ring, l))
            .collect();
        exceptions.insert(m, parsed?);
    }
    CompatibleFamily::new(&ring, json.n, default, exceptions)
}

pub fn parse_family(text: &str) -> Result<CompatibleFamily> {
    let json: FamilyJson = serde_json::from_str(text).map_err(input_err)?;
    family_from_json(&json)
}

// ---- modules ----------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModuleJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisible_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<(u64, u32, usize)>,
}

pub fn module_to_json(arg: &ZModuleArg) -> ModuleJson {
    match arg {
        ZModuleArg::Fg(m) => ModuleJson {
            rank: Some(m.rank()),
            divisible_rank: None,
            torsion: m.torsion().iter().map(|b| (b.prime, b.exp, b.mult)).collect(),
        },
        ZModuleArg::Matlis(m) => ModuleJson {
            rank: None,
            divisible_rank: Some(m.divisible_rank()),
            torsion: m
                .finite_part()
                .torsion()
                .iter()
                .map(|b| (b.prime, b.exp, b.mult))
                .collect(),
        },
    }
}

pub fn module_from_json(json: &ModuleJson) -> Result<ZModuleArg> {
    for &(p, e, _) in &json.torsion {
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::Input(format!("torsion base {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Input("torsion exponents must be positive".into()));
        }
    }
    match (json.rank, json.divisible_rank) {
        (Some(_), Some(_)) => Err(Error::Input(
            "a module has either a free rank or a divisible rank, not both".into(),
        )),
        (_, Some(d)) => Ok(ZModuleArg::Matlis(MatlisModule::new(
            d,
            FgZModule::new(0, json.torsion.iter().copied()),
        ))),
        (rank, None) => Ok(ZModuleArg::Fg(FgZModule::new(
            rank.unwrap_or(0),
            json.torsion.iter().copied(),
        ))),
    }
}

pub fn parse_module(text: &str) -> Result<ZModuleArg> {
    let json: ModuleJson = serde_json::from_str(text).map_err(input_err)?;
    module_from_json(&json)
}
