//! Prime spectra of the supported rings, modeled as posets under inclusion.
//!
//! Supported rings: the integers, polynomial rings over a prime field, finite
//! integer quotients, and arbitrary finite synthetic posets. A prime of a
//! localization at a maximal ideal is always represented by its unique
//! preimage below that maximal ideal, so the hat map on primes is literal
//! identity plus a membership check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::arith::{factor_u64, is_prime_u64};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::poly;

/// A prime ideal in canonical form: integer primes positive, polynomials
/// monic, so equality is syntactic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PrimeIdeal {
    Zero,
    IntegerPrime(u64),
    /// Coefficients ascending by degree, reduced mod q, monic.
    IrreduciblePoly(Vec<u64>),
    /// Node label in a synthetic spectrum.
    SyntheticNode(String),
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        use PrimeIdeal::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (IntegerPrime(a), IntegerPrime(b)) => a.cmp(b),
            (IntegerPrime(_), _) => Ordering::Less,
            (_, IntegerPrime(_)) => Ordering::Greater,
            (IrreduciblePoly(a), IrreduciblePoly(b)) => poly::cmp_polys(a, b),
            (IrreduciblePoly(_), _) => Ordering::Less,
            (_, IrreduciblePoly(_)) => Ordering::Greater,
            (SyntheticNode(a), SyntheticNode(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::Zero => write!(f, "(0)"),
            PrimeIdeal::IntegerPrime(p) => write!(f, "({p})"),
            PrimeIdeal::IrreduciblePoly(c) => write!(f, "({})", poly::format_poly(c)),
            PrimeIdeal::SyntheticNode(s) => write!(f, "{s}"),
        }
    }
}

/// How a synthetic spectrum declares the associated primes of the cosyzygies
/// of the ring along its minimal injective coresolution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BassSpec {
    /// Explicit node sets per cohomological degree; missing degrees are empty.
    Explicit(BTreeMap<usize, BTreeSet<usize>>),
    /// Degree i holds exactly the nodes of height i.
    GorensteinHeights,
}

/// A finite poset with maximality, height, and Bass data, standing in for the
/// prime spectrum of a noetherian ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectrumPoset {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    /// Reflexive-transitive closure; leq[a * n + b] means a is contained in b.
    leq: Vec<bool>,
    maximal: Vec<usize>,
    height: Vec<u32>,
    bass: Option<BassSpec>,
}

impl SpectrumPoset {
    /// Builds a poset from strict containment pairs (a, b) meaning a < b.
    /// Maximal elements and heights are derived when not supplied and
    /// validated against the order when they are.
    pub fn new(
        labels: Vec<String>,
        strict_pairs: &[(String, String)],
        maximal: Option<Vec<String>>,
        height: Option<BTreeMap<String, u32>>,
        bass: Option<BassSpec>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("synthetic spectrum needs at least one prime".into()));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate prime label {l}")));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in strict_pairs {
            let ia = *index.get(a).ok_or_else(|| Error::Input(format!("unknown label {a} in order")))?;
            let ib = *index.get(b).ok_or_else(|| Error::Input(format!("unknown label {b} in order")))?;
            if ia == ib {
                return Err(Error::Input(format!("strict containment {a} < {a} is cyclic")));
            }
            leq[ia * n + ib] = true;
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Input(format!(
                        "containment cycle between {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let derived_maximal: Vec<usize> = (0..n)
            .filter(|&i| (0..n).all(|j| i == j || !leq[i * n + j]))
            .collect();
        if let Some(given) = &maximal {
            let mut given_idx = BTreeSet::new();
            for l in given {
                given_idx.insert(
                    *index.get(l).ok_or_else(|| Error::Input(format!("unknown maximal label {l}")))?,
                );
            }
            if given_idx != derived_maximal.iter().copied().collect() {
                return Err(Error::Input(
                    "declared maximal set differs from the order-maximal nodes".into(),
                ));
            }
        }
        let derived_height = {
            // longest chain strictly below each node
            let mut h = vec![0u32; n];
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| (0..n).filter(|&j| j != i && leq[j * n + i]).count());
            for &i in &order {
                h[i] = (0..n)
                    .filter(|&j| j != i && leq[j * n + i])
                    .map(|j| h[j] + 1)
                    .max()
                    .unwrap_or(0);
            }
            h
        };
        let height = match height {
            None => derived_height,
            Some(map) => {
                let mut h = vec![0u32; n];
                for (l, v) in &map {
                    let i = *index.get(l).ok_or_else(|| Error::Input(format!("unknown label {l} in height")))?;
                    h[i] = *v;
                }
                if map.len() != n {
                    return Err(Error::Input("height map must cover every prime".into()));
                }
                for i in 0..n {
                    let minimal = (0..n).all(|j| j == i || !leq[j * n + i]);
                    if minimal && h[i] != 0 {
                        return Err(Error::Input(format!(
                            "minimal prime {} must have height 0",
                            labels[i]
                        )));
                    }
                    for j in 0..n {
                        if i != j && leq[i * n + j] && h[i] >= h[j] {
                            return Err(Error::Input(format!(
                                "height must strictly increase along {} < {}",
                                labels[i], labels[j]
                            )));
                        }
                    }
                }
                h
            }
        };
        Ok(SpectrumPoset {
            labels,
            index,
            leq,
            maximal: derived_maximal,
            height,
            bass,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn node(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn maximal_nodes(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_maximal_idx(&self, i: usize) -> bool {
        self.maximal.contains(&i)
    }

    pub fn height_idx(&self, i: usize) -> u32 {
        self.height[i]
    }

    pub fn bass_spec(&self) -> Option<&BassSpec> {
        self.bass.as_ref()
    }

    /// Down-set of a node as a bitset.
    pub fn down_set(&self, i: usize) -> Bitset {
        let mut s = Bitset::empty(self.len());
        for j in 0..self.len() {
            if self.leq_idx(j, i) {
                s.insert(j);
            }
        }
        s
    }

    /// Bass node set in degree i, or a configuration error when no Bass data
    /// was declared for this spectrum.
    pub fn bass_nodes(&self, i: usize) -> Result<Bitset> {
        let mut s = Bitset::empty(self.len());
        match &self.bass {
            None => {
                return Err(Error::Config(
                    "synthetic spectrum declares neither explicit bass data nor gorenstein_heights".into(),
                ))
            }
            Some(BassSpec::GorensteinHeights) => {
                for j in 0..self.len() {
                    if self.height[j] as usize == i {
                        s.insert(j);
                    }
                }
            }
            Some(BassSpec::Explicit(map)) => {
                if let Some(nodes) = map.get(&i) {
                    for &j in nodes {
                        s.insert(j);
                    }
                }
            }
        }
        Ok(s)
    }
}

/// A supported ring presentation together with its spectrum model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingDescriptor {
    Integers,
    PolyOverPrimeField { q: u64 },
    IntegerQuotient { n: u64, primes: Vec<u64> },
    Synthetic(SpectrumPoset),
}

/// Shared handle to a ring descriptor. Cheap to clone; equality is by
/// descriptor contents so independently built handles to the same ring agree.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::ops::Deref for Ring {
    type Target = RingDescriptor;
    fn deref(&self) -> &RingDescriptor {
        &self.0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::PolyOverPrimeField { q } => write!(f, "GF({q})[x]"),
            RingDescriptor::IntegerQuotient { n, .. } => write!(f, "Z/{n}"),
            RingDescriptor::Synthetic(p) => write!(f, "synthetic({} primes)", p.len()),
        }
    }
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingDescriptor::Integers))
    }

    pub fn poly_over_gf(q: u64) -> Result<Ring> {
        if !is_prime_u64(q) {
            return Err(Error::Input(format!("{q} is not prime")));
        }
        Ok(Ring(Arc::new(RingDescriptor::PolyOverPrimeField { q })))
    }

    pub fn integer_quotient(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::Input(format!("Z/{n} needs n >= 2")));
        }
        let primes = factor_u64(n).into_iter().map(|(p, _)| p).collect();
        Ok(Ring(Arc::new(RingDescriptor::IntegerQuotient { n, primes })))
    }

    pub fn synthetic(poset: SpectrumPoset) -> Ring {
        Ring(Arc::new(RingDescriptor::Synthetic(poset)))
    }

    pub fn poset(&self) -> Option<&SpectrumPoset> {
        match &*self.0 {
            RingDescriptor::Synthetic(p) => Some(p),
            _ => None,
        }
    }

    /// Dimension-one built-in domains: the integers and GF(q)\[x\].
    pub fn is_dim_one_domain(&self) -> bool {
        matches!(
            &*self.0,
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. }
        )
    }

    /// Checks that a prime belongs to this ring's spectrum.
    pub fn check_member(&self, p: &PrimeIdeal) -> Result<()> {
        let ok = match (&*self.0, p) {
            (RingDescriptor::Integers, PrimeIdeal::Zero) => true,
            (RingDescriptor::Integers, PrimeIdeal::IntegerPrime(v)) => is_prime_u64(*v),
            (RingDescriptor::PolyOverPrimeField { .. }, PrimeIdeal::Zero) => true,
            (RingDescriptor::PolyOverPrimeField { q }, PrimeIdeal::IrreduciblePoly(c)) => {
                poly::is_monic(c) && c.iter().all(|&x| x < *q) && poly::is_irreducible(c, *q)
            }
            (RingDescriptor::IntegerQuotient { primes, .. }, PrimeIdeal::IntegerPrime(v)) => {
                primes.contains(v)
            }
            (RingDescriptor::Synthetic(poset), PrimeIdeal::SyntheticNode(l)) => {
                poset.node(l).is_some()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!("{p} is not a prime of {self}")))
        }
    }

    /// Containment order on the spectrum: true iff p is contained in q.
    pub fn leq(&self, p: &PrimeIdeal, q: &PrimeIdeal) -> Result<bool> {
        self.check_member(p)?;
        self.check_member(q)?;
        Ok(match &*self.0 {
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => {
                *p == PrimeIdeal::Zero || p == q
            }
            RingDescriptor::IntegerQuotient { .. } => p == q,
            RingDescriptor::Synthetic(poset) => {
                let (a, b) = (self.node_of(p)?, self.node_of(q)?);
                poset.leq_idx(a, b)
            }
        })
    }

    pub fn is_maximal(&self, p: &PrimeIdeal) -> Result<bool> {
        self.check_member(p)?;
        Ok(match &*self.0 {
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => {
                *p != PrimeIdeal::Zero
            }
            RingDescriptor::IntegerQuotient { .. } => true,
            RingDescriptor::Synthetic(poset) => poset.is_maximal_idx(self.node_of(p)?),
        })
    }

    pub fn height(&self, p: &PrimeIdeal) -> Result<u32> {
        self.check_member(p)?;
        Ok(match &*self.0 {
            RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => {
                if *p == PrimeIdeal::Zero {
                    0
                } else {
                    1
                }
            }
            RingDescriptor::IntegerQuotient { .. } => 0,
            RingDescriptor::Synthetic(poset) => poset.height_idx(self.node_of(p)?),
        })
    }

    pub(crate) fn node_of(&self, p: &PrimeIdeal) -> Result<usize> {
        match (&*self.0, p) {
            (RingDescriptor::Synthetic(poset), PrimeIdeal::SyntheticNode(l)) => poset
                .node(l)
                .ok_or_else(|| Error::Input(format!("{p} is not a prime of {self}"))),
            _ => Err(Error::Input(format!("{p} is not a synthetic prime"))),
        }
    }

    /// All maximal ideals, for rings with finitely many.
    pub fn finite_maximals(&self) -> Option<Vec<PrimeIdeal>> {
        match &*self.0 {
            RingDescriptor::IntegerQuotient { primes, .. } => Some(
                primes.iter().map(|&p| PrimeIdeal::IntegerPrime(p)).collect(),
            ),
            RingDescriptor::Synthetic(poset) => Some(
                poset
                    .maximal_nodes()
                    .iter()
                    .map(|&i| PrimeIdeal::SyntheticNode(poset.label(i).to_string()))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Streams maximal ideals of a dimension-one built-in domain in canonical
    /// order. Used to pick witnesses outside a finite excluded set.
    pub fn maximal_stream(&self) -> Result<Box<dyn Iterator<Item = PrimeIdeal>>> {
        match &*self.0 {
            RingDescriptor::Integers => Ok(Box::new(
                (2u64..).filter(is_prime_field_candidate).map(PrimeIdeal::IntegerPrime),
            )),
            RingDescriptor::PolyOverPrimeField { q } => {
                Ok(Box::new(poly::irreducibles(*q).map(PrimeIdeal::IrreduciblePoly)))
            }
            _ => Err(Error::Unsupported(format!(
                "{self} does not stream maximal ideals; use finite_maximals"
            ))),
        }
    }

    /// First maximal ideal not contained in the excluded set.
    pub fn fresh_maximal(&self, excluded: &BTreeSet<PrimeIdeal>) -> Result<PrimeIdeal> {
        if let Some(all) = self.finite_maximals() {
            return all
                .into_iter()
                .find(|m| !excluded.contains(m))
                .ok_or_else(|| Error::Input("every maximal ideal is excluded".into()));
        }
        Ok(self
            .maximal_stream()?
            .find(|m| !excluded.contains(m))
            .expect("infinitely many maximal ideals"))
    }

    /// Parses the textual form of a prime of this ring, with or without the
    /// surrounding parentheses used on output.
    pub fn parse_prime(&self, s: &str) -> Result<PrimeIdeal> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p = match &*self.0 {
            RingDescriptor::Integers | RingDescriptor::IntegerQuotient { .. } => {
                let v: u64 = inner
                    .parse()
                    .map_err(|_| Error::Input(format!("cannot parse prime {s}")))?;
                if v == 0 {
                    PrimeIdeal::Zero
                } else {
                    PrimeIdeal::IntegerPrime(v)
                }
            }
            RingDescriptor::PolyOverPrimeField { q } => {
                if inner == "0" {
                    PrimeIdeal::Zero
                } else {
                    PrimeIdeal::IrreduciblePoly(poly::parse_poly(inner, *q)?)
                }
            }
            RingDescriptor::Synthetic(_) => PrimeIdeal::SyntheticNode(inner.to_string()),
        };
        self.check_member(&p)?;
        Ok(p)
    }
}

fn is_prime_field_candidate(n: &u64) -> bool {
    is_prime_u64(*n)
}

/// Returns the set of primes below a maximal ideal; identifies the spectrum
/// of the localization at m with the down-set of m.
pub fn primes_under(ring: &Ring, m: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
    if !ring.is_maximal(m)? {
        return Err(Error::Input(format!("{m} is not maximal in {ring}")));
    }
    Ok(match &**ring {
        RingDescriptor::Integers | RingDescriptor::PolyOverPrimeField { .. } => {
            vec![PrimeIdeal::Zero, m.clone()]
        }
        RingDescriptor::IntegerQuotient { .. } => vec![m.clone()],
        RingDescriptor::Synthetic(poset) => {
            let mi = ring.node_of(m)?;
            poset
                .down_set(mi)
                .iter()
                .map(|i| PrimeIdeal::SyntheticNode(poset.label(i).to_string()))
                .collect()
        }
    })
}

/// The global preimage of a local prime: local primes are already stored by
/// their preimage, so this validates containment and returns the input.
pub fn hat(ring: &Ring, m: &PrimeIdeal, local_prime: &PrimeIdeal) -> Result<PrimeIdeal> {
    if !ring.is_maximal(m)? {
        return Err(Error::Input(format!("{m} is not maximal in {ring}")));
    }
    if !ring.leq(local_prime, m)? {
        return Err(Error::Input(format!("{local_prime} does not lie below {m}")));
    }
    Ok(local_prime.clone())
}

/// The image of a global prime p below m in the localized spectrum, in the
/// preimage encoding. Inverse to hat on the down-set of m.
pub fn localize_prime(ring: &Ring, m: &PrimeIdeal, p: &PrimeIdeal) -> Result<PrimeIdeal> {
    if !ring.is_maximal(m)? {
        return Err(Error::Input(format!("{m} is not maximal in {ring}")));
    }
    if !ring.leq(p, m)? {
        return Err(Error::Input(format!("{p} does not lie below {m}")));
    }
    Ok(p.clone())
}
