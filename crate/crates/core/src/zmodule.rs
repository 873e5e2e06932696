//! Finitely generated Z-module invariants and their relatives: Matlis duals
//! and localizations at integer primes.
//!
//! A module is stored as its canonical primary decomposition, so isomorphism
//! testing is equality. Torsion blocks are (prime, exponent, multiplicity)
//! triples sorted by prime then exponent.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factor_u64, is_prime_u64};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TorsionBlock {
    pub prime: u64,
    pub exp: u32,
    pub mult: usize,
}

/// Z^rank plus a direct sum of cyclic p-power groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgZModule {
    rank: usize,
    torsion: Vec<TorsionBlock>,
}

impl FgZModule {
    pub fn new(rank: usize, blocks: impl IntoIterator<Item = (u64, u32, usize)>) -> FgZModule {
        let mut merged = std::collections::BTreeMap::new();
        for (prime, exp, mult) in blocks {
            assert!(is_prime_u64(prime), "torsion prime {prime} is not prime");
            assert!(exp >= 1, "torsion exponent must be positive");
            if mult > 0 {
                *merged.entry((prime, exp)).or_insert(0usize) += mult;
            }
        }
        FgZModule {
            rank,
            torsion: merged
                .into_iter()
                .map(|((prime, exp), mult)| TorsionBlock { prime, exp, mult })
                .collect(),
        }
    }

    pub fn zero() -> FgZModule {
        FgZModule::new(0, [])
    }

    pub fn free(rank: usize) -> FgZModule {
        FgZModule::new(rank, [])
    }

    /// Z/n for n >= 1 (n = 1 gives the zero module).
    pub fn cyclic(n: u64) -> FgZModule {
        assert!(n >= 1);
        FgZModule::new(0, factor_u64(n).into_iter().map(|(p, e)| (p, e, 1)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[TorsionBlock] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn direct_sum(&self, other: &FgZModule) -> FgZModule {
        FgZModule::new(
            self.rank + other.rank,
            self.torsion
                .iter()
                .chain(&other.torsion)
                .map(|b| (b.prime, b.exp, b.mult)),
        )
    }

    pub fn repeated(&self, times: usize) -> FgZModule {
        FgZModule::new(
            self.rank * times,
            self.torsion.iter().map(|b| (b.prime, b.exp, b.mult * times)),
        )
    }

    /// Order of the torsion part times infinity when rank > 0 (None).
    pub fn order(&self) -> Option<BigUint> {
        if self.rank > 0 {
            return None;
        }
        let mut n = BigUint::one();
        for b in &self.torsion {
            n *= BigUint::from(b.prime).pow(b.exp * b.mult as u32);
        }
        Some(n)
    }

    /// Primes p with nonzero p-primary part, ascending.
    pub fn support(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.torsion.iter().map(|b| b.prime).collect();
        ps.dedup();
        ps
    }

    pub fn p_primary(&self, p: u64) -> Vec<(u32, usize)> {
        self.torsion
            .iter()
            .filter(|b| b.prime == p)
            .map(|b| (b.exp, b.mult))
            .collect()
    }

    /// Cokernel invariants of an integer presentation matrix: the module
    /// Z^rows / column-span(A).
    pub fn from_presentation(a: &IntMatrix) -> Result<FgZModule> {
        let snf = smith_normal_form(a);
        let rank = a.rows() - snf.rank();
        let mut blocks = Vec::new();
        for d in snf.diagonal() {
            if d.is_zero() || d.is_one() {
                continue;
            }
            let d64 = big_to_u64(&d)?;
            for (p, e) in factor_u64(d64) {
                blocks.push((p, e, 1));
            }
        }
        Ok(FgZModule::new(rank, blocks))
    }

    /// Invariant factors d_1 | d_2 | ... of the torsion part.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let mut per_prime: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
        for b in &self.torsion {
            let exps = per_prime.entry(b.prime).or_default();
            for _ in 0..b.mult {
                exps.push(b.exp);
            }
        }
        let width = per_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![BigUint::one(); width];
        for (p, mut exps) in per_prime {
            exps.sort_unstable();
            // align largest exponents with the last invariant factor
            let offset = width - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                factors[offset + i] *= BigUint::from(p).pow(e);
            }
        }
        factors
    }

    /// Presentation as Z^gens -> Z^gens with diagonal relations on the
    /// torsion generators; free generators come first.
    pub fn presentation(&self) -> IntMatrix {
        let torsion_gens: usize = self.torsion.iter().map(|b| b.mult).sum();
        let gens = self.rank + torsion_gens;
        let mut rels = IntMatrix::zeros(gens, torsion_gens);
        let mut col = 0;
        for b in &self.torsion {
            let order = BigInt::from(b.prime).pow(b.exp);
            for _ in 0..b.mult {
                rels[(self.rank + col, col)] = order.clone();
                col += 1;
            }
        }
        rels
    }
}

impl fmt::Display for FgZModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for b in &self.torsion {
            let order = BigUint::from(b.prime).pow(b.exp);
            if b.mult == 1 {
                parts.push(format!("Z/{order}"));
            } else {
                parts.push(format!("(Z/{order})^{}", b.mult));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn big_to_u64(d: &BigInt) -> Result<u64> {
    d.to_u64().ok_or_else(|| {
        Error::Unsupported(format!("torsion invariant {d} too large to factor"))
    })
}

/// (Q/Z)^divisible_rank plus a finite module; the shape of a Matlis dual of a
/// finitely generated Z-module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatlisModule {
    divisible_rank: usize,
    finite: FgZModule,
}

impl MatlisModule {
    pub fn new(divisible_rank: usize, finite: FgZModule) -> MatlisModule {
        assert!(finite.is_finite(), "the finite part of a Matlis module has rank 0");
        MatlisModule { divisible_rank, finite }
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible_rank
    }

    pub fn finite_part(&self) -> &FgZModule {
        &self.finite
    }

    pub fn is_zero(&self) -> bool {
        self.divisible_rank == 0 && self.finite.is_zero()
    }

    /// The underlying finite module when no divisible part is present.
    pub fn as_finite(&self) -> Option<&FgZModule> {
        (self.divisible_rank == 0).then_some(&self.finite)
    }
}

impl fmt::Display for MatlisModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.divisible_rank {
            0 => {}
            1 => parts.push("Q/Z".to_string()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if !self.finite.is_zero() {
            parts.push(self.finite.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finitely generated module over the localization Z_(p): free rank plus
/// p-power torsion (exponent, multiplicity) pairs sorted by exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalizedModule {
    prime: u64,
    rank: usize,
    torsion: Vec<(u32, usize)>,
}

impl LocalizedModule {
    pub fn new(prime: u64, rank: usize, torsion: impl IntoIterator<Item = (u32, usize)>) -> LocalizedModule {
        assert!(is_prime_u64(prime), "{prime} is not prime");
        let mut merged = std::collections::BTreeMap::new();
        for (exp, mult) in torsion {
            assert!(exp >= 1);
            if mult > 0 {
                *merged.entry(exp).or_insert(0usize) += mult;
            }
        }
        LocalizedModule {
            prime,
            rank,
            torsion: merged.into_iter().collect(),
        }
    }

    pub fn zero(prime: u64) -> LocalizedModule {
        LocalizedModule::new(prime, 0, [])
    }

    pub fn free(prime: u64, rank: usize) -> LocalizedModule {
        LocalizedModule::new(prime, rank, [])
    }

    /// The residue field Z/p as a Z_(p)-module.
    pub fn residue_field(prime: u64) -> LocalizedModule {
        LocalizedModule::new(prime, 0, [(1, 1)])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[(u32, usize)] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Reinterprets a p-primary finitely generated Z-module (free part read as
    /// Z_(p)-free) as a module over Z_(p). Errors on torsion away from p.
    pub fn from_p_primary(m: &FgZModule, p: u64) -> Result<LocalizedModule> {
        if m.support().iter().any(|&q| q != p) {
            return Err(Error::Input(format!(
                "{m} has torsion away from ({p}); not a Z_({p})-module"
            )));
        }
        Ok(LocalizedModule::new(
            p,
            m.rank(),
            m.p_primary(p),
        ))
    }

    /// The invariants of the same module seen as data over Z (the free rank
    /// becomes plain rank for presentation purposes).
    pub fn integer_model(&self) -> FgZModule {
        FgZModule::new(
            self.rank,
            self.torsion.iter().map(|&(e, m)| (self.prime, e, m)),
        )
    }

    /// Dimension over the residue field when the module is a vector space
    /// over Z/p; None otherwise.
    pub fn residue_dimension(&self) -> Option<usize> {
        if self.rank > 0 || self.torsion.iter().any(|&(e, _)| e > 1) {
            return None;
        }
        Some(self.torsion.iter().map(|&(_, m)| m).sum())
    }
}

impl fmt::Display for LocalizedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.prime;
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(format!("Z_({p})")),
            r => parts.push(format!("Z_({p})^{r}")),
        }
        for &(e, m) in &self.torsion {
            let order = BigUint::from(p).pow(e);
            if m == 1 {
                parts.push(format!("Z/{order}"));
            } else {
                parts.push(format!("(Z/{order})^{m}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Matlis duality Hom(-, Q/Z): the free part dualizes to divisible copies and
/// finite parts are self-dual.
pub fn matlis_dual(m: &FgZModule) -> MatlisModule {
    MatlisModule::new(
        m.rank(),
        FgZModule::new(0, m.torsion().iter().map(|b| (b.prime, b.exp, b.mult))),
    )
}

/// Localization at p: rank is preserved and only p-primary torsion survives.
pub fn localize_module(m: &FgZModule, p: u64) -> Result<LocalizedModule> {
    if !is_prime_u64(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    Ok(LocalizedModule::new(p, m.rank(), m.p_primary(p)))
}

/// Colocalization Hom(Z_(p), M) of a finite module: its p-primary part.
pub fn colocalize_finite(m: &FgZModule, p: u64) -> Result<FgZModule> {
    if !is_prime_u64(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if !m.is_finite() {
        return Err(Error::Unsupported(
            "colocalization of a module with free rank is not finitely generated".into(),
        ));
    }
    Ok(FgZModule::new(
        0,
        m.p_primary(p).into_iter().map(|(e, mult)| (p, e, mult)),
    ))
}

/// Checks that the colocalization of the dual equals the dual of the
/// localization, with each side computed through its own pipeline.
pub fn verify_dual_coloc(n: &FgZModule, p: u64) -> Result<bool> {
    if !n.is_finite() {
        return Err(Error::Unsupported(
            "dual-of-localization check needs a finite module".into(),
        ));
    }
    let dual = matlis_dual(n);
    let finite_dual = dual.as_finite().expect("dual of a finite module is finite");
    let left = colocalize_finite(finite_dual, p)?;
    // dual invariants of the localization: finite p-torsion is self-dual
    let localized = localize_module(n, p)?;
    let right = FgZModule::new(
        0,
        localized.torsion().iter().map(|&(e, m)| (p, e, m)),
    );
    Ok(left == right)
}

/// Multiplicities mu_i of the injective envelope of the residue field at p in
/// degree i of the minimal injective coresolution of Z, computed through Ext
/// over the localization rather than read off a table. The zero ideal is
/// handled through the rank of the fraction-field stage.
pub fn bass_number_oracle(p: &crate::ring::PrimeIdeal, i: u32) -> Result<usize> {
    use crate::homology;
    use crate::ring::PrimeIdeal;
    match p {
        PrimeIdeal::Zero => {
            let ring_as_module = FgZModule::free(1);
            Ok(match i {
                // E^0(Z) = Q, one copy of the fraction field
                0 => ring_as_module.rank(),
                // later cosyzygies of Z are torsion, so the fraction field never recurs
                _ => 0,
            })
        }
        PrimeIdeal::IntegerPrime(p) => {
            if !is_prime_u64(*p) {
                return Err(Error::Input(format!("({p}) is not a prime of Z")));
            }
            if i >= 2 {
                return Ok(0);
            }
            let ext = homology::ext_local(
                i,
                &LocalizedModule::residue_field(*p),
                &LocalizedModule::free(*p, 1),
            )?;
            Ok(ext
                .residue_dimension()
                .expect("Ext from the residue field is a residue-field vector space"))
        }
        other => Err(Error::Input(format!("{other} is not a prime of Z"))),
    }
}
