//! An executable calculus for characteristic sequences over prime spectra of
//! commutative noetherian rings: validation and enumeration, localization at
//! maximal ideals, compatibility of local families and the gluing bijection,
//! together with an exact homological oracle over Z, the localizations Z_(p)
//! and the quotients Z/n that pins down the supporting isomorphisms on
//! concrete modules.

pub mod arith;
pub mod bitset;
pub mod charseq;
pub mod error;
pub mod family;
pub mod homology;
pub mod json;
pub mod matrix;
pub mod membership;
pub mod oracle;
pub mod poly;
pub mod prime_set;
pub mod ring;
pub mod zmodule;

pub use charseq::{bass_assassinators, count_sequences, enumerate_sequences, CharacteristicSequence, Clause, Verdict, Violation};
pub use error::{Error, Result};
pub use family::{
    check_compatibility, down_set_of, enumerate_local_sequences, families_equivalent,
    glue_family, localization_family, localize_sequence, sequences_equal, CompatibleFamily,
    FamilyVerdict, LocalPattern, LocalSequence, PairViolation,
};
pub use homology::{homology_functor, BaseModule, FunctorKind};
pub use membership::{ass_cosyzygy, cotilting_membership, tilting_membership, ZModuleArg};
pub use oracle::{
    cartanei_sweep, coloc_limit_sweep, colocalize_limit_oracle, dual_coloc_sweep, verify_cartanei,
    CartaneiPart, SweepReport,
};
pub use prime_set::{MaxPart, PrimeSet};
pub use ring::{hat, localize_prime, primes_under, BassSpec, PrimeIdeal, Ring, RingDescriptor, SpectrumPoset};
pub use zmodule::{
    bass_number_oracle, colocalize_finite, localize_module, matlis_dual, verify_dual_coloc,
    FgZModule, LocalizedModule, MatlisModule,
};
