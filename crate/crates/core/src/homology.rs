//! Hom, tensor, Ext and Tor of finitely generated modules over Z and over the
//! localizations Z_(p).
//!
//! Every functor is computed twice: once through gcd closed forms on the
//! primary decompositions, and once through a free presentation followed by
//! kernel/cokernel extraction with Smith normal form. The two routes must
//! agree; a mismatch panics because it can only mean an implementation bug.
//! Degrees >= 2 vanish since Z and Z_(p) have global dimension 1.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::matrix::{column_space_basis, kernel_basis, quotient_invariants, smith_normal_form, IntMatrix};
use crate::zmodule::{FgZModule, LocalizedModule};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FunctorKind {
    Hom,
    Tensor,
    Ext,
    Tor,
}

impl FunctorKind {
    /// Hom and Tensor are the degree-zero cases of Ext and Tor.
    fn normalize(self, i: u32) -> (FunctorKind, u32) {
        match self {
            FunctorKind::Hom => (FunctorKind::Ext, 0),
            FunctorKind::Tensor => (FunctorKind::Tor, 0),
            k => (k, i),
        }
    }
}

/// Operand over either base ring; both arguments of a functor must agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BaseModule {
    Z(FgZModule),
    Local(LocalizedModule),
}

impl std::fmt::Display for BaseModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseModule::Z(m) => write!(f, "{m}"),
            BaseModule::Local(m) => write!(f, "{m}"),
        }
    }
}

/// Dispatches a derived functor over the common base of the two operands.
pub fn homology_functor(kind: FunctorKind, i: u32, a: &BaseModule, b: &BaseModule) -> Result<BaseModule> {
    match (a, b) {
        (BaseModule::Z(a), BaseModule::Z(b)) => Ok(BaseModule::Z(functor_z(kind, i, a, b)?)),
        (BaseModule::Local(a), BaseModule::Local(b)) => {
            Ok(BaseModule::Local(functor_local(kind, i, a, b)?))
        }
        _ => Err(Error::Input(
            "mixed base rings: both modules must live over Z or over the same Z_(p)".into(),
        )),
    }
}

pub fn hom_z(a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    functor_z(FunctorKind::Hom, 0, a, b)
}

pub fn tensor_z(a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    functor_z(FunctorKind::Tensor, 0, a, b)
}

pub fn ext_z(i: u32, a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    functor_z(FunctorKind::Ext, i, a, b)
}

pub fn tor_z(i: u32, a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    functor_z(FunctorKind::Tor, i, a, b)
}

pub fn hom_local(a: &LocalizedModule, b: &LocalizedModule) -> Result<LocalizedModule> {
    functor_local(FunctorKind::Hom, 0, a, b)
}

pub fn ext_local(i: u32, a: &LocalizedModule, b: &LocalizedModule) -> Result<LocalizedModule> {
    functor_local(FunctorKind::Ext, i, a, b)
}

pub fn tensor_local(a: &LocalizedModule, b: &LocalizedModule) -> Result<LocalizedModule> {
    functor_local(FunctorKind::Tensor, 0, a, b)
}

pub fn tor_local(i: u32, a: &LocalizedModule, b: &LocalizedModule) -> Result<LocalizedModule> {
    functor_local(FunctorKind::Tor, i, a, b)
}

pub fn functor_z(kind: FunctorKind, i: u32, a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    let (kind, i) = kind.normalize(i);
    let closed = closed_form_z(kind, i, a, b);
    let resolved = resolution_route_z(kind, i, a, b)?;
    assert_eq!(
        closed, resolved,
        "closed form and resolution disagree for {kind:?}^{i}({a}, {b})"
    );
    Ok(closed)
}

pub fn functor_local(
    kind: FunctorKind,
    i: u32,
    a: &LocalizedModule,
    b: &LocalizedModule,
) -> Result<LocalizedModule> {
    if a.prime() != b.prime() {
        return Err(Error::Input(format!(
            "mixed base rings: Z_({}) vs Z_({})",
            a.prime(),
            b.prime()
        )));
    }
    let p = a.prime();
    let (kind, i) = kind.normalize(i);
    let closed = localize_invariants(
        &closed_form_z(kind, i, &a.integer_model(), &b.integer_model()),
        p,
    );
    // resolution over the localized ring: integer presentations, with unit
    // (prime-to-p) invariant factors stripped at the end
    let resolved = localize_invariants(
        &resolution_route_z(kind, i, &a.integer_model(), &b.integer_model())?,
        p,
    );
    assert_eq!(
        closed, resolved,
        "closed form and resolution disagree for {kind:?}^{i}({a}, {b}) over Z_({p})"
    );
    Ok(closed)
}

/// Hom or Ext over Z landing in a p-local module: the integer computation on
/// the full presentation of `a`, localized at p afterwards. Exactness of
/// localization and finite generation of `a` make this the functor value.
pub fn functor_z_into_local(
    kind: FunctorKind,
    i: u32,
    a: &FgZModule,
    b: &LocalizedModule,
) -> Result<LocalizedModule> {
    let over_z = functor_z(kind, i, a, &b.integer_model())?;
    Ok(localize_invariants(&over_z, b.prime()))
}

fn localize_invariants(m: &FgZModule, p: u64) -> LocalizedModule {
    LocalizedModule::new(p, m.rank(), m.p_primary(p))
}

// ---- closed forms ----------------------------------------------------------

fn gcd_pieces(a: &FgZModule, b: &FgZModule) -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for x in a.torsion() {
        for y in b.torsion() {
            if x.prime == y.prime {
                out.push((x.prime, x.exp.min(y.exp), x.mult * y.mult));
            }
        }
    }
    out
}

fn closed_form_z(kind: FunctorKind, i: u32, a: &FgZModule, b: &FgZModule) -> FgZModule {
    match (kind, i) {
        (FunctorKind::Ext, 0) => {
            // Hom: free x free, torsion of B repeated by the free rank of A,
            // and Hom(Z/p^e, Z/p^f) = Z/p^min(e,f)
            let mut blocks = gcd_pieces(a, b);
            blocks.extend(b.torsion().iter().map(|t| (t.prime, t.exp, t.mult * a.rank())));
            FgZModule::new(a.rank() * b.rank(), blocks)
        }
        (FunctorKind::Tor, 0) => {
            let mut blocks = gcd_pieces(a, b);
            blocks.extend(a.torsion().iter().map(|t| (t.prime, t.exp, t.mult * b.rank())));
            blocks.extend(b.torsion().iter().map(|t| (t.prime, t.exp, t.mult * a.rank())));
            FgZModule::new(a.rank() * b.rank(), blocks)
        }
        (FunctorKind::Ext, 1) => {
            // Ext^1(Z/c, Z) = Z/c and Ext^1(Z/p^e, Z/p^f) = Z/p^min(e,f)
            let mut blocks = gcd_pieces(a, b);
            blocks.extend(a.torsion().iter().map(|t| (t.prime, t.exp, t.mult * b.rank())));
            FgZModule::new(0, blocks)
        }
        (FunctorKind::Tor, 1) => FgZModule::new(0, gcd_pieces(a, b)),
        _ => FgZModule::zero(),
    }
}

// ---- resolution route ------------------------------------------------------

/// A module presented as Z^gens modulo the column span of rels.
struct Pres {
    gens: usize,
    rels: IntMatrix,
}

impl Pres {
    fn power_of(b: &FgZModule, copies: usize) -> Pres {
        let rb = b.presentation();
        Pres {
            gens: copies * (b.rank() + rb.cols()),
            rels: IntMatrix::identity(copies).kron(&rb),
        }
    }

    fn invariants(&self) -> Result<FgZModule> {
        let snf = smith_normal_form(&self.rels);
        let rank = self.gens - snf.rank();
        let mut blocks = Vec::new();
        for d in snf.diagonal() {
            if d.is_zero() || d.is_one() {
                continue;
            }
            let d64 = d
                .to_u64()
                .ok_or_else(|| Error::Unsupported(format!("invariant factor {d} too large to factor")))?;
            for (p, e) in factor_u64(d64) {
                blocks.push((p, e, 1));
            }
        }
        Ok(FgZModule::new(rank, blocks))
    }
}

/// Invariants of the kernel of the map between presented modules induced by
/// the generator matrix `g`; the source relations must map into the target
/// relation lattice.
fn kernel_invariants(g: &IntMatrix, source: &Pres, target: &Pres) -> Result<FgZModule> {
    // x lies in the preimage lattice iff g x is a combination of target relations
    let stacked = g.hstack(&target.rels);
    let kb = kernel_basis(&stacked);
    let projected = kb.top_rows(source.gens);
    let lattice = column_space_basis(&projected);
    if lattice.cols() == 0 {
        return Ok(FgZModule::zero());
    }
    let (rank, factors) = quotient_invariants(&lattice, &source.rels);
    factors_to_module(rank, factors)
}

fn cokernel_invariants(g: &IntMatrix, target: &Pres) -> Result<FgZModule> {
    Pres {
        gens: target.gens,
        rels: g.hstack(&target.rels),
    }
    .invariants()
}

fn factors_to_module(rank: usize, factors: Vec<BigInt>) -> Result<FgZModule> {
    let mut blocks = Vec::new();
    for d in factors {
        let d64 = d
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("invariant factor {d} too large to factor")))?;
        for (p, e) in factor_u64(d64) {
            blocks.push((p, e, 1));
        }
    }
    Ok(FgZModule::new(rank, blocks))
}

fn resolution_route_z(kind: FunctorKind, i: u32, a: &FgZModule, b: &FgZModule) -> Result<FgZModule> {
    if i >= 2 {
        return Ok(FgZModule::zero());
    }
    let ra = a.presentation(); // 0 -> Z^rels -> Z^gens -> A -> 0
    let gens_a = ra.rows();
    let rels_a = ra.cols();
    match kind {
        FunctorKind::Ext => {
            // apply Hom(-, B): 0 -> Hom(A,B) -> B^gens -> B^rels -> Ext^1 -> 0
            let source = Pres::power_of(b, gens_a);
            let target = Pres::power_of(b, rels_a);
            let width = b.rank() + b.presentation().cols();
            let g = ra.transpose().kron(&IntMatrix::identity(width));
            match i {
                0 => kernel_invariants(&g, &source, &target),
                _ => cokernel_invariants(&g, &target),
            }
        }
        FunctorKind::Tor => {
            // apply - tensor B: Tor_1 -> B^rels -> B^gens -> A tensor B -> 0
            let source = Pres::power_of(b, rels_a);
            let target = Pres::power_of(b, gens_a);
            let width = b.rank() + b.presentation().cols();
            let g = ra.kron(&IntMatrix::identity(width));
            match i {
                0 => cokernel_invariants(&g, &target),
                _ => kernel_invariants(&g, &source, &target),
            }
        }
        _ => unreachable!("normalized before dispatch"),
    }
}
