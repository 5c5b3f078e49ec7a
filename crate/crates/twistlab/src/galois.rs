//! Frobenius and ramification data in multiquadratic fields, and evaluation
//! of theta composed with the quadratic-twist cocycle at Frobenius elements.

use crate::curves::Family;
use crate::groups::{build_twisting_group, QuadraticCocycle, TwistingGroup};
use crate::modular::legendre_unchecked;
use crate::multiquad::{GalMask, MultiQuadField};
use crate::{Error, IntPoly, Mat4, Rat, Result};
use std::collections::BTreeSet;

/// Frobenius at an unramified prime: one Legendre sign per field generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusClass {
    pub signs: Vec<i32>,
    pub mask: GalMask,
}

/// 2 together with every prime dividing a generator. Frobenius is only
/// defined away from these.
pub fn ramified_primes(field: &MultiQuadField) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    out.insert(2);
    for &g in field.gens() {
        for (p, _) in crate::arith::factor_u64(g.unsigned_abs()) {
            out.insert(p);
        }
    }
    out
}

pub fn is_unramified(field: &MultiQuadField, p: u64) -> bool {
    p != 2 && field.gens().iter().all(|&g| g % p as i64 != 0)
}

/// The Frobenius element at p as a sign vector (legendre(g_i, p))_i, i.e. the
/// Galois mask negating exactly the generators that are non-residues mod p.
pub fn frobenius(field: &MultiQuadField, p: u64) -> Result<FrobeniusClass> {
    if !is_unramified(field, p) {
        return Err(Error::RamifiedPrime(p));
    }
    let mut mask: GalMask = 0;
    let mut signs = Vec::with_capacity(field.gens().len());
    for (i, &g) in field.gens().iter().enumerate() {
        let s = legendre_unchecked(g, p);
        debug_assert!(s != 0);
        signs.push(s);
        if s == -1 {
            mask |= 1 << i;
        }
    }
    Ok(FrobeniusClass { signs, mask })
}

/// Residue class degree of p in a multiquadratic field: 1 on totally split
/// primes, else 2.
pub fn residue_degree(fc: &FrobeniusClass) -> u32 {
    if fc.mask == 0 {
        1
    } else {
        2
    }
}

/// A family curve parameter together with a quadratic-twist cocycle source:
/// the twisting group of C_u and, for d != 1, the monomorphism
/// Gal(L/Q) -> G_C with L = K(sqrt d).
pub struct TwistSetting {
    pub group: TwistingGroup,
    pub d: i64,
    cocycle: Option<QuadraticCocycle>,
}

impl TwistSetting {
    /// d = 1 is the trivial twist (L = K); other d must be squarefree with
    /// sqrt(d) outside K.
    pub fn new(family: Family, u: &Rat, d: i64) -> Result<TwistSetting> {
        let group = build_twisting_group(family, u)?;
        let cocycle = if d == 1 {
            None
        } else {
            Some(group.lambda_phi_quadratic(d)?)
        };
        Ok(TwistSetting { group, d, cocycle })
    }

    /// The field L where all isomorphisms C' -> C are defined.
    pub fn l_field(&self) -> &MultiQuadField {
        match &self.cocycle {
            Some(c) => &c.field,
            None => &self.group.aut.field,
        }
    }

    pub fn is_unramified(&self, p: u64) -> bool {
        is_unramified(self.l_field(), p)
    }

    /// Element of G_C that Frob_p maps to under lambda_phi.
    pub fn frobenius_elem(&self, p: u64) -> Result<usize> {
        let fc = frobenius(self.l_field(), p)?;
        Ok(match &self.cocycle {
            Some(c) => c.map[fc.mask as usize],
            None => self.group.elem(0, fc.mask as usize),
        })
    }

    /// Residue class degree of p in K (not L).
    pub fn residue_degree_in_k(&self, p: u64) -> Result<u32> {
        let fc = frobenius(&self.group.aut.field, p)?;
        Ok(residue_degree(&fc))
    }

    /// M = theta(lambda_phi(Frob_p)) and det(1 - M T).
    pub fn theta_at_frobenius(&self, p: u64) -> Result<(Mat4, IntPoly)> {
        let e = self.frobenius_elem(p)?;
        let m = self.group.theta[e].clone();
        let poly = m.reciprocal_charpoly();
        Ok((m, poly))
    }
}

/// One-shot form of the evaluation: builds the group, applies the cocycle,
/// and also insists that p is good for the family curve.
pub fn theta_at_frobenius(
    family: Family,
    u: &Rat,
    d: i64,
    p: u64,
) -> Result<(Mat4, IntPoly)> {
    let curve = match family {
        Family::D8 => crate::curves::d8_curve(u)?,
        Family::D12 => crate::curves::d12_curve(u)?,
    };
    if !curve.is_good_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let setting = TwistSetting::new(family, u, d)?;
    setting.theta_at_frobenius(p)
}
