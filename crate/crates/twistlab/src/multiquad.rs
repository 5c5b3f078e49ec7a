//! Exact arithmetic in multiquadratic fields Q(sqrt(g_1), ..., sqrt(g_k))
//! with squarefree, multiplicatively independent generators (negative
//! radicands allowed). Elements are coordinate vectors over the product
//! basis { prod_{i in S} sqrt(g_i) : S subset of {1..k} }, so equality is
//! coordinatewise and every Galois conjugation is a sign pattern.
//!
//! Galois elements are represented as bitmasks: bit i set means the
//! automorphism negates sqrt(g_i). Composition is XOR.

use crate::arith::{sqrt_decompose_rat, squarefree_decompose};
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// A Galois element of a multiquadratic field, as a bitmask over generators.
pub type GalMask = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiQuadField {
    gens: Vec<i64>,
}

impl MultiQuadField {
    /// Build the field from raw radicands, reduced to squarefree parts and
    /// deduplicated modulo squares and products: a radicand already
    /// expressible as a square times a product of earlier generators is
    /// dropped.
    pub fn new(raw: &[i64]) -> MultiQuadField {
        let mut field = MultiQuadField { gens: Vec::new() };
        for &g in raw {
            field.try_adjoin(g);
        }
        field
    }

    /// Adjoin sqrt(g) if independent; returns true if the generator list grew.
    pub fn try_adjoin(&mut self, g: i64) -> bool {
        assert!(g != 0, "zero radicand");
        let (s, _) = squarefree_decompose(&Int::from(g));
        let s: i64 = (&s).try_into().expect("squarefree part fits i64");
        if self.contains_sqrt_class(s) {
            return false;
        }
        self.gens.push(s);
        true
    }

    /// True iff sqrt(s) already lies in the field (s squarefree).
    pub fn contains_sqrt_class(&self, s: i64) -> bool {
        self.subset_with_class(s).is_some()
    }

    /// The subset of generators whose product has squarefree part s.
    fn subset_with_class(&self, s: i64) -> Option<u32> {
        for mask in 0..(1u32 << self.gens.len()) {
            let (sf, _) = squarefree_decompose(&self.subset_product(mask));
            if sf == Int::from(s) {
                return Some(mask);
            }
        }
        None
    }

    fn subset_product(&self, mask: u32) -> Int {
        let mut prod = Int::one();
        for (i, &g) in self.gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod *= Int::from(g);
            }
        }
        prod
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        1 << self.gens.len()
    }

    /// All Galois elements (sign masks), identity first.
    pub fn galois_group(&self) -> Vec<GalMask> {
        (0..(1u32 << self.gens.len())).collect()
    }

    pub fn zero(&self) -> MqElem {
        MqElem {
            field: self.clone(),
            c: vec![Rat::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> MqElem {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> MqElem {
        let mut c = vec![Rat::zero(); self.degree()];
        c[0] = r;
        MqElem {
            field: self.clone(),
            c,
        }
    }

    /// sqrt(r) as a field element, if the squarefree part of r is a product
    /// of generator classes. The branch is the formal positive one: the
    /// element with positive coordinate on the chosen basis vector.
    pub fn sqrt_of(&self, r: &Rat) -> Option<MqElem> {
        let (s, cof) = sqrt_decompose_rat(r);
        let s: i64 = (&s).try_into().ok()?;
        let mask = self.subset_with_class(s)?;
        // basis_mask = sqrt(prod_S g) = t' * sqrt(s), so sqrt(s) = basis_mask / t'.
        let (_, tp) = squarefree_decompose(&self.subset_product(mask));
        let mut c = vec![Rat::zero(); self.degree()];
        c[mask as usize] = cof / Rat::from_integer(tp);
        Some(MqElem {
            field: self.clone(),
            c,
        })
    }
}

/// Element of a multiquadratic field.
#[derive(Clone, PartialEq, Eq)]
pub struct MqElem {
    field: MultiQuadField,
    /// Coordinate on basis vector S at index S (bitmask over generators).
    c: Vec<Rat>,
}

impl MqElem {
    pub fn field(&self) -> &MultiQuadField {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Some(r) iff the element is rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &MqElem) -> MqElem {
        debug_assert_eq!(self.field, rhs.field);
        MqElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &MqElem) -> MqElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MqElem {
        MqElem {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, rhs: &MqElem) -> MqElem {
        debug_assert_eq!(self.field, rhs.field);
        let dim = self.c.len();
        let mut out = vec![Rat::zero(); dim];
        for (s, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // basis_S * basis_T = (prod_{i in S cap T} g_i) * basis_{S xor T}
                let scale = self.field.subset_product((s & t) as u32);
                let idx = s ^ t;
                out[idx] = &out[idx] + a * b * Rat::from_integer(scale);
            }
        }
        MqElem {
            field: self.field.clone(),
            c: out,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> MqElem {
        MqElem {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * r).collect(),
        }
    }

    /// Apply a Galois element: negates sqrt(g_i) for each set bit of sigma.
    pub fn conj(&self, sigma: GalMask) -> MqElem {
        MqElem {
            field: self.field.clone(),
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(s, a)| {
                    if (s as u32 & sigma).count_ones() % 2 == 1 {
                        -a
                    } else {
                        a.clone()
                    }
                })
                .collect(),
        }
    }

    /// Field norm: the product over all Galois conjugates; always rational.
    pub fn norm(&self) -> Rat {
        let mut prod = self.field.one();
        for sigma in self.field.galois_group() {
            prod = prod.mul(&self.conj(sigma));
        }
        prod.as_rat()
            .expect("product over the full Galois orbit is rational")
    }

    /// Multiplicative inverse; panics on zero (a bug at the call sites, which
    /// all construct from nonzero radicands).
    pub fn inv(&self) -> MqElem {
        assert!(!self.is_zero(), "inverting zero field element");
        let mut cof = self.field.one();
        for sigma in self.field.galois_group().into_iter().skip(1) {
            cof = cof.mul(&self.conj(sigma));
        }
        let n = self.mul(&cof).as_rat().expect("norm is rational");
        assert!(
            !n.is_zero(),
            "zero norm: generators were not independent modulo squares"
        );
        cof.mul_rat(&n.recip())
    }
}

impl fmt::Debug for MqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if s == 0 {
                parts.push(format!("{a}"));
            } else {
                let rad: Vec<String> = self
                    .field
                    .gens()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .map(|(_, g)| format!("r({g})"))
                    .collect();
                parts.push(format!("({a})*{}", rad.join("*")));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}
