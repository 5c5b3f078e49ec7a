//! Arithmetic in prime fields F_p and quadratic extensions F_{p^2}, plus
//! quadratic-residue machinery. This is the substrate for point counting;
//! everything is immutable and pure.
//!
//! Moduli are restricted to 63 bits so that products fit in u128
//! intermediates; desk-scale prime ranges need no more.

use crate::arith::{mul_mod_u64, pow_mod_u64};
use crate::{Error, Result};

/// Element of F_p, p an odd prime (primality is caller-asserted; the
/// constructor only rejects p = 2 and p not passing a cheap primality test).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub value: u64,
    pub p: u64,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || p >= (1 << 63) || !crate::arith::is_prime_u64(p) {
        return Err(Error::BadModulus(p));
    }
    Ok(())
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Result<Fp> {
        check_odd_prime(p)?;
        Ok(Self::reduce(value, p))
    }

    /// Reduce a signed integer mod p without revalidating p.
    pub fn reduce(value: i64, p: u64) -> Fp {
        let m = value.rem_euclid(p as i64) as u64;
        Fp { value: m, p }
    }

    pub fn zero(p: u64) -> Fp {
        Fp { value: 0, p }
    }

    pub fn one(p: u64) -> Fp {
        Fp { value: 1, p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, rhs: &Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        Fp { value: v, p: self.p }
    }

    pub fn sub(&self, rhs: &Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Fp { value: v, p: self.p }
    }

    pub fn neg(&self) -> Fp {
        Fp::zero(self.p).sub(self)
    }

    pub fn mul(&self, rhs: &Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: mul_mod_u64(self.value, rhs.value, self.p),
            p: self.p,
        }
    }

    pub fn pow(&self, e: u64) -> Fp {
        Fp {
            value: pow_mod_u64(self.value, e, self.p),
            p: self.p,
        }
    }

    pub fn inv(&self) -> Result<Fp> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }
}

/// Legendre symbol (a/p) in {-1, 0, +1}, by Euler's criterion.
///
/// p must be an odd prime; primality itself is only sanity-checked, the
/// caller is expected to supply primes from a sieve.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    check_odd_prime(p)?;
    Ok(legendre_unchecked(a, p))
}

/// Legendre symbol without the primality check, for hot loops over sieved p.
pub fn legendre_unchecked(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = pow_mod_u64(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Smallest positive non-residue mod p.
pub fn find_nonresidue(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    for n in 2..p {
        if legendre_unchecked(n as i64, p) == -1 {
            return Ok(n);
        }
    }
    unreachable!("an odd prime field always contains a non-residue")
}

/// Element a + b*w of F_{p^2} where w^2 = n for the fixed smallest
/// non-residue n mod p. Frobenius is (a + b*w)^p = a - b*w.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    pub a: Fp,
    pub b: Fp,
    /// The non-residue n with w^2 = n.
    pub n: u64,
}

/// Context for F_{p^2} arithmetic: the prime and its canonical non-residue.
#[derive(Debug, Clone, Copy)]
pub struct Fp2Ctx {
    pub p: u64,
    pub n: u64,
}

impl Fp2Ctx {
    pub fn new(p: u64) -> Result<Fp2Ctx> {
        let n = find_nonresidue(p)?;
        Ok(Fp2Ctx { p, n })
    }

    pub fn embed(&self, a: Fp) -> Fp2 {
        Fp2 {
            a,
            b: Fp::zero(self.p),
            n: self.n,
        }
    }

    pub fn from_parts(&self, a: u64, b: u64) -> Fp2 {
        Fp2 {
            a: Fp { value: a, p: self.p },
            b: Fp { value: b, p: self.p },
            n: self.n,
        }
    }
}

impl Fp2 {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Fp2) -> Fp2 {
        Fp2 {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
            n: self.n,
        }
    }

    pub fn sub(&self, rhs: &Fp2) -> Fp2 {
        Fp2 {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
            n: self.n,
        }
    }

    pub fn mul(&self, rhs: &Fp2) -> Fp2 {
        // (a1 + b1 w)(a2 + b2 w) = a1 a2 + n b1 b2 + (a1 b2 + a2 b1) w
        let p = self.a.p;
        let nn = Fp { value: self.n % p, p };
        let a = self.a.mul(&rhs.a).add(&nn.mul(&self.b.mul(&rhs.b)));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        Fp2 { a, b, n: self.n }
    }

    /// Conjugate a - b*w, i.e. the Frobenius x -> x^p.
    pub fn conj(&self) -> Fp2 {
        Fp2 {
            a: self.a,
            b: self.b.neg(),
            n: self.n,
        }
    }

    /// Norm to F_p: x * conj(x) = a^2 - n b^2.
    pub fn norm(&self) -> Fp {
        let p = self.a.p;
        let nn = Fp { value: self.n % p, p };
        self.a.mul(&self.a).sub(&nn.mul(&self.b.mul(&self.b)))
    }

    pub fn pow(&self, mut e: u64) -> Fp2 {
        let p = self.a.p;
        let mut acc = Fp2 {
            a: Fp::one(p),
            b: Fp::zero(p),
            n: self.n,
        };
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Fp2> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/x = conj(x)/Norm(x)
        let ninv = self.norm().inv()?;
        let c = self.conj();
        Ok(Fp2 {
            a: c.a.mul(&ninv),
            b: c.b.mul(&ninv),
            n: self.n,
        })
    }

    /// Quadratic character of F_{p^2}^*: x is a square iff its norm is a
    /// square in F_p^*. Returns 0 for x = 0.
    pub fn chi(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        legendre_unchecked(self.norm().value as i64, self.a.p)
    }
}
