//! Exact arithmetic in the 24th cyclotomic field Q(zeta_24), the smallest
//! field containing every character-table entry that occurs here
//! (i, sqrt(2), sqrt(-3), zeta_8). Elements are coordinate vectors over the
//! power basis 1, z, ..., z^7 with z^8 = z^4 - 1 (Phi_24 = x^8 - x^4 + 1).

use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::fmt;

const DIM: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct Cyc {
    c: [Rat; DIM],
}

fn zeros() -> [Rat; DIM] {
    std::array::from_fn(|_| Rat::zero())
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc { c: zeros() }
    }

    pub fn one() -> Cyc {
        Cyc::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Cyc {
        let mut c = zeros();
        c[0] = r;
        Cyc { c }
    }

    pub fn from_int(n: i64) -> Cyc {
        Cyc::from_rat(Rat::from_integer(Int::from(n)))
    }

    /// zeta_24^k for any k (reduced mod 24 and against Phi_24).
    pub fn zeta_pow(k: i64) -> Cyc {
        let k = k.rem_euclid(24) as usize;
        let mut raw = vec![Rat::zero(); 24];
        raw[k] = Rat::one();
        Cyc::reduce(raw)
    }

    /// i = zeta^6.
    pub fn i() -> Cyc {
        Cyc::zeta_pow(6)
    }

    /// sqrt(2) = zeta^3 + zeta^(-3).
    pub fn sqrt2() -> Cyc {
        Cyc::zeta_pow(3).add(&Cyc::zeta_pow(-3))
    }

    /// sqrt(3) = zeta^2 + zeta^(-2).
    pub fn sqrt3() -> Cyc {
        Cyc::zeta_pow(2).add(&Cyc::zeta_pow(-2))
    }

    /// sqrt(-3) = i sqrt(3) = 2 zeta^4 - 1.
    pub fn sqrt_m3() -> Cyc {
        Cyc::zeta_pow(4).scale(&crate::rat(2)).sub(&Cyc::one())
    }

    /// A primitive 8th root of unity, zeta_8 = zeta^3.
    pub fn zeta8() -> Cyc {
        Cyc::zeta_pow(3)
    }

    fn reduce(mut raw: Vec<Rat>) -> Cyc {
        // x^j = x^(j-4) - x^(j-8) for j >= 8.
        for j in (DIM..raw.len()).rev() {
            let v = std::mem::replace(&mut raw[j], Rat::zero());
            if v.is_zero() {
                continue;
            }
            raw[j - 4] = &raw[j - 4] + &v;
            raw[j - 8] = &raw[j - 8] - &v;
        }
        let mut c = zeros();
        c.clone_from_slice(&raw[..DIM]);
        Cyc { c }
    }

    pub fn coords(&self) -> &[Rat; DIM] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Cyc) -> Cyc {
        Cyc {
            c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]),
        }
    }

    pub fn sub(&self, rhs: &Cyc) -> Cyc {
        Cyc {
            c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]),
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyc {
        Cyc {
            c: std::array::from_fn(|k| &self.c[k] * r),
        }
    }

    pub fn mul(&self, rhs: &Cyc) -> Cyc {
        let mut raw = vec![Rat::zero(); 2 * DIM - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] = &raw[i + j] + a * b;
            }
        }
        Cyc::reduce(raw)
    }

    pub fn pow(&self, e: u32) -> Cyc {
        let mut acc = Cyc::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugation zeta -> zeta^(-1).
    pub fn conj(&self) -> Cyc {
        let mut acc = Cyc::zero();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&Cyc::zeta_pow(-(k as i64)).scale(a));
        }
        acc
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Human-readable rendering for the handful of values that occur in the
    /// tables; falls back to the coordinate vector.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rat() {
            return format!("{r}");
        }
        let units: [(&str, Cyc); 4] = [
            ("i", Cyc::i()),
            ("sqrt2", Cyc::sqrt2()),
            ("sqrt-3", Cyc::sqrt_m3()),
            ("sqrt3", Cyc::sqrt3()),
        ];
        for (name, u) in &units {
            if let Some(q) = ratio_of(self, u) {
                if q.is_one() {
                    return name.to_string();
                }
                if q == -Rat::one() {
                    return format!("-{name}");
                }
                return format!("{q}*{name}");
            }
        }
        let coords: Vec<String> = self.c.iter().map(|r| r.to_string()).collect();
        format!("cyc[{}]", coords.join(","))
    }
}

/// Some(q) iff a = q*b with q rational and b != 0.
fn ratio_of(a: &Cyc, b: &Cyc) -> Option<Rat> {
    let k = b.c.iter().position(|x| !x.is_zero())?;
    let q = &a.c[k] / &b.c[k];
    if &b.scale(&q) == a {
        Some(q)
    } else {
        None
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
