//! Integer and rational utilities: factorization, squarefree parts, a prime
//! sieve, and rational reconstruction from intervals.

use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Simple sieve of Eratosthenes. Sufficient for desk-scale bounds (<= 10^6).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut p = 2;
    while p * p <= n {
        if is_prime[p] {
            let mut m = p * p;
            while m <= n {
                is_prime[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| is_prime[i]).map(|i| i as u64).collect()
}

/// Deterministic Miller-Rabin for u64 (the usual 12-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's variant; n must be odd, composite, not a prime power handled ok.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Factor a u64 into (prime, exponent) pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d * d <= n && d < 1_000_000 {
        while n.is_multiple_of(d) {
            push(d, &mut out);
            n /= d;
        }
        d += inc[i];
        i = (i + 1) % 8;
    }
    // Whatever is left is either 1, a prime, or a product of two large primes.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
        } else {
            let f = pollard_rho(m);
            stack.push(f);
            stack.push(m / f);
        }
    }
    out.sort_unstable();
    out
}

/// Factor the absolute value of a big integer. Trial division below 10^6,
/// then Pollard rho on u64-sized cofactors. Panics (with context) on a
/// composite cofactor above u64 range; desk-scale discriminants stay well
/// below that.
pub fn factor_int(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(Int, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let push = |p: Int, out: &mut Vec<(Int, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut d = 2u64;
    while d < 1_000_000 {
        let di = Int::from(d);
        if &di * &di > n {
            break;
        }
        while (&n % &di).is_zero() {
            push(di.clone(), &mut out);
            n /= &di;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if let Some(m) = n.to_u64() {
            for (p, e) in factor_u64(m) {
                for _ in 0..e {
                    push(Int::from(p), &mut out);
                }
            }
        } else {
            // Beyond u64: try a BigInt perfect-power/probable-prime shortcut.
            let s = n.sqrt();
            if &s * &s == n {
                for (p, e) in factor_int(&s) {
                    for _ in 0..(2 * e) {
                        push(p.clone(), &mut out);
                    }
                }
            } else if is_probable_prime(&n) {
                push(n.clone(), &mut out);
            } else {
                panic!("factor_int: composite cofactor {n} too large to factor at desk scale");
            }
        }
    }
    out.sort();
    out
}

/// Miller-Rabin with fixed witnesses; probabilistic for BigInt sizes.
fn is_probable_prime(n: &Int) -> bool {
    use num_traits::FromPrimitive;
    if n <= &Int::from(3) {
        return n >= &Int::from(2);
    }
    if (n % 2u8).is_zero() {
        return false;
    }
    let n_minus_1: Int = n - 1;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % 2u8).is_zero() {
        d /= 2u8;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = Int::from_u64(a).unwrap();
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&Int::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Squarefree decomposition n = s * t^2 with s squarefree carrying the sign.
/// Returns (s, t). For n = 0 returns (0, 1).
pub fn squarefree_decompose(n: &Int) -> (Int, Int) {
    if n.is_zero() {
        return (Int::zero(), Int::one());
    }
    let mut s = Int::one();
    let mut t = Int::one();
    for (p, e) in factor_int(n) {
        if e % 2 == 1 {
            s *= &p;
        }
        t *= p.pow(e / 2);
    }
    if n.is_negative() {
        s = -s;
    }
    (s, t)
}

/// Squarefree part of a nonzero rational: sf(a/b) = sf(a*b), so that
/// sqrt(a/b) = (t/b) * sqrt(s) with s squarefree and t = sqrt(a*b/s).
/// Returns (s, t/b) i.e. the squarefree radicand and the rational cofactor.
pub fn sqrt_decompose_rat(u: &Rat) -> (Int, Rat) {
    assert!(!u.is_zero(), "sqrt_decompose_rat: zero input");
    let ab = u.numer() * u.denom();
    let (s, t) = squarefree_decompose(&ab);
    (s, Rat::new(t, u.denom().clone()))
}

/// True iff the integer is squarefree (and nonzero).
pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Squarefree part of a nonzero i64, keeping the sign.
pub fn squarefree_part_i64(n: i64) -> i64 {
    let (s, _) = squarefree_decompose(&Int::from(n));
    s.to_i64().expect("squarefree part fits i64")
}

/// The rational with smallest denominator in the open interval (lo, hi).
/// Classical continued-fraction walk.
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    let zero = Rat::zero();
    if lo < &zero && hi > &zero {
        return zero;
    }
    if hi <= &zero {
        return -simplest_nonneg(&-hi.clone(), Some(&-lo.clone()));
    }
    if lo == &zero {
        // (0, hi): reciprocal of the smallest integer above 1/hi.
        return simplest_nonneg(&hi.recip(), None).recip();
    }
    simplest_nonneg(lo, Some(hi))
}

/// Simplest rational in (lo, hi) with 0 <= lo; `None` upper bound means +inf.
fn simplest_nonneg(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let n = lo.floor();
    let next = &n + Rat::one();
    match hi {
        None => next,
        Some(h) => {
            if next < *h {
                // next > lo holds since next = floor(lo)+1.
                return next;
            }
            let hi_f = h - &n;
            if lo.is_integer() {
                n + simplest_nonneg(&hi_f.recip(), None).recip()
            } else {
                let lo_f = lo - &n;
                n + simplest_nonneg(&hi_f.recip(), Some(&lo_f.recip())).recip()
            }
        }
    }
}
