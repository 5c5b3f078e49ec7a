//! Dense univariate polynomials, generic over the coefficient ring via
//! num-traits bounds. Concrete aliases (`RatPoly`, `IntPoly`) live at the
//! crate root.
//!
//! The local-factor algebra works with polynomials normalized to constant
//! term 1, whose reciprocal roots are algebraic integers; power sums and the
//! Rankin-Selberg tensor product are computed through Newton's identities
//! without ever extracting roots.

use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::Neg;

/// Coefficient-ring bound assembled from num-traits.
pub trait Ring: Clone + PartialEq + Zero + One + Neg<Output = Self> {}
impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> {}

/// Polynomial with coefficients in ascending degree order; trailing zeros are
/// trimmed so the representation is canonical (zero = empty list).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<T: Ring> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Polynomial { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.clone().neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// P(-x): flips the sign of odd coefficients.
    pub fn alternate(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.clone().neg() } else { c.clone() })
                .collect(),
        )
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*T"),
                _ => format!("({c})*T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Field-coefficient algorithms (division, gcd, Sturm)
// ---------------------------------------------------------------------------

impl Polynomial<Rat> {
    /// Derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(Int::from(i as i64 + 1)))
                .collect(),
        )
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lc;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(div.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&Self::new(sub));
        }
        (Self::new(quot), rem)
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Squarefree part p / gcd(p, p').
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Exact division: Some(q) iff self = q * div.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Resultant of the two polynomials, by the Euclidean recursion.
    pub fn resultant(&self, other: &Self) -> Rat {
        fn res(a: &Polynomial<Rat>, b: &Polynomial<Rat>) -> Rat {
            let m = a.degree().expect("resultant of zero polynomial");
            match b.degree() {
                None => Rat::zero(),
                Some(0) => {
                    // Res(A, c) = c^deg A
                    num_traits::pow::pow(b.coeff(0), m)
                }
                Some(n) => {
                    let (_, r) = a.div_rem(b);
                    let rd = r.degree().map_or(0, |d| d);
                    let lc = b.leading().unwrap().clone();
                    let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
                    if r.is_zero() {
                        return Rat::zero();
                    }
                    let scale = num_traits::pow::pow(lc, m - rd);
                    sign * scale * res(b, &r)
                }
            }
        }
        res(self, other)
    }

    /// Discriminant of a polynomial of degree n >= 1:
    /// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Rat {
        let n = self.degree().expect("discriminant of zero polynomial");
        assert!(n >= 1);
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        sign * r / self.leading().unwrap()
    }

    /// Convert to an integer polynomial if all coefficients are integral.
    pub fn to_int(&self) -> Option<Polynomial<Int>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(Polynomial::new(out))
    }

    /// Clear denominators: returns the primitive integer polynomial with the
    /// same roots (content and sign of the leading coefficient preserved as
    /// positive leading coefficient).
    pub fn clear_denominators(&self) -> Polynomial<Int> {
        use num_integer::Integer as _;
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut l = Int::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let mut out: Vec<Int> = ints.into_iter().map(|c| c / &g).collect();
        if out.last().unwrap().is_negative() {
            out = out.into_iter().map(|c| -c).collect();
        }
        Polynomial::new(out)
    }
}

impl Polynomial<Int> {
    pub fn to_rat(&self) -> Polynomial<Rat> {
        self.map(|c| Rat::from_integer(c.clone()))
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// Exact divisibility test in Z[T].
    pub fn divides(&self, other: &Polynomial<Int>) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        match other.to_rat().exact_div(&self.to_rat()) {
            None => false,
            Some(q) => q.to_int().is_some(),
        }
    }
}

// ---------------------------------------------------------------------------
// Power sums and the Rankin-Selberg tensor product
// ---------------------------------------------------------------------------

/// Power sums p_k = sum alpha_i^k of the reciprocal roots of P, for
/// k = 1..=k_max, computed by Newton's identities. Requires P(0) = 1.
pub fn power_sums(p: &Polynomial<Rat>, k_max: usize) -> Vec<Rat> {
    assert!(
        p.coeff(0).is_one(),
        "power_sums requires constant term 1, got {:?}",
        p.coeff(0)
    );
    let n = p.degree().unwrap_or(0);
    // P(T) = prod (1 - alpha_i T) => coeff c_k = (-1)^k e_k.
    let e = |k: usize| -> Rat {
        if k > n {
            Rat::zero()
        } else if k.is_multiple_of(2) {
            p.coeff(k)
        } else {
            -p.coeff(k)
        }
    };
    let mut ps: Vec<Rat> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        // p_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k
        let mut acc = Rat::zero();
        for i in 1..k {
            let term = e(i) * &ps[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = e(k) * Rat::from_integer(Int::from(k as i64));
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        ps.push(acc);
    }
    ps
}

/// Reconstruct the degree-n polynomial with constant term 1 whose reciprocal
/// roots have the given power sums (inverse Newton).
pub fn from_power_sums(ps: &[Rat], n: usize) -> Polynomial<Rat> {
    assert!(ps.len() >= n);
    let mut e: Vec<Rat> = vec![Rat::one()];
    for k in 1..=n {
        // e_k = (1/k) sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i
        let mut acc = Rat::zero();
        for i in 1..=k {
            let term = &e[k - i] * &ps[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rat::from_integer(Int::from(k as i64)));
    }
    let coeffs: Vec<Rat> = e
        .into_iter()
        .enumerate()
        .map(|(k, ek)| if k % 2 == 1 { -ek } else { ek })
        .collect();
    Polynomial::new(coeffs)
}

/// Rankin-Selberg tensor product: the polynomial of degree deg(P)*deg(Q) and
/// constant term 1 whose reciprocal roots are all products of a reciprocal
/// root of P and one of Q. Exact; panics if the reconstruction is not
/// integral (impossible for constant-term-1 integer inputs, whose reciprocal
/// roots are algebraic integers).
pub fn tensor_product(p: &Polynomial<Int>, q: &Polynomial<Int>) -> Polynomial<Int> {
    assert!(p.coeff(0).is_one() && q.coeff(0).is_one(), "tensor_product requires constant term 1");
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let mn = m * n;
    if mn == 0 {
        return Polynomial::one();
    }
    let pp = power_sums(&p.to_rat(), mn);
    let qq = power_sums(&q.to_rat(), mn);
    let rr: Vec<Rat> = pp.iter().zip(qq.iter()).map(|(a, b)| a * b).collect();
    let r = from_power_sums(&rr, mn);
    r.to_int()
        .expect("tensor product of integral local factors must be integral")
}

// ---------------------------------------------------------------------------
// Sturm sequences and rational root extraction
// ---------------------------------------------------------------------------

/// Sturm chain of a squarefree rational polynomial. Every link is scaled to
/// a primitive integer polynomial (a positive factor, so sign sequences are
/// unchanged); without this the remainder coefficients explode.
fn sturm_chain(p: &Polynomial<Rat>) -> Vec<Polynomial<Rat>> {
    let normalize = |q: &Polynomial<Rat>| -> Polynomial<Rat> {
        if q.is_zero() {
            return q.clone();
        }
        let prim = q.clear_denominators();
        let flip = q.leading().unwrap().is_negative() != prim.leading().unwrap().is_negative();
        let out = prim.to_rat();
        if flip {
            out.neg()
        } else {
            out
        }
    };
    let mut chain = vec![normalize(p), normalize(&p.derivative())];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(normalize(&r.neg()));
    }
    chain.pop();
    chain
}

fn sign_variations(chain: &[Polynomial<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // true = positive
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots of the squarefree p in the half-open
/// interval (a, b].
fn roots_in(chain: &[Polynomial<Rat>], a: &Rat, b: &Rat) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// All rational roots of an integer polynomial whose denominators do not
/// exceed `den_bound`, found by Sturm isolation plus continued-fraction
/// reconstruction with exact verification. Roots with larger denominators
/// (in particular irrational roots) are ignored.
pub fn rational_roots(p: &Polynomial<Int>, den_bound: &Int) -> Vec<Rat> {
    let mut out = Vec::new();
    if p.is_zero() {
        return out;
    }
    let mut q = p.to_rat();
    // Strip roots at zero.
    let mut has_zero = false;
    while q.coeff(0).is_zero() && !q.is_zero() {
        has_zero = true;
        q = Polynomial::new(q.coeffs()[1..].to_vec());
    }
    if has_zero {
        out.push(Rat::zero());
    }
    if q.degree().unwrap_or(0) == 0 {
        return out;
    }
    let q = q.squarefree_part();
    let chain = sturm_chain(&q);
    // Cauchy bound on root magnitudes.
    let lc = q.leading().unwrap().clone();
    let mut big = Rat::zero();
    for c in q.coeffs() {
        let t = (c / &lc).abs();
        if t > big {
            big = t;
        }
    }
    let bound = big + Rat::one() + Rat::one();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = roots_in(&chain, &a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 {
            if let Some(r) = refine_to_rational(&q, &chain, a, b, den_bound) {
                if !r.is_zero() {
                    out.push(r);
                }
            }
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(Int::from(2));
        if q.eval(&mid).is_zero() {
            // mid is a root; count it and split around it.
            out.push(mid.clone());
            // Perturb by a width smaller than the root separation implied by
            // continued bisection.
            let eps = (&b - &a) / Rat::from_integer(Int::from(1 << 20));
            stack.push((a, &mid - &eps));
            stack.push((&mid + &eps, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Shrink (a, b] around its unique root; at each stage test the simplest
/// rational in the interval. Gives up once that rational's denominator
/// exceeds the bound (the root is then irrational or too complicated).
fn refine_to_rational(
    q: &Polynomial<Rat>,
    chain: &[Polynomial<Rat>],
    mut a: Rat,
    mut b: Rat,
    den_bound: &Int,
) -> Option<Rat> {
    if q.eval(&b).is_zero() {
        return if b.is_integer() || b.denom() <= den_bound {
            Some(b)
        } else {
            None
        };
    }
    let two = Rat::from_integer(Int::from(2));
    loop {
        let cand = crate::arith::simplest_in_interval(&a, &b);
        if q.eval(&cand).is_zero() {
            return Some(cand);
        }
        if cand.denom() > den_bound {
            return None;
        }
        let mid = (&a + &b) / &two;
        if q.eval(&mid).is_zero() {
            return Some(mid);
        }
        if roots_in(chain, &a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
}
