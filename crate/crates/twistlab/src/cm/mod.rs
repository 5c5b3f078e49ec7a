//! Complex-multiplication detection for the elliptic quotients of the family
//! curves: exact evaluation of the published j-invariant formulas in
//! Q(sqrt u), membership tests against the class-number <= 2 Hilbert class
//! polynomial table, and the scan reproducing the finite CM exclusion lists.

mod hilbert;
#[cfg(test)]
pub(crate) mod oracle;

use crate::curves::Family;
use crate::poly::{rational_roots, Polynomial};
use crate::{rat, ratio, Error, Int, Rat, RatPoly, Result};
use num_traits::{One, Zero};

pub use hilbert::{cm_table, CmEntry};

/// Exact element a + b sqrt(m) of a quadratic field (m squarefree; m = 1
/// means the element is rational and b is folded into a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rat,
    pub b: Rat,
    pub m: i64,
}

impl QuadSurd {
    pub fn new(a: Rat, b: Rat, m: i64) -> QuadSurd {
        if m == 1 || b.is_zero() {
            QuadSurd {
                a: a + b * rat(if m == 1 { 1 } else { 0 }),
                b: Rat::zero(),
                m: 1,
            }
        } else {
            QuadSurd { a, b, m }
        }
    }

    pub fn from_rat(a: Rat) -> QuadSurd {
        QuadSurd::new(a, Rat::zero(), 1)
    }

    /// sqrt(u) as a quadratic surd: (t/den) sqrt(s) for u = s (t/den)^2.
    pub fn sqrt_of(u: &Rat) -> QuadSurd {
        let (s, cof) = crate::arith::sqrt_decompose_rat(u);
        let s: i64 = (&s).try_into().expect("desk-scale radicand");
        if s == 1 {
            QuadSurd::from_rat(cof)
        } else {
            QuadSurd::new(Rat::zero(), cof, s)
        }
    }

    fn same_field(&self, rhs: &QuadSurd) -> i64 {
        if self.m == 1 {
            rhs.m
        } else if rhs.m == 1 || rhs.m == self.m {
            self.m
        } else {
            panic!("mixing distinct quadratic fields: {} vs {}", self.m, rhs.m)
        }
    }

    pub fn add(&self, rhs: &QuadSurd) -> QuadSurd {
        let m = self.same_field(rhs);
        QuadSurd::new(&self.a + &rhs.a, &self.b + &rhs.b, m)
    }

    pub fn sub(&self, rhs: &QuadSurd) -> QuadSurd {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> QuadSurd {
        QuadSurd::new(-&self.a, -&self.b, self.m)
    }

    pub fn mul(&self, rhs: &QuadSurd) -> QuadSurd {
        let m = self.same_field(rhs);
        QuadSurd::new(
            &self.a * &rhs.a + &self.b * &rhs.b * rat(m),
            &self.a * &rhs.b + &self.b * &rhs.a,
            m,
        )
    }

    pub fn scale(&self, r: &Rat) -> QuadSurd {
        QuadSurd::new(&self.a * r, &self.b * r, self.m)
    }

    pub fn conj(&self) -> QuadSurd {
        QuadSurd::new(self.a.clone(), -&self.b, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Result<QuadSurd> {
        // 1/(a + b sqrt m) = (a - b sqrt m)/(a^2 - m b^2)
        let n = &self.a * &self.a - &self.b * &self.b * rat(self.m);
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, rhs: &QuadSurd) -> Result<QuadSurd> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u32) -> QuadSurd {
        let mut acc = QuadSurd::from_rat(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

impl std::fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.m)
        }
    }
}

/// The two sign choices in the published j-invariant formulas for the
/// elliptic quotient (the two quotient curves).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientSign {
    /// Upper signs: (3 - 10 sqrt u), denominator (1 - 2 sqrt u)(1 + 2 sqrt u)^k.
    Minus,
    /// Lower signs.
    Plus,
}

impl QuotientSign {
    pub fn both() -> [QuotientSign; 2] {
        [QuotientSign::Minus, QuotientSign::Plus]
    }
}

/// j-invariant of the elliptic quotient of the family curve:
///   D8:  j = 2^6 (3 -+ 10 su)^3 / ((1 -+ 2 su)(1 +- 2 su)^2)
///   D12: j = 2^8 3^3 (2 -+ 5 su)^3 (+- su) / ((1 -+ 2 su)(1 +- 2 su)^3)
/// with su = sqrt(u). Rejects the pole u = 1/4.
pub fn j_quotient(family: Family, u: &Rat, sign: QuotientSign) -> Result<QuadSurd> {
    if u.is_zero() {
        return Err(Error::ExcludedParameter {
            family: family.name(),
            u: u.to_string(),
            reason: "u must be nonzero",
        });
    }
    if *u == ratio(1, 4) {
        return Err(Error::ExcludedParameter {
            family: family.name(),
            u: u.to_string(),
            reason: "pole of the quotient j-invariant",
        });
    }
    let su = QuadSurd::sqrt_of(u);
    let su = match sign {
        QuotientSign::Minus => su,
        QuotientSign::Plus => su.neg(),
    };
    let one = QuadSurd::from_rat(Rat::one());
    let two_su = su.scale(&rat(2));
    match family {
        Family::D8 => {
            let three_minus = QuadSurd::from_rat(rat(3)).sub(&su.scale(&rat(10)));
            let num = three_minus.pow(3).scale(&rat(64));
            let den = one
                .sub(&two_su)
                .mul(&one.add(&two_su).pow(2));
            num.div(&den)
        }
        Family::D12 => {
            let two_minus = QuadSurd::from_rat(rat(2)).sub(&su.scale(&rat(5)));
            let num = two_minus.pow(3).mul(&su).scale(&rat(256 * 27));
            let den = one
                .sub(&two_su)
                .mul(&one.add(&two_su).pow(3));
            num.div(&den)
        }
    }
}

/// H_D(j) evaluated exactly in Q(sqrt m); Some(D) for the first table entry
/// that vanishes.
pub fn is_cm_j(j: &QuadSurd) -> Option<i64> {
    for entry in cm_table() {
        let mut acc = QuadSurd::from_rat(Rat::zero());
        for c in entry.coeffs.iter().rev() {
            acc = acc.mul(j).add(&QuadSurd::from_rat(Rat::from_integer(c.clone())));
        }
        if acc.is_zero() {
            return Some(entry.d);
        }
    }
    None
}

/// Some(D) iff the elliptic quotient of the family curve at u has CM (either
/// sign choice; both quotients are isogenous so either witnesses CM).
pub fn family_cm_discriminant(family: Family, u: &Rat) -> Option<i64> {
    if u.is_zero() || *u == ratio(1, 4) {
        return None;
    }
    for sign in QuotientSign::both() {
        if let Ok(j) = j_quotient(family, u, sign) {
            if let Some(d) = is_cm_j(&j) {
                return Some(d);
            }
        }
    }
    None
}

/// Numerator and denominator of the j formula as integer polynomials in
/// s = sqrt(u).
fn j_as_rational_function(family: Family, sign: QuotientSign) -> (RatPoly, RatPoly) {
    let s = match sign {
        QuotientSign::Minus => RatPoly::x(),
        QuotientSign::Plus => RatPoly::x().neg(),
    };
    let one = RatPoly::one();
    let two_s = s.scale(&rat(2));
    match family {
        Family::D8 => {
            let num = one
                .scale(&rat(3))
                .sub(&s.scale(&rat(10)))
                .pow(3)
                .scale(&rat(64));
            let den = one.sub(&two_s).mul(&one.add(&two_s).pow(2));
            (num, den)
        }
        Family::D12 => {
            let num = one
                .scale(&rat(2))
                .sub(&s.scale(&rat(5)))
                .pow(3)
                .mul(&s)
                .scale(&rat(256 * 27));
            let den = one.sub(&two_s).mul(&one.add(&two_s).pow(3));
            (num, den)
        }
    }
}

/// All rational u for which some sign choice of the quotient j-invariant is
/// a root of some Hilbert polynomial in the table; excluded parameter values
/// are dropped and every emitted u is re-verified exactly.
pub fn cm_scan(family: Family) -> Vec<Rat> {
    // The published lists have u-denominators up to 4*10^8 (so sqrt(u)
    // denominators up to 2*10^4); these bounds leave a wide margin and cap
    // the continued-fraction refinement.
    let den_bound_u = Int::from(10_000_000_000i64);
    let den_bound_s = Int::from(1_000_000i64);
    let mut candidates: Vec<Rat> = Vec::new();
    for entry in cm_table() {
        for sign in QuotientSign::both() {
            let (num, den) = j_as_rational_function(family, sign);
            // P(s) = H_D(N/M) * M^h, an integer polynomial in s = sqrt u.
            let h = entry.coeffs.len() - 1;
            let mut p = RatPoly::zero();
            for (k, c) in entry.coeffs.iter().enumerate() {
                let term = num
                    .pow(k as u32)
                    .mul(&den.pow((h - k) as u32))
                    .scale(&Rat::from_integer(c.clone()));
                p = p.add(&term);
            }
            let p = p.clear_denominators();
            // Rational roots s0 give u = s0^2.
            for s0 in rational_roots(&p, &den_bound_s) {
                candidates.push(&s0 * &s0);
            }
            // Roots with s irrational but s^2 = u rational: s^2 - u divides P,
            // i.e. u is a common rational root of the even and odd parts.
            // The two signs give conjugate j-values, hence the same u's here;
            // one sign suffices.
            if sign == QuotientSign::Plus {
                continue;
            }
            let even: Vec<Rat> = p.coeffs().iter().step_by(2).map(|c| Rat::from_integer(c.clone())).collect();
            let odd: Vec<Rat> = p.coeffs().iter().skip(1).step_by(2).map(|c| Rat::from_integer(c.clone())).collect();
            let e = Polynomial::new(even);
            let o = Polynomial::new(odd);
            if e.is_zero() || o.is_zero() {
                // One part vanishes identically: common roots are the roots
                // of the other part.
                let g = if e.is_zero() { o } else { e };
                for u0 in rational_roots(&g.clear_denominators(), &den_bound_u) {
                    candidates.push(u0);
                }
            } else {
                let g = e.gcd(&o);
                if g.degree().unwrap_or(0) >= 1 {
                    for u0 in rational_roots(&g.clear_denominators(), &den_bound_u) {
                        candidates.push(u0);
                    }
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .filter(|u| {
            !u.is_zero()
                && *u != ratio(1, 4)
                && *u != match family {
                    Family::D8 => ratio(9, 100),
                    Family::D12 => ratio(-1, 50),
                }
                && family_cm_discriminant(family, u).is_some()
        })
        .collect()
}

/// The published exclusion lists, exactly as printed (the D8 list contains
/// the entry 6480/25920, which is 1/4 in lowest terms - the excluded pole).
pub fn published_cm_list(family: Family) -> Vec<(&'static str, Rat)> {
    let raw: &[&str] = match family {
        Family::D8 => &[
            "81/196",
            "3969/16900",
            "-81/700",
            "1/5",
            "9/32",
            "12/49",
            "81/320",
            "81/325",
            "2401/9600",
            "9801/39200",
            "6480/25920",
            "194481/777925",
            "96059601/384238400",
        ],
        Family::D12 => &[
            "4/25",
            "-4/11",
            "1/20",
            "1/2",
            "27/100",
            "4/17",
            "125/484",
            "20/81",
            "256/1025",
            "62500/250001",
            "756/3025",
        ],
    };
    raw.iter()
        .map(|s| {
            let (n, d) = s.split_once('/').unwrap();
            (*s, Rat::new(n.parse().unwrap(), d.parse().unwrap()))
        })
        .collect()
}

/// Comparison of the scan output against the published list, in lowest terms.
#[derive(Debug, Clone)]
pub struct CmListComparison {
    pub family: Family,
    pub scan: Vec<Rat>,
    /// Published entries found by the scan.
    pub matched: Vec<Rat>,
    /// Published entries the scan does not produce: (as printed, lowest
    /// terms, explanation).
    pub published_only: Vec<(String, Rat, String)>,
    /// Scan values missing from the published list.
    pub scan_only: Vec<Rat>,
    pub notes: Vec<String>,
}

impl CmListComparison {
    /// The published D8 list prints one entry as 6480/25920, which is the
    /// excluded pole 1/4 in lowest terms; the scan instead produces
    /// 6480/25921 (denominator 161^2). Treat exactly that printed-entry /
    /// scan-value pair as the one admissible discrepancy.
    pub fn clean_up_to_flagged_entry(&self) -> bool {
        self.published_only
            .iter()
            .all(|(printed, canonical, _)| printed == "6480/25920" && *canonical == ratio(1, 4))
            && self.scan_only.iter().all(|u| *u == ratio(6480, 25921))
    }
}

pub fn compare_with_published(family: Family) -> CmListComparison {
    let scan = cm_scan(family);
    let mut matched = Vec::new();
    let mut published_only = Vec::new();
    let mut notes = Vec::new();
    for (printed, canonical) in published_cm_list(family) {
        if scan.contains(&canonical) {
            matched.push(canonical);
        } else {
            let reason = if canonical == ratio(1, 4) {
                "reduces to the excluded pole u = 1/4".to_string()
            } else {
                "not produced by the scan".to_string()
            };
            published_only.push((printed.to_string(), canonical, reason));
        }
    }
    let scan_only: Vec<Rat> = scan
        .iter()
        .filter(|u| !matched.contains(u))
        .cloned()
        .collect();
    if scan_only.contains(&ratio(6480, 25921))
        && published_only.iter().any(|(p, _, _)| p == "6480/25920")
    {
        let disc = family_cm_discriminant(family, &ratio(6480, 25921))
            .map(|d| d.to_string())
            .unwrap_or_default();
        notes.push(format!(
            "published entry 6480/25920 reduces to the excluded pole 1/4; the \
             scan finds 6480/25921 (denominator 161^2, CM discriminant {disc}) \
             instead - a misprinted denominator"
        ));
    }
    CmListComparison {
        family,
        scan,
        matched,
        published_only,
        scan_only,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_arithmetic() {
        let x = QuadSurd::new(rat(1), rat(2), 5); // 1 + 2 sqrt 5
        let y = x.mul(&x.conj());
        assert_eq!(y.as_rat().unwrap(), rat(1 - 4 * 5));
        assert_eq!(x.mul(&x.inv().unwrap()).as_rat().unwrap(), rat(1));
        let s = QuadSurd::sqrt_of(&ratio(4, 9));
        assert_eq!(s.as_rat().unwrap(), ratio(2, 3));
        let s = QuadSurd::sqrt_of(&ratio(-81, 700));
        assert_eq!(s.m, -7);
        assert_eq!(s.mul(&s).as_rat().unwrap(), ratio(-81, 700));
    }

    #[test]
    fn j_quotient_rational_case() {
        // u = 81/196: sqrt u = 9/14 and the minus-sign j is 1728.
        let j = j_quotient(Family::D8, &ratio(81, 196), QuotientSign::Minus).unwrap();
        assert_eq!(j.as_rat().unwrap(), rat(1728));
        assert_eq!(is_cm_j(&j), Some(-4));
        assert!(j_quotient(Family::D8, &ratio(1, 4), QuotientSign::Minus).is_err());
    }

    #[test]
    fn j_quotient_conjugation_symmetry() {
        // For irrational sqrt(u), the two signs are exchanged by conjugation;
        // 20 assorted parameters.
        let mut us = vec![ratio(1, 5), rat(3), ratio(-7, 2), rat(11), ratio(2, 7)];
        for k in 2..17 {
            us.push(ratio(2 * k - 15, k + 4));
        }
        assert_eq!(us.len(), 20);
        for u in us {
            if u.is_zero() || u == ratio(1, 4) {
                continue;
            }
            // Rational sqrt(u): the two signs give distinct rational values
            // and conjugation is trivial; the symmetry only concerns the
            // irrational case.
            if crate::arith::sqrt_decompose_rat(&u).0 == Int::one() {
                continue;
            }
            let a = j_quotient(Family::D8, &u, QuotientSign::Minus).unwrap();
            let b = j_quotient(Family::D8, &u, QuotientSign::Plus).unwrap();
            assert_eq!(a.conj(), b);
            let a = j_quotient(Family::D12, &u, QuotientSign::Minus).unwrap();
            let b = j_quotient(Family::D12, &u, QuotientSign::Plus).unwrap();
            assert_eq!(a.conj(), b);
        }
    }

    #[test]
    fn rational_function_matches_pointwise() {
        // The symbolic (num, den) pair evaluated at sqrt(u) agrees with the
        // direct QuadSurd evaluation.
        for family in [Family::D8, Family::D12] {
            for sign in QuotientSign::both() {
                let (num, den) = j_as_rational_function(family, sign);
                for u in [rat(3), ratio(1, 5), ratio(9, 16)] {
                    let s = QuadSurd::sqrt_of(&u);
                    let eval = |p: &RatPoly| {
                        let mut acc = QuadSurd::from_rat(Rat::zero());
                        for c in p.coeffs().iter().rev() {
                            acc = acc.mul(&s).add(&QuadSurd::from_rat(c.clone()));
                        }
                        acc
                    };
                    let expect = j_quotient(family, &u, sign).unwrap();
                    let got = eval(&num).div(&eval(&den)).unwrap();
                    assert_eq!(got, expect, "{family:?} {sign:?} u={u}");
                }
            }
        }
    }

    #[test]
    #[ignore]
    fn scan_output_probe() {
        for family in [Family::D8, Family::D12] {
            let start = std::time::Instant::now();
            let cmp = compare_with_published(family);
            println!("=== {family:?} ({:?}) ===", start.elapsed());
            println!("scan ({}): {:?}", cmp.scan.len(), cmp.scan.iter().map(|r| r.to_string()).collect::<Vec<_>>());
            println!("matched: {}", cmp.matched.len());
            println!("published_only: {:?}", cmp.published_only);
            println!("scan_only: {:?}", cmp.scan_only.iter().map(|r| r.to_string()).collect::<Vec<_>>());
            println!("clean: {}", cmp.clean_up_to_flagged_entry());
        }
    }

    #[test]
    fn frozen_table_matches_oracle_regeneration() {
        let regenerated = oracle::generate_table();
        let frozen = cm_table();
        assert_eq!(regenerated.len(), frozen.len());
        assert_eq!(frozen.len(), 42);
        for (r, f) in regenerated.iter().zip(frozen) {
            assert_eq!(r.d, f.d);
            assert_eq!(r.h, f.h);
            assert_eq!(r.coeffs, f.coeffs, "coefficients differ at D = {}", r.d);
            assert!(r.abs_error < 1e-30, "rounding slack too large at D = {}", r.d);
        }
        // 13 orders of class number 1 and 29 of class number 2.
        assert_eq!(frozen.iter().filter(|e| e.h == 1).count(), 13);
        assert_eq!(frozen.iter().filter(|e| e.h == 2).count(), 29);
        // Degree-2 entries are irreducible over Q: no rational roots (all
        // CM j-invariants of class number 2 are quadratic irrationals).
        for e in frozen.iter().filter(|e| e.h == 2) {
            let p = crate::poly::Polynomial::new(e.coeffs.clone());
            assert!(crate::poly::rational_roots(&p, &Int::from(1_000_000)).is_empty());
        }
        // H_{-15} has its roots in Q(sqrt 5): the squarefree part of its
        // discriminant is 5.
        let h15 = frozen.iter().find(|e| e.d == -15).unwrap();
        let b = &h15.coeffs[1];
        let c = &h15.coeffs[0];
        let disc = b * b - Int::from(4) * c;
        let (sf, _) = crate::arith::squarefree_decompose(&disc);
        assert_eq!(sf, Int::from(5));
    }

    #[test]
    fn known_cm_values() {
        // 1728 -> -4, 0 -> -3, 1 -> none.
        assert_eq!(is_cm_j(&QuadSurd::from_rat(rat(1728))), Some(-4));
        assert_eq!(is_cm_j(&QuadSurd::from_rat(rat(0))), Some(-3));
        assert_eq!(is_cm_j(&QuadSurd::from_rat(rat(1))), None);
        // u = 4/25 is in the published D12 list.
        let d = family_cm_discriminant(Family::D12, &ratio(4, 25));
        assert!(d.is_some());
        // u = 3 is not CM for either family.
        assert_eq!(family_cm_discriminant(Family::D8, &rat(3)), None);
        assert_eq!(family_cm_discriminant(Family::D12, &rat(2)), None);
    }
}
