//! Verification harnesses for the identities between local L-factors induced
//! by the twisting representation. Each harness compares both sides of an
//! identity prime by prime, with every quantity computed exactly: local
//! factors by point counting, the Artin side by evaluating theta at
//! Frobenius, tensor products through power sums.

use crate::curves::{chi_d, d12_curve, d8_curve, Family, GenusTwoCurve};
use crate::galois::TwistSetting;
use crate::poly::tensor_product;
pub use crate::poly::{from_power_sums, power_sums};
use crate::{Error, Rat, Result};

/// Outcome of one per-prime verification run.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: String,
    pub params: Vec<(String, String)>,
    pub primes_tested: Vec<u64>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub p: u64,
    pub lhs: String,
    pub rhs: String,
}

impl CheckReport {
    fn new(check: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            params: Vec::new(),
            primes_tested: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    fn param(&mut self, k: &str, v: impl ToString) {
        self.params.push((k.to_string(), v.to_string()));
    }

    fn fail(&mut self, p: u64, lhs: impl ToString, rhs: impl ToString) {
        self.failures.push(Failure {
            p,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        self.passed = false;
    }
}

fn family_curve(family: Family, u: &Rat) -> Result<GenusTwoCurve> {
    match family {
        Family::D8 => d8_curve(u),
        Family::D12 => d12_curve(u),
    }
}

/// Quadratic-twist relation for a curve with generic automorphism group:
/// L_p(C_d, T) = L_p(C, chi_d(p) T) at every good p not dividing 2d.
pub fn verify_gengen(curve: &GenusTwoCurve, d: i64, pmin: u64, pmax: u64) -> Result<CheckReport> {
    let twisted = curve.quadratic_twist(d)?;
    let mut report = CheckReport::new("gengen");
    report.param("curve", curve.canonical_spec());
    report.param("d", d);
    report.param("pmax", pmax);
    for p in curve.good_primes(pmin.max(3), pmax) {
        if !twisted.is_good_prime(p) || d % p as i64 == 0 {
            continue;
        }
        let lhs = twisted.local_factor(p)?.poly();
        let rhs = curve.local_factor(p)?.with_sign(chi_d(d, p));
        report.primes_tested.push(p);
        if lhs != rhs {
            report.fail(p, format!("{lhs:?}"), format!("{rhs:?}"));
        }
    }
    Ok(report)
}

/// The main identity on quadratic twists of the family curves: at a good
/// prime unramified in L,
///   L_p(C, T) tensor det(1 - theta(Frob_p) T)
/// equals L_p(C', T)^4 when p splits in K (f = 1) and
/// L_p(C', T)^2 L_p(C', -T)^2 when f = 2.
pub fn verify_theorem2(family: Family, u: &Rat, d: i64, pmin: u64, pmax: u64) -> Result<CheckReport> {
    if let Some(disc) = crate::cm::family_cm_discriminant(family, u) {
        return Err(Error::CmParameter(u.to_string(), disc));
    }
    if d == 1 {
        return Err(Error::TwistInField(1));
    }
    let curve = family_curve(family, u)?;
    let twisted = curve.quadratic_twist(d)?;
    let setting = TwistSetting::new(family, u, d)?;
    let mut report = CheckReport::new("theorem2");
    report.param("family", family.name());
    report.param("u", u);
    report.param("d", d);
    report.param("pmax", pmax);
    report.notes.push(
        "checks the displayed identity on quadratic twists; the simplicity \
         hypothesis on the twisted Tate module is not certified here"
            .to_string(),
    );
    for p in curve.good_primes(pmin.max(3), pmax) {
        if !twisted.is_good_prime(p) || !setting.is_unramified(p) {
            continue;
        }
        let (_, theta_poly) = setting.theta_at_frobenius(p)?;
        let lhs = tensor_product(&curve.local_factor(p)?.poly(), &theta_poly);
        let lp = twisted.local_factor(p)?.poly();
        let rhs = match setting.residue_degree_in_k(p)? {
            1 => lp.pow(4),
            _ => lp.pow(2).mul(&lp.alternate().pow(2)),
        };
        report.primes_tested.push(p);
        if lhs != rhs {
            report.fail(p, format!("{lhs:?}"), format!("{rhs:?}"));
        }
    }
    Ok(report)
}

/// Divisibility form of the Tate-module inclusion: L_p(C', T) divides the
/// degree-16 tensor product. Full-factor containment over Z[T] is equivalent
/// to divisibility, which is the implemented test.
pub fn verify_inclusion(
    setting: &TwistSetting,
    curve: &GenusTwoCurve,
    cprime: &GenusTwoCurve,
    pmin: u64,
    pmax: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("inclusion");
    report.param("curve", curve.canonical_spec());
    report.param("curve2", cprime.canonical_spec());
    report.param("d", setting.d);
    report.param("pmax", pmax);
    for p in curve.good_primes(pmin.max(3), pmax) {
        if !cprime.is_good_prime(p) || !setting.is_unramified(p) {
            continue;
        }
        let (_, theta_poly) = setting.theta_at_frobenius(p)?;
        let product = tensor_product(&curve.local_factor(p)?.poly(), &theta_poly);
        let lp = cprime.local_factor(p)?.poly();
        report.primes_tested.push(p);
        if !lp.divides(&product) {
            report.fail(p, format!("{lp:?}"), format!("does not divide {product:?}"));
        }
    }
    Ok(report)
}

/// Sign relation at Frobenius. Part (ii) is exact and gates the report:
/// Tr theta(Frob_p) = 0 whenever f = 2. Part (i) is informational; a_p is
/// read from the local factor as -c1 (the underlying trace is canonically
/// defined only over K), and primes with a_p = 0 are skipped.
pub fn sign_check(family: Family, u: &Rat, d: i64, pmin: u64, pmax: u64) -> Result<CheckReport> {
    if d == 1 {
        return Err(Error::TwistInField(1));
    }
    let curve = family_curve(family, u)?;
    let twisted = curve.quadratic_twist(d)?;
    let setting = TwistSetting::new(family, u, d)?;
    let mut report = CheckReport::new("signe");
    report.param("family", family.name());
    report.param("u", u);
    report.param("d", d);
    report.param("pmax", pmax);
    report.notes.push(
        "part (i) interprets a_p as the Frobenius trace -c1 of the local \
         factor and is informational only"
            .to_string(),
    );
    let mut part_i_checked = 0u64;
    for p in curve.good_primes(pmin.max(3), pmax) {
        if !twisted.is_good_prime(p) || !setting.is_unramified(p) {
            continue;
        }
        let (m, _) = setting.theta_at_frobenius(p)?;
        let trace = m.trace();
        report.primes_tested.push(p);
        if setting.residue_degree_in_k(p)? == 2 {
            if !num_traits::Zero::is_zero(&trace) {
                report.fail(p, format!("Tr = {trace}"), "Tr = 0 (f = 2)");
            }
            continue;
        }
        // f = 1: sgn(a_p * Tr) = sgn(a_p').
        let ap = -curve.local_factor(p)?.c1;
        let ap_prime = -twisted.local_factor(p)?.c1;
        if ap == 0 {
            continue;
        }
        part_i_checked += 1;
        let tr: i64 = {
            let t = trace.to_integer();
            i64::try_from(t).expect("theta trace is a small integer")
        };
        if (ap * tr).signum() != ap_prime.signum() {
            report.notes.push(format!(
                "part (i) mismatch at p={p}: sgn({ap} * {tr}) != sgn({ap_prime})"
            ));
        }
    }
    report.notes.push(format!(
        "part (i) compared on {part_i_checked} split primes with a_p != 0"
    ));
    Ok(report)
}

/// Exploratory: pair the family curve with its published alternate model,
/// whose twist cocycle is not constructed here. For each good prime this
/// scans all group elements over Frob_p|_K and reports which, if any, make
/// the tensor identity hold. Never gates.
pub fn alt_pair_exploration(family: Family, u: &Rat, pmin: u64, pmax: u64) -> Result<CheckReport> {
    let curve = family_curve(family, u)?;
    let alt = crate::curves::alt_model(family, u)?;
    let setting = TwistSetting::new(family, u, 1)?;
    let group = &setting.group;
    let mut report = CheckReport::new("alt-pair");
    report.param("family", family.name());
    report.param("u", u);
    report.param("pmax", pmax);
    let mut consistent_f1 = 0u64;
    let mut consistent_f2 = 0u64;
    let mut inconsistent = 0u64;
    for p in curve.good_primes(pmin.max(3), pmax) {
        if !alt.is_good_prime(p) || !setting.is_unramified(p) {
            continue;
        }
        report.primes_tested.push(p);
        let frob_mask = crate::galois::frobenius(&group.aut.field, p)?.mask as usize;
        let lp = curve.local_factor(p)?.poly();
        let lalt = alt.local_factor(p)?.poly();
        let rhs4 = lalt.pow(4);
        let rhs22 = lalt.pow(2).mul(&lalt.alternate().pow(2));
        let mut hit4 = 0usize;
        let mut hit22 = 0usize;
        for a in 0..group.aut.order() {
            let e = group.elem(a, frob_mask);
            let theta_poly = group.theta[e].reciprocal_charpoly();
            let lhs = tensor_product(&lp, &theta_poly);
            if lhs == rhs4 {
                hit4 += 1;
            }
            if lhs == rhs22 {
                hit22 += 1;
            }
        }
        if hit4 > 0 {
            consistent_f1 += 1;
        } else if hit22 > 0 {
            consistent_f2 += 1;
        } else {
            inconsistent += 1;
        }
    }
    report.notes.push(format!(
        "primes with a cocycle candidate matching L^4: {consistent_f1}; \
         matching L^2 L(-)^2: {consistent_f2}; with none: {inconsistent}"
    ));
    Ok(report)
}
