//! Generation oracle for the Hilbert class polynomial table: j-invariants are
//! evaluated through the exact integer q-expansion of j at high-precision
//! fixed-point arguments (448 fractional bits), summed over the reduced
//! primitive binary quadratic forms of each discriminant, and rounded to
//! integers with a checked error bound.
//!
//! The frozen table in `hilbert.rs` is regenerated and compared by a test;
//! a rounding failure here halts generation rather than producing data.

use crate::Int;
use num_traits::{One, ToPrimitive, Zero};

const PREC: u32 = 448;
/// Number of q-expansion terms; the worst reduced form has |q| <= e^(-pi
/// sqrt 3), for which 64 terms leave an error far below the rounding slack.
const TERMS: usize = 64;

pub struct OracleEntry {
    pub d: i64,
    pub h: usize,
    /// Monic, ascending: [c0, c1, ..., 1].
    pub coeffs: Vec<Int>,
    /// Largest |computed - rounded| over the rounded quantities, in units of
    /// 1.0 (absolute), as f64.
    pub abs_error: f64,
    /// Largest imaginary residue of quantities that must be real.
    pub imag_residue: f64,
}

fn one_fx() -> Int {
    Int::one() << PREC
}

fn fmul(a: &Int, b: &Int) -> Int {
    (a * b) >> PREC
}

fn fdiv(a: &Int, b: &Int) -> Int {
    (a << PREC) / b
}

/// sqrt(n) in fixed point, n a plain nonnegative integer.
fn fsqrt(n: i64) -> Int {
    (Int::from(n) << (2 * PREC)).sqrt()
}

/// pi by Machin's formula.
fn pi_fx() -> Int {
    fn atan_inv(x: i64) -> Int {
        let x2 = Int::from(x) * Int::from(x);
        let mut num = fdiv(&one_fx(), &(Int::from(x) << PREC));
        let mut acc = Int::zero();
        let mut k = 0i64;
        while !num.is_zero() {
            let term = &num / Int::from(2 * k + 1);
            if term.is_zero() {
                break;
            }
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            num /= &x2;
            k += 1;
        }
        acc
    }
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// e^(-x) for fixed-point x >= 0, by halving and Taylor.
fn exp_neg(x: &Int) -> Int {
    let mut halvings = 0u32;
    let mut y = x.clone();
    let half = one_fx() >> 1;
    while y > half {
        y >>= 1;
        halvings += 1;
    }
    let mut acc = one_fx();
    let mut term = one_fx();
    let mut k = 1i64;
    loop {
        term = fmul(&term, &y) / Int::from(k);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
        k += 1;
    }
    for _ in 0..halvings {
        acc = fmul(&acc, &acc);
    }
    acc
}

/// (cos x, sin x) for fixed-point |x| <= pi, by Taylor.
fn cossin(x: &Int) -> (Int, Int) {
    let x2 = fmul(x, x);
    let mut cos = one_fx();
    let mut term = one_fx();
    let mut k = 1i64;
    loop {
        term = fmul(&term, &x2) / Int::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            cos -= &term;
        } else {
            cos += &term;
        }
        k += 1;
    }
    let mut sin = x.clone();
    let mut term = x.clone();
    let mut k = 1i64;
    loop {
        term = fmul(&term, &x2) / Int::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sin -= &term;
        } else {
            sin += &term;
        }
        k += 1;
    }
    (cos, sin)
}

#[derive(Clone, Debug)]
struct Cx {
    re: Int,
    im: Int,
}

impl Cx {
    fn mul(&self, rhs: &Cx) -> Cx {
        Cx {
            re: fmul(&self.re, &rhs.re) - fmul(&self.im, &rhs.im),
            im: fmul(&self.re, &rhs.im) + fmul(&self.im, &rhs.re),
        }
    }

    fn scale_int(&self, k: &Int) -> Cx {
        Cx {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    fn add(&self, rhs: &Cx) -> Cx {
        Cx {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

fn series_mul(a: &[Int], b: &[Int], n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer q-expansion coefficients of j: returns c with c[k] the coefficient
/// of q^(k-1), so c[0] = 1, c[1] = 744, c[2] = 196884, ...
pub fn j_coefficients(n: usize) -> Vec<Int> {
    // E4 = 1 + 240 sum sigma_3(m) q^m.
    let mut e4 = vec![Int::zero(); n];
    e4[0] = Int::one();
    for (m, coeff) in e4.iter_mut().enumerate().skip(1) {
        let mut s3 = Int::zero();
        for d in 1..=m {
            if m % d == 0 {
                s3 += Int::from((d * d * d) as u64);
            }
        }
        *coeff = s3 * 240;
    }
    let e4sq = series_mul(&e4, &e4, n);
    let e4cube = series_mul(&e4sq, &e4, n);
    // P = prod (1 - q^m) by the pentagonal number theorem.
    let mut p = vec![Int::zero(); n];
    p[0] = Int::one();
    let mut k = 1i64;
    loop {
        let g1 = (k * (3 * k - 1) / 2) as usize;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g1 >= n && g2 >= n {
            break;
        }
        let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
        if g1 < n {
            p[g1] += &sign;
        }
        if g2 < n {
            p[g2] += &sign;
        }
        k += 1;
    }
    // B = P^24.
    let p2 = series_mul(&p, &p, n);
    let p4 = series_mul(&p2, &p2, n);
    let p8 = series_mul(&p4, &p4, n);
    let p16 = series_mul(&p8, &p8, n);
    let b = series_mul(&p16, &p8, n);
    // B^(-1) by the standard recurrence (b[0] = 1).
    let mut binv = vec![Int::zero(); n];
    binv[0] = Int::one();
    for m in 1..n {
        let mut acc = Int::zero();
        for j in 1..=m {
            acc += &b[j] * &binv[m - j];
        }
        binv[m] = -acc;
    }
    let c = series_mul(&e4cube, &binv, n);
    assert_eq!(c[0], Int::one());
    assert_eq!(c[1], Int::from(744));
    assert_eq!(c[2], Int::from(196884));
    assert_eq!(c[3], Int::from(21493760u64));
    assert_eq!(c[4], Int::from(864299970u64));
    c
}

/// Reduced primitive forms (a, b, c) of discriminant d < 0.
pub fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    assert!(d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1));
    let mut out = Vec::new();
    let mut a = 1i64;
    while a * a * 3 <= -d {
        for b in (-a + 1)..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if gcd3(a, b, c) != 1 {
                continue;
            }
            out.push((a, b, c));
        }
        a += 1;
    }
    out
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

/// All discriminants -bound <= d < 0 with class number 1 or 2, with h.
pub fn discriminants_with_small_class_number(bound: i64) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for md in 3..=bound {
        let d = -md;
        if d.rem_euclid(4) != 0 && d.rem_euclid(4) != 1 {
            continue;
        }
        let h = reduced_forms(d).len();
        if h == 1 || h == 2 {
            out.push((d, h));
        }
    }
    out
}

/// j(tau) for the form (a, b, _): tau = (-b + sqrt(d))/(2a), evaluated as
/// sum of the q-expansion at q = e^(2 pi i tau).
fn eval_j(d: i64, a: i64, b: i64, coeffs: &[Int]) -> Cx {
    let pi = pi_fx();
    // |q| = e^(-pi sqrt(|d|)/a), arg q = -pi b / a.
    let w = fmul(&pi, &fsqrt(-d)) / Int::from(a);
    let r = exp_neg(&w);
    let phase = (&pi * Int::from(-b)) / Int::from(a);
    let (c, s) = cossin(&phase);
    let q = Cx {
        re: fmul(&r, &c),
        im: fmul(&r, &s),
    };
    let nrm = fmul(&q.re, &q.re) + fmul(&q.im, &q.im);
    let qinv = Cx {
        re: fdiv(&q.re, &nrm),
        im: fdiv(&(-&q.im), &nrm),
    };
    // j = q^(-1) + 744 + sum_{k>=1} c_{k+1} q^k.
    let mut acc = qinv.add(&Cx {
        re: Int::from(744) << PREC,
        im: Int::zero(),
    });
    let mut qp = q.clone();
    for coeff in coeffs.iter().skip(2) {
        acc = acc.add(&qp.scale_int(coeff));
        qp = qp.mul(&q);
    }
    acc
}

fn round_checked(x: &Int, abs_error: &mut f64) -> Int {
    let half = Int::one() << (PREC - 1);
    let rounded = (x + &half) >> PREC;
    let resid = x - (&rounded << PREC);
    let err = resid.to_f64().unwrap_or(f64::MAX).abs() / 2f64.powi(PREC as i32);
    if err > *abs_error {
        *abs_error = err;
    }
    assert!(
        err < 0.25,
        "oracle rounding too coarse: residual {err} at a Hilbert coefficient"
    );
    rounded
}

/// Hilbert class polynomial for one discriminant.
pub fn hilbert_polynomial(d: i64, coeffs: &[Int]) -> OracleEntry {
    let forms = reduced_forms(d);
    let h = forms.len();
    assert!(h == 1 || h == 2, "oracle only handles class number <= 2");
    let js: Vec<Cx> = forms
        .iter()
        .map(|&(a, b, _)| eval_j(d, a, b, coeffs))
        .collect();
    let mut abs_error = 0f64;
    let mut imag_residue = 0f64;
    let mut track_imag = |x: &Int| {
        let v = x.to_f64().unwrap_or(f64::MAX).abs() / 2f64.powi(PREC as i32);
        if v > imag_residue {
            imag_residue = v;
        }
        assert!(v < 1e-30, "imaginary residue {v} too large");
    };
    let coeffs_out = if h == 1 {
        track_imag(&js[0].im);
        let j0 = round_checked(&js[0].re, &mut abs_error);
        vec![-j0, Int::one()]
    } else {
        let sum = js[0].add(&js[1]);
        let prod = js[0].mul(&js[1]);
        track_imag(&sum.im);
        track_imag(&prod.im);
        let s = round_checked(&sum.re, &mut abs_error);
        let p = round_checked(&prod.re, &mut abs_error);
        vec![p, -s, Int::one()]
    };
    OracleEntry {
        d,
        h,
        coeffs: coeffs_out,
        abs_error,
        imag_residue,
    }
}

/// Regenerate the whole table: every discriminant of class number <= 2 down
/// to -1000 (the classical list stops at -427; scanning further is a cheap
/// safeguard against transcription gaps).
pub fn generate_table() -> Vec<OracleEntry> {
    let coeffs = j_coefficients(TERMS);
    discriminants_with_small_class_number(1000)
        .into_iter()
        .map(|(d, _)| hilbert_polynomial(d, &coeffs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_form_counts() {
        assert_eq!(reduced_forms(-3), vec![(1, 1, 1)]);
        assert_eq!(reduced_forms(-4), vec![(1, 0, 1)]);
        assert_eq!(reduced_forms(-15).len(), 2);
        assert_eq!(reduced_forms(-23).len(), 3); // h = 3, excluded from the table
        assert_eq!(reduced_forms(-163).len(), 1);
        assert_eq!(reduced_forms(-427).len(), 2);
    }

    #[test]
    fn small_class_number_census() {
        let list = discriminants_with_small_class_number(1000);
        let h1: Vec<i64> = list.iter().filter(|e| e.1 == 1).map(|e| e.0).collect();
        let h2: Vec<i64> = list.iter().filter(|e| e.1 == 2).map(|e| e.0).collect();
        assert_eq!(h1.len(), 13);
        assert_eq!(h2.len(), 29);
        assert!(h1.contains(&-163) && h1.contains(&-3) && h1.contains(&-28));
        assert!(h2.contains(&-15) && h2.contains(&-427) && h2.contains(&-100));
    }

    #[test]
    fn classical_j_values() {
        let coeffs = j_coefficients(TERMS);
        let e = hilbert_polynomial(-3, &coeffs);
        assert_eq!(e.coeffs, vec![Int::zero(), Int::one()]);
        let e = hilbert_polynomial(-4, &coeffs);
        assert_eq!(e.coeffs, vec![Int::from(-1728), Int::one()]);
        let e = hilbert_polynomial(-163, &coeffs);
        // j(-163) = -640320^3
        let j = -Int::from(640320i64).pow(3);
        assert_eq!(e.coeffs, vec![-j, Int::one()]);
        // H_{-15} = x^2 + 191025 x - 121287375, roots in Q(sqrt 5).
        let e = hilbert_polynomial(-15, &coeffs);
        assert_eq!(
            e.coeffs,
            vec![Int::from(-121287375i64), Int::from(191025i64), Int::one()]
        );
    }
}

#[cfg(test)]
mod bootstrap {
    use super::*;

    /// Maintenance: regenerate the frozen table source and the provenance
    /// file contents (run with --ignored --nocapture and paste).
    #[test]
    #[ignore]
    fn print_frozen_table() {
        for e in generate_table() {
            let coeffs: Vec<String> = e.coeffs.iter().map(|c| format!("\"{c}\"")).collect();
            println!("    ({}, &[{}]),", e.d, coeffs.join(", "));
        }
        println!("--- provenance ---");
        println!("{{\"schema\":1,\"method\":\"q-series, 448 fractional bits, 64 terms\",\"entries\":[");
        let recs = provenance_records();
        for (i, r) in recs.iter().enumerate() {
            let comma = if i + 1 < recs.len() { "," } else { "" };
            println!("{r}{comma}");
        }
        println!("]}}");
    }

    #[test]
    fn provenance_file_matches_regeneration() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/hilbert_provenance.json");
        let text = std::fs::read_to_string(path).expect("provenance file ships with the crate");
        for r in provenance_records() {
            assert!(text.contains(&r), "provenance file is stale: missing {r}");
        }
    }
}

/// Provenance description of the generated table, one record per
/// discriminant, serialized by the maintenance test into
/// `data/hilbert_provenance.json`.
pub fn provenance_records() -> Vec<String> {
    generate_table()
        .into_iter()
        .map(|e| {
            let coeffs: Vec<String> = e.coeffs.iter().map(|c| format!("\"{c}\"")).collect();
            format!(
                "{{\"d\":{},\"h\":{},\"coeffs\":[{}],\"abs_error\":{:.3e},\"imag_residue\":{:.3e}}}",
                e.d,
                e.h,
                coeffs.join(","),
                e.abs_error,
                e.imag_residue
            )
        })
        .collect()
}
