//! Exact-rational genus-2 curve models: the D8/D12 families, their alternate
//! models, quadratic twists and user-supplied hyperelliptic curves, together
//! with reduction mod p, naive point counting, and local-factor assembly.

use crate::arith::{is_squarefree, primes_up_to, squarefree_part_i64};
use crate::modular::{legendre_unchecked, Fp2Ctx};
use crate::poly::Polynomial;
use crate::{rat, ratio, Error, Int, IntPoly, Rat, RatPoly, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    D8,
    D12,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::D8 => "d8",
            Family::D12 => "d12",
        }
    }

    /// The fixed auxiliary radicand of the field of automorphisms:
    /// K = Q(sqrt u, sqrt 2) for D8 and Q(sqrt u, sqrt 3) for D12.
    pub fn aux_radicand(&self) -> i64 {
        match self {
            Family::D8 => 2,
            Family::D12 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelTag {
    D8Family,
    D12Family,
    D8Alt,
    D12Alt,
    Custom,
}

impl ModelTag {
    fn name(&self) -> &'static str {
        match self {
            ModelTag::D8Family => "d8",
            ModelTag::D12Family => "d12",
            ModelTag::D8Alt => "d8alt",
            ModelTag::D12Alt => "d12alt",
            ModelTag::Custom => "custom",
        }
    }
}

/// A genus-2 curve Y^2 = f(X) with exact rational coefficients, deg f in
/// {5, 6} and f squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTwoCurve {
    /// Base model polynomial, before any quadratic twist.
    base: RatPoly,
    /// Literal model polynomial of this curve: base times every twist applied.
    f: RatPoly,
    tag: ModelTag,
    u: Option<Rat>,
    /// Squarefree class of the accumulated twists; identifies the curve up to
    /// the Q-isomorphism y -> c y.
    twist_class: i64,
}

pub(crate) fn check_u_excluded(family: Family, u: &Rat) -> Result<()> {
    let fam = match family {
        Family::D8 => "d8",
        Family::D12 => "d12",
    };
    if u.is_zero() {
        return Err(Error::ExcludedParameter {
            family: fam,
            u: u.to_string(),
            reason: "u must be a nonzero rational",
        });
    }
    if *u == ratio(1, 4) {
        return Err(Error::ExcludedParameter {
            family: fam,
            u: u.to_string(),
            reason: "excluded parameter (degenerate model)",
        });
    }
    let other = match family {
        Family::D8 => ratio(9, 100),
        Family::D12 => ratio(-1, 50),
    };
    if *u == other {
        return Err(Error::ExcludedParameter {
            family: fam,
            u: u.to_string(),
            reason: "excluded parameter (extra automorphisms)",
        });
    }
    Ok(())
}

/// The D8 family curve
/// Y^2 = X^6 - 8X^5 + (3/u)X^4 + (3/u^2)X^2 + (8/u^2)X + 1/u^3.
pub fn d8_curve(u: &Rat) -> Result<GenusTwoCurve> {
    check_u_excluded(Family::D8, u)?;
    let u2 = u * u;
    let u3 = &u2 * u;
    let f = Polynomial::new(vec![
        u3.recip(),
        rat(8) / &u2,
        rat(3) / &u2,
        rat(0),
        rat(3) / u,
        rat(-8),
        rat(1),
    ]);
    GenusTwoCurve::new(f, ModelTag::D8Family, Some(u.clone()))
}

/// The D12 family curve
/// Y^2 = 27u X^6 - 2916u^2 X^5 + 243u^2 X^4 + 29160u^3 X^3 + 729u^3 X^2
///       - 26244u^4 X + 729u^4.
pub fn d12_curve(u: &Rat) -> Result<GenusTwoCurve> {
    check_u_excluded(Family::D12, u)?;
    let u2 = u * u;
    let u3 = &u2 * u;
    let u4 = &u3 * u;
    let f = Polynomial::new(vec![
        rat(729) * &u4,
        rat(-26244) * &u4,
        rat(729) * &u3,
        rat(29160) * &u3,
        rat(243) * &u2,
        rat(-2916) * &u2,
        rat(27) * u,
    ]);
    GenusTwoCurve::new(f, ModelTag::D12Family, Some(u.clone()))
}

/// Alternate models: Y^2 = X^5 + X^3 + uX (D8) and Y^2 = X^6 + X^3 + u (D12).
/// Each is isomorphic over the algebraic closure to the family curve with the
/// same u, i.e. a twist of it.
pub fn alt_model(family: Family, u: &Rat) -> Result<GenusTwoCurve> {
    check_u_excluded(family, u)?;
    match family {
        Family::D8 => {
            let f = Polynomial::new(vec![rat(0), u.clone(), rat(0), rat(1), rat(0), rat(1)]);
            GenusTwoCurve::new(f, ModelTag::D8Alt, Some(u.clone()))
        }
        Family::D12 => {
            let f = Polynomial::new(vec![u.clone(), rat(0), rat(0), rat(1), rat(0), rat(0), rat(1)]);
            GenusTwoCurve::new(f, ModelTag::D12Alt, Some(u.clone()))
        }
    }
}

/// User-supplied model Y^2 = f(X) from ascending coefficients.
pub fn custom_curve(coeffs: &[Rat]) -> Result<GenusTwoCurve> {
    let f = Polynomial::new(coeffs.to_vec());
    GenusTwoCurve::new(f, ModelTag::Custom, None)
}

impl GenusTwoCurve {
    fn new(f: RatPoly, tag: ModelTag, u: Option<Rat>) -> Result<GenusTwoCurve> {
        let deg = f.degree().unwrap_or(0);
        if deg != 5 && deg != 6 {
            return Err(Error::NotGenusTwo(format!(
                "degree {deg} after trimming, need 5 or 6"
            )));
        }
        if f.discriminant().is_zero() {
            return Err(Error::NotGenusTwo("f is not squarefree".into()));
        }
        Ok(GenusTwoCurve {
            base: f.clone(),
            f,
            tag,
            u,
            twist_class: 1,
        })
    }

    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn u(&self) -> Option<&Rat> {
        self.u.as_ref()
    }

    pub fn family(&self) -> Option<Family> {
        match self.tag {
            ModelTag::D8Family | ModelTag::D8Alt => Some(Family::D8),
            ModelTag::D12Family | ModelTag::D12Alt => Some(Family::D12),
            ModelTag::Custom => None,
        }
    }

    pub fn twist_class(&self) -> i64 {
        self.twist_class
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// Quadratic twist: the model Y^2 = d f(X), isomorphic to this curve over
    /// Q(sqrt d) via (x, y) -> (x, y/sqrt(d)), with cocycle landing on the
    /// hyperelliptic involution.
    pub fn quadratic_twist(&self, d: i64) -> Result<GenusTwoCurve> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::BadTwist(d));
        }
        if d == 1 {
            return Ok(self.clone());
        }
        Ok(GenusTwoCurve {
            base: self.base.clone(),
            f: self.f.scale(&rat(d)),
            tag: self.tag,
            u: self.u.clone(),
            twist_class: squarefree_part_i64(self.twist_class * d),
        })
    }

    /// Canonical spec string, the fixed point of parse -> canonicalize.
    /// Rationals are printed in lowest terms, "n" or "n/d" with d > 1; the
    /// twist suffix appears only for a nontrivial twist class.
    pub fn canonical_spec(&self) -> String {
        let mut s = match self.tag {
            ModelTag::Custom => {
                let coeffs: Vec<String> = self.base.coeffs().iter().map(fmt_rat).collect();
                format!("custom:f=[{}]", coeffs.join(","))
            }
            _ => format!("{}:u={}", self.tag.name(), fmt_rat(self.u.as_ref().unwrap())),
        };
        if self.twist_class != 1 {
            s.push_str(&format!(";twist={}", self.twist_class));
        }
        s
    }

    /// Product of everything whose reduction matters: a prime is declared
    /// good iff it is odd and divides neither a coefficient denominator, nor
    /// the leading numerator, nor the discriminant. Conservative superset of
    /// bad reduction; no minimal models.
    fn bad_product(&self) -> Int {
        let mut prod = Int::from(2);
        for c in self.f.coeffs() {
            prod *= c.denom();
        }
        prod *= self.f.leading().unwrap().numer();
        let disc = self.f.discriminant();
        prod *= disc.numer();
        prod *= disc.denom();
        prod.abs()
    }

    pub fn is_good_prime(&self, p: u64) -> bool {
        p != 2 && !(self.bad_product() % Int::from(p)).is_zero()
    }

    /// The conservative finite set of possibly-bad primes.
    pub fn bad_primes(&self) -> BTreeSet<u64> {
        crate::arith::factor_int(&self.bad_product())
            .into_iter()
            .map(|(p, _)| p.to_u64().expect("desk-scale bad primes fit u64"))
            .collect()
    }

    /// Good primes in [pmin, pmax].
    pub fn good_primes(&self, pmin: u64, pmax: u64) -> Vec<u64> {
        let bad = self.bad_product();
        primes_up_to(pmax)
            .into_iter()
            .filter(|&p| p >= pmin && p != 2 && !(&bad % Int::from(p)).is_zero())
            .collect()
    }

    /// Integer model for reduction: f multiplied by the square of the
    /// coefficient-denominator lcm, so the twist class is unchanged. Primes
    /// dividing the lcm are bad and never reduced at.
    fn integer_model(&self) -> IntPoly {
        let mut l = Int::one();
        for c in self.f.coeffs() {
            l = l.lcm(c.denom());
        }
        let l2 = Rat::from_integer(&l * &l);
        self.f
            .scale(&l2)
            .to_int()
            .expect("f * lcm(denominators)^2 is integral")
    }

    fn coeffs_mod_p(&self, p: u64) -> Vec<u64> {
        self.integer_model()
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&Int::from(p));
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// #C(F_p) on the smooth projective model: affine points plus points at
    /// infinity (one for degree-5 models; 1 + chi(lc) for degree-6).
    pub fn count_points_fp(&self, p: u64) -> Result<u64> {
        if !self.is_good_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let coeffs = self.coeffs_mod_p(p);
        // Quadratic-character table chi: F_p -> {-1, 0, 1}.
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[((x * x) % p) as usize] = 1;
        }
        let mut count: u64 = 0;
        for x in 0..p {
            let mut acc: u64 = 0;
            for c in coeffs.iter().rev() {
                acc = (acc as u128 * x as u128 % p as u128) as u64 + c;
                if acc >= p {
                    acc -= p;
                }
            }
            count += (1 + chi[acc as usize] as i64) as u64;
        }
        count += match self.degree() {
            5 => 1,
            _ => (1 + chi[*coeffs.last().unwrap() as usize] as i64) as u64,
        };
        Ok(count)
    }

    /// #C(F_{p^2}); squareness in F_{p^2} is decided through the norm, so the
    /// inner loop stays in u64 arithmetic.
    pub fn count_points_fp2(&self, p: u64) -> Result<u64> {
        if !self.is_good_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let ctx = Fp2Ctx::new(p)?;
        let n = ctx.n;
        let coeffs = self.coeffs_mod_p(p);
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[((x * x) % p) as usize] = 1;
        }
        let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
        let mut count: u64 = 0;
        for a in 0..p {
            for b in 0..p {
                // Horner over F_{p^2} at x = a + b w.
                let (mut ra, mut rb) = (0u64, 0u64);
                for c in coeffs.iter().rev() {
                    let na = (mulmod(ra, a) + mulmod(n % p, mulmod(rb, b))) % p;
                    let nb = (mulmod(ra, b) + mulmod(rb, a)) % p;
                    ra = na + c;
                    if ra >= p {
                        ra -= p;
                    }
                    rb = nb;
                }
                // chi_{p^2}(ra + rb w) = chi_p(norm) = chi_p(ra^2 - n rb^2).
                let norm = (ra as u128 * ra as u128 % p as u128 + (p as u128 * p as u128
                    - (n % p) as u128 * rb as u128 % p as u128 * rb as u128 % p as u128)
                    % (p as u128))
                    % p as u128;
                count += (1 + chi[norm as usize] as i64) as u64;
            }
        }
        count += match self.degree() {
            5 => 1,
            // The leading coefficient is nonzero in F_p, hence a square in
            // F_{p^2}: both points at infinity are rational.
            _ => 2,
        };
        Ok(count)
    }

    /// Local Euler factor L_p(C, T) from the two point counts.
    pub fn local_factor(&self, p: u64) -> Result<LocalFactor> {
        let n1 = self.count_points_fp(p)?;
        let n2 = self.count_points_fp2(p)?;
        Ok(LocalFactor::from_counts(p, n1, n2))
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Degree-4 integer polynomial L_p(C, T) = 1 + c1 T + c2 T^2 + c3 T^3 + c4 T^4
/// with the Weil/functional-equation invariants c3 = p c1, c4 = p^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
    pub c4: i64,
}

impl LocalFactor {
    /// With s1 = p + 1 - N1 and s2 = p^2 + 1 - N2:
    /// L_p(T) = 1 - s1 T + e2 T^2 - p s1 T^3 + p^2 T^4, e2 = (s1^2 - s2)/2.
    pub fn from_counts(p: u64, n1: u64, n2: u64) -> LocalFactor {
        let s1 = p as i128 + 1 - n1 as i128;
        let s2 = (p as i128) * (p as i128) + 1 - n2 as i128;
        let num = s1 * s1 - s2;
        assert!(num % 2 == 0, "non-integer e2 signals a counting bug");
        let e2 = num / 2;
        let lf = LocalFactor {
            p,
            c1: (-s1) as i64,
            c2: e2 as i64,
            c3: (-(p as i128) * s1) as i64,
            c4: (p as i128 * p as i128) as i64,
        };
        debug_assert!(lf.validate().is_ok(), "local factor fails Weil invariants");
        lf
    }

    pub fn from_coeffs(p: u64, c: [i64; 4]) -> LocalFactor {
        LocalFactor {
            p,
            c1: c[0],
            c2: c[1],
            c3: c[2],
            c4: c[3],
        }
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64(&[1, self.c1, self.c2, self.c3, self.c4])
    }

    /// N1 = p + 1 - s1.
    pub fn n1(&self) -> i64 {
        self.p as i64 + 1 + self.c1
    }

    /// N2 = p^2 + 1 - (s1^2 - 2 e2).
    pub fn n2(&self) -> i64 {
        let s1 = -self.c1;
        (self.p * self.p) as i64 + 1 - (s1 * s1 - 2 * self.c2)
    }

    /// Check every stated invariant exactly: the functional-equation
    /// reflection p^2 T^4 L(1/(pT)) = L(T), the Weil bound on c1, and
    /// nonnegative reconstructed point counts.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let l = self.poly();
        let refl = self.reflected();
        if refl != l {
            return Err(format!(
                "functional-equation reflection fails at p={}: {:?} vs {:?}",
                self.p, refl, l
            ));
        }
        if (self.c1 as i128) * (self.c1 as i128) > 16 * self.p as i128 {
            return Err(format!("Weil bound violated at p={}: c1={}", self.p, self.c1));
        }
        if self.n1() < 0 || self.n2() < 0 {
            return Err(format!("negative point count reconstructed at p={}", self.p));
        }
        Ok(())
    }

    /// p^2 T^4 L(1/(pT)) expanded as an integer polynomial: equals
    /// T^4 c4/p^2 + T^3 c3/p + c2 T^2 + (p c1) T ... computed exactly over Q.
    fn reflected(&self) -> IntPoly {
        let p = rat(self.p as i64);
        let coeffs = [
            rat(self.c4) / (&p * &p),
            rat(self.c3) / &p,
            rat(self.c2),
            rat(self.c1) * &p,
            &p * &p,
        ];
        let rp = Polynomial::new(coeffs.to_vec());
        rp.to_int().unwrap_or_else(|| IntPoly::from_i64(&[0]))
    }

    /// L_p evaluated with T -> chi*T for chi in {1, -1}.
    pub fn with_sign(&self, chi: i32) -> IntPoly {
        if chi >= 0 {
            self.poly()
        } else {
            self.poly().alternate()
        }
    }
}

/// Convenience used by the twist verifications: the quadratic character
/// chi_d(p) = legendre(d, p).
pub fn chi_d(d: i64, p: u64) -> i32 {
    legendre_unchecked(d, p)
}

// ---------------------------------------------------------------------------
// Curve spec grammar
// ---------------------------------------------------------------------------

/// Parse the CLI curve grammar:
/// `d8:u=R`, `d12:u=R`, `d8alt:u=R`, `d12alt:u=R`, `custom:f=[R,...]`,
/// optionally followed by `;twist=I`. R is `n` or `n/d` in lowest terms.
pub fn parse_spec(s: &str) -> Result<GenusTwoCurve> {
    let (head, twist) = match s.find(';') {
        None => (s, 1i64),
        Some(i) => {
            let tail = &s[i + 1..];
            let d = tail.strip_prefix("twist=").ok_or(Error::Parse {
                pos: i + 1,
                msg: format!("expected `twist=<int>`, got `{tail}`"),
            })?;
            let d: i64 = d.parse().map_err(|_| Error::Parse {
                pos: i + 7,
                msg: format!("bad twist integer `{d}`"),
            })?;
            (&s[..i], d)
        }
    };
    let colon = head.find(':').ok_or(Error::Parse {
        pos: 0,
        msg: "expected `<tag>:<params>`".into(),
    })?;
    let tag = &head[..colon];
    let rest = &head[colon + 1..];
    let curve = match tag {
        "d8" | "d12" | "d8alt" | "d12alt" => {
            let u_str = rest.strip_prefix("u=").ok_or(Error::Parse {
                pos: colon + 1,
                msg: format!("expected `u=<rational>`, got `{rest}`"),
            })?;
            let u = parse_rat(u_str, colon + 3)?;
            match tag {
                "d8" => d8_curve(&u)?,
                "d12" => d12_curve(&u)?,
                "d8alt" => alt_model(Family::D8, &u)?,
                _ => alt_model(Family::D12, &u)?,
            }
        }
        "custom" => {
            let list = rest.strip_prefix("f=[").and_then(|r| r.strip_suffix(']')).ok_or(
                Error::Parse {
                    pos: colon + 1,
                    msg: format!("expected `f=[a0,a1,...]`, got `{rest}`"),
                },
            )?;
            let mut coeffs = Vec::new();
            for (k, item) in list.split(',').enumerate() {
                coeffs.push(parse_rat(item.trim(), colon + 4 + k)?);
            }
            custom_curve(&coeffs)?
        }
        other => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("unknown curve tag `{other}`"),
            })
        }
    };
    curve.quadratic_twist(twist)
}

fn parse_rat(s: &str, pos: usize) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<Int> {
        t.parse::<Int>().map_err(|_| Error::Parse {
            pos,
            msg: format!("bad rational `{s}`"),
        })
    };
    match s.find('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some(i) => {
            let n = parse_int(&s[..i])?;
            let d = parse_int(&s[i + 1..])?;
            if d.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rat::new(n, d))
        }
    }
}
