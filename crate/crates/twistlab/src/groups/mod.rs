//! Exact construction of Aut(C), the twisting group G_C = Aut(C) x| Gal(K/Q)
//! with its Galois action, the twisting representation theta as 4x4 rational
//! matrices on the endomorphism algebra, character tables with verification,
//! and restriction/induction of class functions.
//!
//! Everything here is symbolic: matrices live over the multiquadratic field
//! K generated by the automorphism coefficients, the Galois action is applied
//! entrywise and resolved by table lookup (never hard-coded), and all
//! identities are checked as exact equalities over Q.

pub mod endalg;
pub mod tables;

use crate::curves::{check_u_excluded, Family};
use crate::cyclotomic::Cyc;
use crate::multiquad::{GalMask, MqElem, MultiQuadField};
use crate::{rat, ratio, Error, Mat4, Rat, Result};
use endalg::EndElem;
use num_traits::{One, Zero};
use tables::{expected_theta_constituents, table_for, CharTable};

/// Which squares exist among u and (2u resp. 3u); decides the field K, the
/// group order, and which appendix table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithCase {
    /// Neither u nor 2u/3u is a rational square: [K:Q] = 4.
    Generic,
    /// u is a square: K = Q(sqrt 2) resp. Q(sqrt 3).
    USquare,
    /// 2u (D8) resp. 3u (D12) is a square.
    AuxSquare,
}

impl ArithCase {
    pub fn name(&self) -> &'static str {
        match self {
            ArithCase::Generic => "generic",
            ArithCase::USquare => "u-square",
            ArithCase::AuxSquare => "aux-square",
        }
    }
}

/// Exact rational squareness dispatch on the squarefree part of u.
pub fn arithmetic_case(family: Family, u: &Rat) -> ArithCase {
    let (s, _) = crate::arith::sqrt_decompose_rat(u);
    if s.is_one() {
        ArithCase::USquare
    } else if s == crate::Int::from(family.aux_radicand()) {
        ArithCase::AuxSquare
    } else {
        ArithCase::Generic
    }
}

/// 2x2 matrix over the multiquadratic field K: one automorphism of C in the
/// faithful representation alpha -> (m n; p q).
#[derive(Clone, PartialEq, Eq)]
pub struct AutMat {
    pub e: [[MqElem; 2]; 2],
}

impl AutMat {
    fn mul(&self, rhs: &AutMat) -> AutMat {
        let c = |i: usize, j: usize| {
            self.e[i][0]
                .mul(&rhs.e[0][j])
                .add(&self.e[i][1].mul(&rhs.e[1][j]))
        };
        AutMat {
            e: [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]],
        }
    }

    fn conj(&self, sigma: GalMask) -> AutMat {
        AutMat {
            e: [
                [self.e[0][0].conj(sigma), self.e[0][1].conj(sigma)],
                [self.e[1][0].conj(sigma), self.e[1][1].conj(sigma)],
            ],
        }
    }
}

impl std::fmt::Debug for AutMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{:?}, {:?}; {:?}, {:?}]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// Aut(C) as explicit matrices over K, with multiplication table and the
/// image of each element in the endomorphism algebra.
pub struct AutGroup {
    pub family: Family,
    pub u: Rat,
    pub field: MultiQuadField,
    pub mats: Vec<AutMat>,
    pub names: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub end_elems: Vec<EndElem>,
    /// Indices of the generators and the hyperelliptic involution.
    pub u_idx: usize,
    pub v_idx: usize,
    pub w_idx: usize,
}

/// Build Aut(C) from the published generators. The group elements are
/// enumerated as V^j and U V^j; closure, the defining relations, and
/// faithfulness are verified symbolically.
pub fn build_aut_group(family: Family, u: &Rat) -> Result<AutGroup> {
    check_u_excluded(family, u)?;
    let aux = family.aux_radicand();
    let (su_class, _) = crate::arith::sqrt_decompose_rat(u);
    let su_class: i64 = (&su_class).try_into().expect("desk-scale u");
    let field = MultiQuadField::new(&[su_class, aux]);
    let su = field.sqrt_of(u).expect("sqrt(u) lies in K by construction");
    let saux = field
        .sqrt_of(&rat(aux))
        .expect("sqrt(aux) lies in K by construction");
    let half = ratio(1, 2);
    let (umat, vmat, vorder) = match family {
        Family::D8 => {
            // U = (1/sqrt2, 1/sqrt(2u); sqrt(u/2), -1/sqrt2),
            // V = (0, -1/sqrt u; sqrt u, 0).
            let inv_s2 = saux.inv();
            let umat = AutMat {
                e: [
                    [inv_s2.clone(), saux.mul(&su).inv()],
                    [su.mul(&saux).mul_rat(&half), inv_s2.neg()],
                ],
            };
            let vmat = AutMat {
                e: [
                    [field.zero(), su.inv().neg()],
                    [su.clone(), field.zero()],
                ],
            };
            (umat, vmat, 4usize)
        }
        Family::D12 => {
            // U = (0, sqrt(u)/3; 3/sqrt(u), 0),
            // V = (1/2, -sqrt(u)/sqrt(12); 3 sqrt(3)/sqrt(4u), 1/2).
            let umat = AutMat {
                e: [
                    [field.zero(), su.mul_rat(&ratio(1, 3))],
                    [su.inv().mul_rat(&rat(3)), field.zero()],
                ],
            };
            let vmat = AutMat {
                e: [
                    [
                        field.from_rat(half.clone()),
                        su.mul(&saux.inv()).mul_rat(&-half.clone()),
                    ],
                    [
                        saux.mul(&su.inv()).mul_rat(&ratio(3, 2)),
                        field.from_rat(half.clone()),
                    ],
                ],
            };
            (umat, vmat, 6usize)
        }
    };

    // Elements: V^j for j < vorder, then U V^j.
    let mut mats = Vec::with_capacity(2 * vorder);
    let mut names = Vec::with_capacity(2 * vorder);
    let mut end_elems = Vec::with_capacity(2 * vorder);
    let id = AutMat {
        e: [
            [field.one(), field.zero()],
            [field.zero(), field.one()],
        ],
    };
    let mut vpow = id.clone();
    let mut vpow_end = EndElem::one(family);
    for j in 0..vorder {
        mats.push(vpow.clone());
        end_elems.push(vpow_end.clone());
        names.push(match j {
            0 => "1".to_string(),
            1 => "V".to_string(),
            _ => format!("V^{j}"),
        });
        vpow = vpow.mul(&vmat);
        vpow_end = vpow_end.mul(&EndElem::v_star(family));
    }
    assert_eq!(vpow, id, "V does not have the declared order");
    for j in 0..vorder {
        mats.push(umat.mul(&mats[j]));
        end_elems.push(EndElem::u_star(family).mul(&end_elems[j]));
        names.push(match j {
            0 => "U".to_string(),
            1 => "U*V".to_string(),
            _ => format!("U*V^{j}"),
        });
    }
    let n = mats.len();
    for i in 0..n {
        for j in 0..n {
            assert!(i == j || mats[i] != mats[j], "generators collapse: K not minimal");
        }
    }
    // Relations: U^2 = 1 and U V = V^(vorder-1) U.
    assert_eq!(umat.mul(&umat), id, "U^2 != 1");
    assert_eq!(
        umat.mul(&vmat),
        mats[vorder - 1].mul(&umat),
        "dihedral relation fails"
    );

    let find = |m: &AutMat| -> usize {
        mats.iter()
            .position(|x| x == m)
            .expect("product escapes the generated group: closure failure")
    };
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| find(&mats[i].mul(&mats[j]))).collect())
        .collect();
    let inv: Vec<usize> = (0..n)
        .map(|i| (0..n).position(|j| mul[i][j] == 0).unwrap())
        .collect();
    // w = -identity: the hyperelliptic involution, V^2 resp. V^3.
    let w = AutMat {
        e: [
            [field.one().neg(), field.zero()],
            [field.zero(), field.one().neg()],
        ],
    };
    let w_idx = find(&w);
    assert_eq!(w_idx, vorder / 2, "w is V^(ord(V)/2)");

    Ok(AutGroup {
        family,
        u: u.clone(),
        field,
        mats,
        names,
        mul,
        inv,
        end_elems,
        u_idx: vorder,
        v_idx: 1,
        w_idx,
    })
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    /// lambda_C(sigma)(alpha): entrywise Galois conjugation, resolved to a
    /// group element by lookup. Failure means K was not minimal.
    pub fn galois_action(&self, sigma: GalMask, alpha: usize) -> usize {
        let img = self.mats[alpha].conj(sigma);
        self.mats
            .iter()
            .position(|m| *m == img)
            .expect("Galois image is not an automorphism: K not minimal")
    }
}

/// One conjugacy class of the twisting group.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub order: u32,
}

impl ConjClass {
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }
}

/// Report of the exact decomposition of the theta character.
#[derive(Debug, Clone)]
pub struct ThetaDecomposition {
    /// Multiplicity of each table row in Tr theta.
    pub multiplicities: Vec<u64>,
    /// 1-based indices of the constituent characters.
    pub constituents: Vec<usize>,
}

/// The twisting group G_C = Aut(C) x| Gal(K/Q) with the representation theta
/// and its matched character table.
pub struct TwistingGroup {
    pub aut: AutGroup,
    pub case: ArithCase,
    pub gal: Vec<GalMask>,
    /// Element i = (aut_of[i], gal_of[i]); identity is element 0.
    pub elems: Vec<(usize, usize)>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub orders: Vec<u32>,
    pub theta: Vec<Mat4>,
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<usize>,
    pub table: CharTable,
    /// matching[class index] = column index of the table.
    pub matching: Vec<usize>,
    pub theta_decomposition: ThetaDecomposition,
}

/// Build the twisting group for the family curve with parameter u, compute
/// theta, conjugacy classes, and match them against the published table.
pub fn build_twisting_group(family: Family, u: &Rat) -> Result<TwistingGroup> {
    let aut = build_aut_group(family, u)?;
    let case = arithmetic_case(family, u);
    let gal = aut.field.galois_group();
    let na = aut.order();
    let ng = gal.len();
    let n = na * ng;

    // lambda_C as a table: action[gi][a].
    let action: Vec<Vec<usize>> = gal
        .iter()
        .map(|&sigma| (0..na).map(|a| aut.galois_action(sigma, a)).collect())
        .collect();

    let idx = |a: usize, g: usize| a * ng + g;
    let elems: Vec<(usize, usize)> = (0..na)
        .flat_map(|a| (0..ng).map(move |g| (a, g)))
        .collect();
    // (a1, s1)(a2, s2) = (a1 * lambda(s1)(a2), s1 s2); masks compose by xor.
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let (a1, g1) = elems[i];
            (0..n)
                .map(|j| {
                    let (a2, g2) = elems[j];
                    let a = aut.mul[a1][action[g1][a2]];
                    let g = (gal[g1] ^ gal[g2]) as usize;
                    idx(a, g)
                })
                .collect()
        })
        .collect();
    let inv: Vec<usize> = (0..n)
        .map(|i| (0..n).position(|j| mul[i][j] == 0).unwrap())
        .collect();
    let orders: Vec<u32> = (0..n)
        .map(|i| {
            let mut k = 1;
            let mut x = i;
            while x != 0 {
                x = mul[x][i];
                k += 1;
            }
            k
        })
        .collect();

    // theta((alpha, sigma)): psi -> alpha* . (sigma psi), on the basis
    // {1, U*, V*, U*V*}. The Galois action on the basis goes through the
    // group: sigma(U*) = (sigma U)*, etc.
    let theta: Vec<Mat4> = (0..n)
        .map(|i| {
            let (a, g) = elems[i];
            let astar = &aut.end_elems[a];
            let su = &aut.end_elems[action[g][aut.u_idx]];
            let sv = &aut.end_elems[action[g][aut.v_idx]];
            let images = [
                astar.clone(),
                astar.mul(su),
                astar.mul(sv),
                astar.mul(&su.mul(sv)),
            ];
            let mut m = Mat4::zero();
            for (j, img) in images.iter().enumerate() {
                for r in 0..4 {
                    m.e[r][j] = img.c[r].clone();
                }
            }
            m
        })
        .collect();

    // Conjugacy classes by orbit partition.
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<ConjClass> = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|x| mul[mul[x][g]][inv[x]]).collect();
        members.sort_unstable();
        members.dedup();
        let cid = classes.len();
        for &m in &members {
            class_of[m] = cid;
        }
        classes.push(ConjClass {
            rep: g,
            members,
            order: orders[g],
        });
    }

    let table = table_for(family, case);
    assert_eq!(
        table.order() as usize,
        n,
        "group order {} does not match the published table {:?}",
        n,
        table.gap_id
    );
    let theta_trace: Vec<Rat> = classes.iter().map(|c| theta[c.rep].trace()).collect();
    let (matching, decomposition) =
        match_table(&classes, &theta_trace, &table, family, case)?;

    Ok(TwistingGroup {
        aut,
        case,
        gal,
        elems,
        mul,
        inv,
        orders,
        theta,
        classes,
        class_of,
        table,
        matching,
        theta_decomposition: decomposition,
    })
}

/// Match computed classes to table columns by the fingerprint
/// (element order, class size, Tr theta), trying each decomposition shape
/// admissible for this case. Ties inside a fingerprint are resolved in
/// canonical (enumeration) order; the decomposition inner products are
/// invariant under such tie permutations since tied classes share both size
/// and theta trace.
fn match_table(
    classes: &[ConjClass],
    theta_trace: &[Rat],
    table: &CharTable,
    family: Family,
    case: ArithCase,
) -> Result<(Vec<usize>, ThetaDecomposition)> {
    let k = classes.len();
    assert_eq!(
        k,
        table.classes.len(),
        "class count {} does not match table {:?}",
        k,
        table.gap_id
    );
    {
        let mut computed: Vec<(u32, u64)> =
            classes.iter().map(|c| (c.order, c.size())).collect();
        let mut published: Vec<(u32, u64)> =
            table.classes.iter().map(|c| (c.order, c.size)).collect();
        computed.sort_unstable();
        published.sort_unstable();
        assert_eq!(
            computed, published,
            "class (order, size) data does not match table {:?}",
            table.gap_id
        );
    }

    for candidate in expected_theta_constituents(family, case) {
        // Table-side theta trace for this candidate decomposition.
        let table_trace: Vec<Rat> = (0..k)
            .map(|c| {
                let mut acc = Cyc::zero();
                for &i in &candidate {
                    acc = acc.add(&table.rows[i][c]);
                }
                acc.as_rat().expect("theta trace is rational")
            })
            .collect();
        // Greedy fingerprint matching.
        let mut matching = vec![usize::MAX; k];
        let mut used = vec![false; k];
        let mut ok = true;
        'class: for (ci, class) in classes.iter().enumerate() {
            for col in 0..k {
                if used[col] {
                    continue;
                }
                if table.classes[col].order == class.order
                    && table.classes[col].size == class.size()
                    && table_trace[col] == theta_trace[ci]
                {
                    matching[ci] = col;
                    used[col] = true;
                    continue 'class;
                }
            }
            ok = false;
            break;
        }
        if !ok {
            continue;
        }
        // Confirm with exact inner products against the full table.
        let order = rat(table.order() as i64);
        let mut mult: Vec<u64> = Vec::with_capacity(k);
        let mut integral = true;
        for row in &table.rows {
            let mut acc = Cyc::zero();
            for (ci, class) in classes.iter().enumerate() {
                let term = row[matching[ci]]
                    .conj()
                    .scale(&(&theta_trace[ci] * rat(class.size() as i64)));
                acc = acc.add(&term);
            }
            let m = acc
                .as_rat()
                .map(|r| r / &order)
                .expect("inner product with a rational class function is rational");
            if !m.is_integer() || m < Rat::zero() {
                integral = false;
                break;
            }
            mult.push(u64::try_from(m.to_integer()).unwrap());
        }
        if !integral {
            continue;
        }
        let constituents: Vec<usize> = mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i + 1)
            .collect();
        let expected: Vec<usize> = candidate.iter().map(|i| i + 1).collect();
        if constituents == expected && candidate.iter().all(|&i| mult[i] == 1) {
            return Ok((
                matching,
                ThetaDecomposition {
                    multiplicities: mult,
                    constituents,
                },
            ));
        }
    }
    Err(Error::Parse {
        pos: 0,
        msg: format!(
            "no admissible matching of computed classes to table {:?}",
            table.gap_id
        ),
    })
}

impl TwistingGroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn family(&self) -> Family {
        self.aut.family
    }

    /// Degree of K over Q.
    pub fn field_degree(&self) -> usize {
        self.gal.len()
    }

    /// Index of the element (alpha, sigma).
    pub fn elem(&self, aut_idx: usize, gal_idx: usize) -> usize {
        aut_idx * self.gal.len() + gal_idx
    }

    /// The central element (w, id).
    pub fn w_elem(&self) -> usize {
        self.elem(self.aut.w_idx, 0)
    }

    /// Elements of H_C = Aut(C) embedded as (alpha, id).
    pub fn h_elems(&self) -> Vec<usize> {
        (0..self.aut.order()).map(|a| self.elem(a, 0)).collect()
    }

    pub fn is_in_h(&self, i: usize) -> bool {
        self.elems[i].1 == 0
    }

    pub fn theta_trace_by_class(&self) -> Vec<Rat> {
        self.classes.iter().map(|c| self.theta[c.rep].trace()).collect()
    }

    /// theta is a homomorphism: exact matrix identity over all |G|^2 pairs.
    pub fn verify_theta_homomorphism(&self) -> bool {
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                if self.theta[self.mul[i][j]] != self.theta[i].mul(&self.theta[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// theta is faithful: only the identity maps to the identity matrix.
    pub fn verify_theta_faithful(&self) -> bool {
        self.theta
            .iter()
            .enumerate()
            .all(|(i, m)| (i == 0) == m.is_identity())
    }

    /// Tr theta per element.
    pub fn theta_trace_by_elem(&self) -> Vec<Rat> {
        (0..self.order())
            .map(|i| self.theta[i].trace())
            .collect()
    }

    /// Induced class function from H_C: Ind phi(g) =
    /// (1/|H|) sum_{x : x g x^(-1) in H} phi(x g x^(-1)).
    /// phi is given per automorphism index.
    pub fn induce_from_h(&self, phi: &[Rat]) -> Vec<Rat> {
        let n = self.order();
        let mut out = Vec::with_capacity(n);
        for g in 0..n {
            let mut acc = Rat::zero();
            for x in 0..n {
                let c = self.mul[self.mul[x][g]][self.inv[x]];
                if self.is_in_h(c) {
                    acc += &phi[self.elems[c].0];
                }
            }
            out.push(acc / rat(self.aut.order() as i64));
        }
        out
    }

    /// The restriction Res theta = 2 rho: returns rho (per automorphism
    /// index) after checking divisibility by 2.
    pub fn rho_on_h(&self) -> Vec<Rat> {
        let half = ratio(1, 2);
        (0..self.aut.order())
            .map(|a| {
                let t = self.theta[self.elem(a, 0)].trace();
                let r = t * &half;
                assert!(r.is_integer(), "Res theta is not divisible by 2");
                r
            })
            .collect()
    }

    /// Inner product over H_C of class functions given per automorphism index.
    pub fn inner_product_h(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.aut.order() {
            acc += &a[i] * &b[i];
        }
        acc / rat(self.aut.order() as i64)
    }

    /// The structural identities of the twisting representation, checked
    /// exactly: trace -4 at (w, id), vanishing off H_C, Res theta = 2 rho
    /// with rho irreducible, Ind rho = ([K:Q]/2) theta, and
    /// Ind Res theta = [K:Q] theta.
    pub fn verify_structural_identities(&self) -> std::result::Result<(), String> {
        let w = self.w_elem();
        if self.theta[w].trace() != rat(-4) {
            return Err("Tr theta(w, id) != -4".into());
        }
        if self.theta[w] != Mat4::identity().neg() {
            return Err("theta(w, id) != -Id".into());
        }
        let traces = self.theta_trace_by_elem();
        for (i, t) in traces.iter().enumerate() {
            if !self.is_in_h(i) && !t.is_zero() {
                return Err(format!("Tr theta != 0 off H_C at element {i}"));
            }
        }
        let rho = self.rho_on_h();
        if rho[0] != rat(2) {
            return Err("rho does not have dimension 2".into());
        }
        if self.inner_product_h(&rho, &rho) != Rat::one() {
            return Err("(rho, rho)_H != 1: rho not irreducible".into());
        }
        // Ind rho = ([K:Q]/2) theta.
        let ind_rho = self.induce_from_h(&rho);
        let scale = rat(self.field_degree() as i64 / 2);
        for i in 0..self.order() {
            if ind_rho[i] != &traces[i] * &scale {
                return Err("Ind rho != ([K:Q]/2) theta".into());
            }
        }
        // Ind Res theta = [K:Q] theta.
        let res_theta: Vec<Rat> = (0..self.aut.order())
            .map(|a| self.theta[self.elem(a, 0)].trace())
            .collect();
        let ind_res = self.induce_from_h(&res_theta);
        let scale = rat(self.field_degree() as i64);
        for i in 0..self.order() {
            if ind_res[i] != &traces[i] * &scale {
                return Err("Ind Res theta != [K:Q] theta".into());
            }
        }
        Ok(())
    }

    /// In the split cases the two constituents of theta agree on H_C.
    pub fn verify_split_restrictions(&self) -> std::result::Result<(), String> {
        let cons = &self.theta_decomposition.constituents;
        if cons.len() != 2 {
            return Ok(());
        }
        let (i, j) = (cons[0] - 1, cons[1] - 1);
        for &h in &self.h_elems() {
            let col = self.matching[self.class_of[h]];
            if self.table.rows[i][col] != self.table.rows[j][col] {
                return Err(format!(
                    "Res chi_{} != Res chi_{} at element {}",
                    cons[0], cons[1], h
                ));
            }
        }
        Ok(())
    }

    /// Character values must be real on ambivalent classes (classes closed
    /// under inversion); this is what pins the sqrt(2) entries of GAP(16,7).
    pub fn verify_reality_on_ambivalent_classes(&self) -> std::result::Result<(), String> {
        for (ci, class) in self.classes.iter().enumerate() {
            let ambivalent = class.members.contains(&self.inv[class.rep]);
            if !ambivalent {
                continue;
            }
            let col = self.matching[ci];
            for (ri, row) in self.table.rows.iter().enumerate() {
                if !row[col].is_real() {
                    return Err(format!(
                        "chi_{} is complex on the ambivalent class {}",
                        ri + 1,
                        self.table.classes[col].label
                    ));
                }
            }
        }
        Ok(())
    }

    /// Exact multiplicities (chi, chi_i) of an arbitrary class function given
    /// per computed class.
    pub fn decompose(&self, values: &[Cyc]) -> Vec<Rat> {
        let order = rat(self.order() as i64);
        self.table
            .rows
            .iter()
            .map(|row| {
                let mut acc = Cyc::zero();
                for (ci, class) in self.classes.iter().enumerate() {
                    let term = values[ci]
                        .mul(&row[self.matching[ci]].conj())
                        .scale(&rat(class.size() as i64));
                    acc = acc.add(&term);
                }
                acc.as_rat()
                    .map(|r| r / &order)
                    .expect("multiplicity of a genuine character is rational")
            })
            .collect()
    }

    /// Map from Gal(L/Q) into G_C for the quadratic twist by d:
    /// sigma -> (w^eps_d(sigma), pi_{L/K}(sigma)). Returns the extension
    /// field L and the map as a vector over Gal(L/Q) masks.
    pub fn lambda_phi_quadratic(&self, d: i64) -> Result<QuadraticCocycle> {
        if d == 0 || !crate::arith::is_squarefree(d) {
            return Err(Error::BadTwist(d));
        }
        let sf = crate::arith::squarefree_part_i64(d);
        if self.aut.field.contains_sqrt_class(sf) {
            return Err(Error::TwistInField(d));
        }
        let mut lfield = self.aut.field.clone();
        assert!(lfield.try_adjoin(sf));
        let k_bits = self.aut.field.gens().len() as u32;
        let eps_bit = k_bits;
        let k_mask: GalMask = (1 << k_bits) - 1;
        let map: Vec<usize> = lfield
            .galois_group()
            .iter()
            .map(|&sigma| {
                let pi = (sigma & k_mask) as usize;
                let eps = sigma >> eps_bit & 1;
                let a = if eps == 1 { self.aut.w_idx } else { 0 };
                self.elem(a, pi)
            })
            .collect();
        let cocycle = QuadraticCocycle {
            d,
            field: lfield,
            map,
        };
        // Monomorphism check over all pairs.
        let gal = cocycle.field.galois_group();
        for &s in &gal {
            for &t in &gal {
                let lhs = cocycle.map[(s ^ t) as usize];
                let rhs = self.mul[cocycle.map[s as usize]][cocycle.map[t as usize]];
                assert_eq!(lhs, rhs, "lambda_phi is not a homomorphism");
            }
        }
        {
            let mut seen = cocycle.map.clone();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), gal.len(), "lambda_phi is not injective");
        }
        Ok(cocycle)
    }
}

/// The cocycle of a quadratic twist: L = K(sqrt d) and the monomorphism
/// Gal(L/Q) -> G_C, indexed by Galois masks of L.
pub struct QuadraticCocycle {
    pub d: i64,
    pub field: MultiQuadField,
    /// map[sigma] = element index in the twisting group.
    pub map: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cases() {
        assert_eq!(arithmetic_case(Family::D8, &rat(3)), ArithCase::Generic);
        assert_eq!(arithmetic_case(Family::D8, &rat(4)), ArithCase::USquare);
        assert_eq!(arithmetic_case(Family::D8, &rat(2)), ArithCase::AuxSquare);
        assert_eq!(arithmetic_case(Family::D8, &ratio(1, 2)), ArithCase::AuxSquare);
        assert_eq!(arithmetic_case(Family::D12, &rat(2)), ArithCase::Generic);
        assert_eq!(arithmetic_case(Family::D12, &rat(4)), ArithCase::USquare);
        assert_eq!(arithmetic_case(Family::D12, &rat(3)), ArithCase::AuxSquare);
        assert_eq!(arithmetic_case(Family::D12, &rat(-3)), ArithCase::Generic);
    }

    #[test]
    fn aut_group_d8() {
        let g = build_aut_group(Family::D8, &rat(3)).unwrap();
        assert_eq!(g.order(), 8);
        // V^2 = w = -identity.
        assert_eq!(g.mul[g.v_idx][g.v_idx], g.w_idx);
        // U^2 = 1.
        assert_eq!(g.mul[g.u_idx][g.u_idx], 0);
        // End algebra images: w* = -1.
        assert_eq!(g.end_elems[g.w_idx], EndElem::one(Family::D8).neg());
    }

    #[test]
    fn aut_group_d12() {
        let g = build_aut_group(Family::D12, &rat(2)).unwrap();
        assert_eq!(g.order(), 12);
        // V^3 = w.
        let v2 = g.mul[g.v_idx][g.v_idx];
        assert_eq!(g.mul[v2][g.v_idx], g.w_idx);
        assert_eq!(g.mul[g.u_idx][g.u_idx], 0);
    }

    #[test]
    fn galois_actions_match_published() {
        // D8, sigma: sqrt(u) -> -sqrt(u): U -> UV, V -> V^3.
        let g = build_aut_group(Family::D8, &rat(3)).unwrap();
        let sigma: GalMask = 0b01; // flip sqrt(u) = gen 0
        let tau: GalMask = 0b10; // flip sqrt(2)
        let uv = g.mul[g.u_idx][g.v_idx];
        assert_eq!(g.galois_action(sigma, g.u_idx), uv);
        let v3 = g.mul[g.mul[g.v_idx][g.v_idx]][g.v_idx];
        assert_eq!(g.galois_action(sigma, g.v_idx), v3);
        assert_eq!(g.galois_action(tau, g.v_idx), g.v_idx);
        // tau multiplies every entry of U by -1, so tau(U) = wU = UV^2.
        let uv2 = g.mul[g.u_idx][g.mul[g.v_idx][g.v_idx]];
        assert_eq!(g.galois_action(tau, g.u_idx), uv2);
        // Trivial sigma acts trivially.
        for a in 0..g.order() {
            assert_eq!(g.galois_action(0, a), a);
        }

        // D12, sigma: sqrt(u) -> -sqrt(u): U -> UV^3, V -> V^5;
        // tau: sqrt(3) -> -sqrt(3): U -> U, V -> V^5.
        let g = build_aut_group(Family::D12, &rat(2)).unwrap();
        let v = g.v_idx;
        let v5 = g.mul[g.mul[g.mul[g.mul[v][v]][v]][v]][v];
        let uv3 = g.mul[g.u_idx][g.mul[g.mul[v][v]][v]];
        assert_eq!(g.galois_action(0b01, g.u_idx), uv3);
        assert_eq!(g.galois_action(0b01, v), v5);
        assert_eq!(g.galois_action(0b10, g.u_idx), g.u_idx);
        assert_eq!(g.galois_action(0b10, v), v5);
    }

    #[test]
    fn twisting_group_orders_and_classes() {
        // (d8, u=3): order 32, 11 classes with the published sizes.
        let g = build_twisting_group(Family::D8, &rat(3)).unwrap();
        assert_eq!(g.order(), 32);
        assert_eq!(g.classes.len(), 11);
        let mut sizes: Vec<u64> = g.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4]);
        // (d8, u=4): order 16, 10 classes.
        let g = build_twisting_group(Family::D8, &rat(4)).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.classes.len(), 10);
        // (d12, u=3): order 24, 9 classes (3u = 9 is a square).
        let g = build_twisting_group(Family::D12, &rat(3)).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.classes.len(), 9);
    }

    #[test]
    fn negative_parameters_build_generic_groups() {
        // Negative u puts sqrt(u) imaginary; the construction is unchanged.
        let g = build_twisting_group(Family::D8, &rat(-1)).unwrap();
        assert_eq!(g.case, ArithCase::Generic);
        assert_eq!(g.order(), 32);
        assert!(g.verify_theta_homomorphism());
        g.verify_structural_identities().unwrap();
        let g = build_twisting_group(Family::D12, &rat(-6)).unwrap();
        assert_eq!(g.order(), 48);
        g.verify_structural_identities().unwrap();
    }

    #[test]
    fn theta_basics() {
        let g = build_twisting_group(Family::D8, &rat(3)).unwrap();
        // theta((id, id)) = Id, theta((w, id)) = -Id with trace -4.
        assert!(g.theta[0].is_identity());
        assert_eq!(g.theta[g.w_elem()], Mat4::identity().neg());
        assert_eq!(g.theta[g.w_elem()].trace(), rat(-4));
        // Off H_C all traces vanish.
        for i in 0..g.order() {
            if !g.is_in_h(i) {
                assert!(g.theta[i].trace().is_zero());
            }
        }
    }

    #[test]
    fn theta_is_a_faithful_homomorphism_all_cases() {
        for (family, u) in [
            (Family::D8, rat(3)),
            (Family::D8, rat(4)),
            (Family::D8, rat(2)),
            (Family::D12, rat(2)),
            (Family::D12, rat(4)),
            (Family::D12, rat(3)),
        ] {
            let g = build_twisting_group(family, &u).unwrap();
            assert!(g.verify_theta_homomorphism(), "{family:?} u={u}");
            assert!(g.verify_theta_faithful(), "{family:?} u={u}");
            g.verify_structural_identities().unwrap();
            g.verify_split_restrictions().unwrap();
            g.verify_reality_on_ambivalent_classes().unwrap();
        }
    }

    #[test]
    fn theta_decompositions_match_published() {
        let g = build_twisting_group(Family::D8, &rat(3)).unwrap();
        assert_eq!(g.theta_decomposition.constituents, vec![11]);
        let g = build_twisting_group(Family::D8, &rat(4)).unwrap();
        assert_eq!(g.theta_decomposition.constituents, vec![9, 10]);
        let g = build_twisting_group(Family::D8, &rat(2)).unwrap();
        assert_eq!(g.theta_decomposition.constituents, vec![6, 7]);
        let g = build_twisting_group(Family::D12, &rat(2)).unwrap();
        assert_eq!(g.theta_decomposition.constituents, vec![15]);
        let g = build_twisting_group(Family::D12, &rat(3)).unwrap();
        assert_eq!(g.theta_decomposition.constituents, vec![8, 9]);
        // u square: some pair from {10, 11, 12}; report which one occurs.
        let g = build_twisting_group(Family::D12, &rat(4)).unwrap();
        let c = &g.theta_decomposition.constituents;
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|i| (10..=12).contains(i)), "got {c:?}");
    }

    #[test]
    fn regular_character_decomposes_with_degree_multiplicities() {
        let g = build_twisting_group(Family::D8, &rat(3)).unwrap();
        let values: Vec<Cyc> = g
            .classes
            .iter()
            .map(|c| {
                if c.rep == 0 {
                    Cyc::from_int(g.order() as i64)
                } else {
                    Cyc::zero()
                }
            })
            .collect();
        let mult = g.decompose(&values);
        let degs = g.table.degrees();
        for (m, d) in mult.iter().zip(&degs) {
            // Regular character columns follow table order, multiplicities
            // follow the matched rows; both equal the degrees.
            assert_eq!(m, d);
        }
    }

    #[test]
    fn quadratic_cocycles() {
        let g = build_twisting_group(Family::D8, &rat(3)).unwrap();
        // d = 5 is admissible: K = Q(sqrt3, sqrt2).
        let c = g.lambda_phi_quadratic(5).unwrap();
        assert_eq!(c.field.degree(), 8);
        // sigma fixing sqrt(d) and K: identity.
        assert_eq!(c.map[0], 0);
        // sigma negating only sqrt(d): (w, id), theta = -Id.
        let flip_d = 0b100;
        assert_eq!(c.map[flip_d as usize], g.w_elem());
        assert_eq!(g.theta[c.map[flip_d as usize]], Mat4::identity().neg());
        // sqrt(d) already in K is rejected.
        assert!(matches!(g.lambda_phi_quadratic(6), Err(Error::TwistInField(6))));
        assert!(matches!(g.lambda_phi_quadratic(1), Err(Error::TwistInField(1))));
        assert!(g.lambda_phi_quadratic(12).is_err());
    }
}
