//! Fixed-point combinatorics of Bott-Samelson resolutions: Chevalley-type
//! divisor coefficients, the inductive restriction table over binary
//! sequences, and localization sums that recompute Schubert-cell classes
//! without the operator recursion. Also the divisor multiplicity tables and
//! the closed product formula used by the matrix-variety oracle.

use crate::exactalg::{ceil_q, Family, LaurentPoly, Mono, QRat, RatFunc, VarId};
use crate::flagk::{eu_tangent, LocalizedClass};
use crate::rootsys::{RootError, RootSystem, Weight, WeylElement};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Errors raised by the localization oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BosaError {
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("operation requires a type A system")]
    WrongType,
    #[error("binary sequence length does not match the word")]
    LengthMismatch,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Divisor data attached to the positions of a reduced word: the root
/// `gamma_j = (s_{i_{j+1}} ... s_{i_l})^{-1} alpha_{i_j}` and its pairing
/// coefficient with the slope.
#[derive(Debug, Clone)]
pub struct ChevalleyData {
    pub gammas: Vec<Vec<i64>>,
    pub coeffs: Vec<QRat>,
}

fn check_reduced(sys: RootSystem, word: &[usize]) -> Result<WeylElement, BosaError> {
    let w = WeylElement::from_word(sys, word)?;
    if w.length() != word.len() {
        return Err(BosaError::NonReducedWord);
    }
    Ok(w)
}

/// Product of the letters strictly after position `j` (1-based).
fn suffix_product(sys: RootSystem, word: &[usize], j: usize) -> Result<WeylElement, BosaError> {
    WeylElement::from_word(sys, &word[j..]).map_err(BosaError::from)
}

/// Coefficients of the pulled-back divisor on the boundary components of a
/// Bott-Samelson resolution: position `j` carries
/// `<lam, gamma_j^vee> = <w_{>j} lam, alpha_{i_j}^vee>`.
pub fn chevalley_coeffs(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
) -> Result<ChevalleyData, BosaError> {
    check_reduced(sys, word)?;
    sys.check_weight(lam)?;
    let mut gammas = Vec::with_capacity(word.len());
    let mut coeffs = Vec::with_capacity(word.len());
    for (idx, &i) in word.iter().enumerate() {
        let suffix = suffix_product(sys, word, idx + 1)?;
        let gamma = suffix.inv().act_ivec(&sys.simple_root(i)?);
        let coeff = sys.pairing_simple(&suffix.act_weight(lam), i)?;
        // Cross-check the two expressions for the same coefficient.
        debug_assert_eq!(coeff, sys.pairing(lam, &gamma).unwrap());
        gammas.push(gamma);
        coeffs.push(coeff);
    }
    Ok(ChevalleyData { gammas, coeffs })
}

/// Every coefficient must be the slope pairing of some root whose reflection
/// shortens `w` on the right.
pub fn chevalley_membership(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
) -> Result<bool, BosaError> {
    let w = check_reduced(sys, word)?;
    let data = chevalley_coeffs(sys, word, lam)?;
    let mut admissible = Vec::new();
    for alpha in sys.positive_roots() {
        let ws = w.mul(&sys.reflection(&alpha)?)?;
        if ws.length() < w.length() {
            let p = sys.pairing(lam, &alpha)?;
            admissible.push(p.clone());
            admissible.push(-p);
        }
    }
    Ok(data.coeffs.iter().all(|c| admissible.contains(c)))
}

fn one_minus(m: &Mono) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(QRat::one(), m.clone()))
}

fn one_plus_y(m: &Mono) -> LaurentPoly {
    LaurentPoly::one().add(&LaurentPoly::monomial(
        QRat::one(),
        Mono::var(VarId::y()).mul(m),
    ))
}

fn char_at(sigma: &WeylElement, alpha: &[i64]) -> Mono {
    let img = sigma.act_ivec(alpha);
    Mono::from_pairs(
        img.iter()
            .enumerate()
            .map(|(k, &e)| (VarId::t((k + 1) as u32), e as i32)),
    )
}

/// Full table of entries: binary sequence, its image point, and the
/// localized restriction value.
fn bs_table(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
) -> Result<Vec<(Vec<bool>, WeylElement, RatFunc)>, BosaError> {
    let w = check_reduced(sys, word)?;
    sys.check_weight(lam)?;
    let chev = chevalley_coeffs(sys, word, lam)?;
    let mut table = vec![(Vec::new(), sys.identity(), RatFunc::one())];
    let mut mu = w.act_weight(lam);
    for (idx, &i) in word.iter().enumerate() {
        let s = sys.simple(i)?;
        let a = -sys.pairing_simple(&mu, i)?;
        let c = ceil_q(&a);
        // Round-up bookkeeping: the running-slope ceiling must agree with
        // the ceiling of the divisor coefficient at this position.
        assert_eq!(c, ceil_q(&chev.coeffs[idx]), "divisor round-up mismatch");
        let exp = i32::try_from(c - 1).expect("ceiling out of range");
        let neg_alpha: Vec<i64> = sys.simple_root(i)?.iter().map(|&e| -e).collect();
        let mut next = Vec::with_capacity(table.len() * 2);
        for (eps, p, val) in &table {
            let n_mono = char_at(p, &neg_alpha);
            let keep = RatFunc::from_factors(
                LaurentPoly::one()
                    .add(&LaurentPoly::var(VarId::y()))
                    .mul_mono(&n_mono.pow(exp)),
                &[(one_minus(&n_mono.inv()), 1)],
            );
            let cross = RatFunc::from_factors(one_plus_y(&n_mono), &[(one_minus(&n_mono), 1)]);
            let mut eps0 = eps.clone();
            eps0.push(false);
            next.push((eps0, p.clone(), val.mul(&keep)));
            let mut eps1 = eps.clone();
            eps1.push(true);
            next.push((eps1, p.mul(&s)?, val.mul(&cross)));
        }
        table = next;
        mu = s.act_weight(&mu);
    }
    Ok(table)
}

/// Localized restrictions of the resolved class at all `2^l` fixed points of
/// the Bott-Samelson space, keyed by binary sequence.
pub fn bs_restrictions(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
) -> Result<BTreeMap<Vec<bool>, RatFunc>, BosaError> {
    Ok(bs_table(sys, word, lam)?
        .into_iter()
        .map(|(eps, _, val)| (eps, val))
        .collect())
}

/// Schubert-cell class recomputed by pushing the resolution table to the
/// flag variety: at each fixed point, the tangent Euler class times the sum
/// of table values over binary sequences mapping there. Independent oracle
/// for the operator recursion.
pub fn mc_via_lrr(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
) -> Result<LocalizedClass, BosaError> {
    let table = bs_table(sys, word, lam)?;
    let mut sums: BTreeMap<WeylElement, RatFunc> = BTreeMap::new();
    for (_, p, val) in table {
        let entry = sums.entry(p).or_insert_with(RatFunc::zero);
        *entry = entry.add(&val);
    }
    let mut out = LocalizedClass::zero(sys);
    for (sigma, total) in sums {
        let val = total.mul_poly(&eu_tangent(sys, &sigma));
        out.set(sigma, val);
    }
    Ok(out)
}

/// Which resolution of the matrix Schubert variety a multiplicity table
/// refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Divisor multiplicities of the pulled-back twisting divisor on a matrix
/// Bott-Samelson resolution: coefficients on the `n` diagonal components and
/// the `l` boundary components, plus the underlying 0/1 incidence table
/// against the matrix divisors indexed by `k`.
#[derive(Debug, Clone)]
pub struct MultTable {
    pub b_part: Vec<QRat>,
    pub d_part: Vec<QRat>,
    pub rule: Vec<Vec<bool>>,
}

fn require_type_a(sys: RootSystem) -> Result<usize, BosaError> {
    match sys {
        RootSystem::A(n) => Ok(n),
        _ => Err(BosaError::WrongType),
    }
}

/// Multiplicity table for the chosen resolution. The diagonal coefficients
/// are `lam_j` (left) or `lam_{w^{-1}(j)}` (right); boundary position `j`
/// carries `<w_{>j} lam, alpha_{i_j}^vee>`, and the incidence rule marks
/// `k` with `w_{>j}^{-1}(i_j) <= k < w_{>j}^{-1}(i_j + 1)`.
pub fn matrix_multiplicities(
    sys: RootSystem,
    word: &[usize],
    side: Side,
    lam: &Weight,
) -> Result<MultTable, BosaError> {
    let n = require_type_a(sys)?;
    let w = check_reduced(sys, word)?;
    sys.check_weight(lam)?;
    let b_part: Vec<QRat> = match side {
        Side::Left => lam.coords.clone(),
        Side::Right => {
            let winv = w.inv();
            (1..=n)
                .map(|j| lam.coords[winv.perm_image(j) - 1].clone())
                .collect()
        }
    };
    let mut d_part = Vec::with_capacity(word.len());
    let mut rule = Vec::with_capacity(word.len());
    for (idx, &i) in word.iter().enumerate() {
        let suffix_inv = suffix_product(sys, word, idx + 1)?.inv();
        let lo = suffix_inv.perm_image(i);
        let hi = suffix_inv.perm_image(i + 1);
        if lo >= hi {
            return Err(BosaError::NonReducedWord);
        }
        let d = lam.coords[lo - 1].clone() - lam.coords[hi - 1].clone();
        // Telescoping consistency against the incidence rule, with the
        // convention lam_{n+1} = 0.
        let mut tele = QRat::zero();
        let mut row = Vec::with_capacity(n);
        for k in 1..=n {
            let hit = lo <= k && k < hi;
            row.push(hit);
            if hit {
                let next = if k < n { lam.coords[k].clone() } else { QRat::zero() };
                tele += lam.coords[k - 1].clone() - next;
            }
        }
        assert_eq!(tele, d, "incidence rule fails to telescope");
        d_part.push(d);
        rule.push(row);
    }
    Ok(MultTable { b_part, d_part, rule })
}

fn t_over_t(a: usize, b: usize) -> Mono {
    Mono::from_pairs([(VarId::t(a as u32), 1), (VarId::t(b as u32), -1)])
}

fn x_over_t(j: usize, i: usize) -> Mono {
    Mono::from_pairs([(VarId::x(j as u32), 1), (VarId::t(i as u32), -1)])
}

/// Restriction of the left-resolution matrix class at one fixed point,
/// written as a closed product: a diagonal/upper-triangular base factor
/// moved by the full subword element, times per-letter factors moved by the
/// proper subword prefixes. All subword elements act on `t` indices only.
pub fn matrix_closed_formula(
    sys: RootSystem,
    word: &[usize],
    lam: &Weight,
    eps: &[bool],
) -> Result<RatFunc, BosaError> {
    let n = require_type_a(sys)?;
    check_reduced(sys, word)?;
    sys.check_weight(lam)?;
    if eps.len() != word.len() {
        return Err(BosaError::LengthMismatch);
    }

    // Subword prefix products s_{i_1}^{e_1} ... s_{i_{j-1}}^{e_{j-1}}.
    let mut prefixes = vec![sys.identity()];
    for (&i, &e) in word.iter().zip(eps) {
        let prev = prefixes.last().unwrap().clone();
        prefixes.push(if e { prev.mul(&sys.simple(i)?)? } else { prev });
    }
    let w_eps = prefixes.last().unwrap().clone();

    let mut base = RatFunc::one();
    for j in 1..=n {
        let exp = i32::try_from(1 - ceil_q(&lam.coords[j - 1])).expect("exponent fits i32");
        base = base.mul(&RatFunc::from_factors(
            LaurentPoly::monomial(QRat::one(), x_over_t(j, j).pow(exp)),
            &[(one_minus(&x_over_t(j, j)), 1)],
        ));
        for i in 1..j {
            base = base.mul(&RatFunc::from_factors(
                one_plus_y(&x_over_t(j, i)),
                &[(one_minus(&x_over_t(j, i)), 1)],
            ));
        }
    }
    let mut out = base
        .subst_monomial(&w_eps.char_map(Family::T))
        .expect("char substitution cannot vanish")
        .mul_poly(&{
            let mut p = LaurentPoly::one();
            let oy = LaurentPoly::one().add(&LaurentPoly::var(VarId::y()));
            for _ in 0..n {
                p = p.mul(&oy);
            }
            p
        });

    for (idx, &i) in word.iter().enumerate() {
        let psi = if eps[idx] {
            RatFunc::from_factors(one_plus_y(&t_over_t(i + 1, i)), &[(one_minus(&t_over_t(i + 1, i)), 1)])
        } else {
            let suffix_inv = suffix_product(sys, word, idx + 1)?.inv();
            let lo = suffix_inv.perm_image(i);
            let hi = suffix_inv.perm_image(i + 1);
            let a = lam.coords[lo - 1].clone() - lam.coords[hi - 1].clone();
            let exp = i32::try_from(1 - ceil_q(&a)).expect("exponent fits i32");
            RatFunc::from_factors(
                LaurentPoly::one()
                    .add(&LaurentPoly::var(VarId::y()))
                    .mul_mono(&t_over_t(i, i + 1).pow(exp)),
                &[(one_minus(&t_over_t(i, i + 1)), 1)],
            )
        };
        let moved = psi
            .subst_monomial(&prefixes[idx].char_map(Family::T))
            .expect("char substitution cannot vanish");
        out = out.mul(&moved);
    }
    Ok(out)
}
