//! Twisted motivic Chern classes of maximal-rank matrix Schubert varieties
//! in the space of n x n matrices: the boundary and Euler normalization
//! factors, the identity-cell seed, left and right operator recursions, and
//! the Kirwan restriction comparing matrix classes with flag classes.

use crate::bosa::{matrix_closed_formula, BosaError};
use crate::dloper::{make_tcl, make_tcr, make_tfl, DlError};
use crate::exactalg::{ceil_q, ExactError, Family, LaurentPoly, Mono, QRat, RatFunc, VarId};
use crate::flagk::{dl_left_a, dl_right_a, mc_cell, FlagError, LocalizedClass, Route};
use crate::rootsys::{RootError, RootSystem, Weight, WeylElement};
use num_traits::One;

/// Errors raised by matrix-class computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("operation requires a type A system")]
    WrongType,
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("denominator vanishes under the restriction at {sigma}")]
    DenominatorVanishes { sigma: String },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Dl(#[from] DlError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Bosa(#[from] BosaError),
}

/// Class on the space of n x n matrices: a rational function in the `t`, `x`
/// and `y` variables.
#[derive(Debug, Clone)]
pub struct MatrixClass {
    pub n: usize,
    pub value: RatFunc,
}

/// Recursion direction for matrix classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRoute {
    Left,
    Right,
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

fn x_over_x(j: usize, i: usize) -> Mono {
    Mono::from_pairs([(VarId::x(j as u32), 1), (VarId::x(i as u32), -1)])
}

fn x_over_t(j: usize, i: usize) -> Mono {
    Mono::from_pairs([(VarId::x(j as u32), 1), (VarId::t(i as u32), -1)])
}

/// Boundary normalization factor `(1+y)^n prod_{i<j} (1 + y x_j/x_i)`.
pub fn bb_factor(n: usize) -> RatFunc {
    let mut p = LaurentPoly::one();
    let oy = LaurentPoly::one().add(&LaurentPoly::var(VarId::y()));
    for _ in 0..n {
        p = p.mul(&oy);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            p = p.mul(&one_plus_y(&x_over_x(j, i)));
        }
    }
    RatFunc::from_poly(p)
}

/// Euler normalization factor `prod_i prod_j (1 - x_j/t_i)`.
pub fn ee_factor(n: usize) -> RatFunc {
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        for j in 1..=n {
            p = p.mul(&one_minus(&x_over_t(j, i)));
        }
    }
    RatFunc::from_poly(p)
}

/// Matrix class of the identity cell:
/// `prod_i (1+y)(x_i/t_i)^{1-ceil(lam_i)} * prod_{i<j}(1 + y x_j/t_i) * prod_{j<i}(1 - x_j/t_i)`.
pub fn mc_matrix_id(n: usize, lam: &Weight) -> Result<MatrixClass, MatError> {
    if lam.coords.len() != n {
        return Err(MatError::Root(RootError::RankMismatch { got: lam.coords.len(), want: n }));
    }
    let mut p = LaurentPoly::one();
    let oy = LaurentPoly::one().add(&LaurentPoly::var(VarId::y()));
    for i in 1..=n {
        let exp = i32::try_from(1 - ceil_q(&lam.coords[i - 1])).expect("exponent fits i32");
        p = p.mul(&oy).mul_mono(&x_over_t(i, i).pow(exp));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            p = p.mul(&one_plus_y(&x_over_t(j, i)));
        }
    }
    for i in 1..=n {
        for j in 1..i {
            p = p.mul(&one_minus(&x_over_t(j, i)));
        }
    }
    Ok(MatrixClass { n, value: RatFunc::from_poly(p) })
}

fn require_a(w: &WeylElement) -> Result<usize, MatError> {
    match w.system() {
        RootSystem::A(n) => Ok(n),
        _ => Err(MatError::WrongType),
    }
}

/// Full matrix class built by operator recursion on polynomial
/// representatives. The normalized recursion uses the plain x-family
/// operators; multiplying by the boundary factor conjugates them into the
/// hatted variant, so the full class recurses by hatted operators and every
/// intermediate stays a polynomial. The left operators act on the `t` family,
/// which the boundary factor does not contain, so they transfer unchanged.
fn mc_matrix_full(
    w: &WeylElement,
    lam: &Weight,
    route: MatrixRoute,
) -> Result<RatFunc, MatError> {
    let n = require_a(w)?;
    let sys = w.system();
    sys.check_weight(lam)?;
    let word = w.canonical_word();
    match route {
        MatrixRoute::Right => {
            // Right operators extend the word on the right and transform the
            // slope: the identity seed is taken at w lam, and each step peels
            // one reflection off the slope until it returns to lam.
            let mu0 = w.act_weight(lam);
            let mut f = mc_matrix_id(n, &mu0)?.value;
            let mut mu = mu0;
            for &j in &word {
                let a = -sys.pairing_simple(&mu, j)?;
                let op = make_tfl(sys, j, &a, Family::X)?;
                f = op.apply(&f);
                mu = sys.simple(j)?.act_weight(&mu);
            }
            debug_assert_eq!(&mu.coords, &lam.coords);
            Ok(f)
        }
        MatrixRoute::Left => {
            // Left operators extend the word on the left at a fixed slope;
            // the operator parameter is the current element applied to lam.
            let mut f = mc_matrix_id(n, lam)?.value;
            let mut v = sys.identity();
            for &i in word.iter().rev() {
                let nu = v.act_weight(lam);
                let op = make_tcl(sys, i, &nu)?;
                f = op.apply(&f);
                v = sys.simple(i)?.mul(&v)?;
            }
            debug_assert_eq!(&v, w);
            Ok(f)
        }
    }
}

/// Normalized matrix class of `w` (the full class divided by the boundary
/// factor).
pub fn mc_matrix_normalized(
    w: &WeylElement,
    lam: &Weight,
    route: MatrixRoute,
) -> Result<RatFunc, MatError> {
    let n = require_a(w)?;
    mc_matrix_full(w, lam, route)?.div(&bb_factor(n)).map_err(MatError::Exact)
}

/// Matrix class of `w` at slope `lam`.
pub fn mc_matrix(
    w: &WeylElement,
    lam: &Weight,
    route: MatrixRoute,
) -> Result<MatrixClass, MatError> {
    let n = require_a(w)?;
    Ok(MatrixClass { n, value: mc_matrix_full(w, lam, route)? })
}

/// Restriction map to the flag variety fixed points: substitute
/// `x_i := t_{sigma(i)}` for every permutation sigma.
pub fn kirwan_restrict(n: usize, f: &RatFunc) -> Result<LocalizedClass, MatError> {
    let sys = RootSystem::A(n);
    let mut out = LocalizedClass::zero(sys);
    for sigma in sys.elements()? {
        let map = |v: VarId| -> Option<(QRat, Mono)> {
            if v.family != Family::X {
                return None;
            }
            let img = sigma.perm_image(v.index as usize);
            Some((QRat::one(), Mono::var(VarId::t(img as u32))))
        };
        match f.subst_monomial(&map) {
            Ok(val) => out.set(sigma, val),
            Err(ExactError::DenominatorVanishes) => {
                return Err(MatError::DenominatorVanishes { sigma: sigma.render() })
            }
            Err(e) => return Err(MatError::Exact(e)),
        }
    }
    Ok(out)
}

/// The Kirwan restriction of the normalized matrix class must reproduce the
/// flag-variety Schubert-cell class exactly.
pub fn verify_kirwan_factorization(w: &WeylElement, lam: &Weight) -> Result<bool, MatError> {
    let n = require_a(w)?;
    let f = mc_matrix_normalized(w, lam, MatrixRoute::Right)?;
    let restricted = kirwan_restrict(n, &f)?;
    let flag = mc_cell(w.system(), w, lam, &Route::Right)?;
    Ok(restricted.eq_class(&flag))
}

/// Oracle comparison: the Euler factor times the sum of closed-formula
/// restrictions over all binary sequences of the reduced word must equal the
/// full matrix class.
pub fn verify_matrix_oracle(w: &WeylElement, lam: &Weight) -> Result<bool, MatError> {
    let n = require_a(w)?;
    let sys = w.system();
    let word = w.canonical_word();
    let mut total = RatFunc::zero();
    for bits in 0u32..(1u32 << word.len()) {
        let eps: Vec<bool> = (0..word.len()).map(|k| bits >> k & 1 == 1).collect();
        total = total.add(&matrix_closed_formula(sys, &word, lam, &eps)?);
    }
    // Multiply the Euler factor in binomial by binomial so each one cancels
    // against its denominator partner while the intermediate stays small.
    let mut lhs = total;
    for i in 1..=n {
        for j in 1..=n {
            lhs = lhs.mul_poly(&one_minus(&x_over_t(j, i)));
        }
    }
    let rhs = mc_matrix(w, lam, MatrixRoute::Left)?.value;
    Ok(lhs.eq_rat(&rhs))
}

/// Spanning family used by [`lift_check`]: all effective monomials in the
/// `x` and `t` variables up to total degree `2n`, together with the
/// normalized matrix classes of every group element.
fn spanning_family(n: usize, lam: &Weight) -> Result<Vec<RatFunc>, MatError> {
    let sys = RootSystem::A(n);
    let mut fam = Vec::new();
    let vars: Vec<VarId> = (1..=n as u32)
        .flat_map(|i| [VarId::x(i), VarId::t(i)])
        .collect();
    let bound = 2 * n as u32;
    // Enumerate exponent vectors with total degree at most the bound.
    let mut stack: Vec<(usize, u32, Mono)> = vec![(0, 0, Mono::one())];
    while let Some((pos, used, m)) = stack.pop() {
        if pos == vars.len() {
            fam.push(RatFunc::monomial(QRat::one(), m));
            continue;
        }
        for e in 0..=(bound - used) {
            let mut next = m.clone();
            if e > 0 {
                next = next.mul(&Mono::var_pow(vars[pos], e as i32));
            }
            stack.push((pos + 1, used + e, next));
        }
    }
    for w in sys.elements()? {
        fam.push(mc_matrix_normalized(&w, lam, MatrixRoute::Right)?);
    }
    Ok(fam)
}

/// Verify that the matrix-side operators are lifts of the flag-side
/// operators through the Kirwan restriction, on a spanning family of inputs.
pub fn lift_check(n: usize, i: usize, lam: &Weight) -> Result<bool, MatError> {
    let sys = RootSystem::A(n);
    sys.check_weight(lam)?;
    let a_right = -sys.pairing_simple(lam, i)?;
    let a_left = sys.pairing_simple(lam, i)?;
    let op_right = make_tcr(sys, i, lam)?;
    let op_left = make_tcl(sys, i, lam)?;
    for f in spanning_family(n, lam)? {
        let kf = kirwan_restrict(n, &f)?;
        let lhs_r = kirwan_restrict(n, &op_right.apply(&f))?;
        let rhs_r = dl_right_a(sys, i, &a_right, &kf)?;
        if !lhs_r.eq_class(&rhs_r) {
            return Ok(false);
        }
        let lhs_l = kirwan_restrict(n, &op_left.apply(&f))?;
        let rhs_l = dl_left_a(sys, i, &a_left, &kf)?;
        if !lhs_l.eq_class(&rhs_l) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Demonstration data for the failure of the naive matrix-level identity:
/// on `f0 = 1 - x_1/t_2` the right operator at slope `lam` and the left
/// operator at slope `s_1 lam` disagree as rational functions, yet their
/// Kirwan restrictions coincide.
pub struct LiftCounterexample {
    pub input: RatFunc,
    pub right_value: RatFunc,
    pub left_value: RatFunc,
    pub equal_before_restriction: bool,
    pub equal_after_restriction: bool,
}

pub fn lift_counterexample(lam: &Weight) -> Result<LiftCounterexample, MatError> {
    let sys = RootSystem::A(2);
    sys.check_weight(lam)?;
    let f0 = RatFunc::from_poly(one_minus(&x_over_t(1, 2)));
    let right = make_tcr(sys, 1, lam)?.apply(&f0);
    let s1 = sys.simple(1)?;
    let left = make_tcl(sys, 1, &s1.act_weight(lam))?.apply(&f0);
    let before = right.eq_rat(&left);
    let after = kirwan_restrict(2, &right)?.eq_class(&kirwan_restrict(2, &left)?);
    Ok(LiftCounterexample {
        input: f0,
        right_value: right,
        left_value: left,
        equal_before_restriction: before,
        equal_after_restriction: after,
    })
}

/// JSON export of a matrix class together with its normalized form.
pub fn matrix_to_json(
    w: &WeylElement,
    lam: &Weight,
    class: &RatFunc,
    normalized: &RatFunc,
) -> serde_json::Value {
    serde_json::json!({
        "n": match w.system() { RootSystem::A(n) => n, _ => 0 },
        "w": w.render(),
        "slope": lam.render(),
        "class": class.render(),
        "normalized": normalized.render(),
    })
}
