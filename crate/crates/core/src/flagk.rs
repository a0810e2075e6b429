//! Localized equivariant K-theory of flag varieties: classes are tuples of
//! rational-function restrictions indexed by Weyl group elements. Provides
//! the twisted operator recursions for motivic Chern classes of Schubert
//! cells, stable envelopes, slope and chamber wall-crossing checks, and
//! parabolic pushforwards.

use crate::dloper::DlError;
use crate::exactalg::{
    ceil_q, floor_q, is_integer, qi, ExactError, Family, LaurentPoly, Mono, QRat, RatFunc, VarId,
};
use crate::rootsys::{RootError, RootSystem, Weight, WeylElement};
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};

/// Errors raised by localized-class computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("slope is not generic")]
    NonGenericSlope,
    #[error("slopes do not lie in the same or adjacent alcoves across the given wall")]
    NotAdjacent,
    #[error("shift weight is not integral")]
    NonIntegralShift,
    #[error("element is not a minimal coset representative")]
    NotMinimalRep,
    #[error("slope is not invariant under the parabolic subgroup")]
    SlopeNotInvariant,
    #[error("word is not a reduced word for the element")]
    NonReducedWord,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Dl(#[from] DlError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Class in localized equivariant K-theory: restriction to each fixed point.
/// Missing entries are zero.
#[derive(Debug, Clone)]
pub struct LocalizedClass {
    sys: RootSystem,
    vals: BTreeMap<WeylElement, RatFunc>,
}

impl LocalizedClass {
    pub fn zero(sys: RootSystem) -> Self {
        LocalizedClass { sys, vals: BTreeMap::new() }
    }

    pub fn system(&self) -> RootSystem {
        self.sys
    }

    pub fn get(&self, w: &WeylElement) -> RatFunc {
        self.vals.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn set(&mut self, w: WeylElement, val: RatFunc) {
        if val.is_zero() {
            self.vals.remove(&w);
        } else {
            self.vals.insert(w, val);
        }
    }

    /// Fixed points with nonzero restriction.
    pub fn support(&self) -> Vec<WeylElement> {
        self.vals.keys().cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&WeylElement, &RatFunc)> + '_ {
        self.vals.iter()
    }

    pub fn add(&self, other: &LocalizedClass) -> LocalizedClass {
        let mut out = self.clone();
        for (w, v) in &other.vals {
            let cur = out.get(w).add(v);
            out.set(w.clone(), cur);
        }
        out
    }

    pub fn sub(&self, other: &LocalizedClass) -> LocalizedClass {
        let mut out = self.clone();
        for (w, v) in &other.vals {
            let cur = out.get(w).sub(v);
            out.set(w.clone(), cur);
        }
        out
    }

    /// Multiply every restriction by a fixed rational function.
    pub fn scale(&self, c: &RatFunc) -> LocalizedClass {
        let mut out = LocalizedClass::zero(self.sys);
        for (w, v) in &self.vals {
            out.set(w.clone(), v.mul(c));
        }
        out
    }

    pub fn map_values(&self, f: &dyn Fn(&RatFunc) -> RatFunc) -> LocalizedClass {
        let mut out = LocalizedClass::zero(self.sys);
        for (w, v) in &self.vals {
            out.set(w.clone(), f(v));
        }
        out
    }

    pub fn eq_class(&self, other: &LocalizedClass) -> bool {
        if self.sys != other.sys {
            return false;
        }
        let keys: BTreeSet<&WeylElement> = self.vals.keys().chain(other.vals.keys()).collect();
        keys.into_iter().all(|w| self.get(w).eq_rat(&other.get(w)))
    }

    /// JSON export: every group element's restriction, rendered as a string.
    pub fn to_json(&self, slope: &Weight) -> Result<serde_json::Value, FlagError> {
        let mut restrictions = serde_json::Map::new();
        for w in self.sys.elements()? {
            restrictions.insert(w.render(), serde_json::Value::String(self.get(&w).render()));
        }
        Ok(serde_json::json!({
            "system": self.sys.label(),
            "slope": slope.render(),
            "restrictions": serde_json::Value::Object(restrictions),
        }))
    }
}

/// `e^{sigma alpha}` as a `t`-family monomial for an integer root vector.
fn char_at(sigma: &WeylElement, alpha: &[i64]) -> Mono {
    let img = sigma.act_ivec(alpha);
    Mono::from_pairs(
        img.iter()
            .enumerate()
            .map(|(k, &e)| (VarId::t((k + 1) as u32), e as i32)),
    )
}

/// Euler class of the tangent space at a fixed point:
/// `prod_{alpha > 0} (1 - e^{sigma alpha})`.
pub fn eu_tangent(sys: RootSystem, sigma: &WeylElement) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for alpha in sys.positive_roots() {
        let m = char_at(sigma, &alpha);
        out = out.mul(&LaurentPoly::one().sub(&LaurentPoly::monomial(QRat::one(), m)));
    }
    out
}

/// Motivic Chern class of the point cell: supported at the identity with
/// value the full tangent Euler class.
pub fn mc_point(sys: RootSystem) -> LocalizedClass {
    let mut out = LocalizedClass::zero(sys);
    out.set(sys.identity(), RatFunc::from_poly(eu_tangent(sys, &sys.identity())));
    out
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

fn one_plus_y_const() -> LaurentPoly {
    LaurentPoly::one().add(&LaurentPoly::var(VarId::y()))
}

/// Right-side twisted operator with explicit parameter `a`, acting on
/// restrictions: at sigma,
/// `(1 + y L^{-1})/(1 - L) * xi|_{sigma s} + (1+y) L^{ceil(a)-1}/(1 - L^{-1}) * xi|_sigma`
/// with `L = e^{-sigma alpha_i}`.
pub fn dl_right_a(
    sys: RootSystem,
    i: usize,
    a: &QRat,
    xi: &LocalizedClass,
) -> Result<LocalizedClass, FlagError> {
    let s = sys.simple(i)?;
    let alpha = sys.simple_root(i)?;
    let neg_alpha: Vec<i64> = alpha.iter().map(|&c| -c).collect();
    let c = ceil_q(a);
    let exp = i32::try_from(c - 1).expect("ceiling out of range");

    let mut points: BTreeSet<WeylElement> = xi.support().into_iter().collect();
    let extra: Vec<WeylElement> = points.iter().map(|w| w.mul(&s).unwrap()).collect();
    points.extend(extra);

    let mut out = LocalizedClass::zero(sys);
    for sigma in points {
        let l = char_at(&sigma, &neg_alpha);
        let coef_s = RatFunc::from_factors(one_plus_y(&l.inv()), &[(one_minus(&l), 1)]);
        let coef_id = RatFunc::from_factors(
            one_plus_y_const().mul_mono(&l.pow(exp)),
            &[(one_minus(&l.inv()), 1)],
        );
        let sigma_s = sigma.mul(&s)?;
        let val = coef_s.mul(&xi.get(&sigma_s)).add(&coef_id.mul(&xi.get(&sigma)));
        out.set(sigma, val);
    }
    Ok(out)
}

/// Slope form of the right-side operator: `a = -<lam, alpha_i^vee>`.
pub fn dl_right(
    sys: RootSystem,
    i: usize,
    lam: &Weight,
    xi: &LocalizedClass,
) -> Result<LocalizedClass, FlagError> {
    let a = -sys.pairing_simple(lam, i)?;
    dl_right_a(sys, i, &a, xi)
}

/// Left-side twisted operator with explicit parameter `a`: at sigma,
/// `(1 + y A)/(1 - A) * s(xi|_{s sigma}) + (1+y) A^{ceil(a)-1}/(1 - A^{-1}) * xi|_sigma`
/// with the constant `A = e^{-alpha_i}`; `s` acts on the `t` variables.
pub fn dl_left_a(
    sys: RootSystem,
    i: usize,
    a: &QRat,
    xi: &LocalizedClass,
) -> Result<LocalizedClass, FlagError> {
    let s = sys.simple(i)?;
    let alpha = sys.simple_root(i)?;
    let a_mono = Mono::from_pairs(
        alpha
            .iter()
            .enumerate()
            .map(|(k, &e)| (VarId::t((k + 1) as u32), -(e as i32))),
    );
    let c = ceil_q(a);
    let exp = i32::try_from(c - 1).expect("ceiling out of range");
    let coef_s = RatFunc::from_factors(one_plus_y(&a_mono), &[(one_minus(&a_mono), 1)]);
    let coef_id = RatFunc::from_factors(
        one_plus_y_const().mul_mono(&a_mono.pow(exp)),
        &[(one_minus(&a_mono.inv()), 1)],
    );

    let mut points: BTreeSet<WeylElement> = xi.support().into_iter().collect();
    let extra: Vec<WeylElement> = points.iter().map(|w| s.mul(w).unwrap()).collect();
    points.extend(extra);

    let mut out = LocalizedClass::zero(sys);
    for sigma in points {
        let s_sigma = s.mul(&sigma)?;
        let moved = xi
            .get(&s_sigma)
            .subst_monomial(&s.char_map(Family::T))
            .expect("char substitution cannot vanish");
        let val = coef_s.mul(&moved).add(&coef_id.mul(&xi.get(&sigma)));
        out.set(sigma, val);
    }
    Ok(out)
}

/// Slope form of the left-side operator: `a = <nu, alpha_i^vee>` where `nu`
/// is the operator's slope parameter.
pub fn dl_left(
    sys: RootSystem,
    i: usize,
    nu: &Weight,
    xi: &LocalizedClass,
) -> Result<LocalizedClass, FlagError> {
    let a = sys.pairing_simple(nu, i)?;
    dl_left_a(sys, i, &a, xi)
}

/// Recursion route for building a Schubert-cell class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// Right operators along the ShortLex reduced word.
    Right,
    /// Left operators along the ShortLex reduced word.
    Left,
    /// Right operators along an explicit reduced word (letters 1-based).
    Word(Vec<usize>),
}

/// Motivic Chern class of the Schubert cell of `w` at slope `lam`, built by
/// the chosen operator route. All routes agree for generic slopes.
pub fn mc_cell(
    sys: RootSystem,
    w: &WeylElement,
    lam: &Weight,
    route: &Route,
) -> Result<LocalizedClass, FlagError> {
    sys.check_weight(lam)?;
    let word = match route {
        Route::Right | Route::Left => w.canonical_word(),
        Route::Word(word) => {
            if word.len() != w.length() || WeylElement::from_word(sys, word)? != *w {
                return Err(FlagError::NonReducedWord);
            }
            word.clone()
        }
    };
    match route {
        Route::Left => {
            // Build w by left multiplications, consuming the word from its
            // end; the operator slope is the current element applied to lam.
            let mut xi = mc_point(sys);
            let mut v = sys.identity();
            for &i in word.iter().rev() {
                let nu = v.act_weight(lam);
                xi = dl_left(sys, i, &nu, &xi)?;
                v = sys.simple(i)?.mul(&v)?;
            }
            debug_assert_eq!(&v, w);
            Ok(xi)
        }
        _ => {
            // Build w by right multiplications; the running slope starts at
            // w lam and ends at lam.
            let mut xi = mc_point(sys);
            let mut mu = w.act_weight(lam);
            for &j in &word {
                xi = dl_right(sys, j, &mu, &xi)?;
                mu = sys.simple(j)?.act_weight(&mu);
            }
            debug_assert_eq!(&mu.coords, &lam.coords);
            Ok(xi)
        }
    }
}

/// Check one right-operator step against the cell classes on both sides.
///
/// For a lengthening step (`l(v s_i) > l(v)`) the operator at slope `mu`
/// carries the class of `v` to the class of `v s_i` at slope `s_i mu`; for a
/// shortening step the target class is picked up with an extra `-y` factor.
pub fn right_step_check(
    sys: RootSystem,
    v: &WeylElement,
    i: usize,
    mu: &Weight,
) -> Result<bool, FlagError> {
    let s = sys.simple(i)?;
    let vs = v.mul(&s)?;
    let s_mu = s.act_weight(mu);
    let lhs = dl_right(sys, i, mu, &mc_cell(sys, v, mu, &Route::Right)?)?;
    let target = mc_cell(sys, &vs, &s_mu, &Route::Right)?;
    let rhs = if vs.length() > v.length() {
        target
    } else {
        target.scale(&minus_y_pow(1))
    };
    Ok(lhs.eq_class(&rhs))
}

/// Substitute `y := -h^2` in every restriction.
pub fn subst_y_minus_h2(xi: &LocalizedClass) -> LocalizedClass {
    xi.map_values(&|v: &RatFunc| {
        v.subst_monomial(&|var: VarId| {
            if var == VarId::y() {
                Some((-QRat::one(), Mono::var_pow(VarId::h(), 2)))
            } else {
                None
            }
        })
        .expect("y substitution cannot vanish")
    })
}

/// K-theoretic stable envelope: `h^{-l(w)}` times the Schubert-cell class
/// with `y := -h^2`. Requires a generic slope.
pub fn stable_envelope(
    sys: RootSystem,
    w: &WeylElement,
    lam: &Weight,
) -> Result<LocalizedClass, FlagError> {
    if !sys.is_generic(lam)? {
        return Err(FlagError::NonGenericSlope);
    }
    let mc = mc_cell(sys, w, lam, &Route::Right)?;
    let shift = RatFunc::monomial(
        QRat::one(),
        Mono::var_pow(VarId::h(), -i32::try_from(w.length()).expect("length fits i32")),
    );
    Ok(subst_y_minus_h2(&mc).scale(&shift))
}

/// `(-y)^e` as a polynomial scalar.
fn minus_y_pow(e: usize) -> RatFunc {
    let mut p = LaurentPoly::one();
    let my = LaurentPoly::var(VarId::y()).neg();
    for _ in 0..e {
        p = p.mul(&my);
    }
    RatFunc::from_poly(p)
}

/// Slope wall-crossing check for the positive root `alpha`.
///
/// If the slopes share an alcove, the classes must be equal. If they lie in
/// alcoves adjacent across the wall `<., alpha^vee> = 0` (first slope on the
/// negative side), the classes must be equal when `l(w s_alpha) > l(w)`, and
/// otherwise differ by `(-y)^{(l(w)-l(w s_alpha)-1)/2} (1+y)` times the class
/// of `w s_alpha` at the second slope.
pub fn wallcross_slope_check(
    sys: RootSystem,
    w: &WeylElement,
    alpha: &[i64],
    lam1: &Weight,
    lam2: &Weight,
) -> Result<bool, FlagError> {
    sys.check_weight(lam1)?;
    sys.check_weight(lam2)?;
    if sys.same_alcove(lam1, lam2)? {
        let a = mc_cell(sys, w, lam1, &Route::Right)?;
        let b = mc_cell(sys, w, lam2, &Route::Right)?;
        return Ok(a.eq_class(&b));
    }
    // Adjacency across the alpha-wall at level 0: the alpha-pairings lie in
    // (-1,0) and (0,1), and all other ceilings agree and are non-integral.
    let p1 = sys.pairing(lam1, alpha)?;
    let p2 = sys.pairing(lam2, alpha)?;
    let in_open = |p: &QRat, lo: i64, hi: i64| *p > qi(lo) && *p < qi(hi) && !is_integer(p);
    if !(in_open(&p1, -1, 0) && in_open(&p2, 0, 1)) {
        return Err(FlagError::NotAdjacent);
    }
    for beta in sys.positive_roots() {
        if beta == alpha {
            continue;
        }
        let q1 = sys.pairing(lam1, &beta)?;
        let q2 = sys.pairing(lam2, &beta)?;
        if is_integer(&q1) || is_integer(&q2) || ceil_q(&q1) != ceil_q(&q2) {
            return Err(FlagError::NotAdjacent);
        }
    }
    let refl = sys.reflection(alpha)?;
    let ws = w.mul(&refl)?;
    let a = mc_cell(sys, w, lam1, &Route::Right)?;
    let b = mc_cell(sys, w, lam2, &Route::Right)?;
    if ws.length() > w.length() {
        Ok(a.eq_class(&b))
    } else {
        let diff = w.length() - ws.length();
        assert!(diff % 2 == 1, "reflection changes length parity");
        let e = (diff - 1) / 2;
        let corr = mc_cell(sys, &ws, lam2, &Route::Right)?
            .scale(&minus_y_pow(e).mul_poly(&one_plus_y_const()));
        Ok(a.eq_class(&b.sub(&corr)))
    }
}

/// Left Weyl translation of a class: `out|_{sigma v} = sigma(xi|_v)`, the
/// group element acting on the `t` variables of each restriction.
pub fn weyl_translate(sigma: &WeylElement, xi: &LocalizedClass) -> LocalizedClass {
    let mut out = LocalizedClass::zero(xi.sys);
    for (v, val) in xi.entries() {
        let moved = val
            .subst_monomial(&sigma.char_map(Family::T))
            .expect("char substitution cannot vanish");
        out.set(sigma.mul(v).unwrap(), moved);
    }
    out
}

/// Chamber wall-crossing check for stable envelopes: with
/// `stab_{sigma}(w) := sigma^L(stab(sigma^{-1} w))` and `beta = sigma alpha_i`,
/// verify
/// `stab_{sigma s}(w) = (1-q) e^{floor(<w lam, beta^vee>) beta} / (1 - q e^{-beta}) * stab_sigma(sigma s sigma^{-1} w)`
/// `                  + h (1 - e^{-beta}) / (1 - q e^{-beta}) * stab_sigma(w)`
/// where `q = h^2`.
pub fn wallcross_chamber_check(
    sys: RootSystem,
    w: &WeylElement,
    sigma: &WeylElement,
    i: usize,
    lam: &Weight,
) -> Result<bool, FlagError> {
    if !sys.is_generic(lam)? {
        return Err(FlagError::NonGenericSlope);
    }
    let s = sys.simple(i)?;
    let sigma_s = sigma.mul(&s)?;
    let stab_in_chamber = |chamber: &WeylElement, v: &WeylElement| -> Result<LocalizedClass, FlagError> {
        let base = stable_envelope(sys, &chamber.inv().mul(v)?, lam)?;
        Ok(weyl_translate(chamber, &base))
    };

    let lhs = stab_in_chamber(&sigma_s, w)?;

    let alpha = sys.simple_root(i)?;
    let beta = sigma.act_ivec(&alpha);
    let beta_mono = Mono::from_pairs(
        beta.iter()
            .enumerate()
            .map(|(k, &e)| (VarId::t((k + 1) as u32), e as i32)),
    );
    let e_minus_beta = beta_mono.inv();
    let q = Mono::var_pow(VarId::h(), 2);
    let one_minus_q_e = LaurentPoly::one().sub(&LaurentPoly::monomial(
        QRat::one(),
        q.mul(&e_minus_beta),
    ));
    let wl = w.act_weight(lam);
    let fl = floor_q(&sys.pairing(&wl, &beta)?);
    let m1 = beta_mono.pow(i32::try_from(fl).expect("floor fits i32"));
    let coef1 = RatFunc::from_factors(
        LaurentPoly::one()
            .sub(&LaurentPoly::monomial(QRat::one(), q.clone()))
            .mul_mono(&m1),
        &[(one_minus_q_e.clone(), 1)],
    );
    let coef2 = RatFunc::from_factors(
        one_minus(&e_minus_beta).mul_mono(&Mono::var(VarId::h())),
        &[(one_minus_q_e, 1)],
    );

    let w_flip = sigma.mul(&s)?.mul(&sigma.inv())?.mul(w)?;
    let term1 = stab_in_chamber(sigma, &w_flip)?.scale(&coef1);
    let term2 = stab_in_chamber(sigma, w)?.scale(&coef2);
    Ok(lhs.eq_class(&term1.add(&term2)))
}

/// Integral-shift periodicity check:
/// `mc(w, lam + mu)|_sigma = e^{w mu} e^{-sigma mu} mc(w, lam)|_sigma`
/// for an integral weight `mu`.
pub fn periodicity_shift(
    sys: RootSystem,
    w: &WeylElement,
    lam: &Weight,
    mu: &Weight,
) -> Result<bool, FlagError> {
    sys.check_weight(lam)?;
    sys.check_weight(mu)?;
    if !mu.is_integral() {
        return Err(FlagError::NonIntegralShift);
    }
    let lhs = mc_cell(sys, w, &lam.add(mu), &Route::Right)?;
    let base = mc_cell(sys, w, lam, &Route::Right)?;
    let wmu = w.act_weight(mu).char_mono(Family::T).expect("integral");
    let mut rhs = LocalizedClass::zero(sys);
    for (sigma, val) in base.entries() {
        let smu = sigma.act_weight(mu).char_mono(Family::T).expect("integral");
        rhs.set(
            sigma.clone(),
            val.mul(&RatFunc::monomial(QRat::one(), wmu.mul(&smu.inv()))),
        );
    }
    Ok(lhs.eq_class(&rhs))
}

// ---- Parabolic quotients ----

/// Class on a partial flag variety: restrictions indexed by minimal-length
/// coset representatives.
#[derive(Debug, Clone)]
pub struct ParabolicClass {
    sys: RootSystem,
    parab: Vec<usize>,
    vals: BTreeMap<WeylElement, RatFunc>,
}

impl ParabolicClass {
    pub fn zero(sys: RootSystem, parab: Vec<usize>) -> Self {
        ParabolicClass { sys, parab, vals: BTreeMap::new() }
    }

    pub fn get(&self, w: &WeylElement) -> RatFunc {
        self.vals.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn set(&mut self, w: WeylElement, val: RatFunc) {
        if val.is_zero() {
            self.vals.remove(&w);
        } else {
            self.vals.insert(w, val);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&WeylElement, &RatFunc)> + '_ {
        self.vals.iter()
    }

    pub fn scale(&self, c: &RatFunc) -> ParabolicClass {
        let mut out = ParabolicClass::zero(self.sys, self.parab.clone());
        for (w, v) in &self.vals {
            out.set(w.clone(), v.mul(c));
        }
        out
    }

    pub fn eq_class(&self, other: &ParabolicClass) -> bool {
        if self.sys != other.sys || self.parab != other.parab {
            return false;
        }
        let keys: BTreeSet<&WeylElement> = self.vals.keys().chain(other.vals.keys()).collect();
        keys.into_iter().all(|w| self.get(w).eq_rat(&other.get(w)))
    }
}

/// Minimal-length left-coset representatives for the parabolic subgroup
/// generated by the listed simple reflections.
pub fn minimal_reps(sys: RootSystem, parab: &[usize]) -> Result<Vec<WeylElement>, FlagError> {
    for &i in parab {
        sys.simple(i)?;
    }
    let mut out = Vec::new();
    'outer: for w in sys.elements()? {
        for &i in parab {
            if !w.longer_right(i)? {
                continue 'outer;
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Minimal-length representative of `w W_P`.
pub fn coset_min_rep(w: &WeylElement, parab: &[usize]) -> Result<WeylElement, FlagError> {
    let sys = w.system();
    let mut cur = w.clone();
    'outer: loop {
        for &i in parab {
            if !cur.longer_right(i)? {
                cur = cur.mul(&sys.simple(i)?)?;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// Positive roots of the parabolic subsystem (those whose reflection lies in
/// the parabolic subgroup).
fn levi_positive_roots(sys: RootSystem, parab: &[usize]) -> Result<Vec<Vec<i64>>, FlagError> {
    let wp: BTreeSet<WeylElement> = sys.subgroup(parab)?.into_iter().collect();
    let mut out = Vec::new();
    for alpha in sys.positive_roots() {
        if wp.contains(&sys.reflection(&alpha)?) {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// Euler class of the tangent space of the partial flag variety at the fixed
/// point of a minimal representative: the product over positive roots outside
/// the parabolic subsystem.
pub fn eu_tangent_coset(
    sys: RootSystem,
    parab: &[usize],
    rep: &WeylElement,
) -> Result<LaurentPoly, FlagError> {
    let levi: BTreeSet<Vec<i64>> = levi_positive_roots(sys, parab)?.into_iter().collect();
    let mut out = LaurentPoly::one();
    for alpha in sys.positive_roots() {
        if levi.contains(&alpha) {
            continue;
        }
        let m = char_at(rep, &alpha);
        out = out.mul(&LaurentPoly::one().sub(&LaurentPoly::monomial(QRat::one(), m)));
    }
    Ok(out)
}

/// Pushforward along the projection to the partial flag variety: at a
/// minimal representative `r`,
/// `sum_{u in W_P} xi|_{r u} * eu_coset(r) / eu(T_{r u})`.
pub fn pushforward(
    sys: RootSystem,
    parab: &[usize],
    xi: &LocalizedClass,
) -> Result<ParabolicClass, FlagError> {
    let wp = sys.subgroup(parab)?;
    let mut out = ParabolicClass::zero(sys, parab.to_vec());
    for r in minimal_reps(sys, parab)? {
        let eu_p = RatFunc::from_poly(eu_tangent_coset(sys, parab, &r)?);
        let mut acc = RatFunc::zero();
        for u in &wp {
            let ru = r.mul(u)?;
            let frac = xi.get(&ru).mul(&eu_p).div(&RatFunc::from_poly(eu_tangent(sys, &ru)))?;
            acc = acc.add(&frac);
        }
        out.set(r, acc);
    }
    Ok(out)
}

/// Motivic Chern class of a Schubert cell in a partial flag variety:
/// pushforward of the full-flag class. Requires `w` minimal in its coset,
/// a `W_P`-invariant slope, and genericity outside the parabolic subsystem.
pub fn mc_coset(
    sys: RootSystem,
    w: &WeylElement,
    lam: &Weight,
    parab: &[usize],
) -> Result<ParabolicClass, FlagError> {
    sys.check_weight(lam)?;
    if &coset_min_rep(w, parab)? != w {
        return Err(FlagError::NotMinimalRep);
    }
    for &i in parab {
        if sys.simple(i)?.act_weight(lam) != *lam {
            return Err(FlagError::SlopeNotInvariant);
        }
    }
    let levi: BTreeSet<Vec<i64>> = levi_positive_roots(sys, parab)?.into_iter().collect();
    for alpha in sys.positive_roots() {
        if levi.contains(&alpha) {
            continue;
        }
        if is_integer(&sys.pairing(lam, &alpha)?) {
            return Err(FlagError::NonGenericSlope);
        }
    }
    pushforward(sys, parab, &mc_cell(sys, w, lam, &Route::Right)?)
}

/// Left-side operator acting directly on a parabolic class.
pub fn dl_left_parab(
    sys: RootSystem,
    parab: &[usize],
    i: usize,
    a: &QRat,
    xi: &ParabolicClass,
) -> Result<ParabolicClass, FlagError> {
    let s = sys.simple(i)?;
    let alpha = sys.simple_root(i)?;
    let a_mono = Mono::from_pairs(
        alpha
            .iter()
            .enumerate()
            .map(|(k, &e)| (VarId::t((k + 1) as u32), -(e as i32))),
    );
    let exp = i32::try_from(ceil_q(a) - 1).expect("ceiling out of range");
    let coef_s = RatFunc::from_factors(one_plus_y(&a_mono), &[(one_minus(&a_mono), 1)]);
    let coef_id = RatFunc::from_factors(
        one_plus_y_const().mul_mono(&a_mono.pow(exp)),
        &[(one_minus(&a_mono.inv()), 1)],
    );
    let mut out = ParabolicClass::zero(sys, parab.to_vec());
    for r in minimal_reps(sys, parab)? {
        let flipped = coset_min_rep(&s.mul(&r)?, parab)?;
        let moved = xi
            .get(&flipped)
            .subst_monomial(&s.char_map(Family::T))
            .expect("char substitution cannot vanish");
        let val = coef_s.mul(&moved).add(&coef_id.mul(&xi.get(&r)));
        out.set(r, val);
    }
    Ok(out)
}

/// Case split for left multiplication by `s_i` on a minimal representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetCase {
    /// `s w` is shorter (stays minimal): factor `(-y)^1`, target `s w`.
    Shorter,
    /// `s w` is longer and minimal: factor `(-y)^0`, target `s w`.
    LongerMinimal,
    /// `s w W_P = w W_P`: factor `(-y)^1`, target `w`.
    CosetFixed,
}

/// Outcome of [`left_action_check`].
#[derive(Debug, Clone)]
pub struct LeftActionOutcome {
    pub ok: bool,
    pub case: CosetCase,
    pub exponent: usize,
}

/// Verify the left operator action on a parabolic Schubert class:
/// `T^L_{s_i, w lam} mc_coset(w) = (-y)^e mc_coset(target)` with the case
/// split on how `s_i` moves the coset.
pub fn left_action_check(
    sys: RootSystem,
    parab: &[usize],
    i: usize,
    w: &WeylElement,
    lam: &Weight,
) -> Result<LeftActionOutcome, FlagError> {
    let xi = mc_coset(sys, w, lam, parab)?;
    let nu = w.act_weight(lam);
    let a = sys.pairing_simple(&nu, i)?;
    let lhs = dl_left_parab(sys, parab, i, &a, &xi)?;

    let s = sys.simple(i)?;
    let sw = s.mul(w)?;
    let (case, target, exponent) = if sw.length() < w.length() {
        (CosetCase::Shorter, sw, 1usize)
    } else if coset_min_rep(&sw, parab)? == sw {
        (CosetCase::LongerMinimal, sw, 0usize)
    } else {
        (CosetCase::CosetFixed, w.clone(), 1usize)
    };
    let rhs = mc_coset(sys, &target, lam, parab)?.scale(&minus_y_pow(exponent));
    Ok(LeftActionOutcome { ok: lhs.eq_class(&rhs), case, exponent })
}

/// Pushforward of `1 + y L_{s_i}^*` along the corresponding minimal
/// parabolic projection: every restriction must equal `1 - y`.
pub fn p1_fiber_check(sys: RootSystem, i: usize) -> Result<bool, FlagError> {
    let alpha = sys.simple_root(i)?;
    let mut xi = LocalizedClass::zero(sys);
    for sigma in sys.elements()? {
        let m = char_at(&sigma, &alpha);
        xi.set(
            sigma,
            RatFunc::from_poly(LaurentPoly::one().add(&LaurentPoly::monomial(
                QRat::one(),
                Mono::var(VarId::y()).mul(&m),
            ))),
        );
    }
    let push = pushforward(sys, &[i], &xi)?;
    let expect = RatFunc::from_poly(LaurentPoly::one().sub(&LaurentPoly::var(VarId::y())));
    for r in minimal_reps(sys, &[i])? {
        if !push.get(&r).eq_rat(&expect) {
            return Ok(false);
        }
    }
    Ok(true)
}
