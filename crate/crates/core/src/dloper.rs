//! Twisted Demazure-Lusztig operators as elements of the twisted group
//! algebra: finite sums `sum_w c_w * w` with rational-function coefficients,
//! the group acting on one chosen variable family.
//!
//! Two one-parameter families per simple reflection are provided, differing
//! in the numerator of the reflection coefficient; both share the identity
//! coefficient `(1+y) L^{ceil(a)-1} / (1 - L^{-1})` where `L = e^{-alpha_i}`.

use crate::exactalg::{ceil_q, is_integer, qi, Family, LaurentPoly, Mono, QRat, RatFunc, VarId};
use crate::rootsys::{RootError, RootSystem, Weight, WeylElement};
use num_traits::One;
use std::collections::BTreeMap;

/// Errors raised by operator construction and composition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DlError {
    #[error("operators act on different variable families")]
    FamilyMismatch,
    #[error("operators belong to different root systems")]
    SystemMismatch,
    #[error("variable family must be t, x, or z")]
    BadFamily,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Element of the twisted group algebra over one variable family.
#[derive(Debug, Clone)]
pub struct OperatorElement {
    sys: RootSystem,
    family: Family,
    terms: BTreeMap<WeylElement, RatFunc>,
}

impl OperatorElement {
    pub fn system(&self) -> RootSystem {
        self.sys
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &RatFunc)> + '_ {
        self.terms.iter()
    }

    fn check_family(family: Family) -> Result<(), DlError> {
        match family {
            Family::T | Family::X | Family::Z => Ok(()),
            _ => Err(DlError::BadFamily),
        }
    }

    pub fn zero(sys: RootSystem, family: Family) -> Result<Self, DlError> {
        Self::check_family(family)?;
        Ok(OperatorElement { sys, family, terms: BTreeMap::new() })
    }

    /// The identity operator.
    pub fn identity(sys: RootSystem, family: Family) -> Result<Self, DlError> {
        Self::scalar(sys, family, RatFunc::one())
    }

    /// `c * id`.
    pub fn scalar(sys: RootSystem, family: Family, c: RatFunc) -> Result<Self, DlError> {
        Self::check_family(family)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(sys.identity(), c);
        }
        Ok(OperatorElement { sys, family, terms })
    }

    pub fn from_terms(
        sys: RootSystem,
        family: Family,
        entries: impl IntoIterator<Item = (WeylElement, RatFunc)>,
    ) -> Result<Self, DlError> {
        Self::check_family(family)?;
        let mut terms = BTreeMap::new();
        for (w, c) in entries {
            if w.system() != sys {
                return Err(DlError::SystemMismatch);
            }
            if !c.is_zero() {
                terms.insert(w, c);
            }
        }
        Ok(OperatorElement { sys, family, terms })
    }

    pub fn coefficient(&self, w: &WeylElement) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, other: &OperatorElement) -> Result<OperatorElement, DlError> {
        if self.sys != other.sys {
            return Err(DlError::SystemMismatch);
        }
        if self.family != other.family {
            return Err(DlError::FamilyMismatch);
        }
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(RatFunc::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(OperatorElement { sys: self.sys, family: self.family, terms })
    }

    pub fn scale(&self, c: &RatFunc) -> OperatorElement {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let p = v.mul(c);
            if !p.is_zero() {
                terms.insert(w.clone(), p);
            }
        }
        OperatorElement { sys: self.sys, family: self.family, terms }
    }

    /// Twisted product: `(c * w)(d * v) = (c * w(d)) * (w v)`.
    pub fn mul(&self, other: &OperatorElement) -> Result<OperatorElement, DlError> {
        if self.sys != other.sys {
            return Err(DlError::SystemMismatch);
        }
        if self.family != other.family {
            return Err(DlError::FamilyMismatch);
        }
        let mut terms: BTreeMap<WeylElement, RatFunc> = BTreeMap::new();
        for (u, c) in &self.terms {
            let map = u.char_map(self.family);
            for (v, d) in &other.terms {
                let twisted = d
                    .subst_monomial(&map)
                    .expect("invertible character substitution cannot vanish");
                let coeff = c.mul(&twisted);
                if coeff.is_zero() {
                    continue;
                }
                let key = u.mul(v)?;
                let entry = terms.entry(key).or_insert_with(RatFunc::zero);
                *entry = entry.add(&coeff);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(OperatorElement { sys: self.sys, family: self.family, terms })
    }

    /// Apply to a rational function: `sum_w c_w * w(f)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut out = RatFunc::zero();
        for (w, c) in &self.terms {
            let wf = f
                .subst_monomial(&w.char_map(self.family))
                .expect("invertible character substitution cannot vanish");
            out = out.add(&c.mul(&wf));
        }
        out
    }

    /// Exact equality of operators (coefficient-wise).
    pub fn op_equal(&self, other: &OperatorElement) -> Result<bool, DlError> {
        if self.sys != other.sys {
            return Err(DlError::SystemMismatch);
        }
        if self.family != other.family {
            return Err(DlError::FamilyMismatch);
        }
        let keys: std::collections::BTreeSet<&WeylElement> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for w in keys {
            if !self.coefficient(w).eq_rat(&other.coefficient(w)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Compose operators left to right: `compose([A,B,C]) = A after B after C`.
pub fn compose(ops: &[&OperatorElement]) -> Result<OperatorElement, DlError> {
    let first = ops.first().expect("compose of empty list");
    let mut acc = (*first).clone();
    for op in &ops[1..] {
        acc = acc.mul(op)?;
    }
    Ok(acc)
}

/// `L = e^{-alpha_i}` as a monomial in the given family.
fn l_mono(sys: RootSystem, i: usize, family: Family) -> Result<Mono, DlError> {
    let alpha = sys.simple_root(i)?;
    Ok(Mono::from_pairs(alpha.iter().enumerate().map(|(k, &e)| {
        (VarId { family, index: (k + 1) as u32 }, -(e as i32))
    })))
}

fn y_poly() -> LaurentPoly {
    LaurentPoly::var(VarId::y())
}

/// `(1 + y*m)` as a polynomial.
fn one_plus_y_mono(m: &Mono) -> LaurentPoly {
    LaurentPoly::one().add(&LaurentPoly::monomial(QRat::one(), Mono::var(VarId::y()).mul(m)))
}

/// `(1 - m)` as a polynomial.
fn one_minus_mono(m: &Mono) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(QRat::one(), m.clone()))
}

/// Shared identity coefficient `(1+y) L^{ceil(a)-1} / (1 - L^{-1})`.
fn id_coeff(l: &Mono, a: &QRat) -> RatFunc {
    let c = ceil_q(a);
    let exp = i32::try_from(c - 1).expect("ceiling out of range");
    let num = LaurentPoly::one()
        .add(&y_poly())
        .mul_mono(&l.pow(exp));
    RatFunc::from_factors(num, &[(one_minus_mono(&l.inv()), 1)])
}

/// First-family operator: reflection coefficient `(1 + y L^{-1})/(1 - L)`.
pub fn make_tfr(
    sys: RootSystem,
    i: usize,
    a: &QRat,
    family: Family,
) -> Result<OperatorElement, DlError> {
    OperatorElement::check_family(family)?;
    let l = l_mono(sys, i, family)?;
    let s = sys.simple(i)?;
    let refl_coeff = RatFunc::from_factors(
        one_plus_y_mono(&l.inv()),
        &[(one_minus_mono(&l), 1)],
    );
    OperatorElement::from_terms(
        sys,
        family,
        [(s, refl_coeff), (sys.identity(), id_coeff(&l, a))],
    )
}

/// Second-family operator: reflection coefficient `(1 + y L)/(1 - L)`.
pub fn make_tfl(
    sys: RootSystem,
    i: usize,
    a: &QRat,
    family: Family,
) -> Result<OperatorElement, DlError> {
    OperatorElement::check_family(family)?;
    let l = l_mono(sys, i, family)?;
    let s = sys.simple(i)?;
    let refl_coeff = RatFunc::from_factors(
        one_plus_y_mono(&l),
        &[(one_minus_mono(&l), 1)],
    );
    OperatorElement::from_terms(
        sys,
        family,
        [(s, refl_coeff), (sys.identity(), id_coeff(&l, a))],
    )
}

/// Slope-parameterized right-side operator on the `x` family:
/// parameter `a = -<lam, alpha_i^vee>`.
pub fn make_tcr(sys: RootSystem, i: usize, lam: &Weight) -> Result<OperatorElement, DlError> {
    let a = -sys.pairing_simple(lam, i)?;
    make_tfr(sys, i, &a, Family::X)
}

/// Slope-parameterized left-side operator on the `t` family:
/// parameter `a = <lam, alpha_i^vee>`.
pub fn make_tcl(sys: RootSystem, i: usize, lam: &Weight) -> Result<OperatorElement, DlError> {
    let a = sys.pairing_simple(lam, i)?;
    make_tfl(sys, i, &a, Family::T)
}

/// `-y * id`.
fn minus_y_identity(sys: RootSystem, family: Family) -> OperatorElement {
    OperatorElement::scalar(
        sys,
        family,
        RatFunc::monomial(-QRat::one(), Mono::var(VarId::y())),
    )
    .expect("valid family")
}

/// Quadratic relation, both operator families: for non-integer `a`,
/// `T_i(-a) T_i(a) = -y id`; for integer `a`, `T_i(1-a) T_i(a) = -y id`.
pub fn verify_quadratic(sys: RootSystem, i: usize, a: &QRat) -> Result<bool, DlError> {
    let partner = if is_integer(a) {
        QRat::one() - a
    } else {
        -a.clone()
    };
    let expect = minus_y_identity(sys, Family::Z);
    for maker in [make_tfr, make_tfl] {
        let op_a = maker(sys, i, a, Family::Z)?;
        let op_p = maker(sys, i, &partner, Family::Z)?;
        let prod = op_p.mul(&op_a)?;
        if !prod.op_equal(&expect)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Braid-identity scalar patterns, one per system family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidKind {
    A,
    C2,
    G2,
}

/// Check that composing the family-`maker` operators along `seq` equals the
/// composition with generator labels swapped in place and parameters
/// reversed (the two sides of the alternating braid word).
fn braid_check(
    sys: RootSystem,
    seq: &[(usize, QRat)],
    maker: fn(RootSystem, usize, &QRat, Family) -> Result<OperatorElement, DlError>,
) -> Result<bool, DlError> {
    let swap = |i: usize| if i == 1 { 2 } else { 1 };
    let mut lhs_ops = Vec::new();
    let mut rhs_ops = Vec::new();
    for (i, a) in seq {
        lhs_ops.push(maker(sys, *i, a, Family::Z)?);
    }
    let rev_params: Vec<&QRat> = seq.iter().rev().map(|(_, a)| a).collect();
    for ((i, _), a) in seq.iter().zip(rev_params) {
        rhs_ops.push(maker(sys, swap(*i), a, Family::Z)?);
    }
    let lhs = compose(&lhs_ops.iter().collect::<Vec<_>>())?;
    let rhs = compose(&rhs_ops.iter().collect::<Vec<_>>())?;
    lhs.op_equal(&rhs)
}

/// Two-parameter braid identities, both operator families.
///
/// - A: `T_1(a) T_2(a+b) T_1(b) = T_2(b) T_1(a+b) T_2(a)` in GL_3.
/// - C2: `T_1(a-b) T_2(a) T_1(a+b) T_2(b)` equals its label-swapped reverse.
/// - G2: `T_1(a) T_2(3a+3b) T_1(2a+3b) T_2(3a+6b) T_1(a+3b) T_2(3b)` equals
///   its label-swapped reverse.
pub fn verify_braid(kind: BraidKind, a: &QRat, b: &QRat) -> Result<bool, DlError> {
    let seqs: (RootSystem, Vec<(usize, QRat)>) = match kind {
        BraidKind::A => (
            RootSystem::A(3),
            vec![(1, a.clone()), (2, a + b), (1, b.clone())],
        ),
        BraidKind::C2 => (
            RootSystem::C2,
            vec![(1, a - b), (2, a.clone()), (1, a + b), (2, b.clone())],
        ),
        BraidKind::G2 => (
            RootSystem::G2,
            vec![
                (1, a.clone()),
                (2, qi(3) * a + qi(3) * b),
                (1, qi(2) * a + qi(3) * b),
                (2, qi(3) * a + qi(6) * b),
                (1, a + &(qi(3) * b)),
                (2, qi(3) * b),
            ],
        ),
    };
    let (sys, seq) = seqs;
    for maker in [
        make_tfr as fn(RootSystem, usize, &QRat, Family) -> Result<OperatorElement, DlError>,
        make_tfl,
    ] {
        if !braid_check(sys, &seq, maker)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Type-A braid identity for an explicit scalar triple
/// `T_1(p1) T_2(p2) T_1(p3) = T_2(p3) T_1(p2) T_2(p1)`; valid triples are
/// `(a, a+b, b)` for any rationals and additionally `(a, a+b-1, b)` for
/// integer `a, b` (the middle slot arises as a sum `u+v` whose ceiling is
/// either `ceil(u)+ceil(v)` or one less). Both operator families.
pub fn verify_braid_a_triple(p1: &QRat, p2: &QRat, p3: &QRat) -> Result<bool, DlError> {
    let seq = vec![(1usize, p1.clone()), (2, p2.clone()), (1, p3.clone())];
    for maker in [
        make_tfr as fn(RootSystem, usize, &QRat, Family) -> Result<OperatorElement, DlError>,
        make_tfl,
    ] {
        if !braid_check(RootSystem::A(3), &seq, maker)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Left-right commutation: the `t`-family operator `make_tfl(iL, aL)` and the
/// `x`-family operator `make_tfr(iR, aR)` commute as operators on the mixed
/// Laurent ring. Checked structurally on the two-sided group algebra and
/// pointwise on sample functions.
pub fn verify_lr_commute(
    n: usize,
    i_left: usize,
    a_left: &QRat,
    i_right: usize,
    a_right: &QRat,
) -> Result<bool, DlError> {
    let sys = RootSystem::A(n);
    let tl = make_tfl(sys, i_left, a_left, Family::T)?;
    let tr = make_tfr(sys, i_right, a_right, Family::X)?;

    // Two-sided products, keys (u acting on t, v acting on x).
    let mut lr: BTreeMap<(WeylElement, WeylElement), RatFunc> = BTreeMap::new();
    for (u, c) in tl.terms() {
        let map = u.char_map(Family::T);
        for (v, d) in tr.terms() {
            let coeff = c.mul(&d.subst_monomial(&map).expect("char substitution"));
            lr.insert((u.clone(), v.clone()), coeff);
        }
    }
    let mut rl: BTreeMap<(WeylElement, WeylElement), RatFunc> = BTreeMap::new();
    for (v, d) in tr.terms() {
        let map = v.char_map(Family::X);
        for (u, c) in tl.terms() {
            let coeff = d.mul(&c.subst_monomial(&map).expect("char substitution"));
            rl.insert((u.clone(), v.clone()), coeff);
        }
    }
    let keys: std::collections::BTreeSet<_> = lr.keys().chain(rl.keys()).cloned().collect();
    for k in keys {
        let a = lr.get(&k).cloned().unwrap_or_else(RatFunc::zero);
        let b = rl.get(&k).cloned().unwrap_or_else(RatFunc::zero);
        if !a.eq_rat(&b) {
            return Ok(false);
        }
    }

    // Pointwise samples mixing both families.
    let samples = [
        RatFunc::from_poly(
            LaurentPoly::var(VarId::t(1)).mul(&LaurentPoly::var(VarId::x(n as u32))),
        ),
        RatFunc::from_poly(
            LaurentPoly::monomial(qi(1), Mono::var_pow(VarId::t(i_left as u32), -2))
                .add(&LaurentPoly::var(VarId::x(i_right as u32)).mul(&y_poly())),
        ),
        RatFunc::frac(
            LaurentPoly::var(VarId::x(1)),
            LaurentPoly::one().add(&LaurentPoly::var(VarId::t(n as u32))),
        ),
    ];
    for f in &samples {
        let ab = tl.apply(&tr.apply(f));
        let ba = tr.apply(&tl.apply(f));
        if !ab.eq_rat(&ba) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qq;

    #[test]
    fn quadratic_small() {
        let sys = RootSystem::A(2);
        assert!(verify_quadratic(sys, 1, &qq(1, 3)).unwrap());
        assert!(verify_quadratic(sys, 1, &qq(-5, 7)).unwrap());
        assert!(verify_quadratic(sys, 1, &qi(0)).unwrap());
        assert!(verify_quadratic(sys, 1, &qi(2)).unwrap());
        assert!(verify_quadratic(RootSystem::C2, 2, &qq(3, 4)).unwrap());
        assert!(verify_quadratic(RootSystem::G2, 1, &qq(1, 2)).unwrap());
    }

    #[test]
    fn quadratic_wrong_partner_fails() {
        // T_i(a) T_i(a) is not -y id for generic non-integer a.
        let sys = RootSystem::A(2);
        let a = qq(1, 3);
        let op = make_tfr(sys, 1, &a, Family::Z).unwrap();
        let prod = op.mul(&op).unwrap();
        let expect = minus_y_identity(sys, Family::Z);
        assert!(!prod.op_equal(&expect).unwrap());
    }

    #[test]
    fn braid_spot_checks() {
        assert!(verify_braid(BraidKind::A, &qq(1, 5), &qq(2, 7)).unwrap());
        assert!(verify_braid(BraidKind::A, &qi(1), &qq(-3, 4)).unwrap());
        assert!(verify_braid(BraidKind::C2, &qq(1, 3), &qq(1, 4)).unwrap());
        assert!(verify_braid(BraidKind::G2, &qq(1, 5), &qq(1, 7)).unwrap());
    }

    #[test]
    fn braid_a_integer_shift_branch() {
        // (a, a+b, b) with integers a, b
        assert!(verify_braid_a_triple(&qi(1), &qi(-1), &qi(-2)).unwrap());
        // (a, a+b-1, b) with integers a, b
        assert!(verify_braid_a_triple(&qi(2), &qi(0), &qi(-1)).unwrap());
        assert!(verify_braid_a_triple(&qi(-2), &qi(-2), &qi(1)).unwrap());
        // raising the middle slot instead of lowering it breaks the identity
        assert!(!verify_braid_a_triple(&qi(2), &qi(2), &qi(-1)).unwrap());
        // triple whose middle ceiling is outside both branches fails
        assert!(!verify_braid_a_triple(&qq(1, 5), &qq(5, 2), &qq(1, 7)).unwrap());
    }

    #[test]
    fn apply_monomial_stays_laurent() {
        let sys = RootSystem::A(2);
        for a in [qq(1, 3), qq(-7, 5), qi(2)] {
            for maker in [make_tfr, make_tfl] {
                let op = maker(sys, 1, &a, Family::Z).unwrap();
                let f = RatFunc::monomial(
                    qi(1),
                    Mono::from_pairs([(VarId::z(1), 3), (VarId::z(2), -2)]),
                );
                let out = op.apply(&f);
                assert!(out.is_laurent(), "a = {}, got {}", a, out);
            }
        }
    }

    #[test]
    fn lr_commute_small() {
        assert!(verify_lr_commute(2, 1, &qq(1, 3), 1, &qq(2, 5)).unwrap());
        assert!(verify_lr_commute(3, 1, &qq(-1, 2), 2, &qi(1)).unwrap());
    }
}
