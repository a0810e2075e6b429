//! Rational functions: a Laurent-polynomial numerator over a factored
//! denominator, kept reduced, with exact decidable equality.

use super::poly::{LaurentPoly, Mono};
use super::{ExactError, QRat, VarId};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Rational function `num / prod_f f^mult`.
///
/// Invariants:
/// - every denominator factor is normalized: its grlex-trailing term is the
///   constant 1 (scalar and monomial units are folded into the numerator);
/// - no factor is a unit (single-term polynomials never appear in `den`);
/// - no factor divides the numerator (trial division is re-run after every
///   operation that touches `num` or `den`);
/// - `num == 0` implies an empty denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: BTreeMap<LaurentPoly, u32>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn constant(c: QRat) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        RatFunc::from_poly(LaurentPoly::var(v))
    }

    pub fn monomial(c: QRat, m: Mono) -> Self {
        RatFunc::from_poly(LaurentPoly::monomial(c, m))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    /// `num / den`; panics if `den == 0`.
    pub fn frac(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = RatFunc { num, den: BTreeMap::new() };
        out.mul_den_factor(&den, 1);
        out.reduce();
        out
    }

    /// `num / prod factors[i].0 ^ factors[i].1`.
    pub fn from_factors(num: LaurentPoly, factors: &[(LaurentPoly, u32)]) -> Self {
        let mut out = RatFunc { num, den: BTreeMap::new() };
        for (f, k) in factors {
            assert!(!f.is_zero(), "zero denominator factor");
            out.mul_den_factor(f, *k);
        }
        out.reduce();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// True iff the value is a Laurent polynomial (empty denominator).
    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&LaurentPoly, u32)> + '_ {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    /// Multiply by `1 / f^k`, folding the unit part of `f` into `num`.
    fn mul_den_factor(&mut self, f: &LaurentPoly, k: u32) {
        if k == 0 || self.num.is_zero() {
            return;
        }
        if let Some((c, m)) = f.as_single_term() {
            // Unit: 1/(c m)^k multiplies the numerator.
            let inv_c = super::qrat_pow(&c.recip(), k as i32);
            self.num = self.num.mul_scalar(&inv_c).mul_mono(&m.inv().pow(k as i32));
            return;
        }
        let (m0, c0) = {
            let (m, c) = f.trailing().unwrap();
            (m.clone(), c.clone())
        };
        // f = (c0 m0) * fn with fn trailing-term 1.
        let f_norm = f.mul_scalar(&c0.recip()).mul_mono(&m0.inv());
        let unit_inv = super::qrat_pow(&c0.recip(), k as i32);
        self.num = self.num.mul_scalar(&unit_inv).mul_mono(&m0.inv().pow(k as i32));
        *self.den.entry(f_norm).or_insert(0) += k;
    }

    /// Cancel denominator factors that exactly divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<LaurentPoly> = self.den.keys().cloned().collect();
        for f in factors {
            while let Some(k) = self.den.get(&f).copied() {
                if k == 0 {
                    break;
                }
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&f);
                            break;
                        } else {
                            self.den.insert(f.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: per-factor max multiplicity.
        let mut union: BTreeMap<LaurentPoly, u32> = self.den.clone();
        for (f, k) in &other.den {
            let slot = union.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*k);
        }
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        for (f, k) in &union {
            let ka = self.den.get(f).copied().unwrap_or(0);
            let kb = other.den.get(f).copied().unwrap_or(0);
            for _ in 0..(k - ka) {
                a = a.mul(f);
            }
            for _ in 0..(k - kb) {
                b = b.mul(f);
            }
        }
        let mut out = RatFunc { num: a.add(&b), den: union };
        if out.num.is_zero() {
            return RatFunc::zero();
        }
        out.reduce();
        out
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut out = RatFunc { num: self.num.mul(&other.num), den: self.den.clone() };
        for (f, k) in &other.den {
            *out.den.entry(f.clone()).or_insert(0) += k;
        }
        out.reduce();
        out
    }

    pub fn mul_scalar(&self, c: &QRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.mul_scalar(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut num = LaurentPoly::one();
        for (f, k) in &self.den {
            for _ in 0..*k {
                num = num.mul(f);
            }
        }
        let mut out = RatFunc { num, den: BTreeMap::new() };
        out.mul_den_factor(&self.num, 1);
        out.reduce();
        Ok(out)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_i(&self, k: i32) -> Result<RatFunc, ExactError> {
        if k == 0 {
            return Ok(RatFunc::one());
        }
        let base = if k > 0 { self.clone() } else { self.inv()? };
        let mut out = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Exact equality of values. Structural equality of the reduced forms is
    /// checked first; on mismatch, cross-multiplication decides (equal values
    /// can carry different factored forms when a binomial factors further).
    /// Denominator factors shared by both sides are cancelled before the
    /// cross-multiplication: factors are nonzero, so a/(c p) = b/(c q) holds
    /// exactly when a q = b p.
    pub fn eq_rat(&self, other: &RatFunc) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        for (f, &k) in &other.den {
            let shared = self.den.get(f).copied().unwrap_or(0).min(k);
            for _ in 0..(k - shared) {
                lhs = lhs.mul(f);
            }
        }
        for (f, &k) in &self.den {
            let shared = other.den.get(f).copied().unwrap_or(0).min(k);
            for _ in 0..(k - shared) {
                rhs = rhs.mul(f);
            }
        }
        lhs == rhs
    }

    /// Expanded denominator polynomial.
    pub fn den_expanded(&self) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for (f, k) in &self.den {
            for _ in 0..*k {
                out = out.mul(f);
            }
        }
        out
    }

    /// Canonical `(num, den)` pair: the denominator is expanded and its
    /// grlex-leading coefficient is scaled to 1.
    pub fn canonical_pair(&self) -> (LaurentPoly, LaurentPoly) {
        let den = self.den_expanded();
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap_or_else(QRat::one);
        let inv = lc.recip();
        (self.num.mul_scalar(&inv), den.mul_scalar(&inv))
    }

    /// Substitute variables by scalar-multiple-of-monomial images; such a map
    /// can never make a denominator factor vanish identically unless a factor
    /// collapses to zero, which is reported.
    pub fn subst_monomial(
        &self,
        map: &dyn Fn(VarId) -> Option<(QRat, Mono)>,
    ) -> Result<RatFunc, ExactError> {
        let num = self.num.subst_monomial(map);
        let mut out = RatFunc { num, den: BTreeMap::new() };
        for (f, k) in &self.den {
            let fs = f.subst_monomial(map);
            if fs.is_zero() {
                return Err(ExactError::DenominatorVanishes);
            }
            out.mul_den_factor(&fs, *k);
        }
        out.reduce();
        Ok(out)
    }

    /// General substitution of variables by rational functions. Variables
    /// absent from `bindings` are kept.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<VarId, RatFunc>,
    ) -> Result<RatFunc, ExactError> {
        let subst_poly = |p: &LaurentPoly| -> Result<RatFunc, ExactError> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut term = RatFunc::constant(c.clone());
                for (v, e) in m.vars() {
                    match bindings.get(&v) {
                        None => {
                            term = term.mul(&RatFunc::monomial(
                                QRat::one(),
                                Mono::var_pow(v, e),
                            ));
                        }
                        Some(g) => {
                            if g.is_zero() && e < 0 {
                                return Err(ExactError::DenominatorVanishes);
                            }
                            term = term.mul(&g.pow_i(e)?);
                        }
                    }
                }
                acc = acc.add(&term);
            }
            Ok(acc)
        };
        let mut out = subst_poly(&self.num)?;
        for (f, k) in &self.den {
            let fs = subst_poly(f)?;
            if fs.is_zero() {
                return Err(ExactError::DenominatorVanishes);
            }
            out = out.mul(&fs.pow_i(-(*k as i32))?);
        }
        Ok(out)
    }

    /// Render per the term grammar: numerator terms in descending grlex
    /// order, then " / " and the canonical expanded denominator if nontrivial.
    pub fn render(&self) -> String {
        let (num, den) = self.canonical_pair();
        if den.is_one() {
            num.render()
        } else {
            format!("{} / {}", num.render(), den.render())
        }
    }

    /// JSON value: variable universe plus exponent-vector term lists for the
    /// canonical numerator and expanded denominator.
    pub fn to_json(&self) -> serde_json::Value {
        let (num, den) = self.canonical_pair();
        let mut vars: std::collections::BTreeSet<VarId> = std::collections::BTreeSet::new();
        for v in num.variables() {
            vars.insert(v);
        }
        for v in den.variables() {
            vars.insert(v);
        }
        let vars: Vec<VarId> = vars.into_iter().collect();
        let term_list = |p: &LaurentPoly| -> serde_json::Value {
            let rows: Vec<serde_json::Value> = p
                .terms()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .map(|(m, c)| {
                    let exps: Vec<i64> =
                        vars.iter().map(|&v| m.exponent(v) as i64).collect();
                    serde_json::json!([super::fmt_qrat(c), exps])
                })
                .collect();
            serde_json::Value::Array(rows)
        };
        serde_json::json!({
            "vars": vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "num": term_list(&num),
            "den": term_list(&den),
        })
    }

    /// Evaluate at rational points; denominator vanishing is an error.
    pub fn eval(&self, vals: &dyn Fn(VarId) -> QRat) -> Result<QRat, ExactError> {
        let n = self.num.eval(vals)?;
        let mut d = QRat::one();
        for (f, k) in &self.den {
            let fv = f.eval(vals)?;
            if fv.is_zero() {
                return Err(ExactError::DenominatorVanishes);
            }
            d *= super::qrat_pow(&fv, *k as i32);
        }
        Ok(n / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{qi, qq};
    use super::*;

    fn tv(i: u32) -> LaurentPoly {
        LaurentPoly::var(VarId::t(i))
    }

    fn one_minus(m: Mono) -> LaurentPoly {
        LaurentPoly::one().sub(&LaurentPoly::monomial(qi(1), m))
    }

    #[test]
    fn frac_reduces() {
        // (1 - t1^2) / (1 - t1) = 1 + t1
        let t1 = Mono::var(VarId::t(1));
        let num = one_minus(t1.pow(2));
        let den = one_minus(t1.clone());
        let f = RatFunc::frac(num, den);
        assert!(f.is_laurent());
        assert_eq!(f.numerator(), &LaurentPoly::one().add(&tv(1)));
    }

    #[test]
    fn add_cancels() {
        // 1/(1-t1) - t1/(1-t1) = 1
        let t1 = Mono::var(VarId::t(1));
        let den = one_minus(t1.clone());
        let a = RatFunc::frac(LaurentPoly::one(), den.clone());
        let b = RatFunc::frac(LaurentPoly::monomial(qi(1), t1), den);
        let s = a.sub(&b);
        assert!(s.is_one());
    }

    #[test]
    fn unit_factors_fold_into_num() {
        // 1 / (t1/t2) = t2/t1, stays a Laurent monomial
        let m = Mono::var(VarId::t(1)).div(&Mono::var(VarId::t(2)));
        let f = RatFunc::frac(LaurentPoly::one(), LaurentPoly::monomial(qq(2, 3), m.clone()));
        assert!(f.is_laurent());
        assert_eq!(f.numerator(), &LaurentPoly::monomial(qq(3, 2), m.inv()));
    }

    #[test]
    fn eq_with_different_factored_forms() {
        // 1/(1-t1) == (1+t1)/(1-t1^2)
        let t1 = Mono::var(VarId::t(1));
        let a = RatFunc::frac(LaurentPoly::one(), one_minus(t1.clone()));
        let b = RatFunc::frac(
            LaurentPoly::one().add(&tv(1)),
            one_minus(t1.pow(2)),
        );
        assert!(a.eq_rat(&b));
        assert!(!a.eq_rat(&b.add(&RatFunc::one())));
    }

    #[test]
    fn inv_roundtrip() {
        let t1 = Mono::var(VarId::t(1));
        let t2 = Mono::var(VarId::t(2));
        let f = RatFunc::frac(
            one_minus(t1.clone()).add(&tv(2)),
            one_minus(t1.div(&t2)),
        );
        let g = f.inv().unwrap();
        assert!(f.mul(&g).is_one());
    }

    #[test]
    fn subst_monomial_swap() {
        // t1 -> t2, t2 -> t1 on 1/(1 - t1/t2)
        let m = Mono::var(VarId::t(1)).div(&Mono::var(VarId::t(2)));
        let f = RatFunc::frac(LaurentPoly::one(), one_minus(m.clone()));
        let swapped = f
            .subst_monomial(&|v: VarId| {
                if v == VarId::t(1) {
                    Some((qi(1), Mono::var(VarId::t(2))))
                } else if v == VarId::t(2) {
                    Some((qi(1), Mono::var(VarId::t(1))))
                } else {
                    None
                }
            })
            .unwrap();
        let expect = RatFunc::frac(LaurentPoly::one(), one_minus(m.inv()));
        assert!(swapped.eq_rat(&expect));
    }

    #[test]
    fn substitute_general() {
        // f = 1/(1-t1), t1 := t2/(1+t2): f = (1+t2)/(1+t2-t2) = 1+t2
        let t1m = Mono::var(VarId::t(1));
        let f = RatFunc::frac(LaurentPoly::one(), one_minus(t1m));
        let binding = RatFunc::frac(tv(2), LaurentPoly::one().add(&tv(2)));
        let mut map = BTreeMap::new();
        map.insert(VarId::t(1), binding);
        let g = f.substitute(&map).unwrap();
        assert!(g.eq_rat(&RatFunc::from_poly(LaurentPoly::one().add(&tv(2)))));
    }

    #[test]
    fn substitute_denominator_vanishes() {
        let t1m = Mono::var(VarId::t(1));
        let f = RatFunc::frac(LaurentPoly::one(), one_minus(t1m));
        let mut map = BTreeMap::new();
        map.insert(VarId::t(1), RatFunc::one());
        assert_eq!(f.substitute(&map), Err(ExactError::DenominatorVanishes));
    }

    #[test]
    fn render_shapes() {
        let t1 = Mono::var(VarId::t(1));
        let f = RatFunc::frac(LaurentPoly::one(), one_minus(t1));
        // canonical den has leading coeff 1: (t1 - 1), numerator -1
        assert_eq!(f.render(), "-1 / 1*t1^1 + -1");
        assert_eq!(RatFunc::constant(qq(-3, 2)).render(), "-3/2");
    }

    #[test]
    fn json_shape() {
        let t1 = Mono::var(VarId::t(1));
        let f = RatFunc::frac(LaurentPoly::one(), one_minus(t1));
        let j = f.to_json();
        assert_eq!(j["vars"], serde_json::json!(["t1"]));
        assert_eq!(j["num"], serde_json::json!([["-1", [0]]]));
        assert_eq!(j["den"], serde_json::json!([["1", [1]], ["-1", [0]]]));
    }
}
