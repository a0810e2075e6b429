//! Sparse Laurent monomials and polynomials.

use super::{fmt_qrat, qrat_pow, ExactError, QRat, VarId};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    vp: Vec<(VarId, i32)>,
}

impl Mono {
    pub fn one() -> Self {
        Mono { vp: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Mono { vp: vec![(v, 1)] }
    }

    pub fn var_pow(v: VarId, e: i32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono { vp: vec![(v, e)] }
        }
    }

    /// Build from arbitrary pairs; merges duplicates, drops zeros, sorts.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut map: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            let slot = map.entry(v).or_insert(0);
            *slot += e;
        }
        Mono { vp: map.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.vp.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.vp
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.vp[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.vp.iter().copied()
    }

    pub fn total_degree(&self) -> i64 {
        self.vp.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.vp.len() + other.vp.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vp.len() && j < other.vp.len() {
            match self.vp[i].0.cmp(&other.vp[j].0) {
                Ordering::Less => {
                    out.push(self.vp[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.vp[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.vp[i].1 + other.vp[j].1;
                    if e != 0 {
                        out.push((self.vp[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.vp[i..]);
        out.extend_from_slice(&other.vp[j..]);
        Mono { vp: out }
    }

    pub fn inv(&self) -> Mono {
        Mono { vp: self.vp.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    pub fn div(&self, other: &Mono) -> Mono {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono {
            vp: self
                .vp
                .iter()
                .map(|&(v, e)| (v, e.checked_mul(k).expect("exponent overflow")))
                .collect(),
        }
    }

    /// True iff every exponent is nonnegative (honest polynomial monomial).
    pub fn is_effective(&self) -> bool {
        self.vp.iter().all(|&(_, e)| e >= 0)
    }

    /// Substitute each variable by a scalar multiple of a monomial.
    /// Variables absent from `map` are kept. Returns `(coefficient, monomial)`.
    pub fn subst(&self, map: &dyn Fn(VarId) -> Option<(QRat, Mono)>) -> (QRat, Mono) {
        let mut coeff = QRat::one();
        let mut out = Mono::one();
        for &(v, e) in &self.vp {
            match map(v) {
                None => out = out.mul(&Mono::var_pow(v, e)),
                Some((c, m)) => {
                    coeff *= qrat_pow(&c, e);
                    out = out.mul(&m.pow(e));
                }
            }
        }
        (coeff, out)
    }
}

/// Graded lexicographic order: total degree first, then along the sorted
/// variable union; the first variable with differing exponents decides,
/// larger exponent meaning larger monomial.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ne => return ne,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.vp.len() && j < other.vp.len() {
            let (va, ea) = self.vp[i];
            let (vb, eb) = other.vp[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    // `other` has exponent 0 on va.
                    match ea.cmp(&0) {
                        Ordering::Equal => unreachable!("zero exponent stored"),
                        ne => return ne,
                    }
                }
                Ordering::Greater => match 0.cmp(&eb) {
                    Ordering::Equal => unreachable!("zero exponent stored"),
                    ne => return ne,
                },
                Ordering::Equal => {
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        ne => return ne,
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if i < self.vp.len() {
            return self.vp[i].1.cmp(&0);
        }
        if j < other.vp.len() {
            return 0.cmp(&other.vp[j].1);
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vp.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.vp {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}^{}", v, e)?;
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
/// Invariant: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, QRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(QRat::one())
    }

    pub fn constant(c: QRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        LaurentPoly::monomial(QRat::one(), Mono::var(v))
    }

    pub fn monomial(c: QRat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (QRat, Mono)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (c, m) in terms {
            out.add_term(c, m);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// True iff the polynomial is `c * m` for a single term.
    pub fn as_single_term(&self) -> Option<(QRat, Mono)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &QRat)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> QRat {
        self.terms.get(m).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, c: QRat, m: Mono) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Grlex-largest term.
    pub fn leading(&self) -> Option<(&Mono, &QRat)> {
        self.terms.iter().next_back()
    }

    /// Grlex-smallest term.
    pub fn trailing(&self) -> Option<(&Mono, &QRat)> {
        self.terms.iter().next()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &QRat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(mm, c)| (mm.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Per-variable minimum exponent over all terms (variables absent from a
    /// term count as exponent 0). Identity for the zero polynomial.
    pub fn min_exponents(&self) -> Mono {
        let mut mins: BTreeMap<VarId, i32> = BTreeMap::new();
        let mut seen: BTreeMap<VarId, usize> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.vars() {
                *seen.entry(v).or_insert(0) += 1;
                mins.entry(v).and_modify(|x| *x = (*x).min(e)).or_insert(e);
            }
        }
        let nterms = self.terms.len();
        Mono::from_pairs(mins.into_iter().map(|(v, e)| {
            // A variable missing from some term has effective min <= 0.
            if seen[&v] < nterms {
                (v, e.min(0))
            } else {
                (v, e)
            }
        }))
    }

    /// Exact division: returns `q` with `q * d == self`, or None.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Shift both operands to nonnegative support with per-variable
        // minimum 0; grlex is then a well-order, so greedy leading-term
        // elimination terminates, and for a single divisor every leading
        // term of an exact quotient remainder chain stays divisible.
        let shift_p = self.min_exponents();
        let shift_d = d.min_exponents();
        let p0 = self.mul_mono(&shift_p.inv());
        let d0 = d.mul_mono(&shift_d.inv());
        let (lt_m, lt_c) = {
            let (m, c) = d0.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = p0;
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lt_m);
            if !qm.is_effective() {
                return None;
            }
            let qc = c / &lt_c;
            rem = rem.sub(&d0.mul_mono(&qm).mul_scalar(&qc));
            quot.add_term(qc, qm);
        }
        Some(quot.mul_mono(&shift_p.mul(&shift_d.inv())))
    }

    /// Substitute variables by scalar-multiple-of-monomial images.
    pub fn subst_monomial(&self, map: &dyn Fn(VarId) -> Option<(QRat, Mono)>) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let (k, mm) = m.subst(map);
            out.add_term(c * &k, mm);
        }
        out
    }

    /// Exact quotient `(1 - L^n) / (1 - L)` as a Laurent polynomial:
    /// the geometric sum `sum_{k=0}^{n-1} L^k` for `n > 0`, `0` for `n == 0`,
    /// and `-sum_{k=1}^{-n} L^{-k}` for `n < 0`.
    pub fn geom_sum(n: i64, l: &Mono) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if n > 0 {
            for k in 0..n {
                out.add_term(QRat::one(), l.pow(k as i32));
            }
        } else {
            for k in 1..=(-n) {
                out.add_term(-QRat::one(), l.pow(-(k as i32)));
            }
        }
        out
    }

    /// Terms in descending grlex order, rendered `coeff*mono` joined by " + ".
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    fmt_qrat(c)
                } else {
                    format!("{}*{}", fmt_qrat(c), m)
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// All variables appearing in the polynomial, sorted.
    pub fn variables(&self) -> Vec<VarId> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                set.insert(v);
            }
        }
        set.into_iter().collect()
    }

    /// Evaluate with every variable mapped to a rational; error on none given.
    pub fn eval(&self, vals: &dyn Fn(VarId) -> QRat) -> Result<QRat, ExactError> {
        let mut acc = QRat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let val = vals(v);
                if val.is_zero() && e < 0 {
                    return Err(ExactError::DivisionByZero);
                }
                term *= qrat_pow(&val, e);
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Term-sequence order; used only to give denominator factors a stable key.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => {}
                        ne => return ne,
                    }
                }
            }
        }
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{qi, qq};
    use super::*;

    fn l(v: VarId) -> LaurentPoly {
        LaurentPoly::var(v)
    }

    #[test]
    fn grlex_degree_dominates() {
        let a = Mono::var_pow(VarId::t(1), 2);
        let b = Mono::var(VarId::t(1)).mul(&Mono::var(VarId::t(2)));
        let c = Mono::var(VarId::t(2));
        assert!(a > c);
        assert!(a > b); // same degree, t1 exponent 2 > 1
        assert!(b > c);
        let d = Mono::var(VarId::t(2)).div(&Mono::var(VarId::t(1)));
        let e = Mono::one();
        // degree 0 vs 0: t1 exponent -1 < 0
        assert!(d < e);
    }

    #[test]
    fn arithmetic_basics() {
        let t1 = l(VarId::t(1));
        let t2 = l(VarId::t(2));
        let p = t1.add(&t2).mul(&t1.sub(&t2));
        let q = t1.mul(&t1).sub(&t2.mul(&t2));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn exact_div_geometric() {
        let lmono = Mono::var(VarId::z(2)).div(&Mono::var(VarId::z(1)));
        for n in -8..=8i64 {
            let geom = LaurentPoly::geom_sum(n, &lmono);
            let one_minus_l = LaurentPoly::one().sub(&LaurentPoly::monomial(qi(1), lmono.clone()));
            let lhs = geom.mul(&one_minus_l);
            let rhs = LaurentPoly::one().sub(&LaurentPoly::monomial(qi(1), lmono.pow(n as i32)));
            assert_eq!(lhs, rhs, "n = {}", n);
            if n != 0 {
                let q = rhs.exact_div(&one_minus_l).unwrap();
                assert_eq!(q, geom);
            }
        }
    }

    #[test]
    fn exact_div_detects_failure() {
        let t1 = l(VarId::t(1));
        let t2 = l(VarId::t(2));
        let p = t1.mul(&t1).sub(&t2);
        let d = t1.sub(&t2);
        assert!(p.exact_div(&d).is_none());
        let p2 = t1.mul(&t1).sub(&t2.mul(&t2));
        let q = p2.exact_div(&d).unwrap();
        assert_eq!(q, t1.add(&t2));
    }

    #[test]
    fn exact_div_laurent_units() {
        // (1 - t2/t1) = (-t2/t1) * (1 - t1/t2)
        let m12 = Mono::var(VarId::t(2)).div(&Mono::var(VarId::t(1)));
        let p = LaurentPoly::one().sub(&LaurentPoly::monomial(qi(1), m12.clone()));
        let d = LaurentPoly::one().sub(&LaurentPoly::monomial(qi(1), m12.inv()));
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, LaurentPoly::monomial(qi(-1), m12));
        assert_eq!(q.mul(&d), p);
    }

    #[test]
    fn min_exponents_accounts_for_missing_vars() {
        // t1^-1 + t2: min exp of t2 is 0 (absent in first term), of t1 is -1
        // (absent in second term, so min(-1, 0) = -1).
        let p = LaurentPoly::from_terms([
            (qi(1), Mono::var_pow(VarId::t(1), -1)),
            (qi(1), Mono::var(VarId::t(2))),
        ]);
        let m = p.min_exponents();
        assert_eq!(m.exponent(VarId::t(1)), -1);
        assert_eq!(m.exponent(VarId::t(2)), 0);
    }

    #[test]
    fn render_grammar() {
        let p = LaurentPoly::from_terms([
            (qq(3, 2), Mono::var_pow(VarId::t(1), 2)),
            (qi(-1), Mono::var(VarId::y())),
            (qi(7), Mono::one()),
        ]);
        assert_eq!(p.render(), "3/2*t1^2 + -1*y^1 + 7");
    }
}
