//! Root systems A(n) (GL_n conventions), C2, and G2, their Weyl groups,
//! reduced words, Bruhat order, and alcove combinatorics for rational slopes.
//!
//! Coordinates:
//! - A(n): the ambient lattice is Z^n, simple roots `e_i - e_{i+1}`.
//! - C2: standard coordinates, simple roots `(1,-1)` and `(0,2)`.
//! - G2: coordinates in the basis of simple roots (alpha_1 long), with Gram
//!   matrix `[[6,-3],[-3,2]]`; then `s_1(u,v) = (v-u, v)`, `s_2(u,v) = (u, 3u-v)`.

use crate::exactalg::{ceil_q, is_integer, parse_qrat, qi, QRat, VarId};
use crate::exactalg::{Family, Mono};
use itertools::Itertools;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Errors raised by root-system operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("simple-root index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("weight has {got} coordinates, expected {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("Weyl group too large to enumerate")]
    TooLarge,
    #[error("word is not reduced or has the wrong product")]
    NonReducedWord,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("elements belong to different root systems")]
    SystemMismatch,
    #[error("vector is not a root")]
    NotARoot,
}

/// The three supported root-system families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootSystem {
    /// GL_n: ambient rank n, Weyl group S_n.
    A(usize),
    C2,
    G2,
}

impl RootSystem {
    /// Ambient coordinate count (= number of `t`/`x` variables).
    pub fn rank(&self) -> usize {
        match self {
            RootSystem::A(n) => *n,
            RootSystem::C2 | RootSystem::G2 => 2,
        }
    }

    /// Number of simple reflections.
    pub fn num_simple(&self) -> usize {
        match self {
            RootSystem::A(n) => n.saturating_sub(1),
            RootSystem::C2 | RootSystem::G2 => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RootSystem::A(n) => format!("A{}", n),
            RootSystem::C2 => "C2".to_string(),
            RootSystem::G2 => "G2".to_string(),
        }
    }

    /// Parse a system label: `A<n>` (GL_n), `C2`, `G2`.
    pub fn from_label(s: &str) -> Result<Self, RootError> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('A') {
            let n: usize = rest.parse().map_err(|_| RootError::Parse(s.to_string()))?;
            if n == 0 {
                return Err(RootError::Parse(s.to_string()));
            }
            return Ok(RootSystem::A(n));
        }
        match t {
            "C2" => Ok(RootSystem::C2),
            "G2" => Ok(RootSystem::G2),
            _ => Err(RootError::Parse(s.to_string())),
        }
    }

    /// Simple root as an integer vector in ambient coordinates (1-based index).
    pub fn simple_root(&self, i: usize) -> Result<Vec<i64>, RootError> {
        if i < 1 || i > self.num_simple() {
            return Err(RootError::IndexOutOfRange(i));
        }
        Ok(match self {
            RootSystem::A(n) => {
                let mut v = vec![0i64; *n];
                v[i - 1] = 1;
                v[i] = -1;
                v
            }
            RootSystem::C2 => {
                if i == 1 {
                    vec![1, -1]
                } else {
                    vec![0, 2]
                }
            }
            RootSystem::G2 => {
                if i == 1 {
                    vec![1, 0]
                } else {
                    vec![0, 1]
                }
            }
        })
    }

    /// Positive roots as integer vectors, in a fixed deterministic order.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        match self {
            RootSystem::A(n) => {
                let mut out = Vec::new();
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        let mut v = vec![0i64; *n];
                        v[i] = 1;
                        v[j] = -1;
                        out.push(v);
                    }
                }
                out
            }
            RootSystem::C2 => vec![vec![1, -1], vec![0, 2], vec![1, 1], vec![2, 0]],
            RootSystem::G2 => vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ],
        }
    }

    /// Invariant inner product of integer vectors.
    fn inner_ii(&self, u: &[i64], v: &[i64]) -> i64 {
        match self {
            RootSystem::A(_) | RootSystem::C2 => {
                u.iter().zip(v).map(|(a, b)| a * b).sum()
            }
            RootSystem::G2 => {
                // Gram [[6,-3],[-3,2]] in the simple-root basis.
                6 * u[0] * v[0] - 3 * (u[0] * v[1] + u[1] * v[0]) + 2 * u[1] * v[1]
            }
        }
    }

    /// Invariant inner product of a rational weight with an integer vector.
    fn inner_wq(&self, lam: &Weight, v: &[i64]) -> QRat {
        match self {
            RootSystem::A(_) | RootSystem::C2 => lam
                .coords
                .iter()
                .zip(v)
                .map(|(a, b)| a * &qi(*b))
                .fold(QRat::zero(), |acc, x| acc + x),
            RootSystem::G2 => {
                let u = &lam.coords;
                (&u[0] * &qi(6 * v[0] - 3 * v[1])) + (&u[1] * &qi(-3 * v[0] + 2 * v[1]))
            }
        }
    }

    /// Coroot pairing `<lam, alpha^vee> = 2 (lam, alpha) / (alpha, alpha)`.
    pub fn pairing(&self, lam: &Weight, alpha: &[i64]) -> Result<QRat, RootError> {
        self.check_weight(lam)?;
        let len2 = self.inner_ii(alpha, alpha);
        if len2 == 0 {
            return Err(RootError::NotARoot);
        }
        Ok(self.inner_wq(lam, alpha) * qi(2) / qi(len2))
    }

    /// Pairing with the i-th simple coroot.
    pub fn pairing_simple(&self, lam: &Weight, i: usize) -> Result<QRat, RootError> {
        let alpha = self.simple_root(i)?;
        self.pairing(lam, &alpha)
    }

    pub fn check_weight(&self, lam: &Weight) -> Result<(), RootError> {
        if lam.coords.len() != self.rank() {
            return Err(RootError::RankMismatch { got: lam.coords.len(), want: self.rank() });
        }
        Ok(())
    }

    /// True iff `<lam, alpha^vee>` is non-integral for every positive root.
    pub fn is_generic(&self, lam: &Weight) -> Result<bool, RootError> {
        self.check_weight(lam)?;
        for alpha in self.positive_roots() {
            if is_integer(&self.pairing(lam, &alpha)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff both slopes are generic and lie in the same alcove: for every
    /// positive root the coroot pairings have equal ceilings.
    pub fn same_alcove(&self, a: &Weight, b: &Weight) -> Result<bool, RootError> {
        self.check_weight(a)?;
        self.check_weight(b)?;
        for alpha in self.positive_roots() {
            let pa = self.pairing(a, &alpha)?;
            let pb = self.pairing(b, &alpha)?;
            if is_integer(&pa) || is_integer(&pb) || ceil_q(&pa) != ceil_q(&pb) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn identity(&self) -> WeylElement {
        match self {
            RootSystem::A(n) => WeylElement {
                sys: *self,
                repr: Repr::Perm((1..=*n as u8).collect()),
            },
            _ => WeylElement { sys: *self, repr: Repr::Mat([[1, 0], [0, 1]]) },
        }
    }

    /// The i-th simple reflection (1-based).
    pub fn simple(&self, i: usize) -> Result<WeylElement, RootError> {
        if i < 1 || i > self.num_simple() {
            return Err(RootError::IndexOutOfRange(i));
        }
        Ok(match self {
            RootSystem::A(n) => {
                let mut p: Vec<u8> = (1..=*n as u8).collect();
                p.swap(i - 1, i);
                WeylElement { sys: *self, repr: Repr::Perm(p) }
            }
            RootSystem::C2 => {
                let m = if i == 1 { [[0, 1], [1, 0]] } else { [[1, 0], [0, -1]] };
                WeylElement { sys: *self, repr: Repr::Mat(m) }
            }
            RootSystem::G2 => {
                let m = if i == 1 { [[-1, 1], [0, 1]] } else { [[1, 0], [3, -1]] };
                WeylElement { sys: *self, repr: Repr::Mat(m) }
            }
        })
    }

    /// All Weyl group elements, sorted by (length, canonical word).
    /// Guards against groups larger than 10!.
    pub fn elements(&self) -> Result<Vec<WeylElement>, RootError> {
        match self {
            RootSystem::A(n) => {
                if *n > 10 {
                    return Err(RootError::TooLarge);
                }
                let mut out: Vec<WeylElement> = (1..=*n as u8)
                    .permutations(*n)
                    .map(|p| WeylElement { sys: *self, repr: Repr::Perm(p) })
                    .collect();
                out.sort_by_key(|w| w.sort_key());
                Ok(out)
            }
            _ => {
                let gens: Vec<WeylElement> =
                    (1..=2).map(|i| self.simple(i).unwrap()).collect();
                let mut seen = BTreeSet::new();
                let mut queue = VecDeque::new();
                let id = self.identity();
                seen.insert(id.clone());
                queue.push_back(id);
                while let Some(w) = queue.pop_front() {
                    for g in &gens {
                        let next = w.mul(g).unwrap();
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
                let mut out: Vec<WeylElement> = seen.into_iter().collect();
                out.sort_by_key(|w| w.sort_key());
                Ok(out)
            }
        }
    }

    /// Subgroup generated by the given simple reflections, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Vec<WeylElement>, RootError> {
        let gen_elems: Vec<WeylElement> =
            gens.iter().map(|&i| self.simple(i)).collect::<Result<_, _>>()?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            if seen.len() > 3_628_800 {
                return Err(RootError::TooLarge);
            }
            for g in &gen_elems {
                let next = w.mul(g).unwrap();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<WeylElement> = seen.into_iter().collect();
        out.sort_by_key(|w| w.sort_key());
        Ok(out)
    }

    /// Longest element.
    pub fn longest(&self) -> Result<WeylElement, RootError> {
        Ok(self
            .elements()?
            .into_iter()
            .max_by_key(|w| w.length())
            .expect("nonempty group"))
    }

    /// The reflection fixing the hyperplane of the given positive root.
    pub fn reflection(&self, alpha: &[i64]) -> Result<WeylElement, RootError> {
        if alpha.len() != self.rank() {
            return Err(RootError::RankMismatch { got: alpha.len(), want: self.rank() });
        }
        let len2 = self.inner_ii(alpha, alpha);
        if len2 == 0 {
            return Err(RootError::NotARoot);
        }
        match self {
            RootSystem::A(n) => {
                // alpha = e_i - e_j: the transposition (i j).
                let i = alpha.iter().position(|&c| c == 1).ok_or(RootError::NotARoot)?;
                let j = alpha.iter().position(|&c| c == -1).ok_or(RootError::NotARoot)?;
                let mut p: Vec<u8> = (1..=*n as u8).collect();
                p.swap(i, j);
                Ok(WeylElement { sys: *self, repr: Repr::Perm(p) })
            }
            _ => {
                // Column k: e_k - <e_k, alpha^vee> alpha; entries stay integral.
                let mut m = [[0i64; 2]; 2];
                for k in 0..2 {
                    let mut e = [0i64; 2];
                    e[k] = 1;
                    let num = 2 * self.inner_ii(&e, alpha);
                    if num % len2 != 0 && (num * 2) % len2 != 0 {
                        return Err(RootError::NotARoot);
                    }
                    // 2(e_k, alpha)/ (alpha,alpha) may be a half-integer times
                    // alpha only if alpha is not a root; enforce exactness.
                    if (2 * self.inner_ii(&e, alpha)) % len2 != 0 {
                        return Err(RootError::NotARoot);
                    }
                    let coeff = num / len2;
                    m[0][k] = (k == 0) as i64 - coeff * alpha[0];
                    m[1][k] = (k == 1) as i64 - coeff * alpha[1];
                }
                let w = WeylElement { sys: *self, repr: Repr::Mat(m) };
                Ok(w)
            }
        }
    }

    /// Parse weight coordinates `1/7,2/7,0`.
    pub fn parse_weight(&self, s: &str) -> Result<Weight, RootError> {
        let coords: Result<Vec<QRat>, _> = s.split(',').map(parse_qrat).collect();
        let coords = coords.map_err(|_| RootError::Parse(s.to_string()))?;
        let w = Weight { coords };
        self.check_weight(&w)?;
        Ok(w)
    }
}

/// Rational weight in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub coords: Vec<QRat>,
}

impl Weight {
    pub fn new(coords: Vec<QRat>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![QRat::zero(); rank] }
    }

    pub fn from_ivec(v: &[i64]) -> Self {
        Weight { coords: v.iter().map(|&c| qi(c)).collect() }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(is_integer)
    }

    /// Integer coordinates, if integral.
    pub fn to_ivec(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if is_integer(c) {
                    i64::try_from(&c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// The character monomial `e^mu` in the given variable family
    /// (coordinate i maps to variable i); requires an integral weight.
    pub fn char_mono(&self, fam: Family) -> Option<Mono> {
        let iv = self.to_ivec()?;
        Some(Mono::from_pairs(iv.iter().enumerate().map(|(i, &e)| {
            (VarId { family: fam, index: (i + 1) as u32 }, e as i32)
        })))
    }

    pub fn render(&self) -> String {
        self.coords.iter().map(crate::exactalg::fmt_qrat).join(",")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    /// One-line notation: `perm[i-1] = w(i)`.
    Perm(Vec<u8>),
    /// Integer matrix on ambient coordinates, columns = images of basis vectors.
    Mat([[i64; 2]; 2]),
}

/// Weyl group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    sys: RootSystem,
    repr: Repr,
}

impl WeylElement {
    pub fn system(&self) -> RootSystem {
        self.sys
    }

    pub fn is_identity(&self) -> bool {
        match &self.repr {
            Repr::Perm(p) => p.iter().enumerate().all(|(i, &v)| v as usize == i + 1),
            Repr::Mat(m) => *m == [[1, 0], [0, 1]],
        }
    }

    /// One-line image `w(i)` for type A (1-based).
    pub fn perm_image(&self, i: usize) -> usize {
        match &self.repr {
            Repr::Perm(p) => p[i - 1] as usize,
            Repr::Mat(_) => panic!("perm_image on a rank-2 element"),
        }
    }

    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement, RootError> {
        if self.sys != other.sys {
            return Err(RootError::SystemMismatch);
        }
        let repr = match (&self.repr, &other.repr) {
            (Repr::Perm(a), Repr::Perm(b)) => {
                // (self * other)(i) = self(other(i))
                Repr::Perm(b.iter().map(|&i| a[i as usize - 1]).collect())
            }
            (Repr::Mat(a), Repr::Mat(b)) => {
                let mut m = [[0i64; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        m[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
                    }
                }
                Repr::Mat(m)
            }
            _ => return Err(RootError::SystemMismatch),
        };
        Ok(WeylElement { sys: self.sys, repr })
    }

    pub fn inv(&self) -> WeylElement {
        let repr = match &self.repr {
            Repr::Perm(p) => {
                let mut q = vec![0u8; p.len()];
                for (i, &v) in p.iter().enumerate() {
                    q[v as usize - 1] = (i + 1) as u8;
                }
                Repr::Perm(q)
            }
            Repr::Mat(m) => {
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                debug_assert!(det == 1 || det == -1);
                Repr::Mat([
                    [m[1][1] / det, -m[0][1] / det],
                    [-m[1][0] / det, m[0][0] / det],
                ])
            }
        };
        WeylElement { sys: self.sys, repr }
    }

    /// Action on integer ambient vectors.
    pub fn act_ivec(&self, v: &[i64]) -> Vec<i64> {
        match &self.repr {
            Repr::Perm(p) => {
                let mut out = vec![0i64; v.len()];
                for (i, &val) in v.iter().enumerate() {
                    out[p[i] as usize - 1] = val;
                }
                out
            }
            Repr::Mat(m) => vec![
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ],
        }
    }

    /// Action on rational weights: `(w lam)_i = lam_{w^{-1}(i)}` in type A,
    /// matrix action in rank 2.
    pub fn act_weight(&self, lam: &Weight) -> Weight {
        match &self.repr {
            Repr::Perm(p) => {
                let mut out = vec![QRat::zero(); lam.coords.len()];
                for (i, val) in lam.coords.iter().enumerate() {
                    out[p[i] as usize - 1] = val.clone();
                }
                Weight { coords: out }
            }
            Repr::Mat(m) => Weight {
                coords: vec![
                    &lam.coords[0] * &qi(m[0][0]) + &lam.coords[1] * &qi(m[0][1]),
                    &lam.coords[0] * &qi(m[1][0]) + &lam.coords[1] * &qi(m[1][1]),
                ],
            },
        }
    }

    /// Character substitution map for variables of the given family:
    /// `e^mu -> e^{w mu}`, so in type A `t_i -> t_{w(i)}` and in rank 2
    /// `t_i -> prod_j t_j^{M_ji}`. Variables of other families are kept.
    pub fn char_map(&self, fam: Family) -> impl Fn(VarId) -> Option<(QRat, Mono)> + '_ {
        let this = self.clone();
        move |v: VarId| {
            if v.family != fam {
                return None;
            }
            let i = v.index as usize;
            match &this.repr {
                Repr::Perm(p) => {
                    if i < 1 || i > p.len() {
                        return None;
                    }
                    Some((
                        qi(1),
                        Mono::var(VarId { family: fam, index: p[i - 1] as u32 }),
                    ))
                }
                Repr::Mat(m) => {
                    if !(1..=2).contains(&i) {
                        return None;
                    }
                    Some((
                        qi(1),
                        Mono::from_pairs([
                            (VarId { family: fam, index: 1 }, m[0][i - 1] as i32),
                            (VarId { family: fam, index: 2 }, m[1][i - 1] as i32),
                        ]),
                    ))
                }
            }
        }
    }

    /// Coxeter length = number of positive roots sent negative.
    pub fn length(&self) -> usize {
        match &self.repr {
            Repr::Perm(p) => {
                let mut inv = 0;
                for i in 0..p.len() {
                    for j in (i + 1)..p.len() {
                        if p[i] > p[j] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            Repr::Mat(_) => {
                let mut count = 0;
                for alpha in self.sys.positive_roots() {
                    let img = self.act_ivec(&alpha);
                    let first = img.iter().find(|&&c| c != 0).copied().unwrap_or(0);
                    if first < 0 {
                        count += 1;
                    }
                }
                count
            }
        }
    }

    /// True iff right multiplication by `s_i` increases length.
    pub fn longer_right(&self, i: usize) -> Result<bool, RootError> {
        let s = self.sys.simple(i)?;
        Ok(self.mul(&s)?.length() > self.length())
    }

    /// True iff left multiplication by `s_i` increases length.
    pub fn longer_left(&self, i: usize) -> Result<bool, RootError> {
        let s = self.sys.simple(i)?;
        Ok(s.mul(self)?.length() > self.length())
    }

    /// Lexicographically smallest reduced word (ShortLex normal form),
    /// letters 1-based, first letter = outermost left factor.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut v = self.clone();
        let mut len = v.length();
        while len > 0 {
            for i in 1..=self.sys.num_simple() {
                let s = self.sys.simple(i).unwrap();
                let cand = s.mul(&v).unwrap();
                let cl = cand.length();
                if cl < len {
                    word.push(i);
                    v = cand;
                    len = cl;
                    break;
                }
            }
        }
        word
    }

    /// Deterministic sort key: length, then ShortLex word.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.length(), self.canonical_word())
    }

    /// All reduced words, letters 1-based, sorted lexicographically.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        fn rec(w: &WeylElement, memo: &mut BTreeMap<WeylElement, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
            if let Some(v) = memo.get(w) {
                return v.clone();
            }
            let lw = w.length();
            let mut out = Vec::new();
            if lw == 0 {
                out.push(Vec::new());
            } else {
                for i in 1..=w.sys.num_simple() {
                    let s = w.sys.simple(i).unwrap();
                    let ws = w.mul(&s).unwrap();
                    if ws.length() < lw {
                        for mut u in rec(&ws, memo) {
                            u.push(i);
                            out.push(u);
                        }
                    }
                }
            }
            out.sort();
            memo.insert(w.clone(), out.clone());
            out
        }
        rec(self, &mut BTreeMap::new())
    }

    /// Product of simple reflections for a 1-based letter word.
    pub fn from_word(sys: RootSystem, word: &[usize]) -> Result<WeylElement, RootError> {
        let mut w = sys.identity();
        for &i in word {
            w = w.mul(&sys.simple(i)?)?;
        }
        Ok(w)
    }

    /// Bruhat order, by the right-descent recursion.
    pub fn bruhat_leq(&self, w: &WeylElement) -> Result<bool, RootError> {
        if self.sys != w.sys {
            return Err(RootError::SystemMismatch);
        }
        fn rec(u: &WeylElement, w: &WeylElement) -> bool {
            let lw = w.length();
            if u.length() > lw {
                return false;
            }
            if lw == 0 {
                return u.is_identity();
            }
            let sys = w.sys;
            let i = (1..=sys.num_simple())
                .find(|&i| {
                    let s = sys.simple(i).unwrap();
                    w.mul(&s).unwrap().length() < lw
                })
                .expect("nonidentity element has a right descent");
            let s = sys.simple(i).unwrap();
            let ws = w.mul(&s).unwrap();
            let us = u.mul(&s).unwrap();
            if us.length() < u.length() {
                rec(&us, &ws)
            } else {
                rec(u, &ws)
            }
        }
        Ok(rec(self, w))
    }

    /// Render: type A one-line notation (digits for n <= 9, else
    /// comma-separated), rank 2 as a word `s1 s2 s1` or `id`.
    pub fn render(&self) -> String {
        match &self.repr {
            Repr::Perm(p) => {
                if p.len() <= 9 {
                    p.iter().map(|v| v.to_string()).collect::<String>()
                } else {
                    p.iter().map(|v| v.to_string()).join(",")
                }
            }
            Repr::Mat(_) => {
                let w = self.canonical_word();
                if w.is_empty() {
                    "id".to_string()
                } else {
                    w.iter().map(|i| format!("s{}", i)).join(" ")
                }
            }
        }
    }

    /// Parse an element: one-line notation (type A) or a word in simple
    /// reflections (`s1 s2`, `s1s2`, `id`, `e`).
    pub fn parse(sys: RootSystem, s: &str) -> Result<WeylElement, RootError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(RootError::Parse(s.to_string()));
        }
        if t == "id" || t == "e" {
            return Ok(sys.identity());
        }
        if t.contains('s') {
            let mut word = Vec::new();
            for piece in t.split(['s', ' ', '*']).filter(|p| !p.is_empty()) {
                let i: usize = piece.parse().map_err(|_| RootError::Parse(s.to_string()))?;
                word.push(i);
            }
            return WeylElement::from_word(sys, &word);
        }
        match sys {
            RootSystem::A(n) => {
                let vals: Vec<u8> = if t.contains(',') {
                    t.split(',')
                        .map(|p| p.trim().parse::<u8>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| RootError::Parse(s.to_string()))?
                } else {
                    t.chars()
                        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(()))
                        .collect::<Result<_, _>>()
                        .map_err(|_| RootError::Parse(s.to_string()))?
                };
                if vals.len() != n {
                    return Err(RootError::Parse(s.to_string()));
                }
                let mut seen = vec![false; n];
                for &v in &vals {
                    if v < 1 || v as usize > n || seen[v as usize - 1] {
                        return Err(RootError::Parse(s.to_string()));
                    }
                    seen[v as usize - 1] = true;
                }
                Ok(WeylElement { sys, repr: Repr::Perm(vals) })
            }
            _ => Err(RootError::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qq;

    #[test]
    fn a3_lengths_and_words() {
        let sys = RootSystem::A(3);
        let w0 = sys.longest().unwrap();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.render(), "321");
        let words = w0.reduced_words();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn c2_group_order_and_longest() {
        let sys = RootSystem::C2;
        let els = sys.elements().unwrap();
        assert_eq!(els.len(), 8);
        assert_eq!(sys.longest().unwrap().length(), 4);
        // s1 s2 s1 s2 = s2 s1 s2 s1 = w0
        let a = WeylElement::from_word(sys, &[1, 2, 1, 2]).unwrap();
        let b = WeylElement::from_word(sys, &[2, 1, 2, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn g2_group_order_and_braid() {
        let sys = RootSystem::G2;
        let els = sys.elements().unwrap();
        assert_eq!(els.len(), 12);
        assert_eq!(sys.longest().unwrap().length(), 6);
        let a = WeylElement::from_word(sys, &[1, 2, 1, 2, 1, 2]).unwrap();
        let b = WeylElement::from_word(sys, &[2, 1, 2, 1, 2, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn g2_cartan_pairings() {
        let sys = RootSystem::G2;
        let a1 = sys.simple_root(1).unwrap();
        let a2 = sys.simple_root(2).unwrap();
        let w_a2 = Weight::from_ivec(&a2);
        let w_a1 = Weight::from_ivec(&a1);
        assert_eq!(sys.pairing(&w_a2, &a1).unwrap(), qi(-1));
        assert_eq!(sys.pairing(&w_a1, &a2).unwrap(), qi(-3));
    }

    #[test]
    fn act_is_group_action() {
        for sys in [RootSystem::A(3), RootSystem::C2, RootSystem::G2] {
            let lam = match sys {
                RootSystem::A(_) => Weight::new(vec![qq(1, 7), qq(3, 7), qq(6, 7)]),
                _ => Weight::new(vec![qq(2, 7), qq(5, 7)]),
            };
            let els = sys.elements().unwrap();
            for w in &els {
                for v in &els {
                    let lhs = w.act_weight(&v.act_weight(&lam));
                    let rhs = w.mul(v).unwrap().act_weight(&lam);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn type_a_action_convention() {
        // w = s1 in S_3: swaps coordinates 1,2 of the weight.
        let sys = RootSystem::A(3);
        let s1 = sys.simple(1).unwrap();
        let lam = Weight::new(vec![qi(5), qi(7), qi(9)]);
        assert_eq!(s1.act_weight(&lam).coords, vec![qi(7), qi(5), qi(9)]);
        // <w lam, alpha_i^vee> = lam_{w^{-1}(i)} - lam_{w^{-1}(i+1)}
        let w = WeylElement::parse(sys, "231").unwrap();
        let wi = w.inv();
        let wl = w.act_weight(&lam);
        for i in 1..=2 {
            let got = sys.pairing_simple(&wl, i).unwrap();
            let a = lam.coords[wi.perm_image(i) - 1].clone();
            let b = lam.coords[wi.perm_image(i + 1) - 1].clone();
            assert_eq!(got, a - b);
        }
    }

    #[test]
    fn length_additivity_on_words() {
        for sys in [RootSystem::A(4), RootSystem::C2, RootSystem::G2] {
            for w in sys.elements().unwrap() {
                let word = w.canonical_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(WeylElement::from_word(sys, &word).unwrap(), w);
                for ww in w.reduced_words() {
                    assert_eq!(ww.len(), w.length());
                    assert_eq!(WeylElement::from_word(sys, &ww).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn bruhat_matches_subword_characterization() {
        for sys in [RootSystem::A(4), RootSystem::C2, RootSystem::G2] {
            let els = sys.elements().unwrap();
            for w in &els {
                let word = w.canonical_word();
                // all subword products of one fixed reduced word
                let mut reachable = BTreeSet::new();
                for mask in 0..(1u32 << word.len()) {
                    let sub: Vec<usize> = word
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask & (1 << k) != 0)
                        .map(|(_, &i)| i)
                        .collect();
                    reachable.insert(WeylElement::from_word(sys, &sub).unwrap());
                }
                for u in &els {
                    assert_eq!(
                        u.bruhat_leq(w).unwrap(),
                        reachable.contains(u),
                        "sys {:?} u {} w {}",
                        sys,
                        u,
                        w
                    );
                }
            }
        }
    }

    #[test]
    fn genericity_and_alcoves() {
        let sys = RootSystem::A(3);
        let lam = Weight::new(vec![qq(1, 7), qq(3, 7), qq(6, 7)]);
        assert!(sys.is_generic(&lam).unwrap());
        let mu = Weight::new(vec![qq(1, 11), qq(4, 11), qq(9, 11)]);
        // same signs of pairings and same ceilings
        assert!(sys.same_alcove(&lam, &mu).unwrap());
        let nu = Weight::new(vec![qq(6, 7), qq(3, 7), qq(1, 7)]);
        assert!(!sys.same_alcove(&lam, &nu).unwrap());
        let integral = Weight::new(vec![qi(1), qi(0), qi(0)]);
        assert!(!sys.is_generic(&integral).unwrap());

        let g2 = RootSystem::G2;
        let lam = g2.parse_weight("2/7,5/7").unwrap();
        assert!(g2.is_generic(&lam).unwrap());
        let bad = g2.parse_weight("1/7,3/7").unwrap();
        assert!(!g2.is_generic(&bad).unwrap());
    }

    #[test]
    fn reflection_matches_enumeration() {
        for sys in [RootSystem::A(3), RootSystem::C2, RootSystem::G2] {
            for alpha in sys.positive_roots() {
                let r = sys.reflection(&alpha).unwrap();
                // involution, length parity odd, fixes the wall
                assert_eq!(r.mul(&r).unwrap(), sys.identity());
                assert_eq!(r.act_ivec(&alpha), alpha.iter().map(|&c| -c).collect::<Vec<_>>());
                assert!(r.length() % 2 == 1);
            }
        }
    }

    #[test]
    fn parse_render_roundtrip() {
        let sys = RootSystem::A(4);
        for w in sys.elements().unwrap() {
            let s = w.render();
            assert_eq!(WeylElement::parse(sys, &s).unwrap(), w);
        }
        let g2 = RootSystem::G2;
        for w in g2.elements().unwrap() {
            let s = w.render();
            assert_eq!(WeylElement::parse(g2, &s).unwrap(), w);
        }
        assert!(WeylElement::parse(sys, "2314").is_ok());
        assert!(WeylElement::parse(sys, "2311").is_err());
        assert!(WeylElement::parse(sys, "231").is_err());
    }
}
