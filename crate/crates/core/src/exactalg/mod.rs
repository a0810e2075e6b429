//! Exact arithmetic: sparse Laurent polynomials and rational functions over
//! the rationals, with canonical forms and decidable equality.
//!
//! Variables live in five families with a fixed global order
//! `t < x < z < y < h`. The `y` and `h` families are single variables
//! (index 0); `h` plays the role of a square root of the quantum parameter,
//! `q = h^2`.

mod poly;
mod ratfunc;

pub use poly::{LaurentPoly, Mono};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar.
pub type QRat = BigRational;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("denominator vanishes under substitution")]
    DenominatorVanishes,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

/// Variable family, ordered `T < X < Z < Y < H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T,
    X,
    Z,
    Y,
    H,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::T => 't',
            Family::X => 'x',
            Family::Z => 'z',
            Family::Y => 'y',
            Family::H => 'h',
        }
    }
}

/// A single variable: family plus 1-based index (`y` and `h` use index 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub fn t(i: u32) -> Self {
        debug_assert!(i >= 1);
        VarId { family: Family::T, index: i }
    }
    pub fn x(i: u32) -> Self {
        debug_assert!(i >= 1);
        VarId { family: Family::X, index: i }
    }
    pub fn z(i: u32) -> Self {
        debug_assert!(i >= 1);
        VarId { family: Family::Z, index: i }
    }
    pub fn y() -> Self {
        VarId { family: Family::Y, index: 0 }
    }
    pub fn h() -> Self {
        VarId { family: Family::H, index: 0 }
    }

    pub fn in_family(self, fam: Family) -> bool {
        self.family == fam
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Y | Family::H => write!(f, "{}", self.family.letter()),
            _ => write!(f, "{}{}", self.family.letter(), self.index),
        }
    }
}

/// Parse a variable name as printed by `Display` (`t3`, `x1`, `y`, `h`).
pub fn parse_var(s: &str) -> Option<VarId> {
    let mut chars = s.chars();
    let fam = match chars.next()? {
        't' => Family::T,
        'x' => Family::X,
        'z' => Family::Z,
        'y' => Family::Y,
        'h' => Family::H,
        _ => return None,
    };
    let rest = chars.as_str();
    match fam {
        Family::Y | Family::H => {
            if rest.is_empty() {
                Some(VarId { family: fam, index: 0 })
            } else {
                None
            }
        }
        _ => {
            let idx: u32 = rest.parse().ok()?;
            if idx >= 1 {
                Some(VarId { family: fam, index: idx })
            } else {
                None
            }
        }
    }
}

/// Integer as exact rational.
pub fn qi(n: i64) -> QRat {
    QRat::from_integer(BigInt::from(n))
}

/// `p/q` as exact rational; panics on `q == 0`.
pub fn qq(p: i64, q: i64) -> QRat {
    assert!(q != 0, "zero denominator");
    QRat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact ceiling of a rational, as `i64`.
pub fn ceil_q(a: &QRat) -> i64 {
    let c = a.ceil();
    let int = c.to_integer();
    i64::try_from(&int).expect("ceiling exceeds i64 range")
}

/// Exact floor of a rational, as `i64`.
pub fn floor_q(a: &QRat) -> i64 {
    let c = a.floor();
    let int = c.to_integer();
    i64::try_from(&int).expect("floor exceeds i64 range")
}

/// True iff the rational is an integer.
pub fn is_integer(a: &QRat) -> bool {
    a.is_integer()
}

/// Parse an exact rational: `-3`, `5/7`, `+2/3`. No floats.
pub fn parse_qrat(s: &str) -> Result<QRat, ExactError> {
    let t = s.trim();
    if t.is_empty() || t.contains('.') {
        return Err(ExactError::BadRational(s.to_string()));
    }
    QRat::from_str(t).map_err(|_| ExactError::BadRational(s.to_string()))
}

/// Render a rational without spaces (`-3/2`, `4`).
pub fn fmt_qrat(a: &QRat) -> String {
    if a.is_integer() {
        a.to_integer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Raise a nonzero rational to an integer power.
pub fn qrat_pow(base: &QRat, exp: i32) -> QRat {
    if exp == 0 {
        return QRat::one();
    }
    assert!(!base.is_zero(), "zero base with nonpositive exponent");
    let mut acc = QRat::one();
    let b = if exp > 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Truncated geometric sum `(1 - L^n) / (1 - L)` for a monomial `L`,
/// extended to negative `n` so that multiplying by `1 - L` always recovers
/// `1 - L^n` exactly.
pub fn exact_div_geom(n: i64, l: &Mono) -> LaurentPoly {
    LaurentPoly::geom_sum(n, l)
}

/// Sign as -1, 0, 1.
pub fn sign_q(a: &QRat) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_order_is_t_x_z_y_h() {
        let order = [VarId::t(9), VarId::x(1), VarId::z(1), VarId::y(), VarId::h()];
        for w in order.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(VarId::t(1) < VarId::t(2));
    }

    #[test]
    fn ceil_floor_exact() {
        assert_eq!(ceil_q(&qq(1, 7)), 1);
        assert_eq!(ceil_q(&qq(-1, 7)), 0);
        assert_eq!(ceil_q(&qi(-3)), -3);
        assert_eq!(floor_q(&qq(1, 7)), 0);
        assert_eq!(floor_q(&qq(-1, 7)), -1);
        assert_eq!(ceil_q(&qq(14, 7)), 2);
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["5/7", "-3", "0", "22/7", "-13/11"] {
            let v = parse_qrat(s).unwrap();
            assert_eq!(fmt_qrat(&v), s);
        }
        assert!(parse_qrat("0.5").is_err());
        assert!(parse_qrat("").is_err());
    }

    #[test]
    fn var_parse_roundtrip() {
        for v in [VarId::t(3), VarId::x(12), VarId::z(1), VarId::y(), VarId::h()] {
            assert_eq!(parse_var(&v.to_string()), Some(v));
        }
        assert_eq!(parse_var("w1"), None);
        assert_eq!(parse_var("y2"), None);
    }
}
