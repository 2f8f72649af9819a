//! Exact field elements: arbitrary-precision rationals or a prime field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Which exact field computations run over. Rationals are the default;
/// prime fields are the fast opt-in mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldCfg {
    #[serde(rename = "rat")]
    Rational,
    #[serde(rename = "fp")]
    Prime { p: u64 },
}

/// Default prime for the fast mode.
pub const DEFAULT_PRIME: u64 = 32003;

impl FieldCfg {
    pub fn rational() -> Self {
        FieldCfg::Rational
    }

    /// A prime field; `p` must be an odd prime.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p <= 2 || !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldCfg::Prime { p })
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldCfg::Rational => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldCfg::Prime { p } => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, val: r }
            }
        }
    }
}

impl std::fmt::Display for FieldCfg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldCfg::Rational => write!(f, "rat"),
            FieldCfg::Prime { p } => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms by
/// `BigRational`; prime-field elements carry their modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldCfg {
        match self {
            Scalar::Rat(_) => FieldCfg::Rational,
            Scalar::Fp { p, .. } => FieldCfg::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp {
                    p: *p,
                    val: addmod(*a, *b, *p),
                }
            }
            _ => panic!("scalar field mismatch: {self:?} vs {other:?}"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp {
                    p: *p,
                    val: mulmod(*a, *b, *p),
                }
            }
            _ => panic!("scalar field mismatch: {self:?} vs {other:?}"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { p, val } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp {
                    p: *p,
                    val: powmod(*val, p - 2, *p),
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{r}")
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
