//! Exact scalar arithmetic over the two supported coefficient fields:
//! the rationals and prime fields F_p with p an odd prime.
//!
//! Rationals are arbitrary-precision and always kept in lowest terms with a
//! positive denominator; prime-field elements are residues in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// p = 2 is rejected: diagonalization of symmetric forms needs 1/2.
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field spec {0:?} (expected \"Q\" or \"F<p>\")")]
    BadSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivideByZero,
    #[error("zero input where a nonzero scalar is required")]
    ZeroInput,
    #[error("cannot parse scalar {text:?} over {field}: {reason}")]
    Parse { field: Field, text: String, reason: String },
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(Field, Field),
}

/// A validated coefficient field: either Q or F_p with p an odd prime.
///
/// Construction goes through [`Field::rationals`] / [`Field::odd_prime`] /
/// [`Field::parse`], which enforce the primality and characteristic-not-2
/// gates; a value of this type is always usable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn rationals() -> Self {
        Field::Rationals
    }

    /// Accepts an odd prime; rejects 2 (`CharTwo`) and composites (`NotPrime`).
    pub fn odd_prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharTwo);
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Parses the serialized spec: `"Q"` or `"F<p>"` (e.g. `"F7"`).
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = t.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| FieldError::BadSpec(s.to_string()))?;
            return Field::odd_prime(p);
        }
        Err(FieldError::BadSpec(s.to_string()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar { field: *self, repr: Repr::Rat(BigRational::zero()) },
            Field::Prime(_) => Scalar { field: *self, repr: Repr::Mod(0) },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::from_integer(n.clone())),
            },
            Field::Prime(p) => {
                let m = n.mod_floor_u64(*p);
                Scalar { field: *self, repr: Repr::Mod(m) }
            }
        }
    }

    /// Embeds a fraction; over F_p the denominator is inverted mod p.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivideByZero);
        }
        match self {
            Field::Rationals => Ok(Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::new(num.clone(), den.clone())),
            }),
            Field::Prime(_) => {
                let n = self.from_bigint(num);
                let d = self.from_bigint(den);
                n.div(&d)
            }
        }
    }

    /// Parses `"n"` or `"n/d"` decimal strings, with an optional leading sign.
    /// The fractional form is only accepted over Q.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            field: *self,
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        let (num_str, den_str) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        if den_str.is_some() && self.is_prime_field() {
            return Err(err("fractional literals are not allowed over a prime field"));
        }
        let num: BigInt = num_str.parse().map_err(|_| err("bad numerator"))?;
        match den_str {
            None => Ok(self.from_bigint(&num)),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
                if den.is_zero() {
                    return Err(ScalarError::DivideByZero);
                }
                self.from_ratio(&num, &den)
            }
        }
    }

    /// Least positive quadratic non-residue mod p; `None` over Q.
    /// This is the canonical representative of the non-square class.
    pub fn least_nonresidue(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => {
                let mut a = 2u64;
                loop {
                    if legendre_u64(a, *p) == -1 {
                        return Some(a);
                    }
                    a += 1;
                    assert!(a < *p, "odd prime field has a non-residue below p");
                }
            }
        }
    }

    /// All residues 0..p (empty iterator over Q); used by brute-force oracles.
    pub fn residues(&self) -> impl Iterator<Item = u64> {
        let p = self.characteristic();
        0..p
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
}

/// An exact field element tagged with its field.
///
/// `add`/`sub`/`mul`/`neg` panic on a field mismatch (callers are expected to
/// have checked the context); `div`, `inv` and [`Scalar::arith`] report errors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

/// Operation selector for [`Scalar::arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(m) => *m == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(m) => *m == 1,
        }
    }

    /// The rational value, when over Q.
    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Mod(_) => None,
        }
    }

    /// The residue in `[0, p)`, when over F_p.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rat(_) => None,
            Repr::Mod(m) => Some(*m),
        }
    }

    /// Sign over Q (-1, 0, +1); `None` over F_p.
    pub fn sign(&self) -> Option<i32> {
        match &self.repr {
            Repr::Rat(r) => Some(if r.is_zero() {
                0
            } else if r.is_negative() {
                -1
            } else {
                1
            }),
            Repr::Mod(_) => None,
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar { field: self.field, repr: Repr::Rat(a + b) },
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Mod(addm(*a, *b, p)) }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Rat(a) => Scalar { field: self.field, repr: Repr::Rat(-a) },
            Repr::Mod(a) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Mod(if *a == 0 { 0 } else { p - *a }) }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar { field: self.field, repr: Repr::Rat(a * b) },
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Mod(mulm(*a, *b, p)) }
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivideByZero);
        }
        Ok(match &self.repr {
            Repr::Rat(a) => Scalar { field: self.field, repr: Repr::Rat(a.recip()) },
            Repr::Mod(a) => {
                let p = self.field.characteristic();
                // Fermat: a^(p-2) mod p.
                Scalar { field: self.field, repr: Repr::Mod(powm(*a, p - 2, p)) }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same_field(other);
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The checked entry point for the four field operations; reports a field
    /// mismatch or a zero divisor instead of panicking.
    pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if a.field != b.field {
            return Err(ScalarError::FieldMismatch(a.field, b.field));
        }
        match op {
            ArithOp::Add => Ok(a.add(b)),
            ArithOp::Sub => Ok(a.sub(b)),
            ArithOp::Mul => Ok(a.mul(b)),
            ArithOp::Div => a.div(b),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod(m) => write!(f, "{m}"),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        m.to_u64().expect("residue fits in u64")
    }
}

pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        e >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) for odd prime p, via Euler's criterion.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = powm(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for all 64-bit integers).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
