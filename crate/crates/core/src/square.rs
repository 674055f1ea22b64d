//! Square classes k^x/(k^x)^2 and residue symbols.
//!
//! Over Q the canonical representative of a class is the squarefree integer
//! carrying the sign; over F_p it is 1 or the least positive non-residue.
//! Square classes are what discriminants live in, and their prime support
//! drives the Hilbert-symbol bad sets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{legendre_u64, Field, Scalar, ScalarError};

/// A class in k^x/(k^x)^2, stored by its canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SquareClass {
    field: Field,
    repr: SquareRepr,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum SquareRepr {
    /// Squarefree integer, sign included.
    Rat(BigInt),
    /// 1 or the least positive non-residue mod p.
    Mod(u64),
}

impl SquareClass {
    /// Class of a nonzero scalar. For n/d over Q this is the squarefree part
    /// of n*d; over F_p it is decided by the Legendre symbol.
    pub fn of(a: &Scalar) -> Result<SquareClass, ScalarError> {
        if a.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        let field = a.field();
        match field {
            Field::Rationals => {
                let r = a.rational().unwrap();
                let prod = r.numer() * r.denom();
                Ok(SquareClass { field, repr: SquareRepr::Rat(squarefree_part(&prod)) })
            }
            Field::Prime(p) => {
                let rep = if legendre_u64(a.residue().unwrap(), p) == 1 {
                    1
                } else {
                    field.least_nonresidue().unwrap()
                };
                Ok(SquareClass { field, repr: SquareRepr::Mod(rep) })
            }
        }
    }

    /// The class of the field's unit 1.
    pub fn one(field: Field) -> SquareClass {
        match field {
            Field::Rationals => SquareClass { field, repr: SquareRepr::Rat(BigInt::one()) },
            Field::Prime(_) => SquareClass { field, repr: SquareRepr::Mod(1) },
        }
    }

    /// The class of -1.
    pub fn minus_one(field: Field) -> SquareClass {
        SquareClass::of(&field.from_int(-1)).unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            SquareRepr::Rat(n) => n.is_one(),
            SquareRepr::Mod(m) => *m == 1,
        }
    }

    /// Group law in k^x/(k^x)^2.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        assert_eq!(self.field, other.field, "square classes over different fields");
        match (&self.repr, &other.repr) {
            (SquareRepr::Rat(a), SquareRepr::Rat(b)) => {
                // a, b squarefree: the squarefree part of a*b is a*b / gcd^2.
                let g = gcd_bigint(a, b);
                SquareClass { field: self.field, repr: SquareRepr::Rat(a * b / (&g * &g)) }
            }
            (SquareRepr::Mod(a), SquareRepr::Mod(b)) => {
                let rep = if (*a == 1) == (*b == 1) {
                    1
                } else {
                    self.field.least_nonresidue().unwrap()
                };
                SquareClass { field: self.field, repr: SquareRepr::Mod(rep) }
            }
            _ => unreachable!(),
        }
    }

    /// The canonical representative as a scalar.
    pub fn representative(&self) -> Scalar {
        match &self.repr {
            SquareRepr::Rat(n) => self.field.from_bigint(n),
            SquareRepr::Mod(m) => self.field.from_int(*m as i64),
        }
    }

    /// The representative as an integer, over Q.
    pub fn integer(&self) -> Option<&BigInt> {
        match &self.repr {
            SquareRepr::Rat(n) => Some(n),
            SquareRepr::Mod(_) => None,
        }
    }

    /// Sign of the representative over Q; `None` over F_p.
    pub fn sign(&self) -> Option<i32> {
        match &self.repr {
            SquareRepr::Rat(n) => Some(if n.is_negative() { -1 } else { 1 }),
            SquareRepr::Mod(_) => None,
        }
    }

    /// Odd primes dividing the representative (empty over F_p); together with
    /// 2 and infinity these are the places where Hilbert symbols can be -1.
    pub fn odd_prime_support(&self) -> Vec<u64> {
        match &self.repr {
            SquareRepr::Rat(n) => factor_abs(n)
                .into_iter()
                .map(|(p, _)| p)
                .filter(|&p| p != 2)
                .collect(),
            SquareRepr::Mod(_) => Vec::new(),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            SquareRepr::Rat(n) => write!(f, "{n}"),
            SquareRepr::Mod(m) => write!(f, "{m}"),
        }
    }
}

/// Legendre symbol (a|p) for an odd prime p: 0 iff p | a, +1 iff a is a
/// nonzero square mod p.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    use num_integer::Integer;
    assert!(p % 2 == 1 && crate::field::is_prime_u64(p), "p must be an odd prime");
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    legendre_u64(r, p)
}

/// Squarefree part of a nonzero integer, sign preserved:
/// n = (squarefree part) * square.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut out = BigInt::one();
    if n.is_negative() {
        out = -out;
    }
    for (p, e) in factor_abs(n) {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    out
}

/// Prime factorization of |n| as (prime, exponent) pairs, ascending.
/// Trial division below 2^16, then Pollard rho on the u128 cofactor.
pub(crate) fn factor_abs(n: &BigInt) -> Vec<(u64, u32)> {
    let mut m = n.abs();
    if m.is_one() {
        return Vec::new();
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, factors: &mut Vec<(u64, u32)>| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    let mut d = 2u64;
    while d < 1 << 16 {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            let mut e = 0;
            while (&m % &bd).is_zero() {
                m /= &bd;
                e += 1;
            }
            push(d, e, &mut factors);
        }
        if m.is_one() {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let rest = m
            .to_u128()
            .expect("cofactor beyond u128 after trial division; input out of supported range");
        let mut rho_factors = Vec::new();
        factor_u128(rest, &mut rho_factors);
        rho_factors.sort_unstable();
        let mut i = 0;
        while i < rho_factors.len() {
            let p = rho_factors[i];
            let mut e = 0;
            while i < rho_factors.len() && rho_factors[i] == p {
                e += 1;
                i += 1;
            }
            push(p.try_into().expect("prime factor fits u64"), e, &mut factors);
        }
    }
    factors.sort_unstable();
    factors
}

fn factor_u128(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime_u128(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u128(d, out);
    factor_u128(n / d, out);
}

fn mulm128(a: u128, b: u128, m: u128) -> u128 {
    // Schoolbook double-and-add; inputs here stay far below 2^127.
    let mut acc = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn powm128(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm128(acc, base, m);
        }
        base = mulm128(base, base, m);
        e >>= 1;
    }
    acc
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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
    // These bases are deterministic for n < 3.3e24, well past our range.
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    assert!(n > 1 && n % 2 == 1, "rho expects odd composite");
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulm128(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}
