//! Places of Q, Hilbert symbols and Hasse invariants.
//!
//! The Hilbert symbol (a,b)_v is +1 iff z^2 = a*x^2 + b*y^2 has a nontrivial
//! solution over the completion at v. Together with rank, signature and
//! discriminant, the resulting Hasse invariants classify quadratic forms over
//! Q, which is how the toolkit decides isotropy and Witt decomposition without
//! ever leaving exact arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{is_prime_u64, Field, Scalar};
use crate::square::{legendre, SquareClass};

/// A place of Q: the real place or a finite prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl Place {
    /// Checks that a finite place is 2 or an odd prime.
    fn validate(self) {
        if let Place::Prime(p) = self {
            assert!(is_prime_u64(p), "place must be infinity or a prime, got {p}");
        }
    }
}

/// Infinity sorts first, then finite primes in increasing order, so iterating
/// a place-indexed map lists the real place before 2, 3, 5, ...
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, Place::Prime(_)) => Ordering::Less,
            (Place::Prime(_), Place::Infinity) => Ordering::Greater,
            (Place::Prime(p), Place::Prime(q)) => p.cmp(q),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// p-adic valuation and unit part: r = p^v * u with u a p-adic unit.
pub(crate) fn split_valuation(r: &BigRational, p: u64) -> (i64, BigRational) {
    fn int_valuation(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
        let mut v = 0;
        let mut m = n.clone();
        loop {
            let (q, rem) = m.div_rem(p);
            if rem.is_zero() && !m.is_zero() {
                v += 1;
                m = q;
            } else {
                return (v, m);
            }
        }
    }
    let pb = BigInt::from(p);
    let (vn, n) = int_valuation(r.numer(), &pb);
    let (vd, d) = int_valuation(r.denom(), &pb);
    (vn - vd, BigRational::new(n, d))
}

/// A 2-adic unit n/d reduced mod 8. Odd residues are self-inverse mod 8, so
/// n * d^-1 = n * d there.
fn odd_unit_mod8(u: &BigRational) -> u64 {
    let eight = BigInt::from(8);
    let n = u.numer().mod_floor(&eight).to_u64().unwrap();
    let d = u.denom().mod_floor(&eight).to_u64().unwrap();
    debug_assert!(n % 2 == 1 && d % 2 == 1);
    (n * d) % 8
}

/// (m - 1) / 2 mod 2 for odd m: 0 iff m = 1 mod 4.
fn eps2(m: u64) -> u32 {
    ((m - 1) / 2 % 2) as u32
}

/// (m^2 - 1) / 8 mod 2 for odd m: 0 iff m = 1, 7 mod 8.
fn omega2(m: u64) -> u32 {
    ((m * m - 1) / 8 % 2) as u32
}

/// Legendre symbol of a p-adic unit n/d: (n|p) * (d|p), since inverting a
/// unit does not change its residue symbol.
fn legendre_unit(u: &BigRational, p: u64) -> i32 {
    legendre(u.numer(), p) * legendre(u.denom(), p)
}

/// The Hilbert symbol (a,b)_v for nonzero rationals.
///
/// At infinity it is -1 iff both arguments are negative. At a finite prime,
/// write a = p^alpha * u and b = p^beta * w with unit parts u, w; for odd p
/// the symbol is (-1)^(alpha*beta*(p-1)/2) * (u|p)^beta * (w|p)^alpha, and at
/// p = 2 it is read off the units mod 8.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, place: Place) -> i32 {
    assert_eq!(a.field(), Field::Rationals, "Hilbert symbols live over Q");
    assert_eq!(b.field(), Field::Rationals, "Hilbert symbols live over Q");
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol arguments must be nonzero");
    place.validate();
    let ra = a.rational().unwrap();
    let rb = b.rational().unwrap();
    match place {
        Place::Infinity => {
            if ra.is_negative() && rb.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(ra, 2);
            let (beta, w) = split_valuation(rb, 2);
            let u8 = odd_unit_mod8(&u);
            let w8 = odd_unit_mod8(&w);
            let exp = eps2(u8) * eps2(w8)
                + (alpha.rem_euclid(2) as u32) * omega2(w8)
                + (beta.rem_euclid(2) as u32) * omega2(u8);
            if exp % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(ra, p);
            let (beta, w) = split_valuation(rb, p);
            let mut s = 1;
            if alpha % 2 != 0 && beta % 2 != 0 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta % 2 != 0 {
                s *= legendre_unit(&u, p);
            }
            if alpha % 2 != 0 {
                s *= legendre_unit(&w, p);
            }
            s
        }
    }
}

/// Hasse invariant of a diagonal form: the product of (a_i, a_j)_v over all
/// index pairs i < j. Empty and rank-one forms have invariant +1.
pub fn hasse_invariant(entries: &[Scalar], place: Place) -> i32 {
    let mut s = 1;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            s *= hilbert_symbol(&entries[i], &entries[j], place);
        }
    }
    s
}

/// Whether a nonzero rational is a square in the completion at `place`.
pub fn is_local_square(a: &Scalar, place: Place) -> bool {
    assert_eq!(a.field(), Field::Rationals, "local squares are decided over Q");
    assert!(!a.is_zero());
    place.validate();
    let r = a.rational().unwrap();
    match place {
        Place::Infinity => r.is_positive(),
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(r, 2);
            alpha % 2 == 0 && odd_unit_mod8(&u) == 1
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(r, p);
            alpha % 2 == 0 && legendre_unit(&u, p) == 1
        }
    }
}

/// The places where a diagonal form with these entries can have a Hilbert
/// symbol or Hasse invariant other than +1: infinity, 2, and every odd prime
/// in the square-class support of an entry. Everywhere else all the symbols
/// involved are +1.
pub fn bad_places(entries: &[Scalar]) -> BTreeSet<Place> {
    let mut out = BTreeSet::new();
    out.insert(Place::Infinity);
    out.insert(Place::Prime(2));
    for a in entries {
        let class = SquareClass::of(a).expect("diagonal entries are nonzero");
        for p in class.odd_prime_support() {
            out.insert(Place::Prime(p));
        }
    }
    out
}
