//! Multivariate polynomials with exact coefficients, monomial orders, and the
//! expression parser for map input.
//!
//! Monomials are dense exponent vectors (the variable count here is tiny).
//! Terms are stored in a BTreeMap keyed by the exponent vector, so equality
//! and iteration order are canonical independent of any monomial order; the
//! active order is supplied per operation where it matters.

mod parser;

pub use parser::{parse_poly, ParseError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different variable sets or fields")]
    MixedContext,
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("monomial degree overflow (exponents are capped at 2^31 - 1)")]
    DegreeOverflow,
    #[error("invalid variable set: {0}")]
    BadVarSet(String),
}

/// An ordered set of distinct variable names; the position fixes the
/// x_1 > x_2 > ... precedence used by the monomial orders.
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

impl VarSet {
    /// Builds a variable set; names must be nonempty, distinct identifiers
    /// (`[A-Za-z_][A-Za-z0-9_]*`).
    pub fn new<I, S>(names: I) -> Result<VarSet, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PolyError::BadVarSet("no variables".into()));
        }
        for n in &names {
            if !is_identifier(n) {
                return Err(PolyError::BadVarSet(format!("{n:?} is not an identifier")));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::BadVarSet(format!("duplicate variable {n:?}")));
            }
        }
        Ok(VarSet { names: Arc::new(names) })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends a fresh variable derived from `hint` (suffixing digits until it
    /// is distinct); returns the extended set and the new index.
    pub fn with_fresh(&self, hint: &str) -> (VarSet, usize) {
        let mut candidate = hint.to_string();
        let mut k = 0u32;
        while self.index_of(&candidate).is_some() {
            candidate = format!("{hint}{k}");
            k += 1;
        }
        let mut names = self.names.as_ref().clone();
        names.push(candidate);
        let idx = names.len() - 1;
        (VarSet { names: Arc::new(names) }, idx)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) const MAX_EXPONENT: u32 = i32::MAX as u32;

/// A power product, as a dense exponent vector over a fixed variable count.
/// The derived `Ord` (plain lexicographic on the vector) is only used as a
/// canonical storage key; ranking under a monomial order goes through
/// [`MonomialOrder::cmp_monomials`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        assert!(i < n);
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let s = a.checked_add(*b).ok_or(PolyError::DegreeOverflow)?;
            if s > MAX_EXPONENT {
                return Err(PolyError::DegreeOverflow);
            }
            e.push(s);
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Renders against a variable set, e.g. `x^2*y` (or `1` for the unit).
    pub fn render(&self, vars: &VarSet) -> String {
        assert_eq!(self.0.len(), vars.len());
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A monomial order: lex or degrevlex, both with x_1 > x_2 > ... .
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // Equal degree: the rightmost differing exponent decides,
                // and the *smaller* exponent there wins.
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    match x.cmp(y) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn parse(s: &str) -> Option<MonomialOrder> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            _ => None,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
        }
    }
}

/// An exact multivariate polynomial over a fixed field and variable set.
/// No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    field: Field,
    vars: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, vars: &VarSet) -> Polynomial {
        Polynomial { field, vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, vars: &VarSet) -> Polynomial {
        let mut p = Polynomial::zero(c.field(), vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(field: Field, vars: &VarSet) -> Polynomial {
        Polynomial::constant(field.one(), vars)
    }

    pub fn var(field: Field, vars: &VarSet, i: usize) -> Result<Polynomial, PolyError> {
        if i >= vars.len() {
            return Err(PolyError::IndexOutOfRange { index: i, n: vars.len() });
        }
        let mut p = Polynomial::zero(field, vars);
        p.terms.insert(Monomial::var(vars.len(), i), field.one());
        Ok(p)
    }

    pub fn from_terms<I>(field: Field, vars: &VarSet, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn same_context(&self, other: &Polynomial) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !self.same_context(other) {
            return Err(PolyError::MixedContext);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !self.same_context(other) {
            return Err(PolyError::MixedContext);
        }
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.try_mul(mb)?, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal use after contexts are established.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("context mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("context mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("context mismatch or degree overflow")
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, &self.vars);
        }
        Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    /// Multiplies by `c * m` (a single-term shift).
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (mm, cc) in &self.terms {
            out.add_term(mm.try_mul(m)?, cc.mul(c));
        }
        Ok(out)
    }

    pub fn try_pow(&self, e: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(self.field, &self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The constant term (the value at the origin).
    pub fn eval_at_zero(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.vars.len() {
            return Err(PolyError::IndexOutOfRange { index: i, n: self.vars.len() });
        }
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] = e - 1;
            let factor = self.field.from_int(e as i64);
            out.add_term(Monomial::from_exponents(exps), c.mul(&factor));
        }
        Ok(out)
    }

    /// The maximal term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(&Monomial, &Scalar), PolyError> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_monomials(a, b))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Applies the ring homomorphism sending variable `i` to variable
    /// `idx_map[i]` of `new_vars`. The map need not be injective.
    pub fn map_vars(&self, new_vars: &VarSet, idx_map: &[usize]) -> Result<Polynomial, PolyError> {
        assert_eq!(idx_map.len(), self.vars.len());
        for &j in idx_map {
            if j >= new_vars.len() {
                return Err(PolyError::IndexOutOfRange { index: j, n: new_vars.len() });
            }
        }
        let mut out = Polynomial::zero(self.field, new_vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_vars.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                let j = idx_map[i];
                let s = exps[j].checked_add(e).ok_or(PolyError::DegreeOverflow)?;
                if s > MAX_EXPONENT {
                    return Err(PolyError::DegreeOverflow);
                }
                exps[j] = s;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Divides by the leading coefficient under `order` (no-op on zero).
    pub fn make_monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Err(_) => self.clone(),
            Ok((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("leading coefficient is nonzero"))
                }
            }
        }
    }

    /// Over Q: scales to integer coefficients with content 1 and a positive
    /// leading coefficient under `order`; over F_p: makes monic. Keeps the
    /// polynomial in the same ideal while taming coefficient growth.
    pub fn normalized_generator(&self, order: MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        match self.field {
            Field::Prime(_) => self.make_monic(order),
            Field::Rationals => {
                use num_bigint::BigInt;
                use num_integer::Integer;
                use num_traits::{One, Signed, Zero};
                let mut den_lcm = BigInt::one();
                for (_, c) in &self.terms {
                    den_lcm = den_lcm.lcm(c.rational().unwrap().denom());
                }
                let mut num_gcd = BigInt::zero();
                for (_, c) in &self.terms {
                    let scaled = c.rational().unwrap() * &den_lcm;
                    debug_assert!(scaled.denom().is_one());
                    num_gcd = num_gcd.gcd(scaled.numer());
                }
                let factor = self
                    .field
                    .from_ratio(&den_lcm, &num_gcd)
                    .expect("nonzero content");
                let mut out = self.scale(&factor);
                let (_, lc) = out.leading_term(order).unwrap();
                if lc.rational().unwrap().is_negative() {
                    out = out.neg();
                }
                out
            }
        }
    }

    /// Canonical text form; grammar-compatible, so `parse(render(p)) == p`.
    /// Terms are listed in descending degrevlex order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = MonomialOrder::DegRevLex;
        let mut terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp_monomials(b, a));
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.sign() == Some(-1);
            let abs = if negative { c.neg() } else { (*c).clone() };
            let body = if m.is_one() {
                format!("{abs}")
            } else if abs.is_one() {
                m.render(&self.vars)
            } else {
                format!("{}*{}", abs, m.render(&self.vars))
            };
            if i == 0 {
                if negative {
                    // A leading minus may only attach to a literal: "-x^2"
                    // would re-parse as (-x)^2. Emit the coefficient
                    // explicitly whenever a variable follows.
                    if m.is_one() {
                        out.push_str(&format!("-{body}"));
                    } else {
                        out.push_str(&format!("-{}*{}", abs, m.render(&self.vars)));
                    }
                } else {
                    out.push_str(&body);
                }
            } else if negative {
                out.push_str(&format!(" - {body}"));
            } else {
                out.push_str(&format!(" + {body}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
