//! Classification of nondegenerate symmetric bilinear forms over Q and F_p.
//!
//! A form enters as a Gram matrix, is diagonalized by congruence, and is then
//! handled entirely through its classifying invariants: rank, signed
//! discriminant, and over Q the signature and the Hasse invariants at the
//! places in the entries' support. Those invariants decide isotropy, drive
//! the Witt decomposition into hyperbolic planes plus an anisotropic kernel,
//! and decide equality of Grothendieck-Witt classes. The obstruction report
//! at the end is the point of the whole pipeline: a rank >= 2 class with no
//! hyperbolic summand cannot arise as the local degree of a map with an
//! isolated zero.

pub mod hilbert;

pub use hilbert::{bad_places, hasse_invariant, hilbert_symbol, is_local_square, Place};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cite::{Citation, LOCAL_DEGREE_HYPERBOLIC_SUMMAND};
use crate::field::{addm, is_prime_u64, legendre_u64, mulm, Field, Scalar};
use crate::square::SquareClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate form: rank {rank} < dimension {dim}")]
    Degenerate { rank: usize, dim: usize },
    #[error("diagonal entry {index} is zero")]
    ZeroEntry { index: usize },
    #[error("forms over different fields: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("exhaustive isotropy search needs a prime field with p <= 97, got {0}")]
    FieldTooLarge(Field),
    #[error("exhaustive isotropy search supports rank <= 4, got {0}")]
    RankTooLarge(usize),
    #[error("cannot parse diagonal form: {0}")]
    Parse(String),
}

/// A symmetric Gram matrix over Q or F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymForm {
    field: Field,
    gram: Vec<Vec<Scalar>>,
}

impl SymForm {
    pub fn new(field: Field, gram: Vec<Vec<Scalar>>) -> Result<SymForm, GwError> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(GwError::NotSquare);
            }
            for e in row {
                if e.field() != field {
                    return Err(GwError::FieldMismatch { left: field, right: e.field() });
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(GwError::NotSymmetric);
                }
            }
        }
        Ok(SymForm { field, gram })
    }

    /// The Gram matrix of a local-degree form, ready for classification.
    pub fn from_ekl(form: &crate::bezoutian::EklForm) -> SymForm {
        SymForm::new(form.field(), form.gram().clone())
            .expect("local-degree Gram matrices are square and symmetric")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }
}

/// A diagonal form with nonzero entries; the empty form is allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalForm {
    field: Field,
    entries: Vec<Scalar>,
}

impl DiagonalForm {
    pub fn new(field: Field, entries: Vec<Scalar>) -> Result<DiagonalForm, GwError> {
        for (index, e) in entries.iter().enumerate() {
            if e.field() != field {
                return Err(GwError::FieldMismatch { left: field, right: e.field() });
            }
            if e.is_zero() {
                return Err(GwError::ZeroEntry { index });
            }
        }
        Ok(DiagonalForm { field, entries })
    }

    /// Integer-entry constructor; panics on a zero entry.
    pub fn from_ints(field: Field, entries: &[i64]) -> DiagonalForm {
        DiagonalForm::new(field, entries.iter().map(|&n| field.from_int(n)).collect()).unwrap()
    }

    /// Parses "1,-1", "<2,3/5>" or an angle-bracketed list; the empty list is
    /// the zero-rank form.
    pub fn parse(field: Field, text: &str) -> Result<DiagonalForm, GwError> {
        let t = text.trim();
        let t = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .or_else(|| t.strip_prefix('\u{27e8}').and_then(|s| s.strip_suffix('\u{27e9}')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return DiagonalForm::new(field, Vec::new());
        }
        let mut entries = Vec::new();
        for part in t.split(',') {
            let part = part.trim();
            let a = field
                .parse_scalar(part)
                .map_err(|e| GwError::Parse(format!("bad entry {part:?}: {e}")))?;
            entries.push(a);
        }
        DiagonalForm::new(field, entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// The same form with every entry replaced by its canonical square-class
    /// representative.
    pub fn reduced(&self) -> DiagonalForm {
        let entries = self
            .entries
            .iter()
            .map(|e| SquareClass::of(e).unwrap().representative())
            .collect();
        DiagonalForm { field: self.field, entries }
    }

    /// Orthogonal sum.
    pub fn orthogonal_sum(&self, other: &DiagonalForm) -> Result<DiagonalForm, GwError> {
        if self.field != other.field {
            return Err(GwError::FieldMismatch { left: self.field, right: other.field });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagonalForm { field: self.field, entries })
    }

    /// The orthogonal sum of `copies` hyperbolic planes <1,-1>.
    pub fn hyperbolic(field: Field, copies: usize) -> DiagonalForm {
        let mut entries = Vec::with_capacity(2 * copies);
        for _ in 0..copies {
            entries.push(field.one());
            entries.push(field.from_int(-1));
        }
        DiagonalForm { field, entries }
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">")
    }
}

/// Diagonalizes a symmetric matrix by congruence, deterministically: the
/// pivot is the first nonzero diagonal entry of the active block, and when
/// the active diagonal is zero the first nonzero off-diagonal entry (i,j) is
/// pulled onto the diagonal by e_i <- e_i + e_j (which lands 2*m[i][j] there;
/// this is the only step that needs characteristic != 2). Entries of the
/// result are square-class representatives.
pub fn diagonalize(form: &SymForm) -> Result<DiagonalForm, GwError> {
    let field = form.field;
    let n = form.dim();
    let mut m = form.gram.clone();
    let mut entries = Vec::with_capacity(n);
    for step in 0..n {
        let mut pivot_row = (step..n).find(|&k| !m[k][k].is_zero());
        if pivot_row.is_none() {
            let mut found = None;
            'scan: for i in step..n {
                for j in (i + 1)..n {
                    if !m[i][j].is_zero() {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match found {
                None => return Err(GwError::Degenerate { rank: step, dim: n }),
                Some((i, j)) => {
                    for c in 0..n {
                        let t = m[j][c].clone();
                        m[i][c] = m[i][c].add(&t);
                    }
                    for r in 0..n {
                        let t = m[r][j].clone();
                        m[r][i] = m[r][i].add(&t);
                    }
                    pivot_row = Some(i);
                }
            }
        }
        let k = pivot_row.unwrap();
        if k != step {
            m.swap(step, k);
            for row in m.iter_mut() {
                row.swap(step, k);
            }
        }
        let pivot = m[step][step].clone();
        for r in (step + 1)..n {
            if m[r][step].is_zero() {
                continue;
            }
            let f = m[r][step].div(&pivot).expect("pivot is nonzero");
            for c in 0..n {
                let t = f.mul(&m[step][c]);
                m[r][c] = m[r][c].sub(&t);
            }
            for c in 0..n {
                let t = f.mul(&m[c][step]);
                m[c][r] = m[c][r].sub(&t);
            }
        }
        entries.push(pivot);
    }
    let entries = entries
        .iter()
        .map(|e| SquareClass::of(e).unwrap().representative())
        .collect();
    Ok(DiagonalForm { field, entries })
}

/// The congruence invariants that drive every decision: rank, determinant
/// class, and over Q the signature and the Hasse invariants at a fixed place
/// set covering the entries' support. Profiles are also the state peeled by
/// the Witt loop, so they can describe virtual forms no entries are held for.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Profile {
    field: Field,
    rank: usize,
    det: SquareClass,
    signature: Option<i64>,
    hasse: Option<BTreeMap<Place, i32>>,
}

fn scalar_sign(a: &Scalar) -> i64 {
    use num_traits::Signed;
    if a.rational().unwrap().is_negative() {
        -1
    } else {
        1
    }
}

impl Profile {
    fn of_entries(field: Field, entries: &[Scalar], places: &BTreeSet<Place>) -> Profile {
        let rank = entries.len();
        let det = entries
            .iter()
            .fold(SquareClass::one(field), |acc, a| acc.mul(&SquareClass::of(a).unwrap()));
        match field {
            Field::Rationals => {
                let signature = entries.iter().map(scalar_sign).sum();
                let hasse = places.iter().map(|&v| (v, hasse_invariant(entries, v))).collect();
                Profile { field, rank, det, signature: Some(signature), hasse: Some(hasse) }
            }
            Field::Prime(_) => Profile { field, rank, det, signature: None, hasse: None },
        }
    }

    /// Hasse invariant at a place, +1 outside the stored set.
    fn hasse_at(&self, v: Place) -> i32 {
        self.hasse.as_ref().and_then(|m| m.get(&v).copied()).unwrap_or(1)
    }

    fn minus_det(&self) -> SquareClass {
        SquareClass::minus_one(self.field).mul(&self.det)
    }

    /// Whether every form with these invariants has a nontrivial zero.
    fn isotropic(&self, places: &BTreeSet<Place>) -> bool {
        if self.rank < 2 {
            return false;
        }
        match self.field {
            Field::Prime(_) => self.rank >= 3 || self.minus_det().is_one(),
            Field::Rationals => {
                if self.signature.unwrap().unsigned_abs() as usize == self.rank {
                    return false;
                }
                // Definiteness ruled out, only finite places can obstruct;
                // outside the support every local criterion holds trivially.
                places
                    .iter()
                    .filter(|&&v| v != Place::Infinity)
                    .all(|&v| self.locally_isotropic_finite(v))
            }
        }
    }

    fn locally_isotropic_finite(&self, v: Place) -> bool {
        let minus_one = self.field.from_int(-1);
        match self.rank {
            0 | 1 => false,
            2 => is_local_square(&self.minus_det().representative(), v),
            3 => {
                self.hasse_at(v)
                    == hilbert_symbol(&minus_one, &self.minus_det().representative(), v)
            }
            4 => {
                !is_local_square(&self.det.representative(), v)
                    || self.hasse_at(v) == hilbert_symbol(&minus_one, &minus_one, v)
            }
            _ => true,
        }
    }

    /// Splits off one hyperbolic plane: rank drops by two, the determinant
    /// picks up a factor -1, the signature is unchanged, and each Hasse
    /// invariant picks up (-1, d')_v for the new determinant d'.
    fn peel_hyperbolic(&mut self) {
        assert!(self.rank >= 2);
        let new_det = self.minus_det();
        if let Some(map) = &mut self.hasse {
            let minus_one = self.field.from_int(-1);
            let rep = new_det.representative();
            for (&v, e) in map.iter_mut() {
                *e *= hilbert_symbol(&minus_one, &rep, v);
            }
        }
        self.det = new_det;
        self.rank -= 2;
    }

    /// Invariants of this form extended by one diagonal entry c:
    /// det' = det * c, signature' = signature + sign(c), and each Hasse
    /// invariant picks up (det, c)_v (pairing the old determinant with c).
    fn extended(&self, c: &Scalar, places: &BTreeSet<Place>) -> Profile {
        let det = self.det.mul(&SquareClass::of(c).unwrap());
        let signature = self.signature.map(|s| s + scalar_sign(c));
        let hasse = self.hasse.as_ref().map(|_| {
            let det_rep = self.det.representative();
            places
                .iter()
                .map(|&v| (v, self.hasse_at(v) * hilbert_symbol(&det_rep, c, v)))
                .collect()
        });
        Profile { field: self.field, rank: self.rank + 1, det, signature, hasse }
    }

    /// Invariants of this form with one represented entry a split off:
    /// det_2 = det * a, signature_2 = signature - sign(a), and each Hasse
    /// invariant picks up (a, det_2)_v (pairing a with the new determinant).
    fn split_off(&self, a: &Scalar, places: &BTreeSet<Place>) -> Profile {
        assert!(self.rank >= 1);
        let det = self.det.mul(&SquareClass::of(a).unwrap());
        let signature = self.signature.map(|s| s - scalar_sign(a));
        let hasse = self.hasse.as_ref().map(|_| {
            let det_rep = det.representative();
            places
                .iter()
                .map(|&v| (v, self.hasse_at(v) * hilbert_symbol(a, &det_rep, v)))
                .collect()
        });
        Profile { field: self.field, rank: self.rank - 1, det, signature, hasse }
    }

    /// Whether every form with these invariants represents a: append <-a>
    /// and test the extension for isotropy.
    fn represents(&self, a: &Scalar, places: &BTreeSet<Place>) -> bool {
        let minus_a = a.neg();
        let mut ext_places = places.clone();
        ext_places.extend(bad_places(std::slice::from_ref(&minus_a)));
        let ext = self.extended(&minus_a, &ext_places);
        ext.isotropic(&ext_places)
    }
}

/// Deterministic candidate entries for realizing small anisotropic forms:
/// signed squarefree products of the bad primes, optionally times one
/// auxiliary prime outside the bad set, in order of magnitude. The auxiliary
/// primes are what make prescribed Hasse data at the bad places reachable.
fn candidate_pool(places: &BTreeSet<Place>) -> Vec<i64> {
    let bad: Vec<u64> = places
        .iter()
        .filter_map(|v| match v {
            Place::Prime(p) => Some(*p),
            Place::Infinity => None,
        })
        .collect();
    assert!(bad.len() <= 16, "place set unreasonably large for realization");
    let mut magnitudes: Vec<i64> = vec![1];
    for &p in &bad {
        let mut next = Vec::new();
        for &m in &magnitudes {
            if let Some(mp) = m.checked_mul(p as i64) {
                next.push(mp);
            }
        }
        magnitudes.extend(next);
    }
    let mut aux = Vec::new();
    let mut q = 3u64;
    while aux.len() < 200 {
        if is_prime_u64(q) && !bad.contains(&q) {
            aux.push(q as i64);
        }
        q += 2;
    }
    let mut values = Vec::new();
    for &m in &magnitudes {
        values.push(m);
        values.push(-m);
        for &p in &aux {
            if let Some(mp) = m.checked_mul(p) {
                values.push(mp);
                values.push(-mp);
            }
        }
    }
    values.sort_by_key(|&v| (v.abs(), v < 0));
    values.dedup();
    values
}

/// Builds a diagonal form with the given anisotropic invariants. Entries are
/// found by searching the candidate pool for represented values; ranks four
/// and up can always peel a sign-matching <1> or <-1> first because every
/// consistent sub-rank tuple of rank >= 3 is realizable.
fn realize(profile: &Profile, places: &BTreeSet<Place>) -> Vec<Scalar> {
    let field = profile.field;
    match field {
        Field::Prime(_) => match profile.rank {
            0 => Vec::new(),
            1 => vec![profile.det.representative()],
            2 => vec![field.one(), profile.det.representative()],
            _ => unreachable!("rank >= 3 over a finite field is isotropic"),
        },
        Field::Rationals => realize_rational(profile, places),
    }
}

fn realize_rational(profile: &Profile, places: &BTreeSet<Place>) -> Vec<Scalar> {
    let field = profile.field;
    match profile.rank {
        0 => Vec::new(),
        1 => vec![profile.det.representative()],
        2 => {
            for a in candidate_pool(places) {
                let a = field.from_int(a);
                if profile.represents(&a, places) {
                    let b = SquareClass::of(&a).unwrap().mul(&profile.det);
                    return vec![a, b.representative()];
                }
            }
            panic!("rank-2 realization pool exhausted: invariants are inconsistent");
        }
        3 => {
            for a in candidate_pool(places) {
                let a = field.from_int(a);
                if !profile.represents(&a, places) {
                    continue;
                }
                let mut sub_places = places.clone();
                sub_places.extend(bad_places(std::slice::from_ref(&a)));
                let sub = profile.split_off(&a, &sub_places);
                let mut entries = vec![a];
                entries.extend(realize_rational(&sub, &sub_places));
                return entries;
            }
            panic!("rank-3 realization pool exhausted: invariants are inconsistent");
        }
        r => {
            let sigma = profile.signature.unwrap();
            let a = field.from_int(if sigma >= 2 - (r as i64) { 1 } else { -1 });
            let sub = profile.split_off(&a, places);
            let mut entries = vec![a];
            entries.extend(realize_rational(&sub, places));
            entries
        }
    }
}

/// Checks a realization against the profile it was built for, over the
/// union of the profile's places and the realization's own support.
fn realization_matches(target: &Profile, entries: &[Scalar], places: &BTreeSet<Place>) -> bool {
    let mut check_places = places.clone();
    if target.field == Field::Rationals {
        check_places.extend(bad_places(entries));
    }
    let got = Profile::of_entries(target.field, entries, &check_places);
    if got.rank != target.rank || got.det != target.det || got.signature != target.signature {
        return false;
    }
    if target.field == Field::Rationals {
        return check_places.iter().all(|&v| got.hasse_at(v) == target.hasse_at(v));
    }
    true
}

/// The classifying invariants of a nondegenerate form together with its Witt
/// decomposition. Two forms over the same field are Grothendieck-Witt equal
/// iff these records agree (Hasse maps compared with default +1 off-support).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GwInvariants {
    pub field: Field,
    pub rank: usize,
    /// Signed discriminant: (-1)^(r(r-1)/2) times the determinant class, so
    /// hyperbolic forms have discriminant 1.
    pub disc: SquareClass,
    /// Over Q: number of positive entries minus number of negative ones.
    pub signature: Option<i64>,
    /// Over Q: Hasse invariants at infinity, 2 and the odd support primes.
    /// Every place outside the map has invariant +1.
    pub hasse: Option<BTreeMap<Place, i32>>,
    /// Number of hyperbolic planes split off by Witt decomposition.
    pub witt_index: usize,
    /// A small-entry diagonal realization of the anisotropic kernel.
    pub anisotropic: DiagonalForm,
}

fn discriminant(det: &SquareClass, rank: usize, field: Field) -> SquareClass {
    if matches!(rank % 4, 2 | 3) {
        SquareClass::minus_one(field).mul(det)
    } else {
        det.clone()
    }
}

impl GwInvariants {
    pub fn of(d: &DiagonalForm) -> GwInvariants {
        let field = d.field;
        let red = d.reduced();
        let places = match field {
            Field::Rationals => bad_places(&red.entries),
            Field::Prime(_) => BTreeSet::new(),
        };
        let profile = Profile::of_entries(field, &red.entries, &places);
        let disc = discriminant(&profile.det, profile.rank, field);
        let mut peeled = profile.clone();
        let mut witt_index = 0;
        while peeled.isotropic(&places) {
            peeled.peel_hyperbolic();
            witt_index += 1;
        }
        let aniso_entries = realize(&peeled, &places);
        assert!(
            realization_matches(&peeled, &aniso_entries, &places),
            "anisotropic realization does not reproduce its invariants"
        );
        let anisotropic = DiagonalForm { field, entries: aniso_entries };
        GwInvariants {
            field,
            rank: profile.rank,
            disc,
            signature: profile.signature,
            hasse: profile.hasse,
            witt_index,
            anisotropic,
        }
    }

    /// Whether two invariant records name the same Grothendieck-Witt class.
    pub fn same_class(&self, other: &GwInvariants) -> bool {
        if self.field != other.field
            || self.rank != other.rank
            || self.disc != other.disc
            || self.signature != other.signature
        {
            return false;
        }
        match (&self.hasse, &other.hasse) {
            (None, None) => true,
            (Some(m1), Some(m2)) => {
                let keys: BTreeSet<Place> = m1.keys().chain(m2.keys()).copied().collect();
                keys.iter()
                    .all(|v| m1.get(v).copied().unwrap_or(1) == m2.get(v).copied().unwrap_or(1))
            }
            _ => false,
        }
    }
}

/// Whether the form has a nontrivial zero over its own field.
pub fn isotropic(d: &DiagonalForm) -> bool {
    let red = d.reduced();
    let places = match d.field {
        Field::Rationals => bad_places(&red.entries),
        Field::Prime(_) => BTreeSet::new(),
    };
    Profile::of_entries(d.field, &red.entries, &places).isotropic(&places)
}

/// Witt index and anisotropic kernel: the form is the orthogonal sum of
/// `witt_index` hyperbolic planes and the (unique up to isometry) kernel.
pub fn witt_decompose(d: &DiagonalForm) -> (usize, DiagonalForm) {
    let inv = GwInvariants::of(d);
    (inv.witt_index, inv.anisotropic)
}

/// Whether two diagonal forms are equal in the Grothendieck-Witt group of
/// their common field.
pub fn gw_equal(d1: &DiagonalForm, d2: &DiagonalForm) -> Result<bool, GwError> {
    if d1.field != d2.field {
        return Err(GwError::FieldMismatch { left: d1.field, right: d2.field });
    }
    Ok(GwInvariants::of(d1).same_class(&GwInvariants::of(d2)))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NotObstructedReason {
    /// Rank 0 and 1 classes are realizable (empty products and scalings).
    RankAtMostOne,
    /// A hyperbolic summand is exactly what local degrees can always absorb.
    ContainsHyperbolic,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ObstructionVerdict {
    Obstructed,
    NotObstructed(NotObstructedReason),
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionVerdict::Obstructed => write!(f, "obstructed"),
            ObstructionVerdict::NotObstructed(NotObstructedReason::RankAtMostOne) => {
                write!(f, "not obstructed (rank at most one)")
            }
            ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic) => {
                write!(f, "not obstructed (contains a hyperbolic summand)")
            }
        }
    }
}

/// Certificate that a target class can or cannot appear as the local degree
/// of an endomorphism with an isolated zero at the origin.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub field: Field,
    pub rank: usize,
    pub witt_index: usize,
    /// Whether -1 is a square in the field. When it is, <1,1> is already
    /// hyperbolic, so a target that is obstructed over Q may be realizable
    /// here; the flag makes that field-sensitivity explicit.
    pub minus_one_is_square: bool,
    pub verdict: ObstructionVerdict,
    pub citation: Citation,
}

/// Decides whether the target class is obstructed: local degrees of rank at
/// least two always contain a hyperbolic summand, so a rank >= 2 class with
/// Witt index zero cannot occur as one.
pub fn ekl_obstruction(target: &DiagonalForm) -> ObstructionReport {
    let inv = GwInvariants::of(target);
    let verdict = if inv.rank <= 1 {
        ObstructionVerdict::NotObstructed(NotObstructedReason::RankAtMostOne)
    } else if inv.witt_index >= 1 {
        ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic)
    } else {
        ObstructionVerdict::Obstructed
    };
    let minus_one_is_square = match target.field {
        Field::Rationals => false,
        Field::Prime(p) => legendre_u64(p - 1, p) == 1,
    };
    ObstructionReport {
        field: target.field,
        rank: inv.rank,
        witt_index: inv.witt_index,
        minus_one_is_square,
        verdict,
        citation: LOCAL_DEGREE_HYPERBOLIC_SUMMAND,
    }
}

/// Exhaustively searches for a nontrivial zero over a small prime field by
/// projective enumeration. Independent of the invariant-based decision; used
/// to cross-check it.
pub fn brute_force_isotropic_fp(d: &DiagonalForm) -> Result<bool, GwError> {
    let p = match d.field {
        Field::Prime(p) if p <= 97 => p,
        other => return Err(GwError::FieldTooLarge(other)),
    };
    let r = d.rank();
    if r > 4 {
        return Err(GwError::RankTooLarge(r));
    }
    let coeffs: Vec<u64> = d.entries.iter().map(|e| e.residue().unwrap()).collect();
    // Normalize the first nonzero coordinate to 1.
    for lead in 0..r {
        let free = r - lead - 1;
        let mut idx = vec![0u64; free];
        loop {
            let mut acc = coeffs[lead];
            for (k, &x) in idx.iter().enumerate() {
                acc = addm(acc, mulm(coeffs[lead + 1 + k], mulm(x, x, p), p), p);
            }
            if acc == 0 {
                return Ok(true);
            }
            let mut k = 0;
            while k < free {
                idx[k] += 1;
                if idx[k] < p {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    Ok(false)
}

/// Tensor product of diagonal forms, entries a_i * b_j in index order.
/// Provided for multiplicativity checks of degree forms.
pub fn tensor_diag(d1: &DiagonalForm, d2: &DiagonalForm) -> Result<DiagonalForm, GwError> {
    if d1.field != d2.field {
        return Err(GwError::FieldMismatch { left: d1.field, right: d2.field });
    }
    let mut entries = Vec::with_capacity(d1.rank() * d2.rank());
    for a in &d1.entries {
        for b in &d2.entries {
            entries.push(a.mul(b));
        }
    }
    Ok(DiagonalForm { field: d1.field, entries })
}

#[cfg(test)]
mod tests;
