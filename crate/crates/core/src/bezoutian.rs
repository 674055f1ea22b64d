//! The local degree as an explicit bilinear form: divided-difference matrix,
//! its determinant reduced in the doubled variable ring, and the resulting
//! Gram matrix over the staircase basis of the local algebra.
//!
//! For f = (f_1, ..., f_n) with an isolated zero at the origin, the entry
//! Δ_ij is the j-th divided difference of f_i in doubled variables
//! (X_1, ..., X_n, Y_1, ..., Y_n):
//!
//!   Δ_ij * (X_j - Y_j) = f_i(Y_1..Y_{j-1}, X_j..X_n) - f_i(Y_1..Y_j, X_{j+1}..X_n)
//!
//! so each row telescopes to f_i(X) - f_i(Y). The determinant of Δ reduced
//! modulo ⟨f(X)⟩ + ⟨f(Y)⟩ is supported on staircase(X) ⊗ staircase(Y), and
//! its coefficient array is the Gram matrix of the local degree form.

use thiserror::Error;

use crate::endo::{AlgebraError, LocalAlgebra, ValidatedEndo};
use crate::field::{Field, Scalar};
use crate::groebner::GroebnerBasis;
use crate::poly::{Monomial, PolyError, Polynomial, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EklError {
    #[error("a divided difference failed to divide exactly at row {row}, column {col}; engine bug")]
    InternalDivisionFailure { row: usize, col: usize },
    #[error("the Gram matrix is singular (rank {rank} < dimension {dim}); engine bug or invalid input")]
    DegenerateForm { rank: usize, dim: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The doubled variable context: each base variable v contributes v_X and
/// v_Y, with the whole X block preceding the Y block. Restricted to either
/// block, both supported monomial orders agree with the base order, so base
/// Groebner bases embed into either block unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledVars {
    base: VarSet,
    ext: VarSet,
    n: usize,
}

impl DoubledVars {
    pub fn new(base: &VarSet) -> DoubledVars {
        let n = base.len();
        let names: Vec<String> = base
            .names()
            .iter()
            .map(|v| format!("{v}_X"))
            .chain(base.names().iter().map(|v| format!("{v}_Y")))
            .collect();
        let ext = VarSet::new(names).expect("suffixed names stay distinct identifiers");
        DoubledVars { base: base.clone(), ext, n }
    }

    pub fn base(&self) -> &VarSet {
        &self.base
    }

    pub fn ext(&self) -> &VarSet {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_index(&self, i: usize) -> usize {
        i
    }

    pub fn y_index(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn embed_x(&self, p: &Polynomial) -> Polynomial {
        let idx: Vec<usize> = (0..self.n).collect();
        p.map_vars(&self.ext, &idx).expect("embedding cannot overflow")
    }

    pub fn embed_y(&self, p: &Polynomial) -> Polynomial {
        let idx: Vec<usize> = (self.n..2 * self.n).collect();
        p.map_vars(&self.ext, &idx).expect("embedding cannot overflow")
    }

    /// Sends the first `j` variables to the Y block and the rest to the X
    /// block.
    fn prefix_substitution(&self, p: &Polynomial, j: usize) -> Polynomial {
        let idx: Vec<usize> = (0..self.n)
            .map(|k| if k < j { self.y_index(k) } else { self.x_index(k) })
            .collect();
        p.map_vars(&self.ext, &idx).expect("substitution cannot overflow")
    }

    /// Evaluates both blocks on the base diagonal: v_X, v_Y ↦ v.
    pub fn collapse(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        let idx: Vec<usize> = (0..self.n).chain(0..self.n).collect();
        p.map_vars(&self.base, &idx)
    }

    /// Splits a doubled monomial into its (X block, Y block) parts as base
    /// monomials.
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let e = m.exponents();
        (
            Monomial::from_exponents(e[..self.n].to_vec()),
            Monomial::from_exponents(e[self.n..].to_vec()),
        )
    }
}

/// Reduced basis of ⟨f(X)⟩ + ⟨f(Y)⟩ in the doubled ring, assembled from the
/// base reduced basis embedded into each block. The union is already reduced:
/// leading terms across blocks are coprime (the cross S-polynomials vanish by
/// the product criterion) and each block inherits reducedness from the base.
pub fn doubled_groebner(v: &ValidatedEndo, dv: &DoubledVars) -> GroebnerBasis {
    let order = v.order();
    let mut polys: Vec<Polynomial> = v
        .gb()
        .polys()
        .iter()
        .map(|g| dv.embed_x(g))
        .chain(v.gb().polys().iter().map(|g| dv.embed_y(g)))
        .collect();
    polys.sort_by(|a, b| {
        order.cmp_monomials(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    GroebnerBasis::from_reduced_parts(v.field(), dv.ext().clone(), order, polys)
}

/// The n×n divided-difference matrix of a validated isolated-zero map.
#[derive(Debug, Clone)]
pub struct BezoutianMatrix {
    dv: DoubledVars,
    entries: Vec<Vec<Polynomial>>,
    fx: Vec<Polynomial>,
    fy: Vec<Polynomial>,
}

impl BezoutianMatrix {
    pub fn doubled_vars(&self) -> &DoubledVars {
        &self.dv
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Checks the defining identity row by row: the divided differences of
    /// row i sum against (X_j - Y_j) to f_i(X) - f_i(Y).
    pub fn telescoping_identity_holds(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            let mut acc = Polynomial::zero(self.fx[i].field(), self.dv.ext());
            for j in 0..n {
                let xj = Polynomial::var(acc.field(), self.dv.ext(), self.dv.x_index(j)).unwrap();
                let yj = Polynomial::var(acc.field(), self.dv.ext(), self.dv.y_index(j)).unwrap();
                acc = acc.add(&self.entries[i][j].mul(&xj.sub(&yj)));
            }
            if acc != self.fx[i].sub(&self.fy[i]) {
                return false;
            }
        }
        true
    }
}

/// Builds the divided-difference matrix. Every entry divides exactly;
/// a nonzero remainder is an engine bug surfaced as
/// `InternalDivisionFailure`.
pub fn divided_difference_matrix(v: &ValidatedEndo) -> Result<BezoutianMatrix, EklError> {
    let dv = DoubledVars::new(v.vars());
    let n = dv.n();
    let order = v.order();
    let mut entries = Vec::with_capacity(n);
    for (i, f) in v.polys().iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let hi = dv.prefix_substitution(f, j);
            let lo = dv.prefix_substitution(f, j + 1);
            let numerator = hi.sub(&lo);
            let xj = Polynomial::var(v.field(), dv.ext(), dv.x_index(j)).unwrap();
            let yj = Polynomial::var(v.field(), dv.ext(), dv.y_index(j)).unwrap();
            let denom = xj.sub(&yj);
            let (mut quotients, rem) =
                crate::groebner::divide(&numerator, &[denom], order).map_err(EklError::Poly)?;
            if !rem.is_zero() {
                return Err(EklError::InternalDivisionFailure { row: i, col: j });
            }
            row.push(quotients.swap_remove(0));
        }
        entries.push(row);
    }
    let fx = v.polys().iter().map(|f| dv.embed_x(f)).collect();
    let fy = v.polys().iter().map(|f| dv.embed_y(f)).collect();
    Ok(BezoutianMatrix { dv, entries, fx, fy })
}

/// Determinant by cofactor expansion with a reduction after every
/// accumulation, keeping intermediates inside the finite-dimensional
/// quotient.
fn det_reduced(m: &[Vec<Polynomial>], gb: &GroebnerBasis) -> Result<Polynomial, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::one(gb.field(), gb.vars()));
    }
    if n == 1 {
        return gb.normal_form(&m[0][0]);
    }
    let mut acc = Polynomial::zero(gb.field(), gb.vars());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, p)| (c != j).then(|| p.clone()))
                    .collect()
            })
            .collect();
        let sub = det_reduced(&minor, gb)?;
        let term = gb.normal_form(&m[0][j].mul(&sub))?;
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    gb.normal_form(&acc)
}

/// det(Δ) reduced modulo ⟨f(X)⟩ + ⟨f(Y)⟩, supported on the product
/// staircase.
pub fn bezoutian(v: &ValidatedEndo) -> Result<(DoubledVars, Polynomial), EklError> {
    let matrix = divided_difference_matrix(v)?;
    let gb2 = doubled_groebner(v, &matrix.dv);
    let det = det_reduced(&matrix.entries, &gb2).map_err(EklError::Poly)?;
    Ok((matrix.dv, det))
}

/// The local degree form: Gram matrix of the reduced Bezoutian over the
/// staircase basis, together with the algebra it lives on.
#[derive(Debug, Clone)]
pub struct EklForm {
    algebra: LocalAlgebra,
    gram: Vec<Vec<Scalar>>,
}

impl EklForm {
    pub fn algebra(&self) -> &LocalAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn gram(&self) -> &Vec<Vec<Scalar>> {
        &self.gram
    }
}

/// Computes the local degree form of an isolated-zero map.
pub fn ekl_gram(v: &ValidatedEndo) -> Result<EklForm, EklError> {
    let algebra = v.local_algebra()?;
    let (dv, reduced) = bezoutian(v)?;
    let basis = algebra.basis();
    let dim = basis.len();
    let zero = v.field().zero();
    let mut gram = vec![vec![zero; dim]; dim];
    for (m, c) in reduced.terms() {
        let (xm, ym) = dv.split(m);
        let row = basis
            .iter()
            .position(|b| *b == xm)
            .expect("reduced Bezoutian is supported on the product staircase");
        let col = basis
            .iter()
            .position(|b| *b == ym)
            .expect("reduced Bezoutian is supported on the product staircase");
        gram[row][col] = c.clone();
    }
    for i in 0..dim {
        for j in 0..i {
            debug_assert_eq!(gram[i][j], gram[j][i]);
        }
    }
    let rank = matrix_rank(&gram);
    if rank < dim {
        return Err(EklError::DegenerateForm { rank, dim });
    }
    Ok(EklForm { algebra, gram })
}

/// Exact rank by Gaussian elimination.
pub(crate) fn matrix_rank(m: &[Vec<Scalar>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let rows = a.len();
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].div(&a[rank][c]).unwrap();
            for k in c..cols {
                let s = a[rank][k].mul(&factor);
                a[r][k] = a[r][k].sub(&s);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Independent oracle: specializing the Bezoutian to the diagonal Y := X
/// must agree with the Jacobian determinant modulo ⟨f⟩, because each
/// diagonal divided difference is the corresponding partial derivative.
pub fn jacobian_consistency(v: &ValidatedEndo, e: &EklForm) -> Result<bool, EklError> {
    let n = v.vars().len();
    let mut jac: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for f in v.polys() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(f.partial_derivative(j).map_err(EklError::Poly)?);
        }
        jac.push(row);
    }
    let det_j = det_reduced(&jac, v.gb()).map_err(EklError::Poly)?;

    // rebuild the reduced Bezoutian from the Gram coefficients and collapse
    let basis = e.algebra().basis();
    let mut collapsed = Polynomial::zero(v.field(), v.vars());
    for (i, row) in e.gram().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = basis[i].try_mul(&basis[j]).map_err(EklError::Poly)?;
            collapsed = collapsed.add(&Polynomial::from_terms(
                v.field(),
                v.vars(),
                [(prod, c.clone())],
            ));
        }
    }
    let lhs = v.gb().normal_form(&collapsed).map_err(EklError::Poly)?;
    Ok(lhs == det_j)
}
