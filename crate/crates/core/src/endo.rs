//! Validation and classification of polynomial endomorphisms of punctured
//! affine space, and the finite local algebra at an isolated zero.
//!
//! A tuple f = (f_1, ..., f_n) in n variables defines such an endomorphism
//! exactly when its common vanishing locus over the algebraic closure is
//! contained in the origin, i.e. every variable lies in the radical of
//! ⟨f⟩. Valid maps come in two flavors: either the coordinates generate the
//! unit ideal (no zero at all, the map extends over the origin with a unit
//! coordinate) or the origin is the unique common zero and the quotient
//! algebra is finite-dimensional.

use thiserror::Error;

use crate::cite::{self, Citation};
use crate::field::{Field, Scalar};
use crate::groebner::{
    minimal_power_in_ideal, quotient_staircase, radical_membership, GroebnerBasis, GroebnerError,
    Staircase,
};
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndoError {
    #[error("expected exactly {expected} polynomials for {expected} variables, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("polynomials do not share a single field and variable set")]
    MixedContext,
    #[error(
        "not an endomorphism of punctured space: the map vanishes outside the origin \
         (variable {var_name:?} at index {var_index} is not in the radical of the \
         coordinate ideal)"
    )]
    NotPuncturedEndo { var_index: usize, var_name: String },
    #[error("the map has no zero, so there is no isolated-zero analysis to run")]
    NotUnimodular,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the coordinates generate the unit ideal; the local algebra is zero")]
    UnimodularInput,
    #[error("quotient algebra is infinite-dimensional after validation; engine bug")]
    InfiniteQuotient,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Coordinates generate the unit ideal: the map misses zero entirely.
    Unimodular,
    /// The origin is the unique common zero.
    IsolatedZero,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::Unimodular => write!(f, "unimodular"),
            Flavor::IsolatedZero => write!(f, "isolated-zero"),
        }
    }
}

/// An unvalidated candidate tuple: n polynomials in n variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoCandidate {
    field: Field,
    vars: VarSet,
    polys: Vec<Polynomial>,
}

impl EndoCandidate {
    pub fn new(polys: Vec<Polynomial>) -> Result<EndoCandidate, EndoError> {
        let first = polys.first().ok_or(EndoError::Shape { expected: 1, got: 0 })?;
        let field = first.field();
        let vars = first.vars().clone();
        for p in &polys {
            if !first.same_context(p) {
                return Err(EndoError::MixedContext);
            }
        }
        if polys.len() != vars.len() {
            return Err(EndoError::Shape { expected: vars.len(), got: polys.len() });
        }
        Ok(EndoCandidate { field, vars, polys })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Decides validity ideal-theoretically: every variable must lie in the
    /// radical of ⟨f⟩ (no common zero away from the origin, over the
    /// algebraic closure). Point enumeration is never used.
    pub fn validate(self, order: MonomialOrder) -> Result<ValidatedEndo, EndoError> {
        let gb = GroebnerBasis::compute(&self.polys, order)?;
        let mut radical_witnesses = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            let xi = Polynomial::var(self.field, &self.vars, i)?;
            let ok = radical_membership(&self.polys, &xi)?;
            if !ok {
                return Err(EndoError::NotPuncturedEndo {
                    var_index: i,
                    var_name: self.vars.name(i).to_string(),
                });
            }
            radical_witnesses.push(true);
        }
        let flavor = if gb.contains_one() { Flavor::Unimodular } else { Flavor::IsolatedZero };
        let single_variable_warning = self.vars.len() == 1;
        Ok(ValidatedEndo { candidate: self, flavor, gb, radical_witnesses, single_variable_warning })
    }
}

/// A validated endomorphism of punctured space together with the reduced
/// basis of its coordinate ideal.
#[derive(Debug, Clone)]
pub struct ValidatedEndo {
    candidate: EndoCandidate,
    flavor: Flavor,
    gb: GroebnerBasis,
    radical_witnesses: Vec<bool>,
    single_variable_warning: bool,
}

impl ValidatedEndo {
    pub fn field(&self) -> Field {
        self.candidate.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.candidate.vars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.candidate.polys
    }

    pub fn candidate(&self) -> &EndoCandidate {
        &self.candidate
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn order(&self) -> MonomialOrder {
        self.gb.order()
    }

    pub fn radical_witnesses(&self) -> &[bool] {
        &self.radical_witnesses
    }

    /// True when n = 1; accepted for hand-checkable fixtures, but the
    /// punctured space is then a multiplicative-group torsor rather than the
    /// n >= 2 regime the classification targets.
    pub fn single_variable_warning(&self) -> bool {
        self.single_variable_warning
    }

    /// Per-variable least exponents d_i with x_i^{d_i} in ⟨f⟩ (all zero for
    /// unimodular maps). Validity guarantees these exist, with d_i bounded by
    /// the quotient dimension.
    pub fn power_witnesses(&self) -> Result<Vec<u32>, GroebnerError> {
        (0..self.vars().len())
            .map(|i| minimal_power_in_ideal(&self.gb, i, None))
            .collect()
    }

    /// The finite quotient algebra at the isolated zero. Because the origin
    /// is the only common zero, the global quotient k[x]/⟨f⟩ already equals
    /// the local algebra at the origin; no localization is performed.
    pub fn local_algebra(&self) -> Result<LocalAlgebra, AlgebraError> {
        if self.flavor == Flavor::Unimodular {
            return Err(AlgebraError::UnimodularInput);
        }
        let basis = match quotient_staircase(&self.gb) {
            Staircase::Finite(b) => b,
            Staircase::Infinite => return Err(AlgebraError::InfiniteQuotient),
        };
        LocalAlgebra::build(self.gb.clone(), basis)
    }

    /// The structured verdict for a map with no zero: it extends over the
    /// origin and is naively homotopic to a constant, so its degree class is
    /// the trivial (empty) form.
    pub fn nullhomotopy_report(&self) -> Result<NullHomotopyReport, EndoError> {
        if self.flavor != Flavor::Unimodular {
            return Err(EndoError::NotUnimodular);
        }
        Ok(NullHomotopyReport {
            verdict: "naively null-homotopic",
            extends_over_origin: true,
            degree_rank: 0,
            citations: vec![cite::UNIMODULAR_NULL_HOMOTOPY],
        })
    }
}

/// Verdict for unimodular maps. Carries no explicit homotopy, only the
/// classification and its justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullHomotopyReport {
    pub verdict: &'static str,
    pub extends_over_origin: bool,
    /// Rank of the degree form: the empty form.
    pub degree_rank: usize,
    pub citations: Vec<Citation>,
}

/// The finite-dimensional quotient algebra k[x]/⟨f⟩ with its monomial basis
/// and full multiplication table in basis coordinates.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    /// mult[i][j][k] = coefficient of basis[k] in the reduction of
    /// basis[i] * basis[j].
    mult: Vec<Vec<Vec<Scalar>>>,
}

impl LocalAlgebra {
    fn build(gb: GroebnerBasis, basis: Vec<Monomial>) -> Result<LocalAlgebra, AlgebraError> {
        let dim = basis.len();
        let mut algebra = LocalAlgebra { gb, basis, mult: Vec::new() };
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..=i {
                let prod = Polynomial::from_terms(
                    algebra.gb.field(),
                    algebra.gb.vars(),
                    [(
                        algebra.basis[i]
                            .try_mul(&algebra.basis[j])
                            .map_err(AlgebraError::Poly)?,
                        algebra.gb.field().one(),
                    )],
                );
                let coords = algebra.coords(&prod).map_err(AlgebraError::Poly)?;
                mult[i][j] = coords.clone();
                mult[j][i] = coords;
            }
        }
        algebra.mult = mult;
        Ok(algebra)
    }

    pub fn field(&self) -> Field {
        self.gb.field()
    }

    pub fn vars(&self) -> &VarSet {
        self.gb.vars()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of p's residue class in the staircase basis. The normal
    /// form of any polynomial is supported on the staircase, so this is total.
    pub fn coords(&self, p: &Polynomial) -> Result<Vec<Scalar>, PolyError> {
        let nf = self.gb.normal_form(p)?;
        debug_assert!(nf.terms().all(|(m, _)| self.basis.contains(m)));
        Ok(self.basis.iter().map(|b| nf.coefficient(b)).collect())
    }

    /// Coordinates of basis[i] * basis[j].
    pub fn product_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    /// Multiplies two coordinate vectors in the algebra.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        assert_eq!(u.len(), dim);
        assert_eq!(v.len(), dim);
        let mut out = vec![self.field().zero(); dim];
        for i in 0..dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = u[i].mul(&v[j]);
                for k in 0..dim {
                    out[k] = out[k].add(&c.mul(&self.mult[i][j][k]));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn candidate(field: Field, names: &[&str], srcs: &[&str]) -> EndoCandidate {
        let vars = VarSet::new(names.iter().copied()).unwrap();
        let polys = srcs
            .iter()
            .map(|s| parse_poly(s, field, &vars).unwrap())
            .collect();
        EndoCandidate::new(polys).unwrap()
    }

    fn validated(srcs: &[&str]) -> ValidatedEndo {
        let names: Vec<&str> = ["x", "y", "z", "w"][..srcs.len()].to_vec();
        candidate(Field::rationals(), &names, srcs)
            .validate(MonomialOrder::DegRevLex)
            .unwrap()
    }

    #[test]
    fn unimodular_pair_is_valid() {
        let v = validated(&["x", "1 - x"]);
        assert_eq!(v.flavor(), Flavor::Unimodular);
        assert_eq!(v.radical_witnesses(), &[true, true]);
        assert_eq!(v.power_witnesses(), Ok(vec![0, 0]));
        assert!(!v.single_variable_warning());
    }

    #[test]
    fn homogeneous_quadratic_pair_is_isolated_zero() {
        let v = validated(&["x^2 - y^2", "x*y"]);
        assert_eq!(v.flavor(), Flavor::IsolatedZero);
        assert_eq!(v.power_witnesses(), Ok(vec![3, 3]));
    }

    #[test]
    fn map_vanishing_on_an_axis_is_rejected() {
        let vars = VarSet::new(["x", "y"]).unwrap();
        let q = Field::rationals();
        let polys = vec![
            parse_poly("x", q, &vars).unwrap(),
            parse_poly("x*y", q, &vars).unwrap(),
        ];
        let err = EndoCandidate::new(polys)
            .unwrap()
            .validate(MonomialOrder::DegRevLex)
            .unwrap_err();
        assert_eq!(
            err,
            EndoError::NotPuncturedEndo { var_index: 1, var_name: "y".to_string() }
        );
    }

    #[test]
    fn zero_map_is_rejected() {
        let vars = VarSet::new(["x", "y"]).unwrap();
        let q = Field::rationals();
        let zero = Polynomial::zero(q, &vars);
        let err = EndoCandidate::new(vec![zero.clone(), zero])
            .unwrap()
            .validate(MonomialOrder::DegRevLex)
            .unwrap_err();
        assert!(matches!(err, EndoError::NotPuncturedEndo { var_index: 0, .. }));
    }

    #[test]
    fn shape_and_context_checks() {
        let vars = VarSet::new(["x", "y", "z"]).unwrap();
        let q = Field::rationals();
        let polys = vec![
            parse_poly("x", q, &vars).unwrap(),
            parse_poly("y", q, &vars).unwrap(),
        ];
        assert_eq!(
            EndoCandidate::new(polys).unwrap_err(),
            EndoError::Shape { expected: 3, got: 2 }
        );

        let vars2 = VarSet::new(["x", "y"]).unwrap();
        let mixed = vec![
            parse_poly("x", q, &vars2).unwrap(),
            parse_poly("y", Field::odd_prime(7).unwrap(), &vars2).unwrap(),
        ];
        assert_eq!(EndoCandidate::new(mixed).unwrap_err(), EndoError::MixedContext);
    }

    #[test]
    fn identity_has_trivial_local_algebra() {
        let v = validated(&["x", "y"]);
        assert_eq!(v.flavor(), Flavor::IsolatedZero);
        let alg = v.local_algebra().unwrap();
        assert_eq!(alg.dim(), 1);
        assert_eq!(alg.basis(), &[Monomial::one(2)]);
    }

    #[test]
    fn squared_coordinate_gives_dimension_two() {
        let v = validated(&["x^2", "y"]);
        assert_eq!(v.flavor(), Flavor::IsolatedZero);
        let alg = v.local_algebra().unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(
            alg.basis(),
            &[Monomial::one(2), Monomial::from_exponents(vec![1, 0])]
        );
    }

    #[test]
    fn quadratic_pair_algebra_and_multiplication() {
        let v = validated(&["x^2 - y^2", "x*y"]);
        let alg = v.local_algebra().unwrap();
        assert_eq!(alg.dim(), 4);
        // basis {1, x, y, y^2}; x*x reduces to y^2
        assert_eq!(
            alg.basis(),
            &[
                Monomial::one(2),
                Monomial::from_exponents(vec![1, 0]),
                Monomial::from_exponents(vec![0, 1]),
                Monomial::from_exponents(vec![0, 2]),
            ]
        );
        let q = Field::rationals();
        assert_eq!(
            alg.product_coords(1, 1),
            &[q.zero(), q.zero(), q.zero(), q.one()]
        );
        // x*y reduces to 0
        assert_eq!(
            alg.product_coords(1, 2),
            &[q.zero(), q.zero(), q.zero(), q.zero()]
        );
    }

    #[test]
    fn multiplication_table_is_associative_and_commutative() {
        for srcs in [
            vec!["x^2 - y^2", "x*y"],
            vec!["x^3", "y"],
            vec!["x^2", "y^2"],
            vec!["x", "y", "z"],
        ] {
            let v = validated(&srcs);
            let alg = v.local_algebra().unwrap();
            let dim = alg.dim();
            let unit = |k: usize| {
                let mut e = vec![alg.field().zero(); dim];
                e[k] = alg.field().one();
                e
            };
            for i in 0..dim {
                for j in 0..dim {
                    assert_eq!(alg.product_coords(i, j), alg.product_coords(j, i));
                    for k in 0..dim {
                        let ij_k = alg.multiply(&alg.multiply(&unit(i), &unit(j)), &unit(k));
                        let i_jk = alg.multiply(&unit(i), &alg.multiply(&unit(j), &unit(k)));
                        assert_eq!(ij_k, i_jk);
                    }
                }
            }
        }
    }

    #[test]
    fn local_algebra_rejects_unimodular_input() {
        let v = validated(&["x", "1 - x"]);
        assert!(matches!(v.local_algebra(), Err(AlgebraError::UnimodularInput)));
    }

    #[test]
    fn nullhomotopy_report_for_unimodular_maps() {
        let v = validated(&["x", "1 - x"]);
        let report = v.nullhomotopy_report().unwrap();
        assert_eq!(report.verdict, "naively null-homotopic");
        assert!(report.extends_over_origin);
        assert_eq!(report.degree_rank, 0);
        assert_eq!(report.citations, vec![cite::UNIMODULAR_NULL_HOMOTOPY]);

        let w = validated(&["x^2", "y"]);
        assert_eq!(w.nullhomotopy_report().unwrap_err(), EndoError::NotUnimodular);

        let u = validated(&["1", "y"]);
        assert_eq!(u.flavor(), Flavor::Unimodular);
        assert!(u.nullhomotopy_report().is_ok());
    }

    #[test]
    fn single_variable_accepted_with_warning() {
        let vars = VarSet::new(["x"]).unwrap();
        let q = Field::rationals();
        let c = EndoCandidate::new(vec![parse_poly("x^2", q, &vars).unwrap()]).unwrap();
        let v = c.validate(MonomialOrder::DegRevLex).unwrap();
        assert!(v.single_variable_warning());
        assert_eq!(v.flavor(), Flavor::IsolatedZero);
        assert_eq!(v.local_algebra().unwrap().dim(), 2);
    }

    #[test]
    fn algebra_dimension_is_order_independent() {
        for srcs in [vec!["x^2 - y^2", "x*y"], vec!["x^3", "y^2"], vec!["x", "y", "z"]] {
            let names: Vec<&str> = ["x", "y", "z"][..srcs.len()].to_vec();
            let dims: Vec<usize> = [MonomialOrder::Lex, MonomialOrder::DegRevLex]
                .iter()
                .map(|&order| {
                    candidate(Field::rationals(), &names, &srcs)
                        .validate(order)
                        .unwrap()
                        .local_algebra()
                        .unwrap()
                        .dim()
                })
                .collect();
            assert_eq!(dims[0], dims[1]);
        }
    }

    #[test]
    fn works_over_prime_fields() {
        let v = candidate(Field::odd_prime(7).unwrap(), &["x", "y"], &["x^2 - y^2", "x*y"])
            .validate(MonomialOrder::DegRevLex)
            .unwrap();
        assert_eq!(v.flavor(), Flavor::IsolatedZero);
        assert_eq!(v.local_algebra().unwrap().dim(), 4);
    }

    /// Builds a random valid map by starting from a tuple that is valid by
    /// construction and applying ideal-preserving row operations
    /// f_i += g * f_j, which change the tuple but not ⟨f⟩.
    fn random_valid_map(rng: &mut ChaCha8Rng) -> (Vec<Polynomial>, Flavor) {
        let q = Field::rationals();
        let n = rng.gen_range(2..=3);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let vars = VarSet::new(names).unwrap();
        let unimodular = rng.gen_bool(0.4);
        let mut polys: Vec<Polynomial> = Vec::new();
        if unimodular {
            // (x_0, ..., x_{n-2}, 1 - x_0): empty vanishing locus
            for i in 0..n - 1 {
                polys.push(Polynomial::var(q, &vars, i).unwrap());
            }
            let x0 = Polynomial::var(q, &vars, 0).unwrap();
            polys.push(Polynomial::one(q, &vars).sub(&x0));
        } else {
            // triangular: f_i = x_i^{d_i} + h_i(x_{i+1}, ...), h_i(0) = 0
            for i in 0..n {
                let d = rng.gen_range(1..=2);
                let mut f = Polynomial::var(q, &vars, i).unwrap().try_pow(d).unwrap();
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        let c = q.from_int(rng.gen_range(-2..=2i64));
                        let xj = Polynomial::var(q, &vars, j).unwrap();
                        f = f.add(&xj.try_pow(rng.gen_range(1..=2)).unwrap().scale(&c));
                    }
                }
                polys.push(f);
            }
        }
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let g = match rng.gen_range(0..3) {
                0 => Polynomial::one(q, &vars),
                1 => Polynomial::var(q, &vars, rng.gen_range(0..n)).unwrap(),
                _ => Polynomial::constant(q.from_int(rng.gen_range(-3..=3i64)), &vars),
            };
            let shifted = polys[j].mul(&g);
            polys[i] = polys[i].add(&shifted);
        }
        (polys, if unimodular { Flavor::Unimodular } else { Flavor::IsolatedZero })
    }

    #[test]
    fn flavor_origin_duality_on_random_valid_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD0A1);
        let mut checked = 0;
        while checked < 100 {
            let (polys, expected_flavor) = random_valid_map(&mut rng);
            let some_nonzero_at_origin = polys.iter().any(|f| !f.eval_at_zero().is_zero());
            let v = EndoCandidate::new(polys)
                .unwrap()
                .validate(MonomialOrder::DegRevLex)
                .unwrap();
            assert_eq!(v.flavor(), expected_flavor);
            // flavor-origin duality
            assert_eq!(v.flavor() == Flavor::Unimodular, some_nonzero_at_origin);
            if v.flavor() == Flavor::IsolatedZero {
                let alg = v.local_algebra().unwrap();
                for (i, d) in v.power_witnesses().unwrap().into_iter().enumerate() {
                    assert!(d >= 1, "variable {i} power witness must be positive");
                    assert!(d as usize <= alg.dim() + 1);
                }
            }
            checked += 1;
        }
    }
}
