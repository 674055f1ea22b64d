//! Groebner bases via Buchberger's algorithm, multivariate division, quotient
//! staircases, and radical membership.
//!
//! `GroebnerBasis::compute` returns the unique reduced monic basis for the
//! given order, with elements sorted ascending by leading term, so equal
//! ideals always produce identical bases regardless of the input generators.

use std::collections::HashSet;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("no power of {var} with exponent at most {bound} lies in the ideal")]
    PowerNotFound { var: String, bound: u32 },
    #[error("the quotient algebra is infinite-dimensional; supply an explicit search bound")]
    NoFiniteBound,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Multivariate division of `p` by `divisors` under `order`.
///
/// Returns `(quotients, remainder)` with
/// `p = sum(quotients[i] * divisors[i]) + remainder` and no monomial of the
/// remainder divisible by any divisor's leading monomial. Divisors must be
/// nonzero and share `p`'s context.
pub fn divide(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial), PolyError> {
    for d in divisors {
        if !p.same_context(d) {
            return Err(PolyError::MixedContext);
        }
        if d.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
    }
    let leads: Vec<(Monomial, crate::field::Scalar)> = divisors
        .iter()
        .map(|d| {
            let (m, c) = d.leading_term(order).unwrap();
            (m.clone(), c.clone())
        })
        .collect();
    let mut quotients = vec![Polynomial::zero(p.field(), p.vars()); divisors.len()];
    let mut remainder = Polynomial::zero(p.field(), p.vars());
    let mut h = p.clone();
    while !h.is_zero() {
        let (hm, hc) = {
            let (m, c) = h.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if let Some(t) = lm.div_into(&hm) {
                let c = hc.div(lc).expect("leading coefficients are nonzero");
                quotients[i] = quotients[i].add(&Polynomial::from_terms(
                    p.field(),
                    p.vars(),
                    [(t.clone(), c.clone())],
                ));
                h = h.sub(&divisors[i].mul_term(&t, &c)?);
                reduced = true;
                break;
            }
        }
        if !reduced {
            let single = Polynomial::from_terms(p.field(), p.vars(), [(hm.clone(), hc.clone())]);
            remainder = remainder.add(&single);
            h = h.sub(&single);
        }
    }
    Ok((quotients, remainder))
}

/// A reduced monic Groebner basis for a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    vars: VarSet,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Buchberger with the product and chain criteria and smallest-lcm pair
    /// selection, followed by minimization and inter-reduction.
    pub fn compute(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, PolyError> {
        let first = gens.first().ok_or(PolyError::ZeroPolynomial)?;
        for g in gens {
            if !first.same_context(g) {
                return Err(PolyError::MixedContext);
            }
        }
        let field = first.field();
        let vars = first.vars().clone();

        let mut basis: Vec<Polynomial> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.normalized_generator(order))
            .collect();

        if basis.iter().any(|g| g.total_degree() == Some(0)) {
            return Ok(GroebnerBasis {
                field,
                vars: vars.clone(),
                order,
                polys: vec![Polynomial::one(field, &vars)],
            });
        }

        let lt = |g: &Polynomial, order: MonomialOrder| -> Monomial {
            g.leading_term(order).unwrap().0.clone()
        };

        let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
        for i in 0..basis.len() {
            for j in 0..i {
                pairs.push((j, i, lt(&basis[j], order).lcm(&lt(&basis[i], order))));
            }
        }
        let mut handled: HashSet<(usize, usize)> = HashSet::new();

        'outer: while !pairs.is_empty() {
            // normal strategy: smallest lcm first, ties broken by index pair
            let mut best = 0;
            for k in 1..pairs.len() {
                let c = order.cmp_monomials(&pairs[k].2, &pairs[best].2);
                if c == std::cmp::Ordering::Less
                    || (c == std::cmp::Ordering::Equal
                        && (pairs[k].0, pairs[k].1) < (pairs[best].0, pairs[best].1))
                {
                    best = k;
                }
            }
            let (i, j, lcm_ij) = pairs.swap_remove(best);

            let li = lt(&basis[i], order);
            let lj = lt(&basis[j], order);

            // product criterion: coprime leading monomials
            if li.try_mul(&lj)? == lcm_ij {
                handled.insert((i, j));
                continue;
            }
            // chain criterion, restricted to pairs finished in earlier
            // iterations so discards can never justify each other cyclically
            for k in 0..basis.len() {
                if k == i || k == j {
                    continue;
                }
                let key_ik = (i.min(k), i.max(k));
                let key_jk = (j.min(k), j.max(k));
                if handled.contains(&key_ik)
                    && handled.contains(&key_jk)
                    && lt(&basis[k], order).divides(&lcm_ij)
                {
                    handled.insert((i, j));
                    continue 'outer;
                }
            }

            let spoly = s_polynomial(&basis[i], &basis[j], &lcm_ij, order)?;
            let (_, r) = divide(&spoly, &basis, order)?;
            handled.insert((i, j));
            if r.is_zero() {
                continue;
            }
            let r = r.normalized_generator(order);
            if r.total_degree() == Some(0) {
                return Ok(GroebnerBasis {
                    field,
                    vars: vars.clone(),
                    order,
                    polys: vec![Polynomial::one(field, &vars)],
                });
            }
            let m = basis.len();
            let r_lt = lt(&r, order);
            for t in 0..m {
                pairs.push((t, m, lt(&basis[t], order).lcm(&r_lt)));
            }
            basis.push(r);
        }

        Ok(GroebnerBasis::reduce_parts(field, vars, order, basis))
    }

    /// Minimizes and inter-reduces a basis already known to generate the
    /// ideal and satisfy the Buchberger criterion.
    pub(crate) fn reduce_parts(
        field: Field,
        vars: VarSet,
        order: MonomialOrder,
        basis: Vec<Polynomial>,
    ) -> GroebnerBasis {
        if basis.is_empty() {
            return GroebnerBasis { field, vars, order, polys: Vec::new() };
        }
        let lts: Vec<Monomial> = basis
            .iter()
            .map(|g| g.leading_term(order).unwrap().0.clone())
            .collect();
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j || !keep[j] {
                    continue;
                }
                if lts[j].divides(&lts[i]) && (lts[j] != lts[i] || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let minimal: Vec<Polynomial> = basis
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect();

        // With pairwise-indivisible leading terms, a single pass of tail
        // reduction against the fixed leading-term set yields the reduced
        // basis.
        let mut reduced = minimal.clone();
        for i in 0..reduced.len() {
            let others: Vec<Polynomial> = reduced
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let (_, r) = divide(&reduced[i], &others, order).unwrap();
            debug_assert!(!r.is_zero());
            reduced[i] = r.make_monic(order);
        }
        reduced.sort_by(|a, b| {
            order.cmp_monomials(
                a.leading_term(order).unwrap().0,
                b.leading_term(order).unwrap().0,
            )
        });
        GroebnerBasis { field, vars, order, polys: reduced }
    }

    /// Wraps parts that are already a reduced monic basis in ascending order.
    pub(crate) fn from_reduced_parts(
        field: Field,
        vars: VarSet,
        order: MonomialOrder,
        polys: Vec<Polynomial>,
    ) -> GroebnerBasis {
        GroebnerBasis { field, vars, order, polys }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|g| g.leading_term(self.order).unwrap().0.clone())
            .collect()
    }

    /// The canonical representative of `p` modulo the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if p.field() != self.field || p.vars() != &self.vars {
            return Err(PolyError::MixedContext);
        }
        Ok(divide(p, &self.polys, self.order)?.1)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether the ideal is the unit ideal (reduced basis `{1}`).
    pub fn contains_one(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].total_degree() == Some(0)
    }
}

fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    lcm: &Monomial,
    order: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let tf = fm.div_into(lcm).expect("lcm is divisible by both leading monomials");
    let tg = gm.div_into(lcm).expect("lcm is divisible by both leading monomials");
    let cf = fc.inv().unwrap();
    let cg = gc.inv().unwrap();
    Ok(f.mul_term(&tf, &cf)?.sub(&g.mul_term(&tg, &cg)?))
}

/// The monomial basis of the quotient algebra: all monomials outside the
/// leading-term ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Staircase {
    /// Sorted by total degree, then descending under the basis order within a
    /// degree (so `{1, x, y, y^2}` rather than `{1, y, x, y^2}`).
    Finite(Vec<Monomial>),
    Infinite,
}

impl Staircase {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Staircase::Finite(v) => Some(v.len()),
            Staircase::Infinite => None,
        }
    }
}

/// Computes the staircase of `gb`'s quotient algebra. Finite exactly when
/// every variable has a pure power among the leading monomials.
pub fn quotient_staircase(gb: &GroebnerBasis) -> Staircase {
    let n = gb.vars().len();
    if gb.contains_one() {
        return Staircase::Finite(Vec::new());
    }
    let lts = gb.leading_monomials();
    let mut bounds = vec![None::<u32>; n];
    for m in &lts {
        let nz: Vec<usize> = (0..n).filter(|&i| m.exponent(i) > 0).collect();
        if let [i] = nz[..] {
            let e = m.exponent(i);
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    let Some(bounds) = bounds.into_iter().collect::<Option<Vec<u32>>>() else {
        return Staircase::Infinite;
    };
    let mut cell = vec![0u32; n];
    let mut basis = Vec::new();
    loop {
        let m = Monomial::from_exponents(cell.clone());
        if !lts.iter().any(|l| l.divides(&m)) {
            basis.push(m);
        }
        // odometer over the box [0, bounds)
        let mut i = 0;
        loop {
            if i == n {
                let order = gb.order();
                basis.sort_by(|a, b| {
                    a.total_degree()
                        .cmp(&b.total_degree())
                        .then_with(|| order.cmp_monomials(b, a))
                });
                return Staircase::Finite(basis);
            }
            cell[i] += 1;
            if cell[i] < bounds[i] {
                break;
            }
            cell[i] = 0;
            i += 1;
        }
    }
}

/// Decides whether `g` lies in the radical of the ideal spanned by `gens`:
/// adjoin a fresh variable `t` and test whether `1 - t*g` together with the
/// generators span the unit ideal. Uses degrevlex internally regardless of
/// any caller-facing order.
pub fn radical_membership(gens: &[Polynomial], g: &Polynomial) -> Result<bool, PolyError> {
    let first = gens.first().ok_or(PolyError::ZeroPolynomial)?;
    if !first.same_context(g) {
        return Err(PolyError::MixedContext);
    }
    let vars = g.vars();
    let (ext, t_idx) = vars.with_fresh("t");
    let ident: Vec<usize> = (0..vars.len()).collect();
    let mut ext_gens = Vec::with_capacity(gens.len() + 1);
    for f in gens {
        ext_gens.push(f.map_vars(&ext, &ident)?);
    }
    let t = Polynomial::var(g.field(), &ext, t_idx).unwrap();
    let g_ext = g.map_vars(&ext, &ident)?;
    ext_gens.push(Polynomial::one(g.field(), &ext).sub(&t.mul(&g_ext)));
    let gb = GroebnerBasis::compute(&ext_gens, MonomialOrder::DegRevLex)?;
    Ok(gb.contains_one())
}

/// The least `d` with `x_var^d` in the ideal, searching `0..=bound`.
/// With no explicit bound the quotient dimension is used, which is a valid
/// bound whenever such a `d` exists at all.
pub fn minimal_power_in_ideal(
    gb: &GroebnerBasis,
    var: usize,
    bound: Option<u32>,
) -> Result<u32, GroebnerError> {
    let n = gb.vars().len();
    if var >= n {
        return Err(GroebnerError::IndexOutOfRange { index: var, n });
    }
    let bound = match bound {
        Some(b) => b,
        None => match quotient_staircase(gb) {
            Staircase::Finite(basis) => basis.len() as u32,
            Staircase::Infinite => return Err(GroebnerError::NoFiniteBound),
        },
    };
    let x = Polynomial::var(gb.field(), gb.vars(), var).unwrap();
    for d in 0..=bound {
        let p = x.try_pow(d).map_err(GroebnerError::Poly)?;
        if gb.reduces_to_zero(&p).map_err(GroebnerError::Poly)? {
            return Ok(d);
        }
    }
    Err(GroebnerError::PowerNotFound { var: gb.vars().name(var).to_string(), bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn setup(names: &[&str]) -> (Field, VarSet) {
        (Field::rationals(), VarSet::new(names.iter().copied()).unwrap())
    }

    fn polys(srcs: &[&str], field: Field, vars: &VarSet) -> Vec<Polynomial> {
        srcs.iter().map(|s| parse_poly(s, field, vars).unwrap()).collect()
    }

    #[test]
    fn reference_basis_in_two_variables() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2 - y^2", "x*y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        let expect = polys(&["x*y", "x^2 - y^2", "y^3"], q, &vars);
        assert_eq!(gb.polys(), &expect[..]);
        assert!(!gb.contains_one());
    }

    #[test]
    fn normal_forms_against_reference_basis() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2 - y^2", "x*y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        let nf = |s: &str| gb.normal_form(&parse_poly(s, q, &vars).unwrap()).unwrap();
        assert!(nf("x^3").is_zero());
        assert_eq!(nf("y^2"), parse_poly("y^2", q, &vars).unwrap());
        assert_eq!(nf("x^2"), parse_poly("y^2", q, &vars).unwrap());
        assert_eq!(nf("x^2 + x*y + 3"), parse_poly("y^2 + 3", q, &vars).unwrap());
    }

    #[test]
    fn staircase_of_reference_basis() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2 - y^2", "x*y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        let st = quotient_staircase(&gb);
        let expect = vec![
            Monomial::from_exponents(vec![0, 0]),
            Monomial::from_exponents(vec![1, 0]),
            Monomial::from_exponents(vec![0, 1]),
            Monomial::from_exponents(vec![0, 2]),
        ];
        assert_eq!(st, Staircase::Finite(expect));
        assert_eq!(st.dimension(), Some(4));
    }

    #[test]
    fn minimal_powers_of_reference_basis() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2 - y^2", "x*y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(minimal_power_in_ideal(&gb, 0, None), Ok(3));
        assert_eq!(minimal_power_in_ideal(&gb, 1, None), Ok(3));
        assert!(matches!(
            minimal_power_in_ideal(&gb, 2, None),
            Err(GroebnerError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x", "1 - x"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        assert!(gb.contains_one());
        assert_eq!(gb.polys(), &polys(&["1"], q, &vars)[..]);
        assert_eq!(quotient_staircase(&gb).dimension(), Some(0));
        assert_eq!(minimal_power_in_ideal(&gb, 0, None), Ok(0));
    }

    #[test]
    fn basis_already_groebner_is_only_reduced() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x - y^2", "y^3 - 1"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::Lex).unwrap();
        assert_eq!(gb.polys(), &polys(&["y^3 - 1", "x - y^2"], q, &vars)[..]);
    }

    #[test]
    fn infinite_staircase_detected() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2", "x*y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(quotient_staircase(&gb), Staircase::Infinite);
        assert_eq!(
            minimal_power_in_ideal(&gb, 1, None),
            Err(GroebnerError::NoFiniteBound)
        );
        assert_eq!(
            minimal_power_in_ideal(&gb, 1, Some(5)),
            Err(GroebnerError::PowerNotFound { var: "y".to_string(), bound: 5 })
        );
    }

    #[test]
    fn radical_membership_examples() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2", "x*y"], q, &vars);
        let x = parse_poly("x", q, &vars).unwrap();
        let y = parse_poly("y", q, &vars).unwrap();
        assert_eq!(radical_membership(&gens, &x), Ok(true));
        assert_eq!(radical_membership(&gens, &y), Ok(false));

        let gens2 = polys(&["x^2 - y^2", "x*y"], q, &vars);
        assert_eq!(radical_membership(&gens2, &x), Ok(true));
        assert_eq!(radical_membership(&gens2, &y), Ok(true));
    }

    #[test]
    fn radical_membership_fresh_variable_avoids_capture() {
        let q = Field::rationals();
        let vars = VarSet::new(["t", "u"]).unwrap();
        let gens = polys(&["t^2", "t*u"], q, &vars);
        let t = parse_poly("t", q, &vars).unwrap();
        let u = parse_poly("u", q, &vars).unwrap();
        assert_eq!(radical_membership(&gens, &t), Ok(true));
        assert_eq!(radical_membership(&gens, &u), Ok(false));
    }

    #[test]
    fn division_identity_holds() {
        let (q, vars) = setup(&["x", "y"]);
        let p = parse_poly("x^3*y + x*y^2 + y + 1", q, &vars).unwrap();
        let ds = polys(&["x*y - 1", "y^2 - 1"], q, &vars);
        let (qs, r) = divide(&p, &ds, MonomialOrder::Lex).unwrap();
        let mut acc = r.clone();
        for (qi, di) in qs.iter().zip(&ds) {
            acc = acc.add(&qi.mul(di));
        }
        assert_eq!(acc, p);
        // remainder is irreducible
        for (m, _) in r.terms() {
            for d in &ds {
                assert!(!d.leading_term(MonomialOrder::Lex).unwrap().0.divides(m));
            }
        }
    }

    #[test]
    fn two_point_intersection_has_dimension_two() {
        let (q, vars) = setup(&["x", "y"]);
        let gens = polys(&["x^2 + y^2 - 1", "x - y"], q, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(quotient_staircase(&gb).dimension(), Some(2));
    }

    #[test]
    fn basis_is_canonical_under_generator_presentation() {
        let (q, vars) = setup(&["x", "y"]);
        let a = polys(&["x^2 - y^2", "x*y"], q, &vars);
        let b = polys(&["x*y", "3*x^2 - 3*y^2 + 7*x*y"], q, &vars);
        for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let ga = GroebnerBasis::compute(&a, order).unwrap();
            let gc = GroebnerBasis::compute(&b, order).unwrap();
            assert_eq!(ga.polys(), gc.polys());
        }
    }

    #[test]
    fn works_over_prime_fields() {
        let f5 = Field::odd_prime(5).unwrap();
        let vars = VarSet::new(["x", "y"]).unwrap();
        let gens = polys(&["x^2 - y^2", "x*y"], f5, &vars);
        let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.polys(), &polys(&["x*y", "x^2 - y^2", "y^3"], f5, &vars)[..]);
        assert_eq!(quotient_staircase(&gb).dimension(), Some(4));
    }

    fn arb_system() -> impl Strategy<Value = Vec<Polynomial>> {
        let coeff = -4i64..=4;
        let expo = proptest::collection::vec(0u32..3, 2);
        let poly = proptest::collection::vec((expo, coeff), 1..4);
        proptest::collection::vec(poly, 1..4).prop_map(|ps| {
            let q = Field::rationals();
            let vars = VarSet::new(["x", "y"]).unwrap();
            ps.into_iter()
                .map(|terms| {
                    Polynomial::from_terms(
                        q,
                        &vars,
                        terms
                            .into_iter()
                            .map(|(e, c)| (Monomial::from_exponents(e), q.from_int(c))),
                    )
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Buchberger postcondition: every S-polynomial reduces to zero.
        #[test]
        fn all_s_polynomials_reduce_to_zero(gens in arb_system()) {
            if gens.iter().all(|g| g.is_zero()) {
                return Ok(());
            }
            let order = MonomialOrder::DegRevLex;
            let gb = GroebnerBasis::compute(&gens, order).unwrap();
            let b = gb.polys();
            for i in 0..b.len() {
                for j in 0..i {
                    let lcm = b[i].leading_term(order).unwrap().0
                        .lcm(b[j].leading_term(order).unwrap().0);
                    let s = s_polynomial(&b[i], &b[j], &lcm, order).unwrap();
                    prop_assert!(gb.reduces_to_zero(&s).unwrap());
                }
            }
            // generators reduce to zero and basis elements lie in the ideal
            for g in &gens {
                prop_assert!(gb.reduces_to_zero(g).unwrap());
            }
        }

        #[test]
        fn normal_form_is_linear_and_idempotent(gens in arb_system(),
                                                a in -5i64..5, b in -5i64..5) {
            if gens.iter().all(|g| g.is_zero()) {
                return Ok(());
            }
            let q = Field::rationals();
            let vars = VarSet::new(["x", "y"]).unwrap();
            let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
            let p = parse_poly("x^2*y + x", q, &vars).unwrap().scale(&q.from_int(a));
            let r = parse_poly("y^2 - x", q, &vars).unwrap().scale(&q.from_int(b));
            let nf = |p: &Polynomial| gb.normal_form(p).unwrap();
            prop_assert_eq!(nf(&p.add(&r)), nf(&p).add(&nf(&r)));
            prop_assert_eq!(nf(&nf(&p)), nf(&p));
            prop_assert!(gb.reduces_to_zero(&p.sub(&nf(&p))).unwrap());
        }

        // agreement of the two membership routes when the quotient is finite
        #[test]
        fn radical_membership_agrees_with_power_search(gens in arb_system()) {
            if gens.iter().all(|g| g.is_zero()) {
                return Ok(());
            }
            let gb = GroebnerBasis::compute(&gens, MonomialOrder::DegRevLex).unwrap();
            if let Staircase::Finite(_) = quotient_staircase(&gb) {
                for v in 0..2 {
                    let x = Polynomial::var(Field::rationals(), gb.vars(), v).unwrap();
                    let by_radical = radical_membership(&gens, &x).unwrap();
                    let by_power = minimal_power_in_ideal(&gb, v, None).is_ok();
                    prop_assert_eq!(by_radical, by_power);
                }
            }
        }
    }
}
