use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn q() -> Field {
    Field::rationals()
}

fn fp(p: u64) -> Field {
    Field::odd_prime(p).unwrap()
}

fn d(field: Field, entries: &[i64]) -> DiagonalForm {
    DiagonalForm::from_ints(field, entries)
}

fn sym(field: Field, rows: &[&[i64]]) -> SymForm {
    let gram = rows
        .iter()
        .map(|r| r.iter().map(|&n| field.from_int(n)).collect())
        .collect();
    SymForm::new(field, gram).unwrap()
}

fn ints(form: &DiagonalForm) -> Vec<i64> {
    use num_traits::ToPrimitive;
    form.entries()
        .iter()
        .map(|e| match e.field() {
            Field::Rationals => e.rational().unwrap().to_integer().to_i64().unwrap(),
            Field::Prime(_) => e.residue().unwrap() as i64,
        })
        .collect()
}

#[test]
fn diagonalize_diagonal_pivots() {
    let f = diagonalize(&sym(q(), &[&[1, 0], &[0, 1]])).unwrap();
    assert_eq!(ints(&f), vec![1, 1]);
    let f = diagonalize(&sym(q(), &[&[8, 0], &[0, -18]])).unwrap();
    assert_eq!(ints(&f), vec![2, -2]);
    let f = diagonalize(&sym(q(), &[&[5]])).unwrap();
    assert_eq!(ints(&f), vec![5]);
    let f = diagonalize(&SymForm::new(q(), Vec::new()).unwrap()).unwrap();
    assert_eq!(f.rank(), 0);
}

#[test]
fn diagonalize_hyperbolic_gram() {
    let f = diagonalize(&sym(q(), &[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(ints(&f), vec![2, -2]);
    // Over F_7 the pivot 2 is a square and -1/2 = 3 is the nonresidue class.
    let f = diagonalize(&sym(fp(7), &[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(ints(&f), vec![1, 3]);
}

#[test]
fn diagonalize_rejects_degenerate() {
    assert_eq!(
        diagonalize(&sym(q(), &[&[0, 0], &[0, 1]])),
        Err(GwError::Degenerate { rank: 1, dim: 2 })
    );
    assert_eq!(
        diagonalize(&sym(q(), &[&[0, 0], &[0, 0]])),
        Err(GwError::Degenerate { rank: 0, dim: 2 })
    );
    // Rank 1 but entangled: [[1,1],[1,1]].
    assert_eq!(
        diagonalize(&sym(q(), &[&[1, 1], &[1, 1]])),
        Err(GwError::Degenerate { rank: 1, dim: 2 })
    );
}

#[test]
fn diagonalize_quadratic_pair_gram() {
    // Gram matrix of the degree form of (x^2 - y^2, x*y) on basis 1, x, y, y^2.
    let g = sym(q(), &[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]]);
    let f = diagonalize(&g).unwrap();
    assert_eq!(ints(&f), vec![1, 1, 2, -2]);
    let inv = GwInvariants::of(&f);
    assert_eq!(inv.rank, 4);
    assert_eq!(inv.signature, Some(2));
    assert_eq!(inv.witt_index, 1);
    assert_eq!(ints(&inv.anisotropic), vec![1, 1]);
    assert_eq!(inv.disc, SquareClass::minus_one(q()));
}

#[test]
fn shape_errors() {
    let bad = vec![vec![q().one()], vec![q().one(), q().one()]];
    assert_eq!(SymForm::new(q(), bad), Err(GwError::NotSquare));
    let asym = vec![
        vec![q().one(), q().from_int(2)],
        vec![q().from_int(3), q().one()],
    ];
    assert_eq!(SymForm::new(q(), asym), Err(GwError::NotSymmetric));
    assert_eq!(
        DiagonalForm::new(q(), vec![q().one(), q().zero()]),
        Err(GwError::ZeroEntry { index: 1 })
    );
}

#[test]
fn invariants_of_sum_of_squares() {
    let inv = GwInvariants::of(&d(q(), &[1, 1]));
    assert_eq!(inv.rank, 2);
    assert_eq!(inv.signature, Some(2));
    assert_eq!(inv.disc, SquareClass::minus_one(q()));
    assert_eq!(inv.witt_index, 0);
    assert_eq!(ints(&inv.anisotropic), vec![1, 1]);
    let hasse = inv.hasse.unwrap();
    assert_eq!(hasse.get(&Place::Infinity), Some(&1));
    assert_eq!(hasse.get(&Place::Prime(2)), Some(&1));
}

#[test]
fn invariants_of_hyperbolic_plane() {
    let inv = GwInvariants::of(&d(q(), &[1, -1]));
    assert_eq!(inv.rank, 2);
    assert_eq!(inv.signature, Some(0));
    assert!(inv.disc.is_one());
    assert_eq!(inv.witt_index, 1);
    assert_eq!(inv.anisotropic.rank(), 0);
}

#[test]
fn invariants_are_class_invariants_not_entry_invariants() {
    // <8, -50> reduces to <2, -2>, a hyperbolic plane.
    let inv = GwInvariants::of(&d(q(), &[8, -50]));
    assert_eq!(inv.witt_index, 1);
    assert!(inv.disc.is_one());
    assert_eq!(inv.anisotropic.rank(), 0);
}

#[test]
fn invariants_over_prime_fields() {
    // -1 is a square mod 5, so <1,1> is hyperbolic there.
    let inv5 = GwInvariants::of(&d(fp(5), &[1, 1]));
    assert_eq!(inv5.rank, 2);
    assert_eq!(inv5.signature, None);
    assert_eq!(inv5.hasse, None);
    assert!(inv5.disc.is_one());
    assert_eq!(inv5.witt_index, 1);
    assert_eq!(inv5.anisotropic.rank(), 0);
    // -1 is not a square mod 3, so <1,1> stays anisotropic.
    let inv3 = GwInvariants::of(&d(fp(3), &[1, 1]));
    assert_eq!(inv3.witt_index, 0);
    assert_eq!(ints(&inv3.anisotropic), vec![1, 1]);
    assert_eq!(inv3.disc, SquareClass::minus_one(fp(3)));
}

#[test]
fn invariants_of_empty_form() {
    let inv = GwInvariants::of(&DiagonalForm::new(q(), Vec::new()).unwrap());
    assert_eq!(inv.rank, 0);
    assert!(inv.disc.is_one());
    assert_eq!(inv.signature, Some(0));
    assert_eq!(inv.witt_index, 0);
    assert_eq!(inv.anisotropic.rank(), 0);
}

#[test]
fn hasse_map_contents() {
    let inv = GwInvariants::of(&d(q(), &[-1, -1]));
    let hasse = inv.hasse.unwrap();
    assert_eq!(hasse.get(&Place::Infinity), Some(&-1));
    assert_eq!(hasse.get(&Place::Prime(2)), Some(&-1));
    assert_eq!(hasse.len(), 2);
    let inv = GwInvariants::of(&d(q(), &[2, 7]));
    let hasse = inv.hasse.unwrap();
    assert_eq!(hasse.get(&Place::Prime(7)), Some(&1));
    assert!(hasse.values().all(|&e| e == 1));
}

#[test]
fn isotropy_examples() {
    assert!(isotropic(&d(q(), &[1, -1])));
    assert!(!isotropic(&d(q(), &[1, 1])));
    assert!(!isotropic(&d(q(), &[1, 1, 1])));
    // x^2 + y^2 = 2 z^2 has (1,1,1); x^2 + y^2 = 7 z^2 has no solution since
    // -1 is not a square mod 7.
    assert!(isotropic(&d(q(), &[1, 1, -2])));
    assert!(!isotropic(&d(q(), &[1, 1, -7])));
    assert!(isotropic(&d(fp(5), &[1, 1])));
    assert!(!isotropic(&d(fp(3), &[1, 1])));
    assert!(isotropic(&d(fp(3), &[1, 1, 1])));
    assert!(!isotropic(&d(q(), &[3])));
    assert!(!isotropic(&DiagonalForm::new(q(), Vec::new()).unwrap()));
}

#[test]
fn rank_five_definite_forms_are_anisotropic() {
    assert!(!isotropic(&d(q(), &[1, 2, 3, 5, 7])));
    assert!(isotropic(&d(q(), &[1, 2, 3, 5, -7])));
}

#[test]
fn witt_decompose_examples() {
    let (w, a) = witt_decompose(&d(q(), &[1, -1]));
    assert_eq!((w, a.rank()), (1, 0));
    let (w, a) = witt_decompose(&d(q(), &[1, 1]));
    assert_eq!(w, 0);
    assert_eq!(ints(&a), vec![1, 1]);
    let (w, a) = witt_decompose(&d(fp(5), &[1, 1]));
    assert_eq!((w, a.rank()), (1, 0));
    let (w, a) = witt_decompose(&d(q(), &[1, 1, -2]));
    assert_eq!(w, 1);
    assert_eq!(ints(&a), vec![2]);
    let (w, a) = witt_decompose(&d(fp(7), &[1, 1, 1]));
    assert_eq!(w, 1);
    assert_eq!(ints(&a), vec![3]);
}

#[test]
fn anisotropic_rank_three_realization() {
    let inv = GwInvariants::of(&d(q(), &[1, 1, 2]));
    assert_eq!(inv.witt_index, 0);
    assert_eq!(ints(&inv.anisotropic), vec![1, 1, 2]);
}

#[test]
fn anisotropic_rank_four_realizations() {
    let inv = GwInvariants::of(&d(q(), &[1, 1, 1, 1]));
    assert_eq!(inv.witt_index, 0);
    assert_eq!(ints(&inv.anisotropic), vec![1, 1, 1, 1]);
    // Definite with a nontrivial Hasse invariant at 2 and 3.
    let form = d(q(), &[2, 2, 3, 3]);
    let inv = GwInvariants::of(&form);
    assert_eq!(inv.witt_index, 0);
    assert_eq!(inv.anisotropic.rank(), 4);
    assert!(gw_equal(&inv.anisotropic, &form).unwrap());
}

#[test]
fn gw_equal_examples() {
    assert!(gw_equal(&d(q(), &[2, -2]), &d(q(), &[1, -1])).unwrap());
    assert!(!gw_equal(&d(q(), &[1, 1]), &d(q(), &[1, -1])).unwrap());
    assert!(gw_equal(&d(q(), &[1, 1]), &d(q(), &[2, 2])).unwrap());
    assert!(!gw_equal(&d(q(), &[1, 1]), &d(q(), &[1, 1, 1])).unwrap());
    assert!(gw_equal(&d(fp(5), &[1, 1]), &d(fp(5), &[1, -1])).unwrap());
    assert!(!gw_equal(&d(fp(3), &[1, 1]), &d(fp(3), &[1, -1])).unwrap());
    assert_eq!(
        gw_equal(&d(q(), &[1]), &d(fp(5), &[1])),
        Err(GwError::FieldMismatch { left: q(), right: fp(5) })
    );
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: Field) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut out = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = field.zero();
            for (k, bk) in b.iter().enumerate() {
                acc = acc.add(&a[i][k].mul(&bk[j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn transpose(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

/// A random invertible matrix: the identity hit by a few elementary row ops.
fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Scalar>> {
    let mut p: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    let nonzero = |rng: &mut ChaCha8Rng| -> Scalar {
        loop {
            let c = match field {
                Field::Rationals => field.from_int(rng.gen_range(-3i64..=3)),
                Field::Prime(pr) => field.from_int(rng.gen_range(0..pr as i64)),
            };
            if !c.is_zero() {
                return c;
            }
        }
    };
    for _ in 0..(4 + rng.gen_range(0..4)) {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                p.swap(i, j);
            }
            1 => {
                let i = rng.gen_range(0..n);
                let c = nonzero(rng);
                for e in &mut p[i] {
                    *e = e.mul(&c);
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    let c = match field {
                        Field::Rationals => field.from_int(rng.gen_range(-3i64..=3)),
                        Field::Prime(pr) => field.from_int(rng.gen_range(0..pr as i64)),
                    };
                    let row_j = p[j].clone();
                    for (e, f) in p[i].iter_mut().zip(&row_j) {
                        *e = e.add(&f.mul(&c));
                    }
                }
            }
        }
    }
    p
}

fn random_diagonal(field: Field, n: usize, rng: &mut ChaCha8Rng) -> DiagonalForm {
    let entries: Vec<Scalar> = (0..n)
        .map(|_| loop {
            let c = match field {
                Field::Rationals => field.from_int(rng.gen_range(-9i64..=9)),
                Field::Prime(p) => field.from_int(rng.gen_range(1..p as i64)),
            };
            if !c.is_zero() {
                break c;
            }
        })
        .collect();
    DiagonalForm::new(field, entries).unwrap()
}

#[test]
fn invariants_are_congruence_invariant() {
    for field in [q(), fp(7)] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6774);
        let rounds = if field == q() { 100 } else { 50 };
        for _ in 0..rounds {
            let n = rng.gen_range(1..=4);
            let diag = random_diagonal(field, n, &mut rng);
            let gram: Vec<Vec<Scalar>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { diag.entries()[i].clone() } else { field.zero() })
                        .collect()
                })
                .collect();
            let p = random_invertible(field, n, &mut rng);
            let transformed = mat_mul(&transpose(&p), &mat_mul(&gram, &p, field), field);
            let back = diagonalize(&SymForm::new(field, transformed).unwrap()).unwrap();
            let (i1, i2) = (GwInvariants::of(&diag), GwInvariants::of(&back));
            assert!(i1.same_class(&i2), "congruence broke invariants: {diag} vs {back}");
            assert_eq!(i1.witt_index, i2.witt_index);
            assert!(gw_equal(&i1.anisotropic, &i2.anisotropic).unwrap());
        }
    }
}

#[test]
fn fp_isotropy_matches_brute_force() {
    for p in [3u64, 5, 7] {
        let field = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let form = random_diagonal(field, n, &mut rng);
            assert_eq!(
                isotropic(&form),
                brute_force_isotropic_fp(&form).unwrap(),
                "isotropy disagreement on {form} over F{p}"
            );
        }
    }
}

#[test]
fn brute_force_guards_and_examples() {
    assert_eq!(brute_force_isotropic_fp(&d(fp(5), &[1, 1])), Ok(true));
    assert_eq!(brute_force_isotropic_fp(&d(fp(3), &[1, 1])), Ok(false));
    assert_eq!(brute_force_isotropic_fp(&d(fp(7), &[1])), Ok(false));
    assert_eq!(brute_force_isotropic_fp(&d(fp(97), &[1, 1, 1, 1])), Ok(true));
    assert_eq!(brute_force_isotropic_fp(&d(q(), &[1, 1])), Err(GwError::FieldTooLarge(q())));
    assert_eq!(
        brute_force_isotropic_fp(&d(fp(101), &[1, 1])),
        Err(GwError::FieldTooLarge(fp(101)))
    );
    assert_eq!(
        brute_force_isotropic_fp(&d(fp(3), &[1, 1, 1, 1, 1])),
        Err(GwError::RankTooLarge(5))
    );
}

#[test]
fn witt_decomposition_is_consistent() {
    let pool: [i64; 16] = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -15, 21, -35];
    let mut rng = ChaCha8Rng::seed_from_u64(0x77177);
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let entries: Vec<i64> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        let form = d(q(), &entries);
        let inv = GwInvariants::of(&form);
        assert_eq!(inv.rank, 2 * inv.witt_index + inv.anisotropic.rank());
        assert!(!isotropic(&inv.anisotropic));
        assert!(inv.signature.unwrap().unsigned_abs() as usize <= inv.anisotropic.rank());
        let rebuilt = DiagonalForm::hyperbolic(q(), inv.witt_index)
            .orthogonal_sum(&inv.anisotropic)
            .unwrap();
        assert!(gw_equal(&form, &rebuilt).unwrap(), "decomposition of {form} broke its class");
    }
    for p in [3u64, 7] {
        let field = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p * 31);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let form = random_diagonal(field, n, &mut rng);
            let inv = GwInvariants::of(&form);
            assert_eq!(inv.rank, 2 * inv.witt_index + inv.anisotropic.rank());
            assert!(!isotropic(&inv.anisotropic));
            let rebuilt = DiagonalForm::hyperbolic(field, inv.witt_index)
                .orthogonal_sum(&inv.anisotropic)
                .unwrap();
            assert!(gw_equal(&form, &rebuilt).unwrap());
        }
    }
}

#[test]
fn gw_equal_is_an_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xec_u64);
    let squares = [1i64, 4, 9, 25];
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let form = random_diagonal(q(), n, &mut rng);
        assert!(gw_equal(&form, &form).unwrap());
        // Scaling entries by squares and permuting them is an isometry.
        let mut scaled: Vec<Scalar> = form
            .entries()
            .iter()
            .map(|e| e.mul(&q().from_int(squares[rng.gen_range(0..squares.len())])))
            .collect();
        scaled.reverse();
        let other = DiagonalForm::new(q(), scaled).unwrap();
        assert!(gw_equal(&form, &other).unwrap());
        assert!(gw_equal(&other, &form).unwrap());
    }
}

#[test]
fn obstruction_examples() {
    let report = ekl_obstruction(&d(q(), &[1, 1]));
    assert_eq!(report.verdict, ObstructionVerdict::Obstructed);
    assert_eq!(report.rank, 2);
    assert_eq!(report.witt_index, 0);
    assert!(!report.minus_one_is_square);
    assert_eq!(report.citation.tag, "local-degree-hyperbolic-summand");

    let report = ekl_obstruction(&d(q(), &[1, -1]));
    assert_eq!(
        report.verdict,
        ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic)
    );

    let report = ekl_obstruction(&d(q(), &[7]));
    assert_eq!(
        report.verdict,
        ObstructionVerdict::NotObstructed(NotObstructedReason::RankAtMostOne)
    );
    let report = ekl_obstruction(&DiagonalForm::new(q(), Vec::new()).unwrap());
    assert_eq!(
        report.verdict,
        ObstructionVerdict::NotObstructed(NotObstructedReason::RankAtMostOne)
    );

    // Over F_5 the target <1,1> is hyperbolic because -1 = 2^2; the report
    // flags the field sensitivity.
    let report = ekl_obstruction(&d(fp(5), &[1, 1]));
    assert_eq!(
        report.verdict,
        ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic)
    );
    assert!(report.minus_one_is_square);

    let report = ekl_obstruction(&d(fp(3), &[1, 1]));
    assert_eq!(report.verdict, ObstructionVerdict::Obstructed);
    assert!(!report.minus_one_is_square);

    let report = ekl_obstruction(&d(q(), &[1, 1, 1, 1]));
    assert_eq!(report.verdict, ObstructionVerdict::Obstructed);
}

#[test]
fn hyperbolic_stabilizations_are_never_obstructed() {
    for u in [1i64, -1, 2, -2, 3, 5, -30] {
        let report = ekl_obstruction(&d(q(), &[1, -1, u]));
        assert_eq!(
            report.verdict,
            ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic),
            "<1,-1,{u}> must stay unobstructed"
        );
    }
    let frac = DiagonalForm::new(
        q(),
        vec![q().one(), q().from_int(-1), q().parse_scalar("7/3").unwrap()],
    )
    .unwrap();
    assert_eq!(
        ekl_obstruction(&frac).verdict,
        ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic)
    );
    for p in [3u64, 5, 7] {
        for u in 1..p {
            let report = ekl_obstruction(&d(fp(p), &[1, -1, u as i64]));
            assert_eq!(
                report.verdict,
                ObstructionVerdict::NotObstructed(NotObstructedReason::ContainsHyperbolic),
                "<1,-1,{u}> over F{p} must stay unobstructed"
            );
        }
    }
}

#[test]
fn tensor_products() {
    let h = d(q(), &[1, -1]);
    let t = tensor_diag(&h, &d(q(), &[2])).unwrap();
    assert!(gw_equal(&t, &h).unwrap());
    let t = tensor_diag(&d(q(), &[2, -2]), &d(q(), &[2, -2])).unwrap();
    assert_eq!(ints(&t), vec![4, -4, -4, 4]);
    assert!(gw_equal(&t, &d(q(), &[1, -1, 1, -1])).unwrap());
    assert_eq!(
        tensor_diag(&h, &d(fp(3), &[1])),
        Err(GwError::FieldMismatch { left: q(), right: fp(3) })
    );
}

#[test]
fn parse_and_display_roundtrip() {
    let f = DiagonalForm::parse(q(), "1,-1").unwrap();
    assert_eq!(ints(&f), vec![1, -1]);
    let f = DiagonalForm::parse(q(), "<2, -3/4>").unwrap();
    assert_eq!(f.rank(), 2);
    assert_eq!(f.entries()[1], q().parse_scalar("-3/4").unwrap());
    let f = DiagonalForm::parse(q(), "\u{27e8}1, 2\u{27e9}").unwrap();
    assert_eq!(ints(&f), vec![1, 2]);
    let f = DiagonalForm::parse(q(), "<>").unwrap();
    assert_eq!(f.rank(), 0);
    assert_eq!(f.to_string(), "<>");
    let f = DiagonalForm::parse(fp(7), "3, 12").unwrap();
    assert_eq!(ints(&f), vec![3, 5]);
    assert!(matches!(DiagonalForm::parse(q(), "1,0"), Err(GwError::ZeroEntry { index: 1 })));
    assert!(matches!(DiagonalForm::parse(q(), "1,spam"), Err(GwError::Parse(_))));

    let f = d(q(), &[1, -2, 3]);
    assert_eq!(f.to_string(), "<1,-2,3>");
    let back = DiagonalForm::parse(q(), &f.to_string()).unwrap();
    assert_eq!(back, f);
}

#[test]
fn discriminant_twist_by_rank() {
    assert!(GwInvariants::of(&d(q(), &[-3])).disc == SquareClass::of(&q().from_int(-3)).unwrap());
    // Rank 3: disc = -det.
    let inv = GwInvariants::of(&d(q(), &[1, 1, 1]));
    assert_eq!(inv.disc, SquareClass::minus_one(q()));
    // Rank 4 and 5: disc = det.
    assert!(GwInvariants::of(&d(q(), &[1, 1, 1, 1])).disc.is_one());
    assert!(GwInvariants::of(&d(q(), &[1, 1, 1, 1, 1])).disc.is_one());
}

#[test]
fn signature_tracks_entry_signs() {
    let inv = GwInvariants::of(&d(q(), &[3, -5, 7, -11, -13]));
    assert_eq!(inv.signature, Some(-1));
    assert_eq!(inv.rank, 5);
    assert!(isotropic(&d(q(), &[3, -5, 7, -11, -13])));
}
