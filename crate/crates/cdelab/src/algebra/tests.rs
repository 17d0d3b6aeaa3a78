use super::*;
use crate::algebra::{quotient_algebra, semisimple_simples};
use crate::error::AlgebraError;
use crate::scalars::parse_scalar;

fn c(v: i64) -> Cyclo {
    Cyclo::from_int(v)
}

/// The one-dimensional algebra.
fn trivial<T: Field>() -> Algebra<T> {
    Algebra::new(vec![vec![vec![T::one()]]], 0, None).unwrap()
}

/// Basis {1, s} with s^2 = (q-1)s + q.
fn hecke_a1<T: Field>(q: T) -> Algebra<T> {
    let z = T::zero;
    let o = T::one;
    let constants = vec![
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![z(), o()], vec![q.clone(), q.sub(&o())]],
    ];
    Algebra::new(constants, 0, Some(vec!["1".into(), "s".into()])).unwrap()
}

/// k[x]/(x^2 - x), isomorphic to k x k; basis {1, v} with v^2 = v.
fn product_of_two_fields() -> Algebra<Cyclo> {
    let constants = vec![
        vec![vec![c(1), c(0)], vec![c(0), c(1)]],
        vec![vec![c(0), c(1)], vec![c(0), c(1)]],
    ];
    Algebra::new(constants, 0, None).unwrap()
}

#[test]
fn trivial_algebra_is_valid_and_its_own_regular_module() {
    let a: Algebra<Cyclo> = trivial();
    let reg = a.regular_module();
    assert_eq!(reg.dim(), 1);
    assert_eq!(reg.action(0), &Matrix::identity(1));
    assert!(radical(&a).is_empty());
}

#[test]
fn broken_associativity_is_rejected() {
    // Tamper with the product-of-fields table: make a_{12}^1 nonzero.
    let constants = vec![
        vec![vec![c(1), c(0)], vec![c(1), c(1)]],
        vec![vec![c(0), c(1)], vec![c(0), c(1)]],
    ];
    match Algebra::new(constants, 0, None) {
        Err(AlgebraError::UnitLaw { .. }) | Err(AlgebraError::Associativity { .. }) => {}
        other => panic!("expected a construction error, got ok = {}", other.is_ok()),
    }
}

#[test]
fn hecke_a1_regular_module_matches_left_multiplication() {
    let q = parse_scalar("-1 + t", 1).unwrap();
    let a = hecke_a1(q.clone());
    let reg = a.regular_module();
    // s * 1 = s, s * s = q + (q-1)s: companion-style matrix.
    let expect = Matrix::from_rows(vec![
        vec![RatFunc::zero(), q.clone()],
        vec![RatFunc::one(), q.sub(&RatFunc::one())],
    ]);
    assert_eq!(reg.action(1), &expect);
}

#[test]
fn deformed_a1_reduces_to_the_local_algebra_at_minus_one() {
    let q = parse_scalar("-1 + t", 1).unwrap();
    let z = RatFunc::zero;
    let o = RatFunc::one;
    let constants = vec![
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![z(), o()], vec![q.clone(), q.sub(&o())]],
    ];
    let deformed = DeformedAlgebra::new(constants, 0, None).unwrap();
    let special = deformed.special_fiber();
    // q(0) = -1: s^2 = -2s - 1
    assert_eq!(special.constant(1, 1, 0), &c(-1));
    assert_eq!(special.constant(1, 1, 1), &c(-2));
    // radical is 1-dimensional, spanned by s + 1
    let rad = radical(&special);
    assert_eq!(rad.len(), 1);
    let span = Matrix::from_columns(&[rad[0].clone(), vec![c(1), c(1)]], 2);
    assert_eq!(span.rank(), 1);
}

#[test]
fn non_integral_constant_rejected_over_r() {
    let q = parse_scalar("1/t", 1).unwrap();
    let z = RatFunc::zero;
    let o = RatFunc::one;
    let constants = vec![
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![z(), o()], vec![q.clone(), q.sub(&o())]],
    ];
    assert!(matches!(
        DeformedAlgebra::new(constants, 0, None),
        Err(AlgebraError::NonIntegralConstant { .. })
    ));
}

#[test]
fn local_algebra_has_only_the_unit_idempotent() {
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    assert_eq!(set.elements().len(), 1);
    assert_eq!(set.elements()[0], a.unit_vector());
}

#[test]
fn product_algebra_splits_into_two_idempotents() {
    let a = product_of_two_fields();
    let set = primitive_idempotents(&a).unwrap();
    assert_eq!(set.elements().len(), 2);
    let v = vec![c(0), c(1)];
    let u_minus_v = vec![c(1), c(-1)];
    assert!(set.elements().contains(&v));
    assert!(set.elements().contains(&u_minus_v));
    assert_eq!(set.block_count(), 2);
}

#[test]
fn idempotents_are_orthogonal_and_sum_to_one() {
    for a in [hecke_a1(c(-1)), product_of_two_fields(), trivial()] {
        let set = primitive_idempotents(&a).unwrap();
        let mut total = vec![Cyclo::zero(); a.dim()];
        for (i, e) in set.elements().iter().enumerate() {
            assert!(a.is_idempotent(e));
            for (t, x) in total.iter_mut().zip(e) {
                *t = t.add(x);
            }
            for (j, f) in set.elements().iter().enumerate() {
                if i != j {
                    assert!(a.multiply(e, f).iter().all(Cyclo::is_zero));
                }
            }
        }
        assert_eq!(total, a.unit_vector());
    }
}

#[test]
fn projective_cover_of_the_local_algebra_is_the_regular_module() {
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    let projectives = indecomposable_projectives(&a, &set);
    assert_eq!(projectives.len(), 1);
    assert_eq!(projectives[0].dim(), 2);
    assert_eq!(projectives[0].marker(), Marker::ProjectiveIndecomposable);
    assert!(is_local_endoring(&projectives[0]));
}

#[test]
fn top_of_the_local_regular_module_sends_s_to_minus_one() {
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    let p = &indecomposable_projectives(&a, &set)[0];
    let t = top(&a, p);
    assert_eq!(t.dim(), 1);
    assert_eq!(t.action(1)[(0, 0)], c(-1));
    assert_eq!(t.marker(), Marker::Simple);
}

#[test]
fn top_of_the_trivial_algebra_is_itself() {
    let a: Algebra<Cyclo> = trivial();
    let set = primitive_idempotents(&a).unwrap();
    let p = &indecomposable_projectives(&a, &set)[0];
    assert_eq!(top(&a, p).dim(), 1);
}

#[test]
fn schur_dimensions_for_split_simples() {
    let a = product_of_two_fields();
    let simples = semisimple_simples(&a).unwrap();
    assert_eq!(simples.len(), 2);
    assert_eq!(hom_space(&simples[0], &simples[0]).len(), 1);
    assert_eq!(hom_space(&simples[0], &simples[1]).len(), 0);
}

#[test]
fn jh_multiplicity_of_regular_module_over_local_a1() {
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    let reg = a.regular_module();
    assert_eq!(jh_multiplicity(&reg, &set, 0), 2);
    // zero module has no constituents
    let zero = Representation::zero(&a);
    assert_eq!(jh_multiplicity(&zero, &set, 0), 0);
}

#[test]
fn oracle_agrees_with_idempotent_ranks() {
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    let projectives = indecomposable_projectives(&a, &set);
    let simples: Vec<_> = projectives.iter().map(|p| top(&a, p)).collect();
    let reg = a.regular_module();
    let counts = composition_series_oracle(&a, &reg, &simples);
    assert_eq!(counts, vec![2]);
    assert_eq!(
        composition_series_oracle(&a, &simples[0], &simples),
        vec![1]
    );
}

#[test]
fn locality_of_endomorphism_rings() {
    let a = product_of_two_fields();
    let simples = semisimple_simples(&a).unwrap();
    assert!(is_local_endoring(&simples[0]));
    let sum = simples[0].direct_sum(&simples[1]);
    assert!(!is_local_endoring(&sum));
    // End(M + M) is a 2x2 matrix algebra: not local either.
    let square = simples[0].direct_sum(&simples[0]);
    assert!(!is_local_endoring(&square));
}

#[test]
fn endomorphism_algebra_of_a_doubled_simple_is_four_dimensional() {
    let a = product_of_two_fields();
    let simples = semisimple_simples(&a).unwrap();
    let square = simples[0].direct_sum(&simples[0]);
    let (end, mats) = endomorphism_algebra(&square).unwrap();
    assert_eq!(end.dim(), 4);
    assert_eq!(mats[0], Matrix::identity(2));
    // and End(simple) is the base field
    let (end1, _) = endomorphism_algebra(&simples[0]).unwrap();
    assert_eq!(end1.dim(), 1);
}

#[test]
fn regular_module_dimension_bookkeeping() {
    // sum_i dim(simple_i) * dim(projective_i) = dim algebra
    let a = hecke_a1(c(-1));
    let set = primitive_idempotents(&a).unwrap();
    let projectives = indecomposable_projectives(&a, &set);
    let total: usize = projectives
        .iter()
        .map(|p| top(&a, p).dim() * p.dim())
        .sum();
    assert_eq!(total, a.dim());
}

#[test]
fn quotient_by_radical_is_semisimple() {
    let a = hecke_a1(c(-1));
    let rad = radical(&a);
    let (s, section, proj) = quotient_algebra(&a, &rad).unwrap();
    assert_eq!(s.dim(), 1);
    assert!(radical(&s).is_empty());
    // projection of the section is the identity
    assert_eq!(proj.mul(&section), Matrix::identity(1));
}

#[test]
fn generic_hecke_a1_is_split_semisimple_over_k() {
    let q = parse_scalar("-1 + t", 1).unwrap();
    let a = hecke_a1(q);
    assert!(radical(&a).is_empty());
    let simples = semisimple_simples(&a).unwrap();
    let dims: Vec<usize> = simples.iter().map(Representation::dim).collect();
    assert_eq!(dims, vec![1, 1]);
    let sum_sq: usize = dims.iter().map(|d| d * d).sum();
    assert_eq!(sum_sq, a.dim());
}
