use nichols_ext::qalgebra::{Algebra, AlgebraElement, AlgebraMode};
use nichols_ext::scalars::{Field, FieldSpec, PrimeField};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Elem = AlgebraElement<<PrimeField as Field>::Elem>;

fn algebra(n: usize, mode: AlgebraMode) -> Algebra<PrimeField> {
    let spec = FieldSpec::prime_field_at_least(n as u64, 1000);
    Algebra::from_exponents(PrimeField::new(spec.prime.unwrap(), n as u64).unwrap(), n, 1, mode).unwrap()
}

fn element(alg: &Algebra<PrimeField>, terms: &[(usize, i64)]) -> Elem {
    let f = alg.field();
    terms.iter().fold(alg.zero(), |acc, &(i, c)| {
        alg.add(&acc, &alg.scale(&f.from_i64(c), &alg.basis(i % alg.dim())))
    })
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -50i64..50), 1..5)
}

fn fuzz_associativity(n: usize, mode: AlgebraMode) {
    let alg = algebra(n, mode);
    let mut runner = TestRunner::new(Config { cases: 500, ..Config::default() });
    runner
        .run(&(terms(), terms(), terms()), |(a, b, c)| {
            let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
            prop_assert_eq!(alg.mul(&a, &alg.add(&b, &c)), alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c)));
            let f = alg.field();
            prop_assert_eq!(
                alg.augmentation(&alg.mul(&a, &b)),
                f.mul(&alg.augmentation(&a), &alg.augmentation(&b))
            );
            Ok(())
        })
        .unwrap();
}

#[test]
fn associativity_n2() {
    fuzz_associativity(2, AlgebraMode::Full);
}

#[test]
fn associativity_n3() {
    fuzz_associativity(3, AlgebraMode::Full);
}

#[test]
fn associativity_n5() {
    fuzz_associativity(5, AlgebraMode::Full);
}

#[test]
fn associativity_n3_graded() {
    fuzz_associativity(3, AlgebraMode::Graded);
}

#[test]
fn dimensions() {
    assert_eq!(algebra(2, AlgebraMode::Full).dim(), 8);
    assert_eq!(algebra(3, AlgebraMode::Full).dim(), 27);
    assert_eq!(algebra(5, AlgebraMode::Full).dim(), 125);
    assert_eq!(algebra(3, AlgebraMode::Graded).dim(), 27);
}

#[test]
fn generators_are_nilpotent_of_order_n() {
    for n in [3, 5] {
        let alg = algebra(n, AlgebraMode::Full);
        for g in [alg.x1(), alg.y(), alg.x2()] {
            assert!(!alg.pow(&g, n - 1).is_zero());
            assert!(alg.pow(&g, n).is_zero());
        }
    }
    let alg = algebra(2, AlgebraMode::Full);
    for g in [alg.x1(), alg.x2()] {
        assert!(alg.pow(&g, 2).is_zero());
    }
}

#[test]
fn both_pbw_orderings_are_bases() {
    for n in [3, 5] {
        assert!(algebra(n, AlgebraMode::Full).reverse_basis_is_basis());
    }
}

#[test]
fn reverse_basis_round_trip() {
    let alg = algebra(3, AlgebraMode::Full);
    for i in 0..alg.dim() {
        let u = alg.basis(i);
        assert_eq!(alg.from_reverse_basis(&alg.to_reverse_basis(&u).unwrap()).unwrap(), u);
    }
}

#[test]
fn text_round_trip() {
    let alg = algebra(3, AlgebraMode::Full);
    for i in 0..alg.dim() {
        let u = alg.add(&alg.basis(i), &alg.scale(&alg.field().from_i64(-2), &alg.basis((5 * i + 3) % 27)));
        assert_eq!(alg.parse(&alg.render(&u)).unwrap(), u);
    }
    let v = alg.parse("x2 * x1").unwrap();
    assert_eq!(v, alg.mul(&alg.x2(), &alg.x1()));
}

#[test]
fn right_multiplication_matrices_act_on_rows() {
    let alg = algebra(3, AlgebraMode::Full);
    let m = alg.add(&alg.x2(), &alg.y());
    for i in 0..alg.dim() {
        let row = alg.right_mult_row(i, &m);
        let expected = alg.mul(&alg.basis(i), &m);
        let f = alg.field();
        for (j, c) in row {
            assert_eq!(c, expected.coefficient(f, j));
        }
    }
}
