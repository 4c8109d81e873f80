use nichols_ext::ext::{named_generators, Convention, ExtContext};
use nichols_ext::qalgebra::{Algebra, AlgebraMode};
use nichols_ext::resolution::{build_minimal_segment, build_p_complex, build_resolution_n2};
use nichols_ext::scalars::{Field, FieldSpec, PrimeField};
use nichols_ext::Error;

fn fp_algebra(n: usize) -> Algebra<PrimeField> {
    let spec = FieldSpec::prime_field_at_least(n as u64, 1000);
    Algebra::from_exponents(PrimeField::new(spec.prime.unwrap(), n as u64).unwrap(), n, 1, AlgebraMode::Full).unwrap()
}

#[test]
fn n2_polynomial_generator() {
    let alg = fp_algebra(2);
    let c = build_resolution_n2(&alg, 9).unwrap();
    let ctx = ExtContext::new(&alg, &c);
    let gens = named_generators(&ctx).unwrap();
    let b = gens.get("b").unwrap();
    let mut power = b.clone();
    for _ in 0..3 {
        assert!(!ctx.is_zero(&power).unwrap());
        power = ctx.yoneda_product(&power, b, Convention::LeftThenRight).unwrap();
    }
    assert_eq!(power.degree, 8);
    assert!(!ctx.is_zero(&power).unwrap());
}

#[test]
fn non_cocycles_are_rejected() {
    let alg = fp_algebra(3);
    let c = build_p_complex(&alg, 4).unwrap();
    let ctx = ExtContext::new(&alg, &c);
    let f = alg.field();
    let rank = c.rank(1);
    let found = (0..rank).any(|i| {
        let mut v = vec![f.zero(); rank];
        v[i] = f.one();
        matches!(ctx.class(1, v), Err(Error::NotCocycle(1)))
    });
    assert!(found, "P is not minimal, so some unit vector in degree 1 is not a cocycle");
}

#[test]
fn segment_classes_transfer_to_p() {
    let alg = fp_algebra(5);
    let seg = build_minimal_segment(&alg).unwrap();
    let p = build_p_complex(&alg, 5).unwrap();
    let sctx = ExtContext::new(&alg, &seg);
    let pctx = ExtContext::new(&alg, &p);
    let gens = named_generators(&sctx).unwrap();
    let g = pctx.comparison_map(&seg, 4).unwrap();
    let moved = pctx.transfer_from_minimal(&g, &gens.classes).unwrap();
    for d in 1..=2 {
        let coords: Vec<_> = moved
            .iter()
            .filter(|c| c.degree == d)
            .map(|c| pctx.coordinates(c).unwrap())
            .collect();
        assert_eq!(coords.len(), pctx.dimension(d).unwrap());
    }
    let a1 = &moved[0];
    assert!(pctx.is_zero(&pctx.yoneda_product(a1, a1, Convention::LeftThenRight).unwrap()).unwrap());
}
