use super::{AlgMatrix, ComplexKind, FreeComplex};
use crate::error::{Error, Result};
use crate::qalgebra::{Algebra, AlgebraElement, AlgebraMode};
use crate::scalars::Field;

/// Auxiliary elements appearing in the minimal segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentElements<E> {
    /// `D̄` with `D̄ y = [x1^(N-1), x2^(N-1)]_c`.
    pub dbar: AlgebraElement<E>,
    /// `X1` with `X1 x2^2 = x2^(N-1) x1^(N-3)`.
    pub x1_quot: AlgebraElement<E>,
    /// `X2` with `X2 x1^2 = x1^(N-1) x2^(N-3)`.
    pub x2_quot: AlgebraElement<E>,
    pub r2: AlgebraElement<E>,
    pub r4: AlgebraElement<E>,
    pub r2n: AlgebraElement<E>,
}

fn check_segment_algebra<F: Field>(alg: &Algebra<F>) -> Result<()> {
    if alg.is_word_presentation() || alg.mode() != AlgebraMode::Full {
        return Err(Error::WrongMode("the minimal segment needs the full algebra with N >= 3".into()));
    }
    Ok(())
}

/// `a x1 x2 + b x2 x1`.
fn quad<F: Field>(alg: &Algebra<F>, a: F::Elem, b: F::Elem) -> AlgebraElement<F::Elem> {
    let x12 = alg.mul(&alg.x1(), &alg.x2());
    let x21 = alg.mul(&alg.x2(), &alg.x1());
    alg.add(&alg.scale(&a, &x12), &alg.scale(&b, &x21))
}

pub fn segment_elements<F: Field>(alg: &Algebra<F>) -> Result<SegmentElements<F::Elem>> {
    check_segment_algebra(alg)?;
    let f = alg.field();
    let n = alg.n();
    let big = n as i64;
    let (q12, q21, qb) = (alg.q12(), alg.q21(), alg.qbar());
    let q = |x: &F::Elem, e: i64| f.pow(x, e);
    let dbar = alg.right_divide(&alg.braided_commutator(n - 1, n - 1)?, &alg.y())?;
    let x1_quot = alg.right_divide(&alg.mul(&alg.x2_pow(n - 1), &alg.x1_pow(n - 3)), &alg.x2_pow(2))?;
    let x2_quot = alg.right_divide(&alg.mul(&alg.x1_pow(n - 1), &alg.x2_pow(n - 3)), &alg.x1_pow(2))?;
    // -(q + qbar q) and qbar q^2 shapes
    let minus_sum = |x: &F::Elem| f.neg(&f.add(x, &f.mul(qb, x)));
    let r2 = quad(alg, minus_sum(q12), f.mul(qb, &q(q12, 2)));
    let r4 = quad(alg, f.mul(qb, &q(q21, 2)), minus_sum(q21));
    let r2n = quad(alg, minus_sum(&q(q12, 1 + big)), f.mul(qb, &q(q12, 2 + big)));
    Ok(SegmentElements { dbar, x1_quot, x2_quot, r2, r4, r2n })
}

/// The minimal resolution in degrees `0..=4`, ranks `1, 2, 5, 7, 12`.
pub fn build_minimal_segment<F: Field>(alg: &Algebra<F>) -> Result<FreeComplex<F::Elem>> {
    let el = segment_elements(alg)?;
    let f = alg.field();
    let n = alg.n();
    let big = n as i64;
    let (q12, q21, qb) = (alg.q12(), alg.q21(), alg.qbar());
    let q = |x: &F::Elem, e: i64| f.pow(x, e);
    let z = alg.zero();
    let x1 = |e: usize| alg.x1_pow(e);
    let x2 = |e: usize| alg.x2_pow(e);
    let y = |e: usize| alg.y_pow(e);
    let sc = |c: F::Elem, u: AlgebraElement<F::Elem>| alg.scale(&c, &u);
    let yx1 = alg.mul(&y(n - 1), &x1(1));
    let yx2 = alg.mul(&y(n - 1), &x2(1));
    let (r2, r4) = (el.r2.clone(), el.r4.clone());

    let d1 = vec![vec![x1(1)], vec![x2(1)]];
    let d2 = vec![
        vec![x1(n - 1), z.clone()],
        vec![r2.clone(), x1(2)],
        vec![sc(f.neg(q12), yx2.clone()), yx1.clone()],
        vec![x2(2), r4.clone()],
        vec![z.clone(), x2(n - 1)],
    ];
    let d3 = vec![
        vec![x1(1), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![sc(q(q12, big), x2(1)), x1(n - 2), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), x2(1), sc(f.mul(q12, &q(q21, big - 1)), y(n - 1)), z.clone()],
        vec![z.clone(), x2(1), z.clone(), x1(1), z.clone()],
        vec![z.clone(), sc(f.neg(&q(q21, 1 - big)), y(n - 1)), x1(1), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), sc(q(q12, big), x2(n - 2)), x1(1)],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), x2(1)],
    ];
    let top = q(q12, -big * big + big);
    let a1 = vec![
        vec![x1(n - 1), z.clone(), z.clone(), z.clone()],
        vec![el.r2n.clone(), x1(2), z.clone(), z.clone()],
        vec![sc(f.neg(&q(q12, 1 + big)), yx2.clone()), yx1.clone(), z.clone(), z.clone()],
        vec![sc(q(q12, big), x2(2)), r4.clone(), z.clone(), sc(q(q21, big), x1(n - 1))],
        vec![z.clone(), x2(n - 1), z.clone(), sc(f.neg(&q(q12, -big * big + 2 * big)), el.dbar.clone())],
    ];
    let a2 = vec![
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone()],
        vec![sc(top.clone(), x1(n - 1)), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), sc(top, x1(n - 1)), z.clone()],
    ];
    let qb_inv = f.inv(qb).ok_or(Error::ZeroElement)?;
    let a3 = vec![
        vec![z.clone(), z.clone(), x1(2), sc(f.neg(&f.mul(&qb_inv, &q(q12, big))), yx1.clone())],
        vec![z.clone(), z.clone(), yx1.clone(), z.clone()],
        vec![z.clone(), z.clone(), r4.clone(), sc(q(q21, big - 1), yx2.clone())],
        vec![z.clone(), z.clone(), z.clone(), sc(q(q12, 2 * big), x2(n - 1))],
        vec![z.clone(), z.clone(), sc(q(q12, big * big), x2(n - 1)), z.clone()],
        vec![z.clone(); 4],
        vec![z.clone(); 4],
    ];
    let a4 = vec![
        vec![r2.clone(), z.clone(), z.clone()],
        vec![sc(f.neg(q12), yx2.clone()), z.clone(), z.clone()],
        vec![x2(2), z.clone(), z.clone()],
        vec![z.clone(), r2, x1(2)],
        vec![z.clone(), sc(f.neg(q12), yx2), yx1],
        vec![z.clone(), x2(2), r4],
        vec![z.clone(), z.clone(), x2(n - 1)],
    ];
    let d4: Vec<Vec<_>> = a1
        .into_iter()
        .zip(a2)
        .chain(a3.into_iter().zip(a4))
        .map(|(mut l, r)| {
            l.extend(r);
            l
        })
        .collect();
    let diffs = vec![
        AlgMatrix::from_rows(1, d1)?,
        AlgMatrix::from_rows(2, d2)?,
        AlgMatrix::from_rows(5, d3)?,
        AlgMatrix::from_rows(7, d4)?,
    ];
    let labels = [1usize, 2, 5, 7, 12]
        .iter()
        .enumerate()
        .map(|(deg, &r)| (0..r).map(|i| format!("m{deg}_{i}")).collect())
        .collect();
    FreeComplex::new(ComplexKind::MinimalSegment, labels, diffs, true)
}
