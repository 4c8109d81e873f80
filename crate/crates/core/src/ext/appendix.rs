//! The explicit chain maps lifting the degree-one and degree-two generators
//! over the minimal segment (`f`, `g`) and over the `N = 2` resolution
//! (`f`, `g`, `h`), checked square by square.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qalgebra::{Algebra, AlgebraElement};
use crate::resolution::{segment_elements, AlgMatrix, ComplexKind, FreeComplex};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub squares: Vec<SquareCheck>,
    pub identities: Vec<SquareCheck>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.squares.iter().chain(&self.identities).all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.squares.iter().chain(&self.identities).filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

type Entries<E> = Vec<((usize, usize), AlgebraElement<E>)>;

fn sparse_matrix<E: Clone>(rows: usize, cols: usize, entries: Entries<E>) -> AlgMatrix<E> {
    let mut m = AlgMatrix::zeros(rows, cols);
    for ((i, j), e) in entries {
        m.set(i, j, e);
    }
    m
}

/// `∂_(m+i) F_(i-1) = F_i ∂_i`.
fn square<F: Field>(
    alg: &Algebra<F>,
    c: &FreeComplex<F::Elem>,
    m: usize,
    i: usize,
    prev: &AlgMatrix<F::Elem>,
    next: &AlgMatrix<F::Elem>,
) -> Result<bool> {
    let lhs = c.differential(m + i).mul(alg, prev)?;
    let rhs = next.mul(alg, c.differential(i))?;
    Ok(lhs == rhs)
}

fn check_family<F: Field>(
    alg: &Algebra<F>,
    c: &FreeComplex<F::Elem>,
    label: &str,
    index: usize,
    m: usize,
    maps: &[AlgMatrix<F::Elem>],
    out: &mut Vec<SquareCheck>,
) -> Result<()> {
    for i in 1..maps.len() {
        out.push(SquareCheck {
            name: format!("{label}^{index} square {i}"),
            holds: square(alg, c, m, i, &maps[i - 1], &maps[i])?,
        });
    }
    Ok(())
}

/// The maps `f^i` (lifting the degree-two generators) and `g^j` (lifting the
/// degree-one generators) over the minimal segment, plus the identities
/// satisfied by `X1`, `X2` and `D̄`.
pub fn verify_appendix_maps<F: Field>(alg: &Algebra<F>, seg: &FreeComplex<F::Elem>) -> Result<AppendixReport> {
    if seg.kind != ComplexKind::MinimalSegment {
        return Err(Error::WrongMode("expected the minimal segment".into()));
    }
    let el = segment_elements(alg)?;
    let f = alg.field();
    let n = alg.n();
    let big = n as i64;
    let (q12, q21, qb) = (alg.q12(), alg.q21(), alg.qbar());
    let q = |x: &F::Elem, e: i64| f.pow(x, e);
    let one = alg.one();
    let c = |v: F::Elem| alg.scalar(v);
    let sc = |v: F::Elem, u: AlgebraElement<F::Elem>| alg.scale(&v, &u);
    let x1 = |e: usize| alg.x1_pow(e);
    let x2 = |e: usize| alg.x2_pow(e);
    let y = |e: usize| alg.y_pow(e);
    let yx1 = alg.mul(&y(n - 2), &x1(1));
    let yx2 = alg.mul(&y(n - 2), &x2(1));
    let (xq1, xq2) = (el.x1_quot.clone(), el.x2_quot.clone());
    let sum = |x: &F::Elem| f.add(x, &f.mul(qb, x));
    let q12n = q(q12, big);

    let f1: Vec<AlgMatrix<F::Elem>> = (0..5).map(|i| sparse_matrix(5, 1, vec![((i, 0), one.clone())])).collect();
    let f2 = [sparse_matrix(7, 2, vec![((0, 0), one.clone()), ((1, 1), c(q12n.clone()))]),
        sparse_matrix(
            7,
            2,
            vec![
                ((1, 0), x1(n - 3)),
                ((3, 1), one.clone()),
                ((4, 0), sc(f.mul(q12, &q(q21, 1 - big)), yx2.clone())),
                ((4, 1), sc(f.neg(&q(q21, 1 - big)), yx1.clone())),
            ],
        ),
        sparse_matrix(7, 2, vec![((2, 1), one.clone()), ((4, 0), one.clone())]),
        sparse_matrix(
            7,
            2,
            vec![
                ((2, 0), sc(f.neg(&f.mul(&q(q12, 2), &q(q21, big - 1))), yx2.clone())),
                ((2, 1), sc(f.mul(q12, &q(q21, big - 1)), yx1.clone())),
                ((3, 0), one.clone()),
                ((5, 1), sc(q12n.clone(), x2(n - 3))),
            ],
        ),
        sparse_matrix(7, 2, vec![((5, 0), one.clone()), ((6, 1), one.clone())])];
    let f3 = [sparse_matrix(
            12,
            5,
            vec![
                ((0, 0), one.clone()),
                ((1, 1), c(q12n.clone())),
                ((2, 2), c(q12n.clone())),
                ((3, 3), c(q12n.clone())),
                ((4, 4), c(q12n.clone())),
            ],
        ),
        sparse_matrix(
            12,
            5,
            vec![
                ((1, 0), one.clone()),
                ((2, 0), sc(q(q21, -1), yx2.clone())),
                ((3, 1), sc(q(q12, -big), x1(n - 3))),
                ((4, 3), xq1.clone()),
                ((5, 1), sc(f.mul(&q(q21, 1 - big), &q(q12, 2)), yx2.clone())),
                ((5, 2), c(q12n.clone())),
                ((7, 3), sc(f.mul(q12, &q(q21, big - 3)), yx2.clone())),
                ((8, 4), c(q(q12, 2 * big))),
            ],
        ),
        sparse_matrix(
            12,
            5,
            vec![
                ((2, 0), c(q(q12, -big * big + big))),
                ((5, 1), one.clone()),
                ((6, 2), one.clone()),
                ((7, 3), one.clone()),
                ((9, 4), c(q(q12, big * big))),
            ],
        ),
        sparse_matrix(
            12,
            5,
            vec![
                ((3, 0), c(q(q12, -big))),
                ((4, 1), sc(q(q12, -big * big + 2 * big), xq2.clone())),
                ((5, 1), sc(f.mul(q12, &q(q21, 3 - big)), yx1.clone())),
                ((7, 2), c(q(q21, big))),
                ((7, 3), sc(q(q21, big - 1), yx1.clone())),
                ((8, 3), sc(q(q12, 2 * big), x2(n - 3))),
                ((9, 4), sc(f.mul(&q(q21, 1 - big), &q(q12, 2)), yx1.clone())),
                ((10, 4), c(q12n.clone())),
            ],
        ),
        sparse_matrix(
            12,
            5,
            vec![
                ((4, 0), c(q(q12, -big * big + big))),
                ((8, 1), one.clone()),
                ((9, 2), one.clone()),
                ((10, 3), one.clone()),
                ((11, 4), one.clone()),
            ],
        )];
    let g1: Vec<AlgMatrix<F::Elem>> = (0..2).map(|j| sparse_matrix(2, 1, vec![((j, 0), one.clone())])).collect();
    let g2 = [sparse_matrix(
            5,
            2,
            vec![
                ((0, 0), x1(n - 2)),
                ((1, 0), sc(f.mul(qb, &q(q12, 2)), x2(1))),
                ((1, 1), sc(f.neg(&sum(q12)), x1(1))),
                ((2, 1), sc(f.neg(q12), y(n - 1))),
                ((3, 1), x2(1)),
            ],
        ),
        sparse_matrix(
            5,
            2,
            vec![
                ((1, 0), x1(1)),
                ((2, 0), y(n - 1)),
                ((3, 0), sc(f.neg(&sum(q21)), x2(1))),
                ((3, 1), sc(f.mul(qb, &q(q21, 2)), x1(1))),
                ((4, 1), x2(n - 2)),
            ],
        )];
    let g3 = [sparse_matrix(
            7,
            5,
            vec![
                ((0, 0), one.clone()),
                ((1, 1), sc(f.neg(&sum(q12)), x1(n - 3))),
                ((3, 3), c(f.mul(qb, &q(q12, 2)))),
                ((4, 2), c(q12n.clone())),
                ((5, 4), c(q12n.clone())),
            ],
        ),
        sparse_matrix(
            7,
            5,
            vec![
                ((1, 0), one.clone()),
                ((2, 2), c(q(q21, big))),
                ((3, 1), c(f.mul(qb, &q(q21, 2)))),
                ((5, 3), sc(f.neg(&f.mul(&q12n, &sum(q21))), x2(n - 3))),
                ((6, 4), one.clone()),
            ],
        )];

    let mut report = AppendixReport::default();
    for i in 0..5 {
        let maps = [f1[i].clone(), f2[i].clone(), f3[i].clone()];
        check_family(alg, seg, "f", i + 1, 2, &maps, &mut report.squares)?;
    }
    for j in 0..2 {
        let maps = [g1[j].clone(), g2[j].clone(), g3[j].clone()];
        check_family(alg, seg, "g", j + 1, 1, &maps, &mut report.squares)?;
    }

    let e = q(q12, -big * big + 2 * big);
    let dbar = &el.dbar;
    // r2 with its two terms in the other order
    let r2_rev = alg.add(
        &sc(f.mul(qb, &q(q12, 2)), alg.mul(&x2(1), &x1(1))),
        &sc(f.neg(&sum(q12)), alg.mul(&x1(1), &x2(1))),
    );
    let ids = [
        ("X1 r4 + q12^(2N-N^2) Dbar = 0", alg.add(&alg.mul(&xq1, &el.r4), &alg.scale(&e, dbar)).is_zero()),
        ("X2 r2 + Dbar = 0", alg.add(&alg.mul(&xq2, &r2_rev), dbar).is_zero()),
        ("Dbar x1 = x1^(N-1) x2^(N-2)", alg.mul(dbar, &x1(1)) == alg.mul(&x1(n - 1), &x2(n - 2))),
        (
            "x2^(N-1) x1^(N-2) = q12^(2N-N^2) Dbar x2",
            alg.mul(&x2(n - 1), &x1(n - 2)) == alg.scale(&e, &alg.mul(dbar, &x2(1))),
        ),
        ("X1 x2^2 = x2^(N-1) x1^(N-3)", alg.mul(&xq1, &x2(2)) == alg.mul(&x2(n - 1), &x1(n - 3))),
        ("X2 x1^2 = x1^(N-1) x2^(N-3)", alg.mul(&xq2, &x1(2)) == alg.mul(&x1(n - 1), &x2(n - 3))),
    ];
    report.identities = ids.into_iter().map(|(name, holds)| SquareCheck { name: name.into(), holds }).collect();
    Ok(report)
}

/// The maps `f`, `g` lifting `a1`, `a2` and `h` lifting `b` over the
/// `N = 2` resolution.
pub fn verify_appendix_maps_n2<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> Result<AppendixReport> {
    if c.kind != ComplexKind::N2 || c.top_degree() < 3 {
        return Err(Error::WrongMode("expected the N = 2 resolution through degree 3".into()));
    }
    let w = |s: &str| alg.basis(alg.word_index(s).expect("basis word"));
    let one = alg.one();
    let f = [
        sparse_matrix(2, 1, vec![((0, 0), one.clone())]),
        sparse_matrix(3, 2, vec![((0, 0), one.clone()), ((1, 1), w("21"))]),
        sparse_matrix(4, 3, vec![((0, 0), one.clone()), ((1, 1), one.clone())]),
    ];
    let g = [
        sparse_matrix(2, 1, vec![((1, 0), one.clone())]),
        sparse_matrix(3, 2, vec![((1, 0), w("12")), ((2, 1), one.clone())]),
        sparse_matrix(4, 3, vec![((2, 1), one.clone()), ((3, 2), one.clone())]),
    ];
    let h = [
        sparse_matrix(3, 1, vec![((1, 0), one.clone())]),
        sparse_matrix(4, 2, vec![((1, 0), one.clone()), ((2, 1), one.clone())]),
    ];
    let mut report = AppendixReport::default();
    check_family(alg, c, "f", 1, 1, &f, &mut report.squares)?;
    check_family(alg, c, "g", 1, 1, &g, &mut report.squares)?;
    check_family(alg, c, "h", 1, 2, &h, &mut report.squares)?;
    Ok(report)
}
