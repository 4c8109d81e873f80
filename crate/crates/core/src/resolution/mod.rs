//! Free resolutions of the trivial module: the banded `N = 2` resolution, the
//! complex `P` indexed by triples `(a1, a2, a3)`, and the minimal first
//! segment of ranks `1, 2, 5, 7, 12`. Plus checks that they are complexes and
//! exact.

mod json;
mod matrix;
mod segment;

use rayon::prelude::*;
use serde::Serialize;

pub use json::{complex_from_json, complex_to_json, ComplexDocument};
pub use matrix::{flatten_row, unflatten_row, AlgMatrix};
pub use segment::{build_minimal_segment, segment_elements, SegmentElements};

use crate::error::{Error, Result};
use crate::linalg::sparse_rank;
use crate::qalgebra::{Algebra, AlgebraElement, AlgebraMode};
use crate::scalars::Field;

/// The index functions `σ` and `τ` of the complex `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaTau {
    pub n: usize,
}

impl SigmaTau {
    pub fn sigma(&self, a: usize) -> usize {
        if a % 2 == 1 {
            1
        } else {
            self.n - 1
        }
    }

    pub fn tau(&self, a: usize) -> usize {
        if a % 2 == 1 {
            (a - 1) / 2 * self.n + 1
        } else {
            a / 2 * self.n
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    N2,
    PComplex,
    MinimalSegment,
    Custom,
}

/// A bounded complex of free modules `P_top -> ... -> P_1 -> P_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex<E> {
    pub kind: ComplexKind,
    ranks: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// `differentials[n - 1]` is `∂_n : P_n -> P_{n-1}`.
    differentials: Vec<AlgMatrix<E>>,
    minimal: bool,
}

impl<E: Clone> FreeComplex<E> {
    pub fn new(
        kind: ComplexKind,
        labels: Vec<Vec<String>>,
        differentials: Vec<AlgMatrix<E>>,
        minimal: bool,
    ) -> Result<Self> {
        let ranks: Vec<usize> = labels.iter().map(Vec::len).collect();
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch("need one differential per positive degree".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] {
                return Err(Error::DimensionMismatch(format!(
                    "differential {} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        Ok(FreeComplex { kind, ranks, labels, differentials, minimal })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    /// `∂_n` for `1 <= n <= top`.
    pub fn differential(&self, n: usize) -> &AlgMatrix<E> {
        &self.differentials[n - 1]
    }

    pub fn differential_mut(&mut self, n: usize) -> &mut AlgMatrix<E> {
        &mut self.differentials[n - 1]
    }

    /// Whether the complex is minimal by construction, so that the next
    /// differential beyond the top degree would augment to zero.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// The first `top + 1` degrees.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top_degree());
        FreeComplex {
            kind: self.kind,
            ranks: self.ranks[..=top].to_vec(),
            labels: self.labels[..=top].to_vec(),
            differentials: self.differentials[..top].to_vec(),
            minimal: self.minimal,
        }
    }
}

/// The minimal resolution for `N = 2`: `P_n = R^(n+1)` with banded
/// differentials built from `x1`, `x2`, `x2 x1 x2` and `x1 x2 x1`.
pub fn build_resolution_n2<F: Field>(alg: &Algebra<F>, n_max: usize) -> Result<FreeComplex<F::Elem>> {
    if !alg.is_word_presentation() {
        return Err(Error::WrongMode("the banded resolution needs N = 2".into()));
    }
    let w = |s: &str| alg.basis(alg.word_index(s).expect("basis word"));
    let (x1, x2, x212, x121) = (w("1"), w("2"), w("212"), w("121"));
    let mut diffs = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut d = AlgMatrix::zeros(n + 1, n);
        // rows above the switch carry x1 on the diagonal, rows below carry x2
        let switch = n / 2;
        for i in 0..=n {
            if n % 2 == 1 {
                if i < n.div_ceil(2) {
                    if i < n {
                        d.set(i, i, x1.clone());
                    }
                    if i > 0 {
                        d.set(i, i - 1, x212.clone());
                    }
                } else {
                    d.set(i, i - 1, x2.clone());
                    if i < n {
                        d.set(i, i, x121.clone());
                    }
                }
            } else if i < switch {
                d.set(i, i, x1.clone());
                if i > 0 {
                    d.set(i, i - 1, x212.clone());
                }
            } else if i == switch {
                d.set(i, i - 1, x212.clone());
                d.set(i, i, x121.clone());
            } else {
                d.set(i, i - 1, x2.clone());
                if i < n {
                    d.set(i, i, x121.clone());
                }
            }
        }
        diffs.push(d);
    }
    let labels = (0..=n_max).map(|n| (0..=n).map(|i| format!("e{i}")).collect()).collect();
    FreeComplex::new(ComplexKind::N2, labels, diffs, true)
}

/// Generators of `P_n`: triples summing to `n`, in lexicographic order.
pub fn p_generators(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for a in 0..=n {
        for b in 0..=n - a {
            out.push((a, b, n - a - b));
        }
    }
    out
}

fn p_index(n: usize, g: (usize, usize, usize)) -> usize {
    // lexicographic position of (a, b, n - a - b)
    let (a, b, _) = g;
    let before_a: usize = (0..a).map(|i| n - i + 1).sum();
    before_a + b
}

/// The scalar `c` with `D y = c [x1^σ(a1), x2^σ(a3)]_c` in the extra
/// component of the differential on `Φ(a1, a2, a3)`.
pub fn dtilde_scalar<F: Field>(alg: &Algebra<F>, g: (usize, usize, usize)) -> F::Elem {
    let f = alg.field();
    let st = SigmaTau { n: alg.n() };
    let (a1, a2, a3) = g;
    let t = st.tau(a1 - 1) as i64;
    let s3 = st.sigma(a3) as i64;
    let t2 = st.tau(a2) as i64;
    let c = f.mul(
        &f.mul(&f.pow(alg.q21(), t), &f.pow(alg.q12(), s3 * t)),
        &f.pow(alg.q21(), -s3 * t2),
    );
    f.neg(&c)
}

/// The right-hand side `D y` of the extra component on `Φ(a1, a2, a3)`.
pub fn dtilde_target<F: Field>(alg: &Algebra<F>, g: (usize, usize, usize)) -> Result<AlgebraElement<F::Elem>> {
    let st = SigmaTau { n: alg.n() };
    let comm = alg.braided_commutator(st.sigma(g.0), st.sigma(g.2))?;
    Ok(alg.scale(&dtilde_scalar(alg, g), &comm))
}

/// The complex `P` through degree `n_max`. In graded mode the extra
/// components are omitted, giving the minimal resolution over the associated
/// graded algebra.
pub fn build_p_complex<F: Field>(alg: &Algebra<F>, n_max: usize) -> Result<FreeComplex<F::Elem>> {
    if alg.is_word_presentation() {
        return Err(Error::WrongMode("the complex P needs N >= 3".into()));
    }
    let f = alg.field();
    let st = SigmaTau { n: alg.n() };
    let graded = alg.mode() == AlgebraMode::Graded;
    let y = alg.y();
    let diffs: Result<Vec<AlgMatrix<F::Elem>>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let src = p_generators(n);
            let mut d = AlgMatrix::zeros(src.len(), n * (n + 1) / 2);
            let mut put = |r: usize, g: (usize, usize, usize), el: AlgebraElement<F::Elem>| {
                let c = p_index(n - 1, g);
                let cur = d.get(r, c).clone();
                d.set(r, c, alg.add(&cur, &el));
            };
            for (r, &(a1, a2, a3)) in src.iter().enumerate() {
                let sign = |e: usize| if e.is_multiple_of(2) { f.one() } else { f.from_i64(-1) };
                if a1 > 0 {
                    put(r, (a1 - 1, a2, a3), alg.x1_pow(st.sigma(a1)));
                }
                if a2 > 0 {
                    let s2 = st.sigma(a2) as i64;
                    let c = f.mul(&sign(a1), &f.pow(alg.q21(), -s2 * st.tau(a1) as i64));
                    put(r, (a1, a2 - 1, a3), alg.scale(&c, &alg.y_pow(st.sigma(a2))));
                }
                if a3 > 0 {
                    let s3 = st.sigma(a3) as i64;
                    let c = f.mul(
                        &sign(a1 + a2),
                        &f.mul(
                            &f.pow(alg.q12(), s3 * st.tau(a1) as i64),
                            &f.pow(alg.q21(), -s3 * st.tau(a2) as i64),
                        ),
                    );
                    put(r, (a1, a2, a3 - 1), alg.scale(&c, &alg.x2_pow(st.sigma(a3))));
                }
                if !graded && a1 > 0 && a3 > 0 && a2 % 2 == 0 {
                    let w = dtilde_target(alg, (a1, a2, a3))?;
                    let dd = alg.right_divide(&w, &y)?;
                    put(r, (a1 - 1, a2 + 1, a3 - 1), dd);
                }
            }
            Ok(d)
        })
        .collect();
    let labels = (0..=n_max)
        .map(|n| p_generators(n).into_iter().map(|(a, b, c)| format!("Phi({a},{b},{c})")).collect())
        .collect();
    FreeComplex::new(ComplexKind::PComplex, labels, diffs?, graded)
}

/// A nonzero entry of some `∂_n ∂_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexFailure {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub residue: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub checked_degrees: Vec<usize>,
    pub failures: Vec<ComplexFailure>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.failures.iter().map(|x| x.degree).collect();
        d.dedup();
        d
    }
}

/// Checks `∂_n ∂_{n-1} = 0` for every `2 <= n <= top`.
pub fn verify_complex<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> Result<ComplexReport> {
    let degrees: Vec<usize> = (2..=c.top_degree()).collect();
    let per: Result<Vec<Vec<ComplexFailure>>> = degrees
        .par_iter()
        .map(|&n| {
            let p = c.differential(n).mul(alg, c.differential(n - 1))?;
            Ok(p.nonzero_entries()
                .map(|(row, col, e)| ComplexFailure { degree: n, row, col, residue: alg.render(e) })
                .collect())
        })
        .collect();
    Ok(ComplexReport { checked_degrees: degrees, failures: per?.into_iter().flatten().collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactnessStatus {
    Exact,
    NotExact,
    /// The top degree of a truncated complex.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeExactness {
    pub degree: usize,
    /// `dim_k` of the kernel of the map out of `P_n` (the augmentation at `n = 0`).
    pub kernel_dim: usize,
    /// `dim_k` of the image of `∂_{n+1}`; absent at the boundary.
    pub image_dim: Option<usize>,
    pub status: ExactnessStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub degrees: Vec<DegreeExactness>,
    /// `rank_k` of the flattened `∂_n`, indexed by `n` (entry 0 unused).
    pub flat_ranks: Vec<usize>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.status != ExactnessStatus::NotExact)
    }

    pub fn kernel_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.kernel_dim).collect()
    }
}

/// Exactness of `P_top -> ... -> P_0 -> k -> 0` at every degree below the top,
/// by rank-nullity on the flattened differentials.
pub fn verify_exactness<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> ExactnessReport {
    let top = c.top_degree();
    let d = alg.dim();
    let f = alg.field();
    let mut flat_ranks: Vec<usize> = (1..=top)
        .into_par_iter()
        .map(|n| sparse_rank(f, &c.differential(n).flatten(alg)))
        .collect();
    flat_ranks.insert(0, 0);
    let degrees = (0..=top)
        .map(|n| {
            let kernel_dim = if n == 0 { d - 1 } else { c.rank(n) * d - flat_ranks[n] };
            if n == top {
                DegreeExactness { degree: n, kernel_dim, image_dim: None, status: ExactnessStatus::Boundary }
            } else {
                let image = flat_ranks[n + 1];
                let status = if image == kernel_dim { ExactnessStatus::Exact } else { ExactnessStatus::NotExact };
                DegreeExactness { degree: n, kernel_dim, image_dim: Some(image), status }
            }
        })
        .collect();
    ExactnessReport { degrees, flat_ranks }
}

/// Whether every differential entry lies in the augmentation ideal.
pub fn is_minimal<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> bool {
    let f = alg.field();
    (1..=c.top_degree()).all(|n| c.differential(n).nonzero_entries().all(|(_, _, e)| f.is_zero(&alg.augmentation(e))))
}

/// Positions `(degree, row, col)` of differential entries that are nonzero
/// scalars.
pub fn scalar_entries<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=c.top_degree() {
        for (i, j, e) in c.differential(n).nonzero_entries() {
            let a = alg.augmentation(e);
            if !alg.field().is_zero(&a) && alg.sub(e, &alg.scalar(a)).is_zero() {
                out.push((n, i, j));
            }
        }
    }
    out
}

/// One valid generator for the closed forms of right division by `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DtildeCase {
    pub generator: (usize, usize, usize),
    /// Parity case 1 to 4.
    pub case: u8,
    /// Closed form times `y` equals generic division times `y`.
    pub matches: bool,
    /// Closed form and generic division are equal as elements.
    pub identical: bool,
    /// Case 4 only: the expansion in the reverse basis gives the same element.
    pub reverse_expansion_matches: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DtildeReport {
    pub cases: Vec<DtildeCase>,
}

impl DtildeReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.matches && c.reverse_expansion_matches != Some(false))
    }
}

/// Coefficients `k_i` of `[x1^(N-1), x2^(N-1)]_c = Σ k_i y^i x1^(N-1-i) x2^(N-1-i)`.
pub fn commutator_k_coefficients<F: Field>(alg: &Algebra<F>) -> Result<Vec<F::Elem>> {
    let f = alg.field();
    let n = alg.n();
    let comm = alg.braided_commutator(n - 1, n - 1)?;
    let mut used = 0;
    let mut ks = Vec::with_capacity(n - 1);
    for i in 1..n {
        let t = n - 1 - i;
        let idx = alg.index((t, i, t));
        let c = comm.coefficient(f, idx);
        if !f.is_zero(&c) {
            used += 1;
        }
        // y^i x1^t = q21^(it) x1^t y^i
        ks.push(f.mul(&c, &f.pow(alg.q21(), -((i * t) as i64))));
    }
    if used != comm.terms().len() {
        return Err(Error::NotDivisible("commutator has terms outside the expected shape".into()));
    }
    Ok(ks)
}

/// Coefficients `l_i` of `[x1^(N-1), x2^(N-1)]_c = Σ l_i y^i x2^(N-1-i) x1^(N-1-i)`.
pub fn commutator_l_coefficients<F: Field>(alg: &Algebra<F>) -> Result<Vec<F::Elem>> {
    let f = alg.field();
    let n = alg.n();
    let rev = alg.to_reverse_basis(&alg.braided_commutator(n - 1, n - 1)?)?;
    let mut used = 0;
    let mut ls = Vec::with_capacity(n - 1);
    for i in 1..n {
        let t = n - 1 - i;
        let c = rev.coefficient(f, alg.index((t, i, t)));
        if !f.is_zero(&c) {
            used += 1;
        }
        // y^i x2^t = q21^(-it) x2^t y^i
        ls.push(f.mul(&c, &f.pow(alg.q21(), (i * t) as i64)));
    }
    if used != rev.terms().len() {
        return Err(Error::NotDivisible("reverse expansion has unexpected terms".into()));
    }
    Ok(ls)
}

/// Compares the division by `y` used in `P` with the closed forms of the four
/// parity cases, for every `Φ(a1, a2, a3)` with `a2` even, `a1, a3 > 0` and
/// `a1 + a2 + a3 <= n_max`.
pub fn verify_dtilde_cases<F: Field>(alg: &Algebra<F>, n_max: usize) -> Result<DtildeReport> {
    if alg.is_word_presentation() || alg.mode() != AlgebraMode::Full {
        return Err(Error::WrongMode("right division by y needs the full algebra with N >= 3".into()));
    }
    let f = alg.field();
    let n = alg.n();
    let big = n as i64;
    let y = alg.y();
    let ks = commutator_k_coefficients(alg)?;
    let ls = commutator_l_coefficients(alg)?;
    let mut cases = Vec::new();
    for total in 2..=n_max {
        for g in p_generators(total) {
            let (a1, a2, a3) = g;
            if a1 == 0 || a3 == 0 || a2 % 2 == 1 {
                continue;
            }
            let w = dtilde_target(alg, g)?;
            let generic = alg.right_divide_generic(&w, &y)?;
            let h = (a2 / 2) as i64 * big;
            let (case, closed, reverse) = match (a1 % 2 == 1, a3 % 2 == 1) {
                (true, true) => (1, alg.scalar(f.neg(&f.pow(alg.q21(), -h))), None),
                (true, false) => {
                    let m = ((a1 - 1) / 2) as i64 * big;
                    let c = [
                        f.pow(alg.q12(), (big - 1) * m),
                        f.pow(alg.q21(), -(big - 1) * h),
                        alg.qbar().clone(),
                        f.pow(alg.q21(), -(big - 2)),
                        f.pow(alg.q21(), m),
                    ]
                    .iter()
                    .fold(f.one(), |acc, x| f.mul(&acc, x));
                    (2, alg.scale(&c, &alg.x2_pow(n - 2)), None)
                }
                (false, true) => (3, alg.scale(&f.pow(alg.q21(), -h), &alg.x1_pow(n - 2)), None),
                (false, false) => {
                    let m = ((a1 - 2) / 2) as i64 * big + 1;
                    let c = f.neg(
                        &[
                            f.pow(alg.q12(), (big - 1) * m),
                            f.pow(alg.q21(), -(big - 1) * h),
                            f.pow(alg.q21(), m),
                        ]
                        .iter()
                        .fold(f.one(), |acc, x| f.mul(&acc, x)),
                    );
                    let mut kexp = alg.zero();
                    let mut lexp = alg.zero();
                    for i in 1..n {
                        let t = n - 1 - i;
                        let ypow = alg.y_pow(i - 1);
                        let km = alg.mul(&ypow, &alg.mul(&alg.x1_pow(t), &alg.x2_pow(t)));
                        let lm = alg.mul(&ypow, &alg.mul(&alg.x2_pow(t), &alg.x1_pow(t)));
                        kexp = alg.add(&kexp, &alg.scale(&ks[i - 1], &km));
                        lexp = alg.add(&lexp, &alg.scale(&ls[i - 1], &lm));
                    }
                    let kd = alg.scale(&c, &kexp);
                    let ld = alg.scale(&c, &lexp);
                    (4, kd, Some(ld))
                }
            };
            let matches = alg.mul(&closed, &y) == w && alg.mul(&generic, &y) == w;
            let reverse_expansion_matches = reverse.map(|ld| alg.mul(&ld, &y) == alg.mul(&closed, &y));
            cases.push(DtildeCase {
                generator: g,
                case,
                matches,
                identical: closed == generic,
                reverse_expansion_matches,
            });
        }
    }
    Ok(DtildeReport { cases })
}
