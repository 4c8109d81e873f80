use rayon::prelude::*;
use serde::Serialize;

use super::{ChainMapLift, Convention, ExtClass, ExtContext, NamedGenerators};
use crate::error::{Error, Result};
use crate::linalg::{PivotOrder, Subspace};
use crate::scalars::Field;

/// Dimension of the `(p, q)` entry of the `E_2` page; independent of `p`.
pub fn e2_dimension(_p: usize, q: usize) -> usize {
    if q % 2 == 1 {
        q.div_ceil(2)
    } else {
        q + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Column {
    pub degree: usize,
    pub column_sum: usize,
    pub ext_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct E2Report {
    pub columns: Vec<E2Column>,
}

impl E2Report {
    pub fn passed(&self) -> bool {
        self.columns.iter().all(|c| c.column_sum == c.ext_dim)
    }
}

/// Compares `Σ_(p+q=n) e2_dimension(p, q)` with `dims[n]`.
pub fn e2_column_check(dims: &[usize]) -> E2Report {
    E2Report {
        columns: dims
            .iter()
            .enumerate()
            .map(|(n, &ext_dim)| E2Column {
                degree: n,
                column_sum: (0..=n).map(|q| e2_dimension(n - q, q)).sum(),
                ext_dim,
            })
            .collect(),
    }
}

/// Smallest `k` such that the `k`-th difference row of `xs` is constant.
fn difference_degree(xs: &[i64]) -> usize {
    let mut row = xs.to_vec();
    let mut k = 0;
    while row.len() > 1 && row.windows(2).any(|w| w[0] != w[1]) {
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        k += 1;
    }
    k
}

/// Polynomial growth degree plus one, read off exact difference tables of the
/// even- and odd-degree subsequences.
pub fn complexity_estimate(dims: &[usize]) -> Result<usize> {
    if dims.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "need dimensions through degree 4, got {} values",
            dims.len()
        )));
    }
    let seq: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
    let even: Vec<i64> = seq.iter().step_by(2).copied().collect();
    let odd: Vec<i64> = seq.iter().skip(1).step_by(2).copied().collect();
    Ok(difference_degree(&even).max(difference_degree(&odd)) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K2Degree {
    pub degree: usize,
    pub ext_dim: usize,
    pub spanned_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct K2Report {
    pub degrees: Vec<K2Degree>,
}

impl K2Report {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.ext_dim == d.spanned_dim)
    }
}

fn lifts_of<F: Field>(
    ctx: &ExtContext<'_, F>,
    classes: &[ExtClass<F::Elem>],
    top: usize,
) -> Result<Vec<ChainMapLift<F::Elem>>> {
    classes.par_iter().map(|c| ctx.lift(c, top.saturating_sub(c.degree))).collect()
}

/// Keeps the classes that are independent of the ones kept before them.
fn independent_subset<F: Field>(
    ctx: &ExtContext<'_, F>,
    n: usize,
    candidates: Vec<ExtClass<F::Elem>>,
) -> Result<Vec<ExtClass<F::Elem>>> {
    let f = ctx.algebra().field();
    let dim = ctx.dimension(n)?;
    let mut span = Subspace::zero(dim);
    let mut kept = Vec::new();
    for c in candidates {
        if kept.len() == dim {
            break;
        }
        let v = ctx.coordinates(&c)?;
        if !span.contains(f, &v) {
            let mut vs = span.basis().to_vec();
            vs.push(v);
            span = Subspace::from_vectors(f, dim, vs);
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Whether products of classes of degrees one and two span `Ext^n` for every
/// `n <= n_max`.
pub fn k2_spanning_check<F: Field>(ctx: &ExtContext<'_, F>, n_max: usize) -> Result<K2Report> {
    let n_max = n_max.min(ctx.max_degree());
    let f = ctx.algebra().field();
    let mut gens = ctx.cocycle_basis(1)?;
    if n_max >= 2 {
        gens.extend(ctx.cocycle_basis(2)?);
    }
    let lifts = lifts_of(ctx, &gens, n_max)?;
    let mut spans: Vec<Vec<ExtClass<F::Elem>>> = vec![vec![ctx.class(0, vec![f.one()])?]];
    let mut report = K2Report::default();
    for n in 1..=n_max {
        let candidates: Result<Vec<ExtClass<F::Elem>>> = gens
            .iter()
            .zip(&lifts)
            .filter(|(g, _)| g.degree <= n)
            .flat_map(|(g, l)| spans[n - g.degree].iter().map(move |s| (l, s)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(l, s)| ctx.compose(l, s))
            .collect();
        let kept = independent_subset(ctx, n, candidates?)?;
        report.degrees.push(K2Degree { degree: n, ext_dim: ctx.dimension(n)?, spanned_dim: kept.len() });
        spans.push(kept);
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub triples_checked: usize,
    /// Failing triples as generator names.
    pub failures: Vec<[String; 3]>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(uv)w = u(vw)` for every triple of named generators whose degrees add up
/// to at most the top computed degree.
pub fn associativity_check<F: Field>(
    ctx: &ExtContext<'_, F>,
    gens: &NamedGenerators<F::Elem>,
) -> Result<AssociativityReport> {
    // under the opposite convention the same set of triples is checked in reverse
    let top = ctx.max_degree();
    let lifts = lifts_of(ctx, &gens.classes, top)?;
    let k = gens.classes.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| gens.classes[i].degree + gens.classes[j].degree < top)
        .collect();
    let results: Result<Vec<(usize, Vec<[String; 3]>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (u, v) = (&gens.classes[i], &gens.classes[j]);
            let uv = ctx.compose(&lifts[i], v)?;
            let uv_lift = ctx.lift(&uv, top - uv.degree)?;
            let mut checked = 0;
            let mut bad = Vec::new();
            for (l, w) in gens.classes.iter().enumerate() {
                if u.degree + v.degree + w.degree > top {
                    continue;
                }
                checked += 1;
                let left = ctx.compose(&uv_lift, w)?;
                let vw = ctx.compose(&lifts[j], w)?;
                let right = ctx.compose(&lifts[i], &vw)?;
                if !ctx.classes_equal(&left, &right)? {
                    bad.push([gens.names[i].to_string(), gens.names[j].to_string(), gens.names[l].to_string()]);
                }
            }
            Ok((checked, bad))
        })
        .collect();
    let mut report = AssociativityReport::default();
    for (c, bad) in results? {
        report.triples_checked += c;
        report.failures.extend(bad);
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftIndependenceReport {
    pub pairs_checked: usize,
    pub failures: Vec<[String; 2]>,
}

impl LiftIndependenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Products of generator pairs from the canonical lift and from a lift with
/// rightmost pivots agree as classes.
pub fn lift_independence_check<F: Field>(
    ctx: &ExtContext<'_, F>,
    gens: &NamedGenerators<F::Elem>,
    convention: Convention,
) -> Result<LiftIndependenceReport> {
    let k = gens.classes.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| gens.classes[i].degree + gens.classes[j].degree <= ctx.max_degree())
        .collect();
    let results: Result<Vec<Option<[String; 2]>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (u, v) = (&gens.classes[i], &gens.classes[j]);
            let a = ctx.yoneda_product_with_order(u, v, convention, PivotOrder::Leftmost)?;
            let b = ctx.yoneda_product_with_order(u, v, convention, PivotOrder::Rightmost)?;
            Ok((!ctx.classes_equal(&a, &b)?).then(|| [gens.names[i].to_string(), gens.names[j].to_string()]))
        })
        .collect();
    let failures: Vec<[String; 2]> = results?.into_iter().flatten().collect();
    Ok(LiftIndependenceReport { pairs_checked: pairs.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyEntry {
    pub name: String,
    pub expect_zero: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub entries: Vec<NilpotencyEntry>,
}

impl NilpotencyReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// `a1, a2, c1, c2` and `c1 a2` square to zero, while `b1, by, b2` have
/// nonzero powers through degree `n_max`.
pub fn nilpotency_check<F: Field>(
    ctx: &ExtContext<'_, F>,
    gens: &NamedGenerators<F::Elem>,
    n_max: usize,
    convention: Convention,
) -> Result<NilpotencyReport> {
    let top = n_max.min(ctx.max_degree());
    let get = |s: &str| gens.get(s).ok_or_else(|| Error::InvalidParams(format!("missing generator {s}")));
    let mut entries = Vec::new();
    let mut squares: Vec<(String, ExtClass<F::Elem>)> =
        ["a1", "a2", "c1", "c2"].iter().map(|s| Ok((s.to_string(), get(s)?.clone()))).collect::<Result<_>>()?;
    if 3 <= top {
        squares.push(("c1a2".into(), ctx.yoneda_product(get("c1")?, get("a2")?, convention)?));
    }
    for (name, x) in &squares {
        if 2 * x.degree > top {
            continue;
        }
        let sq = ctx.yoneda_product(x, x, convention)?;
        entries.push(NilpotencyEntry { name: format!("({name})^2 = 0"), expect_zero: true, holds: ctx.is_zero(&sq)? });
    }
    for name in ["b1", "by", "b2"] {
        let b = get(name)?;
        let lift = ctx.lift(b, top.saturating_sub(2))?;
        let mut power = b.clone();
        let mut m = 1;
        loop {
            entries.push(NilpotencyEntry {
                name: format!("{name}^{m} != 0"),
                expect_zero: false,
                holds: !ctx.is_zero(&power)?,
            });
            if 2 * (m + 1) > top {
                break;
            }
            power = match convention {
                Convention::LeftThenRight => ctx.compose(&lift, &power)?,
                Convention::RightThenLeft => ctx.yoneda_product(&power, b, convention)?,
            };
            m += 1;
        }
    }
    Ok(NilpotencyReport { entries })
}
