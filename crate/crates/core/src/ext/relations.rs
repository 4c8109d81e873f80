use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{ChainMapLift, Convention, ExtClass, ExtContext};
use crate::error::{Error, Result};
use crate::resolution::ComplexKind;
use crate::scalars::Field;

/// A monomial `q12^a qbar^b q21^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub q12: i64,
    pub qbar: i64,
    pub q21: i64,
}

impl Coefficient {
    pub const ONE: Coefficient = Coefficient { q12: 0, qbar: 0, q21: 0 };

    pub fn q12(k: i64) -> Self {
        Coefficient { q12: k, ..Self::ONE }
    }

    pub fn evaluate<F: Field>(&self, ctx: &ExtContext<'_, F>) -> F::Elem {
        let alg = ctx.algebra();
        let f = alg.field();
        let a = f.mul(&f.pow(alg.q12(), self.q12), &f.pow(alg.qbar(), self.qbar));
        f.mul(&a, &f.pow(alg.q21(), self.q21))
    }
}

/// `Σ lhs = Σ rhs`, each side a sum of scaled products of two named classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<(Coefficient, [&'static str; 2])>,
    pub rhs: Vec<(Coefficient, [&'static str; 2])>,
}

fn rel(
    name: impl Into<String>,
    lhs: Vec<(Coefficient, [&'static str; 2])>,
    rhs: Vec<(Coefficient, [&'static str; 2])>,
) -> Relation {
    Relation { name: name.into(), lhs, rhs }
}

/// The defining relations of `Ext` in the presentation by `a1, a2` (degree 1)
/// and `b` or `b1, c1, by, c2, b2` (degree 2).
pub fn relations_for(n: usize) -> Vec<Relation> {
    let one = Coefficient::ONE;
    let q = Coefficient::q12;
    let w = |u: &'static str, v: &'static str| [u, v];
    if n == 2 {
        return vec![
            rel("a1a2=0", vec![(one, w("a1", "a2"))], vec![]),
            rel("a2a1=0", vec![(one, w("a2", "a1"))], vec![]),
            rel("a1b=ba1", vec![(one, w("a1", "b"))], vec![(one, w("b", "a1"))]),
            rel("a2b=ba2", vec![(one, w("a2", "b"))], vec![(one, w("b", "a2"))]),
        ];
    }
    let big = n as i64;
    let qb = |k: i64, l: i64| Coefficient { qbar: k, q12: l, q21: 0 };
    let qb21 = |k: i64, l: i64| Coefficient { qbar: k, q12: 0, q21: l };
    let mut out = vec![
        rel("a1^2=0", vec![(one, w("a1", "a1"))], vec![]),
        rel("a2^2=0", vec![(one, w("a2", "a2"))], vec![]),
        rel("a1a2=0", vec![(one, w("a1", "a2"))], vec![]),
        rel("a2a1=0", vec![(one, w("a2", "a1"))], vec![]),
        rel("a1b1=b1a1", vec![(one, w("a1", "b1"))], vec![(one, w("b1", "a1"))]),
        rel("a1by=q12^N bya1", vec![(one, w("a1", "by"))], vec![(q(big), w("by", "a1"))]),
        rel("a1b2=q12^N b2a1", vec![(one, w("a1", "b2"))], vec![(q(big), w("b2", "a1"))]),
        rel("q12^N a2b1=b1a2", vec![(q(big), w("a2", "b1"))], vec![(one, w("b1", "a2"))]),
        rel("q12^N a2by=bya2", vec![(q(big), w("a2", "by"))], vec![(one, w("by", "a2"))]),
        rel("a2b2=b2a2", vec![(one, w("a2", "b2"))], vec![(one, w("b2", "a2"))]),
        rel("a1c2=qbar q12^2 c2a1", vec![(one, w("a1", "c2"))], vec![(qb(1, 2), w("c2", "a1"))]),
        rel("a2c1=qbar q21^2 c1a2", vec![(one, w("a2", "c1"))], vec![(qb21(1, 2), w("c1", "a2"))]),
        rel("c1a2=c2a1", vec![(one, w("c1", "a2"))], vec![(one, w("c2", "a1"))]),
        rel("b1by=q12^(N^2) byb1", vec![(one, w("b1", "by"))], vec![(q(big * big), w("by", "b1"))]),
        rel("b1b2=q12^(N^2) b2b1", vec![(one, w("b1", "b2"))], vec![(q(big * big), w("b2", "b1"))]),
        rel("byb2=q12^(N^2) b2by", vec![(one, w("by", "b2"))], vec![(q(big * big), w("b2", "by"))]),
        rel("q12^N c1b1=b1c1", vec![(q(big), w("c1", "b1"))], vec![(one, w("b1", "c1"))]),
        rel("c1by=q12^N byc1", vec![(one, w("c1", "by"))], vec![(q(big), w("by", "c1"))]),
        rel("c1b2=q12^(2N) b2c1", vec![(one, w("c1", "b2"))], vec![(q(2 * big), w("b2", "c1"))]),
        rel("q12^(2N) c2b1=b1c2", vec![(q(2 * big), w("c2", "b1"))], vec![(one, w("b1", "c2"))]),
        rel("q12^N c2by=byc2", vec![(q(big), w("c2", "by"))], vec![(one, w("by", "c2"))]),
        rel("c2b2=q12^N b2c2", vec![(one, w("c2", "b2"))], vec![(q(big), w("b2", "c2"))]),
    ];
    if n == 3 {
        out.extend([
            rel("a1c1=qbar^2 q12 c1a1", vec![(one, w("a1", "c1"))], vec![(qb(2, 1), w("c1", "a1"))]),
            rel("qbar^2 q12 a2c2=c2a2", vec![(qb(2, 1), w("a2", "c2"))], vec![(one, w("c2", "a2"))]),
            rel("qbar^2 q12 a2b1=a1c1", vec![(qb(2, 1), w("a2", "b1"))], vec![(one, w("a1", "c1"))]),
            rel("a1b2=qbar^2 q12 a2c2", vec![(one, w("a1", "b2"))], vec![(qb(2, 1), w("a2", "c2"))]),
            rel("b1c2=q12^6 c1^2", vec![(one, w("b1", "c2"))], vec![(q(6), w("c1", "c1"))]),
            rel("q12^6 b2c1=c2^2", vec![(q(6), w("b2", "c1"))], vec![(one, w("c2", "c2"))]),
            rel("b1b2=q12^3 c1c2", vec![(one, w("b1", "b2"))], vec![(q(3), w("c1", "c2"))]),
            rel("c1c2=q12^3 c2c1", vec![(one, w("c1", "c2"))], vec![(q(3), w("c2", "c1"))]),
        ]);
    } else {
        for [u, v] in [
            ["a1", "c1"],
            ["c1", "a1"],
            ["c2", "a2"],
            ["a2", "c2"],
            ["c1", "c1"],
            ["c2", "c2"],
            ["c1", "c2"],
            ["c2", "c1"],
        ] {
            out.push(rel(format!("{u}{v}=0"), vec![(one, [u, v])], vec![]));
        }
    }
    out
}

/// The named generators in degrees 1 and 2 of a minimal complex: the
/// functions dual to the generators of `P_1` and `P_2`.
#[derive(Clone, Debug)]
pub struct NamedGenerators<E> {
    pub names: Vec<&'static str>,
    pub classes: Vec<ExtClass<E>>,
}

impl<E: Clone> NamedGenerators<E> {
    pub fn get(&self, name: &str) -> Option<&ExtClass<E>> {
        self.names.iter().position(|n| *n == name).map(|i| &self.classes[i])
    }

    pub fn with_classes(&self, classes: Vec<ExtClass<E>>) -> Self {
        NamedGenerators { names: self.names.clone(), classes }
    }
}

pub fn named_generators<F: Field>(ctx: &ExtContext<'_, F>) -> Result<NamedGenerators<F::Elem>> {
    let f = ctx.algebra().field();
    let unit = |n: usize, r: usize, i: usize| {
        let mut v = vec![f.zero(); r];
        v[i] = f.one();
        ctx.class(n, v)
    };
    match ctx.complex().kind {
        ComplexKind::N2 => Ok(NamedGenerators {
            names: vec!["a1", "a2", "b"],
            classes: vec![unit(1, 2, 0)?, unit(1, 2, 1)?, unit(2, 3, 1)?],
        }),
        ComplexKind::MinimalSegment => {
            let names = vec!["a1", "a2", "b1", "c1", "by", "c2", "b2"];
            let mut classes = vec![unit(1, 2, 0)?, unit(1, 2, 1)?];
            for i in 0..5 {
                classes.push(unit(2, 5, i)?);
            }
            Ok(NamedGenerators { names, classes })
        }
        _ => Err(Error::WrongMode("named generators live on a minimal complex".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub name: String,
    pub holds: bool,
    /// Only evaluated when the relation fails under the requested convention.
    pub holds_opposite: Option<bool>,
    /// The convention under which the relation holds, if any.
    pub validating_convention: Option<Convention>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub convention: Convention,
    pub outcomes: Vec<RelationOutcome>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.outcomes.iter().filter(|o| !o.holds).map(|o| o.name.as_str()).collect()
    }
}

struct ProductTable<'c, 'a, F: Field> {
    ctx: &'c ExtContext<'a, F>,
    gens: &'c NamedGenerators<F::Elem>,
    lifts: HashMap<&'static str, ChainMapLift<F::Elem>>,
}

impl<'c, 'a, F: Field> ProductTable<'c, 'a, F> {
    fn new(ctx: &'c ExtContext<'a, F>, gens: &'c NamedGenerators<F::Elem>) -> Result<Self> {
        let max = ctx.max_degree();
        let top_gen = gens.classes.iter().map(|c| c.degree).max().unwrap_or(0);
        let lifts: Result<Vec<_>> = gens
            .names
            .par_iter()
            .zip(&gens.classes)
            .map(|(name, c)| {
                let steps = top_gen.min(max.saturating_sub(c.degree));
                Ok((*name, ctx.lift(c, steps)?))
            })
            .collect();
        Ok(ProductTable { ctx, gens, lifts: lifts?.into_iter().collect() })
    }

    fn product(&self, u: &str, v: &str, convention: Convention) -> Result<ExtClass<F::Elem>> {
        let missing = |s: &str| Error::InvalidParams(format!("unknown generator {s}"));
        let (lifted, other) = match convention {
            Convention::LeftThenRight => (u, v),
            Convention::RightThenLeft => (v, u),
        };
        let lift = self.lifts.get(lifted).ok_or_else(|| missing(lifted))?;
        let other = self.gens.get(other).ok_or_else(|| missing(other))?;
        self.ctx.compose(lift, other)
    }

    fn holds(&self, r: &Relation, convention: Convention) -> Result<bool> {
        let f = self.ctx.algebra().field();
        let mut terms = Vec::new();
        for (c, [u, v]) in &r.lhs {
            terms.push((c.evaluate(self.ctx), self.product(u, v, convention)?));
        }
        for (c, [u, v]) in &r.rhs {
            terms.push((f.neg(&c.evaluate(self.ctx)), self.product(u, v, convention)?));
        }
        let degree = terms.first().map(|t| t.1.degree).unwrap_or(0);
        let refs: Vec<(F::Elem, &ExtClass<F::Elem>)> = terms.iter().map(|(c, u)| (c.clone(), u)).collect();
        self.ctx.is_zero(&self.ctx.combine(degree, &refs)?)
    }
}

/// Evaluates each relation as an identity between classes. A relation that
/// fails under `convention` is retried under the opposite one.
pub fn verify_relations<F: Field>(
    ctx: &ExtContext<'_, F>,
    gens: &NamedGenerators<F::Elem>,
    relations: &[Relation],
    convention: Convention,
) -> Result<RelationReport> {
    let table = ProductTable::new(ctx, gens)?;
    let outcomes: Result<Vec<RelationOutcome>> = relations
        .par_iter()
        .map(|r| {
            let holds = table.holds(r, convention)?;
            let holds_opposite = if holds { None } else { Some(table.holds(r, convention.opposite())?) };
            let validating_convention = if holds {
                Some(convention)
            } else if holds_opposite == Some(true) {
                Some(convention.opposite())
            } else {
                None
            };
            Ok(RelationOutcome { name: r.name.clone(), holds, holds_opposite, validating_convention })
        })
        .collect();
    Ok(RelationReport { convention, outcomes: outcomes? })
}
