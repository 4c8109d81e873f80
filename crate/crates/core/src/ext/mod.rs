//! Ext of the trivial module from a free resolution: cochain complex,
//! cohomology bases, chain-map lifts and Yoneda products.

mod appendix;
mod checks;
mod relations;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

pub use appendix::{verify_appendix_maps, verify_appendix_maps_n2, AppendixReport, SquareCheck};
pub use checks::{
    associativity_check, complexity_estimate, e2_column_check, e2_dimension, k2_spanning_check,
    lift_independence_check, nilpotency_check, AssociativityReport, E2Report, K2Report, LiftIndependenceReport,
    NilpotencyReport,
};
pub use relations::{
    named_generators, relations_for, verify_relations, Coefficient, NamedGenerators, Relation, RelationOutcome,
    RelationReport,
};

use crate::error::{Error, Result};
use crate::linalg::{kernel, solve, KMatrix, LinearSolver, PivotOrder, QuotientCoordinates, Subspace};
use crate::qalgebra::Algebra;
use crate::resolution::{flatten_row, unflatten_row, AlgMatrix, FreeComplex};
use crate::scalars::Field;

/// Which side is lifted when composing two classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `u v = v ∘ lift(u)`.
    #[default]
    LeftThenRight,
    /// `u v = u ∘ lift(v)`.
    RightThenLeft,
}

impl Convention {
    pub fn opposite(self) -> Self {
        match self {
            Convention::LeftThenRight => Convention::RightThenLeft,
            Convention::RightThenLeft => Convention::LeftThenRight,
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Convention::LeftThenRight),
            "right" => Ok(Convention::RightThenLeft),
            _ => Err(Error::Parse(format!("unknown convention {s:?}; expected left or right"))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::LeftThenRight => "left",
            Convention::RightThenLeft => "right",
        })
    }
}

/// `Hom_R(P_n, k)` with the maps induced by the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex<E> {
    dims: Vec<usize>,
    /// `induced[n] = ε(∂_(n+1))`, acting on column vectors `k^(r_n) -> k^(r_(n+1))`.
    induced: Vec<KMatrix<E>>,
}

impl<E: Clone> CochainComplex<E> {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The coboundary `k^(r_n) -> k^(r_(n+1))`, for `n < top`.
    pub fn induced(&self, n: usize) -> &KMatrix<E> {
        &self.induced[n]
    }
}

pub fn hom_complex<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> CochainComplex<F::Elem> {
    CochainComplex {
        dims: c.ranks().to_vec(),
        induced: (1..=c.top_degree()).map(|n| c.differential(n).augment(alg)).collect(),
    }
}

/// A cohomology class, stored through a representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass<E> {
    pub degree: usize,
    pub representative: Vec<E>,
}

/// Chain map `F_i : P_(m+i) -> P_i` covering a cocycle of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapLift<E> {
    pub source_degree: usize,
    pub maps: Vec<AlgMatrix<E>>,
}

impl<E: Clone> ChainMapLift<E> {
    pub fn steps(&self) -> usize {
        self.maps.len() - 1
    }
}

struct DegreeData<F: Field> {
    cocycles: Subspace<F::Elem>,
    coboundaries: Subspace<F::Elem>,
    quotient: QuotientCoordinates<F>,
}

/// Everything needed to compute in `Ext` from one resolution. Per-degree data
/// and lifting solvers are built on first use.
pub struct ExtContext<'a, F: Field> {
    alg: &'a Algebra<F>,
    complex: &'a FreeComplex<F::Elem>,
    cochains: CochainComplex<F::Elem>,
    degrees: Vec<OnceLock<Result<DegreeData<F>, String>>>,
    solvers: Vec<OnceLock<LinearSolver<F>>>,
    rightmost: Vec<OnceLock<LinearSolver<F>>>,
}

impl<'a, F: Field> ExtContext<'a, F> {
    pub fn new(alg: &'a Algebra<F>, complex: &'a FreeComplex<F::Elem>) -> Self {
        let top = complex.top_degree();
        ExtContext {
            alg,
            complex,
            cochains: hom_complex(alg, complex),
            degrees: (0..=top).map(|_| OnceLock::new()).collect(),
            solvers: (0..=top).map(|_| OnceLock::new()).collect(),
            rightmost: (0..=top).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn algebra(&self) -> &'a Algebra<F> {
        self.alg
    }

    pub fn complex(&self) -> &'a FreeComplex<F::Elem> {
        self.complex
    }

    pub fn cochains(&self) -> &CochainComplex<F::Elem> {
        &self.cochains
    }

    /// Highest degree in which `Ext` is determined: one below the top, or the
    /// top itself when the complex is minimal.
    pub fn max_degree(&self) -> usize {
        let top = self.complex.top_degree();
        if self.complex.is_minimal() {
            top
        } else {
            top.saturating_sub(1)
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::OutOfRange { degree: n, max: self.max_degree() });
        }
        Ok(())
    }

    fn degree_data(&self, n: usize) -> Result<&DegreeData<F>> {
        self.check_degree(n)?;
        let f = self.alg.field();
        let slot = self.degrees[n].get_or_init(|| {
            let r = self.complex.rank(n);
            let cocycles = if n < self.complex.top_degree() {
                kernel(f, self.cochains.induced(n))
            } else {
                // minimal tail: the next coboundary would vanish
                Subspace::whole(f, r)
            };
            let coboundaries = if n == 0 {
                Subspace::zero(r)
            } else {
                Subspace::from_vectors(f, r, self.cochains.induced(n - 1).transpose().to_rows())
            };
            QuotientCoordinates::new(f, &coboundaries, &cocycles)
                .map(|quotient| DegreeData { cocycles, coboundaries, quotient })
                .map_err(|e| e.to_string())
        });
        slot.as_ref().map_err(|e| Error::DimensionMismatch(e.clone()))
    }

    pub fn dimension(&self, n: usize) -> Result<usize> {
        Ok(self.degree_data(n)?.quotient.dim())
    }

    /// `dim Ext^n` for `n = 0..=max_degree`.
    pub fn ext_dimensions(&self) -> Result<Vec<usize>> {
        (0..=self.max_degree()).into_par_iter().map(|n| self.dimension(n)).collect()
    }

    pub fn cocycles(&self, n: usize) -> Result<&Subspace<F::Elem>> {
        Ok(&self.degree_data(n)?.cocycles)
    }

    pub fn coboundaries(&self, n: usize) -> Result<&Subspace<F::Elem>> {
        Ok(&self.degree_data(n)?.coboundaries)
    }

    /// Basis of `Ext^n`: echelon cocycles independent modulo coboundaries.
    pub fn cocycle_basis(&self, n: usize) -> Result<Vec<ExtClass<F::Elem>>> {
        Ok(self
            .degree_data(n)?
            .quotient
            .representatives()
            .iter()
            .map(|v| ExtClass { degree: n, representative: v.clone() })
            .collect())
    }

    /// The class of a cocycle given by its values on the generators of `P_n`.
    pub fn class(&self, n: usize, representative: Vec<F::Elem>) -> Result<ExtClass<F::Elem>> {
        let data = self.degree_data(n)?;
        if representative.len() != self.complex.rank(n) || !data.cocycles.contains(self.alg.field(), &representative) {
            return Err(Error::NotCocycle(n));
        }
        Ok(ExtClass { degree: n, representative })
    }

    /// Coordinates in the basis of [`ExtContext::cocycle_basis`].
    pub fn coordinates(&self, c: &ExtClass<F::Elem>) -> Result<Vec<F::Elem>> {
        self.degree_data(c.degree)?
            .quotient
            .coordinates(&c.representative)
            .map_err(|_| Error::NotCocycle(c.degree))
    }

    pub fn is_zero(&self, c: &ExtClass<F::Elem>) -> Result<bool> {
        let f = self.alg.field();
        Ok(self.coordinates(c)?.iter().all(|x| f.is_zero(x)))
    }

    pub fn classes_equal(&self, a: &ExtClass<F::Elem>, b: &ExtClass<F::Elem>) -> Result<bool> {
        if a.degree != b.degree {
            return Ok(false);
        }
        Ok(self.coordinates(a)? == self.coordinates(b)?)
    }

    pub fn zero_class(&self, n: usize) -> Result<ExtClass<F::Elem>> {
        self.check_degree(n)?;
        Ok(ExtClass { degree: n, representative: vec![self.alg.field().zero(); self.complex.rank(n)] })
    }

    /// `Σ c_i u_i` for classes of one degree.
    pub fn combine(&self, n: usize, terms: &[(F::Elem, &ExtClass<F::Elem>)]) -> Result<ExtClass<F::Elem>> {
        let f = self.alg.field();
        let mut out = self.zero_class(n)?;
        for (c, u) in terms {
            if u.degree != n {
                return Err(Error::DimensionMismatch(format!("class of degree {} in a degree {n} sum", u.degree)));
            }
            for (acc, x) in out.representative.iter_mut().zip(&u.representative) {
                f.add_mul_assign(acc, c, x);
            }
        }
        Ok(out)
    }

    fn solver(&self, i: usize, order: PivotOrder) -> &LinearSolver<F> {
        let slots = match order {
            PivotOrder::Leftmost => &self.solvers,
            PivotOrder::Rightmost => &self.rightmost,
        };
        slots[i].get_or_init(|| {
            LinearSolver::with_order(self.alg.field(), &self.complex.differential(i).flatten(self.alg).transpose(), order)
        })
    }

    /// Solves `X ∂_i = targets` row by row over `R`.
    fn solve_through(&self, i: usize, targets: &AlgMatrix<F::Elem>, order: PivotOrder) -> Result<AlgMatrix<F::Elem>> {
        let solver = self.solver(i, order);
        let rows: Result<Vec<Vec<_>>> = (0..targets.rows())
            .into_par_iter()
            .map(|r| {
                let b = flatten_row(self.alg, targets.row(r));
                let x = solver.solve(&b).map_err(|e| match e {
                    Error::Inconsistent => Error::LiftFailure(i),
                    other => other,
                })?;
                Ok(unflatten_row(self.alg, &x))
            })
            .collect();
        AlgMatrix::from_rows(self.complex.rank(i), rows?)
    }

    /// Extends `f0 : Q_m -> P_0` to a chain map `Q_(m+i) -> P_i` for
    /// `i <= steps`, where `Q` is `source` (which may be this complex).
    pub fn extend_chain_map(
        &self,
        source: &FreeComplex<F::Elem>,
        m: usize,
        f0: AlgMatrix<F::Elem>,
        steps: usize,
        order: PivotOrder,
    ) -> Result<ChainMapLift<F::Elem>> {
        if m + steps > source.top_degree() || steps > self.complex.top_degree() {
            return Err(Error::OutOfRange { degree: m + steps, max: source.top_degree() });
        }
        let mut maps = vec![f0];
        for i in 1..=steps {
            let targets = source.differential(m + i).mul(self.alg, &maps[i - 1])?;
            maps.push(self.solve_through(i, &targets, order)?);
        }
        Ok(ChainMapLift { source_degree: m, maps })
    }

    /// The canonical lift of a class through `steps` degrees.
    pub fn lift(&self, c: &ExtClass<F::Elem>, steps: usize) -> Result<ChainMapLift<F::Elem>> {
        self.lift_with_order(c, steps, PivotOrder::Leftmost)
    }

    pub fn lift_with_order(
        &self,
        c: &ExtClass<F::Elem>,
        steps: usize,
        order: PivotOrder,
    ) -> Result<ChainMapLift<F::Elem>> {
        let f0 = AlgMatrix::from_rows(
            1,
            c.representative.iter().map(|x| vec![self.alg.scalar(x.clone())]).collect(),
        )?;
        self.extend_chain_map(self.complex, c.degree, f0, steps, order)
    }

    /// `psi ∘ F_n` for a lift `F` and a class `psi` of degree `n`.
    pub fn compose(&self, lift: &ChainMapLift<F::Elem>, psi: &ExtClass<F::Elem>) -> Result<ExtClass<F::Elem>> {
        let n = psi.degree;
        if n > lift.steps() {
            return Err(Error::OutOfRange { degree: n, max: lift.steps() });
        }
        let degree = lift.source_degree + n;
        self.check_degree(degree)?;
        let e = lift.maps[n].augment(self.alg);
        Ok(ExtClass { degree, representative: e.mul_vec(self.alg.field(), &psi.representative) })
    }

    /// The Yoneda product `u v`.
    pub fn yoneda_product(
        &self,
        u: &ExtClass<F::Elem>,
        v: &ExtClass<F::Elem>,
        convention: Convention,
    ) -> Result<ExtClass<F::Elem>> {
        self.yoneda_product_with_order(u, v, convention, PivotOrder::Leftmost)
    }

    pub fn yoneda_product_with_order(
        &self,
        u: &ExtClass<F::Elem>,
        v: &ExtClass<F::Elem>,
        convention: Convention,
        order: PivotOrder,
    ) -> Result<ExtClass<F::Elem>> {
        self.check_degree(u.degree + v.degree)?;
        match convention {
            Convention::LeftThenRight => self.compose(&self.lift_with_order(u, v.degree, order)?, v),
            Convention::RightThenLeft => self.compose(&self.lift_with_order(v, u.degree, order)?, u),
        }
    }

    /// Product from a precomputed lift of the lifted factor.
    pub fn product_with_lift(
        &self,
        lifted: &ChainMapLift<F::Elem>,
        other: &ExtClass<F::Elem>,
    ) -> Result<ExtClass<F::Elem>> {
        self.compose(lifted, other)
    }

    /// Checks `F_i ∂_i = ∂_(m+i) F_(i-1)` for every stored step.
    pub fn verify_chain_map(&self, source: &FreeComplex<F::Elem>, lift: &ChainMapLift<F::Elem>) -> Result<bool> {
        for i in 1..lift.maps.len() {
            let lhs = lift.maps[i].mul(self.alg, self.complex.differential(i))?;
            let rhs = source.differential(lift.source_degree + i).mul(self.alg, &lift.maps[i - 1])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The comparison map `source -> self` over the identity of `k`.
    pub fn comparison_map(&self, source: &FreeComplex<F::Elem>, steps: usize) -> Result<ChainMapLift<F::Elem>> {
        let f0 = AlgMatrix::from_rows(1, vec![vec![self.alg.one()]])?;
        self.extend_chain_map(source, 0, f0, steps, PivotOrder::Leftmost)
    }

    /// Classes of this context that pull back along `comparison` to the given
    /// cocycles of a minimal source complex.
    pub fn transfer_from_minimal(
        &self,
        comparison: &ChainMapLift<F::Elem>,
        classes: &[ExtClass<F::Elem>],
    ) -> Result<Vec<ExtClass<F::Elem>>> {
        let f = self.alg.field();
        classes
            .iter()
            .map(|c| {
                let n = c.degree;
                if n > comparison.steps() {
                    return Err(Error::OutOfRange { degree: n, max: comparison.steps() });
                }
                let pull = comparison.maps[n].augment(self.alg);
                let z = self.cocycles(n)?;
                let zt = KMatrix::from_rows(pull.cols(), z.basis().to_vec())?;
                let a = pull.mul(f, &zt.transpose())?;
                let coeff = solve(f, &a, &c.representative)?;
                let rep = zt.transpose().mul_vec(f, &coeff);
                Ok(ExtClass { degree: n, representative: rep })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::AlgebraMode;
    use crate::resolution::{build_minimal_segment, build_p_complex, build_resolution_n2};
    use crate::scalars::PrimeField;

    #[test]
    fn n2_dims_and_products() {
        let alg = Algebra::from_exponents(PrimeField::new(7, 1).unwrap(), 2, 0, AlgebraMode::Full).unwrap();
        let c = build_resolution_n2(&alg, 5).unwrap();
        let ctx = ExtContext::new(&alg, &c);
        assert_eq!(ctx.ext_dimensions().unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let a = ctx.cocycle_basis(1).unwrap();
        let b = ctx.cocycle_basis(2).unwrap()[1].clone();
        let conv = Convention::LeftThenRight;
        assert!(ctx.is_zero(&ctx.yoneda_product(&a[0], &a[1], conv).unwrap()).unwrap());
        assert!(ctx.is_zero(&ctx.yoneda_product(&a[1], &a[0], conv).unwrap()).unwrap());
        let ab = ctx.yoneda_product(&a[0], &b, conv).unwrap();
        let ba = ctx.yoneda_product(&b, &a[0], conv).unwrap();
        assert!(ctx.classes_equal(&ab, &ba).unwrap());
        assert!(!ctx.is_zero(&ab).unwrap());
    }

    #[test]
    fn p_complex_dims_n3() {
        let alg = Algebra::from_exponents(PrimeField::new(7, 3).unwrap(), 3, 1, AlgebraMode::Full).unwrap();
        let p = build_p_complex(&alg, 7).unwrap();
        let ctx = ExtContext::new(&alg, &p);
        assert_eq!(ctx.ext_dimensions().unwrap(), vec![1, 2, 5, 7, 12, 15, 22]);
    }

    #[test]
    fn transfer_segment_to_p() {
        let alg = Algebra::from_exponents(PrimeField::new(7, 3).unwrap(), 3, 1, AlgebraMode::Full).unwrap();
        let p = build_p_complex(&alg, 5).unwrap();
        let seg = build_minimal_segment(&alg).unwrap();
        let pctx = ExtContext::new(&alg, &p);
        let sctx = ExtContext::new(&alg, &seg);
        let g = pctx.comparison_map(&seg, 4).unwrap();
        assert!(pctx.verify_chain_map(&seg, &g).unwrap());
        let a = sctx.cocycle_basis(1).unwrap();
        let moved = pctx.transfer_from_minimal(&g, &a).unwrap();
        assert_eq!(moved.len(), 2);
        assert!(!pctx.is_zero(&moved[0]).unwrap());
        // a1 a1 = 0 on both sides
        let sq = pctx.yoneda_product(&moved[0], &moved[0], Convention::LeftThenRight).unwrap();
        assert!(pctx.is_zero(&sq).unwrap());
    }
}
