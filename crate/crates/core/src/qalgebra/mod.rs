//! The Nichols algebra `R` of type `A_2` and its associated graded algebra,
//! with multiplication in the PBW basis `x1^a y^b x2^c`, `0 <= a, b, c < N`.
//!
//! For `N = 2` the algebra has a different presentation and is handled by an
//! eight-element word basis instead.

mod text;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, SparseMatrix};
use crate::scalars::Field;

/// Whether the `y`-correction in `x2 x1` is kept (`Full`, the algebra `R`) or
/// dropped (`Graded`, its associated graded algebra).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraMode {
    #[default]
    Full,
    Graded,
}

impl FromStr for AlgebraMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(AlgebraMode::Full),
            "graded" => Ok(AlgebraMode::Graded),
            _ => Err(Error::Parse(format!("unknown mode {s:?}; expected full or graded"))),
        }
    }
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraMode::Full => "full",
            AlgebraMode::Graded => "graded",
        })
    }
}

/// Braiding scalars: `q11 = q22 = qbar` of order `N` and `q12 q21 qbar = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingParams<E> {
    pub n: usize,
    pub qbar: E,
    pub q12: E,
    pub q21: E,
    pub mode: AlgebraMode,
}

impl<E: Clone> BraidingParams<E> {
    pub fn new<F: Field<Elem = E>>(
        field: &F,
        n: usize,
        qbar: E,
        q12: E,
        q21: E,
        mode: AlgebraMode,
    ) -> Result<Self> {
        if n < 2 || (n > 2 && n.is_multiple_of(2)) {
            return Err(Error::InvalidParams(format!("N must be 2 or odd and at least 3, got {n}")));
        }
        if n == 2 && mode == AlgebraMode::Graded {
            return Err(Error::InvalidParams("graded mode is only defined for N >= 3".into()));
        }
        if field.is_zero(&q12) || field.is_zero(&q21) {
            return Err(Error::InvalidBraiding("braiding scalars must be nonzero".into()));
        }
        if field.order(&qbar).ok() != Some(n as u64) {
            return Err(Error::InvalidBraiding(format!("qbar = {} does not have order {n}", field.render(&qbar))));
        }
        if !field.is_one(&field.mul(&field.mul(&q12, &q21), &qbar)) {
            return Err(Error::InvalidBraiding("q12 * q21 * qbar must equal 1".into()));
        }
        Ok(BraidingParams { n, qbar, q12, q21, mode })
    }

    /// `qbar = ζ^(L/N)`, `q12 = ζ^k`, `q21 = (qbar q12)^-1`.
    ///
    /// For `N = 2` the scalar `qbar = -1` lies in every field and the root
    /// order is unconstrained.
    pub fn from_exponents<F: Field<Elem = E>>(field: &F, n: usize, q12_exp: i64, mode: AlgebraMode) -> Result<Self> {
        let l = field.root_order();
        let qbar = if n == 2 {
            field.from_i64(-1)
        } else {
            if n == 0 || !l.is_multiple_of(n as u64) {
                let suggestion = if n > 0 { format!("; the smallest admissible L is {n}") } else { String::new() };
                return Err(Error::InvalidParams(format!(
                    "root order L = {l} is not divisible by N = {n}, so qbar of order N is not in the field{suggestion}"
                )));
            }
            field.root_of_unity(n as u64)?
        };
        let q12 = field.root_pow(q12_exp);
        let q21 = field.inv(&field.mul(&qbar, &q12)).expect("roots of unity are invertible");
        Self::new(field, n, qbar, q12, q21, mode)
    }
}

/// PBW exponents `(a1, a2, a3)` of `x1^a1 y^a2 x2^a3`.
pub type Monomial = (usize, usize, usize);

/// A finite linear combination of basis elements, sorted by basis index, with
/// no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement<E> {
    terms: Vec<(usize, E)>,
}

impl<E> Default for AlgebraElement<E> {
    fn default() -> Self {
        AlgebraElement { terms: Vec::new() }
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[(usize, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient<F: Field<Elem = E>>(&self, f: &F, index: usize) -> E {
        match self.terms.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => f.zero(),
        }
    }

    /// Element with coordinates `dense` in the algebra's basis.
    pub fn from_dense<F: Field<Elem = E>>(f: &F, dense: Vec<E>) -> Self {
        AlgebraElement {
            terms: dense.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Pbw,
    Words,
}

const WORDS: [&str; 8] = ["", "1", "2", "12", "21", "121", "212", "1212"];

/// A finite-dimensional algebra with a fixed basis and an eagerly computed
/// multiplication table.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    params: BraidingParams<F::Elem>,
    kind: Kind,
    dim: usize,
    /// `table[i][j]` is `b_i * b_j`.
    table: Vec<Vec<AlgebraElement<F::Elem>>>,
    /// Solver for coordinates in the reverse basis `x2^a3 y^a2 x1^a1`.
    reverse: Option<(Vec<AlgebraElement<F::Elem>>, LinearSolver<F>)>,
}

impl<F: Field> Algebra<F> {
    pub fn new(field: F, params: BraidingParams<F::Elem>) -> Result<Self> {
        let params = BraidingParams::new(
            &field,
            params.n,
            params.qbar,
            params.q12,
            params.q21,
            params.mode,
        )?;
        let mut alg = if params.n == 2 {
            Algebra { field, params, kind: Kind::Words, dim: 8, table: Vec::new(), reverse: None }
        } else {
            let n = params.n;
            Algebra { field, params, kind: Kind::Pbw, dim: n * n * n, table: Vec::new(), reverse: None }
        };
        alg.build_table();
        if matches!(alg.kind, Kind::Pbw) {
            alg.build_reverse();
        }
        Ok(alg)
    }

    /// Shorthand for [`BraidingParams::from_exponents`] followed by [`Algebra::new`].
    pub fn from_exponents(field: F, n: usize, q12_exp: i64, mode: AlgebraMode) -> Result<Self> {
        let params = BraidingParams::from_exponents(&field, n, q12_exp, mode)?;
        Self::new(field, params)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn params(&self) -> &BraidingParams<F::Elem> {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn mode(&self) -> AlgebraMode {
        self.params.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_word_presentation(&self) -> bool {
        matches!(self.kind, Kind::Words)
    }

    pub fn qbar(&self) -> &F::Elem {
        &self.params.qbar
    }

    pub fn q12(&self) -> &F::Elem {
        &self.params.q12
    }

    pub fn q21(&self) -> &F::Elem {
        &self.params.q21
    }

    /// Index of `x1^a y^b x2^c`.
    pub fn index(&self, m: Monomial) -> usize {
        let n = self.params.n;
        assert!(matches!(self.kind, Kind::Pbw) && m.0 < n && m.1 < n && m.2 < n);
        (m.0 * n + m.1) * n + m.2
    }

    pub fn monomial_of(&self, index: usize) -> Monomial {
        let n = self.params.n;
        (index / (n * n), (index / n) % n, index % n)
    }

    /// Index of an alternating word in `x1`, `x2` (`N = 2` only), written with
    /// the digits `1` and `2`.
    pub fn word_index(&self, word: &str) -> Option<usize> {
        WORDS.iter().position(|w| *w == word)
    }

    pub fn basis_label(&self, index: usize) -> String {
        match self.kind {
            Kind::Words => {
                let w = WORDS[index];
                if w.is_empty() {
                    "1".into()
                } else {
                    w.chars().map(|c| format!("x{c}")).collect::<Vec<_>>().join(" ")
                }
            }
            Kind::Pbw => {
                let (a, b, c) = self.monomial_of(index);
                let mut parts = Vec::new();
                for (name, e) in [("x1", a), ("y", b), ("x2", c)] {
                    match e {
                        0 => {}
                        1 => parts.push(name.to_string()),
                        _ => parts.push(format!("{name}^{e}")),
                    }
                }
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join(" ")
                }
            }
        }
    }

    fn build_table(&mut self) {
        let d = self.dim;
        let mut table: Vec<Vec<AlgebraElement<F::Elem>>> = vec![Vec::with_capacity(d); d];
        for (i, row) in table.iter_mut().enumerate() {
            let bi = self.basis(i);
            for j in 0..d {
                let prod = match self.kind {
                    Kind::Words => {
                        let mut cur = bi.clone();
                        for ch in WORDS[j].chars() {
                            cur = self.right_word_letter(&cur, ch);
                        }
                        cur
                    }
                    Kind::Pbw => {
                        let (a, b, c) = self.monomial_of(j);
                        if c > 0 {
                            self.right_gen(&row[self.index((a, b, c - 1))], Gen::X2)
                        } else if b > 0 {
                            self.right_gen(&row[self.index((a, b - 1, 0))], Gen::Y)
                        } else if a > 0 {
                            self.right_gen(&row[self.index((a - 1, 0, 0))], Gen::X1)
                        } else {
                            bi.clone()
                        }
                    }
                };
                row.push(prod);
            }
        }
        self.table = table;
    }

    fn right_word_letter(&self, u: &AlgebraElement<F::Elem>, letter: char) -> AlgebraElement<F::Elem> {
        let f = &self.field;
        let mut dense = vec![f.zero(); self.dim];
        for (i, c) in &u.terms {
            let w = WORDS[*i];
            if w.ends_with(letter) {
                continue;
            }
            let next = format!("{w}{letter}");
            match next.as_str() {
                "2121" => {
                    let k = self.word_index("1212").expect("basis word");
                    dense[k] = f.sub(&dense[k], c);
                }
                s if s.len() >= 5 => {}
                s => {
                    let k = self.word_index(s).expect("basis word");
                    dense[k] = f.add(&dense[k], c);
                }
            }
        }
        AlgebraElement::from_dense(f, dense)
    }

    /// `x2^c x1 = alpha x1 x2^c + beta y x2^(c-1)`.
    fn x2_power_times_x1(&self, c: usize) -> (F::Elem, F::Elem) {
        let f = &self.field;
        let iq = f.inv(&self.params.q12).expect("q12 is nonzero");
        let (mut al, mut be) = (f.one(), f.zero());
        for _ in 0..c {
            let corr = match self.params.mode {
                AlgebraMode::Full => f.neg(&f.mul(&iq, &al)),
                AlgebraMode::Graded => f.zero(),
            };
            be = f.add(&corr, &f.mul(&self.params.q21, &be));
            al = f.mul(&iq, &al);
        }
        (al, be)
    }

    fn right_gen(&self, u: &AlgebraElement<F::Elem>, g: Gen) -> AlgebraElement<F::Elem> {
        let f = &self.field;
        let n = self.params.n;
        let mut dense = vec![f.zero(); self.dim];
        for (i, coef) in &u.terms {
            let (a, b, c) = self.monomial_of(*i);
            match g {
                Gen::X2 => {
                    if c + 1 < n {
                        let k = self.index((a, b, c + 1));
                        dense[k] = f.add(&dense[k], coef);
                    }
                }
                Gen::Y => {
                    if b + 1 < n {
                        let k = self.index((a, b + 1, c));
                        let s = f.mul(coef, &f.pow(&self.params.q21, c as i64));
                        dense[k] = f.add(&dense[k], &s);
                    }
                }
                Gen::X1 => {
                    let (al, be) = self.x2_power_times_x1(c);
                    if a + 1 < n {
                        let k = self.index((a + 1, b, c));
                        let s = f.mul(coef, &f.mul(&al, &f.pow(&self.params.q21, b as i64)));
                        dense[k] = f.add(&dense[k], &s);
                    }
                    if c > 0 && b + 1 < n && !f.is_zero(&be) {
                        let k = self.index((a, b + 1, c - 1));
                        dense[k] = f.add(&dense[k], &f.mul(coef, &be));
                    }
                }
            }
        }
        AlgebraElement::from_dense(f, dense)
    }

    fn build_reverse(&mut self) {
        let x1 = self.x1();
        let x2 = self.x2();
        let y = self.y();
        let mut images = Vec::with_capacity(self.dim);
        for idx in 0..self.dim {
            let (a, b, c) = self.monomial_of(idx);
            let w = self.mul(&self.mul(&self.pow(&x2, c), &self.pow(&y, b)), &self.pow(&x1, a));
            images.push(w);
        }
        // column t of the system holds the PBW coordinates of reverse monomial t
        let mut rows = vec![Vec::new(); self.dim];
        for (t, img) in images.iter().enumerate() {
            for (i, c) in &img.terms {
                rows[*i].push((t, c.clone()));
            }
        }
        let m = SparseMatrix::from_rows(self.dim, rows);
        self.reverse = Some((images, LinearSolver::new(&self.field, &m)));
    }

    pub fn zero(&self) -> AlgebraElement<F::Elem> {
        AlgebraElement::zero()
    }

    pub fn one(&self) -> AlgebraElement<F::Elem> {
        self.basis(0)
    }

    pub fn basis(&self, index: usize) -> AlgebraElement<F::Elem> {
        AlgebraElement { terms: vec![(index, self.field.one())] }
    }

    pub fn scalar(&self, c: F::Elem) -> AlgebraElement<F::Elem> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            AlgebraElement { terms: vec![(0, c)] }
        }
    }

    /// `x1^a y^b x2^c`, or zero when an exponent reaches `N`.
    pub fn monomial(&self, m: Monomial) -> AlgebraElement<F::Elem> {
        let n = self.params.n;
        match self.kind {
            Kind::Pbw if m.0 < n && m.1 < n && m.2 < n => self.basis(self.index(m)),
            Kind::Pbw => self.zero(),
            Kind::Words => {
                let p = self.mul(&self.pow(&self.x1(), m.0), &self.pow(&self.y(), m.1));
                self.mul(&p, &self.pow(&self.x2(), m.2))
            }
        }
    }

    pub fn x1(&self) -> AlgebraElement<F::Elem> {
        match self.kind {
            Kind::Pbw => self.basis(self.index((1, 0, 0))),
            Kind::Words => self.basis(1),
        }
    }

    pub fn x2(&self) -> AlgebraElement<F::Elem> {
        match self.kind {
            Kind::Pbw => self.basis(self.index((0, 0, 1))),
            Kind::Words => self.basis(2),
        }
    }

    /// `y = x1 x2 - q12 x2 x1`.
    pub fn y(&self) -> AlgebraElement<F::Elem> {
        match self.kind {
            Kind::Pbw => self.basis(self.index((0, 1, 0))),
            Kind::Words => {
                let x1x2 = self.mul(&self.x1(), &self.x2());
                let x2x1 = self.mul(&self.x2(), &self.x1());
                self.sub(&x1x2, &self.scale(&self.params.q12, &x2x1))
            }
        }
    }

    pub fn x1_pow(&self, e: usize) -> AlgebraElement<F::Elem> {
        self.pow(&self.x1(), e)
    }

    pub fn x2_pow(&self, e: usize) -> AlgebraElement<F::Elem> {
        self.pow(&self.x2(), e)
    }

    pub fn y_pow(&self, e: usize) -> AlgebraElement<F::Elem> {
        self.pow(&self.y(), e)
    }

    pub fn add(&self, u: &AlgebraElement<F::Elem>, v: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(u.terms.len() + v.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < u.terms.len() || j < v.terms.len() {
            let take_u = j == v.terms.len() || (i < u.terms.len() && u.terms[i].0 < v.terms[j].0);
            let take_v = i == u.terms.len() || (j < v.terms.len() && v.terms[j].0 < u.terms[i].0);
            if take_u {
                out.push(u.terms[i].clone());
                i += 1;
            } else if take_v {
                out.push(v.terms[j].clone());
                j += 1;
            } else {
                let s = f.add(&u.terms[i].1, &v.terms[j].1);
                if !f.is_zero(&s) {
                    out.push((u.terms[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        AlgebraElement { terms: out }
    }

    pub fn neg(&self, u: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        AlgebraElement { terms: u.terms.iter().map(|(i, c)| (*i, self.field.neg(c))).collect() }
    }

    pub fn sub(&self, u: &AlgebraElement<F::Elem>, v: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.add(u, &self.neg(v))
    }

    pub fn scale(&self, c: &F::Elem, u: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let f = &self.field;
        if f.is_zero(c) {
            return self.zero();
        }
        AlgebraElement { terms: u.terms.iter().map(|(i, x)| (*i, f.mul(c, x))).collect() }
    }

    /// Product in normal form.
    pub fn mul(&self, u: &AlgebraElement<F::Elem>, v: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        if u.is_zero() || v.is_zero() {
            return self.zero();
        }
        let f = &self.field;
        let mut dense = vec![f.zero(); self.dim];
        for (i, a) in &u.terms {
            for (j, b) in &v.terms {
                let ab = f.mul(a, b);
                for (k, c) in &self.table[*i][*j].terms {
                    f.add_mul_assign(&mut dense[*k], &ab, c);
                }
            }
        }
        AlgebraElement::from_dense(f, dense)
    }

    pub fn pow(&self, u: &AlgebraElement<F::Elem>, e: usize) -> AlgebraElement<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, u);
        }
        acc
    }

    /// `[x1^m, x2^n]_c = x1^m x2^n - q12^(mn) x2^n x1^m`.
    pub fn braided_commutator(&self, m: usize, n: usize) -> Result<AlgebraElement<F::Elem>> {
        let big_n = self.params.n;
        if m < 1 || n < 1 || m >= big_n || n >= big_n {
            return Err(Error::InvalidParams(format!(
                "commutator exponents ({m}, {n}) outside 1..={}",
                big_n - 1
            )));
        }
        let a = self.mul(&self.x1_pow(m), &self.x2_pow(n));
        let b = self.mul(&self.x2_pow(n), &self.x1_pow(m));
        let q = self.field.pow(&self.params.q12, (m * n) as i64);
        Ok(self.sub(&a, &self.scale(&q, &b)))
    }

    pub fn augmentation(&self, u: &AlgebraElement<F::Elem>) -> F::Elem {
        u.coefficient(&self.field, 0)
    }

    /// Row `i` holds the coordinates of `b_i * m`.
    pub fn right_mult_matrix(&self, m: &AlgebraElement<F::Elem>) -> SparseMatrix<F::Elem> {
        SparseMatrix::from_rows(self.dim, (0..self.dim).map(|i| self.right_mult_row(i, m)).collect())
    }

    /// Coordinates of `b_i * m` as a sorted sparse row.
    pub fn right_mult_row(&self, i: usize, m: &AlgebraElement<F::Elem>) -> Vec<(usize, F::Elem)> {
        if m.terms.len() == 1 {
            let (t, c) = &m.terms[0];
            return self.table[i][*t].terms.iter().map(|(k, x)| (*k, self.field.mul(c, x))).collect();
        }
        let f = &self.field;
        let mut dense = vec![f.zero(); self.dim];
        for (t, c) in &m.terms {
            for (k, x) in &self.table[i][*t].terms {
                f.add_mul_assign(&mut dense[*k], c, x);
            }
        }
        AlgebraElement::from_dense(f, dense).terms
    }

    /// Some `X` with `X * m = w`: the canonical solution of the linear system,
    /// pivots preferred in lexicographic order. For `m = y` this is computed in
    /// closed form.
    pub fn right_divide(
        &self,
        w: &AlgebraElement<F::Elem>,
        m: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>> {
        if m.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if matches!(self.kind, Kind::Pbw) && *m == self.y() {
            return self.right_divide_by_y(w);
        }
        self.right_divide_generic(w, m)
    }

    /// [`Algebra::right_divide`] without the closed-form shortcut.
    pub fn right_divide_generic(
        &self,
        w: &AlgebraElement<F::Elem>,
        m: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>> {
        let f = &self.field;
        let solver = LinearSolver::new(f, &self.right_mult_matrix(m).transpose());
        let mut rhs = vec![f.zero(); self.dim];
        for (i, c) in &w.terms {
            rhs[*i] = c.clone();
        }
        match solver.solve(&rhs) {
            Ok(x) => Ok(AlgebraElement::from_dense(f, x)),
            Err(Error::Inconsistent) => Err(Error::NotDivisible(format!(
                "{} is not a right multiple of {}",
                self.render(w),
                self.render(m)
            ))),
            Err(e) => Err(e),
        }
    }

    fn right_divide_by_y(&self, w: &AlgebraElement<F::Elem>) -> Result<AlgebraElement<F::Elem>> {
        let f = &self.field;
        let mut terms = Vec::with_capacity(w.terms.len());
        for (i, c) in &w.terms {
            let (a, b, cc) = self.monomial_of(*i);
            if b == 0 {
                return Err(Error::NotDivisible(format!(
                    "{} has a term without y",
                    self.render(w)
                )));
            }
            let s = f.mul(c, &f.pow(&self.params.q21, -(cc as i64)));
            terms.push((self.index((a, b - 1, cc)), s));
        }
        terms.sort_by_key(|(i, _)| *i);
        Ok(AlgebraElement { terms })
    }

    /// Coordinates of `u` in the reverse basis `x2^a3 y^a2 x1^a1`, as an
    /// element indexed by `(a1, a2, a3)`.
    pub fn to_reverse_basis(&self, u: &AlgebraElement<F::Elem>) -> Result<AlgebraElement<F::Elem>> {
        let (_, solver) = self
            .reverse
            .as_ref()
            .ok_or_else(|| Error::WrongMode("reverse basis needs the PBW presentation".into()))?;
        let f = &self.field;
        let mut rhs = vec![f.zero(); self.dim];
        for (i, c) in &u.terms {
            rhs[*i] = c.clone();
        }
        Ok(AlgebraElement::from_dense(f, solver.solve(&rhs)?))
    }

    pub fn from_reverse_basis(&self, v: &AlgebraElement<F::Elem>) -> Result<AlgebraElement<F::Elem>> {
        let (images, _) = self
            .reverse
            .as_ref()
            .ok_or_else(|| Error::WrongMode("reverse basis needs the PBW presentation".into()))?;
        let mut out = self.zero();
        for (t, c) in &v.terms {
            out = self.add(&out, &self.scale(c, &images[*t]));
        }
        Ok(out)
    }

    /// Whether the reverse-ordered monomials also form a basis.
    pub fn reverse_basis_is_basis(&self) -> bool {
        self.reverse.as_ref().is_some_and(|(_, s)| s.rank() == self.dim)
    }

    pub fn render(&self, u: &AlgebraElement<F::Elem>) -> String {
        text::render(self, u)
    }

    pub fn parse(&self, s: &str) -> Result<AlgebraElement<F::Elem>> {
        text::parse(self, s)
    }
}

#[derive(Clone, Copy)]
enum Gen {
    X1,
    Y,
    X2,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{CyclotomicField, PrimeField};

    fn alg3() -> Algebra<CyclotomicField> {
        Algebra::from_exponents(CyclotomicField::new(3).unwrap(), 3, 1, AlgebraMode::Full).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg3().dim(), 27);
        let a2 = Algebra::from_exponents(PrimeField::new(7, 3).unwrap(), 2, 0, AlgebraMode::Full).unwrap();
        assert_eq!(a2.dim(), 8);
    }

    #[test]
    fn rejects_bad_braiding() {
        let f = CyclotomicField::new(3).unwrap();
        let z = f.generator();
        let bad = BraidingParams::new(&f, 3, z.clone(), z.clone(), f.one(), AlgebraMode::Full);
        assert!(matches!(bad, Err(Error::InvalidBraiding(_))));
        let wrong_order = BraidingParams::new(&f, 3, f.one(), f.one(), f.one(), AlgebraMode::Full);
        assert!(matches!(wrong_order, Err(Error::InvalidBraiding(_))));
        assert!(BraidingParams::from_exponents(&f, 5, 1, AlgebraMode::Full).is_err());
    }

    #[test]
    fn rewriting_rules() {
        let a = alg3();
        let f = a.field();
        let iq = f.inv(a.q12()).unwrap();
        let x2x1 = a.mul(&a.x2(), &a.x1());
        let expect = a.sub(
            &a.scale(&iq, &a.monomial((1, 0, 1))),
            &a.scale(&iq, &a.y()),
        );
        assert_eq!(x2x1, expect);
        assert_eq!(a.mul(&a.y(), &a.x1()), a.scale(a.q21(), &a.monomial((1, 1, 0))));
        assert!(a.mul(&a.x1_pow(2), &a.x1()).is_zero());
        let m = a.monomial((1, 0, 2));
        assert_eq!(a.mul(&m, &a.y()), a.scale(&f.pow(a.q21(), 2), &a.monomial((1, 1, 2))));
    }

    #[test]
    fn braided_commutator_examples() {
        let a = alg3();
        let f = a.field();
        assert_eq!(a.braided_commutator(1, 1).unwrap(), a.y());
        let lhs = a.braided_commutator(2, 1).unwrap();
        let rhs = a.scale(&f.neg(a.qbar()), &a.monomial((1, 1, 0)));
        assert_eq!(lhs, rhs);
        let lhs = a.braided_commutator(1, 2).unwrap();
        let c = f.neg(&f.mul(a.qbar(), &f.pow(a.q21(), -1)));
        assert_eq!(lhs, a.scale(&c, &a.mul(&a.x2(), &a.y())));
        let top = a.braided_commutator(2, 2).unwrap();
        assert!(top.terms().iter().all(|(i, _)| a.monomial_of(*i).1 > 0));
        assert!(a.braided_commutator(3, 1).is_err());
    }

    #[test]
    fn reverse_basis_examples() {
        let a = alg3();
        assert!(a.reverse_basis_is_basis());
        let rev = a.to_reverse_basis(&a.monomial((1, 0, 1))).unwrap();
        let expect = a.add(&a.scale(a.q12(), &a.basis(a.index((1, 0, 1)))), &a.y());
        assert_eq!(rev, expect);
        assert_eq!(a.to_reverse_basis(&a.one()).unwrap(), a.one());
        for i in 0..a.dim() {
            let b = a.basis(i);
            assert_eq!(a.to_reverse_basis(&a.from_reverse_basis(&b).unwrap()).unwrap(), b);
        }
    }

    #[test]
    fn right_division() {
        let a = alg3();
        assert_eq!(a.right_divide(&a.y_pow(2), &a.y()).unwrap(), a.y());
        assert!(matches!(a.right_divide(&a.x1(), &a.y()), Err(Error::NotDivisible(_))));
        let w = a.braided_commutator(2, 2).unwrap();
        let d = a.right_divide(&w, &a.y()).unwrap();
        assert_eq!(a.mul(&d, &a.y()), w);
        assert_eq!(d, a.right_divide_generic(&w, &a.y()).unwrap());
        let x2sq = a.x2_pow(2);
        assert_eq!(a.right_divide(&x2sq, &x2sq).unwrap(), a.one());
    }

    #[test]
    fn right_mult_matrices() {
        let a = alg3();
        let f = a.field();
        let id = a.right_mult_matrix(&a.one());
        for i in 0..27 {
            assert_eq!(id.row(i), &[(i, f.one())]);
        }
        assert_eq!(crate::linalg::sparse_rank(f, &a.right_mult_matrix(&a.x1())), 18);
        assert_eq!(crate::linalg::sparse_kernel(f, &a.right_mult_matrix(&a.y()).transpose()).len(), 9);
    }

    #[test]
    fn augmentation_and_centrality() {
        let a = alg3();
        let f = a.field();
        let u = a.add(&a.x1(), &a.scalar(f.from_i64(3)));
        assert_eq!(a.augmentation(&u), f.from_i64(3));
        assert!(f.is_zero(&a.augmentation(&a.mul(&a.x1(), &a.x2()))));
        for t in 1..3 {
            for p in [
                a.mul(&a.x1_pow(t), &a.x2_pow(t)),
                a.mul(&a.x2_pow(t), &a.x1_pow(t)),
            ] {
                assert_eq!(a.mul(&a.y(), &p), a.mul(&p, &a.y()));
            }
        }
    }

    #[test]
    fn n2_relations() {
        let a = Algebra::from_exponents(PrimeField::new(7, 3).unwrap(), 2, 0, AlgebraMode::Full).unwrap();
        assert!(a.mul(&a.x1(), &a.x1()).is_zero());
        assert!(a.mul(&a.x2(), &a.x2()).is_zero());
        let w = |s: &str| a.basis(a.word_index(s).unwrap());
        let s = a.add(&a.mul(&w("12"), &w("12")), &a.mul(&w("21"), &w("21")));
        assert!(s.is_zero());
        assert!(a.mul(&w("1212"), &a.x1()).is_zero());
    }

    #[test]
    fn graded_mode_drops_the_correction() {
        let f = CyclotomicField::new(3).unwrap();
        let g = Algebra::from_exponents(f.clone(), 3, 1, AlgebraMode::Graded).unwrap();
        let iq = f.inv(g.q12()).unwrap();
        assert_eq!(g.mul(&g.x2(), &g.x1()), g.scale(&iq, &g.monomial((1, 0, 1))));
    }
}
