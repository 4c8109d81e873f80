use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{divisors, Field, FieldSpec};
use crate::error::{Error, Result};

/// Element of `Q(ζ_L)`: rational coefficients of a polynomial in `ζ` of degree
/// below `φ(L)`, with trailing zeros trimmed so the representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cyclo(Vec<BigRational>);

impl Cyclo {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.0
    }

    fn trimmed(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Cyclo(v)
    }

    fn constant(c: BigRational) -> Self {
        Cyclo::trimmed(vec![c])
    }
}

/// The `L`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed by dividing `x^L - 1` by `Φ_d` for every proper divisor `d` of `L`.
pub fn cyclotomic_polynomial(l: u64) -> Vec<BigInt> {
    fn go(l: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&l) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); l as usize + 1];
        num[0] = -BigInt::one();
        num[l as usize] = BigInt::one();
        for d in divisors(l) {
            if d < l {
                let den = go(d, memo);
                num = div_exact_monic(&num, &den);
            }
        }
        memo.insert(l, num.clone());
        num
    }
    go(l, &mut HashMap::new())
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// `Q(ζ_L)` represented as `Q[x]/Φ_L(x)`.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    spec: FieldSpec,
    degree: usize,
    /// `reduction[k]` expresses `x^(degree + k)` in the basis `1, x, .., x^(degree-1)`.
    reduction: Vec<Vec<BigRational>>,
    /// `ζ^k` for `0 <= k < L`, used for rendering.
    powers: Vec<Cyclo>,
}

impl CyclotomicField {
    pub fn new(root_order: u64) -> Result<Self> {
        let spec = FieldSpec::cyclotomic(root_order);
        spec.validate()?;
        let phi = cyclotomic_polynomial(root_order);
        let degree = phi.len() - 1;
        let mut reduction = Vec::new();
        // x^degree = -(lower part of Φ)
        let mut cur: Vec<BigRational> = phi[..degree]
            .iter()
            .map(|c| BigRational::from_integer(-c.clone()))
            .collect();
        for _ in 0..degree.max(1) {
            reduction.push(cur.clone());
            // multiply by x and reduce
            let top = cur.last().cloned().unwrap_or_else(BigRational::zero);
            let mut next = vec![BigRational::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] += &top * &reduction[0][i];
                }
            }
            cur = next;
        }
        let mut field = CyclotomicField { spec, degree, reduction, powers: Vec::new() };
        let z = field.generator();
        let mut acc = field.one();
        let mut powers = Vec::with_capacity(root_order as usize);
        for _ in 0..root_order {
            powers.push(acc.clone());
            acc = field.mul(&acc, &z);
        }
        if acc != field.one() {
            return Err(Error::InvalidSpec("cyclotomic reduction is inconsistent".into()));
        }
        field.powers = powers;
        Ok(field)
    }

    /// Degree `φ(L)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduces an arbitrary polynomial in `ζ` (constant term first).
    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> Cyclo {
        let z = self.generator();
        let mut acc = self.zero();
        for c in coeffs.into_iter().rev() {
            acc = self.add(&self.mul(&acc, &z), &Cyclo::constant(c));
        }
        acc
    }

    fn is_rational(a: &Cyclo) -> bool {
        a.0.len() <= 1
    }
}

fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Field for CyclotomicField {
    type Elem = Cyclo;

    fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    fn zero(&self) -> Cyclo {
        Cyclo(Vec::new())
    }

    fn one(&self) -> Cyclo {
        Cyclo(vec![BigRational::one()])
    }

    fn from_i64(&self, n: i64) -> Cyclo {
        Cyclo::constant(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<Cyclo> {
        if den == 0 {
            return None;
        }
        Some(Cyclo::constant(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let (long, short) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        let mut v = long.0.clone();
        for (x, y) in v.iter_mut().zip(&short.0) {
            *x += y;
        }
        Cyclo::trimmed(v)
    }

    fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let n = a.0.len().max(b.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.0.get(i) {
                Some(y) => v.push(x - y),
                None => v.push(x),
            }
        }
        Cyclo::trimmed(v)
    }

    fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        if a.0.is_empty() || b.0.is_empty() {
            return self.zero();
        }
        if Self::is_rational(a) {
            return Cyclo::trimmed(b.0.iter().map(|y| &a.0[0] * y).collect());
        }
        if Self::is_rational(b) {
            return Cyclo::trimmed(a.0.iter().map(|x| x * &b.0[0]).collect());
        }
        let mut prod = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let d = self.degree;
        let mut out: Vec<BigRational> = vec![BigRational::zero(); d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] += c;
            } else {
                for (j, r) in self.reduction[k - d].iter().enumerate() {
                    if !r.is_zero() {
                        out[j] += &c * r;
                    }
                }
            }
        }
        Cyclo::trimmed(out)
    }

    fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().map(|c| -c).collect())
    }

    fn inv(&self, a: &Cyclo) -> Option<Cyclo> {
        if a.0.is_empty() {
            return None;
        }
        if Self::is_rational(a) {
            return Some(Cyclo::constant(a.0[0].recip()));
        }
        // Solve a * c = 1 through the matrix of multiplication by a.
        let d = self.degree;
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut basis = self.one();
        let x = self.generator();
        for _ in 0..d {
            let img = self.mul(a, &basis);
            let mut col = img.0.clone();
            col.resize(d, BigRational::zero());
            cols.push(col);
            basis = self.mul(&basis, &x);
        }
        // augmented rows: row r = [cols[0][r], .., cols[d-1][r] | rhs_r]
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, p);
            let pinv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v *= &pinv;
            }
            for r in 0..d {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[c].clone();
                    for (v, pv) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Some(Cyclo::trimmed(m.into_iter().map(|row| row[d].clone()).collect()))
    }

    fn is_zero(&self, a: &Cyclo) -> bool {
        a.0.is_empty()
    }

    fn generator(&self) -> Cyclo {
        if self.degree == 1 {
            // Φ_1 = x - 1, Φ_2 = x + 1
            return Cyclo::constant(self.reduction[0][0].clone());
        }
        Cyclo(vec![BigRational::zero(), BigRational::one()])
    }

    fn render(&self, a: &Cyclo) -> String {
        if a.0.is_empty() {
            return "0".into();
        }
        if Self::is_rational(a) {
            return render_rational(&a.0[0]);
        }
        if let Some(k) = self.powers.iter().position(|p| p == a) {
            return format!("z^{k}");
        }
        let mut parts = Vec::new();
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = render_rational(&c.abs());
            let body = match i {
                0 => mag,
                _ if c.abs().is_one() => format!("z^{i}"),
                _ => format!("{mag}*z^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        format!("({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn defining_relation_of_phi3() {
        let f = CyclotomicField::new(3).unwrap();
        let z = f.generator();
        let s = f.add(&f.add(&f.mul(&z, &z), &z), &f.one());
        assert!(f.is_zero(&s));
        assert_eq!(f.order(&z).unwrap(), 3);
    }

    #[test]
    fn degenerate_orders() {
        let f1 = CyclotomicField::new(1).unwrap();
        assert_eq!(f1.generator(), f1.one());
        let f2 = CyclotomicField::new(2).unwrap();
        assert_eq!(f2.generator(), f2.from_i64(-1));
        assert_eq!(f2.order(&f2.generator()).unwrap(), 2);
    }

    #[test]
    fn inverse_and_torsion() {
        let f = CyclotomicField::new(5).unwrap();
        let a = f.add(&f.generator(), &f.from_i64(2));
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
        assert!(matches!(f.order(&a), Err(Error::NotTorsion)));
        assert_eq!(f.order(&f.neg(&f.one())).unwrap(), 2);
        let w = f.root_of_unity(5).unwrap();
        assert_eq!(f.order(&w).unwrap(), 5);
    }

    #[test]
    fn root_of_unity_order_15() {
        let f = CyclotomicField::new(15).unwrap();
        let w = f.root_of_unity(3).unwrap();
        assert_eq!(f.pow(&w, 3), f.one());
        assert_ne!(w, f.one());
        assert_eq!(w, f.pow(&f.generator(), 5));
    }

    #[test]
    fn rendering() {
        let f = CyclotomicField::new(3).unwrap();
        assert_eq!(f.render(&f.root_pow(2)), "z^2");
        assert_eq!(f.render(&f.one()), "1");
        assert_eq!(f.render(&f.from_ratio(-3, 4).unwrap()), "-3/4");
        let x = f.add(&f.generator(), &f.from_i64(2));
        assert_eq!(f.render(&x), "(2 + z^1)");
    }
}
