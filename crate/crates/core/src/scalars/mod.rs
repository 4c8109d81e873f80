//! Exact scalar fields containing a primitive root of unity of a chosen order.
//!
//! Two interchangeable implementations of [`Field`] are provided:
//! [`CyclotomicField`] (the number field `Q(ζ_L)`, elements reduced modulo the
//! cyclotomic polynomial) and [`PrimeField`] (`F_p` with `p ≡ 1 mod L`). All
//! higher-level code is generic over the trait; [`with_field`] picks the
//! implementation from a runtime [`FieldSpec`].

mod cyclotomic;
mod prime;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;

pub use cyclotomic::{cyclotomic_polynomial, Cyclo, CyclotomicField};
pub use prime::{Fp, PrimeField};

use crate::error::{Error, Result};

/// Which concrete field a [`FieldSpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    Cyclotomic,
    PrimeField,
}

/// Parameters of a scalar field: the order `L` of the distinguished root of
/// unity and, in prime-field mode, the characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    pub mode: FieldMode,
    pub root_order: u64,
    pub prime: Option<u64>,
}

impl FieldSpec {
    pub fn cyclotomic(root_order: u64) -> Self {
        FieldSpec { mode: FieldMode::Cyclotomic, root_order, prime: None }
    }

    pub fn prime_field(prime: u64, root_order: u64) -> Self {
        FieldSpec { mode: FieldMode::PrimeField, root_order, prime: Some(prime) }
    }

    /// The smallest admissible prime field for root order `l`.
    pub fn smallest_prime_field(l: u64) -> Self {
        Self::prime_field_at_least(l, l + 1)
    }

    /// The smallest admissible prime field for root order `l` with `p >= min`.
    pub fn prime_field_at_least(l: u64, min: u64) -> Self {
        let mut p = min.max(l + 1);
        loop {
            if p % l == 1 % l && p > 2 && is_prime(p) {
                return FieldSpec::prime_field(p, l);
            }
            p += 1;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.root_order == 0 {
            return Err(Error::InvalidSpec("root order L must be positive".into()));
        }
        match self.mode {
            FieldMode::Cyclotomic => {
                if self.prime.is_some() {
                    return Err(Error::InvalidSpec("cyclotomic mode takes no prime".into()));
                }
                if self.root_order > 4096 {
                    return Err(Error::InvalidSpec("root order above 4096 is not supported".into()));
                }
            }
            FieldMode::PrimeField => {
                let p = self
                    .prime
                    .ok_or_else(|| Error::InvalidSpec("prime-field mode needs a prime".into()))?;
                if p >= 1 << 31 {
                    return Err(Error::InvalidSpec(format!("{p} exceeds 2^31")));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidSpec(format!("{p} is not prime")));
                }
                if p == 2 {
                    return Err(Error::InvalidSpec("characteristic 2 is excluded".into()));
                }
                if p % self.root_order != 1 % self.root_order {
                    return Err(Error::InvalidSpec(format!(
                        "{p} is not congruent to 1 mod {}",
                        self.root_order
                    )));
                }
                if p <= self.root_order {
                    return Err(Error::InvalidSpec(format!(
                        "p = {p} must exceed L = {}",
                        self.root_order
                    )));
                }
            }
        }
        Ok(())
    }

    /// Human-readable caveats about this field choice.
    pub fn warnings(&self) -> Vec<String> {
        match (self.mode, self.prime) {
            (FieldMode::PrimeField, Some(p)) if p < 1000 => vec![format!(
                "prime field of small characteristic {p}: results may differ from characteristic 0; \
                 compare against a cyclotomic run"
            )],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            FieldMode::Cyclotomic => write!(f, "cyclotomic:{}", self.root_order),
            FieldMode::PrimeField => {
                write!(f, "fp:{}:{}", self.prime.unwrap_or(0), self.root_order)
            }
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `cyclotomic:L` or `fp:p:L`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidSpec(format!("bad integer {t:?} in field spec {s:?}")))
        };
        let spec = match parts.as_slice() {
            ["cyclotomic", l] => FieldSpec::cyclotomic(num(l)?),
            ["fp", p, l] => FieldSpec::prime_field(num(p)?, num(l)?),
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "expected cyclotomic:L or fp:p:L, got {s:?}"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// An exact field with a distinguished primitive `L`-th root of unity `ζ`.
///
/// Elements carry no reference to their field; every operation goes through
/// the field value, which is cheap to clone and read-only after construction.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> &FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `num / den` as a field element; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// The primitive `L`-th root of unity `ζ`.
    fn generator(&self) -> Self::Elem;
    /// Rendering used by the textual element format.
    fn render(&self, a: &Self::Elem) -> String;

    fn root_order(&self) -> u64 {
        self.spec().root_order
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }

    /// Integer power; negative exponents invert. Panics on `0^e` with `e < 0`.
    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 {
            self.inv(a).expect("negative power of zero")
        } else {
            a.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `ζ^k` for any integer `k`.
    fn root_pow(&self, k: i64) -> Self::Elem {
        let l = self.root_order() as i64;
        self.pow(&self.generator(), k.rem_euclid(l))
    }

    /// `ζ^(L/d)`, an element of multiplicative order exactly `d`.
    fn root_of_unity(&self, d: u64) -> Result<Self::Elem> {
        let l = self.root_order();
        if d == 0 || !l.is_multiple_of(d) {
            return Err(Error::NotDivisor { d, l });
        }
        Ok(self.root_pow((l / d) as i64))
    }

    /// Least `m >= 1` with `a^m = 1`.
    fn order(&self, a: &Self::Elem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let bound = match self.spec().mode {
            FieldMode::PrimeField => self.spec().prime.unwrap_or(2) - 1,
            // roots of unity in Q(ζ_L) are ±ζ^k
            FieldMode::Cyclotomic => num_integer::lcm(2, self.root_order()),
        };
        let one = self.one();
        for m in divisors(bound) {
            if self.pow(a, m as i64) == one {
                return Ok(m);
            }
        }
        Err(Error::NotTorsion)
    }
}

/// Callback receiving a concrete field chosen at runtime.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

/// Constructs the field described by `spec` and hands it to `visitor`.
pub fn with_field<V: FieldVisitor>(spec: &FieldSpec, visitor: V) -> Result<V::Output> {
    spec.validate()?;
    Ok(match spec.mode {
        FieldMode::Cyclotomic => visitor.visit(CyclotomicField::new(spec.root_order)?),
        FieldMode::PrimeField => {
            visitor.visit(PrimeField::new(spec.prime.unwrap_or(0), spec.root_order)?)
        }
    })
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Divisors of `n` in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
