use super::{prime_factors, Field, FieldSpec};
use crate::error::{Error, Result};

/// Residue modulo the field prime, always in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(pub u64);

/// `F_p` with a fixed primitive `L`-th root of unity.
#[derive(Clone, Debug)]
pub struct PrimeField {
    spec: FieldSpec,
    p: u64,
    zeta: u64,
}

impl PrimeField {
    pub fn new(p: u64, root_order: u64) -> Result<Self> {
        let spec = FieldSpec::prime_field(p, root_order);
        spec.validate()?;
        // smallest primitive root, then ζ = g^((p-1)/L)
        let factors = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
            .ok_or_else(|| Error::InvalidSpec(format!("no primitive root mod {p}")))?;
        let zeta = pow_mod(g, (p - 1) / root_order, p);
        Ok(PrimeField { spec, p, zeta })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: u64) -> Fp {
        Fp(n % self.p)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Field for PrimeField {
    type Elem = Fp;

    fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    fn zero(&self) -> Fp {
        Fp(0)
    }

    fn one(&self) -> Fp {
        Fp(1)
    }

    fn from_i64(&self, n: i64) -> Fp {
        Fp(n.rem_euclid(self.p as i64) as u64)
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<Fp> {
        let d = self.inv(&self.from_i64(den))?;
        Some(self.mul(&self.from_i64(num), &d))
    }

    #[inline]
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(a.0 * b.0 % self.p)
    }

    #[inline]
    fn neg(&self, a: &Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            None
        } else {
            Some(Fp(pow_mod(a.0, self.p - 2, self.p)))
        }
    }

    #[inline]
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }

    fn generator(&self) -> Fp {
        Fp(self.zeta)
    }

    fn render(&self, a: &Fp) -> String {
        a.0.to_string()
    }

    #[inline]
    fn sub_mul_assign(&self, a: &mut Fp, b: &Fp, c: &Fp) {
        let prod = b.0 * c.0 % self.p;
        *a = self.sub(a, &Fp(prod));
    }

    #[inline]
    fn add_mul_assign(&self, a: &mut Fp, b: &Fp, c: &Fp) {
        a.0 = (a.0 + b.0 * c.0) % self.p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_three_root_mod_seven() {
        let f = PrimeField::new(7, 3).unwrap();
        // exhaustive: the elements of order 3 mod 7 are 2 and 4
        let order3: Vec<u64> = (1..7u64)
            .filter(|&a| pow_mod(a, 3, 7) == 1 && a != 1)
            .collect();
        assert_eq!(order3, vec![2, 4]);
        let z = f.generator();
        assert!(order3.contains(&z.0));
        assert_eq!(f.pow(&z, 3), f.one());
        assert_ne!(z, f.one());
    }

    #[test]
    fn order_of_two_mod_seven() {
        let f = PrimeField::new(7, 3).unwrap();
        assert_eq!(f.order(&Fp(2)).unwrap(), 3);
        assert_eq!(f.order(&f.one()).unwrap(), 1);
        assert!(matches!(f.order(&f.zero()), Err(Error::ZeroElement)));
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(matches!(PrimeField::new(7, 5), Err(Error::InvalidSpec(_))));
        assert!(matches!(PrimeField::new(15, 7), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn root_of_unity_divisors() {
        let f = PrimeField::new(31, 15).unwrap();
        let w = f.root_of_unity(3).unwrap();
        assert_eq!(w, f.root_pow(5));
        assert_eq!(f.pow(&w, 3), f.one());
        assert_ne!(w, f.one());
        assert_eq!(f.root_of_unity(1).unwrap(), f.one());
        assert_eq!(f.order(&f.root_of_unity(15).unwrap()).unwrap(), 15);
        assert!(matches!(f.root_of_unity(4), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn ratios() {
        let f = PrimeField::new(7, 3).unwrap();
        assert_eq!(f.from_ratio(1, 2).unwrap(), Fp(4));
        assert!(f.from_ratio(1, 7).is_none());
        assert_eq!(f.from_i64(-1), Fp(6));
    }
}
