use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Field, FieldSpec};

/// The rationals. Random samples are integers in `[-entry_bound, entry_bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalField {
    entry_bound: u64,
}

pub const DEFAULT_ENTRY_BOUND: u64 = 1_000_000;

impl RationalField {
    pub fn new(entry_bound: u64) -> RationalField {
        RationalField { entry_bound: entry_bound.max(1) }
    }

    pub fn entry_bound(&self) -> u64 {
        self.entry_bound
    }
}

impl Default for RationalField {
    fn default() -> Self {
        RationalField::new(DEFAULT_ENTRY_BOUND)
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational { entry_bound: self.entry_bound }
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let b = self.entry_bound as i64;
        BigRational::from_integer(BigInt::from(rng.random_range(-b..=b)))
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn format_signed(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }

    fn reduction_multipliers(&self, lc_f: &BigRational, lc_g: &BigRational) -> (BigRational, BigRational) {
        if lc_f.is_integer() && lc_g.is_integer() {
            let (f, g) = (lc_f.numer(), lc_g.numer());
            let d = f.gcd(g);
            let (mut a, mut b) = (g / &d, f / &d);
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            return (BigRational::from_integer(a), BigRational::from_integer(b));
        }
        (self.one(), lc_f / lc_g)
    }

    fn fraction_free(&self) -> bool {
        true
    }

    /// Clears denominators and content; the leading coefficient ends up positive.
    fn normalize(&self, coeffs: &mut [BigRational]) {
        if coeffs.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs.iter() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return;
        }
        if coeffs[0].is_negative() {
            num = -num;
        }
        if den.is_one() && num.is_one() {
            return;
        }
        for c in coeffs.iter_mut() {
            let scaled = c.numer() * (&den / c.denom());
            *c = BigRational::from_integer(scaled / &num);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lowest_terms_and_inverse() {
        let f = RationalField::default();
        let a = q(6, -4);
        assert_eq!(*a.numer(), BigInt::from(-3));
        assert_eq!(*a.denom(), BigInt::from(2));
        let b = q(7, 3);
        assert_eq!(f.mul(&f.mul(&a, &b), &f.inv(&b).unwrap()), a);
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn normalize_to_primitive_integers() {
        let f = RationalField::default();
        let mut v = vec![q(-2, 3), q(4, 9), q(2, 1)];
        f.normalize(&mut v);
        assert_eq!(v, vec![q(3, 1), q(-2, 1), q(-9, 1)]);
    }

    #[test]
    fn multipliers_cancel() {
        let f = RationalField::default();
        let (a, b) = f.reduction_multipliers(&q(6, 1), &q(-4, 1));
        assert_eq!(&a * q(6, 1), &b * q(-4, 1));
        assert_eq!(a, q(2, 1));
    }
}
