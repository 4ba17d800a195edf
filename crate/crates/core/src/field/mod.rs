//! Exact coefficient fields.
//!
//! Every computation in the crate is generic over [`Field`]. Three families
//! are provided: prime fields `GF(p)`, extension fields `GF(p^k)` (table
//! driven for small orders, polynomial arithmetic above that) and the
//! rationals. Field values carry their own context (modulus, tables), so
//! elements are plain data and the field is passed alongside them.

mod ext;
mod prime;
mod rational;

use std::fmt::Debug;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ext::{PolyExtField, ZechField, ZECH_MAX_ORDER};
pub use prime::PrimeField;
pub use rational::RationalField;

/// Arithmetic of an exact field.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    /// 0 for the rationals, `p` otherwise.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Uniform sample from the field (from the configured integer box for ℚ).
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;

    /// Sign and magnitude for printing inside a sum.
    fn format_signed(&self, a: &Self::Elem) -> (bool, String) {
        (false, self.format(a))
    }

    /// Multipliers `(a, b)` with `a * lc_f == b * lc_g`, used to cancel the
    /// leading term of `f` against `g` as `a*f - b*m*g`.
    fn reduction_multipliers(&self, lc_f: &Self::Elem, lc_g: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let q = self.mul(lc_f, &self.inv(lc_g).expect("nonzero leading coefficient"));
        (self.one(), q)
    }

    /// Rescale a coefficient vector (leading coefficient first) into the
    /// working normal form used during reduction. Finite fields go monic,
    /// the rationals go to a primitive integer vector.
    fn normalize(&self, coeffs: &mut [Self::Elem]) {
        self.make_monic(coeffs);
    }

    /// Whether reduction scales the dividend, so that coefficients should be
    /// renormalized from time to time.
    fn fraction_free(&self) -> bool {
        false
    }

    fn make_monic(&self, coeffs: &mut [Self::Elem]) {
        let Some(first) = coeffs.first() else { return };
        if self.is_one(first) {
            return;
        }
        let inv = self.inv(first).expect("nonzero leading coefficient");
        for c in coeffs.iter_mut() {
            *c = self.mul(c, &inv);
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Description of a coefficient field, as recorded in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Prime { p: u64 },
    Extension { p: u64, degree: u32 },
    Rational { entry_bound: u64 },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
            FieldSpec::Rational { .. } => 0,
        }
    }

    /// Number of elements, saturating at `u128::MAX`; `None` for ℚ.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldSpec::Prime { p } => Some(*p as u128),
            FieldSpec::Extension { p, degree } => {
                let mut q: u128 = 1;
                for _ in 0..*degree {
                    q = q.saturating_mul(*p as u128);
                }
                Some(q)
            }
            FieldSpec::Rational { .. } => None,
        }
    }

    /// Smallest field of characteristic `p` with at least `min_size`
    /// elements (`min_size` is a bit count when huge, see
    /// [`FieldSpec::for_sampling_bits`]).
    pub fn for_sampling(p: u64, min_size: u128) -> FieldSpec {
        debug_assert!(p >= 2);
        let mut degree = 1u32;
        let mut q = p as u128;
        while q < min_size {
            q = q.saturating_mul(p as u128);
            degree += 1;
        }
        if degree == 1 {
            FieldSpec::Prime { p }
        } else {
            FieldSpec::Extension { p, degree }
        }
    }

    /// Smallest field of characteristic `p` with at least `2^bits` elements.
    pub fn for_sampling_bits(p: u64, bits: u32) -> FieldSpec {
        let logp = (p as f64).log2();
        let mut degree = ((bits as f64) / logp).ceil().max(1.0) as u32;
        // floating point guard in both directions
        while degree > 1 && (degree as f64 - 1.0) * logp >= bits as f64 {
            degree -= 1;
        }
        while (degree as f64) * logp < bits as f64 {
            degree += 1;
        }
        if degree == 1 {
            FieldSpec::Prime { p }
        } else {
            FieldSpec::Extension { p, degree }
        }
    }
}

/// Checks that `c` is 0 or a prime.
pub fn check_characteristic(c: u64) -> Result<()> {
    if c == 0 || is_prime(c) {
        Ok(())
    } else {
        Err(Error::InvalidCharacteristic(c))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A field chosen at run time, dispatched to a concrete implementation.
#[derive(Clone, Debug)]
pub enum AnyField {
    Prime(PrimeField),
    Zech(ZechField),
    PolyExt(PolyExtField),
    Rational(RationalField),
}

impl AnyField {
    pub fn from_spec(spec: &FieldSpec) -> Result<AnyField> {
        Ok(match spec {
            FieldSpec::Prime { p } => AnyField::Prime(PrimeField::new(*p)?),
            FieldSpec::Extension { p, degree } => {
                let order = spec.order().unwrap_or(u128::MAX);
                if order <= ZECH_MAX_ORDER as u128 {
                    AnyField::Zech(ZechField::new(*p, *degree)?)
                } else {
                    AnyField::PolyExt(PolyExtField::new(*p, *degree)?)
                }
            }
            FieldSpec::Rational { entry_bound } => AnyField::Rational(RationalField::new(*entry_bound)),
        })
    }
}

/// Runs a generic computation against the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, |$f:ident| $body:expr) => {
        match $any {
            $crate::field::AnyField::Prime($f) => $body,
            $crate::field::AnyField::Zech($f) => $body,
            $crate::field::AnyField::PolyExt($f) => $body,
            $crate::field::AnyField::Rational($f) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(65537));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(4));
        assert!(!is_prime(65535));
        assert!(check_characteristic(4).is_err());
        assert!(check_characteristic(0).is_ok());
    }

    #[test]
    fn sampling_field_sizes() {
        assert_eq!(FieldSpec::for_sampling(2, 65536), FieldSpec::Extension { p: 2, degree: 16 });
        assert_eq!(FieldSpec::for_sampling(3, 65536), FieldSpec::Extension { p: 3, degree: 11 });
        assert_eq!(FieldSpec::for_sampling(5, 65536), FieldSpec::Extension { p: 5, degree: 7 });
        assert_eq!(FieldSpec::for_sampling(65537, 65536), FieldSpec::Prime { p: 65537 });
        assert_eq!(FieldSpec::for_sampling_bits(2, 32), FieldSpec::Extension { p: 2, degree: 32 });
        assert_eq!(FieldSpec::for_sampling_bits(3, 32), FieldSpec::Extension { p: 3, degree: 21 });
    }
}
