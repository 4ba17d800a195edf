//! Extension fields `GF(p^k)`.
//!
//! Small orders use Zech logarithm tables over a primitive modulus, so that
//! addition and multiplication are a table lookup each. Larger orders (the
//! fields reached after squaring on certification retries) fall back to
//! dense polynomial arithmetic modulo an irreducible found by Rabin's test.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{is_prime, Field, FieldSpec};
use crate::error::{Error, Result};

/// Largest order served by the table-driven representation.
pub const ZECH_MAX_ORDER: u64 = 1 << 21;

const ZERO: u32 = u32::MAX;

#[derive(Debug)]
struct ZechTables {
    p: u64,
    k: u32,
    q: u64,
    /// Modulus coefficients, constant term first, monic of degree `k`.
    modulus: Vec<u64>,
    /// `exp[i]` is the base-`p` encoding of `alpha^i`.
    exp: Vec<u32>,
    /// `log[e]` is the discrete log of the element with encoding `e`.
    log: Vec<u32>,
    /// `zech[n] = log(1 + alpha^n)`.
    zech: Vec<u32>,
}

/// `GF(p^k)` for `p^k <= ZECH_MAX_ORDER`; elements are discrete logarithms.
#[derive(Clone, Debug)]
pub struct ZechField {
    t: Arc<ZechTables>,
}

impl PartialEq for ZechField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k
    }
}

type ZechCache = Mutex<HashMap<(u64, u32), Arc<ZechTables>>>;

fn zech_cache() -> &'static ZechCache {
    static CACHE: OnceLock<ZechCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ZechField {
    pub fn new(p: u64, k: u32) -> Result<ZechField> {
        if !is_prime(p) || k == 0 {
            return Err(Error::InvalidCharacteristic(p));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= ZECH_MAX_ORDER as u128);
        let Some(q) = q else {
            return Err(Error::InvalidArgument(format!("GF({p}^{k}) is too large for table arithmetic")));
        };
        let q = q as u64;
        let mut cache = zech_cache().lock().expect("zech cache poisoned");
        if let Some(t) = cache.get(&(p, k)) {
            return Ok(ZechField { t: t.clone() });
        }
        let t = Arc::new(build_tables(p, k, q));
        cache.insert((p, k), t.clone());
        Ok(ZechField { t })
    }

    pub fn order(&self) -> u64 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.t.modulus
    }

    /// Coefficients (constant term first) of the element as a polynomial in
    /// the generator.
    pub fn to_coeffs(&self, a: &u32) -> Vec<u64> {
        let mut enc = if *a == ZERO { 0 } else { self.t.exp[*a as usize] as u64 };
        let mut out = vec![0; self.t.k as usize];
        for c in out.iter_mut() {
            *c = enc % self.t.p;
            enc /= self.t.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> u32 {
        let enc = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.t.p + c % self.t.p);
        if enc == 0 {
            ZERO
        } else {
            self.t.log[enc as usize]
        }
    }
}

fn build_tables(p: u64, k: u32, q: u64) -> ZechTables {
    let n = q as usize;
    let mut candidate: u64 = 1;
    loop {
        // low coefficients of x^k + ..., constant term nonzero
        let mut modulus = Vec::with_capacity(k as usize + 1);
        let mut c = candidate;
        for _ in 0..k {
            modulus.push(c % p);
            c /= p;
        }
        modulus.push(1);
        candidate += 1;
        if modulus[0] == 0 {
            continue;
        }
        if let Some((exp, log)) = powers_of_generator(p, k, n, &modulus) {
            let mut zech = vec![ZERO; n - 1];
            for (i, z) in zech.iter_mut().enumerate() {
                let e = exp[i] as u64;
                let c0 = e % p;
                let shifted = e - c0 + (c0 + 1) % p;
                if shifted != 0 {
                    *z = log[shifted as usize];
                }
            }
            return ZechTables { p, k, q, modulus, exp, log, zech };
        }
    }
}

/// Walks `x^0, x^1, ...` modulo `modulus`; succeeds iff `x` has order `q-1`,
/// which makes the modulus primitive (and in particular irreducible).
fn powers_of_generator(p: u64, k: u32, q: usize, modulus: &[u64]) -> Option<(Vec<u32>, Vec<u32>)> {
    let k = k as usize;
    let mut exp = vec![0u32; q - 1];
    let mut log = vec![ZERO; q];
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        let enc = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize;
        if log[enc] != ZERO || (i > 0 && enc == 1) {
            return None;
        }
        log[enc] = i as u32;
        *slot = enc as u32;
        // multiply by x
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..k {
                cur[j] = (cur[j] + p - (top * modulus[j]) % p) % p;
            }
        }
    }
    let enc = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c);
    if enc != 1 {
        return None;
    }
    Some((exp, log))
}

impl Field for ZechField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.t.p
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Extension { p: self.t.p, degree: self.t.k }
    }

    fn zero(&self) -> u32 {
        ZERO
    }

    fn one(&self) -> u32 {
        0
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == ZERO
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        if *a == ZERO {
            return *b;
        }
        if *b == ZERO {
            return *a;
        }
        let m = self.t.q - 1;
        let d = (*b as u64 + m - *a as u64) % m;
        let z = self.t.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            ((*a as u64 + z as u64) % m) as u32
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == ZERO || self.t.p == 2 {
            return *a;
        }
        let m = self.t.q - 1;
        ((*a as u64 + m / 2) % m) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == ZERO || *b == ZERO {
            return ZERO;
        }
        let m = self.t.q - 1;
        ((*a as u64 + *b as u64) % m) as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == ZERO {
            return None;
        }
        let m = self.t.q - 1;
        Some(((m - *a as u64) % m) as u32)
    }

    fn from_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.t.p)).to_u64().expect("residue fits");
        if r == 0 {
            ZERO
        } else {
            self.t.log[r as usize]
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let m = self.t.q - 1;
        let r = rng.random_range(0..self.t.q);
        if r == m {
            ZERO
        } else {
            r as u32
        }
    }

    fn format(&self, a: &u32) -> String {
        format_coeffs(&self.to_coeffs(a))
    }
}

fn format_coeffs(c: &[u64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Dense polynomial arithmetic over `GF(p)`, little-endian coefficient vectors.
mod fp_poly {
    pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, p);
            }
            a = mulmod(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder modulo a monic `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let top = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (j, &c) in m.iter().enumerate() {
                let s = mulmod(top, c, p);
                r[shift + j] = (r[shift + j] + p - s) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lb = *b.last().unwrap();
            let li = inv(lb, p);
            let bm: Vec<u64> = b.iter().map(|&c| mulmod(c, li, p)).collect();
            let r = rem(&a, &bm, p);
            a = bm;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, li, p);
            }
        }
        a
    }

    pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        let x = vec![0u64, 1];
        // x^(p^j) mod f for j = 1..=k via repeated p-th powers
        let mut frob = Vec::with_capacity(k + 1);
        let mut cur = rem(&x, f, p);
        frob.push(cur.clone());
        for _ in 0..k {
            cur = powmod(&cur, p as u128, f, p);
            frob.push(cur.clone());
        }
        if sub(&frob[k], &rem(&x, f, p), p) != Vec::<u64>::new() {
            return false;
        }
        let mut kk = k;
        let mut r = 2;
        let mut primes = Vec::new();
        while kk > 1 {
            if kk.is_multiple_of(r) {
                primes.push(r);
                while kk.is_multiple_of(r) {
                    kk /= r;
                }
            }
            r += 1;
        }
        for r in primes {
            let d = sub(&frob[k / r], &x, p);
            if gcd(f, &d, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

/// `GF(p^k)` by dense polynomial arithmetic; used for orders beyond the tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExtField {
    p: u64,
    k: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u64>,
}

impl PolyExtField {
    pub fn new(p: u64, k: u32) -> Result<PolyExtField> {
        if !is_prime(p) || p >= 1 << 62 || k == 0 {
            return Err(Error::InvalidCharacteristic(p));
        }
        let mut candidate: u128 = 1;
        loop {
            let mut modulus = Vec::with_capacity(k as usize + 1);
            let mut c = candidate;
            for _ in 0..k {
                modulus.push((c % p as u128) as u64);
                c /= p as u128;
            }
            modulus.push(1);
            candidate += 1;
            if modulus[0] == 0 {
                continue;
            }
            if k == 1 || fp_poly::is_irreducible(&modulus, p) {
                return Ok(PolyExtField { p, k, modulus });
            }
        }
    }

    /// Uses the given monic modulus (constant term first) without checking it.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> PolyExtField {
        let k = (modulus.len() - 1) as u32;
        PolyExtField { p, k, modulus }
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.k as usize, 0);
        v
    }
}

impl Field for PolyExtField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Extension { p: self.p, degree: self.k }
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.k as usize]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let prod = fp_poly::mul(a, b, self.p);
        self.pad(fp_poly::rem(&prod, &self.modulus, self.p))
    }

    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in GF(p)[x]
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.clone();
        fp_poly::trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            // q = r0 / r1
            let mut rem = r0.clone();
            let d1 = r1.len() - 1;
            let lead_inv = fp_poly::inv(*r1.last().unwrap(), p);
            let mut quot = vec![0u64; rem.len().saturating_sub(d1)];
            while rem.len() > d1 {
                let c = fp_poly::mulmod(*rem.last().unwrap(), lead_inv, p);
                let shift = rem.len() - 1 - d1;
                quot[shift] = c;
                for (j, &x) in r1.iter().enumerate() {
                    rem[shift + j] = (rem[shift + j] + p - fp_poly::mulmod(c, x, p)) % p;
                }
                fp_poly::trim(&mut rem);
            }
            fp_poly::trim(&mut quot);
            let s2 = fp_poly::sub(&s0, &fp_poly::mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = fp_poly::inv(r1[0], p);
        let s: Vec<u64> = s1.iter().map(|&x| fp_poly::mulmod(x, c, p)).collect();
        Some(self.pad(fp_poly::rem(&s, &self.modulus, p)))
    }

    fn from_bigint(&self, v: &BigInt) -> Vec<u64> {
        let mut out = self.zero();
        out[0] = v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        out
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.k).map(|_| rng.random_range(0..self.p)).collect()
    }

    fn format(&self, a: &Vec<u64>) -> String {
        format_coeffs(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms<F: Field>(f: &F, elems: &[F::Elem]) {
        for a in elems {
            assert_eq!(f.add(a, &f.neg(a)), f.zero());
            assert_eq!(f.mul(a, &f.one()), *a);
            if !f.is_zero(a) {
                let ai = f.inv(a).unwrap();
                assert!(f.is_one(&f.mul(a, &ai)));
            }
            for b in elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(&f.add(a, b), b), *a);
                if !f.is_zero(b) {
                    let bi = f.inv(b).unwrap();
                    assert_eq!(f.mul(&f.mul(a, b), &bi), *a);
                }
            }
        }
    }

    #[test]
    fn zech_small_fields_exhaustive() {
        for (p, k) in [(2u64, 1u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = ZechField::new(p, k).unwrap();
            let mut elems = vec![f.zero()];
            elems.extend(0..(f.order() as u32 - 1));
            check_axioms(&f, &elems);
            // distributivity
            for a in &elems {
                for b in &elems {
                    for c in elems.iter().take(5) {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
            // p * 1 = 0
            let mut acc = f.zero();
            for _ in 0..p {
                acc = f.add(&acc, &f.one());
            }
            assert!(f.is_zero(&acc));
        }
    }

    #[test]
    fn poly_ext_agrees_with_zech() {
        for (p, k) in [(2u64, 4u32), (3, 3), (5, 2)] {
            let z = ZechField::new(p, k).unwrap();
            let e = PolyExtField::with_modulus(p, z.modulus().to_vec());
            let elems: Vec<u32> = std::iter::once(z.zero()).chain(0..(z.order() as u32 - 1)).collect();
            for a in &elems {
                for b in &elems {
                    let (ca, cb) = (z.to_coeffs(a), z.to_coeffs(b));
                    assert_eq!(z.to_coeffs(&z.mul(a, b)), e.mul(&ca, &cb));
                    assert_eq!(z.to_coeffs(&z.add(a, b)), e.add(&ca, &cb));
                }
                if !z.is_zero(a) {
                    assert_eq!(z.to_coeffs(&z.inv(a).unwrap()), e.inv(&z.to_coeffs(a)).unwrap());
                }
                assert_eq!(z.from_coeffs(&z.to_coeffs(a)), *a);
            }
        }
    }

    #[test]
    fn large_extension_inverse_roundtrip() {
        use rand::SeedableRng;
        let f = PolyExtField::new(2, 32).unwrap();
        assert!(fp_poly::is_irreducible(f.modulus(), 2));
        let g = PolyExtField::new(3, 22).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for fld in [&f, &g] {
            for _ in 0..50 {
                let a = fld.sample(&mut rng);
                let b = fld.sample(&mut rng);
                if fld.is_zero(&b) {
                    continue;
                }
                let bi = fld.inv(&b).unwrap();
                assert_eq!(fld.mul(&fld.mul(&a, &b), &bi), a);
            }
        }
    }

    #[test]
    fn rabin_rejects_reducible() {
        // x^2 + 1 = (x+1)^2 over GF(2); x^4 + x^2 + 1 = (x^2+x+1)^2
        assert!(!fp_poly::is_irreducible(&[1, 0, 1], 2));
        assert!(!fp_poly::is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(fp_poly::is_irreducible(&[1, 1, 1], 2));
        assert!(fp_poly::is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn oversized_zech_rejected() {
        assert!(ZechField::new(2, 32).is_err());
    }
}
