use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{minimal_generators, MonomialIdeal};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// `N(t) / (1 - t)^n`, the Hilbert series of `A/I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Coefficients of `N`, lowest degree first, no trailing zeros.
    pub numerator: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(nvars: usize, mut numerator: Vec<i64>) -> Self {
        trim(&mut numerator);
        HilbertSeries { nvars, numerator }
    }

    /// `dim_K (A/I)_d`; zero for negative `d`.
    pub fn value(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        if self.nvars == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0);
        }
        let r = (self.nvars - 1) as i64;
        let mut total: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            let k = k as i64;
            if k > d {
                break;
            }
            total += c as i128 * gen_binomial(d - k + r, r as u32);
        }
        i64::try_from(total).expect("Hilbert function value overflows i64")
    }

    pub fn values(&self, from: i64, to: i64) -> Vec<i64> {
        (from..=to).map(|d| self.value(d)).collect()
    }

    /// Krull dimension of `A/I` and the numerator after cancelling `(1 - t)`.
    pub fn reduced(&self) -> (usize, Vec<i64>) {
        let mut q = self.numerator.clone();
        let mut dim = self.nvars;
        while dim > 0 && !q.is_empty() && q.iter().sum::<i64>() == 0 {
            q = divide_by_one_minus_t(&q).expect("N(1) = 0 implies divisibility");
            dim -= 1;
        }
        (dim, q)
    }

    pub fn dimension(&self) -> usize {
        self.reduced().0
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        let (dim, q) = self.reduced();
        if q.is_empty() || dim == 0 {
            return HilbertPolynomial { dim: 0, numerator: Vec::new() };
        }
        HilbertPolynomial { dim, numerator: q }
    }

    /// Smallest `d0` such that the Hilbert function agrees with the Hilbert
    /// polynomial for all `d >= d0`.
    pub fn regularity_index(&self) -> i64 {
        let hp = self.hilbert_polynomial();
        let top = self.numerator.len() as i64;
        let mut d0 = top;
        while d0 > 0 && self.value(d0 - 1) == hp.value(d0 - 1) {
            d0 -= 1;
        }
        d0
    }
}

/// The Hilbert polynomial `sum_k q_k C(d - k + dim - 1, dim - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    dim: usize,
    numerator: Vec<i64>,
}

impl HilbertPolynomial {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Degree of the polynomial is `dim - 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact value at any integer, including negative ones.
    pub fn value(&self, d: i64) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let r = (self.dim - 1) as u32;
        let total: i128 =
            self.numerator.iter().enumerate().map(|(k, &c)| c as i128 * gen_binomial(d - k as i64 + r as i64, r)).sum();
        i64::try_from(total).expect("Hilbert polynomial value overflows i64")
    }

    /// Coefficients in powers of `d`, lowest first.
    pub fn coefficients(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let r = self.dim - 1;
        let mut out = vec![BigRational::zero(); r + 1];
        let mut fact = BigInt::one();
        for m in 1..=r {
            fact *= m;
        }
        for (k, &c) in self.numerator.iter().enumerate() {
            // prod_{m=1}^{r} (d - k + m)
            let mut prod = vec![BigInt::one()];
            for m in 1..=r {
                let shift = BigInt::from(m as i64 - k as i64);
                let mut next = vec![BigInt::zero(); prod.len() + 1];
                for (i, a) in prod.iter().enumerate() {
                    next[i] += a * &shift;
                    next[i + 1] += a;
                }
                prod = next;
            }
            for (i, a) in prod.into_iter().enumerate() {
                out[i] += BigRational::new(a * c, fact.clone());
            }
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
}

/// `C(x, m)` for any integer `x`.
pub(crate) fn gen_binomial(x: i64, m: u32) -> i128 {
    let mut r: i128 = 1;
    for i in 0..m as i64 {
        r = r * (x - i) as i128 / (i + 1) as i128;
    }
    r
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn divide_by_one_minus_t(n: &[i64]) -> Option<Vec<i64>> {
    // n = (1 - t) q  =>  q_k = sum_{j <= k} n_j
    let mut q = Vec::with_capacity(n.len());
    let mut acc = 0i64;
    for &c in n {
        acc += c;
        q.push(acc);
    }
    if q.pop().unwrap_or(0) != 0 {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
    trim(a);
}

fn mul_one_minus_t_pow(a: &[i64], d: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    out.resize(a.len() + d, 0);
    for i in (d..out.len()).rev() {
        out[i] -= out[i - d];
    }
    trim(&mut out);
    out
}

struct NumeratorCache {
    memo: HashMap<Vec<Monomial>, Vec<i64>>,
}

impl NumeratorCache {
    fn numerator(&mut self, gens: &[Monomial]) -> Vec<i64> {
        if gens.is_empty() {
            return vec![1];
        }
        if gens.iter().any(Monomial::is_one) {
            return Vec::new();
        }
        if pairwise_coprime(gens) {
            let mut out = vec![1];
            for g in gens {
                out = mul_one_minus_t_pow(&out, g.degree() as usize);
            }
            return out;
        }
        if let Some(hit) = self.memo.get(gens) {
            return hit.clone();
        }
        let u = &gens[0];
        let rest = &gens[1..];
        let mut out = self.numerator(rest);
        let colon = minimal_generators(rest.iter().map(|g| g.div(&g.gcd(u)).expect("gcd divides")).collect());
        let inner = self.numerator(&colon);
        sub_shifted(&mut out, &inner, u.degree() as usize);
        self.memo.insert(gens.to_vec(), out.clone());
        out
    }
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    let n = gens[0].nvars();
    let mut seen = vec![false; n];
    for g in gens {
        for (i, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                if seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
    }
    true
}

/// Numerator of the Hilbert series of `A/I`, also for the unit ideal (zero).
pub fn hilbert_numerator(i: &MonomialIdeal) -> Vec<i64> {
    let mut cache = NumeratorCache { memo: HashMap::new() };
    cache.numerator(i.gens())
}

/// Hilbert series of `A/I` for a proper ideal.
pub fn hilbert(i: &MonomialIdeal) -> Result<HilbertSeries> {
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(HilbertSeries::new(i.nvars(), hilbert_numerator(i)))
}

pub(crate) fn quotient_value(i: &MonomialIdeal, d: i64) -> i64 {
    HilbertSeries::new(i.nvars(), hilbert_numerator(i)).value(d)
}

impl MonomialIdeal {
    pub fn hilbert(&self) -> Result<HilbertSeries> {
        hilbert(self)
    }

    /// Hilbert series allowing the unit ideal.
    pub(crate) fn hilbert_any(&self) -> HilbertSeries {
        HilbertSeries::new(self.nvars(), hilbert_numerator(self))
    }
}
