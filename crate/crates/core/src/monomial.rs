//! Exponent-vector monomials and the graded/lex monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 8]>;

/// A monic monomial `X_1^{a_1} ... X_n^{a_n}`.
///
/// The derived `Ord` is lexicographic on the exponent vector, i.e. the lex
/// order with `X_1 > X_2 > ...`; it is used for canonical storage only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Monomial {
        Monomial { exps: exps.into() }
    }

    pub fn from_slice(exps: &[u32]) -> Monomial {
        Monomial { exps: Exponents::from_slice(exps) }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial { exps: smallvec::smallvec![0; n] }
    }

    /// The variable `X_{i+1}` (zero-based index `i`).
    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Zero-based index of the last variable dividing the monomial; the
    /// `m(u)` of the stability definitions is this plus one.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect() }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }

    /// All exponents scaled by `k`.
    pub fn scale(&self, k: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * k).collect() }
    }

    /// Keeps the first `j` variables.
    pub fn truncate(&self, j: usize) -> Monomial {
        Monomial::from_slice(&self.exps[..j])
    }

    /// Pads with zero exponents up to `n` variables.
    pub fn extend(&self, n: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(n, 0);
        Monomial { exps }
    }

    /// Renders with the given variable names, `x^2*y` style; `1` for the unit.
    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = self.names.get(i).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Default variable names `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Monomial orders with `X_1 > X_2 > ... > X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[serde(rename = "deglex")]
    DegLex,
    #[default]
    #[serde(rename = "degrevlex")]
    DegRevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Checked comparison for monomials of possibly different lengths.
    pub fn try_compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch { expected: a.nvars(), found: b.nvars() });
        }
        Ok(self.compare(a, b))
    }

    pub fn is_graded(self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::DegRevLex => "degrevlex",
        }
    }

    pub fn parse(s: &str) -> Result<MonomialOrder> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "deglex" => Ok(MonomialOrder::DegLex),
            "degrevlex" | "grevlex" | "revlex" => Ok(MonomialOrder::DegRevLex),
            other => Err(Error::InvalidArgument(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// All monomials of degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_slice(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// `C(d + n - 1, n - 1)`, the number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    binomial((d as u128) + n as u128 - 1, n as u128 - 1)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
