//! Characteristic-tagged monomial ideals and their combinatorics.

mod classify;
mod combinatorics;
mod hilbert;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::check_characteristic;
use crate::monomial::{default_names, Monomial};

pub use classify::{classify, ClassificationReport, ExchangeFailure};
pub use combinatorics::{alexander_dual, ek_betti, frobenius_power, gen_stats, lex_segment, BettiTable, GenStats};
pub use hilbert::{hilbert, hilbert_numerator, HilbertPolynomial, HilbertSeries};

/// A monomial ideal of `K[X_1..X_n]` with `char K` recorded.
///
/// Generators form the unique minimal generating set (a divisibility
/// antichain), stored in descending lex order. The unit ideal is the ideal
/// whose only generator is `1`; the zero ideal has no generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    characteristic: u64,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the given monomials.
    pub fn new(n: usize, characteristic: u64, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        check_characteristic(characteristic)?;
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
            }
        }
        Ok(Self::from_parts(n, characteristic, gens))
    }

    /// Like [`MonomialIdeal::new`] for already validated input.
    pub(crate) fn from_parts(n: usize, characteristic: u64, gens: Vec<Monomial>) -> Self {
        MonomialIdeal { n, characteristic, gens: minimal_generators(gens) }
    }

    pub fn from_exponents(n: usize, characteristic: u64, gens: &[&[u32]]) -> Result<Self> {
        Self::new(n, characteristic, gens.iter().map(|e| Monomial::from_slice(e)))
    }

    pub fn zero(n: usize, characteristic: u64) -> Self {
        MonomialIdeal { n, characteristic, gens: Vec::new() }
    }

    pub fn unit(n: usize, characteristic: u64) -> Self {
        MonomialIdeal { n, characteristic, gens: vec![Monomial::one(n)] }
    }

    /// The irrelevant ideal `(X_1, ..., X_n)`.
    pub fn maximal(n: usize, characteristic: u64) -> Self {
        Self::from_parts(n, characteristic, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Same exponents, new characteristic tag.
    pub fn with_characteristic(&self, characteristic: u64) -> Result<Self> {
        check_characteristic(characteristic)?;
        Ok(MonomialIdeal { characteristic, ..self.clone() })
    }

    /// Largest generator degree, `None` for the zero ideal.
    pub fn generating_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    pub fn require_proper(&self) -> Result<()> {
        if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// `I : u`.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.div(&g.gcd(u)).expect("gcd divides")).collect();
        Self::from_parts(self.n, self.characteristic, gens)
    }

    /// `I : X_i^inf` for the zero-based variable index `i`.
    pub fn saturate_var(&self, i: usize) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.with_exp(i, 0)).collect();
        Self::from_parts(self.n, self.characteristic, gens)
    }

    /// `I : X_n^inf`; in zero variables the saturation is the unit ideal.
    pub fn saturate_last(&self) -> MonomialIdeal {
        if self.n == 0 {
            return MonomialIdeal::unit(0, self.characteristic);
        }
        self.saturate_var(self.n - 1)
    }

    /// `I : m^inf` as the intersection of the `I : X_i^inf`.
    pub fn saturate_maximal(&self) -> MonomialIdeal {
        if self.n == 0 {
            return MonomialIdeal::unit(0, self.characteristic);
        }
        let mut acc = self.saturate_var(0);
        for i in 1..self.n {
            acc = acc.intersect(&self.saturate_var(i));
        }
        acc
    }

    /// Colon, variable saturation or maximal-ideal saturation.
    pub fn colon_and_saturate(&self, by: &ColonBy) -> Result<MonomialIdeal> {
        self.require_proper()?;
        match by {
            ColonBy::Monomial(u) => {
                if u.nvars() != self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, found: u.nvars() });
                }
                Ok(self.colon(u))
            }
            ColonBy::VariableInfinity(i) => {
                if *i >= self.n {
                    return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
                }
                Ok(self.saturate_var(*i))
            }
            ColonBy::MaximalInfinity => Ok(self.saturate_maximal()),
        }
    }

    /// Intersection via pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Self::from_parts(self.n, self.characteristic, gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self.gens.iter().chain(other.gens.iter()).cloned().collect();
        Self::from_parts(self.n, self.characteristic, gens)
    }

    /// `I_[j] = I ∩ K[X_1..X_j]`, for `1 <= j <= n`.
    pub fn restrict(&self, j: usize) -> Result<MonomialIdeal> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok(self.restrict_to(j))
    }

    /// Restriction allowing `j = 0`, the ideal of the coefficient field.
    pub(crate) fn restrict_to(&self, j: usize) -> MonomialIdeal {
        debug_assert!(j <= self.n);
        let gens = self.gens.iter().filter(|g| g.exps()[j..].iter().all(|&e| e == 0)).map(|g| g.truncate(j)).collect();
        MonomialIdeal { n: j, characteristic: self.characteristic, gens }
    }

    /// The extension of `I` to a ring with `n' >= n` variables.
    pub fn extend(&self, n: usize) -> MonomialIdeal {
        debug_assert!(n >= self.n);
        MonomialIdeal { n, characteristic: self.characteristic, gens: self.gens.iter().map(|g| g.extend(n)).collect() }
    }

    /// Dimension of `I_d`.
    pub fn dim_in_degree(&self, d: u32) -> u128 {
        crate::monomial::count_monomials(self.n, d) - hilbert::quotient_value(self, d as i64) as u128
    }

    pub fn display_with(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.display(names).to_string()).collect()
    }

    pub fn to_json(&self, names: Option<&[String]>) -> IdealJson {
        let names: Vec<String> = match names {
            Some(n) => n.to_vec(),
            None => default_names(self.n),
        };
        IdealJson {
            pretty: self.display_with(&names),
            vars: names,
            char: self.characteristic,
            gens: self.gens.iter().map(|g| g.exps().to_vec()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<MonomialIdeal> {
        let n = j.vars.len();
        Self::new(n, j.char, j.gens.iter().map(|e| Monomial::from_slice(e)))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json(None).serialize(s)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.n);
        write!(f, "({})", self.display_with(&names).join(", "))?;
        write!(f, " in {} vars, char {}", self.n, self.characteristic)
    }
}

/// What to divide by in [`MonomialIdeal::colon_and_saturate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColonBy {
    Monomial(Monomial),
    /// Zero-based variable index.
    VariableInfinity(usize),
    MaximalInfinity,
}

/// `{"vars": [...], "char": c, "gens": [[exponents]]}` plus printed generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub char: u64,
    pub gens: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pretty: Vec<String>,
}

/// Divisibility antichain generating the same ideal, descending lex.
pub fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

/// [`minimal_generators`] wrapped as an ideal.
pub fn minimalize(n: usize, characteristic: u64, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(n, characteristic, gens)
}
