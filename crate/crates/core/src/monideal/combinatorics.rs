use std::collections::BTreeMap;

use serde::Serialize;

use super::hilbert::hilbert_numerator;
use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::monomial::{binomial, count_monomials, monomials_of_degree, Monomial};

/// The lex-segment ideal with the Hilbert function of `I`.
pub fn lex_segment(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.require_proper()?;
    let n = i.nvars();
    let target = hilbert_numerator(i);
    let top = i.generating_degree().unwrap_or(0);
    let mut gens: Vec<Monomial> = Vec::new();
    let mut d = 0u32;
    loop {
        let lex = MonomialIdeal::from_parts(n, i.characteristic(), gens.clone());
        if d > top && hilbert_numerator(&lex) == target {
            return Ok(lex);
        }
        let want = count_monomials(n, d) - i.hilbert_any().value(d as i64) as u128;
        for m in monomials_of_degree(n, d).into_iter().take(want as usize) {
            if !lex.contains(&m) {
                gens.push(m);
            }
        }
        d += 1;
    }
}

/// Alexander dual `∩_{u} (X_i : X_i | u)` of a squarefree ideal.
pub fn alexander_dual(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    if let Some(g) = i.gens().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(format!("{:?}", g)));
    }
    let n = i.nvars();
    let mut acc = MonomialIdeal::unit(n, i.characteristic());
    for u in i.gens() {
        let prime: Vec<Monomial> = (0..n).filter(|&v| u.exp(v) > 0).map(|v| Monomial::var(n, v)).collect();
        acc = acc.intersect(&MonomialIdeal::from_parts(n, i.characteristic(), prime));
    }
    Ok(acc)
}

/// Multiplies every exponent by the prime `p`.
pub fn frobenius_power(i: &MonomialIdeal, p: u64) -> Result<MonomialIdeal> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidCharacteristic(p));
    }
    let gens = i.gens().iter().map(|g| g.scale(p as u32)).collect();
    Ok(MonomialIdeal::from_parts(i.nvars(), i.characteristic(), gens))
}

/// Graded Betti numbers `β_{i,j}` of an ideal, indexed by homological
/// degree `i` and internal degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: u32,
    value: u64,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|(&(i, j), &value)| BettiEntry { i, j, value }))
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// `max_{i,j} (j - i)` over nonzero entries.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i as u32).max()
    }

    /// Entries `(i, j - i)` not dominated by another nonzero entry in the
    /// upper-right region `i' >= i`, `j' - i' >= j - i`.
    pub fn extremal(&self) -> Vec<(usize, u32, u64)> {
        let diag: Vec<(usize, u32, u64)> = self.entries.iter().map(|(&(i, j), &v)| (i, j - i as u32, v)).collect();
        diag.iter()
            .filter(|&&(i, d, _)| !diag.iter().any(|&(i2, d2, _)| i2 >= i && d2 >= d && (i2, d2) != (i, d)))
            .copied()
            .collect()
    }
}

/// Eliahou-Kervaire Betti numbers of a stable ideal.
pub fn ek_betti(i: &MonomialIdeal) -> Result<BettiTable> {
    if let Some(w) = i.classify().witnesses.stable {
        return Err(Error::NotStable(format!(
            "generator {:?} exchanges to {:?} outside the ideal",
            w.generator, w.result
        )));
    }
    let mut entries = BTreeMap::new();
    for u in i.gens() {
        let d = u.degree();
        let m = u.max_var().map_or(0, |v| v + 1);
        for h in 0..m.max(1) {
            let b = binomial(m.saturating_sub(1) as u128, h as u128) as u64;
            if b > 0 {
                *entries.entry((h, h as u32 + d)).or_insert(0) += b;
            }
        }
    }
    Ok(BettiTable { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenStats {
    /// Generating degree `D(I)`.
    #[serde(rename = "D")]
    pub generating_degree: u32,
    pub mu: usize,
    pub degrees: Vec<u32>,
}

pub fn gen_stats(i: &MonomialIdeal) -> Result<GenStats> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    i.require_proper()?;
    let mut degrees: Vec<u32> = i.gens().iter().map(Monomial::degree).collect();
    degrees.sort_unstable();
    Ok(GenStats { generating_degree: *degrees.last().unwrap(), mu: degrees.len(), degrees })
}
