//! Hilbert functions of local cohomology of quotients by weakly stable
//! monomial ideals, and the invariants read off them.

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monideal::{hilbert_numerator, MonomialIdeal};
use crate::monomial::binomial;

/// `P(t) * (sum_{j<0} t^j)^i`, the Hilbert series of `H^i_m(A/I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomHilbert {
    pub i: usize,
    /// Coefficients of `P`, lowest degree first, no trailing zeros.
    pub p: Vec<i64>,
}

impl Serialize for CohomHilbert {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CohomHilbert", 3)?;
        st.serialize_field("i", &self.i)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("end", &self.end())?;
        st.end()
    }
}

impl CohomHilbert {
    pub fn new(i: usize, mut p: Vec<i64>) -> Self {
        while p.last() == Some(&0) {
            p.pop();
        }
        CohomHilbert { i, p }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_empty()
    }

    /// Largest degree with a nonzero component, `None` standing for `-inf`.
    pub fn end(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.p.len() as i64 - 1 - self.i as i64)
        }
    }

    /// `dim H^i_d`.
    pub fn value(&self, d: i64) -> i64 {
        if self.i == 0 {
            return if d < 0 { 0 } else { self.p.get(d as usize).copied().unwrap_or(0) };
        }
        let i = self.i as i64;
        let mut total: i128 = 0;
        for (e, &c) in self.p.iter().enumerate() {
            let k = e as i64 - d;
            if k >= i {
                total += c as i128 * binomial((k - 1) as u128, (i - 1) as u128) as i128;
            }
        }
        i64::try_from(total).expect("cohomology dimension overflows i64")
    }

    /// Coefficient of `P` in its top degree; equals `value(end)`.
    pub fn leading(&self) -> Option<i64> {
        self.p.last().copied()
    }
}

fn require_weakly_stable(i: &MonomialIdeal) -> Result<()> {
    i.require_proper()?;
    match i.classify().witnesses.weakly_stable {
        None => Ok(()),
        Some(w) => Err(Error::NotWeaklyStable(format!(
            "generator {:?}: no power of X{} times {:?} lies in the ideal",
            w.generator,
            w.to_var + 1,
            w.result
        ))),
    }
}

fn h0_unchecked(i: &MonomialIdeal) -> Result<Vec<i64>> {
    let sat = i.saturate_last();
    let a = hilbert_numerator(i);
    let b = hilbert_numerator(&sat);
    let mut diff: Vec<i64> =
        (0..a.len().max(b.len())).map(|k| a.get(k).copied().unwrap_or(0) - b.get(k).copied().unwrap_or(0)).collect();
    for _ in 0..i.nvars() {
        diff = divide_exact(&diff)
            .ok_or_else(|| Error::Internal(format!("H^0 numerator of {i:?} is not divisible by (1 - t)^n")))?;
    }
    while diff.last() == Some(&0) {
        diff.pop();
    }
    Ok(diff)
}

fn divide_exact(n: &[i64]) -> Option<Vec<i64>> {
    let mut q = Vec::with_capacity(n.len());
    let mut acc = 0i64;
    for &c in n {
        acc += c;
        q.push(acc);
    }
    match q.pop() {
        None => Some(q),
        Some(0) => Some(q),
        Some(_) => None,
    }
}

/// `Hilb((I : X_n^inf) / I)` as a polynomial.
pub fn h0_hilbert(i: &MonomialIdeal) -> Result<Vec<i64>> {
    require_weakly_stable(i)?;
    h0_unchecked(i)
}

fn profile_unchecked(i: &MonomialIdeal) -> Result<Vec<CohomHilbert>> {
    let n = i.nvars();
    let mut out = Vec::with_capacity(n + 1);
    out.push(CohomHilbert::new(0, h0_unchecked(i)?));
    for k in 1..=n {
        let top = n - k + 1;
        let j = i.restrict_to(top).saturate_var(top - 1).restrict_to(n - k);
        out.push(CohomHilbert::new(k, h0_unchecked(&j)?));
    }
    Ok(out)
}

/// `Hilb(H^i_m(A/I))` for `i = 0..=n`.
pub fn local_cohomology_profile(i: &MonomialIdeal) -> Result<Vec<CohomHilbert>> {
    require_weakly_stable(i)?;
    profile_unchecked(i)
}

/// A disagreement between the two formulas for `H^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteMismatch {
    pub i: usize,
    pub h: usize,
    pub direct: Vec<i64>,
    pub via_restriction: Vec<i64>,
}

/// Recomputes every `H^i` as `H^h` of `I_[n-i+h]` for `0 < h <= i`.
pub fn restriction_route_audit(i: &MonomialIdeal) -> Result<Vec<RouteMismatch>> {
    let profile = local_cohomology_profile(i)?;
    let n = i.nvars();
    let mut bad = Vec::new();
    for (k, direct) in profile.iter().enumerate().skip(1) {
        for h in 1..=k {
            let r = i.restrict_to(n - k + h);
            let other = &profile_unchecked(&r)?[h];
            if other.p != direct.p {
                bad.push(RouteMismatch { i: k, h, direct: direct.p.clone(), via_restriction: other.p.clone() });
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    /// `reg(A/I)`.
    pub reg_quotient: i64,
    /// `reg(I) = reg(A/I) + 1`; absent for the zero ideal.
    pub reg_ideal: Option<i64>,
    pub depth: usize,
    /// `pd(A/I) = n - depth`.
    pub pd: usize,
    /// `pd(A/I)` read off the largest homological index of a corner.
    pub pd_from_corners: usize,
}

fn invariants_of(i: &MonomialIdeal, profile: &[CohomHilbert]) -> Invariants {
    let n = i.nvars();
    let reg_quotient =
        profile.iter().filter_map(|c| c.end().map(|e| e + c.i as i64)).max().expect("A/I has nonvanishing cohomology");
    let depth = profile.iter().position(|c| !c.is_zero()).expect("nonvanishing cohomology");
    let pd_from_corners = corners_of(n, profile).iter().map(|c| c.i).max().unwrap_or(0);
    Invariants {
        reg_quotient,
        reg_ideal: (!i.is_zero()).then_some(reg_quotient + 1),
        depth,
        pd: n - depth,
        pd_from_corners,
    }
}

pub fn regularity_depth_pd(i: &MonomialIdeal) -> Result<Invariants> {
    let profile = local_cohomology_profile(i)?;
    Ok(invariants_of(i, &profile))
}

/// An extremal Betti number `β_{i, i+d}(A/I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub i: usize,
    pub d: i64,
    pub value: i64,
}

/// Corners of `A/I`, sorted by homological index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CornerTable {
    pub corners: Vec<Corner>,
}

impl CornerTable {
    pub fn get(&self, i: usize, d: i64) -> Option<i64> {
        self.corners.iter().find(|c| c.i == i && c.d == d).map(|c| c.value)
    }
}

fn corners_of(n: usize, profile: &[CohomHilbert]) -> Vec<Corner> {
    let candidates: Vec<(usize, i64, i64)> = profile
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            let end = c.end().unwrap();
            (n - c.i, end + c.i as i64, c.value(end))
        })
        .collect();
    let mut corners: Vec<Corner> = candidates
        .iter()
        .filter(|&&(a, d, _)| !candidates.iter().any(|&(a2, d2, _)| a2 >= a && d2 >= d && (a2, d2) != (a, d)))
        .map(|&(i, d, value)| Corner { i, d, value })
        .collect();
    corners.sort_by_key(|c| c.i);
    corners
}

/// Extremal Betti numbers of `A/I` from the top degrees of its cohomology.
pub fn extremal_betti(i: &MonomialIdeal) -> Result<CornerTable> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let profile = local_cohomology_profile(i)?;
    Ok(CornerTable { corners: corners_of(i.nvars(), &profile) })
}

/// `max_d |dim(A/I)_d - HP(d) - sum_i (-1)^i dim H^i_d|` over `lo..=hi`.
pub fn serre_audit(i: &MonomialIdeal, lo: i64, hi: i64) -> Result<i64> {
    let profile = local_cohomology_profile(i)?;
    let hs = i.hilbert()?;
    let hp = hs.hilbert_polynomial();
    let mut worst = 0i64;
    for d in lo..=hi {
        let lhs = hs.value(d) - hp.value(d);
        let rhs: i64 = profile.iter().map(|c| if c.i % 2 == 0 { c.value(d) } else { -c.value(d) }).sum();
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
