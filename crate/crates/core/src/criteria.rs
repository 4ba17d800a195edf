//! Decision procedures and audits built on the zero-generic initial ideal.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{
    extremal_betti, local_cohomology_profile, regularity_depth_pd, CohomHilbert, CornerTable, Invariants,
};
use crate::error::{Error, Result};
use crate::gin::{gin, gin0, Gin0, GinCertificate, GinOptions};
use crate::ideal::PolyIdeal;
use crate::monideal::{alexander_dual, MonomialIdeal};
use crate::monomial::{default_names, MonomialOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub criterion: &'static str,
    pub verdict: Verdict,
    pub lhs: Value,
    pub rhs: Value,
    pub witnesses: Vec<String>,
    pub certificates: Vec<GinCertificate>,
    pub payload: Value,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn degrevlex(opts: &GinOptions) -> GinOptions {
    opts.with_order(MonomialOrder::DegRevLex)
}

/// Invariants of `I` read off `Gin0(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gin0Invariants {
    pub gin0: Gin0,
    pub profile: Vec<CohomHilbert>,
    pub invariants: Invariants,
    pub corners: CornerTable,
}

pub fn invariants_via_gin0(i: &PolyIdeal, opts: &GinOptions) -> Result<Gin0Invariants> {
    let g = gin0(i, &degrevlex(opts))?;
    invariants_of_gin0(g)
}

fn invariants_of_gin0(g: Gin0) -> Result<Gin0Invariants> {
    let j = &g.gin0;
    let profile = local_cohomology_profile(j)?;
    let invariants = regularity_depth_pd(j)?;
    let corners = if j.is_zero() { CornerTable::default() } else { extremal_betti(j)? };
    let d = j.generating_degree().map(i64::from);
    if invariants.reg_ideal != d {
        return Err(Error::Internal(format!(
            "regularity {:?} of a strongly stable ideal differs from its generating degree {:?}",
            invariants.reg_ideal, d
        )));
    }
    Ok(Gin0Invariants { gin0: g, profile, invariants, corners })
}

/// Passes iff `I` and `Gin0(I)` have the same number of minimal generators.
pub fn componentwise_linear(i: &PolyIdeal, opts: &GinOptions) -> Result<AuditReport> {
    i.require_proper()?;
    let g = gin0(i, &degrevlex(opts))?;
    let mine = i.minimal_generator_degrees()?;
    let mu: usize = mine.values().sum();
    let mu0 = g.gin0.num_gens();
    if mu > mu0 {
        return Err(Error::TheoremViolation(format!("mu(I) = {mu} exceeds mu(Gin0(I)) = {mu0}")));
    }
    let mut witnesses = Vec::new();
    let names = i.names();
    if mu != mu0 {
        let mut theirs = std::collections::BTreeMap::new();
        for u in g.gin0.gens() {
            *theirs.entry(u.degree()).or_insert(0usize) += 1;
        }
        for (d, &b) in &theirs {
            let a = mine.get(d).copied().unwrap_or(0);
            if a != b {
                let extra: Vec<String> =
                    g.gin0.gens().iter().filter(|u| u.degree() == *d).map(|u| u.display(names).to_string()).collect();
                witnesses.push(format!("degree {d}: {a} generators of I, {b} of Gin0(I): {}", extra.join(", ")));
            }
        }
    }
    Ok(AuditReport {
        criterion: "componentwise_linear",
        verdict: verdict(mu == mu0),
        lhs: json!(mu),
        rhs: json!(mu0),
        witnesses,
        certificates: g.certificates.to_vec(),
        payload: json!({ "gin0": g.gin0.to_json(Some(i.names())) }),
    })
}

/// Sequential Cohen-Macaulayness of a squarefree monomial quotient.
pub fn seqcm_squarefree(i: &MonomialIdeal, opts: &GinOptions) -> Result<AuditReport> {
    seqcm_squarefree_named(i, &default_names(i.nvars()), opts)
}

/// [`seqcm_squarefree`] with variable names for the witnesses.
pub fn seqcm_squarefree_named(i: &MonomialIdeal, names: &[String], opts: &GinOptions) -> Result<AuditReport> {
    if let Some(u) = i.gens().iter().find(|u| !u.is_squarefree()) {
        return Err(Error::NotSquarefree(u.display(names).to_string()));
    }
    i.require_proper()?;
    if i.classify().weakly_stable {
        return Ok(AuditReport {
            criterion: "seqcm_squarefree",
            verdict: Verdict::Pass,
            lhs: Value::Null,
            rhs: Value::Null,
            witnesses: Vec::new(),
            certificates: Vec::new(),
            payload: json!({ "route": "weakly_stable" }),
        });
    }
    let dual = alexander_dual(i)?;
    let mut r = componentwise_linear(&PolyIdeal::from(&dual).with_names(names.to_vec())?, opts)?;
    r.criterion = "seqcm_squarefree";
    r.payload = json!({ "route": "alexander_dual", "dual": dual.to_json(Some(names)), "cwl": r.payload });
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrystallizationTarget {
    Gin0,
    Gin,
}

/// Scans the generator degrees of the target past `D(I)`; a generator-free
/// degree followed by a generator is a failure.
pub fn crystallization_audit(i: &PolyIdeal, opts: &GinOptions, target: CrystallizationTarget) -> Result<AuditReport> {
    i.require_proper()?;
    let d_input = i.true_generating_degree()?;
    let (j, certificates) = match target {
        CrystallizationTarget::Gin => {
            let (j, c) = gin(i, opts)?;
            (j, vec![c])
        }
        CrystallizationTarget::Gin0 => {
            let g = gin0(i, opts)?;
            (g.gin0, g.certificates.to_vec())
        }
    };
    let names = i.names();
    let mut degrees: Vec<u32> = j.gens().iter().map(|u| u.degree()).collect();
    degrees.sort_unstable();
    let top = degrees.last().copied();
    let mut witnesses = Vec::new();
    let mut gap = None;
    if let (Some(d0), Some(top)) = (d_input, top) {
        if let Some(first) = (d0 + 1..=top).find(|d| !degrees.contains(d)) {
            if let Some(&next) = degrees.iter().find(|&&d| d > first) {
                gap = Some((first, next));
                let empty: Vec<String> = (first..next).map(|d| d.to_string()).collect();
                let gens: Vec<String> =
                    j.gens().iter().filter(|u| u.degree() == next).map(|u| u.display(names).to_string()).collect();
                witnesses.push(format!("no generators in degrees {{{}}}, then {}", empty.join(","), gens.join(", ")));
            }
        }
    }
    if target == CrystallizationTarget::Gin0 && gap.is_some() {
        return Err(Error::TheoremViolation(format!(
            "crystallization fails for Gin0 {:?}: {}",
            j,
            witnesses.join("; ")
        )));
    }
    Ok(AuditReport {
        criterion: "crystallization",
        verdict: verdict(gap.is_none()),
        lhs: json!(gap.map(|g| g.0)),
        rhs: json!(gap.map(|g| g.1)),
        witnesses,
        certificates,
        payload: json!({
            "target": target,
            "input_generating_degree": d_input,
            "generator_degrees": degrees,
            "ideal": j.to_json(Some(names)),
        }),
    })
}

/// `reg A_[i]/Gin(I)_[i] >= reg A_[i]/Gin0(I)_[i]`; the left side is the
/// regularity of a general restriction of `I`.
pub fn restriction_regularity(i: &PolyIdeal, k: usize, opts: &GinOptions) -> Result<AuditReport> {
    let n = i.nvars();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let g = gin0(i, &degrevlex(opts))?;
    let left_ideal = g.gin.restrict_to(k);
    let right_ideal = g.gin0.restrict_to(k);
    let left = regularity_depth_pd(&left_ideal)?.reg_quotient;
    let right = regularity_depth_pd(&right_ideal)?.reg_quotient;
    let witnesses = if left >= right {
        Vec::new()
    } else {
        vec![format!("reg A_[{k}]/Gin(I)_[{k}] = {left} < {right} = reg A_[{k}]/Gin0(I)_[{k}]")]
    };
    Ok(AuditReport {
        criterion: "restriction_regularity",
        verdict: verdict(left >= right),
        lhs: json!(left),
        rhs: json!(right),
        witnesses,
        certificates: g.certificates.to_vec(),
        payload: json!({
            "i": k,
            "gin_restricted": left_ideal.to_json(Some(&i.names()[..k])),
            "gin0_restricted": right_ideal.to_json(Some(&i.names()[..k])),
        }),
    })
}

/// `(2D)^(2^(n-2))`.
pub fn regularity_bound(d: u32, n: usize) -> BigInt {
    assert!(n >= 2);
    let mut b = BigInt::from(2 * d as u64);
    for _ in 0..n - 2 {
        b = &b * &b;
    }
    b
}

/// Checks `reg I <= (2D)^(2^(n-2))` and, for `Gin0(I)`, the bound
/// `mu <= prod_{i<n} (D(Gin0(I)_[i]) + 1)`.
pub fn regularity_bound_audit(i: &PolyIdeal, opts: &GinOptions) -> Result<AuditReport> {
    let n = i.nvars();
    if n < 2 {
        return Err(Error::InvalidArgument("the regularity bound needs at least two variables".into()));
    }
    i.require_proper()?;
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let d = i.true_generating_degree()?.ok_or(Error::ZeroIdeal)?;
    let inv = invariants_via_gin0(i, opts)?;
    let reg = inv.invariants.reg_ideal.expect("nonzero ideal");
    let bound = regularity_bound(d, n);
    let reg_ok = BigInt::from(reg) <= bound;

    let j = &inv.gin0.gin0;
    let restricted: Vec<u32> = (1..n).map(|k| j.restrict_to(k).generating_degree().unwrap_or(0)).collect();
    let product: BigInt = restricted.iter().map(|&e| BigInt::from(e as u64 + 1)).product();
    let mu = j.num_gens();
    let mu_ok = BigInt::from(mu) <= product;

    let mut witnesses = Vec::new();
    if !reg_ok {
        witnesses.push(format!("reg I = {reg} > {bound} = (2*{d})^(2^{})", n - 2));
    }
    if !mu_ok {
        witnesses.push(format!("mu(Gin0(I)) = {mu} > {product}"));
    }
    Ok(AuditReport {
        criterion: "regularity_bound",
        verdict: verdict(reg_ok && mu_ok),
        lhs: json!(reg),
        rhs: json!(bound.to_string()),
        witnesses,
        certificates: inv.gin0.certificates.to_vec(),
        payload: json!({
            "generating_degree": d,
            "slack": (bound - BigInt::from(reg)).to_string(),
            "mu": mu,
            "mu_bound": product.to_string(),
            "mu_slack": (product - BigInt::from(mu)).to_string(),
            "restricted_generating_degrees": restricted,
        }),
    })
}
