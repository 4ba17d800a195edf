//! Certified generic initial ideals, zero-generic initial ideals and
//! general restrictions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::change::{apply_change, random_change};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{buchberger, buchberger_with_hilbert};
use crate::ideal::{FieldIdeal, Ideal, PolyIdeal};
use crate::monideal::{HilbertSeries, MonomialIdeal};
use crate::monomial::{default_names, MonomialOrder};
use crate::poly::PolyRing;
use crate::with_field_ideal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinOptions {
    pub order: MonomialOrder,
    pub seed: u64,
    pub trials: usize,
    /// Smallest admissible sampling field in positive characteristic.
    pub min_field_size: u128,
    /// Entries of rational coordinate changes lie in `[-bound, bound]`.
    pub rational_bound: u64,
    /// Field enlargements after a failed certificate.
    pub max_retries: u32,
    /// Let the known Hilbert series drive the Gröbner computations.
    pub hilbert_driven: bool,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions {
            order: MonomialOrder::DegRevLex,
            seed: 0,
            trials: 2,
            min_field_size: 1 << 16,
            rational_bound: crate::field::RationalField::default().entry_bound(),
            max_retries: 3,
            hilbert_driven: true,
        }
    }
}

impl GinOptions {
    pub fn with_seed(&self, seed: u64) -> Self {
        GinOptions { seed, ..self.clone() }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        GinOptions { order, ..self.clone() }
    }

    /// Sampling field for the given retry; every retry squares its size.
    pub fn sampling_field(&self, characteristic: u64, attempt: u32) -> FieldSpec {
        if characteristic == 0 {
            let mut bound = self.rational_bound.max(1);
            for _ in 0..attempt {
                bound = bound.saturating_mul(bound);
            }
            return FieldSpec::Rational { entry_bound: bound };
        }
        if attempt == 0 {
            return FieldSpec::for_sampling(characteristic, self.min_field_size);
        }
        let bits = (128 - self.min_field_size.max(2).saturating_sub(1).leading_zeros()).max(1);
        FieldSpec::for_sampling_bits(characteristic, bits << attempt)
    }

    fn validate(&self) -> Result<()> {
        if self.trials < 2 {
            return Err(Error::InvalidArgument("at least two trials are required".into()));
        }
        Ok(())
    }
}

/// Evidence that a Monte Carlo gin hit the generic locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinCertificate {
    pub order: MonomialOrder,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub field: FieldSpec,
    /// Number of failed attempts before this one.
    pub retries: u32,
    pub agreement: bool,
    pub borel_fixed: bool,
    pub hilbert_match: bool,
    pub certified: bool,
}

/// Seed of trial `t` in attempt `attempt`.
pub fn trial_seed(seed: u64, attempt: u32, t: usize) -> u64 {
    seed.wrapping_add(((attempt as u64) << 32) | t as u64)
}

fn trial<F: Field>(ideal: &Ideal<F>, target: &HilbertSeries, opts: &GinOptions, seed: u64) -> Result<MonomialIdeal> {
    let n = ideal.nvars();
    let c = ideal.ring.field().characteristic();
    if ideal.gens.is_empty() {
        return Ok(MonomialIdeal::zero(n, c));
    }
    let ring = PolyRing::new(ideal.ring.field().clone(), n, opts.order);
    let g = random_change(ring.field(), n, seed);
    let moved = ideal.gens.iter().map(|f| apply_change(&ring, &g, &ring.reorder(f))).collect::<Result<Vec<_>>>()?;
    let gb = if opts.hilbert_driven && opts.order.is_graded() {
        buchberger_with_hilbert(&ring, &moved, target)?
    } else {
        buchberger(&ring, &moved)?
    };
    Ok(gb.initial_ideal(c))
}

struct Attempt {
    results: Vec<MonomialIdeal>,
    certificate: GinCertificate,
}

fn attempt<F: Field>(ideal: &Ideal<F>, target: &HilbertSeries, opts: &GinOptions, retry: u32) -> Result<Attempt> {
    let seeds: Vec<u64> = (0..opts.trials).map(|t| trial_seed(opts.seed, retry, t)).collect();
    let results = seeds.par_iter().map(|&s| trial(ideal, target, opts, s)).collect::<Result<Vec<_>>>()?;
    let first = &results[0];
    let agreement = results.iter().all(|r| r == first);
    let borel_fixed = first.is_borel_fixed();
    let top = first.generating_degree().unwrap_or(0) as i64 + 2;
    let hs = first.hilbert_any();
    let hilbert_match = (0..=top).all(|d| hs.value(d) == target.value(d));
    let certificate = GinCertificate {
        order: opts.order,
        seeds,
        trials: opts.trials,
        field: ideal.ring.field().spec(),
        retries: retry,
        agreement,
        borel_fixed,
        hilbert_match,
        certified: agreement && borel_fixed && hilbert_match && opts.trials >= 2,
    };
    Ok(Attempt { results, certificate })
}

fn certification_error(stage: &str, last: &Attempt, outputs: Vec<String>) -> Error {
    let c = &last.certificate;
    Error::Certification {
        stage: stage.to_string(),
        message: format!(
            "agreement {}, borel fixed {}, hilbert match {} after {} retries",
            c.agreement, c.borel_fixed, c.hilbert_match, c.retries
        ),
        trial_outputs: outputs,
    }
}

fn describe(results: &[MonomialIdeal]) -> Vec<String> {
    results.iter().map(|r| format!("{r:?}")).collect()
}

fn check_input(ideal: &PolyIdeal) -> Result<()> {
    ideal.require_homogeneous()?;
    ideal.require_proper()
}

/// Generic initial ideal of a homogeneous ideal over the algebraic closure
/// of its prime field, sampled over finite extensions (or over `Q`).
pub fn gin(ideal: &PolyIdeal, opts: &GinOptions) -> Result<(MonomialIdeal, GinCertificate)> {
    opts.validate()?;
    check_input(ideal)?;
    let target = ideal.hilbert_series()?;
    gin_with_hilbert(ideal, &target, opts, "gin")
}

fn gin_with_hilbert(
    ideal: &PolyIdeal,
    target: &HilbertSeries,
    opts: &GinOptions,
    stage: &str,
) -> Result<(MonomialIdeal, GinCertificate)> {
    let mut outputs = Vec::new();
    let mut last = None;
    for retry in 0..=opts.max_retries {
        let spec = opts.sampling_field(ideal.characteristic(), retry);
        let fi = ideal.in_any_field(&spec, opts.order)?;
        let a = with_field_ideal!(&fi, |i| attempt(i, target, opts, retry))?;
        if a.certificate.certified {
            let result = a.results[0].clone();
            return Ok((result, a.certificate));
        }
        outputs.extend(describe(&a.results));
        last = Some(a);
    }
    Err(certification_error(stage, &last.expect("at least one attempt"), outputs))
}

/// [`gin`] for generators over a fixed sampling field; retries only reseed.
pub fn gin_in_field(ideal: &FieldIdeal, opts: &GinOptions) -> Result<(MonomialIdeal, GinCertificate)> {
    opts.validate()?;
    let target = ideal.hilbert_series()?;
    let mut outputs = Vec::new();
    let mut last = None;
    for retry in 0..=opts.max_retries {
        let a = with_field_ideal!(ideal, |i| {
            if let Some(g) = i.gens.iter().find(|g| !g.is_homogeneous()) {
                return Err(Error::NotHomogeneous(i.ring.format(g, &default_names(i.nvars()))));
            }
            attempt(i, &target, opts, retry)
        })?;
        if a.certificate.certified {
            return Ok((a.results[0].clone(), a.certificate));
        }
        outputs.extend(describe(&a.results));
        last = Some(a);
    }
    Err(certification_error("gin", &last.expect("at least one attempt"), outputs))
}

/// Same exponents, new characteristic.
pub fn transport(i: &MonomialIdeal, characteristic: u64) -> Result<MonomialIdeal> {
    i.with_characteristic(characteristic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gin0 {
    /// `gin I` in the characteristic of `I`.
    pub gin: MonomialIdeal,
    /// `(gin (gin I)_Q)_K`.
    pub gin0: MonomialIdeal,
    pub certificates: [GinCertificate; 2],
}

/// Zero-generic initial ideal: gin over `K`, transport to `Q`, gin again and
/// transport back.
pub fn gin0(ideal: &PolyIdeal, opts: &GinOptions) -> Result<Gin0> {
    let (j, first) = gin(ideal, opts).map_err(|e| relabel(e, "gin0 stage 1"))?;
    gin0_from_gin(j, first, ideal.characteristic(), opts)
}

/// Second stage of [`gin0`] given the first-stage gin and its certificate.
pub fn gin0_from_gin(j: MonomialIdeal, first: GinCertificate, characteristic: u64, opts: &GinOptions) -> Result<Gin0> {
    let j0 = transport(&j, 0)?;
    let target = j0.hilbert_any();
    let (g0, second) = gin_with_hilbert(&PolyIdeal::from(&j0), &target, opts, "gin0 stage 2")
        .map_err(|e| relabel(e, "gin0 stage 2"))?;
    Ok(Gin0 { gin: j, gin0: transport(&g0, characteristic)?, certificates: [first, second] })
}

fn relabel(e: Error, stage: &str) -> Error {
    match e {
        Error::Certification { message, trial_outputs, .. } => {
            Error::Certification { stage: stage.to_string(), message, trial_outputs }
        }
        other => other,
    }
}

fn restrict_ideal<F: Field>(ideal: &Ideal<F>, j: usize, seed: u64) -> Result<Ideal<F>> {
    let n = ideal.nvars();
    let ring = &ideal.ring;
    let g = random_change(ring.field(), n, seed);
    let small = PolyRing::new(ring.field().clone(), j, ring.order());
    let mut gens = Vec::with_capacity(ideal.gens.len());
    for f in &ideal.gens {
        let moved = apply_change(ring, &g, f)?;
        let r = ring.substitute_zero_tail(&moved, j);
        if !r.is_zero() {
            gens.push(r);
        }
    }
    Ok(Ideal { ring: small, gens })
}

/// `g I` modulo `(X_{j+1}, ..., X_n)` for a seeded random `g`, as an ideal of
/// the first `j` variables over the sampling field.
pub fn general_restriction(ideal: &PolyIdeal, j: usize, opts: &GinOptions) -> Result<FieldIdeal> {
    let n = ideal.nvars();
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let spec = opts.sampling_field(ideal.characteristic(), 0);
    let fi = ideal.in_any_field(&spec, opts.order)?;
    if j == n {
        return Ok(fi);
    }
    Ok(match fi {
        FieldIdeal::Prime(i) => FieldIdeal::Prime(restrict_ideal(&i, j, opts.seed)?),
        FieldIdeal::Zech(i) => FieldIdeal::Zech(restrict_ideal(&i, j, opts.seed)?),
        FieldIdeal::PolyExt(i) => FieldIdeal::PolyExt(restrict_ideal(&i, j, opts.seed)?),
        FieldIdeal::Rational(i) => FieldIdeal::Rational(restrict_ideal(&i, j, opts.seed)?),
    })
}
