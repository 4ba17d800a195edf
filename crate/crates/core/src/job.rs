//! JSON job files and the command dispatcher behind the `ginzero` binary.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{extremal_betti, local_cohomology_profile, regularity_depth_pd, serre_audit};
use crate::criteria::{
    componentwise_linear, crystallization_audit, invariants_via_gin0, regularity_bound_audit, restriction_regularity,
    seqcm_squarefree_named, AuditReport, CrystallizationTarget, Verdict,
};
use crate::error::{Error, Result};
use crate::field::{check_characteristic, PrimeField, RationalField};
use crate::gin::{gin, gin0, GinOptions};
use crate::groebner::buchberger;
use crate::ideal::PolyIdeal;
use crate::monideal::MonomialIdeal;
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;

pub const SCHEMA_VERSION: u32 = 1;

pub const COMMANDS: &[&str] = &[
    "gb",
    "initial",
    "hilbert",
    "classify",
    "gin",
    "gin0",
    "cohomology",
    "invariants",
    "cwl",
    "seqcm",
    "crystallize",
    "restrict-reg",
    "bound-audit",
];

/// On-disk shape of a job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile {
    vars: Vec<String>,
    #[serde(rename = "char")]
    characteristic: u64,
    #[serde(default)]
    order: MonomialOrder,
    gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_field_size: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<CrystallizationTarget>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobFlags {
    /// Degree window for Hilbert values, cohomology and Serre checks.
    pub window: Option<(i64, i64)>,
    /// Restriction index for `restrict-reg`.
    pub index: Option<usize>,
    pub target: Option<CrystallizationTarget>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub vars: Vec<String>,
    pub characteristic: u64,
    pub order: MonomialOrder,
    /// Generators as written in the file.
    pub gens: Vec<String>,
    pub ideal: PolyIdeal,
    pub command: Option<String>,
    pub seed: u64,
    pub trials: usize,
    pub min_field_size: u128,
    pub flags: JobFlags,
}

fn check_names(vars: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for v in vars {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
        }
        if !seen.insert(v.as_str()) {
            return Err(Error::InvalidArgument(format!("duplicate variable name `{v}`")));
        }
    }
    Ok(())
}

/// Parses a JSON job such as
/// `{"vars":["x","y"],"char":3,"order":"degrevlex","gens":["x^6","y^6"]}`.
pub fn parse_ideal_file(text: &str) -> Result<JobSpec> {
    let file: JobFile = serde_json::from_str(text)?;
    check_names(&file.vars)?;
    check_characteristic(file.characteristic)?;
    let mut polys = Vec::with_capacity(file.gens.len());
    for (k, g) in file.gens.iter().enumerate() {
        let p = parse_polynomial(g, &file.vars).map_err(|e| match e {
            Error::Parse { line, column, message } => {
                Error::Parse { line, column, message: format!("generator {} `{g}`: {message}", k + 1) }
            }
            other => other,
        })?;
        polys.push(p);
    }
    let ideal = PolyIdeal::new(file.vars.len(), file.characteristic, polys)?.with_names(file.vars.clone())?;
    let defaults = GinOptions::default();
    let spec = JobSpec {
        vars: file.vars,
        characteristic: file.characteristic,
        order: file.order,
        gens: file.gens,
        ideal,
        command: file.command,
        seed: file.seed.unwrap_or(defaults.seed),
        trials: file.trials.unwrap_or(defaults.trials),
        min_field_size: file.min_field_size.unwrap_or(defaults.min_field_size),
        flags: JobFlags { window: file.window, index: file.index, target: file.target },
    };
    if let Some(c) = &spec.command {
        if requires_homogeneous(c) {
            spec.ideal.require_homogeneous()?;
        }
    }
    Ok(spec)
}

impl JobSpec {
    /// JSON text that [`parse_ideal_file`] reads back to the same spec.
    pub fn to_json_string(&self) -> String {
        let defaults = GinOptions::default();
        let file = JobFile {
            vars: self.vars.clone(),
            characteristic: self.characteristic,
            order: self.order,
            gens: self.gens.clone(),
            command: self.command.clone(),
            seed: (self.seed != defaults.seed).then_some(self.seed),
            trials: (self.trials != defaults.trials).then_some(self.trials),
            min_field_size: (self.min_field_size != defaults.min_field_size).then_some(self.min_field_size),
            window: self.flags.window,
            index: self.flags.index,
            target: self.flags.target,
        };
        serde_json::to_string(&file).expect("job serializes")
    }

    pub fn gin_options(&self) -> GinOptions {
        GinOptions {
            order: self.order,
            seed: self.seed,
            trials: self.trials,
            min_field_size: self.min_field_size,
            ..GinOptions::default()
        }
    }

    fn echo(&self) -> Value {
        json!({
            "vars": self.vars,
            "char": self.characteristic,
            "order": self.order,
            "gens": self.gens,
        })
    }

    fn monomial(&self, command: &str) -> Result<MonomialIdeal> {
        self.ideal
            .as_monomial_ideal()
            .ok_or_else(|| Error::InvalidArgument(format!("`{command}` needs monomial generators")))
    }
}

fn requires_homogeneous(command: &str) -> bool {
    !matches!(command, "gb" | "initial" | "classify")
}

/// A finished job: the JSON report and the exit status it maps to.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub verdict: Option<Verdict>,
}

impl Report {
    /// 0 on success or pass, 2 on an audit failure.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(Verdict::Fail) => 2,
            _ => 0,
        }
    }

    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

fn names_json(i: &MonomialIdeal, names: &[String]) -> Value {
    serde_json::to_value(i.to_json(Some(names))).expect("ideal serializes")
}

fn audit(r: AuditReport) -> (Value, Option<Verdict>) {
    let v = r.verdict;
    (serde_json::to_value(r).expect("report serializes"), Some(v))
}

fn default_window(spec: &JobSpec, reg: i64) -> (i64, i64) {
    spec.flags.window.unwrap_or((-(spec.vars.len() as i64) - 5, reg + 2))
}

/// Runs `command`, or the command named in the job file when `None`.
pub fn run_command(spec: &JobSpec, command: Option<&str>) -> Result<Report> {
    let command =
        command.or(spec.command.as_deref()).ok_or_else(|| Error::InvalidArgument("no command given".into()))?;
    if !COMMANDS.contains(&command) {
        return Err(Error::UnknownCommand(command.to_string()));
    }
    if requires_homogeneous(command) {
        spec.ideal.require_homogeneous()?;
    }
    let names = &spec.vars;
    let opts = spec.gin_options();
    let (result, verdict) = match command {
        "gb" => (groebner_report(spec)?, None),
        "initial" => {
            let fi = spec.ideal.in_any_field(&prime_field_spec(spec.characteristic), spec.order)?;
            (names_json(&fi.initial_ideal()?, names), None)
        }
        "hilbert" => {
            let hs = spec.ideal.hilbert_series()?;
            let d = spec.ideal.generating_degree().unwrap_or(0) as i64;
            let (lo, hi) = spec.flags.window.unwrap_or((0, d));
            let hp = hs.hilbert_polynomial();
            let coeffs: Vec<String> = hp.coefficients().iter().map(|c| c.to_string()).collect();
            (
                json!({
                    "numerator": hs.numerator,
                    "window": [lo, hi],
                    "values": hs.values(lo, hi),
                    "dimension": hs.dimension(),
                    "hilbert_polynomial": coeffs,
                    "regularity_index": hs.regularity_index(),
                }),
                None,
            )
        }
        "classify" => (serde_json::to_value(spec.monomial(command)?.classify())?, None),
        "gin" => {
            let (j, cert) = gin(&spec.ideal, &opts)?;
            (json!({ "gin": names_json(&j, names), "certificate": cert }), None)
        }
        "gin0" => {
            let g = gin0(&spec.ideal, &opts)?;
            (
                json!({
                    "gin": names_json(&g.gin, names),
                    "gin0": names_json(&g.gin0, names),
                    "certificates": g.certificates,
                }),
                None,
            )
        }
        "cohomology" => (cohomology_report(spec, command)?, None),
        "invariants" => {
            let r = invariants_via_gin0(&spec.ideal, &opts)?;
            (
                json!({
                    "gin0": names_json(&r.gin0.gin0, names),
                    "reg": r.invariants.reg_ideal,
                    "reg_quotient": r.invariants.reg_quotient,
                    "depth": r.invariants.depth,
                    "pd": r.invariants.pd,
                    "corners": r.corners,
                    "profile": r.profile,
                    "certificates": r.gin0.certificates,
                }),
                None,
            )
        }
        "cwl" => audit(componentwise_linear(&spec.ideal, &opts)?),
        "seqcm" => audit(seqcm_squarefree_named(&spec.monomial(command)?, names, &opts)?),
        "crystallize" => {
            let target = spec.flags.target.unwrap_or(CrystallizationTarget::Gin0);
            audit(crystallization_audit(&spec.ideal, &opts, target)?)
        }
        "restrict-reg" => {
            let i = spec.flags.index.unwrap_or(spec.vars.len().saturating_sub(1));
            audit(restriction_regularity(&spec.ideal, i, &opts)?)
        }
        "bound-audit" => audit(regularity_bound_audit(&spec.ideal, &opts)?),
        _ => unreachable!("command list checked above"),
    };
    let json = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "input": spec.echo(),
        "seed": spec.seed,
        "trials": spec.trials,
        "result": result,
    });
    Ok(Report { json, verdict })
}

fn prime_field_spec(c: u64) -> crate::field::FieldSpec {
    if c == 0 {
        crate::field::FieldSpec::Rational { entry_bound: RationalField::default().entry_bound() }
    } else {
        crate::field::FieldSpec::Prime { p: c }
    }
}

fn groebner_report(spec: &JobSpec) -> Result<Value> {
    let names = &spec.vars;
    let (elements, leads) = if spec.characteristic == 0 {
        let i = spec.ideal.in_field(RationalField::default(), spec.order)?;
        let gb = buchberger(&i.ring, &i.gens)?;
        let texts: Vec<String> = gb.elements().iter().map(|g| i.ring.format(g, names)).collect();
        let leads: Vec<String> = gb.leading_monomials().iter().map(|m| m.display(names).to_string()).collect();
        (texts, leads)
    } else {
        let i = spec.ideal.in_field(PrimeField::new(spec.characteristic)?, spec.order)?;
        let gb = buchberger(&i.ring, &i.gens)?;
        let texts: Vec<String> = gb.elements().iter().map(|g| i.ring.format(g, names)).collect();
        let leads: Vec<String> = gb.leading_monomials().iter().map(|m| m.display(names).to_string()).collect();
        (texts, leads)
    };
    Ok(json!({ "basis": elements, "leading_monomials": leads, "reduced": true }))
}

fn cohomology_report(spec: &JobSpec, command: &str) -> Result<Value> {
    let i = spec.monomial(command)?;
    let profile = local_cohomology_profile(&i)?;
    let inv = regularity_depth_pd(&i)?;
    let (lo, hi) = default_window(spec, inv.reg_quotient);
    let values: Vec<Value> = profile
        .iter()
        .map(|c| json!({ "i": c.i, "values": (lo..=hi).map(|d| c.value(d)).collect::<Vec<_>>() }))
        .collect();
    let corners = if i.is_zero() { None } else { Some(extremal_betti(&i)?) };
    Ok(json!({
        "profile": profile,
        "window": [lo, hi],
        "values": values,
        "reg": inv.reg_ideal,
        "reg_quotient": inv.reg_quotient,
        "depth": inv.depth,
        "pd": inv.pd,
        "corners": corners,
        "serre_discrepancy": serre_audit(&i, lo, hi)?,
    }))
}
