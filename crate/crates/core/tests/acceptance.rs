mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use ginzero::cohomology::{extremal_betti, local_cohomology_profile, regularity_depth_pd, serre_audit, Corner};
use ginzero::criteria::{
    componentwise_linear, crystallization_audit, invariants_via_gin0, regularity_bound_audit, restriction_regularity,
    seqcm_squarefree_named, CrystallizationTarget,
};
use ginzero::gin::{gin, gin0, gin0_from_gin, transport, GinOptions};
use ginzero::ideal::PolyIdeal;
use ginzero::job::{parse_ideal_file, run_command, JobSpec};
use ginzero::monideal::{alexander_dual, ek_betti, MonomialIdeal};

type Check = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Check + 'a>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: ginzero::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn mono(n: usize, c: u64, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, c, gens).unwrap()
}

fn job(vars: &[&str], c: u64, gens: &[&str], extra: serde_json::Value) -> JobSpec {
    let mut v = json!({ "vars": vars, "char": c, "gens": gens });
    for (k, x) in extra.as_object().unwrap() {
        v[k] = x.clone();
    }
    parse_ideal_file(&v.to_string()).unwrap()
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let t = Instant::now();
    let out = f()?;
    let e = t.elapsed();
    ensure!(e < limit, "{what} took {:.2}s, limit {}s", e.as_secs_f64(), limit.as_secs());
    Ok(out)
}

const RP2: [&str; 10] = [
    "x1*x2*x3", "x1*x2*x5", "x1*x3*x6", "x1*x4*x5", "x1*x4*x6", "x2*x3*x4", "x2*x4*x6", "x2*x5*x6", "x3*x4*x5",
    "x3*x5*x6",
];
const RP2_VARS: [&str; 6] = ["x1", "x2", "x3", "x4", "x5", "x6"];

fn acceptance_jobs() -> Vec<(JobSpec, &'static str)> {
    let none = json!({});
    vec![
        (job(&["x", "y"], 3, &["x^6", "y^6"], none.clone()), "gin"),
        (job(&["x", "y"], 3, &["x^6", "y^6"], none.clone()), "gin0"),
        (job(&["x", "y"], 3, &["x^2", "y^2"], none.clone()), "gin"),
        (job(&["x", "y", "z"], 2, &["x^2", "y^2", "z^2"], none.clone()), "gin"),
        (job(&["x", "y"], 2, &["x^2", "y^2"], none.clone()), "gin0"),
        (job(&["x", "y", "z"], 2, &["x^2", "y^2", "z^2"], json!({"index": 2})), "restrict-reg"),
        (job(&["x", "y"], 3, &["x^6", "y^6"], json!({"target": "gin"})), "crystallize"),
        (job(&RP2_VARS, 0, &RP2, none.clone()), "invariants"),
        (job(&RP2_VARS, 2, &RP2, none.clone()), "invariants"),
        (job(&RP2_VARS, 2, &RP2, none.clone()), "cwl"),
        (job(&RP2_VARS, 2, &RP2, none.clone()), "seqcm"),
        (job(&["x", "y", "z"], 5, &["x^2", "x*y", "y^3"], none.clone()), "cohomology"),
        (job(&["x", "y", "z"], 0, &["x^2 + y^2 - z^2", "x*y*z"], none), "bound-audit"),
    ]
}

fn criterion_1() -> Check {
    let opts = GinOptions::default();
    let limit = Duration::from_secs(10);
    let i = job(&["x", "y"], 3, &["x^6", "y^6"], json!({})).ideal;
    let g = timed(limit, "gin (x^6, y^6)", || ok(gin(&i, &opts), "gin").map(|r| r.0))?;
    ensure!(g == mono(2, 3, &[&[6, 0], &[3, 3], &[0, 9]]), "gin (x^6, y^6) = {g:?}");
    let g0 = timed(limit, "gin0 (x^6, y^6)", || ok(gin0(&i, &opts), "gin0"))?.gin0;
    let expected = mono(2, 3, &[&[6, 0], &[5, 1], &[4, 3], &[3, 5], &[2, 7], &[1, 9], &[0, 11]]);
    ensure!(g0 == expected, "gin0 (x^6, y^6) = {g0:?}");
    let i2 = job(&["x", "y"], 3, &["x^2", "y^2"], json!({})).ideal;
    let g2 = timed(limit, "gin (x^2, y^2)", || ok(gin(&i2, &opts), "gin").map(|r| r.0))?;
    ensure!(g2 == mono(2, 3, &[&[2, 0], &[1, 1], &[0, 3]]), "gin (x^2, y^2) = {g2:?}");
    Ok("gin = (x^6, x^3y^3, y^9), gin0 has 7 generators, gin (x^2, y^2) = (x^2, xy, y^3)".into())
}

fn criterion_2() -> Check {
    let opts = GinOptions::default();
    let t = Instant::now();
    let i3 = job(&["x", "y", "z"], 2, &["x^2", "y^2", "z^2"], json!({})).ideal;
    let i2 = job(&["x", "y"], 2, &["x^2", "y^2"], json!({})).ideal;
    let g = ok(gin(&i3, &opts), "gin")?.0;
    ensure!(g == mono(3, 2, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), "gin (x^2, y^2, z^2) = {g:?}");
    let g0 = ok(gin0(&i2, &opts), "gin0")?.gin0;
    ensure!(g0 == mono(2, 2, &[&[2, 0], &[1, 1], &[0, 3]]), "gin0 (x^2, y^2) = {g0:?}");
    let r = ok(ok(gin0(&i3, &opts), "gin0")?.gin0.restrict(2), "restrict")?;
    ensure!(r == mono(2, 2, &[&[2, 0], &[1, 1], &[0, 2]]), "restricted gin0 = {r:?}");
    let a = ok(restriction_regularity(&i3, 2, &opts), "restriction_regularity")?;
    ensure!(a.lhs == json!(2) && a.rhs == json!(1) && a.passed(), "restriction_regularity: {} vs {}", a.lhs, a.rhs);
    ensure!(t.elapsed() < Duration::from_secs(10), "took {:.2}s", t.elapsed().as_secs_f64());
    Ok("Gin fixed, Gin0 (x^2, xy, y^3), restriction (x^2, xy, y^2), reg 2 >= 1".into())
}

fn criterion_3() -> Check {
    let t = Instant::now();
    let opts = GinOptions::default();
    let names: Vec<String> = RP2_VARS.iter().map(|s| s.to_string()).collect();
    let mut summary = Vec::new();
    for c in [0u64, 2] {
        let i = job(&RP2_VARS, c, &RP2, json!({})).ideal;
        let m = i.as_monomial_ideal().unwrap();
        if c == 0 {
            ensure!(ok(alexander_dual(&m), "alexander_dual")? == m, "the ideal is not self-dual");
        }
        let inv = ok(invariants_via_gin0(&i, &opts), "invariants")?.invariants;
        let (reg, pd) = (inv.reg_ideal.unwrap(), inv.pd);
        let expected = if c == 0 { 3 } else { 4 };
        ensure!(reg == expected && pd as i64 == expected, "char {c}: reg {reg}, pd {pd}");
        if c == 2 {
            let g = ok(gin(&i, &opts), "gin")?.0;
            let direct = ok(regularity_depth_pd(&g), "cohomology of Gin")?;
            let corners = ok(extremal_betti(&g), "corners of Gin")?.corners;
            let corner_reg = corners.iter().map(|c| c.d).max().unwrap() + 1;
            let corner_pd = corners.iter().map(|c| c.i).max().unwrap();
            ensure!(
                direct.reg_ideal == Some(reg) && direct.pd == pd && corner_reg == reg && corner_pd == pd,
                "Gin over GF(2): reg {:?}, pd {}, corners {corners:?}",
                direct.reg_ideal,
                direct.pd
            );
        }
        let cwl = ok(componentwise_linear(&i, &opts), "componentwise_linear")?;
        let seq = ok(seqcm_squarefree_named(&m, &names, &opts), "seqcm")?;
        let pass = c == 0;
        ensure!(cwl.passed() == pass, "char {c}: componentwise_linear {:?}", cwl.verdict);
        ensure!(seq.passed() == pass, "char {c}: seqcm {:?}", seq.verdict);
        summary.push(format!("char {c}: reg {reg}, pd {pd}, cwl {:?}, seqcm {:?}", cwl.verdict, seq.verdict));
    }
    ensure!(t.elapsed() < Duration::from_secs(300), "took {:.2}s", t.elapsed().as_secs_f64());
    Ok(format!("self-dual; {}", summary.join("; ")))
}

fn criterion_4(corpus: &[common::Entry]) -> Check {
    let t = Instant::now();
    let results: Vec<Result<(bool, bool), String>> = corpus
        .par_iter()
        .enumerate()
        .map(|(k, e)| {
            let opts = GinOptions::default().with_seed(k as u64);
            let zero = ok(crystallization_audit(&e.ideal, &opts, CrystallizationTarget::Gin0), &e.label)?;
            let one = ok(crystallization_audit(&e.ideal, &opts, CrystallizationTarget::Gin), &e.label)?;
            Ok((zero.passed(), one.passed()))
        })
        .collect();
    let mut gin_failures = Vec::new();
    for (e, r) in corpus.iter().zip(results) {
        let (zero, one) = r?;
        ensure!(zero, "{}: the gin0 audit failed", e.label);
        if !one {
            gin_failures.push(e.label.clone());
        }
    }
    ensure!(!gin_failures.is_empty(), "no corpus member fails the gin audit");
    ensure!(t.elapsed() < Duration::from_secs(1800), "took {:.2}s", t.elapsed().as_secs_f64());
    Ok(format!("{} ideals: gin0 always crystallizes, gin fails on {}", corpus.len(), gin_failures.join(", ")))
}

const SUITES: [&str; 9] = [
    "idempotence",
    "gin0 strongly stable with the input's Hilbert function",
    "profile of Gin = profile of Gin0",
    "restriction identities and inequality",
    "saturated restriction identity",
    "Serre formula",
    "corners vs Eliahou-Kervaire",
    "regularity and generator bounds",
    "transport invariance",
];

fn window_hi(i: &MonomialIdeal) -> Result<i64, String> {
    Ok(ok(regularity_depth_pd(i), "invariants")?.reg_ideal.unwrap_or(0) + 2)
}

fn saturated_restriction(i: &MonomialIdeal) -> Result<bool, String> {
    let n = i.nvars();
    if n < 2 {
        return Ok(true);
    }
    let lhs = ok(i.restrict(n - 1), "restrict")?.saturate_var(n - 2);
    let rhs = ok(i.saturate_last().restrict(n - 1), "restrict")?.saturate_var(n - 2);
    Ok(lhs == rhs)
}

fn corners_agree(i: &MonomialIdeal) -> Result<bool, String> {
    if i.is_zero() || !i.classify().stable {
        return Ok(true);
    }
    let ek = ok(ek_betti(i), "ek_betti")?;
    let mut expected: Vec<Corner> =
        ek.extremal().into_iter().map(|(h, d, v)| Corner { i: h + 1, d: d as i64 - 1, value: v as i64 }).collect();
    expected.sort_by_key(|c| c.i);
    Ok(ok(extremal_betti(i), "extremal_betti")?.corners == expected)
}

fn restriction_inequalities(w: &MonomialIdeal, opts: &GinOptions) -> Result<Option<String>, String> {
    let gw = ok(gin(&PolyIdeal::from(w), opts), "gin of weakly stable ideal")?.0;
    for j in 1..=w.nvars() {
        let a = ok(w.restrict(j), "restrict")?;
        let b = ok(gw.restrict(j), "restrict")?;
        let pa = ok(local_cohomology_profile(&a), "profile")?;
        let pb = ok(local_cohomology_profile(&b), "profile")?;
        if pa[1..] != pb[1..] {
            return Ok(Some(format!("j = {j}: higher cohomology differs")));
        }
        let hi = pa[0].end().max(pb[0].end()).unwrap_or(0);
        if let Some(d) = (0..=hi).find(|&d| pa[0].value(d) < pb[0].value(d)) {
            return Ok(Some(format!("j = {j}: H^0 smaller in degree {d}")));
        }
        let ra = ok(regularity_depth_pd(&a), "invariants")?.reg_quotient;
        let rb = ok(regularity_depth_pd(&b), "invariants")?.reg_quotient;
        if ra < rb {
            return Ok(Some(format!("j = {j}: reg {ra} < {rb}")));
        }
    }
    Ok(None)
}

fn entry_failures(k: usize, e: &common::Entry) -> Result<Vec<(usize, String)>, String> {
    let opts = GinOptions::default().with_seed(k as u64);
    let i = &e.ideal;
    let (n, c) = (i.nvars(), i.characteristic());
    let mut bad = Vec::new();
    let mut fail = |s: usize, ok: bool, msg: String| {
        if !ok {
            bad.push((s, msg));
        }
    };

    let (g, cert) = ok(gin(i, &opts), "gin")?;
    let g0 = ok(gin0_from_gin(g.clone(), cert, c, &opts), "gin0")?.gin0;
    let again = ok(gin(&PolyIdeal::from(&g), &opts), "gin of gin")?.0;
    fail(0, again == g, format!("gin(gin I) = {again:?}"));

    let hi = window_hi(&g0)?;
    let hf_in = ok(i.hilbert_series(), "hilbert")?.values(0, hi);
    let hf_g0 = ok(g0.hilbert(), "hilbert")?.values(0, hi);
    fail(1, g0.classify().strongly_stable && hf_in == hf_g0, format!("gin0 = {g0:?}"));

    let profile = ok(local_cohomology_profile(&g), "profile of Gin")?;
    fail(2, profile == ok(local_cohomology_profile(&g0), "profile of Gin0")?, "profiles differ".into());

    let w = common::weakly_stable(n, c, k as u64);
    fail(3, w.classify().weakly_stable, format!("{w:?} is not weakly stable"));
    if let Some(msg) = restriction_inequalities(&w, &opts)? {
        fail(3, false, format!("{w:?}: {msg}"));
    }

    for x in [&g, &g0, &w] {
        fail(4, saturated_restriction(x)?, format!("{x:?}"));
        let s = ok(serre_audit(x, -(n as i64) - 5, window_hi(x)?), "serre")?;
        fail(5, s == 0, format!("{x:?}: discrepancy {s}"));
        fail(6, corners_agree(x)?, format!("{x:?}"));
        let p = ok(local_cohomology_profile(x), "profile")?;
        for q in common::CHARACTERISTICS {
            let moved = ok(transport(x, q), "transport")?;
            fail(8, ok(local_cohomology_profile(&moved), "profile")? == p, format!("{x:?} to char {q}"));
        }
    }

    if n >= 2 && !i.is_zero() {
        let b = ok(regularity_bound_audit(i, &opts), "bound audit")?;
        fail(7, b.passed(), b.witnesses.join("; "));
    }
    Ok(bad)
}

fn criterion_5(corpus: &[common::Entry]) -> Check {
    let results: Vec<_> = corpus.par_iter().enumerate().map(|(k, e)| entry_failures(k, e)).collect();
    let mut counts = [0usize; SUITES.len()];
    let mut first: Vec<String> = Vec::new();
    for (e, r) in corpus.iter().zip(results) {
        for (s, msg) in r.map_err(|m| format!("{}: {m}", e.label))? {
            counts[s] += 1;
            if first.len() < 5 {
                first.push(format!("{} [{}] {msg}", e.label, SUITES[s]));
            }
        }
    }
    let total: usize = counts.iter().sum();
    ensure!(total == 0, "{total} failures: {}", first.join(" | "));
    Ok(format!("{} suites on {} ideals plus {} weakly stable ideals", SUITES.len(), corpus.len(), corpus.len()))
}

fn criterion_6() -> Check {
    let jobs = acceptance_jobs();
    for (spec, cmd) in &jobs {
        let a = ok(run_command(spec, Some(cmd)), cmd)?.to_pretty_string();
        let b = ok(run_command(spec, Some(cmd)), cmd)?.to_pretty_string();
        ensure!(a == b, "{cmd} on {} differs between runs", spec.to_json_string());
    }
    let dir = std::env::temp_dir().join(format!("ginzero_acceptance_{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (k, (spec, cmd)) in jobs.iter().enumerate().take(8) {
        let path = dir.join(format!("job{k}.json"));
        std::fs::write(&path, spec.to_json_string()).map_err(|e| e.to_string())?;
        let run =
            || Command::new(env!("CARGO_BIN_EXE_ginzero")).arg(cmd).arg(&path).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure!(a.stdout == b.stdout && !a.stdout.is_empty(), "ginzero {cmd} job{k}.json differs between runs");
        let direct = ok(run_command(spec, Some(cmd)), cmd)?.to_pretty_string();
        ensure!(a.stdout == direct.as_bytes(), "ginzero {cmd} job{k}.json differs from the library report");
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} jobs byte-identical across library and binary runs", jobs.len()))
}

fn main() {
    let corpus = common::corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("characteristic 3 gap example", Box::new(criterion_1)),
        ("characteristic 2 restriction example", Box::new(criterion_2)),
        ("real projective plane", Box::new(criterion_3)),
        ("crystallization on the corpus", Box::new(|| criterion_4(&corpus))),
        ("property suites on the corpus", Box::new(|| criterion_5(&corpus))),
        ("determinism", Box::new(criterion_6)),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match &r {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({secs:.2}s): {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
