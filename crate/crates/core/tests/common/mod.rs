#![allow(dead_code)]

use ginzero::ideal::PolyIdeal;
use ginzero::monideal::MonomialIdeal;
use ginzero::monomial::{monomials_of_degree, Monomial};
use ginzero::poly::IntPoly;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CHARACTERISTICS: [u64; 4] = [0, 2, 3, 5];

pub struct Entry {
    pub label: String,
    pub ideal: PolyIdeal,
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32, terms: usize) -> IntPoly {
    let monos = monomials_of_degree(n, d);
    let mut chosen: Vec<(Monomial, BigInt)> = Vec::new();
    for _ in 0..terms {
        let m = monos[rng.random_range(0..monos.len())].clone();
        if chosen.iter().any(|(u, _)| *u == m) {
            continue;
        }
        let mut c: i64 = rng.random_range(1..=4);
        if rng.random_bool(0.5) {
            c = -c;
        }
        chosen.push((m, BigInt::from(c)));
    }
    IntPoly::from_int_terms(n, chosen).unwrap()
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize, c: u64, monomial: bool) -> Option<PolyIdeal> {
    let count = rng.random_range(1..=4usize);
    let max_deg = 4;
    let gens = (0..count)
        .map(|_| {
            let d = rng.random_range(1..=max_deg);
            let terms = if monomial { 1 } else { rng.random_range(1..=6usize) };
            random_form(rng, n, d, terms)
        })
        .collect();
    let i = PolyIdeal::new(n, c, gens).ok()?;
    (!i.is_zero()).then_some(i)
}

fn frobenius_entry(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Option<PolyIdeal> {
    let count = rng.random_range(1..=3usize);
    let top = 4 / p as u32;
    let gens = (0..count)
        .map(|_| {
            let d = rng.random_range(1..=top);
            let terms = rng.random_range(1..=4usize);
            random_form(rng, n, d, terms)
        })
        .collect();
    let base = PolyIdeal::new(n, p, gens).ok()?;
    (!base.is_zero()).then(|| base.frobenius_power().unwrap())
}

/// Homogeneous ideals in at most four variables, generated in degree at
/// most four, over characteristics 0, 2, 3 and 5. Every ninth entry is a
/// Frobenius power in characteristic 2 or 3.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for k in 0u64.. {
        if out.len() >= 216 {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let n = 2 + (k / 4 % 3) as usize;
        let entry = if k % 9 == 8 {
            let p = if k % 2 == 0 { 2 } else { 3 };
            frobenius_entry(&mut rng, n, p).map(|i| (format!("frobenius-{k}"), i))
        } else {
            let c = CHARACTERISTICS[(k % 4) as usize];
            random_ideal(&mut rng, n, c, k % 9 < 3).map(|i| (format!("random-{k}"), i))
        };
        if let Some((label, ideal)) = entry {
            out.push(Entry { label, ideal });
        }
    }
    out
}

/// Intersection of ideals primary to `(x_1, .., x_i)` for random `i`; its
/// associated primes are initial segments, so the result is weakly stable.
pub fn weakly_stable(n: usize, characteristic: u64, seed: u64) -> MonomialIdeal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut acc: Option<MonomialIdeal> = None;
    for _ in 0..rng.random_range(1..=3usize) {
        let i = rng.random_range(1..=n);
        let mut gens: Vec<Monomial> = (0..i)
            .map(|v| {
                let e = rng.random_range(1..=4u32);
                Monomial::var(n, v).scale(e)
            })
            .collect();
        for _ in 0..rng.random_range(0..=3usize) {
            let exps: Vec<u32> = (0..n).map(|v| if v < i { rng.random_range(0..=2) } else { 0 }).collect();
            if exps.iter().any(|&e| e > 0) {
                gens.push(Monomial::from_slice(&exps));
            }
        }
        let q = MonomialIdeal::new(n, characteristic, gens).unwrap();
        acc = Some(match acc {
            None => q,
            Some(a) => a.intersect(&q),
        });
    }
    acc.unwrap()
}

pub fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w", "v", "u"][..n].iter().map(|s| s.to_string()).collect()
}
