mod common;

use rayon::prelude::*;

use ginzero::cohomology::{local_cohomology_profile, regularity_depth_pd};
use ginzero::criteria::{componentwise_linear, restriction_regularity, seqcm_squarefree};
use ginzero::gin::{gin, gin0, GinOptions};
use ginzero::ideal::PolyIdeal;
use ginzero::monideal::{alexander_dual, ek_betti, frobenius_power, MonomialIdeal};
use ginzero::monomial::Monomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts(k: usize) -> GinOptions {
    GinOptions::default().with_seed(1000 + k as u64)
}

fn weakly_stable_inputs() -> Vec<MonomialIdeal> {
    (0..120u64)
        .map(|k| {
            let n = 2 + (k % 3) as usize;
            common::weakly_stable(n, common::CHARACTERISTICS[(k % 4) as usize], 7 * k + 3)
        })
        .collect()
}

#[test]
fn general_restrictions_have_larger_regularity() {
    let corpus = common::corpus();
    let bad: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter(|(k, _)| k % 3 == 0)
        .flat_map(|(k, e)| {
            (1..e.ideal.nvars())
                .filter_map(|j| {
                    let r = restriction_regularity(&e.ideal, j, &opts(k)).unwrap();
                    let equal_in_char_zero = e.ideal.characteristic() != 0 || r.lhs == r.rhs;
                    (!r.passed() || !equal_in_char_zero).then(|| format!("{} at {j}: {} vs {}", e.label, r.lhs, r.rhs))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn generator_count_never_exceeds_gin0() {
    let corpus = common::corpus();
    corpus.par_iter().enumerate().for_each(|(k, e)| {
        let r = componentwise_linear(&e.ideal, &opts(k)).unwrap();
        assert!(r.lhs.as_u64().unwrap() <= r.rhs.as_u64().unwrap(), "{}", e.label);
    });
}

#[test]
fn char_zero_gin0_is_gin() {
    let corpus = common::corpus();
    corpus.par_iter().enumerate().filter(|(_, e)| e.ideal.characteristic() == 0).for_each(|(k, e)| {
        let g = gin0(&e.ideal, &opts(k)).unwrap();
        assert_eq!(g.gin, g.gin0, "{}", e.label);
    });
}

#[test]
fn gin0_is_a_fixed_point() {
    let corpus = common::corpus();
    corpus.par_iter().enumerate().filter(|(k, _)| k % 2 == 0).for_each(|(k, e)| {
        let g0 = gin0(&e.ideal, &opts(k)).unwrap().gin0;
        assert_eq!(gin0(&PolyIdeal::from(&g0), &opts(k)).unwrap().gin0, g0, "{}", e.label);
    });
}

#[test]
fn gin_commutes_with_frobenius() {
    let corpus = common::corpus();
    let checked = corpus
        .par_iter()
        .enumerate()
        .filter(|(_, e)| {
            let c = e.ideal.characteristic();
            (c == 2 || c == 3) && e.ideal.nvars() <= 3 && e.ideal.generating_degree().unwrap_or(0) <= 2
        })
        .map(|(k, e)| {
            let p = e.ideal.characteristic();
            let lhs = gin(&e.ideal.frobenius_power().unwrap(), &opts(k)).unwrap().0;
            let rhs = frobenius_power(&gin(&e.ideal, &opts(k)).unwrap().0, p).unwrap();
            assert_eq!(lhs, rhs, "{}", e.label);
        })
        .count();
    assert!(checked >= 10, "only {checked} inputs");
}

#[test]
fn cohomology_is_bounded_by_gin0() {
    weakly_stable_inputs().par_iter().enumerate().for_each(|(k, w)| {
        let g0 = gin0(&PolyIdeal::from(w), &opts(k)).unwrap().gin0;
        let a = local_cohomology_profile(w).unwrap();
        let b = local_cohomology_profile(&g0).unwrap();
        let n = w.nvars() as i64;
        let hi = regularity_depth_pd(&g0).unwrap().reg_quotient + 2;
        for (x, y) in a.iter().zip(&b) {
            for d in -n - 5..=hi {
                assert!(x.value(d) <= y.value(d), "{w:?}: H^{} in degree {d}", x.i);
            }
        }
    });
}

#[test]
fn betti_numbers_bounded_on_stable_inputs() {
    let mut checked = 0;
    for (k, w) in weakly_stable_inputs().iter().enumerate() {
        if w.is_zero() || !w.classify().stable {
            continue;
        }
        let g0 = gin0(&PolyIdeal::from(w), &opts(k)).unwrap().gin0;
        let (a, b) = (ek_betti(w).unwrap(), ek_betti(&g0).unwrap());
        for i in 0..=1 {
            assert!(a.total(i) <= b.total(i), "{w:?}: beta_{i}");
        }
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} stable inputs");
}

fn random_squarefree(rng: &mut ChaCha8Rng, n: usize) -> MonomialIdeal {
    let gens: Vec<Monomial> = (0..rng.random_range(1..=4))
        .map(|_| loop {
            let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..=1)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::from_slice(&e);
            }
        })
        .collect();
    MonomialIdeal::new(n, 0, gens).unwrap()
}

#[test]
fn alexander_duality_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..80 {
        let i = random_squarefree(&mut rng, 2 + k % 4);
        let dual = alexander_dual(&i).unwrap();
        assert_eq!(alexander_dual(&dual).unwrap(), i);
        if i.classify().weakly_stable {
            assert!(seqcm_squarefree(&i, &opts(k)).unwrap().passed(), "{i:?}");
        }
    }
}
