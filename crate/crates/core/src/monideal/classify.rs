use serde::Serialize;

use super::MonomialIdeal;
use crate::monomial::Monomial;

/// A generator that leaves the ideal under an exchange `(X_to / X_from)^power`.
///
/// For weak stability `result` is `X_to^power * u / X_m^{deg_m u}` with
/// `power` the largest exponent searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeFailure {
    pub generator: Vec<u32>,
    /// Zero-based variable indices.
    pub from_var: usize,
    pub to_var: usize,
    pub power: u32,
    pub result: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub characteristic: u64,
    pub borel_fixed: bool,
    pub strongly_stable: bool,
    pub stable: bool,
    /// In characteristic zero this coincides with strong stability.
    pub p_borel: bool,
    pub weakly_stable: bool,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_stable: Option<ExchangeFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<ExchangeFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_borel: Option<ExchangeFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_stable: Option<ExchangeFailure>,
}

fn failure(u: &Monomial, from: usize, to: usize, power: u32, result: &Monomial) -> ExchangeFailure {
    ExchangeFailure { generator: u.exps().to_vec(), from_var: from, to_var: to, power, result: result.exps().to_vec() }
}

/// `u * (X_to / X_from)^k`; requires `X_from^k | u`.
fn exchange(u: &Monomial, from: usize, to: usize, k: u32) -> Monomial {
    let mut e = u.exps().to_vec();
    e[from] -= k;
    e[to] += k;
    Monomial::from_slice(&e)
}

/// `k <=_p l`: every base-`p` digit of `k` is at most the matching digit of `l`.
pub fn p_dominated(mut k: u32, mut l: u32, p: u64) -> bool {
    let p = p as u32;
    while k > 0 {
        if k % p > l % p {
            return false;
        }
        k /= p;
        l /= p;
    }
    true
}

fn check_strongly_stable(i: &MonomialIdeal) -> Option<ExchangeFailure> {
    for u in i.gens().iter().rev() {
        for from in 0..i.nvars() {
            if u.exp(from) == 0 {
                continue;
            }
            for to in 0..from {
                let v = exchange(u, from, to, 1);
                if !i.contains(&v) {
                    return Some(failure(u, from, to, 1, &v));
                }
            }
        }
    }
    None
}

fn check_stable(i: &MonomialIdeal) -> Option<ExchangeFailure> {
    for u in i.gens().iter().rev() {
        let Some(m) = u.max_var() else { continue };
        for to in 0..m {
            let v = exchange(u, m, to, 1);
            if !i.contains(&v) {
                return Some(failure(u, m, to, 1, &v));
            }
        }
    }
    None
}

fn check_p_borel(i: &MonomialIdeal, p: u64) -> Option<ExchangeFailure> {
    for u in i.gens().iter().rev() {
        for from in 0..i.nvars() {
            let l = u.exp(from);
            for k in 1..=l {
                if !p_dominated(k, l, p) {
                    continue;
                }
                for to in 0..from {
                    let v = exchange(u, from, to, k);
                    if !i.contains(&v) {
                        return Some(failure(u, from, to, k, &v));
                    }
                }
            }
        }
    }
    None
}

fn check_weakly_stable(i: &MonomialIdeal) -> Option<ExchangeFailure> {
    let n = i.nvars();
    let max_exp: Vec<u32> = (0..n).map(|j| i.gens().iter().map(|g| g.exp(j)).max().unwrap_or(0).max(1)).collect();
    for u in i.gens().iter().rev() {
        let Some(m) = u.max_var() else { continue };
        let v = u.with_exp(m, 0);
        for (j, &top) in max_exp.iter().enumerate().take(m) {
            let found = (1..=top).any(|k| i.contains(&v.with_exp(j, v.exp(j) + k)));
            if !found {
                return Some(failure(u, m, j, top, &v.with_exp(j, v.exp(j) + top)));
            }
        }
    }
    None
}

/// Decides all stability notions from the minimal generators.
pub fn classify(i: &MonomialIdeal) -> ClassificationReport {
    let c = i.characteristic();
    let ss = check_strongly_stable(i);
    let st = check_stable(i);
    let ws = check_weakly_stable(i);
    let pb = if c == 0 { ss.clone() } else { check_p_borel(i, c) };
    let p_borel = pb.is_none();
    ClassificationReport {
        characteristic: c,
        borel_fixed: p_borel,
        strongly_stable: ss.is_none(),
        stable: st.is_none(),
        p_borel,
        weakly_stable: ws.is_none(),
        witnesses: Witnesses { strongly_stable: ss, stable: st, p_borel: pb, weakly_stable: ws },
    }
}

impl MonomialIdeal {
    pub fn classify(&self) -> ClassificationReport {
        classify(self)
    }

    pub fn is_weakly_stable(&self) -> bool {
        check_weakly_stable(self).is_none()
    }

    pub fn is_strongly_stable(&self) -> bool {
        check_strongly_stable(self).is_none()
    }

    pub fn is_stable(&self) -> bool {
        check_stable(self).is_none()
    }

    /// `p`-Borel in characteristic `p`, strongly stable in characteristic zero.
    pub fn is_borel_fixed(&self) -> bool {
        match self.characteristic() {
            0 => self.is_strongly_stable(),
            p => check_p_borel(self, p).is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomials_of_degree;
    use proptest::prelude::*;

    fn ideal(n: usize, c: u64, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, c, gens).unwrap()
    }

    #[test]
    fn strongly_stable_example() {
        let r = classify(&ideal(2, 0, &[&[2, 0], &[1, 1], &[0, 3]]));
        assert!(r.strongly_stable && r.stable && r.weakly_stable && r.p_borel && r.borel_fixed);
    }

    #[test]
    fn char_three_gin() {
        let r = classify(&ideal(2, 3, &[&[6, 0], &[3, 3], &[0, 9]]));
        assert!(!r.stable);
        assert_eq!(r.witnesses.stable.as_ref().unwrap().result, vec![1, 8]);
        assert!(r.weakly_stable);
        assert!(r.p_borel);
        assert!(r.borel_fixed);
        assert!(!r.strongly_stable);
        // the same exponents are not Borel-fixed in characteristic zero
        let r0 = classify(&ideal(2, 0, &[&[6, 0], &[3, 3], &[0, 9]]));
        assert!(!r0.borel_fixed);
    }

    #[test]
    fn non_segment_prime() {
        let r = classify(&ideal(2, 0, &[&[0, 1]]));
        assert!(!r.weakly_stable);
        assert!(r.witnesses.weakly_stable.is_some());
    }

    #[test]
    fn p_adic_dominance() {
        assert!(p_dominated(3, 3, 3));
        assert!(!p_dominated(1, 3, 3));
        assert!(p_dominated(1, 3, 2));
        assert!(!p_dominated(2, 5, 2));
        assert!(p_dominated(0, 0, 5));
    }

    /// Filter-regularity of `X_i` on `A/(I + (X_{i+1}, ..., X_n))` for all `i`,
    /// i.e. `J : X_i^inf` is contained in `J : m^inf`.
    fn weakly_stable_oracle(i: &MonomialIdeal) -> bool {
        let n = i.nvars();
        (0..n).all(|v| {
            let tail = (v + 1..n).map(|l| Monomial::var(n, l));
            let j = i.sum(&MonomialIdeal::new(n, 0, tail).unwrap());
            j.saturate_maximal().contains_ideal(&j.saturate_var(v))
        })
    }

    fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
        proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..6)
            .prop_map(|gs| MonomialIdeal::new(3, 0, gs.into_iter().map(|g| Monomial::from_slice(&g))).unwrap())
    }

    proptest! {
        #[test]
        fn implications_hold(i in small_ideal()) {
            let r = classify(&i);
            prop_assert!(!r.strongly_stable || r.stable);
            prop_assert!(!r.stable || r.weakly_stable);
            prop_assert_eq!(r.strongly_stable, r.borel_fixed);
        }

        #[test]
        fn strongly_stable_matches_full_closure(i in small_ideal()) {
            prop_assume!(!i.is_unit());
            let mut closed = true;
            'outer: for d in 0..7 {
                for w in monomials_of_degree(3, d) {
                    if !i.contains(&w) { continue; }
                    for from in 0..3 {
                        if w.exp(from) == 0 { continue; }
                        for to in 0..from {
                            if !i.contains(&exchange(&w, from, to, 1)) {
                                closed = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            prop_assert_eq!(classify(&i).strongly_stable, closed);
        }

        #[test]
        fn weak_stability_matches_saturation_oracle(i in small_ideal()) {
            prop_assume!(!i.is_unit());
            prop_assert_eq!(classify(&i).weakly_stable, weakly_stable_oracle(&i));
        }
    }
}
