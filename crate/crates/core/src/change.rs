//! Linear changes of coordinates `X_i -> sum_j g_ij X_j`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};

/// An invertible `n x n` matrix acting on the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange<F: Field> {
    n: usize,
    /// Row-major entries; row `i` is the image of `X_i`.
    entries: Vec<F::Elem>,
}

impl<F: Field> LinearChange<F> {
    /// Fails with [`Error::SingularChange`] when the determinant vanishes.
    pub fn new(field: &F, n: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        let g = LinearChange { n, entries };
        if field.is_zero(&g.determinant(field)) {
            return Err(Error::SingularChange);
        }
        Ok(g)
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        LinearChange { n, entries }
    }

    /// The permutation sending `X_i` to `X_{perm[i]}`.
    pub fn permutation(field: &F, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut entries = vec![field.zero(); n * n];
        for (i, &j) in perm.iter().enumerate() {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, n });
            }
            entries[i * n + j] = field.one();
        }
        LinearChange::new(field, n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self, field: &F) -> F::Elem {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !field.is_zero(&a[r * n + col])) else {
                return field.zero();
            };
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                }
                det = field.neg(&det);
            }
            let p = a[col * n + col].clone();
            det = field.mul(&det, &p);
            let pinv = field.inv(&p).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = field.mul(&a[r * n + col], &pinv);
                if field.is_zero(&factor) {
                    continue;
                }
                for k in col..n {
                    let v = field.mul(&factor, &a[col * n + k]);
                    a[r * n + k] = field.sub(&a[r * n + k], &v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, field: &F) -> Result<Self> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = LinearChange::identity(field, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| !field.is_zero(&a[r * n + col])).ok_or(Error::SingularChange)?;
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                    inv.swap(piv * n + k, col * n + k);
                }
            }
            let pinv = field.inv(&a[col * n + col]).expect("pivot is nonzero");
            for k in 0..n {
                a[col * n + k] = field.mul(&a[col * n + k], &pinv);
                inv[col * n + k] = field.mul(&inv[col * n + k], &pinv);
            }
            for r in 0..n {
                if r == col || field.is_zero(&a[r * n + col]) {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for k in 0..n {
                    let v = field.mul(&factor, &a[col * n + k]);
                    a[r * n + k] = field.sub(&a[r * n + k], &v);
                    let w = field.mul(&factor, &inv[col * n + k]);
                    inv[r * n + k] = field.sub(&inv[r * n + k], &w);
                }
            }
        }
        Ok(LinearChange { n, entries: inv })
    }

    /// Matrix product; acting by the result equals acting by `other` first.
    pub fn compose(&self, field: &F, other: &Self) -> Self {
        // (g after h)(X_i) = g(sum_k h_ik X_k) = sum_k h_ik sum_j g_kj X_j
        let n = self.n;
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let h = other.entry(i, k);
                if field.is_zero(h) {
                    continue;
                }
                for j in 0..n {
                    let v = field.mul(h, self.entry(k, j));
                    entries[i * n + j] = field.add(&entries[i * n + j], &v);
                }
            }
        }
        LinearChange { n, entries }
    }
}

/// Seeded random invertible change with entries uniform in the field.
/// Singular draws are discarded and the stream continues.
pub fn random_change<F: Field>(field: &F, n: usize, seed: u64) -> LinearChange<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let entries: Vec<F::Elem> = (0..n * n).map(|_| field.sample(&mut rng)).collect();
        if let Ok(g) = LinearChange::new(field, n, entries) {
            return g;
        }
    }
}

/// Applies a change to many polynomials, caching powers of the linear forms.
pub struct ChangeApplier<'a, F: Field> {
    ring: &'a PolyRing<F>,
    forms: Vec<Poly<F>>,
    powers: HashMap<(usize, u32), Poly<F>>,
}

impl<'a, F: Field> ChangeApplier<'a, F> {
    pub fn new(ring: &'a PolyRing<F>, g: &LinearChange<F>) -> Result<Self> {
        ring.check_vars(g.n())?;
        let n = g.n();
        let forms = (0..n)
            .map(|i| ring.from_terms((0..n).map(|j| (Monomial::var(n, j), g.entry(i, j).clone())).collect()))
            .collect();
        Ok(ChangeApplier { ring, forms, powers: HashMap::new() })
    }

    fn power(&mut self, i: usize, e: u32) -> Poly<F> {
        if let Some(p) = self.powers.get(&(i, e)) {
            return p.clone();
        }
        let p = if e == 0 {
            self.ring.one()
        } else if e == 1 {
            self.forms[i].clone()
        } else {
            let half = self.power(i, e / 2);
            let sq = self.ring.mul(&half, &half);
            if e % 2 == 1 {
                self.ring.mul(&sq, &self.forms[i])
            } else {
                sq
            }
        };
        self.powers.insert((i, e), p.clone());
        p
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> Poly<F> {
        let mut acc: Option<Poly<F>> = None;
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.power(i, e);
            acc = Some(match acc {
                None => p,
                Some(a) => self.ring.mul(&a, &p),
            });
        }
        acc.unwrap_or_else(|| self.ring.one())
    }

    pub fn apply(&mut self, f: &Poly<F>) -> Result<Poly<F>> {
        self.ring.check_vars(f.nvars())?;
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let img = self.apply_monomial(m);
            let scaled = self.ring.scale(&img, c);
            terms.extend(scaled.into_terms());
        }
        Ok(self.ring.from_terms(terms))
    }
}

/// `f(g X)`: substitutes `X_i -> sum_j g_ij X_j` and expands.
pub fn apply_change<F: Field>(ring: &PolyRing<F>, g: &LinearChange<F>, f: &Poly<F>) -> Result<Poly<F>> {
    ChangeApplier::new(ring, g)?.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField, ZechField};
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn vars(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_and_swap() {
        let f = RationalField::default();
        let r = PolyRing::new(f.clone(), 2, MonomialOrder::DegRevLex);
        let p = r.from_int(&parse_polynomial("x^2 + 3*x*y", &vars(2)).unwrap()).unwrap();
        let id = LinearChange::identity(&f, 2);
        assert_eq!(apply_change(&r, &id, &p).unwrap(), p);
        let swap = LinearChange::permutation(&f, &[1, 0]).unwrap();
        let x2 = r.from_int(&parse_polynomial("x^2", &vars(2)).unwrap()).unwrap();
        let y2 = r.from_int(&parse_polynomial("y^2", &vars(2)).unwrap()).unwrap();
        assert_eq!(apply_change(&r, &swap, &x2).unwrap(), y2);
    }

    #[test]
    fn char_two_square() {
        let f = PrimeField::new(2).unwrap();
        let r = PolyRing::new(f.clone(), 2, MonomialOrder::DegRevLex);
        // x -> x + y, y -> y
        let g = LinearChange::new(&f, 2, vec![1, 1, 0, 1]).unwrap();
        let x2 = r.from_int(&parse_polynomial("x^2", &vars(2)).unwrap()).unwrap();
        let want = r.from_int(&parse_polynomial("x^2 + y^2", &vars(2)).unwrap()).unwrap();
        assert_eq!(apply_change(&r, &g, &x2).unwrap(), want);
    }

    #[test]
    fn singular_rejected() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(LinearChange::new(&f, 2, vec![1, 2, 2, 4]), Err(Error::SingularChange)));
    }

    #[test]
    fn random_change_is_deterministic_and_invertible() {
        let f = ZechField::new(2, 16).unwrap();
        for seed in 0..20u64 {
            let g = random_change(&f, 3, seed);
            assert_eq!(g, random_change(&f, 3, seed));
            assert!(!f.is_zero(&g.determinant(&f)));
        }
        let small = PrimeField::new(2).unwrap();
        for seed in 0..20u64 {
            let g = random_change(&small, 1, seed);
            assert_eq!(g.entries(), &[1]);
        }
        assert_ne!(random_change(&f, 3, 1), random_change(&f, 3, 2));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let f = RationalField::new(50);
        let g = random_change(&f, 3, 11);
        let gi = g.inverse(&f).unwrap();
        assert_eq!(g.compose(&f, &gi), LinearChange::identity(&f, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn change_then_inverse_roundtrips(seed in 0u64..1000, a in 0i64..5, b in 0i64..5) {
            let f = PrimeField::new(101).unwrap();
            let r = PolyRing::new(f.clone(), 3, MonomialOrder::DegRevLex);
            let text = format!("{a}*x^2*z + y^3 - {b}*x*y*z + z^3");
            let p = r.from_int(&parse_polynomial(&text, &vars(3)).unwrap()).unwrap();
            let g = random_change(&f, 3, seed);
            let gi = g.inverse(&f).unwrap();
            let q = apply_change(&r, &gi, &p).unwrap();
            prop_assert!(q.is_homogeneous());
            prop_assert_eq!(apply_change(&r, &g, &q).unwrap(), p);
        }
    }
}
