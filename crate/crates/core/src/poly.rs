//! Sparse polynomials over a [`Field`] and the ring context that sorts them.

use std::cmp::Ordering;
use std::fmt::Write;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// Terms strictly decreasing in the ring's order, no zero coefficients.
///
/// The coefficient type is generic so that parsed integer polynomials
/// (`Polynomial<BigInt>`) share the representation; those are kept in
/// lex storage order until mapped into a [`PolyRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

pub type IntPoly = Polynomial<BigInt>;

impl<C> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, C)>) -> Self {
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Degree of the leading term, which is the total degree for graded orders.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

impl IntPoly {
    /// Builds an integer polynomial from arbitrary terms (merged, zeros dropped,
    /// stored in lex order).
    pub fn from_int_terms(nvars: usize, mut terms: Vec<(Monomial, BigInt)>) -> Result<IntPoly> {
        for (m, _) in &terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: m.nvars() });
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != BigInt::from(0));
        Ok(Polynomial { nvars, terms: out })
    }

    pub fn monomial(m: Monomial) -> IntPoly {
        Polynomial { nvars: m.nvars(), terms: vec![(m, BigInt::from(1))] }
    }

    /// Text rendering in the input syntax, e.g. `3*x^2*y - y^3`.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".to_string();
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i > 0, neg) {
                (false, true) => s.push('-'),
                (true, true) => s.push_str(" - "),
                (true, false) => s.push_str(" + "),
                (false, false) => {}
            }
            let one = BigInt::from(1);
            if m.is_one() {
                let _ = write!(s, "{mag}");
            } else if mag == one {
                let _ = write!(s, "{}", m.display(names));
            } else {
                let _ = write!(s, "{mag}*{}", m.display(names));
            }
        }
        s
    }
}

/// `K[X_1..X_n]` with a fixed term order.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
}

pub type Poly<F> = Polynomial<<F as Field>::Elem>;

/// Arithmetic selector for [`PolyRing::arith`].
#[derive(Clone, Debug)]
pub enum Operand<'a, F: Field> {
    Poly(&'a Poly<F>),
    Scalar(&'a F::Elem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Scale,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, nvars: usize, order: MonomialOrder) -> Self {
        PolyRing { field, nvars, order }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing { field: self.field.clone(), nvars: self.nvars, order }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Poly<F> {
        Polynomial::zero(self.nvars)
    }

    pub fn one(&self) -> Poly<F> {
        self.term(Monomial::one(self.nvars), self.field.one())
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        self.term(Monomial::var(self.nvars, i), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial { nvars: self.nvars, terms: vec![(m, c)] }
    }

    /// Sorts, merges and drops zero terms.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        let ord = self.order;
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Polynomial { nvars: self.nvars, terms: out }
    }

    /// Maps an integer polynomial into this ring.
    pub fn from_int(&self, f: &IntPoly) -> Result<Poly<F>> {
        self.check_vars(f.nvars())?;
        Ok(self.from_terms(f.terms().iter().map(|(m, c)| (m.clone(), self.field.from_bigint(c))).collect()))
    }

    pub fn from_monomial(&self, m: &Monomial) -> Poly<F> {
        self.term(m.clone(), self.field.one())
    }

    /// Re-sorts a polynomial written under another order into this ring's order.
    pub fn reorder(&self, f: &Poly<F>) -> Poly<F> {
        let mut terms = f.terms.clone();
        let ord = self.order;
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial { nvars: f.nvars, terms }
    }

    pub fn check_vars(&self, found: usize) -> Result<()> {
        if found != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found });
        }
        Ok(())
    }

    /// `a*f + b*m*g` computed with one merge pass; used by the reducer.
    pub fn combine(&self, a: &F::Elem, f: &Poly<F>, b: &F::Elem, m: &Monomial, g: &Poly<F>) -> Poly<F> {
        if self.field.is_zero(b) {
            return self.scale(f, a);
        }
        Polynomial { nvars: self.nvars, terms: self.combine_terms(a, &f.terms, b, m, &g.terms) }
    }

    /// [`PolyRing::combine`] on sorted term slices; `b` must be nonzero.
    pub(crate) fn combine_terms(
        &self,
        a: &F::Elem,
        f: &[(Monomial, F::Elem)],
        b: &F::Elem,
        m: &Monomial,
        g: &[(Monomial, F::Elem)],
    ) -> Vec<(Monomial, F::Elem)> {
        let fld = &self.field;
        let a_one = fld.is_one(a);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        let mut shifted: Option<(Monomial, F::Elem)> = None;
        let next_g = |j: usize| -> Option<(Monomial, F::Elem)> { g.get(j).map(|(gm, gc)| (gm.mul(m), fld.mul(b, gc))) };
        if j < g.len() {
            shifted = next_g(j);
        }
        loop {
            match (f.get(i), shifted.as_ref()) {
                (None, None) => break,
                (Some((fm, fc)), None) => {
                    out.push((fm.clone(), if a_one { fc.clone() } else { fld.mul(a, fc) }));
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(shifted.take().unwrap());
                    j += 1;
                    shifted = next_g(j);
                }
                (Some((fm, fc)), Some((sm, sc))) => match self.order.compare(fm, sm) {
                    Ordering::Greater => {
                        out.push((fm.clone(), if a_one { fc.clone() } else { fld.mul(a, fc) }));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(shifted.take().unwrap());
                        j += 1;
                        shifted = next_g(j);
                    }
                    Ordering::Equal => {
                        let lhs = if a_one { fc.clone() } else { fld.mul(a, fc) };
                        let c = fld.add(&lhs, sc);
                        if !fld.is_zero(&c) {
                            out.push((fm.clone(), c));
                        }
                        i += 1;
                        j += 1;
                        shifted = next_g(j);
                    }
                },
            }
        }
        out
    }

    pub fn add(&self, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
        let one = self.field.one();
        self.combine(&one, f, &one, &Monomial::one(self.nvars), g)
    }

    pub fn sub(&self, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
        let one = self.field.one();
        let m1 = self.field.neg(&one);
        self.combine(&one, f, &m1, &Monomial::one(self.nvars), g)
    }

    pub fn neg(&self, f: &Poly<F>) -> Poly<F> {
        Polynomial { nvars: f.nvars, terms: f.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    pub fn scale(&self, f: &Poly<F>, c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Polynomial { nvars: f.nvars, terms: f.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, c))).collect() }
    }

    pub fn mul_term(&self, f: &Poly<F>, m: &Monomial, c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        // multiplying by a monomial preserves the order
        Polynomial { nvars: f.nvars, terms: f.terms.iter().map(|(t, x)| (t.mul(m), self.field.mul(x, c))).collect() }
    }

    pub fn mul(&self, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return self.mul_term(big, m, c);
        }
        let mut terms = Vec::with_capacity(f.len() * g.len());
        for (a, x) in &f.terms {
            for (b, y) in &g.terms {
                terms.push((a.mul(b), self.field.mul(x, y)));
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &Poly<F>, mut e: u32) -> Poly<F> {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scalar multiple making the leading coefficient 1.
    pub fn monic(&self, f: &Poly<F>) -> Poly<F> {
        let mut g = f.clone();
        let mut coeffs: Vec<F::Elem> = g.terms.iter().map(|t| t.1.clone()).collect();
        self.field.make_monic(&mut coeffs);
        for (t, c) in g.terms.iter_mut().zip(coeffs) {
            t.1 = c;
        }
        g
    }

    /// Dimension-checked `add`, `mul` and `scale`.
    pub fn arith(&self, op: ArithOp, f: &Poly<F>, g: Operand<'_, F>) -> Result<Poly<F>> {
        self.check_vars(f.nvars())?;
        match (op, g) {
            (ArithOp::Add, Operand::Poly(g)) => {
                self.check_vars(g.nvars())?;
                Ok(self.add(f, g))
            }
            (ArithOp::Mul, Operand::Poly(g)) => {
                self.check_vars(g.nvars())?;
                Ok(self.mul(f, g))
            }
            (ArithOp::Scale, Operand::Scalar(c)) | (ArithOp::Mul, Operand::Scalar(c)) => Ok(self.scale(f, c)),
            (op, _) => Err(Error::InvalidArgument(format!("operand kind does not fit {op:?}"))),
        }
    }

    /// Drops the variables `X_{j+1}, ..., X_n` by substituting zero.
    pub fn substitute_zero_tail(&self, f: &Poly<F>, j: usize) -> Polynomial<F::Elem> {
        let terms = f
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[j..].iter().all(|&e| e == 0))
            .map(|(m, c)| (m.truncate(j), c.clone()))
            .collect();
        // order on the first j variables is induced, so the filtered list stays sorted
        Polynomial { nvars: j, terms }
    }

    pub fn format(&self, f: &Poly<F>, names: &[String]) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in f.terms.iter().enumerate() {
            let (negative, mag) = self.field.format_signed(c);
            match (i, negative) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let plain = mag.bytes().all(|b| b.is_ascii_digit());
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                let _ = write!(s, "{}", m.display(names));
            } else if plain {
                let _ = write!(s, "{}*{}", mag, m.display(names));
            } else {
                let _ = write!(s, "({})*{}", mag, m.display(names));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::parse::parse_polynomial;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ring_q(n: usize) -> PolyRing<RationalField> {
        PolyRing::new(RationalField::default(), n, MonomialOrder::DegRevLex)
    }

    #[test]
    fn additive_inverse() {
        let r = ring_q(2);
        let vars = names(&["x", "y"]);
        let f = r.from_int(&parse_polynomial("3*x^2 - x*y + 7", &vars).unwrap()).unwrap();
        assert!(r.add(&f, &r.neg(&f)).is_zero());
        assert!(r.sub(&f, &f).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring_q(2);
        let vars = names(&["x", "y"]);
        let p = |s: &str| r.from_int(&parse_polynomial(s, &vars).unwrap()).unwrap();
        assert_eq!(r.mul(&p("x+y"), &p("x-y")), p("x^2-y^2"));
    }

    #[test]
    fn char_three_cube() {
        let r = PolyRing::new(PrimeField::new(3).unwrap(), 2, MonomialOrder::DegRevLex);
        let vars = names(&["x", "y"]);
        let s = r.from_int(&parse_polynomial("x+y", &vars).unwrap()).unwrap();
        let cube = r.mul(&r.mul(&s, &s), &s);
        assert_eq!(cube, r.from_int(&parse_polynomial("x^3+y^3", &vars).unwrap()).unwrap());
        assert_eq!(r.pow(&s, 3), cube);
    }

    #[test]
    fn arith_checks_dimensions() {
        let r = ring_q(2);
        let f = r.var(0);
        let g = ring_q(3).var(0);
        assert!(r.arith(ArithOp::Add, &f, Operand::Poly(&g)).is_err());
        let two = r.field().from_i64(2);
        let h = r.arith(ArithOp::Scale, &f, Operand::Scalar(&two)).unwrap();
        assert_eq!(h.terms()[0].1, two);
    }

    #[test]
    fn homogeneity_and_degrees() {
        let r = ring_q(2);
        let vars = names(&["x", "y"]);
        let p = |s: &str| r.from_int(&parse_polynomial(s, &vars).unwrap()).unwrap();
        assert!(p("x^2 + 3*x*y").is_homogeneous());
        assert!(!p("x^2 + y").is_homogeneous());
        let prod = r.mul(&p("x^2+x*y"), &p("x^3-y^3"));
        assert!(prod.is_homogeneous());
        assert_eq!(prod.degree(), Some(5));
    }

    #[test]
    fn text_roundtrip() {
        let vars = names(&["x", "y"]);
        let f = parse_polynomial("-3*x^2*y + y^3 - 2", &vars).unwrap();
        let text = f.to_text(&vars);
        assert_eq!(parse_polynomial(&text, &vars).unwrap(), f);
    }
}
