//! Homogeneous polynomial ideals given by generators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{
    check_characteristic, AnyField, Field, FieldSpec, PolyExtField, PrimeField, RationalField, ZechField,
};
use crate::groebner::{buchberger, minimal_generator_degrees};
use crate::monideal::{HilbertSeries, MonomialIdeal};
use crate::monomial::{default_names, MonomialOrder};
use crate::poly::{IntPoly, Poly, PolyRing};

/// An ideal of `K[X_1..X_n]` generated by integer polynomials, read modulo
/// `char K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    nvars: usize,
    characteristic: u64,
    gens: Vec<IntPoly>,
    names: Vec<String>,
}

impl PolyIdeal {
    /// Generators that vanish in characteristic `p` are dropped.
    pub fn new(nvars: usize, characteristic: u64, gens: Vec<IntPoly>) -> Result<Self> {
        check_characteristic(characteristic)?;
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: g.nvars() });
            }
            let g = reduce_mod(g, characteristic);
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(PolyIdeal { nvars, characteristic, gens: kept, names: default_names(nvars) })
    }

    pub fn from_monomial_ideal(i: &MonomialIdeal) -> Self {
        PolyIdeal {
            nvars: i.nvars(),
            characteristic: i.characteristic(),
            gens: i.gens().iter().cloned().map(IntPoly::monomial).collect(),
            names: default_names(i.nvars()),
        }
    }

    /// Variable names used in messages and reports.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn gens(&self) -> &[IntPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(IntPoly::is_homogeneous)
    }

    pub fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(g.to_text(&self.names))),
            None => Ok(()),
        }
    }

    /// Rejects ideals containing a nonzero constant.
    pub fn require_proper(&self) -> Result<()> {
        if self.gens.iter().any(|g| g.degree() == Some(0)) {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    pub fn generating_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(IntPoly::degree).max()
    }

    /// The monomial ideal, when every generator is a single term.
    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        if !self.gens.iter().all(IntPoly::is_monomial) {
            return None;
        }
        let gens = self.gens.iter().map(|g| g.terms()[0].0.clone());
        MonomialIdeal::new(self.nvars, self.characteristic, gens).ok()
    }

    pub fn in_field<F: Field>(&self, field: F, order: MonomialOrder) -> Result<Ideal<F>> {
        let ring = PolyRing::new(field, self.nvars, order);
        let gens = self.gens.iter().map(|g| ring.from_int(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal { ring, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn in_any_field(&self, spec: &FieldSpec, order: MonomialOrder) -> Result<FieldIdeal> {
        if spec.characteristic() != self.characteristic {
            return Err(Error::InvalidArgument(format!(
                "field of characteristic {} for an ideal of characteristic {}",
                spec.characteristic(),
                self.characteristic
            )));
        }
        Ok(match AnyField::from_spec(spec)? {
            AnyField::Prime(f) => FieldIdeal::Prime(self.in_field(f, order)?),
            AnyField::Zech(f) => FieldIdeal::Zech(self.in_field(f, order)?),
            AnyField::PolyExt(f) => FieldIdeal::PolyExt(self.in_field(f, order)?),
            AnyField::Rational(f) => FieldIdeal::Rational(self.in_field(f, order)?),
        })
    }

    /// Hilbert series of `A/I`, from the ideal itself when monomial and
    /// from a Gröbner basis over the prime field (or `Q`) otherwise.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.require_proper()?;
        if let Some(m) = self.as_monomial_ideal() {
            return m.hilbert();
        }
        match self.characteristic {
            0 => self.in_field(RationalField::default(), MonomialOrder::DegRevLex)?.hilbert_series(),
            p => self.in_field(PrimeField::new(p)?, MonomialOrder::DegRevLex)?.hilbert_series(),
        }
    }

    pub fn to_texts(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.to_text(names)).collect()
    }

    /// Minimal generator counts per degree.
    pub fn minimal_generator_degrees(&self) -> Result<BTreeMap<u32, usize>> {
        if let Some(m) = self.as_monomial_ideal() {
            let mut out = BTreeMap::new();
            for u in m.gens() {
                *out.entry(u.degree()).or_insert(0) += 1;
            }
            return Ok(out);
        }
        match self.characteristic {
            0 => {
                let i = self.in_field(RationalField::default(), MonomialOrder::DegRevLex)?;
                minimal_generator_degrees(&i.ring, &i.gens)
            }
            p => {
                let i = self.in_field(PrimeField::new(p)?, MonomialOrder::DegRevLex)?;
                minimal_generator_degrees(&i.ring, &i.gens)
            }
        }
    }

    /// Number of minimal homogeneous generators.
    pub fn num_minimal_generators(&self) -> Result<usize> {
        Ok(self.minimal_generator_degrees()?.values().sum())
    }

    /// Largest degree of a minimal generator; `None` for the zero ideal.
    pub fn true_generating_degree(&self) -> Result<Option<u32>> {
        Ok(self.minimal_generator_degrees()?.keys().next_back().copied())
    }

    /// `(f^p : f in gens)` in characteristic `p`, where `f^p` only scales
    /// exponents since coefficients lie in the prime field.
    pub fn frobenius_power(&self) -> Result<PolyIdeal> {
        let p = self.characteristic;
        if p == 0 {
            return Err(Error::InvalidArgument("Frobenius power needs positive characteristic".into()));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let terms = g.terms().iter().map(|(m, c)| (m.scale(p as u32), c.clone())).collect();
                IntPoly::from_int_terms(self.nvars, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyIdeal { gens, ..self.clone() })
    }
}

fn reduce_mod(g: IntPoly, p: u64) -> IntPoly {
    if p == 0 {
        return g;
    }
    let n = g.nvars();
    let p = BigInt::from(p);
    let terms = g
        .into_terms()
        .into_iter()
        .filter_map(|(m, c)| {
            let mut r = c.mod_floor(&p);
            // symmetric representative keeps printed input close to the original
            if &r * 2 > p {
                r -= &p;
            }
            (!r.is_zero()).then_some((m, r))
        })
        .collect();
    IntPoly::from_int_terms(n, terms).expect("terms are valid")
}

/// Generators over a concrete field.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    pub ring: PolyRing<F>,
    pub gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn initial_ideal(&self) -> Result<MonomialIdeal> {
        if self.gens.is_empty() {
            return Ok(MonomialIdeal::zero(self.nvars(), self.ring.field().characteristic()));
        }
        Ok(buchberger(&self.ring, &self.gens)?.initial_ideal(self.ring.field().characteristic()))
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let graded = Ideal {
            ring: self.ring.with_order(MonomialOrder::DegRevLex),
            gens: self.gens.iter().map(|g| self.ring.with_order(MonomialOrder::DegRevLex).reorder(g)).collect(),
        };
        graded.initial_ideal()?.hilbert()
    }

    pub fn contains_constant(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == Some(0))
    }

    /// Monomial generators as a monomial ideal, if all generators are terms.
    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        if !self.gens.iter().all(|g| g.is_monomial()) {
            return None;
        }
        let gens = self.gens.iter().map(|g| g.terms()[0].0.clone());
        MonomialIdeal::new(self.nvars(), self.ring.field().characteristic(), gens).ok()
    }

    pub fn to_texts(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g, names)).collect()
    }
}

/// An [`Ideal`] over one of the run-time field choices.
#[derive(Clone, Debug)]
pub enum FieldIdeal {
    Prime(Ideal<PrimeField>),
    Zech(Ideal<ZechField>),
    PolyExt(Ideal<PolyExtField>),
    Rational(Ideal<RationalField>),
}

/// Runs a generic computation against the concrete [`Ideal`] inside a [`FieldIdeal`].
#[macro_export]
macro_rules! with_field_ideal {
    ($any:expr, |$i:ident| $body:expr) => {
        match $any {
            $crate::ideal::FieldIdeal::Prime($i) => $body,
            $crate::ideal::FieldIdeal::Zech($i) => $body,
            $crate::ideal::FieldIdeal::PolyExt($i) => $body,
            $crate::ideal::FieldIdeal::Rational($i) => $body,
        }
    };
}

impl FieldIdeal {
    pub fn nvars(&self) -> usize {
        with_field_ideal!(self, |i| i.nvars())
    }

    pub fn characteristic(&self) -> u64 {
        with_field_ideal!(self, |i| i.ring.field().characteristic())
    }

    pub fn field_spec(&self) -> FieldSpec {
        with_field_ideal!(self, |i| i.ring.field().spec())
    }

    pub fn num_gens(&self) -> usize {
        with_field_ideal!(self, |i| i.gens.len())
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        with_field_ideal!(self, |i| i.hilbert_series())
    }

    pub fn initial_ideal(&self) -> Result<MonomialIdeal> {
        with_field_ideal!(self, |i| i.initial_ideal())
    }

    pub fn to_texts(&self, names: &[String]) -> Vec<String> {
        with_field_ideal!(self, |i| i.to_texts(names))
    }
}

impl From<&MonomialIdeal> for PolyIdeal {
    fn from(i: &MonomialIdeal) -> Self {
        PolyIdeal::from_monomial_ideal(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn ideal(c: u64, gens: &[&str]) -> PolyIdeal {
        let g = gens.iter().map(|t| parse_polynomial(t, &names()).unwrap()).collect();
        PolyIdeal::new(2, c, g).unwrap()
    }

    #[test]
    fn coefficients_read_mod_p() {
        let i = ideal(3, &["3*x^2 + y^2", "6*x*y"]);
        assert_eq!(i.to_texts(&names()), vec!["y^2"]);
        assert!(i.as_monomial_ideal().is_some());
        let j = ideal(5, &["4*x - y"]);
        assert_eq!(j.to_texts(&names()), vec!["-x - y"]);
    }

    #[test]
    fn hilbert_of_polynomial_ideal() {
        let i = ideal(0, &["x^2 - y^2", "x*y"]);
        assert_eq!(i.hilbert_series().unwrap().values(0, 4), vec![1, 2, 1, 0, 0]);
        let j = ideal(7, &["x^2 - y^2", "x*y"]);
        assert_eq!(j.hilbert_series().unwrap().values(0, 4), vec![1, 2, 1, 0, 0]);
        assert!(ideal(0, &["x", "1"]).hilbert_series().is_err());
    }

    #[test]
    fn minimal_generators_of_polynomial_ideal() {
        let i = ideal(0, &["x^2", "x*y", "x^3", "y^3 + x*y^2"]);
        assert_eq!(i.minimal_generator_degrees().unwrap(), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(i.num_minimal_generators().unwrap(), 3);
        assert_eq!(ideal(5, &["x^2", "x^3"]).true_generating_degree().unwrap(), Some(2));
    }

    #[test]
    fn frobenius_scales_exponents() {
        let i = ideal(3, &["x^2 - y^2", "x*y"]).frobenius_power().unwrap();
        assert_eq!(i.to_texts(&names()), vec!["x^6 - y^6", "x^3*y^3"]);
        assert!(ideal(0, &["x"]).frobenius_power().is_err());
    }

    #[test]
    fn field_mismatch_rejected() {
        let i = ideal(3, &["x"]);
        assert!(i.in_any_field(&FieldSpec::Prime { p: 5 }, MonomialOrder::DegRevLex).is_err());
        let f = i.in_any_field(&FieldSpec::for_sampling(3, 1 << 16), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(f.characteristic(), 3);
        assert_eq!(f.num_gens(), 1);
    }
}
