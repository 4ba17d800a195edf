//! Normal forms, Buchberger's algorithm and initial ideals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monideal::{HilbertSeries, MonomialIdeal};
use crate::monomial::{default_names, Monomial, MonomialOrder};
use crate::poly::{Poly, PolyRing, Polynomial};

/// A Gröbner basis with monic elements sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Poly<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Poly<F>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Poly<F>> {
        self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.lead_monomial().cloned()).collect()
    }

    pub fn initial_ideal(&self, characteristic: u64) -> MonomialIdeal {
        MonomialIdeal::from_parts(self.nvars, characteristic, self.leading_monomials())
    }

    /// Ideal membership through the normal form.
    pub fn contains(&self, ring: &PolyRing<F>, f: &Poly<F>) -> bool {
        normal_form(ring, f, &self.elements).is_zero()
    }
}

fn var_mask(m: &Monomial) -> u64 {
    m.exps().iter().enumerate().fold(0u64, |acc, (i, &e)| if e > 0 { acc | 1 << (i % 64) } else { acc })
}

struct Divisor<'a, F: Field> {
    lead: &'a Monomial,
    mask: u64,
    degree: u32,
    poly: &'a Poly<F>,
}

impl<'a, F: Field> Divisor<'a, F> {
    fn new(poly: &'a Poly<F>) -> Option<Self> {
        let lead = poly.lead_monomial()?;
        Some(Divisor { lead, mask: var_mask(lead), degree: lead.degree(), poly })
    }
}

fn find_divisor<'b, 'a, F: Field>(divs: &'b [Divisor<'a, F>], t: &Monomial) -> Option<&'b Divisor<'a, F>> {
    let mask = var_mask(t);
    let deg = t.degree();
    divs.iter().find(|d| d.degree <= deg && d.mask & !mask == 0 && d.lead.divides(t))
}

const RENORMALIZE_EVERY: usize = 8;

/// Full reduction of `f` by the divisors, scanning terms from the top and
/// always using the first divisor that applies.
///
/// With `exact` the result is the true remainder; otherwise it may be any
/// nonzero scalar multiple of it.
fn reduce<F: Field>(
    ring: &PolyRing<F>,
    f: Vec<(Monomial, F::Elem)>,
    divs: &[Divisor<'_, F>],
    exact: bool,
) -> Vec<(Monomial, F::Elem)> {
    let fld = ring.field();
    let fraction_free = !exact && fld.fraction_free();
    let mut work = f;
    let mut start = 0;
    let mut steps = 0;
    loop {
        let hit = loop {
            if start >= work.len() {
                break None;
            }
            if let Some(d) = find_divisor(divs, &work[start].0) {
                break Some(d);
            }
            start += 1;
        };
        let Some(d) = hit else { break };
        let (t, c) = &work[start];
        let lc_g = &d.poly.terms()[0].1;
        let (a, b) = if fraction_free {
            fld.reduction_multipliers(c, lc_g)
        } else {
            (fld.one(), fld.mul(c, &fld.inv(lc_g).expect("nonzero leading coefficient")))
        };
        let m = t.div(d.lead).expect("divisor divides");
        let tail = ring.combine_terms(&a, &work[start..], &fld.neg(&b), &m, d.poly.terms());
        work.truncate(start);
        if !fld.is_one(&a) {
            for (_, c) in work.iter_mut() {
                *c = fld.mul(c, &a);
            }
        }
        work.extend(tail);
        steps += 1;
        if fraction_free && steps % RENORMALIZE_EVERY == 0 {
            normalize_terms(fld, &mut work);
        }
    }
    if fraction_free {
        normalize_terms(fld, &mut work);
    }
    work
}

fn normalize_terms<F: Field>(fld: &F, terms: &mut [(Monomial, F::Elem)]) {
    let mut coeffs: Vec<F::Elem> = terms.iter().map(|t| t.1.clone()).collect();
    fld.normalize(&mut coeffs);
    for (t, c) in terms.iter_mut().zip(coeffs) {
        t.1 = c;
    }
}

/// Remainder of `f` on division by `g`, dividing by the first applicable
/// element in the listed order, leading term first.
pub fn normal_form<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, g: &[Poly<F>]) -> Poly<F> {
    let divs: Vec<Divisor<'_, F>> = g.iter().filter_map(Divisor::new).collect();
    let terms = reduce(ring, f.terms().to_vec(), &divs, true);
    ring.from_terms(terms)
}

/// A totally ordered key realizing `order` on monomials of equal length.
fn order_key(order: MonomialOrder, m: &Monomial) -> Vec<i64> {
    let e = m.exps();
    let mut key = Vec::with_capacity(e.len() + 1);
    match order {
        MonomialOrder::Lex => key.extend(e.iter().map(|&x| x as i64)),
        MonomialOrder::DegLex => {
            key.push(m.degree() as i64);
            key.extend(e.iter().map(|&x| x as i64));
        }
        MonomialOrder::DegRevLex => {
            key.push(m.degree() as i64);
            key.extend(e.iter().rev().map(|&x| -(x as i64)));
        }
    }
    key
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    degree: u32,
    key: Vec<i64>,
    kind: u8,
    i: usize,
    j: usize,
}

#[derive(Clone, Debug)]
enum Item {
    Generator(usize),
    Pair { i: usize, j: usize, lcm: Monomial },
}

struct Element<F: Field> {
    poly: Poly<F>,
    lead: Monomial,
    active: bool,
}

struct Engine<'r, F: Field> {
    ring: &'r PolyRing<F>,
    basis: Vec<Element<F>>,
    queue: BTreeMap<QueueKey, Item>,
}

impl<'r, F: Field> Engine<'r, F> {
    fn push_pair(&mut self, i: usize, j: usize, lcm: Monomial) {
        let key = QueueKey { degree: lcm.degree(), key: order_key(self.ring.order(), &lcm), kind: 1, i, j };
        self.queue.insert(key, Item::Pair { i, j, lcm });
    }

    fn active_divisors(&self) -> Vec<Divisor<'_, F>> {
        self.basis.iter().filter(|e| e.active).filter_map(|e| Divisor::new(&e.poly)).collect()
    }

    fn s_polynomial(&self, i: usize, j: usize, lcm: &Monomial) -> Vec<(Monomial, F::Elem)> {
        let fld = self.ring.field();
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let (a, b) = if fld.fraction_free() {
            fld.reduction_multipliers(&gi.poly.terms()[0].1, &gj.poly.terms()[0].1)
        } else {
            let q = fld.mul(&gi.poly.terms()[0].1, &fld.inv(&gj.poly.terms()[0].1).unwrap());
            (fld.one(), q)
        };
        let mi = lcm.div(&gi.lead).unwrap();
        let mj = lcm.div(&gj.lead).unwrap();
        let shifted: Vec<(Monomial, F::Elem)> = gi.poly.terms().iter().map(|(m, c)| (m.mul(&mi), c.clone())).collect();
        self.ring.combine_terms(&a, &shifted, &fld.neg(&b), &mj, gj.poly.terms())
    }

    /// Inserts a new element and updates the pair set with the
    /// Gebauer-Möller criteria.
    fn insert(&mut self, mut terms: Vec<(Monomial, F::Elem)>) {
        normalize_terms(self.ring.field(), &mut terms);
        let poly = Polynomial::from_sorted(self.ring.nvars(), terms);
        let lead = poly.lead_monomial().unwrap().clone();
        let t = self.basis.len();

        let candidates: Vec<(usize, Monomial)> =
            self.basis.iter().enumerate().filter(|(_, e)| e.active).map(|(i, e)| (i, e.lead.lcm(&lead))).collect();
        // chain criterion among the new pairs, coprime pairs kept as witnesses
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        let mut idx = 0;
        while idx < candidates.len() {
            let (i, l) = candidates[idx].clone();
            let coprime = self.basis[i].lead.is_coprime(&lead);
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((i, l, coprime));
            }
            idx += 1;
        }

        let old: Vec<(QueueKey, usize, usize, Monomial)> = self
            .queue
            .iter()
            .filter_map(|(k, item)| match item {
                Item::Pair { i, j, lcm } => Some((k.clone(), *i, *j, lcm.clone())),
                Item::Generator(_) => None,
            })
            .collect();
        for (k, i, j, l) in old {
            if lead.divides(&l) && self.basis[i].lead.lcm(&lead) != l && self.basis[j].lead.lcm(&lead) != l {
                self.queue.remove(&k);
            }
        }
        for (i, l, coprime) in kept {
            if !coprime {
                self.push_pair(i, t, l);
            }
        }
        for e in self.basis.iter_mut() {
            if e.active && lead.divides(&e.lead) {
                e.active = false;
            }
        }
        self.basis.push(Element { poly, lead, active: true });
    }

    fn leading_ideal(&self, characteristic: u64) -> MonomialIdeal {
        let leads = self.basis.iter().filter(|e| e.active).map(|e| e.lead.clone()).collect();
        MonomialIdeal::from_parts(self.ring.nvars(), characteristic, leads)
    }

    /// Interreduces the active elements into the reduced basis.
    fn finish(self) -> GroebnerBasis<F> {
        let ring = self.ring;
        let fld = ring.field();
        let mut active: Vec<&Element<F>> = self.basis.iter().filter(|e| e.active).collect();
        active.sort_by(|a, b| ring.cmp(&a.lead, &b.lead));
        let mut elements = Vec::with_capacity(active.len());
        for (k, e) in active.iter().enumerate() {
            let divs: Vec<Divisor<'_, F>> =
                active.iter().enumerate().filter(|&(l, _)| l != k).filter_map(|(_, o)| Divisor::new(&o.poly)).collect();
            // the head is not divisible by any other leading monomial
            let mut out = reduce(ring, e.poly.terms().to_vec(), &divs, false);
            let mut coeffs: Vec<F::Elem> = out.iter().map(|t| t.1.clone()).collect();
            fld.make_monic(&mut coeffs);
            for (t, c) in out.iter_mut().zip(coeffs) {
                t.1 = c;
            }
            elements.push(Polynomial::from_sorted(ring.nvars(), out));
        }
        GroebnerBasis { nvars: ring.nvars(), order: ring.order(), elements, reduced: true }
    }
}

fn prepare<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for g in gens {
        ring.check_vars(g.nvars())?;
    }
    Ok(gens.iter().filter(|g| !g.is_zero()).cloned().collect())
}

fn run<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>], hint: Option<&HilbertSeries>) -> Result<GroebnerBasis<F>> {
    let gens = prepare(ring, gens)?;
    let mut engine = Engine { ring, basis: Vec::new(), queue: BTreeMap::new() };
    for (k, g) in gens.iter().enumerate() {
        let lead = g.lead_monomial().unwrap();
        let key = QueueKey { degree: g.degree().unwrap(), key: order_key(ring.order(), lead), kind: 0, i: k, j: 0 };
        engine.queue.insert(key, Item::Generator(k));
    }
    let characteristic = ring.field().characteristic();
    let mut current: Option<u32> = None;
    // standard monomials of the leading ideal still to be removed in the current degree
    let mut missing: i128 = 0;

    while let Some((key, item)) = engine.queue.pop_first() {
        if let Some(target) = hint {
            if current != Some(key.degree) {
                let lead_hs = engine.leading_ideal(characteristic).hilbert_any();
                if lead_hs == *target {
                    break;
                }
                let d = key.degree as i64;
                missing = lead_hs.value(d) as i128 - target.value(d) as i128;
                if missing < 0 {
                    return Err(Error::Internal(format!(
                        "leading monomials exceed the expected Hilbert function in degree {d}"
                    )));
                }
                current = Some(key.degree);
            }
            if missing == 0 {
                continue;
            }
        }
        let terms = match &item {
            Item::Generator(k) => gens[*k].terms().to_vec(),
            Item::Pair { i, j, lcm } => engine.s_polynomial(*i, *j, lcm),
        };
        let divs = engine.active_divisors();
        let rem = reduce(ring, terms, &divs, false);
        drop(divs);
        if !rem.is_empty() {
            engine.insert(rem);
            missing -= 1;
        }
    }
    Ok(engine.finish())
}

/// Reduced Gröbner basis by Buchberger's algorithm with the normal
/// selection strategy and the Gebauer-Möller criteria.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<GroebnerBasis<F>> {
    run(ring, gens, None)
}

/// [`buchberger`] for homogeneous generators whose Hilbert series is known:
/// degrees whose initial part is already complete are skipped and the run
/// stops once the leading monomials reach the target series.
pub fn buchberger_with_hilbert<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F>],
    target: &HilbertSeries,
) -> Result<GroebnerBasis<F>> {
    if !ring.order().is_graded() {
        return Err(Error::InvalidArgument("Hilbert-driven Buchberger needs a graded order".into()));
    }
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(ring.format(g, &default_names(ring.nvars()))));
    }
    if target.nvars != ring.nvars() {
        return Err(Error::DimensionMismatch { expected: ring.nvars(), found: target.nvars });
    }
    run(ring, gens, Some(target))
}

/// The initial ideal of `(gens)`, generated by the leading monomials of the
/// reduced Gröbner basis.
pub fn initial_ideal<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<MonomialIdeal> {
    let gb = buchberger(ring, gens)?;
    Ok(gb.initial_ideal(ring.field().characteristic()))
}

/// Number of minimal homogeneous generators of `(gens)` in each degree,
/// counted as `dim I_d - dim (I_{<d})_d`. Degrees without generators are
/// omitted.
pub fn minimal_generator_degrees<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<BTreeMap<u32, usize>> {
    let gens = prepare(ring, gens)?;
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(ring.format(g, &default_names(ring.nvars()))));
    }
    let graded = ring.with_order(MonomialOrder::DegRevLex);
    let gens: Vec<Poly<F>> = gens.iter().map(|g| graded.reorder(g)).collect();
    let mut degrees: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let c = ring.field().characteristic();
    let mut out = BTreeMap::new();
    if gens.is_empty() {
        return Ok(out);
    }
    let full = initial_ideal(&graded, &gens)?.hilbert_any();
    for &d in &degrees {
        let below: Vec<Poly<F>> = gens.iter().filter(|g| g.degree().unwrap() < d).cloned().collect();
        let lower = if below.is_empty() {
            MonomialIdeal::zero(ring.nvars(), c).hilbert_any()
        } else {
            initial_ideal(&graded, &below)?.hilbert_any()
        };
        let mu = lower.value(d as i64) - full.value(d as i64);
        let mu = usize::try_from(mu).map_err(|_| Error::Internal("negative generator count".into()))?;
        if mu > 0 {
            out.insert(d, mu);
        }
    }
    Ok(out)
}

/// Number of minimal homogeneous generators of `(gens)`.
pub fn minimal_generator_count<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<usize> {
    Ok(minimal_generator_degrees(ring, gens)?.values().sum())
}
