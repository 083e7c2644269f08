use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::GroebnerBasis;
use super::monomial_ideal;
use super::vector::{ModuleOrder, Vector};
use crate::algebra::{Monomial, MonomialOrder, Polynomial, RingDescriptor};
use crate::error::{Error, Result};
use crate::value::Extended;

/// Saturation gives up after this many quotient steps.
pub const SATURATION_LIMIT: usize = 100;

/// A homogeneous ideal of `R = S/I`, stored through generators in `S`.
/// Its Groebner basis is that of `gens + I` in `S`.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<RingDescriptor>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Quotient,
    Saturation,
}

fn rank_one() -> ModuleOrder {
    ModuleOrder::top(&[0])
}

impl Ideal {
    pub fn new(ring: &Arc<RingDescriptor>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring.base() {
                return Err(Error::MixedRings);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<RingDescriptor>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<RingDescriptor>) -> Self {
        Self::new(ring, vec![ring.base().constant(1)]).unwrap()
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_v)`.
    pub fn maximal(ring: &Arc<RingDescriptor>) -> Self {
        Self::new(ring, ring.base().vars()).unwrap()
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let ord = rank_one();
            let v: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
            Arc::new(self.ring.ambient().submodule_gb(&[0], &v))
        })
    }

    /// Reduced Groebner basis of `gens + I` as polynomials of `S`.
    pub fn gb_polys(&self) -> Vec<Polynomial> {
        self.gb()
            .elements()
            .iter()
            .map(|v| v.component(0, self.ring.base()))
            .collect()
    }

    /// Reduced basis elements not already in the defining ideal.
    pub fn reduced_generators(&self) -> Vec<Polynomial> {
        self.gb_polys()
            .into_iter()
            .filter(|g| !self.ring.reduce(g).is_zero())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ord = rank_one();
        self.gb()
            .normal_form(&Vector::from_poly(f, 0, &ord))
            .component(0, self.ring.base())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.base().constant(1))
    }

    /// Zero as an ideal of `R`.
    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.ring.reduce(g).is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().leading_terms().map(|(_, m)| m).collect()
    }

    /// Whether the reduced basis consists of monomials.
    pub fn is_monomial(&self) -> bool {
        self.gb().elements().iter().all(|v| v.len() == 1)
    }

    /// Krull dimension of `S / (gens + I)`; `-inf` for the unit ideal.
    pub fn dimension(&self) -> Extended {
        match monomial_ideal::dimension(&self.leading_monomials(), self.ring.nvars()) {
            Some(d) => Extended::Finite(d as i64),
            None => Extended::NegInf,
        }
    }

    /// `dim_k (S/(gens + I))_d` for each `d` in `degrees`.
    pub fn hilbert_function(&self, degrees: std::ops::Range<i64>) -> Vec<u64> {
        let lead = self.leading_monomials();
        degrees
            .map(|d| monomial_ideal::standard_monomials_in_degree(&lead, self.ring.nvars(), d))
            .collect()
    }

    fn same_ambient(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ambient(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ambient(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ambient(other)?;
        let ord = rank_one();
        let a: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        let b: Vec<Vector> = other.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        let out = self.ring.ambient().intersect(&[0], &a, &b);
        Ideal::new(
            &self.ring,
            out.iter().map(|v| v.component(0, self.ring.base())).collect(),
        )
    }

    /// `(self : f)`.
    pub fn quotient_element(&self, f: &Polynomial) -> Result<Ideal> {
        let ord = rank_one();
        let a: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        let out = self.ring.ambient().quotient_by(&[0], &a, f);
        Ideal::new(
            &self.ring,
            out.iter().map(|v| v.component(0, self.ring.base())).collect(),
        )
    }

    /// `(self : other) = ⋂_j (self : b_j)`; the unit ideal when `other` is zero.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ambient(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for b in &other.gens {
            if self.ring.reduce(b).is_zero() {
                continue;
            }
            let q = self.quotient_element(b)?;
            acc = if acc.is_unit() { q } else { acc.intersection(&q)? };
        }
        Ok(acc.simplified())
    }

    /// `(self : other^∞)`, iterating quotients until they stabilize.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_LIMIT {
            let next = cur.quotient(other)?;
            if next.equals(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::SaturationLimit(SATURATION_LIMIT))
    }

    /// Same ideal generated by its reduced basis elements outside `I`.
    pub fn simplified(&self) -> Ideal {
        Ideal::new(&self.ring, self.reduced_generators()).unwrap()
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring.same_ring(&other.ring) && self.gb().same_as(other.gb())
    }

    /// Leading monomials of the basis, when the ideal is monomial.
    pub fn monomial_generators(&self) -> Result<Vec<Monomial>> {
        if !self.is_monomial() {
            return Err(Error::NotMonomial(self.to_string()));
        }
        Ok(self.leading_monomials())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string().replace(' ', "")).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Reduced Groebner basis of `gens + I` in `S` for the requested order.
pub fn groebner(
    gens: &[Polynomial],
    ring: &Arc<RingDescriptor>,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        if g.ring() != ring.base() {
            return Err(Error::MixedRings);
        }
    }
    let ord = ModuleOrder::top(&[0]).with_mono(order);
    let mut input: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
    input.extend(
        ring.defining_gb()
            .iter()
            .map(|g| Vector::from_poly(g, 0, &ord)),
    );
    Ok(GroebnerBasis::compute(input, ring.field(), ord))
}

/// Groebner basis of the submodule of `R^g` (`g = shifts.len()`) spanned by `gens`,
/// computed in `S^g` together with `I * S^g`.
pub fn module_groebner(
    gens: &[Vector],
    shifts: &[i32],
    ring: &Arc<RingDescriptor>,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    let ord = ModuleOrder::top(shifts).with_mono(order);
    let mut input = Vec::with_capacity(gens.len());
    for v in gens {
        if let Some(p) = v.max_position() {
            if p as usize >= shifts.len() {
                return Err(Error::RankMismatch(p as usize + 1, shifts.len()));
            }
        }
        if !v.is_homogeneous(shifts) {
            return Err(Error::NotHomogeneous(format!("{v:?}")));
        }
        input.push(v.clone().resorted(&ord));
    }
    input.extend(ring.ambient().relations(0..shifts.len(), &ord));
    Ok(GroebnerBasis::compute(input, ring.field(), ord))
}

/// Remainder of `f` modulo a rank-one basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if gb.order().rank() != 1 {
        return Err(Error::RankMismatch(gb.order().rank(), 1));
    }
    let v = Vector::from_poly(f, 0, gb.order());
    Ok(gb.normal_form(&v).component(0, f.ring()))
}

pub fn ideal_ops(a: &Ideal, b: &Ideal, op: IdealOp) -> Result<Ideal> {
    match op {
        IdealOp::Sum => a.sum(b),
        IdealOp::Product => a.product(b),
        IdealOp::Intersection => a.intersection(b),
        IdealOp::Quotient => a.quotient(b),
        IdealOp::Saturation => a.saturation(b),
    }
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    a.equals(b)
}
