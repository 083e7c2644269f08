//! Sparse elements of graded free modules `S^g` and the module term orders.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mon: Monomial,
    pub coeff: u32,
}

/// Module term order. Generator `i` sits in degree `shifts[i]`.
///
/// Without a block the order compares shifted degree, then the monomial order,
/// then position (smaller position is larger). With `pot` set, position is
/// compared first. With an elimination block `b`, every term in positions
/// `< b` is larger than every term in positions `>= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub shifts: Arc<[i32]>,
    pub block: Option<u32>,
    pub pot: bool,
}

impl ModuleOrder {
    pub fn top(shifts: &[i32]) -> Self {
        Self {
            mono: MonomialOrder::Grevlex,
            shifts: shifts.into(),
            block: None,
            pot: false,
        }
    }

    pub fn pot(shifts: &[i32]) -> Self {
        Self {
            pot: true,
            ..Self::top(shifts)
        }
    }

    /// Elimination order: positions `< block` dominate.
    pub fn elimination(shifts: &[i32], block: usize) -> Self {
        Self {
            block: Some(block as u32),
            ..Self::top(shifts)
        }
    }

    pub fn with_mono(mut self, mono: MonomialOrder) -> Self {
        self.mono = mono;
        self
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn term_degree(&self, pos: u32, mon: &Monomial) -> i64 {
        mon.degree() as i64 + self.shifts[pos as usize] as i64
    }

    #[inline]
    pub fn cmp(&self, ap: u32, am: &Monomial, bp: u32, bm: &Monomial) -> Ordering {
        if let Some(b) = self.block {
            let (ba, bb) = (ap >= b, bp >= b);
            if ba != bb {
                return if ba { Ordering::Less } else { Ordering::Greater };
            }
        }
        if self.pot {
            return bp.cmp(&ap).then_with(|| self.mono.cmp(am, bm));
        }
        let da = am.degree() as i64 + self.shifts[ap as usize] as i64;
        let db = bm.degree() as i64 + self.shifts[bp as usize] as i64;
        da.cmp(&db)
            .then_with(|| self.mono.cmp(am, bm))
            .then_with(|| bp.cmp(&ap))
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.pos, &a.mon, b.pos, &b.mon)
    }
}

/// Element of a free module, terms sorted by descending module order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_sorted(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    /// Sorts and merges arbitrary terms.
    pub fn from_terms(mut terms: Vec<Term>, field: PrimeField, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mon == t.mon => {
                    last.coeff = field.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Self { terms: out }
    }

    /// `poly * e_pos`.
    pub fn from_poly(p: &Polynomial, pos: usize, ord: &ModuleOrder) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| Term {
                pos: pos as u32,
                mon: *m,
                coeff: *c,
            })
            .collect();
        Self::from_terms(terms, p.ring().field(), ord)
    }

    /// Builds a vector from one polynomial per coordinate.
    pub fn from_polys(entries: &[Polynomial], ord: &ModuleOrder) -> Self {
        let mut terms = Vec::new();
        let mut field = None;
        for (i, p) in entries.iter().enumerate() {
            field = Some(p.ring().field());
            for (m, c) in p.terms() {
                terms.push(Term {
                    pos: i as u32,
                    mon: *m,
                    coeff: *c,
                });
            }
        }
        match field {
            Some(f) => Self::from_terms(terms, f, ord),
            None => Self::zero(),
        }
    }

    pub fn unit(pos: usize, nvars: usize) -> Self {
        Self {
            terms: vec![Term {
                pos: pos as u32,
                mon: Monomial::one(nvars),
                coeff: 1,
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
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

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Shifted degree of the leading term.
    pub fn degree(&self, shifts: &[i32]) -> Option<i64> {
        self.terms
            .first()
            .map(|t| t.mon.degree() as i64 + shifts[t.pos as usize] as i64)
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mon.degree() as i64 + shifts[t.pos as usize] as i64 == d),
        }
    }

    pub fn resort(&mut self, ord: &ModuleOrder) {
        self.terms.sort_by(|a, b| ord.cmp_terms(b, a));
    }

    pub fn resorted(mut self, ord: &ModuleOrder) -> Self {
        self.resort(ord);
        self
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn make_monic(&mut self, field: PrimeField) {
        if let Some(t) = self.terms.first() {
            if t.coeff != 1 {
                let inv = field.inv(t.coeff);
                for t in &mut self.terms {
                    t.coeff = field.mul(t.coeff, inv);
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    ..*t
                })
                .collect(),
        }
    }

    /// `self + c * m * other`, both sorted by `ord`.
    pub fn add_scaled(
        &self,
        other: &Self,
        c: u32,
        m: &Monomial,
        field: PrimeField,
        ord: &ModuleOrder,
    ) -> Self {
        Self {
            terms: merge_scaled(&self.terms, &other.terms, c, m, field, ord),
        }
    }

    pub fn add(&self, other: &Self, field: PrimeField, ord: &ModuleOrder) -> Self {
        let one = match (self.terms.first(), other.terms.first()) {
            (Some(t), _) | (None, Some(t)) => Monomial::one(t.mon.nvars()),
            (None, None) => return Self::zero(),
        };
        self.add_scaled(other, 1, &one, field, ord)
    }

    pub fn sub(&self, other: &Self, field: PrimeField, ord: &ModuleOrder) -> Self {
        let one = match (self.terms.first(), other.terms.first()) {
            (Some(t), _) | (None, Some(t)) => Monomial::one(t.mon.nvars()),
            (None, None) => return Self::zero(),
        };
        self.add_scaled(other, field.neg(1), &one, field, ord)
    }

    /// `p * self`.
    pub fn mul_poly(&self, p: &Polynomial, ord: &ModuleOrder) -> Self {
        let field = p.ring().field();
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms().len());
        for (m, c) in p.terms() {
            for t in &self.terms {
                terms.push(Term {
                    pos: t.pos,
                    mon: t.mon.mul(m),
                    coeff: field.mul(t.coeff, *c),
                });
            }
        }
        Self::from_terms(terms, field, ord)
    }

    /// Relabels positions through `f`; dropped when `f` returns `None`.
    pub fn map_positions(&self, f: impl Fn(u32) -> Option<u32>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter_map(|t| f(t.pos).map(|pos| Term { pos, ..*t }))
                .collect(),
        }
    }

    /// Coordinate `pos` as a polynomial.
    pub fn component(&self, pos: usize, ring: &Arc<PolyRing>) -> Polynomial {
        ring.from_terms(
            self.terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mon, t.coeff))
                .collect(),
        )
    }

    pub fn components(&self, rank: usize, ring: &Arc<PolyRing>) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos as usize].push((t.mon, t.coeff));
        }
        buckets.into_iter().map(|b| ring.from_terms(b)).collect()
    }

    pub fn max_position(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.pos).max()
    }
}

fn merge_scaled(
    a: &[Term],
    b: &[Term],
    c: u32,
    m: &Monomial,
    field: PrimeField,
    ord: &ModuleOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].mon.mul(m);
        match ord.cmp(a[i].pos, &a[i].mon, b[j].pos, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    pos: b[j].pos,
                    mon: bm,
                    coeff: field.mul(b[j].coeff, c),
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                if s != 0 {
                    out.push(Term { coeff: s, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term {
            pos: t.pos,
            mon: t.mon.mul(m),
            coeff: field.mul(t.coeff, c),
        });
    }
    out
}
