//! Submodule calculus over `R = S/I`, carried out in `S`-coordinates with the
//! defining relations `I * e_i` appended to every computation.

use std::sync::Arc;

use super::engine::{GbBuilder, GroebnerBasis};
use super::vector::{ModuleOrder, Term, Vector};
use crate::algebra::{Monomial, PolyRing, Polynomial, PrimeField};

/// What every submodule computation needs to know about the ambient ring.
#[derive(Clone, Copy)]
pub struct Ambient<'a> {
    pub ring: &'a Arc<PolyRing>,
    /// Groebner basis (grevlex) of the defining ideal; empty over `S`.
    pub defining: &'a [Polynomial],
}

impl<'a> Ambient<'a> {
    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_empty()
    }

    /// `f * e_i` for `f` in the defining basis and `i` in `positions`.
    pub fn relations(&self, positions: std::ops::Range<usize>, ord: &ModuleOrder) -> Vec<Vector> {
        let mut out = Vec::new();
        for i in positions {
            for f in self.defining {
                out.push(Vector::from_poly(f, i, ord));
            }
        }
        out
    }

    /// Basis of `I * S^g`, already a Groebner basis for any module order.
    pub fn defining_module_gb(&self, shifts: &[i32]) -> GroebnerBasis {
        let ord = ModuleOrder::top(shifts);
        let rels = self.relations(0..shifts.len(), &ord);
        GroebnerBasis::from_basis_unchecked(rels, self.field(), ord)
    }

    /// Reduces every coordinate modulo `I`.
    pub fn reduce_mod_defining(&self, v: &Vector, shifts: &[i32]) -> Vector {
        if self.defining.is_empty() {
            return v.clone();
        }
        self.defining_module_gb(shifts).normal_form(v)
    }

    /// Reduced Groebner basis of `span(gens) + I * S^g` in the graded order.
    pub fn submodule_gb(&self, shifts: &[i32], gens: &[Vector]) -> GroebnerBasis {
        let ord = ModuleOrder::top(shifts);
        let mut b = GbBuilder::new(self.field(), ord.clone());
        for g in gens {
            b.add_generator(g.clone());
        }
        for r in self.relations(0..shifts.len(), &ord) {
            b.add_generator(r);
        }
        b.finish()
    }

    /// Kernel of the map `S^source -> S^target / (target_rels + I)` sending
    /// `e_j` to `columns[j]`, returned as a Groebner basis (in source
    /// coordinates, modulo `I`).
    pub fn kernel(
        &self,
        target: &[i32],
        source: &[i32],
        columns: &[Vector],
        target_rels: &[Vector],
    ) -> Vec<Vector> {
        let t = target.len();
        let s = source.len();
        assert_eq!(columns.len(), s);
        let mut shifts: Vec<i32> = target.to_vec();
        shifts.extend_from_slice(source);
        let ord = ModuleOrder::elimination(&shifts, t);
        let nv = self.nvars();
        let mut b = GbBuilder::new(self.field(), ord.clone());
        for (j, col) in columns.iter().enumerate() {
            let mut terms: Vec<Term> = col.terms().to_vec();
            terms.push(Term {
                pos: (t + j) as u32,
                mon: Monomial::one(nv),
                coeff: 1,
            });
            b.add_generator(Vector::from_terms(terms, self.field(), &ord));
        }
        for r in target_rels {
            b.add_generator(r.clone());
        }
        for r in self.relations(0..t + s, &ord) {
            b.add_generator(r);
        }
        let gb = b.finish();
        let src_ord = ModuleOrder::top(source);
        let igb = self.defining_module_gb(source);
        gb.into_elements()
            .into_iter()
            .filter(|v| v.lead().is_some_and(|l| l.pos as usize >= t))
            .map(|v| {
                v.map_positions(|p| Some(p - t as u32))
                    .resorted(&src_ord)
            })
            .filter(|v| !igb.contains(v))
            .collect()
    }

    /// Greedy minimal subset of `candidates` generating
    /// `span(candidates) + span(base) + I` modulo `span(base) + I`.
    /// Candidates are visited by increasing degree, so the result is a
    /// minimal homogeneous generating set of the quotient.
    pub fn minimal_generators(
        &self,
        shifts: &[i32],
        candidates: Vec<Vector>,
        base: &[Vector],
    ) -> Vec<Vector> {
        let ord = ModuleOrder::top(shifts);
        let mut cands: Vec<Vector> = candidates
            .into_iter()
            .map(|v| self.reduce_mod_defining(&v.resorted(&ord), shifts))
            .filter(|v| !v.is_zero())
            .collect();
        cands.sort_by(|a, b| {
            let da = a.degree(shifts).unwrap();
            let db = b.degree(shifts).unwrap();
            da.cmp(&db)
                .then_with(|| super::engine::cmp_leads(a, b, &ord))
                .then_with(|| a.len().cmp(&b.len()))
        });
        let mut b = GbBuilder::new(self.field(), ord.clone());
        for r in base {
            b.add_generator(r.clone());
        }
        for r in self.relations(0..shifts.len(), &ord) {
            b.add_generator(r);
        }
        let mut kept = Vec::new();
        for c in cands {
            if !b.reduce_complete(&c).is_zero() {
                b.add_generator(c.clone());
                kept.push(c);
            }
        }
        kept
    }

    /// `(A + I) ∩ (B + I)` modulo `I`.
    pub fn intersect(&self, shifts: &[i32], a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let g = shifts.len();
        let mut dbl = shifts.to_vec();
        dbl.extend_from_slice(shifts);
        let ord = ModuleOrder::elimination(&dbl, g);
        let mut builder = GbBuilder::new(self.field(), ord.clone());
        for v in a {
            let mut terms: Vec<Term> = v.terms().to_vec();
            terms.extend(v.terms().iter().map(|t| Term {
                pos: t.pos + g as u32,
                ..*t
            }));
            builder.add_generator(Vector::from_terms(terms, self.field(), &ord));
        }
        for v in b {
            builder.add_generator(v.clone());
        }
        for r in self.relations(0..2 * g, &ord) {
            builder.add_generator(r);
        }
        let gb = builder.finish();
        let out_ord = ModuleOrder::top(shifts);
        let igb = self.defining_module_gb(shifts);
        gb.into_elements()
            .into_iter()
            .filter(|v| v.lead().is_some_and(|l| l.pos as usize >= g))
            .map(|v| v.map_positions(|p| Some(p - g as u32)).resorted(&out_ord))
            .filter(|v| !igb.contains(v))
            .collect()
    }

    /// `(U + I S^g : f) = { v : f v ∈ U + I S^g }`.
    pub fn quotient_by(&self, shifts: &[i32], u: &[Vector], f: &Polynomial) -> Vec<Vector> {
        let e = f.degree().unwrap_or(0) as i32;
        let g = shifts.len();
        let ord = ModuleOrder::top(shifts);
        let source: Vec<i32> = shifts.iter().map(|s| s + e).collect();
        let cols: Vec<Vector> = (0..g)
            .map(|i| Vector::from_poly(f, i, &ord))
            .collect();
        let k = self.kernel(shifts, &source, &cols, u);
        k.into_iter().map(|v| v.resorted(&ord)).collect()
    }

    /// Ideal `{ f : f e_i ∈ U + I S^g }` (as polynomials, modulo `I`).
    pub fn colon_generator(&self, shifts: &[i32], u: &[Vector], i: usize) -> Vec<Polynomial> {
        let ord = ModuleOrder::top(shifts);
        let col = Vector::unit(i, self.nvars());
        let k = self.kernel(shifts, &[shifts[i]], &[col.resorted(&ord)], u);
        k.into_iter().map(|v| v.component(0, self.ring)).collect()
    }

    /// Writes `v` as a combination of `gens` modulo `I` when possible.
    pub fn lift(&self, shifts: &[i32], gens: &[Vector], v: &Vector) -> Option<Vec<Polynomial>> {
        let g = shifts.len();
        let r = gens.len();
        let mut all = shifts.to_vec();
        for x in gens {
            all.push(x.degree(shifts).unwrap_or(0) as i32);
        }
        let ord = ModuleOrder::elimination(&all, g);
        let nv = self.nvars();
        let mut b = GbBuilder::new(self.field(), ord.clone());
        for (j, x) in gens.iter().enumerate() {
            let mut terms = x.terms().to_vec();
            terms.push(Term {
                pos: (g + j) as u32,
                mon: Monomial::one(nv),
                coeff: 1,
            });
            b.add_generator(Vector::from_terms(terms, self.field(), &ord));
        }
        for rel in self.relations(0..g, &ord) {
            b.add_generator(rel);
        }
        let gb = b.finish();
        let nf = gb.normal_form(&v.clone().resorted(&ord));
        if nf.terms().iter().any(|t| (t.pos as usize) < g) {
            return None;
        }
        // v - sum c_j gens_j ∈ I, with -c_j read off the tail
        let coeffs = nf.map_positions(|p| Some(p - g as u32));
        let field = self.field();
        let mut out = coeffs.components(r, self.ring);
        for c in &mut out {
            *c = c.scale(field.neg(1));
        }
        Some(out)
    }
}
