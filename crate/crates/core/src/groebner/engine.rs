//! Buchberger's algorithm for homogeneous submodules of graded free modules.
//!
//! Pairs are processed by increasing degree (for homogeneous input the sugar
//! degree is the degree of the pair's lcm), ties broken by pair index, and
//! pruned with the Gebauer-Moeller criteria. The product criterion is only
//! applied in rank one, where it is valid.

use std::cmp::Ordering;

use super::vector::{ModuleOrder, Term, Vector};
use crate::algebra::{Monomial, PrimeField};

#[derive(Clone, Debug)]
struct Pair {
    deg: i64,
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
}

#[derive(Clone, Copy, Debug)]
struct Lead {
    pos: u32,
    mon: Monomial,
    mask: u32,
}

/// Incremental, degree-truncatable Buchberger state.
#[derive(Clone, Debug)]
pub struct GbBuilder {
    field: PrimeField,
    order: ModuleOrder,
    basis: Vec<Vector>,
    leads: Vec<Lead>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    pending: Vec<(i64, usize, Vector)>,
    seq: usize,
    rank_one: bool,
    completed_to: Option<i64>,
}

impl GbBuilder {
    pub fn new(field: PrimeField, order: ModuleOrder) -> Self {
        let rank = order.rank();
        Self {
            field,
            rank_one: rank == 1,
            by_pos: vec![Vec::new(); rank],
            order,
            basis: Vec::new(),
            leads: Vec::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
            seq: 0,
            completed_to: None,
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Queues a homogeneous generator (any term order; it is re-sorted).
    pub fn add_generator(&mut self, v: Vector) {
        let v = v.resorted(&self.order);
        if let Some(d) = v.degree(&self.order.shifts) {
            debug_assert!(v.is_homogeneous(&self.order.shifts));
            self.pending.push((d, self.seq, v));
            self.seq += 1;
            if let Some(c) = self.completed_to {
                if d <= c {
                    self.completed_to = Some(d - 1);
                }
            }
        }
    }

    /// Inserts an already reduced element directly, bypassing the queue.
    fn insert(&mut self, mut h: Vector) {
        h.make_monic(self.field);
        let lt = *h.lead().expect("nonzero");
        let k = self.basis.len();
        let lead = Lead {
            pos: lt.pos,
            mon: lt.mon,
            mask: lt.mon.support_mask(),
        };
        let deg_of = |m: &Monomial| m.degree() as i64 + self.order.shifts[lt.pos as usize] as i64;

        // new pairs (i, k)
        let mut cand: Vec<(usize, Monomial, bool)> = self.by_pos[lt.pos as usize]
            .iter()
            .map(|&i| {
                let li = self.leads[i].mon;
                (i, li.lcm(&lt.mon), self.rank_one && li.is_coprime(&lt.mon))
            })
            .collect();

        // Gebauer-Moeller: drop (i,k) when another new pair's lcm divides its lcm.
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].2 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut fresh: Vec<Pair> = Vec::new();
        for (idx, (i, l, coprime)) in cand.drain(..).enumerate() {
            if keep[idx] && !coprime {
                fresh.push(Pair {
                    deg: deg_of(&l),
                    i,
                    j: k,
                    pos: lt.pos,
                    lcm: l,
                });
            }
        }

        // chain criterion on the old pairs
        let leads = &self.leads;
        self.pairs.retain(|p| {
            if p.pos != lt.pos || !lt.mon.divides(&p.lcm) {
                return true;
            }
            let li = leads[p.i].mon.lcm(&lt.mon);
            let lj = leads[p.j].mon.lcm(&lt.mon);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(fresh);

        self.by_pos[lt.pos as usize].push(k);
        self.leads.push(lead);
        self.basis.push(h);
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let mask = t.mon.support_mask();
        self.by_pos[t.pos as usize].iter().copied().find(|&i| {
            let l = &self.leads[i];
            l.mask & !mask == 0 && l.mon.divides(&t.mon)
        })
    }

    /// Full normal form with respect to the current (partial) basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        reduce_with(v, &self.basis, |t| self.find_reducer(t), self.field, &self.order)
    }

    /// Runs Buchberger until every pair and generator of degree `<= max_deg`
    /// has been processed (`None` for no bound).
    pub fn complete_to(&mut self, max_deg: Option<i64>) {
        loop {
            let next_pair = self
                .pairs
                .iter()
                .enumerate()
                .min_by(|a, b| pair_key(a.1).cmp(&pair_key(b.1)))
                .map(|(idx, p)| (p.deg, idx));
            let next_gen = self
                .pending
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 .0, a.1 .1).cmp(&(b.1 .0, b.1 .1)))
                .map(|(idx, g)| (g.0, idx));
            let take_gen = match (next_pair, next_gen) {
                (None, None) => break,
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some((dp, _)), Some((dg, _))) => dg <= dp,
            };
            let poly = if take_gen {
                let (d, idx) = next_gen.unwrap();
                if max_deg.is_some_and(|m| d > m) {
                    break;
                }
                self.pending.swap_remove(idx).2
            } else {
                let (d, idx) = next_pair.unwrap();
                if max_deg.is_some_and(|m| d > m) {
                    break;
                }
                let p = self.pairs.swap_remove(idx);
                self.spoly(&p)
            };
            let h = self.reduce(&poly);
            if !h.is_zero() {
                self.insert(h);
            }
        }
        self.completed_to = match max_deg {
            None => Some(i64::MAX),
            Some(m) => Some(m),
        };
    }

    /// Whether the basis is known to be complete through degree `d`.
    pub fn is_complete_through(&self, d: i64) -> bool {
        self.completed_to.is_some_and(|c| c >= d)
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let mi = self.leads[p.i].mon.quotient_of(&p.lcm).unwrap();
        let mj = self.leads[p.j].mon.quotient_of(&p.lcm).unwrap();
        let a = gi.mul_monomial(&mi);
        a.add_scaled(gj, self.field.neg(1), &mj, self.field, &self.order)
    }

    /// Reduces `v` modulo the submodule after completing through its degree.
    pub fn reduce_complete(&mut self, v: &Vector) -> Vector {
        let v = v.clone().resorted(&self.order);
        if let Some(d) = v.degree(&self.order.shifts) {
            if !self.is_complete_through(d) {
                self.complete_to(Some(d));
            }
        }
        self.reduce(&v)
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Completes and returns the reduced Groebner basis.
    pub fn finish(mut self) -> GroebnerBasis {
        self.complete_to(None);
        GroebnerBasis::interreduce(self.basis, self.field, self.order)
    }
}

fn pair_key(p: &Pair) -> (i64, usize, usize) {
    (p.deg, p.j, p.i)
}

fn reduce_with(
    v: &Vector,
    basis: &[Vector],
    find: impl Fn(&Term) -> Option<usize>,
    field: PrimeField,
    ord: &ModuleOrder,
) -> Vector {
    let mut done: Vec<Term> = Vec::new();
    let mut rest: Vec<Term> = v.terms().to_vec();
    let mut idx = 0;
    while idx < rest.len() {
        let t = rest[idx];
        match find(&t) {
            Some(g) => {
                let gv = &basis[g];
                let lt = gv.lead().unwrap();
                let q = lt.mon.quotient_of(&t.mon).unwrap();
                let c = field.neg(field.div(t.coeff, lt.coeff));
                let tail = Vector::from_sorted(rest.split_off(idx));
                done.append(&mut rest);
                rest = tail.add_scaled(gv, c, &q, field, ord).into_terms();
                idx = 0;
            }
            None => idx += 1,
        }
    }
    done.append(&mut rest);
    Vector::from_sorted(done)
}

/// A Groebner basis of a submodule of a graded free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: PrimeField,
    order: ModuleOrder,
    elems: Vec<Vector>,
    leads: Vec<Lead>,
    by_pos: Vec<Vec<usize>>,
    reduced: bool,
}

impl GroebnerBasis {
    /// Computes the reduced Groebner basis of the span of `gens`.
    pub fn compute(gens: impl IntoIterator<Item = Vector>, field: PrimeField, order: ModuleOrder) -> Self {
        let mut b = GbBuilder::new(field, order);
        for g in gens {
            b.add_generator(g);
        }
        b.finish()
    }

    /// Wraps elements already known to form a Groebner basis.
    pub fn from_basis_unchecked(elems: Vec<Vector>, field: PrimeField, order: ModuleOrder) -> Self {
        let elems: Vec<Vector> = elems
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| {
                let mut v = v.resorted(&order);
                v.make_monic(field);
                v
            })
            .collect();
        Self::index(elems, field, order, false)
    }

    fn index(elems: Vec<Vector>, field: PrimeField, order: ModuleOrder, reduced: bool) -> Self {
        let mut by_pos = vec![Vec::new(); order.rank()];
        let leads: Vec<Lead> = elems
            .iter()
            .map(|v| {
                let t = v.lead().unwrap();
                Lead {
                    pos: t.pos,
                    mon: t.mon,
                    mask: t.mon.support_mask(),
                }
            })
            .collect();
        for (i, l) in leads.iter().enumerate() {
            by_pos[l.pos as usize].push(i);
        }
        Self {
            field,
            order,
            elems,
            leads,
            by_pos,
            reduced,
        }
    }

    fn interreduce(basis: Vec<Vector>, field: PrimeField, order: ModuleOrder) -> Self {
        let leads: Vec<Term> = basis.iter().map(|v| *v.lead().unwrap()).collect();
        let mut minimal: Vec<Vector> = Vec::new();
        for (i, v) in basis.iter().enumerate() {
            let redundant = leads.iter().enumerate().any(|(j, l)| {
                j != i
                    && l.pos == leads[i].pos
                    && l.mon.divides(&leads[i].mon)
                    && (l.mon != leads[i].mon || j < i)
            });
            if !redundant {
                minimal.push(v.clone());
            }
        }
        let tmp = Self::index(minimal.clone(), field, order.clone(), false);
        let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
        for (i, v) in minimal.iter().enumerate() {
            let lt = *v.lead().unwrap();
            let tail = Vector::from_sorted(v.terms()[1..].to_vec());
            let red = reduce_with(
                &tail,
                &tmp.elems,
                |t| tmp.find_reducer_excluding(t, i),
                field,
                &order,
            );
            let mut terms = vec![lt];
            terms.extend_from_slice(red.terms());
            let mut nv = Vector::from_sorted(terms);
            nv.make_monic(field);
            out.push(nv);
        }
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            order.cmp_terms(x, y)
        });
        Self::index(out, field, order, true)
    }

    fn find_reducer_excluding(&self, t: &Term, skip: usize) -> Option<usize> {
        let mask = t.mon.support_mask();
        self.by_pos[t.pos as usize].iter().copied().find(|&i| {
            let l = &self.leads[i];
            i != skip && l.mask & !mask == 0 && l.mon.divides(&t.mon)
        })
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.find_reducer_excluding(t, usize::MAX)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<Vector> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = (u32, Monomial)> + '_ {
        self.leads.iter().map(|l| (l.pos, l.mon))
    }

    /// The remainder of `v`; no term of the result is divisible by a leading term.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        let v = v.clone().resorted(&self.order);
        reduce_with(&v, &self.elems, |t| self.find_reducer(t), self.field, &self.order)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Buchberger criterion: every S-pair reduces to zero.
    pub fn spairs_reduce_to_zero(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in (i + 1)..self.elems.len() {
                let (li, lj) = (&self.leads[i], &self.leads[j]);
                if li.pos != lj.pos {
                    continue;
                }
                let l = li.mon.lcm(&lj.mon);
                let mi = li.mon.quotient_of(&l).unwrap();
                let mj = lj.mon.quotient_of(&l).unwrap();
                let s = self.elems[i].mul_monomial(&mi).add_scaled(
                    &self.elems[j],
                    self.field.neg(1),
                    &mj,
                    self.field,
                    &self.order,
                );
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reducedness check: monic, and no term divisible by another leading term.
    pub fn check_reduced(&self) -> bool {
        self.elems.iter().enumerate().all(|(i, v)| {
            v.lead().map(|t| t.coeff) == Some(1)
                && v.terms()
                    .iter()
                    .all(|t| self.find_reducer_excluding(t, i).is_none())
        })
    }

    /// Same submodule test for two reduced bases over the same order.
    pub fn same_as(&self, other: &Self) -> bool {
        self.elems.len() == other.elems.len()
            && self
                .elems
                .iter()
                .zip(other.elems.iter())
                .all(|(a, b)| a == b)
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.same_as(other)
    }
}

/// Orders vectors by leading term, largest last.
pub fn cmp_leads(a: &Vector, b: &Vector, ord: &ModuleOrder) -> Ordering {
    match (a.lead(), b.lead()) {
        (Some(x), Some(y)) => ord.cmp_terms(x, y),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}
