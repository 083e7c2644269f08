use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Monomial, Polynomial, RingDescriptor};
use crate::error::{Error, Result};
use crate::groebner::{monomial_ideal, GroebnerBasis, Ideal, ModuleOrder, Vector};
use crate::value::Extended;

/// Cokernel of a graded map `⊕ R(-b_j) -> ⊕ R(-a_i)`.
///
/// `shifts[i] = a_i` is the degree of the `i`-th generator; each relation is a
/// column, stored as a homogeneous vector of the target free module.
#[derive(Clone)]
pub struct ModulePresentation {
    ring: Arc<RingDescriptor>,
    shifts: Vec<i32>,
    rels: Vec<Vector>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<RingDescriptor>, shifts: Vec<i32>, rels: Vec<Vector>) -> Result<Self> {
        let ord = ModuleOrder::top(&shifts);
        let mut out = Vec::with_capacity(rels.len());
        for r in rels {
            if let Some(p) = r.max_position() {
                if p as usize >= shifts.len() {
                    return Err(Error::RankMismatch(p as usize + 1, shifts.len()));
                }
            }
            if let Some(t) = r.terms().first() {
                if t.mon.nvars() != ring.nvars() {
                    return Err(Error::MixedRings);
                }
            }
            if !r.is_homogeneous(&shifts) {
                return Err(Error::NotHomogeneous(format!("{:?}", r)));
            }
            if !r.is_zero() {
                out.push(r.resorted(&ord));
            }
        }
        Ok(Self::raw(ring, shifts, out))
    }

    pub(crate) fn raw(ring: &Arc<RingDescriptor>, shifts: Vec<i32>, rels: Vec<Vector>) -> Self {
        Self {
            ring: ring.clone(),
            shifts,
            rels,
            gb: OnceLock::new(),
        }
    }

    /// Builds a presentation from columns given as polynomial lists.
    pub fn from_columns(
        ring: &Arc<RingDescriptor>,
        shifts: Vec<i32>,
        columns: &[Vec<Polynomial>],
    ) -> Result<Self> {
        let ord = ModuleOrder::top(&shifts);
        let mut rels = Vec::new();
        for col in columns {
            if col.len() != shifts.len() {
                return Err(Error::RankMismatch(col.len(), shifts.len()));
            }
            for p in col {
                if p.ring() != ring.base() {
                    return Err(Error::MixedRings);
                }
                if !p.is_homogeneous() {
                    return Err(Error::NotHomogeneous(p.to_string()));
                }
            }
            rels.push(Vector::from_polys(col, &ord));
        }
        Self::new(ring, shifts, rels)
    }

    pub fn free(ring: &Arc<RingDescriptor>, shifts: Vec<i32>) -> Self {
        Self::raw(ring, shifts, Vec::new())
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        Self::raw(ring, Vec::new(), Vec::new())
    }

    /// `R/J` on one generator of degree 0.
    pub fn cyclic(ring: &Arc<RingDescriptor>, gens: &[Polynomial]) -> Result<Self> {
        let cols: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::from_columns(ring, vec![0], &cols)
    }

    pub fn cyclic_of(ideal: &Ideal) -> Self {
        Self::cyclic(ideal.ring(), ideal.generators()).unwrap()
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Arc<RingDescriptor>) -> Self {
        Self::cyclic(ring, &ring.base().vars()).unwrap()
    }

    /// An ideal `J` of `R` as a module, presented by the syzygies of its generators.
    pub fn ideal(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let gens = ideal.reduced_generators();
        let ord = ModuleOrder::top(&[0]);
        let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        Self::free(ring, vec![0]).submodule(&vecs)
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn num_generators(&self) -> usize {
        self.shifts.len()
    }

    pub fn relations(&self) -> &[Vector] {
        &self.rels
    }

    pub fn order(&self) -> ModuleOrder {
        ModuleOrder::top(&self.shifts)
    }

    /// Relation columns as polynomial lists.
    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        self.rels
            .iter()
            .map(|r| r.components(self.shifts.len(), self.ring.base()))
            .collect()
    }

    pub fn relation_degrees(&self) -> Vec<i32> {
        self.rels
            .iter()
            .map(|r| r.degree(&self.shifts).unwrap() as i32)
            .collect()
    }

    /// Groebner basis of the relation module plus `I * F` in `F`.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| Arc::new(self.ring.ambient().submodule_gb(&self.shifts, &self.rels)))
    }

    /// Whether `v` (an element of the free cover) is zero in the module.
    pub fn is_zero_element(&self, v: &Vector) -> bool {
        self.gb().contains(v)
    }

    pub fn is_zero(&self) -> bool {
        let one = Monomial::one(self.ring.nvars());
        (0..self.shifts.len()).all(|i| {
            self.gb()
                .leading_terms()
                .any(|(p, m)| p as usize == i && m == one)
        })
    }

    /// A free module given with no relations (after minimization: none left).
    pub fn is_free(&self) -> bool {
        self.minimize().rels.is_empty()
    }

    fn leads_by_position(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.shifts.len()];
        for (p, m) in self.gb().leading_terms() {
            out[p as usize].push(m);
        }
        out
    }

    /// `dim_k M_d` for each `d` in the range.
    pub fn hilbert_function(&self, degrees: std::ops::Range<i64>) -> Vec<u64> {
        let leads = self.leads_by_position();
        let v = self.ring.nvars();
        degrees
            .map(|d| {
                leads
                    .iter()
                    .zip(&self.shifts)
                    .map(|(l, &a)| monomial_ideal::standard_monomials_in_degree(l, v, d - a as i64))
                    .sum()
            })
            .collect()
    }

    /// Krull dimension, from the leading-term module; `-inf` for zero.
    pub fn dim(&self) -> Extended {
        let v = self.ring.nvars();
        self.leads_by_position()
            .iter()
            .filter_map(|l| monomial_ideal::dimension(l, v))
            .map(|d| Extended::Finite(d as i64))
            .max()
            .unwrap_or(Extended::NegInf)
    }

    /// Total `k`-dimension when the module has finite length.
    pub fn length(&self) -> Option<u64> {
        let v = self.ring.nvars();
        let mut total = 0;
        for l in self.leads_by_position() {
            if l.iter().any(|m| m.is_one()) {
                continue;
            }
            let top = monomial_ideal::socle_degree_bound(&l, v)?;
            for d in 0..=top as i64 {
                total += monomial_ideal::standard_monomials_in_degree(&l, v, d);
            }
        }
        Some(total)
    }

    /// Smallest generator degree of a nonzero module.
    pub fn initial_degree(&self) -> Option<i32> {
        let m = self.minimize();
        m.shifts.iter().copied().min()
    }

    /// Hilbert function on a window starting at the lowest generator degree.
    pub fn hilbert_window(&self, width: i64) -> (i64, Vec<u64>) {
        let lo = self.shifts.iter().copied().min().unwrap_or(0) as i64;
        (lo, self.hilbert_function(lo..lo + width))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// Minimal presentation: unit entries pivoted away (lowest row, then
    /// column), then a minimal homogeneous set of relations.
    pub fn minimize(&self) -> ModulePresentation {
        let ring = &self.ring;
        let amb = ring.ambient();
        let field = ring.field();
        let mut shifts = self.shifts.clone();
        let mut rels: Vec<Vector> = self
            .rels
            .iter()
            .map(|r| amb.reduce_mod_defining(r, &shifts))
            .filter(|r| !r.is_zero())
            .collect();
        loop {
            let pivot = rels
                .iter()
                .enumerate()
                .flat_map(|(j, r)| {
                    r.terms()
                        .iter()
                        .filter(|t| t.mon.is_one())
                        .map(move |t| (t.pos, j, t.coeff))
                })
                .min_by_key(|&(pos, j, _)| (pos, j));
            let Some((pos, j, c)) = pivot else { break };
            let ord = ModuleOrder::top(&shifts);
            let pr = rels.remove(j);
            let inv = field.inv(c);
            let next: Vec<Vector> = rels
                .iter()
                .map(|r| {
                    let entry = r.component(pos as usize, ring.base());
                    if entry.is_zero() {
                        return r.clone();
                    }
                    let scaled = pr.mul_poly(&entry.scale(field.neg(inv)), &ord);
                    r.add(&scaled, field, &ord)
                })
                .collect();
            let keep = pos;
            shifts.remove(keep as usize);
            let ord2 = ModuleOrder::top(&shifts);
            rels = next
                .into_iter()
                .map(|r| {
                    debug_assert!(r.component(keep as usize, ring.base()).is_zero());
                    r.map_positions(|p| match p.cmp(&keep) {
                        std::cmp::Ordering::Less => Some(p),
                        std::cmp::Ordering::Equal => None,
                        std::cmp::Ordering::Greater => Some(p - 1),
                    })
                    .resorted(&ord2)
                })
                .map(|r| amb.reduce_mod_defining(&r, &shifts))
                .filter(|r| !r.is_zero())
                .collect();
        }
        let rels = amb.minimal_generators(&shifts, rels, &[]);
        Self::raw(ring, shifts, rels)
    }

    /// Presentation of the submodule generated by `gens` (elements of the free
    /// cover, taken modulo the relations).
    pub fn submodule(&self, gens: &[Vector]) -> ModulePresentation {
        let amb = self.ring.ambient();
        let ord = self.order();
        let gens: Vec<Vector> = gens.iter().map(|g| g.clone().resorted(&ord)).collect();
        let gens = amb.minimal_generators(&self.shifts, gens, &self.rels);
        let src: Vec<i32> = gens
            .iter()
            .map(|g| g.degree(&self.shifts).unwrap() as i32)
            .collect();
        let k = amb.kernel(&self.shifts, &src, &gens, &self.rels);
        let k = amb.minimal_generators(&src, k, &[]);
        Self::raw(&self.ring, src, k).minimize()
    }

    /// Quotient by additional relations (vectors of the free cover).
    pub fn quotient(&self, extra: &[Vector]) -> ModulePresentation {
        let ord = self.order();
        let mut rels = self.rels.clone();
        rels.extend(
            extra
                .iter()
                .filter(|v| !v.is_zero())
                .map(|v| v.clone().resorted(&ord)),
        );
        Self::raw(&self.ring, self.shifts.clone(), rels)
    }

    /// `M / (f_1, ..., f_r) M`.
    pub fn quotient_by_elements(&self, elems: &[Polynomial]) -> ModulePresentation {
        let ord = self.order();
        let mut extra = Vec::new();
        for f in elems {
            for i in 0..self.shifts.len() {
                extra.push(Vector::from_poly(f, i, &ord));
            }
        }
        self.quotient(&extra)
    }

    /// The submodule `J M` for an ideal `J`.
    pub fn ideal_times(&self, gens: &[Polynomial]) -> ModulePresentation {
        let ord = self.order();
        let mut v = Vec::new();
        for f in gens {
            for i in 0..self.shifts.len() {
                v.push(Vector::from_poly(f, i, &ord));
            }
        }
        self.submodule(&v)
    }

    /// `m M`.
    pub fn maximal_ideal_times(&self) -> ModulePresentation {
        self.ideal_times(&self.ring.base().vars())
    }

    /// Whether `f M = 0`.
    pub fn is_annihilated_by(&self, f: &Polynomial) -> bool {
        let ord = self.order();
        (0..self.shifts.len()).all(|i| self.is_zero_element(&Vector::from_poly(f, i, &ord)))
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        self.same_ring(other)?;
        let g = self.shifts.len() as u32;
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        let ord = ModuleOrder::top(&shifts);
        let mut rels: Vec<Vector> = self.rels.iter().map(|r| r.clone().resorted(&ord)).collect();
        rels.extend(
            other
                .rels
                .iter()
                .map(|r| r.map_positions(|p| Some(p + g)).resorted(&ord)),
        );
        Ok(Self::raw(&self.ring, shifts, rels))
    }

    /// Degree shift: `M(-d)` moves every generator up by `d`.
    pub fn shifted(&self, d: i32) -> ModulePresentation {
        let shifts: Vec<i32> = self.shifts.iter().map(|a| a + d).collect();
        Self::raw(&self.ring, shifts, self.rels.clone())
    }

    /// `M ⊗_R N` with generator `(i, l)` at position `i * q + l`.
    pub fn tensor(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        self.same_ring(other)?;
        let q = other.shifts.len();
        let mut shifts = Vec::with_capacity(self.shifts.len() * q);
        for a in &self.shifts {
            for b in &other.shifts {
                shifts.push(a + b);
            }
        }
        let ord = ModuleOrder::top(&shifts);
        let mut rels = Vec::new();
        for r in &self.rels {
            for l in 0..q {
                rels.push(
                    r.map_positions(|p| Some(p * q as u32 + l as u32))
                        .resorted(&ord),
                );
            }
        }
        for r in &other.rels {
            for i in 0..self.shifts.len() {
                rels.push(
                    r.map_positions(|p| Some(i as u32 * q as u32 + p))
                        .resorted(&ord),
                );
            }
        }
        Ok(Self::raw(&self.ring, shifts, rels))
    }

    /// The same module viewed over the polynomial ring `S`.
    pub fn over_polynomial_ring(&self) -> ModulePresentation {
        let s = self.ring.polynomial_ring();
        let ord = self.order();
        let mut rels = self.rels.clone();
        rels.extend(self.ring.ambient().relations(0..self.shifts.len(), &ord));
        Self::raw(&s, self.shifts.clone(), rels)
    }

    /// Whether every relation entry is monomial and the defining ideal is monomial.
    pub fn is_monomial(&self) -> bool {
        self.ring.defining_gb().iter().all(|g| g.is_monomial())
            && self.rels.iter().all(|r| {
                let mut seen = std::collections::BTreeSet::new();
                r.terms().iter().all(|t| seen.insert(t.pos))
            })
    }

    /// Whether `seq` is an `M`-regular sequence: each element is a
    /// nonzerodivisor on the previous quotient and `M / (seq) M != 0`.
    pub fn is_regular_sequence(&self, seq: &[Polynomial]) -> bool {
        let amb = self.ring.ambient();
        let mut cur = self.clone();
        for f in seq {
            let u = cur.rels.clone();
            let q = amb.quotient_by(&cur.shifts, &u, f);
            let gb = cur.gb().clone();
            if !q.iter().all(|v| gb.contains(v)) {
                return false;
            }
            cur = cur.quotient_by_elements(std::slice::from_ref(f));
        }
        !cur.is_zero()
    }

    /// Hash-stable textual key used for caching.
    pub fn cache_key(&self) -> String {
        format!("{}|{}", self.ring, self)
    }

    /// Entries of relation `j` as a polynomial list.
    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.rels[j].components(self.shifts.len(), self.ring.base())
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.shifts.iter().map(|s| s.to_string()).collect();
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|c| {
                let e: Vec<String> = c.iter().map(|p| p.to_string().replace(' ', "")).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "gens [{}] rels [{}]", gens.join(", "), cols.join(", "))
    }
}

impl fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_ring;

    fn hyp() -> Arc<RingDescriptor> {
        make_ring(&["x", "y"], &["x*y"], 32003).unwrap()
    }

    #[test]
    fn cyclic_hilbert_and_dim() {
        let r = hyp();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(m.hilbert_function(0..4), vec![1, 1, 1, 1]);
        assert_eq!(m.dim(), Extended::Finite(1));
        assert_eq!(m.length(), None);
        let k = ModulePresentation::residue_field(&r);
        assert_eq!(k.length(), Some(1));
        assert_eq!(k.dim(), Extended::Finite(0));
        assert!(ModulePresentation::zero(&r).is_zero());
        assert_eq!(ModulePresentation::zero(&r).dim(), Extended::NegInf);
    }

    #[test]
    fn zero_columns_do_not_change_module() {
        let r = hyp();
        let z = r.base().zero();
        let x = r.parse("x").unwrap();
        let a = ModulePresentation::from_columns(&r, vec![0], &[vec![x.clone()]]).unwrap();
        let b = ModulePresentation::from_columns(&r, vec![0], &[vec![x], vec![z]]).unwrap();
        assert_eq!(a.hilbert_function(0..5), b.hilbert_function(0..5));
    }

    #[test]
    fn minimize_pivots_units() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let x = s.parse("x").unwrap();
        let y = s.parse("y").unwrap();
        let one = s.parse("1").unwrap();
        let zero = s.base().zero();
        // e0 deg 0, e1 deg 1; relations x e0 - e1, y e1
        let m = ModulePresentation::from_columns(
            &s,
            vec![0, 1],
            &[vec![x.clone(), one.neg()], vec![zero, y.clone()]],
        )
        .unwrap();
        let mm = m.minimize();
        assert_eq!(mm.shifts(), &[0]);
        assert_eq!(mm.columns(), vec![vec![&x * &y]]);
        assert_eq!(m.hilbert_function(0..5), mm.hilbert_function(0..5));
    }

    #[test]
    fn tensor_of_example_module_with_itself() {
        let r = hyp();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let t = m.tensor(&m).unwrap();
        assert_eq!(t.hilbert_function(0..6), m.hilbert_function(0..6));
        let free = ModulePresentation::free(&r, vec![0]);
        assert_eq!(
            m.tensor(&free).unwrap().hilbert_function(0..6),
            m.hilbert_function(0..6)
        );
    }

    #[test]
    fn cyclic_tensor_is_sum_of_ideals() {
        let s = make_ring(&["x", "y", "z"], &[], 32003).unwrap();
        let a = ModulePresentation::cyclic(&s, &[s.parse("x^2").unwrap()]).unwrap();
        let b = ModulePresentation::cyclic(&s, &[s.parse("y*z").unwrap(), s.parse("x*y").unwrap()]).unwrap();
        let c = ModulePresentation::cyclic(
            &s,
            &[s.parse("x^2").unwrap(), s.parse("y*z").unwrap(), s.parse("x*y").unwrap()],
        )
        .unwrap();
        assert_eq!(
            a.tensor(&b).unwrap().hilbert_function(0..7),
            c.hilbert_function(0..7)
        );
    }

    #[test]
    fn ideal_module_and_m_times() {
        let s = make_ring(&["x", "y"], &[], 32003).unwrap();
        let m = ModulePresentation::ideal(&Ideal::maximal(&s));
        assert_eq!(m.shifts(), &[1, 1]);
        assert_eq!(m.relations().len(), 1);
        let free = ModulePresentation::free(&s, vec![0]);
        let mm = free.maximal_ideal_times();
        assert_eq!(mm.hilbert_function(0..5), m.hilbert_function(0..5));
        assert_eq!(mm.hilbert_function(0..4), vec![0, 2, 3, 4]);
    }

    #[test]
    fn regular_sequences_on_modules() {
        let r = hyp();
        let m = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert!(m.is_regular_sequence(&[r.parse("y").unwrap()]));
        assert!(!m.is_regular_sequence(&[r.parse("x").unwrap()]));
        let free = ModulePresentation::free(&r, vec![0]);
        assert!(free.is_regular_sequence(&[r.parse("x+y").unwrap()]));
        assert!(!free.is_regular_sequence(&[r.parse("x").unwrap()]));
    }
}
